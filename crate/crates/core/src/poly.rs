//! Exact multivariate polynomial arithmetic.
//!
//! Variables `x1, x2, ...` are 1-indexed. Coefficients live in Z or in Z[q],
//! selected by a [`Ring`] tag that is fixed for the lifetime of a value;
//! arithmetic between values of different rings is a usage error. Exponent
//! vectors are stored with trailing zeros trimmed, which makes the derived
//! `Ord` on `Vec<u32>` agree with zero-padded lexicographic comparison.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Coefficient ring: plain integers, or integer polynomials in q.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Ring {
    Int,
    Q,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PolyError {
    /// Input text could not be parsed; `pos` is a byte offset.
    Parse { pos: usize, msg: String },
    /// Arithmetic attempted between values of different coefficient rings.
    RingMismatch,
    /// A division that was required to be exact had a remainder.
    NonExactDivision,
    DivisionByZero,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Parse { pos, msg } => write!(f, "parse error at byte {pos}: {msg}"),
            PolyError::RingMismatch => write!(f, "coefficient ring mismatch"),
            PolyError::NonExactDivision => write!(f, "division is not exact"),
            PolyError::DivisionByZero => write!(f, "division by zero"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Element of Z or Z[q]: dense coefficient list, constant term first.
///
/// Invariant: no trailing zero entry, so zero is the empty list and integers
/// have length one.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    c: Vec<BigInt>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { c: Vec::new() }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        if v.is_zero() {
            Scalar::zero()
        } else {
            Scalar { c: vec![v] }
        }
    }

    /// The parameter q.
    pub fn q() -> Self {
        Scalar::q_pow(1)
    }

    /// q^e.
    pub fn q_pow(e: u32) -> Self {
        let mut c = vec![BigInt::zero(); e as usize + 1];
        c[e as usize] = BigInt::one();
        Scalar { c }
    }

    fn normalize(mut self) -> Self {
        while self.c.last().map_or(false, |x| x.is_zero()) {
            self.c.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// True for elements of Z (degree <= 0 in q).
    pub fn is_int(&self) -> bool {
        self.c.len() <= 1
    }

    /// The integer value, if this scalar is one.
    pub fn to_int(&self) -> Option<BigInt> {
        match self.c.len() {
            0 => Some(BigInt::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    /// Coefficient of q^k.
    pub fn coeff_q(&self, k: usize) -> BigInt {
        self.c.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn deg_q(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn neg(&self) -> Scalar {
        Scalar { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i).cloned().unwrap_or_else(BigInt::zero);
            let b = other.c.get(i).cloned().unwrap_or_else(BigInt::zero);
            c.push(a + b);
        }
        Scalar { c }.normalize()
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Scalar { c }.normalize()
    }

    /// Exact division in Z[q]; None if the divisor is zero or does not divide.
    pub fn exact_div(&self, d: &Scalar) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        if self.c.len() < d.c.len() {
            return None;
        }
        let mut rem = self.c.clone();
        let mut quot = vec![BigInt::zero(); self.c.len() - d.c.len() + 1];
        let dl = d.c.last().unwrap();
        for k in (0..quot.len()).rev() {
            let top = rem[k + d.c.len() - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (qk, r) = top.div_rem(dl);
            if !r.is_zero() {
                return None;
            }
            for (j, dj) in d.c.iter().enumerate() {
                rem[k + j] -= &qk * dj;
            }
            quot[k] = qk;
        }
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(Scalar { c: quot }.normalize())
    }

    /// Evaluate at q = v.
    pub fn eval_q(&self, v: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for a in self.c.iter().rev() {
            acc = acc * v + a;
        }
        acc
    }

    /// gcd of the integer coefficients; zero for the zero scalar.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for a in &self.c {
            g = g.gcd(a);
        }
        g
    }

    pub fn div_int_exact(&self, d: &BigInt) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        let mut c = Vec::with_capacity(self.c.len());
        for a in &self.c {
            let (q, r) = a.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            c.push(q);
        }
        Some(Scalar { c })
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// True if this is an integer and > 0.
    pub fn is_positive_int(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_positive()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.c.len()).rev() {
            let a = &self.c[k];
            if a.is_zero() {
                continue;
            }
            let mag = a.abs();
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if a.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                if k == 1 {
                    write!(f, "q")?;
                } else {
                    write!(f, "q^{k}")?;
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn expt_deg(e: &[u32]) -> u32 {
    e.iter().sum()
}

pub(crate) fn expt_trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

pub(crate) fn expt_mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

pub(crate) fn expt_div(a: &[u32], b: &[u32]) -> Option<Vec<u32>> {
    if b.len() > a.len() {
        return None;
    }
    let mut out = a.to_vec();
    for (i, eb) in b.iter().enumerate() {
        if out[i] < *eb {
            return None;
        }
        out[i] -= eb;
    }
    Some(expt_trim(out))
}

/// Graded reverse lexicographic comparison of exponent vectors: higher total
/// degree is greater; on ties the vector with the smaller entry at the last
/// position of disagreement is greater.
pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db) = (expt_deg(a), expt_deg(b));
    if da != db {
        return da.cmp(&db);
    }
    let n = a.len().max(b.len());
    for i in (0..n).rev() {
        let ea = a.get(i).copied().unwrap_or(0);
        let eb = b.get(i).copied().unwrap_or(0);
        if ea != eb {
            return eb.cmp(&ea);
        }
    }
    Ordering::Equal
}

/// Image of a variable under a variable-to-variable substitution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VarImage {
    Var(usize),
    Zero,
}

/// Multivariate polynomial: canonical exponent vectors mapped to nonzero
/// scalars, with a coefficient ring tag.
///
/// Invariants: no stored scalar is zero, exponent keys are trimmed, and in the
/// `Int` ring every scalar is an integer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    ring: Ring,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl MultiPoly {
    pub fn zero(ring: Ring) -> Self {
        MultiPoly { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: Ring) -> Self {
        MultiPoly::constant(ring, Scalar::one())
    }

    pub fn constant(ring: Ring, s: Scalar) -> Self {
        let mut p = MultiPoly::zero(ring);
        p.add_term(Vec::new(), s);
        p
    }

    pub fn int_constant(v: i64) -> Self {
        MultiPoly::constant(Ring::Int, Scalar::from_int(v))
    }

    /// The variable x_i (1-indexed) in the integer ring.
    pub fn var(i: usize) -> Self {
        MultiPoly::var_in(Ring::Int, i)
    }

    pub fn var_in(ring: Ring, i: usize) -> Self {
        assert!(i >= 1, "variables are 1-indexed");
        let mut e = vec![0u32; i];
        e[i - 1] = 1;
        let mut p = MultiPoly::zero(ring);
        p.add_term(e, Scalar::one());
        p
    }

    pub fn monomial(ring: Ring, expt: Vec<u32>, coeff: Scalar) -> Self {
        let mut p = MultiPoly::zero(ring);
        p.add_term(expt, coeff);
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Term iterator in increasing lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    /// Adds `coeff * x^expt`, keeping invariants.
    pub fn add_term(&mut self, expt: Vec<u32>, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        debug_assert!(self.ring == Ring::Q || coeff.is_int(), "q scalar in Int ring");
        let e = expt_trim(expt);
        let entry = self.terms.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&coeff);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn coeff(&self, expt: &[u32]) -> Scalar {
        let e = expt_trim(expt.to_vec());
        self.terms.get(&e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant term.
    pub fn ct(&self) -> Scalar {
        self.terms.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero)
    }

    fn check_ring(&self, other: &MultiPoly) {
        assert!(
            self.ring == other.ring,
            "coefficient ring mismatch; lift with to_q_ring first"
        );
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, s)| (e.clone(), s.neg())).collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other);
        let mut out = self.clone();
        for (e, s) in &other.terms {
            out.add_term(e.clone(), s.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_ring(other);
        let mut out = MultiPoly::zero(self.ring);
        for (ea, sa) in &self.terms {
            for (eb, sb) in &other.terms {
                out.add_term(expt_mul(ea, eb), sa.mul(sb));
            }
        }
        out
    }

    pub fn mul_scalar(&self, s: &Scalar) -> MultiPoly {
        if s.is_zero() {
            return MultiPoly::zero(self.ring);
        }
        debug_assert!(self.ring == Ring::Q || s.is_int());
        let mut out = MultiPoly::zero(self.ring);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a.mul(s));
        }
        out
    }

    pub fn mul_int(&self, v: i64) -> MultiPoly {
        self.mul_scalar(&Scalar::from_int(v))
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut out = MultiPoly::one(self.ring);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Recasts an integer-ring polynomial into the q ring.
    pub fn to_q_ring(&self) -> MultiPoly {
        MultiPoly { ring: Ring::Q, terms: self.terms.clone() }
    }

    /// Evaluate at q = v, producing an integer-ring polynomial.
    pub fn specialize_q(&self, v: &BigInt) -> MultiPoly {
        let mut out = MultiPoly::zero(Ring::Int);
        for (e, s) in &self.terms {
            out.add_term(e.clone(), Scalar::from_bigint(s.eval_q(v)));
        }
        out
    }

    /// Largest variable index with a nonzero exponent anywhere; 0 if constant.
    pub fn max_var(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    /// Total degree in the x variables; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| expt_deg(e)).max()
    }

    /// Degree if homogeneous (the zero polynomial is homogeneous of any
    /// degree; returns None for zero and for inhomogeneous input).
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| expt_deg(e));
        let d = it.next()?;
        if it.all(|x| x == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Splits into (degree, homogeneous part), increasing degree.
    pub fn homogeneous_components(&self) -> Vec<(u32, MultiPoly)> {
        let mut parts: BTreeMap<u32, MultiPoly> = BTreeMap::new();
        for (e, s) in &self.terms {
            parts
                .entry(expt_deg(e))
                .or_insert_with(|| MultiPoly::zero(self.ring))
                .add_term(e.clone(), s.clone());
        }
        parts.into_iter().collect()
    }

    /// Applies a variable-to-variable (or to zero) substitution.
    pub fn substitute_vars<F: Fn(usize) -> VarImage>(&self, f: F) -> MultiPoly {
        let mut out = MultiPoly::zero(self.ring);
        'term: for (e, s) in &self.terms {
            let mut ne: Vec<u32> = Vec::new();
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match f(i + 1) {
                    VarImage::Zero => continue 'term,
                    VarImage::Var(j) => {
                        assert!(j >= 1);
                        if ne.len() < j {
                            ne.resize(j, 0);
                        }
                        ne[j - 1] += exp;
                    }
                }
            }
            out.add_term(ne, s.clone());
        }
        out
    }

    /// Evaluates x_i at vals[i-1]; vals must cover max_var.
    pub fn eval_scalars(&self, vals: &[Scalar]) -> Scalar {
        assert!(vals.len() >= self.max_var(), "not enough values");
        let mut acc = Scalar::zero();
        for (e, s) in &self.terms {
            let mut term = s.clone();
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    term = term.mul(&vals[i]);
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Leading term in the lexicographic order (largest exponent key).
    pub fn leading(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Smallest exponent key in the lexicographic order.
    pub fn lex_min_term(&self) -> Option<(&Vec<u32>, &Scalar)> {
        self.terms.iter().next()
    }

    /// Exact division; errors unless the divisor divides exactly.
    pub fn exact_div(&self, den: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.check_ring(den);
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let (dm, dc) = den.leading().map(|(e, s)| (e.clone(), s.clone())).unwrap();
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.ring);
        while let Some((rm, rc)) = rem.leading().map(|(e, s)| (e.clone(), s.clone())) {
            let qe = expt_div(&rm, &dm).ok_or(PolyError::NonExactDivision)?;
            let qc = rc.exact_div(&dc).ok_or(PolyError::NonExactDivision)?;
            let qmono = MultiPoly::monomial(self.ring, qe, qc);
            rem = rem.sub(&qmono.mul(den));
            quot = quot.add(&qmono);
        }
        Ok(quot)
    }

    /// gcd of every integer coefficient appearing in any scalar.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for s in self.terms.values() {
            g = g.gcd(&s.content());
        }
        g
    }

    pub fn div_content_exact(&self, d: &BigInt) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero(self.ring);
        for (e, s) in &self.terms {
            out.add_term(e.clone(), s.div_int_exact(d)?);
        }
        Some(out)
    }

    /// Entrywise minimum exponent over all terms (the common monomial factor).
    pub fn min_exponent(&self) -> Option<Vec<u32>> {
        let mut it = self.terms.keys();
        let mut acc = it.next()?.clone();
        for e in it {
            let n = acc.len().min(e.len());
            acc.truncate(n);
            for i in 0..n {
                acc[i] = acc[i].min(e[i]);
            }
        }
        Some(expt_trim(acc))
    }

    /// Parses the textual form: terms joined by + or -, each an optional
    /// integer followed by optional `*`-separated factors `x<k>[^<e>]` or
    /// `q[^<e>]`. Whitespace is insignificant. The ring is Q exactly when the
    /// symbol q occurs.
    pub fn parse(input: &str) -> Result<MultiPoly, PolyError> {
        Parser::new(input).parse()
    }
}

impl fmt::Display for MultiPoly {
    /// Canonical form: terms in decreasing graded reverse lexicographic order
    /// of the x monomial, ties broken by decreasing q power.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // expand Z[q] scalars into (x exponent, q power, integer) terms
        let mut flat: Vec<(&Vec<u32>, usize, BigInt)> = Vec::new();
        for (e, s) in &self.terms {
            for k in 0..s.c.len() {
                let a = &s.c[k];
                if !a.is_zero() {
                    flat.push((e, k, a.clone()));
                }
            }
        }
        if flat.is_empty() {
            return write!(f, "0");
        }
        flat.sort_by(|a, b| grevlex_cmp(b.0, a.0).then(b.1.cmp(&a.1)));
        for (idx, (e, qp, c)) in flat.iter().enumerate() {
            let mag = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if *qp == 1 {
                factors.push("q".to_string());
            } else if *qp > 1 {
                factors.push(format!("q^{qp}"));
            }
            for (i, &exp) in e.iter().enumerate() {
                if exp == 1 {
                    factors.push(format!("x{}", i + 1));
                } else if exp > 1 {
                    factors.push(format!("x{}^{}", i + 1, exp));
                }
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser { bytes: s.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: &str) -> Result<T, PolyError> {
        Err(PolyError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn read_uint(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn read_small_uint(&mut self, what: &str) -> Result<u32, PolyError> {
        let v = self.read_uint()?;
        u32::try_from(&v).map_err(|_| PolyError::Parse {
            pos: self.pos,
            msg: format!("{what} too large"),
        })
    }

    fn parse(mut self) -> Result<MultiPoly, PolyError> {
        let mut terms: Vec<(Vec<u32>, u32, BigInt)> = Vec::new();
        let mut saw_q = false;
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return self.err("empty polynomial"),
                None => break,
                Some(b'+') => {
                    self.bump();
                    1
                }
                Some(b'-') => {
                    self.bump();
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return self.err("expected + or - between terms"),
            };
            first = false;
            let (expt, qexp, coeff, has_q) = self.parse_term()?;
            saw_q |= has_q;
            terms.push((expt, qexp, coeff * sign));
        }
        let ring = if saw_q { Ring::Q } else { Ring::Int };
        let mut p = MultiPoly::zero(ring);
        for (e, qe, c) in terms {
            p.add_term(e, Scalar::q_pow(qe).mul(&Scalar::from_bigint(c)));
        }
        Ok(p)
    }

    fn parse_term(&mut self) -> Result<(Vec<u32>, u32, BigInt, bool), PolyError> {
        let mut coeff = BigInt::one();
        let mut expt: Vec<u32> = Vec::new();
        let mut qexp: u32 = 0;
        let mut saw_q = false;
        let mut any = false;
        let mut star_pending = false;
        if let Some(b) = self.peek() {
            if b.is_ascii_digit() {
                coeff = self.read_uint()?;
                any = true;
                if self.peek() == Some(b'*') {
                    self.bump();
                    star_pending = true;
                }
            }
        }
        let starts_factor = matches!(self.peek(), Some(b'x') | Some(b'q'));
        if star_pending && !starts_factor {
            return self.err("expected a factor after *");
        }
        if starts_factor {
            self.parse_factor(&mut expt, &mut qexp, &mut saw_q)?;
            any = true;
            while self.peek() == Some(b'*') {
                self.bump();
                self.parse_factor(&mut expt, &mut qexp, &mut saw_q)?;
            }
        }
        if !any {
            return self.err("expected a term");
        }
        Ok((expt, qexp, coeff, saw_q))
    }

    fn parse_factor(
        &mut self,
        expt: &mut Vec<u32>,
        qexp: &mut u32,
        saw_q: &mut bool,
    ) -> Result<(), PolyError> {
        match self.peek() {
            Some(b'x') => {
                self.bump();
                let k = self.read_small_uint("variable index")? as usize;
                if k == 0 {
                    return self.err("variables are 1-indexed");
                }
                let e = self.parse_exponent()?;
                if expt.len() < k {
                    expt.resize(k, 0);
                }
                expt[k - 1] += e;
                Ok(())
            }
            Some(b'q') => {
                self.bump();
                *saw_q = true;
                *qexp += self.parse_exponent()?;
                Ok(())
            }
            _ => self.err("expected a factor x<k> or q"),
        }
    }

    fn parse_exponent(&mut self) -> Result<u32, PolyError> {
        if self.peek() == Some(b'^') {
            self.bump();
            self.read_small_uint("exponent")
        } else {
            Ok(1)
        }
    }
}

/// Quotient of two polynomials; the denominator is nonzero.
#[derive(Clone, Debug)]
pub struct RationalFn {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFn {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.ring() != den.ring() {
            return Err(PolyError::RingMismatch);
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let ring = p.ring();
        RationalFn { num: p, den: MultiPoly::one(ring) }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        RationalFn { num, den }.reduced()
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn { num: self.num.mul(&other.num), den: self.den.mul(&other.den) }.reduced()
    }

    /// Applies a variable substitution to numerator and denominator; errors if
    /// the substitution kills the denominator.
    pub fn substitute_vars<F: Fn(usize) -> VarImage>(&self, f: F) -> Result<RationalFn, PolyError> {
        let den = self.den.substitute_vars(&f);
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(RationalFn { num: self.num.substitute_vars(&f), den })
    }

    /// Strips the common integer content and common monomial factor. Not a
    /// full gcd reduction, just enough to keep intermediate sizes tame.
    pub fn reduced(&self) -> RationalFn {
        if self.num.is_zero() {
            let ring = self.num.ring();
            return RationalFn { num: MultiPoly::zero(ring), den: MultiPoly::one(ring) };
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let g = num.content().gcd(&den.content());
        if !g.is_zero() && !g.is_one() {
            num = num.div_content_exact(&g).unwrap();
            den = den.div_content_exact(&g).unwrap();
        }
        let mn = num.min_exponent().unwrap_or_default();
        let md = den.min_exponent().unwrap_or_default();
        let common: Vec<u32> = (0..mn.len().min(md.len()))
            .map(|i| mn[i].min(md[i]))
            .collect();
        let common = expt_trim(common);
        if !common.is_empty() {
            let m = MultiPoly::monomial(num.ring(), common, Scalar::one());
            num = num.exact_div(&m).unwrap();
            den = den.exact_div(&m).unwrap();
        }
        RationalFn { num, den }
    }

    /// Equality as rational functions, by cross multiplication.
    pub fn eq_rf(&self, other: &RationalFn) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }

    /// Collapses to a polynomial; errors if the denominator does not divide.
    pub fn to_poly(&self) -> Result<MultiPoly, PolyError> {
        self.num.exact_div(&self.den)
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}
