//! Polynomial bases and expansions: Schubert polynomials, forest
//! polynomials, monomial and fundamental quasisymmetric polynomials, ribbon
//! skew Schur polynomials, Gessel coefficient extraction, Pieri rules for
//! R_i/T_i, and generalized Littlewood-Richardson coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::forest::{apply_forest, ct_monomial, IndexedForest};
use crate::linalg::{self, rat_int, Rat, SolveOutcome};
use crate::ops::{self, Letter, RTWord};
use crate::perm::{self, Permutation};
use crate::poly::{MultiPoly, Ring, Scalar};

/// Support bound for the cached polynomial families. S_8 keeps the memo
/// tables and the forest linear systems at desk scale.
pub const DEFAULT_BOUND: usize = 8;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BasesError {
    BoundExceeded { n: usize, bound: usize },
    Precondition(String),
}

impl fmt::Display for BasesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasesError::BoundExceeded { n, bound } => {
                write!(f, "support {n} exceeds the configured bound {bound}")
            }
            BasesError::Precondition(msg) => write!(f, "precondition violated: {msg}"),
        }
    }
}

impl std::error::Error for BasesError {}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Basis {
    Schubert,
    Forest,
    Fundamental,
    MonomialQsym,
    Schur,
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Basis::Schubert => "schubert",
            Basis::Forest => "forest",
            Basis::Fundamental => "fundamental",
            Basis::MonomialQsym => "monomial-qsym",
            Basis::Schur => "schur",
        };
        f.write_str(name)
    }
}

/// A finitely supported coefficient map over one of the polynomial bases.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BasisExpansion<K: Ord> {
    basis: Basis,
    terms: BTreeMap<K, Scalar>,
}

pub type SchubertExpansion = BasisExpansion<Permutation>;
pub type ForestExpansion = BasisExpansion<IndexedForest>;
/// Keys are (k, (a_k, ..., a_n)); the constant term is keyed by (n+1, ()).
pub type FundamentalExpansion = BasisExpansion<(usize, Vec<u32>)>;
/// Keys are partitions, weakly decreasing with trailing zeros trimmed.
pub type SchurExpansion = BasisExpansion<Vec<u32>>;

impl<K: Ord + Clone> BasisExpansion<K> {
    fn new(basis: Basis) -> Self {
        BasisExpansion {
            basis,
            terms: BTreeMap::new(),
        }
    }

    fn insert(&mut self, key: K, coeff: Scalar) {
        if !coeff.is_zero() {
            self.terms.insert(key, coeff);
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&K, &Scalar)> {
        self.terms.iter()
    }
}

fn trim_zeros(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn pad(mut v: Vec<u32>, len: usize) -> Vec<u32> {
    v.resize(len.max(v.len()), 0);
    v
}

fn in_ring(p: MultiPoly, ring: Ring) -> MultiPoly {
    if ring == Ring::Q && p.ring() == Ring::Int {
        p.to_q_ring()
    } else {
        p
    }
}

/// All length-`nvars` vectors of nonnegative integers with the given sum.
fn exponents_of_degree(total: u32, nvars: usize) -> Vec<Vec<u32>> {
    fn go(left: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 1 {
            cur.push(remaining);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for v in 0..=remaining {
            cur.push(v);
            go(left - 1, remaining - v, cur, out);
            cur.pop();
        }
    }
    if nvars == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    go(nvars, total, &mut Vec::with_capacity(nvars), &mut out);
    out
}

/// All compositions of `total` into exactly `parts` positive parts.
fn compositions_into(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(left: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 1 {
            cur.push(remaining);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        // leave at least 1 for each later part
        for v in 1..=remaining - (left as u32 - 1) {
            cur.push(v);
            go(left - 1, remaining - v, cur, out);
            cur.pop();
        }
    }
    if parts == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    if (total as usize) < parts {
        return Vec::new();
    }
    let mut out = Vec::new();
    go(parts, total, &mut Vec::with_capacity(parts), &mut out);
    out
}

/// All compositions of `total` into positive parts, any length.
fn compositions_of(total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for parts in (total.min(1) as usize)..=(total as usize) {
        out.extend(compositions_into(total, parts));
    }
    if total == 0 {
        out.push(Vec::new());
    }
    out
}

/// Concatenations of compositions of the individual parts; these are exactly
/// the refinements of the composition.
fn refinements(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut acc: Vec<Vec<u32>> = vec![Vec::new()];
    for &a in parts {
        let pieces = compositions_of(a);
        let mut next = Vec::with_capacity(acc.len() * pieces.len());
        for prefix in &acc {
            for piece in &pieces {
                let mut v = prefix.clone();
                v.extend_from_slice(piece);
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

fn staircase(n: usize) -> MultiPoly {
    let expt: Vec<u32> = (1..n).rev().map(|k| k as u32).collect();
    MultiPoly::monomial(Ring::Int, expt, Scalar::one())
}

/// The composite divided difference indexed by a permutation. Well defined
/// by the braid relations; this applies the smallest descent first.
pub fn divided_difference_chain(w: &Permutation, f: &MultiPoly) -> MultiPoly {
    let mut v = w.clone();
    let mut acc = f.clone();
    while let Some(&i) = v.descents().first() {
        if acc.is_zero() {
            return acc;
        }
        acc = ops::divided_difference(i, &acc);
        v = v.compose(&Permutation::s(i));
    }
    acc
}

/// The Schubert polynomial of w, built by divided differences down from the
/// staircase monomial of the smallest symmetric group containing w.
pub fn schubert(w: &Permutation) -> Result<MultiPoly, BasesError> {
    schubert_bounded(w, DEFAULT_BOUND)
}

pub fn schubert_bounded(w: &Permutation, bound: usize) -> Result<MultiPoly, BasesError> {
    let n = w.support().max(1);
    if n > bound {
        return Err(BasesError::BoundExceeded { n, bound });
    }
    Ok(schubert_memo(w))
}

fn schubert_memo(w: &Permutation) -> MultiPoly {
    static CACHE: OnceLock<Mutex<HashMap<Permutation, MultiPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let cache = cache.lock().unwrap();
        if let Some(p) = cache.get(w) {
            return p.clone();
        }
    }
    let n = w.support().max(1);
    // climb along the smallest ascent; only the longest element has none
    let result = match (1..n).find(|&i| w.image(i) < w.image(i + 1)) {
        None => staircase(n),
        Some(i) => {
            let higher = w.compose(&Permutation::s(i));
            ops::divided_difference(i, &schubert_memo(&higher))
        }
    };
    cache.lock().unwrap().insert(w.clone(), result.clone());
    result
}

/// Expands f over Schubert polynomials by transition at the smallest
/// exponent in lexicographic order, which is always the Lehmer code of the
/// permutation carrying it.
pub fn schubert_expand(f: &MultiPoly) -> Result<SchubertExpansion, BasesError> {
    let mut out = BasisExpansion::new(Basis::Schubert);
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (expt, coeff) = {
            let (e, c) = rest.lex_min_term().expect("nonzero polynomial has a term");
            (e.clone(), c.clone())
        };
        let w = Permutation::from_lehmer(&expt);
        let s = in_ring(schubert(&w)?, rest.ring());
        rest = rest.sub(&s.mul_scalar(&coeff));
        if let Some((e, _)) = rest.lex_min_term() {
            assert!(
                *e > expt,
                "transition must strictly increase the minimal exponent"
            );
        }
        out.insert(w, coeff);
    }
    Ok(out)
}

/// The forest polynomial of F: the unique homogeneous polynomial of degree
/// |F| whose pairing ct T_G at forests G of that degree is the indicator of
/// G = F. Solved exactly from the pairing system; the construction then
/// certifies the trimming recursion T_i P_F = P_{F/i} on Qdes(F) and
/// T_i P_F = 0 elsewhere.
pub fn forest_poly(forest: &IndexedForest) -> Result<MultiPoly, BasesError> {
    forest_poly_bounded(forest, DEFAULT_BOUND)
}

pub fn forest_poly_bounded(
    forest: &IndexedForest,
    bound: usize,
) -> Result<MultiPoly, BasesError> {
    let n = forest.max_nontrivial_leaf();
    if n > bound {
        return Err(BasesError::BoundExceeded { n, bound });
    }
    Ok(forest_poly_memo(forest))
}

fn forest_poly_memo(forest: &IndexedForest) -> MultiPoly {
    static CACHE: OnceLock<Mutex<HashMap<Vec<u32>, MultiPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = forest.code();
    {
        let cache = cache.lock().unwrap();
        if let Some(p) = cache.get(&key) {
            return p.clone();
        }
    }
    let p = forest_poly_compute(forest);
    cache.lock().unwrap().insert(key, p.clone());
    p
}

fn forest_poly_compute(forest: &IndexedForest) -> MultiPoly {
    if forest.is_empty() {
        return MultiPoly::one(Ring::Int);
    }
    let degree = forest.size() as u32;
    // every internal node has its leftmost leaf strictly below the last
    // covered leaf, so codes of competitors and exponents both live in the
    // first m slots
    let m = forest.max_nontrivial_leaf() - 1;
    let cols = exponents_of_degree(degree, m);
    let target = pad(forest.code(), m);
    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(cols.len());
    let mut b: Vec<Rat> = Vec::with_capacity(cols.len());
    for g in &cols {
        let nested = IndexedForest::from_code(g).to_nested();
        a.push(
            cols.iter()
                .map(|c| rat_int(ct_monomial(&nested, c)))
                .collect(),
        );
        b.push(if *g == target { Rat::one() } else { Rat::zero() });
    }
    let x = match linalg::solve(&a, &b, cols.len()) {
        SolveOutcome::Unique(x) => x,
        other => panic!("forest polynomial system must be uniquely solvable, got {other:?}"),
    };
    let mut p = MultiPoly::zero(Ring::Int);
    for (c, v) in cols.iter().zip(&x) {
        if v.is_zero() {
            continue;
        }
        assert!(v.is_integer(), "forest polynomial coefficients are integers");
        p.add_term(trim_zeros(c.clone()), Scalar::from_bigint(v.to_integer()));
    }
    // certify the defining recursion before anyone consumes the result
    let qdes = forest.qdes();
    for i in 1..=m + 1 {
        let ti = ops::t_op(i, &p);
        if qdes.contains(&i) {
            let trimmed = forest.trim_at(i).expect("qdes positions are trimmable");
            assert_eq!(
                ti,
                forest_poly_memo(&trimmed),
                "trimming recursion fails at {i}"
            );
        } else {
            assert!(ti.is_zero(), "trimming must kill non-qdes position {i}");
        }
    }
    p
}

/// Expands f over forest polynomials; the coefficient of P_F is the constant
/// term of T_F f. Reassembly is checked exactly.
pub fn forest_expand(f: &MultiPoly) -> Result<ForestExpansion, BasesError> {
    let mut out = BasisExpansion::new(Basis::Forest);
    if f.is_zero() {
        return Ok(out);
    }
    let nvars = f.max_var();
    let mut reassembled = MultiPoly::zero(f.ring());
    for (degree, component) in f.homogeneous_components() {
        for code in exponents_of_degree(degree, nvars) {
            let g = IndexedForest::from_code(&code);
            let coeff = apply_forest(&g, &component).ct();
            if coeff.is_zero() {
                continue;
            }
            let p = in_ring(forest_poly(&g)?, f.ring());
            reassembled = reassembled.add(&p.mul_scalar(&coeff));
            out.insert(g, coeff);
        }
    }
    assert_eq!(reassembled, *f, "forest expansion must reassemble its input");
    Ok(out)
}

/// The monomial quasisymmetric polynomial: the sum of x_{i_1}^{b_1} ...
/// x_{i_k}^{b_k} over 1 <= i_1 < ... < i_k <= n.
pub fn monomial_qsym(beta: &[u32], n: usize) -> Result<MultiPoly, BasesError> {
    if beta.iter().any(|&b| b == 0) {
        return Err(BasesError::Precondition(
            "composition parts must be positive".to_string(),
        ));
    }
    if beta.len() > n {
        return Err(BasesError::Precondition(format!(
            "composition has {} parts but only {n} variables are available",
            beta.len()
        )));
    }
    fn go(beta: &[u32], next: usize, n: usize, expt: &mut Vec<u32>, out: &mut MultiPoly) {
        if beta.is_empty() {
            out.add_term(trim_zeros(expt.clone()), Scalar::one());
            return;
        }
        for i in next..=n - (beta.len() - 1) {
            expt[i - 1] = beta[0];
            go(&beta[1..], i + 1, n, expt, out);
            expt[i - 1] = 0;
        }
    }
    let mut out = MultiPoly::zero(Ring::Int);
    go(beta, 1, n, &mut vec![0; n], &mut out);
    Ok(out)
}

/// The fundamental quasisymmetric polynomial in n variables with row lengths
/// (a_k, ..., a_n), where k = n - parts + 1: the sum of monomial
/// quasisymmetric polynomials over all refinements. Its distinguished
/// monomial x_k^{a_k} ... x_n^{a_n} carries coefficient 1.
pub fn fundamental_qsym(parts: &[u32], n: usize) -> Result<MultiPoly, BasesError> {
    if parts.iter().any(|&b| b == 0) {
        return Err(BasesError::Precondition(
            "parts must be positive".to_string(),
        ));
    }
    if parts.len() > n {
        return Err(BasesError::Precondition(format!(
            "{} parts do not fit in {n} variables",
            parts.len()
        )));
    }
    let mut out = MultiPoly::zero(Ring::Int);
    for beta in refinements(parts) {
        if beta.len() <= n {
            out = out.add(&monomial_qsym(&beta, n)?);
        }
    }
    let k = n - parts.len() + 1;
    let mut lead = vec![0u32; n];
    lead[k - 1..].copy_from_slice(parts);
    assert!(
        out.coeff(&lead).is_one(),
        "the distinguished monomial must carry coefficient 1"
    );
    Ok(out)
}

/// Writes a quasisymmetric f in x1..xn as its constant term plus a sum of
/// fundamental quasisymmetric polynomials. The coefficient at (k, a_k..a_n)
/// is the constant term of T_k^{a_k} ... T_n^{a_n} f, rightmost power
/// applied first. Reassembly is checked exactly.
pub fn gessel_coeffs(f: &MultiPoly, n: usize) -> Result<FundamentalExpansion, BasesError> {
    if f.max_var() > n {
        return Err(BasesError::Precondition(format!(
            "polynomial uses x{} but n = {n}",
            f.max_var()
        )));
    }
    if !ops::is_quasisymmetric(f, n) {
        return Err(BasesError::Precondition(format!(
            "polynomial is not quasisymmetric in x1..x{n}"
        )));
    }
    let mut out = BasisExpansion::new(Basis::Fundamental);
    let constant = f.ct();
    if !constant.is_zero() {
        out.insert((n + 1, Vec::new()), constant.clone());
    }
    for (degree, component) in f.homogeneous_components() {
        if degree == 0 {
            continue;
        }
        for k in 1..=n {
            for parts in compositions_into(degree, n - k + 1) {
                let mut letters = Vec::with_capacity(degree as usize);
                for (j, &a) in parts.iter().enumerate() {
                    letters.extend(std::iter::repeat(Letter::T(k + j)).take(a as usize));
                }
                let coeff = ops::apply_word(&RTWord::new(letters), &component).ct();
                if !coeff.is_zero() {
                    out.insert((k, parts), coeff);
                }
            }
        }
    }
    let mut reassembled = MultiPoly::constant(f.ring(), constant);
    for ((k, parts), coeff) in out.terms() {
        if parts.is_empty() {
            continue;
        }
        debug_assert_eq!(*k, n - parts.len() + 1);
        let l = in_ring(fundamental_qsym(parts, n)?, f.ring());
        reassembled = reassembled.add(&l.mul_scalar(coeff));
    }
    assert_eq!(
        reassembled, *f,
        "fundamental expansion must reassemble its input"
    );
    Ok(out)
}

/// A ribbon skew shape: consecutive rows of lambda/mu overlap in exactly one
/// column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Ribbon {
    rows: Vec<u32>,
    lambda: Vec<u32>,
    mu: Vec<u32>,
}

impl Ribbon {
    /// Row lengths, top row first.
    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn lambda(&self) -> &[u32] {
        &self.lambda
    }

    pub fn mu(&self) -> &[u32] {
        &self.mu
    }

    pub fn num_cells(&self) -> u32 {
        self.rows.iter().sum()
    }
}

/// The ribbon whose j-th row (from the top) has the j-th given length:
/// lambda_j is the sum of the lengths from row j on, minus one per later
/// row, and mu_j = lambda_{j+1} - 1.
pub fn ribbon_of(parts: &[u32]) -> Result<Ribbon, BasesError> {
    if parts.is_empty() || parts.contains(&0) {
        return Err(BasesError::Precondition(
            "ribbon row lengths must be positive".to_string(),
        ));
    }
    let p = parts.len();
    let lambda: Vec<u32> = (0..p)
        .map(|j| parts[j..].iter().sum::<u32>() - (p - 1 - j) as u32)
        .collect();
    let mu: Vec<u32> = lambda[1..].iter().map(|&l| l - 1).collect();
    for j in 0..p - 1 {
        assert!(lambda[j] >= lambda[j + 1], "rows must weakly shorten");
        assert_eq!(mu[j] + 1, lambda[j + 1], "rows must overlap in one column");
    }
    Ok(Ribbon {
        rows: parts.to_vec(),
        lambda,
        mu,
    })
}

/// Sum over semistandard fillings of the skew shape: rows weakly increase
/// left to right, columns strictly increase top to bottom, entries <= n.
fn ssyt_sum(lambda: &[u32], mu: &[u32], n: usize) -> MultiPoly {
    struct State<'a> {
        lambda: &'a [u32],
        mu: &'a [u32],
        n: u32,
        cells: Vec<(usize, u32)>,
        grid: Vec<Vec<u32>>, // 0 marks an unfilled or absent cell
        counts: Vec<u32>,
        out: MultiPoly,
    }
    fn row_start(mu: &[u32], j: usize) -> u32 {
        mu.get(j).copied().unwrap_or(0)
    }
    fn go(s: &mut State<'_>, idx: usize) {
        if idx == s.cells.len() {
            let expt = trim_zeros(s.counts.clone());
            s.out.add_term(expt, Scalar::one());
            return;
        }
        let (j, c) = s.cells[idx];
        let mut lo = 1u32;
        if c > row_start(s.mu, j) {
            lo = lo.max(s.grid[j][c as usize - 1]);
        }
        if j > 0 && c >= row_start(s.mu, j - 1) && c < s.lambda[j - 1] {
            lo = lo.max(s.grid[j - 1][c as usize] + 1);
        }
        for v in lo..=s.n {
            s.grid[j][c as usize] = v;
            s.counts[v as usize - 1] += 1;
            go(s, idx + 1);
            s.counts[v as usize - 1] -= 1;
        }
        s.grid[j][c as usize] = 0;
    }
    let mut cells = Vec::new();
    for (j, &end) in lambda.iter().enumerate() {
        for c in row_start(mu, j)..end {
            cells.push((j, c));
        }
    }
    let mut state = State {
        lambda,
        mu,
        n: n as u32,
        cells,
        grid: lambda.iter().map(|&l| vec![0; l as usize]).collect(),
        counts: vec![0; n],
        out: MultiPoly::zero(Ring::Int),
    };
    go(&mut state, 0);
    state.out
}

/// The skew Schur polynomial of the ribbon in n variables, by semistandard
/// tableau enumeration.
pub fn skew_schur(ribbon: &Ribbon, n: usize) -> MultiPoly {
    ssyt_sum(&ribbon.lambda, &ribbon.mu, n)
}

/// The Schur polynomial of a partition in n variables.
pub fn schur(lambda: &[u32], n: usize) -> Result<MultiPoly, BasesError> {
    let lambda = trim_zeros(lambda.to_vec());
    if lambda.windows(2).any(|w| w[0] < w[1]) {
        return Err(BasesError::Precondition(
            "shape must be weakly decreasing".to_string(),
        ));
    }
    Ok(ssyt_sum(&lambda, &[], n))
}

/// Expands a polynomial symmetric in x1..xn over Schur polynomials by
/// repeated subtraction at the lexicographically largest partition exponent,
/// which is dominance-maximal among those present.
pub fn schur_expand(f: &MultiPoly, n: usize) -> Result<SchurExpansion, BasesError> {
    if f.max_var() > n {
        return Err(BasesError::Precondition(format!(
            "polynomial uses x{} but n = {n}",
            f.max_var()
        )));
    }
    if !ops::is_symmetric(f, n) {
        return Err(BasesError::Precondition(format!(
            "polynomial is not symmetric in x1..x{n}"
        )));
    }
    let mut out = BasisExpansion::new(Basis::Schur);
    let mut rest = f.clone();
    while !rest.is_zero() {
        let shape = rest
            .terms()
            .map(|(e, _)| e)
            .filter(|e| e.windows(2).all(|w| w[0] >= w[1]))
            .max()
            .cloned()
            .expect("a symmetric polynomial has a partition-shaped exponent");
        let coeff = rest.coeff(&shape);
        let s = in_ring(schur(&shape, n)?, rest.ring());
        rest = rest.sub(&s.mul_scalar(&coeff));
        assert!(
            rest.coeff(&shape).is_zero(),
            "subtraction must clear the chosen shape"
        );
        out.insert(shape, coeff);
    }
    Ok(out)
}

/// Hall pairing of a symmetric polynomial against the skew Schur polynomial
/// of a ribbon, via Schur expansions of both sides in the variables of f.
pub fn hall_inner_ribbon(f: &MultiPoly, ribbon: &Ribbon) -> Result<Scalar, BasesError> {
    let n = f.max_var().max(1);
    let fe = schur_expand(f, n)?;
    let re = schur_expand(&in_ring(skew_schur(ribbon, n), f.ring()), n)?;
    let mut acc = Scalar::zero();
    for (shape, c) in fe.terms() {
        acc = acc.add(&c.mul(&re.coeff(shape)));
    }
    Ok(acc)
}

/// Generalized Littlewood-Richardson coefficient: the coefficient of the
/// Schubert polynomial of v in the product of those of u and w, extracted as
/// a constant term through divided differences.
pub fn lr_coeff(
    u: &Permutation,
    w: &Permutation,
    v: &Permutation,
) -> Result<Scalar, BasesError> {
    let product = schubert(u)?.mul(&schubert(w)?);
    Ok(divided_difference_chain(v, &product).ct())
}

/// The composite functional of an operator word applied to the Schubert
/// polynomial of w, evaluated at the constant term.
pub fn lr_via_word(word: &RTWord, w: &Permutation) -> Result<Scalar, BasesError> {
    crate::rtword::validate_word(word)
        .map_err(|e| BasesError::Precondition(e.to_string()))?;
    Ok(ops::apply_word(word, &schubert(w)?).ct())
}

/// Schubert expansion of R_i applied to the Schubert polynomial of w, read
/// off from decreasing chains in the (i-1)-Bruhat order. Multiplicity free.
pub fn pieri_r(i: usize, w: &Permutation) -> Result<SchubertExpansion, BasesError> {
    if i == 0 {
        return Err(BasesError::Precondition("index must be >= 1".to_string()));
    }
    let mut out = BasisExpansion::new(Basis::Schubert);
    for v in perm::pieri_r_targets(i, w) {
        out.insert(v, Scalar::one());
    }
    Ok(out)
}

/// Schubert expansion of T_i applied to the Schubert polynomial of w; empty
/// unless i is a descent of w.
pub fn pieri_t(i: usize, w: &Permutation) -> Result<SchubertExpansion, BasesError> {
    if i == 0 {
        return Err(BasesError::Precondition("index must be >= 1".to_string()));
    }
    let mut out = BasisExpansion::new(Basis::Schubert);
    for v in perm::pieri_t_targets(i, w) {
        out.insert(v, Scalar::one());
    }
    Ok(out)
}

/// A sequence (i_1, ..., i_{n-1}) with i_j <= j whose trimming composite,
/// rightmost letter first, sends the Schubert polynomial of w to a positive
/// constant. Requires l(w) = n - 1. The returned witness is re-verified by
/// direct operator application.
pub fn positivity_witness(w: &Permutation, n: usize) -> Result<Vec<usize>, BasesError> {
    let seq = perm::positivity_witness(w, n)
        .map_err(|e| BasesError::Precondition(e.to_string()))?;
    let letters: Vec<Letter> = seq.iter().map(|&i| Letter::T(i)).collect();
    let value = ops::apply_word(&RTWord::new(letters), &schubert(w)?);
    assert!(
        value.num_terms() <= 1 && value.ct().is_positive_int(),
        "witness must evaluate to a positive constant"
    );
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::symmetric_group;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn schubert_via_largest_ascent(w: &Permutation) -> MultiPoly {
        let n = w.support().max(1);
        match (1..n).filter(|&i| w.image(i) < w.image(i + 1)).last() {
            None => staircase(n),
            Some(i) => {
                let higher = w.compose(&Permutation::s(i));
                ops::divided_difference(i, &schubert_via_largest_ascent(&higher))
            }
        }
    }

    #[test]
    fn schubert_base_cases() {
        assert_eq!(schubert(&Permutation::identity()).unwrap(), p("1"));
        assert_eq!(schubert(&perm("21")).unwrap(), p("x1"));
        assert_eq!(schubert(&perm("132")).unwrap(), p("x1 + x2"));
        assert_eq!(schubert(&perm("4321")).unwrap(), p("x1^3*x2^2*x3"));
        assert!(matches!(
            schubert(&Permutation::w0(9)),
            Err(BasesError::BoundExceeded { n: 9, bound: 8 })
        ));
        assert!(schubert_bounded(&Permutation::w0(4), 3).is_err());
    }

    #[test]
    fn schubert_is_word_independent() {
        for w in symmetric_group(4) {
            assert_eq!(schubert(&w).unwrap(), schubert_via_largest_ascent(&w));
        }
    }

    #[test]
    fn schubert_duality() {
        let s4 = symmetric_group(4);
        for w in &s4 {
            let sw = schubert(w).unwrap();
            for v in &s4 {
                let val = divided_difference_chain(v, &sw);
                if v == w {
                    assert_eq!(val, p("1"));
                } else {
                    assert!(val.ct().is_zero(), "ct of d_{v:?} applied to S_{w:?}");
                }
            }
        }
    }

    #[test]
    fn schubert_expansion_examples() {
        let e = schubert_expand(&p("x1*x2")).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e.coeff(&perm("231")).is_one());

        assert!(schubert_expand(&MultiPoly::zero(Ring::Int)).unwrap().is_empty());

        for w in symmetric_group(4) {
            let e = schubert_expand(&schubert(&w).unwrap()).unwrap();
            assert_eq!(e.len(), 1, "basis element expands to itself");
            assert!(e.coeff(&w).is_one());
        }

        // coefficients agree with the constant-term functionals
        let f = p("3*x1^2*x2 - x3 + 7");
        let e = schubert_expand(&f).unwrap();
        for (w, c) in e.terms() {
            assert_eq!(divided_difference_chain(w, &f).ct(), *c);
        }
        assert_eq!(e.coeff(&Permutation::identity()), Scalar::from_int(7));

        // coefficients may live in the q ring
        let f = p("x1*x2").to_q_ring().add(&MultiPoly::monomial(
            Ring::Q,
            vec![1],
            Scalar::q(),
        ));
        let e = schubert_expand(&f).unwrap();
        assert_eq!(e.coeff(&perm("21")), Scalar::q());
        assert!(e.coeff(&perm("231")).is_one());
    }

    #[test]
    fn forest_poly_small_cases() {
        assert_eq!(forest_poly(&IndexedForest::empty()).unwrap(), p("1"));
        assert_eq!(forest_poly(&IndexedForest::wedge_at(1)).unwrap(), p("x1"));
        assert_eq!(
            forest_poly(&IndexedForest::wedge_at(3)).unwrap(),
            p("x1 + x2 + x3")
        );
        assert!(forest_poly(&IndexedForest::wedge_at(8)).is_err());

        // the trimming recursion at a wedge
        let w2 = forest_poly(&IndexedForest::wedge_at(2)).unwrap();
        assert!(ops::t_op(1, &w2).is_zero());
        assert_eq!(ops::t_op(2, &w2), p("1"));
    }

    #[test]
    fn forest_poly_duality() {
        let forests = crate::forest::enumerate_suppfor(4, 7).unwrap();
        for f in &forests {
            let pf = forest_poly(f).unwrap();
            assert_eq!(pf.homogeneous_degree(), Some(f.size() as u32));
            for g in &forests {
                let val = apply_forest(g, &pf).ct();
                assert_eq!(val.is_one(), f == g, "pairing of {f} with {g}");
                assert_eq!(val.is_zero(), f != g);
            }
        }
    }

    #[test]
    fn forest_expansion_examples() {
        let e = forest_expand(&p("x1")).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e.coeff(&IndexedForest::wedge_at(1)).is_one());

        let e = forest_expand(&p("x2")).unwrap();
        assert_eq!(e.coeff(&IndexedForest::wedge_at(1)), Scalar::from_int(-1));
        assert!(e.coeff(&IndexedForest::wedge_at(2)).is_one());
        assert_eq!(e.len(), 2);

        for f in crate::forest::enumerate_suppfor(4, 7).unwrap() {
            let e = forest_expand(&forest_poly(&f).unwrap()).unwrap();
            assert_eq!(e.len(), 1);
            assert!(e.coeff(&f).is_one());
        }

        // mixed degrees reassemble (checked internally)
        let e = forest_expand(&p("2*x1^2*x3 - x2 + 5")).unwrap();
        assert!(!e.is_empty());
    }

    #[test]
    fn quasisymmetric_polynomials() {
        assert_eq!(monomial_qsym(&[2, 1], 2).unwrap(), p("x1^2*x2"));
        assert_eq!(
            monomial_qsym(&[1, 1], 3).unwrap(),
            p("x1*x2 + x1*x3 + x2*x3")
        );
        assert!(monomial_qsym(&[1, 0], 2).is_err());
        assert!(monomial_qsym(&[1, 1, 1], 2).is_err());

        assert_eq!(fundamental_qsym(&[1], 2).unwrap(), p("x1 + x2"));
        let word = RTWord::parse("t2").unwrap();
        assert!(ops::apply_word(&word, &p("x1 + x2")).ct().is_one());

        let f21 = fundamental_qsym(&[2, 1], 3).unwrap();
        let expected = monomial_qsym(&[2, 1], 3)
            .unwrap()
            .add(&monomial_qsym(&[1, 1, 1], 3).unwrap());
        assert_eq!(f21, expected);
    }

    #[test]
    fn gessel_coefficients() {
        let e = gessel_coeffs(&p("x1 + x2"), 2).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e.coeff(&(2, vec![1])).is_one());

        // fundamental polynomials expand to indicators
        for degree in 1..=3u32 {
            for parts_count in 1..=3usize {
                for parts in compositions_into(degree, parts_count) {
                    let f = fundamental_qsym(&parts, 3).unwrap();
                    let e = gessel_coeffs(&f, 3).unwrap();
                    assert_eq!(e.len(), 1, "indicator for {parts:?}");
                    assert!(e.coeff(&(3 - parts_count + 1, parts)).is_one());
                }
            }
        }

        let e = gessel_coeffs(&p("5"), 3).unwrap();
        assert_eq!(e.coeff(&(4, vec![])), Scalar::from_int(5));

        assert!(gessel_coeffs(&p("x1"), 2).is_err());
    }

    #[test]
    fn ribbons_and_skew_schur() {
        let r = ribbon_of(&[2, 1, 1, 3]).unwrap();
        assert_eq!(r.lambda(), &[4, 3, 3, 3]);
        assert_eq!(r.mu(), &[2, 2, 2]);
        assert_eq!(r.rows(), &[2, 1, 1, 3]);
        assert_eq!(r.num_cells(), 7);

        // a single row is a complete homogeneous polynomial
        let h2 = skew_schur(&ribbon_of(&[2]).unwrap(), 2);
        assert_eq!(h2, p("x1^2 + x1*x2 + x2^2"));

        // a single column is an elementary polynomial
        let e2 = skew_schur(&ribbon_of(&[1, 1]).unwrap(), 3);
        assert_eq!(e2, p("x1*x2 + x1*x3 + x2*x3"));

        assert!(ribbon_of(&[]).is_err());
        assert!(ribbon_of(&[2, 0]).is_err());
    }

    #[test]
    fn schur_polynomials_and_expansion() {
        let s21 = schur(&[2, 1], 3).unwrap();
        assert_eq!(
            s21,
            p("x1^2*x2 + x1^2*x3 + x1*x2^2 + x2^2*x3 + x1*x3^2 + x2*x3^2 + 2*x1*x2*x3")
        );

        let e = schur_expand(&s21, 3).unwrap();
        assert_eq!(e.len(), 1);
        assert!(e.coeff(&vec![2, 1]).is_one());

        // the square of the power sum p1 in two variables
        let e = schur_expand(&p("x1^2 + 2*x1*x2 + x2^2"), 2).unwrap();
        assert!(e.coeff(&vec![2]).is_one());
        assert!(e.coeff(&vec![1, 1]).is_one());
        assert_eq!(e.len(), 2);

        assert!(schur_expand(&p("x1"), 2).is_err());
    }

    #[test]
    fn hall_pairing_with_ribbons() {
        let s11 = schur(&[1, 1], 3).unwrap();
        let s2 = schur(&[2], 3).unwrap();
        let column = ribbon_of(&[1, 1]).unwrap();
        let row = ribbon_of(&[2]).unwrap();
        assert!(hall_inner_ribbon(&s11, &column).unwrap().is_one());
        assert!(hall_inner_ribbon(&s11, &row).unwrap().is_zero());
        assert!(hall_inner_ribbon(&s2, &row).unwrap().is_one());
        assert!(hall_inner_ribbon(&s2, &column).unwrap().is_zero());

        // h_{2,1} = s_{21} + s_{3}: pair against the two-row hook ribbon
        let hook = ribbon_of(&[2, 1]).unwrap();
        let s21 = schur(&[2, 1], 3).unwrap();
        let s3 = schur(&[3], 3).unwrap();
        assert!(hall_inner_ribbon(&s21, &hook).unwrap().is_one());
        assert!(hall_inner_ribbon(&s3, &hook).unwrap().is_zero());
    }

    #[test]
    fn gessel_matches_hall_pairing() {
        let s = schur(&[2, 1], 3).unwrap();
        let e = gessel_coeffs(&s, 3).unwrap();
        assert!(!e.is_empty());
        for ((_, parts), coeff) in e.terms() {
            let r = ribbon_of(parts).unwrap();
            assert_eq!(hall_inner_ribbon(&s, &r).unwrap(), *coeff);
        }
    }

    #[test]
    fn lr_coefficients() {
        let u = perm("2341");
        let w = perm("15243");
        assert!(lr_coeff(&u, &w, &perm("263415")).unwrap().is_one());
        assert!(lr_coeff(&u, &w, &perm("264135")).unwrap().is_one());

        // the product expands with exactly those two terms
        let e = schubert_expand(&schubert(&u).unwrap().mul(&schubert(&w).unwrap())).unwrap();
        assert_eq!(e.len(), 2);

        // vanishing outside the Bruhat order
        let a = perm("2143");
        let b = perm("1342");
        assert!(!crate::perm::bruhat_leq(&a, &b));
        assert!(lr_coeff(&a, &Permutation::identity(), &b).unwrap().is_zero());

        for w in symmetric_group(4) {
            assert!(lr_coeff(&Permutation::identity(), &w, &w).unwrap().is_one());
        }
    }

    #[test]
    fn lr_word_form_matches_pair_form() {
        for word in crate::rtword::enumerate_words(3, 7).unwrap() {
            let (u, v) = perm::uv_of(&word);
            for w in symmetric_group(3) {
                assert_eq!(
                    lr_via_word(&word, &w).unwrap(),
                    lr_coeff(&u, &w, &v).unwrap(),
                    "word {word} on {w:?}"
                );
            }
        }
    }

    #[test]
    fn pieri_expansions() {
        let w = perm("146532");
        let r = pieri_r(4, &w).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r.coeff(&perm("346215")).is_one());
        assert_eq!(
            ops::r_op(4, &schubert(&w).unwrap()),
            schubert(&perm("346215")).unwrap()
        );

        let t = pieri_t(4, &w).unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.coeff(&perm("246315")).is_one());
        assert_eq!(
            ops::t_op(4, &schubert(&w).unwrap()),
            schubert(&perm("246315")).unwrap()
        );

        // non-descents vanish
        assert!(pieri_t(1, &perm("1324")).unwrap().is_empty());
        assert!(ops::t_op(1, &schubert(&perm("1324")).unwrap()).is_zero());
    }

    #[test]
    fn pieri_matches_operator_expansion() {
        for w in symmetric_group(4) {
            let sw = schubert(&w).unwrap();
            for i in 1..=4 {
                assert_eq!(
                    pieri_r(i, &w).unwrap(),
                    schubert_expand(&ops::r_op(i, &sw)).unwrap(),
                    "R_{i} on {w:?}"
                );
                assert_eq!(
                    pieri_t(i, &w).unwrap(),
                    schubert_expand(&ops::t_op(i, &sw)).unwrap(),
                    "T_{i} on {w:?}"
                );
            }
        }
    }

    #[test]
    fn positivity_witnesses_verify() {
        assert_eq!(positivity_witness(&perm("21"), 2).unwrap(), vec![1]);
        assert_eq!(positivity_witness(&perm("312"), 3).unwrap(), vec![1, 1]);
        assert!(positivity_witness(&perm("321"), 3).is_err());
        for n in 2..=4 {
            for w in symmetric_group(n) {
                if w.ell() == n - 1 {
                    let seq = positivity_witness(&w, n).unwrap();
                    assert_eq!(seq.len(), n - 1);
                    for (j, &i) in seq.iter().enumerate() {
                        assert!(i <= j + 1);
                    }
                }
            }
        }
    }
}
