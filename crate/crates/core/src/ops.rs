//! The operator calculus: divided differences, Bergeron-Sottile maps R_i,
//! trimming operators T_i, and their cyclic variants.
//!
//! All operators act on 1-indexed variables. Words in the letters r_j, t_j
//! are applied right to left: the last letter acts first.

use crate::poly::{MultiPoly, Scalar, VarImage};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OpsError {
    Parse { pos: usize, msg: String },
    IndexOutOfRange { i: usize, n: usize },
    TooManyVariables { max_var: usize, n: usize },
}

impl fmt::Display for OpsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpsError::Parse { pos, msg } => write!(f, "word parse error at byte {pos}: {msg}"),
            OpsError::IndexOutOfRange { i, n } => {
                write!(f, "operator index {i} out of range for n = {n}")
            }
            OpsError::TooManyVariables { max_var, n } => {
                write!(f, "polynomial uses variable x{max_var} but n = {n}")
            }
        }
    }
}

impl std::error::Error for OpsError {}

/// One letter of an operator word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Letter {
    R(usize),
    T(usize),
}

impl Letter {
    pub fn index(&self) -> usize {
        match self {
            Letter::R(j) | Letter::T(j) => *j,
        }
    }

    pub fn is_t(&self) -> bool {
        matches!(self, Letter::T(_))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::R(j) => write!(f, "r{j}"),
            Letter::T(j) => write!(f, "t{j}"),
        }
    }
}

/// Word in the letters r_j, t_j. Printed with single spaces; applied to a
/// polynomial right to left.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct RTWord(pub Vec<Letter>);

impl RTWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        RTWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of t letters.
    pub fn t_count(&self) -> usize {
        self.0.iter().filter(|l| l.is_t()).count()
    }

    /// Parses a whitespace separated word like "r1 t1 t2".
    pub fn parse(input: &str) -> Result<Self, OpsError> {
        let bytes = input.as_bytes();
        let mut letters = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            if bytes[pos].is_ascii_whitespace() {
                pos += 1;
                continue;
            }
            let start = pos;
            let kind = bytes[pos];
            if kind != b'r' && kind != b't' {
                return Err(OpsError::Parse {
                    pos: start,
                    msg: "expected a letter r<j> or t<j>".to_string(),
                });
            }
            pos += 1;
            let digits_start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == digits_start {
                return Err(OpsError::Parse {
                    pos: start,
                    msg: "letter is missing its index".to_string(),
                });
            }
            let j: usize = std::str::from_utf8(&bytes[digits_start..pos])
                .unwrap()
                .parse()
                .map_err(|_| OpsError::Parse {
                    pos: start,
                    msg: "letter index too large".to_string(),
                })?;
            if j == 0 {
                return Err(OpsError::Parse {
                    pos: start,
                    msg: "letter indices are 1-indexed".to_string(),
                });
            }
            if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
                return Err(OpsError::Parse {
                    pos,
                    msg: "letters must be whitespace separated".to_string(),
                });
            }
            letters.push(if kind == b'r' { Letter::R(j) } else { Letter::T(j) });
        }
        Ok(RTWord(letters))
    }
}

impl fmt::Display for RTWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for l in &self.0 {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
            first = false;
        }
        Ok(())
    }
}

/// The simple transposition action: swaps x_i and x_{i+1}.
pub fn swap_adjacent(i: usize, f: &MultiPoly) -> MultiPoly {
    assert!(i >= 1);
    f.substitute_vars(|v| {
        VarImage::Var(if v == i {
            i + 1
        } else if v == i + 1 {
            i
        } else {
            v
        })
    })
}

/// Divided difference: (f - s_i f) / (x_i - x_{i+1}).
pub fn divided_difference(i: usize, f: &MultiPoly) -> MultiPoly {
    let ring = f.ring();
    let num = f.sub(&swap_adjacent(i, f));
    if num.is_zero() {
        return num;
    }
    let den = MultiPoly::var_in(ring, i).sub(&MultiPoly::var_in(ring, i + 1));
    num.exact_div(&den).expect("f - s_i f is divisible by x_i - x_{i+1}")
}

/// Bergeron-Sottile map: (R_i f)(x1, x2, ...) = f(x1, .., x_{i-1}, 0, x_i, ..),
/// i.e. the i-th argument becomes zero and later arguments shift down.
pub fn r_op(i: usize, f: &MultiPoly) -> MultiPoly {
    assert!(i >= 1);
    f.substitute_vars(|v| {
        if v < i {
            VarImage::Var(v)
        } else if v == i {
            VarImage::Zero
        } else {
            VarImage::Var(v - 1)
        }
    })
}

/// Trimming operator T_i = R_i after the divided difference, computed as
/// (R_{i+1} f - R_i f) / x_i.
pub fn t_op(i: usize, f: &MultiPoly) -> MultiPoly {
    let num = r_op(i + 1, f).sub(&r_op(i, f));
    if num.is_zero() {
        return num;
    }
    let xi = MultiPoly::var_in(f.ring(), i);
    num.exact_div(&xi).expect("R_{i+1} f - R_i f is divisible by x_i")
}

fn check_cyc_args(i: usize, n: usize, top: usize, f: &MultiPoly) -> Result<(), OpsError> {
    if i == 0 || i > top || n == 0 {
        return Err(OpsError::IndexOutOfRange { i, n });
    }
    if f.max_var() > n {
        return Err(OpsError::TooManyVariables { max_var: f.max_var(), n });
    }
    Ok(())
}

/// Cyclic shift map on n variables:
/// (R_{i,n} f) = f(x1, .., x_{i-1}, x_n, x_i, .., x_{n-1}).
pub fn r_cyc(i: usize, n: usize, f: &MultiPoly) -> Result<MultiPoly, OpsError> {
    check_cyc_args(i, n, n, f)?;
    Ok(f.substitute_vars(|v| {
        if v < i {
            VarImage::Var(v)
        } else if v == i {
            VarImage::Var(n)
        } else {
            VarImage::Var(v - 1)
        }
    }))
}

/// Cyclic trimming operator:
/// T_{i,n} f = (R_{i+1,n} f - R_{i,n} f) / (x_i - x_n).
pub fn t_cyc(i: usize, n: usize, f: &MultiPoly) -> Result<MultiPoly, OpsError> {
    check_cyc_args(i, n, n.saturating_sub(1), f)?;
    let num = r_cyc(i + 1, n, f)?.sub(&r_cyc(i, n, f)?);
    if num.is_zero() {
        return Ok(num);
    }
    let den = MultiPoly::var_in(f.ring(), i).sub(&MultiPoly::var_in(f.ring(), n));
    Ok(num
        .exact_div(&den)
        .expect("R_{i+1,n} f - R_{i,n} f is divisible by x_i - x_n"))
}

/// Constant term functional.
pub fn ct(f: &MultiPoly) -> Scalar {
    f.ct()
}

/// f is quasisymmetric in x1..xn iff every T_i kills it, 1 <= i <= n-1.
pub fn is_quasisymmetric(f: &MultiPoly, n: usize) -> bool {
    assert!(f.max_var() <= n, "polynomial does not live in the first {n} variables");
    (1..n).all(|i| t_op(i, f).is_zero())
}

/// f is symmetric in x1..xn iff every divided difference kills it.
pub fn is_symmetric(f: &MultiPoly, n: usize) -> bool {
    assert!(f.max_var() <= n, "polynomial does not live in the first {n} variables");
    (1..n).all(|i| divided_difference(i, f).is_zero())
}

/// Applies a word of operators, last letter first.
pub fn apply_word(word: &RTWord, f: &MultiPoly) -> MultiPoly {
    let mut acc = f.clone();
    for l in word.0.iter().rev() {
        acc = match l {
            Letter::R(j) => r_op(*j, &acc),
            Letter::T(j) => t_op(*j, &acc),
        };
        if acc.is_zero() {
            break;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Ring;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s).unwrap()
    }

    #[test]
    fn divided_difference_basics() {
        assert_eq!(divided_difference(1, &p("x1")), p("1"));
        assert_eq!(divided_difference(1, &p("x1*x2")), MultiPoly::zero(Ring::Int));
        assert_eq!(divided_difference(1, &p("x1^2")), p("x1 + x2"));
        assert_eq!(divided_difference(2, &p("x1")), MultiPoly::zero(Ring::Int));
    }

    #[test]
    fn divided_difference_nil_and_braid() {
        let f = p("x1^3*x2 + 2*x1*x3^2 - x2*x3*x4");
        for i in 1..4 {
            let once = divided_difference(i, &f);
            assert!(divided_difference(i, &once).is_zero());
        }
        let lhs = divided_difference(1, &divided_difference(2, &divided_difference(1, &f)));
        let rhs = divided_difference(2, &divided_difference(1, &divided_difference(2, &f)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn r_op_inserts_zero() {
        assert_eq!(r_op(1, &p("x1")), MultiPoly::zero(Ring::Int));
        assert_eq!(r_op(1, &p("x2")), p("x1"));
        assert_eq!(r_op(2, &p("x1 + x2 + x3")), p("x1 + x2"));
        assert_eq!(r_op(3, &p("x1*x2")), p("x1*x2"));
    }

    #[test]
    fn t_op_anchor_values() {
        assert_eq!(t_op(1, &p("x1")), p("1"));
        assert_eq!(t_op(1, &p("x2")), p("-1"));
        assert_eq!(t_op(2, &p("x1")), MultiPoly::zero(Ring::Int));
        assert_eq!(ct(&t_op(1, &p("x1"))), Scalar::from_int(1));
        assert_eq!(ct(&t_op(1, &p("x2"))), Scalar::from_int(-1));
    }

    #[test]
    fn t_op_agrees_with_divided_difference_forms() {
        let f = p("x1^2*x3 + x2*x4^2 - 3*x1*x2*x3");
        for i in 1..5 {
            let a = t_op(i, &f);
            let b = r_op(i, &divided_difference(i, &f));
            let c = r_op(i + 1, &divided_difference(i, &f));
            assert_eq!(a, b, "T_{i} vs R_{i} d_{i}");
            assert_eq!(a, c, "T_{i} vs R_{}, d_{i}", i + 1);
        }
    }

    #[test]
    fn twisted_leibniz() {
        let f = p("x1^2 + x2*x3");
        let g = p("x1*x3 - x2^2");
        for i in 1..3 {
            let lhs = divided_difference(i, &f.mul(&g));
            let rhs = f
                .mul(&divided_difference(i, &g))
                .add(&divided_difference(i, &f).mul(&swap_adjacent(i, &g)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn r_is_ring_map_and_t_is_twisted() {
        let f = p("x1 + x2^2");
        let g = p("x3*x1 - x2");
        for i in 1..4 {
            assert_eq!(r_op(i, &f.mul(&g)), r_op(i, &f).mul(&r_op(i, &g)));
            let lhs = t_op(i, &f.mul(&g));
            let rhs = r_op(i + 1, &f).mul(&t_op(i, &g)).add(&t_op(i, &f).mul(&r_op(i, &g)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn cyclic_maps() {
        assert_eq!(r_cyc(1, 3, &p("x1")).unwrap(), p("x3"));
        assert_eq!(r_cyc(3, 3, &p("x1*x3")).unwrap(), p("x1*x3"));
        assert_eq!(r_cyc(2, 3, &p("x2 + x3")).unwrap(), p("x3 + x2"));
        assert!(r_cyc(1, 2, &p("x3")).is_err());
        assert!(r_cyc(4, 3, &p("x1")).is_err());
        // specializing x_n to 0 recovers the plain maps
        let f = p("x1^2*x2 + x2*x3 - x1");
        for i in 1..=4 {
            let cyc = r_cyc(i, 4, &f).unwrap();
            let specialized = cyc.substitute_vars(|v| {
                if v == 4 {
                    VarImage::Zero
                } else {
                    VarImage::Var(v)
                }
            });
            assert_eq!(specialized, r_op(i, &f));
        }
        for i in 1..4 {
            let cyc = t_cyc(i, 4, &f).unwrap();
            let specialized = cyc.substitute_vars(|v| {
                if v == 4 {
                    VarImage::Zero
                } else {
                    VarImage::Var(v)
                }
            });
            assert_eq!(specialized, t_op(i, &f));
        }
    }

    #[test]
    fn t_cyc_factored_forms() {
        // T_{i,n} = R_{i+1,n} d_i = R_{i,n} d_i
        let f = p("x1^2*x3 - 2*x2*x3^2 + x1*x2*x3");
        for i in 1..3 {
            let a = t_cyc(i, 3, &f).unwrap();
            let d = divided_difference(i, &f);
            let b = r_cyc(i + 1, 3, &d).unwrap();
            let c = r_cyc(i, 3, &d).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, c);
        }
    }

    #[test]
    fn operator_relations_samples() {
        let f = p("x1*x2^2 + x3^3 - x1*x4 + x2");
        // T_i T_j = T_j T_{i+1} for i > j
        for (i, j) in [(2usize, 1usize), (3, 1), (3, 2)] {
            assert_eq!(
                t_op(i, &t_op(j, &f)),
                t_op(j, &t_op(i + 1, &f)),
                "T relation at ({i},{j})"
            );
        }
        // T_i R_j = R_j T_{i+1} for i >= j
        for (i, j) in [(1usize, 1usize), (2, 1), (2, 2), (3, 2)] {
            assert_eq!(t_op(i, &r_op(j, &f)), r_op(j, &t_op(i + 1, &f)));
        }
        // R_i T_j = T_j R_{i+1} for i > j
        for (i, j) in [(2usize, 1usize), (3, 1), (3, 2)] {
            assert_eq!(r_op(i, &t_op(j, &f)), t_op(j, &r_op(i + 1, &f)));
        }
        // R_i R_j = R_j R_{i+1} for i >= j
        for (i, j) in [(1usize, 1usize), (2, 1), (2, 2), (3, 3)] {
            assert_eq!(r_op(i, &r_op(j, &f)), r_op(j, &r_op(i + 1, &f)));
        }
        // T_i R_{i+1} = R_i T_{i+1} + R_{i+1} T_i
        for i in 1..3 {
            let lhs = t_op(i, &r_op(i + 1, &f));
            let rhs = r_op(i, &t_op(i + 1, &f)).add(&r_op(i + 1, &t_op(i, &f)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn quasisymmetric_detection() {
        let g = p("x1 + x2");
        assert!(is_quasisymmetric(&g, 2));
        assert!(!is_quasisymmetric(&p("x1"), 2));
        // all R_i agree on a quasisymmetric polynomial
        let m = p("x1^2*x2 + x1^2*x3 + x2^2*x3");
        assert!(is_quasisymmetric(&m, 3));
        let images: Vec<_> = (1..=3).map(|i| r_op(i, &m)).collect();
        assert!(images.windows(2).all(|w| w[0] == w[1]));
        assert!(is_symmetric(&p("x1*x2 + x1*x3 + x2*x3"), 3));
        assert!(!is_symmetric(&m, 3));
    }

    #[test]
    fn product_with_quasisymmetric_pulls_out() {
        // X(gh) = (R_1 g) X(h) for quasisymmetric g and any letter valid in
        // the ambient variable count
        let g = p("x1*x2 + x1*x3 + x2*x3");
        let h = p("x1^2 - x2*x3");
        let gh = g.mul(&h);
        let r1g = r_op(1, &g);
        for i in 1..3 {
            assert_eq!(t_op(i, &gh), r1g.mul(&t_op(i, &h)));
        }
        for i in 1..=3 {
            assert_eq!(r_op(i, &gh), r1g.mul(&r_op(i, &h)));
        }
    }

    #[test]
    fn word_parse_and_apply() {
        let w = RTWord::parse("r1 t1 t2").unwrap();
        assert_eq!(w.to_string(), "r1 t1 t2");
        assert_eq!(w.t_count(), 2);
        assert!(RTWord::parse("r1 s2").is_err());
        assert!(RTWord::parse("r0").is_err());
        assert!(RTWord::parse("r").is_err());
        assert!(RTWord::parse("r1t2").is_err());
        assert!(RTWord::parse("  ").unwrap().is_empty());

        // last letter acts first: t1 then t1? no: word "t2 t1" applies t1 first
        let f = p("x1*x2");
        let w = RTWord::parse("t1 t2").unwrap();
        let by_hand = t_op(1, &t_op(2, &f));
        assert_eq!(apply_word(&w, &f), by_hand);
    }

    #[test]
    fn word_application_matches_letterwise() {
        let f = p("x1^2*x2 + x3");
        let w = RTWord::parse("r1 t1 r2").unwrap();
        let step1 = r_op(2, &f);
        let step2 = t_op(1, &step1);
        let step3 = r_op(1, &step2);
        assert_eq!(apply_word(&w, &f), step3);
    }
}
