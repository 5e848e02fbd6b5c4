//! Permutations in one-line notation, Bruhat orders, insertion maps, and
//! chain enumeration for Pieri-type expansions.

use crate::ops::{Letter, RTWord};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PermError {
    Parse { msg: String },
    NotAPermutation { msg: String },
    Precondition { msg: String },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::Parse { msg } => write!(f, "permutation parse error: {msg}"),
            PermError::NotAPermutation { msg } => write!(f, "not a permutation: {msg}"),
            PermError::Precondition { msg } => write!(f, "precondition failed: {msg}"),
        }
    }
}

impl std::error::Error for PermError {}

/// Permutation of the positive integers fixing all but finitely many points,
/// stored in one-line notation with trailing fixed points trimmed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Permutation {
    w: Vec<usize>, // w[i] = image of i+1; w.last() != len
}

impl Permutation {
    pub fn identity() -> Self {
        Permutation { w: Vec::new() }
    }

    pub fn from_one_line(mut w: Vec<usize>) -> Result<Self, PermError> {
        let mut seen = vec![false; w.len()];
        for &v in &w {
            if v < 1 || v > w.len() || seen[v - 1] {
                return Err(PermError::NotAPermutation {
                    msg: format!("{w:?} is not a rearrangement of 1..={}", w.len()),
                });
            }
            seen[v - 1] = true;
        }
        while w.last() == Some(&w.len()) {
            w.pop();
        }
        Ok(Permutation { w })
    }

    /// Smallest n with w in S_n (trailing fixed points dropped).
    pub fn support(&self) -> usize {
        self.w.len()
    }

    pub fn is_identity(&self) -> bool {
        self.w.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        assert!(i >= 1);
        self.w.get(i - 1).copied().unwrap_or(i)
    }

    pub fn one_line(&self, n: usize) -> Vec<usize> {
        let n = n.max(self.support());
        (1..=n).map(|i| self.image(i)).collect()
    }

    pub fn inverse(&self) -> Permutation {
        let mut w = vec![0; self.w.len()];
        for (i, &v) in self.w.iter().enumerate() {
            w[v - 1] = i + 1;
        }
        Permutation::from_one_line(w).expect("inverse of a permutation")
    }

    /// (self o other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let n = self.support().max(other.support());
        let w = (1..=n).map(|i| self.image(other.image(i))).collect();
        Permutation::from_one_line(w).expect("composition of permutations")
    }

    pub fn s(i: usize) -> Permutation {
        assert!(i >= 1);
        Permutation::transposition(i, i + 1)
    }

    pub fn transposition(p: usize, q: usize) -> Permutation {
        assert!(p >= 1 && q >= 1 && p != q);
        let n = p.max(q);
        let mut w: Vec<usize> = (1..=n).collect();
        w.swap(p - 1, q - 1);
        Permutation::from_one_line(w).expect("transposition")
    }

    /// Longest element of S_n.
    pub fn w0(n: usize) -> Permutation {
        Permutation::from_one_line((1..=n).rev().collect()).expect("longest element")
    }

    /// The cycle sending 1 to n and j to j-1 for j >= 2.
    pub fn cycle_to_front(n: usize) -> Permutation {
        assert!(n >= 1);
        let mut w = vec![n];
        w.extend(1..n);
        Permutation::from_one_line(w).expect("cycle")
    }

    /// Number of inversions.
    pub fn ell(&self) -> usize {
        let mut count = 0;
        for i in 0..self.w.len() {
            for j in i + 1..self.w.len() {
                if self.w[i] > self.w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Positions i with w(i) > w(i+1).
    pub fn descents(&self) -> Vec<usize> {
        (1..self.w.len()).filter(|&i| self.w[i - 1] > self.w[i]).collect()
    }

    /// Inserts the value 1 at position i, shifting every other value up:
    /// j < i maps to w(j) + 1, i maps to 1, j > i maps to w(j-1) + 1.
    pub fn ins(&self, i: usize) -> Permutation {
        assert!(i >= 1);
        let n = self.support().max(i - 1) + 1;
        let mut w = Vec::with_capacity(n);
        for j in 1..=n {
            if j < i {
                w.push(self.image(j) + 1);
            } else if j == i {
                w.push(1);
            } else {
                w.push(self.image(j - 1) + 1);
            }
        }
        Permutation::from_one_line(w).expect("insertion")
    }

    /// Inverse of `ins`: defined when w(i) = 1.
    pub fn ins_inverse(&self, i: usize) -> Option<Permutation> {
        if self.image(i) != 1 {
            return None;
        }
        let n = self.support().max(i);
        let mut w = Vec::with_capacity(n - 1);
        for j in 1..=n {
            if j == i {
                continue;
            }
            w.push(self.image(j) - 1);
        }
        Some(Permutation::from_one_line(w).expect("insertion inverse"))
    }

    /// Number of values b >= a whose position is at most the position of a.
    pub fn ell_at(&self, a: usize) -> usize {
        let inv = self.inverse();
        let pa = inv.image(a);
        let n = self.support().max(a);
        (a..=n).filter(|&b| inv.image(b) <= pa).count()
    }

    pub fn ell_sequence(&self, n: usize) -> Vec<usize> {
        (1..=n).map(|a| self.ell_at(a)).collect()
    }

    /// Rebuilds ins_{j_1}(ins_{j_2}(... ins_{j_k}(id))).
    pub fn from_ell_sequence(seq: &[usize]) -> Permutation {
        let mut w = Permutation::identity();
        for &j in seq.iter().rev() {
            w = w.ins(j);
        }
        w
    }

    /// Lehmer code: c_i = #{j > i : w(j) < w(i)}.
    pub fn lehmer(&self) -> Vec<u32> {
        let mut code: Vec<u32> = (0..self.w.len())
            .map(|i| {
                (i + 1..self.w.len()).filter(|&j| self.w[j] < self.w[i]).count() as u32
            })
            .collect();
        while code.last() == Some(&0) {
            code.pop();
        }
        code
    }

    pub fn from_lehmer(code: &[u32]) -> Permutation {
        let n = code.len() + code.iter().map(|&c| c as usize).max().unwrap_or(0);
        let mut available: Vec<usize> = (1..=n).collect();
        let mut w = Vec::with_capacity(n);
        for i in 0..n {
            let c = code.get(i).copied().unwrap_or(0) as usize;
            w.push(available.remove(c));
        }
        Permutation::from_one_line(w).expect("Lehmer decoding")
    }

    /// Sorts positions 1..=k and positions k+1.. separately, keeping values.
    pub fn grassmannian_sort(&self, k: usize) -> Permutation {
        let n = self.support().max(k);
        let mut head: Vec<usize> = (1..=k.min(n)).map(|i| self.image(i)).collect();
        let mut tail: Vec<usize> = (k + 1..=n).map(|i| self.image(i)).collect();
        head.sort_unstable();
        tail.sort_unstable();
        head.extend(tail);
        Permutation::from_one_line(head).expect("sorted rearrangement")
    }

    /// Applies the left action on coordinate vectors: entry i of the result
    /// is v at position self^{-1}(i).
    pub fn apply_to_vector<T: Clone>(&self, v: &[T]) -> Vec<T> {
        assert!(self.support() <= v.len(), "vector too short for permutation");
        let inv = self.inverse();
        (1..=v.len()).map(|i| v[inv.image(i) - 1].clone()).collect()
    }

    /// One-line string, padded to n; single digits when max(n, support) <= 9,
    /// otherwise comma separated in brackets.
    pub fn one_line_string(&self, n: usize) -> String {
        let line = self.one_line(n);
        if line.len() <= 9 {
            line.iter().map(|v| v.to_string()).collect()
        } else {
            let parts: Vec<String> = line.iter().map(|v| v.to_string()).collect();
            format!("[{}]", parts.join(","))
        }
    }

    /// Accepts the digit form (n <= 9) or the bracketed comma form.
    pub fn parse(s: &str) -> Result<Permutation, PermError> {
        let t = s.trim();
        if t.is_empty() {
            return Err(PermError::Parse { msg: "empty permutation".into() });
        }
        let w: Vec<usize> = if let Some(inner) =
            t.strip_prefix('[').and_then(|r| r.strip_suffix(']'))
        {
            inner
                .split(',')
                .map(|p| {
                    p.trim().parse::<usize>().map_err(|_| PermError::Parse {
                        msg: format!("bad entry {p:?}"),
                    })
                })
                .collect::<Result<_, _>>()?
        } else {
            t.chars()
                .map(|c| {
                    c.to_digit(10).filter(|&d| d >= 1).map(|d| d as usize).ok_or(
                        PermError::Parse { msg: format!("bad digit {c:?}") },
                    )
                })
                .collect::<Result<_, _>>()?
        };
        Permutation::from_one_line(w)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_line_string(self.support().max(1)))
    }
}

/// All permutations of S_n in lexicographic one-line order.
pub fn symmetric_group(n: usize) -> Vec<Permutation> {
    fn go(prefix: &mut Vec<usize>, remaining: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if remaining.is_empty() {
            out.push(Permutation::from_one_line(prefix.clone()).expect("permutation"));
            return;
        }
        for k in 0..remaining.len() {
            let v = remaining.remove(k);
            prefix.push(v);
            go(prefix, remaining, out);
            prefix.pop();
            remaining.insert(k, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (1..=n).collect(), &mut out);
    out
}

/// Bruhat order via the tableau criterion: u <= v iff for every k the sorted
/// prefixes compare entrywise.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> bool {
    let n = u.support().max(v.support());
    for k in 1..=n {
        let mut a: Vec<usize> = (1..=k).map(|i| u.image(i)).collect();
        let mut b: Vec<usize> = (1..=k).map(|i| v.image(i)).collect();
        a.sort_unstable();
        b.sort_unstable();
        if a.iter().zip(&b).any(|(x, y)| x > y) {
            return false;
        }
    }
    true
}

/// The interval [u, v] in Bruhat order inside S_n for n covering both.
pub fn bruhat_interval(u: &Permutation, v: &Permutation) -> Vec<Permutation> {
    if !bruhat_leq(u, v) {
        return Vec::new();
    }
    let n = u.support().max(v.support());
    symmetric_group(n)
        .into_iter()
        .filter(|w| bruhat_leq(u, w) && bruhat_leq(w, v))
        .collect()
}

/// Covers of u in the k-Bruhat order within S_cap: u < u t_{p,q} with
/// p <= k < q <= cap and length going up by one. Each cover is labeled by
/// the larger swapped value u(q).
pub fn k_bruhat_covers(k: usize, u: &Permutation, cap: usize) -> Vec<(usize, Permutation)> {
    let mut out = Vec::new();
    for p in 1..=k.min(cap) {
        for q in k + 1..=cap {
            let (a, b) = (u.image(p), u.image(q));
            if a >= b {
                continue;
            }
            if (p + 1..q).any(|m| a < u.image(m) && u.image(m) < b) {
                continue;
            }
            out.push((b, u.compose(&Permutation::transposition(p, q))));
        }
    }
    out
}

/// Endpoints of decreasing chains with `steps` covers in the k-Bruhat order,
/// starting from u: labels strictly decrease along each chain.
fn decreasing_chain_endpoints(
    k: usize,
    u: &Permutation,
    steps: usize,
    cap: usize,
    max_label: usize,
    out: &mut Vec<Permutation>,
) {
    if steps == 0 {
        out.push(u.clone());
        return;
    }
    for (label, next) in k_bruhat_covers(k, u, cap) {
        if label < max_label {
            decreasing_chain_endpoints(k, &next, steps - 1, cap, label, out);
        }
    }
}

/// Expansion support of the i-th substitution operator on the basis element
/// of w: the v with ins_i(v) reachable from w by a decreasing chain of i-1
/// covers in the (i-1)-Bruhat order. Every coefficient is 1.
pub fn pieri_r_targets(i: usize, w: &Permutation) -> Vec<Permutation> {
    assert!(i >= 1);
    if i == 1 {
        return match w.ins_inverse(1) {
            Some(v) => vec![v],
            None => Vec::new(),
        };
    }
    let cap = w.support().max(i) + 1;
    let mut endpoints = Vec::new();
    decreasing_chain_endpoints(i - 1, w, i - 1, cap, usize::MAX, &mut endpoints);
    let mut targets: Vec<Permutation> = endpoints
        .into_iter()
        .filter_map(|z| z.ins_inverse(i))
        .collect();
    targets.sort();
    let before = targets.len();
    targets.dedup();
    assert_eq!(before, targets.len(), "decreasing chains are unique per endpoint");
    targets
}

/// Expansion support of the i-th trimming operator: empty unless i is a
/// descent of w, in which case it is the r-expansion of w s_i.
pub fn pieri_t_targets(i: usize, w: &Permutation) -> Vec<Permutation> {
    if !w.descents().contains(&i) {
        return Vec::new();
    }
    pieri_r_targets(i, &w.compose(&Permutation::s(i)))
}

/// The pair of permutations attached to a word: each letter inserts 1 into
/// both coordinates, at position j for r_j and at positions (j, j+1) for t_j.
pub fn uv_of(word: &RTWord) -> (Permutation, Permutation) {
    let mut u = Permutation::identity();
    let mut v = Permutation::identity();
    for letter in word.letters() {
        match letter {
            Letter::R(j) => {
                u = u.ins(*j);
                v = v.ins(*j);
            }
            Letter::T(j) => {
                u = u.ins(*j);
                v = v.ins(*j + 1);
            }
        }
    }
    (u, v)
}

/// Recovers the length-m word from its permutation pair; the letter at
/// position m+1-a is r_k when (ell_a(u), ell_a(v)) = (k, k) and t_k when it
/// is (k, k+1).
pub fn word_of_pair(u: &Permutation, v: &Permutation, m: usize) -> Result<RTWord, PermError> {
    let mut letters = vec![Letter::R(1); m];
    for a in 1..=m {
        let ku = u.ell_at(a);
        let kv = v.ell_at(a);
        let letter = if ku == kv {
            Letter::R(ku)
        } else if kv == ku + 1 {
            Letter::T(ku)
        } else {
            return Err(PermError::Precondition {
                msg: format!("pair is not a word image at value {a}"),
            });
        };
        letters[m - a] = letter;
    }
    let word = RTWord::new(letters);
    crate::rtword::validate_word(&word).map_err(|e| PermError::Precondition {
        msg: format!("recovered word invalid: {e}"),
    })?;
    Ok(word)
}

/// The pairs (u, v) with v = u composed with the n-cycle sending 1 to n,
/// for u fixing n; these are the images of the words of maximal t-count.
pub fn maximal_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    symmetric_group(n)
        .into_iter()
        .filter(|u| u.image(n) == n)
        .map(|u| {
            let v = u.compose(&Permutation::cycle_to_front(n));
            (u, v)
        })
        .collect()
}

/// A sequence (i_1, ..., i_{n-1}) with i_k <= k such that iterating the
/// trimming operators T_{i_{n-1}}, ..., T_{i_1} on the basis element of w
/// keeps a positive constant term; exists whenever ell(w) = n - 1. Found by
/// backtracking over descents and chain endpoints.
pub fn positivity_witness(w: &Permutation, n: usize) -> Result<Vec<usize>, PermError> {
    if w.ell() != n - 1 {
        return Err(PermError::Precondition {
            msg: format!("length of {w} is {} but must be {}", w.ell(), n - 1),
        });
    }
    fn search(w: &Permutation, k: usize, seq: &mut Vec<usize>) -> bool {
        if k == 0 {
            return w.is_identity();
        }
        for i in w.descents() {
            if i > k {
                continue;
            }
            for v in pieri_t_targets(i, w) {
                debug_assert_eq!(v.ell(), k - 1);
                seq.push(i);
                if search(&v, k - 1, seq) {
                    return true;
                }
                seq.pop();
            }
        }
        false
    }
    let mut seq = Vec::new();
    if !search(w, n - 1, &mut seq) {
        return Err(PermError::Precondition {
            msg: format!("no trimming chain from {w} reaches the identity"),
        });
    }
    seq.reverse(); // seq was built from the first operator applied; report i_1 first
    Ok(seq)
}
