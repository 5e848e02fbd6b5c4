//! Words in the letters r_i, t_i and their forest and matrix images.
//!
//! A valid length-n word has its j-th letter drawn from
//! r_1, ..., r_j, t_1, ..., t_{j-1}; there are (2n-1)!! of them. Letters act
//! on forests by right multiplication (t_j grows a wedge at leaf j, r_j
//! inserts a marked trivial tree at position j), and on polynomials through
//! the substitution operators, with the last letter acting first.

use crate::forest::{MarkedNestedForest, NestedForest};
pub use crate::ops::{Letter, RTWord};
use std::collections::VecDeque;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WordError {
    /// Letter index too large for its position.
    InvalidWord { pos: usize, msg: String },
    BoundExceeded { n: usize, bound: usize },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::InvalidWord { pos, msg } => {
                write!(f, "invalid word at position {pos}: {msg}")
            }
            WordError::BoundExceeded { n, bound } => {
                write!(f, "word length {n} exceeds the supported bound {bound}")
            }
        }
    }
}

impl std::error::Error for WordError {}

/// Checks that the j-th letter (1-based) is one of r_1..r_j, t_1..t_{j-1}.
pub fn validate_word(word: &RTWord) -> Result<(), WordError> {
    for (idx, letter) in word.letters().iter().enumerate() {
        let j = idx + 1;
        let ok = match letter {
            Letter::R(i) => *i >= 1 && *i <= j,
            Letter::T(i) => *i >= 1 && *i + 1 <= j,
        };
        if !ok {
            return Err(WordError::InvalidWord {
                pos: j,
                msg: format!("letter {letter} is not allowed at position {j}"),
            });
        }
    }
    Ok(())
}

/// All valid words of length n, in lexicographic order of the per-position
/// choices r_1, t_1, r_2, t_2, ..., r_j.
pub fn enumerate_words(n: usize, bound: usize) -> Result<Vec<RTWord>, WordError> {
    if n > bound {
        return Err(WordError::BoundExceeded { n, bound });
    }
    let mut words: Vec<Vec<Letter>> = vec![Vec::new()];
    for j in 1..=n {
        let mut choices = Vec::with_capacity(2 * j - 1);
        for i in 1..=j {
            choices.push(Letter::R(i));
            if i < j {
                choices.push(Letter::T(i));
            }
        }
        let mut next = Vec::with_capacity(words.len() * choices.len());
        for w in &words {
            for c in &choices {
                let mut v = w.clone();
                v.push(*c);
                next.push(v);
            }
        }
        words = next;
    }
    Ok(words.into_iter().map(RTWord::new).collect())
}

/// The marked nested forest of a word: fold the letters left to right as
/// right multiplications.
pub fn forest_of(word: &RTWord) -> MarkedNestedForest {
    let mut f = MarkedNestedForest::empty();
    for letter in word.letters() {
        f = match letter {
            Letter::R(i) => f.mul_mark(*i),
            Letter::T(i) => f.mul_wedge(*i),
        };
    }
    f
}

/// All length-n words whose forest is the given one (marks forgotten).
pub fn trim_set(forest: &NestedForest, n: usize, bound: usize) -> Result<Vec<RTWord>, WordError> {
    let words = enumerate_words(n, bound)?;
    Ok(words
        .into_iter()
        .filter(|w| forest_of(w).forget_marks() == *forest)
        .collect())
}

/// The canonical trim word r_1^{n-|F|} t_1^{c_1} ... t_k^{c_k} of an indexed
/// forest with code (c_1, ..., c_k).
pub fn canonical_trim_word(forest: &crate::forest::IndexedForest, n: usize) -> RTWord {
    let code = forest.code();
    let size: u32 = code.iter().sum();
    assert!((size as usize) <= n.saturating_sub(0), "forest too large for n");
    let mut letters = Vec::with_capacity(n);
    for _ in 0..n - size as usize {
        letters.push(Letter::R(1));
    }
    for (i, &c) in code.iter().enumerate() {
        for _ in 0..c {
            letters.push(Letter::T(i + 1));
        }
    }
    let word = RTWord::new(letters);
    debug_assert!(validate_word(&word).is_ok());
    word
}

/// Matrix entries over {0, 1, *}.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatEntry {
    Zero,
    One,
    Star,
}

impl fmt::Display for MatEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatEntry::Zero => write!(f, "0"),
            MatEntry::One => write!(f, "1"),
            MatEntry::Star => write!(f, "*"),
        }
    }
}

/// Square matrix over {0, 1, *} encoding a word; rows print top to bottom.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StarMatrix {
    rows: Vec<Vec<MatEntry>>,
}

impl StarMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<MatEntry>] {
        &self.rows
    }

    pub fn entry(&self, r: usize, c: usize) -> MatEntry {
        self.rows[r][c]
    }

    /// Row index of the 1 in each column.
    fn one_row_in_col(&self, c: usize) -> Option<usize> {
        (0..self.size()).find(|&r| self.rows[r][c] == MatEntry::One)
    }

    /// Checks the defining pattern: the ones form a permutation matrix, each
    /// row has at most one star, every star sits above its column's one and
    /// left of its row's one, and any zero between a row's star and its one
    /// has only zeros below it.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.size();
        for row in &self.rows {
            if row.len() != n {
                return Err("matrix is not square".into());
            }
        }
        for r in 0..n {
            let ones: Vec<usize> =
                (0..n).filter(|&c| self.rows[r][c] == MatEntry::One).collect();
            if ones.len() != 1 {
                return Err(format!("row {r} must have exactly one 1"));
            }
            let stars: Vec<usize> =
                (0..n).filter(|&c| self.rows[r][c] == MatEntry::Star).collect();
            if stars.len() > 1 {
                return Err(format!("row {r} has more than one star"));
            }
        }
        for c in 0..n {
            if (0..n).filter(|&r| self.rows[r][c] == MatEntry::One).count() != 1 {
                return Err(format!("column {c} must have exactly one 1"));
            }
        }
        for r in 0..n {
            for c in 0..n {
                if self.rows[r][c] != MatEntry::Star {
                    continue;
                }
                let one_col = (0..n).find(|&k| self.rows[r][k] == MatEntry::One).unwrap();
                let one_row = self.one_row_in_col(c).unwrap();
                if c >= one_col {
                    return Err(format!("star at ({r},{c}) is not left of its row's 1"));
                }
                if r >= one_row {
                    return Err(format!("star at ({r},{c}) is not above its column's 1"));
                }
                for mid in c + 1..one_col {
                    if self.rows[r][mid] != MatEntry::Zero {
                        continue;
                    }
                    for below in r + 1..n {
                        if self.rows[below][mid] != MatEntry::Zero {
                            return Err(format!(
                                "zero at ({r},{mid}) between star and 1 has a nonzero below"
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Recovers the forest: star rows are internal nodes; a node's left child
    /// hangs in its star's column and its right child in its one's column,
    /// each being the nearest star row above in that column, or else the leaf
    /// at that column position.
    pub fn forest(&self) -> NestedForest {
        let n = self.size();
        #[derive(Clone, Copy)]
        enum Child {
            Row(usize),
            Leaf(usize), // 1-based position
        }
        let star_of_row: Vec<Option<usize>> = (0..n)
            .map(|r| (0..n).find(|&c| self.rows[r][c] == MatEntry::Star))
            .collect();
        let one_of_row: Vec<usize> = (0..n)
            .map(|r| (0..n).find(|&c| self.rows[r][c] == MatEntry::One).unwrap())
            .collect();
        let nearest_star_above = |row: usize, col: usize| -> Child {
            for r in (0..row).rev() {
                if star_of_row[r] == Some(col) {
                    return Child::Row(r);
                }
            }
            Child::Leaf(col + 1)
        };
        let mut children: Vec<Option<(Child, Child)>> = vec![None; n];
        for r in 0..n {
            if let Some(sc) = star_of_row[r] {
                let left = nearest_star_above(r, sc);
                let right = nearest_star_above(r, one_of_row[r]);
                children[r] = Some((left, right));
            }
        }
        // roots: star rows not referenced as a child
        let mut is_child = vec![false; n];
        for ch in children.iter().flatten() {
            for c in [ch.0, ch.1] {
                if let Child::Row(r) = c {
                    is_child[r] = true;
                }
            }
        }
        fn build(
            ch: Child,
            children: &[Option<(Child, Child)>],
            supp: &mut Vec<usize>,
        ) -> crate::forest::TreeShape {
            match ch {
                Child::Leaf(p) => {
                    supp.push(p);
                    crate::forest::TreeShape::Leaf
                }
                Child::Row(r) => {
                    let (l, rgt) = children[r].expect("star row has children");
                    let lt = build(l, children, supp);
                    let rt = build(rgt, children, supp);
                    crate::forest::TreeShape::Node(Box::new(lt), Box::new(rt))
                }
            }
        }
        let mut blocks = Vec::new();
        for r in 0..n {
            if children[r].is_some() && !is_child[r] {
                let mut supp = Vec::new();
                let shape = build(Child::Row(r), &children, &mut supp);
                blocks.push((supp, shape));
            }
        }
        NestedForest::new(blocks).expect("recovered blocks are noncrossing")
    }

    /// The permutation matrix of the rightmost nonzero entry of every row,
    /// as the map row -> column (both 1-based, top row first).
    pub fn rightmost_nonzero_cols(&self) -> Vec<usize> {
        let n = self.size();
        (0..n)
            .map(|r| {
                (0..n)
                    .rev()
                    .find(|&c| self.rows[r][c] != MatEntry::Zero)
                    .expect("row has a nonzero entry")
                    + 1
            })
            .collect()
    }
}

impl fmt::Display for StarMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            for e in row {
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

/// The matrix of a word, built letter by letter: appending r_i stacks the
/// unit row e_i on top and inserts a zero column at position i; appending
/// t_i stacks a row with a star at column i and a 1 at column i+1, and
/// inserts a zero column at position i+1.
pub fn star_matrix(word: &RTWord) -> Result<StarMatrix, WordError> {
    validate_word(word)?;
    if word.is_empty() {
        return Ok(StarMatrix { rows: Vec::new() });
    }
    let mut rows: Vec<Vec<MatEntry>> = vec![vec![MatEntry::One]];
    for (idx, letter) in word.letters().iter().enumerate().skip(1) {
        let j = idx + 1;
        let (zero_col, mut top) = match letter {
            Letter::R(i) => {
                let mut top = vec![MatEntry::Zero; j];
                top[i - 1] = MatEntry::One;
                (i - 1, top)
            }
            Letter::T(i) => {
                let mut top = vec![MatEntry::Zero; j];
                top[i - 1] = MatEntry::Star;
                top[*i] = MatEntry::One;
                (*i, top)
            }
        };
        let mut next: Vec<Vec<MatEntry>> = Vec::with_capacity(j);
        next.push(std::mem::take(&mut top));
        for old in &rows {
            let mut row = Vec::with_capacity(j);
            row.extend_from_slice(&old[..zero_col.min(old.len())]);
            row.push(MatEntry::Zero);
            if zero_col < old.len() {
                row.extend_from_slice(&old[zero_col..]);
            }
            next.push(row);
        }
        rows = next;
    }
    Ok(StarMatrix { rows })
}

/// The coordinate box of a word: one factor per position j >= 2, the
/// singleton {i} for r_i and the pair {i, i+1} for t_i.
pub fn box_of(word: &RTWord) -> Vec<(usize, usize)> {
    word.letters()
        .iter()
        .skip(1)
        .map(|l| match l {
            Letter::R(i) => (*i, *i),
            Letter::T(i) => (*i, *i + 1),
        })
        .collect()
}

pub fn box_contains(outer: &[(usize, usize)], inner: &[(usize, usize)]) -> bool {
    outer.len() == inner.len()
        && outer
            .iter()
            .zip(inner)
            .all(|(o, i)| o.0 <= i.0 && i.1 <= o.1)
}

/// Rewrites a word into a sum of words with every r before every t, using
/// the exchange rules on an adjacent pair (t_a, r_b):
///   b <= a       -> (r_b, t_{a+1})
///   b == a + 1   -> (r_a, t_{a+1}) and (r_{a+1}, t_a)  (two branches)
///   b >= a + 2   -> (r_{b-1}, t_a)
/// Each rule moves an r past a t, so the number of (t, later r) inversions
/// drops by one per step and the worklist terminates.
pub fn rewrite_to_nonnested(word: &RTWord) -> Result<Vec<RTWord>, WordError> {
    validate_word(word)?;
    let mut queue: VecDeque<Vec<Letter>> = VecDeque::new();
    queue.push_back(word.letters().to_vec());
    let mut done: Vec<RTWord> = Vec::new();
    while let Some(w) = queue.pop_front() {
        let pair = (0..w.len().saturating_sub(1)).find(|&p| {
            matches!((w[p], w[p + 1]), (Letter::T(_), Letter::R(_)))
        });
        let Some(p) = pair else {
            done.push(RTWord::new(w));
            continue;
        };
        let (Letter::T(a), Letter::R(b)) = (w[p], w[p + 1]) else {
            unreachable!();
        };
        if b <= a {
            let mut v = w.clone();
            v[p] = Letter::R(b);
            v[p + 1] = Letter::T(a + 1);
            queue.push_back(v);
        } else if b == a + 1 {
            let mut v1 = w.clone();
            v1[p] = Letter::R(a);
            v1[p + 1] = Letter::T(a + 1);
            queue.push_back(v1);
            let mut v2 = w;
            v2[p] = Letter::R(a + 1);
            v2[p + 1] = Letter::T(a);
            queue.push_back(v2);
        } else {
            let mut v = w.clone();
            v[p] = Letter::R(b - 1);
            v[p + 1] = Letter::T(a);
            queue.push_back(v);
        }
    }
    done.sort();
    Ok(done)
}
