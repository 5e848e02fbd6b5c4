//! Exact rational linear algebra: Gauss-Jordan elimination over BigRational.
//!
//! Small and dense on purpose; every consumer in this crate works with
//! matrices of dimension at most a few dozen.

use num_rational::BigRational;
use num_traits::Zero;

pub(crate) type Rat = BigRational;

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum SolveOutcome {
    Unique(Vec<Rat>),
    Inconsistent,
    Underdetermined,
}

/// Solves A x = b exactly. A is given by rows, all of width `ncols`.
pub(crate) fn solve(a: &[Vec<Rat>], b: &[Rat], ncols: usize) -> SolveOutcome {
    assert_eq!(a.len(), b.len());
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), ncols);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let rref = reduce(&mut m);
    // inconsistent: pivot in the augmented column
    for &(_, c) in &rref {
        if c == ncols {
            return SolveOutcome::Inconsistent;
        }
    }
    if rref.len() < ncols {
        return SolveOutcome::Underdetermined;
    }
    let mut x = vec![Rat::zero(); ncols];
    for &(r, c) in &rref {
        x[c] = m[r][ncols].clone();
    }
    SolveOutcome::Unique(x)
}

/// In-place reduced row echelon form. Returns the (row, col) pivot list in
/// order. Rows may have any common width.
pub(crate) fn reduce(m: &mut [Vec<Rat>]) -> Vec<(usize, usize)> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].clone();
        for v in m[row].iter_mut() {
            *v = &*v / &inv;
        }
        for r in 0..nrows {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in 0..ncols {
                    let delta = &factor * &m[row][c];
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    pivots
}

pub(crate) fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    reduce(&mut m).len()
}

/// Basis (RREF nonzero rows) of the row space.
pub(crate) fn row_space_basis(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let pivots = reduce(&mut m);
    pivots.iter().map(|&(r, _)| m[r].clone()).collect()
}

/// Is v in the span of the given rows?
pub(crate) fn in_span(rows: &[Vec<Rat>], v: &[Rat]) -> bool {
    let r0 = rank(rows);
    let mut aug: Vec<Vec<Rat>> = rows.to_vec();
    aug.push(v.to_vec());
    rank(&aug) == r0
}

/// Basis of the right kernel of the matrix given by rows.
pub(crate) fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    for r in &m {
        assert_eq!(r.len(), ncols);
    }
    let pivots = reduce(&mut m);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::from_integer(1.into());
        for &(r, c) in &pivots {
            v[c] = -m[r][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Basis of the intersection of two row spans in the same ambient dimension.
pub(crate) fn intersect_spans(a: &[Vec<Rat>], b: &[Vec<Rat>], dim: usize) -> Vec<Vec<Rat>> {
    // x in U cap W iff x = u^T A = w^T B; kernel vectors of [A^T | -B^T]
    // give the coefficient pairs.
    let cols = a.len() + b.len();
    let mut stacked: Vec<Vec<Rat>> = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut row = Vec::with_capacity(cols);
        for ra in a {
            row.push(ra[i].clone());
        }
        for rb in b {
            row.push(-rb[i].clone());
        }
        stacked.push(row);
    }
    let kernel = nullspace(&stacked, cols);
    let vectors: Vec<Vec<Rat>> = kernel
        .iter()
        .map(|k| {
            let mut x = vec![Rat::zero(); dim];
            for (j, ra) in a.iter().enumerate() {
                for i in 0..dim {
                    let delta = &k[j] * &ra[i];
                    x[i] = &x[i] + &delta;
                }
            }
            x
        })
        .collect();
    row_space_basis(&vectors)
}

pub(crate) fn rat_int(v: i64) -> Rat {
    Rat::from_integer(v.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter().map(|r| r.iter().map(|&v| rat_int(v)).collect()).collect()
    }

    #[test]
    fn solve_unique_system() {
        let a = m(&[&[1, 1], &[1, -1]]);
        let b = vec![rat_int(3), rat_int(1)];
        match solve(&a, &b, 2) {
            SolveOutcome::Unique(x) => {
                assert_eq!(x, vec![rat_int(2), rat_int(1)]);
            }
            other => panic!("expected unique, got {other:?}"),
        }
    }

    #[test]
    fn solve_detects_inconsistency_and_freedom() {
        let a = m(&[&[1, 1], &[2, 2]]);
        assert_eq!(
            solve(&a, &[rat_int(1), rat_int(3)], 2),
            SolveOutcome::Inconsistent
        );
        assert_eq!(
            solve(&a, &[rat_int(1), rat_int(2)], 2),
            SolveOutcome::Underdetermined
        );
    }

    #[test]
    fn rank_and_span() {
        let rows = m(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]]);
        assert_eq!(rank(&rows), 2);
        assert!(in_span(&rows, &[rat_int(2), rat_int(1), rat_int(3)]));
        assert!(!in_span(&rows, &[rat_int(0), rat_int(0), rat_int(1)]));
    }

    #[test]
    fn kernel_and_intersection() {
        let rows = m(&[&[1, 1, 0], &[0, 0, 1]]);
        let ker = nullspace(&rows, 3);
        assert_eq!(ker.len(), 1);
        assert!(in_span(&m(&[&[1, -1, 0]]), &ker[0]));

        let a = m(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = m(&[&[0, 1, 0], &[0, 0, 1]]);
        let meet = intersect_spans(&a, &b, 3);
        assert_eq!(meet.len(), 1);
        assert!(in_span(&m(&[&[0, 1, 0]]), &meet[0]));
    }
}
