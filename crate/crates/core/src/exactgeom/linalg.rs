//! Dense rational linear algebra on row-major `Vec<Vec<Rat>>`.
//!
//! These routines serve polytope code working in ambient dimension at most
//! a few dozen, so simplicity wins over asymptotics.

use super::Rat;
use num::{One, Zero};

/// Bring `mat` into reduced row echelon form in place.
/// Returns the pivot columns in order; zero rows sink to the bottom.
pub fn rref(mat: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let rows = mat.len();
    let cols = if rows == 0 { 0 } else { mat[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        if !inv.is_one() {
            for x in &mut mat[r][c..] {
                if !x.is_zero() {
                    *x /= &inv;
                }
            }
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = std::mem::replace(&mut mat[i][c], Rat::zero());
                for j in (c + 1)..cols {
                    if !mat[r][j].is_zero() {
                        let t = &f * &mat[r][j];
                        mat[i][j] -= t;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Solve `A x = b` with `A` given by rows. Returns one solution (free
/// variables set to zero) or `None` if the system is inconsistent.
pub fn solve(a_rows: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a_rows.len(), b.len(), "solve: row count mismatch");
    let cols = a_rows.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<Rat>> = a_rows
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut row = r.clone();
            row.push(x.clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug[i][cols].clone();
    }
    Some(x)
}

/// Basis of the right nullspace `{x : A x = 0}`, one vector per free column,
/// in ascending free-column order.
pub fn nullspace(a_rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let cols = a_rows.first().map_or(0, |r| r.len());
    let mut m = a_rows.to_vec();
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); cols];
        v[free] = Rat::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(a_rows: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a_rows.len();
    let mut aug: Vec<Vec<Rat>> = a_rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            assert_eq!(r.len(), n, "invert: not square");
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| i != p) {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Incremental independence tester: rows are kept forward-reduced, so
/// membership in the current row span is a single reduction pass.
pub struct Echelon {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` by the stored rows; returns the residue.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                // stored rows are zero before their pivot and 1 at it
                let f = std::mem::replace(&mut v[p], Rat::zero());
                for (x, y) in v.iter_mut().zip(row).skip(p + 1) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        v
    }

    /// Add `v` to the span. Returns true if it was independent.
    pub fn insert(&mut self, v: &[Rat]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].clone();
        if !inv.is_one() {
            for x in &mut v {
                if !x.is_zero() {
                    *x /= &inv;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

impl Default for Echelon {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, rat_vec};

    #[test]
    fn solve_and_nullspace_agree_on_a_rank_deficient_system() {
        // x + y + z = 3 with a dependent duplicate row
        let a = vec![rat_vec(&[1, 1, 1]), rat_vec(&[2, 2, 2])];
        let b = vec![rat(3), rat(6)];
        let x = solve(&a, &b).expect("consistent");
        assert_eq!(x, rat_vec(&[3, 0, 0]));
        let ns = nullspace(&a);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(super::super::dot(&a[0], v).is_zero());
        }
        assert!(solve(&a, &[rat(3), rat(5)]).is_none(), "inconsistent rhs must fail");
    }

    #[test]
    fn invert_round_trips() {
        let a = vec![rat_vec(&[2, 1]), rat_vec(&[1, 1])];
        let inv = invert(&a).expect("invertible");
        assert_eq!(inv, vec![rat_vec(&[1, -1]), rat_vec(&[-1, 2])]);
        assert!(invert(&[rat_vec(&[1, 2]), rat_vec(&[2, 4])]).is_none());
    }

    #[test]
    fn echelon_tracks_rank() {
        let mut e = Echelon::new();
        assert!(e.insert(&rat_vec(&[1, 2, 3])));
        assert!(e.insert(&rat_vec(&[0, 1, 1])));
        assert!(!e.insert(&rat_vec(&[1, 3, 4])), "dependent vector accepted");
        assert_eq!(e.rank(), 2);
    }
}
