use super::{linalg, rat, Rat};
use crate::{Error, Result};
use num::Zero;
use serde::{Deserialize, Serialize};

/// Dense integer matrix, row-major. Entries are `i64`; every matrix this
/// toolkit builds has entries in `{-1, 0, 1}` or close to it, and exact
/// minor determinants are taken in `i128`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MatrixRepr", into = "MatrixRepr")]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    rows: Vec<Vec<i64>>,
}

impl TryFrom<MatrixRepr> for IntMatrix {
    type Error = Error;
    fn try_from(r: MatrixRepr) -> Result<Self> {
        IntMatrix::from_rows(r.rows)
    }
}

impl From<IntMatrix> for MatrixRepr {
    fn from(m: IntMatrix) -> Self {
        MatrixRepr { rows: (0..m.rows).map(|i| m.row(i).to_vec()).collect() }
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|&x| x == 0 || x == 1)
    }

    /// Matrix-vector product over `i64` with overflow checks.
    pub fn mul_vec(&self, x: &[i64]) -> Vec<i64> {
        assert_eq!(x.len(), self.cols, "mul_vec: length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .map(|(&a, &b)| a.checked_mul(b).expect("mul_vec overflow"))
                    .fold(0i64, |acc, t| acc.checked_add(t).expect("mul_vec overflow"))
            })
            .collect()
    }

    /// Apply to a rational point: `self * p`.
    pub fn mul_point(&self, p: &[Rat]) -> Vec<Rat> {
        assert_eq!(p.len(), self.cols, "mul_point: length mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for (&a, b) in self.row(i).iter().zip(p) {
                    if a != 0 && !b.is_zero() {
                        acc += rat(a) * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn rat_rows(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|&x| rat(x)).collect()).collect()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.rat_rows())
    }

    /// Basis of the rational right kernel `{x : M x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        linalg::nullspace(&self.rat_rows())
    }

    /// Exact determinant of the square submatrix on `rows x cols`,
    /// by fraction-free Bareiss elimination in `i128`.
    pub fn minor_det(&self, rows: &[usize], cols: &[usize]) -> i128 {
        let k = rows.len();
        assert_eq!(k, cols.len(), "minor_det: not square");
        if k == 0 {
            return 1;
        }
        let mut m: Vec<Vec<i128>> = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j) as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for p in 0..k - 1 {
            if m[p][p] == 0 {
                let Some(s) = (p + 1..k).find(|&i| m[i][p] != 0) else {
                    return 0;
                };
                m.swap(p, s);
                sign = -sign;
            }
            for i in p + 1..k {
                for j in p + 1..k {
                    m[i][j] = (m[p][p] * m[i][j] - m[i][p] * m[p][j]) / prev;
                }
                m[i][p] = 0;
            }
            prev = m[p][p];
        }
        sign * m[k - 1][k - 1]
    }

    pub fn det(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "det: not square");
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor_det(&idx, &idx)
    }
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}
