//! Code matrices and the structural facts about them the rest of the toric
//! machinery relies on: homogeneity witnesses, Lawrence liftings, interval
//! structure, total unimodularity, and fiber enumeration.

use itertools::Itertools;

use crate::codes::NeuralCode;
use crate::exactgeom::{linalg, IntMatrix, Rat};
use crate::{Error, Result};

use super::binomial::Binomial;

/// The 0/1 matrix of a code: one row per neuron, one column per nonzero
/// word in the code's stored order.
pub fn code_matrix(c: &NeuralCode) -> IntMatrix {
    let cols: Vec<&Vec<u8>> = c.nonzero_words().collect();
    let mut m = IntMatrix::zeros(c.n_neurons(), cols.len());
    for (j, w) in cols.iter().enumerate() {
        for (i, &b) in w.iter().enumerate() {
            if b == 1 {
                m.set(i, j, 1);
            }
        }
    }
    m
}

/// A homogeneity witness: rational `w` with `w . column = 1` for every
/// column. Its existence makes the toric ideal graded by total degree
/// tracking the image, which the fiber and Graver enumerations require.
pub fn is_homogeneous(m: &IntMatrix) -> Option<Vec<Rat>> {
    let cols_as_rows = m.transpose().rat_rows();
    let ones = vec![Rat::from_integer(1.into()); m.ncols()];
    linalg::solve(&cols_as_rows, &ones)
}

/// The Lawrence lifting `[[M, 0], [I, I]]`.
pub fn lawrence(m: &IntMatrix) -> IntMatrix {
    let (r, c) = (m.nrows(), m.ncols());
    let mut out = IntMatrix::zeros(r + c, 2 * c);
    for i in 0..r {
        for j in 0..c {
            out.set(i, j, m.get(i, j));
        }
    }
    for j in 0..c {
        out.set(r + j, j, 1);
        out.set(r + j, c + j, 1);
    }
    out
}

/// Is `m` syntactically a Lawrence lifting: an even number `2k` of columns,
/// the last `k` rows equal to `[I_k, I_k]`, and the top-right block zero?
pub fn is_lawrence_shaped(m: &IntMatrix) -> bool {
    let c = m.ncols();
    if c % 2 != 0 {
        return false;
    }
    let k = c / 2;
    if m.nrows() < k {
        return false;
    }
    let top = m.nrows() - k;
    for i in 0..top {
        for j in k..c {
            if m.get(i, j) != 0 {
                return false;
            }
        }
    }
    for i in 0..k {
        for j in 0..c {
            let want = i64::from(j == i || j == k + i);
            if m.get(top + i, j) != want {
                return false;
            }
        }
    }
    true
}

/// Subtract rows `2..=n` from the last row of an `(n+1) x 2n` matrix.
/// This unimodular row operation preserves the kernel, hence the toric
/// ideal; on the star family's matrix it lands exactly on the Lawrence
/// lifting of a row of ones.
pub fn row_transform_star(m: &IntMatrix) -> Result<IntMatrix> {
    let r = m.nrows();
    if r < 2 || m.ncols() != 2 * (r - 1) {
        return Err(Error::DimensionMismatch(format!(
            "expected an (n+1) x 2n matrix, got {} x {}",
            r,
            m.ncols()
        )));
    }
    let mut rows: Vec<Vec<i64>> = (0..r).map(|i| m.row(i).to_vec()).collect();
    for i in 1..r - 1 {
        for j in 0..m.ncols() {
            rows[r - 1][j] -= rows[i][j];
        }
    }
    IntMatrix::from_rows(rows)
}

/// Does every row of this 0/1 matrix have its ones in one contiguous block
/// under the given column order? Non-binary matrices are rejected.
pub fn has_consecutive_ones(m: &IntMatrix) -> Result<bool> {
    if !m.is_binary() {
        return Err(Error::InvalidArgument("consecutive-ones test needs a 0/1 matrix".into()));
    }
    for i in 0..m.nrows() {
        let row = m.row(i);
        let first = row.iter().position(|&x| x == 1);
        let last = row.iter().rposition(|&x| x == 1);
        if let (Some(a), Some(b)) = (first, last) {
            if row[a..=b].iter().any(|&x| x == 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

const TU_BRUTE_COL_GUARD: usize = 12;

/// Total unimodularity: every square minor is -1, 0, or 1.
///
/// An interval (consecutive-ones) 0/1 matrix is accepted immediately; all
/// other matrices with at most 12 columns are checked by brute minor
/// enumeration, and wider ones are refused with a guard error.
pub fn is_totally_unimodular(m: &IntMatrix) -> Result<bool> {
    if m.rat_rows().iter().flatten().any(|x| {
        x != &Rat::from_integer(0.into())
            && x != &Rat::from_integer(1.into())
            && x != &Rat::from_integer((-1).into())
    }) {
        return Ok(false);
    }
    if m.is_binary() && has_consecutive_ones(m)? {
        return Ok(true);
    }
    if m.ncols() > TU_BRUTE_COL_GUARD {
        return Err(Error::GuardExceeded(format!(
            "brute minor check supports at most {TU_BRUTE_COL_GUARD} columns, got {}",
            m.ncols()
        )));
    }
    let max_k = m.nrows().min(m.ncols());
    for k in 1..=max_k {
        for rows in (0..m.nrows()).combinations(k) {
            for cols in (0..m.ncols()).combinations(k) {
                let d = m.minor_det(&rows, &cols);
                if d < -1 || d > 1 {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// All nonnegative integer solutions of `M a = b`, in ascending
/// lexicographic order of the exponent vector.
///
/// Requires a nonnegative matrix with a homogeneity witness; those two
/// facts bound every solution's support and total degree, making the
/// enumeration finite. Matrices without a witness are refused.
pub fn fiber(m: &IntMatrix, b: &[i64]) -> Result<Vec<Vec<u32>>> {
    if b.len() != m.nrows() {
        return Err(Error::DimensionMismatch("degree vector arity differs from row count".into()));
    }
    if (0..m.nrows()).any(|i| m.row(i).iter().any(|&x| x < 0)) {
        return Err(Error::InvalidArgument("fiber enumeration needs a nonnegative matrix".into()));
    }
    if is_homogeneous(m).is_none() {
        return Err(Error::Inhomogeneous);
    }
    if b.iter().any(|&x| x < 0) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut partial = vec![0u32; m.ncols()];
    let mut remaining: Vec<i64> = b.to_vec();
    fiber_dfs(m, 0, &mut partial, &mut remaining, &mut out);
    Ok(out)
}

fn fiber_dfs(
    m: &IntMatrix,
    col: usize,
    partial: &mut Vec<u32>,
    remaining: &mut Vec<i64>,
    out: &mut Vec<Vec<u32>>,
) {
    if col == m.ncols() {
        if remaining.iter().all(|&x| x == 0) {
            out.push(partial.clone());
        }
        return;
    }
    let column = m.col(col);
    let mut cap = i64::MAX;
    for (i, &ci) in column.iter().enumerate() {
        if ci > 0 {
            cap = cap.min(remaining[i] / ci);
        }
    }
    debug_assert!(cap < i64::MAX, "homogeneity witness forbids zero columns");
    for a in 0..=cap {
        if a > 0 {
            for (i, &ci) in column.iter().enumerate() {
                remaining[i] -= ci;
            }
            partial[col] = a as u32;
        }
        fiber_dfs(m, col + 1, partial, remaining, out);
    }
    for (i, &ci) in column.iter().enumerate() {
        remaining[i] += ci * cap;
    }
    partial[col] = 0;
}

/// Is the toric ideal of `m` the zero ideal, i.e. is the kernel trivial?
pub fn ideal_is_zero(m: &IntMatrix) -> bool {
    m.rank() == m.ncols()
}

/// The claimed universal basis for the star family on parameter `n`:
/// all `t_i t_{n+j} - t_j t_{n+i}` with `1 <= i < j <= n`, in `2n`
/// variables. Orientation is as written; count is `n(n-1)/2`.
pub fn claimed_ugb_star(n: usize) -> Vec<Binomial> {
    let arity = 2 * n;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut plus = vec![0u32; arity];
            let mut minus = vec![0u32; arity];
            plus[i] += 1;
            plus[n + j] += 1;
            minus[j] += 1;
            minus[n + i] += 1;
            out.push(Binomial::new(plus, minus).expect("disjoint by construction"));
        }
    }
    out
}

/// The claimed universal basis for the pair family on parameter `n`, in
/// `3n + 1` variables: one quadric per chain relating its three zones to
/// the outer-only variable, and one cubic per ordered chain pair.
pub fn claimed_ugb_pair(n: usize) -> Vec<Binomial> {
    let arity = 3 * n + 1;
    let outer = 3 * n;
    let mut out = Vec::new();
    for i in 0..n {
        let mut plus = vec![0u32; arity];
        let mut minus = vec![0u32; arity];
        plus[3 * i] += 1;
        plus[3 * i + 2] += 1;
        minus[3 * i + 1] += 1;
        minus[outer] += 1;
        out.push(Binomial::new(plus, minus).expect("disjoint by construction"));
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut plus = vec![0u32; arity];
            let mut minus = vec![0u32; arity];
            plus[3 * i] += 1;
            plus[3 * i + 2] += 1;
            plus[3 * j + 1] += 1;
            minus[3 * j] += 1;
            minus[3 * j + 2] += 1;
            minus[3 * i + 1] += 1;
            out.push(Binomial::new(plus, minus).expect("disjoint by construction"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{pair_code, star_code};
    use crate::exactgeom::dot;

    #[test]
    fn star_matrix_rows_are_the_described_pattern() {
        let m = code_matrix(&star_code(3).unwrap());
        assert_eq!(m.nrows(), 4);
        assert_eq!(m.ncols(), 6);
        assert_eq!(m.row(0), &[1, 1, 1, 0, 0, 0]);
        assert_eq!(m.row(1), &[1, 0, 0, 1, 0, 0]);
        assert_eq!(m.row(2), &[0, 1, 0, 0, 1, 0]);
        assert_eq!(m.row(3), &[1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn pair_matrix_is_the_block_pattern() {
        let m = code_matrix(&pair_code(1).unwrap());
        assert_eq!(m.nrows(), 3);
        assert_eq!(m.ncols(), 4);
        assert_eq!(m.row(0), &[1, 1, 0, 0]);
        assert_eq!(m.row(1), &[0, 1, 1, 0]);
        assert_eq!(m.row(2), &[1, 1, 1, 1]);
    }

    #[test]
    fn homogeneity_witnesses_exist_for_both_families() {
        for n in 1..=5 {
            let m = code_matrix(&star_code(n).unwrap());
            let w = is_homogeneous(&m).expect("star matrices are homogeneous");
            for j in 0..m.ncols() {
                let col: Vec<Rat> = m.col(j).iter().map(|&x| Rat::from_integer(x.into())).collect();
                assert_eq!(dot(&w, &col), Rat::from_integer(1.into()));
            }
        }
        let block = IntMatrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert!(is_homogeneous(&block).is_none(), "the bare interval block has no witness");
    }

    #[test]
    fn lawrence_and_its_detector() {
        let ones = IntMatrix::from_rows(vec![vec![1, 1, 1]]).unwrap();
        let lam = lawrence(&ones);
        assert_eq!(lam.nrows(), 4);
        assert_eq!(lam.ncols(), 6);
        assert!(is_lawrence_shaped(&lam));
        assert!(!is_lawrence_shaped(&ones));
        assert!(!is_lawrence_shaped(&code_matrix(&star_code(2).unwrap())));
    }

    #[test]
    fn star_row_transform_hits_the_lawrence_form() {
        for n in 1..=5 {
            let m = code_matrix(&star_code(n).unwrap());
            let t = row_transform_star(&m).unwrap();
            let ones = IntMatrix::from_rows(vec![vec![1; n]]).unwrap();
            assert_eq!(t, lawrence(&ones), "transformed star matrix at n={n}");
        }
        assert!(row_transform_star(&IntMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn consecutive_ones_holds_for_pair_matrices_only_in_their_own_order() {
        for n in 1..=6 {
            let m = code_matrix(&pair_code(n).unwrap());
            assert!(has_consecutive_ones(&m).unwrap(), "pair matrix n={n}");
        }
        let gap = IntMatrix::from_rows(vec![vec![1, 0, 1]]).unwrap();
        assert!(!has_consecutive_ones(&gap).unwrap());
        let signed = IntMatrix::from_rows(vec![vec![1, -1]]).unwrap();
        assert!(has_consecutive_ones(&signed).is_err());
    }

    #[test]
    fn total_unimodularity_fast_path_and_brute_force_agree() {
        let m1 = code_matrix(&pair_code(1).unwrap());
        assert!(is_totally_unimodular(&m1).unwrap());
        // A 0/1 matrix that is not TU: the incidence matrix of a triangle.
        let tri = IntMatrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(tri.det(), 2);
        assert!(!is_totally_unimodular(&tri).unwrap());
        // Guard fires beyond 12 columns for matrices without the fast path.
        let wide = IntMatrix::from_rows(vec![(0..13).map(|j| i64::from(j % 2 == 0)).collect()]).unwrap();
        assert!(matches!(is_totally_unimodular(&wide), Err(Error::GuardExceeded(_))));
    }

    #[test]
    fn fiber_of_the_smallest_pair_matrix() {
        let m = code_matrix(&pair_code(1).unwrap());
        let f = fiber(&m, &[1, 1, 2]).unwrap();
        assert_eq!(f, vec![vec![0, 1, 0, 1], vec![1, 0, 1, 0]]);
        assert!(fiber(&m, &[1, 1]).is_err(), "arity mismatch");
        let block = IntMatrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert!(matches!(fiber(&block, &[1, 1]), Err(Error::Inhomogeneous)));
    }

    #[test]
    fn claimed_sets_have_the_right_shape() {
        assert_eq!(claimed_ugb_star(3).len(), 3);
        let u3 = claimed_ugb_star(3);
        assert_eq!(u3[0].plus(), &[1, 0, 0, 0, 1, 0]); // t1 t5
        assert_eq!(u3[0].minus(), &[0, 1, 0, 1, 0, 0]); // t2 t4
        assert_eq!(u3[1].plus(), &[1, 0, 0, 0, 0, 1]); // t1 t6
        assert_eq!(u3[1].minus(), &[0, 0, 1, 1, 0, 0]); // t3 t4
        assert_eq!(u3[2].plus(), &[0, 1, 0, 0, 0, 1]); // t2 t6
        assert_eq!(u3[2].minus(), &[0, 0, 1, 0, 1, 0]); // t3 t5
        assert_eq!(claimed_ugb_pair(1).len(), 1);
        assert_eq!(claimed_ugb_pair(1)[0].plus(), &[1, 0, 1, 0]); // t1 t3
        assert_eq!(claimed_ugb_pair(1)[0].minus(), &[0, 1, 0, 1]); // t2 t4
        assert_eq!(claimed_ugb_pair(2).len(), 3);
        let v2 = claimed_ugb_pair(2);
        assert_eq!(v2[1].plus(), &[0, 0, 0, 1, 0, 1, 0]); // t4 t6
        assert_eq!(v2[1].minus(), &[0, 0, 0, 0, 1, 0, 1]); // t5 t7
        assert_eq!(v2[2].plus(), &[1, 0, 1, 0, 1, 0, 0]); // t1 t3 t5
        assert_eq!(v2[2].minus(), &[0, 1, 0, 1, 0, 1, 0]); // t2 t4 t6
        // kernel membership for both families
        for n in 1..=4 {
            let ms = code_matrix(&star_code(n).unwrap());
            for b in claimed_ugb_star(n) {
                assert!(ms.mul_vec(&b.signed()).iter().all(|&x| x == 0));
            }
            let mp = code_matrix(&pair_code(n).unwrap());
            for b in claimed_ugb_pair(n) {
                assert!(mp.mul_vec(&b.signed()).iter().all(|&x| x == 0));
            }
        }
    }

    #[test]
    fn zero_ideal_detection() {
        // one isolated circle: triangular matrix, full column rank
        let m = code_matrix(&crate::codes::path_code(&[0]).unwrap());
        assert!(ideal_is_zero(&m));
        assert!(!ideal_is_zero(&code_matrix(&star_code(2).unwrap())));
    }
}
