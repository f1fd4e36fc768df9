//! Exact linear programming: a dense two-phase simplex over the rationals
//! with Bland's rule, so every run terminates and every answer is exact.

use super::Rat;
use num::{One, Signed, Zero};

/// Comparison sense of one linear constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cmp {
    Eq,
    Ge,
    /// Strict `>`; handled by maximizing a shared slack bounded by 1.
    Gt,
}

/// One constraint `coeffs . x  (cmp)  rhs` over free variables.
#[derive(Clone, Debug)]
pub struct LinCon {
    pub coeffs: Vec<Rat>,
    pub cmp: Cmp,
    pub rhs: Rat,
}

pub(crate) enum Lp {
    Infeasible,
    Unbounded,
    Optimal { value: Rat, solution: Vec<Rat> },
}

/// Maximize `c . x` subject to `A x = b`, `x >= 0`.
///
/// `a` is row-major with `m` rows; `b` has length `m`; `c` has length `n`.
/// Rows with negative right-hand side are negated internally, so callers
/// need not normalize.
pub(crate) fn simplex_max(a: &[Vec<Rat>], b: &[Rat], c: &[Rat]) -> Lp {
    let m = a.len();
    let n = c.len();
    debug_assert!(a.iter().all(|r| r.len() == n));
    debug_assert_eq!(b.len(), m);

    // Tableau columns: 0..n real variables, n..n+m artificials.
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rat> = Vec::with_capacity(n + m);
        let neg = b[i].is_negative();
        for x in &a[i] {
            row.push(if neg { -x.clone() } else { x.clone() });
        }
        row.extend((0..m).map(|k| if k == i { Rat::one() } else { Rat::zero() }));
        rows.push(row);
        rhs.push(if neg { -b[i].clone() } else { b[i].clone() });
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    // Phase 1: maximize -(sum of artificials). With artificials basic, the
    // reduced cost of real column j is the column sum; the objective value
    // starts at -(sum of rhs).
    let mut obj: Vec<Rat> = (0..n + m)
        .map(|j| {
            if j < n {
                let mut s = Rat::zero();
                for row in &rows {
                    if !row[j].is_zero() {
                        s += &row[j];
                    }
                }
                s
            } else {
                Rat::zero()
            }
        })
        .collect();
    let mut value: Rat = -rhs.iter().fold(Rat::zero(), |acc, x| acc + x);

    match run(&mut rows, &mut rhs, &mut basis, &mut obj, &mut value) {
        RunEnd::Optimal => {}
        RunEnd::Unbounded => unreachable!("phase-1 objective is bounded above by zero"),
    }
    if value.is_negative() {
        return Lp::Infeasible;
    }

    // Drive basic artificials out; rows that cannot pivot are redundant.
    let mut i = 0;
    while i < rows.len() {
        if basis[i] >= n {
            debug_assert!(rhs[i].is_zero(), "artificial basic at nonzero level at phase-1 optimum");
            if let Some(j) = (0..n).find(|&j| !rows[i][j].is_zero()) {
                pivot_split(&mut rows, &mut rhs, &mut basis, &mut obj, &mut value, i, j);
            } else {
                rows.swap_remove(i);
                rhs.swap_remove(i);
                basis.swap_remove(i);
                continue;
            }
        }
        i += 1;
    }

    // Phase 2: drop artificial columns and rebuild reduced costs for c.
    for row in &mut rows {
        row.truncate(n);
    }
    obj.truncate(n);
    let mut value = Rat::zero();
    for (i, &bi) in basis.iter().enumerate() {
        if !c[bi].is_zero() {
            value += &c[bi] * &rhs[i];
        }
    }
    for j in 0..n {
        let mut z = Rat::zero();
        for (i, &bi) in basis.iter().enumerate() {
            if !c[bi].is_zero() && !rows[i][j].is_zero() {
                z += &c[bi] * &rows[i][j];
            }
        }
        obj[j] = &c[j] - &z;
    }
    debug_assert!(basis.iter().all(|&bi| obj[bi].is_zero()), "basic reduced costs must vanish");

    match run(&mut rows, &mut rhs, &mut basis, &mut obj, &mut value) {
        RunEnd::Unbounded => Lp::Unbounded,
        RunEnd::Optimal => {
            let mut x = vec![Rat::zero(); n];
            for (i, &bi) in basis.iter().enumerate() {
                x[bi] = rhs[i].clone();
            }
            Lp::Optimal { value, solution: x }
        }
    }
}

enum RunEnd {
    Optimal,
    Unbounded,
}

/// Bland's rule main loop: enter the lowest-index improving column, leave by
/// minimum ratio with lowest basis index on ties. Anti-cycling, hence finite.
fn run(
    rows: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    obj: &mut [Rat],
    value: &mut Rat,
) -> RunEnd {
    loop {
        let Some(enter) = obj.iter().position(|rc| rc.is_positive()) else {
            return RunEnd::Optimal;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for (i, row) in rows.iter().enumerate() {
            if row[enter].is_positive() {
                let ratio = &rhs[i] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            return RunEnd::Unbounded;
        };
        pivot_split(rows, rhs, basis, obj, value, r, enter);
    }
}

fn pivot_split(
    rows: &mut [Vec<Rat>],
    rhs: &mut [Rat],
    basis: &mut [usize],
    obj: &mut [Rat],
    value: &mut Rat,
    r: usize,
    c: usize,
) {
    let piv = rows[r][c].clone();
    debug_assert!(!piv.is_zero());
    if !piv.is_one() {
        for x in rows[r].iter_mut() {
            if !x.is_zero() {
                *x /= &piv;
            }
        }
        rhs[r] /= &piv;
    }
    let (pr, prhs) = (rows[r].clone(), rhs[r].clone());
    for i in 0..rows.len() {
        if i == r || rows[i][c].is_zero() {
            continue;
        }
        let f = rows[i][c].clone();
        for (x, y) in rows[i].iter_mut().zip(&pr) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        debug_assert!(rows[i][c].is_zero());
        rhs[i] -= &f * &prhs;
    }
    if !obj[c].is_zero() {
        // pr[c] is 1, so the sweep itself clears the entering column
        let f = obj[c].clone();
        *value += &f * &prhs;
        for (x, y) in obj.iter_mut().zip(&pr) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
        debug_assert!(obj[c].is_zero(), "entering reduced cost must clear");
    }
    basis[r] = c;
}

/// Decide feasibility of a system of linear constraints over free variables
/// and return one witness point if the system is satisfiable.
///
/// Strict constraints are honored exactly: a shared gap variable `eps`,
/// capped at 1, is added to every `Gt` row and maximized; the system is
/// declared feasible only when the maximum is positive.
pub fn lp_feasible(dim: usize, cons: &[LinCon]) -> Option<Vec<Rat>> {
    for con in cons {
        assert_eq!(con.coeffs.len(), dim, "lp_feasible: constraint arity mismatch");
    }
    let n_strict = cons.iter().filter(|c| c.cmp == Cmp::Gt).count();
    let n_slack = cons.iter().filter(|c| c.cmp != Cmp::Eq).count();
    // Columns: dim positives, dim negatives, slacks, then (eps, eps cap slack).
    let eps_col = 2 * dim + n_slack;
    let ncols = eps_col + if n_strict > 0 { 2 } else { 0 };

    let mut a: Vec<Vec<Rat>> = Vec::with_capacity(cons.len() + 1);
    let mut b: Vec<Rat> = Vec::with_capacity(cons.len() + 1);
    let mut slack_at = 0;
    for con in cons {
        let mut row = vec![Rat::zero(); ncols];
        for (j, x) in con.coeffs.iter().enumerate() {
            row[j] = x.clone();
            row[dim + j] = -x.clone();
        }
        match con.cmp {
            Cmp::Eq => {}
            Cmp::Ge => {
                row[2 * dim + slack_at] = -Rat::one();
                slack_at += 1;
            }
            Cmp::Gt => {
                row[2 * dim + slack_at] = -Rat::one();
                slack_at += 1;
                row[eps_col] = -Rat::one();
            }
        }
        a.push(row);
        b.push(con.rhs.clone());
    }
    let mut c = vec![Rat::zero(); ncols];
    if n_strict > 0 {
        let mut cap = vec![Rat::zero(); ncols];
        cap[eps_col] = Rat::one();
        cap[eps_col + 1] = Rat::one();
        a.push(cap);
        b.push(Rat::one());
        c[eps_col] = Rat::one();
    }

    match simplex_max(&a, &b, &c) {
        Lp::Infeasible => None,
        Lp::Unbounded => unreachable!("objective is 0 or eps <= 1"),
        Lp::Optimal { value, solution } => {
            if n_strict > 0 && !value.is_positive() {
                return None;
            }
            Some((0..dim).map(|j| &solution[j] - &solution[dim + j]).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, rat_vec};

    fn con(coeffs: &[i64], cmp: Cmp, rhs: i64) -> LinCon {
        LinCon { coeffs: rat_vec(coeffs), cmp, rhs: rat(rhs) }
    }

    #[test]
    fn simplex_solves_a_textbook_max() {
        // max 3x + 2y st x + y <= 4, x + 3y <= 6  =>  x=4, y=0, value 12
        let a = vec![rat_vec(&[1, 1, 1, 0]), rat_vec(&[1, 3, 0, 1])];
        let b = vec![rat(4), rat(6)];
        let c = rat_vec(&[3, 2, 0, 0]);
        match simplex_max(&a, &b, &c) {
            Lp::Optimal { value, solution } => {
                assert_eq!(value, rat(12));
                assert_eq!(solution[0], rat(4));
                assert_eq!(solution[1], rat(0));
            }
            _ => panic!("expected optimum"),
        }
    }

    #[test]
    fn simplex_detects_infeasible_and_unbounded() {
        // x = -1, x >= 0 is infeasible
        let a = vec![rat_vec(&[1])];
        match simplex_max(&a, &[rat(-1)], &rat_vec(&[0])) {
            Lp::Infeasible => {}
            _ => panic!("expected infeasible"),
        }
        // max x st 0x = 0 is unbounded
        let a = vec![rat_vec(&[0])];
        match simplex_max(&a, &[rat(0)], &rat_vec(&[1])) {
            Lp::Unbounded => {}
            _ => panic!("expected unbounded"),
        }
    }

    #[test]
    fn feasibility_is_order_independent() {
        // a normal-cone margin system (satisfied by w = (0,2,3,1)) that
        // once returned a wrong infeasible under a particular row order
        let rows: Vec<[i64; 4]> = vec![
            [-1, 0, 0, 1],
            [0, 1, 0, -1],
            [0, 0, 1, -1],
            [0, 1, 0, -1],
            [-1, 1, 0, 0],
            [0, 0, 1, -1],
            [-1, 0, 1, 0],
            [0, 0, 1, -1],
            [0, -1, 1, 0],
        ];
        for rot in 0..rows.len() {
            let mut perm = rows.clone();
            perm.rotate_left(rot);
            let cons: Vec<LinCon> = perm.iter().map(|r| con(r, Cmp::Ge, 1)).collect();
            let w = lp_feasible(4, &cons).expect("system is satisfiable");
            for c in &cons {
                let lhs: Rat = c.coeffs.iter().zip(&w).map(|(a, x)| a * x).sum();
                assert!(lhs >= c.rhs);
            }
        }
    }

    #[test]
    fn feasibility_with_strict_constraints() {
        // x > 0, x < 1 is satisfiable
        let x = lp_feasible(1, &[con(&[1], Cmp::Gt, 0), con(&[-1], Cmp::Gt, -1)]).expect("open interval");
        assert!(x[0].is_positive() && x[0] < rat(1));
        // x > 0, x <= 0 is not
        assert!(lp_feasible(1, &[con(&[1], Cmp::Gt, 0), con(&[-1], Cmp::Ge, 0)]).is_none());
        // x >= 3, x <= 3 pins x = 3 (free variable can be negative too)
        let x = lp_feasible(1, &[con(&[1], Cmp::Ge, 3), con(&[-1], Cmp::Ge, -3)]).unwrap();
        assert_eq!(x[0], rat(3));
        let x = lp_feasible(1, &[con(&[1], Cmp::Eq, -5)]).unwrap();
        assert_eq!(x[0], rat(-5));
    }
}
