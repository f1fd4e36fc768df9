//! Bounded enumeration of the primitive kernel binomials of an integer
//! matrix: per total degree, monomials are bucketed by their image, and
//! disjoint-support pairs inside a bucket are the kernel elements of that
//! degree. The companion Buchberger machinery cross-checks the output.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::exactgeom::IntMatrix;
use crate::{Error, Result};

use super::binomial::{divides, Binomial};
use super::ideal::is_homogeneous;

/// Output of [`graver`]. `complete_certified` is true when no primitive
/// element appeared at the bound itself; a primitive at the top degree
/// means higher-degree primitives cannot be ruled out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraverBasis {
    pub elements: Vec<Binomial>,
    pub degree_bound: u32,
    pub complete_certified: bool,
}

impl GraverBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Element counts keyed by degree, ascending.
    pub fn degree_census(&self) -> Vec<(u32, usize)> {
        degree_census(&self.elements)
    }
}

/// Element counts keyed by degree, ascending.
pub fn degree_census(elements: &[Binomial]) -> Vec<(u32, usize)> {
    let mut census: Vec<(u32, usize)> = Vec::new();
    for b in elements {
        let d = b.degree_plus();
        match census.iter_mut().find(|(deg, _)| *deg == d) {
            Some((_, c)) => *c += 1,
            None => census.push((d, 1)),
        }
    }
    census.sort_unstable();
    census
}

const SUPPORT_MASK_GUARD: usize = 128;

/// All primitive kernel binomials of `m` up to the degree bound.
///
/// A kernel binomial is primitive when no other nonzero kernel binomial
/// divides it componentwise on both sides. The matrix must admit a
/// homogeneity witness; that witness forces every kernel element to have
/// equal degree on both sides, which is what makes the per-degree sweep
/// exhaustive: an element of degree `d` is exactly a disjoint-support
/// pair of degree-`d` monomials with equal image.
///
/// Primitivity is tested against primitives of strictly smaller degree
/// only. This is exact: a dominating kernel element can be shrunk to a
/// dominating primitive one, and under the witness a strict dominator
/// always has strictly smaller degree (equal degrees force equality).
pub fn graver(m: &IntMatrix, degree_bound: u32) -> Result<GraverBasis> {
    if degree_bound == 0 {
        return Err(Error::InvalidArgument("degree bound must be at least 1".into()));
    }
    if m.ncols() > SUPPORT_MASK_GUARD {
        return Err(Error::GuardExceeded(format!(
            "graver enumeration supports at most {SUPPORT_MASK_GUARD} columns, got {}",
            m.ncols()
        )));
    }
    if is_homogeneous(m).is_none() {
        return Err(Error::Inhomogeneous);
    }

    let cols = m.ncols();
    let mut primitives: Vec<Binomial> = Vec::new();
    let mut found_at_bound = false;

    for d in 1..=degree_bound {
        // image -> [(exponents, support mask)]
        let mut buckets: HashMap<Vec<i64>, Vec<(Vec<u32>, u128)>> = HashMap::new();
        let mut mono = vec![0u32; cols];
        enumerate_degree(m, d, 0, d, &mut mono, &mut buckets);

        let mut found_here: Vec<Binomial> = Vec::new();
        for group in buckets.values() {
            for (i, (a, ma)) in group.iter().enumerate() {
                for (b, mb) in &group[i + 1..] {
                    if ma & mb != 0 {
                        continue;
                    }
                    if primitives.iter().any(|p| dominates(p, a, b)) {
                        continue;
                    }
                    found_here.push(Binomial::new(a.clone(), b.clone())
                        .expect("disjoint same-image pair")
                        .canonical());
                }
            }
        }
        if d == degree_bound && !found_here.is_empty() {
            found_at_bound = true;
        }
        primitives.append(&mut found_here);
    }

    primitives.sort_unstable_by(|x, y| {
        (x.degree_plus(), x.plus(), x.minus()).cmp(&(y.degree_plus(), y.plus(), y.minus()))
    });
    Ok(GraverBasis {
        elements: primitives,
        degree_bound,
        complete_certified: !found_at_bound,
    })
}

/// Does `p` (in either orientation) divide the kernel element `(a, b)`
/// componentwise on both sides?
fn dominates(p: &Binomial, a: &[u32], b: &[u32]) -> bool {
    (divides(p.plus(), a) && divides(p.minus(), b))
        || (divides(p.minus(), a) && divides(p.plus(), b))
}

fn enumerate_degree(
    m: &IntMatrix,
    total: u32,
    col: usize,
    left: u32,
    mono: &mut Vec<u32>,
    buckets: &mut HashMap<Vec<i64>, Vec<(Vec<u32>, u128)>>,
) {
    if col + 1 == m.ncols() {
        mono[col] = left;
        record(m, total, mono, buckets);
        mono[col] = 0;
        return;
    }
    if m.ncols() == 0 {
        return;
    }
    for e in 0..=left {
        mono[col] = e;
        enumerate_degree(m, total, col + 1, left - e, mono, buckets);
    }
    mono[col] = 0;
}

fn record(
    m: &IntMatrix,
    _total: u32,
    mono: &[u32],
    buckets: &mut HashMap<Vec<i64>, Vec<(Vec<u32>, u128)>>,
) {
    let signed: Vec<i64> = mono.iter().map(|&e| i64::from(e)).collect();
    let image = m.mul_vec(&signed);
    let mut mask = 0u128;
    for (j, &e) in mono.iter().enumerate() {
        if e > 0 {
            mask |= 1 << j;
        }
    }
    buckets.entry(image).or_default().push((mono.to_vec(), mask));
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{pair_code, path_code, star_code};
    use crate::toric::ideal::{claimed_ugb_pair, claimed_ugb_star, code_matrix};
    use std::collections::BTreeSet;

    fn as_canonical_set(v: &[Binomial]) -> BTreeSet<Binomial> {
        v.iter().map(|b| b.clone().canonical()).collect()
    }

    #[test]
    fn smallest_star_and_pair_cases() {
        let g = graver(&code_matrix(&star_code(2).unwrap()), 4).unwrap();
        assert!(g.complete_certified);
        assert_eq!(as_canonical_set(&g.elements), as_canonical_set(&claimed_ugb_star(2)));

        let g = graver(&code_matrix(&pair_code(1).unwrap()), 4).unwrap();
        assert!(g.complete_certified);
        assert_eq!(as_canonical_set(&g.elements), as_canonical_set(&claimed_ugb_pair(1)));
    }

    #[test]
    fn star_family_matches_the_claimed_set() {
        for n in 2..=4 {
            let g = graver(&code_matrix(&star_code(n).unwrap()), 6).unwrap();
            assert!(g.complete_certified, "n={n}");
            assert_eq!(
                as_canonical_set(&g.elements),
                as_canonical_set(&claimed_ugb_star(n)),
                "n={n}"
            );
        }
    }

    #[test]
    fn pair_family_matches_the_claimed_set() {
        for n in 1..=3 {
            let g = graver(&code_matrix(&pair_code(n).unwrap()), 8).unwrap();
            assert!(g.complete_certified, "n={n}");
            assert_eq!(
                as_canonical_set(&g.elements),
                as_canonical_set(&claimed_ugb_pair(n)),
                "n={n}"
            );
        }
    }

    #[test]
    fn kernel_membership_and_primitivity_hold() {
        let m = code_matrix(&pair_code(2).unwrap());
        let g = graver(&m, 8).unwrap();
        for b in &g.elements {
            assert!(m.mul_vec(&b.signed()).iter().all(|&x| x == 0));
            assert!(b.is_support_disjoint());
        }
        // pairwise non-domination, both orientations
        for (i, p) in g.elements.iter().enumerate() {
            for (j, q) in g.elements.iter().enumerate() {
                if i != j {
                    assert!(!dominates(p, q.plus(), q.minus()), "{p:?} dominates {q:?}");
                }
            }
        }
    }

    #[test]
    fn bound_certification_flag() {
        let m = code_matrix(&star_code(2).unwrap());
        // the single primitive element has degree 2, so bound 2 cannot certify
        let g = graver(&m, 2).unwrap();
        assert_eq!(g.len(), 1);
        assert!(!g.complete_certified);
        let g = graver(&m, 3).unwrap();
        assert!(g.complete_certified);
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        let m = code_matrix(&path_code(&[0]).unwrap());
        let g = graver(&m, 5).unwrap();
        assert!(g.is_empty());
        assert!(g.complete_certified);
    }

    #[test]
    fn inhomogeneous_matrices_are_refused() {
        let m = IntMatrix::from_rows(vec![vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
        assert!(matches!(graver(&m, 3), Err(Error::Inhomogeneous)));
    }

    #[test]
    fn census_shape() {
        let g = graver(&code_matrix(&pair_code(2).unwrap()), 8).unwrap();
        assert_eq!(g.degree_census(), vec![(2, 2), (3, 1)]);
    }
}
