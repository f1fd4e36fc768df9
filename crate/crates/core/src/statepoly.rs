//! Newton polytopes of binomial sets, state polytopes by two independent
//! constructions, and the explicit polytopes they are compared against:
//! permutohedra, the nested-family sum `qbar`, and stellohedra.
//!
//! The two state-polytope constructions are deliberately unlike each
//! other. One walks the vertices of the Newton polytope of a universal
//! basis and sums exponent vectors of initial-ideal monomials. The other
//! never looks at initial ideals at all: it sums fiber polytopes of the
//! matrix degrees occurring in the basis. Agreement of their normal fans
//! is a strong end-to-end check on the whole toric stack.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactgeom::{
    self, argmax_vertices, format_rat, parse_rat, rat, rat_vec, Halfspace, Int, IntMatrix,
    LatticePolytope, Rat,
};
pub use crate::exactgeom::{
    apply_affine, face_lattice, halfspaces_describe, hull_halfspaces, is_simple,
    lattice_isomorphic, minkowski, normal_cone_weight, project_coords, FaceLattice,
};
use crate::toric::{fiber, is_homogeneous, Binomial, MonomialIdeal};
use crate::{Error, Result};

/// The Newton polytope of `sum_i (t^{plus_i} - t^{minus_i})`-style data:
/// the Minkowski sum of the segments `[plus_i, minus_i]`.
pub fn newton(els: &[Binomial]) -> Result<LatticePolytope> {
    minkowski(&segments(els)?)
}

/// Newton polytope plus, for every vertex, an integer weight whose
/// maximum over the polytope is attained at that vertex alone. Weights
/// come from the Minkowski sweep when it runs, and from per-vertex
/// normal-cone programs otherwise; either way they are strict
/// certificates, aligned with the sorted vertex list.
pub(crate) fn newton_with_weights(els: &[Binomial]) -> Result<(LatticePolytope, Vec<Vec<Int>>)> {
    let (p, w) = exactgeom::minkowski_with_weights(&segments(els)?)?;
    let weights = match w {
        Some(w) => w,
        None => p
            .vertices
            .iter()
            .map(|v| normal_cone_weight(&p, v))
            .collect::<Result<Vec<Vec<Int>>>>()?,
    };
    Ok((p, weights))
}

fn segments(els: &[Binomial]) -> Result<Vec<LatticePolytope>> {
    if els.is_empty() {
        return Err(Error::InvalidArgument("Newton polytope of an empty set".into()));
    }
    let arity = els[0].arity();
    els.iter()
        .map(|b| {
            if b.arity() != arity {
                return Err(Error::DimensionMismatch("mixed arities in binomial set".into()));
            }
            LatticePolytope::from_points(vec![expo_rat(b.plus()), expo_rat(b.minus())])
        })
        .collect()
}

fn expo_rat(e: &[u32]) -> Vec<Rat> {
    e.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

fn int_weight(w: &[Int], e: &[u32]) -> Int {
    let mut acc = Int::zero();
    for (wi, &ei) in w.iter().zip(e) {
        if ei > 0 {
            acc += wi * Int::from(ei);
        }
    }
    acc
}

/// A polytope vertex with an integer weight selecting it uniquely.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "VertexWeightRepr", into = "VertexWeightRepr")]
pub struct VertexWeight {
    pub vertex: Vec<Rat>,
    pub weight: Vec<Int>,
}

#[derive(Serialize, Deserialize)]
struct VertexWeightRepr {
    vertex: Vec<String>,
    weight: Vec<String>,
}

impl From<VertexWeight> for VertexWeightRepr {
    fn from(v: VertexWeight) -> Self {
        VertexWeightRepr {
            vertex: v.vertex.iter().map(format_rat).collect(),
            weight: v.weight.iter().map(|x| x.to_string()).collect(),
        }
    }
}

impl TryFrom<VertexWeightRepr> for VertexWeight {
    type Error = Error;

    fn try_from(r: VertexWeightRepr) -> Result<Self> {
        let vertex = r.vertex.iter().map(|s| parse_rat(s)).collect::<Result<Vec<Rat>>>()?;
        let weight = r
            .weight
            .iter()
            .map(|s| s.parse::<Int>().map_err(|_| Error::Parse(format!("bad integer `{s}`"))))
            .collect::<std::result::Result<Vec<Int>, Error>>()?;
        Ok(VertexWeight { vertex, weight })
    }
}

/// A state polytope together with one certified cell per vertex: the
/// selecting weight and the initial ideal it induces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatePolytopeResult {
    pub polytope: LatticePolytope,
    pub cells: Vec<(VertexWeight, MonomialIdeal)>,
}

fn validate_kernel_input(m: &IntMatrix, basis: &[Binomial]) -> Result<()> {
    if is_homogeneous(m).is_none() {
        return Err(Error::Inhomogeneous);
    }
    for b in basis {
        if b.arity() != m.ncols() {
            return Err(Error::DimensionMismatch(
                "binomial arity differs from matrix column count".into(),
            ));
        }
        if m.mul_vec(&b.signed()).iter().any(|&x| x != 0) {
            return Err(Error::InvalidArgument("binomial is not a kernel element".into()));
        }
        debug_assert_eq!(b.degree_plus(), b.degree_minus());
    }
    Ok(())
}

/// State polytope from a universal basis, one cell per initial ideal.
///
/// Every vertex weight of the Newton polytope of the basis orients each
/// element outright (a tie would contradict the weight being interior to
/// a normal cone, so it is reported as a cross-check failure). The
/// leading terms generate the initial ideal, whose exponent vectors up
/// to the basis degree are summed into one point per ideal; the hull of
/// those points is returned after checking the correspondence between
/// vertices and ideals is a bijection certified by the weights.
pub fn state_polytope_alg35(m: &IntMatrix, basis: &[Binomial]) -> Result<StatePolytopeResult> {
    validate_kernel_input(m, basis)?;
    let cols = m.ncols();
    if basis.is_empty() {
        let origin = vec![Rat::zero(); cols];
        let polytope = LatticePolytope::from_points(vec![origin.clone()])?;
        let cell = (
            VertexWeight { vertex: origin, weight: vec![Int::zero(); cols] },
            MonomialIdeal::new(Vec::<Vec<u32>>::new()),
        );
        return Ok(StatePolytopeResult { polytope, cells: vec![cell] });
    }
    let max_deg = basis.iter().map(Binomial::degree_plus).max().unwrap();
    let (newt, weights) = newton_with_weights(basis)?;
    let mut by_ideal: BTreeMap<MonomialIdeal, Vec<Int>> = BTreeMap::new();
    for w in &weights {
        let mut leads = Vec::with_capacity(basis.len());
        for b in basis {
            match int_weight(w, b.plus()).cmp(&int_weight(w, b.minus())) {
                Ordering::Greater => leads.push(b.plus().to_vec()),
                Ordering::Less => leads.push(b.minus().to_vec()),
                Ordering::Equal => {
                    return Err(Error::CrossCheck(
                        "vertex weight fails to orient a basis element".into(),
                    ))
                }
            }
        }
        by_ideal.entry(MonomialIdeal::new(leads)).or_insert_with(|| w.clone());
    }
    let _ = newt;

    let mut cells: Vec<(VertexWeight, MonomialIdeal)> = Vec::new();
    let mut points: Vec<Vec<Rat>> = Vec::new();
    for (ideal, weight) in by_ideal {
        let mut acc = vec![0u64; cols];
        for d in 1..=max_deg {
            for mono in monomials_of_degree(cols, d) {
                if ideal.contains(&mono) {
                    for (a, &e) in acc.iter_mut().zip(&mono) {
                        *a += u64::from(e);
                    }
                }
            }
        }
        let pt: Vec<Rat> = acc.iter().map(|&x| Rat::from_integer(Int::from(x))).collect();
        points.push(pt.clone());
        cells.push((VertexWeight { vertex: pt, weight }, ideal));
    }
    let distinct: BTreeSet<&Vec<Rat>> = points.iter().collect();
    let polytope = LatticePolytope::from_points(points.clone())?;
    if distinct.len() != cells.len() || polytope.vertex_count() != cells.len() {
        return Err(Error::CrossCheck(
            "initial ideals and state vertices do not correspond bijectively".into(),
        ));
    }
    for (vw, _) in &cells {
        let am = argmax_vertices(&polytope, &vw.weight);
        if am.len() != 1 || polytope.vertices[am[0]] != vw.vertex {
            return Err(Error::CrossCheck("cell weight does not select its state vertex".into()));
        }
    }
    cells.sort_unstable_by(|a, b| a.0.vertex.cmp(&b.0.vertex));
    Ok(StatePolytopeResult { polytope, cells })
}

/// All monomials of the given total degree, lexicographically ascending.
fn monomials_of_degree(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, col: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if col + 1 == vars {
            cur[col] = left;
            out.push(cur.clone());
            cur[col] = 0;
            return;
        }
        for e in 0..=left {
            cur[col] = e;
            rec(vars, col + 1, left - e, cur, out);
        }
        cur[col] = 0;
    }
    let mut out = Vec::new();
    if vars == 0 {
        return out;
    }
    let mut cur = vec![0u32; vars];
    rec(vars, 0, degree, &mut cur, &mut out);
    out
}

/// The fiber polytopes of the distinct matrix degrees occurring in a
/// basis: for every `b = m . plus`, the convex hull of the full set of
/// nonnegative integer preimages, keyed and sorted by degree vector.
pub fn grobner_fibers(
    m: &IntMatrix,
    basis: &[Binomial],
) -> Result<Vec<(Vec<i64>, LatticePolytope)>> {
    validate_kernel_input(m, basis)?;
    let mut degrees: BTreeSet<Vec<i64>> = BTreeSet::new();
    for b in basis {
        let plus: Vec<i64> = b.plus().iter().map(|&e| i64::from(e)).collect();
        degrees.insert(m.mul_vec(&plus));
    }
    let mut out = Vec::new();
    for b in degrees {
        let pts = fiber(m, &b)?;
        if pts.is_empty() {
            return Err(Error::CrossCheck("a basis degree has an empty fiber".into()));
        }
        let poly = LatticePolytope::from_points(pts.iter().map(|e| expo_rat(e)).collect())?;
        out.push((b, poly));
    }
    Ok(out)
}

/// State polytope as the Minkowski sum of reflected fiber polytopes of
/// the degrees occurring in the basis. Independent of the initial-ideal
/// construction; the two share their normal fan.
///
/// A weight's optimum in the slice of fixed matrix degree is the one
/// standard monomial, the fiber's weight-minimal point. Each fiber is
/// therefore reflected through its own point total before summing, so a
/// weight's vertex collects, per degree, the sum of every non-standard
/// monomial there. A fiber that is a plain segment equals its own
/// reflection, which is why the asymmetry only shows once some fiber
/// has three or more points.
pub fn state_polytope_fibers(m: &IntMatrix, basis: &[Binomial]) -> Result<LatticePolytope> {
    validate_kernel_input(m, basis)?;
    let cols = m.ncols();
    let mut degrees: BTreeSet<Vec<i64>> = BTreeSet::new();
    for b in basis {
        let plus: Vec<i64> = b.plus().iter().map(|&e| i64::from(e)).collect();
        degrees.insert(m.mul_vec(&plus));
    }
    if degrees.is_empty() {
        return LatticePolytope::from_points(vec![vec![Rat::zero(); cols]]);
    }
    let mut parts = Vec::new();
    for b in degrees {
        let pts = fiber(m, &b)?;
        if pts.is_empty() {
            return Err(Error::CrossCheck("a basis degree has an empty fiber".into()));
        }
        let mut total = vec![0i64; cols];
        for p in &pts {
            for (t, &e) in total.iter_mut().zip(p) {
                *t += i64::from(e);
            }
        }
        let reflected: Vec<Vec<Rat>> = pts
            .iter()
            .map(|p| total.iter().zip(p).map(|(&t, &e)| rat(t - i64::from(e))).collect())
            .collect();
        parts.push(LatticePolytope::from_points(reflected)?);
    }
    minkowski(&parts)
}

const PERMUTOHEDRON_GUARD: usize = 6;

/// Convex hull of all permutations of `(1, ..., n)`.
pub fn permutohedron(n: usize) -> Result<LatticePolytope> {
    if n == 0 {
        return Err(Error::InvalidArgument("permutohedron needs n >= 1".into()));
    }
    if n > PERMUTOHEDRON_GUARD {
        return Err(Error::GuardExceeded(format!(
            "permutohedron vertex certification capped at n = {PERMUTOHEDRON_GUARD}"
        )));
    }
    let pts: Vec<Vec<Rat>> = (1..=n as i64).permutations(n).map(|p| rat_vec(&p)).collect();
    LatticePolytope::from_points(pts)
}

fn unit_simplex(ambient: usize, labels: &[usize]) -> Result<LatticePolytope> {
    let pts: Vec<Vec<Rat>> = labels
        .iter()
        .map(|&i| {
            let mut v = vec![Rat::zero(); ambient];
            v[i] = Rat::one();
            v
        })
        .collect();
    LatticePolytope::from_points(pts)
}

const QBAR_GUARD: usize = 6;

/// Minkowski sum, in `R^{n+1}`, of the simplices spanned by
/// `S union {n+1}` over all one- and two-element subsets `S` of
/// `{1, ..., n}` (coordinates 0-based internally).
pub fn qbar(n: usize) -> Result<LatticePolytope> {
    if n == 0 {
        return Err(Error::InvalidArgument("qbar needs n >= 1".into()));
    }
    if n > QBAR_GUARD {
        return Err(Error::GuardExceeded(format!("qbar capped at n = {QBAR_GUARD}")));
    }
    let ambient = n + 1;
    let mut parts = Vec::new();
    for i in 0..n {
        parts.push(unit_simplex(ambient, &[i, n])?);
    }
    for i in 0..n {
        for j in i + 1..n {
            parts.push(unit_simplex(ambient, &[i, j, n])?);
        }
    }
    minkowski(&parts)
}

/// The closed-form vertex set of [`qbar`]: for every permutation of
/// `(1, ..., n)` and every cutoff `i`, zero out the entries up to `i`
/// and append `i (i + 1) / 2` as the last coordinate. Deduplicated and
/// sorted, so it compares directly against certified vertex lists.
pub fn qbar_vertices_formula(n: usize) -> Vec<Vec<Rat>> {
    let mut set: BTreeSet<Vec<Rat>> = BTreeSet::new();
    for p in (1..=n as i64).permutations(n) {
        for i in 0..=n as i64 {
            let mut v: Vec<Rat> =
                p.iter().map(|&x| if x <= i { Rat::zero() } else { rat(x) }).collect();
            v.push(rat(i * (i + 1) / 2));
            set.insert(v);
        }
    }
    set.into_iter().collect()
}

/// The predicted halfspace description of [`qbar`]: nonnegativity of the
/// first `n` coordinates, one inequality per proper subset containing
/// the last coordinate, and the total-sum hyperplane as the equality.
/// Returns `(facets, equality)` with primitive inward normals.
pub fn qbar_halfspaces(n: usize) -> (Vec<Halfspace>, Halfspace) {
    let ambient = n + 1;
    let choose2 = |k: i64| k * (k - 1) / 2;
    let mut facets = Vec::new();
    for i in 0..n {
        let mut normal = vec![Int::zero(); ambient];
        normal[i] = Int::one();
        facets.push(Halfspace { normal, offset: Int::zero() });
    }
    let full = (1u64 << n) - 1;
    for mask in 0..full {
        let mut normal = vec![Int::zero(); ambient];
        let mut size = 1i64;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                normal[i] = Int::one();
                size += 1;
            }
        }
        normal[n] = Int::one();
        facets.push(Halfspace { normal, offset: Int::from(choose2(size)) });
    }
    let equality = Halfspace {
        normal: vec![Int::one(); ambient],
        offset: Int::from(choose2(ambient as i64)),
    };
    (facets, equality)
}

const STELLOHEDRON_GUARD: usize = 4;

/// Minkowski sum, in `R^{n+1}`, of the vertex simplices of the full
/// building set of the star graph on `n + 1` nodes: every singleton,
/// plus `J union {n+1}` for every nonempty `J` inside `{1, ..., n}`.
pub fn stellohedron(n: usize) -> Result<LatticePolytope> {
    if n == 0 {
        return Err(Error::InvalidArgument("stellohedron needs n >= 1".into()));
    }
    if n > STELLOHEDRON_GUARD {
        return Err(Error::GuardExceeded(format!(
            "stellohedron capped at n = {STELLOHEDRON_GUARD}"
        )));
    }
    let ambient = n + 1;
    let mut parts = Vec::new();
    for i in 0..ambient {
        parts.push(unit_simplex(ambient, &[i])?);
    }
    for mask in 1u64..(1 << n) {
        let mut labels: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        labels.push(n);
        parts.push(unit_simplex(ambient, &labels)?);
    }
    minkowski(&parts)
}

/// The affine map `x -> L x + shift` collapsing the Newton polytope of
/// the star family's universal basis onto a shifted permutohedron:
/// the image is exactly `(permutohedron(n) - 1) x {0}^n`. The first `n`
/// coordinates pass through, coordinate `n + i` becomes
/// `x_i + x_{n+i} - (n - 1)`.
pub fn star_state_map(n: usize) -> Result<(IntMatrix, Vec<i64>)> {
    if n == 0 {
        return Err(Error::InvalidArgument("star map needs n >= 1".into()));
    }
    let mut l = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..2 * n {
        l.set(i, i, 1);
    }
    for i in 0..n {
        l.set(n + i, i, 1);
    }
    let mut shift = vec![0i64; 2 * n];
    for s in shift.iter_mut().skip(n) {
        *s = -((n as i64) - 1);
    }
    Ok((l, shift))
}

/// Does the permutation weight select the matching vertices on both
/// sides of the star correspondence? Checks, with `pi` a permutation of
/// `(1, ..., n)`, that `pi` as a weight picks the vertex `pi` of the
/// permutohedron uniquely, and that the doubled weight `(pi, pi^c)`
/// picks the vertex `(pi, pi^c) - 1` of the Newton polytope of the
/// star family's universal basis uniquely.
pub fn weyl_chamber_check(pi: &[i64]) -> Result<bool> {
    let n = pi.len();
    if n < 2 {
        return Err(Error::InvalidArgument("chamber check needs n >= 2".into()));
    }
    let perm = permutohedron(n)?;
    let newt = newton(&crate::toric::claimed_ugb_star(n))?;
    weyl_chamber_check_with(pi, &perm, &newt)
}

/// [`weyl_chamber_check`] against precomputed polytopes, for sweeping
/// a whole symmetric group without rebuilding the hulls.
pub fn weyl_chamber_check_with(
    pi: &[i64],
    perm: &LatticePolytope,
    newt: &LatticePolytope,
) -> Result<bool> {
    let n = pi.len();
    let mut sorted: Vec<i64> = pi.to_vec();
    sorted.sort_unstable();
    if sorted != (1..=n as i64).collect::<Vec<i64>>() {
        return Err(Error::InvalidArgument("weight is not a permutation of 1..n".into()));
    }
    if perm.dim != n || newt.dim != 2 * n {
        return Err(Error::DimensionMismatch("polytope ambient dims do not match pi".into()));
    }
    let w: Vec<Int> = pi.iter().map(|&x| Int::from(x)).collect();
    let am = argmax_vertices(perm, &w);
    let ok_perm = am.len() == 1 && perm.vertices[am[0]] == rat_vec(pi);

    let comp: Vec<i64> = pi.iter().map(|&x| (n as i64) + 1 - x).collect();
    let w2: Vec<Int> = pi.iter().chain(&comp).map(|&x| Int::from(x)).collect();
    let expected: Vec<Rat> =
        pi.iter().chain(&comp).map(|&x| rat(x - 1)).collect();
    let am2 = argmax_vertices(newt, &w2);
    let ok_newt = am2.len() == 1 && newt.vertices[am2[0]] == expected;
    Ok(ok_perm && ok_newt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{pair_code, star_code};
    use crate::exactgeom::int_vec;
    use crate::toric::{claimed_ugb_pair, claimed_ugb_star, code_matrix};

    #[test]
    fn newton_of_one_relation_is_a_segment() {
        let p = newton(&claimed_ugb_star(2)).unwrap();
        assert_eq!(p.vertices, vec![rat_vec(&[0, 1, 1, 0]), rat_vec(&[1, 0, 0, 1])]);
        let (p2, w) = newton_with_weights(&claimed_ugb_star(2)).unwrap();
        assert_eq!(p, p2);
        assert_eq!(w.len(), 2);
        for (v, wt) in p2.vertices.iter().zip(&w) {
            let am = argmax_vertices(&p2, wt);
            assert_eq!(am.len(), 1);
            assert_eq!(&p2.vertices[am[0]], v);
        }
    }

    #[test]
    fn smallest_star_state_polytope_by_both_methods() {
        let m = code_matrix(&star_code(2).unwrap());
        let basis = claimed_ugb_star(2);
        let r = state_polytope_alg35(&m, &basis).unwrap();
        assert_eq!(r.polytope.vertices, vec![rat_vec(&[0, 1, 1, 0]), rat_vec(&[1, 0, 0, 1])]);
        assert_eq!(r.cells.len(), 2);
        let ideals: Vec<&MonomialIdeal> = r.cells.iter().map(|(_, i)| i).collect();
        assert_eq!(*ideals[0], MonomialIdeal::new(vec![vec![0, 1, 1, 0]]));
        assert_eq!(*ideals[1], MonomialIdeal::new(vec![vec![1, 0, 0, 1]]));

        let f = state_polytope_fibers(&m, &basis).unwrap();
        assert_eq!(f, r.polytope, "both constructions coincide for stars");
    }

    #[test]
    fn hexagonal_star_state_polytope() {
        let m = code_matrix(&star_code(3).unwrap());
        let basis = claimed_ugb_star(3);
        let r = state_polytope_alg35(&m, &basis).unwrap();
        assert_eq!(r.polytope.vertex_count(), 6);
        assert_eq!(face_lattice(&r.polytope).unwrap().f_vector, vec![6, 6, 1]);
        assert_eq!(r.cells.len(), 6);
        // for stars the fiber sum is literally the same polytope
        let f = state_polytope_fibers(&m, &basis).unwrap();
        assert_eq!(f, r.polytope);
    }

    #[test]
    fn empty_basis_gives_a_point_at_the_origin() {
        let m = code_matrix(&star_code(1).unwrap());
        let r = state_polytope_alg35(&m, &[]).unwrap();
        assert_eq!(r.polytope.vertex_count(), 1);
        assert_eq!(r.polytope.vertices[0], rat_vec(&[0, 0]));
        assert_eq!(r.cells.len(), 1);
        assert!(r.cells[0].1.is_empty());
    }

    #[test]
    fn kernel_validation_rejects_foreign_binomials() {
        let m = code_matrix(&star_code(2).unwrap());
        let alien = Binomial::new(vec![1, 0, 0, 0], vec![0, 1, 0, 0]).unwrap();
        assert!(state_polytope_alg35(&m, &[alien]).is_err());
    }

    #[test]
    fn fiber_polytopes_of_the_smallest_pair_matrix() {
        let m = code_matrix(&pair_code(1).unwrap());
        let basis = claimed_ugb_pair(1);
        let fibers = grobner_fibers(&m, &basis).unwrap();
        assert_eq!(fibers.len(), 1);
        assert_eq!(fibers[0].0, vec![1, 1, 2]);
        assert_eq!(
            fibers[0].1.vertices,
            vec![rat_vec(&[0, 1, 0, 1]), rat_vec(&[1, 0, 1, 0])]
        );
    }

    #[test]
    fn pentagon_vertices_and_facets() {
        let q = qbar(2).unwrap();
        assert_eq!(q.vertex_count(), 5);
        assert_eq!(q.vertices, qbar_vertices_formula(2));
        let expected: Vec<Vec<Rat>> = vec![
            rat_vec(&[0, 0, 3]),
            rat_vec(&[0, 2, 1]),
            rat_vec(&[1, 2, 0]),
            rat_vec(&[2, 0, 1]),
            rat_vec(&[2, 1, 0]),
        ];
        assert_eq!(q.vertices, expected);

        let (facets, eq) = qbar_halfspaces(2);
        assert!(halfspaces_describe(&q, &facets, &[eq.clone()]).unwrap());

        // negative controls: a dropped facet, and a cut that is not a facet
        assert!(!halfspaces_describe(&q, &facets[1..], &[eq.clone()]).unwrap());
        let mut wrong = facets.clone();
        wrong[0] = Halfspace { normal: int_vec(&[1, 1, 0]), offset: Int::zero() };
        assert!(!halfspaces_describe(&q, &wrong, &[eq]).unwrap());
    }

    #[test]
    fn qbar_vertex_counts_grow_like_arrangements() {
        for (n, count) in [(1usize, 2usize), (2, 5), (3, 16)] {
            let q = qbar(n).unwrap();
            assert_eq!(q.vertex_count(), count, "qbar({n})");
            let formula = qbar_vertices_formula(n);
            assert_eq!(q.vertices, formula, "formula vertex set at n={n}");
        }
    }

    #[test]
    fn star_map_flattens_the_newton_polytope() {
        for n in 2..=3usize {
            let (l, shift) = star_state_map(n).unwrap();
            let newt = newton(&claimed_ugb_star(n)).unwrap();
            let image = apply_affine(&newt, &l, &shift).unwrap();
            let mut expected: Vec<Vec<Rat>> = (1..=n as i64)
                .permutations(n)
                .map(|p| {
                    let mut v: Vec<Rat> = p.iter().map(|&x| rat(x - 1)).collect();
                    v.extend(std::iter::repeat(Rat::zero()).take(n));
                    v
                })
                .collect();
            expected.sort();
            assert_eq!(image.vertices, expected, "n={n}");
        }
    }

    #[test]
    fn chamber_checks_hold_across_a_symmetric_group() {
        let n = 3usize;
        let perm = permutohedron(n).unwrap();
        let newt = newton(&claimed_ugb_star(n)).unwrap();
        for pi in (1..=n as i64).permutations(n) {
            assert!(weyl_chamber_check_with(&pi, &perm, &newt).unwrap(), "pi={pi:?}");
        }
        assert!(weyl_chamber_check(&[2, 1]).unwrap());
        assert!(weyl_chamber_check_with(&[1, 1, 2], &perm, &newt).is_err());
    }

    #[test]
    fn pair_state_polytope_projects_onto_a_reflected_qbar() {
        // The unimodular equivalence onto qbar is a point reflection: a
        // state vertex sums the non-optimal monomials of each degree while
        // qbar's summands track the optimal one.
        for n in 1..=2usize {
            let m = code_matrix(&pair_code(n).unwrap());
            let basis = claimed_ugb_pair(n);
            let sp = state_polytope_fibers(&m, &basis).unwrap();
            let keep: Vec<usize> = (0..=n).map(|i| 3 * i).collect();
            let proj = project_coords(&sp, &keep).unwrap();
            let mut shift = vec![0i64; keep.len()];
            let degrees: BTreeSet<Vec<i64>> = basis
                .iter()
                .map(|g| {
                    let plus: Vec<i64> = g.plus().iter().map(|&e| i64::from(e)).collect();
                    m.mul_vec(&plus)
                })
                .collect();
            for b in degrees {
                for p in fiber(&m, &b).unwrap() {
                    for (s, &k) in shift.iter_mut().zip(&keep) {
                        *s += i64::from(p[k]);
                    }
                }
            }
            let neg: Vec<Vec<i64>> = (0..keep.len())
                .map(|i| (0..keep.len()).map(|j| if i == j { -1 } else { 0 }).collect())
                .collect();
            let image =
                apply_affine(&proj, &IntMatrix::from_rows(neg).unwrap(), &shift).unwrap();
            let q = qbar(n).unwrap();
            assert_eq!(image.vertices, q.vertices, "n={n}");
        }
    }

    #[test]
    fn stellohedron_shares_the_face_lattice_of_qbar() {
        for n in 1..=2usize {
            let a = face_lattice(&qbar(n).unwrap()).unwrap();
            let b = face_lattice(&stellohedron(n).unwrap()).unwrap();
            assert!(lattice_isomorphic(&a, &b), "n={n}");
        }
    }

    #[test]
    fn monomial_enumeration_has_the_right_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
        assert!(monomials_of_degree(0, 2).is_empty());
    }

    #[test]
    fn state_polytope_result_serde_roundtrip() {
        let m = code_matrix(&star_code(2).unwrap());
        let r = state_polytope_alg35(&m, &claimed_ugb_star(2)).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: StatePolytopeResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}
