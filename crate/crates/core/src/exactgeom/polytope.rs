//! Polytopes with certified rational vertex sets and integer facet data.
//!
//! Vertex sets are certified by exact LP: a point is kept only when its
//! removal changes the convex hull. Facets come from a double-description
//! sweep run inside the affine hull, so lower-dimensional polytopes get an
//! honest facet/equality split instead of a degenerate hull.

use std::collections::{BTreeMap, BTreeSet};

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::linalg::{self, Echelon};
use super::lp::{lp_feasible, simplex_max, Cmp, LinCon, Lp};
use super::{dot, dot_int, format_rat, parse_rat, primitive_integer, vec_sub, Int, Rat};
use crate::{Error, Result};

/// Closed halfspace `normal . x >= offset` (inward normal), or the
/// hyperplane `normal . x = offset` when used as an equality.
/// Entries are integers with no common factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Halfspace {
    pub normal: Vec<Int>,
    pub offset: Int,
}

impl Halfspace {
    pub fn eval(&self, x: &[Rat]) -> Rat {
        dot_int(&self.normal, x) - Rat::from_integer(self.offset.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct HalfspaceRepr {
    normal: Vec<i64>,
    offset: i64,
}

impl Serialize for Halfspace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::Error as _;
        let small = |x: &Int| -> std::result::Result<i64, S::Error> {
            i64::try_from(x.clone()).map_err(|_| S::Error::custom("halfspace entry exceeds i64"))
        };
        let normal = self.normal.iter().map(small).collect::<std::result::Result<_, _>>()?;
        HalfspaceRepr { normal, offset: small(&self.offset)? }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Halfspace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = HalfspaceRepr::deserialize(d)?;
        Ok(Halfspace {
            normal: r.normal.into_iter().map(Int::from).collect(),
            offset: Int::from(r.offset),
        })
    }
}

/// Convex polytope in an ambient rational space.
///
/// `vertices` is the complete, lexicographically sorted vertex list; facet
/// and equality data are filled in by [`hull_halfspaces`] and carried along
/// afterwards.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<Rat>>,
    pub facets: Option<Vec<Halfspace>>,
    pub equalities: Option<Vec<Halfspace>>,
}

#[derive(Serialize, Deserialize)]
struct PolytopeRepr {
    dim: usize,
    vertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    facets: Option<Vec<Halfspace>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    equalities: Option<Vec<Halfspace>>,
}

impl Serialize for LatticePolytope {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolytopeRepr {
            dim: self.dim,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(format_rat).collect())
                .collect(),
            facets: self.facets.clone(),
            equalities: self.equalities.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePolytope {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = PolytopeRepr::deserialize(d)?;
        let mut vertices = Vec::with_capacity(r.vertices.len());
        for v in r.vertices {
            if v.len() != r.dim {
                return Err(D::Error::custom("vertex arity differs from dim"));
            }
            let p: Result<Vec<Rat>> = v.iter().map(|s| parse_rat(s)).collect();
            vertices.push(p.map_err(D::Error::custom)?);
        }
        Ok(LatticePolytope { dim: r.dim, vertices, facets: r.facets, equalities: r.equalities })
    }
}

impl LatticePolytope {
    /// Hull of an arbitrary point set: certifies and sorts the vertices.
    pub fn from_points(points: Vec<Vec<Rat>>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("empty point set has no hull".into()));
        }
        let dim = points[0].len();
        let vertices = extreme_points(&points)?;
        Ok(LatticePolytope { dim, vertices, facets: None, equalities: None })
    }

    /// Wrap points already known to be the sorted vertex list.
    pub(crate) fn from_vertices_unchecked(dim: usize, vertices: Vec<Vec<Rat>>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]), "vertices not sorted/unique");
        LatticePolytope { dim, vertices, facets: None, equalities: None }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Dimension of the affine hull (not the ambient dimension).
    pub fn affine_dim(&self) -> usize {
        let mut ech = Echelon::new();
        let base = &self.vertices[0];
        for v in &self.vertices[1..] {
            ech.insert(&vec_sub(v, base));
        }
        ech.rank()
    }

    /// Membership test; requires facet data.
    pub fn contains(&self, x: &[Rat]) -> Result<bool> {
        let (Some(facets), Some(eqs)) = (&self.facets, &self.equalities) else {
            return Err(Error::InvalidArgument("facets not computed; call hull_halfspaces".into()));
        };
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch("point arity differs from dim".into()));
        }
        Ok(eqs.iter().all(|h| h.eval(x).is_zero()) && facets.iter().all(|h| !h.eval(x).is_negative()))
    }
}

/// Affine chart of a point family: a base point plus an independent set of
/// difference vectors, with a precomputed solver mapping ambient points of
/// the affine hull to local coordinates.
pub(crate) struct AffineChart {
    ambient: usize,
    base: Vec<Rat>,
    /// Basis vectors (columns of B), each of length `ambient`.
    basis: Vec<Vec<Rat>>,
    pivot_rows: Vec<usize>,
    /// Inverse of B restricted to `pivot_rows`.
    inv: Vec<Vec<Rat>>,
}

impl AffineChart {
    pub(crate) fn new(points: &[Vec<Rat>]) -> AffineChart {
        assert!(!points.is_empty(), "chart of empty set");
        let ambient = points[0].len();
        let base = points[0].clone();
        let mut ech = Echelon::new();
        let mut basis: Vec<Vec<Rat>> = Vec::new();
        for p in &points[1..] {
            let d = vec_sub(p, &base);
            if ech.insert(&d) {
                basis.push(d);
            }
        }
        let d = basis.len();
        let mut rech = Echelon::new();
        let mut pivot_rows = Vec::new();
        for r in 0..ambient {
            if pivot_rows.len() == d {
                break;
            }
            let row: Vec<Rat> = basis.iter().map(|col| col[r].clone()).collect();
            if rech.insert(&row) {
                pivot_rows.push(r);
            }
        }
        assert_eq!(pivot_rows.len(), d, "basis rows must reach full rank");
        let inv = if d == 0 {
            Vec::new()
        } else {
            let sq: Vec<Vec<Rat>> = pivot_rows
                .iter()
                .map(|&r| basis.iter().map(|col| col[r].clone()).collect())
                .collect();
            linalg::invert(&sq).expect("pivot-row submatrix is invertible")
        };
        AffineChart { ambient, base, basis, pivot_rows, inv }
    }

    pub(crate) fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Local coordinates of `p`, or `None` if `p` lies outside the affine hull.
    pub(crate) fn to_local(&self, p: &[Rat]) -> Option<Vec<Rat>> {
        let diff = vec_sub(p, &self.base);
        let rhs: Vec<Rat> = self.pivot_rows.iter().map(|&r| diff[r].clone()).collect();
        let y: Vec<Rat> = self.inv.iter().map(|row| dot(row, &rhs)).collect();
        for r in 0..self.ambient {
            let mut acc = Rat::zero();
            for (col, yk) in self.basis.iter().zip(&y) {
                if !col[r].is_zero() && !yk.is_zero() {
                    acc += &col[r] * yk;
                }
            }
            if acc != diff[r] {
                return None;
            }
        }
        Some(y)
    }

    /// Lift a local inequality `a . y >= c` to an ambient integer halfspace.
    fn lift_halfspace(&self, a: &[Rat], c: &Rat) -> Halfspace {
        // Rows of B^T are the basis vectors; any solution abar of B^T abar = a
        // satisfies abar . (base + B y) = abar . base + a . y.
        let bt: Vec<Vec<Rat>> = self.basis.clone();
        let abar = linalg::solve(&bt, a).expect("B^T has full row rank");
        let offset = c + &dot(&abar, &self.base);
        integerize(&abar, &offset)
    }

    /// The affine hull as integer equalities, canonically signed and sorted.
    fn equalities(&self) -> Vec<Halfspace> {
        let bt: Vec<Vec<Rat>> = self.basis.clone();
        let mut out: Vec<Halfspace> = if self.dim() == 0 {
            (0..self.ambient)
                .map(|r| {
                    let mut a = vec![Rat::zero(); self.ambient];
                    a[r] = Rat::one();
                    integerize(&a, &self.base[r].clone())
                })
                .collect()
        } else {
            linalg::nullspace(&bt)
                .into_iter()
                .map(|z| integerize(&z, &dot(&z, &self.base)))
                .collect()
        };
        for h in &mut out {
            let mut joint: Vec<Int> = h.normal.clone();
            joint.push(h.offset.clone());
            if super::canonical_sign(&mut joint) {
                h.offset = joint.pop().unwrap();
                h.normal = joint;
            }
        }
        out.sort();
        out
    }
}

/// Scale `(normal, offset)` by a positive rational to coprime integers.
fn integerize(normal: &[Rat], offset: &Rat) -> Halfspace {
    let mut joint = normal.to_vec();
    joint.push(offset.clone());
    let mut ints = primitive_integer(&joint);
    let offset = ints.pop().unwrap();
    Halfspace { normal: ints, offset }
}

/// The certified vertex set of the hull of `points`: deduplicated, each
/// survivor proven outside the hull of the others by exact LP, sorted
/// lexicographically.
pub fn extreme_points(points: &[Vec<Rat>]) -> Result<Vec<Vec<Rat>>> {
    if points.is_empty() {
        return Ok(Vec::new());
    }
    let dim = points[0].len();
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch("points of unequal arity".into()));
    }
    let uniq: Vec<Vec<Rat>> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    if uniq.len() <= 2 {
        return Ok(uniq);
    }
    let chart = AffineChart::new(&uniq);
    let d = chart.dim();
    let locals: Vec<Vec<Rat>> = uniq
        .iter()
        .map(|p| chart.to_local(p).expect("chart spans its defining points"))
        .collect();

    let mut extreme = vec![false; uniq.len()];
    // A unique optimum of a linear functional is a vertex; coordinate
    // functionals decide many points before any LP runs.
    for k in 0..d {
        for minimize in [false, true] {
            let mut best: Option<(usize, &Rat)> = None;
            let mut unique = true;
            for (i, y) in locals.iter().enumerate() {
                match &best {
                    None => best = Some((i, &y[k])),
                    Some((_, b)) => {
                        let better = if minimize { y[k] < **b } else { y[k] > **b };
                        if better {
                            best = Some((i, &y[k]));
                            unique = true;
                        } else if y[k] == **b {
                            unique = false;
                        }
                    }
                }
            }
            if let (Some((i, _)), true) = (best, unique) {
                extreme[i] = true;
            }
        }
    }

    for i in 0..uniq.len() {
        if extreme[i] {
            continue;
        }
        // Feasibility of y_i = sum(lambda_j y_j), sum(lambda) = 1, lambda >= 0
        // over j != i decides membership in the hull of the others.
        let others: Vec<usize> = (0..uniq.len()).filter(|&j| j != i).collect();
        let mut a: Vec<Vec<Rat>> = Vec::with_capacity(d + 1);
        for k in 0..d {
            a.push(others.iter().map(|&j| locals[j][k].clone()).collect());
        }
        a.push(vec![Rat::one(); others.len()]);
        let mut b: Vec<Rat> = locals[i].clone();
        b.push(Rat::one());
        let c = vec![Rat::zero(); others.len()];
        if matches!(simplex_max(&a, &b, &c), Lp::Infeasible) {
            extreme[i] = true;
        }
    }

    Ok(uniq.into_iter().zip(extreme).filter_map(|(p, e)| e.then_some(p)).collect())
}

/// Compute facets and affine-hull equalities of `p`.
///
/// Returns a copy with `facets` and `equalities` populated: integer inward
/// normals with coprime entries, sorted lexicographically. A polytope of
/// affine dimension 0 has no facets and `dim` equalities.
pub fn hull_halfspaces(p: &LatticePolytope) -> Result<LatticePolytope> {
    if p.vertices.is_empty() {
        return Err(Error::InvalidArgument("empty polytope".into()));
    }
    if p.facets.is_some() && p.equalities.is_some() {
        return Ok(p.clone());
    }
    let chart = AffineChart::new(&p.vertices);
    let equalities = chart.equalities();
    let d = chart.dim();
    let mut out = p.clone();
    if d == 0 {
        out.facets = Some(Vec::new());
        out.equalities = Some(equalities);
        return Ok(out);
    }
    let locals: Vec<Vec<Rat>> = p
        .vertices
        .iter()
        .map(|v| chart.to_local(v).expect("vertex lies in its own affine hull"))
        .collect();
    let cons: Vec<Vec<Rat>> = locals
        .iter()
        .map(|y| {
            let mut row = Vec::with_capacity(d + 1);
            row.push(Rat::one());
            row.extend(y.iter().cloned());
            row
        })
        .collect();
    let rays = dd_extreme_rays(&cons, d + 1)?;
    let mut facets = Vec::with_capacity(rays.len());
    for r in &rays {
        let a = &r[1..];
        if a.iter().all(|x| x.is_zero()) {
            return Err(Error::CrossCheck("vertical ray escaped the support cone".into()));
        }
        facets.push(chart.lift_halfspace(a, &-r[0].clone()));
    }
    facets.sort();
    for w in facets.windows(2) {
        if w[0] == w[1] {
            return Err(Error::CrossCheck("duplicate facet from double description".into()));
        }
    }
    // Soundness screen: every vertex inside every facet, every facet tight
    // on at least d vertices (a facet of a d-polytope has no fewer).
    for h in &facets {
        let mut tight = 0usize;
        for v in &p.vertices {
            let e = h.eval(v);
            if e.is_negative() {
                return Err(Error::CrossCheck("vertex violates computed facet".into()));
            }
            if e.is_zero() {
                tight += 1;
            }
        }
        if tight < d {
            return Err(Error::CrossCheck("facet tight on too few vertices".into()));
        }
    }
    out.facets = Some(facets);
    out.equalities = Some(equalities);
    Ok(out)
}

/// Decide whether a predicted halfspace description matches the hull of `p`.
///
/// Below full dimension the facet normals are unique only modulo the
/// affine-hull equalities, so descriptions are compared semantically:
/// the predicted equalities must vanish on every vertex and span the same
/// space as the computed ones, every predicted facet must be valid, and the
/// predicted facets must cut out exactly the tight vertex sets of the
/// computed facets, without repetition.
pub fn halfspaces_describe(
    p: &LatticePolytope,
    facets: &[Halfspace],
    equalities: &[Halfspace],
) -> Result<bool> {
    for h in facets.iter().chain(equalities) {
        if h.normal.len() != p.dim {
            return Err(Error::DimensionMismatch("halfspace arity differs from ambient".into()));
        }
    }
    let hulled = hull_halfspaces(p)?;
    let computed = hulled.facets.as_ref().expect("hull_halfspaces fills facets");
    let hull_eqs = hulled.equalities.as_ref().expect("hull_halfspaces fills equalities");

    for h in equalities {
        if p.vertices.iter().any(|v| !h.eval(v).is_zero()) {
            return Ok(false);
        }
    }
    let to_rat = |hs: &[Halfspace]| -> Vec<Vec<Rat>> {
        hs.iter()
            .map(|h| h.normal.iter().map(|x| Rat::from_integer(x.clone())).collect())
            .collect()
    };
    if linalg::rank(&to_rat(equalities)) != linalg::rank(&to_rat(hull_eqs)) {
        return Ok(false);
    }

    let tight_set = |h: &Halfspace| -> Option<Vec<usize>> {
        let mut tight = Vec::new();
        for (i, v) in p.vertices.iter().enumerate() {
            let e = h.eval(v);
            if e.is_negative() {
                return None;
            }
            if e.is_zero() {
                tight.push(i);
            }
        }
        Some(tight)
    };
    let mut predicted = Vec::with_capacity(facets.len());
    for h in facets {
        match tight_set(h) {
            Some(t) => predicted.push(t),
            None => return Ok(false),
        }
    }
    let mut actual: Vec<Vec<usize>> = computed
        .iter()
        .map(|h| tight_set(h).expect("computed facet is valid on its own hull"))
        .collect();
    predicted.sort();
    actual.sort();
    Ok(predicted == actual)
}

/// Extreme rays of the pointed cone `{r : cons[i] . r >= 0}` by incremental
/// double description with exact tight sets and combinatorial adjacency.
fn dd_extreme_rays(cons: &[Vec<Rat>], dim: usize) -> Result<Vec<Vec<Rat>>> {
    let mut ech = Echelon::new();
    let mut initial: Vec<usize> = Vec::new();
    let mut rest: Vec<usize> = Vec::new();
    for (i, c) in cons.iter().enumerate() {
        if initial.len() < dim && ech.insert(c) {
            initial.push(i);
        } else {
            rest.push(i);
        }
    }
    if initial.len() < dim {
        return Err(Error::CrossCheck("support cone is not pointed".into()));
    }
    let order: Vec<usize> = initial.iter().chain(rest.iter()).copied().collect();

    let n0: Vec<Vec<Rat>> = initial.iter().map(|&i| cons[i].clone()).collect();
    let inv = linalg::invert(&n0).expect("initial rows are independent");
    let mut rays: Vec<Vec<Rat>> = (0..dim)
        .map(|j| {
            let col: Vec<Rat> = inv.iter().map(|row| row[j].clone()).collect();
            rat_primitive(&col)
        })
        .collect();
    let words = order.len().div_ceil(64);
    let mut tights: Vec<Vec<u64>> = (0..dim)
        .map(|j| {
            let mut t = vec![0u64; words];
            for k in 0..dim {
                if k != j {
                    t[k / 64] |= 1 << (k % 64);
                }
            }
            t
        })
        .collect();

    for t in dim..order.len() {
        let n = &cons[order[t]];
        let vals: Vec<Rat> = rays.iter().map(|r| dot(n, r)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();

        let mut new_rays = Vec::new();
        let mut new_tights = Vec::new();
        for &i in &plus {
            for &j in &minus {
                let meet: Vec<u64> =
                    tights[i].iter().zip(&tights[j]).map(|(a, b)| a & b).collect();
                let adjacent = !(0..rays.len()).any(|k| {
                    k != i && k != j && meet.iter().zip(&tights[k]).all(|(m, tk)| m & !tk == 0)
                });
                if !adjacent {
                    continue;
                }
                let mut r: Vec<Rat> = Vec::with_capacity(rays[i].len());
                for (xi, xj) in rays[i].iter().zip(&rays[j]) {
                    r.push(&vals[i] * xj - &vals[j] * xi);
                }
                let r = rat_primitive(&r);
                let mut tight = vec![0u64; words];
                for (s, &oi) in order.iter().enumerate().take(t + 1) {
                    if dot(&cons[oi], &r).is_zero() {
                        tight[s / 64] |= 1 << (s % 64);
                    }
                }
                new_rays.push(r);
                new_tights.push(tight);
            }
        }

        let mut kept_rays = Vec::new();
        let mut kept_tights = Vec::new();
        for (k, (r, mut tk)) in rays.into_iter().zip(tights).enumerate() {
            if vals[k].is_negative() {
                continue;
            }
            if vals[k].is_zero() {
                tk[t / 64] |= 1 << (t % 64);
            }
            kept_rays.push(r);
            kept_tights.push(tk);
        }
        kept_rays.extend(new_rays);
        kept_tights.extend(new_tights);
        rays = kept_rays;
        tights = kept_tights;
    }
    Ok(rays)
}

/// Rescale a rational vector to primitive integer entries, kept as rationals.
fn rat_primitive(v: &[Rat]) -> Vec<Rat> {
    primitive_integer(v).into_iter().map(Rat::from_integer).collect()
}

const TUPLE_LIMIT: usize = 4096;

/// Minkowski sum of polytopes sharing an ambient space.
pub fn minkowski(parts: &[LatticePolytope]) -> Result<LatticePolytope> {
    minkowski_with_weights(parts).map(|(p, _)| p)
}

/// Minkowski sum which, when the total tuple count is small enough to sweep,
/// also returns one integer weight per vertex whose maximum over the sum is
/// attained exactly at that vertex (a normal-cone interior certificate).
///
/// Larger instances fold pairwise with LP pruning after every step and
/// return `None` for the weights.
pub fn minkowski_with_weights(
    parts: &[LatticePolytope],
) -> Result<(LatticePolytope, Option<Vec<Vec<Int>>>)> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("Minkowski sum of nothing".into()));
    }
    let dim = parts[0].dim;
    if parts.iter().any(|p| p.dim != dim) {
        return Err(Error::DimensionMismatch("Minkowski summands of unequal ambient dim".into()));
    }
    if parts.iter().any(|p| p.vertices.is_empty()) {
        return Err(Error::InvalidArgument("Minkowski summand with no vertices".into()));
    }
    let tuples = parts.iter().try_fold(1usize, |acc, p| acc.checked_mul(p.vertex_count()));

    if let Some(tuples) = tuples.filter(|&t| t <= TUPLE_LIMIT) {
        let mut found: BTreeMap<Vec<Rat>, Vec<Int>> = BTreeMap::new();
        let mut idx = vec![0usize; parts.len()];
        for _ in 0..tuples {
            let mut sum = vec![Rat::zero(); dim];
            for (p, &i) in parts.iter().zip(&idx) {
                for (s, x) in sum.iter_mut().zip(&p.vertices[i]) {
                    *s += x;
                }
            }
            let mut cons: Vec<LinCon> = Vec::new();
            for (p, &i) in parts.iter().zip(&idx) {
                for (j, u) in p.vertices.iter().enumerate() {
                    if j != i {
                        cons.push(LinCon {
                            coeffs: vec_sub(&p.vertices[i], u),
                            cmp: Cmp::Ge,
                            rhs: Rat::one(),
                        });
                    }
                }
            }
            if let Some(w) = lp_feasible(dim, &cons) {
                found.insert(sum, primitive_integer(&w));
            }
            for (slot, p) in idx.iter_mut().zip(parts) {
                *slot += 1;
                if *slot < p.vertex_count() {
                    break;
                }
                *slot = 0;
            }
        }
        let (vertices, weights): (Vec<_>, Vec<_>) = found.into_iter().unzip();
        if vertices.is_empty() {
            return Err(Error::CrossCheck("Minkowski sweep found no coherent tuple".into()));
        }
        return Ok((LatticePolytope::from_vertices_unchecked(dim, vertices), Some(weights)));
    }

    let mut acc: Vec<Vec<Rat>> = parts[0].vertices.clone();
    for part in &parts[1..] {
        let mut candidates: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for a in &acc {
            for b in &part.vertices {
                candidates.insert(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        let candidates: Vec<Vec<Rat>> = candidates.into_iter().collect();
        acc = extreme_points(&candidates)?;
    }
    Ok((LatticePolytope::from_vertices_unchecked(dim, acc), None))
}

/// An integer weight vector maximized over `p` exactly at `v`.
pub fn normal_cone_weight(p: &LatticePolytope, v: &[Rat]) -> Result<Vec<Int>> {
    if !p.vertices.iter().any(|u| u == v) {
        return Err(Error::NotAVertex);
    }
    if p.vertex_count() == 1 {
        return Ok(vec![Int::zero(); p.dim]);
    }
    let cons: Vec<LinCon> = p
        .vertices
        .iter()
        .filter(|u| u.as_slice() != v)
        .map(|u| LinCon { coeffs: vec_sub(v, u), cmp: Cmp::Ge, rhs: Rat::one() })
        .collect();
    match lp_feasible(p.dim, &cons) {
        Some(w) => Ok(primitive_integer(&w)),
        None => Err(Error::NotAVertex),
    }
}

/// Image of `p` under `x -> m x + shift`, with the vertex set recertified.
pub fn apply_affine(p: &LatticePolytope, m: &super::IntMatrix, shift: &[i64]) -> Result<LatticePolytope> {
    if m.ncols() != p.dim {
        return Err(Error::DimensionMismatch("matrix arity differs from polytope dim".into()));
    }
    if shift.len() != m.nrows() {
        return Err(Error::DimensionMismatch("shift arity differs from matrix rows".into()));
    }
    let points: Vec<Vec<Rat>> = p
        .vertices
        .iter()
        .map(|v| {
            m.mul_point(v)
                .into_iter()
                .zip(shift)
                .map(|(x, &t)| x + Rat::from_integer(Int::from(t)))
                .collect()
        })
        .collect();
    let out = LatticePolytope::from_points(points)?;
    if m.nrows() == m.ncols() && m.det() != 0 && out.vertex_count() != p.vertex_count() {
        return Err(Error::CrossCheck("invertible image changed the vertex count".into()));
    }
    Ok(out)
}

/// Project onto a subset of coordinates (in the given order) and recertify.
pub fn project_coords(p: &LatticePolytope, coords: &[usize]) -> Result<LatticePolytope> {
    if coords.iter().any(|&c| c >= p.dim) {
        return Err(Error::InvalidArgument("projection coordinate out of range".into()));
    }
    let points: Vec<Vec<Rat>> = p
        .vertices
        .iter()
        .map(|v| coords.iter().map(|&c| v[c].clone()).collect())
        .collect();
    LatticePolytope::from_points(points)
}

/// Indices of the vertices maximizing `w . x` over `p`, ascending.
pub fn argmax_vertices(p: &LatticePolytope, w: &[Int]) -> Vec<usize> {
    let vals: Vec<Rat> = p.vertices.iter().map(|v| dot_int(w, v)).collect();
    let best = vals.iter().max().expect("polytope has vertices").clone();
    (0..vals.len()).filter(|&i| vals[i] == best).collect()
}
