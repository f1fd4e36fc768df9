//! Face lattices from vertex-facet incidence, f-vectors, simplicity, and
//! combinatorial isomorphism testing.

use std::collections::{BTreeMap, HashMap, HashSet};

use num::Zero;
use serde::{Deserialize, Serialize};

use super::linalg::Echelon;
use super::polytope::{hull_halfspaces, LatticePolytope};
use super::vec_sub;
use crate::{Error, Result};

/// Combinatorial shadow of a polytope: who lies on what, and how many faces
/// exist in each dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceLattice {
    /// Dimension of the polytope itself (its affine hull), not the ambient space.
    pub poly_dim: usize,
    /// `vertex_facet_incidence[v][f]` is true when vertex `v` lies on facet `f`,
    /// with both indexed as in the generating polytope.
    pub vertex_facet_incidence: Vec<Vec<bool>>,
    /// `f_vector[k]` counts `k`-faces for `k < poly_dim`; the last entry is
    /// always 1 for the polytope itself. A single point has `f_vector == [1]`.
    pub f_vector: Vec<u64>,
}

type Mask = Vec<u64>;

fn mask_words(n: usize) -> usize {
    n.div_ceil(64)
}

fn mask_bit(m: &mut Mask, i: usize) {
    m[i / 64] |= 1 << (i % 64);
}

fn mask_has(m: &Mask, i: usize) -> bool {
    m[i / 64] >> (i % 64) & 1 == 1
}

fn mask_and(a: &Mask, b: &Mask) -> Mask {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn mask_count(m: &Mask) -> usize {
    m.iter().map(|w| w.count_ones() as usize).sum()
}

/// Enumerate every face of `p` as an intersection of facets and count them
/// by dimension. Facets are computed first if `p` does not carry them.
pub fn face_lattice(p: &LatticePolytope) -> Result<FaceLattice> {
    let h = hull_halfspaces(p)?;
    let facets = h.facets.as_ref().expect("hull_halfspaces populates facets");
    let nv = h.vertex_count();
    let d = h.affine_dim();

    let incidence: Vec<Vec<bool>> = h
        .vertices
        .iter()
        .map(|v| facets.iter().map(|f| f.eval(v).is_zero()).collect())
        .collect();

    let words = mask_words(nv);
    let facet_masks: Vec<Mask> = (0..facets.len())
        .map(|f| {
            let mut m = vec![0u64; words];
            for v in 0..nv {
                if incidence[v][f] {
                    mask_bit(&mut m, v);
                }
            }
            m
        })
        .collect();

    let mut full = vec![0u64; words];
    for v in 0..nv {
        mask_bit(&mut full, v);
    }
    let mut seen: HashSet<Mask> = HashSet::new();
    seen.insert(full.clone());
    let mut queue = vec![full.clone()];
    while let Some(m) = queue.pop() {
        for fm in &facet_masks {
            let cut = mask_and(&m, fm);
            if mask_count(&cut) > 0 && seen.insert(cut.clone()) {
                queue.push(cut);
            }
        }
    }

    let mut f_vector = vec![0u64; d + 1];
    for m in &seen {
        if *m == full {
            continue;
        }
        let members: Vec<usize> = (0..nv).filter(|&v| mask_has(m, v)).collect();
        let mut ech = Echelon::new();
        let base = &h.vertices[members[0]];
        for &v in &members[1..] {
            ech.insert(&vec_sub(&h.vertices[v], base));
        }
        let fd = ech.rank();
        if fd >= d {
            return Err(Error::CrossCheck("proper face with full dimension".into()));
        }
        f_vector[fd] += 1;
    }
    f_vector[d] = 1;
    if d > 0 && f_vector[0] != nv as u64 {
        return Err(Error::CrossCheck("face enumeration lost vertices".into()));
    }

    Ok(FaceLattice { poly_dim: d, vertex_facet_incidence: incidence, f_vector })
}

/// A polytope is simple when every vertex lies on exactly `dim` facets.
pub fn is_simple(p: &LatticePolytope) -> Result<bool> {
    let h = hull_halfspaces(p)?;
    let facets = h.facets.as_ref().expect("hull_halfspaces populates facets");
    let d = h.affine_dim();
    Ok(h.vertices
        .iter()
        .all(|v| facets.iter().filter(|f| f.eval(v).is_zero()).count() == d))
}

/// Decide whether two face lattices are isomorphic: iterated color
/// refinement on the vertex-facet incidence, then a backtracking search for
/// a facet bijection whose induced vertex patterns match.
pub fn lattice_isomorphic(a: &FaceLattice, b: &FaceLattice) -> bool {
    if a.poly_dim != b.poly_dim || a.f_vector != b.f_vector {
        return false;
    }
    let (va, fa) = incidence_shape(a);
    let (vb, fb) = incidence_shape(b);
    if va != vb || fa != fb {
        return false;
    }
    if fa == 0 {
        return true;
    }

    let (mut vcol_a, mut fcol_a) = (vec![0u64; va], vec![0u64; fa]);
    let (mut vcol_b, mut fcol_b) = (vec![0u64; vb], vec![0u64; fb]);
    loop {
        let mut table: BTreeMap<(u64, Vec<u64>), u64> = BTreeMap::new();
        let nv_a = refine(&a.vertex_facet_incidence, &vcol_a, &fcol_a, false, &mut table);
        let nv_b = refine(&b.vertex_facet_incidence, &vcol_b, &fcol_b, false, &mut table);
        let mut table_f: BTreeMap<(u64, Vec<u64>), u64> = BTreeMap::new();
        let nf_a = refine(&a.vertex_facet_incidence, &fcol_a, &nv_a, true, &mut table_f);
        let nf_b = refine(&b.vertex_facet_incidence, &fcol_b, &nv_b, true, &mut table_f);
        let stable = nv_a == vcol_a && nv_b == vcol_b && nf_a == fcol_a && nf_b == fcol_b;
        vcol_a = nv_a;
        vcol_b = nv_b;
        fcol_a = nf_a;
        fcol_b = nf_b;
        if stable {
            break;
        }
    }
    if color_census(&vcol_a) != color_census(&vcol_b) || color_census(&fcol_a) != color_census(&fcol_b) {
        return false;
    }

    // Process A-facets rarest color first; candidates must share the color.
    let mut order: Vec<usize> = (0..fa).collect();
    let census = color_census(&fcol_a);
    order.sort_by_key(|&f| (census[&fcol_a[f]], fcol_a[f], f));

    let mut image = vec![usize::MAX; fa];
    let mut used = vec![false; fb];
    assign(a, b, &fcol_a, &fcol_b, &order, 0, &mut image, &mut used)
}

fn incidence_shape(l: &FaceLattice) -> (usize, usize) {
    let v = l.vertex_facet_incidence.len();
    let f = l.vertex_facet_incidence.first().map_or(0, |r| r.len());
    (v, f)
}

/// One refinement round: each item's new color is (old color, sorted colors
/// of incident partners). `table` is shared across both lattices so equal
/// keys get equal ids.
fn refine(
    inc: &[Vec<bool>],
    own: &[u64],
    other: &[u64],
    facet_side: bool,
    table: &mut BTreeMap<(u64, Vec<u64>), u64>,
) -> Vec<u64> {
    let n = own.len();
    let mut out = vec![0u64; n];
    for i in 0..n {
        let mut partners: Vec<u64> = if facet_side {
            (0..inc.len()).filter(|&v| inc[v][i]).map(|v| other[v]).collect()
        } else {
            (0..inc[i].len()).filter(|&f| inc[i][f]).map(|f| other[f]).collect()
        };
        partners.sort_unstable();
        let next = table.len() as u64;
        out[i] = *table.entry((own[i], partners)).or_insert(next);
    }
    out
}

fn color_census(colors: &[u64]) -> BTreeMap<u64, usize> {
    let mut m = BTreeMap::new();
    for &c in colors {
        *m.entry(c).or_insert(0) += 1;
    }
    m
}

fn assign(
    a: &FaceLattice,
    b: &FaceLattice,
    fcol_a: &[u64],
    fcol_b: &[u64],
    order: &[usize],
    depth: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let fa = order[depth];
    for fb in 0..fcol_b.len() {
        if used[fb] || fcol_b[fb] != fcol_a[fa] {
            continue;
        }
        image[fa] = fb;
        used[fb] = true;
        if patterns_match(a, b, order, depth + 1, image) && assign(a, b, fcol_a, fcol_b, order, depth + 1, image, used) {
            return true;
        }
        used[fb] = false;
        image[fa] = usize::MAX;
    }
    false
}

/// Compare the multisets of vertex incidence patterns over the first
/// `depth` assigned facets.
fn patterns_match(a: &FaceLattice, b: &FaceLattice, order: &[usize], depth: usize, image: &[usize]) -> bool {
    let mut counts: HashMap<u128, i64> = HashMap::new();
    debug_assert!(depth <= 128, "pattern word too narrow");
    for row in &a.vertex_facet_incidence {
        let mut pat = 0u128;
        for (k, &fa) in order[..depth].iter().enumerate() {
            if row[fa] {
                pat |= 1 << k;
            }
        }
        *counts.entry(pat).or_insert(0) += 1;
    }
    for row in &b.vertex_facet_incidence {
        let mut pat = 0u128;
        for (k, &fa) in order[..depth].iter().enumerate() {
            if row[image[fa]] {
                pat |= 1 << k;
            }
        }
        *counts.entry(pat).or_insert(0) -= 1;
    }
    counts.values().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::rat_vec;
    use crate::exactgeom::Rat;

    fn poly(raw: &[&[i64]]) -> LatticePolytope {
        let pts: Vec<Vec<Rat>> = raw.iter().map(|r| rat_vec(r)).collect();
        LatticePolytope::from_points(pts).unwrap()
    }

    #[test]
    fn f_vectors_of_small_shapes() {
        let square = poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]);
        assert_eq!(face_lattice(&square).unwrap().f_vector, vec![4, 4, 1]);
        let point = poly(&[&[5, 5, 5]]);
        assert_eq!(face_lattice(&point).unwrap().f_vector, vec![1]);
        let cube = poly(&[
            &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0],
            &[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1],
        ]);
        assert_eq!(face_lattice(&cube).unwrap().f_vector, vec![8, 12, 6, 1]);
    }

    #[test]
    fn simplicity_of_cube_and_pyramid() {
        let cube = poly(&[
            &[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0],
            &[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1],
        ]);
        assert!(is_simple(&cube).unwrap());
        let pyramid = poly(&[&[0, 0, 0], &[2, 0, 0], &[0, 2, 0], &[2, 2, 0], &[1, 1, 1]]);
        assert!(!is_simple(&pyramid).unwrap(), "the apex lies on four facets");
    }

    #[test]
    fn isomorphism_distinguishes_square_from_triangle() {
        let square = face_lattice(&poly(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let diamond = face_lattice(&poly(&[&[0, -3], &[3, 0], &[-3, 0], &[0, 3]])).unwrap();
        let triangle = face_lattice(&poly(&[&[0, 0], &[4, 0], &[0, 4]])).unwrap();
        assert!(lattice_isomorphic(&square, &diamond));
        assert!(!lattice_isomorphic(&square, &triangle));
    }

    #[test]
    fn isomorphism_sees_past_equal_f_vectors() {
        // Two combinatorially different simplicial 3-polytopes share
        // f = (6, 12, 8, 1): the octahedron (all vertices of degree 4) and a
        // stacked polytope obtained by gluing tetrahedra over faces of a
        // tetrahedron, which has a degree-3 vertex.
        let octa = face_lattice(&poly(&[
            &[1, 0, 0], &[-1, 0, 0], &[0, 1, 0], &[0, -1, 0], &[0, 0, 1], &[0, 0, -1],
        ]))
        .unwrap();
        let stacked = face_lattice(&poly(&[
            &[0, 0, 0], &[12, 0, 0], &[0, 12, 0], &[0, 0, 12],
            &[-3, 4, 4], &[4, -3, 4],
        ]))
        .unwrap();
        assert_eq!(octa.f_vector, stacked.f_vector);
        assert!(!lattice_isomorphic(&octa, &stacked));
    }
}
