//! Randomized invariants over the exact kernels. Each block plants a
//! structure with a known answer (a feasible point, a known spanning set,
//! a relabeling) and checks that the answer survives whatever else the
//! generator threw in, so order- and representation-dependent bugs have
//! nowhere to hide.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use codetoric::codes::{pair_code, star_code, to_abstract, NeuralCode};
use codetoric::exactgeom::{
    apply_affine, argmax_vertices, dot, extreme_points, face_lattice, hull_halfspaces, int_vec,
    lattice_isomorphic, lp_feasible, rat, Cmp, IntMatrix, LatticePolytope, LinCon, Rat,
};
use codetoric::toric::{
    code_matrix, graver, is_groebner_basis, reduced_gb, Binomial, WeightOrder,
};
use proptest::prelude::*;

fn rat_point(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

fn satisfies(cons: &[LinCon], x: &[Rat]) -> bool {
    cons.iter().all(|c| {
        let lhs = dot(&c.coeffs, x);
        match c.cmp {
            Cmp::Eq => lhs == c.rhs,
            Cmp::Ge => lhs >= c.rhs,
            Cmp::Gt => lhs > c.rhs,
        }
    })
}

/// Constraint rows built around a planted integer point: every row is
/// satisfied by the witness with slack to spare, so the system is feasible
/// no matter how the senses landed.
fn planted_system() -> impl Strategy<Value = (Vec<i64>, Vec<(Vec<i64>, u8, u8)>)> {
    (1usize..=4).prop_flat_map(|dim| {
        (
            prop::collection::vec(-3i64..=3, dim),
            prop::collection::vec(
                (prop::collection::vec(-3i64..=3, dim), 0u8..=2, 0u8..=3),
                1..=10,
            ),
        )
    })
}

fn build_planted(witness: &[i64], rows: &[(Vec<i64>, u8, u8)]) -> Vec<LinCon> {
    rows.iter()
        .map(|(coeffs, sense, slack)| {
            let cw: i64 = coeffs.iter().zip(witness).map(|(a, b)| a * b).sum();
            let (cmp, rhs) = match sense % 3 {
                0 => (Cmp::Eq, cw),
                1 => (Cmp::Ge, cw - i64::from(*slack)),
                _ => (Cmp::Gt, cw - 1 - i64::from(*slack)),
            };
            LinCon { coeffs: rat_point(coeffs), cmp, rhs: rat(rhs) }
        })
        .collect()
}

proptest! {
    #[test]
    fn lp_finds_planted_witnesses_and_its_answers_verify(
        (witness, rows) in planted_system(),
    ) {
        let cons = build_planted(&witness, &rows);
        let found = lp_feasible(witness.len(), &cons);
        prop_assert!(found.is_some(), "planted witness {witness:?} missed");
        prop_assert!(satisfies(&cons, &found.unwrap()));
    }

    #[test]
    fn lp_refuses_systems_with_a_planted_contradiction(
        (witness, rows) in planted_system(),
        mut coeffs in prop::collection::vec(-3i64..=3, 4),
        rhs in -5i64..=5,
    ) {
        let dim = witness.len();
        coeffs.truncate(dim);
        if coeffs.iter().all(|&x| x == 0) {
            coeffs[0] = 1;
        }
        let mut cons = build_planted(&witness, &rows);
        cons.push(LinCon { coeffs: rat_point(&coeffs), cmp: Cmp::Ge, rhs: rat(rhs) });
        let neg: Vec<i64> = coeffs.iter().map(|&x| -x).collect();
        cons.push(LinCon { coeffs: rat_point(&neg), cmp: Cmp::Ge, rhs: rat(1 - rhs) });
        prop_assert!(lp_feasible(dim, &cons).is_none());
    }

    #[test]
    fn lp_verdicts_do_not_depend_on_row_order(
        (witness, rows) in planted_system(),
        senses in prop::collection::vec((0u8..=2, -6i64..=6), 1..=10),
    ) {
        // arbitrary senses and right-hand sides: feasibility is unknown,
        // but it must be the same under every row arrangement
        let dim = witness.len();
        let cons: Vec<LinCon> = rows
            .iter()
            .zip(senses.iter().cycle())
            .map(|((coeffs, _, _), (sense, rhs))| LinCon {
                coeffs: rat_point(coeffs),
                cmp: match sense % 3 {
                    0 => Cmp::Eq,
                    1 => Cmp::Ge,
                    _ => Cmp::Gt,
                },
                rhs: rat(*rhs),
            })
            .collect();
        let base = lp_feasible(dim, &cons);
        if let Some(x) = &base {
            prop_assert!(satisfies(&cons, x));
        }
        let mut reversed = cons.clone();
        reversed.reverse();
        let mut rotated = cons.clone();
        rotated.rotate_left(cons.len() / 2);
        for variant in [reversed, rotated] {
            let got = lp_feasible(dim, &variant);
            prop_assert_eq!(got.is_some(), base.is_some());
            if let Some(x) = &got {
                prop_assert!(satisfies(&cons, x));
            }
        }
    }
}

fn point_cloud() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (2usize..=4)
        .prop_flat_map(|dim| prop::collection::vec(prop::collection::vec(-4i64..=4, dim), 1..=10))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hulls_are_idempotent_and_their_halfspaces_hold(pts in point_cloud()) {
        let cloud: Vec<Vec<Rat>> = pts.iter().map(|p| rat_point(p)).collect();
        let ext = extreme_points(&cloud).unwrap();
        let cloud_set: BTreeSet<&Vec<Rat>> = cloud.iter().collect();
        for v in &ext {
            prop_assert!(cloud_set.contains(v), "vertex from outside the input");
        }
        prop_assert_eq!(&extreme_points(&ext).unwrap(), &ext);

        let hulled = hull_halfspaces(&LatticePolytope::from_points(ext).unwrap()).unwrap();
        for q in &cloud {
            prop_assert!(hulled.contains(q).unwrap());
        }
        let zero = rat(0);
        for v in &hulled.vertices {
            for f in hulled.facets.as_ref().unwrap() {
                prop_assert!(f.eval(v) >= zero);
            }
            for e in hulled.equalities.as_ref().unwrap() {
                prop_assert!(f_eq(e.eval(v)));
            }
        }

        let json = serde_json::to_string(&hulled).unwrap();
        let back: LatticePolytope = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, hulled);
    }

    #[test]
    fn argmax_returns_exactly_the_optimal_vertices(
        pts in point_cloud(),
        raw_w in prop::collection::vec(-5i64..=5, 4),
    ) {
        let cloud: Vec<Vec<Rat>> = pts.iter().map(|p| rat_point(p)).collect();
        let p = LatticePolytope::from_points(cloud).unwrap();
        let w = int_vec(&raw_w[..p.dim]);
        let am: BTreeSet<usize> = argmax_vertices(&p, &w).into_iter().collect();
        let scores: Vec<Rat> = p
            .vertices
            .iter()
            .map(|v| dot(&rat_point(&raw_w[..p.dim]), v))
            .collect();
        let best = scores.iter().max().unwrap();
        let expect: BTreeSet<usize> =
            (0..scores.len()).filter(|&i| &scores[i] == best).collect();
        prop_assert_eq!(am, expect);
    }
}

fn f_eq(x: Rat) -> bool {
    x == rat(0)
}

fn unimodular_setup() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<(usize, usize, i64)>, Vec<i64>)> {
    (
        prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 1..=7),
        prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..=5),
        prop::collection::vec(-3i64..=3, 3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unimodular_images_keep_the_face_lattice((pts, ops, shift) in unimodular_setup()) {
        let mut u: Vec<Vec<i64>> =
            (0..3).map(|i| (0..3).map(|j| i64::from(i == j)).collect()).collect();
        for (i, j, k) in ops {
            if i == j {
                continue;
            }
            if k == 0 {
                u.swap(i, j);
            } else {
                let src = u[i].clone();
                for (t, s) in u[j].iter_mut().zip(&src) {
                    *t += k * s;
                }
            }
        }
        let p = LatticePolytope::from_points(pts.iter().map(|q| rat_point(q)).collect()).unwrap();
        let m = IntMatrix::from_rows(u).unwrap();
        let q = apply_affine(&p, &m, &shift).unwrap();
        prop_assert_eq!(p.vertex_count(), q.vertex_count());
        prop_assert_eq!(p.affine_dim(), q.affine_dim());
        let fp = face_lattice(&p).unwrap();
        let fq = face_lattice(&q).unwrap();
        prop_assert_eq!(&fp.f_vector, &fq.f_vector);
        prop_assert!(lattice_isomorphic(&fp, &fq));
    }
}

fn star_with_relabeling() -> impl Strategy<Value = (usize, Vec<u32>)> {
    (2usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(any::<u32>(), n + 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn piercedness_is_invariant_under_neuron_relabeling((n, keys) in star_with_relabeling()) {
        let code = star_code(n).unwrap();
        let neurons = code.n_neurons();
        prop_assert_eq!(neurons, n + 1);
        let mut perm: Vec<usize> = (0..neurons).collect();
        perm.sort_by_key(|&i| (keys[i], i));
        let shuffled: Vec<Vec<u8>> = code
            .words()
            .iter()
            .map(|w| perm.iter().map(|&i| w[i]).collect())
            .collect();
        let relabeled = NeuralCode::new(neurons, shuffled).unwrap();
        let base = to_abstract(&code).unwrap().is_inductively_pierced(1).unwrap();
        let image = to_abstract(&relabeled).unwrap().is_inductively_pierced(1).unwrap();
        let steps = base.expect("the star family is once pierced");
        let image_steps = image.expect("relabeling must not break piercedness");
        prop_assert_eq!(steps.len(), image_steps.len());
        let zero = to_abstract(&relabeled).unwrap().is_inductively_pierced(0).unwrap();
        prop_assert!(zero.is_none());
    }
}

fn signed_vector() -> impl Strategy<Value = Vec<i64>> {
    (2usize..=6)
        .prop_flat_map(|arity| prop::collection::vec(-3i64..=3, arity))
        .prop_filter("needs a nonzero entry", |v| v.iter().any(|&x| x != 0))
}

proptest! {
    #[test]
    fn binomial_canonical_forms_are_stable(
        u in signed_vector(),
        raw_w in prop::collection::vec(0i64..=5, 6),
    ) {
        let b = Binomial::from_signed(&u).unwrap();
        let neg: Vec<i64> = u.iter().map(|&x| -x).collect();
        let flipped = Binomial::from_signed(&neg).unwrap();
        let canon = b.clone().canonical();
        prop_assert_eq!(&canon, &canon.clone().canonical());
        prop_assert_eq!(&canon, &flipped.canonical());
        prop_assert_eq!(&Binomial::from_signed(&b.signed()).unwrap(), &b);

        let ord = WeightOrder::from_ints(&raw_w[..b.arity()]);
        let oriented = b.clone().oriented(&ord);
        prop_assert_eq!(oriented.clone().canonical(), canon);
        prop_assert_ne!(
            ord.cmp_monomials(oriented.plus(), oriented.minus()),
            std::cmp::Ordering::Less
        );
        if ord.separates(&b) {
            prop_assert_eq!(
                ord.cmp_monomials(oriented.plus(), oriented.minus()),
                std::cmp::Ordering::Greater
            );
        }

        let json = serde_json::to_string(&b).unwrap();
        let back: Binomial = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, b);
    }
}

#[test]
fn aggregate_results_survive_json_roundtrips() {
    let m = code_matrix(&star_code(3).unwrap());
    let u = codetoric::toric::ugb(&m, 6).unwrap();
    let back: codetoric::toric::UgbResult =
        serde_json::from_str(&serde_json::to_string(&u).unwrap()).unwrap();
    assert_eq!(back, u);

    let g = graver(&code_matrix(&pair_code(2).unwrap()), 8).unwrap();
    let back: codetoric::toric::GraverBasis =
        serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
    assert_eq!(back, g);

    let gb = reduced_gb(&u.elements, &WeightOrder::ones(m.ncols())).unwrap();
    let back: codetoric::toric::GroebnerBasis =
        serde_json::from_str(&serde_json::to_string(&gb).unwrap()).unwrap();
    assert_eq!(back, gb);

    let c = pair_code(3).unwrap();
    let back: NeuralCode = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
}

/// Primitive pools for the two smallest interesting families, shared
/// across cases. Every reduced basis of the ideal must reuse elements of
/// its pool verbatim.
fn graver_pools() -> &'static Vec<Vec<Binomial>> {
    static POOLS: OnceLock<Vec<Vec<Binomial>>> = OnceLock::new();
    POOLS.get_or_init(|| {
        let star = graver(&code_matrix(&star_code(4).unwrap()), 6).unwrap();
        let pair = graver(&code_matrix(&pair_code(2).unwrap()), 8).unwrap();
        assert!(star.complete_certified && pair.complete_certified);
        vec![star.elements, pair.elements]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduced_bases_of_random_orders_stay_inside_the_primitive_pool(
        which in 0usize..2,
        raw_w in prop::collection::vec(0i64..=6, 12),
    ) {
        let pool = &graver_pools()[which];
        let arity = pool[0].arity();
        let ord = WeightOrder::from_ints(&raw_w[..arity]);
        let gb = reduced_gb(pool, &ord).unwrap();
        prop_assert!(gb.is_reduced());
        prop_assert!(is_groebner_basis(gb.elements(), &ord).unwrap());
        let pool_set: BTreeSet<Binomial> =
            pool.iter().map(|b| b.clone().canonical()).collect();
        for el in gb.elements() {
            prop_assert!(
                pool_set.contains(&el.clone().canonical()),
                "reduced basis left the primitive pool: {el:?}"
            );
        }
    }
}
