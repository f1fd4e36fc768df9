//! Frozen expected values for the code families and their universal bases.
//! Everything here was computed independently (by hand or by a second
//! method) before being pinned, so regressions in any one pipeline stage
//! cannot hide behind agreement with itself.

use std::collections::BTreeSet;

use codetoric::codes::{pair_code, path_code, star_code, to_abstract, NeuralCode, PiercingStep};
use codetoric::nestedsets::{
    conjecture_report, delannoy_by_diagonals, vertex_count_formula,
};
use codetoric::toric::{
    claimed_ugb_pair, claimed_ugb_star, code_matrix, ugb, Binomial, UgbRoute,
};

fn canonical_set(els: &[Binomial]) -> BTreeSet<Binomial> {
    els.iter().map(|b| b.clone().canonical()).collect()
}

/// Binomial from 1-based variable index lists, for transcribing tables.
fn from_indices(arity: usize, plus: &[usize], minus: &[usize]) -> Binomial {
    let mut p = vec![0u32; arity];
    let mut m = vec![0u32; arity];
    for &i in plus {
        p[i - 1] += 1;
    }
    for &i in minus {
        m[i - 1] += 1;
    }
    Binomial::new(p, m).unwrap().canonical()
}

#[test]
fn star_universal_bases_match_the_closed_form() {
    for n in 2..=4usize {
        let m = code_matrix(&star_code(n).unwrap());
        let r = ugb(&m, 6).unwrap();
        assert!(r.certified, "n={n}");
        assert_eq!(r.route, UgbRoute::StarTransform, "n={n}");
        assert_eq!(r.elements.len(), n * (n - 1) / 2, "n={n}");
        assert_eq!(canonical_set(&r.elements), canonical_set(&claimed_ugb_star(n)), "n={n}");
    }
}

#[test]
fn pair_universal_bases_match_the_closed_form() {
    for n in 1..=3usize {
        let m = code_matrix(&pair_code(n).unwrap());
        let r = ugb(&m, 8).unwrap();
        assert!(r.certified, "n={n}");
        assert_eq!(r.elements.len(), n + n * (n - 1) / 2, "n={n}");
        assert_eq!(canonical_set(&r.elements), canonical_set(&claimed_ugb_pair(n)), "n={n}");
    }
}

#[test]
fn short_path_universal_basis_is_three_quadrics() {
    let m = code_matrix(&path_code(&[2]).unwrap());
    let r = ugb(&m, 8).unwrap();
    assert!(r.certified);
    let expected: BTreeSet<Binomial> = [
        from_indices(6, &[1, 3], &[2, 6]),
        from_indices(6, &[3, 5], &[4, 6]),
        from_indices(6, &[1, 4], &[2, 5]),
    ]
    .into_iter()
    .collect();
    assert_eq!(canonical_set(&r.elements), expected);
}

#[test]
fn long_path_universal_basis_matches_the_worked_table() {
    let m = code_matrix(&path_code(&[5]).unwrap());
    let r = ugb(&m, 10).unwrap();
    assert!(r.certified);
    assert_eq!(r.route, UgbRoute::Unimodular);
    assert_eq!(r.degree_census(), vec![(2, 9), (3, 11), (4, 3)]);

    let quadrics: [(&[usize], &[usize]); 9] = [
        (&[9, 11], &[10, 12]),
        (&[7, 10], &[8, 11]),
        (&[7, 9], &[8, 12]),
        (&[5, 8], &[6, 9]),
        (&[5, 7], &[6, 12]),
        (&[3, 6], &[4, 7]),
        (&[3, 5], &[4, 12]),
        (&[1, 4], &[2, 5]),
        (&[1, 3], &[2, 12]),
    ];
    let cubics: [(&[usize], &[usize]); 11] = [
        (&[5, 7, 10], &[6, 9, 11]),
        (&[3, 5, 8], &[4, 7, 9]),
        (&[3, 5, 10], &[4, 9, 11]),
        (&[1, 3, 8], &[2, 7, 9]),
        (&[1, 3, 6], &[2, 5, 7]),
        (&[1, 3, 10], &[2, 9, 11]),
        (&[5, 8, 11], &[6, 10, 12]),
        (&[3, 6, 10], &[4, 8, 11]),
        (&[3, 6, 9], &[4, 8, 12]),
        (&[1, 4, 8], &[2, 6, 9]),
        (&[1, 4, 7], &[2, 6, 12]),
    ];
    let quartics: [(&[usize], &[usize]); 3] = [
        (&[1, 3, 6, 10], &[2, 5, 8, 11]),
        (&[1, 4, 7, 10], &[2, 6, 9, 11]),
        (&[1, 4, 8, 11], &[2, 6, 10, 12]),
    ];
    let expected: BTreeSet<Binomial> = quadrics
        .iter()
        .chain(cubics.iter())
        .chain(quartics.iter())
        .map(|&(p, m)| from_indices(12, p, m))
        .collect();
    assert_eq!(expected.len(), 23);
    assert_eq!(canonical_set(&r.elements), expected);
}

#[test]
fn delannoy_slices_and_their_totals() {
    assert_eq!(delannoy_by_diagonals(1, 0), 2);
    assert_eq!(delannoy_by_diagonals(1, 1), 1);
    assert_eq!(delannoy_by_diagonals(2, 0), 6);
    assert_eq!(delannoy_by_diagonals(2, 1), 6);
    assert_eq!(delannoy_by_diagonals(2, 2), 1);
    for (m, total) in [(1u64, 3u64), (2, 13), (3, 63), (4, 321)] {
        let s: u64 = (0..=m).map(|k| delannoy_by_diagonals(m as usize, k as usize)).sum();
        assert_eq!(s, total, "m={m}");
    }
}

#[test]
fn face_count_candidates_on_the_hexagon() {
    let report = conjecture_report(3, &[6, 6, 1]);
    assert!(!report.formula_matches);
    assert!(report.delannoy_matches);
}

#[test]
fn arrangement_vertex_counts() {
    assert_eq!(
        (1..=4).map(vertex_count_formula).collect::<Vec<_>>(),
        vec![2, 5, 16, 65]
    );
}

/// Re-check every step of a removal certificate against the shrinking
/// description, independently of the search that produced it.
fn replay_certificate(code: &NeuralCode, steps: &[PiercingStep], k: usize) {
    let mut d = to_abstract(code).unwrap();
    for s in steps {
        assert!(s.pierced_set.len() <= k);
        let w = d.is_k_piercing(&s.pierced_set, s.label).unwrap();
        assert!(w.is_some(), "step for label {} does not verify", s.label);
        assert!(
            d.zones_as_sets().contains(&s.background_zone),
            "recorded background zone is not a zone"
        );
        d = d.remove_label(s.label).unwrap();
    }
    assert!(d.labels().is_empty());
    assert_eq!(d.zones().len(), 1);
}

#[test]
fn star_codes_are_once_pierced_with_verifiable_certificates() {
    for n in 2..=4usize {
        let code = star_code(n).unwrap();
        let d = to_abstract(&code).unwrap();
        let steps = d.is_inductively_pierced(1).unwrap().expect("a certificate");
        assert_eq!(steps.len(), n + 1, "one step per curve at n={n}");
        replay_certificate(&code, &steps, 1);
        assert!(d.is_inductively_pierced(0).unwrap().is_none(), "n={n}");
    }
}

#[test]
fn pair_codes_are_once_pierced_with_verifiable_certificates() {
    for n in 1..=3usize {
        let code = pair_code(n).unwrap();
        let d = to_abstract(&code).unwrap();
        let steps = d.is_inductively_pierced(1).unwrap().expect("a certificate");
        assert_eq!(steps.len(), 2 * n + 1, "one step per curve at n={n}");
        replay_certificate(&code, &steps, 1);
        if n >= 2 {
            assert!(d.is_inductively_pierced(0).unwrap().is_none(), "n={n}");
        }
    }
}
