use discarr::arrangement::rows_generic;
use discarr::discriminantal::build_disc;
use discarr::exactmath::{rat, EchelonBasis, RatMatrix, Rational};
use discarr::fixtures::load_fixture;
use discarr::matroid::{
    dilworth_rank, extends_independent, for_each_independent, is_very_generic, masks_independent,
};
use discarr::subset::{binomial, k_subsets, SubsetFamily};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn prop61() -> RatMatrix {
    load_fixture("prop-6-1").unwrap().arrangement.coeffs().clone()
}

fn ex51() -> RatMatrix {
    load_fixture("example-5-1").unwrap().arrangement.coeffs().clone()
}

/// Walks every family of Disc rows that is independent either as rows or in
/// the Dilworth sense. Once both fail, every superset fails too, so the walk
/// covers all 2^20 families.
#[test]
fn rows_represent_dilworth_matroid_exhaustively() {
    let a = prop61();
    assert!(is_very_generic(&a).unwrap().verdict);
    let d = build_disc(&a).unwrap();
    let masks: Vec<u64> = d.subsets().iter().map(|s| s.mask()).collect();

    fn rec(
        i: usize,
        d: &[&[Rational]],
        masks: &[u64],
        chosen: &mut Vec<u64>,
        basis: &mut EchelonBasis,
        seen: &mut usize,
    ) {
        *seen += 1;
        for j in i..masks.len() {
            let dil = extends_independent(chosen, masks[j], 2);
            let row = basis.insert(d[j]);
            assert_eq!(dil, row, "disagreement adding {:#b} to {:?}", masks[j], chosen);
            if row {
                chosen.push(masks[j]);
                rec(j + 1, d, masks, chosen, basis, seen);
                chosen.pop();
                basis.pop();
            }
        }
    }
    let rows: Vec<&[Rational]> = (0..d.len()).map(|i| d.normal(i)).collect();
    let mut seen = 0;
    rec(
        0,
        &rows,
        &masks,
        &mut Vec::new(),
        &mut EchelonBasis::new(6),
        &mut seen,
    );
    // empty family plus the 4650 nonempty independent ones
    assert_eq!(seen, 4651);
}

#[test]
fn dilworth_rank_matches_row_rank_on_small_and_random_families() {
    let a = prop61();
    let d = build_disc(&a).unwrap();
    let subsets = d.subsets().to_vec();
    let check = |idx: &[usize]| {
        let f = SubsetFamily::new(6, 2, idx.iter().map(|&i| subsets[i].clone()).collect()).unwrap();
        let r = if idx.is_empty() {
            0
        } else {
            d.normals().select_rows(idx).unwrap().rank()
        };
        assert_eq!(dilworth_rank(&f).unwrap(), r, "{f}");
    };
    let mut count = 0;
    for size in 0..=5 {
        for combo in k_subsets(20, size) {
            let idx: Vec<usize> = combo.elements().iter().map(|e| e - 1).collect();
            check(&idx);
            count += 1;
        }
    }
    assert_eq!(count, (0..=5).map(|s| binomial(20, s)).sum::<usize>());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..2000 {
        let idx: Vec<usize> = (0..20).filter(|_| rng.gen_bool(0.5)).collect();
        check(&idx);
    }
}

#[test]
fn walk_visits_exactly_the_independent_collections() {
    let circuits: Vec<u64> = k_subsets(6, 3).iter().map(|s| s.mask()).collect();
    let mut brute = 0;
    for size in 1..=4 {
        for combo in k_subsets(20, size) {
            let m: Vec<u64> = combo.elements().iter().map(|&e| circuits[e - 1]).collect();
            if masks_independent(&m, 2) {
                brute += 1;
            }
        }
    }
    let mut walked = 0;
    for_each_independent(6, 2, 4, |_| {
        walked += 1;
        true
    });
    assert_eq!(walked, brute);
    assert_eq!(is_very_generic(&prop61()).unwrap().checked, brute);
}

#[test]
fn downward_closed_at_seven() {
    let circuits: Vec<u64> = k_subsets(7, 3).iter().map(|s| s.mask()).collect();
    let mut families = 0;
    for_each_independent(7, 2, 5, |idx| {
        families += 1;
        let m: Vec<u64> = idx.iter().map(|&i| circuits[i]).collect();
        for drop in 0..m.len() {
            let mut sub = m.clone();
            sub.remove(drop);
            assert!(masks_independent(&sub, 2));
        }
        true
    });
    assert!(families > 0);
}

#[test]
fn basis_kernel_is_the_column_space() {
    let a = prop61();
    let d = build_disc(&a).unwrap();
    // {1,2,3},{1,2,4},{1,2,5},{1,2,6} sit first in dictionary order
    let basis = SubsetFamily::from_lists(6, 2, &[&[1, 2, 3], &[1, 2, 4], &[1, 2, 5], &[1, 2, 6]]).unwrap();
    assert_eq!(dilworth_rank(&basis).unwrap(), 4);
    let rows = d.normals().select_rows(&[0, 1, 2, 3]).unwrap();
    let kernel = rows.nullspace();
    assert_eq!(kernel.cols(), 2);
    // columns of A and the kernel basis span the same plane
    let mut joint = a.transpose().row_vecs();
    joint.extend(kernel.transpose().row_vecs());
    assert_eq!(RatMatrix::from_rows(joint).unwrap().rank(), 2);
    assert!(d.normals().mul(&a).unwrap().is_zero());
}

#[test]
fn random_integer_matrices_are_very_generic() {
    let mut rng = ChaCha8Rng::seed_from_u64(1000);
    let mut tried = 0;
    let mut failures = Vec::new();
    while tried < 5 {
        let rows: Vec<Vec<Rational>> = (0..6)
            .map(|_| (0..2).map(|_| rat(rng.gen_range(-1000..=1000))).collect())
            .collect();
        let a = RatMatrix::from_rows(rows).unwrap();
        if !rows_generic(&a) {
            continue;
        }
        tried += 1;
        let cert = is_very_generic(&a).unwrap();
        if !cert.verdict {
            failures.push(cert.witness);
        }
    }
    assert!(failures.is_empty(), "non very generic samples: {failures:?}");
}

fn scaled(a: &RatMatrix, factors: &[i64]) -> RatMatrix {
    RatMatrix::from_rows(
        a.row_vecs()
            .into_iter()
            .zip(factors)
            .map(|(row, &f)| {
                row.into_iter()
                    .map(|x| x * Rational::from_integer(f.into()))
                    .collect()
            })
            .collect(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn verdict_ignores_row_scaling(factors in prop::collection::vec((1i64..20).prop_union(-20i64..0), 6)) {
        for (a, expected) in [(prop61(), true), (ex51(), false)] {
            let b = scaled(&a, &factors);
            prop_assert_eq!(is_very_generic(&b).unwrap().verdict, expected);
        }
    }
}
