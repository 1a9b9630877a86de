mod common;

use common::*;
use emptri_core::*;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn generated_sets_agree_with_literal_definition() {
    for n in 1..=40 {
        let h = generate(n).unwrap();
        let pts = coords(h.point_set());
        assert!(naive_is_horton(&pts), "n={n}");
        assert_eq!(pts.iter().map(|p| p.0).collect::<Vec<_>>(), (0..n as i64).collect::<Vec<_>>());
        assert_eq!(h.provenance().size, n);
    }
}

#[test]
fn halves_are_horton_recursively() {
    fn check(set: &PointSet, depth: usize) {
        verify_horton(set).unwrap();
        if set.len() <= 2 || depth > 3 {
            return;
        }
        let sp = split(set.len());
        assert_eq!(sp.lower.len(), set.len().div_ceil(2));
        assert_eq!(sp.upper.len(), set.len() / 2);
        check(&set.subset(&sp.lower), depth + 1);
        check(&set.subset(&sp.upper), depth + 1);
    }
    for n in [5, 16, 33, 100] {
        check(generate(n).unwrap().point_set(), 0);
    }
}

#[test]
fn generation_is_deterministic() {
    let a = format::write_points(generate(200).unwrap().point_set());
    let b = format::write_points(generate(200).unwrap().point_set());
    assert_eq!(a, b);
}

#[test]
fn zero_points_is_rejected() {
    assert!(generate(0).is_err());
}

#[test]
fn certify_rejects_and_accepts() {
    let good = generate(12).unwrap().into_point_set();
    assert!(HortonSet::certify(good.clone()).is_ok());
    // raising a lower point far up breaks the upper-line condition
    let mut pts = good.into_points();
    pts[4].y += BigInt::from(1_000_000_000u64);
    let bad = PointSet::new(pts).unwrap();
    assert!(HortonSet::certify(bad).is_err());
}

const EMPTY_TRIANGLES_32: usize = 1344;

#[test]
fn empty_triangle_count_is_frozen() {
    // Every triangle in a Horton set of size 32 with zero interior points
    // is counted two independent ways; a frozen total guards regressions in
    // both generation and counting.
    let h = generate(32).unwrap();
    let pts = coords(h.point_set());
    let empty = triples(32).filter(|&[a, b, c]| interior_by_signs(&pts, a, b, c) == 0).count();
    let table = InteriorTable::new(h.point_set());
    let fast = triples(32).filter(|&[a, b, c]| table.count(a, b, c) == 0).count();
    assert_eq!(empty, fast);
    assert_eq!(empty, EMPTY_TRIANGLES_32, "update only after an independent recount");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn verify_agrees_with_literal_definition(ys in prop::collection::vec(-12i64..12, 1..9)) {
        let pts: Vec<P> = ys.iter().enumerate().map(|(i, &y)| (i as i64, y)).collect();
        let Ok(set) = PointSet::from_coords(&pts) else { return Ok(()) };
        prop_assert_eq!(verify_horton(&set).is_ok(), naive_is_horton(&pts));
    }

    #[test]
    fn verify_is_scale_invariant_beyond_machine_integers(
        ys in prop::collection::vec(-12i64..12, 1..9),
        shift in prop::sample::select(vec![62usize, 130]),
    ) {
        let pts: Vec<P> = ys.iter().enumerate().map(|(i, &y)| (i as i64, y)).collect();
        let Ok(set) = PointSet::from_coords(&pts) else { return Ok(()) };
        let big = PointSet::new(
            pts.iter().map(|&(x, y)| Point::new(BigInt::from(x) << shift, BigInt::from(y) << shift)).collect(),
        )
        .unwrap();
        prop_assert!(pts.len() == 1 || !big.has_small_coords());
        prop_assert_eq!(verify_horton(&big), verify_horton(&set));
    }

    #[test]
    fn cross_pairs_hold_on_generated_sets(n in 1usize..70) {
        prop_assert!(check_cross_pairs(generate(n).unwrap().point_set()).is_ok());
    }
}
