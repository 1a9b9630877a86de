mod common;

use common::*;
use emptri_core::random::{random_general_position, rng_from_seed};
use emptri_core::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn random_coloring(n: usize, c: u32, seed: u64) -> Coloring {
    let mut rng = rng_from_seed(seed);
    Coloring::new((0..n).map(|_| rng.random_range(1..=c)).collect(), c).unwrap()
}

#[test]
fn cyclic_coloring_patterns() {
    assert_eq!(cyclic_coloring(7, 3).unwrap().colors(), &[1, 2, 3, 1, 2, 3, 1]);
    assert_eq!(cyclic_coloring(7, 4).unwrap().colors(), &[1, 2, 3, 1, 2, 3, 4]);
    assert_eq!(cyclic_coloring(2, 2).unwrap().colors(), &[1, 2]);
    assert!(cyclic_coloring(4, 5).is_err());
    assert!(cyclic_coloring(4, 1).is_err());
    for c in 2..=9 {
        assert!(cyclic_coloring(40, c).unwrap().is_surjective());
    }
}

/// For odd `c`, the coloring induced on either half of the x-order is again
/// cyclic up to renaming colors, which is what lets the interior-count
/// bound recurse into the halves.
#[test]
fn cyclic_coloring_restricts_to_cyclic_halves() {
    for c in [3u32, 5, 7] {
        for n in (2 * c as usize)..=80 {
            let col = cyclic_coloring(n, c).unwrap();
            let sp = split(n);
            for half in [&sp.lower, &sp.upper] {
                let induced: Vec<u32> = half.iter().map(|&i| col.color(i)).collect();
                let base = cyclic_coloring(half.len(), c).unwrap();
                let perm: Vec<u32> = induced[..c as usize].to_vec();
                assert_eq!(base.relabel(&perm).unwrap().colors(), &induced[..], "c={c} n={n}");
            }
        }
    }
}

#[test]
fn scan_matches_naive_enumeration() {
    for seed in 0..40u64 {
        let n = 6 + (seed as usize % 15);
        let set = random_general_position(n, 60, &mut rng_from_seed(seed)).unwrap();
        let pts = coords(&set);
        let c = 1 + (seed % 4) as u32;
        let col = random_coloring(n, c, seed + 1000);
        for s in 0..3 {
            let report = scan(&set, &col, s).unwrap();
            let colors = col.colors();
            let mono: Vec<([usize; 3], u32)> = triples(n)
                .filter(|&[a, b, c]| colors[a] == colors[b] && colors[b] == colors[c])
                .map(|t| (t, interior_by_signs(&pts, t[0], t[1], t[2])))
                .collect();
            let qualifying: Vec<_> = mono.iter().filter(|(_, k)| *k <= s).collect();
            assert_eq!(report.mono_count, mono.len() as u64);
            assert_eq!(report.qualifying_count, qualifying.len() as u64);
            assert_eq!(report.min_interior_mono, mono.iter().map(|m| m.1).min());
            match (report.first_hit, qualifying.first()) {
                (None, None) => {}
                (Some(hit), Some((t, k))) => {
                    assert_eq!(hit.triangle.vertices(), *t);
                    assert_eq!(hit.interior, *k);
                    assert_eq!(hit.mono_color, Some(colors[t[0]]));
                }
                other => panic!("first hit mismatch: {other:?}"),
            }
            let scanner = Scanner::new(&set);
            assert_eq!(scanner.has_small_mono(colors, s), !qualifying.is_empty());
            let full = scanner.scan_full(&col, s).unwrap();
            let records = full.records.as_ref().unwrap();
            assert_eq!(records.len(), n * (n - 1) * (n - 2) / 6);
            assert_eq!(full.qualifying_count, report.qualifying_count);
            assert_eq!(full.first_hit, report.first_hit);
        }
        let stats = min_interior_statistics(&set, &col).unwrap();
        for (k, class) in col.classes().iter().enumerate() {
            let want = triples(class.len())
                .map(|[a, b, c]| interior_by_signs(&pts, class[a], class[b], class[c]))
                .min();
            assert_eq!(stats.get(&(k as u32 + 1)).copied(), want);
        }
    }
}

#[test]
fn scan_rejects_wrong_length() {
    let set = PointSet::from_coords(&[(0, 0), (1, 0), (0, 1)]).unwrap();
    assert!(scan(&set, &Coloring::new(vec![1, 1], 1).unwrap(), 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scan_is_equivariant_under_color_permutation(seed in any::<u64>(), c in 1u32..6, s in 0u32..4) {
        let set = random_general_position(14, 100, &mut rng_from_seed(seed)).unwrap();
        let col = random_coloring(14, c, seed ^ 0x5eed);
        let mut perm: Vec<u32> = (1..=c).collect();
        perm.shuffle(&mut rng_from_seed(seed.wrapping_add(1)));
        let moved = col.relabel(&perm).unwrap();
        let (r1, r2) = (scan(&set, &col, s).unwrap(), scan(&set, &moved, s).unwrap());
        prop_assert_eq!(r1.mono_count, r2.mono_count);
        prop_assert_eq!(r1.qualifying_count, r2.qualifying_count);
        prop_assert_eq!(r1.min_interior_mono, r2.min_interior_mono);
        prop_assert_eq!(r1.first_hit.map(|h| (h.triangle, h.interior)), r2.first_hit.map(|h| (h.triangle, h.interior)));
        prop_assert_eq!(
            r1.first_hit.and_then(|h| h.mono_color).map(|k| perm[k as usize - 1]),
            r2.first_hit.and_then(|h| h.mono_color)
        );
    }

    #[test]
    fn point_files_round_trip(seed in any::<u64>(), n in 3usize..30, c in 1u32..5) {
        let set = random_general_position(n, 1000, &mut rng_from_seed(seed)).unwrap();
        let text = format::write_points(&set);
        let (back, none) = format::read_point_set(&text).unwrap();
        prop_assert_eq!(&back, &set);
        prop_assert!(none.is_none());
        let col = random_coloring(n, c, seed);
        let colored = format::write_colored_points(&set, &col).unwrap();
        let (back, colors) = format::read_point_set(&colored).unwrap();
        prop_assert_eq!(&back, &set);
        prop_assert_eq!(colors.as_deref(), Some(col.colors()));
        let standalone = format::write_coloring(&col);
        prop_assert_eq!(format::parse_coloring(&standalone, n).unwrap(), col.colors().to_vec());
    }
}
