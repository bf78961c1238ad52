mod common;

use std::collections::BTreeSet;

use polyforms::tiling::BUILTIN_NAMES;
use polyforms::{builtin, canonical_form, normalize_translation, Point, SymmetryMode, TilingSpec};
use proptest::prelude::*;

fn patch(spec: &TilingSpec, radius: usize) -> BTreeSet<Point> {
    let mut seen: BTreeSet<Point> = spec.translation_classes().into_iter().map(|(p, _)| p).collect();
    let mut frontier: Vec<Point> = seen.iter().cloned().collect();
    for _ in 0..radius {
        let mut next = Vec::new();
        for p in &frontier {
            for q in spec.neighbors(p).unwrap() {
                if seen.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    seen
}

#[test]
fn adjacency_is_symmetric_on_radius_four_patches() {
    for name in BUILTIN_NAMES {
        let spec = builtin(name).unwrap();
        let inner = patch(&spec, 3);
        for p in &inner {
            for q in spec.neighbors(p).unwrap() {
                assert!(spec.neighbors(&q).unwrap().contains(p), "{name}: {q} -> {p}");
            }
        }
    }
}

fn check_spec(name: &'static str) -> impl Strategy<Value = (TilingSpec, Vec<Point>, usize, Vec<i64>)> {
    let spec = builtin(name).unwrap();
    let d = spec.dim();
    let k = spec.orientations().len();
    (common::polyform_strategy(spec.clone(), 7), 0..k, prop::collection::vec(-4i64..4, d))
        .prop_map(move |(cells, g, t)| (spec.clone(), cells, g, t))
}

fn names() -> impl Strategy<Value = &'static str> {
    prop::sample::select(BUILTIN_NAMES.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn canonical_form_is_invariant_and_idempotent((spec, cells, g, t) in names().prop_flat_map(check_spec)) {
        let shift = Point::from_ints(&t);
        let g = &spec.orientations()[g];
        let moved: Vec<Point> = cells.iter().map(|c| g.apply(c).unwrap().add(&shift).unwrap()).collect();
        let free = canonical_form(&spec, &cells, SymmetryMode::Free).unwrap();
        prop_assert_eq!(canonical_form(&spec, &moved, SymmetryMode::Free).unwrap().into_cells(), free.cells().to_vec());
        prop_assert_eq!(canonical_form(&spec, free.cells(), SymmetryMode::Free).unwrap().into_cells(), free.cells().to_vec());
        let translated: Vec<Point> = cells.iter().map(|c| c.add(&shift).unwrap()).collect();
        for mode in SymmetryMode::ALL {
            let a = canonical_form(&spec, &cells, mode).unwrap();
            prop_assert_eq!(canonical_form(&spec, &translated, mode).unwrap().into_cells(), a.cells().to_vec());
            if mode == SymmetryMode::OneSided && !g.det().is_negative() {
                prop_assert_eq!(canonical_form(&spec, &moved, mode).unwrap().into_cells(), a.cells().to_vec());
            }
        }
    }

    #[test]
    fn neighbors_commute_with_translation((spec, cells, _, t) in names().prop_flat_map(check_spec)) {
        let shift = Point::from_ints(&t);
        for p in &cells {
            let moved: Vec<Point> = spec.neighbors(p).unwrap().iter().map(|q| q.add(&shift).unwrap()).collect();
            let mut direct = spec.neighbors(&p.add(&shift).unwrap()).unwrap();
            let mut moved = moved;
            direct.sort();
            moved.sort();
            prop_assert_eq!(direct, moved);
        }
    }

    #[test]
    fn normalization_is_idempotent((_, cells, _, _) in names().prop_flat_map(check_spec)) {
        let once = normalize_translation(&cells).unwrap();
        prop_assert_eq!(normalize_translation(&once).unwrap(), once.clone());
        for j in 0..once[0].dim() {
            let min = once.iter().map(|c| c.coords()[j].clone()).min().unwrap();
            prop_assert!(!min.is_negative() && min < polyforms::Rat::one());
        }
    }
}
