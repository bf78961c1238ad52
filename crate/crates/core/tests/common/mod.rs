#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use polyforms::canonical::SymmetryMode;
use polyforms::packing::{PieceSet, Region};
use polyforms::{Point, TilingSpec};
use proptest::prelude::*;

pub fn instances_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances")
}

/// A connected cell set grown from a random translation class by random
/// neighbor steps, then moved by a random integer translation.
pub fn grow(spec: &TilingSpec, start: usize, shift: &[i64], steps: &[(usize, usize)]) -> Vec<Point> {
    let classes = spec.translation_classes();
    let t = Point::from_ints(shift);
    let first = classes[start % classes.len()].0.add(&t).unwrap();
    let mut cells = vec![first];
    for &(i, j) in steps {
        let from = &cells[i % cells.len()];
        let ns: Vec<Point> = spec.neighbors(from).unwrap().into_iter().filter(|q| !cells.contains(q)).collect();
        if ns.is_empty() {
            continue;
        }
        let q = ns[j % ns.len()].clone();
        cells.push(q);
    }
    cells
}

pub fn polyform_strategy(spec: TilingSpec, max_extra: usize) -> impl Strategy<Value = Vec<Point>> {
    let d = spec.dim();
    (
        any::<usize>(),
        prop::collection::vec(-5i64..5, d),
        prop::collection::vec((any::<usize>(), any::<usize>()), 0..max_extra),
    )
        .prop_map(move |(s, t, steps)| grow(&spec, s, &t, &steps))
}

pub fn is_connected(spec: &TilingSpec, cells: &[Point]) -> bool {
    let set: BTreeSet<&Point> = cells.iter().collect();
    let mut seen = BTreeSet::new();
    let mut stack = vec![&cells[0]];
    seen.insert(&cells[0]);
    while let Some(p) = stack.pop() {
        for q in spec.neighbors(p).unwrap() {
            if let Some(&r) = set.get(&q) {
                if seen.insert(r) {
                    stack.push(r);
                }
            }
        }
    }
    seen.len() == cells.len()
}

/// Exact-cover count by plain backtracking: always fill the least uncovered
/// cell, whose covering piece must have it as its own least cell.
pub fn naive_pack_count(spec: &TilingSpec, region: &Region, pieces: &PieceSet, mode: SymmetryMode) -> u64 {
    let images: Vec<Vec<Vec<Point>>> = pieces
        .pieces
        .iter()
        .map(|p| {
            let mut out: BTreeSet<Vec<Point>> = BTreeSet::new();
            for k in spec.mode_orientations(mode) {
                let g = &spec.orientations()[k];
                let mut img: Vec<Point> = p.iter().map(|c| g.apply(c).unwrap()).collect();
                img.sort();
                let base = img[0].floor();
                out.insert(img.iter().map(|c| c.sub(&base).unwrap()).collect());
            }
            out.into_iter().collect()
        })
        .collect();
    let mut free: BTreeSet<Point> = region.cells.iter().cloned().collect();
    let mut used = vec![false; pieces.pieces.len()];
    fn go(free: &mut BTreeSet<Point>, used: &mut [bool], images: &[Vec<Vec<Point>>]) -> u64 {
        let Some(target) = free.iter().next().cloned() else { return 1 };
        let mut total = 0;
        for i in 0..images.len() {
            if used[i] {
                continue;
            }
            for img in &images[i] {
                let shift = target.sub(&img[0]).unwrap();
                if !shift.is_integral() {
                    continue;
                }
                let cells: Vec<Point> = img.iter().map(|c| c.add(&shift).unwrap()).collect();
                if !cells.iter().all(|c| free.contains(c)) {
                    continue;
                }
                for c in &cells {
                    free.remove(c);
                }
                used[i] = true;
                total += go(free, used, images);
                used[i] = false;
                free.extend(cells);
            }
        }
        total
    }
    go(&mut free, &mut used, &images)
}
