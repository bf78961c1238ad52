//! Slow, independent polyform counts for cross-checking the engine.
//!
//! Works on exact points only and never computes a canonical form. Every
//! connected set is stored translated so that its lexicographically least
//! cell lies in `[0, 1)^d`; two such sets are translates of each other iff
//! they are equal, which gives the fixed counts directly. Free and one-sided
//! counts merge fixed classes with a union-find over orientation images.

use std::collections::{BTreeSet, HashMap};

use crate::canonical::SymmetryMode;
use crate::exact::Point;
use crate::tiling::{TilingError, TilingSpec};

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("patch of radius {radius} is too small: a {n}-cell set reaches {cell}")]
    PatchTooSmall { radius: usize, n: usize, cell: Point },
    #[error(transparent)]
    Tiling(#[from] TilingError),
}

/// Counts for `n = 1..=n_max`, using the smallest patch that provably holds
/// every normalized set.
pub fn brute_oracle(spec: &TilingSpec, mode: SymmetryMode, n_max: usize) -> Result<Vec<u64>, OracleError> {
    brute_oracle_with_radius(spec, mode, n_max, n_max.saturating_sub(1))
}

/// As [`brute_oracle`] with an explicit patch radius: the ball of that graph
/// radius around the cells of `[0, 1)^d`.
pub fn brute_oracle_with_radius(
    spec: &TilingSpec,
    mode: SymmetryMode,
    n_max: usize,
    radius: usize,
) -> Result<Vec<u64>, OracleError> {
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let patch = patch(spec, radius)?;
    let inside = |set: &[Point], n: usize| -> Result<(), OracleError> {
        match set.iter().find(|c| !patch.contains(*c)) {
            Some(c) => Err(OracleError::PatchTooSmall { radius, n, cell: c.clone() }),
            None => Ok(()),
        }
    };

    let mut level: BTreeSet<Vec<Point>> = spec.translation_classes().into_iter().map(|(p, _)| vec![p]).collect();
    let mut counts = Vec::new();
    for n in 1..=n_max {
        if n > 1 {
            let mut next = BTreeSet::new();
            for set in &level {
                for p in set {
                    for q in spec.neighbors(p)? {
                        if set.contains(&q) {
                            continue;
                        }
                        let mut grown = set.clone();
                        grown.push(q);
                        let grown = anchor(grown);
                        inside(&grown, n)?;
                        next.insert(grown);
                    }
                }
            }
            level = next;
        }
        counts.push(classes(spec, mode, &level, |s| inside(s, n))? as u64);
    }
    Ok(counts)
}

fn patch(spec: &TilingSpec, radius: usize) -> Result<BTreeSet<Point>, OracleError> {
    let mut seen: BTreeSet<Point> = spec.translation_classes().into_iter().map(|(p, _)| p).collect();
    let mut frontier: Vec<Point> = seen.iter().cloned().collect();
    for _ in 0..radius {
        let mut next = Vec::new();
        for p in &frontier {
            for q in spec.neighbors(p)? {
                if seen.insert(q.clone()) {
                    next.push(q);
                }
            }
        }
        frontier = next;
    }
    Ok(seen)
}

/// Sorts and translates so the least cell lies in `[0, 1)^d`.
fn anchor(mut set: Vec<Point>) -> Vec<Point> {
    set.sort();
    let shift = set[0].floor().neg();
    set.iter().map(|c| c.add(&shift).expect("same dimension")).collect()
}

fn classes(
    spec: &TilingSpec,
    mode: SymmetryMode,
    level: &BTreeSet<Vec<Point>>,
    inside: impl Fn(&[Point]) -> Result<(), OracleError>,
) -> Result<usize, OracleError> {
    let sets: Vec<&Vec<Point>> = level.iter().collect();
    let index: HashMap<&Vec<Point>, usize> = sets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut parent: Vec<usize> = (0..sets.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, set) in sets.iter().enumerate() {
        for k in spec.mode_orientations(mode) {
            let g = &spec.orientations()[k];
            let image = anchor(set.iter().map(|c| g.apply(c).expect("same dimension")).collect());
            inside(&image)?;
            let j = *index.get(&image).ok_or_else(|| OracleError::PatchTooSmall {
                radius: usize::MAX,
                n: set.len(),
                cell: image[0].clone(),
            })?;
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
    }
    Ok((0..sets.len()).filter(|&i| find(&mut parent, i) == i).count())
}
