//! Canonical names of polyforms.
//!
//! A cell set is named by applying every orientation of the symmetry mode,
//! shifting each image by an integer vector so that every axis minimum lands
//! in `[0, 1)`, sorting, and keeping the lexicographically least result.

use std::fmt;
use std::str::FromStr;

use crate::exact::{ExactError, Point};
use crate::tiling::TilingSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymmetryMode {
    /// All orientations.
    Free,
    /// Orientations whose linear part has determinant +1.
    OneSided,
    /// Identity only: forms up to translation.
    Fixed,
}

impl SymmetryMode {
    pub const ALL: [SymmetryMode; 3] = [SymmetryMode::Free, SymmetryMode::OneSided, SymmetryMode::Fixed];

    pub fn as_str(self) -> &'static str {
        match self {
            SymmetryMode::Free => "free",
            SymmetryMode::OneSided => "one-sided",
            SymmetryMode::Fixed => "fixed",
        }
    }
}

impl fmt::Display for SymmetryMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SymmetryMode {
    type Err = CanonicalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "free" => Ok(SymmetryMode::Free),
            "one-sided" | "onesided" => Ok(SymmetryMode::OneSided),
            "fixed" => Ok(SymmetryMode::Fixed),
            _ => Err(CanonicalError::BadMode(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CanonicalError {
    #[error("empty cell set")]
    Empty,
    #[error("{0}: not a cell of this tiling")]
    NotACell(Point),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("unknown symmetry mode {0:?} (expected free, one-sided or fixed)")]
    BadMode(String),
    #[error("malformed form string: {0}")]
    BadForm(String),
}

/// The unique name of a polyform under one symmetry mode.
///
/// Equality and hashing follow the cell list, which is the same thing as
/// following its text serialization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    cells: Vec<Point>,
    mode: SymmetryMode,
    tiling: String,
}

impl CanonicalForm {
    /// Wraps an already canonical cell list. No checks.
    pub fn from_canonical_cells(cells: Vec<Point>, mode: SymmetryMode, tiling: &str) -> Self {
        CanonicalForm { cells, mode, tiling: tiling.to_string() }
    }

    pub fn cells(&self) -> &[Point] {
        &self.cells
    }

    pub fn into_cells(self) -> Vec<Point> {
        self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn mode(&self) -> SymmetryMode {
        self.mode
    }

    pub fn tiling(&self) -> &str {
        &self.tiling
    }
}

/// `0,0;8/21,2/21`
impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_cells(&self.cells))
    }
}

pub fn format_cells(cells: &[Point]) -> String {
    cells.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(";")
}

/// Parses the `;`-separated serialization. Cells are returned as written.
pub fn parse_cells(s: &str) -> Result<Vec<Point>, CanonicalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(CanonicalError::Empty);
    }
    let cells = s
        .split(';')
        .map(|c| c.trim().parse::<Point>().map_err(|_| CanonicalError::BadForm(c.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    let dim = cells[0].dim();
    if let Some(bad) = cells.iter().find(|c| c.dim() != dim) {
        return Err(ExactError::DimensionMismatch { expected: dim, found: bad.dim() }.into());
    }
    Ok(cells)
}

/// Shifts by the integer vector `-floor(min_j)` per axis and sorts.
pub fn normalize_translation(cells: &[Point]) -> Result<Vec<Point>, CanonicalError> {
    let first = cells.first().ok_or(CanonicalError::Empty)?;
    let dim = first.dim();
    let mut mins = first.coords().to_vec();
    for c in &cells[1..] {
        if c.dim() != dim {
            return Err(ExactError::DimensionMismatch { expected: dim, found: c.dim() }.into());
        }
        for (m, x) in mins.iter_mut().zip(c.coords()) {
            if x < m {
                *m = x.clone();
            }
        }
    }
    let shift = Point::new(mins.iter().map(|m| -m.floor()).collect());
    let mut out: Vec<Point> = cells.iter().map(|c| c.add(&shift).expect("same dimension")).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// The normalized image under each orientation of the mode, in orientation
/// order, paired with the orientation index.
pub fn canonical_candidates(
    spec: &TilingSpec,
    cells: &[Point],
    mode: SymmetryMode,
) -> Result<Vec<(usize, Vec<Point>)>, CanonicalError> {
    if cells.is_empty() {
        return Err(CanonicalError::Empty);
    }
    for c in cells {
        if c.dim() != spec.dim() {
            return Err(ExactError::DimensionMismatch { expected: spec.dim(), found: c.dim() }.into());
        }
        if !spec.is_cell(c) {
            return Err(CanonicalError::NotACell(c.clone()));
        }
    }
    spec.mode_orientations(mode)
        .into_iter()
        .map(|k| {
            let g = &spec.orientations()[k];
            let image: Vec<Point> = cells.iter().map(|c| g.apply(c)).collect::<Result<_, _>>()?;
            Ok((k, normalize_translation(&image)?))
        })
        .collect()
}

pub fn canonical_form(spec: &TilingSpec, cells: &[Point], mode: SymmetryMode) -> Result<CanonicalForm, CanonicalError> {
    let best =
        canonical_candidates(spec, cells, mode)?.into_iter().map(|(_, c)| c).min().expect("identity is in every mode");
    Ok(CanonicalForm { cells: best, mode, tiling: spec.name().to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::AffineMap;
    use crate::tiling::builtin;
    use proptest::prelude::*;

    fn pt(v: &[(i64, i64)]) -> Point {
        Point::from_fracs(v)
    }

    fn snub() -> TilingSpec {
        builtin("snub-trihexagonal").unwrap()
    }

    #[test]
    fn normalize_examples() {
        let a = normalize_translation(&[Point::zero(2), pt(&[(-10, 21), (8, 21)])]).unwrap();
        assert_eq!(format_cells(&a), "11/21,8/21;1,0");
        let b = normalize_translation(&[Point::zero(2), pt(&[(-8, 21), (-2, 21)])]).unwrap();
        assert_eq!(format_cells(&b), "13/21,19/21;1,1");
        let c = normalize_translation(&[Point::from_ints(&[5, 7]), Point::from_ints(&[6, 7])]).unwrap();
        assert_eq!(format_cells(&c), "0,0;1,0");
        assert_eq!(normalize_translation(&[]), Err(CanonicalError::Empty));
    }

    #[test]
    fn worked_example() {
        let s = snub();
        let p = [pt(&[(-10, 21), (8, 21)]), Point::zero(2)];
        let cands: std::collections::BTreeSet<String> = canonical_candidates(&s, &p, SymmetryMode::Free)
            .unwrap()
            .into_iter()
            .map(|(_, c)| format_cells(&c))
            .collect();
        let expected: std::collections::BTreeSet<String> = [
            "11/21,8/21;1,0",
            "19/21,10/21;1,0",
            "0,0;8/21,2/21",
            "0,1;10/21,13/21",
            "0,1;2/21,11/21",
            "13/21,19/21;1,1",
        ]
        .into_iter()
        .map(String::from)
        .collect();
        assert_eq!(cands, expected);
        assert_eq!(canonical_form(&s, &p, SymmetryMode::Free).unwrap().to_string(), "0,0;8/21,2/21");
    }

    #[test]
    fn singleton_hexagon() {
        let s = snub();
        for mode in SymmetryMode::ALL {
            assert_eq!(canonical_form(&s, &[Point::zero(2)], mode).unwrap().to_string(), "0,0");
        }
    }

    #[test]
    fn triangle_pair_name() {
        let s = snub();
        let pair = [pt(&[(8, 21), (2, 21)]), pt(&[(13, 21), (-2, 21)])];
        let f = canonical_form(&s, &pair, SymmetryMode::Free).unwrap();
        assert_eq!(f.to_string(), "8/21,23/21;13/21,19/21");
    }

    #[test]
    fn non_cell_rejected() {
        let err = canonical_form(&snub(), &[pt(&[(1, 2), (1, 2)])], SymmetryMode::Free).unwrap_err();
        assert!(err.to_string().contains("not a cell of this tiling"));
    }

    #[test]
    fn parse_round_trip_and_modes() {
        let cells = parse_cells("0,0;8/21,23/21").unwrap();
        assert_eq!(format_cells(&cells), "0,0;8/21,23/21");
        assert!(parse_cells("0,0;1").is_err());
        assert!(parse_cells("0,x").is_err());
        for m in SymmetryMode::ALL {
            assert_eq!(m.to_string().parse::<SymmetryMode>().unwrap(), m);
        }
        assert!("mirror".parse::<SymmetryMode>().is_err());
    }

    #[test]
    fn orientation_order_is_irrelevant() {
        let s = snub();
        let mut os = s.orientations().to_vec();
        os[1..].reverse();
        let permuted = s.with_orientations(os);
        let p = [pt(&[(1, 3), (1, 3)]), pt(&[(8, 21), (2, 21)]), Point::zero(2)];
        for mode in SymmetryMode::ALL {
            assert_eq!(
                canonical_form(&s, &p, mode).unwrap().cells(),
                canonical_form(&permuted, &p, mode).unwrap().cells()
            );
        }
    }

    /// A connected random cell set: a walk over neighbors.
    fn random_form(spec: &TilingSpec, seed: &[usize], start: usize) -> Vec<Point> {
        let classes = spec.translation_classes();
        let mut cells = vec![classes[start % classes.len()].0.clone()];
        for &s in seed {
            let from = cells[s % cells.len()].clone();
            let ns = spec.neighbors(&from).unwrap();
            let q = ns[(s / 7) % ns.len()].clone();
            if !cells.contains(&q) {
                cells.push(q);
            }
        }
        cells
    }

    fn group_element(spec: &TilingSpec, mode: SymmetryMode, k: usize, t: &[i64]) -> AffineMap {
        let ks = spec.mode_orientations(mode);
        let g = &spec.orientations()[ks[k % ks.len()]];
        let shift = Point::from_ints(&t[..spec.dim()]);
        AffineMap::translation(shift).compose(g).unwrap()
    }

    fn check_invariance(
        name: &str,
        seed: Vec<usize>,
        start: usize,
        k: usize,
        t: Vec<i64>,
    ) -> Result<(), TestCaseError> {
        let spec = builtin(name).unwrap();
        let cells = random_form(&spec, &seed, start);
        for mode in SymmetryMode::ALL {
            let g = group_element(&spec, mode, k, &t);
            let moved: Vec<Point> = cells.iter().map(|c| g.apply(c).unwrap()).collect();
            let a = canonical_form(&spec, &cells, mode).unwrap();
            let b = canonical_form(&spec, &moved, mode).unwrap();
            prop_assert_eq!(&a, &b);
            let again = canonical_form(&spec, a.cells(), mode).unwrap();
            prop_assert_eq!(&again, &a);
        }
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn invariance_snub(seed in proptest::collection::vec(0usize..1000, 0..6), start in 0usize..9, k in 0usize..48, t in proptest::collection::vec(-3i64..4, 3)) {
            check_invariance("snub-trihexagonal", seed, start, k, t)?;
        }

        #[test]
        fn invariance_tet_oct(seed in proptest::collection::vec(0usize..1000, 0..5), start in 0usize..9, k in 0usize..48, t in proptest::collection::vec(-3i64..4, 3)) {
            check_invariance("tet-oct", seed, start, k, t)?;
        }
    }
}
