use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::{ExactError, Rat};

/// A point in lattice-basis coordinates.
///
/// Ordering is lexicographic by coordinate. Points of different dimension
/// still compare (shorter prefix first) so they can live in ordered
/// collections, but [`point_cmp`] rejects the mismatch.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    coords: Vec<Rat>,
}

impl Point {
    pub fn new(coords: Vec<Rat>) -> Point {
        Point { coords }
    }

    pub fn zero(dim: usize) -> Point {
        Point { coords: vec![Rat::zero(); dim] }
    }

    pub fn from_ints(v: &[i64]) -> Point {
        Point { coords: v.iter().map(|&x| Rat::from_int(x)).collect() }
    }

    /// Builds a point from `(numerator, denominator)` pairs.
    pub fn from_fracs(v: &[(i64, i64)]) -> Point {
        Point { coords: v.iter().map(|&(n, d)| Rat::new(n, d)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Rat> {
        self.coords
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(Rat::is_integer)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|c| !c.is_negative())
    }

    pub fn add(&self, other: &Point) -> Result<Point, ExactError> {
        check_dim(self.dim(), other.dim())?;
        Ok(Point { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Point) -> Result<Point, ExactError> {
        check_dim(self.dim(), other.dim())?;
        Ok(Point { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() })
    }

    pub fn neg(&self) -> Point {
        Point { coords: self.coords.iter().map(|c| -c).collect() }
    }

    /// Shift into `[0, 1)^d` by an integer vector.
    pub fn normalize_mod1(&self) -> Point {
        Point { coords: self.coords.iter().map(Rat::fract_pos).collect() }
    }

    /// Componentwise floor.
    pub fn floor(&self) -> Point {
        Point { coords: self.coords.iter().map(Rat::floor).collect() }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<(), ExactError> {
    if expected == found {
        Ok(())
    } else {
        Err(ExactError::DimensionMismatch { expected, found })
    }
}

/// Lexicographic comparison of two points of equal dimension.
pub fn point_cmp(a: &Point, b: &Point) -> Result<Ordering, ExactError> {
    check_dim(a.dim(), b.dim())?;
    Ok(a.coords.cmp(&b.coords))
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Comma-separated rationals, e.g. `8/21,2/21`.
impl FromStr for Point {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Point, ExactError> {
        let coords = s.split(',').map(|c| c.trim().parse()).collect::<Result<Vec<Rat>, _>>()?;
        Ok(Point { coords })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[(i64, i64)]) -> Point {
        Point::from_fracs(v)
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(point_cmp(&p(&[(0, 1), (0, 1)]), &p(&[(8, 21), (2, 21)])).unwrap(), Ordering::Less);
        assert_eq!(point_cmp(&p(&[(2, 21), (11, 21)]), &p(&[(2, 21), (11, 21)])).unwrap(), Ordering::Equal);
        assert_eq!(point_cmp(&p(&[(11, 21), (8, 21)]), &p(&[(1, 1), (0, 1)])).unwrap(), Ordering::Less);
    }

    #[test]
    fn cmp_dimension_mismatch() {
        let err = point_cmp(&Point::zero(2), &Point::zero(3)).unwrap_err();
        assert!(matches!(err, ExactError::DimensionMismatch { expected: 2, found: 3 }));
    }

    #[test]
    fn text_round_trip() {
        let q: Point = "8/21,-2/21,3".parse().unwrap();
        assert_eq!(q, p(&[(8, 21), (-2, 21), (3, 1)]));
        assert_eq!(q.to_string(), "8/21,-2/21,3");
    }
}
