use std::fmt;

use super::point::check_dim;
use super::{ExactError, Point, Rat};

/// `p ↦ linear · p + offset`, acting on column vectors.
///
/// The linear part is stored dense and row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    dim: usize,
    linear: Vec<Rat>,
    offset: Point,
}

impl AffineMap {
    /// Builds a map from rows of the linear part and an offset. Fails when
    /// the shapes disagree or the linear part is singular.
    pub fn new(rows: Vec<Vec<Rat>>, offset: Point) -> Result<AffineMap, ExactError> {
        let dim = offset.dim();
        check_dim(dim, rows.len())?;
        let mut linear = Vec::with_capacity(dim * dim);
        for row in rows {
            check_dim(dim, row.len())?;
            linear.extend(row);
        }
        let m = AffineMap { dim, linear, offset };
        if m.det().is_zero() {
            return Err(ExactError::Singular);
        }
        Ok(m)
    }

    /// Integer linear part with zero offset.
    pub fn from_int_rows(rows: &[&[i64]]) -> Result<AffineMap, ExactError> {
        let n = rows.len();
        let rows = rows.iter().map(|r| r.iter().map(|&x| Rat::from_int(x)).collect()).collect();
        AffineMap::new(rows, Point::zero(n))
    }

    pub fn identity(dim: usize) -> AffineMap {
        let mut linear = vec![Rat::zero(); dim * dim];
        for i in 0..dim {
            linear[i * dim + i] = Rat::one();
        }
        AffineMap { dim, linear, offset: Point::zero(dim) }
    }

    pub fn translation(t: Point) -> AffineMap {
        let mut m = AffineMap::identity(t.dim());
        m.offset = t;
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rat {
        &self.linear[row * self.dim + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rat]> {
        self.linear.chunks(self.dim.max(1))
    }

    pub fn offset(&self) -> &Point {
        &self.offset
    }

    pub fn with_offset(&self, offset: Point) -> Result<AffineMap, ExactError> {
        check_dim(self.dim, offset.dim())?;
        Ok(AffineMap { dim: self.dim, linear: self.linear.clone(), offset })
    }

    pub fn apply(&self, p: &Point) -> Result<Point, ExactError> {
        check_dim(self.dim, p.dim())?;
        Ok(self.apply_unchecked(p))
    }

    pub(crate) fn apply_unchecked(&self, p: &Point) -> Point {
        let d = self.dim;
        let coords = (0..d)
            .map(|i| {
                let mut acc = self.offset.coords()[i].clone();
                for j in 0..d {
                    let a = &self.linear[i * d + j];
                    if !a.is_zero() {
                        acc = acc + a * &p.coords()[j];
                    }
                }
                acc
            })
            .collect();
        Point::new(coords)
    }

    /// Applies only the linear part.
    pub fn apply_linear(&self, p: &Point) -> Result<Point, ExactError> {
        check_dim(self.dim, p.dim())?;
        let zero = AffineMap { dim: self.dim, linear: self.linear.clone(), offset: Point::zero(self.dim) };
        Ok(zero.apply_unchecked(p))
    }

    /// `self ∘ other`, i.e. `p ↦ self(other(p))`.
    pub fn compose(&self, other: &AffineMap) -> Result<AffineMap, ExactError> {
        check_dim(self.dim, other.dim)?;
        let d = self.dim;
        let mut linear = vec![Rat::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                let mut acc = Rat::zero();
                for k in 0..d {
                    acc = acc + &self.linear[i * d + k] * &other.linear[k * d + j];
                }
                linear[i * d + j] = acc;
            }
        }
        let offset = self.apply_unchecked(&other.offset);
        Ok(AffineMap { dim: d, linear, offset })
    }

    pub fn det(&self) -> Rat {
        let (_, det) = self.gauss_jordan();
        det
    }

    pub fn inverse(&self) -> Result<AffineMap, ExactError> {
        let (inv, det) = self.gauss_jordan();
        let linear = match inv {
            Some(inv) if !det.is_zero() => inv,
            _ => return Err(ExactError::Singular),
        };
        let lin_map = AffineMap { dim: self.dim, linear, offset: Point::zero(self.dim) };
        let offset = lin_map.apply_unchecked(&self.offset).neg();
        Ok(AffineMap { dim: self.dim, linear: lin_map.linear, offset })
    }

    /// Integer entries in the linear part.
    pub fn is_integral_linear(&self) -> bool {
        self.linear.iter().all(Rat::is_integer)
    }

    /// Integer linear part with determinant ±1: the map preserves the lattice.
    pub fn is_unimodular(&self) -> bool {
        self.is_integral_linear() && self.det().abs() == Rat::one()
    }

    pub fn same_linear(&self, other: &AffineMap) -> bool {
        self.dim == other.dim && self.linear == other.linear
    }

    /// Equal up to an integer translation.
    pub fn equiv_mod_lattice(&self, other: &AffineMap) -> bool {
        self.same_linear(other) && self.offset.sub(&other.offset).map(|d| d.is_integral()).unwrap_or(false)
    }

    /// Same map with the offset shifted into `[0, 1)^d`.
    pub fn normalized(&self) -> AffineMap {
        AffineMap { dim: self.dim, linear: self.linear.clone(), offset: self.offset.normalize_mod1() }
    }

    pub fn pow(&self, k: u32) -> AffineMap {
        let mut acc = AffineMap::identity(self.dim);
        for _ in 0..k {
            acc = self.compose(&acc).expect("same dimension");
        }
        acc
    }

    /// Returns `(inverse linear part, determinant)`; the inverse is `None`
    /// when singular.
    fn gauss_jordan(&self) -> (Option<Vec<Rat>>, Rat) {
        let d = self.dim;
        let mut a = self.linear.clone();
        let mut inv = AffineMap::identity(d).linear;
        let mut det = Rat::one();
        for col in 0..d {
            let Some(piv) = (col..d).find(|&r| !a[r * d + col].is_zero()) else {
                return (None, Rat::zero());
            };
            if piv != col {
                for j in 0..d {
                    a.swap(piv * d + j, col * d + j);
                    inv.swap(piv * d + j, col * d + j);
                }
                det = -det;
            }
            let p = a[col * d + col].clone();
            det = det * &p;
            let pinv = p.recip().expect("nonzero pivot");
            for j in 0..d {
                a[col * d + j] = &a[col * d + j] * &pinv;
                inv[col * d + j] = &inv[col * d + j] * &pinv;
            }
            for r in 0..d {
                if r == col || a[r * d + col].is_zero() {
                    continue;
                }
                let f = a[r * d + col].clone();
                for j in 0..d {
                    let sa = &f * &a[col * d + j];
                    a[r * d + j] = &a[r * d + j] - &sa;
                    let si = &f * &inv[col * d + j];
                    inv[r * d + j] = &inv[r * d + j] - &si;
                }
            }
        }
        (Some(inv), det)
    }
}

pub fn affine_apply(m: &AffineMap, p: &Point) -> Result<Point, ExactError> {
    m.apply(p)
}

pub fn affine_compose(m1: &AffineMap, m2: &AffineMap) -> Result<AffineMap, ExactError> {
    m1.compose(m2)
}

pub fn affine_inverse(m: &AffineMap) -> Result<AffineMap, ExactError> {
    m.inverse()
}

impl fmt::Debug for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, " | {}]", self.offset)
    }
}
