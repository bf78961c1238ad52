//! Exact rational coordinates and affine maps.
//!
//! Every cell of a tiling is named by a [`Point`] of rationals expressed in
//! the translation-lattice basis; symmetries are [`AffineMap`]s acting on
//! column vectors. Nothing here ever rounds.

mod affine;
mod point;
mod rat;

pub use affine::{affine_apply, affine_compose, affine_inverse, AffineMap};
pub use point::{point_cmp, Point};
pub use rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("singular linear part")]
    Singular,
    #[error("malformed rational {0:?}")]
    BadRational(String),
}
