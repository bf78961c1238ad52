//! Enumeration of polyforms on periodic tilings.
//!
//! A tiling is described by its translation lattice, a finite set of
//! orientation maps (coset representatives of the symmetry group modulo
//! translations), and one representative cell per orbit together with that
//! cell's neighbors. Polyforms are grown one cell at a time and
//! deduplicated by a canonical name: the lexicographically least
//! translation-normalized image over the chosen orientations.
//!
//! ```
//! use polyforms::{builtin, enumerate_counts, EnumerateOptions, SymmetryMode};
//!
//! let spec = builtin("snub-trihexagonal").unwrap();
//! let result = enumerate_counts(&spec, SymmetryMode::Free, 4, &EnumerateOptions::default()).unwrap();
//! assert_eq!(result.count_values(), vec![3, 3, 7, 23]);
//! ```

pub mod bfile;
pub mod canonical;
pub mod enumerate;
pub mod exact;
pub mod export;
pub mod lattice;
pub mod oracle;
pub mod packing;
pub mod tiling;

pub use canonical::{canonical_form, normalize_translation, CanonicalForm, SymmetryMode};
pub use enumerate::{
    enumerate_counts, extend, initial_level, EnumerateError, EnumerateOptions, EnumerationResult, Level,
};
pub use exact::{AffineMap, Point, Rat};
pub use oracle::brute_oracle;
pub use tiling::{builtin, parse_tiling, TilingSpec};
