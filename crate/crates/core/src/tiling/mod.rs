//! Periodic tilings as graphs: one vertex per cell, one edge per shared
//! facet.
//!
//! A [`TilingSpec`] lists orientation maps (coset representatives of the
//! symmetry group modulo lattice translations, identity first) and, for
//! each orbit of cells, a representative point and the absolute positions
//! of that representative's neighbors. Any other cell is reached as
//! `orientations[k](rep) + t` for an integer vector `t`, and its neighbors
//! are the images of the representative's neighbors under the same map.

mod builtin;
mod format;
mod validate;

use std::collections::BTreeMap;

use crate::canonical::SymmetryMode;
use crate::exact::{AffineMap, ExactError, Point};

pub use builtin::{builtin, load_tiling, BUILTIN_NAMES};
pub use format::{parse_tiling, to_json};
pub use validate::{validate, CheckResult, ValidationReport, DEFAULT_RADIUS};

/// Names of the validator checks, as they appear in reports.
pub mod checks {
    pub const CLOSURE: &str = "closure";
    pub const UNIMODULAR: &str = "unimodular";
    pub const TOTALITY: &str = "totality";
    pub const ADJACENCY_SYMMETRY: &str = "adjacency-symmetry";
    pub const STABILIZER_CONSISTENCY: &str = "stabilizer-consistency";
    pub const REPRESENTATIVE_MINIMALITY: &str = "representative-minimality";
    pub const ORBIT_DISTINCTNESS: &str = "orbit-distinctness";
}

#[derive(Debug, thiserror::Error)]
pub enum TilingError {
    #[error("tiling file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {msg}")]
    Structure { path: String, msg: String },
    #[error("orientation {index} does not preserve lattice (unimodular check): {reason}")]
    NotUnimodular { index: usize, reason: String },
    #[error("duplicate orbit id {0}")]
    DuplicateOrbitId(i64),
    #[error("unknown built-in tiling {0:?}")]
    UnknownBuiltin(String),
    #[error("{0}: not a cell of this tiling")]
    NotACell(Point),
    #[error("orbit index {0} out of range")]
    BadOrbitIndex(usize),
    #[error("validation radius must be at least 1")]
    BadRadius,
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

/// Outline of a cell in lattice coordinates, used only for rendering.
#[derive(Debug, Clone, PartialEq)]
pub enum RenderGeometry {
    Polygon(Vec<Point>),
    Polyhedron { vertices: Vec<Point>, faces: Vec<Vec<usize>> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSpec {
    pub id: i64,
    pub rep: Point,
    /// Absolute positions of the representative's neighbors.
    pub neighbor_points: Vec<Point>,
    pub render: Option<RenderGeometry>,
}

/// Witness that `orientations[orientation](rep_orbit) + lattice_shift` is a
/// given point. `orbit` is an index into [`TilingSpec::orbits`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VertexClass {
    pub orbit: usize,
    pub orientation: usize,
    pub lattice_shift: Point,
}

#[derive(Debug, Clone)]
pub struct TilingSpec {
    name: String,
    dim: usize,
    orientations: Vec<AffineMap>,
    orbits: Vec<OrbitSpec>,
    embedding: Option<Vec<Vec<f64>>>,
    metadata: BTreeMap<String, serde_json::Value>,
    /// `rep_images[i][k] = orientations[k](orbits[i].rep)`.
    rep_images: Vec<Vec<Point>>,
}

impl TilingSpec {
    /// Assembles a spec and enforces the structural invariants: consistent
    /// dimensions, identity first, unimodular linear parts, offsets in
    /// `[0, 1)`, distinct orbit ids.
    pub fn from_parts(
        name: String,
        dim: usize,
        orientations: Vec<AffineMap>,
        orbits: Vec<OrbitSpec>,
        embedding: Option<Vec<Vec<f64>>>,
        metadata: BTreeMap<String, serde_json::Value>,
    ) -> Result<TilingSpec, TilingError> {
        let structure = |path: String, msg: &str| TilingError::Structure { path, msg: msg.to_string() };
        if dim == 0 {
            return Err(structure("dim".into(), "must be positive"));
        }
        if orientations.is_empty() {
            return Err(structure("orientations".into(), "at least the identity is required"));
        }
        for (k, o) in orientations.iter().enumerate() {
            if o.dim() != dim {
                return Err(structure(format!("orientations[{k}]"), "dimension differs from dim"));
            }
            if let Some(reason) = unimodular_violation(o) {
                return Err(TilingError::NotUnimodular { index: k, reason });
            }
            if o.offset() != &o.offset().normalize_mod1() {
                return Err(structure(format!("orientations[{k}].offset"), "must lie in [0, 1)"));
            }
        }
        if orientations[0] != AffineMap::identity(dim) {
            return Err(structure("orientations[0]".into(), "must be the identity map"));
        }
        if orbits.is_empty() {
            return Err(structure("orbits".into(), "at least one orbit is required"));
        }
        let mut ids = std::collections::HashSet::new();
        for (i, orbit) in orbits.iter().enumerate() {
            if !ids.insert(orbit.id) {
                return Err(TilingError::DuplicateOrbitId(orbit.id));
            }
            if orbit.rep.dim() != dim {
                return Err(structure(format!("orbits[{i}].rep"), "dimension differs from dim"));
            }
            if orbit.rep != orbit.rep.normalize_mod1() {
                return Err(structure(format!("orbits[{i}].rep"), "coordinates must lie in [0, 1)"));
            }
            for (j, n) in orbit.neighbor_points.iter().enumerate() {
                if n.dim() != dim {
                    return Err(structure(format!("orbits[{i}].neighbors[{j}]"), "dimension differs from dim"));
                }
                if n == &orbit.rep {
                    return Err(structure(format!("orbits[{i}].neighbors[{j}]"), "a cell is not its own neighbor"));
                }
                if orbit.neighbor_points[..j].contains(n) {
                    return Err(structure(format!("orbits[{i}].neighbors[{j}]"), "duplicate neighbor"));
                }
            }
        }
        if let Some(e) = &embedding {
            if e.len() != dim || e.iter().any(|row| row.len() != dim) {
                return Err(structure("embedding".into(), "must be a dim x dim matrix"));
            }
        }
        Ok(Self::from_parts_unchecked(name, dim, orientations, orbits, embedding, metadata))
    }

    /// Assembles a spec without the structural checks of [`from_parts`];
    /// [`validate`] still reports every violation. Dimensions must agree.
    ///
    /// [`from_parts`]: TilingSpec::from_parts
    pub fn from_parts_unchecked(
        name: String,
        dim: usize,
        orientations: Vec<AffineMap>,
        orbits: Vec<OrbitSpec>,
        embedding: Option<Vec<Vec<f64>>>,
        metadata: BTreeMap<String, serde_json::Value>,
    ) -> TilingSpec {
        let rep_images =
            orbits.iter().map(|o| orientations.iter().map(|g| g.apply_unchecked(&o.rep)).collect()).collect();
        TilingSpec { name, dim, orientations, orbits, embedding, metadata, rep_images }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn orientations(&self) -> &[AffineMap] {
        &self.orientations
    }

    pub fn orbits(&self) -> &[OrbitSpec] {
        &self.orbits
    }

    pub fn embedding(&self) -> Option<&[Vec<f64>]> {
        self.embedding.as_deref()
    }

    pub fn metadata(&self) -> &BTreeMap<String, serde_json::Value> {
        &self.metadata
    }

    /// Copy with different orientations (e.g. reordered or with one removed).
    pub fn with_orientations(&self, orientations: Vec<AffineMap>) -> TilingSpec {
        Self::from_parts_unchecked(
            self.name.clone(),
            self.dim,
            orientations,
            self.orbits.clone(),
            self.embedding.clone(),
            self.metadata.clone(),
        )
    }

    /// Copy with different orbit data.
    pub fn with_orbits(&self, orbits: Vec<OrbitSpec>) -> TilingSpec {
        Self::from_parts_unchecked(
            self.name.clone(),
            self.dim,
            self.orientations.clone(),
            orbits,
            self.embedding.clone(),
            self.metadata.clone(),
        )
    }

    /// Indices of the orientations in a symmetry mode's group.
    pub fn mode_orientations(&self, mode: SymmetryMode) -> Vec<usize> {
        match mode {
            SymmetryMode::Free => (0..self.orientations.len()).collect(),
            SymmetryMode::OneSided => {
                (0..self.orientations.len()).filter(|&k| !self.orientations[k].det().is_negative()).collect()
            }
            SymmetryMode::Fixed => vec![0],
        }
    }

    /// Every `(orbit, orientation, shift)` that reconstructs `p`.
    pub fn classify(&self, p: &Point) -> Vec<VertexClass> {
        let mut out = Vec::new();
        if p.dim() != self.dim {
            return out;
        }
        for (i, images) in self.rep_images.iter().enumerate() {
            for (k, img) in images.iter().enumerate() {
                let t = p.sub(img).expect("same dimension");
                if t.is_integral() {
                    out.push(VertexClass { orbit: i, orientation: k, lattice_shift: t });
                }
            }
        }
        out
    }

    /// First witness for `p`, if `p` is a cell.
    pub fn classify_one(&self, p: &Point) -> Option<VertexClass> {
        if p.dim() != self.dim {
            return None;
        }
        for (i, images) in self.rep_images.iter().enumerate() {
            for (k, img) in images.iter().enumerate() {
                let t = p.sub(img).expect("same dimension");
                if t.is_integral() {
                    return Some(VertexClass { orbit: i, orientation: k, lattice_shift: t });
                }
            }
        }
        None
    }

    pub fn is_cell(&self, p: &Point) -> bool {
        self.classify_one(p).is_some()
    }

    /// Neighbors of a cell, sorted.
    pub fn neighbors(&self, p: &Point) -> Result<Vec<Point>, TilingError> {
        let class = self.classify_one(p).ok_or_else(|| TilingError::NotACell(p.clone()))?;
        Ok(self.neighbors_via(&class))
    }

    /// Neighbors computed through one particular witness.
    pub fn neighbors_via(&self, class: &VertexClass) -> Vec<Point> {
        let g = &self.orientations[class.orientation];
        let mut out: Vec<Point> = self.orbits[class.orbit]
            .neighbor_points
            .iter()
            .map(|u| g.apply_unchecked(u).add(&class.lattice_shift).expect("same dimension"))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Translation classes (points of `[0, 1)^d`) of one orbit.
    pub fn orbit_translation_classes(&self, orbit: usize) -> Result<Vec<Point>, TilingError> {
        let images = self.rep_images.get(orbit).ok_or(TilingError::BadOrbitIndex(orbit))?;
        let mut out: Vec<Point> = images.iter().map(Point::normalize_mod1).collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// All translation classes of cells with their orbit index, sorted by point.
    pub fn translation_classes(&self) -> Vec<(Point, usize)> {
        let mut out = Vec::new();
        for i in 0..self.orbits.len() {
            for p in self.orbit_translation_classes(i).expect("valid index") {
                out.push((p, i));
            }
        }
        out.sort();
        out
    }
}

pub(crate) fn unimodular_violation(o: &AffineMap) -> Option<String> {
    if !o.is_integral_linear() {
        return Some("linear part has non-integer entries".into());
    }
    let det = o.det();
    if !det.abs().eq(&crate::exact::Rat::one()) {
        return Some(format!("determinant is {det}"));
    }
    None
}

/// Free-function form of [`TilingSpec::classify`].
pub fn classify(spec: &TilingSpec, p: &Point) -> Vec<VertexClass> {
    spec.classify(p)
}

/// Free-function form of [`TilingSpec::neighbors`].
pub fn neighbors(spec: &TilingSpec, p: &Point) -> Result<Vec<Point>, TilingError> {
    spec.neighbors(p)
}

/// Free-function form of [`TilingSpec::orbit_translation_classes`].
pub fn orbit_translation_classes(spec: &TilingSpec, orbit: usize) -> Result<Vec<Point>, TilingError> {
    spec.orbit_translation_classes(orbit)
}
