//! JSON tiling files.
//!
//! ```json
//! {
//!   "name": "square", "dim": 2,
//!   "orientations": [{"linear": [["1","0"],["0","1"]], "offset": ["0","0"]}],
//!   "orbits": [{"id": 0, "rep": ["0","0"], "neighbors": [["1","0"], ...], "render": {"polygon": [...]}}],
//!   "embedding": [[1.0, 0.0], [0.0, 1.0]],
//!   "metadata": {"oeis": "A000105"}
//! }
//! ```
//!
//! Rationals are strings matching `-?[0-9]+(/[1-9][0-9]*)?`. Unknown keys
//! are rejected; syntax and grammar errors carry line and column.

use std::collections::BTreeMap;
use std::io::Read;

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize};

use super::{OrbitSpec, RenderGeometry, TilingError, TilingSpec};
use crate::exact::{AffineMap, Point, Rat};

#[derive(Debug, Clone)]
struct RatStr(Rat);

impl<'de> Deserialize<'de> for RatStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<Rat>().map(RatStr).map_err(|_| de::Error::custom(format!("malformed rational {s:?}")))
    }
}

impl Serialize for RatStr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrientation {
    linear: Vec<Vec<RatStr>>,
    offset: Vec<RatStr>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRender {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    polygon: Option<Vec<Vec<RatStr>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<Vec<RatStr>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    faces: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOrbit {
    id: i64,
    rep: Vec<RatStr>,
    neighbors: Vec<Vec<RatStr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    render: Option<RawRender>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTiling {
    name: String,
    dim: usize,
    orientations: Vec<RawOrientation>,
    orbits: Vec<RawOrbit>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    embedding: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    metadata: BTreeMap<String, serde_json::Value>,
}

fn point(raw: Vec<RatStr>, dim: usize, path: impl Fn() -> String) -> Result<Point, TilingError> {
    if raw.len() != dim {
        return Err(TilingError::Structure {
            path: path(),
            msg: format!("expected {dim} coordinates, found {}", raw.len()),
        });
    }
    Ok(Point::new(raw.into_iter().map(|r| r.0).collect()))
}

/// Parses and structurally checks a tiling file.
pub fn parse_tiling(mut input: impl Read) -> Result<TilingSpec, TilingError> {
    let mut text = String::new();
    input.read_to_string(&mut text).map_err(|source| TilingError::Io { path: "<input>".into(), source })?;
    let raw: RawTiling = serde_json::from_str(&text)?;
    from_raw(raw)
}

fn from_raw(raw: RawTiling) -> Result<TilingSpec, TilingError> {
    let dim = raw.dim;
    let mut orientations = Vec::with_capacity(raw.orientations.len());
    for (k, o) in raw.orientations.into_iter().enumerate() {
        let offset = point(o.offset, dim, || format!("orientations[{k}].offset"))?;
        if o.linear.len() != dim || o.linear.iter().any(|r| r.len() != dim) {
            return Err(TilingError::Structure {
                path: format!("orientations[{k}].linear"),
                msg: format!("expected a {dim} x {dim} matrix"),
            });
        }
        let rows = o.linear.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
        let map = AffineMap::new(rows, offset)
            .map_err(|_| TilingError::NotUnimodular { index: k, reason: "determinant is 0".into() })?;
        orientations.push(map);
    }
    let mut orbits = Vec::with_capacity(raw.orbits.len());
    for (i, o) in raw.orbits.into_iter().enumerate() {
        let rep = point(o.rep, dim, || format!("orbits[{i}].rep"))?;
        let neighbor_points = o
            .neighbors
            .into_iter()
            .enumerate()
            .map(|(j, n)| point(n, dim, || format!("orbits[{i}].neighbors[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let render = o.render.map(|r| render_from_raw(r, dim, i)).transpose()?;
        orbits.push(OrbitSpec { id: o.id, rep, neighbor_points, render });
    }
    TilingSpec::from_parts(raw.name, dim, orientations, orbits, raw.embedding, raw.metadata)
}

fn render_from_raw(r: RawRender, dim: usize, orbit: usize) -> Result<RenderGeometry, TilingError> {
    let path = |what: &str| format!("orbits[{orbit}].render.{what}");
    let points = |v: Vec<Vec<RatStr>>, what: &str| {
        v.into_iter()
            .enumerate()
            .map(|(j, p)| point(p, dim, || format!("{}[{j}]", path(what))))
            .collect::<Result<Vec<_>, _>>()
    };
    match (r.polygon, r.vertices, r.faces) {
        (Some(poly), None, None) if dim == 2 => Ok(RenderGeometry::Polygon(points(poly, "polygon")?)),
        (None, Some(verts), Some(faces)) => {
            let vertices = points(verts, "vertices")?;
            if let Some(bad) = faces.iter().flatten().find(|&&i| i >= vertices.len()) {
                return Err(TilingError::Structure {
                    path: path("faces"),
                    msg: format!("vertex index {bad} out of range"),
                });
            }
            Ok(RenderGeometry::Polyhedron { vertices, faces })
        }
        _ => Err(TilingError::Structure {
            path: format!("orbits[{orbit}].render"),
            msg: "expected {\"polygon\"} (2D) or {\"vertices\", \"faces\"}".into(),
        }),
    }
}

fn raw_point(p: &Point) -> Vec<RatStr> {
    p.coords().iter().cloned().map(RatStr).collect()
}

/// Serializes a spec back to the file format.
pub fn to_json(spec: &TilingSpec) -> String {
    let raw = RawTiling {
        name: spec.name().to_string(),
        dim: spec.dim(),
        orientations: spec
            .orientations()
            .iter()
            .map(|o| RawOrientation {
                linear: o.rows().map(|r| r.iter().cloned().map(RatStr).collect()).collect(),
                offset: raw_point(o.offset()),
            })
            .collect(),
        orbits: spec
            .orbits()
            .iter()
            .map(|o| RawOrbit {
                id: o.id,
                rep: raw_point(&o.rep),
                neighbors: o.neighbor_points.iter().map(raw_point).collect(),
                render: o.render.as_ref().map(|r| match r {
                    RenderGeometry::Polygon(p) => {
                        RawRender { polygon: Some(p.iter().map(raw_point).collect()), vertices: None, faces: None }
                    }
                    RenderGeometry::Polyhedron { vertices, faces } => RawRender {
                        polygon: None,
                        vertices: Some(vertices.iter().map(raw_point).collect()),
                        faces: Some(faces.clone()),
                    },
                }),
            })
            .collect(),
        embedding: spec.embedding().map(|e| e.to_vec()),
        metadata: spec.metadata().clone(),
    };
    serde_json::to_string_pretty(&raw).expect("serializable")
}
