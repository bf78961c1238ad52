//! SVG (2D) and OFF (3D) geometry of polyforms.
//!
//! Each cell is drawn as its orbit's outline mapped by the cell's
//! classifying orientation and lattice shift, then sent to Cartesian space
//! through the tiling's embedding. Floats appear only here.

use std::fmt::Write;

use crate::exact::Point;
use crate::tiling::{RenderGeometry, TilingSpec};

const PALETTE: [&str; 6] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#edc948"];
const UNIT: f64 = 40.0;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExportError {
    #[error("tiling has no render data")]
    NoRenderData,
    #[error("{0}: not a cell of this tiling")]
    NotACell(Point),
    #[error("{format} export needs a {expected}D tiling, this one is {found}D")]
    WrongDimension { format: &'static str, expected: usize, found: usize },
}

/// One cell's outline in Cartesian coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct CellShape {
    pub orbit: usize,
    pub vertices: Vec<Vec<f64>>,
    pub faces: Vec<Vec<usize>>,
}

fn cartesian(embedding: &[Vec<f64>], p: &Point) -> Vec<f64> {
    let d = embedding.len();
    let mut out = vec![0.0; d];
    for (j, x) in p.coords().iter().enumerate() {
        let x = x.to_f64();
        for (o, e) in out.iter_mut().zip(&embedding[j]) {
            *o += x * e;
        }
    }
    out
}

/// Cartesian outlines of every cell of a form.
pub fn cell_shapes(spec: &TilingSpec, cells: &[Point]) -> Result<Vec<CellShape>, ExportError> {
    let embedding = spec.embedding().ok_or(ExportError::NoRenderData)?;
    let mut out = Vec::with_capacity(cells.len());
    for c in cells {
        let class = spec.classify_one(c).ok_or_else(|| ExportError::NotACell(c.clone()))?;
        let g = &spec.orientations()[class.orientation];
        let place = |v: &Point| {
            let p = g.apply(v).expect("same dimension").add(&class.lattice_shift).expect("same dimension");
            cartesian(embedding, &p)
        };
        let reflect = g.det().is_negative();
        let shape = match &spec.orbits()[class.orbit].render {
            None => return Err(ExportError::NoRenderData),
            Some(RenderGeometry::Polygon(poly)) => CellShape {
                orbit: class.orbit,
                vertices: poly.iter().map(place).collect(),
                faces: vec![(0..poly.len()).collect()],
            },
            Some(RenderGeometry::Polyhedron { vertices, faces }) => {
                let faces =
                    faces.iter().map(|f| if reflect { f.iter().rev().copied().collect() } else { f.clone() }).collect();
                CellShape { orbit: class.orbit, vertices: vertices.iter().map(place).collect(), faces }
            }
        };
        out.push(shape);
    }
    Ok(out)
}

fn require_dim(spec: &TilingSpec, format: &'static str, expected: usize) -> Result<(), ExportError> {
    if spec.dim() != expected {
        return Err(ExportError::WrongDimension { format, expected, found: spec.dim() });
    }
    Ok(())
}

fn bounds(shapes: &[CellShape]) -> (f64, f64, f64, f64) {
    let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for v in shapes.iter().flat_map(|s| &s.vertices) {
        b.0 = b.0.min(v[0]);
        b.1 = b.1.min(-v[1]);
        b.2 = b.2.max(v[0]);
        b.3 = b.3.max(-v[1]);
    }
    b
}

fn write_polygons(out: &mut String, shapes: &[CellShape], dx: f64, dy: f64) {
    for s in shapes {
        let pts: Vec<String> =
            s.vertices.iter().map(|v| format!("{:.3},{:.3}", (v[0] + dx) * UNIT, (-v[1] + dy) * UNIT)).collect();
        writeln!(
            out,
            r##"  <polygon points="{}" fill="{}" stroke="#222" stroke-width="1"/>"##,
            pts.join(" "),
            PALETTE[s.orbit % PALETTE.len()]
        )
        .unwrap();
    }
}

/// A standalone SVG of one 2D form.
pub fn form_svg(spec: &TilingSpec, cells: &[Point]) -> Result<String, ExportError> {
    require_dim(spec, "SVG", 2)?;
    let shapes = cell_shapes(spec, cells)?;
    let (x0, y0, x1, y1) = bounds(&shapes);
    let pad = 0.25;
    let (w, h) = ((x1 - x0 + 2.0 * pad) * UNIT, (y1 - y0 + 2.0 * pad) * UNIT);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.1}\" height=\"{h:.1}\" viewBox=\"0 0 {w:.1} {h:.1}\">\n"
    );
    write_polygons(&mut out, &shapes, pad - x0, pad - y0);
    out.push_str("</svg>\n");
    Ok(out)
}

/// Many 2D forms laid out in a grid, each captioned with its name.
pub fn gallery_svg(spec: &TilingSpec, forms: &[(String, Vec<Point>)], columns: usize) -> Result<String, ExportError> {
    require_dim(spec, "SVG", 2)?;
    let all: Vec<Vec<CellShape>> = forms.iter().map(|(_, c)| cell_shapes(spec, c)).collect::<Result<_, _>>()?;
    let mut cw: f64 = 1.0;
    let mut ch: f64 = 1.0;
    for shapes in &all {
        let (x0, y0, x1, y1) = bounds(shapes);
        cw = cw.max(x1 - x0);
        ch = ch.max(y1 - y0);
    }
    let columns = columns.max(1);
    let rows = all.len().div_ceil(columns).max(1);
    let (pad, caption) = (0.3, 0.5);
    let (cell_w, cell_h) = (cw + 2.0 * pad, ch + 2.0 * pad + caption);
    let (w, h) = (cell_w * columns as f64 * UNIT, cell_h * rows as f64 * UNIT);
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w:.1}\" height=\"{h:.1}\" viewBox=\"0 0 {w:.1} {h:.1}\">\n"
    );
    for (i, (shapes, (name, _))) in all.iter().zip(forms).enumerate() {
        let (col, row) = ((i % columns) as f64, (i / columns) as f64);
        let (x0, y0, _, _) = bounds(shapes);
        writeln!(out, "<g>\n  <title>{name}</title>").unwrap();
        write_polygons(&mut out, shapes, col * cell_w + pad - x0, row * cell_h + pad - y0);
        writeln!(
            out,
            r#"  <text x="{:.1}" y="{:.1}" font-family="monospace" font-size="9" text-anchor="middle">{}</text>"#,
            (col + 0.5) * cell_w * UNIT,
            ((row + 1.0) * cell_h - 0.15) * UNIT,
            name
        )
        .unwrap();
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// OFF mesh of a 3D form, one closed polyhedron per cell (vertices are not
/// shared between cells).
pub fn form_off(spec: &TilingSpec, cells: &[Point]) -> Result<String, ExportError> {
    require_dim(spec, "OFF", 3)?;
    let shapes = cell_shapes(spec, cells)?;
    let nv: usize = shapes.iter().map(|s| s.vertices.len()).sum();
    let nf: usize = shapes.iter().map(|s| s.faces.len()).sum();
    let mut out = format!("OFF\n{nv} {nf} 0\n");
    for v in shapes.iter().flat_map(|s| &s.vertices) {
        writeln!(out, "{:.6} {:.6} {:.6}", v[0], v[1], v[2]).unwrap();
    }
    let mut base = 0;
    for s in &shapes {
        for f in &s.faces {
            let idx: Vec<String> = f.iter().map(|i| (i + base).to_string()).collect();
            writeln!(out, "{} {}", f.len(), idx.join(" ")).unwrap();
        }
        base += s.vertices.len();
    }
    Ok(out)
}
