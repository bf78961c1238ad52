//! Exact-cover packing of polyform pieces into finite regions.
//!
//! Columns are the region's cells plus, when every piece is used exactly
//! once, one column per piece; rows are placements. The search is Knuth's
//! Algorithm X on dancing links, always branching on the column with the
//! fewest remaining rows.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Deserialize;

use crate::canonical::{canonical_form, format_cells, parse_cells, CanonicalError, SymmetryMode};
use crate::enumerate::{enumerate_counts, read_emission, EnumerateError, EnumerateOptions};
use crate::exact::{AffineMap, Point, Rat};
use crate::lattice::{Cell, Lattice, LatticeError};
use crate::tiling::{load_tiling, TilingError, TilingSpec};

#[derive(Debug, thiserror::Error)]
pub enum PackError {
    #[error("unknown region kind {0:?}")]
    UnknownKind(String),
    #[error("region parameters must be positive, got {0:?}")]
    BadParams(Vec<i64>),
    #[error("{kind} regions need a {expected}D tiling")]
    WrongDimension { kind: &'static str, expected: usize },
    #[error("region cell {0} is not a cell of this tiling")]
    NotACell(Point),
    #[error("duplicate region cell {0}")]
    DuplicateCell(Point),
    #[error("tiling has no exact embedding for {0} regions")]
    NoEmbedding(&'static str),
    #[error("pieces {0} and {1} are the same polyform")]
    DuplicatePiece(usize, usize),
    #[error(transparent)]
    Canonical(#[from] CanonicalError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("instance: {0}")]
    Instance(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub tiling: String,
    /// Sorted, distinct.
    pub cells: Vec<Point>,
}

impl Region {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionKind {
    /// Cells with lattice coordinates in `[0, w) × [0, h)`.
    Rect {
        w: i64,
        h: i64,
    },
    /// Cells with lattice coordinates in `[0, a) × [0, b) × [0, c)`.
    Box {
        a: i64,
        b: i64,
        c: i64,
    },
    /// Cartesian sites `(i, j, k)` in an `a × b × c` grid plus the
    /// `(a-1) × (b-1) × (c-1)` body centers between them.
    BccBox {
        a: i64,
        b: i64,
        c: i64,
    },
    /// Octahedra and same-facing tetrahedra inside a tetrahedron of edge `s`
    /// honeycomb edges.
    TetRegion {
        s: i64,
    },
    Explicit(Vec<Point>),
}

impl RegionKind {
    pub fn from_params(kind: &str, params: &[i64]) -> Result<RegionKind, PackError> {
        let need = |k: usize| -> Result<(), PackError> {
            if params.len() != k || params.iter().any(|&p| p <= 0) {
                return Err(PackError::BadParams(params.to_vec()));
            }
            Ok(())
        };
        Ok(match kind {
            "rect" => {
                need(2)?;
                RegionKind::Rect { w: params[0], h: params[1] }
            }
            "box" => {
                need(3)?;
                RegionKind::Box { a: params[0], b: params[1], c: params[2] }
            }
            "bcc-box" => {
                need(3)?;
                RegionKind::BccBox { a: params[0], b: params[1], c: params[2] }
            }
            "tet-region" => {
                need(1)?;
                RegionKind::TetRegion { s: params[0] }
            }
            other => return Err(PackError::UnknownKind(other.to_string())),
        })
    }
}

fn region_from(spec: &TilingSpec, cells: Vec<Point>) -> Result<Region, PackError> {
    let mut seen = BTreeSet::new();
    for c in &cells {
        if !spec.is_cell(c) {
            return Err(PackError::NotACell(c.clone()));
        }
        if !seen.insert(c.clone()) {
            return Err(PackError::DuplicateCell(c.clone()));
        }
    }
    Ok(Region { tiling: spec.name().to_string(), cells: seen.into_iter().collect() })
}

/// Cells whose lattice coordinates lie in `[0, dims_j)` on every axis.
fn lattice_box(spec: &TilingSpec, dims: &[i64]) -> Vec<Point> {
    let mut out = Vec::new();
    let total: i64 = dims.iter().product();
    for (p, _) in spec.translation_classes() {
        for mut idx in 0..total {
            let mut t = Vec::with_capacity(dims.len());
            for &d in dims {
                t.push(idx % d);
                idx /= d;
            }
            out.push(p.add(&Point::from_ints(&t)).expect("same dimension"));
        }
    }
    out
}

/// Maps Cartesian points to lattice coordinates through the embedding.
fn from_cartesian(spec: &TilingSpec, kind: &'static str) -> Result<AffineMap, PackError> {
    let e = spec.embedding().ok_or(PackError::NoEmbedding(kind))?;
    let d = spec.dim();
    let mut rows = vec![Vec::with_capacity(d); d];
    for basis in e {
        for (i, x) in basis.iter().enumerate() {
            rows[i].push(Rat::from_f64(*x).ok_or(PackError::NoEmbedding(kind))?);
        }
    }
    AffineMap::new(rows, Point::zero(d)).and_then(|m| m.inverse()).map_err(|_| PackError::NoEmbedding(kind))
}

pub fn generate_region(spec: &TilingSpec, kind: &RegionKind) -> Result<Region, PackError> {
    let positive = |v: &[i64]| -> Result<(), PackError> {
        if v.iter().any(|&x| x <= 0) {
            return Err(PackError::BadParams(v.to_vec()));
        }
        Ok(())
    };
    let dim = |kind: &'static str, expected: usize| -> Result<(), PackError> {
        if spec.dim() != expected {
            return Err(PackError::WrongDimension { kind, expected });
        }
        Ok(())
    };
    let cells = match kind {
        RegionKind::Rect { w, h } => {
            positive(&[*w, *h])?;
            dim("rect", 2)?;
            lattice_box(spec, &[*w, *h])
        }
        RegionKind::Box { a, b, c } => {
            positive(&[*a, *b, *c])?;
            dim("box", 3)?;
            lattice_box(spec, &[*a, *b, *c])
        }
        RegionKind::BccBox { a, b, c } => {
            positive(&[*a, *b, *c])?;
            dim("bcc-box", 3)?;
            let inv = from_cartesian(spec, "bcc-box")?;
            let mut out = Vec::new();
            for (n, half) in [((*a, *b, *c), (0, 1)), ((*a - 1, *b - 1, *c - 1), (1, 2))] {
                for i in 0..n.0 {
                    for j in 0..n.1 {
                        for k in 0..n.2 {
                            let h = Rat::new(half.0, half.1);
                            let p = Point::new(vec![
                                &Rat::from_int(i) + &h,
                                &Rat::from_int(j) + &h,
                                &Rat::from_int(k) + &h,
                            ]);
                            out.push(inv.apply(&p).expect("3D"));
                        }
                    }
                }
            }
            out
        }
        RegionKind::TetRegion { s } => {
            positive(&[*s])?;
            dim("tet-region", 3)?;
            tet_region(spec, *s)?
        }
        RegionKind::Explicit(cells) => cells.clone(),
    };
    region_from(spec, cells)
}

/// Corner of the big tetrahedron and its edge directions, in Cartesian
/// coordinates: honeycomb vertices are the integer points with odd sum.
const TET_CORNER: [i64; 3] = [1, 0, 0];
const TET_EDGES: [[i64; 3]; 3] = [[1, 1, 0], [1, 0, 1], [0, 1, 1]];

fn tet_region(spec: &TilingSpec, s: i64) -> Result<Vec<Point>, PackError> {
    let inv = from_cartesian(spec, "tet-region")?;
    let e = spec.embedding().ok_or(PackError::NoEmbedding("tet-region"))?;
    let to_cart = AffineMap::new(
        (0..3).map(|i| (0..3).map(|j| Rat::from_f64(e[j][i]).expect("checked")).collect()).collect(),
        Point::zero(3),
    )
    .map_err(|_| PackError::NoEmbedding("tet-region"))?;
    // Barycentric-style coordinates relative to the corner and edge vectors.
    let edges = AffineMap::new(
        (0..3).map(|i| (0..3).map(|j| Rat::from_int(TET_EDGES[j][i])).collect()).collect(),
        Point::zero(3),
    )
    .expect("independent edges")
    .inverse()
    .expect("invertible");
    let corner = Point::from_ints(&TET_CORNER);
    let coords = |cart: &Point| edges.apply(&cart.sub(&corner).expect("3D")).expect("3D");
    let inside = |cart: &Point| {
        let b = coords(cart);
        let sum = b.coords().iter().fold(Rat::zero(), |acc, x| &acc + x);
        b.coords().iter().all(|x| !x.is_negative() && !x.is_zero()) && sum < Rat::from_int(s)
    };
    // The facing of the tetrahedron at the corner of the region.
    let first_tet = {
        let mut c = corner.clone();
        for e in TET_EDGES {
            c = c.add(&Point::from_fracs(&[(e[0], 4), (e[1], 4), (e[2], 4)])).expect("3D");
        }
        inv.apply(&c).expect("3D")
    };
    let up = spec.classify_one(&first_tet).ok_or_else(|| PackError::NotACell(first_tet.clone()))?;
    let up_class = first_tet.normalize_mod1();
    let tet_orbit = up.orbit;

    // Scan a lattice box that covers the big tetrahedron.
    let far: Vec<Point> = [[0i64, 0, 0], TET_EDGES[0], TET_EDGES[1], TET_EDGES[2]]
        .iter()
        .map(|v| {
            let cart =
                Point::from_ints(&[TET_CORNER[0] + s * v[0], TET_CORNER[1] + s * v[1], TET_CORNER[2] + s * v[2]]);
            inv.apply(&cart).expect("3D")
        })
        .collect();
    let lo: Vec<i64> =
        (0..3).map(|j| far.iter().map(|p| p.coords()[j].floor().to_i64().unwrap()).min().unwrap() - 1).collect();
    let hi: Vec<i64> =
        (0..3).map(|j| far.iter().map(|p| p.coords()[j].floor().to_i64().unwrap()).max().unwrap() + 1).collect();
    let mut out = Vec::new();
    for (p, orbit) in spec.translation_classes() {
        if orbit == tet_orbit && p != up_class {
            continue;
        }
        for x in lo[0]..=hi[0] {
            for y in lo[1]..=hi[1] {
                for z in lo[2]..=hi[2] {
                    let q = p.add(&Point::from_ints(&[x, y, z])).expect("3D");
                    if inside(&to_cart.apply(&q).expect("3D")) {
                        out.push(q);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlacementGroup {
    /// Determinant +1 orientations only.
    #[default]
    Rotations,
    RotationsAndReflections,
}

impl PlacementGroup {
    pub fn mode(self) -> SymmetryMode {
        match self {
            PlacementGroup::Rotations => SymmetryMode::OneSided,
            PlacementGroup::RotationsAndReflections => SymmetryMode::Free,
        }
    }

    pub fn parse(s: &str) -> Result<Self, PackError> {
        match s {
            "rotations" | "rotations-only" => Ok(PlacementGroup::Rotations),
            "rotations-and-reflections" | "reflections" => Ok(PlacementGroup::RotationsAndReflections),
            _ => Err(PackError::Instance(format!("unknown placement group {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Multiplicity {
    #[default]
    EachOnce,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceSet {
    /// Cells of each piece, in any position.
    pub pieces: Vec<Vec<Point>>,
    pub multiplicity: Multiplicity,
}

impl PieceSet {
    /// Rejects two pieces that are the same polyform under `mode`.
    pub fn check_distinct(&self, spec: &TilingSpec, mode: SymmetryMode) -> Result<(), PackError> {
        let mut seen: HashMap<Vec<Point>, usize> = HashMap::new();
        for (i, p) in self.pieces.iter().enumerate() {
            let f = canonical_form(spec, p, mode)?.into_cells();
            if let Some(&j) = seen.get(&f) {
                return Err(PackError::DuplicatePiece(j, i));
            }
            seen.insert(f, i);
        }
        Ok(())
    }

    pub fn total_cells(&self) -> usize {
        self.pieces.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Placement {
    pub piece: usize,
    pub orientation: usize,
    pub shift: Point,
    /// Sorted.
    pub cells: Vec<Point>,
}

/// A placement with cells given as sorted indices into the region.
#[derive(Debug, Clone)]
struct Row {
    piece: usize,
    orientation: usize,
    shift: Vec<i64>,
    cells: Vec<u32>,
}

impl Row {
    fn placement(&self, region: &Region) -> Placement {
        Placement {
            piece: self.piece,
            orientation: self.orientation,
            shift: Point::from_ints(&self.shift),
            cells: self.cells.iter().map(|&i| region.cells[i as usize].clone()).collect(),
        }
    }
}

/// Every transform of `piece` (orientation from the group, then integer
/// translation) landing inside the region, one per covered cell set.
pub fn placements(
    spec: &TilingSpec,
    region: &Region,
    piece: &[Point],
    piece_index: usize,
    group: PlacementGroup,
) -> Result<Vec<Placement>, PackError> {
    let rows = rows_for(spec, region, &[piece.to_vec()], group)?;
    Ok(rows.iter().map(|r| Row { piece: piece_index, ..r.clone() }.placement(region)).collect())
}

fn rows_for(
    spec: &TilingSpec,
    region: &Region,
    pieces: &[Vec<Point>],
    group: PlacementGroup,
) -> Result<Vec<Row>, PackError> {
    let max = pieces.iter().map(Vec::len).max().unwrap_or(0).max(region.len()).max(1);
    crate::with_lattice!(spec, max, |lat| rows_with(&lat, spec, region, pieces, group))?
}

fn rows_with<const D: usize>(
    lat: &Lattice<D>,
    spec: &TilingSpec,
    region: &Region,
    pieces: &[Vec<Point>],
    group: PlacementGroup,
) -> Result<Vec<Row>, PackError> {
    let cells: Vec<Cell<D>> = region.cells.iter().map(|c| lat.from_point(c)).collect::<Result<_, _>>()?;
    let index: FxHashMap<Cell<D>, u32> = cells.iter().enumerate().map(|(i, c)| (*c, i as u32)).collect();
    let s = lat.scale();
    let orients = spec.mode_orientations(group.mode());
    let mut out = Vec::new();
    for (piece_index, piece) in pieces.iter().enumerate() {
        let piece: Vec<Cell<D>> = piece.iter().map(|c| lat.from_point(c)).collect::<Result<_, _>>()?;
        if piece.is_empty() || piece.len() > cells.len() {
            continue;
        }
        let mut seen: FxHashSet<Vec<u32>> = FxHashSet::default();
        let mut covered = Vec::with_capacity(piece.len());
        for &k in &orients {
            let mut img: Vec<Cell<D>> = piece.iter().map(|c| lat.apply(k, c)).collect();
            img.sort_unstable();
            let anchor = img[0];
            'anchor: for r in &cells {
                let mut t = [0i32; D];
                for j in 0..D {
                    t[j] = r[j] - anchor[j];
                    if t[j] % s != 0 {
                        continue 'anchor;
                    }
                }
                covered.clear();
                for c in &img {
                    let mut m = *c;
                    for j in 0..D {
                        m[j] += t[j];
                    }
                    match index.get(&m) {
                        Some(&i) => covered.push(i),
                        None => continue 'anchor,
                    }
                }
                covered.sort_unstable();
                if !seen.insert(covered.clone()) {
                    continue;
                }
                out.push(Row {
                    piece: piece_index,
                    orientation: k,
                    shift: t.iter().map(|&v| (v / s) as i64).collect(),
                    cells: covered.clone(),
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    CountAll,
    First,
    Limit(u64),
}

#[derive(Debug, Clone)]
pub struct PackOptions {
    pub search: SearchMode,
    pub time_limit: Option<std::time::Duration>,
    /// Keep every solution found (needed for the symmetry post-pass).
    pub keep_solutions: bool,
    pub modulo_symmetry: bool,
}

impl Default for PackOptions {
    fn default() -> Self {
        PackOptions { search: SearchMode::CountAll, time_limit: None, keep_solutions: false, modulo_symmetry: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Complete,
    SolutionLimit,
    TimeLimit,
}

#[derive(Debug, Clone)]
pub struct PackResult {
    /// Exact covers found. A lower bound unless `stop` is `Complete`.
    pub raw_count: u64,
    pub stop: StopReason,
    pub placement_count: usize,
    pub solutions: Vec<Vec<Placement>>,
    /// Solutions up to the region's own symmetries, when requested and the
    /// search completed.
    pub modulo_symmetry: Option<u64>,
    pub region_symmetries: usize,
    pub search_nodes: u64,
}

impl PackResult {
    pub fn complete(&self) -> bool {
        self.stop == StopReason::Complete
    }
}

/// Dancing links over a 0/1 matrix with only primary columns. Node 0 is
/// the root, nodes `1..=ncols` are column headers.
#[derive(Clone, Copy)]
struct Node {
    l: u32,
    r: u32,
    u: u32,
    d: u32,
    col: u32,
    row: u32,
}

struct Dlx {
    n: Vec<Node>,
    size: Vec<u32>,
}

impl Dlx {
    fn new(ncols: usize) -> Self {
        let n = (ncols + 1) as u32;
        let nodes = (0..n)
            .map(|i| Node { l: if i == 0 { n - 1 } else { i - 1 }, r: (i + 1) % n, u: i, d: i, col: i, row: u32::MAX })
            .collect();
        Dlx { n: nodes, size: vec![0; n as usize] }
    }

    fn r(&self, i: usize) -> usize {
        self.n[i].r as usize
    }

    fn l(&self, i: usize) -> usize {
        self.n[i].l as usize
    }

    fn d(&self, i: usize) -> usize {
        self.n[i].d as usize
    }

    fn col(&self, i: usize) -> usize {
        self.n[i].col as usize
    }

    fn add_row(&mut self, id: usize, cols: &[usize]) {
        let first = self.n.len() as u32;
        let last = first + cols.len() as u32 - 1;
        for (i, &c) in cols.iter().enumerate() {
            let c = c + 1;
            let node = self.n.len() as u32;
            let up = self.n[c].u;
            self.n.push(Node {
                l: if i == 0 { last } else { node - 1 },
                r: if node == last { first } else { node + 1 },
                u: up,
                d: c as u32,
                col: c as u32,
                row: id as u32,
            });
            self.n[up as usize].d = node;
            self.n[c].u = node;
            self.size[c] += 1;
        }
    }

    fn cover(&mut self, c: usize) {
        let Node { l, r, .. } = self.n[c];
        self.n[l as usize].r = r;
        self.n[r as usize].l = l;
        let mut i = self.d(c);
        while i != c {
            let mut j = self.r(i);
            while j != i {
                let Node { u, d, col, .. } = self.n[j];
                self.n[u as usize].d = d;
                self.n[d as usize].u = u;
                self.size[col as usize] -= 1;
                j = self.r(j);
            }
            i = self.d(i);
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.n[c].u as usize;
        while i != c {
            let mut j = self.l(i);
            while j != i {
                let Node { u, d, col, .. } = self.n[j];
                self.n[u as usize].d = j as u32;
                self.n[d as usize].u = j as u32;
                self.size[col as usize] += 1;
                j = self.l(j);
            }
            i = self.n[i].u as usize;
        }
        let Node { l, r, .. } = self.n[c];
        self.n[l as usize].r = c as u32;
        self.n[r as usize].l = c as u32;
    }
}

struct Search<'a> {
    dlx: Dlx,
    opts: &'a PackOptions,
    count: u64,
    nodes: u64,
    stop: Option<StopReason>,
    stack: Vec<usize>,
    found: Vec<Vec<usize>>,
    #[cfg(not(target_arch = "wasm32"))]
    deadline: Option<std::time::Instant>,
}

impl Search<'_> {
    fn timed_out(&self) -> bool {
        #[cfg(not(target_arch = "wasm32"))]
        if let Some(d) = self.deadline {
            return std::time::Instant::now() >= d;
        }
        false
    }

    fn run(&mut self) {
        if self.stop.is_some() {
            return;
        }
        self.nodes += 1;
        if self.nodes.is_multiple_of(4096) && self.timed_out() {
            self.stop = Some(StopReason::TimeLimit);
            return;
        }
        let root = 0;
        if self.dlx.r(root) == root {
            self.count += 1;
            if self.opts.keep_solutions || self.found.is_empty() {
                self.found.push(self.stack.clone());
            }
            let limit = match self.opts.search {
                SearchMode::CountAll => u64::MAX,
                SearchMode::First => 1,
                SearchMode::Limit(k) => k,
            };
            if self.count >= limit {
                self.stop = Some(StopReason::SolutionLimit);
            }
            return;
        }
        let mut c = self.dlx.r(root);
        let mut best = c;
        while c != root {
            if self.dlx.size[c] < self.dlx.size[best] {
                best = c;
            }
            c = self.dlx.r(c);
        }
        if self.dlx.size[best] == 0 {
            return;
        }
        self.dlx.cover(best);
        let mut i = self.dlx.d(best);
        while i != best {
            self.stack.push(self.dlx.n[i].row as usize);
            let mut j = self.dlx.r(i);
            while j != i {
                self.dlx.cover(self.dlx.col(j));
                j = self.dlx.r(j);
            }
            self.run();
            let mut j = self.dlx.l(i);
            while j != i {
                self.dlx.uncover(self.dlx.col(j));
                j = self.dlx.l(j);
            }
            self.stack.pop();
            if self.stop.is_some() {
                break;
            }
            i = self.dlx.d(i);
        }
        self.dlx.uncover(best);
    }
}

/// Exact-cover search over all placements of all pieces.
pub fn solve_pack(
    spec: &TilingSpec,
    region: &Region,
    pieces: &PieceSet,
    group: PlacementGroup,
    opts: &PackOptions,
) -> Result<PackResult, PackError> {
    if infeasible(region, pieces) {
        return Ok(PackResult::empty(opts, 0));
    }
    let rows = rows_for(spec, region, &pieces.pieces, group)?;
    Ok(solve_rows(spec, region, pieces, group, &rows, opts))
}

/// As [`solve_pack`] with a given placement list (in any order).
pub fn solve_with_placements(
    spec: &TilingSpec,
    region: &Region,
    pieces: &PieceSet,
    group: PlacementGroup,
    placements: Vec<Placement>,
    opts: &PackOptions,
) -> Result<PackResult, PackError> {
    if infeasible(region, pieces) {
        return Ok(PackResult::empty(opts, placements.len()));
    }
    let index: HashMap<&Point, u32> = region.cells.iter().enumerate().map(|(i, c)| (c, i as u32)).collect();
    let mut rows = Vec::with_capacity(placements.len());
    for p in &placements {
        let mut cells = Vec::with_capacity(p.cells.len());
        for c in &p.cells {
            cells.push(*index.get(c).ok_or_else(|| PackError::NotACell(c.clone()))?);
        }
        cells.sort_unstable();
        let shift = p.shift.coords().iter().map(|x| x.to_i64().unwrap_or(0)).collect();
        rows.push(Row { piece: p.piece, orientation: p.orientation, shift, cells });
    }
    Ok(solve_rows(spec, region, pieces, group, &rows, opts))
}

fn infeasible(region: &Region, pieces: &PieceSet) -> bool {
    pieces.multiplicity == Multiplicity::EachOnce && pieces.total_cells() != region.len()
}

impl PackResult {
    fn empty(opts: &PackOptions, placement_count: usize) -> PackResult {
        PackResult {
            raw_count: 0,
            stop: StopReason::Complete,
            placement_count,
            solutions: Vec::new(),
            modulo_symmetry: opts.modulo_symmetry.then_some(0),
            region_symmetries: 0,
            search_nodes: 0,
        }
    }
}

fn solve_rows(
    spec: &TilingSpec,
    region: &Region,
    pieces: &PieceSet,
    group: PlacementGroup,
    rows: &[Row],
    opts: &PackOptions,
) -> PackResult {
    let piece_cols = if pieces.multiplicity == Multiplicity::EachOnce { pieces.pieces.len() } else { 0 };
    let mut dlx = Dlx::new(region.len() + piece_cols);
    let mut cols = Vec::new();
    for (id, p) in rows.iter().enumerate() {
        cols.clear();
        cols.extend(p.cells.iter().map(|&c| c as usize));
        if piece_cols > 0 {
            cols.push(region.len() + p.piece);
        }
        dlx.add_row(id, &cols);
    }
    let keep = opts.keep_solutions || opts.modulo_symmetry;
    let inner = PackOptions { keep_solutions: keep, ..opts.clone() };
    let mut search = Search {
        dlx,
        opts: &inner,
        count: 0,
        nodes: 0,
        stop: None,
        stack: Vec::new(),
        found: Vec::new(),
        #[cfg(not(target_arch = "wasm32"))]
        deadline: opts.time_limit.map(|t| std::time::Instant::now() + t),
    };
    search.run();
    let stop = search.stop.unwrap_or(StopReason::Complete);
    let solutions: Vec<Vec<Placement>> = search
        .found
        .iter()
        .map(|s| {
            let mut v: Vec<Placement> = s.iter().map(|&i| rows[i].placement(region)).collect();
            v.sort_by(|a, b| a.piece.cmp(&b.piece).then_with(|| a.cells.cmp(&b.cells)));
            v
        })
        .collect();
    let syms = region_symmetries(spec, region, group);
    let modulo = (opts.modulo_symmetry && stop == StopReason::Complete).then(|| solution_orbits(&solutions, &syms));
    PackResult {
        raw_count: search.count,
        stop,
        placement_count: rows.len(),
        solutions,
        modulo_symmetry: modulo,
        region_symmetries: syms.len(),
        search_nodes: search.nodes,
    }
}

/// Maps `g` (orientation then integer shift) that carry the region onto itself.
pub fn region_symmetries(spec: &TilingSpec, region: &Region, group: PlacementGroup) -> Vec<AffineMap> {
    let Some(first) = region.cells.first() else { return Vec::new() };
    let target: BTreeSet<&Point> = region.cells.iter().collect();
    let mut out = Vec::new();
    for k in spec.mode_orientations(group.mode()) {
        let g = &spec.orientations()[k];
        let mut img: Vec<Point> = region.cells.iter().map(|c| g.apply(c).expect("same dimension")).collect();
        img.sort();
        let t = first.sub(&img[0]).expect("same dimension");
        if !t.is_integral() {
            continue;
        }
        if img.iter().all(|c| target.contains(&c.add(&t).expect("same dimension"))) {
            out.push(AffineMap::translation(t).compose(g).expect("same dimension"));
        }
    }
    out
}

fn solution_key(sol: &[Placement], g: &AffineMap) -> Vec<Vec<Point>> {
    let mut key: Vec<Vec<Point>> = sol
        .iter()
        .map(|p| {
            let mut c: Vec<Point> = p.cells.iter().map(|x| g.apply(x).expect("same dimension")).collect();
            c.sort();
            c
        })
        .collect();
    key.sort();
    key
}

/// Number of orbits of the solution set under the region symmetries.
pub fn solution_orbits(solutions: &[Vec<Placement>], syms: &[AffineMap]) -> u64 {
    let mut seen: FxHashMap<Vec<Vec<Point>>, ()> = FxHashMap::default();
    let mut orbits = 0;
    for s in solutions {
        let canon =
            syms.iter().map(|g| solution_key(s, g)).min().unwrap_or_else(|| solution_key(s, &AffineMap::identity(1)));
        if seen.insert(canon, ()).is_none() {
            orbits += 1;
        }
    }
    orbits
}

/// Post-hoc check: the placements partition the region, respect the
/// multiplicity, and each is an image of its claimed piece.
pub fn verify_solution(
    spec: &TilingSpec,
    region: &Region,
    pieces: &PieceSet,
    group: PlacementGroup,
    solution: &[Placement],
) -> Result<(), String> {
    let mut covered: BTreeSet<&Point> = BTreeSet::new();
    let mut uses = vec![0usize; pieces.pieces.len()];
    let region_set: BTreeSet<&Point> = region.cells.iter().collect();
    for p in solution {
        let piece = pieces.pieces.get(p.piece).ok_or(format!("unknown piece {}", p.piece))?;
        uses[p.piece] += 1;
        for c in &p.cells {
            if !region_set.contains(c) {
                return Err(format!("cell {c} is outside the region"));
            }
            if !covered.insert(c) {
                return Err(format!("cell {c} is covered twice"));
            }
        }
        let a = canonical_form(spec, &p.cells, group.mode()).map_err(|e| e.to_string())?;
        let b = canonical_form(spec, piece, group.mode()).map_err(|e| e.to_string())?;
        if a.cells() != b.cells() {
            return Err(format!("placement {} is not an image of piece {}", a, p.piece));
        }
    }
    if covered.len() != region.len() {
        return Err(format!("{} of {} region cells covered", covered.len(), region.len()));
    }
    if pieces.multiplicity == Multiplicity::EachOnce {
        if let Some(i) = uses.iter().position(|&u| u != 1) {
            return Err(format!("piece {i} used {} times", uses[i]));
        }
    }
    Ok(())
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRegion {
    kind: String,
    #[serde(default)]
    params: Vec<i64>,
    #[serde(default)]
    cells: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPieces {
    #[serde(default)]
    forms: Vec<RawForm>,
    /// Emission file, relative to the instance file.
    file: Option<String>,
    /// Enumerate the pieces on the fly.
    enumerate: Option<bool>,
    n: Option<usize>,
    mode: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawForm {
    Form(String),
    Copies { form: String, copies: usize },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    tiling: String,
    region: RawRegion,
    pieces: RawPieces,
    #[serde(default)]
    placement_group: Option<String>,
    #[serde(default)]
    multiplicity: Option<String>,
    #[serde(default)]
    description: Option<String>,
}

/// A parsed instance file.
#[derive(Debug, Clone)]
pub struct Instance {
    pub spec: TilingSpec,
    pub region: Region,
    pub pieces: PieceSet,
    pub group: PlacementGroup,
    pub description: Option<String>,
}

fn mode_or(m: &Option<String>, group: PlacementGroup) -> Result<SymmetryMode, PackError> {
    Ok(m.as_deref().unwrap_or(group.mode().as_str()).parse()?)
}

/// Parses an instance; relative paths resolve against `base`.
pub fn parse_instance(text: &str, base: &Path) -> Result<Instance, PackError> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| PackError::Instance(e.to_string()))?;
    let tiling_path = base.join(&raw.tiling);
    let spec = if tiling_path.exists() && raw.tiling.ends_with(".json") {
        load_tiling(tiling_path.to_str().unwrap_or(&raw.tiling))?
    } else {
        load_tiling(&raw.tiling)?
    };
    let kind = if raw.region.kind == "explicit" {
        let cells = raw.region.cells.iter().map(|c| c.parse::<Point>()).collect::<Result<Vec<_>, _>>();
        RegionKind::Explicit(cells.map_err(|e| PackError::Instance(e.to_string()))?)
    } else {
        RegionKind::from_params(&raw.region.kind, &raw.region.params)?
    };
    let region = generate_region(&spec, &kind)?;
    let group = PlacementGroup::parse(raw.placement_group.as_deref().unwrap_or("rotations"))?;
    let multiplicity = match raw.multiplicity.as_deref().unwrap_or("each-once") {
        "each-once" => Multiplicity::EachOnce,
        "unbounded" => Multiplicity::Unbounded,
        other => return Err(PackError::Instance(format!("unknown multiplicity {other:?}"))),
    };
    let mode = mode_or(&raw.pieces.mode, group)?;
    let mut forms: Vec<Vec<Point>> = Vec::new();
    let mut copies: Vec<(Vec<Point>, usize)> = Vec::new();
    for f in &raw.pieces.forms {
        match f {
            RawForm::Form(s) => forms.push(parse_cells(s)?),
            RawForm::Copies { form, copies: k } => copies.push((parse_cells(form)?, *k)),
        }
    }
    let inline = forms.len();
    if let Some(file) = &raw.pieces.file {
        for line in read_emission(&base.join(file))? {
            forms.push(parse_cells(&line)?);
        }
    }
    if raw.pieces.enumerate == Some(true) {
        let n = raw.pieces.n.ok_or_else(|| PackError::Instance("pieces.enumerate needs n".into()))?;
        let opts = EnumerateOptions { retain_forms: true, ..Default::default() };
        let r = enumerate_counts(&spec, mode, n, &opts)?;
        let level = r.levels.into_iter().last().and_then(|l| l.forms).unwrap_or_default();
        forms.extend(level.into_iter().map(|f| f.into_cells()));
    }
    if let Some(n) = raw.pieces.n {
        if let Some(f) = forms[inline..].iter().find(|f| f.len() != n) {
            return Err(PackError::Instance(format!("piece {} has {} cells, expected {n}", format_cells(f), f.len())));
        }
    }
    // Distinct as declared; a form listed with `copies` stands for several
    // identical pieces.
    forms.extend(copies.iter().map(|(f, _)| f.clone()));
    PieceSet { pieces: forms.clone(), multiplicity }.check_distinct(&spec, mode)?;
    for (f, k) in copies {
        forms.extend(std::iter::repeat_n(f, k.saturating_sub(1)));
    }
    let pieces = PieceSet { pieces: forms, multiplicity };
    Ok(Instance { spec, region, pieces, group, description: raw.description })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::builtin;

    #[test]
    fn region_sizes() {
        let sq = builtin("square").unwrap();
        assert_eq!(generate_region(&sq, &RegionKind::Rect { w: 20, h: 3 }).unwrap().len(), 60);
        let to = builtin("truncated-octahedral").unwrap();
        assert_eq!(generate_region(&to, &RegionKind::BccBox { a: 3, b: 5, c: 8 }).unwrap().len(), 176);
        let cubic = builtin("cubic").unwrap();
        assert_eq!(generate_region(&cubic, &RegionKind::Box { a: 2, b: 3, c: 4 }).unwrap().len(), 24);
        assert!(matches!(generate_region(&sq, &RegionKind::Rect { w: 0, h: 3 }), Err(PackError::BadParams(_))));
        assert!(matches!(RegionKind::from_params("disc", &[3]), Err(PackError::UnknownKind(_))));
    }

    #[test]
    fn tet_region_counts() {
        let spec = builtin("tet-oct").unwrap();
        for (s, oct, tet) in [(1, 0, 1), (2, 1, 4), (3, 4, 10), (5, 20, 35)] {
            let r = generate_region(&spec, &RegionKind::TetRegion { s }).unwrap();
            let octs = r.cells.iter().filter(|c| spec.classify_one(c).unwrap().orbit == 0).count();
            assert_eq!((octs, r.len() - octs), (oct, tet), "size {s}");
        }
    }

    #[test]
    fn placement_counts() {
        let sq = builtin("square").unwrap();
        let rect = generate_region(&sq, &RegionKind::Rect { w: 20, h: 3 }).unwrap();
        let mono = placements(&sq, &rect, &[Point::zero(2)], 0, PlacementGroup::RotationsAndReflections).unwrap();
        assert_eq!(mono.len(), 60);
        let bar = parse_cells("0,0;1,0;2,0;3,0;4,0").unwrap();
        assert_eq!(placements(&sq, &rect, &bar, 0, PlacementGroup::RotationsAndReflections).unwrap().len(), 48);
        let small = generate_region(&sq, &RegionKind::Rect { w: 2, h: 2 }).unwrap();
        assert!(placements(&sq, &small, &bar, 0, PlacementGroup::Rotations).unwrap().is_empty());
    }

    #[test]
    fn infeasible_sizes_skip_search() {
        let sq = builtin("square").unwrap();
        let small = generate_region(&sq, &RegionKind::Rect { w: 2, h: 2 }).unwrap();
        let pieces = PieceSet {
            pieces: vec![parse_cells("0,0;1,0;2,0;3,0;4,0").unwrap()],
            multiplicity: Multiplicity::EachOnce,
        };
        let r = solve_pack(&sq, &small, &pieces, PlacementGroup::Rotations, &PackOptions::default()).unwrap();
        assert_eq!(r.raw_count, 0);
        assert!(r.complete());
        assert_eq!(r.search_nodes, 0);
    }

    #[test]
    fn dominoes_in_two_by_three() {
        let sq = builtin("square").unwrap();
        let region = generate_region(&sq, &RegionKind::Rect { w: 3, h: 2 }).unwrap();
        let pieces = PieceSet { pieces: vec![parse_cells("0,0;1,0").unwrap()], multiplicity: Multiplicity::Unbounded };
        let opts = PackOptions { modulo_symmetry: true, ..Default::default() };
        let r = solve_pack(&sq, &region, &pieces, PlacementGroup::Rotations, &opts).unwrap();
        assert_eq!(r.raw_count, 3);
        assert_eq!(r.region_symmetries, 2);
        assert_eq!(r.modulo_symmetry, Some(2));
        for s in &r.solutions {
            verify_solution(&sq, &region, &pieces, PlacementGroup::Rotations, s).unwrap();
        }
    }

    #[test]
    fn verification_catches_overlap() {
        let sq = builtin("square").unwrap();
        let region = generate_region(&sq, &RegionKind::Rect { w: 2, h: 1 }).unwrap();
        let pieces = PieceSet { pieces: vec![vec![Point::zero(2)]], multiplicity: Multiplicity::Unbounded };
        let p = Placement { piece: 0, orientation: 0, shift: Point::zero(2), cells: vec![Point::zero(2)] };
        let err = verify_solution(&sq, &region, &pieces, PlacementGroup::Rotations, &[p.clone(), p]).unwrap_err();
        assert!(err.contains("twice"), "{err}");
    }
}
