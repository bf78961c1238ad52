//! Integer engine behind enumeration.
//!
//! All cell coordinates of a tiling share a common denominator `S` (the lcm
//! of the denominators of representatives, neighbor points and orientation
//! offsets), so cells are stored as `[i32; D]` holding `S · x`. The integer
//! order is the rational order, and per-axis floor shifts become shifts by
//! multiples of `S`, so canonical keys computed here are exactly the exact
//! canonical forms scaled by `S`.
//!
//! The translation class of a cell is its residue mod `S`; a dense table maps
//! residues to classes, and each class stores its neighbors as step vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::canonical::SymmetryMode;
use crate::exact::{Point, Rat};
use crate::tiling::{TilingError, TilingSpec};

pub const MAX_DIM: usize = 4;
const MAX_TABLE: u64 = 1 << 24;
const NO_CLASS: u32 = u32::MAX;

#[derive(Debug, thiserror::Error)]
pub enum LatticeError {
    #[error("dimension {0} is not supported by the integer engine (at most {MAX_DIM})")]
    Dimension(usize),
    #[error("common denominator {0} is too large for the integer engine")]
    Scale(BigInt),
    #[error("coordinates of {0}-cell forms could overflow 32-bit integers")]
    Overflow(usize),
    #[error(transparent)]
    Tiling(#[from] TilingError),
    #[error("cell {0} is not a multiple of 1/{1}")]
    OffGrid(String, i64),
}

pub type Cell<const D: usize> = [i32; D];

#[derive(Debug, Clone)]
struct Orient<const D: usize> {
    linear: [[i32; D]; D],
    offset: [i32; D],
}

#[derive(Debug, Clone)]
pub struct Class<const D: usize> {
    pub residue: Cell<D>,
    pub orbit: usize,
    pub steps: Vec<Cell<D>>,
}

#[derive(Debug, Clone)]
pub struct Lattice<const D: usize> {
    scale: i32,
    table: Vec<u32>,
    classes: Vec<Class<D>>,
    orients: Vec<Orient<D>>,
    free: Vec<usize>,
    one_sided: Vec<usize>,
}

fn lcm_into(acc: &mut BigInt, r: &Rat) {
    *acc = acc.lcm(r.denom());
}

fn scale_of(spec: &TilingSpec) -> BigInt {
    let mut s = BigInt::one();
    for o in spec.orbits() {
        for r in o.rep.coords().iter().chain(o.neighbor_points.iter().flat_map(|p| p.coords())) {
            lcm_into(&mut s, r);
        }
    }
    for g in spec.orientations() {
        for r in g.offset().coords() {
            lcm_into(&mut s, r);
        }
    }
    s
}

impl<const D: usize> Lattice<D> {
    /// Builds the engine; forms of up to `max_cells` cells are guaranteed
    /// not to overflow.
    pub fn new(spec: &TilingSpec, max_cells: usize) -> Result<Self, LatticeError> {
        if spec.dim() != D {
            return Err(LatticeError::Dimension(spec.dim()));
        }
        let big = scale_of(spec);
        let scale = big.to_i32().filter(|&s| (s as u64).pow(D as u32) <= MAX_TABLE).ok_or(LatticeError::Scale(big))?;

        let mut orients = Vec::new();
        for g in spec.orientations() {
            let mut linear = [[0i32; D]; D];
            for (i, row) in g.rows().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    linear[i][j] = x.to_i64().and_then(|v| i32::try_from(v).ok()).ok_or(LatticeError::Overflow(0))?;
                }
            }
            let offset = scaled(g.offset(), scale)?;
            orients.push(Orient { linear, offset });
        }

        let mut table = vec![NO_CLASS; (scale as usize).pow(D as u32)];
        let mut classes = Vec::new();
        for (p, orbit) in spec.translation_classes() {
            let residue = scaled(&p, scale)?;
            let mut steps = Vec::new();
            for q in spec.neighbors(&p)? {
                let q: Cell<D> = scaled(&q, scale)?;
                let mut s = [0i32; D];
                for j in 0..D {
                    s[j] = q[j] - residue[j];
                }
                steps.push(s);
            }
            table[index(&residue, scale)] = classes.len() as u32;
            classes.push(Class { residue, orbit, steps });
        }

        let lat = Lattice {
            scale,
            table,
            classes,
            free: spec.mode_orientations(SymmetryMode::Free),
            one_sided: spec.mode_orientations(SymmetryMode::OneSided),
            orients,
        };
        lat.check_overflow(max_cells)?;
        for c in &lat.classes {
            for s in &c.steps {
                let mut q = c.residue;
                add(&mut q, s);
                if lat.class_of(&q).is_none() {
                    let n = Point::new(q.iter().map(|&v| Rat::new(v as i64, scale as i64)).collect());
                    return Err(TilingError::NotACell(n).into());
                }
            }
        }
        Ok(lat)
    }

    fn check_overflow(&self, max_cells: usize) -> Result<(), LatticeError> {
        let step = self
            .classes
            .iter()
            .flat_map(|c| &c.steps)
            .flat_map(|s| s.iter())
            .map(|v| v.unsigned_abs() as u64)
            .max()
            .unwrap_or(0);
        let span = self.scale as u64 + step * max_cells as u64;
        let row = self
            .orients
            .iter()
            .flat_map(|o| o.linear.iter())
            .map(|r| r.iter().map(|v| v.unsigned_abs() as u64).sum::<u64>())
            .max()
            .unwrap_or(1);
        let bound = row.saturating_mul(span).saturating_add(self.scale as u64).saturating_mul(2);
        if bound >= (i32::MAX / 4) as u64 {
            return Err(LatticeError::Overflow(max_cells));
        }
        Ok(())
    }

    pub fn scale(&self) -> i32 {
        self.scale
    }

    pub fn classes(&self) -> &[Class<D>] {
        &self.classes
    }

    pub fn orientation_count(&self) -> usize {
        self.orients.len()
    }

    pub fn mode_orientations(&self, mode: SymmetryMode) -> &[usize] {
        match mode {
            SymmetryMode::Free => &self.free,
            SymmetryMode::OneSided => &self.one_sided,
            SymmetryMode::Fixed => &self.free[..1],
        }
    }

    #[inline]
    pub fn class_of(&self, c: &Cell<D>) -> Option<&Class<D>> {
        let mut r = [0i32; D];
        for j in 0..D {
            r[j] = c[j].rem_euclid(self.scale);
        }
        match self.table[index(&r, self.scale)] {
            NO_CLASS => None,
            k => Some(&self.classes[k as usize]),
        }
    }

    /// Neighbors of a cell, appended to `out`. The cell must be valid.
    #[inline]
    pub fn neighbors_into(&self, c: &Cell<D>, out: &mut Vec<Cell<D>>) {
        let class = self.class_of(c).expect("cell of the tiling");
        for s in &class.steps {
            let mut q = *c;
            add(&mut q, s);
            out.push(q);
        }
    }

    #[inline]
    pub fn apply(&self, k: usize, c: &Cell<D>) -> Cell<D> {
        let o = &self.orients[k];
        let mut out = o.offset;
        for (v, row) in out.iter_mut().zip(&o.linear) {
            for (a, x) in row.iter().zip(c) {
                *v += a * x;
            }
        }
        out
    }

    /// Per-axis shift so each minimum lies in `[0, S)`, then sort.
    #[inline]
    pub fn normalize(&self, cells: &mut [Cell<D>]) {
        let mut mins = [i32::MAX; D];
        for c in cells.iter() {
            for j in 0..D {
                mins[j] = mins[j].min(c[j]);
            }
        }
        for m in &mut mins {
            *m = m.div_euclid(self.scale) * self.scale;
        }
        for c in cells.iter_mut() {
            for j in 0..D {
                c[j] -= mins[j];
            }
        }
        cells.sort_unstable();
    }

    /// Canonical cell list of `cells` under the given orientations, written
    /// to `best`. `scratch` is working space.
    pub fn canonicalize(
        &self,
        cells: &[Cell<D>],
        orients: &[usize],
        best: &mut Vec<Cell<D>>,
        scratch: &mut Vec<Cell<D>>,
    ) {
        best.clear();
        for (i, &k) in orients.iter().enumerate() {
            scratch.clear();
            scratch.extend(cells.iter().map(|c| self.apply(k, c)));
            self.normalize(scratch);
            if i == 0 || scratch.as_slice() < best.as_slice() {
                std::mem::swap(best, scratch);
            }
        }
    }

    /// Whether `cells` (sorted) is connected, ignoring the cell at `skip`.
    pub fn connected_without(&self, cells: &[Cell<D>], skip: Option<usize>, buf: &mut Vec<Cell<D>>) -> bool {
        let n = cells.len() - usize::from(skip.is_some());
        if n <= 1 {
            return true;
        }
        let mut seen = [false; 64];
        assert!(cells.len() <= 64, "forms are limited to 64 cells");
        let start = if skip == Some(0) { 1 } else { 0 };
        let mut stack = [0usize; 64];
        let mut top = 1;
        stack[0] = start;
        seen[start] = true;
        let mut reached = 1;
        while top > 0 {
            top -= 1;
            let i = stack[top];
            buf.clear();
            self.neighbors_into(&cells[i], buf);
            for q in buf.iter() {
                if let Ok(j) = cells.binary_search(q) {
                    if Some(j) != skip && !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        stack[top] = j;
                        top += 1;
                    }
                }
            }
        }
        reached == n
    }

    pub fn to_point(&self, c: &Cell<D>) -> Point {
        Point::new(c.iter().map(|&v| Rat::new(v as i64, self.scale as i64)).collect())
    }

    pub fn from_point(&self, p: &Point) -> Result<Cell<D>, LatticeError> {
        if p.dim() != D {
            return Err(LatticeError::Dimension(p.dim()));
        }
        scaled(p, self.scale)
    }

    /// Text form of one cell, matching `Point`'s display.
    pub fn write_cell(&self, c: &Cell<D>, out: &mut String) {
        use std::fmt::Write;
        for (j, &v) in c.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            let g = (v as i64).gcd(&(self.scale as i64));
            let (n, d) = (v as i64 / g, self.scale as i64 / g);
            if d == 1 {
                write!(out, "{n}").unwrap();
            } else {
                write!(out, "{n}/{d}").unwrap();
            }
        }
    }

    pub fn format_key(&self, key: &[i32]) -> String {
        let mut s = String::with_capacity(key.len() * 5);
        for (i, c) in key.chunks_exact(D).enumerate() {
            if i > 0 {
                s.push(';');
            }
            self.write_cell(c.try_into().expect("chunk of D"), &mut s);
        }
        s
    }

    /// Parses the text form back to a flat key. No canonicality check.
    pub fn parse_key(&self, s: &str) -> Result<Vec<i32>, LatticeError> {
        let mut out = Vec::new();
        for cell in s.trim().split(';') {
            let p: Point = cell.parse().map_err(|_| LatticeError::OffGrid(cell.to_string(), self.scale as i64))?;
            out.extend_from_slice(&self.from_point(&p)?);
        }
        Ok(out)
    }
}

#[inline]
fn add<const D: usize>(a: &mut Cell<D>, b: &Cell<D>) {
    for j in 0..D {
        a[j] += b[j];
    }
}

#[inline]
fn index<const D: usize>(r: &Cell<D>, scale: i32) -> usize {
    let mut i = 0usize;
    for j in (0..D).rev() {
        i = i * scale as usize + r[j] as usize;
    }
    i
}

fn scaled<const D: usize>(p: &Point, scale: i32) -> Result<Cell<D>, LatticeError> {
    let mut out = [0i32; D];
    let s = BigInt::from(scale);
    for (j, r) in p.coords().iter().enumerate() {
        let (q, rem) = (r.numer() * &s).div_rem(r.denom());
        if !rem.is_zero() {
            return Err(LatticeError::OffGrid(p.to_string(), scale as i64));
        }
        out[j] = q.to_i32().filter(|v| v.abs() < i32::MAX / 4).ok_or_else(|| LatticeError::Scale(q.abs()))?;
    }
    Ok(out)
}

/// Runs `$body` with `$lat` bound to a `Lattice<D>` for the spec's dimension.
#[macro_export]
#[doc(hidden)]
macro_rules! with_lattice {
    ($spec:expr, $max:expr, |$lat:ident| $body:expr) => {{
        use $crate::lattice::{Lattice, LatticeError};
        match $spec.dim() {
            1 => Lattice::<1>::new($spec, $max).map(|$lat| $body),
            2 => Lattice::<2>::new($spec, $max).map(|$lat| $body),
            3 => Lattice::<3>::new($spec, $max).map(|$lat| $body),
            4 => Lattice::<4>::new($spec, $max).map(|$lat| $body),
            d => Err(LatticeError::Dimension(d)),
        }
    }};
}
