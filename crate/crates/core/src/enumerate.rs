//! Level-by-level growth of polyforms.
//!
//! Level `n + 1` is every canonical form of `P ∪ {q}` for `P` in level `n`
//! and `q` a neighbor of some cell of `P`. The baseline deduplicates all
//! children in a sharded hash set. The pruned mode instead keeps a child `C`
//! only when `P` is its canonical parent: the canonical form of `C` minus
//! the last cell of `C` whose removal leaves `C` connected. Every form then
//! has exactly one parent, so no global set is needed and subtrees can be
//! counted depth-first.

use std::fs::File;
use std::hash::{Hash, Hasher};
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;

use rustc_hash::{FxHashSet, FxHasher};
use serde::Serialize;

use crate::canonical::{CanonicalForm, SymmetryMode};
use crate::lattice::{Cell, Lattice, LatticeError};
use crate::tiling::TilingSpec;

const SHARDS: usize = 64;
const CHUNK: usize = 64;
const STREAM_BATCH: usize = 1 << 14;
/// Pruned counting switches from breadth-first to depth-first once the
/// frontier has this many forms.
const DFS_FRONTIER: usize = 256;
/// Estimated per-form bookkeeping on top of the key bytes.
const FORM_OVERHEAD: u64 = 48;

#[derive(Debug, Clone, Default)]
pub struct EnumerateOptions {
    /// Keep every level's forms in the result.
    pub retain_forms: bool,
    /// Canonical-parent generation instead of global deduplication.
    pub pruned: bool,
    /// Worker count; `None` uses all available cores.
    pub threads: Option<usize>,
    /// Write `{tiling}-{mode}-{n}.txt` per level into this directory.
    pub emit_path: Option<PathBuf>,
    /// Abort when the level being built is estimated to exceed this many bytes.
    pub memory_limit: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level {
    pub n: usize,
    pub forms: Option<Vec<CanonicalForm>>,
    pub count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelCount {
    pub n: usize,
    pub count: u64,
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub tiling: String,
    pub mode: SymmetryMode,
    pub counts: Vec<LevelCount>,
    pub partial: bool,
    pub level_millis: Vec<u64>,
    /// Largest estimated in-memory level, in bytes.
    pub peak_bytes: u64,
    pub levels: Vec<Level>,
    pub emitted: Vec<PathBuf>,
}

impl EnumerationResult {
    fn new(spec: &TilingSpec, mode: SymmetryMode) -> Self {
        EnumerationResult {
            tiling: spec.name().to_string(),
            mode,
            counts: Vec::new(),
            partial: false,
            level_millis: Vec::new(),
            peak_bytes: 0,
            levels: Vec::new(),
            emitted: Vec::new(),
        }
    }

    pub fn count_values(&self) -> Vec<u64> {
        self.counts.iter().map(|c| c.count).collect()
    }

    pub fn count(&self, n: usize) -> Option<u64> {
        self.counts.iter().find(|c| c.n == n).map(|c| c.count)
    }

    /// `n count` lines.
    pub fn to_text(&self) -> String {
        self.counts.iter().map(|c| format!("{} {}\n", c.n, c.count)).collect()
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            schema: u32,
            tiling: &'a str,
            mode: &'a str,
            counts: &'a [LevelCount],
            partial: bool,
            level_millis: &'a [u64],
            peak_bytes: u64,
        }
        serde_json::to_string_pretty(&Out {
            schema: 1,
            tiling: &self.tiling,
            mode: self.mode.as_str(),
            counts: &self.counts,
            partial: self.partial,
            level_millis: &self.level_millis,
            peak_bytes: self.peak_bytes,
        })
        .expect("serializable")
    }
}

#[derive(Debug, thiserror::Error)]
pub enum EnumerateError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("memory limit of {limit} bytes exceeded while building level {level}")]
    MemoryLimit { level: usize, limit: u64, partial: Box<EnumerationResult> },
    #[error("level {0} was built without retaining its forms")]
    FormsNotRetained(usize),
    #[error("thread pool: {0}")]
    ThreadPool(String),
    #[error("{path}:{line}: {msg}")]
    BadEmission { path: PathBuf, line: usize, msg: String },
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> EnumerateError + '_ {
    move |source| EnumerateError::Io { path: path.to_path_buf(), source }
}

#[derive(Default)]
struct Clock {
    #[cfg(not(target_arch = "wasm32"))]
    start: Option<std::time::Instant>,
}

impl Clock {
    fn start() -> Self {
        Clock {
            #[cfg(not(target_arch = "wasm32"))]
            start: Some(std::time::Instant::now()),
        }
    }

    fn millis(&self) -> u64 {
        #[cfg(not(target_arch = "wasm32"))]
        if let Some(s) = self.start {
            return s.elapsed().as_millis() as u64;
        }
        0
    }
}

#[cfg(feature = "parallel")]
fn map_chunks<R: Send>(data: &[i32], chunk: usize, f: impl Fn(&[i32]) -> R + Sync + Send) -> Vec<R> {
    use rayon::prelude::*;
    data.par_chunks(chunk.max(1)).map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_chunks<R: Send>(data: &[i32], chunk: usize, f: impl Fn(&[i32]) -> R + Sync + Send) -> Vec<R> {
    data.chunks(chunk.max(1)).map(f).collect()
}

fn with_threads<R: Send>(threads: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R, EnumerateError> {
    #[cfg(feature = "parallel")]
    if let Some(k) = threads {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| EnumerateError::ThreadPool(e.to_string()))?;
        return Ok(pool.install(f));
    }
    let _ = threads;
    Ok(f())
}

struct ShardedSet {
    shards: Vec<Mutex<FxHashSet<Box<[i32]>>>>,
    bytes: AtomicU64,
}

impl ShardedSet {
    fn new() -> Self {
        ShardedSet { shards: (0..SHARDS).map(|_| Mutex::new(FxHashSet::default())).collect(), bytes: AtomicU64::new(0) }
    }

    fn insert(&self, key: &[i32]) {
        let mut h = FxHasher::default();
        key.hash(&mut h);
        let mut shard = self.shards[(h.finish() >> 40) as usize % SHARDS].lock().expect("shard lock");
        if !shard.contains(key) {
            shard.insert(key.into());
            self.bytes.fetch_add(key.len() as u64 * 4 + FORM_OVERHEAD, Ordering::Relaxed);
        }
    }

    fn into_sorted(self) -> Vec<i32> {
        let mut keys: Vec<Box<[i32]>> = Vec::new();
        for s in self.shards {
            keys.extend(s.into_inner().expect("shard lock"));
        }
        keys.sort_unstable();
        keys.concat()
    }
}

/// Scratch buffers for one worker.
struct Work<const D: usize> {
    parent: Vec<Cell<D>>,
    cand: Vec<Cell<D>>,
    child: Vec<Cell<D>>,
    best: Vec<Cell<D>>,
    scratch: Vec<Cell<D>>,
    sub: Vec<Cell<D>>,
    nbuf: Vec<Cell<D>>,
    key: Vec<i32>,
}

impl<const D: usize> Work<D> {
    fn new() -> Self {
        Work {
            parent: Vec::new(),
            cand: Vec::new(),
            child: Vec::new(),
            best: Vec::new(),
            scratch: Vec::new(),
            sub: Vec::new(),
            nbuf: Vec::new(),
            key: Vec::new(),
        }
    }

    fn load(&mut self, key: &[i32]) {
        self.parent.clear();
        self.parent.extend(key.chunks_exact(D).map(|c| -> Cell<D> { c.try_into().expect("D coordinates") }));
    }
}

fn flatten<const D: usize>(cells: &[Cell<D>], out: &mut Vec<i32>) {
    out.clear();
    out.extend(cells.iter().flatten());
}

struct Engine<'a, const D: usize> {
    lat: &'a Lattice<D>,
    orients: &'a [usize],
}

impl<const D: usize> Engine<'_, D> {
    fn initial(&self) -> Vec<i32> {
        let (mut best, mut scratch) = (Vec::new(), Vec::new());
        let mut keys: Vec<Cell<D>> = self
            .lat
            .classes()
            .iter()
            .map(|c| {
                self.lat.canonicalize(&[c.residue], self.orients, &mut best, &mut scratch);
                best[0]
            })
            .collect();
        keys.sort_unstable();
        keys.dedup();
        keys.concat()
    }

    /// Distinct cells adjacent to `w.parent`, outside it.
    fn candidates(&self, w: &mut Work<D>) {
        w.cand.clear();
        for c in &w.parent {
            self.lat.neighbors_into(c, &mut w.cand);
        }
        let parent = &w.parent;
        w.cand.retain(|q| parent.binary_search(q).is_err());
        w.cand.sort_unstable();
        w.cand.dedup();
    }

    /// Canonical form of `w.parent ∪ {q}` into `w.best`.
    fn child(&self, w: &mut Work<D>, q: Cell<D>) {
        w.child.clear();
        w.child.extend_from_slice(&w.parent);
        w.child.push(q);
        self.lat.canonicalize(&w.child, self.orients, &mut w.best, &mut w.scratch);
    }

    fn baseline_children(&self, w: &mut Work<D>, mut emit: impl FnMut(&[i32])) {
        self.candidates(w);
        for i in 0..w.cand.len() {
            let q = w.cand[i];
            self.child(w, q);
            flatten(&w.best, &mut w.key);
            emit(&w.key);
        }
    }

    /// Children whose canonical parent is `w.parent` (which must be canonical).
    fn pruned_children(&self, w: &mut Work<D>) -> Vec<Vec<Cell<D>>> {
        self.candidates(w);
        let mut seen: FxHashSet<Vec<Cell<D>>> = FxHashSet::default();
        let mut out = Vec::new();
        for i in 0..w.cand.len() {
            let q = w.cand[i];
            self.child(w, q);
            if seen.contains(&w.best) {
                continue;
            }
            seen.insert(w.best.clone());
            let r = (0..w.best.len())
                .rev()
                .find(|&r| self.lat.connected_without(&w.best, Some(r), &mut w.nbuf))
                .expect("a connected form has a non-separating cell");
            w.sub.clear();
            w.sub.extend(w.best.iter().enumerate().filter(|&(j, _)| j != r).map(|(_, c)| *c));
            self.lat.canonicalize(&w.sub, self.orients, &mut w.child, &mut w.scratch);
            if w.child == w.parent {
                out.push(w.best.clone());
            }
        }
        out
    }

    fn pruned_count(&self, w: &mut Work<D>, n: usize, n_max: usize, counts: &mut [u64]) {
        let kids = self.pruned_children(w);
        counts[n] += kids.len() as u64;
        if n + 1 < n_max {
            for k in kids {
                w.parent = k;
                self.pruned_count(w, n + 1, n_max, counts);
            }
        }
    }

    /// One level: all distinct children of the parents in `data`, sorted.
    fn next_level(&self, data: &[i32], stride: usize, pruned: bool, limit: Option<u64>) -> Result<Vec<i32>, u64> {
        if pruned {
            let parts = map_chunks(data, stride * CHUNK, |chunk| {
                let mut w = Work::new();
                let mut out = Vec::new();
                for key in chunk.chunks_exact(stride) {
                    w.load(key);
                    for kid in self.pruned_children(&mut w) {
                        out.push(kid);
                    }
                }
                out
            });
            let mut kids: Vec<Vec<Cell<D>>> = parts.into_iter().flatten().collect();
            kids.sort_unstable();
            let bytes = kids.len() as u64 * ((stride + D) as u64 * 4 + FORM_OVERHEAD);
            if limit.is_some_and(|l| bytes > l) {
                return Err(bytes);
            }
            return Ok(kids.into_iter().flatten().flatten().collect());
        }
        let set = ShardedSet::new();
        let abort = AtomicBool::new(false);
        map_chunks(data, stride * CHUNK, |chunk| {
            if abort.load(Ordering::Relaxed) {
                return;
            }
            let mut w = Work::new();
            for key in chunk.chunks_exact(stride) {
                w.load(key);
                self.baseline_children(&mut w, |k| set.insert(k));
            }
            if limit.is_some_and(|l| set.bytes.load(Ordering::Relaxed) > l) {
                abort.store(true, Ordering::Relaxed);
            }
        });
        if abort.load(Ordering::Relaxed) {
            return Err(set.bytes.load(Ordering::Relaxed));
        }
        Ok(set.into_sorted())
    }
}

fn emission_name(spec: &TilingSpec, mode: SymmetryMode, n: usize) -> String {
    format!("{}-{}-{}.txt", spec.name(), mode, n)
}

fn write_level<const D: usize>(
    lat: &Lattice<D>,
    dir: &Path,
    spec: &TilingSpec,
    mode: SymmetryMode,
    n: usize,
    data: &[i32],
) -> Result<PathBuf, EnumerateError> {
    std::fs::create_dir_all(dir).map_err(io_err(dir))?;
    let path = dir.join(emission_name(spec, mode, n));
    let mut lines: Vec<String> = data.chunks_exact(n * D).map(|k| lat.format_key(k)).collect();
    lines.sort_unstable();
    let file = File::create(&path).map_err(io_err(&path))?;
    let mut w = BufWriter::new(file);
    let mut go = || -> std::io::Result<()> {
        writeln!(w, "# tiling {}", spec.name())?;
        writeln!(w, "# mode {mode}")?;
        writeln!(w, "# n {n}")?;
        for l in &lines {
            w.write_all(l.as_bytes())?;
            w.write_all(b"\n")?;
        }
        w.flush()
    };
    go().map_err(io_err(&path))?;
    Ok(path)
}

/// Form lines of an emission file, headers skipped.
pub fn read_emission(path: &Path) -> Result<Vec<String>, EnumerateError> {
    let file = File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line.map_err(io_err(path))?;
        let t = line.trim();
        if !t.is_empty() && !t.starts_with('#') {
            out.push(t.to_string());
        }
    }
    Ok(out)
}

fn to_forms<const D: usize>(
    lat: &Lattice<D>,
    spec: &TilingSpec,
    mode: SymmetryMode,
    n: usize,
    data: &[i32],
) -> Vec<CanonicalForm> {
    data.chunks_exact(n * D)
        .map(|k| {
            let cells = k.chunks_exact(D).map(|c| lat.to_point(c.try_into().expect("D coordinates"))).collect();
            CanonicalForm::from_canonical_cells(cells, mode, spec.name())
        })
        .collect()
}

enum Stop {
    Memory,
    Fail(EnumerateError),
}

struct Driver<'a, const D: usize> {
    spec: &'a TilingSpec,
    lat: &'a Lattice<D>,
    mode: SymmetryMode,
    opts: &'a EnumerateOptions,
    result: EnumerationResult,
}

impl<const D: usize> Driver<'_, D> {
    fn finish_level(&mut self, n: usize, data: &[i32], clock: &Clock) -> Result<(), EnumerateError> {
        let count = (data.len() / (n * D)) as u64;
        self.result.counts.push(LevelCount { n, count });
        self.result.level_millis.push(clock.millis());
        let bytes = count * ((n * D) as u64 * 4 + FORM_OVERHEAD);
        self.result.peak_bytes = self.result.peak_bytes.max(bytes);
        if let Some(dir) = &self.opts.emit_path {
            let p = write_level(self.lat, dir, self.spec, self.mode, n, data)?;
            self.result.emitted.push(p);
        }
        if self.opts.retain_forms {
            let forms = to_forms(self.lat, self.spec, self.mode, n, data);
            self.result.levels.push(Level { n, count, forms: Some(forms) });
        }
        Ok(())
    }

    fn limit_error(&mut self, level: usize) -> EnumerateError {
        let mut partial = std::mem::replace(&mut self.result, EnumerationResult::new(self.spec, self.mode));
        partial.partial = true;
        EnumerateError::MemoryLimit { level, limit: self.opts.memory_limit.unwrap_or(0), partial: Box::new(partial) }
    }

    fn run(mut self, n_max: usize) -> Result<EnumerationResult, EnumerateError> {
        if n_max == 0 {
            return Ok(self.result);
        }
        let engine = Engine { lat: self.lat, orients: self.lat.mode_orientations(self.mode) };
        let clock = Clock::start();
        let mut level = engine.initial();
        self.finish_level(1, &level, &clock)?;
        let stream = self.opts.emit_path.is_some() && !self.opts.retain_forms && !self.opts.pruned;
        let dfs = self.opts.pruned && !self.opts.retain_forms && self.opts.emit_path.is_none();
        let mut n = 1;
        while n < n_max {
            if dfs && level.len() / (n * D) >= DFS_FRONTIER {
                let counts = self.dfs_counts(&engine, &level, n, n_max);
                for (i, c) in counts.into_iter().enumerate().skip(n) {
                    self.result.counts.push(LevelCount { n: i + 1, count: c });
                    self.result.level_millis.push(clock.millis());
                }
                return Ok(self.result);
            }
            let clock = Clock::start();
            let next = if stream {
                let path = self.result.emitted.last().expect("previous level written").clone();
                drop(std::mem::take(&mut level));
                self.streamed_level(&engine, &path, n)
            } else {
                engine.next_level(&level, n * D, self.opts.pruned, self.opts.memory_limit).map_err(|_| Stop::Memory)
            };
            match next {
                Ok(next) => level = next,
                Err(Stop::Memory) => return Err(self.limit_error(n + 1)),
                Err(Stop::Fail(e)) => return Err(e),
            }
            n += 1;
            self.finish_level(n, &level, &clock)?;
        }
        Ok(self.result)
    }

    fn streamed_level(&self, engine: &Engine<'_, D>, path: &Path, n: usize) -> Result<Vec<i32>, Stop> {
        let set = ShardedSet::new();
        let file = File::open(path).map_err(|e| Stop::Fail(io_err(path)(e)))?;
        let mut batch: Vec<i32> = Vec::new();
        let mut lines = BufReader::new(file).lines().enumerate();
        loop {
            batch.clear();
            let mut done = true;
            for (i, line) in lines.by_ref() {
                let line = line.map_err(|e| Stop::Fail(io_err(path)(e)))?;
                if line.starts_with('#') || line.trim().is_empty() {
                    continue;
                }
                let key = self.lat.parse_key(&line).map_err(|e| {
                    Stop::Fail(EnumerateError::BadEmission {
                        path: path.to_path_buf(),
                        line: i + 1,
                        msg: e.to_string(),
                    })
                })?;
                batch.extend(key);
                if batch.len() >= STREAM_BATCH * n * D {
                    done = false;
                    break;
                }
            }
            map_chunks(&batch, n * D * CHUNK, |chunk| {
                let mut w = Work::new();
                for key in chunk.chunks_exact(n * D) {
                    w.load(key);
                    engine.baseline_children(&mut w, |k| set.insert(k));
                }
            });
            let bytes = set.bytes.load(Ordering::Relaxed);
            if self.opts.memory_limit.is_some_and(|l| bytes > l) {
                return Err(Stop::Memory);
            }
            if done {
                break;
            }
        }
        Ok(set.into_sorted())
    }

    fn dfs_counts(&self, engine: &Engine<'_, D>, frontier: &[i32], n: usize, n_max: usize) -> Vec<u64> {
        let parts = map_chunks(frontier, n * D, |key| {
            let mut counts = vec![0u64; n_max];
            let mut w = Work::new();
            w.load(key);
            engine.pruned_count(&mut w, n, n_max, &mut counts);
            counts
        });
        let mut total = vec![0u64; n_max];
        total[n - 1] = (frontier.len() / (n * D)) as u64;
        for p in parts {
            for (t, c) in total.iter_mut().zip(p) {
                *t += c;
            }
        }
        total
    }
}

/// Counts (and optionally forms) of `n`-polyforms for `n = 1..=n_max`.
pub fn enumerate_counts(
    spec: &TilingSpec,
    mode: SymmetryMode,
    n_max: usize,
    options: &EnumerateOptions,
) -> Result<EnumerationResult, EnumerateError> {
    let r = with_threads(options.threads, || {
        crate::with_lattice!(spec, n_max.max(1), |lat| {
            Driver { spec, lat: &lat, mode, opts: options, result: EnumerationResult::new(spec, mode) }.run(n_max)
        })
    })?;
    r?
}

/// The 1-polyforms: one canonical singleton per class of cells.
pub fn initial_level(spec: &TilingSpec, mode: SymmetryMode) -> Result<Level, EnumerateError> {
    let opts = EnumerateOptions { retain_forms: true, threads: Some(1), ..Default::default() };
    let mut r = enumerate_counts(spec, mode, 1, &opts)?;
    Ok(r.levels.remove(0))
}

/// The complete level `n + 1` from a complete, retained level `n`.
pub fn extend(spec: &TilingSpec, level: &Level, mode: SymmetryMode) -> Result<Level, EnumerateError> {
    let forms = level.forms.as_ref().ok_or(EnumerateError::FormsNotRetained(level.n))?;
    crate::with_lattice!(spec, level.n + 1, |lat| extend_with(&lat, spec, forms, level.n, mode))?
}

fn extend_with<const D: usize>(
    lat: &Lattice<D>,
    spec: &TilingSpec,
    forms: &[CanonicalForm],
    n: usize,
    mode: SymmetryMode,
) -> Result<Level, EnumerateError> {
    let engine = Engine { lat, orients: lat.mode_orientations(mode) };
    let mut data = Vec::with_capacity(forms.len() * n * D);
    for f in forms {
        for c in f.cells() {
            data.extend_from_slice(&lat.from_point(c)?);
        }
    }
    let next = engine.next_level(&data, n * D, false, None).expect("no limit");
    let forms = to_forms(lat, spec, mode, n + 1, &next);
    Ok(Level { n: n + 1, count: forms.len() as u64, forms: Some(forms) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::builtin;

    fn counts(name: &str, mode: SymmetryMode, n: usize, pruned: bool) -> Vec<u64> {
        let spec = builtin(name).unwrap();
        let opts = EnumerateOptions { pruned, ..Default::default() };
        enumerate_counts(&spec, mode, n, &opts).unwrap().count_values()
    }

    #[test]
    fn snub_levels() {
        let spec = builtin("snub-trihexagonal").unwrap();
        let l1 = initial_level(&spec, SymmetryMode::Free).unwrap();
        assert_eq!(l1.count, 3);
        assert_eq!(initial_level(&spec, SymmetryMode::Fixed).unwrap().count, 9);
        let l2 = extend(&spec, &l1, SymmetryMode::Free).unwrap();
        let names: Vec<String> = l2.forms.as_ref().unwrap().iter().map(|f| f.to_string()).collect();
        let mut expected = vec!["0,0;8/21,2/21", "2/21,11/21;1/3,1/3", "8/21,23/21;13/21,19/21"];
        expected.sort();
        let mut names = names;
        names.sort();
        assert_eq!(names, expected);
        assert_eq!(extend(&spec, &l2, SymmetryMode::Free).unwrap().count, 7);
    }

    #[test]
    fn small_counts() {
        assert_eq!(counts("snub-trihexagonal", SymmetryMode::Free, 5, false), vec![3, 3, 7, 23, 69]);
        assert_eq!(counts("cubic", SymmetryMode::Free, 5, false), vec![1, 1, 2, 7, 23]);
        assert_eq!(counts("square", SymmetryMode::Free, 6, false), vec![1, 1, 2, 5, 12, 35]);
        assert_eq!(counts("square", SymmetryMode::OneSided, 6, false), vec![1, 1, 2, 7, 18, 60]);
        assert_eq!(counts("square", SymmetryMode::Fixed, 6, false), vec![1, 2, 6, 19, 63, 216]);
    }

    #[test]
    fn pruned_matches_baseline() {
        for name in ["square", "snub-trihexagonal", "tet-oct"] {
            for mode in SymmetryMode::ALL {
                assert_eq!(counts(name, mode, 6, true), counts(name, mode, 6, false), "{name} {mode}");
            }
        }
    }

    #[test]
    fn degenerate_inputs() {
        let spec = builtin("cubic").unwrap();
        let r = enumerate_counts(&spec, SymmetryMode::Free, 0, &EnumerateOptions::default()).unwrap();
        assert!(r.counts.is_empty());
        let lonely =
            spec.with_orbits(vec![crate::tiling::OrbitSpec { neighbor_points: vec![], ..spec.orbits()[0].clone() }]);
        let r = enumerate_counts(&lonely, SymmetryMode::Free, 4, &EnumerateOptions::default()).unwrap();
        assert_eq!(r.count_values(), vec![1, 0, 0, 0]);
        let level = Level { n: 1, forms: None, count: 1 };
        assert!(matches!(extend(&spec, &level, SymmetryMode::Free), Err(EnumerateError::FormsNotRetained(1))));
    }

    #[test]
    fn memory_limit_keeps_partial_counts() {
        let spec = builtin("square").unwrap();
        let opts = EnumerateOptions { memory_limit: Some(2000), ..Default::default() };
        match enumerate_counts(&spec, SymmetryMode::Fixed, 8, &opts) {
            Err(EnumerateError::MemoryLimit { level, partial, .. }) => {
                assert!(partial.partial);
                assert_eq!(partial.counts.len(), level - 1);
                assert_eq!(partial.count_values(), vec![1, 2, 6, 19, 63][..level - 1].to_vec());
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn json_has_schema() {
        let spec = builtin("square").unwrap();
        let r = enumerate_counts(&spec, SymmetryMode::Free, 3, &EnumerateOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["mode"], "free");
        assert_eq!(v["counts"][2]["count"], 2);
        assert_eq!(v["partial"], false);
        assert_eq!(r.to_text(), "1 1\n2 1\n3 2\n");
    }
}
