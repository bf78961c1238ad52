use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{checks, unimodular_violation, TilingError, TilingSpec};
use crate::exact::Point;

pub const DEFAULT_RADIUS: usize = 4;

/// Failures beyond this many per check are counted but not listed.
const MAX_LISTED: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub failures: Vec<String>,
    pub failure_count: usize,
}

impl CheckResult {
    fn new(name: &'static str) -> Self {
        CheckResult { name, passed: true, failures: Vec::new(), failure_count: 0 }
    }

    fn fail(&mut self, msg: String) {
        self.passed = false;
        self.failure_count += 1;
        if self.failures.len() < MAX_LISTED {
            self.failures.push(msg);
        }
    }
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub tiling: String,
    pub radius: usize,
    pub patch_cells: usize,
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failing(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tiling {} (radius {}, {} patch cells)", self.tiling, self.radius, self.patch_cells)?;
        for c in &self.checks {
            writeln!(f, "{:<6} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            for msg in &c.failures {
                writeln!(f, "       {msg}")?;
            }
            if c.failure_count > c.failures.len() {
                writeln!(f, "       ... {} more", c.failure_count - c.failures.len())?;
            }
        }
        Ok(())
    }
}

/// Runs every well-formedness check on a patch of graph radius `radius`
/// around the orbit representatives.
pub fn validate(spec: &TilingSpec, radius: usize) -> Result<ValidationReport, TilingError> {
    if radius == 0 {
        return Err(TilingError::BadRadius);
    }
    let mut out = vec![closure(spec), unimodular(spec)];

    // BFS patch: distance from the nearest representative.
    let mut totality = CheckResult::new(checks::TOTALITY);
    let mut dist: BTreeMap<Point, usize> = BTreeMap::new();
    let mut frontier: Vec<Point> = spec.orbits().iter().map(|o| o.rep.clone()).collect();
    for p in &frontier {
        dist.insert(p.clone(), 0);
    }
    for d in 0..radius {
        let mut next = Vec::new();
        for p in &frontier {
            let Some(class) = spec.classify_one(p) else { continue };
            for q in spec.neighbors_via(&class) {
                if dist.contains_key(&q) {
                    continue;
                }
                if !spec.is_cell(&q) {
                    totality.fail(format!("{q} (neighbor of {p}) does not classify"));
                }
                dist.insert(q.clone(), d + 1);
                next.push(q);
            }
        }
        frontier = next;
    }
    for o in spec.orbits() {
        if !spec.is_cell(&o.rep) {
            totality.fail(format!("representative {} does not classify", o.rep));
        }
    }
    out.push(totality);

    let mut symmetry = CheckResult::new(checks::ADJACENCY_SYMMETRY);
    let mut stabilizer = CheckResult::new(checks::STABILIZER_CONSISTENCY);
    for (p, &d) in &dist {
        let classes = spec.classify(p);
        let Some(first) = classes.first() else { continue };
        let base = spec.neighbors_via(first);
        for c in &classes[1..] {
            if spec.neighbors_via(c) != base {
                stabilizer.fail(format!(
                    "{p}: neighbors via orbit {} orientation {} differ from orbit {} orientation {}",
                    first.orbit, first.orientation, c.orbit, c.orientation
                ));
            }
        }
        if d >= radius {
            continue;
        }
        for q in &base {
            let back = spec.neighbors(q).map(|n| n.binary_search(p).is_ok()).unwrap_or(false);
            if !back {
                symmetry.fail(format!("{q} is a neighbor of {p} but not conversely"));
            }
        }
    }
    out.push(symmetry);
    out.push(stabilizer);

    let mut minimal = CheckResult::new(checks::REPRESENTATIVE_MINIMALITY);
    for (i, o) in spec.orbits().iter().enumerate() {
        let earliest =
            dist.keys().filter(|p| p.is_nonnegative()).find(|p| spec.classify(p).iter().any(|c| c.orbit == i));
        if let Some(e) = earliest {
            if e < &o.rep {
                minimal.fail(format!("orbit {}: {} precedes representative {}", o.id, e, o.rep));
            }
        }
    }
    out.push(minimal);

    let mut distinct = CheckResult::new(checks::ORBIT_DISTINCTNESS);
    for (i, o) in spec.orbits().iter().enumerate() {
        let others: BTreeSet<usize> = spec.classify(&o.rep).iter().map(|c| c.orbit).filter(|&j| j != i).collect();
        for j in others {
            distinct.fail(format!("orbits {} and {} share the cell {}", o.id, spec.orbits()[j].id, o.rep));
        }
    }
    out.push(distinct);

    Ok(ValidationReport { tiling: spec.name().to_string(), radius, patch_cells: dist.len(), checks: out })
}

fn closure(spec: &TilingSpec) -> CheckResult {
    let mut r = CheckResult::new(checks::CLOSURE);
    let os = spec.orientations();
    let find = |m: &crate::exact::AffineMap| os.iter().position(|o| o.equiv_mod_lattice(m));
    for (j, a) in os.iter().enumerate() {
        for (k, b) in os.iter().enumerate() {
            let Ok(ab) = a.compose(b) else {
                r.fail(format!("orientations {j} and {k} have different dimensions"));
                continue;
            };
            if find(&ab).is_none() {
                r.fail(format!("orientation {j} composed with {k} has no representative"));
            }
        }
        match a.inverse() {
            Ok(inv) if find(&inv).is_some() => {}
            _ => r.fail(format!("inverse of orientation {j} has no representative")),
        }
    }
    for j in 0..os.len() {
        for k in 0..j {
            if os[j].equiv_mod_lattice(&os[k]) {
                r.fail(format!("orientations {k} and {j} are the same coset"));
            }
        }
    }
    r
}

fn unimodular(spec: &TilingSpec) -> CheckResult {
    let mut r = CheckResult::new(checks::UNIMODULAR);
    for (k, o) in spec.orientations().iter().enumerate() {
        if let Some(reason) = unimodular_violation(o) {
            r.fail(format!("orientation {k}: {reason}"));
        }
    }
    r
}
