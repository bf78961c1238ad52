//! OEIS b-files and comparison against computed counts.
//!
//! A b-file is plain text: blank lines and lines starting with `#` are
//! ignored, every other line is `index value`.

use std::fmt;

use num_bigint::BigUint;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BFileError {
    #[error("bad sequence id {0:?} (expected A followed by six digits)")]
    BadId(String),
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error("counts: line {line}: {msg}")]
    Counts { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BFile {
    pub id: String,
    pub entries: Vec<(u64, BigUint)>,
}

pub fn check_id(id: &str) -> Result<(), BFileError> {
    let ok = id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(BFileError::BadId(id.to_string()))
    }
}

impl BFile {
    pub fn parse(id: &str, text: &str) -> Result<BFile, BFileError> {
        let mut entries: Vec<(u64, BigUint)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| BFileError::Line { line: i + 1, msg };
            let mut parts = line.split_whitespace();
            let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(format!("expected `index value`, found {line:?}")));
            };
            let index: u64 = a.parse().map_err(|_| err(format!("bad index {a:?}")))?;
            let value: BigUint = b.parse().map_err(|_| err(format!("bad value {b:?}")))?;
            if entries.last().is_some_and(|(prev, _)| *prev >= index) {
                return Err(err(format!("index {index} is not increasing")));
            }
            entries.push((index, value));
        }
        Ok(BFile { id: id.to_string(), entries })
    }

    pub fn get(&self, index: u64) -> Option<&BigUint> {
        self.entries.binary_search_by_key(&index, |(i, _)| *i).ok().map(|k| &self.entries[k].1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch {
        ours: u64,
        theirs: BigUint,
    },
    /// Computed but absent from the b-file.
    Missing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub id: String,
    pub rows: Vec<(u64, Status)>,
}

impl CompareReport {
    pub fn overlap(&self) -> usize {
        self.rows.iter().filter(|(_, s)| *s != Status::Missing).count()
    }

    /// True iff every overlapping index matches.
    pub fn matches(&self) -> bool {
        self.rows.iter().all(|(_, s)| !matches!(s, Status::Mismatch { .. }))
    }

    pub fn mismatches(&self) -> Vec<u64> {
        self.rows.iter().filter(|(_, s)| matches!(s, Status::Mismatch { .. })).map(|(n, _)| *n).collect()
    }
}

impl fmt::Display for CompareReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, s) in &self.rows {
            match s {
                Status::Match => writeln!(f, "{n} match")?,
                Status::Mismatch { ours, theirs } => {
                    writeln!(f, "{n} MISMATCH computed {ours}, {} has {theirs}", self.id)?
                }
                Status::Missing => writeln!(f, "{n} missing from {}", self.id)?,
            }
        }
        let verdict = if self.overlap() == 0 {
            "nothing to compare"
        } else if self.matches() {
            "match"
        } else {
            "mismatch"
        };
        writeln!(f, "verdict: {verdict}")
    }
}

pub fn compare(counts: &[(u64, u64)], bfile: &BFile) -> CompareReport {
    let rows = counts
        .iter()
        .map(|&(n, ours)| {
            let status = match bfile.get(n) {
                None => Status::Missing,
                Some(v) if *v == BigUint::from(ours) => Status::Match,
                Some(v) => Status::Mismatch { ours, theirs: v.clone() },
            };
            (n, status)
        })
        .collect();
    CompareReport { id: bfile.id.clone(), rows }
}

/// Reads counts as printed by `enumerate`: `n count` lines or the JSON form.
pub fn parse_counts(text: &str) -> Result<Vec<(u64, u64)>, BFileError> {
    let t = text.trim_start();
    if t.starts_with('{') {
        let v: serde_json::Value =
            serde_json::from_str(t).map_err(|e| BFileError::Counts { line: e.line(), msg: e.to_string() })?;
        let bad = |msg: &str| BFileError::Counts { line: 0, msg: msg.to_string() };
        let rows = v.get("counts").and_then(|c| c.as_array()).ok_or_else(|| bad("missing counts array"))?;
        return rows
            .iter()
            .map(|r| {
                let n = r.get("n").and_then(|x| x.as_u64()).ok_or_else(|| bad("count entry without n"))?;
                let c = r.get("count").and_then(|x| x.as_u64()).ok_or_else(|| bad("count entry without count"))?;
                Ok((n, c))
            })
            .collect();
    }
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = || BFileError::Counts { line: i + 1, msg: format!("expected `n count`, found {line:?}") };
        let mut parts = line.split_whitespace();
        let n = parts.next().and_then(|x| x.parse().ok()).ok_or_else(err)?;
        let c = parts.next().and_then(|x| x.parse().ok()).ok_or_else(err)?;
        out.push((n, c));
    }
    Ok(out)
}
