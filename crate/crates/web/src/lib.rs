//! Browser bindings: counts, a gallery of 2D forms and canonical names.

use polyforms::canonical::parse_cells;
use polyforms::export::gallery_svg;
use polyforms::tiling::BUILTIN_NAMES;
use polyforms::{builtin, canonical_form, enumerate_counts, EnumerateOptions, SymmetryMode, TilingSpec};
use wasm_bindgen::prelude::*;

/// Larger galleries are truncated to keep the page responsive.
pub const GALLERY_MAX: usize = 400;
/// Largest n the page will enumerate.
pub const MAX_N: usize = 9;

fn spec_mode(tiling: &str, mode: &str) -> Result<(TilingSpec, SymmetryMode), String> {
    let spec = builtin(tiling).map_err(|e| e.to_string())?;
    let mode = mode.parse().map_err(|e: polyforms::canonical::CanonicalError| e.to_string())?;
    Ok((spec, mode))
}

/// `n count` lines for `n = 1..=max_n`.
pub fn counts_text(tiling: &str, mode: &str, max_n: usize) -> Result<String, String> {
    if max_n > MAX_N {
        return Err(format!("n is capped at {MAX_N} in the browser"));
    }
    let (spec, mode) = spec_mode(tiling, mode)?;
    let r = enumerate_counts(&spec, mode, max_n, &EnumerateOptions::default()).map_err(|e| e.to_string())?;
    Ok(r.to_text())
}

/// SVG gallery of every `n`-form, captioned with canonical names.
pub fn gallery(tiling: &str, mode: &str, n: usize, columns: usize) -> Result<String, String> {
    if n == 0 || n > MAX_N {
        return Err(format!("n must be between 1 and {MAX_N}"));
    }
    let (spec, mode) = spec_mode(tiling, mode)?;
    let opts = EnumerateOptions { retain_forms: true, ..Default::default() };
    let r = enumerate_counts(&spec, mode, n, &opts).map_err(|e| e.to_string())?;
    let forms = r.levels.into_iter().last().and_then(|l| l.forms).unwrap_or_default();
    let named: Vec<(String, Vec<polyforms::Point>)> =
        forms.into_iter().take(GALLERY_MAX).map(|f| (f.to_string(), f.into_cells())).collect();
    gallery_svg(&spec, &named, columns).map_err(|e| e.to_string())
}

/// Canonical name of a `;`-separated cell list.
pub fn canonical_name(tiling: &str, mode: &str, form: &str) -> Result<String, String> {
    let (spec, mode) = spec_mode(tiling, mode)?;
    let cells = parse_cells(form).map_err(|e| e.to_string())?;
    canonical_form(&spec, &cells, mode).map(|f| f.to_string()).map_err(|e| e.to_string())
}

/// Built-in tilings with their dimension, as `name dim` lines.
pub fn tilings_text() -> String {
    BUILTIN_NAMES.iter().map(|n| format!("{n} {}\n", builtin(n).map(|s| s.dim()).unwrap_or(0))).collect()
}

#[wasm_bindgen]
pub fn counts(tiling: &str, mode: &str, max_n: usize) -> Result<String, JsError> {
    counts_text(tiling, mode, max_n).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = gallerySvg)]
pub fn gallery_svg_js(tiling: &str, mode: &str, n: usize, columns: usize) -> Result<String, JsError> {
    gallery(tiling, mode, n, columns).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn canonicalize(tiling: &str, mode: &str, form: &str) -> Result<String, JsError> {
    canonical_name(tiling, mode, form).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn tilings() -> String {
    tilings_text()
}
