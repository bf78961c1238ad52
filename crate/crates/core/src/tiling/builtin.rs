use std::path::Path;

use super::{parse_tiling, TilingError, TilingSpec};

pub const BUILTIN_NAMES: [&str; 7] =
    ["square", "cubic", "snub-trihexagonal", "tet-oct", "rectified-cubic", "truncated-octahedral", "disphenoid"];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "square" => include_str!("../../tilings/square.json"),
        "cubic" => include_str!("../../tilings/cubic.json"),
        "snub-trihexagonal" => include_str!("../../tilings/snub-trihexagonal.json"),
        "tet-oct" => include_str!("../../tilings/tet-oct.json"),
        "rectified-cubic" => include_str!("../../tilings/rectified-cubic.json"),
        "truncated-octahedral" => include_str!("../../tilings/truncated-octahedral.json"),
        "disphenoid" => include_str!("../../tilings/disphenoid.json"),
        _ => return None,
    })
}

/// A shipped tiling by name.
pub fn builtin(name: &str) -> Result<TilingSpec, TilingError> {
    let text = source(name).ok_or_else(|| TilingError::UnknownBuiltin(name.to_string()))?;
    parse_tiling(text.as_bytes())
}

/// A built-in name, or else a path to a tiling file.
pub fn load_tiling(name_or_path: &str) -> Result<TilingSpec, TilingError> {
    if source(name_or_path).is_some() {
        return builtin(name_or_path);
    }
    let path = Path::new(name_or_path);
    if !path.exists() {
        return Err(TilingError::UnknownBuiltin(name_or_path.to_string()));
    }
    let file =
        std::fs::File::open(path).map_err(|source| TilingError::Io { path: name_or_path.to_string(), source })?;
    parse_tiling(std::io::BufReader::new(file))
}
