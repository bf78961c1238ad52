//! Cache-first b-file client.

use std::path::{Path, PathBuf};

use polyforms::bfile::{check_id, BFile, BFileError};

pub const CACHE_ENV: &str = "POLYFORMS_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error(transparent)]
    BFile(#[from] BFileError),
    #[error("{id} is not cached in {dir} and --offline was given")]
    OfflineMiss { id: String, dir: PathBuf },
    #[error("GET {url}: HTTP {status}")]
    Status { url: String, status: u16 },
    #[error("GET {url}: {msg}")]
    Transport { url: String, msg: String },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

/// `$POLYFORMS_CACHE_DIR`, else `$XDG_CACHE_HOME/polyforms`, else
/// `~/.cache/polyforms`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(d) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(d);
    }
    if let Some(d) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(d).join("polyforms");
    }
    let home = std::env::var_os("HOME").map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
    home.join(".cache").join("polyforms")
}

pub fn cache_file(dir: &Path, id: &str) -> PathBuf {
    dir.join(format!("b{}.txt", &id[1..]))
}

pub fn bfile_url(id: &str) -> String {
    format!("https://oeis.org/{id}/b{}.txt", &id[1..])
}

pub fn fetch_bfile(id: &str, cache_dir: &Path, offline: bool) -> Result<BFile, FetchError> {
    check_id(id)?;
    let path = cache_file(cache_dir, id);
    if let Ok(text) = std::fs::read_to_string(&path) {
        return Ok(BFile::parse(id, &text)?);
    }
    if offline {
        return Err(FetchError::OfflineMiss { id: id.to_string(), dir: cache_dir.to_path_buf() });
    }
    let url = bfile_url(id);
    let body = match ureq::get(&url).call() {
        Ok(resp) => resp.into_string().map_err(|e| FetchError::Transport { url: url.clone(), msg: e.to_string() })?,
        Err(ureq::Error::Status(status, _)) => return Err(FetchError::Status { url, status }),
        Err(e) => return Err(FetchError::Transport { url, msg: e.to_string() }),
    };
    let parsed = BFile::parse(id, &body)?;
    let io = |source| FetchError::Io { path: path.clone(), source };
    std::fs::create_dir_all(cache_dir).map_err(io)?;
    std::fs::write(&path, &body).map_err(io)?;
    Ok(parsed)
}
