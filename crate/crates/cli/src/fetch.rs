//! Dataset registry and download cache.
//!
//! Archives come from KONECT as `.tar.bz2` bundles holding an `out.<name>`
//! edge list. The extracted list is normalized to `u<TAB>v` lines and
//! stored as `<cache>/<dataset>.tsv`, next to a `.sha256` sidecar. A pinned
//! digest in the registry is enforced when present; otherwise the first
//! download records the digest and every later load must match it.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug)]
pub struct Dataset {
    pub name: &'static str,
    /// KONECT internal network name.
    pub konect: &'static str,
    pub description: &'static str,
    /// Expected sha256 of the normalized edge list, when known.
    pub sha256: Option<&'static str>,
}

pub const REGISTRY: &[Dataset] = &[
    Dataset {
        name: "condmat",
        konect: "opsahl-collaboration",
        description: "author-paper network, arXiv cond-mat 1995-1999",
        sha256: None,
    },
    Dataset {
        name: "github",
        konect: "github",
        description: "user-repository membership on GitHub",
        sha256: None,
    },
    Dataset {
        name: "marvel",
        konect: "marvel",
        description: "Marvel character-comic book appearances",
        sha256: None,
    },
];

#[derive(Debug, thiserror::Error)]
pub enum FetchError {
    #[error("unknown dataset '{name}'; known datasets: {}", known.join(", "))]
    UnknownDataset { name: String, known: Vec<&'static str> },
    #[error("download of {url} failed: {message}")]
    Network { url: String, message: String },
    #[error("archive for {dataset} is malformed: {message}")]
    Archive { dataset: String, message: String },
    #[error("checksum mismatch for {}: expected {expected}, found {found}", path.display())]
    ChecksumMismatch { path: PathBuf, expected: String, found: String },
    #[error("cache {}: {source}", path.display())]
    Cache {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

pub fn lookup(name: &str) -> Result<&'static Dataset, FetchError> {
    REGISTRY.iter().find(|d| d.name == name).ok_or_else(|| FetchError::UnknownDataset {
        name: name.to_string(),
        known: REGISTRY.iter().map(|d| d.name).collect(),
    })
}

pub fn archive_url(d: &Dataset) -> String {
    format!("http://konect.cc/files/download.tsv.{}.tar.bz2", d.konect)
}

/// `$BIPEEL_CACHE_DIR`, else `$HOME/.cache/bipeel`, else `./.bipeel-cache`.
pub fn default_cache_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os("BIPEEL_CACHE_DIR") {
        return PathBuf::from(dir);
    }
    match std::env::var_os("HOME") {
        Some(home) => PathBuf::from(home).join(".cache").join("bipeel"),
        None => PathBuf::from(".bipeel-cache"),
    }
}

/// Where archive bytes come from.
pub trait Source {
    fn get(&self, url: &str) -> Result<Vec<u8>, FetchError>;
}

pub struct HttpSource {
    pub timeout: Duration,
}

impl Default for HttpSource {
    fn default() -> Self {
        HttpSource { timeout: Duration::from_secs(600) }
    }
}

impl Source for HttpSource {
    fn get(&self, url: &str) -> Result<Vec<u8>, FetchError> {
        let net = |message: String| FetchError::Network { url: url.to_string(), message };
        let client = reqwest::blocking::Client::builder()
            .timeout(self.timeout)
            .build()
            .map_err(|e| net(e.to_string()))?;
        let resp = client.get(url).send().map_err(|e| net(e.to_string()))?;
        let status = resp.status();
        if !status.is_success() {
            return Err(net(format!("HTTP {status}")));
        }
        let expected = resp.content_length();
        let body = resp.bytes().map_err(|e| net(e.to_string()))?;
        if let Some(n) = expected {
            if body.len() as u64 != n {
                return Err(net(format!("truncated body: {} of {n} bytes", body.len())));
            }
        }
        Ok(body.to_vec())
    }
}

#[derive(Debug)]
pub struct Fetched {
    pub path: PathBuf,
    pub sha256: String,
    /// True when served from the cache without touching the source.
    pub cached: bool,
}

pub fn data_path(cache_dir: &Path, d: &Dataset) -> PathBuf {
    cache_dir.join(format!("{}.tsv", d.name))
}

fn sidecar_path(data: &Path) -> PathBuf {
    let mut s = data.as_os_str().to_owned();
    s.push(".sha256");
    PathBuf::from(s)
}

fn sha256_file(path: &Path) -> io::Result<String> {
    let mut h = Sha256::new();
    io::copy(&mut File::open(path)?, &mut h)?;
    Ok(hex::encode(h.finalize()))
}

/// Writes `bytes` next to `path` and renames into place, so readers never
/// see a partial file.
fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    let res = (|| {
        let mut f = File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if res.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    res
}

/// Pulls the `out.*` member out of a `.tar.bz2` archive and rewrites it as
/// tab-separated pairs, dropping `%` comments and any weight/time columns.
pub fn normalize_archive(d: &Dataset, archive: &[u8]) -> Result<Vec<u8>, FetchError> {
    let bad = |message: String| FetchError::Archive { dataset: d.name.to_string(), message };
    let mut tar = tar::Archive::new(bzip2::read::BzDecoder::new(archive));
    let wanted = format!("out.{}", d.konect);
    for entry in tar.entries().map_err(|e| bad(e.to_string()))? {
        let entry = entry.map_err(|e| bad(e.to_string()))?;
        let is_edges = entry
            .path()
            .ok()
            .and_then(|p| p.file_name().map(|f| f.to_string_lossy() == wanted))
            .unwrap_or(false);
        if is_edges {
            return normalize_edge_list(entry).map_err(|e| bad(e.to_string()));
        }
    }
    Err(bad(format!("no {wanted} member")))
}

fn normalize_edge_list(reader: impl Read) -> io::Result<Vec<u8>> {
    let mut out = Vec::new();
    for line in BufReader::new(reader).lines() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        let mut cols = t.split_whitespace();
        match (cols.next(), cols.next()) {
            (Some(a), Some(b)) => writeln!(out, "{a}\t{b}")?,
            _ => return Err(io::Error::new(io::ErrorKind::InvalidData, format!("short line: {t}"))),
        }
    }
    Ok(out)
}

fn cache_err(path: &Path) -> impl FnOnce(io::Error) -> FetchError {
    let path = path.to_path_buf();
    move |source| FetchError::Cache { path, source }
}

/// The verified cached copy of `d`, or `None` when it has not been fetched.
pub fn cached(d: &Dataset, cache_dir: &Path) -> Result<Option<Fetched>, FetchError> {
    let data = data_path(cache_dir, d);
    let sidecar = sidecar_path(&data);
    if !(data.is_file() && sidecar.is_file()) {
        return Ok(None);
    }
    let recorded = fs::read_to_string(&sidecar).map_err(cache_err(&sidecar))?.trim().to_string();
    let found = sha256_file(&data).map_err(cache_err(&data))?;
    let expected = d.sha256.map(str::to_string).unwrap_or(recorded.clone());
    if found != expected || found != recorded {
        return Err(FetchError::ChecksumMismatch { path: data, expected, found });
    }
    Ok(Some(Fetched { path: data, sha256: found, cached: true }))
}

/// Returns the cached edge list for `name`, downloading it on a miss.
pub fn fetch_dataset(name: &str, cache_dir: &Path, source: &dyn Source) -> Result<Fetched, FetchError> {
    let d = lookup(name)?;
    if let Some(hit) = cached(d, cache_dir)? {
        return Ok(hit);
    }
    let data = data_path(cache_dir, d);
    let sidecar = sidecar_path(&data);
    fs::create_dir_all(cache_dir).map_err(cache_err(cache_dir))?;
    let archive = source.get(&archive_url(d))?;
    let edges = normalize_archive(d, &archive)?;
    let digest = hex::encode(Sha256::digest(&edges));
    if let Some(pinned) = d.sha256 {
        if pinned != digest {
            return Err(FetchError::ChecksumMismatch { path: data, expected: pinned.to_string(), found: digest });
        }
    }
    write_atomic(&data, &edges).map_err(cache_err(&data))?;
    write_atomic(&sidecar, format!("{digest}\n").as_bytes()).map_err(cache_err(&sidecar))?;
    Ok(Fetched { path: data, sha256: digest, cached: false })
}
