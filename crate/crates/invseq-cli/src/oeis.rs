//! A minimal OEIS b-file client. Fetched bodies are cached on disk, keyed
//! by sequence id, so repeated lookups and offline runs replay the cache
//! byte for byte. Nothing in the counting or verification paths depends on
//! this module succeeding.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use thiserror::Error;

use invseq::CountTable;

/// Environment variable overriding the cache directory.
pub const CACHE_ENV: &str = "INVSEQ_OEIS_CACHE";
/// Environment variable that, when set to a non-empty value, forbids
/// network access (cache only).
pub const OFFLINE_ENV: &str = "INVSEQ_OFFLINE";
/// Environment variable overriding the server base URL.
pub const BASE_URL_ENV: &str = "INVSEQ_OEIS_BASE";

const DEFAULT_BASE_URL: &str = "https://oeis.org";

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("{0:?} is not a sequence id (expected 'A' followed by 6 or 7 digits)")]
    BadId(String),
    #[error("networking is disabled and {id} is not in the cache at {cache}")]
    NetworkDisabled { id: String, cache: PathBuf },
    #[error("fetching {id}: {reason}")]
    HttpFailure { id: String, reason: String },
    #[error("b-file for {id}, line {line_no}: malformed line {line:?}")]
    ParseError {
        id: String,
        line_no: usize,
        line: String,
    },
    #[error("cache i/o for {id}: {source}")]
    Cache {
        id: String,
        #[source]
        source: std::io::Error,
    },
}

/// Where a sequence body came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Cache,
    Network,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Cache => write!(f, "cache"),
            Source::Network => write!(f, "network"),
        }
    }
}

/// A parsed b-file: `(index, value)` pairs with strictly increasing
/// indices.
#[derive(Debug, Clone)]
pub struct OeisSequence {
    pub id: String,
    pub terms: Vec<(i64, BigInt)>,
    pub source: Source,
}

/// Checks the `A######`/`A#######` shape.
pub fn valid_id(id: &str) -> bool {
    let Some(rest) = id.strip_prefix('A') else {
        return false;
    };
    (6..=7).contains(&rest.len()) && rest.bytes().all(|b| b.is_ascii_digit())
}

/// Parses b-file text: lines of `<index> <value>`, `#` comments and blank
/// lines ignored, indices strictly increasing.
pub fn parse_b_file(id: &str, body: &str) -> Result<Vec<(i64, BigInt)>, OeisError> {
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    for (line_no, raw) in body.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let malformed = || OeisError::ParseError {
            id: id.to_owned(),
            line_no: line_no + 1,
            line: raw.to_owned(),
        };
        let mut fields = line.split_whitespace();
        let index: i64 = fields
            .next()
            .and_then(|f| f.parse().ok())
            .ok_or_else(malformed)?;
        let value: BigInt = fields
            .next()
            .and_then(|f| f.parse().ok())
            .ok_or_else(malformed)?;
        if fields.next().is_some() {
            return Err(malformed());
        }
        if let Some((last, _)) = terms.last() {
            if index <= *last {
                return Err(malformed());
            }
        }
        terms.push((index, value));
    }
    Ok(terms)
}

/// How a local count table lines up with a fetched sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixMatch {
    /// `local[n]` equals the b-file value at index `n + offset`.
    pub offset: i64,
    /// Number of positions actually compared.
    pub compared: usize,
}

/// Smallest overlap for which an alignment is reported at all; anything
/// shorter is too weak an observation to call a match.
pub const MIN_OVERLAP: usize = 4;

/// Tries the offsets 0, −1, +1 (in that order) and returns the first one
/// under which every overlapping term agrees.
pub fn match_prefix(local: &CountTable, seq: &OeisSequence) -> Option<PrefixMatch> {
    let by_index: BTreeMap<i64, &BigInt> = seq.terms.iter().map(|(i, v)| (*i, v)).collect();
    for offset in [0i64, -1, 1] {
        let mut compared = 0usize;
        let mut agreed = true;
        for n in 0..local.len() {
            let Some(fetched) = by_index.get(&(n as i64 + offset)) else {
                continue;
            };
            let local_value = BigInt::from(local.get(n).expect("n < len").clone());
            if local_value != **fetched {
                agreed = false;
                break;
            }
            compared += 1;
        }
        if agreed && compared >= MIN_OVERLAP {
            return Some(PrefixMatch { offset, compared });
        }
    }
    None
}

/// B-file fetcher with an on-disk cache.
#[derive(Debug, Clone)]
pub struct OeisClient {
    cache_dir: PathBuf,
    offline: bool,
    base_url: String,
}

impl OeisClient {
    pub fn new(cache_dir: impl Into<PathBuf>, offline: bool) -> Self {
        Self {
            cache_dir: cache_dir.into(),
            offline,
            base_url: DEFAULT_BASE_URL.to_owned(),
        }
    }

    /// Reads `INVSEQ_OEIS_CACHE`, `INVSEQ_OFFLINE`, and `INVSEQ_OEIS_BASE`;
    /// the cache defaults to `.invseq-oeis-cache` under the user's home
    /// directory (or the system temp directory without one).
    pub fn from_env() -> Self {
        let cache_dir = std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| {
            std::env::var_os("HOME")
                .map(PathBuf::from)
                .unwrap_or_else(std::env::temp_dir)
                .join(".invseq-oeis-cache")
        });
        let offline = std::env::var(OFFLINE_ENV).is_ok_and(|v| !v.is_empty());
        let mut client = Self::new(cache_dir, offline);
        if let Ok(base) = std::env::var(BASE_URL_ENV) {
            client.base_url = base;
        }
        client
    }

    pub fn with_base_url(mut self, base_url: impl Into<String>) -> Self {
        self.base_url = base_url.into();
        self
    }

    /// Forbids network access regardless of how the client was built.
    pub fn forced_offline(mut self) -> Self {
        self.offline = true;
        self
    }

    pub fn offline(&self) -> bool {
        self.offline
    }

    pub fn cache_path(&self, id: &str) -> PathBuf {
        self.cache_dir.join(format!("{id}.txt"))
    }

    fn b_file_url(&self, id: &str) -> String {
        // https://oeis.org/A000110/b000110.txt
        format!("{}/{}/b{}.txt", self.base_url, id, &id[1..])
    }

    /// Returns up to `max_terms` leading terms of the sequence, serving
    /// the cache when possible and the network otherwise.
    pub fn fetch(&self, id: &str, max_terms: usize) -> Result<OeisSequence, OeisError> {
        if !valid_id(id) {
            return Err(OeisError::BadId(id.to_owned()));
        }
        let path = self.cache_path(id);
        let (body, source) = match fs::read_to_string(&path) {
            Ok(body) => (body, Source::Cache),
            Err(_) if self.offline => {
                return Err(OeisError::NetworkDisabled {
                    id: id.to_owned(),
                    cache: self.cache_dir.clone(),
                })
            }
            Err(_) => {
                let body = http_get(&self.b_file_url(id)).map_err(|reason| {
                    OeisError::HttpFailure {
                        id: id.to_owned(),
                        reason,
                    }
                })?;
                store(&path, &body).map_err(|source| OeisError::Cache {
                    id: id.to_owned(),
                    source,
                })?;
                (body, Source::Network)
            }
        };
        let mut terms = parse_b_file(id, &body)?;
        terms.truncate(max_terms);
        Ok(OeisSequence {
            id: id.to_owned(),
            terms,
            source,
        })
    }
}

fn store(path: &Path, body: &str) -> std::io::Result<()> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, body)
}

fn http_get(url: &str) -> Result<String, String> {
    let agent = ureq::AgentBuilder::new()
        .timeout(std::time::Duration::from_secs(15))
        .build();
    let response = agent.get(url).call().map_err(|e| e.to_string())?;
    response.into_string().map_err(|e| e.to_string())
}
