//! Reference sequences from the OEIS: bundled b-file snapshots, an HTTP fetcher with
//! an on-disk cache, and comparison against computed tables.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::counting::{Family, SequenceTable};
use crate::error::{Error, Result};

/// Environment variable overriding the b-file cache directory.
pub const CACHE_ENV: &str = "CROSSMAP_CACHE_DIR";
pub const DEFAULT_BASE_URL: &str = "https://oeis.org";

const BUNDLED: &[(&str, &str)] = &[
    ("A000108", include_str!("../data/b000108.txt")),
    ("A001006", include_str!("../data/b001006.txt")),
    ("A000110", include_str!("../data/b000110.txt")),
    ("A108304", include_str!("../data/b108304.txt")),
    ("A108307", include_str!("../data/b108307.txt")),
];

/// Ids with a bundled snapshot.
pub fn bundled_ids() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(id, _)| *id)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Bundled,
    Fetched,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefSequence {
    pub id: String,
    /// Index of the first value.
    pub offset: i64,
    pub values: Vec<u64>,
    pub source: Source,
}

impl RefSequence {
    /// Value at index `n`, honouring the offset.
    pub fn at(&self, n: i64) -> Option<u64> {
        let i = n.checked_sub(self.offset)?;
        usize::try_from(i)
            .ok()
            .and_then(|i| self.values.get(i).copied())
    }
}

/// Which computed family a cited sequence corresponds to.
pub fn family_of(id: &str) -> Option<(Family, Option<usize>)> {
    match id {
        "A000108" => Some((Family::C, Some(2))),
        "A001006" => Some((Family::E, Some(2))),
        "A108304" => Some((Family::C, Some(3))),
        "A108307" => Some((Family::E, Some(3))),
        "A000110" => Some((Family::Bell, None)),
        _ => None,
    }
}

fn check_id(id: &str) -> Result<()> {
    let ok = id.len() == 7 && id.starts_with('A') && id[1..].bytes().all(|b| b.is_ascii_digit());
    if ok {
        Ok(())
    } else {
        Err(Error::UnknownId(id.to_string()))
    }
}

/// Parses up to `limit` terms of a b-file. Blank lines and `#` comments are skipped;
/// indices must be consecutive.
pub fn parse_bfile(text: &str, limit: usize) -> Result<(i64, Vec<u64>)> {
    let mut offset = None;
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if values.len() >= limit {
            break;
        }
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = || Error::BFileParse {
            line: lineno + 1,
            text: line.to_string(),
        };
        let mut parts = line.split_whitespace();
        let (Some(index), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(bad());
        };
        let index: i64 = index.parse().map_err(|_| bad())?;
        if !value.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let value: u64 = value
            .parse()
            .map_err(|_| Error::Overflow(format!("b-file value at index {index}")))?;
        let first = *offset.get_or_insert(index);
        if index != first + values.len() as i64 {
            return Err(bad());
        }
        values.push(value);
    }
    match offset {
        Some(offset) => Ok((offset, values)),
        None => Err(Error::BFileParse {
            line: 0,
            text: "no terms".into(),
        }),
    }
}

/// The snapshot shipped with the crate.
pub fn bundled(id: &str) -> Result<RefSequence> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(k, _)| *k == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))?;
    let (offset, values) = parse_bfile(text, usize::MAX)?;
    Ok(RefSequence {
        id: id.to_string(),
        offset,
        values,
        source: Source::Bundled,
    })
}

/// Where and how to fetch b-files.
#[derive(Debug, Clone)]
pub struct FetchConfig {
    pub base_url: String,
    pub cache_dir: PathBuf,
    pub timeout: Duration,
}

impl Default for FetchConfig {
    fn default() -> Self {
        Self {
            base_url: DEFAULT_BASE_URL.to_string(),
            cache_dir: default_cache_dir(),
            timeout: Duration::from_secs(20),
        }
    }
}

/// `$CROSSMAP_CACHE_DIR`, else `$XDG_CACHE_HOME/crossmap`, else `~/.cache/crossmap`,
/// else a directory under the system temp dir.
pub fn default_cache_dir() -> PathBuf {
    let var = |k: &str| {
        std::env::var_os(k)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    };
    if let Some(dir) = var(CACHE_ENV) {
        return dir;
    }
    if let Some(dir) = var("XDG_CACHE_HOME") {
        return dir.join("crossmap");
    }
    if let Some(home) = var("HOME") {
        return home.join(".cache").join("crossmap");
    }
    std::env::temp_dir().join("crossmap")
}

fn bfile_name(id: &str) -> String {
    format!("b{}.txt", &id[1..])
}

/// Downloads a b-file, caches its bytes, and returns the first `limit` terms. When the
/// network fails the cached copy is used if there is one.
pub fn fetch_bfile(id: &str, limit: usize, cfg: &FetchConfig) -> Result<RefSequence> {
    check_id(id)?;
    let cache_path = cfg.cache_dir.join(bfile_name(id));
    let text = match download(id, cfg) {
        Ok(body) => {
            // parse before caching so a malformed body never reaches the cache
            parse_bfile(&body, limit)?;
            write_atomic(&cache_path, body.as_bytes())?;
            body
        }
        Err(Error::Network(msg)) => match fs::read_to_string(&cache_path) {
            Ok(cached) => cached,
            Err(_) => return Err(Error::Network(msg)),
        },
        Err(e) => return Err(e),
    };
    let (offset, values) = parse_bfile(&text, limit)?;
    Ok(RefSequence {
        id: id.to_string(),
        offset,
        values,
        source: Source::Fetched,
    })
}

fn download(id: &str, cfg: &FetchConfig) -> Result<String> {
    let url = format!(
        "{}/{}/{}",
        cfg.base_url.trim_end_matches('/'),
        id,
        bfile_name(id)
    );
    let agent = ureq::AgentBuilder::new().timeout(cfg.timeout).build();
    match agent.get(&url).call() {
        Ok(resp) => {
            let mut body = String::new();
            resp.into_reader()
                .read_to_string(&mut body)
                .map_err(|e| Error::Network(e.to_string()))?;
            Ok(body)
        }
        Err(ureq::Error::Status(404, _)) => Err(Error::UnknownId(id.to_string())),
        Err(e) => Err(Error::Network(e.to_string())),
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(
        ".{}.{}.tmp",
        path.file_name().and_then(|s| s.to_str()).unwrap_or("bfile"),
        std::process::id()
    ));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: usize,
    pub computed: u64,
    pub reference: u64,
}

/// Result of aligning a computed sequence with a reference on `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diff {
    pub id: String,
    pub compared: usize,
    pub mismatches: Vec<Mismatch>,
}

impl Diff {
    pub fn is_clean(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the rows of `computed` for `(family, k)` against `reference`.
pub fn compare(
    computed: &SequenceTable,
    reference: &RefSequence,
    family: Family,
    k: Option<usize>,
) -> Result<Diff> {
    let mut compared = 0;
    let mut mismatches = Vec::new();
    let mut rows: Vec<_> = computed
        .rows
        .iter()
        .filter(|r| r.family == family && r.k == k)
        .collect();
    rows.sort_by_key(|r| r.n);
    for row in rows {
        if let Some(expected) = reference.at(row.n as i64) {
            compared += 1;
            if expected != row.value {
                mismatches.push(Mismatch {
                    n: row.n,
                    computed: row.value,
                    reference: expected,
                });
            }
        }
    }
    if compared == 0 {
        return Err(Error::NoOverlap);
    }
    Ok(Diff {
        id: reference.id.clone(),
        compared,
        mismatches,
    })
}
