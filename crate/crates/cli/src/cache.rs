//! On-disk copy of the classical memo tables.
//!
//! One JSON file per `(p, kind)`, named `memo-p{p}-{kind}.json`. A file that
//! fails to parse, has the wrong header, a checksum mismatch or malformed rows
//! is ignored and the rows are recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use schur2::{Recursions, RowKind, SparseRow};

pub const FORMAT: &str = "schur2-memo";
pub const VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct CacheFile {
    format: String,
    version: u32,
    p: u64,
    kind: RowKind,
    /// CRC-32 of the JSON encoding of `rows`.
    checksum: u32,
    rows: Vec<(u64, SparseRow)>,
}

fn checksum(rows: &[(u64, SparseRow)]) -> u32 {
    crc32fast::hash(&serde_json::to_vec(rows).expect("rows serialize"))
}

pub fn path_for(dir: &Path, p: u64, kind: RowKind) -> PathBuf {
    dir.join(format!("memo-p{p}-{}.json", kind.as_str()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FileState {
    Missing,
    Loaded { rows: usize, accepted: usize },
    Rejected(String),
}

fn read(path: &Path, p: u64, kind: RowKind) -> Result<Vec<(u64, SparseRow)>, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let file: CacheFile = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    if file.format != FORMAT || file.version != VERSION {
        return Err(format!("unsupported format {} v{}", file.format, file.version));
    }
    if file.p != p || file.kind != kind {
        return Err(format!("file holds p = {} {} rows", file.p, file.kind.as_str()));
    }
    if checksum(&file.rows) != file.checksum {
        return Err("checksum mismatch".to_string());
    }
    Ok(file.rows)
}

/// Seeds `rec` from `dir`, one state per row kind.
pub fn load(dir: &Path, rec: &Recursions) -> Vec<(RowKind, FileState)> {
    [RowKind::Decomposition, RowKind::Tilting]
        .into_iter()
        .map(|kind| {
            let path = path_for(dir, rec.p(), kind);
            if !path.exists() {
                return (kind, FileState::Missing);
            }
            match read(&path, rec.p(), kind) {
                Ok(rows) => {
                    let n = rows.len();
                    let accepted = rec.preload(kind, rows);
                    (kind, FileState::Loaded { rows: n, accepted })
                }
                Err(e) => (kind, FileState::Rejected(e)),
            }
        })
        .collect()
}

/// Writes every memoized row of `rec`, replacing existing files atomically.
pub fn store(dir: &Path, rec: &Recursions) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    for kind in [RowKind::Decomposition, RowKind::Tilting] {
        let rows: Vec<(u64, SparseRow)> = rec.snapshot(kind).into_iter().map(|(m, r)| (m, (*r).clone())).collect();
        let file = CacheFile {
            format: FORMAT.into(),
            version: VERSION,
            p: rec.p(),
            kind,
            checksum: checksum(&rows),
            rows,
        };
        let path = path_for(dir, rec.p(), kind);
        let tmp = path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_vec(&file)?)?;
        fs::rename(&tmp, &path)?;
    }
    Ok(())
}

/// Cache files present in `dir`, with their state.
pub fn inspect(dir: &Path) -> std::io::Result<Vec<(PathBuf, FileState)>> {
    let mut out = Vec::new();
    if !dir.exists() {
        return Ok(out);
    }
    let mut entries: Vec<_> = fs::read_dir(dir)?.filter_map(|e| e.ok()).map(|e| e.path()).collect();
    entries.sort();
    for path in entries {
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else { continue };
        let Some(rest) = name.strip_prefix("memo-p").and_then(|r| r.strip_suffix(".json")) else { continue };
        let Some((p, kind)) = rest.split_once('-') else { continue };
        let kind = match kind {
            "decomposition" => RowKind::Decomposition,
            "tilting" => RowKind::Tilting,
            _ => continue,
        };
        let state = match p.parse::<u64>() {
            Ok(p) => match read(&path, p, kind) {
                Ok(rows) => FileState::Loaded { rows: rows.len(), accepted: rows.len() },
                Err(e) => FileState::Rejected(e),
            },
            Err(e) => FileState::Rejected(e.to_string()),
        };
        out.push((path, state));
    }
    Ok(out)
}

/// Removes the cache files from `dir`, leaving anything else alone.
pub fn clear(dir: &Path) -> std::io::Result<usize> {
    let files = inspect(dir)?;
    for (path, _) in &files {
        fs::remove_file(path)?;
    }
    Ok(files.len())
}
