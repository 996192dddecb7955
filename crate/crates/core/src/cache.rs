//! JSON file caching finished invariant computations.
//!
//! Entries are keyed by group descriptor, invariant and a flags string.
//! Partial (non-exhaustive) results are never stored.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::invariants::{Invariant, InvariantResult, InvariantValue};
use crate::literal::parse_sequence;

const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub group: String,
    pub invariant: Invariant,
    pub flags: String,
    pub value: InvariantValue,
    pub witnesses: Vec<String>,
    pub exhaustive: bool,
    pub nodes: u64,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    entries: BTreeMap<String, CacheEntry>,
}

#[derive(Debug)]
pub struct ResultsCache {
    path: PathBuf,
    file: CacheFile,
    dirty: bool,
}

fn key(group: &str, invariant: Invariant, flags: &str) -> String {
    format!("{group}|{invariant}|{flags}")
}

impl ResultsCache {
    /// Opens `path`, starting empty if the file does not exist.
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let file = match std::fs::read_to_string(&path) {
            Ok(text) => {
                let file: CacheFile = serde_json::from_str(&text)
                    .map_err(|e| Error::Io(format!("{}: malformed cache: {e}", path.display())))?;
                if file.version != FORMAT_VERSION {
                    return Err(Error::Io(format!(
                        "{}: cache version {} (expected {FORMAT_VERSION})",
                        path.display(),
                        file.version
                    )));
                }
                file
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => CacheFile {
                version: FORMAT_VERSION,
                entries: BTreeMap::new(),
            },
            Err(e) => return Err(Error::Io(format!("{}: {e}", path.display()))),
        };
        Ok(ResultsCache {
            path,
            file,
            dirty: false,
        })
    }

    pub fn len(&self) -> usize {
        self.file.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.file.entries.is_empty()
    }

    pub fn get(&self, group: &FiniteGroup, invariant: Invariant, flags: &str) -> Result<Option<InvariantResult>> {
        let Some(e) = self.file.entries.get(&key(&group.name(), invariant, flags)) else {
            return Ok(None);
        };
        let witnesses = e
            .witnesses
            .iter()
            .map(|w| parse_sequence(group, w).map(|s| s.terms().collect()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(InvariantResult {
            invariant,
            value: e.value,
            witnesses,
            exhaustive: e.exhaustive,
            elapsed: Duration::ZERO,
            nodes: e.nodes,
        }))
    }

    /// Stores an exhaustive result; returns false (and stores nothing) for a
    /// partial one.
    pub fn insert(&mut self, group: &FiniteGroup, result: &InvariantResult, flags: &str) -> bool {
        if !result.exhaustive {
            return false;
        }
        let entry = CacheEntry {
            group: group.name(),
            invariant: result.invariant,
            flags: flags.to_string(),
            value: result.value,
            witnesses: result.witness_sequences(group).iter().map(|s| s.to_literal()).collect(),
            exhaustive: true,
            nodes: result.nodes,
        };
        self.file.entries.insert(key(&entry.group, entry.invariant, flags), entry);
        self.dirty = true;
        true
    }

    /// Writes the file if anything changed, via a temporary file and rename.
    pub fn save(&mut self) -> Result<()> {
        if !self.dirty {
            return Ok(());
        }
        let text = serde_json::to_string_pretty(&self.file).expect("cache serializes");
        let tmp = self.path.with_extension("tmp");
        let io = |e: std::io::Error| Error::Io(format!("{}: {e}", self.path.display()));
        std::fs::write(&tmp, text + "\n").map_err(io)?;
        std::fs::rename(&tmp, &self.path).map_err(io)?;
        self.dirty = false;
        Ok(())
    }
}
