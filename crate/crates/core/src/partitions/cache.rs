//! Process-wide memo tables for LR coefficients and GL->Sp branching, plus
//! the optional on-disk cache the CLI can load and save.
//!
//! File format, one entry per line, canonically sorted on save:
//!
//! ```text
//! LR 3,2,1|2,1|2,1 = 2
//! BR 2,1|2 = 1,0:1,2,1:1
//! ```
//!
//! Partitions are comma-separated parts (empty string for the empty
//! partition). A BR right-hand side lists `mu:m` pairs where each `mu` is
//! padded to exactly s entries, so the comma-joined list parses
//! unambiguously. The cache is purely an accelerator: results are identical
//! with it disabled.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::path::Path;
use std::sync::{OnceLock, RwLock};

use super::Partition;
use crate::error::Error;

type LrKey = (Partition, Partition, Partition);
type BrKey = (Partition, usize);

fn lr_table() -> &'static RwLock<HashMap<LrKey, i64>> {
    static T: OnceLock<RwLock<HashMap<LrKey, i64>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

type BrTable = BTreeMap<Vec<i64>, i64>;

fn br_table() -> &'static RwLock<HashMap<BrKey, BrTable>> {
    static T: OnceLock<RwLock<HashMap<BrKey, BrTable>>> = OnceLock::new();
    T.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn lr_lookup(lam: &Partition, mu: &Partition, nu: &Partition) -> Option<i64> {
    lr_table().read().unwrap().get(&(lam.clone(), mu.clone(), nu.clone())).copied()
}

pub(crate) fn lr_store(lam: &Partition, mu: &Partition, nu: &Partition, c: i64) {
    lr_table().write().unwrap().insert((lam.clone(), mu.clone(), nu.clone()), c);
}

pub(crate) fn br_lookup(lam: &Partition, s: usize) -> Option<BTreeMap<Vec<i64>, i64>> {
    br_table().read().unwrap().get(&(lam.clone(), s)).cloned()
}

pub(crate) fn br_store(lam: &Partition, s: usize, table: &BTreeMap<Vec<i64>, i64>) {
    br_table().write().unwrap().insert((lam.clone(), s), table.clone());
}

/// Drop every memoized entry. Used by tests that compare cached and
/// uncached runs.
pub fn clear() {
    lr_table().write().unwrap().clear();
    br_table().write().unwrap().clear();
}

/// Number of memoized entries (LR, BR).
pub fn stats() -> (usize, usize) {
    (lr_table().read().unwrap().len(), br_table().read().unwrap().len())
}

/// Load a cache file, validating every line. Returns the number of entries
/// absorbed. A missing file is not an error (the cache is opt-in).
pub fn load(path: &Path) -> Result<usize, Error> {
    if !path.exists() {
        return Ok(0);
    }
    let text = std::fs::read_to_string(path)?;
    let mut absorbed = 0;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: &str| Error::Cache(format!("{}:{}: {msg}", path.display(), lineno + 1));
        if let Some(rest) = line.strip_prefix("LR ") {
            let (lhs, rhs) = rest.split_once(" = ").ok_or_else(|| bad("missing ' = '"))?;
            let fields: Vec<&str> = lhs.split('|').collect();
            if fields.len() != 3 {
                return Err(bad("LR needs lam|mu|nu"));
            }
            let lam = Partition::from_text(fields[0]).map_err(|e| bad(&e.to_string()))?;
            let mu = Partition::from_text(fields[1]).map_err(|e| bad(&e.to_string()))?;
            let nu = Partition::from_text(fields[2]).map_err(|e| bad(&e.to_string()))?;
            let c: i64 = rhs.trim().parse().map_err(|_| bad("bad coefficient"))?;
            if c < 0 {
                return Err(bad("negative LR coefficient"));
            }
            if c > 0 && lam.size() != mu.size() + nu.size() {
                return Err(bad("sizes violate |lam| = |mu| + |nu|"));
            }
            lr_store(&lam, &mu, &nu, c);
            absorbed += 1;
        } else if let Some(rest) = line.strip_prefix("BR ") {
            let (lhs, rhs) = rest.split_once(" = ").ok_or_else(|| bad("missing ' = '"))?;
            let (lam_text, s_text) = lhs.split_once('|').ok_or_else(|| bad("BR needs lam|s"))?;
            let lam = Partition::from_text(lam_text).map_err(|e| bad(&e.to_string()))?;
            let s: usize = s_text.trim().parse().map_err(|_| bad("bad rank"))?;
            if s == 0 {
                return Err(bad("BR rank must be positive"));
            }
            if lam.len() > 2 * s {
                return Err(bad("partition longer than 2s"));
            }
            let mut table = BTreeMap::new();
            let tokens: Vec<&str> = rhs.trim().split(',').collect();
            if !tokens.len().is_multiple_of(s) {
                return Err(bad("BR entry list does not chunk into s coordinates"));
            }
            for chunk in tokens.chunks(s) {
                let (last_coord, mult_text) =
                    chunk[s - 1].split_once(':').ok_or_else(|| bad("missing ':mult'"))?;
                let mut mu = Vec::with_capacity(s);
                for t in &chunk[..s - 1] {
                    mu.push(t.trim().parse::<i64>().map_err(|_| bad("bad coordinate"))?);
                }
                mu.push(last_coord.trim().parse::<i64>().map_err(|_| bad("bad coordinate"))?);
                let m: i64 = mult_text.trim().parse().map_err(|_| bad("bad multiplicity"))?;
                if m < 1 {
                    return Err(bad("multiplicity must be >= 1"));
                }
                if mu.windows(2).any(|w| w[0] < w[1]) || mu.last().is_some_and(|&x| x < 0) {
                    return Err(bad("branching weight not dominant"));
                }
                if mu.iter().sum::<i64>() > lam.size()
                    || (lam.size() - mu.iter().sum::<i64>()) % 2 != 0
                {
                    return Err(bad("branching weight size out of range"));
                }
                if table.insert(mu, m).is_some() {
                    return Err(bad("repeated branching weight"));
                }
            }
            br_store(&lam, s, &table);
            absorbed += 1;
        } else {
            return Err(bad("unknown record type"));
        }
    }
    Ok(absorbed)
}

/// Write the memo tables to a file in canonical sorted order. Returns the
/// number of entries written.
pub fn save(path: &Path) -> Result<usize, Error> {
    let mut lines = Vec::new();
    for ((lam, mu, nu), c) in lr_table().read().unwrap().iter() {
        lines.push(format!("LR {}|{}|{} = {}", lam.text(), mu.text(), nu.text(), c));
    }
    for ((lam, s), table) in br_table().read().unwrap().iter() {
        if *s == 0 || table.is_empty() {
            continue;
        }
        let rhs: Vec<String> = table
            .iter()
            .map(|(mu, m)| {
                let coords: Vec<String> = mu.iter().map(i64::to_string).collect();
                format!("{}:{}", coords.join(","), m)
            })
            .collect();
        lines.push(format!("BR {}|{} = {}", lam.text(), s, rhs.join(",")));
    }
    lines.sort();
    let count = lines.len();
    let mut file = std::fs::File::create(path)?;
    for line in &lines {
        writeln!(file, "{line}")?;
    }
    Ok(count)
}
