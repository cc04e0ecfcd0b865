//! On-disk persistence of cyclotomic polynomials and their factorizations.
//!
//! Enabled by setting `MDK_CACHE_DIR`. Every entry is re-validated on load;
//! corrupt or foreign entries are skipped, never trusted.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use modkit_core::{cyclo, ideals};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

pub const CACHE_ENV: &str = "MDK_CACHE_DIR";

const CYCLOTOMIC_FILE: &str = "cyclotomic.json";
const DECOMPOSITION_FILE: &str = "decompositions.json";

#[derive(Serialize, Deserialize)]
struct CyclotomicEntry {
    conductor: u32,
    /// Integer coefficients as decimal strings, constant term first.
    coeffs: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Factor {
    poly: Vec<u64>,
    multiplicity: u32,
}

#[derive(Serialize, Deserialize)]
struct DecompositionEntry {
    p: u64,
    conductor: u32,
    factors: Vec<Factor>,
}

/// Counts from one load.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadStats {
    pub accepted: usize,
    pub rejected: usize,
}

pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> io::Result<Option<T>> {
    match fs::read_to_string(path) {
        Ok(text) => Ok(serde_json::from_str(&text).ok()),
        Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(e),
    }
}

/// Seeds the in-memory caches from `dir`. Missing files are not an error.
pub fn load(dir: &Path) -> io::Result<LoadStats> {
    let mut stats = LoadStats::default();
    let mut tally = |ok: bool| {
        if ok {
            stats.accepted += 1
        } else {
            stats.rejected += 1
        }
    };
    let cyclotomic: Option<Vec<CyclotomicEntry>> = read_json(&dir.join(CYCLOTOMIC_FILE))?;
    for e in cyclotomic.unwrap_or_default() {
        let coeffs: Option<Vec<BigInt>> = e.coeffs.iter().map(|c| c.parse().ok()).collect();
        tally(coeffs.is_some_and(|c| cyclo::preload_cyclotomic(e.conductor, c)));
    }
    let decompositions: Option<Vec<DecompositionEntry>> = read_json(&dir.join(DECOMPOSITION_FILE))?;
    for e in decompositions.unwrap_or_default() {
        let factors = e
            .factors
            .into_iter()
            .map(|f| (f.poly, f.multiplicity))
            .collect();
        tally(ideals::preload_decomposition(e.p, e.conductor, factors));
    }
    Ok(stats)
}

/// Writes `contents` next to `path` and renames it into place.
fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let tmp = path.with_extension(format!("json.tmp{}", std::process::id()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

/// Writes everything currently cached in memory to `dir`.
pub fn save(dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let cyclotomic: Vec<CyclotomicEntry> = cyclo::cached_cyclotomics()
        .into_iter()
        .map(|(conductor, coeffs)| CyclotomicEntry {
            conductor,
            coeffs: coeffs.iter().map(|c| c.to_string()).collect(),
        })
        .collect();
    let decompositions: Vec<DecompositionEntry> = ideals::cached_decompositions()
        .into_iter()
        .map(|(p, conductor, fs)| DecompositionEntry {
            p,
            conductor,
            factors: fs
                .into_iter()
                .map(|(poly, multiplicity)| Factor { poly, multiplicity })
                .collect(),
        })
        .collect();
    write_atomic(
        &dir.join(CYCLOTOMIC_FILE),
        &serde_json::to_string(&cyclotomic).map_err(io::Error::other)?,
    )?;
    write_atomic(
        &dir.join(DECOMPOSITION_FILE),
        &serde_json::to_string(&decompositions).map_err(io::Error::other)?,
    )
}
