//! Shared plumbing for the subcommands: manifest loading with the standard
//! filter chain, parallel feature extraction, and report emission.

pub mod cv;
pub mod explain;
pub mod extract;
pub mod predict;
pub mod scan;
pub mod train;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::Value;

use provenance::corpus::{
    dedup_by_checksum, filter_by_size, load_manifest, FilterStats, ManifestEntry,
};
use provenance::disasm::{ingest_path, DisassemblerConfig, Isa};
use provenance::error::{Error, Result};
use provenance::features::{extract_raw, RawFeatures};

/// Options shared by every subcommand.
pub struct Context {
    pub json: bool,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub disassembler: DisassemblerConfig,
}

impl Context {
    /// Print the report: JSON to stdout under `--json`, human text
    /// otherwise; `--out` always receives the JSON document.
    pub fn emit(&self, report: &Value, human: &str) -> Result<()> {
        if let Some(path) = &self.out {
            let text = serde_json::to_string_pretty(report)
                .expect("report serialization cannot fail");
            std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))?;
        }
        if self.json {
            println!(
                "{}",
                serde_json::to_string_pretty(report).expect("report serialization cannot fail")
            );
        } else {
            println!("{human}");
        }
        Ok(())
    }
}

pub struct FilteredManifest {
    pub entries: Vec<ManifestEntry>,
    pub stats: FilterStats,
}

/// Load a manifest and apply the standard filter chain: drop rows whose
/// files are missing, dedup by checksum, drop oversize binaries.
pub fn load_filtered_manifest(
    path: &Path,
    max_size: u64,
    keep_duplicates: bool,
) -> Result<FilteredManifest> {
    let manifest = load_manifest(path)?;
    for missing in &manifest.missing {
        eprintln!("warning: missing file {}", missing.display());
    }
    let mut entries = manifest.entries;
    let mut stats = FilterStats::default();
    if !keep_duplicates {
        let (kept, removed) = dedup_by_checksum(entries);
        entries = kept;
        stats.duplicates_removed = removed;
    }
    if max_size > 0 {
        let (kept, removed) = filter_by_size(entries, max_size);
        entries = kept;
        stats.oversize_removed = removed;
    }
    if entries.is_empty() {
        return Err(Error::MalformedManifest {
            detail: format!("{}: no usable entries after filtering", path.display()),
        });
    }
    Ok(FilteredManifest { entries, stats })
}

/// Extract raw features for every entry, in manifest order, in parallel.
pub fn extract_features(
    entries: &[ManifestEntry],
    disassembler: &DisassemblerConfig,
) -> Result<Vec<RawFeatures>> {
    entries
        .par_iter()
        .map(|entry| {
            let (instructions, isa) =
                ingest_path(&entry.path, Some(entry.isa), disassembler)?;
            extract_raw(&instructions, isa)
        })
        .collect()
}

/// The single ISA of a corpus; mixed-ISA manifests cannot be trained on.
pub fn single_isa(entries: &[ManifestEntry]) -> Result<Isa> {
    let isa = entries[0].isa;
    if entries.iter().any(|e| e.isa != isa) {
        return Err(Error::MalformedManifest {
            detail: "manifest mixes arm32 and aarch64 entries; train per ISA".into(),
        });
    }
    Ok(isa)
}

pub fn filters_json(stats: &FilterStats, max_size: u64, keep_duplicates: bool) -> Value {
    serde_json::json!({
        "duplicates_removed": stats.duplicates_removed,
        "oversize_removed": stats.oversize_removed,
        "max_size": max_size,
        "dedup": !keep_duplicates,
    })
}
