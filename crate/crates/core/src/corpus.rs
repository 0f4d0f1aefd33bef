//! Labeled binary corpora: manifests, ground-truth labels, duplicate and
//! size filtering, and dataset summaries.
//!
//! A manifest is a CSV with columns `path,isa,family,version,optimization`
//! (and optional `checksum,size`) or the JSON equivalent. When checksum or
//! size are not provided they are computed from the file on disk; rows that
//! provide both are accepted without touching the filesystem.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::disasm::Isa;
use crate::error::{Error, Result};

/// Declared optimization-level label space.
pub const OPTIMIZATION_LEVELS: [&str; 5] = ["-O0", "-O1", "-O2", "-O3", "-Os"];

/// Default size filter threshold: 1 MiB.
pub const DEFAULT_SIZE_LIMIT: u64 = 1_048_576;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub path: PathBuf,
    pub isa: Isa,
    pub family: String,
    /// May be empty when the corpus carries no version labels.
    #[serde(default)]
    pub version: String,
    pub optimization: String,
    /// SHA-256 of the file content, lowercase hex.
    pub checksum: String,
    pub size: u64,
}

/// Result of loading a manifest: complete entries plus the referenced files
/// that were missing on disk.
#[derive(Debug, Clone)]
pub struct Manifest {
    pub entries: Vec<ManifestEntry>,
    pub missing: Vec<PathBuf>,
}

#[derive(Debug, Deserialize)]
struct ManifestRow {
    path: String,
    isa: String,
    family: String,
    #[serde(default)]
    version: String,
    optimization: String,
    #[serde(default)]
    checksum: Option<String>,
    #[serde(default)]
    size: Option<u64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn validate_row(row: ManifestRow, base: Option<&Path>) -> Result<(ManifestEntry, bool)> {
    if row.path.is_empty() {
        return Err(Error::MalformedManifest {
            detail: "row with empty path".into(),
        });
    }
    let isa: Isa = row.isa.parse().map_err(|_| Error::UnknownLabel {
        column: "isa".into(),
        value: row.isa.clone(),
    })?;
    if row.family.is_empty() {
        return Err(Error::MalformedManifest {
            detail: format!("{}: empty family label", row.path),
        });
    }
    if !OPTIMIZATION_LEVELS.contains(&row.optimization.as_str()) {
        return Err(Error::UnknownLabel {
            column: "optimization".into(),
            value: row.optimization,
        });
    }
    let mut path = PathBuf::from(&row.path);
    if path.is_relative() {
        if let Some(base) = base {
            path = base.join(path);
        }
    }

    // Rows carrying both checksum and size need no filesystem access.
    if let (Some(checksum), Some(size)) = (&row.checksum, row.size) {
        return Ok((
            ManifestEntry {
                path,
                isa,
                family: row.family,
                version: row.version,
                optimization: row.optimization,
                checksum: checksum.to_ascii_lowercase(),
                size,
            },
            true,
        ));
    }

    match std::fs::read(&path) {
        Ok(bytes) => Ok((
            ManifestEntry {
                checksum: sha256_hex(&bytes),
                size: bytes.len() as u64,
                path,
                isa,
                family: row.family,
                version: row.version,
                optimization: row.optimization,
            },
            true,
        )),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok((
            ManifestEntry {
                path,
                isa,
                family: row.family,
                version: row.version,
                optimization: row.optimization,
                checksum: String::new(),
                size: 0,
            },
            false,
        )),
        Err(e) => Err(Error::io(path, e)),
    }
}

/// Load and validate a manifest. Relative paths are resolved against the
/// manifest's directory. Missing files are reported, not fatal.
pub fn load_manifest(path: &Path) -> Result<Manifest> {
    let is_json = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let rows: Vec<ManifestRow> = if is_json {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::MalformedManifest {
            detail: format!("{}: {e}", path.display()),
        })?
    } else {
        let mut reader = csv::ReaderBuilder::new()
            .trim(csv::Trim::All)
            .from_path(path)
            .map_err(|e| Error::MalformedManifest {
                detail: format!("{}: {e}", path.display()),
            })?;
        let mut rows = Vec::new();
        for record in reader.deserialize() {
            let row: ManifestRow = record.map_err(|e| Error::MalformedManifest {
                detail: format!("{}: {e}", path.display()),
            })?;
            rows.push(row);
        }
        rows
    };
    if rows.is_empty() {
        return Err(Error::MalformedManifest {
            detail: format!("{}: no entries", path.display()),
        });
    }

    let base = path.parent();
    let mut entries = Vec::with_capacity(rows.len());
    let mut missing = Vec::new();
    for row in rows {
        let (entry, present) = validate_row(row, base)?;
        if present {
            entries.push(entry);
        } else {
            missing.push(entry.path);
        }
    }
    Ok(Manifest { entries, missing })
}

/// Keep the first occurrence per checksum, preserving order.
pub fn dedup_by_checksum(entries: Vec<ManifestEntry>) -> (Vec<ManifestEntry>, usize) {
    let mut seen = std::collections::BTreeSet::new();
    let before = entries.len();
    let kept: Vec<ManifestEntry> = entries
        .into_iter()
        .filter(|e| seen.insert(e.checksum.clone()))
        .collect();
    let removed = before - kept.len();
    (kept, removed)
}

/// Optional second dedup pass on extracted feature vectors: entries whose
/// vector is bit-identical to an earlier one are dropped.
pub fn dedup_by_feature_vectors(
    entries: Vec<ManifestEntry>,
    vectors: &[Vec<f64>],
) -> Result<(Vec<ManifestEntry>, usize)> {
    if entries.len() != vectors.len() {
        return Err(Error::DimensionMismatch {
            detail: format!("{} entries vs {} vectors", entries.len(), vectors.len()),
        });
    }
    let mut seen: std::collections::BTreeSet<Vec<u64>> = std::collections::BTreeSet::new();
    let before = entries.len();
    let kept: Vec<ManifestEntry> = entries
        .into_iter()
        .zip(vectors)
        .filter(|(_, v)| seen.insert(v.iter().map(|x| x.to_bits()).collect()))
        .map(|(e, _)| e)
        .collect();
    let removed = before - kept.len();
    Ok((kept, removed))
}

/// Remove entries larger than `limit` bytes.
pub fn filter_by_size(entries: Vec<ManifestEntry>, limit: u64) -> (Vec<ManifestEntry>, usize) {
    let before = entries.len();
    let kept: Vec<ManifestEntry> = entries.into_iter().filter(|e| e.size <= limit).collect();
    let removed = before - kept.len();
    (kept, removed)
}

/// Removal counters carried alongside a filtered manifest.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FilterStats {
    pub duplicates_removed: usize,
    pub oversize_removed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBucket {
    /// Inclusive upper bound of the bucket, a power of two.
    pub upper: u64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub families: BTreeMap<String, usize>,
    pub versions: BTreeMap<String, usize>,
    pub optimizations: BTreeMap<String, usize>,
    /// Histogram over power-of-two size buckets, suitable for log-scale
    /// plotting.
    pub size_histogram: Vec<SizeBucket>,
    pub duplicates_removed: usize,
    pub oversize_removed: usize,
}

/// Summarize a filtered manifest: per-label counts, power-of-two size
/// histogram, and the removal stats from filtering.
pub fn summarize(entries: &[ManifestEntry], stats: FilterStats) -> CorpusSummary {
    let mut families: BTreeMap<String, usize> = BTreeMap::new();
    let mut versions: BTreeMap<String, usize> = BTreeMap::new();
    let mut optimizations: BTreeMap<String, usize> = BTreeMap::new();
    let mut buckets: BTreeMap<u64, usize> = BTreeMap::new();
    for entry in entries {
        *families.entry(entry.family.clone()).or_default() += 1;
        if !entry.version.is_empty() {
            *versions.entry(entry.version.clone()).or_default() += 1;
        }
        *optimizations.entry(entry.optimization.clone()).or_default() += 1;
        *buckets.entry(size_bucket(entry.size)).or_default() += 1;
    }
    CorpusSummary {
        total: entries.len(),
        families,
        versions,
        optimizations,
        size_histogram: buckets
            .into_iter()
            .map(|(upper, count)| SizeBucket { upper, count })
            .collect(),
        duplicates_removed: stats.duplicates_removed,
        oversize_removed: stats.oversize_removed,
    }
}

fn size_bucket(size: u64) -> u64 {
    size.max(1).next_power_of_two()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(path: &str, checksum: &str, size: u64) -> ManifestEntry {
        ManifestEntry {
            path: PathBuf::from(path),
            isa: Isa::Arm32,
            family: "gcc".into(),
            version: "gcc-6".into(),
            optimization: "-O0".into(),
            checksum: checksum.into(),
            size,
        }
    }

    #[test]
    fn csv_manifest_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let bin = dir.path().join("a.txt");
        std::fs::write(&bin, "  0:\te3a03000 \tmov\tr3, #0\n").unwrap();
        let manifest_path = dir.path().join("corpus.csv");
        std::fs::write(
            &manifest_path,
            "path,isa,family,version,optimization\na.txt,arm32,gcc,gcc-6,-O0\nmissing.txt,arm32,clang,clang-5,-O2\nb.txt,aarch64,clang,clang-7,-O3\n",
        )
        .unwrap();
        std::fs::write(dir.path().join("b.txt"), "x").unwrap();
        let manifest = load_manifest(&manifest_path).unwrap();
        assert_eq!(manifest.entries.len(), 2);
        assert_eq!(manifest.missing.len(), 1);
        let first = &manifest.entries[0];
        assert_eq!(first.isa, Isa::Arm32);
        assert_eq!(first.checksum.len(), 64);
        assert!(first.size > 0);
    }

    #[test]
    fn unknown_optimization_label_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let manifest_path = dir.path().join("corpus.csv");
        std::fs::write(
            &manifest_path,
            "path,isa,family,version,optimization\na.txt,arm32,gcc,gcc-6,-O7\n",
        )
        .unwrap();
        let err = load_manifest(&manifest_path).unwrap_err();
        assert!(
            matches!(err, Error::UnknownLabel { ref column, ref value } if column == "optimization" && value == "-O7")
        );
    }

    #[test]
    fn empty_manifest_is_malformed() {
        let dir = tempfile::tempdir().unwrap();
        let manifest_path = dir.path().join("empty.csv");
        std::fs::write(&manifest_path, "").unwrap();
        let err = load_manifest(&manifest_path).unwrap_err();
        assert!(matches!(err, Error::MalformedManifest { .. }));

        let header_only = dir.path().join("header.csv");
        std::fs::write(&header_only, "path,isa,family,version,optimization\n").unwrap();
        let err = load_manifest(&header_only).unwrap_err();
        assert!(matches!(err, Error::MalformedManifest { .. }));
    }

    #[test]
    fn json_manifest_with_inline_checksums() {
        let dir = tempfile::tempdir().unwrap();
        let manifest_path = dir.path().join("corpus.json");
        std::fs::write(
            &manifest_path,
            r#"[{"path":"phantom.bin","isa":"aarch64","family":"clang","version":"clang-7","optimization":"-O2","checksum":"AB","size":10}]"#,
        )
        .unwrap();
        let manifest = load_manifest(&manifest_path).unwrap();
        assert_eq!(manifest.entries.len(), 1);
        assert!(manifest.missing.is_empty());
        assert_eq!(manifest.entries[0].checksum, "ab");
        assert_eq!(manifest.entries[0].size, 10);
    }

    #[test]
    fn dedup_keeps_first_occurrence() {
        let entries = vec![
            entry("a", "aaaa", 10),
            entry("b", "bbbb", 20),
            entry("c", "aaaa", 10),
            entry("d", "aaaa", 10),
        ];
        let (kept, removed) = dedup_by_checksum(entries);
        assert_eq!(removed, 2);
        let paths: Vec<&str> = kept.iter().map(|e| e.path.to_str().unwrap()).collect();
        assert_eq!(paths, ["a", "b"]);
    }

    #[test]
    fn dedup_is_idempotent() {
        let entries = vec![entry("a", "x", 1), entry("b", "x", 1), entry("c", "y", 2)];
        let (once, removed_once) = dedup_by_checksum(entries);
        assert_eq!(removed_once, 1);
        let (twice, removed_twice) = dedup_by_checksum(once.clone());
        assert_eq!(removed_twice, 0);
        assert_eq!(once, twice);
    }

    #[test]
    fn size_filter_behaviour() {
        let entries = vec![entry("a", "x", 524_288), entry("b", "y", 2_097_152)];
        let (kept, removed) = filter_by_size(entries.clone(), DEFAULT_SIZE_LIMIT);
        assert_eq!(removed, 1);
        assert_eq!(kept.len(), 1);
        assert_eq!(kept[0].path.to_str().unwrap(), "a");

        let max = entries.iter().map(|e| e.size).max().unwrap();
        let (kept, removed) = filter_by_size(entries, max);
        assert_eq!(removed, 0);
        assert_eq!(kept.len(), 2);
    }

    #[test]
    fn filter_order_does_not_matter() {
        let entries = vec![
            entry("a", "x", 100),
            entry("b", "x", 100),
            entry("c", "y", 5_000_000),
            entry("d", "z", 10),
            entry("e", "z", 10),
        ];
        let (d1, _) = dedup_by_checksum(entries.clone());
        let (s1, _) = filter_by_size(d1, DEFAULT_SIZE_LIMIT);
        let (s2, _) = filter_by_size(entries, DEFAULT_SIZE_LIMIT);
        let (d2, _) = dedup_by_checksum(s2);
        assert_eq!(s1, d2);
    }

    #[test]
    fn renaming_does_not_change_dedup() {
        let a = vec![entry("original", "deadbeef", 1), entry("copy", "deadbeef", 1)];
        let b = vec![entry("renamed", "deadbeef", 1), entry("copy", "deadbeef", 1)];
        let (_, removed_a) = dedup_by_checksum(a);
        let (_, removed_b) = dedup_by_checksum(b);
        assert_eq!(removed_a, removed_b);
    }

    #[test]
    fn feature_vector_dedup() {
        let entries = vec![entry("a", "1", 1), entry("b", "2", 1), entry("c", "3", 1)];
        let vectors = vec![vec![0.5, 0.1], vec![0.5, 0.1], vec![0.5, 0.2]];
        let (kept, removed) = dedup_by_feature_vectors(entries, &vectors).unwrap();
        assert_eq!(removed, 1);
        assert_eq!(kept.len(), 2);
    }

    #[test]
    fn summary_counts_and_buckets() {
        let empty = summarize(&[], FilterStats::default());
        assert_eq!(empty.total, 0);
        assert!(empty.size_histogram.is_empty());

        let one = summarize(&[entry("a", "x", 524_288)], FilterStats::default());
        assert_eq!(one.size_histogram, vec![SizeBucket { upper: 524_288, count: 1 }]);

        let entries = vec![
            entry("a", "1", 100),
            entry("b", "2", 100),
            entry("c", "3", 300_000),
        ];
        let summary = summarize(
            &entries,
            FilterStats {
                duplicates_removed: 4,
                oversize_removed: 2,
            },
        );
        assert_eq!(summary.total, 3);
        assert_eq!(summary.families["gcc"], 3);
        assert_eq!(summary.duplicates_removed, 4);
        assert_eq!(summary.oversize_removed, 2);
        assert_eq!(summary.size_histogram.iter().map(|b| b.count).sum::<usize>(), 3);
    }
}
