//! `provenance scan`: predict labels for a directory of binaries of unknown
//! provenance and aggregate the predicted-label histograms. ELF files are
//! identified by magic; listing files (.s/.txt/.asm/.lst) are ingested
//! directly; everything else is skipped and counted.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::{json, Value};

use provenance::disasm::is_listing_path;
use provenance::error::{Error, Result};
use provenance::hierarchy::load_model;

use super::Context;

pub struct ScanArgs {
    pub model: PathBuf,
    pub directory: PathBuf,
    pub report: Option<PathBuf>,
    pub per_file: bool,
}

fn looks_like_elf(path: &std::path::Path) -> bool {
    let mut magic = [0u8; 4];
    match std::fs::File::open(path) {
        Ok(mut f) => {
            use std::io::Read;
            f.read_exact(&mut magic).is_ok() && &magic == b"\x7fELF"
        }
        Err(_) => false,
    }
}

pub fn run(args: ScanArgs, ctx: &Context) -> Result<()> {
    let model = load_model(&args.model)?;

    let mut candidates = Vec::new();
    let mut skipped = 0usize;
    for entry in walkdir::WalkDir::new(&args.directory)
        .sort_by_file_name()
        .into_iter()
        .filter_map(|e| e.ok())
    {
        if !entry.file_type().is_file() {
            continue;
        }
        let path = entry.into_path();
        if path
            .file_name()
            .and_then(|n| n.to_str())
            .is_some_and(|n| n == "manifest.csv" || n == "manifest.json")
        {
            skipped += 1;
            continue;
        }
        if is_listing_path(&path) || looks_like_elf(&path) {
            candidates.push(path);
        } else {
            skipped += 1;
        }
    }

    let predictions: Vec<(PathBuf, Result<provenance::hierarchy::Prediction>)> = candidates
        .into_par_iter()
        .map(|path| {
            let prediction = model.predict_path(&path, &ctx.disassembler);
            (path, prediction)
        })
        .collect();

    let mut family_histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut optimization_histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut version_histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut per_file = Vec::new();
    let mut failed = 0usize;
    let mut scanned = 0usize;
    for (path, outcome) in &predictions {
        match outcome {
            Ok(p) => {
                scanned += 1;
                *family_histogram.entry(p.family.clone()).or_default() += 1;
                *optimization_histogram
                    .entry(p.optimization.clone())
                    .or_default() += 1;
                if let Some(version) = &p.version {
                    *version_histogram.entry(version.clone()).or_default() += 1;
                }
                if args.per_file {
                    per_file.push(json!({
                        "path": path.display().to_string(),
                        "family": p.family,
                        "version": p.version,
                        "optimization": p.optimization,
                    }));
                }
            }
            Err(e) => {
                failed += 1;
                if args.per_file {
                    per_file.push(json!({
                        "path": path.display().to_string(),
                        "error": e.to_string(),
                    }));
                }
            }
        }
    }

    if scanned == 0 {
        eprintln!("scan: no ingestible files in {} (skipped {skipped}, failed {failed})",
            args.directory.display());
        return Err(Error::EmptyCorpus);
    }

    let mut report = json!({
        "schema_version": 1,
        "command": "scan",
        "directory": args.directory.display().to_string(),
        "scanned": scanned,
        "skipped": skipped,
        "failed": failed,
        "family_histogram": family_histogram,
        "optimization_histogram": optimization_histogram,
        "version_histogram": version_histogram,
    });
    if args.per_file {
        report["per_file"] = Value::Array(per_file);
    }

    if let Some(path) = &args.report {
        let is_csv = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
        if is_csv {
            let mut csv = String::from("stage,label,count\n");
            for (label, count) in &family_histogram {
                csv.push_str(&format!("family,{label},{count}\n"));
            }
            for (label, count) in &optimization_histogram {
                csv.push_str(&format!("optimization,{label},{count}\n"));
            }
            for (label, count) in &version_histogram {
                csv.push_str(&format!("version,{label},{count}\n"));
            }
            std::fs::write(path, csv).map_err(|e| Error::io(path, e))?;
        } else {
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))?;
        }
    }

    let mut human = format!(
        "scanned {scanned} file(s), skipped {skipped}, failed {failed}\nfamily: "
    );
    human.push_str(
        &family_histogram
            .iter()
            .map(|(l, c)| format!("{l}={c}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    human.push_str("\noptimization: ");
    human.push_str(
        &optimization_histogram
            .iter()
            .map(|(l, c)| format!("{l}={c}"))
            .collect::<Vec<_>>()
            .join(" "),
    );
    ctx.emit(&report, &human)
}
