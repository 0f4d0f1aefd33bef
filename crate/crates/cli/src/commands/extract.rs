//! `provenance extract`: per-binary raw features (register profile plus raw
//! opcode term frequencies). TF-IDF is corpus-relative and therefore
//! applied at train/cross-validate/predict time, not here.

use std::collections::BTreeMap;
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use provenance::disasm::{ingest_path, Isa};
use provenance::error::{Error, Result};
use provenance::features::{extract_raw, RawFeatures};

use super::Context;

#[derive(Debug, Serialize)]
struct Record {
    path: String,
    isa: Isa,
    instructions: u64,
    src_freq: BTreeMap<String, f64>,
    dst_freq: BTreeMap<String, f64>,
    fp_sp_ratio: f64,
    tf: BTreeMap<String, f64>,
}

fn record_for(path: &str, isa: Isa, raw: &RawFeatures) -> Record {
    Record {
        path: path.to_string(),
        isa,
        instructions: raw.terms.instruction_count(),
        src_freq: raw
            .profile
            .src_freq
            .iter()
            .map(|(r, f)| (r.as_str().to_string(), *f))
            .collect(),
        dst_freq: raw
            .profile
            .dst_freq
            .iter()
            .map(|(r, f)| (r.as_str().to_string(), *f))
            .collect(),
        fp_sp_ratio: raw.profile.fp_sp_ratio,
        tf: raw.terms.tf_map(),
    }
}

pub struct ExtractArgs {
    pub paths: Vec<PathBuf>,
    pub manifest: Option<PathBuf>,
    pub isa: Option<Isa>,
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub fn run(args: ExtractArgs, ctx: &Context) -> Result<()> {
    let inputs: Vec<(PathBuf, Option<Isa>)> = if let Some(manifest_path) = &args.manifest {
        let manifest = provenance::corpus::load_manifest(manifest_path)?;
        for missing in &manifest.missing {
            eprintln!("warning: missing file {}", missing.display());
        }
        manifest
            .entries
            .into_iter()
            .map(|e| (e.path, Some(e.isa)))
            .collect()
    } else {
        args.paths
            .iter()
            .map(|p| (p.clone(), args.isa))
            .collect()
    };
    if inputs.is_empty() {
        return Err(Error::MalformedManifest {
            detail: "no input files given".into(),
        });
    }

    let records: Vec<Record> = inputs
        .par_iter()
        .map(|(path, isa)| {
            let (instructions, isa) = ingest_path(path, *isa, &ctx.disassembler)?;
            let raw = extract_raw(&instructions, isa)?;
            Ok(record_for(&path.display().to_string(), isa, &raw))
        })
        .collect::<Result<_>>()?;

    if args.format == Format::Csv {
        let csv = render_csv(&records);
        match &ctx.out {
            Some(path) => std::fs::write(path, csv).map_err(|e| Error::io(path, e))?,
            None => print!("{csv}"),
        }
        return Ok(());
    }

    let report: Value = json!({
        "schema_version": 1,
        "command": "extract",
        "records": records,
    });
    let mut human = format!("extracted {} record(s)\n", records.len());
    for r in &records {
        human.push_str(&format!(
            "  {}  [{}] {} instructions, {} opcodes, fp_sp_ratio {:.3}\n",
            r.path,
            r.isa,
            r.instructions,
            r.tf.len(),
            r.fp_sp_ratio
        ));
    }
    ctx.emit(&report, human.trim_end())
}

/// CSV export: header is the layout-style dimension names over the union of
/// registers and opcodes seen in this run; opcode columns carry raw term
/// frequencies.
fn render_csv(records: &[Record]) -> String {
    let mut opcodes: Vec<&str> = records
        .iter()
        .flat_map(|r| r.tf.keys().map(String::as_str))
        .collect();
    opcodes.sort_unstable();
    opcodes.dedup();
    let registers: Vec<&str> = records
        .first()
        .map(|r| r.isa.register_names().to_vec())
        .unwrap_or_default();

    let mut out = String::from("path,isa,instructions");
    for r in &registers {
        out.push_str(&format!(",src_{r}"));
    }
    for r in &registers {
        out.push_str(&format!(",dst_{r}"));
    }
    out.push_str(",fp_sp_ratio");
    for op in &opcodes {
        out.push_str(&format!(",op_{op}"));
    }
    out.push('\n');

    for rec in records {
        out.push_str(&format!("{},{},{}", rec.path, rec.isa, rec.instructions));
        for r in &registers {
            out.push_str(&format!(",{}", rec.src_freq.get(*r).copied().unwrap_or(0.0)));
        }
        for r in &registers {
            out.push_str(&format!(",{}", rec.dst_freq.get(*r).copied().unwrap_or(0.0)));
        }
        out.push_str(&format!(",{}", rec.fp_sp_ratio));
        for op in &opcodes {
            out.push_str(&format!(",{}", rec.tf.get(*op).copied().unwrap_or(0.0)));
        }
        out.push('\n');
    }
    out
}
