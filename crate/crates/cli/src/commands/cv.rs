//! `provenance cross-validate`: stratified k-fold accuracy for one task of
//! the hierarchy, with per-phase wall/CPU timing.

use std::path::PathBuf;

use serde_json::json;

use provenance::disasm::Isa;
use provenance::error::{Error, Result};
use provenance::hierarchy::OptimizationScheme;
use provenance::learn::{cross_validate, TrainConfig};

use super::{extract_features, filters_json, load_filtered_manifest, single_isa, Context};
use crate::timing::PhaseTimer;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Family,
    Version,
    Optimization,
    Binary,
}

impl Task {
    pub fn as_str(&self) -> &'static str {
        match self {
            Task::Family => "family",
            Task::Version => "version",
            Task::Optimization => "optimization",
            Task::Binary => "binary",
        }
    }
}

pub struct CvArgs {
    pub manifest: PathBuf,
    pub task: Task,
    pub scheme: OptimizationScheme,
    pub k: usize,
    pub family: Option<String>,
    pub positive: Option<String>,
    pub max_size: u64,
    pub keep_duplicates: bool,
    pub dedup_features: bool,
    pub timings: bool,
    pub config: TrainConfig,
}

/// Select (samples, labels) for the requested task.
fn task_labels(
    args: &CvArgs,
    entries: &[provenance::corpus::ManifestEntry],
) -> Result<(Vec<usize>, Vec<String>)> {
    match args.task {
        Task::Family => Ok((
            (0..entries.len()).collect(),
            entries.iter().map(|e| e.family.clone()).collect(),
        )),
        Task::Optimization => Ok((
            (0..entries.len()).collect(),
            entries
                .iter()
                .map(|e| args.scheme.map_label(&e.optimization))
                .collect(),
        )),
        Task::Version => {
            let family = args.family.as_ref().ok_or_else(|| Error::InsufficientLabels {
                detail: "--family is required for the version task".into(),
            })?;
            let idx: Vec<usize> = (0..entries.len())
                .filter(|&i| &entries[i].family == family && !entries[i].version.is_empty())
                .collect();
            if idx.is_empty() {
                return Err(Error::InsufficientLabels {
                    detail: format!("no version-labeled entries for family {family:?}"),
                });
            }
            let labels = idx.iter().map(|&i| entries[i].version.clone()).collect();
            Ok((idx, labels))
        }
        Task::Binary => {
            let positive = args.positive.as_ref().ok_or_else(|| Error::InsufficientLabels {
                detail: "--positive is required for the binary task".into(),
            })?;
            let labels: Vec<String> = entries
                .iter()
                .map(|e| {
                    if &e.family == positive {
                        positive.clone()
                    } else {
                        "other".to_string()
                    }
                })
                .collect();
            Ok(((0..entries.len()).collect(), labels))
        }
    }
}

pub fn run(args: CvArgs, ctx: &Context) -> Result<()> {
    let filtered = load_filtered_manifest(&args.manifest, args.max_size, args.keep_duplicates)?;
    let mut entries = filtered.entries;
    let isa: Isa = single_isa(&entries)?;

    let extract_timer = PhaseTimer::start();
    let mut raws = extract_features(&entries, &ctx.disassembler)?;
    let extraction = extract_timer.stop();

    let mut feature_dups = 0usize;
    if args.dedup_features {
        // dedup on the raw tf maps + profile, serialized canonically
        let mut seen = std::collections::BTreeSet::new();
        let mut kept_entries = Vec::new();
        let mut kept_raws = Vec::new();
        for (entry, raw) in entries.into_iter().zip(raws.into_iter()) {
            let key = serde_json::to_string(&raw).expect("raw features serialize");
            if seen.insert(key) {
                kept_entries.push(entry);
                kept_raws.push(raw);
            } else {
                feature_dups += 1;
            }
        }
        entries = kept_entries;
        raws = kept_raws;
    }

    let (indices, labels) = task_labels(&args, &entries)?;
    let task_raws: Vec<_> = indices.iter().map(|&i| raws[i].clone()).collect();

    let cv_timer = PhaseTimer::start();
    let report = cross_validate(&task_raws, &labels, isa, &args.config, args.k, ctx.seed)?;
    let train_eval = cv_timer.stop();

    let mut distinct = labels.clone();
    distinct.sort();
    distinct.dedup();

    let n = task_raws.len() as f64;
    let mut value = json!({
        "schema_version": 1,
        "command": "cross-validate",
        "task": args.task.as_str(),
        "scheme": scheme_arity(args.scheme),
        "k": args.k,
        "seed": ctx.seed,
        "samples": task_raws.len(),
        "labels": distinct,
        "fold_accuracies": report.fold_accuracies,
        "mean_accuracy": report.mean_accuracy,
        "filters": filters_json(&filtered.stats, args.max_size, args.keep_duplicates),
        "feature_duplicates_removed": feature_dups,
    });
    if args.timings {
        value["timings"] = json!({
            "extraction": extraction,
            "train_evaluate": train_eval,
            "per_binary": {
                "extraction_ms": extraction.wall_ms / n,
                "extraction_cpu_ms": extraction.cpu_ms / n,
                "train_evaluate_ms": train_eval.wall_ms / n,
                "train_evaluate_cpu_ms": train_eval.cpu_ms / n,
            },
        });
    }

    let mut human = format!(
        "task {} on {} samples ({} labels), k={}, seed={}\nmean accuracy {:.4}\nfolds {:?}",
        args.task.as_str(),
        task_raws.len(),
        value["labels"].as_array().map(|a| a.len()).unwrap_or(0),
        args.k,
        ctx.seed,
        report.mean_accuracy,
        report
            .fold_accuracies
            .iter()
            .map(|a| (a * 1e4).round() / 1e4)
            .collect::<Vec<_>>()
    );
    if args.timings {
        human.push_str(&format!(
            "\nextraction {:.2} ms wall / {:.2} ms cpu; train+evaluate {:.2} ms wall / {:.2} ms cpu",
            extraction.wall_ms, extraction.cpu_ms, train_eval.wall_ms, train_eval.cpu_ms
        ));
    }
    ctx.emit(&value, &human)
}

pub fn scheme_arity(scheme: OptimizationScheme) -> u8 {
    match scheme {
        OptimizationScheme::Five => 5,
        OptimizationScheme::Four => 4,
        OptimizationScheme::Two => 2,
    }
}
