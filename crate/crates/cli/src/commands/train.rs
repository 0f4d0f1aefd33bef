//! `provenance train`: fit the full hierarchy on a labeled manifest and
//! save the model file.

use std::path::PathBuf;

use serde_json::json;

use provenance::error::Result;
use provenance::hierarchy::{save_model, train_hierarchy, OptimizationScheme, TrainingSample};
use provenance::learn::TrainConfig;

use super::{extract_features, filters_json, load_filtered_manifest, single_isa, Context};

pub struct TrainArgs {
    pub manifest: PathBuf,
    pub scheme: OptimizationScheme,
    pub out: PathBuf,
    pub max_size: u64,
    pub keep_duplicates: bool,
    pub config: TrainConfig,
}

pub fn run(args: TrainArgs, ctx: &Context) -> Result<()> {
    let filtered = load_filtered_manifest(&args.manifest, args.max_size, args.keep_duplicates)?;
    let entries = filtered.entries;
    let isa = single_isa(&entries)?;
    let raws = extract_features(&entries, &ctx.disassembler)?;

    let samples: Vec<TrainingSample> = entries
        .iter()
        .zip(raws)
        .map(|(entry, raw)| TrainingSample {
            raw,
            family: entry.family.clone(),
            version: entry.version.clone(),
            optimization: entry.optimization.clone(),
        })
        .collect();

    let mut model = train_hierarchy(&samples, isa, args.scheme, &args.config)?;
    model.created = std::env::var("SOURCE_DATE_EPOCH").ok();

    let mut warnings = Vec::new();
    let mut families: Vec<String> = entries.iter().map(|e| e.family.clone()).collect();
    families.sort();
    families.dedup();
    for family in &families {
        if !model.versions.contains_key(family) {
            let warning = format!(
                "no version classifier for family {family:?} (needs two or more distinct version labels)"
            );
            eprintln!("warning: {warning}");
            warnings.push(warning);
        }
    }

    save_model(&model, &args.out)?;

    let mut tasks = vec!["family".to_string(), "optimization".to_string()];
    tasks.extend(model.versions.keys().map(|f| format!("{f}_version")));
    let report = json!({
        "schema_version": 1,
        "command": "train",
        "model_path": args.out.display().to_string(),
        "isa": isa,
        "scheme": super::cv::scheme_arity(args.scheme),
        "samples": samples.len(),
        "tasks": tasks,
        "family_labels": model.family.labels,
        "optimization_labels": model.optimization.labels,
        "filters": filters_json(&filtered.stats, args.max_size, args.keep_duplicates),
        "warnings": warnings,
    });
    let human = format!(
        "trained {} task(s) on {} samples -> {}",
        tasks.len(),
        samples.len(),
        args.out.display()
    );
    ctx.emit(&report, &human)
}
