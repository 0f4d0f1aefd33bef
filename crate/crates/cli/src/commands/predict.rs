//! `provenance predict`: per-binary provenance tuples from a saved model.
//! Files that fail to ingest produce per-file error entries; the command
//! succeeds when at least one file was classified.

use std::path::PathBuf;

use rayon::prelude::*;
use serde_json::{json, Value};

use provenance::error::{Error, Result};
use provenance::hierarchy::load_model;

use super::Context;

pub struct PredictArgs {
    pub model: PathBuf,
    pub paths: Vec<PathBuf>,
}

pub fn run(args: PredictArgs, ctx: &Context) -> Result<()> {
    if args.paths.is_empty() {
        return Err(Error::MalformedManifest {
            detail: "no input files given".into(),
        });
    }
    let model = load_model(&args.model)?;

    let results: Vec<Value> = args
        .paths
        .par_iter()
        .map(|path| match model.predict_path(path, &ctx.disassembler) {
            Ok(prediction) => json!({
                "path": path.display().to_string(),
                "family": prediction.family,
                "version": prediction.version,
                "optimization": prediction.optimization,
                "margins": prediction.margins,
            }),
            Err(e) => json!({
                "path": path.display().to_string(),
                "error": e.to_string(),
            }),
        })
        .collect();

    let succeeded = results.iter().filter(|r| r.get("error").is_none()).count();
    let report = json!({
        "schema_version": 1,
        "command": "predict",
        "model": args.model.display().to_string(),
        "results": results,
    });
    let mut human = String::new();
    for r in report["results"].as_array().unwrap() {
        let path = r["path"].as_str().unwrap();
        match r.get("error").and_then(Value::as_str) {
            Some(error) => human.push_str(&format!("{path}: error: {error}\n")),
            None => human.push_str(&format!(
                "{path}: family={} version={} optimization={}\n",
                r["family"].as_str().unwrap_or("?"),
                r["version"].as_str().unwrap_or("-"),
                r["optimization"].as_str().unwrap_or("?"),
            )),
        }
    }
    ctx.emit(&report, human.trim_end())?;
    if succeeded == 0 {
        return Err(Error::InsufficientLabels {
            detail: "no input file could be classified".into(),
        });
    }
    Ok(())
}
