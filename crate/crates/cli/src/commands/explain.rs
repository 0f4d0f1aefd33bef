//! `provenance explain`: the heaviest-weighted features of each SVM in a
//! saved model, one ranked table per binary classifier and per one-vs-rest
//! label.

use std::path::PathBuf;

use serde_json::{json, Value};

use provenance::error::Result;
use provenance::hierarchy::{load_model, TaskModel};
use provenance::learn::{top_weights, Classifier};

use super::Context;

pub struct ExplainArgs {
    pub model: PathBuf,
    /// family | optimization | version | all
    pub task: String,
    pub top: usize,
}

fn tables_for(name: &str, task: &TaskModel, top: usize, out: &mut Vec<Value>) {
    match &task.classifier {
        Classifier::Binary(model) => {
            let rows = top_weights(model, &task.layout, top);
            out.push(json!({
                "task": name,
                "positive_label": model.positive_label,
                "weights": rows.iter().map(|(feature, weight)| json!({
                    "feature": feature,
                    "weight": weight,
                })).collect::<Vec<_>>(),
            }));
        }
        Classifier::OneVsRest(ovr) => {
            for model in &ovr.models {
                let rows = top_weights(model, &task.layout, top);
                out.push(json!({
                    "task": name,
                    "label": model.positive_label,
                    "weights": rows.iter().map(|(feature, weight)| json!({
                        "feature": feature,
                        "weight": weight,
                    })).collect::<Vec<_>>(),
                }));
            }
        }
    }
}

pub fn run(args: ExplainArgs, ctx: &Context) -> Result<()> {
    let model = load_model(&args.model)?;
    let mut tables = Vec::new();
    let want = |name: &str| args.task == "all" || args.task == name;
    if want("family") {
        tables_for("family", &model.family, args.top, &mut tables);
    }
    if want("version") {
        for (family, task) in &model.versions {
            tables_for(&format!("{family}_version"), task, args.top, &mut tables);
        }
    }
    if want("optimization") {
        tables_for("optimization", &model.optimization, args.top, &mut tables);
    }

    let report = json!({
        "schema_version": 1,
        "command": "explain",
        "model": args.model.display().to_string(),
        "top": args.top,
        "tables": tables,
    });
    let mut human = String::new();
    for table in &tables {
        let task = table["task"].as_str().unwrap();
        match table.get("label").and_then(Value::as_str) {
            Some(label) => human.push_str(&format!("{task} [{label}]\n")),
            None => human.push_str(&format!("{task}\n")),
        }
        for row in table["weights"].as_array().unwrap() {
            human.push_str(&format!(
                "  {:>12.4}  {}\n",
                row["weight"].as_f64().unwrap_or(0.0),
                row["feature"].as_str().unwrap_or("?")
            ));
        }
    }
    ctx.emit(&report, human.trim_end())
}
