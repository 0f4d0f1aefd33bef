//! Versioned JSON persistence for trained models.
//!
//! Layout of the file:
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "isa": "arm32",
//!   "scheme": "two",
//!   "created": null,
//!   "tasks": {
//!     "family": { "labels": [...], "layout_names": [...], "weights": [[...]],
//!                  "bias": [...], "vocabulary": [...], "idf": [...],
//!                  "corpus_size": 123, "train_config": {...}, ... },
//!     "gcc_version": { ... } | null,
//!     "clang_version": { ... } | null,
//!     "optimization": { ... }
//!   }
//! }
//! ```
//!
//! Version tasks are stored under `<family>_version` keys; a binary task is
//! a single weight row, a one-vs-rest task one row per label. Floats are
//! serialized with full round-trip precision, and map keys are ordered, so
//! identical models produce byte-identical files.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::disasm::Isa;
use crate::error::{Error, Result};
use crate::features::{FeatureLayout, TfidfModel};
use crate::learn::{Classifier, LinearModel, OneVsRestModel, TrainConfig};

use super::{OptimizationScheme, ProvenanceModel, TaskModel};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct TaskJson {
    labels: Vec<String>,
    layout_names: Vec<String>,
    weights: Vec<Vec<f64>>,
    bias: Vec<f64>,
    vocabulary: Vec<String>,
    idf: Vec<f64>,
    corpus_size: usize,
    train_config: TrainConfig,
    objective: Vec<f64>,
    converged: Vec<bool>,
    epochs_run: Vec<usize>,
}

fn task_to_json(task: &TaskModel) -> TaskJson {
    let models: Vec<&LinearModel> = match &task.classifier {
        Classifier::Binary(m) => vec![m],
        Classifier::OneVsRest(m) => m.models.iter().collect(),
    };
    TaskJson {
        labels: task.labels.clone(),
        layout_names: task.layout.names().to_vec(),
        weights: models.iter().map(|m| m.weights.clone()).collect(),
        bias: models.iter().map(|m| m.bias).collect(),
        vocabulary: task.tfidf.vocabulary.clone(),
        idf: task.tfidf.idf.clone(),
        corpus_size: task.tfidf.corpus_size,
        train_config: task.config.clone(),
        objective: models.iter().map(|m| m.objective).collect(),
        converged: models.iter().map(|m| m.converged).collect(),
        epochs_run: models.iter().map(|m| m.epochs_run).collect(),
    }
}

fn task_from_json(json: TaskJson, isa: Isa) -> Result<TaskModel> {
    let TaskJson {
        labels,
        layout_names,
        weights,
        bias,
        vocabulary,
        idf,
        corpus_size,
        train_config,
        objective,
        converged,
        epochs_run,
    } = json;
    if weights.len() != bias.len()
        || weights.is_empty()
        || labels.len() < 2
        || vocabulary.len() != idf.len()
        || objective.len() != weights.len()
        || converged.len() != weights.len()
        || epochs_run.len() != weights.len()
    {
        return Err(Error::ModelSchemaMismatch {
            detail: "inconsistent task arrays".into(),
        });
    }
    let layout = FeatureLayout::from_names(isa, layout_names).map_err(|_| {
        Error::ModelSchemaMismatch {
            detail: "layout names do not match the ISA register set".into(),
        }
    })?;
    if layout.vocab_len() != vocabulary.len() {
        return Err(Error::ModelSchemaMismatch {
            detail: "layout vocabulary span does not match the vocabulary".into(),
        });
    }
    for row in &weights {
        if row.len() != layout.len() {
            return Err(Error::ModelSchemaMismatch {
                detail: "weight row length does not match the layout".into(),
            });
        }
    }

    let build_model = |i: usize, positive: String, negative: String| LinearModel {
        weights: weights[i].clone(),
        bias: bias[i],
        positive_label: positive,
        negative_label: negative,
        objective: objective[i],
        converged: converged[i],
        epochs_run: epochs_run[i],
    };

    let classifier = if weights.len() == 1 {
        if labels.len() != 2 {
            return Err(Error::ModelSchemaMismatch {
                detail: "binary task must have exactly two labels".into(),
            });
        }
        Classifier::Binary(build_model(0, labels[0].clone(), labels[1].clone()))
    } else {
        if weights.len() != labels.len() {
            return Err(Error::ModelSchemaMismatch {
                detail: "one-vs-rest task needs one weight row per label".into(),
            });
        }
        let models = labels
            .iter()
            .enumerate()
            .map(|(i, label)| build_model(i, label.clone(), "rest".to_string()))
            .collect();
        Classifier::OneVsRest(OneVsRestModel {
            labels: labels.clone(),
            models,
        })
    };

    Ok(TaskModel {
        labels,
        classifier,
        tfidf: TfidfModel {
            vocabulary,
            idf,
            corpus_size,
        },
        layout,
        config: train_config,
    })
}

fn model_to_value(model: &ProvenanceModel) -> Value {
    let mut tasks = Map::new();
    tasks.insert(
        "family".to_string(),
        serde_json::to_value(task_to_json(&model.family)).unwrap(),
    );
    // gcc/clang slots are always present for schema stability; other
    // family names get their own "<family>_version" key.
    for family in ["gcc", "clang"] {
        let key = format!("{family}_version");
        let value = match model.versions.get(family) {
            Some(task) => serde_json::to_value(task_to_json(task)).unwrap(),
            None => Value::Null,
        };
        tasks.insert(key, value);
    }
    for (family, task) in &model.versions {
        if family == "gcc" || family == "clang" {
            continue;
        }
        tasks.insert(
            format!("{family}_version"),
            serde_json::to_value(task_to_json(task)).unwrap(),
        );
    }
    tasks.insert(
        "optimization".to_string(),
        serde_json::to_value(task_to_json(&model.optimization)).unwrap(),
    );
    json!({
        "schema_version": SCHEMA_VERSION,
        "isa": model.isa,
        "scheme": model.scheme,
        "created": model.created,
        "tasks": Value::Object(tasks),
    })
}

fn model_from_value(value: Value) -> Result<ProvenanceModel> {
    let mismatch = |detail: &str| Error::ModelSchemaMismatch {
        detail: detail.to_string(),
    };
    let object = value.as_object().ok_or_else(|| mismatch("not an object"))?;
    let schema = object
        .get("schema_version")
        .and_then(Value::as_u64)
        .ok_or_else(|| mismatch("missing schema_version"))?;
    if schema != SCHEMA_VERSION {
        return Err(Error::ModelSchemaMismatch {
            detail: format!("unknown schema version {schema}"),
        });
    }
    let isa: Isa = serde_json::from_value(
        object.get("isa").cloned().ok_or_else(|| mismatch("missing isa"))?,
    )
    .map_err(|_| mismatch("bad isa"))?;
    let scheme: OptimizationScheme = serde_json::from_value(
        object
            .get("scheme")
            .cloned()
            .ok_or_else(|| mismatch("missing scheme"))?,
    )
    .map_err(|_| mismatch("bad scheme"))?;
    let created = object
        .get("created")
        .and_then(Value::as_str)
        .map(str::to_string);
    let tasks = object
        .get("tasks")
        .and_then(Value::as_object)
        .ok_or_else(|| mismatch("missing tasks"))?;

    let parse_task = |key: &str| -> Result<TaskModel> {
        let raw = tasks.get(key).cloned().ok_or_else(|| mismatch(&format!("missing task {key}")))?;
        let parsed: TaskJson =
            serde_json::from_value(raw).map_err(|e| Error::ModelSchemaMismatch {
                detail: format!("task {key}: {e}"),
            })?;
        task_from_json(parsed, isa)
    };

    let family = parse_task("family")?;
    let optimization = parse_task("optimization")?;
    let mut versions = BTreeMap::new();
    for (key, value) in tasks {
        if value.is_null() {
            continue;
        }
        if let Some(family_name) = key.strip_suffix("_version") {
            versions.insert(family_name.to_string(), parse_task(key)?);
        }
    }

    Ok(ProvenanceModel {
        isa,
        scheme,
        family,
        versions,
        optimization,
        created,
    })
}

/// Serialize a trained model to the versioned JSON schema.
pub fn save_model(model: &ProvenanceModel, path: &Path) -> Result<()> {
    let value = model_to_value(model);
    let text = serde_json::to_string_pretty(&value).map_err(|e| Error::ModelSchemaMismatch {
        detail: e.to_string(),
    })?;
    std::fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
}

/// Load a model; `IoFailure` for unreadable or non-JSON files,
/// `ModelSchemaMismatch` for structurally invalid or unknown schemas.
pub fn load_model(path: &Path) -> Result<ProvenanceModel> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| {
        Error::io(
            path,
            std::io::Error::new(std::io::ErrorKind::InvalidData, e),
        )
    })?;
    model_from_value(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::features::{RawFeatures, RegisterProfile, TermFrequencies};
    use crate::hierarchy::{train_hierarchy, TrainingSample};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tiny_corpus() -> Vec<TrainingSample> {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut samples = Vec::new();
        for family in ["clang", "gcc"] {
            for optimization in ["-O0", "-O2"] {
                for i in 0..6 {
                    let mut counts = std::collections::BTreeMap::new();
                    counts.insert("mov".to_string(), 30 + rng.random_range(0..6));
                    counts.insert("add".to_string(), 12 + rng.random_range(0..6));
                    if family == "gcc" {
                        counts.insert("bxeq".to_string(), 5 + (i % 3));
                    } else {
                        counts.insert("bmi".to_string(), 5 + (i % 3));
                    }
                    if optimization == "-O0" {
                        counts.insert("push".to_string(), 9);
                    }
                    samples.push(TrainingSample {
                        raw: RawFeatures {
                            profile: RegisterProfile {
                                src_freq: Default::default(),
                                dst_freq: Default::default(),
                                fp_sp_ratio: if optimization == "-O0" { 0.9 } else { 0.1 },
                            },
                            terms: TermFrequencies::from_counts(counts).unwrap(),
                        },
                        family: family.to_string(),
                        version: format!("{family}-{}", if i % 2 == 0 { "old" } else { "new" }),
                        optimization: optimization.to_string(),
                    });
                }
            }
        }
        samples
    }

    #[test]
    fn round_trip_preserves_predictions() {
        let samples = tiny_corpus();
        let model = train_hierarchy(
            &samples,
            Isa::Arm32,
            OptimizationScheme::Two,
            &TrainConfig::default(),
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        save_model(&model, &path).unwrap();
        let loaded = load_model(&path).unwrap();
        assert_eq!(loaded, model);
        for sample in &samples {
            let a = model.predict_raw(&sample.raw).unwrap();
            let b = loaded.predict_raw(&sample.raw).unwrap();
            assert_eq!(a.family, b.family);
            assert_eq!(a.version, b.version);
            assert_eq!(a.optimization, b.optimization);
            assert_eq!(a.margins.family, b.margins.family);
        }
    }

    #[test]
    fn save_is_deterministic() {
        let samples = tiny_corpus();
        let train = || {
            train_hierarchy(
                &samples,
                Isa::Arm32,
                OptimizationScheme::Two,
                &TrainConfig::default(),
            )
            .unwrap()
        };
        let dir = tempfile::tempdir().unwrap();
        let a_path = dir.path().join("a.json");
        let b_path = dir.path().join("b.json");
        save_model(&train(), &a_path).unwrap();
        save_model(&train(), &b_path).unwrap();
        assert_eq!(
            std::fs::read(&a_path).unwrap(),
            std::fs::read(&b_path).unwrap()
        );
    }

    #[test]
    fn unknown_schema_version_is_rejected() {
        let samples = tiny_corpus();
        let model = train_hierarchy(
            &samples,
            Isa::Arm32,
            OptimizationScheme::Two,
            &TrainConfig::default(),
        )
        .unwrap();
        let mut value = model_to_value(&model);
        value["schema_version"] = serde_json::json!(999);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.json");
        std::fs::write(&path, serde_json::to_string(&value).unwrap()).unwrap();
        let err = load_model(&path).unwrap_err();
        assert!(matches!(err, Error::ModelSchemaMismatch { .. }));
    }

    #[test]
    fn truncated_file_is_an_io_failure() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("trunc.json");
        std::fs::write(&path, "{\"schema_version\": 1, \"isa\": ").unwrap();
        let err = load_model(&path).unwrap_err();
        assert!(matches!(err, Error::IoFailure { .. }));
    }

    #[test]
    fn missing_file_is_an_io_failure() {
        let err = load_model(Path::new("/nonexistent/model.json")).unwrap_err();
        assert!(matches!(err, Error::IoFailure { .. }));
    }
}
