//! The classifier hierarchy: family and optimization predicted in parallel
//! from the same instruction stream, with the family result routing to a
//! per-family version classifier. Each task carries its own frozen TF-IDF
//! vocabulary/IDF and feature layout, fitted on that task's training
//! subset. A trained model is immutable and safe to share across threads.

mod persist;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::disasm::{ingest_path, DisassemblerConfig, Instruction, Isa};
use crate::error::{Error, Result};
use crate::features::{extract_raw, fit_tfidf, FeatureLayout, RawFeatures, TfidfModel};
use crate::learn::{build_matrix, train_classifier, Classifier, TrainConfig};

pub use persist::{load_model, save_model};

/// Optimization-level label space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OptimizationScheme {
    /// All five levels as distinct labels.
    Five,
    /// -O2 and -O3 merged under one label.
    Four,
    /// -O0 against everything else.
    Two,
}

impl OptimizationScheme {
    pub fn map_label(&self, raw: &str) -> String {
        match self {
            OptimizationScheme::Five => raw.to_string(),
            OptimizationScheme::Four => {
                if raw == "-O2" || raw == "-O3" {
                    "-O2/-O3".to_string()
                } else {
                    raw.to_string()
                }
            }
            OptimizationScheme::Two => {
                if raw == "-O0" {
                    "-O0".to_string()
                } else {
                    "optimized".to_string()
                }
            }
        }
    }

    pub fn from_arity(arity: usize) -> Option<Self> {
        match arity {
            5 => Some(OptimizationScheme::Five),
            4 => Some(OptimizationScheme::Four),
            2 => Some(OptimizationScheme::Two),
            _ => None,
        }
    }
}

/// Binary classification task with explicit label names, e.g. a single
/// compiler against everything else.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryTask {
    pub positive: String,
    pub negative: String,
}

/// One classifier together with its frozen TF-IDF model and layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskModel {
    pub labels: Vec<String>,
    pub classifier: Classifier,
    pub tfidf: TfidfModel,
    pub layout: FeatureLayout,
    pub config: TrainConfig,
}

impl TaskModel {
    pub fn predict_raw(&self, raw: &RawFeatures) -> Result<(String, Vec<(String, f64)>)> {
        let vector = crate::features::feature_vector_for(raw, &self.tfidf, &self.layout)?;
        let label = self.classifier.predict(vector.values())?.to_string();
        let margins = self.classifier.margins(vector.values())?;
        Ok((label, margins))
    }
}

/// A labeled training sample: raw features plus the ground-truth labels.
/// An empty version string means "no version label".
#[derive(Debug, Clone)]
pub struct TrainingSample {
    pub raw: RawFeatures,
    pub family: String,
    pub version: String,
    pub optimization: String,
}

/// The trained hierarchy. `versions` is keyed by family label.
#[derive(Debug, Clone, PartialEq)]
pub struct ProvenanceModel {
    pub isa: Isa,
    pub scheme: OptimizationScheme,
    pub family: TaskModel,
    pub versions: BTreeMap<String, TaskModel>,
    pub optimization: TaskModel,
    /// Set from SOURCE_DATE_EPOCH by the CLI when present; never set
    /// implicitly so that identical runs produce identical model files.
    pub created: Option<String>,
}

/// Prediction output: one label per stage plus raw decision margins.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Prediction {
    pub family: String,
    /// `None` when no version classifier exists for the predicted family.
    pub version: Option<String>,
    pub optimization: String,
    pub margins: StageMargins,
}

/// Per-label decision values for every stage that ran.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageMargins {
    pub family: Vec<(String, f64)>,
    pub version: Option<Vec<(String, f64)>>,
    pub optimization: Vec<(String, f64)>,
}

/// Fit one task: freeze TF-IDF on the task's training subset, build the
/// matrix, train a binary or one-vs-rest classifier.
pub fn fit_task(
    raws: &[&RawFeatures],
    labels: &[String],
    isa: Isa,
    config: &TrainConfig,
) -> Result<TaskModel> {
    let terms: Vec<_> = raws.iter().map(|r| r.terms.clone()).collect();
    let tfidf = fit_tfidf(&terms)?;
    let layout = FeatureLayout::new(isa, &tfidf.vocabulary);
    let x = build_matrix(raws, &tfidf, &layout)?;
    let classifier = train_classifier(x.view(), labels, config)?;
    let mut distinct = labels.to_vec();
    distinct.sort();
    distinct.dedup();
    Ok(TaskModel {
        labels: distinct,
        classifier,
        tfidf,
        layout,
        config: config.clone(),
    })
}

/// Train the full hierarchy. The family task requires exactly two families;
/// a version classifier is trained for each family with at least two
/// distinct non-empty version labels and omitted otherwise.
pub fn train_hierarchy(
    samples: &[TrainingSample],
    isa: Isa,
    scheme: OptimizationScheme,
    config: &TrainConfig,
) -> Result<ProvenanceModel> {
    if samples.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut families: Vec<String> = samples.iter().map(|s| s.family.clone()).collect();
    families.sort();
    families.dedup();
    if families.len() != 2 {
        return Err(Error::InsufficientLabels {
            detail: format!(
                "family task requires exactly 2 families, found {}: {families:?}",
                families.len()
            ),
        });
    }

    let all_raws: Vec<&RawFeatures> = samples.iter().map(|s| &s.raw).collect();
    let family_labels: Vec<String> = samples.iter().map(|s| s.family.clone()).collect();
    let family = fit_task(&all_raws, &family_labels, isa, config)?;

    let optimization_labels: Vec<String> = samples
        .iter()
        .map(|s| scheme.map_label(&s.optimization))
        .collect();
    let optimization = fit_task(&all_raws, &optimization_labels, isa, config)?;

    let mut versions = BTreeMap::new();
    for family_name in &families {
        let subset: Vec<&TrainingSample> = samples
            .iter()
            .filter(|s| &s.family == family_name && !s.version.is_empty())
            .collect();
        let version_labels: Vec<String> =
            subset.iter().map(|s| s.version.clone()).collect();
        let mut distinct = version_labels.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() < 2 {
            continue;
        }
        let subset_raws: Vec<&RawFeatures> = subset.iter().map(|s| &s.raw).collect();
        let task = fit_task(&subset_raws, &version_labels, isa, config)?;
        versions.insert(family_name.clone(), task);
    }

    Ok(ProvenanceModel {
        isa,
        scheme,
        family,
        versions,
        optimization,
        created: None,
    })
}

/// Train a standalone binary classification task (for example one compiler
/// family against all others) with its own TF-IDF model and layout.
pub fn train_binary_task(
    raws: &[&RawFeatures],
    labels: &[String],
    task: &BinaryTask,
    isa: Isa,
    config: &TrainConfig,
) -> Result<TaskModel> {
    for label in labels {
        if label != &task.positive && label != &task.negative {
            return Err(Error::UnknownLabel {
                column: "binary task".into(),
                value: label.clone(),
            });
        }
    }
    let distinct: std::collections::BTreeSet<&String> = labels.iter().collect();
    if distinct.len() != 2 {
        return Err(Error::InsufficientLabels {
            detail: format!(
                "binary task {:?} vs {:?} requires both labels present, found {distinct:?}",
                task.positive, task.negative
            ),
        });
    }
    fit_task(raws, labels, isa, config)
}

impl ProvenanceModel {
    /// Classify an instruction stream: instructions are profiled once, then
    /// scored per task against each task's frozen vocabulary and IDF.
    pub fn predict_instructions(&self, instructions: &[Instruction]) -> Result<Prediction> {
        let raw = extract_raw(instructions, self.isa)?;
        self.predict_raw(&raw)
    }

    pub fn predict_raw(&self, raw: &RawFeatures) -> Result<Prediction> {
        let (family, family_margins) = self.family.predict_raw(raw)?;
        let (optimization, optimization_margins) = self.optimization.predict_raw(raw)?;
        let (version, version_margins) = match self.versions.get(&family) {
            Some(task) => {
                let (label, margins) = task.predict_raw(raw)?;
                (Some(label), Some(margins))
            }
            None => (None, None),
        };
        Ok(Prediction {
            family,
            version,
            optimization,
            margins: StageMargins {
                family: family_margins,
                version: version_margins,
                optimization: optimization_margins,
            },
        })
    }

    /// Disassemble (or read a listing) and classify a file.
    pub fn predict_path(
        &self,
        path: &std::path::Path,
        disassembler: &DisassemblerConfig,
    ) -> Result<Prediction> {
        let (instructions, _) = ingest_path(path, Some(self.isa), disassembler)?;
        self.predict_instructions(&instructions)
    }
}
