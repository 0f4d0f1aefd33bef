//! Training and application of L1-penalized linear-kernel SVMs: binary
//! models, one-vs-rest multiclass, balanced class weights, stratified
//! k-fold cross-validation, and weight-based interpretation.

mod cv;
mod kfold;
mod solver;

use std::collections::BTreeMap;

use ndarray::ArrayView2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::features::FeatureLayout;

pub use cv::{build_matrix, cross_validate, CvReport};
pub use kfold::{stratified_kfold, FoldAssignment};
pub use solver::{solve_l1_squared_hinge, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassWeighting {
    Balanced,
    Uniform,
}

/// Training hyperparameters. Recorded verbatim in persisted models.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    /// Regularization strength C on the loss term.
    pub c: f64,
    /// Relative objective decrease per epoch below which training stops.
    pub tolerance: f64,
    pub max_epochs: usize,
    pub class_weighting: ClassWeighting,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            c: 1.0,
            tolerance: 1e-4,
            max_epochs: 1000,
            class_weighting: ClassWeighting::Balanced,
            seed: 42,
        }
    }
}

/// A trained binary linear classifier: `decision(x) = w.x + b`, predicting
/// the positive label iff the decision value is >= 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub weights: Vec<f64>,
    pub bias: f64,
    pub positive_label: String,
    pub negative_label: String,
    /// Achieved objective value at the end of training.
    pub objective: f64,
    pub converged: bool,
    pub epochs_run: usize,
}

impl LinearModel {
    pub fn decision(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.weights.len() {
            return Err(Error::DimensionMismatch {
                detail: format!(
                    "input has {} dimensions, model has {}",
                    x.len(),
                    self.weights.len()
                ),
            });
        }
        let dot: f64 = self.weights.iter().zip(x).map(|(w, v)| w * v).sum();
        Ok(dot + self.bias)
    }

    pub fn predict(&self, x: &[f64]) -> Result<&str> {
        Ok(if self.decision(x)? >= 0.0 {
            &self.positive_label
        } else {
            &self.negative_label
        })
    }
}

/// One-vs-rest multiclass model: one binary model per label in sorted label
/// order; prediction is the argmax of decision values, ties broken by the
/// smallest label index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneVsRestModel {
    pub labels: Vec<String>,
    pub models: Vec<LinearModel>,
}

impl OneVsRestModel {
    pub fn decisions(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.models.iter().map(|m| m.decision(x)).collect()
    }

    pub fn predict(&self, x: &[f64]) -> Result<&str> {
        let decisions = self.decisions(x)?;
        let mut best = 0usize;
        for (i, &d) in decisions.iter().enumerate() {
            if d > decisions[best] {
                best = i;
            }
        }
        Ok(&self.labels[best])
    }
}

/// Binary or one-vs-rest classifier, as dictated by the label space size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Classifier {
    Binary(LinearModel),
    OneVsRest(OneVsRestModel),
}

impl Classifier {
    pub fn predict(&self, x: &[f64]) -> Result<&str> {
        match self {
            Classifier::Binary(m) => m.predict(x),
            Classifier::OneVsRest(m) => m.predict(x),
        }
    }

    /// Per-label decision values in sorted label order.
    pub fn margins(&self, x: &[f64]) -> Result<Vec<(String, f64)>> {
        match self {
            Classifier::Binary(m) => {
                let d = m.decision(x)?;
                Ok(vec![
                    (m.positive_label.clone(), d),
                    (m.negative_label.clone(), -d),
                ])
            }
            Classifier::OneVsRest(m) => Ok(m
                .labels
                .iter()
                .cloned()
                .zip(m.decisions(x)?)
                .collect()),
        }
    }

    pub fn labels(&self) -> Vec<&str> {
        match self {
            Classifier::Binary(m) => vec![&m.positive_label, &m.negative_label],
            Classifier::OneVsRest(m) => m.labels.iter().map(String::as_str).collect(),
        }
    }
}

/// Class weights inversely proportional to class frequency:
/// `weight_c = N / (K * n_c)`.
pub fn balanced_class_weights(labels: &[String]) -> BTreeMap<String, f64> {
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for label in labels {
        *counts.entry(label).or_default() += 1;
    }
    let n = labels.len() as f64;
    let k = counts.len() as f64;
    counts
        .into_iter()
        .map(|(label, count)| (label.to_string(), n / (k * count as f64)))
        .collect()
}

fn per_sample_weights(labels: &[String], weighting: ClassWeighting) -> Vec<f64> {
    match weighting {
        ClassWeighting::Uniform => vec![1.0; labels.len()],
        ClassWeighting::Balanced => {
            let weights = balanced_class_weights(labels);
            labels.iter().map(|l| weights[l]).collect()
        }
    }
}

/// Balanced weights for an already-binarized +1/-1 label vector.
fn binary_sample_weights(y: &[f64], weighting: ClassWeighting) -> Vec<f64> {
    match weighting {
        ClassWeighting::Uniform => vec![1.0; y.len()],
        ClassWeighting::Balanced => {
            let n = y.len() as f64;
            let pos = y.iter().filter(|&&v| v > 0.0).count() as f64;
            let neg = n - pos;
            y.iter()
                .map(|&v| if v > 0.0 { n / (2.0 * pos) } else { n / (2.0 * neg) })
                .collect()
        }
    }
}

fn sorted_distinct(labels: &[String]) -> Vec<String> {
    let mut distinct: Vec<String> = labels.to_vec();
    distinct.sort();
    distinct.dedup();
    distinct
}

/// Train a binary L1-penalized squared-hinge SVM. The sorted-first label is
/// the positive class. `sample_weights` overrides the config's class
/// weighting when given.
pub fn train_l1_svm(
    x: ArrayView2<'_, f64>,
    labels: &[String],
    sample_weights: Option<&[f64]>,
    config: &TrainConfig,
) -> Result<LinearModel> {
    if x.nrows() != labels.len() {
        return Err(Error::DimensionMismatch {
            detail: format!("{} rows vs {} labels", x.nrows(), labels.len()),
        });
    }
    let distinct = sorted_distinct(labels);
    if distinct.len() != 2 {
        return Err(Error::SingleClassInput {
            found: distinct.len(),
        });
    }
    let positive = distinct[0].clone();
    let negative = distinct[1].clone();
    let y: Vec<f64> = labels
        .iter()
        .map(|l| if *l == positive { 1.0 } else { -1.0 })
        .collect();
    let owned_weights;
    let weights: &[f64] = match sample_weights {
        Some(w) => {
            if w.len() != labels.len() {
                return Err(Error::DimensionMismatch {
                    detail: format!("{} sample weights vs {} labels", w.len(), labels.len()),
                });
            }
            w
        }
        None => {
            owned_weights = per_sample_weights(labels, config.class_weighting);
            &owned_weights
        }
    };

    let solution = solve_l1_squared_hinge(
        x,
        &y,
        weights,
        config.c,
        config.tolerance,
        config.max_epochs,
        config.seed,
    );
    Ok(LinearModel {
        weights: solution.weights,
        bias: solution.bias,
        positive_label: positive,
        negative_label: negative,
        objective: solution.objective,
        converged: solution.converged,
        epochs_run: solution.epochs_run,
    })
}

/// Train one binary model per label (that label against all others), each
/// with class weights computed on its own binarized label set.
pub fn train_one_vs_rest(
    x: ArrayView2<'_, f64>,
    labels: &[String],
    config: &TrainConfig,
) -> Result<OneVsRestModel> {
    let distinct = sorted_distinct(labels);
    if distinct.len() < 2 {
        return Err(Error::SingleClassInput {
            found: distinct.len(),
        });
    }
    let mut models = Vec::with_capacity(distinct.len());
    for label in &distinct {
        let y: Vec<f64> = labels
            .iter()
            .map(|l| if l == label { 1.0 } else { -1.0 })
            .collect();
        let weights = binary_sample_weights(&y, config.class_weighting);
        let solution = solve_l1_squared_hinge(
            x,
            &y,
            &weights,
            config.c,
            config.tolerance,
            config.max_epochs,
            config.seed,
        );
        models.push(LinearModel {
            weights: solution.weights,
            bias: solution.bias,
            positive_label: label.clone(),
            negative_label: "rest".to_string(),
            objective: solution.objective,
            converged: solution.converged,
            epochs_run: solution.epochs_run,
        });
    }
    Ok(OneVsRestModel {
        labels: distinct,
        models,
    })
}

/// Train with binary or one-vs-rest structure depending on how many
/// distinct labels are present.
pub fn train_classifier(
    x: ArrayView2<'_, f64>,
    labels: &[String],
    config: &TrainConfig,
) -> Result<Classifier> {
    let distinct = sorted_distinct(labels);
    match distinct.len() {
        0 | 1 => Err(Error::SingleClassInput {
            found: distinct.len(),
        }),
        2 => Ok(Classifier::Binary(train_l1_svm(x, labels, None, config)?)),
        _ => Ok(Classifier::OneVsRest(train_one_vs_rest(x, labels, config)?)),
    }
}

/// The `n` features with the largest absolute weight, descending by
/// magnitude, signed weights reported; ties broken by layout order. `n` is
/// clipped to the layout length.
pub fn top_weights(
    model: &LinearModel,
    layout: &FeatureLayout,
    n: usize,
) -> Vec<(String, f64)> {
    let mut indexed: Vec<(usize, f64)> = model
        .weights
        .iter()
        .copied()
        .enumerate()
        .collect();
    indexed.sort_by(|a, b| {
        b.1.abs()
            .partial_cmp(&a.1.abs())
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.0.cmp(&b.0))
    });
    indexed
        .into_iter()
        .take(n.min(layout.len()))
        .map(|(i, w)| (layout.names()[i].clone(), w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disasm::Isa;
    use approx::assert_relative_eq;
    use ndarray::{array, Array2};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn strings(labels: &[&str]) -> Vec<String> {
        labels.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn balanced_weights_formula() {
        let w = balanced_class_weights(&strings(&["a", "a", "b", "b"]));
        assert_relative_eq!(w["a"], 1.0);
        assert_relative_eq!(w["b"], 1.0);

        let labels = strings(&["a", "a", "a", "b"]);
        let w = balanced_class_weights(&labels);
        assert_relative_eq!(w["a"], 4.0 / 6.0, epsilon = 1e-12);
        assert_relative_eq!(w["b"], 2.0);
        // sum over samples of their class weight equals N exactly
        let total: f64 = labels.iter().map(|l| w[l]).sum();
        assert_relative_eq!(total, 4.0, epsilon = 1e-12);

        let w = balanced_class_weights(&strings(&["a"]));
        assert_relative_eq!(w["a"], 1.0);
    }

    #[test]
    fn separable_data_trains_to_perfect_accuracy() {
        let x = array![[0.0, 1.0], [0.0, -1.0]];
        let labels = strings(&["pos", "neg"]);
        let model = train_l1_svm(x.view(), &labels, None, &TrainConfig::default()).unwrap();
        assert_eq!(model.predict(&[0.0, 1.0]).unwrap(), "pos");
        assert_eq!(model.predict(&[0.0, -1.0]).unwrap(), "neg");
    }

    #[test]
    fn single_class_input_is_rejected() {
        let x = array![[0.0, 1.0], [0.0, 2.0]];
        let labels = strings(&["a", "a"]);
        assert!(matches!(
            train_l1_svm(x.view(), &labels, None, &TrainConfig::default()),
            Err(Error::SingleClassInput { found: 1 })
        ));
    }

    #[test]
    fn prediction_rules() {
        let model = LinearModel {
            weights: vec![0.0, 0.0],
            bias: 0.5,
            positive_label: "p".into(),
            negative_label: "n".into(),
            objective: 0.0,
            converged: true,
            epochs_run: 0,
        };
        assert_eq!(model.predict(&[3.0, -9.0]).unwrap(), "p");

        let model = LinearModel {
            weights: vec![1.0, 0.0],
            bias: 0.0,
            ..model
        };
        assert_eq!(model.predict(&[-2.0, 7.0]).unwrap(), "n");
        assert!(matches!(
            model.predict(&[1.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn ovr_tie_break_takes_smallest_label_index() {
        let zero = |label: &str, bias: f64| LinearModel {
            weights: vec![0.0, 0.0],
            bias,
            positive_label: label.into(),
            negative_label: "rest".into(),
            objective: 0.0,
            converged: true,
            epochs_run: 0,
        };
        let ovr = OneVsRestModel {
            labels: strings(&["a", "b", "c"]),
            models: vec![zero("a", 0.3), zero("b", 0.3), zero("c", -1.0)],
        };
        assert_eq!(ovr.predict(&[0.0, 0.0]).unwrap(), "a");
    }

    #[test]
    fn separable_multiclass_clusters() {
        // five well-separated clusters in 2D
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let centers = [(0.0, 0.0), (10.0, 0.0), (0.0, 10.0), (10.0, 10.0), (5.0, 20.0)];
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for (ci, (cx, cy)) in centers.iter().enumerate() {
            for _ in 0..20 {
                rows.push([
                    cx + rng.random_range(-0.5..0.5),
                    cy + rng.random_range(-0.5..0.5),
                ]);
                labels.push(format!("c{ci}"));
            }
        }
        let x = Array2::from_shape_fn((rows.len(), 2), |(i, j)| rows[i][j]);
        let model = train_one_vs_rest(x.view(), &labels, &TrainConfig::default()).unwrap();
        let correct = rows
            .iter()
            .zip(&labels)
            .filter(|(row, label)| model.predict(&row[..]).unwrap() == label.as_str())
            .count();
        assert_eq!(correct, rows.len());
    }

    #[test]
    fn ovr_with_two_labels_matches_direct_binary_model() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 80;
        let d = 6;
        let x = Array2::from_shape_fn((n, d), |_| rng.random_range(-1.0..1.0));
        let labels: Vec<String> = (0..n)
            .map(|i| {
                if x[[i, 2]] + 0.3 * x[[i, 4]] > 0.1 {
                    "a".to_string()
                } else {
                    "b".to_string()
                }
            })
            .collect();
        let config = TrainConfig::default();
        let binary = train_l1_svm(x.view(), &labels, None, &config).unwrap();
        let ovr = train_one_vs_rest(x.view(), &labels, &config).unwrap();
        let test = Array2::from_shape_fn((200, d), |_| rng.random_range(-1.5..1.5));
        for row in test.rows() {
            let row = row.as_slice().unwrap();
            assert_eq!(binary.predict(row).unwrap(), ovr.predict(row).unwrap());
        }
    }

    #[test]
    fn sparsity_is_monotone_over_the_c_grid() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let n = 60;
        let d = 12;
        let x = Array2::from_shape_fn((n, d), |_| rng.random_range(-1.0..1.0));
        let labels: Vec<String> = (0..n)
            .map(|i| {
                let score: f64 = (0..4).map(|j| x[[i, j]]).sum();
                if score > 0.0 { "a".into() } else { "b".into() }
            })
            .collect();
        let mut zero_counts = Vec::new();
        for c in [1.0, 0.1, 0.01, 0.001] {
            let config = TrainConfig {
                c,
                ..TrainConfig::default()
            };
            let model = train_l1_svm(x.view(), &labels, None, &config).unwrap();
            zero_counts.push(model.weights.iter().filter(|&&w| w == 0.0).count());
        }
        for pair in zero_counts.windows(2) {
            assert!(pair[1] >= pair[0], "zero counts {zero_counts:?}");
        }
    }

    #[test]
    fn near_zero_c_gives_zero_weights_and_majority_bias() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let n = 40;
        let x = Array2::from_shape_fn((n, 5), |_| rng.random_range(-1.0..1.0));
        // 30 "a" vs 10 "b", uniform weights so the majority drives the bias
        let labels: Vec<String> = (0..n)
            .map(|i| if i < 30 { "a".into() } else { "b".into() })
            .collect();
        let config = TrainConfig {
            c: 1e-9,
            class_weighting: ClassWeighting::Uniform,
            ..TrainConfig::default()
        };
        let model = train_l1_svm(x.view(), &labels, None, &config).unwrap();
        assert!(model.weights.iter().all(|&w| w == 0.0));
        // majority class "a" is the positive (sorted-first) label here
        assert!(model.bias > 0.0);
        assert_eq!(model.predict(&[0.0; 5]).unwrap(), "a");
    }

    #[test]
    fn objective_matches_independent_oracle() {
        // Dataset and oracle value computed ahead of time with two
        // independent convex optimizers on the identical objective
        // (split-variable L-BFGS-B and OSQP); they agree to 1e-14.
        let x = Array2::from_shape_fn((50, 10), |(i, j)| ORACLE_X[i][j]);
        let labels: Vec<String> = ORACLE_Y
            .iter()
            .map(|&y| if y > 0.0 { "a".to_string() } else { "b".to_string() })
            .collect();
        let config = TrainConfig {
            c: 1.0,
            tolerance: 1e-10,
            max_epochs: 20_000,
            class_weighting: ClassWeighting::Uniform,
            seed: 42,
        };
        let model = train_l1_svm(x.view(), &labels, None, &config).unwrap();
        let relative = (model.objective - ORACLE_OBJECTIVE).abs() / ORACLE_OBJECTIVE;
        assert!(
            relative <= 1e-3,
            "objective {} vs oracle {} (relative {relative})",
            model.objective,
            ORACLE_OBJECTIVE
        );
    }

    #[test]
    fn top_weights_ranking() {
        let layout = FeatureLayout::new(Isa::Arm32, &[]);
        let mut weights = vec![0.0; layout.len()];
        weights[0] = 0.1;
        weights[1] = -5.0;
        weights[2] = 2.0;
        let model = LinearModel {
            weights,
            bias: 0.0,
            positive_label: "p".into(),
            negative_label: "n".into(),
            objective: 0.0,
            converged: true,
            epochs_run: 0,
        };
        let top = top_weights(&model, &layout, 2);
        assert_eq!(top[0], ("src_r1".to_string(), -5.0));
        assert_eq!(top[1], ("src_r2".to_string(), 2.0));

        // zero weights: layout order, n entries
        let zero = LinearModel {
            weights: vec![0.0; layout.len()],
            ..model
        };
        let top = top_weights(&zero, &layout, 5);
        assert_eq!(top.len(), 5);
        assert_eq!(top[0].0, "src_r0");
        assert_eq!(top[4].0, "src_r4");
    }

    #[test]
    fn single_informative_dimension_is_ranked_first() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let n = 100;
        let d = 8;
        let mut x = Array2::from_shape_fn((n, d), |_| rng.random_range(-0.05..0.05));
        let labels: Vec<String> = (0..n)
            .map(|i| if i % 2 == 0 { "a".into() } else { "b".into() })
            .collect();
        for i in 0..n {
            x[[i, 3]] = if labels[i] == "a" { 1.0 } else { -1.0 };
        }
        let model = train_l1_svm(x.view(), &labels, None, &TrainConfig::default()).unwrap();
        let best = model
            .weights
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.abs().partial_cmp(&b.1.abs()).unwrap())
            .unwrap()
            .0;
        assert_eq!(best, 3);
    }

    const ORACLE_OBJECTIVE: f64 = 11.887914558150902;

    include!("oracle_data.rs");
}
