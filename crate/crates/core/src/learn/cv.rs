//! Stratified k-fold cross-validation over raw per-binary features.
//!
//! TF-IDF and class weights are fitted on each training split only, so no
//! corpus statistics leak into the held-out fold.

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::disasm::Isa;
use crate::error::Result;
use crate::features::{fit_tfidf, feature_vector_for, FeatureLayout, RawFeatures};

use super::{stratified_kfold, train_classifier, TrainConfig};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CvReport {
    pub fold_accuracies: Vec<f64>,
    pub mean_accuracy: f64,
}

/// Build the feature matrix of `raws` against a TF-IDF model fitted
/// elsewhere.
pub fn build_matrix(
    raws: &[&RawFeatures],
    tfidf: &crate::features::TfidfModel,
    layout: &FeatureLayout,
) -> Result<Array2<f64>> {
    let mut matrix = Array2::zeros((raws.len(), layout.len()));
    for (i, raw) in raws.iter().enumerate() {
        let vector = feature_vector_for(raw, tfidf, layout)?;
        for (j, v) in vector.values().iter().enumerate() {
            matrix[[i, j]] = *v;
        }
    }
    Ok(matrix)
}

/// Run k-fold cross-validation: per fold, fit TF-IDF on the training split,
/// train a classifier (binary or one-vs-rest depending on the label space),
/// and score accuracy on the held-out fold.
pub fn cross_validate(
    raws: &[RawFeatures],
    labels: &[String],
    isa: Isa,
    config: &TrainConfig,
    k: usize,
    seed: u64,
) -> Result<CvReport> {
    let assignment = stratified_kfold(labels, k, seed)?;
    let mut fold_accuracies = Vec::with_capacity(k);
    for fold in 0..k {
        let train_idx = assignment.train_indices(fold);
        let test_idx = assignment.test_indices(fold);

        let train_terms: Vec<_> = train_idx.iter().map(|&i| raws[i].terms.clone()).collect();
        let tfidf = fit_tfidf(&train_terms)?;
        let layout = FeatureLayout::new(isa, &tfidf.vocabulary);

        let train_raws: Vec<&RawFeatures> = train_idx.iter().map(|&i| &raws[i]).collect();
        let x_train = build_matrix(&train_raws, &tfidf, &layout)?;
        let y_train: Vec<String> = train_idx.iter().map(|&i| labels[i].clone()).collect();
        let classifier = train_classifier(x_train.view(), &y_train, config)?;

        let mut correct = 0usize;
        for &i in &test_idx {
            let vector = feature_vector_for(&raws[i], &tfidf, &layout)?;
            if classifier.predict(vector.values())? == labels[i] {
                correct += 1;
            }
        }
        fold_accuracies.push(correct as f64 / test_idx.len() as f64);
    }
    let mean_accuracy = fold_accuracies.iter().sum::<f64>() / fold_accuracies.len() as f64;
    Ok(CvReport {
        fold_accuracies,
        mean_accuracy,
    })
}
