//! Deterministic stratified k-fold assignment: samples are shuffled within
//! each class by a seeded RNG, then dealt round-robin into folds, so every
//! fold's per-class count differs from the exact proportional share by at
//! most one.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldAssignment {
    folds: Vec<usize>,
    k: usize,
}

impl FoldAssignment {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn fold_of(&self, sample: usize) -> usize {
        self.folds[sample]
    }

    pub fn assignments(&self) -> &[usize] {
        &self.folds
    }

    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.folds.len())
            .filter(|&i| self.folds[i] == fold)
            .collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.folds.len())
            .filter(|&i| self.folds[i] != fold)
            .collect()
    }
}

pub fn stratified_kfold(labels: &[String], k: usize, seed: u64) -> Result<FoldAssignment> {
    if k < 2 {
        return Err(Error::InvalidFoldCount { k });
    }
    let mut by_class: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, label) in labels.iter().enumerate() {
        by_class.entry(label).or_default().push(i);
    }
    for (label, indices) in &by_class {
        if indices.len() < k {
            return Err(Error::ClassTooSmall {
                label: label.to_string(),
                count: indices.len(),
                k,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![0usize; labels.len()];
    for indices in by_class.values() {
        let mut shuffled = indices.clone();
        shuffled.shuffle(&mut rng);
        for (position, &sample) in shuffled.iter().enumerate() {
            folds[sample] = position % k;
        }
    }
    Ok(FoldAssignment { folds, k })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(counts: &[(&str, usize)]) -> Vec<String> {
        let mut out = Vec::new();
        for (label, n) in counts {
            out.extend(std::iter::repeat_n(label.to_string(), *n));
        }
        out
    }

    #[test]
    fn exact_divisibility_gives_one_of_each_per_fold() {
        let labels = labels(&[("a", 10), ("b", 10)]);
        let assignment = stratified_kfold(&labels, 10, 1).unwrap();
        for fold in 0..10 {
            let test = assignment.test_indices(fold);
            assert_eq!(test.len(), 2);
            let a = test.iter().filter(|&&i| labels[i] == "a").count();
            assert_eq!(a, 1);
        }
    }

    #[test]
    fn per_class_counts_differ_by_at_most_one() {
        let labels = labels(&[("a", 23), ("b", 31), ("c", 17)]);
        let assignment = stratified_kfold(&labels, 5, 99).unwrap();
        for class in ["a", "b", "c"] {
            let total = labels.iter().filter(|l| *l == class).count();
            let share = total as f64 / 5.0;
            for fold in 0..5 {
                let count = assignment
                    .test_indices(fold)
                    .iter()
                    .filter(|&&i| labels[i] == class)
                    .count();
                assert!(
                    (count as f64 - share).abs() <= 1.0,
                    "class {class} fold {fold}: {count} vs share {share}"
                );
            }
        }
    }

    #[test]
    fn small_class_is_rejected() {
        let labels = labels(&[("a", 10)]);
        assert!(matches!(
            stratified_kfold(&labels, 11, 0),
            Err(Error::ClassTooSmall { count: 10, k: 11, .. })
        ));
    }

    #[test]
    fn k_below_two_is_rejected() {
        let labels = labels(&[("a", 10)]);
        assert!(matches!(
            stratified_kfold(&labels, 1, 0),
            Err(Error::InvalidFoldCount { k: 1 })
        ));
    }

    #[test]
    fn same_seed_same_assignment() {
        let labels = labels(&[("a", 20), ("b", 14)]);
        let one = stratified_kfold(&labels, 4, 1234).unwrap();
        let two = stratified_kfold(&labels, 4, 1234).unwrap();
        assert_eq!(one, two);
        let three = stratified_kfold(&labels, 4, 1235).unwrap();
        assert_ne!(one, three);
    }
}
