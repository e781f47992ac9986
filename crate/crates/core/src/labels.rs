//! Observed-label state shared by the noise process and the classifiers.

use crate::mat::Mat;
use crate::{Error, Result, Scalar};

/// Per-instance observed labels with the labeled mask and a record of which
/// observed labels were corrupted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelState {
    observed: Vec<Option<usize>>,
    flip_record: Vec<usize>,
}

impl LabelState {
    /// Build from per-instance observations; `flip_record` must only name
    /// labeled instances.
    pub fn new(observed: Vec<Option<usize>>, mut flip_record: Vec<usize>) -> Result<Self> {
        if !observed.iter().any(Option::is_some) {
            return Err(Error::validation("label state needs at least one labeled instance"));
        }
        flip_record.sort_unstable();
        flip_record.dedup();
        for &i in &flip_record {
            if i >= observed.len() || observed[i].is_none() {
                return Err(Error::validation(format!(
                    "flip record names unlabeled or out-of-range instance {i}"
                )));
            }
        }
        Ok(LabelState { observed, flip_record })
    }

    /// All instances labeled with their true class; empty flip record.
    pub fn fully_labeled(truth: &[usize]) -> Self {
        LabelState { observed: truth.iter().map(|&c| Some(c)).collect(), flip_record: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.observed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observed.is_empty()
    }

    pub fn observed(&self, i: usize) -> Option<usize> {
        self.observed[i]
    }

    pub fn is_labeled(&self, i: usize) -> bool {
        self.observed[i].is_some()
    }

    pub fn labeled_mask(&self) -> Vec<bool> {
        self.observed.iter().map(Option::is_some).collect()
    }

    pub fn labeled_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_labeled(i)).collect()
    }

    pub fn unlabeled_indices(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.is_labeled(i)).collect()
    }

    pub fn labeled_count(&self) -> usize {
        self.observed.iter().filter(|o| o.is_some()).count()
    }

    pub fn flip_record(&self) -> &[usize] {
        &self.flip_record
    }

    /// The most frequent observed class, ties toward the lower index.
    pub fn majority_observed(&self, classes: usize) -> usize {
        let mut counts = vec![0usize; classes];
        for o in self.observed.iter().flatten() {
            counts[*o] += 1;
        }
        counts
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
            .map(|(c, _)| c)
            .unwrap_or(0)
    }

    pub(crate) fn with_observed(&self, observed: Vec<Option<usize>>, flips: Vec<usize>) -> Result<Self> {
        LabelState::new(observed, flips)
    }

    pub(crate) fn observed_slice(&self) -> &[Option<usize>] {
        &self.observed
    }
}

/// One-hot encode the observed labels: labeled rows carry the indicator of
/// their observed class, unlabeled rows are all zeros.
pub fn one_hot<S: Scalar>(state: &LabelState, classes: usize) -> Mat<S> {
    let n = state.len();
    let mut y = Mat::zeros(n, classes);
    for i in 0..n {
        if let Some(c) = state.observed(i) {
            debug_assert!(c < classes);
            y[(i, c)] = S::one();
        }
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_hot_basic() {
        let state =
            LabelState::new(vec![Some(1), None, None], vec![]).unwrap();
        let y = one_hot::<f64>(&state, 2);
        assert_eq!(y.row(0), &[0.0, 1.0]);
        assert_eq!(y.row(1), &[0.0, 0.0]);
        assert_eq!(y.row(2), &[0.0, 0.0]);
    }

    #[test]
    fn one_hot_fully_labeled_rows_sum_to_one() {
        let state = LabelState::fully_labeled(&[0, 1, 1, 0]);
        let y = one_hot::<f64>(&state, 2);
        for i in 0..4 {
            let sum: f64 = y.row(i).iter().sum();
            assert_eq!(sum, 1.0);
        }
    }

    #[test]
    fn one_hot_unlabeled_rows_are_zero() {
        let state = LabelState::new(vec![Some(0), None, None, None], vec![]).unwrap();
        let y = one_hot::<f64>(&state, 2);
        let total: f64 = (1..4).map(|i| y.row(i).iter().sum::<f64>()).sum();
        assert_eq!(total, 0.0);
    }

    #[test]
    fn flip_record_must_name_labeled_instances() {
        assert!(LabelState::new(vec![Some(0), None], vec![1]).is_err());
        assert!(LabelState::new(vec![None, None], vec![]).is_err());
    }

    #[test]
    fn majority_prefers_lower_class_on_ties() {
        let state = LabelState::new(vec![Some(0), Some(1), None], vec![]).unwrap();
        assert_eq!(state.majority_observed(2), 0);
    }
}
