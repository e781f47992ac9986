//! Seed aggregation: collapse records into mean ± sample-std rows.

use std::collections::BTreeMap;

use crate::grid::ExperimentRecord;
use crate::{Error, Result};

/// One aggregated table cell: everything but the seed identifies the group.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRow {
    pub dataset: String,
    pub algorithm: String,
    pub alpha: Option<f64>,
    pub mu: Option<f64>,
    pub p: Option<f64>,
    pub label_fraction: f64,
    pub noise_rate: f64,
    /// Seeds that produced a valid accuracy.
    pub seed_count: usize,
    /// Seeds that failed; excluded from the statistics.
    pub error_count: usize,
    /// Missing when every seed failed.
    pub mean_accuracy: Option<f64>,
    /// Sample standard deviation (n−1); zero for a single seed.
    pub std_accuracy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct GroupKey {
    dataset: String,
    algorithm: String,
    alpha: Option<u64>,
    mu: Option<u64>,
    p: Option<u64>,
    label_fraction: u64,
    noise_rate: u64,
}

fn key_of(r: &ExperimentRecord) -> GroupKey {
    GroupKey {
        dataset: r.dataset.clone(),
        algorithm: r.algorithm.clone(),
        alpha: r.alpha.map(f64::to_bits),
        mu: r.mu.map(f64::to_bits),
        p: r.p.map(f64::to_bits),
        label_fraction: r.label_fraction.to_bits(),
        noise_rate: r.noise_rate.to_bits(),
    }
}

/// Group by every coordinate except the seed and compute two-pass mean and
/// sample standard deviation. Grouping is independent of record order.
pub fn aggregate(records: &[ExperimentRecord]) -> Result<Vec<AggregateRow>> {
    if records.is_empty() {
        return Err(Error::config("cannot aggregate an empty record set"));
    }
    let mut groups: BTreeMap<GroupKey, Vec<&ExperimentRecord>> = BTreeMap::new();
    for record in records {
        groups.entry(key_of(record)).or_default().push(record);
    }

    let mut rows = Vec::with_capacity(groups.len());
    for (_, mut members) in groups {
        // Summation order must not depend on record order, so fix it by seed.
        members.sort_by_key(|r| r.seed);
        let sample = members[0];
        let values: Vec<f64> = members.iter().filter_map(|r| r.accuracy).collect();
        let error_count = members.len() - values.len();
        let (mean, std) = if values.is_empty() {
            (None, None)
        } else {
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let std = if values.len() < 2 {
                0.0
            } else {
                let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
                (ss / (values.len() - 1) as f64).sqrt()
            };
            (Some(mean), Some(std))
        };
        rows.push(AggregateRow {
            dataset: sample.dataset.clone(),
            algorithm: sample.algorithm.clone(),
            alpha: sample.alpha,
            mu: sample.mu,
            p: sample.p,
            label_fraction: sample.label_fraction,
            noise_rate: sample.noise_rate,
            seed_count: values.len(),
            error_count,
            mean_accuracy: mean,
            std_accuracy: std,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn record(seed: u64, acc: Option<f64>) -> ExperimentRecord {
        ExperimentRecord {
            dataset: "d".into(),
            algorithm: "GFHF".into(),
            alpha: None,
            mu: None,
            p: None,
            seed,
            label_fraction: 0.1,
            noise_rate: 0.0,
            accuracy: acc,
            error: acc.is_none().then(|| "boom".into()),
            wall_time_s: 0.0,
            iterations: None,
            isolated: 0,
        }
    }

    #[test]
    fn single_seed_reports_zero_std() {
        let rows = aggregate(&[record(0, Some(0.8))]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].mean_accuracy, Some(0.8));
        assert_eq!(rows[0].std_accuracy, Some(0.0));
    }

    #[test]
    fn two_point_mean_and_std() {
        let rows = aggregate(&[record(0, Some(0.9)), record(1, Some(1.0))]).unwrap();
        assert_eq!(rows[0].mean_accuracy, Some(0.95));
        let std = rows[0].std_accuracy.unwrap();
        assert!((std - 0.05 * 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn matches_two_pass_oracle() {
        let values = [
            0.91, 0.88, 0.93, 0.85, 0.9, 0.87, 0.92, 0.89, 0.86, 0.94, 0.9, 0.91, 0.88, 0.87,
            0.93, 0.9, 0.89, 0.92, 0.91, 0.9,
        ];
        let records: Vec<ExperimentRecord> =
            values.iter().enumerate().map(|(i, &v)| record(i as u64, Some(v))).collect();
        let rows = aggregate(&records).unwrap();
        // Independent two-pass computation.
        let mean: f64 = values.iter().sum::<f64>() / values.len() as f64;
        let ss: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
        let std = (ss / (values.len() - 1) as f64).sqrt();
        assert!((rows[0].mean_accuracy.unwrap() - mean).abs() <= 1e-12);
        assert!((rows[0].std_accuracy.unwrap() - std).abs() <= 1e-12);
    }

    #[test]
    fn errors_are_counted_separately() {
        let rows = aggregate(&[record(0, Some(0.5)), record(1, None), record(2, None)]).unwrap();
        assert_eq!(rows[0].seed_count, 1);
        assert_eq!(rows[0].error_count, 2);
        let all_failed = aggregate(&[record(0, None)]).unwrap();
        assert_eq!(all_failed[0].mean_accuracy, None);
        assert_eq!(all_failed[0].error_count, 1);
    }

    proptest! {
        #[test]
        fn aggregation_is_permutation_invariant(perm_seed in 0u64..1000) {
            let mut records: Vec<ExperimentRecord> =
                (0..10).map(|i| record(i, Some(0.5 + i as f64 / 100.0))).collect();
            // Deterministic shuffle driven by the proptest input.
            let mut state = perm_seed;
            for i in (1..records.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let j = (state >> 33) as usize % (i + 1);
                records.swap(i, j);
            }
            let rows = aggregate(&records).unwrap();
            let baseline: Vec<ExperimentRecord> =
                (0..10).map(|i| record(i, Some(0.5 + i as f64 / 100.0))).collect();
            prop_assert_eq!(rows, aggregate(&baseline).unwrap());
        }
    }
}
