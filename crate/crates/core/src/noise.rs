//! Seeded label sampling and class-flip corruption.
//!
//! One root seed drives two independent substreams, one for choosing which
//! instances are labeled, one for choosing which labels to corrupt, so
//! sweeping the noise rate never changes the labeled set.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::dataset::LabeledDataset;
use crate::labels::LabelState;
use crate::{Error, Result, Scalar};

/// Substream tags for the factored random process.
const STREAM_SAMPLING: u64 = 1 << 32;
const STREAM_CORRUPTION: u64 = 2 << 32;

/// How to corrupt labels when the problem has more than two classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MulticlassFlip {
    /// Reject non-binary problems; the symmetric two-class flip is the only
    /// process the binary benchmarks define.
    #[default]
    Reject,
    /// Flip to a uniformly random other class.
    UniformOther,
}

/// Seed plus the two rates of the labeling/corruption process.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub seed: u64,
    pub label_fraction: f64,
    pub noise_rate: f64,
}

impl NoiseSpec {
    pub fn new(seed: u64, label_fraction: f64, noise_rate: f64) -> Result<Self> {
        if !(label_fraction > 0.0 && label_fraction <= 1.0) {
            return Err(Error::invalid(format!(
                "label_fraction must lie in (0, 1], got {label_fraction}"
            )));
        }
        if !(0.0..1.0).contains(&noise_rate) {
            return Err(Error::invalid(format!("noise_rate must lie in [0, 1), got {noise_rate}")));
        }
        Ok(NoiseSpec { seed, label_fraction, noise_rate })
    }
}

fn substream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Round half away from zero, the convention for both rates.
fn round_count(x: f64) -> usize {
    x.round() as usize
}

/// First `m` entries of a seeded uniform draw without replacement from
/// `pool`, returned in ascending order.
fn sample_without_replacement(rng: &mut ChaCha8Rng, pool: &mut [usize], m: usize) -> Vec<usize> {
    let n = pool.len();
    for i in 0..m {
        let j = i + rng.random_range(0..n - i);
        pool.swap(i, j);
    }
    let mut chosen: Vec<usize> = pool[..m].to_vec();
    chosen.sort_unstable();
    chosen
}

/// Draw the labeled subset: exactly `round(label_fraction · n)` instances,
/// uniformly without replacement, re-drawn on a fresh substream until every
/// class holds at least one label. The returned state is uncorrupted
/// (observed = truth on the labeled set).
pub fn sample_labeled<S: Scalar>(
    spec: &NoiseSpec,
    dataset: &LabeledDataset<S>,
) -> Result<LabelState> {
    let n = dataset.instance_count();
    let c = dataset.class_count;
    let m = round_count(spec.label_fraction * n as f64);
    if m < c {
        return Err(Error::invalid(format!(
            "label_fraction {} yields {m} labels, fewer than the {c} classes",
            spec.label_fraction
        )));
    }

    const MAX_ATTEMPTS: u64 = 100_000;
    for attempt in 0..MAX_ATTEMPTS {
        let mut rng = substream(spec.seed, STREAM_SAMPLING + attempt);
        let mut pool: Vec<usize> = (0..n).collect();
        let chosen = sample_without_replacement(&mut rng, &mut pool, m);

        let mut covered = vec![false; c];
        for &i in &chosen {
            covered[dataset.truth[i]] = true;
        }
        if covered.iter().all(|&b| b) {
            let mut observed = vec![None; n];
            for &i in &chosen {
                observed[i] = Some(dataset.truth[i]);
            }
            return LabelState::new(observed, Vec::new());
        }
    }
    Err(Error::invalid("could not cover every class within the redraw budget"))
}

/// Corrupt the labeled set: per class, flip `round(noise_rate · l_class)` of
/// its labeled instances to the other class (binary) or to a uniformly
/// random other class when `multiclass` allows it. Unlabeled instances and
/// features are never touched.
pub fn inject_noise(
    spec: &NoiseSpec,
    state: &LabelState,
    classes: usize,
    multiclass: MulticlassFlip,
) -> Result<LabelState> {
    if classes > 2 && spec.noise_rate > 0.0 && multiclass == MulticlassFlip::Reject {
        return Err(Error::invalid(
            "the symmetric flip rule is binary; enable the multiclass flip option for c > 2",
        ));
    }
    if state.labeled_count() == 0 {
        return Err(Error::invalid("cannot corrupt an empty labeled set"));
    }

    let mut observed: Vec<Option<usize>> = state.observed_slice().to_vec();
    let mut flips: Vec<usize> = Vec::new();
    for class in 0..classes {
        let members: Vec<usize> = (0..state.len())
            .filter(|&i| state.observed(i) == Some(class))
            .collect();
        let k = round_count(spec.noise_rate * members.len() as f64);
        if k == 0 {
            continue;
        }
        let mut rng = substream(spec.seed, STREAM_CORRUPTION + class as u64);
        let mut pool = members.clone();
        let chosen = sample_without_replacement(&mut rng, &mut pool, k);
        for &i in &chosen {
            let new_class = if classes == 2 {
                1 - class
            } else {
                // Uniform over the other classes.
                let pick = rng.random_range(0..classes - 1);
                if pick >= class {
                    pick + 1
                } else {
                    pick
                }
            };
            observed[i] = Some(new_class);
            flips.push(i);
        }
    }
    state.with_observed(observed, flips)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::gen_g241c;

    fn toy_dataset(n: usize) -> LabeledDataset<f64> {
        gen_g241c::<f64>(42, n, 3).unwrap()
    }

    #[test]
    fn full_fraction_labels_everything() {
        let ds = toy_dataset(10);
        let spec = NoiseSpec::new(0, 1.0, 0.0).unwrap();
        let state = sample_labeled(&spec, &ds).unwrap();
        assert_eq!(state.labeled_count(), 10);
    }

    #[test]
    fn one_percent_of_1500_is_15() {
        let ds = toy_dataset(1500);
        let spec = NoiseSpec::new(0, 0.01, 0.0).unwrap();
        let state = sample_labeled(&spec, &ds).unwrap();
        assert_eq!(state.labeled_count(), 15);
    }

    #[test]
    fn sampling_is_deterministic() {
        let ds = toy_dataset(100);
        let spec = NoiseSpec::new(9, 0.1, 0.0).unwrap();
        let a = sample_labeled(&spec, &ds).unwrap();
        let b = sample_labeled(&spec, &ds).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sampling_covers_every_class() {
        let ds = toy_dataset(100);
        for seed in 0..20 {
            let spec = NoiseSpec::new(seed, 0.02, 0.0).unwrap();
            let state = sample_labeled(&spec, &ds).unwrap();
            assert_eq!(state.labeled_count(), 2);
            let classes: Vec<usize> =
                state.labeled_indices().iter().map(|&i| ds.truth[i]).collect();
            assert!(classes.contains(&0) && classes.contains(&1), "seed {seed}");
        }
    }

    #[test]
    fn too_small_fraction_is_rejected() {
        let ds = toy_dataset(100);
        let spec = NoiseSpec::new(0, 0.005, 0.0).unwrap();
        assert!(sample_labeled(&spec, &ds).is_err());
    }

    #[test]
    fn zero_rate_keeps_labels_clean() {
        let ds = toy_dataset(40);
        let spec = NoiseSpec::new(3, 0.5, 0.0).unwrap();
        let state = sample_labeled(&spec, &ds).unwrap();
        let noisy = inject_noise(&spec, &state, 2, MulticlassFlip::Reject).unwrap();
        assert!(noisy.flip_record().is_empty());
        for i in state.labeled_indices() {
            assert_eq!(noisy.observed(i), Some(ds.truth[i]));
        }
    }

    #[test]
    fn thirty_five_percent_of_twenty_labels_flips_seven() {
        // A class with exactly 20 labeled members must lose exactly
        // round(0.35 * 20) = 7 of them.
        let mut observed = vec![None; 60];
        for i in 0..20 {
            observed[i] = Some(0);
        }
        for i in 20..40 {
            observed[i] = Some(1);
        }
        let state = LabelState::new(observed, vec![]).unwrap();
        let spec = NoiseSpec::new(5, 0.5, 0.35).unwrap();
        let noisy = inject_noise(&spec, &state, 2, MulticlassFlip::Reject).unwrap();
        let zero_flips = noisy
            .flip_record()
            .iter()
            .filter(|&&i| state.observed(i) == Some(0))
            .count();
        let one_flips = noisy
            .flip_record()
            .iter()
            .filter(|&&i| state.observed(i) == Some(1))
            .count();
        assert_eq!(zero_flips, 7);
        assert_eq!(one_flips, 7);
        assert_eq!(noisy.flip_record().len(), 14);
    }

    #[test]
    fn reflipping_the_record_recovers_clean_state() {
        let ds = toy_dataset(50);
        let spec = NoiseSpec::new(11, 0.4, 0.3).unwrap();
        let clean = sample_labeled(&spec, &ds).unwrap();
        let noisy = inject_noise(&spec, &clean, 2, MulticlassFlip::Reject).unwrap();
        let mut restored: Vec<Option<usize>> = (0..noisy.len()).map(|i| noisy.observed(i)).collect();
        for &i in noisy.flip_record() {
            restored[i] = restored[i].map(|c| 1 - c);
        }
        let restored = LabelState::new(restored, vec![]).unwrap();
        for i in 0..50 {
            assert_eq!(restored.observed(i), clean.observed(i));
        }
    }

    #[test]
    fn noise_never_touches_unlabeled_instances() {
        let ds = toy_dataset(50);
        let spec = NoiseSpec::new(2, 0.3, 0.35).unwrap();
        let clean = sample_labeled(&spec, &ds).unwrap();
        let noisy = inject_noise(&spec, &clean, 2, MulticlassFlip::Reject).unwrap();
        for i in 0..50 {
            assert_eq!(clean.is_labeled(i), noisy.is_labeled(i));
            if !clean.is_labeled(i) {
                assert_eq!(noisy.observed(i), None);
            }
        }
    }

    #[test]
    fn flip_count_matches_per_class_rounding() {
        let ds = toy_dataset(100);
        for (seed, rate) in [(0, 0.05), (1, 0.10), (2, 0.20), (3, 0.35)] {
            let spec = NoiseSpec::new(seed, 0.37, rate).unwrap();
            let clean = sample_labeled(&spec, &ds).unwrap();
            let noisy = inject_noise(&spec, &clean, 2, MulticlassFlip::Reject).unwrap();
            let expected: usize = (0..2)
                .map(|c| {
                    let l_c = clean
                        .labeled_indices()
                        .iter()
                        .filter(|&&i| clean.observed(i) == Some(c))
                        .count();
                    (rate * l_c as f64).round() as usize
                })
                .sum();
            assert_eq!(noisy.flip_record().len(), expected);
        }
    }

    #[test]
    fn injection_is_deterministic() {
        let ds = toy_dataset(60);
        let spec = NoiseSpec::new(21, 0.4, 0.2).unwrap();
        let clean = sample_labeled(&spec, &ds).unwrap();
        let a = inject_noise(&spec, &clean, 2, MulticlassFlip::Reject).unwrap();
        let b = inject_noise(&spec, &clean, 2, MulticlassFlip::Reject).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn noise_rate_does_not_change_the_labeled_set() {
        let ds = toy_dataset(80);
        let lo = NoiseSpec::new(7, 0.25, 0.05).unwrap();
        let hi = NoiseSpec::new(7, 0.25, 0.35).unwrap();
        let a = sample_labeled(&lo, &ds).unwrap();
        let b = sample_labeled(&hi, &ds).unwrap();
        assert_eq!(a.labeled_mask(), b.labeled_mask());
    }

    #[test]
    fn multiclass_requires_explicit_opt_in() {
        let state = LabelState::new(vec![Some(0), Some(1), Some(2), None], vec![]).unwrap();
        let spec = NoiseSpec::new(0, 0.75, 0.4).unwrap();
        assert!(inject_noise(&spec, &state, 3, MulticlassFlip::Reject).is_err());
        let flipped = inject_noise(&spec, &state, 3, MulticlassFlip::UniformOther).unwrap();
        for &i in flipped.flip_record() {
            assert_ne!(flipped.observed(i), state.observed(i));
        }
        // A zero rate never flips, so the binary-rule guard does not apply.
        let zero = NoiseSpec::new(0, 0.75, 0.0).unwrap();
        let untouched = inject_noise(&zero, &state, 3, MulticlassFlip::Reject).unwrap();
        assert!(untouched.flip_record().is_empty());
    }
}
