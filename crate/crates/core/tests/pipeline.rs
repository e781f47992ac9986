//! End-to-end pipeline tests: dataset -> graph -> classifier -> accuracy,
//! including the generic-scalar instantiation.

use gssl_core::algorithms::{
    accuracy, gfhf, gtam, laplacian_eigenmaps, lgc, predict, AccuracyScope, PropagationMode,
};
use gssl_core::dataset::{gen_digit1_like, gen_g241c};
use gssl_core::graph::{knn_index, mutual_knn_graph, pairwise_sq_euclidean};
use gssl_core::labels::LabelState;
use gssl_core::noise::{inject_noise, sample_labeled, MulticlassFlip, NoiseSpec};
use gssl_core::Scalar;

fn pipeline<S: Scalar>(seed: u64) -> (f64, f64, f64, f64) {
    let ds = gen_digit1_like::<S>(seed, 160, 12).unwrap();
    let dist = pairwise_sq_euclidean(&ds.features).unwrap();
    let graph = mutual_knn_graph(&knn_index(&dist, 6).unwrap());
    let spec = NoiseSpec::new(seed, 0.25, 0.1).unwrap();
    let clean = sample_labeled(&spec, &ds).unwrap();
    let state = inject_noise(&spec, &clean, 2, MulticlassFlip::Reject).unwrap();

    let tol = S::of_f64(1e-8);
    let run = |scores: gssl_core::algorithms::ScoreMatrix<S>| -> f64 {
        let pred = predict(&scores, &state, &graph, 2);
        accuracy(&pred, &ds.truth, &state, AccuracyScope::Unlabeled).unwrap()
    };
    let a = run(gfhf(&graph, &state, 2, PropagationMode::Closed, tol, 10_000).unwrap());
    let b = run(lgc(&graph, &state, 2, S::of_f64(0.9), PropagationMode::Closed, tol, 10_000).unwrap());
    let c = run(laplacian_eigenmaps(&graph, &state, 2, 8).unwrap());
    let d = run(gtam(&graph, &state, 2, S::of_f64(1.0), usize::MAX).unwrap().scores);
    (a, b, c, d)
}

#[test]
fn all_four_classifiers_beat_chance_on_manifold_data() {
    let (gfhf_acc, lgc_acc, le_acc, gtam_acc) = pipeline::<f64>(4);
    for (name, acc) in
        [("gfhf", gfhf_acc), ("lgc", lgc_acc), ("le", le_acc), ("gtam", gtam_acc)]
    {
        assert!(acc > 0.7, "{name} accuracy {acc} too low");
    }
}

#[test]
fn f32_instantiation_tracks_f64() {
    let lo = pipeline::<f32>(4);
    let hi = pipeline::<f64>(4);
    // Same pipeline, same draws; predictions may flip only on numerically
    // marginal rows.
    assert!((lo.0 - hi.0).abs() < 0.05);
    assert!((lo.1 - hi.1).abs() < 0.05);
    assert!((lo.3 - hi.3).abs() < 0.05);
}

#[test]
fn noisier_labels_do_not_help_on_average() {
    let ds = gen_g241c::<f64>(2, 200, 16).unwrap();
    let dist = pairwise_sq_euclidean(&ds.features).unwrap();
    let graph = mutual_knn_graph(&knn_index(&dist, 7).unwrap());
    let mut clean_total = 0.0;
    let mut noisy_total = 0.0;
    for seed in 0..8 {
        let base = NoiseSpec::new(seed, 0.3, 0.0).unwrap();
        let state = sample_labeled(&base, &ds).unwrap();
        let run = |st: &LabelState| -> f64 {
            let scores =
                gfhf(&graph, st, 2, PropagationMode::Closed, 1e-8, 10_000).unwrap();
            let pred = predict(&scores, st, &graph, 2);
            accuracy(&pred, &ds.truth, st, AccuracyScope::Unlabeled).unwrap()
        };
        clean_total += run(&state);
        let spec = NoiseSpec::new(seed, 0.3, 0.3).unwrap();
        noisy_total += run(&inject_noise(&spec, &state, 2, MulticlassFlip::Reject).unwrap());
    }
    assert!(noisy_total < clean_total, "corruption should hurt: {noisy_total} vs {clean_total}");
}
