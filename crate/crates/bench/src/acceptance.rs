//! The verification suite: every release-gating check, runnable both from
//! `gssl verify` and from the integration tests.
//!
//! Each criterion pins its tolerances here, in code. The trend criteria run
//! the full 20-seed benchmark configuration on the generated datasets.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;

use gssl_core::algorithms::{
    accuracy, gfhf, lgc, predict, weighted_label_matrix, AccuracyScope, HarmonicSystem,
    PropagationMode,
};
use gssl_core::graph::{
    knn_index, mutual_knn_graph, pairwise_sq_euclidean, rbf_weights, LaplacianVariant,
};
use gssl_core::labels::{one_hot, LabelState};
use gssl_core::noise::{inject_noise, sample_labeled, MulticlassFlip, NoiseSpec};
use gssl_core::{Graph64, Mat64};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{default_algorithms, AlgorithmSpec, DatasetSpec, GridConfig};
use crate::grid::{run_grid, PreparedDataset};
use crate::report::aggregate_csv_bytes;
use crate::stats::aggregate;
use crate::Result;

/// Outcome of one verification criterion.
#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} [{status}] {}: {}", self.id, self.name, self.detail)
    }
}

fn pass(id: usize, name: &'static str, detail: String) -> CriterionResult {
    CriterionResult { id, name, passed: true, detail }
}

fn fail(id: usize, name: &'static str, detail: String) -> CriterionResult {
    CriterionResult { id, name, passed: false, detail }
}

// ---------------------------------------------------------------------------
// Shared fixtures
// ---------------------------------------------------------------------------

/// Deterministic random mutual-kNN graph over Gaussian points, resampled
/// until connected. RBF weights keep the instance free of symmetry ties.
fn random_connected_graph(seed: u64, n: usize, k: usize, constant_weights: bool) -> Graph64 {
    let mut attempt = 0u64;
    loop {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(7919)));
        let x = Mat64::from_fn(n, 3, |_, _| rng.random_range(-1.0..1.0));
        let dist = pairwise_sq_euclidean(&x).expect("finite features");
        let graph = mutual_knn_graph(&knn_index(&dist, k).expect("valid k"));
        if graph.component_count() == 1 {
            if constant_weights {
                return graph;
            }
            return rbf_weights(&dist, &graph, 1.0).expect("positive sigma");
        }
        attempt += 1;
    }
}

/// Random binary label state covering both classes.
fn random_state(rng: &mut ChaCha8Rng, n: usize, labeled: usize) -> LabelState {
    loop {
        let mut observed = vec![None; n];
        let mut pool: Vec<usize> = (0..n).collect();
        for i in 0..labeled {
            let j = i + rng.random_range(0..n - i);
            pool.swap(i, j);
        }
        for &v in &pool[..labeled] {
            observed[v] = Some(rng.random_range(0..2));
        }
        let classes: Vec<usize> = observed.iter().flatten().copied().collect();
        if classes.contains(&0) && classes.contains(&1) {
            return LabelState::new(observed, vec![]).expect("labeled state");
        }
    }
}

/// Prepared default-configuration datasets shared by the trend criteria.
pub struct TrendContext {
    pub g241c: PreparedDataset,
    pub digit1: PreparedDataset,
}

/// Build both benchmark datasets with the default affinity and the default
/// algorithm set's shared factorizations.
pub fn trend_context() -> Result<TrendContext> {
    let config = GridConfig::default();
    let algorithms = default_algorithms();
    let g241c = PreparedDataset::prepare(
        &DatasetSpec::g241c(),
        &config.affinity,
        &algorithms,
        &config.label_fractions,
    )?;
    let digit1 = PreparedDataset::prepare(
        &DatasetSpec::digit1(),
        &config.affinity,
        &algorithms,
        &config.label_fractions,
    )?;
    Ok(TrendContext { g241c, digit1 })
}

/// Per-seed accuracies for a (dataset, algorithm set, fraction, rates)
/// sweep: `acc[alg][rate][seed]`.
fn sweep(
    prepared: &PreparedDataset,
    algorithms: &[AlgorithmSpec],
    seeds: &[u64],
    fraction: f64,
    rates: &[f64],
) -> Result<Vec<Vec<Vec<f64>>>> {
    let per_seed: Vec<Result<Vec<Vec<f64>>>> = seeds
        .par_iter()
        .map(|&seed| {
            let clean_spec = NoiseSpec { seed, label_fraction: fraction, noise_rate: 0.0 };
            let clean = sample_labeled(&clean_spec, &prepared.dataset)?;
            let wants_harmonic = algorithms
                .iter()
                .any(|a| matches!(a, AlgorithmSpec::Gfhf { mode: PropagationMode::Closed }));
            let harmonic =
                if wants_harmonic { Some(HarmonicSystem::new(&prepared.graph, &clean)?) } else { None };
            let mut per_alg = vec![Vec::with_capacity(rates.len()); algorithms.len()];
            for &rate in rates {
                let spec = NoiseSpec { seed, label_fraction: fraction, noise_rate: rate };
                let state =
                    inject_noise(&spec, &clean, prepared.classes(), MulticlassFlip::Reject)?;
                for (ai, alg) in algorithms.iter().enumerate() {
                    let scores = prepared.run_algorithm(alg, &state, harmonic.as_ref())?;
                    let pred = predict(&scores, &state, &prepared.graph, prepared.classes());
                    let acc = accuracy(
                        &pred,
                        &prepared.dataset.truth,
                        &state,
                        AccuracyScope::Unlabeled,
                    )?;
                    per_alg[ai].push(acc);
                }
            }
            Ok(per_alg)
        })
        .collect();

    let mut acc = vec![vec![vec![0.0; seeds.len()]; rates.len()]; algorithms.len()];
    for (si, seed_result) in per_seed.into_iter().enumerate() {
        let per_alg = seed_result?;
        for (ai, rates_vec) in per_alg.into_iter().enumerate() {
            for (ri, value) in rates_vec.into_iter().enumerate() {
                acc[ai][ri][si] = value;
            }
        }
    }
    Ok(acc)
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn sample_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    (values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (values.len() - 1) as f64).sqrt()
}

const TREND_SEEDS: u64 = 20;

fn trend_seeds() -> Vec<u64> {
    (0..TREND_SEEDS).collect()
}

// ---------------------------------------------------------------------------
// Criterion 1: closed-form vs iterative equivalence
// ---------------------------------------------------------------------------

pub fn criterion_closed_iterative_equivalence() -> CriterionResult {
    const ID: usize = 1;
    const NAME: &str = "closed/iterative equivalence";
    const TOL: f64 = 1e-6;
    let start = Instant::now();
    let mut worst = 0.0f64;

    for i in 0..25u64 {
        let n = 10 + (i as usize * 37) % 41; // 10..=50
        let k = if i % 2 == 0 { 3 } else { 5 };
        let graph = random_connected_graph(1000 + i, n, k, false);
        let mut rng = ChaCha8Rng::seed_from_u64(i);
        let state = random_state(&mut rng, n, 3 + (i as usize % 3));

        let closed = gfhf(&graph, &state, 2, PropagationMode::Closed, 1e-12, 10);
        let iterative = gfhf(&graph, &state, 2, PropagationMode::Iterative, 1e-12, 400_000);
        match (closed, iterative) {
            (Ok(c), Ok(it)) => worst = worst.max(c.scores.max_abs_diff(&it.scores)),
            (c, it) => {
                return fail(ID, NAME, format!("GFHF failed on instance {i}: {c:?} / {it:?}"));
            }
        }

        let alpha = [0.1, 0.5, 0.9][i as usize % 3];
        let closed = lgc(&graph, &state, 2, alpha, PropagationMode::Closed, 1e-12, 10);
        let iterative =
            lgc(&graph, &state, 2, alpha, PropagationMode::Iterative, 1e-12, 400_000);
        match (closed, iterative) {
            (Ok(c), Ok(it)) => worst = worst.max(c.scores.max_abs_diff(&it.scores)),
            (c, it) => {
                return fail(ID, NAME, format!("LGC failed on instance {i}: {c:?} / {it:?}"));
            }
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    let detail =
        format!("25 graphs, worst per-entry gap {worst:.2e} (tol {TOL:.0e}), {elapsed:.1}s");
    if worst <= TOL && elapsed < 10.0 {
        pass(ID, NAME, detail)
    } else {
        fail(ID, NAME, detail)
    }
}

// ---------------------------------------------------------------------------
// Criterion 2: exhaustive absorption-probability oracle
// ---------------------------------------------------------------------------

/// Independent oracle path: plain Gaussian elimination with partial
/// pivoting, used to solve the absorbing-random-walk system directly.
fn gauss_solve(a: &Mat64, b: &[f64]) -> Vec<f64> {
    let n = a.rows();
    let mut m = a.clone();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[(i, col)].abs().total_cmp(&m[(j, col)].abs()))
            .expect("nonempty");
        if piv != col {
            for k in 0..n {
                let tmp = m[(col, k)];
                m[(col, k)] = m[(piv, k)];
                m[(piv, k)] = tmp;
            }
            x.swap(col, piv);
        }
        for row in col + 1..n {
            let f = m[(row, col)] / m[(col, col)];
            for k in col..n {
                m[(row, k)] -= f * m[(col, k)];
            }
            x[row] -= f * x[col];
        }
    }
    for row in (0..n).rev() {
        for k in row + 1..n {
            x[row] -= m[(row, k)] * x[k];
        }
        x[row] /= m[(row, row)];
    }
    x
}

pub fn criterion_gfhf_absorption_oracle() -> CriterionResult {
    const ID: usize = 2;
    const NAME: &str = "exhaustive absorption oracle";
    const TOL: f64 = 1e-8;
    let mut graphs = 0usize;
    let mut worst = 0.0f64;

    for n in 2..=6usize {
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let edge_count = pairs.len();
        for mask in 0u32..(1 << edge_count) {
            let edges: Vec<(usize, usize, f64)> = pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &(i, j))| (i, j, 1.0))
                .collect();
            let graph = match Graph64::from_edges(n, &edges) {
                Ok(g) => g,
                Err(_) => continue,
            };
            if graph.component_count() != 1 {
                continue;
            }
            graphs += 1;

            // One label per class: vertex 0 and vertex n−1.
            let mut observed = vec![None; n];
            observed[0] = Some(0);
            observed[n - 1] = Some(1);
            let state = LabelState::new(observed, vec![]).expect("two labels");

            let scores = match gfhf(&graph, &state, 2, PropagationMode::Closed, 1e-10, 10) {
                Ok(s) => s,
                Err(e) => return fail(ID, NAME, format!("GFHF failed on n={n} mask={mask}: {e}")),
            };

            // Absorption oracle: solve (I − P_uu) X = P_ul column-wise.
            let unlabeled: Vec<usize> = (1..n - 1).collect();
            let u = unlabeled.len();
            if u == 0 {
                continue;
            }
            let p_dense = graph.operator(LaplacianVariant::RandomWalk).to_dense();
            let system = Mat64::from_fn(u, u, |a, b| {
                let id = if a == b { 1.0 } else { 0.0 };
                id - p_dense[(unlabeled[a], unlabeled[b])]
            });
            for (class, labeled_vertex) in [(0usize, 0usize), (1, n - 1)] {
                let rhs: Vec<f64> =
                    unlabeled.iter().map(|&v| p_dense[(v, labeled_vertex)]).collect();
                let absorb = gauss_solve(&system, &rhs);
                for (row, &v) in unlabeled.iter().enumerate() {
                    worst = worst.max((scores.scores[(v, class)] - absorb[row]).abs());
                }
            }
        }
    }

    let detail = format!("{graphs} connected graphs, worst gap {worst:.2e} (tol {TOL:.0e})");
    if worst <= TOL {
        pass(ID, NAME, detail)
    } else {
        fail(ID, NAME, detail)
    }
}

// ---------------------------------------------------------------------------
// Criterion 3: invariant suites
// ---------------------------------------------------------------------------

pub fn criterion_invariant_suites() -> CriterionResult {
    const ID: usize = 3;
    const NAME: &str = "invariant suites";
    const INSTANCES: u64 = 20;
    let mut failures: Vec<String> = Vec::new();

    for i in 0..INSTANCES {
        let n = 8 + (i as usize % 5);
        let graph = random_connected_graph(2000 + i, n, 3, false);
        let mut rng = ChaCha8Rng::seed_from_u64(500 + i);
        let state = random_state(&mut rng, n, 3);

        // Laplacian structure: rows of L sum to zero exactly, P rows to one,
        // and the quadratic form matches the edge sum (hence PSD).
        let l_op = graph.operator(LaplacianVariant::Unnormalized);
        let ones = vec![1.0; n];
        if l_op.matvec(&ones).iter().any(|&v| v != 0.0) {
            failures.push(format!("instance {i}: L row sums nonzero"));
        }
        let p_op = graph.operator(LaplacianVariant::RandomWalk);
        if p_op.matvec(&ones).iter().enumerate().any(|(v, &s)| !graph.is_isolated(v) && s != 1.0)
        {
            failures.push(format!("instance {i}: P row sums differ from one"));
        }
        for _ in 0..3 {
            let x: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let lx = l_op.matvec(&x);
            let quad: f64 = x.iter().zip(&lx).map(|(a, b)| a * b).sum();
            let edge_sum: f64 =
                graph.edges().map(|(a, b, w)| w * (x[a] - x[b]).powi(2)).sum();
            if (quad - edge_sum).abs() > 1e-10 || quad < -1e-10 {
                failures.push(format!("instance {i}: Laplacian quadratic form violated"));
            }
        }

        // GFHF maximum principle and harmonicity.
        let tol = 1e-10;
        match gfhf(&graph, &state, 2, PropagationMode::Closed, tol, 10) {
            Ok(f) => {
                for idx in 0..n {
                    for c in 0..2 {
                        let v = f.scores[(idx, c)];
                        if !(-1e-10..=1.0 + 1e-10).contains(&v) {
                            failures.push(format!("instance {i}: GFHF score {v} outside [0,1]"));
                        }
                    }
                    if !state.is_labeled(idx) {
                        for c in 0..2 {
                            let avg: f64 = graph
                                .neighbors(idx)
                                .iter()
                                .map(|&(j, w)| w * f.scores[(j, c)])
                                .sum::<f64>()
                                / graph.degree(idx);
                            if (f.scores[(idx, c)] - avg).abs() > 10.0 * tol {
                                failures.push(format!("instance {i}: GFHF harmonicity violated"));
                            }
                        }
                    }
                }
            }
            Err(e) => failures.push(format!("instance {i}: GFHF failed: {e}")),
        }

        // LGC fixed-point residual.
        let alpha = 0.8;
        match lgc(&graph, &state, 2, alpha, PropagationMode::Iterative, tol, 200_000) {
            Ok(f) => {
                let s_op = graph.operator(LaplacianVariant::SymmetricNormalized);
                let sf = s_op.apply_mat(&f.scores);
                let y = one_hot::<f64>(&state, 2);
                for idx in 0..n {
                    for c in 0..2 {
                        let resid =
                            f.scores[(idx, c)] - alpha * sf[(idx, c)] - (1.0 - alpha) * y[(idx, c)];
                        if resid.abs() > 10.0 * tol {
                            failures.push(format!("instance {i}: LGC fixed point violated"));
                        }
                    }
                }
            }
            Err(e) => failures.push(format!("instance {i}: LGC failed: {e}")),
        }

        // Degree-weighted label normalization: columns with labeled mass sum
        // to exactly one.
        let y = one_hot::<f64>(&state, 2);
        let weighted = weighted_label_matrix(&graph, &y);
        for c in 0..2 {
            let col_mass: f64 = (0..n).map(|v| graph.degree(v) * y[(v, c)]).sum();
            if col_mass > 0.0 {
                let sum: f64 = (0..n).map(|v| weighted[(v, c)]).sum();
                if (sum - 1.0).abs() > 1e-12 {
                    failures.push(format!("instance {i}: weighted label column sums to {sum}"));
                }
            }
        }

        // GTAM objective monotonicity along the greedy path.
        match gssl_core::algorithms::gtam(&graph, &state, 2, 0.5, usize::MAX) {
            Ok(result) => {
                for w in result.objective_trace.windows(2) {
                    if w[1] > w[0] + 1e-9 {
                        failures
                            .push(format!("instance {i}: GTAM objective rose {} -> {}", w[0], w[1]));
                    }
                }
            }
            Err(e) => failures.push(format!("instance {i}: GTAM failed: {e}")),
        }

        // Permutation and class-swap equivariance of all four classifiers.
        if let Err(msg) = check_equivariance(&graph, &state, 3000 + i) {
            failures.push(format!("instance {i}: {msg}"));
        }
    }

    if failures.is_empty() {
        pass(ID, NAME, format!("7 invariant families over {INSTANCES} instances"))
    } else {
        failures.truncate(5);
        fail(ID, NAME, failures.join("; "))
    }
}

fn run_all_four(
    graph: &Graph64,
    state: &LabelState,
) -> gssl_core::Result<Vec<Vec<usize>>> {
    let mut preds = Vec::new();
    let f = gfhf(graph, state, 2, PropagationMode::Closed, 1e-10, 10)?;
    preds.push(predict(&f, state, graph, 2));
    let f = lgc(graph, state, 2, 0.9, PropagationMode::Closed, 1e-10, 10)?;
    preds.push(predict(&f, state, graph, 2));
    let p = 2.min(graph.vertex_count() - graph.component_count());
    let f = gssl_core::algorithms::laplacian_eigenmaps(graph, state, 2, p)?;
    preds.push(predict(&f, state, graph, 2));
    let r = gssl_core::algorithms::gtam(graph, state, 2, 0.5, usize::MAX)?;
    preds.push(predict(&r.scores, state, graph, 2));
    Ok(preds)
}

fn check_equivariance(graph: &Graph64, state: &LabelState, seed: u64) -> std::result::Result<(), String> {
    let n = graph.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Random permutation of vertex ids.
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        perm.swap(i, j);
    }
    let edges: Vec<(usize, usize, f64)> =
        graph.edges().map(|(i, j, w)| (perm[i], perm[j], w)).collect();
    let permuted_graph = Graph64::from_edges(n, &edges).map_err(|e| e.to_string())?;
    let mut observed = vec![None; n];
    for i in 0..n {
        observed[perm[i]] = state.observed(i);
    }
    let permuted_state = LabelState::new(observed, vec![]).map_err(|e| e.to_string())?;

    let base = run_all_four(graph, state).map_err(|e| e.to_string())?;
    let permuted = run_all_four(&permuted_graph, &permuted_state).map_err(|e| e.to_string())?;
    for (alg, (b, p)) in base.iter().zip(&permuted).enumerate() {
        for i in 0..n {
            if p[perm[i]] != b[i] {
                return Err(format!("algorithm {alg} not permutation-equivariant"));
            }
        }
    }

    // Class swap: flipping the two observed classes flips the predictions.
    let swapped_state = LabelState::new(
        (0..n).map(|i| state.observed(i).map(|c| 1 - c)).collect(),
        vec![],
    )
    .map_err(|e| e.to_string())?;
    let swapped = run_all_four(graph, &swapped_state).map_err(|e| e.to_string())?;
    for (alg, (b, s)) in base.iter().zip(&swapped).enumerate() {
        for i in 0..n {
            if s[i] != 1 - b[i] {
                return Err(format!("algorithm {alg} not class-swap-equivariant"));
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Criteria 4-7: benchmark trends on the generated datasets
// ---------------------------------------------------------------------------

pub fn criterion_cluster_trends(ctx: &TrendContext) -> CriterionResult {
    const ID: usize = 4;
    const NAME: &str = "cluster-data trends";
    let start = Instant::now();
    let seeds = trend_seeds();
    let algorithms = [
        AlgorithmSpec::Gfhf { mode: PropagationMode::Closed },
        AlgorithmSpec::Le { p_fraction: 0.2 },
    ];

    let at = |fraction: f64| sweep(&ctx.g241c, &algorithms, &seeds, fraction, &[0.0]);
    let (ten, one) = match (at(0.10), at(0.01)) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => return fail(ID, NAME, format!("sweep failed: {a:?} / {b:?}")),
    };
    let gfhf10 = mean(&ten[0][0]);
    let le10 = mean(&ten[1][0]);
    let gfhf1 = mean(&one[0][0]);
    let le1 = mean(&one[1][0]);
    let elapsed = start.elapsed().as_secs_f64();

    let stable = (le1 - le10).abs() <= 0.05;
    let drop = gfhf10 - gfhf1 >= 0.10;
    let gap = le1 - gfhf1 >= 0.05;
    let detail = format!(
        "GFHF {gfhf10:.3}->{gfhf1:.3}, LE {le10:.3}->{le1:.3}; \
         stability |{:.3}| <= 0.05: {stable}, GFHF drop {:.3} >= 0.10: {drop}, \
         LE-GFHF gap {:.3} >= 0.05: {gap} ({elapsed:.0}s)",
        le1 - le10,
        gfhf10 - gfhf1,
        le1 - gfhf1
    );
    if stable && drop && gap && elapsed < 1200.0 {
        pass(ID, NAME, detail)
    } else {
        fail(ID, NAME, detail)
    }
}

pub fn criterion_noise_monotonicity(ctx: &TrendContext) -> CriterionResult {
    const ID: usize = 5;
    const NAME: &str = "noise monotonicity";
    const SLACK: f64 = 0.02;
    let seeds = trend_seeds();
    let rates = [0.0, 0.05, 0.10, 0.20, 0.35];
    let algorithms = default_algorithms();
    let mut failures = Vec::new();
    let mut checked = 0usize;

    for prepared in [&ctx.g241c, &ctx.digit1] {
        let acc = match sweep(prepared, &algorithms, &seeds, 0.10, &rates) {
            Ok(a) => a,
            Err(e) => return fail(ID, NAME, format!("sweep failed on {}: {e}", prepared.name)),
        };
        for (ai, alg) in algorithms.iter().enumerate() {
            let means: Vec<f64> = (0..rates.len()).map(|ri| mean(&acc[ai][ri])).collect();
            checked += 1;
            for (step, w) in means.windows(2).enumerate() {
                if w[1] > w[0] + SLACK {
                    failures.push(format!(
                        "{} {} rose {:.3}->{:.3} at step {step}",
                        prepared.name,
                        alg.name(),
                        w[0],
                        w[1]
                    ));
                }
            }
        }
    }

    if failures.is_empty() {
        pass(ID, NAME, format!("{checked} algorithm curves non-increasing within {SLACK}"))
    } else {
        fail(ID, NAME, failures.join("; "))
    }
}

pub fn criterion_fit_importance(ctx: &TrendContext) -> CriterionResult {
    const ID: usize = 6;
    const NAME: &str = "fit-importance effect";
    let seeds = trend_seeds();
    let algorithms = [
        AlgorithmSpec::Lgc { alpha: 0.1, mode: PropagationMode::Closed },
        AlgorithmSpec::Lgc { alpha: 0.9, mode: PropagationMode::Closed },
    ];
    let acc = match sweep(&ctx.digit1, &algorithms, &seeds, 0.10, &[0.0, 0.20]) {
        Ok(a) => a,
        Err(e) => return fail(ID, NAME, format!("sweep failed: {e}")),
    };
    let drop_low = mean(&acc[0][0]) - mean(&acc[0][1]);
    let drop_high = mean(&acc[1][0]) - mean(&acc[1][1]);
    let spread = (drop_low - drop_high).abs();
    // The direction is recorded, not asserted: surrogate geometry may invert
    // which smoothing level suffers more.
    let direction = if drop_low > drop_high {
        "low-alpha degrades more"
    } else {
        "high-alpha degrades more"
    };
    let detail = format!(
        "0%->20% noise drops: alpha=0.1 {drop_low:.3}, alpha=0.9 {drop_high:.3}; \
         spread {spread:.3} >= 0.03, {direction}"
    );
    if spread >= 0.03 {
        pass(ID, NAME, detail)
    } else {
        fail(ID, NAME, detail)
    }
}

pub fn criterion_gtam_variance(ctx: &TrendContext) -> CriterionResult {
    const ID: usize = 7;
    const NAME: &str = "greedy-transduction variance signature";
    let seeds = trend_seeds();
    let algorithms = [
        AlgorithmSpec::Gfhf { mode: PropagationMode::Closed },
        AlgorithmSpec::Gtam { mu: 0.0101 },
    ];
    let acc = match sweep(&ctx.digit1, &algorithms, &seeds, 0.01, &[0.35]) {
        Ok(a) => a,
        Err(e) => return fail(ID, NAME, format!("sweep failed: {e}")),
    };
    let gfhf_std = sample_std(&acc[0][0]);
    let gtam_std = sample_std(&acc[1][0]);
    let detail = format!(
        "across-seed std at 1% labeled, 35% noise: GTAM {gtam_std:.4} vs GFHF {gfhf_std:.4}"
    );
    if gtam_std > gfhf_std {
        pass(ID, NAME, detail)
    } else {
        fail(ID, NAME, detail)
    }
}

// ---------------------------------------------------------------------------
// Criterion 8: end-to-end determinism
// ---------------------------------------------------------------------------

pub fn criterion_determinism() -> CriterionResult {
    const ID: usize = 8;
    const NAME: &str = "byte-identical reports";
    let mut config = GridConfig::default();
    config.datasets = vec![DatasetSpec::g241c()];

    let run_once = || -> Result<Vec<u8>> {
        let records = run_grid(&config)?;
        let rows = aggregate(&records)?;
        aggregate_csv_bytes(&rows)
    };
    let first = match run_once() {
        Ok(b) => b,
        Err(e) => return fail(ID, NAME, format!("first run failed: {e}")),
    };
    let second = match run_once() {
        Ok(b) => b,
        Err(e) => return fail(ID, NAME, format!("second run failed: {e}")),
    };
    if first == second {
        pass(ID, NAME, format!("two full default-grid runs, {} report bytes identical", first.len()))
    } else {
        fail(ID, NAME, "report bytes differ between runs".to_string())
    }
}

// ---------------------------------------------------------------------------
// Criterion 9: configuration-product arithmetic
// ---------------------------------------------------------------------------

pub fn criterion_cell_count_arithmetic() -> CriterionResult {
    const ID: usize = 9;
    const NAME: &str = "grid cell-count arithmetic";
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for trial in 0..5 {
        let seeds: Vec<u64> = (0..rng.random_range(1..=25)).collect();
        let fractions: Vec<f64> =
            (0..rng.random_range(1..=4)).map(|i| 0.05 + 0.05 * i as f64).collect();
        let rates: Vec<f64> = (0..rng.random_range(1..=5)).map(|i| 0.05 * i as f64).collect();
        let n_datasets = rng.random_range(1..=3);
        let n_algorithms = rng.random_range(1..=7);
        let mut config = GridConfig::default();
        config.seeds = seeds;
        config.datasets = (0..n_datasets).map(|_| DatasetSpec::g241c()).collect();
        config.label_fractions = fractions;
        config.noise_rates = rates;
        config.algorithms = default_algorithms().into_iter().take(n_algorithms).collect();
        let expected = config.seeds.len()
            * config.datasets.len()
            * config.label_fractions.len()
            * config.noise_rates.len()
            * config.algorithms.len();
        if config.cell_count() != expected {
            return fail(
                ID,
                NAME,
                format!("trial {trial}: cell count {} != product {expected}", config.cell_count()),
            );
        }
    }
    pass(ID, NAME, "5 random configurations match the coordinate product".into())
}

// ---------------------------------------------------------------------------
// Suite driver
// ---------------------------------------------------------------------------

/// Run the verification suite. `full` includes the long benchmark-trend and
/// determinism criteria; the quick set covers the structural ones.
pub fn run_suite(full: bool) -> Result<Vec<CriterionResult>> {
    let mut results = vec![
        criterion_closed_iterative_equivalence(),
        criterion_gfhf_absorption_oracle(),
        criterion_invariant_suites(),
    ];
    if full {
        let ctx = trend_context()?;
        results.push(criterion_cluster_trends(&ctx));
        results.push(criterion_noise_monotonicity(&ctx));
        results.push(criterion_fit_importance(&ctx));
        results.push(criterion_gtam_variance(&ctx));
        results.push(criterion_determinism());
    }
    results.push(criterion_cell_count_arithmetic());
    Ok(results)
}
