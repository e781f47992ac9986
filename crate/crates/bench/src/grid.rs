//! The grid runner: per-dataset preparation (graph, shared factorizations)
//! and the parallel sweep over (seed, fraction, rate, algorithm) cells.

use std::time::Instant;

use rayon::prelude::*;

use gssl_core::algorithms::{
    accuracy, predict, GtamOperator, HarmonicSystem, LgcSolver, PropagationMode, ScoreMatrix,
    SpectralBasis, DEFAULT_MAX_ITER, DEFAULT_TOL,
};
use gssl_core::graph::{knn_index, mutual_knn_graph, pairwise_sq_euclidean, rbf_weights};
use gssl_core::labels::LabelState;
use gssl_core::noise::{inject_noise, sample_labeled, MulticlassFlip, NoiseSpec};
use gssl_core::{Dataset64, Graph64};

use crate::config::{AffinitySpec, AlgorithmSpec, DatasetSpec, GridConfig, WeightScheme};
use crate::{Error, Result};

/// One grid cell's outcome. Failed cells carry an error message instead of
/// an accuracy and never abort the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub dataset: String,
    pub algorithm: String,
    pub alpha: Option<f64>,
    pub mu: Option<f64>,
    pub p: Option<f64>,
    pub seed: u64,
    pub label_fraction: f64,
    pub noise_rate: f64,
    pub accuracy: Option<f64>,
    pub error: Option<String>,
    pub wall_time_s: f64,
    pub iterations: Option<usize>,
    pub isolated: usize,
}

/// A dataset materialized once per grid with its graph and every
/// factorization the configured algorithms can share across cells.
pub struct PreparedDataset {
    pub name: String,
    pub dataset: Dataset64,
    pub graph: Graph64,
    pub isolated: usize,
    basis: Option<SpectralBasis<f64>>,
    lgc: Vec<(f64, LgcSolver<f64>)>,
    gtam: Vec<(f64, GtamOperator<f64>)>,
}

impl PreparedDataset {
    /// Build the graph once and precompute per-(graph, hyperparameter)
    /// operators for the algorithm set.
    pub fn prepare(
        spec: &DatasetSpec,
        affinity: &AffinitySpec,
        algorithms: &[AlgorithmSpec],
        label_fractions: &[f64],
    ) -> Result<Self> {
        let dataset = spec.materialize()?;
        let graph = build_graph(&dataset, affinity)?;
        let isolated = graph.isolated_vertices().len();
        let n = dataset.instance_count();

        // Largest eigenfunction budget any (fraction, LE config) cell needs.
        let mut p_max = 0usize;
        for alg in algorithms {
            if let AlgorithmSpec::Le { p_fraction } = *alg {
                for &frac in label_fractions {
                    let labeled = (frac * n as f64).round().max(1.0) as usize;
                    p_max = p_max.max(le_basis_size(p_fraction, labeled));
                }
            }
        }
        let nontrivial = n.saturating_sub(graph.component_count());
        let basis = if p_max > 0 {
            Some(SpectralBasis::new(&graph, p_max.min(nontrivial).max(1))?)
        } else {
            None
        };

        let mut lgc = Vec::new();
        let mut gtam = Vec::new();
        for alg in algorithms {
            match *alg {
                AlgorithmSpec::Lgc { alpha, mode: PropagationMode::Closed }
                    if !lgc.iter().any(|(a, _)| *a == alpha) =>
                {
                    lgc.push((alpha, LgcSolver::new(&graph, alpha)?));
                }
                AlgorithmSpec::Gtam { mu } if !gtam.iter().any(|(m, _)| *m == mu) => {
                    gtam.push((mu, GtamOperator::new(&graph, mu)?));
                }
                _ => {}
            }
        }

        Ok(PreparedDataset {
            name: spec.label(),
            dataset,
            graph,
            isolated,
            basis,
            lgc,
            gtam,
        })
    }

    pub fn classes(&self) -> usize {
        self.dataset.class_count
    }

    fn lgc_solver(&self, alpha: f64) -> Option<&LgcSolver<f64>> {
        self.lgc.iter().find(|(a, _)| *a == alpha).map(|(_, s)| s)
    }

    fn gtam_operator(&self, mu: f64) -> Option<&GtamOperator<f64>> {
        self.gtam.iter().find(|(m, _)| *m == mu).map(|(_, op)| op)
    }

    /// Run one algorithm on one corrupted label state.
    pub fn run_algorithm(
        &self,
        alg: &AlgorithmSpec,
        state: &LabelState,
        harmonic: Option<&HarmonicSystem<f64>>,
    ) -> gssl_core::Result<ScoreMatrix<f64>> {
        let classes = self.classes();
        match *alg {
            AlgorithmSpec::Gfhf { mode: PropagationMode::Closed } => match harmonic {
                Some(system) => system.solve(&self.graph, state, classes),
                None => gssl_core::algorithms::gfhf(
                    &self.graph,
                    state,
                    classes,
                    PropagationMode::Closed,
                    DEFAULT_TOL,
                    DEFAULT_MAX_ITER,
                ),
            },
            AlgorithmSpec::Gfhf { mode } => gssl_core::algorithms::gfhf(
                &self.graph,
                state,
                classes,
                mode,
                DEFAULT_TOL,
                DEFAULT_MAX_ITER,
            ),
            AlgorithmSpec::Lgc { alpha, mode: PropagationMode::Closed } => {
                match self.lgc_solver(alpha) {
                    Some(solver) => solver.solve(state, classes),
                    None => LgcSolver::new(&self.graph, alpha)?.solve(state, classes),
                }
            }
            AlgorithmSpec::Lgc { alpha, mode } => gssl_core::algorithms::lgc(
                &self.graph,
                state,
                classes,
                alpha,
                mode,
                DEFAULT_TOL,
                DEFAULT_MAX_ITER,
            ),
            AlgorithmSpec::Le { p_fraction } => {
                let p = le_basis_size(p_fraction, state.labeled_count());
                match &self.basis {
                    Some(basis) => basis.fit(&self.graph, state, classes, p),
                    None => gssl_core::algorithms::laplacian_eigenmaps(
                        &self.graph,
                        state,
                        classes,
                        p,
                    ),
                }
            }
            AlgorithmSpec::Gtam { mu } => {
                let result = match self.gtam_operator(mu) {
                    Some(op) => op.run(&self.graph, state, classes, usize::MAX)?,
                    None => gssl_core::algorithms::gtam(
                        &self.graph,
                        state,
                        classes,
                        mu,
                        usize::MAX,
                    )?,
                };
                Ok(result.scores)
            }
        }
    }
}

/// Eigenfunction budget for one LE cell: a fraction of the labeled count,
/// rounded, at least one.
pub fn le_basis_size(p_fraction: f64, labeled: usize) -> usize {
    ((p_fraction * labeled as f64).round() as usize).max(1)
}

fn build_graph(dataset: &Dataset64, affinity: &AffinitySpec) -> Result<Graph64> {
    let dist = pairwise_sq_euclidean(&dataset.features)?;
    let n = dataset.instance_count();
    if affinity.k > n - 1 {
        return Err(Error::config(format!(
            "affinity k = {} too large for {n} instances",
            affinity.k
        )));
    }
    let index = knn_index(&dist, affinity.k)?;
    let graph = mutual_knn_graph(&index);
    Ok(match affinity.weights {
        WeightScheme::Constant => graph,
        WeightScheme::Rbf { sigma } => rbf_weights(&dist, &graph, sigma)?,
    })
}

/// Execute every cell of the grid. Graphs and factorizations are built once
/// per dataset; records come back in canonical order so the output is
/// independent of scheduling.
pub fn run_grid(config: &GridConfig) -> Result<Vec<ExperimentRecord>> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::config(format!("could not build worker pool: {e}")))?;

    let mut records = Vec::with_capacity(config.cell_count());
    for spec in &config.datasets {
        let prepared =
            PreparedDataset::prepare(spec, &config.affinity, &config.algorithms, &config.label_fractions)?;

        // One work unit per (seed, fraction): the labeled mask is shared
        // across noise rates and algorithms.
        let units: Vec<(u64, f64)> = config
            .seeds
            .iter()
            .flat_map(|&s| config.label_fractions.iter().map(move |&f| (s, f)))
            .collect();

        let unit_records: Vec<Vec<ExperimentRecord>> = pool.install(|| {
            units
                .par_iter()
                .map(|&(seed, fraction)| run_unit(&prepared, config, seed, fraction))
                .collect()
        });
        records.extend(unit_records.into_iter().flatten());
    }

    records.sort_by(compare_records);
    Ok(records)
}

/// Canonical record order: every coordinate except seed first, seed last.
pub fn compare_records(a: &ExperimentRecord, b: &ExperimentRecord) -> std::cmp::Ordering {
    a.dataset
        .cmp(&b.dataset)
        .then_with(|| a.algorithm.cmp(&b.algorithm))
        .then_with(|| cmp_opt(a.alpha, b.alpha))
        .then_with(|| cmp_opt(a.mu, b.mu))
        .then_with(|| cmp_opt(a.p, b.p))
        .then_with(|| a.label_fraction.total_cmp(&b.label_fraction))
        .then_with(|| a.noise_rate.total_cmp(&b.noise_rate))
        .then_with(|| a.seed.cmp(&b.seed))
}

fn cmp_opt(a: Option<f64>, b: Option<f64>) -> std::cmp::Ordering {
    match (a, b) {
        (None, None) => std::cmp::Ordering::Equal,
        (None, Some(_)) => std::cmp::Ordering::Less,
        (Some(_), None) => std::cmp::Ordering::Greater,
        (Some(x), Some(y)) => x.total_cmp(&y),
    }
}

fn run_unit(
    prepared: &PreparedDataset,
    config: &GridConfig,
    seed: u64,
    fraction: f64,
) -> Vec<ExperimentRecord> {
    let mut out = Vec::with_capacity(config.noise_rates.len() * config.algorithms.len());
    let blank = |alg: &AlgorithmSpec, rate: f64| ExperimentRecord {
        dataset: prepared.name.clone(),
        algorithm: alg.name().to_string(),
        alpha: alg.alpha(),
        mu: alg.mu(),
        p: alg.p_fraction(),
        seed,
        label_fraction: fraction,
        noise_rate: rate,
        accuracy: None,
        error: None,
        wall_time_s: 0.0,
        iterations: None,
        isolated: prepared.isolated,
    };

    let clean_spec = NoiseSpec { seed, label_fraction: fraction, noise_rate: 0.0 };
    let clean = match sample_labeled(&clean_spec, &prepared.dataset) {
        Ok(state) => state,
        Err(e) => {
            for &rate in &config.noise_rates {
                for alg in &config.algorithms {
                    let mut record = blank(alg, rate);
                    record.error = Some(format!("label sampling failed: {e}"));
                    out.push(record);
                }
            }
            return out;
        }
    };

    // The grounded harmonic factorization depends only on the labeled mask,
    // so it is shared across the noise sweep.
    let wants_harmonic = config
        .algorithms
        .iter()
        .any(|alg| matches!(alg, AlgorithmSpec::Gfhf { mode: PropagationMode::Closed }));
    let harmonic = if wants_harmonic {
        match HarmonicSystem::new(&prepared.graph, &clean) {
            Ok(system) => Some(system),
            Err(_) => None, // fall back to the per-cell path, which reports the error
        }
    } else {
        None
    };

    for &rate in &config.noise_rates {
        let spec = NoiseSpec { seed, label_fraction: fraction, noise_rate: rate };
        let state = match inject_noise(&spec, &clean, prepared.classes(), MulticlassFlip::Reject)
        {
            Ok(state) => state,
            Err(e) => {
                for alg in &config.algorithms {
                    let mut record = blank(alg, rate);
                    record.error = Some(format!("noise injection failed: {e}"));
                    out.push(record);
                }
                continue;
            }
        };
        for alg in &config.algorithms {
            let mut record = blank(alg, rate);
            let start = Instant::now();
            match prepared.run_algorithm(alg, &state, harmonic.as_ref()) {
                Ok(scores) => {
                    let pred = predict(&scores, &state, &prepared.graph, prepared.classes());
                    match accuracy(&pred, &prepared.dataset.truth, &state, config.scope) {
                        Ok(acc) => {
                            record.accuracy = Some(acc);
                            record.iterations = scores.iterations;
                        }
                        Err(e) => record.error = Some(e.to_string()),
                    }
                }
                Err(e) => record.error = Some(e.to_string()),
            }
            record.wall_time_s = start.elapsed().as_secs_f64();
            out.push(record);
        }
    }
    out
}

