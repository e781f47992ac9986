//! Grid configuration: defaults, the flat key/list config-file grammar, and
//! the cell-count arithmetic.
//!
//! Grammar (one `key = value` per line, `#` comments):
//!
//! ```text
//! seeds           = 0..19                  # inclusive range, or a comma list
//! datasets        = g241c, digit1:n=1500:d=241:seed=0, csv:path=data/ext.csv
//! label_fractions = 0.10, 0.05, 0.025, 0.01
//! noise_rates     = 0, 0.05, 0.10, 0.20, 0.35
//! affinity        = mutual-knn:k=15:weights=constant
//! algorithms      = gfhf, lgc:alpha=0.1, lgc:alpha=0.9, gtam:mu=0.0101, le:p=0.2
//! scope           = unlabeled              # or: all
//! workers         = 0                      # 0 = one per core
//! ```
//!
//! List items carry their parameters as colon-separated `key=value` pairs so
//! commas stay reserved for separating items.

use std::path::PathBuf;

use gssl_core::algorithms::{AccuracyScope, PropagationMode};
use gssl_core::dataset::{self, LabeledDataset};

use crate::{Error, Result};

pub const DEFAULT_SEED_COUNT: u64 = 20;
pub const DEFAULT_LABEL_FRACTIONS: [f64; 4] = [0.10, 0.05, 0.025, 0.01];
pub const DEFAULT_NOISE_RATES: [f64; 5] = [0.0, 0.05, 0.10, 0.20, 0.35];
pub const DEFAULT_KNN: usize = 15;

/// One dataset coordinate of the grid.
#[derive(Debug, Clone, PartialEq)]
pub enum DatasetSpec {
    G241c { n: usize, d: usize, seed: u64 },
    G241n { n: usize, d: usize, seed: u64 },
    Digit1 { n: usize, d: usize, seed: u64 },
    Csv { path: PathBuf },
}

impl DatasetSpec {
    pub fn g241c() -> Self {
        DatasetSpec::G241c { n: dataset::DEFAULT_N, d: dataset::DEFAULT_D, seed: 0 }
    }

    pub fn g241n() -> Self {
        DatasetSpec::G241n { n: dataset::DEFAULT_N, d: dataset::DEFAULT_D, seed: 0 }
    }

    pub fn digit1() -> Self {
        DatasetSpec::Digit1 { n: dataset::DEFAULT_N, d: dataset::DEFAULT_D, seed: 0 }
    }

    /// Stable name used in records and reports.
    pub fn label(&self) -> String {
        match self {
            DatasetSpec::G241c { .. } => "g241c".into(),
            DatasetSpec::G241n { .. } => "g241n".into(),
            DatasetSpec::Digit1 { .. } => "digit1".into(),
            DatasetSpec::Csv { path } => path
                .file_stem()
                .map_or_else(|| "csv".to_string(), |s| s.to_string_lossy().into_owned()),
        }
    }

    pub fn materialize(&self) -> Result<LabeledDataset<f64>> {
        let ds = match *self {
            DatasetSpec::G241c { n, d, seed } => dataset::gen_g241c(seed, n, d)?,
            DatasetSpec::G241n { n, d, seed } => dataset::gen_g241n(seed, n, d)?,
            DatasetSpec::Digit1 { n, d, seed } => dataset::gen_digit1_like(seed, n, d)?,
            DatasetSpec::Csv { ref path } => dataset::load_csv(path)?,
        };
        Ok(ds)
    }
}

/// Edge-weight scheme of the affinity graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightScheme {
    Constant,
    Rbf { sigma: f64 },
}

/// Affinity-graph construction parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffinitySpec {
    pub k: usize,
    pub weights: WeightScheme,
}

impl Default for AffinitySpec {
    fn default() -> Self {
        AffinitySpec { k: DEFAULT_KNN, weights: WeightScheme::Constant }
    }
}

/// One classifier configuration of the grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlgorithmSpec {
    Gfhf { mode: PropagationMode },
    Lgc { alpha: f64, mode: PropagationMode },
    /// The eigenfunction budget is a fraction of the labeled count.
    Le { p_fraction: f64 },
    Gtam { mu: f64 },
}

impl AlgorithmSpec {
    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmSpec::Gfhf { .. } => "GFHF",
            AlgorithmSpec::Lgc { .. } => "LGC",
            AlgorithmSpec::Le { .. } => "LE",
            AlgorithmSpec::Gtam { .. } => "GTAM",
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match self {
            AlgorithmSpec::Lgc { alpha, .. } => Some(*alpha),
            _ => None,
        }
    }

    pub fn mu(&self) -> Option<f64> {
        match self {
            AlgorithmSpec::Gtam { mu } => Some(*mu),
            _ => None,
        }
    }

    pub fn p_fraction(&self) -> Option<f64> {
        match self {
            AlgorithmSpec::Le { p_fraction } => Some(*p_fraction),
            _ => None,
        }
    }
}

/// The full experiment grid: the cell count is the product of the list
/// lengths (the affinity spec counts as a single-entry factor).
#[derive(Debug, Clone, PartialEq)]
pub struct GridConfig {
    pub seeds: Vec<u64>,
    pub datasets: Vec<DatasetSpec>,
    pub label_fractions: Vec<f64>,
    pub noise_rates: Vec<f64>,
    pub affinity: AffinitySpec,
    pub algorithms: Vec<AlgorithmSpec>,
    pub scope: AccuracyScope,
    pub workers: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            seeds: (0..DEFAULT_SEED_COUNT).collect(),
            datasets: vec![DatasetSpec::g241c(), DatasetSpec::g241n(), DatasetSpec::digit1()],
            label_fractions: DEFAULT_LABEL_FRACTIONS.to_vec(),
            noise_rates: DEFAULT_NOISE_RATES.to_vec(),
            affinity: AffinitySpec::default(),
            algorithms: default_algorithms(),
            scope: AccuracyScope::Unlabeled,
            workers: 0,
        }
    }
}

/// The benchmark's standard classifier set.
pub fn default_algorithms() -> Vec<AlgorithmSpec> {
    vec![
        AlgorithmSpec::Gfhf { mode: PropagationMode::Closed },
        AlgorithmSpec::Lgc { alpha: 0.1, mode: PropagationMode::Closed },
        AlgorithmSpec::Lgc { alpha: 0.9, mode: PropagationMode::Closed },
        AlgorithmSpec::Lgc { alpha: 0.99, mode: PropagationMode::Closed },
        AlgorithmSpec::Gtam { mu: 0.0101 },
        AlgorithmSpec::Gtam { mu: 99.0 },
        AlgorithmSpec::Le { p_fraction: 0.2 },
    ]
}

impl GridConfig {
    /// Total number of grid cells: the product of all coordinate lists.
    pub fn cell_count(&self) -> usize {
        self.seeds.len()
            * self.datasets.len()
            * self.label_fractions.len()
            * self.noise_rates.len()
            * self.algorithms.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds.is_empty()
            || self.datasets.is_empty()
            || self.label_fractions.is_empty()
            || self.noise_rates.is_empty()
            || self.algorithms.is_empty()
        {
            return Err(Error::config("every grid coordinate list must be non-empty"));
        }
        for &f in &self.label_fractions {
            if !(f > 0.0 && f <= 1.0) {
                return Err(Error::config(format!("label fraction {f} outside (0, 1]")));
            }
        }
        for &r in &self.noise_rates {
            if !(0.0..1.0).contains(&r) {
                return Err(Error::config(format!("noise rate {r} outside [0, 1)")));
            }
        }
        if self.affinity.k < 1 {
            return Err(Error::config("affinity k must be at least 1"));
        }
        if let WeightScheme::Rbf { sigma } = self.affinity.weights {
            if sigma <= 0.0 {
                return Err(Error::config("rbf sigma must be positive"));
            }
        }
        for alg in &self.algorithms {
            match *alg {
                AlgorithmSpec::Lgc { alpha, .. } if !(alpha > 0.0 && alpha < 1.0) => {
                    return Err(Error::config(format!("lgc alpha {alpha} outside (0, 1)")));
                }
                AlgorithmSpec::Gtam { mu } if mu <= 0.0 => {
                    return Err(Error::config(format!("gtam mu {mu} must be positive")));
                }
                AlgorithmSpec::Le { p_fraction } if p_fraction <= 0.0 => {
                    return Err(Error::config(format!(
                        "le eigenfunction fraction {p_fraction} must be positive"
                    )));
                }
                _ => {}
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Config-file grammar
// ---------------------------------------------------------------------------

/// Parse config text, starting from the defaults and overriding listed keys.
pub fn parse_config(text: &str) -> Result<GridConfig> {
    let mut config = GridConfig::default();
    for (line_no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::config(format!("line {}: expected `key = value`", line_no + 1))
        })?;
        apply_key(&mut config, key.trim(), value.trim())
            .map_err(|e| Error::config(format!("line {}: {e}", line_no + 1)))?;
    }
    Ok(config)
}

/// Apply one `key = value` override; used by both the file parser and the
/// CLI flag overrides.
pub fn apply_key(config: &mut GridConfig, key: &str, value: &str) -> Result<()> {
    match key {
        "seeds" => config.seeds = parse_seeds(value)?,
        "datasets" => {
            config.datasets =
                split_list(value).map(parse_dataset).collect::<Result<Vec<_>>>()?;
        }
        "label_fractions" => config.label_fractions = parse_floats(value)?,
        "noise_rates" => config.noise_rates = parse_floats(value)?,
        "affinity" => config.affinity = parse_affinity(value)?,
        "algorithms" => {
            config.algorithms =
                split_list(value).map(parse_algorithm).collect::<Result<Vec<_>>>()?;
        }
        "scope" => {
            config.scope = match value {
                "unlabeled" => AccuracyScope::Unlabeled,
                "all" => AccuracyScope::All,
                other => return Err(Error::config(format!("unknown scope {other:?}"))),
            };
        }
        "workers" => {
            config.workers =
                value.parse().map_err(|_| Error::config(format!("bad worker count {value:?}")))?;
        }
        other => return Err(Error::config(format!("unknown key {other:?}"))),
    }
    Ok(())
}

fn split_list(value: &str) -> impl Iterator<Item = &str> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty())
}

/// Seeds accept either a comma list or an inclusive `a..b` range.
fn parse_seeds(value: &str) -> Result<Vec<u64>> {
    if let Some((a, b)) = value.split_once("..") {
        let lo: u64 =
            a.trim().parse().map_err(|_| Error::config(format!("bad range start {a:?}")))?;
        let hi: u64 =
            b.trim().parse().map_err(|_| Error::config(format!("bad range end {b:?}")))?;
        if hi < lo {
            return Err(Error::config(format!("empty seed range {value:?}")));
        }
        return Ok((lo..=hi).collect());
    }
    split_list(value)
        .map(|s| s.parse().map_err(|_| Error::config(format!("bad seed {s:?}"))))
        .collect()
}

fn parse_floats(value: &str) -> Result<Vec<f64>> {
    split_list(value)
        .map(|s| s.parse().map_err(|_| Error::config(format!("bad number {s:?}"))))
        .collect()
}

/// `name:key=value:key=value` item form shared by datasets, affinity and
/// algorithms.
fn parse_item(item: &str) -> Result<(&str, Vec<(&str, &str)>)> {
    let mut parts = item.split(':');
    let name = parts.next().unwrap_or("").trim();
    let mut params = Vec::new();
    for part in parts {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Error::config(format!("expected key=value in {part:?}")))?;
        params.push((k.trim(), v.trim()));
    }
    Ok((name, params))
}

fn param_usize(params: &[(&str, &str)], key: &str, default: usize) -> Result<usize> {
    param(params, key)
        .map_or(Ok(default), |v| v.parse().map_err(|_| Error::config(format!("bad {key} {v:?}"))))
}

fn param_u64(params: &[(&str, &str)], key: &str, default: u64) -> Result<u64> {
    param(params, key)
        .map_or(Ok(default), |v| v.parse().map_err(|_| Error::config(format!("bad {key} {v:?}"))))
}

fn param_f64(params: &[(&str, &str)], key: &str) -> Result<Option<f64>> {
    param(params, key)
        .map(|v| v.parse().map_err(|_| Error::config(format!("bad {key} {v:?}"))))
        .transpose()
}

fn param<'a>(params: &[(&'a str, &'a str)], key: &str) -> Option<&'a str> {
    params.iter().find(|(k, _)| *k == key).map(|(_, v)| *v)
}

fn parse_dataset(item: &str) -> Result<DatasetSpec> {
    let (name, params) = parse_item(item)?;
    let n = param_usize(&params, "n", dataset::DEFAULT_N)?;
    let d = param_usize(&params, "d", dataset::DEFAULT_D)?;
    let seed = param_u64(&params, "seed", 0)?;
    match name {
        "g241c" => Ok(DatasetSpec::G241c { n, d, seed }),
        "g241n" => Ok(DatasetSpec::G241n { n, d, seed }),
        "digit1" => Ok(DatasetSpec::Digit1 { n, d, seed }),
        "csv" => {
            let path = param(&params, "path")
                .ok_or_else(|| Error::config("csv dataset needs path=..."))?;
            Ok(DatasetSpec::Csv { path: PathBuf::from(path) })
        }
        other => Err(Error::config(format!("unknown dataset {other:?}"))),
    }
}

fn parse_affinity(item: &str) -> Result<AffinitySpec> {
    let (name, params) = parse_item(item)?;
    if name != "mutual-knn" {
        return Err(Error::config(format!("unknown affinity {name:?} (expected mutual-knn)")));
    }
    let k = param_usize(&params, "k", DEFAULT_KNN)?;
    let weights = match param(&params, "weights").unwrap_or("constant") {
        "constant" => WeightScheme::Constant,
        "rbf" => {
            let sigma = param_f64(&params, "sigma")?
                .ok_or_else(|| Error::config("rbf weights need sigma=..."))?;
            WeightScheme::Rbf { sigma }
        }
        other => return Err(Error::config(format!("unknown weight scheme {other:?}"))),
    };
    Ok(AffinitySpec { k, weights })
}

fn parse_mode(params: &[(&str, &str)]) -> Result<PropagationMode> {
    match param(params, "mode").unwrap_or("closed") {
        "closed" => Ok(PropagationMode::Closed),
        "iterative" => Ok(PropagationMode::Iterative),
        other => Err(Error::config(format!("unknown mode {other:?}"))),
    }
}

fn parse_algorithm(item: &str) -> Result<AlgorithmSpec> {
    let (name, params) = parse_item(item)?;
    match name {
        "gfhf" => Ok(AlgorithmSpec::Gfhf { mode: parse_mode(&params)? }),
        "lgc" => {
            let alpha = param_f64(&params, "alpha")?
                .ok_or_else(|| Error::config("lgc needs alpha=..."))?;
            Ok(AlgorithmSpec::Lgc { alpha, mode: parse_mode(&params)? })
        }
        "le" => {
            let p = param_f64(&params, "p")?.ok_or_else(|| Error::config("le needs p=..."))?;
            Ok(AlgorithmSpec::Le { p_fraction: p })
        }
        "gtam" => {
            let mu =
                param_f64(&params, "mu")?.ok_or_else(|| Error::config("gtam needs mu=..."))?;
            Ok(AlgorithmSpec::Gtam { mu })
        }
        other => Err(Error::config(format!("unknown algorithm {other:?}"))),
    }
}
