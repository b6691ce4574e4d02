//! Reproducible Monte Carlo runner.
//!
//! Every trial draws its own RNG substream from `(seed, trial index)`,
//! so the set of sampled graphs depends only on the configuration.
//! Trials run in parallel, are collected in trial order, and are
//! reduced serially, which makes the estimate bit-identical across
//! thread counts and reruns.

use rayon::prelude::*;

use crate::graph::{self, ErGraphSample, SeedRecord};
use crate::werner::WernerState;
use crate::{Error, Result};

/// Per-network statistic estimated by the runner.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Estimator {
    /// Fraction of pairs at shortest-path distance exactly `path_len`.
    Sigma { path_len: u32 },
    /// Fraction of pairs admitting an SPP with the given geometry.
    EtaExists {
        path_len: u32,
        subpath_len: u32,
        alt_len: u32,
    },
    /// Average number of SPP configurations per pair (chosen-path count).
    EtaConfigs {
        path_len: u32,
        subpath_len: u32,
        alt_len: u32,
    },
    /// Mean best-single-purification concurrence gain per pair.
    NetworkGain { x: f64, l_max: u32 },
}

/// A complete, reproducible description of one estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct McConfig {
    pub n_trials: u64,
    pub seed: u64,
    pub n_nodes: usize,
    pub p: f64,
    pub estimator: Estimator,
}

/// Sample mean with its standard error, `stderr = s / sqrt(n_trials)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n_trials: u64,
}

impl DensityEstimate {
    /// Below this trial count the sample variance is too noisy for the
    /// standard error to mean much.
    pub const MIN_RELIABLE_TRIALS: u64 = 10;

    pub fn stderr_reliable(&self) -> bool {
        self.n_trials >= Self::MIN_RELIABLE_TRIALS
    }
}

fn validate(cfg: &McConfig) -> Result<()> {
    if cfg.n_trials < 1 {
        return Err(Error::Domain {
            name: "n_trials",
            value: cfg.n_trials as f64,
            constraint: "n_trials >= 1",
        });
    }
    if cfg.n_nodes < 2 {
        return Err(Error::Domain {
            name: "N",
            value: cfg.n_nodes as f64,
            constraint: "N >= 2",
        });
    }
    if !(0.0..=1.0).contains(&cfg.p) {
        return Err(Error::Domain {
            name: "p",
            value: cfg.p,
            constraint: "0 <= p <= 1",
        });
    }
    if let Estimator::NetworkGain { x, .. } = cfg.estimator {
        WernerState::new(x)?;
    }
    Ok(())
}

fn evaluate(estimator: &Estimator, g: &ErGraphSample) -> f64 {
    match *estimator {
        Estimator::Sigma { path_len } => graph::stat_sigma(g, path_len),
        Estimator::EtaExists {
            path_len,
            subpath_len,
            alt_len,
        } => graph::stat_eta_exists(g, path_len, subpath_len, alt_len),
        Estimator::EtaConfigs {
            path_len,
            subpath_len,
            alt_len,
        } => graph::stat_eta_configs(g, path_len, subpath_len, alt_len),
        Estimator::NetworkGain { x, l_max } => {
            graph::network_delta_concurrence(g, WernerState::from_valid(x), l_max)
        }
    }
}

/// Run the estimator over `n_trials` independent network samples.
/// Deterministic for a given configuration regardless of how many
/// worker threads execute the trials.
pub fn run(cfg: &McConfig) -> Result<DensityEstimate> {
    validate(cfg)?;
    let per_trial: Vec<f64> = (0..cfg.n_trials)
        .into_par_iter()
        .map(|trial| {
            let g = ErGraphSample::generate_seeded(
                cfg.n_nodes,
                cfg.p,
                SeedRecord {
                    seed: cfg.seed,
                    stream: trial,
                },
            );
            evaluate(&cfg.estimator, &g)
        })
        .collect();

    let n = per_trial.len() as f64;
    let mean = per_trial.iter().sum::<f64>() / n;
    let stderr = if per_trial.len() > 1 {
        let var = per_trial
            .iter()
            .map(|v| (v - mean) * (v - mean))
            .sum::<f64>()
            / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(DensityEstimate {
        mean,
        stderr,
        n_trials: cfg.n_trials,
    })
}

/// Run every configuration of a grid, preserving order. Failures are
/// recorded per point; the sweep continues past them.
pub fn sweep(grid: &[McConfig]) -> Vec<Result<DensityEstimate>> {
    grid.iter().map(run).collect()
}
