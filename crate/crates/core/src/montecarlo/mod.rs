//! Monte Carlo estimates of multipole statistics and their comparison with
//! the analytic correlation functions.
//!
//! Realization `i` of a run with seed `s` always draws from stream `(s, i)`
//! and histograms merge by exact integer addition, so results are identical
//! for any number of worker threads.

pub mod compare;
pub mod histogram;
pub mod uniformity;

pub use compare::{compare, compare_against, BinComparison, ComparisonReport};
pub use histogram::{pair_angles, PairHistogram};
pub use uniformity::{kolmogorov_q, ks_uniform, uniformity, DensityCheck, KsResult};

use rayon::prelude::*;

use crate::ensemble::sample_coefficients;
use crate::error::{Error, Result};
use crate::majorana::{multipoles_with, MultipoleSet, Tolerances};
use crate::rng::stream;
use crate::sphere::Vec3;
use crate::MAX_ELL;

/// Realizations handled per work unit.
const CHUNK: u64 = 256;

/// Runs are aborted when more than this fraction of realizations fail.
pub const MAX_FAILURE_RATE: f64 = 1e-3;

/// Multipoles of realization `index` of the run seeded with `seed`.
pub fn sample_multipoles(ell: usize, seed: u64, index: u64, tol: &Tolerances) -> Result<MultipoleSet> {
    let mut rng = stream(seed, index);
    let cv = sample_coefficients(ell, &mut rng)?;
    multipoles_with(&cv, tol)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EstimateConfig {
    pub ell: usize,
    pub n_realizations: u64,
    pub n_bins: usize,
    pub seed: u64,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
    pub tolerances: Tolerances,
}

impl EstimateConfig {
    pub fn new(ell: usize, n_realizations: u64, n_bins: usize, seed: u64) -> Self {
        EstimateConfig {
            ell,
            n_realizations,
            n_bins,
            seed,
            workers: None,
            tolerances: Tolerances::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.ell == 0 || self.ell > MAX_ELL {
            return Err(Error::InvalidDegree(self.ell));
        }
        if self.n_realizations == 0 {
            return Err(Error::Domain("at least one realization is required".into()));
        }
        if self.n_bins < 4 {
            return Err(Error::Domain(format!(
                "at least 4 bins are required, got {}",
                self.n_bins
            )));
        }
        if self.workers == Some(0) {
            return Err(Error::Domain("worker count must be positive".into()));
        }
        Ok(())
    }
}

fn in_pool<R: Send>(workers: Option<usize>, f: impl FnOnce() -> R + Send) -> Result<R> {
    match workers {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn chunks(n: u64) -> Vec<(u64, u64)> {
    (0..n.div_ceil(CHUNK))
        .map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(n)))
        .collect()
}

fn check_failures(failures: u64, attempted: u64) -> Result<()> {
    if failures as f64 > MAX_FAILURE_RATE * attempted as f64 {
        return Err(Error::FailureRate { failures, attempted });
    }
    Ok(())
}

pub fn estimate(ell: usize, n_realizations: u64, n_bins: usize, seed: u64) -> Result<PairHistogram> {
    estimate_with(&EstimateConfig::new(ell, n_realizations, n_bins, seed))
}

pub fn estimate_with(cfg: &EstimateConfig) -> Result<PairHistogram> {
    cfg.validate()?;
    let parts = in_pool(cfg.workers, || {
        chunks(cfg.n_realizations)
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut h = PairHistogram::new(cfg.ell, cfg.n_bins);
                for i in lo..hi {
                    match sample_multipoles(cfg.ell, cfg.seed, i, &cfg.tolerances) {
                        Ok(ms) => h.accumulate(&ms).expect("degree matches by construction"),
                        Err(_) => h.failures += 1,
                    }
                }
                h
            })
            .collect::<Vec<_>>()
    })?;
    let mut total = PairHistogram::new(cfg.ell, cfg.n_bins);
    for p in &parts {
        total.merge(p)?;
    }
    check_failures(total.failures, cfg.n_realizations)?;
    Ok(total)
}

/// KS uniformity of all `2ℓ·n` signed multipole points of a run.
pub fn density_check(ell: usize, n_realizations: u64, seed: u64) -> Result<DensityCheck> {
    density_check_with(&EstimateConfig::new(ell, n_realizations, 4, seed))
}

pub fn density_check_with(cfg: &EstimateConfig) -> Result<DensityCheck> {
    cfg.validate()?;
    let parts = in_pool(cfg.workers, || {
        chunks(cfg.n_realizations)
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut pts: Vec<Vec3> = Vec::with_capacity(((hi - lo) as usize) * 2 * cfg.ell);
                let mut failures = 0u64;
                for i in lo..hi {
                    match sample_multipoles(cfg.ell, cfg.seed, i, &cfg.tolerances) {
                        Ok(ms) => pts.extend(ms.signed_points()),
                        Err(_) => failures += 1,
                    }
                }
                (pts, failures)
            })
            .collect::<Vec<_>>()
    })?;
    let failures: u64 = parts.iter().map(|p| p.1).sum();
    check_failures(failures, cfg.n_realizations)?;
    let points: Vec<Vec3> = parts.into_iter().flat_map(|p| p.0).collect();
    Ok(uniformity(&points))
}
