use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::histogram::PairHistogram;
use crate::analytic::zone_average;
use crate::error::Result;
use crate::precision::DEFAULT_BITS;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinComparison {
    pub theta_lo: f64,
    pub theta_hi: f64,
    pub count: u64,
    pub g_hat: f64,
    pub stderr: f64,
    /// Analytic normalized density averaged over the bin's zone.
    pub g_analytic: f64,
    /// `None` for bins left out of the test: empty, or zero standard error.
    pub z: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub ell: usize,
    /// Degree of the analytic curve compared against.
    pub model_ell: usize,
    pub n_realizations: u64,
    pub failures: u64,
    pub bins: Vec<BinComparison>,
    pub chi_square: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Fraction of tested bins with `|z| <= 3`.
    pub coverage: f64,
    /// Fraction of mirrored bin pairs `(θ, π-θ)` agreeing within three
    /// combined standard errors.
    pub mirror_coverage: f64,
    pub excluded_bins: usize,
}

pub fn compare(hist: &PairHistogram) -> Result<ComparisonReport> {
    compare_against(hist, hist.ell, DEFAULT_BITS)
}

/// Compares `hist` with the analytic curve of degree `model_ell`.
pub fn compare_against(hist: &PairHistogram, model_ell: usize, bits: usize) -> Result<ComparisonReport> {
    let g_hat = hist.g_hat();
    let se = hist.stderr();
    let mut bins = Vec::with_capacity(hist.n_bins);
    for b in 0..hist.n_bins {
        let (lo, hi) = hist.bin_range(b);
        let g_analytic = zone_average(model_ell, lo, hi, bits)?;
        let tested = hist.counts[b] > 0 && se[b] > 0.0;
        let z = tested.then(|| {
            if se[b].is_infinite() {
                0.0
            } else {
                (g_hat[b] - g_analytic) / se[b]
            }
        });
        bins.push(BinComparison {
            theta_lo: lo,
            theta_hi: hi,
            count: hist.counts[b],
            g_hat: g_hat[b],
            stderr: se[b],
            g_analytic,
            z,
        });
    }
    let zs: Vec<f64> = bins.iter().filter_map(|b| b.z).collect();
    let dof = zs.len();
    let chi_square: f64 = zs.iter().map(|z| z * z).sum();
    let p_value = if dof == 0 {
        f64::NAN
    } else {
        ChiSquared::new(dof as f64)
            .expect("positive degrees of freedom")
            .sf(chi_square)
    };
    let coverage = if dof == 0 {
        f64::NAN
    } else {
        zs.iter().filter(|z| z.abs() <= 3.0).count() as f64 / dof as f64
    };
    let half = hist.n_bins / 2;
    let mut mirrored = 0usize;
    let mut agree = 0usize;
    for b in 0..half {
        let m = hist.n_bins - 1 - b;
        let diff = (g_hat[b] - g_hat[m]).abs();
        let scale = (se[b] * se[b] + se[m] * se[m]).sqrt();
        if !scale.is_finite() {
            continue;
        }
        mirrored += 1;
        if diff <= 3.0 * scale {
            agree += 1;
        }
    }
    Ok(ComparisonReport {
        ell: hist.ell,
        model_ell,
        n_realizations: hist.n_realizations,
        failures: hist.failures,
        excluded_bins: hist.n_bins - dof,
        bins,
        chi_square,
        dof,
        p_value,
        coverage,
        mirror_coverage: if mirrored == 0 {
            f64::NAN
        } else {
            agree as f64 / mirrored as f64
        },
    })
}
