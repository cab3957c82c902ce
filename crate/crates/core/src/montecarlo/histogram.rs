use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::majorana::MultipoleSet;
use crate::sphere::angle;

/// Ordered-pair counts of angular separations between signed multipole
/// points, in equal-θ bins over `[0, π]`.
///
/// Besides the total count per bin, the sum over realizations of the squared
/// per-realization count is kept, so standard errors reflect the scatter
/// between realizations. Both are integers, so merging is exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairHistogram {
    pub ell: usize,
    pub n_bins: usize,
    pub counts: Vec<u64>,
    pub sum_sq: Vec<u64>,
    pub n_realizations: u64,
    /// Realizations whose root pipeline failed; they contribute no counts.
    pub failures: u64,
}

impl PairHistogram {
    pub fn new(ell: usize, n_bins: usize) -> Self {
        PairHistogram {
            ell,
            n_bins,
            counts: vec![0; n_bins],
            sum_sq: vec![0; n_bins],
            n_realizations: 0,
            failures: 0,
        }
    }

    pub fn edges(&self) -> Vec<f64> {
        (0..=self.n_bins).map(|b| PI * b as f64 / self.n_bins as f64).collect()
    }

    pub fn bin_range(&self, b: usize) -> (f64, f64) {
        let w = PI / self.n_bins as f64;
        (w * b as f64, if b + 1 == self.n_bins { PI } else { w * (b + 1) as f64 })
    }

    pub fn bin_of(&self, theta: f64) -> usize {
        ((theta / PI * self.n_bins as f64) as usize).min(self.n_bins - 1)
    }

    /// Solid angle of the zone covered by bin `b`.
    pub fn solid_angle(&self, b: usize) -> f64 {
        let (lo, hi) = self.bin_range(b);
        2.0 * PI * (lo.cos() - hi.cos())
    }

    /// Converts a per-realization mean count into the normalized estimate.
    fn norm_factor(&self, b: usize) -> f64 {
        let two_l = 2.0 * self.ell as f64;
        4.0 * PI / (two_l * two_l * self.solid_angle(b))
    }

    /// Adds one realization.
    pub fn accumulate(&mut self, ms: &MultipoleSet) -> Result<()> {
        if ms.ell != self.ell {
            return Err(Error::DegreeMismatch {
                expected: self.ell,
                found: ms.ell,
            });
        }
        let mut local = vec![0u64; self.n_bins];
        for theta in pair_angles(ms) {
            local[self.bin_of(theta)] += 1;
        }
        for (b, c) in local.into_iter().enumerate() {
            self.counts[b] += c;
            self.sum_sq[b] += c * c;
        }
        self.n_realizations += 1;
        Ok(())
    }

    pub fn merge(&mut self, other: &PairHistogram) -> Result<()> {
        if other.ell != self.ell {
            return Err(Error::DegreeMismatch {
                expected: self.ell,
                found: other.ell,
            });
        }
        if other.n_bins != self.n_bins {
            return Err(Error::LengthMismatch {
                expected: self.n_bins,
                found: other.n_bins,
            });
        }
        for b in 0..self.n_bins {
            self.counts[b] += other.counts[b];
            self.sum_sq[b] += other.sum_sq[b];
        }
        self.n_realizations += other.n_realizations;
        self.failures += other.failures;
        Ok(())
    }

    pub fn total_count(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Normalized estimate `4π·count / (n·(2ℓ)²·ΔΩ)` per bin; 1 for
    /// uncorrelated points.
    pub fn g_hat(&self) -> Vec<f64> {
        let n = self.n_realizations as f64;
        (0..self.n_bins)
            .map(|b| self.norm_factor(b) * self.counts[b] as f64 / n)
            .collect()
    }

    /// Standard error of [`PairHistogram::g_hat`] from the between-realization
    /// variance of each bin's count. Infinite with fewer than two
    /// realizations.
    pub fn stderr(&self) -> Vec<f64> {
        let n = self.n_realizations;
        (0..self.n_bins)
            .map(|b| {
                if n < 2 {
                    return f64::INFINITY;
                }
                let nf = n as f64;
                let mean = self.counts[b] as f64 / nf;
                let ss = self.sum_sq[b] as f64 - nf * mean * mean;
                let var = (ss / (nf - 1.0)).max(0.0);
                self.norm_factor(b) * (var / nf).sqrt()
            })
            .collect()
    }
}

/// Separations of all ordered pairs of signed points `(i, j)`, skipping
/// `i = j` and each point's own antipode.
pub fn pair_angles(ms: &MultipoleSet) -> Vec<f64> {
    let pts = ms.signed_points();
    let n = pts.len();
    let mut out = Vec::with_capacity(n * n.saturating_sub(2));
    for i in 0..n {
        for j in 0..n {
            // indices 2a and 2a+1 are the two ends of one axis
            if i == j || i / 2 == j / 2 {
                continue;
            }
            out.push(angle(&pts[i], &pts[j]));
        }
    }
    out
}
