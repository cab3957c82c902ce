use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::sphere::{to_polar, Vec3};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KsResult {
    pub n: usize,
    pub statistic: f64,
    pub p_value: f64,
}

/// One-sample Kolmogorov–Smirnov test against `Uniform(lo, hi)`.
pub fn ks_uniform(samples: &[f64], lo: f64, hi: f64) -> KsResult {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    let nf = n as f64;
    let mut d: f64 = 0.0;
    for (i, x) in xs.iter().enumerate() {
        let f = ((x - lo) / (hi - lo)).clamp(0.0, 1.0);
        d = d.max((i + 1) as f64 / nf - f).max(f - i as f64 / nf);
    }
    let sn = nf.sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    KsResult {
        n,
        statistic: d,
        p_value: kolmogorov_q(lambda),
    }
}

/// Survival function of the Kolmogorov distribution.
pub fn kolmogorov_q(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    if lambda < 1.18 {
        // theta-function form converges fast for small λ
        let y = (-PI * PI / (8.0 * lambda * lambda)).exp();
        let p = (TAU.sqrt() / lambda) * (y + y.powi(9) + y.powi(25) + y.powi(49));
        (1.0 - p).clamp(0.0, 1.0)
    } else {
        let x = (-2.0 * lambda * lambda).exp();
        (2.0 * (x - x.powi(4) + x.powi(9) - x.powi(16))).clamp(0.0, 1.0)
    }
}

/// KS tests of a point set against the uniform distribution on the sphere,
/// through `cos θ ~ Uniform(-1, 1)` and `φ ~ Uniform(0, 2π)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityCheck {
    pub cos_theta: KsResult,
    pub phi: KsResult,
}

impl DensityCheck {
    pub fn passes(&self, alpha: f64) -> bool {
        self.cos_theta.p_value > alpha && self.phi.p_value > alpha
    }
}

pub fn uniformity(points: &[Vec3]) -> DensityCheck {
    let (cos, phi): (Vec<f64>, Vec<f64>) = points
        .iter()
        .map(|v| {
            let (_, ph) = to_polar(v);
            (v[2], ph)
        })
        .unzip();
    DensityCheck {
        cos_theta: ks_uniform(&cos, -1.0, 1.0),
        phi: ks_uniform(&phi, 0.0, TAU),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kolmogorov_reference_values() {
        // Q(1.36) ≈ 0.049, Q(1.63) ≈ 0.0098, Q(0.5) ≈ 0.964
        assert!((kolmogorov_q(1.358) - 0.05).abs() < 1e-3);
        assert!((kolmogorov_q(1.628) - 0.01).abs() < 5e-4);
        assert!((kolmogorov_q(0.5) - 0.9639).abs() < 1e-3);
        // both branches meet
        assert!((kolmogorov_q(1.18 - 1e-9) - kolmogorov_q(1.18 + 1e-9)).abs() < 1e-7);
    }

    #[test]
    fn evenly_spread_samples_pass() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let r = ks_uniform(&xs, 0.0, 1.0);
        assert!(r.statistic <= 0.0005 + 1e-12);
        assert!(r.p_value > 0.99);
    }

    #[test]
    fn clustered_samples_fail() {
        let pts: Vec<Vec3> = (0..2000)
            .map(|i| if i % 2 == 0 { [0.0, 0.0, 1.0] } else { [0.0, 0.0, -1.0] })
            .collect();
        let check = uniformity(&pts);
        assert!(!check.passes(1e-3));
    }
}
