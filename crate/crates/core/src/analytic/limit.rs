//! Large-degree limit of the normalized two-point function and integral
//! checks of the finite-degree curves.

use std::f64::consts::PI;

use super::explicit::rho_sphere_with;
use crate::error::{Error, Result};
use crate::precision::DEFAULT_BITS;
use crate::quadrature::{gauss_legendre, integrate_adaptive, integrate_gl};

/// Below this `x = R²` the closed form of [`hannay_g`] is replaced by its
/// Taylor series.
pub const SERIES_BELOW: f64 = 0.5;

/// Taylor coefficients of `g` in odd powers of `x`, from `x` to `x²⁹`.
const SERIES: [f64; 15] = [
    1.0,
    -2.0 / 9.0,
    2.0 / 45.0,
    -4.0 / 525.0,
    2.0 / 1701.0,
    -2764.0 / 16372125.0,
    4.0 / 173745.0,
    -28936.0 / 9577693125.0,
    87734.0 / 227949096375.0,
    -698444.0 / 14584090145625.0,
    310732.0 / 53153584745625.0,
    -1890912728.0 / 2692260959516753625.0,
    2631724.0 / 31608210757921875.0,
    -27142241176.0 / 2781545123990523515625.0,
    13785346041608.0 / 12173932913266844460365625.0,
];

/// Universal limit `g(R)` of the normalized pair correlation, with
/// `x = R²`: `((sinh²x + x²) cosh x - 2x sinh x) / sinh³x`.
pub fn hannay_g(r: f64) -> f64 {
    let x = r * r;
    if x < SERIES_BELOW {
        let x2 = x * x;
        return x * SERIES.iter().rev().fold(0.0, |acc, c| acc * x2 + c);
    }
    // with t = e^{-2x}: coth x + 4x² t(1+t)/(1-t)³ - 8x t/(1-t)²
    let t = (-2.0 * x).exp();
    let omt = -(-2.0 * x).exp_m1();
    (1.0 + t) / omt + 4.0 * x * x * t * (1.0 + t) / omt.powi(3) - 8.0 * x * t / (omt * omt)
}

/// Maximum of `g` on `[0.5, 3]`, as `(R, g(R))`.
///
/// The golden-section bracket is refined by bisecting on the sign of a
/// central difference, since the flat top limits a comparison search to
/// about `sqrt(ε)`.
pub fn g_maximum() -> (f64, f64) {
    let guess = golden_max(hannay_g, 0.5, 3.0, 1e-9);
    let h = 1e-5;
    let slope = |r: f64| hannay_g(r + h) - hannay_g(r - h);
    let (mut a, mut b) = (guess - 1e-3, guess + 1e-3);
    while b - a > 1e-13 {
        let m = 0.5 * (a + b);
        if slope(m) > 0.0 {
            a = m;
        } else {
            b = m;
        }
    }
    let argmax = 0.5 * (a + b);
    (argmax, hannay_g(argmax))
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Angle of the maximum of the normalized sphere density within `[lo, hi]`,
/// assuming a single maximum there.
pub fn rho_sphere_argmax(ell: usize, lo: f64, hi: f64) -> Result<f64> {
    if !(0.0 < lo && lo < hi && hi < PI) {
        return Err(Error::Domain(format!("bad search interval [{lo}, {hi}]")));
    }
    // evaluation errors cannot occur strictly inside (0, π) for ℓ >= 2
    rho_sphere_with(ell, 0.5 * (lo + hi), true, DEFAULT_BITS)?;
    Ok(golden_max(
        |t| rho_sphere_with(ell, t, true, DEFAULT_BITS).unwrap_or(f64::NEG_INFINITY),
        lo,
        hi,
        1e-9,
    ))
}

/// Largest `|ρ_norm(ℓ, θ(R)) - g(R)|` over the grid, where
/// `θ(R) = 2 arctan(R/√ℓ)`.
pub fn limit_deviation(ell: usize, r_grid: &[f64]) -> Result<f64> {
    limit_deviation_with(ell, r_grid, DEFAULT_BITS)
}

pub fn limit_deviation_with(ell: usize, r_grid: &[f64], bits: usize) -> Result<f64> {
    if !(10..=crate::MAX_ELL).contains(&ell) {
        return Err(Error::Domain(format!(
            "the limit comparison needs 10 <= ℓ <= {}, got {ell}",
            crate::MAX_ELL
        )));
    }
    let scale = (ell as f64).sqrt();
    let mut worst: f64 = 0.0;
    for &big_r in r_grid {
        if !(big_r > 0.0 && big_r.is_finite()) {
            return Err(Error::Domain(format!("grid values must be positive, got {big_r}")));
        }
        let theta = 2.0 * (big_r / scale).atan();
        let v = rho_sphere_with(ell, theta, true, bits)?;
        worst = worst.max((v - hannay_g(big_r)).abs());
    }
    Ok(worst)
}

/// `(1/2) ∫₀^π ρ_norm(ℓ, θ) sinθ dθ`, which equals `(2ℓ-2)/(2ℓ)`.
pub fn sphere_integral(ell: usize) -> Result<f64> {
    // symmetric about π/2
    integrate_adaptive(
        |t| Ok(rho_sphere_with(ell, t, true, DEFAULT_BITS)? * t.sin()),
        0.0,
        PI / 2.0,
        1e-11,
    )
}

/// Mean of `ρ_norm(ℓ, ·)` over the zone `lo <= θ <= hi`, weighted by solid
/// angle.
pub fn zone_average(ell: usize, lo: f64, hi: f64, bits: usize) -> Result<f64> {
    let rule = gauss_legendre(12);
    let integral = integrate_gl(
        &mut |t: f64| rho_sphere_with(ell, t, true, bits).map(|v| v * t.sin()),
        lo,
        hi,
        &rule,
    )?;
    Ok(integral / (lo.cos() - hi.cos()))
}
