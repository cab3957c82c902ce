use std::f64::consts::PI;
use std::fs::File;
use std::io::BufReader;

use serde::Serialize;

use multipole_core::analytic::{g_maximum, hannay_g, limit_deviation_with, rho_sphere_with};
use multipole_core::montecarlo::{compare_against, estimate_with, EstimateConfig};
use multipole_core::rng::stream;
use multipole_core::sphere::evaluate_function;
use multipole_core::{multipoles, read_coefficients, sample_coefficients, CoefficientVector};

use crate::output::{csv_writer, finish, num, row, write_json};
use crate::{check_ell, Common};

/// The coefficient file if one was given, else realization 0 of the seed.
fn coefficients(c: &Common) -> Result<CoefficientVector, String> {
    match &c.coeffs {
        Some(path) => {
            let file = File::open(path).map_err(|e| format!("cannot open {}: {e}", path.display()))?;
            let cv = read_coefficients(BufReader::new(file)).map_err(|e| format!("{}: {e}", path.display()))?;
            check_ell(cv.ell())?;
            if let Some(ell) = c.ell {
                if ell != cv.ell() {
                    return Err(format!(
                        "--ell {ell} disagrees with degree {} in {}",
                        cv.ell(),
                        path.display()
                    ));
                }
            }
            Ok(cv)
        }
        None => sample_coefficients(c.ell()?, &mut stream(c.seed, 0)).map_err(|e| e.to_string()),
    }
}

pub fn sample(c: &Common) -> Result<(), String> {
    let cv = coefficients(c)?;
    let ms = multipoles(&cv).map_err(|e| e.to_string())?;
    if let Some(path) = &c.json {
        let file = File::create(path).map_err(|e| format!("cannot create {}: {e}", path.display()))?;
        multipole_core::write_coefficients(&cv, file).map_err(|e| e.to_string())?;
    }
    let mut w = csv_writer(c.out.as_deref(), &["x", "y", "z"])?;
    for axis in &ms.axes {
        let v = axis.vector();
        row(&mut w, &[num(v[0]), num(v[1]), num(v[2])])?;
    }
    finish(w)
}

pub fn function_grid(c: &Common, theta_steps: usize, phi_steps: usize) -> Result<(), String> {
    if theta_steps < 2 || phi_steps < 1 {
        return Err("--theta-steps must be at least 2 and --phi-steps at least 1".into());
    }
    let cv = coefficients(c)?;
    let mut w = csv_writer(c.out.as_deref(), &["theta_deg", "phi_deg", "value"])?;
    for i in 0..theta_steps {
        let theta = PI * i as f64 / (theta_steps - 1) as f64;
        for j in 0..phi_steps {
            let phi = 2.0 * PI * j as f64 / phi_steps as f64;
            let v = evaluate_function(&cv, theta, phi);
            row(&mut w, &[num(theta.to_degrees()), num(phi.to_degrees()), num(v)])?;
        }
    }
    finish(w)
}

/// `steps` evenly spaced values from `lo` to `hi` inclusive.
fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

pub fn rho2(c: &Common, theta_min: f64, theta_max: f64, steps: usize, normalized: bool) -> Result<(), String> {
    let ell = c.ell()?;
    if !(theta_min > 0.0 && theta_min <= theta_max && theta_max < 180.0) {
        return Err(format!(
            "need 0 < --theta-min <= --theta-max < 180, got {theta_min} and {theta_max}"
        ));
    }
    if steps == 0 {
        return Err("--theta-steps must be positive".into());
    }
    let mut w = csv_writer(c.out.as_deref(), &["theta_deg", "rho"])?;
    for deg in grid(theta_min, theta_max, steps) {
        let v = rho_sphere_with(ell, deg.to_radians(), normalized, c.precision_bits).map_err(|e| e.to_string())?;
        row(&mut w, &[num(deg), num(v)])?;
    }
    finish(w)
}

pub fn mc(c: &Common, realizations: u64, bins: usize) -> Result<(), String> {
    let mut cfg = EstimateConfig::new(c.ell()?, realizations, bins, c.seed);
    cfg.workers = c.workers;
    let hist = estimate_with(&cfg).map_err(|e| e.to_string())?;
    let report = compare_against(&hist, cfg.ell, c.precision_bits).map_err(|e| e.to_string())?;
    let header = [
        "theta_lo_deg",
        "theta_hi_deg",
        "count",
        "g_hat",
        "stderr",
        "g_analytic",
        "z",
    ];
    let mut w = csv_writer(c.out.as_deref(), &header)?;
    let width = 180.0 / bins as f64;
    for (i, b) in report.bins.iter().enumerate() {
        let hi = if i + 1 == bins { 180.0 } else { width * (i + 1) as f64 };
        row(
            &mut w,
            &[
                num(width * i as f64),
                num(hi),
                b.count.to_string(),
                num(b.g_hat),
                num(b.stderr),
                num(b.g_analytic),
                b.z.map(num).unwrap_or_default(),
            ],
        )?;
    }
    finish(w)?;
    if let Some(path) = &c.json {
        write_json(path, &report)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct Deviation {
    ell: usize,
    deviation: f64,
}

#[derive(Serialize)]
struct LimitSummary {
    r_min: f64,
    r_max: f64,
    r_steps: usize,
    g_argmax: f64,
    g_max: f64,
    deviations: Vec<Deviation>,
    /// Least-squares slope of log deviation against log ℓ.
    log_log_slope: Option<f64>,
}

fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

pub fn limit(c: &Common, ells: &[usize], r_min: f64, r_max: f64, r_steps: usize) -> Result<(), String> {
    if !(r_min > 0.0 && r_min < r_max && r_max.is_finite()) || r_steps < 2 {
        return Err(format!(
            "need 0 < --r-min < --r-max and --r-steps >= 2, got {r_min}, {r_max}, {r_steps}"
        ));
    }
    for &ell in ells {
        check_ell(ell)?;
    }
    let rs = grid(r_min, r_max, r_steps);
    let (g_argmax, g_max) = g_maximum();
    let mut deviations = Vec::with_capacity(ells.len());
    for &ell in ells {
        let deviation = limit_deviation_with(ell, &rs, c.precision_bits).map_err(|e| format!("ℓ = {ell}: {e}"))?;
        deviations.push(Deviation { ell, deviation });
    }

    let mut w = csv_writer(c.out.as_deref(), &["table", "x", "value"])?;
    row(&mut w, &["g".into(), num(0.0), num(hannay_g(0.0))])?;
    for &r in &rs {
        row(&mut w, &["g".into(), num(r), num(hannay_g(r))])?;
    }
    row(&mut w, &["g_max".into(), num(g_argmax), num(g_max)])?;
    for d in &deviations {
        row(&mut w, &["deviation".into(), d.ell.to_string(), num(d.deviation)])?;
    }
    finish(w)?;

    if let Some(path) = &c.json {
        let log_log_slope = (deviations.len() >= 2).then(|| {
            let x: Vec<f64> = deviations.iter().map(|d| (d.ell as f64).ln()).collect();
            let y: Vec<f64> = deviations.iter().map(|d| d.deviation.ln()).collect();
            fit_slope(&x, &y)
        });
        let summary = LimitSummary {
            r_min,
            r_max,
            r_steps,
            g_argmax,
            g_max,
            deviations,
            log_log_slope,
        };
        write_json(path, &summary)?;
    }
    Ok(())
}
