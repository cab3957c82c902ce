//! End-to-end acceptance checks. Runs as a plain binary so every criterion
//! reports one PASS/FAIL line; the process fails if any criterion does.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;

use multipole_core::analytic::{
    assemble_bundle, g_maximum, hafnian, hannay_g, limit_deviation, required_precision, rho2_explicit_with, rho_k,
    rho_k_with, rho_sphere, rho_sphere_l2, sphere_integral,
};
use multipole_core::majorana::{
    axis_set_distance, build_polynomial, find_roots, find_roots_with, pair_antipodes, DEFAULT_PAIRING_TOL,
    DEFAULT_ROOT_TOL,
};
use multipole_core::montecarlo::{compare, estimate};
use multipole_core::rng::stream;
use multipole_core::sphere::{apply_mobius, mobius_of_rotation, rotate_coefficients, EulerZyz};
use multipole_core::{multipoles, sample_coefficients, DEFAULT_BITS};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn random_point(rng: &mut impl Rng, radius: f64) -> Complex64 {
    Complex64::new(rng.random_range(-radius..radius), rng.random_range(-radius..radius))
}

/// Slope of the least-squares line through `(x, y)`.
fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn quadrupole_closed_form() -> Outcome {
    let mut worst: f64 = 0.0;
    for deg in 1..=179 {
        let t = (deg as f64).to_radians();
        let generic = rho_sphere(2, t, true).map_err(|e| e.to_string())?;
        worst = worst.max((generic - rho_sphere_l2(t, true)).abs());
    }
    check(worst <= 1e-9, format!("max |Δ| = {worst:.3e} over 1°..179°"))
}

fn oracle_equivalence() -> Outcome {
    let mut worst: f64 = 0.0;
    for ell in [2usize, 3, 5, 10, 30] {
        for r in [0.05, 0.1, 0.5, 1.0] {
            let prec = required_precision(ell, r, DEFAULT_BITS);
            let pts = [Complex64::new(0.0, 0.0), Complex64::new(r, 0.0)];
            let haf = rho_k_with(&pts, ell, prec).map_err(|e| e.to_string())?;
            let explicit = rho2_explicit_with(ell, r, prec).map_err(|e| e.to_string())?;
            worst = worst.max((haf - explicit).abs() / explicit.abs());
        }
    }
    check(worst <= 1e-8, format!("max relative difference {worst:.3e}"))
}

fn two_point_pairing_sum() -> Outcome {
    let mut rng = stream(2024, 3);
    let mut worst: f64 = 0.0;
    for i in 0..100 {
        let ell = 2 + i % 9;
        let pts = [random_point(&mut rng, 2.0), random_point(&mut rng, 2.0)];
        let b = assemble_bundle(&pts, ell).map_err(|e| e.to_string())?;
        let n = |p: usize, q: usize| b.n[(p - 1, q - 1)];
        let expansion = n(1, 1) * n(2, 2) + n(1, 2) * n(2, 1) + n(1, 4) * n(4, 1);
        let haf = hafnian(&b.s);
        worst = worst.max((haf - expansion).norm() / expansion.norm());
    }
    check(
        worst <= 1e-10,
        format!("max relative difference {worst:.3e} over 100 pairs"),
    )
}

fn one_point_density() -> Outcome {
    let mut rng = stream(2024, 4);
    let mut worst: f64 = 0.0;
    for ell in 1..=10 {
        for _ in 0..50 {
            let z = random_point(&mut rng, 3.0);
            let want = 2.0 * ell as f64 / PI / (1.0 + z.norm_sqr()).powi(2);
            let got = rho_k(&[z], ell).map_err(|e| e.to_string())?;
            worst = worst.max((got - want).abs() / want);
        }
    }
    check(worst <= 1e-9, format!("max relative difference {worst:.3e}"))
}

fn limit_landmarks() -> Outcome {
    let (r, g) = g_maximum();
    let far = hannay_g(6.0);
    check(
        (r - 1.4985).abs() <= 1e-3 && (g - 1.0531).abs() <= 5e-4 && (far - 1.0).abs() <= 1e-10,
        format!("R_max = {r:.10}, g_max = {g:.10}, g(6) - 1 = {:.1e}", far - 1.0),
    )
}

fn large_degree_convergence() -> Outcome {
    let grid: Vec<f64> = (0..=190).map(|i| 0.2 + 0.02 * i as f64).collect();
    let ells = [25usize, 50, 100, 200];
    let devs = ells
        .par_iter()
        .map(|&l| limit_deviation(l, &grid))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let decreasing = devs.windows(2).all(|w| w[1] < w[0]);
    let lx: Vec<f64> = ells.iter().map(|&l| (l as f64).ln()).collect();
    let ly: Vec<f64> = devs.iter().map(|d| d.ln()).collect();
    let slope = fit_slope(&lx, &ly);
    check(
        decreasing && slope < 0.0,
        format!("deviations {devs:.6?}, log-log slope {slope:.4}"),
    )
}

fn sphere_integral_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for ell in [2usize, 3, 5, 10] {
        let got = sphere_integral(ell).map_err(|e| e.to_string())?;
        let want = (2 * ell - 2) as f64 / (2 * ell) as f64;
        worst = worst.max((got - want).abs());
    }
    check(worst <= 1e-6, format!("max |Δ| = {worst:.3e}"))
}

fn monte_carlo_agreement() -> Outcome {
    let hist = estimate(5, 200_000, 60, 20240501).map_err(|e| e.to_string())?;
    let report = compare(&hist).map_err(|e| e.to_string())?;
    check(
        report.coverage >= 0.95 && report.mirror_coverage >= 0.95 && report.failures == 0,
        format!(
            "coverage {:.4} over {} bins, mirror agreement {:.4}, chi² {:.1}/{} (p = {:.3})",
            report.coverage, report.dof, report.mirror_coverage, report.chi_square, report.dof, report.p_value
        ),
    )
}

fn pipeline_soundness() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for ell in [10usize, 50, 100] {
        let results: Vec<Result<(usize, usize, f64, f64), String>> = (0..1000u64)
            .into_par_iter()
            .map(|i| {
                let cv = sample_coefficients(ell, &mut stream(9000 + ell as u64, i)).map_err(|e| e.to_string())?;
                let poly = build_polynomial(&cv).map_err(|e| e.to_string())?;
                let roots = find_roots_with(&poly, DEFAULT_ROOT_TOL).map_err(|e| e.to_string())?;
                let ms = pair_antipodes(&roots.points, DEFAULT_PAIRING_TOL).map_err(|e| e.to_string())?;
                Ok((roots.points.len(), ms.axes.len(), ms.pairing_residual, roots.residual))
            })
            .collect();
        let failures = results.iter().filter(|r| r.is_err()).count();
        let good: Vec<_> = results.into_iter().filter_map(|r| r.ok()).collect();
        let counts_ok = good.iter().all(|g| g.0 == 2 * ell && g.1 == ell);
        let pair = good.iter().map(|g| g.2).fold(0.0, f64::max);
        let res = good.iter().map(|g| g.3).fold(0.0, f64::max);
        ok &= failures == 0 && counts_ok && pair <= 1e-6 && res <= 1e-6;
        lines.push(format!(
            "ℓ={ell}: {failures} failures, counts {}, max pairing {pair:.1e} rad, max residual {res:.1e}",
            if counts_ok { "exact" } else { "WRONG" }
        ));
    }
    check(ok, lines.join("; "))
}

fn rotation_equivariance() -> Outcome {
    let mut rng = stream(2024, 10);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let cv = sample_coefficients(6, &mut rng).map_err(|e| e.to_string())?;
        let rot = EulerZyz::random(&mut rng);
        let direct = multipoles(&rotate_coefficients(&cv, &rot)).map_err(|e| e.to_string())?;
        let u = mobius_of_rotation(&rot);
        let roots = find_roots(&build_polynomial(&cv).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let moved: Vec<_> = roots.iter().map(|p| apply_mobius(&u, p)).collect();
        let transported = pair_antipodes(&moved, DEFAULT_PAIRING_TOL).map_err(|e| e.to_string())?;
        worst = worst.max(axis_set_distance(&direct.axes, &transported.axes));
    }
    check(
        worst <= 1e-8,
        format!("max axis mismatch {worst:.3e} rad over 100 rotations"),
    )
}

fn small_angle_law() -> Outcome {
    let thetas: Vec<f64> = (0..=20).map(|i| 1e-3 * 10f64.powf(i as f64 / 20.0)).collect();
    let lx: Vec<f64> = thetas.iter().map(|t| t.ln()).collect();
    let mut slopes = Vec::new();
    for ell in [3usize, 10, 100] {
        let ly = thetas
            .iter()
            .map(|&t| rho_sphere(ell, t, true).map(f64::ln))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| e.to_string())?;
        slopes.push(fit_slope(&lx, &ly));
    }
    check(
        slopes.iter().all(|s| (s - 2.0).abs() <= 0.05),
        format!("slopes for ℓ = 3, 10, 100: {slopes:.4?}"),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("quadrupole closed form", quadrupole_closed_form),
        ("hafnian vs explicit two-point density", oracle_equivalence),
        ("two-point pairing sum", two_point_pairing_sum),
        ("one-point density", one_point_density),
        ("limit function landmarks", limit_landmarks),
        ("large-degree convergence", large_degree_convergence),
        ("sphere integral identity", sphere_integral_identity),
        ("Monte Carlo vs analytic", monte_carlo_agreement),
        ("root pipeline soundness", pipeline_soundness),
        ("rotation equivariance", rotation_equivariance),
        ("small-angle law", small_angle_law),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
