//! Gauss–Legendre rules and adaptive Gauss–Kronrod integration.
//!
//! Both use interior nodes only, so integrands that lose precision at the
//! interval ends are never evaluated there.

use crate::error::{Error, Result};

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        dp = if d != 0.0 { d } else { dp };
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Fixed-order Gauss–Legendre integral of `f` over `[a, b]`.
pub fn integrate_gl<E>(
    f: &mut impl FnMut(f64) -> std::result::Result<f64, E>,
    a: f64,
    b: f64,
    rule: &(Vec<f64>, Vec<f64>),
) -> std::result::Result<f64, E> {
    let (half, mid) = ((b - a) / 2.0, (a + b) / 2.0);
    let mut acc = 0.0;
    for (x, w) in rule.0.iter().zip(&rule.1) {
        acc += w * f(mid + half * x)?;
    }
    Ok(acc * half)
}

// Kronrod nodes and weights as published, beyond binary64 on purpose.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gk15<E>(
    f: &mut impl FnMut(f64) -> std::result::Result<f64, E>,
    a: f64,
    b: f64,
) -> std::result::Result<(f64, f64), E> {
    let (half, mid) = ((b - a) / 2.0, (a + b) / 2.0);
    let fc = f(mid)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(mid - dx)? + f(mid + dx)?;
        kronrod += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs()))
}

/// Adaptive Gauss–Kronrod (7/15) integration to absolute tolerance `tol`.
pub fn integrate_adaptive(mut f: impl FnMut(f64) -> Result<f64>, a: f64, b: f64, tol: f64) -> Result<f64> {
    let (v, e) = gk15(&mut f, a, b)?;
    let mut parts = vec![(a, b, v, e)];
    for _ in 0..2000 {
        let total_err: f64 = parts.iter().map(|p| p.3).sum();
        if total_err <= tol {
            return Ok(parts.iter().map(|p| p.2).sum());
        }
        let worst = parts
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("at least one interval");
        let (lo, hi, _, _) = parts.swap_remove(worst);
        let m = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&mut f, lo, m)?;
        let (v2, e2) = gk15(&mut f, m, hi)?;
        parts.push((lo, m, v1, e1));
        parts.push((m, hi, v2, e2));
    }
    Err(Error::NoConvergence(format!(
        "adaptive quadrature on [{a}, {b}] did not reach {tol}"
    )))
}
