//! Direct synthesis of a real spherical function from its coefficients, with
//! orthonormal complex harmonics carrying the Condon–Shortley phase.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::ensemble::CoefficientVector;

/// Orthonormalized associated Legendre values `P̄_ℓ^m(cos θ)` for
/// `m = 0..=ℓ`, such that `Y_ℓ^m(θ, φ) = P̄_ℓ^m(cos θ) e^{imφ}`.
pub fn normalized_legendre(ell: usize, theta: f64) -> Vec<f64> {
    let (s, x) = theta.sin_cos();
    let mut out = vec![0.0; ell + 1];
    // Diagonal P̄_m^m, then upward in degree at fixed order.
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    #[allow(clippy::needless_range_loop)]
    for m in 0..=ell {
        if m > 0 {
            pmm *= -((2 * m + 1) as f64 / (2 * m) as f64).sqrt() * s;
        }
        if m == ell {
            out[m] = pmm;
            break;
        }
        let mut prev = pmm;
        let mut cur = ((2 * m + 3) as f64).sqrt() * x * pmm;
        for l in m + 2..=ell {
            let (lf, mf) = (l as f64, m as f64);
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let lp = lf - 1.0;
            let a_prev = ((4.0 * lp * lp - 1.0) / (lp * lp - mf * mf)).sqrt();
            let next = a * (x * cur - prev / a_prev);
            prev = cur;
            cur = next;
        }
        out[m] = cur;
    }
    out
}

/// `Y_ℓ^m(θ, φ)` for `-ℓ <= m <= ℓ`.
pub fn spherical_harmonic(ell: usize, m: i64, theta: f64, phi: f64) -> Complex64 {
    let k = m.unsigned_abs() as usize;
    assert!(k <= ell);
    let p = normalized_legendre(ell, theta)[k];
    let y = Complex64::from_polar(p, k as f64 * phi);
    if m >= 0 {
        y
    } else if k % 2 == 0 {
        y.conj()
    } else {
        -y.conj()
    }
}

/// Full complex sum `Σ_{m=-ℓ}^{ℓ} a_m Y_ℓ^m(θ, φ)`; its imaginary part is
/// rounding noise.
pub fn synthesize(cv: &CoefficientVector, theta: f64, phi: f64) -> Complex64 {
    let ell = cv.ell();
    let p = normalized_legendre(ell, theta);
    let mut acc = Complex64::new(0.0, 0.0);
    for m in -(ell as i64)..=(ell as i64) {
        let k = m.unsigned_abs() as usize;
        let mut y = Complex64::from_polar(p[k], k as f64 * phi);
        if m < 0 {
            y = if k % 2 == 0 { y.conj() } else { -y.conj() };
        }
        acc += cv.coeff(m) * y;
    }
    acc
}

/// `Φ(θ, φ)`, folding each `±m` pair into `2 Re(a_m Y_ℓ^m)`.
pub fn evaluate_function(cv: &CoefficientVector, theta: f64, phi: f64) -> f64 {
    let p = normalized_legendre(cv.ell(), theta);
    let a = cv.coeffs();
    let mut acc = a[0].re * p[0];
    for (m, (am, pm)) in a.iter().zip(&p).enumerate().skip(1) {
        acc += 2.0 * (am * Complex64::from_polar(*pm, m as f64 * phi)).re;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ensemble::sample_coefficients;
    use crate::rng::stream;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn dipole_at_north_pole() {
        let cv = CoefficientVector::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        let expected = (3.0 / (4.0 * PI)).sqrt();
        assert!((evaluate_function(&cv, 0.0, 0.3) - expected).abs() < 1e-15);
        assert!((expected - 0.48860).abs() < 5e-6);
    }

    #[test]
    fn zonal_quadrupole_on_equator() {
        let cv = CoefficientVector::zonal(2);
        let expected = -0.5 * (5.0 / (4.0 * PI)).sqrt();
        assert!((evaluate_function(&cv, PI / 2.0, 1.1) - expected).abs() < 1e-15);
    }

    #[test]
    fn low_order_closed_forms() {
        // Y_1^1 = -sqrt(3/8π) sinθ e^{iφ}, Y_2^1 = -sqrt(15/8π) sinθ cosθ e^{iφ},
        // Y_2^2 = sqrt(15/32π) sin²θ e^{2iφ}
        let (t, f): (f64, f64) = (0.7, 1.3);
        let e = |m: f64| Complex64::from_polar(1.0, m * f);
        let cases = [
            (1, 1, -(3.0 / (8.0 * PI)).sqrt() * t.sin() * e(1.0)),
            (2, 1, -(15.0 / (8.0 * PI)).sqrt() * t.sin() * t.cos() * e(1.0)),
            (2, 2, (15.0 / (32.0 * PI)).sqrt() * t.sin().powi(2) * e(2.0)),
            (2, -1, (15.0 / (8.0 * PI)).sqrt() * t.sin() * t.cos() * e(-1.0)),
        ];
        for (l, m, want) in cases {
            assert!((spherical_harmonic(l, m, t, f) - want).norm() < 1e-14, "Y_{l}^{m}");
        }
    }

    #[test]
    fn harmonics_are_orthonormal() {
        // Gauss-Legendre in cosθ is exact for these degrees; φ sum is a
        // uniform rule.
        let ell = 6;
        let (nodes, weights) = crate::quadrature::gauss_legendre(16);
        let nphi = 32;
        for m1 in -(ell as i64)..=ell as i64 {
            for m2 in -(ell as i64)..=ell as i64 {
                let mut acc = c(0.0, 0.0);
                for (x, w) in nodes.iter().zip(&weights) {
                    let th = x.acos();
                    for k in 0..nphi {
                        let ph = 2.0 * PI * k as f64 / nphi as f64;
                        acc += spherical_harmonic(ell, m1, th, ph).conj()
                            * spherical_harmonic(ell, m2, th, ph)
                            * (w * 2.0 * PI / nphi as f64);
                    }
                }
                let want = if m1 == m2 { 1.0 } else { 0.0 };
                assert!((acc - want).norm() < 1e-12, "m1={m1} m2={m2}: {acc}");
            }
        }
    }

    #[test]
    fn synthesis_is_real() {
        let mut rng = stream(11, 0);
        for ell in [1, 4, 17, 60] {
            let cv = sample_coefficients(ell, &mut rng).unwrap();
            for _ in 0..100 {
                let th = rng.random_range(0.0..PI);
                let ph = rng.random_range(0.0..2.0 * PI);
                let z = synthesize(&cv, th, ph);
                assert!(z.im.abs() <= 1e-10, "ell {ell}: {z}");
                assert!((z.re - evaluate_function(&cv, th, ph)).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn high_degree_is_finite() {
        let p = normalized_legendre(200, 1e-3);
        assert!(p.iter().all(|v| v.is_finite()));
        let p = normalized_legendre(200, PI / 2.0);
        assert!(p.iter().all(|v| v.is_finite()));
    }
}
