//! Active zyz rotations acting on directions, on coefficient vectors
//! (Wigner D) and on stereographic coordinates (SU(2) Möbius maps).

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::geometry::{ProjectivePoint, Vec3};
use crate::ensemble::CoefficientVector;

/// Rotation `R = R_z(α) R_y(β) R_z(γ)`, applied actively.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EulerZyz {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

pub type Mobius = [[Complex64; 2]; 2];

impl EulerZyz {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        EulerZyz { alpha, beta, gamma }
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    /// Haar-uniform random rotation.
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let alpha = rng.random_range(0.0..2.0 * PI);
        let gamma = rng.random_range(0.0..2.0 * PI);
        let beta = rng.random_range(-1.0f64..1.0).acos();
        Self::new(alpha, beta, gamma)
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.gamma, -self.beta, -self.alpha)
    }

    pub fn matrix(&self) -> [[f64; 3]; 3] {
        let rz = |t: f64| {
            let (s, c) = t.sin_cos();
            [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
        };
        let (s, c) = self.beta.sin_cos();
        let ry = [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]];
        matmul3(&matmul3(&rz(self.alpha), &ry), &rz(self.gamma))
    }

    pub fn rotate_vector(&self, v: &Vec3) -> Vec3 {
        let m = self.matrix();
        [0, 1, 2].map(|i| m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2])
    }
}

fn matmul3(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

fn mobius_mul(a: &Mobius, b: &Mobius) -> Mobius {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// SU(2) matrix `U` whose Möbius action `ζ ↦ (U₁₁ζ + U₁₂)/(U₂₁ζ + U₂₂)` is
/// the rotation `euler` carried to stereographic coordinates. A z-rotation by
/// `γ` gives `diag(e^{iγ/2}, e^{-iγ/2})`, i.e. `ζ ↦ e^{iγ} ζ`.
pub fn mobius_of_rotation(euler: &EulerZyz) -> Mobius {
    let uz = |t: f64| {
        [
            [Complex64::from_polar(1.0, t / 2.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::from_polar(1.0, -t / 2.0)],
        ]
    };
    let (s, c) = (euler.beta / 2.0).sin_cos();
    let uy = [
        [Complex64::new(c, 0.0), Complex64::new(s, 0.0)],
        [Complex64::new(-s, 0.0), Complex64::new(c, 0.0)],
    ];
    mobius_mul(&mobius_mul(&uz(euler.alpha), &uy), &uz(euler.gamma))
}

pub fn apply_mobius(u: &Mobius, p: &ProjectivePoint) -> ProjectivePoint {
    let (a, b) = (p.alpha(), p.beta());
    ProjectivePoint::new(u[0][0] * a + u[0][1] * b, u[1][0] * a + u[1][1] * b)
        .expect("unitary map keeps points nonzero")
}
/// Wigner small-d matrix `d^ℓ_{m'm}(β)` indexed `[ℓ+m'][ℓ+m]`.
///
/// Computed as `exp(-iβJ_y)`, a real orthogonal matrix, by scaling and
/// squaring a Taylor series. Unlike the explicit factorial sum this does not
/// cancel catastrophically at high degree.
pub fn wigner_small_d(ell: usize, beta: f64) -> Vec<Vec<f64>> {
    let n = 2 * ell + 1;
    let l = ell as f64;
    // generator -iJ_y: real, antisymmetric, tridiagonal
    let up: Vec<f64> = (0..n - 1)
        .map(|i| {
            let m = i as f64 - l;
            0.5 * ((l - m) * (l + m + 1.0)).sqrt()
        })
        .collect();
    let norm = up.iter().fold(0.0f64, |a, &u| a.max(u)) * 2.0 * beta.abs();
    let squarings = if norm > 0.25 {
        (norm / 0.25).log2().ceil() as u32
    } else {
        0
    };
    let h = beta / 2f64.powi(squarings as i32);
    // x ↦ hA·x for a column-major slice
    let apply = |x: &[f64], out: &mut [f64]| {
        for i in 0..n {
            let mut v = 0.0;
            if i > 0 {
                v -= up[i - 1] * x[i - 1];
            }
            if i + 1 < n {
                v += up[i] * x[i + 1];
            }
            out[i] = h * v;
        }
    };
    let mut e = vec![0.0; n * n];
    let mut term = vec![0.0; n];
    let mut next = vec![0.0; n];
    for col in 0..n {
        term.iter_mut().for_each(|t| *t = 0.0);
        term[col] = 1.0;
        let dst = &mut e[col * n..(col + 1) * n];
        dst.copy_from_slice(&term);
        for k in 1..=20 {
            apply(&term, &mut next);
            let inv = 1.0 / k as f64;
            for (t, nx) in term.iter_mut().zip(&next) {
                *t = nx * inv;
            }
            for (d, t) in dst.iter_mut().zip(&term) {
                *d += t;
            }
        }
    }
    let mut tmp = vec![0.0; n * n];
    for _ in 0..squarings {
        // column-major product e·e
        tmp.iter_mut().for_each(|t| *t = 0.0);
        for j in 0..n {
            for k in 0..n {
                let b = e[j * n + k];
                if b == 0.0 {
                    continue;
                }
                let (src, dst) = (&e[k * n..(k + 1) * n], &mut tmp[j * n..(j + 1) * n]);
                for (d, s) in dst.iter_mut().zip(src) {
                    *d += s * b;
                }
            }
        }
        std::mem::swap(&mut e, &mut tmp);
    }
    (0..n).map(|i| (0..n).map(|j| e[j * n + i]).collect()).collect()
}

/// Coefficients of `Φ(R⁻¹ x)`: `a'_m = Σ_{m'} e^{-imα} d_{mm'}(β) e^{-im'γ} a_{m'}`.
pub fn rotate_coefficients(cv: &CoefficientVector, euler: &EulerZyz) -> CoefficientVector {
    let ell = cv.ell();
    let l = ell as i64;
    let full = cv.expand_full();
    let d = wigner_small_d(ell, euler.beta);
    let rotated: Vec<Complex64> = (-l..=l)
        .map(|m| {
            let row = &d[(m + l) as usize];
            let mut acc = Complex64::new(0.0, 0.0);
            for mp in -l..=l {
                let phase = Complex64::from_polar(1.0, -(mp as f64) * euler.gamma);
                acc += row[(mp + l) as usize] * phase * full[(mp + l) as usize];
            }
            acc * Complex64::from_polar(1.0, -(m as f64) * euler.alpha)
        })
        .collect();
    let (out, _defect) = CoefficientVector::from_full(&rotated).expect("odd-length sequence");
    out
}
