use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vec3 = [f64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

pub fn neg(a: &Vec3) -> Vec3 {
    [-a[0], -a[1], -a[2]]
}

pub fn normalize(a: &Vec3) -> Vec3 {
    let n = norm(a);
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Angle between two vectors in `[0, π]`, accurate near 0 and π.
pub fn angle(a: &Vec3, b: &Vec3) -> f64 {
    norm(&cross(a, b)).atan2(dot(a, b))
}

/// `(sinθ cosφ, sinθ sinφ, cosθ)`.
pub fn from_polar(theta: f64, phi: f64) -> Vec3 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    [st * cp, st * sp, ct]
}

/// `(θ, φ)` of a unit vector, with `φ ∈ [0, 2π)`.
pub fn to_polar(v: &Vec3) -> (f64, f64) {
    let theta = v[0].hypot(v[1]).atan2(v[2]);
    let mut phi = v[1].atan2(v[0]);
    if phi < 0.0 {
        phi += std::f64::consts::TAU;
    }
    (theta, phi)
}

/// A direction up to sign, stored in the canonical hemisphere: `z > 0`, or
/// `z = 0, x > 0`, or `z = x = 0, y > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitAxis {
    v: Vec3,
}

impl UnitAxis {
    /// Normalizes and canonicalizes `v`. Fails for a zero or non-finite vector.
    pub fn new(v: Vec3) -> Result<Self> {
        let n = norm(&v);
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Domain(format!("cannot form an axis from {v:?}")));
        }
        let mut u = [v[0] / n, v[1] / n, v[2] / n];
        let flip = if u[2] != 0.0 {
            u[2] < 0.0
        } else if u[0] != 0.0 {
            u[0] < 0.0
        } else {
            u[1] < 0.0
        };
        if flip {
            u = neg(&u);
        }
        // -0.0 components would make equal axes print differently
        for c in &mut u {
            if *c == 0.0 {
                *c = 0.0;
            }
        }
        Ok(UnitAxis { v: u })
    }

    pub fn vector(&self) -> Vec3 {
        self.v
    }

    /// Angle between the two lines, in `[0, π/2]`.
    pub fn angle_to(&self, other: &UnitAxis) -> f64 {
        let a = angle(&self.v, &other.v);
        a.min(std::f64::consts::PI - a)
    }
}

/// A point of the Riemann sphere as homogeneous coordinates `ζ = α/β`, with
/// `β = 0` the point at infinity (south pole).
///
/// The pair is scaled so that the larger component is exactly 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectivePoint {
    alpha: Complex64,
    beta: Complex64,
}

impl ProjectivePoint {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let (na, nb) = (alpha.norm(), beta.norm());
        if !(na.is_finite() && nb.is_finite()) || (na == 0.0 && nb == 0.0) {
            return Err(Error::Domain(format!(
                "invalid homogeneous coordinates ({alpha}, {beta})"
            )));
        }
        Ok(if na >= nb {
            ProjectivePoint {
                alpha: Complex64::new(1.0, 0.0),
                beta: beta / alpha,
            }
        } else {
            ProjectivePoint {
                alpha: alpha / beta,
                beta: Complex64::new(1.0, 0.0),
            }
        })
    }

    pub fn finite(z: Complex64) -> Self {
        Self::new(z, Complex64::new(1.0, 0.0)).expect("finite point")
    }

    pub fn infinity() -> Self {
        ProjectivePoint {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn is_infinite(&self) -> bool {
        self.beta == Complex64::new(0.0, 0.0)
    }

    /// `ζ`, or `None` at infinity.
    pub fn value(&self) -> Option<Complex64> {
        (!self.is_infinite()).then(|| self.alpha / self.beta)
    }
}

/// Point on the unit sphere whose stereographic coordinate is `ζ = e^{iφ} tan(θ/2)`.
pub fn inverse_stereographic(p: &ProjectivePoint) -> Vec3 {
    let (a, b) = (p.alpha, p.beta);
    let ab = a * b.conj();
    let (na, nb) = (a.norm_sqr(), b.norm_sqr());
    let s = na + nb;
    [2.0 * ab.re / s, 2.0 * ab.im / s, (nb - na) / s]
}

/// Inverse of [`inverse_stereographic`]. The input is normalized first.
pub fn stereographic(v: &Vec3) -> ProjectivePoint {
    let [x, y, z] = normalize(v);
    let (alpha, beta) = if z >= 0.0 {
        (Complex64::new(x, y), Complex64::new(1.0 + z, 0.0))
    } else {
        (Complex64::new(1.0 - z, 0.0), Complex64::new(x, -y))
    };
    ProjectivePoint::new(alpha, beta).expect("unit vector has a stereographic image")
}

/// The antipodal point `-1/conj(ζ)`.
pub fn antipode(p: &ProjectivePoint) -> ProjectivePoint {
    ProjectivePoint {
        alpha: -p.beta.conj(),
        beta: p.alpha.conj(),
    }
}

/// Chordal distance between two points of the sphere, in `[0, 2]`.
pub fn chordal_distance(p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    let num = (p.alpha * q.beta - q.alpha * p.beta).norm();
    let den = (p.alpha.norm_sqr() + p.beta.norm_sqr()).sqrt() * (q.alpha.norm_sqr() + q.beta.norm_sqr()).sqrt();
    2.0 * num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    fn close(a: &Vec3, b: &Vec3, tol: f64) -> bool {
        (0..3).all(|i| (a[i] - b[i]).abs() <= tol)
    }

    #[test]
    fn inverse_stereographic_landmarks() {
        let c = |re, im| ProjectivePoint::finite(Complex64::new(re, im));
        assert_eq!(inverse_stereographic(&c(0.0, 0.0)), [0.0, 0.0, 1.0]);
        assert!(close(&inverse_stereographic(&c(1.0, 0.0)), &[1.0, 0.0, 0.0], 1e-15));
        assert_eq!(inverse_stereographic(&ProjectivePoint::infinity()), [0.0, 0.0, -1.0]);
    }

    #[test]
    fn stereographic_landmarks() {
        assert_eq!(stereographic(&[0.0, 0.0, 1.0]).value(), Some(Complex64::new(0.0, 0.0)));
        let i = stereographic(&[0.0, 1.0, 0.0]).value().unwrap();
        assert!((i - Complex64::new(0.0, 1.0)).norm() < 1e-15);
        assert!(stereographic(&[0.0, 0.0, -1.0]).is_infinite());
    }

    #[test]
    fn antipode_landmarks() {
        assert!(antipode(&ProjectivePoint::finite(Complex64::new(0.0, 0.0))).is_infinite());
        let z = Complex64::from_polar(1.0, FRAC_PI_4);
        let w = antipode(&ProjectivePoint::finite(z)).value().unwrap();
        assert!((w - Complex64::from_polar(1.0, 5.0 * FRAC_PI_4)).norm() < 1e-15);
        let half = antipode(&ProjectivePoint::finite(Complex64::new(2.0, 0.0)))
            .value()
            .unwrap();
        assert!((half - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn projective_normalization() {
        let p = ProjectivePoint::new(Complex64::new(4.0, 0.0), Complex64::new(0.0, 2.0)).unwrap();
        assert_eq!(p.alpha(), Complex64::new(1.0, 0.0));
        assert!(ProjectivePoint::new(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn axis_canonical_sign() {
        assert_eq!(UnitAxis::new([0.0, 0.0, -2.0]).unwrap().vector(), [0.0, 0.0, 1.0]);
        assert!(UnitAxis::new([-1.0, 1.0, 0.0]).unwrap().vector()[0] > 0.0);
        assert_eq!(UnitAxis::new([0.0, -3.0, 0.0]).unwrap().vector(), [0.0, 1.0, 0.0]);
        assert!(UnitAxis::new([0.0; 3]).is_err());
    }

    fn unit_vector() -> impl Strategy<Value = Vec3> {
        (-1.0f64..1.0, 0.0f64..2.0 * PI).prop_map(|(z, phi)| {
            let s = (1.0 - z * z).sqrt();
            [s * phi.cos(), s * phi.sin(), z]
        })
    }

    proptest! {
        #[test]
        fn stereographic_round_trip(v in unit_vector()) {
            let back = inverse_stereographic(&stereographic(&v));
            prop_assert!(angle(&v, &back) <= 1e-12);
        }

        #[test]
        fn antipode_is_an_involution_and_negates(v in unit_vector()) {
            let p = stereographic(&v);
            let q = antipode(&antipode(&p));
            prop_assert!(chordal_distance(&p, &q) <= 1e-15);
            let w = inverse_stereographic(&antipode(&p));
            prop_assert!(close(&w, &neg(&inverse_stereographic(&p)), 1e-12));
        }

        #[test]
        fn chordal_distance_matches_euclidean(a in unit_vector(), b in unit_vector()) {
            let d = chordal_distance(&stereographic(&a), &stereographic(&b));
            let e = norm(&[a[0] - b[0], a[1] - b[1], a[2] - b[2]]);
            prop_assert!((d - e).abs() <= 1e-12);
        }

        #[test]
        fn axis_is_unit_and_sign_free(v in unit_vector(), s in 0.1f64..10.0) {
            let a = UnitAxis::new([v[0] * s, v[1] * s, v[2] * s]).unwrap();
            let b = UnitAxis::new(neg(&v)).unwrap();
            prop_assert!((norm(&a.vector()) - 1.0).abs() <= 1e-12);
            prop_assert!(a.angle_to(&b) <= 1e-12);
        }
    }
}
