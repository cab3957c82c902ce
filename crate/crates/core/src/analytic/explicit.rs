//! Closed-form two-point density for roots at `0` and `r`, its spherical
//! form, and the ℓ = 2 special case.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::precision::{with_bits, BigReal, Precision, Real, DEFAULT_BITS};

/// Scalar building blocks of the two-point density at separation `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rho2Scalars<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    pub u: T,
    pub v: T,
    pub w: T,
    /// `det A = (a-1-u²-2u)(a-1-u²+2u)`.
    pub big_d: T,
}

impl<T: Real> Rho2Scalars<T> {
    pub fn new(ell: usize, r: T) -> Self {
        assert!(ell >= 1);
        let n = 2 * ell as u32;
        let nn = T::from_i64(n as i64);
        let one = T::one();
        let two = T::from_i64(2);
        let r2 = r.clone() * r.clone();
        let g = one.clone() + r2.clone();
        let g1 = g.powu(n - 2);
        let a = g1.clone() * g.clone() * g.clone();
        let b = nn.clone() * r.clone();
        let c = nn.clone() * r.clone() * g1.clone() * g;
        let d = nn.clone() * (one.clone() + nn.clone() * r2) * g1;
        let rp = r.powu(n - 2);
        let u = rp.clone() * r.clone() * r.clone();
        let v = -(nn.clone() * rp.clone() * r);
        let w = -(nn.clone() * (nn - one.clone()) * rp);
        let base = a.clone() - one - u.clone() * u.clone();
        let big_d = (base.clone() - two.clone() * u.clone()) * (base + two * u.clone());
        Rho2Scalars {
            a,
            b,
            c,
            d,
            u,
            v,
            w,
            big_d,
        }
    }

    /// `π² ρ₂(0, r)`.
    pub fn scaled_density(&self, ell: usize) -> T {
        let Rho2Scalars {
            a,
            b,
            c,
            d,
            u,
            v,
            w,
            big_d,
        } = self.clone();
        let one = T::one();
        let two = T::from_i64(2);
        let four = T::from_i64(4);
        let nn = T::from_i64(2 * ell as i64);
        let uu = u.clone() * u.clone();
        let am = a.clone() - one.clone() - uu.clone(); // a-1-u²
        let ap = a.clone() + one.clone() - uu.clone(); // a+1-u²
        let amp = a.clone() - one + uu; // a-1+u²
        let bb = b.clone() * b.clone();
        let cc = c.clone() * c.clone();
        let vv = v.clone() * v.clone();

        let f1 = nn.clone() * big_d.clone() - four * b.clone() * u.clone() * v.clone() - (bb + vv.clone()) * am.clone();
        let f2 = d * big_d.clone()
            - two.clone() * c.clone() * u.clone() * v.clone() * ap.clone()
            - (cc + a * vv.clone()) * am.clone();
        let g2 = nn * big_d.clone()
            - two.clone() * c.clone() * u.clone() * v.clone()
            - b.clone() * u.clone() * v.clone() * ap.clone()
            - vv.clone() * amp.clone()
            - b.clone() * c.clone() * am.clone();
        let g3 = w * big_d.clone()
            - two * b.clone() * c.clone() * u.clone()
            - u * vv * ap
            - b * v.clone() * amp
            - c * v * am;
        let num = f1 * f2 + g2.clone() * g2 + g3.clone() * g3;
        let dd = big_d.clone() * big_d.clone();
        num / (dd * big_d.sqrt())
    }
}

/// Precision the closed form needs: extended when `ℓ > 30` or `r < 0.1`.
/// In double precision the bracketed differences lose accuracy quickly
/// below `r = 1e-3` (every digit by `r = 1e-5`), and the `(1 + r²)^{2ℓ}`
/// powers overflow just past `ℓ = 100` at `r = 1`.
pub fn required_precision(ell: usize, r: f64, bits: usize) -> Precision {
    if ell > 30 || r < 0.1 {
        Precision::Extended { bits }
    } else {
        Precision::Double
    }
}

/// Plane two-point density `ρ₂(0, r)`, at the precision chosen by
/// [`required_precision`] with [`DEFAULT_BITS`].
pub fn rho2_explicit(ell: usize, r: f64) -> Result<f64> {
    rho2_explicit_with(ell, r, required_precision(ell, r, DEFAULT_BITS))
}

pub fn rho2_explicit_with(ell: usize, r: f64, precision: Precision) -> Result<f64> {
    if ell < 2 {
        return Err(Error::InvalidDegree(ell));
    }
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::Domain(format!("separation must be positive, got {r}")));
    }
    let scaled = match precision {
        Precision::Double => Rho2Scalars::new(ell, r).scaled_density(ell),
        Precision::Extended { bits } => with_bits(bits, || {
            Rho2Scalars::new(ell, BigReal::from_f64(r)).scaled_density(ell).to_f64()
        }),
    };
    Ok(scaled / (PI * PI))
}

/// Density of the normalized pair correlation scale, `(2ℓ/4π)²`.
pub fn one_point_sphere_density(ell: usize) -> f64 {
    2.0 * ell as f64 / (4.0 * PI)
}

/// Two-point density on the unit sphere at angular separation `θ`.
pub fn rho_sphere(ell: usize, theta: f64, normalized: bool) -> Result<f64> {
    rho_sphere_with(ell, theta, normalized, DEFAULT_BITS)
}

/// As [`rho_sphere`], with `bits` used wherever extended precision is needed.
pub fn rho_sphere_with(ell: usize, theta: f64, normalized: bool, bits: usize) -> Result<f64> {
    if !(theta > 0.0 && theta < PI) {
        return Err(Error::Domain(format!("θ must lie strictly inside (0, π), got {theta}")));
    }
    // antipodal symmetry: never evaluate at r > 1
    let t = if theta > PI / 2.0 { PI - theta } else { theta };
    let r = (t / 2.0).tan();
    let plane = rho2_explicit_with(ell, r, required_precision(ell, r, bits))?;
    let g = 1.0 + r * r;
    let sphere = plane * g * g / 16.0;
    Ok(if normalized {
        sphere / one_point_sphere_density(ell).powi(2)
    } else {
        sphere
    })
}

/// The ℓ = 2 closed form `(1/π²) · 27 sin²θ / (2 (3 + cos²θ)^{5/2})`.
pub fn rho_sphere_l2(theta: f64, normalized: bool) -> f64 {
    let (s, c) = theta.sin_cos();
    let core = 27.0 * s * s / (2.0 * (3.0 + c * c).powf(2.5));
    if normalized {
        core
    } else {
        core * one_point_sphere_density(2).powi(2)
    }
}
