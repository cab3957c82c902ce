use num_complex::Complex64;
use statrs::function::factorial::ln_binomial;

use crate::ensemble::CoefficientVector;
use crate::error::{Error, Result};
use crate::sphere::ProjectivePoint;

/// Degrees above which binomial weights are formed in log space and the
/// coefficients rescaled to unit maximum.
pub const LOG_BINOMIAL_ABOVE: usize = 85;

/// `f(ζ) = Σ_j c_j ζ^j` with `c_{ℓ+m} = (-1)^m sqrt(C(2ℓ, ℓ+m)) a_m`.
///
/// The stored coefficients may be a rescaled copy: the true coefficients are
/// `exp(log_scale) · coeffs`. Roots do not depend on the scale.
#[derive(Clone, Debug, PartialEq)]
pub struct MajoranaPolynomial {
    ell: usize,
    coeffs: Vec<Complex64>,
    log_scale: f64,
}

/// `ln sqrt(C(2ℓ, j))` for `j = 0..=2ℓ`.
pub fn log_binomial_weights(ell: usize) -> Vec<f64> {
    let n = 2 * ell as u64;
    mirrored((0..=ell as u64).map(|j| 0.5 * ln_binomial(n, j)).collect())
}

/// Extends the first half of a symmetric row so both ends agree exactly.
fn mirrored(mut half: Vec<f64>) -> Vec<f64> {
    let tail: Vec<f64> = half.iter().rev().skip(1).copied().collect();
    half.extend(tail);
    half
}

fn exact_binomial_sqrt(ell: usize) -> Vec<f64> {
    let n = 2 * ell;
    let mut row = Vec::with_capacity(n + 1);
    let mut b = 1.0f64;
    for j in 0..=ell {
        row.push(b.sqrt());
        b = b * (n - j) as f64 / (j + 1) as f64;
    }
    mirrored(row)
}

pub fn build_polynomial(cv: &CoefficientVector) -> Result<MajoranaPolynomial> {
    if cv.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ell = cv.ell();
    let l = ell as i64;
    let signed = |m: i64| {
        if m.rem_euclid(2) == 0 {
            cv.coeff(m)
        } else {
            -cv.coeff(m)
        }
    };
    if ell <= LOG_BINOMIAL_ABOVE {
        let w = exact_binomial_sqrt(ell);
        let coeffs = (-l..=l).map(|m| signed(m) * w[(m + l) as usize]).collect();
        return Ok(MajoranaPolynomial {
            ell,
            coeffs,
            log_scale: 0.0,
        });
    }
    let logw = log_binomial_weights(ell);
    let shift = (-l..=l)
        .filter(|&m| cv.coeff(m).norm() > 0.0)
        .map(|m| cv.coeff(m).norm().ln() + logw[(m + l) as usize])
        .fold(f64::NEG_INFINITY, f64::max);
    let coeffs = (-l..=l)
        .map(|m| signed(m) * (logw[(m + l) as usize] - shift).exp())
        .collect();
    Ok(MajoranaPolynomial {
        ell,
        coeffs,
        log_scale: shift,
    })
}

impl MajoranaPolynomial {
    /// Wraps raw coefficients `c_0..c_{2ℓ}`.
    pub fn from_coeffs(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() % 2 == 0 {
            return Err(Error::Schema(format!(
                "a Majorana polynomial has an odd number of coefficients, got {}",
                coeffs.len()
            )));
        }
        if coeffs.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::ZeroPolynomial);
        }
        Ok(MajoranaPolynomial {
            ell: coeffs.len() / 2,
            coeffs,
            log_scale: 0.0,
        })
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn degree(&self) -> usize {
        2 * self.ell
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    /// Horner evaluation of the stored coefficients.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// Homogeneous form `Σ c_j α^j β^{2ℓ-j}`, together with the matching sum
    /// of term moduli.
    pub fn eval_homogeneous(&self, p: &ProjectivePoint) -> (Complex64, f64) {
        let (a, b) = (p.alpha(), p.beta());
        let n = self.degree();
        let mut apow = vec![Complex64::new(1.0, 0.0); n + 1];
        let mut bpow = vec![Complex64::new(1.0, 0.0); n + 1];
        for j in 1..=n {
            apow[j] = apow[j - 1] * a;
            bpow[j] = bpow[j - 1] * b;
        }
        let mut value = Complex64::new(0.0, 0.0);
        let mut size = 0.0;
        for (j, c) in self.coeffs.iter().enumerate() {
            let t = c * apow[j] * bpow[n - j];
            value += t;
            size += t.norm();
        }
        (value, size)
    }

    /// `|f(ζ)| / Σ|c_j ζ^j|`, computed homogeneously so the point at infinity
    /// is handled like any other. Zero when every term vanishes.
    pub fn relative_residual(&self, p: &ProjectivePoint) -> f64 {
        let (value, size) = self.eval_homogeneous(p);
        if size == 0.0 {
            0.0
        } else {
            value.norm() / size
        }
    }

    /// Largest `|c_{2ℓ-j} - (-1)^{ℓ+j} conj(c_j)|` relative to the largest
    /// coefficient. Zero for a polynomial built from a real function.
    pub fn antipodal_defect(&self) -> f64 {
        let n = self.degree();
        let top = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        (0..=n)
            .map(|j| {
                let sign = if (self.ell + j) % 2 == 0 { 1.0 } else { -1.0 };
                (self.coeffs[n - j] - sign * self.coeffs[j].conj()).norm()
            })
            .fold(0.0, f64::max)
            / top
    }
}
