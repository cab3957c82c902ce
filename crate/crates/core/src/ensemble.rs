//! Coefficient vectors of real degree-ℓ spherical functions.
//!
//! Only the coefficients `a_0..a_ℓ` are stored. The negative orders follow
//! from the reality rule `a_{-m} = (-1)^m conj(a_m)`, so a stored vector can
//! never violate it.

use std::io::{Read, Write};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `|Im a_0|` accepted on input.
pub const MONOPOLE_IMAG_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector {
    ell: usize,
    coeffs: Vec<Complex64>,
}

impl CoefficientVector {
    /// Builds a vector from `a_0..a_ℓ`; the degree is `coeffs.len() - 1`.
    ///
    /// `a_0` must be real to within [`MONOPOLE_IMAG_TOL`]; its imaginary part
    /// is then dropped.
    pub fn new(mut coeffs: Vec<Complex64>) -> Result<Self> {
        let Some(first) = coeffs.first_mut() else {
            return Err(Error::Schema("empty coefficient list".into()));
        };
        if first.im.abs() > MONOPOLE_IMAG_TOL {
            return Err(Error::ImaginaryMonopole(first.im));
        }
        first.im = 0.0;
        if coeffs.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::Schema("non-finite coefficient".into()));
        }
        Ok(CoefficientVector {
            ell: coeffs.len() - 1,
            coeffs,
        })
    }

    /// Like [`CoefficientVector::new`] but checks the length against a
    /// declared degree.
    pub fn with_degree(ell: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != ell + 1 {
            return Err(Error::LengthMismatch {
                expected: ell + 1,
                found: coeffs.len(),
            });
        }
        Self::new(coeffs)
    }

    /// The zonal harmonic `Y_ℓ^0`, i.e. `a = (1, 0, ..., 0)`.
    pub fn zonal(ell: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); ell + 1];
        coeffs[0] = Complex64::new(1.0, 0.0);
        CoefficientVector { ell, coeffs }
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// Stored coefficients `a_0..a_ℓ`.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of order `m` for any `-ℓ <= m <= ℓ`.
    pub fn coeff(&self, m: i64) -> Complex64 {
        let k = m.unsigned_abs() as usize;
        assert!(k <= self.ell, "order {m} outside degree {}", self.ell);
        if m >= 0 {
            self.coeffs[k]
        } else if k % 2 == 0 {
            self.coeffs[k].conj()
        } else {
            -self.coeffs[k].conj()
        }
    }

    /// Full coefficient sequence for `m = -ℓ..=ℓ`.
    pub fn expand_full(&self) -> Vec<Complex64> {
        let l = self.ell as i64;
        (-l..=l).map(|m| self.coeff(m)).collect()
    }

    /// `Σ_{m=-ℓ}^{ℓ} |a_m|²`.
    pub fn full_norm_sqr(&self) -> f64 {
        self.coeffs[0].norm_sqr() + 2.0 * self.coeffs[1..].iter().map(|a| a.norm_sqr()).sum::<f64>()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        CoefficientVector {
            ell: self.ell,
            coeffs: self.coeffs.iter().map(|a| a * factor).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|a| a.re == 0.0 && a.im == 0.0)
    }

    /// Rebuilds a vector from the full `m = -ℓ..=ℓ` sequence, keeping the
    /// `m >= 0` half. Returns the vector and the largest violation of the
    /// reality rule found in the input.
    pub fn from_full(full: &[Complex64]) -> Result<(Self, f64)> {
        if full.len() % 2 == 0 {
            return Err(Error::Schema("full coefficient sequence must have odd length".into()));
        }
        let ell = full.len() / 2;
        let mut coeffs: Vec<Complex64> = full[ell..].to_vec();
        let mut defect: f64 = coeffs[0].im.abs();
        coeffs[0].im = 0.0;
        for m in 1..=ell {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            defect = defect.max((full[ell - m] - sign * full[ell + m].conj()).norm());
        }
        Ok((CoefficientVector { ell, coeffs }, defect))
    }
}

/// Full coefficient sequence `a_{-ℓ}..a_ℓ` of `cv`.
pub fn expand_full(cv: &CoefficientVector) -> Vec<Complex64> {
    cv.expand_full()
}

/// Draws a vector from the isotropic Gaussian ensemble: `a_0 ~ N(0, 1)` and,
/// for `m > 0`, real and imaginary parts of `a_m` independent `N(0, 1/2)`,
/// so that `<|a_m|²> = 1` for every order.
pub fn sample_coefficients<R: Rng + ?Sized>(ell: usize, rng: &mut R) -> Result<CoefficientVector> {
    if ell == 0 {
        return Err(Error::InvalidDegree(ell));
    }
    let mut coeffs = Vec::with_capacity(ell + 1);
    let a0: f64 = rng.sample(StandardNormal);
    coeffs.push(Complex64::new(a0, 0.0));
    for _ in 1..=ell {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        coeffs.push(Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2);
    }
    Ok(CoefficientVector { ell, coeffs })
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoefficientFile {
    l: usize,
    a: Vec<[f64; 2]>,
}

/// Reads the JSON coefficient format `{"l": ℓ, "a": [[re, im], ...]}`.
pub fn read_coefficients<R: Read>(reader: R) -> Result<CoefficientVector> {
    let file: CoefficientFile = serde_json::from_reader(reader).map_err(|e| match e.classify() {
        serde_json::error::Category::Io => Error::Json(e),
        _ => Error::Schema(e.to_string()),
    })?;
    let coeffs = file.a.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
    CoefficientVector::with_degree(file.l, coeffs)
}

pub fn write_coefficients<W: Write>(cv: &CoefficientVector, mut writer: W) -> Result<()> {
    let file = CoefficientFile {
        l: cv.ell,
        a: cv.coeffs.iter().map(|a| [a.re, a.im]).collect(),
    };
    serde_json::to_writer(&mut writer, &file)?;
    writer.write_all(b"\n")?;
    Ok(())
}

pub fn coefficients_from_json(s: &str) -> Result<CoefficientVector> {
    read_coefficients(s.as_bytes())
}

pub fn coefficients_to_json(cv: &CoefficientVector) -> String {
    let mut buf = Vec::new();
    write_coefficients(cv, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}
