//! Gaussian conditioning on `f = 0` at k points and the resulting k-point
//! root density as a hafnian.

use std::f64::consts::PI;

use num_complex::{Complex, Complex64};
use num_traits::Zero;

use super::kernels::{scaled_pair_kernels, KernelValues};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::precision::{with_bits, BigReal, Precision, Real};

pub const MAX_POINTS: usize = 4;

/// Two points closer than this (chordal, half-length) count as coincident,
/// and as antipodal when their antipodes are this close.
pub const DEGENERATE_TOL: f64 = 1e-10;

/// Relative imaginary part tolerated in the hafnian.
pub const HAFNIAN_IMAG_TOL: f64 = 1e-9;

/// Covariance of `F = (f_1..f_k, f*_1..f*_k, f'_1..f'_k, f'*_1..f'*_k)` with
/// `M_ab = <F_a* F_b>`, its blocks `A, B, C`, the conditional covariance
/// `N = C - B† A⁻¹ B`, and `S_pq = N_{σ(p),q}`, the second moments of the
/// derivative variables given `f = 0` at every point.
///
/// All variables at point `i` are divided by `(1+|ζ_i|²)^ℓ`. This keeps the
/// entries bounded; `hafnian(S)/sqrt(det A)` is unaffected.
#[derive(Clone, Debug)]
pub struct CorrelationBundle<T> {
    pub k: usize,
    pub m: CMatrix<T>,
    pub a: CMatrix<T>,
    pub b: CMatrix<T>,
    pub c: CMatrix<T>,
    pub n: CMatrix<T>,
    pub det_a: T,
    pub s: CMatrix<T>,
}

/// `σ(p) = p + k` for `p < k`, else `p - k` (zero-based).
pub fn sigma(p: usize, k: usize) -> usize {
    if p < k {
        p + k
    } else {
        p - k
    }
}

fn check_points<T: Real>(points: &[Complex<T>], ell: usize) -> Result<()> {
    if ell == 0 {
        return Err(Error::InvalidDegree(ell));
    }
    if points.is_empty() || points.len() > MAX_POINTS {
        return Err(Error::PointCount(points.len()));
    }
    if points.len() > ell {
        // k generic points plus their antipodes exceed the 2ℓ roots
        return Err(Error::Domain(format!(
            "{} zeros at generic points need degree at least {}, got {ell}",
            points.len(),
            points.len()
        )));
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let (zi, zj) = (&points[i], &points[j]);
            let g = ((T::one() + zi.norm_sqr()) * (T::one() + zj.norm_sqr())).sqrt();
            let near = ((zi.clone() - zj.clone()).norm_sqr().sqrt() / g.clone()).to_f64();
            let anti = ((Complex::new(T::one(), T::zero()) + zi.conj() * zj.clone())
                .norm_sqr()
                .sqrt()
                / g)
                .to_f64();
            if near <= DEGENERATE_TOL {
                return Err(Error::DegeneratePoints(format!("points {i} and {j} coincide")));
            }
            if anti <= DEGENERATE_TOL {
                return Err(Error::DegeneratePoints(format!("points {i} and {j} are antipodal")));
            }
        }
    }
    Ok(())
}

pub fn assemble_bundle<T: Real>(points: &[Complex<T>], ell: usize) -> Result<CorrelationBundle<T>> {
    check_points(points, ell)?;
    let k = points.len();
    let kern: Vec<Vec<KernelValues<T>>> = points
        .iter()
        .map(|zi| points.iter().map(|zj| scaled_pair_kernels(zi, zj, ell)).collect())
        .collect();
    // index a = d·2k + c·k + i: point i, derivative order d, conjugation c
    let m = CMatrix::from_fn(4 * k, 4 * k, |ra, rb| {
        let (ia, ca, da) = (ra % k, (ra / k) % 2, ra / (2 * k));
        let (ib, cb, db) = (rb % k, (rb / k) % 2, rb / (2 * k));
        let kv = &kern[ia][ib];
        let herm = || match (da, db) {
            (0, 0) => kv.ff_c.clone(),
            (1, 0) => kv.dfc_f.clone(),
            (0, 1) => kv.fc_df.clone(),
            _ => kv.dfc_df.clone(),
        };
        let symm = || match (da, db) {
            (0, 0) => kv.ff.clone(),
            (1, 0) => kv.df_f.clone(),
            (0, 1) => kv.f_df.clone(),
            _ => kv.df_df.clone(),
        };
        match (ca, cb) {
            (0, 0) => herm(),
            (1, 0) => symm(),
            (0, 1) => symm().conj(),
            _ => herm().conj(),
        }
    });
    let two_k = 2 * k;
    let a = m.block(0, 0, two_k, two_k);
    let b = m.block(0, two_k, two_k, two_k);
    let c = m.block(two_k, two_k, two_k, two_k);
    let lu = a.lu()?;
    let det = lu.det();
    let det_a = det.re.clone();
    let det_f = det_a.to_f64();
    if det_f.is_nan() || det_f <= 1e-300 {
        return Err(Error::DegeneratePoints(format!(
            "covariance of the constraint values is singular (det {det_f:e})"
        )));
    }
    if det.im.abs().to_f64() > 1e-8 * det_f {
        return Err(Error::DegeneratePoints(
            "complex determinant of a Hermitian block".into(),
        ));
    }
    let n = c.sub(&b.adjoint().matmul(&lu.solve(&b)));
    let s = CMatrix::from_fn(two_k, two_k, |p, q| n[(sigma(p, k), q)].clone());
    Ok(CorrelationBundle {
        k,
        m,
        a,
        b,
        c,
        n,
        det_a,
        s,
    })
}

/// Sum over all perfect matchings of `{0..2k}` of `Π S_pq`.
pub fn hafnian<T: Real>(s: &CMatrix<T>) -> Complex<T> {
    assert_eq!(s.rows(), s.cols());
    assert!(s.rows() % 2 == 0, "hafnian of an odd-sized matrix");
    let idx: Vec<usize> = (0..s.rows()).collect();
    hafnian_rec(s, &idx)
}

fn hafnian_rec<T: Real>(s: &CMatrix<T>, idx: &[usize]) -> Complex<T> {
    if idx.is_empty() {
        return Complex::new(T::one(), T::zero());
    }
    let first = idx[0];
    let mut acc = Complex::<T>::zero();
    for pos in 1..idx.len() {
        let rest: Vec<usize> = idx[1..]
            .iter()
            .enumerate()
            .filter(|&(p, _)| p + 1 != pos)
            .map(|(_, &v)| v)
            .collect();
        acc = acc + s[(first, idx[pos])].clone() * hafnian_rec(s, &rest);
    }
    acc
}

/// k-point correlation density of the roots in the plane.
pub fn rho_k(points: &[Complex64], ell: usize) -> Result<f64> {
    rho_k_with(points, ell, Precision::Double)
}

pub fn rho_k_with(points: &[Complex64], ell: usize, precision: Precision) -> Result<f64> {
    match precision {
        Precision::Double => rho_k_generic::<f64>(points, ell),
        Precision::Extended { bits } => with_bits(bits, || rho_k_generic::<BigReal>(points, ell)),
    }
}

fn rho_k_generic<T: Real>(points: &[Complex64], ell: usize) -> Result<f64> {
    let pts: Vec<Complex<T>> = points
        .iter()
        .map(|z| Complex::new(T::from_f64(z.re), T::from_f64(z.im)))
        .collect();
    let bundle = assemble_bundle(&pts, ell)?;
    let h = hafnian(&bundle.s);
    let scale = h.norm_sqr().sqrt().to_f64();
    let imag = h.im.to_f64();
    if imag.abs() > HAFNIAN_IMAG_TOL * scale {
        return Err(Error::NonRealHafnian {
            real: h.re.to_f64(),
            imag,
        });
    }
    let ratio = (h.re / bundle.det_a.sqrt()).to_f64();
    Ok(ratio / PI.powi(bundle.k as i32))
}
