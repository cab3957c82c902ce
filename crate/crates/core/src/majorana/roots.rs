//! Projective root finding for Majorana polynomials.
//!
//! Vanishing end coefficients become exact roots at 0 and ∞. The remaining
//! polynomial is solved by companion-matrix QR up to degree ℓ = 50 and by
//! Aberth–Ehrlich iteration above that, each root is polished with Newton
//! steps on the full polynomial, and every root must pass a relative
//! residual check.

use std::f64::consts::TAU;

use num_complex::Complex64;

use super::polynomial::{log_binomial_weights, MajoranaPolynomial};
use crate::error::{Error, Result};
use crate::sphere::ProjectivePoint;

/// Largest ℓ solved through the companion matrix.
pub const COMPANION_MAX_ELL: usize = 50;

/// Relative size below which an end coefficient counts as vanishing.
pub const VANISHING_TOL: f64 = 1e-14;

pub const DEFAULT_ROOT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootMethod {
    Companion,
    Aberth,
}

#[derive(Clone, Debug)]
pub struct Roots {
    pub points: Vec<ProjectivePoint>,
    /// Largest relative residual over all roots.
    pub residual: f64,
    pub method: RootMethod,
}

pub fn find_roots(p: &MajoranaPolynomial) -> Result<Vec<ProjectivePoint>> {
    find_roots_with(p, DEFAULT_ROOT_TOL).map(|r| r.points)
}

pub fn find_roots_with(p: &MajoranaPolynomial, tol: f64) -> Result<Roots> {
    let method = if p.ell() <= COMPANION_MAX_ELL {
        RootMethod::Companion
    } else {
        RootMethod::Aberth
    };
    find_roots_using(p, tol, method)
}

pub fn find_roots_using(p: &MajoranaPolynomial, tol: f64, method: RootMethod) -> Result<Roots> {
    let c = p.coeffs();
    let n = c.len() - 1;
    // Vanishing is judged on |c_j| / sqrt(C(2ℓ, j)), i.e. on the underlying
    // harmonic coefficient; the raw |c_j| spans many orders of magnitude at
    // large ℓ and small end coefficients are genuine there.
    let logw = log_binomial_weights(p.ell());
    let weighted: Vec<f64> = c
        .iter()
        .zip(&logw)
        .map(|(cj, w)| {
            if cj.norm() == 0.0 {
                f64::NEG_INFINITY
            } else {
                cj.norm().ln() - w
            }
        })
        .collect();
    let top = weighted.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top == f64::NEG_INFINITY {
        return Err(Error::ZeroPolynomial);
    }
    let cutoff = top + VANISHING_TOL.ln();
    let live = |j: usize| weighted[j] > cutoff;
    let bottom = (0..=n).take_while(|&j| !live(j)).count();
    let topcut = (0..=n).rev().take_while(|&j| !live(j)).count();
    let inner: Vec<Complex64> = c[bottom..=n - topcut].to_vec();

    let mut finite = match method {
        RootMethod::Companion => companion_roots(&inner).or_else(|_| aberth_roots(&inner)),
        RootMethod::Aberth => aberth_roots(&inner).or_else(|_| companion_roots(&inner)),
    }?;
    for z in &mut finite {
        *z = polish(c, *z);
    }

    let mut points = Vec::with_capacity(n);
    points.extend(std::iter::repeat_n(
        ProjectivePoint::finite(Complex64::new(0.0, 0.0)),
        bottom,
    ));
    for z in finite {
        let pt = if z.norm() <= 1.0 {
            ProjectivePoint::finite(z)
        } else {
            ProjectivePoint::new(Complex64::new(1.0, 0.0), 1.0 / z)?
        };
        points.push(pt);
    }
    points.extend(std::iter::repeat_n(ProjectivePoint::infinity(), topcut));

    let residual = points.iter().map(|pt| p.relative_residual(pt)).fold(0.0, f64::max);
    if residual.is_nan() || residual > tol {
        return Err(Error::RootResidual { residual, tol });
    }
    Ok(Roots {
        points,
        residual,
        method,
    })
}

/// Value and derivative of `Σ c_j z^j` by Horner.
fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for cj in c.iter().rev() {
        d = d * z + p;
        p = p * z + cj;
    }
    (p, d)
}

/// Newton correction `f(z)/f'(z)`, computed through the reversed polynomial
/// outside the unit disk. Also returns `|f|` relative to the term sizes.
fn newton_step(c: &[Complex64], z: Complex64) -> (Complex64, f64) {
    let n = c.len() - 1;
    if z.norm() <= 1.0 {
        let (p, d) = horner(c, z);
        let size = c.iter().rev().fold(0.0, |acc, cj| acc * z.norm() + cj.norm());
        let rel = if size > 0.0 { p.norm() / size } else { 0.0 };
        if p.norm() == 0.0 {
            return (Complex64::new(0.0, 0.0), rel);
        }
        (p / d, rel)
    } else {
        let w = 1.0 / z;
        let rev: Vec<Complex64> = c.iter().rev().copied().collect();
        let (q, dq) = horner(&rev, w);
        let size = rev.iter().rev().fold(0.0, |acc, cj| acc * w.norm() + cj.norm());
        let rel = if size > 0.0 { q.norm() / size } else { 0.0 };
        if q.norm() == 0.0 {
            return (Complex64::new(0.0, 0.0), rel);
        }
        (z / (n as f64 - w * dq / q), rel)
    }
}

/// A few Newton steps on the full polynomial, each kept only if it lowers
/// the relative residual.
fn polish(c: &[Complex64], mut z: Complex64) -> Complex64 {
    let (_, mut rel) = newton_step(c, z);
    for _ in 0..4 {
        if rel == 0.0 {
            break;
        }
        let (step, _) = newton_step(c, z);
        if !(step.re.is_finite() && step.im.is_finite()) || step.norm() > 1e-3 * z.norm().max(1.0) {
            break;
        }
        let cand = z - step;
        let (_, r2) = newton_step(c, cand);
        if r2 < rel {
            z = cand;
            rel = r2;
        } else {
            break;
        }
    }
    z
}

fn companion_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let mut h = vec![Complex64::new(0.0, 0.0); n * n];
    for j in 0..n {
        h[j] = -c[n - 1 - j] / lead;
    }
    for i in 1..n {
        h[i * n + i - 1] = Complex64::new(1.0, 0.0);
    }
    balance(&mut h, n);
    hessenberg_eigenvalues(&mut h, n)
}

/// Parlett–Reinsch balancing by powers of two.
fn balance(a: &mut [Complex64], n: usize) {
    const RADIX: f64 = 2.0;
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[j * n + i].norm();
                    r += a[i * n + j].norm();
                }
            }
            if c == 0.0 || r == 0.0 {
                continue;
            }
            let s = c + r;
            let mut f = 1.0;
            let mut g = r / RADIX;
            while c < g {
                f *= RADIX;
                c *= sqrdx;
            }
            g = r * RADIX;
            while c > g {
                f /= RADIX;
                c /= sqrdx;
            }
            if (c + r) / f < 0.95 * s {
                done = false;
                let inv = 1.0 / f;
                for j in 0..n {
                    a[i * n + j] *= inv;
                    a[j * n + i] *= f;
                }
            }
        }
    }
}

/// Eigenvalues of a complex upper Hessenberg matrix by single-shift QR with
/// Wilkinson shifts and Givens rotations.
fn hessenberg_eigenvalues(h: &mut [Complex64], n: usize) -> Result<Vec<Complex64>> {
    let idx = |i: usize, j: usize| i * n + j;
    let mut eig = Vec::with_capacity(n);
    let mut hi = n;
    let mut its = 0usize;
    let mut total = 0usize;
    let mut rot: Vec<(Complex64, Complex64)> = Vec::with_capacity(n);
    while hi > 0 {
        let mut l = hi - 1;
        while l > 0 {
            let s = h[idx(l - 1, l - 1)].norm() + h[idx(l, l)].norm();
            let sub = h[idx(l, l - 1)].norm();
            if sub <= f64::EPSILON * s || sub < f64::MIN_POSITIVE {
                h[idx(l, l - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            l -= 1;
        }
        if l == hi - 1 {
            eig.push(h[idx(hi - 1, hi - 1)]);
            hi -= 1;
            its = 0;
            continue;
        }
        its += 1;
        total += 1;
        if its > 60 || total > 60 * n {
            return Err(Error::NoConvergence("Hessenberg QR".into()));
        }
        let a = h[idx(hi - 2, hi - 2)];
        let b = h[idx(hi - 2, hi - 1)];
        let cc = h[idx(hi - 1, hi - 2)];
        let d = h[idx(hi - 1, hi - 1)];
        let mu = if its % 11 == 10 {
            // exceptional shift to break cycles
            d + Complex64::new(0.75 * cc.norm(), 0.0)
        } else {
            let half = (a - d) * 0.5;
            let disc = (half * half + b * cc).sqrt();
            let m1 = (a + d) * 0.5 + disc;
            let m2 = (a + d) * 0.5 - disc;
            if (m1 - d).norm() <= (m2 - d).norm() {
                m1
            } else {
                m2
            }
        };
        for k in l..hi {
            h[idx(k, k)] -= mu;
        }
        rot.clear();
        for k in l..hi - 1 {
            let x = h[idx(k, k)];
            let y = h[idx(k + 1, k)];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
            } else {
                (x / r, y / r)
            };
            for j in k..hi {
                let u = h[idx(k, j)];
                let v = h[idx(k + 1, j)];
                h[idx(k, j)] = c.conj() * u + s.conj() * v;
                h[idx(k + 1, j)] = -s * u + c * v;
            }
            rot.push((c, s));
        }
        for (off, &(c, s)) in rot.iter().enumerate() {
            let k = l + off;
            let last = (k + 2).min(hi - 1);
            for i in l..=last {
                let u = h[idx(i, k)];
                let v = h[idx(i, k + 1)];
                h[idx(i, k)] = u * c + v * s;
                h[idx(i, k + 1)] = -u * s.conj() + v * c.conj();
            }
        }
        for k in l..hi {
            h[idx(k, k)] += mu;
        }
    }
    Ok(eig)
}

/// Initial approximations on circles whose radii come from the upper convex
/// hull of `(j, ln|c_j|)`.
fn newton_polygon_guesses(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let pts: Vec<(f64, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, cj)| cj.norm() > 0.0)
        .map(|(j, cj)| (j as f64, cj.norm().ln()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (o, a) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (a.0 - o.0) * (p.1 - o.1) - (a.1 - o.1) * (p.0 - o.0);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    for (i, win) in hull.windows(2).enumerate() {
        let (k0, k1) = (win[0].0, win[1].0);
        let count = (k1 - k0) as usize;
        let radius = ((win[0].1 - win[1].1) / (k1 - k0)).exp();
        for j in 0..count {
            let angle = TAU * j as f64 / count as f64 + TAU * i as f64 / n as f64 + 0.7;
            out.push(Complex64::from_polar(radius, angle));
        }
    }
    out
}

fn aberth_roots(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = c.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut z = newton_polygon_guesses(c);
    debug_assert_eq!(z.len(), n);
    let mut done = vec![false; n];
    for _ in 0..1000 {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (ratio, rel) = newton_step(c, z[i]);
            if rel == 0.0 {
                done[i] = true;
                continue;
            }
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    s += 1.0 / (z[i] - z[j]);
                }
            }
            let step = ratio / (1.0 - ratio * s);
            if !(step.re.is_finite() && step.im.is_finite()) {
                return Err(Error::NoConvergence("Aberth iteration diverged".into()));
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm() {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence("Aberth iteration".into()))
}
