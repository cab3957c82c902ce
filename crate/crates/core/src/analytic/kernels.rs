use num_complex::Complex;
use num_traits::One;

use crate::precision::Real;

/// The eight pair correlations of `f` and `f'` at two points, named
/// `<left><right>` with `c` marking the conjugated factor, e.g.
/// `dfc_f = <f'_i* f_j>`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelValues<T> {
    pub ff_c: Complex<T>,
    pub ff: Complex<T>,
    pub dfc_f: Complex<T>,
    pub df_f: Complex<T>,
    pub fc_df: Complex<T>,
    pub f_df: Complex<T>,
    pub dfc_df: Complex<T>,
    pub df_df: Complex<T>,
}

pub fn cpowu<T: Real>(z: &Complex<T>, mut n: u32) -> Complex<T> {
    let mut base = z.clone();
    let mut acc = Complex::<T>::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base.clone();
        }
        n >>= 1;
        if n > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// Kernels of the unscaled field, e.g. `<f_i* f_j> = (1 + conj(ζ_i) ζ_j)^{2ℓ}`.
pub fn pair_kernels<T: Real>(zi: &Complex<T>, zj: &Complex<T>, ell: usize) -> KernelValues<T> {
    kernels_with_norm(zi, zj, ell, T::one())
}

/// Kernels of the variables `f_i / (1+|ζ_i|²)^ℓ` and `f'_i / (1+|ζ_i|²)^ℓ`.
/// Every entry is then bounded independently of ℓ and of where the points
/// lie, while zero densities are unchanged.
pub fn scaled_pair_kernels<T: Real>(zi: &Complex<T>, zj: &Complex<T>, ell: usize) -> KernelValues<T> {
    let gi = T::one() + zi.norm_sqr();
    let gj = T::one() + zj.norm_sqr();
    kernels_with_norm(zi, zj, ell, (gi * gj).sqrt())
}

fn kernels_with_norm<T: Real>(zi: &Complex<T>, zj: &Complex<T>, ell: usize, g: T) -> KernelValues<T> {
    assert!(ell >= 1, "kernels need ell >= 1");
    let n = 2 * ell as u32;
    let nn = T::from_i64(n as i64);
    let t = (Complex::<T>::one() + zi.conj() * zj.clone()).unscale(g.clone());
    let q = (zi.clone() - zj.clone()).unscale(g.clone());
    let t1 = cpowu(&t, n - 1);
    let t2 = cpowu(&t, n - 2);
    let q1 = cpowu(&q, n - 2);
    let q0 = q1.clone() * q.clone();
    let g2 = g.clone() * g.clone();

    let df_f = q0.clone().scale(nn.clone()).unscale(g.clone());
    let cross = Complex::<T>::one() + (zi.conj() * zj.clone()).scale(nn.clone());
    KernelValues {
        ff_c: t1.clone() * t,
        ff: q0 * q,
        dfc_f: (zj.clone() * t1.clone()).scale(nn.clone()).unscale(g.clone()),
        fc_df: (zi.conj() * t1).scale(nn.clone()).unscale(g.clone()),
        f_df: -df_f.clone(),
        df_f,
        dfc_df: (cross * t2).scale(nn.clone()).unscale(g2.clone()),
        df_df: -q1.scale(nn.clone() * (nn - T::one())).unscale(g2),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use num_complex::Complex64;
    use rand::Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn coincident_origin() {
        for ell in 2..6 {
            let k = pair_kernels(&c(0.0, 0.0), &c(0.0, 0.0), ell);
            assert_eq!(k.ff_c, c(1.0, 0.0));
            assert_eq!(k.dfc_df, c(2.0 * ell as f64, 0.0));
            for z in [k.ff, k.dfc_f, k.df_f, k.fc_df, k.f_df, k.df_df] {
                assert_eq!(z, c(0.0, 0.0));
            }
        }
    }

    #[test]
    fn origin_and_r_follow_the_scalar_pattern() {
        let (ell, r) = (3usize, 0.4f64);
        let k = pair_kernels(&c(0.0, 0.0), &c(r, 0.0), ell);
        assert_eq!(k.ff_c, c(1.0, 0.0));
        assert!((k.ff - c(r.powi(6), 0.0)).norm() < 1e-15);
        assert_eq!(k.fc_df, c(0.0, 0.0));
        assert!((k.dfc_f - c(6.0 * r, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let (zi, zj, ell) = (c(0.3, -0.2), c(-0.5, 0.7), 3usize);
        let h = 1e-6;
        let ffc = |a: Complex64, b: Complex64| pair_kernels(&a, &b, ell).ff_c;
        let ff = |a: Complex64, b: Complex64| pair_kernels(&a, &b, ell).ff;
        let k = pair_kernels(&zi, &zj, ell);
        // d/dζ_j of a holomorphic-in-ζ_j kernel
        let d_j = |f: &dyn Fn(Complex64, Complex64) -> Complex64| (f(zi, zj + h) - f(zi, zj - h)) / (2.0 * h);
        let d_i = |f: &dyn Fn(Complex64, Complex64) -> Complex64| (f(zi + h, zj) - f(zi - h, zj)) / (2.0 * h);
        assert!((d_j(&ffc) - k.fc_df).norm() < 1e-8);
        assert!((d_j(&ff) - k.f_df).norm() < 1e-8);
        assert!((d_i(&ff) - k.df_f).norm() < 1e-8);
        // conj of <f_i* f_j> is holomorphic in ζ_i
        let ffc_conj = |a: Complex64, b: Complex64| ffc(a, b).conj();
        assert!((d_i(&ffc_conj) - k.dfc_f.conj()).norm() < 1e-8);
        let fcdf = |a: Complex64, b: Complex64| pair_kernels(&a, &b, ell).fc_df.conj();
        assert!((d_i(&fcdf) - k.dfc_df.conj()).norm() < 1e-7);
        let fdf = |a: Complex64, b: Complex64| pair_kernels(&a, &b, ell).f_df;
        assert!((d_i(&fdf) - k.df_df).norm() < 1e-7);
    }

    #[test]
    fn hermitian_and_symmetric_structure() {
        let mut rng = stream(4, 0);
        for _ in 0..100 {
            let zi = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let zj = c(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            let a = pair_kernels(&zi, &zj, 4);
            let b = pair_kernels(&zj, &zi, 4);
            assert!((a.ff_c - b.ff_c.conj()).norm() <= 1e-12 * a.ff_c.norm().max(1.0));
            assert!((a.dfc_f - b.fc_df.conj()).norm() <= 1e-12 * a.dfc_f.norm().max(1.0));
            assert!((a.ff - b.ff).norm() <= 1e-12 * a.ff.norm().max(1.0));
            assert!((a.df_f - b.f_df).norm() <= 1e-12 * a.df_f.norm().max(1.0));
        }
    }

    #[test]
    fn scaling_divides_by_point_factors() {
        let (zi, zj, ell) = (c(1.3, 0.4), c(-0.2, 2.1), 5usize);
        let raw = pair_kernels(&zi, &zj, ell);
        let sc = scaled_pair_kernels(&zi, &zj, ell);
        let s = ((1.0 + zi.norm_sqr()) * (1.0 + zj.norm_sqr())).powi(ell as i32);
        assert!((raw.ff_c / s - sc.ff_c).norm() < 1e-14);
        assert!((raw.dfc_df / s - sc.dfc_df).norm() < 1e-14);
        assert!((raw.df_df / s - sc.df_df).norm() < 1e-14);
    }
}
