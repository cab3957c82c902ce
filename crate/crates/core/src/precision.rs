//! Scalar abstraction over `f64` and an arbitrary-precision binary float.
//!
//! The correlation formulas are written once against [`Real`] and evaluated
//! either in double precision or with [`BigReal`], whose significand width is
//! taken from a thread-local working precision (see [`with_bits`]).

use std::cell::Cell;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::str::FromStr;

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;
use num_traits::{Num, One, Zero};

/// Significand width used when no explicit precision is requested.
pub const DEFAULT_BITS: usize = 256;

/// Precision used to evaluate a formula.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precision {
    #[default]
    Double,
    Extended {
        bits: usize,
    },
}

impl Precision {
    pub fn extended(bits: usize) -> Self {
        Precision::Extended { bits }
    }
}

pub trait Real: Clone + Debug + PartialOrd + Num + Neg<Output = Self> {
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_f64(n as f64)
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn powu(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
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
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn powu(&self, n: u32) -> Self {
        self.powi(n as i32)
    }
}

thread_local! {
    static WORKING_BITS: Cell<usize> = const { Cell::new(DEFAULT_BITS) };
}

/// Current significand width for newly created [`BigReal`] values.
pub fn working_bits() -> usize {
    WORKING_BITS.with(Cell::get)
}

/// Runs `f` with the working precision set to `bits`, restoring it afterwards.
pub fn with_bits<R>(bits: usize, f: impl FnOnce() -> R) -> R {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            WORKING_BITS.with(|c| c.set(self.0));
        }
    }
    let bits = bits.max(53);
    let _restore = Restore(WORKING_BITS.with(|c| c.replace(bits)));
    f()
}

type Repr = FBig<HalfEven, 2>;

/// Binary floating point number with a configurable significand.
///
/// Arithmetic results carry the larger precision of the two operands, and all
/// constructors use [`working_bits`], so a computation started inside
/// [`with_bits`] stays at that precision throughout.
#[derive(Clone, Debug, PartialEq, PartialOrd)]
pub struct BigReal(Repr);

impl BigReal {
    fn pinned(repr: Repr) -> Self {
        BigReal(repr.with_precision(working_bits()).value())
    }

    pub fn precision(&self) -> usize {
        self.0.precision()
    }
}

impl Real for BigReal {
    fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "cannot represent {x} as BigReal");
        Self::pinned(Repr::try_from(x).expect("finite f64 converts exactly"))
    }

    fn from_i64(n: i64) -> Self {
        Self::pinned(Repr::from(n))
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    fn sqrt(&self) -> Self {
        assert!(self.0 >= Repr::ZERO, "square root of a negative BigReal");
        BigReal(self.0.sqrt())
    }

    fn powu(&self, n: u32) -> Self {
        BigReal(self.0.powi(n.into()))
    }
}

impl Zero for BigReal {
    fn zero() -> Self {
        Self::pinned(Repr::ZERO)
    }
    fn is_zero(&self) -> bool {
        self.0.repr().significand().is_zero()
    }
}

impl One for BigReal {
    fn one() -> Self {
        Self::pinned(Repr::ONE)
    }
}

impl Num for BigReal {
    type FromStrRadixErr = ParseBigRealError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        if radix != 10 {
            return Err(ParseBigRealError);
        }
        let dec = dashu_float::DBig::from_str(s).map_err(|_| ParseBigRealError)?;
        let bin = dec
            .with_rounding::<HalfEven>()
            .with_base_and_precision::<2>(working_bits())
            .value();
        Ok(Self::pinned(bin))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParseBigRealError;

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                BigReal(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a BigReal> for &'a BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &'a BigReal) -> BigReal {
                BigReal(&self.0 $op &rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);
forward_binop!(Div, div, /);

impl Rem for BigReal {
    type Output = BigReal;
    fn rem(self, rhs: BigReal) -> BigReal {
        let q = (&self.0 / &rhs.0).trunc();
        BigReal(self.0 - q * rhs.0)
    }
}

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_follow_working_precision() {
        with_bits(300, || {
            assert_eq!(BigReal::one().precision(), 300);
            assert_eq!(BigReal::from_f64(0.1).precision(), 300);
            let third = BigReal::one() / BigReal::from_i64(3);
            assert!((third.to_f64() - 1.0 / 3.0).abs() < 1e-17);
        });
        assert_eq!(BigReal::zero().precision(), DEFAULT_BITS);
    }

    #[test]
    fn extended_precision_resolves_cancellation() {
        // (1 + 1e-20) - 1 is lost in f64 but exact at 256 bits.
        let tiny = with_bits(256, || {
            let one = BigReal::one();
            let eps = BigReal::from_f64(1e-20);
            ((one.clone() + eps) - one).to_f64()
        });
        assert!((tiny - 1e-20).abs() < 1e-35);
    }

    #[test]
    fn huge_exponents_do_not_overflow() {
        let v = with_bits(128, || {
            let two = BigReal::from_i64(2);
            let big = two.powu(4000);
            (big.clone() / (big * BigReal::from_f64(0.5))).to_f64()
        });
        assert_eq!(v, 2.0);
    }

    #[test]
    fn sqrt_and_powu_agree_with_f64() {
        with_bits(200, || {
            let x = BigReal::from_f64(2.5);
            assert!((x.sqrt().to_f64() - 2.5f64.sqrt()).abs() < 1e-15);
            assert!((x.powu(7).to_f64() - 2.5f64.powi(7)).abs() < 1e-10);
            assert!((Real::powu(&2.5f64, 7) - 2.5f64.powi(7)).abs() < 1e-10);
        });
    }

    #[test]
    fn remainder_and_parse() {
        let r = BigReal::from_f64(7.5) % BigReal::from_f64(2.0);
        assert_eq!(r.to_f64(), 1.5);
        let p = BigReal::from_str_radix("0.25", 10).unwrap();
        assert_eq!(p.to_f64(), 0.25);
        assert!(BigReal::from_str_radix("1", 16).is_err());
    }
}
