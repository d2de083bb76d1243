//! Scalar abstraction shared by the direct (non-logarithmic) evaluation paths.
//!
//! The fast paths work in `f64` log-domain arithmetic. The direct paths are
//! generic over [`Real`] so the same literal formulas can be evaluated in
//! `f32`, `f64`, or at extended precision with [`BigReal`].

use std::cell::{Cell, RefCell};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_traits::{Float, FloatConst, One, Zero};

/// Minimal real-field interface needed by the direct evaluators.
pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_int(n: i64) -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn pi() -> Self;
    fn sin(&self) -> Self;
    fn sqrt(&self) -> Self;
    /// Natural logarithm; only called on positive values.
    fn ln(&self) -> Self;
    fn abs(&self) -> Self;

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

macro_rules! impl_real_for_float {
    ($t:ty) => {
        impl Real for $t {
            #[inline]
            fn from_int(n: i64) -> Self {
                n as $t
            }
            #[inline]
            fn from_f64(x: f64) -> Self {
                x as $t
            }
            #[inline]
            fn to_f64(&self) -> f64 {
                *self as f64
            }
            #[inline]
            fn pi() -> Self {
                <$t as FloatConst>::PI()
            }
            #[inline]
            fn sin(&self) -> Self {
                Float::sin(*self)
            }
            #[inline]
            fn sqrt(&self) -> Self {
                Float::sqrt(*self)
            }
            #[inline]
            fn ln(&self) -> Self {
                Float::ln(*self)
            }
            #[inline]
            fn abs(&self) -> Self {
                Float::abs(*self)
            }
        }
    };
}

impl_real_for_float!(f32);
impl_real_for_float!(f64);

/// Default significand width, in bits, of [`BigReal`] arithmetic.
pub const ORACLE_PRECISION: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constants cache"));
    static PRECISION: Cell<usize> = const { Cell::new(ORACLE_PRECISION) };
}

/// Significand width used by [`BigReal`] operations on this thread.
pub fn precision() -> usize {
    PRECISION.with(Cell::get)
}

/// Runs `f` with [`BigReal`] operations on this thread rounded to `bits`.
pub fn with_precision<R>(bits: usize, f: impl FnOnce() -> R) -> R {
    struct Restore(usize);
    impl Drop for Restore {
        fn drop(&mut self) {
            PRECISION.with(|p| p.set(self.0));
        }
    }
    let _restore = Restore(PRECISION.with(|p| p.replace(bits.max(64))));
    f()
}

/// Binary floating point whose operations round to the thread's current
/// [`precision`].
#[derive(Clone)]
pub struct BigReal(BigFloat);

impl BigReal {
    pub fn inner(&self) -> &BigFloat {
        &self.0
    }

    fn wrap(x: BigFloat) -> Self {
        debug_assert!(!x.is_nan(), "BigReal operation produced NaN: {:?}", x.err());
        BigReal(x)
    }
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! big_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for BigReal {
            type Output = BigReal;
            fn $m(self, rhs: BigReal) -> BigReal {
                BigReal::wrap(self.0.$m(&rhs.0, precision(), RM))
            }
        }
    };
}

big_binop!(Add, add);
big_binop!(Sub, sub);
big_binop!(Mul, mul);
big_binop!(Div, div);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal(self.0.neg())
    }
}

impl Zero for BigReal {
    fn zero() -> Self {
        BigReal(BigFloat::from_i64(0, precision()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigReal {
    fn one() -> Self {
        BigReal(BigFloat::from_i64(1, precision()))
    }
}

impl Real for BigReal {
    fn from_int(n: i64) -> Self {
        BigReal(BigFloat::from_i64(n, precision()))
    }

    fn from_f64(x: f64) -> Self {
        BigReal(BigFloat::from_f64(x, precision()))
    }

    fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        let (words, _, sign, exponent, _) =
            self.0.as_raw_parts().expect("finite BigReal has raw parts");
        // Value is 0.m * 2^exponent with the most significant word last.
        let top = *words.last().expect("nonempty mantissa") as f64;
        let mag = top * 2f64.powi(exponent - 64);
        match sign {
            Sign::Neg => -mag,
            Sign::Pos => mag,
        }
    }

    fn pi() -> Self {
        CONSTS.with(|cc| BigReal(cc.borrow_mut().pi(precision(), RM)))
    }

    fn sin(&self) -> Self {
        CONSTS.with(|cc| BigReal::wrap(self.0.sin(precision(), RM, &mut cc.borrow_mut())))
    }

    fn sqrt(&self) -> Self {
        BigReal::wrap(self.0.sqrt(precision(), RM))
    }

    fn ln(&self) -> Self {
        CONSTS.with(|cc| BigReal::wrap(self.0.ln(precision(), RM, &mut cc.borrow_mut())))
    }

    fn abs(&self) -> Self {
        BigReal(self.0.abs())
    }

    fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }
}

/// A complex number over a [`Real`] scalar, used only to evaluate principal
/// square roots of possibly negative reals literally.
#[derive(Clone, Debug, PartialEq)]
pub struct Complex<T> {
    pub re: T,
    pub im: T,
}

impl<T: Real> Complex<T> {
    pub fn real(re: T) -> Self {
        Complex { re, im: T::zero() }
    }

    pub fn i() -> Self {
        Complex {
            re: T::zero(),
            im: T::one(),
        }
    }

    /// Principal square root of a real number.
    pub fn sqrt_of_real(x: &T) -> Self {
        if x.is_negative() {
            Complex {
                re: T::zero(),
                im: x.abs().sqrt(),
            }
        } else {
            Complex::real(x.sqrt())
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Complex {
            re: self.re.clone() * other.re.clone() - self.im.clone() * other.im.clone(),
            im: self.re.clone() * other.im.clone() + self.im.clone() * other.re.clone(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        Complex {
            re: self.re.clone() * k.clone(),
            im: self.im.clone() * k.clone(),
        }
    }

    pub fn powu(&self, n: u32) -> Self {
        let mut acc = Complex::real(T::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_real_round_trips_through_f64() {
        for &x in &[
            1.0,
            -3.5e-10,
            0.587_785_252_292_473_1,
            12345.678,
            -1e-200,
            7e150,
        ] {
            let b = BigReal::from_f64(x);
            assert_eq!(b.to_f64(), x);
        }
        assert_eq!(BigReal::zero().to_f64(), 0.0);
    }

    #[test]
    fn big_real_sine_matches_f64() {
        let arg = BigReal::pi() * BigReal::from_int(2) / BigReal::from_int(5);
        assert!((arg.sin().to_f64() - (2.0 * std::f64::consts::PI / 5.0).sin()).abs() < 1e-16);
    }

    #[test]
    fn big_real_carries_more_than_double_precision() {
        // (1 + 2^-80) - 1 vanishes in f64 but not at 256 bits.
        let tiny = BigReal::one() / BigReal::from_int(1i64 << 40) / BigReal::from_int(1i64 << 40);
        let diff = (BigReal::one() + tiny.clone()) - BigReal::one();
        assert_eq!(diff, tiny);
    }

    #[test]
    fn precision_is_scoped() {
        let tiny =
            || BigReal::one() / BigReal::from_int(1i64 << 40) / BigReal::from_int(1i64 << 40);
        let lost = with_precision(64, || (BigReal::one() + tiny()) - BigReal::one());
        assert!(lost.is_zero());
        assert_eq!(precision(), ORACLE_PRECISION);
        let kept = with_precision(512, || (BigReal::one() + tiny()) - BigReal::one());
        assert_eq!(kept, tiny());
    }

    #[test]
    fn principal_root_of_negative_is_imaginary() {
        let z = Complex::sqrt_of_real(&-4.0f64);
        assert_eq!(z, Complex { re: 0.0, im: 2.0 });
        let w = z.mul(&z);
        assert_eq!(w.re, -4.0);
    }
}
