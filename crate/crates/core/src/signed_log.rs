//! Signed log-domain numbers: a real value stored as a sign and the natural
//! log of its magnitude.

use std::ops::{Div, Mul, Neg};

use num_traits::Float;
use serde::{Deserialize, Serialize};

/// `sign * exp(log_mag)`. When `sign == 0` the value is zero and `log_mag` is
/// ignored (kept at zero so the value stays serializable).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignedLog<F> {
    pub sign: i8,
    pub log_mag: F,
}

impl<F: Float> SignedLog<F> {
    pub fn zero() -> Self {
        SignedLog {
            sign: 0,
            log_mag: F::zero(),
        }
    }

    pub fn one() -> Self {
        SignedLog {
            sign: 1,
            log_mag: F::zero(),
        }
    }

    pub fn new(sign: i8, log_mag: F) -> Self {
        if sign == 0 {
            Self::zero()
        } else {
            SignedLog {
                sign: sign.signum(),
                log_mag,
            }
        }
    }

    pub fn from_value(x: F) -> Self {
        if x == F::zero() {
            Self::zero()
        } else if x > F::zero() {
            SignedLog {
                sign: 1,
                log_mag: x.ln(),
            }
        } else {
            SignedLog {
                sign: -1,
                log_mag: (-x).ln(),
            }
        }
    }

    pub fn to_value(self) -> F {
        match self.sign {
            0 => F::zero(),
            s if s > 0 => self.log_mag.exp(),
            _ => -self.log_mag.exp(),
        }
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of zero");
        SignedLog {
            sign: self.sign,
            log_mag: -self.log_mag,
        }
    }

    pub fn abs(self) -> Self {
        SignedLog {
            sign: self.sign.abs(),
            log_mag: self.log_mag,
        }
    }

    pub fn powi(self, n: i32) -> Self {
        if self.sign == 0 {
            return if n == 0 { Self::one() } else { Self::zero() };
        }
        let sign = if self.sign < 0 && n % 2 != 0 { -1 } else { 1 };
        SignedLog {
            sign,
            log_mag: self.log_mag * F::from(n).unwrap(),
        }
    }
}

impl<F: Float> Mul for SignedLog<F> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::zero();
        }
        SignedLog {
            sign: self.sign * rhs.sign,
            log_mag: self.log_mag + rhs.log_mag,
        }
    }
}

impl<F: Float> Neg for SignedLog<F> {
    type Output = Self;
    fn neg(self) -> Self {
        SignedLog {
            sign: -self.sign,
            log_mag: self.log_mag,
        }
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<F: Float> Div for SignedLog<F> {
    type Output = Self;
    #[inline]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

/// Streaming signed sum of log-domain terms.
///
/// The running sum is stored relative to the largest magnitude seen so far and
/// rescaled whenever a larger term arrives, so terms spanning hundreds of
/// orders of magnitude can be added without overflow.
#[derive(Clone, Copy, Debug)]
pub struct LogSum<F> {
    shift: F,
    scaled: F,
    started: bool,
}

impl<F: Float> Default for LogSum<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Float> LogSum<F> {
    pub fn new() -> Self {
        LogSum {
            shift: F::zero(),
            scaled: F::zero(),
            started: false,
        }
    }

    #[inline]
    pub fn push(&mut self, term: SignedLog<F>) {
        if term.sign == 0 {
            return;
        }
        let s = F::from(term.sign).unwrap();
        if !self.started {
            self.shift = term.log_mag;
            self.scaled = s;
            self.started = true;
        } else if term.log_mag > self.shift {
            self.scaled = self.scaled * (self.shift - term.log_mag).exp() + s;
            self.shift = term.log_mag;
        } else {
            self.scaled = self.scaled + s * (term.log_mag - self.shift).exp();
        }
    }

    pub fn total(&self) -> SignedLog<F> {
        if !self.started || self.scaled == F::zero() {
            return SignedLog::zero();
        }
        let sign = if self.scaled > F::zero() { 1 } else { -1 };
        SignedLog {
            sign,
            log_mag: self.shift + self.scaled.abs().ln(),
        }
    }
}

impl<F: Float> FromIterator<SignedLog<F>> for LogSum<F> {
    fn from_iter<I: IntoIterator<Item = SignedLog<F>>>(iter: I) -> Self {
        let mut acc = LogSum::new();
        for t in iter {
            acc.push(t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_absorbs_products() {
        let z = SignedLog::<f64>::zero();
        assert!((z * SignedLog::from_value(3.0)).is_zero());
        assert_eq!(SignedLog::<f64>::from_value(0.0).to_value(), 0.0);
    }

    #[test]
    fn sum_survives_magnitudes_beyond_double_range() {
        let big = SignedLog {
            sign: 1,
            log_mag: 2000.0f64,
        };
        let sum: LogSum<f64> = [big, big, -big].into_iter().collect();
        let t = sum.total();
        assert_eq!(t.sign, 1);
        assert!((t.log_mag - 2000.0).abs() < 1e-12);
    }

    #[test]
    fn cancellation_to_exact_zero() {
        let a = SignedLog::from_value(2.5f64);
        let sum: LogSum<f64> = [a, -a].into_iter().collect();
        assert!(sum.total().is_zero());
    }

    proptest! {
        #[test]
        fn round_trip_within_ulps(m in 1.0f64..10.0, e in -299i32..299, neg in any::<bool>()) {
            let x = if neg { -m * 10f64.powi(e) } else { m * 10f64.powi(e) };
            let back = SignedLog::from_value(x).to_value();
            prop_assert!(((back - x) / x).abs() < 1e-13);
        }

        #[test]
        fn multiplication_is_sign_multiplicative_and_log_additive(
            a in -1e3f64..1e3, b in -1e3f64..1e3
        ) {
            prop_assume!(a != 0.0 && b != 0.0);
            let p = SignedLog::from_value(a) * SignedLog::from_value(b);
            prop_assert_eq!(p.sign as f64, (a * b).signum());
            prop_assert!((p.log_mag - (a.abs().ln() + b.abs().ln())).abs() < 1e-12);
        }

        #[test]
        fn log_sum_matches_plain_sum(xs in proptest::collection::vec(-1e6f64..1e6, 1..40)) {
            let plain: f64 = xs.iter().sum();
            let total = xs.iter().map(|&x| SignedLog::from_value(x)).collect::<LogSum<f64>>().total().to_value();
            let scale = xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            prop_assert!((plain - total).abs() <= 1e-12 * scale * xs.len() as f64);
        }
    }
}
