//! Quantum arithmetic at the root `q = exp(2πi/r)` for odd `r`.
//!
//! Every quantity here is real: the bracket `{n} = q^n - q^-n` is stored as
//! the real number `2 sin(2πn/r)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::real::Real;
use crate::SignedLogValue;

/// An odd level `r ≥ 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Level(u32);

impl Level {
    pub const MIN: u32 = 3;

    pub fn new(r: i64) -> Result<Self> {
        Self::with_min(r, Self::MIN)
    }

    /// Like [`Level::new`] but with a stricter lower bound (the CLI requires `r ≥ 5`).
    pub fn with_min(r: i64, min: u32) -> Result<Self> {
        if r < min as i64 || r % 2 == 0 || r > u32::MAX as i64 {
            return Err(Error::InvalidLevel { got: r, min });
        }
        Ok(Level(r as u32))
    }

    #[inline]
    pub fn r(self) -> u32 {
        self.0
    }

    /// Largest color, `r - 3`.
    #[inline]
    pub fn max_color(self) -> u32 {
        self.0 - 3
    }

    /// The color set `{0, 2, ..., r-3}`.
    pub fn colors(self) -> impl Iterator<Item = u32> + Clone {
        (0..=self.max_color()).step_by(2)
    }

    /// Number of colors, `(r-1)/2`.
    #[inline]
    pub fn color_count(self) -> usize {
        ((self.0 - 1) / 2) as usize
    }

    /// `ζ_r = 2 sin(2π/r)`.
    pub fn zeta(self) -> f64 {
        bracket(1, self)
    }
}

impl TryFrom<u32> for Level {
    type Error = Error;
    fn try_from(r: u32) -> Result<Self> {
        Level::new(r as i64)
    }
}

impl From<Level> for u32 {
    fn from(l: Level) -> u32 {
        l.0
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `{n} = 2 sin(2πn/r)`.
///
/// `n` is reduced mod `r` first and the sine is taken on the representative
/// closest to zero, so `{r-n} = -{n}` holds exactly.
pub fn bracket(n: i64, lvl: Level) -> f64 {
    let r = lvl.r() as i64;
    let m = n.rem_euclid(r);
    if m == 0 {
        0.0
    } else if 2 * m < r {
        2.0 * (2.0 * PI * m as f64 / r as f64).sin()
    } else {
        -2.0 * (2.0 * PI * (r - m) as f64 / r as f64).sin()
    }
}

/// `[n] = {n} / {1}`.
pub fn quantum_integer(n: i64, lvl: Level) -> f64 {
    bracket(n, lvl) / bracket(1, lvl)
}

/// `{n}! = {1}{2}...{n}` in signed log form, for `0 ≤ n < r`.
pub fn quantum_factorial(n: i64, lvl: Level) -> Result<SignedLogValue> {
    if n < 0 || n >= lvl.r() as i64 {
        return Err(Error::Domain(format!(
            "quantum factorial {{{n}}}! needs 0 ≤ n < r = {}",
            lvl.r()
        )));
    }
    let mut acc = SignedLogValue::one();
    for i in 1..=n {
        acc = acc * SignedLogValue::from_value(bracket(i, lvl));
    }
    Ok(acc)
}

/// `η_r = 2 sin(2π/r) / √r`.
pub fn eta(lvl: Level) -> f64 {
    bracket(1, lvl) / (lvl.r() as f64).sqrt()
}

/// Cached `log|{n}!|` and signs for `0 ≤ n < r`.
#[derive(Clone, Debug)]
pub struct FactorialTable {
    level: Level,
    log_abs: Vec<f64>,
    negative: Vec<bool>,
}

impl FactorialTable {
    pub fn new(level: Level) -> Self {
        let r = level.r() as usize;
        let mut log_abs = Vec::with_capacity(r);
        let mut negative = Vec::with_capacity(r);
        let (mut l, mut neg) = (0.0, false);
        log_abs.push(l);
        negative.push(neg);
        for i in 1..r {
            let b = bracket(i as i64, level);
            l += b.abs().ln();
            neg ^= b < 0.0;
            log_abs.push(l);
            negative.push(neg);
        }
        FactorialTable {
            level,
            log_abs,
            negative,
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// `{n}!`; zero for `n ≥ r` since the factor `{r}` vanishes.
    #[inline]
    pub fn get(&self, n: usize) -> SignedLogValue {
        match self.log_abs.get(n) {
            Some(&l) => SignedLogValue {
                sign: if self.negative[n] { -1 } else { 1 },
                log_mag: l,
            },
            None => SignedLogValue::zero(),
        }
    }

    #[inline]
    pub fn log_abs(&self, n: usize) -> f64 {
        self.log_abs[n]
    }

    #[inline]
    pub fn is_negative(&self, n: usize) -> bool {
        self.negative[n]
    }
}

/// Brackets evaluated literally as `2 sin(2πn/r)` in an arbitrary scalar
/// type, with naive factorial products. Backs the direct evaluators.
#[derive(Clone, Debug)]
pub struct BracketTable<T> {
    level: Level,
    brackets: Vec<T>,
}

impl<T: Real> BracketTable<T> {
    pub fn new(level: Level) -> Self {
        let r = level.r() as i64;
        let two_pi_over_r = T::from_int(2) * T::pi() / T::from_int(r);
        let brackets = (0..=r)
            .map(|n| T::from_int(2) * (two_pi_over_r.clone() * T::from_int(n)).sin())
            .collect();
        BracketTable { level, brackets }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// `{n}` for `0 ≤ n ≤ r`; the entry at `r` is the literal (near-zero) sine.
    pub fn bracket(&self, n: usize) -> T {
        if n == self.level.r() as usize {
            // sin(2π) is exactly zero; keep the factorial product exact.
            return T::zero();
        }
        self.brackets[n].clone()
    }

    pub fn quantum_integer(&self, n: usize) -> T {
        self.bracket(n) / self.bracket(1)
    }

    /// Naive product `{1}{2}...{n}`; zero once `n ≥ r`.
    pub fn factorial(&self, n: usize) -> T {
        if n >= self.level.r() as usize {
            return T::zero();
        }
        (1..=n).fold(T::one(), |acc, i| acc * self.bracket(i))
    }

    pub fn eta(&self) -> T {
        self.bracket(1) / T::from_int(self.level.r() as i64).sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::BigReal;

    fn lvl(r: i64) -> Level {
        Level::new(r).unwrap()
    }

    fn naive_factorial(n: u32, r: u32) -> f64 {
        (1..=n)
            .map(|i| 2.0 * (2.0 * PI * i as f64 / r as f64).sin())
            .product()
    }

    #[test]
    fn level_validation() {
        assert!(Level::new(3).is_ok());
        assert!(Level::new(4).is_err());
        assert!(Level::new(1).is_err());
        assert!(Level::new(-5).is_err());
        assert_eq!(
            Level::with_min(3, 5).unwrap_err().to_string(),
            "level must be odd ≥ 5, got 3"
        );
        assert_eq!(lvl(9).colors().collect::<Vec<_>>(), vec![0, 2, 4, 6]);
        assert_eq!(lvl(9).color_count(), 4);
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(0, lvl(5)), 0.0);
        assert!((bracket(1, lvl(5)) - 1.902_113_032_590_307).abs() < 1e-15);
        assert!((bracket(4, lvl(5)) + 1.902_113_032_590_307).abs() < 1e-15);
    }

    #[test]
    fn quantum_integer_examples() {
        assert_eq!(quantum_integer(1, lvl(7)), 1.0);
        assert_eq!(quantum_integer(0, lvl(7)), 0.0);
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        assert!((quantum_integer(2, lvl(5)) - inv_phi).abs() < 1e-15);
    }

    #[test]
    fn factorial_examples() {
        let f0 = quantum_factorial(0, lvl(5)).unwrap();
        assert_eq!((f0.sign, f0.log_mag), (1, 0.0));
        let f4 = quantum_factorial(4, lvl(5)).unwrap();
        assert_eq!(f4.sign, 1);
        assert!((f4.to_value() - 5.0).abs() < 1e-13);
        let f3 = quantum_factorial(3, lvl(5)).unwrap();
        assert_eq!(f3.sign, -1);
        assert!((f3.to_value() - naive_factorial(3, 5)).abs() < 1e-13);
        assert!((f3.to_value().abs() - 2.628_655_560_595_668).abs() < 1e-12);
        assert!(quantum_factorial(5, lvl(5)).is_err());
        assert!(quantum_factorial(-1, lvl(5)).is_err());
    }

    #[test]
    fn eta_examples() {
        assert!((eta(lvl(3)) - 1.0).abs() < 1e-15);
        assert!((eta(lvl(5)) - 0.850_650_808_352_039_9).abs() < 1e-15);
        let e7 = 2.0 * (2.0 * PI / 7.0).sin() / 7f64.sqrt();
        assert!((eta(lvl(7)) - e7).abs() < 1e-15);
        assert!((eta(lvl(7)) - 0.591_009).abs() < 1e-6);
    }

    #[test]
    fn bracket_is_antisymmetric_and_periodic() {
        for r in (3..=101).step_by(2) {
            let l = lvl(r);
            for n in 1..r {
                assert_eq!(bracket(r - n, l), -bracket(n, l));
                assert_eq!(bracket(n + r, l), bracket(n, l));
                assert_eq!(bracket(n - 3 * r, l), bracket(n, l));
            }
        }
    }

    #[test]
    fn factorial_matches_naive_product() {
        for r in (3..=101u32).step_by(2) {
            let table = FactorialTable::new(lvl(r as i64));
            for n in 0..r {
                let naive = naive_factorial(n, r);
                let logd = quantum_factorial(n as i64, lvl(r as i64))
                    .unwrap()
                    .to_value();
                assert!(((logd - naive) / naive).abs() < 1e-12, "r={r} n={n}");
                assert_eq!(table.get(n as usize).to_value(), logd);
            }
            assert!(table.get(r as usize).is_zero());
        }
    }

    #[test]
    fn eta_positive_and_decreasing() {
        let mut prev = eta(lvl(5));
        for r in (7..=1001).step_by(2) {
            let e = eta(lvl(r));
            assert!(e > 0.0 && e < prev, "r={r}");
            prev = e;
        }
    }

    #[test]
    fn extended_precision_table_agrees() {
        let l = lvl(11);
        let big = BracketTable::<BigReal>::new(l);
        for n in 0..11 {
            assert!((big.bracket(n).to_f64() - bracket(n as i64, l)).abs() < 1e-15);
            let f = big.factorial(n).to_f64();
            assert!((f - naive_factorial(n as u32, 11)).abs() <= 1e-12 * f.abs().max(1.0));
        }
        assert!(big.factorial(11).to_f64() == 0.0);
        assert!((big.eta().to_f64() - eta(l)).abs() < 1e-15);
    }
}
