//! Admissibility, `Δ(a,b,c)²` and the quantum 6j-symbol.
//!
//! Edge slots of a tetrahedron with vertices `v0..v3` are numbered
//!
//! | slot | a1    | a2    | a3    | a4    | a5    | a6    |
//! |------|-------|-------|-------|-------|-------|-------|
//! | edge | v0 v1 | v0 v2 | v1 v2 | v2 v3 | v1 v3 | v0 v3 |
//!
//! so the faces are `F1=(a1,a2,a3)`, `F2=(a2,a4,a6)`, `F3=(a1,a5,a6)`,
//! `F4=(a3,a4,a5)` and the opposite pairs are `(a1,a4)`, `(a2,a5)`, `(a3,a6)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qarith::{BracketTable, FactorialTable, Level};
use crate::real::{Complex, Real};
use crate::{LogSum, SignedLogValue};

/// Vertex pairs of the six edge slots.
pub const EDGE_VERTICES: [(usize, usize); 6] = [(0, 1), (0, 2), (1, 2), (2, 3), (1, 3), (0, 3)];

/// Edge slots of the faces `F1..F4`.
pub const FACE_SLOTS: [[usize; 3]; 4] = [[0, 1, 2], [1, 3, 5], [0, 4, 5], [2, 3, 4]];

/// Edge slots of the three normal quadrilaterals (two opposite pairs each).
pub const QUAD_SLOTS: [[usize; 4]; 3] = [[0, 1, 3, 4], [0, 2, 3, 5], [1, 2, 4, 5]];

/// Slot index of the edge joining two distinct vertices.
pub fn slot_of(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    EDGE_VERTICES
        .iter()
        .position(|&e| e == (i, j))
        .expect("distinct vertices in 0..4")
}

/// An even color in `{0, 2, ..., r-3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Color(u32);

impl Color {
    pub fn new(value: u32, lvl: Level) -> Result<Self> {
        check_color(value, lvl)?;
        Ok(Color(value))
    }

    /// A color not yet checked against any level.
    pub fn unchecked(value: u32) -> Self {
        Color(value)
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }
}

fn check_color(value: u32, lvl: Level) -> Result<()> {
    if !value.is_multiple_of(2) || value > lvl.max_color() {
        return Err(Error::Domain(format!(
            "color {value} is not an even integer in [0, {}] at r={}",
            lvl.max_color(),
            lvl.r()
        )));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triple {
    pub a: Color,
    pub b: Color,
    pub c: Color,
}

impl Triple {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        Triple {
            a: Color(a),
            b: Color(b),
            c: Color(c),
        }
    }

    fn raw(&self) -> [u32; 3] {
        [self.a.0, self.b.0, self.c.0]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SixTuple(pub [Color; 6]);

impl SixTuple {
    pub fn new(colors: [u32; 6]) -> Self {
        SixTuple(colors.map(Color))
    }

    pub fn raw(&self) -> [u32; 6] {
        self.0.map(|c| c.0)
    }

    pub fn face(&self, i: usize) -> Triple {
        let [x, y, z] = FACE_SLOTS[i];
        Triple {
            a: self.0[x],
            b: self.0[y],
            c: self.0[z],
        }
    }
}

#[inline]
pub(crate) fn admissible_raw(a: u32, b: u32, c: u32, r: u32) -> bool {
    a + b + c <= 2 * (r - 2) && a <= b + c && b <= a + c && c <= a + b
}

pub fn is_admissible_triple(t: &Triple, lvl: Level) -> Result<bool> {
    let [a, b, c] = t.raw();
    for v in [a, b, c] {
        check_color(v, lvl)?;
    }
    Ok(admissible_raw(a, b, c, lvl.r()))
}

/// 1-based index of the first inadmissible face, if any.
pub fn first_inadmissible_face(s: &SixTuple, lvl: Level) -> Result<Option<usize>> {
    for v in s.raw() {
        check_color(v, lvl)?;
    }
    for i in 0..4 {
        if !is_admissible_triple(&s.face(i), lvl)? {
            return Ok(Some(i + 1));
        }
    }
    Ok(None)
}

pub fn is_admissible_six_tuple(s: &SixTuple, lvl: Level) -> Result<bool> {
    Ok(first_inadmissible_face(s, lvl)?.is_none())
}

fn require_admissible(s: &SixTuple, lvl: Level) -> Result<()> {
    match first_inadmissible_face(s, lvl)? {
        Some(face) => Err(Error::InadmissibleFace { face }),
        None => Ok(()),
    }
}

/// `Δ(a,b,c)² = ζ_r {(a+b-c)/2}! {(b+c-a)/2}! {(a+c-b)/2}! / {(a+b+c)/2 + 1}!`.
pub fn delta_squared(t: &Triple, lvl: Level) -> Result<SignedLogValue> {
    if !is_admissible_triple(t, lvl)? {
        return Err(Error::Domain(format!(
            "triple {:?} is not admissible at r={}",
            t.raw(),
            lvl.r()
        )));
    }
    let ev = SixJEvaluator::new(lvl);
    let [a, b, c] = t.raw();
    Ok(ev.delta_squared_raw(a, b, c))
}

/// A 6j-symbol `magnitude · i^{imaginary}`. The principal square roots of
/// negative `Δ²` make some symbols purely imaginary; the phases cancel in
/// every closed state sum because each face lies on two tetrahedra.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SixJValue {
    pub magnitude: SignedLogValue,
    pub imaginary: bool,
}

impl SixJValue {
    pub fn zero() -> Self {
        SixJValue {
            magnitude: SignedLogValue::zero(),
            imaginary: false,
        }
    }

    pub fn one() -> Self {
        SixJValue {
            magnitude: SignedLogValue::one(),
            imaginary: false,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.magnitude.is_zero()
    }

    pub fn re(&self) -> f64 {
        if self.imaginary {
            0.0
        } else {
            self.magnitude.to_value()
        }
    }

    pub fn im(&self) -> f64 {
        if self.imaginary {
            self.magnitude.to_value()
        } else {
            0.0
        }
    }

    /// `log|value|`; `-inf` for zero.
    pub fn log_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.magnitude.log_mag
        }
    }
}

impl std::ops::Mul for SixJValue {
    type Output = SixJValue;

    fn mul(self, rhs: SixJValue) -> SixJValue {
        let mut magnitude = self.magnitude * rhs.magnitude;
        if self.imaginary && rhs.imaginary {
            magnitude = -magnitude;
        }
        SixJValue {
            magnitude,
            imaginary: self.imaginary ^ rhs.imaginary,
        }
    }
}

/// The quantum 6j-symbol as a real number. An imaginary symbol is reported
/// as an internal-consistency error; see [`six_j_value`] for the phased form.
pub fn six_j(s: &SixTuple, lvl: Level) -> Result<f64> {
    let v = six_j_value(s, lvl)?;
    if v.imaginary && !v.is_zero() {
        return Err(Error::Consistency(format!(
            "6j-symbol of {:?} at r={} is imaginary (odd number of negative Δ²)",
            s.raw(),
            lvl.r()
        )));
    }
    Ok(v.re())
}

/// The quantum 6j-symbol with its phase.
pub fn six_j_value(s: &SixTuple, lvl: Level) -> Result<SixJValue> {
    require_admissible(s, lvl)?;
    SixJEvaluator::new(lvl).eval(&s.raw())
}

/// Log-domain 6j evaluation with the factorial table of one level.
///
/// All intermediate sums are taken in a canonical (sorted) order, so the
/// result is bit-identical across the 24 tetrahedral relabelings of a tuple.
#[derive(Clone, Debug)]
pub struct SixJEvaluator {
    facts: FactorialTable,
    log_zeta: f64,
}

impl SixJEvaluator {
    pub fn new(lvl: Level) -> Self {
        SixJEvaluator {
            facts: FactorialTable::new(lvl),
            log_zeta: lvl.zeta().ln(),
        }
    }

    pub fn level(&self) -> Level {
        self.facts.level()
    }

    pub fn factorials(&self) -> &FactorialTable {
        &self.facts
    }

    /// `Δ²` for an admissible triple (unchecked).
    pub fn delta_squared_raw(&self, a: u32, b: u32, c: u32) -> SignedLogValue {
        let mut parts = [(a + b - c) / 2, (b + c - a) / 2, (a + c - b) / 2];
        parts.sort_unstable();
        let top = ((a + b + c) / 2 + 1) as usize;
        let mut log = self.log_zeta;
        let mut neg = self.facts.is_negative(top);
        for p in parts {
            log += self.facts.log_abs(p as usize);
            neg ^= self.facts.is_negative(p as usize);
        }
        log -= self.facts.log_abs(top);
        SignedLogValue {
            sign: if neg { -1 } else { 1 },
            log_mag: log,
        }
    }

    /// 6j-symbol of an admissible tuple (admissibility is not rechecked).
    pub fn eval(&self, a: &[u32; 6]) -> Result<SixJValue> {
        Ok(self.eval_inner(a, false)?.0)
    }

    /// The 6j-symbol together with `log` of the same expression with every
    /// z-term taken in absolute value. Rounding error in any evaluation of
    /// the symbol scales with this bound rather than with the value.
    pub fn eval_with_bound(&self, a: &[u32; 6]) -> Result<(SixJValue, f64)> {
        self.eval_inner(a, true)
    }

    fn eval_inner(&self, a: &[u32; 6], track_abs: bool) -> Result<(SixJValue, f64)> {
        let r = self.level().r() as usize;

        let mut face_logs = [0.0f64; 4];
        let mut negative_deltas = 0u32;
        let mut t = [0usize; 4];
        for (i, slots) in FACE_SLOTS.iter().enumerate() {
            let [x, y, z] = slots.map(|s| a[s]);
            let d2 = self.delta_squared_raw(x, y, z);
            face_logs[i] = d2.log_mag;
            negative_deltas += (d2.sign < 0) as u32;
            t[i] = ((x + y + z) / 2) as usize;
        }
        let mut q = QUAD_SLOTS.map(|s| (s.iter().map(|&k| a[k]).sum::<u32>() / 2) as usize);
        t.sort_unstable();
        q.sort_unstable();
        face_logs.sort_unstable_by(f64::total_cmp);

        let (z_lo, z_hi) = (t[3], q[0]);
        let mut sum = LogSum::new();
        let mut abs_sum = LogSum::new();
        for z in z_lo..=z_hi {
            // {z+1}! contains the vanishing factor {r}.
            if z + 1 >= r {
                break;
            }
            let mut log = self.facts.log_abs(z + 1);
            let mut neg = (z % 2 == 1) ^ self.facts.is_negative(z + 1);
            for &tj in &t {
                log -= self.facts.log_abs(z - tj);
                neg ^= self.facts.is_negative(z - tj);
            }
            for &qk in &q {
                if qk - z >= r {
                    return Err(Error::Consistency(format!(
                        "denominator factorial {{{}}}! vanishes for tuple {a:?}",
                        qk - z
                    )));
                }
                log -= self.facts.log_abs(qk - z);
                neg ^= self.facts.is_negative(qk - z);
            }
            sum.push(SignedLogValue {
                sign: if neg { -1 } else { 1 },
                log_mag: log,
            });
            if track_abs {
                abs_sum.push(SignedLogValue {
                    sign: 1,
                    log_mag: log,
                });
            }
        }
        let delta_log: f64 = face_logs.iter().sum::<f64>() * 0.5;
        let abs_total = abs_sum.total();
        let bound = if abs_total.is_zero() {
            f64::NEG_INFINITY
        } else {
            delta_log - self.log_zeta + abs_total.log_mag
        };
        let s = sum.total();
        if s.is_zero() {
            return Ok((SixJValue::zero(), bound));
        }
        // (√-1)^λ · ∏ Δ(F_i) = (-1)^{λ/2} · i^{#negative Δ²} · ∏ |Δ(F_i)|
        let lambda: u32 = a.iter().sum();
        let mut sign = s.sign;
        if (lambda / 2) % 2 == 1 {
            sign = -sign;
        }
        if (negative_deltas / 2) % 2 == 1 {
            sign = -sign;
        }
        let value = SixJValue {
            magnitude: SignedLogValue {
                sign,
                log_mag: delta_log - self.log_zeta + s.log_mag,
            },
            imaginary: negative_deltas % 2 == 1,
        };
        Ok((value, bound))
    }
}

/// 6j-symbols evaluated in scalar type `T` from a factorial table, with
/// the phase kept apart: the symbol is `value · i` when `imaginary` is set.
#[derive(Clone, Debug)]
pub struct ScalarSixJ<T> {
    level: Level,
    facts: Vec<T>,
    zeta: T,
}

impl<T: Real> ScalarSixJ<T> {
    pub fn new(table: &BracketTable<T>) -> Self {
        let r = table.level().r() as usize;
        let mut facts = Vec::with_capacity(r);
        facts.push(T::one());
        for n in 1..r {
            let next = facts[n - 1].clone() * table.bracket(n);
            facts.push(next);
        }
        ScalarSixJ {
            level: table.level(),
            facts,
            zeta: table.bracket(1),
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// `(value, imaginary)` for an admissible tuple (not rechecked).
    pub fn eval(&self, a: &[u32; 6]) -> Result<(T, bool)> {
        let r = self.level.r() as usize;
        let f = |n: u32| &self.facts[n as usize];
        let mut delta_sq = T::one();
        let mut negative = 0u32;
        let mut t = [0u32; 4];
        for (i, slots) in FACE_SLOTS.iter().enumerate() {
            let [x, y, z] = slots.map(|k| a[k]);
            let d2 = self.zeta.clone()
                * f((x + y - z) / 2).clone()
                * f((y + z - x) / 2).clone()
                * f((x + z - y) / 2).clone()
                / f((x + y + z) / 2 + 1).clone();
            if d2.is_negative() {
                negative += 1;
            }
            delta_sq = delta_sq * d2.abs();
            t[i] = (x + y + z) / 2;
        }
        let q = QUAD_SLOTS.map(|s| s.iter().map(|&k| a[k]).sum::<u32>() / 2);
        let (z_lo, z_hi) = (*t.iter().max().unwrap(), *q.iter().min().unwrap());
        let mut sum = T::zero();
        for z in z_lo..=z_hi {
            if z as usize + 1 >= r {
                break;
            }
            let mut den = T::one();
            for &tj in &t {
                den = den * f(z - tj).clone();
            }
            for &qk in &q {
                den = den * f(qk - z).clone();
            }
            let term = f(z + 1).clone() / den;
            sum = if z % 2 == 0 { sum + term } else { sum - term };
        }
        let lambda: u32 = a.iter().sum();
        let mut value = delta_sq.sqrt() * sum / self.zeta.clone();
        if ((lambda / 2) + negative / 2) % 2 == 1 {
            value = -value;
        }
        Ok((value, negative % 2 == 1))
    }
}

/// Literal evaluation of the 6j-symbol formula in scalar type `T`: principal
/// complex square roots for each `Δ`, `(√-1)^λ` as a complex power, and naive
/// factorial products. Independent of [`SixJEvaluator`]. The result is
/// either real or purely imaginary.
pub fn six_j_direct<T: Real>(a: &[u32; 6], table: &BracketTable<T>) -> Result<Complex<T>> {
    let lvl = table.level();
    let s = SixTuple::new(*a);
    require_admissible(&s, lvl)?;
    let zeta = table.bracket(1);
    let f = |n: u32| table.factorial(n as usize);

    let mut delta_prod = Complex::real(T::one());
    let mut t = Vec::with_capacity(4);
    for slots in FACE_SLOTS {
        let [x, y, z] = slots.map(|k| a[k]);
        let d2 = zeta.clone() * f((x + y - z) / 2) * f((y + z - x) / 2) * f((x + z - y) / 2)
            / f((x + y + z) / 2 + 1);
        delta_prod = delta_prod.mul(&Complex::sqrt_of_real(&d2));
        t.push((x + y + z) / 2);
    }
    let q: Vec<u32> = QUAD_SLOTS
        .iter()
        .map(|s| s.iter().map(|&k| a[k]).sum::<u32>() / 2)
        .collect();
    let z_lo = *t.iter().max().unwrap();
    let z_hi = *q.iter().min().unwrap();

    let mut sum = T::zero();
    for z in z_lo..=z_hi {
        let mut den = T::one();
        for &tj in &t {
            den = den * f(z - tj);
        }
        for &qk in &q {
            den = den * f(qk - z);
        }
        let term = f(z + 1) / den;
        sum = if z % 2 == 0 { sum + term } else { sum - term };
    }

    let lambda: u32 = a.iter().sum();
    let value = Complex::<T>::i()
        .powu(lambda)
        .mul(&delta_prod)
        .scale(&(sum / zeta));
    if !value.im.is_zero() && !value.re.is_zero() {
        return Err(Error::Consistency(format!(
            "direct 6j-symbol of {a:?} at r={} is neither real nor imaginary",
            lvl.r()
        )));
    }
    Ok(value)
}

/// The 24 relabelings of a tuple induced by permuting tetrahedron vertices.
/// Entry `p` maps slot `s` to slot `p[s]`.
pub fn tetrahedral_relabelings() -> Vec<[usize; 6]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let sigma = [a, b, c, d];
                    let mut seen = [false; 4];
                    if sigma.iter().any(|&x| std::mem::replace(&mut seen[x], true)) {
                        continue;
                    }
                    let mut p = [0usize; 6];
                    for (s, &(i, j)) in EDGE_VERTICES.iter().enumerate() {
                        p[s] = slot_of(sigma[i], sigma[j]);
                    }
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Applies a relabeling from [`tetrahedral_relabelings`].
pub fn relabel(a: &[u32; 6], p: &[usize; 6]) -> [u32; 6] {
    let mut out = [0u32; 6];
    for s in 0..6 {
        out[p[s]] = a[s];
    }
    out
}

/// All admissible tuples at a level, in lexicographic order.
pub fn admissible_tuples(lvl: Level) -> Vec<[u32; 6]> {
    let r = lvl.r();
    let colors: Vec<u32> = lvl.colors().collect();
    let mut out = Vec::new();
    for &a1 in &colors {
        for &a2 in &colors {
            for &a3 in &colors {
                if !admissible_raw(a1, a2, a3, r) {
                    continue;
                }
                for &a4 in &colors {
                    for &a5 in &colors {
                        if !admissible_raw(a3, a4, a5, r) {
                            continue;
                        }
                        for &a6 in &colors {
                            if admissible_raw(a2, a4, a6, r) && admissible_raw(a1, a5, a6, r) {
                                out.push([a1, a2, a3, a4, a5, a6]);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::BigReal;
    use num_traits::Zero;

    fn lvl(r: i64) -> Level {
        Level::new(r).unwrap()
    }

    const GOLDEN_SQ: f64 = 2.618_033_988_749_895;

    #[test]
    fn slot_convention_realizes_faces() {
        // F_i is the face opposite one vertex: its three slots are exactly the
        // edges avoiding that vertex.
        let opposite = [3, 1, 2, 0];
        for (i, slots) in FACE_SLOTS.iter().enumerate() {
            for &s in slots {
                let (x, y) = EDGE_VERTICES[s];
                assert!(x != opposite[i] && y != opposite[i]);
            }
        }
        for (s, &(i, j)) in EDGE_VERTICES.iter().enumerate() {
            let opp = (0..6)
                .find(|&t| {
                    let (x, y) = EDGE_VERTICES[t];
                    x != i && x != j && y != i && y != j
                })
                .unwrap();
            assert_eq!(opp, (s + 3) % 6);
        }
        for quad in QUAD_SLOTS {
            // a quad is two opposite pairs
            let pairs: Vec<usize> = quad.iter().map(|&s| s % 3).collect();
            assert_eq!(pairs.iter().filter(|&&p| p == pairs[0]).count(), 2);
        }
    }

    #[test]
    fn triple_admissibility_examples() {
        assert!(is_admissible_triple(&Triple::new(0, 0, 0), lvl(5)).unwrap());
        assert!(!is_admissible_triple(&Triple::new(0, 0, 2), lvl(5)).unwrap());
        assert!(is_admissible_triple(&Triple::new(2, 2, 2), lvl(5)).unwrap());
        assert!(is_admissible_triple(&Triple::new(1, 0, 1), lvl(5)).is_err());
        assert!(is_admissible_triple(&Triple::new(4, 0, 4), lvl(5)).is_err());
    }

    #[test]
    fn six_tuple_admissibility_examples() {
        assert!(is_admissible_six_tuple(&SixTuple::new([0; 6]), lvl(5)).unwrap());
        assert!(is_admissible_six_tuple(&SixTuple::new([2; 6]), lvl(5)).unwrap());
        let bad = SixTuple::new([2, 0, 0, 0, 0, 0]);
        assert!(!is_admissible_six_tuple(&bad, lvl(5)).unwrap());
        assert_eq!(first_inadmissible_face(&bad, lvl(5)).unwrap(), Some(1));
        assert_eq!(
            six_j(&bad, lvl(5)).unwrap_err().to_string(),
            "face F1 inadmissible"
        );
    }

    #[test]
    fn delta_squared_examples() {
        let d0 = delta_squared(&Triple::new(0, 0, 0), lvl(11)).unwrap();
        assert_eq!((d0.sign, d0.log_mag), (1, 0.0));
        let d = delta_squared(&Triple::new(2, 2, 2), lvl(5)).unwrap();
        assert_eq!(d.sign, 1);
        assert!((d.to_value() - GOLDEN_SQ).abs() < 1e-13);
        let big = BracketTable::<BigReal>::new(lvl(7));
        let z = big.bracket(1);
        let oracle = (z * big.factorial(2) * big.factorial(0) * big.factorial(0)
            / big.factorial(3))
        .to_f64();
        let d = delta_squared(&Triple::new(2, 2, 0), lvl(7)).unwrap();
        assert_eq!(d.sign, 1);
        assert!(oracle > 0.0 && ((d.to_value() - oracle) / oracle).abs() < 1e-14);
        assert!(delta_squared(&Triple::new(0, 0, 2), lvl(7)).is_err());
    }

    #[test]
    fn six_j_examples() {
        for r in [5, 7, 9, 31] {
            assert!((six_j(&SixTuple::new([0; 6]), lvl(r)).unwrap() - 1.0).abs() < 1e-14);
        }
        let v = six_j(&SixTuple::new([2; 6]), lvl(5)).unwrap();
        assert!((v + GOLDEN_SQ).abs() < 1e-13, "{v}");
        let oracle = six_j_direct(&[2; 6], &BracketTable::<BigReal>::new(lvl(5))).unwrap();
        assert!(oracle.im.is_zero());
        assert!((oracle.re.to_f64() + GOLDEN_SQ).abs() < 1e-15);
    }

    #[test]
    fn odd_negative_faces_give_imaginary_symbols() {
        // faces (0,2,2) have Δ² = {1}/{3} < 0 at r=5
        let s = SixTuple::new([0, 0, 0, 2, 2, 2]);
        let v = six_j_value(&s, lvl(5)).unwrap();
        assert!(v.imaginary);
        let oracle = six_j_direct(&s.raw(), &BracketTable::<BigReal>::new(lvl(5))).unwrap();
        assert!(oracle.re.is_zero());
        assert!((v.im() - oracle.im.to_f64()).abs() < 1e-14);
        assert!(matches!(six_j(&s, lvl(5)), Err(Error::Consistency(_))));
    }

    fn assert_matches_oracle(v: SixJValue, oracle: &Complex<BigReal>, tol: f64, a: &[u32; 6]) {
        let (re, im) = (oracle.re.to_f64(), oracle.im.to_f64());
        let scale = re.abs().max(im.abs());
        assert!(
            (v.re() - re).abs() <= tol * scale,
            "{a:?}: re {} vs {re}",
            v.re()
        );
        assert!(
            (v.im() - im).abs() <= tol * scale,
            "{a:?}: im {} vs {im}",
            v.im()
        );
    }

    #[test]
    fn six_j_matches_extended_precision_at_r7() {
        let l = lvl(7);
        let ev = SixJEvaluator::new(l);
        let big = BracketTable::<BigReal>::new(l);
        for a in admissible_tuples(l) {
            let oracle = six_j_direct(&a, &big).unwrap();
            assert_matches_oracle(ev.eval(&a).unwrap(), &oracle, 1e-10, &a);
        }
    }

    #[test]
    fn scalar_evaluator_matches_log_domain() {
        for r in [5, 7, 9, 11] {
            let l = lvl(r);
            let ev = SixJEvaluator::new(l);
            let big = ScalarSixJ::new(&BracketTable::<BigReal>::new(l));
            let plain = ScalarSixJ::new(&BracketTable::<f64>::new(l));
            for a in admissible_tuples(l) {
                let (v, bound) = ev.eval_with_bound(&a).unwrap();
                let (x, imag) = big.eval(&a).unwrap();
                let x = x.to_f64();
                assert_eq!(imag, v.imaginary);
                let fast = if imag { v.im() } else { v.re() };
                assert!((fast - x).abs() <= 1e-12 * x.abs(), "{a:?}");
                assert!(bound >= v.log_abs() - 1e-12);
                let (y, _) = plain.eval(&a).unwrap();
                assert!((y - x).abs() <= 1e-12 * bound.exp());
            }
        }
    }

    #[test]
    fn product_of_phases() {
        let i = SixJValue {
            magnitude: SignedLogValue::from_value(2.0),
            imaginary: true,
        };
        let sq = i * i;
        assert!(!sq.imaginary);
        assert!((sq.re() + 4.0).abs() < 1e-14);
        assert_eq!((i * SixJValue::one()).im(), i.im());
    }

    #[test]
    fn relabelings_form_the_tetrahedral_group() {
        let ps = tetrahedral_relabelings();
        assert_eq!(ps.len(), 24);
        let distinct: std::collections::HashSet<_> = ps.iter().collect();
        assert_eq!(distinct.len(), 24);
        for p in &ps {
            // opposite pairs stay opposite
            for s in 0..3 {
                assert_eq!((p[s] + 3) % 6, p[s + 3]);
            }
        }
    }

    #[test]
    fn symmetry_is_exact_at_small_levels() {
        let ps = tetrahedral_relabelings();
        for r in [5, 7, 9] {
            let ev = SixJEvaluator::new(lvl(r));
            for a in admissible_tuples(lvl(r)) {
                let base = ev.eval(&a).unwrap();
                for p in &ps {
                    let b = relabel(&a, p);
                    assert!(is_admissible_six_tuple(&SixTuple::new(b), lvl(r)).unwrap());
                    let v = ev.eval(&b).unwrap();
                    assert_eq!(v.imaginary, base.imaginary);
                    assert_eq!(v.magnitude.sign, base.magnitude.sign);
                    assert_eq!(
                        v.magnitude.log_mag.to_bits(),
                        base.magnitude.log_mag.to_bits(),
                        "{a:?} -> {b:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn phase_is_a_power_of_i_through_r15() {
        for r in (5..=15).step_by(2) {
            let ev = SixJEvaluator::new(lvl(r));
            for a in admissible_tuples(lvl(r)) {
                let v = ev.eval(&a).unwrap();
                let negative = (0..4)
                    .filter(|&f| {
                        let [x, y, z] = FACE_SLOTS[f].map(|k| a[k]);
                        ev.delta_squared_raw(x, y, z).sign < 0
                    })
                    .count();
                assert_eq!(v.imaginary, negative % 2 == 1);
            }
        }
    }

    #[test]
    fn log_domain_agrees_with_direct_double_precision() {
        for r in (5..=21).step_by(2) {
            let l = lvl(r);
            let ev = SixJEvaluator::new(l);
            let direct = BracketTable::<f64>::new(l);
            let mut worst = 0.0f64;
            for a in admissible_tuples(l) {
                let fast = ev.eval(&a).unwrap();
                let plain = six_j_direct(&a, &direct).unwrap();
                let (fv, pv) = if fast.imaginary {
                    (fast.im(), plain.im)
                } else {
                    (fast.re(), plain.re)
                };
                if pv.abs() > 1e-200 {
                    worst = worst.max(((fv - pv) / pv).abs());
                }
            }
            assert!(worst < 1e-9, "r={r}: worst relative gap {worst:e}");
        }
    }

    #[test]
    fn scan_order_matches_unpruned_enumeration() {
        let l = lvl(7);
        let colors: Vec<u32> = l.colors().collect();
        let mut brute = Vec::new();
        for i in 0..colors.len().pow(6) {
            let mut k = i;
            let mut a = [0u32; 6];
            for s in (0..6).rev() {
                a[s] = colors[k % colors.len()];
                k /= colors.len();
            }
            if is_admissible_six_tuple(&SixTuple::new(a), l).unwrap() {
                brute.push(a);
            }
        }
        assert_eq!(admissible_tuples(l), brute);
    }
}
