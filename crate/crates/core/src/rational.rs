//! Exact arithmetic for circle values and torus points.
//!
//! A value of the circle group U(1) is logged additively as a reduced
//! rational in the half-open interval `[0,1)` (the additive picture of
//! `t ↦ e^{2πit}`). Torus points are vectors of such values, lattice
//! characters are integer vectors, and lifts of torus points into the
//! ambient vector group are plain rational vectors. All pairings reduce
//! mod 1 and stay exact; there is no floating point anywhere.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::Zero;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational scalar used throughout the crate.
pub type Rat = Ratio<i64>;

macro_rules! fmt_debug_as_display {
    () => {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt::Display::fmt(self, f)
        }
    };
}

/// Errors from the pairing and vector operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid rational literal {0:?}")]
    BadRational(String),
}

/// An element of ℚ/ℤ, stored as the unique representative in `[0,1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(Rat);

impl QmodZ {
    pub const fn zero() -> Self {
        QmodZ(Rat::new_raw(0, 1))
    }

    /// Reduce an arbitrary rational mod 1.
    pub fn new(q: Rat) -> Self {
        QmodZ(q - q.floor())
    }

    pub fn from_parts(num: i64, den: i64) -> Self {
        Self::new(Rat::new(num, den))
    }

    /// The canonical representative in `[0,1)`.
    pub fn lift(self) -> Rat {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero()
    }

    /// Integer scaling n·x in ℚ/ℤ.
    pub fn scale(self, n: i64) -> Self {
        Self::new(self.0 * Rat::from_integer(n))
    }

    pub fn numer(self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }
}

/// The unique representative of `q` mod 1 in `[0,1)`.
pub fn reduce_mod1(q: Rat) -> QmodZ {
    QmodZ::new(q)
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 + rhs.0)
    }
}

impl AddAssign for QmodZ {
    fn add_assign(&mut self, rhs: QmodZ) {
        *self = *self + rhs;
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 - rhs.0)
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-self.0)
    }
}

impl Mul<i64> for QmodZ {
    type Output = QmodZ;
    fn mul(self, rhs: i64) -> QmodZ {
        self.scale(rhs)
    }
}

impl Sum for QmodZ {
    fn sum<I: Iterator<Item = QmodZ>>(iter: I) -> QmodZ {
        iter.fold(QmodZ::zero(), |a, b| a + b)
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for QmodZ {
    fmt_debug_as_display!();
}

/// Parse "p/q" or a bare integer "p".
pub fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    let bad = || ArithError::BadRational(s.to_string());
    match s.split_once('/') {
        Some((num, den)) => {
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            let d: i64 = den.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

impl FromStr for QmodZ {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, ArithError> {
        parse_rat(s).map(QmodZ::new)
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// A rational vector: a lift of a torus point into the ambient group ℚⁿ ⊂ ℝⁿ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QVec(Vec<Rat>);

/// An integer vector: a lattice element of ℤⁿ or a character index of the torus.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZVec(Vec<i64>);

/// A point of the torus (ℚ/ℤ)ⁿ or of the dual torus.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QmodZVec(Vec<QmodZ>);

impl QVec {
    pub fn new(entries: Vec<Rat>) -> Self {
        QVec(entries)
    }

    pub fn zeros(n: usize) -> Self {
        QVec(vec![Rat::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Rat] {
        &self.0
    }

    pub fn scale(&self, n: i64) -> Self {
        QVec(self.0.iter().map(|r| r * Rat::from_integer(n)).collect())
    }

    /// Componentwise reduction mod 1.
    pub fn reduce(&self) -> QmodZVec {
        QmodZVec(self.0.iter().map(|&r| QmodZ::new(r)).collect())
    }

    /// True when every entry is an integer.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|r| r.is_integer())
    }

    /// Round-trip to ℤⁿ; `None` when some entry is fractional.
    pub fn to_zvec(&self) -> Option<ZVec> {
        if self.is_integral() {
            Some(ZVec(self.0.iter().map(|r| *r.numer()).collect()))
        } else {
            None
        }
    }
}

impl ZVec {
    pub fn new(entries: Vec<i64>) -> Self {
        ZVec(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ZVec(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scale(&self, n: i64) -> Self {
        ZVec(self.0.iter().map(|x| x * n).collect())
    }

    pub fn to_qvec(&self) -> QVec {
        QVec(self.0.iter().map(|&x| Rat::from_integer(x)).collect())
    }
}

impl QmodZVec {
    pub fn new(entries: Vec<QmodZ>) -> Self {
        QmodZVec(entries)
    }

    pub fn zeros(n: usize) -> Self {
        QmodZVec(vec![QmodZ::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[QmodZ] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn scale(&self, n: i64) -> Self {
        QmodZVec(self.0.iter().map(|x| x.scale(n)).collect())
    }
}

macro_rules! vec_linear_ops {
    ($t:ident, $elem:ty) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
                $t(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a + b).collect())
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
                $t(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a - b).collect())
            }
        }
        impl Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t(self.0.iter().map(|&a| -a).collect())
            }
        }
        impl Index<usize> for $t {
            type Output = $elem;
            fn index(&self, i: usize) -> &$elem {
                &self.0[i]
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "(")?;
                for (i, e) in self.0.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}", e)?;
                }
                write!(f, ")")
            }
        }
        impl fmt::Debug for $t {
            fmt_debug_as_display!();
        }
    };
}

vec_linear_ops!(QVec, Rat);
vec_linear_ops!(ZVec, i64);
vec_linear_ops!(QmodZVec, QmodZ);

impl Serialize for QVec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("{}/{}", r.numer(), r.denom()))
            .collect();
        strings.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QVec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(d)?;
        let entries = strings
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(de::Error::custom)?;
        Ok(QVec(entries))
    }
}

/// Pairing ⟨m, z⟩ = Σᵢ mᵢ·zᵢ mod 1 between a lattice character and a torus point.
///
/// Well-defined because `m` is integral.
pub fn pair(m: &ZVec, z: &QmodZVec) -> Result<QmodZ, ArithError> {
    if m.len() != z.len() {
        return Err(ArithError::LengthMismatch {
            left: m.len(),
            right: z.len(),
        });
    }
    Ok(m.entries()
        .iter()
        .zip(z.entries())
        .map(|(&mi, zi)| zi.scale(mi))
        .sum())
}

/// Pairing Σᵢ uᵢ·vᵢ mod 1 between two rational lifts.
pub fn pair_lift(u: &QVec, v: &QVec) -> Result<QmodZ, ArithError> {
    if u.len() != v.len() {
        return Err(ArithError::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let total: Rat = u
        .entries()
        .iter()
        .zip(v.entries())
        .map(|(a, b)| a * b)
        .sum();
    Ok(QmodZ::new(total))
}

/// The fixed section of the quotient map: the componentwise representative
/// in `[0,1)ⁿ`. Reducing the result mod 1 recovers the input.
pub fn section_lift(z: &QmodZVec) -> QVec {
    QVec(z.entries().iter().map(|q| q.lift()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn reduce_subtracts_integer_part() {
        assert_eq!(reduce_mod1(r(3, 2)), QmodZ::from_parts(1, 2));
    }

    #[test]
    fn reduce_wraps_negatives() {
        assert_eq!(reduce_mod1(r(-1, 4)), QmodZ::from_parts(3, 4));
    }

    #[test]
    fn reduce_collapses_integers() {
        assert_eq!(reduce_mod1(r(7, 7)), QmodZ::zero());
        assert!(reduce_mod1(r(-12, 4)).is_zero());
    }

    #[test]
    fn pair_simple() {
        let m = ZVec::new(vec![2]);
        let z = QmodZVec::new(vec![QmodZ::from_parts(1, 4)]);
        assert_eq!(pair(&m, &z).unwrap(), QmodZ::from_parts(1, 2));
    }

    #[test]
    fn pair_cancellation() {
        let m = ZVec::new(vec![1, -1]);
        let z = QmodZVec::new(vec![QmodZ::from_parts(1, 3); 2]);
        assert!(pair(&m, &z).unwrap().is_zero());
    }

    #[test]
    fn pair_reduces_mod_one() {
        let m = ZVec::new(vec![3]);
        let z = QmodZVec::new(vec![QmodZ::from_parts(5, 6)]);
        assert_eq!(pair(&m, &z).unwrap(), QmodZ::from_parts(1, 2));
    }

    #[test]
    fn pair_length_mismatch() {
        let m = ZVec::new(vec![1, 2]);
        let z = QmodZVec::new(vec![QmodZ::zero()]);
        assert_eq!(
            pair(&m, &z),
            Err(ArithError::LengthMismatch { left: 2, right: 1 })
        );
    }

    #[test]
    fn pair_lift_direct_product() {
        let u = QVec::new(vec![r(1, 2)]);
        assert_eq!(pair_lift(&u, &u).unwrap(), QmodZ::from_parts(1, 4));
    }

    #[test]
    fn pair_lift_zero_annihilates() {
        let u = QVec::zeros(3);
        let v = QVec::new(vec![r(1, 3), r(2, 5), r(7, 2)]);
        assert!(pair_lift(&u, &v).unwrap().is_zero());
    }

    #[test]
    fn pair_lift_two_components() {
        let u = QVec::new(vec![r(1, 4), r(1, 2)]);
        let v = QVec::new(vec![r(2, 3), r(1, 3)]);
        assert_eq!(pair_lift(&u, &v).unwrap(), QmodZ::from_parts(1, 3));
    }

    #[test]
    fn section_is_identity_on_fundamental_domain() {
        let z = QmodZVec::new(vec![QmodZ::from_parts(1, 2)]);
        assert_eq!(section_lift(&z).entries(), &[r(1, 2)]);
        let origin = QmodZVec::zeros(2);
        assert_eq!(section_lift(&origin), QVec::zeros(2));
    }

    #[test]
    fn pairings_are_consistent_on_integral_lifts() {
        let m = ZVec::new(vec![2, -3]);
        let v = QVec::new(vec![r(5, 6), r(2, 7)]);
        let via_pair = pair(&m, &v.reduce()).unwrap();
        let via_lift = pair_lift(&m.to_qvec(), &v).unwrap();
        assert_eq!(via_pair, via_lift);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let q = QmodZ::from_parts(-1, 4);
        assert_eq!(q.to_string(), "3/4");
        assert_eq!("3/4".parse::<QmodZ>().unwrap(), q);
        assert_eq!("7".parse::<QmodZ>().unwrap(), QmodZ::zero());
        assert!("1/0".parse::<QmodZ>().is_err());
        assert!("x/2".parse::<QmodZ>().is_err());
    }
}
