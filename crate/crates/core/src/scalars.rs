//! Exact arithmetic for the ordered group of distances.
//!
//! The value group is `Q^k` with the lexicographic order. It is divisible, so
//! every element can be halved, and it carries an exact scalar action by the
//! rationals. Integer inputs (`Z^k` with the lexicographic order) embed
//! without loss.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Scalars acting on the value group.
pub type FRational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("lex rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("cannot parse rational `{0}`")]
    Parse(String),
    #[error("division by zero")]
    DivisionByZero,
}

/// An element of the totally ordered abelian group, stored as `k` exact
/// rationals compared lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LambdaScalar {
    coords: Vec<BigRational>,
}

impl LambdaScalar {
    pub fn zero(rank: usize) -> Self {
        Self {
            coords: vec![BigRational::zero(); rank],
        }
    }

    /// `(1, 0, ..., 0)`: the positive generator of the leading coordinate.
    pub fn unit(rank: usize) -> Self {
        let mut s = Self::zero(rank);
        if let Some(c) = s.coords.first_mut() {
            *c = BigRational::one();
        }
        s
    }

    pub fn new(coords: Vec<BigRational>) -> Self {
        Self { coords }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self {
            coords: values.iter().map(|&v| rat(v, 1)).collect(),
        }
    }

    /// Embeds a rational in the leading coordinate of a rank-`rank` scalar.
    pub fn from_rational(q: BigRational, rank: usize) -> Self {
        let mut s = Self::zero(rank);
        s.coords[0] = q;
        s
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn compare(&self, other: &Self) -> Result<Ordering, ScalarError> {
        if self.rank() != other.rank() {
            return Err(ScalarError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(self.lex_cmp(other))
    }

    fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.cmp(b) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }

    /// Sign of the leading nonzero coordinate.
    pub fn signum(&self) -> Ordering {
        self.coords
            .iter()
            .find(|c| !c.is_zero())
            .map_or(Ordering::Equal, |c| {
                if c.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            })
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, q: &FRational) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    pub fn scale_int(&self, m: i64) -> Self {
        if m == 1 {
            return self.clone();
        }
        let q = BigRational::from_integer(BigInt::from(m));
        self.scale(&q)
    }

    /// The unique `b` with `m * b = self`.
    pub fn div_int(&self, m: i64) -> Result<Self, ScalarError> {
        if m == 0 {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.scale(&rat(1, m)))
    }

    pub fn max(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn min(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    /// Wire form: one `"p/q"` string per coordinate.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(rational_to_string).collect()
    }

    pub fn parse_strings<S: AsRef<str>>(parts: &[S]) -> Result<Self, ScalarError> {
        parts
            .iter()
            .map(|p| parse_rational(p.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Self::new)
    }
}

/// Shorthand for the exact rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Accepts `"p/q"`, `"p"` and surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarError> {
    let s = s.trim();
    let err = || ScalarError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| err()),
    }
}

impl PartialOrd for LambdaScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on scalars of equal rank. Mixing ranks is a programming error;
/// use [`LambdaScalar::compare`] on untrusted input.
impl Ord for LambdaScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(
            self.rank(),
            other.rank(),
            "compared scalars of different lex rank"
        );
        self.lex_cmp(other)
    }
}

impl fmt::Debug for LambdaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LambdaScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            return write!(f, "{}", self.coords[0]);
        }
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for LambdaScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LambdaScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(deserializer)?;
        if parts.is_empty() {
            return Err(D::Error::custom("scalar needs at least one coordinate"));
        }
        Self::parse_strings(&parts).map_err(D::Error::custom)
    }
}

fn zip_with(a: &LambdaScalar, b: &LambdaScalar, op: impl Fn(&BigRational, &BigRational) -> BigRational) -> LambdaScalar {
    assert_eq!(a.rank(), b.rank(), "lex rank mismatch in arithmetic");
    LambdaScalar {
        coords: a.coords.iter().zip(&b.coords).map(|(x, y)| op(x, y)).collect(),
    }
}

impl Add<&LambdaScalar> for &LambdaScalar {
    type Output = LambdaScalar;
    fn add(self, rhs: &LambdaScalar) -> LambdaScalar {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl Add for LambdaScalar {
    type Output = LambdaScalar;
    fn add(self, rhs: LambdaScalar) -> LambdaScalar {
        &self + &rhs
    }
}

impl Sub<&LambdaScalar> for &LambdaScalar {
    type Output = LambdaScalar;
    fn sub(self, rhs: &LambdaScalar) -> LambdaScalar {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl Sub for LambdaScalar {
    type Output = LambdaScalar;
    fn sub(self, rhs: LambdaScalar) -> LambdaScalar {
        &self - &rhs
    }
}

impl AddAssign<&LambdaScalar> for LambdaScalar {
    fn add_assign(&mut self, rhs: &LambdaScalar) {
        assert_eq!(self.rank(), rhs.rank(), "lex rank mismatch in arithmetic");
        for (x, y) in self.coords.iter_mut().zip(&rhs.coords) {
            *x += y;
        }
    }
}

impl SubAssign<&LambdaScalar> for LambdaScalar {
    fn sub_assign(&mut self, rhs: &LambdaScalar) {
        assert_eq!(self.rank(), rhs.rank(), "lex rank mismatch in arithmetic");
        for (x, y) in self.coords.iter_mut().zip(&rhs.coords) {
            *x -= y;
        }
    }
}

impl Neg for &LambdaScalar {
    type Output = LambdaScalar;
    fn neg(self) -> LambdaScalar {
        LambdaScalar {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for LambdaScalar {
    type Output = LambdaScalar;
    fn neg(self) -> LambdaScalar {
        -&self
    }
}

impl Mul<&LambdaScalar> for &FRational {
    type Output = LambdaScalar;
    fn mul(self, rhs: &LambdaScalar) -> LambdaScalar {
        rhs.scale(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> LambdaScalar {
        LambdaScalar::from_integers(v)
    }

    #[test]
    fn compare_is_lexicographic() {
        assert_eq!(s(&[0, 5]).compare(&s(&[1, -100])), Ok(Ordering::Less));
        assert_eq!(s(&[2, 3]).compare(&s(&[2, 3])), Ok(Ordering::Equal));
        assert_eq!(s(&[1, 0]).compare(&s(&[0, 999])), Ok(Ordering::Greater));
    }

    #[test]
    fn compare_rejects_rank_mismatch() {
        assert_eq!(
            s(&[1]).compare(&s(&[1, 0])),
            Err(ScalarError::RankMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn abs_examples() {
        assert_eq!(s(&[-1, 4]).abs(), s(&[1, -4]));
        assert_eq!(s(&[0, 0]).abs(), s(&[0, 0]));
        assert_eq!(s(&[3, -7]).abs(), s(&[3, -7]));
    }

    #[test]
    fn scale_examples() {
        assert_eq!(s(&[4, 6]).scale(&rat(1, 2)), s(&[2, 3]));
        assert_eq!(s(&[4, 6]).scale(&rat(0, 1)), s(&[0, 0]));
        assert_eq!(s(&[1, 0]).scale(&rat(-1, 1)), s(&[-1, 0]));
    }

    #[test]
    fn divisible() {
        let a = s(&[3, -7]);
        let b = a.div_int(-4).unwrap();
        assert_eq!(b.scale_int(-4), a);
        assert_eq!(a.div_int(0), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn wire_format() {
        let a = LambdaScalar::new(vec![rat(1, 2), rat(-3, 1)]);
        assert_eq!(a.to_strings(), vec!["1/2", "-3/1"]);
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"["1/2","-3/1"]"#);
        let back: LambdaScalar = serde_json::from_str(r#"["2/4"," -3 "]"#).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<LambdaScalar>(r#"["1/0"]"#).is_err());
        assert!(serde_json::from_str::<LambdaScalar>(r#"[]"#).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(s(&[8]).to_string(), "8");
        assert_eq!(LambdaScalar::new(vec![rat(1, 2)]).to_string(), "1/2");
        assert_eq!(s(&[1, -4]).to_string(), "(1, -4)");
    }
}
