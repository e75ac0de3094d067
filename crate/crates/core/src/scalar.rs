//! Scalar coefficient fields: exact rationals, the real quadratic field
//! ℚ(√5), and binary floats.
//!
//! All algebra tables and elements are generic over [`Scalar`]. The two exact
//! fields compare and test for zero exactly; `f64` goes through tolerances.
//! Conversions between scalar types are explicit (see
//! [`CommAlgebra::map_scalars`](crate::algebra::CommAlgebra::map_scalars)),
//! never silent.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational scalar. Wraps an arbitrary-precision reduced fraction.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rat(BigRational);

impl Rat {
    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn from_i64(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q`; panics if `q == 0`.
    pub fn from_frac(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Exact square root, when the rational is a perfect square.
    pub fn sqrt_exact(&self) -> Option<Rat> {
        if self.0.is_negative() {
            return None;
        }
        let n = self.0.numer().sqrt();
        let d = self.0.denom().sqrt();
        if &(&n * &n) == self.0.numer() && &(&d * &d) == self.0.denom() {
            Some(Rat(BigRational::new(n, d)))
        } else {
            None
        }
    }

    pub fn parse(s: &str) -> Result<Rat, String> {
        let s = s.trim();
        let r = if let Some((p, q)) = s.split_once('/') {
            let p = BigInt::from_str(p.trim()).map_err(|e| e.to_string())?;
            let q = BigInt::from_str(q.trim()).map_err(|e| e.to_string())?;
            if q.is_zero() {
                return Err(format!("zero denominator in rational \"{s}\""));
            }
            BigRational::new(p, q)
        } else {
            BigRational::from_integer(BigInt::from_str(s).map_err(|e| e.to_string())?)
        };
        Ok(Rat(r))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Rat {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct RatVisitor;

impl Visitor<'_> for RatVisitor {
    type Value = Rat;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a rational as \"p/q\" string or integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<Rat, E> {
        Rat::parse(v).map_err(de::Error::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<Rat, E> {
        Ok(Rat::from_i64(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<Rat, E> {
        Ok(Rat(BigRational::from_integer(BigInt::from(v))))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Rat, D::Error> {
        deserializer.deserialize_any(RatVisitor)
    }
}

/// Element of ℚ(√5), stored as `a + b√5` with exact rational `a`, `b`.
///
/// Needed so golden-ratio idempotents with coefficients ½(1 ± √5) are
/// exactly idempotent rather than idempotent to a tolerance.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Sqrt5 {
    pub a: Rat,
    pub b: Rat,
}

impl Sqrt5 {
    pub fn new(a: Rat, b: Rat) -> Self {
        Sqrt5 { a, b }
    }

    pub fn from_rat(a: Rat) -> Self {
        Sqrt5 { a, b: Rat::zero() }
    }

    /// √5 itself.
    pub fn sqrt5() -> Self {
        Sqrt5 { a: Rat::zero(), b: Rat::one() }
    }

    /// ½(1 + √5), the golden ratio.
    pub fn golden_plus() -> Self {
        Sqrt5 { a: Rat::from_frac(1, 2), b: Rat::from_frac(1, 2) }
    }

    /// ½(1 − √5) ≈ −0.618, the negative conjugate root.
    pub fn golden_minus() -> Self {
        Sqrt5 { a: Rat::from_frac(1, 2), b: Rat::from_frac(-1, 2) }
    }

    pub fn is_rational(&self) -> bool {
        Scalar::is_zero(&self.b)
    }
}

impl fmt::Display for Sqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if Scalar::is_zero(&self.b) {
            write!(f, "{}", self.a)
        } else if Scalar::is_zero(&self.a) {
            write!(f, "{}*sqrt5", self.b)
        } else {
            write!(f, "{}{}{}*sqrt5", self.a, if self.b.0.is_negative() { "" } else { "+" }, self.b)
        }
    }
}

impl fmt::Debug for Sqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Sqrt5 {
    fn serialize<Se: Serializer>(&self, serializer: Se) -> Result<Se::Ok, Se::Error> {
        (self.a.to_string(), self.b.to_string()).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Sqrt5 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Sqrt5, D::Error> {
        let (a, b) = <(Rat, Rat)>::deserialize(deserializer)?;
        Ok(Sqrt5 { a, b })
    }
}

/// Common interface of the three coefficient fields.
///
/// Methods use spelled-out names (`plus`, `times`, ...) instead of the
/// operator traits so that generic code never collides with `std::ops`
/// implementations on the concrete types.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    /// Whether equality and zero tests are exact for this field.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(r: &Rat) -> Self;
    fn is_zero(&self) -> bool;
    fn negated(&self) -> Self;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inverse(&self) -> Option<Self>;
    fn to_f64(&self) -> f64;
    /// Total order given by the real embedding.
    fn cmp_real(&self, rhs: &Self) -> Ordering;
    /// Exact square root within the field, when one exists. For `f64` this
    /// is the floating square root of nonnegative values.
    fn sqrt_in_field(&self) -> Option<Self>;

    fn from_i64(n: i64) -> Self {
        Self::from_rat(&Rat::from_i64(n))
    }

    fn abs(&self) -> Self {
        if self.cmp_real(&Self::zero()) == Ordering::Less {
            self.negated()
        } else {
            self.clone()
        }
    }

    fn sign(&self) -> Ordering {
        self.cmp_real(&Self::zero())
    }

    /// Zero test at tolerance: exact fields ignore `tol`.
    fn is_negligible(&self, tol: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            self.to_f64().abs() <= tol
        }
    }
}

impl Scalar for Rat {
    const EXACT: bool = true;

    fn zero() -> Self {
        Rat::zero()
    }

    fn one() -> Self {
        Rat::one()
    }

    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn negated(&self) -> Self {
        Rat(-self.0.clone())
    }

    fn plus(&self, rhs: &Self) -> Self {
        Rat(&self.0 + &rhs.0)
    }

    fn minus(&self, rhs: &Self) -> Self {
        Rat(&self.0 - &rhs.0)
    }

    fn times(&self, rhs: &Self) -> Self {
        Rat(&self.0 * &rhs.0)
    }

    fn inverse(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rat(self.0.recip()))
        }
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    fn cmp_real(&self, rhs: &Self) -> Ordering {
        self.0.cmp(&rhs.0)
    }

    fn sqrt_in_field(&self) -> Option<Self> {
        self.sqrt_exact()
    }
}

impl Scalar for Sqrt5 {
    const EXACT: bool = true;

    fn zero() -> Self {
        Sqrt5::from_rat(Rat::zero())
    }

    fn one() -> Self {
        Sqrt5::from_rat(Rat::one())
    }

    fn from_rat(r: &Rat) -> Self {
        Sqrt5::from_rat(r.clone())
    }

    fn is_zero(&self) -> bool {
        Scalar::is_zero(&self.a) && Scalar::is_zero(&self.b)
    }

    fn negated(&self) -> Self {
        Sqrt5 { a: self.a.negated(), b: self.b.negated() }
    }

    fn plus(&self, rhs: &Self) -> Self {
        Sqrt5 { a: self.a.plus(&rhs.a), b: self.b.plus(&rhs.b) }
    }

    fn minus(&self, rhs: &Self) -> Self {
        Sqrt5 { a: self.a.minus(&rhs.a), b: self.b.minus(&rhs.b) }
    }

    fn times(&self, rhs: &Self) -> Self {
        let five = Rat::from_i64(5);
        Sqrt5 {
            a: self.a.times(&rhs.a).plus(&self.b.times(&rhs.b).times(&five)),
            b: self.a.times(&rhs.b).plus(&self.b.times(&rhs.a)),
        }
    }

    fn inverse(&self) -> Option<Self> {
        // (a + b√5)⁻¹ = (a − b√5) / (a² − 5b²); the quotient is nonzero for
        // nonzero input because 5 is not a rational square.
        if Scalar::is_zero(self) {
            return None;
        }
        let five = Rat::from_i64(5);
        let norm = self.a.times(&self.a).minus(&self.b.times(&self.b).times(&five));
        let inv = norm.inverse().expect("field norm of nonzero element");
        Some(Sqrt5 { a: self.a.times(&inv), b: self.b.negated().times(&inv) })
    }

    fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * 5f64.sqrt()
    }

    fn cmp_real(&self, rhs: &Self) -> Ordering {
        let d = self.minus(rhs);
        let sa = d.a.sign();
        let sb = d.b.sign();
        match (sa, sb) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
            (Ordering::Less, Ordering::Less) => Ordering::Less,
            // Mixed signs: a + b√5 vs 0 decided by a² vs 5b².
            (Ordering::Greater, Ordering::Less) => {
                let a2 = d.a.times(&d.a);
                let b25 = d.b.times(&d.b).times(&Rat::from_i64(5));
                a2.cmp_real(&b25)
            }
            (Ordering::Less, Ordering::Greater) => {
                let a2 = d.a.times(&d.a);
                let b25 = d.b.times(&d.b).times(&Rat::from_i64(5));
                b25.cmp_real(&a2)
            }
        }
    }

    fn sqrt_in_field(&self) -> Option<Self> {
        if self.sign() == Ordering::Less {
            return None;
        }
        if Scalar::is_zero(self) {
            return Some(Scalar::zero());
        }
        let five = Rat::from_i64(5);
        if Scalar::is_zero(&self.b) {
            // √(a): either rational, or a pure multiple of √5 when a/5 is a square.
            if let Some(s) = self.a.sqrt_exact() {
                return Some(Sqrt5::from_rat(s));
            }
            let a_over_5 = self.a.times(&five.inverse().unwrap());
            if let Some(q) = a_over_5.sqrt_exact() {
                return Some(Sqrt5 { a: Rat::zero(), b: q });
            }
            return None;
        }
        // (p + q√5)² = a + b√5 with b ≠ 0 forces p ≠ 0, q = b/(2p) and
        // p² = (a ± √(a² − 5b²)) / 2.
        let disc = self.a.times(&self.a).minus(&self.b.times(&self.b).times(&five));
        let s = disc.sqrt_exact()?;
        let half = Rat::from_frac(1, 2);
        for cand in [self.a.plus(&s).times(&half), self.a.minus(&s).times(&half)] {
            if let Some(p) = cand.sqrt_exact() {
                if !Scalar::is_zero(&p) {
                    let q = self.b.times(&p.plus(&p).inverse().unwrap());
                    let root = Sqrt5 { a: p, b: q };
                    if root.times(&root) == *self {
                        return Some(if root.sign() == Ordering::Less { root.negated() } else { root });
                    }
                }
            }
        }
        None
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_rat(r: &Rat) -> Self {
        r.to_f64()
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn negated(&self) -> Self {
        -self
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn inverse(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn cmp_real(&self, rhs: &Self) -> Ordering {
        self.total_cmp(rhs)
    }

    fn sqrt_in_field(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(f64::sqrt(*self))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_display_roundtrip() {
        for s in ["0", "7", "-3", "1/2", "-22/7"] {
            let r = Rat::parse(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert_eq!(Rat::parse("4/6").unwrap().to_string(), "2/3");
        assert!(Rat::parse("1/0").is_err());
    }

    #[test]
    fn rational_sqrt() {
        assert_eq!(Rat::from_frac(9, 4).sqrt_exact(), Some(Rat::from_frac(3, 2)));
        assert_eq!(Rat::from_i64(2).sqrt_exact(), None);
        assert_eq!(Rat::from_i64(-4).sqrt_exact(), None);
    }

    #[test]
    fn golden_ratio_is_quadratic_root() {
        // φ² = φ + 1 for both roots of t² − t − 1.
        for phi in [Sqrt5::golden_plus(), Sqrt5::golden_minus()] {
            assert_eq!(phi.times(&phi), phi.plus(&Sqrt5::one()));
        }
        assert!(Sqrt5::golden_minus().sign() == Ordering::Less);
        assert!(Sqrt5::golden_plus().sign() == Ordering::Greater);
    }

    #[test]
    fn sqrt5_field_ops() {
        let x = Sqrt5::new(Rat::from_frac(2, 3), Rat::from_frac(-1, 7));
        let inv = x.inverse().unwrap();
        assert_eq!(x.times(&inv), Sqrt5::one());
        assert_eq!(Sqrt5::sqrt5().times(&Sqrt5::sqrt5()), Sqrt5::from_rat(Rat::from_i64(5)));
    }

    #[test]
    fn sqrt5_ordering_mixed_signs() {
        // 9/4 − √5 > 0 since (9/4)² = 81/16 > 5; 2 − √5 < 0.
        let x = Sqrt5::new(Rat::from_frac(9, 4), Rat::from_i64(-1));
        assert_eq!(x.sign(), Ordering::Greater);
        let y = Sqrt5::new(Rat::from_i64(2), Rat::from_i64(-1));
        assert_eq!(y.sign(), Ordering::Less);
    }

    #[test]
    fn sqrt5_sqrt_in_field() {
        // √(9/4) rational; √5 itself; √(6 + 2√5) = 1 + √5; √2 absent.
        assert_eq!(
            Sqrt5::from_rat(Rat::from_frac(9, 4)).sqrt_in_field(),
            Some(Sqrt5::from_rat(Rat::from_frac(3, 2)))
        );
        assert_eq!(Sqrt5::from_rat(Rat::from_i64(5)).sqrt_in_field(), Some(Sqrt5::sqrt5()));
        let x = Sqrt5::new(Rat::from_i64(6), Rat::from_i64(2));
        assert_eq!(x.sqrt_in_field(), Some(Sqrt5::new(Rat::one(), Rat::one())));
        assert_eq!(Sqrt5::from_rat(Rat::from_i64(2)).sqrt_in_field(), None);
        assert_eq!(Sqrt5::from_rat(Rat::from_i64(-1)).sqrt_in_field(), None);
    }

    #[test]
    fn scalar_serde() {
        let r: Rat = serde_json::from_str("\"-5/3\"").unwrap();
        assert_eq!(r, Rat::from_frac(-5, 3));
        let r: Rat = serde_json::from_str("4").unwrap();
        assert_eq!(r, Rat::from_i64(4));
        let s: Sqrt5 = serde_json::from_str("[\"1/2\", \"-1/2\"]").unwrap();
        assert_eq!(s, Sqrt5::golden_minus());
        assert_eq!(serde_json::to_string(&s).unwrap(), "[\"1/2\",\"-1/2\"]");
    }
}
