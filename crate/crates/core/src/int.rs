//! Arbitrary-precision integers with an inline fast path.
//!
//! Values that fit in an `i64` are stored inline; everything else spills to a
//! heap-allocated [`BigInt`]. Every operation is exact: machine arithmetic is
//! done in `i128` and demoted back when the result fits.

use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Integer(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    // invariant: never fits in an i64
    Big(Box<BigInt>),
}

/// Largest magnitude emitted as a bare JSON number (2^53, exact in IEEE doubles).
const JSON_SAFE: i64 = 1 << 53;

impl Integer {
    pub const ZERO: Integer = Integer(Repr::Small(0));
    pub const ONE: Integer = Integer(Repr::Small(1));

    fn from_i128(v: i128) -> Self {
        match i64::try_from(v) {
            Ok(s) => Integer(Repr::Small(s)),
            Err(_) => Integer(Repr::Big(Box::new(BigInt::from(v)))),
        }
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(s) => Integer(Repr::Small(s)),
            None => Integer(Repr::Big(Box::new(b))),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(s) => BigInt::from(*s),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(s) => Some(*s),
            Repr::Big(_) => None,
        }
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.to_i64().and_then(|v| usize::try_from(v).ok())
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(s) => *s < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(s) => s.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Integer {
        match &self.0 {
            Repr::Small(s) => Integer::from_i128((*s as i128).abs()),
            Repr::Big(b) => Integer::from_big(b.abs()),
        }
    }

    /// Euclidean division: `self = q*d + r` with `0 <= r < |d|`.
    pub fn div_rem_euclid(&self, d: &Integer) -> (Integer, Integer) {
        assert!(!d.is_zero(), "division by zero");
        match (&self.0, &d.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                let (a, b) = (*a as i128, *b as i128);
                (
                    Integer::from_i128(a.div_euclid(b)),
                    Integer::from_i128(a.rem_euclid(b)),
                )
            }
            _ => {
                let (a, b) = (self.to_bigint(), d.to_bigint());
                let mut r = a.mod_floor(&b);
                if r.is_negative() {
                    r += b.abs();
                }
                let q = (&a - &r) / &b;
                (Integer::from_big(q), Integer::from_big(r))
            }
        }
    }

    /// Exact quotient, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Integer) -> Option<Integer> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem_euclid(d);
        r.is_zero().then_some(q)
    }

    pub fn rem_euclid(&self, d: &Integer) -> Integer {
        self.div_rem_euclid(d).1
    }

    /// Divisibility in the usual sense; only zero is divisible by zero.
    pub fn is_multiple_of(&self, d: &Integer) -> bool {
        if d.is_zero() {
            return self.is_zero();
        }
        self.rem_euclid(d).is_zero()
    }

    /// Non-negative greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Integer) -> Integer {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                let (mut a, mut b) = ((*a as i128).abs(), (*b as i128).abs());
                while b != 0 {
                    let t = a % b;
                    a = b;
                    b = t;
                }
                Integer::from_i128(a)
            }
            _ => Integer::from_big(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    pub fn lcm(&self, other: &Integer) -> Integer {
        if self.is_zero() || other.is_zero() {
            return Integer::ZERO;
        }
        let g = self.gcd(other);
        (self.abs().div_exact(&g).expect("gcd divides")) * other.abs()
    }

    pub fn pow(&self, exp: u32) -> Integer {
        let mut result = Integer::ONE;
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Inverse modulo `m >= 2`, if `gcd(self, m) = 1`.
    pub fn mod_inverse(&self, m: &Integer) -> Option<Integer> {
        let a = self.rem_euclid(m);
        let (mut old_r, mut r) = (a, m.clone());
        let (mut old_s, mut s) = (Integer::ONE, Integer::ZERO);
        while !r.is_zero() {
            let (q, rem) = old_r.div_rem_euclid(&r);
            old_r = std::mem::replace(&mut r, rem);
            let next = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, next);
        }
        old_r.is_one().then(|| old_s.rem_euclid(m))
    }

    /// Splits `self = p^e * rest` with `p ∤ rest`; zero is returned unchanged with `e = 0`.
    pub fn split_prime_power(&self, p: &Integer) -> (u32, Integer) {
        assert!(
            p.abs() > Integer::ONE,
            "prime must have magnitude at least 2"
        );
        if self.is_zero() {
            return (0, Integer::ZERO);
        }
        let mut e = 0;
        let mut rest = self.clone();
        while let Some(q) = rest.div_exact(p) {
            rest = q;
            e += 1;
        }
        (e, rest)
    }
}

impl Default for Integer {
    fn default() -> Self {
        Integer::ZERO
    }
}

macro_rules! impl_from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Integer {
            fn from(v: $t) -> Self {
                Integer::from_i128(v as i128)
            }
        }
    )*};
}
impl_from_prim!(i8, i16, i32, i64, u8, u16, u32, u64, usize, isize);

impl From<i128> for Integer {
    fn from(v: i128) -> Self {
        Integer::from_i128(v)
    }
}

impl From<BigInt> for Integer {
    fn from(b: BigInt) -> Self {
        Integer::from_big(b)
    }
}

impl Ord for Integer {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Integer {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq<i64> for Integer {
    fn eq(&self, other: &i64) -> bool {
        matches!(self.0, Repr::Small(s) if s == *other)
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $checked:ident, $big:tt) => {
        impl $trait<&Integer> for &Integer {
            type Output = Integer;
            fn $method(self, rhs: &Integer) -> Integer {
                match (&self.0, &rhs.0) {
                    (Repr::Small(a), Repr::Small(b)) => {
                        Integer::from_i128((*a as i128).$checked(*b as i128).expect("i128 range"))
                    }
                    _ => Integer::from_big(self.to_bigint() $big rhs.to_bigint()),
                }
            }
        }
        impl $trait<Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: Integer) -> Integer {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Integer> for Integer {
            type Output = Integer;
            fn $method(self, rhs: &Integer) -> Integer {
                (&self).$method(rhs)
            }
        }
        impl $trait<Integer> for &Integer {
            type Output = Integer;
            fn $method(self, rhs: Integer) -> Integer {
                self.$method(&rhs)
            }
        }
    };
}
impl_binop!(Add, add, checked_add, +);
impl_binop!(Sub, sub, checked_sub, -);
impl_binop!(Mul, mul, checked_mul, *);

impl AddAssign<&Integer> for Integer {
    fn add_assign(&mut self, rhs: &Integer) {
        *self = &*self + rhs;
    }
}
impl AddAssign<Integer> for Integer {
    fn add_assign(&mut self, rhs: Integer) {
        *self = &*self + &rhs;
    }
}
impl SubAssign<&Integer> for Integer {
    fn sub_assign(&mut self, rhs: &Integer) {
        *self = &*self - rhs;
    }
}
impl SubAssign<Integer> for Integer {
    fn sub_assign(&mut self, rhs: Integer) {
        *self = &*self - &rhs;
    }
}
impl MulAssign<&Integer> for Integer {
    fn mul_assign(&mut self, rhs: &Integer) {
        *self = &*self * rhs;
    }
}

impl Neg for &Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        match &self.0 {
            Repr::Small(s) => Integer::from_i128(-(*s as i128)),
            Repr::Big(b) => Integer::from_big(-(**b).clone()),
        }
    }
}
impl Neg for Integer {
    type Output = Integer;
    fn neg(self) -> Integer {
        -&self
    }
}

impl Zero for Integer {
    fn zero() -> Self {
        Integer::ZERO
    }
    fn is_zero(&self) -> bool {
        Integer::is_zero(self)
    }
}

impl One for Integer {
    fn one() -> Self {
        Integer::ONE
    }
}

impl Sum for Integer {
    fn sum<I: Iterator<Item = Integer>>(iter: I) -> Self {
        iter.fold(Integer::ZERO, |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Integer> for Integer {
    fn sum<I: Iterator<Item = &'a Integer>>(iter: I) -> Self {
        iter.fold(Integer::ZERO, |acc, x| acc + x)
    }
}

impl Product for Integer {
    fn product<I: Iterator<Item = Integer>>(iter: I) -> Self {
        iter.fold(Integer::ONE, |acc, x| acc * x)
    }
}

impl<'a> Product<&'a Integer> for Integer {
    fn product<I: Iterator<Item = &'a Integer>>(iter: I) -> Self {
        iter.fold(Integer::ONE, |acc, x| acc * x)
    }
}

impl fmt::Display for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(s) => fmt::Display::fmt(s, f),
            Repr::Big(b) => fmt::Display::fmt(b, f),
        }
    }
}

impl fmt::Debug for Integer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid integer literal {0:?}")]
pub struct ParseIntegerError(String);

impl FromStr for Integer {
    type Err = ParseIntegerError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if let Ok(v) = t.parse::<i64>() {
            return Ok(Integer::from(v));
        }
        BigInt::from_str(t)
            .map(Integer::from_big)
            .map_err(|_| ParseIntegerError(s.to_string()))
    }
}

// Numbers below 2^53 in magnitude are JSON numbers; larger ones are decimal
// strings so that no consumer silently rounds them.
impl Serialize for Integer {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.to_i64() {
            Some(v) if v.abs() <= JSON_SAFE => serializer.serialize_i64(v),
            _ => serializer.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Integer {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct IntegerVisitor;
        impl Visitor<'_> for IntegerVisitor {
            type Value = Integer;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Integer, E> {
                Ok(Integer::from(v))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Integer, E> {
                Ok(Integer::from(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<Integer, E> {
                v.parse().map_err(E::custom)
            }
        }
        deserializer.deserialize_any(IntegerVisitor)
    }
}
