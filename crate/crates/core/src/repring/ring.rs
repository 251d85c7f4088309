use std::fmt;

use serde::{Deserialize, Serialize};

use crate::int::Integer;
use crate::repring::poly::{cyclotomic, IntegerPolynomial};
use crate::Error;

/// An element of `Z[x]/(xⁿ − 1)`, the representation ring of `C_n`;
/// `coeffs[k]` is the coefficient of `x^k`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawElement")]
pub struct RingElement {
    n: usize,
    coeffs: Vec<Integer>,
}

#[derive(Deserialize)]
struct RawElement {
    n: usize,
    coeffs: Vec<Integer>,
}

impl TryFrom<RawElement> for RingElement {
    type Error = Error;
    fn try_from(raw: RawElement) -> Result<Self, Error> {
        RingElement::new(raw.n, raw.coeffs)
    }
}

impl RingElement {
    pub fn new(n: usize, coeffs: Vec<Integer>) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "the group order must be at least 1".into(),
            ));
        }
        if coeffs.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for n = {n}",
                coeffs.len()
            )));
        }
        Ok(RingElement { n, coeffs })
    }

    pub fn from_i64(n: usize, coeffs: &[i64]) -> Result<Self, Error> {
        Self::new(n, coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    /// Reduces an arbitrary polynomial modulo `xⁿ − 1`.
    pub fn from_polynomial(n: usize, f: &IntegerPolynomial) -> Self {
        assert!(n >= 1);
        let mut coeffs = vec![Integer::ZERO; n];
        for (k, c) in f.coeffs().iter().enumerate() {
            coeffs[k % n] += c;
        }
        RingElement { n, coeffs }
    }

    pub fn zero(n: usize) -> Self {
        assert!(n >= 1);
        RingElement {
            n,
            coeffs: vec![Integer::ZERO; n],
        }
    }

    pub fn scalar(n: usize, c: impl Into<Integer>) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[0] = c.into();
        e
    }

    pub fn one(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    /// `x^k`.
    pub fn x_pow(n: usize, k: usize) -> Self {
        let mut e = Self::zero(n);
        e.coeffs[k % n] = Integer::ONE;
        e
    }

    pub fn modulus(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Integer::is_zero)
    }

    /// The representative of degree `< n`.
    pub fn lift(&self) -> IntegerPolynomial {
        IntegerPolynomial::new(self.coeffs.clone())
    }

    fn check(&self, other: &Self) -> Result<(), Error> {
        if self.n != other.n {
            return Err(Error::ModulusMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        Ok(RingElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        Ok(RingElement {
            n: self.n,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        self.check(other)?;
        let n = self.n;
        let mut coeffs = vec![Integer::ZERO; n];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                coeffs[(i + j) % n] += a * b;
            }
        }
        Ok(RingElement { n, coeffs })
    }

    pub fn scale(&self, c: &Integer) -> Self {
        RingElement {
            n: self.n,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(self.n), |acc, _| {
            acc.mul(self).expect("same modulus")
        })
    }

    /// Multiplication by `1 − x^a`.
    fn times_one_minus_x_pow(&self, a: usize) -> Self {
        let n = self.n;
        let mut coeffs = self.coeffs.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[(k + a) % n] -= c;
        }
        RingElement { n, coeffs }
    }

    /// Every coefficient is divisible by `q`.
    pub fn is_divisible_by(&self, q: &Integer) -> bool {
        self.coeffs.iter().all(|c| c.is_multiple_of(q))
    }

    /// `self / q`, when every coefficient is divisible by `q`.
    pub fn div_exact(&self, q: &Integer) -> Option<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.div_exact(q))
            .collect::<Option<Vec<_>>>()?;
        Some(RingElement { n: self.n, coeffs })
    }

    /// Decides exactly whether `F(ζ^u) = c` for a primitive `n`-th root of unity `ζ`,
    /// by testing `Φ_n | F(x^u) − c` in `Z[x]`.
    pub fn value_at_root_is(&self, u: usize, c: &Integer) -> bool {
        let g = self
            .lift()
            .compose_power(u)
            .sub(&IntegerPolynomial::constant(c.clone()));
        g.is_divisible_by(&cyclotomic(self.n))
    }
}

/// Equality with a modulus check.
pub fn ring_eq(a: &RingElement, b: &RingElement) -> Result<bool, Error> {
    a.check(b)?;
    Ok(a.coeffs == b.coeffs)
}

pub fn ring_add(a: &RingElement, b: &RingElement) -> Result<RingElement, Error> {
    a.add(b)
}

pub fn ring_mul(a: &RingElement, b: &RingElement) -> Result<RingElement, Error> {
    a.mul(b)
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod x^{} - 1", self.lift(), self.n)
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

/// `Λ₋₁` of the sum of the characters `x^{aᵢ}`: `Π (1 − x^{aᵢ})`.
pub fn lambda_minus_one(exponents: &[usize], n: usize) -> RingElement {
    exponents.iter().fold(RingElement::one(n), |acc, &a| {
        acc.times_one_minus_x_pow(a % n)
    })
}

/// The Euler class `ξ = Π_{ℓ=1}^{n−1} (1 − x^ℓ)` of the reduced regular representation of `C_n`.
pub fn euler_xi(n: usize) -> RingElement {
    let exps: Vec<usize> = (1..n).collect();
    lambda_minus_one(&exps, n)
}

/// The integer `c` with `ξ² = c·ξ`, if `ξ ≠ 0` and such an integer exists.
pub fn xi_relation_constant(n: usize) -> Option<Integer> {
    let xi = euler_xi(n);
    let sq = xi.mul(&xi).expect("same modulus");
    proportionality_constant(&sq, &xi)
}

/// The integer `c` with `a = c·b`, for `b ≠ 0`.
pub fn proportionality_constant(a: &RingElement, b: &RingElement) -> Option<Integer> {
    let k = b.coeffs.iter().position(|c| !c.is_zero())?;
    let c = a.coeffs[k].div_exact(&b.coeffs[k])?;
    (b.scale(&c) == *a).then_some(c)
}

/// Whether `q` divides every coefficient of `ξ` for `C_n`.
pub fn divides_xi(n: usize, q: &Integer) -> bool {
    euler_xi(n).is_divisible_by(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: usize, c: &[i64]) -> RingElement {
        RingElement::from_i64(n, c).unwrap()
    }

    #[test]
    fn arithmetic() {
        let x = RingElement::x_pow(5, 1);
        assert_eq!(
            x.mul(&RingElement::x_pow(5, 4)).unwrap(),
            RingElement::one(5)
        );
        let a = el(2, &[1, -1]);
        assert_eq!(a.mul(&a).unwrap(), el(2, &[2, -2]));
        assert!(matches!(a.add(&x), Err(Error::ModulusMismatch(2, 5))));
        assert!(ring_eq(&a, &a).unwrap());
        assert!(RingElement::from_i64(3, &[1, 2]).is_err());
    }

    #[test]
    fn euler_classes() {
        assert_eq!(euler_xi(1), RingElement::one(1));
        assert_eq!(euler_xi(2), el(2, &[1, -1]));
        assert_eq!(euler_xi(4), el(4, &[2, 0, -2, 0]));
        assert_eq!(lambda_minus_one(&[1, 1], 2), el(2, &[2, -2]));
        assert_eq!(lambda_minus_one(&[], 3), RingElement::one(3));
    }

    #[test]
    fn relation_constants() {
        assert_eq!(xi_relation_constant(2), Some(Integer::from(2)));
        assert_eq!(xi_relation_constant(3), Some(Integer::from(3)));
        assert_eq!(xi_relation_constant(4), Some(Integer::from(4)));
        assert!(divides_xi(4, &Integer::from(2)));
        assert!(!divides_xi(2, &Integer::from(3)));
    }

    #[test]
    fn roots_of_unity() {
        assert!(RingElement::x_pow(7, 1).value_at_root_is(0, &Integer::ONE));
        assert!(euler_xi(5).value_at_root_is(1, &Integer::from(5)));
        assert!(!euler_xi(5).value_at_root_is(1, &Integer::from(1)));
        assert!(euler_xi(6).value_at_root_is(2, &Integer::ZERO));
    }

    #[test]
    fn json_round_trip() {
        let e = euler_xi(4);
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(s, r#"{"n":4,"coeffs":[2,0,-2,0]}"#);
        assert_eq!(serde_json::from_str::<RingElement>(&s).unwrap(), e);
        assert!(serde_json::from_str::<RingElement>(r#"{"n":3,"coeffs":[1]}"#).is_err());
    }
}
