use std::fmt;

use serde::{Deserialize, Serialize};

use crate::int::Integer;

/// A polynomial with integer coefficients; `coeffs[k]` is the coefficient of
/// `x^k`. Trailing zeros are stripped, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<Integer>", into = "Vec<Integer>")]
pub struct IntegerPolynomial {
    coeffs: Vec<Integer>,
}

impl From<Vec<Integer>> for IntegerPolynomial {
    fn from(coeffs: Vec<Integer>) -> Self {
        Self::new(coeffs)
    }
}

impl From<IntegerPolynomial> for Vec<Integer> {
    fn from(p: IntegerPolynomial) -> Self {
        p.coeffs
    }
}

impl IntegerPolynomial {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(Integer::is_zero) {
            coeffs.pop();
        }
        IntegerPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntegerPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<Integer>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c·x^k`.
    pub fn monomial(c: impl Into<Integer>, k: usize) -> Self {
        let mut coeffs = vec![Integer::ZERO; k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// `x^n − 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![Integer::ZERO; n + 1];
        coeffs[0] = Integer::from(-1);
        coeffs[n] += Integer::ONE;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        self.coeffs
            .iter()
            .rev()
            .fold(Integer::ZERO, |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_default();
                match other.coeffs.get(k) {
                    Some(b) => a + b,
                    None => a,
                }
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        IntegerPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Integer::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Self::new(coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| acc.mul(self))
    }

    /// `F(x^u)`.
    pub fn compose_power(&self, u: usize) -> Self {
        if u == 0 {
            return Self::constant(self.coeffs.iter().sum::<Integer>());
        }
        let mut coeffs = vec![Integer::ZERO; self.coeffs.len().saturating_sub(1) * u + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * u] = c.clone();
        }
        Self::new(coeffs)
    }

    /// Division with remainder by a polynomial with leading coefficient `±1`.
    /// Returns `None` when the divisor is zero or not monic up to sign.
    pub fn div_rem_monic(&self, divisor: &Self) -> Option<(Self, Self)> {
        let lead = divisor.leading()?;
        if !lead.abs().is_one() {
            return None;
        }
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![Integer::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] * lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        Some((Self::new(quot), Self::new(rem)))
    }

    /// `self / divisor` when the division is exact in `Z[x]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lead, dd) = (divisor.leading()?, divisor.coeffs.len() - 1);
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.coeffs.len() <= dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Integer::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = rem[k + dd].div_exact(lead)?;
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
            quot[k] = q;
        }
        rem.iter().all(Integer::is_zero).then(|| Self::new(quot))
    }

    pub fn is_divisible_by(&self, divisor: &Self) -> bool {
        self.div_exact(divisor).is_some()
    }
}

impl fmt::Display for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{mag}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntegerPolynomial({self})")
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `Φ_n`, by exact division of `xⁿ − 1` by `Φ_d` for the proper divisors `d` of `n`.
///
/// # Panics
/// If `n = 0`.
pub fn cyclotomic(n: usize) -> IntegerPolynomial {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    let mut table: Vec<Option<IntegerPolynomial>> = vec![None; n + 1];
    for m in divisors(n) {
        let mut p = IntegerPolynomial::x_pow_minus_one(m);
        for d in divisors(m).into_iter().filter(|&d| d < m) {
            let phi = table[d]
                .as_ref()
                .expect("divisors are visited in increasing order");
            p = p.div_exact(phi).expect("Φ_d divides xᵐ − 1 for d | m");
        }
        table[m] = Some(p);
    }
    table[n].take().unwrap()
}

/// `Φ_n(1)`: `p` when `n` is a power of the prime `p`, and `1` for other `n ≥ 2`.
///
/// # Panics
/// If `n < 2` (`Φ_1(1) = 0` is excluded by convention).
pub fn cyclotomic_at_one(n: usize) -> Integer {
    assert!(n >= 2, "Φ_n(1) is only considered for n ≥ 2");
    cyclotomic(n).eval(&Integer::ONE)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), IntegerPolynomial::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(4), IntegerPolynomial::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), IntegerPolynomial::from_i64(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).to_string(), "x^4 - x^2 + 1");
    }

    #[test]
    fn values_at_one() {
        assert_eq!(cyclotomic_at_one(9), Integer::from(3));
        assert_eq!(cyclotomic_at_one(6), Integer::ONE);
        assert_eq!(cyclotomic_at_one(2), Integer::from(2));
    }

    #[test]
    fn exact_division() {
        let a = IntegerPolynomial::from_i64(&[-1, 0, 0, 1]);
        let b = IntegerPolynomial::from_i64(&[-1, 1]);
        assert_eq!(
            a.div_exact(&b),
            Some(IntegerPolynomial::from_i64(&[1, 1, 1]))
        );
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(
            IntegerPolynomial::from_i64(&[1, 2]).div_exact(&IntegerPolynomial::constant(2)),
            None
        );
        let (q, r) = a
            .div_rem_monic(&IntegerPolynomial::from_i64(&[1, 1]))
            .unwrap();
        assert_eq!(q.mul(&IntegerPolynomial::from_i64(&[1, 1])).add(&r), a);
    }

    #[test]
    fn compose_and_eval() {
        let f = IntegerPolynomial::from_i64(&[1, -1]);
        assert_eq!(
            f.compose_power(3),
            IntegerPolynomial::from_i64(&[1, 0, 0, -1])
        );
        assert_eq!(f.compose_power(0), IntegerPolynomial::zero());
        assert_eq!(f.eval(&Integer::from(5)), Integer::from(-4));
    }
}
