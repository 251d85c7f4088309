//! Exact linear algebra over the integers.

pub mod abelian;
pub mod lattice;
pub mod matrix;
pub mod smith;

pub use abelian::{FgAbelianGroup, PCompletedGroup};
pub use lattice::{cokernel, homology_at, kernel_basis, KernelLattice, Subquotient};
pub use matrix::IntegerMatrix;
pub use smith::{invariant_factors, smith_normal_form, SmithForm};

use crate::int::Integer;

/// `A ⊗ Z[1/p]`.
pub fn strip_prime(a: &FgAbelianGroup, p: &Integer) -> FgAbelianGroup {
    a.strip_prime(p)
}

/// `p`-completion of a finitely generated abelian group.
pub fn p_complete(a: &FgAbelianGroup, p: &Integer) -> PCompletedGroup {
    a.p_complete(p)
}

/// Trial-division primality test.
pub fn is_prime(n: &Integer) -> bool {
    let Some(n) = n.to_i64() else {
        // every caller feeds machine-sized primes; refuse rather than loop forever
        return false;
    };
    if n < 2 {
        return false;
    }
    let mut d = 2i64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `Some((p, k))` when `n = p^k` with `p` prime and `k ≥ 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}
