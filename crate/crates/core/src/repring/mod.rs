//! The representation ring `Z[x]/(xⁿ − 1)` of `C_n`, the Euler class `ξ`,
//! cyclotomic polynomials and `ξ`-characters of finite groups.

pub mod catalog;
pub mod group;
pub mod poly;
pub mod ring;

pub use catalog::{small_groups, CatalogGroup};
pub use group::{is_xi_zero, xi_class_function, ClassFunction, FiniteGroup};
pub use poly::{cyclotomic, cyclotomic_at_one, IntegerPolynomial};
pub use ring::{
    divides_xi, euler_xi, lambda_minus_one, ring_add, ring_eq, ring_mul, xi_relation_constant,
    RingElement,
};

/// Conjugacy classes of `group`.
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<Vec<usize>> {
    group.conjugacy_classes()
}

/// Order of the element `g` of `group`.
pub fn element_order(group: &FiniteGroup, g: usize) -> usize {
    group.element_order(g)
}

/// Whether `F(ζ_n^u) = c` for a primitive `n`-th root of unity, `n` the modulus of `f`.
pub fn value_at_root_is(f: &RingElement, u: usize, c: &crate::Integer) -> bool {
    f.value_at_root_is(u, c)
}
