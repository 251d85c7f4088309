//! `ξ`-localization, the `S_ξ` splitting and `p`-completion on `π₀`.
//!
//! Modules over `Z[x]/(xⁿ − 1)` are presented as `Z^g / diag(orders)` with
//! `x` acting through an integer matrix. Submodules are carried as lattices
//! between the relation lattice and `Z^g`.

use serde::Serialize;

use crate::complexes::GroupWithAction;
use crate::exact::{
    euler_phi, kernel_basis, FgAbelianGroup, IntegerMatrix, PCompletedGroup, Subquotient,
};
use crate::int::Integer;
use crate::kengine::GradedKUModule;
use crate::repring::{euler_xi, xi_relation_constant, RingElement};
use crate::Error;

/// The finite ring `(Z/ℓ)[x]/(xⁿ − 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteCyclicAlgebra {
    pub n: usize,
    pub ell: Integer,
}

impl FiniteCyclicAlgebra {
    pub fn new(n: usize, ell: impl Into<Integer>) -> Result<Self, Error> {
        let ell = ell.into();
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        if ell < Integer::from(2) {
            return Err(Error::InvalidArgument(format!(
                "coefficient modulus {ell} must be at least 2"
            )));
        }
        Ok(FiniteCyclicAlgebra { n, ell })
    }

    /// The ring as a module over itself.
    pub fn regular_module(&self) -> ModuleOverCyclicRing {
        let shift = cyclic_shift(self.n);
        ModuleOverCyclicRing {
            n: self.n,
            orders: vec![self.ell.clone(); self.n],
            x_action: shift,
        }
    }

    pub fn size(&self) -> Integer {
        self.ell.pow(self.n as u32)
    }
}

/// Column `j` is `x · x^j = x^{j+1}`.
fn cyclic_shift(n: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::zeros(n, n);
    for j in 0..n {
        m[((j + 1) % n, j)] = Integer::ONE;
    }
    m
}

/// A finitely generated module over `Z[x]/(xⁿ − 1)`: generators of the given
/// orders (0 for infinite order) with `x` acting by `x_action`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleOverCyclicRing {
    pub n: usize,
    pub orders: Vec<Integer>,
    pub x_action: IntegerMatrix,
}

impl ModuleOverCyclicRing {
    /// Checks that `x_action` respects the relations and that its `n`-th power is the identity.
    pub fn new(n: usize, orders: Vec<Integer>, x_action: IntegerMatrix) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let checked = GroupWithAction::new(orders, x_action, n)?;
        Ok(ModuleOverCyclicRing {
            n,
            orders: checked.orders,
            x_action: checked.action,
        })
    }

    /// `Z^g` with the trivial action.
    pub fn trivial(n: usize, group: &FgAbelianGroup) -> Self {
        let orders = group.generator_orders();
        let g = orders.len();
        ModuleOverCyclicRing {
            n,
            orders,
            x_action: IntegerMatrix::identity(g),
        }
    }

    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    pub fn group(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_orders(&self.orders)
    }

    fn relations(&self) -> IntegerMatrix {
        let g = self.num_generators();
        IntegerMatrix::diagonal(g, g, &self.orders)
    }

    fn reduce(&self, mut m: IntegerMatrix) -> IntegerMatrix {
        m.reduce_rows(&self.orders);
        m
    }

    /// The matrix by which a ring element acts.
    pub fn action_of(&self, f: &RingElement) -> Result<IntegerMatrix, Error> {
        if f.modulus() != self.n {
            return Err(Error::ModulusMismatch(f.modulus(), self.n));
        }
        let g = self.num_generators();
        let mut out = IntegerMatrix::zeros(g, g);
        let mut xk = IntegerMatrix::identity(g);
        for c in f.coeffs() {
            if !c.is_zero() {
                out = out.add(&xk.scale(c));
            }
            xk = self.reduce(&self.x_action * &xk);
        }
        Ok(self.reduce(out))
    }

    /// Lattice of `{v : t·v ∈ relations}`, with the relations appended.
    fn kernel_lattice(&self, t: &IntegerMatrix) -> IntegerMatrix {
        let g = self.num_generators();
        let rel = self.relations();
        kernel_basis(&t.hstack(&rel)).select_rows(0..g).hstack(&rel)
    }

    fn image_lattice(&self, t: &IntegerMatrix) -> IntegerMatrix {
        t.hstack(&self.relations())
    }

    /// `L / relations` for a lattice containing the relations.
    fn quotient_by_relations(&self, lattice: &IntegerMatrix) -> FgAbelianGroup {
        Subquotient::of_spans(lattice, &self.relations())
            .expect("lattice contains the relations")
            .group()
    }

    /// Steps after which kernels and images of an endomorphism must have stabilized
    /// if they stabilize at all.
    fn stabilization_bound(&self) -> usize {
        let bits: u64 = self.orders.iter().map(|d| d.to_bigint().bits()).sum();
        self.n * self.num_generators() + bits as usize + 1
    }
}

/// `inner ⊆ outer`; equal when the quotient vanishes.
fn same_lattice(outer: &IntegerMatrix, inner: &IntegerMatrix) -> bool {
    Subquotient::of_spans(outer, inner)
        .map(|sq| sq.group().is_zero())
        .unwrap_or(false)
}

/// The eventual image `ξ^m A` for `m` large, as an abelian group, and its size.
/// `ξ` acts bijectively on it.
pub fn stable_image(
    algebra: &FiniteCyclicAlgebra,
    xi: &RingElement,
) -> Result<(FgAbelianGroup, Integer), Error> {
    let module = algebra.regular_module();
    let t = module.action_of(xi)?;
    // Images decrease, so im T^a = im T^{2a} forces stabilization from a on.
    let mut power = t;
    let bound = module.stabilization_bound();
    let mut exponent = 1usize;
    loop {
        let squared = module.reduce(&power * &power);
        if same_lattice(
            &module.image_lattice(&power),
            &module.image_lattice(&squared),
        ) {
            let group = module.quotient_by_relations(&module.image_lattice(&power));
            let size = group.order().expect("subgroup of a finite ring");
            return Ok((group, size));
        }
        if exponent > bound {
            return Err(Error::NonStabilizing(bound));
        }
        power = squared;
        exponent *= 2;
    }
}

/// `π₀` of the `ξ`-torsion fibre sequence for a module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitResult {
    /// `ker ξ^m` for large `m`.
    pub kernel: FgAbelianGroup,
    /// `M / (ker ξ^m + im ξ^m)`; zero once both chains stabilize.
    pub cokernel: FgAbelianGroup,
    /// `im ξ^m` for large `m`, on which `ξ` is invertible.
    pub localized: FgAbelianGroup,
    /// Exponent `m` at which both chains had stabilized.
    pub steps: usize,
}

/// Splits `M` along the action of `xi` by stabilizing `ker ξ^m` and `im ξ^m`.
pub fn s_xi_split(module: &ModuleOverCyclicRing, xi: &RingElement) -> Result<SplitResult, Error> {
    let t = module.action_of(xi)?;
    let bound = module.stabilization_bound();
    let mut power = t.clone();
    let mut kernel = module.kernel_lattice(&power);
    let mut image = module.image_lattice(&power);
    for m in 1..=bound {
        let next = module.reduce(&t * &power);
        let next_kernel = module.kernel_lattice(&next);
        let next_image = module.image_lattice(&next);
        if same_lattice(&next_kernel, &kernel) && same_lattice(&image, &next_image) {
            let cokernel = FgAbelianGroup::cokernel_of(&kernel.hstack(&image));
            return Ok(SplitResult {
                kernel: module.quotient_by_relations(&kernel),
                cokernel,
                localized: module.quotient_by_relations(&image),
                steps: m,
            });
        }
        power = next;
        kernel = next_kernel;
        image = next_image;
    }
    Err(Error::NonStabilizing(bound))
}

/// The two summands of a splitting `M ≅ πM ⊕ (1 − π)M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentSplit {
    /// `ξ² = c·ξ` and `π = ξ/c`.
    pub c: Integer,
    pub xi_invertible: FgAbelianGroup,
    pub xi_null: FgAbelianGroup,
}

/// Splits a finite module over `R(C_n)`, `n = p^k`, on which `p` is invertible
/// by the idempotent `π = ξ/c`, where `ξ² = c·ξ`.
pub fn idempotent_split(
    module: &ModuleOverCyclicRing,
    p: &Integer,
) -> Result<IdempotentSplit, Error> {
    let n = module.n;
    let group = module.group();
    let modulus = match group.torsion().last() {
        _ if !group.is_finite() => {
            return Err(Error::NotInvertible(format!(
                "{p} (the module {group} has a free part)"
            )))
        }
        None => Integer::ONE,
        Some(d) => d.clone(),
    };
    if !modulus.gcd(p).is_one() {
        return Err(Error::NotInvertible(format!("{p} on {group}")));
    }
    let c = xi_relation_constant(n).ok_or(Error::MissingRelation(n))?;
    if !c.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "{p} does not divide the relation constant {c} for n = {n}"
        )));
    }
    let c_inv = c
        .rem_euclid(&modulus)
        .mod_inverse(&modulus)
        .unwrap_or(Integer::ZERO);
    let xi = module.action_of(&euler_xi(n))?;
    let pi = module.reduce(xi.scale(&c_inv));
    let g = module.num_generators();
    let one_minus_pi = module.reduce(IntegerMatrix::identity(g).sub(&pi));
    if module.reduce(&pi * &pi) != pi {
        return Err(Error::Internal(
            "ξ/c is not idempotent on the module".into(),
        ));
    }
    let xi_invertible = module.quotient_by_relations(&module.image_lattice(&pi));
    let xi_null = module.quotient_by_relations(&module.image_lattice(&one_minus_pi));
    if !module.reduce(&xi * &one_minus_pi).is_zero() {
        return Err(Error::Internal("ξ does not vanish on (1 − π)M".into()));
    }
    let size = |a: &FgAbelianGroup| a.order().expect("finite");
    if size(&xi_invertible) * size(&xi_null) != size(&group) {
        return Err(Error::Internal(
            "πM ⊕ (1 − π)M does not reassemble M".into(),
        ));
    }
    Ok(IdempotentSplit {
        c,
        xi_invertible,
        xi_null,
    })
}

/// Degree-wise `p`-completion.
pub fn lp_graded(m: &GradedKUModule, p: &Integer) -> (PCompletedGroup, PCompletedGroup) {
    (m.even.p_complete(p), m.odd.p_complete(p))
}

/// Machine-readable result of the `localize` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalizationReport {
    pub p: Integer,
    pub k: u32,
    pub ell: Integer,
    pub size: Integer,
    pub group: FgAbelianGroup,
    pub xi_invertible: bool,
    /// Realized exponent of `ℓ` in the size.
    pub exponent: u64,
    pub paper_exponent_note: String,
}

/// Stable image of `ξ` on `(Z/ℓ)[x]/(x^{p^k} − 1)` with the exponent comparison.
pub fn localization_report(p: u64, k: u32, ell: &Integer) -> Result<LocalizationReport, Error> {
    let n = p.pow(k) as usize;
    let algebra = FiniteCyclicAlgebra::new(n, ell.clone())?;
    let xi = euler_xi(n);
    let (group, size) = stable_image(&algebra, &xi)?;
    let mut exponent = 0u64;
    let mut rest = size.clone();
    while !rest.is_one() {
        rest = rest.div_exact(ell).ok_or_else(|| {
            Error::Internal(format!("stable image size {size} is not a power of {ell}"))
        })?;
        exponent += 1;
    }
    let phi = euler_phi(n as u64);
    let literal = (p - 1) * n as u64;
    let note = if exponent == literal {
        format!("realized exponent {exponent} equals (p-1)p^k")
    } else {
        format!(
            "realized exponent {exponent} = phi(p^k) = {phi}; the exponent (p-1)p^k = {literal} would give {ell}^{literal}"
        )
    };
    let xi_invertible = xi_acts_invertibly(&algebra, &xi)?;
    Ok(LocalizationReport {
        p: Integer::from(p),
        k,
        ell: ell.clone(),
        size,
        group,
        xi_invertible,
        exponent,
        paper_exponent_note: note,
    })
}

/// Whether `ξ` restricted to its stable image is injective, decided on the presentation.
fn xi_acts_invertibly(algebra: &FiniteCyclicAlgebra, xi: &RingElement) -> Result<bool, Error> {
    let module = algebra.regular_module();
    let split = s_xi_split(&module, xi)?;
    let (stable, _) = stable_image(algebra, xi)?;
    Ok(split.localized == stable && split.cokernel.is_zero())
}
