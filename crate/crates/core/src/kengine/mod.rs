//! End-to-end pipelines: homotopy orbits of tensor powers of the mod-`ℓ`
//! model, the closed counts `n₀(p)`, `n₁(p)`, crossed-product assembly and
//! the prime table.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::{cyclic_tensor_power, FreeComplex};
use crate::exact::{euler_phi, is_prime, FgAbelianGroup, IntegerMatrix};
use crate::int::Integer;
use crate::localize::{stable_image, FiniteCyclicAlgebra};
use crate::repring::euler_xi;
use crate::Error;

/// A 2-periodic pair of homotopy groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedKUModule {
    pub even: FgAbelianGroup,
    pub odd: FgAbelianGroup,
}

impl GradedKUModule {
    pub fn new(even: FgAbelianGroup, odd: FgAbelianGroup) -> Self {
        GradedKUModule { even, odd }
    }

    pub fn zero() -> Self {
        Self::new(FgAbelianGroup::zero(), FgAbelianGroup::zero())
    }

    /// Folds a `Z`-graded list by parity of the degree.
    pub fn fold(groups: &[(i64, FgAbelianGroup)]) -> Self {
        groups.iter().fold(Self::zero(), |acc, (k, g)| {
            if k.rem_euclid(2) == 0 {
                Self::new(acc.even.direct_sum(g), acc.odd)
            } else {
                Self::new(acc.even, acc.odd.direct_sum(g))
            }
        })
    }

    pub fn direct_sum(&self, other: &GradedKUModule) -> GradedKUModule {
        Self::new(
            self.even.direct_sum(&other.even),
            self.odd.direct_sum(&other.odd),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// `((Z/ℓ)^a, (Z/ℓ)^b)`.
    pub fn mod_ell_power(ell: &Integer, even: usize, odd: usize) -> Self {
        Self::new(
            FgAbelianGroup::cyclic_power(ell.clone(), even),
            FgAbelianGroup::cyclic_power(ell.clone(), odd),
        )
    }

    /// `(a, b)` when the module is `((Z/ℓ)^a, (Z/ℓ)^b)`.
    pub fn mod_ell_counts(&self, ell: &Integer) -> Option<(usize, usize)> {
        let count = |g: &FgAbelianGroup| {
            (g.free_rank() == 0 && g.torsion().iter().all(|d| d == ell)).then(|| g.torsion().len())
        };
        Some((count(&self.even)?, count(&self.odd)?))
    }
}

impl fmt::Display for GradedKUModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "even: {}, odd: {}", self.even, self.odd)
    }
}

/// `Z →ℓ Z` with the source in degree −1.
pub fn ku_mod_ell(ell: &Integer) -> Result<FreeComplex, Error> {
    if *ell < Integer::from(2) {
        return Err(Error::InvalidArgument(format!(
            "ℓ = {ell} must be at least 2"
        )));
    }
    FreeComplex::from_maps(
        -1,
        vec![1, 1],
        vec![IntegerMatrix::from_rows(&[vec![ell.clone()]])],
    )
}

fn require_prime(p: u64) -> Result<Integer, Error> {
    let p = Integer::from(p);
    if !is_prime(&p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p)
}

fn require_coprime(p: &Integer, ell: &Integer) -> Result<(), Error> {
    if ell.is_multiple_of(p) {
        return Err(Error::PrimeDividesModulus {
            p: p.clone(),
            ell: ell.clone(),
        });
    }
    Ok(())
}

/// Homotopy orbits of the `C_p`-action on `(KU/ℓ)^{⊗p}`: coinvariants of the
/// cyclic tensor power after inverting `p`, then homology folded by parity.
pub fn homotopy_orbits(p: u64, ell: &Integer) -> Result<GradedKUModule, Error> {
    let pz = require_prime(p)?;
    require_coprime(&pz, ell)?;
    let power = cyclic_tensor_power(&ku_mod_ell(ell)?, p as usize)?;
    let coinv = power.coinvariants(&pz)?;
    let homology: Vec<(i64, FgAbelianGroup)> = coinv
        .homology()?
        .into_iter()
        .map(|(k, g)| (k, g.strip_prime(&pz)))
        .collect();
    Ok(GradedKUModule::fold(&homology))
}

/// The same groups computed the other way round: homology of the tensor
/// power with its induced action, then coinvariants degree-wise.
pub fn homotopy_orbits_via_homology(p: u64, ell: &Integer) -> Result<GradedKUModule, Error> {
    let pz = require_prime(p)?;
    require_coprime(&pz, ell)?;
    let power = cyclic_tensor_power(&ku_mod_ell(ell)?, p as usize)?;
    let graded = power.induced_action_on_homology(&pz)?;
    let coinv: Vec<(i64, FgAbelianGroup)> = graded
        .coinvariants()
        .into_iter()
        .map(|(k, g)| (k, g.strip_prime(&pz)))
        .collect();
    Ok(GradedKUModule::fold(&coinv))
}

/// Degree-wise groups of the three routes through the `C_p`-action on `(KU/ℓ)^{⊗p}`,
/// all with `p` inverted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRoutes {
    /// Homology of the coinvariant complex.
    pub coinvariants_first: Vec<(i64, FgAbelianGroup)>,
    /// Coinvariants of the induced action on homology.
    pub homology_first: Vec<(i64, FgAbelianGroup)>,
    /// Invariants of the induced action on homology.
    pub invariants: Vec<(i64, FgAbelianGroup)>,
}

pub fn orbit_routes(p: u64, ell: &Integer) -> Result<OrbitRoutes, Error> {
    let pz = require_prime(p)?;
    require_coprime(&pz, ell)?;
    let power = cyclic_tensor_power(&ku_mod_ell(ell)?, p as usize)?;
    let strip = |v: Vec<(i64, FgAbelianGroup)>| -> Vec<(i64, FgAbelianGroup)> {
        v.into_iter()
            .map(|(k, g)| (k, g.strip_prime(&pz)))
            .collect()
    };
    let coinvariants_first = strip(power.coinvariants(&pz)?.homology()?);
    let graded = power.induced_action_on_homology(&pz)?;
    Ok(OrbitRoutes {
        coinvariants_first,
        homology_first: strip(graded.coinvariants()),
        invariants: strip(graded.invariants()),
    })
}

/// `(n₀(p), n₁(p))`: the numbers of even and odd copies of `Z/ℓ` in the homotopy orbits.
pub fn n_counts(p: u64) -> Result<(u64, u64), Error> {
    require_prime(p)?;
    if p == 2 {
        return Ok((1, 0));
    }
    let two = 1u128 << (p - 2);
    let p128 = p as u128;
    let num0 = two + (p128 + 1) * (p128 - 1) / 2;
    let num1 = two - (p128 - 1) * (p128 - 1) / 2;
    if !num0.is_multiple_of(p128) || !num1.is_multiple_of(p128) {
        return Err(Error::Internal(format!(
            "closed counts for p = {p} are not integers"
        )));
    }
    let narrow = |v: u128| {
        u64::try_from(v / p128).map_err(|_| Error::InvalidArgument(format!("p = {p} is too large")))
    };
    Ok((narrow(num0)?, narrow(num1)?))
}

/// `K` of the trivial crossed product by `C_n`: the representation ring, `(Z^n, 0)`.
pub fn rep_ring_as_ku(n: usize) -> GradedKUModule {
    GradedKUModule::new(FgAbelianGroup::free(n), FgAbelianGroup::zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Complete,
    Partial,
}

/// `K_*` of the mod-`ℓ` crossed product by `C_{p^k}`, split into the
/// `ξ`-torsion and `ξ`-inverted summands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossedProductResult {
    pub status: Status,
    /// Absent when the `ξ`-torsion summand is not computed.
    pub total: Option<GradedKUModule>,
    pub s_xi_summand: Option<GradedKUModule>,
    pub xi_inverted_summand: GradedKUModule,
    pub p: Integer,
    pub k: u32,
    pub ell: Integer,
    pub note: Option<String>,
}

/// Assembles the crossed product for `p ∤ ℓ`. For `k > 1` only the
/// `ξ`-inverted summand is computed.
pub fn crossed_product(p: u64, k: u32, ell: &Integer) -> Result<CrossedProductResult, Error> {
    let pz = require_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if *ell < Integer::from(2) {
        return Err(Error::InvalidArgument(format!(
            "ℓ = {ell} must be at least 2"
        )));
    }
    require_coprime(&pz, ell)?;
    let n = p
        .checked_pow(k)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{k} is too large")))?
        as usize;
    let (localized, _) = stable_image(&FiniteCyclicAlgebra::new(n, ell.clone())?, &euler_xi(n))?;
    let xi_inverted = GradedKUModule::new(localized, FgAbelianGroup::zero());
    if k > 1 {
        return Ok(CrossedProductResult {
            status: Status::Partial,
            total: None,
            s_xi_summand: None,
            xi_inverted_summand: xi_inverted,
            p: pz,
            k,
            ell: ell.clone(),
            note: Some(format!(
                "the ξ-torsion summand for C_{p}^{k} is a colimit over the orbit category and is not computed; \
                 the ξ-inverted summand has exponent phi({n}) = {}",
                euler_phi(n as u64)
            )),
        });
    }
    let s_xi = homotopy_orbits(p, ell)?;
    Ok(CrossedProductResult {
        status: Status::Complete,
        total: Some(s_xi.direct_sum(&xi_inverted)),
        s_xi_summand: Some(s_xi),
        xi_inverted_summand: xi_inverted,
        p: pz,
        k,
        ell: ell.clone(),
        note: None,
    })
}

/// One row of the prime table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub p: u64,
    /// Copies of `Z/ℓ` in even degree, `n₀(p) + p − 1`.
    pub even: u64,
    /// Copies of `Z/ℓ` in odd degree, `n₁(p)`.
    pub odd: u64,
    /// Coefficient used by the chain-level route.
    pub pipeline_ell: Integer,
}

/// The table row for `p` from the closed counts.
pub fn table_row_closed(p: u64) -> Result<(u64, u64), Error> {
    let (n0, n1) = n_counts(p)?;
    Ok((n0 + p - 1, n1))
}

/// The table row for `p` from the chain-level crossed product with coefficients `Z/ℓ`.
pub fn table_row_pipeline(p: u64, ell: &Integer) -> Result<(u64, u64), Error> {
    let result = crossed_product(p, 1, ell)?;
    let total = result.total.expect("k = 1 is complete");
    let (even, odd) = total.mod_ell_counts(ell).ok_or_else(|| {
        Error::Internal(format!(
            "p = {p}: {total} is not a sum of copies of Z/{ell}"
        ))
    })?;
    Ok((even as u64, odd as u64))
}

/// `ℓ` itself when `p ∤ ℓ`, otherwise the smallest coefficient `≥ 2` prime to `p`.
/// The counts in the table do not depend on the coefficient.
pub fn pipeline_coefficient(p: u64, ell: &Integer) -> Integer {
    let pz = Integer::from(p);
    if !ell.is_multiple_of(&pz) {
        return ell.clone();
    }
    Integer::from(if p == 2 { 3 } else { 2 })
}

/// Rows for each prime, sorted by `p`, each computed by both routes.
/// A disagreement is reported as [`Error::Internal`] with both rows.
pub fn table(primes: &[u64], ell: &Integer) -> Result<Vec<TableRow>, Error> {
    if *ell < Integer::from(2) {
        return Err(Error::InvalidArgument(format!(
            "ℓ = {ell} must be at least 2"
        )));
    }
    let mut primes = primes.to_vec();
    primes.sort_unstable();
    primes.dedup();
    for &p in &primes {
        require_prime(p)?;
    }
    primes
        .par_iter()
        .map(|&p| {
            let (even, odd) = table_row_closed(p)?;
            let pipeline_ell = pipeline_coefficient(p, ell);
            let pipeline = table_row_pipeline(p, &pipeline_ell)?;
            let closed = (even, odd);
            if closed != pipeline {
                return Err(Error::Internal(format!(
                    "table mismatch at p = {p}: closed formula (even {}, odd {}) vs pipeline (even {}, odd {})",
                    closed.0, closed.1, pipeline.0, pipeline.1
                )));
            }
            Ok(TableRow { p, even, odd, pipeline_ell })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(v: i64) -> Integer {
        Integer::from(v)
    }

    #[test]
    fn mod_ell_model() {
        let c = ku_mod_ell(&z(2)).unwrap();
        assert_eq!(c.differential(-1).entries(), &[z(2)]);
        assert_eq!(c.homology().unwrap()[1], (0, FgAbelianGroup::cyclic(2)));
        assert!(ku_mod_ell(&z(1)).is_err());
    }

    #[test]
    fn closed_counts() {
        assert_eq!(n_counts(2).unwrap(), (1, 0));
        assert_eq!(n_counts(3).unwrap(), (2, 0));
        assert_eq!(n_counts(5).unwrap(), (4, 0));
        assert_eq!(n_counts(7).unwrap(), (8, 2));
        assert_eq!(n_counts(11).unwrap(), (52, 42));
        assert!(n_counts(9).is_err());
    }

    #[test]
    fn small_homotopy_orbits() {
        assert_eq!(
            homotopy_orbits(2, &z(3)).unwrap(),
            GradedKUModule::mod_ell_power(&z(3), 1, 0)
        );
        assert_eq!(
            homotopy_orbits(3, &z(2)).unwrap(),
            GradedKUModule::mod_ell_power(&z(2), 2, 0)
        );
        assert_eq!(
            homotopy_orbits_via_homology(3, &z(2)).unwrap(),
            GradedKUModule::mod_ell_power(&z(2), 2, 0)
        );
        assert!(matches!(
            homotopy_orbits(3, &z(6)),
            Err(Error::PrimeDividesModulus { .. })
        ));
    }

    #[test]
    fn crossed_products() {
        let r = crossed_product(2, 1, &z(3)).unwrap();
        assert_eq!(r.status, Status::Complete);
        assert_eq!(r.total.unwrap(), GradedKUModule::mod_ell_power(&z(3), 2, 0));
        let r = crossed_product(3, 2, &z(2)).unwrap();
        assert_eq!(r.status, Status::Partial);
        assert_eq!(r.xi_inverted_summand.even.order(), Some(z(64)));
        assert!(crossed_product(2, 1, &z(4)).is_err());
    }

    #[test]
    fn small_table() {
        let rows = table(&[3, 2], &z(5)).unwrap();
        let counts: Vec<(u64, u64, u64)> = rows.iter().map(|r| (r.p, r.even, r.odd)).collect();
        assert_eq!(counts, vec![(2, 2, 0), (3, 4, 0)]);
        let rows = table(&[3], &z(3)).unwrap();
        assert_eq!((rows[0].even, rows[0].pipeline_ell.clone()), (4, z(2)));
        assert!(table(&[], &z(3)).unwrap().is_empty());
    }

    #[test]
    fn rep_ring() {
        assert_eq!(rep_ring_as_ku(3).even, FgAbelianGroup::free(3));
    }
}
