use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact::matrix::IntegerMatrix;
use crate::exact::smith::invariant_factors;
use crate::int::Integer;
use crate::Error;

/// A finitely generated abelian group `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with
/// `d₁ | d₂ | … | d_k` and every `dᵢ ≥ 2`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawGroup")]
pub struct FgAbelianGroup {
    free_rank: usize,
    torsion: Vec<Integer>,
}

#[derive(Deserialize)]
struct RawGroup {
    free_rank: usize,
    torsion: Vec<Integer>,
}

impl TryFrom<RawGroup> for FgAbelianGroup {
    type Error = Error;
    fn try_from(raw: RawGroup) -> Result<Self, Error> {
        FgAbelianGroup::new(raw.free_rank, raw.torsion)
    }
}

impl FgAbelianGroup {
    /// Validates the invariant-factor normal form.
    pub fn new(free_rank: usize, torsion: Vec<Integer>) -> Result<Self, Error> {
        if let Some(d) = torsion.iter().find(|d| *d < &Integer::from(2)) {
            return Err(Error::InvalidGroup(format!(
                "invariant factor {d} is not at least 2"
            )));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(Error::InvalidGroup(format!(
                "invariant factors {torsion:?} do not form a divisibility chain"
            )));
        }
        Ok(FgAbelianGroup { free_rank, torsion })
    }

    pub fn zero() -> Self {
        FgAbelianGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// `Z/m`; `m = 0` gives `Z` and `m = ±1` the zero group.
    pub fn cyclic(m: impl Into<Integer>) -> Self {
        Self::from_orders(&[m.into()])
    }

    /// `(Z/m)^count`.
    pub fn cyclic_power(m: impl Into<Integer>, count: usize) -> Self {
        let m = m.into();
        Self::from_orders(&vec![m; count])
    }

    /// The group `⊕ Z/mᵢ` for arbitrary integers `mᵢ` (zero meaning `Z`),
    /// brought into invariant-factor form.
    pub fn from_orders(orders: &[Integer]) -> Self {
        let n = orders.len();
        Self::cokernel_of(&IntegerMatrix::diagonal(n, n, orders))
    }

    /// `Z^rows / im(M)`.
    pub fn cokernel_of(m: &IntegerMatrix) -> Self {
        let factors = invariant_factors(m);
        let free_rank = m.rows() - factors.len();
        FgAbelianGroup {
            free_rank,
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[Integer] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order, or `None` when the free rank is positive.
    pub fn order(&self) -> Option<Integer> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    /// Orders of a generating system: invariant factors followed by zeros for `Z` summands.
    pub fn generator_orders(&self) -> Vec<Integer> {
        let mut v = self.torsion.clone();
        v.extend(std::iter::repeat_n(Integer::ZERO, self.free_rank));
        v
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut orders = self.generator_orders();
        orders.extend(other.generator_orders());
        Self::from_orders(&orders)
    }

    /// `self ⊗ Z[1/p]`: every invariant factor loses its `p`-part.
    pub fn strip_prime(&self, p: &Integer) -> FgAbelianGroup {
        let orders: Vec<Integer> = self
            .torsion
            .iter()
            .map(|d| d.split_prime_power(p).1)
            .collect();
        let mut stripped = Self::from_orders(&orders);
        stripped.free_rank += self.free_rank;
        stripped
    }

    /// `p`-completion of a finitely generated group: `Ẑ_p^r` plus the `p`-parts of the torsion.
    pub fn p_complete(&self, p: &Integer) -> PCompletedGroup {
        let mut p_torsion: Vec<Integer> = self
            .torsion
            .iter()
            .map(|d| p.pow(d.split_prime_power(p).0))
            .filter(|d| !d.is_one())
            .collect();
        p_torsion.sort();
        PCompletedGroup {
            p: p.clone(),
            padic_rank: self.free_rank,
            p_torsion,
        }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbelianGroup({self})")
    }
}

/// `p`-completion of a finitely generated abelian group. Kept apart from
/// [`FgAbelianGroup`] since `Ẑ_p` is not finitely generated over `Z`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PCompletedGroup {
    pub p: Integer,
    pub padic_rank: usize,
    /// Ascending powers of `p`.
    pub p_torsion: Vec<Integer>,
}

impl PCompletedGroup {
    pub fn is_zero(&self) -> bool {
        self.padic_rank == 0 && self.p_torsion.is_empty()
    }
}

impl fmt::Display for PCompletedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.p_torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.padic_rank {
            0 => {}
            1 => parts.push(format!("Z_{}", self.p)),
            r => parts.push(format!("Z_{}^{r}", self.p)),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PCompletedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PCompletedGroup({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn normal_form_is_enforced() {
        assert!(FgAbelianGroup::new(0, ints(&[2, 3])).is_err());
        assert!(FgAbelianGroup::new(0, ints(&[1])).is_err());
        assert!(FgAbelianGroup::new(0, ints(&[0])).is_err());
        assert!(FgAbelianGroup::new(1, ints(&[2, 6])).is_ok());
        assert_eq!(
            FgAbelianGroup::from_orders(&ints(&[2, 3])).torsion(),
            ints(&[6]).as_slice()
        );
        assert_eq!(
            FgAbelianGroup::from_orders(&ints(&[0, 1, -4])),
            FgAbelianGroup::new(1, ints(&[4])).unwrap()
        );
    }

    #[test]
    fn strip_prime_examples() {
        let p2 = Integer::from(2);
        let p3 = Integer::from(3);
        let g = FgAbelianGroup::new(1, ints(&[12])).unwrap();
        assert_eq!(
            g.strip_prime(&p2),
            FgAbelianGroup::new(1, ints(&[3])).unwrap()
        );
        let g = FgAbelianGroup::new(0, ints(&[2, 4])).unwrap();
        assert!(g.strip_prime(&p2).is_zero());
        let g = FgAbelianGroup::new(2, ints(&[6, 18])).unwrap();
        assert_eq!(
            g.strip_prime(&p3),
            FgAbelianGroup::new(2, ints(&[2, 2])).unwrap()
        );
    }

    #[test]
    fn p_completion_examples() {
        let c = FgAbelianGroup::cyclic(5).p_complete(&Integer::from(3));
        assert!(c.is_zero());
        let c = FgAbelianGroup::free(1).p_complete(&Integer::from(3));
        assert_eq!((c.padic_rank, c.p_torsion.len()), (1, 0));
        let c = FgAbelianGroup::cyclic(12).p_complete(&Integer::from(2));
        assert_eq!(c.p_torsion, ints(&[4]));
        assert_eq!(c.padic_rank, 0);
    }

    #[test]
    fn json_shape() {
        let g = FgAbelianGroup::new(1, ints(&[3, 3])).unwrap();
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"free_rank":1,"torsion":[3,3]}"#
        );
        assert!(
            serde_json::from_str::<FgAbelianGroup>(r#"{"free_rank":0,"torsion":[2,3]}"#).is_err()
        );
    }
}
