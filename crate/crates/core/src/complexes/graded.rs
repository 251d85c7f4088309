use serde::Serialize;

use crate::exact::{kernel_basis, FgAbelianGroup, IntegerMatrix, Subquotient};
use crate::int::Integer;
use crate::Error;

/// `⊕ Z/oᵢ` (with `oᵢ = 0` meaning `Z`) together with an automorphism given
/// by its matrix on the generators: column `j` is the image of generator `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupWithAction {
    pub orders: Vec<Integer>,
    pub action: IntegerMatrix,
}

impl GroupWithAction {
    /// Checks that the matrix respects the relations and that its
    /// `group_order`-th power is the identity on the group.
    pub fn new(
        orders: Vec<Integer>,
        action: IntegerMatrix,
        group_order: usize,
    ) -> Result<Self, Error> {
        let n = orders.len();
        if action.rows() != n || action.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "{n} generators but a {}x{} action",
                action.rows(),
                action.cols()
            )));
        }
        let gwa = GroupWithAction { orders, action };
        for j in 0..n {
            if gwa.orders[j].is_zero() {
                continue;
            }
            let image: Vec<Integer> = (0..n)
                .map(|i| &gwa.action[(i, j)] * &gwa.orders[j])
                .collect();
            if !gwa.vanishes(&image) {
                return Err(Error::InvalidAction(format!(
                    "generator {j} relation is not preserved"
                )));
            }
        }
        let power = gwa.action.pow(group_order as u32);
        let diff = power.sub(&IntegerMatrix::identity(n));
        if (0..n).any(|j| !gwa.vanishes(&diff.column(j))) {
            return Err(Error::InvalidAction(format!(
                "automorphism order does not divide {group_order}"
            )));
        }
        Ok(gwa)
    }

    pub fn trivial(group: &FgAbelianGroup) -> Self {
        let orders = group.generator_orders();
        let n = orders.len();
        GroupWithAction {
            orders,
            action: IntegerMatrix::identity(n),
        }
    }

    fn vanishes(&self, v: &[Integer]) -> bool {
        v.iter().zip(&self.orders).all(|(x, o)| x.is_multiple_of(o))
    }

    pub fn group(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_orders(&self.orders)
    }

    fn relations(&self) -> IntegerMatrix {
        let n = self.orders.len();
        IntegerMatrix::diagonal(n, n, &self.orders)
    }

    fn action_minus_one(&self) -> IntegerMatrix {
        self.action.sub(&IntegerMatrix::identity(self.orders.len()))
    }

    /// `M / (g − 1)M`.
    pub fn coinvariants(&self) -> FgAbelianGroup {
        FgAbelianGroup::cokernel_of(&self.relations().hstack(&self.action_minus_one()))
    }

    /// `{m : g·m = m}`.
    pub fn invariants(&self) -> FgAbelianGroup {
        let n = self.orders.len();
        let relations = self.relations();
        // x is invariant iff (g − 1)x lies in the relation lattice
        let k = kernel_basis(&self.action_minus_one().hstack(&relations));
        let lifts = k.select_rows(0..n);
        Subquotient::of_spans(&lifts.hstack(&relations), &relations)
            .expect("relations are invariant")
            .group()
    }
}

/// A graded abelian group with an action of a cyclic group, one
/// [`GroupWithAction`] per degree starting at `lo`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedGroupWithAction {
    pub lo: i64,
    pub group_order: usize,
    pub degrees: Vec<GroupWithAction>,
}

impl GradedGroupWithAction {
    pub fn new(lo: i64, group_order: usize, degrees: Vec<GroupWithAction>) -> Self {
        GradedGroupWithAction {
            lo,
            group_order,
            degrees,
        }
    }

    pub fn degree_range(&self) -> impl Iterator<Item = i64> {
        self.lo..self.lo + self.degrees.len() as i64
    }

    pub fn groups(&self) -> Vec<(i64, FgAbelianGroup)> {
        self.degree_range()
            .zip(self.degrees.iter().map(GroupWithAction::group))
            .collect()
    }

    /// Degree-wise coinvariants.
    pub fn coinvariants(&self) -> Vec<(i64, FgAbelianGroup)> {
        self.degree_range()
            .zip(self.degrees.iter().map(GroupWithAction::coinvariants))
            .collect()
    }

    /// Degree-wise invariants.
    pub fn invariants(&self) -> Vec<(i64, FgAbelianGroup)> {
        self.degree_range()
            .zip(self.degrees.iter().map(GroupWithAction::invariants))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(orders: &[i64], action: &[Vec<i64>], m: usize) -> GroupWithAction {
        GroupWithAction::new(
            orders.iter().map(|&o| Integer::from(o)).collect(),
            IntegerMatrix::from_rows(action),
            m,
        )
        .unwrap()
    }

    #[test]
    fn trivial_action_on_cyclic() {
        let g = single(&[6], &[vec![1]], 2);
        assert_eq!(g.coinvariants(), FgAbelianGroup::cyclic(6));
        assert_eq!(g.invariants(), FgAbelianGroup::cyclic(6));
    }

    #[test]
    fn swap_on_free_rank_two() {
        let g = single(&[0, 0], &[vec![0, 1], vec![1, 0]], 2);
        assert_eq!(g.coinvariants(), FgAbelianGroup::free(1));
        assert_eq!(g.invariants(), FgAbelianGroup::free(1));
    }

    #[test]
    fn sign_on_z() {
        let g = single(&[0], &[vec![-1]], 2);
        assert_eq!(g.coinvariants(), FgAbelianGroup::cyclic(2));
        assert_eq!(g.invariants(), FgAbelianGroup::zero());
    }

    #[test]
    fn sign_on_odd_cyclic_is_fixed_point_free() {
        let g = single(&[5], &[vec![-1]], 2);
        assert_eq!(g.coinvariants(), FgAbelianGroup::zero());
        assert_eq!(g.invariants(), FgAbelianGroup::zero());
    }

    #[test]
    fn bad_actions_are_rejected() {
        // x ↦ 2x on Z/4 is not an automorphism of order 2
        assert!(GroupWithAction::new(
            vec![Integer::from(4)],
            IntegerMatrix::from_rows(&[vec![2]]),
            2
        )
        .is_err());
        // generator of Z/2 sent to generator of Z does not respect relations
        assert!(GroupWithAction::new(
            vec![Integer::from(2), Integer::ZERO],
            IntegerMatrix::from_rows(&[vec![1, 0], vec![1, 1]]),
            2
        )
        .is_err());
    }
}
