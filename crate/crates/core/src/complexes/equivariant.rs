use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::complexes::free::FreeComplex;
use crate::complexes::graded::{GradedGroupWithAction, GroupWithAction};
use crate::exact::smith::row_reduce;
use crate::exact::{is_prime, FgAbelianGroup, IntegerMatrix, Subquotient};
use crate::int::Integer;
use crate::Error;

/// A free complex with an action of the cyclic group of order `group_order`,
/// given by a signed-permutation matrix `g_k` in each degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawEquivariant", into = "RawEquivariant")]
pub struct EquivariantComplex {
    base: FreeComplex,
    group_order: usize,
    actions: Vec<IntegerMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RawEquivariant {
    base: FreeComplex,
    group_order: usize,
    actions: Vec<IntegerMatrix>,
}

impl TryFrom<RawEquivariant> for EquivariantComplex {
    type Error = Error;
    fn try_from(raw: RawEquivariant) -> Result<Self, Error> {
        EquivariantComplex::new(raw.base, raw.group_order, raw.actions)
    }
}

impl From<EquivariantComplex> for RawEquivariant {
    fn from(e: EquivariantComplex) -> Self {
        RawEquivariant {
            base: e.base,
            group_order: e.group_order,
            actions: e.actions,
        }
    }
}

impl EquivariantComplex {
    /// `actions[i]` acts on degree `lo + i`. Checks that every action is a
    /// signed permutation, commutes with the differential and has order
    /// dividing `group_order`.
    pub fn new(
        base: FreeComplex,
        group_order: usize,
        actions: Vec<IntegerMatrix>,
    ) -> Result<Self, Error> {
        if group_order == 0 {
            return Err(Error::InvalidAction(
                "group order must be at least 1".into(),
            ));
        }
        if actions.len() as i64 != base.hi() - base.lo() + 1 {
            return Err(Error::InvalidAction(format!(
                "{} action matrices for {} degrees",
                actions.len(),
                base.hi() - base.lo() + 1
            )));
        }
        for (k, g) in base.degrees().zip(&actions) {
            if g.rows() != base.rank(k) || !g.is_signed_permutation() {
                return Err(Error::InvalidAction(format!(
                    "action in degree {k} is not a signed permutation of rank {}",
                    base.rank(k)
                )));
            }
            if !signed_permutation_power(g, group_order).is_identity() {
                return Err(Error::InvalidAction(format!(
                    "action in degree {k} does not have order dividing {group_order}"
                )));
            }
        }
        for k in base.degrees().rev().skip(1) {
            let d = base.differential(k);
            let g_src = &actions[(k - base.lo()) as usize];
            let g_tgt = &actions[(k + 1 - base.lo()) as usize];
            if g_tgt * &*d != &*d * g_src {
                return Err(Error::InvalidAction(format!(
                    "action does not commute with d_{k}"
                )));
            }
        }
        Ok(EquivariantComplex {
            base,
            group_order,
            actions,
        })
    }

    /// The trivial action of a cyclic group of the given order.
    pub fn trivial(base: FreeComplex, group_order: usize) -> Self {
        let actions = base
            .degrees()
            .map(|k| IntegerMatrix::identity(base.rank(k)))
            .collect();
        EquivariantComplex::new(base, group_order, actions).expect("identity action is valid")
    }

    pub fn base(&self) -> &FreeComplex {
        &self.base
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn action(&self, k: i64) -> IntegerMatrix {
        if k < self.base.lo() || k > self.base.hi() {
            IntegerMatrix::zeros(0, 0)
        } else {
            self.actions[(k - self.base.lo()) as usize].clone()
        }
    }

    /// Chain-level coinvariants after inverting `p`.
    ///
    /// In each degree the cokernel of `g − 1` is computed; after stripping
    /// `p` it must be free, otherwise [`Error::NonFreeCoinvariants`]. The
    /// differential is pushed through the quotient maps using the Smith
    /// change of basis of `g − 1`.
    pub fn coinvariants(&self, p: &Integer) -> Result<FreeComplex, Error> {
        self.require_p_group(p)?;
        let base = &self.base;
        // (projection Z^n → Z^r, section Z^r → Z^n) per degree
        let mut quotients = Vec::new();
        for k in base.degrees() {
            let n = base.rank(k);
            let g = &self.actions[(k - base.lo()) as usize];
            quotients.push(free_quotient(&g.sub(&IntegerMatrix::identity(n)), p, k)?);
        }
        let ranks: Vec<usize> = quotients.iter().map(|(proj, _)| proj.rows()).collect();
        let mut differentials = Vec::with_capacity(ranks.len());
        for k in base.degrees() {
            let i = (k - base.lo()) as usize;
            let (_, section) = &quotients[i];
            differentials.push(match quotients.get(i + 1) {
                Some((projection, _)) => &(projection * &*base.differential(k)) * section,
                None => IntegerMatrix::zeros(0, ranks[i]),
            });
        }
        FreeComplex::new(base.lo(), ranks, differentials)
    }

    /// Homology of the complex with `p` inverted, with the automorphism the
    /// generator induces on each homology group.
    pub fn induced_action_on_homology(&self, p: &Integer) -> Result<GradedGroupWithAction, Error> {
        self.require_p_group(p)?;
        let base = &self.base;
        let mut degrees = Vec::new();
        for k in base.degrees() {
            let sq = Subquotient::homology(&base.differential(k - 1), &base.differential(k))?;
            let g = &self.actions[(k - base.lo()) as usize];
            let moved = g * &sq.generators;
            let action = sq.coordinates_of_columns(&moved)?;
            // Over Z[1/p] generator i has order equal to the prime-to-p part of its order.
            let stripped: Vec<Integer> =
                sq.orders.iter().map(|o| o.split_prime_power(p).1).collect();
            let keep: Vec<usize> = (0..stripped.len())
                .filter(|&i| !stripped[i].is_one())
                .collect();
            let orders: Vec<Integer> = keep.iter().map(|&i| stripped[i].clone()).collect();
            let mut action = action
                .select_rows(keep.iter().copied())
                .select_columns(keep.iter().copied());
            action.reduce_rows(&orders);
            degrees.push(GroupWithAction::new(orders, action, self.group_order)?);
        }
        Ok(GradedGroupWithAction::new(
            base.lo(),
            self.group_order,
            degrees,
        ))
    }

    fn require_p_group(&self, p: &Integer) -> Result<(), Error> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.clone()));
        }
        let (_, rest) = Integer::from(self.group_order).split_prime_power(p);
        if !rest.is_one() {
            return Err(Error::InvalidArgument(format!(
                "group order {} is not a power of {p}",
                self.group_order
            )));
        }
        Ok(())
    }
}

/// Projection onto and section of `(Z^n / im m) ⊗ Z[1/p]`, which must be free.
fn free_quotient(
    m: &IntegerMatrix,
    p: &Integer,
    degree: i64,
) -> Result<(IntegerMatrix, IntegerMatrix), Error> {
    let n = m.rows();
    let (factors, u, u_inv) = row_reduce(m);
    let mut leftover: Vec<Integer> = factors.iter().map(|d| d.split_prime_power(p).1).collect();
    leftover.retain(|d| !d.is_one());
    if !leftover.is_empty() {
        return Err(Error::NonFreeCoinvariants {
            degree,
            p: p.clone(),
            group: FgAbelianGroup::from_orders(&leftover).to_string(),
        });
    }
    let r = factors.len();
    Ok((u_inv.select_rows(r..n), u.select_columns(r..n)))
}

fn signed_permutation_power(g: &IntegerMatrix, exp: usize) -> IntegerMatrix {
    let mut acc = IntegerMatrix::identity(g.rows());
    for _ in 0..exp {
        acc = g * &acc;
    }
    acc
}

/// A basis element of a tensor power: factor degrees and factor basis indices.
type PowerBasis = (Vec<i64>, Vec<usize>);

/// `C^{⊗p}` with the generator of `C_p` rotating tensor factors:
/// `g·(x₁⊗…⊗x_p) = (−1)^{|x_p|(|x₁|+…+|x_{p−1}|)} x_p⊗x₁⊗…⊗x_{p−1}`.
///
/// Basis elements of each degree are ordered lexicographically by the tuple
/// of factor degrees, then by the tuple of factor basis indices.
pub fn cyclic_tensor_power(c: &FreeComplex, p: usize) -> Result<EquivariantComplex, Error> {
    if p == 0 {
        return Err(Error::InvalidArgument("tensor power needs p ≥ 1".into()));
    }
    let p_i64 = p as i64;
    let lo = c.lo() * p_i64;
    let hi = c.hi() * p_i64;
    let mut bases: Vec<Vec<PowerBasis>> = vec![Vec::new(); (hi - lo + 1) as usize];
    let occupied: Vec<i64> = c.degrees().filter(|&k| c.rank(k) > 0).collect();
    for_each_tuple(&occupied, p, &mut |degs| {
        let n: i64 = degs.iter().sum();
        let ranks: Vec<usize> = degs.iter().map(|&d| c.rank(d)).collect();
        let slot = &mut bases[(n - lo) as usize];
        for_each_index_tuple(&ranks, &mut |idx| slot.push((degs.to_vec(), idx.to_vec())));
    });
    // degree tuples are generated in lexicographic order already
    let index: Vec<HashMap<PowerBasis, usize>> = bases
        .iter()
        .map(|b| b.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect())
        .collect();
    let ranks: Vec<usize> = bases.iter().map(Vec::len).collect();

    let mut differentials = Vec::with_capacity(ranks.len());
    let mut actions = Vec::with_capacity(ranks.len());
    for n in lo..=hi {
        let slot = (n - lo) as usize;
        let above = ranks.get(slot + 1).copied().unwrap_or(0);
        let mut d = IntegerMatrix::zeros(above, ranks[slot]);
        let mut g = IntegerMatrix::zeros(ranks[slot], ranks[slot]);
        for (col, (degs, idx)) in bases[slot].iter().enumerate() {
            let mut prefix_degree = 0i64;
            for f in 0..p {
                let dc = c.differential(degs[f]);
                let sign = if prefix_degree.rem_euclid(2) == 0 {
                    1
                } else {
                    -1
                };
                for a in 0..dc.rows() {
                    let coeff = &dc[(a, idx[f])];
                    if coeff.is_zero() {
                        continue;
                    }
                    let mut tdegs = degs.clone();
                    let mut tidx = idx.clone();
                    tdegs[f] += 1;
                    tidx[f] = a;
                    let row = index[slot + 1][&(tdegs, tidx)];
                    d[(row, col)] += coeff * &Integer::from(sign);
                }
                prefix_degree += degs[f];
            }
            let last = degs[p - 1];
            let rest: i64 = degs[..p - 1].iter().sum();
            let sign = if (last * rest).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            let mut rdegs = vec![last];
            rdegs.extend_from_slice(&degs[..p - 1]);
            let mut ridx = vec![idx[p - 1]];
            ridx.extend_from_slice(&idx[..p - 1]);
            let row = index[slot][&(rdegs, ridx)];
            g[(row, col)] = Integer::from(sign);
        }
        differentials.push(d);
        actions.push(g);
    }
    let base = FreeComplex::new(lo, ranks, differentials)?;
    EquivariantComplex::new(base, p, actions)
}

fn for_each_tuple(values: &[i64], len: usize, f: &mut dyn FnMut(&[i64])) {
    fn rec(values: &[i64], len: usize, cur: &mut Vec<i64>, f: &mut dyn FnMut(&[i64])) {
        if cur.len() == len {
            f(cur);
            return;
        }
        for &v in values {
            cur.push(v);
            rec(values, len, cur, f);
            cur.pop();
        }
    }
    rec(values, len, &mut Vec::with_capacity(len), f);
}

fn for_each_index_tuple(ranks: &[usize], f: &mut dyn FnMut(&[usize])) {
    fn rec(ranks: &[usize], cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == ranks.len() {
            f(cur);
            return;
        }
        for i in 0..ranks[cur.len()] {
            cur.push(i);
            rec(ranks, cur, f);
            cur.pop();
        }
    }
    rec(ranks, &mut Vec::with_capacity(ranks.len()), f);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mod_ell(ell: i64) -> FreeComplex {
        FreeComplex::from_maps(-1, vec![1, 1], vec![IntegerMatrix::from_rows(&[vec![ell]])])
            .unwrap()
    }

    #[test]
    fn square_has_sign_action_in_bottom_degree() {
        let e = cyclic_tensor_power(&mod_ell(3), 2).unwrap();
        assert_eq!(e.action(-2), IntegerMatrix::from_rows(&[vec![-1]]));
        assert_eq!(e.action(0), IntegerMatrix::identity(1));
        assert_eq!(
            e.action(-1),
            IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]])
        );
    }

    #[test]
    fn cube_bottom_degree_sign_is_positive() {
        let e = cyclic_tensor_power(&mod_ell(2), 3).unwrap();
        assert_eq!(e.action(-3), IntegerMatrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn first_power_is_the_complex_itself() {
        let c = mod_ell(7);
        let e = cyclic_tensor_power(&c, 1).unwrap();
        assert_eq!(e.base(), &c);
        assert!(c.degrees().all(|k| e.action(k).is_identity()));
    }

    #[test]
    fn coinvariants_of_trivial_action_are_the_complex() {
        let c = mod_ell(5);
        let e = EquivariantComplex::trivial(c.clone(), 3);
        assert_eq!(e.coinvariants(&Integer::from(3)).unwrap(), c);
    }

    #[test]
    fn coinvariants_of_square_drop_the_sign_summand() {
        let e = cyclic_tensor_power(&mod_ell(3), 2).unwrap();
        let q = e.coinvariants(&Integer::from(2)).unwrap();
        assert_eq!((q.rank(-2), q.rank(-1), q.rank(0)), (0, 1, 1));
    }

    #[test]
    fn torsion_in_coinvariants_is_reported() {
        // sign action on Z: coinvariants Z/2, which vanishes once 2 is inverted
        let e = EquivariantComplex::new(
            FreeComplex::unit(0),
            2,
            vec![IntegerMatrix::from_rows(&[vec![-1]])],
        )
        .unwrap();
        assert_eq!(e.coinvariants(&Integer::from(2)).unwrap().rank(0), 0);
        assert!(matches!(
            e.coinvariants(&Integer::from(3)),
            Err(Error::InvalidArgument(_))
        ));
        let err =
            free_quotient(&IntegerMatrix::from_rows(&[vec![3]]), &Integer::from(2), 0).unwrap_err();
        assert!(matches!(err, Error::NonFreeCoinvariants { degree: 0, .. }));
        let (proj, sec) =
            free_quotient(&IntegerMatrix::from_rows(&[vec![4]]), &Integer::from(2), 0).unwrap();
        assert_eq!((proj.rows(), sec.cols()), (0, 0));
    }

    #[test]
    fn invalid_actions_are_rejected() {
        let c = mod_ell(2);
        let bad = vec![
            IntegerMatrix::identity(1),
            IntegerMatrix::from_rows(&[vec![-1]]),
        ];
        assert!(EquivariantComplex::new(c.clone(), 2, bad).is_err());
        let scaled = vec![
            IntegerMatrix::identity(1),
            IntegerMatrix::from_rows(&[vec![2]]),
        ];
        assert!(EquivariantComplex::new(c, 2, scaled).is_err());
    }
}
