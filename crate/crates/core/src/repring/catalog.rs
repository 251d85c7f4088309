//! All groups of order at most 16, up to isomorphism, as Cayley tables.

use std::collections::HashMap;

use crate::repring::group::FiniteGroup;

/// Largest order covered by [`small_groups`].
pub const MAX_ORDER: usize = 16;

/// A named group from the catalog.
#[derive(Clone, Debug)]
pub struct CatalogGroup {
    pub name: &'static str,
    pub group: FiniteGroup,
}

/// `⟨a, b | a^m, b^s = a^t, b a b⁻¹ = a^r⟩`, elements `a^i b^j` at index `j·m + i`.
/// Requires `r^s ≡ 1` and `t·r ≡ t (mod m)`.
pub fn metacyclic(m: usize, s: usize, t: usize, r: usize) -> FiniteGroup {
    let n = m * s;
    let mut rpow = vec![1 % m; s];
    for j in 1..s {
        rpow[j] = rpow[j - 1] * r % m;
    }
    assert_eq!(rpow[s - 1] * r % m, 1 % m, "r^s must be 1 mod m");
    assert_eq!(t * r % m, t % m, "b^s must be central");
    let table = (0..n)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            (0..n)
                .map(|y| {
                    let (k, l) = (y % m, y / m);
                    // a^i b^j a^k b^l = a^{i + k r^j} b^{j+l}
                    let mut a = i + k * rpow[j];
                    let mut b = j + l;
                    if b >= s {
                        b -= s;
                        a += t;
                    }
                    b * m + a % m
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table).expect("metacyclic presentation defines a group")
}

pub fn cyclic(n: usize) -> FiniteGroup {
    metacyclic(n, 1, 0, 1)
}

pub fn dihedral(n: usize) -> FiniteGroup {
    metacyclic(n, 2, 0, n - 1)
}

/// `A ⋊ C_s` where the generator of `C_s` acts by the automorphism `phi` of `A`
/// (given as a permutation of element indices); `(a, j)` sits at index `j·|A| + a`.
pub fn semidirect_cyclic(base: &FiniteGroup, s: usize, phi: &[usize]) -> FiniteGroup {
    let m = base.order();
    let mut phis: Vec<Vec<usize>> = vec![(0..m).collect()];
    for j in 1..s {
        phis.push(phis[j - 1].iter().map(|&x| phi[x]).collect());
    }
    let n = m * s;
    let table = (0..n)
        .map(|x| {
            let (a, j) = (x % m, x / m);
            (0..n)
                .map(|y| {
                    let (a2, l) = (y % m, y / m);
                    ((j + l) % s) * m + base.mul(a, phis[j][a2])
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table).expect("automorphism defines a semidirect product")
}

/// The subgroup of the symmetric group on `degree` points generated by `gens`;
/// elements are indexed in order of discovery, identity first.
pub fn permutation_group(degree: usize, gens: &[Vec<usize>]) -> FiniteGroup {
    let id: Vec<usize> = (0..degree).collect();
    let mut elements = vec![id.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
    let mut i = 0;
    while i < elements.len() {
        for g in gens {
            let prod: Vec<usize> = (0..degree).map(|k| elements[i][g[k]]).collect();
            if !index.contains_key(&prod) {
                index.insert(prod.clone(), elements.len());
                elements.push(prod);
            }
        }
        i += 1;
    }
    let table = elements
        .iter()
        .map(|a| {
            elements
                .iter()
                .map(|b| index[&(0..degree).map(|k| a[b[k]]).collect::<Vec<_>>()])
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table).expect("permutations form a group")
}

/// The automorphism of `C4 × C2 = ⟨a⟩ × ⟨b⟩` (indices `2·i + j` for `a^i b^j`)
/// sending `a ↦ a^{ai} b^{aj}`, `b ↦ a^{bi} b^{bj}`.
fn c4c2_automorphism(a_img: (usize, usize), b_img: (usize, usize)) -> Vec<usize> {
    (0..8)
        .map(|x| {
            let (i, j) = (x / 2, x % 2);
            let e4 = (i * a_img.0 + j * b_img.0) % 4;
            let e2 = (i * a_img.1 + j * b_img.1) % 2;
            2 * e4 + e2
        })
        .collect()
}

/// Every group of order `≤ 16` exactly once, ordered by order and then by
/// the conventional small-group numbering.
pub fn small_groups() -> Vec<CatalogGroup> {
    let c = cyclic;
    let c4c2 = c(4).direct_product(&c(2));
    let q8 = metacyclic(4, 2, 2, 3);
    let mut out = Vec::new();
    let mut add = |name: &'static str, group: FiniteGroup| out.push(CatalogGroup { name, group });
    add("c1", c(1));
    add("c2", c(2));
    add("c3", c(3));
    add("c4", c(4));
    add("c2xc2", c(2).direct_product(&c(2)));
    add("c5", c(5));
    add("s3", dihedral(3));
    add("c6", c(6));
    add("c7", c(7));
    add("c8", c(8));
    add("c4xc2", c4c2.clone());
    add("d8", dihedral(4));
    add("q8", q8.clone());
    add("c2xc2xc2", c(2).direct_product(&c(2)).direct_product(&c(2)));
    add("c9", c(9));
    add("c3xc3", c(3).direct_product(&c(3)));
    add("d10", dihedral(5));
    add("c10", c(10));
    add("c11", c(11));
    add("dic12", metacyclic(3, 4, 0, 2));
    add("c12", c(12));
    add(
        "a4",
        permutation_group(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]),
    );
    add("d12", dihedral(6));
    add("c6xc2", c(6).direct_product(&c(2)));
    add("c13", c(13));
    add("d14", dihedral(7));
    add("c14", c(14));
    add("c15", c(15));
    add("c16", c(16));
    add("c4xc4", c(4).direct_product(&c(4)));
    add(
        "c2xc2_semidirect_c4",
        semidirect_cyclic(&c4c2, 2, &c4c2_automorphism((1, 1), (0, 1))),
    );
    add("c4_semidirect_c4", metacyclic(4, 4, 0, 3));
    add("c8xc2", c(8).direct_product(&c(2)));
    add("m16", metacyclic(8, 2, 0, 5));
    add("d16", dihedral(8));
    add("sd16", metacyclic(8, 2, 0, 3));
    add("q16", metacyclic(8, 2, 4, 7));
    add("c4xc2xc2", c4c2.direct_product(&c(2)));
    add("c2xd8", c(2).direct_product(&dihedral(4)));
    add("c2xq8", c(2).direct_product(&q8));
    add(
        "pauli",
        semidirect_cyclic(&c4c2, 2, &c4c2_automorphism((1, 0), (2, 1))),
    );
    add(
        "c2xc2xc2xc2",
        c(2).direct_product(&c(2))
            .direct_product(&c(2))
            .direct_product(&c(2)),
    );
    out
}

/// Number of isomorphism classes of groups of each order `1..=16`.
pub const COUNTS: [usize; MAX_ORDER] = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_per_order() {
        let groups = small_groups();
        assert_eq!(groups.len(), 42);
        for (i, &count) in COUNTS.iter().enumerate() {
            assert_eq!(
                groups.iter().filter(|g| g.group.order() == i + 1).count(),
                count,
                "order {}",
                i + 1
            );
        }
    }

    #[test]
    fn named_properties() {
        let groups = small_groups();
        let get = |name: &str| &groups.iter().find(|g| g.name == name).unwrap().group;
        assert!(!get("q8").is_abelian());
        assert_eq!(
            (0..8).filter(|&g| get("q8").element_order(g) == 2).count(),
            1
        );
        assert_eq!(get("a4").conjugacy_classes().len(), 4);
        assert!(get("c4xc2").is_abelian());
        assert!(!get("pauli").is_abelian());
    }
}
