//! Kernels, cokernels and subquotients of integer lattices.

use crate::exact::abelian::FgAbelianGroup;
use crate::exact::matrix::IntegerMatrix;
use crate::exact::smith::{column_reduce, row_reduce};
use crate::int::Integer;
use crate::Error;

/// `Z^rows / im(M)`.
pub fn cokernel(m: &IntegerMatrix) -> FgAbelianGroup {
    FgAbelianGroup::cokernel_of(m)
}

/// Columns form a basis of the integer kernel of `m`. The basis is saturated:
/// `Z^cols / ker` is torsion-free.
pub fn kernel_basis(m: &IntegerMatrix) -> IntegerMatrix {
    KernelLattice::of(m).basis
}

/// Saturated kernel of a matrix together with a coordinate map on it.
#[derive(Clone, Debug)]
pub struct KernelLattice {
    /// `cols(M) × k`, columns are a basis.
    pub basis: IntegerMatrix,
    /// `k × cols(M)`, with `coordinates · basis = I`.
    pub coordinates: IntegerMatrix,
    /// `x` lies in the kernel exactly when `complement · x = 0`.
    pub complement: IntegerMatrix,
}

impl KernelLattice {
    pub fn of(m: &IntegerMatrix) -> Self {
        // R·M·V⁻¹ = D: kernel is spanned by the columns of V⁻¹ past the rank,
        // and the matching rows of V read off coordinates.
        let (factors, v, v_inv) = column_reduce(m);
        let r = factors.len();
        let n = m.cols();
        KernelLattice {
            basis: v_inv.select_columns(r..n),
            coordinates: v.select_rows(r..n),
            complement: v.select_rows(0..r),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }
}

/// `ker(d_out) / im(d_in)` for `d_in: Z^a → Z^b`, `d_out: Z^b → Z^c`.
pub fn homology_at(d_in: &IntegerMatrix, d_out: &IntegerMatrix) -> Result<FgAbelianGroup, Error> {
    check_composable(d_in, d_out)?;
    let kernel = KernelLattice::of(d_out);
    let image_coords = &kernel.coordinates * d_in;
    Ok(FgAbelianGroup::cokernel_of(&image_coords))
}

pub(crate) fn check_composable(d_in: &IntegerMatrix, d_out: &IntegerMatrix) -> Result<(), Error> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "incoming map has {} rows but outgoing map has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    if !(d_out * d_in).is_zero() {
        return Err(Error::CompositionNonzero);
    }
    Ok(())
}

/// A subquotient `L / N` of `Z^n` with an explicit generating system.
///
/// Generator `i` is column `i` of `generators` and has additive order
/// `orders[i]` (zero for infinite order). Every order differs from one, and the
/// nonzero orders come first, forming a divisibility chain.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub generators: IntegerMatrix,
    pub orders: Vec<Integer>,
    // coordinates(x) = post · ((pre · x) ⊘ divisors); x ∈ L iff complement·x = 0
    // and the division is exact
    pre: IntegerMatrix,
    complement: IntegerMatrix,
    divisors: Vec<Integer>,
    post: IntegerMatrix,
}

impl Subquotient {
    /// `ker(d_out) / im(d_in)` with generators.
    pub fn homology(d_in: &IntegerMatrix, d_out: &IntegerMatrix) -> Result<Self, Error> {
        check_composable(d_in, d_out)?;
        let kernel = KernelLattice::of(d_out);
        let divisors = vec![Integer::ONE; kernel.rank()];
        let n_coords = &kernel.coordinates * d_in;
        Ok(Self::build_from_coords(
            kernel.basis,
            kernel.coordinates,
            kernel.complement,
            divisors,
            &n_coords,
        ))
    }

    /// `span(l_gens) / span(n_gens)`; requires `span(n_gens) ⊆ span(l_gens)`.
    pub fn of_spans(l_gens: &IntegerMatrix, n_gens: &IntegerMatrix) -> Result<Self, Error> {
        if l_gens.rows() != n_gens.rows() {
            return Err(Error::DimensionMismatch(
                "subquotient ambient dimensions differ".into(),
            ));
        }
        let n = l_gens.rows();
        // l_gens = U·D·C: span is spanned by dᵢ·U[:, i]; coordinates are (U⁻¹x)ᵢ / dᵢ.
        let (factors, u, u_inv) = row_reduce(l_gens);
        let r = factors.len();
        let mut basis = u.select_columns(0..r);
        for (j, d) in factors.iter().enumerate() {
            for i in 0..n {
                basis[(i, j)] = &basis[(i, j)] * d;
            }
        }
        let pre = u_inv.select_rows(0..r);
        let complement = u_inv.select_rows(r..n);
        let not_contained =
            || Error::Internal("submodule is not contained in the ambient lattice".into());
        if !(&complement * n_gens).is_zero() {
            return Err(not_contained());
        }
        let n_coords = divide_rows(&(&pre * n_gens), &factors).ok_or_else(not_contained)?;
        Ok(Self::build_from_coords(
            basis, pre, complement, factors, &n_coords,
        ))
    }

    fn build_from_coords(
        basis: IntegerMatrix,
        pre: IntegerMatrix,
        complement: IntegerMatrix,
        divisors: Vec<Integer>,
        n_coords: &IntegerMatrix,
    ) -> Self {
        // n_coords = U'·D'·C'; new basis basis·U', new coordinates U'⁻¹·old.
        let (factors, u, u_inv) = row_reduce(n_coords);
        let s = basis.cols();
        let mut orders: Vec<Integer> = factors;
        orders.resize(s, Integer::ZERO);
        let keep: Vec<usize> = (0..s).filter(|&i| !orders[i].is_one()).collect();
        let generators = &basis * &u.select_columns(keep.iter().copied());
        let post = u_inv.select_rows(keep.iter().copied());
        let orders = keep.iter().map(|&i| orders[i].clone()).collect();
        Subquotient {
            generators,
            orders,
            pre,
            complement,
            divisors,
            post,
        }
    }

    pub fn group(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_orders(&self.orders)
    }

    pub fn num_generators(&self) -> usize {
        self.orders.len()
    }

    /// Generator coordinates of each column of `x` (columns must lie in `L`),
    /// reduced modulo the generator orders.
    pub fn coordinates_of_columns(&self, x: &IntegerMatrix) -> Result<IntegerMatrix, Error> {
        let outside = || Error::Internal("vector outside the subquotient lattice".into());
        if !(&self.complement * x).is_zero() {
            return Err(outside());
        }
        let lifted = divide_rows(&(&self.pre * x), &self.divisors).ok_or_else(outside)?;
        let mut c = &self.post * &lifted;
        c.reduce_rows(&self.orders);
        Ok(c)
    }
}

fn divide_rows(m: &IntegerMatrix, divisors: &[Integer]) -> Option<IntegerMatrix> {
    let mut out = m.clone();
    for (i, d) in divisors.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        for j in 0..m.cols() {
            out[(i, j)] = m[(i, j)].div_exact(d)?;
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows)
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&m(&[vec![6]])), FgAbelianGroup::cyclic(6));
        assert_eq!(
            cokernel(&IntegerMatrix::zeros(3, 0)),
            FgAbelianGroup::free(3)
        );
        assert_eq!(
            cokernel(&m(&[vec![1, 0], vec![0, 4]])),
            FgAbelianGroup::cyclic(4)
        );
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&IntegerMatrix::identity(3)).cols(), 0);
        let k = kernel_basis(&IntegerMatrix::zeros(2, 3));
        assert_eq!((k.rows(), k.cols()), (3, 3));
        assert_eq!(k.determinant().abs(), Integer::ONE);
        let k = kernel_basis(&m(&[vec![2, -2]]));
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        assert_eq!(v[0], v[1]);
        assert_eq!(v[0].abs(), Integer::ONE);
    }

    #[test]
    fn homology_examples() {
        let h = homology_at(&m(&[vec![5]]), &IntegerMatrix::zeros(0, 1)).unwrap();
        assert_eq!(h, FgAbelianGroup::cyclic(5));
        let h = homology_at(&IntegerMatrix::zeros(2, 0), &IntegerMatrix::zeros(0, 2)).unwrap();
        assert_eq!(h, FgAbelianGroup::free(2));
        let h = homology_at(&m(&[vec![2], vec![0]]), &m(&[vec![0, 3]])).unwrap();
        assert_eq!(h, FgAbelianGroup::cyclic(2));
        assert!(matches!(
            homology_at(&m(&[vec![1]]), &m(&[vec![1]])),
            Err(Error::CompositionNonzero)
        ));
    }

    #[test]
    fn subquotient_generators_have_the_stated_orders() {
        let sq = Subquotient::homology(&m(&[vec![2], vec![0]]), &m(&[vec![0, 3]])).unwrap();
        assert_eq!(sq.orders, vec![Integer::from(2)]);
        let g = sq.generators.column(0);
        assert!(g[1].is_zero() && !g[0].is_multiple_of(&Integer::from(2)));

        // 2Z² / (4Z ⊕ 6Z) ≅ Z/2 ⊕ Z/3
        let sq = Subquotient::of_spans(
            &IntegerMatrix::scalar(2, &Integer::from(2)),
            &m(&[vec![4, 0], vec![0, 6]]),
        )
        .unwrap();
        assert_eq!(sq.group(), FgAbelianGroup::cyclic(6));
        let c = sq.coordinates_of_columns(&m(&[vec![2], vec![2]])).unwrap();
        assert_eq!(c.rows(), 1);
        assert!(!c[(0, 0)].is_zero());
        assert!(sq.coordinates_of_columns(&m(&[vec![1], vec![0]])).is_err());
    }
}
