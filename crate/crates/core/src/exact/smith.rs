//! Smith normal form over the integers.
//!
//! Elimination always pivots on the entry of smallest absolute value in the
//! active submatrix. Row and column operations are mirrored onto the
//! transform matrices (and their inverses) only when the caller asks for them.

use crate::exact::matrix::IntegerMatrix;
use crate::int::Integer;

/// `M = left · diagonal · right`, with `left` and `right` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntegerMatrix,
    pub left_inv: IntegerMatrix,
    pub diagonal: IntegerMatrix,
    pub right: IntegerMatrix,
    pub right_inv: IntegerMatrix,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero diagonal entries `d₁ | d₂ | … | d_rank`.
    pub fn factors(&self) -> Vec<Integer> {
        (0..self.rank)
            .map(|i| self.diagonal[(i, i)].clone())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut e = Eliminator::new(m.clone(), true, true);
    e.run();
    let rank = e.rank;
    let (row_fwd, row_inv) = e.rows.expect("tracked");
    let (col_fwd, col_inv) = e.cols.expect("tracked");
    // R·M·C = D, so M = R⁻¹·D·C⁻¹.
    SmithForm {
        left: row_inv,
        left_inv: row_fwd,
        diagonal: e.a,
        right: col_inv,
        right_inv: col_fwd,
        rank,
    }
}

/// Invariant factors only (no transforms).
pub fn invariant_factors(m: &IntegerMatrix) -> Vec<Integer> {
    let mut e = Eliminator::new(m.clone(), false, false);
    e.run();
    (0..e.rank).map(|i| e.a[(i, i)].clone()).collect()
}

/// Left transforms only: returns `(factors, U, U⁻¹)` with `U⁻¹·M·C = D` for some unimodular `C`.
pub(crate) fn row_reduce(m: &IntegerMatrix) -> (Vec<Integer>, IntegerMatrix, IntegerMatrix) {
    let mut e = Eliminator::new(m.clone(), true, false);
    e.run();
    let (fwd, inv) = e.rows.expect("tracked");
    ((0..e.rank).map(|i| e.a[(i, i)].clone()).collect(), inv, fwd)
}

/// Right transforms only: returns `(factors, V, V⁻¹)` with `R·M·V⁻¹ = D` for some unimodular `R`.
pub(crate) fn column_reduce(m: &IntegerMatrix) -> (Vec<Integer>, IntegerMatrix, IntegerMatrix) {
    let mut e = Eliminator::new(m.clone(), false, true);
    e.run();
    let (fwd, inv) = e.cols.expect("tracked");
    ((0..e.rank).map(|i| e.a[(i, i)].clone()).collect(), inv, fwd)
}

pub fn rank(m: &IntegerMatrix) -> usize {
    invariant_factors(m).len()
}

struct Eliminator {
    a: IntegerMatrix,
    // (R, R⁻¹) with R·M·C = A throughout
    rows: Option<(IntegerMatrix, IntegerMatrix)>,
    // (C, C⁻¹)
    cols: Option<(IntegerMatrix, IntegerMatrix)>,
    rank: usize,
}

impl Eliminator {
    fn new(a: IntegerMatrix, track_rows: bool, track_cols: bool) -> Self {
        let r = a.rows();
        let c = a.cols();
        Eliminator {
            rows: track_rows.then(|| (IntegerMatrix::identity(r), IntegerMatrix::identity(r))),
            cols: track_cols.then(|| (IntegerMatrix::identity(c), IntegerMatrix::identity(c))),
            a,
            rank: 0,
        }
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        if x == y {
            return;
        }
        self.a.swap_rows(x, y);
        if let Some((fwd, inv)) = &mut self.rows {
            fwd.swap_rows(x, y);
            inv.swap_cols(x, y);
        }
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        if x == y {
            return;
        }
        self.a.swap_cols(x, y);
        if let Some((fwd, inv)) = &mut self.cols {
            fwd.swap_cols(x, y);
            inv.swap_rows(x, y);
        }
    }

    /// row[target] += q·row[source]
    fn row_op(&mut self, target: usize, source: usize, q: &Integer) {
        self.a.add_row_multiple(target, source, q);
        if let Some((fwd, inv)) = &mut self.rows {
            fwd.add_row_multiple(target, source, q);
            inv.add_col_multiple(source, target, &-q);
        }
    }

    /// col[target] += q·col[source]
    fn col_op(&mut self, target: usize, source: usize, q: &Integer) {
        self.a.add_col_multiple(target, source, q);
        if let Some((fwd, inv)) = &mut self.cols {
            fwd.add_col_multiple(target, source, q);
            inv.add_row_multiple(source, target, &-q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some((fwd, inv)) = &mut self.rows {
            fwd.negate_row(i);
            inv.negate_col(i);
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = Integer::ZERO;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let v = &self.a[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let abs = v.abs();
                if best.is_none() || abs < best_abs {
                    let unit = abs.is_one();
                    best = Some((i, j));
                    best_abs = abs;
                    if unit {
                        return best;
                    }
                }
            }
        }
        best
    }

    /// Smallest nonzero entry in column t (rows ≥ t) or row t (cols ≥ t).
    fn smallest_in_cross(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let mut best_abs = Integer::ZERO;
        let candidates = (t..self.a.rows())
            .map(|i| (i, t))
            .chain((t + 1..self.a.cols()).map(|j| (t, j)));
        for (i, j) in candidates {
            let v = &self.a[(i, j)];
            if v.is_zero() {
                continue;
            }
            let abs = v.abs();
            if best.is_none() || abs < best_abs {
                best = Some((i, j));
                best_abs = abs;
            }
        }
        best
    }

    fn run(&mut self) {
        let (nr, nc) = (self.a.rows(), self.a.cols());
        let mut t = 0;
        while t < nr.min(nc) {
            let Some((pi, pj)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a[(t, t)].clone();
                let mut clean = true;
                for i in t + 1..nr {
                    if self.a[(i, t)].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[(i, t)].div_rem_euclid(&pivot);
                    self.row_op(i, t, &-q);
                    if !r.is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..nc {
                    if self.a[(t, j)].is_zero() {
                        continue;
                    }
                    let (q, r) = self.a[(t, j)].div_rem_euclid(&pivot);
                    self.col_op(j, t, &-q);
                    if !r.is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    let (i, j) = self.smallest_in_cross(t).expect("pivot survives");
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                if pivot.abs().is_one() {
                    break;
                }
                // d_t must divide every entry of the remaining block
                let offender = (t + 1..nr)
                    .find(|&i| (t + 1..nc).any(|j| !self.a[(i, j)].is_multiple_of(&pivot)));
                match offender {
                    Some(i) => self.row_op(t, i, &Integer::ONE),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        self.rank = t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntegerMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(&(&s.left * &s.diagonal) * &s.right, *m);
        assert!((&s.left * &s.left_inv).is_identity());
        assert!((&s.right * &s.right_inv).is_identity());
        let f = s.factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(f.iter().all(|d| !d.is_negative() && !d.is_zero()));
        s
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntegerMatrix::identity(2));
        assert!(s.left.is_identity() && s.right.is_identity() && s.diagonal.is_identity());
    }

    #[test]
    fn two_by_two_example() {
        let s = check(&IntegerMatrix::from_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.factors(), vec![Integer::from(2), Integer::from(4)]);
    }

    #[test]
    fn zero_and_empty() {
        let s = check(&IntegerMatrix::zeros(3, 2));
        assert_eq!(s.rank, 0);
        assert!(s.diagonal.is_zero());
        let s = check(&IntegerMatrix::zeros(0, 4));
        assert_eq!(s.rank, 0);
        let s = check(&IntegerMatrix::zeros(2, 0));
        assert_eq!(s.right.rows(), 0);
    }

    #[test]
    fn non_divisible_block_is_fixed_up() {
        // diag(2,3) ~ diag(1,6)
        let s = check(&IntegerMatrix::from_rows(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.factors(), vec![Integer::from(1), Integer::from(6)]);
    }
}
