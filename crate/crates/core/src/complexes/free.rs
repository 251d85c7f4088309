use std::borrow::Cow;

use serde::{Deserialize, Serialize};

use crate::exact::{homology_at, FgAbelianGroup, IntegerMatrix};
use crate::int::Integer;
use crate::Error;

/// A bounded complex of finite-rank free abelian groups. The differential
/// `d_k` maps degree `k` to degree `k + 1`, so `Z →ℓ Z` with source in degree
/// −1 has `H_0 = Z/ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex", into = "RawComplex")]
pub struct FreeComplex {
    lo: i64,
    ranks: Vec<usize>,
    // differentials[k - lo] = d_k, a rank(k+1) × rank(k) matrix
    differentials: Vec<IntegerMatrix>,
}

#[derive(Serialize, Deserialize)]
struct RawComplex {
    lo: i64,
    hi: i64,
    ranks: Vec<usize>,
    differentials: Vec<IntegerMatrix>,
}

impl TryFrom<RawComplex> for FreeComplex {
    type Error = Error;
    fn try_from(raw: RawComplex) -> Result<Self, Error> {
        if raw.hi - raw.lo + 1 != raw.ranks.len() as i64 {
            return Err(Error::InvalidComplex(format!(
                "degree range [{}, {}] does not match {} ranks",
                raw.lo,
                raw.hi,
                raw.ranks.len()
            )));
        }
        FreeComplex::new(raw.lo, raw.ranks, raw.differentials)
    }
}

impl From<FreeComplex> for RawComplex {
    fn from(c: FreeComplex) -> Self {
        RawComplex {
            lo: c.lo,
            hi: c.hi(),
            ranks: c.ranks,
            differentials: c.differentials,
        }
    }
}

impl FreeComplex {
    /// `differentials[i]` is `d_{lo+i}`; the last one must have zero rows.
    /// Checks shapes and `d ∘ d = 0`.
    pub fn new(
        lo: i64,
        ranks: Vec<usize>,
        differentials: Vec<IntegerMatrix>,
    ) -> Result<Self, Error> {
        if ranks.is_empty() {
            return Err(Error::InvalidComplex(
                "a complex needs at least one degree".into(),
            ));
        }
        if differentials.len() != ranks.len() {
            return Err(Error::InvalidComplex(format!(
                "{} degrees but {} differentials",
                ranks.len(),
                differentials.len()
            )));
        }
        for (i, d) in differentials.iter().enumerate() {
            let above = ranks.get(i + 1).copied().unwrap_or(0);
            if d.rows() != above || d.cols() != ranks[i] {
                return Err(Error::InvalidComplex(format!(
                    "d_{} is {}x{}, expected {}x{}",
                    lo + i as i64,
                    d.rows(),
                    d.cols(),
                    above,
                    ranks[i]
                )));
            }
        }
        for i in 1..differentials.len() {
            if !(&differentials[i] * &differentials[i - 1]).is_zero() {
                return Err(Error::InvalidComplex(format!(
                    "d_{} ∘ d_{} ≠ 0",
                    lo + i as i64,
                    lo + i as i64 - 1
                )));
            }
        }
        Ok(FreeComplex {
            lo,
            ranks,
            differentials,
        })
    }

    /// Builds from the maps between stored degrees: `maps[i]` is `d_{lo+i}`.
    pub fn from_maps(lo: i64, ranks: Vec<usize>, maps: Vec<IntegerMatrix>) -> Result<Self, Error> {
        let last = IntegerMatrix::zeros(0, ranks.last().copied().unwrap_or(0));
        let mut differentials = maps;
        differentials.push(last);
        Self::new(lo, ranks, differentials)
    }

    /// `Z` in degree `degree` with zero differential, the tensor unit when `degree = 0`.
    pub fn unit(degree: i64) -> Self {
        FreeComplex {
            lo: degree,
            ranks: vec![1],
            differentials: vec![IntegerMatrix::zeros(0, 1)],
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> impl DoubleEndedIterator<Item = i64> {
        self.lo..=self.hi()
    }

    pub fn rank(&self, k: i64) -> usize {
        if k < self.lo || k > self.hi() {
            0
        } else {
            self.ranks[(k - self.lo) as usize]
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `d_k: C_k → C_{k+1}`, a zero matrix of the right shape outside the stored range.
    pub fn differential(&self, k: i64) -> Cow<'_, IntegerMatrix> {
        if k < self.lo || k > self.hi() {
            Cow::Owned(IntegerMatrix::zeros(self.rank(k + 1), self.rank(k)))
        } else {
            Cow::Borrowed(&self.differentials[(k - self.lo) as usize])
        }
    }

    pub fn homology_at(&self, k: i64) -> Result<FgAbelianGroup, Error> {
        homology_at(&self.differential(k - 1), &self.differential(k))
    }

    /// `(degree, H_degree)` for every degree in range, ascending.
    pub fn homology(&self) -> Result<Vec<(i64, FgAbelianGroup)>, Error> {
        self.degrees()
            .map(|k| Ok((k, self.homology_at(k)?)))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(k) as i64)
            .sum()
    }

    /// Tensor product with the Koszul sign rule `∂(x⊗y) = ∂x⊗y + (−1)^{|x|} x⊗∂y`.
    ///
    /// A basis element of `(C⊗D)_n` is `e_a ⊗ f_b` with `e_a ∈ C_i`, `f_b ∈ D_{n−i}`;
    /// they are ordered lexicographically by `(i, a, b)`.
    pub fn tensor(&self, other: &FreeComplex) -> FreeComplex {
        let lo = self.lo + other.lo;
        let hi = self.hi() + other.hi();
        // offset of the (i, n-i) block inside degree n
        let block_offset = |n: i64, i: i64| -> usize {
            (self.lo..i)
                .map(|i2| self.rank(i2) * other.rank(n - i2))
                .sum()
        };
        let ranks: Vec<usize> = (lo..=hi).map(|n| block_offset(n, self.hi() + 1)).collect();
        let rank_of = |n: i64| -> usize {
            if n < lo || n > hi {
                0
            } else {
                ranks[(n - lo) as usize]
            }
        };
        let mut differentials = Vec::with_capacity(ranks.len());
        for n in lo..=hi {
            let mut d = IntegerMatrix::zeros(rank_of(n + 1), rank_of(n));
            for i in self.degrees() {
                let j = n - i;
                let (ri, rj) = (self.rank(i), other.rank(j));
                if ri == 0 || rj == 0 {
                    continue;
                }
                let src = block_offset(n, i);
                let dc = self.differential(i);
                let dd = other.differential(j);
                let sign = if i.rem_euclid(2) == 0 {
                    Integer::ONE
                } else {
                    Integer::from(-1)
                };
                let tgt_c = block_offset(n + 1, i + 1);
                let tgt_d = block_offset(n + 1, i);
                let rj_upper = other.rank(j + 1);
                for a in 0..ri {
                    for b in 0..rj {
                        let col = src + a * rj + b;
                        // ∂x ⊗ y lands in block (i+1, j)
                        for a2 in 0..dc.rows() {
                            let c = &dc[(a2, a)];
                            if !c.is_zero() {
                                d[(tgt_c + a2 * rj + b, col)] += c;
                            }
                        }
                        // (−1)^i x ⊗ ∂y lands in block (i, j+1)
                        for b2 in 0..dd.rows() {
                            let c = &dd[(b2, b)];
                            if !c.is_zero() {
                                d[(tgt_d + a * rj_upper + b2, col)] += &sign * c;
                            }
                        }
                    }
                }
            }
            differentials.push(d);
        }
        FreeComplex::new(lo, ranks, differentials)
            .expect("tensor product of complexes is a complex")
    }
}
