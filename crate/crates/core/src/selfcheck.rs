//! The verification suite behind `crossedk selfcheck`: one check per
//! acceptance criterion, each reporting pass or fail with a short detail.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::{cyclic_tensor_power, FreeComplex};
use crate::exact::{
    euler_phi, invariant_factors, prime_power, smith_normal_form, FgAbelianGroup, IntegerMatrix,
};
use crate::int::Integer;
use crate::kengine::{
    crossed_product, homotopy_orbits, ku_mod_ell, n_counts, orbit_routes, table, GradedKUModule,
};
use crate::localize::{lp_graded, stable_image, FiniteCyclicAlgebra};
use crate::repring::{cyclotomic_at_one, euler_xi, is_xi_zero, small_groups, xi_relation_constant};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn outcome(id: u8, name: &'static str, result: Result<String, String>) -> Outcome {
    match result {
        Ok(detail) => Outcome {
            id,
            name,
            passed: true,
            detail,
        },
        Err(detail) => Outcome {
            id,
            name,
            passed: false,
            detail,
        },
    }
}

fn err_str(e: Error) -> String {
    e.to_string()
}

/// Primes used by the pipeline checks.
pub const PRIMES: [u64; 5] = [2, 3, 5, 7, 11];
/// Coefficients used by the pipeline checks.
pub const ELLS: [i64; 6] = [2, 3, 5, 6, 7, 9];

/// All `(p, ℓ)` with `p ≤ 11` prime, `ℓ ∈ ELLS` and `p ∤ ℓ`.
pub fn coprime_pairs() -> Vec<(u64, Integer)> {
    PRIMES
        .iter()
        .flat_map(|&p| {
            ELLS.iter()
                .filter(move |&&ell| ell % p as i64 != 0)
                .map(move |&ell| (p, Integer::from(ell)))
        })
        .collect()
}

pub fn table_reproduction() -> Outcome {
    let name = "table reproduction";
    let expected: Vec<(u64, u64, u64)> =
        vec![(2, 2, 0), (3, 4, 0), (5, 8, 0), (7, 14, 2), (11, 62, 42)];
    let run = || -> Result<String, String> {
        let rows = table(&PRIMES, &Integer::from(3)).map_err(err_str)?;
        let got: Vec<(u64, u64, u64)> = rows.iter().map(|r| (r.p, r.even, r.odd)).collect();
        if got != expected {
            return Err(format!("got {got:?}, expected {expected:?}"));
        }
        Ok(format!("rows {got:?} agree by closed formula and pipeline"))
    };
    outcome(1, name, run())
}

pub fn ell_robustness() -> Outcome {
    let name = "homotopy orbits for all coprime (p, ℓ)";
    let pairs = coprime_pairs();
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|(p, ell)| {
            let (n0, n1) = n_counts(*p).ok()?;
            let want = GradedKUModule::mod_ell_power(ell, n0 as usize, n1 as usize);
            match homotopy_orbits(*p, ell) {
                Ok(got) if got == want => None,
                Ok(got) => Some(format!("(p={p}, ℓ={ell}): {got}")),
                Err(e) => Some(format!("(p={p}, ℓ={ell}): {e}")),
            }
        })
        .collect();
    let result = if failures.is_empty() {
        Ok(format!("{} pairs match (Z/ℓ)^n₀ ⊕ Σ(Z/ℓ)^n₁", pairs.len()))
    } else {
        Err(failures.join("; "))
    };
    outcome(2, name, result)
}

pub fn cyclotomic_law() -> Outcome {
    let name = "Φ_n(1) detects prime powers";
    let bad: Vec<usize> = (2..=500usize)
        .into_par_iter()
        .filter(|&n| {
            let want = prime_power(n as u64).map_or(1, |(p, _)| p);
            cyclotomic_at_one(n) != Integer::from(want)
        })
        .collect();
    let result = if bad.is_empty() {
        Ok("2 ≤ n ≤ 500".to_string())
    } else {
        Err(format!("mismatch at n = {bad:?}"))
    };
    outcome(3, name, result)
}

pub fn xi_vanishing() -> Outcome {
    let name = "ξ = 0 exactly for non-cyclic groups of order ≤ 16";
    let run = || -> Result<String, String> {
        let groups = small_groups();
        let mut non_cyclic = 0;
        for g in &groups {
            let cyclic = (0..g.group.order()).any(|x| g.group.element_order(x) == g.group.order());
            let zero = is_xi_zero(&g.group).map_err(err_str)?;
            if zero == cyclic {
                return Err(format!(
                    "{}: is_xi_zero = {zero}, cyclic = {cyclic}",
                    g.name
                ));
            }
            non_cyclic += usize::from(!cyclic);
        }
        Ok(format!("{} groups, {non_cyclic} non-cyclic", groups.len()))
    };
    outcome(4, name, run())
}

pub fn xi_relation() -> Outcome {
    let name = "ξ² = c·ξ with p | c for prime powers";
    let run = || -> Result<String, String> {
        let mut literal_mismatches = Vec::new();
        for n in 2..=60usize {
            let c = xi_relation_constant(n).ok_or(format!("no constant for n = {n}"))?;
            if c != Integer::from(n) {
                return Err(format!("n = {n}: c = {c}, expected {n}"));
            }
            let literal = match prime_power(n as u64) {
                Some((p, _)) => {
                    if !c.is_multiple_of(&Integer::from(p)) {
                        return Err(format!("n = {n}: {p} does not divide c = {c}"));
                    }
                    p
                }
                None => 1,
            };
            if c != Integer::from(literal) {
                literal_mismatches.push(n);
            }
        }
        Ok(format!(
            "c = n for 2 ≤ n ≤ 60; the constants p (prime powers) / 1 (otherwise) differ at {} values of n",
            literal_mismatches.len()
        ))
    };
    outcome(5, name, run())
}

pub fn localization_rank() -> Outcome {
    let name = "stable image of ξ has size ℓ^φ(p^k)";
    let cases: Vec<(u64, u32, i64)> = [2u64, 3, 5]
        .iter()
        .flat_map(|&p| {
            [2i64, 3, 7]
                .into_iter()
                .filter(move |ell| ell % p as i64 != 0)
                .flat_map(move |ell| (1..=3u32).map(move |k| (p, k, ell)))
        })
        .collect();
    let results: Vec<Result<String, String>> = cases
        .par_iter()
        .map(|&(p, k, ell)| {
            let n = p.pow(k) as usize;
            let ell_z = Integer::from(ell);
            let algebra = FiniteCyclicAlgebra::new(n, ell).map_err(err_str)?;
            let (_, size) = stable_image(&algebra, &euler_xi(n)).map_err(err_str)?;
            let phi = euler_phi(n as u64) as u32;
            if size != ell_z.pow(phi) {
                return Err(format!(
                    "(p={p}, k={k}, ℓ={ell}): size {size}, expected {ell}^{phi}"
                ));
            }
            if k == 1 && phi as u64 != p - 1 {
                return Err(format!("φ({p}) ≠ {}", p - 1));
            }
            Ok(if k > 1 {
                format!(
                    "(p={p},k={k},ℓ={ell}): {ell}^{phi} vs (p-1)p^k = {}",
                    (p - 1) * n as u64
                )
            } else {
                String::new()
            })
        })
        .collect();
    let mut notes = Vec::new();
    for r in results {
        match r {
            Ok(s) if !s.is_empty() => notes.push(s),
            Ok(_) => {}
            Err(e) => return outcome(6, name, Err(e)),
        }
    }
    outcome(
        6,
        name,
        Ok(format!("{} cases; {}", cases.len(), notes.join("; "))),
    )
}

pub fn projectivity() -> Outcome {
    let name = "order interchange and colim ≅ lim";
    let pairs = coprime_pairs();
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|(p, ell)| match orbit_routes(*p, ell) {
            Ok(r)
                if r.coinvariants_first == r.homology_first && r.homology_first == r.invariants =>
            {
                None
            }
            Ok(r) if r.coinvariants_first != r.homology_first => Some(format!(
                "(p={p}, ℓ={ell}): homology/coinvariants routes differ"
            )),
            Ok(_) => Some(format!(
                "(p={p}, ℓ={ell}): invariants differ from coinvariants"
            )),
            Err(e) => Some(format!("(p={p}, ℓ={ell}): {e}")),
        })
        .collect();
    let result = if failures.is_empty() {
        Ok(format!("{} pairs, degree-wise", pairs.len()))
    } else {
        Err(failures.join("; "))
    };
    outcome(7, name, result)
}

pub fn p_completion() -> Outcome {
    let name = "p-completion of both sides vanishes";
    let pairs = coprime_pairs();
    let failures: Vec<String> = pairs
        .par_iter()
        .filter_map(|(p, ell)| {
            let pz = Integer::from(*p);
            let check = || -> Result<bool, Error> {
                let orbits = homotopy_orbits(*p, ell)?;
                let total = crossed_product(*p, 1, ell)?.total.expect("k = 1");
                let zero = |m: &GradedKUModule| {
                    let (a, b) = lp_graded(m, &pz);
                    a.is_zero() && b.is_zero()
                };
                Ok(zero(&orbits) && zero(&total))
            };
            match check() {
                Ok(true) => None,
                Ok(false) => Some(format!("(p={p}, ℓ={ell}) does not complete to 0")),
                Err(e) => Some(format!("(p={p}, ℓ={ell}): {e}")),
            }
        })
        .collect();
    let result = if failures.is_empty() {
        Ok(format!("{} pairs", pairs.len()))
    } else {
        Err(failures.join("; "))
    };
    outcome(8, name, result)
}

pub fn property_suite() -> Outcome {
    let name = "SNF, Künneth, Euler characteristic, Koszul sign";
    let run = || -> Result<String, String> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for i in 0..500 {
            let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
            let m = random_matrix(&mut rng, r, c, 50);
            check_smith(&m).map_err(|e| format!("matrix {i}: {e}"))?;
        }
        let mut kunneth = 0;
        while kunneth < 40 {
            let a = random_complex(&mut rng);
            let b = random_complex(&mut rng);
            let ha = a.homology().map_err(err_str)?;
            let hb = b.homology().map_err(err_str)?;
            if total_order(&ha).is_none_or(|o| o > Integer::from(64))
                || total_order(&hb).is_none_or(|o| o > Integer::from(64))
            {
                continue;
            }
            let got = a.tensor(&b).homology().map_err(err_str)?;
            let want = kunneth_formula(&ha, &hb, a.lo() + b.lo(), a.hi() + b.hi());
            if got != want {
                return Err(format!("Künneth: {got:?} vs {want:?}"));
            }
            kunneth += 1;
        }
        let mut euler = 0;
        for (p, ell) in coprime_pairs() {
            let power = cyclic_tensor_power(&ku_mod_ell(&ell).map_err(err_str)?, p as usize)
                .map_err(err_str)?;
            let coinv = power.coinvariants(&Integer::from(p)).map_err(err_str)?;
            for c in [power.base(), &coinv] {
                let h = c.homology().map_err(err_str)?;
                let free: i64 = h
                    .iter()
                    .map(|(k, g)| if k.rem_euclid(2) == 0 { 1 } else { -1 } * g.free_rank() as i64)
                    .sum();
                if free != c.euler_characteristic() {
                    return Err(format!("Euler characteristic at (p={p}, ℓ={ell})"));
                }
                euler += 1;
            }
        }
        for ell in [2, 3, 5] {
            let power = cyclic_tensor_power(&ku_mod_ell(&Integer::from(ell)).map_err(err_str)?, 2)
                .map_err(err_str)?;
            if power.action(-2) != IntegerMatrix::from_rows(&[vec![-1]]) {
                return Err(format!(
                    "degree −2 action for ℓ = {ell} is {:?}",
                    power.action(-2)
                ));
            }
        }
        Ok(format!(
            "500 SNFs, {kunneth} Künneth pairs, {euler} Euler checks, sign action in degree −2"
        ))
    };
    outcome(9, name, run())
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntegerMatrix {
    let data = (0..rows * cols)
        .map(|_| Integer::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntegerMatrix::from_vec(rows, cols, data).expect("shape")
}

fn check_smith(m: &IntegerMatrix) -> Result<(), String> {
    let s = smith_normal_form(m);
    if &(&s.left * &s.diagonal) * &s.right != *m {
        return Err("U·D·V ≠ M".into());
    }
    if s.left.determinant().abs() != Integer::ONE || s.right.determinant().abs() != Integer::ONE {
        return Err("transform is not unimodular".into());
    }
    let f = s.factors();
    if f.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) || f.iter().any(Integer::is_negative) {
        return Err(format!("diagonal {f:?} is not a divisibility chain"));
    }
    if f != invariant_factors(m) {
        return Err("transform-free factors differ".into());
    }
    Ok(())
}

/// A random unimodular matrix: a product of elementary operations.
fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntegerMatrix {
    let mut u = IntegerMatrix::identity(n);
    if n < 2 {
        return u;
    }
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let q = Integer::from(rng.gen_range(-2..=2));
            u.add_row_multiple(i, j, &q);
        }
    }
    u
}

/// A short complex assembled from pieces `Z →a Z` and `Z`, in a random basis.
fn random_complex(rng: &mut ChaCha8Rng) -> FreeComplex {
    let len = rng.gen_range(1..=3usize);
    let lo = rng.gen_range(-2..=0i64);
    let mut ranks = vec![0usize; len];
    // (degree slot, coefficient) for two-term pieces; free pieces only bump the rank
    let mut pieces = Vec::new();
    for _ in 0..rng.gen_range(1..=3) {
        let slot = rng.gen_range(0..len);
        if slot + 1 < len && rng.gen_bool(0.7) {
            pieces.push((slot, ranks[slot], ranks[slot + 1], rng.gen_range(2..=6i64)));
            ranks[slot] += 1;
            ranks[slot + 1] += 1;
        } else {
            ranks[slot] += 1;
        }
    }
    let mut diffs: Vec<IntegerMatrix> = (0..len)
        .map(|i| IntegerMatrix::zeros(ranks.get(i + 1).copied().unwrap_or(0), ranks[i]))
        .collect();
    for (slot, src, tgt, a) in pieces {
        diffs[slot][(tgt, src)] = Integer::from(a);
    }
    let bases: Vec<(IntegerMatrix, IntegerMatrix)> = ranks
        .iter()
        .map(|&r| {
            let u = random_unimodular(rng, r);
            let inv = invert_unimodular(&u);
            (u, inv)
        })
        .collect();
    for i in 0..len.saturating_sub(1) {
        diffs[i] = &(&bases[i + 1].0 * &diffs[i]) * &bases[i].1;
    }
    FreeComplex::new(lo, ranks, diffs).expect("conjugate of a complex")
}

fn invert_unimodular(u: &IntegerMatrix) -> IntegerMatrix {
    let s = smith_normal_form(u);
    // u = L·D·R with D = I, so u⁻¹ = R⁻¹·L⁻¹
    &s.right_inv * &s.left_inv
}

fn total_order(h: &[(i64, FgAbelianGroup)]) -> Option<Integer> {
    h.iter().map(|(_, g)| g.order()).product()
}

/// Künneth for complexes of free modules with differential raising degree:
/// `H^n(C⊗D) = ⊕_{i+j=n} H^i⊗H^j ⊕ ⊕_{i+j=n+1} Tor(H^i, H^j)`.
fn kunneth_formula(
    ha: &[(i64, FgAbelianGroup)],
    hb: &[(i64, FgAbelianGroup)],
    lo: i64,
    hi: i64,
) -> Vec<(i64, FgAbelianGroup)> {
    let mut out: Vec<(i64, Vec<Integer>)> = (lo..=hi).map(|n| (n, Vec::new())).collect();
    for (i, a) in ha {
        for (j, b) in hb {
            let (oa, ob) = (a.generator_orders(), b.generator_orders());
            for x in &oa {
                for y in &ob {
                    // Z/x ⊗ Z/y = Z/gcd, Tor(Z/x, Z/y) = Z/gcd for x, y ≠ 0
                    out[(i + j - lo) as usize].1.push(x.gcd(y));
                    if !x.is_zero() && !y.is_zero() && i + j > lo {
                        out[(i + j - 1 - lo) as usize].1.push(x.gcd(y));
                    }
                }
            }
        }
    }
    out.into_iter()
        .map(|(n, orders)| (n, FgAbelianGroup::from_orders(&orders)))
        .collect()
}

/// Every check, in criterion order.
pub fn run_all() -> Vec<Outcome> {
    let checks: [fn() -> Outcome; 9] = [
        table_reproduction,
        ell_robustness,
        cyclotomic_law,
        xi_vanishing,
        xi_relation,
        localization_rank,
        projectivity,
        p_completion,
        property_suite,
    ];
    let mut out: Vec<Outcome> = checks.par_iter().map(|f| f()).collect();
    out.sort_by_key(|o| o.id);
    out
}
