//! Independent oracles shared by the integration tests. Nothing here calls
//! into the crate's Smith normal form, polynomial or group code.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::path::{Path, PathBuf};

use crossedk::{FgAbelianGroup, Integer, IntegerMatrix};

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

pub fn z(v: i64) -> Integer {
    Integer::from(v)
}

pub fn mat(rows: &[Vec<i64>]) -> IntegerMatrix {
    IntegerMatrix::from_rows(rows)
}

pub fn to_rows(m: &IntegerMatrix) -> Vec<Vec<i128>> {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.to_i64().unwrap() as i128)
                .collect()
        })
        .collect()
}

pub fn group(free_rank: usize, torsion: &[i64]) -> FgAbelianGroup {
    FgAbelianGroup::new(free_rank, torsion.iter().map(|&t| z(t)).collect()).unwrap()
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * det(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank and invariant factors from determinantal divisors `D_k = gcd of k×k minors`.
pub fn minor_invariants(m: &[Vec<i128>], cols: usize) -> (usize, Vec<i128>) {
    let rows = m.len();
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for r in subsets(rows, k) {
            for c in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = r
                    .iter()
                    .map(|&i| c.iter().map(|&j| m[i][j]).collect())
                    .collect();
                g = gcd(g, det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    let factors = divisors.windows(2).map(|w| w[1] / w[0]).collect();
    (divisors.len() - 1, factors)
}

/// `ker(d_out) / im(d_in)` via ranks and determinantal divisors: the kernel is
/// saturated, so the torsion of the quotient is the torsion of `coker(d_in)`.
pub fn homology_oracle(
    d_in: &[Vec<i128>],
    d_in_cols: usize,
    d_out: &[Vec<i128>],
    n: usize,
) -> (usize, Vec<i128>) {
    let (rank_out, _) = minor_invariants(d_out, n);
    let (rank_in, factors) = minor_invariants(d_in, d_in_cols);
    let torsion = factors.into_iter().filter(|&f| f != 1).collect();
    (n - rank_out - rank_in, torsion)
}

/// Invariant-factor form of `⊕ Z/oᵢ` (0 meaning `Z`) by primary decomposition.
pub fn invariant_form(orders: &[u64]) -> (usize, Vec<u64>) {
    let free = orders.iter().filter(|&&o| o == 0).count();
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &o in orders.iter().filter(|&&o| o > 1) {
        let mut m = o;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                let mut q = 1;
                while m % p == 0 {
                    m /= p;
                    q *= p;
                }
                by_prime.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.iter().enumerate() {
            factors[len - 1 - i] *= q;
        }
    }
    (free, factors)
}

pub fn fg_from_form((free, torsion): (usize, Vec<u64>)) -> FgAbelianGroup {
    FgAbelianGroup::new(free, torsion.into_iter().map(Integer::from).collect()).unwrap()
}

/// Künneth assembled piece by piece from the homology of the factors, for
/// differentials that raise degree.
pub fn kunneth_oracle(
    ha: &[(i64, usize, Vec<u64>)],
    hb: &[(i64, usize, Vec<u64>)],
) -> BTreeMap<i64, (usize, Vec<u64>)> {
    let mut pieces: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
    let gens = |free: usize, torsion: &[u64]| {
        let mut v = vec![0u64; free];
        v.extend_from_slice(torsion);
        v
    };
    for (i, fa, ta) in ha {
        for (j, fb, tb) in hb {
            for &x in &gens(*fa, ta) {
                for &y in &gens(*fb, tb) {
                    let g = gcd(x as i128, y as i128) as u64;
                    pieces.entry(i + j).or_default().push(g);
                    if x != 0 && y != 0 {
                        pieces.entry(i + j - 1).or_default().push(g);
                    }
                }
            }
        }
    }
    pieces
        .into_iter()
        .map(|(k, v)| (k, invariant_form(&v)))
        .collect()
}

/// Element order by repeated multiplication.
pub fn element_order(table: &[Vec<usize>], g: usize) -> usize {
    let mut x = g;
    let mut k = 1;
    while x != 0 {
        x = table[x][g];
        k += 1;
    }
    k
}

pub fn is_cyclic(table: &[Vec<usize>]) -> bool {
    (0..table.len()).any(|g| element_order(table, g) == table.len())
}

fn closure(table: &[Vec<usize>], gens: &[usize]) -> HashSet<usize> {
    let mut seen = HashSet::from([0]);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = table[x][g];
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Brute-force isomorphism test: try every assignment of generator images
/// with matching element orders.
pub fn isomorphic(a: &[Vec<usize>], b: &[Vec<usize>]) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let orders_a: Vec<usize> = (0..n).map(|g| element_order(a, g)).collect();
    let orders_b: Vec<usize> = (0..n).map(|g| element_order(b, g)).collect();
    let (mut sa, mut sb) = (orders_a.clone(), orders_b.clone());
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let mut gens = Vec::new();
    while closure(a, &gens).len() < n {
        let next = (0..n)
            .rev()
            .find(|g| !closure(a, &gens).contains(g))
            .unwrap();
        gens.push(next);
    }
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..n).filter(|&h| orders_b[h] == orders_a[g]).collect())
        .collect();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = choice
            .iter()
            .zip(&candidates)
            .map(|(&c, cand)| cand[c])
            .collect();
        if let Some(map) = extend(a, b, &gens, &images) {
            let hom = (0..n).all(|x| (0..n).all(|y| map[a[x][y]] == b[map[x]][map[y]]));
            if hom {
                return true;
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return false;
            }
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn extend(
    a: &[Vec<usize>],
    b: &[Vec<usize>],
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let n = a.len();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = a[x][g];
            let img = b[map[x]][h];
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push_back(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    let distinct: HashSet<usize> = map.iter().copied().collect();
    (distinct.len() == n).then_some(map)
}

/// Plain parser for the Cayley file format.
pub fn read_cayley(path: &Path) -> Vec<Vec<usize>> {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines.next().unwrap().trim().parse().unwrap();
    let table: Vec<Vec<usize>> = lines
        .map(|l| l.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect();
    assert_eq!(table.len(), n);
    table
}

pub fn prime_power_base(n: u64) -> Option<u64> {
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    (m == 1).then_some(p)
}

pub fn totient(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k as i128, n as i128) == 1).count() as u64
}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while m > 1 {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    sign
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division by a monic polynomial.
fn poly_div(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= c * y;
        }
    }
    assert!(r.iter().all(|&x| x == 0), "inexact division");
    q
}

/// `Φ_n = Π_{d|n} (x^d − 1)^{μ(n/d)}`, coefficients low to high.
pub fn cyclotomic_mobius(n: u64) -> Vec<i128> {
    let mut num = vec![1i128];
    let mut den = vec![1i128];
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let mut f = vec![0i128; d as usize + 1];
        f[0] = -1;
        f[d as usize] = 1;
        match mobius(n / d) {
            1 => num = poly_mul(&num, &f),
            -1 => den = poly_mul(&den, &f),
            _ => {}
        }
    }
    poly_div(&num, &den)
}

/// `Π_{k=1}^{n−1} (1 − x^k)` reduced mod `xⁿ − 1`, by direct expansion.
pub fn xi_expansion(n: usize) -> Vec<i128> {
    let mut f = vec![0i128; n];
    f[0] = 1;
    for k in 1..n {
        let mut g = f.clone();
        for (i, c) in f.iter().enumerate() {
            g[(i + k) % n] -= c;
        }
        f = g;
    }
    f
}

pub fn cyclic_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let n = a.len();
    let mut out = vec![0; n];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[(i + j) % n] += x * y;
        }
    }
    out
}

/// Size of the eventual image of multiplication by `f` on `(Z/ℓ)[x]/(xⁿ − 1)`,
/// by iterating the image set until it stops shrinking.
pub fn stable_image_exhaustive(n: usize, ell: u64, f: &[i128]) -> u64 {
    let total = ell.pow(n as u32);
    let decode = |mut code: u64| {
        let mut v = vec![0i128; n];
        for c in v.iter_mut() {
            *c = (code % ell) as i128;
            code /= ell;
        }
        v
    };
    let encode = |v: &[i128]| {
        v.iter()
            .rev()
            .fold(0u64, |acc, &c| acc * ell + c.rem_euclid(ell as i128) as u64)
    };
    let mut current: Vec<u64> = (0..total).collect();
    loop {
        let mut next: Vec<u64> = current
            .iter()
            .map(|&c| encode(&cyclic_mul(&decode(c), f)))
            .collect();
        next.sort_unstable();
        next.dedup();
        if next.len() == current.len() {
            return next.len() as u64;
        }
        current = next;
    }
}

fn inv_mod(a: i128, q: i128) -> i128 {
    (1..q).find(|&b| (a * b).rem_euclid(q) == 1).expect("unit")
}

fn trim(f: &mut Vec<i128>) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
}

fn fq_rem(a: &[i128], b: &[i128], q: i128) -> Vec<i128> {
    let mut r: Vec<i128> = a.iter().map(|c| c.rem_euclid(q)).collect();
    trim(&mut r);
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), q);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let c = (r.last().unwrap() * inv).rem_euclid(q);
        let shift = r.len() - 1 - db;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = (r[shift + j] - c * y).rem_euclid(q);
        }
        r.pop();
        if r.is_empty() {
            r.push(0);
        }
        trim(&mut r);
    }
    r
}

fn fq_gcd(a: &[i128], b: &[i128], q: i128) -> Vec<i128> {
    let mut a: Vec<i128> = a.iter().map(|c| c.rem_euclid(q)).collect();
    let mut b: Vec<i128> = b.iter().map(|c| c.rem_euclid(q)).collect();
    trim(&mut a);
    trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        let r = fq_rem(&a, &b, q);
        a = b;
        b = r;
    }
    a
}

fn fq_div(a: &[i128], b: &[i128], q: i128) -> Vec<i128> {
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), q);
    let mut r: Vec<i128> = a.iter().map(|c| c.rem_euclid(q)).collect();
    let mut out = vec![0; r.len() - db];
    for i in (0..out.len()).rev() {
        let c = (r[i + db] * inv).rem_euclid(q);
        out[i] = c;
        for (j, y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] - c * y).rem_euclid(q);
        }
    }
    out
}

/// `log_q` of the size of the eventual image of `f` on `F_q[x]/(xⁿ − 1)`:
/// the degree of the largest factor of `xⁿ − 1` coprime to `f`.
pub fn stable_image_degree_fq(n: usize, q: u64, f: &[i128]) -> usize {
    let q = q as i128;
    let mut h = vec![0i128; n + 1];
    h[0] = q - 1;
    h[n] = 1;
    loop {
        let g = fq_gcd(&h, f, q);
        if g.len() == 1 {
            return h.len() - 1;
        }
        h = fq_div(&h, &g, q);
    }
}

/// Ranks of the closed formulas for `n₀(p)`, `n₁(p)` via the homology ranks
/// `rk H_{−j} = (C(p−1, j) + (−1)^{j−1}(1 − p))/p`, summed by parity for `p > 2`.
pub fn counts_from_ranks(p: u64) -> (u64, u64) {
    if p == 2 {
        return (1, 0);
    }
    let binom = |n: u64, k: u64| {
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128) as i128
    };
    let (mut even, mut odd) = (0i128, 0i128);
    for j in 0..p {
        let sign: i128 = if j % 2 == 1 { 1 } else { -1 };
        let numer = binom(p - 1, j) + sign * (1 - p as i128);
        assert_eq!(numer % p as i128, 0);
        if j % 2 == 0 {
            even += numer / p as i128;
        } else {
            odd += numer / p as i128;
        }
    }
    (even as u64, odd as u64)
}

/// Number of `C_p`-orbits on `j`-subsets of `Z/p`: the coinvariant rank in degree `−j`.
pub fn orbit_count(p: usize, j: usize) -> usize {
    let mut seen = HashSet::new();
    let mut orbits = 0;
    for mask in 0u32..(1 << p) {
        if mask.count_ones() as usize != j || seen.contains(&mask) {
            continue;
        }
        orbits += 1;
        let mut m = mask;
        for _ in 0..p {
            seen.insert(m);
            m = ((m << 1) | (m >> (p - 1))) & ((1 << p) - 1);
        }
    }
    orbits
}

fn adjugate(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = m.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    // adj[i][j] = (−1)^{i+j} det(m without row j, column i)
                    let minor: Vec<Vec<i128>> = (0..n)
                        .filter(|&r| r != j)
                        .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c]).collect())
                        .collect();
                    let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                    sign * det(&minor)
                })
                .collect()
        })
        .collect()
}

/// Number of elements `x` of `Zⁿ / L` with `m·x = 0`, where `L` is spanned by
/// the columns of the full-rank square `lattice`, counted over the box of
/// representatives `[0, |det|)ⁿ` using `v ∈ L ⟺ adj·v ≡ 0 (mod det)`.
pub fn coset_kill_count(lattice: &[Vec<i128>], m: u64) -> u64 {
    let n = lattice.len();
    let d = det(lattice).abs();
    assert!(d != 0);
    let adj = adjugate(lattice);
    let box_size = (d as u64).pow(n as u32);
    let mut hits = 0u64;
    for code in 0..box_size {
        let mut x = vec![0i128; n];
        let mut c = code;
        for v in x.iter_mut() {
            *v = (c % d as u64) as i128 * m as i128;
            c /= d as u64;
        }
        let member = adj
            .iter()
            .all(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum::<i128>() % d == 0);
        if member {
            hits += 1;
        }
    }
    // each class has |det|^{n−1} representatives in the box
    hits / (d as u64).pow(n as u32 - 1)
}
