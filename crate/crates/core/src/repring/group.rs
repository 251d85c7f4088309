use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::int::Integer;
use crate::repring::poly::IntegerPolynomial;
use crate::Error;

/// Orders up to which associativity is checked on every triple.
const TRIPLE_LOOP_LIMIT: usize = 64;

/// A finite group given by its Cayley table; element `0` is the identity and
/// `table[g][h]` is the index of `g·h`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
}

impl FiniteGroup {
    /// Validates shape, the identity law for element 0, the Latin-square
    /// property and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, Error> {
        let n = table.len();
        let bad = |msg: String| Err(Error::InvalidCayleyTable(msg));
        if n == 0 {
            return bad("dimension: the table is empty".into());
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return bad(format!(
                    "dimension: row {g} has {} entries, expected {n}",
                    row.len()
                ));
            }
            if let Some(h) = row.iter().position(|&x| x >= n) {
                return bad(format!(
                    "dimension: entry ({g}, {h}) = {} is out of range",
                    row[h]
                ));
            }
        }
        for g in 0..n {
            if table[0][g] != g || table[g][0] != g {
                return bad(format!(
                    "identity: element 0 is not a two-sided identity for element {g}"
                ));
            }
        }
        let mut seen = vec![usize::MAX; n];
        for (g, row) in table.iter().enumerate() {
            for (h, &x) in row.iter().enumerate() {
                if seen[x] == g {
                    return bad(format!(
                        "Latin square: element {x} repeats in row {g} (column {h})"
                    ));
                }
                seen[x] = g;
            }
        }
        let mut seen = vec![usize::MAX; n];
        for h in 0..n {
            for g in 0..n {
                let x = table[g][h];
                if seen[x] == h {
                    return bad(format!(
                        "Latin square: element {x} repeats in column {h} (row {g})"
                    ));
                }
                seen[x] = h;
            }
        }
        let group = FiniteGroup { order: n, table };
        group.check_associative()?;
        Ok(group)
    }

    fn check_associative(&self) -> Result<(), Error> {
        let n = self.order;
        // Above the limit, checking (a·b)·s = a·(b·s) for s in a generating set
        // suffices: the set of such s is closed under products.
        let right: Vec<usize> = if n <= TRIPLE_LOOP_LIMIT {
            (0..n).collect()
        } else {
            self.generating_set()
        };
        for a in 0..n {
            for b in 0..n {
                let ab = self.table[a][b];
                for &s in &right {
                    if self.table[ab][s] != self.table[a][self.table[b][s]] {
                        return Err(Error::InvalidCayleyTable(format!(
                            "associativity: ({a}·{b})·{s} ≠ {a}·({b}·{s})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy generating set: repeatedly add the smallest element outside the
    /// closure of the current set under multiplication.
    pub fn generating_set(&self) -> Vec<usize> {
        let n = self.order;
        let mut gens = Vec::new();
        let mut inside = vec![false; n];
        inside[0] = true;
        while let Some(g) = (0..n).find(|&g| !inside[g]) {
            gens.push(g);
            let mut members: Vec<usize> = (0..n).filter(|&x| inside[x]).collect();
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &s in &gens {
                    for y in [self.table[x][s], self.table[s][x]] {
                        if !inside[y] {
                            inside[y] = true;
                            members.push(y);
                        }
                    }
                }
                i += 1;
            }
        }
        gens
    }

    /// Parses the text format: the order on the first line, then one row of
    /// whitespace-separated 0-based indices per element.
    pub fn parse(text: &str) -> Result<Self, Error> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidCayleyTable("dimension: missing order line".into()))?;
        let n: usize = header.parse().map_err(|_| {
            Error::InvalidCayleyTable(format!("dimension: bad order line {header:?}"))
        })?;
        let mut table = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| {
                    Error::InvalidCayleyTable(format!("dimension: row {i} has a non-index entry"))
                })?;
            table.push(row);
        }
        if table.len() != n {
            return Err(Error::InvalidCayleyTable(format!(
                "dimension: order {n} but {} rows",
                table.len()
            )));
        }
        Self::from_table(table)
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}\n", self.order);
        for row in &self.table {
            let cells: Vec<String> = row.iter().map(usize::to_string).collect();
            writeln!(s, "{}", cells.join(" ")).unwrap();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.table[g]
            .iter()
            .position(|&x| x == 0)
            .expect("Latin square")
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.table[x][g];
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|g| (0..g).all(|h| self.table[g][h] == self.table[h][g]))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|g| self.element_order(g) == self.order)
    }

    /// Conjugacy classes, each sorted, ordered by smallest element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order;
        let inv: Vec<usize> = (0..n).map(|g| self.inverse(g)).collect();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = (0..n)
                .map(|h| self.table[self.table[h][g]][inv[h]])
                .collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                class_of[x] = classes.len();
            }
            classes.push(class);
        }
        classes
    }

    /// `G × H` with `(g, h)` at index `g·|H| + h`.
    pub fn direct_product(&self, other: &FiniteGroup) -> FiniteGroup {
        let m = other.order;
        let n = self.order * m;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| self.table[x / m][y / m] * m + other.table[x % m][y % m])
                    .collect()
            })
            .collect();
        FiniteGroup { order: n, table }
    }
}

/// An integer-valued function on the conjugacy classes of a finite group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassFunction {
    pub classes: Vec<Vec<usize>>,
    pub values: Vec<Integer>,
}

impl ClassFunction {
    pub fn value_at(&self, g: usize) -> &Integer {
        let i = self
            .classes
            .iter()
            .position(|c| c.binary_search(&g).is_ok())
            .expect("element of the group");
        &self.values[i]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Integer::is_zero)
    }
}

/// The character of `ξ = Λ₋₁(V)` for `V` the reduced regular representation.
///
/// At an element of order `d`, the characteristic polynomial of `g` on the
/// regular representation is `(x^d − 1)^{|G|/d}`; dropping the trivial summand
/// divides it by `x − 1`, and `χ_ξ(g)` is the quotient evaluated at `1`.
pub fn xi_class_function(group: &FiniteGroup) -> ClassFunction {
    let classes = group.conjugacy_classes();
    let n = group.order();
    let values = classes
        .iter()
        .map(|c| {
            let d = group.element_order(c[0]);
            let charpoly = IntegerPolynomial::x_pow_minus_one(d).pow((n / d) as u32);
            charpoly
                .div_exact(&IntegerPolynomial::x_pow_minus_one(1))
                .expect("x − 1 divides the characteristic polynomial")
                .eval(&Integer::ONE)
        })
        .collect();
    ClassFunction { classes, values }
}

/// Whether `ξ` vanishes for `group`, cross-checked against the absence of an
/// element of order `|G|`.
pub fn is_xi_zero(group: &FiniteGroup) -> Result<bool, Error> {
    let zero = xi_class_function(group).is_zero();
    let cyclic = group.is_cyclic();
    if zero == cyclic {
        return Err(Error::Internal(format!(
            "ξ character {} but the group {} cyclic",
            if zero { "vanishes" } else { "is nonzero" },
            if cyclic { "is" } else { "is not" }
        )));
    }
    Ok(zero)
}
