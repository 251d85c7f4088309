//! Python bindings: abelian groups, integer matrices, chain complexes,
//! finite groups and the K-theory computations.

use std::path::PathBuf;

use crossedk::complexes::FreeComplex;
use crossedk::exact::{self, FgAbelianGroup, IntegerMatrix};
use crossedk::kengine::{self, GradedKUModule, Status};
use crossedk::localize::{self, FiniteCyclicAlgebra};
use crossedk::repring::{self, FiniteGroup};
use crossedk::{selfcheck, Error, Integer};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::CompositionNonzero
        | Error::NonFreeCoinvariants { .. }
        | Error::NonStabilizing(_)
        | Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

type Rows = Vec<Vec<BigInt>>;

fn big(v: &Integer) -> BigInt {
    v.to_bigint()
}

fn bigs(v: &[Integer]) -> Vec<BigInt> {
    v.iter().map(big).collect()
}

fn integer(v: BigInt) -> Integer {
    Integer::from(v)
}

fn matrix(rows: Vec<Vec<BigInt>>, cols: Option<usize>) -> PyResult<IntegerMatrix> {
    let cols = cols.or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
    let r = rows.len();
    if rows.iter().any(|row| row.len() != cols) {
        return Err(PyValueError::new_err("ragged matrix"));
    }
    let data = rows.into_iter().flatten().map(integer).collect();
    IntegerMatrix::from_vec(r, cols, data).map_err(py_err)
}

fn rows_of(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| bigs(m.row(i))).collect()
}

/// A finitely generated abelian group `Z^r ⊕ Z/d₁ ⊕ … ⊕ Z/d_k` with `d₁ | … | d_k`.
#[pyclass(name = "AbelianGroup", eq, frozen, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyAbelianGroup(FgAbelianGroup);

#[pymethods]
impl PyAbelianGroup {
    #[new]
    #[pyo3(signature = (free_rank=0, torsion=Vec::new()))]
    fn new(free_rank: usize, torsion: Vec<BigInt>) -> PyResult<Self> {
        FgAbelianGroup::new(free_rank, torsion.into_iter().map(integer).collect())
            .map(Self)
            .map_err(py_err)
    }

    /// Any list of cyclic orders (0 for Z), normalized to invariant factors.
    #[staticmethod]
    fn from_orders(orders: Vec<BigInt>) -> Self {
        Self(FgAbelianGroup::from_orders(
            &orders.into_iter().map(integer).collect::<Vec<_>>(),
        ))
    }

    #[getter]
    fn free_rank(&self) -> usize {
        self.0.free_rank()
    }

    #[getter]
    fn torsion(&self) -> Vec<BigInt> {
        bigs(self.0.torsion())
    }

    /// The order, or `None` when infinite.
    #[getter]
    fn order(&self) -> Option<BigInt> {
        self.0.order().as_ref().map(big)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn direct_sum(&self, other: &Self) -> Self {
        Self(self.0.direct_sum(&other.0))
    }

    fn strip_prime(&self, p: BigInt) -> Self {
        Self(exact::strip_prime(&self.0, &integer(p)))
    }

    /// `(p-adic rank, p-power torsion)` of the p-completion.
    fn p_complete(&self, p: BigInt) -> (usize, Vec<BigInt>) {
        let c = exact::p_complete(&self.0, &integer(p));
        (c.padic_rank, bigs(&c.p_torsion))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(Self)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("AbelianGroup({})", self.0)
    }
}

/// Smith normal form `M = U·D·V` as `(U, D, V, invariant factors)`.
#[pyfunction]
#[pyo3(signature = (rows, cols=None))]
fn smith_normal_form(rows: Rows, cols: Option<usize>) -> PyResult<(Rows, Rows, Rows, Vec<BigInt>)> {
    let s = exact::smith_normal_form(&matrix(rows, cols)?);
    Ok((
        rows_of(&s.left),
        rows_of(&s.diagonal),
        rows_of(&s.right),
        bigs(&s.factors()),
    ))
}

/// Cokernel of the integer matrix given by its rows.
#[pyfunction]
#[pyo3(signature = (rows, cols=None))]
fn cokernel(rows: Vec<Vec<BigInt>>, cols: Option<usize>) -> PyResult<PyAbelianGroup> {
    Ok(PyAbelianGroup(exact::cokernel(&matrix(rows, cols)?)))
}

/// `ker d_out / im d_in`; the composite must vanish.
#[pyfunction]
#[pyo3(signature = (d_in, d_out, d_in_cols=None, d_out_cols=None))]
fn homology_at(
    d_in: Vec<Vec<BigInt>>,
    d_out: Vec<Vec<BigInt>>,
    d_in_cols: Option<usize>,
    d_out_cols: Option<usize>,
) -> PyResult<PyAbelianGroup> {
    let d_in = matrix(d_in, d_in_cols)?;
    let d_out_cols = d_out_cols.or(Some(d_in.rows()));
    let d_out = matrix(d_out, d_out_cols)?;
    exact::homology_at(&d_in, &d_out)
        .map(PyAbelianGroup)
        .map_err(py_err)
}

/// A bounded cochain complex of free abelian groups, `d_k: C_k → C_{k+1}`.
#[pyclass(name = "FreeComplex", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyFreeComplex(FreeComplex);

#[pymethods]
impl PyFreeComplex {
    /// `differentials[i]` is the matrix of `d_{lo+i}` as a list of rows.
    #[new]
    fn new(lo: i64, ranks: Vec<usize>, differentials: Vec<Vec<Vec<BigInt>>>) -> PyResult<Self> {
        let maps = differentials
            .into_iter()
            .enumerate()
            .map(|(i, rows)| matrix(rows, ranks.get(i).copied()))
            .collect::<PyResult<Vec<_>>>()?;
        FreeComplex::from_maps(lo, ranks, maps)
            .map(Self)
            .map_err(py_err)
    }

    /// The model `Z →ℓ Z` of KU/ℓ in degrees −1, 0.
    #[staticmethod]
    fn ku_mod_ell(ell: BigInt) -> PyResult<Self> {
        kengine::ku_mod_ell(&integer(ell)).map(Self).map_err(py_err)
    }

    #[getter]
    fn lo(&self) -> i64 {
        self.0.lo()
    }

    #[getter]
    fn hi(&self) -> i64 {
        self.0.hi()
    }

    fn rank(&self, k: i64) -> usize {
        self.0.rank(k)
    }

    fn differential(&self, k: i64) -> Vec<Vec<BigInt>> {
        rows_of(&self.0.differential(k))
    }

    fn homology(&self) -> PyResult<Vec<(i64, PyAbelianGroup)>> {
        let h = self.0.homology().map_err(py_err)?;
        Ok(h.into_iter().map(|(k, g)| (k, PyAbelianGroup(g))).collect())
    }

    fn euler_characteristic(&self) -> i64 {
        self.0.euler_characteristic()
    }

    /// Tensor product with the Koszul sign.
    fn tensor(&self, other: &Self) -> Self {
        Self(self.0.tensor(&other.0))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }
}

/// A 2-periodic KU-module: an (even, odd) pair of abelian groups.
#[pyclass(name = "GradedKUModule", eq, frozen, from_py_object)]
#[derive(Clone, PartialEq)]
struct PyGradedKUModule(GradedKUModule);

#[pymethods]
impl PyGradedKUModule {
    #[new]
    fn new(even: PyAbelianGroup, odd: PyAbelianGroup) -> Self {
        Self(GradedKUModule::new(even.0, odd.0))
    }

    #[getter]
    fn even(&self) -> PyAbelianGroup {
        PyAbelianGroup(self.0.even.clone())
    }

    #[getter]
    fn odd(&self) -> PyAbelianGroup {
        PyAbelianGroup(self.0.odd.clone())
    }

    /// `(even, odd)` copies of `Z/ℓ`, or `None` if not of that form.
    fn mod_ell_counts(&self, ell: BigInt) -> Option<(usize, usize)> {
        self.0.mod_ell_counts(&integer(ell))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GradedKUModule({})", self.0)
    }
}

/// A finite group given by its Cayley table, identity at index 0.
#[pyclass(name = "FiniteGroup", frozen)]
struct PyFiniteGroup(FiniteGroup);

#[pymethods]
impl PyFiniteGroup {
    #[new]
    fn new(table: Vec<Vec<usize>>) -> PyResult<Self> {
        FiniteGroup::from_table(table).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        FiniteGroup::load(&path).map(Self).map_err(py_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        FiniteGroup::parse(text).map(Self).map_err(py_err)
    }

    /// The catalog of groups of order ≤ 16 as `(name, group)` pairs.
    #[staticmethod]
    fn small_groups() -> Vec<(String, Self)> {
        repring::small_groups()
            .into_iter()
            .map(|g| (g.name.to_string(), Self(g.group)))
            .collect()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn table(&self) -> Vec<Vec<usize>> {
        self.0.table().to_vec()
    }

    fn is_abelian(&self) -> bool {
        self.0.is_abelian()
    }

    fn is_cyclic(&self) -> bool {
        self.0.is_cyclic()
    }

    fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        self.0.conjugacy_classes()
    }

    /// `(class, value)` pairs of the ξ class function.
    fn xi_character(&self) -> Vec<(Vec<usize>, BigInt)> {
        let chi = repring::xi_class_function(&self.0);
        chi.classes
            .iter()
            .cloned()
            .zip(chi.values.iter().map(big))
            .collect()
    }

    fn is_xi_zero(&self) -> PyResult<bool> {
        repring::is_xi_zero(&self.0).map_err(py_err)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }
}

/// Coefficients of ξ in `Z[x]/(xⁿ − 1)`.
#[pyfunction]
fn euler_xi(n: usize) -> PyResult<Vec<BigInt>> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be at least 1"));
    }
    Ok(bigs(repring::euler_xi(n).coeffs()))
}

/// The constant `c` with `ξ² = c·ξ`.
#[pyfunction]
fn xi_relation_constant(n: usize) -> Option<BigInt> {
    repring::xi_relation_constant(n).as_ref().map(big)
}

/// Coefficients of Φ_n, constant term first.
#[pyfunction]
fn cyclotomic(n: usize) -> PyResult<Vec<BigInt>> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be at least 1"));
    }
    Ok(bigs(repring::cyclotomic(n).coeffs()))
}

#[pyfunction]
fn cyclotomic_at_one(n: usize) -> PyResult<BigInt> {
    if n < 2 {
        return Err(PyValueError::new_err("n must be at least 2"));
    }
    Ok(big(&repring::cyclotomic_at_one(n)))
}

/// `(n₀(p), n₁(p))`.
#[pyfunction]
fn n_counts(p: u64) -> PyResult<(u64, u64)> {
    kengine::n_counts(p).map_err(py_err)
}

/// Homotopy orbits of the cyclic action on `(KU/ℓ)^⊗p`.
#[pyfunction]
fn homotopy_orbits(p: u64, ell: BigInt) -> PyResult<PyGradedKUModule> {
    kengine::homotopy_orbits(p, &integer(ell))
        .map(PyGradedKUModule)
        .map_err(py_err)
}

/// Result of [`crossed_product`].
#[pyclass(name = "CrossedProduct", frozen, get_all)]
struct PyCrossedProduct {
    /// `"complete"` or `"partial"`.
    status: String,
    total: Option<PyGradedKUModule>,
    s_xi_summand: Option<PyGradedKUModule>,
    xi_inverted_summand: PyGradedKUModule,
    note: Option<String>,
}

/// K-theory of the mod-ℓ crossed product by `C_{p^k}`.
#[pyfunction]
#[pyo3(signature = (p, ell, k=1))]
fn crossed_product(p: u64, ell: BigInt, k: u32) -> PyResult<PyCrossedProduct> {
    let r = kengine::crossed_product(p, k, &integer(ell)).map_err(py_err)?;
    Ok(PyCrossedProduct {
        status: if r.status == Status::Complete {
            "complete"
        } else {
            "partial"
        }
        .to_string(),
        total: r.total.map(PyGradedKUModule),
        s_xi_summand: r.s_xi_summand.map(PyGradedKUModule),
        xi_inverted_summand: PyGradedKUModule(r.xi_inverted_summand),
        note: r.note,
    })
}

/// Stable image of ξ on `(Z/ℓ)[x]/(xⁿ − 1)` as `(group, size)`.
#[pyfunction]
fn stable_image(n: usize, ell: i64) -> PyResult<(PyAbelianGroup, BigInt)> {
    let algebra = FiniteCyclicAlgebra::new(n, ell).map_err(py_err)?;
    let (g, size) = localize::stable_image(&algebra, &repring::euler_xi(n)).map_err(py_err)?;
    Ok((PyAbelianGroup(g), big(&size)))
}

/// The localization report as a JSON string.
#[pyfunction]
#[pyo3(signature = (p, ell, k=1))]
fn localization_report(p: u64, ell: BigInt, k: u32) -> PyResult<String> {
    let r = localize::localization_report(p, k, &integer(ell)).map_err(py_err)?;
    Ok(serde_json::to_string(&r).expect("serializable"))
}

/// Rows `(p, n₀ + p − 1, n₁)`, each computed by both routes.
#[pyfunction]
fn table(primes: Vec<u64>, ell: BigInt) -> PyResult<Vec<(u64, u64, u64)>> {
    let rows = kengine::table(&primes, &integer(ell)).map_err(py_err)?;
    Ok(rows.into_iter().map(|r| (r.p, r.even, r.odd)).collect())
}

/// Every acceptance check as `(id, passed, line)`.
#[pyfunction]
fn run_selfcheck(py: Python<'_>) -> Vec<(u8, bool, String)> {
    py.detach(selfcheck::run_all)
        .into_iter()
        .map(|o| (o.id, o.passed, o.line()))
        .collect()
}

#[pymodule]
fn crossedk_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAbelianGroup>()?;
    m.add_class::<PyFreeComplex>()?;
    m.add_class::<PyGradedKUModule>()?;
    m.add_class::<PyFiniteGroup>()?;
    m.add_class::<PyCrossedProduct>()?;
    m.add_function(wrap_pyfunction!(smith_normal_form, m)?)?;
    m.add_function(wrap_pyfunction!(cokernel, m)?)?;
    m.add_function(wrap_pyfunction!(homology_at, m)?)?;
    m.add_function(wrap_pyfunction!(euler_xi, m)?)?;
    m.add_function(wrap_pyfunction!(xi_relation_constant, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic, m)?)?;
    m.add_function(wrap_pyfunction!(cyclotomic_at_one, m)?)?;
    m.add_function(wrap_pyfunction!(n_counts, m)?)?;
    m.add_function(wrap_pyfunction!(homotopy_orbits, m)?)?;
    m.add_function(wrap_pyfunction!(crossed_product, m)?)?;
    m.add_function(wrap_pyfunction!(stable_image, m)?)?;
    m.add_function(wrap_pyfunction!(localization_report, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    m.add_function(wrap_pyfunction!(run_selfcheck, m)?)?;
    Ok(())
}
