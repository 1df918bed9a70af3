//! Python bindings. Rationals cross the boundary as strings such as `"-3/2"`;
//! structured reports cross as JSON text.

use std::sync::Arc;

use dshier::ds::{
    densities, densities_agree, flatness_check, gauge_perturb, kdv_comparison, random_kernel_element, solve_recursion,
    HierarchyResult,
};
use dshier::grading::{
    classify_perturbation, find_integrable_element, g2_triple, integrable_triple_check, nilpotent_type_probe,
    nilpotent_type_test, sl2_from_partition, sl_principal_triple, so_integrable_triple, table1_rows, DegreeChoice,
    DynkinGrading, IntegrableTriple, ProbeVerdict, SearchBudget, TripleJson,
};
use dshier::liealg::{build_g2, build_sl, build_so_from_partition, build_sp, LieAlgebraJson, LieAlgebraSpec, LieElement};
use dshier::pva::{
    affine_bracket, check_axioms, functional_bracket, functional_eq, ham_flow, lenard_run, poisson_structure_matrix,
    variational_derivative, DiffPoly, GenBracketTable, LocalFunctional, RandomShape, VarSet,
};
use dshier::rational::{fmt_rational, parse_rational};
use dshier::{Error, HalfInt};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

create_exception!(dshier_py, DshierError, PyException, "A computation in dshier failed.");
create_exception!(dshier_py, WindowTooSmallError, DshierError, "The degree window does not determine the request.");

fn err(e: Error) -> PyErr {
    match e {
        Error::Parse(_) | Error::InvalidParameter(_) | Error::Partition(_) => PyValueError::new_err(e.to_string()),
        Error::WindowTooSmall(_) => WindowTooSmallError::new_err(e.to_string()),
        _ => DshierError::new_err(e.to_string()),
    }
}

fn json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

fn half(s: &str) -> PyResult<HalfInt> {
    s.parse().map_err(err)
}

fn coords(alg: &Arc<LieAlgebraSpec>, v: &[String]) -> PyResult<LieElement> {
    let c = v.iter().map(|s| parse_rational(s)).collect::<dshier::Result<Vec<_>>>().map_err(err)?;
    LieElement::new(alg, c).map_err(err)
}

fn strings(x: &LieElement) -> Vec<String> {
    x.coords().iter().map(fmt_rational).collect()
}

#[pyclass(name = "LieAlgebra", frozen)]
struct PyLieAlgebra {
    inner: Arc<LieAlgebraSpec>,
    partition: Option<Vec<usize>>,
}

#[pymethods]
impl PyLieAlgebra {
    #[staticmethod]
    fn sl(n: usize) -> PyResult<Self> {
        Ok(PyLieAlgebra { inner: Arc::new(build_sl(n).map_err(err)?), partition: None })
    }

    /// `so_N` in the basis adapted to a partition of `N`.
    #[staticmethod]
    fn so(partition: Vec<usize>) -> PyResult<Self> {
        let (alg, _) = build_so_from_partition(&partition).map_err(err)?;
        Ok(PyLieAlgebra { inner: Arc::new(alg), partition: Some(partition) })
    }

    #[staticmethod]
    fn sp(n: usize) -> PyResult<Self> {
        Ok(PyLieAlgebra { inner: Arc::new(build_sp(n).map_err(err)?), partition: None })
    }

    #[staticmethod]
    fn g2() -> PyResult<Self> {
        Ok(PyLieAlgebra { inner: Arc::new(build_g2().map_err(err)?), partition: None })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let j: LieAlgebraJson = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyLieAlgebra { inner: Arc::new(j.to_spec().map_err(err)?), partition: None })
    }

    fn to_json(&self) -> String {
        json(&LieAlgebraJson::from_spec(&self.inner))
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn validate(&self) -> PyResult<()> {
        self.inner.validate().map_err(err)
    }

    fn bracket(&self, x: Vec<String>, y: Vec<String>) -> PyResult<Vec<String>> {
        let (x, y) = (coords(&self.inner, &x)?, coords(&self.inner, &y)?);
        Ok(strings(&x.bracket(&y).map_err(err)?))
    }

    fn __repr__(&self) -> String {
        format!("LieAlgebra({}, dim={})", self.inner.name(), self.inner.dim())
    }
}

#[pyclass(name = "Grading", frozen)]
struct PyGrading {
    inner: DynkinGrading,
    partition: Option<Vec<usize>>,
}

#[pymethods]
impl PyGrading {
    /// Grading of the nilpotent with the given Jordan type; for `so` the
    /// partition is the one the algebra was built from.
    #[staticmethod]
    #[pyo3(signature = (alg, partition = None))]
    fn from_partition(alg: &PyLieAlgebra, partition: Option<Vec<usize>>) -> PyResult<Self> {
        let triple = match &alg.partition {
            Some(p) => {
                let (_, idx) = build_so_from_partition(p).map_err(err)?;
                sl2_from_partition(&alg.inner, Some(&idx), partition.as_deref().unwrap_or(p)).map_err(err)?
            }
            None => {
                let p = partition.ok_or_else(|| PyValueError::new_err("a partition is required"))?;
                sl2_from_partition(&alg.inner, None, &p).map_err(err)?
            }
        };
        Ok(PyGrading { inner: DynkinGrading::from_triple(&triple).map_err(err)?, partition: alg.partition.clone() })
    }

    /// Grading of a `G2` nilpotent: `A1`, `~A1` or `G2`.
    #[staticmethod]
    fn g2(alg: &PyLieAlgebra, label: &str) -> PyResult<Self> {
        let t = g2_triple(&alg.inner, label).map_err(err)?;
        Ok(PyGrading { inner: DynkinGrading::from_triple(&t).map_err(err)?, partition: None })
    }

    #[getter]
    fn depth(&self) -> String {
        self.inner.depth().to_string()
    }

    #[getter]
    fn nilpotent_type(&self) -> bool {
        nilpotent_type_test(&self.inner)
    }

    #[getter]
    fn omega_rank(&self) -> usize {
        self.inner.omega_form().rank()
    }

    /// `(degree, dimension)` in increasing degree.
    fn piece_dims(&self) -> Vec<(String, usize)> {
        self.inner.pieces().iter().map(|(k, v)| (k.to_string(), v.len())).collect()
    }

    /// Whether a random `f + E`, `E ∈ g_d`, turned out non-nilpotent.
    #[pyo3(signature = (trials = 20, seed = 1))]
    fn probe_non_nilpotent(&self, trials: usize, seed: u64) -> PyResult<bool> {
        let v = nilpotent_type_probe(self.inner.f(), &self.inner, trials, seed).map_err(err)?;
        Ok(matches!(v, ProbeVerdict::NotNilpotentType { .. }))
    }

    /// Searches `g_d` (`"depth"`) or `g_{d−1/2}` (`"depth-1/2"`) for `E`
    /// completing an integrable triple.
    #[pyo3(signature = (degree = "depth-1/2", seed = 1))]
    fn find_integrable(&self, degree: &str, seed: u64) -> PyResult<Option<PyTriple>> {
        let choice = match degree {
            "depth" => DegreeChoice::Depth,
            "depth-1/2" => DegreeChoice::DepthMinusHalf,
            other => return Err(PyValueError::new_err(format!("unknown degree choice `{other}`"))),
        };
        let out = find_integrable_element(&self.inner, choice, SearchBudget::default(), seed).map_err(err)?;
        Ok(out.found.map(|t| PyTriple { inner: t, partition: self.partition.clone() }))
    }
}

#[pyclass(name = "IntegrableTriple", frozen)]
struct PyTriple {
    inner: IntegrableTriple,
    /// Partition of an `so` algebra, kept so that `algebra` keeps its basis.
    partition: Option<Vec<usize>>,
}

#[pymethods]
impl PyTriple {
    #[staticmethod]
    fn so(partition: Vec<usize>) -> PyResult<Self> {
        Ok(PyTriple { inner: so_integrable_triple(&partition).map_err(err)?.0, partition: Some(partition) })
    }

    #[staticmethod]
    fn sl_principal(n: usize) -> PyResult<Self> {
        Ok(PyTriple { inner: sl_principal_triple(n).map_err(err)?, partition: None })
    }

    #[staticmethod]
    fn from_json(alg: &PyLieAlgebra, text: &str) -> PyResult<Self> {
        let j: TripleJson = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyTriple { inner: IntegrableTriple::from_json(&alg.inner, &j).map_err(err)?, partition: alg.partition.clone() })
    }

    fn to_json(&self) -> String {
        json(&self.inner.to_json())
    }

    #[getter]
    fn algebra(&self) -> PyLieAlgebra {
        PyLieAlgebra { inner: self.inner.algebra().clone(), partition: self.partition.clone() }
    }

    #[getter]
    fn depth(&self) -> String {
        self.inner.grading.depth().to_string()
    }

    #[getter]
    fn degree(&self) -> Option<String> {
        self.inner.degree().map(|d| d.to_string())
    }

    #[getter]
    fn e(&self) -> Vec<String> {
        strings(&self.inner.big_e)
    }

    /// `(all conditions hold, failure messages)`.
    fn check(&self) -> (bool, Vec<String>) {
        let r = integrable_triple_check(&self.inner);
        (r.all_pass(), r.failures)
    }

    /// `(kind, element type)` of `f + E`, e.g. `("quasicyclic", "mixed")`.
    fn classification(&self) -> PyResult<(String, String)> {
        let c = classify_perturbation(self.inner.f(), &self.inner.big_e, &self.inner.grading).map_err(err)?;
        let s = |v: serde_json::Value| v.as_str().unwrap_or_default().to_string();
        Ok((s(serde_json::to_value(c.kind).unwrap()), s(serde_json::to_value(c.element_type).unwrap())))
    }
}

#[pyclass(name = "DiffPoly", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDiffPoly {
    inner: DiffPoly,
    vars: VarSet,
}

#[pymethods]
impl PyDiffPoly {
    /// Parses the text syntax, e.g. `"3*u*u[1] + c*u[3]"`.
    #[new]
    #[pyo3(signature = (text, vars = vec!["u".to_string()]))]
    fn new(text: &str, vars: Vec<String>) -> PyResult<Self> {
        let vars = VarSet::try_named(vars).map_err(err)?;
        Ok(PyDiffPoly { inner: DiffPoly::parse(text, &vars).map_err(err)?, vars })
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.vars.names().to_vec()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Total derivative `∂`.
    fn d(&self) -> Self {
        PyDiffPoly { inner: self.inner.d_total(), vars: self.vars.clone() }
    }

    fn variational_derivative(&self, var: &str) -> PyResult<Self> {
        let i = self.vars.index_of(var).ok_or_else(|| PyValueError::new_err(format!("unknown variable {var}")))?;
        Ok(PyDiffPoly { inner: variational_derivative(&self.inner, i), vars: self.vars.clone() })
    }

    /// Equality of `∫self` and `∫other` modulo total derivatives.
    fn integral_eq(&self, other: &PyDiffPoly) -> bool {
        functional_eq(&LocalFunctional::new(self.inner.clone()), &LocalFunctional::new(other.inner.clone()))
    }

    fn __add__(&self, o: &PyDiffPoly) -> Self {
        PyDiffPoly { inner: &self.inner + &o.inner, vars: self.vars.clone() }
    }

    fn __sub__(&self, o: &PyDiffPoly) -> Self {
        PyDiffPoly { inner: &self.inner - &o.inner, vars: self.vars.clone() }
    }

    fn __mul__(&self, o: &PyDiffPoly) -> Self {
        PyDiffPoly { inner: &self.inner * &o.inner, vars: self.vars.clone() }
    }

    fn __eq__(&self, o: &PyDiffPoly) -> bool {
        self.inner == o.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_text(&self.vars)
    }

    fn __repr__(&self) -> String {
        format!("DiffPoly({:?})", self.inner.to_text(&self.vars))
    }
}

#[pyclass(name = "BracketTable", frozen)]
struct PyTable {
    inner: GenBracketTable,
}

impl PyTable {
    fn wrap(&self, p: DiffPoly) -> PyDiffPoly {
        PyDiffPoly { inner: p, vars: self.inner.vars().clone() }
    }

    fn own(&self, p: &PyDiffPoly) -> PyResult<DiffPoly> {
        if p.vars.names() != self.inner.vars().names() {
            return Err(PyValueError::new_err("polynomial variables differ from the table generators"));
        }
        Ok(p.inner.clone())
    }
}

#[pymethods]
impl PyTable {
    /// `{u λ u} = (∂ + 2λ)u + cλ³`.
    #[staticmethod]
    fn virasoro() -> Self {
        PyTable { inner: GenBracketTable::virasoro() }
    }

    /// `{u λ u} = λ`.
    #[staticmethod]
    fn derivation() -> Self {
        PyTable { inner: GenBracketTable::derivation() }
    }

    /// The affine pair `([a, b] + (a|b)λ, (E|[a, b]))` of a triple.
    #[staticmethod]
    fn affine(triple: &PyTriple) -> PyResult<(Self, Self)> {
        let (t0, t1) = affine_bracket(triple.inner.algebra(), &triple.inner.big_e).map_err(err)?;
        Ok((PyTable { inner: t0 }, PyTable { inner: t1 }))
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.vars().names().to_vec()
    }

    /// Substitutes a value for the constant `c`.
    fn with_c(&self, c: &str) -> PyResult<Self> {
        let at = [(0u16, parse_rational(c).map_err(err)?)].into();
        Ok(PyTable { inner: self.inner.eval_params(&at) })
    }

    /// `(skew-symmetry violations, Jacobi violations)` as generator indices.
    fn check_axioms(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize, usize)>) {
        let r = check_axioms(&self.inner);
        (r.skew_violations, r.jacobi_violations)
    }

    /// `{∫h, v}`.
    fn ham_flow(&self, h: &PyDiffPoly, v: &PyDiffPoly) -> PyResult<PyDiffPoly> {
        let f = ham_flow(&LocalFunctional::new(self.own(h)?), &self.own(v)?, &self.inner).map_err(err)?;
        Ok(self.wrap(f))
    }

    /// A density of `{∫a, ∫b}`.
    fn functional_bracket(&self, a: &PyDiffPoly, b: &PyDiffPoly) -> PyResult<PyDiffPoly> {
        let (a, b) = (LocalFunctional::new(self.own(a)?), LocalFunctional::new(self.own(b)?));
        Ok(self.wrap(functional_bracket(&a, &b, &self.inner).map_err(err)?.density().clone()))
    }

    /// Entries of the Poisson structure `H(∂)` in the text syntax, `D` for `∂`.
    fn poisson_structure(&self) -> Vec<Vec<String>> {
        poisson_structure_matrix(&self.inner).to_text_rows(self.inner.vars())
    }
}

/// `steps` functionals of the Lenard–Magri chain for the pair (Virasoro,
/// derivation bracket), starting at `∫start`.
#[pyfunction]
#[pyo3(signature = (steps, start = "u"))]
fn lenard_kdv(steps: usize, start: &str) -> PyResult<Vec<String>> {
    let u = VarSet::named(["u"]);
    let seed = LocalFunctional::new(DiffPoly::parse(start, &u).map_err(err)?);
    let run = lenard_run(&GenBracketTable::virasoro(), &GenBracketTable::derivation(), &seed, steps);
    if let Some(e) = run.failure {
        return Err(err(e));
    }
    Ok(run.functionals.iter().map(|f| f.density().to_text(&u)).collect())
}

/// The rows of the exceptional nilpotent table, as JSON.
#[pyfunction]
fn table1_json() -> String {
    json(&table1_rows())
}

#[pyclass(name = "Hierarchy", frozen)]
struct PyHierarchy {
    inner: HierarchyResult,
}

#[pymethods]
impl PyHierarchy {
    /// Solves the hierarchy through `max_degree`, e.g. `"5"` or `"5/2"`.
    #[staticmethod]
    fn solve(triple: &PyTriple, max_degree: &str) -> PyResult<Self> {
        Ok(PyHierarchy { inner: solve_recursion(&triple.inner, half(max_degree)?).map_err(err)? })
    }

    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.data().vars.names().to_vec()
    }

    #[getter]
    fn max_degree(&self) -> String {
        self.inner.max_degree().to_string()
    }

    #[getter]
    fn n_top(&self) -> Option<i64> {
        self.inner.n_top()
    }

    /// `(index, z power, density)`; all determined densities by default.
    #[pyo3(signature = (count = None))]
    fn densities(&self, count: Option<usize>) -> PyResult<Vec<(usize, i64, String)>> {
        let ds = match count {
            Some(n) => densities(&self.inner, &self.inner.data().semisimple, n).map_err(err)?,
            None => self.inner.densities().to_vec(),
        };
        let vars = &self.inner.data().vars;
        Ok(ds.iter().map(|d| (d.index, d.z_power, d.functional.density().to_text(vars))).collect())
    }

    /// Whether the Lax operator commutes with the flow of the semisimple
    /// element through `window` (default: the solved degree).
    #[pyo3(signature = (window = None))]
    fn flatness_check(&self, window: Option<&str>) -> PyResult<bool> {
        let w = window.map(half).transpose()?.unwrap_or(self.inner.max_degree());
        Ok(flatness_check(&self.inner, &self.inner.data().semisimple, w).map_err(err)?.passed())
    }

    /// Perturbs the solution by a random kernel-valued gauge and reports
    /// whether the densities are unchanged.
    #[pyo3(signature = (seed = 1))]
    fn gauge_invariance(&self, seed: u64) -> PyResult<bool> {
        let shape = RandomShape { max_order: 1, max_degree: 2, max_terms: 2, coeff_bound: 3, ..RandomShape::default() };
        let s = random_kernel_element(self.inner.data(), self.inner.max_degree(), seed, &shape).map_err(err)?;
        let p = gauge_perturb(&self.inner, &s).map_err(err)?;
        Ok(densities_agree(self.inner.densities(), p.densities()))
    }

    /// For `sl2`: the comparison with the KdV chain, as JSON.
    #[pyo3(signature = (count = 3))]
    fn kdv_comparison(&self, count: usize) -> PyResult<String> {
        Ok(json(&kdv_comparison(&self.inner, count).map_err(err)?.to_json()))
    }

    fn to_json(&self) -> String {
        json(&self.inner.to_json())
    }
}

#[pymodule]
fn dshier_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", dshier::VERSION)?;
    m.add("DshierError", m.py().get_type::<DshierError>())?;
    m.add("WindowTooSmallError", m.py().get_type::<WindowTooSmallError>())?;
    m.add_class::<PyLieAlgebra>()?;
    m.add_class::<PyGrading>()?;
    m.add_class::<PyTriple>()?;
    m.add_class::<PyDiffPoly>()?;
    m.add_class::<PyTable>()?;
    m.add_class::<PyHierarchy>()?;
    m.add_function(wrap_pyfunction!(lenard_kdv, m)?)?;
    m.add_function(wrap_pyfunction!(table1_json, m)?)?;
    Ok(())
}
