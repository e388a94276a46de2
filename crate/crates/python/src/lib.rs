//! Python bindings: `import ybx`.
//!
//! Matrices are lists of rows whose entries are ints, strings such as
//! `"-3/4"`, or `fractions.Fraction`. An optional `modulus` selects F_p.
//! Reports come back as plain dicts with exact entries as strings.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyFloat, PyInt, PyList, PyString, PyTuple};
use serde::Serialize;
use serde_json::{json, Map, Value};

use ybx_core::families::{canonical_idempotent_system, construct, family_covers, FamilyCase};
use ybx_core::io::{matrix_to_json, RawFamily, RawMatrix};
use ybx_core::linalg::{Fp, Matrix, Rational, Scalar, F11, F13, F3, F5, F7};
use ybx_core::oracle::{
    cross_validate as run_cross_validation, default_workers, enumerate_solutions_with,
};
use ybx_core::polyalg::{self, parse_poly, GroebnerBasis as CoreBasis, MultiPoly, VarTable};
use ybx_core::ybe::{
    charpoly_annihilation, det_cube_condition, entry_variable_names, equations_from_system,
    is_solution, kernel_lemma_checks, pencil_conditions, power_identity_check, residuals,
    spectrum_square_check, SystemInstance,
};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn py_to_value(obj: &Bound<'_, PyAny>) -> PyResult<Value> {
    if obj.is_none() {
        Ok(Value::Null)
    } else if obj.is_instance_of::<PyBool>() {
        Ok(Value::Bool(obj.extract()?))
    } else if obj.is_instance_of::<PyFloat>() {
        Err(PyValueError::new_err(
            "floating-point entries are not exact; use int, str or Fraction",
        ))
    } else if obj.is_instance_of::<PyInt>() {
        match obj.extract::<i64>() {
            Ok(k) => Ok(json!(k)),
            Err(_) => Ok(Value::String(obj.str()?.to_string())),
        }
    } else if obj.is_instance_of::<PyString>() {
        Ok(Value::String(obj.extract()?))
    } else if let Ok(d) = obj.cast::<PyDict>() {
        let mut m = Map::new();
        for (k, v) in d.iter() {
            m.insert(k.extract::<String>()?, py_to_value(&v)?);
        }
        Ok(Value::Object(m))
    } else if obj.is_instance_of::<PyList>() || obj.is_instance_of::<PyTuple>() {
        obj.try_iter()?
            .map(|item| py_to_value(&item?))
            .collect::<PyResult<Vec<_>>>()
            .map(Value::Array)
    } else {
        Ok(Value::String(obj.str()?.to_string()))
    }
}

fn value_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

fn raw_matrix(obj: &Bound<'_, PyAny>, name: &str) -> PyResult<RawMatrix> {
    RawMatrix::from_value(&py_to_value(obj)?, name).map_err(|e| err(format!("{name}: {e}")))
}

#[derive(Clone)]
enum Domain {
    Q(SystemInstance<Rational>),
    F3(SystemInstance<F3>),
    F5(SystemInstance<F5>),
    F7(SystemInstance<F7>),
    F11(SystemInstance<F11>),
    F13(SystemInstance<F13>),
}

macro_rules! each_domain {
    ($d:expr, $s:ident => $body:expr) => {
        match $d {
            Domain::Q($s) => $body,
            Domain::F3($s) => $body,
            Domain::F5($s) => $body,
            Domain::F7($s) => $body,
            Domain::F11($s) => $body,
            Domain::F13($s) => $body,
        }
    };
}

fn build<T: Scalar>(a: &RawMatrix, b: &RawMatrix) -> PyResult<SystemInstance<T>> {
    let a = a.to_matrix().map_err(|e| err(format!("A: {e}")))?;
    let b = b.to_matrix().map_err(|e| err(format!("B: {e}")))?;
    SystemInstance::new(a, b).map_err(err)
}

fn resolve_modulus(flag: Option<u32>, raws: &[&RawMatrix]) -> PyResult<Option<u32>> {
    let mut modulus = flag;
    for raw in raws {
        match (modulus, raw.modulus) {
            (None, Some(p)) => modulus = Some(p),
            (Some(p), Some(q)) if p != q => {
                return Err(err(format!("modulus {q} conflicts with {p}")));
            }
            _ => {}
        }
    }
    Ok(modulus)
}

fn unknown<T: Scalar>(sys: &SystemInstance<T>, x: &RawMatrix) -> PyResult<Matrix<T>> {
    let x: Matrix<T> = x.to_matrix().map_err(|e| err(format!("X: {e}")))?;
    if x.shape() != sys.a().shape() {
        return Err(err(format!(
            "X is {}×{}, expected {}×{}",
            x.rows(),
            x.cols(),
            sys.n(),
            sys.n()
        )));
    }
    Ok(x)
}

fn verify_report<T: Scalar>(sys: &SystemInstance<T>, x: &Matrix<T>) -> PyResult<Value> {
    let (r1, r2) = residuals(sys, x).map_err(err)?;
    Ok(json!({
        "domain": T::domain_name(),
        "is_solution": r1.is_zero() && r2.is_zero(),
        "residuals": [matrix_to_json(&r1), matrix_to_json(&r2)],
    }))
}

fn report<S: Serialize, E: std::fmt::Display>(r: Result<S, E>) -> Value {
    match r {
        Ok(v) => serde_json::to_value(v).unwrap_or(Value::Null),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn conditions_report<T: Scalar>(sys: &SystemInstance<T>, x: Option<&Matrix<T>>) -> PyResult<Value> {
    let mut out = Map::new();
    out.insert("pencil".into(), report(pencil_conditions(sys)));
    out.insert("det_cube".into(), report(det_cube_condition(sys, x)));
    if let Some(x) = x {
        out.insert(
            "is_solution".into(),
            json!(is_solution(sys, x).map_err(err)?),
        );
        let powers: Vec<Value> = (1..=4)
            .map(|k| report(power_identity_check(sys, x, k)))
            .collect();
        out.insert("power_identity".into(), json!(powers));
        out.insert(
            "charpoly_annihilation".into(),
            report(charpoly_annihilation(sys, x)),
        );
        out.insert("kernel".into(), report(kernel_lemma_checks(sys, x)));
        out.insert(
            "spectrum_square".into(),
            report(spectrum_square_check(sys, x)),
        );
    }
    Ok(Value::Object(out))
}

fn coverage_report<T: Scalar>(sys: &SystemInstance<T>, x: &Matrix<T>) -> PyResult<Value> {
    let c = family_covers(sys, x);
    let mut v = serde_json::to_value(&c).map_err(err)?;
    v["label"] = json!(c.label());
    Ok(v)
}

/// The system `XAX = BXB`, `XBX = AXA` for fixed square `A`, `B`.
#[pyclass(name = "System", module = "ybx", frozen)]
struct PySystem {
    inner: Domain,
}

impl PySystem {
    fn from_raw(a: &RawMatrix, b: &RawMatrix, modulus: Option<u32>) -> PyResult<Self> {
        let inner = match resolve_modulus(modulus, &[a, b])? {
            None => Domain::Q(build(a, b)?),
            Some(3) => Domain::F3(build(a, b)?),
            Some(5) => Domain::F5(build(a, b)?),
            Some(7) => Domain::F7(build(a, b)?),
            Some(11) => Domain::F11(build(a, b)?),
            Some(13) => Domain::F13(build(a, b)?),
            Some(p) => {
                return Err(err(format!(
                    "unsupported modulus {p}; choose 3, 5, 7, 11 or 13"
                )))
            }
        };
        Ok(PySystem { inner })
    }

    fn modulus(&self) -> Option<u32> {
        match &self.inner {
            Domain::Q(_) => None,
            Domain::F3(_) => Some(3),
            Domain::F5(_) => Some(5),
            Domain::F7(_) => Some(7),
            Domain::F11(_) => Some(11),
            Domain::F13(_) => Some(13),
        }
    }

    fn unknown_raw(&self, x: &Bound<'_, PyAny>) -> PyResult<RawMatrix> {
        let raw = raw_matrix(x, "X")?;
        if let (Some(q), p) = (raw.modulus, self.modulus()) {
            if Some(q) != p {
                return Err(err(format!("X has modulus {q}, system has {p:?}")));
            }
        }
        Ok(raw)
    }
}

#[pymethods]
impl PySystem {
    #[new]
    #[pyo3(signature = (a, b, modulus=None))]
    fn new(a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>, modulus: Option<u32>) -> PyResult<Self> {
        Self::from_raw(&raw_matrix(a, "A")?, &raw_matrix(b, "B")?, modulus)
    }

    /// Canonical idempotent pair `diag(I_r, 0)`, `diag(0_r, I_s, 0)`.
    #[staticmethod]
    #[pyo3(signature = (n, r, s, modulus=None))]
    fn canonical(n: usize, r: usize, s: usize, modulus: Option<u32>) -> PyResult<Self> {
        if r == 0 || s == 0 || r + s > n {
            return Err(err(format!(
                "need r, s ≥ 1 and r + s ≤ n, got n={n}, r={r}, s={s}"
            )));
        }
        let inner = match modulus {
            None => Domain::Q(canonical_idempotent_system(n, r, s)),
            Some(3) => Domain::F3(canonical_idempotent_system(n, r, s)),
            Some(5) => Domain::F5(canonical_idempotent_system(n, r, s)),
            Some(7) => Domain::F7(canonical_idempotent_system(n, r, s)),
            Some(11) => Domain::F11(canonical_idempotent_system(n, r, s)),
            Some(13) => Domain::F13(canonical_idempotent_system(n, r, s)),
            Some(p) => return Err(err(format!("unsupported modulus {p}"))),
        };
        Ok(PySystem { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        each_domain!(&self.inner, s => s.n())
    }

    #[getter(modulus)]
    fn py_modulus(&self) -> Option<u32> {
        self.modulus()
    }

    #[getter]
    fn a(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        each_domain!(&self.inner, s => value_to_py(py, &matrix_to_json(s.a())))
    }

    #[getter]
    fn b(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        each_domain!(&self.inner, s => value_to_py(py, &matrix_to_json(s.b())))
    }

    fn is_solution(&self, x: &Bound<'_, PyAny>) -> PyResult<bool> {
        let raw = self.unknown_raw(x)?;
        each_domain!(&self.inner, s => is_solution(s, &unknown(s, &raw)?).map_err(err))
    }

    /// `{"is_solution", "residuals": [AXA − XBX, BXB − XAX]}`
    fn verify(&self, py: Python<'_>, x: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        let raw = self.unknown_raw(x)?;
        let v = each_domain!(&self.inner, s => verify_report(s, &unknown(s, &raw)?))?;
        value_to_py(py, &v)
    }

    #[pyo3(signature = (x=None))]
    fn conditions(&self, py: Python<'_>, x: Option<&Bound<'_, PyAny>>) -> PyResult<Py<PyAny>> {
        let raw = x.map(|x| self.unknown_raw(x)).transpose()?;
        let v = each_domain!(&self.inner, s => {
            let x = raw.as_ref().map(|r| unknown(s, r)).transpose()?;
            conditions_report(s, x.as_ref())
        })?;
        value_to_py(py, &v)
    }

    fn classify(&self, py: Python<'_>, x: &Bound<'_, PyAny>) -> PyResult<Py<PyAny>> {
        let raw = self.unknown_raw(x)?;
        let v = each_domain!(&self.inner, s => coverage_report(s, &unknown(s, &raw)?))?;
        value_to_py(py, &v)
    }

    /// Residual entries over a symbolic unknown; rational systems only.
    #[pyo3(signature = (variables=None, keep_zero=false))]
    fn equations(
        &self,
        variables: Option<Vec<String>>,
        keep_zero: bool,
    ) -> PyResult<(Vec<String>, Vec<String>)> {
        let Domain::Q(s) = &self.inner else {
            return Err(err("equations are generated over the rationals"));
        };
        let names = variables.unwrap_or_else(|| entry_variable_names(s.n()));
        let vars = VarTable::new(&names).map_err(err)?;
        let mut polys = equations_from_system(s, &vars).map_err(err)?;
        if !keep_zero {
            polys.retain(|p| !p.is_zero());
        }
        Ok((names, polys.iter().map(|p| p.to_text(&vars)).collect()))
    }

    /// Every solution over F_p, classified and cross-checked.
    #[pyo3(signature = (workers=None, cross_validate=true))]
    fn enumerate(
        &self,
        py: Python<'_>,
        workers: Option<usize>,
        cross_validate: bool,
    ) -> PyResult<Py<PyAny>> {
        let workers = match workers {
            Some(0) => return Err(err("workers must be positive")),
            Some(w) => w,
            None => default_workers().map_err(err)?,
        };
        fn go<const P: u32>(
            s: &SystemInstance<Fp<P>>,
            workers: usize,
            cv: bool,
        ) -> PyResult<Value> {
            let mut rep = enumerate_solutions_with(s.a(), s.b(), workers).map_err(err)?;
            if cv {
                rep = run_cross_validation(rep);
            }
            serde_json::to_value(&rep).map_err(err)
        }
        let v = py.detach(|| match &self.inner {
            Domain::Q(_) => Err(err("enumeration needs a modulus")),
            Domain::F3(s) => go(s, workers, cross_validate),
            Domain::F5(s) => go(s, workers, cross_validate),
            Domain::F7(s) => go(s, workers, cross_validate),
            Domain::F11(s) => go(s, workers, cross_validate),
            Domain::F13(s) => go(s, workers, cross_validate),
        })?;
        value_to_py(py, &v)
    }

    fn __repr__(&self) -> String {
        let field = self.modulus().map_or("Q".to_string(), |p| format!("F{p}"));
        format!("System(n={}, field={field})", self.n())
    }
}

/// Reduced lex Gröbner basis.
#[pyclass(name = "GroebnerBasis", module = "ybx", frozen)]
struct PyGroebnerBasis {
    inner: CoreBasis,
}

fn parse_all(polys: &[String], vars: &VarTable) -> PyResult<Vec<MultiPoly>> {
    polys
        .iter()
        .enumerate()
        .map(|(i, p)| parse_poly(p, vars).map_err(|e| err(format!("polynomial {i}: {e}"))))
        .collect()
}

#[pymethods]
impl PyGroebnerBasis {
    #[getter]
    fn variables(&self) -> Vec<String> {
        self.inner.vars().names().to_vec()
    }

    fn generators(&self) -> Vec<String> {
        self.inner.to_strings()
    }

    fn is_unit(&self) -> bool {
        self.inner.is_unit()
    }

    fn contains(&self, poly: &str) -> PyResult<bool> {
        Ok(self
            .inner
            .contains(&parse_poly(poly, self.inner.vars()).map_err(err)?))
    }

    fn reduce(&self, poly: &str) -> PyResult<String> {
        let f = parse_poly(poly, self.inner.vars()).map_err(err)?;
        Ok(self.inner.reduce(&f).to_text(self.inner.vars()))
    }

    /// Basis of the elimination ideal in the last `keep` variables.
    fn eliminate(&self, keep: usize) -> PyResult<Self> {
        Ok(PyGroebnerBasis {
            inner: polyalg::eliminate(&self.inner, keep).map_err(err)?,
        })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("GroebnerBasis([{}])", self.inner.to_strings().join(", "))
    }
}

/// Gröbner basis of `polys` under lex with `variables` in descending order.
#[pyfunction]
fn groebner(
    py: Python<'_>,
    polys: Vec<String>,
    variables: Vec<String>,
) -> PyResult<PyGroebnerBasis> {
    let vars = VarTable::new(&variables).map_err(err)?;
    let input = parse_all(&polys, &vars)?;
    let inner = py
        .detach(|| polyalg::buchberger(&vars, &input))
        .map_err(err)?;
    Ok(PyGroebnerBasis { inner })
}

#[pyfunction]
fn ideal_equal(
    py: Python<'_>,
    f: Vec<String>,
    g: Vec<String>,
    variables: Vec<String>,
) -> PyResult<bool> {
    let vars = VarTable::new(&variables).map_err(err)?;
    let (f, g) = (parse_all(&f, &vars)?, parse_all(&g, &vars)?);
    py.detach(|| polyalg::ideal_equal(&vars, &f, &g))
        .map_err(err)
}

fn family_value<T: Scalar>(raw: &RawFamily) -> PyResult<Value> {
    let params = raw.to_params::<T>().map_err(err)?;
    let inst = construct(raw.case, &params).map_err(err)?;
    Ok(json!({
        "case": inst.case,
        "domain": T::domain_name(),
        "A": matrix_to_json(inst.system.a()),
        "B": matrix_to_json(inst.system.b()),
        "X": matrix_to_json(&inst.solution),
    }))
}

/// Build a verified solution for a family case, e.g.
/// `family("P55-ii", a=1, b=-1, alpha=1)`.
#[pyfunction]
#[pyo3(signature = (case, **params))]
fn family(py: Python<'_>, case: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<Py<PyAny>> {
    let mut obj = match params {
        Some(d) => py_to_value(d.as_any())?,
        None => json!({}),
    };
    obj["case"] = json!(case);
    let raw = RawFamily::from_value(&obj).map_err(err)?;
    let v = match raw.modulus {
        None => family_value::<Rational>(&raw),
        Some(3) => family_value::<F3>(&raw),
        Some(5) => family_value::<F5>(&raw),
        Some(7) => family_value::<F7>(&raw),
        Some(11) => family_value::<F11>(&raw),
        Some(13) => family_value::<F13>(&raw),
        Some(p) => Err(err(format!("unsupported modulus {p}"))),
    }?;
    value_to_py(py, &v)
}

/// Tags of every family case.
#[pyfunction]
fn family_cases() -> Vec<&'static str> {
    FamilyCase::ALL.iter().map(|c| c.tag()).collect()
}

#[pymodule]
fn ybx(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystem>()?;
    m.add_class::<PyGroebnerBasis>()?;
    m.add_function(wrap_pyfunction!(groebner, m)?)?;
    m.add_function(wrap_pyfunction!(ideal_equal, m)?)?;
    m.add_function(wrap_pyfunction!(family, m)?)?;
    m.add_function(wrap_pyfunction!(family_cases, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
