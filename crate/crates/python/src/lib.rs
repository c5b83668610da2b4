//! Python bindings: scalars, `U_q(su_2)` elements, calculi, forms, gauge
//! operations and the verification suites.

use std::sync::Arc;

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use qcalc_core::gauge::{self, GaugeTransformation};
use qcalc_core::parse::{self, ParseError};
use qcalc_core::report::Report;
use qcalc_core::rn::{CalculusSpec as CoreSpec, GradedForm};
use qcalc_core::uqsu2::{self, UqElement as CoreUq};
use qcalc_core::{suites, Scalar as CoreScalar};

fn parse_err(e: ParseError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An element of ℚ(q^{1/2}, λ, μ)(x, y) with opaque function symbols.
#[pyclass(name = "Scalar", module = "qcalc", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct Scalar(CoreScalar);

fn to_scalar(obj: &Bound<'_, PyAny>) -> PyResult<CoreScalar> {
    if let Ok(s) = obj.cast::<Scalar>() {
        return Ok(s.get().0.clone());
    }
    if let Ok(n) = obj.extract::<i64>() {
        return Ok(CoreScalar::from_i64(n));
    }
    if let Ok(text) = obj.extract::<String>() {
        return parse::parse_scalar(&text).map_err(parse_err);
    }
    Err(PyValueError::new_err("expected a Scalar, an int or an expression string"))
}

#[pymethods]
impl Scalar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse::parse_scalar(text).map(Scalar).map_err(parse_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar('{}')", self.0)
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Scalar(&self.0 + &to_scalar(other)?))
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Scalar(&to_scalar(other)? + &self.0))
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Scalar(&self.0 - &to_scalar(other)?))
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Scalar(&to_scalar(other)? - &self.0))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Scalar(&self.0 * &to_scalar(other)?))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Scalar(&to_scalar(other)? * &self.0))
    }

    fn __truediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let d = to_scalar(other)?;
        self.0.checked_div(&d).map(Scalar).map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    fn __neg__(&self) -> Self {
        Scalar(-&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

/// An element of `U_q(su_2)` in PBW normal form `Xp^a K^b Xm^c`.
#[pyclass(name = "UqElement", module = "qcalc", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct UqElement(CoreUq);

fn to_uq(obj: &Bound<'_, PyAny>) -> PyResult<CoreUq> {
    if let Ok(u) = obj.cast::<UqElement>() {
        return Ok(u.get().0.clone());
    }
    if let Ok(text) = obj.extract::<String>() {
        return parse::parse_uq(&text).map_err(parse_err);
    }
    to_scalar(obj).map(CoreUq::scalar)
}

#[pymethods]
impl UqElement {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        parse::parse_uq(text).map(UqElement).map_err(parse_err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("UqElement('{}')", self.0)
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(UqElement(&self.0 + &to_uq(other)?))
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(UqElement(&self.0 - &to_uq(other)?))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(UqElement(self.0.multiply(&to_uq(other)?)))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(UqElement(to_uq(other)?.multiply(&self.0)))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `Δu` rendered as a sum of tensor terms.
    fn coproduct(&self) -> String {
        uqsu2::coproduct(&self.0).to_string()
    }

    fn counit(&self) -> Scalar {
        Scalar(uqsu2::counit(&self.0))
    }

    fn antipode(&self) -> Self {
        UqElement(uqsu2::antipode(&self.0))
    }

    /// `Ad_self(other)`.
    fn adjoint(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(UqElement(uqsu2::adjoint(&self.0, &to_uq(other)?)))
    }

    fn is_central(&self) -> bool {
        uqsu2::is_central(&self.0)
    }

    /// Image in the fundamental representation as a 2×2 list of scalars.
    fn fundamental_rep(&self) -> Vec<Vec<Scalar>> {
        let m = uqsu2::fundamental_rep(&self.0);
        (0..2).map(|i| (0..2).map(|j| Scalar(m.entry(i, j).clone())).collect()).collect()
    }
}

/// Returns `(C, c_q)`.
#[pyfunction]
fn casimir() -> (UqElement, UqElement) {
    let (c, cq) = uqsu2::casimir();
    (UqElement(c), UqElement(cq))
}

/// Quantum tangent space generated by a central element, as `{label: element}`.
#[pyfunction]
fn tangent_space_from_central<'py>(py: Python<'py>, c: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyDict>> {
    let space = uqsu2::tangent_space_from_central(&to_uq(c)?).map_err(value_err)?;
    let out = PyDict::new(py);
    for (label, e) in space.labels().iter().zip(space.elements()) {
        out.set_item(label, UqElement(e.clone()))?;
    }
    Ok(out)
}

/// A bicovariant calculus on ℝ or ℝ².
#[pyclass(name = "Calculus", module = "qcalc", frozen)]
struct Calculus(Arc<CoreSpec>);

/// A differential form over a [`Calculus`].
#[pyclass(name = "Form", module = "qcalc", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Form {
    spec: Arc<CoreSpec>,
    form: GradedForm,
}

impl Form {
    fn same_calculus(&self, other: &Form) -> PyResult<()> {
        if self.spec.name != other.spec.name {
            return Err(PyValueError::new_err(format!("forms belong to different calculi ({} and {})", self.spec.name, other.spec.name)));
        }
        Ok(())
    }
}

#[pymethods]
impl Calculus {
    /// `jet:<n>`, `fd:1` or `fd:2`.
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        CoreSpec::named(name).map(|s| Calculus(Arc::new(s))).map_err(value_err)
    }

    /// Calculus generated by `c(p)` (or `c(p, q)` with `nvars = 2`).
    #[staticmethod]
    #[pyo3(signature = (c, nvars = 1))]
    fn from_generator(c: &str, nvars: usize) -> PyResult<Self> {
        let generator = parse::parse_generator(c, nvars).map_err(parse_err)?;
        CoreSpec::from_generator(generator, nvars).map(|s| Calculus(Arc::new(s))).map_err(value_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name.clone()
    }

    #[getter]
    fn dimension(&self) -> usize {
        self.0.dimension()
    }

    #[getter]
    fn forms(&self) -> Vec<String> {
        self.0.forms.clone()
    }

    /// Basis of the tangent space as `(label, function of p)` pairs.
    fn basis(&self) -> Vec<(String, String)> {
        self.0.tangent.basis.iter().map(|b| (b.label.clone(), b.function.to_string())).collect()
    }

    fn relations(&self) -> Vec<String> {
        self.0.relations()
    }

    /// `∂_i f`.
    fn partial(&self, i: usize, f: &Bound<'_, PyAny>) -> PyResult<Scalar> {
        if i >= self.0.dimension() {
            return Err(PyValueError::new_err(format!("index {i} out of range for {}", self.0.name)));
        }
        Ok(Scalar(self.0.partial(i, &to_scalar(f)?)))
    }

    /// Parses a form such as `"x*dx - dx*x"` or `"d(w)"`.
    fn form(&self, text: &str) -> PyResult<Form> {
        let form = parse::parse_form(&self.0, text).map_err(parse_err)?;
        Ok(Form { spec: self.0.clone(), form })
    }

    /// `df` for a function.
    fn d(&self, f: &Bound<'_, PyAny>) -> PyResult<Form> {
        Ok(Form { spec: self.0.clone(), form: self.0.d0(&to_scalar(f)?) })
    }

    fn __repr__(&self) -> String {
        format!("Calculus('{}')", self.0.name)
    }
}

#[pymethods]
impl Form {
    #[getter]
    fn degree(&self) -> usize {
        self.form.degree
    }

    #[getter]
    fn coefficients(&self) -> Vec<Scalar> {
        self.form.coeffs.iter().cloned().map(Scalar).collect()
    }

    fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    fn __str__(&self) -> String {
        self.spec.display(&self.form).to_string()
    }

    fn __repr__(&self) -> String {
        format!("Form('{}')", self.spec.display(&self.form))
    }

    fn __eq__(&self, other: &Form) -> bool {
        self.spec.name == other.spec.name && self.form == other.form
    }

    fn __add__(&self, other: &Form) -> PyResult<Form> {
        self.same_calculus(other)?;
        let form = self.form.add(&other.form).map_err(value_err)?;
        Ok(Form { spec: self.spec.clone(), form })
    }

    fn __sub__(&self, other: &Form) -> PyResult<Form> {
        self.same_calculus(other)?;
        let form = self.form.sub(&other.form).map_err(value_err)?;
        Ok(Form { spec: self.spec.clone(), form })
    }

    /// `self ∧ other`.
    fn wedge(&self, other: &Form) -> PyResult<Form> {
        self.same_calculus(other)?;
        let form = self.spec.wedge(&self.form, &other.form).map_err(value_err)?;
        Ok(Form { spec: self.spec.clone(), form })
    }

    /// Exterior derivative.
    fn d(&self) -> PyResult<Form> {
        let form = self.spec.d(&self.form).map_err(value_err)?;
        Ok(Form { spec: self.spec.clone(), form })
    }

    /// `f · self`.
    fn left_mul(&self, f: &Bound<'_, PyAny>) -> PyResult<Form> {
        let form = self.spec.left_mult(&to_scalar(f)?, &self.form).map_err(value_err)?;
        Ok(Form { spec: self.spec.clone(), form })
    }

    /// `self · f`.
    fn right_mul(&self, f: &Bound<'_, PyAny>) -> PyResult<Form> {
        Ok(Form { spec: self.spec.clone(), form: self.form.right_mult(&to_scalar(f)?) })
    }
}

fn gauge_field(calc: &Calculus, components: Vec<Bound<'_, PyAny>>) -> PyResult<GradedForm> {
    let comps = components.iter().map(to_scalar).collect::<PyResult<Vec<_>>>()?;
    gauge::gauge_field(&calc.0, comps).map_err(value_err)
}

fn transformation(gamma: &Bound<'_, PyAny>) -> PyResult<GaugeTransformation> {
    GaugeTransformation::new(to_scalar(gamma)?).map_err(value_err)
}

/// `F(α) = dα + α∧α` for `α = Σ θ_i · components[i]`.
#[pyfunction]
fn curvature(calc: &Calculus, alpha: Vec<Bound<'_, PyAny>>) -> PyResult<Form> {
    let a = gauge_field(calc, alpha)?;
    let form = gauge::curvature(&calc.0, &a).map_err(value_err)?;
    Ok(Form { spec: calc.0.clone(), form })
}

/// `α^γ = γ⁻¹αγ + γ⁻¹dγ`.
#[pyfunction]
fn gauge_transform(calc: &Calculus, alpha: Vec<Bound<'_, PyAny>>, gamma: &Bound<'_, PyAny>) -> PyResult<Form> {
    let a = gauge_field(calc, alpha)?;
    let form = gauge::gauge_transform(&calc.0, &a, &transformation(gamma)?).map_err(value_err)?;
    Ok(Form { spec: calc.0.clone(), form })
}

#[pyfunction]
fn is_flat(calc: &Calculus, alpha: Vec<Bound<'_, PyAny>>) -> PyResult<bool> {
    let a = gauge_field(calc, alpha)?;
    gauge::is_flat(&calc.0, &a).map_err(value_err)
}

fn report_dict<'py>(py: Python<'py>, report: &Report) -> PyResult<Bound<'py, PyDict>> {
    let out = PyDict::new(py);
    out.set_item("suite", report.suite.clone())?;
    out.set_item("passed", report.passed())?;
    out.set_item("failed", report.failed())?;
    let checks = PyList::empty(py);
    for c in &report.checks {
        let d = PyDict::new(py);
        d.set_item("name", &c.name)?;
        d.set_item("lhs", &c.lhs)?;
        d.set_item("rhs", &c.rhs)?;
        d.set_item("pass", c.pass)?;
        checks.append(d)?;
    }
    out.set_item("checks", checks)?;
    out.set_item("notes", report.notes.clone())?;
    Ok(out)
}

/// The three gauge lemmas for `(α, γ, ψ)` as a report dictionary.
#[pyfunction]
fn verify_lemmas<'py>(
    py: Python<'py>,
    calc: &Calculus,
    alpha: Vec<Bound<'py, PyAny>>,
    gamma: &Bound<'py, PyAny>,
    psi: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyDict>> {
    let a = gauge_field(calc, alpha)?;
    let checks = gauge::verify_lemmas(&calc.0, &a, &transformation(gamma)?, &to_scalar(psi)?).map_err(value_err)?;
    let mut report = Report::new("lemmas");
    report.extend(checks);
    report_dict(py, &report)
}

/// Runs a verification suite (`"all"` for every suite).
#[pyfunction]
#[pyo3(signature = (suite = "all"))]
fn verify<'py>(py: Python<'py>, suite: &str) -> PyResult<Bound<'py, PyDict>> {
    let report = suites::run_suite(suite).ok_or_else(|| PyValueError::new_err(format!("unknown suite '{suite}'")))?;
    report_dict(py, &report)
}

#[pymodule]
fn qcalc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Scalar>()?;
    m.add_class::<UqElement>()?;
    m.add_class::<Calculus>()?;
    m.add_class::<Form>()?;
    m.add_function(wrap_pyfunction!(casimir, m)?)?;
    m.add_function(wrap_pyfunction!(tangent_space_from_central, m)?)?;
    m.add_function(wrap_pyfunction!(curvature, m)?)?;
    m.add_function(wrap_pyfunction!(gauge_transform, m)?)?;
    m.add_function(wrap_pyfunction!(is_flat, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemmas, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("SUITES", suites::SUITES.to_vec())?;
    Ok(())
}
