//! Python bindings: fractions, tangle expressions, colorings and the square
//! dance.
//!
//! ```python
//! import tanglekit
//! t = tanglekit.Tangle("[[2],[-3],[5]]")
//! assert str(t.fraction()) == "23/14"
//! assert t.canonical() == [1, 1, 1, 1, 4]
//! ```

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use tanglekit::cf::{self, CFVector};
use tanglekit::coloring;
use tanglekit::dance::{self, Move, MoveWord};
use tanglekit::tangle::{self, CanonicalTangle, TangleExpr};
use tanglekit::Error;

create_exception!(
    tanglekit,
    TangleError,
    PyValueError,
    "Base class for engine errors."
);
create_exception!(
    tanglekit,
    TangleSyntaxError,
    TangleError,
    "Malformed expression or fraction."
);
create_exception!(
    tanglekit,
    NotRationalError,
    TangleError,
    "The tangle is not rational."
);
create_exception!(
    tanglekit,
    AlreadySolvedError,
    TangleError,
    "The dance already sits at its target."
);

fn to_py(e: Error) -> PyErr {
    let msg = e.to_string();
    match e {
        Error::Syntax(_) => TangleSyntaxError::new_err(msg),
        Error::NotRational => NotRationalError::new_err(msg),
        Error::AlreadySolved => AlreadySolvedError::new_err(msg),
        _ => TangleError::new_err(msg),
    }
}

fn vector(terms: Vec<BigInt>) -> PyResult<CFVector> {
    CFVector::new(terms).map_err(to_py)
}

/// A rational number or the point at infinity.
#[pyclass(
    module = "tanglekit",
    name = "Fraction",
    frozen,
    eq,
    hash,
    skip_from_py_object
)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyFraction(tanglekit::Fraction);

#[pymethods]
impl PyFraction {
    /// `Fraction(p, q=1)` or `Fraction("p/q")`.
    #[new]
    #[pyo3(signature = (p, q=None))]
    fn new(p: &Bound<'_, PyAny>, q: Option<BigInt>) -> PyResult<Self> {
        if let Ok(text) = p.extract::<String>() {
            if q.is_some() {
                return Err(PyValueError::new_err(
                    "a string fraction takes no denominator",
                ));
            }
            return text.parse().map(PyFraction).map_err(to_py);
        }
        let p: BigInt = p.extract()?;
        let q = q.unwrap_or_else(|| BigInt::from(1));
        tanglekit::Fraction::new(p, q)
            .map(PyFraction)
            .map_err(to_py)
    }

    #[staticmethod]
    fn infinity() -> Self {
        PyFraction(tanglekit::Fraction::infinity())
    }

    #[getter]
    fn numerator(&self) -> BigInt {
        self.0.numer().clone()
    }

    #[getter]
    fn denominator(&self) -> BigInt {
        self.0.denom().clone()
    }

    fn is_infinite(&self) -> bool {
        self.0.is_infinite()
    }

    fn reciprocal(&self) -> Self {
        PyFraction(self.0.reciprocal())
    }

    /// `-1/x`.
    fn rotate(&self) -> Self {
        PyFraction(self.0.neg_reciprocal())
    }

    /// `1/(1/x + 1/y)`.
    fn star(&self, other: &PyFraction) -> PyResult<Self> {
        self.0.star(&other.0).map(PyFraction).map_err(to_py)
    }

    fn __add__(&self, other: &PyFraction) -> PyResult<Self> {
        self.0.add(&other.0).map(PyFraction).map_err(to_py)
    }

    fn __neg__(&self) -> Self {
        PyFraction(self.0.negate())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Fraction('{}')", self.0)
    }
}

/// A parsed tangle expression.
#[pyclass(module = "tanglekit", name = "Tangle", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTangle(TangleExpr);

#[pymethods]
impl PyTangle {
    /// Parses the expression grammar, or `cf:2,-3,5` shorthand.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        tanglekit::parse_tangle_arg(text)
            .map(PyTangle)
            .map_err(to_py)
    }

    #[staticmethod]
    fn from_vector(terms: Vec<BigInt>) -> PyResult<Self> {
        Ok(PyTangle(TangleExpr::from_cf(&vector(terms)?)))
    }

    fn fraction(&self) -> PyResult<PyFraction> {
        tangle::fraction_of(&self.0).map(PyFraction).map_err(to_py)
    }

    fn is_rational(&self) -> bool {
        tangle::is_rational(&self.0)
    }

    /// Canonical vector, or `None` for `[inf]`.
    fn canonical(&self) -> PyResult<Option<Vec<BigInt>>> {
        Ok(match tangle::canonical_form(&self.0).map_err(to_py)? {
            CanonicalTangle::Infinity => None,
            CanonicalTangle::Vector(v) => Some(v.into_terms()),
        })
    }

    fn canonical_by_rewrite(&self) -> PyResult<Option<Vec<BigInt>>> {
        Ok(
            match tangle::canonical_form_by_rewrite(&self.0).map_err(to_py)? {
                CanonicalTangle::Infinity => None,
                CanonicalTangle::Vector(v) => Some(v.into_terms()),
            },
        )
    }

    fn standard_vector(&self) -> PyResult<Vec<BigInt>> {
        let s = tangle::to_standard_form(&self.0).map_err(to_py)?;
        Ok(tangle::standard_to_cf(&s).into_terms())
    }

    fn crossings(&self) -> PyResult<BigInt> {
        let c = tangle::canonical_form(&self.0).map_err(to_py)?;
        tangle::crossing_count(&c).map_err(to_py)
    }

    fn equivalent(&self, other: &PyTangle) -> PyResult<bool> {
        tangle::equivalent(&self.0, &other.0).map_err(to_py)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Tangle('{}')", self.0)
    }
}

/// Integral coloring of a standard-form vector.
#[pyclass(module = "tanglekit", name = "Coloring", frozen, get_all)]
pub struct PyColoring {
    /// `(nw, ne, sw, se)`.
    matrix: (BigInt, BigInt, BigInt, BigInt),
    arcs: Vec<BigInt>,
    fraction: Option<PyFraction>,
    determinant: Option<BigInt>,
}

#[pyfunction]
#[pyo3(signature = (terms, top=BigInt::from(1), bottom=BigInt::from(0)))]
fn color(terms: Vec<BigInt>, top: BigInt, bottom: BigInt) -> PyResult<PyColoring> {
    let c = coloring::color_tangle(&vector(terms)?, top, bottom).map_err(to_py)?;
    let m = &c.matrix;
    Ok(PyColoring {
        matrix: (m.nw.clone(), m.ne.clone(), m.sw.clone(), m.se.clone()),
        fraction: coloring::f_of_matrix(m).ok().map(PyFraction),
        determinant: coloring::closure_determinant(&c).ok(),
        arcs: c.arc_colors,
    })
}

/// Residues of the numerator closure coloring modulo `p`.
#[pyfunction]
fn closure_residues(terms: Vec<BigInt>, p: BigInt) -> PyResult<Vec<BigInt>> {
    let c = coloring::color_tangle(&vector(terms)?, 1, 0).map_err(to_py)?;
    coloring::closure_coloring_mod(&c, &p).map_err(to_py)
}

/// `(vector, determinant, all colors distinct)` for every positive
/// canonical vector up to `max_crossings`.
#[pyfunction]
fn harary_check(max_crossings: usize) -> Vec<(Vec<BigInt>, BigInt, bool)> {
    coloring::harary_check(max_crossings)
        .into_iter()
        .map(|i| (i.vector.into_terms(), i.det, i.distinct))
        .collect()
}

#[pyfunction]
fn eval_cf(terms: Vec<BigInt>) -> PyResult<PyFraction> {
    Ok(PyFraction(cf::eval_cf(&vector(terms)?)))
}

#[pyfunction]
fn expand_fraction(x: &PyFraction) -> PyResult<Vec<BigInt>> {
    cf::expand_fraction(&x.0)
        .map(CFVector::into_terms)
        .map_err(to_py)
}

#[pyfunction]
fn rewrite_trace(terms: Vec<BigInt>) -> PyResult<Vec<Vec<BigInt>>> {
    let trace = cf::rewrite_trace(&vector(terms)?).map_err(to_py)?;
    Ok(trace.into_iter().map(CFVector::into_terms).collect())
}

/// Move word from `[0]` to the target, e.g. `"AAAAATAAATAA"`.
#[pyfunction]
fn solve(target: &PyFraction) -> String {
    dance::solve_target(&target.0).to_string()
}

/// Replays a move word from `[0]`.
#[pyfunction]
fn replay(word: &str) -> PyResult<PyFraction> {
    let w: MoveWord = word.parse().map_err(to_py)?;
    Ok(PyFraction(w.replay()))
}

/// A square-dance game in progress.
#[pyclass(module = "tanglekit", name = "Dance")]
pub struct PyDance(dance::DanceState);

#[pymethods]
impl PyDance {
    #[new]
    fn new(target: &PyFraction) -> Self {
        PyDance(dance::DanceState::new(target.0.clone()))
    }

    #[getter]
    fn current(&self) -> PyFraction {
        PyFraction(self.0.current().clone())
    }

    #[getter]
    fn target(&self) -> PyFraction {
        PyFraction(self.0.target().clone())
    }

    #[getter]
    fn history(&self) -> String {
        self.0.history().to_string()
    }

    #[getter]
    fn solved(&self) -> bool {
        self.0.is_solved()
    }

    /// Applies `"T"` or `"A"` and returns the new current fraction.
    fn play(&mut self, mv: &str) -> PyResult<PyFraction> {
        let m: Move = mv.parse().map_err(to_py)?;
        self.0 = dance::apply_move(&self.0, m);
        Ok(self.current())
    }

    fn hint(&self) -> PyResult<String> {
        dance::hint(&self.0).map(|m| m.to_string()).map_err(to_py)
    }
}

#[pymodule(name = "tanglekit")]
fn tanglekit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    let py = m.py();
    m.add("TangleError", py.get_type::<TangleError>())?;
    m.add("TangleSyntaxError", py.get_type::<TangleSyntaxError>())?;
    m.add("NotRationalError", py.get_type::<NotRationalError>())?;
    m.add("AlreadySolvedError", py.get_type::<AlreadySolvedError>())?;
    m.add_class::<PyFraction>()?;
    m.add_class::<PyTangle>()?;
    m.add_class::<PyColoring>()?;
    m.add_class::<PyDance>()?;
    m.add_function(wrap_pyfunction!(color, m)?)?;
    m.add_function(wrap_pyfunction!(closure_residues, m)?)?;
    m.add_function(wrap_pyfunction!(harary_check, m)?)?;
    m.add_function(wrap_pyfunction!(eval_cf, m)?)?;
    m.add_function(wrap_pyfunction!(expand_fraction, m)?)?;
    m.add_function(wrap_pyfunction!(rewrite_trace, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(replay, m)?)?;
    Ok(())
}
