//! Python bindings. Rationals cross the boundary as `fractions.Fraction`
//! (ints and `"p/q"` strings are accepted on input; floats are refused).

use pyo3::create_exception;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyFloat, PyString};

use restrictor_core::chern::{self, TwistContext};
use restrictor_core::cohomology::{self, Betti, BnReport};
use restrictor_core::criteria::{CriterionInput, CriterionName, CriterionReport};
use restrictor_core::p2x::{self, ExceptionalSlope, DEFAULT_DEPTH};
use restrictor_core::walls;
use restrictor_core::{rational, ChernCharacter, DivisorClass, Error, SurfaceModel, Q};

create_exception!(restrictor, RestrictorError, PyValueError);

fn err(e: Error) -> PyErr {
    RestrictorError::new_err(e.to_string())
}

fn to_rational(obj: &Bound<'_, PyAny>) -> PyResult<Q> {
    if obj.is_instance_of::<PyFloat>() {
        return Err(PyTypeError::new_err("floats are not accepted; use Fraction, int or \"p/q\""));
    }
    if let Ok(s) = obj.cast::<PyString>() {
        return rational::parse(s.to_str()?).map_err(err);
    }
    obj.extract::<Q>()
}

fn to_class(obj: &Bound<'_, PyAny>) -> PyResult<DivisorClass> {
    let items: Vec<Bound<'_, PyAny>> = obj.extract()?;
    Ok(DivisorClass::new(items.iter().map(to_rational).collect::<PyResult<_>>()?))
}

fn class_list(c: &DivisorClass) -> Vec<Q> {
    c.coefficients().to_vec()
}

#[pyclass(name = "Surface", module = "restrictor", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PySurface {
    inner: SurfaceModel,
}

#[pymethods]
impl PySurface {
    #[staticmethod]
    fn p2() -> Self {
        PySurface { inner: SurfaceModel::p2() }
    }

    #[staticmethod]
    fn hirzebruch(m: u32) -> PyResult<Self> {
        Ok(PySurface {
            inner: SurfaceModel::hirzebruch(m).map_err(err)?,
        })
    }

    #[staticmethod]
    fn custom(intersection: Vec<Vec<i64>>, canonical: &Bound<'_, PyAny>, chi: i64) -> PyResult<Self> {
        Ok(PySurface {
            inner: SurfaceModel::custom(intersection, to_class(canonical)?, chi).map_err(err)?,
        })
    }

    #[getter]
    fn picard_rank(&self) -> usize {
        self.inner.picard_rank()
    }

    #[getter]
    fn canonical_class(&self) -> Vec<Q> {
        class_list(self.inner.canonical_class())
    }

    /// The default polarization: `H` on the plane, `M + (m+1)F` on `F_m`.
    fn default_polarization(&self) -> PyResult<Vec<Q>> {
        Ok(class_list(&default_h(&self.inner)?))
    }

    fn intersect(&self, a: &Bound<'_, PyAny>, b: &Bound<'_, PyAny>) -> PyResult<Q> {
        self.inner.intersect(&to_class(a)?, &to_class(b)?).map_err(err)
    }

    fn is_ample(&self, c: &Bound<'_, PyAny>) -> PyResult<bool> {
        self.inner.is_ample(&to_class(c)?).map_err(err)
    }

    fn genus_of_curve(&self, c: &Bound<'_, PyAny>) -> PyResult<Q> {
        self.inner.genus_of_curve(&to_class(c)?).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Surface({:?})", self.inner.kind())
    }
}

#[pyclass(name = "Character", module = "restrictor", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCharacter {
    inner: ChernCharacter,
}

#[pymethods]
impl PyCharacter {
    #[new]
    fn new(rank: i64, ch1: &Bound<'_, PyAny>, ch2: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyCharacter {
            inner: ChernCharacter::new(rank, to_class(ch1)?, to_rational(ch2)?),
        })
    }

    /// A plane character `(rank, degree * H, ch2)`.
    #[staticmethod]
    fn plane(rank: i64, degree: &Bound<'_, PyAny>, ch2: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyCharacter {
            inner: ChernCharacter::p2(rank, to_rational(degree)?, to_rational(ch2)?),
        })
    }

    #[getter]
    fn rank(&self) -> i64 {
        self.inner.ch0
    }

    #[getter]
    fn ch1(&self) -> Vec<Q> {
        class_list(&self.inner.ch1)
    }

    #[getter]
    fn ch2(&self) -> Q {
        self.inner.ch2.clone()
    }

    fn euler_characteristic(&self, surface: &PySurface) -> PyResult<Q> {
        chern::euler_characteristic(&surface.inner, &self.inner).map_err(err)
    }

    fn discriminant(&self, surface: &PySurface) -> PyResult<Q> {
        chern::classical_discriminant(&surface.inner, &self.inner).map_err(err)
    }

    fn tensor(&self, surface: &PySurface, line: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyCharacter {
            inner: chern::tensor_line(&surface.inner, &self.inner, &to_class(line)?).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Character({}, {}, {})", self.inner.ch0, self.inner.ch1, self.inner.ch2)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }
}

#[pyclass(name = "Wall", module = "restrictor", frozen, skip_from_py_object)]
struct PyWall {
    inner: walls::Wall,
}

#[pymethods]
impl PyWall {
    #[getter]
    fn center(&self) -> Q {
        self.inner.center.clone()
    }

    #[getter]
    fn radius_sq(&self) -> Q {
        self.inner.radius_sq.clone()
    }

    #[getter]
    fn kind(&self) -> String {
        format!("{:?}", self.inner.kind).to_lowercase()
    }

    /// Exact feet `center ± sqrt(radius_sq)` as strings, or `None` for a non-semicircle.
    fn feet(&self) -> Option<(String, String)> {
        self.inner.feet().map(|(a, b)| (a.to_string(), b.to_string()))
    }

    fn __repr__(&self) -> String {
        format!("Wall(center={}, radius_sq={}, kind={})", self.inner.center, self.inner.radius_sq, self.kind())
    }
}

fn default_h(s: &SurfaceModel) -> PyResult<DivisorClass> {
    if s.is_p2() {
        return Ok(DivisorClass::from_ints(&[1]));
    }
    match s.hirzebruch_parameter() {
        Some(m) => Ok(SurfaceModel::class2(1, i64::from(m) + 1)),
        None => Err(PyValueError::new_err("custom surfaces need an explicit polarization")),
    }
}

fn context(s: &SurfaceModel, v: &ChernCharacter, h: Option<&Bound<'_, PyAny>>, twist: Option<&Bound<'_, PyAny>>) -> PyResult<TwistContext> {
    let h = match h {
        Some(h) => to_class(h)?,
        None => default_h(s)?,
    };
    let d = match twist {
        None => s.zero_class(),
        Some(t) if t.cast::<PyString>().is_ok_and(|x| x.to_str().is_ok_and(|x| x == "auto")) => {
            chern::minimizing_twist(s, v, &h).map_err(err)?
        }
        Some(t) => to_class(t)?,
    };
    TwistContext::new(s, h, d).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (surface, v, curve, polarization=None, twist=None))]
fn restriction_wall(
    surface: &PySurface,
    v: &PyCharacter,
    curve: &Bound<'_, PyAny>,
    polarization: Option<&Bound<'_, PyAny>>,
    twist: Option<&Bound<'_, PyAny>>,
) -> PyResult<PyWall> {
    let ctx = context(&surface.inner, &v.inner, polarization, twist)?;
    let w = walls::restriction_wall(&surface.inner, &v.inner, &to_class(curve)?, &ctx).map_err(err)?;
    Ok(PyWall { inner: w })
}

#[pyfunction]
#[pyo3(signature = (surface, v, polarization=None, twist=None))]
fn gieseker_bound_wall(
    surface: &PySurface,
    v: &PyCharacter,
    polarization: Option<&Bound<'_, PyAny>>,
    twist: Option<&Bound<'_, PyAny>>,
) -> PyResult<PyWall> {
    let ctx = context(&surface.inner, &v.inner, polarization, twist)?;
    let w = walls::gieseker_bound_wall(&surface.inner, &v.inner, &ctx).map_err(err)?;
    Ok(PyWall { inner: w })
}

#[pyfunction]
#[pyo3(signature = (surface, v, w, polarization=None))]
fn wall(surface: &PySurface, v: &PyCharacter, w: &PyCharacter, polarization: Option<&Bound<'_, PyAny>>) -> PyResult<PyWall> {
    let ctx = context(&surface.inner, &v.inner, polarization, None)?;
    Ok(PyWall {
        inner: walls::wall(&surface.inner, &v.inner, &w.inner, &ctx).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (surface, v, polarization=None))]
fn minimizing_twist(surface: &PySurface, v: &PyCharacter, polarization: Option<&Bound<'_, PyAny>>) -> PyResult<Vec<Q>> {
    let h = match polarization {
        Some(h) => to_class(h)?,
        None => default_h(&surface.inner)?,
    };
    Ok(class_list(&chern::minimizing_twist(&surface.inner, &v.inner, &h).map_err(err)?))
}

fn criterion_by_id(id: &str) -> PyResult<CriterionName> {
    CriterionName::ALL
        .into_iter()
        .find(|n| n.id() == id)
        .ok_or_else(|| PyValueError::new_err(format!("unknown criterion {id:?}")))
}

fn report_dict<'py>(py: Python<'py>, r: &CriterionReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("criterion", r.name.id())?;
    d.set_item("d", r.degree)?;
    d.set_item("lhs", &r.lhs)?;
    d.set_item("rhs", &r.rhs)?;
    d.set_item("satisfied", r.satisfied)?;
    d.set_item("conclusion", r.conclusion.to_string())?;
    d.set_item("hypotheses", r.hypotheses.clone())?;
    Ok(d)
}

fn criterion_input(surface: &PySurface, v: &PyCharacter, polarization: Option<&Bound<'_, PyAny>>, twist: Option<&Bound<'_, PyAny>>, depth: u32) -> PyResult<CriterionInput> {
    let ctx = context(&surface.inner, &v.inner, polarization, twist)?;
    let mut input = CriterionInput::new(surface.inner.clone(), v.inner.clone(), ctx);
    input.depth = depth;
    Ok(input)
}

/// One criterion on a curve of class `dH`.
#[pyfunction]
#[pyo3(signature = (name, surface, v, d, polarization=None, twist=None, depth=DEFAULT_DEPTH))]
#[allow(clippy::too_many_arguments)]
fn evaluate_criterion<'py>(
    py: Python<'py>,
    name: &str,
    surface: &PySurface,
    v: &PyCharacter,
    d: i64,
    polarization: Option<&Bound<'py, PyAny>>,
    twist: Option<&Bound<'py, PyAny>>,
    depth: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let input = criterion_input(surface, v, polarization, twist, depth)?;
    report_dict(py, &input.evaluate(criterion_by_id(name)?, d).map_err(err)?)
}

/// Minimal degree per applicable criterion (`None` when none up to `d_max`).
#[pyfunction]
#[pyo3(signature = (surface, v, d_max=100, polarization=None, twist=None, depth=DEFAULT_DEPTH))]
fn minimal_degrees<'py>(
    py: Python<'py>,
    surface: &PySurface,
    v: &PyCharacter,
    d_max: i64,
    polarization: Option<&Bound<'py, PyAny>>,
    twist: Option<&Bound<'py, PyAny>>,
    depth: u32,
) -> PyResult<Bound<'py, PyDict>> {
    let input = criterion_input(surface, v, polarization, twist, depth)?;
    let out = PyDict::new(py);
    for (name, row) in input.minimal_rows(d_max).map_err(err)? {
        out.set_item(name.id(), row.and_then(|r| r.degree))?;
    }
    Ok(out)
}

fn slope_dict<'py>(py: Python<'py>, e: &ExceptionalSlope) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    let (lo, hi) = e.interval();
    d.set_item("alpha", &e.alpha)?;
    d.set_item("rank", e.rank.clone())?;
    d.set_item("discriminant", &e.discriminant)?;
    d.set_item("dyadic", (e.dyadic.p, e.dyadic.q))?;
    d.set_item("interval", (lo.to_string(), hi.to_string()))?;
    Ok(d)
}

/// Exceptional slopes in the open window `(lo, hi)`.
#[pyfunction]
fn exceptional_slopes<'py>(py: Python<'py>, depth: u32, lo: &Bound<'py, PyAny>, hi: &Bound<'py, PyAny>) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let slopes = p2x::enumerate_exceptional(depth, &to_rational(lo)?, &to_rational(hi)?).map_err(err)?;
    slopes.iter().map(|e| slope_dict(py, e)).collect()
}

/// `μ0(v)` as an exact string such as `"(-3+1√13)/2"`.
#[pyfunction]
fn mu0(v: &PyCharacter) -> PyResult<String> {
    Ok(p2x::mu0(&v.inner).map_err(err)?.to_string())
}

#[pyfunction]
#[pyo3(signature = (v, depth=DEFAULT_DEPTH))]
fn orthogonal_invariants<'py>(py: Python<'py>, v: &PyCharacter, depth: u32) -> PyResult<Bound<'py, PyDict>> {
    let inv = p2x::orthogonal_invariants(&v.inner, depth).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("mu_plus", &inv.mu_plus)?;
    d.set_item("delta_plus", &inv.delta_plus)?;
    d.set_item("pairing", &inv.pairing)?;
    d.set_item("exceptional", slope_dict(py, &inv.exceptional)?)?;
    Ok(d)
}

#[pyfunction]
#[pyo3(signature = (v, depth=DEFAULT_DEPTH))]
fn effective_wall_center(v: &PyCharacter, depth: u32) -> PyResult<Q> {
    p2x::effective_wall_center(&v.inner, depth).map_err(err)
}

fn betti(b: &Betti) -> Option<Q> {
    b.known().cloned()
}

/// `(h0, h1, h2)` of the general sheaf; `None` marks an undetermined entry.
#[pyfunction]
fn general_betti(surface: &PySurface, v: &PyCharacter) -> PyResult<(Option<Q>, Option<Q>, Option<Q>)> {
    let t = cohomology::general_betti(&surface.inner, &v.inner).map_err(err)?;
    Ok((betti(&t.h0), betti(&t.h1), betti(&t.h2)))
}

/// `(h0(E|_C), h1(E|_C))`; raises when the exact sequence leaves them open.
#[pyfunction]
fn restricted_betti(surface: &PySurface, v: &PyCharacter, curve: &Bound<'_, PyAny>) -> PyResult<(Q, Q)> {
    let r = cohomology::restricted_betti(&surface.inner, &v.inner, &to_class(curve)?).map_err(err)?;
    Ok((r.h0, r.h1))
}

#[pyfunction]
fn restricted_closed_form_p2(v: &PyCharacter, d: i64) -> PyResult<(Q, Q)> {
    cohomology::restricted_closed_form_p2(&v.inner, d).map_err(err)
}

#[pyfunction]
fn brill_noether_rho(r: &Bound<'_, PyAny>, e: &Bound<'_, PyAny>, g: &Bound<'_, PyAny>, k: &Bound<'_, PyAny>) -> PyResult<Q> {
    Ok(cohomology::brill_noether_rho(&to_rational(r)?, &to_rational(e)?, &to_rational(g)?, &to_rational(k)?))
}

fn bn_dict<'py>(py: Python<'py>, r: &BnReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("r", &r.r)?;
    d.set_item("e", &r.e)?;
    d.set_item("g", &r.g)?;
    d.set_item("k", &r.k)?;
    d.set_item("rho", &r.rho)?;
    d.set_item("violating", r.violating)?;
    let gates = PyDict::new(py);
    for g in &r.gates {
        gates.set_item(&g.label, g.passed)?;
    }
    d.set_item("gates", gates)?;
    Ok(d)
}

/// Brill-Noether data of `E|_C` on a plane curve of degree `d`, gates reported but not enforced.
#[pyfunction]
#[pyo3(signature = (v, d, depth=DEFAULT_DEPTH))]
fn brill_noether_report_p2<'py>(py: Python<'py>, v: &PyCharacter, d: i64, depth: u32) -> PyResult<Bound<'py, PyDict>> {
    bn_dict(py, &cohomology::brill_noether_report_p2(&v.inner, d, depth).map_err(err)?)
}

/// Same as `brill_noether_report_p2`, raising when a hypothesis gate fails.
#[pyfunction]
#[pyo3(signature = (v, d, depth=DEFAULT_DEPTH))]
fn unexpected_sections_p2<'py>(py: Python<'py>, v: &PyCharacter, d: i64, depth: u32) -> PyResult<Bound<'py, PyDict>> {
    bn_dict(py, &cohomology::unexpected_sections_p2(&v.inner, d, depth).map_err(err)?)
}

/// `(dim M(v), dim U_C(r, e), codimension)`.
#[pyfunction]
fn restriction_map_dims(surface: &PySurface, v: &PyCharacter, curve: &Bound<'_, PyAny>) -> PyResult<(Q, Q, Q)> {
    let d = cohomology::restriction_map_dims(&surface.inner, &v.inner, &to_class(curve)?).map_err(err)?;
    Ok((d.moduli, d.curve_moduli, d.codimension))
}

#[pymodule]
fn restrictor(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("RestrictorError", m.py().get_type::<RestrictorError>())?;
    m.add_class::<PySurface>()?;
    m.add_class::<PyCharacter>()?;
    m.add_class::<PyWall>()?;
    m.add_function(wrap_pyfunction!(restriction_wall, m)?)?;
    m.add_function(wrap_pyfunction!(gieseker_bound_wall, m)?)?;
    m.add_function(wrap_pyfunction!(wall, m)?)?;
    m.add_function(wrap_pyfunction!(minimizing_twist, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate_criterion, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(exceptional_slopes, m)?)?;
    m.add_function(wrap_pyfunction!(mu0, m)?)?;
    m.add_function(wrap_pyfunction!(orthogonal_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(effective_wall_center, m)?)?;
    m.add_function(wrap_pyfunction!(general_betti, m)?)?;
    m.add_function(wrap_pyfunction!(restricted_betti, m)?)?;
    m.add_function(wrap_pyfunction!(restricted_closed_form_p2, m)?)?;
    m.add_function(wrap_pyfunction!(brill_noether_rho, m)?)?;
    m.add_function(wrap_pyfunction!(brill_noether_report_p2, m)?)?;
    m.add_function(wrap_pyfunction!(unexpected_sections_p2, m)?)?;
    m.add_function(wrap_pyfunction!(restriction_map_dims, m)?)?;
    Ok(())
}
