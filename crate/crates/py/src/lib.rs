//! Python bindings for the order-of-vanishing toolkit.
//!
//! The module exposes one class, `Curve`, built from the same JSON
//! texts the command-line tool consumes.  Exact results come back as
//! native Python values or JSON strings with exact rationals encoded
//! as "p/q" strings; numeric routines mirror the CLI defaults.

use std::sync::Mutex;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use thetakp_core::cli::{parse_curve, parse_divisor, parse_point, CliError};
use thetakp_core::curve::HyperellipticCurve;
use thetakp_core::rrspace::h0;
use thetakp_core::selftest::run_all;
use thetakp_core::thetanum::{order_numeric, period_matrix, RiemannData, ThetaParams};
use thetakp_core::vanishing::{gap_sequence, order_report, VanishError};

fn to_py(e: CliError) -> PyErr {
    if e.code == 2 {
        PyValueError::new_err(e.message)
    } else {
        PyRuntimeError::new_err(e.message)
    }
}

/// A hyperelliptic curve `y^2 = f(x)` with `f` exact, squarefree, and
/// of odd degree.
#[pyclass(frozen)]
struct Curve {
    inner: HyperellipticCurve,
    // period data is deterministic per node count; keep the last one
    periods: Mutex<Option<(usize, RiemannData)>>,
}

impl Curve {
    fn divisor(&self, s: &str) -> PyResult<thetakp_core::rrspace::Divisor> {
        parse_divisor(&self.inner, s).map_err(to_py)
    }

    fn point(&self, s: &str) -> PyResult<thetakp_core::curve::CurvePoint> {
        parse_point(&self.inner, s).map_err(to_py)
    }

    fn periods_for(&self, quad_points: usize) -> PyResult<RiemannData> {
        if quad_points < 16 {
            return Err(PyValueError::new_err("quad_points must be at least 16"));
        }
        let mut guard = self.periods.lock().unwrap();
        if let Some((qp, rd)) = guard.as_ref() {
            if *qp == quad_points {
                return Ok(rd.clone());
            }
        }
        let rd = period_matrix(&self.inner, quad_points)
            .map_err(|e| to_py(CliError::from(e)))?;
        *guard = Some((quad_points, rd.clone()));
        Ok(rd)
    }

    fn numeric(
        &self,
        divisor: &str,
        point: &str,
        eps: f64,
        radius: f64,
        quad_points: usize,
    ) -> PyResult<i64> {
        let d = self.divisor(divisor)?;
        let p = self.point(point)?;
        let g = self.inner.genus() as i64;
        if d.degree() != g - 1 {
            return Err(PyValueError::new_err(format!(
                "the numeric order needs a degree-{} divisor, got degree {}",
                g - 1,
                d.degree()
            )));
        }
        if !(eps > 0.0) || !(radius > 0.0) {
            return Err(PyValueError::new_err("eps and radius must be positive"));
        }
        let rd = self.periods_for(quad_points)?;
        let tp = ThetaParams::for_data(&rd, eps).map_err(|e| to_py(CliError::from(e)))?;
        order_numeric(&rd, &self.inner, &d, &p, radius, &tp)
            .map_err(|e| to_py(CliError::from(e)))
    }
}

#[pymethods]
impl Curve {
    /// Build from the JSON text `{"f": ["c0", "c1", ...]}` with exact
    /// rationals "p/q".
    #[new]
    fn new(curve_json: &str) -> PyResult<Self> {
        let inner = parse_curve(curve_json).map_err(to_py)?;
        Ok(Curve {
            inner,
            periods: Mutex::new(None),
        })
    }

    fn genus(&self) -> usize {
        self.inner.genus()
    }

    /// Dimension of the space of functions bounded by the divisor
    /// (JSON text, same schema as the CLI).
    fn h0(&self, divisor: &str) -> PyResult<usize> {
        let d = self.divisor(divisor)?;
        h0(&self.inner, &d)
            .map_err(|e| to_py(CliError::from(VanishError::from(e))))
    }

    /// Gap sequence of the divisor at the point.
    fn gap_sequence(&self, divisor: &str, point: &str) -> PyResult<Vec<i64>> {
        let d = self.divisor(divisor)?;
        let p = self.point(point)?;
        gap_sequence(&self.inner, &d, &p)
            .map(|gs| gs.gaps().to_vec())
            .map_err(|e| to_py(CliError::from(e)))
    }

    /// Inflectionary weight of the divisor at the point.
    fn weight(&self, divisor: &str, point: &str) -> PyResult<i64> {
        let d = self.divisor(divisor)?;
        let p = self.point(point)?;
        gap_sequence(&self.inner, &d, &p)
            .map(|gs| gs.weight())
            .map_err(|e| to_py(CliError::from(e)))
    }

    /// Vanishing order along the marked-point direction by all three
    /// exact formulas, as the same JSON report the CLI emits.
    #[pyo3(signature = (divisor, point, n=None))]
    fn order_report(&self, divisor: &str, point: &str, n: Option<i64>) -> PyResult<String> {
        let d = self.divisor(divisor)?;
        let p = self.point(point)?;
        let rep = order_report(&self.inner, &d, &p, n).map_err(|e| to_py(CliError::from(e)))?;
        Ok(serde_json::to_string(&rep).expect("report serializes"))
    }

    /// Vanishing order of the report above, as a plain integer.
    #[pyo3(signature = (divisor, point, n=None))]
    fn order(&self, divisor: &str, point: &str, n: Option<i64>) -> PyResult<i64> {
        let d = self.divisor(divisor)?;
        let p = self.point(point)?;
        order_report(&self.inner, &d, &p, n)
            .map(|rep| rep.order())
            .map_err(|e| to_py(CliError::from(e)))
    }

    /// Numeric vanishing order from the winding number of the theta
    /// function around a small contour.
    #[pyo3(signature = (divisor, point, eps=1e-12, radius=1e-2, quad_points=256))]
    fn theta_order(
        &self,
        divisor: &str,
        point: &str,
        eps: f64,
        radius: f64,
        quad_points: usize,
    ) -> PyResult<i64> {
        self.numeric(divisor, point, eps, radius, quad_points)
    }

    /// Exact report plus the numeric order and an "agree" flag, as
    /// JSON text.
    #[pyo3(signature = (divisor, point, n=None, eps=1e-12, radius=1e-2, quad_points=256))]
    fn verify(
        &self,
        divisor: &str,
        point: &str,
        n: Option<i64>,
        eps: f64,
        radius: f64,
        quad_points: usize,
    ) -> PyResult<String> {
        let d = self.divisor(divisor)?;
        let p = self.point(point)?;
        let rep = order_report(&self.inner, &d, &p, n).map_err(|e| to_py(CliError::from(e)))?;
        let k = self.numeric(divisor, point, eps, radius, quad_points)?;
        let mut v = serde_json::to_value(&rep).expect("report serializes");
        v["numeric"] = serde_json::json!(k);
        v["agree"] = serde_json::json!(k == rep.order());
        Ok(serde_json::to_string(&v).expect("report serializes"))
    }

    fn __repr__(&self) -> String {
        format!("Curve(y^2 = {}, genus {})", self.inner.f(), self.inner.genus())
    }
}

/// Run the built-in verification suite; returns (name, passed,
/// detail) triples in criterion order.
#[pyfunction]
#[pyo3(signature = (threads=1))]
fn selftest(threads: usize) -> Vec<(String, bool, String)> {
    run_all(threads.max(1))
        .into_iter()
        .map(|r| (r.name.to_string(), r.passed, r.detail))
        .collect()
}

#[pymodule]
fn thetakp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Curve>()?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
