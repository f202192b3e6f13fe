//! Floating-point verification layer.
//!
//! Everything here exists to check the exact pipeline against an
//! independent analytic computation: period matrices over a
//! deterministic homology basis, the Abel-Jacobi map with tracked
//! square-root sheets, Riemann theta with a certified truncation
//! radius, a calibrated Riemann constant, and the winding-number
//! extraction of the vanishing order along the marked direction.
//!
//! All routines are deterministic for fixed inputs: quadrature node
//! counts, sampling seeds, and summation orders are pinned.

use num_complex::Complex64;
use thiserror::Error;

use crate::curve::{CurveError, HyperellipticCurve};
use crate::qalg::Rat;

pub mod abel;
pub mod cache;
pub mod constant;
pub mod direction;
pub mod linalg;
pub mod periods;
pub(crate) mod roots;
pub mod theta;

pub use abel::{abel_jacobi, abel_jacobi_divisor};
pub use cache::{load_riemann_data, save_riemann_data};
pub use constant::riemann_constant;
pub use direction::{kp_direction, kp_unnormalized, order_numeric, winding_order, KpDirection};
pub use periods::{period_matrix, RiemannData};
pub use theta::{lattice_distance, riemann_theta, ThetaParams};

pub type Cplx = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("branch points too close for stable quadrature (separation {min_sep:e})")]
    BranchPointsTooClose { min_sep: f64 },
    #[error("numeric pipeline did not converge: {0}")]
    NotConverged(String),
    #[error("integration path cannot be routed away from the branch points")]
    PathNearBranchCut,
    #[error("requested theta accuracy is unreachable at working precision")]
    RadiusOverflow,
    #[error("no half-period calibrates the theta zero set (best residual {best:e})")]
    CalibrationFailed { best: f64 },
    #[error("theta drops below the zero threshold on the sampling contour")]
    ZeroOnContour,
    #[error("winding number did not certify (defect {defect})")]
    WindingAmbiguous { defect: f64 },
    #[error("theta vanishes at every sample along the line")]
    DegenerateLine,
    #[error(transparent)]
    Curve(#[from] CurveError),
}

// ---- shared float helpers ----

pub(crate) fn fcoeffs(c: &HyperellipticCurve) -> Vec<f64> {
    c.f().coeffs().iter().map(Rat::to_f64).collect()
}

/// Horner evaluation of a real-coefficient polynomial at a complex
/// argument.
pub(crate) fn peval(co: &[f64], x: Cplx) -> Cplx {
    co.iter()
        .rev()
        .fold(Cplx::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// The square root of `w` on the branch continuous with `near`.
pub(crate) fn sqrt_near(w: Cplx, near: Cplx) -> Cplx {
    let q = w.sqrt();
    if (q - near).norm_sqr() <= (q + near).norm_sqr() {
        q
    } else {
        -q
    }
}

pub(crate) fn cross(a: Cplx, b: Cplx) -> f64 {
    a.re * b.im - a.im * b.re
}
