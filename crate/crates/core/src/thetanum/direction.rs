//! The marked-point tangent direction and the winding-number order.
//!
//! The derivative of the Abel-Jacobi map along the local parameter at
//! the marked point is computed exactly from the local expansions: its
//! k-th unnormalized entry is the t^0 coefficient of
//! x(t)^(k-1) x'(t) / y(t).  Restricting theta to the line through a
//! class in that direction and counting zeros inside a small circle by
//! the argument principle recovers the vanishing order numerically.

use std::f64::consts::PI;

use crate::curve::{CurveError, CurvePoint, HyperellipticCurve};
use crate::qalg::Rat;
use crate::rrspace::Divisor;

use super::abel::abel_jacobi_divisor;
use super::constant::riemann_constant;
use super::linalg::cmatvec;
use super::periods::RiemannData;
use super::theta::{riemann_theta, ThetaParams};
use super::{Cplx, NumError};

// ---- tangent direction ----

/// Unnormalized direction entries as exact rationals; entry k is the
/// t^0 coefficient of x^(k-1) x'/y at the marked point.
pub fn kp_unnormalized(
    c: &HyperellipticCurve,
    p: &CurvePoint,
) -> Result<Vec<Rat>, CurveError> {
    let g = c.genus();
    let prec = 2 * g as i64 + 6;
    let (x, y) = c.local_expansion(p, prec)?;
    let mut acc = &x.derivative() * &y.invert()?;
    let mut out = Vec::with_capacity(g);
    for k in 0..g {
        out.push(acc.coeff(0)?);
        if k + 1 < g {
            acc = &acc * &x;
        }
    }
    Ok(out)
}

/// Tangent direction of the Abel-Jacobi image at the marked point, in
/// the normalized coordinates theta lives in.
#[derive(Debug, Clone)]
pub struct KpDirection {
    pub u: Vec<Cplx>,
}

pub fn kp_direction(
    rd: &RiemannData,
    c: &HyperellipticCurve,
    p: &CurvePoint,
) -> Result<KpDirection, NumError> {
    let raw: Vec<Cplx> = kp_unnormalized(c, p)?
        .iter()
        .map(|r| Cplx::new(r.to_f64(), 0.0))
        .collect();
    let u = cmatvec(&rd.norm, &raw);
    let nm = u.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    assert!(nm > 0.0, "tangent direction cannot vanish");
    Ok(KpDirection { u })
}

// ---- argument-principle order count ----

/// Zeros of t -> theta(z0 + t u/|u|) inside |t| = r, counted with
/// multiplicity via the summed phase increments.  Doubles the sample
/// count until every increment is below pi/2 and the winding defect is
/// small, so an undersampled contour can never certify.
pub fn winding_order(
    rd: &RiemannData,
    z0: &[Cplx],
    dir: &[Cplx],
    r: f64,
    tp: &ThetaParams,
) -> Result<i64, NumError> {
    let nm = dir.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
    assert!(nm > 0.0, "zero direction");
    let uhat: Vec<Cplx> = dir.iter().map(|v| v / nm).collect();

    let mut last_defect = f64::INFINITY;
    let mut n = 64usize;
    while n <= 4096 {
        let vals: Vec<Cplx> = (0..n)
            .map(|j| {
                let t = Cplx::from_polar(r, 2.0 * PI * j as f64 / n as f64);
                let arg: Vec<Cplx> =
                    z0.iter().zip(&uhat).map(|(z, u)| z + u * t).collect();
                riemann_theta(&arg, rd, tp)
            })
            .collect();

        let maxv = vals.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        if maxv < 1e4 * tp.eps {
            return Err(NumError::DegenerateLine);
        }
        let minv = vals.iter().map(|v| v.norm()).fold(f64::INFINITY, f64::min);
        if minv < 1e-3 * maxv {
            return Err(NumError::ZeroOnContour);
        }

        let mut total = 0.0;
        let mut resolved = true;
        for j in 0..n {
            let inc = (vals[(j + 1) % n] / vals[j]).arg();
            if inc.abs() >= PI / 2.0 {
                resolved = false;
                break;
            }
            total += inc;
        }
        if resolved {
            let w = total / (2.0 * PI);
            let k = w.round();
            let defect = (w - k).abs();
            if defect < 0.1 {
                if k < 0.0 {
                    return Err(NumError::WindingAmbiguous { defect: w });
                }
                return Ok(k as i64);
            }
            last_defect = defect;
        }
        n *= 2;
    }
    Err(NumError::WindingAmbiguous {
        defect: last_defect,
    })
}

/// Vanishing order of theta along the marked-point direction at the
/// translated image of a degree g-1 class, by contour counting.
pub fn order_numeric(
    rd: &RiemannData,
    c: &HyperellipticCurve,
    lambda: &Divisor,
    p: &CurvePoint,
    r: f64,
    tp: &ThetaParams,
) -> Result<i64, NumError> {
    assert_eq!(
        lambda.degree(),
        c.genus() as i64 - 1,
        "numeric order expects a class of degree g - 1"
    );
    let kappa = riemann_constant(rd, c, 24)?;
    let aj = abel_jacobi_divisor(rd, c, lambda)?;
    let z0: Vec<Cplx> = aj.iter().zip(&kappa).map(|(a, k)| a - k).collect();
    let dir = kp_direction(rd, c, p)?;
    winding_order(rd, &z0, &dir.u, r, tp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::QPoly;
    use crate::rrspace::h0;
    use crate::thetanum::periods::period_matrix;

    fn curve(cs: &[i64]) -> HyperellipticCurve {
        HyperellipticCurve::new(QPoly::of_ints(cs)).unwrap()
    }

    #[test]
    fn monic_quintic_direction_at_infinity() {
        let c = curve(&[-1, 0, 0, 0, 0, 1]); // y^2 = x^5 - 1
        let u = kp_unnormalized(&c, &CurvePoint::Infinity).unwrap();
        let want = [Rat::zero(), -&(&Rat::one() + &Rat::one())];
        assert_eq!(u.len(), 2);
        assert_eq!(u[0], want[0]);
        assert_eq!(u[1], want[1]);
    }

    #[test]
    fn triple_zero_at_the_marked_point_on_x5_minus_1() {
        let c = curve(&[-1, 0, 0, 0, 0, 1]);
        let rd = period_matrix(&c, 256).unwrap();
        let tp = ThetaParams::for_data(&rd, 1e-12).unwrap();
        let lam = Divisor::of_point(CurvePoint::Infinity, 1);
        let ord = order_numeric(&rd, &c, &lam, &CurvePoint::Infinity, 1e-2, &tp).unwrap();
        assert_eq!(ord, 3);
    }

    #[test]
    fn winding_ignores_direction_scaling() {
        let c = curve(&[-1, 0, 0, 0, 0, 1]);
        let rd = period_matrix(&c, 256).unwrap();
        let tp = ThetaParams::for_data(&rd, 1e-12).unwrap();
        let kappa = riemann_constant(&rd, &c, 24).unwrap();
        let aj =
            abel_jacobi_divisor(&rd, &c, &Divisor::of_point(CurvePoint::Infinity, 1)).unwrap();
        let z0: Vec<Cplx> = aj.iter().zip(&kappa).map(|(a, k)| a - k).collect();
        let dir = kp_direction(&rd, &c, &CurvePoint::Infinity).unwrap();
        let scaled: Vec<Cplx> = dir.u.iter().map(|v| v * 3.0).collect();
        let w1 = winding_order(&rd, &z0, &dir.u, 1e-2, &tp).unwrap();
        let w2 = winding_order(&rd, &z0, &scaled, 1e-2, &tp).unwrap();
        assert_eq!(w1, w2);
        assert_eq!(w1, 3);
    }

    #[test]
    fn trivial_class_has_order_zero() {
        let c = curve(&[1, -1, 0, 0, 0, 1]); // y^2 = x^5 - x + 1
        let lam = Divisor::of_point(c.affine_point(Rat::zero(), Rat::one()).unwrap(), 1)
            .plus_point(&c.affine_point(Rat::one(), Rat::one()).unwrap(), 1)
            .sub(&Divisor::of_point(CurvePoint::Infinity, 1));
        assert_eq!(h0(&c, &lam).unwrap(), 0);
        let rd = period_matrix(&c, 256).unwrap();
        let tp = ThetaParams::for_data(&rd, 1e-12).unwrap();
        let ord = order_numeric(&rd, &c, &lam, &CurvePoint::Infinity, 1e-2, &tp).unwrap();
        assert_eq!(ord, 0);
    }

    #[test]
    fn affine_marked_point_agrees_with_exact() {
        let c = curve(&[1, -1, 0, 0, 0, 1]);
        let lam = Divisor::of_point(c.affine_point(Rat::zero(), Rat::one()).unwrap(), 1);
        let p = c.affine_point(Rat::one(), Rat::one()).unwrap();
        let exact = crate::vanishing::order_report(&c, &lam, &p, None)
            .unwrap()
            .order();
        assert_eq!(exact, 1);
        let rd = period_matrix(&c, 256).unwrap();
        let tp = ThetaParams::for_data(&rd, 1e-12).unwrap();
        let ord = order_numeric(&rd, &c, &lam, &p, 1e-2, &tp).unwrap();
        assert_eq!(ord, exact);
    }
}
