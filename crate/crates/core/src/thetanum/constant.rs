//! Calibration of the theta-divisor shift.
//!
//! With basepoint at infinity the shift is a half-period: theta
//! vanishes at the image of every effective divisor of degree g - 1
//! after translating by exactly one of the 4^g candidates
//! (m1 + Omega m2)/2.  Rather than track the half-period through the
//! homology bookkeeping, sample random effective divisors and keep the
//! unique candidate that kills theta on all of them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::HyperellipticCurve;

use super::abel::aj_unnormalized;
use super::linalg::cmatvec;
use super::periods::RiemannData;
use super::theta::{riemann_theta, ThetaParams};
use super::{fcoeffs, peval, Cplx, NumError};

const CAL_TOL: f64 = 1e-6;

/// A random affine point kept well away from the branch points; either
/// square-root lift works since only effectivity of the divisor
/// matters.
fn sample_point(
    rng: &mut ChaCha8Rng,
    fc: &[f64],
    bps: &[Cplx],
    scale: f64,
) -> (Cplx, Cplx) {
    loop {
        let x0 = Cplx::new(
            rng.random_range(-1.6 * scale..1.6 * scale),
            rng.random_range(-1.6 * scale..1.6 * scale),
        );
        if bps.iter().any(|b| (x0 - b).norm() < 0.15 * scale) {
            continue;
        }
        return (x0, peval(fc, x0).sqrt());
    }
}

/// Normalized images of `samples` random effective divisors of degree
/// g - 1.
fn sample_images(
    rd: &RiemannData,
    c: &HyperellipticCurve,
    samples: usize,
) -> Result<Vec<Vec<Cplx>>, NumError> {
    let g = c.genus();
    let fc = fcoeffs(c);
    let scale = rd
        .branch_points
        .iter()
        .fold(1.0f64, |a, z| a.max(z.norm()));
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a_ca11);

    let mut images = Vec::with_capacity(samples);
    let mut rejected = 0usize;
    while images.len() < samples {
        let mut z = vec![Cplx::new(0.0, 0.0); g];
        let mut ok = true;
        for _ in 0..g - 1 {
            let (x0, y0) = sample_point(&mut rng, &fc, &rd.branch_points, scale);
            match aj_unnormalized(&fc, &rd.branch_points, g, x0, y0) {
                Ok(raw) => {
                    let v = cmatvec(&rd.norm, &raw);
                    for (zi, vi) in z.iter_mut().zip(v) {
                        *zi += vi;
                    }
                }
                // a hard-to-route sample is discarded, not fatal
                Err(NumError::PathNearBranchCut) => {
                    ok = false;
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        if ok {
            images.push(z);
        } else {
            rejected += 1;
            if rejected > 8 * samples {
                return Err(NumError::NotConverged(
                    "could not route enough calibration paths".into(),
                ));
            }
        }
    }
    Ok(images)
}

/// The translate that places theta's zero set over the images of
/// effective divisors of degree g - 1; always a half-period here.
pub fn riemann_constant(
    rd: &RiemannData,
    c: &HyperellipticCurve,
    samples: usize,
) -> Result<Vec<Cplx>, NumError> {
    let g = rd.genus();
    let tp = ThetaParams::for_data(rd, 1e-12)?;
    let images = sample_images(rd, c, samples)?;

    let mut best: Option<(f64, Vec<Cplx>)> = None;
    for m1 in 0..(1u32 << g) {
        for m2 in 0..(1u32 << g) {
            let kappa: Vec<Cplx> = (0..g)
                .map(|i| {
                    let mut v = Cplx::new(if m1 >> i & 1 == 1 { 0.5 } else { 0.0 }, 0.0);
                    for j in 0..g {
                        if m2 >> j & 1 == 1 {
                            v += rd.omega[i][j] * 0.5;
                        }
                    }
                    v
                })
                .collect();
            let mut score = 0.0f64;
            for z in &images {
                let arg: Vec<Cplx> = z.iter().zip(&kappa).map(|(a, k)| a - k).collect();
                score = score.max(riemann_theta(&arg, rd, &tp).norm());
            }
            if best.as_ref().is_none_or(|(s, _)| score < *s) {
                best = Some((score, kappa));
            }
        }
    }
    let (score, kappa) = best.expect("at least one candidate");
    if score > CAL_TOL {
        return Err(NumError::CalibrationFailed { best: score });
    }
    Ok(kappa)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::CurvePoint;
    use crate::qalg::{QPoly, Rat};
    use crate::rrspace::{h0, Divisor};
    use crate::thetanum::abel::abel_jacobi_divisor;
    use crate::thetanum::periods::period_matrix;
    use crate::thetanum::theta::lattice_distance;

    fn curve(cs: &[i64]) -> HyperellipticCurve {
        HyperellipticCurve::new(QPoly::of_ints(cs)).unwrap()
    }

    #[test]
    fn genus_one_constant_is_the_odd_half_period() {
        let c = curve(&[0, -1, 0, 1]); // y^2 = x^3 - x
        let rd = period_matrix(&c, 256).unwrap();
        let kappa = riemann_constant(&rd, &c, 6).unwrap();
        let odd = (Cplx::new(1.0, 0.0) + rd.omega[0][0]) * 0.5;
        let d = lattice_distance(&[kappa[0] - odd], &rd);
        assert!(d < 1e-6, "kappa = {:?}, distance {d:e}", kappa);
    }

    #[test]
    fn fresh_points_land_on_the_zero_set() {
        let c = curve(&[-1, 0, 0, 0, 0, 1]); // y^2 = x^5 - 1
        let rd = period_matrix(&c, 256).unwrap();
        let kappa = riemann_constant(&rd, &c, 12).unwrap();
        let tp = ThetaParams::for_data(&rd, 1e-12).unwrap();
        let fc = fcoeffs(&c);
        let mut rng = ChaCha8Rng::seed_from_u64(0x0ff5_e7);
        let scale = rd.branch_points.iter().fold(1.0f64, |a, z| a.max(z.norm()));
        let mut checked = 0;
        while checked < 20 {
            let (x0, y0) = sample_point(&mut rng, &fc, &rd.branch_points, scale);
            let raw = match aj_unnormalized(&fc, &rd.branch_points, 2, x0, y0) {
                Ok(r) => r,
                Err(_) => continue,
            };
            let z = cmatvec(&rd.norm, &raw);
            let arg: Vec<Cplx> = z.iter().zip(&kappa).map(|(a, k)| a - k).collect();
            let v = riemann_theta(&arg, &rd, &tp).norm();
            assert!(v < 1e-6, "theta residual {v:e} at sample {checked}");
            checked += 1;
        }
    }

    #[test]
    fn nonspecial_class_stays_off_the_zero_set() {
        // h0 of (0,1) + (1,1) - infinity is 0, so theta must not vanish
        // at its translated image.
        let c = curve(&[1, -1, 0, 0, 0, 1]); // y^2 = x^5 - x + 1
        let lam = Divisor::of_point(c.affine_point(Rat::zero(), Rat::one()).unwrap(), 1)
            .plus_point(&c.affine_point(Rat::one(), Rat::one()).unwrap(), 1)
            .sub(&Divisor::of_point(CurvePoint::Infinity, 1));
        assert_eq!(h0(&c, &lam).unwrap(), 0);

        let rd = period_matrix(&c, 256).unwrap();
        let kappa = riemann_constant(&rd, &c, 12).unwrap();
        let tp = ThetaParams::for_data(&rd, 1e-12).unwrap();
        let z = abel_jacobi_divisor(&rd, &c, &lam).unwrap();
        let arg: Vec<Cplx> = z.iter().zip(&kappa).map(|(a, k)| a - k).collect();
        let v = riemann_theta(&arg, &rd, &tp).norm();
        assert!(v > 1e-3, "expected a nonvanishing theta, got {v:e}");
    }
}
