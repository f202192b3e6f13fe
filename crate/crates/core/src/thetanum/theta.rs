//! Riemann theta with a certified truncation radius.
//!
//! theta(z) = sum over integer vectors n of
//! exp(pi i n'.Omega.n + 2 pi i n'.z).  The argument is first reduced
//! into the fundamental cell z = z0 + a + Omega.b with integer a, b,
//! which rewrites theta(z) as a quasi-periodicity factor times
//! theta(z0).  The remaining sum over the box |n|_inf <= N0 carries an
//! explicit tail bound, so the radius N0 is chosen once per period
//! matrix and accuracy target rather than guessed.

use std::f64::consts::PI;

use super::linalg::{cinv, jacobi_sym_eigenvalues};
use super::periods::RiemannData;
use super::{Cplx, NumError};

// ---- truncation certificate ----

/// Summation box and accuracy target for one period matrix.
#[derive(Debug, Clone, Copy)]
pub struct ThetaParams {
    pub eps: f64,
    pub n0: i64,
}

impl ThetaParams {
    /// Certify a box radius for `rd` so the reduced sum is within
    /// `eps` of the full series for every cell-reduced argument.
    ///
    /// The returned theta value carries the quasi-periodicity factor on
    /// top of the reduced sum; over the cell that factor is bounded by
    /// exp(pi/4 max_sign s'.Im(Omega).s), so the absolute error of the
    /// final value is at most that bound times `eps`.  The reduced
    /// argument has Im z = Im(Omega).y0 with |y0|_i <= 1/2, so terms at
    /// box distance m contribute at most
    /// count(m) * exp(-pi lambda_min (m - 1/2)^2).
    pub fn for_data(rd: &RiemannData, eps: f64) -> Result<ThetaParams, NumError> {
        let g = rd.genus();
        let gm = rd.im_omega();

        let mut qmax = f64::NEG_INFINITY;
        for bits in 0..(1u32 << g) {
            let sg: Vec<f64> = (0..g)
                .map(|i| if bits >> i & 1 == 1 { 1.0 } else { -1.0 })
                .collect();
            let mut q = 0.0;
            for i in 0..g {
                for j in 0..g {
                    q += sg[i] * gm[i][j] * sg[j];
                }
            }
            qmax = qmax.max(q);
        }
        if !(PI / 4.0 * qmax).exp().is_finite() || eps < 5e-16 {
            return Err(NumError::RadiusOverflow);
        }

        let eig = jacobi_sym_eigenvalues(&gm);
        let lam = eig[0];
        if lam <= 0.0 {
            return Err(NumError::NotConverged(
                "imaginary part of the period matrix is not positive definite".into(),
            ));
        }

        let ring = |m: i64| {
            let cnt =
                ((2 * m + 1) as f64).powi(g as i32) - ((2 * m - 1) as f64).powi(g as i32);
            let d = m as f64 - 0.5;
            cnt * (-PI * lam * d * d).exp()
        };

        // Rounding budget: a few ulps per term, weighted by the
        // magnitude bound of the whole sum rather than the term count.
        let mut mag = 1.0;
        for m in 1..=80 {
            let t = ring(m);
            mag += t;
            if t < 1e-300 {
                break;
            }
        }
        if mag * 8.8e-16 > eps / 2.0 {
            return Err(NumError::RadiusOverflow);
        }

        for n0 in 1i64..=64 {
            let mut tail = 0.0;
            for m in n0 + 1..=n0 + 80 {
                let t = ring(m);
                tail += t;
                if t < 1e-300 {
                    break;
                }
            }
            if tail <= eps / 2.0 {
                return Ok(ThetaParams { eps, n0 });
            }
        }
        Err(NumError::RadiusOverflow)
    }
}

// ---- argument reduction ----

fn real_inverse(gm: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let c: Vec<Vec<Cplx>> = gm
        .iter()
        .map(|r| r.iter().map(|&v| Cplx::new(v, 0.0)).collect())
        .collect();
    cinv(&c)
        .expect("Im(Omega) of validated period data is invertible")
        .iter()
        .map(|r| r.iter().map(|z| z.re).collect())
        .collect()
}

struct Reduced {
    z0: Vec<Cplx>,
    /// Quasi-periodicity factor: theta(z) = factor * theta(z0).
    factor: Cplx,
}

fn lattice_reduce(z: &[Cplx], rd: &RiemannData) -> Reduced {
    let g = rd.genus();
    assert_eq!(z.len(), g, "theta argument has wrong dimension");
    let ginv = real_inverse(&rd.im_omega());

    // b = round((Im Omega)^-1 Im z), then strip the Omega.b part.
    let mut bint = vec![0.0; g];
    for i in 0..g {
        let mut y = 0.0;
        for j in 0..g {
            y += ginv[i][j] * z[j].im;
        }
        bint[i] = y.round();
    }
    let mut z1 = z.to_vec();
    for (i, z1i) in z1.iter_mut().enumerate() {
        for j in 0..g {
            *z1i -= rd.omega[i][j] * bint[j];
        }
    }
    // a = round(Re z1).
    let mut z0 = z1.clone();
    for z0i in z0.iter_mut() {
        *z0i -= z0i.re.round();
    }

    // theta(z0 + a + Omega b) = exp(-pi i b'Omega b - 2 pi i b'z0) theta(z0).
    let mut phase = Cplx::new(0.0, 0.0);
    for i in 0..g {
        phase -= Cplx::new(0.0, 2.0 * PI) * bint[i] * z0[i];
        for j in 0..g {
            phase -= Cplx::new(0.0, PI) * bint[i] * rd.omega[i][j] * bint[j];
        }
    }
    Reduced {
        z0,
        factor: phase.exp(),
    }
}

/// Euclidean norm of the cell-reduced argument; near zero exactly when
/// `z` lies on the period lattice.
pub fn lattice_distance(z: &[Cplx], rd: &RiemannData) -> f64 {
    let red = lattice_reduce(z, rd);
    red.z0.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

// ---- the series ----

fn box_sum(z0: &[Cplx], rd: &RiemannData, n0: i64) -> Cplx {
    let g = rd.genus();
    let mut idx = vec![-n0; g];
    let mut total = Cplx::new(0.0, 0.0);
    loop {
        let mut arg = Cplx::new(0.0, 0.0);
        for i in 0..g {
            let ni = idx[i] as f64;
            arg += Cplx::new(0.0, 2.0 * PI) * ni * z0[i];
            for j in 0..g {
                arg += Cplx::new(0.0, PI) * ni * rd.omega[i][j] * idx[j] as f64;
            }
        }
        total += arg.exp();

        // Odometer over the box, last coordinate fastest.
        let mut k = g;
        loop {
            if k == 0 {
                return total;
            }
            k -= 1;
            if idx[k] < n0 {
                idx[k] += 1;
                break;
            }
            idx[k] = -n0;
        }
    }
}

/// Riemann theta at `z`, accurate to `tp.eps` relative to the scale of
/// the quasi-periodicity factor.
pub fn riemann_theta(z: &[Cplx], rd: &RiemannData, tp: &ThetaParams) -> Cplx {
    let red = lattice_reduce(z, rd);
    red.factor * box_sum(&red.z0, rd, tp.n0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Period data with Omega = i * Identity; only the fields theta
    /// reads are populated.
    fn identity_data(g: usize) -> RiemannData {
        let omega: Vec<Vec<Cplx>> = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| {
                        if i == j {
                            Cplx::new(0.0, 1.0)
                        } else {
                            Cplx::new(0.0, 0.0)
                        }
                    })
                    .collect()
            })
            .collect();
        RiemannData {
            branch_points: vec![],
            a: vec![],
            b: vec![],
            omega: omega.clone(),
            norm: vec![],
            quad_points: 0,
        }
    }

    /// One-dimensional theta3(0, e^{-pi}) summed directly.
    fn theta3_axis() -> f64 {
        let mut s = 1.0;
        for n in 1..40 {
            s += 2.0 * (-PI * (n * n) as f64).exp();
        }
        s
    }

    #[test]
    fn identity_matrix_value_factors() {
        let rd = identity_data(2);
        let tp = ThetaParams::for_data(&rd, 1e-12).unwrap();
        let v = riemann_theta(&[Cplx::new(0.0, 0.0), Cplx::new(0.0, 0.0)], &rd, &tp);
        let expect = theta3_axis() * theta3_axis();
        assert!((v.re - expect).abs() < 1e-9, "got {v}, want {expect}");
        assert!(v.im.abs() < 1e-12);
    }

    #[test]
    fn integer_shift_is_exact() {
        let rd = identity_data(2);
        let tp = ThetaParams::for_data(&rd, 1e-12).unwrap();
        let z = [Cplx::new(0.17, 0.04), Cplx::new(-0.31, 0.11)];
        let zs = [z[0] + 3.0, z[1] - 2.0];
        let a = riemann_theta(&z, &rd, &tp);
        let b = riemann_theta(&zs, &rd, &tp);
        assert!((a - b).norm() < 10.0 * tp.eps, "shift changed theta: {a} vs {b}");
    }

    #[test]
    fn theta_is_even() {
        let rd = identity_data(2);
        let tp = ThetaParams::for_data(&rd, 1e-12).unwrap();
        let z = [Cplx::new(0.23, -0.06), Cplx::new(0.41, 0.09)];
        let zn = [-z[0], -z[1]];
        let a = riemann_theta(&z, &rd, &tp);
        let b = riemann_theta(&zn, &rd, &tp);
        assert!((a - b).norm() < 10.0 * tp.eps);
    }

    #[test]
    fn quasi_periodicity_in_omega_directions() {
        let rd = identity_data(2);
        let tp = ThetaParams::for_data(&rd, 1e-12).unwrap();
        let z = [Cplx::new(0.12, 0.33), Cplx::new(-0.27, -0.18)];
        for (m1, m2) in [(1i64, 0i64), (0, 1), (2, -1), (-1, 2)] {
            let zs = [
                z[0] + rd.omega[0][0] * m1 as f64 + rd.omega[0][1] * m2 as f64,
                z[1] + rd.omega[1][0] * m1 as f64 + rd.omega[1][1] * m2 as f64,
            ];
            // exp(-pi i m'Omega m - 2 pi i m'z) theta(z).
            let mut phase = Cplx::new(0.0, 0.0);
            let mv = [m1 as f64, m2 as f64];
            for i in 0..2 {
                phase -= Cplx::new(0.0, 2.0 * PI) * mv[i] * z[i];
                for j in 0..2 {
                    phase -= Cplx::new(0.0, PI) * mv[i] * rd.omega[i][j] * mv[j];
                }
            }
            let lhs = riemann_theta(&zs, &rd, &tp);
            let rhs = phase.exp() * riemann_theta(&z, &rd, &tp);
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            assert!(
                (lhs - rhs).norm() < 10.0 * tp.eps * scale,
                "quasi-periodicity violated for m = ({m1}, {m2})"
            );
        }
    }

    #[test]
    fn halving_eps_is_consistent() {
        let rd = identity_data(2);
        let coarse = ThetaParams::for_data(&rd, 1e-8).unwrap();
        let fine = ThetaParams::for_data(&rd, 1e-14).unwrap();
        let z = [Cplx::new(0.05, 0.21), Cplx::new(0.38, -0.02)];
        let a = riemann_theta(&z, &rd, &coarse);
        let b = riemann_theta(&z, &rd, &fine);
        assert!((a - b).norm() < 1e-8);
        assert!(coarse.n0 <= fine.n0);
    }

    #[test]
    fn lattice_distance_flags_lattice_points() {
        let rd = identity_data(2);
        let on = [
            Cplx::new(2.0, 0.0) + rd.omega[0][0] * 3.0,
            Cplx::new(-1.0, 0.0) + rd.omega[1][1] * -2.0,
        ];
        assert!(lattice_distance(&on, &rd) < 1e-12);
        let off = [Cplx::new(0.4, 0.1), Cplx::new(0.0, 0.0)];
        assert!(lattice_distance(&off, &rd) > 0.3);
    }
}
