//! Simultaneous root finding for the defining polynomial, used to
//! place the branch points.

use super::{peval, Cplx, NumError};

/// All complex roots of a real-coefficient polynomial by
/// Durand-Kerner iteration with a Newton polish, sorted by real part
/// (ties by imaginary part).
pub fn poly_roots(coeffs: &[f64]) -> Result<Vec<Cplx>, NumError> {
    let deg = coeffs.len() - 1;
    assert!(deg >= 1 && coeffs[deg] != 0.0);
    let monic: Vec<f64> = coeffs.iter().map(|c| c / coeffs[deg]).collect();
    let bound = 1.0
        + monic[..deg]
            .iter()
            .fold(0.0f64, |acc, &c| acc.max(c.abs()));
    // deterministic spread avoiding real-axis symmetry traps
    let mut z: Vec<Cplx> = (0..deg)
        .map(|j| {
            let ang = 2.0 * std::f64::consts::PI * j as f64 / deg as f64 + 0.55;
            0.7 * bound * Cplx::new(ang.cos(), ang.sin())
        })
        .collect();
    let tol = 1e-14 * bound;
    let mut converged = false;
    for _ in 0..500 {
        let mut worst = 0.0f64;
        for j in 0..deg {
            let mut den = Cplx::new(1.0, 0.0);
            for k in 0..deg {
                if k != j {
                    den *= z[j] - z[k];
                }
            }
            if den.norm_sqr() == 0.0 {
                den = Cplx::new(1e-30, 0.0);
            }
            let step = peval(&monic, z[j]) / den;
            z[j] -= step;
            worst = worst.max(step.norm());
        }
        if worst < tol {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(NumError::NotConverged(
            "root iteration for the branch points stalled".into(),
        ));
    }
    let dmonic: Vec<f64> = monic[1..]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (i + 1) as f64)
        .collect();
    for r in z.iter_mut() {
        for _ in 0..3 {
            let dp = peval(&dmonic, *r);
            if dp.norm_sqr() > 1e-60 {
                *r -= peval(&monic, *r) / dp;
            }
        }
    }
    z.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic_roots_of_unity() {
        // x^5 - 1
        let r = poly_roots(&[-1.0, 0.0, 0.0, 0.0, 0.0, 1.0]).unwrap();
        assert_eq!(r.len(), 5);
        for z in &r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!(peval(&[-1.0, 0.0, 0.0, 0.0, 0.0, 1.0], *z).norm() < 1e-12);
        }
        assert!((r[4] - Cplx::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn real_cubic_sorted() {
        // x^3 - x: roots -1, 0, 1
        let r = poly_roots(&[0.0, -1.0, 0.0, 1.0]).unwrap();
        assert!((r[0] - Cplx::new(-1.0, 0.0)).norm() < 1e-12);
        assert!(r[1].norm() < 1e-12);
        assert!((r[2] - Cplx::new(1.0, 0.0)).norm() < 1e-12);
    }
}
