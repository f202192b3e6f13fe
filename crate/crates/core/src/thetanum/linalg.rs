//! Dense linear algebra for the small (g ≤ 4 or so) matrices the
//! numeric layer needs: complex Gauss-Jordan inversion and Jacobi
//! eigenvalues of real symmetric matrices.

use super::Cplx;

pub fn cidentity(n: usize) -> Vec<Vec<Cplx>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Cplx::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect()
}

/// Gauss-Jordan inverse with partial pivoting; `None` on (numerical)
/// singularity.
pub fn cinv(m: &[Vec<Cplx>]) -> Option<Vec<Vec<Cplx>>> {
    let n = m.len();
    let mut a: Vec<Vec<Cplx>> = m.to_vec();
    let mut inv = cidentity(n);
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| {
            a[i][col]
                .norm_sqr()
                .partial_cmp(&a[j][col].norm_sqr())
                .unwrap()
        })?;
        if a[piv][col].norm_sqr() < 1e-28 {
            return None;
        }
        a.swap(col, piv);
        inv.swap(col, piv);
        let d = a[col][col];
        for j in 0..n {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = a[i][col];
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..n {
                let (ac, ic) = (a[col][j], inv[col][j]);
                a[i][j] -= f * ac;
                inv[i][j] -= f * ic;
            }
        }
    }
    Some(inv)
}

pub fn cmul(a: &[Vec<Cplx>], b: &[Vec<Cplx>]) -> Vec<Vec<Cplx>> {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                .collect()
        })
        .collect()
}

pub fn cmatvec(a: &[Vec<Cplx>], v: &[Cplx]) -> Vec<Cplx> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(&m, &x)| m * x).sum())
        .collect()
}

pub fn ctranspose(a: &[Vec<Cplx>]) -> Vec<Vec<Cplx>> {
    let (n, m) = (a.len(), a[0].len());
    (0..m).map(|j| (0..n).map(|i| a[i][j]).collect()).collect()
}

pub fn max_abs_diff(a: &[Vec<Cplx>], b: &[Vec<Cplx>]) -> f64 {
    let mut worst = 0.0f64;
    for (ra, rb) in a.iter().zip(b) {
        for (&x, &y) in ra.iter().zip(rb) {
            worst = worst.max((x - y).norm());
        }
    }
    worst
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations,
/// returned ascending.
pub fn jacobi_sym_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let scale: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .fold(0.0f64, |acc, &x| acc.max(x.abs()))
        .max(1e-300);
    for _ in 0..120 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += a[p][q] * a[p][q];
            }
        }
        if off.sqrt() < 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let phi = 0.5 * (2.0 * a[p][q]).atan2(a[q][q] - a[p][p]);
                let (c, s) = (phi.cos(), phi.sin());
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
    eig
}
