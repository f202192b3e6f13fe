//! Period matrices of the odd hyperelliptic model.
//!
//! The homology basis is built deterministically: the branch points
//! are sorted by real part (ties by imaginary part), and the loop
//! γ_j encircles the consecutive pair (e_j, e_{j+1}).  Each loop is
//! realized twice:
//!
//!   - as a Gauss-Chebyshev integral along the straight segment
//!     between the pair, which absorbs the inverse-square-root
//!     endpoint singularities and carries the accuracy;
//!   - as a thin ellipse polyline with a continuously tracked sheet,
//!     which fixes the orientation and supplies the data for the
//!     numeric intersection pairing.
//!
//! An exact integer symplectic reduction of the intersection matrix
//! then produces a canonical basis, and Omega = A^{-1}B.  Symmetry
//! and positive-definiteness of Im Omega are verified, not assumed.

use serde::{Deserialize, Serialize};

use super::linalg::{cinv, cmul, ctranspose, jacobi_sym_eigenvalues, max_abs_diff};
use super::roots::poly_roots;
use super::{cross, fcoeffs, peval, sqrt_near, Cplx, NumError};
use crate::curve::HyperellipticCurve;

const PI: f64 = std::f64::consts::PI;

/// Numeric invariants of the curve: branch points, unnormalized
/// period matrices over the canonical basis, the normalized Riemann
/// matrix, and the basis change to normalized differentials.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RiemannData {
    pub branch_points: Vec<Cplx>,
    /// a[i][j] = integral of x^i dx/y over the j-th a-cycle.
    pub a: Vec<Vec<Cplx>>,
    pub b: Vec<Vec<Cplx>>,
    pub omega: Vec<Vec<Cplx>>,
    /// Inverse of `a`; maps unnormalized integral vectors to the
    /// normalized coordinates the theta function lives in.
    pub norm: Vec<Vec<Cplx>>,
    pub quad_points: usize,
}

impl RiemannData {
    pub fn genus(&self) -> usize {
        self.omega.len()
    }

    pub fn im_omega(&self) -> Vec<Vec<f64>> {
        self.omega
            .iter()
            .map(|r| r.iter().map(|z| z.im).collect())
            .collect()
    }
}

// ---- sheet-tracked loops ----

struct TrackedLoop {
    xs: Vec<Cplx>,
    ys: Vec<Cplx>,
}

fn scale_of(bps: &[Cplx]) -> f64 {
    bps.iter().fold(1.0f64, |acc, z| acc.max(z.norm()))
}

/// Thin ellipse around the segment [e_j, e_{j+1}], shrunk until every
/// other branch point is well outside, sampled and sheet-tracked.
fn ellipse_loop(
    fc: &[f64],
    bps: &[Cplx],
    j: usize,
    scale: f64,
) -> Result<TrackedLoop, NumError> {
    let (e0, e1) = (bps[j], bps[j + 1]);
    let mid = (e0 + e1) / 2.0;
    let hd = (e1 - e0) / 2.0;
    let (mut lam, mut mu) = (0.45f64, 0.30f64);
    loop {
        let clear = bps.iter().enumerate().all(|(m, &e)| {
            if m == j || m == j + 1 {
                return true;
            }
            let w = (e - mid) / hd;
            let t = (w.re / (1.0 + mu)).powi(2) + (w.im / lam).powi(2);
            t >= 1.69
        });
        if clear {
            break;
        }
        lam *= 0.55;
        mu *= 0.55;
        if lam < 5e-4 {
            return Err(NumError::BranchPointsTooClose {
                min_sep: lam * hd.norm(),
            });
        }
    }
    let floor = 1e-12 * (1.0 + scale).powi(fc.len() as i32 - 1);
    let mut n = 512usize;
    'outer: loop {
        let mut xs = Vec::with_capacity(n);
        let mut ys: Vec<Cplx> = Vec::with_capacity(n);
        for t in 0..n {
            let phi = 2.0 * PI * t as f64 / n as f64;
            let x = mid + hd * Cplx::new((1.0 + mu) * phi.cos(), lam * phi.sin());
            let fx = peval(fc, x);
            if fx.norm() < floor {
                return Err(NumError::BranchPointsTooClose {
                    min_sep: fx.norm(),
                });
            }
            let y = match ys.last() {
                None => fx.sqrt(),
                Some(&prev) => {
                    let q = sqrt_near(fx, prev);
                    if (q - prev).norm() > 0.75 * (q.norm() + prev.norm()) {
                        // sheet matching ambiguous: refine
                        if n >= 16384 {
                            return Err(NumError::NotConverged(
                                "sheet tracking on a homology loop kept slipping".into(),
                            ));
                        }
                        n *= 2;
                        continue 'outer;
                    }
                    q
                }
            };
            xs.push(x);
            ys.push(y);
        }
        // closing the loop must land on the starting sheet: the loop
        // encircles exactly two branch points
        let back = sqrt_near(peval(fc, xs[0]), ys[n - 1]);
        if (back - ys[0]).norm() > (back + ys[0]).norm() {
            return Err(NumError::NotConverged(
                "homology loop did not close on its starting sheet".into(),
            ));
        }
        return Ok(TrackedLoop { xs, ys });
    }
}

/// Trapezoid values of the g loop integrals of x^k dx/y along the
/// tracked polyline; spectral accuracy is not needed here, the result
/// only orients the Chebyshev value.
fn loop_periods(lp: &TrackedLoop, g: usize) -> Vec<Cplx> {
    let n = lp.xs.len();
    let mut out = vec![Cplx::new(0.0, 0.0); g];
    for t in 0..n {
        let u = (t + 1) % n;
        let dx = lp.xs[u] - lp.xs[t];
        for (k, o) in out.iter_mut().enumerate() {
            let ft = lp.xs[t].powu(k as u32) / lp.ys[t];
            let fu = lp.xs[u].powu(k as u32) / lp.ys[u];
            *o += dx * (ft + fu) / 2.0;
        }
    }
    out
}

/// One-way Gauss-Chebyshev integral of x^k dx/y, k < g, along the
/// straight segment from e_j to e_{j+1}.  The lift is anchored at the
/// endpoint s = 1 so different node counts share a branch.
fn chebyshev_segment_once(
    fc: &[f64],
    bps: &[Cplx],
    j: usize,
    n: usize,
    g: usize,
) -> Result<Vec<Cplx>, NumError> {
    let (e0, e1) = (bps[j], bps[j + 1]);
    let mid = (e0 + e1) / 2.0;
    let hd = (e1 - e0) / 2.0;
    let lead = fc[fc.len() - 1];
    let rest = |x: Cplx| -> Cplx {
        let mut p = Cplx::new(-lead, 0.0);
        for (m, &e) in bps.iter().enumerate() {
            if m != j && m != j + 1 {
                p *= x - e;
            }
        }
        p
    };
    let scale = scale_of(bps);
    let floor = 1e-14 * (1.0 + scale).powi(bps.len() as i32 - 2);
    let mut h_prev = rest(e1).sqrt(); // branch anchor at s = 1
    let mut out = vec![Cplx::new(0.0, 0.0); g];
    for i in 1..=n {
        let s = ((2 * i - 1) as f64 * PI / (2.0 * n as f64)).cos();
        let x = mid + hd * s;
        let p = rest(x);
        if p.norm() < floor {
            return Err(NumError::BranchPointsTooClose { min_sep: p.norm() });
        }
        let h = sqrt_near(p, h_prev);
        h_prev = h;
        let mut xp = Cplx::new(1.0, 0.0);
        for o in out.iter_mut() {
            *o += xp / h;
            xp *= x;
        }
    }
    for o in out.iter_mut() {
        *o *= PI / n as f64;
    }
    Ok(out)
}

fn chebyshev_segment(
    fc: &[f64],
    bps: &[Cplx],
    j: usize,
    quad_points: usize,
    g: usize,
) -> Result<Vec<Cplx>, NumError> {
    let mut n = quad_points;
    let mut cur = chebyshev_segment_once(fc, bps, j, n, g)?;
    for _ in 0..6 {
        let next = chebyshev_segment_once(fc, bps, j, 2 * n, g)?;
        let mag = next.iter().fold(1e-30f64, |a, z| a.max(z.norm()));
        let diff = cur
            .iter()
            .zip(&next)
            .fold(0.0f64, |a, (x, y)| a.max((x - y).norm()));
        if diff < 1e-11 * mag {
            return Ok(next);
        }
        cur = next;
        n *= 2;
    }
    Err(NumError::NotConverged(
        "elementary period quadrature kept moving under refinement".into(),
    ))
}

// ---- numeric intersection pairing ----

/// Signed count of same-sheet crossings of two tracked loops; this is
/// the homology intersection number of the lifts the loops represent.
fn intersection_number(
    fc: &[f64],
    l1: &TrackedLoop,
    l2: &TrackedLoop,
    scale: f64,
) -> Result<i64, NumError> {
    let floor = 1e-10 * (1.0 + scale).powi(fc.len() as i32 - 1);
    let (n1, n2) = (l1.xs.len(), l2.xs.len());
    let mut total = 0i64;
    for t in 0..n1 {
        let p = l1.xs[t];
        let r = l1.xs[(t + 1) % n1] - p;
        for u in 0..n2 {
            let q = l2.xs[u];
            let s = l2.xs[(u + 1) % n2] - q;
            let den = cross(r, s);
            if den.abs() < 1e-14 * r.norm() * s.norm() {
                continue;
            }
            let tp = cross(q - p, s) / den;
            let up = cross(q - p, r) / den;
            if !(0.0..1.0).contains(&tp) || !(0.0..1.0).contains(&up) {
                continue;
            }
            let xstar = p + r * tp;
            let fx = peval(fc, xstar);
            if fx.norm() < floor {
                return Err(NumError::BranchPointsTooClose { min_sep: fx.norm() });
            }
            let y1 = sqrt_near(fx, l1.ys[t]);
            let y2 = sqrt_near(fx, l2.ys[u]);
            if (y1 - y2).norm() < (y1 + y2).norm() {
                total += if den > 0.0 { 1 } else { -1 };
            }
        }
    }
    Ok(total)
}

// ---- integer symplectic reduction ----

fn det_i128(m: &[Vec<i64>]) -> i128 {
    // fraction-free Bareiss; sizes are tiny
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn div_round(a: i64, b: i64) -> i64 {
    let q = a.div_euclid(b);
    let r = a - q * b;
    if 2 * r.abs() > b.abs() {
        q + b.signum() * r.signum()
    } else {
        q
    }
}

/// Change of basis `u` with uᵀ m u = [[0, I], [-I, 0]] for an
/// antisymmetric unimodular integer matrix, by paired Euclidean
/// congruence steps.
pub(crate) fn symplectic_basis(m: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let n = m.len();
    assert!(n % 2 == 0);
    let g = n / 2;
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    // basis_i += q * basis_t, applied as a congruence
    let addmul = |a: &mut Vec<Vec<i64>>, u: &mut Vec<Vec<i64>>, i: usize, t: usize, q: i64| {
        for r in 0..n {
            a[r][i] += q * a[r][t];
        }
        for c in 0..n {
            let v = a[t][c];
            a[i][c] += q * v;
        }
        for r in 0..n {
            u[r][i] += q * u[r][t];
        }
    };
    let mut assigned = vec![false; n];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for _ in 0..g {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in 0..n {
                for s in r + 1..n {
                    if assigned[r] || assigned[s] || a[r][s] == 0 {
                        continue;
                    }
                    if best.is_none_or(|(br, bs)| a[r][s].abs() < a[br][bs].abs()) {
                        best = Some((r, s));
                    }
                }
            }
            let (mut r, mut s) = best?;
            let mut clean = true;
            for i in 0..n {
                if assigned[i] || i == r || i == s {
                    continue;
                }
                if a[r][i] != 0 {
                    let q = -div_round(a[r][i], a[r][s]);
                    addmul(&mut a, &mut u, i, s, q);
                    if a[r][i] != 0 {
                        clean = false;
                    }
                }
                if a[s][i] != 0 {
                    let q = -div_round(a[s][i], a[s][r]);
                    addmul(&mut a, &mut u, i, r, q);
                    if a[s][i] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                if a[r][s].abs() != 1 {
                    return None;
                }
                if a[r][s] == -1 {
                    std::mem::swap(&mut r, &mut s);
                }
                assigned[r] = true;
                assigned[s] = true;
                pairs.push((r, s));
                break;
            }
        }
    }
    // reorder columns to a_1..a_g, b_1..b_g
    let mut order = Vec::with_capacity(n);
    order.extend(pairs.iter().map(|&(r, _)| r));
    order.extend(pairs.iter().map(|&(_, s)| s));
    let reord: Vec<Vec<i64>> = (0..n)
        .map(|r| order.iter().map(|&c| u[r][c]).collect())
        .collect();
    Some(reord)
}

fn check_symplectic(m: &[Vec<i64>], u: &[Vec<i64>]) -> bool {
    let n = m.len();
    let g = n / 2;
    for i in 0..n {
        for j in 0..n {
            let mut v = 0i64;
            for r in 0..n {
                for c in 0..n {
                    v += u[r][i] * m[r][c] * u[c][j];
                }
            }
            let expect = if j == i + g {
                1
            } else if i == j + g {
                -1
            } else {
                0
            };
            if v != expect {
                return false;
            }
        }
    }
    true
}

// ---- the period matrix ----

pub fn period_matrix(
    c: &HyperellipticCurve,
    quad_points: usize,
) -> Result<RiemannData, NumError> {
    assert!(quad_points >= 16, "quadrature needs at least 16 nodes");
    let g = c.genus();
    let fc = fcoeffs(c);
    let bps = poly_roots(&fc)?;
    let scale = scale_of(&bps);
    let mut min_sep = f64::INFINITY;
    for i in 0..bps.len() {
        for j in i + 1..bps.len() {
            min_sep = min_sep.min((bps[i] - bps[j]).norm());
        }
    }
    if min_sep < 1e-8 * scale {
        return Err(NumError::BranchPointsTooClose { min_sep });
    }

    // elementary loops around consecutive sorted pairs
    let nloops = 2 * g;
    let mut loops = Vec::with_capacity(nloops);
    let mut periods: Vec<Vec<Cplx>> = Vec::with_capacity(nloops);
    for j in 0..nloops {
        let lp = ellipse_loop(&fc, &bps, j, scale)?;
        let rough = loop_periods(&lp, g);
        let seg = chebyshev_segment(&fc, &bps, j, quad_points, g)?;
        // the loop integral is twice the segment integral up to the
        // lift sign; orient the accurate value by the rough one
        let two_seg: Vec<Cplx> = seg.iter().map(|&z| 2.0 * z).collect();
        let mag = rough.iter().fold(1e-30f64, |a, z| a.max(z.norm()));
        let dplus = rough
            .iter()
            .zip(&two_seg)
            .fold(0.0f64, |a, (x, y)| a.max((x - y).norm()));
        let dminus = rough
            .iter()
            .zip(&two_seg)
            .fold(0.0f64, |a, (x, y)| a.max((x + y).norm()));
        let (sign, best, other) = if dplus <= dminus {
            (1.0, dplus, dminus)
        } else {
            (-1.0, dminus, dplus)
        };
        if best > 1e-3 * mag || other < 0.3 * mag {
            return Err(NumError::NotConverged(
                "segment and loop quadratures disagree beyond a sign".into(),
            ));
        }
        periods.push(two_seg.iter().map(|&z| sign * z).collect());
        loops.push(lp);
    }

    // intersection pairing and canonical basis
    let mut inter = vec![vec![0i64; nloops]; nloops];
    for i in 0..nloops {
        for j in i + 1..nloops {
            let v = intersection_number(&fc, &loops[i], &loops[j], scale)?;
            inter[i][j] = v;
            inter[j][i] = -v;
        }
    }
    if det_i128(&inter).abs() != 1 {
        return Err(NumError::NotConverged(
            "elementary loops did not give a unimodular pairing".into(),
        ));
    }
    let u = symplectic_basis(&inter).ok_or_else(|| {
        NumError::NotConverged("symplectic reduction of the pairing failed".into())
    })?;
    assert!(check_symplectic(&inter, &u), "reduction postcondition");

    // periods of the canonical cycles: row i of uᵀ·V
    let canon: Vec<Vec<Cplx>> = (0..nloops)
        .map(|i| {
            (0..g)
                .map(|k| {
                    (0..nloops)
                        .map(|j| periods[j][k] * u[j][i] as f64)
                        .sum()
                })
                .collect()
        })
        .collect();
    let amat: Vec<Vec<Cplx>> = (0..g).map(|i| (0..g).map(|j| canon[j][i]).collect()).collect();
    let mut bmat: Vec<Vec<Cplx>> =
        (0..g).map(|i| (0..g).map(|j| canon[g + j][i]).collect()).collect();
    let norm = cinv(&amat)
        .ok_or_else(|| NumError::NotConverged("a-period matrix is singular".into()))?;
    let mut omega = cmul(&norm, &bmat);

    let sym_err = max_abs_diff(&omega, &ctranspose(&omega));
    let omega_mag = omega
        .iter()
        .flat_map(|r| r.iter())
        .fold(1.0f64, |a, z| a.max(z.norm()));
    if sym_err > 1e-8 * omega_mag {
        return Err(NumError::NotConverged(format!(
            "Riemann matrix asymmetry {sym_err:e} exceeds tolerance"
        )));
    }
    let tomega = ctranspose(&omega);
    for (i, row) in omega.iter_mut().enumerate() {
        for (j, z) in row.iter_mut().enumerate() {
            *z = (*z + tomega[j][i]) / 2.0;
        }
    }

    // the intersection orientation convention may be globally
    // reversed; flipping every b-cycle repairs it
    let eig = jacobi_sym_eigenvalues(
        &omega
            .iter()
            .map(|r| r.iter().map(|z| z.im).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    if eig[0] <= 0.0 {
        if *eig.last().unwrap() >= 0.0 {
            return Err(NumError::NotConverged(
                "imaginary part of the Riemann matrix is indefinite".into(),
            ));
        }
        for row in bmat.iter_mut() {
            for z in row.iter_mut() {
                *z = -*z;
            }
        }
        for row in omega.iter_mut() {
            for z in row.iter_mut() {
                *z = -*z;
            }
        }
    }
    let eig = jacobi_sym_eigenvalues(
        &omega
            .iter()
            .map(|r| r.iter().map(|z| z.im).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    );
    if eig[0] <= 0.0 {
        return Err(NumError::NotConverged(
            "imaginary part of the Riemann matrix is not positive definite".into(),
        ));
    }

    Ok(RiemannData {
        branch_points: bps,
        a: amat,
        b: bmat,
        omega,
        norm,
        quad_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::QPoly;
    use proptest::prelude::*;

    fn curve(cs: &[i64]) -> HyperellipticCurve {
        HyperellipticCurve::new(QPoly::of_ints(cs)).unwrap()
    }

    // adaptive Simpson on a smooth function, for the independent
    // genus-1 oracle
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, depth: u32) -> f64 {
        let m = (a + b) / 2.0;
        let (lm, rm) = ((a + m) / 2.0, (m + b) / 2.0);
        let (flm, frm) = (f(lm), f(rm));
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() < 1e-13 {
            left + right
        } else {
            simpson(f, a, m, fa, flm, fm, depth - 1) + simpson(f, m, b, fm, frm, fb, depth - 1)
        }
    }

    #[test]
    fn lemniscatic_ratio() {
        // y^2 = x^3 - x: the period ratio is i.  Oracle: both real
        // half-periods by adaptive Simpson after x = sin^2 damping of
        // the endpoint singularities.
        let rd = period_matrix(&curve(&[0, -1, 0, 1]), 64).unwrap();
        // integral of dx/sqrt(x - x^3) on (0,1): x = sin^2 u turns it
        // into the smooth integrand 2/sqrt(1 + sin^2 u) on (0, pi/2)
        let f = |u: f64| 2.0 / (1.0 + u.sin().powi(2)).sqrt();
        let (a, b) = (0.0, std::f64::consts::FRAC_PI_2);
        let m = (a + b) / 2.0;
        let half = simpson(&f, a, b, f(a), f(m), f(b), 28);
        assert!(half > 2.0 && half < 3.0, "oracle integral sanity: {half}");
        // both canonical periods have magnitude 2*half and the
        // lattice is square, so Omega = i regardless of which
        // half-period lands on which cycle
        assert!((rd.a[0][0].norm() - 2.0 * half).abs() < 1e-6 * half);
        assert!((rd.b[0][0].norm() - 2.0 * half).abs() < 1e-6 * half);
        let om = rd.omega[0][0];
        assert!((om - Cplx::new(0.0, 1.0)).norm() < 1e-6, "omega = {om}");
    }

    #[test]
    fn reference_genus2_invariants() {
        let rd = period_matrix(&curve(&[-1, 0, 0, 0, 0, 1]), 256).unwrap();
        assert_eq!(rd.genus(), 2);
        let sym = max_abs_diff(&rd.omega, &ctranspose(&rd.omega));
        assert!(sym < 1e-8, "asymmetry {sym:e}");
        let eig = jacobi_sym_eigenvalues(&rd.im_omega());
        assert!(eig[0] > 0.0);
    }

    #[test]
    fn quadrature_doubling_is_stable() {
        let rd1 = period_matrix(&curve(&[-1, 0, 0, 0, 0, 1]), 256).unwrap();
        let rd2 = period_matrix(&curve(&[-1, 0, 0, 0, 0, 1]), 512).unwrap();
        assert!(max_abs_diff(&rd1.omega, &rd2.omega) < 1e-9);
    }

    #[test]
    fn complex_branch_configuration() {
        // x^5 - x + 1 has one real root and two conjugate pairs
        let rd = period_matrix(&curve(&[1, -1, 0, 0, 0, 1]), 256).unwrap();
        let sym = max_abs_diff(&rd.omega, &ctranspose(&rd.omega));
        assert!(sym < 1e-8, "asymmetry {sym:e}");
        let eig = jacobi_sym_eigenvalues(&rd.im_omega());
        assert!(eig[0] > 0.0);
    }

    #[test]
    fn symplectic_reduction_on_tridiagonal() {
        // the classical real-branch pairing
        let m = vec![
            vec![0, 1, 0, 0],
            vec![-1, 0, 1, 0],
            vec![0, -1, 0, 1],
            vec![0, 0, -1, 0],
        ];
        let u = symplectic_basis(&m).unwrap();
        assert!(check_symplectic(&m, &u));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn symplectic_reduction_random_congruence(seed in 0u64..1u64 << 48, gsize in 1usize..=3) {
            // build M = Vᵀ J0 V for a random unimodular V, reduce, verify
            let n = 2 * gsize;
            let mut j0 = vec![vec![0i64; n]; n];
            for i in 0..gsize {
                j0[i][gsize + i] = 1;
                j0[gsize + i][i] = -1;
            }
            let mut v: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
            let mut state = seed | 1;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                state
            };
            for _ in 0..12 {
                let i = (next() % n as u64) as usize;
                let j = (next() % n as u64) as usize;
                if i == j { continue; }
                let q = (next() % 5) as i64 - 2;
                for col in 0..n {
                    let add = q * v[j][col];
                    v[i][col] += add;
                }
            }
            let mut m = vec![vec![0i64; n]; n];
            for r in 0..n {
                for c in 0..n {
                    let mut acc = 0;
                    for s in 0..n {
                        for t in 0..n {
                            acc += v[s][r] * j0[s][t] * v[t][c];
                        }
                    }
                    m[r][c] = acc;
                }
            }
            prop_assert_eq!(det_i128(&m).abs(), 1);
            let u = symplectic_basis(&m).unwrap();
            prop_assert!(check_symplectic(&m, &u));
        }
    }
}
