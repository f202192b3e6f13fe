//! The Abel-Jacobi map with basepoint at the point over infinity.
//!
//! Paths run from infinity radially in to a junction circle outside
//! all branch points, then along a straight segment to the target.
//! The square-root sheet is tracked continuously along the whole
//! chain, so the lift is a genuine path on the surface.  Near
//! infinity the substitution x = X/v² turns the unbounded leg into a
//! smooth integral on (0, 1]; the tracked quantity there is
//! w = y·v^{2g+1}, which stays bounded and nonvanishing.  A start at
//! a branch point uses x = x0 + τ²·d, which cancels the y ~ τ
//! vanishing exactly.

use super::linalg::cmatvec;
use super::periods::RiemannData;
use super::{fcoeffs, peval, sqrt_near, Cplx, NumError};
use crate::curve::{CurvePoint, HyperellipticCurve};
use crate::rrspace::Divisor;

// 16-point Gauss-Legendre nodes (ascending) and weights on [-1, 1]
const GL_NODES: [f64; 16] = [
    -0.9894009349916499,
    -0.9445750230732326,
    -0.8656312023878318,
    -0.7554044083550030,
    -0.6178762444026438,
    -0.4580167776572274,
    -0.2816035507792589,
    -0.0950125098376374,
    0.0950125098376374,
    0.2816035507792589,
    0.4580167776572274,
    0.6178762444026438,
    0.7554044083550030,
    0.8656312023878318,
    0.9445750230732326,
    0.9894009349916499,
];
const GL_WEIGHTS: [f64; 16] = [
    0.0271524594117541,
    0.0622535239386479,
    0.0951585116824928,
    0.1246289712555339,
    0.1495959888165767,
    0.1691565193950025,
    0.1826034150449236,
    0.1894506104550685,
    0.1894506104550685,
    0.1826034150449236,
    0.1691565193950025,
    0.1495959888165767,
    0.1246289712555339,
    0.0951585116824928,
    0.0622535239386479,
    0.0271524594117541,
];

/// Vector integrand with a tracked sheet state: given the parameter
/// and the previous state, produce the integrand values and the new
/// state, or `None` when sheet matching is ambiguous.
trait Leg {
    fn eval(&self, t: f64, state: Cplx) -> Option<(Vec<Cplx>, Cplx)>;
}

fn gl_pass<L: Leg>(leg: &L, a: f64, b: f64, state: Cplx, g: usize) -> Option<(Vec<Cplx>, Cplx)> {
    let mid = (a + b) / 2.0;
    let half = (b - a) / 2.0;
    let mut acc = vec![Cplx::new(0.0, 0.0); g];
    let mut st = state;
    for (node, w) in GL_NODES.iter().zip(GL_WEIGHTS.iter()) {
        let (vals, ns) = leg.eval(mid + half * node, st)?;
        st = ns;
        for (o, v) in acc.iter_mut().zip(vals) {
            *o += *w * half * v;
        }
    }
    Some((acc, st))
}

fn integrate_adaptive<L: Leg>(
    leg: &L,
    a: f64,
    b: f64,
    state: Cplx,
    g: usize,
    tol: f64,
    depth: u32,
) -> Result<(Vec<Cplx>, Cplx), NumError> {
    let mid = (a + b) / 2.0;
    let whole = gl_pass(leg, a, b, state, g);
    let split = gl_pass(leg, a, mid, state, g)
        .and_then(|(lv, sm)| gl_pass(leg, mid, b, sm, g).map(|(rv, sb)| (lv, rv, sb)));
    if let (Some((wv, _)), Some((lv, rv, sb))) = (&whole, &split) {
        let err = wv
            .iter()
            .zip(lv.iter().zip(rv.iter()))
            .fold(0.0f64, |acc, (w, (l, r))| acc.max((w - (l + r)).norm()));
        if err < tol {
            let sum = lv.iter().zip(rv).map(|(l, r)| l + r).collect();
            return Ok((sum, *sb));
        }
    }
    if depth == 0 {
        return Err(NumError::PathNearBranchCut);
    }
    let (lv, sm) = integrate_adaptive(leg, a, mid, state, g, tol / 2.0, depth - 1)?;
    let (rv, sb) = integrate_adaptive(leg, mid, b, sm, g, tol / 2.0, depth - 1)?;
    Ok((lv.iter().zip(rv).map(|(l, r)| l + r).collect(), sb))
}

// ---- the three leg kinds ----

/// Straight segment, state = y.
struct StraightLeg<'a> {
    fc: &'a [f64],
    from: Cplx,
    to: Cplx,
}

impl Leg for StraightLeg<'_> {
    fn eval(&self, t: f64, state: Cplx) -> Option<(Vec<Cplx>, Cplx)> {
        let x = self.from + (self.to - self.from) * t;
        let y = sqrt_near(peval(self.fc, x), state);
        if (y - state).norm() > 0.75 * (y.norm() + state.norm()) {
            return None;
        }
        let g = (self.fc.len() - 2) / 2;
        let dx = self.to - self.from;
        let mut vals = Vec::with_capacity(g);
        let mut xp = Cplx::new(1.0, 0.0);
        for _ in 0..g {
            vals.push(xp * dx / y);
            xp *= x;
        }
        Some((vals, y))
    }
}

/// Start at a branch point x0: x = x0 + τ²·d, state = sqrt(f(x)/(x-x0)).
struct BranchLeg<'a> {
    f1: &'a [f64],
    x0: Cplx,
    dir: Cplx,
    sqrt_dir: Cplx,
}

impl Leg for BranchLeg<'_> {
    fn eval(&self, tau: f64, state: Cplx) -> Option<(Vec<Cplx>, Cplx)> {
        let x = self.x0 + self.dir * (tau * tau);
        let w = sqrt_near(peval(self.f1, x), state);
        if (w - state).norm() > 0.75 * (w.norm() + state.norm()) {
            return None;
        }
        let g = (self.f1.len() - 1) / 2;
        let mut vals = Vec::with_capacity(g);
        let mut xp = Cplx::new(1.0, 0.0);
        for _ in 0..g {
            vals.push(2.0 * self.sqrt_dir * xp / w);
            xp *= x;
        }
        Some((vals, w))
    }
}

/// Leg to infinity: x = X/v² with v = 1 - u, state = y·v^{2g+1},
/// evaluated through the reversed polynomial so nothing blows up.
struct TailLeg {
    rev: Vec<Cplx>, // rev[j] = fc[j]·X^j, so f(X/v²)·v^{4g+2} = Σ rev[j] v^{2(2g+1-j)}
    xj: Cplx,
    g: usize,
}

impl TailLeg {
    fn new(fc: &[f64], xj: Cplx, g: usize) -> Self {
        let mut rev = Vec::with_capacity(fc.len());
        let mut xp = Cplx::new(1.0, 0.0);
        for &c in fc {
            rev.push(c * xp);
            xp *= xj;
        }
        TailLeg { rev, xj, g }
    }
}

impl Leg for TailLeg {
    fn eval(&self, u: f64, state: Cplx) -> Option<(Vec<Cplx>, Cplx)> {
        let v = 1.0 - u;
        let deg = self.rev.len() - 1; // 2g+1
        let mut p = Cplx::new(0.0, 0.0);
        let v2 = v * v;
        // Σ rev[j]·v^{2(deg-j)}, Horner in v² with rev[0] highest
        for j in 0..=deg {
            p = p * v2 + self.rev[j];
        }
        let w = sqrt_near(p, state);
        if (w - state).norm() > 0.75 * (w.norm() + state.norm()) {
            return None;
        }
        let mut vals = Vec::with_capacity(self.g);
        let mut xp = self.xj; // X^{k+1}
        for k in 0..self.g {
            let e = 2 * (self.g - k) as i32 - 2;
            vals.push(-2.0 * xp * v.powi(e) / w);
            xp *= self.xj;
        }
        Some((vals, w))
    }
}

// ---- path routing ----

fn dist_point_segment(p: Cplx, a: Cplx, b: Cplx) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

fn route_junction(bps: &[Cplx], x0: Cplx, r0: f64, skip_x0: bool) -> Result<Cplx, NumError> {
    let base = if x0.norm() > 1e-9 { x0.arg() } else { 0.0 };
    let scale = bps.iter().fold(1.0f64, |a, z| a.max(z.norm()));
    for attempt in 0..16 {
        let ang = base + attempt as f64 * std::f64::consts::FRAC_PI_8;
        let xj = r0 * Cplx::new(ang.cos(), ang.sin());
        let clear = bps.iter().all(|&e| {
            if skip_x0 && (e - x0).norm() < 1e-9 * scale {
                return true;
            }
            dist_point_segment(e, x0, xj) > 0.02 * scale
        });
        if clear {
            return Ok(xj);
        }
    }
    Err(NumError::PathNearBranchCut)
}

// synthetic division of f by (x - x0); the remainder is discarded
// because x0 is a root
fn divide_out_root(fc: &[f64], x0: f64) -> Vec<f64> {
    let n = fc.len() - 1;
    let mut out = vec![0.0; n];
    let mut carry = fc[n];
    for k in (0..n).rev() {
        out[k] = carry;
        carry = fc[k] + x0 * carry;
    }
    out
}

/// Unnormalized Abel-Jacobi vector of a point given by complex
/// coordinates with y² = f(x); the lift through (x, y) is followed
/// exactly when y ≠ 0, and either lift is valid at a branch point.
pub(crate) fn aj_unnormalized(
    fc: &[f64],
    bps: &[Cplx],
    g: usize,
    x0: Cplx,
    y0: Cplx,
) -> Result<Vec<Cplx>, NumError> {
    let scale = bps.iter().fold(1.0f64, |a, z| a.max(z.norm()));
    let r0 = (2.2 * scale).max(2.0 * x0.norm() + 1.0).max(4.0);
    let at_branch = y0.norm_sqr() == 0.0;
    let xj = route_junction(bps, x0, r0, at_branch)?;
    let tol = 1e-12;

    let (seg_integral, y_at_junction) = if at_branch {
        // exact only for real x0; branch starts come from rational
        // Weierstrass points
        let f1 = divide_out_root(fc, x0.re);
        let len = (xj - x0).norm();
        let dir = (xj - x0) / len;
        let leg = BranchLeg {
            f1: &f1,
            x0,
            dir,
            sqrt_dir: dir.sqrt(),
        };
        let w0 = peval(&f1, x0).sqrt();
        let (vals, w_end) = integrate_adaptive(&leg, 0.0, len.sqrt(), w0, g, tol, 20)?;
        let w_ref = sqrt_near(peval(&f1, xj), w_end);
        (vals, len.sqrt() * dir.sqrt() * w_ref)
    } else {
        let leg = StraightLeg { fc, from: x0, to: xj };
        let (vals, y_end) = integrate_adaptive(&leg, 0.0, 1.0, y0, g, tol, 20)?;
        (vals, sqrt_near(peval(fc, xj), y_end))
    };

    let tail = TailLeg::new(fc, xj, g);
    let (tail_integral, _) = integrate_adaptive(&tail, 0.0, 1.0, y_at_junction, g, tol, 20)?;

    Ok(tail_integral
        .iter()
        .zip(&seg_integral)
        .map(|(t, s)| t - s)
        .collect())
}

/// Abel-Jacobi image of a point in normalized coordinates; the
/// basepoint at infinity maps to zero.
pub fn abel_jacobi(
    rd: &RiemannData,
    c: &HyperellipticCurve,
    p: &CurvePoint,
) -> Result<Vec<Cplx>, NumError> {
    let g = c.genus();
    match p {
        CurvePoint::Infinity => Ok(vec![Cplx::new(0.0, 0.0); g]),
        CurvePoint::Affine { x, y } => {
            let fc = fcoeffs(c);
            let raw = aj_unnormalized(
                &fc,
                &rd.branch_points,
                g,
                Cplx::new(x.to_f64(), 0.0),
                Cplx::new(y.to_f64(), 0.0),
            )?;
            Ok(cmatvec(&rd.norm, &raw))
        }
    }
}

/// Multiplicity-weighted sum of point images.
pub fn abel_jacobi_divisor(
    rd: &RiemannData,
    c: &HyperellipticCurve,
    d: &Divisor,
) -> Result<Vec<Cplx>, NumError> {
    let g = c.genus();
    let mut acc = vec![Cplx::new(0.0, 0.0); g];
    for (p, m) in d.support() {
        let aj = abel_jacobi(rd, c, p)?;
        for (a, v) in acc.iter_mut().zip(aj) {
            *a += v * m as f64;
        }
    }
    Ok(acc)
}
