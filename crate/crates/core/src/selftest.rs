//! Built-in verification suite behind `thetakp selftest`.
//!
//! Eight checks cover the exact layer (randomized cross-agreement of
//! the three order formulas, the pinned worked example, canonical
//! Weierstrass weights, the Wronskian route, twist independence, and
//! Riemann-Roch bookkeeping) and the numeric layer (a genus-1
//! reference curve and exact-vs-numeric agreement on random genus-2
//! instances).  Randomized checks draw from fixed seeds, so every run
//! sees the same instances.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curve::{CurvePoint, HyperellipticCurve};
use crate::qalg::{QLaurent, QPoly, Rat};
use crate::rrspace::{canonical_divisor, h0, iota, Divisor};
use crate::thetanum::{
    order_numeric, period_matrix, riemann_theta, winding_order, Cplx, NumError, RiemannData,
    ThetaParams,
};
use crate::vanishing::{
    gap_sequence, order_gap_sum, order_inflectionary, order_report, order_segal_wilson,
    series_det, wronskian_order_at, VanishError,
};

// ---- results and the Riemann-Roch ledger ----

/// Outcome of one verification criterion.
pub struct CriterionResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn pass(name: &'static str, detail: String) -> CriterionResult {
    CriterionResult {
        name,
        passed: true,
        detail,
    }
}

fn fail(name: &'static str, detail: String) -> CriterionResult {
    CriterionResult {
        name,
        passed: false,
        detail,
    }
}

/// Every h⁰ the exact criteria evaluate goes through [`RrLedger::h0`],
/// which checks `h⁰(D) - h⁰(ι(D)) = deg D - g + 1` on the spot and
/// records the outcome for the bookkeeping criterion.
struct RrLedger {
    checks: AtomicUsize,
    violations: Mutex<Vec<String>>,
}

impl RrLedger {
    fn new() -> Self {
        RrLedger {
            checks: AtomicUsize::new(0),
            violations: Mutex::new(Vec::new()),
        }
    }

    fn h0(&self, c: &HyperellipticCurve, d: &Divisor) -> Result<usize, VanishError> {
        let v = h0(c, d)?;
        let w = h0(c, &iota(c, d))?;
        let lhs = v as i64 - w as i64;
        let rhs = d.degree() - c.genus() as i64 + 1;
        self.checks.fetch_add(1, Ordering::Relaxed);
        if lhs != rhs {
            self.violations.lock().unwrap().push(format!(
                "degree-{} divisor on a genus-{} curve: h0 difference {lhs}, degree formula {rhs}",
                d.degree(),
                c.genus()
            ));
        }
        Ok(v)
    }

    /// Audit the h⁰ values behind one twist scan.
    fn scan(
        &self,
        c: &HyperellipticCurve,
        d: &Divisor,
        p: &CurvePoint,
        lo: i64,
        hi: i64,
    ) -> Result<(), VanishError> {
        for s in lo..=hi {
            self.h0(c, &d.plus_point(p, s))?;
        }
        Ok(())
    }
}

// ---- deterministic instance generation ----

/// Odd model with every branch x-value a small integer: the roots give
/// rational Weierstrass points, so each instance carries enough
/// rational points to build divisors from.  Distinct integer roots
/// keep the branch points separated for the numeric pipeline.
fn random_branch_curve(
    rng: &mut ChaCha8Rng,
    genus: usize,
    bound: i64,
) -> (HyperellipticCurve, Vec<i64>) {
    let need = 2 * genus + 1;
    let mut picked: BTreeSet<i64> = BTreeSet::new();
    while picked.len() < need {
        picked.insert(rng.random_range(-bound..=bound));
    }
    let roots: Vec<i64> = picked.into_iter().collect();
    let rats: Vec<Rat> = roots.iter().map(|&k| Rat::from_int(k)).collect();
    let lead = [1i64, 1, -1, 2][rng.random_range(0..4usize)];
    let f = QPoly::from_roots(&rats).scale(&Rat::from_int(lead));
    let c = HyperellipticCurve::new(f).expect("distinct roots give a squarefree odd model");
    (c, roots)
}

/// The point at infinity, all finite Weierstrass points, and any
/// affine point found by exact square testing over a small grid of
/// x-values.
fn rational_points(c: &HyperellipticCurve, roots: &[i64]) -> Vec<CurvePoint> {
    let mut pts = BTreeSet::new();
    pts.insert(CurvePoint::Infinity);
    for &r in roots {
        pts.insert(
            c.affine_point(Rat::from_int(r), Rat::zero())
                .expect("branch point lies on the curve"),
        );
    }
    for num in -14..=14i64 {
        for den in [1i64, 2, 3] {
            let x = Rat::new(num, den);
            let fx = c.f().eval(&x);
            if fx.is_zero() {
                continue;
            }
            if let Some(y) = fx.sqrt_exact() {
                pts.insert(c.affine_point(x.clone(), y.clone()).expect("on curve"));
                pts.insert(c.affine_point(x, -&y).expect("on curve"));
            }
        }
    }
    pts.into_iter().collect()
}

/// Random divisor of the given degree supported on the pool, padded at
/// infinity to land on the degree exactly.
fn random_divisor(rng: &mut ChaCha8Rng, pool: &[CurvePoint], deg: i64) -> Divisor {
    let mut d = Divisor::zero();
    for _ in 0..rng.random_range(1..=3usize) {
        let p = pool[rng.random_range(0..pool.len())].clone();
        let m = [-2i64, -1, 1, 1, 2][rng.random_range(0..5usize)];
        d = d.plus_point(&p, m);
    }
    let padding = deg - d.degree();
    if padding != 0 {
        d = d.plus_point(&CurvePoint::Infinity, padding);
    }
    d
}

fn random_point(rng: &mut ChaCha8Rng, pool: &[CurvePoint]) -> CurvePoint {
    pool[rng.random_range(0..pool.len())].clone()
}

fn worked_example_curve() -> HyperellipticCurve {
    HyperellipticCurve::new(QPoly::of_ints(&[-1, 0, 0, 0, 0, 1]))
        .expect("x^5 - 1 is squarefree")
}

// ---- criterion 1: the three formulas agree ----

fn formula_agreement(rr: &RrLedger) -> CriterionResult {
    let name = "formula-agreement";
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0001);
    let total = 54usize;
    let mut histogram: BTreeMap<i64, usize> = BTreeMap::new();
    for i in 0..total {
        let genus = 2 + i % 3;
        let g = genus as i64;
        let (c, roots) = random_branch_curve(&mut rng, genus, 5);
        let pool = rational_points(&c, &roots);
        let lambda = random_divisor(&mut rng, &pool, g - 1);
        let p = random_point(&mut rng, &pool);
        let rep = match order_report(&c, &lambda, &p, None) {
            Ok(r) => r,
            Err(e) => return fail(name, format!("instance {i} (genus {genus}): {e}")),
        };
        // recompute each formula through its standalone entry point
        let sw = order_segal_wilson(&c, &lambda, &p);
        let gap = order_inflectionary(&c, &lambda, &p, g);
        let direct = order_gap_sum(&c, &lambda, &p);
        match (&sw, &gap, &direct) {
            (Ok(a), Ok(b), Ok(d)) if a == b && b == d && *a == rep.order() => {}
            _ => {
                return fail(
                    name,
                    format!(
                        "instance {i} (genus {genus}): formulas disagree: \
                         {sw:?} / {gap:?} / {direct:?} vs report {}",
                        rep.order()
                    ),
                )
            }
        }
        // index bijection between the jump set and the gap sequence
        let vals = rep.sw_set.values();
        let gaps = rep.gap_seq.gaps();
        let bijection = vals.len() == genus + 1
            && gaps.len() == genus
            && vals[genus] == g
            && (0..genus).all(|j| vals[j] == g - gaps[genus - 1 - j]);
        if !bijection {
            return fail(
                name,
                format!("instance {i} (genus {genus}): jumps {vals:?} do not mirror gaps {gaps:?}"),
            );
        }
        if let Err(e) = rr.scan(&c, &lambda, &p, -(g + 1), g) {
            return fail(name, format!("instance {i} (genus {genus}): {e}"));
        }
        *histogram.entry(rep.order()).or_insert(0) += 1;
    }
    let el = t0.elapsed();
    let detail = format!(
        "{total} instances over genus 2-4; all three formulas and the index bijection \
         agree; order histogram {histogram:?} ({:.2} s)",
        el.as_secs_f64()
    );
    if el < Duration::from_secs(60) {
        pass(name, detail)
    } else {
        fail(name, detail + "; over the 60 s budget")
    }
}

// ---- criterion 2: pinned worked example ----

fn worked_example(rr: &RrLedger) -> CriterionResult {
    let name = "worked-example";
    let t0 = Instant::now();
    let c = worked_example_curve();
    let lambda = Divisor::of_point(CurvePoint::Infinity, 1);
    let p = CurvePoint::Infinity;
    let rep = match order_report(&c, &lambda, &p, None) {
        Ok(r) => r,
        Err(e) => return fail(name, e.to_string()),
    };
    let mut problems = Vec::new();
    if rep.order() != 3 {
        problems.push(format!("order {}", rep.order()));
    }
    if rep.gap_seq.gaps() != [2, 4] {
        problems.push(format!("gaps {:?}", rep.gap_seq.gaps()));
    }
    if rep.sw_set.prefix() != [-2, 0] {
        problems.push(format!("jump prefix {:?}", rep.sw_set.prefix()));
    }
    let pinned = serde_json::json!({
        "order": 3,
        "gap_sequence": [2, 4],
        "sw_prefix": [-2, 0],
        "n_used": 2,
        "formulas": {"sw": 3, "gap": 3, "thm41": 3},
    });
    match serde_json::to_value(&rep) {
        Ok(v) if v == pinned => {}
        Ok(v) => problems.push(format!("report JSON {v}")),
        Err(e) => problems.push(format!("serialization: {e}")),
    }
    if let Err(e) = rr.scan(&c, &lambda, &p, -3, 2) {
        return fail(name, e.to_string());
    }
    let el = t0.elapsed();
    if !problems.is_empty() {
        return fail(name, problems.join("; "));
    }
    let detail = format!(
        "y^2 = x^5 - 1 at infinity: order 3 by every formula, gaps {{2,4}}, \
         jump prefix {{-2,0}}, pinned JSON matches ({:.3} s)",
        el.as_secs_f64()
    );
    if el < Duration::from_secs(1) {
        pass(name, detail)
    } else {
        fail(name, detail + "; over the 1 s budget")
    }
}

// ---- criterion 3: canonical weights at Weierstrass points ----

fn canonical_weights(rr: &RrLedger) -> CriterionResult {
    let name = "canonical-weights";
    let t0 = Instant::now();
    // y^2 = x(x^2 - 1)(x^2 - 4): genus 2 with all six Weierstrass
    // points rational (five finite branch points plus infinity)
    let c = match HyperellipticCurve::new(QPoly::of_ints(&[0, 4, 0, -5, 0, 1])) {
        Ok(c) => c,
        Err(e) => return fail(name, e.to_string()),
    };
    let k = canonical_divisor(&c);
    let branch_xs = [0i64, -1, 1, -2, 2];
    let mut weierstrass = vec![CurvePoint::Infinity];
    for &r in &branch_xs {
        match c.affine_point(Rat::from_int(r), Rat::zero()) {
            Ok(p) => weierstrass.push(p),
            Err(e) => return fail(name, e.to_string()),
        }
    }
    let mut total = 0i64;
    for w in &weierstrass {
        let gs = match gap_sequence(&c, &k, w) {
            Ok(gs) => gs,
            Err(e) => return fail(name, format!("at {w}: {e}")),
        };
        if gs.gaps() != [1, 3] {
            return fail(name, format!("at {w}: canonical gaps {:?}", gs.gaps()));
        }
        if gs.weight() != 1 {
            return fail(name, format!("at {w}: weight {}", gs.weight()));
        }
        total += gs.weight();
        for m in 0..=4i64 {
            if let Err(e) = rr.h0(&c, &k.plus_point(w, -m)) {
                return fail(name, format!("at {w}: {e}"));
            }
        }
    }
    if total != 6 {
        return fail(name, format!("total weight {total}, expected g^3 - g = 6"));
    }
    // This curve has no affine rational points off the branch locus
    // (exact square search over a large grid finds none), so the
    // weight-zero checks run in the x-chart: the canonical system is
    // spanned by functions of x alone, hence its Wronskian order at a
    // point depends only on x and is the same on both sheets.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0003);
    let mut used = BTreeSet::new();
    let mut checked = 0usize;
    while checked < 10 {
        let x0 = Rat::new(rng.random_range(-30..=30i64), rng.random_range(1..=3i64));
        if branch_xs.iter().any(|&b| x0 == Rat::from_int(b)) || !used.insert(x0.clone()) {
            continue;
        }
        // columns are the sections {1, x} expanded along x = x0 + t
        let prec = 8;
        let xt = &QLaurent::constant(x0.clone(), prec) + &QLaurent::monomial(1, Rat::one(), prec);
        let g = c.genus();
        let mut cols = Vec::with_capacity(g);
        let mut phi = QLaurent::constant(Rat::one(), prec);
        for j in 0..g {
            if j > 0 {
                phi = &phi * &xt;
            }
            let mut col = vec![phi.clone()];
            for _ in 1..g {
                col.push(col.last().unwrap().derivative());
            }
            cols.push(col);
        }
        if series_det(&cols).valuation() != Some(0) {
            return fail(name, format!("canonical Wronskian vanishes over x = {x0}"));
        }
        checked += 1;
    }
    let el = t0.elapsed();
    let detail = format!(
        "six Weierstrass points with canonical gaps {{1,3}} and weight 1; total 6 = g^3 - g; \
         weight 0 over 10 random non-branch x-values (checked in the x-chart: the curve \
         has no affine rational point off the branch locus) ({:.3} s)",
        el.as_secs_f64()
    );
    if el < Duration::from_secs(10) {
        pass(name, detail)
    } else {
        fail(name, detail + "; over the 10 s budget")
    }
}

// ---- criterion 4: Wronskian route matches the gap formula ----

fn wronskian_cross_check(rr: &RrLedger) -> CriterionResult {
    let name = "wronskian-cross-check";
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0004);
    let total = 26usize;
    for i in 0..total {
        let genus = 2 + i % 3;
        let g = genus as i64;
        let (c, roots) = random_branch_curve(&mut rng, genus, 5);
        let pool = rational_points(&c, &roots);
        let lambda = random_divisor(&mut rng, &pool, g - 1);
        let p = random_point(&mut rng, &pool);
        let twisted = lambda.plus_point(&p, g);
        let wr = match wronskian_order_at(&c, &twisted, &p, 40) {
            Ok(v) => v,
            Err(VanishError::WronskianUnresolved { .. }) => {
                match wronskian_order_at(&c, &twisted, &p, 80) {
                    Ok(v) => v,
                    Err(e) => return fail(name, format!("instance {i} (genus {genus}): {e}")),
                }
            }
            Err(e) => return fail(name, format!("instance {i} (genus {genus}): {e}")),
        };
        let gap = match order_inflectionary(&c, &lambda, &p, g) {
            Ok(v) => v,
            Err(e) => return fail(name, format!("instance {i} (genus {genus}): {e}")),
        };
        if wr != gap {
            return fail(
                name,
                format!("instance {i} (genus {genus}): Wronskian order {wr}, gap formula {gap}"),
            );
        }
        if let Err(e) = rr.h0(&c, &twisted) {
            return fail(name, format!("instance {i} (genus {genus}): {e}"));
        }
    }
    // worked example: order 3 at infinity
    let c = worked_example_curve();
    let lambda = Divisor::of_point(CurvePoint::Infinity, 1);
    let p = CurvePoint::Infinity;
    match wronskian_order_at(&c, &lambda.plus_point(&p, 2), &p, 24) {
        Ok(3) => {}
        Ok(v) => return fail(name, format!("worked example: Wronskian order {v}")),
        Err(e) => return fail(name, format!("worked example: {e}")),
    }
    let el = t0.elapsed();
    let detail = format!(
        "{total} instances over genus 2-4 plus the worked example; Wronskian vanishing \
         order equals the gap-formula weight ({:.2} s)",
        el.as_secs_f64()
    );
    if el < Duration::from_secs(60) {
        pass(name, detail)
    } else {
        fail(name, detail + "; over the 60 s budget")
    }
}

// ---- criterion 5: the twist amount does not matter ----

fn twist_independence(rr: &RrLedger) -> CriterionResult {
    let name = "twist-independence";
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0005);
    let total = 20usize;
    for i in 0..total {
        let genus = 2 + i % 3;
        let g = genus as i64;
        let (c, roots) = random_branch_curve(&mut rng, genus, 5);
        let pool = rational_points(&c, &roots);
        let lambda = random_divisor(&mut rng, &pool, g - 1);
        let p = random_point(&mut rng, &pool);
        let mut vals = Vec::with_capacity(3);
        for n in g..=g + 2 {
            match order_inflectionary(&c, &lambda, &p, n) {
                Ok(v) => vals.push(v),
                Err(e) => return fail(name, format!("instance {i} (genus {genus}, n={n}): {e}")),
            }
            if let Err(e) = rr.h0(&c, &lambda.plus_point(&p, n)) {
                return fail(name, format!("instance {i} (genus {genus}): {e}"));
            }
        }
        if vals[0] != vals[1] || vals[1] != vals[2] {
            return fail(
                name,
                format!("instance {i} (genus {genus}): orders {vals:?} across n = g, g+1, g+2"),
            );
        }
    }
    let el = t0.elapsed();
    pass(
        name,
        format!(
            "{total} instances over genus 2-4; the order is unchanged for n = g, g+1, g+2 \
             ({:.2} s)",
            el.as_secs_f64()
        ),
    )
}

// ---- criterion 6: Riemann-Roch bookkeeping ----

fn riemann_roch_summary(rr: &RrLedger) -> CriterionResult {
    let name = "riemann-roch";
    let checks = rr.checks.load(Ordering::Relaxed);
    let violations = rr.violations.lock().unwrap();
    if checks == 0 {
        return fail(name, "no h0 evaluations were recorded".into());
    }
    if violations.is_empty() {
        pass(
            name,
            format!("{checks} h0 evaluations matched h0(D) - h0(iota(D)) = deg D - g + 1"),
        )
    } else {
        fail(
            name,
            format!(
                "{} of {checks} evaluations broke the identity: {}",
                violations.len(),
                violations.join("; ")
            ),
        )
    }
}

// ---- criterion 7: genus-1 reference curve ----

fn identity_2x2(diag: Cplx) -> Vec<Vec<Cplx>> {
    (0..2)
        .map(|i| {
            (0..2)
                .map(|j| if i == j { diag } else { Cplx::new(0.0, 0.0) })
                .collect()
        })
        .collect()
}

fn genus_one_reference() -> CriterionResult {
    let name = "genus-one-reference";
    let t0 = Instant::now();
    let c = match HyperellipticCurve::new(QPoly::of_ints(&[0, -1, 0, 1])) {
        Ok(c) => c,
        Err(e) => return fail(name, e.to_string()),
    };
    let rd = match period_matrix(&c, 64) {
        Ok(rd) => rd,
        Err(e) => return fail(name, format!("period matrix: {e}")),
    };
    let om = rd.omega[0][0];
    let dev = (om - Cplx::new(0.0, 1.0)).norm();
    if dev >= 1e-6 {
        return fail(name, format!("period matrix {om} deviates from i by {dev:.2e}"));
    }
    // theta at the 2x2 identity-scaled matrix against the squared
    // one-dimensional sum
    let rd2 = RiemannData {
        branch_points: Vec::new(),
        a: identity_2x2(Cplx::new(1.0, 0.0)),
        b: identity_2x2(Cplx::new(0.0, 1.0)),
        omega: identity_2x2(Cplx::new(0.0, 1.0)),
        norm: identity_2x2(Cplx::new(1.0, 0.0)),
        quad_points: 64,
    };
    let tp2 = match ThetaParams::for_data(&rd2, 1e-12) {
        Ok(tp) => tp,
        Err(e) => return fail(name, format!("truncation setup: {e}")),
    };
    let v = riemann_theta(&[Cplx::new(0.0, 0.0); 2], &rd2, &tp2);
    let oracle: f64 = 1.0 + 2.0 * (1..=20).map(|n: i64| (-PI * (n * n) as f64).exp()).sum::<f64>();
    let err = (v - Cplx::new(oracle * oracle, 0.0)).norm();
    if err >= 1e-9 {
        return fail(name, format!("theta(0, i*I2) off the 1-D oracle squared by {err:.2e}"));
    }
    // the odd half-period is a simple zero in every direction
    let tp = match ThetaParams::for_data(&rd, 1e-12) {
        Ok(tp) => tp,
        Err(e) => return fail(name, format!("truncation setup: {e}")),
    };
    let z0 = [(Cplx::new(1.0, 0.0) + om) * 0.5];
    for dir in [
        Cplx::new(1.0, 0.0),
        Cplx::new(0.0, 1.0),
        Cplx::new(0.6, 0.8),
    ] {
        match winding_order(&rd, &z0, &[dir], 1e-2, &tp) {
            Ok(1) => {}
            Ok(kk) => return fail(name, format!("odd half-period winding {kk} along {dir}")),
            Err(e) => return fail(name, format!("winding along {dir}: {e}")),
        }
    }
    let el = t0.elapsed();
    let detail = format!(
        "y^2 = x^3 - x: |period matrix - i| = {dev:.1e}; theta(0, i*I2) matches the squared \
         1-D sum to {err:.1e}; odd half-period has winding 1 along three directions ({:.2} s)",
        el.as_secs_f64()
    );
    if el < Duration::from_secs(30) {
        pass(name, detail)
    } else {
        fail(name, detail + "; over the 30 s budget")
    }
}

// ---- criterion 8: exact vs numeric on random instances ----

fn exact_vs_numeric() -> CriterionResult {
    let name = "exact-vs-numeric";
    let t0 = Instant::now();
    // the worked example through the full numeric pipeline; the
    // winding routine rejects phase defects above 0.1 on its own
    let c = worked_example_curve();
    let lambda = Divisor::of_point(CurvePoint::Infinity, 1);
    let rd = match period_matrix(&c, 256) {
        Ok(rd) => rd,
        Err(e) => return fail(name, format!("worked example periods: {e}")),
    };
    let tp = match ThetaParams::for_data(&rd, 1e-12) {
        Ok(tp) => tp,
        Err(e) => return fail(name, format!("worked example truncation: {e}")),
    };
    match order_numeric(&rd, &c, &lambda, &CurvePoint::Infinity, 1e-2, &tp) {
        Ok(3) => {}
        Ok(k) => return fail(name, format!("worked example: numeric order {k}, exact 3")),
        Err(e) => return fail(name, format!("worked example: {e}")),
    }
    // random genus-2 classes of order 0 or 1
    let mut rng = ChaCha8Rng::seed_from_u64(0x0008);
    let mut orders: Vec<i64> = Vec::new();
    let mut excluded = Vec::new();
    let mut attempts = 0usize;
    // keep sampling past the fifth success until both a zero and a
    // nonzero class have been seen, so the contour test covers points
    // off the divisor as well as on it
    let done = |orders: &Vec<i64>| {
        orders.len() >= 5 && orders.contains(&0) && orders.contains(&1)
    };
    while !done(&orders) && attempts < 60 {
        attempts += 1;
        let (c, roots) = random_branch_curve(&mut rng, 2, 4);
        let pool = rational_points(&c, &roots);
        let lambda = random_divisor(&mut rng, &pool, 1);
        let p = CurvePoint::Infinity;
        let exact = match order_report(&c, &lambda, &p, None) {
            Ok(r) => r.order(),
            Err(e) => return fail(name, format!("attempt {attempts}: exact order: {e}")),
        };
        if exact > 1 {
            continue;
        }
        let rd = match period_matrix(&c, 256) {
            Ok(rd) => rd,
            Err(e) => return fail(name, format!("attempt {attempts}: periods: {e}")),
        };
        let tp = match ThetaParams::for_data(&rd, 1e-12) {
            Ok(tp) => tp,
            Err(e) => return fail(name, format!("attempt {attempts}: truncation: {e}")),
        };
        match order_numeric(&rd, &c, &lambda, &p, 1e-2, &tp) {
            Ok(k) if k == exact => orders.push(exact),
            Ok(k) => {
                return fail(
                    name,
                    format!("attempt {attempts}: numeric order {k}, exact {exact}"),
                )
            }
            Err(NumError::DegenerateLine) => {
                excluded.push(format!("attempt {attempts}: degenerate line"));
            }
            Err(NumError::WindingAmbiguous { defect }) => {
                excluded.push(format!("attempt {attempts}: winding defect {defect:.3}"));
            }
            Err(e) => return fail(name, format!("attempt {attempts}: {e}")),
        }
    }
    let el = t0.elapsed();
    if orders.len() < 5 {
        return fail(
            name,
            format!(
                "only {} of 5 required numeric agreements after {attempts} attempts; \
                 excluded: [{}]",
                orders.len(),
                excluded.join(", ")
            ),
        );
    }
    let excl = if excluded.is_empty() {
        String::from("none excluded")
    } else {
        format!("excluded: [{}]", excluded.join(", "))
    };
    let detail = format!(
        "worked example numeric order 3; {} random genus-2 instances agree with exact \
         orders {orders:?}; {excl} ({:.2} s)",
        orders.len(),
        el.as_secs_f64()
    );
    if el < Duration::from_secs(300) {
        pass(name, detail)
    } else {
        fail(name, detail + "; over the 300 s budget")
    }
}

// ---- dispatch ----

fn run_criterion(k: usize, rr: &RrLedger) -> CriterionResult {
    match k {
        1 => formula_agreement(rr),
        2 => worked_example(rr),
        3 => canonical_weights(rr),
        4 => wronskian_cross_check(rr),
        5 => twist_independence(rr),
        7 => genus_one_reference(),
        8 => exact_vs_numeric(),
        _ => unreachable!("no such criterion"),
    }
}

/// Run the whole suite on at most `threads` workers and return the
/// results in criterion order.  The Riemann-Roch summary comes last
/// because it audits the h⁰ calls the other exact criteria make.
pub fn run_all(threads: usize) -> Vec<CriterionResult> {
    let rr = RrLedger::new();
    let order = [1usize, 2, 3, 4, 5, 7, 8];
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<CriterionResult>>> =
        order.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..threads.clamp(1, order.len()) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= order.len() {
                    break;
                }
                let r = run_criterion(order[i], &rr);
                *slots[i].lock().unwrap() = Some(r);
            });
        }
    });
    let mut out: Vec<CriterionResult> = slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("criterion ran"))
        .collect();
    out.insert(5, riemann_roch_summary(&rr));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_criterion_passes() {
        let rr = RrLedger::new();
        let r = worked_example(&rr);
        assert!(r.passed, "{}", r.detail);
        assert!(rr.checks.load(Ordering::Relaxed) > 0);
        assert!(rr.violations.lock().unwrap().is_empty());
    }

    #[test]
    fn canonical_weights_criterion_passes() {
        let rr = RrLedger::new();
        let r = canonical_weights(&rr);
        assert!(r.passed, "{}", r.detail);
    }

    #[test]
    fn generator_yields_usable_pools() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for genus in 2..=4 {
            let (c, roots) = random_branch_curve(&mut rng, genus, 5);
            assert_eq!(c.genus(), genus);
            let pool = rational_points(&c, &roots);
            // infinity plus 2g+1 branch points at minimum
            assert!(pool.len() >= 2 * genus + 2);
            let d = random_divisor(&mut rng, &pool, genus as i64 - 1);
            assert_eq!(d.degree(), genus as i64 - 1);
        }
    }
}
