//! The three exact formulas for the vanishing order of the theta
//! function at a divisor class of degree `g - 1`, along the direction
//! of a marked point `p`.
//!
//! All three reduce to dimension counts of twisted Riemann-Roch
//! spaces `h⁰(Λ + s·p)`:
//!
//!   - `order_segal_wilson`: the jump set `S = {s : h⁰(Λ+(s+1)p) =
//!     h⁰(Λ+sp) + 1}` has `s_n = n` eventually; the order is
//!     `Σ (n - s_n)`.
//!   - `order_inflectionary`: the inflectionary weight of `p` with
//!     respect to `Λ + n·p` for any `n` making the twisted line meet
//!     the theta divisor properly (`n = g` always works).
//!   - `order_gap_sum`: `Σ (m - g + h⁰(Λ + (g-m)p))` over the gap
//!     integers `m` of `Λ + g·p` at `p`.
//!
//! The formulas are theorems, so `order_report` computes all three,
//! checks them against each other and against the index bijection
//! `s_i = g - m_{g-i}`, and treats any disagreement as an internal
//! error carrying the full `h⁰` trace.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::curve::{CurveError, CurvePoint, HyperellipticCurve};
use crate::qalg::QLaurent;
use crate::rrspace::{h0, iota, rr_space_basis, Divisor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VanishError {
    #[error("divisor has degree {got}, expected {expected}")]
    DegreeMismatch { expected: i64, got: i64 },
    #[error("twist by n = {n} does not meet the theta divisor properly")]
    ImproperIntersection { n: i64 },
    #[error(
        "order formulas disagree (jump sum {sw}, weight {weight}, gap sum {gap_sum}); \
         h0 trace {trace:?} — this is an implementation bug"
    )]
    FormulaMismatch {
        sw: i64,
        weight: i64,
        gap_sum: i64,
        trace: Vec<(i64, i64)>,
    },
    #[error("Wronskian needs at least one section but h0 = 0")]
    EmptyBasis,
    #[error("Wronskian order unresolved at precision {prec}")]
    WronskianUnresolved { prec: i64 },
    #[error(transparent)]
    Curve(#[from] CurveError),
}

// ---- result types ----

/// Gap integers of a divisor class at a point: `m` is a gap when
/// dropping the `m`-th power of the uniformizer costs a section.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapSequence {
    gaps: Vec<i64>,
    bundle_degree: i64,
}

impl GapSequence {
    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    pub fn bundle_degree(&self) -> i64 {
        self.bundle_degree
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// `Σ (m_i - i)` with 1-based `i`; zero exactly for the generic
    /// sequence `{1, …, r}`.
    pub fn weight(&self) -> i64 {
        self.gaps
            .iter()
            .enumerate()
            .map(|(i, m)| m - (i as i64 + 1))
            .sum()
    }
}

/// The jump set of `s ↦ h⁰(Λ + s·p)`, stored through its
/// stabilization: `values[n] = n` for all `n >= stable_from`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwSet {
    values: Vec<i64>,
    stable_from: usize,
}

impl SwSet {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn stable_from(&self) -> usize {
        self.stable_from
    }

    /// The non-stabilized head, `values[..stable_from]`.
    pub fn prefix(&self) -> &[i64] {
        &self.values[..self.stable_from]
    }

    /// `Σ (n - s_n)`, which the stabilized tail contributes nothing to.
    pub fn order_sum(&self) -> i64 {
        self.values
            .iter()
            .enumerate()
            .map(|(n, s)| n as i64 - s)
            .sum()
    }
}

/// The outcome of all three order formulas on one input, plus the
/// scan data that witnesses their agreement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    pub order_segal_wilson: i64,
    pub order_inflectionary: i64,
    pub order_gap_sum: i64,
    pub n_used: i64,
    pub gap_seq: GapSequence,
    pub sw_set: SwSet,
}

impl OrderReport {
    /// The common value of the three formulas.
    pub fn order(&self) -> i64 {
        self.order_segal_wilson
    }
}

#[derive(Serialize)]
struct ReportRepr<'a> {
    order: i64,
    gap_sequence: &'a [i64],
    sw_prefix: &'a [i64],
    n_used: i64,
    formulas: FormulasRepr,
}

#[derive(Serialize)]
struct FormulasRepr {
    sw: i64,
    gap: i64,
    thm41: i64,
}

impl Serialize for OrderReport {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ReportRepr {
            order: self.order(),
            gap_sequence: self.gap_seq.gaps(),
            sw_prefix: self.sw_set.prefix(),
            n_used: self.n_used,
            formulas: FormulasRepr {
                sw: self.order_segal_wilson,
                gap: self.order_inflectionary,
                thm41: self.order_gap_sum,
            },
        }
        .serialize(ser)
    }
}

impl fmt::Display for OrderReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "order {} (jump sum {}, weight {}, gap sum {}; n = {})",
            self.order(),
            self.order_segal_wilson,
            self.order_inflectionary,
            self.order_gap_sum,
            self.n_used
        )
    }
}

// ---- the memoized twist scan ----

/// Caches `h⁰(base + s·p)` across the many overlapping scans the
/// order formulas perform.
pub(crate) struct TwistScan<'a> {
    c: &'a HyperellipticCurve,
    base: Divisor,
    p: CurvePoint,
    cache: RefCell<BTreeMap<i64, usize>>,
}

impl<'a> TwistScan<'a> {
    pub(crate) fn new(c: &'a HyperellipticCurve, base: &Divisor, p: &CurvePoint) -> Self {
        TwistScan {
            c,
            base: base.clone(),
            p: p.clone(),
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub(crate) fn h0_at(&self, s: i64) -> Result<usize, CurveError> {
        if let Some(&v) = self.cache.borrow().get(&s) {
            return Ok(v);
        }
        let v = h0(self.c, &self.base.plus_point(&self.p, s))?;
        self.cache.borrow_mut().insert(s, v);
        Ok(v)
    }

    fn trace(&self) -> Vec<(i64, i64)> {
        self.cache
            .borrow()
            .iter()
            .map(|(&s, &v)| (s, v as i64))
            .collect()
    }
}

fn require_theta_degree(c: &HyperellipticCurve, lambda: &Divisor) -> Result<(), VanishError> {
    let expected = c.genus() as i64 - 1;
    if lambda.degree() != expected {
        return Err(VanishError::DegreeMismatch {
            expected,
            got: lambda.degree(),
        });
    }
    Ok(())
}

// ---- gap sequences and weights ----

fn gap_sequence_from_scan(scan: &TwistScan<'_>, shift: i64) -> Result<GapSequence, VanishError> {
    // gaps of base + shift·p at p: m is a gap iff h⁰ drops when the
    // twist goes from shift - (m-1) to shift - m
    let deg = scan.base.degree() + shift;
    let mut gaps = Vec::new();
    for m in 1..=deg.max(0) + 1 {
        if scan.h0_at(shift - m)? + 1 == scan.h0_at(shift - m + 1)? {
            gaps.push(m);
        }
    }
    let h = scan.h0_at(shift)?;
    assert_eq!(gaps.len(), h, "gap count must equal h0");
    assert!(gaps.last().copied().unwrap_or(0) <= deg + 1);
    Ok(GapSequence {
        gaps,
        bundle_degree: deg,
    })
}

/// Gap integers of `D` at `q`, found by scanning `m = 1 … deg D + 1`.
pub fn gap_sequence(
    c: &HyperellipticCurve,
    d: &Divisor,
    q: &CurvePoint,
) -> Result<GapSequence, VanishError> {
    let scan = TwistScan::new(c, d, q);
    gap_sequence_from_scan(&scan, 0)
}

/// `Σ (m_i - i)` over the gap sequence of `D` at `q`.
pub fn inflectionary_weight(
    c: &HyperellipticCurve,
    d: &Divisor,
    q: &CurvePoint,
) -> Result<i64, VanishError> {
    Ok(gap_sequence(c, d, q)?.weight())
}

/// Order at `q` of the Wronskian of a basis of L(D), expanded in the
/// uniformizer at `q` after the local trivialization `φ ↦ φ·t^{D(q)}`.
/// Basis-independent, and equal to the inflectionary weight.
pub fn wronskian_order_at(
    c: &HyperellipticCurve,
    d: &Divisor,
    q: &CurvePoint,
    prec: i64,
) -> Result<i64, VanishError> {
    let basis = rr_space_basis(c, d)?;
    let n = basis.dimension;
    if n == 0 {
        return Err(VanishError::EmptyBasis);
    }
    let shift = d.mult(q);
    let mut rows: Vec<Vec<QLaurent>> = Vec::with_capacity(n);
    let mut firsts = Vec::with_capacity(n);
    for phi in &basis.basis {
        firsts.push(phi.expand_at(c, q, prec)?.mul_tpow(shift));
    }
    rows.push(firsts);
    for j in 1..n {
        let prev = &rows[j - 1];
        rows.push(prev.iter().map(QLaurent::derivative).collect());
    }
    // columns are sections, rows are derivative orders
    let cols: Vec<Vec<QLaurent>> = (0..n)
        .map(|i| (0..n).map(|j| rows[j][i].clone()).collect())
        .collect();
    let w = series_det(&cols);
    w.valuation()
        .ok_or(VanishError::WronskianUnresolved { prec: w.precision() })
}

// cofactor expansion along the first row; n stays small (= h0)
pub(crate) fn series_det(cols: &[Vec<QLaurent>]) -> QLaurent {
    let n = cols.len();
    if n == 1 {
        return cols[0][0].clone();
    }
    let mut acc: Option<QLaurent> = None;
    for (k, col) in cols.iter().enumerate() {
        let minor: Vec<Vec<QLaurent>> = cols
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, c)| c[1..].to_vec())
            .collect();
        let term = &col[0] * &series_det(&minor);
        let signed = if k % 2 == 0 { term } else { -&term };
        acc = Some(match acc {
            None => signed,
            Some(a) => &a + &signed,
        });
    }
    acc.expect("determinant of a nonempty matrix")
}

// ---- the order formulas ----

/// Whether the line twisted by `n·p` meets the theta divisor
/// properly: for `n > 0` this is `h⁰(Λ - n·p) = 0`, for `n < 0` it is
/// `h⁰(ι(Λ) - |n|·p) = 0`.  Always true once `|n| >= g`.
pub fn proper_intersection(
    c: &HyperellipticCurve,
    lambda: &Divisor,
    p: &CurvePoint,
    n: i64,
) -> Result<bool, VanishError> {
    require_theta_degree(c, lambda)?;
    assert!(n != 0, "the twist index must be nonzero");
    let twisted = if n > 0 {
        lambda.plus_point(p, -n)
    } else {
        iota(c, lambda).plus_point(p, n)
    };
    Ok(h0(c, &twisted)? == 0)
}

fn sw_set_from_scan(scan: &TwistScan<'_>, g: i64) -> Result<SwSet, VanishError> {
    // stabilization regime check: for s >= g the twisted degree
    // exceeds 2g - 2, so h⁰ = s exactly; verify the boundary rather
    // than assuming it
    assert_eq!(scan.h0_at(g)? as i64, g);
    assert_eq!(scan.h0_at(g + 1)? as i64, g + 1);
    let mut values = Vec::new();
    for s in (-g - 1)..=g {
        if scan.h0_at(s + 1)? == scan.h0_at(s)? + 1 {
            values.push(s);
        }
    }
    assert_eq!(
        values.len(),
        (g + 1) as usize,
        "a degree g-1 class jumps exactly g+1 times in the scan window"
    );
    assert!(values[0] >= -g, "first jump index is at least -g");
    let mut stable_from = values.len();
    while stable_from > 0 && values[stable_from - 1] == stable_from as i64 - 1 {
        stable_from -= 1;
    }
    Ok(SwSet {
        values,
        stable_from,
    })
}

/// The jump set of `Λ` along `p`, scanned over `[-g-1, g]` with the
/// stabilization regime verified at the boundary.
pub fn sw_set(
    c: &HyperellipticCurve,
    lambda: &Divisor,
    p: &CurvePoint,
) -> Result<SwSet, VanishError> {
    require_theta_degree(c, lambda)?;
    let scan = TwistScan::new(c, lambda, p);
    sw_set_from_scan(&scan, c.genus() as i64)
}

/// Order from the jump set: `Σ (n - s_n)`.
pub fn order_segal_wilson(
    c: &HyperellipticCurve,
    lambda: &Divisor,
    p: &CurvePoint,
) -> Result<i64, VanishError> {
    Ok(sw_set(c, lambda, p)?.order_sum())
}

/// Order as the inflectionary weight of `p` with respect to
/// `Λ + n·p`; validates the proper-intersection condition instead of
/// trusting the caller.
pub fn order_inflectionary(
    c: &HyperellipticCurve,
    lambda: &Divisor,
    p: &CurvePoint,
    n: i64,
) -> Result<i64, VanishError> {
    require_theta_degree(c, lambda)?;
    assert!(n >= 1, "the twist must be positive");
    if !proper_intersection(c, lambda, p, -n)? {
        return Err(VanishError::ImproperIntersection { n });
    }
    let scan = TwistScan::new(c, lambda, p);
    Ok(gap_sequence_from_scan(&scan, n)?.weight())
}

/// Order as the direct sum `Σ (m - g + h⁰(Λ + (g-m)p))` over the gap
/// integers `m` of `Λ + g·p` at `p`.
pub fn order_gap_sum(
    c: &HyperellipticCurve,
    lambda: &Divisor,
    p: &CurvePoint,
) -> Result<i64, VanishError> {
    require_theta_degree(c, lambda)?;
    let scan = TwistScan::new(c, lambda, p);
    order_gap_sum_from_scan(&scan, c.genus() as i64)
}

fn order_gap_sum_from_scan(scan: &TwistScan<'_>, g: i64) -> Result<i64, VanishError> {
    let gaps = gap_sequence_from_scan(scan, g)?;
    let mut total = 0;
    for &m in gaps.gaps() {
        total += m - g + scan.h0_at(g - m)? as i64;
    }
    Ok(total)
}

/// Runs all three formulas on one shared `h⁰` scan, asserts their
/// agreement and the index bijection `s_i = g - m_{g-i}`, and returns
/// the full bundle.  The weight formula twists by `n` (default g); the
/// step-set and gap-sum formulas always use the genus window, which is
/// also where the bijection lives.
pub fn order_report(
    c: &HyperellipticCurve,
    lambda: &Divisor,
    p: &CurvePoint,
    n: Option<i64>,
) -> Result<OrderReport, VanishError> {
    require_theta_degree(c, lambda)?;
    let g = c.genus() as i64;
    let nn = n.unwrap_or(g);
    if nn < 1 {
        return Err(VanishError::ImproperIntersection { n: nn });
    }
    let scan = TwistScan::new(c, lambda, p);

    let sw = sw_set_from_scan(&scan, g)?;
    let order_sw = sw.order_sum();

    if !proper_intersection(c, lambda, p, -nn)? {
        return Err(VanishError::ImproperIntersection { n: nn });
    }
    let window_gaps = gap_sequence_from_scan(&scan, g)?;
    let gap_seq = if nn == g {
        window_gaps.clone()
    } else {
        gap_sequence_from_scan(&scan, nn)?
    };
    let order_weight = gap_seq.weight();
    let order_gaps = order_gap_sum_from_scan(&scan, g)?;

    let bijection_holds = (0..g as usize).all(|i| {
        sw.values()[i] == g - window_gaps.gaps()[g as usize - 1 - i]
    });
    if order_sw != order_weight || order_sw != order_gaps || !bijection_holds {
        return Err(VanishError::FormulaMismatch {
            sw: order_sw,
            weight: order_weight,
            gap_sum: order_gaps,
            trace: scan.trace(),
        });
    }
    assert!(order_sw >= 0);
    Ok(OrderReport {
        order_segal_wilson: order_sw,
        order_inflectionary: order_weight,
        order_gap_sum: order_gaps,
        n_used: nn,
        gap_seq,
        sw_set: sw,
    })
}
