//! Divisors on a hyperelliptic curve and exact Riemann-Roch spaces.
//!
//! The space L(D) of functions with `(φ) + D >= 0` is computed from
//! the ansatz `φ = (a(x) + b(x) y) / den(x)`: every function on the
//! curve is of this shape, and once `den` absorbs the allowed affine
//! poles, membership in L(D) becomes degree bounds on `a`, `b` at
//! infinity plus finitely many exact linear vanishing conditions at
//! affine points.  The basis is the kernel of the condition matrix.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveError, CurvePoint, FunctionRep, HyperellipticCurve};
use crate::qalg::{QMatrix, QPoly, Rat};

/// A formal integer combination of rational points.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Divisor {
    mults: BTreeMap<CurvePoint, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    pub fn of_point(p: CurvePoint, mult: i64) -> Self {
        Divisor::from_entries(vec![(p, mult)])
    }

    pub fn from_entries(entries: Vec<(CurvePoint, i64)>) -> Self {
        let mut mults = BTreeMap::new();
        for (p, m) in entries {
            *mults.entry(p).or_insert(0) += m;
        }
        mults.retain(|_, m| *m != 0);
        Divisor { mults }
    }

    pub fn degree(&self) -> i64 {
        self.mults.values().sum()
    }

    /// Multiplicity of `p`, zero when absent.
    pub fn mult(&self, p: &CurvePoint) -> i64 {
        self.mults.get(p).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = (&CurvePoint, i64)> {
        self.mults.iter().map(|(p, &m)| (p, m))
    }

    pub fn is_effective(&self) -> bool {
        self.mults.values().all(|&m| m > 0)
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut entries: Vec<(CurvePoint, i64)> =
            self.mults.iter().map(|(p, &m)| (p.clone(), m)).collect();
        entries.extend(other.mults.iter().map(|(p, &m)| (p.clone(), m)));
        Divisor::from_entries(entries)
    }

    pub fn neg(&self) -> Divisor {
        Divisor {
            mults: self.mults.iter().map(|(p, &m)| (p.clone(), -m)).collect(),
        }
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        self.add(&other.neg())
    }

    /// `self + k·p`.
    pub fn plus_point(&self, p: &CurvePoint, k: i64) -> Divisor {
        self.add(&Divisor::of_point(p.clone(), k))
    }

    /// Checks that every support point lies on the curve.
    pub fn validate_on(&self, c: &HyperellipticCurve) -> Result<(), CurveError> {
        for (p, _) in self.support() {
            if let CurvePoint::Affine { x, y } = p {
                if !c.contains(p) {
                    return Err(CurveError::PointNotOnCurve {
                        x: x.clone(),
                        y: y.clone(),
                    });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mults.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, m)) in self.mults.iter().enumerate() {
            if i == 0 {
                if *m < 0 {
                    write!(f, "-")?;
                }
            } else if *m < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.abs() != 1 {
                write!(f, "{}*", m.abs())?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Serialize, Deserialize)]
struct DivisorEntry {
    point: CurvePoint,
    mult: i64,
}

impl Serialize for Divisor {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<DivisorEntry> = self
            .mults
            .iter()
            .map(|(p, &m)| DivisorEntry {
                point: p.clone(),
                mult: m,
            })
            .collect();
        entries.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Divisor {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let entries = Vec::<DivisorEntry>::deserialize(de)?;
        Ok(Divisor::from_entries(
            entries.into_iter().map(|e| (e.point, e.mult)).collect(),
        ))
    }
}

impl FromStr for Divisor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        serde_json::from_str(s).map_err(|e| e.to_string())
    }
}

/// Basis of L(D) together with its dimension.
#[derive(Clone)]
pub struct RRBasis {
    pub basis: Vec<FunctionRep>,
    pub dimension: usize,
}

/// The divisor of `dx/y`: `(2g-2)·∞` in the odd-degree model.
pub fn canonical_divisor(c: &HyperellipticCurve) -> Divisor {
    Divisor::of_point(CurvePoint::Infinity, 2 * c.genus() as i64 - 2)
}

/// The residual divisor `K - D`, implementing the involution
/// `L -> ω ⊗ L^{-1}` on divisor classes.
pub fn iota(c: &HyperellipticCurve, d: &Divisor) -> Divisor {
    canonical_divisor(c).sub(d)
}

/// `h⁰(D) - h⁰(K - D) = deg D - g + 1`, exactly.
pub fn rr_identity_check(c: &HyperellipticCurve, d: &Divisor) -> Result<bool, CurveError> {
    let lhs = h0(c, d)? as i64 - h0(c, &iota(c, d))? as i64;
    Ok(lhs == d.degree() - c.genus() as i64 + 1)
}

// the shared core: denominator, degree bounds, condition matrix
struct Ansatz {
    den: QPoly,
    na: i64, // number of a-coefficients (da_max + 1, possibly 0)
    matrix: QMatrix,
}

fn build_ansatz(c: &HyperellipticCurve, d: &Divisor) -> Result<Ansatz, CurveError> {
    let g = c.genus() as i64;

    // den exponent per affine x-value, and the set of points where
    // vanishing conditions can arise (support plus conjugates)
    let mut den_exp: BTreeMap<Rat, i64> = BTreeMap::new();
    let mut cond_points: Vec<CurvePoint> = Vec::new();
    for (p, m) in d.support() {
        if let CurvePoint::Affine { x, .. } = p {
            *den_exp.entry(x.clone()).or_insert(0) += m.max(0);
            cond_points.push(p.clone());
            let conj = p.conjugate();
            if &conj != p && !cond_points.contains(&conj) {
                cond_points.push(conj);
            }
        }
    }
    let mut den = QPoly::one();
    let mut deg_den = 0i64;
    for (x_k, &e) in &den_exp {
        for _ in 0..e {
            den = &den * &QPoly::new(vec![-x_k, Rat::one()]);
        }
        deg_den += e;
    }

    let m = d.mult(&CurvePoint::Infinity) + 2 * deg_den;
    let na = (m.div_euclid(2) + 1).max(0);
    let nb = ((m - (2 * g + 1)).div_euclid(2) + 1).max(0);
    let cols = (na + nb) as usize;
    if cols == 0 {
        return Ok(Ansatz {
            den,
            na,
            matrix: QMatrix::zeros(0, 0),
        });
    }

    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for p in &cond_points {
        let (x0, y0) = match p {
            CurvePoint::Affine { x, y } => (x, y),
            CurvePoint::Infinity => unreachable!(),
        };
        let e = den_exp.get(x0).copied().unwrap_or(0);
        let ord_den = if y0.is_zero() { 2 * e } else { e };
        let need = ord_den - d.mult(p);
        if need <= 0 {
            continue;
        }
        let (x, y) = c.local_expansion(p, need + 2)?;
        // powers of x(t), then the first `need` coefficients of each
        // ansatz monomial
        let mut xpw = Vec::with_capacity(na.max(nb) as usize);
        let mut acc = crate::qalg::QLaurent::constant(Rat::one(), need + 2);
        for _ in 0..na.max(nb) {
            xpw.push(acc.clone());
            acc = &acc * &x;
        }
        for j in 0..need {
            let mut row = Vec::with_capacity(cols);
            for i in 0..na {
                row.push(xpw[i as usize].coeff(j)?);
            }
            for i in 0..nb {
                row.push((&xpw[i as usize] * &y).coeff(j)?);
            }
            rows.push(row);
        }
    }
    let matrix = if rows.is_empty() {
        QMatrix::zeros(0, cols)
    } else {
        QMatrix::from_rows(rows)
    };
    Ok(Ansatz { den, na, matrix })
}

/// Dimension of L(D).  Zero whenever `deg D < 0`.
pub fn h0(c: &HyperellipticCurve, d: &Divisor) -> Result<usize, CurveError> {
    if d.degree() < 0 {
        return Ok(0);
    }
    let a = build_ansatz(c, d)?;
    Ok(a.matrix.cols() - a.matrix.rank())
}

/// Explicit basis of L(D), with each member's divisor inequality
/// re-verified at the support of `D` through independent order
/// computations.
pub fn rr_space_basis(c: &HyperellipticCurve, d: &Divisor) -> Result<RRBasis, CurveError> {
    let a = build_ansatz(c, d)?;
    let mut basis = Vec::new();
    if a.matrix.cols() > 0 {
        for v in a.matrix.kernel_basis() {
            let ap = QPoly::new(v[..a.na as usize].to_vec());
            let bp = QPoly::new(v[a.na as usize..].to_vec());
            basis.push(FunctionRep::new(ap, bp, a.den.clone())?);
        }
    }
    for phi in &basis {
        for (p, m) in d.support() {
            let ord = c.function_order_at(phi, p)?;
            assert!(
                ord + m >= 0,
                "basis function {phi:?} violates the divisor bound at {p}: ord {ord}, mult {m}"
            );
        }
        let ord_inf = c.function_order_at(phi, &CurvePoint::Infinity)?;
        assert!(ord_inf + d.mult(&CurvePoint::Infinity) >= 0);
    }
    Ok(RRBasis {
        dimension: basis.len(),
        basis,
    })
}
