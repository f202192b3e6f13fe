//! Truncated Laurent series in one variable `t` over the rationals.
//!
//! A series is a window of exactly known coefficients: the invariant is
//! that every exponent in `[val, prec)` is stored (trailing known
//! zeros included) and nothing at or above `prec` is claimed.  The
//! leading stored coefficient is nonzero; a series that is zero to its
//! precision stores no coefficients and has `val == prec`.
//!
//! Precision bookkeeping follows the usual rules: `min` of the two
//! precisions for sums, `min(val_a + prec_b, val_b + prec_a)` for
//! products, and relative precision is preserved by inversion and
//! square root.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::rat::Rat;
use super::QalgError;

#[derive(Clone, PartialEq, Eq)]
pub struct QLaurent {
    val: i64,
    coeffs: Vec<Rat>,
    prec: i64,
}

impl QLaurent {
    fn normalized(mut val: i64, mut coeffs: Vec<Rat>, prec: i64) -> Self {
        debug_assert_eq!(val + coeffs.len() as i64, prec);
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            coeffs.drain(..lead);
            val += lead as i64;
        }
        QLaurent { val, coeffs, prec }
    }

    /// Series with the given leading exponent and coefficient window.
    /// The precision is `val + coeffs.len()`.
    pub fn new(val: i64, coeffs: Vec<Rat>) -> Self {
        let prec = val + coeffs.len() as i64;
        QLaurent::normalized(val, coeffs, prec)
    }

    /// The zero series known to `O(t^prec)`.
    pub fn zero_to_prec(prec: i64) -> Self {
        QLaurent {
            val: prec,
            coeffs: Vec::new(),
            prec,
        }
    }

    /// `c * t^exp` known to `O(t^prec)`.
    pub fn monomial(exp: i64, c: Rat, prec: i64) -> Self {
        if exp >= prec || c.is_zero() {
            return QLaurent::zero_to_prec(prec);
        }
        let mut coeffs = vec![c];
        coeffs.resize((prec - exp) as usize, Rat::zero());
        QLaurent {
            val: exp,
            coeffs,
            prec,
        }
    }

    pub fn constant(c: Rat, prec: i64) -> Self {
        QLaurent::monomial(0, c, prec)
    }

    /// `true` when no nonzero coefficient is known.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading exponent, `None` when zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn precision(&self) -> i64 {
        self.prec
    }

    /// Coefficient of `t^e`; exponents at or above the precision are
    /// not known and yield an error.
    pub fn coeff(&self, e: i64) -> Result<Rat, QalgError> {
        if e >= self.prec {
            return Err(QalgError::PrecisionTooSmall {
                wanted: e,
                prec: self.prec,
            });
        }
        if e < self.val {
            return Ok(Rat::zero());
        }
        Ok(self.coeffs[(e - self.val) as usize].clone())
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.coeffs.first()
    }

    /// Drops knowledge above `new_prec`.
    pub fn truncate(&self, new_prec: i64) -> Self {
        if new_prec >= self.prec {
            return self.clone();
        }
        if new_prec <= self.val {
            return QLaurent::zero_to_prec(new_prec);
        }
        QLaurent::normalized(
            self.val,
            self.coeffs[..(new_prec - self.val) as usize].to_vec(),
            new_prec,
        )
    }

    pub fn mul_scalar(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return QLaurent::zero_to_prec(self.prec);
        }
        QLaurent {
            val: self.val,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
            prec: self.prec,
        }
    }

    /// Multiplication by `t^k` (exact exponent shift).
    pub fn mul_tpow(&self, k: i64) -> Self {
        QLaurent {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec + k,
        }
    }

    /// Effective valuation used by the precision rules: for a series
    /// that is zero to precision this is the precision itself.
    fn val_bound(&self) -> i64 {
        self.val
    }

    pub fn pow(&self, e: u32) -> Self {
        let head = self.prec - self.val_bound().min(0) * e as i64;
        let mut acc = QLaurent::constant(Rat::one(), head);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; requires a nonzero leading coefficient.
    /// Relative precision is preserved.
    pub fn invert(&self) -> Result<Self, QalgError> {
        if self.is_zero() {
            return Err(QalgError::ZeroSeries(self.prec));
        }
        let n = self.coeffs.len();
        let c0_inv = self.coeffs[0].recip();
        let mut out = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            let mut s = Rat::zero();
            for j in 0..k {
                s = s + &out[j] * &self.coeffs[k - j];
            }
            out.push(-(s * &c0_inv));
        }
        Ok(QLaurent::normalized(-self.val, out, -self.val + n as i64))
    }

    /// Square root with the branch pinned by `root0`, which must
    /// square to the leading coefficient.  The valuation must be even
    /// and relative precision is preserved.
    pub fn sqrt(&self, root0: &Rat) -> Result<Self, QalgError> {
        if self.is_zero() {
            return Err(QalgError::ZeroSeries(self.prec));
        }
        if self.val % 2 != 0 {
            return Err(QalgError::OddValuation(self.val));
        }
        if root0 * root0 != self.coeffs[0] {
            return Err(QalgError::LeadingNotSquare {
                leading: self.coeffs[0].to_string(),
                root0: root0.to_string(),
            });
        }
        let n = self.coeffs.len();
        let mut out = Vec::with_capacity(n);
        out.push(root0.clone());
        let denom = (Rat::from_int(2) * root0).recip();
        for k in 1..n {
            let mut s = Rat::zero();
            for j in 1..k {
                s = s + &out[j] * &out[k - j];
            }
            out.push((&self.coeffs[k] - &s) * &denom);
        }
        Ok(QLaurent::normalized(
            self.val / 2,
            out,
            self.val / 2 + n as i64,
        ))
    }

    /// Term-by-term derivative `d/dt`.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return QLaurent::zero_to_prec(self.prec - 1);
        }
        let coeffs: Vec<Rat> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| Rat::from_int(self.val + i as i64) * c)
            .collect();
        QLaurent::normalized(self.val - 1, coeffs, self.prec - 1)
    }
}

// ---- arithmetic ----

impl Add<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        let prec = self.prec.min(rhs.prec);
        let val = self.val_bound().min(rhs.val_bound()).min(prec);
        let mut coeffs = vec![Rat::zero(); (prec - val) as usize];
        for src in [self, rhs] {
            for (i, c) in src.coeffs.iter().enumerate() {
                let e = src.val + i as i64;
                if e < prec {
                    let slot = &mut coeffs[(e - val) as usize];
                    *slot = &*slot + c;
                }
            }
        }
        QLaurent::normalized(val, coeffs, prec)
    }
}

impl Sub<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        self + &(-rhs)
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }
}

impl Mul<&QLaurent> for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        let prec = (self.val_bound() + rhs.prec).min(rhs.val_bound() + self.prec);
        if self.is_zero() || rhs.is_zero() {
            return QLaurent::zero_to_prec(prec);
        }
        let val = self.val + rhs.val;
        let mut coeffs = vec![Rat::zero(); (prec - val) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let e = val + (i + j) as i64;
                if e >= prec {
                    break;
                }
                let slot = &mut coeffs[(i + j) as usize];
                *slot = &*slot + &(a * b);
            }
        }
        QLaurent::normalized(val, coeffs, prec)
    }
}

macro_rules! laurent_binop_forward {
    ($trait:ident, $method:ident) => {
        impl $trait<QLaurent> for QLaurent {
            type Output = QLaurent;
            fn $method(self, rhs: QLaurent) -> QLaurent {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QLaurent> for QLaurent {
            type Output = QLaurent;
            fn $method(self, rhs: &QLaurent) -> QLaurent {
                (&self).$method(rhs)
            }
        }
        impl $trait<QLaurent> for &QLaurent {
            type Output = QLaurent;
            fn $method(self, rhs: QLaurent) -> QLaurent {
                self.$method(&rhs)
            }
        }
    };
}

laurent_binop_forward!(Add, add);
laurent_binop_forward!(Sub, sub);
laurent_binop_forward!(Mul, mul);

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.val + i as i64;
            if wrote {
                if c.is_negative() {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            wrote = true;
            let a = c.abs();
            if e == 0 {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                if e == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{e}")?;
                }
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " + O(t^{})", self.prec)
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
