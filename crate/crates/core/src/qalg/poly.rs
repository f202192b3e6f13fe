//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored low degree first with no trailing zeros, so
//! the zero polynomial is the empty vector and `degree()` is `None`
//! for it.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::laurent::QLaurent;
use super::rat::Rat;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    /// Builds a polynomial from coefficients in ascending degree,
    /// trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Rat::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rat::one())
    }

    pub fn x() -> Self {
        QPoly::new(vec![Rat::zero(), Rat::one()])
    }

    pub fn constant(c: Rat) -> Self {
        QPoly::new(vec![c])
    }

    pub fn monomial(deg: usize, c: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); deg];
        coeffs.push(c);
        QPoly::new(coeffs)
    }

    /// Convenience constructor from small integers, ascending degree.
    pub fn of_ints(cs: &[i64]) -> Self {
        QPoly::new(cs.iter().map(|&c| Rat::from_int(c)).collect())
    }

    /// Monic product of `x - r` over the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        let mut p = QPoly::one();
        for r in roots {
            p = &p * &QPoly::new(vec![-r, Rat::one()]);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return QPoly::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Rat::from_int(i as i64) * c)
                .collect(),
        )
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    /// Panics on a zero divisor.
    pub fn div_rem(&self, div: &QPoly) -> (QPoly, QPoly) {
        assert!(!div.is_zero(), "polynomial division by zero");
        let d = div.coeffs.len() - 1;
        let lead_inv = div.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (QPoly::zero(), QPoly { coeffs: rem });
        }
        let mut quo = vec![Rat::zero(); rem.len() - d];
        for k in (d..rem.len()).rev() {
            let c = &rem[k] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for j in 0..d {
                rem[k - d + j] = &rem[k - d + j] - &(&c * &div.coeffs[j]);
            }
            rem[k] = Rat::zero();
            quo[k - d] = c;
        }
        (QPoly::new(quo), QPoly::new(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Substitution `self(g(x))` as a polynomial.
    pub fn compose(&self, g: &QPoly) -> QPoly {
        let mut acc = QPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * g + QPoly::constant(c.clone());
        }
        acc
    }

    /// Substitution of a Laurent series for the variable.  The result
    /// precision follows the product rule on every Horner step, so for
    /// an argument of valuation `v <= 0` known to `O(t^P)` the result
    /// is known to `O(t^{P + (deg-1) v})`.
    pub fn eval_laurent(&self, x: &QLaurent) -> QLaurent {
        let deg = match self.degree() {
            None => return QLaurent::zero_to_prec(x.precision()),
            Some(d) => d as i64,
        };
        let vneg = x.valuation().unwrap_or(x.precision()).min(0);
        let target = x.precision() + vneg * (deg - 1).max(0);
        let mut acc = QLaurent::constant(self.coeffs[deg as usize].clone(), target);
        for i in (0..deg).rev() {
            acc = &(&acc * x) + &QLaurent::constant(self.coeff(i as usize), target);
        }
        acc
    }

    /// Clears denominators and the content: returns integer
    /// coefficients of the primitive associate, ascending degree.
    pub(crate) fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for n in &ints {
            content = content.gcd(n);
        }
        ints.iter().map(|n| n / &content).collect()
    }

    /// All rational roots, each listed once, in increasing order.
    pub fn rational_roots(&self) -> Vec<Rat> {
        assert!(!self.is_zero(), "rational roots of the zero polynomial");
        let mut ints = self.primitive_integer_coeffs();
        let mut roots = Vec::new();
        let mut shift = 0usize;
        while ints[shift].is_zero() {
            shift += 1;
        }
        if shift > 0 {
            roots.push(Rat::zero());
            ints.drain(..shift);
        }
        if ints.len() > 1 {
            let p_divs = super::intfact::divisors(ints[0].magnitude());
            let q_divs = super::intfact::divisors(ints[ints.len() - 1].magnitude());
            for p in &p_divs {
                for q in &q_divs {
                    for sign in [1i64, -1] {
                        let cand = Rat::from_big(BigInt::from(p.clone()) * sign, BigInt::from(q.clone()));
                        if self.eval(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

// ---- arithmetic ----

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! poly_binop_forward {
    ($trait:ident, $method:ident) => {
        impl $trait<QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                self.$method(&rhs)
            }
        }
    };
}

poly_binop_forward!(Add, add);
poly_binop_forward!(Sub, sub);
poly_binop_forward!(Mul, mul);

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
