//! Exact and numeric computation of the vanishing order of the Riemann
//! theta function of a hyperelliptic curve along the flow direction of a
//! marked point.
//!
//! The crate is split into an exact half and a numeric half.  The exact
//! half works over the rationals end to end: curves `y^2 = f(x)` with
//! `f` squarefree of odd degree, Riemann-Roch spaces of divisors on
//! them, and three independent order formulas built on top of the
//! dimension counts (a step-set sum, an inflectionary weight, and a
//! gap-integer sum).  The numeric half builds period matrices, the
//! Abel-Jacobi map and the theta function in floating point, and
//! recovers the same order as a winding number, which gives an
//! end-to-end cross-check of the exact pipeline against honest numerics.

pub mod qalg;
pub mod curve;
pub mod rrspace;
pub mod vanishing;
pub mod thetanum;
pub mod cli;
pub mod selftest;
