//! Exact arithmetic substrate: rationals, binomials and sparse polynomials.

mod poly;
mod rational;

pub use poly::{
    grlex_desc, poly_arith, render_monomial, render_sum, ArithOp, Exponents, Polynomial,
    SymbolicError, VarSet, DEFAULT_EXPONENT_CAP,
};
pub use rational::{ParseRationalError, Rational};

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// The binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// A map of polynomials, one per coordinate.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMap {
    pub x: Polynomial,
    pub y: Polynomial,
}

impl PolyMap {
    pub fn new(x: Polynomial, y: Polynomial) -> Result<Self, SymbolicError> {
        if x.vars() != y.vars() {
            return Err(SymbolicError::VarSetMismatch(
                x.vars().names().join(", "),
                y.vars().names().join(", "),
            ));
        }
        Ok(PolyMap { x, y })
    }

    pub fn vars(&self) -> &VarSet {
        self.x.vars()
    }
}
