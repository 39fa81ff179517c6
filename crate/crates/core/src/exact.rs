//! Exact integer combinatorics and square roots of nonnegative rationals.

use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type BigRatio = Ratio<BigUint>;

/// `binom(a, b)`, zero for `b < 0` or `b > a`.
pub fn binomial(a: i64, b: i64) -> Result<BigUint> {
    if a < 0 {
        return Err(Error::NegativeUpperIndex(a));
    }
    Ok(binom(a as u64, b))
}

/// Infallible form for nonnegative upper index.
pub(crate) fn binom(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for t in 0..b {
        // acc = binom(a, t) at loop entry, so the division is exact
        acc = acc * (a - t) / (t + 1);
    }
    acc
}

pub(crate) fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, t| acc * t)
}

/// `n! / prod_j counts_j!`.
pub fn multinomial(n: usize, counts: &[usize]) -> Result<BigUint> {
    let total: usize = counts.iter().sum();
    if total != n {
        return Err(Error::SumMismatch { expected: n, got: total });
    }
    // product of successive binomials avoids the large factorial quotient
    let mut acc = BigUint::one();
    let mut placed = 0u64;
    for &c in counts {
        placed += c as u64;
        acc *= binom(placed, c as i64);
    }
    Ok(acc)
}

/// The nonnegative number `sqrt(p / q)` with `p/q` kept exact in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExactAmplitude {
    square: BigRatio,
}

impl ExactAmplitude {
    /// `sqrt(p / q)`; panics if `q == 0`.
    pub fn from_ratio(p: BigUint, q: BigUint) -> Self {
        ExactAmplitude { square: Ratio::new(p, q) }
    }

    pub fn from_square(square: BigRatio) -> Self {
        ExactAmplitude { square }
    }

    pub fn zero() -> Self {
        ExactAmplitude { square: Ratio::zero() }
    }

    pub fn one() -> Self {
        ExactAmplitude { square: Ratio::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.square.is_zero()
    }

    /// `p` of `sqrt(p/q)`.
    pub fn numerator(&self) -> &BigUint {
        self.square.numer()
    }

    /// `q` of `sqrt(p/q)`.
    pub fn denominator(&self) -> &BigUint {
        self.square.denom()
    }

    /// The exact rational `p/q`.
    pub fn square(&self) -> &BigRatio {
        &self.square
    }

    pub fn mul(&self, other: &ExactAmplitude) -> ExactAmplitude {
        ExactAmplitude { square: &self.square * &other.square }
    }

    /// Nearest-ish double: the integer square root is taken with 64+ bits of
    /// headroom, so the only rounding is the final conversion.
    pub fn to_f64(&self) -> f64 {
        let (p, q) = (self.square.numer(), self.square.denom());
        if p.is_zero() {
            return 0.0;
        }
        // choose shift so that p * 4^shift / q >= 2^130
        let deficit = 130 + q.bits() as i64 - p.bits() as i64;
        let shift = if deficit > 0 { (deficit + 1) / 2 } else { 0 };
        let scaled = if shift > 0 {
            (p << (2 * shift as u64)) / q
        } else {
            p / q
        };
        let root = scaled.sqrt();
        let value = root.to_f64().expect("finite for representable amplitudes");
        value * 2f64.powi(-(shift as i32))
    }
}

impl fmt::Display for ExactAmplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sqrt({}/{})", self.square.numer(), self.square.denom())
    }
}
