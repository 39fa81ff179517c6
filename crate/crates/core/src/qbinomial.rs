//! Gaussian (q-)binomial coefficients as exact integer polynomials in `q`.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Polynomial with coefficients `coeffs[t]` of `q^t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPolynomial {
    coeffs: Vec<BigUint>,
}

impl QPolynomial {
    pub fn one() -> Self {
        QPolynomial { coeffs: vec![BigUint::one()] }
    }

    pub fn zero() -> Self {
        QPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    /// Coefficient of `q^power` (zero beyond the degree).
    pub fn coeff(&self, power: usize) -> BigUint {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    /// Value at `q = 1`.
    pub fn sum_coeffs(&self) -> BigUint {
        self.coeffs.iter().sum()
    }

    fn add_shifted(&mut self, other: &QPolynomial, shift: usize) {
        if self.coeffs.len() < other.coeffs.len() + shift {
            self.coeffs.resize(other.coeffs.len() + shift, BigUint::zero());
        }
        for (t, c) in other.coeffs.iter().enumerate() {
            self.coeffs[t + shift] += c;
        }
    }
}

/// `[a choose b]_q` via `[a, b] = [a-1, b-1] + q^b [a-1, b]`.
pub fn gaussian_binomial(a: usize, b: usize) -> QPolynomial {
    if b > a {
        return QPolynomial::zero();
    }
    // row[t] holds [r choose t]_q for the current row r
    let mut row: Vec<QPolynomial> = vec![QPolynomial::one()];
    for r in 1..=a {
        let mut next = Vec::with_capacity(r + 1);
        for t in 0..=r.min(b) {
            let mut p = QPolynomial::zero();
            if t >= 1 {
                p.add_shifted(&row[t - 1], 0);
            }
            if t < row.len() {
                p.add_shifted(&row[t], t);
            }
            next.push(p);
        }
        row = next;
    }
    row.swap_remove(b)
}
