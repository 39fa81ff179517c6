//! Dense statevectors over `n` qudits of dimension `d`.
//!
//! Basis index `I` encodes the digits `j_{n-1} ... j_1 j_0` little-endian,
//! `I = sum_p j_p d^p`, so qudit 0 is the least significant (rightmost) digit
//! and `|j_{n-1} ... j_0>` prints in the usual right-to-left site order.

use std::fmt::Write as _;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Largest number of amplitudes a [`StateVector`] may hold.
pub const MAX_AMPLITUDES: usize = 1 << 31;

/// Tolerance used to call a state normalized.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Returns `d^n`, refusing anything above [`MAX_AMPLITUDES`].
pub fn checked_dimension(d: usize, n: usize) -> Result<usize> {
    let mut dim: usize = 1;
    for _ in 0..n {
        dim = dim
            .checked_mul(d)
            .filter(|&v| v <= MAX_AMPLITUDES)
            .ok_or(Error::CapacityExceeded { d, n })?;
    }
    Ok(dim)
}

/// Digit of qudit `position` in basis index `index`.
#[inline]
pub fn digit(index: usize, d: usize, position: usize) -> usize {
    (index / d.pow(position as u32)) % d
}

/// Digits of a basis state, least significant (qudit 0) first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisIndex {
    digits: Vec<usize>,
}

impl BasisIndex {
    pub fn new(digits: Vec<usize>) -> Self {
        BasisIndex { digits }
    }

    /// Decodes `index` into `n` base-`d` digits.
    pub fn from_index(mut index: usize, d: usize, n: usize) -> Self {
        let mut digits = Vec::with_capacity(n);
        for _ in 0..n {
            digits.push(index % d);
            index /= d;
        }
        BasisIndex { digits }
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Encodes the digits as a base-`d` integer.
    pub fn to_index(&self, d: usize) -> Result<usize> {
        let mut index = 0usize;
        for (position, &digit) in self.digits.iter().enumerate().rev() {
            if digit >= d {
                return Err(Error::DigitOutOfRange { position, digit, d });
            }
            index = index * d + digit;
        }
        Ok(index)
    }
}

impl From<Vec<usize>> for BasisIndex {
    fn from(digits: Vec<usize>) -> Self {
        BasisIndex::new(digits)
    }
}

/// Pure state of `n` qudits with `d` levels each.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    d: usize,
    n: usize,
    amps: Vec<C64>,
}

impl StateVector {
    /// Wraps an amplitude vector. Its length must be exactly `d^n`.
    pub fn from_amplitudes(d: usize, n: usize, amps: Vec<C64>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidState(format!("qudit dimension {d} < 2")));
        }
        if n < 1 {
            return Err(Error::InvalidState("a state needs at least one qudit".into()));
        }
        let dim = checked_dimension(d, n)?;
        if amps.len() != dim {
            return Err(Error::InvalidState(format!(
                "expected {dim} amplitudes for d={d}, n={n}, got {}",
                amps.len()
            )));
        }
        Ok(StateVector { d, n, amps })
    }

    /// Real amplitudes, promoted to complex.
    pub fn from_real(d: usize, n: usize, amps: Vec<f64>) -> Result<Self> {
        Self::from_amplitudes(d, n, amps.into_iter().map(|a| C64::new(a, 0.0)).collect())
    }

    /// The all-zero vector (not normalized); a starting point for sums.
    pub fn zeros(d: usize, n: usize) -> Result<Self> {
        let dim = checked_dimension(d, n)?;
        Self::from_amplitudes(d, n, vec![C64::new(0.0, 0.0); dim])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of amplitudes, `d^n`.
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amps[index]
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOLERANCE
    }

    /// Indices with a nonzero amplitude, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = (usize, C64)> + '_ {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.re != 0.0 || a.im != 0.0)
            .map(|(i, a)| (i, *a))
    }

    /// Returns `sum_t w_t |psi_t>`; all terms must share `d` and `n`.
    pub fn linear_combination(terms: &[(f64, &StateVector)]) -> Result<StateVector> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::InvalidState("empty linear combination".into()))?;
        let mut amps = vec![C64::new(0.0, 0.0); first.dim()];
        for (weight, state) in terms {
            check_same_shape(first, state)?;
            for (acc, a) in amps.iter_mut().zip(&state.amps) {
                *acc += a * weight;
            }
        }
        Ok(StateVector { d: first.d, n: first.n, amps })
    }

    /// Serializes as a header line `d n` followed by `index re im` for each
    /// nonzero amplitude, with 17 significant digits.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.d, self.n);
        for (index, a) in self.support() {
            writeln!(out, "{} {:.16e} {:.16e}", index, a.re, a.im).unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("missing header".into()))?;
        let mut head = header.split_whitespace();
        let d = parse_field::<usize>(head.next(), "d")?;
        let n = parse_field::<usize>(head.next(), "n")?;
        let mut state = StateVector::zeros(d, n)?;
        for line in lines {
            let mut fields = line.split_whitespace();
            let index = parse_field::<usize>(fields.next(), "index")?;
            let re = parse_field::<f64>(fields.next(), "re")?;
            let im = parse_field::<f64>(fields.next(), "im")?;
            if index >= state.dim() {
                return Err(Error::Parse(format!("index {index} out of range")));
            }
            state.amps[index] = C64::new(re, im);
        }
        Ok(state)
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [C64] {
        &mut self.amps
    }
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, name: &str) -> Result<T> {
    field
        .ok_or_else(|| Error::Parse(format!("missing field `{name}`")))?
        .parse()
        .map_err(|_| Error::Parse(format!("malformed field `{name}`")))
}

fn check_same_shape(a: &StateVector, b: &StateVector) -> Result<()> {
    if a.d != b.d || a.n != b.n {
        return Err(Error::DimensionMismatch(format!(
            "(d={}, n={}) vs (d={}, n={})",
            a.d, a.n, b.d, b.n
        )));
    }
    Ok(())
}

/// Computational basis state with the given digits (qudit 0 first).
pub fn basis_state(d: usize, digits: &BasisIndex) -> Result<StateVector> {
    let index = digits.to_index(d)?;
    let mut state = StateVector::zeros(d, digits.len())?;
    state.amps[index] = C64::new(1.0, 0.0);
    Ok(state)
}

/// `|a> (x) |b>`, with `a` occupying the high digits.
pub fn tensor(a: &StateVector, b: &StateVector) -> Result<StateVector> {
    if a.d != b.d {
        return Err(Error::DimensionMismatch(format!("d={} vs d={}", a.d, b.d)));
    }
    let n = a.n + b.n;
    checked_dimension(a.d, n)?;
    let mut amps = Vec::with_capacity(a.dim() * b.dim());
    for x in &a.amps {
        amps.extend(b.amps.iter().map(|y| x * y));
    }
    StateVector::from_amplitudes(a.d, n, amps)
}

/// `<a|b>`, conjugate-linear in `a`.
pub fn inner_product(a: &StateVector, b: &StateVector) -> Result<C64> {
    check_same_shape(a, b)?;
    Ok(a.amps.iter().zip(&b.amps).map(|(x, y)| x.conj() * y).sum())
}

/// `|<a|b>|^2`.
pub fn fidelity(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(inner_product(a, b)?.norm_sqr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn basis_state_examples() {
        let s = basis_state(3, &vec![0].into()).unwrap();
        assert_eq!(s.amplitudes(), &[c(1.0), c(0.0), c(0.0)]);

        let s = basis_state(2, &vec![1, 1, 0].into()).unwrap();
        assert_eq!(s.support().collect::<Vec<_>>(), vec![(3, c(1.0))]);

        let s = basis_state(3, &vec![2, 2].into()).unwrap();
        assert_eq!(s.support().collect::<Vec<_>>(), vec![(8, c(1.0))]);
        assert!(s.is_normalized());
    }

    #[test]
    fn basis_state_rejects_large_digit() {
        assert!(matches!(
            basis_state(3, &vec![0, 3].into()),
            Err(Error::DigitOutOfRange { position: 1, digit: 3, d: 3 })
        ));
    }

    #[test]
    fn tensor_puts_left_factor_high() {
        let zero = basis_state(2, &vec![0].into()).unwrap();
        let one = basis_state(2, &vec![1].into()).unwrap();
        let t = tensor(&zero, &one).unwrap();
        assert_eq!(t, basis_state(2, &vec![1, 0].into()).unwrap());
        assert_eq!(t.support().next().unwrap().0, 1);
    }

    #[test]
    fn tensor_bell_with_one() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let bell = StateVector::from_real(2, 2, vec![0.0, h, h, 0.0]).unwrap();
        let one = basis_state(2, &vec![1].into()).unwrap();
        let t = tensor(&bell, &one).unwrap();
        // (|01> + |10>)|1> = |011> + |101>  ->  indices 3 and 5
        assert_eq!(t.n(), 3);
        assert_eq!(t.support().map(|(i, _)| i).collect::<Vec<_>>(), vec![3, 5]);
        assert_eq!(t.amplitude(3), c(h));
    }

    #[test]
    fn tensor_dimension_mismatch() {
        let a = basis_state(2, &vec![0].into()).unwrap();
        let b = basis_state(3, &vec![0].into()).unwrap();
        assert!(matches!(tensor(&a, &b), Err(Error::DimensionMismatch(_))));
        assert!(matches!(inner_product(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn zero_qudits_rejected() {
        assert!(StateVector::from_amplitudes(2, 0, vec![c(1.0)]).is_err());
    }

    #[test]
    fn capacity_guard() {
        assert_eq!(checked_dimension(2, 31).unwrap(), 1 << 31);
        assert!(matches!(checked_dimension(2, 32), Err(Error::CapacityExceeded { .. })));
        assert!(matches!(StateVector::zeros(5, 14), Err(Error::CapacityExceeded { .. })));
    }

    #[test]
    fn inner_product_and_fidelity() {
        let zero = basis_state(2, &vec![0].into()).unwrap();
        let one = basis_state(2, &vec![1].into()).unwrap();
        assert_eq!(inner_product(&zero, &zero).unwrap(), c(1.0));
        assert_eq!(fidelity(&zero, &zero).unwrap(), 1.0);
        assert_eq!(fidelity(&zero, &one).unwrap(), 0.0);

        let a = StateVector::from_amplitudes(2, 1, vec![C64::new(0.0, 1.0), c(0.0)]).unwrap();
        // conjugate-linear in the first argument
        assert_eq!(inner_product(&a, &zero).unwrap(), C64::new(0.0, -1.0));
    }

    #[test]
    fn text_round_trip_is_exact() {
        let amps = vec![c(0.1), C64::new(-1.0 / 3.0, 2e-300), c(0.0), c(std::f64::consts::PI)];
        let s = StateVector::from_amplitudes(2, 2, amps).unwrap();
        let text = s.to_text();
        assert!(text.starts_with("2 2\n"));
        assert_eq!(text.lines().count(), 4);
        assert_eq!(StateVector::from_text(&text).unwrap(), s);
    }

    #[test]
    fn text_rejects_garbage() {
        assert!(StateVector::from_text("").is_err());
        assert!(StateVector::from_text("2 1\n5 1 0\n").is_err());
        assert!(StateVector::from_text("2 1\n0 x 0\n").is_err());
    }

    proptest! {
        #[test]
        fn index_digit_round_trip(d in 2usize..6, n in 1usize..6, seed in any::<u64>()) {
            let dim = checked_dimension(d, n).unwrap();
            let index = (seed as usize) % dim;
            let b = BasisIndex::from_index(index, d, n);
            prop_assert_eq!(b.to_index(d).unwrap(), index);
            for p in 0..n {
                prop_assert_eq!(b.digits()[p], digit(index, d, p));
            }
        }

        #[test]
        fn tensor_associative_and_norm_preserving(
            d in 2usize..4,
            xs in proptest::collection::vec(-1.0f64..1.0, 27),
        ) {
            let make = |off: usize| {
                let v: Vec<f64> = xs[off..off + d].to_vec();
                let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt().max(1e-3);
                StateVector::from_real(d, 1, v.iter().map(|x| x / norm).collect()).unwrap()
            };
            let (a, b, cc) = (make(0), make(d), make(2 * d));
            let left = tensor(&tensor(&a, &b).unwrap(), &cc).unwrap();
            let right = tensor(&a, &tensor(&b, &cc).unwrap()).unwrap();
            for (x, y) in left.amplitudes().iter().zip(right.amplitudes()) {
                prop_assert!((x - y).norm() <= 1e-15);
            }
            if a.is_normalized() && b.is_normalized() {
                assert_abs_diff_eq!(tensor(&a, &b).unwrap().norm_sqr(), 1.0, epsilon = 1e-12);
            }
        }
    }
}
