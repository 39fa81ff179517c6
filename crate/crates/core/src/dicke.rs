//! Spin-s Dicke states and their exact combinatorics.
//!
//! A state is named by `(2s, n, k)`: `n` sites of spin `s` (qudit dimension
//! `d = 2s + 1`) and `k` applications of the total lowering operator to the
//! all-up state `|0...0>`. Spin is stored doubled so half-integer values stay
//! integral.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigUint;
use num_complex::Complex64 as C64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binom, factorial, multinomial, BigRatio, ExactAmplitude};
use crate::qbinomial::gaussian_binomial;
use crate::qudit::{basis_state, checked_dimension, BasisIndex, StateVector};

/// The triple `(2s, n, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DickeSpec {
    s2: usize,
    n: usize,
    k: usize,
}

impl DickeSpec {
    pub fn new(s2: usize, n: usize, k: usize) -> Result<Self> {
        if s2 < 1 {
            return Err(Error::InvalidSpec("2s must be at least 1".into()));
        }
        if n < 1 {
            return Err(Error::InvalidSpec("n must be at least 1".into()));
        }
        if k > s2 * n {
            return Err(Error::InvalidSpec(format!("k={k} exceeds 2sn={}", s2 * n)));
        }
        Ok(DickeSpec { s2, n, k })
    }

    /// Twice the spin.
    pub fn s2(&self) -> usize {
        self.s2
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Qudit dimension `2s + 1`.
    pub fn d(&self) -> usize {
        self.s2 + 1
    }

    /// Largest excitation number, `2sn`.
    pub fn max_k(&self) -> usize {
        self.s2 * self.n
    }

    /// `floor(k / 2s)`.
    pub fn ell(&self) -> usize {
        self.k / self.s2
    }

    /// `k - 2s * ell`.
    pub fn i(&self) -> usize {
        self.k % self.s2
    }

    /// Same spin and size, excitation `2sn - k`.
    pub fn dual(&self) -> DickeSpec {
        DickeSpec { k: self.max_k() - self.k, ..*self }
    }

    /// Same spin with other `n`, `k` (validated).
    pub fn with(&self, n: usize, k: usize) -> Result<DickeSpec> {
        DickeSpec::new(self.s2, n, k)
    }
}

impl fmt::Display for DickeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s2.is_multiple_of(2) {
            write!(f, "s={}, n={}, k={}", self.s2 / 2, self.n, self.k)
        } else {
            write!(f, "s={}/2, n={}, k={}", self.s2, self.n, self.k)
        }
    }
}

/// Occupation numbers `(k_0, ..., k_{d-1})`: `k_j` qudits sit in level `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KVector(Vec<usize>);

impl KVector {
    pub fn new(counts: Vec<usize>) -> Self {
        KVector(counts)
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    /// `sum_j k_j`.
    pub fn sites(&self) -> usize {
        self.0.iter().sum()
    }

    /// `sum_j j k_j`.
    pub fn weight(&self) -> usize {
        self.0.iter().enumerate().map(|(j, c)| j * c).sum()
    }

    fn solves(&self, spec: &DickeSpec) -> bool {
        self.0.len() == spec.d() && self.sites() == spec.n && self.weight() == spec.k
    }
}

impl From<Vec<usize>> for KVector {
    fn from(v: Vec<usize>) -> Self {
        KVector(v)
    }
}

impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `a = 1 / (k! sqrt(binom(2sn, k)))`.
pub fn normalization_a(spec: &DickeSpec) -> ExactAmplitude {
    let kf = factorial(spec.k as u64);
    let denom = &kf * &kf * binom(spec.max_k() as u64, spec.k as i64);
    ExactAmplitude::from_ratio(BigUint::one(), denom)
}

/// Recursion coefficient `c_{n,k,j} = sqrt(binom(2s,j) binom(2sn-2s,k-j) / binom(2sn,k))`.
pub fn coeff_c(spec: &DickeSpec, j: usize) -> Result<ExactAmplitude> {
    if j > spec.s2 {
        return Err(Error::LevelOutOfRange { level: j, d: spec.d() });
    }
    let s2 = spec.s2 as u64;
    let num = binom(s2, j as i64) * binom(s2 * (spec.n as u64 - 1), spec.k as i64 - j as i64);
    Ok(ExactAmplitude::from_ratio(num, binom(s2 * spec.n as u64, spec.k as i64)))
}

/// All `2s + 1` recursion coefficients for `spec`.
pub fn coeffs_c(spec: &DickeSpec) -> Vec<ExactAmplitude> {
    (0..=spec.s2).map(|j| coeff_c(spec, j).expect("j in range")).collect()
}

/// Nonzero amplitudes of the closed form, each an exact square root:
/// `sqrt(prod_p binom(2s, j_p) / binom(2sn, k))` on every basis state with digit sum `k`.
pub fn closed_form_exact(spec: &DickeSpec) -> Result<Vec<(usize, ExactAmplitude)>> {
    let d = spec.d();
    let dim = checked_dimension(d, spec.n)?;
    let denom = binom(spec.max_k() as u64, spec.k as i64);
    let level_weights: Vec<BigUint> = (0..d).map(|j| binom(spec.s2 as u64, j as i64)).collect();
    let mut out = Vec::new();
    for index in 0..dim {
        let digits = BasisIndex::from_index(index, d, spec.n);
        if digits.digits().iter().sum::<usize>() != spec.k {
            continue;
        }
        let weight: BigUint = digits.digits().iter().map(|&j| &level_weights[j]).product();
        out.push((index, ExactAmplitude::from_ratio(weight, denom.clone())));
    }
    Ok(out)
}

/// Closed-form spin-s Dicke state with nonnegative real amplitudes.
pub fn closed_form_state(spec: &DickeSpec) -> Result<StateVector> {
    let mut state = StateVector::zeros(spec.d(), spec.n)?;
    // equal rationals must produce identical doubles
    let mut cache: HashMap<BigRatio, f64> = HashMap::new();
    let amps = state.amps_mut();
    for (index, amp) in closed_form_exact(spec)? {
        let value = *cache.entry(amp.square().clone()).or_insert_with(|| amp.to_f64());
        amps[index] = C64::new(value, 0.0);
    }
    Ok(state)
}

/// Product state `|0>^(n-l-1) |i> |2s>^l` the preparation circuits start from.
pub fn reference_state(spec: &DickeSpec) -> StateVector {
    basis_state(spec.d(), &reference_digits(spec).into()).expect("digits are valid by construction")
}

/// Digits of [`reference_state`], qudit 0 first.
pub fn reference_digits(spec: &DickeSpec) -> Vec<usize> {
    let (ell, i) = (spec.ell(), spec.i());
    (0..spec.n)
        .map(|p| if p < ell { spec.s2 } else if p == ell { i } else { 0 })
        .collect()
}

/// Equal superposition of all distinct arrangements of the multiset with
/// occupations `kvec`.
pub fn qudit_dicke_state(d: usize, n: usize, kvec: &KVector) -> Result<StateVector> {
    if kvec.counts().len() != d {
        return Err(Error::DimensionMismatch(format!(
            "occupation vector of length {} for d={d}",
            kvec.counts().len()
        )));
    }
    let size = multinomial(n, kvec.counts())?;
    let amp = ExactAmplitude::from_ratio(BigUint::one(), size).to_f64();
    let mut state = StateVector::zeros(d, n)?;
    let dim = state.dim();
    let amps = state.amps_mut();
    let mut counts = vec![0usize; d];
    for (index, slot) in amps.iter_mut().enumerate().take(dim) {
        counts.iter_mut().for_each(|c| *c = 0);
        for &digit in BasisIndex::from_index(index, d, n).digits() {
            counts[digit] += 1;
        }
        if counts == kvec.counts() {
            *slot = C64::new(amp, 0.0);
        }
    }
    Ok(state)
}

/// Solutions of `sum_j k_j = n`, `sum_j j k_j = k`, in lexicographic order.
pub fn enumerate_kvectors(spec: &DickeSpec) -> Vec<KVector> {
    fn go(level: usize, top: usize, sites: usize, weight: usize, cur: &mut Vec<usize>, out: &mut Vec<KVector>) {
        if level == top {
            if sites * top == weight {
                cur.push(sites);
                out.push(KVector(cur.clone()));
                cur.pop();
            }
            return;
        }
        for c in 0..=sites {
            let rest = sites - c;
            let used = level * c;
            if used > weight {
                break;
            }
            let remaining = weight - used;
            // the rest must fit between levels level+1 and top
            if remaining < (level + 1) * rest || remaining > top * rest {
                continue;
            }
            cur.push(c);
            go(level + 1, top, rest, remaining, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, spec.s2, spec.n, spec.k, &mut Vec::with_capacity(spec.d()), &mut out);
    out
}

/// Number of occupation vectors for `spec`, read off the coefficient of `q^k`
/// in the Gaussian binomial `[n + 2s choose 2s]_q`.
pub fn g_count(spec: &DickeSpec) -> BigUint {
    gaussian_binomial(spec.n + spec.s2, spec.s2).coeff(spec.k)
}

/// Weight of qudit Dicke state `kvec` in the spin-s Dicke state:
/// `sqrt(multinomial(n; kvec) prod_j binom(2s, j)^{k_j} / binom(2sn, k))`.
pub fn alpha_coeff(spec: &DickeSpec, kvec: &KVector) -> Result<ExactAmplitude> {
    if !kvec.solves(spec) {
        return Err(Error::NotASolution { s2: spec.s2, n: spec.n, k: spec.k });
    }
    Ok(ExactAmplitude::from_ratio(alpha_numerator(spec, kvec), binom(spec.max_k() as u64, spec.k as i64)))
}

/// `multinomial(n; kvec) prod_j binom(2s, j)^{k_j}`, the summand of the
/// counting identity.
pub fn alpha_numerator(spec: &DickeSpec, kvec: &KVector) -> BigUint {
    let mut acc = multinomial(spec.n, kvec.counts()).expect("counts sum to n");
    for (j, &c) in kvec.counts().iter().enumerate() {
        acc *= num_traits::pow(binom(spec.s2 as u64, j as i64), c);
    }
    acc
}

/// Expansion over qudit Dicke states.
pub fn decompose(spec: &DickeSpec) -> Vec<(KVector, ExactAmplitude)> {
    enumerate_kvectors(spec)
        .into_iter()
        .map(|kv| {
            let alpha = alpha_coeff(spec, &kv).expect("enumerated vectors solve the constraints");
            (kv, alpha)
        })
        .collect()
}

/// `sum alpha(kvec) |D^n(kvec)>` as a statevector.
pub fn decomposition_state(spec: &DickeSpec) -> Result<StateVector> {
    let terms = decompose(spec)
        .into_iter()
        .map(|(kv, alpha)| Ok((alpha.to_f64(), qudit_dicke_state(spec.d(), spec.n, &kv)?)))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<(f64, &StateVector)> = terms.iter().map(|(w, s)| (*w, s)).collect();
    StateVector::linear_combination(&refs)
}

/// One line per term: `k0 k1 ... k2s  p q` with `alpha = sqrt(p/q)`.
pub fn decomposition_text(spec: &DickeSpec) -> String {
    decompose(spec)
        .iter()
        .map(|(kv, a)| format!("{}  {} {}\n", kv, a.numerator(), a.denominator()))
        .collect()
}

/// Parses [`decomposition_text`] output.
pub fn parse_decomposition(text: &str) -> Result<Vec<(KVector, ExactAmplitude)>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 3 {
                return Err(Error::Parse(format!("short decomposition line `{line}`")));
            }
            let (counts, pq) = fields.split_at(fields.len() - 2);
            let counts = counts
                .iter()
                .map(|f| f.parse::<usize>().map_err(|_| Error::Parse(format!("bad count `{f}`"))))
                .collect::<Result<Vec<_>>>()?;
            let big = |f: &str| f.parse::<BigUint>().map_err(|_| Error::Parse(format!("bad integer `{f}`")));
            let (p, q) = (big(pq[0])?, big(pq[1])?);
            if q.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok((KVector(counts), ExactAmplitude::from_ratio(p, q)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qudit::{fidelity, inner_product, tensor};
    use num_rational::Ratio;

    fn spec(s2: usize, n: usize, k: usize) -> DickeSpec {
        DickeSpec::new(s2, n, k).unwrap()
    }

    fn amp(p: u64, q: u64) -> ExactAmplitude {
        ExactAmplitude::from_ratio(BigUint::from(p), BigUint::from(q))
    }

    fn idx(d: usize, digits_high_first: &[usize]) -> usize {
        digits_high_first.iter().fold(0, |acc, &x| acc * d + x)
    }

    fn max_diff(a: &StateVector, b: &StateVector) -> f64 {
        a.amplitudes()
            .iter()
            .zip(b.amplitudes())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    #[test]
    fn spec_validation_and_derived() {
        assert!(DickeSpec::new(0, 2, 0).is_err());
        assert!(DickeSpec::new(2, 0, 0).is_err());
        assert!(DickeSpec::new(2, 3, 7).is_err());
        let s = spec(2, 3, 3);
        assert_eq!((s.d(), s.ell(), s.i(), s.max_k()), (3, 1, 1, 6));
        let top = spec(3, 4, 12);
        assert_eq!((top.ell(), top.i()), (4, 0));
        assert_eq!(spec(1, 4, 3).dual().k(), 1);
        assert_eq!(spec(3, 2, 1).to_string(), "s=3/2, n=2, k=1");
        assert_eq!(spec(2, 2, 1).to_string(), "s=1, n=2, k=1");
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalization_a(&spec(1, 1, 1)), ExactAmplitude::one());
        assert_eq!(normalization_a(&spec(1, 2, 1)), amp(1, 2));
        // 1 / (2 sqrt 15) = sqrt(1/60)
        assert_eq!(normalization_a(&spec(2, 3, 2)), amp(1, 60));
    }

    #[test]
    fn coeff_examples() {
        let s = spec(2, 2, 2);
        assert_eq!(coeffs_c(&s), vec![amp(1, 6), amp(2, 3), amp(1, 6)]);
        assert!(coeff_c(&spec(2, 2, 1), 2).unwrap().is_zero());
        assert!(matches!(coeff_c(&s, 3), Err(Error::LevelOutOfRange { level: 3, d: 3 })));
        // Vandermonde: sum of squares is one
        let total: BigRatio = coeffs_c(&spec(1, 3, 2)).iter().map(|c| c.square().clone()).sum();
        assert_eq!(total, Ratio::one());
    }

    #[test]
    fn closed_form_qubit_example() {
        let st = closed_form_state(&spec(1, 3, 2)).unwrap();
        let third = amp(1, 3).to_f64();
        let support: Vec<_> = st.support().collect();
        assert_eq!(support.len(), 3);
        for (i, a) in support {
            assert!([idx(2, &[0, 1, 1]), idx(2, &[1, 0, 1]), idx(2, &[1, 1, 0])].contains(&i));
            assert_eq!(a.re, third);
        }
        let exact = closed_form_exact(&spec(1, 3, 2)).unwrap();
        assert!(exact.iter().all(|(_, a)| *a == amp(1, 3)));
    }

    #[test]
    fn closed_form_spin_one_example() {
        let exact: HashMap<usize, ExactAmplitude> = closed_form_exact(&spec(2, 3, 2)).unwrap().into_iter().collect();
        assert_eq!(exact.len(), 6);
        for digits in [[0, 1, 1], [1, 0, 1], [1, 1, 0]] {
            assert_eq!(exact[&idx(3, &digits)], amp(4, 15));
        }
        for digits in [[0, 0, 2], [0, 2, 0], [2, 0, 0]] {
            assert_eq!(exact[&idx(3, &digits)], amp(1, 15));
        }
        let st = closed_form_state(&spec(2, 3, 2)).unwrap();
        // sqrt(4/15) = 0.51639777949432225135...
        assert_eq!(st.amplitude(idx(3, &[0, 1, 1])).re, 0.5163977794943223);
    }

    #[test]
    fn closed_form_k_zero_is_all_up() {
        let st = closed_form_state(&spec(3, 3, 0)).unwrap();
        assert_eq!(st, basis_state(4, &vec![0, 0, 0].into()).unwrap());
    }

    #[test]
    fn normalization_exact() {
        for s2 in 1..=4 {
            for n in 1..=4 {
                for k in 0..=s2 * n {
                    let total: BigRatio = closed_form_exact(&spec(s2, n, k))
                        .unwrap()
                        .into_iter()
                        .map(|(_, a)| a.square().clone())
                        .sum();
                    assert_eq!(total, Ratio::one(), "2s={s2} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn recursion_identity() {
        for s2 in 1..=4 {
            for n in 2..=4 {
                for k in 0..=s2 * n {
                    let s = spec(s2, n, k);
                    let full = closed_form_state(&s).unwrap();
                    let mut acc = StateVector::zeros(s.d(), n).unwrap();
                    for j in 0..=s2 {
                        if j > k || k - j > s2 * (n - 1) {
                            assert!(coeff_c(&s, j).unwrap().is_zero());
                            continue;
                        }
                        let sub = closed_form_state(&spec(s2, n - 1, k - j)).unwrap();
                        let site = basis_state(s.d(), &vec![j].into()).unwrap();
                        let term = tensor(&sub, &site).unwrap();
                        let c = coeff_c(&s, j).unwrap().to_f64();
                        acc = StateVector::linear_combination(&[(1.0, &acc), (c, &term)]).unwrap();
                    }
                    assert!(max_diff(&acc, &full) <= 1e-12, "2s={s2} n={n} k={k}");
                }
            }
        }
    }

    #[test]
    fn reference_state_examples() {
        assert_eq!(reference_digits(&spec(2, 3, 3)), vec![2, 1, 0]);
        assert_eq!(reference_state(&spec(2, 3, 3)), basis_state(3, &vec![2, 1, 0].into()).unwrap());
        assert_eq!(reference_digits(&spec(3, 4, 0)), vec![0; 4]);
        for n in 1..6 {
            for k in 0..=n {
                let mut expected = vec![1; k];
                expected.extend(vec![0; n - k]);
                assert_eq!(reference_digits(&spec(1, n, k)), expected);
            }
        }
        assert_eq!(reference_digits(&spec(2, 3, 6)), vec![2, 2, 2]);
        for k in 0..=3 {
            assert_eq!(reference_digits(&spec(3, 1, k)), vec![k]);
        }
    }

    #[test]
    fn qudit_dicke_examples() {
        let st = qudit_dicke_state(3, 3, &KVector::new(vec![1, 2, 0])).unwrap();
        let support: Vec<usize> = st.support().map(|(i, _)| i).collect();
        let mut expected = vec![idx(3, &[0, 1, 1]), idx(3, &[1, 0, 1]), idx(3, &[1, 1, 0])];
        expected.sort();
        assert_eq!(support, expected);
        assert!(st.is_normalized());

        let all_zero = qudit_dicke_state(4, 3, &KVector::new(vec![3, 0, 0, 0])).unwrap();
        assert_eq!(all_zero, basis_state(4, &vec![0, 0, 0].into()).unwrap());

        let qubit = qudit_dicke_state(2, 3, &KVector::new(vec![1, 2])).unwrap();
        assert!(max_diff(&qubit, &closed_form_state(&spec(1, 3, 2)).unwrap()) <= 1e-15);

        assert!(matches!(
            qudit_dicke_state(3, 3, &KVector::new(vec![1, 1, 0])),
            Err(Error::SumMismatch { .. })
        ));
    }

    #[test]
    fn qudit_dicke_recursion() {
        // |D^n(k)> = sum_j sqrt(k_j / n) |D^{n-1}(k - e_j)> |j>
        let kv = KVector::new(vec![2, 1, 2]);
        let n = 5;
        let full = qudit_dicke_state(3, n, &kv).unwrap();
        let mut acc = StateVector::zeros(3, n).unwrap();
        for j in 0..3 {
            if kv.counts()[j] == 0 {
                continue;
            }
            let mut sub = kv.counts().to_vec();
            sub[j] -= 1;
            let term = tensor(
                &qudit_dicke_state(3, n - 1, &KVector::new(sub)).unwrap(),
                &basis_state(3, &vec![j].into()).unwrap(),
            )
            .unwrap();
            let w = (kv.counts()[j] as f64 / n as f64).sqrt();
            acc = StateVector::linear_combination(&[(1.0, &acc), (w, &term)]).unwrap();
        }
        assert!(max_diff(&acc, &full) <= 1e-12);
    }

    #[test]
    fn enumeration_examples() {
        let kv = |v: Vec<usize>| KVector::new(v);
        assert_eq!(enumerate_kvectors(&spec(2, 2, 2)), vec![kv(vec![0, 2, 0]), kv(vec![1, 0, 1])]);
        assert_eq!(enumerate_kvectors(&spec(3, 4, 0)), vec![kv(vec![4, 0, 0, 0])]);
        assert_eq!(enumerate_kvectors(&spec(2, 3, 2)), vec![kv(vec![1, 2, 0]), kv(vec![2, 0, 1])]);
    }

    /// Brute force: scan every occupation vector with entries up to n.
    fn brute_kvectors(s: &DickeSpec) -> Vec<KVector> {
        let d = s.d();
        let mut out = Vec::new();
        let total = (s.n() + 1).pow(d as u32);
        for code in 0..total {
            let mut c = code;
            let counts: Vec<usize> = (0..d)
                .map(|_| {
                    let v = c % (s.n() + 1);
                    c /= s.n() + 1;
                    v
                })
                .collect();
            let kv = KVector::new(counts);
            if kv.sites() == s.n() && kv.weight() == s.k() {
                out.push(kv);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn enumeration_matches_brute_force_and_g_count() {
        for s2 in 1..=4 {
            for n in 1..=5 {
                for k in 0..=s2 * n {
                    let s = spec(s2, n, k);
                    let e = enumerate_kvectors(&s);
                    assert_eq!(e, brute_kvectors(&s));
                    assert_eq!(g_count(&s), BigUint::from(e.len()));
                }
            }
        }
    }

    #[test]
    fn g_count_examples() {
        let counts: Vec<BigUint> = (0..=4).map(|k| g_count(&spec(2, 2, k))).collect();
        let expected: Vec<BigUint> = [1u32, 1, 2, 1, 1].iter().map(|&v| BigUint::from(v)).collect();
        assert_eq!(counts, expected);
        assert_eq!(g_count(&spec(5, 7, 0)), BigUint::one());
        for k in 0..=9 {
            assert_eq!(g_count(&spec(3, 3, k)), g_count(&spec(3, 3, 9 - k)));
        }
    }

    #[test]
    fn alpha_examples() {
        let s = spec(2, 3, 2);
        assert_eq!(alpha_coeff(&s, &KVector::new(vec![1, 2, 0])).unwrap(), amp(4, 5));
        assert_eq!(alpha_coeff(&s, &KVector::new(vec![2, 0, 1])).unwrap(), amp(1, 5));
        assert!(matches!(
            alpha_coeff(&s, &KVector::new(vec![3, 0, 0])),
            Err(Error::NotASolution { .. })
        ));
        assert!(alpha_coeff(&s, &KVector::new(vec![1, 2])).is_err());
        let total: BigRatio = decompose(&spec(2, 4, 3)).iter().map(|(_, a)| a.square().clone()).sum();
        assert_eq!(total, Ratio::one());
    }

    #[test]
    fn decompose_examples() {
        let terms = decompose(&spec(2, 3, 2));
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0], (KVector::new(vec![1, 2, 0]), amp(4, 5)));
        assert_eq!(terms[1], (KVector::new(vec![2, 0, 1]), amp(1, 5)));

        let zero = decompose(&spec(3, 4, 0));
        assert_eq!(zero, vec![(KVector::new(vec![4, 0, 0, 0]), ExactAmplitude::one())]);

        let s = spec(3, 2, 3);
        let f = fidelity(&decomposition_state(&s).unwrap(), &closed_form_state(&s).unwrap()).unwrap();
        assert!((f - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn inner_product_with_qudit_dicke() {
        let spin = closed_form_state(&spec(2, 3, 2)).unwrap();
        let q = qudit_dicke_state(3, 3, &KVector::new(vec![1, 2, 0])).unwrap();
        let ip = inner_product(&spin, &q).unwrap();
        assert!((ip.re - 2.0 / 5f64.sqrt()).abs() <= 1e-15);
        assert!((fidelity(&spin, &q).unwrap() - 0.8).abs() <= 1e-15);
    }

    #[test]
    fn decomposition_text_round_trip() {
        let s = spec(2, 3, 2);
        let text = decomposition_text(&s);
        assert_eq!(text, "1 2 0  4 5\n2 0 1  1 5\n");
        assert_eq!(parse_decomposition(&text).unwrap(), decompose(&s));
        assert!(parse_decomposition("1 2\n").is_err());
        assert!(parse_decomposition("1 2 0  4 0\n").is_err());
    }

    #[test]
    fn counting_identity_small() {
        for s2 in 1..=4 {
            for n in 1..=6 {
                for k in 0..=s2 * n {
                    let s = spec(s2, n, k);
                    let sum: BigUint = enumerate_kvectors(&s).iter().map(|kv| alpha_numerator(&s, kv)).sum();
                    assert_eq!(sum, binom((s2 * n) as u64, k as i64));
                }
            }
        }
    }
}
