//! Bipartite entanglement of spin-s Dicke states, computed analytically.
//!
//! Splitting the chain into the first `l` qudits and the remaining `n-l`,
//!
//! ```text
//! |D_{n,k}> = sum_j sqrt(lambda_j) |D_{n-l,k-j}> (x) |D_{l,j}>
//! lambda_j  = binom(2sl, j) binom(2s(n-l), k-j) / binom(2sn, k)
//! ```
//!
//! so the reduced density matrix is diagonal with a hypergeometric spectrum.

use std::fmt::Write as _;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::dicke::{closed_form_state, DickeSpec};
use crate::error::{Error, Result};
use crate::exact::{binom, BigRatio, ExactAmplitude};
use crate::qudit::{checked_dimension, tensor, StateVector};

/// Logarithm base for reported entropies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EntropyBase {
    /// `log_{2s+1}`: one unit per qudit.
    #[default]
    Qudit,
    Bits,
}

impl EntropyBase {
    fn log_base(&self, spec: &DickeSpec) -> f64 {
        match self {
            EntropyBase::Qudit => (spec.d() as f64).ln(),
            EntropyBase::Bits => std::f64::consts::LN_2,
        }
    }
}

fn check_partition(spec: &DickeSpec, l: usize) -> Result<()> {
    if l < 1 || l >= spec.n() {
        return Err(Error::PartitionOutOfRange { l, n: spec.n() });
    }
    Ok(())
}

/// Range of `j` with nonzero weight: `max(0, k - 2s(n-l)) ..= min(k, 2sl)`.
pub fn schmidt_range(spec: &DickeSpec, l: usize) -> std::ops::RangeInclusive<usize> {
    let rest = spec.s2() * (spec.n() - l);
    spec.k().saturating_sub(rest)..=spec.k().min(spec.s2() * l)
}

/// Exact Schmidt weights `(j, lambda_j)`.
pub fn schmidt_lambdas_exact(spec: &DickeSpec, l: usize) -> Result<Vec<(usize, BigRatio)>> {
    check_partition(spec, l)?;
    let (s2, n, k) = (spec.s2() as u64, spec.n() as u64, spec.k() as i64);
    let l64 = l as u64;
    let total = binom(s2 * n, k);
    Ok(schmidt_range(spec, l)
        .map(|j| {
            let num = binom(s2 * l64, j as i64) * binom(s2 * (n - l64), k - j as i64);
            (j, Ratio::new(num, total.clone()))
        })
        .collect())
}

/// Schmidt weights as floats, each correctly rounded from the exact rational.
pub fn schmidt_lambdas(spec: &DickeSpec, l: usize) -> Result<Vec<(usize, f64)>> {
    Ok(schmidt_lambdas_exact(spec, l)?
        .into_iter()
        .map(|(j, r)| (j, ratio_to_f64(&r)))
        .collect())
}

fn ratio_to_f64(r: &BigRatio) -> f64 {
    // lambda = sqrt(lambda)^2 would double-round; divide with 64 spare bits instead
    let (p, q) = (r.numer(), r.denom());
    if p.is_zero() {
        return 0.0;
    }
    let shift = (q.bits() as i64 - p.bits() as i64 + 64).max(0) as u64;
    let scaled: BigUint = (p << shift) / q;
    scaled.to_f64().expect("finite") * 2f64.powi(-(shift as i32))
}

/// `-sum_j lambda_j log(lambda_j)` in the requested base, `0 log 0 = 0`.
///
/// Terms are summed in sorted order so that spectra which are permutations
/// of each other (the `l -> n-l` and `k -> 2sn-k` symmetries) give
/// bit-identical results.
pub fn entropy_exact(spec: &DickeSpec, l: usize, base: EntropyBase) -> Result<f64> {
    let mut lambdas: Vec<f64> = schmidt_lambdas(spec, l)?.into_iter().map(|(_, x)| x).collect();
    lambdas.sort_by(f64::total_cmp);
    let nats: f64 = lambdas
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.ln())
        .sum();
    Ok(nats / base.log_base(spec))
}

/// `sigma^2 = k (2sn - k) l (n - l) / (2s n^3)` as an exact rational.
pub fn variance_exact(spec: &DickeSpec, l: usize) -> Result<BigRatio> {
    check_partition(spec, l)?;
    let (s2, n, k) = (spec.s2() as u64, spec.n() as u64, spec.k() as u64);
    let l = l as u64;
    let num = BigUint::from(k) * (s2 * n - k) * l * (n - l);
    let den = BigUint::from(s2) * n * n * n;
    Ok(Ratio::new(num, den))
}

/// `(sigma^2, S_gauss)` with `S_gauss = 1/2 log(2 pi e sigma^2)`.
pub fn entropy_gaussian(spec: &DickeSpec, l: usize, base: EntropyBase) -> Result<(f64, f64)> {
    let var = variance_exact(spec, l)?;
    if var.is_zero() {
        return Err(Error::DegenerateVariance);
    }
    let sigma2 = ratio_to_f64(&var);
    let s = 0.5 * (2.0 * std::f64::consts::PI * std::f64::consts::E * sigma2).ln();
    Ok((sigma2, s / base.log_base(spec)))
}

/// `sum_j sqrt(lambda_j) |D_{n-l,k-j}> (x) |D_{l,j}>`; the `l` block holds the
/// low digits.
pub fn schmidt_reconstruct(spec: &DickeSpec, l: usize) -> Result<StateVector> {
    check_partition(spec, l)?;
    checked_dimension(spec.d(), spec.n())?;
    let mut acc = StateVector::zeros(spec.d(), spec.n())?;
    for (j, lambda) in schmidt_lambdas_exact(spec, l)? {
        let weight = ExactAmplitude::from_square(lambda).to_f64();
        let left = closed_form_state(&spec.with(l, j)?)?;
        let right = closed_form_state(&spec.with(spec.n() - l, spec.k() - j)?)?;
        acc = StateVector::linear_combination(&[(1.0, &acc), (weight, &tensor(&right, &left)?)])?;
    }
    Ok(acc)
}

/// Everything known about one bipartition.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyReport {
    pub spec: DickeSpec,
    pub l: usize,
    pub lambdas: Vec<(usize, f64)>,
    pub s_exact: f64,
    pub sigma2: f64,
    /// `None` when `sigma^2 = 0`.
    pub s_gauss: Option<f64>,
    /// Mean `kl/n` of the Schmidt index.
    pub jbar: f64,
}

impl EntropyReport {
    pub fn new(spec: &DickeSpec, l: usize, base: EntropyBase) -> Result<Self> {
        let lambdas = schmidt_lambdas(spec, l)?;
        let s_exact = entropy_exact(spec, l, base)?;
        let sigma2 = ratio_to_f64(&variance_exact(spec, l)?);
        let s_gauss = match entropy_gaussian(spec, l, base) {
            Ok((_, s)) => Some(s),
            Err(Error::DegenerateVariance) => None,
            Err(e) => return Err(e),
        };
        Ok(EntropyReport {
            spec: *spec,
            l,
            lambdas,
            s_exact,
            sigma2,
            s_gauss,
            jbar: (spec.k() * l) as f64 / spec.n() as f64,
        })
    }
}

pub const CSV_HEADER: &str = "s2,n,k,l,S_exact,sigma2,S_gauss";

/// CSV table over the given partitions; an undefined `S_gauss` is an empty cell.
pub fn entropy_csv(spec: &DickeSpec, ls: &[usize], base: EntropyBase) -> Result<String> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for &l in ls {
        let r = EntropyReport::new(spec, l, base)?;
        let gauss = r.s_gauss.map(|s| format!("{s:.12}")).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{:.12},{:.12},{}",
            spec.s2(),
            spec.n(),
            spec.k(),
            l,
            r.s_exact,
            r.sigma2,
            gauss
        )
        .unwrap();
    }
    Ok(out)
}
