//! Total spin operators acting on statevectors, and the Dicke state obtained
//! by literally applying the lowering operator `k` times.
//!
//! This path shares nothing with the closed-form constructor in
//! [`crate::dicke`] beyond the normalization constant, so the two can check
//! each other.

use num_complex::Complex64 as C64;

use crate::dicke::{normalization_a, DickeSpec};
use crate::error::{Error, Result};
use crate::qudit::{basis_state, StateVector};

/// Single-site lowering matrix element `<j+1| S^- |j>`.
///
/// Level `j` has `S^z = s - j`; with `m = s - j` the element is
/// `sqrt((s+m)(s+1-m)) = sqrt((2s-j)(j+1))`.
pub fn lowering_element(s2: usize, j: usize) -> f64 {
    if j >= s2 {
        return 0.0;
    }
    (((s2 - j) * (j + 1)) as f64).sqrt()
}

/// The `(2s+1) x (2s+1)` lowering matrix, row-major, built from `S^z`.
pub fn lowering_matrix(s2: usize) -> Vec<Vec<f64>> {
    let d = s2 + 1;
    let mut m = vec![vec![0.0; d]; d];
    for (j, row) in (0..s2).zip(m.iter_mut().skip(1)) {
        row[j] = lowering_element(s2, j);
    }
    m
}

fn check_dim(state: &StateVector, s2: usize) -> Result<()> {
    if state.d() != s2 + 1 {
        return Err(Error::DimensionMismatch(format!("state d={} vs spin 2s={s2}", state.d())));
    }
    Ok(())
}

fn apply_site_shift(state: &StateVector, s2: usize, lower: bool) -> Result<StateVector> {
    check_dim(state, s2)?;
    let d = state.d();
    let matrix = lowering_matrix(s2);
    let mut out = vec![C64::new(0.0, 0.0); state.dim()];
    for (index, a) in state.support() {
        let mut place = 1usize;
        for _ in 0..state.n() {
            let j = (index / place) % d;
            if lower && j + 1 < d {
                out[index + place] += a * matrix[j + 1][j];
            } else if !lower && j >= 1 {
                // raising is the transpose of lowering
                out[index - place] += a * matrix[j][j - 1];
            }
            place *= d;
        }
    }
    StateVector::from_amplitudes(d, state.n(), out)
}

/// `sum_p S^-_p |psi>`.
pub fn apply_total_lowering(state: &StateVector, s2: usize) -> Result<StateVector> {
    apply_site_shift(state, s2, true)
}

/// `sum_p S^+_p |psi>`.
pub fn apply_total_raising(state: &StateVector, s2: usize) -> Result<StateVector> {
    apply_site_shift(state, s2, false)
}

/// `sum_p S^z_p |psi>`, with `S^z = diag(s, s-1, ..., -s)`.
pub fn apply_total_sz(state: &StateVector, s2: usize) -> Result<StateVector> {
    check_dim(state, s2)?;
    let d = state.d();
    let s = s2 as f64 / 2.0;
    let amps = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(index, a)| {
            let mut m = 0.0;
            let mut rest = index;
            for _ in 0..state.n() {
                m += s - (rest % d) as f64;
                rest /= d;
            }
            a * m
        })
        .collect();
    StateVector::from_amplitudes(d, state.n(), amps)
}

/// `S^2 = S^- S^+ + S^z (S^z + 1)` applied to `psi`.
pub fn apply_total_spin_squared(state: &StateVector, s2: usize) -> Result<StateVector> {
    let lowered_raised = apply_total_lowering(&apply_total_raising(state, s2)?, s2)?;
    let sz = apply_total_sz(state, s2)?;
    let sz2 = apply_total_sz(&sz, s2)?;
    StateVector::linear_combination(&[(1.0, &lowered_raised), (1.0, &sz2), (1.0, &sz)])
}

/// `a_{n,k} (S^-)^k |0>^n`, built by repeated application of the total
/// lowering operator.
pub fn lowering_oracle_state(spec: &DickeSpec) -> Result<StateVector> {
    let mut state = basis_state(spec.d(), &vec![0; spec.n()].into())?;
    for _ in 0..spec.k() {
        state = apply_total_lowering(&state, spec.s2())?;
    }
    let a = normalization_a(spec).to_f64();
    let amps = state.into_amplitudes().into_iter().map(|x| x * a).collect();
    StateVector::from_amplitudes(spec.d(), spec.n(), amps)
}
