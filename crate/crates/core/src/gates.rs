//! d-level gates: subspace NOT `X(i,j)`, subspace rotation `R(i,j,theta)` and
//! the level-reversal (charge conjugation) `C`, each optionally controlled on
//! specific values of other qudits.
//!
//! Gate application walks the amplitude array in blocks of `d` entries that
//! differ only in the target digit; the full `d^n` operator is never formed.
//! Application is sequential, so results are bitwise deterministic.

use num_complex::Complex64 as C64;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::qudit::{digit, StateVector};

/// Single-qudit part of a gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    /// Swaps levels `i` and `j`.
    X { i: usize, j: usize },
    /// `R^y(-theta)` in span{|i>, |j>}.
    R { i: usize, j: usize, theta: f64 },
    /// `|j> -> |d-1-j>`.
    C,
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X { .. } => "X",
            GateKind::R { .. } => "R",
            GateKind::C => "C",
        }
    }

    /// The `d x d` matrix of this gate.
    pub fn matrix(&self, d: usize) -> Result<GateMatrix> {
        match *self {
            GateKind::X { i, j } => x_matrix(d, i, j),
            GateKind::R { i, j, theta } => r_matrix(d, i, j, theta),
            GateKind::C => Ok(c_matrix(d)),
        }
    }
}

/// A value control: the gate fires only when qudit `position` holds `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Control {
    pub position: usize,
    pub value: usize,
}

impl Control {
    pub fn new(position: usize, value: usize) -> Self {
        Control { position, value }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub target: usize,
    pub controls: Vec<Control>,
}

impl Gate {
    pub fn new(kind: GateKind, target: usize) -> Self {
        Gate { kind, target, controls: Vec::new() }
    }

    pub fn x(i: usize, j: usize, target: usize) -> Self {
        Gate::new(GateKind::X { i, j }, target)
    }

    pub fn r(i: usize, j: usize, theta: f64, target: usize) -> Self {
        Gate::new(GateKind::R { i, j, theta }, target)
    }

    pub fn c(target: usize) -> Self {
        Gate::new(GateKind::C, target)
    }

    pub fn controlled(mut self, position: usize, value: usize) -> Self {
        self.controls.push(Control::new(position, value));
        self
    }

    /// Same gate with every position shifted by `offset`.
    pub fn shifted(&self, offset: usize) -> Gate {
        Gate {
            kind: self.kind,
            target: self.target + offset,
            controls: self
                .controls
                .iter()
                .map(|c| Control::new(c.position + offset, c.value))
                .collect(),
        }
    }

    /// Checks levels, positions and control placement against a register.
    pub fn validate(&self, d: usize, n: usize) -> Result<()> {
        match self.kind {
            GateKind::X { i, j } | GateKind::R { i, j, .. } => check_levels(d, i, j)?,
            GateKind::C => {}
        }
        if let GateKind::R { theta, .. } = self.kind {
            if !theta.is_finite() {
                return Err(Error::InvalidState(format!("non-finite angle {theta}")));
            }
        }
        if self.target >= n {
            return Err(Error::PositionOutOfRange { position: self.target, n });
        }
        for (idx, c) in self.controls.iter().enumerate() {
            if c.position >= n {
                return Err(Error::PositionOutOfRange { position: c.position, n });
            }
            if c.value >= d {
                return Err(Error::LevelOutOfRange { level: c.value, d });
            }
            if c.position == self.target
                || self.controls[..idx].iter().any(|o| o.position == c.position)
            {
                return Err(Error::ControlOnTarget(c.position));
            }
        }
        Ok(())
    }
}

/// Dense real `d x d` matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GateMatrix {
    d: usize,
    entries: Vec<f64>,
}

impl GateMatrix {
    pub fn identity(d: usize) -> Self {
        let mut entries = vec![0.0; d * d];
        for k in 0..d {
            entries[k * d + k] = 1.0;
        }
        GateMatrix { d, entries }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.d + col]
    }

    fn set(&mut self, row: usize, col: usize, value: f64) {
        self.entries[row * self.d + col] = value;
    }

    pub fn mul(&self, other: &GateMatrix) -> GateMatrix {
        let d = self.d;
        let mut out = GateMatrix { d, entries: vec![0.0; d * d] };
        for r in 0..d {
            for c in 0..d {
                out.entries[r * d + c] = (0..d).map(|k| self.get(r, k) * other.get(k, c)).sum();
            }
        }
        out
    }

    pub fn transpose(&self) -> GateMatrix {
        let d = self.d;
        let mut out = self.clone();
        for r in 0..d {
            for c in 0..d {
                out.entries[c * d + r] = self.get(r, c);
            }
        }
        out
    }

    /// Largest entrywise deviation of `M^T M` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let product = self.transpose().mul(self);
        let id = GateMatrix::identity(self.d);
        product
            .entries
            .iter()
            .zip(&id.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Column `col`, i.e. the image of basis vector `|col>`.
    pub fn column(&self, col: usize) -> Vec<f64> {
        (0..self.d).map(|r| self.get(r, col)).collect()
    }
}

fn check_levels(d: usize, i: usize, j: usize) -> Result<()> {
    if i >= d {
        return Err(Error::LevelOutOfRange { level: i, d });
    }
    if j >= d {
        return Err(Error::LevelOutOfRange { level: j, d });
    }
    if i >= j {
        return Err(Error::LevelsNotOrdered { i, j });
    }
    Ok(())
}

/// Rotation in span{|i>, |j>}:
/// `|i> -> cos(t/2)|i> - sin(t/2)|j>`, `|j> -> sin(t/2)|i> + cos(t/2)|j>`.
pub fn r_matrix(d: usize, i: usize, j: usize, theta: f64) -> Result<GateMatrix> {
    check_levels(d, i, j)?;
    let (sin, cos) = (theta / 2.0).sin_cos();
    let mut m = GateMatrix::identity(d);
    m.set(i, i, cos);
    m.set(j, i, -sin);
    m.set(i, j, sin);
    m.set(j, j, cos);
    Ok(m)
}

/// Permutation exchanging levels `i` and `j`.
pub fn x_matrix(d: usize, i: usize, j: usize) -> Result<GateMatrix> {
    check_levels(d, i, j)?;
    let mut m = GateMatrix::identity(d);
    m.set(i, i, 0.0);
    m.set(j, j, 0.0);
    m.set(i, j, 1.0);
    m.set(j, i, 1.0);
    Ok(m)
}

/// Anti-diagonal permutation `|j> -> |d-1-j>`.
pub fn c_matrix(d: usize) -> GateMatrix {
    let mut m = GateMatrix { d, entries: vec![0.0; d * d] };
    for j in 0..d {
        m.set(d - 1 - j, j, 1.0);
    }
    m
}

/// Applies `gate` and returns the new state.
pub fn apply(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    gate.validate(state.d(), state.n())?;
    let matrix = gate.kind.matrix(state.d())?;
    let mut out = state.clone();
    apply_in_place(&mut out, gate, &matrix);
    Ok(out)
}

/// Runs every gate of `circuit`, first to last.
pub fn run(state: &StateVector, circuit: &Circuit) -> Result<StateVector> {
    if circuit.d() != state.d() || circuit.n() != state.n() {
        return Err(Error::DimensionMismatch(format!(
            "circuit (d={}, n={}) vs state (d={}, n={})",
            circuit.d(),
            circuit.n(),
            state.d(),
            state.n()
        )));
    }
    let mut out = state.clone();
    for gate in circuit.gates() {
        gate.validate(state.d(), state.n())?;
        let matrix = gate.kind.matrix(state.d())?;
        apply_in_place(&mut out, gate, &matrix);
    }
    Ok(out)
}

fn apply_in_place(state: &mut StateVector, gate: &Gate, matrix: &GateMatrix) {
    let d = state.d();
    let stride = d.pow(gate.target as u32);
    let block = stride * d;
    // Nonzero entries per row; skipping zeros keeps identity rows bit-exact.
    let rows: Vec<Vec<(usize, f64)>> = (0..d)
        .map(|r| (0..d).map(|c| (c, matrix.get(r, c))).filter(|&(_, v)| v != 0.0).collect())
        .collect();
    let amps = state.amps_mut();
    let mut scratch = vec![C64::new(0.0, 0.0); d];
    for high in (0..amps.len()).step_by(block) {
        for low in 0..stride {
            let base = high + low;
            if !gate.controls.iter().all(|c| digit(base, d, c.position) == c.value) {
                continue;
            }
            for (v, slot) in scratch.iter_mut().enumerate() {
                *slot = amps[base + v * stride];
            }
            for (r, row) in rows.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for &(c, v) in row {
                    acc += scratch[c] * v;
                }
                amps[base + r * stride] = acc;
            }
        }
    }
}
