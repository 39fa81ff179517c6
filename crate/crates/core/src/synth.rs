//! Preparation circuits for spin-s Dicke states.
//!
//! The state `|D_{n,k}>` is reached from the product reference state of
//! [`reference_state`] by a unitary `U_n` built from `W_m` blocks, `m = n..2`
//! in application order, each `W_m` acting on the top `m` qudits. Every
//! `W_m` is a sequence of `T_{m,k'}` blocks, `k' = 1, 2, ..., 2sm-1`. A `T`
//! block touches at most four qudits: wire 0 (the rotation target), wires
//! `l-1`, `l` and, when `i > 0`, wire `l+1`, where `k' = 2s*l + i`.
//!
//! For a fixed `k` most `T` blocks are redundant; [`build_u_simplified`]
//! keeps only `k'` in `max(k + 2s(m-n), 1) ..= min(k, 2sm-1)`.
//!
//! Each doubly-controlled rotation decomposes into eight two-qudit gates;
//! counts here are reported at the controlled-gate level.

use std::fmt::Write as _;
use std::ops::Range;

use num_traits::Zero;

use crate::circuit::Circuit;
use crate::dicke::{coeffs_c, reference_state, DickeSpec};
use crate::error::{Error, Result};
use crate::exact::{BigRatio, ExactAmplitude};
use crate::gates::{run, Gate};
use crate::qudit::StateVector;

/// Tolerance for [`solve_angles`] self-check.
const ANGLE_CHECK_TOLERANCE: f64 = 1e-9;

/// The block `T_{m,k'}`: spin `2s`, width `m`, step `k'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TSpec {
    s2: usize,
    m: usize,
    step: usize,
}

impl TSpec {
    pub fn new(s2: usize, m: usize, step: usize) -> Result<Self> {
        if s2 < 1 || m < 2 {
            return Err(Error::InvalidSpec(format!("T block needs 2s >= 1 and m >= 2 (got 2s={s2}, m={m})")));
        }
        if step < 1 || step > s2 * m - 1 {
            return Err(Error::InvalidSpec(format!("step k'={step} outside 1..={}", s2 * m - 1)));
        }
        Ok(TSpec { s2, m, step })
    }

    pub fn s2(&self) -> usize {
        self.s2
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn ell(&self) -> usize {
        self.step / self.s2
    }

    pub fn i(&self) -> usize {
        self.step % self.s2
    }

    /// The Dicke parameters `(2s, m, k')` whose recursion coefficients set the angles.
    pub fn dicke(&self) -> DickeSpec {
        DickeSpec::new(self.s2, self.m, self.step).expect("step within range")
    }
}

/// Rotation angles `theta_1 ..= theta_{2s}`, each in `[0, pi]`.
///
/// They satisfy `sin(t_1/2) ... sin(t_{2s-j}/2) cos(t_{2s+1-j}/2) = c_j` for
/// `j = 0..=2s`, with `t_{2s+1} = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSet {
    thetas: Vec<f64>,
}

impl AngleSet {
    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    /// `theta_p`, 1-based; `theta_{2s+1} = 0`.
    pub fn theta(&self, p: usize) -> f64 {
        assert!(p >= 1, "angles are 1-based");
        self.thetas.get(p - 1).copied().unwrap_or(0.0)
    }

    /// Recovers `(c_0, ..., c_{2s})` from the angles.
    pub fn coefficients(&self) -> Vec<f64> {
        let s2 = self.thetas.len();
        (0..=s2)
            .map(|j| {
                let sines: f64 = (1..=s2 - j).map(|p| (self.theta(p) / 2.0).sin()).product();
                sines * (self.theta(s2 + 1 - j) / 2.0).cos()
            })
            .collect()
    }
}

/// Solves for the rotation angles of `T_{m,k'}`.
///
/// Peeling from `j = 2s` down, `cos^2(t/2) = c_j^2 / R_j` and
/// `sin^2(t/2) = R_{j-1} / R_j` with `R_j = sum_{j' <= j} c_{j'}^2` held as an
/// exact rational. Once `R_j = 0` every remaining angle is zero.
pub fn solve_angles(tspec: &TSpec) -> Result<AngleSet> {
    let c = coeffs_c(&tspec.dicke());
    let s2 = tspec.s2;
    // remaining[j] = sum_{j' <= j} c_{j'}^2
    let mut remaining: Vec<BigRatio> = Vec::with_capacity(s2 + 1);
    let mut acc = BigRatio::zero();
    for cj in &c {
        acc += cj.square();
        remaining.push(acc.clone());
    }
    let mut thetas = Vec::with_capacity(s2);
    for p in 1..=s2 {
        let j = s2 + 1 - p;
        if remaining[j].is_zero() {
            thetas.push(0.0);
            continue;
        }
        let cos = ExactAmplitude::from_square(c[j].square() / &remaining[j]).to_f64();
        let sin = ExactAmplitude::from_square(&remaining[j - 1] / &remaining[j]).to_f64();
        thetas.push((2.0 * sin.atan2(cos)).clamp(0.0, std::f64::consts::PI));
    }
    let angles = AngleSet { thetas };
    let deviation = angles
        .coefficients()
        .iter()
        .zip(&c)
        .map(|(got, want)| (got - want.to_f64()).abs())
        .fold(0.0, f64::max);
    if deviation > ANGLE_CHECK_TOLERANCE {
        return Err(Error::InconsistentCoefficients(deviation));
    }
    Ok(angles)
}

/// Which topology a `T` block uses. The generic circuit needs wires `0`,
/// `l-1`, `l` and (for `i > 0`) `l+1` to be distinct and present; the other
/// shapes are its limits when some of those wires coincide or fall off the
/// register.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TShape {
    /// All wires present.
    Generic,
    /// `i = 0, l = 1`: wire `l-1` is the target, its control merges away.
    Ell1Even,
    /// `i > 0, l = m-1 >= 2`: wire `l+1` absent, the second stage drops.
    TopOdd,
    /// `i > 0, l = 1, m = 2`: both limits at once.
    Ell1TwoSites,
    /// `i > 0, l = 1, m > 2`: merged `l-1` control, second stage kept.
    Ell1Odd,
    /// `i > 0, l = 0`: first stage drops, second stage loses its `l` control.
    Ell0Odd,
}

impl TShape {
    /// Dispatch on `(l relative to m, i)`.
    pub fn classify(tspec: &TSpec) -> Result<TShape> {
        let (m, ell, i) = (tspec.m, tspec.ell(), tspec.i());
        let shape = match (i, ell) {
            (0, 0) => None,
            (0, 1) => Some(TShape::Ell1Even),
            (0, l) if l < m => Some(TShape::Generic),
            (_, 0) => Some(TShape::Ell0Odd),
            (_, 1) if m == 2 => Some(TShape::Ell1TwoSites),
            (_, 1) => Some(TShape::Ell1Odd),
            (_, l) if l == m - 1 => Some(TShape::TopOdd),
            (_, l) if l < m - 1 => Some(TShape::Generic),
            _ => None,
        };
        shape.ok_or(Error::UnsupportedShape { m, ell, i })
    }

    pub fn id(&self) -> &'static str {
        match self {
            TShape::Generic => "generic",
            TShape::Ell1Even => "l1-even",
            TShape::TopOdd => "top-odd",
            TShape::Ell1TwoSites => "l1-m2-odd",
            TShape::Ell1Odd => "l1-odd",
            TShape::Ell0Odd => "l0-odd",
        }
    }

    fn first_stage(&self) -> bool {
        !matches!(self, TShape::Ell0Odd)
    }

    fn second_stage(&self) -> bool {
        matches!(self, TShape::Generic | TShape::Ell1Odd | TShape::Ell0Odd)
    }

    fn prev_wire_control(&self) -> bool {
        matches!(self, TShape::Generic | TShape::TopOdd)
    }
}

/// A synthesized `T` block.
#[derive(Debug, Clone, PartialEq)]
pub struct TBlock {
    pub tspec: TSpec,
    pub shape: TShape,
    pub angles: AngleSet,
    /// Gates on wires `0..m`, in application order.
    pub circuit: Circuit,
}

/// Synthesizes `T_{m,k'}` with its angles and topology.
pub fn t_block(tspec: &TSpec) -> Result<TBlock> {
    let shape = TShape::classify(tspec)?;
    let angles = solve_angles(tspec)?;
    let (s2, ell, i) = (tspec.s2, tspec.ell(), tspec.i());
    let mut circ = Circuit::new(s2 + 1, tspec.m);

    // First stage: levels on wire l climb i -> 2s while wire 0 descends 2s -> i,
    // splitting off the j = 2s, 2s-1, ..., i+1 terms.
    if shape.first_stage() {
        for p in 1..=s2 - i {
            let (lo, hi) = (i + p - 1, i + p);
            let wire0 = s2 + 1 - p;
            let swap = Gate::x(lo, hi, ell).controlled(0, wire0);
            let mut rot = Gate::r(s2 - p, s2 - p + 1, angles.theta(p), 0);
            if shape.prev_wire_control() {
                rot = rot.controlled(ell - 1, s2);
            }
            rot = rot.controlled(ell, hi);
            circ.push(swap.clone());
            circ.push(rot);
            circ.push(swap);
        }
    }

    // Second stage (i > 0): wire l+1 climbs 0 -> i while wire 0 descends i -> 0.
    if shape.second_stage() && i > 0 {
        for r in 1..=i {
            let swap = Gate::x(r - 1, r, ell + 1).controlled(0, i - r + 1);
            let mut rot = Gate::r(i - r, i - r + 1, angles.theta(s2 - i + r), 0);
            if ell >= 1 {
                rot = rot.controlled(ell, s2);
            }
            rot = rot.controlled(ell + 1, r);
            circ.push(swap.clone());
            circ.push(rot);
            circ.push(swap);
        }
    }

    circ.validate()?;
    Ok(TBlock { tspec: *tspec, shape, angles, circuit: circ })
}

/// Circuit for `T_{m,k'}` on `m` qudits.
pub fn build_t(tspec: &TSpec) -> Result<Circuit> {
    Ok(t_block(tspec)?.circuit)
}

/// Where one `T` block sits inside a larger circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockInfo {
    pub tspec: TSpec,
    pub shape: TShape,
    /// Global wire of the block's wire 0.
    pub offset: usize,
    pub gates: Range<usize>,
}

/// A circuit together with the `T` blocks it was assembled from.
#[derive(Debug, Clone, PartialEq)]
pub struct Synthesis {
    pub circuit: Circuit,
    pub blocks: Vec<BlockInfo>,
}

impl Synthesis {
    fn new(d: usize, n: usize) -> Self {
        Synthesis { circuit: Circuit::new(d, n), blocks: Vec::new() }
    }

    fn push_block(&mut self, block: &TBlock, offset: usize) {
        let start = self.circuit.len();
        self.circuit.append_shifted(&block.circuit, offset);
        self.blocks.push(BlockInfo {
            tspec: block.tspec,
            shape: block.shape,
            offset,
            gates: start..self.circuit.len(),
        });
    }

    /// Number of `T` blocks.
    pub fn t_count(&self) -> usize {
        self.blocks.len()
    }

    /// One line per `T` block with its provenance and gate tally, then totals.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (idx, b) in self.blocks.iter().enumerate() {
            let mut sub = Circuit::new(self.circuit.d(), self.circuit.n());
            for g in &self.circuit.gates()[b.gates.clone()] {
                sub.push(g.clone());
            }
            let t = sub.tally();
            writeln!(
                out,
                "T[{idx}] m={} k'={} l={} i={} shape={} wires={}..{} gates={}..{} X={} R={} double-controlled={}",
                b.tspec.m,
                b.tspec.step,
                b.tspec.ell(),
                b.tspec.i(),
                b.shape.id(),
                b.offset,
                b.offset + b.tspec.m,
                b.gates.start,
                b.gates.end,
                t.x,
                t.r,
                t.count_with_controls(2),
            )
            .unwrap();
        }
        let t = self.circuit.tally();
        writeln!(
            out,
            "total: T={} gates={} X={} R={} single-controlled={} double-controlled={}",
            self.t_count(),
            t.total(),
            t.x,
            t.r,
            t.count_with_controls(1),
            t.count_with_controls(2),
        )
        .unwrap();
        out
    }
}

/// `W_m` on `m` qudits: `T_{m,1}` first, `T_{m,2sm-1}` last.
pub fn build_w(s2: usize, m: usize) -> Result<Synthesis> {
    if m < 2 {
        return Err(Error::InvalidSpec(format!("W needs m >= 2, got {m}")));
    }
    let mut syn = Synthesis::new(s2 + 1, m);
    for step in 1..s2 * m {
        syn.push_block(&t_block(&TSpec::new(s2, m, step)?)?, 0);
    }
    Ok(syn)
}

/// The `k`-independent `U_n`: `W_n` first, then `W_{n-1}`, ..., `W_2`, each
/// `W_m` on the top `m` wires. Empty for `n = 1`.
pub fn build_u(s2: usize, n: usize) -> Result<Synthesis> {
    if s2 < 1 || n < 1 {
        return Err(Error::InvalidSpec(format!("need 2s >= 1 and n >= 1 (got 2s={s2}, n={n})")));
    }
    let mut syn = Synthesis::new(s2 + 1, n);
    for m in (2..=n).rev() {
        for step in 1..s2 * m {
            syn.push_block(&t_block(&TSpec::new(s2, m, step)?)?, n - m);
        }
    }
    Ok(syn)
}

/// Range of `k'` kept in the simplified `W_m` for target `k`.
pub fn simplified_steps(spec: &DickeSpec, m: usize) -> Range<usize> {
    let (s2, n, k) = (spec.s2() as i64, spec.n() as i64, spec.k() as i64);
    let m = m as i64;
    let lo = (k + s2 * (m - n)).max(1);
    let hi = k.min(s2 * m - 1);
    if hi < lo {
        return 0..0;
    }
    lo as usize..hi as usize + 1
}

/// The `k`-dependent simplified circuit. Empty for `k` in `{0, 2sn}`, where the
/// reference state already is the Dicke state.
pub fn build_u_simplified(spec: &DickeSpec) -> Result<Synthesis> {
    let n = spec.n();
    let mut syn = Synthesis::new(spec.d(), n);
    if spec.k() == 0 || spec.k() == spec.max_k() {
        return Ok(syn);
    }
    for m in (2..=n).rev() {
        for step in simplified_steps(spec, m) {
            syn.push_block(&t_block(&TSpec::new(spec.s2(), m, step)?)?, n - m);
        }
    }
    Ok(syn)
}

/// Closed-form count of `T` blocks in the simplified circuit:
/// `sum_{m=2}^{n} [1 + min(k, 2sm-1) - max(k + 2s(m-n), 1)]`, negative terms
/// clamped to zero.
pub fn gate_count_n(spec: &DickeSpec) -> usize {
    let (s2, n, k) = (spec.s2() as i64, spec.n() as i64, spec.k() as i64);
    (2..=n)
        .map(|m| (1 + k.min(s2 * m - 1) - (k + s2 * (m - n)).max(1)).max(0))
        .sum::<i64>() as usize
}

/// `sum_{m=2}^{n} (2sm - 1)`, the `T` count of `U_n`.
pub fn full_t_count(s2: usize, n: usize) -> usize {
    (2..=n).map(|m| s2 * m - 1).sum()
}

/// Runs the chosen preparation circuit on the reference state.
pub fn prepare(spec: &DickeSpec, simplified: bool) -> Result<StateVector> {
    let syn = if simplified { build_u_simplified(spec)? } else { build_u(spec.s2(), spec.n())? };
    run(&reference_state(spec), &syn.circuit)
}
