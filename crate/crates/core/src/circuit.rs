//! Ordered gate lists and their JSON interchange format.
//!
//! Gates are stored in application order: the first gate acts first. Operator
//! products written right-to-left therefore appear reversed here.
//!
//! ```text
//! {"d": 3, "n": 2, "gates": [
//!   {"kind": "R", "i": 1, "j": 2, "theta": 1.5707963267948966e0,
//!    "target": 0, "controls": [[1, 2]]}
//! ]}
//! ```

use serde::{Deserialize, Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::gates::{Control, Gate, GateKind};

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    d: usize,
    n: usize,
    gates: Vec<Gate>,
}

/// Number of gates of each kind, split by how many controls they carry.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateTally {
    pub x: usize,
    pub r: usize,
    pub c: usize,
    /// `by_controls[c]` counts gates with exactly `c` controls.
    pub by_controls: Vec<usize>,
}

impl GateTally {
    pub fn total(&self) -> usize {
        self.x + self.r + self.c
    }

    pub fn count_with_controls(&self, controls: usize) -> usize {
        self.by_controls.get(controls).copied().unwrap_or(0)
    }
}

impl Circuit {
    pub fn new(d: usize, n: usize) -> Self {
        Circuit { d, n, gates: Vec::new() }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn gates_mut(&mut self) -> &mut [Gate] {
        &mut self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    /// Appends `other`, whose wire 0 lands on wire `offset` of `self`.
    pub fn append_shifted(&mut self, other: &Circuit, offset: usize) {
        self.gates.extend(other.gates.iter().map(|g| g.shifted(offset)));
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| g.validate(self.d, self.n))
    }

    pub fn tally(&self) -> GateTally {
        let mut t = GateTally::default();
        for g in &self.gates {
            match g.kind {
                GateKind::X { .. } => t.x += 1,
                GateKind::R { .. } => t.r += 1,
                GateKind::C => t.c += 1,
            }
            let nc = g.controls.len();
            if t.by_controls.len() <= nc {
                t.by_controls.resize(nc + 1, 0);
            }
            t.by_controls[nc] += 1;
        }
        t
    }

    pub fn to_json(&self) -> String {
        let doc = CircuitDoc {
            d: self.d,
            n: self.n,
            gates: self.gates.iter().map(GateDoc::from).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("circuit serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: CircuitDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let gates = doc.gates.into_iter().map(Gate::try_from).collect::<Result<Vec<_>>>()?;
        let circuit = Circuit { d: doc.d, n: doc.n, gates };
        circuit.validate()?;
        Ok(circuit)
    }
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    d: usize,
    n: usize,
    gates: Vec<GateDoc>,
}

#[derive(Serialize, Deserialize)]
struct GateDoc {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    i: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    j: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none", serialize_with = "serialize_angle")]
    theta: Option<f64>,
    target: usize,
    #[serde(default)]
    controls: Vec<[usize; 2]>,
}

/// Angles go out with 17 significant digits.
fn serialize_angle<S: Serializer>(theta: &Option<f64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match theta {
        Some(t) => RawValue::from_string(format!("{t:.16e}"))
            .map_err(serde::ser::Error::custom)?
            .serialize(s),
        None => s.serialize_none(),
    }
}

impl From<&Gate> for GateDoc {
    fn from(g: &Gate) -> Self {
        let (i, j, theta) = match g.kind {
            GateKind::X { i, j } => (Some(i), Some(j), None),
            GateKind::R { i, j, theta } => (Some(i), Some(j), Some(theta)),
            GateKind::C => (None, None, None),
        };
        GateDoc {
            kind: g.kind.name().to_string(),
            i,
            j,
            theta,
            target: g.target,
            controls: g.controls.iter().map(|c| [c.position, c.value]).collect(),
        }
    }
}

impl TryFrom<GateDoc> for Gate {
    type Error = Error;

    fn try_from(doc: GateDoc) -> Result<Gate> {
        let missing = |field: &str| Error::Parse(format!("gate `{}` lacks `{field}`", doc.kind));
        let kind = match doc.kind.as_str() {
            "X" => GateKind::X { i: doc.i.ok_or_else(|| missing("i"))?, j: doc.j.ok_or_else(|| missing("j"))? },
            "R" => GateKind::R {
                i: doc.i.ok_or_else(|| missing("i"))?,
                j: doc.j.ok_or_else(|| missing("j"))?,
                theta: doc.theta.ok_or_else(|| missing("theta"))?,
            },
            "C" => GateKind::C,
            other => return Err(Error::Parse(format!("unknown gate kind `{other}`"))),
        };
        Ok(Gate {
            kind,
            target: doc.target,
            controls: doc.controls.iter().map(|&[p, v]| Control::new(p, v)).collect(),
        })
    }
}
