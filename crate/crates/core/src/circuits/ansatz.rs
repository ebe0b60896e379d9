//! The twelve variational layers.
//!
//! Layouts follow the expressibility-study circuit family they are named
//! after. Every rotation is a fresh trainable slot; entanglers without an
//! angle are fixed. The committed census fixture
//! (`tests/fixtures/ansatz_census.json`) is the reference these generators
//! are checked against.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::template::TemplateBuilder;
use crate::error::{Error, Result};
use crate::statevector::GateKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Ansatz {
    ModifiedPauliCrz,
    ModifiedPauliCrx,
    EfficientCrz,
    EfficientCrx,
    HweCnot,
    HweCz,
    Esu2,
    FullPauliCrz,
    FullPauliCrx,
    Hadamard,
    FullCrz,
    FullCrx,
}

/// One gate of a layer layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutGate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    pub trainable: bool,
}

impl Ansatz {
    pub const ALL: [Ansatz; 12] = [
        Ansatz::ModifiedPauliCrz,
        Ansatz::ModifiedPauliCrx,
        Ansatz::EfficientCrz,
        Ansatz::EfficientCrx,
        Ansatz::HweCnot,
        Ansatz::HweCz,
        Ansatz::Esu2,
        Ansatz::FullPauliCrz,
        Ansatz::FullPauliCrx,
        Ansatz::Hadamard,
        Ansatz::FullCrz,
        Ansatz::FullCrx,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Ansatz::ModifiedPauliCrz => "Modified-Pauli-CRZ",
            Ansatz::ModifiedPauliCrx => "Modified-Pauli-CRX",
            Ansatz::EfficientCrz => "Efficient-CRZ",
            Ansatz::EfficientCrx => "Efficient-CRX",
            Ansatz::HweCnot => "HWE-CNOT",
            Ansatz::HweCz => "HWE-CZ",
            Ansatz::Esu2 => "ESU2",
            Ansatz::FullPauliCrz => "Full-Pauli-CRZ",
            Ansatz::FullPauliCrx => "Full-Pauli-CRX",
            Ansatz::Hadamard => "Hadamard",
            Ansatz::FullCrz => "Full-CRZ",
            Ansatz::FullCrx => "Full-CRX",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Self::ALL.iter().map(|a| a.name()).collect()
    }

    /// Ordered gate list of a single layer on `n_qubits` qubits.
    pub fn layout(self, n_qubits: usize) -> Result<Vec<LayoutGate>> {
        if n_qubits < 2 {
            return Err(Error::InvalidCircuit(format!("{} needs at least 2 qubits, got {n_qubits}", self.name())));
        }
        let n = n_qubits;
        let mut out = Vec::new();
        let rot = |out: &mut Vec<LayoutGate>, kind: GateKind| {
            for q in 0..n {
                out.push(LayoutGate { kind, qubits: vec![q], trainable: true });
            }
        };
        let two = |kind: GateKind, a: usize, b: usize| LayoutGate {
            kind,
            qubits: vec![a, b],
            trainable: kind.is_parametric(),
        };
        match self {
            Ansatz::ModifiedPauliCrz | Ansatz::ModifiedPauliCrx => {
                let ent = self.controlled_kind();
                rot(&mut out, GateKind::RX);
                rot(&mut out, GateKind::RZ);
                // even bonds: (1→0), (3→2), …
                for q in (0..n - 1).step_by(2) {
                    out.push(two(ent, q + 1, q));
                }
                rot(&mut out, GateKind::RX);
                rot(&mut out, GateKind::RZ);
                // odd bonds: (2→1), (4→3), …
                for q in (1..n - 1).step_by(2) {
                    out.push(two(ent, q + 1, q));
                }
            }
            Ansatz::EfficientCrz | Ansatz::EfficientCrx => {
                let ent = self.controlled_kind();
                rot(&mut out, GateKind::RX);
                rot(&mut out, GateKind::RZ);
                for q in (0..n - 1).rev() {
                    out.push(two(ent, q + 1, q));
                }
            }
            Ansatz::HweCnot | Ansatz::HweCz => {
                let ent = if self == Ansatz::HweCnot { GateKind::CNOT } else { GateKind::CZ };
                rot(&mut out, GateKind::RY);
                rot(&mut out, GateKind::RZ);
                for q in 0..n - 1 {
                    out.push(two(ent, q, q + 1));
                }
            }
            Ansatz::Esu2 => {
                rot(&mut out, GateKind::RY);
                rot(&mut out, GateKind::RZ);
                for q in 0..n - 1 {
                    out.push(two(GateKind::CNOT, q, q + 1));
                }
                rot(&mut out, GateKind::RY);
                rot(&mut out, GateKind::RZ);
            }
            Ansatz::FullPauliCrz | Ansatz::FullPauliCrx => {
                let ent = self.controlled_kind();
                rot(&mut out, GateKind::RX);
                rot(&mut out, GateKind::RZ);
                for c in (0..n).rev() {
                    for t in (0..n).rev().filter(|&t| t != c) {
                        out.push(two(ent, c, t));
                    }
                }
                rot(&mut out, GateKind::RX);
                rot(&mut out, GateKind::RZ);
            }
            Ansatz::Hadamard => {
                for q in 0..n {
                    out.push(LayoutGate { kind: GateKind::H, qubits: vec![q], trainable: false });
                }
                for q in 0..n - 1 {
                    out.push(two(GateKind::CZ, q, q + 1));
                }
                rot(&mut out, GateKind::RX);
            }
            Ansatz::FullCrz | Ansatz::FullCrx => {
                let ent = self.controlled_kind();
                rot(&mut out, GateKind::RX);
                rot(&mut out, GateKind::RZ);
                for c in 0..n {
                    for t in c + 1..n {
                        out.push(two(ent, c, t));
                    }
                }
            }
        }
        Ok(out)
    }

    fn controlled_kind(self) -> GateKind {
        match self {
            Ansatz::ModifiedPauliCrx | Ansatz::EfficientCrx | Ansatz::FullPauliCrx | Ansatz::FullCrx => GateKind::CRX,
            _ => GateKind::CRZ,
        }
    }

    /// Trainable angles per layer on `n_qubits` qubits.
    pub fn params_per_layer(self, n_qubits: usize) -> Result<usize> {
        Ok(self.layout(n_qubits)?.iter().filter(|g| g.trainable).count())
    }

    /// Whether the layer contains gates that are not the identity at θ = 0.
    pub fn has_fixed_gates(self) -> bool {
        matches!(self, Ansatz::HweCnot | Ansatz::HweCz | Ansatz::Esu2 | Ansatz::Hadamard)
    }

    pub(crate) fn emit(self, b: &mut TemplateBuilder, n_qubits: usize) -> Result<()> {
        for g in self.layout(n_qubits)? {
            if g.trainable {
                b.trainable(g.kind, &g.qubits);
            } else {
                b.fixed(g.kind, &g.qubits);
            }
        }
        Ok(())
    }
}

impl fmt::Display for Ansatz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Ansatz {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ansatz::ALL
            .into_iter()
            .find(|a| a.name() == s.trim())
            .ok_or_else(|| Error::UnknownAnsatz { name: s.to_string(), legal: Ansatz::names() })
    }
}

impl TryFrom<String> for Ansatz {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Ansatz> for String {
    fn from(a: Ansatz) -> String {
        a.name().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_names_round_trip() {
        for a in Ansatz::ALL {
            assert_eq!(a.name().parse::<Ansatz>().unwrap(), a);
        }
        assert!(matches!("HWE".parse::<Ansatz>(), Err(Error::UnknownAnsatz { .. })));
    }

    #[test]
    fn single_qubit_rejected() {
        for a in Ansatz::ALL {
            assert!(a.layout(1).is_err());
        }
    }

    #[test]
    fn fixed_gate_flag_matches_layout() {
        for a in Ansatz::ALL {
            let fixed = a.layout(4).unwrap().iter().any(|g| !g.trainable);
            assert_eq!(fixed, a.has_fixed_gates(), "{a}");
        }
    }

    #[test]
    fn modified_pauli_on_two_qubits_has_one_bond() {
        let l = Ansatz::ModifiedPauliCrz.layout(2).unwrap();
        assert_eq!(l.iter().filter(|g| g.kind == GateKind::CRZ).count(), 1);
        assert_eq!(Ansatz::ModifiedPauliCrz.params_per_layer(2).unwrap(), 9);
    }
}
