use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::template::{FeatureTransform, TemplateBuilder};
use crate::error::{Error, Result};
use crate::statevector::GateKind;

/// Single-layer feature maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Embedding {
    /// `RY(x)` per qubit.
    A1,
    /// `RY(x)` then `RZ(x)` per qubit.
    A2,
    /// Mitarai: `RY(asin x²)` then `RZ(acos x²)` per qubit.
    M,
    /// `H`, `RZ(x)` per qubit, then `ZZ(xᵢxⱼ)` on every pair.
    Iqp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Entangler {
    Cnot,
    Cz,
}

impl Entangler {
    pub fn gate(self) -> GateKind {
        match self {
            Entangler::Cnot => GateKind::CNOT,
            Entangler::Cz => GateKind::CZ,
        }
    }
}

/// The 14 encoders: four single-layer maps and ten two-layer composites
/// `φ₁-φ₂-E` (IQP never appears in a composite).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Encoder {
    A1,
    A2,
    M,
    Iqp,
    A1A1Cnot,
    A2A2Cnot,
    MMCnot,
    MA1Cnot,
    MA2Cnot,
    A1A1Cz,
    A2A2Cz,
    MMCz,
    MA1Cz,
    MA2Cz,
}

impl Encoder {
    pub const ALL: [Encoder; 14] = [
        Encoder::A1,
        Encoder::A2,
        Encoder::M,
        Encoder::Iqp,
        Encoder::A1A1Cnot,
        Encoder::A2A2Cnot,
        Encoder::MMCnot,
        Encoder::MA1Cnot,
        Encoder::MA2Cnot,
        Encoder::A1A1Cz,
        Encoder::A2A2Cz,
        Encoder::MMCz,
        Encoder::MA1Cz,
        Encoder::MA2Cz,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Encoder::A1 => "A1",
            Encoder::A2 => "A2",
            Encoder::M => "M",
            Encoder::Iqp => "IQP",
            Encoder::A1A1Cnot => "A1-A1-CNOT",
            Encoder::A2A2Cnot => "A2-A2-CNOT",
            Encoder::MMCnot => "M-M-CNOT",
            Encoder::MA1Cnot => "M-A1-CNOT",
            Encoder::MA2Cnot => "M-A2-CNOT",
            Encoder::A1A1Cz => "A1-A1-CZ",
            Encoder::A2A2Cz => "A2-A2-CZ",
            Encoder::MMCz => "M-M-CZ",
            Encoder::MA1Cz => "M-A1-CZ",
            Encoder::MA2Cz => "M-A2-CZ",
        }
    }

    pub fn names() -> Vec<&'static str> {
        Self::ALL.iter().map(|e| e.name()).collect()
    }

    /// First sublayer and, for composites, the second sublayer with its
    /// entangler.
    pub fn layers(self) -> (Embedding, Option<(Embedding, Entangler)>) {
        use Embedding::*;
        use Entangler::*;
        match self {
            Encoder::A1 => (A1, None),
            Encoder::A2 => (A2, None),
            Encoder::M => (M, None),
            Encoder::Iqp => (Iqp, None),
            Encoder::A1A1Cnot => (A1, Some((A1, Cnot))),
            Encoder::A2A2Cnot => (A2, Some((A2, Cnot))),
            Encoder::MMCnot => (M, Some((M, Cnot))),
            Encoder::MA1Cnot => (M, Some((A1, Cnot))),
            Encoder::MA2Cnot => (M, Some((A2, Cnot))),
            Encoder::A1A1Cz => (A1, Some((A1, Cz))),
            Encoder::A2A2Cz => (A2, Some((A2, Cz))),
            Encoder::MMCz => (M, Some((M, Cz))),
            Encoder::MA1Cz => (M, Some((A1, Cz))),
            Encoder::MA2Cz => (M, Some((A2, Cz))),
        }
    }

    /// Emits the encoder onto `b`. Qubit `q` reads feature `q / redundancy`.
    pub(crate) fn emit(self, b: &mut TemplateBuilder, n_qubits: usize, redundancy: usize) {
        let (first, second) = self.layers();
        emit_embedding(b, first, n_qubits, redundancy);
        if let Some((second, ent)) = second {
            emit_entangler(b, ent, n_qubits);
            emit_embedding(b, second, n_qubits, redundancy);
            emit_entangler(b, ent, n_qubits);
        }
    }
}

fn emit_embedding(b: &mut TemplateBuilder, emb: Embedding, n_qubits: usize, redundancy: usize) {
    let feat = |q: usize| q / redundancy;
    match emb {
        Embedding::A1 => {
            for q in 0..n_qubits {
                b.feature(GateKind::RY, q, feat(q), FeatureTransform::Raw);
            }
        }
        Embedding::A2 => {
            for q in 0..n_qubits {
                b.feature(GateKind::RY, q, feat(q), FeatureTransform::Raw);
                b.feature(GateKind::RZ, q, feat(q), FeatureTransform::Raw);
            }
        }
        Embedding::M => {
            for q in 0..n_qubits {
                b.feature(GateKind::RY, q, feat(q), FeatureTransform::ArcsinSq);
                b.feature(GateKind::RZ, q, feat(q), FeatureTransform::ArccosSq);
            }
        }
        Embedding::Iqp => {
            for q in 0..n_qubits {
                b.fixed(GateKind::H, &[q]);
            }
            for q in 0..n_qubits {
                b.feature(GateKind::RZ, q, feat(q), FeatureTransform::Raw);
            }
            for i in 0..n_qubits {
                for j in i + 1..n_qubits {
                    b.feature_product(GateKind::ZZ, [i, j], feat(i), feat(j));
                }
            }
        }
    }
}

// Linear chain (q, q+1), no wrap-around.
fn emit_entangler(b: &mut TemplateBuilder, ent: Entangler, n_qubits: usize) {
    for q in 0..n_qubits.saturating_sub(1) {
        b.fixed(ent.gate(), &[q, q + 1]);
    }
}

impl fmt::Display for Encoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Encoder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Encoder::ALL
            .into_iter()
            .find(|e| e.name() == s.trim())
            .ok_or_else(|| Error::UnknownEncoder { name: s.to_string(), legal: Encoder::names() })
    }
}

impl TryFrom<String> for Encoder {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Encoder> for String {
    fn from(e: Encoder) -> String {
        e.name().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourteen_distinct_names() {
        let mut names = Encoder::names();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), 14);
        for e in Encoder::ALL {
            assert_eq!(e.name().parse::<Encoder>().unwrap(), e);
        }
    }

    #[test]
    fn iqp_never_in_composites() {
        for e in Encoder::ALL {
            if let (first, Some((second, _))) = e.layers() {
                assert_ne!(first, Embedding::Iqp);
                assert_ne!(second, Embedding::Iqp);
            }
        }
    }

    #[test]
    fn unknown_name_lists_legal_set() {
        let err = "A3".parse::<Encoder>().unwrap_err().to_string();
        assert!(err.contains("A3"));
        for n in Encoder::names() {
            assert!(err.contains(n), "{n} missing from {err}");
        }
    }
}
