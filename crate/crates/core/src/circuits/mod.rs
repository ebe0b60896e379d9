//! Encoders, ansätze and their composition into full PQCs.
//!
//! A PQC with re-upload depth `k` and `v` ansatz layers is
//! `k × [encoder; v × ansatz]`, each ansatz repetition carrying its own
//! parameters. The prediction is ⟨Z₀⟩ of the final state.

mod ansatz;
mod encoder;
mod template;

pub use ansatz::{Ansatz, LayoutGate};
pub use encoder::{Embedding, Encoder, Entangler};
pub use template::{AngleSource, Block, CircuitTemplate, FeatureTransform, Slot, TemplateBuilder};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Upper bound on re-upload depth and ansatz layers.
pub const MAX_REPEATS: usize = 64;

/// Full identity of a PQC.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CircuitSpec {
    pub n_qubits: usize,
    pub encoder: Encoder,
    pub ansatz: Ansatz,
    /// Re-upload depth `k`.
    pub rud: usize,
    /// Ansatz layers `v` per re-upload block.
    pub ansatz_layers: usize,
    /// Qubits per feature.
    pub redundancy: usize,
}

impl CircuitSpec {
    pub fn new(n_qubits: usize, encoder: Encoder, ansatz: Ansatz) -> Self {
        Self { n_qubits, encoder, ansatz, rud: 1, ansatz_layers: 1, redundancy: 1 }
    }

    pub fn with_depth(mut self, rud: usize, ansatz_layers: usize) -> Self {
        self.rud = rud;
        self.ansatz_layers = ansatz_layers;
        self
    }

    pub fn with_redundancy(mut self, redundancy: usize) -> Self {
        self.redundancy = redundancy;
        self
    }

    /// Feature count `d = n_qubits / redundancy`.
    pub fn n_features(&self) -> usize {
        self.n_qubits / self.redundancy.max(1)
    }

    /// Conventional `ENCODER_ANSATZ` label.
    pub fn label(&self) -> String {
        format!("{}_{}", self.encoder, self.ansatz)
    }

    pub fn validate(&self) -> Result<()> {
        if self.redundancy == 0 || !self.n_qubits.is_multiple_of(self.redundancy) {
            return Err(Error::InvalidCircuit(format!(
                "{} qubits not divisible by redundancy {}",
                self.n_qubits, self.redundancy
            )));
        }
        if self.n_qubits < 2 {
            return Err(Error::InvalidCircuit("a PQC needs at least 2 qubits".into()));
        }
        for (what, v) in [("re-upload depth", self.rud), ("ansatz layers", self.ansatz_layers)] {
            if v == 0 || v > MAX_REPEATS {
                return Err(Error::InvalidCircuit(format!("{what} {v} outside 1..={MAX_REPEATS}")));
            }
        }
        Ok(())
    }
}

/// Encoder fragment on `n_qubits` qubits with `redundancy` qubits per feature.
pub fn build_encoder(encoder: Encoder, n_qubits: usize, redundancy: usize) -> Result<CircuitTemplate> {
    if redundancy == 0 || n_qubits == 0 || !n_qubits.is_multiple_of(redundancy) {
        return Err(Error::InvalidCircuit(format!("{n_qubits} qubits not divisible by redundancy {redundancy}")));
    }
    let mut b = CircuitTemplate::builder(n_qubits, n_qubits / redundancy);
    encoder.emit(&mut b, n_qubits, redundancy);
    b.build()
}

/// One ansatz layer on `n_qubits` qubits, bound to `n_features` inputs.
pub fn ansatz_layout(ansatz: Ansatz, n_qubits: usize, n_features: usize) -> Result<CircuitTemplate> {
    let mut b = CircuitTemplate::builder(n_qubits, n_features);
    b.set_block(Block::Ansatz { upload: 0, layer: 0 });
    ansatz.emit(&mut b, n_qubits)?;
    b.build()
}

/// Assembles `k × [encoder; v × ansatz]`.
pub fn assemble_pqc(spec: &CircuitSpec) -> Result<CircuitTemplate> {
    spec.validate()?;
    let mut b = CircuitTemplate::builder(spec.n_qubits, spec.n_features());
    for upload in 0..spec.rud {
        b.set_block(Block::Encoder { upload });
        spec.encoder.emit(&mut b, spec.n_qubits, spec.redundancy);
        for layer in 0..spec.ansatz_layers {
            b.set_block(Block::Ansatz { upload, layer });
            spec.ansatz.emit(&mut b, spec.n_qubits)?;
        }
    }
    b.build()
}

/// ⟨Z₀⟩ prediction for one sample.
pub fn evaluate<T: Real>(template: &CircuitTemplate, theta: &[T], x: &[T]) -> Result<T> {
    template.evaluate(theta, x)
}

/// Text report: totals plus per-block and per-qubit gate listings.
pub fn describe(spec: &CircuitSpec) -> Result<String> {
    let t = assemble_pqc(spec)?;
    let p = spec.ansatz.params_per_layer(spec.n_qubits)?;
    let mut out = String::new();
    let _ = writeln!(out, "circuit      {}", spec.label());
    let _ = writeln!(out, "qubits       {}", spec.n_qubits);
    let _ = writeln!(out, "features     {} (redundancy {})", spec.n_features(), spec.redundancy);
    let _ = writeln!(out, "rud (k)      {}", spec.rud);
    let _ = writeln!(out, "layers (v)   {}", spec.ansatz_layers);
    let _ = writeln!(out, "gates        {}", t.gate_count());
    let _ = writeln!(out, "depth        {}", t.depth());
    let _ = writeln!(out, "parameters   {} (= {} x {} x {})", t.total_params(), spec.rud, spec.ansatz_layers, p);

    let mut current = None;
    for slot in t.slots() {
        if current != Some(slot.block) {
            current = Some(slot.block);
            let count = t.slots().iter().filter(|s| s.block == slot.block).count();
            match slot.block {
                Block::Encoder { upload } => {
                    let _ = writeln!(out, "\n[encoder {}, upload {}] {} gates", spec.encoder, upload, count);
                }
                Block::Ansatz { upload, layer } => {
                    let _ = writeln!(out, "\n[ansatz {}, upload {}, layer {}] {} gates", spec.ansatz, upload, layer, count);
                }
            }
        }
        let _ = writeln!(out, "  {}", CircuitTemplate::slot_label(slot));
    }

    let _ = writeln!(out, "\n[per-qubit]");
    for q in 0..spec.n_qubits {
        let labels: Vec<String> = t
            .slots()
            .iter()
            .filter(|s| s.qubits().contains(&q))
            .map(|s| s.kind.to_string())
            .collect();
        let _ = writeln!(out, "  q{q}: {}", labels.join(" "));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::GateKind;

    #[test]
    fn a1_zero_input_gives_plus_one() {
        let t = build_encoder(Encoder::A1, 5, 1).unwrap();
        assert_eq!(t.count_kind(GateKind::RY), 5);
        assert_eq!(t.gate_count(), 5);
        assert_eq!(t.evaluate::<f64>(&[], &[0.0; 5]).unwrap(), 1.0);
    }

    #[test]
    fn mitarai_at_one() {
        let t = build_encoder(Encoder::M, 1, 1).unwrap();
        let gates = t.bind::<f64>(&[], &[1.0]).unwrap();
        assert_eq!(gates[0].kind(), GateKind::RY);
        assert!((gates[0].angle().unwrap() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert_eq!(gates[1].kind(), GateKind::RZ);
        assert_eq!(gates[1].angle().unwrap(), 0.0);
        assert!(t.evaluate::<f64>(&[], &[1.0]).unwrap().abs() < 1e-15);
    }

    #[test]
    fn iqp_zero_input() {
        let t = build_encoder(Encoder::Iqp, 3, 1).unwrap();
        assert_eq!(t.count_kind(GateKind::H), 3);
        assert_eq!(t.count_kind(GateKind::RZ), 3);
        assert_eq!(t.count_kind(GateKind::ZZ), 3);
        assert!(t.evaluate::<f64>(&[], &[0.0; 3]).unwrap().abs() < 1e-12);
    }

    #[test]
    fn composite_layout_order() {
        let t = build_encoder(Encoder::MA1Cz, 3, 1).unwrap();
        let kinds: Vec<GateKind> = t.slots().iter().map(|s| s.kind).collect();
        use GateKind::*;
        assert_eq!(kinds, vec![RY, RZ, RY, RZ, RY, RZ, CZ, CZ, RY, RY, RY, CZ, CZ]);
    }

    #[test]
    fn redundancy_repeats_features() {
        let t = build_encoder(Encoder::A2, 4, 2).unwrap();
        assert_eq!(t.n_features(), 2);
        for f in 0..2 {
            let uses = t
                .slots()
                .iter()
                .filter(|s| matches!(s.angle, AngleSource::Feature { index, .. } if index == f))
                .count();
            assert_eq!(uses, 4);
        }
        assert!(build_encoder(Encoder::A1, 5, 2).is_err());
    }

    #[test]
    fn param_count_is_k_v_p() {
        let spec = CircuitSpec::new(5, Encoder::A2, Ansatz::HweCnot).with_depth(3, 5);
        let t = assemble_pqc(&spec).unwrap();
        assert_eq!(t.total_params(), 15 * Ansatz::HweCnot.params_per_layer(5).unwrap());
        let idx: Vec<usize> = t.slots().iter().filter_map(Slot::param).collect();
        assert_eq!(idx, (0..t.total_params()).collect::<Vec<_>>());
    }

    #[test]
    fn spec_validation() {
        assert!(CircuitSpec::new(5, Encoder::A1, Ansatz::HweCz).with_redundancy(2).validate().is_err());
        assert!(CircuitSpec::new(4, Encoder::A1, Ansatz::HweCz).with_depth(0, 1).validate().is_err());
        assert!(CircuitSpec::new(1, Encoder::A1, Ansatz::HweCz).validate().is_err());
    }

    #[test]
    fn describe_lists_iqp_gates() {
        let text = describe(&CircuitSpec::new(5, Encoder::Iqp, Ansatz::HweCnot)).unwrap();
        assert!(text.contains("[encoder IQP, upload 0] 20 gates"), "{text}");
        assert!(text.contains("parameters   10 (= 1 x 1 x 10)"));
    }
}
