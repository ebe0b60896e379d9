use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::statevector::{GateKind, GateOp, StateVector};

/// How a feature value becomes a rotation angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FeatureTransform {
    Raw,
    ArcsinSq,
    ArccosSq,
}

impl FeatureTransform {
    pub fn apply<T: Real>(self, x: T) -> T {
        match self {
            FeatureTransform::Raw => x,
            FeatureTransform::ArcsinSq => (x * x).asin(),
            FeatureTransform::ArccosSq => (x * x).acos(),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            FeatureTransform::Raw => "x",
            FeatureTransform::ArcsinSq => "asin(x^2)",
            FeatureTransform::ArccosSq => "acos(x^2)",
        }
    }
}

/// Where a slot's angle comes from at bind time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum AngleSource {
    /// Fixed gate without an angle.
    None,
    Feature { index: usize, transform: FeatureTransform },
    /// Product of two features, as in IQP's ZZ couplings.
    FeatureProduct { a: usize, b: usize },
    Param(usize),
}

/// Which part of the circuit a slot belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Block {
    Encoder { upload: usize },
    Ansatz { upload: usize, layer: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub kind: GateKind,
    qubits: [usize; 2],
    pub angle: AngleSource,
    pub block: Block,
}

impl Slot {
    pub fn qubits(&self) -> &[usize] {
        &self.qubits[..self.kind.arity()]
    }

    pub fn param(&self) -> Option<usize> {
        match self.angle {
            AngleSource::Param(p) => Some(p),
            _ => None,
        }
    }
}

/// Compiled circuit: an ordered slot list that binds to concrete gates once
/// parameters and features are supplied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitTemplate {
    n_qubits: usize,
    n_features: usize,
    total_params: usize,
    slots: Vec<Slot>,
}

impl CircuitTemplate {
    pub fn builder(n_qubits: usize, n_features: usize) -> TemplateBuilder {
        TemplateBuilder { n_qubits, n_features, block: Block::Encoder { upload: 0 }, slots: Vec::new(), next_param: 0 }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn n_features(&self) -> usize {
        self.n_features
    }

    pub fn total_params(&self) -> usize {
        self.total_params
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// Gate list for the given parameters and features.
    pub fn bind<T: Real>(&self, theta: &[T], x: &[T]) -> Result<Vec<GateOp<T>>> {
        if theta.len() != self.total_params {
            return Err(Error::Arity { what: "parameter vector", expected: self.total_params, got: theta.len() });
        }
        if x.len() != self.n_features {
            return Err(Error::Arity { what: "feature vector", expected: self.n_features, got: x.len() });
        }
        for (i, &v) in x.iter().enumerate() {
            if !v.is_finite() || v.abs() > T::one() {
                return Err(Error::Domain { feature: i, value: v.to_f64().unwrap_or(f64::NAN) });
            }
        }
        self.slots
            .iter()
            .map(|s| {
                let angle = match s.angle {
                    AngleSource::None => None,
                    AngleSource::Feature { index, transform } => Some(transform.apply(x[index])),
                    AngleSource::FeatureProduct { a, b } => Some(x[a] * x[b]),
                    AngleSource::Param(p) => Some(theta[p]),
                };
                GateOp::new(s.kind, s.qubits(), angle)
            })
            .collect()
    }

    /// Final state for `(theta, x)` starting from `|0…0⟩`.
    pub fn state<T: Real>(&self, theta: &[T], x: &[T]) -> Result<StateVector<T>> {
        let gates = self.bind(theta, x)?;
        let mut psi = StateVector::zero(self.n_qubits)?;
        psi.apply_all(&gates)?;
        Ok(psi)
    }

    /// ⟨Z₀⟩ of the bound circuit.
    pub fn evaluate<T: Real>(&self, theta: &[T], x: &[T]) -> Result<T> {
        Ok(self.state(theta, x)?.expectation_z0())
    }

    /// Appends `other`, renumbering its parameters after ours.
    pub fn concat(&self, other: &CircuitTemplate) -> Result<CircuitTemplate> {
        if self.n_qubits != other.n_qubits || self.n_features != other.n_features {
            return Err(Error::InvalidCircuit("cannot concatenate templates of different shape".into()));
        }
        let offset = self.total_params;
        let mut slots = self.slots.clone();
        slots.extend(other.slots.iter().map(|s| {
            let mut s = s.clone();
            if let AngleSource::Param(p) = s.angle {
                s.angle = AngleSource::Param(p + offset);
            }
            s
        }));
        Ok(CircuitTemplate {
            n_qubits: self.n_qubits,
            n_features: self.n_features,
            total_params: offset + other.total_params,
            slots,
        })
    }

    pub fn gate_count(&self) -> usize {
        self.slots.len()
    }

    /// Circuit depth with every gate as one time step (greedy layering).
    pub fn depth(&self) -> usize {
        let mut front = vec![0usize; self.n_qubits];
        for s in &self.slots {
            let level = s.qubits().iter().map(|&q| front[q]).max().unwrap_or(0) + 1;
            for &q in s.qubits() {
                front[q] = level;
            }
        }
        front.into_iter().max().unwrap_or(0)
    }

    pub fn count_kind(&self, kind: GateKind) -> usize {
        self.slots.iter().filter(|s| s.kind == kind).count()
    }

    /// Human-readable label of a slot, e.g. `RY[x0] q0` or `CRZ[θ3] q1,q0`.
    pub fn slot_label(slot: &Slot) -> String {
        let angle = match slot.angle {
            AngleSource::None => String::new(),
            AngleSource::Feature { index, transform } => match transform {
                FeatureTransform::Raw => format!("[x{index}]"),
                FeatureTransform::ArcsinSq => format!("[asin(x{index}^2)]"),
                FeatureTransform::ArccosSq => format!("[acos(x{index}^2)]"),
            },
            AngleSource::FeatureProduct { a, b } => format!("[x{a}*x{b}]"),
            AngleSource::Param(p) => format!("[θ{p}]"),
        };
        let qs: Vec<String> = slot.qubits().iter().map(|q| format!("q{q}")).collect();
        format!("{}{} {}", slot.kind, angle, qs.join(","))
    }
}

/// Incremental construction of a [`CircuitTemplate`].
#[derive(Debug, Clone)]
pub struct TemplateBuilder {
    n_qubits: usize,
    n_features: usize,
    block: Block,
    slots: Vec<Slot>,
    next_param: usize,
}

impl TemplateBuilder {
    /// Tags subsequently pushed slots.
    pub fn set_block(&mut self, block: Block) -> &mut Self {
        self.block = block;
        self
    }

    fn push(&mut self, kind: GateKind, qubits: &[usize], angle: AngleSource) {
        let mut qs = [usize::MAX; 2];
        qs[..qubits.len()].copy_from_slice(qubits);
        self.slots.push(Slot { kind, qubits: qs, angle, block: self.block });
    }

    pub fn fixed(&mut self, kind: GateKind, qubits: &[usize]) -> &mut Self {
        self.push(kind, qubits, AngleSource::None);
        self
    }

    pub fn feature(&mut self, kind: GateKind, qubit: usize, index: usize, transform: FeatureTransform) -> &mut Self {
        self.push(kind, &[qubit], AngleSource::Feature { index, transform });
        self
    }

    pub fn feature_product(&mut self, kind: GateKind, qubits: [usize; 2], a: usize, b: usize) -> &mut Self {
        self.push(kind, &qubits, AngleSource::FeatureProduct { a, b });
        self
    }

    /// Adds a gate with a fresh trainable angle.
    pub fn trainable(&mut self, kind: GateKind, qubits: &[usize]) -> &mut Self {
        let p = self.next_param;
        self.next_param += 1;
        self.push(kind, qubits, AngleSource::Param(p));
        self
    }

    pub fn build(self) -> Result<CircuitTemplate> {
        if self.n_qubits == 0 {
            return Err(Error::InvalidCircuit("template needs at least one qubit".into()));
        }
        for s in &self.slots {
            let qs = s.qubits();
            if qs.len() != s.kind.arity() || qs.iter().any(|&q| q >= self.n_qubits) {
                return Err(Error::InvalidCircuit(format!("bad targets for {}", s.kind)));
            }
            if qs.len() == 2 && qs[0] == qs[1] {
                return Err(Error::InvalidCircuit(format!("{} on a repeated qubit", s.kind)));
            }
            let needs_angle = s.kind.is_parametric();
            let has_angle = !matches!(s.angle, AngleSource::None);
            if needs_angle != has_angle {
                return Err(Error::InvalidCircuit(format!("angle source mismatch for {}", s.kind)));
            }
            match s.angle {
                AngleSource::Feature { index, .. } if index >= self.n_features => {
                    return Err(Error::InvalidCircuit(format!("feature index {index} >= {}", self.n_features)));
                }
                AngleSource::FeatureProduct { a, b } if a.max(b) >= self.n_features => {
                    return Err(Error::InvalidCircuit(format!("feature index {} >= {}", a.max(b), self.n_features)));
                }
                _ => {}
            }
        }
        Ok(CircuitTemplate {
            n_qubits: self.n_qubits,
            n_features: self.n_features,
            total_params: self.next_param,
            slots: self.slots,
        })
    }
}
