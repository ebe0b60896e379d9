use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Gate alphabet used by encoders and ansätze.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    RY,
    RZ,
    RX,
    H,
    X,
    CNOT,
    CZ,
    CRX,
    CRZ,
    ZZ,
}

impl GateKind {
    pub const ALL: [GateKind; 10] = [
        GateKind::RY,
        GateKind::RZ,
        GateKind::RX,
        GateKind::H,
        GateKind::X,
        GateKind::CNOT,
        GateKind::CZ,
        GateKind::CRX,
        GateKind::CRZ,
        GateKind::ZZ,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GateKind::RY => "RY",
            GateKind::RZ => "RZ",
            GateKind::RX => "RX",
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::CNOT => "CNOT",
            GateKind::CZ => "CZ",
            GateKind::CRX => "CRX",
            GateKind::CRZ => "CRZ",
            GateKind::ZZ => "ZZ",
        }
    }

    /// Number of qubits the gate acts on.
    pub fn arity(self) -> usize {
        match self {
            GateKind::RY | GateKind::RZ | GateKind::RX | GateKind::H | GateKind::X => 1,
            GateKind::CNOT | GateKind::CZ | GateKind::CRX | GateKind::CRZ | GateKind::ZZ => 2,
        }
    }

    pub fn is_parametric(self) -> bool {
        matches!(
            self,
            GateKind::RY | GateKind::RZ | GateKind::RX | GateKind::CRX | GateKind::CRZ | GateKind::ZZ
        )
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GateKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidGate(format!("unknown gate kind {s:?}")))
    }
}

/// A concrete gate: kind, target qubits (control first) and angle.
///
/// Construction guarantees arity, distinct targets and that exactly the
/// parametric kinds carry an angle. Range checks against a particular state
/// happen at application time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateOp<T> {
    kind: GateKind,
    qubits: [usize; 2],
    angle: Option<T>,
}

impl<T: Real> GateOp<T> {
    pub fn new(kind: GateKind, qubits: &[usize], angle: Option<T>) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::InvalidGate(format!(
                "{kind} acts on {} qubit(s), got {}",
                kind.arity(),
                qubits.len()
            )));
        }
        if kind.arity() == 2 && qubits[0] == qubits[1] {
            return Err(Error::InvalidGate(format!(
                "{kind} needs distinct qubits, got {0} twice",
                qubits[0]
            )));
        }
        if kind.is_parametric() != angle.is_some() {
            return Err(Error::InvalidGate(if kind.is_parametric() {
                format!("{kind} requires an angle")
            } else {
                format!("{kind} takes no angle")
            }));
        }
        let second = if kind.arity() == 2 { qubits[1] } else { usize::MAX };
        Ok(Self { kind, qubits: [qubits[0], second], angle })
    }

    fn one(kind: GateKind, q: usize, angle: Option<T>) -> Self {
        Self { kind, qubits: [q, usize::MAX], angle }
    }

    fn two(kind: GateKind, a: usize, b: usize, angle: Option<T>) -> Self {
        assert_ne!(a, b, "{kind} needs distinct qubits");
        Self { kind, qubits: [a, b], angle }
    }

    pub fn ry(q: usize, theta: T) -> Self {
        Self::one(GateKind::RY, q, Some(theta))
    }

    pub fn rz(q: usize, theta: T) -> Self {
        Self::one(GateKind::RZ, q, Some(theta))
    }

    pub fn rx(q: usize, theta: T) -> Self {
        Self::one(GateKind::RX, q, Some(theta))
    }

    pub fn h(q: usize) -> Self {
        Self::one(GateKind::H, q, None)
    }

    pub fn x(q: usize) -> Self {
        Self::one(GateKind::X, q, None)
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Self::two(GateKind::CNOT, control, target, None)
    }

    pub fn cz(a: usize, b: usize) -> Self {
        Self::two(GateKind::CZ, a, b, None)
    }

    pub fn crx(control: usize, target: usize, theta: T) -> Self {
        Self::two(GateKind::CRX, control, target, Some(theta))
    }

    pub fn crz(control: usize, target: usize, theta: T) -> Self {
        Self::two(GateKind::CRZ, control, target, Some(theta))
    }

    /// `exp(-i phi Z⊗Z)`.
    pub fn zz(a: usize, b: usize, phi: T) -> Self {
        Self::two(GateKind::ZZ, a, b, Some(phi))
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits[..self.kind.arity()]
    }

    pub fn angle(&self) -> Option<T> {
        self.angle
    }

    /// Same gate with its angle replaced. No-op for fixed gates.
    pub fn with_angle(mut self, theta: T) -> Self {
        if self.angle.is_some() {
            self.angle = Some(theta);
        }
        self
    }

    /// Checks the gate against an `n_qubits` register.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        for &q in self.qubits() {
            if q >= n_qubits {
                return Err(Error::QubitIndex { index: q, n_qubits });
            }
        }
        if let Some(a) = self.angle {
            if !a.is_finite() {
                return Err(Error::NonFiniteAngle(self.kind.name()));
            }
        }
        Ok(())
    }

    /// Row-major matrix in the gate's local basis.
    ///
    /// Two-qubit gates use local index `2·b₀ + b₁`, where `b₀` is the bit of
    /// the first listed qubit (the control), so controlled gates are
    /// `diag(I, U)`.
    pub fn local_matrix(&self) -> Vec<Complex<T>> {
        let zero = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let theta = self.angle.unwrap_or_else(T::zero);
        match self.kind {
            GateKind::RY | GateKind::RZ | GateKind::RX | GateKind::H | GateKind::X => {
                single_qubit_matrix(self.kind, theta).to_vec()
            }
            GateKind::CNOT | GateKind::CZ | GateKind::CRX | GateKind::CRZ => {
                let u = match self.kind {
                    GateKind::CNOT => single_qubit_matrix(GateKind::X, theta),
                    GateKind::CZ => [one, zero, zero, -one],
                    GateKind::CRX => single_qubit_matrix(GateKind::RX, theta),
                    _ => single_qubit_matrix(GateKind::RZ, theta),
                };
                let mut m = vec![zero; 16];
                m[0] = one;
                m[5] = one;
                m[10] = u[0];
                m[11] = u[1];
                m[14] = u[2];
                m[15] = u[3];
                m
            }
            GateKind::ZZ => {
                let minus = Complex::from_polar(T::one(), -theta);
                let plus = Complex::from_polar(T::one(), theta);
                let mut m = vec![zero; 16];
                m[0] = minus;
                m[5] = plus;
                m[10] = plus;
                m[15] = minus;
                m
            }
        }
    }
}

/// 2×2 matrix for a single-qubit kind, row-major.
pub(crate) fn single_qubit_matrix<T: Real>(kind: GateKind, theta: T) -> [Complex<T>; 4] {
    let z = T::zero();
    let c = |re: T, im: T| Complex::new(re, im);
    let half = theta / T::lit(2.0);
    let (s, co) = half.sin_cos();
    match kind {
        GateKind::RY => [c(co, z), c(-s, z), c(s, z), c(co, z)],
        GateKind::RZ => [c(co, -s), c(z, z), c(z, z), c(co, s)],
        GateKind::RX => [c(co, z), c(z, -s), c(z, -s), c(co, z)],
        GateKind::H => {
            let r = T::FRAC_1_SQRT_2();
            [c(r, z), c(r, z), c(r, z), c(-r, z)]
        }
        GateKind::X => [c(z, z), c(T::one(), z), c(T::one(), z), c(z, z)],
        other => panic!("{other} is not a single-qubit gate"),
    }
}

impl<T: Real> fmt::Display for GateOp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if let Some(a) = self.angle {
            write!(f, "({a:.6})")?;
        }
        let qs: Vec<String> = self.qubits().iter().map(|q| format!("q{q}")).collect();
        write!(f, " {}", qs.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructor_rejects_bad_shapes() {
        assert!(GateOp::<f64>::new(GateKind::CNOT, &[1, 1], None).is_err());
        assert!(GateOp::<f64>::new(GateKind::RY, &[0], None).is_err());
        assert!(GateOp::new(GateKind::H, &[0], Some(0.1_f64)).is_err());
        assert!(GateOp::<f64>::new(GateKind::CZ, &[0], None).is_err());
        let g = GateOp::new(GateKind::CRZ, &[2, 0], Some(0.5_f64)).unwrap();
        assert_eq!(g.qubits(), &[2, 0]);
    }

    #[test]
    fn validate_checks_range_and_finiteness() {
        assert!(matches!(
            GateOp::ry(3, 0.1_f64).validate(3),
            Err(Error::QubitIndex { index: 3, n_qubits: 3 })
        ));
        assert!(matches!(GateOp::rz(0, f64::NAN).validate(1), Err(Error::NonFiniteAngle("RZ"))));
        assert!(GateOp::<f64>::cnot(0, 2).validate(3).is_ok());
    }

    #[test]
    fn gate_kind_round_trips_through_name() {
        for k in GateKind::ALL {
            assert_eq!(k.name().parse::<GateKind>().unwrap(), k);
        }
    }

    #[test]
    fn zz_matrix_is_the_stated_diagonal() {
        let phi = 0.37_f64;
        let m = GateOp::zz(0, 1, phi).local_matrix();
        let e = |s: f64| Complex::from_polar(1.0, s * phi);
        for (idx, want) in [(0, e(-1.0)), (5, e(1.0)), (10, e(1.0)), (15, e(-1.0))] {
            assert!((m[idx] - want).norm() < 1e-15);
        }
    }
}
