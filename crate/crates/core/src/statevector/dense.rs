//! Dense-matrix reference path.
//!
//! Every gate is expanded to a full 2ⁿ×2ⁿ matrix as a sum of Kronecker
//! products of single-qubit operators and multiplied onto the state. Nothing
//! here shares indexing code with the in-place kernels.

use num_complex::Complex;

use super::{GateOp, StateVector};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest register the dense oracle will expand (2¹⁰×2¹⁰ matrices).
pub const ORACLE_MAX_QUBITS: usize = 10;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary<T> {
    dim: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Real> DenseUnitary<T> {
    pub fn from_entries(dim: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::Arity { what: "matrix entries", expected: dim * dim, got: entries.len() });
        }
        Ok(Self { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![czero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = cone();
        }
        Self { dim, entries }
    }

    /// The gate's own 2×2 or 4×4 matrix.
    pub fn local(gate: &GateOp<T>) -> Self {
        let m = gate.local_matrix();
        let dim = if m.len() == 4 { 2 } else { 4 };
        Self { dim, entries: m }
    }

    /// The gate lifted to an `n_qubits` register.
    pub fn embed(gate: &GateOp<T>, n_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > ORACLE_MAX_QUBITS {
            return Err(Error::Capacity { requested: n_qubits, max: ORACLE_MAX_QUBITS });
        }
        gate.validate(n_qubits)?;
        let local = Self::local(gate);
        let qs = gate.qubits();
        let dim = 1usize << n_qubits;
        let mut acc = Self { dim, entries: vec![czero(); dim * dim] };
        match qs {
            [q] => {
                let mut ops: Vec<Self> = (0..n_qubits).map(|_| Self::identity(2)).collect();
                ops[*q] = local;
                acc = kron_chain(&ops);
            }
            [a, b] => {
                for r in 0..4 {
                    for c in 0..4 {
                        let coeff = local.entries[r * 4 + c];
                        if coeff == czero() {
                            continue;
                        }
                        let mut ops: Vec<Self> = (0..n_qubits).map(|_| Self::identity(2)).collect();
                        ops[*a] = Self::unit(r >> 1, c >> 1);
                        ops[*b] = Self::unit(r & 1, c & 1);
                        let term = kron_chain(&ops);
                        for (dst, src) in acc.entries.iter_mut().zip(&term.entries) {
                            *dst = *dst + coeff * *src;
                        }
                    }
                }
            }
            _ => unreachable!("gates act on one or two qubits"),
        }
        Ok(acc)
    }

    // |row⟩⟨col| on one qubit
    fn unit(row: usize, col: usize) -> Self {
        let mut entries = vec![czero(); 4];
        entries[row * 2 + col] = cone();
        Self { dim: 2, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex<T> {
        self.entries[row * self.dim + col]
    }

    pub fn kron(&self, rhs: &Self) -> Self {
        let (m, p) = (self.dim, rhs.dim);
        let dim = m * p;
        let mut entries = vec![czero(); dim * dim];
        for i in 0..m {
            for j in 0..m {
                let a = self.entries[i * m + j];
                if a == czero() {
                    continue;
                }
                for k in 0..p {
                    for l in 0..p {
                        entries[(i * p + k) * dim + (j * p + l)] = a * rhs.entries[k * p + l];
                    }
                }
            }
        }
        Self { dim, entries }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let d = self.dim;
        assert_eq!(d, rhs.dim);
        let mut entries = vec![czero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.entries[i * d + k];
                if a == czero() {
                    continue;
                }
                for j in 0..d {
                    entries[i * d + j] = entries[i * d + j] + a * rhs.entries[k * d + j];
                }
            }
        }
        Self { dim: d, entries }
    }

    pub fn adjoint(&self) -> Self {
        let d = self.dim;
        let mut entries = vec![czero(); d * d];
        for i in 0..d {
            for j in 0..d {
                entries[j * d + i] = self.entries[i * d + j].conj();
            }
        }
        Self { dim: d, entries }
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        let d = self.dim;
        assert_eq!(v.len(), d);
        (0..d)
            .map(|i| {
                self.entries[i * d..(i + 1) * d]
                    .iter()
                    .zip(v)
                    .fold(czero(), |acc, (a, b)| acc + *a * *b)
            })
            .collect()
    }

    /// Largest entry of |U†U − I|.
    pub fn unitarity_error(&self) -> T {
        let prod = self.adjoint().matmul(self);
        let id = Self::identity(self.dim);
        prod.entries
            .iter()
            .zip(&id.entries)
            .map(|(a, b)| (*a - *b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_error() <= tol
    }
}

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

// ops[n-1] ⊗ … ⊗ ops[0]: qubit 0 is the least-significant index bit.
fn kron_chain<T: Real>(ops: &[DenseUnitary<T>]) -> DenseUnitary<T> {
    let mut iter = ops.iter().rev();
    let first = iter.next().expect("at least one qubit").clone();
    iter.fold(first, |acc, op| acc.kron(op))
}

/// Runs `gates` on `|0⟩^{⊗n}` by dense matrix-vector products.
pub fn oracle_apply<T: Real>(n: usize, gates: &[GateOp<T>]) -> Result<StateVector<T>> {
    if n == 0 || n > ORACLE_MAX_QUBITS {
        return Err(Error::Capacity { requested: n, max: ORACLE_MAX_QUBITS });
    }
    let dim = 1usize << n;
    let mut v = vec![czero(); dim];
    v[0] = cone();
    for g in gates {
        v = DenseUnitary::embed(g, n)?.mul_vec(&v);
    }
    StateVector::from_amplitudes(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statevector::GateKind;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn ry_pi_oracle() {
        let s = oracle_apply(1, &[GateOp::ry(0, std::f64::consts::PI)]).unwrap();
        assert!(s.amplitudes()[0].norm() < 1e-15);
        assert!((s.amplitudes()[1] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn bell_state() {
        let s = oracle_apply::<f64>(2, &[GateOp::h(0), GateOp::cnot(0, 1)]).unwrap();
        let want = [FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2];
        for (a, w) in s.amplitudes().iter().zip(want) {
            assert!((a - c(w, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn embedded_cnot_matches_truth_table() {
        // control 2, target 0 on 3 qubits: |100> (4) -> |101> (5)
        let u = DenseUnitary::embed(&GateOp::<f64>::cnot(2, 0), 3).unwrap();
        for col in 0..8usize {
            let want_row = if col & 0b100 != 0 { col ^ 1 } else { col };
            for row in 0..8 {
                let want = if row == want_row { 1.0 } else { 0.0 };
                assert_eq!(u.get(row, col), c(want, 0.0));
            }
        }
    }

    #[test]
    fn local_matrices_match_textbook_forms() {
        let t = 0.7_f64;
        let (s, co) = (t / 2.0).sin_cos();
        let ry = DenseUnitary::local(&GateOp::ry(0, t));
        assert_eq!(ry.entries(), &[c(co, 0.0), c(-s, 0.0), c(s, 0.0), c(co, 0.0)]);
        let rz = DenseUnitary::local(&GateOp::rz(0, t));
        assert_eq!(rz.entries(), &[c(co, -s), c(0.0, 0.0), c(0.0, 0.0), c(co, s)]);
        let rx = DenseUnitary::local(&GateOp::rx(0, t));
        assert_eq!(rx.entries(), &[c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0)]);
        let crz = DenseUnitary::local(&GateOp::crz(0, 1, t));
        assert_eq!(crz.get(0, 0), c(1.0, 0.0));
        assert_eq!(crz.get(1, 1), c(1.0, 0.0));
        assert_eq!(crz.get(2, 2), c(co, -s));
        assert_eq!(crz.get(3, 3), c(co, s));
    }

    #[test]
    fn every_kind_is_unitary() {
        for kind in GateKind::ALL {
            let qs: &[usize] = if kind.arity() == 1 { &[0] } else { &[0, 1] };
            let angle = kind.is_parametric().then_some(1.234_f64);
            let g = GateOp::new(kind, qs, angle).unwrap();
            assert!(DenseUnitary::local(&g).is_unitary(1e-12), "{kind}");
            assert!(DenseUnitary::embed(&g, 3).unwrap().is_unitary(1e-12), "{kind}");
        }
    }

    #[test]
    fn oracle_rejects_large_registers() {
        assert!(matches!(
            oracle_apply::<f64>(11, &[]),
            Err(Error::Capacity { requested: 11, max: 10 })
        ));
    }
}
