//! Dense statevector simulation.
//!
//! Qubit 0 is the least-significant bit of the basis index. Gates are applied
//! in place one at a time by walking the index pairs a gate couples; the
//! [`dense`] module rebuilds the same evolution from full 2ⁿ×2ⁿ matrices and
//! serves as the independent oracle for tests.

pub mod dense;
mod gate;

pub use dense::{oracle_apply, DenseUnitary, ORACLE_MAX_QUBITS};
pub use gate::{GateKind, GateOp};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default ceiling on register width (2²⁴ amplitudes ≈ 256 MiB in f64).
pub const DEFAULT_MAX_QUBITS: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    n_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// `|0…0⟩` on `n` qubits, `1 ≤ n ≤ DEFAULT_MAX_QUBITS`.
    pub fn zero(n: usize) -> Result<Self> {
        Self::zero_with_limit(n, DEFAULT_MAX_QUBITS)
    }

    pub fn zero_with_limit(n: usize, max_qubits: usize) -> Result<Self> {
        if n == 0 || n > max_qubits {
            return Err(Error::Capacity { requested: n, max: max_qubits });
        }
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); 1 << n];
        amplitudes[0] = Complex::new(T::one(), T::zero());
        Ok(Self { n_qubits: n, amplitudes })
    }

    /// Wraps raw amplitudes. The length must be a power of two; no
    /// normalization is performed.
    pub fn from_amplitudes(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidGate(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        Ok(Self { n_qubits: len.trailing_zeros() as usize, amplitudes })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    /// Σ|aᵢ|².
    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies `gate` in place.
    pub fn apply(&mut self, gate: &GateOp<T>) -> Result<()> {
        gate.validate(self.n_qubits)?;
        let q = gate.qubits();
        let theta = gate.angle().unwrap_or_else(T::zero);
        let half = theta / T::lit(2.0);
        match gate.kind() {
            GateKind::RY => {
                let (s, c) = half.sin_cos();
                self.apply_real_2x2(q[0], [c, -s, s, c]);
            }
            GateKind::RX => {
                let (s, c) = half.sin_cos();
                let cc = Complex::new(c, T::zero());
                let ms = Complex::new(T::zero(), -s);
                self.apply_2x2(q[0], None, [cc, ms, ms, cc]);
            }
            GateKind::RZ => {
                let (s, c) = half.sin_cos();
                self.apply_diag(q[0], None, Complex::new(c, -s), Complex::new(c, s));
            }
            GateKind::H => {
                let r = T::FRAC_1_SQRT_2();
                self.apply_real_2x2(q[0], [r, r, r, -r]);
            }
            GateKind::X => self.apply_x(q[0], None),
            GateKind::CNOT => self.apply_x(q[1], Some(q[0])),
            GateKind::CZ => {
                let mask = (1usize << q[0]) | (1usize << q[1]);
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    if i & mask == mask {
                        *a = -*a;
                    }
                }
            }
            GateKind::CRX => {
                let (s, c) = half.sin_cos();
                let cc = Complex::new(c, T::zero());
                let ms = Complex::new(T::zero(), -s);
                self.apply_2x2(q[1], Some(q[0]), [cc, ms, ms, cc]);
            }
            GateKind::CRZ => {
                let (s, c) = half.sin_cos();
                self.apply_diag(q[1], Some(q[0]), Complex::new(c, -s), Complex::new(c, s));
            }
            GateKind::ZZ => {
                let (s, c) = theta.sin_cos();
                let same = Complex::new(c, -s);
                let differ = Complex::new(c, s);
                let (ba, bb) = (q[0], q[1]);
                for (i, a) in self.amplitudes.iter_mut().enumerate() {
                    let parity = ((i >> ba) ^ (i >> bb)) & 1;
                    *a = *a * if parity == 0 { same } else { differ };
                }
            }
        }
        Ok(())
    }

    /// Applies every gate in order.
    pub fn apply_all<'a, I>(&mut self, gates: I) -> Result<()>
    where
        I: IntoIterator<Item = &'a GateOp<T>>,
    {
        for g in gates {
            self.apply(g)?;
        }
        Ok(())
    }

    /// ⟨Z⟩ on qubit 0.
    pub fn expectation_z0(&self) -> T {
        debug_assert!(
            (self.norm_sqr() - T::one()).abs() < T::lit(1e-6),
            "expectation_z0 on an unnormalized state"
        );
        let mut acc = T::zero();
        for pair in self.amplitudes.chunks_exact(2) {
            acc = acc + pair[0].norm_sqr() - pair[1].norm_sqr();
        }
        acc
    }

    // Index pairs (i, i | 1<<target) with the target bit clear and, when
    // given, the control bit set.
    #[inline]
    fn for_each_pair(&mut self, target: usize, control: Option<usize>, mut f: impl FnMut(&mut Complex<T>, &mut Complex<T>)) {
        let stride = 1usize << target;
        let cmask = control.map_or(0, |c| 1usize << c);
        let dim = self.amplitudes.len();
        let mut base = 0;
        while base < dim {
            for i in base..base + stride {
                if i & cmask != cmask {
                    continue;
                }
                let (lo, hi) = self.amplitudes.split_at_mut(i + stride);
                f(&mut lo[i], &mut hi[0]);
            }
            base += stride << 1;
        }
    }

    fn apply_real_2x2(&mut self, target: usize, m: [T; 4]) {
        self.for_each_pair(target, None, |a, b| {
            let (x, y) = (*a, *b);
            *a = x * m[0] + y * m[1];
            *b = x * m[2] + y * m[3];
        });
    }

    fn apply_2x2(&mut self, target: usize, control: Option<usize>, m: [Complex<T>; 4]) {
        self.for_each_pair(target, control, |a, b| {
            let (x, y) = (*a, *b);
            *a = m[0] * x + m[1] * y;
            *b = m[2] * x + m[3] * y;
        });
    }

    fn apply_diag(&mut self, target: usize, control: Option<usize>, d0: Complex<T>, d1: Complex<T>) {
        self.for_each_pair(target, control, |a, b| {
            *a = *a * d0;
            *b = *b * d1;
        });
    }

    fn apply_x(&mut self, target: usize, control: Option<usize>) {
        self.for_each_pair(target, control, std::mem::swap);
    }
}

/// `|0⟩^{⊗n}`.
pub fn new_zero_state<T: Real>(n: usize) -> Result<StateVector<T>> {
    StateVector::zero(n)
}

/// Applies `gate` to `state` in place.
pub fn apply_gate<T: Real>(state: &mut StateVector<T>, gate: &GateOp<T>) -> Result<()> {
    state.apply(gate)
}

pub fn expectation_z0<T: Real>(state: &StateVector<T>) -> T {
    state.expectation_z0()
}
