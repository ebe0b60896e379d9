//! Statevector simulation, training and benchmarking of parametrized quantum
//! circuits (PQCs) for regression.
//!
//! The pipeline is: scale/reduce features ([`data`]), compile an
//! encoder + ansatz PQC ([`circuits`]), simulate it exactly
//! ([`statevector`]), fit the angles with SPSA ([`training`]) and report
//! metrics against a ridge baseline ([`evaluation`]).
//!
//! The simulation kernels and metrics are generic over [`Real`]; the training
//! pipeline runs in `f64`. Aliases for the common instantiations live at the
//! crate root.

pub mod circuits;
pub mod data;
pub mod error;
pub mod evaluation;
pub mod io;
pub mod scalar;
pub mod statevector;
pub mod training;

pub use circuits::{assemble_pqc, Ansatz, CircuitSpec, CircuitTemplate, Encoder};
pub use data::Dataset;
pub use error::{Error, Result};
pub use evaluation::MetricsReport;
pub use scalar::Real;
pub use training::{ParameterVector, SpsaConfig, TrainRecord};

/// Double-precision statevector, the working type of the pipeline.
pub type StateF64 = statevector::StateVector<f64>;
pub type StateF32 = statevector::StateVector<f32>;
pub type GateF64 = statevector::GateOp<f64>;
pub type GateF32 = statevector::GateOp<f32>;
pub type DenseF64 = statevector::DenseUnitary<f64>;
pub type Amplitude = num_complex::Complex64;
