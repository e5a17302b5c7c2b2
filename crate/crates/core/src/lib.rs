//! Find the gate operations that dominate a quantum circuit's output error.
//!
//! The toolkit takes a circuit over the basis `{RZ, SX, X, CX}`, generates
//! one variant per gate with an amplified reversed pair (`g† g` repeated `r`
//! times, fenced by barriers) inserted after that gate, executes every
//! variant on a built-in noisy trajectory simulator, and scores each gate by
//! the total variation distance between the variant's outcome distribution
//! and the original's. Gates whose amplified error moves the output most are
//! ranked highest; follow-up analyses correlate impact with circuit position,
//! qubit coverage and gate arity, and a mitigation pass serializes the worst
//! layers to suppress crosstalk.
//!
//! # Modules
//!
//! - [`circuit`]: op list IR, validation, adjoints
//! - [`schedule`]: ASAP layering with barrier fences
//! - [`unitary`]: dense matrices for small-circuit verification
//! - [`qasm`]: OpenQASM 2.0 subset parser and emitter
//! - [`reversal`]: reversed-pair insertion and suite generation
//! - [`noise`]: noise model configuration
//! - [`sim`]: ideal and noisy-trajectory execution
//! - [`density`]: exact density-matrix oracle for small registers
//! - [`analysis`]: TVD scoring, impact reports, correlations
//! - [`mitigation`]: layer serialization driven by a report
//! - [`bench`]: QFT, GHZ and TFIM benchmark generators

pub mod analysis;
pub mod bench;
pub mod circuit;
pub mod density;
mod error;
mod kernels;
pub mod mitigation;
pub mod noise;
pub mod qasm;
pub mod reversal;
pub mod schedule;
pub mod sim;
mod stats;
pub mod unitary;

pub use circuit::{adjoint_of, Circuit, GateKind, GateOp, OpOrigin, Violation};
pub use error::{Error, Result};
pub use noise::NoiseModel;
pub use num_complex::Complex64;
pub use schedule::{compute_layers, LayerSchedule};
pub use sim::Distribution;
