//! Exact simulation and analysis of a stochastic programmable quantum gate
//! for z-axis rotations.
//!
//! A rotation angle α is stored in an N-qubit register of equatorial
//! states and later retrieved onto an arbitrary data qubit by a fixed
//! circuit of multi-controlled X gates. Retrieval is heralded: it succeeds
//! with probability 1 − 2⁻ᴺ, and a failure leaves a known residual that a
//! follow-up attempt can correct. The crate provides
//!
//! - [`statevec`]: a dense little-endian statevector engine with exact
//!   branch enumeration and seeded projective measurement,
//! - [`protocol`]: program encoding, the retrieval cascade, twirling, and
//!   the adaptive retry loop,
//! - [`analysis`]: exact success probabilities, the single-qubit optimality
//!   ceiling, the retrieval bound, program-ensemble entropy, and the
//!   average program length,
//! - [`remote`]: z–x–z decomposition of SU(2) targets and the
//!   entanglement/communication cost of executing them remotely,
//! - [`cli`]: a deterministic command-line front end with JSON/CSV output.
//!
//! Runnable walkthroughs for each capability live in `examples/`.

pub mod analysis;
pub mod cli;
pub mod error;
pub mod protocol;
pub mod remote;
pub mod statevec;

pub use error::{Error, Result};
pub use protocol::{Angle, CascadeOutcome, ProgramRegister};
pub use statevec::{Amplitude, QubitIndex, StateVector, Unitary2};
