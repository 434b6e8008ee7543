//! Qudit stabilizer phase-space toolkit and layered random-Clifford code
//! analysis.
//!
//! The crate has two halves. The lower half is a self-contained qudit
//! stabilizer formalism over GF(d) for odd prime d: finite-field linear
//! algebra ([`field`]), Weyl strings with χ-exponent phases ([`weyl`]),
//! symplectic Clifford elements with uniform sampling ([`clifford`]),
//! stabilizer tableaus with rank-based entropies ([`stab`]), and a dense
//! matrix oracle for cross-checking all of it on tiny systems ([`dense`]).
//!
//! The upper half builds layered non-local encoding circuits ([`nora`]),
//! measures the resulting codes (distance by decoupling, stabilizer
//! weights, operator growth, RREF weight reduction — [`analysis`]), and
//! evaluates the closed-form thermodynamics of the associated commuting
//! projector Hamiltonian ([`thermo`]). Experiment drivers with CSV/JSON/SVG
//! output live in [`experiments`] and behind the `norastab` binary.
//!
//! See the `examples/` directory for one runnable walkthrough per
//! capability.

pub mod analysis;
pub mod clifford;
pub mod dense;
pub mod experiments;
pub mod field;
pub mod nora;
pub mod stab;
pub mod svg;
pub mod thermo;
pub mod weyl;

pub use analysis::{CodeReport, DistanceEstimate};
pub use clifford::SymplecticClifford;
pub use field::{FieldMatrix, FieldScalar};
pub use nora::{EncodedState, NoraMode, NoraParams};
pub use stab::{RegionMask, StabilizerTableau};
pub use thermo::ThermoParams;
pub use weyl::{SymplecticForm, WeylVector};
