//! Small labeled Hilbert spaces with a dual numeric backing.
//!
//! Amplitudes are exact (sums of rational multiples of square roots, plus an
//! imaginary part of the same form) wherever the inputs allow, and fall back
//! to `f64` otherwise. Exact results are what certificates are built from;
//! the float path exists for arbitrary phase sweeps.

mod amplitude;
mod measurement;
mod phase;
mod space;
mod state;
mod surd;
mod unitary;

pub use amplitude::{Amplitude, ExactComplex, Real, FLOAT_TOL};
pub use measurement::{born_probabilities, Effect, OutcomeDistribution, ProjectiveMeasurement};
pub use phase::Phase;
pub use space::{ModeLabel, Space};
pub use state::StateVector;
pub use surd::Surd;
pub use unitary::UnitaryOp;

/// `⟨u|v⟩`.
pub fn inner_product(u: &StateVector, v: &StateVector) -> crate::Result<Amplitude> {
    u.inner(v)
}

/// `U v`.
pub fn apply(u: &UnitaryOp, v: &StateVector) -> crate::Result<StateVector> {
    u.apply(v)
}

/// `u ⊗ v`.
pub fn tensor(u: &StateVector, v: &StateVector) -> StateVector {
    u.tensor(v)
}
