//! Thermal entanglement and optimal standard-teleportation fidelity of the
//! two-qubit Heisenberg XX chain with a magnetic impurity on the first qubit.
//!
//! The thermal state is an X-state in the basis |00>, |01>, |10>, |11>; every
//! closed form in this crate is paired with an independent numerical route
//! (Gibbs state from the eigendecomposition, Wootters spin-flip spectrum,
//! direct maximization over maximally entangled states).

pub mod entanglement;
pub mod error;
pub mod model;
pub mod numerics;
pub mod scan;
pub mod teleportation;

pub use entanglement::{
    concurrence_closed_form, concurrence_wootters, critical_fields, entanglement_critical_temp, ConcurrenceValue,
    CriticalFields, CriticalResult,
};
pub use error::{Error, Result};
pub use model::{
    build_hamiltonian, closed_form_spectrum, equilibrium_state, gibbs_oracle, ground_state, thermal_coefficients,
    thermal_state, ChainParams, DensityMatrix, Spectrum, Temperature, XStateCoefficients,
};
pub use teleportation::{
    correlation_tensor, envelope_extremum, fidelity_critical_temp, optimal_fidelity, singlet_fraction_closed_form,
    singlet_fraction_general, singlet_fraction_oracle, thermal_fidelity, CorrelationTensor, Envelope,
    TeleportMetrics, CLASSICAL_FIDELITY,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
