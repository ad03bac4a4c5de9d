//! Shared fixtures for the criterion benchmarks.

use agewatch_core::benchmark::{reference_profile, REFERENCE_SEED};
use agewatch_core::pipeline::{prepare, Prepared};
use agewatch_core::rbfnn::{RbfNetwork, SigmaPolicy};
use agewatch_core::synthload::generate_aging_series;
use agewatch_core::TimeSeries;

/// The reference aging series used by the model comparison.
pub fn reference_series() -> TimeSeries {
    generate_aging_series(&reference_profile(REFERENCE_SEED)).expect("reference profile is valid")
}

/// Reference series prepared with order 4, horizon 1 and an 0.8 split.
pub fn reference_prepared() -> Prepared {
    prepare(&reference_series(), 4, 1, 0.8).expect("reference series prepares")
}

/// Untrained RBF network with one center per training exemplar.
pub fn exemplar_network(prepared: &Prepared) -> RbfNetwork {
    RbfNetwork::from_dataset(&prepared.dataset, SigmaPolicy::Explicit(0.05), 1000, 1)
        .expect("dataset yields centers")
}
