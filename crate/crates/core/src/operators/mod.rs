//! Second-order operators on encoded sequences.
//!
//! Every operator here is an inner-product form in the sequence columns, so
//! its output is scaled by `λ²` and otherwise unchanged when every column is
//! replaced by `λ·R·x` with `R` orthogonal.

mod correlation;
mod fft;
mod pair_count;
mod profile;
mod spectrum;

pub use correlation::{
    autocorrelation, autocorrelation_with, default_max_lag, weighted_correlation,
    weighted_correlation_with, CorrelationKernel, WeightedOperatorSpec,
};
pub use pair_count::{pair_count_decomposition, PairCountDecomposition, PairCountTable};
pub use profile::{Boundary, Profile, ProfileKind, ProfileMeta};
pub use spectrum::{magnitude_spectrum, magnitude_spectrum_naive};
