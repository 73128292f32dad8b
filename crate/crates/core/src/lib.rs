//! Numeric mappings of symbolic sequences and the equivalence of mappings.
//!
//! Symbols are encoded as real vectors through a [`MappingTable`]. Second-order
//! operators (the lag autocorrelation, the DFT magnitude spectrum, and a
//! weighted lag operator) turn an encoding into a [`Profile`]. Two mappings
//! are compared by how consistent their profiles are, both by Pearson
//! correlation and by where local extrema fall, and at the table level by
//! whether one table is a scaled orthogonal image of the other.
//!
//! [`series`] holds the formal-series algebra over words of an alphabet.

pub mod equivalence;
pub mod error;
pub mod experiment;
pub mod mapping;
pub mod operators;
pub mod sequence_io;
pub mod series;

pub use equivalence::{
    extrema_preservation, pearson_consistency, random_orthogonal, rotation_relatedness,
    sign_agreement, RotationVerdict, WeakOptions,
};
pub use error::{Error, Result};
pub use mapping::{
    builtin_mapping, embed, encode, Alphabet, BuiltinMapping, EncodedSequence, MappingTable,
    SymbolSequence,
};
pub use operators::{
    autocorrelation, magnitude_spectrum, magnitude_spectrum_naive, pair_count_decomposition,
    weighted_correlation, Boundary, Profile, ProfileKind, WeightedOperatorSpec,
};
pub use series::{FormalSeries, ScalarEquivalence, Word};
