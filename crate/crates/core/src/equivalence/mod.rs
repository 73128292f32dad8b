//! Strong and weak equivalence between mapping pipelines.
//!
//! Strong equivalence compares two operator profiles by Pearson correlation;
//! weak equivalence compares where their local extrema sit. At the mapping
//! level, two tables give strongly equivalent correlation and spectrum
//! profiles exactly when one is a scaled orthogonal image of the other, which
//! [`rotation_relatedness`] decides from the tables' Gram matrices.

mod consistency;
mod rotation;

pub use consistency::{
    extrema_preservation, extrema_preservation_with, pearson_consistency, sign_agreement,
    sign_agreement_with, WeakOptions,
};
pub use rotation::{random_orthogonal, rotation_relatedness, RotationVerdict};
