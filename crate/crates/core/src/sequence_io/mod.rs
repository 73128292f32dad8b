//! Sequence ingestion and synthesis.

mod fasta;
mod generator;

pub use fasta::{parse_fasta, read_fasta_file, write_fasta, FastaRecord, ResiduePolicy};
pub use generator::{generate, GeneratorSpec, Model, GENERATOR_ID};

use crate::error::Result;
use crate::mapping::SymbolSequence;

/// The first `len` symbols of `seq`.
pub fn prefix(seq: &SymbolSequence, len: usize) -> Result<SymbolSequence> {
    seq.prefix(len)
}
