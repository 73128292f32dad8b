use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use flate2::read::MultiGzDecoder;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapping::{Alphabet, SymbolSequence};

/// What to do with residues outside the alphabet.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResiduePolicy {
    /// Any residue outside the alphabet, ambiguity codes included, is an error.
    Strict,
    /// Drop unknown residues and count them on the record.
    #[default]
    SkipUnknown,
}

impl FromStr for ResiduePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strict" => Ok(ResiduePolicy::Strict),
            "skip_unknown" | "skip" => Ok(ResiduePolicy::SkipUnknown),
            other => Err(Error::Parse(format!("unknown residue policy `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FastaRecord {
    /// Header text after `>`, trimmed.
    pub id: String,
    pub sequence: SymbolSequence,
    /// Residues dropped under [`ResiduePolicy::SkipUnknown`].
    pub skipped: usize,
}

struct Pending {
    id: String,
    line: usize,
    data: Vec<u8>,
    seen: usize,
    skipped: usize,
}

impl Pending {
    fn finish(self, alphabet: &Alphabet) -> Result<FastaRecord> {
        if self.data.is_empty() {
            return Err(Error::MalformedFasta {
                line: self.line,
                reason: format!("record `{}` has no residues in the alphabet", self.id),
            });
        }
        if self.skipped > 0 {
            log::warn!(
                "record `{}`: skipped {} residue(s) outside alphabet {alphabet}",
                self.id,
                self.skipped
            );
        }
        Ok(FastaRecord {
            id: self.id,
            sequence: SymbolSequence::from_trusted(alphabet.clone(), self.data),
            skipped: self.skipped,
        })
    }
}

/// Reads multi-record FASTA. Whitespace inside sequences is ignored, residues
/// are case-folded, and `;` lines are comments.
pub fn parse_fasta<R: BufRead>(
    reader: R,
    alphabet: &Alphabet,
    policy: ResiduePolicy,
) -> Result<Vec<FastaRecord>> {
    let mut records = Vec::new();
    let mut current: Option<Pending> = None;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        if let Some(header) = line.strip_prefix('>') {
            if let Some(done) = current.take() {
                records.push(done.finish(alphabet)?);
            }
            current = Some(Pending {
                id: header.trim().to_string(),
                line: lineno,
                data: Vec::new(),
                seen: 0,
                skipped: 0,
            });
            continue;
        }
        if line.starts_with(';') {
            continue;
        }
        let mut residues = line.chars().filter(|c| !c.is_whitespace()).peekable();
        if residues.peek().is_none() {
            continue;
        }
        let Some(rec) = current.as_mut() else {
            return Err(Error::MalformedFasta {
                line: lineno,
                reason: "sequence data before the first `>` header".into(),
            });
        };
        for c in residues {
            rec.seen += 1;
            match alphabet.index_of(c) {
                Some(idx) => rec.data.push(idx as u8),
                None if policy == ResiduePolicy::SkipUnknown => rec.skipped += 1,
                None => {
                    return Err(Error::UnknownResidue {
                        record: rec.id.clone(),
                        residue: c,
                        position: rec.seen,
                    })
                }
            }
        }
    }
    if let Some(done) = current.take() {
        records.push(done.finish(alphabet)?);
    }
    Ok(records)
}

/// Reads a FASTA file, decompressing when the name ends in `.gz`.
pub fn read_fasta_file(
    path: &Path,
    alphabet: &Alphabet,
    policy: ResiduePolicy,
) -> Result<Vec<FastaRecord>> {
    let file = File::open(path).map_err(|e| Error::file(path, e))?;
    let gz = path.extension().is_some_and(|ext| ext == "gz");
    if gz {
        parse_fasta(BufReader::new(MultiGzDecoder::new(file)), alphabet, policy)
    } else {
        parse_fasta(BufReader::new(file), alphabet, policy)
    }
}

/// Writes records with sequence lines wrapped at `width` residues.
pub fn write_fasta<W: Write>(mut w: W, records: &[FastaRecord], width: usize) -> Result<()> {
    let width = width.max(1);
    for rec in records {
        writeln!(w, ">{}", rec.id)?;
        let text = rec.sequence.to_string();
        let bytes = text.as_bytes();
        for chunk in bytes.chunks(width) {
            w.write_all(chunk)?;
            w.write_all(b"\n")?;
        }
    }
    Ok(())
}
