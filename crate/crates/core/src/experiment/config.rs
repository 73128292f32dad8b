use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::report::ConsistencyReport;
use super::sweep::{sweep, LagWindow, LengthSchedule, SweepOptions};
use crate::equivalence::WeakOptions;
use crate::error::{Error, Result};
use crate::mapping::{builtin_mapping, Alphabet, BuiltinMapping, MappingTable, SymbolSequence};
use crate::operators::{Boundary, ProfileKind};
use crate::sequence_io::{generate, read_fasta_file, GeneratorSpec, ResiduePolicy, GENERATOR_ID};

/// Where a sweep or profile reads its symbols from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputSpec {
    Fasta {
        path: PathBuf,
        /// Zero-based record index.
        #[serde(default)]
        record: usize,
        #[serde(default)]
        policy: ResiduePolicy,
    },
    Generate(GeneratorSpec),
    /// A literal symbol string.
    Sequence(String),
}

impl InputSpec {
    /// Loads the sequence. `seed` replaces a generator's own seed.
    pub fn load(&self, alphabet: &Alphabet, seed: Option<u64>) -> Result<SymbolSequence> {
        match self {
            InputSpec::Fasta {
                path,
                record,
                policy,
            } => {
                let mut records = read_fasta_file(path, alphabet, *policy)?;
                if *record >= records.len() {
                    return Err(Error::InvalidConfig(format!(
                        "{} has {} record(s), record {record} requested",
                        path.display(),
                        records.len()
                    )));
                }
                Ok(records.swap_remove(*record).sequence)
            }
            InputSpec::Generate(spec) => {
                let mut spec = spec.clone();
                if let Some(seed) = seed {
                    spec.seed = seed;
                }
                let seq = generate(&spec)?;
                if seq.alphabet() != alphabet {
                    return Err(Error::AlphabetMismatch {
                        left: seq.alphabet().to_string(),
                        right: alphabet.to_string(),
                    });
                }
                Ok(seq)
            }
            InputSpec::Sequence(text) => SymbolSequence::parse(alphabet, text),
        }
    }

    fn describe(&self, seed: Option<u64>) -> Vec<(String, String)> {
        match self {
            InputSpec::Fasta { path, record, .. } => vec![
                ("input".into(), format!("fasta:{}#{record}", path.display())),
                ("seed".into(), "none".into()),
            ],
            InputSpec::Generate(spec) => {
                let kind = match spec.model {
                    crate::sequence_io::Model::Iid { .. } => "iid",
                    crate::sequence_io::Model::Markov { .. } => "markov",
                };
                vec![
                    ("input".into(), format!("generate:{kind}:{}", spec.length)),
                    ("seed".into(), seed.unwrap_or(spec.seed).to_string()),
                    ("generator".into(), GENERATOR_ID.into()),
                ]
            }
            InputSpec::Sequence(text) => vec![
                ("input".into(), format!("literal:{}", text.len())),
                ("seed".into(), "none".into()),
            ],
        }
    }
}

/// A built-in mapping name or a path to a mapping JSON document. Tables read
/// from files without a `name` take the file stem as their label.
pub fn resolve_mapping(source: &str) -> Result<MappingTable> {
    if let Ok(builtin) = source.parse::<BuiltinMapping>() {
        return Ok(builtin.table());
    }
    let path = Path::new(source);
    if !path.exists() {
        return builtin_mapping(source);
    }
    let text = fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    let table = MappingTable::from_json(&text)?;
    if table.name().is_some() {
        return Ok(table);
    }
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "custom".into());
    Ok(table.with_name(stem))
}

/// JSON form of a consistency-versus-length sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    pub input: Option<InputSpec>,
    /// Exactly two mapping sources.
    pub mappings: Vec<String>,
    pub operator: ProfileKind,
    pub lengths: LengthSchedule,
    pub boundary: Boundary,
    pub max_lag: LagWindow,
    pub exclude: Option<Vec<usize>>,
    pub symmetric_extrema: bool,
    pub tie_tol: f64,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub plot: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            input: None,
            mappings: Vec::new(),
            operator: ProfileKind::Correlation,
            lengths: LengthSchedule::default(),
            boundary: Boundary::Circular,
            max_lag: LagWindow::default(),
            exclude: None,
            symmetric_extrema: false,
            tie_tol: WeakOptions::default().tie_tol,
            seed: None,
            out: None,
            plot: None,
        }
    }
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
        Self::from_json(&text)
    }

    pub fn options(&self) -> SweepOptions {
        SweepOptions {
            operator: self.operator,
            boundary: self.boundary,
            max_lag: self.max_lag,
            exclude: self.exclude.clone(),
            weak: WeakOptions {
                tie_tol: self.tie_tol,
                symmetric: self.symmetric_extrema,
            },
        }
    }
}

/// Resolves the config's mappings and input, then runs [`sweep`].
pub fn run_sweep(cfg: &SweepConfig) -> Result<ConsistencyReport> {
    let [first, second] = &cfg.mappings[..] else {
        return Err(Error::InvalidConfig(format!(
            "a sweep needs exactly two mappings, got {}",
            cfg.mappings.len()
        )));
    };
    let first = resolve_mapping(first)?;
    let second = resolve_mapping(second)?;
    let input = cfg
        .input
        .as_ref()
        .ok_or_else(|| Error::InvalidConfig("no input given".into()))?;
    let seq = input.load(first.alphabet(), cfg.seed)?;
    let lengths = cfg.lengths.lengths(seq.len())?;
    let mut report = sweep(&seq, &first, &second, &lengths, &cfg.options())?;
    report.meta.extend(input.describe(cfg.seed));
    Ok(report)
}
