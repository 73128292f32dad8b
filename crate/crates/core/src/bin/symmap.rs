use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use symmap::experiment::{
    plot_csv, resolve_mapping, run_sweep, InputSpec, LagWindow, LengthSchedule, SweepConfig,
};
use symmap::operators::{
    autocorrelation_with, default_max_lag, magnitude_spectrum, magnitude_spectrum_naive,
    weighted_correlation, CorrelationKernel, Profile, WeightedOperatorSpec,
};
use symmap::sequence_io::{
    generate, write_fasta, FastaRecord, GeneratorSpec, Model, ResiduePolicy,
};
use symmap::series::{FormalSeries, ScalarEquivalence};
use symmap::{rotation_relatedness, Alphabet, Boundary, Error, ProfileKind, Result};

/// Relative agreement required between the FFT and reference profiles.
const CROSS_CHECK_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "symmap",
    version,
    about = "Symbol-to-vector mapping equivalence toolkit"
)]
struct Cli {
    /// Seed for generated inputs.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Index arithmetic for lag sums.
    #[arg(long, global = true, value_enum)]
    boundary: Option<BoundaryArg>,
    /// Relative tolerance (Gram proportionality, scalar equivalence).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Output path; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryArg {
    Circular,
    Truncated,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Self {
        match b {
            BoundaryArg::Circular => Boundary::Circular,
            BoundaryArg::Truncated => Boundary::Truncated,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorArg {
    Correlation,
    Spectrum,
    Weighted,
}

impl From<OperatorArg> for ProfileKind {
    fn from(op: OperatorArg) -> Self {
        match op {
            OperatorArg::Correlation => ProfileKind::Correlation,
            OperatorArg::Spectrum => ProfileKind::Spectrum,
            OperatorArg::Weighted => ProfileKind::Weighted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraOp {
    Add,
    Mul,
    Scalar,
    Equiv,
}

#[derive(Subcommand)]
enum Command {
    /// Print a mapping table as JSON.
    Map {
        /// Built-in name or JSON path.
        mapping: String,
        /// Zero-pad to this dimension.
        #[arg(long)]
        embed: Option<usize>,
        /// Print the Gram matrix instead.
        #[arg(long)]
        gram: bool,
    },
    /// Compute one operator profile and write it as CSV.
    Profile {
        #[arg(long)]
        mapping: String,
        #[arg(long, value_enum, default_value = "correlation")]
        operator: OperatorArg,
        /// Largest lag; defaults to min(N-1, 1000).
        #[arg(long)]
        max_lag: Option<usize>,
        /// File of position weights for the weighted operator.
        #[arg(long)]
        weights: Option<PathBuf>,
        /// Also write the reference-path profile next to --out and check agreement.
        #[arg(long)]
        also_naive: bool,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Consistency of two mappings across growing prefix lengths.
    Sweep {
        /// JSON config; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Two mapping sources.
        #[arg(long, num_args = 2, value_names = ["FIRST", "SECOND"])]
        mappings: Option<Vec<String>>,
        #[arg(long, value_enum)]
        operator: Option<OperatorArg>,
        /// Explicit comma-separated lengths.
        #[arg(long, value_delimiter = ',')]
        lengths: Option<Vec<usize>>,
        /// Geometric schedule start (default 128).
        #[arg(long)]
        min_len: Option<usize>,
        /// Geometric schedule end (default: sequence length).
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        factor: Option<f64>,
        /// Largest lag: a number, or `full` for N-1.
        #[arg(long)]
        max_lag: Option<String>,
        /// Comma-separated grid indices left out of rho.
        #[arg(long, value_delimiter = ',')]
        exclude: Option<Vec<usize>>,
        /// Keep the DC bin in spectrum rho.
        #[arg(long)]
        include_dc: bool,
        /// Average extrema preservation in both directions.
        #[arg(long)]
        symmetric_extrema: bool,
        /// Also render the report as SVG to this path.
        #[arg(long)]
        plot: Option<PathBuf>,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Decide whether SECOND is a scaled rotation of FIRST.
    Rotcheck { first: String, second: String },
    /// Generate a synthetic sequence as FASTA.
    Gen {
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, default_value = "ATGC")]
        alphabet: String,
        /// Comma-separated symbol probabilities (default uniform).
        #[arg(long, value_delimiter = ',')]
        probs: Option<Vec<f64>>,
        /// Full generator spec as JSON (iid or markov).
        #[arg(long, conflicts_with_all = ["probs", "length"])]
        spec: Option<PathBuf>,
        #[arg(long, default_value = "generated")]
        id: String,
    },
    /// Formal-series arithmetic on serialized series.
    Algebra {
        #[arg(value_enum)]
        op: AlgebraOp,
        first: PathBuf,
        /// Second series (add, mul, equiv).
        second: Option<PathBuf>,
        #[arg(long, default_value = "ATGC")]
        alphabet: String,
        /// Scalar for `scalar`.
        #[arg(long, allow_hyphen_values = true)]
        by: Option<f64>,
    },
    /// Render a sweep report CSV as SVG.
    Plot { report: PathBuf },
}

#[derive(Args, Clone, Default)]
struct InputArgs {
    /// FASTA input (.gz accepted).
    #[arg(long, conflicts_with_all = ["sequence", "gen_length"])]
    fasta: Option<PathBuf>,
    /// Zero-based FASTA record.
    #[arg(long, default_value_t = 0)]
    record: usize,
    #[arg(long)]
    strict: bool,
    /// Literal symbol string.
    #[arg(long, conflicts_with = "gen_length")]
    sequence: Option<String>,
    /// Generate an iid uniform sequence of this length.
    #[arg(long)]
    gen_length: Option<usize>,
}

impl InputArgs {
    fn spec(&self, alphabet: &Alphabet) -> Option<InputSpec> {
        if let Some(path) = &self.fasta {
            let policy = if self.strict {
                ResiduePolicy::Strict
            } else {
                ResiduePolicy::SkipUnknown
            };
            Some(InputSpec::Fasta {
                path: path.clone(),
                record: self.record,
                policy,
            })
        } else if let Some(text) = &self.sequence {
            Some(InputSpec::Sequence(text.clone()))
        } else {
            self.gen_length
                .map(|n| InputSpec::Generate(GeneratorSpec::iid_uniform(alphabet, n, 0)))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::File {
            path: path.to_path_buf(),
            source: e,
        }),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Map {
            mapping,
            embed,
            gram,
        } => {
            let mut table = resolve_mapping(&mapping)?;
            if let Some(dim) = embed {
                table = table.embed(dim)?;
            }
            let text = if gram {
                let g = table.gram();
                let mut s = String::new();
                for row in g.row_iter() {
                    let cells: Vec<String> = row.iter().map(f64::to_string).collect();
                    s.push_str(&cells.join(","));
                    s.push('\n');
                }
                s
            } else {
                table.to_json() + "\n"
            };
            emit(out, &text)?;
        }
        Command::Profile {
            mapping,
            operator,
            max_lag,
            weights,
            also_naive,
            input,
        } => {
            let table = resolve_mapping(&mapping)?;
            let spec = input.spec(table.alphabet()).ok_or_else(|| {
                Error::InvalidConfig("give --fasta, --sequence or --gen-length".into())
            })?;
            let seq = spec.load(table.alphabet(), cli.seed)?;
            let x = table.encode(&seq)?;
            let boundary = cli.boundary.map_or(Boundary::Circular, Boundary::from);
            let max_lag = max_lag.unwrap_or_else(|| default_max_lag(x.len()));
            let (main, reference) = match operator {
                OperatorArg::Correlation => (
                    autocorrelation_with(&x, max_lag, boundary, CorrelationKernel::Auto)?,
                    also_naive
                        .then(|| {
                            autocorrelation_with(&x, max_lag, boundary, CorrelationKernel::Direct)
                        })
                        .transpose()?,
                ),
                OperatorArg::Spectrum => (
                    magnitude_spectrum(&x)?,
                    also_naive
                        .then(|| magnitude_spectrum_naive(&x))
                        .transpose()?,
                ),
                OperatorArg::Weighted => {
                    let path = weights.ok_or_else(|| {
                        Error::InvalidConfig("the weighted operator needs --weights".into())
                    })?;
                    let text = fs::read_to_string(&path).map_err(|e| Error::File {
                        path: path.clone(),
                        source: e,
                    })?;
                    let w = text
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(|s| {
                            s.parse::<f64>()
                                .map_err(|_| Error::Parse(format!("bad weight `{s}`")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    let spec = WeightedOperatorSpec::new(w)?;
                    if also_naive {
                        return Err(Error::InvalidConfig(
                            "--also-naive applies to correlation and spectrum".into(),
                        ));
                    }
                    (weighted_correlation(&x, &spec, max_lag)?, None)
                }
            };
            let main = main.with_mapping(table.label());
            emit(out, &main.to_csv_string())?;
            if let Some(reference) = reference {
                let reference = reference.with_mapping(table.label());
                let path = out.ok_or_else(|| {
                    Error::InvalidConfig("--also-naive needs --out for the second file".into())
                })?;
                fs::write(naive_path(path), reference.to_csv_string())?;
                let err = max_relative_gap(&main, &reference);
                if err > CROSS_CHECK_TOL {
                    return Err(Error::InvalidConfig(format!(
                        "fast and reference profiles differ by {err:e} (relative)"
                    )));
                }
                eprintln!("cross-check: max relative gap {err:e}");
            }
        }
        Command::Sweep {
            config,
            mappings,
            operator,
            lengths,
            min_len,
            max_len,
            factor,
            max_lag,
            exclude,
            include_dc,
            symmetric_extrema,
            plot,
            input,
        } => {
            let mut cfg = match &config {
                Some(path) => SweepConfig::from_file(path)?,
                None => SweepConfig::default(),
            };
            if let Some(m) = mappings {
                cfg.mappings = m;
            }
            if let Some(op) = operator {
                cfg.operator = op.into();
            }
            if let Some(l) = lengths {
                cfg.lengths = LengthSchedule::Explicit(l);
            } else if min_len.is_some() || max_len.is_some() || factor.is_some() {
                let (dmin, dmax, dfactor) = match cfg.lengths {
                    LengthSchedule::Geometric { min, max, factor } => (min, max, factor),
                    LengthSchedule::Explicit(_) => (128, None, 2.0),
                };
                cfg.lengths = LengthSchedule::Geometric {
                    min: min_len.unwrap_or(dmin),
                    max: max_len.or(dmax),
                    factor: factor.unwrap_or(dfactor),
                };
            }
            if let Some(b) = cli.boundary {
                cfg.boundary = b.into();
            }
            if let Some(lag) = max_lag {
                cfg.max_lag = if lag == "full" {
                    LagWindow::Full
                } else {
                    LagWindow::Cap(
                        lag.parse()
                            .map_err(|_| Error::Parse(format!("bad --max-lag `{lag}`")))?,
                    )
                };
            }
            if let Some(e) = exclude {
                cfg.exclude = Some(e);
            } else if include_dc {
                cfg.exclude = Some(Vec::new());
            }
            if symmetric_extrema {
                cfg.symmetric_extrema = true;
            }
            if cli.seed.is_some() {
                cfg.seed = cli.seed;
            }
            if let Some(p) = plot {
                cfg.plot = Some(p);
            }
            if let Some(o) = &cli.out {
                cfg.out = Some(o.clone());
            }
            if let Some(first) = cfg.mappings.first() {
                let alphabet = resolve_mapping(first)?.alphabet().clone();
                if let Some(spec) = input.spec(&alphabet) {
                    cfg.input = Some(spec);
                }
            }
            let report = run_sweep(&cfg)?;
            let csv = report.to_csv_string();
            emit(cfg.out.as_deref(), &csv)?;
            if let Some(plot) = &cfg.plot {
                // The chart is drawn from the CSV text, never from the in-memory report.
                let svg = plot_csv(&csv)?;
                fs::write(plot, svg)?;
            }
        }
        Command::Rotcheck { first, second } => {
            let a = resolve_mapping(&first)?;
            let b = resolve_mapping(&second)?;
            let tol = cli.tol.unwrap_or(1e-9);
            let v = rotation_relatedness(&a, &b, tol)?;
            let mut text = format!(
                "{}\nmappings: {} vs {}\nscale: {}\nresidual: {:e}\ntol: {:e}\n",
                if v.related { "related" } else { "unrelated" },
                a.label(),
                b.label(),
                v.scale,
                v.residual,
                tol
            );
            if let Some(fit) = v.alignment_residual {
                text.push_str(&format!("alignment_residual: {fit:e}\n"));
            }
            if let Some(r) = &v.rotation {
                text.push_str("rotation:\n");
                for row in r.row_iter() {
                    let cells: Vec<String> = row.iter().map(|x| format!("{x:.12}")).collect();
                    text.push_str(&cells.join(","));
                    text.push('\n');
                }
            }
            emit(out, &text)?;
            return Ok(if v.related {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            });
        }
        Command::Gen {
            length,
            alphabet,
            probs,
            spec,
            id,
        } => {
            let mut spec = match spec {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| Error::File {
                        path: path.clone(),
                        source: e,
                    })?;
                    serde_json::from_str::<GeneratorSpec>(&text)?
                }
                None => {
                    let alphabet = Alphabet::new(&alphabet)?;
                    let length = length
                        .ok_or_else(|| Error::InvalidConfig("give --length or --spec".into()))?;
                    let mut spec = GeneratorSpec::iid_uniform(&alphabet, length, 0);
                    if let Some(p) = probs {
                        spec.model = Model::Iid { probs: p };
                    }
                    spec
                }
            };
            if let Some(seed) = cli.seed {
                spec.seed = seed;
            }
            let seq = generate(&spec)?;
            let record = FastaRecord {
                id,
                sequence: seq,
                skipped: 0,
            };
            let mut buf = Vec::new();
            write_fasta(&mut buf, &[record], 70)?;
            emit(out, &String::from_utf8_lossy(&buf))?;
        }
        Command::Algebra {
            op,
            first,
            second,
            alphabet,
            by,
        } => {
            let alphabet = Alphabet::new(&alphabet)?;
            let read = |path: &Path| -> Result<FormalSeries<f64>> {
                let text = fs::read_to_string(path).map_err(|e| Error::File {
                    path: path.to_path_buf(),
                    source: e,
                })?;
                FormalSeries::parse(&alphabet, &text)
            };
            let f = read(&first)?;
            let second = || -> Result<FormalSeries<f64>> {
                let path = second.as_deref().ok_or_else(|| {
                    Error::InvalidConfig("this operation needs a second series".into())
                })?;
                read(path)
            };
            match op {
                AlgebraOp::Add => emit(out, &f.add(&second()?)?.to_text())?,
                AlgebraOp::Mul => emit(out, &f.mul(&second()?)?.to_text())?,
                AlgebraOp::Scalar => {
                    let r = by.ok_or_else(|| Error::InvalidConfig("`scalar` needs --by".into()))?;
                    emit(out, &f.scalar(r).to_text())?
                }
                AlgebraOp::Equiv => {
                    let tol = cli.tol.unwrap_or(1e-9);
                    return Ok(match f.scalar_equivalent(&second()?, tol)? {
                        ScalarEquivalence::Equivalent(c) => {
                            emit(out, &format!("equivalent\nscalar: {c}\n"))?;
                            ExitCode::SUCCESS
                        }
                        ScalarEquivalence::NotEquivalent => {
                            emit(out, "not_equivalent\n")?;
                            ExitCode::from(1)
                        }
                    });
                }
            }
        }
        Command::Plot { report } => {
            let text = fs::read_to_string(&report).map_err(|e| Error::File {
                path: report.clone(),
                source: e,
            })?;
            emit(out, &plot_csv(&text)?)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn naive_path(out: &Path) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "profile".into());
    out.with_file_name(format!("{stem}.naive.csv"))
}

/// `max |a - b|` over the grid, relative to the largest reference magnitude.
fn max_relative_gap(a: &Profile, b: &Profile) -> f64 {
    let scale = b.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let gap = a
        .values()
        .iter()
        .zip(b.values())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
    if scale == 0.0 {
        gap
    } else {
        gap / scale
    }
}
