use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{ConsistencyReport, ReportRow};
use crate::equivalence::{
    extrema_preservation_with, pearson_consistency, sign_agreement_with, WeakOptions,
};
use crate::error::{Error, Result};
use crate::mapping::{check_alphabets, MappingTable, SymbolSequence};
use crate::operators::{autocorrelation, magnitude_spectrum, Boundary, Profile, ProfileKind};

/// Largest lag evaluated for the correlation operator at each length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LagWindow {
    /// Every lag `0..N`.
    Full,
    /// Lags `0..=min(N - 1, cap)`.
    Cap(usize),
}

impl Default for LagWindow {
    fn default() -> Self {
        LagWindow::Cap(1000)
    }
}

impl LagWindow {
    pub fn max_lag(self, len: usize) -> usize {
        match self {
            LagWindow::Full => len - 1,
            LagWindow::Cap(cap) => (len - 1).min(cap),
        }
    }

    fn describe(self) -> String {
        match self {
            LagWindow::Full => "full".into(),
            LagWindow::Cap(cap) => format!("min(N-1;{cap})"),
        }
    }
}

/// Which prefix lengths a sweep evaluates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthSchedule {
    Explicit(Vec<usize>),
    /// `min, ⌈min·factor⌉, …` while `≤ max`, then `max` itself if not yet
    /// reached. `max` defaults to the sequence length.
    Geometric {
        min: usize,
        #[serde(default)]
        max: Option<usize>,
        #[serde(default = "default_factor")]
        factor: f64,
    },
}

fn default_factor() -> f64 {
    2.0
}

impl Default for LengthSchedule {
    fn default() -> Self {
        LengthSchedule::Geometric {
            min: 128,
            max: None,
            factor: 2.0,
        }
    }
}

impl LengthSchedule {
    /// Concrete lengths for a sequence of `available` symbols.
    pub fn lengths(&self, available: usize) -> Result<Vec<usize>> {
        let lengths = match self {
            LengthSchedule::Explicit(v) => v.clone(),
            &LengthSchedule::Geometric { min, max, factor } => {
                let max = max.unwrap_or(available);
                if min == 0 || min > max {
                    return Err(Error::InvalidConfig(format!(
                        "geometric schedule needs 1 <= min <= max, got {min}..{max}"
                    )));
                }
                if !(factor > 1.0 && factor.is_finite()) {
                    return Err(Error::InvalidConfig(format!(
                        "geometric factor must exceed 1, got {factor}"
                    )));
                }
                let mut out = vec![min];
                loop {
                    let last = *out.last().unwrap();
                    let next = ((last as f64 * factor).ceil() as usize).max(last + 1);
                    if next > max {
                        break;
                    }
                    out.push(next);
                }
                if *out.last().unwrap() < max {
                    out.push(max);
                }
                out
            }
        };
        if lengths.is_empty() {
            return Err(Error::InvalidConfig("no lengths to evaluate".into()));
        }
        if lengths.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig(
                "lengths must be strictly increasing".into(),
            ));
        }
        if lengths[0] == 0 {
            return Err(Error::InvalidConfig("lengths must be positive".into()));
        }
        let last = *lengths.last().unwrap();
        if last > available {
            return Err(Error::InvalidConfig(format!(
                "largest length {last} exceeds the sequence length {available}"
            )));
        }
        Ok(lengths)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepOptions {
    /// `Correlation` or `Spectrum`.
    pub operator: ProfileKind,
    pub boundary: Boundary,
    pub max_lag: LagWindow,
    /// Grid indices left out of `rho`. `None` selects the operator default:
    /// the DC bin for the spectrum, nothing for the correlation.
    pub exclude: Option<Vec<usize>>,
    pub weak: WeakOptions,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            operator: ProfileKind::Correlation,
            boundary: Boundary::Circular,
            max_lag: LagWindow::default(),
            exclude: None,
            weak: WeakOptions::default(),
        }
    }
}

impl SweepOptions {
    pub fn spectrum() -> Self {
        Self {
            operator: ProfileKind::Spectrum,
            ..Self::default()
        }
    }

    pub fn correlation(boundary: Boundary, max_lag: LagWindow) -> Self {
        Self {
            operator: ProfileKind::Correlation,
            boundary,
            max_lag,
            ..Self::default()
        }
    }

    pub fn effective_exclusions(&self) -> Vec<usize> {
        match (&self.exclude, self.operator) {
            (Some(v), _) => v.clone(),
            (None, ProfileKind::Spectrum) => vec![0],
            (None, _) => Vec::new(),
        }
    }

    fn profile(&self, seq: &SymbolSequence, map: &MappingTable) -> Result<Profile> {
        let x = map.encode(seq)?;
        let p = match self.operator {
            ProfileKind::Correlation => {
                autocorrelation(&x, self.max_lag.max_lag(x.len()), self.boundary)?
            }
            ProfileKind::Spectrum => magnitude_spectrum(&x)?,
            ProfileKind::Weighted => {
                return Err(Error::InvalidConfig(
                    "sweeps support the correlation and spectrum operators".into(),
                ))
            }
        };
        Ok(p.with_mapping(map.label()))
    }

    fn meta(&self, first: &MappingTable, second: &MappingTable) -> Vec<(String, String)> {
        let exclusions = self.effective_exclusions();
        let exclude = if exclusions.is_empty() {
            "none".to_string()
        } else {
            exclusions
                .iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(";")
        };
        let mut meta = vec![
            (
                "mappings".to_string(),
                format!("{},{}", first.label(), second.label()),
            ),
            ("operator".to_string(), self.operator.to_string()),
        ];
        match self.operator {
            ProfileKind::Spectrum => meta.push(("boundary".into(), "none".into())),
            _ => {
                meta.push(("boundary".into(), self.boundary.to_string()));
                meta.push(("max_lag".into(), self.max_lag.describe()));
            }
        }
        meta.push(("rho_exclude".into(), exclude));
        meta.push((
            "extrema".into(),
            format!(
                "{},non-strict,interior,tie_tol={}",
                if self.weak.symmetric {
                    "symmetric"
                } else {
                    "directional"
                },
                self.weak.tie_tol
            ),
        ));
        meta
    }
}

/// Evaluates both mappings on each prefix of `seq` and compares the operator
/// profiles. Rows come back ordered by length whatever the evaluation order;
/// constant profiles yield a row with `rho = None` instead of an error.
pub fn sweep(
    seq: &SymbolSequence,
    first: &MappingTable,
    second: &MappingTable,
    lengths: &[usize],
    opts: &SweepOptions,
) -> Result<ConsistencyReport> {
    check_alphabets(first.alphabet(), seq.alphabet())?;
    check_alphabets(second.alphabet(), seq.alphabet())?;
    let exclude = opts.effective_exclusions();
    let rows = lengths
        .par_iter()
        .map(|&len| -> Result<ReportRow> {
            let prefix = seq.prefix(len)?;
            let p = opts.profile(&prefix, first)?;
            let q = opts.profile(&prefix, second)?;
            compare(len, &p, &q, &exclude, &opts.weak)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConsistencyReport {
        meta: opts.meta(first, second),
        rows,
    })
}

fn compare(
    len: usize,
    p: &Profile,
    q: &Profile,
    exclude: &[usize],
    weak: &WeakOptions,
) -> Result<ReportRow> {
    let rho = match pearson_consistency(p, q, exclude) {
        Ok(r) => Some(r),
        Err(Error::DegenerateProfile) => {
            log::info!("N={len}: constant profile, rho undefined");
            None
        }
        Err(e) => return Err(e),
    };
    Ok(ReportRow {
        len,
        rho,
        extrema_pct: extrema_preservation_with(p, q, weak)?,
        sign_agreement: sign_agreement_with(p, q, weak)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::{builtin_mapping, Alphabet};
    use crate::sequence_io::{generate, GeneratorSpec};

    #[test]
    fn geometric_schedule() {
        let s = LengthSchedule::default();
        assert_eq!(s.lengths(1024).unwrap(), vec![128, 256, 512, 1024]);
        assert_eq!(s.lengths(1000).unwrap(), vec![128, 256, 512, 1000]);
        let g = LengthSchedule::Geometric {
            min: 10,
            max: Some(100),
            factor: 3.0,
        };
        assert_eq!(g.lengths(500).unwrap(), vec![10, 30, 90, 100]);
        assert!(LengthSchedule::default().lengths(64).is_err());
    }

    #[test]
    fn explicit_schedule_validation() {
        assert!(LengthSchedule::Explicit(vec![4, 4]).lengths(10).is_err());
        assert!(LengthSchedule::Explicit(vec![4, 20]).lengths(10).is_err());
        assert!(LengthSchedule::Explicit(vec![]).lengths(10).is_err());
        assert_eq!(
            LengthSchedule::Explicit(vec![3, 7]).lengths(10).unwrap(),
            vec![3, 7]
        );
    }

    #[test]
    fn identical_mappings_are_fully_consistent() {
        let seq = generate(&GeneratorSpec::iid_uniform(&Alphabet::dna(), 512, 9)).unwrap();
        let m = builtin_mapping("fig7_m2").unwrap();
        for opts in [SweepOptions::default(), SweepOptions::spectrum()] {
            let report = sweep(&seq, &m, &m, &[64, 128, 512], &opts).unwrap();
            for row in &report.rows {
                assert!((row.rho.unwrap() - 1.0).abs() < 1e-12);
                assert_eq!(row.extrema_pct, 100.0);
                assert_eq!(row.sign_agreement, 1.0);
            }
        }
    }

    #[test]
    fn rotated_indicator_mapping_is_consistent_for_spectrum() {
        let seq = generate(&GeneratorSpec::iid_uniform(&Alphabet::dna(), 300, 4)).unwrap();
        let report = sweep(
            &seq,
            &builtin_mapping("voss").unwrap(),
            &builtin_mapping("fig7_rot").unwrap(),
            &[50, 100, 300],
            &SweepOptions::spectrum(),
        )
        .unwrap();
        assert_eq!(report.meta_value("rho_exclude"), Some("0"));
        for row in &report.rows {
            assert!((row.rho.unwrap() - 1.0).abs() < 1e-9);
            assert_eq!(row.extrema_pct, 100.0);
        }
    }

    #[test]
    fn constant_sequence_marks_degenerate_rows() {
        let seq = SymbolSequence::parse(&Alphabet::dna(), &"A".repeat(16)).unwrap();
        let m = builtin_mapping("voss").unwrap();
        let report = sweep(&seq, &m, &m, &[8, 16], &SweepOptions::default()).unwrap();
        assert_eq!(report.degenerate_lengths(), vec![8, 16]);
    }

    #[test]
    fn weighted_operator_is_rejected() {
        let seq = SymbolSequence::parse(&Alphabet::dna(), "ATGCATGC").unwrap();
        let m = builtin_mapping("voss").unwrap();
        let opts = SweepOptions {
            operator: ProfileKind::Weighted,
            ..SweepOptions::default()
        };
        assert!(matches!(
            sweep(&seq, &m, &m, &[8], &opts),
            Err(Error::InvalidConfig(_))
        ));
    }
}
