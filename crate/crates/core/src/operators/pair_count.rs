use super::profile::{Boundary, Profile, ProfileKind, ProfileMeta};
use crate::error::{Error, Result};
use crate::mapping::{check_alphabets, MappingTable, SymbolSequence};

/// Ordered symbol-pair counts `#{n : s[n] = a, s[(n−l) mod N] = b}` at one lag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCountTable {
    lag: usize,
    symbols: usize,
    counts: Vec<u64>,
}

impl PairCountTable {
    pub fn lag(&self) -> usize {
        self.lag
    }

    pub fn count(&self, a: usize, b: usize) -> u64 {
        self.counts[a * self.symbols + b]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Nonzero entries as `((a, b), count)`, row-major.
    pub fn nonzero(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(move |(i, &c)| ((i / self.symbols, i % self.symbols), c))
    }
}

#[derive(Clone, Debug)]
pub struct PairCountDecomposition {
    pub tables: Vec<PairCountTable>,
    /// `r_l = (1/N) Σ_{(a,b)} C_ab(l) ⟨f(a), f(b)⟩`, circular boundary.
    pub profile: Profile,
}

/// Recomputes the circular autocorrelation by grouping the lag sum over
/// symbol pairs instead of positions.
pub fn pair_count_decomposition(
    seq: &SymbolSequence,
    map: &MappingTable,
    max_lag: usize,
) -> Result<PairCountDecomposition> {
    check_alphabets(map.alphabet(), seq.alphabet())?;
    let n = seq.len();
    if n == 0 {
        return Err(Error::EmptySequence);
    }
    if max_lag >= n {
        return Err(Error::LagOutOfRange { max_lag, len: n });
    }
    let k = seq.alphabet().len();
    let s = seq.indices();
    let gram = map.gram();

    let mut tables = Vec::with_capacity(max_lag + 1);
    let mut values = Vec::with_capacity(max_lag + 1);
    for lag in 0..=max_lag {
        let mut counts = vec![0u64; k * k];
        for i in 0..n {
            let j = if i >= lag { i - lag } else { i + n - lag };
            counts[usize::from(s[i]) * k + usize::from(s[j])] += 1;
        }
        let sum: f64 = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(idx, &c)| c as f64 * gram[(idx / k, idx % k)])
            .sum();
        values.push(sum / n as f64);
        tables.push(PairCountTable {
            lag,
            symbols: k,
            counts,
        });
    }
    let profile = Profile::contiguous(
        ProfileKind::Correlation,
        values,
        ProfileMeta {
            mapping: map.label().to_string(),
            len: n,
            boundary: Some(Boundary::Circular),
        },
    );
    Ok(PairCountDecomposition { tables, profile })
}
