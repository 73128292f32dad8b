use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mapping::{Alphabet, SymbolSequence};

/// Identity of the random source behind [`generate`], recorded in report
/// metadata.
pub const GENERATOR_ID: &str = "chacha20/rand_chacha-0.9/seed_from_u64";

const SUM_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Model {
    /// Independent draws from `probs`.
    Iid { probs: Vec<f64> },
    /// First symbol from `initial`, then row `s` of `transition` after symbol `s`.
    Markov {
        initial: Vec<f64>,
        transition: Vec<Vec<f64>>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub alphabet: String,
    pub length: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(flatten)]
    pub model: Model,
}

impl GeneratorSpec {
    pub fn iid_uniform(alphabet: &Alphabet, length: usize, seed: u64) -> Self {
        let k = alphabet.len();
        Self {
            alphabet: alphabet.to_string(),
            length,
            seed,
            model: Model::Iid {
                probs: vec![1.0 / k as f64; k],
            },
        }
    }
}

fn check_distribution(what: &str, p: &[f64], k: usize) -> Result<()> {
    if p.len() != k {
        return Err(Error::InvalidDistribution(format!(
            "{what} has {} entries, alphabet has {k}",
            p.len()
        )));
    }
    if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
        return Err(Error::InvalidDistribution(format!(
            "{what} has a negative or non-finite entry"
        )));
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidDistribution(format!(
            "{what} sums to {sum}, not 1"
        )));
    }
    Ok(())
}

/// Inverse-CDF sampler over a validated distribution.
struct Sampler {
    cumulative: Vec<f64>,
    last_positive: u8,
}

impl Sampler {
    fn new(p: &[f64]) -> Self {
        let mut acc = 0.0;
        let cumulative = p
            .iter()
            .map(|x| {
                acc += x;
                acc
            })
            .collect();
        let last_positive = p.iter().rposition(|&x| x > 0.0).unwrap_or(0) as u8;
        Self {
            cumulative,
            last_positive,
        }
    }

    fn draw<R: Rng>(&self, rng: &mut R) -> u8 {
        let u: f64 = rng.random();
        self.cumulative
            .iter()
            .position(|&c| u < c)
            .map_or(self.last_positive, |i| i as u8)
    }
}

/// Draws a sequence from `spec`; the output is a pure function of the spec.
pub fn generate(spec: &GeneratorSpec) -> Result<SymbolSequence> {
    let alphabet = Alphabet::new(&spec.alphabet)?;
    let k = alphabet.len();
    let mut rng = ChaCha20Rng::seed_from_u64(spec.seed);
    let mut data = Vec::with_capacity(spec.length);
    match &spec.model {
        Model::Iid { probs } => {
            check_distribution("probs", probs, k)?;
            let sampler = Sampler::new(probs);
            data.extend((0..spec.length).map(|_| sampler.draw(&mut rng)));
        }
        Model::Markov {
            initial,
            transition,
        } => {
            check_distribution("initial", initial, k)?;
            if transition.len() != k {
                return Err(Error::InvalidDistribution(format!(
                    "transition has {} rows, alphabet has {k}",
                    transition.len()
                )));
            }
            for (i, row) in transition.iter().enumerate() {
                check_distribution(&format!("transition row {i}"), row, k)?;
            }
            let rows: Vec<Sampler> = transition.iter().map(|r| Sampler::new(r)).collect();
            if spec.length > 0 {
                let mut state = Sampler::new(initial).draw(&mut rng);
                data.push(state);
                for _ in 1..spec.length {
                    state = rows[usize::from(state)].draw(&mut rng);
                    data.push(state);
                }
            }
        }
    }
    Ok(SymbolSequence::from_trusted(alphabet, data))
}
