use rustfft::num_complex::Complex64;

use super::fft;
use super::profile::{Boundary, Profile, ProfileKind, ProfileMeta};
use crate::error::{Error, Result};
use crate::mapping::{dot, EncodedSequence};

/// Products per profile below which the direct sum is used under
/// [`CorrelationKernel::Auto`].
const DIRECT_LIMIT: usize = 1 << 16;

/// How lag sums are evaluated. All kernels compute the same quantity; they
/// differ only in rounding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CorrelationKernel {
    /// Direct summation for small inputs, FFT otherwise. The choice depends
    /// only on `N` and `max_lag`, never on scheduling.
    #[default]
    Auto,
    Direct,
    Fft,
}

impl CorrelationKernel {
    fn resolve(self, len: usize, max_lag: usize) -> CorrelationKernel {
        match self {
            CorrelationKernel::Auto if len.saturating_mul(max_lag + 1) <= DIRECT_LIMIT => {
                CorrelationKernel::Direct
            }
            CorrelationKernel::Auto => CorrelationKernel::Fft,
            k => k,
        }
    }
}

/// The CLI's lag window: `min(N - 1, 1000)`.
pub fn default_max_lag(len: usize) -> usize {
    len.saturating_sub(1).min(1000)
}

fn check_lag(x: &EncodedSequence, max_lag: usize) -> Result<()> {
    if x.is_empty() {
        return Err(Error::EmptySequence);
    }
    if max_lag >= x.len() {
        return Err(Error::LagOutOfRange {
            max_lag,
            len: x.len(),
        });
    }
    Ok(())
}

/// `r_l = (1/N) Σ_n x(n)ᵀ x(n−l)` for `l = 0..=max_lag`.
pub fn autocorrelation(x: &EncodedSequence, max_lag: usize, boundary: Boundary) -> Result<Profile> {
    autocorrelation_with(x, max_lag, boundary, CorrelationKernel::Auto)
}

pub fn autocorrelation_with(
    x: &EncodedSequence,
    max_lag: usize,
    boundary: Boundary,
    kernel: CorrelationKernel,
) -> Result<Profile> {
    check_lag(x, max_lag)?;
    let n = x.len();
    let sums = match kernel.resolve(n, max_lag) {
        CorrelationKernel::Direct => lag_sums_direct(x, None, max_lag, boundary),
        _ => lag_sums_fft(x, None, max_lag, boundary),
    };
    let scale = 1.0 / n as f64;
    let values = sums.into_iter().map(|s| s * scale).collect();
    Ok(Profile::contiguous(
        ProfileKind::Correlation,
        values,
        ProfileMeta {
            mapping: String::new(),
            len: n,
            boundary: Some(boundary),
        },
    ))
}

/// Position weights `k_0..k_{N-1}` of the weighted lag operator.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedOperatorSpec {
    weights: Vec<f64>,
}

impl WeightedOperatorSpec {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::InvalidWeights("weights must be finite".into()));
        }
        if weights.iter().all(|&w| w == 0.0) {
            return Err(Error::InvalidWeights(
                "at least one weight must be nonzero".into(),
            ));
        }
        Ok(Self { weights })
    }

    pub fn uniform(len: usize, weight: f64) -> Result<Self> {
        Self::new(vec![weight; len])
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `sgn(k_0)` with `sgn(0) = +1`.
    fn leading_sign(&self) -> f64 {
        if self.weights[0] >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// `Φ_l = ½ sgn(k_0) Σ_n |k_n| x(n)ᵀ x((n−l) mod N)` for `l = 0..=max_lag`.
pub fn weighted_correlation(
    x: &EncodedSequence,
    spec: &WeightedOperatorSpec,
    max_lag: usize,
) -> Result<Profile> {
    weighted_correlation_with(x, spec, max_lag, CorrelationKernel::Auto)
}

pub fn weighted_correlation_with(
    x: &EncodedSequence,
    spec: &WeightedOperatorSpec,
    max_lag: usize,
    kernel: CorrelationKernel,
) -> Result<Profile> {
    if spec.weights.len() != x.len() {
        return Err(Error::WeightLengthMismatch {
            weights: spec.weights.len(),
            len: x.len(),
        });
    }
    check_lag(x, max_lag)?;
    let abs: Vec<f64> = spec.weights.iter().map(|w| w.abs()).collect();
    let sums = match kernel.resolve(x.len(), max_lag) {
        CorrelationKernel::Direct => lag_sums_direct(x, Some(&abs), max_lag, Boundary::Circular),
        _ => lag_sums_fft(x, Some(&abs), max_lag, Boundary::Circular),
    };
    let scale = 0.5 * spec.leading_sign();
    let values = sums.into_iter().map(|s| s * scale).collect();
    Ok(Profile::contiguous(
        ProfileKind::Weighted,
        values,
        ProfileMeta {
            mapping: String::new(),
            len: x.len(),
            boundary: Some(Boundary::Circular),
        },
    ))
}

/// `Σ_n w_n x(n)ᵀ x(n−l)` for each lag, unnormalized.
fn lag_sums_direct(
    x: &EncodedSequence,
    weights: Option<&[f64]>,
    max_lag: usize,
    boundary: Boundary,
) -> Vec<f64> {
    let n = x.len();
    (0..=max_lag)
        .map(|l| {
            let start = match boundary {
                Boundary::Circular => 0,
                Boundary::Truncated => l,
            };
            (start..n)
                .map(|i| {
                    let j = if i >= l { i - l } else { i + n - l };
                    let w = weights.map_or(1.0, |w| w[i]);
                    w * dot(x.column(i), x.column(j))
                })
                .sum()
        })
        .collect()
}

fn lag_sums_fft(
    x: &EncodedSequence,
    weights: Option<&[f64]>,
    max_lag: usize,
    boundary: Boundary,
) -> Vec<f64> {
    let n = x.len();
    // Linear correlation needs room for every lag without wrap-around.
    let padded = match boundary {
        Boundary::Circular => n,
        Boundary::Truncated => (2 * n - 1).next_power_of_two(),
    };
    let mut acc = vec![Complex64::new(0.0, 0.0); padded];
    for d in 0..x.dim() {
        let plain = fft::spectrum_of(x.component(d), padded);
        match weights {
            None => {
                for (a, z) in acc.iter_mut().zip(&plain) {
                    *a += z.norm_sqr();
                }
            }
            Some(w) => {
                let weighted = fft::spectrum_of(x.component(d).zip(w).map(|(v, w)| v * w), padded);
                for ((a, zw), z) in acc.iter_mut().zip(&weighted).zip(&plain) {
                    *a += zw * z.conj();
                }
            }
        }
    }
    fft::inverse(&mut acc);
    let scale = 1.0 / padded as f64;
    acc[..=max_lag].iter().map(|z| z.re * scale).collect()
}
