use rustfft::num_complex::Complex64;

use super::fft;
use super::profile::{Profile, ProfileKind, ProfileMeta};
use crate::error::{Error, Result};
use crate::mapping::EncodedSequence;

/// `f̂_m = (1/N²) Σ_d |Σ_k x_d(k) e^{−2πjmk/N}|²` for `m = 0..N`, via FFT.
pub fn magnitude_spectrum(x: &EncodedSequence) -> Result<Profile> {
    if x.is_empty() {
        return Err(Error::EmptySequence);
    }
    let n = x.len();
    let mut power = vec![0.0; n];
    for d in 0..x.dim() {
        let z = fft::spectrum_of(x.component(d), n);
        for (p, z) in power.iter_mut().zip(&z) {
            *p += z.norm_sqr();
        }
    }
    Ok(finish(power, n))
}

/// Same quantity as [`magnitude_spectrum`] by direct O(N²) evaluation.
///
/// Twiddles are taken at `(m·k mod N)` so their phase error does not grow
/// with the product `m·k`.
pub fn magnitude_spectrum_naive(x: &EncodedSequence) -> Result<Profile> {
    if x.is_empty() {
        return Err(Error::EmptySequence);
    }
    let n = x.len();
    let twiddles: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 / n as f64))
        .collect();
    let mut power = vec![0.0; n];
    let mut acc = vec![Complex64::new(0.0, 0.0); x.dim()];
    for (m, p) in power.iter_mut().enumerate() {
        acc.iter_mut().for_each(|a| *a = Complex64::new(0.0, 0.0));
        for (k, col) in x.columns().enumerate() {
            let w = twiddles[(m * k) % n];
            for (a, &v) in acc.iter_mut().zip(col) {
                *a += w * v;
            }
        }
        *p = acc.iter().map(Complex64::norm_sqr).sum();
    }
    Ok(finish(power, n))
}

fn finish(power: Vec<f64>, n: usize) -> Profile {
    let scale = 1.0 / (n as f64 * n as f64);
    Profile::contiguous(
        ProfileKind::Spectrum,
        power.into_iter().map(|p| p * scale).collect(),
        ProfileMeta {
            mapping: String::new(),
            len: n,
            boundary: None,
        },
    )
}
