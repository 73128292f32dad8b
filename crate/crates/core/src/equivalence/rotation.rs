use nalgebra::DMatrix;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::mapping::{check_alphabets, MappingTable};

/// Outcome of testing whether one mapping is a scaled orthogonal image of
/// another.
#[derive(Clone, Debug)]
pub struct RotationVerdict {
    pub related: bool,
    /// `λ > 0` with `G2 ≈ λ² G1`; always reported, meaningful when `related`.
    pub scale: f64,
    /// Orthogonal `R` minimizing `‖λ R F1 − F2‖_F`, present when `related`.
    pub rotation: Option<DMatrix<f64>>,
    /// Relative Gram mismatch `‖G2 − λ²G1‖_F / max(‖G2‖_F, λ²‖G1‖_F)`.
    pub residual: f64,
    /// `‖λ R F1 − F2‖_F / ‖F2‖_F` for the recovered rotation.
    pub alignment_residual: Option<f64>,
}

/// Decides whether `second = λ R · first` for some orthogonal `R` and `λ > 0`.
///
/// The tables are compared through their Gram matrices `G = FᵀF`, which
/// determine a vector configuration up to an orthogonal map. If the tables
/// differ in dimension the smaller one is zero-padded first. `tol` bounds the
/// relative Gram mismatch.
pub fn rotation_relatedness(
    first: &MappingTable,
    second: &MappingTable,
    tol: f64,
) -> Result<RotationVerdict> {
    check_alphabets(first.alphabet(), second.alphabet())?;
    if first.is_zero() || second.is_zero() {
        return Err(Error::ZeroMapping);
    }
    let dim = first.dim().max(second.dim());
    let first = first.embed(dim)?;
    let second = second.embed(dim)?;

    let g1 = first.gram();
    let g2 = second.gram();
    let scale_sq = g2.trace() / g1.trace();
    let mismatch = (&g2 - &g1 * scale_sq).norm();
    let residual = mismatch / g2.norm().max(scale_sq * g1.norm());
    let scale = scale_sq.sqrt();
    let related = residual <= tol;

    let (rotation, alignment_residual) = if related {
        let f1 = first.matrix();
        let f2 = second.matrix();
        let r = procrustes(&f1, &f2, scale);
        let fit = (&r * &f1 * scale - &f2).norm() / f2.norm();
        (Some(r), Some(fit))
    } else {
        (None, None)
    };

    Ok(RotationVerdict {
        related,
        scale,
        rotation,
        residual,
        alignment_residual,
    })
}

/// Orthogonal `R` minimizing `‖scale · R · from − to‖_F`: the polar factor
/// `U Vᵀ` of `to · fromᵀ`.
fn procrustes(from: &DMatrix<f64>, to: &DMatrix<f64>, scale: f64) -> DMatrix<f64> {
    let cross = to * from.transpose() / scale;
    let svd = cross.svd(true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested Vᵀ");
    u * v_t
}

/// Seeded orthogonal matrix: the Q factor of a standard Gaussian matrix with
/// columns signed so that R has a positive diagonal.
///
/// Entries come from ChaCha20 (`rand_chacha`) seeded with `seed`, so output is
/// identical across platforms.
pub fn random_orthogonal(dim: usize, seed: u64) -> DMatrix<f64> {
    assert!(dim >= 1, "dimension must be positive");
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let gaussian = DMatrix::from_fn(dim, dim, |_, _| StandardNormal.sample(&mut rng));
    let qr = gaussian.qr();
    let r = qr.r();
    let mut q = qr.q();
    for (j, mut col) in q.column_iter_mut().enumerate() {
        if r[(j, j)] < 0.0 {
            col.neg_mut();
        }
    }
    q
}
