use crate::error::{Error, Result};
use crate::operators::Profile;

/// A retained value list whose spread is below this fraction of the profile's
/// largest magnitude is treated as constant.
const DEGENERACY_REL: f64 = 1e-12;

fn check_grid(p: &Profile, q: &Profile) -> Result<()> {
    if p.params() == q.params() {
        Ok(())
    } else {
        Err(Error::GridMismatch)
    }
}

fn max_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Pearson correlation of two profiles over their shared grid, with the grid
/// indices in `exclude` left out (counting measure on the rest).
pub fn pearson_consistency(p: &Profile, q: &Profile, exclude: &[usize]) -> Result<f64> {
    check_grid(p, q)?;
    let keep: Vec<usize> = p
        .params()
        .iter()
        .enumerate()
        .filter(|(_, idx)| !exclude.contains(idx))
        .map(|(i, _)| i)
        .collect();
    if keep.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: keep.len(),
        });
    }
    let (pv, qv) = (p.values(), q.values());
    let count = keep.len() as f64;
    let mean_p = keep.iter().map(|&i| pv[i]).sum::<f64>() / count;
    let mean_q = keep.iter().map(|&i| qv[i]).sum::<f64>() / count;
    let (mut spp, mut sqq, mut spq) = (0.0, 0.0, 0.0);
    for &i in &keep {
        let dp = pv[i] - mean_p;
        let dq = qv[i] - mean_q;
        spp += dp * dp;
        sqq += dq * dq;
        spq += dp * dq;
    }
    for (ss, values) in [(spp, pv), (sqq, qv)] {
        if ss == 0.0 || (ss / count).sqrt() <= DEGENERACY_REL * max_abs(values) {
            return Err(Error::DegenerateProfile);
        }
    }
    Ok((spq / (spp.sqrt() * sqq.sqrt())).clamp(-1.0, 1.0))
}

/// Tolerances and conventions for the weak-equivalence measures.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeakOptions {
    /// Differences within `tie_tol · max|profile|` count as ties, so values
    /// that are equal in exact arithmetic stay equal after rounding.
    pub tie_tol: f64,
    /// Average the `P → Q` and `Q → P` extrema percentages.
    pub symmetric: bool,
}

impl Default for WeakOptions {
    fn default() -> Self {
        Self {
            tie_tol: 1e-9,
            symmetric: false,
        }
    }
}

#[derive(Clone, Copy, Default)]
struct Extremum {
    max: bool,
    min: bool,
}

/// Non-strict interior extrema, one entry per interior index.
fn interior_extrema(values: &[f64], tie_tol: f64) -> Vec<Extremum> {
    let eps = tie_tol * max_abs(values);
    let ge = |a: f64, b: f64| a - b >= -eps;
    values
        .windows(3)
        .map(|w| Extremum {
            max: ge(w[1], w[0]) && ge(w[1], w[2]),
            min: ge(w[0], w[1]) && ge(w[2], w[1]),
        })
        .collect()
}

fn directional_extrema(p: &[f64], q: &[f64], tie_tol: f64) -> f64 {
    let ep = interior_extrema(p, tie_tol);
    let eq = interior_extrema(q, tie_tol);
    let (mut total, mut kept) = (0usize, 0usize);
    for (a, b) in ep.iter().zip(&eq) {
        if a.max {
            total += 1;
            kept += usize::from(b.max);
        }
        if a.min {
            total += 1;
            kept += usize::from(b.min);
        }
    }
    if total == 0 {
        100.0
    } else {
        100.0 * kept as f64 / total as f64
    }
}

/// Percentage of `P`'s interior local extrema that are extrema of the same
/// kind in `Q`; 100 when `P` has none.
pub fn extrema_preservation(p: &Profile, q: &Profile) -> Result<f64> {
    extrema_preservation_with(p, q, &WeakOptions::default())
}

pub fn extrema_preservation_with(p: &Profile, q: &Profile, opts: &WeakOptions) -> Result<f64> {
    check_grid(p, q)?;
    if p.len() < 3 {
        return Err(Error::TooShort {
            needed: 3,
            got: p.len(),
        });
    }
    let forward = directional_extrema(p.values(), q.values(), opts.tie_tol);
    if opts.symmetric {
        let backward = directional_extrema(q.values(), p.values(), opts.tie_tol);
        Ok(0.5 * (forward + backward))
    } else {
        Ok(forward)
    }
}

/// Fraction of consecutive index pairs whose successive differences in `P`
/// and `Q` have a nonnegative product.
pub fn sign_agreement(p: &Profile, q: &Profile) -> Result<f64> {
    sign_agreement_with(p, q, &WeakOptions::default())
}

pub fn sign_agreement_with(p: &Profile, q: &Profile, opts: &WeakOptions) -> Result<f64> {
    check_grid(p, q)?;
    if p.len() < 2 {
        return Err(Error::TooShort {
            needed: 2,
            got: p.len(),
        });
    }
    let diffs = |values: &[f64]| -> Vec<f64> {
        let eps = opts.tie_tol * max_abs(values);
        values
            .windows(2)
            .map(|w| w[1] - w[0])
            .map(|d| if d.abs() <= eps { 0.0 } else { d })
            .collect()
    };
    let dp = diffs(p.values());
    let dq = diffs(q.values());
    let agree = dp.iter().zip(&dq).filter(|(a, b)| *a * *b >= 0.0).count();
    Ok(agree as f64 / dp.len() as f64)
}
