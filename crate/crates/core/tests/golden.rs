//! Sweep medians frozen from an independent numpy computation on the same
//! generated sequences.

use symmap::experiment::{sweep, LagWindow, SweepOptions};
use symmap::sequence_io::{generate, GeneratorSpec};
use symmap::{builtin_mapping, Alphabet, Boundary};

const GOLDEN: &str = include_str!("golden/voss_paired_pm_correlation_median.csv");

#[test]
fn voss_vs_paired_pm_medians() {
    let expected: Vec<(usize, f64)> = GOLDEN
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('N'))
        .map(|l| {
            let (n, v) = l.split_once(',').unwrap();
            (n.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    let lengths: Vec<usize> = expected.iter().map(|e| e.0).collect();
    let voss = builtin_mapping("voss").unwrap();
    let pm = builtin_mapping("paired_pm").unwrap();
    let opts = SweepOptions::correlation(Boundary::Circular, LagWindow::Full);
    let mut per_length = vec![Vec::new(); lengths.len()];
    for seed in 0..20 {
        let seq = generate(&GeneratorSpec::iid_uniform(&Alphabet::dna(), 8192, seed)).unwrap();
        let report = sweep(&seq, &voss, &pm, &lengths, &opts).unwrap();
        for (slot, row) in per_length.iter_mut().zip(&report.rows) {
            slot.push(row.rho.unwrap());
        }
    }
    for ((n, want), mut got) in expected.into_iter().zip(per_length) {
        got.sort_by(f64::total_cmp);
        let median = 0.5 * (got[9] + got[10]);
        assert!((median - want).abs() <= 1e-9, "N={n}: {median} vs {want}");
    }
}

#[test]
fn first_generated_symbols_are_pinned() {
    let seq = generate(&GeneratorSpec::iid_uniform(&Alphabet::dna(), 40, 0)).unwrap();
    assert_eq!(seq.to_string(), "ACCACAATTCTAAGGGATACGCCCACTCTACCTATATGAC");
}
