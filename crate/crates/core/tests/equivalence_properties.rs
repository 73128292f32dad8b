use proptest::prelude::*;

use symmap::experiment::{sweep, LagWindow, SweepOptions};
use symmap::{
    autocorrelation, builtin_mapping, extrema_preservation, magnitude_spectrum,
    pearson_consistency, random_orthogonal, rotation_relatedness, sign_agreement, Alphabet,
    Boundary, BuiltinMapping, MappingTable, SymbolSequence,
};

fn dna_table(dim: usize) -> impl Strategy<Value = MappingTable> {
    prop::collection::vec(prop::collection::vec(-2.0f64..2.0, dim), 4)
        .prop_filter("nonzero", |v| v.iter().flatten().any(|x| x.abs() > 1e-3))
        .prop_map(move |v| MappingTable::new(Alphabet::dna(), dim, v, None).unwrap())
}

fn dna_sequence(max_len: usize) -> impl Strategy<Value = SymbolSequence> {
    prop::collection::vec(0u8..4, 4..=max_len)
        .prop_map(|d| SymbolSequence::from_indices(Alphabet::dna(), d).unwrap())
}

fn binary_table() -> impl Strategy<Value = MappingTable> {
    (-5.0f64..5.0, -5.0f64..5.0)
        .prop_filter("two distinct values", |(a, b)| (a - b).abs() > 1e-3)
        .prop_map(|(a, b)| {
            MappingTable::new(
                Alphabet::new("01").unwrap(),
                1,
                vec![vec![a], vec![b]],
                None,
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn scaled_rotation_gives_strong_equivalence(
        (dim, m) in (1usize..=4).prop_flat_map(|d| (Just(d), dna_table(d))),
        seq in dna_sequence(2048),
        seed in any::<u64>(),
        lambda in 0.2f64..4.0,
    ) {
        let rotated = m.transformed(lambda, &random_orthogonal(dim, seed)).unwrap();
        let x = m.encode(&seq).unwrap();
        let y = rotated.encode(&seq).unwrap();
        let pairs = [
            (autocorrelation(&x, x.len() - 1, Boundary::Circular).unwrap(),
             autocorrelation(&y, y.len() - 1, Boundary::Circular).unwrap(), vec![]),
            (magnitude_spectrum(&x).unwrap(), magnitude_spectrum(&y).unwrap(), vec![0]),
        ];
        for (p, q, exclude) in pairs {
            let Ok(rho) = pearson_consistency(&p, &q, &exclude) else { continue };
            prop_assert!((rho - 1.0).abs() <= 1e-9, "rho = {}", rho);
            prop_assert_eq!(extrema_preservation(&p, &q).unwrap(), 100.0);
            prop_assert_eq!(sign_agreement(&p, &q).unwrap(), 1.0);
        }
    }

    #[test]
    fn binary_mappings_are_strongly_equivalent(
        m1 in binary_table(),
        m2 in binary_table(),
        data in prop::collection::vec(0u8..2, 4..=512),
    ) {
        let seq = SymbolSequence::from_indices(Alphabet::new("01").unwrap(), data).unwrap();
        let n = seq.len() - 1;
        let p = autocorrelation(&m1.encode(&seq).unwrap(), n, Boundary::Circular).unwrap();
        let q = autocorrelation(&m2.encode(&seq).unwrap(), n, Boundary::Circular).unwrap();
        if let Ok(rho) = pearson_consistency(&p, &q, &[]) {
            prop_assert!((rho - 1.0).abs() <= 1e-9, "rho = {}", rho);
        }
    }

    #[test]
    fn sweep_is_rotation_invariant_for_builtins(
        which in 0usize..BuiltinMapping::ALL.len(),
        seq in dna_sequence(600),
        seed in any::<u64>(),
        lambda in 0.2f64..4.0,
    ) {
        let m = BuiltinMapping::ALL[which].table();
        let rotated = m.transformed(lambda, &random_orthogonal(m.dim(), seed)).unwrap();
        let lengths = [seq.len() / 2 + 2, seq.len()];
        for opts in [SweepOptions::correlation(Boundary::Circular, LagWindow::Full), SweepOptions::spectrum()] {
            let report = sweep(&seq, &m, &rotated, &lengths, &opts).unwrap();
            for row in &report.rows {
                if let Some(rho) = row.rho {
                    prop_assert!((rho - 1.0).abs() <= 1e-9, "rho = {}", rho);
                    prop_assert_eq!(row.extrema_pct, 100.0);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rotation_relatedness_recovers_scale(
        (dim, m) in (1usize..=5).prop_flat_map(|d| (Just(d), dna_table(d))),
        seed in any::<u64>(),
        lambda in 0.1f64..10.0,
    ) {
        let r = random_orthogonal(dim, seed);
        let rotated = m.transformed(lambda, &r).unwrap();
        let v = rotation_relatedness(&m, &rotated, 1e-9).unwrap();
        prop_assert!(v.related);
        prop_assert!((v.scale - lambda).abs() <= 1e-9 * lambda);
        prop_assert!(v.alignment_residual.unwrap() <= 1e-9);
        let back = rotation_relatedness(&rotated, &m, 1e-9).unwrap();
        prop_assert!(back.related);
    }

    #[test]
    fn relatedness_is_symmetric(a in dna_table(3), b in dna_table(4), tol in 1e-9f64..0.5) {
        let ab = rotation_relatedness(&a, &b, tol).unwrap().related;
        let ba = rotation_relatedness(&b, &a, tol).unwrap().related;
        prop_assert_eq!(ab, ba);
    }
}

#[test]
fn voss_and_ry_are_unrelated_for_small_tolerances() {
    let voss = builtin_mapping("voss").unwrap();
    let ry = builtin_mapping("ry_1d").unwrap();
    for tol in [1e-12, 1e-9, 1e-6, 1e-3, 1e-2, 0.05, 0.1] {
        assert!(!rotation_relatedness(&voss, &ry, tol).unwrap().related);
        assert!(!rotation_relatedness(&ry, &voss, tol).unwrap().related);
    }
}

#[test]
fn catalog_verdicts() {
    let voss = builtin_mapping("voss").unwrap();
    let rot = rotation_relatedness(&voss, &builtin_mapping("fig7_rot").unwrap(), 1e-9).unwrap();
    assert!(rot.related);
    assert!((rot.scale - 1.0).abs() <= 1e-9);
    let r = rot.rotation.unwrap();
    assert!(((&r * r.transpose()) - nalgebra::DMatrix::identity(4, 4)).norm() < 1e-9);
    for (name, tol) in [("paired_pm", 1e-9), ("fig7_m2", 1e-3)] {
        let v = rotation_relatedness(&voss, &builtin_mapping(name).unwrap(), tol).unwrap();
        assert!(!v.related, "{name}");
        assert!(v.rotation.is_none());
    }
}
