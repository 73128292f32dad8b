use proptest::prelude::*;

use symmap::operators::{
    autocorrelation_with, weighted_correlation, CorrelationKernel, WeightedOperatorSpec,
};
use symmap::{
    autocorrelation, magnitude_spectrum, magnitude_spectrum_naive, pair_count_decomposition,
    random_orthogonal, Alphabet, Boundary, EncodedSequence, MappingTable, Profile, SymbolSequence,
};

fn encoded(max_len: usize) -> impl Strategy<Value = EncodedSequence> {
    (1usize..=4, 1usize..=max_len).prop_flat_map(|(dim, len)| {
        prop::collection::vec(prop::collection::vec(-3.0f64..3.0, dim), len)
            .prop_map(move |cols| EncodedSequence::from_columns(dim, &cols).unwrap())
    })
}

fn relative_gap(a: &Profile, b: &Profile) -> f64 {
    let scale = b
        .values()
        .iter()
        .fold(0.0f64, |m, v| m.max(v.abs()))
        .max(1e-300);
    a.values()
        .iter()
        .zip(b.values())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
        / scale
}

fn scaled(p: &Profile, factor: f64) -> Vec<f64> {
    p.values().iter().map(|v| v * factor).collect()
}

fn close(a: &[f64], b: &[f64], rel: f64) -> bool {
    let scale = b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= rel * scale + 1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotation_covariance_of_all_operators(
        x in encoded(200),
        seed in any::<u64>(),
        lambda in prop_oneof![-3.0f64..-0.1, 0.1f64..3.0],
        weight_seed in prop::collection::vec(-2.0f64..2.0, 200),
    ) {
        let r = random_orthogonal(x.dim(), seed);
        let y = x.transformed(lambda, &r).unwrap();
        let l2 = lambda * lambda;
        let max_lag = x.len() - 1;
        for boundary in [Boundary::Circular, Boundary::Truncated] {
            let p = autocorrelation(&x, max_lag, boundary).unwrap();
            let q = autocorrelation(&y, max_lag, boundary).unwrap();
            prop_assert!(close(q.values(), &scaled(&p, l2), 1e-9));
        }
        let p = magnitude_spectrum(&x).unwrap();
        let q = magnitude_spectrum(&y).unwrap();
        prop_assert!(close(q.values(), &scaled(&p, l2), 1e-9));

        let mut weights = weight_seed[..x.len()].to_vec();
        weights[0] = 1.0;
        let spec = WeightedOperatorSpec::new(weights).unwrap();
        let p = weighted_correlation(&x, &spec, max_lag).unwrap();
        let q = weighted_correlation(&y, &spec, max_lag).unwrap();
        prop_assert!(close(q.values(), &scaled(&p, l2), 1e-9));
    }

    #[test]
    fn fft_spectrum_matches_naive(x in encoded(1024)) {
        let fast = magnitude_spectrum(&x).unwrap();
        let naive = magnitude_spectrum_naive(&x).unwrap();
        prop_assert!(relative_gap(&fast, &naive) <= 1e-9);
    }

    #[test]
    fn fft_correlation_matches_direct(x in encoded(400), truncated in any::<bool>()) {
        let boundary = if truncated { Boundary::Truncated } else { Boundary::Circular };
        let max_lag = x.len() - 1;
        let fast = autocorrelation_with(&x, max_lag, boundary, CorrelationKernel::Fft).unwrap();
        let direct = autocorrelation_with(&x, max_lag, boundary, CorrelationKernel::Direct).unwrap();
        prop_assert!(relative_gap(&fast, &direct) <= 1e-9);
    }

    #[test]
    fn parseval_sum_rule(x in encoded(4096)) {
        let energy: f64 = x.columns().flatten().map(|v| v * v).sum::<f64>() / x.len() as f64;
        let total: f64 = magnitude_spectrum(&x).unwrap().values().iter().sum();
        prop_assert!((total - energy).abs() <= 1e-9 * energy.max(1e-300));
    }
}

fn table_and_sequence() -> impl Strategy<Value = (MappingTable, SymbolSequence)> {
    (1usize..=6, 1usize..=4, 1usize..=256).prop_flat_map(|(k, dim, len)| {
        (
            prop::collection::vec(prop::collection::vec(-2.0f64..2.0, dim), k),
            prop::collection::vec(0..k as u8, len),
        )
            .prop_map(move |(vectors, data)| {
                let symbols: String = "ACGTUN".chars().take(k).collect();
                let alphabet = Alphabet::new(&symbols).unwrap();
                let map = MappingTable::new(alphabet.clone(), dim, vectors, None).unwrap();
                (map, SymbolSequence::from_indices(alphabet, data).unwrap())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn pair_counts_reconstruct_the_correlation((map, seq) in table_and_sequence()) {
        let max_lag = seq.len() - 1;
        let dec = pair_count_decomposition(&seq, &map, max_lag).unwrap();
        let direct = autocorrelation(&map.encode(&seq).unwrap(), max_lag, Boundary::Circular).unwrap();
        let scale = direct.values().iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (a, b) in dec.profile.values().iter().zip(direct.values()) {
            prop_assert!((a - b).abs() <= 1e-12 * scale);
        }
        for table in &dec.tables {
            prop_assert_eq!(table.total(), seq.len() as u64);
        }
    }
}
