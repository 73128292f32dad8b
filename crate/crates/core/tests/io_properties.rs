use proptest::prelude::*;

use symmap::sequence_io::{
    generate, parse_fasta, prefix, write_fasta, FastaRecord, GeneratorSpec, Model, ResiduePolicy,
};
use symmap::{builtin_mapping, embed, Alphabet, BuiltinMapping, MappingTable, SymbolSequence};

fn dna_sequence(max_len: usize) -> impl Strategy<Value = SymbolSequence> {
    prop::collection::vec(0u8..4, 1..=max_len)
        .prop_map(|d| SymbolSequence::from_indices(Alphabet::dna(), d).unwrap())
}

proptest! {
    #[test]
    fn fasta_round_trip(
        seqs in prop::collection::vec(dna_sequence(300), 1..=4),
        width in 1usize..=100,
    ) {
        let records: Vec<FastaRecord> = seqs
            .into_iter()
            .enumerate()
            .map(|(i, sequence)| FastaRecord { id: format!("r{i}"), sequence, skipped: 0 })
            .collect();
        let mut buf = Vec::new();
        write_fasta(&mut buf, &records, width).unwrap();
        let back = parse_fasta(buf.as_slice(), &Alphabet::dna(), ResiduePolicy::Strict).unwrap();
        prop_assert_eq!(back, records);
    }

    #[test]
    fn lowercase_input_folds(seq in dna_sequence(200)) {
        let text = format!(">x\n{}\n", seq.to_string().to_lowercase());
        let back = parse_fasta(text.as_bytes(), &Alphabet::dna(), ResiduePolicy::Strict).unwrap();
        prop_assert_eq!(&back[0].sequence, &seq);
    }

    #[test]
    fn prefix_composition(seq in dna_sequence(500), a in 1usize..=500, b in 1usize..=500) {
        let (b, a) = (a.min(b).min(seq.len()), a.max(b).min(seq.len()));
        prop_assert_eq!(prefix(&prefix(&seq, a).unwrap(), b).unwrap(), prefix(&seq, b).unwrap());
    }

    #[test]
    fn generation_is_pure(seed in any::<u64>(), len in 1usize..=2000, markov in any::<bool>()) {
        let mut spec = GeneratorSpec::iid_uniform(&Alphabet::dna(), len, seed);
        if markov {
            spec.model = Model::Markov {
                initial: vec![0.25; 4],
                transition: vec![
                    vec![0.7, 0.1, 0.1, 0.1],
                    vec![0.1, 0.7, 0.1, 0.1],
                    vec![0.1, 0.1, 0.7, 0.1],
                    vec![0.1, 0.1, 0.1, 0.7],
                ],
            };
        }
        let a = generate(&spec).unwrap();
        prop_assert_eq!(a.len(), len);
        prop_assert_eq!(a, generate(&spec).unwrap());
    }

    #[test]
    fn encode_is_positionwise(seq in dna_sequence(300), which in 0usize..BuiltinMapping::ALL.len()) {
        let m = BuiltinMapping::ALL[which].table();
        let x = m.encode(&seq).unwrap();
        prop_assert_eq!(x.len(), seq.len());
        for (i, &s) in seq.indices().iter().enumerate() {
            prop_assert_eq!(x.column(i), m.vector(usize::from(s)));
        }
    }

    #[test]
    fn embed_preserves_inner_products(
        vectors in prop::collection::vec(prop::collection::vec(-5.0f64..5.0, 3), 4),
        extra in 0usize..5,
    ) {
        let m = MappingTable::new(Alphabet::dna(), 3, vectors, None).unwrap();
        let e = embed(&m, 3 + extra).unwrap();
        prop_assert_eq!(e.dim(), 3 + extra);
        prop_assert_eq!(m.gram(), e.gram());
    }
}

#[test]
fn builtins_are_deterministic() {
    for b in BuiltinMapping::ALL {
        assert_eq!(
            builtin_mapping(b.name()).unwrap(),
            builtin_mapping(b.name()).unwrap()
        );
    }
}
