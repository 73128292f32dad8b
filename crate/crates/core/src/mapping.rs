//! Alphabets, symbol sequences, and symbol-to-vector mappings.
//!
//! A [`MappingTable`] assigns one real `dim`-vector to every symbol of an
//! [`Alphabet`]. Encoding a [`SymbolSequence`] under a table yields an
//! [`EncodedSequence`], the `dim × N` matrix whose columns are the symbol
//! vectors in sequence order.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordered set of distinct single-character symbols.
///
/// Symbols are stored upper-cased and lookups fold case, so `a` and `A` name
/// the same symbol. A symbol's index is its position in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub const MAX_SIZE: usize = 256;

    pub fn new(symbols: &str) -> Result<Self> {
        let mut out: Vec<char> = Vec::new();
        for c in symbols.chars() {
            if c.is_whitespace() {
                return Err(Error::InvalidAlphabet(format!(
                    "whitespace symbol in `{symbols}`"
                )));
            }
            let c = fold(c);
            if out.contains(&c) {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate symbol `{c}` in `{symbols}`"
                )));
            }
            out.push(c);
        }
        if out.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        if out.len() > Self::MAX_SIZE {
            return Err(Error::InvalidAlphabet(format!(
                "{} symbols exceeds the limit of {}",
                out.len(),
                Self::MAX_SIZE
            )));
        }
        Ok(Self { symbols: out })
    }

    /// The nucleotide alphabet in the order A, T, G, C.
    pub fn dna() -> Self {
        Self {
            symbols: vec!['A', 'T', 'G', 'C'],
        }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, index: usize) -> Option<char> {
        self.symbols.get(index).copied()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        let c = fold(c);
        self.symbols.iter().position(|&s| s == c)
    }

    fn check(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.symbols.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

impl FromStr for Alphabet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Alphabet::new(s)
    }
}

fn fold(c: char) -> char {
    c.to_ascii_uppercase()
}

pub(crate) fn check_alphabets(a: &Alphabet, b: &Alphabet) -> Result<()> {
    a.check(b)
}

/// A sequence of symbols stored as indices into its alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolSequence {
    alphabet: Alphabet,
    data: Vec<u8>,
}

impl SymbolSequence {
    pub fn from_indices(alphabet: Alphabet, data: Vec<u8>) -> Result<Self> {
        let size = alphabet.len();
        if let Some(&bad) = data.iter().find(|&&i| usize::from(i) >= size) {
            return Err(Error::SymbolOutOfRange {
                index: bad.into(),
                size,
            });
        }
        Ok(Self { alphabet, data })
    }

    /// Parses a string of symbols, folding case.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let data = text
            .chars()
            .map(|c| {
                alphabet
                    .index_of(c)
                    .map(|i| i as u8)
                    .ok_or(Error::UnknownSymbol(c))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            alphabet: alphabet.clone(),
            data,
        })
    }

    pub(crate) fn from_trusted(alphabet: Alphabet, data: Vec<u8>) -> Self {
        debug_assert!(data.iter().all(|&i| usize::from(i) < alphabet.len()));
        Self { alphabet, data }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn indices(&self) -> &[u8] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// The first `len` symbols; `len` must lie in `1..=self.len()`.
    pub fn prefix(&self, len: usize) -> Result<SymbolSequence> {
        if len == 0 || len > self.data.len() {
            return Err(Error::LengthOutOfRange {
                len,
                max: self.data.len(),
            });
        }
        Ok(Self {
            alphabet: self.alphabet.clone(),
            data: self.data[..len].to_vec(),
        })
    }
}

impl fmt::Display for SymbolSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let symbols = self.alphabet.symbols();
        self.data
            .iter()
            .try_for_each(|&i| write!(f, "{}", symbols[usize::from(i)]))
    }
}

/// The mappings printed in the literature that ship with the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinMapping {
    /// Indicator mapping: A, T, G, C to the standard basis of R^4.
    Voss,
    /// A:(-1,0,0,0) T:(1,0,0,0) G:(0,1,0,0) C:(0,-1,0,0).
    PairedPm,
    /// Purine/pyrimidine rule: A, G to +1 and T, C to -1.
    Ry1d,
    /// Unit-norm table that is not a rotation of the indicator mapping.
    Fig7M2,
    /// Rotation of the indicator mapping by entries of +-1/sqrt(2).
    Fig7Rot,
}

impl BuiltinMapping {
    pub const ALL: [BuiltinMapping; 5] = [
        BuiltinMapping::Voss,
        BuiltinMapping::PairedPm,
        BuiltinMapping::Ry1d,
        BuiltinMapping::Fig7M2,
        BuiltinMapping::Fig7Rot,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinMapping::Voss => "voss",
            BuiltinMapping::PairedPm => "paired_pm",
            BuiltinMapping::Ry1d => "ry_1d",
            BuiltinMapping::Fig7M2 => "fig7_m2",
            BuiltinMapping::Fig7Rot => "fig7_rot",
        }
    }

    pub fn table(self) -> MappingTable {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        // Rows in A, T, G, C order.
        let vectors: Vec<Vec<f64>> = match self {
            BuiltinMapping::Voss => vec![
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0, 0.0],
                vec![0.0, 0.0, 1.0, 0.0],
                vec![0.0, 0.0, 0.0, 1.0],
            ],
            BuiltinMapping::PairedPm => vec![
                vec![-1.0, 0.0, 0.0, 0.0],
                vec![1.0, 0.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0, 0.0],
                vec![0.0, -1.0, 0.0, 0.0],
            ],
            BuiltinMapping::Ry1d => vec![vec![1.0], vec![-1.0], vec![1.0], vec![-1.0]],
            BuiltinMapping::Fig7M2 => vec![
                vec![0.9912, 0.1322, 0.0, 0.0],
                vec![0.8367, -0.239, 0.1195, 0.4781],
                vec![-0.7505, -0.5361, -0.2144, 0.3216],
                vec![0.7804, -0.5103, -0.2401, -0.2701],
            ],
            BuiltinMapping::Fig7Rot => vec![
                vec![h, 0.0, h, 0.0],
                vec![0.0, h, 0.0, h],
                vec![-h, 0.0, h, 0.0],
                vec![0.0, -h, 0.0, h],
            ],
        };
        let dim = vectors[0].len();
        MappingTable::new(Alphabet::dna(), dim, vectors, Some(self.name().to_string()))
            .expect("builtin tables are well formed")
    }
}

impl FromStr for BuiltinMapping {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BuiltinMapping::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMapping(s.to_string()))
    }
}

/// Looks up a built-in mapping table by name.
pub fn builtin_mapping(name: &str) -> Result<MappingTable> {
    name.parse::<BuiltinMapping>().map(BuiltinMapping::table)
}

/// One real vector per alphabet symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct MappingTable {
    alphabet: Alphabet,
    dim: usize,
    // symbol-major: vectors[s * dim + d]
    vectors: Vec<f64>,
    name: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct MappingDoc {
    alphabet: String,
    dim: usize,
    vectors: BTreeMap<String, Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

impl MappingTable {
    pub fn new(
        alphabet: Alphabet,
        dim: usize,
        vectors: Vec<Vec<f64>>,
        name: Option<String>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMapping("dimension must be positive".into()));
        }
        if vectors.len() != alphabet.len() {
            return Err(Error::InvalidMapping(format!(
                "{} vectors for an alphabet of {} symbols",
                vectors.len(),
                alphabet.len()
            )));
        }
        let mut flat = Vec::with_capacity(dim * vectors.len());
        for (s, v) in vectors.iter().enumerate() {
            if v.len() != dim {
                return Err(Error::InvalidMapping(format!(
                    "vector for `{}` has length {}, expected {dim}",
                    alphabet.symbols()[s],
                    v.len()
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidMapping(format!(
                    "vector for `{}` has a non-finite entry",
                    alphabet.symbols()[s]
                )));
            }
            flat.extend_from_slice(v);
        }
        Ok(Self {
            alphabet,
            dim,
            vectors: flat,
            name,
        })
    }

    /// Reads the JSON form `{"alphabet": "ATGC", "dim": 4, "vectors": {"A": [..], ..}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: MappingDoc = serde_json::from_str(text)?;
        let alphabet = Alphabet::new(&doc.alphabet)?;
        let mut vectors: Vec<Option<Vec<f64>>> = vec![None; alphabet.len()];
        for (key, v) in doc.vectors {
            let mut chars = key.chars();
            let (Some(c), None) = (chars.next(), chars.next()) else {
                return Err(Error::InvalidMapping(format!(
                    "vector key `{key}` is not a single symbol"
                )));
            };
            let idx = alphabet.index_of(c).ok_or(Error::UnknownSymbol(c))?;
            if vectors[idx].replace(v).is_some() {
                return Err(Error::InvalidMapping(format!(
                    "symbol `{c}` has more than one vector"
                )));
            }
        }
        let vectors = vectors
            .into_iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::InvalidMapping(format!(
                        "no vector for symbol `{}`",
                        alphabet.symbols()[i]
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, doc.dim, vectors, doc.name)
    }

    pub fn to_json(&self) -> String {
        let doc = MappingDoc {
            alphabet: self.alphabet.to_string(),
            dim: self.dim,
            vectors: self
                .alphabet
                .symbols()
                .iter()
                .enumerate()
                .map(|(i, c)| (c.to_string(), self.vector(i).to_vec()))
                .collect(),
            name: self.name.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("mapping documents always serialize")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// The label used in report metadata; unnamed tables read as `custom`.
    pub fn label(&self) -> &str {
        self.name.as_deref().unwrap_or("custom")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn vector(&self, symbol: usize) -> &[f64] {
        &self.vectors[symbol * self.dim..(symbol + 1) * self.dim]
    }

    pub fn vectors(&self) -> impl Iterator<Item = &[f64]> {
        self.vectors.chunks_exact(self.dim)
    }

    pub fn is_zero(&self) -> bool {
        self.vectors.iter().all(|&x| x == 0.0)
    }

    /// `dim × |alphabet|` matrix whose columns are the symbol vectors.
    pub fn matrix(&self) -> DMatrix<f64> {
        DMatrix::from_column_slice(self.dim, self.alphabet.len(), &self.vectors)
    }

    /// Gram matrix of pairwise symbol-vector inner products.
    pub fn gram(&self) -> DMatrix<f64> {
        let k = self.alphabet.len();
        DMatrix::from_fn(k, k, |a, b| dot(self.vector(a), self.vector(b)))
    }

    /// Zero-pads every vector to `target_dim` entries.
    pub fn embed(&self, target_dim: usize) -> Result<MappingTable> {
        if target_dim < self.dim {
            return Err(Error::DimensionTooSmall {
                dim: self.dim,
                target: target_dim,
            });
        }
        let mut vectors = Vec::with_capacity(target_dim * self.alphabet.len());
        for v in self.vectors() {
            vectors.extend_from_slice(v);
            vectors.resize(vectors.len() + target_dim - self.dim, 0.0);
        }
        Ok(Self {
            alphabet: self.alphabet.clone(),
            dim: target_dim,
            vectors,
            name: self.name.clone(),
        })
    }

    /// The table `scale · transform · v` for every symbol vector `v`.
    ///
    /// `transform` must have `self.dim()` columns; its row count becomes the new
    /// dimension.
    pub fn transformed(&self, scale: f64, transform: &DMatrix<f64>) -> Result<MappingTable> {
        if transform.ncols() != self.dim || transform.nrows() == 0 {
            return Err(Error::InvalidMapping(format!(
                "transform is {}x{}, mapping dimension is {}",
                transform.nrows(),
                transform.ncols(),
                self.dim
            )));
        }
        let image = transform * self.matrix() * scale;
        let vectors = image
            .column_iter()
            .map(|c| c.iter().copied().collect())
            .collect();
        Self::new(self.alphabet.clone(), transform.nrows(), vectors, None)
    }

    pub fn encode(&self, seq: &SymbolSequence) -> Result<EncodedSequence> {
        check_alphabets(&self.alphabet, seq.alphabet())?;
        let mut data = Vec::with_capacity(seq.len() * self.dim);
        for &s in seq.indices() {
            data.extend_from_slice(self.vector(usize::from(s)));
        }
        Ok(EncodedSequence {
            dim: self.dim,
            len: seq.len(),
            data,
        })
    }
}

/// Encodes `seq` under `map`.
pub fn encode(seq: &SymbolSequence, map: &MappingTable) -> Result<EncodedSequence> {
    map.encode(seq)
}

/// Zero-pads `map` to `target_dim`.
pub fn embed(map: &MappingTable, target_dim: usize) -> Result<MappingTable> {
    map.embed(target_dim)
}

/// A sequence of `dim`-vectors, stored position-major.
#[derive(Clone, Debug, PartialEq)]
pub struct EncodedSequence {
    dim: usize,
    len: usize,
    data: Vec<f64>,
}

impl EncodedSequence {
    pub fn from_columns(dim: usize, columns: &[Vec<f64>]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidMapping("dimension must be positive".into()));
        }
        let mut data = Vec::with_capacity(dim * columns.len());
        for c in columns {
            if c.len() != dim {
                return Err(Error::InvalidMapping(format!(
                    "column of length {} in a {dim}-dimensional sequence",
                    c.len()
                )));
            }
            data.extend_from_slice(c);
        }
        Ok(Self {
            dim,
            len: columns.len(),
            data,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn column(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn columns(&self) -> impl Iterator<Item = &[f64]> {
        // chunks_exact panics on a zero chunk size; dim is always positive.
        self.data.chunks_exact(self.dim)
    }

    /// The scalar signal of one coordinate across all positions.
    pub fn component(&self, d: usize) -> impl Iterator<Item = f64> + '_ {
        self.data.iter().skip(d).step_by(self.dim).copied()
    }

    /// Applies `x ↦ scale · transform · x` to every column.
    pub fn transformed(&self, scale: f64, transform: &DMatrix<f64>) -> Result<EncodedSequence> {
        if transform.ncols() != self.dim || transform.nrows() == 0 {
            return Err(Error::InvalidMapping(format!(
                "transform is {}x{}, sequence dimension is {}",
                transform.nrows(),
                transform.ncols(),
                self.dim
            )));
        }
        let x = DMatrix::from_column_slice(self.dim, self.len, &self.data);
        let y = transform * x * scale;
        Ok(Self {
            dim: transform.nrows(),
            len: self.len,
            data: y.as_slice().to_vec(),
        })
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dna(s: &str) -> SymbolSequence {
        SymbolSequence::parse(&Alphabet::dna(), s).unwrap()
    }

    #[test]
    fn alphabet_rejects_duplicates_after_case_folding() {
        assert!(matches!(
            Alphabet::new("aA"),
            Err(Error::InvalidAlphabet(_))
        ));
        assert!(matches!(Alphabet::new(""), Err(Error::InvalidAlphabet(_))));
        let a = Alphabet::new("atgc").unwrap();
        assert_eq!(a, Alphabet::dna());
        assert_eq!(a.index_of('g'), Some(2));
    }

    #[test]
    fn builtin_tables_match_published_values() {
        let voss = builtin_mapping("voss").unwrap();
        for s in 0..4 {
            let mut e = [0.0; 4];
            e[s] = 1.0;
            assert_eq!(voss.vector(s), &e[..]);
        }
        let pm = builtin_mapping("paired_pm").unwrap();
        assert_eq!(pm.vector(0), &[-1.0, 0.0, 0.0, 0.0]);
        assert_eq!(pm.vector(1), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(pm.vector(2), &[0.0, 1.0, 0.0, 0.0]);
        assert_eq!(pm.vector(3), &[0.0, -1.0, 0.0, 0.0]);
        let ry = builtin_mapping("ry_1d").unwrap();
        assert_eq!(ry.dim(), 1);
        assert_eq!(
            ry.vectors().map(|v| v[0]).collect::<Vec<_>>(),
            vec![1.0, -1.0, 1.0, -1.0]
        );
        let m2 = builtin_mapping("fig7_m2").unwrap();
        assert_eq!(m2.vector(1), &[0.8367, -0.239, 0.1195, 0.4781]);
        let rot = builtin_mapping("fig7_rot").unwrap();
        assert_eq!(rot.vector(2)[0], -std::f64::consts::FRAC_1_SQRT_2);
    }

    #[test]
    fn unknown_builtin_is_an_error() {
        assert!(matches!(
            builtin_mapping("z_curve"),
            Err(Error::UnknownMapping(name)) if name == "z_curve"
        ));
    }

    #[test]
    fn builtin_is_deterministic() {
        for m in BuiltinMapping::ALL {
            assert_eq!(m.table(), m.table());
        }
    }

    #[test]
    fn encode_voss_gives_standard_basis() {
        let x = encode(&dna("ATGC"), &builtin_mapping("voss").unwrap()).unwrap();
        assert_eq!(x.len(), 4);
        for i in 0..4 {
            let mut e = [0.0; 4];
            e[i] = 1.0;
            assert_eq!(x.column(i), &e[..]);
        }
    }

    #[test]
    fn encode_paired_and_empty() {
        let pm = builtin_mapping("paired_pm").unwrap();
        let x = encode(&dna("AT"), &pm).unwrap();
        assert_eq!(x.column(0), &[-1.0, 0.0, 0.0, 0.0]);
        assert_eq!(x.column(1), &[1.0, 0.0, 0.0, 0.0]);
        let empty = encode(&dna(""), &pm).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.columns().count(), 0);
    }

    #[test]
    fn encode_rejects_foreign_alphabet() {
        let seq = SymbolSequence::parse(&Alphabet::new("RY").unwrap(), "RY").unwrap();
        assert!(matches!(
            encode(&seq, &builtin_mapping("voss").unwrap()),
            Err(Error::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn embed_pads_with_zeros() {
        let ry4 = builtin_mapping("ry_1d").unwrap().embed(4).unwrap();
        assert_eq!(ry4.vector(0), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(ry4.vector(1), &[-1.0, 0.0, 0.0, 0.0]);
        assert_eq!(ry4.vector(3), &[-1.0, 0.0, 0.0, 0.0]);

        let voss = builtin_mapping("voss").unwrap();
        assert_eq!(voss.embed(4).unwrap(), voss);
        let v5 = voss.embed(5).unwrap();
        assert_eq!(v5.vector(3), &[0.0, 0.0, 0.0, 1.0, 0.0]);
        assert!(matches!(
            voss.embed(3),
            Err(Error::DimensionTooSmall { dim: 4, target: 3 })
        ));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let text =
            r#"{"alphabet":"ATGC","dim":2,"vectors":{"A":[1,0],"t":[0,1],"G":[-1,0],"C":[0,-1]}}"#;
        let m = MappingTable::from_json(text).unwrap();
        assert_eq!(m.vector(1), &[0.0, 1.0]);
        assert_eq!(m.name(), None);
        let back = MappingTable::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);

        let short =
            r#"{"alphabet":"ATGC","dim":2,"vectors":{"A":[1,0],"T":[0,1],"G":[-1,0],"C":[0]}}"#;
        assert!(matches!(
            MappingTable::from_json(short),
            Err(Error::InvalidMapping(_))
        ));
        let missing = r#"{"alphabet":"ATGC","dim":1,"vectors":{"A":[1],"T":[0],"G":[2]}}"#;
        assert!(matches!(
            MappingTable::from_json(missing),
            Err(Error::InvalidMapping(_))
        ));
    }

    #[test]
    fn prefix_bounds() {
        let s = dna("ATGC");
        assert_eq!(s.prefix(4).unwrap(), s);
        assert_eq!(s.prefix(2).unwrap().to_string(), "AT");
        assert!(matches!(
            s.prefix(0),
            Err(Error::LengthOutOfRange { len: 0, max: 4 })
        ));
        assert!(s.prefix(5).is_err());
    }
}
