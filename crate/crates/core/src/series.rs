//! Finitely supported formal series over the free monoid of an alphabet.
//!
//! A series `f = Σ f(u)·u` assigns a coefficient to each word `u`. Addition is
//! coefficientwise and multiplication convolves over factorizations,
//! `(f·g)(s) = Σ_{uv = s} f(u)·g(v)`, with `1·ε` as the unit. Over a
//! one-letter alphabet this is ordinary polynomial multiplication.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mapping::{check_alphabets, Alphabet};

pub const DEFAULT_SUPPORT_LIMIT: usize = 1_000_000;

/// A word of symbol indices; the empty word is the monoid identity ε.
///
/// Words order by length first, then lexicographically by index.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn new(indices: Vec<u8>) -> Self {
        Word(indices)
    }

    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        text.chars()
            .map(|c| {
                alphabet
                    .index_of(c)
                    .map(|i| i as u8)
                    .ok_or(Error::UnknownSymbol(c))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.0
            .iter()
            .map(|&i| alphabet.symbols()[usize::from(i)])
            .collect()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Coefficient ring for [`FormalSeries`].
pub trait Coefficient:
    Clone + PartialEq + Display + FromStr + Add<Output = Self> + Mul<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }
}

impl Coefficient for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
}

impl Coefficient for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries<C = f64> {
    alphabet: Alphabet,
    // canonical: no zero coefficients
    terms: BTreeMap<Word, C>,
}

impl<C: Coefficient> FormalSeries<C> {
    pub fn zero(alphabet: Alphabet) -> Self {
        Self {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1·ε`.
    pub fn one(alphabet: Alphabet) -> Self {
        Self::monomial(alphabet, Word::empty(), C::one())
    }

    pub fn monomial(alphabet: Alphabet, word: Word, coefficient: C) -> Self {
        Self::from_terms(alphabet, [(word, coefficient)])
    }

    /// Builds a series, summing repeated words and dropping zero coefficients.
    pub fn from_terms(alphabet: Alphabet, terms: impl IntoIterator<Item = (Word, C)>) -> Self {
        let mut out = Self::zero(alphabet);
        for (w, c) in terms {
            out.accumulate(w, c);
        }
        out
    }

    fn accumulate(&mut self, word: Word, c: C) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn coefficient(&self, word: &Word) -> C {
        self.terms.get(word).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in length-lexicographic word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &C)> {
        self.terms.iter()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_alphabets(&self.alphabet, &other.alphabet)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.mul_with_limit(other, DEFAULT_SUPPORT_LIMIT)
    }

    /// Product with an explicit bound on `|supp f| · |supp g|`.
    pub fn mul_with_limit(&self, other: &Self, limit: usize) -> Result<Self> {
        check_alphabets(&self.alphabet, &other.alphabet)?;
        let needed = self.terms.len().saturating_mul(other.terms.len());
        if needed > limit {
            return Err(Error::SupportOverflow { needed, limit });
        }
        let mut out = Self::zero(self.alphabet.clone());
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.accumulate(u.concat(v), a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    /// `r·f`, coefficientwise.
    pub fn scalar(&self, r: C) -> Self {
        Self::from_terms(
            self.alphabet.clone(),
            self.terms
                .iter()
                .map(|(w, c)| (w.clone(), r.clone() * c.clone())),
        )
    }

    /// One `<coefficient>\t<word>` line per term; ε is the empty word.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (w, c) in &self.terms {
            out.push_str(&format!("{c}\t{}\n", w.render(&self.alphabet)));
        }
        out
    }

    /// Parses the [`to_text`](Self::to_text) format. A single space may stand
    /// in for the tab; a line holding only a coefficient is a multiple of ε.
    /// Blank lines and `#` comments are skipped.
    pub fn parse(alphabet: &Alphabet, text: &str) -> Result<Self> {
        let mut out = Self::zero(alphabet.clone());
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim_end_matches('\r');
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let (coef, word) = line
                .split_once('\t')
                .or_else(|| line.trim_start().split_once(' '))
                .unwrap_or((line, ""));
            let c: C = coef.trim().parse().map_err(|_| {
                Error::Parse(format!(
                    "line {}: bad coefficient `{}`",
                    lineno + 1,
                    coef.trim()
                ))
            })?;
            let w = Word::parse(alphabet, word.trim())?;
            out.accumulate(w, c);
        }
        Ok(out)
    }
}

/// Result of [`FormalSeries::scalar_equivalent`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScalarEquivalence {
    /// `f = c·g` for the contained nonzero scalar `c`.
    Equivalent(f64),
    NotEquivalent,
}

impl FormalSeries<f64> {
    /// Tests whether `self = c·other` for a nonzero real `c`, which makes the
    /// two series generate the same ideal. Supports must coincide and each
    /// coefficient must match within `tol` relative. Two zero series are
    /// equivalent with `c = 1`.
    pub fn scalar_equivalent(&self, other: &Self, tol: f64) -> Result<ScalarEquivalence> {
        check_alphabets(&self.alphabet, &other.alphabet)?;
        if self.terms.len() != other.terms.len()
            || self
                .terms
                .keys()
                .zip(other.terms.keys())
                .any(|(a, b)| a != b)
        {
            return Ok(ScalarEquivalence::NotEquivalent);
        }
        let Some((w, &g0)) = other.terms.iter().next() else {
            return Ok(ScalarEquivalence::Equivalent(1.0));
        };
        let c = self.terms[w] / g0;
        let close = self
            .terms
            .values()
            .zip(other.terms.values())
            .all(|(&f, &g)| {
                let scaled = c * g;
                (f - scaled).abs() <= tol * f.abs().max(scaled.abs())
            });
        Ok(if close && c != 0.0 && c.is_finite() {
            ScalarEquivalence::Equivalent(c)
        } else {
            ScalarEquivalence::NotEquivalent
        })
    }
}

impl From<&FormalSeries<i64>> for FormalSeries<f64> {
    fn from(f: &FormalSeries<i64>) -> Self {
        FormalSeries {
            alphabet: f.alphabet.clone(),
            terms: f
                .terms
                .iter()
                .map(|(w, &c)| (w.clone(), c as f64))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn series(text: &str) -> FormalSeries<i64> {
        FormalSeries::parse(&ab(), text).unwrap()
    }

    #[test]
    fn addition_identity_and_cancellation() {
        let f = series("1\ta\n3\tab\n-2\t\n");
        assert_eq!(f.add(&FormalSeries::zero(ab())).unwrap(), f);
        let cancel = series("2\ta").add(&series("-2\ta")).unwrap();
        assert!(cancel.is_zero());
        let sum = series("1\ta\n1\tb").add(&series("1\tb")).unwrap();
        assert_eq!(sum, series("1\ta\n2\tb"));
    }

    #[test]
    fn multiplication_unit_and_noncommutativity() {
        let f = series("1\ta\n3\tab\n-2\t\n");
        assert_eq!(f.mul(&FormalSeries::one(ab())).unwrap(), f);
        assert_eq!(FormalSeries::one(ab()).mul(&f).unwrap(), f);
        let a = series("1\ta");
        let b = series("1\tb");
        assert_eq!(a.mul(&b).unwrap(), series("1\tab"));
        assert_eq!(b.mul(&a).unwrap(), series("1\tba"));
    }

    #[test]
    fn singleton_alphabet_is_convolution() {
        let x = Alphabet::new("a").unwrap();
        let f: FormalSeries<i64> = FormalSeries::parse(&x, "1\t\n2\ta").unwrap();
        let g: FormalSeries<i64> = FormalSeries::parse(&x, "3\t\n4\ta").unwrap();
        let expected: FormalSeries<i64> = FormalSeries::parse(&x, "3\t\n10\ta\n8\taa").unwrap();
        assert_eq!(f.mul(&g).unwrap(), expected);
    }

    #[test]
    fn scalar_action() {
        let f = series("1\ta\n3\tab");
        assert_eq!(f.scalar(1), f);
        assert!(f.scalar(0).is_zero());
        assert_eq!(f.scalar(2), series("2\ta\n6\tab"));
    }

    #[test]
    fn support_guard() {
        let f = series("1\ta\n1\tb\n1\t");
        assert!(matches!(
            f.mul_with_limit(&f, 8),
            Err(Error::SupportOverflow {
                needed: 9,
                limit: 8
            })
        ));
        assert!(f.mul_with_limit(&f, 9).is_ok());
    }

    #[test]
    fn alphabet_mismatch() {
        let f = series("1\ta");
        let g: FormalSeries<i64> = FormalSeries::one(Alphabet::new("xy").unwrap());
        assert!(matches!(f.add(&g), Err(Error::AlphabetMismatch { .. })));
        assert!(matches!(f.mul(&g), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn scalar_equivalence_cases() {
        let f: FormalSeries<f64> = FormalSeries::parse(&ab(), "1.5\ta\n-2\tba\n4\t").unwrap();
        assert_eq!(
            f.scalar(5.0).scalar_equivalent(&f, 1e-12).unwrap(),
            ScalarEquivalence::Equivalent(5.0)
        );
        let zero = FormalSeries::<f64>::zero(ab());
        assert_eq!(
            zero.scalar_equivalent(&zero, 1e-12).unwrap(),
            ScalarEquivalence::Equivalent(1.0)
        );
        let a: FormalSeries<f64> = FormalSeries::parse(&ab(), "1\ta").unwrap();
        let b: FormalSeries<f64> = FormalSeries::parse(&ab(), "1\tb").unwrap();
        assert_eq!(
            a.scalar_equivalent(&b, 1e-12).unwrap(),
            ScalarEquivalence::NotEquivalent
        );
        let skew: FormalSeries<f64> = FormalSeries::parse(&ab(), "1\ta\n2\tb").unwrap();
        let other: FormalSeries<f64> = FormalSeries::parse(&ab(), "1\ta\n3\tb").unwrap();
        assert_eq!(
            skew.scalar_equivalent(&other, 1e-9).unwrap(),
            ScalarEquivalence::NotEquivalent
        );
    }

    #[test]
    fn text_layout_is_length_lex() {
        let f = series("1\tba\n2\tb\n-1\taa\n7\t");
        // Symbols render upper-cased.
        assert_eq!(f.to_text(), "7\t\n2\tB\n-1\tAA\n1\tBA\n");
        assert_eq!(FormalSeries::parse(&ab(), &f.to_text()).unwrap(), f);
        assert!(FormalSeries::<i64>::parse(&ab(), "x\ta").is_err());
        assert!(matches!(
            FormalSeries::<i64>::parse(&ab(), "1\tc"),
            Err(Error::UnknownSymbol('c'))
        ));
    }
}
