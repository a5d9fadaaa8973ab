//! Exact scalars, generator alphabets and the free associative algebra.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::linear::{render_terms, LinComb};

/// Exact rational scalar. Always stored reduced with a positive denominator.
pub type Rational = BigRational;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("elements live over different generator alphabets")]
    AlphabetMismatch,
    #[error("generator `{0}` has weight 0; weights must be at least 1")]
    ZeroWeight(String),
    #[error("generator name `{0}` is used twice")]
    DuplicateName(String),
    #[error("`{0}` is not a valid generator name")]
    BadName(String),
    #[error("letter index {0} is outside the alphabet")]
    BadLetter(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub index: usize,
    pub name: String,
    pub weight: u32,
}

/// Ordered list of weighted generators. The position of a generator is its
/// place in the PBW order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    generators: Vec<Generator>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(entries: &[(S, u32)]) -> Result<Self, FreeAlgError> {
        let mut seen = HashSet::new();
        let mut generators = Vec::with_capacity(entries.len());
        for (index, (name, weight)) in entries.iter().enumerate() {
            let name = name.as_ref();
            if !is_identifier(name) {
                return Err(FreeAlgError::BadName(name.to_string()));
            }
            if *weight == 0 {
                return Err(FreeAlgError::ZeroWeight(name.to_string()));
            }
            if !seen.insert(name.to_string()) {
                return Err(FreeAlgError::DuplicateName(name.to_string()));
            }
            generators.push(Generator {
                index,
                name: name.to_string(),
                weight: *weight,
            });
        }
        Ok(Self { generators })
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, index: usize) -> &Generator {
        &self.generators[index]
    }

    pub fn name(&self, index: usize) -> &str {
        &self.generators[index].name
    }

    pub fn weight(&self, index: usize) -> u32 {
        self.generators[index].weight
    }

    pub fn weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.weight).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn max_weight(&self) -> u32 {
        self.generators.iter().map(|g| g.weight).max().unwrap_or(0)
    }

    pub fn min_weight(&self) -> u32 {
        self.generators.iter().map(|g| g.weight).min().unwrap_or(0)
    }

    /// Builds a word, checking every letter against the alphabet.
    pub fn word(&self, letters: Vec<usize>) -> Result<Word, FreeAlgError> {
        if let Some(&bad) = letters.iter().find(|&&l| l >= self.len()) {
            return Err(FreeAlgError::BadLetter(bad));
        }
        let weight = letters.iter().map(|&l| self.weight(l)).sum();
        Ok(Word { weight, letters })
    }

    /// Same alphabet with new weights (same names, same order).
    pub fn reweighted(&self, weights: &[u32]) -> Result<Self, FreeAlgError> {
        let entries: Vec<(&str, u32)> = self
            .generators
            .iter()
            .zip(weights)
            .map(|(g, &w)| (g.name.as_str(), w))
            .collect();
        Self::new(&entries)
    }

    /// Renders a run-length encoded product of generators, e.g. `a^2bc`.
    pub fn render_powers(&self, powers: impl IntoIterator<Item = (usize, u32)>) -> String {
        let mut out = String::new();
        for (g, e) in powers {
            if e == 0 {
                continue;
            }
            out.push_str(self.name(g));
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        out
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A word in the generators. Words are ordered by weight, then longer first,
/// then lexicographically by letter index; this is the canonical print order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    weight: u32,
    letters: Vec<usize>,
}

impl Word {
    pub fn empty() -> Self {
        Self {
            weight: 0,
            letters: Vec::new(),
        }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cached weight (computed when the word was built from its alphabet).
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            weight: self.weight + other.weight,
            letters,
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        let mut runs: Vec<(usize, u32)> = Vec::new();
        for &l in &self.letters {
            match runs.last_mut() {
                Some((g, e)) if *g == l => *e += 1,
                _ => runs.push((l, 1)),
            }
        }
        alphabet.render_powers(runs)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then(other.letters.len().cmp(&self.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sum of generator weights along the word.
pub fn word_weight(word: &Word, alphabet: &Alphabet) -> Result<u64, FreeAlgError> {
    word.letters.iter().try_fold(0u64, |acc, &l| {
        if l >= alphabet.len() {
            Err(FreeAlgError::BadLetter(l))
        } else {
            Ok(acc + u64::from(alphabet.weight(l)))
        }
    })
}

/// Element of the free associative algebra over an alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct FreeElement {
    alphabet: Arc<Alphabet>,
    terms: LinComb<Word>,
}

impl FreeElement {
    pub fn zero(alphabet: Arc<Alphabet>) -> Self {
        Self {
            alphabet,
            terms: LinComb::zero(),
        }
    }

    pub fn one(alphabet: Arc<Alphabet>) -> Self {
        Self::from_word(alphabet, Word::empty(), int(1))
    }

    pub fn from_word(alphabet: Arc<Alphabet>, word: Word, coeff: Rational) -> Self {
        Self {
            alphabet,
            terms: LinComb::from_term(word, coeff),
        }
    }

    pub fn generator(alphabet: Arc<Alphabet>, index: usize) -> Self {
        let word = Word {
            weight: alphabet.weight(index),
            letters: vec![index],
        };
        Self::from_word(alphabet, word, int(1))
    }

    pub fn from_terms(alphabet: Arc<Alphabet>, terms: LinComb<Word>) -> Self {
        Self { alphabet, terms }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn terms(&self) -> &LinComb<Word> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self {
            alphabet: self.alphabet.clone(),
            terms: self.terms.scaled(c),
        }
    }

    fn same_alphabet(&self, other: &Self) -> Result<(), FreeAlgError> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(FreeAlgError::AlphabetMismatch)
        }
    }

    pub fn render(&self) -> String {
        render_terms(self.terms.iter().map(|(w, c)| (w.render(&self.alphabet), c)))
    }
}

impl fmt::Debug for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeElement({})", self.render())
    }
}

impl fmt::Display for FreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn free_add(x: &FreeElement, y: &FreeElement) -> Result<FreeElement, FreeAlgError> {
    x.same_alphabet(y)?;
    Ok(FreeElement {
        alphabet: x.alphabet.clone(),
        terms: x.terms.plus(&y.terms),
    })
}

pub fn free_sub(x: &FreeElement, y: &FreeElement) -> Result<FreeElement, FreeAlgError> {
    x.same_alphabet(y)?;
    Ok(FreeElement {
        alphabet: x.alphabet.clone(),
        terms: x.terms.minus(&y.terms),
    })
}

/// Concatenation product, extended bilinearly.
pub fn free_mul(x: &FreeElement, y: &FreeElement) -> Result<FreeElement, FreeAlgError> {
    x.same_alphabet(y)?;
    let mut terms = LinComb::zero();
    for (u, a) in &x.terms {
        for (v, b) in &y.terms {
            terms.add_term(u.concat(v), a * b);
        }
    }
    Ok(FreeElement {
        alphabet: x.alphabet.clone(),
        terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc() -> Arc<Alphabet> {
        Arc::new(Alphabet::new(&[("a", 1), ("b", 1), ("c", 2)]).unwrap())
    }

    fn gen(al: &Arc<Alphabet>, i: usize) -> FreeElement {
        FreeElement::generator(al.clone(), i)
    }

    #[test]
    fn additive_inverse_vanishes() {
        let al = abc();
        let ab = free_mul(&gen(&al, 0), &gen(&al, 1)).unwrap();
        let sum = free_add(&ab, &ab.scaled(&int(-1))).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.render(), "0");
    }

    #[test]
    fn like_terms_collect() {
        let al = abc();
        let ab = free_mul(&gen(&al, 0), &gen(&al, 1)).unwrap();
        let c = gen(&al, 2);
        let lhs = free_add(&ab, &c).unwrap();
        assert_eq!(free_add(&lhs, &c).unwrap().render(), "ab + 2 c");
        assert_eq!(free_add(&gen(&al, 0), &gen(&al, 1)).unwrap().render(), "a + b");
    }

    #[test]
    fn products_concatenate_and_distribute() {
        let al = abc();
        let ab = free_mul(&gen(&al, 0), &gen(&al, 1)).unwrap();
        assert_eq!(ab.terms().len(), 1);
        assert_eq!(ab.terms().keys().next().unwrap().letters(), &[0, 1]);

        let a_plus_b = free_add(&gen(&al, 0), &gen(&al, 1)).unwrap();
        assert_eq!(free_mul(&a_plus_b, &gen(&al, 2)).unwrap().render(), "ac + bc");

        let two_a = gen(&al, 0).scaled(&int(2));
        let half_b = gen(&al, 1).scaled(&rat(1, 2));
        assert_eq!(free_mul(&two_a, &half_b).unwrap(), ab);
    }

    #[test]
    fn alphabet_mismatch_is_rejected() {
        let other = Arc::new(Alphabet::new(&[("x", 1)]).unwrap());
        let x = FreeElement::generator(other, 0);
        assert_eq!(free_add(&gen(&abc(), 0), &x), Err(FreeAlgError::AlphabetMismatch));
        assert_eq!(free_mul(&gen(&abc(), 0), &x), Err(FreeAlgError::AlphabetMismatch));
    }

    #[test]
    fn word_weights() {
        let j = Alphabet::new(&[("a", 1), ("b", 1), ("c", 1), ("z", 2), ("w", 2), ("d", 3)]).unwrap();
        let l = Alphabet::new(&[("a", 1), ("b", 1), ("c", 2), ("z", 3), ("w", 3)]).unwrap();
        assert_eq!(word_weight(&Word::empty(), &j).unwrap(), 0);
        assert_eq!(word_weight(&j.word(vec![3, 4, 5]).unwrap(), &j).unwrap(), 7);
        assert_eq!(word_weight(&l.word(vec![0, 1, 2]).unwrap(), &l).unwrap(), 4);
    }

    #[test]
    fn alphabet_rejects_bad_input() {
        assert_eq!(
            Alphabet::new(&[("a", 0)]),
            Err(FreeAlgError::ZeroWeight("a".into()))
        );
        assert_eq!(
            Alphabet::new(&[("a", 1), ("a", 2)]),
            Err(FreeAlgError::DuplicateName("a".into()))
        );
    }

    #[test]
    fn rendering_groups_repeated_letters() {
        let al = abc();
        let w = al.word(vec![0, 0, 1, 2, 2, 2]).unwrap();
        assert_eq!(w.render(&al), "a^2bc^3");
    }

    fn arb_element(al: Arc<Alphabet>) -> impl Strategy<Value = FreeElement> {
        prop::collection::vec((prop::collection::vec(0usize..3, 0..4), -3i64..4), 0..4).prop_map(
            move |terms| {
                let mut lc = LinComb::zero();
                for (letters, c) in terms {
                    lc.add_term(al.word(letters).unwrap(), int(c));
                }
                FreeElement::from_terms(al.clone(), lc)
            },
        )
    }

    proptest! {
        #[test]
        fn product_is_associative_and_unital(
            x in arb_element(abc()), y in arb_element(abc()), z in arb_element(abc())
        ) {
            let xy_z = free_mul(&free_mul(&x, &y).unwrap(), &z).unwrap();
            let x_yz = free_mul(&x, &free_mul(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(xy_z, x_yz);
            let one = FreeElement::one(x.alphabet().clone());
            prop_assert_eq!(free_mul(&one, &x).unwrap(), x.clone());
            prop_assert_eq!(free_mul(&x, &one).unwrap(), x);
        }

        #[test]
        fn weight_is_additive(u in prop::collection::vec(0usize..3, 0..6), v in prop::collection::vec(0usize..3, 0..6)) {
            let al = abc();
            let (u, v) = (al.word(u).unwrap(), al.word(v).unwrap());
            prop_assert_eq!(
                word_weight(&u.concat(&v), &al).unwrap(),
                word_weight(&u, &al).unwrap() + word_weight(&v, &al).unwrap()
            );
        }

        #[test]
        fn stored_rationals_are_reduced(p in -50i64..50, q in 1i64..50) {
            let r = rat(p, q) + rat(q, p.abs() + 1);
            prop_assert!(num_integer::Integer::gcd(r.numer(), r.denom()) == BigInt::from(1) || r.numer() == &BigInt::from(0));
            prop_assert!(r.denom() > &BigInt::from(0));
        }
    }
}
