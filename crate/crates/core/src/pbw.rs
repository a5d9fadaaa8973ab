//! PBW-type presentations, straightening to normal form and confluence.
//!
//! A presentation lists weighted generators `g_0 < g_1 < ... < g_{n-1}` and,
//! for every pair `j > i`, a straightening rule
//!
//! ```text
//! g_j g_i  ->  q · g_i g_j + tail
//! ```
//!
//! where every monomial of `tail` is an ordered monomial strictly below the
//! word `g_j g_i` in the rewrite order (total weight, then lexicographic with
//! the lower index smaller). Pairs without an explicit rule commute.
//!
//! Rewriting always terminates under these conditions. Whether the ordered
//! monomials form a basis is decided by [`Algebra::confluence_check`], which
//! resolves every overlap `g_k g_j g_i` both ways.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::iter;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::{max_terms_from_env, TermLimitExceeded};
use crate::freealg::{int, Alphabet, FreeAlgError, FreeElement, Rational, Word};
use crate::hopf::CoproductData;
use crate::linear::{render_terms, LinComb};
use crate::parse::{self, ParseError};

/// An ordered (PBW) monomial `g_0^{e_0} g_1^{e_1} ...`.
///
/// Monomials compare by weight, then degree, then lexicographically on the
/// expanded letter sequence; this is the canonical print order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    weight: u32,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(num_generators: usize) -> Self {
        Self {
            weight: 0,
            exps: vec![0; num_generators],
        }
    }

    pub fn generator(alphabet: &Alphabet, index: usize) -> Self {
        let mut m = Self::one(alphabet.len());
        m.exps[index] = 1;
        m.weight = alphabet.weight(index);
        m
    }

    pub fn from_exponents(alphabet: &Alphabet, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), alphabet.len(), "exponent vector length");
        let weight = exps
            .iter()
            .enumerate()
            .map(|(i, &e)| e * alphabet.weight(i))
            .sum();
        Self { weight, exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Number of letters.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn first_letter(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0)
    }

    pub fn last_letter(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0)
    }

    /// Letters in nondecreasing order.
    pub fn letters(&self) -> impl DoubleEndedIterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| iter::repeat_n(i, e as usize))
    }

    fn with_letter(&self, index: usize, weight: u32) -> Self {
        let mut m = self.clone();
        m.exps[index] += 1;
        m.weight += weight;
        m
    }

    fn without_letter(&self, index: usize, weight: u32) -> Self {
        let mut m = self.clone();
        m.exps[index] -= 1;
        m.weight -= weight;
        m
    }

    /// Exponent-wise product; equals the algebra product only when every
    /// letter of `self` is `<=` every letter of `other`.
    fn juxtapose(&self, other: &Self) -> Self {
        Self {
            weight: self.weight + other.weight,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn to_word(&self, alphabet: &Alphabet) -> Word {
        alphabet
            .word(self.letters().collect())
            .expect("monomial letters are in range")
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        alphabet.render_powers(self.exps.iter().copied().enumerate())
    }

    /// Same exponents, weights taken from another alphabet.
    pub fn reweighted(&self, alphabet: &Alphabet) -> Self {
        Self::from_exponents(alphabet, self.exps.clone())
    }
}

fn cmp_letters(a: &Monomial, b: &Monomial) -> Ordering {
    a.letters().cmp(b.letters())
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then(other.degree().cmp(&self.degree()))
            .then_with(|| cmp_letters(self, other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Monomial{:?}", self.exps)
    }
}

/// Termination order for straightening: weight, then the tie-break weight
/// `tiebreak`, then lexicographic. Only called on equal-weight pairs.
fn below_in_rewrite_order(m: &Monomial, head: &[usize], tiebreak: &[u32]) -> bool {
    let tb = |letters: &mut dyn Iterator<Item = usize>| -> u64 {
        letters.map(|i| u64::from(tiebreak[i])).sum()
    };
    let (tm, th) = (tb(&mut m.letters()), tb(&mut head.iter().copied()));
    match tm.cmp(&th) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => m.letters().cmp(head.iter().copied()) == Ordering::Less,
    }
}

/// Search budget for tie-break weight vectors.
const TIEBREAK_BUDGET: u64 = 200_000;

/// Finds tie-break weights making every equal-weight tail smaller than its
/// head: first all zeros (plain weight-lex), then vectors over `1..=m`.
fn find_tiebreak(n: usize, pairs: &[(Monomial, [usize; 2])]) -> Option<Vec<u32>> {
    let works = |t: &[u32]| pairs.iter().all(|(m, h)| below_in_rewrite_order(m, h, t));
    let zero = vec![0; n];
    if works(&zero) {
        return Some(zero);
    }
    for max in 2u32..=3 {
        if u64::from(max).checked_pow(n as u32).is_none_or(|c| c > TIEBREAK_BUDGET) {
            break;
        }
        let mut t = vec![1u32; n];
        loop {
            if works(&t) {
                return Some(t);
            }
            // odometer increment, last coordinate fastest
            let mut i = n;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if t[i] < max {
                    t[i] += 1;
                    break;
                }
                t[i] = 1;
            }
            if t.iter().all(|&x| x == 1) {
                break;
            }
        }
    }
    None
}

/// Element written in the PBW basis of ordered monomials.
pub type PbwElement = LinComb<Monomial>;

/// Canonical text form of a PBW element.
pub fn render_element(x: &PbwElement, alphabet: &Alphabet) -> String {
    render_terms(x.iter().map(|(m, c)| (m.render(alphabet), c)))
}

/// The rewrite rule `g_hi g_lo -> q g_lo g_hi + tail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub hi: usize,
    pub lo: usize,
    pub q: Rational,
    pub tail: PbwElement,
}

impl Relation {
    pub fn commuting(hi: usize, lo: usize) -> Self {
        Self {
            hi,
            lo,
            q: Rational::one(),
            tail: PbwElement::zero(),
        }
    }

    /// `[g_lo, g_hi] = bracket`, i.e. `g_hi g_lo -> g_lo g_hi - bracket`.
    pub fn lie(hi: usize, lo: usize, bracket: PbwElement) -> Self {
        Self {
            hi,
            lo,
            q: Rational::one(),
            tail: bracket.negated(),
        }
    }

    pub fn is_commuting(&self) -> bool {
        self.q.is_one() && self.tail.is_zero()
    }

    /// Human name of the relation: `[a,b] - c`, `[a,c]`, or `yx - 2 xy`.
    pub fn label(&self, alphabet: &Alphabet) -> String {
        let (hi, lo) = (alphabet.name(self.hi), alphabet.name(self.lo));
        // q = 1: [lo,hi] + tail.  Otherwise: hi lo - q lo hi - tail.
        let (head, tail) = if self.q.is_one() {
            (format!("[{lo},{hi}]"), self.tail.clone())
        } else {
            let q = render_terms(iter::once((format!("{lo}{hi}"), &-self.q.clone())));
            let head = match q.strip_prefix('-') {
                Some(rest) => format!("{hi}{lo} - {rest}"),
                None => format!("{hi}{lo} + {q}"),
            };
            (head, self.tail.negated())
        };
        if tail.is_zero() {
            return head;
        }
        let tail = render_element(&tail, alphabet);
        match tail.strip_prefix('-') {
            Some(rest) => format!("{head} - {rest}"),
            None => format!("{head} + {tail}"),
        }
    }

    /// The relation as an element of the free algebra:
    /// `g_hi g_lo - q g_lo g_hi - tail`.
    pub fn as_free(&self, alphabet: &Arc<Alphabet>) -> FreeElement {
        let mut terms = LinComb::zero();
        terms.add_term(alphabet.word(vec![self.hi, self.lo]).unwrap(), int(1));
        terms.add_term(alphabet.word(vec![self.lo, self.hi]).unwrap(), -self.q.clone());
        for (m, c) in &self.tail {
            terms.add_term(m.to_word(alphabet), -c);
        }
        FreeElement::from_terms(alphabet.clone(), terms)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("relation {relation}: tail is not strictly below the head in the rewrite order")]
    TailNotSmaller { relation: String },
    #[error("relation {relation}: tail is not in normal form")]
    TailNotNormal { relation: String },
    #[error("relation {relation}: q must be nonzero")]
    ZeroQ { relation: String },
    #[error("relation on generators ({hi}, {lo}) must have hi > lo, both in range")]
    BadRelationIndices { hi: usize, lo: usize },
    #[error("coproduct lists {found} generators, expected {expected}")]
    CoproductArity { found: usize, expected: usize },
    #[error("coproduct of {generator}: a tensor factor has a constant term")]
    CoproductConstantFactor { generator: String },
    #[error("coproduct of {generator}: a tensor factor is not lighter than the generator")]
    CoproductFactorTooHeavy { generator: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
    #[error("relation {hi} {lo} is given twice")]
    DuplicateRelation { hi: String, lo: String },
    #[error("ambiguity {triple} does not resolve; residual {residual}")]
    NonConfluent { triple: String, residual: String },
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
    #[error(transparent)]
    TermLimit(#[from] TermLimitExceeded),
}

/// A finite presentation: ordered weighted generators, straightening rules
/// and an optional coproduct.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub name: String,
    alphabet: Arc<Alphabet>,
    relations: BTreeMap<(usize, usize), Relation>,
    coproduct: Option<CoproductData>,
}

impl Presentation {
    pub fn new(name: impl Into<String>, alphabet: Alphabet) -> Self {
        Self {
            name: name.into(),
            alphabet: Arc::new(alphabet),
            relations: BTreeMap::new(),
            coproduct: None,
        }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn num_generators(&self) -> usize {
        self.alphabet.len()
    }

    pub fn monomial(&self, exps: Vec<u32>) -> Monomial {
        Monomial::from_exponents(&self.alphabet, exps)
    }

    pub fn generator(&self, index: usize) -> Monomial {
        Monomial::generator(&self.alphabet, index)
    }

    /// Adds a rule; a second rule for the same pair is an error. Commuting
    /// rules are accepted but not stored.
    pub fn add_relation(&mut self, rel: Relation) -> Result<(), PbwError> {
        let n = self.alphabet.len();
        if rel.hi >= n || rel.lo >= rel.hi {
            return Err(ValidationError::BadRelationIndices {
                hi: rel.hi,
                lo: rel.lo,
            }
            .into());
        }
        if self.relations.contains_key(&(rel.hi, rel.lo)) {
            return Err(PbwError::DuplicateRelation {
                hi: self.alphabet.name(rel.hi).to_string(),
                lo: self.alphabet.name(rel.lo).to_string(),
            });
        }
        if !rel.is_commuting() {
            self.relations.insert((rel.hi, rel.lo), rel);
        }
        Ok(())
    }

    /// Replaces (or clears, for a commuting rule) the rule for a pair.
    pub fn set_relation(&mut self, rel: Relation) {
        self.relations.remove(&(rel.hi, rel.lo));
        if !rel.is_commuting() {
            self.relations.insert((rel.hi, rel.lo), rel);
        }
    }

    /// The rule for `g_hi g_lo`; pairs without an explicit rule commute.
    pub fn relation(&self, hi: usize, lo: usize) -> Relation {
        self.relations
            .get(&(hi, lo))
            .cloned()
            .unwrap_or_else(|| Relation::commuting(hi, lo))
    }

    /// Non-commuting rules, ordered by `(hi, lo)`.
    pub fn explicit_relations(&self) -> impl Iterator<Item = &Relation> {
        self.relations.values()
    }

    /// One rule per pair `hi > lo`, in the order `(lo, hi)` lexicographic.
    pub fn all_relations(&self) -> Vec<Relation> {
        let n = self.alphabet.len();
        let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for lo in 0..n {
            for hi in lo + 1..n {
                out.push(self.relation(hi, lo));
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn coproduct(&self) -> Option<&CoproductData> {
        self.coproduct.as_ref()
    }

    pub fn set_coproduct(&mut self, data: Option<CoproductData>) {
        self.coproduct = data;
    }

    /// Same presentation under new generator weights.
    pub fn reweighted(&self, weights: &[u32]) -> Result<Self, FreeAlgError> {
        let alphabet = self.alphabet.reweighted(weights)?;
        let remap = |x: &PbwElement| x.map_keys(|m| m.reweighted(&alphabet));
        let relations = self
            .relations
            .iter()
            .map(|(k, r)| {
                (
                    *k,
                    Relation {
                        tail: remap(&r.tail),
                        ..r.clone()
                    },
                )
            })
            .collect();
        let coproduct = self
            .coproduct
            .as_ref()
            .map(|c| c.map_monomials(|m| m.reweighted(&alphabet)));
        Ok(Self {
            name: self.name.clone(),
            alphabet: Arc::new(alphabet),
            relations,
            coproduct,
        })
    }
}

/// Outcome of a successful [`validate_presentation`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Every tail monomial has exactly the weight of its head.
    pub graded: bool,
    /// Tie-break weights of the termination order (weight, tie-break, lex).
    pub tiebreak: Vec<u32>,
    pub nontrivial_relations: usize,
    pub has_coproduct: bool,
}

/// Checks the shape that guarantees terminating rewriting, and the connected
/// shape of an attached coproduct.
pub fn validate_presentation(p: &Presentation) -> Result<ValidationReport, ValidationError> {
    let alphabet = &p.alphabet;
    let mut graded = true;
    let mut ties: Vec<(Monomial, [usize; 2], String)> = Vec::new();
    for rel in p.relations.values() {
        if rel.hi >= alphabet.len() || rel.lo >= rel.hi {
            return Err(ValidationError::BadRelationIndices {
                hi: rel.hi,
                lo: rel.lo,
            });
        }
        let label = || rel.label(alphabet);
        if rel.q.is_zero() {
            return Err(ValidationError::ZeroQ { relation: label() });
        }
        let head_weight = alphabet.weight(rel.hi) + alphabet.weight(rel.lo);
        let head = [rel.hi, rel.lo];
        for m in rel.tail.keys() {
            if m.exponents().len() != alphabet.len() {
                return Err(ValidationError::TailNotNormal { relation: label() });
            }
            match m.weight().cmp(&head_weight) {
                Ordering::Greater => {
                    return Err(ValidationError::TailNotSmaller { relation: label() })
                }
                Ordering::Equal => ties.push((m.clone(), head, label())),
                Ordering::Less => graded = false,
            }
        }
    }
    let pairs: Vec<_> = ties.iter().map(|(m, h, _)| (m.clone(), *h)).collect();
    let tiebreak = find_tiebreak(alphabet.len(), &pairs).ok_or_else(|| {
        let zero = vec![0; alphabet.len()];
        let bad = ties
            .iter()
            .find(|(m, h, _)| !below_in_rewrite_order(m, h, &zero))
            .map(|t| t.2.clone())
            .unwrap_or_default();
        ValidationError::TailNotSmaller { relation: bad }
    })?;
    if let Some(cop) = &p.coproduct {
        cop.validate(alphabet)?;
    }
    Ok(ValidationReport {
        graded,
        tiebreak,
        nontrivial_relations: p.relations.len(),
        has_coproduct: p.coproduct.is_some(),
    })
}

/// One overlap `g_k g_j g_i` (`k > j > i`) that failed to resolve.
#[derive(Debug, Clone, PartialEq)]
pub struct Ambiguity {
    pub triple: (usize, usize, usize),
    /// `nf((g_k g_j) g_i) - nf(g_k (g_j g_i))`, each side reduced first at the
    /// bracketed pair.
    pub residual: PbwElement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfluenceReport {
    pub triples_checked: usize,
    pub failures: Vec<Ambiguity>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.failures.is_empty()
    }
}

type MulKey = (usize, Monomial);

/// A validated presentation together with its multiplication caches. All
/// algebra operations go through this type.
pub struct Algebra {
    presentation: Presentation,
    report: ValidationReport,
    /// Dense `hi * n + lo` lookup of the rules.
    rules: Vec<Option<Relation>>,
    max_terms: usize,
    left_mul_cache: Mutex<HashMap<MulKey, PbwElement>>,
    pub(crate) coproduct_cache: Mutex<HashMap<Monomial, crate::hopf::TensorElement>>,
    confluence: OnceLock<Result<ConfluenceReport, TermLimitExceeded>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("name", &self.presentation.name)
            .field("report", &self.report)
            .finish()
    }
}

impl Algebra {
    /// Validates the presentation. The term cap is read from the
    /// environment.
    pub fn new(presentation: Presentation) -> Result<Self, ValidationError> {
        let report = validate_presentation(&presentation)?;
        let n = presentation.num_generators();
        let mut rules = vec![None; n * n];
        for rel in presentation.explicit_relations() {
            rules[rel.hi * n + rel.lo] = Some(rel.clone());
        }
        Ok(Self {
            presentation,
            report,
            rules,
            max_terms: max_terms_from_env(),
            left_mul_cache: Mutex::new(HashMap::new()),
            coproduct_cache: Mutex::new(HashMap::new()),
            confluence: OnceLock::new(),
        })
    }

    pub fn with_max_terms(mut self, max_terms: usize) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.presentation.alphabet
    }

    pub fn validation(&self) -> &ValidationReport {
        &self.report
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.num_generators()
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    pub(crate) fn check_size(&self, len: usize) -> Result<(), TermLimitExceeded> {
        if len > self.max_terms {
            Err(TermLimitExceeded {
                size: len,
                limit: self.max_terms,
            })
        } else {
            Ok(())
        }
    }

    pub fn one(&self) -> PbwElement {
        PbwElement::basis(Monomial::one(self.num_generators()))
    }

    pub fn generator(&self, index: usize) -> PbwElement {
        PbwElement::basis(self.presentation.generator(index))
    }

    /// Generator by name; panics on an unknown name.
    pub fn gen(&self, name: &str) -> PbwElement {
        let index = self
            .alphabet()
            .index_of(name)
            .unwrap_or_else(|| panic!("unknown generator {name}"));
        self.generator(index)
    }

    pub fn render(&self, x: &PbwElement) -> String {
        render_element(x, self.alphabet())
    }

    pub fn parse_free(&self, text: &str) -> Result<FreeElement, ParseError> {
        parse::parse_free(self.alphabet(), text)
    }

    /// Parses an expression and brings it to normal form.
    pub fn parse(&self, text: &str) -> Result<PbwElement, ParseError> {
        let free = self.parse_free(text)?;
        self.normal_form(&free)
            .map_err(|e| ParseError::new(0, e.to_string()))
    }

    fn rule(&self, hi: usize, lo: usize) -> Option<&Relation> {
        self.rules[hi * self.num_generators() + lo].as_ref()
    }

    /// `g · m` in normal form, for an ordered monomial `m`.
    pub fn left_mul_generator(&self, g: usize, m: &Monomial) -> Result<PbwElement, TermLimitExceeded> {
        let h = match m.first_letter() {
            Some(h) if h < g => h,
            _ => {
                let w = self.alphabet().weight(g);
                return Ok(PbwElement::basis(m.with_letter(g, w)));
            }
        };
        let key = (g, m.clone());
        if let Some(hit) = self.left_mul_cache.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        // g h m' = q h (g m') + tail m'
        let rest = m.without_letter(h, self.alphabet().weight(h));
        let mut out = PbwElement::zero();
        let (q, tail) = match self.rule(g, h) {
            Some(rel) => (rel.q.clone(), Some(&rel.tail)),
            None => (Rational::one(), None),
        };
        let moved = self.left_mul_generator(g, &rest)?;
        for (mono, c) in &moved {
            let part = self.left_mul_generator(h, mono)?;
            out.add_scaled(&(&q * c), &part);
        }
        if let Some(tail) = tail {
            for (t, c) in tail {
                let part = self.mul_monomials(t, &rest)?;
                out.add_scaled(c, &part);
            }
        }
        self.check_size(out.len())?;
        self.left_mul_cache
            .lock()
            .unwrap()
            .insert(key, out.clone());
        Ok(out)
    }

    /// `g · x` in normal form.
    pub fn left_mul_generator_elem(&self, g: usize, x: &PbwElement) -> Result<PbwElement, TermLimitExceeded> {
        let mut out = PbwElement::zero();
        for (m, c) in x {
            out.add_scaled(c, &self.left_mul_generator(g, m)?);
        }
        self.check_size(out.len())?;
        Ok(out)
    }

    /// Product of two ordered monomials, in normal form.
    pub fn mul_monomials(&self, u: &Monomial, v: &Monomial) -> Result<PbwElement, TermLimitExceeded> {
        match (u.last_letter(), v.first_letter()) {
            (None, _) => return Ok(PbwElement::basis(v.clone())),
            (_, None) => return Ok(PbwElement::basis(u.clone())),
            (Some(a), Some(b)) if a <= b => return Ok(PbwElement::basis(u.juxtapose(v))),
            _ => {}
        }
        let mut acc = PbwElement::basis(v.clone());
        for g in u.letters().rev() {
            acc = self.left_mul_generator_elem(g, &acc)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, x: &PbwElement, y: &PbwElement) -> Result<PbwElement, TermLimitExceeded> {
        let mut out = PbwElement::zero();
        for (u, a) in x {
            for (v, b) in y {
                out.add_scaled(&(a * b), &self.mul_monomials(u, v)?);
            }
            self.check_size(out.len())?;
        }
        Ok(out)
    }

    pub fn pow(&self, x: &PbwElement, n: u32) -> Result<PbwElement, TermLimitExceeded> {
        let mut acc = self.one();
        for _ in 0..n {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Normal form of a single word.
    pub fn word_normal_form(&self, letters: &[usize]) -> Result<PbwElement, TermLimitExceeded> {
        let mut acc = self.one();
        for &g in letters.iter().rev() {
            acc = self.left_mul_generator_elem(g, &acc)?;
        }
        Ok(acc)
    }

    /// Rewrites a free-algebra element to its PBW normal form.
    pub fn normal_form(&self, x: &FreeElement) -> Result<PbwElement, TermLimitExceeded> {
        let mut out = PbwElement::zero();
        for (w, c) in x.terms() {
            out.add_scaled(c, &self.word_normal_form(w.letters())?);
            self.check_size(out.len())?;
        }
        Ok(out)
    }

    /// Normal form of `xy - yx`.
    pub fn commutator(&self, x: &PbwElement, y: &PbwElement) -> Result<PbwElement, TermLimitExceeded> {
        Ok(self.mul(x, y)?.minus(&self.mul(y, x)?))
    }

    /// Treats a PBW element as a free-algebra element (each ordered
    /// monomial read as a word).
    pub fn to_free(&self, x: &PbwElement) -> FreeElement {
        let terms = x.map_keys(|m| m.to_word(self.alphabet()));
        FreeElement::from_terms(self.alphabet().clone(), terms)
    }

    /// Resolves every overlap `g_k g_j g_i`, `k > j > i`, both ways.
    pub fn confluence_check(&self) -> Result<ConfluenceReport, TermLimitExceeded> {
        self.confluence
            .get_or_init(|| self.compute_confluence())
            .clone()
    }

    fn compute_confluence(&self) -> Result<ConfluenceReport, TermLimitExceeded> {
        let n = self.num_generators();
        let mut failures = Vec::new();
        let mut checked = 0;
        for k in 0..n {
            for j in 0..k {
                for i in 0..j {
                    checked += 1;
                    let residual = self.overlap_residual(k, j, i)?;
                    if !residual.is_zero() {
                        failures.push(Ambiguity {
                            triple: (k, j, i),
                            residual,
                        });
                    }
                }
            }
        }
        Ok(ConfluenceReport {
            triples_checked: checked,
            failures,
        })
    }

    fn overlap_residual(&self, k: usize, j: usize, i: usize) -> Result<PbwElement, TermLimitExceeded> {
        let kj = self.presentation.relation(k, j);
        let ji = self.presentation.relation(j, i);
        let gi = self.presentation.generator(i);
        let gk = self.presentation.generator(k);

        // (g_k g_j) g_i -> q_kj g_j g_k g_i + tail_kj g_i
        let mut left = self.word_normal_form(&[j, k, i])?.scaled(&kj.q);
        for (t, c) in &kj.tail {
            left.add_scaled(c, &self.mul_monomials(t, &gi)?);
        }
        // g_k (g_j g_i) -> q_ji g_k g_i g_j + g_k tail_ji
        let mut right = self.word_normal_form(&[k, i, j])?.scaled(&ji.q);
        for (t, c) in &ji.tail {
            right.add_scaled(c, &self.mul_monomials(&gk, t)?);
        }
        Ok(left.minus(&right))
    }

    /// Fails with [`PbwError::NonConfluent`] on the first unresolved overlap.
    pub fn certify_confluence(&self) -> Result<(), PbwError> {
        let report = self.confluence_check()?;
        match report.failures.first() {
            None => Ok(()),
            Some(a) => Err(PbwError::NonConfluent {
                triple: self.render_triple(a.triple),
                residual: self.render(&a.residual),
            }),
        }
    }

    pub fn render_triple(&self, (k, j, i): (usize, usize, usize)) -> String {
        let al = self.alphabet();
        format!("{}{}{}", al.name(k), al.name(j), al.name(i))
    }

    /// All ordered monomials of weight at most `max_weight` (the empty
    /// monomial included), in canonical order.
    pub fn enumerate_basis(&self, max_weight: u32) -> Vec<Monomial> {
        enumerate_monomials(self.alphabet(), max_weight)
    }
}

pub(crate) fn enumerate_monomials(alphabet: &Alphabet, max_weight: u32) -> Vec<Monomial> {
    fn go(al: &Alphabet, idx: usize, budget: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == al.len() {
            out.push(Monomial::from_exponents(al, exps.clone()));
            return;
        }
        let w = al.weight(idx);
        let mut e = 0;
        while e * w <= budget {
            exps[idx] = e;
            go(al, idx + 1, budget - e * w, exps, out);
            e += 1;
        }
        exps[idx] = 0;
    }
    let mut out = Vec::new();
    go(alphabet, 0, max_weight, &mut vec![0; alphabet.len()], &mut out);
    out.sort();
    out
}
