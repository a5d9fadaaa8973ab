//! Coproduct, counit and antipode on a PBW presentation.
//!
//! Only the connected shape is supported: the counit kills every generator
//! and each generator has
//!
//! ```text
//! Δ(g) = 1⊗g + g⊗1 + δ(g)
//! ```
//!
//! where both tensor factors of every term of `δ(g)` lie in the augmentation
//! ideal and are strictly lighter than `g`. `Δ` is extended multiplicatively;
//! each component of a product in the tensor square is normal-formed as soon
//! as it is formed.

use std::collections::HashMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::TermLimitExceeded;
use crate::freealg::{Alphabet, Rational};
use crate::linear::{render_terms, LinComb};
use crate::pbw::{render_element, Algebra, Monomial, PbwElement, ValidationError};

pub type TensorElement = LinComb<(Monomial, Monomial)>;
pub type Tensor3Element = LinComb<(Monomial, Monomial, Monomial)>;

pub fn tensor(x: &PbwElement, y: &PbwElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for (u, a) in x {
        for (v, b) in y {
            out.add_term((u.clone(), v.clone()), a * b);
        }
    }
    out
}

fn render_factor(m: &Monomial, alphabet: &Alphabet) -> String {
    if m.is_one() {
        "1".to_string()
    } else {
        m.render(alphabet)
    }
}

/// `a (x) c - c (x) a`.
pub fn render_tensor(t: &TensorElement, alphabet: &Alphabet) -> String {
    render_terms(t.iter().map(|((u, v), c)| {
        (
            format!("{} (x) {}", render_factor(u, alphabet), render_factor(v, alphabet)),
            c,
        )
    }))
}

pub fn render_tensor3(t: &Tensor3Element, alphabet: &Alphabet) -> String {
    render_terms(t.iter().map(|((u, v, w), c)| {
        (
            format!(
                "{} (x) {} (x) {}",
                render_factor(u, alphabet),
                render_factor(v, alphabet),
                render_factor(w, alphabet)
            ),
            c,
        )
    }))
}

/// Reduced coproducts `δ(g)` of the generators.
#[derive(Debug, Clone, PartialEq)]
pub struct CoproductData {
    reduced: Vec<TensorElement>,
}

impl CoproductData {
    /// Every generator primitive.
    pub fn primitive(num_generators: usize) -> Self {
        Self {
            reduced: vec![TensorElement::zero(); num_generators],
        }
    }

    pub fn set_reduced(&mut self, generator: usize, delta: TensorElement) {
        self.reduced[generator] = delta;
    }

    pub fn reduced(&self, generator: usize) -> &TensorElement {
        &self.reduced[generator]
    }

    pub fn len(&self) -> usize {
        self.reduced.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reduced.is_empty()
    }

    pub(crate) fn map_monomials(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Self {
        Self {
            reduced: self
                .reduced
                .iter()
                .map(|t| t.map_keys(|(u, v)| (f(u), f(v))))
                .collect(),
        }
    }

    pub(crate) fn validate(&self, alphabet: &Alphabet) -> Result<(), ValidationError> {
        if self.reduced.len() != alphabet.len() {
            return Err(ValidationError::CoproductArity {
                found: self.reduced.len(),
                expected: alphabet.len(),
            });
        }
        for (g, delta) in self.reduced.iter().enumerate() {
            let weight = alphabet.weight(g);
            for (u, v) in delta.keys() {
                if u.is_one() || v.is_one() {
                    return Err(ValidationError::CoproductConstantFactor {
                        generator: alphabet.name(g).to_string(),
                    });
                }
                if u.weight() >= weight || v.weight() >= weight {
                    return Err(ValidationError::CoproductFactorTooHeavy {
                        generator: alphabet.name(g).to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("the presentation has no coproduct attached")]
    NoCoproductAttached,
    #[error("relation {relation} has q != 1; no Hopf structure is admitted")]
    QSkewRejected { relation: String },
    #[error("element has a nonzero constant term")]
    NonzeroConstantTerm,
    #[error("{side} antipode axiom fails on {monomial}: residual {residual}")]
    AxiomFailure {
        monomial: String,
        side: &'static str,
        residual: String,
    },
    #[error("antipode recursion for {generator} needs a generator not yet solved")]
    Unsolvable { generator: String },
    #[error(transparent)]
    TermLimit(#[from] TermLimitExceeded),
}

/// Residual of `Δ′(r)` for one defining relation `r`.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationCheck {
    pub label: String,
    pub hi: usize,
    pub lo: usize,
    pub residual: TensorElement,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.residual.is_zero())
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.residual.is_zero())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorCoassociativity {
    pub generator: usize,
    /// `(δ⊗id)δ(g)`
    pub lhs: Tensor3Element,
    /// `(id⊗δ)δ(g)`
    pub rhs: Tensor3Element,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoassociativityReport {
    pub generators: Vec<GeneratorCoassociativity>,
    pub sampled_monomials: usize,
    pub sample_failures: Vec<Monomial>,
}

impl CoassociativityReport {
    pub fn passed(&self) -> bool {
        self.sample_failures.is_empty() && self.generators.iter().all(|g| g.lhs == g.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounitReport {
    pub relation_failures: Vec<String>,
    pub generator_failures: Vec<String>,
}

impl CounitReport {
    pub fn passed(&self) -> bool {
        self.relation_failures.is_empty() && self.generator_failures.is_empty()
    }
}

/// `S(g)` for every generator, with the weight up to which the two-sided
/// antipode axiom was verified on basis monomials.
#[derive(Debug, Clone, PartialEq)]
pub struct AntipodeTable {
    pub images: Vec<PbwElement>,
    pub verified_weight: u32,
    pub verified_monomials: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvolutionReport {
    pub weight_bound: u32,
    pub checked: usize,
    pub failures: Vec<String>,
}

impl InvolutionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Applies an antipode anti-multiplicatively, caching monomial images.
pub struct Antipode<'a> {
    alg: &'a Algebra,
    images: Vec<Option<PbwElement>>,
    cache: HashMap<Monomial, PbwElement>,
}

impl<'a> Antipode<'a> {
    pub fn new(alg: &'a Algebra, table: &AntipodeTable) -> Self {
        Self {
            alg,
            images: table.images.iter().cloned().map(Some).collect(),
            cache: HashMap::new(),
        }
    }

    fn partial(alg: &'a Algebra) -> Self {
        Self {
            alg,
            images: vec![None; alg.num_generators()],
            cache: HashMap::new(),
        }
    }

    /// `S(g_1 ... g_k) = S(g_k) ... S(g_1)`.
    pub fn apply_monomial(&mut self, m: &Monomial) -> Result<PbwElement, HopfError> {
        let Some(g) = m.first_letter() else {
            return Ok(self.alg.one());
        };
        if let Some(hit) = self.cache.get(m) {
            return Ok(hit.clone());
        }
        let image_g = self.images[g].clone().ok_or_else(|| HopfError::Unsolvable {
            generator: self.alg.alphabet().name(g).to_string(),
        })?;
        let mut exps = m.exponents().to_vec();
        exps[g] -= 1;
        let rest = Monomial::from_exponents(self.alg.alphabet(), exps);
        let image_rest = self.apply_monomial(&rest)?;
        let out = self.alg.mul(&image_rest, &image_g)?;
        self.cache.insert(m.clone(), out.clone());
        Ok(out)
    }

    pub fn apply(&mut self, x: &PbwElement) -> Result<PbwElement, HopfError> {
        let mut out = PbwElement::zero();
        for (m, c) in x {
            out.add_scaled(c, &self.apply_monomial(m)?);
        }
        Ok(out)
    }
}

impl Algebra {
    /// The coproduct data, provided it exists and every relation has `q = 1`.
    pub fn hopf_data(&self) -> Result<&CoproductData, HopfError> {
        let data = self
            .presentation()
            .coproduct()
            .ok_or(HopfError::NoCoproductAttached)?;
        if let Some(rel) = self
            .presentation()
            .explicit_relations()
            .find(|r| !r.q.is_one())
        {
            return Err(HopfError::QSkewRejected {
                relation: rel.label(self.alphabet()),
            });
        }
        Ok(data)
    }

    pub fn render_tensor(&self, t: &TensorElement) -> String {
        render_tensor(t, self.alphabet())
    }

    pub fn render_tensor3(&self, t: &Tensor3Element) -> String {
        render_tensor3(t, self.alphabet())
    }

    /// Constant-term coefficient; the counit kills every generator.
    pub fn counit(&self, x: &PbwElement) -> Rational {
        x.coeff(&Monomial::one(self.num_generators()))
    }

    /// Product in the tensor square, componentwise with normal forms.
    pub fn tensor_mul(&self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement, TermLimitExceeded> {
        let mut out = TensorElement::zero();
        for ((u1, v1), a) in x {
            for ((u2, v2), b) in y {
                let left = self.mul_monomials(u1, u2)?;
                let right = self.mul_monomials(v1, v2)?;
                let ab = a * b;
                for (l, c) in &left {
                    let lc = &ab * c;
                    for (r, d) in &right {
                        out.add_term((l.clone(), r.clone()), &lc * d);
                    }
                }
            }
            self.check_size(out.len())?;
        }
        Ok(out)
    }

    pub fn coproduct_generator(&self, g: usize) -> Result<TensorElement, HopfError> {
        let data = self.hopf_data()?;
        let one = Monomial::one(self.num_generators());
        let gm = self.presentation().generator(g);
        let mut out = data.reduced(g).clone();
        out.add_term((one.clone(), gm.clone()), Rational::one());
        out.add_term((gm, one), Rational::one());
        Ok(out)
    }

    pub fn coproduct_monomial(&self, m: &Monomial) -> Result<TensorElement, HopfError> {
        self.hopf_data()?;
        let Some(g) = m.first_letter() else {
            return Ok(TensorElement::basis((m.clone(), m.clone())));
        };
        if let Some(hit) = self.coproduct_cache.lock().unwrap().get(m) {
            return Ok(hit.clone());
        }
        let mut exps = m.exponents().to_vec();
        exps[g] -= 1;
        let rest = Monomial::from_exponents(self.alphabet(), exps);
        let out = self.tensor_mul(&self.coproduct_generator(g)?, &self.coproduct_monomial(&rest)?)?;
        self.coproduct_cache
            .lock()
            .unwrap()
            .insert(m.clone(), out.clone());
        Ok(out)
    }

    pub fn coproduct(&self, x: &PbwElement) -> Result<TensorElement, HopfError> {
        let mut out = TensorElement::zero();
        for (m, c) in x {
            out.add_scaled(c, &self.coproduct_monomial(m)?);
        }
        self.check_size(out.len())?;
        Ok(out)
    }

    /// `δ(x) = Δ(x) - x⊗1 - 1⊗x`.
    pub fn reduced_coproduct(&self, x: &PbwElement) -> Result<TensorElement, HopfError> {
        let one = self.one();
        let mut out = self.coproduct(x)?;
        out.sub_assign(&tensor(x, &one));
        out.sub_assign(&tensor(&one, x));
        Ok(out)
    }

    pub fn is_primitive(&self, x: &PbwElement) -> Result<bool, HopfError> {
        if !self.counit(x).is_zero() {
            return Err(HopfError::NonzeroConstantTerm);
        }
        Ok(self.reduced_coproduct(x)?.is_zero())
    }

    /// For every pair `hi > lo`, computes
    /// `Δ(g_hi)Δ(g_lo) - q Δ(g_lo)Δ(g_hi) - Δ(tail)` in the tensor square of
    /// normal forms. This vanishes exactly when `Δ′` maps the relation into
    /// `I⊗F + F⊗I`.
    pub fn check_relation_compatibility(&self) -> Result<RelationReport, HopfError> {
        self.hopf_data()?;
        let mut checks = Vec::new();
        for rel in self.presentation().all_relations() {
            let dh = self.coproduct_generator(rel.hi)?;
            let dl = self.coproduct_generator(rel.lo)?;
            let mut residual = self.tensor_mul(&dh, &dl)?;
            residual.add_scaled(&-rel.q.clone(), &self.tensor_mul(&dl, &dh)?);
            residual.sub_assign(&self.coproduct(&rel.tail)?);
            // match the sign of the label, which reads `[lo,hi] + tail` when q = 1
            if rel.q.is_one() {
                residual = residual.negated();
            }
            checks.push(RelationCheck {
                label: rel.label(self.alphabet()),
                hi: rel.hi,
                lo: rel.lo,
                residual,
            });
        }
        Ok(RelationReport { checks })
    }

    fn delta_left(&self, t: &TensorElement) -> Result<Tensor3Element, HopfError> {
        let mut out = Tensor3Element::zero();
        for ((u, v), c) in t {
            for ((x, y), d) in &self.reduced_coproduct(&PbwElement::basis(u.clone()))? {
                out.add_term((x.clone(), y.clone(), v.clone()), c * d);
            }
        }
        Ok(out)
    }

    fn delta_right(&self, t: &TensorElement) -> Result<Tensor3Element, HopfError> {
        let mut out = Tensor3Element::zero();
        for ((u, v), c) in t {
            for ((x, y), d) in &self.reduced_coproduct(&PbwElement::basis(v.clone()))? {
                out.add_term((u.clone(), x.clone(), y.clone()), c * d);
            }
        }
        Ok(out)
    }

    fn full_delta_left(&self, t: &TensorElement) -> Result<Tensor3Element, HopfError> {
        let mut out = Tensor3Element::zero();
        for ((u, v), c) in t {
            for ((x, y), d) in &self.coproduct_monomial(u)? {
                out.add_term((x.clone(), y.clone(), v.clone()), c * d);
            }
        }
        Ok(out)
    }

    fn full_delta_right(&self, t: &TensorElement) -> Result<Tensor3Element, HopfError> {
        let mut out = Tensor3Element::zero();
        for ((u, v), c) in t {
            for ((x, y), d) in &self.coproduct_monomial(v)? {
                out.add_term((u.clone(), x.clone(), y.clone()), c * d);
            }
        }
        Ok(out)
    }

    /// `(δ⊗id)δ(g) = (id⊗δ)δ(g)` for every generator, plus
    /// `(Δ⊗id)Δ = (id⊗Δ)Δ` on all basis monomials of weight at most
    /// `sample_weight`.
    pub fn check_coassociativity(&self, sample_weight: u32) -> Result<CoassociativityReport, HopfError> {
        let data = self.hopf_data()?;
        let mut generators = Vec::new();
        for g in 0..self.num_generators() {
            let delta = data.reduced(g);
            generators.push(GeneratorCoassociativity {
                generator: g,
                lhs: self.delta_left(delta)?,
                rhs: self.delta_right(delta)?,
            });
        }
        let sample = self.enumerate_basis(sample_weight);
        let mut sample_failures = Vec::new();
        for m in &sample {
            let d = self.coproduct_monomial(m)?;
            if self.full_delta_left(&d)? != self.full_delta_right(&d)? {
                sample_failures.push(m.clone());
            }
        }
        Ok(CoassociativityReport {
            generators,
            sampled_monomials: sample.len(),
            sample_failures,
        })
    }

    /// The counit kills every relation, and
    /// `(ε⊗id)Δ(g) = g = (id⊗ε)Δ(g)` on generators.
    pub fn check_counit(&self) -> Result<CounitReport, HopfError> {
        self.hopf_data()?;
        let one = Monomial::one(self.num_generators());
        let mut relation_failures = Vec::new();
        for rel in self.presentation().all_relations() {
            // Constant term of g_hi g_lo - q g_lo g_hi - tail.
            if !rel.tail.coeff(&one).is_zero() {
                relation_failures.push(rel.label(self.alphabet()));
            }
        }
        let mut generator_failures = Vec::new();
        for g in 0..self.num_generators() {
            let delta = self.coproduct_generator(g)?;
            let mut left = PbwElement::zero();
            let mut right = PbwElement::zero();
            for ((u, v), c) in &delta {
                if u.is_one() {
                    left.add_term(v.clone(), c.clone());
                }
                if v.is_one() {
                    right.add_term(u.clone(), c.clone());
                }
            }
            let gen = self.generator(g);
            if left != gen || right != gen {
                generator_failures.push(self.alphabet().name(g).to_string());
            }
        }
        Ok(CounitReport {
            relation_failures,
            generator_failures,
        })
    }

    /// Solves `m(S⊗id)Δ(g) = 0` generator by generator, lightest first:
    /// `S(g) = -g - Σ S(u_i) v_i` over `δ(g) = Σ u_i⊗v_i`. Then verifies
    /// both antipode axioms on every basis monomial of weight at most
    /// `verify_weight`.
    pub fn solve_antipode(&self, verify_weight: u32) -> Result<AntipodeTable, HopfError> {
        let data = self.hopf_data()?;
        let n = self.num_generators();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&g| (self.alphabet().weight(g), g));

        let mut s = Antipode::partial(self);
        for g in order {
            let mut image = self.generator(g).negated();
            for ((u, v), c) in data.reduced(g) {
                let su = s.apply_monomial(u).map_err(|e| match e {
                    HopfError::Unsolvable { .. } => HopfError::Unsolvable {
                        generator: self.alphabet().name(g).to_string(),
                    },
                    other => other,
                })?;
                let term = self.mul(&su, &PbwElement::basis(v.clone()))?;
                image.add_scaled(&-c.clone(), &term);
            }
            s.images[g] = Some(image);
        }
        let images: Vec<PbwElement> = s.images.iter().map(|x| x.clone().unwrap()).collect();

        let basis = self.enumerate_basis(verify_weight);
        for m in &basis {
            let delta = self.coproduct_monomial(m)?;
            let mut left = PbwElement::zero();
            let mut right = PbwElement::zero();
            for ((u, v), c) in &delta {
                let su = s.apply_monomial(u)?;
                left.add_scaled(c, &self.mul(&su, &PbwElement::basis(v.clone()))?);
                let sv = s.apply_monomial(v)?;
                right.add_scaled(c, &self.mul(&PbwElement::basis(u.clone()), &sv)?);
            }
            let expected = if m.is_one() { self.one() } else { PbwElement::zero() };
            for (side, value) in [("left", left), ("right", right)] {
                if value != expected {
                    return Err(HopfError::AxiomFailure {
                        monomial: render_factor(m, self.alphabet()),
                        side,
                        residual: self.render(&value.minus(&expected)),
                    });
                }
            }
        }
        Ok(AntipodeTable {
            images,
            verified_weight: verify_weight,
            verified_monomials: basis.len(),
        })
    }

    /// `S(S(x)) = x` on basis monomials of weight at most `weight_bound`.
    pub fn check_involutive_antipode(
        &self,
        table: &AntipodeTable,
        weight_bound: u32,
    ) -> Result<InvolutionReport, HopfError> {
        self.hopf_data()?;
        let mut s = Antipode::new(self, table);
        let basis = self.enumerate_basis(weight_bound);
        let mut failures = Vec::new();
        for m in &basis {
            let once = s.apply_monomial(m)?;
            let twice = s.apply(&once)?;
            if twice != PbwElement::basis(m.clone()) {
                failures.push(render_factor(m, self.alphabet()));
            }
        }
        Ok(InvolutionReport {
            weight_bound,
            checked: basis.len(),
            failures,
        })
    }

    pub fn render_antipode(&self, table: &AntipodeTable) -> Vec<(String, String)> {
        table
            .images
            .iter()
            .enumerate()
            .map(|(g, img)| {
                (
                    self.alphabet().name(g).to_string(),
                    render_element(img, self.alphabet()),
                )
            })
            .collect()
    }
}
