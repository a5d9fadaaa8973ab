//! Exact linear algebra over windows of PBW monomials: spans, kernels,
//! truncation quotients `A⁺/(A⁺)^k`, their centres, primitive spaces,
//! coradical levels and the signature.
//!
//! Echelon rows are keyed by their largest coordinate in the canonical
//! monomial order. Because that order starts with weight, the rows whose
//! pivot has weight `<= w` span the part of the subspace of weight `<= w`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::error::TermLimitExceeded;
use crate::freealg::{Alphabet, Rational};
use crate::grading::{factor_series, product_series};
use crate::hopf::HopfError;
use crate::linear::{render_terms, LinComb};
use crate::pbw::{enumerate_monomials, Algebra, Monomial, PbwElement};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("subspaces live in different coordinate windows")]
    AmbientMismatch,
    #[error("monomial {monomial} lies outside the weight window")]
    OutsideWindow { monomial: String },
    #[error("weight bound {given} is too small: monomials of length < {power} reach weight {needed}")]
    WindowTooSmall { given: u32, needed: u32, power: u32 },
    #[error("the presentation is not confluent at {triple}")]
    NotConfluent { triple: String },
    #[error("power must be at least 2, got {0}")]
    BadPower(u32),
    #[error("truncation product leaves the quotient basis")]
    NotClosed,
    #[error("centre vector {vector} fails to commute with {with}")]
    CenterVerification { vector: String, with: String },
    #[error(transparent)]
    Hopf(#[from] HopfError),
    #[error(transparent)]
    TermLimit(#[from] TermLimitExceeded),
}

/// Row-reduced basis of a span of sparse vectors keyed by `K`.
#[derive(Clone, PartialEq, Eq)]
pub struct Echelon<K: Ord> {
    rows: BTreeMap<K, LinComb<K>>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Self {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone + std::fmt::Debug> std::fmt::Debug for Echelon<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.rows.values()).finish()
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_vectors<'a>(vectors: impl IntoIterator<Item = &'a LinComb<K>>) -> Self
    where
        K: 'a,
    {
        let mut e = Self::new();
        for v in vectors {
            e.insert(v);
        }
        e
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Rows in increasing pivot order; each has pivot coefficient 1 and no
    /// other row's pivot in its support.
    pub fn rows(&self) -> impl Iterator<Item = (&K, &LinComb<K>)> {
        self.rows.iter()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &K> {
        self.rows.keys()
    }

    pub fn is_pivot(&self, k: &K) -> bool {
        self.rows.contains_key(k)
    }

    /// Remainder of `v` after eliminating every pivot coordinate.
    pub fn reduce(&self, v: &LinComb<K>) -> LinComb<K> {
        let mut rest = v.clone();
        let mut out = LinComb::zero();
        while let Some((k, c)) = rest.leading().map(|(k, c)| (k.clone(), c.clone())) {
            match self.rows.get(&k) {
                Some(row) => rest.add_scaled(&-c, row),
                None => {
                    rest.add_term(k.clone(), -c.clone());
                    out.add_term(k, c);
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &LinComb<K>) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.leading().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let r = r.scaled(&(Rational::one() / lead));
        for row in self.rows.values_mut() {
            let c = row.coeff(&pivot);
            if !c.is_zero() {
                row.add_scaled(&-c, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.rows.values().all(|r| other.contains(r))
    }
}

/// Kernel of the linear map sending the basis vector `d` to `image(d)`.
pub fn kernel<D, K, E>(
    domain: &[D],
    mut image: impl FnMut(&D) -> Result<LinComb<K>, E>,
) -> Result<Echelon<D>, E>
where
    D: Ord + Clone,
    K: Ord + Clone,
{
    // Each row carries the domain combination that produced it.
    let mut rows: BTreeMap<K, (LinComb<K>, LinComb<D>)> = BTreeMap::new();
    let mut out = Echelon::new();
    for d in domain {
        let mut v = image(d)?;
        let mut combo = LinComb::basis(d.clone());
        let mut independent = false;
        while let Some((k, c)) = v.leading().map(|(k, c)| (k.clone(), c.clone())) {
            match rows.get(&k) {
                Some((row, row_combo)) => {
                    let s = -c / row.coeff(&k);
                    v.add_scaled(&s, row);
                    combo.add_scaled(&s, row_combo);
                }
                None => {
                    rows.insert(k, (v, combo.clone()));
                    independent = true;
                    break;
                }
            }
        }
        if !independent {
            out.insert(&combo);
        }
    }
    Ok(out)
}

/// Coordinates on the monomials of weight `<= W`, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialIndex {
    alphabet: Arc<Alphabet>,
    weight_bound: u32,
    monomials: Vec<Monomial>,
    positions: HashMap<Monomial, usize>,
}

impl MonomialIndex {
    pub fn new(alphabet: &Arc<Alphabet>, weight_bound: u32) -> Self {
        let monomials = enumerate_monomials(alphabet, weight_bound);
        let positions = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Self {
            alphabet: alphabet.clone(),
            weight_bound,
            monomials,
            positions,
        }
    }

    pub fn weight_bound(&self) -> u32 {
        self.weight_bound
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// The nonconstant monomials of the window.
    pub fn augmentation(&self) -> &[Monomial] {
        &self.monomials[1..]
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.positions.get(m).copied()
    }

    pub fn check(&self, v: &PbwElement) -> Result<(), SubspaceError> {
        match v.keys().find(|m| !self.positions.contains_key(*m)) {
            None => Ok(()),
            Some(m) => Err(SubspaceError::OutsideWindow {
                monomial: m.render(&self.alphabet),
            }),
        }
    }
}

/// Rescales so the leading term has coefficient 1, e.g. `-1/3 c^3 + d`.
pub fn display_normalized(v: &PbwElement) -> PbwElement {
    match v.iter().next_back() {
        Some((_, c)) => v.scaled(&(Rational::one() / c)),
        None => v.clone(),
    }
}

/// A subspace of the span of a [`MonomialIndex`].
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient: Arc<MonomialIndex>,
    echelon: Echelon<Monomial>,
}

impl Subspace {
    pub fn zero(ambient: Arc<MonomialIndex>) -> Self {
        Self {
            ambient,
            echelon: Echelon::new(),
        }
    }

    pub fn span<'a>(
        ambient: Arc<MonomialIndex>,
        vectors: impl IntoIterator<Item = &'a PbwElement>,
    ) -> Result<Self, SubspaceError> {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    fn from_echelon(ambient: Arc<MonomialIndex>, echelon: Echelon<Monomial>) -> Self {
        Self { ambient, echelon }
    }

    pub fn ambient(&self) -> &Arc<MonomialIndex> {
        &self.ambient
    }

    pub fn echelon(&self) -> &Echelon<Monomial> {
        &self.echelon
    }

    pub fn dim(&self) -> usize {
        self.echelon.dim()
    }

    pub fn insert(&mut self, v: &PbwElement) -> Result<bool, SubspaceError> {
        self.ambient.check(v)?;
        Ok(self.echelon.insert(v))
    }

    pub fn member(&self, v: &PbwElement) -> Result<bool, SubspaceError> {
        self.ambient.check(v)?;
        Ok(self.echelon.contains(v))
    }

    pub fn reduce(&self, v: &PbwElement) -> PbwElement {
        self.echelon.reduce(v)
    }

    fn same_ambient(&self, other: &Self) -> Result<(), SubspaceError> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) || self.ambient == other.ambient {
            Ok(())
        } else {
            Err(SubspaceError::AmbientMismatch)
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self, SubspaceError> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (_, r) in other.echelon.rows() {
            out.echelon.insert(r);
        }
        Ok(out)
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, SubspaceError> {
        self.same_ambient(other)?;
        Ok(self.echelon.is_subspace_of(&other.echelon))
    }

    /// Basis in pivot order, each vector rescaled for display.
    pub fn basis(&self) -> Vec<PbwElement> {
        self.echelon
            .rows()
            .map(|(_, r)| display_normalized(r))
            .collect()
    }

    /// Basis vectors whose leading monomial has weight `<= w`; they span the
    /// part of the subspace in that weight range.
    pub fn basis_up_to_weight(&self, w: u32) -> impl Iterator<Item = &PbwElement> {
        self.echelon
            .rows()
            .filter(move |(p, _)| p.weight() <= w)
            .map(|(_, r)| r)
    }

    pub fn render_basis(&self) -> Vec<String> {
        self.basis()
            .iter()
            .map(|v| render_terms(v.iter().map(|(m, c)| (m.render(self.ambient.alphabet()), c))))
            .collect()
    }
}

fn require_confluent(alg: &Algebra) -> Result<(), SubspaceError> {
    let report = alg.confluence_check()?;
    match report.failures.first() {
        None => Ok(()),
        Some(a) => Err(SubspaceError::NotConfluent {
            triple: alg.render_triple(a.triple),
        }),
    }
}

/// Span of the normal forms of all words of length `>= k` and weight
/// `<= W`. Within the weight window this is `(A⁺)^k`.
pub fn power_ideal_span(alg: &Algebra, k: u32, weight_bound: u32) -> Result<Subspace, SubspaceError> {
    require_confluent(alg)?;
    let index = Arc::new(MonomialIndex::new(alg.alphabet(), weight_bound));
    let mut span = Subspace::zero(index);
    let al = alg.alphabet();
    // Depth-first over words, built right to left so each step is one
    // left multiplication by a generator.
    let mut stack: Vec<(PbwElement, u32, u32)> = vec![(alg.one(), 0, 0)];
    while let Some((nf, len, weight)) = stack.pop() {
        if len >= k {
            span.insert(&nf)?;
        }
        for g in 0..al.len() {
            let w = weight + al.weight(g);
            if w <= weight_bound {
                stack.push((alg.left_mul_generator_elem(g, &nf)?, len + 1, w));
            }
        }
    }
    Ok(span)
}

/// `A⁺/(A⁺)^k` on the monomials of weight `<= W` not absorbed by the power.
#[derive(Debug, Clone)]
pub struct TruncationAlgebra {
    alphabet: Arc<Alphabet>,
    pub power: u32,
    pub weight_bound: u32,
    basis: Vec<Monomial>,
    /// `table[i][j]` = `u_i u_j` in basis coordinates.
    table: Vec<Vec<LinComb<usize>>>,
    generators: Vec<LinComb<usize>>,
}

pub type TruncVector = LinComb<usize>;

impl TruncationAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn render_monomial(&self, i: usize) -> String {
        self.basis[i].render(&self.alphabet)
    }

    pub fn render_basis(&self) -> Vec<String> {
        (0..self.dim()).map(|i| self.render_monomial(i)).collect()
    }

    pub fn render_vector(&self, v: &TruncVector) -> String {
        render_terms(v.iter().map(|(i, c)| (self.render_monomial(*i), c)))
    }

    /// Images of the generators.
    pub fn generator_images(&self) -> &[TruncVector] {
        &self.generators
    }

    pub fn product(&self, i: usize, j: usize) -> &TruncVector {
        &self.table[i][j]
    }

    pub fn mul(&self, x: &TruncVector, y: &TruncVector) -> TruncVector {
        let mut out = TruncVector::zero();
        for (i, a) in x {
            for (j, b) in y {
                out.add_scaled(&(a * b), &self.table[*i][*j]);
            }
        }
        out
    }

    pub fn commutator(&self, x: &TruncVector, y: &TruncVector) -> TruncVector {
        self.mul(x, y).minus(&self.mul(y, x))
    }

    /// `(u_i u_j) u_l = u_i (u_j u_l)` on every basis triple.
    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|l| {
                    let e = |x: usize| TruncVector::basis(x);
                    self.mul(&self.table[i][j], &e(l)) == self.mul(&e(i), &self.table[j][l])
                })
            })
        })
    }
}

/// Builds `A⁺/(A⁺)^k` exactly. The window must hold every monomial of
/// length `< k`, which `(k-1)·max_weight <= W` guarantees.
pub fn truncation_algebra(alg: &Algebra, k: u32, weight_bound: u32) -> Result<TruncationAlgebra, SubspaceError> {
    if k < 2 {
        return Err(SubspaceError::BadPower(k));
    }
    let al = alg.alphabet().clone();
    let needed = (k - 1) * al.max_weight();
    if needed > weight_bound {
        return Err(SubspaceError::WindowTooSmall {
            given: weight_bound,
            needed,
            power: k,
        });
    }
    let ideal = power_ideal_span(alg, k, weight_bound)?;
    let basis: Vec<Monomial> = ideal
        .ambient()
        .augmentation()
        .iter()
        .filter(|m| !ideal.echelon().is_pivot(m))
        .cloned()
        .collect();
    let pos: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let coords = |v: &PbwElement| -> Result<TruncVector, SubspaceError> {
        let r = ideal.reduce(v);
        let mut out = TruncVector::zero();
        for (m, c) in &r {
            out.add_term(*pos.get(m).ok_or(SubspaceError::NotClosed)?, c.clone());
        }
        Ok(out)
    };
    let mut table = Vec::with_capacity(basis.len());
    for u in &basis {
        let mut row = Vec::with_capacity(basis.len());
        for v in &basis {
            if u.degree() + v.degree() >= k {
                row.push(TruncVector::zero());
            } else {
                row.push(coords(&alg.mul_monomials(u, v)?)?);
            }
        }
        table.push(row);
    }
    let generators = (0..al.len())
        .map(|g| coords(&alg.generator(g)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TruncationAlgebra {
        alphabet: al,
        power: k,
        weight_bound,
        basis,
        table,
        generators,
    })
}

#[derive(Debug, Clone)]
pub struct CenterReport {
    pub dim: usize,
    pub basis: Echelon<usize>,
}

/// Centre of a truncation: the common kernel of `v ↦ [v, g]` over the
/// generator images, then checked against every basis element.
pub fn center_dim(t: &TruncationAlgebra, generator_images: &[TruncVector]) -> Result<CenterReport, SubspaceError> {
    let domain: Vec<usize> = (0..t.dim()).collect();
    let basis = kernel(&domain, |&i| -> Result<LinComb<(usize, usize)>, SubspaceError> {
        let e = TruncVector::basis(i);
        let mut out = LinComb::zero();
        for (g, img) in generator_images.iter().enumerate() {
            for (j, c) in &t.commutator(&e, img) {
                out.add_term((g, *j), c.clone());
            }
        }
        Ok(out)
    })?;
    for (_, v) in basis.rows() {
        for j in 0..t.dim() {
            if !t.commutator(v, &TruncVector::basis(j)).is_zero() {
                return Err(SubspaceError::CenterVerification {
                    vector: t.render_vector(v),
                    with: t.render_monomial(j),
                });
            }
        }
    }
    Ok(CenterReport {
        dim: basis.dim(),
        basis,
    })
}

fn hopf_ready(alg: &Algebra) -> Result<(), SubspaceError> {
    require_confluent(alg)?;
    alg.hopf_data()?;
    Ok(())
}

/// Kernel of `δ` on the nonconstant monomials of weight `<= W`.
pub fn primitive_space(alg: &Algebra, weight_bound: u32) -> Result<Subspace, SubspaceError> {
    hopf_ready(alg)?;
    let index = Arc::new(MonomialIndex::new(alg.alphabet(), weight_bound));
    let zero = Subspace::zero(index.clone());
    next_level(alg, &index, &zero)
}

/// `{x : δ(x) ∈ A⁺ ⊗ prev}` inside the window.
fn next_level(alg: &Algebra, index: &Arc<MonomialIndex>, prev: &Subspace) -> Result<Subspace, SubspaceError> {
    let ker = kernel(index.augmentation(), |m| -> Result<LinComb<(Monomial, Monomial)>, SubspaceError> {
        let delta = alg.reduced_coproduct(&PbwElement::basis(m.clone()))?;
        // Group by left factor, reduce each right factor modulo `prev`.
        let mut by_left: BTreeMap<&Monomial, PbwElement> = BTreeMap::new();
        for ((u, v), c) in &delta {
            by_left.entry(u).or_default().add_term(v.clone(), c.clone());
        }
        let mut out = LinComb::zero();
        for (u, right) in by_left {
            for (v, c) in &prev.reduce(&right) {
                out.add_term((u.clone(), v.clone()), c.clone());
            }
        }
        Ok(out)
    })?;
    Ok(Subspace::from_echelon(index.clone(), ker))
}

/// Nonconstant parts `S_0 = 0 ⊆ S_1 ⊆ ...` of the coradical filtration
/// inside the window, up to stabilisation.
#[derive(Debug, Clone)]
pub struct CoradicalLevels {
    pub levels: Vec<Subspace>,
}

impl CoradicalLevels {
    pub fn dims(&self) -> Vec<(usize, usize)> {
        self.levels.iter().enumerate().map(|(n, s)| (n, s.dim())).collect()
    }

    pub fn is_nested(&self) -> bool {
        self.levels
            .windows(2)
            .all(|w| w[0].is_subspace_of(&w[1]).unwrap_or(false))
    }

    /// The first level containing `x`, if any.
    pub fn level_of(&self, x: &PbwElement) -> Option<usize> {
        self.levels
            .iter()
            .position(|s| s.member(x).unwrap_or(false))
    }
}

pub fn coradical_levels(alg: &Algebra, weight_bound: u32) -> Result<CoradicalLevels, SubspaceError> {
    hopf_ready(alg)?;
    let index = Arc::new(MonomialIndex::new(alg.alphabet(), weight_bound));
    let mut levels = vec![Subspace::zero(index.clone())];
    // Every weight-w monomial lies in level w, so W + 1 steps suffice.
    for _ in 0..=weight_bound {
        let next = next_level(alg, &index, levels.last().unwrap())?;
        let stable = next.dim() == levels.last().unwrap().dim();
        levels.push(next);
        if stable {
            levels.pop();
            break;
        }
    }
    Ok(CoradicalLevels { levels })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureReport {
    /// Nondecreasing multiset of levels.
    pub degrees: Vec<usize>,
    /// GK dimension from the Hilbert series factorisation.
    pub gk_dimension: u64,
    /// The multiset has `gk_dimension` elements.
    pub complete: bool,
}

impl SignatureReport {
    pub fn render(&self) -> String {
        let parts: Vec<String> = self.degrees.iter().map(usize::to_string).collect();
        format!("({})", parts.join(","))
    }
}

/// At each level `n`, the number of new elements not accounted for by
/// `S_{n-1}` and products `S_i · S_{n-i}` inside the window.
pub fn signature(alg: &Algebra, weight_bound: u32) -> Result<SignatureReport, SubspaceError> {
    let cor = coradical_levels(alg, weight_bound)?;
    let mut degrees = Vec::new();
    for n in 1..cor.levels.len() {
        let mut known = cor.levels[n - 1].clone();
        for i in 1..n {
            for x in cor.levels[i].basis_up_to_weight(weight_bound) {
                let wx = x.leading().map_or(0, |(m, _)| m.weight());
                for y in cor.levels[n - i].basis_up_to_weight(weight_bound - wx.min(weight_bound)) {
                    known.insert(&alg.mul(x, y)?)?;
                }
            }
        }
        let new = cor.levels[n].dim() - known.dim().min(cor.levels[n].dim());
        degrees.extend(std::iter::repeat_n(n, new));
    }
    let degree = alg.alphabet().max_weight().max(weight_bound) as usize;
    let n = factor_series(&product_series(&alg.alphabet().weights(), degree))
        .expect("a product of 1/(1-t^w) always factors");
    let gk = n.sum();
    Ok(SignatureReport {
        complete: degrees.len() as u64 == gk,
        degrees,
        gk_dimension: gk,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;
    use crate::freealg::rat;

    fn alg(name: &str) -> Algebra {
        Algebra::new(builtin(name).unwrap()).unwrap()
    }

    fn vec(pairs: &[(&str, i64)]) -> LinComb<String> {
        pairs.iter().map(|(k, c)| (k.to_string(), rat(*c, 1))).collect()
    }

    #[test]
    fn echelon_basics() {
        let mut e = Echelon::new();
        assert!(e.insert(&vec(&[("a", 1)])));
        assert!(!e.insert(&vec(&[("a", 2)])));
        assert_eq!(e.dim(), 1);
        let mut f = Echelon::new();
        f.insert(&vec(&[("ab", 1), ("c", -1)]));
        assert!(f.contains(&vec(&[("ab", 2), ("c", -2)])));
        assert!(!f.contains(&vec(&[("c", 1)])));
        let again = Echelon::from_vectors(f.rows().map(|(_, r)| r));
        assert_eq!(again, f);
    }

    #[test]
    fn kernel_of_a_small_map() {
        // x ↦ x0 + x1, y ↦ x0 + x1, z ↦ x1
        let domain = ["x", "y", "z"];
        let ker = kernel(&domain, |d| -> Result<LinComb<u8>, ()> {
            Ok(match *d {
                "x" | "y" => [(0u8, rat(1, 1)), (1, rat(1, 1))].into_iter().collect(),
                _ => LinComb::basis(1),
            })
        })
        .unwrap();
        assert_eq!(ker.dim(), 1);
        let (_, v) = ker.rows().next().unwrap();
        assert_eq!(v.coeff(&"x"), -v.coeff(&"y"));
        assert!(v.coeff(&"z").is_zero());
    }

    #[test]
    fn subspace_membership_and_ambients() {
        let l = alg("L");
        let idx = Arc::new(MonomialIndex::new(l.alphabet(), 2));
        let ab_c = l.parse("ab - c").unwrap();
        let s = Subspace::span(idx.clone(), [&ab_c]).unwrap();
        assert!(s.member(&l.parse("2 ab - 2 c").unwrap()).unwrap());
        assert!(!s.member(&l.gen("c")).unwrap());
        assert!(matches!(s.member(&l.gen("z")), Err(SubspaceError::OutsideWindow { .. })));
        let other = Subspace::zero(Arc::new(MonomialIndex::new(l.alphabet(), 3)));
        assert_eq!(s.sum(&other), Err(SubspaceError::AmbientMismatch));
        assert_eq!(s.render_basis(), vec!["-ab + c"]);
    }

    #[test]
    fn c_is_not_in_the_cube_of_the_augmentation_ideal() {
        let l = alg("L");
        let p = power_ideal_span(&l, 3, 6).unwrap();
        assert!(!p.member(&l.gen("c")).unwrap());
        for m in l.enumerate_basis(4).into_iter().filter(|m| !m.is_one()) {
            let cm = l.mul(&l.gen("c"), &PbwElement::basis(m)).unwrap();
            assert!(p.member(&cm).unwrap());
        }
    }

    #[test]
    fn truncation_of_l() {
        let l = alg("L");
        let b = truncation_algebra(&l, 3, 8).unwrap();
        assert_eq!(
            b.render_basis(),
            vec!["a", "b", "a^2", "ab", "b^2", "c", "z", "w", "az", "aw", "bz", "bw", "z^2", "zw", "w^2"]
        );
        assert!(b.is_associative());
        let center = center_dim(&b, b.generator_images()).unwrap();
        assert_eq!(center.dim, 13);
        assert!(matches!(
            truncation_algebra(&l, 3, 5),
            Err(SubspaceError::WindowTooSmall { needed: 6, .. })
        ));
    }

    #[test]
    fn truncation_of_u_n5() {
        let u = alg("U_n5");
        let s = truncation_algebra(&u, 3, 3).unwrap();
        assert_eq!(s.dim(), 15);
        assert!(s.is_associative());
        assert_eq!(center_dim(&s, s.generator_images()).unwrap().dim, 11);
    }

    #[test]
    fn truncation_of_polynomials_is_the_cotangent_space() {
        let p = alg("poly(2)");
        let t = truncation_algebra(&p, 2, 2).unwrap();
        assert_eq!(t.render_basis(), vec!["x1", "x2"]);
        assert_eq!(center_dim(&t, t.generator_images()).unwrap().dim, 2);
    }

    #[test]
    fn primitives() {
        let l = alg("L");
        assert_eq!(primitive_space(&l, 3).unwrap().render_basis(), vec!["a", "b", "c"]);
        let j = alg("J");
        let p = primitive_space(&j, 3).unwrap();
        assert!(p.member(&j.parse("d - 1/3 c^3").unwrap()).unwrap());
        assert!(p.render_basis().contains(&"-1/3 c^3 + d".to_string()));
    }

    #[test]
    fn coradical_levels_of_l_and_j() {
        let l = alg("L");
        let cor = coradical_levels(&l, 6).unwrap();
        assert!(cor.is_nested());
        assert_eq!(cor.levels[1].dim(), 3);
        assert_eq!(cor.level_of(&l.gen("z")), Some(2));
        let j = alg("J");
        let cor = coradical_levels(&j, 6).unwrap();
        assert!(cor.level_of(&j.gen("d")).unwrap() <= 3);
    }

    #[test]
    fn signatures() {
        let s = signature(&alg("L"), 6).unwrap();
        assert_eq!(s.degrees, vec![1, 1, 1, 2, 2]);
        assert!(s.complete);
        let s = signature(&alg("poly(3)"), 4).unwrap();
        assert_eq!(s.degrees, vec![1, 1, 1]);
        // d - c^3/3 is a fourth primitive, and d is not a new level-2 generator
        let s = signature(&alg("J"), 8).unwrap();
        assert_eq!(s.degrees, vec![1, 1, 1, 1, 2, 2]);
        assert!(s.complete);
    }
}
