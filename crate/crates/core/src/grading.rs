//! Hilbert series, their factorisation into `∏ (1 - t^i)^(-n_i)`, GK
//! dimension, associated graded presentations and obstructions to a Hopf
//! structure.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::error::TermLimitExceeded;
use crate::pbw::{Algebra, PbwElement, Presentation, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GradingError {
    #[error("the presentation is not confluent at {triple}; its monomials are not a basis")]
    NotConfluent { triple: String },
    #[error("no nonnegative exponent sequence exists: n_{0} would be negative")]
    NotHopfAdmissible(usize),
    #[error("series must start with constant term 1")]
    NotConnected,
    #[error("relation {relation}: a tail monomial is heavier than the head")]
    TailAboveHead { relation: String },
    #[error(transparent)]
    TermLimit(#[from] TermLimitExceeded),
}

/// Integer power series truncated after `t^D`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series keeps at least t^0");
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one(degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[0] = BigInt::one();
        Self { coeffs }
    }

    /// Truncation degree `D`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }

    /// Multiplies by `(1 - t^i)^e` for any integer `e`, in place.
    pub fn mul_binomial_power(&mut self, i: usize, e: i64) {
        assert!(i >= 1);
        let d = self.degree();
        if e >= 0 {
            for _ in 0..e {
                for k in (i..=d).rev() {
                    let sub = self.coeffs[k - i].clone();
                    self.coeffs[k] -= sub;
                }
            }
        } else {
            for _ in 0..(-e) {
                // Division by (1 - t^i): prefix sums with stride i.
                for k in i..=d {
                    let add = self.coeffs[k - i].clone();
                    self.coeffs[k] += add;
                }
            }
        }
    }

    /// `1 + 2t + 4t^2 + ...`, nonzero terms only.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            let var = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            if var.is_empty() || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&var);
        }
        if out.is_empty() {
            out.push('0');
        }
        out.push_str(&format!(" + O(t^{})", self.degree() + 1));
        out
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `n_1, n_2, ..., n_D`, stored from `n_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSequence {
    n: Vec<u64>,
}

impl ExponentSequence {
    pub fn new(n: Vec<u64>) -> Self {
        Self { n }
    }

    /// `n_i` for `i >= 1`; zero beyond the stored range.
    pub fn get(&self, i: usize) -> u64 {
        if i == 0 {
            return 0;
        }
        self.n.get(i - 1).copied().unwrap_or(0)
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.n
    }

    pub fn len(&self) -> usize {
        self.n.len()
    }

    pub fn is_empty(&self) -> bool {
        self.n.is_empty()
    }

    pub fn sum(&self) -> u64 {
        self.n.iter().sum()
    }

    /// The sequence with trailing zeros removed, e.g. `(2,1,2)`.
    pub fn significant(&self) -> &[u64] {
        let end = self.n.iter().rposition(|&x| x != 0).map_or(0, |p| p + 1);
        &self.n[..end]
    }

    /// `∏ (1 - t^i)^(-n_i)` to degree `D`.
    pub fn expand(&self, degree: usize) -> PowerSeries {
        let mut s = PowerSeries::one(degree);
        for (k, &e) in self.n.iter().enumerate() {
            if e > 0 && k < degree {
                s.mul_binomial_power(k + 1, -(e as i64));
            }
        }
        s
    }

    /// `1/((1-t)^2 (1-t^2) (1-t^3)^2)`.
    pub fn render_product(&self) -> String {
        let factors: Vec<String> = self
            .n
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(k, &e)| {
                let base = if k == 0 { "(1-t)".to_string() } else { format!("(1-t^{})", k + 1) };
                if e == 1 { base } else { format!("{base}^{e}") }
            })
            .collect();
        match factors.len() {
            0 => "1".into(),
            1 => format!("1/{}", factors[0]),
            _ => format!("1/({})", factors.join(" ")),
        }
    }

    pub fn render(&self) -> String {
        let sig: Vec<String> = self.significant().iter().map(u64::to_string).collect();
        format!("({})", sig.join(","))
    }
}

/// `∏_g 1/(1 - t^{w(g)})` to degree `D`.
pub fn product_series(weights: &[u32], degree: usize) -> PowerSeries {
    let mut s = PowerSeries::one(degree);
    for &w in weights {
        s.mul_binomial_power(w as usize, -1);
    }
    s
}

#[derive(Debug, Clone, PartialEq)]
pub struct HilbertReport {
    pub series: PowerSeries,
    /// True when every relation is homogeneous; otherwise the series is that
    /// of the associated graded algebra.
    pub graded: bool,
    /// Closed product form over the generator weights.
    pub product_form: String,
}

fn require_confluent(alg: &Algebra) -> Result<(), GradingError> {
    let report = alg.confluence_check()?;
    match report.failures.first() {
        None => Ok(()),
        Some(a) => Err(GradingError::NotConfluent {
            triple: alg.render_triple(a.triple),
        }),
    }
}

fn weight_counts(weights: &[u32]) -> ExponentSequence {
    let max = weights.iter().copied().max().unwrap_or(0) as usize;
    let mut n = vec![0u64; max];
    for &w in weights {
        n[w as usize - 1] += 1;
    }
    ExponentSequence::new(n)
}

pub fn hilbert_series(alg: &Algebra, degree: usize) -> Result<HilbertReport, GradingError> {
    require_confluent(alg)?;
    let weights = alg.alphabet().weights();
    Ok(HilbertReport {
        series: product_series(&weights, degree),
        graded: alg.validation().graded,
        product_form: weight_counts(&weights).render_product(),
    })
}

/// Peels off `(1 - t^i)^(-n_i)` degree by degree. The exponents are unique
/// when they exist.
pub fn factor_series(h: &PowerSeries) -> Result<ExponentSequence, GradingError> {
    if !h.coeff(0).is_one() {
        return Err(GradingError::NotConnected);
    }
    let mut work = h.clone();
    let mut n = Vec::with_capacity(h.degree());
    for i in 1..=h.degree() {
        let c = work.coeff(i).clone();
        if c.is_negative() {
            return Err(GradingError::NotHopfAdmissible(i));
        }
        let e = c.to_i64().expect("exponent fits in i64");
        work.mul_binomial_power(i, e);
        n.push(e as u64);
    }
    Ok(ExponentSequence::new(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GkDimension {
    Finite(u64),
    /// `n` is nonzero at the truncation boundary; only a lower bound is known.
    AtLeast(u64),
}

impl fmt::Display for GkDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GkDimension::Finite(d) => write!(f, "{d}"),
            GkDimension::AtLeast(d) => write!(f, ">={d} (possibly infinite)"),
        }
    }
}

pub fn gk_dimension(n: &ExponentSequence) -> GkDimension {
    match n.as_slice().last() {
        Some(&last) if last != 0 => GkDimension::AtLeast(n.sum()),
        _ => GkDimension::Finite(n.sum()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportReport {
    /// `Some(l)` when `{i : n_i != 0} = [1, l)`.
    pub interval_end: Option<usize>,
}

impl SupportReport {
    pub fn is_interval(&self) -> bool {
        self.interval_end.is_some()
    }

    pub fn render(&self) -> String {
        match self.interval_end {
            Some(l) => format!("[1,{l})"),
            None => "not an initial interval".into(),
        }
    }
}

/// Whether the support of `n` is an initial interval `[1, l)`. This is
/// necessary for algebras generated in degree 1.
pub fn support_interval_check(n: &ExponentSequence) -> SupportReport {
    let sig = n.significant();
    let interval_end = sig.iter().all(|&x| x != 0).then_some(sig.len() + 1);
    SupportReport { interval_end }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// A rule `g_hi g_lo = q g_lo g_hi` with `q != 1` and no tail.
    SkewCommutation { relation: String },
    /// Series `1/(1-t)^d` on a noncommutative presentation.
    PolynomialSeries { d: u64 },
}

impl Obstruction {
    pub fn verdict(&self) -> &'static str {
        "no Hopf structure"
    }

    /// The statement the verdict rests on.
    pub fn citation(&self) -> String {
        match self {
            Obstruction::SkewCommutation { relation } => format!(
                "skew-commutation obstruction: a connected graded Hopf algebra admits no relation xy = q yx with q != 1 (found {relation})"
            ),
            Obstruction::PolynomialSeries { d } => format!(
                "polynomial-series criterion: a connected graded Hopf algebra with Hilbert series 1/(1-t)^{d} is commutative, but this presentation is not"
            ),
        }
    }

    pub fn key(&self) -> &'static str {
        match self {
            Obstruction::SkewCommutation { .. } => "skew-commutation",
            Obstruction::PolynomialSeries { .. } => "polynomial-series",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub exponents: Option<ExponentSequence>,
    pub obstruction: Option<Obstruction>,
}

impl ObstructionReport {
    pub fn verdict(&self) -> String {
        match &self.obstruction {
            Some(o) => format!("{} ({})", o.verdict(), o.citation()),
            None => "no obstruction found".into(),
        }
    }
}

/// Tests the two numeric obstructions. Both rely on the monomial basis, so
/// confluence is certified first.
pub fn hopf_obstruction(alg: &Algebra, degree: usize) -> Result<ObstructionReport, GradingError> {
    require_confluent(alg)?;
    let p = alg.presentation();
    if let Some(rel) = p
        .explicit_relations()
        .find(|r| !r.q.is_one() && r.tail.is_zero())
    {
        return Ok(ObstructionReport {
            exponents: None,
            obstruction: Some(Obstruction::SkewCommutation {
                relation: rel.label(alg.alphabet()),
            }),
        });
    }
    let series = product_series(&alg.alphabet().weights(), degree);
    let n = factor_series(&series)?;
    let polynomial = n.significant().len() == 1 && !alg.alphabet().is_empty();
    let obstruction = (polynomial && !p.is_commutative())
        .then(|| Obstruction::PolynomialSeries { d: n.get(1) });
    Ok(ObstructionReport {
        exponents: Some(n),
        obstruction,
    })
}

/// Drops every tail monomial lighter than its head, and every coproduct term
/// `u⊗v` with `w(u) + w(v) < w(g)`. The result is weight-graded and has the
/// same monomial basis.
pub fn associated_graded(p: &Presentation) -> Result<Presentation, GradingError> {
    let al = p.alphabet().clone();
    let mut out = p.clone();
    out.name = format!("gr({})", p.name);
    for rel in p.explicit_relations() {
        let head = al.weight(rel.hi) + al.weight(rel.lo);
        if rel.tail.keys().any(|m| m.weight() > head) {
            return Err(GradingError::TailAboveHead {
                relation: rel.label(&al),
            });
        }
        let tail: PbwElement = rel.tail.filtered(|m| m.weight() == head);
        out.set_relation(Relation { tail, ..rel.clone() });
    }
    if let Some(cop) = p.coproduct() {
        let mut top = cop.clone();
        for g in 0..al.len() {
            let w = al.weight(g);
            top.set_reduced(g, cop.reduced(g).filtered(|(u, v)| u.weight() + v.weight() == w));
        }
        out.set_coproduct(Some(top));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::builtin;
    use crate::pbw::validate_presentation;

    fn alg(name: &str) -> Algebra {
        Algebra::new(builtin(name).unwrap()).unwrap()
    }

    fn ints(s: &PowerSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn l_series_and_factorisation() {
        let h = hilbert_series(&alg("L"), 6).unwrap();
        assert_eq!(ints(&h.series), vec![1, 2, 4, 8, 13, 20, 31]);
        assert!(h.graded);
        assert_eq!(h.product_form, "1/((1-t)^2 (1-t^2) (1-t^3)^2)");
        let n = factor_series(&h.series).unwrap();
        assert_eq!(n.significant(), &[2, 1, 2]);
        assert_eq!(gk_dimension(&n), GkDimension::Finite(5));
    }

    #[test]
    fn j_is_filtered_with_gk_six() {
        let h = hilbert_series(&alg("J"), 10).unwrap();
        assert!(!h.graded);
        let n = factor_series(&h.series).unwrap();
        assert_eq!(n.significant(), &[3, 2, 1]);
        assert_eq!(gk_dimension(&n), GkDimension::Finite(6));
        assert_eq!(support_interval_check(&n).render(), "[1,4)");
    }

    #[test]
    fn polynomial_ring_series_are_binomials() {
        let h = hilbert_series(&alg("poly(3)"), 5).unwrap();
        assert_eq!(ints(&h.series), vec![1, 3, 6, 10, 15, 21]);
        assert_eq!(h.product_form, "1/(1-t)^3");
        assert_eq!(factor_series(&h.series).unwrap().significant(), &[3]);
    }

    #[test]
    fn finite_series_do_not_factor() {
        let s = PowerSeries::from_i64(&[1, 1, 0, 0]);
        assert_eq!(factor_series(&s), Err(GradingError::NotHopfAdmissible(2)));
        assert_eq!(
            factor_series(&PowerSeries::from_i64(&[2, 1])),
            Err(GradingError::NotConnected)
        );
    }

    #[test]
    fn expansion_inverts_factorisation() {
        let n = ExponentSequence::new(vec![2, 1, 2, 0, 0, 0]);
        let s = n.expand(6);
        assert_eq!(factor_series(&s).unwrap(), n);
        assert_eq!(s.render(), "1 + 2t + 4t^2 + 8t^3 + 13t^4 + 20t^5 + 31t^6 + O(t^7)");
    }

    #[test]
    fn support_intervals() {
        assert_eq!(support_interval_check(&ExponentSequence::new(vec![2, 1, 2, 0])).interval_end, Some(4));
        assert!(!support_interval_check(&ExponentSequence::new(vec![1, 0, 1])).is_interval());
        assert_eq!(gk_dimension(&ExponentSequence::new(vec![1, 0, 1])), GkDimension::AtLeast(2));
    }

    #[test]
    fn obstructions() {
        let q = hopf_obstruction(&alg("qplane(2)"), 6).unwrap();
        assert!(matches!(q.obstruction, Some(Obstruction::SkewCommutation { .. })));
        let j = hopf_obstruction(&alg("jordan"), 6).unwrap();
        assert_eq!(j.obstruction, Some(Obstruction::PolynomialSeries { d: 2 }));
        assert!(j.verdict().starts_with("no Hopf structure"));
        assert_eq!(hopf_obstruction(&alg("L"), 8).unwrap().obstruction, None);
        assert_eq!(hopf_obstruction(&alg("poly(2)"), 8).unwrap().obstruction, None);
    }

    #[test]
    fn associated_graded_of_reweighted_l_is_heisenberg_plus_abelian() {
        let l = builtin("L").unwrap().reweighted(&[1, 1, 2, 4, 4]).unwrap();
        let gr = associated_graded(&l).unwrap();
        let labels: Vec<String> = gr.explicit_relations().map(|r| r.label(gr.alphabet())).collect();
        assert_eq!(labels, vec!["[a,b] - c"]);
        assert!(validate_presentation(&gr).unwrap().graded);
        assert_eq!(associated_graded(&gr).unwrap().explicit_relations().count(), 1);
    }

    #[test]
    fn associated_graded_of_j_commutes() {
        let gr = associated_graded(&builtin("J").unwrap()).unwrap();
        assert!(gr.is_commutative());
        assert!(validate_presentation(&gr).unwrap().graded);
    }

    #[test]
    fn graded_input_is_unchanged() {
        let l = builtin("L").unwrap();
        let gr = associated_graded(&l).unwrap();
        assert_eq!(gr.explicit_relations().collect::<Vec<_>>(), l.explicit_relations().collect::<Vec<_>>());
        assert_eq!(gr.coproduct(), l.coproduct());
    }
}
