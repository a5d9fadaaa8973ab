//! Compiled-in presentations.
//!
//! | name         | generators (weights)                    | nonzero brackets                 |
//! |--------------|-----------------------------------------|----------------------------------|
//! | `H6`         | a b c z w d (1 1 1 2 2 3)               | [a,b]=c, [z,w]=d                 |
//! | `J`          | as `H6`, non-cocommutative coproduct    | as `H6`                          |
//! | `L`          | a b c z w (1 1 2 3 3)                   | [a,b]=c, [z,w]=1/3 c^3           |
//! | `U_n5`       | x x1 x2 x3 x4 (1 1 1 1 1)               | [x1,x2]=x=[x3,x4]                |
//! | `heis3`      | a b c (1 1 2)                           | [a,b]=c                          |
//! | `poly(d)`    | x1 .. xd (all 1)                        | none                             |
//! | `qplane(q)`  | x y (1 1)                               | yx = q xy, no coproduct          |
//! | `jordan`     | x y (1 1)                               | yx = xy + x^2, no coproduct      |

use thiserror::Error;

use crate::freealg::{int, rat, Alphabet, Rational};
use crate::hopf::{tensor, CoproductData};
use crate::pbw::{PbwElement, Presentation, Relation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuiltinError {
    #[error("unknown built-in presentation `{0}`")]
    UnknownName(String),
    #[error("qplane(0) is degenerate; q must be nonzero")]
    QPlaneZero,
    #[error("bad parameter in `{0}`")]
    BadParameter(String),
    #[error("unknown corruption `{0}` for {1}")]
    UnknownCorruption(String, String),
}

pub const NAMES: &[&str] = &["H6", "J", "L", "U_n5", "heis3", "poly(d)", "qplane(q)", "jordan"];

pub fn builtin(name: &str) -> Result<Presentation, BuiltinError> {
    let name = name.trim();
    if let Some(arg) = call_argument(name, "poly") {
        let d: usize = arg
            .trim()
            .parse()
            .ok()
            .filter(|&d| d >= 1)
            .ok_or_else(|| BuiltinError::BadParameter(name.to_string()))?;
        return Ok(poly(d));
    }
    if let Some(arg) = call_argument(name, "qplane") {
        let q = parse_rational(arg).ok_or_else(|| BuiltinError::BadParameter(name.to_string()))?;
        return qplane(q);
    }
    match name {
        "H6" | "H" => Ok(h6()),
        "J" => Ok(j()),
        "L" => Ok(l()),
        "U_n5" => Ok(u_n5()),
        "heis3" => Ok(heis3()),
        "jordan" => Ok(jordan()),
        _ => Err(BuiltinError::UnknownName(name.to_string())),
    }
}

fn call_argument<'a>(name: &'a str, head: &str) -> Option<&'a str> {
    name.strip_prefix(head)?.strip_prefix('(')?.strip_suffix(')')
}

fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let q: i64 = q.trim().parse().ok()?;
            let p: i64 = p.trim().parse().ok()?;
            (q != 0).then(|| rat(p, q))
        }
        None => Some(int(s.parse().ok()?)),
    }
}

fn presentation(name: &str, gens: &[(&str, u32)]) -> Presentation {
    Presentation::new(name, Alphabet::new(gens).expect("built-in alphabet"))
}

fn g(p: &Presentation, name: &str) -> PbwElement {
    let i = p.alphabet().index_of(name).expect("built-in generator");
    PbwElement::basis(p.generator(i))
}

fn idx(p: &Presentation, name: &str) -> usize {
    p.alphabet().index_of(name).expect("built-in generator")
}

/// Records `[x, y] = value` for `x` earlier than `y` in the order.
fn bracket(p: &mut Presentation, x: &str, y: &str, value: PbwElement) {
    let (lo, hi) = (idx(p, x), idx(p, y));
    p.add_relation(Relation::lie(hi, lo, value))
        .expect("built-in relation");
}

fn c_cubed(p: &Presentation, c: &str) -> crate::pbw::Monomial {
    let mut exps = vec![0; p.num_generators()];
    exps[idx(p, c)] = 3;
    p.monomial(exps)
}

fn c_squared(p: &Presentation, c: &str) -> PbwElement {
    let mut exps = vec![0; p.num_generators()];
    exps[idx(p, c)] = 2;
    PbwElement::basis(p.monomial(exps))
}

/// `x (x) y - y (x) x`.
fn antisym(p: &Presentation, x: &str, y: &str) -> crate::hopf::TensorElement {
    tensor(&g(p, x), &g(p, y)).minus(&tensor(&g(p, y), &g(p, x)))
}

/// The enveloping algebra of two Heisenberg algebras, with its
/// cocommutative coproduct.
pub fn h6() -> Presentation {
    let mut p = presentation(
        "H6",
        &[("a", 1), ("b", 1), ("c", 1), ("z", 2), ("w", 2), ("d", 3)],
    );
    let (c, d) = (g(&p, "c"), g(&p, "d"));
    bracket(&mut p, "a", "b", c);
    bracket(&mut p, "z", "w", d);
    p.set_coproduct(Some(CoproductData::primitive(6)));
    p
}

/// `H6` as an algebra with the non-cocommutative coproduct
/// `δ(z) = a⊗c - c⊗a`, `δ(w) = b⊗c - c⊗b`, `δ(d) = c⊗c² + c²⊗c`.
pub fn j() -> Presentation {
    let mut p = h6();
    p.name = "J".into();
    let mut cop = CoproductData::primitive(6);
    cop.set_reduced(idx(&p, "z"), antisym(&p, "a", "c"));
    cop.set_reduced(idx(&p, "w"), antisym(&p, "b", "c"));
    let (c, c2) = (g(&p, "c"), c_squared(&p, "c"));
    cop.set_reduced(idx(&p, "d"), tensor(&c, &c2).plus(&tensor(&c2, &c)));
    p.set_coproduct(Some(cop));
    p
}

/// The quotient of `J` by `d - c³/3`, graded by `a,b ↦ 1`, `c ↦ 2`,
/// `z,w ↦ 3`.
pub fn l() -> Presentation {
    let mut p = presentation("L", &[("a", 1), ("b", 1), ("c", 2), ("z", 3), ("w", 3)]);
    let c = g(&p, "c");
    let third_c3 = PbwElement::from_term(c_cubed(&p, "c"), rat(1, 3));
    bracket(&mut p, "a", "b", c);
    bracket(&mut p, "z", "w", third_c3);
    let mut cop = CoproductData::primitive(5);
    cop.set_reduced(idx(&p, "z"), antisym(&p, "a", "c"));
    cop.set_reduced(idx(&p, "w"), antisym(&p, "b", "c"));
    p.set_coproduct(Some(cop));
    p
}

/// Enveloping algebra of the five-dimensional Lie algebra with
/// `[x1,x2] = x = [x3,x4]`.
pub fn u_n5() -> Presentation {
    let mut p = presentation(
        "U_n5",
        &[("x", 1), ("x1", 1), ("x2", 1), ("x3", 1), ("x4", 1)],
    );
    let x = g(&p, "x");
    bracket(&mut p, "x1", "x2", x.clone());
    bracket(&mut p, "x3", "x4", x);
    p.set_coproduct(Some(CoproductData::primitive(5)));
    p
}

pub fn heis3() -> Presentation {
    let mut p = presentation("heis3", &[("a", 1), ("b", 1), ("c", 2)]);
    let c = g(&p, "c");
    bracket(&mut p, "a", "b", c);
    p.set_coproduct(Some(CoproductData::primitive(3)));
    p
}

pub fn poly(d: usize) -> Presentation {
    let names: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    let gens: Vec<(&str, u32)> = names.iter().map(|n| (n.as_str(), 1)).collect();
    let mut p = presentation(&format!("poly({d})"), &gens);
    p.set_coproduct(Some(CoproductData::primitive(d)));
    p
}

/// Quantum plane `yx = q xy`.
pub fn qplane(q: Rational) -> Result<Presentation, BuiltinError> {
    if num_traits::Zero::is_zero(&q) {
        return Err(BuiltinError::QPlaneZero);
    }
    let name = format!("qplane({})", crate::linear::render_rational(&q));
    let mut p = presentation(&name, &[("x", 1), ("y", 1)]);
    p.add_relation(Relation {
        hi: 1,
        lo: 0,
        q,
        tail: PbwElement::zero(),
    })
    .expect("built-in relation");
    Ok(p)
}

/// Jordan plane `yx = xy + x²`.
pub fn jordan() -> Presentation {
    let mut p = presentation("jordan", &[("x", 1), ("y", 1)]);
    let x2 = PbwElement::basis(p.monomial(vec![2, 0]));
    p.add_relation(Relation {
        hi: 1,
        lo: 0,
        q: int(1),
        tail: x2,
    })
    .expect("built-in relation");
    p
}

/// Deliberately broken variants, used to show that the checks catch errors.
///
/// `drop-dd-correction` (on `J`) removes `c⊗c² + c²⊗c` from `Δ(d)`, making
/// `d` primitive; the relation `[z,w] - d` then fails.
pub fn corrupt(p: &Presentation, corruption: &str) -> Result<Presentation, BuiltinError> {
    match corruption {
        "drop-dd-correction" if p.alphabet().index_of("d").is_some() && p.coproduct().is_some() => {
            let mut out = p.clone();
            let mut cop = p.coproduct().cloned().expect("checked above");
            cop.set_reduced(idx(p, "d"), crate::hopf::TensorElement::zero());
            out.set_coproduct(Some(cop));
            out.name = format!("{}[{corruption}]", p.name);
            Ok(out)
        }
        _ => Err(BuiltinError::UnknownCorruption(
            corruption.to_string(),
            p.name.clone(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn l_has_exactly_two_brackets() {
        let p = builtin("L").unwrap();
        let labels: Vec<String> = p
            .explicit_relations()
            .map(|r| r.label(p.alphabet()))
            .collect();
        assert_eq!(labels, vec!["[a,b] - c", "[z,w] - 1/3 c^3"]);
        assert_eq!(p.all_relations().len(), 10);
    }

    #[test]
    fn u_n5_brackets() {
        let p = builtin("U_n5").unwrap();
        assert_eq!(p.alphabet().name(0), "x");
        let labels: Vec<String> = p
            .explicit_relations()
            .map(|r| r.label(p.alphabet()))
            .collect();
        assert_eq!(labels, vec!["[x1,x2] - x", "[x3,x4] - x"]);
    }

    #[test]
    fn parameterised_names() {
        let p = builtin("poly(3)").unwrap();
        assert!(p.is_commutative());
        assert_eq!(p.num_generators(), 3);
        assert_eq!(builtin("qplane(0)"), Err(BuiltinError::QPlaneZero));
        let q = builtin("qplane(-1/2)").unwrap();
        assert_eq!(q.relation(1, 0).q, rat(-1, 2));
        assert!(q.coproduct().is_none());
        assert!(matches!(builtin("nope"), Err(BuiltinError::UnknownName(_))));
        assert!(matches!(builtin("poly(x)"), Err(BuiltinError::BadParameter(_))));
    }

    #[test]
    fn j_weights_follow_the_filtration_degree() {
        let p = builtin("J").unwrap();
        assert_eq!(p.alphabet().weights(), vec![1, 1, 1, 2, 2, 3]);
        let l = builtin("L").unwrap();
        assert_eq!(l.alphabet().weights(), vec![1, 1, 2, 3, 3]);
    }

    #[test]
    fn corruption_only_applies_to_j_shapes() {
        let j = builtin("J").unwrap();
        let bad = corrupt(&j, "drop-dd-correction").unwrap();
        assert!(bad.coproduct().unwrap().reduced(5).is_zero());
        assert!(corrupt(&builtin("L").unwrap(), "drop-dd-correction").is_err());
    }
}
