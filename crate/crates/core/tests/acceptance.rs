//! Acceptance run: one `[PASS]`/`[FAIL]` line per criterion.
//!
//! Run with `cargo test --test acceptance`. Exits nonzero if any criterion
//! fails.

use std::collections::BTreeMap;
use std::time::Instant;

use hopfkit::builtins::builtin;
use hopfkit::cli::{parse_keys, run};
use hopfkit::grading::{
    associated_graded, factor_series, gk_dimension, hilbert_series, hopf_obstruction, GkDimension,
    Obstruction,
};
use hopfkit::hopf::Antipode;
use hopfkit::pbw::{Algebra, Monomial, PbwElement, Presentation};
use hopfkit::subspace::{
    center_dim, coradical_levels, power_ideal_span, signature, truncation_algebra,
};
use hopfkit::{FreeElement, Rational, TensorElement};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Suite = (&'static str, fn(&mut ChaCha8Rng) -> Outcome);
type Criterion = (&'static str, fn() -> Outcome);

const CASES: usize = 500;
const HOPF_BUILTINS: &[&str] = &["H6", "J", "L", "U_n5", "heis3", "poly(3)"];
const ALL_BUILTINS: &[&str] = &[
    "H6", "J", "L", "U_n5", "heis3", "poly(1)", "poly(2)", "poly(3)", "qplane(2)", "qplane(-1/3)",
    "jordan",
];

fn alg(name: &str) -> Algebra {
    Algebra::new(builtin(name).expect("builtin")).expect("valid builtin")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn cli(args: &[&str]) -> (BTreeMap<String, String>, i32, String) {
    let mut full = vec!["hopfkit"];
    full.extend_from_slice(args);
    let (out, code) = run(full);
    (parse_keys(&out).into_iter().collect(), code, out)
}

fn key<'a>(keys: &'a BTreeMap<String, String>, k: &str) -> &'a str {
    keys.get(k).map(String::as_str).unwrap_or("<missing>")
}

fn expect_key(keys: &BTreeMap<String, String>, k: &str, want: &str) -> Outcome {
    let got = key(keys, k);
    ensure(got == want, format!("{k}: expected {want}, got {got}"))
}

fn c1_check_j() -> Outcome {
    let (keys, code, _) = cli(&["check", "--builtin", "J", "-W", "6"]);
    ensure(code == 0, format!("check exited {code}"))?;
    expect_key(&keys, "relations.checked", "15")?;
    expect_key(&keys, "relations.failed", "0")?;
    expect_key(&keys, "coassociativity.ok", "true")?;
    expect_key(&keys, "counit.ok", "true")?;
    expect_key(&keys, "antipode.ok", "true")?;
    expect_key(&keys, "antipode.weight", "6")?;

    let j = alg("J");
    let report = j.check_coassociativity(4).map_err(|e| e.to_string())?;
    ensure(report.passed(), "coassociativity failed")?;
    ensure(report.generators.len() == 6, "not all six generators checked")?;
    let d = &report.generators[5];
    let rendered = j.render_tensor3(&d.lhs);
    ensure(rendered == "2 c (x) c (x) c", format!("(δ⊗1)δ(d) = {rendered}"))?;

    let bad = cli(&["check", "--builtin", "J", "--corrupt", "drop-dd-correction"]);
    ensure(bad.1 == 1, "corrupted J must exit 1")?;
    expect_key(&bad.0, "relations.failures", "[z,w] - d")
}

fn c2_primitivity() -> Outcome {
    let j = alg("J");
    let p = j.parse("d - 1/3 c^3").map_err(|e| e.to_string())?;
    ensure(j.is_primitive(&p).map_err(|e| e.to_string())?, "d - c^3/3 not primitive")?;
    ensure(!j.is_primitive(&j.gen("d")).map_err(|e| e.to_string())?, "d primitive")
}

fn exponents(name: &str, degree: usize) -> Result<Vec<u64>, String> {
    let h = hilbert_series(&alg(name), degree).map_err(|e| e.to_string())?;
    let n = factor_series(&h.series).map_err(|e| e.to_string())?;
    let sum = n.sum();
    ensure(gk_dimension(&n) == GkDimension::Finite(sum), format!("{name}: GK mismatch"))?;
    Ok(n.significant().to_vec())
}

fn c3_factorization() -> Outcome {
    ensure(exponents("L", 10)? == [2, 1, 2], "L exponents")?;
    ensure(exponents("J", 10)? == [3, 2, 1], "J exponents")?;
    for d in 1..=5u64 {
        let got = exponents(&format!("poly({d})"), 10)?;
        ensure(got == [d], format!("poly({d}) exponents {got:?}"))?;
    }
    Ok(())
}

/// Closed-form oracle: coefficients of `∏ 1/(1-t^w)` by repeated prefix sums.
fn product_oracle(weights: &[u32], degree: usize) -> Vec<u64> {
    let mut s = vec![0u64; degree + 1];
    s[0] = 1;
    for &w in weights {
        let w = w as usize;
        for i in w..=degree {
            s[i] += s[i - w];
        }
    }
    s
}

fn c4_oracle() -> Outcome {
    for name in ALL_BUILTINS {
        let a = alg(name);
        let weights: Vec<u32> = a.alphabet().generators().iter().map(|g| g.weight).collect();
        let mut counts = vec![0u64; 11];
        for m in a.enumerate_basis(10) {
            counts[m.weight() as usize] += 1;
        }
        let oracle = product_oracle(&weights, 10);
        ensure(counts == oracle, format!("{name}: {counts:?} vs {oracle:?}"))?;
        let series: Vec<String> = hilbert_series(&a, 10)
            .map_err(|e| e.to_string())?
            .series
            .coeffs()
            .iter()
            .map(ToString::to_string)
            .collect();
        let want: Vec<String> = oracle.iter().map(ToString::to_string).collect();
        ensure(series == want, format!("{name}: series differs from enumeration"))?;
    }
    Ok(())
}

fn c5_truncations() -> Outcome {
    let l = alg("L");
    let t = truncation_algebra(&l, 3, 8).map_err(|e| e.to_string())?;
    let mut basis = t.render_basis();
    basis.sort();
    let mut want: Vec<String> = ["a", "b", "c", "z", "w", "ab", "az", "aw", "a^2", "b^2", "bz", "bw", "z^2", "zw", "w^2"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    want.sort();
    ensure(basis == want, format!("L basis {basis:?}"))?;
    let z = center_dim(&t, t.generator_images()).map_err(|e| e.to_string())?;
    ensure(z.dim == 13, format!("centre of L truncation has dim {}", z.dim))?;

    let u = alg("U_n5");
    let t = truncation_algebra(&u, 3, 3).map_err(|e| e.to_string())?;
    ensure(t.dim() == 15, format!("U_n5 truncation dim {}", t.dim()))?;
    let z = center_dim(&t, t.generator_images()).map_err(|e| e.to_string())?;
    ensure(z.dim == 11, format!("centre of U_n5 truncation has dim {}", z.dim))?;

    let (keys, _, _) = cli(&["compare-centers", "--builtin", "L", "--builtin", "U_n5", "--power", "3"]);
    expect_key(&keys, "left.truncation.dim", "15")?;
    expect_key(&keys, "right.truncation.dim", "15")?;
    expect_key(&keys, "left.center.dim", "13")?;
    expect_key(&keys, "right.center.dim", "11")?;
    expect_key(&keys, "verdict", "not-isomorphic")
}

fn c6_membership() -> Outcome {
    let l = alg("L");
    let p = power_ideal_span(&l, 3, 6).map_err(|e| e.to_string())?;
    ensure(!p.member(&l.gen("c")).map_err(|e| e.to_string())?, "c in (L+)^3")?;
    let abc = l.parse("a b c").map_err(|e| e.to_string())?;
    ensure(p.member(&abc).map_err(|e| e.to_string())?, "abc not in (L+)^3")
}

fn c7_antipode() -> Outcome {
    let l = alg("L");
    let table = l.solve_antipode(6).map_err(|e| e.to_string())?;
    for g in 0..l.num_generators() {
        let want = l.generator(g).negated();
        ensure(table.images[g] == want, format!("S of generator {g} is not its negative"))?;
    }
    for name in ["J", "L"] {
        let a = alg(name);
        let table = a.solve_antipode(6).map_err(|e| e.to_string())?;
        let inv = a.check_involutive_antipode(&table, 6).map_err(|e| e.to_string())?;
        ensure(inv.passed(), format!("{name}: S^2 != id"))?;
    }
    Ok(())
}

fn c8_signature() -> Outcome {
    let s = signature(&alg("L"), 6).map_err(|e| e.to_string())?;
    ensure(s.degrees == [1, 1, 1, 2, 2], format!("signature {}", s.render()))?;
    ensure(s.complete, "signature incomplete")
}

fn labels(p: &Presentation) -> Vec<String> {
    p.explicit_relations().map(|r| r.label(p.alphabet())).collect()
}

fn c9_associated_graded() -> Outcome {
    let l = builtin("L").unwrap().reweighted(&[1, 1, 2, 4, 4]).map_err(|e| e.to_string())?;
    let gr = associated_graded(&l).map_err(|e| e.to_string())?;
    ensure(labels(&gr) == ["[a,b] - c"], format!("gr(L') relations {:?}", labels(&gr)))?;
    let gr = associated_graded(&builtin("J").unwrap()).map_err(|e| e.to_string())?;
    ensure(gr.is_commutative(), format!("gr(J) relations {:?}", labels(&gr)))
}

fn c10_obstructions() -> Outcome {
    let q = hopf_obstruction(&alg("qplane(2)"), 10).map_err(|e| e.to_string())?;
    ensure(
        matches!(q.obstruction, Some(Obstruction::SkewCommutation { .. })),
        format!("qplane(2): {}", q.verdict()),
    )?;
    ensure(q.verdict().starts_with("no Hopf structure"), "qplane verdict text")?;
    let j = hopf_obstruction(&alg("jordan"), 10).map_err(|e| e.to_string())?;
    ensure(
        matches!(j.obstruction, Some(Obstruction::PolynomialSeries { d: 2 })),
        format!("jordan: {}", j.verdict()),
    )?;
    let l = hopf_obstruction(&alg("L"), 10).map_err(|e| e.to_string())?;
    ensure(l.obstruction.is_none(), format!("L: {}", l.verdict()))?;
    let (keys, code, _) = cli(&["obstruct", "--builtin", "jordan"]);
    ensure(code == 1, "obstruct on jordan must exit 1")?;
    expect_key(&keys, "verdict", "polynomial-series")
}

// ---- randomized property suites ----

fn random_word(rng: &mut ChaCha8Rng, a: &Algebra, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..a.num_generators())).collect()
}

fn random_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let p: i64 = rng.gen_range(-4..=4);
    let q: i64 = rng.gen_range(1..=3);
    Rational::new(p.into(), q.into())
}

fn random_free(rng: &mut ChaCha8Rng, a: &Algebra, terms: usize, max_len: usize) -> FreeElement {
    let mut x = FreeElement::zero(a.alphabet().clone());
    for _ in 0..terms {
        let w = a.alphabet().word(random_word(rng, a, max_len)).unwrap();
        let t = FreeElement::from_word(a.alphabet().clone(), w, random_coeff(rng));
        x = hopfkit::freealg::free_add(&x, &t).unwrap();
    }
    x
}

fn random_pbw(rng: &mut ChaCha8Rng, pool: &[Monomial], terms: usize) -> PbwElement {
    let mut x = PbwElement::zero();
    for _ in 0..terms {
        x.add_term(pool.choose(rng).unwrap().clone(), random_coeff(rng));
    }
    x
}

/// `nf(uv) = nf(u) nf(v)` and `nf` is linear, on random free elements.
fn p_nf_morphism(rng: &mut ChaCha8Rng) -> Outcome {
    let algs: Vec<Algebra> = ALL_BUILTINS.iter().map(|n| alg(n)).collect();
    for case in 0..CASES {
        let a = &algs[case % algs.len()];
        let u = random_free(rng, a, 2, 3);
        let v = random_free(rng, a, 2, 3);
        let uv = hopfkit::freealg::free_mul(&u, &v).unwrap();
        let (nu, nv) = (a.normal_form(&u).unwrap(), a.normal_form(&v).unwrap());
        ensure(
            a.normal_form(&uv).unwrap() == a.mul(&nu, &nv).unwrap(),
            format!("nf(uv) on case {case}"),
        )?;
        let sum = hopfkit::freealg::free_add(&u, &v).unwrap();
        let mut sum_nf = nu.clone();
        sum_nf.add_assign(&nv);
        ensure(a.normal_form(&sum).unwrap() == sum_nf, format!("nf(u+v) on case {case}"))?;
    }
    Ok(())
}

/// `Δ(xy) = Δ(x)Δ(y)` on random PBW elements of Hopf built-ins.
fn p_coproduct_morphism(rng: &mut ChaCha8Rng) -> Outcome {
    let algs: Vec<(Algebra, Vec<Monomial>)> = HOPF_BUILTINS
        .iter()
        .map(|n| {
            let a = alg(n);
            let pool = a.enumerate_basis(a.alphabet().max_weight() + 2);
            (a, pool)
        })
        .collect();
    for case in 0..CASES {
        let (a, pool) = &algs[case % algs.len()];
        let x = random_pbw(rng, pool, 2);
        let y = random_pbw(rng, pool, 2);
        let lhs = a.coproduct(&a.mul(&x, &y).unwrap()).unwrap();
        let rhs = a
            .tensor_mul(&a.coproduct(&x).unwrap(), &a.coproduct(&y).unwrap())
            .unwrap();
        ensure(lhs == rhs, format!("Δ(xy) != Δ(x)Δ(y) on case {case}"))?;
    }
    Ok(())
}

/// `m(S⊗id)Δ(x) = ε(x) = m(id⊗S)Δ(x)` for random basis monomials of weight
/// at most the window.
fn p_antipode_axiom(rng: &mut ChaCha8Rng) -> Outcome {
    const W: u32 = 6;
    let algs: Vec<_> = HOPF_BUILTINS
        .iter()
        .map(|n| {
            let a = alg(n);
            let table = a.solve_antipode(1).unwrap();
            let pool = a.enumerate_basis(W);
            (a, table, pool)
        })
        .collect();
    for case in 0..CASES {
        let (a, table, pool) = &algs[case % algs.len()];
        let mut s = Antipode::new(a, table);
        let m = pool.choose(rng).unwrap();
        let x = PbwElement::basis(m.clone());
        let delta: TensorElement = a.coproduct(&x).unwrap();
        let (mut left, mut right) = (PbwElement::zero(), PbwElement::zero());
        for ((u, v), c) in &delta {
            let su = s.apply_monomial(u).unwrap();
            let sv = s.apply_monomial(v).unwrap();
            left.add_scaled(c, &a.mul(&su, &PbwElement::basis(v.clone())).unwrap());
            right.add_scaled(c, &a.mul(&PbwElement::basis(u.clone()), &sv).unwrap());
        }
        let eps = a.one().scaled(&a.counit(&x));
        ensure(left == eps && right == eps, format!("antipode axiom fails on {}", m.render(a.alphabet())))?;
    }
    Ok(())
}

/// Confluence certificate for every built-in, plus associativity of the
/// normal-form product on random triples (a consequence of confluence).
fn p_confluence(rng: &mut ChaCha8Rng) -> Outcome {
    let algs: Vec<(Algebra, Vec<Monomial>)> = ALL_BUILTINS
        .iter()
        .map(|n| {
            let a = alg(n);
            let pool = a.enumerate_basis(4);
            (a, pool)
        })
        .collect();
    for (a, _) in &algs {
        let r = a.confluence_check().unwrap();
        ensure(r.is_confluent(), format!("{} not confluent", a.presentation().name))?;
    }
    for case in 0..CASES {
        let (a, pool) = &algs[case % algs.len()];
        let x = random_pbw(rng, pool, 2);
        let y = random_pbw(rng, pool, 2);
        let z = random_pbw(rng, pool, 2);
        let left = a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap();
        let right = a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap();
        ensure(left == right, format!("(xy)z != x(yz) on case {case}"))?;
    }
    Ok(())
}

/// `S_{n-1} ⊆ S_n`: random elements of each level lie in the next one.
fn p_coradical_nesting(rng: &mut ChaCha8Rng) -> Outcome {
    let data: Vec<_> = HOPF_BUILTINS
        .iter()
        .map(|n| {
            let a = alg(n);
            let cor = coradical_levels(&a, 6).unwrap();
            (a, cor)
        })
        .collect();
    for (a, cor) in &data {
        ensure(cor.is_nested(), format!("{}: levels not nested", a.presentation().name))?;
    }
    for case in 0..CASES {
        let (a, cor) = &data[case % data.len()];
        let n = rng.gen_range(1..cor.levels.len().max(2));
        if n >= cor.levels.len() {
            continue;
        }
        let basis = cor.levels[n - 1].basis();
        let mut x = PbwElement::zero();
        for b in &basis {
            if rng.gen_bool(0.5) {
                x.add_scaled(&random_coeff(rng), b);
            }
        }
        ensure(
            cor.levels[n].member(&x).unwrap(),
            format!("{}: element of S_{} outside S_{n}", a.presentation().name, n - 1),
        )?;
        if !x.is_zero() {
            let lvl = cor.level_of(&x).unwrap();
            ensure(lvl < n, "level_of beyond containing level")?;
        }
    }
    Ok(())
}

fn c11_properties() -> Outcome {
    let suites: [Suite; 5] = [
        ("nf morphism", p_nf_morphism),
        ("coproduct morphism", p_coproduct_morphism),
        ("antipode axiom", p_antipode_axiom),
        ("confluence", p_confluence),
        ("coradical nesting", p_coradical_nesting),
    ];
    let mut failures = Vec::new();
    for (i, (name, f)) in suites.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + i as u64);
        if let Err(e) = f(&mut rng) {
            failures.push(format!("{name}: {e}"));
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("check J: relations, coassociativity, counit, antipode", c1_check_j),
        ("primitivity of d - c^3/3 in J", c2_primitivity),
        ("Hilbert series factorisation (L, J, poly)", c3_factorization),
        ("basis enumeration equals closed-form series", c4_oracle),
        ("truncation dimensions and centres (L, U_n5)", c5_truncations),
        ("c outside (L+)^3", c6_membership),
        ("antipode of L and S^2 = id", c7_antipode),
        ("signature of L", c8_signature),
        ("associated graded presentations", c9_associated_graded),
        ("Hopf obstructions", c10_obstructions),
        (
            "randomized properties (500 cases each)",
            c11_properties,
        ),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("[PASS] {:>2}. {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("[FAIL] {:>2}. {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
