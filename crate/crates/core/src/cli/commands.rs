use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::report::Report;
use super::{math, usage, CliError, Command, Window};
use crate::builtins::builtin;
use crate::grading::{
    associated_graded, factor_series, gk_dimension, hilbert_series, hopf_obstruction, support_interval_check,
};
use crate::hopf::HopfError;
use crate::pbw::{validate_presentation, Algebra, PbwElement, Presentation};
use crate::subspace::{center_dim, coradical_levels, primitive_space, signature, truncation_algebra};

type Outcome = Result<(String, bool), CliError>;

impl Window {
    fn resolve(&self, alg: &Algebra) -> u32 {
        self.weight_bound
            .unwrap_or(2 * alg.alphabet().max_weight() + 2)
    }
}

fn algebra(p: Presentation) -> Result<Algebra, CliError> {
    Algebra::new(p).map_err(usage)
}

fn confluent(alg: &Algebra) -> Result<(), CliError> {
    alg.certify_confluence().map_err(math)
}

pub(super) fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Check {
            source,
            window,
            seed,
            samples,
        } => check(algebra(source.load_one()?)?, window, *seed, *samples),
        Command::Nf { source, expr } => nf(algebra(source.load_one()?)?, expr),
        Command::Hilbert { source, degree } => hilbert(algebra(source.load_one()?)?, *degree),
        Command::Truncate {
            source,
            window,
            power,
        } => truncate(algebra(source.load_one()?)?, window, *power),
        Command::Antipode { source, window } => antipode(algebra(source.load_one()?)?, window),
        Command::Primitives { source, window } => primitives(algebra(source.load_one()?)?, window),
        Command::Coradical { source, window } => coradical(algebra(source.load_one()?)?, window),
        Command::Signature { source, window } => sig(algebra(source.load_one()?)?, window),
        Command::Gr { source, weights } => gr(source.load_one()?, weights.as_deref()),
        Command::Obstruct { source, degree } => obstruct(algebra(source.load_one()?)?, *degree),
        Command::CompareCenters {
            source,
            window,
            power,
        } => {
            let ps = source.load()?;
            if ps.len() != 2 {
                return Err(usage("compare-centers takes exactly two presentations"));
            }
            let mut it = ps.into_iter();
            let left = algebra(it.next().unwrap())?;
            let right = algebra(it.next().unwrap())?;
            compare_centers(left, right, window, *power)
        }
        Command::DumpBuiltin { name } => {
            let p = builtin(name).map_err(usage)?;
            Ok((super::print_presentation(&p), true))
        }
    }
}

fn yes_no(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn check(alg: Algebra, window: &Window, seed: u64, samples: usize) -> Outcome {
    let name = alg.presentation().name.clone();
    let mut r = Report::new("check", &name);
    let v = alg.validation();
    r.row("presentation", if v.graded { "weight-graded" } else { "weight-filtered" });
    r.key("graded", v.graded);
    let conf = alg.confluence_check().map_err(math)?;
    r.row(
        "confluence",
        format!("{} ({} overlaps)", yes_no(conf.is_confluent()), conf.triples_checked),
    );
    r.key("confluence.triples", conf.triples_checked);
    r.key("confluence.ok", conf.is_confluent());
    for a in &conf.failures {
        r.line(format!("  FAIL overlap {}: residual {}", alg.render_triple(a.triple), alg.render(&a.residual)));
    }
    if !conf.is_confluent() {
        return Ok((r.render(), false));
    }
    match alg.hopf_data() {
        Err(HopfError::NoCoproductAttached) => {
            r.row("hopf checks", "skipped (no coproduct)");
            r.key("hopf", "absent");
            return Ok((r.render(), true));
        }
        Err(e) => {
            r.row("hopf checks", e.to_string());
            r.key("hopf", "rejected");
            return Ok((r.render(), false));
        }
        Ok(_) => {}
    }
    let mut ok = true;

    let rel = alg.check_relation_compatibility().map_err(math)?;
    let failed = rel.failures().count();
    r.row(
        "relation compatibility",
        format!("{} ({}/{} relations)", yes_no(rel.passed()), rel.checks.len() - failed, rel.checks.len()),
    );
    for c in rel.failures() {
        r.line(format!("  FAIL {}: residual {}", c.label, alg.render_tensor(&c.residual)));
    }
    r.key("relations.checked", rel.checks.len());
    r.key("relations.failed", failed);
    if failed > 0 {
        let names: Vec<&str> = rel.failures().map(|c| c.label.as_str()).collect();
        r.key("relations.failures", names.join("; "));
    }
    ok &= rel.passed();

    let w = window.resolve(&alg).min(alg.alphabet().max_weight() * 2);
    let co = alg.check_coassociativity(w).map_err(math)?;
    r.row(
        "coassociativity",
        format!(
            "{} ({} generators, {} sampled monomials)",
            yes_no(co.passed()),
            co.generators.len(),
            co.sampled_monomials
        ),
    );
    for g in &co.generators {
        if !g.lhs.is_zero() || !g.rhs.is_zero() {
            r.line(format!(
                "  {}: (d(x)id)d = {} ; (id(x)d)d = {}",
                alg.alphabet().name(g.generator),
                alg.render_tensor3(&g.lhs),
                alg.render_tensor3(&g.rhs)
            ));
        }
    }
    r.key("coassociativity.ok", co.passed());
    ok &= co.passed();

    let counit = alg.check_counit().map_err(math)?;
    r.row("counit", yes_no(counit.passed()));
    r.key("counit.ok", counit.passed());
    ok &= counit.passed();

    let w = window.resolve(&alg);
    match alg.solve_antipode(w) {
        Ok(table) => {
            r.row(
                "antipode",
                format!("pass (two-sided on {} monomials, weight <= {w})", table.verified_monomials),
            );
            for (g, img) in alg.render_antipode(&table) {
                r.line(format!("  S({g}) = {img}"));
            }
            let inv = alg.check_involutive_antipode(&table, w).map_err(math)?;
            r.row("S^2 = id", format!("{} ({} monomials)", yes_no(inv.passed()), inv.checked));
            r.key("antipode.ok", true);
            r.key("antipode.weight", w);
            r.key("involution.ok", inv.passed());
            ok &= inv.passed();
        }
        Err(HopfError::TermLimit(e)) => return Err(math(e)),
        Err(e) => {
            r.row("antipode", format!("FAIL {e}"));
            r.key("antipode.ok", false);
            ok = false;
        }
    }

    // Seeded spot check: Δ(xy) = Δ(x)Δ(y) on random basis pairs.
    let pool: Vec<_> = alg
        .enumerate_basis(alg.alphabet().max_weight() + 1)
        .into_iter()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = 0;
    for _ in 0..samples {
        let x = PbwElement::basis(pool.choose(&mut rng).unwrap().clone());
        let y = PbwElement::basis(pool.choose(&mut rng).unwrap().clone());
        let lhs = alg.coproduct(&alg.mul(&x, &y).map_err(math)?).map_err(math)?;
        let rhs = alg
            .tensor_mul(&alg.coproduct(&x).map_err(math)?, &alg.coproduct(&y).map_err(math)?)
            .map_err(math)?;
        if lhs != rhs {
            bad += 1;
        }
    }
    r.row(
        "coproduct morphism (random)",
        format!("{} ({samples} pairs, seed {seed})", yes_no(bad == 0)),
    );
    r.key("property.samples", samples);
    r.key("property.failures", bad);
    ok &= bad == 0;

    r.key("ok", ok);
    Ok((r.render(), ok))
}

fn nf(alg: Algebra, expr: &str) -> Outcome {
    let x = alg.parse(expr).map_err(usage)?;
    let mut r = Report::new("nf", &alg.presentation().name);
    let out = alg.render(&x);
    r.row(expr, format!("-> {out}"));
    r.key("nf", out);
    Ok((r.render(), true))
}

fn hilbert(alg: Algebra, degree: usize) -> Outcome {
    let h = hilbert_series(&alg, degree).map_err(math)?;
    let mut r = Report::new("hilbert", &alg.presentation().name);
    r.row(
        "kind",
        if h.graded {
            "Hilbert series (weight-graded)"
        } else {
            "series of the associated graded (weight-filtered)"
        },
    );
    r.row("series", h.series.render());
    r.row("product form", &h.product_form);
    let coeffs: Vec<String> = h.series.coeffs().iter().map(|c| c.to_string()).collect();
    r.key("hilbert.coeffs", coeffs.join(","));
    r.key("hilbert.graded", h.graded);
    match factor_series(&h.series) {
        Ok(n) => {
            let gk = gk_dimension(&n);
            let support = support_interval_check(&n);
            r.row("exponents n", n.render());
            r.row("GK dimension", gk);
            r.row("support", support.render());
            r.key("exponents", n.render());
            r.key("gk", gk);
            r.key("support.interval", support.is_interval());
            Ok((r.render(), true))
        }
        Err(e) => {
            r.row("exponents n", format!("FAIL {e}"));
            Ok((r.render(), false))
        }
    }
}

fn truncate(alg: Algebra, window: &Window, power: u32) -> Outcome {
    let w = window
        .weight_bound
        .unwrap_or((2 * alg.alphabet().max_weight() + 2).max((power.max(1) - 1) * alg.alphabet().max_weight()));
    let t = truncation_algebra(&alg, power, w).map_err(math)?;
    let c = center_dim(&t, t.generator_images()).map_err(math)?;
    let mut r = Report::new("truncate", &alg.presentation().name);
    r.row("power k", power);
    r.row("weight bound W", w);
    r.row("dimension", t.dim());
    r.row("basis", t.render_basis().join(", "));
    r.row("centre dimension", c.dim);
    let centre: Vec<String> = c.basis.rows().map(|(_, v)| t.render_vector(v)).collect();
    r.row("centre basis", centre.join(", "));
    r.key("truncation.power", power);
    r.key("truncation.weight_bound", w);
    r.key("truncation.dim", t.dim());
    r.key("center.dim", c.dim);
    Ok((r.render(), true))
}

fn antipode(alg: Algebra, window: &Window) -> Outcome {
    confluent(&alg)?;
    let w = window.resolve(&alg);
    let mut r = Report::new("antipode", &alg.presentation().name);
    let table = match alg.solve_antipode(w) {
        Ok(t) => t,
        Err(e @ HopfError::AxiomFailure { .. }) => {
            r.row("antipode", format!("FAIL {e}"));
            r.key("antipode.ok", false);
            return Ok((r.render(), false));
        }
        Err(e) => return Err(math(e)),
    };
    for (g, img) in alg.render_antipode(&table) {
        r.row(&format!("S({g})"), &img);
        r.key(format!("S.{g}"), img);
    }
    let inv = alg.check_involutive_antipode(&table, w).map_err(math)?;
    r.row("verified weight", w);
    r.row("S^2 = id", yes_no(inv.passed()));
    r.key("antipode.ok", true);
    r.key("involution.ok", inv.passed());
    Ok((r.render(), inv.passed()))
}

fn primitives(alg: Algebra, window: &Window) -> Outcome {
    let w = window.resolve(&alg);
    let p = primitive_space(&alg, w).map_err(math)?;
    let mut r = Report::new("primitives", &alg.presentation().name);
    r.row("weight bound W", w);
    r.row("dimension", p.dim());
    for v in p.render_basis() {
        r.line(format!("  {v}"));
    }
    r.key("primitives.dim", p.dim());
    r.key("primitives.basis", p.render_basis().join("; "));
    Ok((r.render(), true))
}

fn coradical(alg: Algebra, window: &Window) -> Outcome {
    let w = window.resolve(&alg);
    let cor = coradical_levels(&alg, w).map_err(math)?;
    let mut r = Report::new("coradical", &alg.presentation().name);
    r.row("weight bound W", w);
    for (n, dim) in cor.dims().into_iter().skip(1) {
        r.row(&format!("level {n}"), format!("dim {dim}"));
        r.key(format!("coradical.level{n}.dim"), dim);
    }
    r.key("coradical.levels", cor.levels.len() - 1);
    r.key("coradical.nested", cor.is_nested());
    Ok((r.render(), cor.is_nested()))
}

fn sig(alg: Algebra, window: &Window) -> Outcome {
    let w = window.resolve(&alg);
    let s = signature(&alg, w).map_err(math)?;
    let mut r = Report::new("signature", &alg.presentation().name);
    r.row("weight bound W", w);
    r.row("signature", s.render());
    r.row("GK dimension", s.gk_dimension);
    if !s.complete {
        r.line("  incomplete: raise the weight bound");
    }
    r.key("signature", s.render());
    r.key("signature.complete", s.complete);
    Ok((r.render(), true))
}

fn gr(p: Presentation, weights: Option<&[u32]>) -> Outcome {
    let p = match weights {
        Some(w) => {
            if w.len() != p.num_generators() {
                return Err(usage(format!(
                    "--weights needs {} values, got {}",
                    p.num_generators(),
                    w.len()
                )));
            }
            let re = p.reweighted(w).map_err(usage)?;
            validate_presentation(&re).map_err(usage)?;
            re
        }
        None => p,
    };
    let g = associated_graded(&p).map_err(math)?;
    let alg = algebra(g.clone())?;
    let mut r = Report::new("gr", &p.name);
    let labels: Vec<String> = g
        .explicit_relations()
        .map(|rel| rel.label(g.alphabet()))
        .collect();
    r.row("nontrivial relations", if labels.is_empty() { "none (commutative)".to_string() } else { labels.join(", ") });
    r.line("");
    for l in super::print_presentation(&g).lines() {
        r.line(format!("  {l}"));
    }
    r.key("gr.relations", labels.len());
    r.key("gr.labels", labels.join("; "));
    r.key("gr.commutative", g.is_commutative());
    r.key("gr.graded", alg.validation().graded);
    Ok((r.render(), true))
}

fn obstruct(alg: Algebra, degree: usize) -> Outcome {
    let rep = hopf_obstruction(&alg, degree).map_err(math)?;
    let mut r = Report::new("obstruct", &alg.presentation().name);
    if let Some(n) = &rep.exponents {
        r.row("exponents n", n.render());
    }
    r.row("verdict", rep.verdict());
    r.key(
        "verdict",
        rep.obstruction.as_ref().map_or("none", |o| o.key()),
    );
    Ok((r.render(), rep.obstruction.is_none()))
}

fn compare_centers(left: Algebra, right: Algebra, window: &Window, power: u32) -> Outcome {
    let mut r = Report::new(
        "compare-centers",
        &format!("{} vs {}", left.presentation().name, right.presentation().name),
    );
    let mut dims = Vec::new();
    for (side, alg) in [("left", &left), ("right", &right)] {
        let mw = alg.alphabet().max_weight();
        let w = window
            .weight_bound
            .unwrap_or((2 * mw + 2).max((power.max(1) - 1) * mw));
        let t = truncation_algebra(alg, power, w).map_err(math)?;
        let c = center_dim(&t, t.generator_images()).map_err(math)?;
        let name = &alg.presentation().name;
        r.row(&format!("{name}: dim A+/(A+)^{power}"), t.dim());
        r.row(&format!("{name}: centre dim"), c.dim);
        r.key(format!("{side}.name"), name);
        r.key(format!("{side}.truncation.dim"), t.dim());
        r.key(format!("{side}.center.dim"), c.dim);
        dims.push((t.dim(), c.dim));
    }
    let verdict = if dims[0].0 == dims[1].0 && dims[0].1 != dims[1].1 {
        r.row(
            "verdict",
            "not isomorphic (same dimension, different centre dimension)",
        );
        "not-isomorphic"
    } else if dims[0].0 != dims[1].0 {
        r.row("verdict", "not isomorphic (different dimension)");
        "not-isomorphic"
    } else {
        r.row("verdict", "inconclusive (same dimension and centre dimension)");
        "inconclusive"
    };
    r.key("verdict", verdict);
    Ok((r.render(), true))
}
