//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use pdg_core::extensions::{
    adjoin_class, check_embedding, classify_simple_extension, delta_gamma, extend_zed, quotient, EmbeddingMap,
    ExtensionPlan, SimpleExtensionKind, SubModel,
};
use pdg_core::oracle::{
    axiom_suite, brute_force_set, eval_chi_sum, random_chifn_parts, random_element_with, random_formula, random_term,
    rng, window_enum, RandomParams, Report,
};
use pdg_core::rational::{q_frac, q_int};
use pdg_core::term::parse_formula;
use pdg_core::{
    ChiFunction, ChiSetPoint, Cut, Ext, GeneratorId, GroupElement, Level, Membership, ModelSpec, Monotonicity,
    Piecewise, Region, SetNormalForm,
};
use rand::Rng;

const SAMPLES: usize = 10_000;
const W: i64 = 32;

type Outcome = Result<String, String>;

fn z2() -> ModelSpec {
    ModelSpec::with_zchains(2)
}

/// Two ℤ-chains and loose classes on the ω-chain and on a ℤ-chain.
fn rich() -> ModelSpec {
    let m = adjoin_class(&z2(), GeneratorId::new(0, Level::new(9, 2)), GeneratorId::omega(5)).unwrap();
    adjoin_class(&m, GeneratorId::new(1, Level::new(1, 3)), GeneratorId::zed(1, 2)).unwrap()
}

fn models() -> [ModelSpec; 3] {
    [ModelSpec::prime(), z2(), rich()]
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every property passed with the full sample count.
fn full_pass(report: &Report, filter: impl Fn(&str) -> bool, model: &ModelSpec) -> Result<usize, String> {
    let mut n = 0;
    for r in report.results.iter().filter(|r| filter(&r.name)) {
        if r.witness.is_some() {
            return Err(report
                .display(Some(model))
                .to_string()
                .lines()
                .find(|l| l.starts_with("FAIL"))
                .unwrap()
                .into());
        }
        ensure(r.samples == SAMPLES, || format!("{} ran only {} samples", r.name, r.samples))?;
        n += 1;
    }
    Ok(n)
}

fn passes_criterion_1(model: &ModelSpec, seed: u64) -> Result<Report, String> {
    let report = axiom_suite(model, SAMPLES, seed);
    full_pass(&report, |_| true, model)?;
    Ok(report)
}

fn is_lemma(name: &str) -> bool {
    name.starts_with("cont") || name == "indep"
}

fn criterion_1(reports: &mut Vec<Report>) -> Outcome {
    for (i, m) in [ModelSpec::prime(), z2()].iter().enumerate() {
        let report = passes_criterion_1(m, i as u64)?;
        reports.push(report);
    }
    let n = reports[0].results.iter().filter(|r| !is_lemma(&r.name)).count();
    Ok(format!("{n} axiom properties x 2 models, n={SAMPLES}"))
}

fn criterion_2(reports: &[Report]) -> Outcome {
    ensure(reports.len() == 2, || "axiom suite did not run".into())?;
    let mut n = 0;
    for (r, m) in reports.iter().zip([ModelSpec::prime(), z2()]) {
        n = full_pass(r, is_lemma, &m)?;
    }
    ensure(n == 9, || format!("expected 9 lemma properties, found {n}"))?;
    Ok(format!("{n} lemma properties x 2 models, n={SAMPLES}"))
}

fn criterion_3() -> Outcome {
    let mut r = rng(3);
    let (mut all, mut pts) = (0, 0);
    for i in 0..1000 {
        let m = &models()[i % 3];
        let window = window_enum(m, W);
        let (terms, alpha) = random_chifn_parts(m, &mut r, 4, 3, 4);
        let g = ChiFunction::from_parts(terms.clone(), alpha.clone());
        ensure(matches!(g, ChiFunction::Proper { .. }), || "generator produced a constant".into())?;
        let brute: Vec<ChiSetPoint> = window
            .points
            .iter()
            .filter(|p| g.in_domain(p))
            .filter(|p| matches!(eval_chi_sum(&terms, &alpha, p, m), Ext::Fin(v) if m.point_of(&v).is_some()))
            .copied()
            .collect();
        let uniform = terms.len() == 1 && terms[0].1 == q_int(1) && alpha.is_zero();
        let shown = || g.display(Some(m)).to_string();
        match g.membership_solutions(m) {
            Membership::AllOfDomain => {
                ensure(uniform, || format!("AllOfDomain for {}", shown()))?;
                let dom: Vec<_> = window.points.iter().filter(|p| g.in_domain(p)).copied().collect();
                ensure(brute == dom, || format!("window disagrees for {}", shown()))?;
                all += 1;
            }
            Membership::Points(ps) => {
                ensure(!uniform, || format!("expected AllOfDomain for {}", shown()))?;
                ensure(ps.len() <= 2, || format!("{} solutions for {}", ps.len(), shown()))?;
                for (p, q) in &ps {
                    ensure(window.contains(p), || format!("solution {p} outside the window"))?;
                    let v = eval_chi_sum(&terms, &alpha, p, m);
                    ensure(v == Ext::Fin(q.element()), || format!("wrong value at {p} for {}", shown()))?;
                }
                let ours: Vec<_> = ps.iter().map(|(p, _)| *p).collect();
                ensure(ours == brute, || format!("window disagrees for {}", shown()))?;
                pts += ps.len();
            }
        }
    }
    Ok(format!("1000 functions, {all} uniform, {pts} isolated solutions, W={W}"))
}

/// Intervals tile the χ-set from bottom to top.
fn tiles(pw: &Piecewise) -> bool {
    let iv = pw.intervals();
    let mut left = Cut::Bottom;
    for (l, r, _) in iv {
        if *l != left || l >= r {
            return false;
        }
        left = *r;
    }
    left == Cut::Top
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut pieces = 0;
    for i in 0..500 {
        let m = &models()[i % 3];
        let t = random_term(m, &mut r, 6);
        ensure(t.depth() <= 6, || "term too deep".into())?;
        let pw = Piecewise::from_term(&t, m);
        ensure(tiles(&pw), || format!("pieces do not tile for {}", t.display(Some(m))))?;
        pieces += pw.piece_count();
        for p in window_enum(m, W).points {
            let (a, b) = (pw.eval(&p), t.eval(&Ext::Fin(p.element()), m));
            ensure(a == b, || {
                format!(
                    "{} at {p}: piecewise {} vs direct {}",
                    t.display(Some(m)),
                    a.display(Some(m)),
                    b.display(Some(m))
                )
            })?;
        }
    }
    Ok(format!("500 terms, {pieces} pieces, W={W}"))
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut items = 0;
    for i in 0..500 {
        let m = &models()[i % 3];
        let phi = random_formula(m, &mut r, 4, 3);
        let set = SetNormalForm::from_formula(&phi, m);
        let regions = set.items();
        for w in regions.windows(2) {
            ensure(w[0].bounds().1 < w[1].bounds().0, || format!("items overlap or touch: {set}"))?;
        }
        for reg in &regions {
            ensure(matches!(reg, Region::Interval(..) | Region::Singleton(_)) && !reg.is_empty(), || {
                format!("bad item in {set}")
            })?;
        }
        items += regions.len();
        let window = window_enum(m, W);
        let brute: BTreeSet<ChiSetPoint> = brute_force_set(&phi, &window, m).into_iter().collect();
        if let Some(p) = window.points.iter().find(|p| set.member(p) != brute.contains(p)) {
            return Err(format!("{} disagrees at {p}", phi.display(Some(m))));
        }
    }
    Ok(format!("500 formulas, {items} items, W={W}"))
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut pairs = 0;
    for i in 0..200 {
        let m = &models()[i % 3];
        let (terms, alpha) = random_chifn_parts(m, &mut r, 4, 3, 4);
        let g = ChiFunction::from_parts(terms.clone(), alpha.clone());
        let values: Vec<Ext> = window_enum(m, W)
            .points
            .iter()
            .filter(|p| g.in_domain(p))
            .map(|p| eval_chi_sum(&terms, &alpha, p, m))
            .collect();
        let dir = g.monotonicity();
        ensure(dir != Monotonicity::Constant, || "proper function reported constant".into())?;
        for w in values.windows(2) {
            let ok = match dir {
                Monotonicity::Increasing => w[0] < w[1],
                _ => w[0] > w[1],
            };
            ensure(ok, || format!("{} is not {dir:?}", g.display(Some(m))))?;
            pairs += 1;
        }
        let distinct: BTreeSet<&Ext> = values.iter().collect();
        ensure(distinct.len() == values.len(), || format!("{} is not injective", g.display(Some(m))))?;
    }
    Ok(format!("200 functions, {pairs} consecutive pairs"))
}

fn criterion_7() -> Outcome {
    let p = ModelSpec::prime();
    let plan = |cuts: Vec<u32>, m: &ModelSpec| ExtensionPlan::new(cuts, m).map_err(|e| e.to_string());
    let one = extend_zed(&p, &plan(vec![1], &p)?).map_err(|e| e.to_string())?;
    let oneone = extend_zed(&p, &plan(vec![1, 1], &p)?).map_err(|e| e.to_string())?;
    // [1, 2] over the prime model: cut 2 exists once the first chain is in.
    let onetwo = extend_zed(&one.model, &plan(vec![2], &one.model)?).map_err(|e| e.to_string())?;
    for (i, m) in [&one.model, &oneone.model, &onetwo.model].into_iter().enumerate() {
        passes_criterion_1(m, 70 + i as u64)?;
    }
    let composite = EmbeddingMap {
        chains: one.embedding.chains.iter().map(|c| onetwo.embedding.chains[c.target as usize]).collect(),
        ..EmbeddingMap::default()
    };
    let inclusions = [
        (&one.embedding, &p, &one.model),
        (&oneone.embedding, &p, &oneone.model),
        (&onetwo.embedding, &one.model, &onetwo.model),
        (&composite, &p, &onetwo.model),
    ];
    for (k, (emb, src, dst)) in inclusions.into_iter().enumerate() {
        let c = check_embedding(emb, src, dst, 1000, k as u64);
        ensure(c.ok, || format!("inclusion {k}: {:?}", c.violations))?;
    }
    ensure(onetwo.inserted_chains == vec![2], || format!("[1,2] inserted {:?}", onetwo.inserted_chains))?;
    for cuts in [vec![1], vec![1, 1]] {
        let a = extend_zed(&p, &plan(cuts.clone(), &p)?).map_err(|e| e.to_string())?;
        let b = extend_zed(&p, &plan(cuts.clone(), &p)?).map_err(|e| e.to_string())?;
        ensure(a.inserted_chains == b.inserted_chains, || "inserted chains differ".into())?;
        let iso = EmbeddingMap::identity(&a.model);
        let there = check_embedding(&iso, &a.model, &b.model, 1000, 1);
        let back = check_embedding(&iso, &b.model, &a.model, 1000, 2);
        ensure(there.ok && back.ok && a.model == b.model, || format!("plan {cuts:?}: runs not isomorphic"))?;
    }
    Ok("plans [1], [1,1], [1,2]: suites pass, 4 inclusions and 2 isomorphisms check".into())
}

fn criterion_8() -> Outcome {
    let m = z2();
    for keep in [1, 2] {
        let (q, proj) = quotient(&m, keep).map_err(|e| e.to_string())?;
        let mut r = rng(80 + keep as u64);
        for _ in 0..1000 {
            let x = random_element_with(&m, &mut r, &RandomParams::default());
            let lhs = proj.apply(&m.chi(&x));
            let rhs = q.chi(&proj.apply(&x));
            ensure(lhs == rhs, || format!("keep={keep}: projection and chi disagree at {x}"))?;
        }
        passes_criterion_1(&q, 80 + keep as u64)?;
    }
    Ok("keep 1 and 2: 1000 samples each, quotients pass the suite".into())
}

fn random_sub(m: &ModelSpec, r: &mut impl Rng) -> SubModel {
    let mut chains: BTreeSet<u32> = [0].into_iter().collect();
    chains.extend((1..=m.num_zchains()).filter(|_| r.random_bool(0.5)));
    let loose = m.loose().iter().filter(|l| chains.contains(&l.at.chain) && r.random_bool(0.5)).map(|l| l.id).collect();
    SubModel::new(chains, loose, m).unwrap()
}

/// Classes of `sub` at window levels, plus one level below each ℤ-window so
/// every window point has its predecessor.
fn sub_classes(sub: &SubModel, m: &ModelSpec) -> Vec<GeneratorId> {
    let mut out: Vec<GeneratorId> = m.loose().iter().filter(|l| sub.loose.contains(&l.id)).map(|l| l.at).collect();
    for &j in &sub.chains {
        let lo = if j == 0 { 0 } else { -W - 1 };
        out.extend((lo..=W).map(|l| GeneratorId::zed(j, l)));
    }
    out
}

fn criterion_9() -> Outcome {
    let m = z2();
    let a = &(&-m.c().element() + &GroupElement::unit(GeneratorId::zed(1, 0)))
        + &GroupElement::unit(GeneratorId::zed(2, 0));
    let c = classify_simple_extension(&m, &SubModel::omega(), &a).map_err(|e| e.to_string())?;
    let pivots: Vec<GeneratorId> = c.trace.iter().map(|t| t.pivot).collect();
    ensure(
        matches!(&c.kind, SimpleExtensionKind::GammaF(p) if p.cuts() == [1, 1]) && c.model == m && c.image_of_a == a,
        || format!("example classified as {:?}", c.kind),
    )?;
    ensure(pivots == [GeneratorId::zed(1, 0), GeneratorId::zed(2, 0)], || format!("pivots {pivots:?}"))?;

    let amb = rich();
    let window = window_enum(&amb, W);
    let params = RandomParams { deep_prob: 0.0, ..RandomParams::default() };
    let qs = [q_int(1), q_int(-1), q_int(2), q_frac(1, 3)];
    let mut r = rng(9);
    let (mut pairs, mut new_points) = (0, 0);
    while pairs < 100 {
        let sub = random_sub(&amb, &mut r);
        let a = random_element_with(&amb, &mut r, &params);
        let Ok(report) = delta_gamma(&amb, &sub, &a) else { continue };
        pairs += 1;
        let inside = a.filter(|g| sub.contains_generator(g, &amb));
        let mut xs: Vec<GroupElement> = sub_classes(&sub, &amb)
            .into_iter()
            .map(|h| &-&inside - &GroupElement::unit(h))
            .chain(std::iter::once(-&inside))
            .collect();
        xs.extend(
            (0..100).map(|_| random_element_with(&amb, &mut r, &params).filter(|g| sub.contains_generator(g, &amb))),
        );
        let mut sampled: BTreeSet<ChiSetPoint> = BTreeSet::new();
        for x in &xs {
            for q in &qs {
                let y = x + &a.scale(q);
                let v = -&amb.chi(&y.abs());
                let p = amb.point_of(&v).ok_or("chi left the chi-set")?;
                ensure(report.contains(&v, &sub, &amb), || format!("{p} sampled but not reported"))?;
                if window.contains(&p) {
                    sampled.insert(p);
                }
            }
        }
        let reported: BTreeSet<ChiSetPoint> =
            window.points.iter().filter(|p| report.contains(&p.element(), &sub, &amb)).copied().collect();
        ensure(sampled == reported, || {
            format!(
                "delta mismatch for a = {}: {} sampled, {} reported",
                a.display(Some(&amb)),
                sampled.len(),
                reported.len()
            )
        })?;
        let outside = reported.iter().filter(|p| !sub.chains.contains(&p.chain())).count();
        ensure(outside <= 1, || format!("{outside} points outside chi(sub)"))?;
        new_points += outside;
    }
    Ok(format!("example is GammaF [1, 1]; 100 pairs agree with sampling, {new_points} new points"))
}

fn criterion_10() -> Outcome {
    let m = ModelSpec::prime();
    let phi = parse_formula("x = c or (x < 0 and not(ichi(x) = inf))", &m).map_err(|e| e.to_string())?;
    let set = SetNormalForm::from_formula(&phi, &m);
    ensure(set == SetNormalForm::all(), || format!("got {set}"))?;
    let window = window_enum(&m, W);
    ensure(brute_force_set(&phi, &window, &m) == window.points, || "brute force disagrees".into())?;
    ensure(set.cardinality().is_none(), || "expected an infinite set".into())?;
    Ok(format!("{set}, {}", set.cardinality_note()))
}

fn criterion_11() -> Outcome {
    let first = common::transcript();
    let second = common::transcript();
    ensure(first == second, || "two runs differ".into())?;
    let golden = std::fs::read_to_string(common::golden_path()).map_err(|e| e.to_string())?;
    ensure(first == golden, || "transcript differs from the golden file".into())?;
    Ok(format!("{} commands, {} bytes", common::COMMANDS.len(), first.len()))
}

fn main() -> ExitCode {
    let mut reports = Vec::new();
    let mut failed = 0;
    let mut report = |n: usize, name: &str, limit: Option<u64>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let mut out = f();
        let took = start.elapsed();
        if let (Ok(_), Some(s)) = (&out, limit) {
            if took > Duration::from_secs(s) {
                out = Err(format!("took {:.1}s, limit {s}s", took.as_secs_f64()));
            }
        }
        match out {
            Ok(d) => println!("PASS criterion {n:>2} {name}: {d} ({:.2}s)", took.as_secs_f64()),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {n:>2} {name}: {e} ({:.2}s)", took.as_secs_f64());
            }
        }
    };
    report(1, "axiom suite", Some(10), &mut || criterion_1(&mut reports));
    let lemma_reports = reports.clone();
    report(2, "lemma suite", None, &mut || criterion_2(&lemma_reports));
    report(3, "membership solutions", Some(30), &mut criterion_3);
    report(4, "terms to piecewise", Some(60), &mut criterion_4);
    report(5, "formula normal forms", None, &mut criterion_5);
    report(6, "monotonicity", None, &mut criterion_6);
    report(7, "z-chain extensions", None, &mut criterion_7);
    report(8, "quotients", None, &mut criterion_8);
    report(9, "simple extensions", None, &mut criterion_9);
    report(10, "infinite discrete definable set", None, &mut criterion_10);
    report(11, "golden transcripts", None, &mut criterion_11);
    if failed == 0 {
        println!("acceptance: all 11 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 11 criteria failed");
        ExitCode::FAILURE
    }
}
