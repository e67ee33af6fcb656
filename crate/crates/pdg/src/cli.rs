//! Batch command-line front end. Every subcommand parses its inputs, calls
//! one library procedure and formats the result.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use pdg_core::extensions::{
    adjoin_class, check_embedding, classify_simple_extension, extend_zed, quotient, DeltaCase, ExtensionPlan,
    SimpleExtensionKind, SubModel,
};
use pdg_core::oracle::{axiom_suite, brute_force_set, eval_chi_sum, window_enum, Report};
use pdg_core::term::{parse_chifn, parse_element, parse_formula, parse_term, parse_value};
use pdg_core::{
    ChiFunction, ChiSetPoint, Ext, Membership, ModelSpec, Monotonicity, Piecewise, Region, SetNormalForm, SignProfile,
    ZeroSet,
};

use crate::modelfile;

#[derive(Parser, Debug)]
#[command(name = "pdg", version, about = "Exact computations in models of divisible precontraction groups")]
struct Args {
    /// Model file; the prime model when omitted.
    #[arg(long, global = true, value_name = "FILE")]
    model: Option<PathBuf>,
    /// Window size for brute-force checks.
    #[arg(long, global = true, default_value_t = 32, value_parser = clap::value_parser!(i64).range(2..))]
    window: i64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: usize,
    /// Cross-check the result against the brute-force oracle.
    #[arg(long, global = true)]
    verify: bool,
    /// Print one JSON object instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compare two elements: prints <, = or >.
    Order {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Evaluate a term at a value.
    Eval {
        #[arg(allow_hyphen_values = true)]
        term: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Domain, monotonicity, χ-set solutions and sign of a χ-function.
    Chifn {
        #[arg(allow_hyphen_values = true)]
        function: String,
    },
    /// Piecewise χ-function table of a term on the χ-set.
    Piecewise {
        #[arg(allow_hyphen_values = true)]
        term: String,
    },
    /// Normal form of the subset of the χ-set defined by a formula.
    Defset {
        #[arg(allow_hyphen_values = true)]
        formula: String,
    },
    /// Insert ℤ-chains at special cuts, e.g. `--plan 1,1`.
    Extend {
        #[arg(long)]
        plan: String,
    },
    /// Adjoin a loose class, e.g. `--at e9/2 --succ e5`.
    Adjoin {
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, allow_hyphen_values = true)]
        succ: String,
    },
    /// Quotient by the chains from `--keep` on.
    Quotient {
        #[arg(long)]
        keep: u32,
    },
    /// Classify the simple extension of a submodel by an element, e.g.
    /// `--sub 0,2,g1`.
    Classify {
        #[arg(long)]
        sub: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
    /// Run the axiom and lemma suite on the model.
    Check,
}

/// Settings shared by all subcommands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliConfig {
    pub model: Option<PathBuf>,
    pub window: i64,
    pub seed: u64,
    pub samples: usize,
    pub json: bool,
    pub verify: bool,
}

/// Exit status and captured output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    message: String,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { message: e.to_string() }
    }
}

/// What a subcommand produced: text, its JSON twin, and whether a check it
/// ran failed.
struct Response {
    text: String,
    json: Value,
    ok: bool,
}

impl Response {
    fn new(text: String, json: Value) -> Self {
        Self { text, json, ok: true }
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: 0, stdout: rendered, stderr: String::new() }
                }
                _ => Outcome { code: 2, stdout: String::new(), stderr: rendered },
            };
        }
    };
    let cfg = CliConfig {
        model: args.model.clone(),
        window: args.window,
        seed: args.seed,
        samples: args.samples,
        json: args.json,
        verify: args.verify,
    };
    match execute(&args.command, &cfg) {
        Ok(r) => {
            let mut stdout = if cfg.json { format!("{}\n", r.json) } else { r.text };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code: if r.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(f) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {}\n", f.message) },
    }
}

fn load_model(cfg: &CliConfig) -> Result<ModelSpec, Failure> {
    match &cfg.model {
        None => Ok(ModelSpec::prime()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure { message: format!("cannot read {}: {e}", path.display()) })?;
            Ok(modelfile::parse(&text)?)
        }
    }
}

fn execute(cmd: &Command, cfg: &CliConfig) -> Result<Response, Failure> {
    let m = load_model(cfg)?;
    match cmd {
        Command::Order { a, b } => {
            let ord = m.order_cmp(&parse_element(a, &m)?, &parse_element(b, &m)?)?;
            let s = match ord {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            Ok(Response::new(s.into(), json!({"command": "order", "result": s})))
        }
        Command::Eval { term, at } => {
            let t = parse_term(term, &m)?;
            let v = t.eval(&parse_value(at, &m)?, &m);
            let s = v.display(Some(&m)).to_string();
            Ok(Response::new(s.clone(), json!({"command": "eval", "value": s})))
        }
        Command::Chifn { function } => chifn(&parse_chifn(function, &m)?, &m, cfg),
        Command::Piecewise { term } => {
            let t = parse_term(term, &m)?;
            let pw = Piecewise::from_term(&t, &m);
            let mut text = pw.table(Some(&m));
            let rows: Vec<Value> = pw
                .regions()
                .iter()
                .map(|(r, g)| json!({"region": r.to_string(), "function": g.display(Some(&m)).to_string()}))
                .collect();
            let mut out = json!({"command": "piecewise", "pieces": rows});
            let mut ok = true;
            if cfg.verify {
                let bad = window_enum(&m, cfg.window)
                    .points
                    .into_iter()
                    .find(|p| pw.eval(p) != t.eval(&Ext::Fin(p.element()), &m));
                ok = bad.is_none();
                let _ = writeln!(text, "{}", verdict(bad.map(|p| p.to_string())));
                out["oracle"] = json!(ok);
            }
            Ok(Response { text, json: out, ok })
        }
        Command::Defset { formula } => {
            let phi = parse_formula(formula, &m)?;
            let set = SetNormalForm::from_formula(&phi, &m);
            let mut text = format!("{set}\n{}\n", set.cardinality_note());
            let items: Vec<String> = set.items().iter().map(Region::to_string).collect();
            let mut out = json!({
                "command": "defset",
                "items": items,
                "cardinality": set.cardinality(),
            });
            let mut ok = true;
            if cfg.verify {
                let window = window_enum(&m, cfg.window);
                let brute: BTreeSet<_> = brute_force_set(&phi, &window, &m).into_iter().collect();
                let bad = window.points.iter().find(|p| set.member(p) != brute.contains(p));
                ok = bad.is_none();
                let _ = writeln!(text, "{}", verdict(bad.map(|p| p.to_string())));
                out["oracle"] = json!(ok);
            }
            Ok(Response { text, json: out, ok })
        }
        Command::Extend { plan } => {
            let cuts = plan
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<u32>().map_err(|_| Failure { message: format!("invalid cut `{s}`") }))
                .collect::<Result<Vec<_>, _>>()?;
            let ext = extend_zed(&m, &ExtensionPlan::new(cuts, &m)?)?;
            let inserted: Vec<String> = ext.inserted_chains.iter().map(|j| format!("b{j}")).collect();
            let mut text = format!("{}inserted: {}\n", modelfile::serialize(&ext.model), list_or_none(&inserted));
            let mut out = json!({"command": "extend", "model": modelfile::serialize(&ext.model), "inserted": ext.inserted_chains});
            let mut ok = true;
            if cfg.verify {
                let emb = check_embedding(&ext.embedding, &m, &ext.model, cfg.samples.min(1000), cfg.seed);
                let _ = writeln!(text, "embedding: {}", if emb.ok { "ok" } else { "failed" });
                for v in &emb.violations {
                    let _ = writeln!(text, "  {v}");
                }
                let report = axiom_suite(&ext.model, cfg.samples, cfg.seed);
                suite_summary(&mut text, &report);
                ok = emb.ok && report.all_passed();
                out["embedding"] = json!(emb.ok);
                out["axioms"] = json!(report.all_passed());
            }
            Ok(Response { text, json: out, ok })
        }
        Command::Adjoin { at, succ } => {
            let gap =
                modelfile::parse_position(at).ok_or_else(|| Failure { message: format!("invalid position `{at}`") })?;
            let target = modelfile::parse_position(succ)
                .ok_or_else(|| Failure { message: format!("invalid generator `{succ}`") })?;
            let new = adjoin_class(&m, gap, target)?;
            model_response("adjoin", &new, cfg)
        }
        Command::Quotient { keep } => {
            let (q, _) = quotient(&m, *keep)?;
            model_response("quotient", &q, cfg)
        }
        Command::Classify { sub, a } => classify(&m, sub, a, cfg),
        Command::Check => {
            let report = axiom_suite(&m, cfg.samples, cfg.seed);
            let text = report.display(Some(&m)).to_string();
            let results: Vec<Value> = report
                .results
                .iter()
                .map(|r| {
                    json!({
                        "property": r.name,
                        "samples": r.samples,
                        "witness": r.witness.as_ref().map(|w| w.iter().map(|x| x.display(Some(&m)).to_string()).collect::<Vec<_>>()),
                    })
                })
                .collect();
            let ok = report.all_passed();
            Ok(Response { text, json: json!({"command": "check", "passed": ok, "results": results}), ok })
        }
    }
}

fn verdict(disagreement: Option<String>) -> String {
    match disagreement {
        None => "oracle: agree".into(),
        Some(p) => format!("oracle: disagree at {p}"),
    }
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

fn suite_summary(text: &mut String, report: &Report) {
    let failed: Vec<&str> = report.failures().map(|r| r.name.as_str()).collect();
    if failed.is_empty() {
        let _ = writeln!(text, "axioms: pass ({} properties)", report.results.len());
    } else {
        let _ = writeln!(text, "axioms: fail ({})", failed.join(", "));
    }
}

fn model_response(command: &str, model: &ModelSpec, cfg: &CliConfig) -> Result<Response, Failure> {
    let mut text = modelfile::serialize(model);
    let mut out = json!({"command": command, "model": text});
    let mut ok = true;
    if cfg.verify {
        let report = axiom_suite(model, cfg.samples, cfg.seed);
        suite_summary(&mut text, &report);
        ok = report.all_passed();
        out["axioms"] = json!(ok);
    }
    Ok(Response { text, json: out, ok })
}

fn chifn(g: &ChiFunction, m: &ModelSpec, cfg: &CliConfig) -> Result<Response, Failure> {
    let mut text = String::new();
    let shown = g.display(Some(m)).to_string();
    let _ = writeln!(text, "function: {shown}");
    let domain = g.dom_of();
    let _ = writeln!(text, "domain: {domain}");
    let mono = match g.monotonicity() {
        Monotonicity::Increasing => "strictly increasing",
        Monotonicity::Decreasing => "strictly decreasing",
        Monotonicity::Constant => "constant",
    };
    let _ = writeln!(text, "monotonicity: {mono}");
    let solutions = match g.membership_solutions(m) {
        Membership::AllOfDomain => "all of domain".to_string(),
        Membership::Points(ps) => list_or_none(&ps.iter().map(|(p, q)| format!("{p} -> {q}")).collect::<Vec<_>>()),
    };
    let _ = writeln!(text, "chi-set values: {solutions}");
    let zeros = match g.zeros(m) {
        ZeroSet::All => "all".to_string(),
        ZeroSet::Points(ps) => list_or_none(&ps.iter().map(ToString::to_string).collect::<Vec<_>>()),
    };
    let _ = writeln!(text, "zeros: {zeros}");
    let mut out = json!({
        "command": "chifn",
        "function": shown,
        "domain": domain.to_string(),
        "monotonicity": mono,
        "chi_set_values": solutions,
        "zeros": zeros,
    });
    if matches!(g, ChiFunction::Proper { .. }) {
        let profile = g.dominance_analysis(&domain, m)?;
        let (l, r) = domain.bounds();
        let parts = [
            (Region::Interval(l, profile.threshold.clamp(l, r)).normalize(), profile.sign_below),
            (Region::Interval(profile.threshold.clamp(l, r), r).normalize(), profile.sign_above),
        ];
        let sign: Vec<String> = parts
            .iter()
            .filter(|(reg, _)| !reg.is_empty())
            .map(|(reg, s)| format!("{} on {reg}", sign_word(*s)))
            .chain(
                profile
                    .exceptions
                    .iter()
                    .filter(|(p, v)| ext_sign(v) != generic_sign(&profile, p))
                    .map(|(p, v)| format!("{} at {p}", sign_word(ext_sign(v)))),
            )
            .collect();
        let _ = writeln!(text, "sign: {}", sign.join("; "));
        out["sign"] = json!(sign.join("; "));
    }
    let mut ok = true;
    if cfg.verify {
        let bad = verify_chifn(g, m, cfg.window);
        ok = bad.is_none();
        let _ = writeln!(text, "{}", verdict(bad));
        out["oracle"] = json!(ok);
    }
    Ok(Response { text, json: out, ok })
}

fn sign_word(s: Ordering) -> &'static str {
    match s {
        Ordering::Less => "negative",
        Ordering::Equal => "zero",
        Ordering::Greater => "positive",
    }
}

fn ext_sign(v: &Ext) -> Ordering {
    match v {
        Ext::Fin(x) => x.signum(),
        Ext::Inf => Ordering::Greater,
    }
}

fn generic_sign(profile: &SignProfile, p: &ChiSetPoint) -> Ordering {
    if profile.threshold.is_below(p) {
        profile.sign_above
    } else {
        profile.sign_below
    }
}

/// First window point where the reported data disagrees with direct
/// evaluation of the χ-sum.
fn verify_chifn(g: &ChiFunction, m: &ModelSpec, w: i64) -> Option<String> {
    let ChiFunction::Proper { terms, alpha } = g else {
        return None;
    };
    let window = window_enum(m, w);
    let membership = g.membership_solutions(m);
    let mut prev: Option<Ext> = None;
    for p in window.points.iter().filter(|p| g.in_domain(p)) {
        let v = eval_chi_sum(terms, alpha, p, m);
        let in_chi_set = v.finite().and_then(|x| m.point_of(x)).is_some();
        let reported = match &membership {
            Membership::AllOfDomain => true,
            Membership::Points(ps) => ps.iter().any(|(q, _)| q == p),
        };
        let monotone = prev.as_ref().is_none_or(|u| match g.monotonicity() {
            Monotonicity::Increasing => u < &v,
            Monotonicity::Decreasing => u > &v,
            Monotonicity::Constant => u == &v,
        });
        if in_chi_set != reported || !monotone || v != g.eval(p) {
            return Some(p.to_string());
        }
        prev = Some(v);
    }
    None
}

fn classify(m: &ModelSpec, sub: &str, a: &str, cfg: &CliConfig) -> Result<Response, Failure> {
    let mut chains = BTreeSet::new();
    let mut loose = BTreeSet::new();
    for part in sub.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match part.strip_prefix('g') {
            Some(id) => {
                loose.insert(id.parse::<u32>().map_err(|_| Failure { message: format!("invalid class `{part}`") })?)
            }
            None => {
                chains.insert(part.parse::<u32>().map_err(|_| Failure { message: format!("invalid chain `{part}`") })?)
            }
        };
    }
    let sub = SubModel::new(chains, loose, m)?;
    let a = parse_element(a, m)?;
    let c = classify_simple_extension(m, &sub, &a)?;
    let first = &c.trace[0];
    let delta = match first.case {
        DeltaCase::MaxInsideChiSet => format!("max-inside-chi-set b={}", first.witness.display(Some(m))),
        DeltaCase::CutPlusNewPoint => {
            format!("cut-plus-new-point b={} cut={}", first.witness.display(Some(m)), first.cut.unwrap_or_default())
        }
        DeltaCase::SpecialCutOnly => "special-cut".to_string(),
    };
    let plan_text =
        |p: &ExtensionPlan| format!("[{}]", p.cuts().iter().map(u32::to_string).collect::<Vec<_>>().join(", "));
    let kind = match &c.kind {
        SimpleExtensionKind::GammaF(p) => format!("GammaF plan={}", plan_text(p)),
        SimpleExtensionKind::GammaFPlusLine(p, g) => {
            format!("GammaF+Qa plan={} class={}", plan_text(p), m.generator_name(g))
        }
    };
    let image = c.image_of_a.display(Some(&c.model)).to_string();
    let serialized = modelfile::serialize(&c.model);
    let mut text = format!("delta: {delta}\nkind: {kind}\nimage of a: {image}\nmodel:\n{serialized}");
    let mut out =
        json!({"command": "classify", "delta": delta, "kind": kind, "image_of_a": image, "model": serialized});
    let mut ok = true;
    if cfg.verify {
        let emb = check_embedding(&c.base_embedding, &c.base, &c.model, cfg.samples.min(1000), cfg.seed);
        let _ = writeln!(text, "embedding: {}", if emb.ok { "ok" } else { "failed" });
        let report = axiom_suite(&c.model, cfg.samples, cfg.seed);
        suite_summary(&mut text, &report);
        ok = emb.ok && report.all_passed();
        out["embedding"] = json!(emb.ok);
        out["axioms"] = json!(report.all_passed());
    }
    Ok(Response { text, json: out, ok })
}
