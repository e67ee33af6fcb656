//! Ground truth: windowed enumeration of the χ-set, brute-force evaluation,
//! seeded random generators and the axiom and lemma property suites.
//!
//! Nothing here goes through the χ-function, piecewise or definable-set
//! machinery; evaluation uses only the model operations and the term
//! evaluator, so agreement checks against those modules are not circular.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::element::{Ext, GroupElement};
use crate::model::{valuation_cmp, ChiSetPoint, GeneratorId, ModelSpec, ValuationOrdering};
use crate::rational::{q_int, Q};
use crate::term::{Formula, NamedConst, Term};

pub type OracleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> OracleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Default window size.
pub const DEFAULT_WINDOW: i64 = 32;

/// The χ-set points with ω-levels `1..=W` and ℤ-levels `-W..=W`, sorted by
/// the group order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    pub size: i64,
    pub points: Vec<ChiSetPoint>,
}

impl Window {
    pub fn contains(&self, p: &ChiSetPoint) -> bool {
        if p.chain() == 0 {
            (1..=self.size).contains(&p.level())
        } else {
            (-self.size..=self.size).contains(&p.level())
        }
    }
}

pub fn window_enum(model: &ModelSpec, w: i64) -> Window {
    assert!(w >= 1, "window size must be positive");
    let mut points: Vec<ChiSetPoint> = (1..=w).filter_map(|l| ChiSetPoint::new(0, l)).collect();
    for j in 1..=model.num_zchains() {
        points.extend((-w..=w).filter_map(|l| ChiSetPoint::new(j, l)));
    }
    points.sort_by_key(|p| p.element());
    Window { size: w, points }
}

/// Points of the window satisfying `phi`, by direct evaluation.
pub fn brute_force_set(phi: &Formula, window: &Window, model: &ModelSpec) -> Vec<ChiSetPoint> {
    window.points.iter().filter(|p| phi.eval(&Ext::Fin(p.element()), model)).copied().collect()
}

/// `Σ qᵢ·χ^{kᵢ}(p) + α`, computed by iterating `χ` and `χ⁻¹` on elements.
pub fn eval_chi_sum(terms: &[(i64, Q)], alpha: &GroupElement, p: &ChiSetPoint, model: &ModelSpec) -> Ext {
    let mut acc = Ext::Fin(alpha.clone());
    for (k, q) in terms {
        let mut v = Ext::Fin(p.element());
        for _ in 0..k.unsigned_abs() {
            v = if *k > 0 { model.chi_ext(&v) } else { model.chi_inv(&v) };
        }
        let scaled = match v {
            Ext::Fin(x) => Ext::Fin(x.scale(q)),
            Ext::Inf => Ext::Inf,
        };
        acc = acc.add(&scaled);
    }
    acc
}

/// Shape of random elements.
#[derive(Clone, Debug)]
pub struct RandomParams {
    pub max_support: usize,
    /// ω-levels are drawn from `0..=level_bound`, ℤ-levels from
    /// `-level_bound..=level_bound`.
    pub level_bound: i64,
    /// Numerators and denominators are bounded by this.
    pub coef_bound: i64,
    /// Probability that a class is drawn at a deep level (up to 10⁶).
    pub deep_prob: f64,
    /// Probability that a coefficient is `±1`.
    pub unit_prob: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        Self { max_support: 4, level_bound: 6, coef_bound: 5, deep_prob: 0.05, unit_prob: 0.4 }
    }
}

pub const DEEP_LEVEL: i64 = 1_000_000;

pub fn random_coefficient<R: Rng>(rng: &mut R, params: &RandomParams) -> Q {
    let sign = if rng.random_bool(0.5) { 1 } else { -1 };
    if rng.random_bool(params.unit_prob) {
        return q_int(sign);
    }
    let n = rng.random_range(1..=params.coef_bound.max(1));
    let d = rng.random_range(1..=params.coef_bound.max(1));
    Q::new(BigInt::from(sign * n), BigInt::from(d))
}

fn random_level<R: Rng>(rng: &mut R, chain: u32, params: &RandomParams) -> i64 {
    let bound = if rng.random_bool(params.deep_prob) { DEEP_LEVEL } else { params.level_bound };
    if chain == 0 {
        rng.random_range(0..=bound)
    } else {
        rng.random_range(-bound..=bound)
    }
}

pub fn random_generator<R: Rng>(model: &ModelSpec, rng: &mut R, params: &RandomParams) -> GeneratorId {
    let loose = model.loose();
    if !loose.is_empty() && rng.random_bool(0.25) {
        return loose[rng.random_range(0..loose.len())].at;
    }
    let chain = rng.random_range(0..=model.num_zchains());
    GeneratorId::zed(chain, random_level(rng, chain, params))
}

pub fn random_element_with<R: Rng>(model: &ModelSpec, rng: &mut R, params: &RandomParams) -> GroupElement {
    let n = rng.random_range(0..=params.max_support);
    let mut x = GroupElement::zero();
    for _ in 0..n {
        let g = random_generator(model, rng, params);
        x.add_term(g, &random_coefficient(rng, params));
    }
    x
}

/// A reproducible random element: the same seed gives the same element.
pub fn random_element(model: &ModelSpec, seed: u64, params: &RandomParams) -> GroupElement {
    random_element_with(model, &mut rng(seed), params)
}

pub fn random_point<R: Rng>(model: &ModelSpec, rng: &mut R, params: &RandomParams) -> ChiSetPoint {
    let chain = rng.random_range(0..=model.num_zchains());
    let l = random_level(rng, chain, params);
    ChiSetPoint::new(chain, if chain == 0 { l.max(1) } else { l }).expect("level is valid")
}

/// Random proper χ-function data: `(terms, alpha)` with at most `n_max`
/// terms, exponents in `-k_bound..=k_bound` and at most `alpha_support`
/// classes in `α`. Terms are sorted and nonzero.
pub fn random_chifn_parts<R: Rng>(
    model: &ModelSpec,
    rng: &mut R,
    n_max: usize,
    k_bound: i64,
    alpha_support: usize,
) -> (Vec<(i64, Q)>, GroupElement) {
    let params = RandomParams {
        max_support: alpha_support,
        level_bound: 10,
        deep_prob: 0.0,
        unit_prob: 0.6,
        ..Default::default()
    };
    if rng.random_bool(0.1) {
        let k = rng.random_range(-k_bound..=k_bound);
        return (alloc::vec![(k, q_int(1))], GroupElement::zero());
    }
    let n = rng.random_range(1..=n_max.max(1));
    let mut ks: Vec<i64> = (0..n).map(|_| rng.random_range(-k_bound..=k_bound)).collect();
    ks.sort_unstable();
    ks.dedup();
    let terms: Vec<(i64, Q)> = ks.into_iter().map(|k| (k, random_coefficient(rng, &params))).collect();
    if terms.len() < alpha_support && rng.random_bool(0.25) {
        if let Some(alpha) = planted_alpha(model, rng, &terms) {
            return (terms, alpha);
        }
    }
    let alpha = if rng.random_bool(0.1) { GroupElement::zero() } else { random_element_with(model, rng, &params) };
    (terms, alpha)
}

/// An `α` that sends a random domain point into the χ-set: it cancels every
/// `qᵢ·χ^{kᵢ}` term there and adds a unit `-g`.
fn planted_alpha<R: Rng>(model: &ModelSpec, rng: &mut R, terms: &[(i64, Q)]) -> Option<GroupElement> {
    let chain = rng.random_range(0..=model.num_zchains());
    let level = rng.random_range(-5..=5) - terms[0].0;
    let p = ChiSetPoint::new(chain, level)?;
    let mut alpha = GroupElement::zero();
    for (k, q) in terms {
        alpha.add_term(p.iterate(*k)?.generator(), q);
    }
    let target = random_point(model, rng, &RandomParams { deep_prob: 0.0, level_bound: 8, ..Default::default() });
    alpha.add_term(target.generator(), &-q_int(1));
    Some(alpha)
}

/// Small literal elements that line up with window points often enough to
/// exercise cancellation.
fn random_literal<R: Rng>(model: &ModelSpec, rng: &mut R) -> GroupElement {
    let params = RandomParams { max_support: 3, level_bound: 8, deep_prob: 0.0, unit_prob: 0.7, coef_bound: 3 };
    random_element_with(model, rng, &params)
}

pub fn random_term<R: Rng>(model: &ModelSpec, rng: &mut R, depth: usize) -> Term {
    let leaf = depth <= 1 || rng.random_bool(0.2);
    if leaf {
        return match rng.random_range(0..10) {
            0..=4 => Term::Var,
            5 => Term::Const(NamedConst::C),
            6 => Term::Const(NamedConst::D),
            7 => Term::Const(match rng.random_range(0..3) {
                0 => NamedConst::Inf,
                _ => NamedConst::Zero,
            }),
            _ => Term::Literal(random_literal(model, rng)),
        };
    }
    let d = depth - 1;
    match rng.random_range(0..10) {
        // `a - b` is `a + (-b)`, one level deeper on the right
        4 if d >= 2 => Term::sub(random_term(model, rng, d), random_term(model, rng, d - 1)),
        0..=2 | 4 => Term::add(random_term(model, rng, d), random_term(model, rng, d)),
        3 => Term::neg(random_term(model, rng, d)),
        5..=7 => Term::chi(random_term(model, rng, d)),
        8 => Term::chi_inv(random_term(model, rng, d)),
        _ => Term::div(random_term(model, rng, d), rng.random_range(1..=3)),
    }
}

pub fn random_formula<R: Rng>(model: &ModelSpec, rng: &mut R, term_depth: usize, depth: usize) -> Formula {
    if depth <= 1 || rng.random_bool(0.35) {
        let t = random_term(model, rng, term_depth);
        let s = random_term(model, rng, term_depth.min(3));
        return if rng.random_bool(0.5) { Formula::Lt(t, s) } else { Formula::Eq(t, s) };
    }
    let d = depth - 1;
    match rng.random_range(0..3) {
        0 => Formula::not(random_formula(model, rng, term_depth, d)),
        1 => Formula::and(random_formula(model, rng, term_depth, d), random_formula(model, rng, term_depth, d)),
        _ => Formula::or(random_formula(model, rng, term_depth, d), random_formula(model, rng, term_depth, d)),
    }
}

/// Outcome of a property on one sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail,
    /// The hypothesis of the property does not hold for this sample.
    Vacuous,
}

impl From<bool> for Check {
    fn from(ok: bool) -> Self {
        if ok {
            Check::Pass
        } else {
            Check::Fail
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyResult {
    pub name: String,
    pub samples: usize,
    pub witness: Option<Vec<GroupElement>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<PropertyResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.results.iter().all(|r| r.witness.is_none())
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.results.iter().filter(|r| r.witness.is_some())
    }

    pub fn display<'a>(&'a self, model: Option<&'a ModelSpec>) -> ReportDisplay<'a> {
        ReportDisplay { report: self, model }
    }
}

pub struct ReportDisplay<'a> {
    report: &'a Report,
    model: Option<&'a ModelSpec>,
}

impl fmt::Display for ReportDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.report.results {
            match &r.witness {
                None => writeln!(f, "PASS {} n={}", r.name, r.samples)?,
                Some(w) => {
                    f.write_str("FAIL ")?;
                    f.write_str(&r.name)?;
                    f.write_str(" witness=")?;
                    for (i, x) in w.iter().enumerate() {
                        if i > 0 {
                            f.write_str("; ")?;
                        }
                        write!(f, "{}", x.display(self.model))?;
                    }
                    writeln!(f)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(None).fmt(f)
    }
}

/// The contraction under test; the model's own `χ` unless a mutation is
/// being injected.
pub type ChiFn<'a> = &'a dyn Fn(&GroupElement) -> GroupElement;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub samples: usize,
    pub seed: u64,
    pub params: RandomParams,
    pub window: i64,
    /// Hypothesis-conditioned properties give up after this many draws per
    /// required sample.
    pub max_tries_factor: usize,
}

impl SuiteConfig {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed, params: RandomParams::default(), window: DEFAULT_WINDOW, max_tries_factor: 50 }
    }
}

type Gen<'a> = Box<dyn Fn(&mut OracleRng) -> Vec<GroupElement> + 'a>;
type Prop<'a> = Box<dyn Fn(&[GroupElement]) -> Check + 'a>;

/// Greedily drops support terms from the witness while it still fails.
fn shrink(witness: Vec<GroupElement>, prop: &dyn Fn(&[GroupElement]) -> Check) -> Vec<GroupElement> {
    let mut w = witness;
    loop {
        let mut improved = false;
        'outer: for i in 0..w.len() {
            let gens: Vec<GeneratorId> = w[i].support().copied().collect();
            for g in gens {
                let mut cand = w.clone();
                cand[i] = cand[i].filter(|h| *h != g);
                if prop(&cand) == Check::Fail {
                    w = cand;
                    improved = true;
                    break 'outer;
                }
            }
        }
        if !improved {
            return w;
        }
    }
}

fn run_property(name: &str, cfg: &SuiteConfig, index: u64, gen: &Gen<'_>, prop: &Prop<'_>) -> PropertyResult {
    let mut r = rng(cfg.seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut passed = 0;
    let max_tries = cfg.samples.saturating_mul(cfg.max_tries_factor).max(1);
    let mut tries = 0;
    while passed < cfg.samples && tries < max_tries {
        tries += 1;
        let sample = gen(&mut r);
        match prop(&sample) {
            Check::Pass => passed += 1,
            Check::Vacuous => {}
            Check::Fail => {
                let w = shrink(sample, prop.as_ref());
                return PropertyResult { name: name.into(), samples: passed, witness: Some(w) };
            }
        }
    }
    PropertyResult { name: name.into(), samples: passed, witness: None }
}

fn neg_of(x: &GroupElement) -> GroupElement {
    -x
}

/// The axiom and lemma suite with the model's own `χ`.
pub fn axiom_suite(model: &ModelSpec, samples: usize, seed: u64) -> Report {
    let chi = |x: &GroupElement| model.chi(x);
    axiom_suite_with(model, &SuiteConfig::new(samples, seed), &chi)
}

/// The axiom and lemma suite against an arbitrary contraction `chi`.
pub fn axiom_suite_with(model: &ModelSpec, cfg: &SuiteConfig, chi: ChiFn<'_>) -> Report {
    let params = cfg.params.clone();
    let window = window_enum(model, cfg.window);
    let c = model.c().element();
    let elem = {
        let params = params.clone();
        move |r: &mut OracleRng| random_element_with(model, r, &params)
    };
    let abs = |x: &GroupElement| x.abs();
    let point_of = |x: &GroupElement| model.point_of(x);

    let mut props: Vec<(&str, Gen<'_>, Prop<'_>)> = Vec::new();
    let e1 = elem.clone();
    let one: Gen<'_> = Box::new(move |r| alloc::vec![e1(r)]);
    let e2 = elem.clone();
    let two: Gen<'_> = Box::new(move |r| alloc::vec![e2(r), e2(r)]);
    let gen_one = || -> Gen<'_> {
        let e = elem.clone();
        Box::new(move |r| alloc::vec![e(r)])
    };
    let gen_two = || -> Gen<'_> {
        let e = elem.clone();
        Box::new(move |r| alloc::vec![e(r), e(r)])
    };
    let gen_window_pair = || -> Gen<'_> {
        let pts = window.points.clone();
        Box::new(move |r| {
            let a = pts[r.random_range(0..pts.len())];
            let b = pts[r.random_range(0..pts.len())];
            alloc::vec![a.element(), b.element()]
        })
    };
    let gen_points = |n: usize| -> Gen<'_> {
        let params = params.clone();
        Box::new(move |r| {
            let k = r.random_range(1..=n);
            let mut pts: Vec<ChiSetPoint> = (0..k).map(|_| random_point(model, r, &params)).collect();
            pts.sort();
            pts.dedup();
            pts.iter().map(ChiSetPoint::element).collect()
        })
    };

    props.push(("ax1_zero", one, Box::new(move |s| (chi(&s[0]).is_zero() == s[0].is_zero()).into())));
    props.push((
        "ax2_monotone",
        two,
        Box::new(move |s| {
            let (x, y) = if s[0] <= s[1] { (&s[0], &s[1]) } else { (&s[1], &s[0]) };
            (chi(x) <= chi(y)).into()
        }),
    ));
    props.push(("ax3_odd", gen_one(), Box::new(move |s| (chi(&neg_of(&s[0])) == -chi(&s[0])).into())));
    props.push(("ax4_double", gen_one(), Box::new(move |s| (chi(&s[0].scale(&q_int(2))) == chi(&s[0])).into())));
    let p4 = params.clone();
    props.push((
        "ax4_archimedean",
        Box::new(move |r| {
            let x = random_element_with(model, r, &p4);
            let q = random_coefficient(r, &p4).abs();
            let noise = random_element_with(model, r, &p4);
            alloc::vec![x, GroupElement::monomial(GeneratorId::omega(0), q), noise]
        }),
        Box::new(move |s| {
            // y = q·x + (noise strictly below the class of x)
            let Some((g, _)) = s[0].dominant() else { return Check::Vacuous };
            let q = s[1].dominant().map(|(_, q)| q.clone()).unwrap_or_else(|| q_int(1));
            let y = &s[0].scale(&q) + &s[2].filter(|h| h > g);
            (chi(&y) == chi(&s[0])).into()
        }),
    ));
    props.push((
        "centripetal",
        gen_one(),
        Box::new(move |s| {
            if s[0].is_zero() {
                return Check::Vacuous;
            }
            (abs(&s[0]) > abs(&chi(&s[0]))).into()
        }),
    ));
    props.push(("nontrivial", gen_one(), Box::new(move |_| model.contains_generator(&GeneratorId::omega(0)).into())));
    let cw = c.clone();
    props.push((
        "tpdg1_least_c",
        gen_one(),
        Box::new(move |s| {
            if s[0].signum() != Ordering::Less {
                return Check::Vacuous;
            }
            let v = chi(&s[0]);
            (point_of(&v).is_some() && v >= cw).into()
        }),
    ));
    let cw2 = c.clone();
    props.push((
        "tpdg2_bijection",
        gen_window_pair(),
        Box::new(move |s| {
            let (a, b) = (&s[0], &s[1]);
            let injective = (a == b) == (chi(a) == chi(b));
            let onto = match point_of(b).and_then(|p| p.pred()) {
                Some(p) => chi(&p.element()) == *b,
                None => *b == cw2,
            };
            let image_above_c = chi(a) > cw2 && point_of(&chi(a)).is_some();
            (injective && onto && image_above_c).into()
        }),
    ));
    props.push((
        "tpdg3_successor",
        gen_window_pair(),
        Box::new(move |s| {
            let (a, b) = (&s[0], &s[1]);
            if a >= b {
                return Check::Vacuous;
            }
            let ca = chi(a);
            (*a < ca && ca <= *b).into()
        }),
    ));
    props.push((
        "tpdg4_divisible",
        gen_two(),
        Box::new(move |s| {
            let n = 1 + (s[1].len() as u64 % 5);
            (s[0].div_n(n).scale(&q_int(n as i64)) == s[0]).into()
        }),
    ));
    props.push(("cont1_3", gen_two(), Box::new(move |s| (chi(&(&s[0] + &s[1])) >= chi(&s[0]).min(chi(&s[1]))).into())));
    props.push((
        "cont1_4",
        gen_two(),
        Box::new(move |s| {
            let (ca, cb) = (chi(&s[0]), chi(&s[1]));
            if !(ca < cb && cb.signum() == Ordering::Less) {
                return Check::Vacuous;
            }
            (chi(&(&s[0] - &s[1])) == ca).into()
        }),
    ));
    props.push((
        "cont1_5",
        gen_two(),
        Box::new(move |s| {
            let (ca, cb) = (chi(&s[0]), chi(&s[1]));
            if !(ca.signum() == Ordering::Greater && ca < cb) {
                return Check::Vacuous;
            }
            (chi(&(&s[1] - &s[0])) == cb).into()
        }),
    ));
    props.push((
        "cont1_6",
        gen_two(),
        Box::new(move |s| {
            let (a, b) = if s[0] < s[1] { (&s[0], &s[1]) } else { (&s[1], &s[0]) };
            if !(b.signum() == Ordering::Greater && a.signum() == Ordering::Less) {
                return Check::Vacuous;
            }
            let (ca, cb) = (chi(&abs(a)), chi(&abs(b)));
            match ca.cmp(&cb) {
                Ordering::Greater => (chi(&(a - b)) == chi(a)).into(),
                Ordering::Less => (chi(&(b - a)) == chi(b)).into(),
                Ordering::Equal => Check::Vacuous,
            }
        }),
    ));
    props.push((
        "cont2_1",
        gen_two(),
        Box::new(move |s| {
            if valuation_cmp(&s[0], &s[1]) == ValuationOrdering::Greater {
                return Check::Vacuous;
            }
            (abs(&chi(&s[0])) >= abs(&chi(&s[1]))).into()
        }),
    ));
    props.push((
        "cont2_2",
        gen_two(),
        Box::new(move |s| {
            // y = x + (part of s[1] strictly below the class of x)
            let Some((g, _)) = s[0].dominant() else { return Check::Vacuous };
            let y = &s[0] + &s[1].filter(|h| h > g);
            if valuation_cmp(&(&s[0] - &y), &s[0]) != ValuationOrdering::Greater {
                return Check::Vacuous;
            }
            (chi(&s[0]) == chi(&y)).into()
        }),
    ));
    let e3 = elem.clone();
    props.push((
        "cont2_3",
        Box::new(move |r| (0..r.random_range(1..=4)).map(|_| e3(r)).collect()),
        Box::new(move |s| {
            let lead = (0..s.len()).find(|&i| {
                !s[i].is_zero()
                    && (0..s.len()).all(|j| j == i || valuation_cmp(&s[i], &s[j]) == ValuationOrdering::Less)
            });
            let Some(k) = lead.map(|i| &s[i]) else {
                return Check::Vacuous;
            };
            let sum = s.iter().fold(GroupElement::zero(), |acc, x| &acc + x);
            (chi(&sum) == chi(k)).into()
        }),
    ));
    props.push((
        "cont2_4",
        gen_one(),
        Box::new(move |s| {
            if s[0].is_zero() {
                return Check::Vacuous;
            }
            (valuation_cmp(&chi(&s[0]), &s[0]) == ValuationOrdering::Greater).into()
        }),
    ));
    let pq = params.clone();
    let pts = gen_points(4);
    props.push((
        "indep",
        Box::new(move |r| {
            let mut s = pts(r);
            let qs: Vec<GroupElement> = (0..s.len())
                .map(|_| GroupElement::monomial(GeneratorId::omega(0), random_coefficient(r, &pq)))
                .collect();
            s.extend(qs);
            s
        }),
        Box::new(move |s| {
            let n = s.len() / 2;
            if n == 0 || s.len() % 2 != 0 || s[..n].iter().any(|a| point_of(a).is_none()) {
                return Check::Vacuous;
            }
            if s[..n].windows(2).any(|w| w[0] >= w[1]) || s[n..].iter().any(|q| q.is_zero()) {
                return Check::Vacuous;
            }
            let coef = |q: &GroupElement| q.dominant().map(|(_, q)| q.clone()).unwrap_or_else(Q::zero);
            let sum = (0..n).fold(GroupElement::zero(), |acc, i| &acc + &s[i].scale(&coef(&s[n + i])));
            let lead = chi(&s[0]);
            let expect = if coef(&s[n]).is_positive() { lead } else { -lead };
            (!sum.is_zero() && chi(&sum) == expect).into()
        }),
    ));
    let d = model.d();
    let cc = c.clone();
    props.push(("chi_d_is_c", gen_one(), Box::new(move |_| (chi(&d) == cc).into())));

    let results =
        props.iter().enumerate().map(|(i, (name, gen, prop))| run_property(name, cfg, i as u64, gen, prop)).collect();
    Report { results }
}

/// Brief description of a model for reports.
pub fn describe(model: &ModelSpec) -> String {
    format!("{} z-chains, {} loose classes", model.num_zchains(), model.loose().len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_formula;
    use alloc::string::ToString;
    use alloc::vec;

    #[test]
    fn windows() {
        let w = window_enum(&ModelSpec::prime(), 3);
        let pts: Vec<String> = w.points.iter().map(|p| p.element().to_string()).collect();
        assert_eq!(pts, vec!["-e1", "-e2", "-e3"]);
        let w = window_enum(&ModelSpec::with_zchains(1), 2);
        assert_eq!(w.points.len(), 7);
        assert!(w.points[0].is_c());
        assert_eq!(w.points[2], ChiSetPoint::new(1, -2).unwrap());
        assert_eq!(w.points[6], ChiSetPoint::new(1, 2).unwrap());
    }

    #[test]
    fn brute_force_examples() {
        let m = ModelSpec::prime();
        let w = window_enum(&m, 8);
        let phi = parse_formula("chi(x)+[e4] < 0", &m).unwrap();
        assert_eq!(brute_force_set(&phi, &w, &m), vec![ChiSetPoint::c(), ChiSetPoint::new(0, 2).unwrap()]);
        assert_eq!(brute_force_set(&parse_formula("x = x", &m).unwrap(), &w, &m).len(), 8);
        assert!(brute_force_set(&parse_formula("x < x", &m).unwrap(), &w, &m).is_empty());
    }

    #[test]
    fn random_elements_are_reproducible() {
        let m = ModelSpec::with_zchains(2);
        let p = RandomParams::default();
        assert_eq!(random_element(&m, 7, &p), random_element(&m, 7, &p));
        let mut r = rng(1);
        let mut chains = [0usize; 3];
        for _ in 0..1000 {
            let x = random_element_with(&m, &mut r, &p);
            assert!(x.len() <= p.max_support);
            for g in x.support() {
                chains[g.chain as usize] += 1;
            }
        }
        assert!(chains.iter().all(|&n| n > 100), "{chains:?}");
    }

    #[test]
    fn prime_model_passes() {
        let m = ModelSpec::prime();
        let report = axiom_suite(&m, 300, 0);
        assert!(report.all_passed(), "{report}");
        assert_eq!(report.to_string(), axiom_suite(&m, 300, 0).to_string());
    }

    #[test]
    fn corrupted_successor_is_caught() {
        let m = ModelSpec::prime();
        // χ that skips a level on e3
        let bad = |x: &GroupElement| {
            let y = m.chi(x);
            match y.dominant() {
                Some((g, q)) if *g == GeneratorId::omega(4) => GroupElement::monomial(GeneratorId::omega(5), q.clone()),
                _ => y,
            }
        };
        let report = axiom_suite_with(&m, &SuiteConfig::new(300, 0), &bad);
        assert!(!report.all_passed());
        let text = report.to_string();
        assert!(text.contains("FAIL tpdg"), "{text}");
    }
}
