//! Normal forms of quantifier-free definable subsets of the χ-set.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::chifn::{ChiFunction, ZeroSet};
use crate::element::Ext;
use crate::model::{ChiSetPoint, ModelSpec};
use crate::piecewise::Piecewise;
use crate::region::{Cut, Region};
use crate::term::{Formula, Term};

/// A finite union of intervals and singletons, kept sorted, disjoint and
/// with touching intervals merged, so equal sets compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetNormalForm {
    spans: Vec<(Cut, Cut)>,
}

impl SetNormalForm {
    pub fn empty() -> Self {
        Self { spans: Vec::new() }
    }

    pub fn all() -> Self {
        Self { spans: alloc::vec![(Cut::Bottom, Cut::Top)] }
    }

    pub fn point(p: ChiSetPoint) -> Self {
        Self::from_region(Region::Singleton(p))
    }

    pub fn from_region(r: Region) -> Self {
        Self::from_spans(alloc::vec![r.bounds()])
    }

    pub fn from_spans(mut spans: Vec<(Cut, Cut)>) -> Self {
        spans.retain(|(l, r)| l < r);
        spans.sort();
        let mut out: Vec<(Cut, Cut)> = Vec::with_capacity(spans.len());
        for (l, r) in spans {
            match out.last_mut() {
                Some(last) if l <= last.1 => last.1 = last.1.max(r),
                _ => out.push((l, r)),
            }
        }
        Self { spans: out }
    }

    pub fn is_empty(&self) -> bool {
        self.spans.is_empty()
    }

    pub fn items(&self) -> Vec<Region> {
        self.spans.iter().map(|(l, r)| Region::Interval(*l, *r).normalize()).collect()
    }

    pub fn member(&self, p: &ChiSetPoint) -> bool {
        let i = self.spans.partition_point(|(_, r)| r.is_below(p));
        self.spans.get(i).is_some_and(|(l, _)| l.is_below(p))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_spans(self.spans.iter().chain(&other.spans).copied().collect())
    }

    pub fn complement(&self) -> Self {
        let mut out = Vec::with_capacity(self.spans.len() + 1);
        let mut left = Cut::Bottom;
        for (l, r) in &self.spans {
            out.push((left, *l));
            left = *r;
        }
        out.push((left, Cut::Top));
        Self::from_spans(out)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.spans.len() && j < other.spans.len() {
            let (l1, r1) = self.spans[i];
            let (l2, r2) = other.spans[j];
            out.push((l1.max(l2), r1.min(r2)));
            if r1 <= r2 {
                i += 1;
            } else {
                j += 1;
            }
        }
        Self::from_spans(out)
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    /// Number of points, `None` when the set is infinite.
    pub fn cardinality(&self) -> Option<u64> {
        self.items().iter().try_fold(0u64, |acc, r| Some(acc + r.count()?))
    }

    pub fn cardinality_note(&self) -> String {
        match self.cardinality() {
            Some(n) => alloc::format!("finite: {n} points"),
            None => String::from("infinite"),
        }
    }

    /// The largest `W` such that the set is determined inside the window of
    /// levels `1..=W` and `-W..=W`; used to size brute-force comparisons.
    pub fn max_finite_level(&self) -> i64 {
        let mut m = 0;
        for (l, r) in &self.spans {
            for c in [l, r] {
                if let Some(p) = c.prev_point() {
                    m = m.max(p.level().abs() + 1);
                }
            }
        }
        m
    }

    /// Normal form of the set defined by `phi`.
    pub fn from_formula(phi: &Formula, model: &ModelSpec) -> Self {
        match phi {
            Formula::Eq(t, s) => atom_set(t, s, false, model),
            Formula::Lt(t, s) => atom_set(t, s, true, model),
            Formula::Not(a) => Self::from_formula(a, model).complement(),
            Formula::And(a, b) => Self::from_formula(a, model).intersect(&Self::from_formula(b, model)),
            Formula::Or(a, b) => Self::from_formula(a, model).union(&Self::from_formula(b, model)),
        }
    }
}

fn atom_holds(a: &Ext, b: &Ext, lt: bool) -> bool {
    if lt {
        a < b
    } else {
        a == b
    }
}

fn atom_set(t: &Term, s: &Term, lt: bool, model: &ModelSpec) -> SetNormalForm {
    let p = Piecewise::from_term(t, model);
    let q = Piecewise::from_term(s, model);
    let mut spans = Vec::new();
    let mut fixes: Vec<ChiSetPoint> = Vec::new();
    let (pi, qi) = (p.intervals(), q.intervals());
    let (mut i, mut j) = (0, 0);
    let mut left = Cut::Bottom;
    while i < pi.len() && j < qi.len() {
        let (_, r1, g1) = &pi[i];
        let (_, r2, g2) = &qi[j];
        let right = *r1.min(r2);
        piece_truth(left, right, g1, g2, lt, model, &mut spans, &mut fixes);
        left = right;
        if *r1 == right {
            i += 1;
        }
        if *r2 == right {
            j += 1;
        }
    }
    let mut set = SetNormalForm::from_spans(spans);
    fixes.extend(p.overrides().keys().chain(q.overrides().keys()));
    fixes.sort();
    fixes.dedup();
    for x in fixes {
        let single = SetNormalForm::point(x);
        set = if atom_holds(&p.eval(&x), &q.eval(&x), lt) { set.union(&single) } else { set.minus(&single) };
    }
    set
}

/// Truth of the atom on the piece `(l, r]` where both sides are single
/// χ-functions. Isolated points whose truth needs exact evaluation are
/// pushed to `fixes`.
#[allow(clippy::too_many_arguments)]
fn piece_truth(
    l: Cut,
    r: Cut,
    g1: &ChiFunction,
    g2: &ChiFunction,
    lt: bool,
    model: &ModelSpec,
    spans: &mut Vec<(Cut, Cut)>,
    fixes: &mut Vec<ChiSetPoint>,
) {
    if g1.is_inf() || g2.is_inf() {
        let a = if g1.is_inf() { Ext::Inf } else { Ext::zero() };
        let b = if g2.is_inf() { Ext::Inf } else { Ext::zero() };
        if atom_holds(&a, &b, lt) {
            spans.push((l, r));
        }
        return;
    }
    let h = g1.sub(g2);
    let region = Region::Interval(l, r);
    match &h {
        ChiFunction::Const(v) => {
            let holds = if lt { v < &Ext::zero() } else { *v == Ext::zero() };
            if holds {
                spans.push((l, r));
            }
        }
        ChiFunction::Proper { .. } if !lt => match h.zeros(model) {
            ZeroSet::All => spans.push((l, r)),
            ZeroSet::Points(ps) => fixes.extend(ps.into_iter().filter(|x| region.contains(x))),
        },
        ChiFunction::Proper { .. } => {
            let profile = h.dominance_analysis(&region, model).expect("normalised pieces lie inside their domains");
            let t = profile.threshold.clamp(l, r);
            if profile.sign_below == Ordering::Less {
                spans.push((l, t));
            }
            if profile.sign_above == Ordering::Less {
                spans.push((t, r));
            }
            fixes.extend(profile.exceptions.iter().map(|(x, _)| *x));
        }
    }
}

impl fmt::Display for SetNormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.spans.is_empty() {
            return f.write_str("empty");
        }
        for (i, r) in self.items().iter().enumerate() {
            if i > 0 {
                f.write_str(" U ")?;
            }
            write!(f, "{r}")?;
        }
        Ok(())
    }
}
