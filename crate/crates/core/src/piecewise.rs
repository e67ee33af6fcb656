//! Functions on the χ-set given piecewise by χ-functions.
//!
//! A [`Piecewise`] is a partition of the χ-set into consecutive intervals,
//! each carrying a χ-function, plus finitely many single-point overrides
//! with exact values. Breakpoints are cuts, so thresholds at chain
//! boundaries (which are not points) are represented exactly.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use num_traits::Signed;

use crate::chifn::{ChiFunction, Membership};
use crate::element::Ext;
use crate::error::{Error, Result};
use crate::model::{ChiSetPoint, ModelSpec};
use crate::rational::q_int;
use crate::region::{Cut, Region};
use crate::term::Term;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piecewise {
    intervals: Vec<(Cut, Cut, ChiFunction)>,
    overrides: BTreeMap<ChiSetPoint, Ext>,
}

impl Piecewise {
    pub fn from_chifn(g: ChiFunction) -> Self {
        let mut p = Self { intervals: alloc::vec![(Cut::Bottom, Cut::Top, g)], overrides: BTreeMap::new() };
        p.normalize();
        p
    }

    pub fn constant(v: Ext) -> Self {
        Self::from_chifn(ChiFunction::Const(v))
    }

    pub fn identity() -> Self {
        Self::from_chifn(ChiFunction::identity())
    }

    /// Builds and normalises; `intervals` must partition the χ-set in order.
    pub fn from_parts(intervals: Vec<(Cut, Cut, ChiFunction)>, overrides: BTreeMap<ChiSetPoint, Ext>) -> Self {
        let mut p = Self { intervals, overrides };
        p.assert_partition();
        p.normalize();
        p
    }

    pub fn intervals(&self) -> &[(Cut, Cut, ChiFunction)] {
        &self.intervals
    }

    pub fn overrides(&self) -> &BTreeMap<ChiSetPoint, Ext> {
        &self.overrides
    }

    /// Number of pieces, counting overrides.
    pub fn piece_count(&self) -> usize {
        self.intervals.len() + self.overrides.len()
    }

    fn assert_partition(&self) {
        assert!(!self.intervals.is_empty(), "empty partition");
        assert_eq!(self.intervals[0].0, Cut::Bottom);
        assert_eq!(self.intervals[self.intervals.len() - 1].1, Cut::Top);
        for w in self.intervals.windows(2) {
            assert_eq!(w[0].1, w[1].0, "pieces must be consecutive");
        }
        for (l, r, _) in &self.intervals {
            assert!(l < r, "pieces must be nonempty");
        }
    }

    fn interval_index(&self, p: &ChiSetPoint) -> usize {
        self.intervals.partition_point(|(_, r, _)| r.is_below(p))
    }

    /// The χ-function governing `p`, ignoring overrides.
    pub fn function_at(&self, p: &ChiSetPoint) -> &ChiFunction {
        &self.intervals[self.interval_index(p)].2
    }

    pub fn eval(&self, p: &ChiSetPoint) -> Ext {
        match self.overrides.get(p) {
            Some(v) => v.clone(),
            None => self.function_at(p).eval(p),
        }
    }

    /// Splits pieces at their domain cuts, merges equal neighbours and drops
    /// overrides that agree with the enclosing piece.
    fn normalize(&mut self) {
        let mut split: Vec<(Cut, Cut, ChiFunction)> = Vec::with_capacity(self.intervals.len());
        for (l, r, g) in core::mem::take(&mut self.intervals) {
            let dom = g.dom_cut();
            if dom <= l {
                split.push((l, r, g));
            } else if dom >= r {
                split.push((l, r, ChiFunction::Const(Ext::Inf)));
            } else {
                split.push((l, dom, ChiFunction::Const(Ext::Inf)));
                split.push((dom, r, g));
            }
        }
        let mut merged: Vec<(Cut, Cut, ChiFunction)> = Vec::with_capacity(split.len());
        for (l, r, g) in split {
            match merged.last_mut() {
                Some(last) if last.2 == g => last.1 = r,
                _ => merged.push((l, r, g)),
            }
        }
        self.intervals = merged;
        let overrides = core::mem::take(&mut self.overrides);
        self.overrides = overrides.into_iter().filter(|(p, v)| self.function_at(p).eval(p) != *v).collect();
    }

    fn map_values(&self, f: impl Fn(&ChiFunction) -> ChiFunction, v: impl Fn(&Ext) -> Ext) -> Self {
        let intervals = self.intervals.iter().map(|(l, r, g)| (*l, *r, f(g))).collect();
        let overrides = self.overrides.iter().map(|(p, x)| (*p, v(x))).collect();
        let mut out = Self { intervals, overrides };
        out.normalize();
        out
    }

    pub fn neg(&self) -> Self {
        self.map_values(ChiFunction::neg, Ext::neg)
    }

    pub fn div_n(&self, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        Ok(self.map_values(|g| g.div_n(n).expect("n checked"), |x| x.div_n(n).expect("n checked")))
    }

    /// Pointwise combination over the common refinement of both partitions.
    fn combine_with(
        &self,
        other: &Self,
        f: impl Fn(&ChiFunction, &ChiFunction) -> ChiFunction,
        v: impl Fn(&Ext, &Ext) -> Ext,
    ) -> Self {
        let mut intervals = Vec::new();
        let (mut i, mut j) = (0, 0);
        let mut left = Cut::Bottom;
        while i < self.intervals.len() && j < other.intervals.len() {
            let (_, r1, g1) = &self.intervals[i];
            let (_, r2, g2) = &other.intervals[j];
            let right = *r1.min(r2);
            intervals.push((left, right, f(g1, g2)));
            left = right;
            if *r1 == right {
                i += 1;
            }
            if *r2 == right {
                j += 1;
            }
        }
        let overrides = self
            .overrides
            .keys()
            .chain(other.overrides.keys())
            .map(|p| (*p, v(&self.eval(p), &other.eval(p))))
            .collect();
        let mut out = Self { intervals, overrides };
        out.normalize();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine_with(other, ChiFunction::add, Ext::add)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine_with(other, ChiFunction::sub, |a, b| a.add(&b.neg()))
    }

    /// `χ ∘ P`. Each proper piece splits at its threshold into a `χ^{k₁+1}`
    /// piece and the constant `χ(α)`; candidate points get exact overrides.
    pub fn compose_chi(&self, model: &ModelSpec) -> Self {
        let mut intervals = Vec::new();
        let mut overrides: BTreeMap<ChiSetPoint, Ext> = BTreeMap::new();
        let mut exceptions = 0;
        for (l, r, g) in &self.intervals {
            match g {
                ChiFunction::Const(v) => intervals.push((*l, *r, ChiFunction::Const(model.chi_ext(v)))),
                ChiFunction::Proper { terms, alpha } => {
                    let (k1, q1) = (terms[0].0, &terms[0].1);
                    let lead = ChiFunction::from_parts(
                        [(k1 + 1, q_int(if q1.is_positive() { 1 } else { -1 }))],
                        crate::element::GroupElement::zero(),
                    );
                    let tail = ChiFunction::constant(model.chi(alpha));
                    let t = g.lead_threshold(model).clamp(*l, *r);
                    if *l < t {
                        intervals.push((*l, t, lead));
                    }
                    if t < *r {
                        intervals.push((t, *r, tail));
                    }
                    let region = Region::Interval(*l, *r);
                    for p in g.candidates(model).into_iter().filter(|p| region.contains(p)) {
                        overrides.insert(p, model.chi_ext(&g.eval(&p)));
                        exceptions += 1;
                    }
                }
            }
        }
        for (p, x) in &self.overrides {
            overrides.insert(*p, model.chi_ext(x));
        }
        let mut out = Self { intervals, overrides };
        out.normalize();
        assert!(
            out.intervals.len() <= 2 * self.intervals.len() + exceptions,
            "composition with χ produced too many pieces"
        );
        out
    }

    /// `χ⁻¹ ∘ P`, using the membership solutions of each piece.
    pub fn compose_chi_inv(&self, model: &ModelSpec) -> Self {
        let mut intervals = Vec::new();
        let mut overrides: BTreeMap<ChiSetPoint, Ext> = BTreeMap::new();
        for (l, r, g) in &self.intervals {
            match (g, g.membership_solutions(model)) {
                (ChiFunction::Const(v), _) => intervals.push((*l, *r, ChiFunction::Const(model.chi_inv(v)))),
                (ChiFunction::Proper { terms, .. }, Membership::AllOfDomain) => {
                    intervals.push((*l, *r, ChiFunction::chi_power(terms[0].0 - 1)));
                }
                (ChiFunction::Proper { .. }, Membership::Points(_)) => {
                    intervals.push((*l, *r, ChiFunction::Const(Ext::Inf)));
                    let region = Region::Interval(*l, *r);
                    for p in g.candidates(model).into_iter().filter(|p| region.contains(p)) {
                        overrides.insert(p, model.chi_inv(&g.eval(&p)));
                    }
                }
            }
        }
        for (p, x) in &self.overrides {
            overrides.insert(*p, model.chi_inv(x));
        }
        let mut out = Self { intervals, overrides };
        out.normalize();
        out
    }

    /// The restriction of `t` to the χ-set, by structural recursion.
    pub fn from_term(t: &Term, model: &ModelSpec) -> Self {
        match t {
            Term::Var => Self::identity(),
            Term::Const(k) => Self::constant(k.value(model)),
            Term::Literal(a) => Self::constant(Ext::Fin(a.clone())),
            Term::Add(a, b) => Self::from_term(a, model).add(&Self::from_term(b, model)),
            Term::Neg(a) => Self::from_term(a, model).neg(),
            Term::Div(a, n) => Self::from_term(a, model).div_n(*n).expect("parser rejects div by 0"),
            Term::Chi(a) => Self::from_term(a, model).compose_chi(model),
            Term::ChiInv(a) => Self::from_term(a, model).compose_chi_inv(model),
        }
    }

    /// All pieces as regions in χ-set order; overrides follow the interval
    /// that contains them.
    pub fn regions(&self) -> Vec<(Region, ChiFunction)> {
        let mut out = Vec::new();
        for (l, r, g) in &self.intervals {
            out.push((Region::Interval(*l, *r).normalize(), g.clone()));
            let region = Region::Interval(*l, *r);
            for (p, v) in self.overrides.iter().filter(|(p, _)| region.contains(p)) {
                out.push((Region::Singleton(*p), ChiFunction::Const(v.clone())));
            }
        }
        out
    }

    /// A `region | function` table, one row per line.
    pub fn table(&self, model: Option<&ModelSpec>) -> String {
        let mut s = String::from("region | function\n");
        for (region, g) in self.regions() {
            let _ = writeln!(s, "{region} | {}", g.display(model));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::GroupElement;
    use crate::model::GeneratorId;
    use crate::term::{parse_chifn, parse_term};
    use alloc::vec;

    fn pt(j: u32, l: i64) -> ChiSetPoint {
        ChiSetPoint::new(j, l).unwrap()
    }

    fn e(l: i64) -> GroupElement {
        GroupElement::unit(GeneratorId::omega(l))
    }

    fn pw(text: &str, m: &ModelSpec) -> Piecewise {
        Piecewise::from_term(&parse_term(text, m).unwrap(), m)
    }

    #[test]
    fn chi_of_shifted_identity() {
        let m = ModelSpec::prime();
        let p = Piecewise::from_chifn(parse_chifn("x + [e3]", &m).unwrap()).compose_chi(&m);
        assert_eq!(
            p.intervals(),
            &[
                (Cut::Bottom, Cut::After(pt(0, 3)), ChiFunction::chi_power(1)),
                (Cut::After(pt(0, 3)), Cut::Top, ChiFunction::constant(e(4))),
            ]
        );
        assert_eq!(p.overrides().get(&pt(0, 3)), Some(&Ext::zero()));
        assert_eq!(p.eval(&pt(0, 3)), Ext::zero());
        assert_eq!(p.eval(&pt(0, 2)), Ext::Fin(-e(3)));
        assert_eq!(p.eval(&pt(0, 9)), Ext::Fin(e(4)));
    }

    #[test]
    fn simple_compositions() {
        let m = ModelSpec::prime();
        assert_eq!(Piecewise::constant(Ext::Fin(e(2))).compose_chi(&m), Piecewise::constant(Ext::Fin(e(3))));
        assert_eq!(
            Piecewise::from_chifn(ChiFunction::chi_power(1)).compose_chi(&m),
            Piecewise::from_chifn(ChiFunction::chi_power(2))
        );
        assert_eq!(Piecewise::constant(Ext::Fin(e(1))).compose_chi_inv(&m), Piecewise::constant(Ext::Inf));
        let p = Piecewise::from_chifn(parse_chifn("chi^{1}(x) + [e3 - e5]", &m).unwrap()).compose_chi_inv(&m);
        assert_eq!(p.intervals().len(), 1);
        assert_eq!(p.overrides().iter().collect::<Vec<_>>(), vec![(&pt(0, 2), &Ext::Fin(-e(4)))]);
    }

    #[test]
    fn chi_inverse_after_chi_is_identity() {
        // χ(c) = -e2 lies above c, so χ⁻¹ recovers c as well
        let m = ModelSpec::prime();
        let p = pw("ichi(chi(x))", &m);
        assert_eq!(p, Piecewise::identity());
        let q = pw("chi(ichi(x))", &m);
        assert_eq!(q.intervals()[0], (Cut::Bottom, Cut::After(pt(0, 1)), ChiFunction::Const(Ext::Inf)));
        assert_eq!(q.intervals()[1].2, ChiFunction::identity());
    }

    #[test]
    fn term_examples() {
        let m = ModelSpec::prime();
        assert_eq!(pw("x", &m), Piecewise::identity());
        assert_eq!(pw("chi(x + d)", &m), Piecewise::constant(Ext::Fin(m.c().element())));
        assert_eq!(pw("x - x", &m), Piecewise::constant(Ext::zero()));
        assert_eq!(pw("inf", &m).eval(&pt(0, 3)), Ext::Inf);
        assert_eq!(Piecewise::identity().eval(&pt(0, 7)), Ext::Fin(-e(7)));
    }

    #[test]
    fn combination_and_refinement() {
        let m = ModelSpec::with_zchains(1);
        let a = pw("chi(x + [e3]) + chi(x + [b1.2])", &m);
        let b = pw("chi(x + [e5])", &m);
        let s = a.add(&b);
        assert!(s.intervals().len() <= a.intervals().len() + b.intervals().len());
        for l in 1..12 {
            let p = pt(0, l);
            assert_eq!(s.eval(&p), a.eval(&p).add(&b.eval(&p)));
        }
        assert_eq!(a.sub(&a), Piecewise::constant(Ext::zero()));
    }

    #[test]
    fn table_rendering() {
        let m = ModelSpec::prime();
        let p = Piecewise::from_chifn(parse_chifn("x + [e3]", &m).unwrap()).compose_chi(&m);
        assert_eq!(p.table(Some(&m)), "region | function\n[c, -e3] | chi^{1}(x)\n{-e3} | [0]\n[-e4, 0) | [e4]\n");
    }
}
