//! χ-functions `G(x) = Σ qᵢ·χ^{kᵢ}(x) + α` on the χ-set.
//!
//! The constant is stored with a `+` sign. Exponents may be negative, in
//! which case `G` is finite only on `Dom_G = {x ≥ χ^{-k₁}(c)}`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::element::{Ext, GroupElement};
use crate::error::{Error, Result};
use crate::model::{ChiSetPoint, GeneratorId, ModelSpec};
use crate::rational::{fmt_q, q_int, Q};
use crate::region::{Cut, Region};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ChiFunction {
    Const(Ext),
    /// Invariant: `terms` is nonempty, exponents strictly increase and no
    /// coefficient is zero. Build through [`ChiFunction::from_parts`].
    Proper {
        terms: Vec<(i64, Q)>,
        alpha: GroupElement,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
}

/// The points of `Dom_G` mapped into the χ-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    AllOfDomain,
    Points(Vec<(ChiSetPoint, ChiSetPoint)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZeroSet {
    All,
    Points(Vec<ChiSetPoint>),
}

/// Sign of `G` across a region: generic signs on either side of a threshold
/// cut, plus isolated points where cancellation changes the dominant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignProfile {
    pub threshold: Cut,
    pub sign_below: Ordering,
    pub sign_above: Ordering,
    pub exceptions: Vec<(ChiSetPoint, Ext)>,
}

impl SignProfile {
    pub fn sign_at(&self, p: &ChiSetPoint) -> Ordering {
        if let Some((_, v)) = self.exceptions.iter().find(|(q, _)| q == p) {
            return match v {
                Ext::Fin(v) => v.signum(),
                Ext::Inf => Ordering::Greater,
            };
        }
        if self.threshold.is_below(p) {
            self.sign_above
        } else {
            self.sign_below
        }
    }
}

fn neg_sign(o: Ordering) -> Ordering {
    o.reverse()
}

impl ChiFunction {
    /// Merges equal exponents, drops zero coefficients and demotes to a
    /// constant when nothing is left.
    pub fn from_parts<I: IntoIterator<Item = (i64, Q)>>(terms: I, alpha: GroupElement) -> Self {
        let mut merged: alloc::collections::BTreeMap<i64, Q> = Default::default();
        for (k, q) in terms {
            *merged.entry(k).or_insert_with(Q::zero) += q;
        }
        let terms: Vec<(i64, Q)> = merged.into_iter().filter(|(_, q)| !q.is_zero()).collect();
        if terms.is_empty() {
            ChiFunction::Const(Ext::Fin(alpha))
        } else {
            ChiFunction::Proper { terms, alpha }
        }
    }

    pub fn constant(a: GroupElement) -> Self {
        ChiFunction::Const(Ext::Fin(a))
    }

    /// `χ^k(x)`.
    pub fn chi_power(k: i64) -> Self {
        Self::from_parts([(k, Q::one())], GroupElement::zero())
    }

    pub fn identity() -> Self {
        Self::chi_power(0)
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ChiFunction::Const(Ext::Inf))
    }

    pub fn leading(&self) -> Option<(i64, &Q)> {
        match self {
            ChiFunction::Proper { terms, .. } => terms.first().map(|(k, q)| (*k, q)),
            ChiFunction::Const(_) => None,
        }
    }

    /// The cut below `Dom_G`.
    pub fn dom_cut(&self) -> Cut {
        match self.leading() {
            Some((k1, _)) if k1 < 0 => Cut::After(ChiSetPoint::new(0, -k1).expect("positive omega level")),
            _ => Cut::Bottom,
        }
    }

    pub fn dom_of(&self) -> Region {
        Region::Interval(self.dom_cut(), Cut::Top)
    }

    pub fn in_domain(&self, p: &ChiSetPoint) -> bool {
        self.dom_cut().is_below(p)
    }

    pub fn eval(&self, p: &ChiSetPoint) -> Ext {
        match self {
            ChiFunction::Const(v) => v.clone(),
            ChiFunction::Proper { terms, alpha } => {
                let mut acc = alpha.clone();
                for (k, q) in terms {
                    match p.iterate(*k) {
                        Some(r) => acc.add_term(r.generator(), &-q),
                        None => return Ext::Inf,
                    }
                }
                Ext::Fin(acc)
            }
        }
    }

    pub fn add(&self, other: &ChiFunction) -> ChiFunction {
        use ChiFunction::*;
        match (self, other) {
            (Const(Ext::Inf), _) | (_, Const(Ext::Inf)) => Const(Ext::Inf),
            (Const(Ext::Fin(a)), Const(Ext::Fin(b))) => Self::constant(a + b),
            (Const(Ext::Fin(a)), Proper { terms, alpha }) | (Proper { terms, alpha }, Const(Ext::Fin(a))) => {
                Proper { terms: terms.clone(), alpha: alpha + a }
            }
            (Proper { terms: t1, alpha: a1 }, Proper { terms: t2, alpha: a2 }) => {
                Self::from_parts(t1.iter().chain(t2).cloned(), a1 + a2)
            }
        }
    }

    pub fn neg(&self) -> ChiFunction {
        match self {
            ChiFunction::Const(v) => ChiFunction::Const(v.neg()),
            ChiFunction::Proper { terms, alpha } => {
                ChiFunction::Proper { terms: terms.iter().map(|(k, q)| (*k, -q)).collect(), alpha: -alpha }
            }
        }
    }

    pub fn sub(&self, other: &ChiFunction) -> ChiFunction {
        self.add(&other.neg())
    }

    pub fn div_n(&self, n: u64) -> Result<ChiFunction> {
        if n == 0 {
            return Err(Error::InvalidArgument("division by zero".into()));
        }
        Ok(match self {
            ChiFunction::Const(v) => ChiFunction::Const(v.div_n(n)?),
            ChiFunction::Proper { terms, alpha } => {
                let d = q_int(i64::try_from(n).map_err(|_| Error::InvalidArgument("divisor too large".into()))?);
                ChiFunction::Proper { terms: terms.iter().map(|(k, q)| (*k, q / &d)).collect(), alpha: alpha.div_n(n) }
            }
        })
    }

    pub fn monotonicity(&self) -> Monotonicity {
        match self.leading() {
            None => Monotonicity::Constant,
            Some((_, q)) if q.is_positive() => Monotonicity::Increasing,
            Some(_) => Monotonicity::Decreasing,
        }
    }

    /// Points of `Dom_G` where some `χ^{kᵢ}(x)` lands on a class of `α`.
    /// Away from these the terms of `G(x)` cannot interact with `α`.
    pub fn candidates(&self, model: &ModelSpec) -> Vec<ChiSetPoint> {
        let ChiFunction::Proper { terms, alpha } = self else {
            return Vec::new();
        };
        let mut out: Vec<ChiSetPoint> = Vec::new();
        for (k, _) in terms {
            for a in alpha.support().filter(|a| a.is_integral()) {
                let Some(l) = a.level.numer().checked_sub(*k) else { continue };
                if let Some(p) = ChiSetPoint::new(a.chain, l) {
                    if model.contains_point(&p) && self.in_domain(&p) {
                        out.push(p);
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn membership_solutions(&self, model: &ModelSpec) -> Membership {
        if let ChiFunction::Proper { terms, alpha } = self {
            if terms.len() == 1 && terms[0].1.is_one() && alpha.is_zero() {
                return Membership::AllOfDomain;
            }
        }
        let points: Vec<(ChiSetPoint, ChiSetPoint)> = match self {
            ChiFunction::Const(_) => Vec::new(),
            ChiFunction::Proper { .. } => self
                .candidates(model)
                .into_iter()
                .filter_map(|p| {
                    let v = self.eval(&p);
                    model.point_of(v.finite()?).map(|q| (p, q))
                })
                .collect(),
        };
        assert!(points.len() <= 2, "a χ-function meets the χ-set at most twice");
        Membership::Points(points)
    }

    /// Points of `Dom_G` where `G` vanishes. Constants report `All` for `0`
    /// and no points otherwise.
    pub fn zeros(&self, model: &ModelSpec) -> ZeroSet {
        match self {
            ChiFunction::Const(v) => {
                if *v == Ext::zero() {
                    ZeroSet::All
                } else {
                    ZeroSet::Points(Vec::new())
                }
            }
            ChiFunction::Proper { .. } => {
                ZeroSet::Points(self.candidates(model).into_iter().filter(|p| self.eval(p) == Ext::zero()).collect())
            }
        }
    }

    /// Dominant class and sign of `G(p)` assuming no cancellation at `p`.
    fn generic_regime(&self, p: &ChiSetPoint) -> (GeneratorId, Ordering) {
        let ChiFunction::Proper { terms, alpha } = self else { unreachable!("generic regime of a constant") };
        let (k1, q1) = (&terms[0].0, &terms[0].1);
        let lead = GeneratorId::zed(p.chain(), p.level() + k1);
        let lead_sign = neg_sign(if q1.is_positive() { Ordering::Greater } else { Ordering::Less });
        match alpha.dominant() {
            Some((a, qa)) if a < &lead => (*a, if qa.is_positive() { Ordering::Greater } else { Ordering::Less }),
            _ => (lead, lead_sign),
        }
    }

    /// The cut up to which the `χ^{k₁}` term dominates `α` (ignoring
    /// cancellation at candidate points); `Top` when `α = 0`.
    pub fn lead_threshold(&self, model: &ModelSpec) -> Cut {
        let ChiFunction::Proper { terms, alpha } = self else {
            return Cut::Bottom;
        };
        match alpha.dominant() {
            None => Cut::Top,
            Some((a, _)) => {
                let t = a.level.floor().to_integer().saturating_sub(terms[0].0);
                match ChiSetPoint::new(a.chain, t) {
                    Some(p) => Cut::After(p),
                    None => Cut::start_of_chain(a.chain),
                }
                .canonical(model)
            }
        }
    }

    /// Sign analysis of `G` on `region`, which must lie inside `Dom_G`.
    pub fn dominance_analysis(&self, region: &Region, model: &ModelSpec) -> Result<SignProfile> {
        let ChiFunction::Proper { terms, alpha } = self else {
            return Err(Error::InvalidArgument("dominance analysis needs a proper χ-function".into()));
        };
        let (left, right) = region.bounds();
        if left < right && left < self.dom_cut() {
            return Err(Error::RegionOutsideDomain);
        }
        let q1 = &terms[0].1;
        let lead_sign = if q1.is_positive() { Ordering::Less } else { Ordering::Greater };
        let mut threshold = self.lead_threshold(model);
        let alpha_sign = match alpha.dominant() {
            Some((_, qa)) if qa.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
            None => lead_sign,
        };
        let (mut below, mut above) = (lead_sign, alpha_sign);
        if threshold <= left {
            threshold = Cut::Top;
            below = alpha_sign;
        } else if threshold >= right {
            threshold = Cut::Top;
            above = lead_sign;
        }
        let exceptions = self
            .candidates(model)
            .into_iter()
            .filter(|p| region.contains(p))
            .filter_map(|p| {
                let v = self.eval(&p);
                let x = v.finite().expect("candidates lie in the domain");
                let (g, s) = self.generic_regime(&p);
                match x.dominant() {
                    Some((h, q)) if *h == g && (q.is_positive() == (s == Ordering::Greater)) => None,
                    _ => Some((p, v)),
                }
            })
            .collect();
        Ok(SignProfile { threshold, sign_below: below, sign_above: above, exceptions })
    }

    pub fn display<'a>(&'a self, model: Option<&'a ModelSpec>) -> ChiFunctionDisplay<'a> {
        ChiFunctionDisplay { g: self, model }
    }
}

impl fmt::Display for ChiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(None).fmt(f)
    }
}

pub struct ChiFunctionDisplay<'a> {
    g: &'a ChiFunction,
    model: Option<&'a ModelSpec>,
}

impl fmt::Display for ChiFunctionDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.g {
            ChiFunction::Const(Ext::Inf) => f.write_str("inf"),
            ChiFunction::Const(Ext::Fin(a)) => write!(f, "[{}]", a.display(self.model)),
            ChiFunction::Proper { terms, alpha } => {
                for (i, (k, q)) in terms.iter().enumerate() {
                    let neg = q.is_negative();
                    match (i, neg) {
                        (0, true) => f.write_str("-")?,
                        (0, false) => {}
                        (_, true) => f.write_str(" - ")?,
                        (_, false) => f.write_str(" + ")?,
                    }
                    let a = q.abs();
                    if !a.is_one() {
                        write!(f, "{}*", fmt_q(&a))?;
                    }
                    write!(f, "chi^{{{k}}}(x)")?;
                }
                if !alpha.is_zero() {
                    write!(f, " + [{}]", alpha.display(self.model))?;
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_chifn;
    use alloc::format;
    use alloc::vec;

    fn g(text: &str) -> ChiFunction {
        parse_chifn(text, &ModelSpec::with_zchains(1)).unwrap()
    }

    fn pt(j: u32, l: i64) -> ChiSetPoint {
        ChiSetPoint::new(j, l).unwrap()
    }

    fn e(l: i64) -> GroupElement {
        GroupElement::unit(GeneratorId::omega(l))
    }

    #[test]
    fn domains() {
        assert_eq!(g("chi^{-1}(x)").dom_of(), Region::Interval(Cut::After(pt(0, 1)), Cut::Top));
        assert_eq!(format!("{}", g("chi^{-1}(x)").dom_of()), "[-e2, 0)");
        assert_eq!(g("x + [e3]").dom_of(), Region::all());
        assert_eq!(g("[e1]").dom_of(), Region::all());
    }

    #[test]
    fn evaluation() {
        let f = g("chi^{1}(x) + [e3 - e5]");
        assert_eq!(f.eval(&pt(0, 2)), Ext::Fin(-e(5)));
        assert_eq!(g("inf").eval(&pt(0, 4)), Ext::Inf);
        assert_eq!(g("chi^{-1}(x)").eval(&pt(0, 1)), Ext::Inf);
        assert_eq!(g("chi^{-1}(x)").eval(&pt(0, 2)), Ext::Fin(-e(1)));
    }

    #[test]
    fn arithmetic() {
        assert_eq!(g("chi^{1}(x)").add(&g("-chi^{1}(x)")), ChiFunction::constant(GroupElement::zero()));
        assert_eq!(g("chi^{1}(x) + [e3]").sub(&g("[e3]")), g("chi^{1}(x)"));
        let half = g("2*chi^{2}(x) + [e1]").div_n(2).unwrap();
        assert_eq!(half, g("chi^{2}(x) + [1/2*e1]"));
        assert!(g("x").div_n(0).is_err());
        assert_eq!(g("x").add(&g("inf")), g("inf"));
    }

    #[test]
    fn monotonicity_report() {
        assert_eq!(g("chi^{1}(x) - [e4]").monotonicity(), Monotonicity::Increasing);
        assert_eq!(g("-2*chi^{1}(x)").monotonicity(), Monotonicity::Decreasing);
        assert_eq!(g("[e2]").monotonicity(), Monotonicity::Constant);
    }

    #[test]
    fn membership_examples() {
        let m = ModelSpec::prime();
        assert_eq!(g("chi^{1}(x)").membership_solutions(&m), Membership::AllOfDomain);
        let f = g("chi^{1}(x) + [e3 - e5]");
        assert_eq!(f.candidates(&m), vec![pt(0, 2), pt(0, 4)]);
        assert_eq!(f.membership_solutions(&m), Membership::Points(vec![(pt(0, 2), pt(0, 5))]));
        assert_eq!(g("chi^{1}(x) + [e0]").membership_solutions(&m), Membership::Points(vec![]));
    }

    #[test]
    fn zero_examples() {
        let m = ModelSpec::prime();
        assert_eq!(g("x + [e3]").zeros(&m), ZeroSet::Points(vec![pt(0, 3)]));
        assert_eq!(g("chi^{1}(x)").zeros(&m), ZeroSet::Points(vec![]));
        assert_eq!(g("[0]").zeros(&m), ZeroSet::All);
    }

    #[test]
    fn dominance_examples() {
        let m = ModelSpec::prime();
        let p = g("chi^{1}(x) + [e4]").dominance_analysis(&Region::all(), &m).unwrap();
        assert_eq!(p.threshold, Cut::After(pt(0, 3)));
        assert_eq!((p.sign_below, p.sign_above), (Ordering::Less, Ordering::Greater));
        assert_eq!(p.exceptions, vec![(pt(0, 3), Ext::zero())]);
        let p = g("x + [e0]").dominance_analysis(&Region::all(), &m).unwrap();
        assert_eq!(p.threshold, Cut::Top);
        assert_eq!((p.sign_below, p.sign_above), (Ordering::Greater, Ordering::Greater));
        assert!(p.exceptions.is_empty());
        let p = g("chi^{1}(x)").dominance_analysis(&Region::all(), &m).unwrap();
        assert_eq!((p.threshold, p.sign_below, p.sign_above), (Cut::Top, Ordering::Less, Ordering::Less));
        assert_eq!(g("chi^{-2}(x)").dominance_analysis(&Region::all(), &m), Err(Error::RegionOutsideDomain));
    }

    #[test]
    fn dominance_with_zchain_threshold() {
        let m = ModelSpec::with_zchains(1);
        // α dominated by b1.3: points of chain 1 up to level 2 are lead-dominated
        let f = g("chi^{1}(x) + [b1.3]");
        let p = f.dominance_analysis(&Region::all(), &m).unwrap();
        assert_eq!(p.threshold, Cut::After(pt(1, 2)));
        assert_eq!(p.sign_at(&pt(0, 7)), Ordering::Less);
        assert_eq!(p.sign_at(&pt(1, 2)), Ordering::Equal);
        assert_eq!(p.sign_at(&pt(1, 3)), Ordering::Greater);
        assert_eq!(f.eval(&pt(1, 2)), Ext::zero());
    }

    #[test]
    fn display_round_trip() {
        for text in ["chi^{1}(x) + [e3 - e5]", "-3/2*chi^{-1}(x) - chi^{0}(x)", "[-e2]", "inf", "[0]"] {
            assert_eq!(format!("{}", g(text)), text);
        }
    }
}
