//! Group elements as finite-support rational combinations of classes.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::model::{GeneratorId, ModelSpec};
use crate::rational::{fmt_q, Q};

/// A finite rational combination of basis classes.
///
/// Keys iterate in dominance order, so the first entry is the dominant term.
/// Zero coefficients are never stored; the empty map is the group zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coeffs: BTreeMap<GeneratorId, Q>,
}

impl GroupElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(g: GeneratorId, q: Q) -> Self {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(g, q);
        }
        Self { coeffs }
    }

    pub fn unit(g: GeneratorId) -> Self {
        Self::monomial(g, Q::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (GeneratorId, Q)>>(terms: I) -> Self {
        let mut x = Self::zero();
        for (g, q) in terms {
            x.add_term(g, &q);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, g: &GeneratorId) -> Option<&Q> {
        self.coeffs.get(g)
    }

    pub fn terms(&self) -> btree_map::Iter<'_, GeneratorId, Q> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GeneratorId> + '_ {
        self.coeffs.keys()
    }

    /// The dominant class of the support together with its coefficient.
    pub fn dominant(&self) -> Option<(&GeneratorId, &Q)> {
        self.coeffs.iter().next()
    }

    pub fn signum(&self) -> Ordering {
        match self.dominant() {
            None => Ordering::Equal,
            Some((_, q)) if q.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn add_term(&mut self, g: GeneratorId, q: &Q) {
        if q.is_zero() {
            return;
        }
        match self.coeffs.entry(g) {
            btree_map::Entry::Vacant(v) => {
                v.insert(q.clone());
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += q;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, q: &Q) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(g, c)| (*g, c * q)).collect() }
    }

    /// Division by a positive integer. `n` must be nonzero.
    pub fn div_n(&self, n: u64) -> Self {
        debug_assert!(n > 0);
        let d = Q::from_integer(BigInt::from(n));
        Self { coeffs: self.coeffs.iter().map(|(g, c)| (*g, c / &d)).collect() }
    }

    /// Keeps only the terms whose class satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&GeneratorId) -> bool) -> Self {
        Self { coeffs: self.coeffs.iter().filter(|(g, _)| keep(g)).map(|(g, q)| (*g, q.clone())).collect() }
    }

    pub fn map_generators(&self, mut f: impl FnMut(&GeneratorId) -> GeneratorId) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(g, q)| (f(g), q.clone())))
    }

    /// Formats the element, naming loose classes after `model` when given.
    pub fn display<'a>(&'a self, model: Option<&'a ModelSpec>) -> ElementDisplay<'a> {
        ElementDisplay { el: self, model }
    }
}

impl Ord for GroupElement {
    /// Lexicographic order: the first class (in dominance order) where the
    /// coefficients differ decides.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.coeffs.iter().peekable();
        let mut b = other.coeffs.iter().peekable();
        let zero = Q::zero();
        loop {
            let (qa, qb) = match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, qa)), None) => (*qa, &zero),
                (None, Some((_, qb))) => (&zero, *qb),
                (Some((ga, qa)), Some((gb, qb))) => match ga.cmp(gb) {
                    Ordering::Less => (*qa, &zero),
                    Ordering::Greater => (&zero, *qb),
                    Ordering::Equal => (*qa, *qb),
                },
            };
            match qa.cmp(qb) {
                Ordering::Equal => {
                    a.next();
                    b.next();
                }
                ord => return ord,
            }
        }
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add<&GroupElement> for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        let mut out = self.clone();
        for (g, q) in &rhs.coeffs {
            out.add_term(*g, q);
        }
        out
    }
}

impl Sub<&GroupElement> for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        let mut out = self.clone();
        for (g, q) in &rhs.coeffs {
            out.add_term(*g, &-q);
        }
        out
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        GroupElement { coeffs: self.coeffs.iter().map(|(g, q)| (*g, -q)).collect() }
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        -&self
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(None).fmt(f)
    }
}

pub struct ElementDisplay<'a> {
    el: &'a GroupElement,
    model: Option<&'a ModelSpec>,
}

impl ElementDisplay<'_> {
    fn generator_name(&self, g: &GeneratorId) -> String {
        match self.model {
            Some(m) => m.generator_name(g),
            None => alloc::format!("{g}"),
        }
    }
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.el.is_zero() {
            return f.write_str("0");
        }
        for (i, (g, q)) in self.el.coeffs.iter().enumerate() {
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
            f.write_str(&self.generator_name(g))?;
        }
        Ok(())
    }
}

/// A group element or the absorbing point `∞`, which lies above every
/// group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ext {
    Fin(GroupElement),
    Inf,
}

impl Ext {
    pub fn zero() -> Self {
        Ext::Fin(GroupElement::zero())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, Ext::Inf)
    }

    pub fn finite(&self) -> Option<&GroupElement> {
        match self {
            Ext::Fin(x) => Some(x),
            Ext::Inf => None,
        }
    }

    pub fn add(&self, other: &Ext) -> Ext {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
            _ => Ext::Inf,
        }
    }

    pub fn neg(&self) -> Ext {
        match self {
            Ext::Fin(a) => Ext::Fin(-a),
            Ext::Inf => Ext::Inf,
        }
    }

    pub fn div_n(&self, n: u64) -> crate::Result<Ext> {
        if n == 0 {
            return Err(crate::Error::InvalidArgument("division by zero".into()));
        }
        Ok(match self {
            Ext::Fin(a) => Ext::Fin(a.div_n(n)),
            Ext::Inf => Ext::Inf,
        })
    }

    pub fn display<'a>(&'a self, model: Option<&'a ModelSpec>) -> ExtDisplay<'a> {
        ExtDisplay { el: self, model }
    }
}

impl From<GroupElement> for Ext {
    fn from(x: GroupElement) -> Self {
        Ext::Fin(x)
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => a.cmp(b),
            (Ext::Fin(_), Ext::Inf) => Ordering::Less,
            (Ext::Inf, Ext::Fin(_)) => Ordering::Greater,
            (Ext::Inf, Ext::Inf) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(None).fmt(f)
    }
}

pub struct ExtDisplay<'a> {
    el: &'a Ext,
    model: Option<&'a ModelSpec>,
}

impl fmt::Display for ExtDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.el {
            Ext::Inf => f.write_str("inf"),
            Ext::Fin(x) => x.display(self.model).fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q_frac, q_int};
    use alloc::format;

    fn e(l: i64) -> GeneratorId {
        GeneratorId::omega(l)
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let x = GroupElement::from_terms([(e(2), q_frac(3, 2)), (e(2), q_frac(-3, 2))]);
        assert!(x.is_zero());
        assert_eq!(format!("{x}"), "0");
    }

    #[test]
    fn lexicographic_order() {
        let e0 = GroupElement::unit(e(0));
        let e1 = GroupElement::unit(e(1));
        assert!(e0 > e1);
        assert!(-&e1 < -&GroupElement::unit(e(2)));
        assert_eq!(GroupElement::zero().cmp(&GroupElement::zero()), Ordering::Equal);
        // 1/1000*e0 outweighs any multiple of e1
        let small = GroupElement::monomial(e(0), q_frac(1, 1000));
        let big = GroupElement::monomial(e(1), q_int(1_000_000));
        assert!(small > big);
    }

    #[test]
    fn display_uses_dominance_order() {
        let x = GroupElement::from_terms([(e(3), q_int(-2)), (e(0), q_frac(3, 2))]);
        assert_eq!(format!("{x}"), "3/2*e0 - 2*e3");
        let y = GroupElement::from_terms([(GeneratorId::zed(1, -2), q_int(1)), (e(4), q_int(1))]);
        assert_eq!(format!("{y}"), "e4 + b1.-2");
    }

    #[test]
    fn division_and_infinity() {
        let x = GroupElement::from_terms([(e(1), q_int(1)), (e(4), q_int(-2))]);
        assert_eq!(x.div_n(3), GroupElement::from_terms([(e(1), q_frac(1, 3)), (e(4), q_frac(-2, 3))]));
        assert_eq!(Ext::Inf.add(&Ext::Fin(-GroupElement::unit(e(5)))), Ext::Inf);
        assert_eq!(Ext::Inf.div_n(4).unwrap(), Ext::Inf);
        assert!(Ext::zero().div_n(0).is_err());
        assert!(Ext::Fin(GroupElement::unit(e(0))) < Ext::Inf);
    }
}
