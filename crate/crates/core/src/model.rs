//! Finitely presented models: basis classes, the successor map, `χ` and `χ⁻¹`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::element::{Ext, GroupElement};
use crate::error::{Error, Result};
use crate::rational::{fmt_level, level, Level};

/// An archimedean class of the basis.
///
/// Chain 0 is the ω-chain (`e0, e1, ...`), chains `1..=N` are ℤ-chains in
/// dominance-descending block order. The derived order is the dominance key:
/// `a < b` means `a` dominates `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId {
    pub chain: u32,
    pub level: Level,
}

impl GeneratorId {
    pub fn new(chain: u32, level: Level) -> Self {
        Self { chain, level }
    }

    pub fn omega(l: i64) -> Self {
        Self::new(0, level(l))
    }

    pub fn zed(chain: u32, l: i64) -> Self {
        Self::new(chain, level(l))
    }

    pub fn is_integral(&self) -> bool {
        self.level.is_integer()
    }

    pub fn dominates(&self, other: &GeneratorId) -> bool {
        self < other
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain == 0 {
            write!(f, "e{}", fmt_level(&self.level))
        } else {
            write!(f, "b{}.{}", self.chain, fmt_level(&self.level))
        }
    }
}

/// A point `-g` of the χ-set, where `g` is an integral class of a chain
/// (level at least 1 on the ω-chain).
///
/// Points are ordered as group elements: more dominant classes give smaller
/// points, so `c = -e1` is the least point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChiSetPoint {
    chain: u32,
    level: i64,
}

impl ChiSetPoint {
    /// Returns `None` for ω-levels below 1.
    pub fn new(chain: u32, level: i64) -> Option<Self> {
        if chain == 0 && level < 1 {
            None
        } else {
            Some(Self { chain, level })
        }
    }

    pub fn c() -> Self {
        Self { chain: 0, level: 1 }
    }

    pub fn chain(&self) -> u32 {
        self.chain
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn generator(&self) -> GeneratorId {
        GeneratorId::zed(self.chain, self.level)
    }

    pub fn element(&self) -> GroupElement {
        -GroupElement::unit(self.generator())
    }

    /// `χ^k` on the χ-set; `None` when a backwards walk leaves the set.
    pub fn iterate(&self, k: i64) -> Option<Self> {
        Self::new(self.chain, self.level.checked_add(k)?)
    }

    pub fn succ(&self) -> Self {
        Self { chain: self.chain, level: self.level + 1 }
    }

    pub fn pred(&self) -> Option<Self> {
        self.iterate(-1)
    }

    pub fn is_c(&self) -> bool {
        *self == Self::c()
    }
}

impl fmt::Display for ChiSetPoint {
    /// `c` for the least point, `-e3`, `-b1.-2` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_c() {
            return f.write_str("c");
        }
        write!(f, "-{}", self.generator())
    }
}

/// A class adjoined inside a chain gap, with its designated χ-value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LooseClass {
    pub id: u32,
    pub at: GeneratorId,
    pub succ: GeneratorId,
}

/// Comparison of natural valuations; `v(0) = ∞` is maximal.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ValuationOrdering {
    Less,
    Equal,
    Greater,
}

/// A finitely presented model: the ω-chain, `num_zchains` ℤ-chains and a
/// list of loose classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    num_zchains: u32,
    loose: Vec<LooseClass>,
}

impl ModelSpec {
    /// The model `⊕ ℚeᵢ` with `χ(Σ aᵢeᵢ) = sign(a_k)·e_{k+1}`.
    pub fn prime() -> Self {
        Self { num_zchains: 0, loose: Vec::new() }
    }

    pub fn with_zchains(n: u32) -> Self {
        Self { num_zchains: n, loose: Vec::new() }
    }

    pub fn new(num_zchains: u32, mut loose: Vec<LooseClass>) -> Result<Self> {
        loose.sort_by_key(|l| l.at);
        for l in &loose {
            validate_loose(num_zchains, l)?;
        }
        for pair in loose.windows(2) {
            let (g, h) = (&pair[0], &pair[1]);
            if g.at == h.at {
                return Err(Error::InvalidModel(format!("two loose classes at {}", g.at)));
            }
            let same_gap = g.at.chain == h.at.chain && g.at.level.floor() == h.at.level.floor();
            if same_gap && g.succ > h.succ {
                return Err(Error::MonotonicityViolation(format!(
                    "g{} dominates g{} but its successor {} is below {}",
                    g.id, h.id, g.succ, h.succ
                )));
            }
        }
        let mut ids: Vec<u32> = loose.iter().map(|l| l.id).collect();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidModel("duplicate loose class id".into()));
        }
        Ok(Self { num_zchains, loose })
    }

    pub fn num_zchains(&self) -> u32 {
        self.num_zchains
    }

    /// Number of chains including the ω-chain.
    pub fn num_chains(&self) -> u32 {
        self.num_zchains + 1
    }

    pub fn loose(&self) -> &[LooseClass] {
        &self.loose
    }

    pub fn loose_at(&self, g: &GeneratorId) -> Option<&LooseClass> {
        self.loose.binary_search_by(|l| l.at.cmp(g)).ok().map(|i| &self.loose[i])
    }

    pub fn loose_by_id(&self, id: u32) -> Option<&LooseClass> {
        self.loose.iter().find(|l| l.id == id)
    }

    pub fn next_loose_id(&self) -> u32 {
        self.loose.iter().map(|l| l.id + 1).max().unwrap_or(1)
    }

    pub fn contains_generator(&self, g: &GeneratorId) -> bool {
        if g.chain > self.num_zchains {
            return false;
        }
        if g.is_integral() {
            g.chain != 0 || !g.level.is_negative()
        } else {
            self.loose_at(g).is_some()
        }
    }

    pub fn contains_point(&self, p: &ChiSetPoint) -> bool {
        p.chain() <= self.num_zchains
    }

    pub fn check_element(&self, x: &GroupElement) -> Result<()> {
        match x.support().find(|g| !self.contains_generator(g)) {
            Some(g) => Err(Error::ModelMismatch(format!("{g}"))),
            None => Ok(()),
        }
    }

    pub fn generator_name(&self, g: &GeneratorId) -> String {
        match self.loose_at(g) {
            Some(l) => format!("g{}", l.id),
            None => format!("{g}"),
        }
    }

    /// The successor class: next level on a chain, the designated target for
    /// a loose class.
    pub fn succ(&self, g: &GeneratorId) -> GeneratorId {
        if g.is_integral() {
            GeneratorId::new(g.chain, g.level + 1)
        } else {
            match self.loose_at(g) {
                Some(l) => l.succ,
                None => GeneratorId::new(g.chain, g.level.floor() + 1),
            }
        }
    }

    pub fn c(&self) -> ChiSetPoint {
        ChiSetPoint::c()
    }

    /// The canonical witness of `χ(d) = c`: the monomial `-e0`.
    pub fn d(&self) -> GroupElement {
        -GroupElement::unit(GeneratorId::omega(0))
    }

    pub fn chi(&self, x: &GroupElement) -> GroupElement {
        match x.dominant() {
            None => GroupElement::zero(),
            Some((g, q)) => {
                let s = GroupElement::unit(self.succ(g));
                if q.is_positive() {
                    s
                } else {
                    -s
                }
            }
        }
    }

    pub fn chi_ext(&self, x: &Ext) -> Ext {
        match x {
            Ext::Fin(x) => Ext::Fin(self.chi(x)),
            Ext::Inf => Ext::Inf,
        }
    }

    /// Recognises a χ-set point of this model.
    pub fn point_of(&self, x: &GroupElement) -> Option<ChiSetPoint> {
        if x.len() != 1 {
            return None;
        }
        let (g, q) = x.dominant()?;
        if !g.is_integral() || g.chain > self.num_zchains || *q != -num_traits::one::<crate::Q>() {
            return None;
        }
        ChiSetPoint::new(g.chain, *g.level.numer())
    }

    /// `χ⁻¹`: predecessor on the χ-set above `c`, `0 ↦ 0`, and `∞`
    /// everywhere else (including `c` and the positive part of `χ(Γ)`).
    pub fn chi_inv(&self, x: &Ext) -> Ext {
        let Ext::Fin(x) = x else { return Ext::Inf };
        if x.is_zero() {
            return Ext::zero();
        }
        match self.point_of(x).and_then(|p| p.pred()) {
            Some(p) => Ext::Fin(p.element()),
            None => Ext::Inf,
        }
    }

    pub fn chi_iter(&self, p: ChiSetPoint, k: i64) -> Ext {
        match p.iterate(k) {
            Some(q) => Ext::Fin(q.element()),
            None => Ext::Inf,
        }
    }

    pub fn order_cmp(&self, x: &GroupElement, y: &GroupElement) -> Result<Ordering> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(x.cmp(y))
    }

    pub fn valuation_cmp(&self, x: &GroupElement, y: &GroupElement) -> Result<ValuationOrdering> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(valuation_cmp(x, y))
    }
}

/// `v(x)` against `v(y)`: the more dominant support has the smaller valuation.
pub fn valuation_cmp(x: &GroupElement, y: &GroupElement) -> ValuationOrdering {
    match (x.dominant(), y.dominant()) {
        (None, None) => ValuationOrdering::Equal,
        (None, Some(_)) => ValuationOrdering::Greater,
        (Some(_), None) => ValuationOrdering::Less,
        (Some((a, _)), Some((b, _))) => match a.cmp(b) {
            Ordering::Less => ValuationOrdering::Less,
            Ordering::Equal => ValuationOrdering::Equal,
            Ordering::Greater => ValuationOrdering::Greater,
        },
    }
}

fn validate_loose(num_zchains: u32, l: &LooseClass) -> Result<()> {
    let at = l.at;
    if at.is_integral() {
        return Err(Error::InvalidModel(format!("loose class g{} sits on a chain point", l.id)));
    }
    if at.chain > num_zchains {
        return Err(Error::InvalidModel(format!("loose class g{} on unknown chain {}", l.id, at.chain)));
    }
    if at.chain == 0 && at.level.is_negative() {
        return Err(Error::BetweenChains);
    }
    let floor = at.level.floor();
    let lo = GeneratorId::new(at.chain, floor + 1);
    let hi = GeneratorId::new(at.chain, floor + 2);
    if l.succ != lo && l.succ != hi {
        return Err(Error::MonotonicityViolation(format!(
            "g{} at {} must map to {} or {}, not {}",
            l.id, at, lo, hi, l.succ
        )));
    }
    debug_assert!(!l.succ.level.is_zero() || at.chain != 0);
    Ok(())
}
