//! Model constructions: ℤ-chain insertion at special cuts, loose class
//! adjunction, quotients by chain suffixes, embeddings between models, the
//! `Δ_Γ` trichotomy and the simple extension classifier.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::element::GroupElement;
use crate::error::{Error, Result};
use crate::model::{GeneratorId, LooseClass, ModelSpec};
use crate::oracle::{random_element_with, rng, RandomParams};
use crate::rational::level;

/// The special cuts of a model, as prefix lengths: cut `m` is the lower set
/// made of chains `0..m`. Every nonempty χ-closed lower set of the χ-set is
/// a union of whole chains, so these are all of them.
pub fn special_cuts(model: &ModelSpec) -> Vec<u32> {
    (1..=model.num_chains()).collect()
}

/// A weakly increasing list of special cuts of a base model, one new
/// ℤ-chain per entry. Entries at the same cut stack upwards in list order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionPlan(Vec<u32>);

impl ExtensionPlan {
    pub fn new(cuts: Vec<u32>, base: &ModelSpec) -> Result<Self> {
        let max = base.num_chains();
        if let Some(&cut) = cuts.iter().find(|&&m| m == 0 || m > max) {
            return Err(Error::InvalidCut { cut, max });
        }
        if cuts.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::NonMonotonePlan);
        }
        Ok(Self(cuts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn cuts(&self) -> &[u32] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Where a source chain lands: `(j, l) ↦ (target, l + offset)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainImage {
    pub target: u32,
    pub offset: i64,
}

/// A map on basis classes, extended linearly to elements.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct EmbeddingMap {
    pub chains: Vec<ChainImage>,
    /// Images of loose classes, keyed by loose id in the source.
    pub loose: BTreeMap<u32, GeneratorId>,
    /// Individual exceptions, applied before the chain maps.
    pub overrides: BTreeMap<GeneratorId, GeneratorId>,
}

impl EmbeddingMap {
    pub fn identity(model: &ModelSpec) -> Self {
        Self {
            chains: (0..model.num_chains()).map(|j| ChainImage { target: j, offset: 0 }).collect(),
            loose: model.loose().iter().map(|l| (l.id, l.at)).collect(),
            overrides: BTreeMap::new(),
        }
    }

    pub fn map_generator(&self, g: &GeneratorId, src: &ModelSpec) -> Option<GeneratorId> {
        if let Some(h) = self.overrides.get(g) {
            return Some(*h);
        }
        if let Some(l) = src.loose_at(g) {
            return self.loose.get(&l.id).copied();
        }
        let img = self.chains.get(g.chain as usize)?;
        Some(GeneratorId::new(img.target, g.level + level(img.offset)))
    }

    pub fn apply(&self, x: &GroupElement, src: &ModelSpec) -> Option<GroupElement> {
        let mut out = GroupElement::zero();
        for (g, q) in x.terms() {
            out.add_term(self.map_generator(g, src)?, q);
        }
        Some(out)
    }
}

/// Outcome of [`check_embedding`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCheck {
    pub ok: bool,
    pub violations: Vec<String>,
}

/// Checks that `map` is an embedding of `src` into `dst`: dominance is
/// strictly preserved, `succ` commutes, the classes of `c` and `d` are fixed,
/// and (on `samples` random elements) order and `χ` are preserved.
pub fn check_embedding(
    map: &EmbeddingMap,
    src: &ModelSpec,
    dst: &ModelSpec,
    samples: usize,
    seed: u64,
) -> EmbeddingCheck {
    let mut v: Vec<String> = Vec::new();
    if map.chains.len() != src.num_chains() as usize {
        v.push(format!("expected {} chain images, got {}", src.num_chains(), map.chains.len()));
        return EmbeddingCheck { ok: false, violations: v };
    }
    if map.chains[0] != (ChainImage { target: 0, offset: 0 }) {
        v.push(String::from("the omega chain must map identically"));
    }
    for w in map.chains.windows(2) {
        if w[0].target >= w[1].target {
            v.push(format!("chain images {} and {} are out of order", w[0].target, w[1].target));
        }
    }
    for l in src.loose() {
        match map.loose.get(&l.id) {
            None => v.push(format!("g{} has no image", l.id)),
            Some(h) if dst.loose_at(h).is_none() => v.push(format!("g{} must map to a loose class", l.id)),
            _ => {}
        }
    }
    let tests = test_generators(map, src);
    let img = |g: &GeneratorId| map.map_generator(g, src);
    for g in &tests {
        match img(g) {
            None => v.push(format!("{} has no image", src.generator_name(g))),
            Some(h) if !dst.contains_generator(&h) => {
                v.push(format!("{} maps outside the target: {h}", src.generator_name(g)))
            }
            Some(h) => {
                if img(&src.succ(g)) != Some(dst.succ(&h)) {
                    v.push(format!("succ does not commute at {}", src.generator_name(g)));
                }
            }
        }
    }
    for g in [GeneratorId::omega(0), GeneratorId::omega(1)] {
        if img(&g) != Some(g) {
            v.push(format!("{g} must be fixed"));
        }
    }
    for (i, g) in tests.iter().enumerate() {
        for h in &tests[i + 1..] {
            if let (Some(a), Some(b)) = (img(g), img(h)) {
                if (g < h) != (a < b) || a == b {
                    v.push(format!(
                        "dominance not preserved between {} and {}",
                        src.generator_name(g),
                        src.generator_name(h)
                    ));
                }
            }
        }
    }
    if v.is_empty() {
        let mut r = rng(seed);
        let params = RandomParams::default();
        for _ in 0..samples {
            let x = random_element_with(src, &mut r, &params);
            let y = random_element_with(src, &mut r, &params);
            let (Some(fx), Some(fy)) = (map.apply(&x, src), map.apply(&y, src)) else {
                v.push(format!("no image for {}", x.display(Some(src))));
                break;
            };
            if x.cmp(&y) != fx.cmp(&fy) {
                v.push(format!("order not preserved at {} vs {}", x.display(Some(src)), y.display(Some(src))));
                break;
            }
            if map.apply(&src.chi(&x), src) != Some(dst.chi(&fx)) {
                v.push(format!("chi does not commute at {}", x.display(Some(src))));
                break;
            }
        }
    }
    EmbeddingCheck { ok: v.is_empty(), violations: v }
}

/// A finite set of classes that witnesses every generator-level condition:
/// a band of levels on each chain around every loose class and override.
fn test_generators(map: &EmbeddingMap, src: &ModelSpec) -> Vec<GeneratorId> {
    let mut levels: BTreeMap<u32, BTreeSet<i64>> = BTreeMap::new();
    let mut out: BTreeSet<GeneratorId> = BTreeSet::new();
    for j in 0..src.num_chains() {
        levels.entry(j).or_default().extend(-3..=3);
    }
    let mut mark = |g: &GeneratorId| {
        let f = g.level.floor().to_integer();
        levels.entry(g.chain).or_default().extend(f - 2..=f + 3);
    };
    for l in src.loose() {
        mark(&l.at);
        mark(&l.succ);
        out.insert(l.at);
    }
    for g in map.overrides.keys() {
        mark(g);
    }
    for (j, ls) in levels {
        for l in ls {
            let g = GeneratorId::zed(j, l);
            if src.contains_generator(&g) {
                out.insert(g);
            }
        }
    }
    out.into_iter().collect()
}

/// A model built from another, with the inclusion of the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    pub model: ModelSpec,
    pub embedding: EmbeddingMap,
    /// Chain indices, in the new model, of the inserted ℤ-chains, in plan
    /// order.
    pub inserted_chains: Vec<u32>,
}

/// Inserts one new ℤ-chain per plan entry. The chain for cut `m` sits
/// above chain `m - 1` of the original model and below chain `m`.
pub fn extend_zed(model: &ModelSpec, plan: &ExtensionPlan) -> Result<Extension> {
    let plan = ExtensionPlan::new(plan.0.clone(), model)?;
    let mut old_to_new = Vec::with_capacity(model.num_chains() as usize);
    let mut inserted = Vec::with_capacity(plan.0.len());
    let mut next = 0u32;
    for j in 0..model.num_chains() {
        old_to_new.push(next);
        next += 1;
        for _ in plan.0.iter().filter(|&&m| m == j + 1) {
            inserted.push(next);
            next += 1;
        }
    }
    let rechain = |g: &GeneratorId| GeneratorId::new(old_to_new[g.chain as usize], g.level);
    let loose =
        model.loose().iter().map(|l| LooseClass { id: l.id, at: rechain(&l.at), succ: rechain(&l.succ) }).collect();
    let new_model = ModelSpec::new(next - 1, loose)?;
    let embedding = EmbeddingMap {
        chains: old_to_new.iter().map(|&t| ChainImage { target: t, offset: 0 }).collect(),
        loose: model.loose().iter().map(|l| (l.id, rechain(&l.at))).collect(),
        overrides: BTreeMap::new(),
    };
    Ok(Extension { model: new_model, embedding, inserted_chains: inserted })
}

/// Adjoins a loose class at the non-integral position `gap` with
/// `χ(-g) = -succ`.
pub fn adjoin_class(model: &ModelSpec, gap: GeneratorId, succ: GeneratorId) -> Result<ModelSpec> {
    if gap.is_integral() {
        return Err(Error::InvalidArgument(format!("{gap} is a chain point, not a gap")));
    }
    if gap.chain > model.num_zchains() {
        return Err(Error::InvalidArgument(format!("unknown chain {}", gap.chain)));
    }
    if gap.chain == 0 && gap.level < level(0) {
        return Err(Error::BetweenChains);
    }
    if model.loose_at(&gap).is_some() {
        return Err(Error::InvalidModel(format!("{gap} is already occupied")));
    }
    let mut loose = model.loose().to_vec();
    loose.push(LooseClass { id: model.next_loose_id(), at: gap, succ });
    ModelSpec::new(model.num_zchains(), loose)
}

/// Projection onto the chains below a special cut.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Projection {
    pub keep: u32,
}

impl Projection {
    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        x.filter(|g| g.chain < self.keep)
    }
}

/// The quotient by the span of chains `keep..`, with its projection.
pub fn quotient(model: &ModelSpec, keep: u32) -> Result<(ModelSpec, Projection)> {
    let max = model.num_chains();
    if keep == 0 || keep > max {
        return Err(Error::InvalidCut { cut: keep, max });
    }
    let loose = model.loose().iter().filter(|l| l.at.chain < keep).cloned().collect();
    Ok((ModelSpec::new(keep - 1, loose)?, Projection { keep }))
}

/// A substructure given by whole chains and loose classes; always contains
/// the ω-chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubModel {
    pub chains: BTreeSet<u32>,
    pub loose: BTreeSet<u32>,
}

impl SubModel {
    pub fn new(chains: BTreeSet<u32>, loose: BTreeSet<u32>, ambient: &ModelSpec) -> Result<Self> {
        let s = Self { chains, loose };
        s.validate(ambient)?;
        Ok(s)
    }

    pub fn omega() -> Self {
        Self { chains: [0].into_iter().collect(), loose: BTreeSet::new() }
    }

    pub fn validate(&self, ambient: &ModelSpec) -> Result<()> {
        if !self.chains.contains(&0) {
            return Err(Error::InvalidSubmodel("the omega chain is required".into()));
        }
        if let Some(j) = self.chains.iter().find(|&&j| j > ambient.num_zchains()) {
            return Err(Error::InvalidSubmodel(format!("unknown chain {j}")));
        }
        for id in &self.loose {
            match ambient.loose_by_id(*id) {
                None => return Err(Error::InvalidSubmodel(format!("unknown loose class g{id}"))),
                Some(l) if !self.chains.contains(&l.at.chain) => {
                    return Err(Error::InvalidSubmodel(format!("g{id} needs its chain {}", l.at.chain)))
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn contains_generator(&self, g: &GeneratorId, ambient: &ModelSpec) -> bool {
        match ambient.loose_at(g) {
            Some(l) => self.loose.contains(&l.id),
            None => self.chains.contains(&g.chain),
        }
    }

    pub fn spans(&self, x: &GroupElement, ambient: &ModelSpec) -> bool {
        x.support().all(|g| self.contains_generator(g, ambient))
    }

    /// Most dominant class of `x` outside the substructure.
    pub fn pivot(&self, x: &GroupElement, ambient: &ModelSpec) -> Option<GeneratorId> {
        x.support().find(|g| !self.contains_generator(g, ambient)).copied()
    }

    /// The substructure as a model in its own right, with the renaming of
    /// chains and the embedding into the ambient model.
    pub fn to_model(&self, ambient: &ModelSpec) -> Result<(ModelSpec, EmbeddingMap)> {
        self.realize(ambient, None)
    }

    fn realize(&self, ambient: &ModelSpec, extra: Option<GeneratorId>) -> Result<(ModelSpec, EmbeddingMap)> {
        let chains: Vec<u32> = self.chains.iter().copied().collect();
        let index = |j: u32| chains.iter().position(|&c| c == j).map(|i| i as u32);
        let rechain = |g: &GeneratorId| index(g.chain).map(|j| GeneratorId::new(j, g.level));
        let mut loose = Vec::new();
        let mut emb_loose = BTreeMap::new();
        let classes =
            self.loose.iter().filter_map(|id| ambient.loose_by_id(*id)).chain(extra.and_then(|g| ambient.loose_at(&g)));
        for l in classes {
            let (Some(at), Some(succ)) = (rechain(&l.at), rechain(&l.succ)) else {
                return Err(Error::InvalidSubmodel(format!("g{} maps outside the submodel", l.id)));
            };
            loose.push(LooseClass { id: l.id, at, succ });
            emb_loose.insert(l.id, l.at);
        }
        let model = ModelSpec::new(chains.len() as u32 - 1, loose)?;
        let embedding = EmbeddingMap {
            chains: chains.iter().map(|&t| ChainImage { target: t, offset: 0 }).collect(),
            loose: emb_loose,
            overrides: BTreeMap::new(),
        };
        Ok((model, embedding))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaCase {
    /// `Δ_Γ` is a special cut without maximum. Finite-support elements
    /// always have a pivot class, so this case never arises here.
    SpecialCutOnly,
    /// `Δ_Γ` is the initial segment of the χ-set up to `b`.
    MaxInsideChiSet,
    /// `Δ_Γ` is a special cut of the substructure plus one new point `b`.
    CutPlusNewPoint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub case: DeltaCase,
    pub pivot: GeneratorId,
    /// The maximum of `Δ_Γ`.
    pub witness: GroupElement,
    /// For [`DeltaCase::CutPlusNewPoint`], the special cut of the
    /// substructure (number of its chains below the pivot).
    pub cut: Option<u32>,
}

impl DeltaReport {
    /// Membership in `Δ_Γ = {-succ(h) : h in the substructure, h ≻ pivot} ∪ {b}`.
    pub fn contains(&self, x: &GroupElement, sub: &SubModel, ambient: &ModelSpec) -> bool {
        if *x == self.witness {
            return true;
        }
        let Some(p) = ambient.point_of(x) else { return false };
        let s = p.generator();
        let mut preimages: Vec<GeneratorId> = ambient.loose().iter().filter(|l| l.succ == s).map(|l| l.at).collect();
        if let Some(q) = p.pred() {
            preimages.push(q.generator());
        } else if p.chain() == 0 && p.level() == 1 {
            preimages.push(GeneratorId::omega(0));
        }
        preimages.iter().any(|h| *h < self.pivot && sub.contains_generator(h, ambient))
    }
}

/// `Δ_Γ = χ((Γ + ℚ^{≠0}a)^{<0})` for the substructure `sub`.
pub fn delta_gamma(ambient: &ModelSpec, sub: &SubModel, a: &GroupElement) -> Result<DeltaReport> {
    sub.validate(ambient)?;
    ambient.check_element(a)?;
    let pivot = sub.pivot(a, ambient).ok_or(Error::ElementInSubmodel)?;
    let s = ambient.succ(&pivot);
    let witness = -GroupElement::unit(s);
    let report = if sub.chains.contains(&s.chain) {
        DeltaReport { case: DeltaCase::MaxInsideChiSet, pivot, witness, cut: None }
    } else {
        let cut = sub.chains.iter().filter(|&&j| j < pivot.chain).count() as u32;
        DeltaReport { case: DeltaCase::CutPlusNewPoint, pivot, witness, cut: Some(cut) }
    };
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimpleExtensionKind {
    /// `Γ⟨a⟩ ≅ Γ_f` for the plan.
    GammaF(ExtensionPlan),
    /// `Γ⟨a⟩ ≅ Γ_f ⊕ ℚa`, where `a` lives in the given loose class modulo `Γ_f`.
    GammaFPlusLine(ExtensionPlan, GeneratorId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: SimpleExtensionKind,
    /// A model of `Γ⟨a⟩`.
    pub model: ModelSpec,
    /// The substructure as a model, and its embedding into `model`.
    pub base: ModelSpec,
    pub base_embedding: EmbeddingMap,
    /// The element corresponding to `a` in `model`.
    pub image_of_a: GroupElement,
    /// `Δ` reports along the way, one per step.
    pub trace: Vec<DeltaReport>,
}

/// Classifies the simple extension of `sub` generated by `a` by adjoining
/// whole chains of successive pivots until `a` is spanned, or until the
/// pivot is a loose class whose chain is already present.
pub fn classify_simple_extension(ambient: &ModelSpec, sub: &SubModel, a: &GroupElement) -> Result<Classification> {
    delta_gamma(ambient, sub, a)?;
    let mut current = sub.clone();
    let mut plan = Vec::new();
    let mut trace = Vec::new();
    let mut line = None;
    while let Some(pivot) = current.pivot(a, ambient) {
        trace.push(delta_gamma(ambient, &current, a)?);
        if ambient.loose_at(&pivot).is_some() && current.chains.contains(&pivot.chain) {
            line = Some(pivot);
            break;
        }
        plan.push(sub.chains.iter().filter(|&&j| j < pivot.chain).count() as u32);
        current.chains.insert(pivot.chain);
    }
    let (base, _) = sub.to_model(ambient)?;
    let (model, into_ambient) = current.realize(ambient, line)?;
    let renumber = |g: &GeneratorId| {
        let j = into_ambient.chains.iter().position(|c| c.target == g.chain).expect("chain kept") as u32;
        GeneratorId::new(j, g.level)
    };
    let kept = |g: &GeneratorId| current.contains_generator(g, ambient) || Some(*g) == line;
    let image_of_a = a.filter(kept).map_generators(renumber);
    let base_embedding = EmbeddingMap {
        chains: sub
            .chains
            .iter()
            .map(|&j| ChainImage { target: renumber(&GeneratorId::zed(j, 0)).chain, offset: 0 })
            .collect(),
        loose: sub.loose.iter().filter_map(|id| ambient.loose_by_id(*id)).map(|l| (l.id, renumber(&l.at))).collect(),
        overrides: BTreeMap::new(),
    };
    let plan = ExtensionPlan::new(plan, &base)?;
    let kind = match line {
        None => SimpleExtensionKind::GammaF(plan),
        Some(g) => SimpleExtensionKind::GammaFPlusLine(plan, g),
    };
    Ok(Classification { kind, model, base, base_embedding, image_of_a, trace })
}
