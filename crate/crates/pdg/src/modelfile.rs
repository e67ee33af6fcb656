//! Line-oriented model files.
//!
//! ```text
//! model
//! zchains 1
//! zchain 2 at-cut 1
//! loose g1 at e9/2 succ e5
//! ```
//!
//! `zchains N` declares the base chains. Each `zchain <id> at-cut <m>` line
//! inserts one more ℤ-chain at special cut `m` of the base; `<id>` is the
//! index the new chain ends up with and must match. Placement lines must be
//! weakly increasing in `m`. Loose lines use the final chain numbering.
//! Blank lines and `#` comments are ignored.
//!
//! [`serialize`] writes the canonical form, which has no placement lines.

use std::fmt;
use std::fmt::Write as _;

use pdg_core::extensions::{extend_zed, ExtensionPlan};
use pdg_core::rational::parse_level;
use pdg_core::{GeneratorId, LooseClass, ModelSpec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelFileError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ModelFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "model file line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ModelFileError {}

fn err(line: usize, message: impl Into<String>) -> ModelFileError {
    ModelFileError { line, message: message.into() }
}

/// Parses `e<level>` or `b<chain>.<level>` with a rational level.
pub fn parse_position(text: &str) -> Option<GeneratorId> {
    if let Some(l) = text.strip_prefix('e') {
        return Some(GeneratorId::new(0, parse_level(l)?));
    }
    let (chain, l) = text.strip_prefix('b')?.split_once('.')?;
    let chain: u32 = chain.parse().ok()?;
    if chain == 0 {
        return None;
    }
    Some(GeneratorId::new(chain, parse_level(l)?))
}

pub fn parse(text: &str) -> Result<ModelSpec, ModelFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "model")) => {}
        Some((n, _)) => return Err(err(n, "expected `model` header")),
        None => return Err(err(1, "empty model file")),
    }
    let mut base: Option<u32> = None;
    let mut placements: Vec<(usize, u32, u32)> = Vec::new();
    let mut loose: Vec<(usize, LooseClass)> = Vec::new();
    for (n, line) in lines {
        let words: Vec<&str> = line.split_whitespace().collect();
        match words.as_slice() {
            ["zchains", k] => {
                if base.is_some() {
                    return Err(err(n, "duplicate `zchains` line"));
                }
                base = Some(k.parse().map_err(|_| err(n, format!("invalid chain count `{k}`")))?);
            }
            ["zchain", id, "at-cut", m] => {
                let id = id.parse().map_err(|_| err(n, format!("invalid chain id `{id}`")))?;
                let m = m.parse().map_err(|_| err(n, format!("invalid cut `{m}`")))?;
                placements.push((n, id, m));
            }
            ["loose", id, "at", at, "succ", succ] => {
                let id = id
                    .strip_prefix('g')
                    .and_then(|d| d.parse().ok())
                    .ok_or_else(|| err(n, format!("invalid loose class name `{id}`")))?;
                let at = parse_position(at).ok_or_else(|| err(n, format!("invalid position `{at}`")))?;
                let succ = parse_position(succ).ok_or_else(|| err(n, format!("invalid generator `{succ}`")))?;
                loose.push((n, LooseClass { id, at, succ }));
            }
            _ => return Err(err(n, format!("unrecognised line `{line}`"))),
        }
    }
    let base = ModelSpec::with_zchains(base.unwrap_or(0));
    let last = placements.last().map_or(0, |p| p.0);
    let plan =
        ExtensionPlan::new(placements.iter().map(|p| p.2).collect(), &base).map_err(|e| err(last, e.to_string()))?;
    let ext = extend_zed(&base, &plan).map_err(|e| err(last, e.to_string()))?;
    for ((n, id, _), actual) in placements.iter().zip(&ext.inserted_chains) {
        if id != actual {
            return Err(err(*n, format!("chain inserted here gets index {actual}, not {id}")));
        }
    }
    let last = loose.last().map_or(0, |l| l.0);
    if let Some((n, l)) = loose.iter().find(|(_, l)| l.at.is_integral()) {
        return Err(err(*n, format!("g{} must sit in a gap, not at {}", l.id, l.at)));
    }
    ModelSpec::new(ext.model.num_zchains(), loose.into_iter().map(|(_, l)| l).collect())
        .map_err(|e| err(last, e.to_string()))
}

/// Canonical text: header, chain count, loose classes in dominance order.
pub fn serialize(model: &ModelSpec) -> String {
    let mut s = String::from("model\n");
    let _ = writeln!(s, "zchains {}", model.num_zchains());
    for l in model.loose() {
        let _ = writeln!(s, "loose g{} at {} succ {}", l.id, l.at, l.succ);
    }
    s
}
