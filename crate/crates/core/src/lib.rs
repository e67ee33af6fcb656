//! Exact arithmetic for models of the theory of divisible centripetal
//! precontraction groups whose contraction image is discrete.
//!
//! A model is described by a [`ModelSpec`]: a basis of archimedean classes made
//! of one ω-indexed chain `e0, e1, e2, ...`, finitely many ℤ-indexed chains
//! `bj.l`, and finitely many loose classes `gN` sitting inside chain gaps.
//! Elements are finite rational combinations of basis classes ordered
//! lexicographically, and the contraction `χ` sends an element to the signed
//! unit at the successor of its dominant class.
//!
//! On top of that representation the crate provides:
//!
//! * [`term`]: a parser, printer and evaluator for one-variable terms and
//!   quantifier-free formulas over `+`, `-`, `χ`, `χ⁻¹`, `δₙ`, `c`, `d`, `∞`;
//! * [`chifn`]: χ-functions `Σ qᵢ·χ^{kᵢ}(x) + α` on the χ-set, with their
//!   domains, monotonicity and finite solvers;
//! * [`piecewise`]: piecewise χ-function representations of terms restricted
//!   to the χ-set;
//! * [`defset`]: normal forms of quantifier-free definable subsets of the χ-set;
//! * [`extensions`]: ℤ-chain insertion, loose class adjunction, quotients,
//!   embeddings and the simple extension classifier;
//! * [`oracle`]: windowed brute force, seeded random generators and the axiom
//!   suite used to validate everything above.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod chifn;
pub mod defset;
pub mod element;
mod error;
pub mod extensions;
pub mod model;
pub mod oracle;
pub mod piecewise;
pub mod rational;
pub mod region;
pub mod term;

pub use crate::chifn::{ChiFunction, Membership, Monotonicity, SignProfile, ZeroSet};
pub use crate::defset::SetNormalForm;
pub use crate::element::{Ext, GroupElement};
pub use crate::error::{Error, ParseError, ParseErrorKind, Result};
pub use crate::model::{ChiSetPoint, GeneratorId, LooseClass, ModelSpec, ValuationOrdering};
pub use crate::piecewise::Piecewise;
pub use crate::rational::{Level, Q};
pub use crate::region::{Cut, Region};
pub use crate::term::{Formula, NamedConst, Term};
