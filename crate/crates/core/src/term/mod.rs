//! One-variable terms and quantifier-free formulas of the language with
//! `+`, `-`, `χ`, `χ⁻¹`, `δₙ`, `c`, `d` and `∞`.

mod parse;

use alloc::boxed::Box;
use core::fmt;

use crate::element::{Ext, GroupElement};
use crate::model::ModelSpec;

pub use parse::{parse_chifn, parse_element, parse_formula, parse_term, parse_value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedConst {
    C,
    D,
    Inf,
    Zero,
}

impl NamedConst {
    pub fn value(&self, model: &ModelSpec) -> Ext {
        match self {
            NamedConst::C => Ext::Fin(model.c().element()),
            NamedConst::D => Ext::Fin(model.d()),
            NamedConst::Inf => Ext::Inf,
            NamedConst::Zero => Ext::zero(),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            NamedConst::C => "c",
            NamedConst::D => "d",
            NamedConst::Inf => "inf",
            NamedConst::Zero => "0",
        }
    }
}

/// A term in the single variable `x`. Subtraction is `Add(t, Neg(s))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var,
    Const(NamedConst),
    Literal(GroupElement),
    Add(Box<Term>, Box<Term>),
    Neg(Box<Term>),
    Chi(Box<Term>),
    ChiInv(Box<Term>),
    /// `δₙ`, with `n ≥ 1`.
    Div(Box<Term>, u64),
}

impl Term {
    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(a: Term, b: Term) -> Term {
        Term::add(a, Term::neg(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Term) -> Term {
        Term::Neg(Box::new(a))
    }

    pub fn chi(a: Term) -> Term {
        Term::Chi(Box::new(a))
    }

    pub fn chi_inv(a: Term) -> Term {
        Term::ChiInv(Box::new(a))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(a: Term, n: u64) -> Term {
        assert!(n >= 1, "div needs n >= 1");
        Term::Div(Box::new(a), n)
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Var | Term::Const(_) | Term::Literal(_) => 1,
            Term::Add(a, b) => 1 + a.depth().max(b.depth()),
            Term::Neg(a) | Term::Chi(a) | Term::ChiInv(a) | Term::Div(a, _) => 1 + a.depth(),
        }
    }

    /// Structural evaluation; `∞` absorbs every operation.
    pub fn eval(&self, x: &Ext, model: &ModelSpec) -> Ext {
        match self {
            Term::Var => x.clone(),
            Term::Const(k) => k.value(model),
            Term::Literal(a) => Ext::Fin(a.clone()),
            Term::Add(a, b) => a.eval(x, model).add(&b.eval(x, model)),
            Term::Neg(a) => a.eval(x, model).neg(),
            Term::Chi(a) => model.chi_ext(&a.eval(x, model)),
            Term::ChiInv(a) => model.chi_inv(&a.eval(x, model)),
            Term::Div(a, n) => match a.eval(x, model) {
                Ext::Fin(v) => Ext::Fin(v.div_n(*n)),
                Ext::Inf => Ext::Inf,
            },
        }
    }

    pub fn display<'a>(&'a self, model: Option<&'a ModelSpec>) -> TermDisplay<'a> {
        TermDisplay { t: self, model }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(None).fmt(f)
    }
}

pub struct TermDisplay<'a> {
    t: &'a Term,
    model: Option<&'a ModelSpec>,
}

impl TermDisplay<'_> {
    fn sub<'b>(&'b self, t: &'b Term) -> TermDisplay<'b> {
        TermDisplay { t, model: self.model }
    }
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.t {
            Term::Var => f.write_str("x"),
            Term::Const(k) => f.write_str(k.name()),
            Term::Literal(a) => write!(f, "[{}]", a.display(self.model)),
            Term::Add(a, b) => {
                write!(f, "{}", self.sub(a))?;
                match &**b {
                    Term::Neg(s) => {
                        f.write_str(" - ")?;
                        write_operand(f, self.sub(s), s)
                    }
                    s => {
                        f.write_str(" + ")?;
                        write_operand(f, self.sub(s), s)
                    }
                }
            }
            Term::Neg(a) => {
                f.write_str("-")?;
                write_operand(f, self.sub(a), a)
            }
            Term::Chi(a) => write!(f, "chi({})", self.sub(a)),
            Term::ChiInv(a) => write!(f, "ichi({})", self.sub(a)),
            Term::Div(a, n) => write!(f, "div({}, {n})", self.sub(a)),
        }
    }
}

/// Operands of a binary `+`/`-` or a unary minus: sums need parentheses.
fn write_operand(f: &mut fmt::Formatter<'_>, d: TermDisplay<'_>, t: &Term) -> fmt::Result {
    if matches!(t, Term::Add(..)) {
        write!(f, "({d})")
    } else {
        write!(f, "{d}")
    }
}

/// A quantifier-free formula in `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Lt(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    /// `∞ = ∞` holds, `∞ < ∞` does not, and every group element is below `∞`.
    pub fn eval(&self, x: &Ext, model: &ModelSpec) -> bool {
        match self {
            Formula::Eq(t, s) => t.eval(x, model) == s.eval(x, model),
            Formula::Lt(t, s) => t.eval(x, model) < s.eval(x, model),
            Formula::Not(a) => !a.eval(x, model),
            Formula::And(a, b) => a.eval(x, model) && b.eval(x, model),
            Formula::Or(a, b) => a.eval(x, model) || b.eval(x, model),
        }
    }

    pub fn display<'a>(&'a self, model: Option<&'a ModelSpec>) -> FormulaDisplay<'a> {
        FormulaDisplay { phi: self, model }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display(None).fmt(f)
    }
}

pub struct FormulaDisplay<'a> {
    phi: &'a Formula,
    model: Option<&'a ModelSpec>,
}

impl FormulaDisplay<'_> {
    fn sub<'b>(&'b self, phi: &'b Formula, paren: bool) -> impl fmt::Display + 'b {
        Wrapped { inner: FormulaDisplay { phi, model: self.model }, paren }
    }
}

struct Wrapped<'a> {
    inner: FormulaDisplay<'a>,
    paren: bool,
}

impl fmt::Display for Wrapped<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.paren {
            write!(f, "({})", self.inner)
        } else {
            write!(f, "{}", self.inner)
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phi {
            Formula::Eq(t, s) => write!(f, "{} = {}", t.display(self.model), s.display(self.model)),
            Formula::Lt(t, s) => write!(f, "{} < {}", t.display(self.model), s.display(self.model)),
            Formula::Not(a) => write!(f, "not {}", self.sub(a, !matches!(**a, Formula::Not(_)))),
            Formula::And(a, b) => write!(
                f,
                "{} and {}",
                self.sub(a, matches!(**a, Formula::Or(..))),
                self.sub(b, matches!(**b, Formula::Or(..) | Formula::And(..)))
            ),
            Formula::Or(a, b) => write!(f, "{} or {}", self.sub(a, false), self.sub(b, matches!(**b, Formula::Or(..)))),
        }
    }
}
