//! Lexer and recursive-descent parsers for elements, terms, formulas and the
//! textual form of χ-functions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Formula, NamedConst, Term};
use crate::chifn::ChiFunction;
use crate::element::{Ext, GroupElement};
use crate::error::{ParseError, ParseErrorKind};
use crate::model::{GeneratorId, ModelSpec};
use crate::rational::{level, Q};

type PResult<T> = core::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> PResult<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let (l0, c0) = (line, column);
        if ch == '\n' {
            chars.next();
            line += 1;
            column = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            column += 1;
            continue;
        }
        let mut take_while = |pred: fn(char) -> bool| {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if !pred(c) {
                    break;
                }
                s.push(c);
                chars.next();
                column += 1;
            }
            s
        };
        let tok = if ch.is_ascii_alphabetic() || ch == '_' {
            Tok::Ident(take_while(|c| c.is_ascii_alphanumeric() || c == '_'))
        } else if ch.is_ascii_digit() {
            Tok::Num(take_while(|c| c.is_ascii_digit()))
        } else if "+-*/()[],=<.^{}".contains(ch) {
            chars.next();
            column += 1;
            Tok::Sym(ch)
        } else {
            return Err(ParseError { kind: ParseErrorKind::UnexpectedToken(ch.to_string()), line: l0, column: c0 });
        };
        out.push(Token { tok, line: l0, column: c0 });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser<'m> {
    toks: Vec<Token>,
    pos: usize,
    model: &'m ModelSpec,
}

impl<'m> Parser<'m> {
    fn new(text: &str, model: &'m ModelSpec) -> PResult<Self> {
        Ok(Self { toks: lex(text)?, pos: 0, model })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        self.error_at(self.pos, kind)
    }

    fn error_at(&self, pos: usize, kind: ParseErrorKind) -> ParseError {
        let t = &self.toks[pos];
        ParseError { kind, line: t.line, column: t.column }
    }

    fn unexpected(&self) -> ParseError {
        let kind = match self.peek() {
            Tok::End => ParseErrorKind::UnexpectedEnd,
            Tok::Ident(s) | Tok::Num(s) => ParseErrorKind::UnexpectedToken(s.clone()),
            Tok::Sym(c) => ParseErrorKind::UnexpectedToken(c.to_string()),
        };
        self.error_here(kind)
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn is_ident(&self, name: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == name)
    }

    fn expect_ident(&mut self, name: &str) -> PResult<()> {
        if self.is_ident(name) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn finish(&self) -> PResult<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error_here(ParseErrorKind::TrailingInput))
        }
    }

    fn nat(&mut self) -> PResult<u64> {
        match self.peek().clone() {
            Tok::Num(s) => {
                let v = s.parse::<u64>().map_err(|_| self.error_here(ParseErrorKind::InvalidNumber(s.clone())))?;
                self.bump();
                Ok(v)
            }
            _ => Err(self.unexpected()),
        }
    }

    fn int(&mut self) -> PResult<i64> {
        let neg = self.eat_sym('-');
        let start = self.pos;
        let n = self.nat()?;
        let v = i64::try_from(n).map_err(|_| self.error_at(start, ParseErrorKind::InvalidNumber(format!("{n}"))))?;
        Ok(if neg { -v } else { v })
    }

    fn bigint(&mut self) -> PResult<BigInt> {
        match self.peek().clone() {
            Tok::Num(s) => {
                self.bump();
                Ok(s.parse::<BigInt>().expect("lexer only yields digits"))
            }
            _ => Err(self.unexpected()),
        }
    }

    /// `INT ['/' NAT]` without sign.
    fn rational(&mut self) -> PResult<Q> {
        let n = self.bigint()?;
        if self.eat_sym('/') {
            let at = self.pos;
            let d = self.bigint()?;
            if d.is_zero() {
                return Err(self.error_at(at, ParseErrorKind::InvalidNumber("0".into())));
            }
            Ok(Q::new(n, d))
        } else {
            Ok(Q::from_integer(n))
        }
    }

    fn generator(&mut self) -> PResult<GeneratorId> {
        let at = self.pos;
        let Tok::Ident(name) = self.peek().clone() else {
            return Err(self.unexpected());
        };
        let unknown = |p: &Self, n: &str| p.error_at(at, ParseErrorKind::UnknownGenerator(n.into()));
        let (head, digits) = name.split_at(1);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(self.error_here(ParseErrorKind::UnknownIdentifier(name)));
        }
        let index: u64 = digits.parse().map_err(|_| self.error_here(ParseErrorKind::InvalidNumber(digits.into())))?;
        self.bump();
        match head {
            "e" => {
                let l = i64::try_from(index).map_err(|_| unknown(self, &name))?;
                Ok(GeneratorId::omega(l))
            }
            "b" => {
                self.expect_sym('.')?;
                let l = self.int()?;
                let chain = u32::try_from(index).ok().filter(|j| *j >= 1 && *j <= self.model.num_zchains());
                match chain {
                    Some(j) => Ok(GeneratorId::new(j, level(l))),
                    None => Err(unknown(self, &format!("{name}.{l}"))),
                }
            }
            "g" => match u32::try_from(index).ok().and_then(|id| self.model.loose_by_id(id)) {
                Some(class) => Ok(class.at),
                None => Err(unknown(self, &name)),
            },
            _ => Err(self.error_at(at, ParseErrorKind::UnknownIdentifier(name))),
        }
    }

    /// `[rational '*'] generator`, sign already consumed.
    fn signed_term(&mut self) -> PResult<(GeneratorId, Q)> {
        if matches!(self.peek(), Tok::Num(_)) {
            let q = self.rational()?;
            self.expect_sym('*')?;
            Ok((self.generator()?, q))
        } else {
            Ok((self.generator()?, Q::one()))
        }
    }

    fn element(&mut self) -> PResult<GroupElement> {
        if *self.peek() == Tok::Num("0".into()) && !matches!(self.peek_at(1), Tok::Sym('/') | Tok::Sym('*')) {
            self.bump();
            return Ok(GroupElement::zero());
        }
        let mut x = GroupElement::zero();
        let mut neg = self.eat_sym('-');
        loop {
            let (g, q) = self.signed_term()?;
            x.add_term(g, &if neg { -q } else { q });
            if self.eat_sym('+') {
                neg = false;
            } else if self.eat_sym('-') {
                neg = true;
            } else {
                return Ok(x);
            }
        }
    }

    fn term(&mut self) -> PResult<Term> {
        let mut t = self.unary()?;
        loop {
            if self.eat_sym('+') {
                t = Term::add(t, self.unary()?);
            } else if self.eat_sym('-') {
                t = Term::sub(t, self.unary()?);
            } else {
                return Ok(t);
            }
        }
    }

    fn unary(&mut self) -> PResult<Term> {
        if self.eat_sym('-') {
            Ok(Term::neg(self.unary()?))
        } else {
            self.primary()
        }
    }

    fn primary(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Sym('[') => {
                self.bump();
                let a = self.element()?;
                self.expect_sym(']')?;
                Ok(Term::Literal(a))
            }
            Tok::Sym('(') => {
                self.bump();
                let t = self.term()?;
                self.expect_sym(')')?;
                Ok(t)
            }
            Tok::Num(n) if n == "0" => {
                self.bump();
                Ok(Term::Const(NamedConst::Zero))
            }
            Tok::Ident(name) => {
                let at = self.pos;
                self.bump();
                match name.as_str() {
                    "x" => Ok(Term::Var),
                    "c" => Ok(Term::Const(NamedConst::C)),
                    "d" => Ok(Term::Const(NamedConst::D)),
                    "inf" => Ok(Term::Const(NamedConst::Inf)),
                    "chi" | "ichi" => {
                        self.expect_sym('(')?;
                        let t = self.term()?;
                        self.expect_sym(')')?;
                        Ok(if name == "chi" { Term::chi(t) } else { Term::chi_inv(t) })
                    }
                    "div" => {
                        self.expect_sym('(')?;
                        let t = self.term()?;
                        self.expect_sym(',')?;
                        let at_n = self.pos;
                        let n = self.nat()?;
                        if n == 0 {
                            return Err(self.error_at(at_n, ParseErrorKind::InvalidDivisor));
                        }
                        self.expect_sym(')')?;
                        Ok(Term::Div(alloc::boxed::Box::new(t), n))
                    }
                    "forall" | "exists" => Err(self
                        .error_at(at, ParseErrorKind::Unsupported("quantifiers are not part of the language".into()))),
                    _ => Err(self.error_at(at, ParseErrorKind::UnknownIdentifier(name))),
                }
            }
            _ => Err(self.unexpected()),
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let mut f = self.conjunction()?;
        while self.is_ident("or") {
            self.bump();
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut f = self.negation()?;
        while self.is_ident("and") {
            self.bump();
            f = Formula::and(f, self.negation()?);
        }
        Ok(f)
    }

    fn negation(&mut self) -> PResult<Formula> {
        if self.is_ident("not") {
            self.bump();
            return Ok(Formula::not(self.negation()?));
        }
        self.atom()
    }

    /// A comparison, or a parenthesised formula. Parentheses are ambiguous
    /// with term grouping, so the grouped reading is tried first and the
    /// error that got further wins.
    fn atom(&mut self) -> PResult<Formula> {
        let start = self.pos;
        let mut group_err = None;
        if self.is_sym('(') {
            self.bump();
            match self.formula().and_then(|f| self.expect_sym(')').map(|_| f)) {
                Ok(f) if !matches!(self.peek(), Tok::Sym('=' | '<' | '+' | '-')) => return Ok(f),
                Ok(_) => {}
                Err(e) => group_err = Some((self.pos, e)),
            }
            self.pos = start;
        }
        let res = self.comparison();
        match (res, group_err) {
            (Ok(f), _) => Ok(f),
            (Err(_), Some((gpos, ge))) if gpos > self.pos => Err(ge),
            (Err(e), _) => Err(e),
        }
    }

    fn comparison(&mut self) -> PResult<Formula> {
        let t = self.term()?;
        if self.eat_sym('=') {
            Ok(Formula::Eq(t, self.term()?))
        } else if self.eat_sym('<') {
            Ok(Formula::Lt(t, self.term()?))
        } else {
            Err(self.unexpected())
        }
    }

    /// `q*chi^{k}(x)`, `x`, or a bracketed constant; sign already consumed.
    fn chifn_summand(&mut self, neg: bool, terms: &mut Vec<(i64, Q)>, alpha: &mut GroupElement) -> PResult<()> {
        let sign = |q: Q| if neg { -q } else { q };
        if self.eat_sym('[') {
            let a = self.element()?;
            self.expect_sym(']')?;
            *alpha = &*alpha + &if neg { -a } else { a };
            return Ok(());
        }
        let q = if matches!(self.peek(), Tok::Num(_)) {
            let q = self.rational()?;
            self.expect_sym('*')?;
            q
        } else {
            Q::one()
        };
        if self.is_ident("x") {
            self.bump();
            terms.push((0, sign(q)));
            return Ok(());
        }
        self.expect_ident("chi")?;
        self.expect_sym('^')?;
        self.expect_sym('{')?;
        let k = self.int()?;
        self.expect_sym('}')?;
        self.expect_sym('(')?;
        self.expect_ident("x")?;
        self.expect_sym(')')?;
        terms.push((k, sign(q)));
        Ok(())
    }

    fn chifn(&mut self) -> PResult<ChiFunction> {
        if self.is_ident("inf") {
            self.bump();
            return Ok(ChiFunction::Const(Ext::Inf));
        }
        let mut terms = Vec::new();
        let mut alpha = GroupElement::zero();
        let mut neg = self.eat_sym('-');
        loop {
            self.chifn_summand(neg, &mut terms, &mut alpha)?;
            if self.eat_sym('+') {
                neg = false;
            } else if self.eat_sym('-') {
                neg = true;
            } else {
                return Ok(ChiFunction::from_parts(terms, alpha));
            }
        }
    }
}

/// Parses the element grammar, e.g. `3/2*e0 - 2*e3` or `b1.-2 + e4`.
pub fn parse_element(text: &str, model: &ModelSpec) -> PResult<GroupElement> {
    let mut p = Parser::new(text, model)?;
    let x = p.element()?;
    p.finish()?;
    Ok(x)
}

/// An element or one of the special tokens `c`, `d`, `inf`.
pub fn parse_value(text: &str, model: &ModelSpec) -> PResult<Ext> {
    let mut p = Parser::new(text, model)?;
    let v = match p.peek() {
        Tok::Ident(s) if s == "c" => {
            p.bump();
            Ext::Fin(model.c().element())
        }
        Tok::Ident(s) if s == "d" => {
            p.bump();
            Ext::Fin(model.d())
        }
        Tok::Ident(s) if s == "inf" => {
            p.bump();
            Ext::Inf
        }
        _ => Ext::Fin(p.element()?),
    };
    p.finish()?;
    Ok(v)
}

pub fn parse_term(text: &str, model: &ModelSpec) -> PResult<Term> {
    let mut p = Parser::new(text, model)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_formula(text: &str, model: &ModelSpec) -> PResult<Formula> {
    let mut p = Parser::new(text, model)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses `q1*chi^{k1}(x) + ... + [alpha]`, `[alpha]` or `inf`.
pub fn parse_chifn(text: &str, model: &ModelSpec) -> PResult<ChiFunction> {
    let mut p = Parser::new(text, model)?;
    let g = p.chifn()?;
    p.finish()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q_frac, q_int};
    use alloc::vec;

    fn err(r: PResult<impl core::fmt::Debug>) -> ParseError {
        r.unwrap_err()
    }

    #[test]
    fn element_grammar() {
        let m = ModelSpec::with_zchains(1);
        let x = parse_element("3/2*e0 - 2*e3", &m).unwrap();
        assert_eq!(
            x,
            GroupElement::from_terms([(GeneratorId::omega(0), q_frac(3, 2)), (GeneratorId::omega(3), q_int(-2))])
        );
        let y = parse_element("b1.-2 + e4", &m).unwrap();
        assert_eq!(y.dominant().unwrap().0, &GeneratorId::omega(4));
        assert!(parse_element("0", &m).unwrap().is_zero());
        assert_eq!(parse_element("-e3", &m).unwrap(), -GroupElement::unit(GeneratorId::omega(3)));
        let e = err(parse_element("b2.0", &m));
        assert_eq!(e.kind, ParseErrorKind::UnknownGenerator("b2.0".into()));
        assert_eq!((e.line, e.column), (1, 1));
        assert!(parse_element("1/0*e1", &m).is_err());
        assert_eq!(parse_value("c", &m).unwrap(), Ext::Fin(m.c().element()));
        assert_eq!(parse_value("inf", &m).unwrap(), Ext::Inf);
    }

    #[test]
    fn term_examples() {
        let m = ModelSpec::prime();
        assert_eq!(parse_term("chi(x + d)", &m).unwrap(), Term::chi(Term::add(Term::Var, Term::Const(NamedConst::D))));
        assert_eq!(
            parse_formula("ichi(chi(x)) = x", &m).unwrap(),
            Formula::Eq(Term::chi_inv(Term::chi(Term::Var)), Term::Var)
        );
        let e = err(parse_term("div(x, 0)", &m));
        assert_eq!(e.kind, ParseErrorKind::InvalidDivisor);
        assert_eq!(e.column, 8);
        assert_eq!(parse_term("x - c - d", &m).unwrap().to_string(), "x - c - d");
    }

    #[test]
    fn errors_carry_positions() {
        let m = ModelSpec::prime();
        let e = err(parse_formula("x = y", &m));
        assert_eq!(e.kind, ParseErrorKind::UnknownIdentifier("y".into()));
        assert_eq!(e.column, 5);
        let e = err(parse_formula("x =\n  chi(", &m));
        assert_eq!((e.kind, e.line, e.column), (ParseErrorKind::UnexpectedEnd, 2, 7));
        assert!(matches!(err(parse_formula("forall x", &m)).kind, ParseErrorKind::Unsupported(_)));
        assert_eq!(err(parse_term("x x", &m)).kind, ParseErrorKind::TrailingInput);
        assert!(matches!(err(parse_term("x $ x", &m)).kind, ParseErrorKind::UnexpectedToken(_)));
    }

    #[test]
    fn parenthesised_formulas() {
        let m = ModelSpec::prime();
        let f = parse_formula("(x) = x", &m).unwrap();
        assert_eq!(f, Formula::Eq(Term::Var, Term::Var));
        let f = parse_formula("(x + c) < d", &m).unwrap();
        assert!(matches!(f, Formula::Lt(..)));
        let f = parse_formula("x = c or (x < 0 and not (ichi(x) = inf))", &m).unwrap();
        assert!(matches!(f, Formula::Or(..)));
        let f = parse_formula("not x = x and x < c", &m).unwrap();
        assert!(matches!(f, Formula::And(..)));
    }

    #[test]
    fn chifn_text() {
        let m = ModelSpec::prime();
        let g = parse_chifn("chi^{1}(x) + [e3 - e5]", &m).unwrap();
        let alpha = parse_element("e3 - e5", &m).unwrap();
        assert_eq!(g, ChiFunction::from_parts(vec![(1, q_int(1))], alpha));
        let g = parse_chifn("-2*chi^{-1}(x) + x - x", &m).unwrap();
        assert_eq!(g, ChiFunction::from_parts(vec![(-1, q_int(-2))], GroupElement::zero()));
        assert_eq!(parse_chifn("inf", &m).unwrap(), ChiFunction::Const(Ext::Inf));
    }
}
