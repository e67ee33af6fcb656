//! Rational number helpers shared by elements, levels and the parsers.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

/// Exact coefficient type.
pub type Q = BigRational;

/// Position of a class inside its chain. Integers are chain points, anything
/// else is a loose class.
pub type Level = Ratio<i64>;

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn level(n: i64) -> Level {
    Level::from_integer(n)
}

pub fn is_unit(q: &Q) -> bool {
    q.is_one()
}

/// `3`, `-2`, `3/2`, `-7/4`.
pub fn fmt_q(q: &Q) -> String {
    let mut s = String::new();
    if q.denom().is_one() {
        let _ = write!(s, "{}", q.numer());
    } else {
        let _ = write!(s, "{}/{}", q.numer(), q.denom());
    }
    s
}

pub fn fmt_level(l: &Level) -> String {
    let mut s = String::new();
    if l.is_integer() {
        let _ = write!(s, "{}", l.numer());
    } else {
        let _ = write!(s, "{}/{}", l.numer(), l.denom());
    }
    s
}

pub fn abs_q(q: &Q) -> Q {
    q.abs()
}

pub fn sign_of(q: &Q) -> core::cmp::Ordering {
    if q.is_zero() {
        core::cmp::Ordering::Equal
    } else if q.is_positive() {
        core::cmp::Ordering::Greater
    } else {
        core::cmp::Ordering::Less
    }
}

/// Parses `INT` or `INT/NAT` into a level; used by the model file format.
pub fn parse_level(text: &str) -> Option<Level> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.parse::<i64>().ok()?, d.parse::<i64>().ok()?),
        None => (text.parse::<i64>().ok()?, 1),
    };
    if d <= 0 {
        return None;
    }
    let g = n.gcd(&d);
    Some(Level::new_raw(n / g, d / g))
}
