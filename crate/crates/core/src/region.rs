//! Cuts and regions of the χ-set.
//!
//! The χ-set of a model with `N` ℤ-chains is the ordered sum
//! `c < -e2 < -e3 < ... < (ℤ-chain 1) < ... < (ℤ-chain N)`. A [`Cut`] is a
//! position between points; regions are half-open intervals `(L, R]` between
//! cuts, or single points.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::model::{ChiSetPoint, ModelSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum LevelPos {
    Fin(i64),
    PlusInf,
}

/// A Dedekind cut of the χ-set that is definable from finitely many points
/// and chain boundaries.
#[derive(Clone, Copy, Debug)]
pub enum Cut {
    /// Below every point.
    Bottom,
    /// Immediately above the given point.
    After(ChiSetPoint),
    /// Above all of chain `j` and below chain `j + 1`.
    EndOfChain(u32),
    /// Above every point.
    Top,
}

impl Cut {
    fn key(&self) -> (u32, LevelPos) {
        match self {
            Cut::Bottom => (0, LevelPos::Fin(0)),
            Cut::After(p) => (p.chain(), LevelPos::Fin(p.level())),
            Cut::EndOfChain(j) => (*j, LevelPos::PlusInf),
            Cut::Top => (u32::MAX, LevelPos::PlusInf),
        }
    }

    fn point_key(p: &ChiSetPoint) -> (u32, LevelPos) {
        (p.chain(), LevelPos::Fin(p.level()))
    }

    /// The end of chain `j`, written as `Top` for the last chain.
    pub fn end_of_chain(j: u32, model: &ModelSpec) -> Cut {
        if j >= model.num_zchains() {
            Cut::Top
        } else {
            Cut::EndOfChain(j)
        }
    }

    pub fn canonical(self, model: &ModelSpec) -> Cut {
        match self {
            Cut::EndOfChain(j) => Cut::end_of_chain(j, model),
            c => c,
        }
    }

    /// The cut immediately below `p`.
    pub fn before(p: ChiSetPoint) -> Cut {
        match p.pred() {
            Some(q) => Cut::After(q),
            None => Cut::Bottom,
        }
    }

    /// The cut immediately below the start of chain `j`.
    pub fn start_of_chain(j: u32) -> Cut {
        if j == 0 {
            Cut::Bottom
        } else {
            Cut::EndOfChain(j - 1)
        }
    }

    pub fn is_below(&self, p: &ChiSetPoint) -> bool {
        self.key() < Self::point_key(p)
    }

    /// The least point above the cut, if there is one.
    pub fn next_point(&self) -> Option<ChiSetPoint> {
        match self {
            Cut::Bottom => Some(ChiSetPoint::c()),
            Cut::After(p) => Some(p.succ()),
            Cut::EndOfChain(_) | Cut::Top => None,
        }
    }

    /// The greatest point below the cut, if there is one.
    pub fn prev_point(&self) -> Option<ChiSetPoint> {
        match self {
            Cut::After(p) => Some(*p),
            _ => None,
        }
    }

    fn fin_chain_level(&self) -> Option<(u32, i64)> {
        match self.key() {
            (j, LevelPos::Fin(l)) if !matches!(self, Cut::Top) => Some((j, l)),
            _ => None,
        }
    }
}

impl PartialEq for Cut {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Cut {}

impl Ord for Cut {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for Cut {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A convex piece of the χ-set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// The points `p` with `L < p ≤ R`.
    Interval(Cut, Cut),
    Singleton(ChiSetPoint),
}

impl Region {
    pub fn all() -> Region {
        Region::Interval(Cut::Bottom, Cut::Top)
    }

    pub fn bounds(&self) -> (Cut, Cut) {
        match self {
            Region::Interval(l, r) => (*l, *r),
            Region::Singleton(p) => (Cut::before(*p), Cut::After(*p)),
        }
    }

    pub fn contains(&self, p: &ChiSetPoint) -> bool {
        let (l, r) = self.bounds();
        l.is_below(p) && !r.is_below(p)
    }

    pub fn is_empty(&self) -> bool {
        let (l, r) = self.bounds();
        l >= r
    }

    /// Number of points, or `None` for infinite regions.
    pub fn count(&self) -> Option<u64> {
        let (l, r) = self.bounds();
        if l >= r {
            return Some(0);
        }
        let (lj, ll) = l.fin_chain_level()?;
        let (rj, rl) = r.fin_chain_level()?;
        if lj != rj {
            return None;
        }
        Some(rl.abs_diff(ll))
    }

    /// The points of a finite region in increasing order.
    pub fn points(&self) -> Option<Vec<ChiSetPoint>> {
        self.count()?;
        let (l, r) = self.bounds();
        let mut out = Vec::new();
        let mut cur = l.next_point();
        while let Some(p) = cur {
            if r.is_below(&p) {
                break;
            }
            out.push(p);
            cur = Some(p.succ());
        }
        Some(out)
    }

    /// Normalises one-point intervals to singletons.
    pub fn normalize(self) -> Region {
        if let Region::Interval(_, Cut::After(p)) = self {
            if self.count() == Some(1) {
                return Region::Singleton(p);
            }
        }
        self
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Singleton(p) => write!(f, "{{{p}}}"),
            Region::Interval(l, r) => {
                if l >= r {
                    return f.write_str("empty");
                }
                match l {
                    Cut::Bottom => f.write_str("[c")?,
                    Cut::After(p) => write!(f, "[{}", p.succ())?,
                    Cut::EndOfChain(j) => write!(f, "(gap{j}")?,
                    Cut::Top => unreachable!("nonempty interval below Top"),
                }
                f.write_str(", ")?;
                match r {
                    Cut::After(p) => write!(f, "{p}]"),
                    Cut::EndOfChain(j) => write!(f, "gap{j})"),
                    Cut::Top => f.write_str("0)"),
                    Cut::Bottom => unreachable!("nonempty interval above Bottom"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    fn pt(j: u32, l: i64) -> ChiSetPoint {
        ChiSetPoint::new(j, l).unwrap()
    }

    #[test]
    fn cut_order() {
        let cuts = [
            Cut::Bottom,
            Cut::After(pt(0, 1)),
            Cut::After(pt(0, 9)),
            Cut::EndOfChain(0),
            Cut::After(pt(1, -100)),
            Cut::After(pt(1, 3)),
            Cut::EndOfChain(1),
            Cut::Top,
        ];
        assert!(cuts.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Cut::before(pt(0, 1)), Cut::Bottom);
        assert_eq!(Cut::before(pt(0, 3)), Cut::After(pt(0, 2)));
        assert_eq!(Cut::EndOfChain(1).canonical(&ModelSpec::with_zchains(1)), Cut::Top);
    }

    #[test]
    fn counting_and_display() {
        let r = Region::Interval(Cut::Bottom, Cut::After(pt(0, 2)));
        assert_eq!(r.count(), Some(2));
        assert_eq!(format!("{r}"), "[c, -e2]");
        assert_eq!(r.points().unwrap(), vec![pt(0, 1), pt(0, 2)]);
        let tail = Region::Interval(Cut::After(pt(0, 4)), Cut::Top);
        assert_eq!(tail.count(), None);
        assert_eq!(format!("{tail}"), "[-e5, 0)");
        let z = Region::Interval(Cut::After(pt(1, -3)), Cut::After(pt(1, 5)));
        assert_eq!(z.count(), Some(8));
        let gap = Region::Interval(Cut::EndOfChain(0), Cut::After(pt(1, 0)));
        assert_eq!(gap.count(), None);
        assert_eq!(format!("{gap}"), "(gap0, -b1.0]");
        assert_eq!(format!("{}", Region::Singleton(pt(0, 1))), "{c}");
        assert_eq!(
            Region::Interval(Cut::After(pt(0, 2)), Cut::After(pt(0, 3))).normalize(),
            Region::Singleton(pt(0, 3))
        );
    }

    #[test]
    fn membership() {
        let r = Region::Interval(Cut::After(pt(0, 2)), Cut::EndOfChain(0));
        assert!(!r.contains(&pt(0, 2)));
        assert!(r.contains(&pt(0, 3)));
        assert!(r.contains(&pt(0, 1_000_000)));
        assert!(!r.contains(&pt(1, -1_000_000)));
        assert!(Region::all().contains(&pt(3, 7)));
    }
}
