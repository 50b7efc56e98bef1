//! Finite unions of circular arcs in `QP¹`.
//!
//! Every [`SlopeSet`] is kept in canonical form: arcs are pairwise disjoint,
//! never touch, and are sorted by start point in circular order from `∞`.
//! Canonicalization works on breakpoints: the arc endpoints cut the circle
//! into points and open gaps, each of which is either wholly inside or
//! wholly outside the set, so membership of one witness per gap decides it.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::slopes::{slope_ccw, Slope, SlopeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SetError {
    #[error("an arc with coincident endpoints must be closed at both ends")]
    DegenerateArc,
    #[error("cannot parse slope set {0:?}")]
    Parse(String),
    #[error(transparent)]
    Slope(#[from] SlopeError),
}

/// The arc traversed from `start` to `end` in the positive direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arc {
    start: Slope,
    end: Slope,
    start_closed: bool,
    end_closed: bool,
}

impl Arc {
    pub fn new(
        start: Slope,
        end: Slope,
        start_closed: bool,
        end_closed: bool,
    ) -> Result<Self, SetError> {
        if start == end && !(start_closed && end_closed) {
            return Err(SetError::DegenerateArc);
        }
        Ok(Arc {
            start,
            end,
            start_closed,
            end_closed,
        })
    }

    pub fn point(x: Slope) -> Self {
        Arc {
            start: x.clone(),
            end: x,
            start_closed: true,
            end_closed: true,
        }
    }

    pub fn closed(start: Slope, end: Slope) -> Self {
        Self::new(start, end, true, true).expect("closed arcs are always valid")
    }

    pub fn open(start: Slope, end: Slope) -> Result<Self, SetError> {
        Self::new(start, end, false, false)
    }

    pub fn start(&self) -> &Slope {
        &self.start
    }

    pub fn end(&self) -> &Slope {
        &self.end
    }

    pub fn start_closed(&self) -> bool {
        self.start_closed
    }

    pub fn end_closed(&self) -> bool {
        self.end_closed
    }

    pub fn is_point(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, x: &Slope) -> bool {
        if *x == self.start {
            return self.start_closed;
        }
        if *x == self.end {
            return self.end_closed;
        }
        !self.is_point() && slope_ccw(&self.start, x, &self.end).expect("distinct")
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.start);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.start_closed { '[' } else { '(' },
            self.start,
            self.end,
            if self.end_closed { ']' } else { ')' }
        )
    }
}

/// A subset of `QP¹` that is a finite union of arcs and points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SlopeSet {
    Empty,
    Full,
    /// `QP¹` minus a single slope.
    Punctured(Slope),
    /// Nonempty, canonically ordered, pairwise separated arcs.
    Arcs(Vec<Arc>),
}

/// A slope strictly inside the positive arc from `x` to `y`; when `x = y`,
/// any slope other than `x`.
fn gap_witness(x: &Slope, y: &Slope) -> Slope {
    if x == y {
        return if x.is_infinite() {
            Slope::integer(0)
        } else {
            x.shifted(1)
        };
    }
    match (x.is_infinite(), y.is_infinite()) {
        (true, _) => y.shifted(-1),
        (false, true) => Slope::integer(x.floor().unwrap() + 1),
        (false, false) if x < y => x.midpoint(y),
        (false, false) => Slope::infinity(),
    }
}

/// The breakpoints cut the circle into alternating points and gaps. Each
/// gap is identified by the breakpoint it follows.
struct Cells {
    points: Vec<Slope>,
    point_in: Vec<bool>,
    gap_in: Vec<bool>,
}

impl Cells {
    fn evaluate(mut points: Vec<Slope>, member: impl Fn(&Slope) -> bool) -> Self {
        points.sort();
        points.dedup();
        let k = points.len();
        let point_in = points.iter().map(&member).collect();
        let gap_in = (0..k)
            .map(|i| member(&gap_witness(&points[i], &points[(i + 1) % k])))
            .collect();
        Cells {
            points,
            point_in,
            gap_in,
        }
    }

    fn into_set(self, member_when_empty: impl FnOnce() -> bool) -> SlopeSet {
        let k = self.points.len();
        if k == 0 {
            return if member_when_empty() {
                SlopeSet::Full
            } else {
                SlopeSet::Empty
            };
        }
        // drop breakpoints that do not separate anything
        let keep: Vec<usize> = (0..k)
            .filter(|&i| {
                let before = self.gap_in[(i + k - 1) % k];
                !(self.point_in[i] == before && before == self.gap_in[i])
            })
            .collect();
        if keep.is_empty() {
            return if self.point_in[0] {
                SlopeSet::Full
            } else {
                SlopeSet::Empty
            };
        }
        let points: Vec<Slope> = keep.iter().map(|&i| self.points[i].clone()).collect();
        let point_in: Vec<bool> = keep.iter().map(|&i| self.point_in[i]).collect();
        let gap_in: Vec<bool> = keep.iter().map(|&i| self.gap_in[i]).collect();
        let k = points.len();

        if k == 1 && !point_in[0] && gap_in[0] {
            return SlopeSet::Punctured(points[0].clone());
        }

        // cells in circular order: 2i is point i, 2i + 1 is the gap after it
        let n = 2 * k;
        let inside = |c: usize| {
            if c.is_multiple_of(2) {
                point_in[c / 2]
            } else {
                gap_in[c / 2]
            }
        };
        let first_out = (0..n)
            .find(|&c| !inside(c))
            .expect("some cell lies outside");
        let mut arcs = Vec::new();
        let mut run: Option<(usize, usize)> = None;
        for step in 1..=n {
            let c = (first_out + step) % n;
            if inside(c) {
                run = Some(match run {
                    Some((s, _)) => (s, c),
                    None => (c, c),
                });
            } else if let Some((s, e)) = run.take() {
                let (start, start_closed) = (points[s / 2].clone(), s % 2 == 0);
                let (end, end_closed) = if e % 2 == 0 {
                    (points[e / 2].clone(), true)
                } else {
                    (points[(e / 2 + 1) % k].clone(), false)
                };
                arcs.push(Arc {
                    start,
                    end,
                    start_closed,
                    end_closed,
                });
            }
        }
        arcs.sort_by(|a, b| a.start.cmp(&b.start));
        SlopeSet::Arcs(arcs)
    }
}

impl SlopeSet {
    /// The canonical union of the given arcs.
    pub fn from_arcs(arcs: Vec<Arc>) -> Self {
        let points = arcs
            .iter()
            .flat_map(|a| [a.start.clone(), a.end.clone()])
            .collect();
        Cells::evaluate(points, |x| arcs.iter().any(|a| a.contains(x))).into_set(|| false)
    }

    pub fn arc(arc: Arc) -> Self {
        Self::from_arcs(vec![arc])
    }

    pub fn point(x: Slope) -> Self {
        SlopeSet::Arcs(vec![Arc::point(x)])
    }

    pub fn contains(&self, x: &Slope) -> bool {
        match self {
            SlopeSet::Empty => false,
            SlopeSet::Full => true,
            SlopeSet::Punctured(l) => x != l,
            SlopeSet::Arcs(arcs) => arcs.iter().any(|a| a.contains(x)),
        }
    }

    /// Arc endpoints, unsorted and possibly repeated.
    pub fn breakpoints(&self) -> Vec<Slope> {
        match self {
            SlopeSet::Empty | SlopeSet::Full => Vec::new(),
            SlopeSet::Punctured(l) => vec![l.clone()],
            SlopeSet::Arcs(arcs) => arcs
                .iter()
                .flat_map(|a| [a.start.clone(), a.end.clone()])
                .collect(),
        }
    }

    pub fn arcs(&self) -> &[Arc] {
        match self {
            SlopeSet::Arcs(arcs) => arcs,
            _ => &[],
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SlopeSet::Empty)
    }

    pub fn is_full(&self) -> bool {
        matches!(self, SlopeSet::Full)
    }

    fn combine(&self, other: &SlopeSet, op: impl Fn(bool, bool) -> bool) -> SlopeSet {
        let mut points = self.breakpoints();
        points.extend(other.breakpoints());
        let member = |x: &Slope| op(self.contains(x), other.contains(x));
        let zero = Slope::integer(0);
        Cells::evaluate(points, member).into_set(|| op(self.contains(&zero), other.contains(&zero)))
    }

    pub fn union(&self, other: &SlopeSet) -> SlopeSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &SlopeSet) -> SlopeSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn complement(&self) -> SlopeSet {
        self.combine(&SlopeSet::Empty, |a, _| !a)
    }

    /// Topological interior in `QP¹`: closed endpoints open up and isolated
    /// points disappear.
    pub fn interior(&self) -> SlopeSet {
        match self {
            SlopeSet::Arcs(arcs) => SlopeSet::from_arcs(
                arcs.iter()
                    .filter(|a| !a.is_point())
                    .map(|a| Arc {
                        start_closed: false,
                        end_closed: false,
                        ..a.clone()
                    })
                    .collect(),
            ),
            other => other.clone(),
        }
    }

    pub fn is_subset_of(&self, other: &SlopeSet) -> bool {
        self.intersection(&other.complement()).is_empty()
    }
}

pub fn contains(s: &SlopeSet, x: &Slope) -> bool {
    s.contains(x)
}

pub fn union(s1: &SlopeSet, s2: &SlopeSet) -> SlopeSet {
    s1.union(s2)
}

pub fn interior(s: &SlopeSet) -> SlopeSet {
    s.interior()
}

/// A slope lying in neither set, if there is one.
///
/// Only arc endpoints and one witness inside each complementary gap need
/// checking: between consecutive breakpoints both sets are constant.
pub fn uncovered_witness(s1: &SlopeSet, s2: &SlopeSet) -> Option<Slope> {
    let mut points = s1.breakpoints();
    points.extend(s2.breakpoints());
    points.sort();
    points.dedup();
    let covered = |x: &Slope| s1.contains(x) || s2.contains(x);
    if points.is_empty() {
        let probe = Slope::integer(0);
        return (!covered(&probe)).then_some(probe);
    }
    let k = points.len();
    for i in 0..k {
        if !covered(&points[i]) {
            return Some(points[i].clone());
        }
        let w = gap_witness(&points[i], &points[(i + 1) % k]);
        if !covered(&w) {
            return Some(w);
        }
    }
    None
}

/// Whether every slope lies in `s1` or in `s2`.
pub fn covers_circle(s1: &SlopeSet, s2: &SlopeSet) -> bool {
    uncovered_witness(s1, s2).is_none()
}

/// Whether `s` has one of the shapes an L-space slope set may take: empty,
/// a point, a closed arc, or everything except the rational longitude.
pub fn rr_shape_check(s: &SlopeSet, longitude: &Slope) -> bool {
    match s {
        SlopeSet::Empty => true,
        SlopeSet::Full => false,
        SlopeSet::Punctured(l) => l == longitude,
        SlopeSet::Arcs(arcs) => arcs.len() == 1 && arcs[0].start_closed && arcs[0].end_closed,
    }
}

impl fmt::Display for SlopeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlopeSet::Empty => write!(f, "EMPTY"),
            SlopeSet::Full => write!(f, "FULL"),
            SlopeSet::Punctured(l) => write!(f, "QP1 \\ {{{l}}}"),
            SlopeSet::Arcs(arcs) => {
                for (i, a) in arcs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for SlopeSet {
    type Err = SetError;

    /// Parses the display form. Pieces may be separated by `,`, `∪` or `U`,
    /// and are unioned, so non-canonical input is accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SetError::Parse(s.to_string());
        let mut acc = SlopeSet::Empty;
        let mut rest = s.trim();
        let mut any = false;
        while !rest.is_empty() {
            rest = rest.trim_start_matches(|c: char| c.is_whitespace() || c == ',' || c == '∪');
            if let Some(r) = rest.strip_prefix('U') {
                rest = r;
                continue;
            }
            if rest.is_empty() {
                break;
            }
            let piece;
            if let Some(r) = rest.strip_prefix("EMPTY") {
                piece = SlopeSet::Empty;
                rest = r;
            } else if let Some(r) = rest.strip_prefix("FULL") {
                piece = SlopeSet::Full;
                rest = r;
            } else if let Some(r) = rest.strip_prefix("QP1") {
                let r = r
                    .trim_start()
                    .strip_prefix('\\')
                    .ok_or_else(err)?
                    .trim_start();
                let r = r.strip_prefix('{').ok_or_else(err)?;
                let close = r.find('}').ok_or_else(err)?;
                piece = SlopeSet::Punctured(r[..close].parse()?);
                rest = &r[close + 1..];
            } else if let Some(r) = rest.strip_prefix('{') {
                let close = r.find('}').ok_or_else(err)?;
                piece = SlopeSet::point(r[..close].parse()?);
                rest = &r[close + 1..];
            } else if rest.starts_with(['[', '(']) {
                let start_closed = rest.starts_with('[');
                let close = rest.find([']', ')']).ok_or_else(err)?;
                let end_closed = rest[close..].starts_with(']');
                let (a, b) = rest[1..close].split_once(',').ok_or_else(err)?;
                let arc = Arc::new(a.parse()?, b.parse()?, start_closed, end_closed)?;
                piece = SlopeSet::arc(arc);
                rest = &rest[close + 1..];
            } else {
                return Err(err());
            }
            any = true;
            acc = acc.union(&piece);
        }
        if !any {
            return Err(err());
        }
        Ok(acc)
    }
}

impl Serialize for SlopeSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SlopeSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
