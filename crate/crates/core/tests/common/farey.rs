//! Brute-force slope sets: raw arcs judged by a linear order on `QP¹` with
//! `∞` placed first, and Farey grids of bounded height.

use rand::Rng;

use satcert::{Arc, Slope, SlopeSet};

/// A slope `p/q` with `q ≥ 0`, primitive; `(1, 0)` is `∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Raw(pub i64, pub i64);

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Raw {
    pub fn new(p: i64, q: i64) -> Raw {
        let g = gcd(p, q);
        let (p, q) = (p / g, q / g);
        if q < 0 || (q == 0 && p < 0) {
            Raw(-p, -q)
        } else {
            Raw(p, q)
        }
    }

    pub fn to_slope(self) -> Slope {
        Slope::new(self.0, self.1).unwrap()
    }
}

/// `∞` below every finite slope, finite slopes by value.
fn less(a: Raw, b: Raw) -> bool {
    match (a.1 == 0, b.1 == 0) {
        (true, true) => false,
        (true, false) => true,
        (false, true) => false,
        _ => (a.0 as i128) * (b.1 as i128) < (b.0 as i128) * (a.1 as i128),
    }
}

/// An arc running upward from `start` to `end`, wrapping through `∞`.
#[derive(Debug, Clone, Copy)]
pub struct RawArc {
    pub start: Raw,
    pub end: Raw,
    pub start_closed: bool,
    pub end_closed: bool,
}

impl RawArc {
    pub fn contains(&self, x: Raw) -> bool {
        if self.start == self.end {
            return x == self.start && (self.start_closed || self.end_closed);
        }
        if x == self.start {
            return self.start_closed;
        }
        if x == self.end {
            return self.end_closed;
        }
        if less(self.start, self.end) {
            less(self.start, x) && less(x, self.end)
        } else {
            less(self.start, x) || less(x, self.end)
        }
    }

    pub fn to_arc(self) -> Arc {
        if self.start == self.end {
            Arc::point(self.start.to_slope())
        } else {
            Arc::new(
                self.start.to_slope(),
                self.end.to_slope(),
                self.start_closed,
                self.end_closed,
            )
            .unwrap()
        }
    }
}

pub fn raw_contains(arcs: &[RawArc], x: Raw) -> bool {
    arcs.iter().any(|a| a.contains(x))
}

pub fn to_set(arcs: &[RawArc]) -> SlopeSet {
    SlopeSet::from_arcs(arcs.iter().map(|a| a.to_arc()).collect())
}

/// All slopes with `|p| ≤ n`, `0 ≤ q ≤ n`.
pub fn grid(n: i64) -> Vec<Raw> {
    let mut out = vec![Raw(1, 0)];
    for q in 1..=n {
        for p in -n..=n {
            if gcd(p, q) == 1 {
                out.push(Raw(p, q));
            }
        }
    }
    out
}

pub fn brute_covers(a: &[RawArc], b: &[RawArc], n: i64) -> bool {
    grid(n)
        .into_iter()
        .all(|x| raw_contains(a, x) || raw_contains(b, x))
}

/// Slope with denominator ≤ `den` and numerator within `2·den`, or `∞`.
pub fn random_raw(rng: &mut impl Rng, den: i64) -> Raw {
    if rng.gen_ratio(1, 16) {
        return Raw(1, 0);
    }
    Raw::new(rng.gen_range(-2 * den..=2 * den), rng.gen_range(1..=den))
}

pub fn random_arcs(rng: &mut impl Rng, den: i64) -> Vec<RawArc> {
    let pieces = rng.gen_range(0..=3);
    (0..pieces)
        .map(|_| {
            let (start, end) = (random_raw(rng, den), random_raw(rng, den));
            let closed = start == end;
            RawArc {
                start,
                end,
                start_closed: closed || rng.gen(),
                end_closed: closed || rng.gen(),
            }
        })
        .collect()
}
