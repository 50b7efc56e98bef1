//! Surgery slopes on a torus boundary, identified with the rational
//! projective line `QP¹ = Q ∪ {1/0}`.
//!
//! A [`Slope`] is a primitive integer pair `(p, q)` taken up to an overall
//! sign. The canonical representative has `q ≥ 0`, and the meridian `∞` is
//! stored as `1/0`.
//!
//! The positive orientation of `QP¹` is the direction of increasing
//! rationals; going up past every positive rational reaches `∞`, and
//! continuing past `∞` enters the negative rationals.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SlopeError {
    #[error("(0, 0) is not a slope")]
    ZeroZero,
    #[error("slopes must be pairwise distinct")]
    NotDistinct,
    #[error("cannot parse slope {0:?}")]
    Parse(String),
}

/// A slope `num/den` in normalized form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slope {
    num: BigInt,
    den: BigInt,
}

impl Slope {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, SlopeError> {
        let (mut p, mut q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(SlopeError::ZeroZero);
        }
        let g = p.gcd(&q);
        p /= &g;
        q /= &g;
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Ok(Slope { num: p, den: q })
    }

    /// The integral slope `n/1`.
    pub fn integer(n: impl Into<BigInt>) -> Self {
        Slope {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    /// The slope `1/n`. `n = 0` gives `∞`.
    pub fn reciprocal_of(n: impl Into<BigInt>) -> Self {
        Slope::new(BigInt::one(), n).expect("numerator is 1")
    }

    pub fn infinity() -> Self {
        Slope {
            num: BigInt::one(),
            den: BigInt::zero(),
        }
    }

    pub fn num(&self) -> &BigInt {
        &self.num
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den.is_zero()
    }

    /// Largest integer `≤ num/den`. `None` for `∞`.
    pub fn floor(&self) -> Option<BigInt> {
        (!self.is_infinite()).then(|| self.num.div_floor(&self.den))
    }

    /// Midpoint of two finite slopes.
    pub(crate) fn midpoint(&self, other: &Slope) -> Slope {
        debug_assert!(!self.is_infinite() && !other.is_infinite());
        let p = &self.num * &other.den + &other.num * &self.den;
        let q = BigInt::from(2) * &self.den * &other.den;
        Slope::new(p, q).expect("denominator is nonzero")
    }

    pub(crate) fn shifted(&self, k: i64) -> Slope {
        debug_assert!(!self.is_infinite());
        Slope::new(&self.num + BigInt::from(k) * &self.den, self.den.clone())
            .expect("denominator is nonzero")
    }
}

/// The pairing `a.num·b.den − b.num·a.den`. Zero exactly when `a = b`.
pub fn slope_det(a: &Slope, b: &Slope) -> BigInt {
    &a.num * &b.den - &b.num * &a.den
}

/// Whether `b` lies strictly inside the positively oriented arc from `a`
/// to `c`.
pub fn slope_ccw(a: &Slope, b: &Slope, c: &Slope) -> Result<bool, SlopeError> {
    if a == b || b == c || a == c {
        return Err(SlopeError::NotDistinct);
    }
    // With den ≥ 0 lifts, det(x, y) < 0 iff x precedes y in the linear
    // order that places ∞ last. A triple is positively ordered iff it is
    // a rotation of a sorted triple.
    let before = |x: &Slope, y: &Slope| slope_det(x, y).is_negative();
    let ab = before(a, b);
    let bc = before(b, c);
    let ca = before(c, a);
    Ok((ab && bc) || (bc && ca) || (ca && ab))
}

/// Circular order starting at `∞`: `∞` first, then finite slopes by value.
///
/// Every arc and slope list in this crate is sorted with this order.
impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            (false, false) => (&self.num * &other.den).cmp(&(&other.num * &self.den)),
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Slope {
    type Err = SlopeError;

    /// Accepts `p/q`, a bare integer `p`, and `inf`, `-inf`, `∞`, `-∞` for `1/0`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || SlopeError::Parse(s.to_string());
        match t {
            "inf" | "-inf" | "+inf" | "∞" | "-∞" | "+∞" => return Ok(Slope::infinity()),
            _ => {}
        }
        match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| err())?;
                let q: BigInt = q.trim().parse().map_err(|_| err())?;
                Slope::new(p, q).map_err(|_| err())
            }
            None => t.parse::<BigInt>().map(Slope::integer).map_err(|_| err()),
        }
    }
}

/// All slopes `p/q` with `|p| ≤ max_height` and `0 ≤ q ≤ max_height`
/// (including `∞ = 1/0`), sorted in circular order from `∞`.
///
/// This set is closed under `p/q ↦ q/p` and `p/q ↦ −p/q`. Restricted to
/// `[0, 1]` it is the Farey sequence of order `max_height`.
pub fn farey_enumerate(max_height: u32) -> Vec<Slope> {
    assert!(max_height >= 1, "max_height must be positive");
    let n = max_height as i64;
    let mut out = vec![Slope::infinity()];
    for q in 1..=n {
        for p in -n..=n {
            if p.gcd(&q) == 1 {
                out.push(Slope::new(p, q).unwrap());
            }
        }
    }
    out.sort();
    out
}

/// The slopes of [`farey_enumerate`] that lie in the closed window `[lo, hi]`
/// of finite rationals.
pub fn farey_window(max_height: u32, lo: &Slope, hi: &Slope) -> Vec<Slope> {
    farey_enumerate(max_height)
        .into_iter()
        .filter(|s| !s.is_infinite() && lo <= s && s <= hi)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(s(2, 4), s(1, 2));
        assert_eq!(
            (s(2, 4).num().clone(), s(2, 4).den().clone()),
            (1.into(), 2.into())
        );
        assert_eq!(s(-3, 0), Slope::infinity());
        let t = s(5, -10);
        assert_eq!((t.num().clone(), t.den().clone()), ((-1).into(), 2.into()));
        assert_eq!(Slope::new(0, 0), Err(SlopeError::ZeroZero));
        assert_eq!(s(0, -7), s(0, 1));
    }

    #[test]
    fn det_examples() {
        assert_eq!(slope_det(&Slope::infinity(), &s(0, 1)), 1.into());
        assert_eq!(slope_det(&s(1, 2), &s(1, 2)), 0.into());
        assert_eq!(slope_det(&s(2, 3), &s(3, 4)), (-1).into());
    }

    #[test]
    fn ccw_examples() {
        let inf = Slope::infinity();
        assert!(slope_ccw(&s(0, 1), &s(1, 1), &inf).unwrap());
        assert!(slope_ccw(&s(0, 1), &inf, &s(-1, 1)).unwrap());
        assert!(!slope_ccw(&s(1, 2), &s(1, 3), &inf).unwrap());
        assert_eq!(
            slope_ccw(&s(1, 2), &s(1, 2), &inf),
            Err(SlopeError::NotDistinct)
        );
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("13/1".parse::<Slope>().unwrap(), Slope::integer(13));
        assert_eq!("-inf".parse::<Slope>().unwrap(), Slope::infinity());
        assert_eq!("-4".parse::<Slope>().unwrap(), s(-4, 1));
        assert_eq!(Slope::infinity().to_string(), "1/0");
        assert_eq!(s(6, -4).to_string(), "-3/2");
        assert!("1/x".parse::<Slope>().is_err());
        assert!("0/0".parse::<Slope>().is_err());
    }

    #[test]
    fn farey_windows() {
        let (zero, one) = (s(0, 1), s(1, 1));
        assert_eq!(farey_window(1, &zero, &one), vec![s(0, 1), s(1, 1)]);
        assert_eq!(
            farey_window(3, &zero, &one),
            vec![s(0, 1), s(1, 3), s(1, 2), s(2, 3), s(1, 1)]
        );
        assert_eq!(farey_window(5, &zero, &one).len(), 11);
        // |F_n| = 1 + Σ φ(k), brute-force totient
        let phi = |k: i64| (1..=k).filter(|j| j.gcd(&k) == 1).count();
        for n in 1..=20u32 {
            let expect = 1 + (1..=n as i64).map(phi).sum::<usize>();
            assert_eq!(farey_window(n, &zero, &one).len(), expect, "n = {n}");
        }
    }

    #[test]
    fn farey_starts_at_infinity_and_has_no_duplicates() {
        let f = farey_enumerate(7);
        assert_eq!(f[0], Slope::infinity());
        assert!(f.windows(2).all(|w| w[0] < w[1]));
    }

    fn slope() -> impl Strategy<Value = Slope> {
        (-40i64..=40, 0i64..=40)
            .prop_filter("nonzero", |(p, q)| *p != 0 || *q != 0)
            .prop_map(|(p, q)| s(p, q))
    }

    proptest! {
        #[test]
        fn normalization_idempotent(x in slope()) {
            prop_assert_eq!(Slope::new(x.num().clone(), x.den().clone()).unwrap(), x.clone());
            prop_assert_eq!(Slope::new(-x.num().clone(), -x.den().clone()).unwrap(), x);
        }

        #[test]
        fn det_antisymmetric(a in slope(), b in slope()) {
            prop_assert_eq!(slope_det(&a, &b), -slope_det(&b, &a));
            prop_assert_eq!(slope_det(&a, &b).is_zero(), a == b);
        }

        #[test]
        fn ccw_cyclic(a in slope(), b in slope(), c in slope()) {
            prop_assume!(a != b && b != c && a != c);
            let abc = slope_ccw(&a, &b, &c).unwrap();
            prop_assert_ne!(abc, slope_ccw(&a, &c, &b).unwrap());
            prop_assert_eq!(abc, slope_ccw(&b, &c, &a).unwrap());
        }

        #[test]
        fn display_round_trip(x in slope()) {
            prop_assert_eq!(x.to_string().parse::<Slope>().unwrap(), x);
        }
    }
}
