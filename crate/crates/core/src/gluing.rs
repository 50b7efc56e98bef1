//! Integer changes of basis on a boundary torus, acting on slopes by
//! `p/q ↦ (a·p + b·q)/(c·p + d·q)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::projective_sets::{Arc, SlopeSet};
use crate::slopes::Slope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GluingError {
    #[error("matrix has determinant {0}, expected ±1")]
    NotUnimodular(BigInt),
}

/// A matrix `(a b; c d)` with `|ad − bc| = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GluingMap {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl GluingMap {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<Self, GluingError> {
        let m = GluingMap {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        };
        let det = m.det();
        if det.abs() != BigInt::one() {
            return Err(GluingError::NotUnimodular(det));
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        GluingMap::new(1, 0, 0, 1).unwrap()
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    /// Whether the map preserves the circular orientation of `QP¹`.
    pub fn preserves_orientation(&self) -> bool {
        self.det().is_positive()
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn apply(&self, x: &Slope) -> Slope {
        let (p, q) = (x.num(), x.den());
        Slope::new(&self.a * p + &self.b * q, &self.c * p + &self.d * q)
            .expect("unimodular maps send primitive vectors to primitive vectors")
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &GluingMap) -> GluingMap {
        GluingMap {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }

    pub fn inverse(&self) -> GluingMap {
        let det = self.det();
        GluingMap {
            a: &det * &self.d,
            b: -&det * &self.b,
            c: -&det * &self.c,
            d: &det * &self.a,
        }
    }

    /// Image of an arc. Orientation-reversing maps swap the roles of the
    /// endpoints along with their closure flags.
    pub fn image_of_arc(&self, arc: &Arc) -> Arc {
        let (s, e) = (self.apply(arc.start()), self.apply(arc.end()));
        let built = if self.preserves_orientation() {
            Arc::new(s, e, arc.start_closed(), arc.end_closed())
        } else {
            Arc::new(e, s, arc.end_closed(), arc.start_closed())
        };
        built.expect("bijection preserves endpoint coincidence")
    }

    pub fn image_of_set(&self, set: &SlopeSet) -> SlopeSet {
        match set {
            SlopeSet::Empty | SlopeSet::Full => set.clone(),
            SlopeSet::Punctured(l) => SlopeSet::Punctured(self.apply(l)),
            SlopeSet::Arcs(arcs) => {
                SlopeSet::from_arcs(arcs.iter().map(|a| self.image_of_arc(a)).collect())
            }
        }
    }
}

/// The map identifying the meridian of one boundary with the longitude of
/// the other, and vice versa: `p/q ↦ q/p`.
pub fn meridian_longitude_swap() -> GluingMap {
    GluingMap {
        a: BigInt::zero(),
        b: BigInt::one(),
        c: BigInt::one(),
        d: BigInt::zero(),
    }
}

impl fmt::Display for GluingMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slopes::farey_enumerate;
    use proptest::prelude::*;

    fn s(p: i64, q: i64) -> Slope {
        Slope::new(p, q).unwrap()
    }

    #[test]
    fn swap_on_slopes() {
        let h = meridian_longitude_swap();
        assert_eq!(h.apply(&s(3, 5)), s(5, 3));
        assert_eq!(h.apply(&Slope::infinity()), s(0, 1));
        assert_eq!(h.apply(&Slope::reciprocal_of(7)), s(7, 1));
        assert_eq!(h.apply(&Slope::reciprocal_of(2)), s(2, 1));
        assert_eq!(h.apply(&h.apply(&s(7, 3))), s(7, 3));
        assert_eq!(h.to_string(), "[[0,1],[1,0]]");
        assert!(!h.preserves_orientation());
    }

    #[test]
    fn composition_and_inverse() {
        let h = meridian_longitude_swap();
        assert_eq!(h.compose(&h), GluingMap::identity());
        assert_eq!(GluingMap::identity().inverse(), GluingMap::identity());
        let t = GluingMap::new(1, 1, 0, 1).unwrap();
        assert_eq!(t.compose(&t.inverse()), GluingMap::identity());
        assert_eq!(t.inverse().compose(&t), GluingMap::identity());
        assert_eq!(GluingMap::identity().apply(&s(-4, 9)), s(-4, 9));
        assert!(matches!(
            GluingMap::new(2, 0, 0, 1),
            Err(GluingError::NotUnimodular(_))
        ));
    }

    #[test]
    fn swap_on_sets() {
        let h = meridian_longitude_swap();
        let pattern_side: SlopeSet = "[-inf, 1/7) ∪ (1/2, inf]".parse().unwrap();
        let expect: SlopeSet = "[-inf, 2) ∪ (7, inf]".parse().unwrap();
        assert_eq!(h.image_of_set(&pattern_side), expect);
        assert_eq!(h.image_of_set(&SlopeSet::Full), SlopeSet::Full);
        assert_eq!(
            h.image_of_set(&SlopeSet::point(Slope::infinity())),
            SlopeSet::point(s(0, 1))
        );
        assert_eq!(
            h.image_of_set(&SlopeSet::Punctured(s(0, 1))),
            SlopeSet::Punctured(Slope::infinity())
        );
    }

    fn unimodular() -> impl Strategy<Value = GluingMap> {
        // products of the generators T = (1 1; 0 1), S = (0 -1; 1 0) and the swap
        prop::collection::vec(0u8..4, 0..6).prop_map(|word| {
            let gens = [
                GluingMap::new(1, 1, 0, 1).unwrap(),
                GluingMap::new(1, -1, 0, 1).unwrap(),
                GluingMap::new(0, -1, 1, 0).unwrap(),
                meridian_longitude_swap(),
            ];
            word.iter()
                .fold(GluingMap::identity(), |m, &g| m.compose(&gens[g as usize]))
        })
    }

    fn slope_set() -> impl Strategy<Value = SlopeSet> {
        let slope = (-6i64..=6, 0i64..=6)
            .prop_filter("nonzero", |(p, q)| *p != 0 || *q != 0)
            .prop_map(|(p, q)| s(p, q));
        let arc =
            (slope.clone(), slope, any::<bool>(), any::<bool>()).prop_map(|(a, b, c1, c2)| {
                if a == b {
                    Arc::point(a)
                } else {
                    Arc::new(a, b, c1, c2).unwrap()
                }
            });
        prop::collection::vec(arc, 0..3).prop_map(SlopeSet::from_arcs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn membership_transports(m in unimodular(), set in slope_set()) {
            let image = m.image_of_set(&set);
            for x in farey_enumerate(12) {
                prop_assert_eq!(image.contains(&m.apply(&x)), set.contains(&x));
            }
        }

        #[test]
        fn inverse_undoes_apply(m in unimodular(), p in -50i64..50, q in 0i64..50) {
            prop_assume!(p != 0 || q != 0);
            let x = s(p, q);
            prop_assert_eq!(m.inverse().apply(&m.apply(&x)), x);
            prop_assert_eq!(m.compose(&m).det().abs(), BigInt::one());
        }
    }
}
