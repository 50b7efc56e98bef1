//! Facts about knots in `S³` that the certifier consumes, and the slope
//! sets their complements contribute.
//!
//! Facts are declarative. Outside the built-in families (torus knots,
//! cables, braid closures) the engine never decides L-space status on its
//! own; it records where each fact came from so certificates can list
//! their trusted inputs.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::projective_sets::{Arc, SlopeSet};
use crate::slopes::Slope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("parameters {0} and {1} are not coprime")]
    NotCoprime(BigInt, BigInt),
    #[error("torus knot and cable parameter p must be at least 2, got {0}")]
    InvalidP(BigInt),
    #[error("the companion must be a nontrivial knot")]
    UnknotCompanion,
    #[error("inconsistent knot facts for {name}: {reason}")]
    Inconsistent { name: String, reason: String },
}

/// How a [`KnotFacts`] value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactSource {
    /// Supplied by the user; trusted, not checked.
    Asserted,
    TorusKnot,
    /// Cable formula applied to a companion's facts.
    Cable,
    /// Closure of a sign-definite 1-bridge braid word.
    BraidWord,
    /// A pattern table's tail assertion. The genus is only an upper bound.
    TailAssertion,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KnotFacts {
    name: String,
    genus: BigInt,
    is_lspace: bool,
    is_neg_lspace: bool,
    is_fibered: bool,
    is_unknot: bool,
    source: FactSource,
}

impl KnotFacts {
    /// User-asserted facts, checked for internal consistency.
    pub fn asserted(
        name: impl Into<String>,
        genus: impl Into<BigInt>,
        is_lspace: bool,
        is_neg_lspace: bool,
        is_fibered: bool,
        is_unknot: bool,
    ) -> Result<Self, KnotError> {
        Self::with_source(
            name.into(),
            genus.into(),
            [is_lspace, is_neg_lspace, is_fibered, is_unknot],
            FactSource::Asserted,
        )
    }

    pub(crate) fn with_source(
        name: String,
        genus: BigInt,
        [is_lspace, is_neg_lspace, is_fibered, is_unknot]: [bool; 4],
        source: FactSource,
    ) -> Result<Self, KnotError> {
        let facts = KnotFacts {
            name,
            genus,
            is_lspace,
            is_neg_lspace,
            is_fibered,
            is_unknot,
            source,
        };
        facts.validate()?;
        Ok(facts)
    }

    fn validate(&self) -> Result<(), KnotError> {
        let fail = |reason: &str| {
            Err(KnotError::Inconsistent {
                name: self.name.clone(),
                reason: reason.to_string(),
            })
        };
        if self.genus.is_negative() {
            return fail("genus is negative");
        }
        if self.is_unknot
            && !(self.genus.is_zero() && self.is_lspace && self.is_neg_lspace && self.is_fibered)
        {
            return fail("the unknot has genus 0 and is a fibered L-space knot of both signs");
        }
        if self.genus.is_zero() && !self.is_unknot && self.source != FactSource::TailAssertion {
            return fail("only the unknot has genus 0");
        }
        if !self.is_unknot && self.is_lspace && self.is_neg_lspace {
            return fail("a nontrivial knot cannot be both an L-space and a negative L-space knot");
        }
        if (self.is_lspace || self.is_neg_lspace) && !self.is_fibered {
            return fail("L-space knots are fibered");
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn genus(&self) -> &BigInt {
        &self.genus
    }

    pub fn is_lspace(&self) -> bool {
        self.is_lspace
    }

    pub fn is_neg_lspace(&self) -> bool {
        self.is_neg_lspace
    }

    pub fn is_fibered(&self) -> bool {
        self.is_fibered
    }

    pub fn is_unknot(&self) -> bool {
        self.is_unknot
    }

    pub fn source(&self) -> FactSource {
        self.source
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The mirror image: L-space flags trade places.
    pub fn mirror(&self) -> KnotFacts {
        KnotFacts {
            name: format!("-({})", self.name),
            is_lspace: self.is_neg_lspace,
            is_neg_lspace: self.is_lspace,
            ..self.clone()
        }
    }
}

impl fmt::Display for KnotFacts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (genus {}, lspace={}, neg_lspace={}, fibered={}, unknot={}, {:?})",
            self.name,
            self.genus,
            self.is_lspace,
            self.is_neg_lspace,
            self.is_fibered,
            self.is_unknot,
            self.source
        )
    }
}

fn check_coprime(p: &BigInt, q: &BigInt) -> Result<(), KnotError> {
    if p.gcd(q) != BigInt::one() {
        return Err(KnotError::NotCoprime(p.clone(), q.clone()));
    }
    Ok(())
}

/// Facts for the `(p, m)` torus knot.
///
/// `m = ±1` is the unknot. The knot is an L-space knot iff `m ≥ −1` and a
/// negative L-space knot iff `m ≤ 1`.
pub fn torus_knot(p: impl Into<BigInt>, m: impl Into<BigInt>) -> Result<KnotFacts, KnotError> {
    let (p, m) = (p.into(), m.into());
    if p < BigInt::from(2) {
        return Err(KnotError::InvalidP(p));
    }
    check_coprime(&p, &m)?;
    let one = BigInt::one();
    let genus = (&p - 1) * (m.abs() - 1) / 2;
    KnotFacts::with_source(
        format!("T({p},{m})"),
        genus,
        [m >= -&one, m <= one, true, m.abs() == one],
        FactSource::TorusKnot,
    )
}

/// The L-space surgery slopes of a nontrivial knot's complement:
/// `[2g − 1, ∞]` for an L-space knot, `[∞, −2g + 1]` for a negative one,
/// and empty otherwise.
pub fn lspace_slope_set(k: &KnotFacts) -> Result<SlopeSet, KnotError> {
    if k.is_unknot {
        return Err(KnotError::UnknotCompanion);
    }
    let two_g_minus_one: BigInt = BigInt::from(2) * &k.genus - 1;
    Ok(if k.is_lspace {
        SlopeSet::arc(Arc::closed(
            Slope::integer(two_g_minus_one),
            Slope::infinity(),
        ))
    } else if k.is_neg_lspace {
        SlopeSet::arc(Arc::closed(
            Slope::infinity(),
            Slope::integer(-two_g_minus_one),
        ))
    } else {
        SlopeSet::Empty
    })
}

/// Whether the `(p, q)` cable of a nontrivial companion is an L-space knot:
/// exactly when the companion is one and `q > p(2g − 1)`.
pub fn cable_is_lspace_exact(
    companion: &KnotFacts,
    p: &BigInt,
    q: &BigInt,
) -> Result<bool, KnotError> {
    if *p < BigInt::from(2) {
        return Err(KnotError::InvalidP(p.clone()));
    }
    check_coprime(p, q)?;
    if companion.is_unknot {
        return Err(KnotError::UnknotCompanion);
    }
    let bound = p * (BigInt::from(2) * &companion.genus - 1);
    Ok(companion.is_lspace && *q > bound)
}

/// Facts for the `(p, q)` cable of a nontrivial companion.
///
/// Genus is `p·g + (p − 1)(|q| − 1)/2`. The negative flag comes from the
/// exact criterion applied to the mirror, since the mirror of `K_{p,q}` is
/// `(−K)_{p,−q}`. Fiberedness is inherited from the companion.
pub fn cable_facts(companion: &KnotFacts, p: &BigInt, q: &BigInt) -> Result<KnotFacts, KnotError> {
    let is_lspace = cable_is_lspace_exact(companion, p, q)?;
    let is_neg_lspace = cable_is_lspace_exact(&companion.mirror(), p, &-q)?;
    let genus = p * &companion.genus + (p - 1) * (q.abs() - 1) / 2;
    KnotFacts::with_source(
        format!("C({p},{q})[{}]", companion.name),
        genus,
        [is_lspace, is_neg_lspace, companion.is_fibered, false],
        FactSource::Cable,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn torus_knot_examples() {
        let t23 = torus_knot(2, 3).unwrap();
        assert_eq!(t23.genus(), &b(1));
        assert!(t23.is_lspace() && !t23.is_neg_lspace() && !t23.is_unknot());

        let u = torus_knot(2, -1).unwrap();
        assert!(u.is_unknot() && u.is_lspace() && u.is_neg_lspace());
        assert_eq!(u.genus(), &b(0));

        let t = torus_knot(3, -4).unwrap();
        assert!(t.is_neg_lspace() && !t.is_lspace());
        assert_eq!(t.genus(), &b(3));

        assert_eq!(torus_knot(2, 4), Err(KnotError::NotCoprime(b(2), b(4))));
        assert_eq!(torus_knot(1, 4), Err(KnotError::InvalidP(b(1))));
        assert!(matches!(torus_knot(3, 0), Err(KnotError::NotCoprime(..))));
    }

    #[test]
    fn slope_sets() {
        let trefoil = torus_knot(2, 3).unwrap();
        assert_eq!(
            lspace_slope_set(&trefoil).unwrap().to_string(),
            "[1/1, 1/0]"
        );
        assert_eq!(
            lspace_slope_set(&trefoil).unwrap().interior(),
            "(1, inf)".parse().unwrap()
        );
        let neg = torus_knot(2, -3).unwrap();
        assert_eq!(
            lspace_slope_set(&neg).unwrap(),
            "[-inf, -1]".parse().unwrap()
        );
        let fig8 = KnotFacts::asserted("4_1", 1, false, false, true, false).unwrap();
        assert_eq!(lspace_slope_set(&fig8).unwrap(), SlopeSet::Empty);
        assert_eq!(
            lspace_slope_set(&torus_knot(2, 1).unwrap()),
            Err(KnotError::UnknotCompanion)
        );
    }

    #[test]
    fn exact_cable_criterion() {
        let trefoil = torus_knot(2, 3).unwrap();
        assert!(cable_is_lspace_exact(&trefoil, &b(2), &b(3)).unwrap());
        assert!(cable_is_lspace_exact(&trefoil, &b(3), &b(4)).unwrap());
        assert!(matches!(
            cable_is_lspace_exact(&trefoil, &b(3), &b(3)),
            Err(KnotError::NotCoprime(..))
        ));
        assert!(!cable_is_lspace_exact(&trefoil, &b(2), &b(1)).unwrap());
        let fig8 = KnotFacts::asserted("4_1", 1, false, false, true, false).unwrap();
        assert!(!cable_is_lspace_exact(&fig8, &b(2), &b(101)).unwrap());
    }

    #[test]
    fn cable_facts_genus_and_flags() {
        let trefoil = torus_knot(2, 3).unwrap();
        let c = cable_facts(&trefoil, &b(2), &b(3)).unwrap();
        assert_eq!(c.genus(), &b(3));
        assert!(c.is_lspace() && !c.is_neg_lspace() && c.is_fibered());
        let c = cable_facts(&trefoil, &b(2), &b(-1)).unwrap();
        assert!(!c.is_lspace() && !c.is_neg_lspace());
        assert_eq!(c.genus(), &b(2));
    }

    #[test]
    fn inconsistent_facts_rejected() {
        assert!(KnotFacts::asserted("bad", 2, true, true, true, false).is_err());
        assert!(KnotFacts::asserted("bad", 1, true, false, false, false).is_err());
        assert!(KnotFacts::asserted("bad", 1, true, true, true, true).is_err());
        assert!(KnotFacts::asserted("bad", -1, false, false, false, false).is_err());
        assert!(KnotFacts::asserted("bad", 0, false, false, true, false).is_err());
    }

    #[test]
    fn torus_family_properties() {
        for p in 2..=7i64 {
            for m in -30..=30i64 {
                let Ok(k) = torus_knot(p, m) else { continue };
                assert_eq!(k.is_lspace(), torus_knot(p, -m).unwrap().is_neg_lspace());
                if m >= 2 {
                    let strict = lspace_slope_set(&k).unwrap().interior();
                    let expect =
                        Arc::open(Slope::integer(p * m - p - m), Slope::infinity()).unwrap();
                    assert_eq!(strict, SlopeSet::arc(expect));
                }
            }
        }
    }

    #[test]
    fn exact_criterion_monotone_in_q() {
        for companion in [torus_knot(2, 3).unwrap(), torus_knot(3, 5).unwrap()] {
            for p in 2..=9i64 {
                let mut seen_true = false;
                for q in -100..=100i64 {
                    let Ok(v) = cable_is_lspace_exact(&companion, &b(p), &b(q)) else {
                        continue;
                    };
                    assert!(!seen_true || v, "monotonicity broke at p={p} q={q}");
                    seen_true |= v;
                }
            }
        }
    }
}
