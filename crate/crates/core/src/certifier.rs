//! Certification of satellite L-space knots.
//!
//! The pipeline for a pattern `P` and companion `K`:
//!
//! 1. necessary conditions (fiberedness of `K` and `P(U)`, nonzero winding);
//! 2. the four sufficient conditions on `K` and `P`;
//! 3. parameters `(a, b, r)` with `a = 2g(K)` and minimal `r`, `b`, and the
//!    hypotheses that put the arc `[1/a → ∞ → 1/b]` inside the L-space slope
//!    set of `M_r`, the exterior of `J̃` in `S³_r(P)`;
//! 4. the strict slope sets of both sides, the pattern side carried across
//!    the meridian/longitude swap;
//! 5. the cover test: if the two strict sets cover `QP¹`, then `r`-surgery
//!    on `P(K)` is an L-space.
//!
//! Every step is logged as a [`Check`] holding the exact values it used, so
//! that [`replay`] can re-derive the verdict from a certificate alone.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gluing::meridian_longitude_swap;
use crate::knot_models::{
    cable_is_lspace_exact, lspace_slope_set, FactSource, KnotError, KnotFacts,
};
use crate::patterns::{
    pattern_twisted_facts, torus_pattern, PatternError, PatternFacts, TwistFamily,
};
use crate::projective_sets::{covers_circle, rr_shape_check, uncovered_witness, Arc, SlopeSet};
use crate::slopes::Slope;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("pattern has no negative L-space tail threshold")]
    NoThreshold,
    #[error("winding number {0} is too small to choose parameters")]
    InvalidWinding(BigInt),
    #[error("companion genus must be positive, got {0}")]
    InvalidGenus(BigInt),
    #[error("lemma parameters must be positive")]
    InvalidParams,
    #[error("lemma condition {id} failed")]
    ConditionFailed { id: String, checks: Vec<Check> },
    #[error("the pattern cannot answer twist n = {n} (needed by {id})")]
    UnknownTwist {
        n: BigInt,
        id: String,
        checks: Vec<Check>,
    },
    #[error("not certified: {0}")]
    NotCertified(Verdict),
    #[error("sufficient condition certified a cable the exact criterion rejects")]
    Unsound,
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Knot(#[from] KnotError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("check {0} is missing value {1:?}")]
    MissingValue(String, String),
    #[error("check {0} has malformed value {1:?}")]
    BadValue(String, String),
    #[error("unknown check id {0}")]
    UnknownCheck(String),
    #[error("check {0} recomputes to {1}, certificate records {2}")]
    CheckMismatch(String, bool, bool),
    #[error("verdict recomputes to {0}, certificate records {1}")]
    VerdictMismatch(Verdict, Verdict),
    #[error("malformed certificate: {0}")]
    Json(String),
}

/// Positive integers `a`, `b`, `r` for the surgery lemma.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LemmaParams {
    #[serde(with = "decimal")]
    pub a: BigInt,
    #[serde(with = "decimal")]
    pub b: BigInt,
    #[serde(with = "decimal")]
    pub r: BigInt,
}

mod decimal {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// One audited condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub pass: bool,
    pub values: BTreeMap<String, String>,
}

const UNKNOWN: &str = "unknown";

impl Check {
    fn new(id: &str, statement: &str, pass: bool, values: Vec<(&str, String)>) -> Self {
        Check {
            id: id.to_string(),
            statement: statement.to_string(),
            pass,
            values: values
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        }
    }

    /// Failed because a fact was unavailable rather than false.
    pub fn is_unknown(&self) -> bool {
        !self.pass && self.values.values().any(|v| v == UNKNOWN)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// `P(K)` is an L-space knot; `r`-surgery on it is an L-space.
    Certified,
    /// The sufficient conditions could not be established. `reason` is the
    /// first failing check id, prefixed with `unknown:` when the check
    /// lacked data instead of failing outright.
    NotCertified(String),
    /// A necessary condition fails: `P(K)` is not an L-space knot.
    Rejected(String),
}

impl Verdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, Verdict::Certified)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Certified => "Certified",
            Verdict::NotCertified(_) => "NotCertified",
            Verdict::Rejected(_) => "Rejected",
        }
    }

    pub fn reason(&self) -> Option<&str> {
        match self {
            Verdict::Certified => None,
            Verdict::NotCertified(r) | Verdict::Rejected(r) => Some(r),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.reason() {
            None => write!(f, "{}", self.label()),
            Some(r) => write!(f, "{}({r})", self.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub params: Option<LemmaParams>,
    /// Strict L-space slopes of the companion exterior.
    pub companion_set: SlopeSet,
    /// The arc the lemma places inside the L-space slopes of `M_r`, in
    /// coordinates where filling along `s` gives `S³_{r,s}(P ∪ J)`.
    pub pattern_side_set: SlopeSet,
    /// Strict interior of `pattern_side_set` carried to the companion side.
    pub glued_image: SlopeSet,
    pub checks: Vec<Check>,
    pub trusted_inputs: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    verdict: String,
    reason: Option<String>,
    params: Option<LemmaParams>,
    gluing_map: String,
    companion_set: SlopeSet,
    pattern_side_set: SlopeSet,
    glued_image: SlopeSet,
    checks: Vec<Check>,
    trusted_inputs: Vec<String>,
}

impl Certificate {
    pub fn surgery_coefficient(&self) -> Option<&BigInt> {
        self.params.as_ref().map(|p| &p.r)
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let dto = CertificateJson {
            verdict: self.verdict.label().to_string(),
            reason: self.verdict.reason().map(str::to_string),
            params: self.params.clone(),
            gluing_map: meridian_longitude_swap().to_string(),
            companion_set: self.companion_set.clone(),
            pattern_side_set: self.pattern_side_set.clone(),
            glued_image: self.glued_image.clone(),
            checks: self.checks.clone(),
            trusted_inputs: self.trusted_inputs.clone(),
        };
        serde_json::to_string_pretty(&dto).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, ReplayError> {
        let dto: CertificateJson =
            serde_json::from_str(text).map_err(|e| ReplayError::Json(e.to_string()))?;
        let reason = || {
            dto.reason
                .clone()
                .ok_or_else(|| ReplayError::Json("missing verdict reason".into()))
        };
        let verdict = match dto.verdict.as_str() {
            "Certified" => Verdict::Certified,
            "NotCertified" => Verdict::NotCertified(reason()?),
            "Rejected" => Verdict::Rejected(reason()?),
            other => return Err(ReplayError::Json(format!("unknown verdict {other:?}"))),
        };
        if dto.gluing_map != meridian_longitude_swap().to_string() {
            return Err(ReplayError::Json(format!(
                "unexpected gluing map {}",
                dto.gluing_map
            )));
        }
        Ok(Certificate {
            verdict,
            params: dto.params,
            companion_set: dto.companion_set,
            pattern_side_set: dto.pattern_side_set,
            glued_image: dto.glued_image,
            checks: dto.checks,
            trusted_inputs: dto.trusted_inputs,
        })
    }
}

// ---------------------------------------------------------------------------
// Arithmetic of the surgery picture
// ---------------------------------------------------------------------------

/// `|H₁|` of `S³_{r,s}(P ∪ J)` when `|lk(P, J)| = w`, i.e. the absolute
/// determinant of the linking matrix `[[r.num, w·r.den], [w·s.den, s.num]]`.
/// Zero means infinite `H₁`.
pub fn homology_order(r: &Slope, s: &Slope, w: &BigInt) -> BigInt {
    (r.num() * s.num() - w * w * r.den() * s.den()).abs()
}

/// `S³_{r,1/a}(P ∪ J)` is `(r − a·w²)`-surgery on the `a`-fold negatively
/// twisted pattern.
pub fn twisted_surgery_coefficient(r: &BigInt, a: &BigInt, w: &BigInt) -> BigInt {
    r - a * w * w
}

/// The closed arc from `1/a` through `∞` to `1/b`.
pub fn lemma_arc(a: &BigInt, b: &BigInt) -> SlopeSet {
    SlopeSet::arc(Arc::closed(
        Slope::reciprocal_of(a.clone()),
        Slope::reciprocal_of(b.clone()),
    ))
}

fn rational_longitude(r: &BigInt, w: &BigInt) -> Slope {
    Slope::new(w * w, r.clone()).expect("r is positive")
}

// ---------------------------------------------------------------------------
// Individual checks. Each `*_check` builds a Check from raw values and is
// reused verbatim by replay.
// ---------------------------------------------------------------------------

fn b2s(b: bool) -> String {
    b.to_string()
}

fn two() -> BigInt {
    BigInt::from(2)
}

fn ineq_r_holds(r: &BigInt, g_p: &BigInt, a: &BigInt, w: &BigInt) -> bool {
    *r >= two() * g_p + a * w * (two() * w - 1) - 1
}

fn ineq_b_holds(b: &BigInt, g_p: &BigInt, r: &BigInt, w: &BigInt) -> bool {
    // b ≥ (2g + r − 1)/w with w > 0, compared without division
    w.is_positive() && b * w >= two() * g_p + r - 1
}

fn sandwich_holds(a: &BigInt, b: &BigInt, r: &BigInt, w: &BigInt) -> bool {
    let w2 = w * w;
    a.is_positive() && a * &w2 < *r && *r < b * &w2
}

fn h1_values(a: &BigInt, r: &BigInt, w: &BigInt) -> (BigInt, BigInt, BigInt) {
    let r_slope = Slope::integer(r.clone());
    let at_longitude = homology_order(&r_slope, &rational_longitude(r, w), w);
    let at_a = homology_order(&r_slope, &Slope::reciprocal_of(a.clone()), w);
    (
        at_longitude,
        at_a,
        twisted_surgery_coefficient(r, a, w).abs(),
    )
}

fn h1_check(a: &BigInt, r: &BigInt, w: &BigInt) -> Check {
    let (at_longitude, at_a, twisted) = h1_values(a, r, w);
    Check::new(
        "lem.h1",
        "|H1(S3_{r,w^2/r}(P u J))| = 0 (infinite) and |H1(S3_{r,1/a})| = |r - a*w^2|",
        at_longitude.is_zero() && at_a == twisted,
        vec![
            ("a", a.to_string()),
            ("r", r.to_string()),
            ("w", w.to_string()),
            ("order_at_w2_over_r", at_longitude.to_string()),
            ("order_at_1_over_a", at_a.to_string()),
        ],
    )
}

fn rr_check(a: &BigInt, b: &BigInt, r: &BigInt, w: &BigInt) -> Check {
    let arc = lemma_arc(a, b);
    let longitude = rational_longitude(r, w);
    Check::new(
        "lem.rr",
        "the arc [1/a -> inf -> 1/b] is a closed interval avoiding the rational longitude w^2/r",
        rr_shape_check(&arc, &longitude) && !arc.contains(&longitude),
        vec![
            ("arc", arc.to_string()),
            ("longitude", longitude.to_string()),
        ],
    )
}

fn companion_strict_set(genus: &BigInt) -> SlopeSet {
    let two_g_minus_one = two() * genus - 1;
    SlopeSet::arc(
        Arc::open(Slope::integer(two_g_minus_one), Slope::infinity()).expect("distinct endpoints"),
    )
}

fn glued_strict_image(pattern_side: &SlopeSet) -> SlopeSet {
    meridian_longitude_swap().image_of_set(&pattern_side.interior())
}

fn cover_check(genus_k: &BigInt, a: &BigInt, b: &BigInt) -> (Check, SlopeSet, SlopeSet, SlopeSet) {
    let companion = companion_strict_set(genus_k);
    let pattern_side = lemma_arc(a, b);
    let glued = glued_strict_image(&pattern_side);
    let witness = uncovered_witness(&companion, &glued);
    let check = Check::new(
        "hrrw.cover",
        "every slope is a strict L-space slope of M_K or the image under h of one of M_r",
        witness.is_none(),
        vec![
            ("companion_set", companion.to_string()),
            ("glued_image", glued.to_string()),
            (
                "uncovered_witness",
                witness.map_or_else(|| "none".to_string(), |w| w.to_string()),
            ),
        ],
    );
    (check, companion, pattern_side, glued)
}

/// Outcome of querying a twisted knot for one of its L-space flags.
enum Flag {
    Known(bool),
    Unknown,
    Invalid(String),
}

fn query_flag(p: &PatternFacts, n: &BigInt, negative: bool) -> (Flag, Option<KnotFacts>) {
    match pattern_twisted_facts(p, n) {
        Ok(f) => {
            let v = if negative {
                f.is_neg_lspace()
            } else {
                f.is_lspace()
            };
            (Flag::Known(v), Some(f))
        }
        Err(PatternError::UnknownTwist(_) | PatternError::TwistTooLarge(_)) => {
            (Flag::Unknown, None)
        }
        Err(e) => (Flag::Invalid(e.to_string()), None),
    }
}

fn twist_check(
    id: &str,
    statement: &str,
    n: &BigInt,
    key: &str,
    flag: &Flag,
    extra: Vec<(&str, String)>,
) -> Check {
    let (pass, value) = match flag {
        Flag::Known(v) => (*v, b2s(*v)),
        Flag::Unknown => (false, UNKNOWN.to_string()),
        Flag::Invalid(e) => (false, format!("invalid: {e}")),
    };
    let mut values = vec![("n", n.to_string()), (key, value)];
    values.extend(extra);
    Check::new(id, statement, pass, values)
}

// ---------------------------------------------------------------------------
// Lemma
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaOutcome {
    /// `[1/a → ∞ → 1/b] ⊂ L(M_r)`.
    pub arc: SlopeSet,
    pub checks: Vec<Check>,
}

/// Verifies the lemma hypotheses for the pattern at `(a, b, r)`.
///
/// All checks are evaluated so the audit is complete. A falsified check is
/// reported ahead of a twist query the pattern could not answer.
pub fn check_lemma(
    p: &PatternFacts,
    a: &BigInt,
    b: &BigInt,
    r: &BigInt,
) -> Result<LemmaOutcome, CertifyError> {
    if !(a.is_positive() && b.is_positive() && r.is_positive()) {
        return Err(CertifyError::InvalidParams);
    }
    let w = p.winding();
    let g = p.genus_s3();
    let mut checks = vec![
        Check::new(
            "lem.2",
            "|lk(P, J)| = w >= 2",
            *w >= two(),
            vec![("w", w.to_string())],
        ),
        Check::new(
            "lem.3",
            "J bounds a disk meeting P in exactly w points",
            p.has_minimal_meridional_disk(),
            vec![("has_disk", b2s(p.has_minimal_meridional_disk()))],
        ),
        Check::new(
            "lem.4",
            "r >= 2g(P) + a*w*(2w-1) - 1",
            ineq_r_holds(r, g, a, w),
            vec![
                ("r", r.to_string()),
                ("g_p", g.to_string()),
                ("a", a.to_string()),
                ("w", w.to_string()),
            ],
        ),
        Check::new(
            "lem.5",
            "b*w >= 2g(P) + r - 1",
            ineq_b_holds(b, g, r, w),
            vec![
                ("b", b.to_string()),
                ("g_p", g.to_string()),
                ("r", r.to_string()),
                ("w", w.to_string()),
            ],
        ),
    ];
    let neg_a = -a;
    let (flag_a, facts_a) = query_flag(p, &neg_a, false);
    let mut extra_a = vec![("a", a.to_string())];
    if let Some(f) = &facts_a {
        extra_a.push(("genus", f.genus().to_string()));
        extra_a.push(("surgery", twisted_surgery_coefficient(r, a, w).to_string()));
    }
    checks.push(twist_check(
        "lem.6",
        "P(U, -a) is an L-space knot",
        &neg_a,
        "is_lspace",
        &flag_a,
        extra_a,
    ));
    let neg_b = -b;
    let (flag_b, facts_b) = query_flag(p, &neg_b, true);
    let mut extra_b = vec![("b", b.to_string())];
    if let Some(f) = &facts_b {
        extra_b.push(("genus", f.genus().to_string()));
        extra_b.push(("surgery", twisted_surgery_coefficient(r, b, w).to_string()));
    }
    checks.push(twist_check(
        "lem.7",
        "P(U, -b) is a negative L-space knot",
        &neg_b,
        "is_neg_lspace",
        &flag_b,
        extra_b,
    ));
    checks.push(Check::new(
        "lem.sandwich",
        "a*w^2 < r < b*w^2",
        sandwich_holds(a, b, r, w),
        vec![
            ("a", a.to_string()),
            ("b", b.to_string()),
            ("r", r.to_string()),
            ("w", w.to_string()),
        ],
    ));
    checks.push(h1_check(a, r, w));
    checks.push(rr_check(a, b, r, w));

    if let Some(c) = checks.iter().find(|c| !c.pass && !c.is_unknown()) {
        return Err(CertifyError::ConditionFailed {
            id: c.id.clone(),
            checks,
        });
    }
    if let Some(c) = checks.iter().find(|c| c.is_unknown()) {
        let n = if c.id == "lem.6" { neg_a } else { neg_b };
        return Err(CertifyError::UnknownTwist {
            n,
            id: c.id.clone(),
            checks,
        });
    }
    Ok(LemmaOutcome {
        arc: lemma_arc(a, b),
        checks,
    })
}

/// Minimal lemma parameters for a companion of genus `g_k`: `a = 2g_k`, the
/// least `r` allowed by the `r`-inequality, then the least `b` allowed by
/// the `b`-inequality and the pattern's negative tail threshold.
pub fn choose_lemma_params(p: &PatternFacts, g_k: &BigInt) -> Result<LemmaParams, CertifyError> {
    if !g_k.is_positive() {
        return Err(CertifyError::InvalidGenus(g_k.clone()));
    }
    let w = p.winding();
    if !w.is_positive() {
        return Err(CertifyError::InvalidWinding(w.clone()));
    }
    let threshold = p.neg_lspace_threshold().ok_or(CertifyError::NoThreshold)?;
    let g = p.genus_s3();
    let a = two() * g_k;
    let r: BigInt = (two() * g + &a * w * (two() * w - 1i32) - 1i32).max(BigInt::one());
    let b_ineq = Integer::div_ceil(&(two() * g + &r - 1), w);
    let b = b_ineq.max(threshold.clone()).max(BigInt::one());
    Ok(LemmaParams { a, b, r })
}

// ---------------------------------------------------------------------------
// Theorem
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Necessary {
    PossiblyLspace,
    NotLspace { id: String, reason: String },
}

fn necessary_checks(p: &PatternFacts, k: &KnotFacts) -> Vec<Check> {
    let pu = pattern_twisted_facts(p, &BigInt::zero());
    let pu_fibered = match &pu {
        Ok(f) => b2s(f.is_fibered()),
        Err(_) => UNKNOWN.to_string(),
    };
    // an unknown P(U) cannot obstruct
    let pass = k.is_fibered() && pu.as_ref().map_or(true, |f| f.is_fibered());
    vec![
        Check::new(
            "necessary.fibered",
            "K and P(U) are fibered",
            pass,
            vec![
                ("companion_fibered", b2s(k.is_fibered())),
                ("pattern_fibered", pu_fibered),
            ],
        ),
        Check::new(
            "necessary.winding",
            "w(P) != 0",
            !p.winding().is_zero(),
            vec![("w", p.winding().to_string())],
        ),
    ]
}

/// Obstructions every satellite L-space knot must clear.
pub fn necessary_check(p: &PatternFacts, k: &KnotFacts) -> Necessary {
    match necessary_checks(p, k).into_iter().find(|c| !c.pass) {
        None => Necessary::PossiblyLspace,
        Some(c) => Necessary::NotLspace {
            reason: c.statement.clone(),
            id: c.id,
        },
    }
}

fn theorem_checks(p: &PatternFacts, k: &KnotFacts) -> Vec<Check> {
    let w = p.winding();
    let n = -(two() * k.genus());
    let (flag, facts) = query_flag(p, &n, false);
    let mut extra = vec![("genus_k", k.genus().to_string())];
    if let Some(f) = &facts {
        extra.push(("knot", f.name().to_string()));
    }
    vec![
        Check::new(
            "thm1.1",
            "K is a nontrivial L-space knot",
            k.is_lspace() && !k.is_unknot(),
            vec![
                ("is_lspace", b2s(k.is_lspace())),
                ("is_unknot", b2s(k.is_unknot())),
                ("genus_k", k.genus().to_string()),
            ],
        ),
        Check::new(
            "thm1.2",
            "w(P) >= 2 and a meridional disk meets P in exactly w(P) points",
            *w >= two() && p.has_minimal_meridional_disk(),
            vec![
                ("w", w.to_string()),
                ("has_disk", b2s(p.has_minimal_meridional_disk())),
            ],
        ),
        twist_check(
            "thm1.3",
            "P(U, -2g(K)) is an L-space knot",
            &n,
            "is_lspace",
            &flag,
            extra,
        ),
        Check::new(
            "thm1.4",
            "P(U, -n) is a negative L-space knot for all n >= N",
            p.neg_lspace_threshold().is_some(),
            vec![(
                "threshold",
                p.neg_lspace_threshold()
                    .map_or_else(|| "none".to_string(), |t| t.to_string()),
            )],
        ),
    ]
}

/// The verdict implied by a list of checks: a failed necessary condition
/// rejects; otherwise the first falsified check, then the first unknown
/// one, blocks certification; a certificate needs a passing cover check.
pub fn derive_verdict(checks: &[Check]) -> Verdict {
    if let Some(c) = checks
        .iter()
        .find(|c| c.id.starts_with("necessary.") && !c.pass)
    {
        return Verdict::Rejected(c.id.clone());
    }
    if let Some(c) = checks.iter().find(|c| !c.pass && !c.is_unknown()) {
        return Verdict::NotCertified(c.id.clone());
    }
    if let Some(c) = checks.iter().find(|c| c.is_unknown()) {
        return Verdict::NotCertified(format!("unknown:{}", c.id));
    }
    if !checks.iter().any(|c| c.id == "hrrw.cover") {
        return Verdict::NotCertified("incomplete".to_string());
    }
    Verdict::Certified
}

fn trusted_inputs(p: &PatternFacts, k: &KnotFacts) -> Vec<String> {
    let mut out = Vec::new();
    match k.source() {
        FactSource::Asserted => out.push(format!("companion asserted: {k}")),
        FactSource::Cable => out.push(format!("companion derived by the cable formula: {k}")),
        _ => {}
    }
    out.extend(p.trusted_inputs());
    out
}

/// Runs the whole pipeline. Never fails; problems become verdicts.
pub fn certify_satellite(p: &PatternFacts, k: &KnotFacts) -> Certificate {
    let mut cert = Certificate {
        verdict: Verdict::NotCertified("incomplete".into()),
        params: None,
        companion_set: SlopeSet::Empty,
        pattern_side_set: SlopeSet::Empty,
        glued_image: SlopeSet::Empty,
        checks: necessary_checks(p, k),
        trusted_inputs: trusted_inputs(p, k),
    };
    if let Ok(set) = lspace_slope_set(k) {
        cert.companion_set = set.interior();
    }
    if derive_verdict(&cert.checks).label() == "Rejected" {
        cert.verdict = derive_verdict(&cert.checks);
        return cert;
    }
    cert.checks.extend(theorem_checks(p, k));
    if cert.checks.iter().any(|c| !c.pass) {
        cert.verdict = derive_verdict(&cert.checks);
        return cert;
    }
    let params = match choose_lemma_params(p, k.genus()) {
        Ok(params) => params,
        Err(e) => {
            cert.checks.push(Check::new(
                "lem.params",
                "lemma parameters exist",
                false,
                vec![("error", e.to_string())],
            ));
            cert.verdict = derive_verdict(&cert.checks);
            return cert;
        }
    };
    let lemma = check_lemma(p, &params.a, &params.b, &params.r);
    let lemma_checks = match &lemma {
        Ok(o) => o.checks.clone(),
        Err(
            CertifyError::ConditionFailed { checks, .. }
            | CertifyError::UnknownTwist { checks, .. },
        ) => checks.clone(),
        Err(e) => vec![Check::new(
            "lem.params",
            "lemma parameters are positive",
            false,
            vec![("error", e.to_string())],
        )],
    };
    cert.checks.extend(lemma_checks);
    cert.params = Some(params.clone());
    if lemma.is_err() {
        cert.verdict = derive_verdict(&cert.checks);
        return cert;
    }
    let (check, companion, pattern_side, glued) = cover_check(k.genus(), &params.a, &params.b);
    debug_assert_eq!(companion, cert.companion_set);
    cert.checks.push(check);
    cert.companion_set = companion;
    cert.pattern_side_set = pattern_side;
    cert.glued_image = glued;
    cert.verdict = derive_verdict(&cert.checks);
    cert
}

/// Mirrors a pattern: `P̄(U, n)` is the mirror of `P(U, −n)`.
pub fn mirror_pattern(p: &PatternFacts) -> Result<PatternFacts, CertifyError> {
    match p.twist_family() {
        TwistFamily::Torus { p: tp, q } => Ok(torus_pattern(tp.clone(), -q)?),
        TwistFamily::Braid(_) | TwistFamily::Table(_) => Ok(crate::patterns::mirror(p)?),
    }
}

/// Certifies that `P(K)` is a *negative* L-space knot for a negative
/// L-space companion, by certifying the mirrored pattern on the mirrored
/// companion.
pub fn certify_satellite_mirrored(
    p: &PatternFacts,
    k: &KnotFacts,
) -> Result<Certificate, CertifyError> {
    let mp = mirror_pattern(p)?;
    let mk = k.mirror();
    let mut cert = certify_satellite(&mp, &mk);
    cert.trusted_inputs.push(format!(
        "mirrored: certificate concerns the mirror of {}({}); a Certified verdict means {}({}) is a negative L-space knot",
        p.name(),
        k.name(),
        p.name(),
        k.name()
    ));
    Ok(cert)
}

/// Twists for which `P(U, n)` is guaranteed to be an L-space knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistRange {
    /// `P(U, n)` is an L-space knot for every `n ≥ from`.
    pub from: BigInt,
    /// Twists spot-checked against the pattern's own family.
    pub verified: Vec<BigInt>,
}

/// For a certified pair, `P(U, n)` is an L-space knot for all
/// `n ≥ −2g(K)`. Built-in families are spot-checked on the first six twists.
pub fn certified_twist_range(p: &PatternFacts, k: &KnotFacts) -> Result<TwistRange, CertifyError> {
    let cert = certify_satellite(p, k);
    if !cert.verdict.is_certified() {
        return Err(CertifyError::NotCertified(cert.verdict));
    }
    let from = -(two() * k.genus());
    let mut verified = Vec::new();
    if p.is_builtin() {
        for i in 0..6 {
            let n = &from + i;
            match pattern_twisted_facts(p, &n) {
                Ok(f) if f.is_lspace() => verified.push(n),
                Ok(_) => {
                    return Err(CertifyError::ConditionFailed {
                        id: "rem.twist-range".into(),
                        checks: vec![Check::new(
                            "rem.twist-range",
                            "P(U, n) is an L-space knot for n >= -2g(K)",
                            false,
                            vec![("n", n.to_string())],
                        )],
                    })
                }
                Err(_) => {}
            }
        }
    }
    Ok(TwistRange { from, verified })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CableComparison {
    pub certificate: Certificate,
    /// The exact cable criterion.
    pub exact: bool,
}

impl CableComparison {
    /// Exact criterion holds but the sufficient conditions do not certify.
    pub fn is_gap(&self) -> bool {
        self.exact && !self.certificate.verdict.is_certified()
    }
}

/// Certifies the `(p, q)` cable of `k` through the torus pattern and
/// compares with the exact criterion.
pub fn certify_cable(
    k: &KnotFacts,
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
) -> Result<CableComparison, CertifyError> {
    let (p, q) = (p.into(), q.into());
    let exact = cable_is_lspace_exact(k, &p, &q)?;
    let pattern = torus_pattern(p, q)?;
    let certificate = certify_satellite(&pattern, k);
    if certificate.verdict.is_certified() && !exact {
        return Err(CertifyError::Unsound);
    }
    Ok(CableComparison { certificate, exact })
}

// ---------------------------------------------------------------------------
// Replay
// ---------------------------------------------------------------------------

fn value<'a>(c: &'a Check, key: &str) -> Result<&'a str, ReplayError> {
    c.values
        .get(key)
        .map(String::as_str)
        .ok_or_else(|| ReplayError::MissingValue(c.id.clone(), key.to_string()))
}

fn int(c: &Check, key: &str) -> Result<BigInt, ReplayError> {
    let v = value(c, key)?;
    v.parse()
        .map_err(|_| ReplayError::BadValue(c.id.clone(), v.to_string()))
}

fn flag(c: &Check, key: &str) -> Result<bool, ReplayError> {
    match value(c, key)? {
        "true" => Ok(true),
        "false" => Ok(false),
        v if v == UNKNOWN || v.starts_with("invalid") => Ok(false),
        v => Err(ReplayError::BadValue(c.id.clone(), v.to_string())),
    }
}

fn set(c: &Check, key: &str) -> Result<SlopeSet, ReplayError> {
    let v = value(c, key)?;
    v.parse()
        .map_err(|_| ReplayError::BadValue(c.id.clone(), v.to_string()))
}

/// Recomputes one check's outcome from its recorded values.
pub fn recheck(c: &Check) -> Result<bool, ReplayError> {
    Ok(match c.id.as_str() {
        "necessary.fibered" => {
            let pattern = value(c, "pattern_fibered")?;
            flag(c, "companion_fibered")? && (pattern == UNKNOWN || flag(c, "pattern_fibered")?)
        }
        "necessary.winding" => !int(c, "w")?.is_zero(),
        "thm1.1" => flag(c, "is_lspace")? && !flag(c, "is_unknot")?,
        "thm1.2" | "lem.2" | "lem.3" => {
            let w_ok = c.id == "lem.3" || int(c, "w")? >= two();
            let disk_ok = c.id == "lem.2" || flag(c, "has_disk")?;
            w_ok && disk_ok
        }
        "thm1.3" => int(c, "n")? == -(two() * int(c, "genus_k")?) && flag(c, "is_lspace")?,
        "thm1.4" => value(c, "threshold")? != "none",
        "lem.4" => ineq_r_holds(&int(c, "r")?, &int(c, "g_p")?, &int(c, "a")?, &int(c, "w")?),
        "lem.5" => ineq_b_holds(&int(c, "b")?, &int(c, "g_p")?, &int(c, "r")?, &int(c, "w")?),
        "lem.6" => int(c, "n")? == -int(c, "a")? && flag(c, "is_lspace")?,
        "lem.7" => int(c, "n")? == -int(c, "b")? && flag(c, "is_neg_lspace")?,
        "lem.sandwich" => {
            sandwich_holds(&int(c, "a")?, &int(c, "b")?, &int(c, "r")?, &int(c, "w")?)
        }
        "lem.h1" => {
            let fresh = h1_check(&int(c, "a")?, &int(c, "r")?, &int(c, "w")?);
            fresh.values == c.values && fresh.pass
        }
        "lem.rr" => {
            let arc = set(c, "arc")?;
            let longitude: Slope = value(c, "longitude")?
                .parse()
                .map_err(|_| ReplayError::BadValue(c.id.clone(), "longitude".into()))?;
            rr_shape_check(&arc, &longitude) && !arc.contains(&longitude)
        }
        "lem.params" => false,
        "hrrw.cover" => covers_circle(&set(c, "companion_set")?, &set(c, "glued_image")?),
        other => return Err(ReplayError::UnknownCheck(other.to_string())),
    })
}

/// Re-derives a certificate's verdict from its recorded checks and sets.
pub fn replay(cert: &Certificate) -> Result<Verdict, ReplayError> {
    for c in &cert.checks {
        let fresh = recheck(c)?;
        if fresh != c.pass {
            return Err(ReplayError::CheckMismatch(c.id.clone(), fresh, c.pass));
        }
    }
    if let Some(params) = &cert.params {
        for c in &cert.checks {
            for (key, want) in [("a", &params.a), ("b", &params.b), ("r", &params.r)] {
                if c.id.starts_with("lem.") && c.values.contains_key(key) && int(c, key)? != *want {
                    return Err(ReplayError::BadValue(
                        c.id.clone(),
                        format!("{key} differs from params"),
                    ));
                }
            }
        }
    }
    // the recorded sets must be the ones the cover check used
    if let (Some(params), Some(cover)) = (&cert.params, cert.check("hrrw.cover")) {
        let genus_k = cert
            .check("thm1.1")
            .ok_or_else(|| ReplayError::MissingValue("thm1.1".into(), "genus_k".into()))
            .and_then(|c| int(c, "genus_k"))?;
        let (fresh, companion, pattern_side, glued) = cover_check(&genus_k, &params.a, &params.b);
        let consistent = fresh.values == cover.values
            && companion == cert.companion_set
            && pattern_side == cert.pattern_side_set
            && glued == cert.glued_image;
        if !consistent {
            return Err(ReplayError::CheckMismatch(
                "hrrw.cover".into(),
                fresh.pass,
                cover.pass,
            ));
        }
    }
    let verdict = derive_verdict(&cert.checks);
    if verdict != cert.verdict {
        return Err(ReplayError::VerdictMismatch(verdict, cert.verdict.clone()));
    }
    Ok(verdict)
}
