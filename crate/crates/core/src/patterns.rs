//! Pattern knots in the solid torus and their twist families.
//!
//! A pattern is described by its winding number, the Seifert genus of
//! `P(U) ⊂ S³`, whether some meridional disk meets it minimally, and a rule
//! answering "what knot is `P(U, n)`?" for integer twists `n`. Three rules
//! are built in: torus-knot patterns (closed form), braided patterns (by
//! manipulating the braid word), and user-supplied tables with explicit
//! tail assertions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::knot_models::{torus_knot, FactSource, KnotError, KnotFacts};

/// Upper limit on materialized braid word length.
pub const MAX_BRAID_LETTERS: usize = 4_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error("braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },
    #[error("bridge width {b} outside 1..={max}")]
    BridgeOutOfRange { b: i64, max: i64 },
    #[error("braid word is not positive")]
    NotPositive,
    #[error("braid closure has {0} components, not a knot")]
    NotAKnot(usize),
    #[error("the twist family cannot answer n = {0}")]
    UnknownTwist(BigInt),
    #[error("twisting by {0} would exceed the braid length limit")]
    TwistTooLarge(BigInt),
    #[error("P(U, {n}) has genus {genus}, above the twist bound {bound}")]
    GenusBoundViolated {
        n: BigInt,
        genus: BigInt,
        bound: BigInt,
    },
    #[error("inconsistent pattern: {0}")]
    Inconsistent(String),
}

// ---------------------------------------------------------------------------
// Braid words
// ---------------------------------------------------------------------------

/// `σ_index` when `positive`, its inverse otherwise. Indices start at 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub positive: bool,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter {
            index,
            positive: true,
        }
    }

    pub fn neg(index: usize) -> Self {
        Letter {
            index,
            positive: false,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            positive: !self.positive,
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidSign {
    Positive,
    Negative,
    Mixed,
    Trivial,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, PatternError> {
        if strands < 2 {
            return Err(PatternError::TooFewStrands(strands));
        }
        if let Some(l) = letters.iter().find(|l| l.index == 0 || l.index >= strands) {
            return Err(PatternError::IndexOutOfRange {
                index: l.index,
                strands,
            });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word from signed indices: `3` is `σ_3`, `-3` is `σ_3⁻¹`.
    pub fn from_signed(strands: usize, letters: &[i64]) -> Result<Self, PatternError> {
        let letters = letters
            .iter()
            .map(|&l| Letter {
                index: l.unsigned_abs() as usize,
                positive: l > 0,
            })
            .collect();
        Self::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The formal inverse: reversed, every letter inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand counts differ");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    /// Permutation of strand positions induced by the word, 0-based:
    /// strand starting at position `i` ends at `perm[i]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut at: Vec<usize> = (0..self.strands).collect();
        for l in &self.letters {
            at.swap(l.index - 1, l.index);
        }
        // at[pos] = strand now at pos
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    /// Number of components of the braid closure.
    pub fn closure_components(&self) -> usize {
        let perm = self.permutation();
        let mut seen = vec![false; self.strands];
        let mut cycles = 0;
        for i in 0..self.strands {
            if !seen[i] {
                cycles += 1;
                let mut j = i;
                while !seen[j] {
                    seen[j] = true;
                    j = perm[j];
                }
            }
        }
        cycles
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[", self.strands)?;
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.positive {
                write!(f, "{}", l.index)?;
            } else {
                write!(f, "-{}", l.index)?;
            }
        }
        write!(f, "]")
    }
}

/// `(σ_{w−1} ⋯ σ_1)`, the positive generator of the full twist.
fn twist_block(strands: usize) -> impl Iterator<Item = Letter> + Clone {
    (1..strands).rev().map(Letter::pos)
}

/// Appends `|n|` full twists. A positive full twist is `(σ_{w−1}⋯σ_1)^w`;
/// a negative one is written as its formal inverse `(σ_1⁻¹⋯σ_{w−1}⁻¹)^w`,
/// so opposite twists cancel under free reduction.
pub fn braid_add_full_twists(bw: &BraidWord, n: i64) -> BraidWord {
    let w = bw.strands;
    let reps = n.unsigned_abs() as usize * w;
    let mut letters = bw.letters.clone();
    letters.reserve(reps * (w - 1));
    let block: Vec<Letter> = if n >= 0 {
        twist_block(w).collect()
    } else {
        twist_block(w)
            .collect::<Vec<_>>()
            .into_iter()
            .rev()
            .map(Letter::inverse)
            .collect()
    };
    for _ in 0..reps {
        letters.extend_from_slice(&block);
    }
    BraidWord {
        strands: w,
        letters,
    }
}

/// Cancels adjacent `σ_i σ_i⁻¹` and `σ_i⁻¹ σ_i` pairs until none remain.
pub fn braid_free_reduce(bw: &BraidWord) -> BraidWord {
    let mut out: Vec<Letter> = Vec::with_capacity(bw.letters.len());
    for &l in &bw.letters {
        if out.last() == Some(&l.inverse()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    BraidWord {
        strands: bw.strands,
        letters: out,
    }
}

pub fn braid_sign(bw: &BraidWord) -> BraidSign {
    let reduced = braid_free_reduce(bw);
    let pos = reduced.letters.iter().any(|l| l.positive);
    let neg = reduced.letters.iter().any(|l| !l.positive);
    match (pos, neg) {
        (false, false) => BraidSign::Trivial,
        (true, false) => BraidSign::Positive,
        (false, true) => BraidSign::Negative,
        (true, true) => BraidSign::Mixed,
    }
}

/// Genus of the closure of a positive braid: `(c − w + 1)/2` for `c`
/// crossings on `w` strands.
pub fn positive_braid_closure_genus(bw: &BraidWord) -> Result<usize, PatternError> {
    let reduced = braid_free_reduce(bw);
    if !matches!(
        braid_sign(&reduced),
        BraidSign::Positive | BraidSign::Trivial
    ) {
        return Err(PatternError::NotPositive);
    }
    let comps = reduced.closure_components();
    if comps != 1 {
        return Err(PatternError::NotAKnot(comps));
    }
    Ok((reduced.len() + 1 - reduced.strands) / 2)
}

/// `g + |n|·w(w − 1)/2`: twisting `n` times adds at most `w(w − 1)/2` to the
/// genus per full twist when a meridional disk meets the pattern `w` times.
pub fn genus_twist_bound(g_p: &BigInt, w: &BigInt, n: &BigInt) -> BigInt {
    g_p + n.abs() * w * (w - 1) / 2
}

// ---------------------------------------------------------------------------
// Twist families
// ---------------------------------------------------------------------------

/// A pattern given by a braid word whose closure in the solid torus is `P`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidFamily {
    word: BraidWord,
    /// Set for 1-bridge braids, whose sign-definite twists are (negative)
    /// L-space knots. For other braids the word only yields genus.
    one_bridge: Option<(usize, usize, i64)>,
    /// The word is the mirror of the 1-bridge braid above.
    mirrored: bool,
    overrides: BTreeMap<BigInt, KnotFacts>,
    declared_threshold: Option<BigInt>,
}

impl BraidFamily {
    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn is_one_bridge(&self) -> bool {
        self.one_bridge.is_some()
    }

    pub fn twisted_word(&self, n: &BigInt) -> Result<BraidWord, PatternError> {
        let w = self.word.strands;
        let n_small = n
            .to_i64()
            .filter(|k| {
                (k.unsigned_abs() as usize).saturating_mul(w * (w - 1)) <= MAX_BRAID_LETTERS
            })
            .ok_or_else(|| PatternError::TwistTooLarge(n.clone()))?;
        Ok(braid_free_reduce(&braid_add_full_twists(
            &self.word, n_small,
        )))
    }

    fn facts_from_word(&self, n: &BigInt) -> Result<KnotFacts, PatternError> {
        let word = self.twisted_word(n)?;
        let name = match self.one_bridge {
            Some((w, b, t)) if self.mirrored => format!("mirror(B({w},{b},{t}))(U,{n})"),
            Some((w, b, t)) => format!("B({w},{b},{t})(U,{n})"),
            None => format!("{word}"),
        };
        let sign = braid_sign(&word);
        let unknown = || PatternError::UnknownTwist(n.clone());
        let genus = match sign {
            BraidSign::Positive => positive_braid_closure_genus(&word)?,
            BraidSign::Negative => positive_braid_closure_genus(&word.inverse())?,
            BraidSign::Mixed | BraidSign::Trivial => return Err(unknown()),
        };
        if self.one_bridge.is_none() {
            return Err(unknown());
        }
        let unknot = genus == 0;
        let flags = [
            unknot || sign == BraidSign::Positive,
            unknot || sign == BraidSign::Negative,
            true,
            unknot,
        ];
        Ok(KnotFacts::with_source(
            name,
            genus.into(),
            flags,
            FactSource::BraidWord,
        )?)
    }

    fn answer(&self, n: &BigInt) -> Result<KnotFacts, PatternError> {
        match self.overrides.get(n) {
            Some(f) => Ok(f.clone()),
            None => self.facts_from_word(n),
        }
    }

    /// Least `N ≥ 0` such that the word twisted by `−N` is negative. Appending
    /// negative letters to a freely reduced negative word keeps it negative,
    /// so every `n ≥ N` also gives a negative word.
    fn computed_threshold(&self) -> Option<BigInt> {
        self.one_bridge?;
        let w = self.word.strands;
        let neg_block: Vec<Letter> =
            braid_add_full_twists(&BraidWord::new(w, vec![]).ok()?, -1).letters;
        let mut current = braid_free_reduce(&self.word);
        let limit = self.word.len() + 1;
        for n in 0..=limit {
            if braid_sign(&current) == BraidSign::Negative {
                return Some(BigInt::from(n));
            }
            current.letters.extend_from_slice(&neg_block);
            current = braid_free_reduce(&current);
        }
        None
    }
}

/// A finite table of twisted knots with optional asserted tails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableFamily {
    twists: BTreeMap<BigInt, KnotFacts>,
    /// `P(U, −n)` is a negative L-space knot for all `n ≥ neg_threshold`.
    neg_threshold: Option<BigInt>,
    /// `P(U, n)` is an L-space knot for all `n ≥ pos_from`.
    pos_from: Option<BigInt>,
}

impl TableFamily {
    pub fn new(
        twists: BTreeMap<BigInt, KnotFacts>,
        neg_threshold: Option<BigInt>,
        pos_from: Option<BigInt>,
    ) -> Result<Self, PatternError> {
        if let (Some(nt), Some(pf)) = (&neg_threshold, &pos_from) {
            if pf <= &-nt {
                return Err(PatternError::Inconsistent(format!(
                    "tails overlap: negative from n ≤ {} and positive from n ≥ {pf}",
                    -nt
                )));
            }
        }
        for (n, f) in &twists {
            let in_neg = neg_threshold.as_ref().is_some_and(|nt| -n >= *nt);
            let in_pos = pos_from.as_ref().is_some_and(|pf| n >= pf);
            if (in_neg && !f.is_neg_lspace()) || (in_pos && !f.is_lspace()) {
                return Err(PatternError::Inconsistent(format!(
                    "table entry n = {n} contradicts the asserted tail"
                )));
            }
        }
        Ok(TableFamily {
            twists,
            neg_threshold,
            pos_from,
        })
    }

    pub fn twists(&self) -> &BTreeMap<BigInt, KnotFacts> {
        &self.twists
    }

    pub fn pos_from(&self) -> Option<&BigInt> {
        self.pos_from.as_ref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistFamily {
    /// `P(U, n) = T(p, q + n·p)`.
    Torus {
        p: BigInt,
        q: BigInt,
    },
    Braid(BraidFamily),
    Table(TableFamily),
}

/// Combinatorial data of a pattern `P ⊂ D² × S¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternFacts {
    name: String,
    winding: BigInt,
    genus_s3: BigInt,
    has_minimal_meridional_disk: bool,
    twist_family: TwistFamily,
    neg_lspace_threshold: Option<BigInt>,
}

impl PatternFacts {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn winding(&self) -> &BigInt {
        &self.winding
    }

    pub fn genus_s3(&self) -> &BigInt {
        &self.genus_s3
    }

    pub fn has_minimal_meridional_disk(&self) -> bool {
        self.has_minimal_meridional_disk
    }

    pub fn twist_family(&self) -> &TwistFamily {
        &self.twist_family
    }

    /// `N` such that `P(U, −n)` is a negative L-space knot for every `n ≥ N`.
    pub fn neg_lspace_threshold(&self) -> Option<&BigInt> {
        self.neg_lspace_threshold.as_ref()
    }

    /// Whether the family's answers are derived rather than asserted.
    pub fn is_builtin(&self) -> bool {
        match &self.twist_family {
            TwistFamily::Torus { .. } => true,
            TwistFamily::Braid(b) => b.is_one_bridge() && b.overrides.is_empty(),
            TwistFamily::Table(_) => false,
        }
    }

    /// Facts the certifier must take on trust for this pattern.
    pub fn trusted_inputs(&self) -> Vec<String> {
        let mut out = Vec::new();
        match &self.twist_family {
            TwistFamily::Torus { .. } => {}
            TwistFamily::Braid(b) => {
                for (n, f) in &b.overrides {
                    out.push(format!("pattern {}: P(U, {n}) asserted as {f}", self.name));
                }
                if b.computed_threshold().is_none() {
                    if let Some(t) = &b.declared_threshold {
                        out.push(format!(
                            "pattern {}: P(U, -n) asserted negative L-space for n >= {t}",
                            self.name
                        ));
                    }
                }
            }
            TwistFamily::Table(t) => {
                out.push(format!(
                    "pattern {}: winding {}, genus {}, meridional disk = {} asserted",
                    self.name, self.winding, self.genus_s3, self.has_minimal_meridional_disk
                ));
                for (n, f) in &t.twists {
                    out.push(format!("pattern {}: P(U, {n}) asserted as {f}", self.name));
                }
                if let Some(nt) = &t.neg_threshold {
                    out.push(format!(
                        "pattern {}: P(U, -n) asserted negative L-space for n >= {nt}",
                        self.name
                    ));
                }
                if let Some(pf) = &t.pos_from {
                    out.push(format!(
                        "pattern {}: P(U, n) asserted L-space for n >= {pf}",
                        self.name
                    ));
                }
            }
        }
        out
    }

    /// The same pattern with `m` full twists folded in, so that its
    /// `P(U, 0)` is this pattern's `P(U, m)`.
    pub fn rebased(&self, m: &BigInt) -> Result<PatternFacts, PatternError> {
        match &self.twist_family {
            TwistFamily::Torus { p, q } => torus_pattern(p.clone(), q + m * p),
            TwistFamily::Braid(b) => {
                let word = b.twisted_word(m)?;
                let overrides = b
                    .overrides
                    .iter()
                    .map(|(n, f)| (n - m, f.clone()))
                    .collect();
                let mut family = BraidFamily {
                    word,
                    one_bridge: b.one_bridge,
                    mirrored: b.mirrored,
                    overrides,
                    declared_threshold: b.declared_threshold.as_ref().map(|t| t + m),
                };
                if let Some((w, bw, t)) = family.one_bridge {
                    let m = m
                        .to_i64()
                        .ok_or_else(|| PatternError::TwistTooLarge(m.clone()))?;
                    let shift = if family.mirrored { -m } else { m };
                    family.one_bridge = Some((w, bw, t + shift * w as i64));
                }
                braid_pattern_from_family(format!("{}+{m}", self.name), family)
            }
            TwistFamily::Table(t) => {
                let twists = t.twists.iter().map(|(n, f)| (n - m, f.clone())).collect();
                let table = TableFamily::new(
                    twists,
                    t.neg_threshold.as_ref().map(|nt| nt + m),
                    t.pos_from.as_ref().map(|pf| pf - m),
                )?;
                let genus = t
                    .twists
                    .get(m)
                    .ok_or_else(|| PatternError::UnknownTwist(m.clone()))?
                    .genus()
                    .clone();
                table_pattern(
                    format!("{}+{m}", self.name),
                    self.winding.clone(),
                    genus,
                    self.has_minimal_meridional_disk,
                    table,
                )
            }
        }
    }
}

fn validate_pattern(p: PatternFacts) -> Result<PatternFacts, PatternError> {
    if p.winding.is_negative() || p.genus_s3.is_negative() {
        return Err(PatternError::Inconsistent(
            "winding and genus must be nonnegative".into(),
        ));
    }
    if p.has_minimal_meridional_disk && p.winding.is_zero() {
        return Err(PatternError::Inconsistent(
            "a meridional disk meeting P in w(P) points forces w(P) >= 1".into(),
        ));
    }
    if p.neg_lspace_threshold
        .as_ref()
        .is_some_and(|t| t.is_negative())
    {
        return Err(PatternError::Inconsistent(
            "negative threshold must be nonnegative".into(),
        ));
    }
    Ok(p)
}

/// The `(p, q)` torus knot in its standard embedding in the solid torus,
/// winding `p` times around.
pub fn torus_pattern(
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
) -> Result<PatternFacts, PatternError> {
    let (p, q) = (p.into(), q.into());
    let base = torus_knot(p.clone(), q.clone())?;
    // P(U, −n) = T(p, q − np) is a negative L-space knot iff q − np ≤ 1
    let threshold = Integer::div_ceil(&(&q - 1), &p).max(BigInt::zero());
    validate_pattern(PatternFacts {
        name: format!("torus_pattern({p},{q})"),
        winding: p.clone(),
        genus_s3: base.genus().clone(),
        has_minimal_meridional_disk: true,
        twist_family: TwistFamily::Torus { p, q },
        neg_lspace_threshold: Some(threshold),
    })
}

fn braid_pattern_from_family(
    name: String,
    family: BraidFamily,
) -> Result<PatternFacts, PatternError> {
    let comps = family.word.closure_components();
    if comps != 1 {
        return Err(PatternError::NotAKnot(comps));
    }
    let genus_s3 = match family.answer(&BigInt::zero()) {
        Ok(f) => f.genus().clone(),
        Err(PatternError::UnknownTwist(_)) => {
            let reduced = braid_free_reduce(&family.word);
            match braid_sign(&reduced) {
                BraidSign::Positive => positive_braid_closure_genus(&reduced)?.into(),
                BraidSign::Negative => positive_braid_closure_genus(&reduced.inverse())?.into(),
                _ => return Err(PatternError::UnknownTwist(BigInt::zero())),
            }
        }
        Err(e) => return Err(e),
    };
    let threshold = family
        .computed_threshold()
        .or_else(|| family.declared_threshold.clone());
    validate_pattern(PatternFacts {
        name,
        winding: BigInt::from(family.word.strands),
        genus_s3,
        has_minimal_meridional_disk: true,
        twist_family: TwistFamily::Braid(family),
        neg_lspace_threshold: threshold,
    })
}

/// The 1-bridge braid `(σ_b ⋯ σ_1)(σ_{w−1} ⋯ σ_1)^t` on `w` strands.
///
/// Twisted knots whose reduced word is positive (negative) are L-space
/// (negative L-space) knots with genus from the braid. Twists whose word
/// is mixed must be covered by `overrides`.
pub fn one_bridge_braid(
    w: usize,
    b: i64,
    t: i64,
    overrides: BTreeMap<BigInt, KnotFacts>,
    declared_threshold: Option<BigInt>,
) -> Result<PatternFacts, PatternError> {
    if w < 3 {
        return Err(PatternError::TooFewStrands(w));
    }
    let max = w as i64 - 2;
    if !(1..=max).contains(&b) {
        return Err(PatternError::BridgeOutOfRange { b, max });
    }
    let mut letters: Vec<Letter> = (1..=b as usize).rev().map(Letter::pos).collect();
    let block: Vec<Letter> = twist_block(w).collect();
    for _ in 0..t.unsigned_abs() {
        if t >= 0 {
            letters.extend_from_slice(&block);
        } else {
            letters.extend(block.iter().rev().map(|l| l.inverse()));
        }
    }
    let word = BraidWord::new(w, letters)?;
    let family = BraidFamily {
        word,
        one_bridge: Some((w, b as usize, t)),
        mirrored: false,
        overrides,
        declared_threshold,
    };
    braid_pattern_from_family(format!("B({w},{b},{t})"), family)
}

/// A pattern given by an arbitrary braid word. Only `overrides` supply
/// L-space information; sign-definite words contribute their genus.
pub fn braid_pattern(
    name: impl Into<String>,
    word: BraidWord,
    overrides: BTreeMap<BigInt, KnotFacts>,
    declared_threshold: Option<BigInt>,
) -> Result<PatternFacts, PatternError> {
    let family = BraidFamily {
        word,
        one_bridge: None,
        mirrored: false,
        overrides,
        declared_threshold,
    };
    braid_pattern_from_family(name.into(), family)
}

pub fn table_pattern(
    name: impl Into<String>,
    winding: impl Into<BigInt>,
    genus_s3: impl Into<BigInt>,
    has_disk: bool,
    table: TableFamily,
) -> Result<PatternFacts, PatternError> {
    let threshold = table.neg_threshold.clone();
    let p = validate_pattern(PatternFacts {
        name: name.into(),
        winding: winding.into(),
        genus_s3: genus_s3.into(),
        has_minimal_meridional_disk: has_disk,
        twist_family: TwistFamily::Table(table),
        neg_lspace_threshold: threshold,
    })?;
    if let TwistFamily::Table(t) = &p.twist_family {
        if let Some(f0) = t.twists.get(&BigInt::zero()) {
            if f0.genus() != &p.genus_s3 {
                return Err(PatternError::Inconsistent(format!(
                    "P(U, 0) has genus {} but genus_s3 is {}",
                    f0.genus(),
                    p.genus_s3
                )));
            }
        }
    }
    Ok(p)
}

/// The mirror pattern `P̄`, with `P̄(U, n)` the mirror of `P(U, −n)`.
pub fn mirror(p: &PatternFacts) -> Result<PatternFacts, PatternError> {
    let name = format!("mirror({})", p.name);
    let flip = |m: &BTreeMap<BigInt, KnotFacts>| -> BTreeMap<BigInt, KnotFacts> {
        m.iter().map(|(n, f)| (-n, f.mirror())).collect()
    };
    match &p.twist_family {
        TwistFamily::Torus { p: tp, q } => torus_pattern(tp.clone(), -q),
        TwistFamily::Braid(b) => {
            let letters = b.word.letters.iter().map(|l| l.inverse()).collect();
            let family = BraidFamily {
                word: BraidWord::new(b.word.strands, letters)?,
                one_bridge: b.one_bridge,
                mirrored: !b.mirrored,
                overrides: flip(&b.overrides),
                declared_threshold: None,
            };
            braid_pattern_from_family(name, family)
        }
        TwistFamily::Table(t) => {
            let table = TableFamily::new(
                flip(&t.twists),
                t.pos_from.as_ref().map(|pf| pf.clone().max(BigInt::zero())),
                t.neg_threshold.clone(),
            )?;
            table_pattern(
                name,
                p.winding.clone(),
                p.genus_s3.clone(),
                p.has_minimal_meridional_disk,
                table,
            )
        }
    }
}

/// Facts about `P(U, n)`, the pattern in the unknotted solid torus after
/// `n` full twists.
pub fn pattern_twisted_facts(p: &PatternFacts, n: &BigInt) -> Result<KnotFacts, PatternError> {
    let facts = match &p.twist_family {
        TwistFamily::Torus { p: tp, q } => torus_knot(tp.clone(), q + n * tp)?,
        TwistFamily::Braid(b) => b.answer(n)?,
        TwistFamily::Table(t) => match t.twists.get(n) {
            Some(f) => f.clone(),
            None => table_tail(p, t, n)?,
        },
    };
    let bound = genus_twist_bound(&p.genus_s3, &p.winding, n);
    if facts.source() != FactSource::TailAssertion && *facts.genus() > bound {
        return Err(PatternError::GenusBoundViolated {
            n: n.clone(),
            genus: facts.genus().clone(),
            bound,
        });
    }
    Ok(facts)
}

/// Tail answers carry the twist bound in place of the unknown genus.
fn table_tail(p: &PatternFacts, t: &TableFamily, n: &BigInt) -> Result<KnotFacts, PatternError> {
    let neg = t.neg_threshold.as_ref().is_some_and(|nt| -n >= *nt);
    let pos = t.pos_from.as_ref().is_some_and(|pf| n >= pf);
    if !neg && !pos {
        return Err(PatternError::UnknownTwist(n.clone()));
    }
    let bound = genus_twist_bound(&p.genus_s3, &p.winding, n);
    Ok(KnotFacts::with_source(
        format!("{}(U,{n}) [tail]", p.name),
        bound,
        [pos, neg, true, false],
        FactSource::TailAssertion,
    )?)
}
