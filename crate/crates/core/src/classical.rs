//! The classical-group side: strongly positive labels in canonical padded
//! form, Langlands constituent labels, and the structural-formula expansion
//! of the Jacquet modules of an induced representation `pi (x| sigma_c`.
//!
//! The structural formula `mu*(pi (x| sigma) = M*(pi) (x| mu*(sigma)`
//! specializes, for a ladder `pi` and cuspidal `sigma_c`, to one term per
//! componentwise-ordered pair of admissible cut tuples `(c, d)`:
//!
//! ```text
//!   L(delta([-c_k, -x_k])~, ..., delta([-c_1, -x_1])~)
//!     x L(delta([d_1+1, y_1]), ..., delta([d_k+1, y_k]))
//!     (x) L(delta([c_1+1, d_1]), ..., delta([c_k+1, d_k])) (x| sigma_c
//! ```
//!
//! with `~` marking the contragredient line and empty segments dropped.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gl::{LadderData, MultiSegment};
use crate::halfint::HalfInt;
use crate::segment::{ClassicalBase, CuspidalLine, Segment};

/// Canonical parametrization of a strongly positive representation over a
/// cuspidal base: a padded tuple of `r = ceil(alpha)` segments
/// `[alpha - r + i, x_i]`, `i = 1..r`, with `-1/2 <= x_1 < ... < x_r` and
/// `x_i - alpha` integral. Empty slots are stored explicitly with
/// `x_i = alpha - r + i - 1`, so label equality is syntactic; display forms
/// drop the empties.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SPLabel {
    base: ClassicalBase,
    padded: Vec<Segment>,
}

impl SPLabel {
    pub fn base(&self) -> &ClassicalBase {
        &self.base
    }

    /// The reducibility point; always present on a strongly positive label.
    pub fn alpha(&self) -> HalfInt {
        self.base.alpha().expect("strongly positive labels carry alpha")
    }

    /// The full padded tuple, empties included.
    pub fn padded(&self) -> &[Segment] {
        &self.padded
    }

    /// The nonempty slots, in slot order.
    pub fn listed(&self) -> impl Iterator<Item = &Segment> {
        self.padded.iter().filter(|s| !s.is_empty())
    }

    pub fn rank(&self) -> usize {
        self.padded.len()
    }

    pub fn line(&self) -> &CuspidalLine {
        self.padded[0].line()
    }

    /// Multiset of twists of the nonempty slots, sorted.
    pub fn support(&self) -> Vec<(CuspidalLine, HalfInt)> {
        let mut out: Vec<_> = self.listed().flat_map(Segment::support).collect();
        out.sort();
        out
    }
}

/// Validates and pads a list of segments into the canonical strongly
/// positive form over `base`.
///
/// The listed segments must be nonempty, lie on the selfdual line, and have
/// starts `alpha - t + 1, ..., alpha` in unit steps with strictly increasing
/// ends. Padding fills the remaining `r - t` lower slots with empties.
pub fn sp_normalize(listed: &[Segment], base: &ClassicalBase) -> Result<SPLabel> {
    let alpha = base
        .alpha()
        .ok_or_else(|| Error::MissingAlpha("strongly positive labels need a reducibility point".into()))?;
    if alpha <= HalfInt::ZERO {
        return Err(Error::NotStronglyPositive(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if listed.is_empty() {
        return Err(Error::NotStronglyPositive("at least one segment is required".into()));
    }
    let line = listed[0].line().clone();
    if !line.is_selfdual() {
        return Err(Error::NotStronglyPositive(format!(
            "the line {line} is not selfdual"
        )));
    }
    let t = listed.len();
    let r = alpha.ceil();
    if (t as i64) > r {
        return Err(Error::NotStronglyPositive(format!(
            "{t} segments exceed the rank ceil(alpha) = {r}"
        )));
    }
    let r = r as usize;
    for (i, s) in listed.iter().enumerate() {
        if s.line() != &line {
            return Err(Error::NotStronglyPositive(
                "segments must lie on a single line".into(),
            ));
        }
        if s.is_empty() {
            return Err(Error::NotStronglyPositive(format!(
                "listed segment {s} is empty"
            )));
        }
        let expected_start = alpha - (t - 1 - i) as i64;
        if s.x() != expected_start {
            return Err(Error::NotStronglyPositive(format!(
                "segment {} must start at {expected_start} to end the chain at alpha = {alpha}",
                s
            )));
        }
        if i > 0 && s.y() <= listed[i - 1].y() {
            return Err(Error::NotStronglyPositive(format!(
                "ends must strictly increase, got {} then {}",
                listed[i - 1].y(),
                s.y()
            )));
        }
    }
    let mut padded = Vec::with_capacity(r);
    for i in 0..r - t {
        let start = alpha - (r - 1 - i) as i64;
        padded.push(Segment::new(line.clone(), start, start - 1).expect("empty slot"));
    }
    padded.extend(listed.iter().cloned());
    // canonical chain over all slot ends, empties included
    let ends: Vec<HalfInt> = padded.iter().map(Segment::y).collect();
    if ends[0] < HalfInt::from_twice(-1) || ends.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::NotStronglyPositive(format!(
            "padded ends {ends:?} violate -1/2 <= x_1 < ... < x_r"
        )));
    }
    Ok(SPLabel { base: base.clone(), padded })
}

/// The tempered datum of a constituent: either the bare cuspidal base or a
/// strongly positive label over it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TemperedPart {
    Cuspidal { base: ClassicalBase },
    StronglyPositive { label: SPLabel },
}

impl TemperedPart {
    pub fn base(&self) -> &ClassicalBase {
        match self {
            TemperedPart::Cuspidal { base } => base,
            TemperedPart::StronglyPositive { label } => label.base(),
        }
    }

    pub fn as_strongly_positive(&self) -> Option<&SPLabel> {
        match self {
            TemperedPart::Cuspidal { .. } => None,
            TemperedPart::StronglyPositive { label } => Some(label),
        }
    }
}

/// An irreducible constituent of the induced representation: Langlands data
/// `L(delta_1, ..., delta_l; tau)` with every e-value strictly negative and
/// `tau` tempered. A tempered constituent has no negative segments.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstituentLabel {
    negatives: MultiSegment,
    tempered: TemperedPart,
}

impl ConstituentLabel {
    pub fn new(negatives: MultiSegment, tempered: TemperedPart) -> Result<Self> {
        for s in negatives.segments() {
            let e = s.e_value().expect("multisegments store no empty segments");
            if e >= HalfInt::ZERO {
                return Err(Error::InvalidConstituent(format!(
                    "segment {s} has e-value {e} >= 0"
                )));
            }
        }
        Ok(ConstituentLabel { negatives, tempered })
    }

    pub fn tempered_label(tempered: TemperedPart) -> Self {
        ConstituentLabel { negatives: MultiSegment::unit(), tempered }
    }

    pub fn negatives(&self) -> &MultiSegment {
        &self.negatives
    }

    pub fn tempered(&self) -> &TemperedPart {
        &self.tempered
    }

    pub fn is_tempered(&self) -> bool {
        self.negatives.is_unit()
    }

    pub fn base(&self) -> &ClassicalBase {
        self.tempered.base()
    }

    /// Cuspidal support: the twists of the negative segments, the twists of
    /// the strongly positive part, and the base marker.
    pub fn support(&self) -> Support {
        let mut exponents = self.negatives.support();
        if let Some(sp) = self.tempered.as_strongly_positive() {
            exponents.extend(sp.support());
        }
        Support::new(exponents, self.base().clone())
    }
}

/// A cuspidal-support multiset: twists on their lines plus one marker for
/// the classical base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    exponents: Vec<(CuspidalLine, HalfInt)>,
    base: ClassicalBase,
}

impl Support {
    pub fn new(mut exponents: Vec<(CuspidalLine, HalfInt)>, base: ClassicalBase) -> Self {
        exponents.sort();
        Support { exponents, base }
    }

    pub fn exponents(&self) -> &[(CuspidalLine, HalfInt)] {
        &self.exponents
    }

    pub fn base(&self) -> &ClassicalBase {
        &self.base
    }

    /// The multiset with each entry replaced by the canonical representative
    /// of its orbit under the contragredient flip `(line, v) ~ (line~, -v)`:
    /// negative twists move to the contragredient line with positive
    /// exponent, and a zero twist sheds the dual marker. On a selfdual line
    /// this identifies `nu^x` with `nu^{-x}`.
    pub fn abs_normalized(&self) -> Vec<(CuspidalLine, HalfInt)> {
        let mut out: Vec<_> = self
            .exponents
            .iter()
            .map(|(line, v)| {
                if *v < HalfInt::ZERO || (*v == HalfInt::ZERO && line.is_dual()) {
                    (line.contragredient(), -*v)
                } else {
                    (line.clone(), *v)
                }
            })
            .collect();
        out.sort();
        out
    }
}

/// All componentwise-ordered pairs `(c, d)` of admissible cut tuples,
/// enumerated lexicographically in `(c, d)`.
pub fn ordered_cut_pairs(l: &LadderData) -> Vec<(Vec<HalfInt>, Vec<HalfInt>)> {
    let cuts = l.admissible_cuts();
    let mut out = Vec::new();
    for c in &cuts {
        for d in &cuts {
            if c.iter().zip(d).all(|(ci, di)| ci <= di) {
                out.push((c.clone(), d.clone()));
            }
        }
    }
    out
}

/// One term of the structural-formula expansion, indexed by its cut pair.
///
/// The GL part is the formal product of the contragredient-side and
/// positive-side ladder labels; the classical part is the middle ladder
/// label induced against the base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuStarTerm {
    c: Vec<HalfInt>,
    d: Vec<HalfInt>,
    gl_contragredient: MultiSegment,
    gl_positive: MultiSegment,
    middle: MultiSegment,
    base: ClassicalBase,
}

impl MuStarTerm {
    pub fn c(&self) -> &[HalfInt] {
        &self.c
    }

    pub fn d(&self) -> &[HalfInt] {
        &self.d
    }

    pub fn gl_contragredient(&self) -> &MultiSegment {
        &self.gl_contragredient
    }

    pub fn gl_positive(&self) -> &MultiSegment {
        &self.gl_positive
    }

    pub fn middle(&self) -> &MultiSegment {
        &self.middle
    }

    pub fn base(&self) -> &ClassicalBase {
        &self.base
    }
}

/// Expands the Jacquet modules of the representation induced from the ladder
/// and the cuspidal base: one [`MuStarTerm`] per ordered cut pair, in the
/// order of [`ordered_cut_pairs`].
pub fn mu_star_induced(l: &LadderData, base: &ClassicalBase) -> Vec<MuStarTerm> {
    let line = l.line().clone();
    let dual = line.contragredient();
    ordered_cut_pairs(l)
        .into_iter()
        .map(|(c, d)| {
            let gl_contragredient =
                MultiSegment::from_segments(l.pairs().iter().zip(&c).map(|(&(x, _), &ci)| {
                    Segment::new(dual.clone(), -ci, -x).expect("contragredient cut")
                }));
            let gl_positive =
                MultiSegment::from_segments(l.pairs().iter().zip(&d).map(|(&(_, y), &di)| {
                    Segment::new(line.clone(), di + 1, y).expect("positive cut")
                }));
            let middle = MultiSegment::from_segments(c.iter().zip(&d).map(|(&ci, &di)| {
                Segment::new(line.clone(), ci + 1, di).expect("middle cut")
            }));
            MuStarTerm { c, d, gl_contragredient, gl_positive, middle, base: base.clone() }
        })
        .collect()
}
