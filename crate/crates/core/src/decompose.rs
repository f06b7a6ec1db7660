//! Decision procedures for the induced representation `pi_L (x| sigma_c`:
//! reducibility, the tempered constituent, the index combinatorics, the
//! auxiliary constituents `sigma_k` and `pi_k`, and the full
//! semisimplification.
//!
//! Throughout, the inducing ladder has segments `[a_1, b_1], ..., [a_t, b_t]`
//! with `1/2 <= a_1 < ... < a_t` and `b_1 < ... < b_t`, and the classical
//! base carries the reducibility point `alpha` exactly when the line is
//! selfdual. Indices `i`, `k` are one-based to match the standard notation
//! `sigma_k`, `pi_k`.

use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::classical::{sp_normalize, ConstituentLabel, SPLabel, Support, TemperedPart};
use crate::error::{Error, Result};
use crate::gl::{LadderData, MultiSegment};
use crate::halfint::HalfInt;
use crate::segment::{ClassicalBase, Segment};

/// A validated problem instance: the inducing ladder together with the
/// classical base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    ladder: LadderData,
    base: ClassicalBase,
}

impl Instance {
    pub fn new(ladder: LadderData, base: ClassicalBase) -> Result<Self> {
        if ladder.line().is_dual() {
            return Err(Error::InvalidInstance(
                "the inducing line must be a base line, not a contragredient marker".into(),
            ));
        }
        if ladder.pairs()[0].0 < HalfInt::HALF {
            return Err(Error::InvalidInstance(format!(
                "the minimal start exponent must be at least 1/2, got {}",
                ladder.pairs()[0].0
            )));
        }
        match (ladder.line().is_selfdual(), base.alpha()) {
            (true, None) => {
                return Err(Error::InvalidInstance(
                    "a selfdual line requires the reducibility point alpha".into(),
                ))
            }
            (false, Some(_)) => {
                return Err(Error::InvalidInstance(
                    "alpha must be absent when the line is not selfdual".into(),
                ))
            }
            _ => {}
        }
        Ok(Instance { ladder, base })
    }

    pub fn ladder(&self) -> &LadderData {
        &self.ladder
    }

    pub fn base(&self) -> &ClassicalBase {
        &self.base
    }

    /// Number of ladder segments.
    pub fn t(&self) -> usize {
        self.ladder.k()
    }

    pub fn alpha(&self) -> Option<HalfInt> {
        self.base.alpha()
    }

    fn start(&self, i: usize) -> HalfInt {
        self.ladder.pairs()[i - 1].0
    }

    fn end(&self, i: usize) -> HalfInt {
        self.ladder.pairs()[i - 1].1
    }

    /// The i-th ladder segment `[a_i, b_i]`, one-based.
    pub fn segment(&self, i: usize) -> Segment {
        Segment::new(self.ladder.line().clone(), self.start(i), self.end(i))
            .expect("ladder segment")
    }

    /// Cuspidal support of the full induced representation.
    pub fn support(&self) -> Support {
        Support::new(self.ladder.to_multisegment().support(), self.base.clone())
    }

    fn membership(&self, i: usize) -> bool {
        match self.alpha() {
            Some(alpha) => self.segment(i).contains_exponent(alpha),
            None => false,
        }
    }

    /// Whether `a_i = alpha - t + i` for every `i`, the shape that produces
    /// a tempered constituent.
    fn starts_aligned(&self) -> bool {
        match self.alpha() {
            Some(alpha) => {
                let t = self.t();
                (1..=t).all(|i| self.start(i) == alpha - (t - i) as i64)
            }
            None => false,
        }
    }

    /// Whether the induced representation reduces: the line is selfdual with
    /// `alpha > 0`, and `alpha` lies among the twists of some ladder segment.
    pub fn is_reducible(&self) -> bool {
        match self.alpha() {
            Some(alpha) => {
                alpha > HalfInt::ZERO && (1..=self.t()).any(|i| self.membership(i))
            }
            None => false,
        }
    }

    /// The composition length `m + 1`, where `m` counts the segments whose
    /// twists contain `alpha`.
    pub fn expected_length(&self) -> usize {
        let m = (1..=self.t()).filter(|&i| self.membership(i)).count();
        m + 1
    }

    /// The unique tempered constituent, present iff `alpha > 0` and the
    /// starts align as `a_i = alpha - t + i`.
    pub fn tempered_subquotient(&self) -> Option<SPLabel> {
        let alpha = self.alpha()?;
        if alpha <= HalfInt::ZERO || !self.starts_aligned() {
            return None;
        }
        let t = self.t();
        let listed: Vec<Segment> = (1..=t)
            .map(|i| {
                Segment::new(
                    self.ladder.line().clone(),
                    alpha - (t - i) as i64,
                    self.end(i),
                )
                .expect("aligned segment")
            })
            .collect();
        Some(
            sp_normalize(&listed, &self.base)
                .expect("aligned instances normalize to a strongly positive label"),
        )
    }

    /// The minimal and maximal one-based indices whose segment twists contain
    /// `alpha`, or `None` if there are none. Membership holds for every index
    /// in between.
    pub fn membership_range(&self) -> Result<Option<(usize, usize)>> {
        let alpha = self
            .alpha()
            .ok_or_else(|| Error::MissingAlpha("the line is not selfdual".into()))?;
        if alpha <= HalfInt::ZERO {
            return Err(Error::MissingAlpha("alpha must be positive".into()));
        }
        let mut lo = None;
        let mut hi = None;
        for i in 1..=self.t() {
            if self.membership(i) {
                lo.get_or_insert(i);
                hi = Some(i);
            }
        }
        Ok(lo.zip(hi))
    }

    fn require_membership(&self, k: usize) -> Result<HalfInt> {
        let (lo, hi) = self
            .membership_range()?
            .ok_or(Error::IndexOutOfRange { k })?;
        if k < lo || k > hi {
            return Err(Error::IndexOutOfRange { k });
        }
        Ok(self.alpha().expect("membership implies alpha"))
    }

    /// The minimal index `k_m` with `alpha - k + k_m <= b_{k_m}`; the chain
    /// `[alpha - k + i, b_i]` is then valid for every `i` in `[k_m, k]`.
    pub fn sigma_start_index(&self, k: usize) -> Result<usize> {
        let alpha = self.require_membership(k)?;
        for j in 1..=self.t() {
            if alpha - (k as i64) + (j as i64) <= self.end(j) {
                return Ok(j);
            }
        }
        Err(Error::Internal(format!(
            "no admissible chain start for k = {k}"
        )))
    }

    /// The strongly positive label `sigma_k`, defined for `k` in the
    /// membership range: the normalization of the chain
    /// `[alpha - k + i, b_i]`, `i = k_m..k`.
    pub fn sigma_k(&self, k: usize) -> Result<SPLabel> {
        let alpha = self.require_membership(k)?;
        let km = self.sigma_start_index(k)?;
        let listed: Vec<Segment> = (km..=k)
            .map(|i| {
                Segment::new(
                    self.ladder.line().clone(),
                    alpha - (k - i) as i64,
                    self.end(i),
                )
                .expect("chain segment")
            })
            .collect();
        sp_normalize(&listed, &self.base)
    }

    /// The constituent `pi_k` for `k` in the membership range: Langlands data
    /// over `sigma_k` whose negative segments are the contragredients
    /// `[-b_i, -a_i]` outside `[k_m, k]` and the truncated contragredients
    /// `[-alpha + k - i + 1, -a_i]` inside, empties dropped.
    ///
    /// Returns `None` in the degenerate case `k = t` with aligned starts:
    /// every negative segment would be empty and the label collapses onto the
    /// tempered constituent.
    pub fn pi_k(&self, k: usize) -> Result<Option<ConstituentLabel>> {
        let alpha = self.require_membership(k)?;
        let t = self.t();
        if k == t && self.starts_aligned() {
            return Ok(None);
        }
        let km = self.sigma_start_index(k)?;
        let dual_line = self.ladder.line().contragredient();
        let mut ordered = Vec::with_capacity(t);
        for i in (k + 1..=t).rev() {
            ordered.push(self.segment(i).contragredient());
        }
        for i in (km..=k).rev() {
            let x = -alpha + ((k - i) as i64 + 1);
            let y = -self.start(i);
            ordered.push(Segment::new(dual_line.clone(), x, y).expect("truncated segment"));
        }
        for i in (1..=km.saturating_sub(1)).rev() {
            ordered.push(self.segment(i).contragredient());
        }
        let retained: Vec<Segment> = ordered.into_iter().filter(|s| !s.is_empty()).collect();
        let mut prev: Option<HalfInt> = None;
        for s in &retained {
            let e = s.e_value().expect("retained segments are nonempty");
            if e >= HalfInt::ZERO {
                return Err(Error::Internal(format!(
                    "pi_{k} segment {s} has e-value {e} >= 0"
                )));
            }
            if let Some(p) = prev {
                if e <= p {
                    return Err(Error::Internal(format!(
                        "pi_{k} e-values fail to increase: {p} then {e}"
                    )));
                }
            }
            prev = Some(e);
        }
        let sigma = self.sigma_k(k)?;
        let label = ConstituentLabel::new(
            MultiSegment::from_segments(retained),
            TemperedPart::StronglyPositive { label: sigma },
        )?;
        Ok(Some(label))
    }

    /// The Langlands constituent carried by the contragredient of the full
    /// ladder over the bare base; the unique constituent in the irreducible
    /// case.
    fn langlands_full(&self) -> Result<ConstituentLabel> {
        ConstituentLabel::new(
            self.ladder.contragredient().to_multisegment(),
            TemperedPart::Cuspidal { base: self.base.clone() },
        )
    }

    /// The full semisimplification.
    ///
    /// Irreducible instances yield the single Langlands constituent. When
    /// reducible, the constituents are the tempered label (aligned starts
    /// only), the `pi_k` over the admissible range, and the Langlands
    /// constituent, each with multiplicity one. The total count always equals
    /// [`Instance::expected_length`]; a mismatch is an internal error, never
    /// valid output.
    pub fn decompose(&self) -> Result<Decomposition> {
        let mut constituents = Vec::new();
        let case;
        if !self.is_reducible() {
            case = CaseTag::Irreducible;
            constituents.push(Constituent { role: Role::Langlands, label: self.langlands_full()? });
        } else {
            let (i_m, i_max) = self
                .membership_range()?
                .ok_or_else(|| Error::Internal("reducible without membership".into()))?;
            let t = self.t();
            if self.starts_aligned() {
                case = CaseTag::CaseI;
                let sp = self
                    .tempered_subquotient()
                    .ok_or_else(|| Error::Internal("aligned without tempered constituent".into()))?;
                constituents.push(Constituent {
                    role: Role::Tempered,
                    label: ConstituentLabel::tempered_label(TemperedPart::StronglyPositive {
                        label: sp,
                    }),
                });
                for k in i_m..t {
                    let label = self
                        .pi_k(k)?
                        .ok_or_else(|| Error::Internal(format!("pi_{k} degenerated below t")))?;
                    constituents.push(Constituent { role: Role::Pi { k }, label });
                }
            } else {
                case = CaseTag::CaseII;
                for k in i_m..=i_max {
                    let label = self
                        .pi_k(k)?
                        .ok_or_else(|| Error::Internal(format!("pi_{k} degenerated unexpectedly")))?;
                    constituents.push(Constituent { role: Role::Pi { k }, label });
                }
            }
            constituents.push(Constituent { role: Role::Langlands, label: self.langlands_full()? });
        }
        let expected = self.expected_length();
        if constituents.len() != expected {
            return Err(Error::Internal(format!(
                "assembled {} constituents, expected {expected}",
                constituents.len()
            )));
        }
        for i in 0..constituents.len() {
            for j in i + 1..constituents.len() {
                if constituents[i].label == constituents[j].label {
                    return Err(Error::Internal(format!(
                        "constituents {i} and {j} coincide, violating multiplicity one"
                    )));
                }
            }
        }
        Ok(Decomposition { case, constituents, expected_length: expected })
    }
}

/// Which branch of the semisimplification applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    Irreducible,
    CaseI,
    CaseII,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Irreducible => "irreducible",
            CaseTag::CaseI => "case_i",
            CaseTag::CaseII => "case_ii",
        }
    }
}

/// Provenance of a constituent within the decomposition; drives the
/// canonical output order and the text rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// The tempered constituent (aligned starts only).
    Tempered,
    /// The constituent `pi_k`.
    Pi { k: usize },
    /// The Langlands constituent over the bare base.
    Langlands,
}

/// One row of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub role: Role,
    pub label: ConstituentLabel,
}

/// The semisimplification of an instance, in canonical order: the tempered
/// constituent first, then `pi_k` by ascending `k`, then the Langlands
/// constituent. All multiplicities are one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    case: CaseTag,
    constituents: Vec<Constituent>,
    expected_length: usize,
}

impl Decomposition {
    pub fn case(&self) -> CaseTag {
        self.case
    }

    pub fn constituents(&self) -> &[Constituent] {
        &self.constituents
    }

    pub fn labels(&self) -> impl Iterator<Item = &ConstituentLabel> {
        self.constituents.iter().map(|c| &c.label)
    }

    pub fn len(&self) -> usize {
        self.constituents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constituents.is_empty()
    }

    pub fn expected_length(&self) -> usize {
        self.expected_length
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Labels<'a>(&'a [Constituent]);
        impl Serialize for Labels<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
                for c in self.0 {
                    seq.serialize_element(&c.label)?;
                }
                seq.end()
            }
        }
        let mut st = serializer.serialize_struct("Decomposition", 4)?;
        st.serialize_field("case", self.case.as_str())?;
        st.serialize_field("constituents", &Labels(&self.constituents))?;
        st.serialize_field("length", &self.constituents.len())?;
        st.serialize_field("expected_length", &self.expected_length)?;
        st.end()
    }
}
