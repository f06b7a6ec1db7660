//! The Grothendieck group of the general-linear tower in the standard basis,
//! the Jacquet operators `m*` and `M*`, ladder data, and the determinantal
//! expansion of a ladder label.
//!
//! Elements of the group are integer combinations of multisegments. A
//! multisegment is read in two ways, depending on context: as a standard
//! module (the product of the essentially square-integrable representations
//! attached to its segments) or as the irreducible Langlands label of that
//! product. The two readings are connected for ladders by
//! [`ladder_to_standard`], a signed permutation expansion that serves as the
//! independent oracle for the closed-form Jacquet expansion [`mstar_ladder`].

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::segment::{CuspidalLine, Segment};

/// A sorted multiset of nonempty segments; the standard-basis label.
///
/// Canonical order: ascending e-value, ties by ascending start then end.
/// The empty multiset denotes the unit representation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct MultiSegment {
    segments: Vec<Segment>,
}

impl MultiSegment {
    /// The unit representation.
    pub fn unit() -> Self {
        MultiSegment { segments: Vec::new() }
    }

    /// Collects the nonempty segments in canonical order. Empty segments are
    /// the formal unit and are dropped.
    pub fn from_segments(segments: impl IntoIterator<Item = Segment>) -> Self {
        let mut segments: Vec<_> = segments.into_iter().filter(|s| !s.is_empty()).collect();
        segments.sort();
        MultiSegment { segments }
    }

    pub fn single(segment: Segment) -> Self {
        Self::from_segments([segment])
    }

    pub fn is_unit(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// Multiplication in the standard basis: multiset union.
    pub fn concat(&self, other: &MultiSegment) -> MultiSegment {
        let mut segments = self.segments.clone();
        segments.extend(other.segments.iter().cloned());
        segments.sort();
        MultiSegment { segments }
    }

    /// Segment-wise contragredient.
    pub fn contragredient(&self) -> MultiSegment {
        Self::from_segments(self.segments.iter().map(Segment::contragredient))
    }

    /// Multiset union of the segment supports, sorted.
    pub fn support(&self) -> Vec<(CuspidalLine, HalfInt)> {
        let mut out: Vec<_> = self.segments.iter().flat_map(Segment::support).collect();
        out.sort();
        out
    }
}

impl fmt::Display for MultiSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.segments.iter().map(Segment::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

impl Serialize for MultiSegment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.segments.len()))?;
        for s in &self.segments {
            seq.serialize_element(s)?;
        }
        seq.end()
    }
}

/// An integer combination of multisegment labels. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GLVirtual {
    terms: BTreeMap<MultiSegment, i64>,
}

impl GLVirtual {
    pub fn zero() -> Self {
        GLVirtual::default()
    }

    pub fn unit() -> Self {
        Self::from_label(MultiSegment::unit())
    }

    pub fn from_label(label: MultiSegment) -> Self {
        let mut v = Self::zero();
        v.add_term(label, 1);
        v
    }

    pub fn add_term(&mut self, label: MultiSegment, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(label) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    /// Adds `scale` times `other`.
    pub fn accumulate(&mut self, other: &GLVirtual, scale: i64) {
        for (label, coeff) in &other.terms {
            self.add_term(label.clone(), coeff * scale);
        }
    }

    pub fn coeff(&self, label: &MultiSegment) -> i64 {
        self.terms.get(label).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiSegment, i64)> {
        self.terms.iter().map(|(l, &c)| (l, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Ring multiplication in the standard basis: concatenation of labels,
    /// extended bilinearly.
    pub fn product(&self, other: &GLVirtual) -> GLVirtual {
        let mut out = Self::zero();
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                out.add_term(l1.concat(l2), c1 * c2);
            }
        }
        out
    }
}

impl Serialize for GLVirtual {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            label: &'a MultiSegment,
            coeff: i64,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (label, &coeff) in &self.terms {
            seq.serialize_element(&Term { label, coeff })?;
        }
        seq.end()
    }
}

/// An integer combination of pairs of labels, the target of the Jacquet
/// operators. Zero coefficients are never stored.
///
/// Depending on the producing operation the labels are standard-basis labels
/// ([`mstar_standard`], [`twisted_mstar`]) or irreducible ladder labels
/// ([`mstar_ladder`]); the two readings are never mixed in one value.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GLPairVirtual {
    terms: BTreeMap<(MultiSegment, MultiSegment), i64>,
}

impl GLPairVirtual {
    pub fn zero() -> Self {
        GLPairVirtual::default()
    }

    /// The element `1 (x) 1`.
    pub fn unit() -> Self {
        let mut v = Self::zero();
        v.add_term(MultiSegment::unit(), MultiSegment::unit(), 1);
        v
    }

    pub fn add_term(&mut self, left: MultiSegment, right: MultiSegment, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry((left, right)) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    /// Adds `scale` times `other`.
    pub fn accumulate(&mut self, other: &GLPairVirtual, scale: i64) {
        for ((l, r), coeff) in &other.terms {
            self.add_term(l.clone(), r.clone(), coeff * scale);
        }
    }

    /// Adds `scale` times the tensor `left (x) right` of two virtual
    /// elements.
    pub fn accumulate_tensor(&mut self, left: &GLVirtual, right: &GLVirtual, scale: i64) {
        for (l, cl) in left.terms() {
            for (r, cr) in right.terms() {
                self.add_term(l.clone(), r.clone(), cl * cr * scale);
            }
        }
    }

    /// Componentwise product: concatenation on both tensor factors, extended
    /// bilinearly.
    pub fn product(&self, other: &GLPairVirtual) -> GLPairVirtual {
        let mut out = Self::zero();
        for ((l1, r1), c1) in &self.terms {
            for ((l2, r2), c2) in &other.terms {
                out.add_term(l1.concat(l2), r1.concat(r2), c1 * c2);
            }
        }
        out
    }

    pub fn coeff(&self, left: &MultiSegment, right: &MultiSegment) -> i64 {
        self.terms.get(&(left.clone(), right.clone())).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiSegment, &MultiSegment, i64)> {
        self.terms.iter().map(|((l, r), &c)| (l, r, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of all coefficients.
    pub fn mass(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Serialize for GLPairVirtual {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            left: &'a MultiSegment,
            right: &'a MultiSegment,
            coeff: i64,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for ((left, right), &coeff) in &self.terms {
            seq.serialize_element(&Term { left, right, coeff })?;
        }
        seq.end()
    }
}

/// The Jacquet expansion of a single segment:
/// `sum over c in [x-1, y] of delta([c+1, y]) (x) delta([x, c])`,
/// with empty factors normalized to the unit. Exactly `y - x + 2` terms,
/// all with coefficient one.
pub fn mstar_segment(s: &Segment) -> GLPairVirtual {
    let mut out = GLPairVirtual::zero();
    for c in (s.x() - 1).through(s.y()) {
        let left = Segment::new(s.line().clone(), c + 1, s.y()).expect("upper cut");
        let right = Segment::new(s.line().clone(), s.x(), c).expect("lower cut");
        out.add_term(
            MultiSegment::from_segments([left]),
            MultiSegment::from_segments([right]),
            1,
        );
    }
    out
}

/// The Jacquet expansion of a standard label: `m*` is multiplicative, so
/// this is the product of the segment expansions under componentwise
/// concatenation. All coefficients are non-negative.
pub fn mstar_standard(m: &MultiSegment) -> GLPairVirtual {
    m.segments()
        .iter()
        .fold(GLPairVirtual::unit(), |acc, s| acc.product(&mstar_segment(s)))
}

/// Linear extension of [`mstar_standard`].
pub fn mstar_standard_linear(v: &GLVirtual) -> GLPairVirtual {
    let mut out = GLPairVirtual::zero();
    for (label, coeff) in v.terms() {
        out.accumulate(&mstar_standard(label), coeff);
    }
    out
}

/// The twisted double-coset operator on a standard label:
/// apply `m*`, swap the tensor factors, apply the contragredient to the new
/// left factor and `m*` to the right factor, then multiply the left pair.
/// Multiplicative on products of standard labels.
pub fn twisted_mstar_label(m: &MultiSegment) -> GLPairVirtual {
    let mut out = GLPairVirtual::zero();
    for (f1, f2, c) in mstar_standard(m).terms() {
        let f2_contra = f2.contragredient();
        for (g1, g2, c2) in mstar_standard(f1).terms() {
            out.add_term(f2_contra.concat(g1), g2.clone(), c * c2);
        }
    }
    out
}

/// Linear extension of [`twisted_mstar_label`].
pub fn twisted_mstar(v: &GLVirtual) -> GLPairVirtual {
    let mut out = GLPairVirtual::zero();
    for (label, coeff) in v.terms() {
        out.accumulate(&twisted_mstar_label(label), coeff);
    }
    out
}

/// The defining data of a ladder representation: segments
/// `[x_1, y_1], ..., [x_k, y_k]` on one cuspidal line with
/// `x_1 < ... < x_k`, `y_1 < ... < y_k`, `x_i <= y_i`, and all starts on a
/// common unit lattice.
///
/// The common-lattice requirement `x_i - x_1` integral is enforced here: the
/// admissible-cut conditions below only interact along integral steps, so
/// segments off the lattice would never couple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LadderData {
    line: CuspidalLine,
    pairs: Vec<(HalfInt, HalfInt)>,
}

impl LadderData {
    pub fn new(line: CuspidalLine, pairs: Vec<(HalfInt, HalfInt)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidLadder("at least one segment is required".into()));
        }
        let (x1, _) = pairs[0];
        for (i, &(x, y)) in pairs.iter().enumerate() {
            if !x.same_lattice(x1) {
                return Err(Error::InvalidLadder(format!(
                    "start {x} is off the unit lattice of the first start {x1}"
                )));
            }
            if !x.same_lattice(y) || y < x {
                return Err(Error::InvalidLadder(format!(
                    "segment [{x}, {y}] must have a non-negative integer length"
                )));
            }
            if i > 0 {
                let (px, py) = pairs[i - 1];
                if x <= px {
                    return Err(Error::InvalidLadder(format!(
                        "starts must strictly increase, got {px} then {x}"
                    )));
                }
                if y <= py {
                    return Err(Error::InvalidLadder(format!(
                        "ends must strictly increase, got {py} then {y}"
                    )));
                }
            }
        }
        Ok(LadderData { line, pairs })
    }

    pub fn k(&self) -> usize {
        self.pairs.len()
    }

    pub fn line(&self) -> &CuspidalLine {
        &self.line
    }

    pub fn pairs(&self) -> &[(HalfInt, HalfInt)] {
        &self.pairs
    }

    /// The Langlands label of the ladder as a multisegment.
    pub fn to_multisegment(&self) -> MultiSegment {
        MultiSegment::from_segments(
            self.pairs
                .iter()
                .map(|&(x, y)| Segment::new(self.line.clone(), x, y).expect("ladder segment")),
        )
    }

    /// Reads a multisegment back as ladder data. Fails unless the segments
    /// are nonempty, lie on one line, and have strictly increasing starts and
    /// ends on a common lattice.
    pub fn from_label(m: &MultiSegment) -> Result<Self> {
        let segments = m.segments();
        if segments.is_empty() {
            return Err(Error::NotLadderLabel("the unit label is not a ladder".into()));
        }
        let line = segments[0].line().clone();
        if segments.iter().any(|s| s.line() != &line) {
            return Err(Error::NotLadderLabel(format!(
                "segments of {m} do not lie on a single cuspidal line"
            )));
        }
        let mut pairs: Vec<_> = segments.iter().map(|s| (s.x(), s.y())).collect();
        pairs.sort();
        Self::new(line, pairs).map_err(|e| Error::NotLadderLabel(format!("{m}: {e}")))
    }

    /// The ladder with segments `[-y_k, -x_k], ..., [-y_1, -x_1]` on the
    /// contragredient line. Involutive.
    pub fn contragredient(&self) -> LadderData {
        let line = self.line.contragredient();
        let pairs = self.pairs.iter().rev().map(|&(x, y)| (-y, -x)).collect();
        LadderData::new(line, pairs).expect("contragredient preserves the ladder conditions")
    }

    /// All admissible cut tuples `(c_1, ..., c_k)`: strictly increasing, with
    /// `x_i - 1 <= c_i <= y_i` and `c_i - x_i` integral. Lexicographic order.
    pub fn admissible_cuts(&self) -> Vec<Vec<HalfInt>> {
        let mut out = Vec::new();
        let mut acc = Vec::with_capacity(self.k());
        self.cuts_rec(0, None, &mut acc, &mut out);
        out
    }

    fn cuts_rec(
        &self,
        i: usize,
        prev: Option<HalfInt>,
        acc: &mut Vec<HalfInt>,
        out: &mut Vec<Vec<HalfInt>>,
    ) {
        if i == self.k() {
            out.push(acc.clone());
            return;
        }
        let (x, y) = self.pairs[i];
        let mut lo = x - 1;
        if let Some(p) = prev {
            // common lattice, so strictly greater means at least one more
            if p + 1 > lo {
                lo = p + 1;
            }
        }
        for c in lo.through(y) {
            acc.push(c);
            self.cuts_rec(i + 1, Some(c), acc, out);
            acc.pop();
        }
    }
}

impl fmt::Display for LadderData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(x, y)| format!("[{x}, {y}]"))
            .collect();
        write!(f, "{} on {}", parts.join(", "), self.line)
    }
}

impl Serialize for LadderData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        #[derive(Serialize)]
        struct Pair {
            x: HalfInt,
            y: HalfInt,
        }
        let pairs: Vec<Pair> = self.pairs.iter().map(|&(x, y)| Pair { x, y }).collect();
        let mut st = serializer.serialize_struct("LadderData", 3)?;
        st.serialize_field("line", self.line.name())?;
        st.serialize_field("dual", &self.line.is_dual())?;
        st.serialize_field("pairs", &pairs)?;
        st.end()
    }
}

/// The closed-form Jacquet expansion of a ladder: one term
/// `L(delta([c_1+1, y_1]), ...) (x) L(delta([x_1, c_1]), ...)` per admissible
/// cut tuple, with empty segments dropped. Both tensor factors are again
/// ladder labels and every coefficient is one.
pub fn mstar_ladder(l: &LadderData) -> GLPairVirtual {
    let mut out = GLPairVirtual::zero();
    let line = l.line();
    for cuts in l.admissible_cuts() {
        let left = MultiSegment::from_segments(l.pairs().iter().zip(&cuts).map(|(&(_, y), &c)| {
            Segment::new(line.clone(), c + 1, y).expect("upper cut")
        }));
        let right = MultiSegment::from_segments(l.pairs().iter().zip(&cuts).map(|(&(x, _), &c)| {
            Segment::new(line.clone(), x, c).expect("lower cut")
        }));
        out.add_term(left, right, 1);
    }
    out
}

/// Expands a ladder label in the standard basis:
/// `sum over permutations w of sign(w) * {delta([x_i, y_w(i)])}`,
/// omitting permutation terms that pair an end below `start - 1` and
/// dropping empty factors. Coefficients lie in `{-1, 0, +1}` after
/// collection; the identity permutation always contributes `+1`.
///
/// This expansion never consults the cut enumeration, which makes it an
/// independent check of [`mstar_ladder`].
pub fn ladder_to_standard(l: &LadderData) -> GLVirtual {
    let k = l.k();
    let mut out = GLVirtual::zero();
    let mut image = Vec::with_capacity(k);
    let mut used = vec![false; k];
    permute_rec(l, &mut image, &mut used, &mut out);
    out
}

fn permute_rec(l: &LadderData, image: &mut Vec<usize>, used: &mut [bool], out: &mut GLVirtual) {
    let k = l.k();
    let i = image.len();
    if i == k {
        let segments: Vec<Segment> = image
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                let x = l.pairs()[i].0;
                let y = l.pairs()[j].1;
                Segment::new(l.line().clone(), x, y).expect("checked length")
            })
            .collect();
        out.add_term(MultiSegment::from_segments(segments), sign_of(image));
        return;
    }
    for j in 0..k {
        if used[j] {
            continue;
        }
        let x = l.pairs()[i].0;
        let y = l.pairs()[j].1;
        // skip assignments with y - x < -1; they annihilate the whole term
        if y.twice() - x.twice() < -2 {
            continue;
        }
        used[j] = true;
        image.push(j);
        permute_rec(l, image, used, out);
        image.pop();
        used[j] = false;
    }
}

fn sign_of(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Expands a label produced by [`mstar_ladder`] in the standard basis: the
/// unit stays the unit, a ladder label goes through [`ladder_to_standard`].
pub fn expand_ladder_label(m: &MultiSegment) -> Result<GLVirtual> {
    if m.is_unit() {
        return Ok(GLVirtual::unit());
    }
    Ok(ladder_to_standard(&LadderData::from_label(m)?))
}
