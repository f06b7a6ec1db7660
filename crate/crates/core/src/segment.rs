//! Cuspidal-line labels, classical base points, and exponent segments.
//!
//! A segment `[x, y]` on a cuspidal line stands for the set of twists
//! `nu^x rho, nu^{x+1} rho, ..., nu^y rho` and labels the essentially
//! square-integrable representation attached to it. The degenerate case
//! `y = x - 1` is the formal unit; such segments are permitted transiently
//! and normalized away before labels are compared.

use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

/// A cuspidal line label.
///
/// Two lines are equal iff their names and markers agree. The contragredient
/// of a non-selfdual line is a distinct line sharing the same name with the
/// dual marker set; a selfdual line is its own contragredient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspidalLine {
    name: String,
    selfdual: bool,
    dual: bool,
}

impl CuspidalLine {
    /// A base line (dual marker unset).
    pub fn new(name: impl Into<String>, selfdual: bool) -> Self {
        CuspidalLine { name: name.into(), selfdual, dual: false }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_selfdual(&self) -> bool {
        self.selfdual
    }

    /// Whether this is the contragredient of a non-selfdual base line.
    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// The contragredient line; the identity on selfdual lines.
    pub fn contragredient(&self) -> CuspidalLine {
        if self.selfdual {
            self.clone()
        } else {
            CuspidalLine { name: self.name.clone(), selfdual: false, dual: !self.dual }
        }
    }
}

impl fmt::Display for CuspidalLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dual {
            write!(f, "{}~", self.name)
        } else {
            write!(f, "{}", self.name)
        }
    }
}

/// The inducing cuspidal datum on the classical side, together with the
/// reducibility point `alpha` when the associated line is selfdual.
///
/// `alpha` is user-supplied: it is the unique non-negative half-integer at
/// which the rank-one induced representation from the line reduces, and it
/// exists exactly when the line is selfdual. The coupling with a concrete
/// line is validated where both are known.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ClassicalBase {
    name: String,
    alpha: Option<HalfInt>,
}

impl ClassicalBase {
    pub fn new(name: impl Into<String>, alpha: Option<HalfInt>) -> Result<Self> {
        if let Some(a) = alpha {
            if a < HalfInt::ZERO {
                return Err(Error::InvalidBase(format!(
                    "reducibility point alpha must be non-negative, got {a}"
                )));
            }
        }
        Ok(ClassicalBase { name: name.into(), alpha })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alpha(&self) -> Option<HalfInt> {
        self.alpha
    }
}

/// A segment `[x, y]` of twists on a cuspidal line, with `y - x` an integer
/// at least `-1`. The segment is empty (the formal unit) iff `y = x - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    line: CuspidalLine,
    x: HalfInt,
    y: HalfInt,
}

impl Segment {
    pub fn new(line: CuspidalLine, x: HalfInt, y: HalfInt) -> Result<Self> {
        if !x.same_lattice(y) || y.twice() - x.twice() < -2 {
            return Err(Error::InvalidSegment { x, y });
        }
        Ok(Segment { line, x, y })
    }

    pub fn line(&self) -> &CuspidalLine {
        &self.line
    }

    pub fn x(&self) -> HalfInt {
        self.x
    }

    pub fn y(&self) -> HalfInt {
        self.y
    }

    pub fn is_empty(&self) -> bool {
        self.y == self.x - 1
    }

    /// Number of twists in the segment: `y - x + 1`, zero when empty.
    pub fn cardinality(&self) -> i64 {
        (self.y.twice() - self.x.twice()) / 2 + 1
    }

    /// The e-value `(x + y) / 2` of the attached essentially
    /// square-integrable representation.
    pub fn e_value(&self) -> Result<HalfInt> {
        if self.is_empty() {
            return Err(Error::EmptySegment);
        }
        Ok(HalfInt::from_twice((self.x.twice() + self.y.twice()) / 2))
    }

    /// The segment `[-y, -x]` on the contragredient line. Involutive.
    pub fn contragredient(&self) -> Segment {
        Segment { line: self.line.contragredient(), x: -self.y, y: -self.x }
    }

    /// The multiset of twists `{(line, x), (line, x+1), ..., (line, y)}`;
    /// empty for an empty segment.
    pub fn support(&self) -> Vec<(CuspidalLine, HalfInt)> {
        self.x.through(self.y).map(|v| (self.line.clone(), v)).collect()
    }

    /// Whether `alpha` lies among the segment's twists, i.e.
    /// `alpha - x` is a non-negative integer and `alpha <= y`.
    pub fn contains_exponent(&self, alpha: HalfInt) -> bool {
        alpha.same_lattice(self.x) && alpha >= self.x && alpha <= self.y
    }

    /// Key realizing the canonical order: ascending e-value, ties broken by
    /// ascending start, then end, then line.
    fn sort_key(&self) -> (i64, HalfInt, HalfInt, &CuspidalLine) {
        (self.x.twice() + self.y.twice(), self.x, self.y, &self.line)
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "delta([nu^{{{}}}{}, nu^{{{}}}{}])", self.x, self.line, self.y, self.line)
        }
    }
}

impl Serialize for Segment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Segment", 4)?;
        st.serialize_field("line", self.line.name())?;
        st.serialize_field("dual", &self.line.is_dual())?;
        st.serialize_field("x", &self.x)?;
        st.serialize_field("y", &self.y)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(twice: i64) -> HalfInt {
        HalfInt::from_twice(twice)
    }

    fn rho() -> CuspidalLine {
        CuspidalLine::new("rho", true)
    }

    fn tau() -> CuspidalLine {
        CuspidalLine::new("tau", false)
    }

    fn seg(line: CuspidalLine, x: i64, y: i64) -> Segment {
        Segment::new(line, h(x), h(y)).unwrap()
    }

    #[test]
    fn rejects_bad_endpoint_differences() {
        assert!(matches!(
            Segment::new(rho(), h(1), h(2)),
            Err(Error::InvalidSegment { .. })
        ));
        assert!(matches!(
            Segment::new(rho(), h(1), h(-3)),
            Err(Error::InvalidSegment { .. })
        ));
        // y = x - 1 is the allowed empty case
        assert!(Segment::new(rho(), h(1), h(-1)).unwrap().is_empty());
    }

    #[test]
    fn e_value_is_the_midpoint() {
        assert_eq!(seg(rho(), 1, 3).e_value().unwrap(), h(2)); // [1/2, 3/2] -> 1
        assert_eq!(seg(rho(), -5, -3).e_value().unwrap(), h(-4)); // [-5/2, -3/2] -> -2
        assert!(matches!(
            seg(rho(), 1, -1).e_value(),
            Err(Error::EmptySegment)
        ));
    }

    #[test]
    fn contragredient_negates_and_flips() {
        let s = seg(rho(), 1, 3); // [1/2, 3/2] on selfdual line
        let c = s.contragredient();
        assert_eq!((c.x(), c.y()), (h(-3), h(-1)));
        assert_eq!(c.line(), &rho());
        assert_eq!(c.contragredient(), s);

        let fixed = seg(rho(), 0, 0);
        assert_eq!(fixed.contragredient(), fixed);

        let t = seg(tau(), 1, 3);
        let tc = t.contragredient();
        assert!(tc.line().is_dual());
        assert_eq!(tc.line().name(), "tau");
        assert_eq!(tc.contragredient(), t);
    }

    #[test]
    fn support_enumerates_the_twists() {
        let s = seg(rho(), 1, 5); // [1/2, 5/2]
        let exps: Vec<_> = s.support().into_iter().map(|(_, v)| v).collect();
        assert_eq!(exps, vec![h(1), h(3), h(5)]);
        assert!(seg(rho(), 1, -1).support().is_empty());
        let single = seg(rho(), 4, 4); // [2, 2]
        assert_eq!(single.support().len(), 1);
        assert_eq!(single.cardinality(), 1);
    }

    #[test]
    fn exponent_membership_matches_support_enumeration() {
        // independent oracle: membership by enumerating the support
        let cases = [
            (h(3), seg(rho(), 1, 3), true),   // 3/2 in [1/2, 3/2]
            (h(2), seg(rho(), 1, 3), false),  // 1 off the lattice of {1/2, 3/2}
            (h(1), seg(rho(), 3, 5), false),  // 1/2 below [3/2, 5/2]
        ];
        for (alpha, s, expect) in cases {
            let by_enumeration = s.support().iter().any(|(_, v)| *v == alpha);
            assert_eq!(by_enumeration, expect);
            assert_eq!(s.contains_exponent(alpha), expect);
        }
    }

    #[test]
    fn canonical_order_is_by_e_value_then_endpoints() {
        let a = seg(rho(), -5, -3); // e = -2
        let b = seg(rho(), -1, -1); // e = -1/2
        let c = seg(rho(), 1, 3); // e = 1
        let d = seg(rho(), 3, 3); // e = 3/2, larger start than [1/2, 5/2]
        let e = seg(rho(), 1, 5); // e = 3/2
        let mut v = vec![d.clone(), c.clone(), a.clone(), e.clone(), b.clone()];
        v.sort();
        assert_eq!(v, vec![a, b, c, e, d]);
    }

    #[test]
    fn segment_json_flattens_the_line() {
        let s = seg(tau(), 1, 3).contragredient();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"line":"tau","dual":true,"x":{"twice":-3},"y":{"twice":-1}}"#
        );
    }
}
