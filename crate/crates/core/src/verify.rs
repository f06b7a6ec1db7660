//! Independent verification: exhaustive small-instance checks of the
//! algebraic identities and structural invariants the engine relies on.
//!
//! Checks recompute everything from public operations and report outcomes;
//! a failing check is a report with a reproduction payload, never an error.
//! All comparisons are exact integer comparisons. Grid generation is
//! deterministic, so a failing instance is reproducible from its descriptor.

use serde::Serialize;

use crate::classical::{mu_star_induced, ordered_cut_pairs};
use crate::decompose::Instance;
use crate::gl::{
    expand_ladder_label, ladder_to_standard, mstar_ladder, mstar_standard_linear,
    twisted_mstar_label, GLPairVirtual, LadderData, MultiSegment,
};
use crate::halfint::HalfInt;
use crate::segment::{ClassicalBase, CuspidalLine, Segment};

/// A finite, deterministically enumerable family of problem instances.
///
/// Endpoint exponents run over the half-odd and integer unit lattices up to
/// `max_exponent`. Selfdual lines pair with each present `alpha` choice;
/// non-selfdual lines pair with the absent choice.
#[derive(Clone, Debug)]
pub struct GridSpec {
    pub max_t: usize,
    pub max_exponent: HalfInt,
    pub alpha_choices: Vec<Option<HalfInt>>,
    pub selfdual_choices: Vec<bool>,
}

impl GridSpec {
    /// The full verification grid: `t <= 3`, doubled endpoints up to 9,
    /// `alpha` absent or in `{0, 1/2, 1, 3/2, 2}`, both line types.
    pub fn full() -> Self {
        GridSpec {
            max_t: 3,
            max_exponent: HalfInt::from_twice(9),
            alpha_choices: vec![
                None,
                Some(HalfInt::ZERO),
                Some(HalfInt::HALF),
                Some(HalfInt::ONE),
                Some(HalfInt::from_twice(3)),
                Some(HalfInt::from_twice(4)),
            ],
            selfdual_choices: vec![true, false],
        }
    }

    fn lattice_values(&self, start: HalfInt) -> Vec<HalfInt> {
        let mut out = Vec::new();
        let mut v = start;
        while v <= self.max_exponent {
            out.push(v);
            v = v + 1;
        }
        out
    }

    /// Every valid ladder with `t <= max_t` over the two unit lattices with
    /// minimal start `1/2` or `1`, in deterministic order.
    pub fn ladders(&self) -> Vec<Vec<(HalfInt, HalfInt)>> {
        let mut out = Vec::new();
        for start in [HalfInt::HALF, HalfInt::ONE] {
            let values = self.lattice_values(start);
            for t in 1..=self.max_t {
                enumerate_ladders(&values, t, &mut Vec::new(), &mut out);
            }
        }
        out
    }

    /// The full instance grid, in deterministic order.
    pub fn instances(&self) -> Vec<Instance> {
        let mut out = Vec::new();
        for pairs in self.ladders() {
            for &selfdual in &self.selfdual_choices {
                for alpha in &self.alpha_choices {
                    if selfdual != alpha.is_some() {
                        continue;
                    }
                    let line = CuspidalLine::new("rho", selfdual);
                    let ladder = LadderData::new(line, pairs.clone()).expect("grid ladder");
                    let base = ClassicalBase::new("sigma", *alpha).expect("grid base");
                    out.push(Instance::new(ladder, base).expect("grid instance"));
                }
            }
        }
        out
    }
}

fn enumerate_ladders(
    values: &[HalfInt],
    t: usize,
    acc: &mut Vec<(HalfInt, HalfInt)>,
    out: &mut Vec<Vec<(HalfInt, HalfInt)>>,
) {
    if acc.len() == t {
        out.push(acc.clone());
        return;
    }
    for &a in values {
        if let Some(&(pa, _)) = acc.last() {
            if a <= pa {
                continue;
            }
        }
        for &b in values {
            if b < a {
                continue;
            }
            if let Some(&(_, pb)) = acc.last() {
                if b <= pb {
                    continue;
                }
            }
            acc.push((a, b));
            enumerate_ladders(values, t, acc, out);
            acc.pop();
        }
    }
}

/// Ladders exercising the Jacquet-expansion oracle: `k <= max_k`, segment
/// lengths up to three twists, starts in the half-odd chain from 1/2 to 7/2.
pub fn oracle_ladders(max_k: usize) -> Vec<LadderData> {
    let line = CuspidalLine::new("rho", true);
    let starts: Vec<HalfInt> = (0..4).map(|n| HalfInt::HALF + n).collect();
    let mut out = Vec::new();
    for k in 1..=max_k.min(3) {
        let mut tuples: Vec<Vec<HalfInt>> = Vec::new();
        choose_increasing(&starts, k, &mut Vec::new(), &mut tuples);
        for xs in tuples {
            let mut stack: Vec<Vec<HalfInt>> = vec![Vec::new()];
            for _ in 0..k {
                let mut next = Vec::new();
                for partial in &stack {
                    for len in 0..=2i64 {
                        let i = partial.len();
                        let y = xs[i] + len;
                        if let Some(&prev) = partial.last() {
                            if y <= prev {
                                continue;
                            }
                        }
                        let mut np = partial.clone();
                        np.push(y);
                        next.push(np);
                    }
                }
                stack = next;
            }
            for ys in stack {
                let pairs: Vec<_> = xs.iter().copied().zip(ys).collect();
                out.push(LadderData::new(line.clone(), pairs).expect("oracle ladder"));
            }
        }
    }
    out
}

fn choose_increasing(
    values: &[HalfInt],
    k: usize,
    acc: &mut Vec<HalfInt>,
    out: &mut Vec<Vec<HalfInt>>,
) {
    if acc.len() == k {
        out.push(acc.clone());
        return;
    }
    for &v in values {
        if let Some(&last) = acc.last() {
            if v <= last {
                continue;
            }
        }
        acc.push(v);
        choose_increasing(values, k, acc, out);
        acc.pop();
    }
}

/// All pairs of single-segment labels with one or two twists, starts with
/// doubled value in `[-4, 4]`, over a selfdual and a non-selfdual line.
pub fn multiplicativity_pairs() -> Vec<(MultiSegment, MultiSegment)> {
    let mut labels = Vec::new();
    for line in [CuspidalLine::new("rho", true), CuspidalLine::new("tau", false)] {
        for twice_x in -4..=4 {
            for len in 0..=1i64 {
                let x = HalfInt::from_twice(twice_x);
                let seg = Segment::new(line.clone(), x, x + len).expect("window segment");
                labels.push(MultiSegment::single(seg));
            }
        }
    }
    let mut out = Vec::new();
    for a in &labels {
        for b in &labels {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

/// Outcome of one check on one instance. The descriptor and detail suffice
/// to reproduce a failure standalone.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub instance: String,
    pub check: String,
    pub pass: bool,
    pub detail: Option<String>,
}

impl CheckReport {
    fn pass(instance: String, check: &str) -> Self {
        CheckReport { instance, check: check.into(), pass: true, detail: None }
    }

    fn fail(instance: String, check: &str, detail: String) -> Self {
        CheckReport { instance, check: check.into(), pass: false, detail: Some(detail) }
    }
}

pub(crate) fn compare_pair_virtuals(
    instance: String,
    check: &str,
    lhs: &GLPairVirtual,
    rhs: &GLPairVirtual,
) -> CheckReport {
    if lhs == rhs {
        return CheckReport::pass(instance, check);
    }
    let mut diffs = Vec::new();
    for (l, r, c) in lhs.terms() {
        let rc = rhs.coeff(l, r);
        if rc != c {
            diffs.push(format!("{l} (x) {r}: {c} vs {rc}"));
        }
    }
    for (l, r, c) in rhs.terms() {
        if lhs.coeff(l, r) == 0 {
            diffs.push(format!("{l} (x) {r}: 0 vs {c}"));
        }
    }
    CheckReport::fail(instance, check, diffs.join("; "))
}

/// Compares the closed-form Jacquet expansion of a ladder against the
/// determinantal route: expand each tensor factor of [`mstar_ladder`] in the
/// standard basis, and independently push [`ladder_to_standard`] through the
/// multiplicative expansion [`mstar_standard`].
pub fn check_mstar_oracle(l: &LadderData) -> CheckReport {
    let name = "mstar_oracle";
    let descriptor = l.to_string();
    let mut lhs = GLPairVirtual::zero();
    for (left, right, coeff) in mstar_ladder(l).terms() {
        let le = match expand_ladder_label(left) {
            Ok(v) => v,
            Err(e) => return CheckReport::fail(descriptor, name, format!("left factor: {e}")),
        };
        let re = match expand_ladder_label(right) {
            Ok(v) => v,
            Err(e) => return CheckReport::fail(descriptor, name, format!("right factor: {e}")),
        };
        lhs.accumulate_tensor(&le, &re, coeff);
    }
    let rhs = mstar_standard_linear(&ladder_to_standard(l));
    compare_pair_virtuals(descriptor, name, &lhs, &rhs)
}

/// Checks `M*(a x b) = M*(a) M*(b)` exactly.
pub fn check_twisted_mstar_multiplicative(a: &MultiSegment, b: &MultiSegment) -> CheckReport {
    let descriptor = format!("a = {a}, b = {b}");
    let lhs = twisted_mstar_label(&a.concat(b));
    let rhs = twisted_mstar_label(a).product(&twisted_mstar_label(b));
    compare_pair_virtuals(descriptor, "twisted_mstar_multiplicative", &lhs, &rhs)
}

/// Describes an instance tersely and reproducibly.
pub fn describe_instance(inst: &Instance) -> String {
    let pairs: Vec<String> = inst
        .ladder()
        .pairs()
        .iter()
        .map(|(a, b)| format!("[{a}, {b}]"))
        .collect();
    let alpha = match inst.alpha() {
        Some(a) => a.to_string(),
        None => "none".into(),
    };
    format!(
        "t={} segments={} selfdual={} alpha={}",
        inst.t(),
        pairs.join(","),
        inst.ladder().line().is_selfdual(),
        alpha
    )
}

/// Runs the full structural audit of a decomposition: composition length,
/// multiplicity one, support conservation, the tempered dichotomy, Langlands
/// validity of every constituent, and the reducibility criterion. Everything
/// is recomputed from public operations.
pub fn check_decomposition(inst: &Instance) -> CheckReport {
    let name = "decomposition";
    let descriptor = describe_instance(inst);
    let d = match inst.decompose() {
        Ok(d) => d,
        Err(e) => return CheckReport::fail(descriptor, name, format!("decompose failed: {e}")),
    };

    // length: one plus the number of segments whose enumerated twists hit alpha
    let m = match inst.alpha() {
        Some(alpha) => (1..=inst.t())
            .filter(|&i| inst.segment(i).support().iter().any(|(_, v)| *v == alpha))
            .count(),
        None => 0,
    };
    if d.len() != m + 1 {
        return CheckReport::fail(
            descriptor,
            name,
            format!("length {} differs from m + 1 = {}", d.len(), m + 1),
        );
    }
    if d.len() != inst.expected_length() {
        return CheckReport::fail(
            descriptor,
            name,
            format!("length {} differs from expected_length", d.len()),
        );
    }

    // multiplicity one
    let labels: Vec<_> = d.labels().collect();
    for i in 0..labels.len() {
        for j in i + 1..labels.len() {
            if labels[i] == labels[j] {
                return CheckReport::fail(
                    descriptor,
                    name,
                    format!("repeated constituent {i} = {j}"),
                );
            }
        }
    }

    // support conservation up to the contragredient flip
    let full = inst.support().abs_normalized();
    for label in &labels {
        let got = label.support().abs_normalized();
        if got != full {
            return CheckReport::fail(
                descriptor,
                name,
                format!("support mismatch: {got:?} vs {full:?}"),
            );
        }
        if label.support().base() != inst.base() {
            return CheckReport::fail(descriptor, name, "base marker mismatch".into());
        }
    }

    // tempered dichotomy: a tempered constituent appears iff alpha > 0 and
    // the starts align, and then exactly once, matching the stated label
    let aligned = match inst.alpha() {
        Some(alpha) => {
            alpha > HalfInt::ZERO
                && (1..=inst.t()).all(|i| {
                    inst.segment(i).x() == alpha - (inst.t() - i) as i64
                })
        }
        None => false,
    };
    let tempered: Vec<_> = labels.iter().filter(|l| l.is_tempered()).collect();
    if aligned != (tempered.len() == 1) || (!aligned && !tempered.is_empty()) {
        return CheckReport::fail(
            descriptor,
            name,
            format!("tempered dichotomy: aligned={aligned}, found {}", tempered.len()),
        );
    }
    match (inst.tempered_subquotient(), tempered.first()) {
        (Some(sp), Some(label)) => {
            if label.tempered().as_strongly_positive() != Some(&sp) {
                return CheckReport::fail(descriptor, name, "tempered label mismatch".into());
            }
        }
        (None, None) => {}
        _ => {
            return CheckReport::fail(
                descriptor,
                name,
                "tempered_subquotient disagrees with the decomposition".into(),
            )
        }
    }

    // Langlands validity: strictly negative e-values, sorted ascending
    for label in &labels {
        let mut prev: Option<HalfInt> = None;
        for s in label.negatives().segments() {
            let e = s.e_value().expect("nonempty");
            if e >= HalfInt::ZERO {
                return CheckReport::fail(
                    descriptor,
                    name,
                    format!("negative segment {s} with e = {e}"),
                );
            }
            if let Some(p) = prev {
                if e < p {
                    return CheckReport::fail(descriptor, name, "negatives out of order".into());
                }
            }
            prev = Some(e);
        }
    }

    // reducibility criterion: exactly one constituent iff no twist reduces
    let reduces = match inst.alpha() {
        Some(alpha) => {
            alpha > HalfInt::ZERO
                && inst
                    .ladder()
                    .to_multisegment()
                    .support()
                    .iter()
                    .any(|(_, v)| *v == alpha)
        }
        None => false,
    };
    if reduces == (d.len() == 1) {
        return CheckReport::fail(
            descriptor,
            name,
            format!("reducibility mismatch: reduces={reduces}, length={}", d.len()),
        );
    }

    // structural-formula coherence: term count matches the cut-pair count
    let terms = mu_star_induced(inst.ladder(), inst.base());
    if terms.len() != ordered_cut_pairs(inst.ladder()).len() {
        return CheckReport::fail(descriptor, name, "mu* term count mismatch".into());
    }

    CheckReport::pass(descriptor, name)
}

/// Runs every check family over the grid: the Jacquet-expansion oracle, the
/// multiplicativity of the twisted operator, and the decomposition audit.
/// Report order is deterministic.
pub fn run_full(grid: &GridSpec) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    for l in oracle_ladders(grid.max_t) {
        reports.push(check_mstar_oracle(&l));
    }
    for (a, b) in multiplicativity_pairs() {
        reports.push(check_twisted_mstar_multiplicative(&a, &b));
    }
    for inst in grid.instances() {
        reports.push(check_decomposition(&inst));
    }
    reports
}
