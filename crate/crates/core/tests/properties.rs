//! Property tests for the algebraic invariants, driven by randomized small
//! instances. Everything here goes through the public API only.

use proptest::prelude::*;

use jacquet_core::verify::{check_decomposition, check_mstar_oracle, check_twisted_mstar_multiplicative};
use jacquet_core::{
    ladder_to_standard, mstar_ladder, mstar_standard, mu_star_induced, ordered_cut_pairs,
    sp_normalize, ClassicalBase, CuspidalLine, HalfInt, Instance, LadderData, MultiSegment,
    Segment, Support,
};

fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

fn arb_line() -> impl Strategy<Value = CuspidalLine> {
    prop_oneof![
        Just(CuspidalLine::new("rho", true)),
        Just(CuspidalLine::new("tau", false)),
        Just(CuspidalLine::new("tau", false).contragredient()),
    ]
}

fn arb_segment() -> impl Strategy<Value = Segment> {
    (arb_line(), -6i64..=6, 0i64..=2).prop_map(|(line, tx, len)| {
        let x = h(tx);
        Segment::new(line, x, x + len).expect("generated segment")
    })
}

fn arb_multisegment(max_len: usize) -> impl Strategy<Value = MultiSegment> {
    prop::collection::vec(arb_segment(), 0..=max_len).prop_map(MultiSegment::from_segments)
}

/// Ladder with `k <= 3`, short segments, on a selfdual or non-selfdual line.
fn arb_ladder() -> impl Strategy<Value = LadderData> {
    (
        arb_line(),
        -3i64..=3,
        prop::bool::ANY,
        prop::collection::vec((0i64..=1, 0i64..=2), 1..=3),
    )
        .prop_map(|(line, base, half_odd, steps)| {
            let mut pairs = Vec::new();
            let mut x = HalfInt::from_twice(2 * base + i64::from(half_odd));
            let mut prev_y: Option<HalfInt> = None;
            for (gap, len) in steps {
                x = x + gap;
                let mut y = x + len;
                if let Some(p) = prev_y {
                    if y <= p {
                        y = p + 1;
                    }
                }
                pairs.push((x, y));
                prev_y = Some(y);
                x = x + 1;
            }
            LadderData::new(line, pairs).expect("generated ladder")
        })
}

/// Instance with minimal start at least 1/2 and a coupled base.
fn arb_instance() -> impl Strategy<Value = Instance> {
    (
        prop::bool::ANY,
        1i64..=4,
        prop::collection::vec((0i64..=1, 0i64..=2), 1..=3),
        0i64..=5,
    )
        .prop_map(|(selfdual, start, steps, alpha_twice)| {
            let line = CuspidalLine::new("rho", selfdual);
            let mut pairs = Vec::new();
            let mut x = h(start);
            let mut prev_y: Option<HalfInt> = None;
            for (gap, len) in steps {
                x = x + gap;
                let mut y = x + len;
                if let Some(p) = prev_y {
                    if y <= p {
                        y = p + 1;
                    }
                }
                pairs.push((x, y));
                prev_y = Some(y);
                x = x + 1;
            }
            let ladder = LadderData::new(line, pairs).expect("generated ladder");
            let alpha = selfdual.then(|| h(alpha_twice));
            let base = ClassicalBase::new("sigma", alpha).expect("generated base");
            Instance::new(ladder, base).expect("generated instance")
        })
}

proptest! {
    #[test]
    fn segment_support_has_the_stated_cardinality(s in arb_segment()) {
        prop_assert_eq!(s.support().len() as i64, s.cardinality());
    }

    #[test]
    fn segment_contragredient_is_an_involution(s in arb_segment()) {
        prop_assert_eq!(s.contragredient().contragredient(), s);
    }

    #[test]
    fn exponent_membership_equals_support_membership(s in arb_segment(), t in -8i64..=8) {
        let alpha = h(t);
        let enumerated = s.support().iter().any(|(_, v)| *v == alpha);
        prop_assert_eq!(s.contains_exponent(alpha), enumerated);
    }

    #[test]
    fn mstar_mass_is_the_product_of_cut_counts(m in arb_multisegment(3)) {
        let expansion = mstar_standard(&m);
        let expected: i64 = m.segments().iter().map(|s| s.cardinality() + 1).product();
        prop_assert_eq!(expansion.mass(), expected);
        for (_, _, coeff) in expansion.terms() {
            prop_assert!(coeff > 0);
        }
    }

    #[test]
    fn mstar_terms_partition_the_support(m in arb_multisegment(3)) {
        let full = m.support();
        for (left, right, _) in mstar_standard(&m).terms() {
            let mut combined = left.support();
            combined.extend(right.support());
            combined.sort();
            prop_assert_eq!(&combined, &full);
        }
    }

    #[test]
    fn twisted_mstar_is_multiplicative(a in arb_multisegment(2), b in arb_multisegment(2)) {
        let report = check_twisted_mstar_multiplicative(&a, &b);
        prop_assert!(report.pass, "{:?}", report.detail);
    }

    #[test]
    fn ladder_contragredient_is_an_involution(l in arb_ladder()) {
        prop_assert_eq!(l.contragredient().contragredient(), l);
    }

    #[test]
    fn ladder_expansion_terms_are_ladder_labels(l in arb_ladder()) {
        let expansion = mstar_ladder(&l);
        prop_assert_eq!(expansion.len() as usize, l.admissible_cuts().len());
        for (left, right, coeff) in expansion.terms() {
            prop_assert_eq!(coeff, 1);
            for factor in [left, right] {
                if !factor.is_unit() {
                    prop_assert!(LadderData::from_label(factor).is_ok());
                }
            }
        }
    }

    #[test]
    fn ladder_standard_expansion_has_unit_leading_coefficient(l in arb_ladder()) {
        let v = ladder_to_standard(&l);
        prop_assert_eq!(v.coeff(&l.to_multisegment()), 1);
        for (_, coeff) in v.terms() {
            prop_assert!(coeff == 1 || coeff == -1);
        }
    }

    #[test]
    fn jacquet_expansion_matches_the_determinantal_oracle(l in arb_ladder()) {
        let report = check_mstar_oracle(&l);
        prop_assert!(report.pass, "{}: {:?}", report.instance, report.detail);
    }

    #[test]
    fn structural_terms_match_the_cut_pairs(l in arb_ladder(), alpha in 0i64..=4) {
        let base = ClassicalBase::new("sigma", Some(h(alpha))).unwrap();
        let terms = mu_star_induced(&l, &base);
        let pairs = ordered_cut_pairs(&l);
        prop_assert_eq!(terms.len(), pairs.len());
        for (term, (c, d)) in terms.iter().zip(&pairs) {
            prop_assert_eq!(term.c(), &c[..]);
            prop_assert_eq!(term.d(), &d[..]);
            for (ci, di) in c.iter().zip(d) {
                prop_assert!(ci <= di);
            }
        }
    }

    #[test]
    fn structural_terms_conserve_support(l in arb_ladder(), alpha in 0i64..=4) {
        let base = ClassicalBase::new("sigma", Some(h(alpha))).unwrap();
        let full = Support::new(l.to_multisegment().support(), base.clone()).abs_normalized();
        for term in mu_star_induced(&l, &base) {
            let mut exponents = term.gl_contragredient().support();
            exponents.extend(term.gl_positive().support());
            exponents.extend(term.middle().support());
            let combined = Support::new(exponents, base.clone()).abs_normalized();
            prop_assert_eq!(combined, full.clone());
        }
    }

    /// The structural expansion agrees with composing the general-linear
    /// expansion twice: cutting at `c`, taking the contragredient of the
    /// lower part, and re-expanding the upper part at `d`.
    #[test]
    fn structural_terms_match_the_double_expansion(l in arb_ladder(), alpha in 0i64..=4) {
        let base = ClassicalBase::new("sigma", Some(h(alpha))).unwrap();
        let line = l.line().clone();
        let dual = line.contragredient();
        let mut via_double: Vec<(MultiSegment, MultiSegment, MultiSegment)> = Vec::new();
        for c in l.admissible_cuts() {
            let contra = MultiSegment::from_segments(
                l.pairs().iter().zip(&c).map(|(&(x, _), &ci)| {
                    Segment::new(dual.clone(), -ci, -x).expect("contragredient cut")
                }),
            );
            let upper = MultiSegment::from_segments(
                l.pairs().iter().zip(&c).map(|(&(_, y), &ci)| {
                    Segment::new(line.clone(), ci + 1, y).expect("upper cut")
                }),
            );
            if upper.is_unit() {
                via_double.push((contra, MultiSegment::unit(), MultiSegment::unit()));
            } else {
                let upper_ladder = LadderData::from_label(&upper).expect("upper factor is a ladder");
                for (left, middle, coeff) in mstar_ladder(&upper_ladder).terms() {
                    prop_assert_eq!(coeff, 1);
                    via_double.push((contra.clone(), left.clone(), middle.clone()));
                }
            }
        }
        via_double.sort();
        let mut via_struct: Vec<_> = mu_star_induced(&l, &base)
            .into_iter()
            .map(|t| (t.gl_contragredient().clone(), t.gl_positive().clone(), t.middle().clone()))
            .collect();
        via_struct.sort();
        prop_assert_eq!(via_double, via_struct);
    }

    /// Pushing every structural term to the standard basis recovers the
    /// twisted operator applied to the standard expansion of the ladder:
    /// the GL-pair content of the two routes agrees exactly.
    #[test]
    fn structural_terms_expand_to_the_twisted_operator(l in arb_ladder()) {
        let base = ClassicalBase::new("sigma", Some(HalfInt::ONE)).unwrap();
        let mut via_struct = jacquet_core::GLPairVirtual::zero();
        for term in mu_star_induced(&l, &base) {
            let contra = jacquet_core::expand_ladder_label(term.gl_contragredient()).unwrap();
            let positive = jacquet_core::expand_ladder_label(term.gl_positive()).unwrap();
            let middle = jacquet_core::expand_ladder_label(term.middle()).unwrap();
            via_struct.accumulate_tensor(&contra.product(&positive), &middle, 1);
        }
        let via_operator = jacquet_core::twisted_mstar(&ladder_to_standard(&l));
        prop_assert_eq!(via_struct, via_operator);
    }

    #[test]
    fn sp_normalize_is_idempotent_on_sigma_chains(inst in arb_instance()) {
        if let Ok(Some((lo, hi))) = inst.membership_range() {
            for k in lo..=hi {
                let sp = inst.sigma_k(k).expect("sigma_k in range");
                let listed: Vec<Segment> = sp.listed().cloned().collect();
                let renorm = sp_normalize(&listed, sp.base()).expect("renormalize");
                prop_assert_eq!(renorm, sp);
            }
        }
    }

    #[test]
    fn decomposition_invariants_hold(inst in arb_instance()) {
        let report = check_decomposition(&inst);
        prop_assert!(report.pass, "{}: {:?}", report.instance, report.detail);
    }

    #[test]
    fn decomposition_is_deterministic(inst in arb_instance()) {
        let a = inst.decompose().expect("decompose");
        let b = inst.decompose().expect("decompose");
        prop_assert_eq!(jacquet_core::canonical_json(&a), jacquet_core::canonical_json(&b));
    }
}
