use proptest::prelude::*;

use g2skt_core::context::Context;
use g2skt_core::forms::{wedge, DualLabel, ScalarForm};
use g2skt_core::g2::AlgebraElement;
use g2skt_core::hermitian::{check_j_compatible, torus_invariance};
use g2skt_core::r7::{cross, phi_contraction_scalar, Vector7};
use g2skt_core::roots::Label;
use g2skt_core::scalar::{rational, Rational, SQRT3_F64};
use g2skt_core::skt::{lambda_values, lambdas_positive, positivity_region, skt_metric, MetricParams3};
use g2skt_core::{FieldElement, Sign};

fn rat() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| rational(p, q))
}

fn field() -> impl Strategy<Value = FieldElement> {
    (rat(), rat(), rat(), rat()).prop_map(|(a, b, c, d)| FieldElement::new(a, b, c, d))
}

fn real_field() -> impl Strategy<Value = FieldElement> {
    (-1000i64..=1000, 1i64..=1000, -1000i64..=1000, 1i64..=1000).prop_map(|(p, q, r, s)| {
        FieldElement::new(rational(p, q), rational(r, s), rational(0, 1), rational(0, 1))
    })
}

fn vec7() -> impl Strategy<Value = Vector7> {
    prop::array::uniform7(rat()).prop_map(|xs| Vector7(xs.map(FieldElement::from_rational)))
}

fn small_coeff() -> impl Strategy<Value = FieldElement> {
    (-3i64..=3, -3i64..=3).prop_map(|(a, c)| &FieldElement::from_int(a) + &(&FieldElement::i() * FieldElement::from_int(c)))
}

fn label() -> impl Strategy<Value = DualLabel> {
    (0usize..14).prop_map(|k| DualLabel(Label::from_index(k)))
}

/// Sums of up to four monomials of the given degree.
fn form(degree: usize) -> impl Strategy<Value = ScalarForm> {
    prop::collection::vec((prop::collection::vec(label(), degree), small_coeff()), 1..=4).prop_map(move |ts| {
        let mut f = ScalarForm::zero(degree);
        for (ls, c) in ts {
            f.add_term(&ls, c);
        }
        f
    })
}

fn basis_combo() -> impl Strategy<Value = AlgebraElement> {
    prop::array::uniform14(-3i64..=3)
        .prop_map(|xs| AlgebraElement::from_coeffs(xs.iter().map(|&x| FieldElement::from_int(x)).collect()))
}

/// Points strictly inside the SKT region, built from fractions in (0, 1).
fn region_point() -> impl Strategy<Value = MetricParams3> {
    (1i64..=20, 1i64..=19, 1i64..=19).prop_map(|(a1, t, s)| {
        let a1 = rational(a1, 2);
        let a2 = &a1 * rational(t, 20);
        let probe = MetricParams3::new(a1.clone(), a2.clone(), rational(0, 1));
        let (lo, hi) = (probe.gamma(), probe.upper());
        let a3 = &lo + (&hi - &lo) * rational(s, 20);
        MetricParams3::new(a1, a2, a3)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn field_axioms(x in field(), y in field(), z in field()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    }

    #[test]
    fn inverse_and_conjugation(x in field(), y in field()) {
        if !x.is_zero() {
            prop_assert_eq!(&x * &x.invert().unwrap(), FieldElement::one());
        }
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!(x.conjugate().conjugate(), x);
    }

    #[test]
    fn phi_contraction_identity(u in vec7(), v in vec7()) {
        prop_assert_eq!(phi_contraction_scalar(&u, &v), &FieldElement::from_int(-6) * &u.dot(&v));
    }

    #[test]
    fn cross_product_laws(u in vec7(), v in vec7()) {
        let uv = cross(&u, &v);
        let lhs = uv.norm_sq();
        let d = u.dot(&v);
        prop_assert_eq!(lhs, &(&u.norm_sq() * &v.norm_sq()) - &(&d * &d));
        let uuv = cross(&u, &uv);
        prop_assert_eq!(uuv, &u.scale(&d) - &v.scale(&u.norm_sq()));
        prop_assert_eq!(cross(&v, &u), uv.scale(&FieldElement::from_int(-1)));
        prop_assert!(cross(&u, &u).is_zero());
    }

    #[test]
    fn killing_ad_invariant(x in basis_combo(), y in basis_combo(), z in basis_combo()) {
        let t = &Context::global().table;
        let lhs = &t.killing_form(&t.bracket(&x, &y), &z) + &t.killing_form(&y, &t.bracket(&x, &z));
        prop_assert!(lhs.is_zero());
        prop_assert_eq!(t.killing_form(&x, &y), t.killing_form(&y, &x));
    }

    #[test]
    fn d_is_an_antiderivation(a in form(1), b in form(2)) {
        let d = &Context::global().dtable;
        let lhs = d.d(&wedge(&a, &b).unwrap());
        let rhs = wedge(&d.d(&a), &b).unwrap().sub(&wedge(&a, &d.d(&b)).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_squared_vanishes(a in form(2), b in form(3)) {
        let d = &Context::global().dtable;
        prop_assert!(d.d(&d.d(&a)).is_empty());
        prop_assert!(d.d(&d.d(&b)).is_empty());
    }

    #[test]
    fn d_commutes_with_conjugation(a in form(2)) {
        let d = &Context::global().dtable;
        prop_assert_eq!(d.d(&a.conjugate()), d.d(&a).conjugate());
    }

    #[test]
    fn j_action_is_multiplicative(a in form(1), b in form(2)) {
        let ab = wedge(&a, &b).unwrap();
        prop_assert_eq!(ab.j_action(), wedge(&a.j_action(), &b.j_action()).unwrap());
        prop_assert_eq!(a.j_action().j_action(), a.neg());
        prop_assert_eq!(b.j_action().j_action(), b.clone());
    }

    #[test]
    fn region_matches_lambda_positivity(a1 in rat(), a2 in rat(), a3 in rat()) {
        let a = MetricParams3::new(a1, a2, a3);
        prop_assert_eq!(positivity_region(&a), lambdas_positive(&Context::global().solution, &a));
    }

    #[test]
    fn facets_degenerate(a1 in 1i64..=30, t in 1i64..=29) {
        let ctx = Context::global();
        let a1 = rational(a1, 3);
        let a2 = &a1 * rational(t, 30);
        let probe = MetricParams3::new(a1.clone(), a2.clone(), rational(0, 1));
        let mut facets = vec![
            MetricParams3::new(a1.clone(), a2.clone(), probe.gamma()),
            MetricParams3::new(a1.clone(), a2.clone(), probe.upper()),
            MetricParams3::new(a1.clone(), rational(0, 1), &a1 * rational(5, 2)),
        ];
        facets.retain(|p| p.gamma() <= p.upper());
        for p in facets {
            let lv = lambda_values(&ctx.solution, &p);
            prop_assert!(lv.iter().any(FieldElement::is_zero), "no vanishing λ at {:?}", p);
            prop_assert!(!positivity_region(&p));
            let g = ctx.metric.evaluate(&lv);
            prop_assert!(!g.is_positive_definite());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn sign_real_agrees_with_float(x in real_field()) {
        let approx = ratio_f64(x.a()) + SQRT3_F64 * ratio_f64(x.b());
        let want = if approx > 0.0 { Sign::Positive } else if approx < 0.0 { Sign::Negative } else { Sign::Zero };
        prop_assert_eq!(x.sign_real().unwrap(), want, "{} ≈ {}", x, approx);
    }
}

fn ratio_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn region_points_are_skt(a in region_point()) {
        let ctx = Context::global();
        prop_assert!(positivity_region(&a));
        let g = skt_metric(&ctx.metric, &ctx.solution, &a).unwrap();
        prop_assert!(g.is_symmetric());
        prop_assert!(g.is_positive_definite());
        prop_assert!(check_j_compatible(&g, &ctx.j));
        prop_assert!(torus_invariance(&ctx.table, &g));
        let lv = lambda_values(&ctx.solution, &a);
        prop_assert!(ctx.dc.map_coeffs(|l| l.evaluate(&lv)).is_empty());
    }
}
