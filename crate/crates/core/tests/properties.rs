use proptest::prelude::*;

use tanlift::canonical::maps::{flip, forms_swap, forms_unswap};
use tanlift::canonical::Bundle;
use tanlift::cartan::{exterior_d, lie_derivative, schouten};
use tanlift::dsl::ast::Expr;
use tanlift::dsl::{parse_expr, Session};
use tanlift::random::Sampler;
use tanlift::tangent::{tangent_lift_form, tangent_lift_mv, vertical_lift_form};
use tanlift::tensor::{Covector, Vector};
use tanlift::verify::Config;
use tanlift::{Chart, Form, Multivector};

fn chart(n: usize) -> Chart {
    Chart::new("M", &["x", "y", "z", "w"][..n], &["a"]).unwrap()
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0u32..20).prop_map(|n| Expr::Num(n.to_string(), None)),
        (1u32..9, 2u32..9).prop_map(|(n, d)| Expr::Num(n.to_string(), Some(d.to_string()))),
        prop::sample::select(vec!["x", "y", "dx", "a"]).prop_map(|s| Expr::Ident(s.into())),
        prop::sample::select(vec!["x", "y"]).prop_map(|s| Expr::Field(s.into())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Neg(Box::new(e))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Caret(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 40, ..ProptestConfig::default() })]

    #[test]
    fn expressions_survive_printing(e in expr()) {
        prop_assert_eq!(parse_expr(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn scalar_ring_laws(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let m = chart(3);
        let (f, g, h) = (s.scalar(&m, 2, 4), s.scalar(&m, 2, 4), s.scalar(&m, 2, 4));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
    }

    #[test]
    fn exterior_derivative_squares_to_zero(seed in any::<u64>(), n in 1usize..=4, r in 0usize..=2) {
        let mut s = Sampler::new(seed);
        let mu: Form = s.tensor::<Covector>(&chart(n), r.min(n), 3, 0.7);
        prop_assert!(exterior_d(&exterior_d(&mu)).is_zero());
    }

    #[test]
    fn schouten_is_graded_antisymmetric(seed in any::<u64>(), p in 1usize..=2, q in 1usize..=2) {
        let mut s = Sampler::new(seed);
        let m = chart(3);
        let x: Multivector = s.tensor::<Vector>(&m, p, 2, 0.7);
        let y: Multivector = s.tensor::<Vector>(&m, q, 2, 0.7);
        let xy = schouten(&x, &y).unwrap();
        let yx = schouten(&y, &x).unwrap();
        let sign = if (p - 1) * (q - 1) % 2 == 0 { -1 } else { 1 };
        prop_assert_eq!(xy, yx.scale_q(&tanlift::scalar::int(sign)));
    }

    #[test]
    fn tangent_lift_commutes_with_d(seed in any::<u64>(), n in 1usize..=3, r in 0usize..=2) {
        let mut s = Sampler::new(seed);
        let mu: Form = s.tensor::<Covector>(&chart(n), r.min(n), 2, 0.7);
        prop_assert_eq!(tangent_lift_form(&exterior_d(&mu)).unwrap(), exterior_d(&tangent_lift_form(&mu).unwrap()));
        prop_assert_eq!(
            vertical_lift_form(&exterior_d(&mu)).unwrap(),
            exterior_d(&vertical_lift_form(&mu).unwrap())
        );
    }

    #[test]
    fn tangent_lift_is_a_derivation_of_the_wedge(seed in any::<u64>(), n in 2usize..=3) {
        let mut s = Sampler::new(seed);
        let m = chart(n);
        let x: Multivector = s.tensor::<Vector>(&m, 1, 2, 0.8);
        let y: Multivector = s.tensor::<Vector>(&m, 1, 2, 0.8);
        let lhs = tangent_lift_mv(&x.wedge(&y).unwrap()).unwrap();
        let vx = tanlift::tangent::vertical_lift_mv(&x).unwrap();
        let vy = tanlift::tangent::vertical_lift_mv(&y).unwrap();
        let rhs = tangent_lift_mv(&x).unwrap().wedge(&vy).unwrap().try_add(&vx.wedge(&tangent_lift_mv(&y).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cartan_formula_on_one_forms(seed in any::<u64>(), n in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let m = chart(n);
        let x: Multivector = s.tensor::<Vector>(&m, 1, 2, 0.8);
        let mu: Form = s.tensor::<Covector>(&m, 1, 2, 0.8);
        let inner = tanlift::tensor::contract_multivector_into_form(&x, &mu).unwrap();
        let rhs = exterior_d(&inner)
            .try_add(&tanlift::tensor::contract_multivector_into_form(&x, &exterior_d(&mu)).unwrap())
            .unwrap();
        prop_assert_eq!(lie_derivative(&x, &mu).unwrap(), rhs);
    }

    #[test]
    fn canonical_involutions(seed in any::<u64>(), n in 1usize..=3) {
        let mut s = Sampler::new(seed);
        let v = s.fiber_point(Bundle::VectorsOnTangent, n, 1);
        prop_assert_eq!(flip(&flip(&v).unwrap()).unwrap(), v);
        let w = s.fiber_point(Bundle::TangentOfForms, n, 1);
        prop_assert_eq!(forms_unswap(&forms_swap(&w).unwrap()).unwrap(), w);
    }

    #[test]
    fn tensor_text_reads_back(seed in any::<u64>(), n in 1usize..=3, r in 0usize..=2, forms in any::<bool>()) {
        let mut s = Sampler::new(seed);
        let m = chart(n);
        let r = r.min(n);
        let (kw, text) = if forms {
            ("form", s.tensor::<Covector>(&m, r, 2, 0.7).to_text())
        } else {
            ("mv", s.tensor::<Vector>(&m, r, 2, 0.7).to_text())
        };
        let coords = ["x", "y", "z", "w"][..n].join(", ");
        let src = format!("chart M({coords}) params(a); {kw} T : {r} on M = {text}; show T;");
        let report = Session::new(Config::default()).eval(&src).unwrap();
        prop_assert_eq!(&report.entries[0].structures[0].text, &text);
    }
}
