use tanlift::cartan::schouten;
use tanlift::error::Error;
use tanlift::poisson::{is_poisson_map, jacobi_criteria, lifted_span, PoissonStructure};
use tanlift::polymap::PolyMap;
use tanlift::random::Sampler;
use tanlift::scalar::{int, rat};
use tanlift::tangent::{tangent_chart, tangent_lift_scalar, vertical_lift_scalar};
use tanlift::tensor::{one_tensor, Form, Multivector};
use tanlift::{Chart, Rational, Scalar};

fn bv(c: &Chart, a: &str, b: &str) -> Multivector {
    Multivector::basis(c, &[a, b]).unwrap()
}

fn v(c: &Chart, name: &str) -> Scalar {
    c.var(name).unwrap()
}

fn sum(parts: Vec<Multivector>) -> Multivector {
    parts.into_iter().reduce(|a, b| a.try_add(&b).unwrap()).unwrap()
}

fn q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

fn plane() -> (Chart, PoissonStructure) {
    let m = Chart::new("M", &["x", "y"], &[]).unwrap();
    let bivector = bv(&m, "x", "y").scale(&v(&m, "x").pow(2));
    (m.clone(), PoissonStructure::new(bivector).unwrap())
}

fn su2_dual() -> (Chart, PoissonStructure) {
    let m = Chart::new("R3", &["x", "y", "z"], &[]).unwrap();
    let bivector = sum(vec![
        bv(&m, "x", "y").scale(&v(&m, "z")),
        bv(&m, "y", "z").scale(&v(&m, "x")),
        bv(&m, "z", "x").scale(&v(&m, "y")),
    ]);
    (m.clone(), PoissonStructure::new(bivector).unwrap())
}

fn quadratic_r4() -> (Chart, PoissonStructure) {
    let m = Chart::new("R4", &["x1", "x2", "x3", "x4"], &["c", "s"]).unwrap();
    let x = |i: &str| v(&m, i);
    let bivector = sum(vec![
        bv(&m, "x3", "x2").scale(&(&x("x1") * &x("x3"))),
        bv(&m, "x4", "x2").scale(&(&x("x1") * &x("x4"))),
        bv(&m, "x1", "x3").scale(&(&x("x2") * &x("x3"))),
        bv(&m, "x1", "x4").scale(&(&x("x2") * &x("x4"))),
        bv(&m, "x2", "x1").scale(&(&x("x3").pow(2) + &x("x4").pow(2))),
    ]);
    (m.clone(), PoissonStructure::new(bivector).unwrap())
}

#[test]
fn plane_structure_brackets_and_hamiltonians() {
    let (m, p) = plane();
    let (x, y) = (v(&m, "x"), v(&m, "y"));
    assert_eq!(p.bracket(&x, &y).unwrap(), x.pow(2));
    assert!(p.bracket(&(&x * &y), &(&x * &y)).unwrap().is_zero());
    let h = p.hamiltonian(&y).unwrap();
    assert_eq!(h, Multivector::basis(&m, &["x"]).unwrap().scale(&x.pow(2)).neg());
    // pinning identity X_f(g) = {f, g}
    assert_eq!(tanlift::cartan::apply_field(&h, &x), p.bracket(&y, &x).unwrap());
    assert!(p.hamiltonian(&m.constant(rat(5, 2))).unwrap().is_zero());
}

#[test]
fn plane_tangent_structure_matches_display() {
    let (m, p) = plane();
    let tp = p.tangent().unwrap();
    let tc = tp.chart().clone();
    let (x, xd) = (v(&tc, "x"), v(&tc, "x_dot"));
    let expect = sum(vec![
        bv(&tc, "x_dot", "y").try_add(&bv(&tc, "x", "y_dot")).unwrap().scale(&x.pow(2)),
        bv(&tc, "x_dot", "y_dot").scale(&(&x * &xd).scale(&int(2))),
    ]);
    assert_eq!(tp.bivector(), &expect);
    assert_eq!(tc.tangent_base(), Some(&m));
}

#[test]
fn one_form_bracket_examples() {
    let (m, p) = plane();
    let x = v(&m, "x");
    let dx = Form::basis(&m, &["x"]).unwrap();
    let dy = Form::basis(&m, &["y"]).unwrap();
    let xdy = dy.scale(&x);
    assert_eq!(p.one_form_bracket(&xdy, &dy).unwrap(), dy.scale(&x.pow(2)));
    assert_eq!(p.one_form_bracket(&xdy, &dx).unwrap(), dx.scale(&x.pow(2).scale(&int(-2))));
    for (a, b) in [(&xdy, &dy), (&xdy, &dx), (&dx, &dy)] {
        assert_eq!(p.one_form_bracket(a, b).unwrap(), p.one_form_bracket_contracted(a, b).unwrap());
    }
    // exact forms: {df, dg} = d{f, g}
    let f = &x * &v(&m, "y");
    let g = v(&m, "y").pow(2);
    let df = tanlift::tensor::differential(&m, &f);
    let dg = tanlift::tensor::differential(&m, &g);
    let fg = Form::from_scalar(&m, p.bracket(&f, &g).unwrap());
    assert_eq!(p.one_form_bracket(&df, &dg).unwrap(), tanlift::cartan::exterior_d(&fg));
}

/// Coefficients of degree ≤ 2 in (x, y) with free symbolic parameters.
fn general_form(m: &Chart, prefix: char, slot: usize) -> Scalar {
    let monos: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
    let len = m.table().len();
    let mut acc = m.zero();
    for (k, (a, b)) in monos.iter().enumerate() {
        let name = format!("{prefix}{slot}{k}");
        let pos = m.table().index_of(&name).unwrap();
        let mut exps = vec![0u32; len];
        exps[0] = *a;
        exps[1] = *b;
        exps[pos] = 1;
        acc = &acc + &Scalar::from_terms(m.table(), vec![(exps, int(1))]).unwrap();
    }
    acc
}

#[test]
fn tangent_bracket_identity_for_general_forms() {
    let names: Vec<String> =
        ['a', 'b'].iter().flat_map(|p| (1..=2).flat_map(move |s| (0..6).map(move |k| format!("{p}{s}{k}")))).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let m = Chart::new("M", &["x", "y"], &refs).unwrap();
    let p = PoissonStructure::new(bv(&m, "x", "y").scale(&v(&m, "x").pow(2))).unwrap();
    let (m1, m2) = (general_form(&m, 'a', 1), general_form(&m, 'a', 2));
    let (e1, e2) = (general_form(&m, 'b', 1), general_form(&m, 'b', 2));
    let mu = one_tensor::<tanlift::tensor::Covector>(&m, &[m1.clone(), m2.clone()]);
    let eta = one_tensor::<tanlift::tensor::Covector>(&m, &[e1.clone(), e2.clone()]);
    assert!(p.tangent_bracket_identity(&mu, &eta, PoissonStructure::one_form_bracket).unwrap());

    // the displayed closed form of the bracket
    let x = v(&m, "x");
    let d = |s: &Scalar, w: &str| s.partial(w).unwrap();
    let x2 = x.pow(2);
    let cross = &(&m1 * &e2) - &(&m2 * &e1);
    let first = &(&x2
        * &(&(&(&(&m1 * &d(&e1, "y")) - &(&m2 * &d(&e1, "x"))) - &(&e1 * &d(&m1, "y"))) + &(&e2 * &d(&m1, "x"))))
        + &(&x.scale(&int(2)) * &cross);
    let second =
        &x2 * &(&(&(&(&m1 * &d(&e2, "y")) - &(&m2 * &d(&e2, "x"))) - &(&e1 * &d(&m2, "y"))) + &(&e2 * &d(&m2, "x")));
    let displayed = one_tensor::<tanlift::tensor::Covector>(&m, &[first, second]);
    assert_eq!(p.one_form_bracket(&mu, &eta).unwrap(), displayed);

    // the reading that drops the dμ term fails
    assert!(!p.tangent_bracket_identity(&mu, &eta, PoissonStructure::one_form_bracket_undifferentiated).unwrap());
}

#[test]
fn undifferentiated_reading_misses_the_example_values() {
    let (m, p) = plane();
    let dy = Form::basis(&m, &["y"]).unwrap();
    let xdy = dy.scale(&v(&m, "x"));
    assert!(p.one_form_bracket_undifferentiated(&xdy, &dy).unwrap().is_zero());
    assert!(!p.tangent_bracket_identity(&xdy, &dy, PoissonStructure::one_form_bracket_undifferentiated).unwrap());
    assert!(p.tangent_bracket_identity(&xdy, &dy, PoissonStructure::one_form_bracket).unwrap());
}

#[test]
fn bracket_lift_relations() {
    let (m, p) = plane();
    assert!(p.bracket_relations(&v(&m, "x"), &v(&m, "y")).unwrap().holds());
    let f = &v(&m, "x") * &v(&m, "y");
    assert!(p.bracket_relations(&f, &f).unwrap().holds());
    let (e, s) = su2_dual();
    let r = s.bracket_relations(&v(&e, "x"), &v(&e, "y")).unwrap();
    assert!(r.holds());
    let tc = tangent_chart(&e).unwrap();
    let tp = s.tangent().unwrap();
    let vx = vertical_lift_scalar(&tc, &v(&e, "x"));
    let ty = tangent_lift_scalar(&tc, &v(&e, "y"));
    // {v_T x, d_T y} = v_T z = z
    assert_eq!(tp.bracket(&vx, &ty).unwrap(), v(&tc, "z"));
}

#[test]
fn validation_examples() {
    let (e, s) = su2_dual();
    assert_eq!(s.bracket(&v(&e, "x"), &v(&e, "y")).unwrap(), v(&e, "z"));
    let m = Chart::new("R3", &["x", "y", "z"], &[]).unwrap();
    let base = bv(&m, "x", "y").scale(&(&v(&m, "x") + &v(&m, "y")));
    let cyclic_plus_variant = sum(vec![base.clone(), bv(&m, "y", "z"), bv(&m, "z", "x")]);
    assert_eq!(jacobi_criteria(&cyclic_plus_variant).unwrap(), (true, true));
    let bad = sum(vec![base, bv(&m, "y", "z"), bv(&m, "z", "x").neg()]);
    match PoissonStructure::new(bad) {
        Err(Error::JacobiFailure { j, k, l, sum }) => {
            assert_eq!((j, k, l), (0, 1, 2));
            assert_eq!(sum, "2");
        }
        other => panic!("expected a Jacobi failure, got {other:?}"),
    }
    assert!(matches!(PoissonStructure::new(Multivector::basis(&m, &["x"]).unwrap()), Err(Error::Type(_))));
}

#[test]
fn su2_dual_tangent_structure_and_casimirs() {
    let (e, s) = su2_dual();
    let tp = s.tangent().unwrap();
    let tc = tp.chart().clone();
    let w = |n: &str| v(&tc, n);
    let expect = sum(vec![
        bv(&tc, "x_dot", "y").try_add(&bv(&tc, "x", "y_dot")).unwrap().scale(&w("z")),
        bv(&tc, "y_dot", "z").try_add(&bv(&tc, "y", "z_dot")).unwrap().scale(&w("x")),
        bv(&tc, "z_dot", "x").try_add(&bv(&tc, "z", "x_dot")).unwrap().scale(&w("y")),
        bv(&tc, "x_dot", "y_dot").scale(&w("z_dot")),
        bv(&tc, "y_dot", "z_dot").scale(&w("x_dot")),
        bv(&tc, "z_dot", "x_dot").scale(&w("y_dot")),
    ]);
    assert_eq!(tp.bivector(), &expect);

    let f0 = &(&v(&e, "x").pow(2) + &v(&e, "y").pow(2)) + &v(&e, "z").pow(2);
    assert!(s.is_casimir(&f0).unwrap());
    assert_eq!(s.casimir_lifts(&f0).unwrap(), (true, true));
    let f1 = &(&(&w("x") * &w("x_dot")) + &(&w("y") * &w("y_dot"))) + &(&w("z") * &w("z_dot"));
    assert_eq!(tangent_lift_scalar(&tc, &f0), f1.scale(&int(2)));
    assert!(tp.is_casimir(&f1).unwrap());
    assert!(tp.is_casimir(&vertical_lift_scalar(&tc, &f0)).unwrap());
    assert!(!s.is_casimir(&v(&e, "x")).unwrap());
    assert!(s.is_casimir(&e.one()).unwrap());
    let (m, p) = plane();
    assert!(!p.is_casimir(&v(&m, "x")).unwrap());
}

#[test]
fn su2_dual_rank_and_linearization() {
    let (e, s) = su2_dual();
    assert_eq!(s.rank_at(&q(&[1, 0, 0])).unwrap().rank, 2);
    assert_eq!(s.rank_at(&q(&[0, 0, 0])).unwrap().rank, 0);
    let origin = vec![e.zero(); 3];
    let lin = s.linearize_at(&origin).unwrap();
    let lc = lin.chart().clone();
    assert_eq!(lc.coords(), &["x_dot", "y_dot", "z_dot"]);
    let expect = sum(vec![
        bv(&lc, "x_dot", "y_dot").scale(&v(&lc, "z_dot")),
        bv(&lc, "y_dot", "z_dot").scale(&v(&lc, "x_dot")),
        bv(&lc, "z_dot", "x_dot").scale(&v(&lc, "y_dot")),
    ]);
    assert_eq!(lin, expect);
    assert!(s.linearization_matches_lie_derivative(&origin, &q(&[2, -1, 3])).unwrap());
    let p = vec![e.one(), e.zero(), e.zero()];
    assert_eq!(s.linearize_at(&p), Err(Error::NonSingularPoint(2)));
}

#[test]
fn zero_structure_linearizes_to_zero() {
    let m = Chart::new("M", &["x", "y"], &[]).unwrap();
    let z = PoissonStructure::new(Multivector::zero(&m, 2)).unwrap();
    assert!(z.linearize_at(&[m.one(), m.zero()]).unwrap().is_zero());
    assert_eq!(z.tangent_distribution(&q(&[1, 2, 3, 4])).unwrap().dim(), 0);
}

#[test]
fn quadratic_structure_rank_locus() {
    let (_, p) = quadratic_r4();
    let on = [[1, 0, 0, 0], [0, 1, 0, 0], [3, -2, 0, 0], [0, 0, 0, 0], [-5, 7, 0, 0]];
    let off = [[1, 0, 1, 0], [0, 0, 0, 1], [2, 1, -1, 3], [0, 1, 1, 1], [1, 1, 0, 2]];
    for pt in on {
        assert_eq!(p.rank_at(&q(&pt)).unwrap().rank, 0, "{pt:?}");
    }
    for pt in off {
        assert!(p.rank_at(&q(&pt)).unwrap().rank > 0, "{pt:?}");
    }
    let frac: Vec<Rational> = vec![rat(1, 2), rat(-2, 3), int(0), int(0)];
    assert_eq!(p.rank_at(&frac).unwrap().rank, 0);
}

#[test]
fn quadratic_structure_linearization_table() {
    let (m, p) = quadratic_r4();
    let (c, s) = (v(&m, "c"), v(&m, "s"));
    let pt = vec![c, s, m.zero(), m.zero()];
    let lin = p.linearize_at(&pt).unwrap();
    let lp = PoissonStructure::new(lin.clone()).unwrap();
    let lc = lin.chart().clone();
    let d = |i: usize| lc.coord(i);
    let (lc_c, lc_s) = (v(&lc, "c"), v(&lc, "s"));
    assert_eq!(lp.bracket(&d(0), &d(2)).unwrap(), &lc_s * &d(2));
    assert_eq!(lp.bracket(&d(0), &d(3)).unwrap(), &lc_s * &d(3));
    assert_eq!(lp.bracket(&d(1), &d(2)).unwrap(), (&lc_c * &d(2)).negate());
    assert_eq!(lp.bracket(&d(1), &d(3)).unwrap(), (&lc_c * &d(3)).negate());
    assert!(lp.bracket(&d(0), &d(1)).unwrap().is_zero());
    assert!(lp.bracket(&d(2), &d(3)).unwrap().is_zero());
    assert!(p.linearization_matches_lie_derivative(&pt, &[int(1), int(-2), int(3), rat(1, 2)]).unwrap());

    let unit = vec![m.one(), m.zero(), m.zero(), m.zero()];
    let at_unit = PoissonStructure::new(p.linearize_at(&unit).unwrap()).unwrap();
    let u = at_unit.chart().clone();
    let e = |i: usize| u.coord(i);
    assert_eq!(at_unit.bracket(&e(3), &e(1)).unwrap(), e(3));
    assert_eq!(at_unit.bracket(&e(2), &e(1)).unwrap(), e(2));
    assert!(at_unit.bracket(&e(3), &e(2)).unwrap().is_zero());
    assert!(matches!(p.linearize_at(&[m.one(), m.zero(), m.one(), m.zero()]), Err(Error::NonSingularPoint(_))));
}

#[test]
fn canonical_fields() {
    let (e, s) = su2_dual();
    let hx = s.hamiltonian(&v(&e, "x")).unwrap();
    assert!(s.canonical_field_check(&hx).unwrap());
    let euler = one_tensor(&e, &[v(&e, "x"), v(&e, "y"), v(&e, "z")]);
    assert_eq!(tanlift::cartan::lie_derivative(&euler, s.bivector()).unwrap(), s.bivector().neg());
    assert!(!s.canonical_field_check(&euler).unwrap());
    assert!(s.canonical_field_check(&Multivector::zero(&e, 1)).unwrap());
}

#[test]
fn poisson_maps() {
    let (m, p) = plane();
    let id = PolyMap::identity(&m);
    assert!(is_poisson_map(&id, p.bivector(), p.bivector()).unwrap());
    let line = Chart::new("L", &["u"], &[]).unwrap();
    let proj = PolyMap::new(&m, &line, vec![v(&m, "x")]).unwrap();
    assert!(is_poisson_map(&proj, p.bivector(), &Multivector::zero(&line, 2)).unwrap());
    let tp = p.tangent().unwrap();
    let tc = tp.chart().clone();
    let projection = PolyMap::new(&tc, &m, vec![v(&tc, "x"), v(&tc, "y")]).unwrap();
    // {v_T x, v_T y} = 0 under d_T Λ, so the projection only relates it to the zero structure
    assert!(!is_poisson_map(&projection, tp.bivector(), p.bivector()).unwrap());
    assert!(is_poisson_map(&projection, tp.bivector(), &Multivector::zero(&m, 2)).unwrap());
    let swap = PolyMap::new(&m, &m, vec![v(&m, "y"), v(&m, "x")]).unwrap();
    assert!(!is_poisson_map(&swap, p.bivector(), p.bivector()).unwrap());
}

#[test]
fn lifted_distributions() {
    // fields on the line vanishing at the origin
    let r = Chart::new("R", &["x"], &[]).unwrap();
    let field = Multivector::basis(&r, &["x"]).unwrap().scale(&v(&r, "x"));
    assert_eq!(lifted_span(std::slice::from_ref(&field), &q(&[0, 1])).unwrap().len(), 1);
    assert_eq!(lifted_span(std::slice::from_ref(&field), &q(&[2, 0])).unwrap().len(), 2);
    assert_eq!(lifted_span(std::slice::from_ref(&field), &q(&[-1, 5])).unwrap().len(), 2);
    assert_eq!(lifted_span(&[field], &q(&[0, 0])).unwrap().len(), 0);

    let (_, s) = su2_dual();
    let d = s.tangent_distribution(&q(&[1, 0, 0, 2, -1, 3])).unwrap();
    assert_eq!(d.dim(), 4);
    assert!(d.agree());
    let over_origin = s.tangent_distribution(&q(&[0, 0, 0, 1, 1, 0])).unwrap();
    assert!(over_origin.agree());
    assert_eq!(over_origin.dim(), 2);
}

#[test]
fn rank_doubles_at_random_points() {
    let (_, s) = su2_dual();
    let (_, p) = plane();
    for trial in 0..20 {
        let mut rng = Sampler::for_trial(11, "rank-doubling", trial);
        for st in [&s, &p] {
            let n = st.chart().dim();
            let x = rng.rationals(n, 4);
            let mut full = x.clone();
            full.extend(rng.rationals(n, 4));
            let base = st.rank_at(&x).unwrap().rank;
            let lifted = st.tangent().unwrap().rank_at(&full).unwrap().rank;
            if base == n - n % 2 {
                assert_eq!(lifted, 2 * base);
            }
            assert_eq!(base % 2, 0);
        }
    }
}

#[test]
fn random_structures_satisfy_the_tangent_identities() {
    for trial in 0..12 {
        let mut rng = Sampler::for_trial(5, "poisson-identities", trial);
        let n = 2 + trial % 3;
        let names = ["a", "b", "c", "d"];
        let c = Chart::new("M", &names[..n], &[]).unwrap();
        let p = PoissonStructure::new(rng.poisson_bivector(&c)).unwrap();
        let (f, g, h) = (rng.scalar(&c, 2, 3), rng.scalar(&c, 2, 3), rng.scalar(&c, 2, 3));
        let jac = &(&p.bracket(&f, &p.bracket(&g, &h).unwrap()).unwrap()
            + &p.bracket(&g, &p.bracket(&h, &f).unwrap()).unwrap())
            + &p.bracket(&h, &p.bracket(&f, &g).unwrap()).unwrap();
        assert!(jac.is_zero());
        assert!(p.bracket_relations(&f, &g).unwrap().holds());
        let mu: Form = rng.tensor(&c, 1, 2, 0.7);
        let eta: Form = rng.tensor(&c, 1, 2, 0.7);
        assert!(p.tangent_bracket_identity(&mu, &eta, PoissonStructure::one_form_bracket).unwrap());
        let nu: Form = rng.tensor(&c, 1, 1, 0.7);
        let b = |a: &Form, b: &Form| p.one_form_bracket(a, b).unwrap();
        let cyc =
            b(&mu, &b(&eta, &nu)).try_add(&b(&eta, &b(&nu, &mu))).unwrap().try_add(&b(&nu, &b(&mu, &eta))).unwrap();
        assert!(cyc.is_zero());
        assert!(schouten(p.bivector(), p.bivector()).unwrap().is_zero());
    }
}
