use num_traits::Zero;
use tanlift::bialgebra::*;
use tanlift::exterior::normalize;
use tanlift::poisson::PoissonStructure;
use tanlift::random::Sampler;
use tanlift::scalar::int;
use tanlift::{Chart, Multivector, Rational};

fn q(n: i64) -> Rational {
    int(n)
}

fn elem(terms: &[(&[usize], i64)]) -> Element {
    let mut e = Element::new();
    for (ix, c) in terms {
        let (odd, key) = normalize(ix).unwrap();
        tanlift::exterior::accumulate(&mut e, key, q(*c), odd);
    }
    e
}

/// The quadratic example's cobracket on su(2) in the basis (ẋ2, ẋ3, ẋ4) = (e1, e2, e3):
/// δ(e1) = 0, δ(e2) = e2∧e1, δ(e3) = e3∧e1.
fn example_two_cobracket() -> Cobracket {
    Cobracket::new(vec![Element::new(), elem(&[(&[1, 0], 1)]), elem(&[(&[2, 0], 1)])]).unwrap()
}

fn example_two_r() -> RMatrix {
    RMatrix::from_terms(3, &[(1, 2, q(1))]).unwrap()
}

#[test]
fn su2_and_its_tangent_algebra() {
    let g = LieAlgebraData::su2();
    assert_eq!(g.to_text(), "[e1,e2] = e3; [e1,e3] = -e2; [e2,e3] = e1");
    let t = g.tangent();
    assert_eq!(t.dim(), 6);
    assert!(t.jacobi_witness().is_none());
    let n = 3;
    for i in 0..n {
        for j in 0..n {
            assert_eq!(t.bracket_basis(i, j), shift(&g.bracket_basis(i, j), 0));
            assert_eq!(t.bracket_basis(i, n + j), shift(&g.bracket_basis(i, j), n));
            assert_eq!(t.bracket_basis(n + i, j), shift(&g.bracket_basis(i, j), n));
            assert!(t.bracket_basis(n + i, n + j).is_empty());
        }
    }
    let ab = LieAlgebraData::abelian(&["a", "b"]).tangent();
    assert_eq!(ab.to_text(), "abelian");
}

fn shift(e: &Element, by: usize) -> Element {
    e.iter().map(|(k, c)| (k.iter().map(|&i| i + by as u8).collect(), c.clone())).collect()
}

#[test]
fn structure_constant_validation() {
    let bad = LieAlgebraData::from_brackets(
        &["a", "b", "c"],
        &[(0, 1, vec![(0, q(1))]), (1, 2, vec![(1, q(1))]), (0, 2, vec![(0, q(1))])],
    );
    assert!(bad.is_err());
    let conflict = LieAlgebraData::from_brackets(&["a", "b"], &[(0, 1, vec![(0, q(1))]), (1, 0, vec![(0, q(1))])]);
    assert!(conflict.is_err());
    let consistent = LieAlgebraData::from_brackets(&["a", "b"], &[(0, 1, vec![(0, q(1))]), (1, 0, vec![(0, q(-1))])]);
    assert!(consistent.is_ok());
}

#[test]
fn linear_poisson_of_su2_is_the_first_example() {
    let g = LieAlgebraData::su2();
    let c = Chart::new("su2*", &["x", "y", "z"], &[]).unwrap();
    let p = g.linear_poisson(&c).unwrap();
    let (x, y, z) = (c.coord(0), c.coord(1), c.coord(2));
    let bv = |a: &str, b: &str| Multivector::basis(&c, &[a, b]).unwrap();
    let expected =
        bv("x", "y").scale(&z).try_add(&bv("y", "z").scale(&x)).unwrap().try_add(&bv("z", "x").scale(&y)).unwrap();
    assert_eq!(p.bivector(), &expected);
    assert_eq!(p.bracket(&x, &y).unwrap(), z);
    assert!(LieAlgebraData::abelian(&["x", "y", "z"]).linear_poisson(&c).unwrap().bivector().is_zero());

    // Jacobi of c and Jacobi of the linear bivector agree
    let bad = LieAlgebraData::unchecked(&["x", "y", "z"], {
        let mut c = vec![vec![vec![q(0); 3]; 3]; 3];
        c[0][1][0] = q(1);
        c[1][0][0] = q(-1);
        c[1][2][1] = q(1);
        c[2][1][1] = q(-1);
        c[0][2][2] = q(1);
        c[2][0][2] = q(-1);
        c
    })
    .unwrap();
    assert!(bad.jacobi_witness().is_some());
    let (cyclic, square) = tanlift::poisson::jacobi_criteria(&bad.linear_bivector(&c).unwrap()).unwrap();
    assert!(!cyclic && !square);
}

#[test]
fn example_two_bialgebra_and_dual() {
    let g = LieAlgebraData::su2();
    let d = example_two_cobracket();
    assert!(validate_bialgebra(&g, &d).unwrap().holds());
    assert!(validate_bialgebra(&g, &Cobracket::zero(3)).unwrap().holds());
    let dual = dual_bracket(&g, &d).unwrap();
    // {ẋ4,ẋ2} = ẋ4, {ẋ3,ẋ2} = ẋ3, {ẋ4,ẋ3} = 0
    assert_eq!(dual.bracket_basis(2, 0), basis_vector(2));
    assert_eq!(dual.bracket_basis(1, 0), basis_vector(1));
    assert!(dual.bracket_basis(2, 1).is_empty());
    assert!(dual.jacobi_witness().is_none());
    assert_eq!(dual_bracket(&g, &Cobracket::zero(3)).unwrap().to_text(), "abelian");
}

#[test]
fn cocycle_violation_is_reported() {
    let g = LieAlgebraData::su2();
    let d = Cobracket::new(vec![elem(&[(&[0, 1], 1)]), Element::new(), Element::new()]).unwrap();
    let v = validate_bialgebra(&g, &d).unwrap();
    assert!(!v.holds());
    assert!(matches!(v.failures.as_slice(), [BialgebraFailure::Cocycle(_)]));

    // abelian g: every cobracket is a cocycle, so only co-Jacobi can fail
    let ab = LieAlgebraData::abelian(&["a", "b", "c"]);
    let cj = Cobracket::new(vec![elem(&[(&[0, 1], 1)]), elem(&[(&[1, 2], 1)]), elem(&[(&[0, 2], 1)])]).unwrap();
    let v = validate_bialgebra(&ab, &cj).unwrap();
    assert!(matches!(v.failures.as_slice(), [BialgebraFailure::CoJacobi(w)] if w.indices == vec![0, 1, 2]));
    assert!(dual_bracket(&ab, &cj).is_err());
}

#[test]
fn tangent_cobracket_reproduces_the_displays() {
    let g = LieAlgebraData::su2();
    let d = example_two_cobracket();
    let t = tangent_cobracket(&g, &d).unwrap();
    assert_eq!(t, tangent_cobracket_explicit(&d));
    let n = 3;
    // δ(ê2) = ê2∧ê1, δ(ė2) = ė2∧ê1 − ė1∧ê2
    assert_eq!(t.image(n + 1), &elem(&[(&[n + 1, n], 1)]));
    assert_eq!(t.image(1), &elem(&[(&[1, n], 1), (&[0, n + 1], -1)]));
    assert!(t.image(0).is_empty() && t.image(n).is_empty());
    assert!(validate_bialgebra(&g.tangent(), &t).unwrap().holds());
    assert!(tangent_cobracket(&g, &Cobracket::zero(3)).unwrap().is_zero());
    assert!(dual_tangent_compatible(&g, &d).unwrap());
}

#[test]
fn linear_bivector_round_trip_rejects_nonlinear() {
    let g = LieAlgebraData::su2();
    let c = g.chart("g").unwrap();
    let d = example_two_cobracket();
    assert_eq!(Cobracket::from_linear_bivector(&d.linear_bivector(&c).unwrap()).unwrap(), d);
    let sq = Multivector::basis(&c, &["e1", "e2"]).unwrap().scale(&c.coord(0).pow(2));
    assert!(Cobracket::from_linear_bivector(&sq).is_err());
    let constant = Multivector::basis(&c, &["e1", "e2"]).unwrap();
    assert!(Cobracket::from_linear_bivector(&constant).is_err());
}

/// Full (non-strict) tensor oracle for `[r, r]` and the adjoint action.
fn brute_force_gybe(g: &LieAlgebraData, r: &RMatrix) -> bool {
    let n = g.dim();
    let c = |i: usize, j: usize, k: usize| g.constant(i, j, k).clone();
    let mut t = vec![vec![vec![q(0); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for cc in 0..n {
                for d in 0..n {
                    let w = r.coefficient(a, b) * r.coefficient(cc, d);
                    if w.is_zero() {
                        continue;
                    }
                    for e in 0..n {
                        let v = &w * &c(a, cc, e);
                        // antisymmetrize X_e ⊗ X_b ⊗ X_d
                        let perms: [([usize; 3], i64); 6] = [
                            ([e, b, d], 1),
                            ([b, d, e], 1),
                            ([d, e, b], 1),
                            ([b, e, d], -1),
                            ([e, d, b], -1),
                            ([d, b, e], -1),
                        ];
                        for (p, s) in perms {
                            t[p[0]][p[1]][p[2]] += &v * q(s);
                        }
                    }
                }
            }
        }
    }
    (0..n).all(|x| {
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|cc| {
                    let mut s = q(0);
                    #[allow(clippy::needless_range_loop)]
                    for p in 0..n {
                        s += c(x, p, a) * &t[p][b][cc] + c(x, p, b) * &t[a][p][cc] + c(x, p, cc) * &t[a][b][p];
                    }
                    s.is_zero()
                })
            })
        })
    })
}

#[test]
fn schouten_square_and_gybe() {
    let g = LieAlgebraData::su2();
    let r = example_two_r();
    let sq = algebraic_schouten(&r, &r, &g).unwrap();
    assert_eq!(sq, algebraic_schouten_components(&g, &r, &r));
    let xy = RMatrix::from_terms(3, &[(0, 1, q(1))]).unwrap();
    // Σ r^{ab}r^{cd}c^e_{ac} X_e∧X_b∧X_d with r = e1∧e2: only e1,e2 brackets, [e1,e2]=e3
    // (a,b,c,d) = (0,1,1,0) gives −e3∧e2∧e1 and (1,0,0,1) gives e3∧e1∧e2: 2 e1∧e2∧e3
    assert_eq!(algebraic_schouten(&xy, &xy, &g).unwrap(), elem(&[(&[0, 1, 2], 2)]));
    assert!(gybe_check(&r, &g).unwrap());
    assert!(brute_force_gybe(&g, &r));
    let ab = LieAlgebraData::abelian(&["a", "b", "c"]);
    assert!(algebraic_schouten(&xy, &xy, &ab).unwrap().is_empty());
    assert!(gybe_check(&RMatrix::from_terms(3, &[]).unwrap(), &g).unwrap());
}

#[test]
fn gybe_matches_brute_force_on_perturbations() {
    let su2 = LieAlgebraData::su2();
    let one = Rational::from_integer(1.into());
    let aff2 =
        LieAlgebraData::from_brackets(&["h", "a", "b"], &[(0, 1, vec![(1, one.clone())]), (0, 2, vec![(2, q(2))])])
            .unwrap();
    let mut fails = 0;
    for t in 0..40 {
        let mut s = Sampler::for_trial(11, "gybe-perturb", t);
        let base = RMatrix::from_terms(3, &[(0, 1, q(1)), (1, 2, q(1))]).unwrap();
        let noise = random_rmatrix(&mut s, 3);
        let comps = tanlift::exterior::add(base.components(), noise.components());
        let r = RMatrix::new(3, comps).unwrap();
        for g in [&su2, &aff2] {
            let fast = gybe_check(&r, g).unwrap();
            assert_eq!(fast, brute_force_gybe(g, &r), "trial {t}");
            fails += usize::from(!fast);
        }
    }
    // su(2) always passes; the solvable algebra does not
    assert!(fails > 0);
}

#[test]
fn coboundary_and_lift_of_example_two() {
    let g = LieAlgebraData::su2();
    let r = example_two_r();
    let d = coboundary_cobracket(&r, &g).unwrap();
    assert_eq!(d, example_two_cobracket());
    let lift = lift_rmatrix(&r, &g).unwrap();
    assert_eq!(lift, lift_rmatrix_via_tangent_lift(&r, &g).unwrap());
    // r^{12} = 1: ė2∧ê3 − ė3∧ê2
    assert_eq!(lift.components(), &elem(&[(&[1, 5], 1), (&[2, 4], -1)]));
    let tg = g.tangent();
    assert!(gybe_check(&lift, &tg).unwrap());
    assert_eq!(tangent_cobracket(&g, &d).unwrap(), coboundary_cobracket(&lift, &tg).unwrap());
    let zero = RMatrix::from_terms(3, &[]).unwrap();
    assert!(coboundary_cobracket(&zero, &g).unwrap().is_zero());
    assert!(lift_rmatrix(&zero, &g).unwrap().components().is_empty());
}

#[test]
fn coboundaries_are_always_cocycles() {
    let aff2 =
        LieAlgebraData::from_brackets(&["h", "a", "b"], &[(0, 1, vec![(1, q(1))]), (0, 2, vec![(2, q(-1))])]).unwrap();
    for t in 0..30 {
        let mut s = Sampler::for_trial(5, "cocycle", t);
        let r = random_rmatrix(&mut s, 3);
        for g in [LieAlgebraData::su2(), aff2.clone()] {
            let d = coboundary_cobracket(&r, &g).unwrap();
            assert!(cocycle_witness(&g, &d).is_none());
        }
    }
}

#[test]
fn corpus_tangent_consistency_and_bridge() {
    let corpus = bialgebra_corpus(7, 6);
    assert!(corpus.len() >= 5 + 6);
    for (name, g, d) in &corpus {
        assert!(validate_bialgebra(g, d).unwrap().holds(), "{name}");
        let t = tangent_cobracket(g, d).unwrap();
        assert_eq!(t, tangent_cobracket_explicit(d), "{name}");
        assert!(validate_bialgebra(&g.tangent(), &t).unwrap().holds(), "{name}");
        assert!(dual_tangent_compatible(g, d).unwrap(), "{name}");
        assert!(linearization_bridge(g, d).unwrap(), "{name}");
    }
    for (name, g, _) in corpus.iter().filter(|(n, _, _)| n.starts_with("su2-random")) {
        let mut s = Sampler::for_trial(7, "bialgebra-corpus", name.rsplit('-').next().unwrap().parse().unwrap());
        let r = random_rmatrix(&mut s, 3);
        assert!(gybe_check(&r, g).unwrap());
        let lift = lift_rmatrix(&r, g).unwrap();
        assert!(gybe_check(&lift, &g.tangent()).unwrap());
        let d = coboundary_cobracket(&r, g).unwrap();
        assert_eq!(tangent_cobracket(g, &d).unwrap(), coboundary_cobracket(&lift, &g.tangent()).unwrap());
    }
}

#[test]
fn example_two_linearization_is_the_su2_cobracket() {
    let m = Chart::new("R4", &["x1", "x2", "x3", "x4"], &["c", "s"]).unwrap();
    let x = |i: usize| m.coord(i);
    let bv = |a: usize, b: usize| Multivector::term(&m, &[a, b], m.one()).unwrap();
    let parts = [
        bv(2, 1).scale(&(&x(0) * &x(2))),
        bv(3, 1).scale(&(&x(0) * &x(3))),
        bv(0, 2).scale(&(&x(1) * &x(2))),
        bv(0, 3).scale(&(&x(1) * &x(3))),
        bv(1, 0).scale(&(&x(2).pow(2) + &x(3).pow(2))),
    ];
    let bivector = parts.iter().skip(1).fold(parts[0].clone(), |a, b| a.try_add(b).unwrap());
    let p = PoissonStructure::new(bivector).unwrap();
    let lin = p.linearize_at(&[m.one(), m.zero(), m.zero(), m.zero()]).unwrap();
    let full = Cobracket::from_linear_bivector(&lin).unwrap();
    // ẋ1 decouples; restrict to (ẋ2, ẋ3, ẋ4)
    assert!(full.image(0).is_empty());
    assert!(full.image(1).keys().chain(full.image(2).keys()).chain(full.image(3).keys()).all(|k| !k.contains(&0)));
    let restricted: Vec<Element> = (1..4).map(|k| shift_down(full.image(k))).collect();
    let d = Cobracket::new(restricted).unwrap();
    assert_eq!(d, coboundary_cobracket(&example_two_r(), &LieAlgebraData::su2()).unwrap());
}

fn shift_down(e: &Element) -> Element {
    e.iter().map(|(k, c)| (k.iter().map(|&i| i - 1).collect(), c.clone())).collect()
}

#[test]
fn linear_characterization() {
    let g = LieAlgebraData::su2();
    let c = g.chart("g").unwrap();
    let su2 = LinearSharp::of_bivector(&g.linear_bivector(&c).unwrap()).unwrap();
    let v = su2.verdict();
    assert!(v.skew && v.identity && v.conjugate_is_lie);

    // antisymmetric but not Jacobi
    let mut l = vec![vec![vec![q(0); 3]; 3]; 3];
    l[0][0][1] = q(1);
    l[0][1][0] = q(-1);
    l[1][1][2] = q(1);
    l[1][2][1] = q(-1);
    l[2][0][2] = q(1);
    l[2][2][0] = q(-1);
    let bad = LinearSharp::new(l).unwrap().verdict();
    assert!(bad.skew && !bad.identity && !bad.conjugate_is_lie);
    assert!(bad.consistent());

    // not skew
    let mut l = vec![vec![vec![q(0); 2]; 2]; 2];
    l[0][0][0] = q(1);
    let ns = LinearSharp::new(l).unwrap().verdict();
    assert!(!ns.skew && !ns.conjugate_is_lie);
}
