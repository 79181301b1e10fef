//! Seeded verification suites, one per family of identities.
//!
//! Each randomized check draws trial `t` from its own stream, runs trials in
//! parallel and reports failures sorted by trial index, so output depends
//! only on the configuration.

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bialgebra::{
    bialgebra_corpus, coboundary_cobracket, dual_bracket, dual_tangent_compatible, gybe_check, lift_rmatrix,
    lift_rmatrix_via_tangent_lift, linearization_bridge, random_rmatrix, tangent_cobracket, tangent_cobracket_explicit,
    validate_bialgebra, Cobracket, Element, LieAlgebraData, LinearSharp, RMatrix,
};
use crate::canonical::diagrams::{
    closed_form_pullback, flip_split_diagram, flip_wedge_diagram, liouville_identity, poisson_relation_diagram,
    sharp_relatedness, symplectic_flat_diagram, tangent_lift_form_diagram, tangent_lift_mv_diagram,
    ttm_as_tangent_of_vectors, unswap_split_diagram, unswap_wedge_diagram,
};
use crate::canonical::{
    flip, forms_swap, forms_unswap, graded_flip, graded_flip_dual, graded_forms_unswap, graded_forms_unswap_dual,
    pairing, tangent_pairing, Bundle, FiberPoint, Naturality,
};
use crate::cartan::{lie_derivative, schouten};
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::fixtures::{general_plane_forms, plane_bracket_closed_form, plane_structure, quadratic_r4, su2_dual};
use crate::poisson::{jacobi_criteria, PoissonStructure};
use crate::random::Sampler;
use crate::scalar::{int, Rational, Scalar};
use crate::tangent::{
    complete_lift, pullback_form_along_field, pullback_mv_along_field, restrict_tensor_to_section, tangent_chart,
    tangent_lift_form, tangent_lift_mv, tangent_lift_scalar, vertical_lift_field, vertical_lift_form, vertical_lift_mv,
    vertical_lift_scalar,
};
use crate::tensor::{contract_form_into_multivector, one_tensor, pair, Form, Multivector, Vector};

/// Options shared by every suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    /// Overrides each randomized check's default trial count.
    pub trials: Option<usize>,
    /// Largest chart dimension drawn (at least 1).
    pub dim: usize,
    /// Largest coefficient degree drawn.
    pub degree: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 7, trials: None, dim: 4, degree: 2 }
    }
}

impl Config {
    fn trials(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }
}

/// Outcome of one named check over some number of cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// All checks of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub criterion: u8,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} (criterion {})\n", self.suite, self.criterion);
        for c in &self.checks {
            let verdict = if c.passed() { "PASS" } else { "FAIL" };
            let ok = c.cases - c.failures.len().min(c.cases);
            out.push_str(&format!("  {verdict} {} {ok}/{}\n", c.name, c.cases));
            for f in c.failures.iter().take(3) {
                out.push_str(&format!("    {f}\n"));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "criterion": self.criterion,
            "pass": self.passed(),
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "cases": c.cases,
                "failed": c.failures.len(),
                "failures": c.failures,
            })).collect::<Vec<_>>(),
        })
    }
}

/// A registered suite.
pub struct Suite {
    pub name: &'static str,
    pub criterion: u8,
    pub summary: &'static str,
    run: fn(&Config) -> Vec<CheckResult>,
}

/// Every suite, in the order `all` runs them.
pub fn registry() -> &'static [Suite] {
    &[
        Suite {
            name: "plane-example",
            criterion: 1,
            summary: "tangent structure and 1-form brackets of x^2 @x^@y",
            run: plane_example,
        },
        Suite { name: "su2-example", criterion: 2, summary: "the linear structure on su(2)*", run: su2_example },
        Suite {
            name: "quadratic-example",
            criterion: 3,
            summary: "the quadratic structure on R^4 and its r-matrix",
            run: quadratic_example,
        },
        Suite {
            name: "lift-schouten",
            criterion: 4,
            summary: "d_T commutes with the Schouten bracket",
            run: lift_schouten,
        },
        Suite {
            name: "lift-relations",
            criterion: 5,
            summary: "brackets and contractions of vertical and complete lifts",
            run: lift_relations,
        },
        Suite {
            name: "lie-derivative",
            criterion: 6,
            summary: "Lie derivatives as pullbacks of tangent lifts along a field",
            run: lie_derivative_suite,
        },
        Suite {
            name: "canonical-maps",
            criterion: 7,
            summary: "canonical involutions, their diagrams and naturality",
            run: canonical_maps,
        },
        Suite {
            name: "poisson-equivalence",
            criterion: 8,
            summary: "cyclic Jacobi condition against the Schouten square",
            run: poisson_equivalence,
        },
        Suite {
            name: "bialgebra",
            criterion: 9,
            summary: "tangent cobrackets, dual brackets and linearization on a corpus",
            run: bialgebra_suite,
        },
    ]
}

pub fn suite_names() -> Vec<&'static str> {
    registry().iter().map(|s| s.name).collect()
}

/// Runs one suite, or every suite for `all`.
pub fn run(name: &str, cfg: &Config) -> Result<Vec<SuiteReport>> {
    if cfg.dim == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    let selected: Vec<&Suite> = if name == "all" {
        registry().iter().collect()
    } else {
        let s = registry()
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::Name(format!("unknown suite {name}; known: all, {}", suite_names().join(", "))))?;
        vec![s]
    };
    Ok(selected
        .into_iter()
        .map(|s| SuiteReport { suite: s.name.to_string(), criterion: s.criterion, checks: (s.run)(cfg) })
        .collect())
}

/// Names accepted by [`check_diagram`].
pub const DIAGRAMS: &[&str] = &[
    "involutions-and-inverses",
    "graded-duality",
    "wedge-diagrams",
    "lift-diagrams",
    "naturality",
    "symplectic-diagram",
    "sharp-relatedness",
    "liouville-identity",
    "closed-form-pullback",
    "relation-diagram",
];

/// One check of the canonical-maps suite.
pub fn check_diagram(name: &str, cfg: &Config) -> Result<CheckResult> {
    if !DIAGRAMS.contains(&name) {
        return Err(Error::Name(format!("unknown diagram {name}; known: {}", DIAGRAMS.join(", "))));
    }
    if cfg.dim == 0 {
        return Err(Error::Domain("dimension must be at least 1".into()));
    }
    canonical_maps(cfg)
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| Error::Internal(format!("diagram {name} missing from its suite")))
}

/// Text report for a list of suites, ending in a summary line.
pub fn report_text(reports: &[SuiteReport], cfg: &Config) -> String {
    let mut out = format!("verify seed={} dim={} degree={}\n", cfg.seed, cfg.dim, cfg.degree);
    for r in reports {
        out.push_str(&r.to_text());
    }
    let cases: usize = reports.iter().flat_map(|r| &r.checks).map(|c| c.cases).sum();
    let failed: usize = reports.iter().flat_map(|r| &r.checks).map(|c| c.failures.len()).sum();
    let verdict = if failed == 0 { "PASS" } else { "FAIL" };
    out.push_str(&format!("{verdict}: {} suites, {cases} cases, {failed} failures\n", reports.len()));
    out
}

// ---------------------------------------------------------------------------
// helpers

/// Deterministic check: a list of labelled predicates.
fn fixed(name: &str, cases: Vec<(String, Result<bool>)>) -> CheckResult {
    let n = cases.len();
    let failures = cases
        .into_iter()
        .filter_map(|(label, r)| match r {
            Ok(true) => None,
            Ok(false) => Some(label),
            Err(e) => Some(format!("{label}: {e}")),
        })
        .collect();
    CheckResult { name: name.to_string(), cases: n, failures }
}

/// Randomized check over `trials` seeded trials; the closure returns a
/// failure description, or `None` when the identity holds.
fn sampled<F>(cfg: &Config, name: &str, trials: usize, f: F) -> CheckResult
where
    F: Fn(&mut Sampler, usize) -> Result<Option<String>> + Sync,
{
    let mut failures: Vec<(usize, String)> = (0..trials)
        .into_par_iter()
        .filter_map(|t| {
            let mut s = Sampler::for_trial(cfg.seed, name, t);
            match f(&mut s, t) {
                Ok(None) => None,
                Ok(Some(msg)) => Some((t, format!("trial {t}: {msg}"))),
                Err(e) => Some((t, format!("trial {t}: error: {e}"))),
            }
        })
        .collect();
    failures.sort_by_key(|(t, _)| *t);
    CheckResult { name: name.to_string(), cases: trials, failures: failures.into_iter().map(|(_, m)| m).collect() }
}

fn fail_unless(ok: bool, msg: impl FnOnce() -> String) -> Option<String> {
    (!ok).then(msg)
}

const NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

fn chart_of(n: usize) -> Chart {
    Chart::new("M", &NAMES[..n], &[]).expect("valid chart")
}

/// Dimension in `lo..=max(lo, cfg.dim)` drawn from the trial stream.
fn dim_at_least(s: &mut Sampler, cfg: &Config, lo: usize) -> usize {
    let hi = cfg.dim.max(lo);
    s.int_in(lo as i64, hi as i64) as usize
}

fn q(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| int(x)).collect()
}

// ---------------------------------------------------------------------------
// worked examples

fn plane_example(_: &Config) -> Vec<CheckResult> {
    let p = plane_structure();
    let m = p.chart().clone();
    let x = m.coord(0);
    let display = (|| -> Result<bool> {
        let tp = p.tangent()?;
        let tc = tp.chart().clone();
        let t = |a: usize, b: usize| Multivector::term(&tc, &[a, b], tc.one());
        let (tx, txd) = (tc.coord(0), tc.coord(2));
        let expect =
            t(2, 1)?.try_add(&t(0, 3)?)?.scale(&tx.pow(2)).try_add(&t(2, 3)?.scale(&(&tx * &txd).scale(&int(2))))?;
        Ok(tp.bivector() == &expect)
    })();
    let dx = Form::term(&m, &[0], m.one()).expect("in range");
    let dy = Form::term(&m, &[1], m.one()).expect("in range");
    let xdy = dy.scale(&x);
    let b1 = p.one_form_bracket(&xdy, &dy).map(|b| b == dy.scale(&x.pow(2)));
    let b2 = p.one_form_bracket(&xdy, &dx).map(|b| b == dx.scale(&x.pow(2).scale(&int(-2))));
    let general = general_plane_forms().and_then(|(gp, mu, eta)| {
        let identity = gp.tangent_bracket_identity(&mu, &eta, PoissonStructure::one_form_bracket)?;
        let closed = gp.one_form_bracket(&mu, &eta)? == plane_bracket_closed_form(&mu, &eta);
        let contracted = gp.one_form_bracket(&mu, &eta)? == gp.one_form_bracket_contracted(&mu, &eta)?;
        Ok(identity && closed && contracted)
    });
    vec![
        fixed("tangent-structure-display", vec![("d_T of x^2 @x^@y".into(), display)]),
        fixed("one-form-brackets", vec![("{x dy, dy} = x^2 dy".into(), b1), ("{x dy, dx} = -2 x^2 dx".into(), b2)]),
        fixed("general-forms-identity", vec![("symbolic degree-2 coefficients".into(), general)]),
    ]
}

fn su2_example(_: &Config) -> Vec<CheckResult> {
    let s = su2_dual();
    let e = s.chart().clone();
    let c = |i| e.coord(i);
    let display = (|| -> Result<bool> {
        let tp = s.tangent()?;
        let tc = tp.chart().clone();
        let w = |i| tc.coord(i);
        let t = |a: usize, b: usize| Multivector::term(&tc, &[a, b], tc.one());
        let mut expect = Multivector::zero(&tc, 2);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            expect = expect.try_add(&t(i + 3, j)?.try_add(&t(i, j + 3)?)?.scale(&w(k)))?;
            expect = expect.try_add(&t(i + 3, j + 3)?.scale(&w(k + 3)))?;
        }
        Ok(tp.bivector() == &expect)
    })();
    let f0 = &(&c(0).pow(2) + &c(1).pow(2)) + &c(2).pow(2);
    let casimirs = (|| -> Result<bool> {
        let tp = s.tangent()?;
        let tc = tp.chart().clone();
        let f1 = (0..3).map(|i| &tc.coord(i) * &tc.coord(i + 3)).fold(tc.zero(), |a, b| &a + &b);
        Ok(s.is_casimir(&f0)?
            && tp.is_casimir(&vertical_lift_scalar(&tc, &f0))?
            && tp.is_casimir(&f1)?
            && tangent_lift_scalar(&tc, &f0) == f1.scale(&int(2)))
    })();
    let rank =
        (|| -> Result<bool> { Ok(s.rank_at(&q(&[1, 0, 0]))?.rank == 2 && s.rank_at(&q(&[0, 0, 0]))?.rank == 0) })();
    let linear = (|| -> Result<bool> {
        let lin = s.linearize_at(&[e.zero(), e.zero(), e.zero()])?;
        let lc = lin.chart().clone();
        let relabel = s.bivector().map_coefficients(&lc, |f| f.reindex(lc.table(), &[0, 1, 2]));
        Ok(lin == relabel && lc.coords().iter().all(|n| n.ends_with("_dot")))
    })();
    vec![
        fixed("validates", vec![("su(2)* structure".into(), jacobi_criteria(s.bivector()).map(|r| r == (true, true)))]),
        fixed("tangent-structure-display", vec![("d_T of the su(2)* structure".into(), display)]),
        fixed("casimirs", vec![("f0, v_T f0 and f1".into(), casimirs)]),
        fixed("rank", vec![("rank 2 at (1,0,0), 0 at the origin".into(), rank)]),
        fixed("linearization-at-origin", vec![("equals the structure in dotted coordinates".into(), linear)]),
    ]
}

fn quadratic_example(_: &Config) -> Vec<CheckResult> {
    let p = quadratic_r4();
    let m = p.chart().clone();
    let on = [[1, 0, 0, 0], [0, 1, 0, 0], [3, -2, 0, 0], [0, 0, 0, 0], [-5, 7, 0, 0]];
    let off = [[1, 0, 1, 0], [0, 0, 0, 1], [2, 1, -1, 3], [0, 1, 1, 1], [1, 1, 0, 2]];
    let mut locus: Vec<(String, Result<bool>)> = Vec::new();
    for pt in on {
        locus.push((format!("rank 0 at {pt:?}"), p.rank_at(&q(&pt)).map(|r| r.rank == 0)));
    }
    for pt in off {
        locus.push((format!("rank > 0 at {pt:?}"), p.rank_at(&q(&pt)).map(|r| r.rank > 0)));
    }
    let table = (|| -> Result<bool> {
        let pt = vec![m.var("c")?, m.var("s")?, m.zero(), m.zero()];
        let lp = PoissonStructure::new(p.linearize_at(&pt)?)?;
        let lc = lp.chart().clone();
        let d = |i| lc.coord(i);
        let (c, s) = (lc.var("c")?, lc.var("s")?);
        Ok(lp.bracket(&d(0), &d(2))? == &s * &d(2)
            && lp.bracket(&d(0), &d(3))? == &s * &d(3)
            && lp.bracket(&d(1), &d(2))? == (&c * &d(2)).negate()
            && lp.bracket(&d(1), &d(3))? == (&c * &d(3)).negate()
            && lp.bracket(&d(0), &d(1))?.is_zero()
            && lp.bracket(&d(2), &d(3))?.is_zero())
    })();
    let unit = vec![m.one(), m.zero(), m.zero(), m.zero()];
    let dual = (|| -> Result<bool> {
        let lp = PoissonStructure::new(p.linearize_at(&unit)?)?;
        let e = |i| lp.chart().coord(i);
        Ok(lp.bracket(&e(3), &e(1))? == e(3)
            && lp.bracket(&e(2), &e(1))? == e(2)
            && lp.bracket(&e(3), &e(2))?.is_zero())
    })();
    let g = LieAlgebraData::su2();
    let r = RMatrix::from_terms(3, &[(1, 2, int(1))]).expect("in range");
    let rmatrix = (|| -> Result<bool> {
        let lift = lift_rmatrix(&r, &g)?;
        let tg = g.tangent();
        let d = coboundary_cobracket(&r, &g)?;
        // the linearization at the unit, restricted to the last three coordinates, is δ_r
        let full = Cobracket::from_linear_bivector(&p.linearize_at(&unit)?)?;
        let restricted: Vec<Element> = (1..4)
            .map(|k| full.image(k).iter().map(|(ix, c)| (ix.iter().map(|&i| i - 1).collect(), c.clone())).collect())
            .collect();
        Ok(gybe_check(&r, &g)?
            && gybe_check(&lift, &tg)?
            && lift == lift_rmatrix_via_tangent_lift(&r, &g)?
            && full.image(0).is_empty()
            && Cobracket::new(restricted)? == d
            && tangent_cobracket(&g, &d)? == coboundary_cobracket(&lift, &tg)?)
    })();
    vec![
        fixed(
            "validates",
            vec![("quadratic structure".into(), jacobi_criteria(p.bivector()).map(|r| r == (true, true)))],
        ),
        fixed("rank-locus", locus),
        fixed("linearization-table", vec![("symbolic point (c, s, 0, 0)".into(), table)]),
        fixed("dual-bracket-at-unit", vec![("point (1, 0, 0, 0)".into(), dual)]),
        fixed("r-matrix", vec![("gybe, lift and coboundary".into(), rmatrix)]),
    ]
}

// ---------------------------------------------------------------------------
// randomized identities

fn lift_schouten(cfg: &Config) -> Vec<CheckResult> {
    let pairs: Vec<(usize, usize)> = (1..=3).flat_map(|p| (1..=3).map(move |q| (p, q))).collect();
    vec![sampled(cfg, "lifted-schouten", cfg.trials(54), |s, t| {
        let (p, qd) = pairs[t % pairs.len()];
        let n = dim_at_least(s, cfg, p.max(qd));
        let m = chart_of(n);
        let x: Multivector = s.tensor(&m, p, cfg.degree, 0.6);
        let y: Multivector = s.tensor(&m, qd, cfg.degree, 0.6);
        let lhs = schouten(&tangent_lift_mv(&x)?, &tangent_lift_mv(&y)?)?;
        let rhs = tangent_lift_mv(&schouten(&x, &y)?)?;
        Ok(fail_unless(lhs == rhs, || format!("degrees ({p},{qd}) dim {n}: X = {x}, Y = {y}")))
    })]
}

fn lift_relations(cfg: &Config) -> Vec<CheckResult> {
    let brackets = sampled(cfg, "field-lift-brackets", cfg.trials(50), |s, _| {
        let n = dim_at_least(s, cfg, 1);
        let m = chart_of(n);
        let x: Multivector = s.tensor(&m, 1, cfg.degree, 0.8);
        let y: Multivector = s.tensor(&m, 1, cfg.degree, 0.8);
        let xy = schouten(&x, &y)?;
        let (xv, yv) = (vertical_lift_field(&x)?, vertical_lift_field(&y)?);
        let (xc, yc) = (complete_lift(&x)?, complete_lift(&y)?);
        let ok = schouten(&xv, &yv)?.is_zero()
            && schouten(&xc, &yc)? == complete_lift(&xy)?
            && schouten(&xv, &yc)? == vertical_lift_field(&xy)?;
        Ok(fail_unless(ok, || format!("X = {x}, Y = {y}")))
    });
    let pairings = sampled(cfg, "one-form-pairings", cfg.trials(50), |s, _| {
        let n = dim_at_least(s, cfg, 1);
        let m = chart_of(n);
        let tc = tangent_chart(&m)?;
        let x: Multivector = s.tensor(&m, 1, cfg.degree, 0.8);
        let mu: Form = s.tensor(&m, 1, cfg.degree, 0.8);
        let base = pair(&x, &mu)?;
        let (vx, dx) = (vertical_lift_mv(&x)?, tangent_lift_mv(&x)?);
        let (vm, dm) = (vertical_lift_form(&mu)?, tangent_lift_form(&mu)?);
        let vb = vertical_lift_scalar(&tc, &base);
        let ok = pair(&vx, &vm)?.is_zero()
            && pair(&vx, &dm)? == vb
            && pair(&dx, &vm)? == vb
            && pair(&dx, &dm)? == tangent_lift_scalar(&tc, &base);
        Ok(fail_unless(ok, || format!("X = {x}, mu = {mu}")))
    });
    let contractions = sampled(cfg, "multivector-contractions", cfg.trials(50), |s, t| {
        let r = 1 + t % 3;
        let n = dim_at_least(s, cfg, r);
        let m = chart_of(n);
        let x: Multivector = s.tensor(&m, r, cfg.degree, 0.7);
        let mu: Form = s.tensor(&m, 1, cfg.degree, 0.8);
        let inner = contract_form_into_multivector(&mu, &x)?;
        let (vx, dx) = (vertical_lift_mv(&x)?, tangent_lift_mv(&x)?);
        let (vm, dm) = (vertical_lift_form(&mu)?, tangent_lift_form(&mu)?);
        let ok = contract_form_into_multivector(&vm, &dx)? == vertical_lift_mv(&inner)?
            && contract_form_into_multivector(&dm, &dx)? == tangent_lift_mv(&inner)?
            && contract_form_into_multivector(&vm, &vx)?.is_zero();
        Ok(fail_unless(ok, || format!("degree {r}: X = {x}, mu = {mu}")))
    });
    let high = sampled(cfg, "high-degree-pairings-vanish", cfg.trials(20), |s, _| {
        let n = dim_at_least(s, cfg, 3);
        let m = chart_of(n);
        let x: Multivector = s.tensor(&m, 3, cfg.degree, 0.7);
        let mu: Form = s.tensor(&m, 3, cfg.degree, 0.7);
        Ok(fail_unless(pair(&tangent_lift_mv(&x)?, &tangent_lift_form(&mu)?)?.is_zero(), || {
            format!("X = {x}, mu = {mu}")
        }))
    });
    vec![brackets, pairings, contractions, high]
}

fn lie_derivative_suite(cfg: &Config) -> Vec<CheckResult> {
    let forms = sampled(cfg, "forms-as-pullbacks", cfg.trials(50), |s, t| {
        let r = t % 3;
        let n = dim_at_least(s, cfg, r.max(1));
        let m = chart_of(n);
        let x: Multivector = s.tensor(&m, 1, cfg.degree, 0.8);
        let mu: Form = s.tensor(&m, r, cfg.degree, 0.8);
        let ok = lie_derivative(&x, &mu)? == pullback_form_along_field(&x, &tangent_lift_form(&mu)?)?;
        Ok(fail_unless(ok, || format!("X = {x}, mu = {mu}")))
    });
    let fields = sampled(cfg, "multivectors-as-pullbacks", cfg.trials(50), |s, t| {
        let r = t % 3;
        let n = dim_at_least(s, cfg, r.max(1));
        let m = chart_of(n);
        let x: Multivector = s.tensor(&m, 1, cfg.degree, 0.8);
        let bivector: Multivector = s.tensor(&m, r, cfg.degree, 0.8);
        let ok = lie_derivative(&x, &bivector)? == pullback_mv_along_field(&x, &tangent_lift_mv(&bivector)?)?
            && bivector == pullback_mv_along_field(&x, &vertical_lift_mv(&bivector)?)?;
        Ok(fail_unless(ok, || format!("X = {x}, structure = {bivector}")))
    });
    vec![
        forms,
        fields,
        fixed("line-decomposition", vec![("general X, Y of degree 3 on R".into(), line_decomposition())]),
    ]
}

/// On the line: `d_T Y` along the section of `X` splits into `Y` times the
/// horizontal vector `∂x + X'∂ẋ` and the vertical lift of `[X, Y]`.
fn line_decomposition() -> Result<bool> {
    let params: Vec<String> = ['a', 'b'].iter().flat_map(|p| (0..4).map(move |k| format!("{p}{k}"))).collect();
    let refs: Vec<&str> = params.iter().map(String::as_str).collect();
    let r = Chart::new("R", &["x"], &refs)?;
    let poly = |p: char| -> Result<Scalar> {
        (0..4).try_fold(r.zero(), |acc, k| Ok(&acc + &(&r.var(&format!("{p}{k}"))? * &r.coord(0).pow(k))))
    };
    let (xf, yf) = (poly('a')?, poly('b')?);
    let x = one_tensor::<Vector>(&r, std::slice::from_ref(&xf));
    let y = one_tensor::<Vector>(&r, std::slice::from_ref(&yf));
    let tc = tangent_chart(&r)?;
    let lift = |f: &Scalar| vertical_lift_scalar(&tc, f);
    let along = restrict_tensor_to_section(&x, &tangent_lift_mv(&y)?);
    let expect_along = one_tensor::<Vector>(&tc, &[lift(&yf), &lift(&yf.partial_at(0)) * &lift(&xf)]);
    let horizontal = one_tensor::<Vector>(&tc, &[tc.one(), lift(&xf.partial_at(0))]);
    let vertical = along.try_sub(&horizontal.scale(&lift(&yf)))?;
    let bracket = &(&xf * &yf.partial_at(0)) - &(&yf * &xf.partial_at(0));
    let expect_vertical = one_tensor::<Vector>(&tc, &[tc.zero(), lift(&bracket)]);
    Ok(along == expect_along
        && vertical == expect_vertical
        && vertical_lift_mv(&lie_derivative(&x, &y)?)? == expect_vertical
        && pullback_mv_along_field(&x, &tangent_lift_mv(&y)?)? == one_tensor::<Vector>(&r, &[bracket]))
}

fn canonical_maps(cfg: &Config) -> Vec<CheckResult> {
    let maxn = cfg.dim.min(3);
    let involutions = sampled(cfg, "involutions-and-inverses", cfg.trials(20), |s, _| {
        let n = s.int_in(1, maxn as i64) as usize;
        let v = s.fiber_point(Bundle::VectorsOnTangent, n, 1);
        let w = s.fiber_point(Bundle::TangentOfForms, n, 1);
        let a = s.fiber_point(Bundle::FormsOnTangent, n, 1);
        let w2 = s.fiber_point_over(Bundle::TangentOfForms, v.x(), v.v(), 1);
        let dual = pairing(&v, &forms_swap(&w2)?)? == tangent_pairing(&ttm_as_tangent_of_vectors(&flip(&v)?)?, &w2)?;
        let ok = flip(&flip(&v)?)? == v
            && forms_unswap(&forms_swap(&w)?)? == w
            && forms_swap(&forms_unswap(&a)?)? == a
            && dual;
        Ok(fail_unless(ok, || format!("dim {n}")))
    });
    let duality = sampled(cfg, "graded-duality", cfg.trials(24), |s, t| {
        let n = s.int_in(1, maxn as i64) as usize;
        let r = t % (n + 1);
        let u = s.fiber_point(Bundle::VectorsOnTangent, n, r);
        let ku = graded_flip(&u)?;
        let w = s.fiber_point_over(Bundle::TangentOfForms, ku.x(), ku.v(), r);
        let a = s.fiber_point(Bundle::FormsOnTangent, n, r);
        let ea = graded_forms_unswap(&a)?;
        let tv = s.fiber_point_over(Bundle::TangentOfVectors, ea.x(), ea.v(), r);
        let ok = tangent_pairing(&ku, &w)? == pairing(&u, &graded_flip_dual(&w)?)?
            && tangent_pairing(&tv, &ea)? == pairing(&graded_forms_unswap_dual(&tv)?, &a)?;
        Ok(fail_unless(ok, || format!("dim {n} degree {r}")))
    });
    let wedges = sampled(cfg, "wedge-diagrams", cfg.trials(24), |s, t| {
        let n = s.int_in(1, maxn as i64) as usize;
        let r = 1 + t % 3;
        let x = s.rationals(n, 3);
        let v = s.rationals(n, 3);
        let vs: Vec<FiberPoint> = (0..r).map(|_| s.fiber_point_over(Bundle::VectorsOnTangent, &x, &v, 1)).collect();
        let as_: Vec<FiberPoint> = (0..r).map(|_| s.fiber_point_over(Bundle::FormsOnTangent, &x, &v, 1)).collect();
        let i = s.int_in(0, r as i64) as usize;
        let u = s.fiber_point_over(Bundle::VectorsOnTangent, &x, &v, i);
        let w = s.fiber_point_over(Bundle::VectorsOnTangent, &x, &v, r - i);
        let a = s.fiber_point_over(Bundle::FormsOnTangent, &x, &v, i);
        let b = s.fiber_point_over(Bundle::FormsOnTangent, &x, &v, r - i);
        let ok = flip_wedge_diagram(&vs)?.holds()
            && unswap_wedge_diagram(&as_)?.holds()
            && flip_split_diagram(&u, &w)?.holds()
            && unswap_split_diagram(&a, &b)?.holds();
        Ok(fail_unless(ok, || format!("dim {n} degree {r} split {i}")))
    });
    let lifts = sampled(cfg, "lift-diagrams", cfg.trials(24), |s, t| {
        let n = s.int_in(1, maxn as i64) as usize;
        let r = t % (n.min(3) + 1);
        let i = s.int_in(0, r as i64) as usize;
        let m = chart_of(n);
        let mu: Form = s.tensor(&m, r, cfg.degree, 0.8);
        let u = s.fiber_point(Bundle::VectorsOnTangent, n, i);
        let x: Multivector = s.tensor(&m, r, cfg.degree, 0.8);
        let a = s.fiber_point(Bundle::FormsOnTangent, n, i);
        let ok = tangent_lift_form_diagram(&mu, &u)?.holds() && tangent_lift_mv_diagram(&x, &a)?.holds();
        Ok(fail_unless(ok, || format!("dim {n} degree {r} contraction {i}")))
    });
    let natural = sampled(cfg, "naturality", cfg.trials(10), |s, _| {
        let n = s.int_in(1, maxn as i64) as usize;
        let k = s.int_in(1, maxn as i64) as usize;
        let m = chart_of(n);
        let tgt = Chart::new("N", &["u", "v", "s"][..k], &[])?;
        let phi = s.polymap(&m, &tgt, cfg.degree);
        let nat = Naturality::new(&phi)?;
        for r in 0..=n.min(k).min(2) {
            let u = s.fiber_point(Bundle::VectorsOnTangent, n, r);
            let tv = s.fiber_point(Bundle::TangentOfVectors, n, r);
            let x = s.rationals(n, 3);
            let xdot = s.rationals(n, 3);
            let (y, ydot) = nat.tangent_point(&x, &xdot);
            let a = s.fiber_point_over(Bundle::FormsOnTangent, &y, &ydot, r);
            let w = s.fiber_point_over(Bundle::TangentOfForms, &y, &ydot, r);
            let ok = nat.flip(&u)?.holds()
                && nat.forms_unswap_dual(&tv)?.holds()
                && nat.forms_unswap(&x, &xdot, &a)?.holds()
                && nat.flip_dual(&x, &xdot, &w)?.holds();
            if !ok {
                return Ok(Some(format!("degree {r}, map {n} -> {k}")));
            }
        }
        Ok(None)
    });
    let symplectic = (|| -> Result<(bool, bool)> {
        let m = chart_of(2);
        let area = Form::term(&m, &[0, 1], m.one())?;
        let v = FiberPoint::ttm(q(&[1, 2]), q(&[0, -1]), q(&[3, 1]), q(&[2, 2]))?;
        let r3 = Chart::new("R3", &["x1", "x2", "x3"], &[])?;
        let bad = Form::term(&r3, &[1, 2], r3.coord(0))?;
        let w = FiberPoint::ttm(q(&[1, 1, 1]), q(&[1, 2, 0]), q(&[0, 1, 3]), q(&[2, 0, 1]))?;
        Ok((symplectic_flat_diagram(&area, &v)?.holds(), symplectic_flat_diagram(&bad, &w)?.holds()))
    })();
    let (area_ok, bad_ok) = match &symplectic {
        Ok((a, b)) => (Ok(*a), Ok(!*b)),
        Err(e) => (Err(e.clone()), Err(e.clone())),
    };
    let mut related: Vec<(String, Result<bool>)> = vec![
        ("plane".into(), sharp_relatedness(plane_structure().bivector())),
        ("su(2)*".into(), sharp_relatedness(su2_dual().bivector())),
    ];
    let m3 = chart_of(3);
    let non_jacobi = (|| -> Result<Multivector> {
        let t = |a: usize, b: usize| Multivector::term(&m3, &[a, b], m3.one());
        t(0, 1)?.scale(&(&m3.coord(0) + &m3.coord(1))).try_add(&t(1, 2)?)?.try_sub(&t(2, 0)?)
    })();
    related
        .push(("non-Jacobi bivector is rejected".into(), non_jacobi.and_then(|b| sharp_relatedness(&b).map(|r| !r))));
    for t in 0..4 {
        let mut s = Sampler::for_trial(cfg.seed, "relatedness-corpus", t);
        let n = 2 + t % 3;
        let bivector = s.poisson_bivector(&chart_of(n));
        related.push((format!("random structure {t} in dim {n}"), sharp_relatedness(&bivector)));
    }
    let liouville = sampled(cfg, "liouville-identity", cfg.trials(12), |s, t| {
        let n = s.int_in(1, maxn as i64) as usize;
        let r = 1 + t % n;
        let mu: Form = s.tensor(&chart_of(n), r, cfg.degree, 0.8);
        Ok(fail_unless(liouville_identity(&mu)?, || format!("mu = {mu}")))
    });
    let pullback = sampled(cfg, "closed-form-pullback", cfg.trials(12), |s, _| {
        let n = s.int_in(2, maxn.max(2) as i64) as usize;
        let w: Form = s.tensor(&chart_of(n), 2, cfg.degree, 0.7);
        let closed = crate::cartan::exterior_d(&w).is_zero();
        let (a, b) = closed_form_pullback(&w)?;
        Ok(fail_unless(a == b && a == closed, || format!("two_form = {w}: closed {closed}, got ({a}, {b})")))
    });
    let relation = {
        let plane = plane_structure();
        let cases = [q(&[1, 2]), q(&[0, 3])]
            .into_iter()
            .map(|base| {
                let label = format!("plane structure over {base:?}");
                let r = poisson_relation_diagram(plane.bivector(), &base, &q(&[1, -1]), &q(&[2, 5]), &q(&[-3, 1]))
                    .map(|c| c.forward && c.reverse);
                (label, r)
            })
            .collect();
        fixed("relation-diagram", cases)
    };
    vec![
        involutions,
        duality,
        wedges,
        lifts,
        natural,
        fixed(
            "symplectic-diagram",
            vec![("closed area form commutes".into(), area_ok), ("x1 dx2^dx3 fails".into(), bad_ok)],
        ),
        fixed("sharp-relatedness", related),
        liouville,
        pullback,
        relation,
    ]
}

fn poisson_equivalence(cfg: &Config) -> Vec<CheckResult> {
    let agree = sampled(cfg, "cyclic-versus-schouten", cfg.trials(200), |s, t| {
        let n = dim_at_least(s, cfg, 2).min(4).max(2.min(cfg.dim));
        let m = chart_of(n);
        let bivector: Multivector = if t % 2 == 0 { s.poisson_bivector(&m) } else { s.tensor(&m, 2, cfg.degree, 0.6) };
        let (cyclic, square) = jacobi_criteria(&bivector)?;
        let expected_poisson = t % 2 == 0;
        let ok = cyclic == square && (!expected_poisson || cyclic);
        Ok(fail_unless(ok, || format!("cyclic {cyclic}, square {square}: {bivector}")))
    });
    let g = LieAlgebraData::su2();
    let linear = (|| -> Result<bool> {
        let c = g.chart("g")?;
        let v = LinearSharp::of_bivector(&g.linear_bivector(&c)?)?.verdict();
        Ok(v.skew && v.identity && v.conjugate_is_lie)
    })();
    let non_example = (|| -> Result<bool> {
        let mut l = vec![vec![vec![int(0); 3]; 3]; 3];
        for (k, i, j) in [(0, 0, 1), (1, 1, 2), (2, 2, 0)] {
            l[k][i][j] = int(1);
            l[k][j][i] = int(-1);
        }
        let v = LinearSharp::new(l)?.verdict();
        Ok(v.skew && !v.identity && !v.conjugate_is_lie && v.consistent())
    })();
    vec![
        agree,
        fixed("linear-characterization", vec![("su(2)".into(), linear), ("non-Jacobi linear map".into(), non_example)]),
    ]
}

fn bialgebra_suite(cfg: &Config) -> Vec<CheckResult> {
    let random = cfg.trials(8);
    let corpus = bialgebra_corpus(cfg.seed, random);
    let mut checks = vec![
        ("validates", Vec::new()),
        ("tangent-cobracket", Vec::new()),
        ("dual-compatibility", Vec::new()),
        ("linearization-bridge", Vec::new()),
    ];
    for (name, g, d) in &corpus {
        let label = || name.clone();
        checks[0]
            .1
            .push((label(), validate_bialgebra(g, d).map(|v| v.holds()).map(|ok| ok && dual_bracket(g, d).is_ok())));
        checks[1].1.push((
            label(),
            tangent_cobracket(g, d)
                .and_then(|t| Ok(t == tangent_cobracket_explicit(d) && validate_bialgebra(&g.tangent(), &t)?.holds())),
        ));
        checks[2].1.push((label(), dual_tangent_compatible(g, d)));
        checks[3].1.push((label(), linearization_bridge(g, d)));
    }
    let su2 = LieAlgebraData::su2();
    let lifts = sampled(cfg, "rmatrix-lifts", random, |s, _| {
        let r = random_rmatrix(s, 3);
        let tg = su2.tangent();
        let lift = lift_rmatrix(&r, &su2)?;
        let d = coboundary_cobracket(&r, &su2)?;
        let ok = gybe_check(&r, &su2)?
            && gybe_check(&lift, &tg)?
            && lift == lift_rmatrix_via_tangent_lift(&r, &su2)?
            && tangent_cobracket(&su2, &d)? == coboundary_cobracket(&lift, &tg)?;
        Ok(fail_unless(ok, || format!("r = {:?}", r.components())))
    });
    let mut out: Vec<CheckResult> = checks.into_iter().map(|(n, c)| fixed(n, c)).collect();
    out.push(lifts);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn registry_names_are_unique() {
        let mut names = suite_names();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), registry().len());
        assert!(run("nope", &Config::default()).is_err());
    }

    #[test]
    fn fractional_points_keep_rank() {
        let p = quadratic_r4();
        assert_eq!(p.rank_at(&[rat(1, 2), rat(-2, 3), int(0), int(0)]).unwrap().rank, 0);
    }
}
