use tanlift::dsl::verbs::{ADVERTISED, VERBS};
use tanlift::dsl::{parse, parse_syntax, run_source, Session, Verdict};
use tanlift::verify::Config;
use tanlift::Error;

const EXAMPLES: &[&str] = &["su2_star", "plane", "quadratic_r4", "bialgebras"];

fn example(name: &str) -> String {
    std::fs::read_to_string(format!("{}/examples/{name}.tl", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn cfg() -> Config {
    Config::default()
}

#[test]
fn examples_match_golden_reports() {
    for name in EXAMPLES {
        let got = run_source(&example(name), &cfg()).unwrap().to_text();
        let want = std::fs::read_to_string(format!("{}/tests/golden/{name}.txt", env!("CARGO_MANIFEST_DIR"))).unwrap();
        assert_eq!(got, want, "golden report for {name}");
    }
}

#[test]
fn plane_script_reports_the_two_brackets() {
    let r = run_source(&example("plane"), &cfg()).unwrap();
    let texts: Vec<&str> = r.entries.iter().flat_map(|e| &e.structures).map(|s| s.text.as_str()).collect();
    assert!(texts.contains(&"x^2 * dy"));
    assert!(texts.contains(&"-2*x^2 * dx"));
    assert!(texts.contains(&"x^2 * @x^@y_dot - x^2 * @y^@x_dot + 2*x*x_dot * @x_dot^@y_dot"));
}

#[test]
fn minimal_script_and_empty_script() {
    let r = run_source("chart M(x,y); mv L : 2 on M = x^2 * @x^@y; jacobi L;", &cfg()).unwrap();
    assert_eq!(r.entries.len(), 1);
    assert_eq!(r.entries[0].verdict, Verdict::Pass);
    let empty = run_source("  # nothing\n", &cfg()).unwrap();
    assert!(empty.entries.is_empty());
    assert_eq!(empty.to_text(), "");
    assert_eq!(empty.to_json()["entries"], serde_json::json!([]));
}

#[test]
fn use_before_declaration_is_a_name_error() {
    let e = parse("mv L : 2 on M = x^2 * @x^@y;\nchart M(x,y);").unwrap_err();
    assert!(matches!(&e, Error::Name(m) if m.starts_with("1:1:")), "{e}");
    let e = parse("chart M(x,y);\nmv L : 2 on M = z * @x^@y;").unwrap_err();
    assert!(matches!(&e, Error::Name(m) if m.starts_with("2:1:") && m.contains("`z`")), "{e}");
    assert!(matches!(parse("chart M(x); chart M(y);"), Err(Error::Name(_))));
    assert!(matches!(parse("frobnicate;"), Err(Error::Name(_))));
}

#[test]
fn argument_kinds_are_checked_before_running() {
    let base = "chart M(x,y); form a : 1 on M = dx; mv L : 2 on M = @x^@y; ";
    for bad in
        ["ham a x;", "bracket L x x;", "rank L;", "it L;", "lift-complete L;", "jacobi a;", "verify all --seed x;"]
    {
        let e = parse(&format!("{base}{bad}")).unwrap_err();
        assert!(matches!(e, Error::Type(_) | Error::Name(_)), "{bad}: {e}");
    }
}

#[test]
fn runtime_type_errors_carry_statement_and_location() {
    let f = run_source("chart M(x,y);\nform w : 2 on M = dx * dy;", &cfg()).unwrap_err();
    assert_eq!(f.statement, Some(2));
    assert!(matches!(&f.error, Error::Type(m) if m.starts_with("2:1:") && m.contains("`^`")), "{}", f.error);
    let f = run_source("chart M(x,y);\nform w : 2 on M = dx;", &cfg()).unwrap_err();
    assert!(matches!(&f.error, Error::Type(m) if m.contains("declared a 2-form")));
    let f = run_source("chart M(x,y,z);\npoisson P on M = (x+y) * @x^@y + @y^@z - @z^@x;", &cfg()).unwrap_err();
    assert!(matches!(f.error, Error::JacobiFailure { .. }), "{}", f.error);
}

#[test]
fn jacobi_failure_is_a_verdict_with_witness() {
    let r = run_source("chart M(x,y,z); mv B : 2 on M = (x+y) * @x^@y + @y^@z - @z^@x; jacobi B;", &cfg()).unwrap();
    assert_eq!(r.entries[0].verdict, Verdict::Fail);
    assert_eq!(r.entries[0].witnesses, vec!["cyclic sum at (x, y, z) is 2".to_string()]);
    assert!(!r.passed());
}

#[test]
fn print_then_parse_is_identity() {
    let mut sources: Vec<String> = EXAMPLES.iter().map(|n| example(n)).collect();
    sources.push("chart M(x) params(a, b); scalar f on M = -(-x) - -a*b^2 + (a - b) * (-x); show f;".into());
    sources.push("map phi : M -> N = (x^2, 1/2*y - 3); point p on M = (1/3, 0);".into());
    sources.push("liealg g(a, b) { [a, b] = 2*a - b; } cobracket d on g { a = a^b; } rmatrix r on g = -a^b;".into());
    sources.push("check-diagram wedge-diagrams --trials 2 --dim 2; verify lift-schouten --seed 3;".into());
    for src in sources {
        let ast = parse_syntax(&src).unwrap();
        let printed = ast.to_string();
        assert_eq!(parse_syntax(&printed).unwrap(), ast, "{printed}");
    }
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let src =
        format!("{}\ncheck-diagram naturality --trials 3;\nverify lift-schouten --trials 5;", example("su2_star"));
    let a = run_source(&src, &cfg()).unwrap();
    let b = run_source(&src, &cfg()).unwrap();
    assert_eq!(a.to_text(), b.to_text());
    assert_eq!(a.to_json().to_string(), b.to_json().to_string());
    assert_eq!(a.to_json()["schema"], 1);
}

#[test]
fn every_advertised_verb_is_registered_and_reachable() {
    for v in ADVERTISED {
        assert!(VERBS.iter().any(|s| s.name == *v), "{v} missing from the registry");
    }
    let script = "
        chart M(x, y);
        chart N(u, v);
        poisson L on M = x^2 * @x^@y;
        poisson K on N = @u^@v;
        mv X : 1 on M = @y;
        form mu : 1 on M = x * dy;
        scalar f on M = x * y;
        point p on M = (1, 2);
        point z on M = (0, 0);
        map phi : M -> N = (x, y);
        liealg su2 { [e1,e2]=e3; [e2,e3]=e1; [e3,e1]=e2; }
        rmatrix r on su2 = e2^e3;
        cobracket d on su2 { e2 = -e1^e2; e3 = -e1^e3; }
        jacobi L;
        bracket L f (x);
        ham L f;
        tangent-poisson L;
        casimir L f;
        rank L --at p;
        linearize L --at z;
        canonical-field L X;
        poisson-map phi L K;
        dt mu;
        vt f;
        it mu;
        lift-complete X;
        lift-vertical X;
        bialgebra validate d;
        bialgebra dual d;
        bialgebra tangent d;
        rmatrix gybe r;
        rmatrix lift r;
        rmatrix cobracket r;
        check-diagram lift-diagrams --trials 2;
        verify su2-example;
        show L;
    ";
    let r = run_source(script, &cfg()).unwrap();
    let used: Vec<String> = r.entries.iter().map(|e| e.command.clone()).collect();
    for v in VERBS {
        assert!(used.iter().any(|c| c.starts_with(&format!("{} ", v.name))), "{} not exercised", v.name);
    }
}

#[test]
fn sessions_accumulate_declarations() {
    let mut s = Session::new(cfg());
    s.eval("chart M(x, y);").unwrap();
    s.eval("poisson L on M = x^2 * @x^@y;").unwrap();
    let r = s.eval("bracket L x y;").unwrap();
    assert_eq!(r.entries[0].structures[0].text, "x^2");
    // a failed parse leaves the session unchanged
    assert!(s.eval("scalar f on M = w;").is_err());
    assert!(s.eval("scalar f on M = x;").is_ok());
    assert_eq!(s.names(), ["M", "L", "f"]);
}

#[test]
fn verify_all_from_a_script_passes() {
    let r = run_source("verify all --dim 3 --trials 25 --seed 7;", &cfg()).unwrap();
    assert_eq!(r.entries[0].verdict, Verdict::Pass, "{}", r.to_text());
    assert_eq!(r.entries[0].sampling.map(|s| s.0), Some(7));
}

#[test]
fn invalid_bialgebra_reports_a_residue() {
    let src = "liealg flat(u, v, w) { } cobracket bad on flat { u = u^w; w = u^v; } bialgebra validate bad; bialgebra tangent bad;";
    let r = run_source(src, &cfg()).unwrap();
    assert!(r.entries.iter().all(|e| e.verdict == Verdict::Fail));
    assert!(r.entries[0].witnesses[0].contains("residue"), "{:?}", r.entries[0].witnesses);
}

#[test]
fn runtime_failures_roll_back_undone_declarations() {
    let mut s = Session::new(cfg());
    let f = s.eval("chart M(x,y,z); poisson P on M = (x+y) * @x^@y + @y^@z - @z^@x; scalar f on M = x;").unwrap_err();
    assert_eq!(f.statement, Some(2));
    assert_eq!(s.names(), ["M"]);
    assert!(s.eval("scalar f on M = x; show f;").is_ok());
}
