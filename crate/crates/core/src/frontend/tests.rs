use super::fixtures::{self, Kind};
use super::lexer::Span;
use super::*;
use crate::cat2::TWO_ALG_CONDITIONS;
use crate::confcore::ConfModule;
use crate::linfty::{identity_id, mc_identity_id};
use crate::twoterm::{CONDITIONS, HOM_CONDITIONS};
use crate::zoo;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["leibconf"];
    argv.extend_from_slice(args);
    let code = dispatch(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn virasoro_text_matches_the_programmatic_table() {
    let s = parse("module g { basis L } bracket { [L,L] = (D + 2*l) L }").unwrap();
    let alg = s.algebra().unwrap();
    let vir = zoo::virasoro();
    let relabeled = vir
        .bracket()
        .relabel(vec![alg.module().clone(); 2], alg.module().clone(), 0)
        .unwrap();
    assert_eq!(alg.bracket(), &relabeled);
    assert!(alg.verify().passed());
}

#[test]
fn empty_module_is_the_zero_module() {
    let s = parse("module Z { }").unwrap();
    assert_eq!(s.modules, vec![ConfModule::zero("Z")]);
    assert_eq!(parse("module Z { basis }").unwrap(), s);
    assert_eq!(parse(&s.to_string()).unwrap(), s);
}

#[test]
fn undeclared_basis_is_reported_at_its_token() {
    let e = parse("module g { basis L }\nbracket g { [L, X] = L }").unwrap_err();
    assert_eq!(e.span, Span { line: 2, col: 17 });
    assert!(e.message.contains("`X`"), "{e}");

    let e = parse("module g { basis L }\nbracket g { [L, L] = (D + 2*m) L }").unwrap_err();
    assert_eq!(e.span, Span { line: 2, col: 29 });
    let e = parse("module g { basis L }\nmap f : g, h -> g { }").unwrap_err();
    assert!(e.message.contains("undeclared module `h`"));
}

#[test]
fn syntax_errors_list_expected_tokens() {
    let e = parse("module g { basis L\nbracket { }").unwrap_err();
    assert_eq!(e.span, Span { line: 2, col: 1 });
    assert_eq!(e.expected, vec!["`,`", "`}`"]);
    let e = parse("module g { basis L } bracket { [L, L] = (D + } ").unwrap_err();
    assert_eq!(e.expected, vec!["number", "name", "`(`"]);
    let e = parse("frobnicate").unwrap_err();
    assert!(e.expected.contains(&"`module`".to_string()));
}

#[test]
fn semantic_errors() {
    let base = "module g { basis a, b }\n";
    for (body, needle) in [
        ("map f : g, g -> g { [a] = a }", "takes 2 arguments"),
        ("map f : g, g -> g vars (x, y) { }", "takes 1 λ-variables"),
        ("map f : g, g -> g { [a, a] = a * b }", "two module elements"),
        ("map f : g, g -> g { [a, a] = a + 1 }", "scalar and a module element"),
        ("map f : g, g -> g { [a, a] = l }", "found a scalar"),
        ("map f : g, g -> g { [a, a] = a / 0 }", "nonzero number"),
        ("map f : g, g -> g { [a, a] = a [a, a] = b }", "duplicate entry"),
        ("map f : g -> g { } map f : g -> g { }", "duplicate map"),
        ("module g { }", "duplicate module"),
    ] {
        let e = parse(&format!("{base}{body}")).unwrap_err();
        assert!(e.message.contains(needle), "{body}: {e}");
    }
}

#[test]
fn expressions_and_variables() {
    let s = parse(
        "module g { basis a, \"b c\" }
         map f : g, g, g -> g vars (x, y) {
           [a, a, \"b c\"] = (x - y)^2 a/2 - 3/4 D \"b c\" + 0
         }",
    )
    .unwrap();
    let f = s.map("f").unwrap();
    let printed = s.to_string();
    assert!(printed.contains("\"b c\""));
    assert_eq!(parse(&printed).unwrap(), s);
    let v = f.get(&[0, 0, 1]);
    assert_eq!(v.coeff(0).to_string(), "1/2*l1^2 - l1*l2 + 1/2*l2^2");
    assert_eq!(v.coeff(1).to_string(), "-3/4*D");

    // a basis element named like a variable must be quoted in values
    let s = parse("module g { basis l }\nbracket g { [l, l] = (l + D) \"l\" }").unwrap();
    assert_eq!(s.map("bracket").unwrap().get(&[0, 0]).coeff(0).to_string(), "D + l1");
    assert_eq!(parse(&s.to_string()).unwrap(), s);
}

#[test]
fn graded_modules_and_meta() {
    let s = parse("meta flavor = unshifted\nmodule G { basis x:0, h:1 }\nmap rho1 : G -> G degree -1 { [h] = x }")
        .unwrap();
    assert_eq!(s.meta("flavor"), Some("unshifted"));
    assert_eq!(s.modules[0].degrees(), &[0, 1]);
    assert!(s.ops().unwrap().get(1).is_some());
    assert_eq!(parse(&s.to_string()).unwrap(), s);
    let e = parse("module G { basis x:0, h:1 }\nmap rho1 : G -> G degree -1 { [x] = h }").unwrap_err();
    assert!(e.message.contains("inhomogeneous"), "{e}");
}

#[test]
fn zoo_round_trips_and_shipped_files_agree() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let all = fixtures::all();
    assert!(all.len() >= 20);
    for f in &all {
        let text = f.spec.to_string();
        assert_eq!(parse(&text).unwrap(), f.spec, "{}", f.name);
        let shipped = std::fs::read_to_string(dir.join(format!("{}.lcf", f.name))).unwrap();
        assert_eq!(shipped, text, "{} differs from the embedded copy", f.name);
    }
}

#[test]
fn every_fixture_passes_its_checker() {
    for f in fixtures::all() {
        let s = &f.spec;
        let passed = match f.kind {
            Kind::Algebra => s.algebra().unwrap().verify().passed(),
            Kind::BadAlgebra => !s.algebra().unwrap().verify().passed(),
            Kind::Rep | Kind::Cochain => s.rep().unwrap().verify().passed(),
            Kind::Ops => crate::linfty::verify_leib_infty(&s.ops().unwrap(), 4).unwrap().passed(),
            Kind::TwoTerm => s.two_term().unwrap().verify().passed(),
            Kind::Crossed => crate::twoterm::verify_crossed(&s.crossed().unwrap()).passed(),
            Kind::TwoAlg => s.two_alg().unwrap().verify().passed(),
        };
        assert!(passed, "{}", f.name);
    }
}

#[test]
fn explain_covers_checker_ids() {
    let mut ids: Vec<String> = CONDITIONS.iter().chain(&HOM_CONDITIONS).chain(&TWO_ALG_CONDITIONS).map(|s| s.to_string()).collect();
    ids.extend((1..=4).map(identity_id));
    ids.extend((1..=4).map(mc_identity_id));
    ids.extend(["leibniz", "rep-xyv", "cm-rep-left-dx", "cm-3l", "vs-assoc", "hom-square", "sum-1"].map(String::from));
    for id in ids {
        assert!(explain::explain(&id).is_some(), "{id}");
    }
    assert!(explain::explain("leibnizator-x").is_none());
    assert!(explain::explain("nonsense").is_none());
}

#[test]
fn exit_codes_and_reports() {
    let (code, _, err) = run(&["check-leibniz", "zoo:virasoro"]);
    assert_eq!(code, 0, "{err}");
    let (code, out, _) = run(&["check-leibniz", "zoo:bad", "--json"]);
    assert_eq!(code, 1);
    let r: Report = serde_json::from_str(&out).unwrap();
    assert_eq!(r.status, Status::Fail);
    assert_eq!(r.failures.len(), 1);
    assert_eq!(r.failures[0].identity, "leibniz");
    assert_eq!(r.failures[0].tuple, vec!["e", "e", "e"]);
    assert_eq!(r.failures[0].residual, "(-1) e");

    let (code, out, _) = run(&["delta", "--level", "0", "zoo:virasoro-c0"]);
    assert_eq!(code, 0);
    assert!(out.contains("map dphi : Vir -> Vir {\n  [L] = (-D) L\n}"), "{out}");
    let (code, _, err) = run(&["delta", "--level", "1", "zoo:virasoro-c0"]);
    assert_eq!(code, 2, "{err}");

    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["check-leibniz"]).0, 2);
    assert_eq!(run(&["check-leibniz", "/nonexistent/x.lcf"]).0, 2);
    assert_eq!(run(&["--explain", "ix"]).0, 0);
    assert_eq!(run(&["--explain", "zz"]).0, 2);
    let (code, out, _) = run(&["--version"]);
    assert_eq!((code, out.trim()), (0, concat!("leibconf ", env!("CARGO_PKG_VERSION"))));
}

#[test]
fn json_is_deterministic_and_jobs_do_not_change_it() {
    let a = run(&["check-2term", "zoo:skeletal-nil", "--json"]).1;
    let b = run(&["check-2term", "zoo:skeletal-nil", "--json", "--jobs", "1"]).1;
    let c = run(&["check-2term", "zoo:skeletal-nil", "--json", "--jobs", "3"]).1;
    assert_eq!(a, b);
    assert_eq!(a, c);
    let s1 = run(&["selftest", "--seed", "9", "--instances", "6", "--json"]).1;
    let s2 = run(&["selftest", "--seed", "9", "--instances", "6", "--json"]).1;
    assert_eq!(s1, s2);
    assert!(!a.contains("timing_ms"));
    assert!(run(&["check-2term", "zoo:skeletal-nil", "--json", "--timing"]).1.contains("timing_ms"));
}

#[test]
fn reports_validate_against_the_schema() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    let schema: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    for args in [
        vec!["check-leibniz", "zoo:virasoro"],
        vec!["check-leibniz", "zoo:bad", "--timing"],
        vec!["check-leibniz", "/nonexistent"],
        vec!["check-linfty", "zoo:nil-center-kernel"],
        vec!["functor-t", "zoo:skeletal-nil"],
        vec!["solve-preimage", "zoo:skeletal-nil-theta", "--max-ddeg", "0", "--max-ldeg", "0"],
    ] {
        let mut a = args.clone();
        a.push("--json");
        let out = run(&a).1;
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert!(validator.is_valid(&v), "{args:?}: {out}");
    }
    let bad = serde_json::json!({"command": "x", "status": "pass", "failures": [{"identity": "i", "tuple": [], "residual": "r"}], "counters": {}});
    assert!(!validator.is_valid(&bad));
}
