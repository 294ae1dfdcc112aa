use std::path::Path;
use std::process::{Command, Output};

fn leibconf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leibconf")).args(args).output().unwrap()
}

fn text(b: &[u8]) -> String {
    String::from_utf8(b.to_vec()).unwrap()
}

fn write(dir: &Path, name: &str, src: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, src).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn pass_fail_and_error_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "vir.lcf", "module g { basis L }\nbracket { [L, L] = (D + 2*l) L }\n");
    let bad = write(dir.path(), "bad.lcf", "module g { basis L }\nbracket { [L, L] = (D + 3*l) L }\n");
    let broken = write(dir.path(), "broken.lcf", "module g { basis L }\nbracket { [L, Q] = L }\n");

    let out = leibconf(&["check-leibniz", &good]);
    assert_eq!(out.status.code(), Some(0));
    assert!(text(&out.stderr).contains("pass"));

    let out = leibconf(&["check-leibniz", &bad, "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "fail");
    assert_eq!(v["failures"][0]["identity"], "leibniz");
    assert_eq!(v["failures"][0]["tuple"], serde_json::json!(["L", "L", "L"]));

    let out = leibconf(&["check-leibniz", &broken, "--json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "error");
    assert!(v["message"].as_str().unwrap().contains("2:15"), "{}", v["message"]);

    assert_eq!(leibconf(&["check-2term", &good]).status.code(), Some(2));
    assert_eq!(leibconf(&["bogus"]).status.code(), Some(2));
    assert_eq!(leibconf(&["--help"]).status.code(), Some(0));
}

#[test]
fn print_is_canonical_and_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let messy = write(
        dir.path(),
        "m.lcf",
        "# comment\nmodule g{basis L}\nbracket{[L,L]=D L+2 l L}\n",
    );
    let out = leibconf(&["print", &messy]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stderr.is_empty());
    let once = text(&out.stdout);
    let again = write(dir.path(), "again.lcf", &once);
    assert_eq!(text(&leibconf(&["print", &again]).stdout), once);
    assert_eq!(text(&leibconf(&["print", "zoo:virasoro"]).stdout).replace("Vir", "g"), once);
}

#[test]
fn same_seed_same_report() {
    let args = ["selftest", "--seed", "11", "--instances", "4", "--json"];
    let a = leibconf(&args);
    let b = leibconf(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = leibconf(&["skeletal-equiv", "zoo:skeletal-nil-base", "zoo:skeletal-nil", "--json"]);
    assert_eq!(c.stdout, leibconf(&["skeletal-equiv", "zoo:skeletal-nil-base", "zoo:skeletal-nil", "--json"]).stdout);
}

#[test]
fn pipeline_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let t = leibconf(&["functor-t", "zoo:nil-strict"]);
    assert_eq!(t.status.code(), Some(0));
    let t_path = write(dir.path(), "t.lcf", &text(&t.stdout));
    assert_eq!(leibconf(&["check-2alg", &t_path]).status.code(), Some(0));
    let s = leibconf(&["functor-s", &t_path]);
    assert_eq!(s.status.code(), Some(0));
    let s_path = write(dir.path(), "s.lcf", &text(&s.stdout));
    assert_eq!(text(&leibconf(&["print", &s_path]).stdout), text(&leibconf(&["print", "zoo:nil-strict"]).stdout));

    let x = leibconf(&["strict-to-crossed", "zoo:nil-strict"]);
    let x_path = write(dir.path(), "x.lcf", &text(&x.stdout));
    assert_eq!(leibconf(&["check-crossed", &x_path]).status.code(), Some(0));
}
