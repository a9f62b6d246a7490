use std::path::Path;
use std::process::Command;

use logsym::cli::io::{parse_chart, print_chart, parse_diamond, parse_structure, print_diamond, print_structure};
use logsym::cli::run;
use logsym::Error;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_logsym")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

const STRUCTURES: &[&str] = &[
    "non-poisson.json",
    "normal-form-k0-n1.json",
    "normal-form-k0-n2.json",
    "normal-form-k1-n1.json",
    "normal-form-k1-n2.json",
    "normal-form-k2-n2.json",
    "pnormal-n1.json",
    "toric-by-torus-n1.json",
    "toric-by-torus-n2.json",
    "toric-diagonal-n2.json",
];

#[test]
fn structure_round_trip_is_byte_identical() {
    for name in STRUCTURES {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let (chart, pi) = parse_structure(&text).unwrap();
        assert_eq!(print_structure(&chart, &pi).unwrap(), text, "{name}");
    }
}

#[test]
fn chart_round_trip_is_byte_identical() {
    for name in ["d2m1.json", "d2m2.json", "d4m2.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(print_chart(&parse_chart(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn diamond_round_trip_is_byte_identical() {
    for name in ["p1xp1.json", "abelian-surface.json"] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        assert_eq!(print_diamond(&parse_diamond(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn expression_bivector_matches_terms() {
    let expr = r#"{"chart": {"vars": ["x1", "y1"], "divisor_vars": ["x1"]}, "bivector": "x1*D(x1)/\\D(y1)"}"#;
    let (chart, pi) = parse_structure(expr).unwrap();
    let text = std::fs::read_to_string(fixture("normal-form-k1-n1.json")).unwrap();
    let (c2, p2) = parse_structure(&text).unwrap();
    assert_eq!(chart.vars(), c2.vars());
    assert_eq!(pi.comps(), p2.comps());
}

#[test]
fn malformed_input_reports_position() {
    match parse_structure("{\"chart\": {\"vars\": [\"x\"],\n \"divisor_vars\": }") {
        Err(Error::ParseError { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
    assert!(parse_structure(r#"{"chart": {"vars": ["x", "y"], "divisor_vars": []}, "terms": [{"coeff": "1", "i": 1, "j": 3}]}"#).is_err());
    assert!(parse_diamond(r#"{"n": 1, "h": [[1, 0, 0], [1, 2, 0], [0, 0, 1]]}"#).is_err());
}

#[test]
fn exit_codes() {
    let good = fixture("normal-form-k1-n2.json");
    let (code, out, _) = bin(&["verify", "--structure", &good, "--trials", "5"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, err) = bin(&["verify", "--structure", &fixture("non-poisson.json")]);
    assert_eq!(code, 2);
    assert!(err.contains("not Poisson"));
    let (code, _, _) = bin(&["hodge", "--diamond", "/nonexistent/file.json"]);
    assert_eq!(code, 2);
    let (code, _, _) = bin(&["cohomology", "--family", "no-such-family"]);
    assert_eq!(code, 2);
}

#[test]
fn output_is_deterministic() {
    let s = fixture("normal-form-k1-n1.json");
    let args = ["logsym", "verify", "--structure", s.as_str(), "--trials", "10", "--seed", "3"];
    let a = run(args);
    let b = run(args);
    assert_eq!(a.code, 0);
    assert_eq!(a.output, b.output);
    let c = run(["logsym", "cohomology", "--family", "log", "--chart", &fixture("d2m2.json"), "--cutoff", "3"]);
    let d = run(["logsym", "cohomology", "--family", "log", "--chart", &fixture("d2m2.json"), "--cutoff", "3"]);
    assert_eq!(c.code, 0, "{}", c.output);
    assert_eq!(c.output, d.output);
    assert!(c.output.ends_with('\n'));
}

#[test]
fn zero_trials_warns() {
    let s = fixture("normal-form-k1-n1.json");
    let o = run(["logsym", "verify", "--structure", s.as_str(), "--trials", "0"]);
    assert_eq!(o.code, 0);
    assert!(!o.warnings.is_empty());
}

#[test]
fn fixture_command_matches_files() {
    let o = run(["logsym", "fixture", "normal-form", "--n", "2", "--k", "1"]);
    assert_eq!(o.code, 0, "{}", o.output);
    assert_eq!(o.output, std::fs::read_to_string(fixture("normal-form-k1-n2.json")).unwrap());
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("logsym-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("h.json");
    let p = path.to_str().unwrap();
    let o = run(["logsym", "hodge", "--diamond", &fixture("p1xp1.json"), "--out", p]);
    assert_eq!(o.code, 0);
    assert!(o.output.is_empty());
    assert!(Path::new(p).exists());
    std::fs::remove_dir_all(dir).unwrap();
}
