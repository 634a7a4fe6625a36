use std::path::{Path, PathBuf};
use std::process::Command;

use berline_cli::{parse, parse_str, run, Command as Cmd, Exit, Representation};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

fn golden(name: &str) -> String {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn berline(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_berline"))
        .args(args)
        .current_dir(Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"))
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

const PARSEABLE: [&str; 6] = [
    "z2_sign_odd.json",
    "pair2.json",
    "pair2_rep.json",
    "s3_action.json",
    "acyclic_two_term.json",
    "broken_assoc.json",
];

#[test]
fn pair2_fixture_shape() {
    let doc = parse(&fixture("pair2.json")).unwrap();
    assert_eq!(doc.groupoid.object_count(), 2);
    assert_eq!(doc.groupoid.arrow_count(), 4);
    assert!(doc.rep.is_none());
}

#[test]
fn representation_kind_is_detected() {
    let kinds: Vec<&str> = ["pair2_rep.json", "z2_sign_odd.json", "s3_action.json"]
        .iter()
        .map(|f| parse(&fixture(f)).unwrap().rep.unwrap().kind())
        .collect();
    assert_eq!(kinds, ["line", "homotopy", "homotopy"]);
    let text = r#"{"groupoid": {"objects": ["*"], "arrows": [{"id": "1", "source": "*", "target": "*"}],
        "identities": {"*": "1"}, "inverses": {"1": "1"}, "compose": [["1", "1", "1"]]},
        "rep": {"1": [["1", "0"], ["0", "1"]]}}"#;
    assert!(matches!(
        parse_str(text).unwrap().rep,
        Some(Representation::Vector(_))
    ));
}

#[test]
fn round_trip_is_the_identity() {
    for name in PARSEABLE {
        let doc = parse(&fixture(name)).unwrap();
        let json = doc.to_json();
        let again = parse_str(&json).unwrap();
        assert_eq!(again, doc, "{name}");
        assert_eq!(again.to_json(), json, "{name}");
    }
}

#[test]
fn zero_denominator_is_reported() {
    let err = parse(&fixture("zero_denominator.json")).unwrap_err();
    assert!(err.to_string().contains("zero denominator"), "{err}");
    assert!(err.to_string().contains("rep.g"), "{err}");
}

#[test]
fn shape_errors_name_object_and_degree() {
    let err = parse(&fixture("bad_shape.json")).unwrap_err().to_string();
    assert!(
        err.contains("object \"*\"") && err.contains("degree 0"),
        "{err}"
    );
}

#[test]
fn dangling_identifiers_are_named() {
    let text = r#"{"groupoid": {"objects": ["*"], "arrows": [{"id": "1", "source": "*", "target": "q"}],
        "identities": {"*": "1"}, "inverses": {"1": "one"}, "compose": [["1", "1", "1"]]}}"#;
    let err = parse_str(text).unwrap_err().to_string();
    assert!(err.contains("unknown object \"q\""), "{err}");
    assert!(err.contains("unknown arrow \"one\""), "{err}");
    let err = parse_str("{\"groupoid\": 3}").unwrap_err().to_string();
    assert!(err.contains("line 1"), "{err}");
}

#[test]
fn modular_class_examples() {
    let doc = parse(&fixture("pair2_rep.json")).unwrap();
    let (report, exit) = run(&Cmd::ModularClass, &doc, "pair2_rep.json").unwrap();
    assert_eq!(exit, Exit::Success);
    assert_eq!(report.class.as_deref(), Some("trivial"));
    assert!(report.witness.is_some());

    let doc = parse(&fixture("z2_sign_odd.json")).unwrap();
    let (report, exit) = run(&Cmd::ModularClass, &doc, "z2_sign_odd.json").unwrap();
    assert_eq!(exit, Exit::Success);
    assert_eq!(report.class.as_deref(), Some("nontrivial"));
    let obs = report.obstructions.unwrap();
    assert_eq!(
        (obs[0].arrow.as_str(), obs[0].value.as_str()),
        ("tau", "-1")
    );

    let doc = parse(&fixture("acyclic_two_term.json")).unwrap();
    let (report, _) = run(&Cmd::ModularClass, &doc, "acyclic_two_term.json").unwrap();
    assert!(report.berezinian.unwrap().values().all(|v| v == "1"));
}

#[test]
fn broken_associativity_names_the_triple() {
    let doc = parse(&fixture("broken_assoc.json")).unwrap();
    let (report, exit) = run(&Cmd::Validate, &doc, "broken_assoc.json").unwrap();
    assert_eq!(exit, Exit::LawFailure);
    assert!(report.violations.iter().any(|v| v.detail == "(a, a, b)"));
}

#[test]
fn missing_sections_are_usage_errors() {
    let doc = parse(&fixture("pair2.json")).unwrap();
    assert!(run(&Cmd::ModularClass, &doc, "pair2.json").is_err());
    assert!(run(&Cmd::Cohomology, &doc, "pair2.json").is_err());
    let doc = parse(&fixture("s3_action.json")).unwrap();
    let err = run(
        &Cmd::Berezinian {
            arrow: "nope".into(),
        },
        &doc,
        "s3_action.json",
    )
    .unwrap_err();
    assert!(err.to_string().contains("\"nope\""));
}

#[test]
fn replacement_and_berezinian_commands() {
    let doc = parse(&fixture("acyclic_two_term.json")).unwrap();
    let (report, exit) = run(
        &Cmd::Replace {
            arrow: "tau".into(),
        },
        &doc,
        "x",
    )
    .unwrap();
    assert_eq!(exit, Exit::Success);
    let r = report.replacement.unwrap();
    assert_eq!(r.map[&0], vec![vec!["1".to_string()]]);
    assert_eq!(r.map[&1], vec![vec!["1".to_string()]]);

    let doc = parse(&fixture("s3_action.json")).unwrap();
    for (arrow, value) in [("(12)@p0", "-1"), ("(012)@p1", "1"), ("e@p2", "1")] {
        let (report, _) = run(
            &Cmd::Berezinian {
                arrow: arrow.into(),
            },
            &doc,
            "x",
        )
        .unwrap();
        assert_eq!(report.berezinian.unwrap()[arrow], value);
    }
}

#[test]
fn homotopy_check_lists_every_pair() {
    let doc = parse(&fixture("s3_action.json")).unwrap();
    let (report, exit) = run(&Cmd::HomotopyCheck, &doc, "x").unwrap();
    assert_eq!(exit, Exit::Success);
    assert_eq!(report.certificates.unwrap().len(), 18 * 6);
}

#[test]
fn golden_reports() {
    let cases = [
        ("modular-class", "z2_sign_odd.json"),
        ("modular-class", "pair2_rep.json"),
        ("modular-class", "s3_action.json"),
        ("modular-class", "acyclic_two_term.json"),
        ("validate", "broken_assoc.json"),
        ("homotopy-check", "acyclic_two_term.json"),
        ("cohomology", "pair2_rep.json"),
    ];
    for (command, file) in cases {
        let expected = golden(&format!(
            "{}.{command}.json",
            file.trim_end_matches(".json")
        ));
        let (_, first, _) = berline(&[command, file, "--format", "json"]);
        let (_, second, _) = berline(&[command, file, "--format", "json"]);
        assert_eq!(first, second, "{command} {file}");
        assert_eq!(first, expected, "{command} {file}");
    }
}

#[test]
fn reports_do_not_depend_on_the_input_location() {
    let absolute = fixture("pair2_rep.json");
    let (_, a, _) = berline(&[
        "modular-class",
        absolute.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let (_, b, _) = berline(&["modular-class", "pair2_rep.json", "--format", "json"]);
    assert_eq!(a, b);
}

#[test]
fn exit_codes() {
    assert_eq!(berline(&["modular-class", "z2_sign_odd.json"]).0, 0);
    assert_eq!(berline(&["validate", "s3_action.json"]).0, 0);
    assert_eq!(berline(&["validate", "broken_assoc.json"]).0, 1);
    let (code, _, err) = berline(&["validate", "zero_denominator.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("zero denominator"));
    assert_eq!(berline(&["validate", "bad_shape.json"]).0, 2);
    assert_eq!(berline(&["validate", "missing.json"]).0, 2);
    assert_eq!(berline(&["frobnicate", "pair2.json"]).0, 2);
    assert_eq!(berline(&["berezinian", "s3_action.json"]).0, 2);
}

#[test]
fn text_is_the_default_format() {
    let (code, out, _) = berline(&["modular-class", "z2_sign_odd.json"]);
    assert_eq!(code, 0);
    assert!(out.contains("class: nontrivial"));
    assert!(out.contains("tau : -1"));
    let (_, out, _) = berline(&["modular-class", "z2_sign_odd.json", "--timing"]);
    assert!(out.contains("timing:"));
}
