use std::path::PathBuf;

use monopole_core::cli::{cases, run, Outcome};

fn monopole(args: &[&str]) -> Outcome {
    run(std::iter::once("monopole").chain(args.iter().copied()))
}

fn example(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "examples", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn exit_codes() {
    assert_eq!(monopole(&["verify-algebra"]).code, 0);
    assert_eq!(
        monopole(&["separate", "--spin", "half", "--lambda", "1", "--j", "1.5", "--golden", "dirac"]).code,
        0
    );
    assert_eq!(monopole(&["check-symmetry", "--case", "k-operator"]).code, 1);
    let q = monopole(&["separate", "--spin", "half", "--lambda", "0.25", "--j", "1"]);
    assert_eq!(q.code, 2);
    assert!(q.stderr.contains("lambda"));
    assert_eq!(monopole(&[]).code, 2);
    assert_eq!(monopole(&["separate", "--spin", "two", "--lambda", "1", "--j", "1"]).code, 2);
    assert_eq!(monopole(&["no-such-command"]).code, 2);
    let help = monopole(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("selection-rules"));
}

#[test]
fn as_printed_vector_mismatches() {
    let base = ["separate", "--spin", "one", "--lambda", "1", "--j", "2", "--golden", "vector"];
    let ok = monopole(&base);
    assert_eq!(ok.code, 0, "{}", ok.stdout);
    assert!(ok.stdout.contains("MATCH (with documented corrections)"));
    let bad = monopole(&[&base[..], &["--variant", "as-printed"]].concat());
    assert_eq!(bad.code, 1);
    assert!(bad.stdout.contains("MISMATCH"));
}

#[test]
fn formats() {
    let args = ["check-symmetry", "--case", "selfconj"];
    let text = monopole(&args);
    assert_eq!(text.code, 0);
    assert!(text.stdout.contains("nbisp"));
    let json = monopole(&[&args[..], &["--format", "json"]].concat());
    let v: serde_json::Value = serde_json::from_str(&json.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["seed"], 7);
    let md = monopole(&[&args[..], &["--format", "markdown"]].concat());
    assert!(md.stdout.contains('|'));
    let seeded = monopole(&[&args[..], &["--format", "json", "--seed", "3"]].concat());
    let w: serde_json::Value = serde_json::from_str(&seeded.stdout).unwrap();
    assert_eq!(w["seed"], 3);
}

#[test]
fn out_directory_gets_every_format() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let o = monopole(&["integrate", "--golden", "dirac", "--lambda", "1", "--j", "1.5", "--r1", "4", "--out", d]);
    assert_eq!(o.code, 0, "{}{}", o.stdout, o.stderr);
    for ext in ["json", "md", "csv"] {
        let p = dir.path().join(format!("integrate.{ext}"));
        assert!(std::fs::metadata(&p).map(|m| m.len() > 0).unwrap_or(false), "{}", p.display());
    }
    let csv = std::fs::read_to_string(dir.path().join("integrate.csv")).unwrap();
    assert!(csv.lines().next().unwrap().starts_with('r'));
}

#[test]
fn list_cases_covers_every_command() {
    let o = monopole(&["--list-cases"]);
    assert_eq!(o.code, 0);
    for c in cases() {
        assert!(o.stdout.contains(c.id));
    }
    let j: serde_json::Value = serde_json::from_str(&monopole(&["--list-cases", "--format", "json"]).stdout).unwrap();
    assert_eq!(j.as_array().unwrap().len(), cases().len());
    for cmd in ["verify-algebra", "separate", "check-symmetry", "selection-rules", "integrate"] {
        assert!(cases().iter().any(|c| c.command.starts_with(cmd)), "{cmd}");
    }
}

#[test]
fn corrupted_fixture_names_the_identity() {
    let dump = monopole(&["verify-algebra", "--dump-fixture", "half"]);
    assert_eq!(dump.code, 0);
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, &dump.stdout).unwrap();
    assert_eq!(monopole(&["verify-algebra", "--fixture", good.to_str().unwrap()]).code, 0);

    let mut v: serde_json::Value = serde_json::from_str(&dump.stdout).unwrap();
    v["gammas"][1][0][3][0] = serde_json::json!(0.5);
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, v.to_string()).unwrap();
    let o = monopole(&["verify-algebra", "--fixture", bad.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.stdout.contains("failing identities"), "{}", o.stdout);

    v["gammas"][1].as_array_mut().unwrap().pop();
    std::fs::write(&bad, v.to_string()).unwrap();
    assert_eq!(monopole(&["verify-algebra", "--fixture", bad.to_str().unwrap()]).code, 2);
    assert_eq!(monopole(&["verify-algebra", "--fixture", "/nonexistent/fixture.json"]).code, 2);
}

#[test]
fn selection_examples_pass() {
    for name in ["neutral.json", "abelian.json", "doublet.json", "doublet-half.json"] {
        let o = monopole(&["selection-rules", "--config", &example(name)]);
        assert_eq!(o.code, 0, "{name}: {}{}", o.stdout, o.stderr);
    }
}

#[test]
fn selection_config_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("c.json");
    std::fs::write(&p, r#"{"kind": "neutral", "colour": "red"}"#).unwrap();
    assert_eq!(monopole(&["selection-rules", "--config", p.to_str().unwrap()]).code, 2);
    std::fs::write(&p, r#"{"kind": "abelian"}"#).unwrap();
    assert_eq!(monopole(&["selection-rules", "--config", p.to_str().unwrap()]).code, 2);
}
