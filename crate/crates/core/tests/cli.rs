use std::path::PathBuf;
use std::process::{Command, Output};

use formalglue::session::{CheckResult, ReportDocument, Status};
use formalglue::Field;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/gluings.fg")
}

fn formalglue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_formalglue"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_session(dir: &tempfile::TempDir, text: &str) -> PathBuf {
    let path = dir.path().join("s.fg");
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn info_on_the_node() {
    let out = formalglue(&["info", corpus().to_str().unwrap(), "Node"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for line in [
        "  standard-basis: [x*y]",
        "  edim: 2",
        "  dim: 1",
        "  depth: 1",
        "  regular: false",
    ] {
        assert!(text.lines().any(|l| l == line), "missing {line:?} in\n{text}");
    }
}

#[test]
fn glue_the_node() {
    let out = formalglue(&["glue", corpus().to_str().unwrap(), "X1", "Y1", "along", "Z1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("[1] glued-chart NodeGlue/A+B"));
    assert!(text.contains("  presentation: k[[x,y]] / (x*y)"));
    assert!(text.contains("  point A+B: singular (edim 2 > dim 1)"));
}

#[test]
fn refused_gluing_warns() {
    let out = formalglue(&["glue", corpus().to_str().unwrap(), "XP", "YK", "along", "ZAx"]);
    // an ad-hoc refused gluing is an error, not a passing check
    assert_eq!(out.status.code(), Some(2));
    let text = stdout(&out);
    assert!(text.contains("  noetherian: not-noetherian-warning"), "{text}");
    assert!(text.contains("not surjective"), "{text}");
}

#[test]
fn verify_corpus_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let c = corpus();
    let first = formalglue(&["verify", c.to_str().unwrap(), "--machine-output", a.to_str().unwrap()]);
    let second = formalglue(&["verify", c.to_str().unwrap(), "--machine-output", b.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0), "{}", stdout(&first));
    assert_eq!(first.stdout, second.stdout);
    let (ja, jb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ja, jb);
    let json: serde_json::Value = serde_json::from_slice(&ja).unwrap();
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["status"], "ok");
    let text = stdout(&first);
    assert!(text.contains("summary: 307 passed, 0 failed, 0 errors"), "{text}");
}

#[test]
fn resolve_k_over_the_node() {
    let out = formalglue(&["resolve", corpus().to_str().unwrap(), "Node", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("  betti: (1, 2, 2, 2, 2, 2)"), "{}", stdout(&out));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_session(&dir, "ring A = k[[x]] / (1 + x)\n");
    let out = formalglue(&["info", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("1:20:"), "{err}");

    let undefined = write_session(&dir, "ring A = k[[x]]\nfiber F = A x B\n");
    let out = formalglue(&["verify", undefined.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("status: input-error"));

    let out = formalglue(&["info", corpus().to_str().unwrap(), "Nowhere"]);
    assert_eq!(out.status.code(), Some(2));

    let out = formalglue(&["info", dir.path().join("missing.fg").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn field_flag_overrides_the_document() {
    let dir = tempfile::tempdir().unwrap();
    let s = write_session(&dir, "field q\nring A = k[[x, y]] / (1/2*x^2 + y^3)\n");
    let out = formalglue(&["info", s.to_str().unwrap(), "--field", "F7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("field: 7"), "{text}");
    assert!(text.contains("4*x^2"), "{text}");
}

#[test]
fn failed_checks_exit_with_one() {
    let mut r = ReportDocument::new("verify", Field::Rationals, Default::default());
    r.checks.push(CheckResult {
        check: "resolution".into(),
        subject: "R".into(),
        passed: false,
        detail: String::new(),
    });
    r.finish();
    assert_eq!(r.status, Status::Failed);
    assert_eq!(r.exit_code(), 1);
    assert!(r.to_string().contains("  FAIL resolution R: "));
}
