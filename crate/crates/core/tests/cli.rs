use std::path::Path;
use std::process::Command;

use projsplit::experiment::{parse_csv, parse_key_values};

fn projsplit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_projsplit")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn path_arg(dir: &Path, name: &str) -> String {
    dir.join(name).to_string_lossy().into_owned()
}

#[test]
fn counterexample_exits_one_and_writes_artefacts() {
    let dir = tempfile::tempdir().unwrap();
    let (csv, svg, cert) = (path_arg(dir.path(), "t.csv"), path_arg(dir.path(), "t.svg"), path_arg(dir.path(), "t.cert"));
    let (code, stdout) = projsplit(&["counterexample", "--delta", "0.5", "--csv", &csv, "--svg", &svg, "--cert", &cert]);
    assert_eq!(code, 1, "{stdout}");
    assert!(stdout.contains("stop_reason=stagnated"));

    let rows = parse_csv(Path::new(&csv)).unwrap();
    assert!((rows.last().unwrap().err_total - 2.0 / 3f64.sqrt()).abs() < 1e-6);
    assert!(rows.iter().all(|r| r.bound_p.is_none()));

    let kv = parse_key_values(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(kv.iter().find(|(k, _)| k == "holds").unwrap().1, "false");

    let text = std::fs::read_to_string(&svg).unwrap();
    roxmltree::Document::parse(&text).unwrap();
}

#[test]
fn typical_csv_is_byte_stable_and_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let a = path_arg(dir.path(), "a.csv");
    let b = path_arg(dir.path(), "b.csv");
    assert_eq!(projsplit(&["typical", "--seed", "7", "--csv", &a]).0, 0);
    assert_eq!(projsplit(&["typical", "--seed", "7", "--csv", &b]).0, 0);
    let (a, b) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(a, b);
    let golden = std::fs::read(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/typical_seed7.csv")).unwrap();
    assert!(a == golden, "typical seed-7 trace differs from the golden file");

    let text = String::from_utf8(a).unwrap();
    let header = text.lines().next().unwrap();
    assert_eq!(
        header,
        "k,err_total,err_tangent,err_normal,p,q,bound_p,sin2R_1,sin2R_2,sin2R_3,sin2R_4,sin2R_5,sin2R_6,sin2R_7"
    );
    // Every bound field is filled on a certified run.
    assert!(text.lines().skip(1).all(|l| !l.split(',').nth(6).unwrap().is_empty()));
}

#[test]
fn staircase_plot_has_one_guide_per_singular_value() {
    let dir = tempfile::tempdir().unwrap();
    let svg = path_arg(dir.path(), "s.svg");
    assert_eq!(projsplit(&["staircase", "--svg", &svg, "--max-iters", "20"]).0, 1);
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let guides = doc.descendants().filter(|n| n.attribute("class") == Some("guide")).count();
    assert_eq!(guides, 7);
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("polyline")).count(), 3);
}

#[test]
fn single_point_plot_uses_markers() {
    let dir = tempfile::tempdir().unwrap();
    let svg = path_arg(dir.path(), "p.svg");
    projsplit(&["counterexample", "--max-iters", "0", "--svg", &svg]);
    let text = std::fs::read_to_string(&svg).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    assert_eq!(doc.descendants().filter(|n| n.has_tag_name("circle")).count(), 3);
}

#[test]
fn config_errors_exit_two() {
    assert_eq!(projsplit(&["typical", "--delta", "1.5"]).0, 2);
    assert_eq!(projsplit(&["counterexample", "--n", "3"]).0, 2);
    assert_eq!(projsplit(&["typical", "--r", "50"]).0, 2);
    assert_eq!(projsplit(&["typical", "--sv", "1=0.1"]).0, 2);
    assert_eq!(projsplit(&["typical", "--sv", "bogus"]).0, 2);
    assert_eq!(projsplit(&["no-such-scenario"]).0, 2);
    assert_eq!(projsplit(&["typical", "--seed", "minus-one"]).0, 2);
}

#[test]
fn unwritable_output_exits_three() {
    let (code, _) = projsplit(&["counterexample", "--csv", "/nonexistent-dir/x/t.csv"]);
    assert_eq!(code, 3);
}

#[test]
fn small_custom_runs() {
    let dir = tempfile::tempdir().unwrap();
    let csv = path_arg(dir.path(), "c.csv");
    let (code, _) = projsplit(&["typical", "--n", "12", "--m", "10", "--r", "3", "--sv", "first=4", "--csv", &csv]);
    assert_eq!(code, 0);
    assert_eq!(parse_csv(Path::new(&csv)).unwrap()[0].sin2_r.len(), 3);
    assert_eq!(projsplit(&["counterexample-perturbed", "--seed", "3"]).0, 0);
    assert_eq!(projsplit(&["verify-bounds", "--cases", "5"]).0, 0);
}
