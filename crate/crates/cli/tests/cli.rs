use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn sesq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sesq"))
        .args(args)
        .env_remove("SESQ_CAP")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON report")
}

fn fixture_names() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures())
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    names
}

#[test]
fn shipped_gallery_matches_regeneration() {
    let dir = tempfile::tempdir().unwrap();
    let out = sesq(&["gallery", dir.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let mut regenerated = 0;
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let name = entry.unwrap().file_name();
        let fresh = std::fs::read(dir.path().join(&name)).unwrap();
        let shipped = std::fs::read(fixtures().join(&name)).unwrap();
        assert_eq!(fresh, shipped, "{name:?}");
        regenerated += 1;
    }
    assert_eq!(regenerated, fixture_names().len());
}

#[test]
fn save_after_load_is_byte_identical() {
    for name in fixture_names().iter().filter(|n| *n != "bad_algebra.json") {
        let out = sesq(&["canon", &fixture(name)]);
        assert_eq!(code(&out), 0, "{name}");
        assert_eq!(out.stdout, std::fs::read(fixtures().join(name)).unwrap(), "{name}");
    }
}

#[test]
fn canon_writes_the_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("copy.json");
    let out = sesq(&["canon", &fixture("f3c2_form.json"), "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(fixtures().join("f3c2_form.json")).unwrap());
}

#[test]
fn every_fixture_validates_except_the_planted_one() {
    for name in fixture_names() {
        let out = sesq(&["validate", &fixture(&name)]);
        if name == "bad_algebra.json" {
            assert_eq!(code(&out), 65);
            assert!(String::from_utf8_lossy(&out.stderr).contains("NotAssociative"));
        } else {
            assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stderr));
        }
    }
}

#[test]
fn f2_forms_are_not_isometric_by_either_method() {
    for method in ["bruteforce", "transfer"] {
        let out = sesq(&[
            "isometry",
            &fixture("f2_diag.json"),
            &fixture("f2_antidiag.json"),
            "--method",
            method,
            "--json",
        ]);
        assert_eq!(code(&out), 0);
        assert_eq!(stdout_json(&out)["verdict"], "not_isometric");
    }
}

#[test]
fn rank_one_classes_over_f3() {
    let out = sesq(&["classes", &fixture("f3_rank1.json"), "--json"]);
    assert_eq!(code(&out), 0);
    let report = stdout_json(&out);
    assert_eq!(report["count"], 2);
    assert_eq!(report["representatives"], serde_json::json!([["1"], ["2"]]));
}

#[test]
fn residues_are_reduced_on_load() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("four.json");
    let text = std::fs::read_to_string(fixtures().join("f3_rank1.json")).unwrap();
    let at = text.rfind("\"1\"").unwrap();
    let four = format!("{}\"4\"{}", &text[..at], &text[at + 3..]);
    assert_ne!(four, text);
    std::fs::write(&path, four).unwrap();
    let out = sesq(&["canon", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), text);
}

#[test]
fn malformed_input_and_bad_usage() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ \"gram\": [").unwrap();
    let out = sesq(&["validate", path.to_str().unwrap()]);
    assert_eq!(code(&out), 65);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Parse"));
    assert_eq!(code(&sesq(&["no-such-command"])), 64);
    assert_eq!(code(&sesq(&["isometry", &fixture("f2_diag.json")])), 64);
    assert_eq!(code(&sesq(&["witt", "--field", "F_6"])), 64);
    assert_eq!(code(&sesq(&["--help"])), 0);
}

#[test]
fn cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sesq"))
        .args(["classes", &fixture("m2f3_row_form.json")])
        .env("SESQ_CAP", "2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("EnumTooLarge"));
    let out = sesq(&["classes", &fixture("m2f3_row_form.json"), "--cap", "2"]);
    assert_eq!(code(&out), 3);
}

#[test]
fn rational_search_is_sound_but_may_be_undecided() {
    let found = sesq(&["isometry", &fixture("q_four.json"), &fixture("q_one.json"), "--json"]);
    assert_eq!(code(&found), 0);
    assert_eq!(stdout_json(&found)["witness"], serde_json::json!([["2/1"]]));
    let missed = sesq(&["isometry", &fixture("q_one.json"), &fixture("q_four.json"), "--json"]);
    assert_eq!(code(&missed), 3);
    assert_eq!(stdout_json(&missed)["verdict"], "undecided");
}

#[test]
fn suites_are_deterministic_and_clean() {
    for field in ["F_3", "F_5"] {
        let args = ["witt", "--field", field, "--trials", "30", "--seed", "9", "--json"];
        let a = sesq(&args);
        let b = sesq(&args);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(stdout_json(&a)["violations"], 0);
    }
    assert_eq!(code(&sesq(&["witt", "--field", "F_2"])), 65);
    let odd = sesq(&["springer", &fixture("f3_rank1.json"), &fixture("f3_rank1_two.json"), "--deg", "3", "--json"]);
    assert_eq!(stdout_json(&odd)["extension"], "not_isometric");
    let even = sesq(&["springer", &fixture("f3_rank1.json"), &fixture("f3_rank1_two.json"), "--deg", "2", "--json"]);
    assert_eq!(stdout_json(&even)["extension"], "isometric");
    assert_eq!(stdout_json(&even)["extension_field"], "F_9");
}

#[test]
fn group_ring_and_bilinear_bridge() {
    let alg = sesq(&["groupring", &fixture("c2_group.json"), "--field", "F_3"]);
    assert_eq!(code(&alg), 0);
    assert_eq!(alg.stdout, std::fs::read(fixtures().join("f3c2_algebra.json")).unwrap());

    let dir = tempfile::tempdir().unwrap();
    let sesq_path = dir.path().join("s.json");
    let out = sesq(&["g2s", &fixture("f3c2_bilinear.json"), "--out", sesq_path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let back = sesq(&["s2g", sesq_path.to_str().unwrap()]);
    assert_eq!(back.stdout, std::fs::read(fixtures().join("f3c2_bilinear.json")).unwrap());
}

#[test]
fn random_forms_depend_only_on_the_seed() {
    let args = ["random-form", &fixture("f3c2_regular.json"), "--seed", "4", "--unimodular"];
    let a = sesq(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, sesq(&args).stdout);
    let c = sesq(&["random-form", &fixture("f3c2_regular.json"), "--seed", "5"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn form_reports() {
    let adj = sesq(&["adjoints", &fixture("f3_degenerate.json"), "--json"]);
    assert_eq!(code(&adj), 0);
    assert_eq!(stdout_json(&adj)["dual_dim"], 2);
    let q = sesq(&["qobject", &fixture("f3_system.json"), "--json"]);
    assert_eq!(code(&q), 0);
    assert_eq!(stdout_json(&q)["object"]["arrows"].as_array().unwrap().len(), 2);
    let e = sesq(&["endoring", &fixture("f3_sum.json"), "--json"]);
    assert_eq!(stdout_json(&e)["dim"], 4);
    let s = sesq(&["summands", &fixture("f3_sum.json"), "--json"]);
    assert_eq!(stdout_json(&s)["count"], 4);
    let c = sesq(&["classes", &fixture("f3c2_algebra.json"), "--json"]);
    assert_eq!(code(&c), 0);
    let m = sesq(&["classes", &fixture("m2f3_row_form.json"), "--json"]);
    assert_eq!(code(&m), 0);
}

/// Fixtures not covered by a dedicated test above.
#[test]
fn remaining_fixtures_are_exercised() {
    let objects = sesq(&["validate", &fixture("f3_object.json"), "--json"]);
    assert_eq!(stdout_json(&objects)["kind"], "object");
    let field = sesq(&["validate", &fixture("f9_field.json"), "--json"]);
    assert_eq!(stdout_json(&field)["kind"], "field");
    let c3 = sesq(&["groupring", &fixture("c3_group.json"), "--field", "F_2", "--json"]);
    assert_eq!(stdout_json(&c3)["dim"], 3);
    let f2c3 = sesq(&["random-form", &fixture("f2c3_regular.json"), "--seed", "1"]);
    assert_eq!(code(&f2c3), 0);
    let row = sesq(&["random-form", &fixture("m2f3_row.json"), "--seed", "1", "--unimodular"]);
    assert_eq!(code(&row), 0);
    let c2 = sesq(&["isometry", &fixture("f3c2_form.json"), &fixture("f3c2_form.json"), "--method", "transfer"]);
    assert_eq!(code(&c2), 0);
    assert!(String::from_utf8_lossy(&c2.stdout).starts_with("verdict: isometric"));
}
