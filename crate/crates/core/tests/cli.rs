use std::path::PathBuf;
use std::process::{Command, Output};

use swcalc::manifold::FourManifold;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_swcalc"));
    c.env("SWCALC_EXAMPLES", examples());
    c
}

fn examples() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    dir.join(name)
}

#[test]
fn every_example_evaluates() {
    for entry in std::fs::read_dir(examples()).unwrap() {
        let p = entry.unwrap().path();
        if p.extension().is_some_and(|e| e == "json") {
            let o = run(&["eval", p.to_str().unwrap()]);
            assert!(o.status.success(), "{}: {}", p.display(), String::from_utf8_lossy(&o.stderr));
        }
    }
}

#[test]
fn eval_json_round_trip_is_byte_stable() {
    for f in ["z_m3_g1.json", "zprime_m2.json", "k3_trefoil.json", "y3_torus_knots.json"] {
        let o = run(&["--format", "json", "eval", f]);
        assert!(o.status.success());
        let first = stdout(&o);
        let rec = tmp(&format!("rt_{f}"));
        std::fs::write(&rec, &first).unwrap();
        let o = run(&["--format", "json", "eval", rec.to_str().unwrap()]);
        assert!(o.status.success());
        assert_eq!(stdout(&o), first, "{f}");
        let parsed = FourManifold::from_json(&first).unwrap();
        assert_eq!(parsed.to_json().unwrap().trim_end(), first.trim_end());
    }
}

#[test]
fn spec_examples() {
    let o = run(&["chars", "z_m3_g1.json"]);
    let s = stdout(&o);
    assert!(s.contains("chi: 24") && s.contains("c1^2: 48") && s.contains("spin: yes"), "{s}");

    let a = stdout(&run(&["--format", "json", "eval", "unknot_surgery.json"]));
    let b = stdout(&run(&["--format", "json", "eval", "e2.json"]));
    let e3 = swcalc::constructions::build_en(3).unwrap();
    assert_eq!(FourManifold::from_json(&a).unwrap(), e3);
    assert_ne!(a, b);

    let s = stdout(&run(&["sw", "zprime_m2.json"]));
    assert!(s.contains("3*t("), "{s}");

    let s = stdout(&run(&["homeo", "z_e3_g2.json", "zprime_e3_g2.json"]));
    assert!(s.contains("homeomorphic"), "{s}");
    let s = stdout(&run(&["homeo", "z_m3_g1.json", "z_m4_g1.json"]));
    assert!(s.contains("distinct"), "{s}");
    let s = stdout(&run(&["homeo", "z_m3_g1.json", "z_m3_g1.json"]));
    assert!(s.contains("homeomorphic"), "{s}");
}

#[test]
fn text_and_json_agree() {
    let text = stdout(&run(&["chars", "zprime_m2.json"]));
    let json: serde_json::Value = serde_json::from_str(&stdout(&run(&["--format", "json", "chars", "zprime_m2.json"]))).unwrap();
    for key in ["e", "sign", "chi"] {
        let v = &json[key];
        assert!(text.contains(&format!("{key}: {v}")), "{key} = {v} missing from\n{text}");
    }
}

#[test]
fn demo_exit_codes() {
    for section in ["geography", "surgery", "lefschetz", "all"] {
        let o = run(&["demo", section]);
        assert!(o.status.success(), "{section}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL ["));
    }
    let s = stdout(&run(&["demo", "geography"]));
    assert!(s.contains("FLAG [geography] Z(5,g)"), "{s}");
    let o = run(&["demo", "nowhere"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn errors_and_usage() {
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{\"op\": \"model\",\n \"name\": \"E\", \"params\": {\"n\": 2,}}").unwrap();
    let o = run(&["eval", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"), "{}", String::from_utf8_lossy(&o.stderr));

    let deep = tmp("deep.json");
    std::fs::write(
        &deep,
        r#"{"op":"knot_surgery","child":{"op":"model","name":"H","params":{"m":0}},"torus":"T","knot":"trefoil"}"#,
    )
    .unwrap();
    let o = run(&["eval", deep.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("$.child"));

    assert_eq!(run(&["eval"]).status.code(), Some(2));
    assert_eq!(run(&["--format", "xml", "eval", "e2.json"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "does_not_exist.json"]).status.code(), Some(1));
}

#[test]
fn out_flag_and_csv() {
    let out = tmp("geo.csv");
    let o = run(&["--format", "csv", "--out", out.to_str().unwrap(), "geography", "--m-range", "3..4", "--g-range", "1..5"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let csv = std::fs::read_to_string(&out).unwrap();
    assert_eq!(csv.lines().count(), 11);
    assert!(csv.starts_with("m,g,chi,c1sq"));
    assert_eq!(run(&["--format", "csv", "eval", "e2.json"]).status.code(), Some(1));
}

#[test]
fn basic_classes_and_lefschetz() {
    let s = stdout(&run(&["basic-classes", "--scenario", "Yprime_neg1(2;1)"]));
    assert!(s.to_lowercase().contains("vanish") || s.contains("0 candidate"), "{s}");
    let j: serde_json::Value =
        serde_json::from_str(&stdout(&run(&["--format", "json", "basic-classes", "--scenario", "Y2g(3)"]))).unwrap();
    assert_eq!(j["result"], "candidates");
    let s = stdout(&run(&["lefschetz", "--n", "3", "--g", "2", "--audit"]));
    assert!(s.contains("e = 36"), "{s}");
}
