use std::process::{Command, Output};

use serde_json::Value;

fn cremona(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cremona"))
        .args(args)
        .env_remove("CREMONA_GB_PAIRS")
        .env_remove("CREMONA_ENUM_BUDGET")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp_file(name: &str, contents: &str) -> String {
    let path = std::env::temp_dir().join(format!("cremona-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn todd_room_passes() {
    let out = cremona(&["verify", "todd_room", "--prime", "101"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["pass"], true);
    let sing = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "sing_X2").unwrap();
    assert_eq!(sing["actual"], serde_json::json!(["0:0:0:0:1"]));
}

#[test]
fn segre_over_f3_enumerates_thirteen_targets() {
    let out = cremona(&["verify", "segre_p5", "--prime", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let all = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "all_fibers").unwrap();
    assert_eq!(all["actual"]["targets"], 13);
}

#[test]
fn repeated_column_matrix_fails_with_witness() {
    // Both columns are (x0, x1, x2): every maximal minor vanishes.
    let m = r#"{"m": 3, "n": 2, "rows": [[[1,0,0,0],[1,0,0,0]], [[0,1,0,0],[0,1,0,0]], [[0,0,1,0],[0,0,1,0]]]}"#;
    let path = temp_file("degenerate.json", m);
    let out = cremona(&["verify", "--matrix", &path]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let smooth = r["checks"].as_array().unwrap().iter().find(|c| c["name"] == "smoothness").unwrap();
    assert!(smooth["actual"].as_str().unwrap().starts_with("SingularAt("), "{smooth}");
}

#[test]
fn twisted_cubic_matrix_passes() {
    let m = r#"{"m": 3, "n": 2, "rows": [[[1,0,0,0],[0,1,0,0]], [[0,1,0,0],[0,0,1,0]], [[0,0,1,0],[0,0,0,1]]]}"#;
    let path = temp_file("cubic.json", m);
    let out = cremona(&["verify", "--matrix", &path]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn starved_budget_exits_two() {
    let out = cremona(&["verify", "todd_room", "--gb-pairs", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let r = json(&out);
    assert!(r["checks"].as_array().unwrap().iter().any(|c| c["actual"].get("unknown").is_some()));
}

#[test]
fn environment_budget_and_flag_precedence() {
    let run = |flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_cremona"));
        cmd.args(["verify", "todd_room"]).env("CREMONA_GB_PAIRS", "1");
        if let Some(f) = flag {
            cmd.args(["--gb-pairs", f]);
        }
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(None), Some(2));
    assert_eq!(run(Some("200000")), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let a = cremona(&["verify", "bordiga_random", "--seed", "11", "--no-timings"]);
    let b = cremona(&["verify", "bordiga_random", "--seed", "11", "--no-timings"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn fiber_over_todd_room_point() {
    let out = cremona(&["fiber", "todd_room", "--point", "0:0:0:0:1"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["fiber"]["equations"], serde_json::json!(["x3", "x4"]));
    assert_eq!(r["fiber"]["intersection_hilbert"]["degree"], 4);
}

#[test]
fn fiber_over_segre_point() {
    let r = json(&cremona(&["fiber", "segre_p5", "--point", "1:0:0"]));
    assert_eq!(r["fiber"]["equations"], serde_json::json!(["x0", "x3"]));
    assert_eq!(r["fiber"]["fiber_dim"], 3);
}

#[test]
fn malformed_input_exits_three() {
    assert_eq!(cremona(&["fiber", "todd_room", "--point", "0:1"]).status.code(), Some(3));
    assert_eq!(cremona(&["fiber", "todd_room", "--point", "0:a:0:0:1"]).status.code(), Some(3));
    assert_eq!(cremona(&["verify", "no_such_example"]).status.code(), Some(3));
    assert_eq!(cremona(&["verify", "todd_room", "--prime", "100"]).status.code(), Some(3));
    assert_eq!(cremona(&["frobnicate"]).status.code(), Some(3));
    let path = temp_file("bad.json", r#"{"m": 3, "n": 2, "rows": [[[1,0,0,0]]]}"#);
    assert_eq!(cremona(&["verify", "--matrix", &path]).status.code(), Some(3));
}

#[test]
fn stratify_todd_room() {
    let out = cremona(&["stratify", "todd_room", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let pts = json(&out)["stratum"]["points"].clone();
    assert_eq!(pts, serde_json::json!([{"extension": 1, "coords": ["0", "0", "0", "0", "1"]}]));
}

#[test]
fn stratify_special_conic_flags_singular_point() {
    let r = json(&cremona(&["stratify", "conic_p5_special", "--rank", "3"]));
    assert_eq!(r["stratum"]["hilbert"]["degree"], 20);
    assert_eq!(
        r["stratum"]["singular_points"],
        serde_json::json!([{"extension": 1, "coords": ["0", "0", "0", "0", "1"]}])
    );
}

#[test]
fn relations_table_is_deterministic() {
    let a = cremona(&["relations"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, cremona(&["relations"]).stdout);
    let rows = json(&a);
    let liaison = rows.as_array().unwrap().iter().find(|r| r["name"] == "liaison (5,5,12)").unwrap();
    assert_eq!(liaison["actual"], 13);
}

#[test]
fn recheck_at_a_second_prime() {
    let out = cremona(&["verify", "todd_room", "--recheck-prime", "32003"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"sing_X2@32003"));
    assert!(!names.contains(&"bilinear_identity@32003"));
}
