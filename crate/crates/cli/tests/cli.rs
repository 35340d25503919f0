use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn nikodym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nikodym"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "bad JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

fn full_space_file(q: u64) -> String {
    let mut s = format!("{q} 2\n");
    for x in 0..q {
        for y in 0..q {
            s.push_str(&format!("{x},{y}\n"));
        }
    }
    s
}

#[test]
fn verify_full_space_passes_with_empty_assoc() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "full.txt", &full_space_file(3));
    let out = nikodym(&["verify", &f, "--mode", "weak"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["result"]["verdict"], "pass");
    assert_eq!(v["result"]["assoc"].as_array().unwrap().len(), 0);
    assert_eq!(v["result"]["mp"]["sum"], 0);
}

#[test]
fn verify_empty_set_is_refuted() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "empty.txt", "2 2\n");
    let out = nikodym(&["verify", &f]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["result"]["verdict"], "fail");
    assert_eq!(v["result"]["refutation"]["index"], 0);
    assert_eq!(v["result"]["refutation"]["point"], "0,0");
}

#[test]
fn verify_reports_mp_accounting_for_punctured_plane() {
    let dir = TempDir::new().unwrap();
    let text: String = full_space_file(3)
        .lines()
        .filter(|l| *l != "1,2")
        .map(|l| format!("{l}\n"))
        .collect();
    let f = write(&dir, "punct.txt", &text);
    let v = json_of(&nikodym(&["verify", &f]));
    assert_eq!(v["result"]["mp"]["lines"], 1);
    assert_eq!(v["result"]["mp"]["sum"], 2);
    assert_eq!(v["result"]["assoc"][0]["point"], "1,2");
    let strong = nikodym(&["verify", &f, "--mode", "nikodym"]);
    assert_eq!(strong.status.code(), Some(0));
    assert_eq!(json_of(&strong)["result"]["assoc"].as_array().unwrap().len(), 9);
}

#[test]
fn verify_kakeya_lists_directions() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "line.txt", "3 2\n0,0\n0,1\n0,2\n");
    let out = nikodym(&["verify", &f, "--mode", "kakeya"]);
    assert_eq!(out.status.code(), Some(1));
    let dirs = json_of(&out)["result"]["directions"].as_array().unwrap().clone();
    assert_eq!(dirs.len(), 4);
    assert_eq!(dirs.iter().filter(|d| d["line"].is_null()).count(), 3);
}

#[test]
fn malformed_inputs_exit_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.txt", "3 2\n0,0\n0,7\n");
    let out = nikodym(&["verify", &f]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    assert_eq!(nikodym(&["verify", "/nonexistent/set.txt"]).status.code(), Some(2));
    assert_eq!(nikodym(&["search", "--mode", "bogus"]).status.code(), Some(2));
    assert_eq!(
        nikodym(&["spread", "--grid", "2", "--random", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(nikodym(&["search", "--field", "6"]).status.code(), Some(2));
}

#[test]
fn contradicting_flags_are_rejected() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "e.txt", "2 2\n");
    assert_eq!(nikodym(&["verify", &f, "--field", "3"]).status.code(), Some(2));
    assert_eq!(nikodym(&["verify", &f, "--dim", "3"]).status.code(), Some(2));
    assert_eq!(
        nikodym(&["verify", &f, "--field", "2^1", "--dim", "2"]).status.code(),
        Some(1)
    );
}

#[test]
fn search_small_plane_is_exact() {
    let v = json_of(&nikodym(&["search", "--field", "2", "--dim", "2"]));
    assert_eq!(v["result"]["size"], 1);
    assert_eq!(v["result"]["exact"], true);
    assert_eq!(v["result"]["kind"], "minimum");
}

#[test]
fn search_with_tiny_budget_is_an_upper_bound() {
    let out = nikodym(&["search", "--field", "3", "--dim", "2", "--budget", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["result"]["exact"], false);
    assert_eq!(v["result"]["kind"], "upper_bound");
    assert!(v["result"]["size"].as_u64().unwrap() >= 2);
    assert_eq!(nikodym(&["search", "--budget", "0"]).status.code(), Some(2));
}

#[test]
fn search_is_deterministic() {
    let args = ["search", "--field", "5", "--dim", "2", "--seed", "17"];
    assert_eq!(nikodym(&args).stdout, nikodym(&args).stdout);
}

#[test]
fn spread_grid_over_gf11() {
    let v = json_of(&nikodym(&[
        "spread", "--field", "11", "--dim", "2", "--grid", "3", "--n", "2",
    ]));
    let d_star = v["result"]["trend"][0]["d_star"].as_u64().unwrap();
    assert!(d_star >= 6);
    let fixed = nikodym(&[
        "spread", "--field", "11", "--dim", "2", "--grid", "3", "--n", "2", "--degree", "6",
    ]);
    assert_eq!(fixed.status.code(), Some(0));
    assert_eq!(json_of(&fixed)["result"]["certificates"][0]["full_column_rank"], true);
}

#[test]
fn spread_univariate_and_single_point() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "three.txt", "7 1\n1\n3\n5\n");
    let v = json_of(&nikodym(&["spread", "--points", &f, "--n", "2"]));
    assert_eq!(v["result"]["trend"][0]["d_star"], 6);
    let g = write(&dir, "one.txt", "7 2\n1,4\n");
    let v = json_of(&nikodym(&["spread", "--points", &g, "--n", "1,2,3"]));
    let ds: Vec<u64> = v["result"]["trend"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["d_star"].as_u64().unwrap())
        .collect();
    assert_eq!(ds, vec![1, 2, 3]);
}

#[test]
fn spread_failing_degree_has_verified_witness() {
    let out = nikodym(&[
        "spread", "--field", "3", "--dim", "2", "--grid", "3", "--n", "1", "--degree", "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    let w = &v["result"]["witnesses"][0];
    assert_eq!(w["verified"], true);
    assert_ne!(w["polynomial"], "0");
}

#[test]
fn spread_random_warns_when_heuristic_fails() {
    let v = json_of(&nikodym(&[
        "spread", "--field", "3", "--dim", "1", "--random", "2", "--seed", "4", "--n", "1",
    ]));
    assert!(v["result"]["instance"]["warning"].is_string());
    assert_eq!(v["result"]["instance"]["source"]["kind"], "random");
}

#[test]
fn bound_q3_d2_is_exactly_three() {
    let v = json_of(&nikodym(&["bound", "--q", "3", "--dim", "2"]));
    let x = &v["result"]["x_max"];
    assert_eq!(x["lo"], serde_json::json!({"num": "3", "den": "1"}));
    assert_eq!(x["hi"], x["lo"]);
    assert_eq!(v["result"]["steps"].as_array().unwrap().len(), 6);
}

#[test]
fn bound_rejects_bad_inputs() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.json", r#"{"q":3,"d":2,"lines":1,"mp":[1]}"#);
    assert_eq!(nikodym(&["bound", "--instance", &f]).status.code(), Some(2));
    assert_eq!(nikodym(&["bound", "--q", "2"]).status.code(), Some(2));
    assert_eq!(nikodym(&["bound", "--q", "6"]).status.code(), Some(2));
    assert_eq!(nikodym(&["bound"]).status.code(), Some(2));
}

#[test]
fn bound_from_json_and_set_file_agree() {
    let dir = TempDir::new().unwrap();
    let json = write(&dir, "i.json", r#"{"q":3,"d":2,"lines":1,"mp":[1,1,0,0,0,0,0,0]}"#);
    let text: String = full_space_file(3)
        .lines()
        .filter(|l| *l != "0,0")
        .map(|l| format!("{l}\n"))
        .collect();
    let set = write(&dir, "s.txt", &text);
    let a = json_of(&nikodym(&["bound", "--instance", &json]));
    let b = json_of(&nikodym(&["bound", "--instance", &set]));
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["x"], 1);
    assert_eq!(a["result"]["x_source"], "instance");
}

#[test]
fn bound_sweep_reports_trend() {
    let out = nikodym(&["bound", "--sweep", "3:31", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["result"]["rows"].as_array().unwrap().len(), 16);
    assert_eq!(v["result"]["within_factor_two"], "holds");
    assert_eq!(v["result"]["increasing"], true);
}

#[test]
fn field_info_lists_elements() {
    let v = json_of(&nikodym(&["field-info", "--field", "3^2"]));
    assert_eq!(v["result"]["q"], 9);
    assert_eq!(v["result"]["modulus"], serde_json::json!([1, 0, 1]));
    assert_eq!(v["result"]["elements"][0]["text"], "00");
}

#[test]
fn csv_and_out_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("o.csv");
    let p = path.display().to_string();
    let out = nikodym(&[
        "spread", "--field", "11", "--dim", "1", "--grid", "4", "--format", "csv", "--out", &p,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(Path::new(&p)).unwrap();
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "n,D_star,D_star_over_n,k_root");
    assert!(rows[1].starts_with("1,4,"));
    assert!(text.starts_with("# schema_version=1\n# config="));
    assert!(text.contains("# note=certificates hold at the stated (n, D) only"));
}

#[test]
fn config_is_echoed() {
    let v = json_of(&nikodym(&["search", "--field", "3", "--seed", "9", "--budget", "77"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["field"], "3^1");
    assert_eq!(v["config"]["dim"], 2);
    assert_eq!(v["config"]["seed"], 9);
    assert_eq!(v["config"]["caps"]["budget"], 77);
    assert_eq!(v["config"]["options"]["mode"], "weak");
}
