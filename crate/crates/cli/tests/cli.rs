use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cobinv"))
        .args(args)
        .env_remove("COBINV_DEGREE")
        .output()
        .expect("binary runs")
}

fn fx(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn err_code(o: &Output) -> String {
    let v: Value = serde_json::from_slice(&o.stderr).expect("stderr is JSON");
    v["error"]["code"].as_str().unwrap().to_string()
}

#[test]
fn swap_decomposes() {
    let o = run(&["--output", "table", "decompose", &fx("p1xp1_swap.json")]);
    assert!(o.status.success());
    assert_eq!(String::from_utf8_lossy(&o.stdout), "A0 = -x1^2 + 4*x2\nA1 = -x3\n");
    let j = json_out(&run(&["decompose", &fx("p1xp1_swap.json")]));
    assert!(j.get("A0").is_some());
    assert!(j["A"].get("1").is_some());
    assert_eq!(j["checks"]["round_trip"], true);
}

#[test]
fn curve_and_genus() {
    let o = run(&["curve-check", "--n", "1", "--a", "0", "--b", "0", "--c", "2"]);
    assert_eq!(json_out(&o)["verdict"], "yes");
    let o = run(&["curve-check", "--n", "1", "--a", "0", "--b", "0", "--c", "-3"]);
    assert_eq!(json_out(&o)["verdict"], "no");
    let o = run(&["genus", "--which", "euler", &fx("p4.json")]);
    assert_eq!(json_out(&o)["value"], "5");
    let o = run(&["--output", "table", "genus", "--which", "euler", &fx("p4.json")]);
    assert_eq!(String::from_utf8_lossy(&o.stdout), "5\n");
}

#[test]
fn chern_numbers() {
    let o = run(&["chern-numbers", &fx("h_2_3.json"), "--alpha", "4"]);
    assert_eq!(json_out(&o)["value"], "10");
    let o = run(&["chern-numbers", &fx("p3.json"), "--alpha", "3"]);
    assert_eq!(json_out(&o)["value"], "-4");
    let j = json_out(&run(&["class", &fx("p2.json")]));
    assert_eq!(j["dim"], 2);
    assert_eq!(j["chern_numbers"]["2"], "-3");
}

#[test]
fn bundle_class_and_realizable() {
    let j = json_out(&run(&["bundle-class", &fx("x1.json")]));
    assert_eq!(j["n"], 1);
    let nu = j["nu"].clone();
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("nu.json");
    std::fs::write(&p, nu.to_string()).unwrap();
    let r = json_out(&run(&["realizable", p.to_str().unwrap()]));
    assert_eq!(r["realizable"], true);
    // v alone is not realizable.
    std::fs::write(&p, r#"{"vars":[["v",-1,true]],"terms":[[[1],"1"]]}"#).unwrap();
    let r = json_out(&run(&["realizable", p.to_str().unwrap()]));
    assert_eq!(r["realizable"], false);
}

#[test]
fn exit_codes() {
    let o = run(&["curve-check", "--n", "x", "--a", "0", "--b", "0", "--c", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(err_code(&o), "parse");
    let o = run(&["class", "/nonexistent.json"]);
    assert_eq!(o.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{not json").unwrap();
    let o = run(&["class", p.to_str().unwrap()]);
    assert_eq!((o.status.code(), err_code(&o).as_str()), (Some(2), "parse"));
    let o = run(&["verify", &fx("sharp_x1_x9.json"), "--suite", "examples"]);
    assert!(o.status.success());
    let items = json_out(&o);
    assert!(items.as_array().unwrap().iter().any(|v| v["status"] == "skipped"));
}

#[test]
fn window_overflow_exits_3() {
    // The δ/∂ test on ν(𝒳₅) needs more of Γ than D = 2 provides.
    let o = Command::new(env!("CARGO_BIN_EXE_cobinv"))
        .args(["realizable", &fx("x5.json")])
        .env("COBINV_DEGREE", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(err_code(&o), "window_overflow");
}

#[test]
fn verify_fixture_and_determinism() {
    let a = run(&["verify", &fx("sharp_x2p2.json")]);
    let b = run(&["verify", &fx("sharp_x2p2.json")]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let items = json_out(&a);
    let items = items.as_array().unwrap();
    assert!(items.iter().any(|v| v["theorem"] == "euler_odd" && v["status"] == "sharp"));
    assert!(items.iter().all(|v| v["status"] != "violated"));
}

#[test]
fn catalog_matches_shipped_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["catalog", "--write", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    for e in std::fs::read_dir(dir.path()).unwrap() {
        let e = e.unwrap();
        let fresh = std::fs::read_to_string(e.path()).unwrap();
        let shipped = std::fs::read_to_string(fixtures().join(e.file_name())).unwrap();
        assert_eq!(fresh, shipped, "{:?}", e.file_name());
    }
    let j = json_out(&run(&["catalog", "--show", "x3"]));
    assert_eq!(j["n"], 3);
}

#[test]
fn verify_all_exits_zero() {
    let o = run(&["verify", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let items = json_out(&o);
    let items = items.as_array().unwrap();
    let sharp = items.iter().filter(|v| v["suite"] == "sharpness" && v["status"] == "sharp").count();
    assert_eq!(sharp, 13);
}
