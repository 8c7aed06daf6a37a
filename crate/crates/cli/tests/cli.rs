use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nadyn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nadyn"))
        .args(args)
        .env_remove("NADYN_BUDGET")
        .output()
        .unwrap()
}

fn report(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn diagnostic(out: &Output) -> Value {
    let line = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(line.trim()).unwrap()
}

fn systems(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../systems")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

#[test]
fn eval_on_extended_tent() {
    let r = report(&nadyn(&["eval", "--system", "example31", "--x", "5/4"]));
    assert_eq!(r["command"], "eval");
    assert_eq!(r["index_base"], 0);
    assert_eq!(r["result"]["value"], "1/2");
}

#[test]
fn correlate_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("c.csv");
    let r = report(&nadyn(&[
        "correlate",
        "--system",
        "tent",
        "--A",
        "[0,1/2]",
        "--B",
        "[0,1/2]",
        "--N",
        "8",
        "--csv",
        csv.to_str().unwrap(),
    ]));
    assert_eq!(r["request"]["budget"]["max_parts"], 1 << 20);
    let text = std::fs::read_to_string(&csv).unwrap();
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0], "0,1/2,1/4");
    for (i, row) in rows.iter().enumerate().skip(1) {
        assert_eq!(*row, format!("{i},1/4,0"));
    }
}

#[test]
fn verify_example31_passes() {
    let r = report(&nadyn(&["verify", "example31"]));
    assert_eq!(r["result"]["passed"], true);
    assert_eq!(r["index_base"], 1);
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = nadyn(&[
        "image",
        "--system",
        "tent",
        "--set",
        "[0,1/4]",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["command"], "image");
}

#[test]
fn system_file_path_is_accepted() {
    let r = report(&nadyn(&[
        "hitting",
        "--system",
        &systems("example31.json"),
        "--U",
        "(0,1)",
        "--V",
        "(1,3/2)",
        "--H",
        "10",
    ]));
    assert_eq!(r["index_base"], 1);
    let text = r["result"].to_string();
    assert!(text.contains("[]"), "{text}");
}

#[test]
fn gap_in_file_exits_2_with_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gap.json");
    std::fs::write(
        &path,
        r#"{"domain":"[0,1]","cycle":[{"pieces":[
            {"on":"[0,1/4]","slope":"1","intercept":"0"},
            {"on":"(1/2,1]","slope":"1","intercept":"0"}]}]}"#,
    )
    .unwrap();
    let o = nadyn(&["eval", "--system", path.to_str().unwrap(), "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let d = diagnostic(&o);
    assert_eq!(d["error"], "system_file");
    assert_eq!(d["cause"], "piece_gap");
    assert!(d["location"].as_str().unwrap().contains("cycle[0].pieces[0]"));
}

#[test]
fn float_literals_exit_2() {
    let o = nadyn(&["eval", "--system", "tent", "--x", "0.5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(diagnostic(&o)["message"].as_str().unwrap().contains("1/2"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("float.json");
    std::fs::write(
        &path,
        r#"{"domain":"[0,1]","cycle":[{"pieces":[{"on":"[0,1]","slope":0.5,"intercept":"0"}]}]}"#,
    )
    .unwrap();
    let o = nadyn(&["eval", "--system", path.to_str().unwrap(), "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(diagnostic(&o)["location"], "cycle[0].pieces[0].slope");
}

#[test]
fn budget_exceeded_exits_3() {
    let o = Command::new(env!("CARGO_BIN_EXE_nadyn"))
        .args([
            "correlate",
            "--system",
            "tent_doubling_alternating",
            "--A",
            "[0,1]",
            "--B",
            "[1/3,2/3]",
            "--N",
            "30",
        ])
        .env("NADYN_BUDGET", "1000")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let d = diagnostic(&o);
    assert_eq!(d["error"], "budget_exceeded");
    assert_eq!(d["max_parts"], 1000);
}

#[test]
fn unknown_names_exit_4() {
    assert_eq!(nadyn(&["frobnicate"]).status.code(), Some(4));
    assert_eq!(nadyn(&["verify", "nope"]).status.code(), Some(4));
    let o = nadyn(&["eval", "--system", "nope", "--x", "0"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn quadratic_is_monte_carlo_only() {
    let path = systems("logistic.json");
    let r = report(&nadyn(&[
        "mc", "--system", &path, "--A", "[0,1/2]", "--B", "[0,1/2]", "--n", "1", "--samples", "2000",
    ]));
    assert_eq!(r["result"]["estimate"]["estimate_only"], true);

    let o = nadyn(&["eval", "--system", &path, "--x", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(diagnostic(&o)["location"], "cycle[0]");
}

#[test]
fn verdicts_are_reported() {
    let r = report(&nadyn(&["weakmix", "--system", "doubling", "--grid", "1/8", "--H", "8"]));
    let text = r["result"].to_string();
    assert!(text.contains("WITNESSED"), "{text}");
}
