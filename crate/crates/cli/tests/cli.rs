use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn cdist(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cdist"))
        .args(args)
        .output()
        .expect("cdist runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generated_bundles_verify() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("u.json");
    assert!(cdist(&[
        "gen",
        "unbounded",
        "--k",
        "8",
        "--q",
        "2",
        "--out",
        path(&bundle)
    ])
    .status
    .success());
    let out = cdist(&["verify", "--bundle", path(&bundle)]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("PASS unbounded-claim"));
}

#[test]
fn corrupted_bundle_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("a.json");
    assert!(cdist(&[
        "--seed",
        "4",
        "gen",
        "appendix",
        "--m",
        "4",
        "--out",
        path(&bundle)
    ])
    .status
    .success());
    let mut json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&bundle).unwrap()).unwrap();
    // Agent 0's favorite alternative becomes the farthest one.
    let first = json["instance"]["rankings"][0][0].as_u64().unwrap() as usize;
    json["metrics"][0]["metric"][0][first] = serde_json::json!("50");
    fs::write(&bundle, json.to_string()).unwrap();
    let out = cdist(&["verify", "--bundle", path(&bundle)]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL consistency:d"));
}

#[test]
fn rule_and_oracle_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("i.json");
    assert!(cdist(&[
        "--seed",
        "9",
        "gen",
        "random",
        "--n",
        "3",
        "--m",
        "4",
        "--k",
        "3",
        "--q",
        "2",
        "--out",
        path(&inst)
    ])
    .status
    .success());
    let out = cdist(&[
        "rule",
        "run",
        "--rule",
        "random-dictator",
        "--instance",
        path(&inst),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("\"distribution\""));

    let out = cdist(&[
        "oracle",
        "distortion",
        "--instance",
        path(&inst),
        "--rule",
        "exhaustive-reduction",
        "--audit",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let ratio = report["ratio"].as_str().unwrap();
    assert_ne!(ratio, "unbounded");
}

#[test]
fn phase_toggle_agrees_on_fixed_committee() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("l.json");
    assert!(cdist(&[
        "gen",
        "linear",
        "--k",
        "4",
        "--q",
        "2",
        "--x",
        "2",
        "--out",
        path(&bundle)
    ])
    .status
    .success());
    let ratio = |extra: &[&str]| {
        let mut args = vec![
            "oracle",
            "distortion",
            "--instance",
            path(&bundle),
            "--committee",
            "0,4,5,2",
        ];
        args.extend_from_slice(extra);
        let out = cdist(&args);
        assert!(out.status.success());
        let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        report["ratio"].as_str().unwrap().to_string()
    };
    assert_eq!(ratio(&[]), ratio(&["--no-phase-one"]));
}

#[test]
fn regime_gating_and_override() {
    let dir = tempfile::tempdir().unwrap();
    let bundle = dir.path().join("l.json");
    assert!(cdist(&[
        "gen",
        "linear",
        "--k",
        "4",
        "--q",
        "2",
        "--x",
        "1",
        "--out",
        path(&bundle)
    ])
    .status
    .success());
    let out = cdist(&[
        "rule",
        "run",
        "--rule",
        "topk-reduction",
        "--instance",
        path(&bundle),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("regime"));
    let out = cdist(&[
        "--override-regime",
        "rule",
        "run",
        "--rule",
        "random-dictator",
        "--instance",
        path(&bundle),
    ]);
    assert!(out.status.success());
}

#[test]
fn bench_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(
        &config,
        r#"{"name": "small", "seed": 5, "families": [
            {"family": "linear", "k": [4], "q": [2], "x": [1, 2], "rules": ["polar-opposites"]},
            {"family": "random", "n": [2], "m": [3], "k": [2], "q": [2], "count": 3,
             "rules": ["exhaustive-reduction", "random-dictator"]}]}"#,
    )
    .unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let run = cdist(&["bench", "--config", path(&config), "--out", path(out)]);
        assert!(
            run.status.success(),
            "{}",
            String::from_utf8_lossy(&run.stderr)
        );
    }
    for file in [
        "results.csv",
        "results.json",
        "summary.csv",
        "witnesses.json",
        "plot/series.csv",
    ] {
        assert_eq!(
            fs::read(a.join(file)).unwrap(),
            fs::read(b.join(file)).unwrap(),
            "{file}"
        );
    }
    let rows = fs::read_to_string(a.join("results.csv")).unwrap();
    assert_eq!(rows.lines().count(), 1 + 2 + 6);
    assert!(a.join("timings.csv").exists());
    assert!(a.join("plot/series-linear-polar-opposites.csv").exists());
}

#[test]
fn invalid_config_is_rejected_at_load() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    fs::write(
        &config,
        r#"{"families": [{"family": "linear", "k": [4], "q": [2], "x": [1], "rules": ["constant-n"]}]}"#,
    )
    .unwrap();
    let out = cdist(&[
        "bench",
        "--config",
        path(&config),
        "--out",
        path(&dir.path().join("o")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("o").exists());
}
