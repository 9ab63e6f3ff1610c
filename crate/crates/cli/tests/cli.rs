use std::process::{Command, Output};

fn fence(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fence"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn lstar_lines_and_exit_codes() {
    let o = fence(&["lstar", "--x", "1", "--y", "2", "--area", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "lstar=1 regime=straight-cut fence=straight-cut:offset=1\n"
    );

    let o = fence(&["lstar", "--x", "1", "--y", "2", "--area", "0"]);
    assert!(stdout(&o).starts_with("lstar=0 "));

    let o = fence(&["lstar", "--x", "1", "--y", "2", "--area", "0.25"]);
    let line = stdout(&o);
    let v: f64 = line.split_whitespace().next().unwrap()["lstar=".len()..]
        .parse()
        .unwrap();
    assert!((v - 0.8862269).abs() < 1e-7);
    assert!(line.contains("regime=quarter-disk"));

    assert_eq!(
        fence(&["lstar", "--x", "1", "--y", "2", "--area", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(fence(&["lstar", "--x", "1"]).status.code(), Some(2));
    assert_eq!(
        fence(&["lstar", "--x", "one", "--y", "2", "--area", "1"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn lstar_json_is_one_object() {
    let o = fence(&["--json", "lstar", "--x", "1", "--y", "2", "--area", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outputs"]["lstar"], 1.0);
    assert_eq!(v["outputs"]["regime"], "straight-cut");
    assert!(v["timing"]["total_ms"].is_number());
}

#[test]
fn curve_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let o = fence(&[
        "curve",
        "--x",
        "1",
        "--y",
        "2",
        "--samples",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap(), vec!["area", "lstar", "regime"]);
    let rows: Vec<(f64, f64, String)> = rdr.deserialize().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 7);
    assert_eq!((rows[0].0, rows[0].1), (0.0, 0.0));
    assert_eq!((rows[6].0, rows[6].1), (2.0, 0.0));
    let mid = rows.iter().find(|r| r.0 == 1.0).unwrap();
    assert_eq!(mid.1, 1.0);
    let t = 1.0 / std::f64::consts::PI;
    for a in [t, 2.0 - t] {
        let row = rows.iter().find(|r| r.0 == a).expect("threshold row");
        assert!((row.1 - 1.0).abs() <= 1e-15);
    }
    // Same inputs, same bytes.
    fence(&[
        "curve",
        "--x",
        "1",
        "--y",
        "2",
        "--samples",
        "5",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);

    let bad = dir.path().join("missing").join("curve.csv");
    let o = fence(&[
        "curve",
        "--x",
        "1",
        "--y",
        "2",
        "--out",
        bad.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = fence(&[
        "curve",
        "--x",
        "1",
        "--y",
        "2",
        "--samples",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn render_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.svg");
    let p = path.to_str().unwrap();

    fence(&["render", "--x", "1", "--y", "2", "--area", "1", "--out", p]);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert!(svg.contains(r#"viewBox="0 0 2 1""#));
    assert_eq!(svg.matches("<path").count(), 1);
    assert!(svg.contains(r#"d="M 1 0 L 1 1""#));
    assert!(svg.contains("l* = 1.00000"));

    fence(&["render", "--x", "1", "--y", "2", "--area", "0", "--out", p]);
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<path").count(), 0);
    assert_eq!(svg.matches("<rect").count(), 1);

    fence(&[
        "render", "--x", "1", "--y", "2", "--area", "0.25", "--out", p,
    ]);
    let svg = std::fs::read_to_string(&path).unwrap();
    let d = svg
        .split(r#"d=""#)
        .nth(1)
        .unwrap()
        .split('"')
        .next()
        .unwrap();
    let radius: f64 = d.split_whitespace().nth(4).unwrap().parse().unwrap();
    assert!((radius - 0.5641896).abs() < 1e-7, "{d}");
    assert!(svg.contains("l* = 0.886227"));
}

#[test]
fn grid_commands() {
    let o = fence(&["oracle", "--cols", "3", "--rows", "4", "--k", "3"]);
    assert_eq!(stdout(&o), "length=3 lstar=3 cells=0:0,1:0,2:0\n");
    let o = fence(&["oracle", "--cols", "5", "--rows", "5", "--k", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("anneal"));

    let o = fence(&[
        "anneal", "--cols", "3", "--rows", "4", "--k", "3", "--seed", "9",
    ]);
    assert!(stdout(&o).starts_with("length=3 "));
}

#[test]
fn optimize_command() {
    let o = fence(&[
        "--json",
        "optimize",
        "--x",
        "1",
        "--y",
        "2",
        "--area",
        "1",
        "--vertices",
        "8",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let len = v["outputs"]["length"].as_f64().unwrap();
    assert!((len - 1.0).abs() < 1e-3);
    assert_eq!(v["checks"][0]["verdict"], "pass");
}

#[test]
fn verify_quick_passes_and_fault_is_caught() {
    let o = fence(&["verify", "--profile", "quick", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(
        stdout(&o).lines().filter(|l| l.contains(" PASS ")).count(),
        12
    );

    let o = fence(&[
        "verify",
        "--profile",
        "quick",
        "--seed",
        "7",
        "--inject-fault",
        "halve-lstar",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("oracle-dominance"));
}
