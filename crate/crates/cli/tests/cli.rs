use std::process::{Command, Output};

fn besselsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_besselsum"))
        .args(args)
        .output()
        .expect("run besselsum")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn table_over_geometric_grid() {
    let o = besselsum(&["table", "--mu", "1:4", "--x-geom", "0.5:50:8", "--method", "closed"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 33);
    assert_eq!(lines[0], "mu,x,method,value,err_bound,work_units,elapsed_us");
    assert!(lines[1].starts_with("1,0.5,closed,"));
    assert!(lines[32].starts_with("4,50,closed,"));
}

#[test]
fn table_counts_mu_times_x_times_routes() {
    let o = besselsum(&["table", "--mu", "-1,2,3", "--x", "1,2,3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 9);
}

#[test]
fn all_routes_agree_in_json() {
    let o = besselsum(&["eval", "--mu", "2", "--x", "1.5", "--method", "all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let recs: Vec<serde_json::Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(recs.len(), 3);
    let methods: Vec<&str> = recs.iter().map(|r| r["method"].as_str().unwrap()).collect();
    assert_eq!(methods, ["series", "closed", "meijer"]);
    let v: Vec<f64> = recs.iter().map(|r| r["value"].as_f64().unwrap()).collect();
    assert!((v[0] - v[1]).abs() < 1e-10 && (v[0] - v[2]).abs() < 1e-8, "{v:?}");
}

#[test]
fn zero_order_rejected_off_series() {
    let o = besselsum(&["eval", "--mu", "0", "--x", "1", "--method", "closed"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("mu != 0"));
    let o = besselsum(&["eval", "--mu", "0", "--x", "1"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["eval", "--mu", "1", "--x", "-1"][..],
        &["eval", "--mu", "1"],
        &["eval", "--mu", "x", "--x", "1"],
        &["eval", "--mu", "1", "--x", "1", "--threads", "0"],
        &["verify", "--suite", "nosuch"],
        &["frobnicate"],
    ] {
        assert_eq!(besselsum(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn evaluation_failure_exits_one() {
    // x above the supported range for the Meijer route
    let o = besselsum(&["eval", "--mu", "1", "--x", "45", "--method", "meijer"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.lines().nth(1).unwrap().contains(",nan,nan,"), "{out}");
}

#[test]
fn tiny_argument_is_finite() {
    let o = besselsum(&["eval", "--mu", "1", "--x", "1e-9", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(r["value"].as_f64().unwrap().abs() < 1e-6);
}

#[test]
fn no_timing_is_byte_identical() {
    let args = ["table", "--mu", "1:2", "--x", "0.5,4", "--method", "all", "--no-timing"];
    let a = besselsum(&args);
    let b = besselsum(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_writes_report_file() {
    let dir = std::env::temp_dir().join(format!("besselsum-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("lemma2.csv");
    let o = besselsum(&["verify", "--suite", "lemma2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report = std::fs::read_to_string(&path).unwrap();
    let mut lines = report.lines();
    assert_eq!(
        lines.next().unwrap(),
        "check_id,mu,nu,x,observed,expected,tolerance,passed,elapsed_us,error"
    );
    let rows: Vec<&str> = lines.collect();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.starts_with("graf-addition-sum,") && r.contains(",true,")));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_grid_override() {
    let o = besselsum(&["verify", "--suite", "prop_routes", "--mu", "1", "--x", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    for l in stdout(&o).lines() {
        let r: serde_json::Value = serde_json::from_str(l).unwrap();
        assert_eq!(r["passed"], true);
        assert_eq!(r["x"], 2.0);
    }
}
