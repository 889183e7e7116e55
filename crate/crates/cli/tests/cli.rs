use std::process::{Command, Output};

use qmerge_core::merging::MergeOutcome;
use serde_json::Value;

fn qmerge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qmerge"))
        .args(args)
        .env_remove("QMERGE_DIM_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn entropy_examples_print_signed_values() {
    let o = qmerge(&["entropy", "--state", "epr", "--of", "A", "--given", "B"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "-1.000000000000\n");
    let o = qmerge(&["entropy", "--state", "example1", "--of", "A", "--given", "B"]);
    assert_eq!(stdout(&o), "+1.000000000000\n");
    let o = qmerge(&["entropy", "--state", "cc", "--of", "A", "--given", "B"]);
    assert_eq!(stdout(&o), "+0.000000000000\n");
    let o = qmerge(&["entropy", "--state", "cc-pure", "--of", "A,B"]);
    assert_eq!(stdout(&o), "+1.000000000000\n");
}

#[test]
fn entropy_json_and_csv() {
    let o = qmerge(&["--format", "json", "entropy", "--state", "epr", "--of", "A"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bits"], 1.0);
    let o = qmerge(&["entropy", "--state", "epr", "--of", "A", "--given", "B", "--format", "csv"]);
    let out = stdout(&o);
    let (header, row) = out.split_once('\n').unwrap();
    assert_eq!(header, "of,given,bits");
    assert!(row.starts_with("A,B,"));
    assert!((row.trim_end()[4..].parse::<f64>().unwrap() + 1.0).abs() < 1e-12);
}

#[test]
fn errors_exit_nonzero_with_empty_stdout() {
    let o = qmerge(&["entropy", "--state", "bell", "--of", "A"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(stderr(&o).contains("bell"));

    // missing required --seed is a usage error
    let o = qmerge(&["merge", "--state", "epr", "-n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());

    let o = qmerge(&["entropy", "--state", "epr", "--of", "Z"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());

    let o = qmerge(&["eoa", "--state", "cc"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn dimension_cap_exits_three() {
    let o = qmerge(&["merge", "--state", "cc-pure", "-n", "4", "--seed", "1", "--dim-cap", "64"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(o.stdout.is_empty());

    let env = |cap: &str, extra: &[&str]| {
        let mut args = vec!["merge", "--state", "cc-pure", "-n", "2", "--seed", "1"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_qmerge"))
            .args(&args)
            .env("QMERGE_DIM_CAP", cap)
            .output()
            .unwrap()
    };
    assert_eq!(env("16", &[]).status.code(), Some(3));
    // the flag takes precedence over the environment
    assert!(env("16", &["--dim-cap", "4096"]).status.success());
}

#[test]
fn syntax_errors_report_line_and_column() {
    let dir = std::env::temp_dir().join(format!("qmerge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    std::fs::write(&path, "{\n  \"labels\": [\"A\"],\n  \"dims\": [2,\n}\n").unwrap();
    let o = qmerge(&["entropy", "--state", path.to_str().unwrap(), "--of", "A"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = stderr(&o);
    assert!(err.contains("bad.json:4:1"), "{err}");

    let good = dir.join("good.json");
    std::fs::write(
        &good,
        r#"{"labels":["A","B"],"dims":[2,2],"kind":"pure","re":[0.7071067811865476,0,0,0.7071067811865476],"im":[0,0,0,0]}"#,
    )
    .unwrap();
    let o = qmerge(&["entropy", "--state", good.to_str().unwrap(), "--of", "A", "--given", "B"]);
    assert_eq!(stdout(&o), "-1.000000000000\n");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn merge_outcomes_round_trip_through_json() {
    let o = qmerge(&["merge", "--state", "random-pure:2x2x2:5", "-n", "2", "--trials", "4", "--seed", "9"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let outs: Vec<MergeOutcome> = serde_json::from_value(v["outcomes"].clone()).unwrap();
    assert_eq!(outs.len(), 4);
    assert_eq!(serde_json::to_value(&outs).unwrap(), v["outcomes"]);
    for o in &outs {
        assert!((o.achieved_fidelity - o.uhlmann_fidelity).abs() < 1e-6);
    }
}

#[test]
fn classically_correlated_merge_with_hadamard_basis() {
    let o = qmerge(&["merge", "--state", "cc-pure", "-n", "1", "--seed", "1", "--exhaustive", "--basis", "fourier"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["summary"]["min_achieved_fidelity"].as_f64().unwrap() - 1.0).abs() < 1e-6);
    for out in v["outcomes"].as_array().unwrap() {
        assert_eq!(out["cbits"], 1.0);
        assert_eq!(out["epr_net_bits"], 0.0);
    }
}

#[test]
fn empty_curve_is_header_only_csv() {
    let o = qmerge(&["merge", "--state", "epr", "--curve", "3..2", "--seed", "1", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "copies,skipped,block,outcomes,epr_boost,epr_net_bits,cbits,trials,decoupling_mean,decoupling_median,\
         decoupling_min,fidelity_mean,fidelity_median,fidelity_min\n"
    );
}

#[test]
fn seeded_outputs_are_reproducible() {
    let a = qmerge(&["report", "--state", "random-pure:2x2x2:42"]);
    let b = qmerge(&["report", "--state", "random-pure:2x2x2:42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let run = || qmerge(&["sideinfo", "--state", "random-pure:2x2x2:3", "--channel", CHANNEL, "--seed", "5", "--restarts", "2", "--max-iters", "200"]);
    let (x, y) = (run(), run());
    assert!(x.status.success(), "{}", stderr(&x));
    assert_eq!(x.stdout, y.stdout);
}

const CHANNEL: &str = r#"{"input":"B","output":"U","out_dim":2,"env_dim":1,"re":[1,0,0,1],"im":[0,0,0,0]}"#;

#[test]
fn sideinfo_identity_channel_on_epr() {
    let o = qmerge(&["sideinfo", "--state", "epr", "--channel", CHANNEL, "--seed", "1", "--restarts", "1", "--max-iters", "100"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["r_a"].as_f64().unwrap() + 1.0).abs() < 1e-9);
    assert!((v["r_b"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    let ch = &v["entanglement_of_purification"]["channel"];
    assert_eq!(ch["out_dim"], 2);
    assert!(ch["re"].is_array());
}

#[test]
fn region_and_membership() {
    let o = qmerge(&["region", "--state", "epr", "--point", "-1,1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "compression");
    assert_eq!(v["membership"]["contained"], true);
    let o = qmerge(&["region", "--state", "epr", "--point", "-1,0.5", "--format", "csv"]);
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["subset", "bound", "satisfied"]);
    let expect = [("A", -1.0, "true"), ("B", -1.0, "true"), ("A+B", 0.0, "false")];
    for (r, (subset, bound, sat)) in rows[1..].iter().zip(expect) {
        assert_eq!((r[0], r[2]), (subset, sat));
        assert!((r[1].parse::<f64>().unwrap() - bound).abs() < 1e-12);
    }
    let o = qmerge(&["region", "--state", "cc-pure", "--mac", "--receiver", "R"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["parties"], serde_json::json!(["A", "B"]));
}

#[test]
fn eoa_on_ghz() {
    let o = qmerge(&["eoa", "--state", "ghz:4", "--alice", "A", "--bob", "B"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["cuts"].as_array().unwrap().len(), 4);
}
