use std::process::{Command, Output};

use serde_json::Value;

fn cy3kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cy3kit")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cy3kit(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    cy3kit(args).status.code().expect("exited normally")
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&a)).unwrap()
}

#[test]
fn documented_examples() {
    assert_eq!(stdout(&["beta-double", "--ring", "O", "--p", "5", "--file", "cvs_octic"]).trim(), "60A+85 (reduces to 0 mod pi)");
    assert_eq!(stdout(&["molien", "--d", "5", "--weights", "1,2,3,4", "--to", "7"]).trim(), "1 0 2 4 7 12 16 24");
    let hodge = stdout(&["hodge", "--scenario", "cvs5"]);
    assert!(hodge.lines().next().unwrap().ends_with("1 0 38 2 38 0 1"), "{hodge}");
    assert!(hodge.contains("trail:"));
    assert!(hodge.contains("[W2 obstruction]"));
}

#[test]
fn structured_output_is_versioned() {
    let v = json(&["molien", "--d", "5", "--weights", "0,1,2,3,4", "--to", "5"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["command"], "molien");
    assert_eq!(v["result"]["series"][5], 26);
    let h = json(&["hodge", "--scenario", "godeaux"]);
    assert_eq!(h["result"]["special"][1][0], 1);
    assert_eq!(h["result"]["special"][1][1], 2);
    assert_eq!(h["result"]["de_rham"], serde_json::json!([1, 1, 2, 44, 2, 1, 1]));
    let b = json(&["beta-double", "--ring", "O", "--p", "5", "--file", "cvs_octic"]);
    assert_eq!(b["result"]["value"], "60A+85");
    assert_eq!(b["result"]["residue"], 0);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["molien", "--d", "5", "--weights", "1,x", "--to", "3"]), 2);
    assert_eq!(code(&["hodge", "--scenario", "no_such_scenario"]), 2);
    assert_eq!(code(&["beta", "--ring", "Fp(4)", "--poly", "x0^2 + x1^2"]), 2);
    assert_eq!(code(&["no-such-command"]), 2);
    // i e = 2 * 2 is not below p - 1 = 4
    assert_eq!(code(&["caruso", "--scenario", "cvs5", "--degree", "2"]), 3);
    assert_eq!(stdout(&["caruso", "--scenario", "cvs5", "--degree", "1"]).trim(), "[Caruso comparison (ie < p-1)] cvs5: dim H^1_dR = 0");
    assert_eq!(code(&["beta-double", "--ring", "O", "--p", "2", "--file", "cvs_octic"]), 3);

    let dir = env!("CARGO_TARGET_TMPDIR");
    let path = format!("{dir}/ordinary_cvs5.json");
    let src = cy3kit::fixtures::get("cvs5").unwrap().replace("\"strict_cy\": true,", "\"strict_cy\": true, \"ordinary\": true,");
    std::fs::write(&path, src).unwrap();
    let out = cy3kit(&["hodge", "--scenario", &path]);
    assert_eq!(out.status.code(), Some(4), "{}", String::from_utf8_lossy(&out.stderr));
    let err: Value = {
        let out = cy3kit(&["hodge", "--scenario", &path, "--format", "json"]);
        serde_json::from_slice(&out.stderr).unwrap()
    };
    assert_eq!(err["error"]["code"], 4);
}

#[test]
fn fixture_suite_is_deterministic_and_tagged() {
    let a = cy3kit(&["fixtures"]);
    let b = cy3kit(&["fixtures"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.lines().count() > 40);
    for line in text.lines() {
        let tag = line.strip_prefix('[').and_then(|l| l.split_once("] ")).map(|(t, _)| t);
        assert!(tag.is_some_and(|t| !t.is_empty()), "untagged line: {line}");
    }
}

#[test]
fn other_subcommands() {
    let beta = stdout(&["beta", "--poly", "x0^5 + x1^5 + x2^5 + x3^5 + x4^5", "--t", "6"]);
    assert!(beta.contains("beta_6 = 120"), "{beta}");
    let ord = stdout(&["ordinary", "--p", "5", "--poly", "x^3 + y^3 + z^3", "--vars", "x,y,z"]);
    assert!(ord.starts_with("not ordinary"), "{ord}");
    let ord = stdout(&["ordinary", "--p", "7", "--poly", "x^3 + y^3 + z^3", "--vars", "x,y,z"]);
    assert!(ord.starts_with("ordinary"), "{ord}");
    assert!(stdout(&["height", "--p", "5", "--log", "multiplicative"]).starts_with("height at p = 5: 1"));
    assert!(stdout(&["height", "--p", "3", "--log", "additive"]).starts_with("height at p = 3: >= 3"));
    assert!(stdout(&["height", "--p", "2", "--poly", "x0^3 + x1^3 + x2^3"]).starts_with("height at p = 2: 2"));
    assert_eq!(code(&["height", "--p", "5", "--log", "additive", "--betas", "1"]), 2);
    let fl = stdout(&["frob-log", "--p", "2", "--betas", "1,2,3,4,5"]);
    assert_eq!(fl.lines().collect::<Vec<_>>(), ["beta'_1 = beta_2 = 2", "beta'_2 = beta_4 = 4"]);
    let inv = stdout(&["invariants", "--d", "5", "--weights", "1,2,3,4", "--degree", "2"]);
    assert_eq!(inv.lines().collect::<Vec<_>>(), ["2 invariant monomials of degree 2", "X1*X4", "X2*X3"]);
    let g = stdout(&["generated", "--d", "5", "--weights", "1,2,3,4", "--from", "6", "--to", "7", "--gen-max", "5"]);
    assert_eq!(g.lines().count(), 2);
    assert!(!g.contains("not generated"));
    let fp = stdout(&["fixed-points", "--d", "5", "--weights", "0,1,2,3,4"]);
    assert_eq!(fp.lines().count(), 5);
    let free = ["freeness", "--d", "5", "--weights", "0,1,2,3,4"];
    let yes = stdout(&[&free[..], &["--poly", "x0^5 + x1^5 + x2^5 + x3^5 + x4^5"]].concat());
    assert!(yes.starts_with("free"));
    let no = stdout(&[&free[..], &["--poly", "x0^5 + x1^5 + x2^5 + x3^5 + x0*x1*x2*x3*x4"]].concat());
    assert!(no.contains("e4"), "{no}");
    assert_eq!(code(&["freeness", "--d", "5", "--weights", "0,0,2,3,4", "--poly", "x0^5", "--vars", "5"]), 3);
    assert!(stdout(&["tate-oort", "--p", "3"]).lines().all(|l| l.ends_with("reduces to 0")));
    let arr = stdout(&["arrangement", "--file", "cvs_arrangement", "--points", "cvs_points"]);
    assert!(arr.contains("lines on exactly 2 planes: 28"));
    assert!(arr.contains("points on exactly 4 planes (not on a common line): 9"));
    assert_eq!(arr.matches("lies on 4 planes").count(), 9);
    assert!(stdout(&["reduce-compare", "--file", "cvs_arrangement", "--p", "5"]).contains("mod pi: yes"));
    assert!(stdout(&["root-lift", "--ring", "Fp(5)", "--f", "-1,1,1", "--root", "2,1"]).starts_with("obstructed"));
    assert!(stdout(&["root-lift", "--ring", "Fp(5)", "--f", "-1,1,1", "--root", "2"]).starts_with("every c lifts"));
    assert!(stdout(&["root-lift", "--ring", "O", "--f", "-1,1,1", "--root", "A"]).starts_with("unique lift: c = 0"));
    assert_eq!(code(&["root-lift", "--ring", "Fp(5)", "--f", "-1,1,1", "--root", "1"]), 2);
    assert_eq!(code(&["root-lift", "--ring", "Q", "--f", "-1,1,1", "--root", "1"]), 2);
}

#[test]
fn rings_over_dual_numbers() {
    let b = stdout(&["beta", "--ring", "dual(Fp(5), 2)", "--poly", "x0^2 + eps*x0*x1 + x1^2", "--m", "2"]);
    assert!(b.starts_with("beta_2 = "), "{b}");
}
