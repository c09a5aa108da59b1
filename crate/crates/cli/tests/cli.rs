use std::process::{Command, Output};

use kummer_kit::Report;

fn kit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummer-kit")).args(args).env_remove("KUMMER_KIT_TOL").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Report {
    let o = kit(args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn verdict_zero_potential() {
    let rep = json(&["verdict", "-R", "0", "--json"]);
    assert_eq!(rep.case, "Case1");
    assert_eq!(rep.minimality(), "NotMinimal");
    assert_eq!(rep.certificate.unwrap().value, "0");
}

#[test]
fn verdict_harmonic_oscillator() {
    let rep = json(&["verdict", "-R", "-2*(1+l^2)", "--json"]);
    assert_eq!(rep.case, "Case1");
    assert_eq!(rep.certificate.unwrap().value, "l");
    assert!(rep.equivalences.unwrap().all_equal());
}

#[test]
fn verdict_airy_with_verification() {
    let rep = json(&["verdict", "-R", "l", "--verify", "--json"]);
    assert_eq!(rep.case, "Case4");
    assert_eq!(rep.minimality(), "Minimal");
    let v = rep.verify.unwrap();
    assert!(v.projective_residual.unwrap() < 1e-6);
    assert!(v.closure_residual.unwrap() < 1e-6);
    assert!(rep.timings_ms.contains_key("verify"));
}

#[test]
fn human_summary() {
    let out = stdout(&kit(&["verdict", "-R", "l"]));
    assert!(out.contains("verdict: Minimal (Case4"), "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(kit(&["verdict", "-R", "l+"]).status.code(), Some(2));
    assert_eq!(kit(&["verdict", "-R", "1/(l^3-2)^2"]).status.code(), Some(3));
    assert_eq!(kit(&["verdict", "-R", "l", "--verify", "--threshold", "1e-300"]).status.code(), Some(4));
    assert_eq!(kit(&["verdict", "-R", "l", "--verify", "--checks", "bogus"]).status.code(), Some(2));
    assert_eq!(kit(&["jet", "invert", "--f", "0,0;0,1"]).status.code(), Some(1));
    assert_eq!(kit(&["jet", "invert", "--f", "nonsense"]).status.code(), Some(2));
}

#[test]
fn inconclusive_is_success() {
    let rep = json(&["verdict", "-R", "3/(8*l^2) + 4/(9*(l-1)^2) - 3/(8*l*(l-1))", "--json"]);
    assert!(rep.inconclusive);
    assert!(rep.equivalences.is_none());
}

#[test]
fn explicit_path_and_checks() {
    let rep = json(&["verdict", "-R", "l", "--verify", "--path", "0,0.5+0.5i,1", "--checks", "projective,companion,foliation", "--json"]);
    let v = rep.verify.unwrap();
    assert!(v.projective_residual.is_some());
    assert!(v.closure_residual.is_none());
}

#[test]
fn path_through_a_pole_is_rejected() {
    let o = kit(&["verdict", "-R", "1/l", "--verify", "--path", "-1,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("pole"));
}

#[test]
fn sympow_and_kummer() {
    assert_eq!(stdout(&kit(&["sympow", "-R", "l"])).trim(), "f''' + 2*l*f' + 1*f = 0");
    assert_eq!(stdout(&kit(&["kummer", "-R", "0", "--linearize"])).trim(), "f''' = 0");
    let v: serde_json::Value = serde_json::from_str(&stdout(&kit(&["sympow", "-R", "l", "--json"]))).unwrap();
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 3);
}

#[test]
fn jet_commands() {
    assert_eq!(stdout(&kit(&["jet", "compose", "--f", "0,0;2,1", "--g", "0,0;3,1"])).trim(), "0,0;6,7");
    assert_eq!(stdout(&kit(&["jet", "invert", "--f", "0,0;2,1"])).trim(), "0,0;1/2,-1/8");
}

#[test]
fn output_is_deterministic_apart_from_timings() {
    let strip = |mut r: Report| {
        r.timings_ms.clear();
        r
    };
    let a = strip(json(&["verdict", "-R", "-2/l + 3/(8*l^2)", "--json"]));
    let b = strip(json(&["verdict", "-R", "-2/l + 3/(8*l^2)", "--json"]));
    assert_eq!(a, b);
    assert_eq!(a.case, "Case2");
}
