use std::process::Command;

fn dhsep(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_dhsep")).args(args).output().expect("binary runs")
}

#[test]
fn emit_prob_prints_eight_over_thirty_three() {
    let out = dhsep(&["integrate", "--emit", "prob"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["prob"], "8/33");
    assert_eq!(v["passed"], true);
    assert!(v["wall_clock_s"].is_number());
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn emit_m_and_f() {
    for which in ["M1", "M2", "M3", "f"] {
        let out = dhsep(&["integrate", "--emit", which]);
        assert_eq!(out.status.code(), Some(0), "{which}");
        let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert!(v["coefficients"].as_array().unwrap().len() > 3);
    }
    let v: serde_json::Value =
        serde_json::from_slice(&dhsep(&["integrate", "--emit", "f"]).stdout).unwrap();
    assert_eq!(v["prefactor"]["coeff"], "1/319334400");
    assert_eq!(v["prefactor"]["pi_pow"], 5);
    assert_eq!(v["f0"]["coeff"], "1/39916800");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["sample", "sep", "--n", "-5"][..],
        &["integrate", "--emit", "M4"],
        &["frobnicate"],
        &["sample", "conditioned", "--a", "0.2", "--n", "10", "--tol", "-1"],
    ] {
        let out = dhsep(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn conditioned_small_run() {
    let out = dhsep(&[
        "sample", "conditioned", "--a", "0.2", "--n", "200", "--burn", "50", "--thin", "2",
        "--seed", "1", "--threads", "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in ["fraction", "agreement_halfbound", "band_count"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["n"], 200);
}
