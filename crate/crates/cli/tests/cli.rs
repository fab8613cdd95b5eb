use std::process::{Command, Output};

fn lambertq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lambertq"))
        .args(args)
        .env_remove("LAMBERTQ_PRECISION_BITS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

/// `μ(n)` by trial division.
fn mobius(mut n: u64) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

#[test]
fn sieve_mobius() {
    let o = lambertq(&["sieve", "mobius", "10"]);
    assert_eq!(code(&o), 0);
    let mut want = String::from("n,value\n");
    for n in 1..=10 {
        want += &format!("{n},{}\n", mobius(n));
    }
    assert_eq!(stdout(&o), want);
}

#[test]
fn sieve_jordan_to_file() {
    let path = std::env::temp_dir().join(format!("lambertq-jordan-{}.csv", std::process::id()));
    let o = lambertq(&["sieve", "jordan:2", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    // J_2(n) = n² ∏(1 - p⁻²)
    assert_eq!(text, "n,value\n1,1\n2,3\n3,8\n4,12\n5,24\n");
}

#[test]
fn sieve_real_values_are_decimal() {
    let o = lambertq(&["sieve", "mangoldt", "4"]);
    let rows: Vec<String> = stdout(&o).lines().map(str::to_string).collect();
    assert_eq!(rows[1], "1,0");
    let ln2: f64 = rows[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((ln2 - std::f64::consts::LN_2).abs() < 1e-15);
}

#[test]
fn bad_input_exit_codes() {
    assert_eq!(code(&lambertq(&["sieve", "bogus", "5"])), 2);
    assert_eq!(code(&lambertq(&["verify", "UNKNOWN"])), 2);
    assert_eq!(code(&lambertq(&["limit", "EQ3.1"])), 2);
    assert_eq!(
        code(&lambertq(&["--precision-bits", "40", "verify", "EQ3.1"])),
        2
    );
    assert_eq!(code(&lambertq(&["--tol", "-1", "verify", "EQ3.1"])), 2);
    assert_eq!(
        code(&lambertq(&[
            "eval", "lambert", "--f", "mobius", "--q", "1.2"
        ])),
        4
    );
    assert_eq!(
        code(&lambertq(&["eval", "qpoch", "--z", "0.5", "--q", "0"])),
        4
    );
    assert_eq!(
        code(&lambertq(&["verify", "EQ3.1", "--q", "0.5", "--z", "-1"])),
        4
    );
    assert_eq!(code(&lambertq(&["eval", "eta", "--tau", "-1i"])), 4);
}

#[test]
fn convergence_failure_exit_code() {
    let o = lambertq(&[
        "--max-terms",
        "100",
        "verify",
        "THM-2.2",
        "--q",
        "0.99",
        "--z",
        "1",
    ]);
    assert_eq!(code(&o), 5, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn sieve_overflow_exit_code() {
    assert_eq!(code(&lambertq(&["sieve", "jordan:40", "100"])), 3);
}

#[test]
fn eval_lambert_mobius() {
    let o = lambertq(&[
        "eval", "lambert", "--f", "mobius", "--weight", "plain", "--kernel", "minus", "--q", "0.3",
        "--z", "1", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let value: f64 = v["value"].as_str().unwrap().parse().unwrap();
    let bound: f64 = v["err_bound"].as_str().unwrap().parse().unwrap();
    assert!((value - 0.3).abs() <= bound + 1e-30);
    assert!(bound < 1e-25);
    assert!(v["terms_used"].as_u64().unwrap() > 0);
}

#[test]
fn eval_qpoch_and_eta() {
    let o = lambertq(&["eval", "qpoch", "--z", "0", "--q", "0.5", "--format", "csv"]);
    assert_eq!(
        stdout(&o)
            .lines()
            .nth(1)
            .unwrap()
            .split(',')
            .next()
            .unwrap()
            .parse::<f64>()
            .unwrap(),
        1.0
    );
    // (q;q)_2 = (1 - q)(1 - q²)
    let o = lambertq(&[
        "eval", "qpoch", "--z", "0.5", "--q", "0.5", "--n", "2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let x: f64 = v["value"].as_str().unwrap().parse().unwrap();
    assert!((x - 0.375).abs() < 1e-15);
    // η(i) = Γ(1/4) / (2 π^{3/4})
    let o = lambertq(&["eval", "eta", "--tau", "i", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let x: f64 = v["value"].as_str().unwrap().parse().unwrap();
    assert!((x - 0.768_225_422_326_056_7).abs() < 1e-15);
}

#[test]
fn eval_product_matches_closed_form() {
    // ∏ (qⁿ;qⁿ)_∞^{μ(n)/n} = exp(-q/(1-q))
    let o = lambertq(&[
        "eval", "product", "--g", "mobius", "--q", "0.4", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let x: f64 = v["value"].as_str().unwrap().parse().unwrap();
    assert!((x - (-0.4f64 / 0.6).exp()).abs() < 1e-15);
}

#[test]
fn verify_single_point() {
    let o = lambertq(&[
        "verify", "EQ3.29", "--q", "0.5", "--z", "1", "--format", "json",
    ]);
    assert_eq!(code(&o), 0);
    let v: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0]["id"], "EQ3.29");
    assert_eq!(v[0]["pass"], true);
    for field in [
        "q",
        "z",
        "params",
        "lhs_value",
        "rhs_value",
        "abs_diff",
        "error_budget",
        "terms_used",
    ] {
        assert!(v[0].get(field).is_some(), "{field}");
    }
}

#[test]
fn verify_record_csv_has_header() {
    let o = lambertq(&["verify", "INTRO-1", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("id,params,q,z,lhs_value"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn precision_env_var() {
    let run = |bits: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_lambertq"));
        c.args([
            "eval", "qpoch", "--z", "0.5", "--q", "0.5", "--tol", "1e-15", "--format", "json",
        ]);
        match bits {
            Some(b) => c.env("LAMBERTQ_PRECISION_BITS", b),
            None => c.env_remove("LAMBERTQ_PRECISION_BITS"),
        };
        let o = c.output().unwrap();
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["value"].as_str().unwrap().to_string()
    };
    let (hi, lo) = (run(None), run(Some("64")));
    assert!(hi.len() > lo.len(), "{hi} {lo}");
    let o = Command::new(env!("CARGO_BIN_EXE_lambertq"))
        .args(["verify", "EQ3.1"])
        .env("LAMBERTQ_PRECISION_BITS", "12")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn limit_outputs() {
    let o = lambertq(&["limit", "EQ3.12-lim", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["verdict"], "DivergesToInfinity");

    let o = lambertq(&["limit", "EQ3.1a", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: Vec<serde_json::Value> = serde_json::from_slice(&o.stdout).unwrap();
    let est: f64 = v[0]["estimate"].as_str().unwrap().parse().unwrap();
    assert!((est - (-1f64).exp()).abs() < 1e-3 * (-1f64).exp());
    assert_eq!(v[0]["q_grid"].as_array().unwrap().len(), 8);
}

#[test]
fn limit_failure_exits_one() {
    // the printed target exp(π⁴/90) is not the limit
    let o = lambertq(&["limit", "EQ3.29-1", "--format", "human"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("FAIL EQ3.29-1"));
}

#[test]
fn repeated_runs_are_identical() {
    let a = lambertq(&["verify", "EQ3.33", "--format", "json"]);
    let b = lambertq(&["verify", "EQ3.33", "--format", "json"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
