use std::process::{Command, Output};

use baseb::{fib_b, Base};

fn baseb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_baseb"))
        .args(args)
        .output()
        .expect("run baseb")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn fibb_csv_listing() {
    let out = baseb(&[
        "seq", "fibb", "--base", "3", "--range", "0", "29", "--format", "csv",
    ]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,value"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 30);
    assert_eq!(rows[8], "8,4");
    assert_eq!(rows[26], "26,8");
}

#[test]
fn fibtilde2_bfile() {
    let out = baseb(&["seq", "fibtilde2", "--range", "0", "10"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(&lines[..5], ["0 1", "1 1", "2 2", "3 1", "4 3"]);
    assert_eq!(lines.len(), 11);
}

#[test]
fn stern_bfile() {
    let out = baseb(&["seq", "stern", "--range", "0", "2"]);
    assert_eq!(stdout(&out), "0 0\n1 1\n2 1\n");
}

#[test]
fn golden_a117592() {
    let out = baseb(&["seq", "fibb", "--base", "3", "--range", "0", "199"]);
    assert_eq!(stdout(&out), include_str!("data/b117592.txt"));
}

#[test]
fn golden_a002487() {
    let out = baseb(&["seq", "stern", "--range", "0", "199"]);
    assert_eq!(stdout(&out), include_str!("data/b002487.txt"));
}

#[test]
fn fibb_bfile_round_trips() {
    let out = baseb(&["seq", "fibb", "--base", "3", "--range", "100", "1100"]);
    let b3 = Base::new(3).unwrap();
    let mut count = 0;
    for line in stdout(&out).lines() {
        let (n, v) = line.split_once(' ').unwrap();
        let n: u64 = n.parse().unwrap();
        assert_eq!(v.parse::<num_bigint::BigUint>().unwrap(), fib_b(n, b3));
        count += 1;
    }
    assert_eq!(count, 1001);
}

#[test]
fn triangles_and_columns() {
    let out = baseb(&["seq", "binomb", "--base", "2", "--range", "0", "9"]);
    let values: Vec<String> = stdout(&out)
        .lines()
        .map(|l| l.split(' ').nth(1).unwrap().to_string())
        .collect();
    // rows 0..=3 of C(n,k)_2: 1; 1 1; 1 0 1; 1 1 1 1
    assert_eq!(values, ["1", "1", "1", "1", "0", "1", "1", "1", "1", "1"]);

    let out = baseb(&[
        "seq",
        "stirlingb",
        "--base",
        "3",
        "--k",
        "4",
        "--range",
        "2",
        "4",
    ]);
    // k = 4 = [1,1]_3: S(n,1)^2 = 1
    assert_eq!(stdout(&out), "2 1\n3 1\n4 1\n");

    let out = baseb(&["seq", "factb", "--base", "10", "--range", "99", "99"]);
    assert_eq!(stdout(&out), "99 131681894400\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["seq", "lucas", "--range", "0", "3"][..],
        &["seq", "fibb", "--range", "5", "3"],
        &["seq", "fibb", "--base", "1", "--range", "0", "3"],
        &["seq", "fibb", "--k", "2", "--range", "0", "3"],
        &["seq", "fibb"],
        &["verify", "riemann"],
        &["eval-exp", "--x", "1", "--w", "1"],
        &["eval-exp", "--x", "1", "--w", "-0.5"],
        &["frobnicate"],
    ] {
        let out = baseb(args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_stern_equivalence_summary() {
    let out = baseb(&["verify", "stern-equivalence", "--nmax", "10000"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).trim_end().ends_with("10000/10000 pass"));
}

#[test]
fn verify_digital_binomial_base3() {
    let out = baseb(&["verify", "digital-binomial", "--base", "3", "--nmax", "512"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn verify_chu_vandermonde_skips_carries() {
    let out = baseb(&["verify", "chu-vandermonde", "--base", "2", "--nmax", "2"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("3/3 pass (1 skipped)"));
}

#[test]
fn counterexample_exits_1() {
    let out = baseb(&["verify", "forward-difference", "--base", "2", "--nmax", "4"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(
        text.contains("forward-difference [n=3 k=3 b=2] FAIL"),
        "{text}"
    );
    assert!(text.contains("lhs=1 rhs=6"), "{text}");
}

#[test]
fn every_identity_runs() {
    for id in [
        "digital-binomial",
        "chu-vandermonde",
        "power-sums",
        "stirling-explicit",
        "stirling-recurrence",
        "theta",
        "fib-all",
        "fib-eq41",
        "ternary-count",
        "stern-equivalence",
        "exp-convolution",
        "exp-coefficients",
        "gamma-bound",
    ] {
        let out = baseb(&["verify", id, "--base", "3", "--nmax", "30"]);
        assert_eq!(code(&out), 0, "{id}: {}", stdout(&out));
    }
}

#[test]
fn output_independent_of_workers() {
    let run = |w: &str| {
        let out = baseb(&[
            "verify",
            "fib-all",
            "--base",
            "5",
            "--nmax",
            "300",
            "--workers",
            w,
        ]);
        assert_eq!(code(&out), 0);
        out.stdout
    };
    let one = run("1");
    assert_eq!(one, run("3"));
    assert_eq!(one, run("8"));

    let run = |w: &str| {
        baseb(&[
            "verify",
            "forward-difference",
            "--nmax",
            "40",
            "--workers",
            w,
        ])
        .stdout
    };
    assert_eq!(run("1"), run("5"));
}

#[test]
fn eval_exp_at_w_zero() {
    let out = baseb(&["eval-exp", "--x", "0.7", "--w", "0", "--base", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let one = format!("{:.14e}", 1.0);
    let zero = format!("{:.14e}", 0.0);
    for label in ["series", "product", "approx_sum", "approx_two"] {
        let line = text
            .lines()
            .find(|l| l.starts_with(&format!("{label} ")))
            .unwrap();
        assert!(line.ends_with(&one), "{line}");
    }
    for label in ["diff_series", "diff_approx_sum", "diff_approx_two"] {
        let line = text.lines().find(|l| l.starts_with(label)).unwrap();
        assert!(line.ends_with(&zero), "{line}");
    }
}

fn field(text: &str, label: &str) -> f64 {
    text.lines()
        .find(|l| l.starts_with(&format!("{label} ")))
        .and_then(|l| l.split_whitespace().nth(1))
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn eval_exp_cross_check() {
    let out = baseb(&["eval-exp", "--x", "0.5", "--w", "0.25", "--base", "2"]);
    assert_eq!(code(&out), 0);
    assert!(field(&stdout(&out), "diff_series") < 1e-9);

    for x in ["1", "0.99"] {
        let out = baseb(&["eval-exp", "--x", x, "--w", "0.1", "--base", "3"]);
        assert_eq!(code(&out), 0);
        let line = stdout(&out)
            .lines()
            .find(|l| l.starts_with("gamma_bound"))
            .unwrap()
            .to_string();
        let mut parts = line.split_whitespace().skip(1);
        let lhs: f64 = parts.next().unwrap().parse().unwrap();
        let rhs: f64 = parts.nth(1).unwrap().parse().unwrap();
        assert!(lhs <= rhs, "{line}");
        assert!(line.contains(" pass"), "{line}");
    }
}
