//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! with its timing; the tests share a lock so limits are measured without
//! contention from each other.

use std::process::Command;
use std::sync::Mutex;
use std::time::{Duration, Instant};

use baseb::coeffs::{verify_chu_vandermonde_all_r, verify_power_sum_identities};
use baseb::exponential::{verify_exp_coefficients, verify_exp_convolution};
use baseb::fibonacci::{
    verify_a117592, verify_fib_dominated, verify_fib_identities, verify_stern_equivalence,
    verify_ternary_count,
};
use baseb::stirling::{probe_forward_difference, verify_theta_identity};
use baseb::summation::verify_digital_binomial;
use baseb::{
    carry_free_add, check_log_gamma_bound, digit_sum, exp_b_approx, exp_b_product,
    exp_b_series_numeric, fib_tilde2, stirling2_b, stirling2_b_explicit, Base, VerifyResult,
};

static SERIAL: Mutex<()> = Mutex::new(());

fn b(x: u64) -> Base {
    Base::new(x).unwrap()
}

fn serial() -> std::sync::MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

/// Prints the criterion's line and fails the test if it did not hold.
fn report(id: u32, what: &str, ok: bool, detail: &str, elapsed: Duration, limit_secs: Option<f64>) {
    let in_time = limit_secs.is_none_or(|l| elapsed.as_secs_f64() < l);
    let pass = ok && in_time;
    let limit = limit_secs.map_or(String::new(), |l| format!(" (limit {l}s)"));
    println!(
        "criterion {id:>2} {}: {what}; {detail}; {:.3}s{limit}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    assert!(ok, "criterion {id}: {detail}");
    assert!(in_time, "criterion {id}: took {elapsed:?}{limit}");
}

/// Count of failures and the first one, if any.
fn tally(results: impl IntoIterator<Item = VerifyResult>) -> (usize, usize, Option<VerifyResult>) {
    let mut total = 0;
    let mut failed = 0;
    let mut first = None;
    for r in results {
        total += 1;
        if !r.pass() {
            failed += 1;
            first.get_or_insert(r);
        }
    }
    (total, failed, first)
}

fn tally_detail(total: usize, failed: usize, first: &Option<VerifyResult>) -> String {
    match first {
        None => format!("{total}/{total} cases pass"),
        Some(r) => format!("{failed}/{total} cases fail, first: {r}"),
    }
}

#[test]
fn criterion_01_base3_fibonacci_listing() {
    let _g = serial();
    let want = [
        1, 1, 2, 1, 1, 2, 2, 2, 4, 1, 1, 2, 1, 1, 2, 2, 2, 4, 2, 2, 4, 2, 2, 4, 4, 4, 8, 1, 1, 2,
    ];
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_baseb"))
        .args([
            "seq", "fibb", "--base", "3", "--range", "0", "29", "--format", "csv",
        ])
        .output()
        .expect("run baseb");
    let elapsed = start.elapsed();
    let text = String::from_utf8(out.stdout).unwrap();
    let values: Vec<u64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    let ok = out.status.success() && values == want;
    report(
        1,
        "seq fibb --base 3 first 30 terms",
        ok,
        &format!("got {values:?}"),
        elapsed,
        Some(1.0),
    );
}

#[test]
fn criterion_02_a117592() {
    let _g = serial();
    let start = Instant::now();
    let (total, failed, first) = tally((0..10_000).map(verify_a117592));
    report(
        2,
        "ternary recurrence and initial values, n < 10^4",
        failed == 0,
        &tally_detail(total, failed, &first),
        start.elapsed(),
        Some(5.0),
    );
}

#[test]
fn criterion_03_stern_equivalence() {
    let _g = serial();
    let start = Instant::now();
    let (total, failed, first) = tally((0..10_000).map(verify_stern_equivalence));
    let prefix: Vec<u64> = (0..11).map(fib_tilde2).collect();
    let listing = [1, 1, 2, 1, 3, 2, 3, 1, 4, 3, 5];
    let ok = failed == 0 && prefix == listing;
    report(
        3,
        "fib_tilde2(n) = stern(n+1), n < 10^4, and the 11-term listing",
        ok,
        &format!("{}; prefix {prefix:?}", tally_detail(total, failed, &first)),
        start.elapsed(),
        Some(10.0),
    );
}

#[test]
fn criterion_04_digital_binomial() {
    let _g = serial();
    let start = Instant::now();
    let (total, failed, first) = tally(
        [2, 3, 5, 10]
            .into_iter()
            .flat_map(|base| (0..512).map(move |n| verify_digital_binomial(n, b(base)))),
    );
    report(
        4,
        "digital binomial theorem, n < 512, b in {2,3,5,10}",
        failed == 0,
        &tally_detail(total, failed, &first),
        start.elapsed(),
        Some(30.0),
    );
}

#[test]
fn criterion_05_power_sums() {
    let _g = serial();
    let start = Instant::now();
    let (total, failed, first) = tally(
        [2, 3, 7]
            .into_iter()
            .flat_map(|base| (0..2048).map(move |n| verify_power_sum_identities(n, b(base)))),
    );
    report(
        5,
        "three power-sum identities, n < 2048, b in {2,3,7}",
        failed == 0,
        &tally_detail(total, failed, &first),
        start.elapsed(),
        Some(30.0),
    );
}

#[test]
fn criterion_06_chu_vandermonde() {
    let _g = serial();
    let start = Instant::now();
    let b3 = b(3);
    let mut skipped = 0;
    let mut results = Vec::new();
    for n in 0..243 {
        for m in 0..243 {
            if carry_free_add(n, m, b3) {
                results.push(verify_chu_vandermonde_all_r(n, m, b3).unwrap());
            } else {
                skipped += 1;
            }
        }
    }
    let (total, failed, first) = tally(results);
    report(
        6,
        "base-3 Chu-Vandermonde, carry-free n, m < 243, all r <= n+m",
        failed == 0 && total == 7776,
        &format!(
            "{} ({skipped} carrying pairs skipped)",
            tally_detail(total, failed, &first)
        ),
        start.elapsed(),
        Some(60.0),
    );
}

#[test]
fn criterion_07_stirling_explicit() {
    let _g = serial();
    let start = Instant::now();
    let mut total = 0;
    let mut mismatches = Vec::new();
    let mut integrality = Vec::new();
    for (base, k_max) in [(3, 81), (2, 64)] {
        for n in 0..=8 {
            for k in 0..k_max {
                total += 1;
                match stirling2_b_explicit(n, k, b(base)) {
                    Ok(v) if v == stirling2_b(n, k, b(base)) => {}
                    Ok(_) => mismatches.push((n, k, base)),
                    Err(e) => integrality.push(e.to_string()),
                }
            }
        }
    }
    report(
        7,
        "explicit formula equals product, n <= 8, k < 81 (b=3), k < 64 (b=2)",
        mismatches.is_empty() && integrality.is_empty(),
        &format!(
            "{total} cases, {} mismatches, {} integrality failures",
            mismatches.len(),
            integrality.len()
        ),
        start.elapsed(),
        Some(10.0),
    );
}

#[test]
fn criterion_08_theta() {
    let _g = serial();
    let start = Instant::now();
    let mut tuples = Vec::new();
    for len in 1..=3u32 {
        for code in 0..6u64.pow(len) {
            tuples.push((0..len).map(|i| code / 6u64.pow(i) % 6).collect::<Vec<_>>());
        }
    }
    let (total, failed, first) =
        tally((0..=4).flat_map(|n| tuples.iter().map(move |m| verify_theta_identity(n, m))));
    report(
        8,
        "theta identity on monomials, n <= 4, length <= 3, m_i <= 5",
        failed == 0 && total == 5 * 258,
        &tally_detail(total, failed, &first),
        start.elapsed(),
        Some(10.0),
    );
}

#[test]
fn criterion_09_fibonacci_bundle() {
    let _g = serial();
    let start = Instant::now();
    let mut results = Vec::new();
    for base in [3, 5, 8, 13] {
        for n in 0..500 {
            results.extend(verify_fib_identities(n, b(base)));
            results.push(verify_fib_dominated(n, b(base)));
        }
    }
    results.extend((0..500).map(verify_ternary_count));
    let (total, failed, first) = tally(results);
    report(
        9,
        "Fibonacci identity bundle, b in {3,5,8,13}, n < 500",
        failed == 0,
        &tally_detail(total, failed, &first),
        start.elapsed(),
        Some(30.0),
    );
}

#[test]
fn criterion_10_exponential_exact() {
    let _g = serial();
    let start = Instant::now();
    let mut results = Vec::new();
    for base in [2, 3] {
        results.push(verify_exp_coefficients(b(base), 3).unwrap());
        results.push(verify_exp_convolution(b(base), 64).unwrap());
    }
    let (total, failed, first) = tally(results);
    report(
        10,
        "depth-3 product coefficients and e_b star e_b = e_b(x+y) to order 64, b in {2,3}",
        failed == 0,
        &tally_detail(total, failed, &first),
        start.elapsed(),
        Some(30.0),
    );
}

#[test]
fn criterion_11_exponential_numeric() {
    let _g = serial();
    let start = Instant::now();
    let mut worst_diff: f64 = 0.0;
    let mut diff_failures = Vec::new();
    let mut bound_failures = Vec::new();
    let mut worst_approx: f64 = 0.0;
    for base in [2, 3, 5] {
        for x in [0.0, 0.25, 0.5, 1.0] {
            for w in [0.0, 0.1, 0.25, 0.5] {
                let p = exp_b_product(x, w, b(base), 12).unwrap();
                let s = exp_b_series_numeric(x, w, b(base), 4096).unwrap();
                let d = (p - s).abs();
                worst_diff = worst_diff.max(d);
                if d >= 1e-9 {
                    diff_failures.push((x, w, base, d));
                }
                if x < 1.0 {
                    let r = check_log_gamma_bound(x, w, b(base), 12).unwrap();
                    if !r.pass() {
                        bound_failures.push(r.to_string());
                    }
                }
                let (a1, a2) = exp_b_approx(x, w, b(base), 12).unwrap();
                worst_approx = worst_approx.max((a1 - p).abs().max((a2 - p).abs()) / p);
            }
        }
    }
    report(
        11,
        "|product - series| < 1e-9 and slack-2 log-gamma bound on the grid",
        diff_failures.is_empty() && bound_failures.is_empty(),
        &format!(
            "max diff {worst_diff:.3e}, {} diff failures, {} bound failures; \
             largest relative approximation gap {worst_approx:.3e} (reported only)",
            diff_failures.len(),
            bound_failures.len()
        ),
        start.elapsed(),
        Some(10.0),
    );
}

#[test]
fn criterion_12_forward_difference_probe() {
    let _g = serial();
    let start = Instant::now();
    let b2 = b(2);
    let mut total = 0;
    let mut unexpected = Vec::new();
    for n in 0..=6 {
        for k in 0..64 {
            total += 1;
            let r = probe_forward_difference(n, k, b2);
            let expect_equal = digit_sum(k, b2) <= 1;
            if r.equal != expect_equal {
                unexpected.push((n, k));
            }
        }
    }
    let mismatch = probe_forward_difference(3, 3, b2);
    let documented = !mismatch.equal;
    let first: Vec<_> = unexpected.iter().take(6).collect();
    report(
        12,
        "probe equal exactly when s_2(k) <= 1 over n <= 6, k < 64, and mismatch at (3,3,2)",
        unexpected.is_empty() && documented,
        &format!(
            "(3,3,2): {} vs {} equal={}; {}/{total} points disagree with the predicted \
             equality pattern, first {first:?}",
            mismatch.lhs,
            mismatch.rhs,
            mismatch.equal,
            unexpected.len()
        ),
        start.elapsed(),
        None,
    );
}
