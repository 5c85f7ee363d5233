//! Sharded verification sweeps with deterministic, index-ordered reports.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::coeffs::{verify_chu_vandermonde_all_r, verify_power_sum_identities};
use crate::digits::{carry_free_add, Base};
use crate::error::{Error, Result};
use crate::exponential::{check_log_gamma_bound, verify_exp_coefficients, verify_exp_convolution};
use crate::fibonacci::{
    verify_fib_dominated, verify_fib_identities, verify_stern_equivalence, verify_ternary_count,
};
use crate::stirling::{
    probe_forward_difference, stirling2_b, stirling2_b_explicit, verify_stirling_recurrence_with,
    verify_theta_identity, StirlingTable,
};
use crate::summation::{digit_depth, verify_digital_binomial};
use crate::verify::{Param, VerifyResult};

/// Largest `n` used by the Stirling explicit-formula sweep, whose index runs
/// over `k`.
pub const STIRLING_EXPLICIT_N: u64 = 8;
/// Longest exponent tuple in the theta sweep.
pub const THETA_MAX_LEN: usize = 3;
/// Largest exponent entry in the theta sweep.
pub const THETA_MAX_M: u64 = 5;
/// Largest `n` used by the forward-difference sweep, whose index runs over
/// `k`.
pub const FORWARD_DIFFERENCE_N: u64 = 6;
/// `x` values of the gamma-bound grid.
pub const GAMMA_BOUND_X: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 0.9];
/// Product depth of the gamma-bound grid.
pub const GAMMA_BOUND_DEPTH: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    DigitalBinomial,
    ChuVandermonde,
    PowerSums,
    StirlingExplicit,
    StirlingRecurrence,
    Theta,
    FibAll,
    FibEq41,
    TernaryCount,
    SternEquivalence,
    ExpConvolution,
    ExpCoefficients,
    GammaBound,
    /// The forward-difference representation of base-b Stirling numbers,
    /// which does not hold in general; useful as a known-failing sweep.
    ForwardDifference,
}

impl Identity {
    pub const ALL: [Identity; 14] = [
        Identity::DigitalBinomial,
        Identity::ChuVandermonde,
        Identity::PowerSums,
        Identity::StirlingExplicit,
        Identity::StirlingRecurrence,
        Identity::Theta,
        Identity::FibAll,
        Identity::FibEq41,
        Identity::TernaryCount,
        Identity::SternEquivalence,
        Identity::ExpConvolution,
        Identity::ExpCoefficients,
        Identity::GammaBound,
        Identity::ForwardDifference,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::DigitalBinomial => "digital-binomial",
            Identity::ChuVandermonde => "chu-vandermonde",
            Identity::PowerSums => "power-sums",
            Identity::StirlingExplicit => "stirling-explicit",
            Identity::StirlingRecurrence => "stirling-recurrence",
            Identity::Theta => "theta",
            Identity::FibAll => "fib-all",
            Identity::FibEq41 => "fib-eq41",
            Identity::TernaryCount => "ternary-count",
            Identity::SternEquivalence => "stern-equivalence",
            Identity::ExpConvolution => "exp-convolution",
            Identity::ExpCoefficients => "exp-coefficients",
            Identity::GammaBound => "gamma-bound",
            Identity::ForwardDifference => "forward-difference",
        }
    }

    /// What the sweep index and the secondary parameters range over.
    pub fn describe_ranges(self, b: Base, n_max: u64) -> String {
        let b = b.get();
        match self {
            Identity::DigitalBinomial | Identity::PowerSums | Identity::FibEq41 => {
                format!("n < {n_max}, b = {b}")
            }
            Identity::ChuVandermonde => {
                format!("carry-free n, m < {n_max}, r <= n + m, b = {b}")
            }
            Identity::StirlingExplicit => {
                format!("k < {n_max}, n <= {STIRLING_EXPLICIT_N}, b = {b}")
            }
            Identity::StirlingRecurrence => {
                format!("1 <= n < {n_max}, k < {}, b = {b}", stirling_recurrence_k_max(b))
            }
            Identity::Theta => format!(
                "n < {n_max}, tuple length <= {THETA_MAX_LEN}, entries <= {THETA_MAX_M}"
            ),
            Identity::FibAll => format!("n < {n_max}, all valid p, q, r, b = {b}"),
            Identity::TernaryCount | Identity::SternEquivalence => format!("n < {n_max}"),
            Identity::ExpConvolution => format!("orders < {n_max}, b = {b}"),
            Identity::ExpCoefficients => {
                let depth = digit_depth(Base::new(b as u64).unwrap(), n_max.max(1) as usize);
                format!("orders < {b}^{depth}, b = {b}")
            }
            Identity::GammaBound => format!(
                "x in {GAMMA_BOUND_X:?}, w = i/{n_max} for i < {n_max}, K = {GAMMA_BOUND_DEPTH}, b = {b}"
            ),
            Identity::ForwardDifference => {
                format!("k < {n_max}, n <= {FORWARD_DIFFERENCE_N}, b = {b}")
            }
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown identity '{s}'")))
    }
}

fn stirling_recurrence_k_max(b: u32) -> u64 {
    (b as u64).pow(3)
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub identity: Identity,
    pub base: Base,
    pub n_max: u64,
    pub workers: usize,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub identity: Identity,
    pub ranges: String,
    pub total: u64,
    /// Cases excluded by a precondition, such as pairs whose sum carries.
    pub skipped: u64,
    /// Failing records in ascending sweep-index order.
    pub failures: Vec<VerifyResult>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn passed(&self) -> u64 {
        self.total - self.failures.len() as u64
    }

    pub fn is_pass(&self) -> bool {
        self.failures.is_empty()
    }

    /// `"P/T pass"`, plus the skip count when non-zero.
    pub fn summary(&self) -> String {
        let mut s = format!("{}/{} pass", self.passed(), self.total);
        if self.skipped > 0 {
            s.push_str(&format!(" ({} skipped)", self.skipped));
        }
        s
    }
}

#[derive(Default)]
struct ItemOutcome {
    results: Vec<VerifyResult>,
    skipped: u64,
}

impl ItemOutcome {
    fn one(r: VerifyResult) -> Self {
        ItemOutcome {
            results: vec![r],
            skipped: 0,
        }
    }
}

#[derive(Default)]
struct Tally {
    total: u64,
    skipped: u64,
    failures: Vec<(u64, VerifyResult)>,
    error: Option<(u64, Error)>,
}

/// Runs `check` on every index in `0..count`, interleaving indices across
/// workers, and merges the outcomes in index order.
fn run_sharded<F>(count: u64, workers: usize, check: F) -> Result<(u64, u64, Vec<VerifyResult>)>
where
    F: Fn(u64) -> Result<ItemOutcome> + Sync,
{
    let workers = workers.clamp(1, count.max(1) as usize) as u64;
    let shard = |id: u64| {
        let mut tally = Tally::default();
        let mut i = id;
        while i < count {
            match check(i) {
                Ok(out) => {
                    tally.total += out.results.len() as u64;
                    tally.skipped += out.skipped;
                    tally.failures.extend(
                        out.results
                            .into_iter()
                            .filter(|r| !r.pass())
                            .map(|r| (i, r)),
                    );
                }
                Err(e) => {
                    tally.error = Some((i, e));
                    break;
                }
            }
            i += workers;
        }
        tally
    };
    let tallies: Vec<Tally> = if workers == 1 {
        vec![shard(0)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..workers)
                .map(|id| {
                    let shard = &shard;
                    s.spawn(move || shard(id))
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("sweep worker panicked"))
                .collect()
        })
    };

    let mut total = 0;
    let mut skipped = 0;
    let mut failures = Vec::new();
    let mut first_error: Option<(u64, Error)> = None;
    for t in tallies {
        total += t.total;
        skipped += t.skipped;
        failures.extend(t.failures);
        if let Some((i, e)) = t.error {
            if first_error.as_ref().is_none_or(|(j, _)| i < *j) {
                first_error = Some((i, e));
            }
        }
    }
    if let Some((_, e)) = first_error {
        return Err(e);
    }
    // stable: failures of one index keep their production order
    failures.sort_by_key(|(i, _)| *i);
    Ok((
        total,
        skipped,
        failures.into_iter().map(|(_, r)| r).collect(),
    ))
}

/// Every `m_i ≤ max_m` tuple of each length `1..=max_len`, shortest first.
fn theta_tuples(max_len: usize, max_m: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut t = vec![0u64; len];
        loop {
            out.push(t.clone());
            let mut i = 0;
            while i < len && t[i] == max_m {
                t[i] = 0;
                i += 1;
            }
            if i == len {
                break;
            }
            t[i] += 1;
        }
    }
    out
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let start = Instant::now();
    let b = config.base;
    let n_max = config.n_max;
    let workers = config.workers;
    let (total, skipped, failures) = match config.identity {
        Identity::DigitalBinomial => run_sharded(n_max, workers, |n| {
            Ok(ItemOutcome::one(verify_digital_binomial(n, b)))
        })?,
        Identity::ChuVandermonde => run_sharded(n_max, workers, |n| {
            let mut out = ItemOutcome::default();
            for m in 0..n_max {
                if carry_free_add(n, m, b) {
                    out.results.push(verify_chu_vandermonde_all_r(n, m, b)?);
                } else {
                    out.skipped += 1;
                }
            }
            Ok(out)
        })?,
        Identity::PowerSums => run_sharded(n_max, workers, |n| {
            Ok(ItemOutcome::one(verify_power_sum_identities(n, b)))
        })?,
        Identity::StirlingExplicit => run_sharded(n_max, workers, |k| {
            let results = (0..=STIRLING_EXPLICIT_N)
                .map(|n| {
                    Ok(VerifyResult::compare(
                        "stirling-explicit",
                        vec![
                            Param::new("n", n),
                            Param::new("k", k),
                            Param::new("b", b.get() as u64),
                        ],
                        stirling2_b_explicit(n, k, b)?,
                        stirling2_b(n, k, b),
                    ))
                })
                .collect::<Result<_>>()?;
            Ok(ItemOutcome {
                results,
                skipped: 0,
            })
        })?,
        Identity::StirlingRecurrence => {
            let table = StirlingTable::new(n_max.max(1));
            let k_max = stirling_recurrence_k_max(b.get());
            run_sharded(n_max, workers, |n| {
                if n == 0 {
                    return Ok(ItemOutcome::default());
                }
                Ok(ItemOutcome {
                    results: (0..k_max)
                        .map(|k| verify_stirling_recurrence_with(&table, n, k, b))
                        .collect(),
                    skipped: 0,
                })
            })?
        }
        Identity::Theta => {
            let tuples = theta_tuples(THETA_MAX_LEN, THETA_MAX_M);
            run_sharded(n_max, workers, |n| {
                Ok(ItemOutcome {
                    results: tuples.iter().map(|m| verify_theta_identity(n, m)).collect(),
                    skipped: 0,
                })
            })?
        }
        Identity::FibAll => run_sharded(n_max, workers, |n| {
            let mut results = verify_fib_identities(n, b);
            results.push(verify_fib_dominated(n, b));
            if b.get() == 3 {
                results.push(verify_ternary_count(n));
            }
            Ok(ItemOutcome {
                results,
                skipped: 0,
            })
        })?,
        Identity::FibEq41 => run_sharded(n_max, workers, |n| {
            Ok(ItemOutcome::one(verify_fib_dominated(n, b)))
        })?,
        Identity::TernaryCount => run_sharded(n_max, workers, |n| {
            Ok(ItemOutcome::one(verify_ternary_count(n)))
        })?,
        Identity::SternEquivalence => run_sharded(n_max, workers, |n| {
            Ok(ItemOutcome::one(verify_stern_equivalence(n)))
        })?,
        Identity::ExpConvolution => {
            if n_max == 0 {
                (0, 0, Vec::new())
            } else {
                let r = verify_exp_convolution(b, n_max as usize)?;
                let failures = if r.pass() { vec![] } else { vec![r] };
                (1, 0, failures)
            }
        }
        Identity::ExpCoefficients => {
            let depth = digit_depth(b, n_max.max(1) as usize) as u32;
            let r = verify_exp_coefficients(b, depth)?;
            let failures = if r.pass() { vec![] } else { vec![r] };
            (1, 0, failures)
        }
        Identity::GammaBound => run_sharded(n_max, workers, |i| {
            let w = i as f64 / n_max as f64;
            let results = GAMMA_BOUND_X
                .iter()
                .map(|&x| check_log_gamma_bound(x, w, b, GAMMA_BOUND_DEPTH))
                .collect::<Result<_>>()?;
            Ok(ItemOutcome {
                results,
                skipped: 0,
            })
        })?,
        Identity::ForwardDifference => run_sharded(n_max, workers, |k| {
            Ok(ItemOutcome {
                results: (0..=FORWARD_DIFFERENCE_N)
                    .map(|n| {
                        let r = probe_forward_difference(n, k, b);
                        VerifyResult::compare("forward-difference", r.params, r.lhs, r.rhs)
                    })
                    .collect(),
                skipped: 0,
            })
        })?,
    };
    Ok(SweepReport {
        identity: config.identity,
        ranges: config.identity.describe_ranges(b, n_max),
        total,
        skipped,
        failures,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(identity: Identity, b: u64, n_max: u64, workers: usize) -> SweepConfig {
        SweepConfig {
            identity,
            base: Base::new(b).unwrap(),
            n_max,
            workers,
        }
    }

    #[test]
    fn names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!("nope".parse::<Identity>().is_err());
    }

    #[test]
    fn every_identity_passes_small() {
        for id in Identity::ALL {
            if id == Identity::ForwardDifference {
                continue;
            }
            let r = run_sweep(&cfg(id, 3, 20, 2)).unwrap();
            assert!(
                r.is_pass(),
                "{id}: {:?}",
                r.failures.first().map(ToString::to_string)
            );
            assert!(r.total > 0, "{id}");
        }
    }

    #[test]
    fn chu_vandermonde_skips_carries() {
        let r = run_sweep(&cfg(Identity::ChuVandermonde, 2, 2, 1)).unwrap();
        // (1, 1) carries; (0, 0), (0, 1), (1, 0) do not
        assert_eq!(r.total, 3);
        assert_eq!(r.skipped, 1);
        assert_eq!(r.summary(), "3/3 pass (1 skipped)");
    }

    #[test]
    fn stern_summary() {
        let r = run_sweep(&cfg(Identity::SternEquivalence, 2, 1000, 3)).unwrap();
        assert_eq!(r.summary(), "1000/1000 pass");
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let one = run_sweep(&cfg(Identity::FibAll, 5, 60, 1)).unwrap();
        let four = run_sweep(&cfg(Identity::FibAll, 5, 60, 4)).unwrap();
        assert_eq!(one.total, four.total);
        assert_eq!(one.failures, four.failures);
    }

    #[test]
    fn sharded_merge_is_index_ordered() {
        let (total, skipped, failures) = run_sharded(50, 4, |i| {
            Ok(ItemOutcome::one(VerifyResult::compare(
                "parity",
                vec![Param::new("i", i)],
                i % 3,
                0u64,
            )))
        })
        .unwrap();
        assert_eq!((total, skipped), (50, 0));
        let idx: Vec<String> = failures.iter().map(|f| f.params()[0].to_string()).collect();
        let want: Vec<String> = (0..50)
            .filter(|i| i % 3 != 0)
            .map(|i| format!("i={i}"))
            .collect();
        assert_eq!(idx, want);
    }

    #[test]
    fn first_error_by_index_wins() {
        let err = run_sharded(40, 4, |i| {
            if i == 7 || i == 30 {
                Err(Error::Internal(format!("at {i}")))
            } else {
                Ok(ItemOutcome::default())
            }
        })
        .unwrap_err();
        assert_eq!(err, Error::Internal("at 7".into()));
    }

    #[test]
    fn forward_difference_fails_from_k_one() {
        let r = run_sweep(&cfg(Identity::ForwardDifference, 2, 1, 1)).unwrap();
        assert!(r.is_pass());
        // sign (-1)^1 flips S(n, 1) for every n >= 1
        let r = run_sweep(&cfg(Identity::ForwardDifference, 2, 2, 1)).unwrap();
        assert_eq!(r.failures.len(), FORWARD_DIFFERENCE_N as usize);
        let r = run_sweep(&cfg(Identity::ForwardDifference, 2, 4, 1)).unwrap();
        assert!(!r.is_pass());
        assert_eq!(r.total, 28);
    }

    #[test]
    fn theta_tuple_count() {
        assert_eq!(theta_tuples(3, 5).len(), 6 + 36 + 216);
    }
}
