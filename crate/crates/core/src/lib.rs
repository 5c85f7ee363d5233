//! Exact arithmetic for base-b analogues of binomial coefficients,
//! factorials, Stirling numbers, Fibonacci numbers and the exponential,
//! all built from products over the base-b digits of their arguments,
//! together with verifiers for the identities they satisfy.
//!
//! ```
//! use baseb::{binom_b, fib_b, Base};
//!
//! let b3 = Base::new(3).unwrap();
//! // 5 = [2,1]_3, 2 = [2,0]_3: C(2,2) C(1,0) = 1
//! assert_eq!(binom_b(5, 2, b3), 1u32.into());
//! assert_eq!(fib_b(26, b3), 8u32.into());
//! ```

pub mod coeffs;
pub mod digits;
pub mod error;
pub mod exponential;
pub mod fibonacci;
pub mod poly;
pub mod series;
pub mod stirling;
pub mod summation;
pub mod sweep;
pub mod verify;

pub use coeffs::{binom, binom_b, factorial_b, pochhammer, step_binom};
pub use digits::{
    carry_free_add, digit_count, digit_sum, dominated_iter, dominates, first_carry, to_digits,
    Base, DigitVec,
};
pub use error::{Error, Result};
pub use exponential::{
    check_log_gamma_bound, exp_b_approx, exp_b_product, exp_b_series_numeric, exp_b_symbolic,
    star_convolve, upper_gamma_int, DigitalSeries,
};
pub use fibonacci::{fib, fib_b, fib_b_dominated, fib_tilde2, stern};
pub use poly::BivarPoly;
pub use series::{Coefficient, Series};
pub use stirling::{stirling2, stirling2_b, stirling2_b_explicit, StirlingTable};
pub use summation::{dominated_sum_form, product_form, DigitKernel};
pub use sweep::{run_sweep, Identity, SweepConfig, SweepReport};
pub use verify::{Param, Value, VerifyResult};
