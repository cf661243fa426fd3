//! Exact finite-precision arithmetic in the q-adic field, the additive
//! character, and q-adic interval combinatorics.
//!
//! Elements of the field are carried as a valuation plus a normalized window
//! of base-q mantissa digits. All digit carries are exact; operations that
//! would silently drop information (valuation gaps wider than the window,
//! integers too large to embed) fail with an error instead of rounding.
//!
//! `q` is restricted to odd primes throughout.

mod character;
mod digits;
mod error;
mod interval;
mod scalar;

pub use character::chi;
pub use digits::{digit_of, pow_u128, pow_u64, try_pow_u64, valuation_u128};
pub use error::QAdicError;
pub use interval::{interval_partition, QInterval};
pub use scalar::{QAdicScalar, QNorm};

/// Checks that `q` is an odd prime (trial division; q stays small here).
pub fn is_odd_prime(q: u32) -> bool {
    if q < 3 || q % 2 == 0 {
        return false;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}
