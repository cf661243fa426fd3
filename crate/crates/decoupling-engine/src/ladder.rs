use serde::Serialize;

use crate::error::EngineError;
use qadic_core::{interval_partition, is_odd_prime, pow_u64, QInterval};

/// The multiscale setup: R_k = q^(kr) for k = 0..N, with r the smallest
/// multiple of 4 satisfying q^(q^(A(r-4))) <= R < q^(q^(Ar)) and
/// A = ceil(1/eps). All cap lengths R_k^(-1/2) are then even powers of q.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScaleLadder {
    pub q: u32,
    pub eps: f64,
    /// A = ceil(1/eps).
    pub cap_a: u32,
    /// Scale step exponent; r = 0 mod 4.
    pub r: u32,
    /// Number of ladder scales: q^(Nr) <= R < q^((N+1)r).
    pub n_levels: u32,
    /// log_q R.
    pub rho: u32,
    /// Working depth J <= N; the pipeline runs at frequency resolution 1/R_J.
    pub j: u32,
}

impl ScaleLadder {
    pub fn build(q: u32, rho: u32, eps: f64) -> Result<Self, EngineError> {
        if !is_odd_prime(q) {
            return Err(EngineError::BadPrime(q));
        }
        if rho == 0 || rho % 2 != 0 {
            return Err(EngineError::ScaleNotEvenPower(rho));
        }
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(EngineError::BadEps(eps));
        }
        let cap_a = (1.0 / eps).ceil() as u32;
        // Smallest r in 4N with q^(A(r-4)) <= rho < q^(Ar); r = 4 always
        // satisfies the lower bound, the upper bound may push r up.
        let mut r = 4u32;
        loop {
            let lower_ok = match checked_qpow(q, cap_a * (r - 4)) {
                Some(p) => p <= rho as u128,
                None => false,
            };
            let upper_ok = match checked_qpow(q, cap_a * r) {
                Some(p) => (rho as u128) < p,
                None => true,
            };
            if lower_ok && upper_ok {
                break;
            }
            if !lower_ok {
                return Err(EngineError::NoAdmissibleStep { rho, q, cap_a });
            }
            r += 4;
        }
        let n_levels = rho / r;
        if n_levels == 0 {
            return Err(EngineError::ScaleTooSmall { rho, r });
        }
        Ok(Self { q, eps, cap_a, r, n_levels, rho, j: n_levels })
    }

    pub fn with_depth(mut self, j: u32) -> Result<Self, EngineError> {
        if j == 0 || j > self.n_levels {
            return Err(EngineError::BadDepth { j, n: self.n_levels });
        }
        self.j = j;
        Ok(self)
    }

    /// log_q R_k.
    pub fn scale_exp(&self, k: u32) -> u32 {
        k * self.r
    }

    /// Cap level at scale k: |tau_k| = q^(-kr/2).
    pub fn cap_level(&self, k: u32) -> u32 {
        k * self.r / 2
    }

    /// R_k as f64.
    pub fn scale(&self, k: u32) -> f64 {
        (self.q as f64).powi(self.scale_exp(k) as i32)
    }

    pub fn r_value(&self) -> f64 {
        (self.q as f64).powi(self.rho as i32)
    }

    /// Natural log of R (the log convention for all explicit constants).
    pub fn log_r(&self) -> f64 {
        self.rho as f64 * (self.q as f64).ln()
    }

    /// 1 - (log R)^(-1), the narrow-absorption factor.
    pub fn one_minus_inv_log(&self) -> f64 {
        1.0 - 1.0 / self.log_r()
    }

    /// q^(r/2): the number of children of a cap, and the broad constant's
    /// scale factor.
    pub fn q_r_half(&self) -> f64 {
        (self.q as f64).powi((self.r / 2) as i32)
    }

    /// All caps at scale k, in residue order.
    pub fn caps(&self, k: u32) -> Vec<QInterval> {
        interval_partition(self.q, self.cap_level(k)).expect("cap level fits")
    }

    /// Children of a cap at the next scale.
    pub fn children(&self, cap: &QInterval, k_child: u32) -> Vec<QInterval> {
        let child_level = self.cap_level(k_child);
        let step = pow_u64(self.q, cap.level());
        let count = pow_u64(self.q, child_level - cap.level());
        (0..count)
            .map(|t| {
                QInterval::new(self.q, child_level, cap.residue() + t * step)
                    .expect("child residue in range")
            })
            .collect()
    }
}

fn checked_qpow(q: u32, e: u32) -> Option<u128> {
    let mut acc = 1u128;
    for _ in 0..e {
        acc = acc.checked_mul(q as u128)?;
    }
    Some(acc)
}
