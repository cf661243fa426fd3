use crate::error::GeomError;
use qadic_core::{pow_u64, QInterval};

/// The frequency parallelogram over a base interval I with |I| = R^(-1/2):
/// {(xi, eta): xi in I, |eta - xi^2| <= 1/R}. By the vanishing of curvature
/// across one cap it coincides with {|xi - a| <= R^(-1/2),
/// |eta - 2 a xi + a^2| <= 1/R} for any a in I; the canonical anchor is the
/// residue of I.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrequencyParallelogram {
    base: QInterval,
    /// R = q^(2 * half_exp); |I| = q^(-half_exp).
    half_exp: u32,
}

impl FrequencyParallelogram {
    pub fn new(base: QInterval, r_exp: u32) -> Result<Self, GeomError> {
        if r_exp == 0 || r_exp % 2 != 0 {
            return Err(GeomError::BadScaleExponent(r_exp as i64));
        }
        let half = r_exp / 2;
        if base.level() != half {
            return Err(GeomError::IntervalLevel { want: half, got: base.level() });
        }
        Ok(Self { base, half_exp: half })
    }

    pub fn base(&self) -> &QInterval {
        &self.base
    }

    pub fn r_exp(&self) -> u32 {
        2 * self.half_exp
    }

    pub fn anchor(&self) -> u64 {
        self.base.residue()
    }

    /// Cell membership at frequency resolution q^(-c_exp), c_exp >= r_exp,
    /// directly from the defining conditions (xi in I, eta near xi^2).
    pub fn contains_cell(&self, c_exp: u32, xi_idx: u64, eta_idx: u64) -> bool {
        let q = self.base.q();
        let halves = pow_u64(q, self.half_exp);
        if xi_idx % halves != self.base.residue() {
            return false;
        }
        let modulus = pow_u64(q, 2 * self.half_exp) as u128;
        debug_assert!(c_exp >= self.r_exp());
        let xi2 = (xi_idx as u128) * (xi_idx as u128) % modulus;
        (eta_idx as u128) % modulus == xi2
    }

    /// Cell membership of the sheared box form with an arbitrary anchor a in
    /// I: |xi - a| <= R^(-1/2) and |eta - 2 a xi + a^2| <= 1/R.
    pub fn contains_cell_sheared(&self, _c_exp: u32, anchor: u64, xi_idx: u64, eta_idx: u64) -> bool {
        let q = self.base.q();
        let halves = pow_u64(q, self.half_exp) as i128;
        if (xi_idx as i128 - anchor as i128).rem_euclid(halves) != 0 {
            return false;
        }
        let modulus = pow_u64(q, 2 * self.half_exp) as i128;
        let target = (2 * anchor as i128 * xi_idx as i128 - (anchor as i128) * (anchor as i128))
            .rem_euclid(modulus);
        (eta_idx as i128).rem_euclid(modulus) == target
    }

    /// Enumerates all cells of the parallelogram at resolution q^(-c_exp).
    pub fn cells(&self, c_exp: u32) -> Vec<(u32, u32)> {
        let q = self.base.q();
        let halves = pow_u64(q, self.half_exp);
        let fine = pow_u64(q, c_exp);
        let depth = pow_u64(q, 2 * self.half_exp);
        let eta_per_xi = fine / depth;
        let mut out = Vec::new();
        let mut xi = self.base.residue();
        while xi < fine {
            let eta0 = ((xi as u128) * (xi as u128) % depth as u128) as u64;
            for t in 0..eta_per_xi {
                out.push((xi as u32, (eta0 + t * depth) as u32));
            }
            xi += halves;
        }
        out
    }
}

/// Exhaustive cell-level equality between the curved and sheared forms of a
/// cap parallelogram, with the first mismatching cell as witness.
pub struct ParallelogramCheck {
    pub equal: bool,
    pub cells_each: usize,
    pub mismatch: Option<(u32, u32)>,
}

pub fn verify_parallelogram_equality(
    base: QInterval,
    r_exp: u32,
    anchor: u64,
) -> Result<ParallelogramCheck, GeomError> {
    let p = FrequencyParallelogram::new(base, r_exp)?;
    let q = base.q();
    let fine = pow_u64(q, r_exp);
    let mut count = 0usize;
    for xi in 0..fine {
        for eta in 0..fine {
            let curved = p.contains_cell(r_exp, xi, eta);
            let sheared = p.contains_cell_sheared(r_exp, anchor, xi, eta);
            if curved != sheared {
                return Ok(ParallelogramCheck {
                    equal: false,
                    cells_each: count,
                    mismatch: Some((xi as u32, eta as u32)),
                });
            }
            if curved {
                count += 1;
            }
        }
    }
    Ok(ParallelogramCheck { equal: true, cells_each: count, mismatch: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qadic_core::interval_partition;

    #[test]
    fn equality_exhaustive_small() {
        // q = 3, R = 9: all 3 base intervals, anchors across the interval.
        for base in interval_partition(3, 1).unwrap() {
            for lift in 0..3u64 {
                let anchor = base.residue() + lift * 3;
                let chk = verify_parallelogram_equality(base, 2, anchor).unwrap();
                assert!(chk.equal, "mismatch at {:?} anchor {anchor}: {:?}", base, chk.mismatch);
                assert_eq!(chk.cells_each, 3);
            }
        }
    }

    #[test]
    fn cells_count_matches() {
        let base = QInterval::new(3, 2, 7).unwrap();
        let p = FrequencyParallelogram::new(base, 4).unwrap();
        // At resolution q^-6: q^(6-2) xi-cells x q^(6-4) eta-cells.
        let cells = p.cells(6);
        assert_eq!(cells.len(), 81 * 9);
        for (xi, eta) in cells {
            assert!(p.contains_cell(6, xi as u64, eta as u64));
        }
    }
}
