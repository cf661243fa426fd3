//! The exact uncertainty principle: a function with Fourier support in a cap
//! parallelogram has modulus constant on every translate of the dual tube.

use num_complex::Complex64;

use crate::error::GeomError;
use crate::parallelogram::FrequencyParallelogram;
use crate::tube::TubeFamily;
use grid_fourier::{GridFunction, Side};
use qadic_core::{pow_u64, QInterval};

pub struct UncertaintyReport {
    pub tube_count: u64,
    /// Max over tubes of (max |f| - min |f|) within the tube.
    pub max_deviation: f64,
    pub sup: f64,
    /// One constant per tube (the modulus on it, from the first cell seen).
    pub tube_levels: Vec<f64>,
}

/// Verifies per-tube constancy of |f| for a space-side function whose
/// transform is supported in the parallelogram over `cap` at scale
/// R = q^r_exp. The support precondition is checked first.
pub fn uncertainty_check(
    f: &GridFunction,
    cap: &QInterval,
    r_exp: u32,
) -> Result<UncertaintyReport, GeomError> {
    let spec = *f.spec();
    let p = FrequencyParallelogram::new(*cap, r_exp)?;
    let fh = f.forward_fourier()?;
    let c_exp = fh.spec().axes[0].cell as u32;
    let [s0, s1] = fh.spec().points();
    let sup_h = fh.sup_abs();
    for i0 in 0..s0 {
        for i1 in 0..s1 {
            if fh.at(i0, i1).norm() > 1e-12 * sup_h.max(1.0)
                && !p.contains_cell(c_exp, i0 as u64, i1 as u64)
            {
                return Err(GeomError::SupportViolation(i0 as u32, i1 as u32));
            }
        }
    }

    let ambient = spec.axes[0].extent as u32;
    let fam = TubeFamily::for_cap(ambient, cap)?;
    let n_tubes = fam.tube_count() as usize;
    let mut min = vec![f64::INFINITY; n_tubes];
    let mut max = vec![0.0f64; n_tubes];
    let [x0, x1] = spec.points();
    for n0 in 0..x0 {
        for n1 in 0..x1 {
            let m = f.at(n0, n1).norm();
            let t = fam.tube_of_cell(n0 as u64, n1 as u64) as usize;
            min[t] = min[t].min(m);
            max[t] = max[t].max(m);
        }
    }
    let max_deviation = min
        .iter()
        .zip(&max)
        .map(|(lo, hi)| if lo.is_finite() { hi - lo } else { 0.0 })
        .fold(0.0, f64::max);
    Ok(UncertaintyReport {
        tube_count: fam.tube_count(),
        max_deviation,
        sup: f.sup_abs(),
        tube_levels: max,
    })
}

/// The kernel identity behind the uncertainty principle: the inverse
/// transform of the parallelogram indicator is R^(-3/2) chi(a x + a^2 y)
/// on the tube through the origin and zero elsewhere. Returns the max
/// pointwise deviation.
pub fn kernel_identity_deviation(cap: &QInterval, r_exp: u32) -> Result<f64, GeomError> {
    let q = cap.q();
    let p = FrequencyParallelogram::new(*cap, r_exp)?;
    let spec = grid_fourier::GridSpec::square(q, 0, r_exp as i32)?;
    let kernel = GridFunction::from_fn(spec, Side::Frequency, |i0, i1| {
        if p.contains_cell(r_exp, i0 as u64, i1 as u64) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::default()
        }
    })?
    .inverse_fourier()?;

    let e = r_exp;
    let side = pow_u64(q, e);
    let a = cap.residue() as u128;
    let fam = TubeFamily::for_cap(e, cap)?;
    let origin_tube = fam.tube_of_cell(0, 0);
    let amp = (pow_u64(q, 3 * r_exp / 2) as f64).recip();
    let modulus = pow_u64(q, e) as u128;
    let mut worst = 0.0f64;
    for n0 in 0..side {
        for n1 in 0..side {
            let expect = if fam.contains(origin_tube, n0, n1) {
                let num = (a * n0 as u128 + a * a * (n1 as u128)) % modulus;
                Complex64::from_polar(
                    amp,
                    std::f64::consts::TAU * num as f64 / modulus as f64,
                )
            } else {
                Complex64::default()
            };
            worst = worst.max((kernel.at(n0 as usize, n1 as usize) - expect).norm());
        }
    }
    Ok(worst)
}
