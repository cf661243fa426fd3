use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::GridError;
use crate::function::GridFunction;
use crate::spec::Side;
use qadic_core::{pow_u64, QInterval};

impl GridFunction {
    /// Zeroes all frequency cells whose first coordinate lies outside the
    /// interval. Idempotent.
    pub fn restrict_frequency(&self, tau: &QInterval) -> Result<GridFunction, GridError> {
        if self.side() != Side::Frequency {
            return Err(GridError::WrongSide { expected: "frequency", got: self.side().name() });
        }
        let spec = *self.spec();
        let [s0, _] = spec.points();
        let mut member = Vec::with_capacity(s0);
        for n in 0..s0 {
            member.push(spec.cell_in_interval(0, n, tau)?);
        }
        Ok(self.masked(|i0, _| member[i0]))
    }

    /// Low part: frequencies in the closed ball of radius q^cutoff are kept.
    /// Computed by spatial averaging over squares of side q^(-cutoff), which
    /// agrees with the transform route exactly.
    pub fn lowpass(&self, cutoff: i32) -> Result<GridFunction, GridError> {
        if self.side() != Side::Space {
            return Err(GridError::WrongSide { expected: "space", got: self.side().name() });
        }
        let spec = *self.spec();
        let q = spec.q;
        let [s0, s1] = spec.points();
        // Averaging groups on axis i: cells sharing their index mod
        // q^(extent + cutoff ... ) -- residues mod q^(E - (-cutoff)).
        let group = |axis: usize| -> Result<(usize, usize), GridError> {
            let ax = spec.axes[axis];
            // Square side q^(-cutoff) => same square iff v(n - n') >= E + cutoff.
            let e = ax.extent + cutoff;
            if e < 0 || cutoff > ax.cell {
                return Err(GridError::CutoffOutOfRange(cutoff, -ax.extent, ax.cell));
            }
            let modulus = pow_u64(q, e as u32) as usize;
            let per = pow_u64(q, (ax.log_points() as i32 - e) as u32) as usize;
            Ok((modulus, per))
        };
        let (m0, per0) = group(0)?;
        let (m1, per1) = group(1)?;
        let inv = 1.0 / (per0 as f64 * per1 as f64);

        // Accumulate block means indexed by (n0 mod m0, n1 mod m1).
        let mut sums = vec![Complex64::default(); m0 * m1];
        for i0 in 0..s0 {
            let r0 = i0 % m0;
            let row = &self.values()[i0 * s1..(i0 + 1) * s1];
            for (i1, v) in row.iter().enumerate() {
                sums[r0 * m1 + i1 % m1] += v;
            }
        }
        sums.iter_mut().for_each(|v| *v *= inv);
        let out = GridFunction::from_fn(spec, Side::Space, |i0, i1| {
            sums[(i0 % m0) * m1 + (i1 % m1)]
        })?;
        Ok(out)
    }

    /// Low part via the transform: mask the frequency ball, come back.
    pub fn lowpass_via_transform(&self, cutoff: i32) -> Result<GridFunction, GridError> {
        let fh = self.forward_fourier()?;
        let spec = *fh.spec();
        let q = spec.q;
        let inside = |axis: usize, n: usize| -> bool {
            // |rep| = |n q^(-E)| <= q^cutoff.
            if n == 0 {
                return true;
            }
            let e = spec.axes[axis].extent;
            let v = qadic_core::valuation_u128(n as u128, q) as i64;
            e as i64 - v <= cutoff as i64
        };
        let masked = fh.masked(|i0, i1| inside(0, i0) && inside(1, i1));
        masked.inverse_fourier()
    }

    /// High part complement of `lowpass`.
    pub fn highpart(&self, cutoff: i32) -> Result<GridFunction, GridError> {
        self.sub(&self.lowpass(cutoff)?)
    }

    /// Largest per-axis exponent s such that the function is constant on all
    /// squares of side q^s, up to a relative tolerance. s = -cell means
    /// single-cell constancy (always true); larger s means coarser blocks.
    pub fn constancy_scale(&self, rel_tol: f64) -> [i32; 2] {
        self.constancy_by(rel_tol, |v| v)
    }

    /// Same for the modulus |f|.
    pub fn constancy_scale_abs(&self, rel_tol: f64) -> [i32; 2] {
        self.constancy_by(rel_tol, |v| Complex64::new(v.norm(), 0.0))
    }

    fn constancy_by(&self, rel_tol: f64, map: impl Fn(Complex64) -> Complex64 + Sync) -> [i32; 2] {
        let spec = *self.spec();
        let tol = rel_tol * self.sup_abs().max(f64::MIN_POSITIVE);
        let mut out = [0i32; 2];
        for axis in 0..2 {
            let ax = spec.axes[axis];
            let mut s = -ax.cell;
            // Cells share a side-q^t square along this axis iff their
            // indices agree mod q^(extent - t).
            while s < ax.extent {
                let m_exp = ax.extent - (s + 1);
                let modulus = if m_exp <= 0 { 1 } else { pow_u64(spec.q, m_exp as u32) as usize };
                if !self.axis_classes_constant(axis, modulus, tol, &map) {
                    break;
                }
                s += 1;
            }
            out[axis] = s;
        }
        out
    }

    /// True when cells agreeing mod `modulus` on the given axis carry equal
    /// mapped values (within tol), for every fixed index on the other axis.
    fn axis_classes_constant(
        &self,
        axis: usize,
        modulus: usize,
        tol: f64,
        map: &(impl Fn(Complex64) -> Complex64 + Sync),
    ) -> bool {
        let [s0, s1] = self.spec().points();
        let vals = self.values();
        if axis == 0 {
            (modulus..s0).into_par_iter().all(|i0| {
                let rep = i0 % modulus;
                (0..s1).all(|i1| {
                    (map(vals[i0 * s1 + i1]) - map(vals[rep * s1 + i1])).norm() <= tol
                })
            })
        } else {
            (0..s0).into_par_iter().all(|i0| {
                let row = &vals[i0 * s1..(i0 + 1) * s1];
                (modulus..s1).all(|i1| (map(row[i1]) - map(row[i1 % modulus])).norm() <= tol)
            })
        }
    }

    /// Measure-weighted cyclic convolution via the transform.
    pub fn convolve(&self, other: &GridFunction) -> Result<GridFunction, GridError> {
        if self.side() != Side::Space {
            return Err(GridError::WrongSide { expected: "space", got: self.side().name() });
        }
        let fh = self.forward_fourier()?;
        let gh = other.forward_fourier()?;
        fh.multiply(&gh)?.inverse_fourier()
    }
}
