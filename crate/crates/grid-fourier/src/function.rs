use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::GridError;
use crate::fft::FftPlan;
use crate::spec::{GridSpec, Side};

/// A complex-valued function on a finite two-axis q-adic grid, tagged with
/// the side of the transform it lives on. Values are row-major with axis 0
/// major.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    spec: GridSpec,
    side: Side,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn zeros(spec: GridSpec, side: Side) -> Result<Self, GridError> {
        spec.check_budget()?;
        Ok(Self { spec, side, values: vec![Complex64::default(); spec.len()] })
    }

    pub fn from_values(
        spec: GridSpec,
        side: Side,
        values: Vec<Complex64>,
    ) -> Result<Self, GridError> {
        spec.check_budget()?;
        if values.len() != spec.len() {
            return Err(GridError::SpecMismatch);
        }
        Ok(Self { spec, side, values })
    }

    /// Fills from a cell-index function.
    pub fn from_fn(
        spec: GridSpec,
        side: Side,
        f: impl Fn(usize, usize) -> Complex64,
    ) -> Result<Self, GridError> {
        spec.check_budget()?;
        let [s0, s1] = spec.points();
        let mut values = Vec::with_capacity(s0 * s1);
        for i0 in 0..s0 {
            for i1 in 0..s1 {
                values.push(f(i0, i1));
            }
        }
        Ok(Self { spec, side, values })
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    #[inline]
    pub fn at(&self, i0: usize, i1: usize) -> Complex64 {
        self.values[i0 * self.spec.points()[1] + i1]
    }

    #[inline]
    pub fn set(&mut self, i0: usize, i1: usize, v: Complex64) {
        let s1 = self.spec.points()[1];
        self.values[i0 * s1 + i1] = v;
    }

    fn expect_side(&self, side: Side) -> Result<(), GridError> {
        if self.side != side {
            return Err(GridError::WrongSide { expected: side.name(), got: self.side.name() });
        }
        Ok(())
    }

    /// Forward transform: f^(xi) = integral f(x) chi(-xi x) dx. Axis
    /// exponents swap and the kernel carries the cell measure.
    pub fn forward_fourier(&self) -> Result<GridFunction, GridError> {
        self.expect_side(Side::Space)?;
        self.transform::<true>()
    }

    /// Inverse transform: f(x) = integral F(xi) chi(+xi x) dxi.
    pub fn inverse_fourier(&self) -> Result<GridFunction, GridError> {
        self.expect_side(Side::Frequency)?;
        self.transform::<false>()
    }

    fn transform<const FWD: bool>(&self) -> Result<GridFunction, GridError> {
        let out_spec = self.spec.dual();
        out_spec.check_budget()?;
        let q = self.spec.q;
        let [s0, s1] = self.spec.points();
        // Total normalization: product of input cell measures.
        let scale = self.spec.cell_measure();

        let mut values = self.values.clone();

        // Pass over axis 1 (contiguous rows).
        let plan1 = FftPlan::new(q, self.spec.axes[1].log_points());
        values.par_chunks_mut(s1).for_each(|row| {
            if FWD {
                plan1.forward(row);
            } else {
                plan1.inverse(row);
            }
        });

        // Transpose, pass over axis 0, transpose back.
        let mut t = transpose(&values, s0, s1);
        let plan0 = FftPlan::new(q, self.spec.axes[0].log_points());
        t.par_chunks_mut(s0).for_each(|row| {
            if FWD {
                plan0.forward(row);
            } else {
                plan0.inverse(row);
            }
        });
        let mut values = transpose(&t, s1, s0);
        drop(t);

        values.par_iter_mut().for_each(|v| *v *= scale);
        Ok(GridFunction {
            spec: out_spec,
            side: if FWD { Side::Frequency } else { Side::Space },
            values,
        })
    }

    /// Haar-weighted power integral: sum over cells of |f|^p * cell measure.
    pub fn lp_integral(&self, p: f64) -> f64 {
        let meas = self.spec.cell_measure();
        let [_, s1] = self.spec.points();
        let row_sums: Vec<f64> = self
            .values
            .par_chunks(s1)
            .map(|row| row.iter().map(|v| pow_abs(*v, p)).sum::<f64>())
            .collect();
        row_sums.iter().sum::<f64>() * meas
    }

    /// Power integral restricted to cells passing the predicate.
    pub fn lp_integral_where(&self, p: f64, keep: impl Fn(usize, usize) -> bool + Sync) -> f64 {
        let meas = self.spec.cell_measure();
        let [_, s1] = self.spec.points();
        let row_sums: Vec<f64> = self
            .values
            .par_chunks(s1)
            .enumerate()
            .map(|(i0, row)| {
                row.iter()
                    .enumerate()
                    .filter(|(i1, _)| keep(i0, *i1))
                    .map(|(_, v)| pow_abs(*v, p))
                    .sum::<f64>()
            })
            .collect();
        row_sums.iter().sum::<f64>() * meas
    }

    pub fn sup_abs(&self) -> f64 {
        let [_, s1] = self.spec.points();
        self.values
            .par_chunks(s1)
            .map(|row| row.iter().map(|v| v.norm_sqr()).fold(0.0, f64::max))
            .collect::<Vec<_>>()
            .into_iter()
            .fold(0.0, f64::max)
            .sqrt()
    }

    fn zip_with(
        &self,
        other: &GridFunction,
        f: impl Fn(Complex64, Complex64) -> Complex64 + Sync,
    ) -> Result<GridFunction, GridError> {
        if self.spec != other.spec || self.side != other.side {
            return Err(GridError::SpecMismatch);
        }
        let values = self
            .values
            .par_iter()
            .zip(other.values.par_iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(GridFunction { spec: self.spec, side: self.side, values })
    }

    pub fn multiply(&self, other: &GridFunction) -> Result<GridFunction, GridError> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &GridFunction) -> Result<GridFunction, GridError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &GridFunction) -> Result<GridFunction, GridError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn conjugate(&self) -> GridFunction {
        let values = self.values.par_iter().map(|v| v.conj()).collect();
        GridFunction { spec: self.spec, side: self.side, values }
    }

    pub fn scale(&self, c: Complex64) -> GridFunction {
        let values = self.values.par_iter().map(|v| v * c).collect();
        GridFunction { spec: self.spec, side: self.side, values }
    }

    /// |f|^2 as a function on the same grid.
    pub fn abs_squared(&self) -> GridFunction {
        let values =
            self.values.par_iter().map(|v| Complex64::new(v.norm_sqr(), 0.0)).collect();
        GridFunction { spec: self.spec, side: self.side, values }
    }

    /// Zeroes every cell failing the predicate.
    pub fn masked(&self, keep: impl Fn(usize, usize) -> bool + Sync) -> GridFunction {
        let [_, s1] = self.spec.points();
        let values = self
            .values
            .par_iter()
            .enumerate()
            .map(|(i, &v)| if keep(i / s1, i % s1) { v } else { Complex64::default() })
            .collect();
        GridFunction { spec: self.spec, side: self.side, values }
    }
}

#[inline]
fn pow_abs(v: Complex64, p: f64) -> f64 {
    let n2 = v.norm_sqr();
    if n2 == 0.0 {
        return 0.0;
    }
    if p == 2.0 {
        n2
    } else if p == 4.0 {
        n2 * n2
    } else if p == 6.0 {
        n2 * n2 * n2
    } else {
        n2.powf(p / 2.0)
    }
}

fn transpose(values: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); values.len()];
    const B: usize = 64;
    // Blocked transpose; parallel over output row bands.
    out.par_chunks_mut(B * rows).enumerate().for_each(|(band, chunk)| {
        let c0 = band * B;
        let cband = ((c0 + B).min(cols)) - c0;
        for r0 in (0..rows).step_by(B) {
            let rband = (r0 + B).min(rows) - r0;
            for dc in 0..cband {
                for dr in 0..rband {
                    chunk[dc * rows + (r0 + dr)] = values[(r0 + dr) * cols + (c0 + dc)];
                }
            }
        }
    });
    out
}
