use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::GridError;
use crate::fft::FftPlan;
use crate::function::GridFunction;
use crate::spec::{GridSpec, Side};
use qadic_core::QInterval;

/// A frequency-side function stored as its nonzero cells only. The workhorse
/// representation for functions supported near the parabola, whose nonzero
/// cell count grows like R while the full grid grows like R^2.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSpectrum {
    spec: GridSpec,
    /// Sorted by (xi, eta), unique.
    cells: Vec<SparseCell>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparseCell {
    pub xi: u32,
    pub eta: u32,
    pub value: Complex64,
}

impl SparseSpectrum {
    pub fn new(spec: GridSpec, mut cells: Vec<SparseCell>) -> Self {
        let [s0, s1] = spec.points();
        cells.retain(|c| c.value != Complex64::default());
        for c in &cells {
            assert!((c.xi as usize) < s0 && (c.eta as usize) < s1, "cell out of range");
        }
        cells.sort_by_key(|c| (c.xi, c.eta));
        cells.dedup_by(|b, a| {
            if a.xi == b.xi && a.eta == b.eta {
                a.value += b.value;
                true
            } else {
                false
            }
        });
        Self { spec, cells }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn cells(&self) -> &[SparseCell] {
        &self.cells
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn map_values(&self, f: impl Fn(Complex64) -> Complex64) -> SparseSpectrum {
        let cells = self
            .cells
            .iter()
            .map(|c| SparseCell { value: f(c.value), ..*c })
            .collect();
        SparseSpectrum::new(self.spec, cells)
    }

    /// L2 mass of the space-side function, by Plancherel.
    pub fn l2_mass(&self) -> f64 {
        let meas = self.spec.cell_measure();
        self.cells.iter().map(|c| c.value.norm_sqr()).sum::<f64>() * meas
    }

    /// Restriction of the first frequency coordinate to an interval.
    pub fn restrict(&self, tau: &QInterval) -> Result<SparseSpectrum, GridError> {
        let mut cells = Vec::new();
        for c in &self.cells {
            if self.spec.cell_in_interval(0, c.xi as usize, tau)? {
                cells.push(*c);
            }
        }
        Ok(SparseSpectrum { spec: self.spec, cells })
    }

    /// Materializes the dense frequency table (budget-checked).
    pub fn to_grid(&self) -> Result<GridFunction, GridError> {
        let mut g = GridFunction::zeros(self.spec, Side::Frequency)?;
        for c in &self.cells {
            g.set(c.xi as usize, c.eta as usize, c.value);
        }
        Ok(g)
    }

    /// Space-side values streamed one axis-0 row at a time, using one full
    /// intermediate table plus a per-row scratch: f(n0, n1) for fixed n0.
    ///
    /// The callback receives (n0, row over n1). Rows are processed in
    /// parallel; per-row work is sequential so reductions done inside the
    /// callback per row stay deterministic.
    pub fn stream_space_rows<F>(&self, on_row: F) -> Result<(), GridError>
    where
        F: Fn(usize, &[Complex64]) + Sync,
    {
        self.spec.check_budget()?;
        let [s0, s1] = self.spec.points();
        let q = self.spec.q;
        // Inverse transform normalization: both frequency cell measures.
        let scale = self.spec.cell_measure();

        // Stage 1: U(k1, n0) = sum_{k0} V(k0, k1) e(+ n0 k0 / s0), stored
        // k1-major so stage-1 rows are contiguous.
        let mut inter = vec![Complex64::default(); s0 * s1];
        for c in &self.cells {
            inter[(c.eta as usize) * s0 + c.xi as usize] = c.value;
        }
        let plan0 = FftPlan::new(q, self.spec.axes[0].log_points());
        inter.par_chunks_mut(s0).for_each(|row| plan0.inverse(row));

        // Stage 2: per space row n0, gather over k1 and transform.
        let plan1 = FftPlan::new(q, self.spec.axes[1].log_points());
        (0..s0).into_par_iter().for_each_init(
            || vec![Complex64::default(); s1],
            |row, n0| {
                for k1 in 0..s1 {
                    row[k1] = inter[k1 * s0 + n0] * scale;
                }
                plan1.inverse(row);
                on_row(n0, row);
            },
        );
        Ok(())
    }

    /// Direct evaluation of the space-side function at one cell; O(nnz).
    pub fn eval_space_cell(&self, n0: usize, n1: usize) -> Complex64 {
        let [s0, s1] = self.spec.points();
        let scale = self.spec.cell_measure();
        let mut acc = Complex64::default();
        for c in &self.cells {
            let a0 = phase(n0 * c.xi as usize % s0, s0);
            let a1 = phase(n1 * c.eta as usize % s1, s1);
            acc += c.value * a0 * a1;
        }
        acc * scale
    }
}

#[inline]
fn phase(num: usize, den: usize) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * (num as f64) / (den as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_matches_dense_inverse() {
        let spec = GridSpec::square(3, 0, 3).unwrap();
        let cells = vec![
            SparseCell { xi: 1, eta: 2, value: Complex64::new(1.5, -0.5) },
            SparseCell { xi: 7, eta: 7, value: Complex64::new(0.0, 2.0) },
            SparseCell { xi: 26, eta: 0, value: Complex64::new(-1.0, 0.0) },
        ];
        let sp = SparseSpectrum::new(spec, cells);
        let dense = sp.to_grid().unwrap().inverse_fourier().unwrap();
        let [s0, s1] = dense.spec().points();

        // Streaming agrees with dense row by row.
        let rows = std::sync::Mutex::new(vec![Vec::new(); s0]);
        sp.stream_space_rows(|n0, row| {
            rows.lock().unwrap()[n0] = row.to_vec();
        })
        .unwrap();
        let rows = rows.into_inner().unwrap();
        for n0 in 0..s0 {
            for n1 in 0..s1 {
                let d = dense.at(n0, n1);
                assert!((rows[n0][n1] - d).norm() < 1e-12);
            }
        }

        // Point evaluation agrees too.
        for (n0, n1) in [(0, 0), (3, 11), (26, 5)] {
            assert!((sp.eval_space_cell(n0, n1) - dense.at(n0, n1)).norm() < 1e-12);
        }

        // Plancherel from the sparse side.
        let l2 = dense.lp_integral(2.0);
        assert!((sp.l2_mass() - l2).abs() < 1e-12 * l2.max(1.0));
    }
}
