use num_complex::Complex64;

use crate::error::EngineError;
use grid_fourier::{FftPlan, SparseCell, SparseSpectrum};
use parabola_geometry::TubeFamily;
use qadic_core::{pow_u64, QInterval};

/// The wave-packet table of a function whose Fourier support lies in the
/// parallelogram over `cap` at scale R = q^(2A), sampled on the ambient box
/// B(0, q^res_exp)^2.
///
/// Writing cells of the parallelogram as xi = a + t q^A,
/// eta = a^2 + 2 a t q^A + s q^(2A), the space-side function factors as
///   f(n0, n1) = chi(a n0 + a^2 n1 / q^rho) * G(tube of (n0, n1))
/// where G is the two-dimensional inverse DFT of the (t, s) coefficient
/// array. G is exactly the per-tube constant of the uncertainty principle,
/// so pruning, square functions and suprema all read off this table.
#[derive(Debug, Clone)]
pub struct CapTubeTable {
    pub cap: QInterval,
    /// Uncertainty scale exponent: tubes have width q^A, height q^(2A).
    pub half_exp: u32,
    pub res_exp: u32,
    pub family: TubeFamily,
    /// Tube values indexed by the family's tube index; f = chi0 * value.
    values: Vec<Complex64>,
}

impl CapTubeTable {
    /// Analyzes a sparse spectrum restricted to `cap` (the caller passes the
    /// already-restricted cells). Fails if any cell escapes the cap
    /// parallelogram at scale q^(2 * cap.level()).
    pub fn analyze(
        spectrum: &SparseSpectrum,
        cap: &QInterval,
        res_exp: u32,
    ) -> Result<Self, EngineError> {
        let q = cap.q();
        let a_exp = cap.level();
        if res_exp < 2 * a_exp {
            return Err(EngineError::ResolutionTooCoarse { res: res_exp, level: a_exp });
        }
        let family = TubeFamily::for_cap(res_exp, cap)?;
        let t_size = pow_u64(q, res_exp - a_exp) as usize;
        let s_size = pow_u64(q, res_exp - 2 * a_exp) as usize;
        let qa = pow_u64(q, a_exp);
        let q2a = pow_u64(q, 2 * a_exp) as u128;
        let qrho = pow_u64(q, res_exp) as u128;
        let a = cap.residue() as u128;

        let mut coeff = vec![Complex64::default(); t_size * s_size];
        for c in spectrum.cells() {
            let xi = c.xi as u128;
            let eta = c.eta as u128;
            if xi % qa as u128 != a {
                return Err(EngineError::SupportViolation(c.xi, c.eta));
            }
            let t = ((xi - a) / qa as u128) as usize;
            let target = (2 * a * xi + q2a * q2a - a * a) % q2a;
            if eta % q2a != target % q2a {
                return Err(EngineError::SupportViolation(c.xi, c.eta));
            }
            let diff = (eta + qrho - (2 * a * xi + qrho - a * a) % qrho) % qrho;
            debug_assert!(diff % q2a == 0);
            let s = (diff / q2a) as usize;
            coeff[t * s_size + s] += c.value;
        }

        // G = inverse 2-D DFT of the coefficient array, scaled by the
        // frequency cell measure q^(-2 rho).
        dft2(&mut coeff, t_size, s_size, q, false);
        let scale = (qrho as f64).powi(-2);
        for v in &mut coeff {
            *v *= scale;
        }
        Ok(Self { cap: *cap, half_exp: a_exp, res_exp, family, values: coeff })
    }

    pub fn tube_count(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    #[inline]
    pub fn tube_of_cell(&self, n0: u64, n1: u64) -> usize {
        self.family.tube_of_cell(n0, n1) as usize
    }

    /// The canonical character factor chi(a x + a^2 y) at a unit cell.
    #[inline]
    pub fn char_phase(&self, n0: u64, n1: u64) -> Complex64 {
        let qrho = pow_u64(self.cap.q(), self.res_exp) as u128;
        let a = self.cap.residue() as u128;
        let num = (a * n0 as u128 + a * a * n1 as u128) % qrho;
        Complex64::from_polar(1.0, std::f64::consts::TAU * num as f64 / qrho as f64)
    }

    /// Space-side value at a unit cell.
    pub fn value_at_cell(&self, n0: u64, n1: u64) -> Complex64 {
        self.char_phase(n0, n1) * self.values[self.tube_of_cell(n0, n1)]
    }

    /// |f| on the tube with the given index.
    #[inline]
    pub fn level(&self, tube: usize) -> f64 {
        self.values[tube].norm()
    }

    pub fn sup_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).fold(0.0, f64::max).sqrt()
    }

    /// Exact L2 mass: sum of |c_T|^2 |T|.
    pub fn l2_mass(&self) -> f64 {
        let tube_cells = self.family.tube_measure() as f64;
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * tube_cells
    }

    /// L^p mass (each tube contributes |c_T|^p |T|).
    pub fn lp_mass(&self, p: f64) -> f64 {
        let tube_cells = self.family.tube_measure() as f64;
        self.values
            .iter()
            .map(|v| {
                let n2 = v.norm_sqr();
                match p {
                    _ if p == 2.0 => n2,
                    _ if p == 4.0 => n2 * n2,
                    _ if p == 6.0 => n2 * n2 * n2,
                    _ => n2.powf(p / 2.0),
                }
            })
            .sum::<f64>()
            * tube_cells
    }

    /// Rebuilds the sparse spectrum of chi0 * (masked tube values): forward
    /// 2-D DFT back to parallelogram cells. `keep` selects tubes.
    pub fn synthesize(&self, keep: impl Fn(usize) -> bool) -> SparseSpectrum {
        let q = self.cap.q();
        let a_exp = self.half_exp;
        let t_size = pow_u64(q, self.res_exp - a_exp) as usize;
        let s_size = pow_u64(q, self.res_exp - 2 * a_exp) as usize;
        let mut table: Vec<Complex64> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| if keep(i) { *v } else { Complex64::default() })
            .collect();
        dft2(&mut table, t_size, s_size, q, true);
        // Undo the analysis normalization: inverse(forward) multiplies by
        // t_size * s_size; cells carry q^(2 rho) relative to tube values.
        let qrho = pow_u64(q, self.res_exp) as f64;
        let scale = qrho * qrho / (t_size as f64 * s_size as f64);
        let qa = pow_u64(q, a_exp) as u128;
        let q2a = pow_u64(q, 2 * a_exp) as u128;
        let qrho_u = pow_u64(q, self.res_exp) as u128;
        let a = self.cap.residue() as u128;
        let mut cells = Vec::new();
        for t in 0..t_size {
            let xi = a + (t as u128) * qa;
            let eta0 = (2 * a * xi + qrho_u * qrho_u - a * a) % qrho_u;
            for s in 0..s_size {
                let v = table[t * s_size + s] * scale;
                if v.norm_sqr() > 0.0 {
                    let eta = (eta0 + (s as u128) * q2a) % qrho_u;
                    cells.push(SparseCell { xi: xi as u32, eta: eta as u32, value: v });
                }
            }
        }
        let spec = grid_fourier::GridSpec::square(q, 0, self.res_exp as i32)
            .expect("ambient spec is valid");
        SparseSpectrum::new(spec, cells)
    }
}

/// In-place 2-D DFT on a rows x cols row-major table, sizes q-power.
fn dft2(data: &mut [Complex64], rows: usize, cols: usize, q: u32, forward: bool) {
    let log_rows = log_q(rows, q);
    let log_cols = log_q(cols, q);
    let plan_c = FftPlan::new(q, log_cols);
    for row in data.chunks_mut(cols) {
        if forward {
            plan_c.forward(row);
        } else {
            plan_c.inverse(row);
        }
    }
    let plan_r = FftPlan::new(q, log_rows);
    let mut col = vec![Complex64::default(); rows];
    for c in 0..cols {
        for r in 0..rows {
            col[r] = data[r * cols + c];
        }
        if forward {
            plan_r.forward(&mut col);
        } else {
            plan_r.inverse(&mut col);
        }
        for r in 0..rows {
            data[r * cols + c] = col[r];
        }
    }
}

fn log_q(mut n: usize, q: u32) -> u32 {
    let mut l = 0;
    while n > 1 {
        debug_assert!(n % q as usize == 0);
        n /= q as usize;
        l += 1;
    }
    l
}
