//! Iterated radix-q transforms on axes of size q^L.
//!
//! The grid transform factors into 1-D passes, and each 1-D pass is a
//! decimation-in-time Cooley-Tukey transform with radix q. Twiddles are read
//! from a single table of the q^L-th roots of unity, so the character values
//! entering the kernel are exact up to one complex exponential rounding.

use num_complex::Complex64;
use std::f64::consts::TAU;

use qadic_core::pow_u64;

#[derive(Debug, Clone)]
pub struct FftPlan {
    q: usize,
    len: usize,
    log_len: u32,
    rev: Vec<u32>,
    /// roots[k] = e(+ 2 pi i k / len)
    roots: Vec<Complex64>,
}

impl FftPlan {
    pub fn new(q: u32, log_len: u32) -> Self {
        let len = pow_u64(q, log_len) as usize;
        let q = q as usize;
        let mut rev = vec![0u32; len];
        for (n, slot) in rev.iter_mut().enumerate() {
            let mut x = n;
            let mut out = 0usize;
            for _ in 0..log_len {
                out = out * q + x % q;
                x /= q;
            }
            *slot = out as u32;
        }
        let roots = (0..len)
            .map(|k| Complex64::from_polar(1.0, TAU * (k as f64) / (len as f64)))
            .collect();
        Self { q, len, log_len, rev, roots }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Unnormalized transform with kernel e(-2 pi i nk / len).
    pub fn forward(&self, data: &mut [Complex64]) {
        self.run::<true>(data);
    }

    /// Unnormalized transform with kernel e(+2 pi i nk / len).
    pub fn inverse(&self, data: &mut [Complex64]) {
        self.run::<false>(data);
    }

    #[inline]
    fn root<const FWD: bool>(&self, idx: usize) -> Complex64 {
        let w = self.roots[idx % self.len];
        if FWD {
            w.conj()
        } else {
            w
        }
    }

    fn run<const FWD: bool>(&self, data: &mut [Complex64]) {
        assert_eq!(data.len(), self.len, "plan length mismatch");
        if self.len == 1 {
            return;
        }
        // Digit-reversal permutation.
        for n in 0..self.len {
            let r = self.rev[n] as usize;
            if r > n {
                data.swap(n, r);
            }
        }
        if self.q == 3 {
            self.stages_radix3::<FWD>(data);
        } else {
            self.stages_generic::<FWD>(data);
        }
    }

    fn stages_generic<const FWD: bool>(&self, data: &mut [Complex64]) {
        let q = self.q;
        let mut scratch = vec![Complex64::default(); q];
        let mut sub = 1usize;
        for _ in 0..self.log_len {
            let m = sub * q;
            let stride = self.len / m;
            for g in (0..self.len).step_by(m) {
                for j in 0..sub {
                    for (t, slot) in scratch.iter_mut().enumerate() {
                        let tw = self.root::<FWD>(j * t * stride);
                        *slot = data[g + j + t * sub] * tw;
                    }
                    for u in 0..q {
                        let mut acc = Complex64::default();
                        for (t, &b) in scratch.iter().enumerate() {
                            acc += b * self.root::<FWD>(u * t * sub * stride);
                        }
                        data[g + j + u * sub] = acc;
                    }
                }
            }
            sub = m;
        }
    }

    fn stages_radix3<const FWD: bool>(&self, data: &mut [Complex64]) {
        // omega = e(2 pi i / 3); the forward kernel uses its conjugate.
        const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;
        let im = if FWD { -HALF_SQRT3 } else { HALF_SQRT3 };
        let mut sub = 1usize;
        for _ in 0..self.log_len {
            let m = sub * 3;
            let stride = self.len / m;
            for g in (0..self.len).step_by(m) {
                for j in 0..sub {
                    let i0 = g + j;
                    let a = data[i0];
                    let b = data[i0 + sub] * self.root::<FWD>(j * stride);
                    let c = data[i0 + 2 * sub] * self.root::<FWD>(2 * j * stride);
                    let sum = b + c;
                    let diff = b - c;
                    let rot = Complex64::new(-im * diff.im, im * diff.re);
                    let base = a - 0.5 * sum;
                    data[i0] = a + sum;
                    data[i0 + sub] = base + rot;
                    data[i0 + 2 * sub] = base - rot;
                }
            }
            sub = m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_dft(data: &[Complex64], sign: f64) -> Vec<Complex64> {
        let n = data.len();
        (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        let w = Complex64::from_polar(
                            1.0,
                            sign * TAU * ((j * k) % n) as f64 / n as f64,
                        );
                        data[j] * w
                    })
                    .sum()
            })
            .collect()
    }

    fn ramp(len: usize) -> Vec<Complex64> {
        (0..len)
            .map(|i| Complex64::new(i as f64 * 0.37 - 1.0, (i * i % 17) as f64 * 0.11))
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        for (q, l) in [(3u32, 0u32), (3, 1), (3, 2), (3, 4), (5, 2), (7, 1)] {
            let plan = FftPlan::new(q, l);
            let input = ramp(plan.len());

            let mut fwd = input.clone();
            plan.forward(&mut fwd);
            let expect = naive_dft(&input, -1.0);
            for (a, b) in fwd.iter().zip(&expect) {
                assert!((a - b).norm() < 1e-9 * plan.len() as f64, "forward mismatch q={q} l={l}");
            }

            let mut inv = input.clone();
            plan.inverse(&mut inv);
            let expect = naive_dft(&input, 1.0);
            for (a, b) in inv.iter().zip(&expect) {
                assert!((a - b).norm() < 1e-9 * plan.len() as f64, "inverse mismatch q={q} l={l}");
            }
        }
    }

    #[test]
    fn round_trip_scales_by_len() {
        let plan = FftPlan::new(3, 5);
        let input = ramp(plan.len());
        let mut data = input.clone();
        plan.forward(&mut data);
        plan.inverse(&mut data);
        for (a, b) in data.iter().zip(&input) {
            assert!((a / plan.len() as f64 - b).norm() < 1e-12);
        }
    }
}
