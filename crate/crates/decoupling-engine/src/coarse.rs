use serde::Serialize;

use crate::error::EngineError;
use qadic_core::pow_u64;

/// A real-valued function constant on squares of side q^sq_exp inside the
/// ambient box B(0, q^res_exp)^2, stored once per square. Squares are the
/// classes of cell indices mod q^(res_exp - sq_exp) per axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoarseGrid {
    pub res_exp: u32,
    pub sq_exp: u32,
    /// Classes per axis: q^(res_exp - sq_exp).
    pub classes: u32,
    /// Row-major over (c0, c1).
    pub values: Vec<f64>,
}

impl CoarseGrid {
    pub fn zeros(q: u32, res_exp: u32, sq_exp: u32) -> Self {
        assert!(sq_exp <= res_exp);
        let classes = pow_u64(q, res_exp - sq_exp) as u32;
        Self { res_exp, sq_exp, classes, values: vec![0.0; (classes as usize).pow(2)] }
    }

    #[inline]
    pub fn idx(&self, c0: u32, c1: u32) -> usize {
        c0 as usize * self.classes as usize + c1 as usize
    }

    #[inline]
    pub fn at(&self, c0: u32, c1: u32) -> f64 {
        self.values[self.idx(c0, c1)]
    }

    /// Value at an arbitrary unit cell of the ambient box.
    #[inline]
    pub fn at_cell(&self, n0: u64, n1: u64) -> f64 {
        let m = self.classes as u64;
        self.values[(n0 % m) as usize * self.classes as usize + (n1 % m) as usize]
    }

    /// Haar measure of one square (unit cells).
    pub fn square_measure(&self, q: u32) -> f64 {
        (pow_u64(q, self.sq_exp) as f64).powi(2)
    }

    /// Integral over the ambient box.
    pub fn integral(&self, q: u32) -> f64 {
        self.values.iter().sum::<f64>() * self.square_measure(q)
    }

    /// Integral of the p-th power.
    pub fn lp_integral(&self, q: u32, p: f64) -> f64 {
        let m = self.square_measure(q);
        self.values.iter().map(|v| power(*v, p)).sum::<f64>() * m
    }

    pub fn sup(&self) -> f64 {
        self.values.iter().cloned().fold(0.0, f64::max)
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> CoarseGrid {
        CoarseGrid { values: self.values.iter().map(|v| f(*v)).collect(), ..self.clone() }
    }

    pub fn zip(&self, other: &CoarseGrid, f: impl Fn(f64, f64) -> f64) -> Result<CoarseGrid, EngineError> {
        if self.res_exp != other.res_exp || self.sq_exp != other.sq_exp {
            return Err(EngineError::CoarseMismatch);
        }
        let values =
            self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect();
        Ok(CoarseGrid { values, ..self.clone() })
    }

    /// Mean over squares of side q^to_exp (the exact lowpass at that cutoff).
    pub fn average_to(&self, q: u32, to_exp: u32) -> CoarseGrid {
        assert!(to_exp >= self.sq_exp && to_exp <= self.res_exp);
        let coarse_classes = pow_u64(q, self.res_exp - to_exp) as u32;
        let mut out = CoarseGrid::zeros(q, self.res_exp, self.sq_exp);
        // Same coarse square <=> class indices agree mod coarse_classes.
        let m = coarse_classes as usize;
        let mut sums = vec![0.0f64; m * m];
        let mut counts = vec![0u32; m * m];
        for c0 in 0..self.classes as usize {
            for c1 in 0..self.classes as usize {
                let s = (c0 % m) * m + c1 % m;
                sums[s] += self.values[c0 * self.classes as usize + c1];
                counts[s] += 1;
            }
        }
        for (s, c) in sums.iter_mut().zip(&counts) {
            *s /= *c as f64;
        }
        for c0 in 0..self.classes as usize {
            for c1 in 0..self.classes as usize {
                out.values[c0 * self.classes as usize + c1] = sums[(c0 % m) * m + c1 % m];
            }
        }
        out
    }

    /// View of this function on finer squares (values repeat per class).
    pub fn refine_to(&self, q: u32, sq_exp: u32) -> CoarseGrid {
        assert!(sq_exp <= self.sq_exp);
        let mut out = CoarseGrid::zeros(q, self.res_exp, sq_exp);
        let m = self.classes as u64;
        for c0 in 0..out.classes {
            for c1 in 0..out.classes {
                let v = self.at((c0 as u64 % m) as u32, (c1 as u64 % m) as u32);
                let i = out.idx(c0, c1);
                out.values[i] = v;
            }
        }
        out
    }
}

fn power(v: f64, p: f64) -> f64 {
    if p == 1.0 {
        v
    } else if p == 2.0 {
        v * v
    } else if p == 3.0 {
        v * v * v
    } else {
        v.powf(p)
    }
}

/// A set in the ambient box that is a union of side-q^sq_exp squares,
/// stored as one bit per square class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionMask {
    pub label: String,
    pub res_exp: u32,
    pub sq_exp: u32,
    pub classes: u32,
    pub bits: Vec<bool>,
}

impl RegionMask {
    pub fn empty(label: impl Into<String>, q: u32, res_exp: u32, sq_exp: u32) -> Self {
        let classes = pow_u64(q, res_exp - sq_exp) as u32;
        Self {
            label: label.into(),
            res_exp,
            sq_exp,
            classes,
            bits: vec![false; (classes as usize).pow(2)],
        }
    }

    #[inline]
    pub fn idx(&self, c0: u32, c1: u32) -> usize {
        c0 as usize * self.classes as usize + c1 as usize
    }

    #[inline]
    pub fn contains_class(&self, c0: u32, c1: u32) -> bool {
        self.bits[self.idx(c0, c1)]
    }

    #[inline]
    pub fn contains_cell(&self, n0: u64, n1: u64) -> bool {
        let m = self.classes as u64;
        self.bits[(n0 % m) as usize * self.classes as usize + (n1 % m) as usize]
    }

    /// Haar measure of the set.
    pub fn measure(&self, q: u32) -> f64 {
        let per = (pow_u64(q, self.sq_exp) as f64).powi(2);
        self.bits.iter().filter(|b| **b).count() as f64 * per
    }

    pub fn square_count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn averaging_preserves_integral() {
        let mut g = CoarseGrid::zeros(3, 4, 1);
        for (i, v) in g.values.iter_mut().enumerate() {
            *v = (i % 7) as f64 - 2.5;
        }
        let avg = g.average_to(3, 3);
        assert!((avg.integral(3) - g.integral(3)).abs() < 1e-9);
        // Averaged function is constant on the coarser classes.
        let m = 3u32; // q^(4-3)
        for c0 in 0..g.classes {
            for c1 in 0..g.classes {
                assert_eq!(avg.at(c0, c1), avg.at(c0 % m, c1 % m));
            }
        }
    }

    #[test]
    fn mask_measure_counts_squares() {
        let mut m = RegionMask::empty("test", 3, 3, 1);
        assert_eq!(m.classes, 9);
        m.bits[0] = true;
        m.bits[10] = true;
        assert_eq!(m.measure(3), 2.0 * 9.0);
    }
}
