use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::GridError;
use qadic_core::{pow_u64, QInterval};

static MEMORY_BUDGET: AtomicU64 = AtomicU64::new(4 * 1024 * 1024 * 1024);

/// Sets the byte budget a single materialized grid may occupy.
pub fn set_memory_budget(bytes: u64) {
    MEMORY_BUDGET.store(bytes, Ordering::Relaxed);
}

pub fn memory_budget() -> u64 {
    MEMORY_BUDGET.load(Ordering::Relaxed)
}

/// Which side of the transform a table lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Space,
    Frequency,
}

impl Side {
    pub fn name(self) -> &'static str {
        match self {
            Side::Space => "space",
            Side::Frequency => "frequency",
        }
    }
}

/// One grid axis: support in |x| <= q^extent, constant on cosets of diameter
/// q^(-cell). The axis then carries q^(extent + cell) cells with
/// representatives n * q^(-extent), n = 0 .. q^(extent+cell), each of Haar
/// measure q^(-cell).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Axis {
    pub extent: i32,
    pub cell: i32,
}

impl Axis {
    pub fn new(extent: i32, cell: i32) -> Self {
        Self { extent, cell }
    }

    pub fn log_points(&self) -> u32 {
        (self.extent + self.cell) as u32
    }

    pub fn points(&self, q: u32) -> usize {
        pow_u64(q, self.log_points()) as usize
    }

    pub fn cell_measure(&self, q: u32) -> f64 {
        (q as f64).powi(-self.cell)
    }

    /// The transform swaps extent and cell exponents.
    pub fn dual(&self) -> Axis {
        Axis { extent: self.cell, cell: self.extent }
    }
}

/// A finite two-axis grid spec over the q-adic plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GridSpec {
    pub q: u32,
    pub axes: [Axis; 2],
}

impl GridSpec {
    pub fn new(q: u32, axes: [Axis; 2]) -> Result<Self, GridError> {
        for (i, a) in axes.iter().enumerate() {
            if (a.extent as i64) + (a.cell as i64) < 0 {
                return Err(GridError::BadAxis(i, a.extent as i64 + a.cell as i64));
            }
        }
        Ok(Self { q, axes })
    }

    /// Square spec with the same exponents on both axes.
    pub fn square(q: u32, extent: i32, cell: i32) -> Result<Self, GridError> {
        Self::new(q, [Axis::new(extent, cell); 2])
    }

    pub fn points(&self) -> [usize; 2] {
        [self.axes[0].points(self.q), self.axes[1].points(self.q)]
    }

    pub fn len(&self) -> usize {
        let [s0, s1] = self.points();
        s0 * s1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Haar measure of one cell.
    pub fn cell_measure(&self) -> f64 {
        self.axes[0].cell_measure(self.q) * self.axes[1].cell_measure(self.q)
    }

    pub fn dual(&self) -> GridSpec {
        GridSpec { q: self.q, axes: [self.axes[0].dual(), self.axes[1].dual()] }
    }

    pub fn check_budget(&self) -> Result<(), GridError> {
        let [s0, s1] = [
            pow_u64(self.q, self.axes[0].log_points()) as u128,
            pow_u64(self.q, self.axes[1].log_points()) as u128,
        ];
        let cells = s0 * s1;
        let bytes = cells * 16;
        let budget = memory_budget();
        if bytes > budget as u128 {
            return Err(GridError::BudgetExceeded { cells, bytes, budget });
        }
        Ok(())
    }

    /// Whether the cell with index n on `axis` lies inside a q-adic interval
    /// of the ring of integers. The interval must be no finer than the axis
    /// resolution.
    pub fn cell_in_interval(
        &self,
        axis: usize,
        n: usize,
        interval: &QInterval,
    ) -> Result<bool, GridError> {
        let ax = &self.axes[axis];
        if interval.q() != self.q {
            return Err(GridError::QMismatch(self.q, interval.q()));
        }
        let m = interval.level();
        if (m as i64) > ax.cell as i64 {
            return Err(GridError::IntervalTooFine { level: m, cell: ax.cell });
        }
        // Representative rep = n * q^(-E): rep lies in the class c mod q^m
        // iff v(rep - c) >= m. Membership also forces |rep| <= 1.
        let e = ax.extent;
        let res = interval.residue() as i128;
        if e >= 0 {
            let modulus = qadic_core::pow_u128(self.q, e as u32 + m) as i128;
            let target = res * qadic_core::pow_u128(self.q, e as u32) as i128;
            Ok((n as i128 - target).rem_euclid(modulus) == 0)
        } else {
            // rep = n * q^{|e|} is itself an integer.
            let modulus = qadic_core::pow_u128(self.q, m) as i128;
            let scaled = (n as i128) * qadic_core::pow_u128(self.q, (-e) as u32) as i128;
            Ok((scaled - res).rem_euclid(modulus) == 0)
        }
    }
}
