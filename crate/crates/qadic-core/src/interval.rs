use crate::digits::{try_pow_u64, valuation_u128};
use crate::error::QAdicError;
use crate::scalar::{QAdicScalar, QNorm};

/// A q-adic interval inside the ring of integers: the set of integral x with
/// |x - c| <= q^(-level), i.e. the residue class c mod q^level. Two intervals
/// of equal level are equal or disjoint, and distinct ones are separated by
/// at least q^(-level + 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QInterval {
    q: u32,
    level: u32,
    residue: u64,
}

impl QInterval {
    pub fn new(q: u32, level: u32, residue: u64) -> Result<Self, QAdicError> {
        if !crate::is_odd_prime(q) {
            return Err(QAdicError::NotOddPrime(q));
        }
        let modulus = try_pow_u64(q, level).ok_or(QAdicError::LevelTooDeep(level))?;
        if residue >= modulus {
            return Err(QAdicError::ResidueRange(residue, level));
        }
        Ok(Self { q, level, residue })
    }

    /// The whole ring of integers, as the level-0 interval.
    pub fn whole(q: u32) -> Self {
        Self { q, level: 0, residue: 0 }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }

    /// Interval length q^(-level) as an exact norm.
    pub fn length(&self) -> QNorm {
        QNorm::Pow { q: self.q, exp: -(self.level as i64) }
    }

    /// Canonical anchor: the residue embedded as an integer.
    pub fn anchor_scalar(&self, precision: usize) -> Result<QAdicScalar, QAdicError> {
        QAdicScalar::embed_int(self.q, precision, self.residue as i64)
    }

    pub fn contains(&self, x: &QAdicScalar) -> bool {
        match x.residue_mod(self.level) {
            Some(r) => r == self.residue,
            None => false,
        }
    }

    /// Membership for an integer point via the embedding of Z.
    pub fn contains_int(&self, n: i64) -> bool {
        let modulus = try_pow_u64(self.q, self.level).expect("level checked at construction") as i128;
        (n as i128).rem_euclid(modulus) as u64 == self.residue
    }

    /// The level-(level-1) interval containing this one.
    pub fn parent(&self) -> Option<Self> {
        if self.level == 0 {
            return None;
        }
        let modulus = try_pow_u64(self.q, self.level - 1).unwrap();
        Some(Self { q: self.q, level: self.level - 1, residue: self.residue % modulus })
    }

    /// The q children one level deeper.
    pub fn children(&self) -> Vec<Self> {
        let step = try_pow_u64(self.q, self.level).expect("level checked at construction");
        (0..self.q as u64)
            .map(|j| Self { q: self.q, level: self.level + 1, residue: self.residue + j * step })
            .collect()
    }

    /// Containment of same-or-finer intervals.
    pub fn contains_interval(&self, finer: &Self) -> bool {
        if finer.level < self.level || finer.q != self.q {
            return false;
        }
        let modulus = try_pow_u64(self.q, self.level).unwrap();
        finer.residue % modulus == self.residue
    }

    /// Exact q-adic distance between the residues of two intervals of the
    /// same level (zero norm when they coincide).
    pub fn distance(&self, other: &Self) -> QNorm {
        assert_eq!(self.q, other.q);
        assert_eq!(self.level, other.level, "distance defined for equal levels");
        if self.residue == other.residue {
            return QNorm::Zero;
        }
        let diff = self.residue.abs_diff(other.residue) as u128;
        let v = valuation_u128(diff, self.q);
        // 0 < |c1 - c2| < q^level forces the valuation below the level.
        debug_assert!(v < self.level);
        QNorm::Pow { q: self.q, exp: -(v as i64) }
    }
}

/// All q^m disjoint intervals of level m, in residue order. They partition
/// the ring of integers.
pub fn interval_partition(q: u32, level: u32) -> Result<Vec<QInterval>, QAdicError> {
    if !crate::is_odd_prime(q) {
        return Err(QAdicError::NotOddPrime(q));
    }
    let count = try_pow_u64(q, level).ok_or(QAdicError::LevelTooDeep(level))?;
    if count > (1 << 26) {
        return Err(QAdicError::LevelTooDeep(level));
    }
    Ok((0..count)
        .map(|residue| QInterval { q, level, residue })
        .collect())
}
