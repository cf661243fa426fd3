use std::cmp::Ordering;
use std::fmt;

use crate::digits::pow_u128;
use crate::error::QAdicError;
use crate::is_odd_prime;

/// Largest digit count we allow for a given q: q^P must fit comfortably in
/// u128 so mantissa carries stay exact.
fn max_precision(q: u32) -> usize {
    let mut p = 0usize;
    let mut acc = 1u128;
    while let Some(next) = acc.checked_mul(q as u128) {
        acc = next;
        p += 1;
        if p == 60 {
            break;
        }
    }
    p.saturating_sub(1).min(48)
}

/// A q-adic number at capped relative precision P.
///
/// A nonzero value is `sum_j digits[j] * q^(valuation + j)`, normalized so
/// `digits[0] != 0`, and is exact modulo `q^(valuation + known)`. Fresh
/// constructions know all P digits; digit cancellation in addition shrinks
/// `known`, it never silently fills digits in. Zero is carried as a flag.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QAdicScalar {
    q: u32,
    precision: usize,
    /// `None` encodes zero; otherwise (valuation, known digit count, window).
    repr: Option<(i64, u32, Vec<u32>)>,
}

/// Exact value of a q-adic norm: zero or an integer power of q.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QNorm {
    Zero,
    /// Norm q^exp.
    Pow { q: u32, exp: i64 },
}

impl QNorm {
    pub fn as_f64(self) -> f64 {
        match self {
            QNorm::Zero => 0.0,
            QNorm::Pow { q, exp } => (q as f64).powi(exp as i32),
        }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, QNorm::Zero)
    }

    /// Exponent such that the norm equals q^exp.
    pub fn exponent(self) -> Option<i64> {
        match self {
            QNorm::Zero => None,
            QNorm::Pow { exp, .. } => Some(exp),
        }
    }
}

impl PartialOrd for QNorm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QNorm {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (QNorm::Zero, QNorm::Zero) => Ordering::Equal,
            (QNorm::Zero, _) => Ordering::Less,
            (_, QNorm::Zero) => Ordering::Greater,
            (QNorm::Pow { exp: a, .. }, QNorm::Pow { exp: b, .. }) => a.cmp(b),
        }
    }
}

impl QAdicScalar {
    /// Default mantissa length used across the workspace.
    pub const DEFAULT_PRECISION: usize = 24;

    pub fn zero(q: u32, precision: usize) -> Result<Self, QAdicError> {
        Self::check_params(q, precision)?;
        Ok(Self { q, precision, repr: None })
    }

    pub fn one(q: u32, precision: usize) -> Result<Self, QAdicError> {
        Self::from_digits(q, precision, 0, &[1])
    }

    fn check_params(q: u32, precision: usize) -> Result<(), QAdicError> {
        if !is_odd_prime(q) {
            return Err(QAdicError::NotOddPrime(q));
        }
        let pmax = max_precision(q);
        if precision == 0 || precision > pmax {
            return Err(QAdicError::BadPrecision(precision, pmax, q));
        }
        Ok(())
    }

    /// Builds a scalar from digits starting at `valuation`, all taken as
    /// exactly known. Leading zeros are normalized away; trailing positions
    /// up to the precision are exact zeros.
    pub fn from_digits(
        q: u32,
        precision: usize,
        valuation: i64,
        digits: &[u32],
    ) -> Result<Self, QAdicError> {
        Self::check_params(q, precision)?;
        if digits.len() > precision {
            return Err(QAdicError::BadPrecision(digits.len(), precision, q));
        }
        for &d in digits {
            if d >= q {
                return Err(QAdicError::DigitRange(d, q));
            }
        }
        // The supplied expansion is an exact value: leading zeros shift the
        // valuation without costing relative precision.
        match digits.iter().position(|&d| d != 0) {
            None => Self::zero(q, precision),
            Some(lead) => Ok(Self::normalized(
                q,
                precision,
                valuation + lead as i64,
                precision as u32,
                &digits[lead..],
            )),
        }
    }

    /// Normalizes a digit window whose first `known` positions are exact.
    /// Digits at or beyond `known` are ignored.
    fn normalized(q: u32, precision: usize, valuation: i64, known: u32, digits: &[u32]) -> Self {
        let known = (known as usize).min(precision);
        let lead = digits
            .iter()
            .take(known)
            .position(|&d| d != 0);
        let lead = match lead {
            Some(i) => i,
            None => return Self { q, precision, repr: None },
        };
        let mut window = vec![0u32; precision];
        let new_known = (known - lead).min(precision);
        for k in 0..new_known {
            if lead + k < digits.len() {
                window[k] = digits[lead + k];
            }
        }
        Self {
            q,
            precision,
            repr: Some((valuation + lead as i64, new_known as u32, window)),
        }
    }

    /// Embeds a signed integer. Negative values take the complement
    /// expansion, e.g. -1 has every digit equal to q - 1.
    pub fn embed_int(q: u32, precision: usize, n: i64) -> Result<Self, QAdicError> {
        Self::check_params(q, precision)?;
        if n == 0 {
            return Self::zero(q, precision);
        }
        let mag = n.unsigned_abs() as u128;
        if mag >= pow_u128(q, precision as u32) {
            return Err(QAdicError::EmbedOverflow(n, precision, q));
        }
        let mut digits = Vec::with_capacity(precision);
        let mut rest = mag;
        while rest > 0 {
            digits.push((rest % q as u128) as u32);
            rest /= q as u128;
        }
        let positive = Self::from_digits(q, precision, 0, &digits)?;
        Ok(if n > 0 { positive } else { positive.neg() })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.repr.is_none()
    }

    /// Valuation of a nonzero element; the norm is q^(-valuation).
    pub fn valuation(&self) -> Option<i64> {
        self.repr.as_ref().map(|(v, _, _)| *v)
    }

    /// Number of exactly known mantissa digits (at most the precision).
    pub fn known_digits(&self) -> usize {
        match &self.repr {
            None => self.precision,
            Some((_, k, _)) => *k as usize,
        }
    }

    /// Mantissa window (length = precision, leading digit nonzero). Only the
    /// first `known_digits()` entries are meaningful.
    pub fn mantissa(&self) -> Option<&[u32]> {
        self.repr.as_ref().map(|(_, _, d)| d.as_slice())
    }

    /// Digit at absolute position j (coefficient of q^j). Positions outside
    /// the known window read as zero.
    pub fn digit_at(&self, j: i64) -> u32 {
        match &self.repr {
            None => 0,
            Some((v, k, d)) => {
                let off = j - v;
                if off < 0 || off >= *k as i64 {
                    0
                } else {
                    d[off as usize]
                }
            }
        }
    }

    /// The q-adic norm, exactly.
    pub fn qnorm(&self) -> QNorm {
        match &self.repr {
            None => QNorm::Zero,
            Some((v, _, _)) => QNorm::Pow { q: self.q, exp: -v },
        }
    }

    fn assert_compatible(&self, other: &Self) -> Result<(), QAdicError> {
        if self.q != other.q || self.precision != other.precision {
            return Err(QAdicError::MixedParameters);
        }
        Ok(())
    }

    /// Exact negation: the complement expansion on the known window.
    pub fn neg(&self) -> Self {
        match &self.repr {
            None => self.clone(),
            Some((v, k, d)) => {
                let q = self.q;
                let mut out = vec![0u32; self.precision];
                out[0] = q - d[0];
                for j in 1..*k as usize {
                    out[j] = q - 1 - d[j];
                }
                Self { q, precision: self.precision, repr: Some((*v, *k, out)) }
            }
        }
    }

    /// Exact addition. The result is exact modulo q^floor where floor is the
    /// smaller of the two absolute knowledge bounds; cancellation shrinks the
    /// known digit count accordingly. Fails loudly when one operand lies
    /// entirely below the other's window (silent rounding otherwise).
    pub fn add(&self, other: &Self) -> Result<Self, QAdicError> {
        self.assert_compatible(other)?;
        let (va, ka, da) = match &self.repr {
            None => return Ok(other.clone()),
            Some((v, k, d)) => (*v, *k as i64, d),
        };
        let (vb, kb, db) = match &other.repr {
            None => return Ok(self.clone()),
            Some((v, k, d)) => (*v, *k as i64, d),
        };
        if vb >= va + ka || va >= vb + kb {
            return Err(QAdicError::PrecisionLoss {
                gap: (va - vb).unsigned_abs(),
                precision: self.precision,
            });
        }
        let v = va.min(vb);
        let floor = (va + ka).min(vb + kb);
        let len = (floor - v) as usize;
        let q = self.q as u64;
        let mut digits = vec![0u32; len];
        let mut carry = 0u64;
        for (j, slot) in digits.iter_mut().enumerate() {
            let abs = v + j as i64;
            let x = if abs >= va && abs - va < ka { da[(abs - va) as usize] as u64 } else { 0 };
            let y = if abs >= vb && abs - vb < kb { db[(abs - vb) as usize] as u64 } else { 0 };
            let s = x + y + carry;
            *slot = (s % q) as u32;
            carry = s / q;
        }
        Ok(Self::normalized(self.q, self.precision, v, len as u32, &digits))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, QAdicError> {
        self.add(&other.neg())
    }

    /// Exact multiplication. The known digit count of the product is the
    /// smaller of the operands' counts; all carries below that bound are
    /// formed exactly. The leading digit never vanishes since q is prime.
    pub fn mul(&self, other: &Self) -> Result<Self, QAdicError> {
        self.assert_compatible(other)?;
        let (va, ka, da) = match &self.repr {
            None => return Ok(self.clone()),
            Some((v, k, d)) => (*v, *k as usize, d),
        };
        let (vb, kb, db) = match &other.repr {
            None => return Ok(other.clone()),
            Some((v, k, d)) => (*v, *k as usize, d),
        };
        let rel = ka.min(kb);
        let q = self.q as u128;
        let mut acc = vec![0u128; rel];
        for (i, &x) in da.iter().enumerate().take(rel) {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate().take(rel - i) {
                acc[i + j] += (x as u128) * (y as u128);
            }
        }
        let mut digits = vec![0u32; rel];
        let mut carry = 0u128;
        for j in 0..rel {
            let s = acc[j] + carry;
            digits[j] = (s % q) as u32;
            carry = s / q;
        }
        Ok(Self::normalized(self.q, self.precision, va + vb, rel as u32, &digits))
    }

    /// Multiplies by q^e (an exact shift of the valuation).
    pub fn shift(&self, e: i64) -> Self {
        match &self.repr {
            None => self.clone(),
            Some((v, k, d)) => Self {
                q: self.q,
                precision: self.precision,
                repr: Some((v + e, *k, d.clone())),
            },
        }
    }

    /// True if the element lies in the ring of integers (norm at most 1).
    pub fn is_integral(&self) -> bool {
        match &self.repr {
            None => true,
            Some((v, _, _)) => *v >= 0,
        }
    }

    /// Residue modulo q^level for integral elements, as an integer in
    /// [0, q^level); requires the window to determine all `level` digits.
    pub fn residue_mod(&self, level: u32) -> Option<u64> {
        if !self.is_integral() {
            return None;
        }
        if let Some((v, k, _)) = &self.repr {
            if (level as i64) > v + *k as i64 {
                return None;
            }
        }
        let mut acc = 0u64;
        let mut pw = 1u64;
        for j in 0..level {
            acc += self.digit_at(j as i64) as u64 * pw;
            if j + 1 < level {
                pw = pw.checked_mul(self.q as u64)?;
            }
        }
        Some(acc)
    }

    /// Consistency of two values on their shared known window.
    pub fn agrees(&self, other: &Self) -> bool {
        if self.q != other.q {
            return false;
        }
        match (&self.repr, &other.repr) {
            (None, None) => true,
            (None, Some(_)) | (Some(_), None) => false,
            (Some((va, ka, da)), Some((vb, kb, db))) => {
                if va != vb {
                    return false;
                }
                let shared = (*ka).min(*kb) as usize;
                da[..shared] == db[..shared]
            }
        }
    }
}

impl fmt::Debug for QAdicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            None => write!(f, "QAdic({}-adic, 0)", self.q),
            Some((v, k, d)) => {
                write!(f, "QAdic({}-adic, q^{} * [", self.q, v)?;
                for (i, x) in d.iter().take(*k as usize).enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "] known {k})")
            }
        }
    }
}
