use thiserror::Error;

/// Errors for q-adic construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QAdicError {
    #[error("q = {0} is not an odd prime")]
    NotOddPrime(u32),
    #[error("precision {0} unsupported (need 1 ..= {1} digits for q = {2})")]
    BadPrecision(usize, usize, u32),
    #[error("integer {0} does not fit in {1} base-{2} digits")]
    EmbedOverflow(i64, usize, u32),
    #[error("operands carry mismatched parameters (q or precision)")]
    MixedParameters,
    #[error("valuation gap {gap} >= precision {precision}: addition would truncate the smaller operand")]
    PrecisionLoss { gap: u64, precision: usize },
    #[error("digit {0} out of range for base {1}")]
    DigitRange(u32, u32),
    #[error("interval level {0} too deep: q^level must fit in u64")]
    LevelTooDeep(u32),
    #[error("residue {0} not below q^{1}")]
    ResidueRange(u64, u32),
}
