//! Small integer helpers for base-q digit work shared across the workspace.

/// q^e as u64, panicking on overflow. Scales in this workspace stay far below
/// the u64 range; a panic here is a logic error, not an input error.
pub fn pow_u64(q: u32, e: u32) -> u64 {
    try_pow_u64(q, e).unwrap_or_else(|| panic!("{q}^{e} overflows u64"))
}

/// q^e as u64 if it fits.
pub fn try_pow_u64(q: u32, e: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..e {
        acc = acc.checked_mul(q as u64)?;
    }
    Some(acc)
}

/// q^e as u128, panicking on overflow.
pub fn pow_u128(q: u32, e: u32) -> u128 {
    let mut acc = 1u128;
    for _ in 0..e {
        acc = acc.checked_mul(q as u128).expect("q^e overflows u128");
    }
    acc
}

/// Exponent of q dividing n (n must be nonzero).
pub fn valuation_u128(mut n: u128, q: u32) -> u32 {
    assert!(n != 0, "valuation of zero is undefined");
    let q = q as u128;
    let mut v = 0;
    while n % q == 0 {
        n /= q;
        v += 1;
    }
    v
}

/// Base-q digit of n at position i.
pub fn digit_of(n: u128, q: u32, i: u32) -> u32 {
    ((n / pow_u128(q, i)) % q as u128) as u32
}
