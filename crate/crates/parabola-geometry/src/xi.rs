use crate::error::GeomError;
use qadic_core::pow_u64;

/// The frequency cells of the parabola neighborhood at resolution 1/R,
/// R = q^r_exp: one eta-cell per xi-cell, namely the class of xi^2.
///
/// Cell indices live on the frequency grid with both axes (extent 0,
/// cell r_exp); membership of a whole cell follows from its representative
/// because |xi^2 - n^2| <= |xi - n| on the ring of integers.
pub fn xi_support_cells(q: u32, r_exp: u32) -> Result<Vec<(u32, u32)>, GeomError> {
    if r_exp == 0 || r_exp % 2 != 0 {
        return Err(GeomError::BadScaleExponent(r_exp as i64));
    }
    let r = pow_u64(q, r_exp);
    Ok((0..r)
        .map(|n| {
            let eta = ((n as u128) * (n as u128) % r as u128) as u32;
            (n as u32, eta)
        })
        .collect())
}

/// Whether the resolution-1/R cell pair (xi_idx, eta_idx) lies inside the
/// delta-neighborhood of the parabola with delta = q^(-delta_exp).
pub fn cell_in_parabola_neighborhood(
    q: u32,
    r_exp: u32,
    delta_exp: u32,
    xi_idx: u64,
    eta_idx: u64,
) -> bool {
    debug_assert!(delta_exp <= r_exp);
    let modulus = pow_u64(q, delta_exp) as u128;
    let xi2 = (xi_idx as u128) * (xi_idx as u128) % modulus;
    (eta_idx as u128) % modulus == xi2
}
