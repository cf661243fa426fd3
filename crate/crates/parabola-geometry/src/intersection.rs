//! Exact intersection measure of two long tubes with different direction
//! parameters (the transversality input to bilinear restriction).

use crate::error::GeomError;
use crate::tube::TubeFamily;
use qadic_core::{pow_u64, valuation_u128};

pub struct TubeIntersection {
    /// Exact Haar measure of the intersection, in unit cells.
    pub measure: u128,
    /// The bound R^2 / |b - a| (u128-exact; u128::MAX when a = b).
    pub bound: u128,
    pub tight: bool,
}

/// Measures T intersect T' for the long-tube scaling
/// T = {|x + 2ay| <= R, |y| <= R^2} by exhaustive cell enumeration over the
/// ambient box B(0, R^2)^2, R = q^r_exp. Directions are residues mod
/// q^r_exp. For a != b the measure never exceeds R^2 / |b - a|.
pub fn tube_intersection_measure(
    q: u32,
    r_exp: u32,
    a: u64,
    b: u64,
) -> Result<TubeIntersection, GeomError> {
    let ambient = 2 * r_exp;
    let fam_a = TubeFamily::with_shape(q, ambient, r_exp, 2 * r_exp, a)?;
    let fam_b = TubeFamily::with_shape(q, ambient, r_exp, 2 * r_exp, b)?;
    // Tube through the origin cell in each family.
    let ta = fam_a.tube_of_cell(0, 0);
    let tb = fam_b.tube_of_cell(0, 0);
    let side = pow_u64(q, ambient);
    let mut measure: u128 = 0;
    for n0 in 0..side {
        for n1 in 0..side {
            if fam_a.contains(ta, n0, n1) && fam_b.contains(tb, n0, n1) {
                measure += 1;
            }
        }
    }
    let r2 = pow_u64(q, 2 * r_exp) as u128;
    let bound = if a == b {
        u128::MAX
    } else {
        // |b - a| = q^(-v): bound = R^2 * q^v.
        let v = valuation_u128((a as i128 - b as i128).unsigned_abs(), q);
        r2 * pow_u64(q, v) as u128
    };
    Ok(TubeIntersection { measure, bound, tight: measure == bound })
}
