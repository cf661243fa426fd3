use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::digits::pow_u128;
use crate::scalar::QAdicScalar;

/// The standard additive character: trivial on the ring of integers,
/// nontrivial on q^(-1)-integers. Only the finitely many negative-index
/// digits enter, so the value is exact up to the complex exponential's
/// floating rounding.
pub fn chi(x: &QAdicScalar) -> Complex64 {
    let v = match x.valuation() {
        None => return Complex64::new(1.0, 0.0),
        Some(v) => v,
    };
    if v >= 0 {
        return Complex64::new(1.0, 0.0);
    }
    // Fractional part sum_{j=v}^{-1} a_j q^j = n / q^m with m = -v.
    let m = (-v) as u32;
    let q = x.q();
    let mut num = 0u128;
    for j in v..0 {
        let d = x.digit_at(j) as u128;
        if d != 0 {
            num += d * pow_u128(q, (j - v) as u32);
        }
    }
    let den = pow_u128(q, m);
    Complex64::from_polar(1.0, TAU * (num as f64) / (den as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::QAdicScalar;

    const P: usize = 12;

    #[test]
    fn trivial_on_integers() {
        for n in [0i64, 1, 2, 3, 17, -1, -9, 3i64.pow(10)] {
            let x = QAdicScalar::embed_int(3, P, n).unwrap();
            let c = chi(&x);
            assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-15, "chi({n}) != 1");
        }
    }

    #[test]
    fn primitive_on_inverse_q() {
        // x = 1/q, digits (a_{-1} = 1): chi = e(1/q).
        let x = QAdicScalar::from_digits(3, P, -1, &[1]).unwrap();
        let c = chi(&x);
        let expect = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        assert!((c - expect).norm() < 1e-15);
    }

    #[test]
    fn additive_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(07211);
        for _ in 0..10_000 {
            let digits_a: Vec<u32> = (0..P).map(|_| rng.gen_range(0..3)).collect();
            let digits_b: Vec<u32> = (0..P).map(|_| rng.gen_range(0..3)).collect();
            let va = rng.gen_range(-5..=0);
            let vb = rng.gen_range(-5..=0);
            let a = QAdicScalar::from_digits(3, P, va, &digits_a).unwrap();
            let b = QAdicScalar::from_digits(3, P, vb, &digits_b).unwrap();
            let sum = a.add(&b).unwrap();
            let lhs = chi(&sum);
            let rhs = chi(&a) * chi(&b);
            assert!((lhs - rhs).norm() < 1e-12, "chi not additive: {a:?} + {b:?}");
        }
    }
}
