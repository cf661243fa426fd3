use proptest::prelude::*;
use qadic_core::{chi, interval_partition, QAdicScalar, QNorm};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: usize = 12;

fn random_scalar(rng: &mut ChaCha8Rng, q: u32) -> QAdicScalar {
    let digits: Vec<u32> = (0..P)
        .map(|i| if i == 0 { rng.gen_range(1..q) } else { rng.gen_range(0..q) })
        .collect();
    let v = rng.gen_range(-5..=5);
    QAdicScalar::from_digits(q, P, v, &digits).unwrap()
}

#[test]
fn ultrametric_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(31_337);
    for _ in 0..10_000 {
        let x = random_scalar(&mut rng, 3);
        let y = random_scalar(&mut rng, 3);
        let sum = x.add(&y).unwrap();
        let max = x.qnorm().max(y.qnorm());
        assert!(sum.qnorm() <= max, "ultrametric violated: {x:?} + {y:?}");
        if x.qnorm() != y.qnorm() {
            assert_eq!(sum.qnorm(), max, "equality case violated: {x:?} + {y:?}");
        }
    }
}

#[test]
fn partition_masses_and_disjointness() {
    for q in [3u32, 5] {
        for m in 0..4 {
            let part = interval_partition(q, m).unwrap();
            assert_eq!(part.len() as u64, (q as u64).pow(m));
            let total: f64 = part.iter().map(|iv| iv.length().as_f64()).sum();
            assert!((total - 1.0).abs() < 1e-12);
            // Cover + disjoint on integer points of the next finer level.
            for n in 0..(q as i64).pow(m + 1) {
                let hits = part.iter().filter(|iv| iv.contains_int(n)).count();
                assert_eq!(hits, 1, "point {n} covered {hits} times");
            }
        }
    }
}

proptest! {
    #[test]
    fn norm_multiplicative(a in -700i64..700, b in -700i64..700) {
        let x = QAdicScalar::embed_int(3, P, a).unwrap();
        let y = QAdicScalar::embed_int(3, P, b).unwrap();
        let prod = x.mul(&y).unwrap();
        let expect = match (x.qnorm(), y.qnorm()) {
            (QNorm::Zero, _) | (_, QNorm::Zero) => QNorm::Zero,
            (QNorm::Pow { q, exp: e1 }, QNorm::Pow { exp: e2, .. }) =>
                QNorm::Pow { q, exp: e1 + e2 },
        };
        prop_assert_eq!(prod.qnorm(), expect);
    }

    #[test]
    fn chi_matches_integer_character(n in -3000i64..3000, m in 1u32..5) {
        // chi(n / q^m) = e(n / q^m) for integers n.
        let x = QAdicScalar::embed_int(3, P, n).unwrap().shift(-(m as i64));
        let c = chi(&x);
        let q_m = 3f64.powi(m as i32);
        let angle = std::f64::consts::TAU * ((n as f64) / q_m);
        let expect = num_complex::Complex64::from_polar(1.0, angle);
        prop_assert!((c - expect).norm() < 1e-9);
    }
}
