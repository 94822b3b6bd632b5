//! Property tests: ring axioms with floating cross-checks,
//! representation-independent equality, exact division round trips, and the
//! diagonal/cyclotomic correspondence on random elements.

use cast_core::cyclo::{cyclotomic_poly, CycloInt};
use cast_core::diag::DiagElem;
use num_bigint::BigInt;
use proptest::prelude::*;

fn cyclo_strategy(n: usize, bound: i64) -> impl Strategy<Value = CycloInt> {
    proptest::collection::vec(-bound..=bound, n)
        .prop_map(move |c| CycloInt::new(n, c.into_iter().map(BigInt::from).collect()).unwrap())
}

fn diag_strategy(n: usize, bound: i64) -> impl Strategy<Value = DiagElem> {
    proptest::collection::vec(-bound..=bound, n / 2)
        .prop_map(move |c| DiagElem::new(n, c.into_iter().map(BigInt::from).collect()).unwrap())
}

fn cx(v: &CycloInt) -> (f64, f64) {
    v.embed_f64()
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cdist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn ring_axioms_with_float_cross_check(
        n in prop_oneof![Just(5usize), Just(7), Just(8), Just(12), Just(30)],
        seed in any::<u64>(),
    ) {
        let mut rng = seed;
        let mut next = move || {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((rng >> 33) as i64 % 2001) - 1000
        };
        let mk = |next: &mut dyn FnMut() -> i64| {
            CycloInt::new(n, (0..n).map(|_| BigInt::from(next())).collect()).unwrap()
        };
        let x = mk(&mut next);
        let y = mk(&mut next);
        let z = mk(&mut next);
        // associativity and commutativity, exactly
        prop_assert!(x.mul(&y).unwrap().equals(&y.mul(&x).unwrap()).unwrap());
        prop_assert!(x.mul(&y).unwrap().mul(&z).unwrap().equals(&x.mul(&y.mul(&z).unwrap()).unwrap()).unwrap());
        // distributivity, exactly
        let lhs = x.mul(&y.add(&z).unwrap()).unwrap();
        let rhs = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
        // floating cross-check of the product
        let d = cdist(cx(&lhs), cmul(cx(&x), cx(&y.add(&z).unwrap())));
        let scale = 1.0 + cx(&x).0.abs() + cx(&x).1.abs();
        prop_assert!(d / (scale * 1e4) < 1e-9, "float mismatch {d}");
    }

    #[test]
    fn equality_is_representation_independent_and_refines_float(
        x in cyclo_strategy(7, 50),
        j in 0usize..3,
        k in 1i64..5,
    ) {
        // add a multiple of the cyclotomic polynomial shifted by zeta^j
        let phi = cyclotomic_poly(14);
        let mut shifted = CycloInt::zero(7);
        for (d, c) in phi.iter().enumerate() {
            let r = CycloInt::root(7, (d + j) as i64).unwrap().scale(&(c * BigInt::from(k)));
            shifted = shifted.add(&r).unwrap();
        }
        let y = x.add(&shifted).unwrap();
        prop_assert!(x.equals(&y).unwrap());
        prop_assert!(cdist(cx(&x), cx(&y)) < 1e-12);
    }

    #[test]
    fn exact_division_round_trip(
        x in cyclo_strategy(9, 30),
        y in cyclo_strategy(9, 30),
    ) {
        prop_assume!(!y.is_zero());
        let prod = x.mul(&y).unwrap();
        let q = prod.exact_div(&y).unwrap().expect("product divides");
        prop_assert!(q.equals(&x).unwrap());
    }

    #[test]
    fn norms_are_real_and_non_negative(x in cyclo_strategy(11, 100)) {
        let nsq = x.norm_sq();
        prop_assert!(nsq.is_real());
        prop_assert!(nsq.embed_f64().0 >= -1e-9);
        prop_assert!(x.conj().conj().equals(&x).unwrap());
    }

    #[test]
    fn dpf_matches_cyclotomic_on_random_elements(
        a in diag_strategy(12, 20),
        b in diag_strategy(12, 20),
    ) {
        let dpf = a.dpf_mul(&b).unwrap().to_cyclo();
        let ring = a.to_cyclo().mul(&b.to_cyclo()).unwrap();
        prop_assert!(dpf.equals(&ring).unwrap());
    }

    #[test]
    fn diagonal_round_trip(d in diag_strategy(10, 40)) {
        let back = DiagElem::from_real_cyclo(&d.to_cyclo()).unwrap().expect("integral");
        prop_assert!(back.value_equals(&d).unwrap());
    }

    #[test]
    fn diagonal_numeric_consistency(d in diag_strategy(9, 100)) {
        let v = d.to_cyclo().embed_f64().0;
        let direct: f64 = d
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let k = (i + 1) as f64;
                let cf: f64 = c.to_string().parse().unwrap();
                cf * (k * std::f64::consts::PI / 9.0).sin() / (std::f64::consts::PI / 9.0).sin()
            })
            .sum();
        prop_assert!((v - direct).abs() < 1e-10, "{v} vs {direct}");
    }
}
