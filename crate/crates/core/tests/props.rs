//! Property-level invariants across modules, at the sample sizes the checks
//! are specified to sustain.

use std::sync::Arc;

use proptest::prelude::*;

use nonassoc_core::algebra::{CommAlgebra, Element};
use nonassoc_core::events::{certify_event, complement};
use nonassoc_core::hermitian::hermitian_matrix_algebra;
use nonassoc_core::identities::{check_jordan_identity, JordanMode};
use nonassoc_core::sample;
use nonassoc_core::scalar::{Rat, Scalar, Sqrt5};
use nonassoc_core::spectral::{is_positive, order_unit_norm, Positivity};
use nonassoc_core::starring::StarRing;

fn h_n(name: &str, n: usize) -> CommAlgebra<Rat> {
    hermitian_matrix_algebra(&Arc::new(StarRing::named(name).unwrap()), n)
}

#[test]
fn norm_form_is_scalar_on_a_thousand_seeded_elements() {
    use rand::Rng;
    for name in ["octonions", "sedenions"] {
        let r = StarRing::named(name).unwrap();
        assert!(r.hermitian_scalar_check().holds());
        let mut rng = sample::rng(10_001);
        for _ in 0..1000 {
            let coeffs = (0..r.dim).map(|_| Rat::from_i64(rng.gen_range(-5i64..=5))).collect();
            let a = r.element(coeffs).unwrap();
            let n = r.norm_form(&a);
            assert!(r.scalar_of(&n).is_some(), "α*α must be a multiple of the unit");
        }
    }
}

#[test]
fn canonical_states_nonnegative_on_five_hundred_spectral_squares() {
    for a in [h_n("reals", 2), CommAlgebra::<Rat>::spin_factor(4).unwrap()] {
        let states = a.canonical_states(4, 77).unwrap();
        let mut rng = sample::rng(78);
        for _ in 0..500 {
            let y = sample::random_element(&a, &mut rng, 2);
            let sq = a.jordan_mul(&y, &y);
            for mu in &states {
                assert_eq!(mu.eval(&a.unit), Rat::one());
                assert!(mu.eval(&sq).sign() != std::cmp::Ordering::Less);
            }
        }
    }
}

#[test]
fn linearized_and_thousand_trial_sampled_jordan_agree() {
    for a in [h_n("reals", 2), h_n("complex", 2), CommAlgebra::<Rat>::spin_factor(4).unwrap()] {
        let lin = check_jordan_identity(&a, JordanMode::Linearized, 0, 0);
        let smp = check_jordan_identity(&a, JordanMode::Sampled, 1000, 12345);
        assert_eq!(lin.status.holds(), smp.status.holds());
    }
}

#[test]
fn suite_events_satisfy_projection_orthogonality_and_order_bounds() {
    let states_cache: Vec<(CommAlgebra<Rat>, Vec<Element<Rat>>)> = vec![
        (h_n("reals", 3), Vec::new()),
        (h_n("complex", 2), Vec::new()),
        (CommAlgebra::<Rat>::spin_factor(5).unwrap(), Vec::new()),
    ];
    for (a, _) in &states_cache {
        let mut rng = sample::rng(91);
        let events = sample::auto_events(a, &mut rng, 6);
        let states = a.canonical_states(3, 91).unwrap();
        for elem in &events {
            let e = certify_event(a, elem, 0.0).unwrap();
            let ec = complement(a, &e);
            // The cached projection agrees with the triple product on the
            // whole basis.
            for k in 0..a.dim {
                let b = a.basis_element(k);
                let via_matrix = Element { coeffs: e.projection.apply(&b.coeffs) };
                assert_eq!(via_matrix, a.triple_product(&e.element, &b, &e.element));
            }
            // U_e U_{e'} = U_{e'} U_e = 0 as operators.
            assert!(e.projection.mul(&ec.projection).is_zero_within(0.0));
            assert!(ec.projection.mul(&e.projection).is_zero_within(0.0));
            // 0 ≤ e ≤ 1 whenever positivity is decisive.
            let lower = is_positive(a, &e.element, &states, 1e-12);
            let upper = is_positive(a, &a.unit.sub(&e.element), &states, 1e-12);
            assert_ne!(lower, Positivity::NotPositive);
            assert_ne!(upper, Positivity::NotPositive);
        }
    }
}

#[test]
fn jb_norm_axioms_spot_checks_on_spin_and_octonion_hermitian() {
    for a in [CommAlgebra::<Rat>::spin_factor(6).unwrap(), h_n("octonions", 3)] {
        let mut rng = sample::rng(55);
        let mut checked = 0;
        for _ in 0..12 {
            let x = sample::random_element(&a, &mut rng, 2);
            let x2 = a.jordan_mul(&x, &x);
            let (Ok(nx), Ok(nx2)) =
                (order_unit_norm(&a, &x, 1e-9), order_unit_norm(&a, &x2, 1e-9))
            else {
                continue;
            };
            assert!((nx2 - nx * nx).abs() < 1e-9 * (1.0 + nx * nx));
            checked += 1;
        }
        assert!(checked >= 8, "norms should be available for most elements");
    }
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-40i64..=40, 1i64..=12).prop_map(|(p, q)| Rat::from_frac(p, q))
}

fn small_sqrt5() -> impl Strategy<Value = Sqrt5> {
    (small_rat(), small_rat()).prop_map(|(a, b)| Sqrt5::new(a, b))
}

proptest! {
    #[test]
    fn rat_field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
        prop_assert_eq!(a.plus(&b), b.plus(&a));
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        if !a.is_zero() {
            prop_assert_eq!(a.times(&a.inverse().unwrap()), Rat::one());
        }
    }

    #[test]
    fn sqrt5_field_axioms(a in small_sqrt5(), b in small_sqrt5(), c in small_sqrt5()) {
        prop_assert_eq!(a.times(&b), b.times(&a));
        prop_assert_eq!(a.times(&b.times(&c)), a.times(&b).times(&c));
        prop_assert_eq!(a.times(&b.plus(&c)), a.times(&b).plus(&a.times(&c)));
        if !Scalar::is_zero(&a) {
            prop_assert_eq!(a.times(&a.inverse().unwrap()), Sqrt5::one());
        }
        // The real embedding orders the field compatibly with addition.
        if a.cmp_real(&b) == std::cmp::Ordering::Less {
            prop_assert_eq!(a.plus(&c).cmp_real(&b.plus(&c)), std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn sphere_points_have_exact_unit_norm(seed in 0u64..5000) {
        let mut rng = sample::rng(seed);
        for m in 1..=6usize {
            let u = sample::rational_sphere_point(&mut rng, m);
            let n = u.iter().fold(Rat::zero(), |acc, x| acc.plus(&x.times(x)));
            prop_assert_eq!(n, Rat::one());
        }
    }

    #[test]
    fn star_antihomomorphism_on_random_octonions(
        a in proptest::collection::vec(-4i64..=4, 8),
        b in proptest::collection::vec(-4i64..=4, 8),
    ) {
        let o = StarRing::named("octonions").unwrap();
        let x = o.element(a.into_iter().map(Rat::from_i64).collect()).unwrap();
        let y = o.element(b.into_iter().map(Rat::from_i64).collect()).unwrap();
        prop_assert_eq!(o.star(&o.mul(&x, &y)), o.mul(&o.star(&y), &o.star(&x)));
        prop_assert_eq!(o.star(&o.star(&x)), x);
    }

    #[test]
    fn jordan_product_is_commutative_and_unital(
        a in proptest::collection::vec(-4i64..=4, 10),
        b in proptest::collection::vec(-4i64..=4, 10),
    ) {
        let alg = h_n("reals", 4); // dim 10
        let x = Element { coeffs: a.into_iter().map(Rat::from_i64).collect() };
        let y = Element { coeffs: b.into_iter().map(Rat::from_i64).collect() };
        prop_assert_eq!(alg.jordan_mul(&x, &y), alg.jordan_mul(&y, &x));
        prop_assert_eq!(alg.jordan_mul(&alg.unit, &x), x.clone());
        prop_assert_eq!(alg.triple_product(&alg.unit, &x, &alg.unit), x);
    }
}
