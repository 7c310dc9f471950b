use std::f64::consts::PI;

use crgeom::exterior::{wedge, ComplexForm};
use crgeom::flow::{self, init_state, Scheme};
use crgeom::heisenberg::{inner_product, make_grid, sublaplacian, testfields};
use crgeom::pointwise::{
    admissible_mu_interval, extremal_parameters, pinching_margin, quadratic_form, torsion_profile, webster_scalar,
};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn complex(bound: f64) -> impl Strategy<Value = Complex64> {
    (-bound..bound, -bound..bound).prop_map(|(re, im)| Complex64::new(re, im))
}

fn one_form() -> impl Strategy<Value = ComplexForm> {
    (complex(2.0), complex(2.0), complex(2.0)).prop_map(|(a, b, c)| ComplexForm::one_form(a, b, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn quadratic_form_is_degree_two_homogeneous(
        w in -5.0..5.0f64, a in complex(3.0), c0 in 0.0..3.0f64, x in complex(2.0), s in 0.1..10.0f64,
    ) {
        prop_assume!(x.norm() > 1e-3);
        let base = quadratic_form(w, a, c0, x).unwrap();
        let scaled = quadratic_form(w, a, c0, x * s).unwrap();
        prop_assert!((scaled - s * s * base).abs() <= 1e-9 * (1.0 + scaled.abs()));
    }

    #[test]
    fn quadratic_form_is_bounded_below_by_margin(
        w in -5.0..5.0f64, a in complex(3.0), c0 in 0.0..3.0f64, phase in 0.0..(2.0 * PI),
    ) {
        let x = Complex64::from_polar(1.0, phase);
        let q = quadratic_form(w, a, c0, x).unwrap();
        prop_assert!(q >= pinching_margin(w, a, c0) - 1e-12 * (1.0 + q.abs()));
    }

    #[test]
    fn torsion_profile_stays_within_extremes(a in complex(3.0), s in -10.0..10.0f64) {
        let ext = extremal_parameters(a);
        let v = torsion_profile(a, s);
        prop_assert!(v <= ext.fmax + 1e-12 && v >= ext.fmin - 1e-12);
    }

    #[test]
    fn mu_interval_exists_iff_w_dominates(w in -4.0..4.0f64, abs_a in 0.0..4.0f64) {
        prop_assume!((w - abs_a).abs() > 1e-9);
        let interval = admissible_mu_interval(w, abs_a);
        prop_assert_eq!(interval.is_some(), w > abs_a);
        if let Some(iv) = interval {
            let lambda = iv.representative_lambda();
            prop_assert!(webster_scalar(lambda, w, abs_a).unwrap() > 0.0);
        }
    }

    #[test]
    fn wedge_of_one_forms_is_antisymmetric(a in one_form(), b in one_form()) {
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        prop_assert!(ab.add(&ba).max_abs() <= 1e-12);
        prop_assert!(wedge(&a, &a).unwrap().max_abs() <= 1e-12);
    }

    #[test]
    fn conjugation_is_an_involution(a in one_form()) {
        prop_assert!(a.conj().conj().add(&a.scale(Complex64::new(-1.0, 0.0))).max_abs() == 0.0);
    }

    #[test]
    fn sublaplacian_is_symmetric_and_nonpositive(seed in any::<u64>()) {
        let g = make_grid(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = testfields::random_smooth_real(&g, &mut rng, 1.0);
        let v = testfields::random_smooth_real(&g, &mut rng, 1.0);
        let luv = inner_product(&sublaplacian(&u), &v).unwrap().re;
        let ulv = inner_product(&u, &sublaplacian(&v)).unwrap().re;
        prop_assert!((luv - ulv).abs() <= 1e-10 * (1.0 + luv.abs()));
        prop_assert!(inner_product(&sublaplacian(&u), &u).unwrap().re <= 1e-10);
    }

    #[test]
    fn flow_step_never_raises_max_torsion(seed in any::<u64>(), c0 in 0.0..1.0f64) {
        let g = make_grid(8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = testfields::random_nonnegative(&g, &mut rng, 0.8);
        let w = testfields::random_smooth_real(&g, &mut rng, 0.5);
        let state = init_state(w, a, c0, None).unwrap();
        let t_end = 40.0 * state.dt;
        let mut worst = f64::NEG_INFINITY;
        flow::run_observed(state, t_end, usize::MAX, Scheme::Heun, |prev, next| {
            worst = worst.max(next.a.max() - prev.a.max());
        }).unwrap();
        prop_assert!(worst <= 0.0);
    }
}
