use std::f64::consts::{PI, TAU};

use disk_area::area::{area_green_spectral_map, area_kernel_direct, area_kernel_fft, kernel_k, Radius};
use disk_area::circle_maps::{make_random_homeomorphism, BoundaryMap};
use disk_area::poisson::{poisson_kernel, FourierCoeffs};
use disk_area::proof_checks::{check_punchline_chain, step3_integral, tangent_gap, MonotoneGamma};
use num_complex::Complex64;
use proptest::prelude::*;

fn rad(r: f64) -> Radius {
    Radius::new(r).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn poisson_kernel_is_positive_with_unit_mean(r in 0.0f64..0.9, t in -10.0f64..10.0) {
        prop_assert!(poisson_kernel(r, t).unwrap() > 0.0);
        let m = 1024;
        let mean: f64 = (0..m).map(|k| poisson_kernel(r, TAU * k as f64 / m as f64).unwrap()).sum::<f64>() / m as f64;
        prop_assert!((mean - 1.0).abs() < 1e-10);
    }

    #[test]
    fn kernel_is_odd_and_periodic(r in 0.01f64..0.95, a in -7.0f64..7.0) {
        let r = rad(r);
        let k = kernel_k(r, a);
        let scale = k.abs().max(1.0);
        prop_assert!((kernel_k(r, -a) + k).abs() < 1e-12 * scale);
        prop_assert!((kernel_k(r, a + TAU) - k).abs() < 1e-9 * scale);
    }

    #[test]
    fn tangent_gap_nonnegative_on_first_square(a in 0.0f64..PI, b in 0.0f64..PI) {
        prop_assert!(tangent_gap(a, b) >= -1e-14);
    }

    #[test]
    fn random_lifts_are_monotone_and_periodic(seed in any::<u64>(), n in 4usize..40, rough in 0.0f64..2.0, t in -20.0f64..20.0) {
        let map = make_random_homeomorphism(seed, n, rough).unwrap();
        let shifted = map.eval_xi(t + TAU);
        prop_assert!((shifted - map.eval_xi(t) - TAU).abs() < 1e-12);
        let s = map.sample_lift(256);
        prop_assert!(s.windows(2).all(|w| w[1] > w[0]));
        prop_assert!(s[255] < s[0] + TAU);
    }

    #[test]
    fn boundary_map_json_round_trip(seed in any::<u64>(), n in 4usize..30) {
        let map = make_random_homeomorphism(seed, n, 0.7).unwrap();
        let back = BoundaryMap::from_json(&map.to_json().unwrap()).unwrap();
        prop_assert_eq!(back, map);
    }

    #[test]
    fn coefficient_json_round_trip(re in -1.0f64..1.0, im in -1.0f64..1.0, order in 1usize..20) {
        let c = FourierCoeffs::mobius(Complex64::new(re, im) * 0.9 / (1.0 + re.abs() + im.abs()), order).unwrap();
        let back = FourierCoeffs::from_json(&c.to_json().unwrap()).unwrap();
        for n in -(order as i64)..=(order as i64) {
            prop_assert_eq!(back.get(n), c.get(n));
        }
    }

    #[test]
    fn step3_nonnegative_and_reflection_invariant(seed in any::<u64>(), r in 0.05f64..0.95) {
        let g = MonotoneGamma::random(seed, 256).unwrap();
        let r = rad(r);
        let a = step3_integral(&g, r);
        prop_assert!(a.value >= -1e-8);
        let b = step3_integral(&g.reflect(), r);
        prop_assert!((a.value - b.value).abs() < 1e-10 * a.value.abs().max(1.0));
    }

    #[test]
    fn punchline_chain_holds(seed in any::<u64>(), r in 0.05f64..0.95) {
        let g = MonotoneGamma::random(seed, 256).unwrap();
        for rec in check_punchline_chain(&g, rad(r)) {
            prop_assert!(rec.passed, "{}: {} vs {}", rec.check_name, rec.lhs, rec.rhs);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn kernel_paths_agree(seed in any::<u64>(), r in 0.1f64..0.9) {
        let map = make_random_homeomorphism(seed, 16, 0.8).unwrap();
        let r = rad(r);
        let a = area_kernel_direct(&map, r, 256).unwrap().value;
        let b = area_kernel_fft(&map, r, 256).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-12 * a.abs());
    }

    #[test]
    fn mollified_maps_contract_area(seed in any::<u64>(), r in 0.1f64..0.97, w in 0usize..3) {
        let width = TAU / [32.0, 64.0, 128.0][w];
        let map = make_random_homeomorphism(seed, 16, 0.5).unwrap().mollify(width, 16384).unwrap();
        let r = rad(r);
        let est = area_green_spectral_map(&map, r, 1024).unwrap();
        prop_assert!(est.value <= r.disk_area() * (1.0 + 1e-6));
        prop_assert!(est.value > 0.0);
    }
}
