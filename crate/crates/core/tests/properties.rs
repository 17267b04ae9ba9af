use conjugate_core::analysis::{cobweb_path, zero_preimage_set};
use conjugate_core::chaos_rng::{exhaustive_collapse, logistic_sequence, uniformize};
use conjugate_core::closed_form::{boole_iterate, fractional_iterate_quadratic};
use conjugate_core::conjugacy::conjugate_map;
use conjugate_core::map_core::{iterate, orbit};
use conjugate_core::{Homeomorphism, MapDescriptor};
use proptest::prelude::*;

fn unit_map() -> impl Strategy<Value = MapDescriptor> {
    prop_oneof![
        Just(MapDescriptor::Logistic),
        Just(MapDescriptor::Tent),
        Just(MapDescriptor::Cosine),
        Just(MapDescriptor::Verhulst { m: 4.0, n: 4.0 }),
    ]
}

fn unit_homeo() -> impl Strategy<Value = Homeomorphism> {
    prop_oneof![
        Just(Homeomorphism::UlamArcsin),
        Just(Homeomorphism::Reflect),
        (0.3f64..3.0).prop_map(|g| Homeomorphism::power(g).unwrap()),
        (0.1f64..0.9, 0.1f64..0.9)
            .prop_map(|(x, y)| Homeomorphism::piecewise_linear(vec![(0.0, 0.0), (x, y), (1.0, 1.0)]).unwrap()),
    ]
}

proptest! {
    #[test]
    fn iteration_composes(map in unit_map(), x in 0.0f64..=1.0, m in 0usize..15, n in 0usize..15) {
        let split = iterate(&map, iterate(&map, x, m).unwrap(), n).unwrap();
        prop_assert_eq!(iterate(&map, x, m + n).unwrap(), split);
    }

    #[test]
    fn orbits_are_deterministic(map in unit_map(), x in 0.0f64..=1.0, n in 0usize..50) {
        let a = orbit(&map, x, n).unwrap();
        let b = orbit(&map, x, n).unwrap();
        prop_assert_eq!(a.values.len(), n + 1);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn conjugated_eval_is_h_f_h_inverse(map in unit_map(), h in unit_homeo(), y in 0.01f64..0.99) {
        let g = MapDescriptor::conjugated(map.clone(), h.clone());
        let expected = h.apply(map.eval(h.invert(y).unwrap()).unwrap()).unwrap();
        prop_assert!((g.eval(y).unwrap() - expected).abs() < 1e-12);
    }

    #[test]
    fn conjugating_back_recovers_the_map(map in unit_map(), h in unit_homeo(), x in 0.01f64..0.99) {
        let there = conjugate_map(&map, &h);
        let back = conjugate_map(&there, &h.clone().inverse());
        prop_assert!((back.eval(x).unwrap() - map.eval(x).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn ulam_commutes_with_iterates(x in 0.001f64..0.999, n in 0usize..=10) {
        let h = Homeomorphism::UlamArcsin;
        let lhs = h.apply(iterate(&MapDescriptor::Logistic, x, n).unwrap()).unwrap();
        let rhs = iterate(&MapDescriptor::Tent, h.apply(x).unwrap(), n).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn boole_iterates_form_a_semigroup(t in -1.0f64..=1.0, m in 0usize..=4, n in 0usize..=4) {
        let two_step = boole_iterate(boole_iterate(t, m).unwrap(), n).unwrap();
        prop_assert!((two_step - boole_iterate(t, m + n).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn fractional_quadratic_iterate_composes(x in 1.01f64..3.0, n in 2usize..=4) {
        let mut y = x;
        for _ in 0..n {
            y = fractional_iterate_quadratic(y, n).unwrap();
        }
        let once = MapDescriptor::Quadratic.eval(x).unwrap();
        prop_assert!((y - once).abs() < 1e-8 * once.abs().max(1.0));
    }

    #[test]
    fn monotone_contraction_traps_the_cobweb(a in 0.05f64..0.95, slope in 0.05f64..0.9, x0 in 0.0f64..=1.0) {
        // y = a + slope·(x − a) clamped to a PWL map of [0,1] with fixed point a
        let trap = MapDescriptor::piecewise_linear(vec![(0.0, a - slope * a), (1.0, a + slope * (1.0 - a))]).unwrap();
        let p = cobweb_path(&trap, x0, 2000).unwrap();
        prop_assert!(p.converged);
        prop_assert!((p.limit.unwrap() - a).abs() < 1e-9);
        let values = p.orbit_values();
        for w in values.windows(2) {
            prop_assert!((w[1] - a).abs() <= (w[0] - a).abs() + 1e-15);
        }
    }

    #[test]
    fn uniformized_orbit_follows_the_tent(x0 in 0.01f64..0.99) {
        let u = uniformize(&logistic_sequence(x0, 500).unwrap()).unwrap();
        for w in u.windows(2) {
            prop_assert!((w[1] - MapDescriptor::Tent.eval(w[0]).unwrap()).abs() < 1e-6);
        }
    }

    #[test]
    fn sine_squared_transports_doubling(word in 1u64..(1 << 30)) {
        // the α side is exact; the logistic side carries rounding amplified
        // by |f'| along the orbit, tracked by a running forward-error bound
        let alpha = word as f64 / (1u64 << 30) as f64;
        let (lhs, rhs) = transport(alpha);
        let mut bound = 1e-16;
        for k in 0..=20 {
            if k > 0 {
                bound = (4.0 * (1.0 - 2.0 * rhs[k - 1])).abs() * bound + 1e-15;
            }
            prop_assert!((lhs[k] - rhs[k]).abs() <= bound, "k={} {} vs {}", k, lhs[k], rhs[k]);
        }
    }
}

fn transport(alpha: f64) -> (Vec<f64>, Vec<f64>) {
    let s2 = MapDescriptor::SineSquared;
    let alphas = orbit(&MapDescriptor::Doubling, alpha, 20).unwrap().values;
    let lhs = alphas.iter().map(|&a| s2.eval(a).unwrap()).collect();
    let rhs = orbit(&MapDescriptor::Logistic, s2.eval(alpha).unwrap(), 20).unwrap().values;
    (lhs, rhs)
}

#[test]
fn sine_squared_transport_is_usually_within_1e9() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let trials = 2000;
    let within = (0..trials)
        .filter(|_| {
            let alpha = rng.gen_range(1u64..1 << 30) as f64 / (1u64 << 30) as f64;
            let (lhs, rhs) = transport(alpha);
            lhs.iter().zip(&rhs).all(|(a, b)| (a - b).abs() < 1e-9)
        })
        .count();
    assert!(within as f64 / trials as f64 > 0.95, "{within}/{trials}");
}

#[test]
fn tent_preimage_counts_and_gaps() {
    for k in 1..=10 {
        let s = zero_preimage_set(&MapDescriptor::Tent, k).unwrap();
        assert_eq!(s.points.len(), (1 << (k - 1)) + 1, "depth {k}");
        assert_eq!(s.largest_gap, 2f64.powi(1 - k as i32), "depth {k}");
    }
}

#[test]
fn power_conjugated_tent_gaps_shrink() {
    for g in [0.5, 2.0, 3.0] {
        let map = MapDescriptor::conjugated(MapDescriptor::Tent, Homeomorphism::power(g).unwrap());
        let shallow = zero_preimage_set(&map, 5).unwrap();
        let deep = zero_preimage_set(&map, 10).unwrap();
        assert!(deep.largest_gap < shallow.largest_gap, "g={g}");
        assert_eq!(deep.points.len(), 513);
    }
}

#[test]
fn every_short_word_collapses() {
    for bits in 1..=16 {
        let r = exhaustive_collapse(bits).unwrap();
        assert_eq!(r.failures, 0);
        assert_eq!(r.max_steps, bits as usize);
        assert_eq!(r.mean_steps, bits as f64 - 1.0 + 2f64.powi(-(bits as i32)));
    }
}
