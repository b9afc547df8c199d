use proptest::prelude::*;
use segre_core::oracle::brute_nested;
use segre_core::*;

fn bundle() -> impl Strategy<Value = (i64, i64, i64)> {
    (2i64..=30, 2i64..=12).prop_flat_map(|(g, r)| (Just(g), Just(r), -4 * r..=4 * r))
}

fn bundle_and_k() -> impl Strategy<Value = (i64, i64, i64, i64)> {
    bundle().prop_flat_map(|(g, r, d)| (Just(g), Just(r), Just(d), 1..r))
}

fn profile_and_steps() -> impl Strategy<Value = (SegreProfile, Vec<TransformStep>)> {
    (2i64..=12, 2i64..=8)
        .prop_flat_map(|(g, r)| {
            let offsets = prop::collection::vec(0i64..4, (r - 1) as usize);
            let steps = prop::collection::vec(
                prop::collection::vec(any::<bool>(), (r - 1) as usize),
                0..8,
            );
            (Just(g), Just(r), -3 * r..=3 * r, offsets, steps)
        })
        .prop_map(|(g, r, d, offsets, steps)| {
            let s = offsets
                .iter()
                .enumerate()
                .map(|(idx, off)| s_max(g, r, d, idx as i64 + 1).unwrap() - r * off)
                .collect();
            let p = SegreProfile::new(g, r, d, s).unwrap();
            let steps = steps
                .into_iter()
                .map(|bits| {
                    TransformStep::new(
                        bits.into_iter()
                            .map(|b| if b { StepType::II } else { StepType::I })
                            .collect(),
                    )
                    .unwrap()
                })
                .collect();
            (p, steps)
        })
}

proptest! {
    #[test]
    fn s_max_sits_in_the_generic_band((g, r, d, k) in bundle_and_k()) {
        let top = s_max(g, r, d, k).unwrap();
        prop_assert!(k * (r - k) * (g - 1) <= top);
        prop_assert!(top <= hirschowitz_bound(g, r, k).unwrap());
        prop_assert_eq!((top - k * d).rem_euclid(r), 0);
    }

    #[test]
    fn duality_and_twist((g, r, d, k) in bundle_and_k(), t in -5i64..=5) {
        let (_, dd, dk) = dual_params(r, d, k);
        prop_assert_eq!(s_max(g, r, d, k).unwrap(), s_max(g, r, dd, dk).unwrap());
        prop_assert_eq!(s_max(g, r, d, k).unwrap(), s_max(g, r, d + r * t, k).unwrap());
        for s in valid_s(g, r, d, k).unwrap() {
            prop_assert_eq!(stratum_dim(g, r, d, k, s).unwrap(), stratum_dim(g, r, dd, dk, s).unwrap());
            prop_assert_eq!(maximal_locus_dim(g, r, k, s).unwrap(), maximal_locus_dim(g, r, dk, s).unwrap());
        }
    }

    #[test]
    fn codimension_and_locus_cap((g, r, d, k) in bundle_and_k()) {
        let floor = k * (r - k) * (g - 1);
        for s in valid_s(g, r, d, k).unwrap() {
            let dim = stratum_dim(g, r, d, k, s).unwrap();
            if s < floor {
                prop_assert_eq!(generic_dim(g, r).unwrap() - dim, floor - s);
            }
            let locus = maximal_locus_dim(g, r, k, s).unwrap();
            prop_assert!(locus >= 0 && locus <= k * (r - k));
        }
        prop_assert_eq!(
            maximal_locus_dim(g, r, k, s_max(g, r, d, k).unwrap()).unwrap(),
            epsilon_k(g, r, d, k).unwrap()
        );
    }

    #[test]
    fn rank_two_specialization(g in 2i64..=60, d in -10i64..=10) {
        for s in valid_s(g, 2, d, 1).unwrap() {
            let expected = if s <= g - 2 { 3 * g + s - 2 } else { 4 * g - 3 };
            prop_assert_eq!(stratum_dim(g, 2, d, 1, s).unwrap(), expected);
        }
    }

    #[test]
    fn strata_rows_are_consistent((g, r, d) in bundle()) {
        let rows = strata_table(g, r, d).unwrap();
        let keys: Vec<_> = rows.iter().map(|x| (x.k, x.s)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        prop_assert_eq!(keys, sorted);
        for row in rows {
            prop_assert!(row.eps >= 0 && row.eps < r);
            prop_assert_eq!(r * row.d1, row.k * d - row.s);
            prop_assert_eq!((row.s - row.k * d).rem_euclid(r), 0);
            prop_assert!(row.locus_dim <= row.k * (r - row.k));
        }
    }

    #[test]
    fn nested_bounds_below_brute_minimum(r in 2i64..=8, d in -16i64..=16, k_seed in 0i64..8, s_seed in 0i64..40, nu in 1i64..8) {
        let k = 1 + k_seed % (r - 1);
        let s = (k * d).rem_euclid(r) + r * (s_seed % 6);
        prop_assume!(s > 0);
        prop_assume!(nu < k || nu < r - k);
        let bound = nested_bounds(r, k, s, nu).unwrap();
        let brute = brute_nested(r, d, k, s, nu).unwrap();
        if let (Some(b), Some(m)) = (bound.sub_bound, brute.sub_min) {
            prop_assert!(b.cmp_integer(m).is_le());
            prop_assert!(bound.sub_bound_int.unwrap() <= m);
        }
        if let (Some(b), Some(m)) = (bound.quot_bound, brute.quot_min) {
            prop_assert!(b.cmp_integer(m).is_le());
        }
        prop_assert_eq!(bound.sub_bound.is_some(), brute.sub_min.is_some());
        prop_assert_eq!(bound.quot_bound.is_some(), brute.quot_min.is_some());
    }

    #[test]
    fn segre_pair_steps_by_r(r in 2i64..=10, d in -50i64..=50, k_seed in 0i64..9, f in -50i64..50) {
        let k = 1 + k_seed % (r - 1);
        prop_assert_eq!(segre_pair(r, d, k, f).unwrap() - segre_pair(r, d, k, f + 1).unwrap(), r);
    }

    #[test]
    fn steps_preserve_congruence((p, steps) in profile_and_steps()) {
        let mut cur = p;
        for t in &steps {
            cur = apply_step(&cur, t).unwrap();
            for (idx, v) in cur.values().iter().enumerate() {
                prop_assert_eq!((v - (idx as i64 + 1) * cur.d()).rem_euclid(cur.r()), 0);
            }
        }
    }

    #[test]
    fn all_type_one_closed_form((p, steps) in profile_and_steps()) {
        let n = steps.len() as i64;
        let all_i = vec![TransformStep::uniform(p.r(), StepType::I).unwrap(); steps.len()];
        let q = apply_steps(&p, &all_i).unwrap();
        prop_assert_eq!(q.d(), p.d() - n);
        for (idx, (a, b)) in q.values().iter().zip(p.values()).enumerate() {
            prop_assert_eq!(*a, b - n * (idx as i64 + 1));
        }
    }

    #[test]
    fn duality_conjugates_steps((p, steps) in profile_and_steps()) {
        for t in &steps {
            let q = apply_step(&p, t).unwrap();
            let back = apply_step(&dual_profile(&q), &dual_step(p.r(), t).unwrap()).unwrap();
            prop_assert_eq!(back, dual_profile(&p));
            prop_assert_eq!(dual_step(p.r(), &dual_step(p.r(), t).unwrap()).unwrap(), t.clone());
        }
        prop_assert_eq!(dual_profile(&dual_profile(&p)), p);
    }

    #[test]
    fn filtered_sequences_respect_caps((p, steps) in profile_and_steps()) {
        let mut cur = p;
        prop_assert!(cur.within_caps().unwrap());
        for t in &steps {
            let chosen = t
                .types()
                .iter()
                .enumerate()
                .map(|(idx, &ty)| {
                    if type_feasible(&cur, idx as i64 + 1, ty).unwrap() { ty } else { StepType::I }
                })
                .collect();
            cur = apply_step(&cur, &TransformStep::new(chosen).unwrap()).unwrap();
            prop_assert!(cur.within_caps().unwrap());
        }
    }

    #[test]
    fn pair_transition_matches_definition(r in 2i64..=9, d in -20i64..=20, k_seed in 0i64..8, f in -20i64..=20, two in any::<bool>()) {
        let k = 1 + k_seed % (r - 1);
        let ty = if two { StepType::II } else { StepType::I };
        let (f2, value) = subbundle_transition(r, d, k, f, ty).unwrap();
        prop_assert_eq!(value, segre_pair(r, d - 1, k, f2).unwrap());
    }

    #[test]
    fn locus_steps_stay_in_range(r in 2i64..=9, k_seed in 0i64..8, lo_seed in 0i64..100, width in 0i64..100, steps in prop::collection::vec(any::<bool>(), 0..12)) {
        let k = 1 + k_seed % (r - 1);
        let cap = k * (r - k);
        let lo = lo_seed % (cap + 1);
        let hi = (lo + width).min(cap);
        let mut intervals = vec![LocusInterval::new(0, 0).unwrap(); (r - 1) as usize];
        intervals[(k - 1) as usize] = LocusInterval::new(lo, hi).unwrap();
        let mut b = LocusDimBounds::new(r, intervals).unwrap();
        for two in steps {
            let ty = if two { StepType::II } else { StepType::I };
            b = locus_dim_step(&b, k, ty, r).unwrap();
            let iv = b.at(k).unwrap();
            prop_assert!(0 <= iv.lo && iv.lo <= iv.hi && iv.hi <= cap);
        }
    }

    #[test]
    fn window_identity((g, r, d, k) in bundle_and_k()) {
        for s in valid_s(g, r, d, k).unwrap() {
            let n = choose_nk(g, r, k, s).unwrap();
            prop_assert_eq!(s + n * k, s_max(g, r, d + n, k).unwrap());
            if n > 0 {
                prop_assert!(s + (n - 1) * k < k * (r - k) * (g - 1));
            }
        }
    }

    #[test]
    fn chain_lines_decrease(g in 2i64..=20, r in 3i64..=10, k_seed in 0i64..9, i_seed in 0i64..9, s in 1i64..=200) {
        let k = 2 + k_seed % (r - 2).max(1);
        prop_assume!(k < r);
        let i = 1 + i_seed % (k - 1);
        prop_assume!(s < k * (r - k) * (g - 1) + r);
        let chain = paper_chain(g, r, k, s, i).unwrap();
        let diff = chain.values[0].checked_sub(&chain.values[1]).unwrap();
        prop_assert_eq!(diff, Rational::new(i * (s - 1), k).unwrap());
    }

    #[test]
    fn closed_form_verdict_implies_sharp((g, r, d, k) in bundle_and_k()) {
        prop_assume!(r <= 8);
        for s in valid_s(g, r, d, k).unwrap() {
            let cert = sharp_feasibility(g, r, d, k, s).unwrap();
            if cert.per_i.iter().all(|c| c.paper_chain.positive) {
                prop_assert!(cert.per_i.iter().all(|c| c.passes));
            }
        }
    }
}
