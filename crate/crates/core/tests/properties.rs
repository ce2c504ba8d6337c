mod common;

use divgen::diversity::{distance, extract_diverse_subset, report, Metric};
use divgen::genbin::{
    first_generator, first_generator_1a, sequential_generator, FirstGenParams, FirstGenVariant,
};
use divgen::genperm::{generate_perm, interleave, PermGenParams};
use divgen::lift::{binarize_seed, lift_collection, LiftPolicy, LiftRule};
use divgen::opposition::{
    dbl_opposite, maxmin_opposite, maxmin_opposite_component, obl_opposite, LambdaPolicy,
    MidpointTie, Sentinels, SortedColumn,
};
use divgen::project::{
    build_coefficients, evaluate_proximity, project_binary, CoefficientMode, ConstraintSystem,
    ProximityObjective,
};
use divgen::*;
use proptest::prelude::*;

fn binary(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = BinaryVector> {
    prop::collection::vec(0u8..=1, n).prop_map(|b| BinaryVector::new(b).unwrap())
}

fn interval() -> impl Strategy<Value = BoundedInterval> {
    (-100.0f64..100.0, 0.01f64..50.0, 0.0f64..0.5, 0.0f64..0.5)
        .prop_map(|(l, w, a, b)| BoundedInterval::with_lambdas(l, l + w, a, b).unwrap())
}

fn bounded(n: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = BoundedVector> {
    prop::collection::vec((interval(), 0.0f64..=1.0, any::<bool>()), n).prop_map(|comps| {
        let mut values = Vec::new();
        let mut ivs = Vec::new();
        let mut ints = Vec::new();
        for (iv, t, int) in comps {
            let iv = if int {
                let l = iv.lower().floor();
                BoundedInterval::new(l, l + iv.width().ceil().max(1.0)).unwrap()
            } else {
                iv
            };
            let x = iv.lower() + t * iv.width();
            values.push(if int {
                x.round().clamp(iv.lower(), iv.upper())
            } else {
                x.min(iv.upper())
            });
            ivs.push(iv);
            ints.push(int);
        }
        BoundedVector::new(values, ivs, ints).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 256,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn obl_is_an_involution(iv in interval(), t in 0.0f64..=1.0) {
        let x = iv.lower() + t * iv.width();
        let back = obl_opposite(obl_opposite(x, &iv).unwrap(), &iv).unwrap();
        prop_assert!((back - x).abs() < 1e-9);
    }

    #[test]
    fn dbl_lands_on_contracted_bound(iv in interval(), x in -200.0f64..200.0) {
        let (lo, hi) = iv.contracted();
        let y = dbl_opposite(x, &iv, false, MidpointTie::Upper).unwrap();
        prop_assert!(y == lo || y == hi);
        // farthest point of [L°, U°] from x
        prop_assert!((y - x).abs() >= (lo - x).abs().max((hi - x).abs()) - 1e-12);
    }

    #[test]
    fn dbl_integral_within_half_of_target(l in -50i32..50, w in 1i32..40, a in 0.0f64..0.5, b in 0.0f64..0.5, t in 0.0f64..=1.0) {
        let iv = BoundedInterval::with_lambdas(l as f64, (l + w) as f64, a, b).unwrap();
        let x = (iv.lower() + t * iv.width()).round();
        let (lo, hi) = iv.contracted();
        let y = dbl_opposite(x, &iv, true, MidpointTie::Upper).unwrap();
        prop_assert_eq!(y.fract(), 0.0);
        prop_assert!((y - lo).abs() <= 0.5 || (y - hi).abs() <= 0.5);
        prop_assert!(iv.contains(y));
    }

    #[test]
    fn dbl_binary_equivalence(a in 0.0f64..0.5, b in 0.0f64..0.5, bit in 0u8..=1) {
        let iv = BoundedInterval::with_lambdas(0.0, 1.0, a, b).unwrap();
        let x = f64::from(bit);
        prop_assert_eq!(dbl_opposite(x, &iv, true, MidpointTie::Upper).unwrap(), 1.0 - x);
    }

    #[test]
    fn maxmin_beats_grid(values in prop::collection::vec(0.0f64..=10.0, 1..8)) {
        let col = SortedColumn::new(values.clone(), 0.0, 10.0).unwrap();
        let x = maxmin_opposite_component(&col);
        let (_, grid_best) = common::grid_maxmin(&values, 0.0, 10.0, 10_000);
        prop_assert!(common::min_dist(&values, x) >= grid_best - 1e-9);
    }

    #[test]
    fn maxmin_single_member_matches_dbl(iv in interval(), t in 0.0f64..=1.0) {
        let x = iv.lower() + t * iv.width();
        prop_assume!(x != iv.contracted_midpoint());
        let member = BoundedVector::continuous(vec![x], vec![iv]).unwrap();
        let y = maxmin_opposite(&[member], &[iv], Sentinels::Contracted).unwrap();
        prop_assert_eq!(y.values()[0], dbl_opposite(x, &iv, false, MidpointTie::Upper).unwrap());
    }

    #[test]
    fn first_generator_pairs_complements(seed in binary(6..=40), h in 2usize..6) {
        prop_assume!(h < seed.len());
        let c = first_generator(&seed, &FirstGenParams::new(h)).unwrap();
        // the all-flip output is the only one whose partner is the excluded seed
        for m in c.iter().filter(|m| **m != seed.complement()) {
            prop_assert!(c.members().contains(&m.complement()));
        }
    }

    #[test]
    fn generators_are_seed_relative(seed in binary(5..=30)) {
        let n = seed.len();
        let comp = seed.complement();
        let h = (n / 3).clamp(1, n - 1);
        let params = FirstGenParams::new(h).with_variant(FirstGenVariant::Augmented1A);
        let a = first_generator(&seed, &params).unwrap();
        let b = first_generator(&comp, &params).unwrap();
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b.iter()) {
            prop_assert_eq!(&x.complement(), y);
        }
        let a = sequential_generator(&seed);
        let b = sequential_generator(&comp);
        for (x, y) in a.iter().zip(b.iter()) {
            prop_assert_eq!(&x.complement(), y);
        }
    }

    #[test]
    fn first_generator_count_band(h in 5usize..=20, extra in 0usize..20) {
        let n = 5 * h + extra;
        let c = first_generator(&BinaryVector::zeros(n).unwrap(), &FirstGenParams::new(h)).unwrap();
        let target = h * (h + 1);
        prop_assert!(10 * c.len() >= 9 * target && 10 * c.len() <= 11 * target, "{} vs {}", c.len(), target);
    }

    #[test]
    fn paired_flips_match_scan(n in 5usize..30, h in 3usize..8, q_off in 0usize..8) {
        prop_assume!(h <= n - 2);
        let q = 1 + q_off % h;
        let seed = BinaryVector::zeros(n).unwrap();
        let c = first_generator_1a(&seed, &FirstGenParams::new(h)).unwrap();
        let expected = seed.complement_over(common::paired_flip_set(n, h, q).into_iter().map(|p| p - 1));
        prop_assert!(c.members().contains(&expected));
    }

    #[test]
    fn sequential_has_no_duplicates(seed in binary(2..=70)) {
        let c = sequential_generator(&seed);
        for (i, a) in c.iter().enumerate() {
            for b in &c.members()[i + 1..] {
                prop_assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn perm_outputs_are_permutations(order in Just((1..=30usize).collect::<Vec<_>>()).prop_shuffle(), n in 2usize..=30) {
        let order: Vec<usize> = order.into_iter().filter(|&v| v <= n).collect();
        let p = Permutation::new(order).unwrap();
        let c = generate_perm(&p, &PermGenParams::default_for(n)).unwrap();
        for m in c.iter() {
            prop_assert!(m.validate().passed());
        }
        // relabel to the identity, apply, map labels back
        for h in 1..=n {
            let direct = interleave(&p, h).unwrap();
            let via_identity: Vec<usize> = common::interleaved_identity(n, h)
                .into_iter()
                .map(|pos| p.order()[pos - 1])
                .collect();
            prop_assert_eq!(direct.order(), &via_identity[..]);
        }
        prop_assert_eq!(interleave(&p, n).unwrap(), p.reversed());
    }

    #[test]
    fn interleave_separation_bound(n in 2usize..60, h_raw in 2usize..60) {
        let h = 2 + h_raw % (n - 1);
        prop_assume!(h <= n);
        let ph = interleave(&Permutation::identity(n).unwrap(), h).unwrap();
        let pos = ph.positions();
        let sep = (1..n).map(|e| pos[e - 1].abs_diff(pos[e])).min().unwrap();
        prop_assert!(sep >= n / h, "n={} h={} sep={}", n, h, sep);
    }

    #[test]
    fn lift_values_in_targets(x in bounded(1..=8), rule in prop_oneof![Just(LiftRule::R1), Just(LiftRule::R2)], seed in any::<u64>()) {
        let policy = LiftPolicy::new(rule, LambdaPolicy::random((1.0 / 6.0, 1.0 / 3.0), RngSeed(seed)));
        let y_s = binarize_seed(&x, &policy).unwrap();
        let binary = sequential_generator(&y_s);
        let lifted = lift_collection(&x, &binary, &policy).unwrap();
        prop_assert_eq!(&lifted.members()[0], &x);
        for m in &lifted.members()[1..] {
            for j in 0..x.len() {
                let iv = m.intervals()[j];
                let (lo, hi) = iv.contracted();
                let v = m.values()[j];
                let near = |t: f64| if x.integral()[j] { (v - t).abs() <= 0.5 } else { v == t };
                match rule {
                    LiftRule::R1 => prop_assert!(near(lo) || near(hi)),
                    LiftRule::R2 => prop_assert!(near(lo) || near(hi) || v == x.values()[j]),
                }
            }
        }
        // lambdas drawn once per call: shared by every member
        for m in &lifted.members()[1..] {
            prop_assert_eq!(m.intervals(), lifted.members()[1].intervals());
        }
    }

    #[test]
    fn lift_binary_degenerates(seed in binary(2..=12)) {
        let iv = BoundedInterval::new(0.0, 1.0).unwrap();
        let n = seed.len();
        let x = BoundedVector::new(seed.bits().iter().map(|&b| f64::from(b)).collect(), vec![iv; n], vec![true; n]).unwrap();
        let policy = LiftPolicy::new(LiftRule::R1, LambdaPolicy::Fixed { lower: 0.0, upper: 0.0 });
        let y_s = binarize_seed(&x, &policy).unwrap();
        prop_assert_eq!(&y_s, &seed);
        let binary = sequential_generator(&y_s);
        let lifted = lift_collection(&x, &binary, &policy).unwrap();
        for (b, l) in binary.iter().zip(&lifted.members()[1..]) {
            let back: Vec<f64> = b.bits().iter().map(|&v| f64::from(v)).collect();
            prop_assert_eq!(l.values(), &back[..]);
        }
    }

    #[test]
    fn projection_scale_invariant(x0 in binary(2..=10), c in 0.01f64..100.0, jitter in any::<u64>()) {
        let n = x0.len();
        let mem = divgen::project::FrequencyMemory::new((0..n as u64).map(|j| j % 3).collect(), 3).unwrap();
        let obj = build_coefficients(&x0, CoefficientMode::Frequency { memory: &mem, beta: 1.5 }, Some(RngSeed(jitter))).unwrap();
        let m = 1 + (jitter as usize) % (n - 1);
        for cs in [ConstraintSystem::cardinality(n, m).unwrap(), ConstraintSystem::gub(vec![(1..=n).collect()]).unwrap()] {
            let a = project_binary(&obj, &cs).unwrap();
            let b = project_binary(&obj.scaled(c).unwrap(), &cs).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert!(cs.is_feasible(&a));
        }
    }

    #[test]
    fn linear_and_l1_agree_on_binary_anchor(x0 in binary(2..=10), cut in 1usize..10, m_raw in any::<u64>()) {
        let n = x0.len();
        let cut = 1 + cut % (n - 1);
        let blocks = vec![(1..=cut).collect::<Vec<_>>(), (cut + 1..=n).collect()];
        let obj = build_coefficients(&x0, CoefficientMode::Unit, None).unwrap();
        let gub = ConstraintSystem::gub(blocks.clone()).unwrap();
        let y = project_binary(&obj, &gub).unwrap();
        prop_assert_eq!(y.hamming(&x0).unwrap(), common::brute_min_l1(x0.bits(), &gub.blocks, &gub.effective_rhs()));
        let rhs: Vec<usize> = blocks.iter().map(|b| if b.len() > 1 { 1 + (m_raw as usize) % (b.len() - 1) } else { 0 }).collect();
        prop_assume!(rhs.iter().all(|&m| m > 0));
        let gmc = ConstraintSystem::generalized_multiple_choice(blocks, rhs).unwrap();
        let y = project_binary(&obj, &gmc).unwrap();
        prop_assert_eq!(y.hamming(&x0).unwrap(), common::brute_min_l1(x0.bits(), &gmc.blocks, &gmc.effective_rhs()));
        let l1 = ProximityObjective::unit_l1(x0.bits().iter().map(|&b| f64::from(b)).collect()).unwrap();
        let yv: Vec<f64> = y.bits().iter().map(|&b| f64::from(b)).collect();
        prop_assert_eq!(evaluate_proximity(&l1, &yv).unwrap(), y.hamming(&x0).unwrap() as f64);
    }

    #[test]
    fn distance_is_a_metric(a in binary(6..=6), b in binary(6..=6), c in binary(6..=6)) {
        for m in [Metric::Hamming, Metric::Euclidean, Metric::WeightedL1 { weights: Some(vec![0.5, 1.0, 2.0, 3.0, 0.1, 1.0]) }] {
            let ab = distance(&a, &b, &m).unwrap();
            prop_assert_eq!(ab, distance(&b, &a, &m).unwrap());
            prop_assert_eq!(ab == 0.0, a == b);
            prop_assert!(distance(&a, &c, &m).unwrap() <= ab + distance(&b, &c, &m).unwrap() + 1e-12);
        }
    }

    #[test]
    fn bounded_distance_is_a_metric(a in bounded(4..=4), t in prop::collection::vec(0.0f64..=1.0, 8)) {
        let with = |off: usize| {
            let values: Vec<f64> = a.intervals().iter().enumerate().map(|(j, iv)| {
                let v = iv.lower() + t[(j + off) % 8] * iv.width();
                if a.integral()[j] { v.round().clamp(iv.lower(), iv.upper()) } else { v }
            }).collect();
            a.with_values(values).unwrap()
        };
        let (b, c) = (with(0), with(3));
        for m in [Metric::Euclidean, Metric::WeightedL1 { weights: None }] {
            let ab = distance(&a, &b, &m).unwrap();
            prop_assert!((ab - distance(&b, &a, &m).unwrap()).abs() < 1e-12);
            prop_assert!(distance(&a, &c, &m).unwrap() <= ab + distance(&b, &c, &m).unwrap() + 1e-9);
        }
    }

    #[test]
    fn report_is_ordered(seed in binary(3..=20)) {
        let c = sequential_generator(&seed);
        let r = report(&c, &seed, &Metric::Hamming).unwrap();
        prop_assert!(r.min_pairwise <= r.mean_pairwise);
        prop_assert!(r.min_pairwise >= 0.0 && r.min_to_seed >= 0.0);
    }

    #[test]
    fn json_round_trip(b in binary(1..=20), x in bounded(1..=6)) {
        let s = serde_json::to_string(&b).unwrap();
        prop_assert_eq!(serde_json::from_str::<BinaryVector>(&s).unwrap(), b);
        let s = serde_json::to_string(&x).unwrap();
        prop_assert_eq!(serde_json::from_str::<BoundedVector>(&s).unwrap(), x);
    }

    #[test]
    fn csv_round_trip_bounded(x in bounded(1..=6)) {
        let c = DiverseCollection::new(vec![x.clone()], Provenance::new("t", ())).unwrap();
        let rows = divgen::io::parse_rows(&divgen::io::to_csv_string(&c).unwrap()).unwrap();
        prop_assert_eq!(&rows[0][..], x.values());
    }

    #[test]
    fn seeded_runs_reproduce(x in bounded(1..=6), seed in any::<u64>()) {
        let policy = LiftPolicy::new(LiftRule::R2, LambdaPolicy::random((0.2, 0.4), RngSeed(seed)));
        let y_s = binarize_seed(&x, &policy).unwrap();
        let a = lift_collection(&x, &sequential_generator(&y_s), &policy).unwrap();
        let b = lift_collection(&x, &sequential_generator(&y_s), &policy).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn separation_near_sqrt_n() {
    let sep = |n: usize, h: usize| {
        let pos = interleave(&Permutation::identity(n).unwrap(), h)
            .unwrap()
            .positions();
        (1..n)
            .map(|e| {
                let d = pos[e - 1].abs_diff(pos[e]);
                d.min(n - d)
            })
            .min()
            .unwrap()
    };
    for (n, h) in [(16, 4), (18, 4), (25, 5)] {
        assert!(sep(n, h) >= h - 1, "n={n} h={h}");
    }
    // ceil(√18) = 5 gives subsequences of length 3 and 4; labels 3 and 4 end up 3 apart
    assert_eq!(sep(18, 5), 3);
}

#[test]
fn greedy_beats_random_subsets() {
    use rand::seq::index::sample;
    use rand::Rng;
    let mut rng = RngSeed(99).rng();
    let mut wins = 0;
    for _ in 0..100 {
        let pop: Vec<BinaryVector> = (0..64)
            .map(|_| BinaryVector::new((0..16).map(|_| rng.gen_range(0..=1)).collect()).unwrap())
            .collect();
        let pop = DiverseCollection::new(pop, Provenance::new("uniform", ())).unwrap();
        let greedy = extract_diverse_subset(&pop, 8, None, &Metric::Hamming).unwrap();
        let picks: Vec<BinaryVector> = sample(&mut rng, 64, 8)
            .into_iter()
            .map(|i| pop.members()[i].clone())
            .collect();
        let random = DiverseCollection::new(picks, Provenance::new("random", ())).unwrap();
        let g = report(&greedy, &pop.members()[0], &Metric::Hamming)
            .unwrap()
            .min_pairwise;
        let r = report(&random, &pop.members()[0], &Metric::Hamming)
            .unwrap()
            .min_pairwise;
        if g >= r {
            wins += 1;
        }
    }
    assert!(wins >= 95, "{wins}");
}
