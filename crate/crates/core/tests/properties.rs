mod common;

use batchplate::io::{self, LayoutReport};
use batchplate::oracle;
use batchplate::packer::{self, AreaInsertion, FitRule, Ordering, PackOptions, SearchConfig};
use batchplate::wdp;
use batchplate::{search_space_size, EconomicParams, Instance, Layout, Part, Platform};
use itertools::Itertools;
use proptest::prelude::*;

use common::{check_layout, pack_checked};

fn part_strategy(max_side: u32) -> impl Strategy<Value = (u32, u32, u32, u32)> {
    (1..=max_side, 1..=max_side, 1u32..=100, 1u32..=10)
}

fn instance_strategy(max_parts: usize) -> impl Strategy<Value = (Platform, Vec<Part>)> {
    (20u32..=200, 20u32..=200).prop_flat_map(move |(l, w)| {
        prop::collection::vec(part_strategy(l.max(w)), 1..=max_parts).prop_map(move |dims| {
            let plat = Platform::new("P", l as f64, w as f64, 100.0).unwrap();
            let parts = dims
                .into_iter()
                .enumerate()
                .map(|(i, (a, b, h, f))| {
                    Part::new(
                        format!("p{i}"),
                        a as f64,
                        b as f64,
                        h as f64,
                        f as f64 / 10.0,
                    )
                    .unwrap()
                })
                .collect();
            (plat, parts)
        })
    })
}

fn options_strategy() -> impl Strategy<Value = PackOptions> {
    (any::<bool>(), any::<bool>()).prop_map(|(strict, append)| PackOptions {
        fit_rule: if strict {
            FitRule::Strict
        } else {
            FitRule::Inclusive
        },
        insertion: if append {
            AreaInsertion::Append
        } else {
            AreaInsertion::InPlace
        },
    })
}

/// Every part distinct, small enough for exhaustive enumeration.
fn small_distinct_instance(max_parts: usize) -> impl Strategy<Value = Instance> {
    prop::collection::btree_set((2u32..=16, 2u32..=16, 1u32..=10, 1u32..=10), 1..=max_parts)
        .prop_map(|set| {
            let parts = set
                .into_iter()
                .enumerate()
                .map(|(i, (a, b, h, f))| {
                    Part::new(
                        format!("q{i}"),
                        a as f64 * 5.0,
                        b as f64 * 5.0,
                        h as f64 * 10.0,
                        f as f64 / 10.0,
                    )
                    .unwrap()
                })
                .collect();
            Instance::new(
                Platform::new("S", 100.0, 100.0, 100.0).unwrap(),
                parts,
                None,
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn packing_is_geometrically_sound((plat, parts) in instance_strategy(30), opts in options_strategy()) {
        let layout = pack_checked(&plat, &parts, opts).map_err(TestCaseError::fail)?;
        prop_assert_eq!(layout.part_count() + layout.unplaced().len(), parts.len());
        prop_assert_eq!(&layout, &packer::pack_sequence_with(&plat, &parts, opts));
    }

    #[test]
    fn mass_bounded_by_volume_and_rotation_invariant((a, b, h, f) in part_strategy(500)) {
        let p = Part::new("x", a as f64, b as f64, h as f64, f as f64 / 10.0).unwrap();
        prop_assert!(batchplate::part_mass(&p) <= batchplate::part_volume(&p));
        prop_assert_eq!(batchplate::part_mass(&p.rotated()), batchplate::part_mass(&p));
        prop_assert_eq!(batchplate::part_volume(&p.rotated()), batchplate::part_volume(&p));
        prop_assert_eq!(p.rotated().rotated(), p);
    }

    #[test]
    fn instance_json_round_trips((plat, parts) in instance_strategy(12), econ in prop::option::of((0u32..100, 0u32..1000, 0u32..100))) {
        let economics = econ.map(|(p, k, c)| EconomicParams::new(p as f64, k as f64, c as f64 / 100.0).unwrap());
        let inst = Instance::new(plat, parts, economics).unwrap();
        let text = io::instance_to_json(&inst);
        let back = io::parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(io::instance_to_json(&back), text);
    }

    #[test]
    fn reports_rederive_their_metrics((plat, parts) in instance_strategy(20)) {
        let layout = packer::pack_sequence(&plat, &parts);
        let report = LayoutReport::new(&layout, None, None);
        prop_assert!(report.metrics_consistent());
        let json = serde_json::to_string(&report).unwrap();
        let back: LayoutReport = serde_json::from_str(&json).unwrap();
        prop_assert!(back.metrics_consistent());
        let rebuilt = back.to_layout().unwrap();
        prop_assert_eq!(rebuilt.placements(), layout.placements());
        prop_assert_eq!(&back.unplaced, &layout.unplaced().iter().map(|p| p.name().to_owned()).collect::<Vec<_>>());
    }

    #[test]
    fn winner_dominates_and_survives_filling_scaling(
        (plat, parts) in instance_strategy(10),
        seeds in prop::collection::vec(any::<u64>(), 1..8),
        alpha in 1u32..=9,
    ) {
        let candidates: Vec<Layout> = seeds.iter().map(|&s| packer::pack_sequence(&plat, &packer::shuffled_parts(&parts, s, 0))).collect();
        let w = wdp::winner_index(&candidates).unwrap();
        for c in &candidates {
            prop_assert!(candidates[w].total_mass() >= c.total_mass());
        }

        // Fillings are at most 1.0, so scale down by alpha/10.
        let scale = alpha as f64 / 10.0;
        let scaled: Vec<Layout> = candidates
            .iter()
            .map(|l| {
                let placements = l
                    .placements()
                    .iter()
                    .map(|p| {
                        let q = p.part();
                        let part = Part::new(q.name(), q.length(), q.width(), q.height(), q.filling() * scale).unwrap();
                        batchplate::Placement::new(part, p.x(), p.y(), p.rotated())
                    })
                    .collect();
                Layout::new(l.platform().clone(), placements, vec![])
            })
            .collect();
        let sw = wdp::winner_index(&scaled).unwrap();
        if sw != w {
            // Only a floating-point tie may move the choice.
            let (a, b) = (candidates[sw].total_mass(), candidates[w].total_mass());
            prop_assert!((a - b).abs() <= 1e-9 * b, "winner moved from {} to {}", w, sw);
            prop_assert_eq!(candidates[sw].covered_area(), candidates[w].covered_area());
        }
    }

    #[test]
    fn profit_follows_mass_when_price_exceeds_cost(
        masses in prop::collection::vec(0u32..5_000_000, 1..20),
        (c, margin, k) in (0u32..100, 1u32..100, 0u32..10_000),
    ) {
        let econ = EconomicParams::new((c + margin) as f64 / 100.0, k as f64, c as f64 / 100.0).unwrap();
        let profit = |m: f64| wdp::income(m, &econ) - wdp::cost(m, &econ);
        let best_mass = masses.iter().copied().max().unwrap() as f64;
        let best_profit = masses.iter().map(|&m| profit(m as f64)).fold(f64::NEG_INFINITY, f64::max);
        prop_assert_eq!(profit(best_mass), best_profit);
        for pair in masses.windows(2) {
            let (a, b) = (pair[0] as f64, pair[1] as f64);
            if a < b {
                prop_assert!(profit(a) < profit(b));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn heuristic_never_beats_oracle(inst in small_distinct_instance(6), seed in any::<u64>(), iters in 1usize..40) {
        let cfg = SearchConfig { iterations: iters, master_seed: seed, threads: 1, ..Default::default() };
        let res = packer::multi_start(&inst, &cfg).unwrap();
        let best = oracle::enumerate_optimal(&inst, 1_000).unwrap();
        prop_assert!(res.winner().layout.total_mass() <= best.best_by_mass.total_mass());
        prop_assert!(res.best_coverage().layout.covered_area() <= best.best_by_coverage.covered_area());
    }

    #[test]
    fn explicit_orders_reproduce_oracle(inst in small_distinct_instance(4)) {
        let parts = inst.parts();
        let mut best_mass = 0.0_f64;
        let mut best_area = 0.0_f64;
        for order in parts.iter().cloned().permutations(parts.len()) {
            let reordered = Instance::new(inst.platform().clone(), order, None).unwrap();
            let cfg = SearchConfig { iterations: 1, ordering: Ordering::AsGiven, threads: 1, ..Default::default() };
            let res = packer::multi_start(&reordered, &cfg).unwrap();
            best_mass = best_mass.max(res.winner().layout.total_mass());
            best_area = best_area.max(res.best_coverage().layout.covered_area());
        }
        let o = oracle::enumerate_optimal(&inst, 1_000).unwrap();
        prop_assert_eq!(best_mass, o.best_by_mass.total_mass());
        prop_assert_eq!(best_area, o.best_by_coverage.covered_area());
        check_layout(&o.best_by_mass).map_err(TestCaseError::fail)?;
    }
}

#[test]
fn space_size_recurrence() {
    assert_eq!(search_space_size(0), 1u32.into());
    for n in 1..=40u32 {
        assert_eq!(search_space_size(n), search_space_size(n - 1) * (2 * n));
    }
}

#[test]
fn oracle_is_thread_independent() {
    let inst = io::parse_instance(include_str!("../fixtures/equal_height.json")).unwrap();
    let small = Instance::new(inst.platform().clone(), inst.parts()[..8].to_vec(), None).unwrap();
    let run = |threads| {
        oracle::enumerate_optimal_with(
            &small,
            &oracle::OracleConfig {
                threads,
                ..Default::default()
            },
        )
        .unwrap()
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a.best_by_mass, b.best_by_mass);
    assert_eq!(a.best_by_coverage, b.best_by_coverage);
    assert_eq!(a.sequences_evaluated, b.sequences_evaluated);
}

#[test]
fn winner_can_trail_on_coverage_and_part_count() {
    let inst = io::parse_instance(include_str!("../fixtures/equal_height.json")).unwrap();
    let cfg = SearchConfig {
        iterations: 2_000,
        threads: 0,
        ..Default::default()
    };
    let res = packer::multi_start(&inst, &cfg).unwrap();
    let pool: Vec<Layout> = res
        .candidate_pool()
        .into_iter()
        .map(|c| c.layout.clone())
        .collect();
    let winner = wdp::select_winner(&pool).unwrap();
    let max_cov = pool.iter().map(Layout::covered_area).fold(0.0, f64::max);
    let max_parts = pool.iter().map(Layout::part_count).max().unwrap();
    assert!(winner.covered_area() < max_cov);
    assert!(winner.part_count() < max_parts);
    assert!(pool.iter().all(|l| l.total_mass() <= winner.total_mass()));
}
