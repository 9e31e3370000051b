use std::collections::HashSet;

use amc_core::farey::{self, Slope};
use amc_core::fixtures::{farey_base, sphere_base};
use amc_core::markings::{
    apply_move, elementary_neighbors, legal_moves, max_twist_power, validate, AugmentedMarking, BallGraph, Caps,
    FareyModel, MarkedCurve, MarkingRecord, Move, SphereModel, SurfaceModel,
};
use amc_core::SurfaceKind;
use proptest::prelude::*;

fn s(p: i64, q: i64) -> Slope {
    Slope::new(p, q).unwrap()
}

fn farey_marking(base: Slope, transversal: Slope, depth: u32) -> AugmentedMarking<Slope> {
    AugmentedMarking::from_pairs(vec![MarkedCurve { base, transversal, depth }]).unwrap()
}

#[test]
fn twist_powers_follow_the_exponential_rule() {
    // Oracle: smallest n with n + 1 >= e^d, at least one.
    for d in 0..8u32 {
        let mut n = 1u64;
        while ((n + 1) as f64) < (d as f64).exp() {
            n += 1;
        }
        assert_eq!(max_twist_power(d, None), n, "d = {d}");
        assert_eq!(max_twist_power(d, Some(3)), n.min(3));
    }
    assert_eq!(max_twist_power(2, None), 7);
}

#[test]
fn validation_reports_each_violation() {
    let model = FareyModel::new(SurfaceKind::S11).unwrap();
    let ok = MarkingRecord {
        base: vec![farey::INFINITY],
        transversals: vec![farey::ZERO],
        depth: vec![(farey::INFINITY, 3)],
    };
    assert!(validate(&model, &ok).is_empty());
    let far = MarkingRecord { transversals: vec![s(1, 2)], ..ok.clone() };
    assert_eq!(validate(&model, &far), vec!["transversal 0 is not at distance one from its base curve".to_string()]);
    let parallel = MarkingRecord { transversals: vec![farey::INFINITY], ..ok.clone() };
    assert_eq!(validate(&model, &parallel), vec!["transversal 0 is not clean".to_string()]);
    let off = MarkingRecord { depth: vec![(farey::ZERO, 1)], ..ok.clone() };
    assert!(validate(&model, &off).contains(&"D off base".to_string()));
    let twice = MarkingRecord { depth: vec![(farey::INFINITY, 1), (farey::INFINITY, 2)], ..ok.clone() };
    assert!(validate(&model, &twice).contains(&"D given twice".to_string()));
    let short = MarkingRecord { base: vec![], transversals: vec![], depth: vec![] };
    assert!(validate(&model, &short)[0].starts_with("base has 0 curves"));
}

#[test]
fn sphere_base_is_a_clean_marking() {
    let model = SphereModel::new().unwrap();
    let m = sphere_base(&model).unwrap();
    assert!(validate(&model, &MarkingRecord::from(&m)).is_empty());
    let base = m.base();
    assert_eq!(model.intersection(&base[0], &base[1]).unwrap(), 0);
    for p in m.pairs() {
        assert_eq!(model.intersection(&p.base, &p.transversal).unwrap(), model.transverse_intersection());
        assert_eq!(model.annular_twist(&p.base, &p.transversal).unwrap(), 0);
    }
}

#[test]
fn neighbor_counts_match_the_move_rules() {
    let model = FareyModel::new(SurfaceKind::S04).unwrap();
    let caps = Caps::default();
    for d in 0..4u32 {
        let m = farey_marking(farey::INFINITY, farey::ZERO, d);
        let n = elementary_neighbors(&model, &m, &caps).unwrap();
        let flips = usize::from(d == 0);
        let verticals = if d == 0 { 1 } else { 2 };
        assert_eq!(n.len(), flips + verticals + 2 * max_twist_power(d, None) as usize, "d = {d}");
        assert_eq!(n.iter().filter(|(mv, _)| matches!(mv, Move::Flip { .. })).count(), flips);
    }
    let sphere = SphereModel::new().unwrap();
    let base = sphere_base(&sphere).unwrap();
    let m = base.with_depths(&[2, 0]).unwrap();
    let moves = legal_moves(&m, &caps);
    // Two upward moves and one downward move, from the one nonzero depth.
    assert_eq!(moves.iter().filter(|mv| matches!(mv, Move::Vertical { .. })).count(), 2 * 2 - 1);
    let powers: Vec<i64> = moves
        .iter()
        .filter_map(|mv| if let Move::Twist { index: 0, power } = mv { Some(*power) } else { None })
        .collect();
    let mut want: Vec<i64> = (1..=7).flat_map(|k| [k, -k]).collect();
    want.sort();
    let mut got = powers.clone();
    got.sort();
    assert_eq!(got, want);
    assert!(!moves.contains(&Move::Flip { index: 0 }));
    assert!(moves.contains(&Move::Flip { index: 1 }));
    assert!(apply_move(&sphere, &m, Move::Flip { index: 0 }).is_err());
}

#[test]
fn flips_exchange_base_and_transversal() {
    let model = FareyModel::new(SurfaceKind::S11).unwrap();
    let m = farey_marking(farey::INFINITY, farey::ZERO, 0);
    let f = apply_move(&model, &m, Move::Flip { index: 0 }).unwrap();
    assert_eq!(f, farey_marking(farey::ZERO, farey::INFINITY, 0));
    assert_eq!(apply_move(&model, &f, Move::Flip { index: 0 }).unwrap(), m);
    let t = apply_move(&model, &m, Move::Twist { index: 0, power: 3 }).unwrap();
    assert_eq!(model.annular_twist(&farey::INFINITY, &t.transversals()[0]).unwrap(), 3);
}

#[test]
fn small_balls() {
    let model = FareyModel::new(SurfaceKind::S04).unwrap();
    let caps = Caps::default();
    let center = farey_base();
    let b0 = BallGraph::generate(&model, &center, 0, &caps).unwrap();
    assert_eq!(b0.len(), 1);
    assert_eq!(b0.edge_count(), 0);
    let b1 = BallGraph::generate(&model, &center, 1, &caps).unwrap();
    let n = elementary_neighbors(&model, &center, &caps).unwrap().len();
    assert_eq!(b1.len(), 1 + n);
    assert!(b1.depth.iter().all(|&d| d <= 1));
    let tight = Caps { budget_vertices: 10, ..caps };
    assert!(matches!(BallGraph::generate(&model, &center, 4, &tight), Err(amc_core::Error::Budget(_))));
}

#[test]
fn farey_ball_matches_a_naive_search() {
    let model = FareyModel::new(SurfaceKind::S11).unwrap();
    let caps = Caps::default();
    let center = farey_base();
    let radius = 4;
    let ball = BallGraph::generate(&model, &center, radius, &caps).unwrap();
    // Oracle: breadth-first search over a hash set, without ordering or parallelism.
    let mut seen: HashSet<AugmentedMarking<Slope>> = HashSet::from([center.clone()]);
    let mut layer = vec![center];
    for _ in 0..radius {
        let mut next = Vec::new();
        for m in &layer {
            for (_, w) in elementary_neighbors(&model, m, &caps).unwrap() {
                if seen.insert(w.clone()) {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    assert_eq!(ball.len(), seen.len());
    assert!(ball.vertices.windows(2).all(|w| w[0] < w[1]));
    for (v, nbrs) in ball.adjacency.iter().enumerate() {
        for &(w, _) in nbrs {
            assert!(ball.adjacency[w as usize].iter().any(|&(x, _)| x as usize == v), "asymmetric edge");
            assert!(ball.depth[v].abs_diff(ball.depth[w as usize]) <= 1);
        }
    }
    let d = ball.bfs_from(ball.center);
    assert_eq!(d, ball.depth);
}

#[test]
fn no_flip_edges_at_positive_depth() {
    let model = SphereModel::new().unwrap();
    let ball =
        BallGraph::generate(&model, &sphere_base(&model).unwrap(), 2, &Caps { max_twist: Some(3), ..Caps::default() })
            .unwrap();
    for (v, nbrs) in ball.adjacency.iter().enumerate() {
        for &(w, mv) in nbrs {
            if let Move::Flip { index } = mv {
                assert_eq!(ball.vertices[v].pairs()[index].depth, 0);
                assert_ne!(ball.vertices[v].base(), ball.vertices[w as usize].base());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn farey_moves_are_reversible(p in -40i64..40, q in 1i64..40, tw in -20i64..20, d in 0u32..5) {
        prop_assume!(farey::gcd(p, q) == 1);
        let model = FareyModel::new(SurfaceKind::S04).unwrap();
        let base = s(p, q);
        let t = model.transversal_with_twist(&[base], 0, tw).unwrap();
        let m = farey_marking(base, t, d);
        for (mv, w) in elementary_neighbors(&model, &m, &Caps::default()).unwrap() {
            let back = elementary_neighbors(&model, &w, &Caps::default()).unwrap();
            prop_assert!(back.iter().any(|(_, x)| *x == m), "{:?} not reversible", mv);
            prop_assert!(validate(&model, &MarkingRecord::from(&w)).is_empty());
        }
    }
}
