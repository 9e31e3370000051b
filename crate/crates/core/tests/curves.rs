use amc_core::curves::atlas::{Atlas, CurveProjection};
use amc_core::curves::chart::FareyChart;
use amc_core::curves::chords::round_intersection;
use amc_core::curves::word::{self, HalfTwist};
use amc_core::curves::{CurveSystem, SphereCurves};
use amc_core::farey::{self, Slope};
use amc_core::fixtures::random_sphere_curve;
use amc_core::{Subsurface, SurfaceKind};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn engine() -> &'static SphereCurves {
    SphereCurves::for_kind(SurfaceKind::S05).unwrap()
}

fn curve(seed: u64, len: usize) -> CurveSystem {
    random_sphere_curve(engine(), &mut ChaCha8Rng::seed_from_u64(seed), len)
}

/// Coordinates of a word's curve, read off its crossing sequence.
fn word_coords(eng: &SphereCurves, letters: &[i8]) -> Vec<i64> {
    let seq = word::crossing_sequence(&word::cyclic_reduce(letters));
    word::coords_from_sequence(eng.triangulation(), &seq)
}

#[test]
fn round_curves_are_valid_and_meet_neighbors_twice() {
    for kind in [SurfaceKind::S04, SurfaceKind::S05] {
        let eng = SphereCurves::for_kind(kind).unwrap();
        let m = eng.finite_punctures() + 1;
        for j in 0..m {
            eng.validate(eng.round_curve(j)).unwrap();
            for k in 0..m {
                // Round curves enclose consecutive puncture pairs; neighbors share one puncture.
                let want = if j != k && ((j + 1) % m == k || (k + 1) % m == j) { 2 } else { 0 };
                assert_eq!(eng.intersection(eng.round_curve(j), eng.round_curve(k)).unwrap(), want, "{kind} {j} {k}");
            }
        }
    }
}

#[test]
fn flip_generators_match_the_word_action_on_round_curves() {
    for kind in [SurfaceKind::S04, SurfaceKind::S05] {
        let eng = SphereCurves::for_kind(kind).unwrap();
        let n = eng.finite_punctures();
        for j in 0..=n {
            let letters = word::round_curve_word(n, j);
            assert_eq!(eng.round_curve(j).coords(), word_coords(eng, &letters).as_slice());
            for g in HalfTwist::all(n) {
                let image = word::apply_generator(n, g, &letters);
                assert_eq!(eng.apply(g, eng.round_curve(j)).coords(), word_coords(eng, &image).as_slice(), "{g:?} {j}");
            }
        }
    }
}

#[test]
fn chord_diagrams_agree_with_crossing_sequences() {
    let eng = engine();
    let n = eng.finite_punctures();
    for j in 0..=n {
        for g in HalfTwist::all(n) {
            let letters = word::apply_generator(n, g, &word::round_curve_word(n, j));
            let seq = word::crossing_sequence(&word::cyclic_reduce(&letters));
            let w = word::coords_from_sequence(eng.triangulation(), &seq);
            for k in 0..=n {
                assert_eq!(
                    round_intersection(eng.triangulation(), &w, k),
                    word::round_intersection_from_sequence(n, &seq, k),
                    "{g:?} {j} {k}"
                );
            }
        }
    }
}

#[test]
fn validation_rejects_bad_coordinates() {
    let eng = engine();
    let zero = CurveSystem::from_coords(vec![0; eng.round_curve(0).coords().len()]);
    assert!(eng.validate(&zero).is_err());
    let twice = CurveSystem::from_coords(eng.round_curve(1).coords().iter().map(|x| 2 * x).collect());
    assert!(eng.validate(&twice).is_err());
    let mut broken = eng.round_curve(1).coords().to_vec();
    broken[0] += 1;
    assert!(eng.validate(&CurveSystem::from_coords(broken)).is_err());
}

#[test]
fn chart_slopes_meet_twice_their_determinant() {
    for kind in [SurfaceKind::S04, SurfaceKind::S05] {
        let chart = FareyChart::for_kind(kind).unwrap();
        let eng = chart.engine();
        let slopes: Vec<Slope> = [(1, 0), (0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (3, 5), (-7, 4), (5, 13)]
            .iter()
            .map(|&(p, q)| Slope::new(p, q).unwrap())
            .collect();
        for &r in &slopes {
            let cr = chart.curve(r);
            eng.validate(&cr).unwrap();
            assert_eq!(chart.slope_of(&cr).unwrap(), r);
            assert_eq!(chart.support(&cr).unwrap(), vec![r]);
            for &s in &slopes {
                let i = eng.intersection(&cr, &chart.curve(s)).unwrap();
                assert_eq!(i as i64, 2 * farey::det(r, s).abs(), "{kind} {r} {s}");
            }
        }
    }
}

#[test]
fn projection_examples() {
    let atlas = Atlas::for_kind(SurfaceKind::S05).unwrap();
    let eng = atlas.engine();
    let (r1, r2, r3) = (eng.round_curve(1), eng.round_curve(2), eng.round_curve(3));
    // r3 lies in the piece cut off by r1 and is disjoint from it.
    let piece = Subsurface::Piece { boundary: vec![r1.clone()], component: 0 };
    assert_eq!(atlas.project(r3, &piece).unwrap(), CurveProjection::Simplex(vec![r3.clone()]));
    assert_eq!(atlas.project(r3, &Subsurface::Annulus(r1.clone())).unwrap(), CurveProjection::Empty);
    assert!(matches!(atlas.project(r2, &Subsurface::Annulus(r1.clone())).unwrap(), CurveProjection::Twist(_)));
    assert_eq!(atlas.project(r1, &piece).unwrap(), CurveProjection::Empty);
    assert_eq!(
        atlas.project(r1, &Subsurface::Piece { boundary: vec![r1.clone()], component: 1 }),
        Err(amc_core::Error::PantsTarget)
    );
}

#[test]
fn half_twist_about_a_core_shifts_its_twist_by_one() {
    let atlas = Atlas::for_kind(SurfaceKind::S05).unwrap();
    let eng = atlas.engine();
    let core = eng.round_curve(2).clone();
    let x = eng.round_curve(1).clone();
    let t0 = atlas.twist(&core, &x).unwrap();
    for k in -6..=6 {
        let y = eng.half_twist(&x, &core, k).unwrap();
        assert_eq!(atlas.twist(&core, &y).unwrap(), t0 + k);
    }
    assert_eq!(atlas.annulus(&core).unwrap().twist(&atlas.annulus(&core).unwrap().reference_transversal()).unwrap(), 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn intersection_is_symmetric_and_invariant(s1 in any::<u64>(), s2 in any::<u64>(), s3 in any::<u64>()) {
        let eng = engine();
        let (a, b) = (curve(s1, 6), curve(s2, 6));
        let i = eng.intersection(&a, &b).unwrap();
        prop_assert_eq!(i, eng.intersection(&b, &a).unwrap());
        prop_assert_eq!(i % 2, 0);
        let w: Vec<HalfTwist> = {
            let mut rng = ChaCha8Rng::seed_from_u64(s3);
            (0..4).map(|_| HalfTwist::new(rand::Rng::gen_range(&mut rng, 1..=4), rand::Rng::gen_bool(&mut rng, 0.5))).collect()
        };
        prop_assert_eq!(eng.intersection(&eng.apply_word(&w, &a), &eng.apply_word(&w, &b)).unwrap(), i);
    }

    #[test]
    fn reductions_rebuild_their_curve(s in any::<u64>()) {
        let eng = engine();
        let c = curve(s, 8);
        eng.validate(&c).unwrap();
        let w = eng.reduction(&c).unwrap();
        prop_assert_eq!(eng.apply_word(&w, eng.standard_curve()), c);
    }

    #[test]
    fn dehn_twists_obey_the_intersection_law(s1 in any::<u64>(), s2 in any::<u64>(), k in -5i64..=5) {
        let eng = engine();
        let (a, b) = (curve(s1, 5), curve(s2, 5));
        let i = eng.intersection(&a, &b).unwrap();
        let t = eng.dehn_twist(&a, &b, k).unwrap();
        prop_assert_eq!(eng.intersection(&t, &a).unwrap(), k.unsigned_abs() * i * i);
        prop_assert_eq!(eng.dehn_twist(&t, &b, -k).unwrap(), a);
    }

    #[test]
    fn piece_projection_is_lipschitz(s1 in any::<u64>(), j in 0usize..5) {
        let atlas = Atlas::for_kind(SurfaceKind::S05).unwrap();
        let eng = atlas.engine();
        let boundary = eng.round_curve(j).clone();
        let a = curve(s1, 5);
        // A curve disjoint from a: a's image of another round curve.
        let w = eng.reduction(&a).unwrap();
        let b = eng.from_round(3, &w);
        prop_assume!(a != boundary && b != boundary);
        let (pa, pb) = (atlas.support(&boundary, &a).unwrap(), atlas.support(&boundary, &b).unwrap());
        prop_assume!(!pa.is_empty() && !pb.is_empty());
        let mut diam = 0;
        for x in pa.iter().chain(&pb) {
            for y in pa.iter().chain(&pb) {
                diam = diam.max(farey::cc_dist(*x, *y));
            }
        }
        prop_assert!(diam <= 4, "diameter {}", diam);
    }

    #[test]
    fn boundary_twists_fix_piece_projections(s in any::<u64>(), k in -4i64..=4) {
        let atlas = Atlas::for_kind(SurfaceKind::S05).unwrap();
        let eng = atlas.engine();
        let boundary = eng.round_curve(1).clone();
        let a = curve(s, 5);
        let t = eng.half_twist(&a, &boundary, k).unwrap();
        prop_assert_eq!(atlas.support(&boundary, &a).unwrap(), atlas.support(&boundary, &t).unwrap());
    }
}
