use amc_core::coarse::{
    active_segment, behrstock_min, bgit_check, dist_to_curves, distance_formula, endpoint_monotonicity, proj_dist,
    threshold, Variant,
};
use amc_core::farey::{self, Slope};
use amc_core::fixtures::{farey_base, sphere_base};
use amc_core::horoball::{self, HoroballVertex};
use amc_core::markings::{
    apply_move, AugmentedMarking, BallGraph, Caps, FareyModel, MarkedCurve, Move, SphereModel, SurfaceModel,
};
use amc_core::{Error, Subsurface, SurfaceKind};
use proptest::prelude::*;

fn s11() -> FareyModel {
    FareyModel::new(SurfaceKind::S11).unwrap()
}

fn marking(model: &FareyModel, base: Slope, twist: i64, depth: u32) -> AugmentedMarking<Slope> {
    let transversal = model.transversal_with_twist(&[base], 0, twist).unwrap();
    AugmentedMarking::from_pairs(vec![MarkedCurve { base, transversal, depth }]).unwrap()
}

fn domains<M: SurfaceModel>(
    model: &M,
    a: &AugmentedMarking<M::Curve>,
    b: &AugmentedMarking<M::Curve>,
) -> Vec<Subsurface<M::Curve>> {
    let mut out = model.domains(&a.base());
    out.extend(model.domains(&b.base()));
    out.sort();
    out.dedup();
    out
}

#[test]
fn threshold_keeps_only_large_values() {
    assert_eq!(threshold(5, 4), 5);
    assert_eq!(threshold(4, 4), 0);
    assert_eq!(threshold(0, -1), 0);
    assert_eq!(threshold(1, 0), 1);
}

#[test]
fn projection_distances_on_the_punctured_torus() {
    let model = s11();
    let m = farey_base();
    let core = Subsurface::Annulus(farey::INFINITY);
    assert!(proj_dist(&model, &m, &m, &Subsurface::Whole, Variant::Marking).unwrap() <= 1);
    for k in -9..=9 {
        let t = apply_move(&model, &m, Move::Twist { index: 0, power: k }).unwrap();
        assert_eq!(proj_dist(&model, &m, &t, &core, Variant::Marking).unwrap(), k.abs());
        // Oracle: breadth-first distance in the horoball.
        let exact = horoball::dist_exact(HoroballVertex { x: 0, m: 0 }, HoroballVertex { x: k, m: 0 }).unwrap();
        assert_eq!(proj_dist(&model, &m, &t, &core, Variant::Augmented).unwrap(), exact as i64);
    }
    assert_eq!(dist_to_curves(&model, &m, &core, &[]), Err(Error::EmptyProjection));
}

#[test]
fn formula_vanishes_on_the_diagonal() {
    let model = s11();
    let m = marking(&model, Slope::new(3, 7).unwrap(), 4, 2);
    let doms = domains(&model, &m, &m);
    for k in 1..5 {
        let f = distance_formula(&model, &m, &m, k, 0, &doms).unwrap();
        assert_eq!(f.marking.total, 0);
        assert_eq!(f.augmented.total, 0);
    }
    assert_eq!(distance_formula(&model, &m, &m, 0, 0, &doms), Err(Error::ThresholdTooSmall { k: 0, min: 0 }));
}

#[test]
fn vertical_moves_only_change_the_annular_term() {
    let model = s11();
    for (d1, d2) in [(0u32, 5u32), (2, 9), (7, 3)] {
        let a = marking(&model, farey::INFINITY, 0, d1);
        let b = marking(&model, farey::INFINITY, 0, d2);
        let doms = domains(&model, &a, &b);
        let delta = i64::from(d1.abs_diff(d2));
        for k in 1..6 {
            let f = distance_formula(&model, &a, &b, k, 0, &doms).unwrap();
            assert_eq!(f.marking.total, 0);
            assert_eq!(f.augmented.total, threshold(delta, k));
        }
    }
}

#[test]
fn behrstock_minimum_is_symmetric_and_needs_interlocking() {
    let model = SphereModel::new().unwrap();
    let eng = model.atlas().engine();
    let (r1, r2, r3) = (eng.round_curve(1).clone(), eng.round_curve(2).clone(), eng.round_curve(3).clone());
    let ball =
        BallGraph::generate(&model, &sphere_base(&model).unwrap(), 2, &Caps { max_twist: Some(3), ..Caps::default() })
            .unwrap();
    let pairs = [
        (Subsurface::Annulus(r1.clone()), Subsurface::Annulus(r2.clone())),
        (Subsurface::Annulus(r2.clone()), Subsurface::Piece { boundary: vec![r1.clone()], component: 0 }),
    ];
    for m in &ball.vertices {
        for (y, z) in &pairs {
            match (behrstock_min(&model, m, y, z), behrstock_min(&model, m, z, y)) {
                (Ok(a), Ok(b)) => assert_eq!(a, b),
                (Err(a), Err(b)) => assert_eq!(a, b),
                other => panic!("asymmetric {other:?}"),
            }
        }
    }
    let m = &ball.vertices[ball.center as usize];
    assert_eq!(
        behrstock_min(&model, m, &Subsurface::Annulus(r1), &Subsurface::Annulus(r3)),
        Err(Error::NotInterlocking)
    );
}

#[test]
fn geodesic_images() {
    let model = s11();
    let core = farey::INFINITY;
    let single = bgit_check(&model, &[Slope::new(1, 2).unwrap()], &core).unwrap();
    assert_eq!(single.twist_diam, 0);
    assert_eq!(single.horoball_diam, 0);
    assert!(matches!(bgit_check(&model, &[farey::ZERO], &core), Err(Error::Precondition(_))));
    assert!(matches!(bgit_check(&model, &[], &core), Err(Error::Precondition(_))));
    let far = [Slope::new(1, 2).unwrap(), Slope::new(1, 3).unwrap()];
    assert!(bgit_check(&model, &far, &core).is_ok());
}

#[test]
fn active_segments_of_a_flip_path() {
    let model = s11();
    let m0 = farey_base();
    let m1 = apply_move(&model, &m0, Move::Twist { index: 0, power: 1 }).unwrap();
    let m2 = apply_move(&model, &m1, Move::Flip { index: 0 }).unwrap();
    let m3 = apply_move(&model, &m2, Move::Flip { index: 0 }).unwrap();
    let seg = active_segment(&[m0, m1, m2, m3], &Subsurface::Annulus(farey::INFINITY));
    assert_eq!(seg.indices, vec![0, 1, 3]);
    assert!(!seg.connected);
}

#[test]
fn twist_paths_are_monotone_in_the_horoball() {
    let model = s11();
    let mut path = vec![farey_base()];
    for _ in 0..12 {
        let next = apply_move(&model, path.last().unwrap(), Move::Twist { index: 0, power: 1 }).unwrap();
        path.push(next);
    }
    assert_eq!(endpoint_monotonicity(&model, &path, &Subsurface::Annulus(farey::INFINITY)).unwrap(), 0);
}

proptest! {
    #[test]
    fn formula_totals_do_not_grow_with_the_threshold(
        p1 in -30i64..30, q1 in 0i64..30, t1 in -30i64..30, d1 in 0u32..6,
        p2 in -30i64..30, q2 in 0i64..30, t2 in -30i64..30, d2 in 0u32..6,
    ) {
        let (Ok(b1), Ok(b2)) = (Slope::new(p1, q1), Slope::new(p2, q2)) else { return Ok(()) };
        let model = FareyModel::new(SurfaceKind::S04).unwrap();
        let (a, b) = (marking(&model, b1, t1, d1), marking(&model, b2, t2, d2));
        let doms = domains(&model, &a, &b);
        let mut prev = (i64::MAX, i64::MAX);
        for k in 1..8 {
            let f = distance_formula(&model, &a, &b, k, 0, &doms).unwrap();
            prop_assert!(f.marking.total <= prev.0 && f.augmented.total <= prev.1);
            prop_assert!(f.marking.contributions.iter().all(|(_, v)| *v > k));
            prev = (f.marking.total, f.augmented.total);
        }
    }
}
