//! The eleven acceptance criteria, one test each. Every test prints a single
//! pass/fail line; run with `--nocapture` to see them.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use amc_core::baseline::{plan, Baselines, REAL_TOLERANCE};
use amc_core::experiments::{self, ball_pairs};
use amc_core::fixtures::{sphere_base, AnyBall, BallSpec};
use amc_core::horoball::{self, HoroballVertex, Window};
use amc_core::io::{self, SequenceFile};
use amc_core::markings::{from_record, BallGraph, FareyModel, SphereModel, SurfaceModel};
use amc_core::regions::{classify_sequence, Verdict};
use amc_core::SurfaceKind;

fn frozen() -> Baselines {
    Baselines::load(&Baselines::default_path()).expect("frozen baselines")
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REAL_TOLERANCE * a.abs().max(b.abs()).max(1.0)
}

fn report(n: u32, name: &str, start: Instant, limit: Duration, ok: bool, detail: String) {
    let elapsed = start.elapsed();
    let pass = ok && elapsed <= limit;
    println!(
        "criterion {n:>2} {name}: {} ({detail}; {:.1}s of {}s)",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    assert!(pass, "criterion {n} failed: {detail}");
}

#[test]
fn c01_horoball_edge_rule() {
    let start = Instant::now();
    let (x_max, m_max) = (256i64, 8u32);
    let window = Window { x_lo: -2 * x_max, x_hi: 2 * x_max };
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for m in 0..=m_max {
        for x in -x_max..=x_max {
            let v = HoroballVertex::new(x, m);
            let got = horoball::neighbors(v, window).unwrap();
            // Oracle: scan every vertex of the window against the definition.
            let mut want = Vec::new();
            for k in 0..=m_max + 1 {
                for y in window.x_lo..=window.x_hi {
                    let same_level = k == m && y != x && (y - x).abs() <= 1i64 << m;
                    let vertical = y == x && k.abs_diff(m) == 1;
                    if same_level || vertical {
                        want.push(HoroballVertex::new(y, k));
                    }
                }
            }
            want.sort();
            checked += 1;
            if got != want {
                bad.push(v);
            }
        }
    }
    report(
        1,
        "horoball edge rule",
        start,
        Duration::from_secs(10),
        bad.is_empty(),
        format!("{checked} vertices, {} mismatches", bad.len()),
    );
}

/// Distances from `(0, m_src)` by plain breadth-first search on a box wide
/// enough to contain every geodesic to the targets.
fn bfs_from_level(m_src: u32, x_lo: i64, x_hi: i64, m_top: u32) -> Vec<Vec<u32>> {
    let width = (x_hi - x_lo + 1) as usize;
    let mut dist = vec![vec![u32::MAX; width]; m_top as usize + 1];
    let idx = |x: i64| (x - x_lo) as usize;
    dist[m_src as usize][idx(0)] = 0;
    let mut queue = VecDeque::from([(0i64, m_src)]);
    while let Some((x, m)) = queue.pop_front() {
        let d = dist[m as usize][idx(x)];
        let reach = 1i64 << m;
        let mut step = |y: i64, k: u32, dist: &mut Vec<Vec<u32>>| {
            if y >= x_lo && y <= x_hi && k <= m_top && dist[k as usize][idx(y)] == u32::MAX {
                dist[k as usize][idx(y)] = d + 1;
                queue.push_back((y, k));
            }
        };
        for y in (x - reach).max(x_lo)..=(x + reach).min(x_hi) {
            if y != x {
                step(y, m, &mut dist);
            }
        }
        step(x, m + 1, &mut dist);
        if m > 0 {
            step(x, m - 1, &mut dist);
        }
    }
    dist
}

#[test]
fn c02_horoball_estimate() {
    let start = Instant::now();
    let c_est = frozen().horoball.c_est;
    let (max_dx, max_m) = (plan::EST_MAX_DX, plan::EST_MAX_M);
    let (mut lo, mut hi, mut pairs) = (i64::MAX, i64::MIN, 0usize);
    for m_src in 0..=max_m {
        let dist = bfs_from_level(m_src, -max_dx, 2 * max_dx, 13);
        // Translation and reflection invariance reduce to sources at x = 0, dx >= 0.
        for m in 0..=max_m {
            for dx in 0..=max_dx {
                let exact = i64::from(dist[m as usize][(dx + max_dx) as usize]);
                let est = horoball::dist_estimate(HoroballVertex::new(0, m_src), HoroballVertex::new(dx, m)) as i64;
                lo = lo.min(est - exact);
                hi = hi.max(est - exact);
                pairs += 1;
            }
        }
    }
    let ok = lo >= 0 && hi <= c_est;
    report(
        2,
        "horoball estimate",
        start,
        Duration::from_secs(120),
        ok,
        format!("{pairs} pairs, gap in [{lo}, {hi}], C_est = {c_est}"),
    );
}

#[test]
fn c03_horodisk_quasi_isometry() {
    let start = Instant::now();
    let f = frozen().horoball;
    let fit = |n| {
        horoball::hyp_compare(&horoball::sample_pairs(plan::HYP_SEED, n, plan::HYP_MAX_X, plan::HYP_MAX_M)).unwrap()
    };
    let (a, b) = (fit(plan::HYP_PAIRS), fit(2 * plan::HYP_PAIRS));
    let stable =
        (b.k_mult - a.k_mult).abs() <= 0.1 * a.k_mult && (b.c_add - a.c_add).abs() <= 0.1 * a.c_add.abs().max(1.0);
    let ok = a.k_mult <= 3.0 && stable && close(a.k_mult, f.hyp_k) && close(a.c_add, f.hyp_c);
    report(
        3,
        "horodisk quasi-isometry",
        start,
        Duration::from_secs(60),
        ok,
        format!("K = {:.6}, C = {:.6}; doubled K = {:.6}, C = {:.6}", a.k_mult, a.c_add, b.k_mult, b.c_add),
    );
}

#[test]
fn c04_twist_coordinate() {
    let start = Instant::now();
    let r = experiments::twist_qi_sweep(plan::TWIST_SEED, plan::TWIST_PAIRS, plan::TWIST_MAX_ENTRY).unwrap();
    let ok = r.samples == plan::TWIST_PAIRS && r.min_excess >= -2 && r.max_excess <= 2;
    report(
        4,
        "twist coordinate",
        start,
        Duration::from_secs(10),
        ok,
        format!("{} pairs, model - |dphi| in [{}, {}]", r.samples, r.min_excess, r.max_excess),
    );
}

/// Pairs outside `d/K - C <= F <= K d + C`, with the pair count.
fn formula_violations<M: SurfaceModel>(
    model: &M,
    ball: &BallGraph<M::Curve>,
    k_min: i64,
    k: f64,
    c: f64,
) -> (usize, usize) {
    let pairs = ball_pairs(model, ball, k_min + 1, k_min).unwrap();
    let slack = 1e-9;
    let bad = pairs
        .iter()
        .filter(|p| {
            let (d, f) = (f64::from(p.dist), p.augmented_total as f64);
            f / k - c > d + slack || d > k * f + c + slack
        })
        .count();
    (bad, pairs.len())
}

#[test]
fn c05_distance_formula() {
    let start = Instant::now();
    let frozen = frozen().distance_formula;
    let mut ok = frozen.len() == 3;
    let mut details = Vec::new();
    for f in &frozen {
        let ball = AnyBall::generate(&f.ball, plan::BUDGET_VERTICES).unwrap();
        let (bad, pairs) = match &ball {
            AnyBall::Farey(m, g) => formula_violations(m, g, f.k_min, f.k_qi, f.c_qi),
            AnyBall::Sphere(m, g) => formula_violations(m, g, f.k_min, f.k_qi, f.c_qi),
        };
        ok &= bad == 0 && pairs == f.pairs && ball.len() == f.vertices && ball.edge_count() == f.edges;
        details.push(format!(
            "{} r{}: {pairs} pairs, {bad} outside ({}, {})",
            f.ball.surface, f.ball.radius, f.k_qi, f.c_qi
        ));
    }
    report(5, "distance formula", start, Duration::from_secs(30 * 60), ok, details.join("; "));
}

fn sphere_ball(model: &SphereModel) -> BallGraph<amc_core::curves::CurveSystem> {
    let spec = BallSpec::standard()[2];
    BallGraph::generate(model, &sphere_base(model).unwrap(), spec.radius, &spec.caps(plan::BUDGET_VERTICES)).unwrap()
}

#[test]
fn c06_behrstock_inequality() {
    let start = Instant::now();
    let m1 = frozen().behrstock;
    let model = SphereModel::new().unwrap();
    let ball = sphere_ball(&model);
    let a = experiments::behrstock_sweep(&model, &ball, plan::BEHRSTOCK_SEED, plan::BEHRSTOCK_SAMPLES).unwrap();
    let b = experiments::behrstock_sweep(&model, &ball, plan::BEHRSTOCK_SEED, 10 * plan::BEHRSTOCK_SAMPLES).unwrap();
    let ok = a.max == m1 && b.max <= a.max;
    report(
        6,
        "Behrstock inequality",
        start,
        Duration::from_secs(300),
        ok,
        format!("M1 = {} over {} triples, {} over {}; frozen {m1}", a.max, a.samples, b.max, b.samples),
    );
}

#[test]
fn c07_bgit() {
    let start = Instant::now();
    let (twist, horo) = frozen().bgit;
    let model = FareyModel::new(SurfaceKind::S11).unwrap();
    let r = experiments::bgit_sweep(&model, plan::BGIT_SEED, plan::BGIT_SAMPLES, plan::BGIT_MAX_ENTRY).unwrap();
    let ok = r.samples == plan::BGIT_SAMPLES && r.max_twist_diam <= twist && r.max_horoball_diam <= horo;
    report(
        7,
        "bounded geodesic image",
        start,
        Duration::from_secs(60),
        ok,
        format!(
            "{} geodesics up to length {}, diameters ({}, {}) vs frozen ({twist}, {horo})",
            r.samples, r.max_length, r.max_twist_diam, r.max_horoball_diam
        ),
    );
}

#[test]
fn c08_product_regions() {
    let start = Instant::now();
    let frozen = frozen().regions;
    let measured = amc_core::baseline::measure_regions().unwrap();
    let ok = measured.len() == frozen.len()
        && measured.iter().zip(&frozen).all(|(a, b)| {
            a.delta == b.delta
                && a.members == b.members
                && a.pairs == b.pairs
                && a.k_qi <= b.k_qi + REAL_TOLERANCE
                && a.c_qi <= b.c_qi + REAL_TOLERANCE
                && a.cross_max <= b.cross_max
        });
    let details: Vec<String> = measured
        .iter()
        .map(|r| {
            format!(
                "{} {:?}: {} pairs, ({}, {}), cross {}",
                r.ball.surface, r.delta, r.pairs, r.k_qi, r.c_qi, r.cross_max
            )
        })
        .collect();
    report(8, "product regions", start, Duration::from_secs(600), ok, details.join("; "));
}

#[test]
fn c09_rank_orthant() {
    let start = Instant::now();
    let model = SphereModel::new().unwrap();
    let r = experiments::orthant_check(&model, plan::ORTHANT_MAX_DEPTH, plan::ORTHANT_MAX_TWIST).unwrap();
    let ok = r.failures.is_empty() && r.pairs == 256;
    report(
        9,
        "rank orthant",
        start,
        Duration::from_secs(600),
        ok,
        format!("{} pairs, {} violations", r.pairs, r.failures.len()),
    );
}

#[test]
fn c10_thickness_network() {
    let start = Instant::now();
    let model = SphereModel::new().unwrap();
    let r =
        experiments::thickness_sweep(&model, plan::THICK_SEED, plan::THICK_PAIRS, plan::THICK_R, plan::THICK_WORD_LEN)
            .unwrap();
    let ball = sphere_ball(&model);
    let (tests, mismatches) = experiments::region_intersection_check(&model, &ball, 40).unwrap();
    let ok = r.pairs == 100 && r.failures == 0 && r.min_witness >= 50 && mismatches == 0;
    report(
        10,
        "thickness network",
        start,
        Duration::from_secs(300),
        ok,
        format!(
            "{} chains, {} failed, witness >= {}; {tests} region identities, {mismatches} mismatches",
            r.pairs, r.failures, r.min_witness
        ),
    );
}

#[test]
fn c11_thick_thin_classifier() {
    let start = Instant::now();
    let model = SphereModel::new().unwrap();
    let classify = |name: &str, tau: f64| {
        let file: SequenceFile = io::read_json(&io::fixture_dir().join(name)).unwrap();
        let ms = file.records().unwrap().iter().map(|r| from_record(&model, r).unwrap()).collect::<Vec<_>>();
        let s = file.scale.build(ms.len()).unwrap();
        let c = classify_sequence(&model, &ms, &s, tau).unwrap();
        (c.verdict, c.a)
    };
    let cases = [
        ("seq_constant.json", 0.5, (Verdict::Thick, 0)),
        ("seq_quadratic.json", 0.5, (Verdict::Thin, 1)),
        ("seq_two_tracks.json", 0.5, (Verdict::Thin, 2)),
        ("seq_two_tracks.json", 2.0, (Verdict::Thick, 0)),
    ];
    let mut ok = true;
    let mut details = Vec::new();
    for (name, tau, want) in cases {
        let got = classify(name, tau);
        ok &= got == want && classify(name, tau) == got;
        details.push(format!("{name} tau {tau}: {:?} a = {}", got.0, got.1));
    }
    report(11, "thick/thin classifier", start, Duration::from_secs(1), ok, details.join("; "));
}
