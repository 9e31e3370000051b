//! Seeded sweeps behind the acceptance criteria and the CLI.

use std::collections::HashMap;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coarse::{
    behrstock_min, bgit_check, dist_to_curves, distance_formula, horoball_dist, FormulaTotals, GeodesicImage,
    ModelOracle,
};
use crate::curves::CurveSystem;
use crate::error::{Error, Result};
use crate::farey::{self, Slope};
use crate::fit::{fit_qi, QiFit};
use crate::fixtures::{random_slope, random_sphere_curve, sphere_base};
use crate::horoball;
use crate::markings::project::{project_augmented, Projected};
use crate::markings::{AugmentedMarking, BallGraph, Caps, FareyModel, SphereModel, SurfaceModel};
use crate::regions::{
    crosses_delta, depth_lower_bound, factor_sum, in_q, in_q_unchecked, orthant_point, theta, thickness_chain,
    ThicknessChain,
};
use crate::surface::{interlocks, Subsurface, SurfaceKind};

/// One compared pair: in-ball distance and both formula totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairSample {
    pub u: u32,
    pub v: u32,
    pub dist: u32,
    pub marking_total: i64,
    pub augmented_total: i64,
}

/// Distance-formula comparison over every exact pair of a ball.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QiReport {
    pub vertices: usize,
    pub edges: usize,
    pub k: i64,
    pub pairs: usize,
    pub fit: QiFit,
    pub worst: Option<PairSample>,
}

/// Interned domains with the domains of each vertex's base.
struct DomainTable<C> {
    domains: Vec<Subsurface<C>>,
    own: Vec<Vec<u32>>,
}

impl<C: Clone + Ord + Hash> DomainTable<C> {
    fn build<M: SurfaceModel<Curve = C>>(model: &M, ball: &BallGraph<C>) -> Self {
        let mut ids: HashMap<Subsurface<C>, u32> = HashMap::new();
        let mut domains = Vec::new();
        let own = ball
            .vertices
            .iter()
            .map(|m| {
                let mut v: Vec<u32> = model
                    .domains(&m.base())
                    .into_iter()
                    .map(|y| {
                        *ids.entry(y.clone()).or_insert_with(|| {
                            domains.push(y);
                            domains.len() as u32 - 1
                        })
                    })
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();
        DomainTable { domains, own }
    }
}

fn union_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let x = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) if x < y => {
                i += 1;
                x
            }
            (Some(&x), Some(&y)) if x > y => {
                j += 1;
                y
            }
            (Some(&x), Some(_)) => {
                i += 1;
                j += 1;
                x
            }
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(x);
    }
    out
}

/// Every pair whose in-ball distance is exact (depths summing to at most the
/// radius), each evaluated on the domains harvested along its BFS path.
pub fn ball_pairs<M: SurfaceModel>(
    model: &M,
    ball: &BallGraph<M::Curve>,
    k: i64,
    k_min: i64,
) -> Result<Vec<PairSample>> {
    let table = DomainTable::build(model, ball);
    let half = ball.radius / 2;
    let sources: Vec<u32> = (0..ball.len() as u32).filter(|&u| ball.depth[u as usize] <= half).collect();
    let per_source: Vec<Vec<PairSample>> = sources
        .par_iter()
        .map(|&u| {
            let n = ball.len();
            let mut dist = vec![u32::MAX; n];
            let mut harvest: Vec<Vec<u32>> = vec![Vec::new(); n];
            dist[u as usize] = 0;
            harvest[u as usize] = table.own[u as usize].clone();
            let mut queue = std::collections::VecDeque::from([u]);
            let mut out = Vec::new();
            let du = ball.depth[u as usize];
            while let Some(v) = queue.pop_front() {
                let dv = ball.depth[v as usize];
                // Each unordered pair once: sources take partners after them
                // or partners that are not sources.
                if du + dv <= ball.radius && (v > u || dv > half) {
                    let domains: Vec<Subsurface<M::Curve>> =
                        harvest[v as usize].iter().map(|&i| table.domains[i as usize].clone()).collect();
                    let FormulaTotals { marking, augmented } = distance_formula(
                        model,
                        &ball.vertices[u as usize],
                        &ball.vertices[v as usize],
                        k,
                        k_min,
                        &domains,
                    )?;
                    out.push(PairSample {
                        u,
                        v,
                        dist: dist[v as usize],
                        marking_total: marking.total,
                        augmented_total: augmented.total,
                    });
                }
                for &(w, _) in &ball.adjacency[v as usize] {
                    if dist[w as usize] == u32::MAX {
                        dist[w as usize] = dist[v as usize] + 1;
                        harvest[w as usize] = union_sorted(&harvest[v as usize], &table.own[w as usize]);
                        queue.push_back(w);
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(per_source.into_iter().flatten().filter(|p| p.u != p.v).collect())
}

/// Fits both-way constants between in-ball distance and the AM formula.
pub fn qi_report<M: SurfaceModel>(model: &M, ball: &BallGraph<M::Curve>, k: i64, k_min: i64) -> Result<QiReport> {
    let pairs = ball_pairs(model, ball, k, k_min)?;
    let samples: Vec<(f64, f64)> = pairs.iter().map(|p| (f64::from(p.dist), p.augmented_total as f64)).collect();
    let fit = fit_qi(&samples);
    Ok(QiReport {
        vertices: ball.len(),
        edges: ball.edge_count(),
        k,
        pairs: pairs.len(),
        fit,
        worst: fit.worst.map(|i| pairs[i]),
    })
}

/// Fits at each threshold in `1..=k_max`.
pub fn threshold_sweep<M: SurfaceModel>(model: &M, ball: &BallGraph<M::Curve>, k_max: i64) -> Result<Vec<QiReport>> {
    (1..=k_max).map(|k| qi_report(model, ball, k, 0)).collect()
}

/// `K'`: one below the first threshold whose fit agrees with the next one.
/// `None` when the fit never repeats within the sweep.
pub fn minimal_threshold(reports: &[QiReport]) -> Option<i64> {
    reports.windows(2).find(|w| w[0].fit.k == w[1].fit.k && w[0].fit.c == w[1].fit.c).map(|w| w[0].k - 1)
}

/// Maximum of `behrstock_min` over seeded triples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BehrstockReport {
    pub seed: u64,
    pub samples: usize,
    pub max: i64,
    /// `histogram[v]` counts triples whose minimum is `v`.
    pub histogram: Vec<usize>,
}

/// One sampled triple and its minimum.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BehrstockSample {
    pub vertex: u32,
    pub y: Subsurface<CurveSystem>,
    pub z: Subsurface<CurveSystem>,
    pub min: i64,
}

/// Samples `(m, y, z)` with `m` a ball vertex and `y`, `z` interlocking
/// proper domains harvested from the ball.
pub fn behrstock_samples(
    model: &SphereModel,
    ball: &BallGraph<CurveSystem>,
    seed: u64,
    samples: usize,
) -> Result<Vec<BehrstockSample>> {
    let table = DomainTable::build(model, ball);
    let pool: Vec<&Subsurface<CurveSystem>> =
        table.domains.iter().filter(|y| !matches!(y, Subsurface::Whole)).collect();
    if pool.len() < 2 {
        return Err(Error::Degenerate("too few domains".into()));
    }
    let oracle = ModelOracle(model);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triples = Vec::with_capacity(samples);
    while triples.len() < samples {
        let m = rng.gen_range(0..ball.len()) as u32;
        let y = pool[rng.gen_range(0..pool.len())];
        let z = pool[rng.gen_range(0..pool.len())];
        if interlocks(&oracle, y, z) {
            triples.push((m, y, z));
        }
    }
    triples
        .par_iter()
        .map(|&(m, y, z)| {
            let min = behrstock_min(model, &ball.vertices[m as usize], y, z)?;
            Ok(BehrstockSample { vertex: m, y: y.clone(), z: z.clone(), min })
        })
        .collect()
}

pub fn behrstock_sweep(
    model: &SphereModel,
    ball: &BallGraph<CurveSystem>,
    seed: u64,
    samples: usize,
) -> Result<BehrstockReport> {
    Ok(summarize_behrstock(seed, &behrstock_samples(model, ball, seed, samples)?))
}

pub fn summarize_behrstock(seed: u64, rows: &[BehrstockSample]) -> BehrstockReport {
    let max = rows.iter().map(|r| r.min).max().unwrap_or(0);
    let mut histogram = vec![0; max as usize + 1];
    for r in rows {
        histogram[r.min as usize] += 1;
    }
    BehrstockReport { seed, samples: rows.len(), max, histogram }
}

/// Maximum projection diameters of seeded Farey geodesics avoiding the
/// star of a sampled core.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BgitReport {
    pub seed: u64,
    pub samples: usize,
    pub max_twist_diam: i64,
    pub max_horoball_diam: i64,
    pub max_length: usize,
}

/// One sampled geodesic, by its ends, with its core and projection diameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BgitSample {
    pub core: Slope,
    pub from: Slope,
    pub to: Slope,
    pub length: usize,
    pub image: GeodesicImage,
}

pub fn bgit_samples(model: &FareyModel, seed: u64, samples: usize, max_entry: i64) -> Result<Vec<BgitSample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(samples);
    while cases.len() < samples {
        let core = random_slope(&mut rng, max_entry);
        let (a, b) = (random_slope(&mut rng, max_entry), random_slope(&mut rng, max_entry));
        let path = farey::geodesic(a, b);
        if path.iter().all(|&g| farey::cc_dist(g, core) > 1) {
            cases.push((path, core));
        }
    }
    cases
        .par_iter()
        .map(|(path, core)| {
            Ok(BgitSample {
                core: *core,
                from: path[0],
                to: path[path.len() - 1],
                length: path.len(),
                image: bgit_check(model, path, core)?,
            })
        })
        .collect()
}

pub fn bgit_sweep(model: &FareyModel, seed: u64, samples: usize, max_entry: i64) -> Result<BgitReport> {
    Ok(summarize_bgit(seed, &bgit_samples(model, seed, samples, max_entry)?))
}

pub fn summarize_bgit(seed: u64, rows: &[BgitSample]) -> BgitReport {
    BgitReport {
        seed,
        samples: rows.len(),
        max_twist_diam: rows.iter().map(|r| r.image.twist_diam).max().unwrap_or(0),
        max_horoball_diam: rows.iter().map(|r| r.image.horoball_diam).max().unwrap_or(0),
        max_length: rows.iter().map(|r| r.length).max().unwrap_or(0),
    }
}

/// In-region comparison for one product region of a ball.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegionReport<C> {
    pub delta: Vec<C>,
    pub members: usize,
    pub pairs: usize,
    pub fit: QiFit,
    /// Largest `d_Y(m, delta)` over members and harvested `Y` crossing `delta`.
    pub cross_max: i64,
}

/// AM distance between two piece markings: the unthresholded formula over
/// the domains of both bases.
pub fn piece_distance(model: &FareyModel, a: &AugmentedMarking<Slope>, b: &AugmentedMarking<Slope>) -> Result<i64> {
    let mut domains = model.domains(&a.base());
    domains.extend(model.domains(&b.base()));
    domains.sort();
    domains.dedup();
    Ok(distance_formula(model, a, b, 0, -1, &domains)?.augmented.total)
}

/// Compares the component sum of `theta` with ball distance over exact
/// pairs inside `Q(delta)`, and bounds the cross terms.
pub fn region_report<M: SurfaceModel>(
    model: &M,
    ball: &BallGraph<M::Curve>,
    delta: &[M::Curve],
) -> Result<RegionReport<M::Curve>> {
    let piece_model = FareyModel::new(SurfaceKind::S04)?;
    let members: Vec<u32> =
        (0..ball.len() as u32).filter(|&u| in_q_unchecked(&ball.vertices[u as usize], delta)).collect();
    let thetas: Vec<_> =
        members.par_iter().map(|&u| theta(model, &ball.vertices[u as usize], delta)).collect::<Result<_>>()?;
    let samples: Vec<Vec<(f64, f64)>> = (0..members.len())
        .into_par_iter()
        .map(|i| {
            let dist = ball.bfs_from(members[i]);
            let mut out = Vec::new();
            for j in i + 1..members.len() {
                if !ball.distance_is_exact(members[i], members[j]) {
                    continue;
                }
                let sum = factor_sum(&thetas[i], &thetas[j], |p, q| piece_distance(&piece_model, p, q))?;
                out.push((f64::from(dist[members[j] as usize]), sum as f64));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let samples: Vec<(f64, f64)> = samples.into_iter().flatten().collect();
    let table = DomainTable::build(model, ball);
    let mut crossing = Vec::new();
    let member_domains: std::collections::BTreeSet<u32> =
        members.iter().flat_map(|&u| table.own[u as usize].iter().copied()).collect();
    for i in member_domains {
        let y = &table.domains[i as usize];
        if crosses_delta(model, y, delta)? {
            crossing.push(y.clone());
        }
    }
    let cross: Vec<i64> = members
        .par_iter()
        .map(|&u| {
            let m = &ball.vertices[u as usize];
            let mut worst = 0;
            for y in &crossing {
                worst = worst.max(dist_to_curves(model, m, y, delta)?);
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(RegionReport {
        delta: delta.to_vec(),
        members: members.len(),
        pairs: samples.len(),
        fit: fit_qi(&samples),
        cross_max: cross.into_iter().max().unwrap_or(0),
    })
}

/// Source depths, target depths and the capped-ball distance, if reached.
pub type OrthantFailure = ([i64; 2], [i64; 2], Option<u32>);

/// Orthant law on `S_{0,5}` for all depth vectors up to `max_depth`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrthantReport {
    pub max_depth: i64,
    pub pairs: usize,
    /// Pairs whose capped-ball distance differs from the depth difference.
    pub failures: Vec<OrthantFailure>,
}

/// Ball distances between orthant points against `sum |d_i - d'_i|`.
///
/// The capped ball is a subgraph, so its distance bounds the true distance
/// from above; `depth_lower_bound` bounds it from below.
pub fn orthant_check(model: &SphereModel, max_depth: i64, max_twist: u32) -> Result<OrthantReport> {
    let base = sphere_base(model)?;
    let grid: Vec<[i64; 2]> = (0..=max_depth).flat_map(|a| (0..=max_depth).map(move |b| [a, b])).collect();
    let results: Vec<Vec<OrthantFailure>> = grid
        .par_iter()
        .map(|&d| {
            let src = orthant_point(&base, &d)?;
            let radius = d.iter().map(|&x| x.max(max_depth - x)).sum::<i64>() as u32;
            let ball =
                BallGraph::generate(model, &src, radius, &Caps { max_twist: Some(max_twist), ..Caps::default() })?;
            let mut bad = Vec::new();
            for &e in &grid {
                let dst = orthant_point(&base, &e)?;
                let want = (d[0] - e[0]).unsigned_abs() + (d[1] - e[1]).unsigned_abs();
                let got = ball.index_of(&dst).map(|i| ball.depth[i as usize]);
                if depth_lower_bound(&src, &dst) != want || got != Some(want as u32) {
                    bad.push((d, e, got));
                }
            }
            Ok(bad)
        })
        .collect::<Result<_>>()?;
    Ok(OrthantReport { max_depth, pairs: grid.len() * grid.len(), failures: results.into_iter().flatten().collect() })
}

/// Thickness chains between seeded curve pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThicknessReport {
    pub seed: u64,
    pub pairs: usize,
    pub r: u64,
    pub longest_chain: usize,
    pub min_witness: u64,
    pub failures: usize,
}

pub fn thickness_sweep(
    model: &SphereModel,
    seed: u64,
    pairs: usize,
    r: u64,
    word_len: usize,
) -> Result<ThicknessReport> {
    let eng = model.atlas().engine();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases: Vec<(CurveSystem, CurveSystem)> = (0..pairs)
        .map(|_| (random_sphere_curve(eng, &mut rng, word_len), random_sphere_curve(eng, &mut rng, word_len)))
        .collect();
    let chains: Vec<Option<ThicknessChain>> =
        cases.par_iter().map(|(a, b)| thickness_chain(model, a, b, r).ok()).collect();
    let ok: Vec<&ThicknessChain> = chains.iter().flatten().collect();
    Ok(ThicknessReport {
        seed,
        pairs,
        r,
        longest_chain: ok.iter().map(|c| c.curves.len()).max().unwrap_or(0),
        min_witness: ok.iter().flat_map(|c| c.witnesses.iter().map(|w| w.1)).min().unwrap_or(0),
        failures: chains.len() - ok.len(),
    })
}

/// Checks `Q(a) and Q(b) = Q(a + b)` on every ball marking for every
/// disjoint pair of distinct curves among the first `pool` base curves.
/// Returns the number of membership tests and of mismatches.
pub fn region_intersection_check<M: SurfaceModel>(
    model: &M,
    ball: &BallGraph<M::Curve>,
    pool: usize,
) -> Result<(usize, usize)> {
    let mut curves: Vec<M::Curve> = Vec::new();
    for m in &ball.vertices {
        for c in m.base() {
            if curves.len() < pool && !curves.contains(&c) {
                curves.push(c);
            }
        }
    }
    let mut pairs = Vec::new();
    for (i, a) in curves.iter().enumerate() {
        for b in &curves[i + 1..] {
            if model.intersection(a, b)? == 0 {
                pairs.push([a.clone(), b.clone()]);
            }
        }
    }
    let mut mismatches = 0;
    for m in &ball.vertices {
        for [a, b] in &pairs {
            let both = in_q(model, m, std::slice::from_ref(a))? && in_q(model, m, std::slice::from_ref(b))?;
            if both != in_q(model, m, &[a.clone(), b.clone()])? {
                mismatches += 1;
            }
        }
    }
    Ok((ball.len() * pairs.len(), mismatches))
}

/// `dist_estimate - dist_exact` over every pair with `|dx| <= max_dx`, `m <= max_m`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EstimateReport {
    pub max_dx: i64,
    pub max_m: u32,
    pub pairs: usize,
    pub min_gap: i64,
    pub max_gap: i64,
}

pub fn horoball_estimate_sweep(max_dx: i64, max_m: u32) -> Result<EstimateReport> {
    let gaps: Vec<(i64, i64, usize)> = (0..=max_m)
        .into_par_iter()
        .map(|m_src| {
            let table = horoball::DistanceTable::build(m_src, max_dx, max_m)?;
            let (mut lo, mut hi, mut n) = (i64::MAX, i64::MIN, 0);
            for dx in 0..=max_dx {
                for m in 0..=max_m {
                    let exact = table.get(dx, m).expect("inside the table") as i64;
                    let est = horoball::dist_estimate(
                        horoball::HoroballVertex::new(0, m_src),
                        horoball::HoroballVertex::new(dx, m),
                    ) as i64;
                    lo = lo.min(est - exact);
                    hi = hi.max(est - exact);
                    n += 1;
                }
            }
            Ok((lo, hi, n))
        })
        .collect::<Result<_>>()?;
    Ok(EstimateReport {
        max_dx,
        max_m,
        // Negative offsets are the reflections of the ones counted.
        pairs: gaps.iter().map(|g| g.2).sum(),
        min_gap: gaps.iter().map(|g| g.0).min().unwrap_or(0),
        max_gap: gaps.iter().map(|g| g.1).max().unwrap_or(0),
    })
}

/// Twist-coordinate differences against the intersection model of
/// annular distance, over seeded triples `(alpha, g1, g2)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwistReport {
    pub seed: u64,
    pub samples: usize,
    /// Extremes of `model - |twist difference|`.
    pub min_excess: i64,
    pub max_excess: i64,
}

pub fn twist_qi_sweep(seed: u64, samples: usize, max_entry: i64) -> Result<TwistReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut lo, mut hi) = (i64::MAX, i64::MIN);
    let mut n = 0;
    while n < samples {
        let alpha = random_slope(&mut rng, max_entry);
        let (g1, g2) = (random_slope(&mut rng, max_entry), random_slope(&mut rng, max_entry));
        if g1 == alpha || g2 == alpha {
            continue;
        }
        let reference = farey::reference_neighbor(alpha);
        let phi =
            (farey::twist_coordinate(alpha, g1, reference)? - farey::twist_coordinate(alpha, g2, reference)?).abs();
        let model = farey::annular_model_dist(alpha, g1, g2)?;
        lo = lo.min(model - phi);
        hi = hi.max(model - phi);
        n += 1;
    }
    Ok(TwistReport { seed, samples, min_excess: lo, max_excess: hi })
}

/// Largest AM(Y) distance between the projections of adjacent ball
/// markings, over the proper domains of the center's base.
pub fn projection_lipschitz(model: &SphereModel, ball: &BallGraph<CurveSystem>) -> Result<i64> {
    let piece_model = FareyModel::new(SurfaceKind::S04)?;
    let domains: Vec<Subsurface<CurveSystem>> = model
        .domains(&ball.vertices[ball.center as usize].base())
        .into_iter()
        .filter(|y| !matches!(y, Subsurface::Whole))
        .collect();
    let images: Vec<Vec<Projected<CurveSystem>>> = ball
        .vertices
        .par_iter()
        .map(|m| domains.iter().map(|y| project_augmented(model, m, y)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let worst: Vec<i64> = (0..ball.len())
        .into_par_iter()
        .map(|u| {
            let mut worst = 0;
            for &(v, _) in &ball.adjacency[u] {
                for (p, q) in images[u].iter().zip(&images[v as usize]) {
                    let d = match (p, q) {
                        (Projected::Annulus(a), Projected::Annulus(b)) => horoball_dist(*a, *b),
                        (Projected::Piece(a), Projected::Piece(b)) => piece_distance(&piece_model, a, b)?,
                        _ => return Err(Error::Precondition("mismatched projections".into())),
                    };
                    worst = worst.max(d);
                }
            }
            Ok(worst)
        })
        .collect::<Result<_>>()?;
    Ok(worst.into_iter().max().unwrap_or(0))
}
