//! Half twists as flip sequences on the standard triangulation.
//!
//! Each generator is stored as a sequence of edge flips followed by an edge
//! relabelling that identifies the flipped triangulation with the standard
//! one. The tables were found by [`search`] and are certified against the
//! word oracle in the tests.

use serde::{Deserialize, Serialize};

use super::triangulation::{FlipStep, SphereTriangulation};
use super::word::HalfTwist;

/// A frozen generator: flip these edges in order, then move the weight of
/// edge `e` to edge `perm[e]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipAction {
    pub flips: Vec<u16>,
    pub perm: Vec<u16>,
}

/// A flip action with its quadrilaterals resolved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledAction {
    steps: Vec<FlipStep>,
    perm: Vec<u16>,
}

impl CompiledAction {
    pub fn compile(n: usize, action: &FlipAction) -> Self {
        let mut t = SphereTriangulation::standard(n);
        let steps = action.flips.iter().map(|&e| t.flip(e as usize).expect("frozen flips are legal")).collect();
        CompiledAction { steps, perm: action.perm.clone() }
    }

    pub fn apply(&self, w: &[i64]) -> Vec<i64> {
        let mut x = w.to_vec();
        for s in &self.steps {
            s.apply(&mut x);
        }
        let mut out = vec![0; x.len()];
        for (e, &p) in self.perm.iter().enumerate() {
            out[p as usize] = x[e];
        }
        out
    }
}

/// Finds flips and a relabelling that send every probe to its target.
///
/// Depth-first search with iterative deepening over flip sequences that never
/// flip the same edge twice in a row.
pub fn search(n: usize, probes: &[Vec<i64>], targets: &[Vec<i64>], max_depth: usize) -> Option<FlipAction> {
    let t = SphereTriangulation::standard(n);
    for depth in 0..=max_depth {
        let mut path = Vec::new();
        if let Some(a) = dfs(&t, probes, targets, depth, &mut path) {
            return Some(a);
        }
    }
    None
}

fn dfs(
    t: &SphereTriangulation,
    probes: &[Vec<i64>],
    targets: &[Vec<i64>],
    depth: usize,
    path: &mut Vec<u16>,
) -> Option<FlipAction> {
    if depth == 0 {
        return matching_perm(probes, targets).map(|perm| FlipAction { flips: path.clone(), perm });
    }
    for e in 0..t.edge_count() {
        if path.last() == Some(&(e as u16)) || !t.is_flippable(e) {
            continue;
        }
        let mut t2 = t.clone();
        let step = t2.flip(e).ok()?;
        let moved: Vec<Vec<i64>> = probes
            .iter()
            .map(|p| {
                let mut x = p.clone();
                step.apply(&mut x);
                x
            })
            .collect();
        path.push(e as u16);
        let found = dfs(&t2, &moved, targets, depth - 1, path);
        path.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// A relabelling `perm` with `target[perm[e]] = probe[e]` for every probe.
fn matching_perm(probes: &[Vec<i64>], targets: &[Vec<i64>]) -> Option<Vec<u16>> {
    let edges = probes.first()?.len();
    let column = |vs: &[Vec<i64>], e: usize| vs.iter().map(|v| v[e]).collect::<Vec<i64>>();
    let mut used = vec![false; edges];
    let mut perm = Vec::with_capacity(edges);
    for e in 0..edges {
        let c = column(probes, e);
        let f = (0..edges).find(|&f| !used[f] && column(targets, f) == c)?;
        used[f] = true;
        perm.push(f as u16);
    }
    Some(perm)
}

/// Frozen actions for `n` finite punctures, ordered as [`HalfTwist::all`].
pub fn frozen(n: usize) -> Vec<(HalfTwist, FlipAction)> {
    let table: &[(u8, bool, &[u16], &[u16])] = match n {
        3 => FROZEN_3,
        4 => FROZEN_4,
        _ => &[],
    };
    table
        .iter()
        .map(|&(i, inv, f, p)| (HalfTwist::new(i, inv), FlipAction { flips: f.to_vec(), perm: p.to_vec() }))
        .collect()
}

type Table = &'static [(u8, bool, &'static [u16], &'static [u16])];

const FROZEN_3: Table = &[
    (1, false, &[5, 0], &[4, 1, 5, 3, 0, 2]),
    (1, true, &[4, 0], &[5, 1, 4, 3, 0, 2]),
    (2, false, &[4, 1], &[0, 5, 2, 4, 1, 3]),
    (2, true, &[5, 1], &[0, 4, 2, 5, 1, 3]),
    (3, false, &[5, 0], &[4, 1, 5, 3, 0, 2]),
    (3, true, &[4, 0], &[5, 1, 4, 3, 0, 2]),
];

const FROZEN_4: Table = &[
    (1, false, &[7, 2], &[7, 1, 5, 3, 4, 0, 6, 2, 8]),
    (1, true, &[5, 2], &[5, 1, 7, 3, 4, 2, 6, 0, 8]),
    (2, false, &[5, 1, 8, 3], &[0, 7, 2, 6, 4, 1, 5, 8, 3]),
    (2, true, &[6, 3, 7, 1], &[0, 5, 2, 8, 4, 6, 3, 1, 7]),
    (3, false, &[6, 2], &[0, 1, 8, 3, 6, 5, 2, 7, 4]),
    (3, true, &[8, 2], &[0, 1, 6, 3, 8, 5, 4, 7, 2]),
    (4, false, &[8, 7, 0, 5], &[5, 1, 2, 8, 4, 6, 3, 0, 7]),
    (4, true, &[6, 5, 0, 7], &[7, 1, 2, 6, 4, 0, 5, 8, 3]),
];
