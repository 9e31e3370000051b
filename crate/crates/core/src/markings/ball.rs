//! Exhaustive balls in the augmented marking graph.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{elementary_neighbors, AugmentedMarking, Move, SurfaceModel};

/// Limits on generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest twist power per move, on top of the depth rule.
    pub max_twist: Option<u32>,
    /// Largest number of vertices generation may create.
    pub budget_vertices: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { max_twist: None, budget_vertices: 2_000_000 }
    }
}

/// A ball with vertices in canonical order and exact distances from the center.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(bound(serialize = "C: Serialize", deserialize = "C: Ord + Clone + serde::de::DeserializeOwned"))]
pub struct BallGraph<C: Clone> {
    pub radius: u32,
    pub center: u32,
    pub vertices: Vec<AugmentedMarking<C>>,
    /// Distance from the center.
    pub depth: Vec<u32>,
    /// Sorted neighbor lists with the move taking the vertex to the neighbor.
    pub adjacency: Vec<Vec<(u32, Move)>>,
}

impl<C: Clone + Ord + std::hash::Hash + Send + Sync> BallGraph<C> {
    /// Breadth-first generation with parallel frontier expansion.
    pub fn generate<M: SurfaceModel<Curve = C>>(
        model: &M,
        center: &AugmentedMarking<C>,
        radius: u32,
        caps: &Caps,
    ) -> Result<Self> {
        let mut index: HashMap<AugmentedMarking<C>, u32> = HashMap::new();
        let mut verts = vec![center.clone()];
        let mut depth = vec![0u32];
        index.insert(center.clone(), 0);
        let mut raw_adj: Vec<Vec<(Move, AugmentedMarking<C>)>> = Vec::new();
        let mut layer: Vec<u32> = vec![0];
        let mut edges_seen = 0usize;
        for level in 0..=radius {
            if level < radius && !raw_adj.is_empty() {
                let avg = edges_seen as f64 / raw_adj.len() as f64;
                let projected = verts.len() as f64 + layer.len() as f64 * avg;
                if projected > caps.budget_vertices as f64 {
                    return Err(Error::Budget(format!(
                        "ball of radius {radius} projected past {} vertices at level {level}",
                        caps.budget_vertices
                    )));
                }
            }
            let expanded: Vec<Vec<(Move, AugmentedMarking<C>)>> = layer
                .par_iter()
                .map(|&v| elementary_neighbors(model, &verts[v as usize], caps))
                .collect::<Result<_>>()?;
            let mut next = Vec::new();
            for nbrs in &expanded {
                edges_seen += nbrs.len();
                if level == radius {
                    continue;
                }
                for (_, w) in nbrs {
                    if !index.contains_key(w) {
                        let id = verts.len() as u32;
                        index.insert(w.clone(), id);
                        verts.push(w.clone());
                        depth.push(level + 1);
                        next.push(id);
                    }
                }
                if verts.len() > caps.budget_vertices {
                    return Err(Error::Budget(format!("more than {} vertices", caps.budget_vertices)));
                }
            }
            raw_adj.extend(expanded);
            layer = next;
        }
        // Canonical order.
        let mut order: Vec<u32> = (0..verts.len() as u32).collect();
        order.par_sort_by(|&a, &b| verts[a as usize].cmp(&verts[b as usize]));
        let mut rank = vec![0u32; verts.len()];
        for (r, &v) in order.iter().enumerate() {
            rank[v as usize] = r as u32;
        }
        let adjacency: Vec<Vec<(u32, Move)>> = order
            .par_iter()
            .map(|&v| {
                let mut out: Vec<(u32, Move)> = raw_adj[v as usize]
                    .iter()
                    .filter_map(|(mv, w)| index.get(w).map(|&id| (rank[id as usize], *mv)))
                    .collect();
                out.sort();
                out.dedup_by_key(|e| e.0);
                out
            })
            .collect();
        let vertices: Vec<AugmentedMarking<C>> = order.iter().map(|&v| verts[v as usize].clone()).collect();
        let depth = order.iter().map(|&v| depth[v as usize]).collect();
        Ok(BallGraph { radius, center: rank[0], vertices, depth, adjacency })
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn index_of(&self, m: &AugmentedMarking<C>) -> Option<u32> {
        self.vertices.binary_search(m).ok().map(|i| i as u32)
    }

    /// In-ball distances from `src`; `u32::MAX` marks unreachable vertices.
    pub fn bfs_from(&self, src: u32) -> Vec<u32> {
        self.bfs_tree(src).0
    }

    fn bfs_tree(&self, src: u32) -> (Vec<u32>, Vec<u32>) {
        let n = self.vertices.len();
        let mut dist = vec![u32::MAX; n];
        let mut parent = vec![u32::MAX; n];
        dist[src as usize] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adjacency[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    parent[w as usize] = v;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    /// A shortest in-ball path from `src` to `dst`, both included.
    pub fn path(&self, src: u32, dst: u32) -> Option<Vec<u32>> {
        let (dist, parent) = self.bfs_tree(src);
        if dist[dst as usize] == u32::MAX {
            return None;
        }
        let mut out = vec![dst];
        let mut v = dst;
        while v != src {
            v = parent[v as usize];
            out.push(v);
        }
        out.reverse();
        Some(out)
    }

    /// Whether `(u, v)` pairs have in-ball distance equal to their distance
    /// in the whole graph: true when `depth(u) + depth(v) <= radius`.
    pub fn distance_is_exact(&self, u: u32, v: u32) -> bool {
        self.depth[u as usize] + self.depth[v as usize] <= self.radius
    }
}
