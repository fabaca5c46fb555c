//! Exhaustive generation of embedded 2-connected loopless multigraphs by
//! planar open-ear growth, deduplicated by a canonical rotation-system
//! code (up to relabeling and reflection).
//!
//! Every 2-connected multigraph has an open ear decomposition starting
//! from any of its cycles, and restricting a sphere embedding to an
//! intermediate graph of the decomposition leaves each later ear inside a
//! single face. Growing every cycle seed by every (face, corner pair,
//! length) ear therefore reaches every embedding at most `max_edges`.

use rustc_hash::FxHashSet;
use wrp_core::medial::PlaneGraph;

/// Canonical code of a rotation system: minimal BFS encoding over all
/// start darts and both orientations.
pub fn canonical_graph_code(g: &PlaneGraph) -> Vec<u32> {
    let m = 2 * g.edge_count();
    let mut best: Option<Vec<u32>> = None;
    for start in 0..m {
        for flip in [false, true] {
            let mut ids = vec![u32::MAX; m];
            let mut order = Vec::with_capacity(m);
            ids[start] = 0;
            order.push(start);
            let mut next_id = 1u32;
            let mut code = Vec::with_capacity(2 * m);
            let mut qi = 0;
            while qi < order.len() {
                let d = order[qi];
                qi += 1;
                let s = if flip { g.sigma_inv(d) } else { g.sigma(d) };
                let t = PlaneGraph::twin(d);
                for nb in [s, t] {
                    if ids[nb] == u32::MAX {
                        ids[nb] = next_id;
                        next_id += 1;
                        order.push(nb);
                    }
                }
                code.push(ids[s]);
                code.push(ids[t]);
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.unwrap_or_default()
}

fn hash_code(code: &[u32]) -> u64 {
    // FNV-1a over the words; collisions would only drop a duplicate
    // candidate and are caught downstream by the knot-count checks.
    let mut h = 0xcbf29ce484222325u64;
    for &w in code {
        h ^= w as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

pub fn cycle_graph(c: usize) -> PlaneGraph {
    // edge i joins vertices i and (i+1) % c
    let mut rotation = vec![Vec::new(); c];
    for (i, r) in rotation.iter_mut().enumerate() {
        // at vertex i: end of edge (i-1), start of edge i
        r.push(2 * ((i + c - 1) % c) + 1);
        r.push(2 * i);
    }
    PlaneGraph::new(rotation).expect("cycle rotation is valid")
}

/// All ear insertions into `g` with `len` new edges.
fn children(g: &PlaneGraph, len: usize) -> Vec<PlaneGraph> {
    let e = g.edge_count();
    let mut out = Vec::new();
    for face in g.faces() {
        // corner after face dart d sits at the vertex of twin(d), wedged
        // right after twin(d) in that rotation
        let corners: Vec<(usize, usize)> = face
            .iter()
            .map(|&d| {
                let anchor = PlaneGraph::twin(d);
                (g.dart_vertex(anchor), anchor)
            })
            .collect();
        for i in 0..corners.len() {
            for j in 0..corners.len() {
                if i == j {
                    continue;
                }
                // unordered pair of corners; keep i < j to halve the work
                if i > j {
                    continue;
                }
                let (v1, a1) = corners[i];
                let (v2, a2) = corners[j];
                if v1 == v2 {
                    continue;
                }
                let mut rotation: Vec<Vec<usize>> =
                    g.rotation().iter().map(|r| r.to_vec()).collect();
                let first_dart = 2 * e;
                let last_dart = 2 * (e + len - 1) + 1;
                let pos1 = rotation[v1].iter().position(|&d| d == a1).unwrap();
                rotation[v1].insert(pos1 + 1, first_dart);
                let pos2 = rotation[v2].iter().position(|&d| d == a2).unwrap();
                rotation[v2].insert(pos2 + 1, last_dart);
                for t in 0..len.saturating_sub(1) {
                    // interior vertex between ear edges t and t+1
                    rotation.push(vec![2 * (e + t) + 1, 2 * (e + t + 1)]);
                }
                let child = PlaneGraph::new(rotation).expect("ear insertion stays valid");
                debug_assert!(child.is_planar());
                out.push(child);
            }
        }
    }
    out
}

/// All embedded 2-connected loopless multigraphs with 2..=max_edges
/// edges, one representative per isomorphism class.
pub fn enumerate_graphs(max_edges: usize) -> Vec<PlaneGraph> {
    let mut seen: FxHashSet<u64> = FxHashSet::default();
    let mut all: Vec<PlaneGraph> = Vec::new();
    let mut frontier: Vec<PlaneGraph> = Vec::new();
    for c in 2..=max_edges {
        let g = cycle_graph(c);
        if seen.insert(hash_code(&canonical_graph_code(&g))) {
            frontier.push(g.clone());
            all.push(g);
        }
    }
    while let Some(g) = frontier.pop() {
        let e = g.edge_count();
        if e >= max_edges {
            continue;
        }
        for len in 1..=(max_edges - e) {
            for child in children(&g, len) {
                if seen.insert(hash_code(&canonical_graph_code(&child))) {
                    frontier.push(child.clone());
                    all.push(child);
                }
            }
        }
    }
    all
}
