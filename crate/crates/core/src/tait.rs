//! The three graph stages behind the invariant: the weighted checkerboard
//! multigraph of one color class, its consolidation (parallel edges merged
//! into one edge carrying the product weight), and the doubled digraph
//! (each consolidated edge replaced by twin opposite arcs of equal weight).

use crate::diagram::{Color, Diagram};
use crate::poly2::Monomial2;

/// One vertex per face of the chosen color, one edge per crossing. Edge
/// weight is `w` for a positive crossing, `r` for a negative one.
#[derive(Debug, Clone)]
pub struct TaitGraph {
    pub color: Color,
    /// Face ids of the diagram serving as vertices.
    pub vertices: Vec<usize>,
    pub edges: Vec<TaitEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TaitEdge {
    /// Indices into `vertices`.
    pub u: usize,
    pub v: usize,
    pub weight: Monomial2,
    pub crossing: usize,
}

/// Simple graph after merging parallel edges; weights multiply.
#[derive(Debug, Clone)]
pub struct ConsolidatedGraph {
    pub vertex_count: usize,
    pub edges: Vec<ConsolidatedEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConsolidatedEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Monomial2,
    /// Crossings of the parallel class this edge replaced.
    pub crossings: Vec<usize>,
}

/// Twin opposite arcs per consolidated edge, equal weights.
#[derive(Debug, Clone)]
pub struct DoubledDigraph {
    pub vertex_count: usize,
    pub arcs: Vec<Arc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: Monomial2,
    /// Index of the arc with the opposite direction on the same edge.
    pub twin: usize,
}

pub fn weight_of_sign(sign: i8) -> Monomial2 {
    if sign > 0 {
        Monomial2::W
    } else {
        Monomial2::R
    }
}

/// Vertex per face of `color`, edge per crossing joining the two faces of
/// that color meeting there.
pub fn build_tait(d: &Diagram, color: Color) -> TaitGraph {
    let vertices: Vec<usize> = d
        .faces()
        .iter()
        .filter(|f| f.color == color)
        .map(|f| f.id)
        .collect();
    let index_of = |face: usize| {
        vertices
            .binary_search(&face)
            .expect("crossing face must carry the requested color")
    };
    let edges = (0..d.crossing_count())
        .map(|ci| {
            let (fu, fv) = d.color_pair(ci, color);
            TaitEdge {
                u: index_of(fu),
                v: index_of(fv),
                weight: weight_of_sign(d.sign(ci)),
                crossing: ci,
            }
        })
        .collect();
    TaitGraph {
        color,
        vertices,
        edges,
    }
}

impl TaitGraph {
    pub fn has_loop(&self) -> bool {
        self.edges.iter().any(|e| e.u == e.v)
    }

    pub fn dump_json(&self) -> String {
        let verts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                format!(
                    "[{},{},\"{}\",{}]",
                    e.u,
                    e.v,
                    if e.weight.var_string().is_empty() {
                        "1".to_string()
                    } else {
                        e.weight.var_string()
                    },
                    e.crossing
                )
            })
            .collect();
        format!(
            "{{\"color\":\"{:?}\",\"vertices\":[{}],\"edges\":[{}]}}",
            self.color,
            verts.join(","),
            edges.join(",")
        )
    }
}

/// Merge parallel edges; one edge per adjacent vertex pair with the
/// product of the parallel weights. Requires a loopless input.
pub fn consolidate(g: &TaitGraph) -> ConsolidatedGraph {
    assert!(!g.has_loop(), "consolidate requires a loopless Tait graph");
    let mut classes: std::collections::BTreeMap<(usize, usize), ConsolidatedEdge> =
        std::collections::BTreeMap::new();
    for e in &g.edges {
        let key = (e.u.min(e.v), e.u.max(e.v));
        let entry = classes.entry(key).or_insert(ConsolidatedEdge {
            u: key.0,
            v: key.1,
            weight: Monomial2::ONE,
            crossings: Vec::new(),
        });
        entry.weight = entry.weight.mul(&e.weight);
        entry.crossings.push(e.crossing);
    }
    ConsolidatedGraph {
        vertex_count: g.vertices.len(),
        edges: classes.into_values().collect(),
    }
}

impl ConsolidatedGraph {
    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); self.vertex_count];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    pub fn dump_json(&self) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                format!(
                    "[{},{},\"{}\"]",
                    e.u,
                    e.v,
                    if e.weight.var_string().is_empty() {
                        "1".to_string()
                    } else {
                        e.weight.var_string()
                    }
                )
            })
            .collect();
        format!(
            "{{\"vertex_count\":{},\"edges\":[{}]}}",
            self.vertex_count,
            edges.join(",")
        )
    }
}

/// Twin opposite arcs per consolidated edge, weights copied.
pub fn double(g: &ConsolidatedGraph) -> DoubledDigraph {
    let mut arcs = Vec::with_capacity(2 * g.edges.len());
    for e in &g.edges {
        let i = arcs.len();
        arcs.push(Arc {
            from: e.u,
            to: e.v,
            weight: e.weight,
            twin: i + 1,
        });
        arcs.push(Arc {
            from: e.v,
            to: e.u,
            weight: e.weight,
            twin: i,
        });
    }
    DoubledDigraph {
        vertex_count: g.vertex_count,
        arcs,
    }
}
