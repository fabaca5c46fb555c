//! Alternating diagrams from embedded multigraphs.
//!
//! The medial of a plane multigraph G has one 4-valent vertex per edge of
//! G and one arc per corner of G; checkerboard-shading the medial gives
//! back G as the black graph. Choosing over/under so that the black face
//! sits to the right of every strand entering an under-passage yields the
//! alternating diagram whose Tait graph is G. This is how the twist-knot
//! generator and the table fixtures are produced.

use thiserror::Error;

use crate::diagram::build_diagram;
use crate::pd::{PdCode, PdError};

#[derive(Debug, Error)]
pub enum MedialError {
    #[error("graph has a loop edge at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("graph has no edges")]
    Empty,
    #[error("invalid rotation system: {0}")]
    Rotation(String),
    #[error(transparent)]
    Pd(#[from] PdError),
}

/// A multigraph with a rotation system. Edge `e` owns darts `2e` and
/// `2e+1`; `rotation[v]` lists the darts at `v` counterclockwise.
#[derive(Debug, Clone)]
pub struct PlaneGraph {
    rotation: Vec<Vec<usize>>,
    dart_vertex: Vec<usize>,
}

impl PlaneGraph {
    pub fn new(rotation: Vec<Vec<usize>>) -> Result<Self, MedialError> {
        let total: usize = rotation.iter().map(|r| r.len()).sum();
        if total == 0 {
            return Err(MedialError::Empty);
        }
        if !total.is_multiple_of(2) {
            return Err(MedialError::Rotation("odd dart count".into()));
        }
        let mut dart_vertex = vec![usize::MAX; total];
        for (v, darts) in rotation.iter().enumerate() {
            for &d in darts {
                if d >= total || dart_vertex[d] != usize::MAX {
                    return Err(MedialError::Rotation(format!(
                        "dart {d} out of range or duplicated"
                    )));
                }
                dart_vertex[d] = v;
            }
        }
        Ok(PlaneGraph {
            rotation,
            dart_vertex,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.dart_vertex.len() / 2
    }

    pub fn rotation(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn dart_vertex(&self, d: usize) -> usize {
        self.dart_vertex[d]
    }

    pub fn twin(d: usize) -> usize {
        d ^ 1
    }

    pub fn has_loop(&self) -> Option<usize> {
        (0..self.edge_count())
            .find(|&e| self.dart_vertex[2 * e] == self.dart_vertex[2 * e + 1])
            .map(|e| self.dart_vertex[2 * e])
    }

    fn pos(&self, d: usize) -> usize {
        self.rotation[self.dart_vertex[d]]
            .iter()
            .position(|&x| x == d)
            .expect("dart present in its rotation")
    }

    pub fn sigma(&self, d: usize) -> usize {
        let r = &self.rotation[self.dart_vertex[d]];
        r[(self.pos(d) + 1) % r.len()]
    }

    pub fn sigma_inv(&self, d: usize) -> usize {
        let r = &self.rotation[self.dart_vertex[d]];
        r[(self.pos(d) + r.len() - 1) % r.len()]
    }

    /// Faces as orbits of d -> sigma(twin(d)).
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let m = self.dart_vertex.len();
        let mut seen = vec![false; m];
        let mut faces = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            loop {
                seen[d] = true;
                face.push(d);
                d = self.sigma(Self::twin(d));
                if d == start {
                    break;
                }
            }
            faces.push(face);
        }
        faces
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &d in &self.rotation[v] {
                let w = self.dart_vertex[Self::twin(d)];
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|b| b)
    }

    /// True when the rotation system is a sphere embedding.
    pub fn is_planar(&self) -> bool {
        self.is_connected() && self.faces().len() + self.vertex_count() == self.edge_count() + 2
    }
}

/// Two vertices joined by k parallel edges (nested); its medial is the
/// T(2,k) shadow.
pub fn bundle_graph(k: usize) -> PlaneGraph {
    let u: Vec<usize> = (0..k).map(|e| 2 * e).collect();
    let v: Vec<usize> = (0..k).rev().map(|e| 2 * e + 1).collect();
    PlaneGraph::new(vec![u, v]).expect("bundle rotation is valid")
}

/// k parallel edges between u and v plus a 2-edge path u-x-v around them;
/// its medial is the standard twist-knot diagram: a k-crossing twist
/// region closed by a 2-crossing clasp.
pub fn twist_graph(k: usize) -> PlaneGraph {
    // edges 0..k-1: bundle (u,v); edge k: (u,x); edge k+1: (x,v)
    let mut u: Vec<usize> = (0..k).map(|e| 2 * e).collect();
    u.push(2 * k);
    let mut v: Vec<usize> = vec![2 * k + 3];
    v.extend((0..k).rev().map(|e| 2 * e + 1));
    let x = vec![2 * k + 1, 2 * k + 2];
    PlaneGraph::new(vec![u, v, x]).expect("twist rotation is valid")
}

/// The alternating PD code of the medial diagram of `g`. Crossing `i` of
/// the output corresponds to edge `i` of the input, and the black Tait
/// graph of the result is `g` again (up to the unordered shading choice).
pub fn alternating_pd(g: &PlaneGraph) -> Result<PdCode, MedialError> {
    if let Some(v) = g.has_loop() {
        return Err(MedialError::Loop { vertex: v });
    }
    let e = g.edge_count();
    if e == 0 {
        return Err(MedialError::Empty);
    }

    // Ports counterclockwise per crossing: [SW, SE, NE, NW], where the
    // edge is oriented from the even dart (south) to the odd dart (north).
    // The corner after dart d (counterclockwise) is identified by d.
    let mut slot_corner = vec![[0usize; 4]; e];
    for (ei, sc) in slot_corner.iter_mut().enumerate() {
        let du = 2 * ei;
        let dw = 2 * ei + 1;
        *sc = [du, g.sigma_inv(du), dw, g.sigma_inv(dw)];
    }
    let mut corner_slots: Vec<Vec<(usize, u8)>> = vec![Vec::new(); 2 * e];
    for (ei, sc) in slot_corner.iter().enumerate() {
        for (p, &c) in sc.iter().enumerate() {
            corner_slots[c].push((ei, p as u8));
        }
    }
    for (c, slots) in corner_slots.iter().enumerate() {
        if slots.len() != 2 {
            return Err(MedialError::Rotation(format!(
                "corner {c} has {} incidences",
                slots.len()
            )));
        }
    }
    let other = |c: usize, inc: (usize, u8)| -> (usize, u8) {
        let s = &corner_slots[c];
        if s[0] == inc {
            s[1]
        } else {
            s[0]
        }
    };

    // Trace medial strands; strands pass straight through (port +2).
    let mut label_of_slot = vec![0u32; 4 * e];
    let mut entry_of_slot = vec![false; 4 * e];
    let mut corner_done = vec![false; 2 * e];
    let mut next_label = 1u32;
    let slot_idx = |(ei, p): (usize, u8)| ei * 4 + p as usize;
    for c0 in 0..2 * e {
        if corner_done[c0] {
            continue;
        }
        let start_head = corner_slots[c0][0];
        let mut c = c0;
        let mut head = start_head;
        loop {
            corner_done[c] = true;
            let tail = other(c, head);
            label_of_slot[slot_idx(head)] = next_label;
            entry_of_slot[slot_idx(head)] = true;
            label_of_slot[slot_idx(tail)] = next_label;
            entry_of_slot[slot_idx(tail)] = false;
            next_label += 1;
            let (ei, p) = head;
            let q = (p + 2) % 4;
            let c2 = slot_corner[ei][q as usize];
            let c2_head = other(c2, (ei, q));
            c = c2;
            head = c2_head;
            if c == c0 && head == start_head {
                break;
            }
        }
    }

    // Under-strand is the SW-NE diagonal (ports 0 and 2); start the tuple
    // at whichever of the two is incoming.
    let mut tuples = Vec::with_capacity(e);
    for ei in 0..e {
        let entry = |p: u8| entry_of_slot[ei * 4 + p as usize];
        let u = if entry(0) { 0u8 } else { 2 };
        debug_assert!(entry(u) && !entry((u + 2) % 4));
        debug_assert!(entry((u + 1) % 4) != entry((u + 3) % 4));
        let lbl = |p: u8| label_of_slot[ei * 4 + (p % 4) as usize];
        tuples.push([lbl(u), lbl(u + 1), lbl(u + 2), lbl(u + 3)]);
    }
    Ok(PdCode::new(tuples)?)
}

/// Reduced alternating diagram of the twist knot with a k-crossing twist
/// region and a 2-crossing clasp (k+2 crossings, one component), in the
/// chirality where the twist-region crossings are positive.
pub fn pd_twist(k: u32) -> Result<PdCode, PdError> {
    if k < 2 {
        return Err(PdError::Parameter(format!(
            "twist requires k >= 2, got {k}"
        )));
    }
    let g = twist_graph(k as usize);
    let pd = alternating_pd(&g).expect("twist graph is loopless and embedded");
    let d = build_diagram(&pd).expect("generated diagram is planar");
    // Crossing 0 is a twist-region crossing (edge 0 of the bundle).
    if d.sign(0) > 0 {
        Ok(pd)
    } else {
        Ok(d.mirror().to_pd())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;
    use crate::invariant::{wrp_of_diagram, WrpPair};
    use crate::poly2::{Monomial2, Poly2};
    use crate::DEFAULT_CYCLE_BUDGET;

    fn poly(terms: &[(u32, u32, i64)]) -> Poly2 {
        let mut p = Poly2::zero();
        for &(dw, dr, c) in terms {
            p.add_term(Monomial2::new(dw, dr), c);
        }
        p
    }

    #[test]
    fn bundle_and_twist_are_planar() {
        for k in 2..=8 {
            let b = bundle_graph(k);
            assert!(b.is_planar(), "bundle k={k}");
            assert_eq!(b.faces().len(), k);
            let t = twist_graph(k);
            assert!(t.is_planar(), "twist k={k}");
            assert_eq!(t.faces().len(), k + 1);
        }
    }

    #[test]
    fn medial_of_triple_bundle_is_a_trefoil() {
        let pd = alternating_pd(&bundle_graph(3)).unwrap();
        assert_eq!(pd.crossing_count(), 3);
        let d = build_diagram(&pd).unwrap();
        assert!(d.is_alternating());
        assert!(d.validate_reduced().passed());
        let pair = wrp_of_diagram(&d, DEFAULT_CYCLE_BUDGET).unwrap().pair;
        let right = WrpPair::new(poly(&[(6, 0, 1)]), poly(&[(3, 0, 2), (2, 0, 3)]));
        let left = right.mirror();
        assert!(pair == right || pair == left);
    }

    #[test]
    fn twist_generator_counts() {
        for k in 2..=6u32 {
            let pd = pd_twist(k).unwrap();
            assert_eq!(pd.crossing_count(), (k + 2) as usize);
            assert_eq!(pd.component_count(), 1, "k={k}");
            let d = build_diagram(&pd).unwrap();
            assert!(d.is_alternating());
            assert!(d.validate_reduced().passed());
            assert!(!d.validate_reduced().prime_warning);
            assert_eq!(d.faces().len(), (k + 4) as usize);
            // documented chirality: twist-region crossings positive
            assert!(d.sign(0) > 0);
        }
        assert!(pd_twist(1).is_err());
    }

    #[test]
    fn figure_eight_value() {
        // k=2 is the figure-eight knot; its two graph stages are a
        // triangle with one doubled edge, so the value is symmetric under
        // the variable swap (the knot is amphichiral).
        let pd = pd_twist(2).unwrap();
        let d = build_diagram(&pd).unwrap();
        let out = wrp_of_diagram(&d, DEFAULT_CYCLE_BUDGET).unwrap();
        let expected = WrpPair::new(
            poly(&[(4, 0, 1), (0, 2, 2), (2, 2, 2)]),
            poly(&[(0, 4, 1), (2, 0, 2), (2, 2, 2)]),
        );
        assert_eq!(out.pair, expected);
        assert_eq!(out.pair.mirror(), out.pair);
    }
}
