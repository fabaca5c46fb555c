//! Flype moves: locate tangle-plus-crossing patterns and transport the
//! crossing across the tangle while turning the tangle by 180 degrees.
//!
//! A site is a crossing `c` and a connected tangle `R` meeting the rest of
//! the diagram in exactly four arcs, two of which join `R` to `c` at
//! cyclically adjacent ports of `c`. Applying the flype rotates `R` about
//! the horizontal axis (combinatorially: reversed rotation plus over/under
//! swap at every crossing of `R`), cancels `c` against the half-twist on
//! its side, and re-creates the crossing on the far side of `R`.
//! Correctness is certified post hoc: the rebuilt diagram must validate,
//! stay alternating, and preserve the per-crossing signs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::diagram::{build_diagram, Diagram};
use crate::pd::{PdCode, Slot};

#[derive(Debug, Error)]
pub enum FlypeError {
    #[error("diagram must be reduced and alternating before flyping: {0}")]
    Precondition(String),
    #[error("invalid flype specification: {0}")]
    InvalidSpec(String),
    #[error("flype produced an inconsistent diagram: {0}")]
    Inconsistent(String),
}

/// One flype move: the transported crossing, the tangle, and the four
/// boundary arcs of the tangle (two toward the crossing, two toward the
/// rest of the diagram).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlypeSpec {
    pub crossing: usize,
    pub tangle: BTreeSet<usize>,
    /// Arc labels from the tangle to `crossing`.
    pub arcs_to_crossing: [u32; 2],
    /// Arc labels from the tangle to the remainder.
    pub arcs_to_rest: [u32; 2],
}

impl FlypeSpec {
    /// A single-crossing tangle flypes to an isomorphic diagram.
    pub fn is_degenerate(&self) -> bool {
        self.tangle.len() == 1
    }
}

fn arc_crossings(d: &Diagram, label: u32) -> (usize, usize) {
    (d.head_slot(label).0, d.tail_slot(label).0)
}

fn subset_connected(adj: &[Vec<usize>], mask: u32) -> bool {
    let start = match (0..adj.len()).find(|&v| mask & (1 << v) != 0) {
        Some(v) => v,
        None => return true,
    };
    let mut seen = 0u32;
    let mut stack = vec![start];
    seen |= 1 << start;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if mask & (1 << w) != 0 && seen & (1 << w) == 0 {
                seen |= 1 << w;
                stack.push(w);
            }
        }
    }
    seen == mask
}

/// Walk the outer contour of the crossing subset `mask` and return the
/// boundary darts in cyclic order. `None` if the boundary is not a single
/// circle.
fn boundary_walk(d: &Diagram, mask: u32, boundary_labels: &BTreeSet<u32>) -> Option<Vec<Slot>> {
    let in_mask = |ci: usize| mask & (1 << ci) != 0;
    // R-side darts of boundary arcs.
    let mut boundary_darts: Vec<Slot> = Vec::new();
    for &l in boundary_labels {
        for slot in [d.head_slot(l), d.tail_slot(l)] {
            if in_mask(slot.0) {
                boundary_darts.push(slot);
            }
        }
    }
    boundary_darts.sort_unstable();
    if boundary_darts.len() != boundary_labels.len() {
        return None;
    }
    let is_boundary = |slot: Slot| boundary_darts.binary_search(&slot).is_ok();
    let other_slot = |slot: Slot| {
        let label = d.tuple(slot.0)[slot.1 as usize];
        let h = d.head_slot(label);
        if h == slot {
            d.tail_slot(label)
        } else {
            h
        }
    };
    let start = boundary_darts[0];
    let mut order = vec![start];
    let mut cur = start;
    loop {
        // Rotate to the next port; cross internal arcs until the next
        // boundary dart shows up.
        let mut x = (cur.0, (cur.1 + 1) % 4);
        let mut guard = 0;
        while !is_boundary(x) {
            let o = other_slot(x);
            if !in_mask(o.0) {
                return None;
            }
            x = (o.0, (o.1 + 1) % 4);
            guard += 1;
            if guard > 16 * d.crossing_count() {
                return None;
            }
        }
        if x == start {
            break;
        }
        if order.contains(&x) {
            return None;
        }
        order.push(x);
        cur = x;
    }
    if order.len() == boundary_darts.len() {
        Some(order)
    } else {
        None
    }
}

/// Exhaustive search over 4-arc cuts of the shadow. May legitimately be
/// empty. Only reduced alternating diagrams of at most 20 crossings are
/// accepted.
pub fn find_flype_sites(d: &Diagram) -> Result<Vec<FlypeSpec>, FlypeError> {
    let report = d.validate_reduced();
    if !report.passed() {
        return Err(FlypeError::Precondition(report.render_text()));
    }
    if !d.is_alternating() {
        return Err(FlypeError::Precondition(
            "diagram is not alternating".into(),
        ));
    }
    let n = d.crossing_count();
    if n > 20 {
        return Err(FlypeError::Precondition(format!(
            "site search supports at most 20 crossings, got {n}"
        )));
    }

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for l in 1..=(2 * n as u32) {
        let (a, b) = arc_crossings(d, l);
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    let mut sites = Vec::new();
    for c in 0..n {
        for mask in 1u32..=full {
            if mask & (1 << c) != 0 || mask == full {
                continue;
            }
            // Boundary arcs of the candidate tangle.
            let mut to_c: Vec<u32> = Vec::new();
            let mut to_s: Vec<u32> = Vec::new();
            let mut boundary = BTreeSet::new();
            let mut ok = true;
            for l in 1..=(2 * n as u32) {
                let (a, b) = arc_crossings(d, l);
                let ina = mask & (1 << a) != 0;
                let inb = mask & (1 << b) != 0;
                if ina == inb {
                    continue;
                }
                let far = if ina { b } else { a };
                boundary.insert(l);
                if far == c {
                    to_c.push(l);
                } else {
                    to_s.push(l);
                }
                if boundary.len() > 4 {
                    ok = false;
                    break;
                }
            }
            if !ok || boundary.len() != 4 || to_c.len() != 2 || to_s.len() != 2 {
                continue;
            }
            if !subset_connected(&adj, mask) {
                continue;
            }
            if !subset_connected(&adj, full & !mask) {
                continue;
            }
            // The two tangle arcs must reach adjacent ports of c.
            let port_at_c = |l: u32| {
                let h = d.head_slot(l);
                if h.0 == c {
                    h.1
                } else {
                    d.tail_slot(l).1
                }
            };
            let (p1, p2) = (port_at_c(to_c[0]), port_at_c(to_c[1]));
            if (p1 + 1) % 4 != p2 && (p2 + 1) % 4 != p1 {
                continue;
            }
            // And be adjacent around the tangle's own boundary circle.
            let order = match boundary_walk(d, mask, &boundary) {
                Some(o) => o,
                None => continue,
            };
            let label_at = |slot: Slot| d.tuple(slot.0)[slot.1 as usize];
            let idx1 = order.iter().position(|&s| label_at(s) == to_c[0]).unwrap();
            let idx2 = order.iter().position(|&s| label_at(s) == to_c[1]).unwrap();
            let diff = (idx1 as i32 - idx2 as i32).rem_euclid(4);
            if diff != 1 && diff != 3 {
                continue;
            }
            sites.push(FlypeSpec {
                crossing: c,
                tangle: (0..n).filter(|&x| mask & (1 << x) != 0).collect(),
                arcs_to_crossing: [to_c[0], to_c[1]],
                arcs_to_rest: [to_s[0], to_s[1]],
            });
        }
    }
    Ok(sites)
}

/// Apply one flype. The output is rebuilt, relabeled and fully validated:
/// same crossing count, same per-crossing signs, still reduced, still
/// alternating.
pub fn apply_flype(d: &Diagram, spec: &FlypeSpec) -> Result<Diagram, FlypeError> {
    let n = d.crossing_count();
    let c = spec.crossing;
    if c >= n || spec.tangle.iter().any(|&x| x >= n) || spec.tangle.contains(&c) {
        return Err(FlypeError::InvalidSpec("crossing ids out of range".into()));
    }
    let in_r = |x: usize| spec.tangle.contains(&x);

    // New port layout per crossing: identity outside the tangle, the
    // reflected-and-flipped layout inside it.
    let portmap = |x: usize, old_p: u8| -> u8 {
        if !in_r(x) {
            old_p
        } else if d.sign(x) > 0 {
            [1u8, 0, 3, 2][old_p as usize]
        } else {
            [3u8, 2, 1, 0][old_p as usize]
        }
    };
    let map_slot = |s: Slot| -> Slot {
        if s.0 == c {
            s
        } else {
            (s.0, portmap(s.0, s.1))
        }
    };

    // Oriented arcs as (tail slot, head slot) in new port coordinates,
    // excluding everything touching c and the two cut arcs.
    let mut arcs: Vec<(Slot, Slot)> = Vec::new();
    let gamma = spec.arcs_to_rest;
    let t = d.tuple(c);
    for l in 1..=(2 * n as u32) {
        let h = d.head_slot(l);
        let tl = d.tail_slot(l);
        if h.0 == c || tl.0 == c || gamma.contains(&l) {
            continue;
        }
        arcs.push((map_slot(tl), map_slot(h)));
    }

    // Smooth c: fuse the two strand pairs through it.
    if arc_crossings(d, t[0]).0 == arc_crossings(d, t[0]).1 {
        return Err(FlypeError::InvalidSpec("arc from c back to c".into()));
    }
    for pair in [[0usize, 2], [1, 3]] {
        let l_in = t[pair[0]];
        let l_out = t[pair[1]];
        // One of the pair flows into c, the other out.
        let (upstream, downstream) = if d.head_slot(l_in).0 == c {
            (l_in, l_out)
        } else {
            (l_out, l_in)
        };
        if d.head_slot(upstream).0 != c || d.tail_slot(downstream).0 != c {
            return Err(FlypeError::InvalidSpec(
                "strand through c is not consistently oriented".into(),
            ));
        }
        let tail = map_slot(d.tail_slot(upstream));
        let head = map_slot(d.head_slot(downstream));
        if tail.0 == c || head.0 == c {
            return Err(FlypeError::InvalidSpec("arc from c back to c".into()));
        }
        arcs.push((tail, head));
    }

    // Cut arcs: gamma[i] runs between an R-side slot and an S-side slot.
    struct Cut {
        r_slot: Slot,
        s_slot: Slot,
        /// True when the strand flows from the tangle toward the rest.
        outward: bool,
    }
    let mut cuts = Vec::new();
    for &l in &gamma {
        let h = d.head_slot(l);
        let tl = d.tail_slot(l);
        let (r_old, s_old, outward) = if in_r(tl.0) && !in_r(h.0) && h.0 != c {
            (tl, h, true)
        } else if in_r(h.0) && !in_r(tl.0) && tl.0 != c {
            (h, tl, false)
        } else {
            return Err(FlypeError::InvalidSpec(format!(
                "arc {l} does not join the tangle to the remainder"
            )));
        };
        cuts.push(Cut {
            r_slot: map_slot(r_old),
            s_slot: s_old,
            outward,
        });
    }

    // Two corridor layouts for the re-created crossing; the strand pairing
    // through it is fixed (ports 0-2 carry gamma[0], ports 1-3 gamma[1]).
    for layout in 0..2 {
        let (g0, g1) = if layout == 0 { (0, 1) } else { (1, 0) };
        let mut trial = arcs.clone();
        // Ports of c': 0 and 1 face the tangle, 2 and 3 face the rest.
        // gamma[g0] occupies ports 0/2, gamma[g1] ports 1/3.
        let c0 = &cuts[g0];
        let c1 = &cuts[g1];
        // entry ports of the strands on diagonals 0-2 and 1-3
        let entry_a: u8 = if c0.outward {
            trial.push((c0.r_slot, (c, 0)));
            trial.push(((c, 2), c0.s_slot));
            0
        } else {
            trial.push((c0.s_slot, (c, 2)));
            trial.push(((c, 0), c0.r_slot));
            2
        };
        let entry_b: u8 = if c1.outward {
            trial.push((c1.r_slot, (c, 1)));
            trial.push(((c, 3), c1.s_slot));
            1
        } else {
            trial.push((c1.s_slot, (c, 3)));
            trial.push(((c, 1), c1.r_slot));
            3
        };
        // Choose which diagonal goes under so the sign of c is preserved.
        let sign_with_under_a: i8 = if entry_b == (entry_a + 1) % 4 { 1 } else { -1 };
        let under_in_c = if sign_with_under_a == d.sign(c) {
            entry_a
        } else {
            entry_b
        };

        match rebuild(n, &trial, |x| if x == c { under_in_c } else { 0 }) {
            Ok(code) => {
                let new_d = match build_diagram(&code) {
                    Ok(nd) => nd,
                    Err(_) => continue,
                };
                if !new_d.validate_reduced().passed() || !new_d.is_alternating() {
                    continue;
                }
                if new_d.signs() != d.signs() {
                    continue;
                }
                return Ok(new_d);
            }
            Err(_) => continue,
        }
    }
    Err(FlypeError::Inconsistent(
        "no corridor layout produced a valid alternating diagram".into(),
    ))
}

/// Turn oriented arcs (tail slot -> head slot in a 4-regular rotation
/// system, with `under_in` giving each crossing's incoming-under port)
/// back into a PD code by tracing strands and numbering arcs along them.
fn rebuild(
    n: usize,
    arcs: &[(Slot, Slot)],
    under_in: impl Fn(usize) -> u8,
) -> Result<PdCode, FlypeError> {
    if arcs.len() != 2 * n {
        return Err(FlypeError::Inconsistent(format!(
            "expected {} arcs, built {}",
            2 * n,
            arcs.len()
        )));
    }
    let idx = |s: Slot| s.0 * 4 + s.1 as usize;
    let mut arc_at = vec![usize::MAX; 4 * n];
    for (i, (tail, head)) in arcs.iter().enumerate() {
        for s in [tail, head] {
            if arc_at[idx(*s)] != usize::MAX {
                return Err(FlypeError::Inconsistent(format!(
                    "slot ({}, {}) used twice",
                    s.0, s.1
                )));
            }
            arc_at[idx(*s)] = i;
        }
    }
    if arc_at.contains(&usize::MAX) {
        return Err(FlypeError::Inconsistent("uncovered slot".into()));
    }

    let mut label_of_arc = vec![0u32; arcs.len()];
    let mut next_label = 1u32;
    for start in 0..arcs.len() {
        if label_of_arc[start] != 0 {
            continue;
        }
        let mut a = start;
        loop {
            label_of_arc[a] = next_label;
            next_label += 1;
            let (ci, p) = arcs[a].1;
            let exit = (ci, (p + 2) % 4);
            let next_arc = arc_at[idx(exit)];
            if arcs[next_arc].0 != exit {
                return Err(FlypeError::Inconsistent(
                    "carried orientations disagree at a crossing".into(),
                ));
            }
            a = next_arc;
            if a == start {
                break;
            }
        }
    }

    let mut tuples = Vec::with_capacity(n);
    for x in 0..n {
        let u = under_in(x);
        let lbl = |p: u8| label_of_arc[arc_at[x * 4 + ((u + p) % 4) as usize]];
        tuples.push([lbl(0), lbl(1), lbl(2), lbl(3)]);
    }
    PdCode::new(tuples).map_err(|e| FlypeError::Inconsistent(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_diagram;
    use crate::invariant::wrp_of_diagram;
    use crate::medial::{alternating_pd, PlaneGraph};
    use crate::pd::{parse_pd, serialize_pd, TREFOIL_PD};
    use crate::DEFAULT_CYCLE_BUDGET;

    fn trefoil() -> Diagram {
        build_diagram(&parse_pd(TREFOIL_PD).unwrap()).unwrap()
    }

    /// Generalized theta graph: three internally disjoint paths of the
    /// given edge counts between two hubs; the medial is a pretzel-style
    /// alternating diagram.
    fn theta_graph(paths: &[usize]) -> PlaneGraph {
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut next_vertex = 2usize;
        let mut path_edges: Vec<Vec<usize>> = Vec::new();
        for &len in paths {
            let mut ids = Vec::new();
            let mut prev = 0usize;
            for step in 0..len {
                let to = if step + 1 == len { 1 } else { next_vertex };
                if step + 1 != len {
                    next_vertex += 1;
                }
                ids.push(edges.len());
                edges.push((prev, to));
                prev = to;
            }
            path_edges.push(ids);
        }
        let mut rotation: Vec<Vec<usize>> = vec![Vec::new(); next_vertex];
        // hub 0: first edge of each path in order
        for ids in &path_edges {
            rotation[0].push(2 * ids[0]);
        }
        // hub 1: last edge of each path in reverse order
        for ids in path_edges.iter().rev() {
            rotation[1].push(2 * ids[ids.len() - 1] + 1);
        }
        // interior path vertices: incoming then outgoing
        for ids in &path_edges {
            for w in ids.windows(2) {
                let v = edges[w[0]].1;
                rotation[v].push(2 * w[0] + 1);
                rotation[v].push(2 * w[1]);
            }
        }
        PlaneGraph::new(rotation).unwrap()
    }

    fn pretzel221() -> Diagram {
        let g = theta_graph(&[2, 2, 1]);
        assert!(g.is_planar());
        let pd = alternating_pd(&g).unwrap();
        build_diagram(&pd).unwrap()
    }

    #[test]
    fn trefoil_sites_are_degenerate_and_invariant() {
        let d = trefoil();
        let sites = find_flype_sites(&d).unwrap();
        assert!(!sites.is_empty());
        assert!(sites.iter().all(|s| s.is_degenerate()));
        let base = wrp_of_diagram(&d, DEFAULT_CYCLE_BUDGET).unwrap().pair;
        for s in &sites {
            let flyped = apply_flype(&d, s).unwrap();
            assert_eq!(flyped.signs(), d.signs());
            assert_eq!(
                wrp_of_diagram(&flyped, DEFAULT_CYCLE_BUDGET).unwrap().pair,
                base
            );
            assert_eq!(
                flyped.canonical_code(true, true),
                d.canonical_code(true, true)
            );
        }
    }

    #[test]
    fn pretzel_has_nondegenerate_site() {
        let d = pretzel221();
        assert!(d.validate_reduced().passed());
        assert!(d.is_alternating());
        let sites = find_flype_sites(&d).unwrap();
        let nd: Vec<_> = sites.iter().filter(|s| !s.is_degenerate()).collect();
        assert!(!nd.is_empty(), "expected a 2-crossing tangle site");
        let base = wrp_of_diagram(&d, DEFAULT_CYCLE_BUDGET).unwrap().pair;
        let mut changed_pd = false;
        for s in &nd {
            let flyped = apply_flype(&d, s).unwrap();
            assert_eq!(
                wrp_of_diagram(&flyped, DEFAULT_CYCLE_BUDGET).unwrap().pair,
                base
            );
            if serialize_pd(&flyped.to_pd()) != serialize_pd(&d.to_pd()) {
                changed_pd = true;
            }
        }
        assert!(changed_pd, "a flype should produce a different PD code");
    }

    #[test]
    fn flype_twice_returns_isomorphic_diagram() {
        let d = pretzel221();
        let sites = find_flype_sites(&d).unwrap();
        let original = d.canonical_code(true, false);
        let mut checked = 0;
        for s in sites.iter().take(6) {
            let once = apply_flype(&d, s).unwrap();
            let back_sites = find_flype_sites(&once).unwrap();
            let restored = back_sites.iter().any(|s2| {
                apply_flype(&once, s2)
                    .map(|dd| dd.canonical_code(true, false) == original)
                    .unwrap_or(false)
            });
            assert!(restored, "some flype of the flyped diagram restores it");
            checked += 1;
        }
        assert!(checked > 0);
    }

    #[test]
    fn invalid_spec_rejected() {
        let d = trefoil();
        let bad = FlypeSpec {
            crossing: 0,
            tangle: [0usize].into_iter().collect(),
            arcs_to_crossing: [1, 2],
            arcs_to_rest: [3, 4],
        };
        assert!(apply_flype(&d, &bad).is_err());
        let split = build_diagram(
            &parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3) X(7,10,8,11) X(9,12,10,7) X(11,8,12,9)")
                .unwrap(),
        )
        .unwrap();
        assert!(matches!(
            find_flype_sites(&split),
            Err(FlypeError::Precondition(_))
        ));
    }

    #[test]
    fn crossing_and_component_counts_preserved() {
        let d = pretzel221();
        for s in find_flype_sites(&d).unwrap() {
            let f = apply_flype(&d, &s).unwrap();
            assert_eq!(f.crossing_count(), d.crossing_count());
            assert_eq!(f.component_count(), d.component_count());
        }
    }
}
