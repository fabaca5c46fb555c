//! Combinatorial planar diagrams built from PD codes: rotation system,
//! faces, checkerboard shading, crossing signs, and the reducedness /
//! alternation checks that gate the invariant.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::pd::{PdCode, PdError, Slot};

#[derive(Debug, Error)]
pub enum DiagramError {
    #[error(transparent)]
    Pd(#[from] PdError),
    #[error("rotation data is not planar: {faces} faces for {crossings} crossings in {shadow_components} shadow component(s)")]
    NonPlanar {
        faces: usize,
        crossings: usize,
        shadow_components: usize,
    },
    #[error("checkerboard shading failed; the face adjacency is not bipartite")]
    NotCheckerboard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

/// A region of the diagram: the darts (crossing, port) on its boundary,
/// in face-tracing order.
#[derive(Debug, Clone)]
pub struct Face {
    pub id: usize,
    pub darts: Vec<Slot>,
    pub color: Color,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Crossing {
    /// Arc labels counterclockwise starting at the incoming under-strand.
    pub tuple: [u32; 4],
    pub sign: i8,
    /// Port (1 or 3) where the over-strand enters.
    pub over_in: u8,
}

/// An immutable planar link diagram.
#[derive(Debug, Clone)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    /// Per arc label (index label-1): entering / leaving slots.
    head: Vec<Slot>,
    tail: Vec<Slot>,
    components: Vec<(u32, u32)>,
    faces: Vec<Face>,
    /// Face id per dart, indexed crossing*4+port.
    face_of: Vec<usize>,
    shadow_component_count: usize,
}

/// Build a diagram from a PD code: derive orientations from the numbering,
/// assign signs, trace faces (Euler's formula is the planarity check), and
/// checkerboard-shade them. Split shadows are representable; they are
/// reported by `validate_reduced` and rejected before any invariant is
/// computed.
pub fn build_diagram(code: &PdCode) -> Result<Diagram, DiagramError> {
    build_diagram_shaded(code, false)
}

/// Same as `build_diagram` but lets tests flip the deterministic shading
/// choice (the face containing dart (0,0) is WHITE by default).
pub fn build_diagram_shaded(code: &PdCode, flip_shading: bool) -> Result<Diagram, DiagramError> {
    let tuples = code.crossings();
    let info = code.strands();
    let n = tuples.len();

    let crossings: Vec<Crossing> = tuples
        .iter()
        .enumerate()
        .map(|(ci, t)| Crossing {
            tuple: *t,
            sign: if info.over_in[ci] == 1 { 1 } else { -1 },
            over_in: info.over_in[ci],
        })
        .collect();

    // Shadow connectivity (crossings joined by arcs).
    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut Vec<usize>, x: usize) -> usize {
        if uf[x] != x {
            let r = find(uf, uf[x]);
            uf[x] = r;
        }
        uf[x]
    }
    for label in 1..=(2 * n as u32) {
        let (c1, _) = info.head[(label - 1) as usize];
        let (c2, _) = info.tail[(label - 1) as usize];
        let r1 = find(&mut uf, c1);
        let r2 = find(&mut uf, c2);
        if r1 != r2 {
            uf[r1] = r2;
        }
    }
    let mut reps: Vec<usize> = Vec::new();
    for ci in 0..n {
        let r = find(&mut uf, ci);
        if !reps.contains(&r) {
            reps.push(r);
        }
    }
    let shadow_component_count = reps.len();

    // Face tracing: next dart = sigma(theta(dart)).
    let theta = |slot: Slot| -> Slot {
        let (ci, p) = slot;
        let label = tuples[ci][p as usize];
        let h = info.head[(label - 1) as usize];
        if h == slot {
            info.tail[(label - 1) as usize]
        } else {
            h
        }
    };
    let mut face_of = vec![usize::MAX; 4 * n];
    let mut faces: Vec<Face> = Vec::new();
    for start_ci in 0..n {
        for start_p in 0..4u8 {
            if face_of[start_ci * 4 + start_p as usize] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut darts = Vec::new();
            let mut cur = (start_ci, start_p);
            loop {
                face_of[cur.0 * 4 + cur.1 as usize] = id;
                darts.push(cur);
                let (ci, p) = theta(cur);
                cur = (ci, (p + 1) % 4);
                if cur == (start_ci, start_p) {
                    break;
                }
            }
            faces.push(Face {
                id,
                darts,
                color: Color::White,
            });
        }
    }

    // Euler: each shadow component is a sphere map with n_i + 2 faces.
    let expected = n + 2 * shadow_component_count;
    if faces.len() != expected {
        return Err(DiagramError::NonPlanar {
            faces: faces.len(),
            crossings: n,
            shadow_components: shadow_component_count,
        });
    }

    // Checkerboard shading: 2-color the face adjacency. Every arc
    // separates the faces of its two dart sides.
    let mut color: Vec<Option<Color>> = vec![None; faces.len()];
    for start in 0..faces.len() {
        if color[start].is_some() {
            continue;
        }
        // Deterministic root per shadow component: a face is rooted WHITE
        // if it contains the smallest dart of its component.
        color[start] = Some(Color::White);
        let mut queue = vec![start];
        while let Some(f) = queue.pop() {
            let c = color[f].unwrap();
            for &dart in &faces[f].darts.clone() {
                let other = face_of[{
                    let (ci, p) = theta(dart);
                    ci * 4 + p as usize
                }];
                match color[other] {
                    None => {
                        color[other] = Some(c.flip());
                        queue.push(other);
                    }
                    Some(existing) => {
                        if existing != c.flip() {
                            return Err(DiagramError::NotCheckerboard);
                        }
                    }
                }
            }
        }
    }
    let base_white = face_of[0];
    for f in faces.iter_mut() {
        let mut c = color[f.id].unwrap();
        // Normalize: face containing dart (0,0) is WHITE (or BLACK when
        // the flipped shading is requested).
        if color[base_white] == Some(Color::Black) {
            c = c.flip();
        }
        if flip_shading {
            c = c.flip();
        }
        f.color = c;
    }

    Ok(Diagram {
        crossings,
        head: info.head.clone(),
        tail: info.tail.clone(),
        components: info.components.clone(),
        faces,
        face_of,
        shadow_component_count,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// The shadow is disconnected (split diagram).
    Split { shadow_components: usize },
    /// Same face at two opposite corners of a crossing.
    Nugatory { crossing: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Split { shadow_components } => {
                write!(f, "split diagram ({shadow_components} shadow components)")
            }
            Violation::Nugatory { crossing } => {
                write!(f, "nugatory crossing at index {crossing}")
            }
        }
    }
}

/// Result of `validate_reduced`: hard violations plus a non-fatal
/// primeness warning (a cut vertex in a checkerboard graph signals a
/// connected sum).
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub prime_warning: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if self.passed() {
            out.push_str("PASS");
        } else {
            out.push_str("FAIL");
            for v in &self.violations {
                out.push_str(&format!("\n  - {v}"));
            }
        }
        if self.prime_warning {
            out.push_str(
                "\n  warning: diagram may be a connected sum (cut vertex in a checkerboard graph)",
            );
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl Diagram {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[(u32, u32)] {
        &self.components
    }

    pub fn sign(&self, crossing: usize) -> i8 {
        self.crossings[crossing].sign
    }

    pub fn signs(&self) -> Vec<i8> {
        self.crossings.iter().map(|c| c.sign).collect()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    pub(crate) fn tuple(&self, crossing: usize) -> [u32; 4] {
        self.crossings[crossing].tuple
    }

    /// Slot where arc `label` enters a crossing.
    pub fn head_slot(&self, label: u32) -> Slot {
        self.head[(label - 1) as usize]
    }

    /// Slot where arc `label` leaves a crossing.
    pub fn tail_slot(&self, label: u32) -> Slot {
        self.tail[(label - 1) as usize]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of_dart(&self, crossing: usize, port: u8) -> usize {
        self.face_of[crossing * 4 + port as usize]
    }

    pub fn face_color(&self, face: usize) -> Color {
        self.faces[face].color
    }

    /// Count of (black, white) faces.
    pub fn shading_counts(&self) -> (usize, usize) {
        let black = self
            .faces
            .iter()
            .filter(|f| f.color == Color::Black)
            .count();
        (black, self.faces.len() - black)
    }

    pub fn shadow_component_count(&self) -> usize {
        self.shadow_component_count
    }

    /// PASS iff the shadow is connected and no crossing sees the same face
    /// at two opposite corners; primeness (no cut vertex in either
    /// checkerboard graph) is reported as a warning, not a violation.
    pub fn validate_reduced(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.shadow_component_count > 1 {
            violations.push(Violation::Split {
                shadow_components: self.shadow_component_count,
            });
        }
        for ci in 0..self.crossings.len() {
            let f = |p: u8| self.face_of(ci, p);
            if f(0) == f(2) || f(1) == f(3) {
                violations.push(Violation::Nugatory { crossing: ci });
            }
        }
        let prime_warning = violations.is_empty() && self.has_cut_vertex_in_checkerboard();
        ValidationReport {
            violations,
            prime_warning,
        }
    }

    fn face_of(&self, ci: usize, p: u8) -> usize {
        self.face_of[ci * 4 + p as usize]
    }

    /// Cut-vertex test on the black checkerboard graph (parallel edges
    /// collapsed; loops cannot occur once nugatory crossings are excluded).
    fn has_cut_vertex_in_checkerboard(&self) -> bool {
        for color in [Color::Black, Color::White] {
            let verts: Vec<usize> = self
                .faces
                .iter()
                .filter(|f| f.color == color)
                .map(|f| f.id)
                .collect();
            if verts.len() <= 2 {
                continue;
            }
            let index_of = |f: usize| verts.iter().position(|&v| v == f).unwrap();
            let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); verts.len()];
            for ci in 0..self.crossings.len() {
                let pair = self.color_pair(ci, color);
                let (u, v) = (index_of(pair.0), index_of(pair.1));
                if u != v {
                    adj[u].insert(v);
                    adj[v].insert(u);
                }
            }
            if has_articulation(&adj) {
                return true;
            }
        }
        false
    }

    /// The two faces of `color` at the opposite corners of a crossing.
    pub(crate) fn color_pair(&self, ci: usize, color: Color) -> (usize, usize) {
        let f0 = self.face_of(ci, 0);
        if self.faces[f0].color == color {
            (f0, self.face_of(ci, 2))
        } else {
            (self.face_of(ci, 1), self.face_of(ci, 3))
        }
    }

    /// True iff crossings alternate over/under along every component:
    /// every arc must join an over-passage to an under-passage.
    pub fn is_alternating(&self) -> bool {
        let under = |slot: Slot| slot.1.is_multiple_of(2);
        (0..self.head.len()).all(|idx| {
            let label = idx as u32 + 1;
            under(self.head_slot(label)) != under(self.tail_slot(label))
        })
    }

    /// Over/under swapped at every crossing; faces and shading unchanged.
    pub fn mirror(&self) -> Diagram {
        let tuples: Vec<[u32; 4]> = self
            .crossings
            .iter()
            .map(|c| {
                let t = c.tuple;
                // Restart the tuple at the incoming over-strand.
                let s = c.over_in as usize;
                [t[s], t[(s + 1) % 4], t[(s + 2) % 4], t[(s + 3) % 4]]
            })
            .collect();
        let code = PdCode::new(tuples).expect("mirror of a valid diagram is valid");
        build_diagram(&code).expect("mirror of a valid diagram builds")
    }

    /// Serialize back to a PD code (crossing order preserved).
    pub fn to_pd(&self) -> PdCode {
        PdCode::new(self.crossings.iter().map(|c| c.tuple).collect())
            .expect("diagram tuples form a valid PD code")
    }

    /// Canonical code of the diagram as an embedded map, minimized over
    /// all starting darts (and reflections when `reflect`). With
    /// `over_under` the under-panel structure is included, so equal codes
    /// mean equal diagrams, not just equal shadows.
    pub fn canonical_code(&self, over_under: bool, reflect: bool) -> Vec<u32> {
        let n = self.crossings.len();
        let theta = |slot: Slot| -> Slot {
            let (ci, p) = slot;
            let label = self.crossings[ci].tuple[p as usize];
            let h = self.head_slot(label);
            if h == slot {
                self.tail_slot(label)
            } else {
                h
            }
        };
        let mut best: Option<Vec<u32>> = None;
        let dirs: &[i8] = if reflect { &[1, -1] } else { &[1] };
        for start_ci in 0..n {
            for start_p in 0..4u8 {
                for &dir in dirs {
                    let mut ids = vec![u32::MAX; 4 * n];
                    let mut order: Vec<Slot> = Vec::with_capacity(4 * n);
                    let mut code = Vec::with_capacity(8 * n);
                    let idx = |s: Slot| s.0 * 4 + s.1 as usize;
                    ids[idx((start_ci, start_p))] = 0;
                    order.push((start_ci, start_p));
                    let mut next_id = 1u32;
                    let mut qi = 0usize;
                    while qi < order.len() {
                        let d = order[qi];
                        qi += 1;
                        let sigma = (d.0, (d.1 as i16 + dir as i16).rem_euclid(4) as u8);
                        let tw = theta(d);
                        for nb in [sigma, tw] {
                            if ids[idx(nb)] == u32::MAX {
                                ids[idx(nb)] = next_id;
                                next_id += 1;
                                order.push(nb);
                            }
                        }
                        code.push(ids[idx(sigma)]);
                        code.push(ids[idx(tw)]);
                        if over_under {
                            let under = d.1.is_multiple_of(2);
                            code.push(u32::from(under));
                        }
                    }
                    if best.as_ref().is_none_or(|b| code < *b) {
                        best = Some(code);
                    }
                }
            }
        }
        best.unwrap_or_default()
    }
}

fn has_articulation(adj: &[BTreeSet<usize>]) -> bool {
    let n = adj.len();
    if n == 0 {
        return false;
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    // Iterative DFS from vertex 0; disconnected graphs count as cut.
    let mut stack: Vec<(usize, usize, Option<usize>)> = vec![(0, 0, None)];
    let neighbors: Vec<Vec<usize>> = adj.iter().map(|s| s.iter().copied().collect()).collect();
    let mut root_children = 0usize;
    let mut articulation = false;
    disc[0] = 0;
    low[0] = 0;
    time += 1;
    while let Some((v, ni, parent)) = stack.pop() {
        if ni < neighbors[v].len() {
            stack.push((v, ni + 1, parent));
            let w = neighbors[v][ni];
            if Some(w) == parent {
                continue;
            }
            if disc[w] == usize::MAX {
                disc[w] = time;
                low[w] = time;
                time += 1;
                if v == 0 {
                    root_children += 1;
                }
                stack.push((w, 0, Some(v)));
            } else {
                low[v] = low[v].min(disc[w]);
            }
        } else if let Some(p) = parent {
            low[p] = low[p].min(low[v]);
            if p != 0 && low[v] >= disc[p] {
                articulation = true;
            }
        }
    }
    if disc.contains(&usize::MAX) {
        return true;
    }
    articulation || root_children > 1
}
