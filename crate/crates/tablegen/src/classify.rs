//! From enumerated graphs to named knots: build medial diagrams, keep the
//! knot shadows, group by invariant value, refine groups into knots by
//! flype reachability, and order knots by minimal DT code.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use wrp_core::diagram::{build_diagram, Diagram};
use wrp_core::flype::{apply_flype, find_flype_sites};
use wrp_core::invariant::{wrp_of_diagram, WrpPair};
use wrp_core::medial::{alternating_pd, PlaneGraph};
use wrp_core::pd::PdCode;
use wrp_core::DEFAULT_CYCLE_BUDGET;

pub struct Shadow {
    pub pd: PdCode,
    pub code: Vec<u32>,
    pub crossings: usize,
    /// Mirror-agnostic class key.
    pub key: WrpPair,
    pub min_dt: Vec<u32>,
}

/// Minimal Dowker-Thistlethwaite code of a knot diagram's shadow, over
/// all starting passages and both directions.
pub fn minimal_dt(d: &Diagram) -> Vec<u32> {
    assert_eq!(d.component_count(), 1, "DT codes need one component");
    let m = 2 * d.crossing_count();
    // passage t (1-based) is the crossing entered by arc t
    let seq: Vec<usize> = (1..=m as u32).map(|l| d.head_slot(l).0).collect();
    let mut best: Option<Vec<u32>> = None;
    for start in 0..m {
        for dir in [1i64, -1] {
            let pos =
                |t: usize| ((start as i64 + (t as i64 - 1) * dir).rem_euclid(m as i64)) as usize;
            let mut at: FxHashMap<usize, [usize; 2]> = FxHashMap::default();
            for t in 1..=m {
                let entry = at.entry(seq[pos(t)]).or_insert([0, 0]);
                if entry[0] == 0 {
                    entry[0] = t;
                } else {
                    entry[1] = t;
                }
            }
            let mut dt = Vec::with_capacity(m / 2);
            for t in (1..=m).step_by(2) {
                let pair = at[&seq[pos(t)]];
                let partner = if pair[0] == t { pair[1] } else { pair[0] };
                debug_assert_eq!(partner % 2, 0, "planar passages pair odd with even");
                dt.push(partner as u32);
            }
            if best.as_ref().is_none_or(|b| dt < *b) {
                best = Some(dt);
            }
        }
    }
    best.unwrap()
}

fn class_key(pair: &WrpPair) -> WrpPair {
    let m = pair.mirror();
    if *pair <= m {
        pair.clone()
    } else {
        m
    }
}

/// Medial diagrams of the graphs, restricted to knots, one entry per
/// shadow (mirror images share a shadow).
pub fn collect_shadows(graphs: &[PlaneGraph], min_n: usize) -> Vec<Shadow> {
    let mut raw: Vec<Shadow> = graphs
        .par_iter()
        .filter(|g| g.edge_count() >= min_n)
        .filter_map(|g| {
            let pd = alternating_pd(g).ok()?;
            if pd.component_count() != 1 {
                return None;
            }
            let d = build_diagram(&pd).ok()?;
            let report = d.validate_reduced();
            assert!(report.passed(), "2-connected graphs give reduced medials");
            assert!(d.is_alternating());
            let code = d.canonical_code(false, true);
            let out = wrp_of_diagram(&d, DEFAULT_CYCLE_BUDGET).expect("reduced diagram computes");
            let min_dt = minimal_dt(&d);
            Some(Shadow {
                crossings: pd.crossing_count(),
                pd,
                code,
                key: class_key(&out.pair),
                min_dt,
            })
        })
        .collect();
    raw.sort_by(|a, b| a.code.cmp(&b.code));
    raw.dedup_by(|a, b| a.code == b.code);
    raw
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// One knot (up to mirror image): its shadows, value, and canonical DT.
pub struct Knot {
    pub crossings: usize,
    pub shadow_indices: Vec<usize>,
    pub key: WrpPair,
    pub min_dt: Vec<u32>,
}

/// Group shadows by (crossing count, invariant class) and split each group
/// into flype-connected components. By the flyping theorem those
/// components are exactly the knots; value-equal but flype-disconnected
/// groups are mutant families.
pub fn classify_knots(shadows: &[Shadow]) -> Vec<Knot> {
    let index_by_code: FxHashMap<&[u32], usize> = shadows
        .iter()
        .enumerate()
        .map(|(i, s)| (s.code.as_slice(), i))
        .collect();

    let mut groups: BTreeMap<(usize, WrpPair), Vec<usize>> = BTreeMap::new();
    for (i, s) in shadows.iter().enumerate() {
        groups
            .entry((s.crossings, s.key.clone()))
            .or_default()
            .push(i);
    }

    let mut dsu = Dsu::new(shadows.len());
    let edges: Vec<(usize, usize)> = groups
        .values()
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map(|members| {
            let mut local = Vec::new();
            if members.len() > 1 {
                for &i in members.iter() {
                    let d = build_diagram(&shadows[i].pd).expect("stored PD builds");
                    let sites = find_flype_sites(&d).expect("reduced alternating");
                    for site in sites {
                        let flyped = apply_flype(&d, &site).expect("flype applies");
                        let code = flyped.canonical_code(false, true);
                        let j = *index_by_code
                            .get(code.as_slice())
                            .expect("flype result must be an enumerated shadow");
                        assert_eq!(
                            shadows[j].key, shadows[i].key,
                            "flype must preserve the invariant"
                        );
                        local.push((i, j));
                    }
                }
            }
            local
        })
        .collect();
    for (i, j) in edges {
        dsu.union(i, j);
    }

    let mut knots: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..shadows.len() {
        knots.entry(dsu.find(i)).or_default().push(i);
    }
    let mut out: Vec<Knot> = knots
        .into_values()
        .map(|indices| {
            let min_dt = indices
                .iter()
                .map(|&i| shadows[i].min_dt.clone())
                .min()
                .unwrap();
            Knot {
                crossings: shadows[indices[0]].crossings,
                key: shadows[indices[0]].key.clone(),
                shadow_indices: indices,
                min_dt,
            }
        })
        .collect();
    out.sort_by(|a, b| (a.crossings, &a.min_dt).cmp(&(b.crossings, &b.min_dt)));
    out
}

/// The representative diagram written to the table: the shadow achieving
/// the minimal DT, in the chirality whose value is the w-heavier of the
/// two mirrors.
pub fn representative(shadows: &[Shadow], knot: &Knot) -> Diagram {
    let &best = knot
        .shadow_indices
        .iter()
        .min_by_key(|&&i| (&shadows[i].min_dt, &shadows[i].code))
        .unwrap();
    let d = build_diagram(&shadows[best].pd).unwrap();
    let pair = wrp_of_diagram(&d, DEFAULT_CYCLE_BUDGET).unwrap().pair;
    if pair < pair.mirror() {
        d.mirror()
    } else {
        d
    }
}
