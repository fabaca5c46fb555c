//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line. Fixtures come from data/ (see data/README.md for provenance).

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use wrp_core::cycles::{cycle_sum, oracle_cycle_sum};
use wrp_core::diagram::{build_diagram, build_diagram_shaded, Color, Diagram};
use wrp_core::flype::{apply_flype, find_flype_sites};
use wrp_core::invariant::{mirror_wrp, wrp_of_diagram, WrpPair};
use wrp_core::medial::pd_twist;
use wrp_core::pd::{load_table, parse_pd, pd_torus2, relabel, KnotName, PdCode, TREFOIL_PD};
use wrp_core::poly2::{Monomial2, Poly2};
use wrp_core::table::{collision_report, compute_table};
use wrp_core::tait::{build_tait, consolidate, double, ConsolidatedEdge, ConsolidatedGraph};
use wrp_core::DEFAULT_CYCLE_BUDGET;

fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn load_fixtures(name: &str) -> Vec<(KnotName, PdCode)> {
    load_table(data_path(name)).expect("fixture table loads")
}

fn wrp(d: &Diagram) -> WrpPair {
    wrp_of_diagram(d, DEFAULT_CYCLE_BUDGET)
        .expect("fixture computes")
        .pair
}

fn poly(terms: &[(u32, u32, i64)]) -> Poly2 {
    let mut p = Poly2::zero();
    for &(dw, dr, c) in terms {
        p.add_term(Monomial2::new(dw, dr), c);
    }
    p
}

fn find<'a>(table: &'a [(KnotName, PdCode)], name: &str) -> &'a PdCode {
    &table
        .iter()
        .find(|(n, _)| n.base == name)
        .unwrap_or_else(|| panic!("fixture {name} present"))
        .1
}

#[test]
fn criterion_01_trefoil_exactness() {
    let start = Instant::now();
    let d = build_diagram(&parse_pd(TREFOIL_PD).unwrap()).unwrap();
    let pair = wrp(&d);
    let mirror = wrp(&d.mirror());
    let elapsed = start.elapsed();
    let expected = WrpPair::new(poly(&[(6, 0, 1)]), poly(&[(3, 0, 2), (2, 0, 3)]));
    let expected_mirror = WrpPair::new(poly(&[(0, 6, 1)]), poly(&[(0, 3, 2), (0, 2, 3)]));
    assert_eq!(pair, expected);
    assert_eq!(mirror, expected_mirror);
    assert!(
        elapsed.as_millis() < 10,
        "trefoil took {elapsed:?}, budget 10ms"
    );
    println!(
        "criterion 1: PASS  trefoil = {} / mirror = {} in {elapsed:?}",
        pair.render(),
        mirror.render()
    );
}

#[test]
fn criterion_02_torus_family_formula() {
    let start = Instant::now();
    let mut mismatches = Vec::new();
    for k in 2..=8u32 {
        let d = build_diagram(&pd_torus2(k).unwrap()).unwrap();
        let computed = wrp(&d);
        let formula = WrpPair::new(poly(&[(2 * k, 0, 1)]), poly(&[(k, 0, 2), (2, 0, k as i64)]));
        if computed != formula {
            mismatches.push((k, computed, formula));
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 1, "torus family took {elapsed:?}");
    if mismatches.is_empty() {
        println!("criterion 2: PASS  k=2..8 match the closed formula in {elapsed:?}");
    } else {
        for (k, computed, formula) in &mismatches {
            println!(
                "criterion 2: FAIL at k={k}: computed {} but the stated formula gives {}",
                computed.render(),
                formula.render()
            );
        }
        println!(
            "criterion 2: k=3..8 match exactly; k=2 cannot match: both checkerboard graphs of \
             the 2-crossing diagram are parallel pairs, and the mandatory consolidation step \
             (without which the trefoil value w^6 of criterion 1 is unobtainable) merges each \
             into a single w^2 edge, giving {{w^4, w^4}}. The stated formula's kw^2 term assumes \
             the white graph is a simple k-cycle, which only holds for k >= 3."
        );
        panic!(
            "criterion 2 fails at k=2 (formula defect; see printed analysis and the decisions ledger)"
        );
    }
}

#[test]
fn criterion_03_mutant_collision() {
    let table = load_fixtures("knots_11a_selected.tsv");
    let a = wrp(&build_diagram(find(&table, "K11a19")).unwrap());
    let b = wrp(&build_diagram(find(&table, "K11a25")).unwrap());
    assert_eq!(a, b, "mutant pair must share the invariant");
    println!(
        "criterion 3: PASS  WRP(K11a19) = WRP(K11a25) = {}",
        a.render()
    );
}

#[test]
fn criterion_04_explicit_value_k11a75() {
    let table = load_fixtures("knots_11a_selected.tsv");
    let a = wrp(&build_diagram(find(&table, "K11a75")).unwrap());
    let b = wrp(&build_diagram(find(&table, "K11a102")).unwrap());
    let first = poly(&[
        (4, 4, 2),
        (6, 2, 2),
        (4, 2, 2),
        (6, 0, 1),
        (0, 4, 2),
        (2, 0, 4),
    ]);
    let second = poly(&[
        (6, 2, 2),
        (3, 4, 2),
        (7, 0, 2),
        (4, 2, 2),
        (6, 0, 1),
        (3, 2, 2),
        (1, 2, 2),
        (0, 2, 4),
        (2, 0, 4),
    ]);
    let expected = WrpPair::new(first, second);
    assert_eq!(
        a, expected,
        "K11a75 must equal the pinned reference pair term-by-term"
    );
    assert_eq!(
        b, expected,
        "K11a102 must equal the pinned reference pair term-by-term"
    );
    assert_eq!(
        a.render(),
        "{2r^4w^4 + 2r^2w^6 + 2r^2w^4 + w^6 + 2r^4 + 4w^2, \
         2r^2w^6 + 2r^4w^3 + 2w^7 + 2r^2w^4 + w^6 + 2r^2w^3 + 2r^2w + 4r^2 + 4w^2}"
    );
    println!(
        "criterion 4: PASS  WRP(K11a75) = WRP(K11a102) = {}",
        a.render()
    );
}

#[test]
fn criterion_05_separations() {
    let table = load_fixtures("knots_alt_3_10.tsv");
    let a = wrp(&build_diagram(find(&table, "K10a28")).unwrap());
    let b = wrp(&build_diagram(find(&table, "K10a61")).unwrap());
    assert_ne!(a, b, "K10a28 and K10a61 must be separated");
    let c = wrp(&build_diagram(find(&table, "K10a10")).unwrap());
    assert_ne!(c, mirror_wrp(&c), "K10a10 must differ from its mirror");
    println!("criterion 5: PASS  WRP(K10a28) != WRP(K10a61); WRP(K10a10) != mirror");
}

#[test]
fn criterion_06_table_distinctness() {
    let start = Instant::now();
    let entries = load_fixtures("knots_alt_3_10.tsv");
    assert_eq!(
        entries.len(),
        196,
        "all prime alternating knots up to 10 crossings"
    );
    let table = compute_table(&entries, DEFAULT_CYCLE_BUDGET);
    assert!(table.iter().all(|e| e.result.is_ok()));
    let report = collision_report(&table, true);
    let elapsed = start.elapsed();
    assert!(report.failed.is_empty());
    assert!(
        report.all_singletons(),
        "collisions found: {}",
        report.render_text()
    );
    assert!(elapsed.as_secs() < 60, "table took {elapsed:?}, budget 60s");
    println!(
        "criterion 6: PASS  {} items, {} distinct values, 0 collisions in {elapsed:?}",
        report.item_count, report.class_count
    );
}

#[test]
fn criterion_07_oracle_equivalence() {
    // Every table fixture, both colors.
    let mut entries = load_fixtures("knots_alt_3_10.tsv");
    entries.extend(load_fixtures("knots_11a_selected.tsv"));
    let mut checked = 0usize;
    for (name, pd) in &entries {
        let d = build_diagram(pd).unwrap();
        for color in [Color::Black, Color::White] {
            let cg = consolidate(&build_tait(&d, color));
            let johnson = cycle_sum(&double(&cg), DEFAULT_CYCLE_BUDGET).unwrap();
            let oracle = oracle_cycle_sum(&cg).unwrap();
            assert_eq!(johnson, oracle, "oracle mismatch on {name}");
            checked += 1;
        }
    }
    // And at least 500 random connected weighted graphs up to 9 vertices.
    let mut rng = SplitMix64(0x5eed);
    for case in 0..520 {
        let n = 2 + (rng.next() % 8) as usize;
        let mut pairs = BTreeSet::new();
        for v in 1..n {
            pairs.insert(((rng.next() % v as u64) as usize, v));
        }
        for _ in 0..rng.next() % 6 {
            let u = (rng.next() % n as u64) as usize;
            let v = (rng.next() % n as u64) as usize;
            if u != v {
                pairs.insert((u.min(v), u.max(v)));
            }
        }
        let edges: Vec<ConsolidatedEdge> = pairs
            .into_iter()
            .map(|(u, v)| {
                let dw = (rng.next() % 3) as u32;
                let dr = if dw == 0 {
                    1 + (rng.next() % 2) as u32
                } else {
                    (rng.next() % 2) as u32
                };
                ConsolidatedEdge {
                    u,
                    v,
                    weight: Monomial2::new(dw, dr),
                    crossings: vec![],
                }
            })
            .collect();
        let cg = ConsolidatedGraph {
            vertex_count: n,
            edges,
        };
        let johnson = cycle_sum(&double(&cg), DEFAULT_CYCLE_BUDGET).unwrap();
        let oracle = oracle_cycle_sum(&cg).unwrap();
        assert_eq!(johnson, oracle, "oracle mismatch on random case {case}");
        checked += 1;
    }
    println!("criterion 7: PASS  {checked} graphs, zero mismatches");
}

#[test]
fn criterion_08_flype_invariance() {
    let start = Instant::now();
    let mut entries = load_fixtures("knots_alt_3_10.tsv");
    for k in 2..=8 {
        entries.push((KnotName::new(format!("torus2_{k}")), pd_torus2(k).unwrap()));
    }
    for k in 2..=6 {
        entries.push((KnotName::new(format!("twist_{k}")), pd_twist(k).unwrap()));
    }
    let mut total_sites = 0usize;
    for (name, pd) in &entries {
        let d = build_diagram(pd).unwrap();
        let base = wrp(&d);
        let sites = find_flype_sites(&d).unwrap();
        for site in &sites {
            let flyped =
                apply_flype(&d, site).unwrap_or_else(|e| panic!("flype failed on {name}: {e}"));
            assert_eq!(wrp(&flyped), base, "flype changed the value on {name}");
            let mut s1 = d.signs();
            let mut s2 = flyped.signs();
            s1.sort_unstable();
            s2.sort_unstable();
            assert_eq!(s1, s2, "sign multiset changed on {name}");
        }
        total_sites += sites.len();
    }
    println!(
        "criterion 8: PASS  {} diagrams, {total_sites} flype sites, zero failures in {:?}",
        entries.len(),
        start.elapsed()
    );
}

#[test]
fn criterion_09_relabeling_and_shading_robustness() {
    let entries = load_fixtures("knots_alt_3_10.tsv");
    for (name, pd) in &entries {
        let base = wrp(&build_diagram(pd).unwrap());
        for seed in 0..10u64 {
            let r = relabel(pd, seed ^ 0xabcdef);
            let pair = wrp(&build_diagram(&r).unwrap());
            assert_eq!(pair, base, "relabeling changed the value on {name}");
        }
        let flipped = wrp(&build_diagram_shaded(pd, true).unwrap());
        assert_eq!(flipped, base, "shading flip changed the value on {name}");
    }
    println!(
        "criterion 9: PASS  {} fixtures x 10 relabelings + both shadings",
        entries.len()
    );
}

#[test]
fn criterion_10_twist_knot_report() {
    let formula = |k: u32| -> WrpPair {
        let a = poly(&[(k, 0, 2), (4, 0, 1), (2, 0, k as i64 - 2)]);
        let b = poly(&[(2 * k - 4, 0, 1), (k, 0, 2), (2, 0, 2)]);
        WrpPair::new(a, b)
    };
    // Forget signs: send every monomial w^a r^b to w^(a+b).
    let unsigned = |p: &Poly2| -> Poly2 {
        let mut out = Poly2::zero();
        for (m, c) in p.terms() {
            out.add_term(Monomial2::new(m.total_degree(), 0), *c);
        }
        out
    };
    let mut report = String::new();
    report.push_str(
        "twist knot family: computed values vs the stated closed formulas\n\
         formula(k)        = {2w^k + w^4 + (k-2)w^2, w^(2k-4) + 2w^k + 2w^2}\n\
         formula_mirror(k) = same with w -> r\n\
         pd_twist(k) is the twist knot with k twist crossings plus a\n\
         2-crossing clasp (k+2 crossings in total).\n\n",
    );
    let mut direct = 0usize;
    let mut reconciled = 0usize;
    for k in 2..=6u32 {
        let d = build_diagram(&pd_twist(k).unwrap()).unwrap();
        let computed = wrp(&d);
        let computed_mirror = wrp(&d.mirror());
        assert_eq!(computed_mirror, mirror_wrp(&computed));
        let f = formula(k);
        let fm = mirror_wrp(&f);
        let agrees = computed == f || computed == fm || computed_mirror == f;
        direct += usize::from(agrees);
        report.push_str(&format!(
            "k={k}: computed        = {}\n     computed mirror = {}\n     formula(k={k})    = {}\n",
            computed.render(),
            computed_mirror.render(),
            f.render()
        ));
        if agrees {
            report.push_str("     agreement with the stated formula\n");
        } else {
            report.push_str("     deviation: no mirror of the computed value matches formula(k)\n");
        }
        // Reconciliation: the stated formulas fit the same diagrams when
        // the index counts ALL crossings and every crossing contributes w
        // regardless of its orientation sign.
        let shifted = formula(k + 2);
        let projected = WrpPair::new(unsigned(computed.first()), unsigned(computed.second()));
        if projected == shifted {
            reconciled += 1;
            report.push_str(&format!(
                "     note: with every crossing weighted w, computed equals formula(k={})\n",
                k + 2
            ));
        }
        report.push('\n');
    }
    report.push_str(&format!(
        "summary: {direct}/5 direct agreements; {reconciled}/5 agree with formula(k+2) once \
         signs are forgotten,\nso the stated formulas index twist knots by total crossing \
         number and assume pure-w weights\n(exact for the all-positive odd cases, but the \
         even cases have two negative clasp crossings).\n"
    ));
    let out = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../target/twist_knot_report.txt");
    std::fs::write(&out, &report).expect("write twist report");
    println!(
        "criterion 10: PASS  report generated at {}:\n{report}",
        out.display()
    );
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}
