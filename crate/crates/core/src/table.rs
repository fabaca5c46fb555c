//! Batch pipeline over knot-table files: compute the invariant and its
//! mirror for every entry, group values into collision classes, and render
//! tables in text, CSV, and JSON.

use rayon::prelude::*;

use crate::diagram::build_diagram;
use crate::invariant::{mirror_wrp, wrp_of_diagram, WrpPair};
use crate::pd::{KnotName, PdCode};

/// One computed row. Failures are recorded, not fatal to the batch.
#[derive(Debug, Clone)]
pub struct TableEntry {
    pub name: KnotName,
    pub pd: PdCode,
    pub result: Result<TableValue, String>,
}

#[derive(Debug, Clone)]
pub struct TableValue {
    pub wrp: WrpPair,
    pub wrp_mirror: WrpPair,
    pub alternating: bool,
    pub prime_warning: bool,
}

impl TableValue {
    pub fn amphichiral_by_wrp(&self) -> bool {
        self.wrp == self.wrp_mirror
    }
}

/// Compute every entry (in parallel; output order is input order).
pub fn compute_table(entries: &[(KnotName, PdCode)], budget: u64) -> Vec<TableEntry> {
    entries
        .par_iter()
        .map(|(name, pd)| compute_entry(name, pd, budget))
        .collect()
}

/// Serial variant, for determinism comparisons.
pub fn compute_table_serial(entries: &[(KnotName, PdCode)], budget: u64) -> Vec<TableEntry> {
    entries
        .iter()
        .map(|(name, pd)| compute_entry(name, pd, budget))
        .collect()
}

fn compute_entry(name: &KnotName, pd: &PdCode, budget: u64) -> TableEntry {
    let result = (|| {
        let d = build_diagram(pd).map_err(|e| e.to_string())?;
        let out = wrp_of_diagram(&d, budget).map_err(|e| e.to_string())?;
        let wrp_mirror = mirror_wrp(&out.pair);
        Ok(TableValue {
            wrp: out.pair,
            wrp_mirror,
            alternating: out.alternating,
            prime_warning: out.prime_warning,
        })
    })();
    TableEntry {
        name: name.clone(),
        pd: pd.clone(),
        result,
    }
}

/// Equivalence classes of entries (and optionally mirrored entries) under
/// equality of the invariant.
#[derive(Debug, Clone)]
pub struct CollisionReport {
    /// Classes with at least two members, in first-seen order.
    pub collisions: Vec<(WrpPair, Vec<KnotName>)>,
    /// Entries whose value is symmetric under the variable swap; with
    /// mirrors included they contribute a single item.
    pub amphichiral_by_wrp: Vec<KnotName>,
    pub class_count: usize,
    pub item_count: usize,
    pub failed: Vec<KnotName>,
}

impl CollisionReport {
    pub fn all_singletons(&self) -> bool {
        self.collisions.is_empty()
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} items, {} distinct values, {} collision classes\n",
            self.item_count,
            self.class_count,
            self.collisions.len()
        ));
        for (pair, names) in &self.collisions {
            let names: Vec<String> = names.iter().map(|n| n.to_string()).collect();
            out.push_str(&format!("{{{}}}  {}\n", names.join(", "), pair.render()));
        }
        if !self.amphichiral_by_wrp.is_empty() {
            let names: Vec<String> = self
                .amphichiral_by_wrp
                .iter()
                .map(|n| n.to_string())
                .collect();
            out.push_str(&format!(
                "value symmetric under w<->r (necessary condition for amphichirality): {}\n",
                names.join(", ")
            ));
        }
        for name in &self.failed {
            out.push_str(&format!("failed: {name}\n"));
        }
        out
    }
}

pub fn collision_report(table: &[TableEntry], include_mirrors: bool) -> CollisionReport {
    let mut classes: Vec<(WrpPair, Vec<KnotName>)> = Vec::new();
    let mut index: std::collections::BTreeMap<WrpPair, usize> = std::collections::BTreeMap::new();
    let mut amphichiral = Vec::new();
    let mut failed = Vec::new();
    let mut items = 0usize;
    for entry in table {
        match &entry.result {
            Err(_) => failed.push(entry.name.clone()),
            Ok(v) => {
                let mut add = |pair: &WrpPair, name: KnotName| {
                    items += 1;
                    match index.get(pair) {
                        Some(&i) => classes[i].1.push(name),
                        None => {
                            index.insert(pair.clone(), classes.len());
                            classes.push((pair.clone(), vec![name]));
                        }
                    }
                };
                add(&v.wrp, entry.name.clone());
                if include_mirrors {
                    if v.amphichiral_by_wrp() {
                        amphichiral.push(entry.name.clone());
                    } else {
                        add(&v.wrp_mirror, entry.name.mirrored());
                    }
                }
            }
        }
    }
    let class_count = classes.len();
    CollisionReport {
        collisions: classes.into_iter().filter(|(_, ns)| ns.len() > 1).collect(),
        amphichiral_by_wrp: amphichiral,
        class_count,
        item_count: items,
        failed,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Txt,
    Csv,
    Json,
}

/// Render the computed table. Text rows are `name<TAB>{p1, p2}`; CSV and
/// JSON carry both the rendered pair and the raw term lists.
pub fn render_table(table: &[TableEntry], format: TableFormat, include_mirrors: bool) -> String {
    match format {
        TableFormat::Txt => {
            let mut out = String::new();
            for e in table {
                match &e.result {
                    Ok(v) => {
                        out.push_str(&format!("{}\t{}\n", e.name, v.wrp.render()));
                        if include_mirrors {
                            out.push_str(&format!(
                                "{}\t{}\n",
                                e.name.mirrored(),
                                v.wrp_mirror.render()
                            ));
                        }
                    }
                    Err(err) => out.push_str(&format!("{}\tERROR: {}\n", e.name, err)),
                }
            }
            out
        }
        TableFormat::Csv => {
            let mut out = String::from("name,status,wrp,wrp_mirror,alternating,prime_warning\n");
            for e in table {
                match &e.result {
                    Ok(v) => out.push_str(&format!(
                        "{},ok,\"{}\",\"{}\",{},{}\n",
                        e.name,
                        v.wrp.render(),
                        v.wrp_mirror.render(),
                        v.alternating,
                        v.prime_warning
                    )),
                    Err(err) => out.push_str(&format!(
                        "{},error,\"{}\",,,\n",
                        e.name,
                        err.replace('"', "'")
                    )),
                }
            }
            out
        }
        TableFormat::Json => {
            let rows: Vec<String> = table
                .iter()
                .map(|e| match &e.result {
                    Ok(v) => format!(
                        "{{\"name\":\"{}\",\"wrp\":{},\"wrp_mirror\":{},\"alternating\":{},\"prime_warning\":{}}}",
                        e.name,
                        v.wrp.render_json(),
                        v.wrp_mirror.render_json(),
                        v.alternating,
                        v.prime_warning
                    ),
                    Err(err) => format!(
                        "{{\"name\":\"{}\",\"error\":{}}}",
                        e.name,
                        serde_json::to_string(err).unwrap()
                    ),
                })
                .collect();
            format!("[{}]\n", rows.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pd::load_table_str;
    use crate::DEFAULT_CYCLE_BUDGET;

    const SMALL: &str = "K3a1\tX(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\nhopf\tX(1,4,2,3) X(3,2,4,1)\n";

    #[test]
    fn compute_and_render() {
        let entries = load_table_str(SMALL).unwrap();
        let table = compute_table(&entries, DEFAULT_CYCLE_BUDGET);
        assert_eq!(table.len(), 2);
        let txt = render_table(&table, TableFormat::Txt, false);
        assert!(txt.starts_with("K3a1\t{w^6, 2w^3 + 3w^2}\n"));
        let report = collision_report(&table, true);
        assert!(report.all_singletons());
        // Serial and parallel agree byte for byte.
        let serial = compute_table_serial(&entries, DEFAULT_CYCLE_BUDGET);
        assert_eq!(
            render_table(&serial, TableFormat::Txt, true),
            render_table(&table, TableFormat::Txt, true)
        );
    }

    #[test]
    fn failures_do_not_abort_batch() {
        // second entry is split
        let text = "good\tX(1,4,2,5) X(3,6,4,1) X(5,2,6,3)\nbad\tX(1,4,2,5) X(3,6,4,1) X(5,2,6,3) X(7,10,8,11) X(9,12,10,7) X(11,8,12,9)\n";
        let entries = load_table_str(text).unwrap();
        let table = compute_table(&entries, DEFAULT_CYCLE_BUDGET);
        assert!(table[0].result.is_ok());
        assert!(table[1].result.is_err());
        let report = collision_report(&table, false);
        assert_eq!(report.failed.len(), 1);
    }

    #[test]
    fn empty_table() {
        let table = compute_table(&[], DEFAULT_CYCLE_BUDGET);
        assert!(table.is_empty());
        assert!(collision_report(&table, true).all_singletons());
    }

    #[test]
    fn mirror_collision_symmetry() {
        let entries = load_table_str(SMALL).unwrap();
        let table = compute_table(&entries, DEFAULT_CYCLE_BUDGET);
        let report = collision_report(&table, true);
        // trefoil is chiral, hopf (all-positive) is chiral: two items each
        assert_eq!(report.item_count, 4);
    }
}
