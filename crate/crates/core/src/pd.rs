//! Planar-diagram (PD) codes: parsing, validation, serialization, and the
//! table file format.
//!
//! A PD code lists one `X(a,b,c,d)` tuple per crossing: the four incident
//! arc labels counterclockwise, starting at the incoming under-strand.
//! Arc labels run 1..=2n and ascend cyclically along each link component,
//! one contiguous label interval per component; the numbering is what
//! fixes the orientation of every component.

use std::fmt;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PdError {
    #[error("empty diagram")]
    Empty,
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("arc label {label} occurs {count} times (every label must occur exactly twice)")]
    Multiplicity { label: u32, count: usize },
    #[error("arc labels must be exactly 1..={max}, found {label}")]
    LabelRange { label: u32, max: u32 },
    #[error("component labels {{{lo}..{hi}}} are not one contiguous cyclic interval")]
    NonContiguousComponent { lo: u32, hi: u32 },
    #[error("labels along a component neither ascend nor descend cyclically (near arc {label})")]
    NonConsecutiveLabels { label: u32 },
    #[error("under-strand at crossing {crossing} does not run a -> c under the label orientation")]
    UnderStrandMismatch { crossing: usize },
    #[error("over-strand at crossing {crossing} has inconsistent orientation")]
    OverStrandMismatch { crossing: usize },
    #[error("parameter out of range: {0}")]
    Parameter(String),
}

/// One end of an arc: (crossing index, port 0..4).
pub type Slot = (usize, u8);

/// Orientation data recovered from the labels: where each arc enters and
/// leaves, and which over-port is incoming at each crossing.
#[derive(Debug, Clone)]
pub(crate) struct StrandInfo {
    /// Per arc label (index label-1): slot where the arc enters a crossing.
    pub head: Vec<Slot>,
    /// Per arc label: slot where the arc leaves a crossing.
    pub tail: Vec<Slot>,
    /// Per crossing: 1 if the over-strand enters at port 1, else 3.
    pub over_in: Vec<u8>,
    /// Label intervals (lo, hi), one per component, sorted by lo.
    pub components: Vec<(u32, u32)>,
}

/// A validated PD code.
#[derive(Debug, Clone)]
pub struct PdCode {
    crossings: Vec<[u32; 4]>,
    strands: StrandInfo,
}

impl PartialEq for PdCode {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
    }
}
impl Eq for PdCode {}

impl PdCode {
    pub fn new(crossings: Vec<[u32; 4]>) -> Result<Self, PdError> {
        let strands = analyze(&crossings)?;
        Ok(PdCode { crossings, strands })
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn component_count(&self) -> usize {
        self.strands.components.len()
    }

    pub(crate) fn strands(&self) -> &StrandInfo {
        &self.strands
    }
}

impl fmt::Display for PdCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "X({},{},{},{})", x[0], x[1], x[2], x[3])?;
        }
        Ok(())
    }
}

/// Recover components, arc directions and over-strand directions from the
/// tuples. The unoriented strand trace pairs ports 0<->2 and 1<->3 at each
/// crossing; label order then orients each component (two-arc components,
/// where both cyclic orders ascend, are anchored by the under-strand rule
/// that port 0 is always incoming, with the traced direction as the final
/// tie-break).
pub(crate) fn analyze(crossings: &[[u32; 4]]) -> Result<StrandInfo, PdError> {
    let n = crossings.len();
    if n == 0 {
        return Err(PdError::Empty);
    }
    let max = 2 * n as u32;

    let mut occ: Vec<Vec<Slot>> = vec![Vec::new(); 2 * n];
    for (ci, x) in crossings.iter().enumerate() {
        for (p, &label) in x.iter().enumerate() {
            if label == 0 || label > max {
                return Err(PdError::LabelRange { label, max });
            }
            occ[(label - 1) as usize].push((ci, p as u8));
        }
    }
    for (i, slots) in occ.iter().enumerate() {
        if slots.len() != 2 {
            return Err(PdError::Multiplicity {
                label: i as u32 + 1,
                count: slots.len(),
            });
        }
    }

    let other_slot = |label: u32, slot: Slot| -> Slot {
        let slots = &occ[(label - 1) as usize];
        if slots[0] == slot {
            slots[1]
        } else {
            slots[0]
        }
    };

    // Unoriented trace: cycles of (arc, entry slot).
    let mut seen = vec![false; 2 * n];
    let mut cycles: Vec<Vec<(u32, Slot)>> = Vec::new();
    for start in 1..=max {
        if seen[(start - 1) as usize] {
            continue;
        }
        let start_entry = occ[(start - 1) as usize][0];
        let mut cyc = Vec::new();
        let mut label = start;
        let mut entry = start_entry;
        loop {
            seen[(label - 1) as usize] = true;
            cyc.push((label, entry));
            let (ci, p) = entry;
            let exit_port = (p + 2) % 4;
            let next_label = crossings[ci][exit_port as usize];
            let next_entry = other_slot(next_label, (ci, exit_port));
            label = next_label;
            entry = next_entry;
            if label == start && entry == start_entry {
                break;
            }
        }
        cycles.push(cyc);
    }

    let mut head: Vec<Slot> = vec![(usize::MAX, 0); 2 * n];
    let mut tail: Vec<Slot> = vec![(usize::MAX, 0); 2 * n];
    let mut components = Vec::new();

    for cyc in &cycles {
        let labels: Vec<u32> = cyc.iter().map(|(l, _)| *l).collect();
        let lo = *labels.iter().min().unwrap();
        let hi = *labels.iter().max().unwrap();
        let m = labels.len() as u32;
        if hi - lo + 1 != m {
            return Err(PdError::NonContiguousComponent { lo, hi });
        }
        let inc = |l: u32| if l == hi { lo } else { l + 1 };
        let ascending = labels
            .iter()
            .zip(labels.iter().cycle().skip(1))
            .all(|(a, b)| inc(*a) == *b);
        let descending = labels
            .iter()
            .zip(labels.iter().cycle().skip(1))
            .all(|(a, b)| inc(*b) == *a);

        // Orientation: true = travel as traced, false = reversed.
        let fill = |as_traced: bool, head: &mut Vec<Slot>, tail: &mut Vec<Slot>| {
            for (l, entry) in cyc {
                let idx = (l - 1) as usize;
                if as_traced {
                    head[idx] = *entry;
                    tail[idx] = other_slot(*l, *entry);
                } else {
                    tail[idx] = *entry;
                    head[idx] = other_slot(*l, *entry);
                }
            }
        };
        // Count slots where an under-in port (port 0) would hold an
        // outgoing arc: zero for the true orientation.
        let violations = |as_traced: bool| -> usize {
            cyc.iter()
                .map(|(l, entry)| {
                    let h = if as_traced {
                        *entry
                    } else {
                        other_slot(*l, *entry)
                    };
                    let t = if as_traced {
                        other_slot(*l, *entry)
                    } else {
                        *entry
                    };
                    usize::from(t.1 == 0) + usize::from(h.1 == 2)
                })
                .sum()
        };

        let as_traced = match (ascending, descending) {
            (true, false) => true,
            (false, true) => false,
            (true, true) => {
                // 1- or 2-arc component: both label orders ascend.
                let v_fwd = violations(true);
                let v_rev = violations(false);
                v_fwd <= v_rev
            }
            (false, false) => {
                return Err(PdError::NonConsecutiveLabels { label: lo });
            }
        };
        fill(as_traced, &mut head, &mut tail);
        components.push((lo, hi));
    }
    components.sort_unstable();

    // Under-strand check: port 0 incoming, port 2 outgoing at every crossing.
    for (ci, x) in crossings.iter().enumerate() {
        let a = x[0];
        let c = x[2];
        if head[(a - 1) as usize] != (ci, 0) || tail[(c - 1) as usize] != (ci, 2) {
            return Err(PdError::UnderStrandMismatch { crossing: ci });
        }
    }

    // Over-strand direction per crossing.
    let mut over_in = vec![0u8; n];
    for (ci, x) in crossings.iter().enumerate() {
        let b = x[1];
        let d = x[3];
        let b_in = head[(b - 1) as usize] == (ci, 1);
        let d_in = head[(d - 1) as usize] == (ci, 3);
        let b_out = tail[(b - 1) as usize] == (ci, 1);
        let d_out = tail[(d - 1) as usize] == (ci, 3);
        over_in[ci] = match (b_in && d_out, d_in && b_out) {
            (true, false) => 1,
            (false, true) => 3,
            _ => return Err(PdError::OverStrandMismatch { crossing: ci }),
        };
    }

    Ok(StrandInfo {
        head,
        tail,
        over_in,
        components,
    })
}

/// Parse the `X(a,b,c,d)` grammar. Crossings are separated by whitespace
/// and/or commas; `#` starts a comment running to end of line.
pub fn parse_pd(text: &str) -> Result<PdCode, PdError> {
    struct Cursor<'a> {
        rest: std::iter::Peekable<std::str::Chars<'a>>,
        line: usize,
        col: usize,
    }
    impl Cursor<'_> {
        fn bump(&mut self) -> Option<char> {
            let c = self.rest.next()?;
            if c == '\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
            Some(c)
        }
        fn skip_filler(&mut self) {
            while let Some(&c) = self.rest.peek() {
                if c == '#' {
                    while let Some(&c2) = self.rest.peek() {
                        if c2 == '\n' {
                            break;
                        }
                        self.bump();
                        let _ = c2;
                    }
                } else if c.is_whitespace() || c == ',' {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        fn skip_ws(&mut self) {
            while let Some(&c) = self.rest.peek() {
                if c.is_whitespace() {
                    self.bump();
                } else {
                    break;
                }
            }
        }
        fn err(&self, msg: impl Into<String>) -> PdError {
            PdError::Syntax {
                line: self.line,
                col: self.col,
                msg: msg.into(),
            }
        }
        fn expect(&mut self, want: char) -> Result<(), PdError> {
            match self.bump() {
                Some(c) if c == want => Ok(()),
                Some(c) => Err(self.err(format!("expected '{want}', found '{c}'"))),
                None => Err(self.err(format!("expected '{want}', found end of input"))),
            }
        }
        fn number(&mut self) -> Result<u32, PdError> {
            let mut digits = String::new();
            while let Some(&c) = self.rest.peek() {
                if c.is_ascii_digit() {
                    digits.push(c);
                    self.bump();
                } else {
                    break;
                }
            }
            if digits.is_empty() {
                return Err(self.err("expected an arc label"));
            }
            digits
                .parse()
                .map_err(|_| self.err(format!("label '{digits}' out of range")))
        }
    }

    let mut cur = Cursor {
        rest: text.chars().peekable(),
        line: 1,
        col: 1,
    };
    let mut crossings = Vec::new();
    loop {
        cur.skip_filler();
        if cur.rest.peek().is_none() {
            break;
        }
        match cur.bump() {
            Some('X') => {}
            Some(c) => return Err(cur.err(format!("expected 'X', found '{c}'"))),
            None => break,
        }
        cur.expect('(')?;
        let mut tuple = [0u32; 4];
        for (i, slot) in tuple.iter_mut().enumerate() {
            cur.skip_ws();
            *slot = cur.number()?;
            cur.skip_ws();
            if i < 3 {
                cur.expect(',')?;
            }
        }
        cur.expect(')')?;
        crossings.push(tuple);
    }
    PdCode::new(crossings)
}

/// Round-trips through `parse_pd`; crossing order preserved.
pub fn serialize_pd(code: &PdCode) -> String {
    code.to_string()
}

/// Standard reduced alternating diagram of the torus link T(2,k), oriented
/// so that every crossing is positive.
pub fn pd_torus2(k: u32) -> Result<PdCode, PdError> {
    if k < 2 {
        return Err(PdError::Parameter(format!(
            "torus2 requires k >= 2, got {k}"
        )));
    }
    let mut crossings = Vec::with_capacity(k as usize);
    if k % 2 == 1 {
        // One component of 2k arcs, labels 0-based here then shifted by 1.
        for i in 0..k {
            let a = 2 * i;
            let b = (2 * i + k) % (2 * k);
            let c = 2 * i + 1;
            let d = (2 * i + k + 1) % (2 * k);
            crossings.push([a + 1, b + 1, c + 1, d + 1]);
        }
    } else {
        // Two components: X = 1..=k, Y = k+1..=2k.
        let x = |i: u32| (i % k) + 1;
        let y = |i: u32| k + (i % k) + 1;
        for i in 0..k {
            if i % 2 == 0 {
                crossings.push([y(i), x(i), y(i + 1), x(i + 1)]);
            } else {
                crossings.push([x(i), y(i), x(i + 1), y(i + 1)]);
            }
        }
    }
    PdCode::new(crossings)
}

/// Name of a knot-table entry, e.g. `K3a1`; `mirror` marks the mirrored
/// companion in reports (displayed with an `m` suffix).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KnotName {
    pub base: String,
    pub mirror: bool,
}

impl KnotName {
    pub fn new(base: impl Into<String>) -> Self {
        KnotName {
            base: base.into(),
            mirror: false,
        }
    }

    pub fn mirrored(&self) -> Self {
        KnotName {
            base: self.base.clone(),
            mirror: !self.mirror,
        }
    }
}

impl fmt::Display for KnotName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.base, if self.mirror { "m" } else { "" })
    }
}

#[derive(Debug, Error)]
pub enum TableLoadError {
    #[error("i/o error reading {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: missing tab separator")]
    MissingField { line: usize },
    #[error("line {line}: empty knot name")]
    EmptyName { line: usize },
    #[error("line {line}: duplicate name {name}")]
    DuplicateName { line: usize, name: String },
    #[error("line {line}: {source}")]
    Pd {
        line: usize,
        #[source]
        source: PdError,
    },
}

/// Load a `name<TAB>pd-code` table file. `#` comments and blank lines are
/// skipped; CRLF accepted.
pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<(KnotName, PdCode)>, TableLoadError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| TableLoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    load_table_str(&text)
}

pub fn load_table_str(text: &str) -> Result<Vec<(KnotName, PdCode)>, TableLoadError> {
    let mut out: Vec<(KnotName, PdCode)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches('\r');
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        };
        if line.trim().is_empty() {
            continue;
        }
        let (name, pd_text) = line
            .split_once('\t')
            .ok_or(TableLoadError::MissingField { line: line_no })?;
        let name = name.trim();
        if name.is_empty() {
            return Err(TableLoadError::EmptyName { line: line_no });
        }
        if !seen.insert(name.to_string()) {
            return Err(TableLoadError::DuplicateName {
                line: line_no,
                name: name.to_string(),
            });
        }
        let pd = parse_pd(pd_text).map_err(|source| TableLoadError::Pd {
            line: line_no,
            source,
        })?;
        out.push((KnotName::new(name), pd));
    }
    Ok(out)
}

/// Relabel a PD code without changing the diagram: permute crossing order,
/// cyclically shift the labels inside each component, and permute the
/// component label blocks. Deterministic in `seed`.
pub fn relabel(pd: &PdCode, seed: u64) -> PdCode {
    let mut rng = SplitMix64(seed);
    let comps = pd.strands().components.clone();
    let k = comps.len();

    let mut comp_order: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        let j = (rng.next() % (i as u64 + 1)) as usize;
        comp_order.swap(i, j);
    }
    // Map old label -> new label.
    let total: u32 = comps.iter().map(|(lo, hi)| hi - lo + 1).sum();
    let mut map = vec![0u32; total as usize + 1];
    let mut next_lo = 1u32;
    for &ci in &comp_order {
        let (lo, hi) = comps[ci];
        let m = hi - lo + 1;
        let shift = rng.next() % m as u64;
        for off in 0..m {
            let old = lo + off;
            let new = next_lo + ((off as u64 + shift) % m as u64) as u32;
            map[old as usize] = new;
        }
        next_lo += m;
    }

    let mut crossings: Vec<[u32; 4]> = pd
        .crossings()
        .iter()
        .map(|x| {
            [
                map[x[0] as usize],
                map[x[1] as usize],
                map[x[2] as usize],
                map[x[3] as usize],
            ]
        })
        .collect();
    for i in (1..crossings.len()).rev() {
        let j = (rng.next() % (i as u64 + 1)) as usize;
        crossings.swap(i, j);
    }
    PdCode::new(crossings).expect("relabeling preserves validity")
}

/// Reverse the orientation of every component at once (for sign-invariance
/// checks): each tuple restarts at the old under-out port and labels are
/// renumbered along the reversed travel.
pub fn reverse_all(pd: &PdCode) -> PdCode {
    let comps = &pd.strands().components;
    let map = |l: u32| -> u32 {
        let &(lo, hi) = comps
            .iter()
            .find(|(lo, hi)| (*lo..=*hi).contains(&l))
            .unwrap();
        lo + (hi - l)
    };
    let crossings = pd
        .crossings()
        .iter()
        .map(|x| [map(x[2]), map(x[3]), map(x[0]), map(x[1])])
        .collect();
    PdCode::new(crossings).expect("orientation reversal preserves validity")
}

pub(crate) struct SplitMix64(pub u64);

impl SplitMix64 {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }
}

pub const TREFOIL_PD: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
