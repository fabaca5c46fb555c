//! Assembly of the WRP invariant: run both checkerboard pipelines, pair
//! the two cycle sums as an unordered (canonically ordered) pair, and
//! provide mirroring and equality.

use serde::Serialize;
use thiserror::Error;

use crate::cycles::{cycle_sum, CycleError};
use crate::diagram::{Color, Diagram, ValidationReport};
use crate::poly2::Poly2;
use crate::tait::{build_tait, consolidate, double};

#[derive(Debug, Error)]
pub enum WrpError {
    #[error("diagram is not reduced: {}", .0.render_text())]
    NotReduced(ValidationReport),
    #[error(transparent)]
    Cycles(#[from] CycleError),
}

/// The unordered pair of cycle-sum polynomials, stored with
/// `first <= second` in the polynomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WrpPair {
    first: Poly2,
    second: Poly2,
}

impl WrpPair {
    pub fn new(a: Poly2, b: Poly2) -> Self {
        if a <= b {
            WrpPair {
                first: a,
                second: b,
            }
        } else {
            WrpPair {
                first: b,
                second: a,
            }
        }
    }

    pub fn first(&self) -> &Poly2 {
        &self.first
    }

    pub fn second(&self) -> &Poly2 {
        &self.second
    }

    /// Variable swap on both members, re-canonicalized.
    pub fn mirror(&self) -> WrpPair {
        WrpPair::new(self.first.swap_vars(), self.second.swap_vars())
    }

    pub fn render(&self) -> String {
        format!("{{{}, {}}}", self.first, self.second)
    }

    pub fn render_json(&self) -> String {
        format!(
            "{{\"first\":{},\"second\":{}}}",
            self.first.term_list_json(),
            self.second.term_list_json()
        )
    }
}

impl std::fmt::Display for WrpPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.render())
    }
}

pub fn mirror_wrp(p: &WrpPair) -> WrpPair {
    p.mirror()
}

pub fn wrp_equal(a: &WrpPair, b: &WrpPair) -> bool {
    a == b
}

/// Computation result: the pair plus the flags callers report on.
#[derive(Debug, Clone, Serialize)]
pub struct WrpOutcome {
    #[serde(skip)]
    pub pair: WrpPair,
    /// False means the value was computed but is not an invariant for
    /// this input (flype invariance only holds for alternating diagrams).
    pub alternating: bool,
    pub prime_warning: bool,
}

/// The invariant of a reduced diagram: cycle sums of the doubled
/// consolidated checkerboard graphs of both colors, canonically ordered.
/// Split or nugatory inputs are rejected; non-alternating reduced inputs
/// are computed but flagged.
pub fn wrp_of_diagram(d: &Diagram, budget: u64) -> Result<WrpOutcome, WrpError> {
    let report = d.validate_reduced();
    if !report.passed() {
        return Err(WrpError::NotReduced(report));
    }
    let black = pipeline(d, Color::Black, budget)?;
    let white = pipeline(d, Color::White, budget)?;
    Ok(WrpOutcome {
        pair: WrpPair::new(black, white),
        alternating: d.is_alternating(),
        prime_warning: report.prime_warning,
    })
}

fn pipeline(d: &Diagram, color: Color, budget: u64) -> Result<Poly2, CycleError> {
    let tait = build_tait(d, color);
    let consolidated = consolidate(&tait);
    let doubled = double(&consolidated);
    cycle_sum(&doubled, budget)
}
