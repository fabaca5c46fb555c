//! WRP invariant of alternating knots and links.
//!
//! The invariant of a reduced diagram is the unordered pair of cycle-sum
//! polynomials of its two checkerboard (Tait) graphs: weight each crossing
//! `w` (positive) or `r` (negative), consolidate parallel edges
//! multiplicatively, double every edge into twin opposite arcs, and sum
//! the weight products over all simple directed cycles.
//!
//! Pipeline: [`pd`] parses PD codes, [`diagram`] builds the planar
//! structure, [`tait`] derives the graph stages, [`cycles`] enumerates
//! cycles, [`invariant`] assembles the pair. [`flype`] applies flype moves
//! for empirical invariance testing and [`table`] drives batch runs.

pub mod cycles;
pub mod diagram;
pub mod flype;
pub mod invariant;
pub mod medial;
pub mod pd;
pub mod poly2;
pub mod table;
pub mod tait;

pub use cycles::{cycle_sum, oracle_cycle_sum, simple_directed_cycles, DEFAULT_CYCLE_BUDGET};
pub use diagram::{build_diagram, Color, Diagram};
pub use invariant::{mirror_wrp, wrp_equal, wrp_of_diagram, WrpOutcome, WrpPair};
pub use pd::{load_table, parse_pd, pd_torus2, serialize_pd, KnotName, PdCode};
pub use poly2::{Monomial2, Poly2};
