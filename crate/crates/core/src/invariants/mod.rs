//! State-sum and coloring invariants.
//!
//! The Kauffman bracket is evaluated directly on the abstract map: smoothing
//! a crossing re-pairs its four darts, so loop counts need no planar drawing.
//! Quandle colorings label arcs (overstrand to overstrand) with quandle
//! elements; the arc on the right of the overstrand is the product of the arc
//! on its left by the overstrand.

mod bracket;
mod quandle;

pub use bracket::{bracket, bracket_with_cap, f_poly, smoothing_pairs, Smoothing, DEFAULT_STATE_CAP};
pub use quandle::{check_quandle, quandle_colorings, AxiomViolation, Quandle};
