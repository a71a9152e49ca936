//! Virtual links as abstract decorated 4-valent graphs.
//!
//! A virtual link diagram is a 4-valent combinatorial map whose crossings
//! carry over/under decorations, taken up to Reidemeister moves. This crate
//! parses and prints such diagrams, builds their supporting Carter surfaces,
//! enumerates and applies Reidemeister moves on the abstract map, computes
//! state-sum and quandle-coloring invariants, and runs bounded searches for
//! equivalences and genus-minimal representatives.

pub mod codec;
pub mod diagram;
pub mod error;
pub mod generate;
pub mod invariants;
pub mod moves;
pub mod poly;
pub mod search;
pub mod surface;

pub use codec::{emit_gauss, from_diagram, parse_gauss, to_diagram, Role, SignedGaussCode, Token};
pub use diagram::{Crossing, Dart, Diagram, DiagramData, DiagramStats, Sign, Vertex, Violation};
pub use error::{Error, Result};
pub use invariants::{bracket, f_poly, quandle_colorings, Quandle};
pub use moves::{apply_move, enumerate_moves, simplify_greedy, Location, MoveKind, MoveSite, Side};
pub use poly::LaurentPoly;
pub use search::{
    classify_corpus, equivalent, minimize, orbit, CorpusReport, InvariantProfile, Minimized, Orbit,
    SearchBounds, SearchOutcome, Verdict,
};
pub use surface::RibbonSurface;

/// Parses a signed Gauss code straight into a diagram.
pub fn diagram_from_gauss(text: &str) -> Result<Diagram> {
    Ok(to_diagram(&parse_gauss(text)?))
}
