//! Knotoid diagrams and their invariants.

pub mod cli;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod group;
pub mod invariants;
pub mod moves;
pub mod poly;
pub mod resolve;
pub mod skein;

pub use diagram::{Diagram, Role, ShortcutPath, Step, Surface};
pub use error::{Error, Result};
pub use poly::{LaurentPoly, Span, Var};
