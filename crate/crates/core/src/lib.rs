//! Webs for sl3: the Kuperberg bracket, red graphs and G-reductions, and the
//! combinatorial test for indecomposable web-modules.

pub mod error;
pub mod generator;
pub mod kuperberg;
pub mod poly;
pub mod redgraph;
pub mod sign;
pub mod verify;
pub mod web;

pub use error::{Error, FormatError, Result};
pub use poly::{is_monic_of_degree, quantum_integer, LaurentPoly};
pub use sign::{is_admissible_sequence, Sign, SignSequence};
pub use web::{Facing, Web};
