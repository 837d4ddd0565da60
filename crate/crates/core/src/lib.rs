//! Exact homological algebra over prime fields.
//!
//! The crate builds upper-triangular gluings `tri(S, R, M)` of
//! finite-dimensional algebras, realizes their modules as triples, checks
//! the compactness/tilting/Ext-vanishing hypotheses under which the glued
//! derived categories are equivalent, executes the equivalence on complexes
//! of triples, and certifies the outcome through derived invariants
//! (Cartan data, centres, endomorphism cohomology).

pub mod algebra;
pub mod analysis;
pub mod catalog;
pub mod complex;
pub mod dualising;
pub mod engine;
pub mod error;
pub mod fp;
pub mod homalg;
pub mod hypothesis;
pub mod instance;
pub mod intmat;
pub mod iso;
pub mod mat;
pub mod module;
pub mod quiver;
pub mod report;
pub mod samples;
pub mod triangular;

pub use error::Error;
