//! Castelnuovo-Mumford regularity of powers of edge ideals of edge-weighted
//! graphs: an exact Betti-number engine for monomial ideals, closed-form
//! regularity predictors for weighted paths and cycles, the combinatorial and
//! algebraic integral-closure tests, the generator-ordering machinery for
//! cycles with one weighted edge, and a sweep runner comparing them.

pub mod betti;
pub mod closed_forms;
pub mod error;
pub mod graph;
pub mod monomial;
pub mod power;
pub mod sweep;

pub use error::{Error, Result};
