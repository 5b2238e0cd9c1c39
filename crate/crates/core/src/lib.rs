//! Max-times (tropical) linear algebra for eigencones, one-sided systems and
//! interval boxes.
//!
//! The semiring is the nonnegative reals with `⊕ = max` and `⊗ = ×`. On top of
//! the matrix layer the crate provides:
//!
//! * maximum cycle geometric means, eigenvalues, critical graphs and
//!   generating matrices of eigencones ([`spectral`]);
//! * residuation-based analysis of `A ⊗ x = b` ([`one_sided`]);
//! * projectors onto finitely generated max cones ([`cone`]);
//! * interval boxes and deciders for simple image eigencones and weak
//!   robustness ([`interval`]);
//! * slow, independent reference implementations for testing ([`oracle`]).
//!
//! Indices are 0-based throughout.

use std::collections::BTreeSet;

pub mod cone;
pub mod digraph;
pub mod error;
pub mod interval;
pub mod one_sided;
pub mod oracle;
pub mod spectral;
pub mod tropical;
pub mod verdict;

/// Sorted set of node (row/column) indices.
pub type NodeSet = BTreeSet<usize>;

pub use cone::ConeSpan;
pub use digraph::{Digraph, SccDecomposition};
pub use error::{Error, Result};
pub use interval::{Interval, IntervalBox};
pub use one_sided::{SolutionDescription, SystemAnalysis};
pub use spectral::EigenStructure;
pub use tropical::{Tolerance, TropMatrix, TropVector, DEFAULT_REL_TOL};
pub use verdict::{Condition, Decision, Value, Verdict};
