//! Exact verification engines for weighted labeled-tree identities.
//!
//! The crate builds both sides of the weighted Cayley formula and of the
//! weighted plane-tree formula by independent routes (literal enumeration of
//! all `n^{n-2}` trees, a degree-sequence sum, a generating-function point
//! evaluator, and Monte Carlo sampling) and compares them exactly. It can also
//! replay the inductive argument behind the plane-tree formula step by step.
//!
//! ```
//! use cayley_forge::identity::{verify_symbolic, EngineId, IdentityId};
//!
//! let report = verify_symbolic(IdentityId::PlaneWeighted, 4, EngineId::Enumerate).unwrap();
//! assert!(report.passed());
//! ```

pub mod error;
pub mod identity;
pub mod poly;
pub mod sampling;
pub mod tree;

pub use error::{Error, Result};
pub use identity::{EngineId, IdentityId, Verdict, VerificationReport, WeightFamily, Witness};
pub use poly::{EvalPoint, Monomial, Polynomial};
pub use sampling::MonteCarloEstimate;
pub use tree::{LabeledTree, PrueferCode};
