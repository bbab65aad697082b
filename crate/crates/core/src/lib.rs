//! Exact domination polynomials for k-tree related graph families.
//!
//! `D(G, x) = Σ d(G, i) x^i` counts the dominating sets of `G` by size. This
//! crate computes it two ways: by exhaustive enumeration ([`oracle`]), and
//! by the closed forms and recurrences known for complete graphs, paths,
//! cycles, stars, k-paths, k-stars, k-wheels, joins, unions and coronas
//! ([`recurrence`]). The two are compared coefficient by coefficient, and
//! [`roots`] locates the complex zeros numerically.
//!
//! ```
//! use domipoly::{families::{generate, FamilySpec}, oracle, recurrence};
//!
//! let spec = FamilySpec::kstar(2, 4);
//! let by_enumeration = oracle::domination_polynomial(&generate(&spec).unwrap()).unwrap();
//! assert_eq!(by_enumeration, recurrence::d_kstar(2, 4).unwrap());
//! assert_eq!(by_enumeration.to_string(), "x^4 + 4x^3 + 6x^2 + 2x");
//! ```

pub mod error;
pub mod families;
pub mod graph;
pub mod oracle;
mod par;
pub mod poly;
pub mod recurrence;
pub mod roots;

pub use error::{Error, Result};
pub use families::{FamilyKind, FamilySpec};
pub use graph::{Graph, VertexSet};
pub use poly::Polynomial;
pub use recurrence::{CheckReport, MethodTag};
pub use roots::RootSet;
