//! Pattern distributions over 132- and 123-avoiding permutations.
//!
//! The crate computes generating polynomials of pattern-occurrence statistics
//! through memoized recursions, checks them against direct enumeration, and
//! maps avoiders to Dyck paths.
//!
//! ```
//! use patternlab::{FamilyId, Parallelism};
//!
//! let table = FamilyId::Fh.build(3, Parallelism::Sequential).unwrap();
//! assert_eq!(table.to_text(3), "x1^3 + x1^2*x2 + 2*x1*x2^2 + x2^3");
//! ```

pub mod dyck;
pub mod error;
pub mod family;
pub mod oracle;
pub mod par;
pub mod perm;
pub mod poly;
pub mod popularity;
pub mod rec123;
pub mod rec132;

pub use dyck::{phi, phi_inv, psi, psi_inv, DyckPath, PathStats, Step};
pub use error::{Error, Result};
pub use family::{FamilyId, FamilyTable, Gamma3};
pub use par::Parallelism;
pub use perm::{enumerate_avoiders, reduce, PatternSet, Permutation, Symmetry};
pub use poly::{Exponent, MultiPoly, SeriesZ, Substitution};
