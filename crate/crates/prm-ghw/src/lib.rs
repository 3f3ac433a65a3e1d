//! Binary projective Reed-Muller codes and their generalized Hamming weight
//! (GHW) hierarchy.
//!
//! The ν-th GHW of a linear code is the smallest support size of any
//! ν-dimensional subcode. For the binary projective Reed-Muller code this
//! crate computes the full hierarchy by several independent routes and
//! cross-validates them:
//!
//! * [`ghw::ghw_closed`] — block length minus the shortening reduction;
//! * [`ghw::ghw_canonical`] — a nested-binomial sum over the canonical form;
//! * [`ghw::ghw_sigma`] — the support of an anti-lexicographic monomial
//!   prefix, measured on the generator matrix and on the subset lattice;
//! * [`oracle::ghw_oracle`] — exhaustive enumeration of all ν-dimensional
//!   subcodes, straight from the definition.
//!
//! Supporting machinery lives in [`gf2`] (bit linear algebra and subspace
//! enumeration), [`subsets`] (co-lex/anti-lex orders and upward shadows) and
//! [`prm`] (code construction). [`verify`] bundles the cross-checks into
//! reusable suites.

pub mod error;
pub mod gf2;
pub mod ghw;
pub mod oracle;
pub mod prm;
pub mod subsets;
pub mod verify;

pub use error::{Error, Result};
