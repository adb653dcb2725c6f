//! Weighted Davenport constants of finite abelian groups.
//!
//! For a finite abelian group `G` and a set `A` of integer weights, the
//! `A`-weighted Davenport constant `Dav_A(G)` is the smallest `l` such that
//! every sequence of `l` elements of `G` (repetitions allowed) has a nonempty
//! subsequence `g_1, ..., g_k` and weights `a_1, ..., a_k` in `A` with
//! `a_1 g_1 + ... + a_k g_k = 0`. The classical constant is `A = {1}`; the
//! plus-minus constant is `A = {1, -1}`; the fully weighted constant takes
//! every nonzero residue modulo the exponent.
//!
//! The crate computes exact values where closed rules or exhaustive search
//! settle them, and certified lower and upper bounds everywhere else:
//!
//! * [`group`] - finite abelian groups in invariant factor form, element
//!   arithmetic, isomorphism class enumeration, and direct sum decompositions.
//! * [`weights`] - weight sets modulo the exponent and the gcd reduction that
//!   maps a weighted problem to an equivalent one on a smaller group.
//! * [`sumset`] - weighted subset sum bitmaps over a group.
//! * [`search`] - exhaustive search for maximum dissociated sequences, with a
//!   deterministic witness contract and optional data parallelism.
//! * [`brute`] - an independent brute force evaluator for tiny groups, used
//!   as an oracle against the optimized search.
//! * [`bounds`] - closed form lower and upper bounds and the exact value
//!   dispatcher.
//! * [`construct`] - explicit dissociated sequence builders whose output is
//!   verified, yielding machine checkable lower bound certificates.
//! * [`certificate`] - the certificate format and its verifier.
//! * [`report`] - the isomorphism class table runner behind the CLI.
//!
//! All logarithm comparisons in the bound rules are exact integer tests; no
//! floating point enters any mathematical decision.

pub mod bounds;
pub mod brute;
pub mod certificate;
pub mod construct;
mod error;
mod factor;
pub mod group;
pub mod intlog;
pub mod report;
pub mod search;
pub mod sumset;
pub mod weights;

pub use error::Error;

/// Crate wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
