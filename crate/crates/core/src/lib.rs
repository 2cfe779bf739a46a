//! Exact verification of q-log-convexity for triangular arrays
//!
//! ```text
//! T(n,k) = (a1 n + a2 k + a3) T(n-1,k) + (b1 n + b2 k + b3) T(n-1,k-1)
//! ```
//!
//! with row generating polynomials `P_n(q) = sum_k T(n,k) q^k`.
//!
//! All arithmetic is exact ([`Int`] / [`Rat`]). Checks return a [`Verdict`]
//! which, on failure, carries the indices of the first failing inequality.

pub mod exact;
pub mod families;
pub mod io;
pub mod poly;
pub mod recurrence;
pub mod transform;
pub mod triangle;
pub mod verdict;
pub mod verify;

pub use exact::{Int, Rat, Scalar};
pub use families::Family;
pub use poly::{q_dominates, Poly};
pub use recurrence::{check_hypotheses, HypothesisReport, RecurrenceSpec, SignConditions};
pub use transform::{NumSeq, SignPattern};
pub use triangle::{generate, generate_rational, inject_triangle, Source, Triangle};
pub use verdict::{Verdict, Witness};
