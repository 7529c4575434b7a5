//! Hilbert depth of graded modules over `F[X, Y]` with coprime weights.
//!
//! A nonnegative series `H` over the pair `(α, β)` has positive Hilbert depth
//! exactly when it satisfies condition (★) for every fundamental couple. This
//! crate enumerates the couples, decides (★) exactly, and builds explicit
//! decompositions into shifted atoms `t^k / ∏_{g ∈ G} (1 − t^g)`.

pub mod couples;
pub mod decomp;
pub mod error;
pub mod json;
pub mod laurent;
pub mod oracle;
pub mod semigroup;
pub mod series;
pub mod star;

pub use couples::{BalancedCouple, FundamentalCouple};
pub use decomp::{
    decompose, decompose_dim1, hilbert_depth, nu, pd, verify_decomposition, witness_module,
    Decomposition, DepthReport, Input, PdResult, Provenance,
};
pub use error::{Error, Result};
pub use laurent::LaurentPoly;
pub use semigroup::{GapOrder, GapPresentation, Generator, SemigroupPair};
pub use series::{to_rational, Denom, RationalSeries, Term, TermList};
pub use star::{check_star, CriticalHit, StarChecker, StarVerdict, Violation};
