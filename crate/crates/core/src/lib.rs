//! Exact computations with complete collineations, complete quadrics and
//! complete skew forms.
//!
//! The crate works over the rationals throughout. Its pieces:
//!
//! * [`linalg`]: rational matrices, canonical subspaces of a split space
//!   `V ⊕ W`, meets and joins, kernels and cokernel models.
//! * [`degeneration`]: polynomial matrix families `A(t)`, their valuations and
//!   local Smith exponents at `t = 0`.
//! * [`collineation`]: limits of degenerating families as staged maps
//!   `f₁: U → W`, `f_{j+1}: ker f_j → coker f_j`, plus validation, flags and
//!   the Halphen degeneration.
//! * [`chambers`]: stability for the `C*`-action on `Gr_u(V ⊕ W)`, the
//!   Plücker weight oracle, and dimension bookkeeping for the quotients.
//! * [`chain`]: nodal chains of subspaces and their correspondence with
//!   complete collineations.
//! * [`forms`]: isotropy for the symplectic and symmetric pairings on `V ⊕ V*`.
//! * [`identities`]: the section-count binomial identity and its generating
//!   functions.
//! * [`sample`]: seeded generators for randomized checks.

pub mod chain;
pub mod chambers;
pub mod collineation;
pub mod degeneration;
mod error;
pub mod forms;
pub mod identities;
pub mod json;
pub mod linalg;
pub mod sample;

pub use chain::{
    chain_from_collineation, collineation_from_chain, sink_source, validate_chain, ChainReport,
    NodalChain,
};
pub use chambers::{
    classify, dims_report, plucker_weight_support, semistable_oracle_equivalence, DimReport,
    StabilityReport, StabilityStatus,
};
pub use collineation::{
    flags, halphen_degeneration, limit_collineation, limit_quadric, limit_skew,
    validate_collineation, CompleteCollineation, FlagPair, Flavor, Stage, ValidationReport,
};
pub use degeneration::{
    entry_valuation, local_smith_exponents, minor_valuation, Poly, PolyMatrix, SmithProfile,
};
pub use error::{Error, Result};
pub use forms::{isotropy_check, IsotropyReport, PairingKind};
pub use linalg::{
    canonicalize, meet_join, rank_kernel_cokernel, Rat, RatMatrix, Split, SplitContext, Subspace,
};
