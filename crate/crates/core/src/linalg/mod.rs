//! Exact rational linear algebra and the subspace lattice of a split space.

mod matrix;
mod rat;
mod subspace;

pub use matrix::RatMatrix;
pub use rat::{parse_rat, rat, Rat};
pub use subspace::{
    canonicalize, meet_join, rank_kernel_cokernel, CokernelData, Split, SplitContext, Subspace,
};
