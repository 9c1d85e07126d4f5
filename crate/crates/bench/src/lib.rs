//! Fixed inputs for the benchmarks, generated from fixed seeds.

use clm_core::sample;
use clm_core::{PolyMatrix, RatMatrix, SplitContext};

pub fn dense_matrix(n: usize, seed: u64) -> RatMatrix {
    sample::random_matrix(&mut sample::rng(seed), n, n, 0.1)
}

pub fn smith_family(n: usize, seed: u64) -> PolyMatrix {
    sample::random_family(&mut sample::rng(seed), n, n, 3)
}

pub fn limit_input(n: usize, seed: u64) -> (SplitContext, PolyMatrix) {
    let ctx = SplitContext::new(n, n, n).expect("valid context");
    let fam = sample::full_rank_family(&mut sample::rng(seed), &ctx, 3);
    (ctx, fam)
}
