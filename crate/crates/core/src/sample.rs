//! Seeded generators for randomized checks and sweeps.
//!
//! Everything is driven by a [`ChaCha8Rng`], so a seed reproduces the same
//! inputs on every platform. Entries are small integers with a fair share of
//! zeros; special positions (nonzero `U ∩ V`, repeated Smith exponents, …)
//! turn up often enough to be exercised.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::collineation::{CompleteCollineation, Flavor};
use crate::degeneration::{Poly, PolyMatrix};
use crate::linalg::{rat, Rat, RatMatrix, Split, SplitContext, Subspace};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Integer in `[-bound, bound]`, zero with probability about `zero_prob`.
pub fn small_int(rng: &mut SampleRng, bound: i64, zero_prob: f64) -> i64 {
    if rng.gen_bool(zero_prob) {
        0
    } else {
        loop {
            let x = rng.gen_range(-bound..=bound);
            if x != 0 {
                return x;
            }
        }
    }
}

pub fn small_rat(rng: &mut SampleRng, bound: i64, zero_prob: f64) -> Rat {
    let n = small_int(rng, bound, zero_prob);
    let d = if rng.gen_bool(0.25) {
        rng.gen_range(2..=3)
    } else {
        1
    };
    rat(n, d)
}

pub fn random_matrix(rng: &mut SampleRng, rows: usize, cols: usize, zero_prob: f64) -> RatMatrix {
    let entries = (0..rows * cols)
        .map(|_| small_rat(rng, 3, zero_prob))
        .collect();
    RatMatrix::new(rows, cols, entries).expect("shape")
}

/// Random integer matrix of exact rank `r`.
pub fn matrix_of_rank(rng: &mut SampleRng, rows: usize, cols: usize, r: usize) -> RatMatrix {
    assert!(r <= rows.min(cols));
    loop {
        let a = random_matrix(rng, rows, r, 0.3);
        let b = random_matrix(rng, r, cols, 0.3);
        let m = a.mul(&b).expect("shapes agree");
        if m.rank() == r {
            return m;
        }
    }
}

pub fn invertible_matrix(rng: &mut SampleRng, n: usize) -> RatMatrix {
    matrix_of_rank(rng, n, n, n)
}

pub fn random_context(rng: &mut SampleRng, max_dim: usize, max_u: usize) -> SplitContext {
    let dim_v = rng.gen_range(1..=max_dim);
    let dim_w = rng.gen_range(1..=max_dim);
    let u = rng.gen_range(1..=dim_v.min(dim_w).min(max_u));
    SplitContext::new(dim_v, dim_w, u).expect("u in range")
}

/// Random `dim`-dimensional subspace of `V ⊕ W`. Half the time it is built
/// from prescribed pieces inside `V` and `W` so that the intersections are
/// nonzero.
pub fn random_subspace(rng: &mut SampleRng, split: Split, dim: usize) -> Subspace {
    assert!(dim <= split.ambient());
    loop {
        let m = if rng.gen_bool(0.5) {
            random_matrix(rng, dim, split.ambient(), 0.4)
        } else {
            let a = rng.gen_range(0..=dim.min(split.dim_v));
            let b = rng.gen_range(0..=(dim - a).min(split.dim_w));
            let mut rows = Vec::with_capacity(dim);
            for _ in 0..a {
                let mut r: Vec<Rat> = (0..split.dim_v).map(|_| small_rat(rng, 3, 0.3)).collect();
                r.extend(std::iter::repeat_n(Rat::zero(), split.dim_w));
                rows.push(r);
            }
            for _ in 0..b {
                let mut r = vec![Rat::zero(); split.dim_v];
                r.extend((0..split.dim_w).map(|_| small_rat(rng, 3, 0.3)));
                rows.push(r);
            }
            for _ in a + b..dim {
                rows.push(
                    (0..split.ambient())
                        .map(|_| small_rat(rng, 3, 0.3))
                        .collect(),
                );
            }
            RatMatrix::from_rows(rows, split.ambient()).expect("row length")
        };
        if m.rank() == dim {
            return Subspace::span(&m, split.ambient())
                .expect("width")
                .with_split(split)
                .expect("ambient");
        }
    }
}

/// Rational σ in `[lo, hi]` with denominator at most 4, integers included.
pub fn random_sigma(rng: &mut SampleRng, lo: i64, hi: i64) -> Rat {
    let d = rng.gen_range(1..=4);
    let n = rng.gen_range(lo * d..=hi * d);
    rat(n, d)
}

/// Random polynomial, degree at most `max_degree`, each coefficient zero
/// with probability `zero_prob`.
pub fn random_poly(rng: &mut SampleRng, max_degree: usize, zero_prob: f64) -> Poly {
    Poly::new(
        (0..=max_degree)
            .map(|_| rat(small_int(rng, 3, zero_prob), 1))
            .collect(),
    )
}

/// A family for Smith-form checks. Either sparse random entries, or
/// `L · diag(t^{e_i}) · R` with constant invertible `L`, `R`, which has known
/// exponents, possibly with some `e_i` made infinite to drop the rank.
pub fn random_family(
    rng: &mut SampleRng,
    rows: usize,
    cols: usize,
    max_degree: usize,
) -> PolyMatrix {
    if rng.gen_bool(0.5) {
        let zero_prob = rng.gen_range(0.2..0.8);
        let entries = (0..rows * cols)
            .map(|_| random_poly(rng, max_degree, zero_prob))
            .collect();
        PolyMatrix::new(rows, cols, entries).expect("shape")
    } else {
        let r = rows.min(cols);
        let mut mid = PolyMatrix::zeros(rows, cols);
        for i in 0..r {
            if rng.gen_bool(0.1) {
                continue;
            }
            let e = rng.gen_range(0..=max_degree);
            mid[(i, i)] = Poly::monomial(rat(1, 1), e);
        }
        let l = PolyMatrix::constant(&invertible_matrix(rng, rows));
        let rt = PolyMatrix::constant(&invertible_matrix(rng, cols));
        l.mul(&mid).and_then(|m| m.mul(&rt)).expect("shapes agree")
    }
}

/// `A₀ + t·A₁` on `U` (`dim W × u`) with `A₀` of rank `< u` and full generic
/// rank, so the limit has at least two stages.
pub fn first_order_family(
    rng: &mut SampleRng,
    ctx: &SplitContext,
) -> (RatMatrix, RatMatrix, PolyMatrix) {
    let (w, u) = (ctx.dim_w(), ctx.u());
    loop {
        let r0 = if u > 1 { rng.gen_range(1..u) } else { 0 };
        let a0 = matrix_of_rank(rng, w, u, r0);
        let a1 = random_matrix(rng, w, u, 0.3);
        let fam = PolyMatrix::from_coefficients(&[a0.clone(), a1.clone()]).expect("shapes");
        if generic_rank(&fam) == u {
            return (a0, a1, fam);
        }
    }
}

fn generic_rank(p: &PolyMatrix) -> usize {
    crate::degeneration::local_smith_exponents(p)
        .map(|s| s.generic_rank)
        .unwrap_or(0)
}

/// A family with generic rank `u` for the given context.
pub fn full_rank_family(rng: &mut SampleRng, ctx: &SplitContext, max_degree: usize) -> PolyMatrix {
    loop {
        let fam = random_family(rng, ctx.dim_w(), ctx.u(), max_degree);
        if generic_rank(&fam) == ctx.u() {
            return fam;
        }
    }
}

/// `Lᵀ · diag(±t^{e_i}) · L`, symmetric in every coefficient and of full
/// generic rank.
pub fn symmetric_family(rng: &mut SampleRng, n: usize, max_degree: usize) -> PolyMatrix {
    let l = PolyMatrix::constant(&invertible_matrix(rng, n));
    let mut mid = PolyMatrix::zeros(n, n);
    for i in 0..n {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        mid[(i, i)] = Poly::monomial(rat(sign, 1), rng.gen_range(0..=max_degree));
    }
    l.transpose()
        .mul(&mid)
        .and_then(|m| m.mul(&l))
        .expect("square")
}

/// `Lᵀ · (⊕ t^{e_i} J) · L` with `J = [[0, 1], [−1, 0]]`, plus a zero block
/// when `n` is odd: antisymmetric with generic rank `2⌊n/2⌋`.
pub fn skew_family(rng: &mut SampleRng, n: usize, max_degree: usize) -> PolyMatrix {
    let l = PolyMatrix::constant(&invertible_matrix(rng, n));
    let mut mid = PolyMatrix::zeros(n, n);
    for b in 0..n / 2 {
        let e = rng.gen_range(0..=max_degree);
        mid[(2 * b, 2 * b + 1)] = Poly::monomial(rat(1, 1), e);
        mid[(2 * b + 1, 2 * b)] = Poly::monomial(rat(-1, 1), e);
    }
    l.transpose()
        .mul(&mid)
        .and_then(|m| m.mul(&l))
        .expect("square")
}

/// Random composition of `u` into positive parts.
pub fn random_composition(rng: &mut SampleRng, u: usize) -> Vec<usize> {
    let mut parts = Vec::new();
    let mut left = u;
    while left > 0 {
        let p = rng.gen_range(1..=left);
        parts.push(p);
        left -= p;
    }
    parts.shuffle(rng);
    parts
}

/// Valid general collineation with the given stage ranks (summing to `u`),
/// on a random domain.
pub fn collineation_with_ranks(
    rng: &mut SampleRng,
    ctx: &SplitContext,
    ranks: &[usize],
) -> CompleteCollineation {
    assert_eq!(ranks.iter().sum::<usize>(), ctx.u(), "ranks must sum to u");
    let domain = if rng.gen_bool(0.5) {
        crate::collineation::standard_domain(ctx)
    } else {
        let m = matrix_of_rank(rng, ctx.u(), ctx.dim_v(), ctx.u());
        Subspace::span(&m, ctx.dim_v()).expect("width")
    };
    let mut maps = Vec::with_capacity(ranks.len());
    let (mut k_dim, mut i_dim) = (ctx.u(), 0);
    for &r in ranks {
        maps.push(matrix_of_rank(rng, ctx.dim_w() - i_dim, k_dim, r));
        k_dim -= r;
        i_dim += r;
    }
    CompleteCollineation::from_maps(*ctx, Flavor::General, domain, maps).expect("shapes")
}

pub fn random_collineation(rng: &mut SampleRng, ctx: &SplitContext) -> CompleteCollineation {
    let ranks = random_composition(rng, ctx.u());
    collineation_with_ranks(rng, ctx, &ranks)
}

/// Integer matrix whose leading and trailing principal minors are all
/// nonzero.
pub fn invertible_with_minors(rng: &mut SampleRng, n: usize, bound: i64) -> RatMatrix {
    loop {
        let entries = (0..n * n)
            .map(|_| rat(small_int(rng, bound, 0.1), 1))
            .collect();
        let m = RatMatrix::new(n, n, entries).expect("shape");
        let ok = (1..=n).all(|k| {
            let lead: Vec<usize> = (0..k).collect();
            let trail: Vec<usize> = (n - k..n).collect();
            let minor = |idx: &[usize]| m.select_rows(idx).select_cols(idx).det().expect("square");
            !minor(&lead).is_zero() && !minor(&trail).is_zero()
        });
        if ok {
            return m;
        }
    }
}
