//! Complete collineations, complete quadrics and complete skew forms.
//!
//! A rank `u` complete collineation `V → W` is a `u`-dimensional subspace
//! `U ⊆ V` with nonzero maps `f₁: U → W` and `f_{j+1}: ker f_j → coker f_j`,
//! the last of maximal rank. "Maximal rank" is read as: the last map has zero
//! kernel or zero cokernel.
//!
//! Coordinates are canonical throughout. The kernel `K_j ⊆ V` is described by
//! its echelon basis and a vector of `K_j` is written in that basis. The
//! cokernel `W / I_j`, with `I_j` the accumulated image, is modelled on the
//! non-pivot coordinates of `I_j` (see [`Subspace::cokernel_projection`]). So a
//! stage map is the matrix of `f_j: K_{j-1} → W / I_{j-1}` in these bases.
//!
//! For the symmetric and skew flavors `W = V*` with coordinate `i` of `W` dual
//! to coordinate `i` of `V`, and `u = dim V`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::degeneration::{local_smith, PolyMatrix};
use crate::error::{Error, Result};
use crate::linalg::{Rat, RatMatrix, SplitContext, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    General,
    Symmetric,
    Skew,
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "general" => Ok(Flavor::General),
            "symmetric" => Ok(Flavor::Symmetric),
            "skew" => Ok(Flavor::Skew),
            other => Err(Error::Parse(format!("unknown flavor {other:?}"))),
        }
    }
}

/// One map `f_j: K_{j-1} → W / I_{j-1}` of a complete collineation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stage {
    pub map: RatMatrix,
    /// `ker f_j` as a subspace of `V`.
    pub kernel: Subspace,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteCollineation {
    pub ctx: SplitContext,
    pub flavor: Flavor,
    /// `U ⊆ V`, ambient dimension `dim V`.
    pub domain: Subspace,
    pub stages: Vec<Stage>,
}

/// Flags in `V` and `W` determined by a complete collineation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagPair {
    /// `ker f₁ ⊋ ker f₂ ⊋ …` inside `V`.
    pub v_flag: Vec<Subspace>,
    /// Accumulated images `I₁ ⊊ I₂ ⊊ …` inside `W`.
    pub w_flag: Vec<Subspace>,
    pub is_halphen: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: String,
    pub stage: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, clause: &str) -> bool {
        self.violations.iter().any(|v| v.clause == clause)
    }

    fn push(&mut self, clause: &str, stage: Option<usize>, detail: impl Into<String>) {
        self.violations.push(Violation {
            clause: clause.to_owned(),
            stage,
            detail: detail.into(),
        });
    }
}

/// Kernel (inside `V`) and rank of a stage map on `K_{j-1}`.
fn stage_kernel(k_prev: &Subspace, map: &RatMatrix) -> (Subspace, usize) {
    let null = map.null_space();
    let vectors: Vec<Vec<Rat>> = (0..null.rows())
        .map(|i| k_prev.combine(null.row(i)))
        .collect();
    let kernel = Subspace::from_rows(vectors, k_prev.ambient_dim()).expect("vectors live in V");
    let rank = k_prev.dim() - kernel.dim();
    (kernel, rank)
}

/// Lifts the columns of a stage map back to `W`.
fn lifted_images(i_prev: &Subspace, map: &RatMatrix) -> Vec<Vec<Rat>> {
    (0..map.cols())
        .map(|j| i_prev.cokernel_section(&map.column(j)))
        .collect()
}

fn accumulate(i_prev: &Subspace, images: &[Vec<Rat>]) -> Subspace {
    let span = Subspace::from_rows(images.to_vec(), i_prev.ambient_dim()).expect("vectors in W");
    i_prev.join(&span).expect("same ambient")
}

/// Stage whose map sends the `l`-th echelon basis vector of `k_prev` to the
/// class of `images[l]` modulo `i_prev`.
pub(crate) fn stage_from_images(
    k_prev: &Subspace,
    i_prev: &Subspace,
    images: &[Vec<Rat>],
) -> Result<Stage> {
    if images.len() != k_prev.dim() {
        return Err(Error::dims("one image per kernel basis vector"));
    }
    let columns = RatMatrix::from_columns(images, i_prev.ambient_dim())?;
    let map = if images.is_empty() {
        RatMatrix::zeros(i_prev.ambient_dim() - i_prev.dim(), 0)
    } else {
        i_prev.cokernel_projection().mul(&columns)?
    };
    let (kernel, rank) = stage_kernel(k_prev, &map);
    Ok(Stage { map, kernel, rank })
}

/// `⟨lift f(b_a), b_b⟩` over the echelon basis of `K_{j-1}`.
fn stage_pairing(k_prev: &Subspace, i_prev: &Subspace, map: &RatMatrix) -> RatMatrix {
    let lifted = lifted_images(i_prev, map);
    let k = k_prev.dim();
    let mut g = RatMatrix::zeros(k, k);
    for (a, image) in lifted.iter().enumerate() {
        for b in 0..k {
            g[(a, b)] = image
                .iter()
                .zip(k_prev.basis().row(b))
                .fold(Rat::zero(), |acc, (x, y)| acc + x * y);
        }
    }
    g
}

impl CompleteCollineation {
    /// Assembles a collineation from raw stage maps, computing kernels and
    /// ranks. The result is not validated.
    pub fn from_maps(
        ctx: SplitContext,
        flavor: Flavor,
        domain: Subspace,
        maps: Vec<RatMatrix>,
    ) -> Result<Self> {
        if domain.ambient_dim() != ctx.dim_v() {
            return Err(Error::dims("domain must be a subspace of V"));
        }
        let mut k_prev = domain.clone();
        let mut i_prev = Subspace::zero(ctx.dim_w());
        let mut stages = Vec::with_capacity(maps.len());
        for map in maps {
            if map.rows() != ctx.dim_w() - i_prev.dim() || map.cols() != k_prev.dim() {
                return Err(Error::dims(format!(
                    "stage {} has shape {}x{}, expected {}x{}",
                    stages.len() + 1,
                    map.rows(),
                    map.cols(),
                    ctx.dim_w() - i_prev.dim(),
                    k_prev.dim()
                )));
            }
            let (kernel, rank) = stage_kernel(&k_prev, &map);
            i_prev = accumulate(&i_prev, &lifted_images(&i_prev, &map));
            k_prev = kernel.clone();
            stages.push(Stage { map, kernel, rank });
        }
        Ok(Self {
            ctx,
            flavor,
            domain,
            stages,
        })
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.stages.iter().map(|s| s.rank).collect()
    }

    /// `K_j`, with `K_0` the domain.
    pub fn kernel_before(&self, j: usize) -> &Subspace {
        if j == 0 {
            &self.domain
        } else {
            &self.stages[j - 1].kernel
        }
    }

    /// Accumulated images `I_0 = 0, I_1, …, I_i` inside `W`.
    pub fn image_chain(&self) -> Result<Vec<Subspace>> {
        let mut out = vec![Subspace::zero(self.ctx.dim_w())];
        for (j, s) in self.stages.iter().enumerate() {
            let i_prev = &out[j];
            if s.map.rows() != self.ctx.dim_w() - i_prev.dim() {
                return Err(Error::dims(format!("stage {} codomain", j + 1)));
            }
            let next = accumulate(i_prev, &lifted_images(i_prev, &s.map));
            out.push(next);
        }
        Ok(out)
    }

    pub fn is_halphen(&self) -> bool {
        self.stages.len() == self.ctx.u() && self.stages.iter().all(|s| s.rank == 1)
    }
}

/// First `u` coordinate vectors of `V`.
pub fn standard_domain(ctx: &SplitContext) -> Subspace {
    let coords: Vec<usize> = (0..ctx.u()).collect();
    Subspace::coordinate(ctx.dim_v(), &coords).expect("u <= dim V")
}

/// Limit at `t = 0` of the family `A(t): U → W`, with `U` the first `u`
/// coordinates of `V`. The family is a `dim W × u` matrix acting on column
/// vectors.
pub fn limit_collineation(
    family: &PolyMatrix,
    ctx: &SplitContext,
    flavor: Flavor,
) -> Result<CompleteCollineation> {
    limit_collineation_on(family, ctx, flavor, standard_domain(ctx))
}

/// [`limit_collineation`] with an explicit domain; the columns of the family
/// refer to the echelon basis of `domain`.
///
/// The family is brought to local Smith form `P(t)·diag(t^e)·Q(t)`. For the
/// `j`-th distinct exponent, `f_j` sends `x ∈ K_{j-1}` to
/// `Σ p_i(0)·(q_i(0)·x)` modulo `I_{j-1}`, summed over the invariant factors of
/// that exponent. These are the limits of the exterior powers of `A(t)`.
pub fn limit_collineation_on(
    family: &PolyMatrix,
    ctx: &SplitContext,
    flavor: Flavor,
    domain: Subspace,
) -> Result<CompleteCollineation> {
    let u = ctx.u();
    if family.rows() != ctx.dim_w() || family.cols() != u {
        return Err(Error::dims(format!(
            "family is {}x{}, expected dim W x u = {}x{}",
            family.rows(),
            family.cols(),
            ctx.dim_w(),
            u
        )));
    }
    if domain.ambient_dim() != ctx.dim_v() || domain.dim() != u {
        return Err(Error::dims("domain must be a u-dimensional subspace of V"));
    }
    check_flavor(family, ctx, flavor)?;

    let expected = match flavor {
        Flavor::Skew => u - u % 2,
        _ => u,
    };
    let smith = match local_smith(family) {
        Ok(s) => s,
        Err(Error::ZeroFamily) => return Err(Error::Degenerate { rank: 0, expected }),
        Err(e) => return Err(e),
    };
    let profile = &smith.profile;
    if profile.generic_rank < expected {
        return Err(Error::Degenerate {
            rank: profile.generic_rank,
            expected,
        });
    }

    let mut maps = Vec::new();
    let mut k_prev = domain.clone();
    let mut i_prev = Subspace::zero(ctx.dim_w());
    let mut start = 0;
    for mult in profile.multiplicities() {
        let group: Vec<usize> = (start..start + mult).collect();
        start += mult;
        // T = Σ_{i ∈ group} P(0)[:, i] · Q(0)[i, :]
        let t = smith
            .left
            .select_cols(&group)
            .mul(&smith.right.select_rows(&group))?;
        let images: Vec<Vec<Rat>> = (0..k_prev.dim())
            .map(|l| t.apply(&domain.coordinates_of(k_prev.basis().row(l))))
            .collect();
        let stage = stage_from_images(&k_prev, &i_prev, &images)?;
        debug_assert_eq!(stage.rank, mult);
        i_prev = accumulate(&i_prev, &images);
        k_prev = stage.kernel.clone();
        maps.push(stage.map);
    }
    CompleteCollineation::from_maps(*ctx, flavor, domain, maps)
}

fn check_flavor(family: &PolyMatrix, ctx: &SplitContext, flavor: Flavor) -> Result<()> {
    if flavor == Flavor::General {
        return Ok(());
    }
    if ctx.dim_v() != ctx.dim_w() || ctx.u() != ctx.dim_v() {
        return Err(Error::FlavorMismatch(format!(
            "{flavor:?} flavor needs dim V = dim W = u, got {}, {}, {}",
            ctx.dim_v(),
            ctx.dim_w(),
            ctx.u()
        )));
    }
    let ok = match flavor {
        Flavor::Symmetric => family.is_symmetric(),
        Flavor::Skew => family.is_antisymmetric(),
        Flavor::General => true,
    };
    if !ok {
        return Err(Error::FlavorMismatch(format!(
            "family is not {} in every coefficient",
            if flavor == Flavor::Symmetric {
                "symmetric"
            } else {
                "antisymmetric"
            }
        )));
    }
    Ok(())
}

/// Limit of a symmetric family: a complete quadric.
pub fn limit_quadric(family: &PolyMatrix, ctx: &SplitContext) -> Result<CompleteCollineation> {
    limit_collineation(family, ctx, Flavor::Symmetric)
}

/// Limit of an antisymmetric family: a complete skew form.
pub fn limit_skew(family: &PolyMatrix, ctx: &SplitContext) -> Result<CompleteCollineation> {
    limit_collineation(family, ctx, Flavor::Skew)
}

/// Checks every structural clause and reports violations by name:
/// `domain-dimension`, `flavor-dimensions`, `nonempty`, `stage-shape`,
/// `nonzero-stage`, `stage-rank`, `stage-kernel`, `rank-sum`,
/// `maximal-rank-last`, `pairing-compatible`, `self-adjoint`, `skew-adjoint`,
/// `skew-even-rank`, `skew-final-null-space`.
pub fn validate_collineation(cc: &CompleteCollineation) -> ValidationReport {
    let mut report = ValidationReport::default();
    let ctx = cc.ctx;
    let u = ctx.u();
    if cc.domain.ambient_dim() != ctx.dim_v() || cc.domain.dim() != u {
        report.push(
            "domain-dimension",
            None,
            format!(
                "domain has dimension {} in ambient {}, expected {} in {}",
                cc.domain.dim(),
                cc.domain.ambient_dim(),
                u,
                ctx.dim_v()
            ),
        );
        return report;
    }
    if cc.flavor != Flavor::General && (ctx.dim_v() != ctx.dim_w() || u != ctx.dim_v()) {
        report.push(
            "flavor-dimensions",
            None,
            "symmetric and skew flavors need dim V = dim W = u",
        );
        return report;
    }
    if cc.stages.is_empty() {
        report.push("nonempty", None, "no stages");
        return report;
    }

    let mut k_prev = cc.domain.clone();
    let mut i_prev = Subspace::zero(ctx.dim_w());
    let mut rank_sum = 0;
    let mut last_coker = 0;
    for (j, stage) in cc.stages.iter().enumerate() {
        let n = Some(j + 1);
        let codomain = ctx.dim_w() - i_prev.dim();
        if stage.map.rows() != codomain || stage.map.cols() != k_prev.dim() {
            report.push(
                "stage-shape",
                n,
                format!(
                    "map is {}x{}, expected {}x{}",
                    stage.map.rows(),
                    stage.map.cols(),
                    codomain,
                    k_prev.dim()
                ),
            );
            return report;
        }
        if stage.map.is_zero() {
            report.push("nonzero-stage", n, "stage map is zero");
        }
        let (kernel, rank) = stage_kernel(&k_prev, &stage.map);
        if rank != stage.rank {
            report.push(
                "stage-rank",
                n,
                format!("declared rank {}, actual {rank}", stage.rank),
            );
        }
        if stage.kernel != kernel {
            report.push("stage-kernel", n, "declared kernel differs from ker f");
        }
        if cc.flavor != Flavor::General {
            if i_prev != k_prev.annihilator() {
                report.push(
                    "pairing-compatible",
                    n,
                    "accumulated image is not the annihilator of the kernel",
                );
            } else {
                let g = stage_pairing(&k_prev, &i_prev, &stage.map);
                match cc.flavor {
                    Flavor::Symmetric if !g.is_symmetric() => {
                        report.push("self-adjoint", n, "stage is not self-adjoint")
                    }
                    Flavor::Skew if !g.is_antisymmetric() => {
                        report.push("skew-adjoint", n, "stage is not skew-adjoint")
                    }
                    _ => {}
                }
            }
            if cc.flavor == Flavor::Skew && rank % 2 == 1 {
                report.push("skew-even-rank", n, format!("stage has odd rank {rank}"));
            }
        }
        rank_sum += rank;
        last_coker = codomain - rank;
        i_prev = accumulate(&i_prev, &lifted_images(&i_prev, &stage.map));
        k_prev = kernel;
    }
    if rank_sum > u {
        report.push(
            "rank-sum",
            None,
            format!("ranks sum to {rank_sum} > u = {u}"),
        );
    }
    let last = Some(cc.stages.len());
    match cc.flavor {
        Flavor::General | Flavor::Symmetric => {
            if !k_prev.is_zero() && last_coker != 0 {
                report.push(
                    "maximal-rank-last",
                    last,
                    "last stage has nonzero kernel and nonzero cokernel",
                );
            }
        }
        Flavor::Skew => {
            if k_prev.dim() > 1 {
                report.push(
                    "skew-final-null-space",
                    last,
                    format!("last stage has null space of dimension {}", k_prev.dim()),
                );
            }
        }
    }
    report
}

/// Flags of `V` and `W` and whether the collineation lies in the Halphen
/// locus (all stages of rank one).
pub fn flags(cc: &CompleteCollineation) -> Result<FlagPair> {
    let report = validate_collineation(cc);
    if !report.is_valid() {
        return Err(Error::InvalidCollineation(Box::new(report)));
    }
    let images = cc.image_chain()?;
    Ok(FlagPair {
        v_flag: cc.stages.iter().map(|s| s.kernel.clone()).collect(),
        w_flag: images.into_iter().skip(1).collect(),
        is_halphen: cc.is_halphen(),
    })
}

/// Degenerates an invertible `u × u` matrix along the one-parameter subgroup
/// acting with weight `i` on the `i`-th basis vector of `V` and `-i` on that
/// of `W`: entry `(i, j)` (1-based) becomes `a_ij · t^(-i-j)`. The family is
/// normalized by the least power of `t` and its limit returned. Rows of `W`
/// beyond the first `u` are zero.
pub fn halphen_degeneration(a: &RatMatrix, ctx: &SplitContext) -> Result<CompleteCollineation> {
    let u = ctx.u();
    if a.rows() != u || a.cols() != u {
        return Err(Error::dims(format!(
            "matrix is {}x{}, expected {u}x{u}",
            a.rows(),
            a.cols()
        )));
    }
    if a.det()?.is_zero() {
        return Err(Error::Singular);
    }
    let mut entries = Vec::with_capacity(ctx.dim_w() * u);
    for i in 0..ctx.dim_w() {
        for j in 0..u {
            if i < u {
                let power = -((i + 1) as i64) - (j + 1) as i64;
                entries.push((power, vec![a[(i, j)].clone()]));
            } else {
                entries.push((0, Vec::new()));
            }
        }
    }
    let (family, _shift) = PolyMatrix::from_laurent(ctx.dim_w(), u, entries)?;
    limit_collineation(&family, ctx, Flavor::General)
}
