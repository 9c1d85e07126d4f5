//! Stability for the `C*`-action on `Gr_u(V ⊕ W)` with weight `1` on `V` and
//! `-1` on `W`, linearized by `L(u − 2σ)`.
//!
//! `U` is σ-semistable iff `dim U∩V ≤ u − σ` and `dim U∩W ≤ σ`, stable iff
//! both are strict. The same answer comes out of the Hilbert–Mumford
//! criterion applied to the Plücker coordinates of `U`: a coordinate using
//! `a` vectors of `V` has weight `2a − u`, and `U` is semistable iff `u − 2σ`
//! lies in the convex hull of the weights present. Both routes are exposed so
//! they can be checked against each other.

use std::cmp::Ordering;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::collineation::Flavor;
use crate::degeneration::subsets;
use crate::error::{Error, Result};
use crate::json::rat_string;
use crate::linalg::{Rat, SplitContext, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StabilityStatus {
    Stable,
    StrictlySemistable,
    Unstable,
}

impl StabilityStatus {
    pub fn is_semistable(self) -> bool {
        self != StabilityStatus::Unstable
    }
}

/// Point of the quotient a strictly semistable `U` is identified with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedObject {
    /// `(U ∩ V) ⊕ (U + V)/V`, present when `dim U∩V = u − σ`.
    pub v_equality: Option<Subspace>,
    /// `(U + W)/W ⊕ (U ∩ W)`, present when `dim U∩W = σ`.
    pub w_equality: Option<Subspace>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    #[serde(with = "rat_string")]
    pub sigma: Rat,
    pub status: StabilityStatus,
    pub dim_u_cap_v: usize,
    pub dim_u_cap_w: usize,
    /// `[dim U∩W, u − dim U∩V]`: the σ for which `U` is semistable.
    pub semistable_interval: [i64; 2],
    pub graded_object: Option<GradedObject>,
}

fn require_split(u: &Subspace) -> Result<()> {
    if u.split().is_none() {
        return Err(Error::dims("subspace has no V ⊕ W split"));
    }
    if u.dim() == 0 {
        return Err(Error::dims("subspace must have dimension u >= 1"));
    }
    Ok(())
}

fn rat_int(n: usize) -> Rat {
    Rat::from_integer((n as i64).into())
}

/// Stability of `U` at σ by the intersection-dimension criterion. The rank
/// parameter `u` is the dimension of `U`.
pub fn classify(subspace: &Subspace, sigma: &Rat) -> Result<StabilityReport> {
    require_split(subspace)?;
    let u = subspace.dim();
    let cap_v = subspace.cap_v()?;
    let cap_w = subspace.cap_w()?;
    let (dv, dw) = (cap_v.dim(), cap_w.dim());
    let first = rat_int(dv).cmp(&(rat_int(u) - sigma));
    let second = rat_int(dw).cmp(sigma);
    let status = match (first, second) {
        (Ordering::Greater, _) | (_, Ordering::Greater) => StabilityStatus::Unstable,
        (Ordering::Less, Ordering::Less) => StabilityStatus::Stable,
        _ => StabilityStatus::StrictlySemistable,
    };
    let graded_object = (status == StabilityStatus::StrictlySemistable).then(|| {
        let (sink, source) = sink_and_source(subspace).expect("split checked");
        GradedObject {
            v_equality: (first == Ordering::Equal).then_some(sink),
            w_equality: (second == Ordering::Equal).then_some(source),
        }
    });
    Ok(StabilityReport {
        sigma: sigma.clone(),
        status,
        dim_u_cap_v: dv,
        dim_u_cap_w: dw,
        semistable_interval: [dw as i64, (u - dv) as i64],
        graded_object,
    })
}

/// `((U∩V) ⊕ p_W(U), p_V(U) ⊕ (U∩W))`.
pub(crate) fn sink_and_source(subspace: &Subspace) -> Result<(Subspace, Subspace)> {
    let sink = subspace.cap_v()?.join(&subspace.project_w()?)?;
    let source = subspace.project_v()?.join(&subspace.cap_w()?)?;
    Ok((sink, source))
}

/// Nonzero Plücker coordinates: `u × u` minors of the echelon basis on every
/// set of `u` columns, as `(columns, value)`.
pub fn plucker_coordinates(subspace: &Subspace) -> Result<Vec<(Vec<usize>, Rat)>> {
    let basis = subspace.basis();
    let mut out = Vec::new();
    for cols in subsets(subspace.ambient_dim(), subspace.dim()) {
        let minor = basis.select_cols(&cols).det()?;
        if !minor.is_zero() {
            out.push((cols, minor));
        }
    }
    Ok(out)
}

/// Weights present among the Plücker coordinates of `U`, and the degree of
/// the closure of its orbit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluckerSupport {
    pub u: usize,
    /// Sorted distinct weights `2a − u`.
    pub weights: Vec<i64>,
    /// `(max − min) / g`, `g` the gcd of the weight differences; `0` for a
    /// fixed point.
    pub orbit_degree: u64,
}

impl PluckerSupport {
    /// Semistability by the numerical criterion: `min ≤ u − 2σ ≤ max`,
    /// stable when both inequalities are strict.
    pub fn oracle_status(&self, sigma: &Rat) -> StabilityStatus {
        let target = rat_int(self.u) - sigma * Rat::from_integer(2.into());
        let lo = Rat::from_integer(self.weights[0].into());
        let hi = Rat::from_integer(self.weights[self.weights.len() - 1].into());
        if target < lo || target > hi {
            StabilityStatus::Unstable
        } else if lo < target && target < hi {
            StabilityStatus::Stable
        } else {
            StabilityStatus::StrictlySemistable
        }
    }
}

pub fn plucker_weight_support(subspace: &Subspace) -> Result<PluckerSupport> {
    require_split(subspace)?;
    let split = subspace.split().expect("checked");
    let u = subspace.dim() as i64;
    let mut weights: Vec<i64> = plucker_coordinates(subspace)?
        .into_iter()
        .map(|(cols, _)| {
            let a = cols.iter().filter(|&&c| c < split.dim_v).count() as i64;
            2 * a - u
        })
        .collect();
    weights.sort_unstable();
    weights.dedup();
    let lo = weights[0];
    let g = weights.iter().fold(0i64, |acc, w| acc.gcd(&(w - lo)));
    let orbit_degree = if g == 0 {
        0
    } else {
        ((weights[weights.len() - 1] - lo) / g) as u64
    };
    Ok(PluckerSupport {
        u: subspace.dim(),
        weights,
        orbit_degree,
    })
}

/// Whether [`classify`] and the Plücker-weight oracle agree at σ.
pub fn semistable_oracle_equivalence(subspace: &Subspace, sigma: &Rat) -> Result<bool> {
    let report = classify(subspace, sigma)?;
    let support = plucker_weight_support(subspace)?;
    Ok(report.status == support.oracle_status(sigma))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallDims {
    pub k: usize,
    /// `Z⁰_k = Gr_{u−k} V × Gr_k W`.
    pub z0: i64,
    /// `Z⁻_k = ℙHom(S_W, Q_V)` over `Z⁰_k`.
    pub z_minus: i64,
    /// `Z⁺_k = ℙHom(S_V, Q_W)` over `Z⁰_k`.
    pub z_plus: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecantDim {
    pub k: usize,
    /// Dimension of the locus of rank `≤ k` maps in `ℙHom(S_V, W)`.
    pub dim: i64,
}

/// The quotients at σ = 0 and σ = u are Grassmannians, not bundles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndChamber {
    pub sigma: usize,
    pub label: String,
    pub dim: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimReport {
    pub ctx: SplitContext,
    pub flavor: Flavor,
    /// Dimension of every nonempty quotient `Y_σ`, σ not an integer.
    pub dim_quotient: i64,
    /// `ℙHom(S_V, W)` over `Gr_u V`, the chamber `(0, 1)`.
    pub dim_quotient_via_v: i64,
    /// `ℙHom(S_W, V)` over `Gr_u W`, the chamber `(u − 1, u)`.
    pub dim_quotient_via_w: i64,
    pub walls: Vec<usize>,
    pub wall_dims: Vec<WallDims>,
    pub secant_dims: Vec<SecantDim>,
    pub end_chambers: Vec<EndChamber>,
}

/// Dimension tables for the quotients of `Gr_u(V ⊕ W)`. The skew flavor keeps
/// only the even walls; the tables are the ones of the ambient Grassmannian.
pub fn dims_report(ctx: &SplitContext, flavor: Flavor) -> Result<DimReport> {
    if flavor != Flavor::General && ctx.dim_v() != ctx.dim_w() {
        return Err(Error::FlavorMismatch(format!(
            "{flavor:?} flavor needs dim V = dim W"
        )));
    }
    let (v, w, u) = (ctx.dim_v() as i64, ctx.dim_w() as i64, ctx.u() as i64);
    let walls: Vec<usize> = (0..=ctx.u())
        .filter(|k| flavor != Flavor::Skew || k % 2 == 0)
        .collect();
    let wall_dims = walls
        .iter()
        .filter(|&&k| k >= 1 && k < ctx.u())
        .map(|&k| {
            let k64 = k as i64;
            let z0 = z0_dim(v, w, u, k64);
            WallDims {
                k,
                z0,
                z_minus: z0 + k64 * (v - u + k64) - 1,
                z_plus: z0 + (u - k64) * (w - k64) - 1,
            }
        })
        .collect();
    let secant_dims = (1..ctx.u())
        .map(|k| {
            let k64 = k as i64;
            SecantDim {
                k,
                dim: u * (v - u) + k64 * (u + w - k64) - 1,
            }
        })
        .collect();
    Ok(DimReport {
        ctx: *ctx,
        flavor,
        dim_quotient: u * (v + w - u) - 1,
        dim_quotient_via_v: u * (v - u) + u * w - 1,
        dim_quotient_via_w: u * (w - u) + u * v - 1,
        walls,
        wall_dims,
        secant_dims,
        end_chambers: vec![
            EndChamber {
                sigma: 0,
                label: "Gr_u V".into(),
                dim: u * (v - u),
            },
            EndChamber {
                sigma: ctx.u(),
                label: "Gr_u W".into(),
                dim: u * (w - u),
            },
        ],
    })
}

fn z0_dim(v: i64, w: i64, u: i64, k: i64) -> i64 {
    (u - k) * (v - u + k) + k * (w - k)
}

/// For each `1 ≤ k ≤ u`: the collineations over a point of `Z⁰_k` form the
/// rank `k` collineations for `(dim V − u + k, k)`, so base plus fiber gives
/// a locus of dimension `total ≤ dim_quotient`, with equality at `k = u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDims {
    pub k: usize,
    pub base: i64,
    pub fiber: i64,
    pub total: i64,
    pub dim_quotient: i64,
}

pub fn recursive_fiber_dims(ctx: &SplitContext) -> Result<Vec<FiberDims>> {
    let whole = dims_report(ctx, Flavor::General)?.dim_quotient;
    let (v, w, u) = (ctx.dim_v() as i64, ctx.dim_w() as i64, ctx.u() as i64);
    (1..=ctx.u())
        .map(|k| {
            let fiber_ctx = SplitContext::new(ctx.dim_v() - ctx.u() + k, k, k)?;
            let fiber = dims_report(&fiber_ctx, Flavor::General)?.dim_quotient;
            let base = z0_dim(v, w, u, k as i64);
            Ok(FiberDims {
                k,
                base,
                fiber,
                total: base + fiber,
                dim_quotient: whole,
            })
        })
        .collect()
}
