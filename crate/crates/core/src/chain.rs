//! Nodal chains: the cycles of the Chow quotient of `Gr_u(V ⊕ W)` by `C*`.
//!
//! A chain is a sequence `U₁, …, U_i` of `u`-dimensional subspaces whose orbit
//! closures form a connected curve from the `V` end to the `W` end:
//!
//! 1. `U_j ≠ (U_j ∩ V) ⊕ (U_j ∩ W)`
//! 2. `U₁ ∩ W = 0`
//! 3. `U_i ∩ V = 0`
//! 4. `U_j ∩ V = p_V(U_{j+1})`
//! 5. `U_{j+1} ∩ W = p_W(U_j)`
//!
//! Here `p_V`, `p_W` are the coordinate projections, so `(U + W)/W` is read
//! as `p_V(U)` through `(V ⊕ W)/W ≅ V`.

use serde::{Deserialize, Serialize};

use crate::chambers::{plucker_weight_support, sink_and_source};
use crate::collineation::{stage_from_images, validate_collineation, CompleteCollineation, Flavor};
use crate::error::{Error, Result};
use crate::linalg::{Rat, SplitContext, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawChain")]
pub struct NodalChain {
    pub ctx: SplitContext,
    pub components: Vec<Subspace>,
}

#[derive(Deserialize)]
struct RawChain {
    ctx: SplitContext,
    components: Vec<Subspace>,
}

impl TryFrom<RawChain> for NodalChain {
    type Error = Error;

    fn try_from(raw: RawChain) -> Result<Self> {
        NodalChain::new(raw.ctx, raw.components)
    }
}

impl NodalChain {
    /// Attaches the context's split to every component.
    pub fn new(ctx: SplitContext, components: Vec<Subspace>) -> Result<Self> {
        let split = ctx.split();
        let components = components
            .into_iter()
            .map(|c| c.with_split(split))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ctx, components })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainViolation {
    /// Which of the five chain equations fails.
    pub equation: u8,
    /// 1-based index of the (first) component involved.
    pub component: usize,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub violations: Vec<ChainViolation>,
    /// Problems that prevent checking the equations, or a total degree
    /// different from `u`.
    pub structural: Vec<String>,
    /// Orbit-closure degree of each component.
    pub degrees: Vec<u64>,
    pub total_degree: u64,
    /// Per component `(dim ℙp_V(U_j), dim ℙp_W(U_j))`.
    pub shape: Vec<(i64, i64)>,
    /// `sink(U_j) = source(U_{j+1})` for every consecutive pair.
    pub adjacency: bool,
}

impl ChainReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.structural.is_empty()
    }

    pub fn violated_equations(&self) -> Vec<u8> {
        let mut eqs: Vec<u8> = self.violations.iter().map(|v| v.equation).collect();
        eqs.sort_unstable();
        eqs.dedup();
        eqs
    }
}

/// Limits of the orbit of `U` at `λ → 0` (sink, `(U∩V) ⊕ p_W(U)`) and
/// `λ → ∞` (source, `p_V(U) ⊕ (U∩W)`), for `λ` acting by `λ` on `V` and
/// `λ⁻¹` on `W`. Both are fixed points.
pub fn sink_source(subspace: &Subspace) -> Result<(Subspace, Subspace)> {
    sink_and_source(subspace)
}

pub fn validate_chain(chain: &NodalChain) -> ChainReport {
    let mut report = ChainReport {
        adjacency: true,
        ..ChainReport::default()
    };
    let ctx = chain.ctx;
    let (u, split) = (ctx.u(), ctx.split());
    if chain.components.is_empty() {
        report.structural.push("chain has no components".into());
        return report;
    }
    for (j, c) in chain.components.iter().enumerate() {
        if c.ambient_dim() != split.ambient() || c.dim() != u || c.split().is_none() {
            report.structural.push(format!(
                "component {} has dimension {} in ambient {}, expected {u} in {}",
                j + 1,
                c.dim(),
                c.ambient_dim(),
                split.ambient()
            ));
        }
    }
    if !report.structural.is_empty() {
        return report;
    }

    struct Parts {
        cap_v: Subspace,
        cap_w: Subspace,
        p_v: Subspace,
        p_w: Subspace,
    }
    let parts: Vec<Parts> = chain
        .components
        .iter()
        .map(|c| Parts {
            cap_v: c.cap_v().expect("split attached"),
            cap_w: c.cap_w().expect("split attached"),
            p_v: c.project_v().expect("split attached"),
            p_w: c.project_w().expect("split attached"),
        })
        .collect();
    let mut violate = |equation: u8, component: usize, detail: String| {
        report.violations.push(ChainViolation {
            equation,
            component,
            detail,
        })
    };

    for (j, p) in parts.iter().enumerate() {
        if p.cap_v.dim() + p.cap_w.dim() == u {
            violate(1, j + 1, "component is decomposable (a fixed point)".into());
        }
    }
    if !parts[0].cap_w.is_zero() {
        violate(
            2,
            1,
            format!("U_1 ∩ W has dimension {}", parts[0].cap_w.dim()),
        );
    }
    let last = parts.len() - 1;
    if !parts[last].cap_v.is_zero() {
        violate(
            3,
            last + 1,
            format!("U_i ∩ V has dimension {}", parts[last].cap_v.dim()),
        );
    }
    for j in 0..last {
        if parts[j].cap_v != parts[j + 1].p_v {
            violate(4, j + 1, "U_j ∩ V differs from p_V(U_{j+1})".into());
        }
        if parts[j + 1].cap_w != parts[j].p_w {
            violate(5, j + 1, "U_{j+1} ∩ W differs from p_W(U_j)".into());
        }
    }

    for j in 0..last {
        let sink = parts[j].cap_v.join(&parts[j].p_w).expect("same ambient");
        let source = parts[j + 1]
            .p_v
            .join(&parts[j + 1].cap_w)
            .expect("same ambient");
        if sink != source {
            report.adjacency = false;
        }
    }
    for (c, p) in chain.components.iter().zip(&parts) {
        let degree = plucker_weight_support(c).map_or(0, |s| s.orbit_degree);
        report.degrees.push(degree);
        report
            .shape
            .push((p.p_v.dim() as i64 - 1, p.p_w.dim() as i64 - 1));
    }
    report.total_degree = report.degrees.iter().sum();
    if report.violations.is_empty() && report.total_degree != u as u64 {
        report.structural.push(format!(
            "total degree {} differs from u = {u}",
            report.total_degree
        ));
    }
    report
}

/// The chain of graphs: `U₁ = graph f₁` and
/// `U_{j+1} = {(x, y) : x ∈ K_j, y ∈ W, π_j(y) = f_{j+1}(x)}` with `π_j` the
/// projection onto the cokernel model of the accumulated image `I_j`.
pub fn chain_from_collineation(cc: &CompleteCollineation) -> Result<NodalChain> {
    let report = validate_collineation(cc);
    if !report.is_valid() {
        return Err(Error::InvalidCollineation(Box::new(report)));
    }
    let rank_sum: usize = cc.ranks().iter().sum();
    if rank_sum != cc.ctx.u() {
        return Err(Error::dims(format!(
            "stage ranks sum to {rank_sum}, a chain needs u = {}",
            cc.ctx.u()
        )));
    }
    let split = cc.ctx.split();
    let images = cc.image_chain()?;
    let components = cc
        .stages
        .iter()
        .enumerate()
        .map(|(j, stage)| {
            let k_prev = cc.kernel_before(j);
            let i_prev = &images[j];
            let xs = k_prev.basis().row_vecs();
            let ys: Vec<Vec<Rat>> = (0..stage.map.cols())
                .map(|l| i_prev.cokernel_section(&stage.map.column(l)))
                .collect();
            Subspace::graph_with(&xs, &ys, &i_prev.basis().row_vecs(), split)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NodalChain {
        ctx: cc.ctx,
        components,
    })
}

/// Recovers the complete collineation whose graphs form the chain.
pub fn collineation_from_chain(chain: &NodalChain) -> Result<CompleteCollineation> {
    collineation_from_chain_as(chain, Flavor::General)
}

/// [`collineation_from_chain`] with the result tagged by `flavor` and
/// validated against it.
pub fn collineation_from_chain_as(
    chain: &NodalChain,
    flavor: Flavor,
) -> Result<CompleteCollineation> {
    let report = validate_chain(chain);
    if !report.is_valid() {
        return Err(Error::InvalidChain(Box::new(report)));
    }
    let split = chain.ctx.split();
    let dim_v = split.dim_v;
    let domain = chain.components[0].project_v()?.v_component()?;
    let mut maps = Vec::with_capacity(chain.components.len());
    for c in &chain.components {
        // echelon rows with a pivot in V: their V parts are the echelon basis
        // of p_V(U_j) and their W parts are images
        let k_prev = c.project_v()?.v_component()?;
        let i_prev = c.cap_w()?.w_component()?;
        let basis = c.basis();
        let images: Vec<Vec<Rat>> = c
            .pivots()
            .into_iter()
            .enumerate()
            .filter(|&(_, p)| p < dim_v)
            .map(|(r, _)| basis.row(r)[dim_v..].to_vec())
            .collect();
        maps.push(stage_from_images(&k_prev, &i_prev, &images)?.map);
    }
    let cc = CompleteCollineation::from_maps(chain.ctx, flavor, domain, maps)?;
    let check = validate_collineation(&cc);
    if !check.is_valid() {
        return Err(Error::InvalidCollineation(Box::new(check)));
    }
    Ok(cc)
}
