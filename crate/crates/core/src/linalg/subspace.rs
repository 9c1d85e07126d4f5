use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::RatMatrix;
use super::rat::Rat;
use crate::error::{Error, Result};

/// Marks the first `dim_v` coordinates of an ambient space as `V` and the
/// remaining `dim_w` as `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Split {
    pub dim_v: usize,
    pub dim_w: usize,
}

impl Split {
    pub fn ambient(&self) -> usize {
        self.dim_v + self.dim_w
    }
}

/// `V`, `W` and the rank parameter `u` with `1 ≤ u ≤ min(dim V, dim W)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawContext")]
pub struct SplitContext {
    dim_v: usize,
    dim_w: usize,
    u: usize,
}

#[derive(Deserialize)]
struct RawContext {
    dim_v: usize,
    dim_w: usize,
    u: usize,
}

impl TryFrom<RawContext> for SplitContext {
    type Error = Error;

    fn try_from(raw: RawContext) -> Result<Self> {
        SplitContext::new(raw.dim_v, raw.dim_w, raw.u)
    }
}

impl SplitContext {
    pub fn new(dim_v: usize, dim_w: usize, u: usize) -> Result<Self> {
        if u == 0 || u > dim_v.min(dim_w) {
            return Err(Error::InvalidContext(format!(
                "need 1 <= u <= min(dim V, dim W), got u={u}, dim V={dim_v}, dim W={dim_w}"
            )));
        }
        Ok(Self { dim_v, dim_w, u })
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_w(&self) -> usize {
        self.dim_w
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn split(&self) -> Split {
        Split {
            dim_v: self.dim_v,
            dim_w: self.dim_w,
        }
    }
}

/// A linear subspace, stored by its reduced row-echelon basis.
///
/// The echelon basis is the unique representative of the span, so equality
/// of subspaces is equality of bases. The optional split is carried along as
/// metadata and does not take part in equality.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: RatMatrix,
    split: Option<Split>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.basis.hash(state);
    }
}

/// The span of the rows of `vectors`, in canonical form.
pub fn canonicalize(vectors: &RatMatrix, ambient_dim: usize) -> Result<Subspace> {
    Subspace::span(vectors, ambient_dim)
}

/// `(a ∩ b, a + b)`.
pub fn meet_join(a: &Subspace, b: &Subspace) -> Result<(Subspace, Subspace)> {
    Ok((a.meet(b)?, a.join(b)?))
}

/// Rank, kernel and a cokernel model of a linear map given as a matrix acting
/// on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelData {
    pub rank: usize,
    pub kernel: Subspace,
    /// Surjection from the codomain onto the non-pivot coordinates of the
    /// image; its kernel is exactly the image.
    pub cokernel_projection: RatMatrix,
}

pub fn rank_kernel_cokernel(m: &RatMatrix) -> CokernelData {
    let kernel = Subspace::span(&m.null_space(), m.cols()).expect("null space width");
    let image = Subspace::span(&m.transpose(), m.rows()).expect("image width");
    CokernelData {
        rank: image.dim(),
        kernel,
        cokernel_projection: image.cokernel_projection(),
    }
}

impl Subspace {
    /// Span of the rows of `vectors` inside an `ambient`-dimensional space.
    pub fn span(vectors: &RatMatrix, ambient: usize) -> Result<Self> {
        if vectors.cols() != ambient {
            return Err(Error::dims(format!(
                "vectors of length {} in ambient dimension {ambient}",
                vectors.cols()
            )));
        }
        let (basis, _) = vectors.rref();
        Ok(Self {
            ambient,
            basis,
            split: None,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>, ambient: usize) -> Result<Self> {
        Self::span(&RatMatrix::from_rows(rows, ambient)?, ambient)
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: RatMatrix::zeros(0, ambient),
            split: None,
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self {
            ambient,
            basis: RatMatrix::identity(ambient),
            split: None,
        }
    }

    /// Coordinate subspace spanned by the given standard basis vectors.
    pub fn coordinate(ambient: usize, coords: &[usize]) -> Result<Self> {
        let rows = coords
            .iter()
            .map(|&c| {
                if c >= ambient {
                    return Err(Error::dims(format!("coordinate {c} >= {ambient}")));
                }
                let mut v = vec![Rat::zero(); ambient];
                v[c] = Rat::one();
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows, ambient)
    }

    /// Attaches a split; the ambient dimension must be `dim_v + dim_w`.
    pub fn with_split(mut self, split: Split) -> Result<Self> {
        if split.ambient() != self.ambient {
            return Err(Error::dims(format!(
                "split {}+{} does not match ambient dimension {}",
                split.dim_v, split.dim_w, self.ambient
            )));
        }
        self.split = Some(split);
        Ok(self)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &RatMatrix {
        &self.basis
    }

    pub fn split(&self) -> Option<Split> {
        self.split
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Pivot columns of the echelon basis.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| {
                self.basis
                    .row(i)
                    .iter()
                    .position(|x| !x.is_zero())
                    .expect("echelon rows are nonzero")
            })
            .collect()
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::dims(format!(
                "ambient dimensions {} and {}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    fn keep_split(mut self, split: Option<Split>) -> Self {
        self.split = split;
        self
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis)?;
        Ok(Self::span(&stacked, self.ambient)?.keep_split(self.split.or(other.split)))
    }

    /// Intersection, via the kernel of `(x, y) ↦ x·A − y·B`.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.ambient).keep_split(self.split.or(other.split)));
        }
        let neg = other.basis.scale(&-Rat::one());
        let relation = self.basis.vstack(&neg)?.transpose();
        let kernel = relation.null_space();
        let k = self.dim();
        let coeffs = kernel.select_cols(&(0..k).collect::<Vec<_>>());
        let vectors = coeffs.mul(&self.basis)?;
        Ok(Self::span(&vectors, self.ambient)?.keep_split(self.split.or(other.split)))
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let row = RatMatrix::from_rows(vec![v.to_vec()], self.ambient).expect("length checked");
        let stacked = self.basis.vstack(&row).expect("same width");
        stacked.rank() == self.dim()
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && (0..other.dim()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    /// Coefficients of a vector of this subspace in the echelon basis. These
    /// are simply its entries at the pivot columns.
    pub fn coordinates_of(&self, v: &[Rat]) -> Vec<Rat> {
        self.pivots().into_iter().map(|p| v[p].clone()).collect()
    }

    /// Linear combination `Σ c_i b_i` of the echelon basis vectors.
    pub fn combine(&self, coeffs: &[Rat]) -> Vec<Rat> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count");
        let mut out = vec![Rat::zero(); self.ambient];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                *o += c * b;
            }
        }
        out
    }

    /// Projection onto the non-pivot coordinates, as a matrix acting on
    /// column vectors. Its kernel is exactly this subspace and it restricts to
    /// the identity on the non-pivot coordinates.
    pub fn cokernel_projection(&self) -> RatMatrix {
        let pivots = self.pivots();
        let free: Vec<usize> = (0..self.ambient).filter(|c| !pivots.contains(c)).collect();
        let mut p = RatMatrix::zeros(free.len(), self.ambient);
        for (r, &f) in free.iter().enumerate() {
            p[(r, f)] = Rat::one();
            for (k, &piv) in pivots.iter().enumerate() {
                let b = &self.basis[(k, f)];
                if !b.is_zero() {
                    p[(r, piv)] = -b.clone();
                }
            }
        }
        p
    }

    /// Right inverse of [`Self::cokernel_projection`]: places a quotient
    /// vector on the non-pivot coordinates.
    pub fn cokernel_section(&self, q: &[Rat]) -> Vec<Rat> {
        let pivots = self.pivots();
        let mut out = vec![Rat::zero(); self.ambient];
        let free = (0..self.ambient).filter(|c| !pivots.contains(c));
        for (f, x) in free.zip(q) {
            out[f] = x.clone();
        }
        out
    }

    /// Annihilator under the standard pairing, in the same coordinates.
    pub fn annihilator(&self) -> Self {
        Self::span(&self.basis.null_space(), self.ambient).expect("null space width")
    }

    fn require_split(&self) -> Result<Split> {
        self.split
            .ok_or_else(|| Error::dims("subspace has no V ⊕ W split"))
    }

    /// `V` as a subspace of the split ambient space.
    pub fn v_space(split: Split) -> Self {
        let coords: Vec<usize> = (0..split.dim_v).collect();
        Self::coordinate(split.ambient(), &coords)
            .expect("in range")
            .keep_split(Some(split))
    }

    /// `W` as a subspace of the split ambient space.
    pub fn w_space(split: Split) -> Self {
        let coords: Vec<usize> = (split.dim_v..split.ambient()).collect();
        Self::coordinate(split.ambient(), &coords)
            .expect("in range")
            .keep_split(Some(split))
    }

    /// `U ∩ V`.
    pub fn cap_v(&self) -> Result<Self> {
        let split = self.require_split()?;
        self.meet(&Self::v_space(split))
    }

    /// `U ∩ W`.
    pub fn cap_w(&self) -> Result<Self> {
        let split = self.require_split()?;
        self.meet(&Self::w_space(split))
    }

    /// `p_V(U)`, the image under the projection killing `W`, kept inside the
    /// ambient space. This is `(U + W)/W` under `(V ⊕ W)/W ≅ V`.
    pub fn project_v(&self) -> Result<Self> {
        let split = self.require_split()?;
        self.project(split, 0..split.dim_v)
    }

    /// `p_W(U)`, the image under the projection killing `V`.
    pub fn project_w(&self) -> Result<Self> {
        let split = self.require_split()?;
        self.project(split, split.dim_v..split.ambient())
    }

    fn project(&self, split: Split, keep: std::ops::Range<usize>) -> Result<Self> {
        let mut m = self.basis.clone();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !keep.contains(&j) {
                    m[(i, j)] = Rat::zero();
                }
            }
        }
        Ok(Self::span(&m, self.ambient)?.keep_split(Some(split)))
    }

    /// Restricts a subspace of `V ⊕ W` lying in `V` to `V`'s own coordinates.
    pub fn v_component(&self) -> Result<Self> {
        let split = self.require_split()?;
        let cols: Vec<usize> = (0..split.dim_v).collect();
        Self::span(&self.basis.select_cols(&cols), split.dim_v)
    }

    /// Restricts a subspace of `V ⊕ W` lying in `W` to `W`'s own coordinates.
    pub fn w_component(&self) -> Result<Self> {
        let split = self.require_split()?;
        let cols: Vec<usize> = (split.dim_v..split.ambient()).collect();
        Self::span(&self.basis.select_cols(&cols), split.dim_w)
    }

    /// Embeds a subspace of `V` (ambient `dim_v`) into `V ⊕ W`.
    pub fn embed_v(v_sub: &Self, split: Split) -> Result<Self> {
        if v_sub.ambient != split.dim_v {
            return Err(Error::dims("subspace is not inside V"));
        }
        let pad = RatMatrix::zeros(v_sub.dim(), split.dim_w);
        Self::span(&v_sub.basis.hstack(&pad)?, split.ambient())?.with_split(split)
    }

    /// Embeds a subspace of `W` (ambient `dim_w`) into `V ⊕ W`.
    pub fn embed_w(w_sub: &Self, split: Split) -> Result<Self> {
        if w_sub.ambient != split.dim_w {
            return Err(Error::dims("subspace is not inside W"));
        }
        let pad = RatMatrix::zeros(w_sub.dim(), split.dim_v);
        Self::span(&pad.hstack(&w_sub.basis)?, split.ambient())?.with_split(split)
    }

    /// Graph `{(x, g(x))}` inside `V ⊕ W`, where the vectors `rows_v[l]` of `V`
    /// are sent to `rows_w[l]` in `W`, plus the extra `W` vectors `extra_w`.
    pub fn graph_with(
        rows_v: &[Vec<Rat>],
        rows_w: &[Vec<Rat>],
        extra_w: &[Vec<Rat>],
        split: Split,
    ) -> Result<Self> {
        if rows_v.len() != rows_w.len() {
            return Err(Error::dims("graph needs one image per vector"));
        }
        let mut rows = Vec::with_capacity(rows_v.len() + extra_w.len());
        for (v, w) in rows_v.iter().zip(rows_w) {
            if v.len() != split.dim_v || w.len() != split.dim_w {
                return Err(Error::dims("graph vector lengths"));
            }
            let mut r = v.clone();
            r.extend(w.iter().cloned());
            rows.push(r);
        }
        for w in extra_w {
            if w.len() != split.dim_w {
                return Err(Error::dims("graph vector lengths"));
            }
            let mut r = vec![Rat::zero(); split.dim_v];
            r.extend(w.iter().cloned());
            rows.push(r);
        }
        Self::from_rows(rows, split.ambient())?.with_split(split)
    }

    /// Graph of the map `V → W` with matrix `a` (`dim W × dim V`, acting on
    /// column vectors).
    pub fn graph_of(a: &RatMatrix, split: Split) -> Result<Self> {
        if a.rows() != split.dim_w || a.cols() != split.dim_v {
            return Err(Error::dims("graph matrix must be dim W x dim V"));
        }
        let vs: Vec<Vec<Rat>> = RatMatrix::identity(split.dim_v).row_vecs();
        let ws: Vec<Vec<Rat>> = (0..split.dim_v).map(|j| a.column(j)).collect();
        Self::graph_with(&vs, &ws, &[], split)
    }

    /// Whether `U = (U ∩ V) ⊕ (U ∩ W)`, i.e. `U` is a fixed point of the
    /// torus action.
    pub fn is_decomposable(&self) -> Result<bool> {
        Ok(self.cap_v()?.dim() + self.cap_w()?.dim() == self.dim())
    }
}
