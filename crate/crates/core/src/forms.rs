//! The pairings on `V ⊕ V*` behind complete quadrics and complete skew forms.
//!
//! In standard coordinates, with coordinate `i` of `V*` dual to coordinate `i`
//! of `V`:
//!
//! * symplectic: `ω((v, φ), (v', φ')) = φ'(v) − φ(v')`, Gram `[[0, I], [−I, 0]]`;
//! * symmetric: `q((v, φ), (v', φ')) = φ'(v) + φ(v')`, Gram `[[0, I], [I, 0]]`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Rat, RatMatrix, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairingKind {
    Symplectic,
    Symmetric,
}

impl std::str::FromStr for PairingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "symplectic" => Ok(PairingKind::Symplectic),
            "symmetric" => Ok(PairingKind::Symmetric),
            other => Err(Error::Parse(format!("unknown pairing {other:?}"))),
        }
    }
}

impl PairingKind {
    /// Gram matrix on `V ⊕ V*` with `dim V = n`.
    pub fn gram(self, n: usize) -> RatMatrix {
        let mut g = RatMatrix::zeros(2 * n, 2 * n);
        let lower = match self {
            PairingKind::Symplectic => -Rat::one(),
            PairingKind::Symmetric => Rat::one(),
        };
        for i in 0..n {
            g[(i, n + i)] = Rat::one();
            g[(n + i, i)] = lower.clone();
        }
        g
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    fn of(n: usize) -> Self {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyReport {
    pub kind: PairingKind,
    pub isotropic: bool,
    /// Isotropic of dimension `dim V`.
    pub maximal: bool,
    pub v_intersection_dim: usize,
    pub v_intersection_parity: Parity,
    /// For a maximal isotropic subspace of the symmetric pairing: whether it
    /// lies in the component of `V`, i.e. `dim U∩V ≡ dim V (mod 2)`.
    pub in_ogr_plus: Option<bool>,
}

pub fn isotropy_check(subspace: &Subspace, kind: PairingKind) -> Result<IsotropyReport> {
    let split = subspace
        .split()
        .ok_or_else(|| Error::dims("subspace has no V ⊕ V* split"))?;
    if split.dim_v != split.dim_w {
        return Err(Error::dims(format!(
            "pairing needs dim V = dim W, got {} and {}",
            split.dim_v, split.dim_w
        )));
    }
    let n = split.dim_v;
    let b = subspace.basis();
    let isotropic = b.mul(&kind.gram(n))?.mul(&b.transpose())?.is_zero();
    let maximal = isotropic && subspace.dim() == n;
    let v_dim = subspace.cap_v()?.dim();
    Ok(IsotropyReport {
        kind,
        isotropic,
        maximal,
        v_intersection_dim: v_dim,
        v_intersection_parity: Parity::of(v_dim),
        in_ogr_plus: (maximal && kind == PairingKind::Symmetric).then_some(v_dim % 2 == n % 2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Split;

    fn split(n: usize) -> Split {
        Split { dim_v: n, dim_w: n }
    }

    #[test]
    fn v_is_isotropic_for_both() {
        for n in 1..4 {
            let v = Subspace::v_space(split(n));
            for kind in [PairingKind::Symplectic, PairingKind::Symmetric] {
                let r = isotropy_check(&v, kind).unwrap();
                assert!(r.isotropic && r.maximal);
                assert_eq!(r.v_intersection_dim, n);
            }
            assert_eq!(
                isotropy_check(&v, PairingKind::Symmetric)
                    .unwrap()
                    .in_ogr_plus,
                Some(true)
            );
        }
    }

    #[test]
    fn self_adjoint_graph_is_lagrangian() {
        let a = RatMatrix::from_i64(&[&[1, 2], &[2, 5]]);
        let g = Subspace::graph_of(&a, split(2)).unwrap();
        assert!(isotropy_check(&g, PairingKind::Symplectic).unwrap().maximal);
        assert!(
            !isotropy_check(&g, PairingKind::Symmetric)
                .unwrap()
                .isotropic
        );
    }

    #[test]
    fn skew_graph_is_orthogonal() {
        let a = RatMatrix::from_i64(&[&[0, 3], &[-3, 0]]);
        let g = Subspace::graph_of(&a, split(2)).unwrap();
        let r = isotropy_check(&g, PairingKind::Symmetric).unwrap();
        assert!(r.maximal);
        assert_eq!(r.v_intersection_dim, 0);
        assert_eq!(r.v_intersection_parity, Parity::Even);
        assert_eq!(r.in_ogr_plus, Some(true));
    }

    #[test]
    fn needs_balanced_split() {
        let s = Subspace::v_space(Split { dim_v: 2, dim_w: 1 });
        assert!(isotropy_check(&s, PairingKind::Symmetric).is_err());
        assert!(isotropy_check(&Subspace::full(2), PairingKind::Symmetric).is_err());
    }
}
