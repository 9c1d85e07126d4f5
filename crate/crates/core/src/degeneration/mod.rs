//! Local analysis of one-parameter families `A(t)` at `t = 0`.
//!
//! The central computation is the local Smith form: over the power series
//! ring `Q[[t]]` every matrix is equivalent to a diagonal of powers
//! `t^e₁, …, t^e_r` with `e₁ ≤ … ≤ e_r`. The exponents are the orders of the
//! invariant factors, and their partial sums are the minimal orders of the
//! minors of each size.
//!
//! Elimination runs on truncated power series. The precision is one more than
//! a bound on the degree of every nonzero minor, so no nonzero invariant
//! factor can be truncated away.

mod poly;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use poly::{Poly, PolyMatrix};

use crate::error::{Error, Result};
use crate::linalg::{Rat, RatMatrix};

/// Orders of the invariant factors of a family at `t = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithProfile {
    /// Ascending exponents, one per invariant factor.
    pub exponents: Vec<usize>,
    pub generic_rank: usize,
}

impl SmithProfile {
    /// Number of exponents sharing each distinct value, in ascending order of
    /// the value.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        let mut last = None;
        for &e in &self.exponents {
            if last == Some(e) {
                *out.last_mut().expect("nonempty") += 1;
            } else {
                out.push(1);
                last = Some(e);
            }
        }
        out
    }

    /// `e₁ + … + e_i`.
    pub fn partial_sum(&self, i: usize) -> usize {
        self.exponents[..i].iter().sum()
    }
}

/// Local Smith decomposition `A(t) = P(t) · diag(t^eᵢ) · Q(t)` with `P`, `Q`
/// invertible over `Q[[t]]`. Only the constant terms `P(0)` and `Q(0)` are
/// kept; they determine the limit of the family.
#[derive(Clone, Debug)]
pub struct LocalSmith {
    pub profile: SmithProfile,
    /// `P(0)`: column `i` pairs with exponent `i` for `i < generic_rank`.
    pub left: RatMatrix,
    /// `Q(0)`: row `i` pairs with exponent `i` for `i < generic_rank`.
    pub right: RatMatrix,
}

/// Minimal order of vanishing at `t = 0` over all entries.
pub fn entry_valuation(p: &PolyMatrix) -> Result<usize> {
    p.entries()
        .iter()
        .filter_map(Poly::order)
        .min()
        .ok_or(Error::ZeroFamily)
}

/// Working precision: one more than a bound for the degree of any minor. Any
/// minor uses at most one entry per row, so the sum of the row-wise maximal
/// degrees bounds it; likewise for columns.
pub fn precision_bound(p: &PolyMatrix) -> usize {
    let row_sum: usize = (0..p.rows())
        .map(|i| {
            (0..p.cols())
                .filter_map(|j| p[(i, j)].degree())
                .max()
                .unwrap_or(0)
        })
        .sum();
    let col_sum: usize = (0..p.cols())
        .map(|j| {
            (0..p.rows())
                .filter_map(|i| p[(i, j)].degree())
                .max()
                .unwrap_or(0)
        })
        .sum();
    row_sum.min(col_sum) + 1
}

pub fn local_smith_exponents(p: &PolyMatrix) -> Result<SmithProfile> {
    Ok(local_smith(p)?.profile)
}

/// Smith reduction over the local ring at `t = 0`, tracking the constant
/// parts of the transforms.
pub fn local_smith(p: &PolyMatrix) -> Result<LocalSmith> {
    if p.is_zero() {
        return Err(Error::ZeroFamily);
    }
    let prec = precision_bound(p);
    let (m, n) = (p.rows(), p.cols());
    let mut a: Vec<Vec<Series>> = (0..m)
        .map(|i| {
            (0..n)
                .map(|j| Series::from_poly(&p[(i, j)], prec))
                .collect()
        })
        .collect();
    // constant parts of the accumulated row/column operations: E·A·F = D
    let mut e0 = RatMatrix::identity(m);
    let mut f0 = RatMatrix::identity(n);
    let mut exponents = Vec::new();

    for k in 0..m.min(n) {
        let best = (k..m)
            .flat_map(|i| (k..n).map(move |j| (i, j)))
            .filter_map(|(i, j)| a[i][j].order().map(|o| (o, i, j)))
            .min();
        let Some((e, pi, pj)) = best else {
            break;
        };
        a.swap(k, pi);
        swap_rows(&mut e0, k, pi);
        for row in a.iter_mut() {
            row.swap(k, pj);
        }
        swap_cols(&mut f0, k, pj);

        // normalize the pivot to exactly t^e
        let unit_inv = a[k][k].shift_down(e).inverse();
        let c = unit_inv.0[0].clone();
        for j in 0..n {
            a[k][j] = a[k][j].mul(&unit_inv);
        }
        scale_row(&mut e0, k, &c);

        for i in (0..m).filter(|&i| i != k) {
            if a[i][k].order().is_none() {
                continue;
            }
            let factor = a[i][k].shift_down(e);
            let c = factor.0[0].clone();
            for j in 0..n {
                let d = factor.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&d);
            }
            add_row_multiple(&mut e0, i, k, &-c);
        }
        for j in (0..n).filter(|&j| j != k) {
            if a[k][j].order().is_none() {
                continue;
            }
            let factor = a[k][j].shift_down(e);
            let c = factor.0[0].clone();
            a[k][j] = Series::zero(prec);
            add_col_multiple(&mut f0, j, k, &-c);
        }
        exponents.push(e);
    }
    debug_assert!(exponents.windows(2).all(|w| w[0] <= w[1]));
    let generic_rank = exponents.len();
    Ok(LocalSmith {
        profile: SmithProfile {
            exponents,
            generic_rank,
        },
        left: e0.inverse()?,
        right: f0.inverse()?,
    })
}

/// Number of `i × i` minors above which [`minor_valuation`] switches from
/// direct expansion to the Smith profile.
const DIRECT_MINOR_LIMIT: usize = 2500;

/// Minimal order at `t = 0` over all `i × i` minors.
pub fn minor_valuation(p: &PolyMatrix, i: usize) -> Result<usize> {
    let count = binomial(p.rows(), i).saturating_mul(binomial(p.cols(), i));
    if count <= DIRECT_MINOR_LIMIT {
        return minor_valuation_by_expansion(p, i);
    }
    let profile = local_smith_exponents(p)?;
    if i == 0 || i > profile.generic_rank {
        return Err(Error::MinorIdenticallyZero {
            size: i,
            rank: profile.generic_rank,
        });
    }
    Ok(profile.partial_sum(i))
}

/// [`minor_valuation`] by enumerating every `i × i` minor.
pub fn minor_valuation_by_expansion(p: &PolyMatrix, i: usize) -> Result<usize> {
    if i == 0 || i > p.rows().min(p.cols()) {
        return Err(Error::MinorIdenticallyZero {
            size: i,
            rank: p.rows().min(p.cols()),
        });
    }
    let mut best: Option<usize> = None;
    for rows in subsets(p.rows(), i) {
        for cols in subsets(p.cols(), i) {
            if let Some(o) = p.submatrix(&rows, &cols).det()?.order() {
                best = Some(best.map_or(o, |b| b.min(o)));
            }
        }
    }
    best.ok_or_else(|| Error::MinorIdenticallyZero {
        size: i,
        rank: (1..i)
            .rev()
            .find(|&k| minor_valuation_by_expansion(p, k).is_ok())
            .unwrap_or(0),
    })
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Power series truncated modulo `t^len`.
#[derive(Clone, Debug)]
struct Series(Vec<Rat>);

impl Series {
    fn zero(len: usize) -> Self {
        Series(vec![Rat::zero(); len])
    }

    fn from_poly(p: &Poly, len: usize) -> Self {
        Series((0..len).map(|k| p.coeff(k)).collect())
    }

    fn order(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// Divides by `t^e`; the result is known to precision `len − e` and is
    /// padded with zeros.
    fn shift_down(&self, e: usize) -> Self {
        let len = self.0.len();
        let mut v: Vec<Rat> = self.0[e..].to_vec();
        v.resize(len, Rat::zero());
        Series(v)
    }

    fn mul(&self, other: &Self) -> Self {
        let len = self.0.len();
        let mut out = vec![Rat::zero(); len];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0[..len - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series(out)
    }

    fn sub(&self, other: &Self) -> Self {
        Series(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Inverse of a unit (nonzero constant term).
    fn inverse(&self) -> Self {
        let len = self.0.len();
        let c0 = self.0[0].clone();
        assert!(!c0.is_zero(), "series inverse of a non-unit");
        let inv0 = Rat::one() / &c0;
        let mut out = vec![Rat::zero(); len];
        out[0] = inv0.clone();
        for k in 1..len {
            let mut acc = Rat::zero();
            for j in 1..=k {
                if !self.0[j].is_zero() {
                    acc += &self.0[j] * &out[k - j];
                }
            }
            out[k] = -acc * &inv0;
        }
        Series(out)
    }
}

fn swap_rows(m: &mut RatMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let t = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = t;
    }
}

fn swap_cols(m: &mut RatMatrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for i in 0..m.rows() {
        let t = m[(i, a)].clone();
        m[(i, a)] = m[(i, b)].clone();
        m[(i, b)] = t;
    }
}

fn scale_row(m: &mut RatMatrix, r: usize, c: &Rat) {
    for j in 0..m.cols() {
        m[(r, j)] *= c;
    }
}

/// `row[dst] += c · row[src]`.
fn add_row_multiple(m: &mut RatMatrix, dst: usize, src: usize, c: &Rat) {
    for j in 0..m.cols() {
        let d = &m[(src, j)] * c;
        m[(dst, j)] += d;
    }
}

/// `col[dst] += c · col[src]`.
fn add_col_multiple(m: &mut RatMatrix, dst: usize, src: usize, c: &Rat) {
    for i in 0..m.rows() {
        let d = &m[(i, src)] * c;
        m[(i, dst)] += d;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_1_t() -> PolyMatrix {
        PolyMatrix::from_i64(&[&[&[1], &[]], &[&[], &[0, 1]]])
    }

    #[test]
    fn entry_valuation_examples() {
        assert_eq!(entry_valuation(&diag_1_t()).unwrap(), 0);
        let m = PolyMatrix::from_i64(&[
            &[&[0, 0, 1], &[0, 0, 0, 1]],
            &[&[0, 0, 0, 0, 1], &[0, 0, 1]],
        ]);
        assert_eq!(entry_valuation(&m).unwrap(), 2);
        let c = RatMatrix::from_i64(&[&[2, 1], &[1, 1]]);
        assert_eq!(
            entry_valuation(&PolyMatrix::constant(&c).shift(1)).unwrap(),
            1
        );
        assert!(matches!(
            entry_valuation(&PolyMatrix::zeros(2, 2)),
            Err(Error::ZeroFamily)
        ));
    }

    #[test]
    fn smith_examples() {
        assert_eq!(
            local_smith_exponents(&diag_1_t()).unwrap().exponents,
            vec![0, 1]
        );
        let c = RatMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        let prof = local_smith_exponents(&PolyMatrix::constant(&c)).unwrap();
        assert_eq!(prof.exponents, vec![0, 0]);
        assert_eq!(prof.generic_rank, 2);
        let m = PolyMatrix::from_i64(&[&[&[1], &[1]], &[&[1], &[1, 0, 1]]]);
        assert_eq!(local_smith_exponents(&m).unwrap().exponents, vec![0, 2]);
        assert!(matches!(
            local_smith_exponents(&PolyMatrix::zeros(1, 3)),
            Err(Error::ZeroFamily)
        ));
    }

    #[test]
    fn smith_transforms_reconstruct_leading_terms() {
        // A = [[1, t], [t, 0]]: det = -t², exponents (0, 2)
        let a = PolyMatrix::from_i64(&[&[&[1], &[0, 1]], &[&[0, 1], &[]]]);
        let s = local_smith(&a).unwrap();
        assert_eq!(s.profile.exponents, vec![0, 2]);
        // leading coefficient is P(0)[:,0] Q(0)[0,:]
        let p0 = s.left.select_cols(&[0]);
        let q0 = s.right.select_rows(&[0]);
        assert_eq!(p0.mul(&q0).unwrap(), a.coefficient(0));
    }

    #[test]
    fn minor_valuation_examples() {
        assert_eq!(minor_valuation(&diag_1_t(), 2).unwrap(), 1);
        let c = PolyMatrix::constant(&RatMatrix::from_i64(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, 5]]));
        for i in 1..=3 {
            assert_eq!(minor_valuation(&c, i).unwrap(), 0);
        }
        let m = PolyMatrix::from_i64(&[&[&[0, 1], &[], &[]], &[&[], &[0, 1], &[]]]);
        assert_eq!(minor_valuation(&m, 2).unwrap(), 2);
        assert!(matches!(
            minor_valuation(&m, 3),
            Err(Error::MinorIdenticallyZero { .. })
        ));
    }

    #[test]
    fn rank_deficient_family() {
        // rows proportional for every t: generic rank 1
        let m = PolyMatrix::from_i64(&[&[&[1, 1], &[0, 2]], &[&[2, 2], &[0, 4]]]);
        let prof = local_smith_exponents(&m).unwrap();
        assert_eq!(prof.generic_rank, 1);
        assert!(matches!(
            minor_valuation_by_expansion(&m, 2),
            Err(Error::MinorIdenticallyZero { size: 2, rank: 1 })
        ));
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(subsets(2, 3).len(), 0);
        assert_eq!(binomial(5, 2), 10);
    }
}
