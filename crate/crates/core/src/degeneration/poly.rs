use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Rat, RatMatrix};

/// Univariate polynomial over the rationals, coefficients in ascending degree
/// with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| Rat::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at `t = 0`; `None` for the zero polynomial.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Self::new(out)
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::new(coeffs)
    }

    /// Quotient and remainder of long division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let d = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[d].clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * b;
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => c.to_string(),
                1 => format!("{c}t"),
                _ => format!("{c}t^{k}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Matrix of polynomials in `t`: a one-parameter family `A(t)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::dims(format!(
                "{} entries for a {rows}x{cols} polynomial matrix",
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Poly::zero(); rows * cols],
        }
    }

    /// Builds a family from integer coefficient lists, one per entry.
    pub fn from_i64(rows: &[&[&[i64]]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::new();
        for r in rows {
            assert_eq!(r.len(), cols, "ragged polynomial matrix");
            entries.extend(r.iter().map(|c| Poly::from_i64(c)));
        }
        Self {
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn constant(m: &RatMatrix) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            entries: m.entries().iter().cloned().map(Poly::constant).collect(),
        }
    }

    /// `Σ_k t^k · coeffs[k]`.
    pub fn from_coefficients(coeffs: &[RatMatrix]) -> Result<Self> {
        let first = coeffs
            .first()
            .ok_or_else(|| Error::dims("no coefficient matrices"))?;
        let (rows, cols) = (first.rows(), first.cols());
        let mut out = Self::zeros(rows, cols);
        for (k, c) in coeffs.iter().enumerate() {
            if (c.rows(), c.cols()) != (rows, cols) {
                return Err(Error::dims("coefficient matrices differ in shape"));
            }
            for i in 0..rows {
                for j in 0..cols {
                    let term = Poly::monomial(c[(i, j)].clone(), k);
                    out[(i, j)] = out[(i, j)].add(&term);
                }
            }
        }
        Ok(out)
    }

    /// Normalizes a Laurent family: `entries[i]` is `Σ_k c_k t^(lowest_i + k)`.
    /// Multiplies through by `t^(-m)` where `m` is the least power present and
    /// returns the polynomial family together with `m`.
    pub fn from_laurent(
        rows: usize,
        cols: usize,
        entries: Vec<(i64, Vec<Rat>)>,
    ) -> Result<(Self, i64)> {
        if entries.len() != rows * cols {
            return Err(Error::dims("Laurent entry count"));
        }
        let lowest = entries
            .iter()
            .filter_map(|(low, c)| {
                let p = Poly::new(c.clone());
                p.order().map(|o| low + o as i64)
            })
            .min()
            .ok_or(Error::ZeroFamily)?;
        let polys = entries
            .into_iter()
            .map(|(low, c)| {
                let p = Poly::new(c);
                if p.is_zero() {
                    Poly::zero()
                } else {
                    p.shift((low - lowest) as usize)
                }
            })
            .collect();
        Ok((Self::new(rows, cols, polys)?, lowest))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn max_degree(&self) -> usize {
        self.entries
            .iter()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
    }

    /// Coefficient matrix of `t^k`.
    pub fn coefficient(&self, k: usize) -> RatMatrix {
        let entries = self.entries.iter().map(|p| p.coeff(k)).collect();
        RatMatrix::new(self.rows, self.cols, entries).expect("shape preserved")
    }

    pub fn shift(&self, k: usize) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|p| p.shift(k)).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::dims("polynomial matrix product shape"));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self[(i, k)].mul(&other[(k, j)]));
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// `left · self · right` for constant matrices.
    pub fn transform(&self, left: &RatMatrix, right: &RatMatrix) -> Result<Self> {
        Self::constant(left).mul(self)?.mul(&Self::constant(right))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols && {
            let t = self.transpose();
            self.entries
                .iter()
                .zip(&t.entries)
                .all(|(a, b)| *a == b.neg())
        }
    }

    /// Submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination over `Q[t]`.
    pub fn det(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::dims("determinant of non-square polynomial matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Poly::constant(Rat::one()));
        }
        let mut a = self.entries.clone();
        let mut sign = false;
        let mut prev = Poly::constant(Rat::one());
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !a[i * n + k].is_zero()) else {
                return Ok(Poly::zero());
            };
            if p != k {
                for j in 0..n {
                    a.swap(p * n + j, k * n + j);
                }
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = a[i * n + j]
                        .mul(&a[k * n + k])
                        .sub(&a[i * n + k].mul(&a[k * n + j]));
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division is exact");
                    a[i * n + j] = q;
                }
                a[i * n + k] = Poly::zero();
            }
            prev = a[k * n + k].clone();
        }
        let d = a[n * n - 1].clone();
        Ok(if sign { d.neg() } else { d })
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = Poly;

    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn poly_arithmetic() {
        let a = Poly::from_i64(&[1, 1]);
        let b = Poly::from_i64(&[-1, 1]);
        assert_eq!(a.mul(&b), Poly::from_i64(&[-1, 0, 1]));
        assert_eq!(a.sub(&a), Poly::zero());
        assert_eq!(Poly::from_i64(&[0, 0, 3]).order(), Some(2));
        assert_eq!(Poly::from_i64(&[1, 2, 0, 0]).degree(), Some(1));
        let (q, r) = Poly::from_i64(&[-1, 0, 1]).div_rem(&b);
        assert_eq!(q, a);
        assert!(r.is_zero());
        assert_eq!(a.eval(&rat(1, 2)), rat(3, 2));
    }

    #[test]
    fn det_of_family() {
        let m = PolyMatrix::from_i64(&[&[&[1], &[1]], &[&[1], &[1, 0, 1]]]);
        assert_eq!(m.det().unwrap(), Poly::from_i64(&[0, 0, 1]));
        let z = PolyMatrix::from_i64(&[&[&[0, 1], &[0, 2]], &[&[0, 3], &[0, 6]]]);
        assert!(z.det().unwrap().is_zero());
    }

    #[test]
    fn laurent_normalization() {
        let entries = vec![
            (-2, vec![rat(1, 1)]),
            (-3, vec![rat(2, 1)]),
            (0, vec![]),
            (-1, vec![rat(0, 1), rat(5, 1)]),
        ];
        let (m, low) = PolyMatrix::from_laurent(2, 2, entries).unwrap();
        assert_eq!(low, -3);
        assert_eq!(m[(0, 0)], Poly::from_i64(&[0, 1]));
        assert_eq!(m[(0, 1)], Poly::from_i64(&[2]));
        assert_eq!(m[(1, 1)], Poly::from_i64(&[0, 0, 0, 5]));
        assert!(m[(1, 0)].is_zero());
        assert!(matches!(
            PolyMatrix::from_laurent(1, 1, vec![(0, vec![])]),
            Err(Error::ZeroFamily)
        ));
    }
}
