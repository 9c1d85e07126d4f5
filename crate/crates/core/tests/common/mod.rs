//! Reference computations for the integration tests, written independently of
//! the library's elimination code: Leibniz determinants, textbook
//! Gauss-Jordan, Plücker vectors and naive polynomial arithmetic.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::{One, Zero};

use clm_core::{PolyMatrix, Rat, RatMatrix, Split, Subspace};

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// All permutations of `0..n` with their signs.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut perms = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut perms);
    perms
        .into_iter()
        .map(|p| {
            let inversions = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let sign = if inversions % 2 == 0 { 1 } else { -1 };
            (p, sign)
        })
        .collect()
}

pub fn leibniz_det(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut total = Rat::zero();
    for (p, sign) in permutations(n) {
        let mut term = int(sign);
        for (i, &j) in p.iter().enumerate() {
            term *= &m[i][j];
            if term.is_zero() {
                break;
            }
        }
        total += term;
    }
    total
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out.sort();
    out
}

pub fn rows_of(m: &RatMatrix) -> Vec<Vec<Rat>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Textbook Gauss-Jordan: reduced echelon rows (zero rows dropped) and pivots.
pub fn gauss_jordan(rows: &[Vec<Rat>], width: usize) -> (Vec<Vec<Rat>>, Vec<usize>) {
    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = Rat::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..width {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn rank(rows: &[Vec<Rat>], width: usize) -> usize {
    gauss_jordan(rows, width).0.len()
}

/// Basis of `{x : M x = 0}` for `M` given by rows of the given width.
pub fn null_space(rows: &[Vec<Rat>], width: usize) -> Vec<Vec<Rat>> {
    let (r, pivots) = gauss_jordan(rows, width);
    (0..width)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![Rat::zero(); width];
            v[f] = Rat::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r[k][f].clone();
            }
            v
        })
        .collect()
}

/// Nonzero Plücker coordinates of the span of `rows` (assumed independent).
pub fn plucker(rows: &[Vec<Rat>], ambient: usize) -> Vec<(Vec<usize>, Rat)> {
    let u = rows.len();
    subsets(ambient, u)
        .into_iter()
        .filter_map(|cols| {
            let minor: Vec<Vec<Rat>> = rows
                .iter()
                .map(|r| cols.iter().map(|&c| r[c].clone()).collect())
                .collect();
            let d = leibniz_det(&minor);
            (!d.is_zero()).then_some((cols, d))
        })
        .collect()
}

pub fn weight(cols: &[usize], split: Split) -> i64 {
    let a = cols.iter().filter(|&&c| c < split.dim_v).count() as i64;
    2 * a - cols.len() as i64
}

/// Whether two Plücker vectors (sparse) are proportional.
pub fn proportional(a: &[(Vec<usize>, Rat)], b: &[(Vec<usize>, Rat)]) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return a.is_empty() && b.is_empty();
    }
    let ratio = &a[0].1 / &b[0].1;
    a.iter()
        .zip(b)
        .all(|((ca, va), (cb, vb))| ca == cb && *va == &ratio * vb)
}

/// Orbit degree from the weights present: `(max − min) / gcd(differences)`.
pub fn orbit_degree(weights: &[i64]) -> u64 {
    let lo = *weights.iter().min().expect("nonempty");
    let hi = *weights.iter().max().expect("nonempty");
    let g = weights.iter().fold(0i64, |g, w| gcd(g, w - lo));
    if g == 0 {
        0
    } else {
        ((hi - lo) / g) as u64
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Polynomials as ascending coefficient vectors.
pub fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

pub fn poly_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

pub fn poly_order(a: &[Rat]) -> Option<usize> {
    a.iter().position(|x| !x.is_zero())
}

/// Leibniz determinant of a polynomial matrix given as coefficient vectors.
pub fn poly_det(m: &[Vec<Vec<Rat>>]) -> Vec<Rat> {
    let n = m.len();
    let mut total = Vec::new();
    for (p, sign) in permutations(n) {
        let mut term = vec![int(sign)];
        for (i, &j) in p.iter().enumerate() {
            term = poly_mul(&term, &m[i][j]);
            if term.iter().all(Zero::is_zero) {
                break;
            }
        }
        total = poly_add(&total, &term);
    }
    total
}

pub fn poly_entries(p: &PolyMatrix) -> Vec<Vec<Vec<Rat>>> {
    (0..p.rows())
        .map(|i| (0..p.cols()).map(|j| p[(i, j)].coeffs().to_vec()).collect())
        .collect()
}

/// Minimal order over all `i × i` minors, `None` if they all vanish.
pub fn min_minor_order(p: &PolyMatrix, i: usize) -> Option<usize> {
    let e = poly_entries(p);
    let mut best = None;
    for rows in subsets(p.rows(), i) {
        for cols in subsets(p.cols(), i) {
            let sub: Vec<Vec<Vec<Rat>>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| e[r][c].clone()).collect())
                .collect();
            if let Some(o) = poly_order(&poly_det(&sub)) {
                best = Some(best.map_or(o, |b: usize| b.min(o)));
            }
        }
    }
    best
}

/// Subspace of `V ⊕ W` spanned by the given rows, with the split attached.
pub fn split_span(rows: Vec<Vec<Rat>>, split: Split) -> Subspace {
    Subspace::from_rows(rows, split.ambient())
        .and_then(|s| s.with_split(split))
        .expect("rows of the ambient width")
}

pub fn mat_vec(m: &[Vec<Rat>], x: &[Rat]) -> Vec<Rat> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(x)
                .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}
