//! The section count of the Halphen cycle against that of a generic orbit
//! closure, and the generating functions that prove them equal.
//!
//! For the union of `ℙ^{u−i} × ℙ^{i−1}`, `i = 1..u`, the sections of
//! `O(k, k)` number `Σ_{i=0}^{u−1} C(u−2−i+k, k−1)·C(i+k, k)`; for `ℙ^{u−1}`
//! embedded linearly they number `C(u−1+2k, 2k)`. Both have generating
//! function `(1−x)^{−1−2k}` in the variable marking `u − 1`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

/// `C(n, k)`, and `0` when `k < 0`, `n < 0` or `n < k`.
pub fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || n < k {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k.min(n - k)))
}

fn big_number<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    let num: serde_json::Number = n.to_string().parse().map_err(serde::ser::Error::custom)?;
    num.serialize(s)
}

fn big_numbers<S: Serializer>(ns: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    let nums = ns
        .iter()
        .map(|n| n.to_string().parse::<serde_json::Number>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(serde::ser::Error::custom)?;
    nums.serialize(s)
}

mod big_de {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer};
    use serde_json::Value;

    fn from_value<E: serde::de::Error>(v: &Value) -> Result<BigInt, E> {
        let text = match v {
            Value::Number(n) => n.to_string(),
            Value::String(s) => s.clone(),
            other => return Err(E::custom(format!("expected an integer, got {other}"))),
        };
        text.parse().map_err(E::custom)
    }

    pub fn one<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        from_value(&Value::deserialize(d)?)
    }

    pub fn many<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<Value>::deserialize(d)?
            .iter()
            .map(from_value)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityResult {
    pub u: u64,
    pub k: u64,
    #[serde(serialize_with = "big_number", deserialize_with = "big_de::one")]
    pub lhs: BigInt,
    #[serde(serialize_with = "big_number", deserialize_with = "big_de::one")]
    pub rhs: BigInt,
    pub equal: bool,
}

/// Contribution of the component `ℙ^{u−i} × ℙ^{i−1}` (0-based `i`) to the
/// sections of `O(k, k)` on the Halphen cycle.
pub fn component_section_contribution(u: u64, k: u64, i: u64) -> BigInt {
    let (u, k, i) = (u as i64, k as i64, i as i64);
    binom(u - 2 - i + k, k - 1) * binom(i + k, k)
}

/// Own sections of the component minus those forced by agreement on its
/// intersection `ℙ^{u−i} × ℙ^{i−2}` with the earlier ones.
pub fn component_section_difference(u: u64, k: u64, i: u64) -> BigInt {
    let (u, k, i) = (u as i64, k as i64, i as i64);
    binom(u - 1 - i + k, k) * binom(i + k, k) - binom(u - 2 - i + k, k) * binom(i + k, k)
}

pub fn section_dim_lhs(u: u64, k: u64) -> BigInt {
    (0..u)
        .map(|i| component_section_contribution(u, k, i))
        .sum()
}

pub fn section_dim_rhs(u: u64, k: u64) -> BigInt {
    binom(u as i64 - 1 + 2 * k as i64, 2 * k as i64)
}

pub fn section_dim_identity(u: u64, k: u64) -> IdentityResult {
    let lhs = section_dim_lhs(u, k);
    let rhs = section_dim_rhs(u, k);
    IdentityResult {
        u,
        k,
        equal: lhs == rhs,
        lhs,
        rhs,
    }
}

/// Truncated power series with integer coefficients.
fn series_mul(a: &[BigInt], b: &[BigInt], order: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); order + 1];
    for (i, x) in a.iter().enumerate().take(order + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(order + 1 - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Inverse of a series with constant term `±1`, to the given order.
fn series_inverse(a: &[BigInt], order: usize) -> Vec<BigInt> {
    let a0 = &a[0];
    assert!(
        a0 == &BigInt::one() || a0 == &-BigInt::one(),
        "unit constant term"
    );
    let mut inv = vec![BigInt::zero(); order + 1];
    inv[0] = a0.clone();
    for n in 1..=order {
        let mut acc = BigInt::zero();
        for k in 1..=n.min(a.len() - 1) {
            acc += &a[k] * &inv[n - k];
        }
        inv[n] = -(acc * a0);
    }
    inv
}

/// `(1 − x)^e` as a polynomial.
fn one_minus_x_pow(e: u64) -> Vec<BigInt> {
    (0..=e)
        .map(|i| {
            let c = binom(e as i64, i as i64);
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect()
}

/// `(1 − x)^{−e}` to the given order, by series inversion.
pub fn inverse_power_series(e: u64, order: usize) -> Vec<BigInt> {
    series_inverse(&one_minus_x_pow(e), order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnakeOilResult {
    pub j: u64,
    pub order: usize,
    /// Coefficients of `Σ_r C(r, j) x^r`.
    #[serde(serialize_with = "big_numbers", deserialize_with = "big_de::many")]
    pub lhs: Vec<BigInt>,
    /// Coefficients of `x^j / (1 − x)^{j+1}`.
    #[serde(serialize_with = "big_numbers", deserialize_with = "big_de::many")]
    pub rhs: Vec<BigInt>,
    pub equal: bool,
}

/// `Σ_{r ≥ 0} C(r, j) x^r = x^j / (1 − x)^{j+1}`, compared coefficientwise up
/// to `x^order`.
pub fn snake_oil_check(j: u64, order: usize) -> SnakeOilResult {
    let lhs: Vec<BigInt> = (0..=order as i64).map(|r| binom(r, j as i64)).collect();
    let mut x_j = vec![BigInt::zero(); order + 1];
    if (j as usize) <= order {
        x_j[j as usize] = BigInt::one();
    }
    let rhs = series_mul(&x_j, &inverse_power_series(j + 1, order), order);
    SnakeOilResult {
        j,
        order,
        equal: lhs == rhs,
        lhs,
        rhs,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratingFunctionResult {
    pub k: u64,
    pub order: usize,
    /// `Σ_u lhs(u, k) x^{u−1}`.
    #[serde(serialize_with = "big_numbers", deserialize_with = "big_de::many")]
    pub lhs_series: Vec<BigInt>,
    /// `Σ_u rhs(u, k) x^{u−1}`.
    #[serde(serialize_with = "big_numbers", deserialize_with = "big_de::many")]
    pub rhs_series: Vec<BigInt>,
    /// `(1 − x)^{−1−2k}`.
    #[serde(serialize_with = "big_numbers", deserialize_with = "big_de::many")]
    pub target: Vec<BigInt>,
    pub equal: bool,
}

pub fn generating_function_check(k: u64, order: usize) -> GeneratingFunctionResult {
    let lhs_series: Vec<BigInt> = (1..=order as u64 + 1)
        .map(|u| section_dim_lhs(u, k))
        .collect();
    let rhs_series: Vec<BigInt> = (1..=order as u64 + 1)
        .map(|u| section_dim_rhs(u, k))
        .collect();
    let target = inverse_power_series(1 + 2 * k, order);
    GeneratingFunctionResult {
        k,
        order,
        equal: lhs_series == target && rhs_series == target,
        lhs_series,
        rhs_series,
        target,
    }
}
