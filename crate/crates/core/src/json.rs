//! JSON encodings shared by the library and the CLI.
//!
//! Rationals are strings, `"n"` for integers and `"p/q"` otherwise, always
//! reduced. Matrices are `{"rows", "cols", "entries"}` with one inner list per
//! row; polynomial entries are lists of coefficients in ascending degree.
//! Subspaces are `{"ambient", "basis", "split"}` and are brought back to
//! canonical form on input. [`to_canonical_json`] sorts object keys so equal
//! values always print identically.

use serde::de::{self, DeserializeOwned, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::degeneration::{Poly, PolyMatrix};
use crate::error::{Error, Result};
use crate::linalg::{parse_rat, Rat, RatMatrix, Split, Subspace};

pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accepts a rational string or a plain JSON integer.
fn rat_from_value(v: &Value) -> std::result::Result<Rat, String> {
    match v {
        Value::String(s) => parse_rat(s).map_err(|e| e.to_string()),
        Value::Number(n) => parse_rat(&n.to_string()).map_err(|e| e.to_string()),
        other => Err(format!("expected a rational, got {other}")),
    }
}

/// `#[serde(with = "rat_string")]` for a single [`Rat`] field.
pub mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let v = Value::deserialize(d)?;
        rat_from_value(&v).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<T>>,
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries: (0..self.rows())
                .map(|i| self.row(i).iter().map(rat_to_string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

fn matrix_rows<E: de::Error>(repr: &MatrixRepr<Value>) -> std::result::Result<Vec<Vec<Rat>>, E> {
    if repr.entries.len() != repr.rows {
        return Err(E::custom(format!(
            "matrix declares {} rows but lists {}",
            repr.rows,
            repr.entries.len()
        )));
    }
    repr.entries
        .iter()
        .map(|row| {
            if row.len() != repr.cols {
                return Err(E::custom(format!(
                    "matrix row of length {}, expected {}",
                    row.len(),
                    repr.cols
                )));
            }
            row.iter()
                .map(|v| rat_from_value(v).map_err(E::custom))
                .collect()
        })
        .collect()
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::<Value>::deserialize(d)?;
        let rows = matrix_rows::<D::Error>(&repr)?;
        if repr.rows == 0 {
            return Ok(RatMatrix::zeros(0, repr.cols));
        }
        RatMatrix::from_rows(rows, repr.cols).map_err(de::Error::custom)
    }
}

impl Serialize for PolyMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries: Vec<Vec<Vec<String>>> = (0..self.rows())
            .map(|i| {
                (0..self.cols())
                    .map(|j| self[(i, j)].coeffs().iter().map(rat_to_string).collect())
                    .collect()
            })
            .collect();
        MatrixRepr {
            rows: self.rows(),
            cols: self.cols(),
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PolyMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MatrixRepr::<Vec<Value>>::deserialize(d)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(de::Error::custom(
                "polynomial matrix shape does not match rows/cols",
            ));
        }
        let mut entries = Vec::with_capacity(repr.rows * repr.cols);
        for row in &repr.entries {
            for coeffs in row {
                let c = coeffs
                    .iter()
                    .map(|v| rat_from_value(v).map_err(de::Error::custom))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                entries.push(Poly::new(c));
            }
        }
        PolyMatrix::new(repr.rows, repr.cols, entries).map_err(de::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient: usize,
    basis: RatMatrix,
    split: Option<Split>,
}

impl Serialize for Subspace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SubspaceRepr {
            ambient: self.ambient_dim(),
            basis: self.basis().clone(),
            split: self.split(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subspace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SubspaceRepr::deserialize(d)?;
        let sub = Subspace::span(&repr.basis, repr.ambient).map_err(de::Error::custom)?;
        match repr.split {
            Some(split) => sub.with_split(split).map_err(de::Error::custom),
            None => Ok(sub),
        }
    }
}

/// Serializes through [`Value`], whose maps keep keys sorted.
pub fn to_canonical_value<T: Serialize>(value: &T) -> Result<Value> {
    serde_json::to_value(value).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = to_canonical_value(value)?;
    serde_json::to_string(&v).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_canonical_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let v = to_canonical_value(value)?;
    serde_json::to_string_pretty(&v).map_err(|e| Error::Parse(e.to_string()))
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}
