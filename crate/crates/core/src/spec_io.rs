//! Ring, algebra, and element spec files: the structured-text interface of
//! the lab. Rationals travel as "p/q" strings; ℚ(√5) scalars as
//! ["p/q", "r/s"] pairs meaning p/q + (r/s)√5.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::algebra::{AlgebraError, CommAlgebra, Element, Provenance};
use crate::hermitian::hermitian_matrix_algebra;
use crate::linalg::Matrix;
use crate::scalar::{Rat, Scalar};
use crate::starring::{RingError, StarRing};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown ring name \"{0}\"")]
    UnknownRing(String),
    #[error("invalid ring table: {0}")]
    Ring(#[from] RingError),
    #[error("invalid algebra table: {0}")]
    Algebra(#[from] AlgebraError),
    #[error("element does not fit the algebra: {0}")]
    Element(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RingSpec {
    Named { name: String },
    CayleyDickson { cayley_dickson: CayleyDicksonSpec },
    Tensor { tensor: TensorSpec },
    Table { table: RingTableSpec },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CayleyDicksonSpec {
    pub base: String,
    pub gammas: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TensorSpec {
    pub left: Box<RingSpec>,
    pub right: Box<RingSpec>,
    #[serde(default)]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingTableSpec {
    pub dim: usize,
    /// mul[i][j][k]: coefficient of basis_k in basis_i · basis_j.
    pub mul: Vec<Vec<Vec<Rat>>>,
    /// invol[i][j]: matrix of the involution (column action on coefficients).
    pub invol: Vec<Vec<Rat>>,
    pub unit: usize,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
}

pub fn build_ring(spec: &RingSpec) -> Result<StarRing, SpecError> {
    match spec {
        RingSpec::Named { name } => {
            StarRing::named(name).ok_or_else(|| SpecError::UnknownRing(name.clone()))
        }
        RingSpec::CayleyDickson { cayley_dickson } => {
            let mut ring = StarRing::named(&cayley_dickson.base)
                .ok_or_else(|| SpecError::UnknownRing(cayley_dickson.base.clone()))?;
            for &g in &cayley_dickson.gammas {
                if g != 1 && g != -1 {
                    return Err(SpecError::Parse(format!("gamma must be ±1, got {g}")));
                }
                ring = ring.cayley_dickson_double(g);
            }
            Ok(ring)
        }
        RingSpec::Tensor { tensor } => {
            let left = build_ring(&tensor.left)?;
            let right = build_ring(&tensor.right)?;
            let name = tensor
                .name
                .clone()
                .unwrap_or_else(|| format!("{}(x){}", left.name, right.name));
            Ok(left.tensor_product(&right, name))
        }
        RingSpec::Table { table } => {
            let dim = table.dim;
            if table.mul.len() != dim || table.invol.len() != dim {
                return Err(SpecError::Parse("table shape mismatch".into()));
            }
            let sparse = table
                .mul
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| {
                            cell.iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(k, c)| (k, c.clone()))
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let invol =
                Matrix::from_fn(dim, dim, |i, j| table.invol[i][j].clone());
            let labels = table.labels.clone().unwrap_or_else(|| {
                (0..dim).map(|k| if k == table.unit { "1".into() } else { format!("e{k}") }).collect()
            });
            Ok(StarRing::new(
                dim,
                sparse,
                table.unit,
                invol,
                table.name.clone().unwrap_or_else(|| "custom".into()),
                labels,
            )?)
        }
    }
}

/// Self-contained spec for a ring (full table), used by certificates so that
/// replay never depends on the registry.
pub fn ring_to_table_spec(ring: &StarRing) -> RingSpec {
    RingSpec::Table {
        table: RingTableSpec {
            dim: ring.dim,
            mul: ring.dense_table(),
            invol: (0..ring.dim)
                .map(|i| (0..ring.dim).map(|j| ring.invol_matrix().at(i, j).clone()).collect())
                .collect(),
            unit: ring.unit,
            name: Some(ring.name.clone()),
            labels: Some(ring.labels.clone()),
        },
    }
}

/// Compact spec: registry name when available, full table otherwise.
pub fn ring_to_spec(ring: &StarRing) -> RingSpec {
    if StarRing::named(&ring.name).is_some() {
        RingSpec::Named { name: ring.name.clone() }
    } else {
        ring_to_table_spec(ring)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSpec {
    Hermitian { hermitian: HermitianSpec },
    Spin { spin: SpinSpec },
    Symmetrized { symmetrized_ring: RingSpec },
    Custom { custom: CustomAlgebraSpec },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HermitianSpec {
    pub ring: RingSpec,
    pub n: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpinSpec {
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CustomAlgebraSpec {
    pub dim: usize,
    pub table: Vec<Vec<Vec<Rat>>>,
    pub unit: Vec<Rat>,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    #[serde(default)]
    pub label: Option<String>,
}

pub fn build_algebra(spec: &AlgebraSpec) -> Result<CommAlgebra<Rat>, SpecError> {
    match spec {
        AlgebraSpec::Hermitian { hermitian } => {
            let ring = Arc::new(build_ring(&hermitian.ring)?);
            if hermitian.n == 0 {
                return Err(SpecError::Parse("hermitian n must be ≥ 1".into()));
            }
            Ok(hermitian_matrix_algebra(&ring, hermitian.n))
        }
        AlgebraSpec::Spin { spin } => Ok(CommAlgebra::spin_factor(spin.dim)?),
        AlgebraSpec::Symmetrized { symmetrized_ring } => {
            let ring = build_ring(symmetrized_ring)?;
            Ok(CommAlgebra::<Rat>::symmetrized_ring(&ring))
        }
        AlgebraSpec::Custom { custom } => {
            let dim = custom.dim;
            if custom.table.len() != dim || custom.unit.len() != dim {
                return Err(SpecError::Parse("custom table shape mismatch".into()));
            }
            let table = custom
                .table
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|cell| {
                            cell.iter()
                                .enumerate()
                                .filter(|(_, c)| !c.is_zero())
                                .map(|(k, c)| (k, c.clone()))
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let labels = custom
                .labels
                .clone()
                .unwrap_or_else(|| (0..dim).map(|k| format!("b{k}")).collect());
            Ok(CommAlgebra::from_table(
                table,
                Element { coeffs: custom.unit.clone() },
                labels,
                Provenance::Custom {
                    label: custom.label.clone().unwrap_or_else(|| "custom".into()),
                },
            )?)
        }
    }
}

pub fn parse_ring_spec(text: &str) -> Result<RingSpec, SpecError> {
    serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))
}

pub fn parse_algebra_spec(text: &str) -> Result<AlgebraSpec, SpecError> {
    serde_json::from_str(text).map_err(|e| SpecError::Parse(e.to_string()))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementSpec {
    Coeffs { coeffs: Vec<Rat> },
    ByLabel { by_label: BTreeMap<String, Rat> },
}

pub fn build_element(a: &CommAlgebra<Rat>, spec: &ElementSpec) -> Result<Element<Rat>, SpecError> {
    match spec {
        ElementSpec::Coeffs { coeffs } => {
            if coeffs.len() != a.dim {
                return Err(SpecError::Element(format!(
                    "expected {} coefficients, got {}",
                    a.dim,
                    coeffs.len()
                )));
            }
            Ok(Element { coeffs: coeffs.clone() })
        }
        ElementSpec::ByLabel { by_label } => {
            let mut coeffs = vec![Rat::zero(); a.dim];
            for (label, c) in by_label {
                let Some(k) = a.basis_labels.iter().position(|l| l == label) else {
                    return Err(SpecError::Element(format!("unknown basis label \"{label}\"")));
                };
                coeffs[k] = c.clone();
            }
            Ok(Element { coeffs })
        }
    }
}

/// Label → scalar map rendering of an element, for reports.
pub fn element_to_json<S: Scalar>(a: &CommAlgebra<S>, x: &Element<S>) -> Value {
    let mut map = serde_json::Map::new();
    for (k, c) in x.coeffs.iter().enumerate() {
        if !c.is_zero() {
            map.insert(a.basis_labels[k].clone(), Value::String(c.to_string()));
        }
    }
    Value::Object(map)
}

pub fn ring_element_to_json(ring: &StarRing, x: &crate::starring::RingElement) -> Value {
    let mut map = serde_json::Map::new();
    for (k, c) in x.coeffs.iter().enumerate() {
        if !c.is_zero() {
            map.insert(ring.labels[k].clone(), Value::String(c.to_string()));
        }
    }
    Value::Object(map)
}
