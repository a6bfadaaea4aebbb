//! Linear dependence between concept vectors, and histogram models of the
//! probability that a vector exists.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::existence::ExistenceSet;
use crate::schema::{DomainSchema, OntVector, QualeKind, Value};

/// Default relative tolerance for rank and span tests.
pub const DEFAULT_DEPENDENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct Dependency {
    /// Index of the dependent vector in the input.
    pub index: usize,
    /// One coefficient per preceding vector; vectors that were themselves
    /// dependent get 0.
    pub coefficients: Vec<f64>,
    /// Infinity-norm of `v - sum(c_i * u_i)`.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DependenceReport {
    pub rank: usize,
    pub dependent: Vec<Dependency>,
    /// `tol` times the largest absolute entry.
    pub tolerance_used: f64,
}

fn numeric_rows(vectors: &[OntVector]) -> Result<Vec<Vec<f64>>> {
    let schema = vectors[0].schema();
    if let Some(d) = schema.dims().iter().find(|d| !d.is_numeric()) {
        return Err(Error::NonNumericDimension(d.name.clone()));
    }
    vectors
        .iter()
        .map(|v| {
            if !v.schema().same_as(schema) {
                return Err(Error::SchemaMismatch);
            }
            v.to_f64s()
        })
        .collect()
}

/// Incremental elimination: each vector is reduced against the echelon rows
/// built from the independent vectors before it. A vector whose remainder
/// is within tolerance is reported as a combination of its predecessors.
pub fn detect_linear_dependence(vectors: &[OntVector], tol: f64) -> Result<DependenceReport> {
    if vectors.len() < 2 {
        return Err(Error::TooFewVectors {
            needed: 2,
            found: vectors.len(),
        });
    }
    let rows = numeric_rows(vectors)?;
    let n = rows.len();
    let max_abs = rows.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
    let tolerance_used = tol * max_abs;

    // Echelon row, its pivot column, and its expression over the inputs.
    let mut echelon: Vec<(Vec<f64>, usize, Vec<f64>)> = Vec::new();
    let mut dependent = Vec::new();
    for (k, v) in rows.iter().enumerate() {
        let mut rem = v.clone();
        let mut combo = vec![0.0; n];
        for (row, pivot, expr) in &echelon {
            let f = rem[*pivot] / row[*pivot];
            if f == 0.0 {
                continue;
            }
            for (r, x) in rem.iter_mut().zip(row) {
                *r -= f * x;
            }
            for (c, e) in combo.iter_mut().zip(expr) {
                *c += f * e;
            }
        }
        let coefficients = combo[..k].to_vec();
        let residual = v
            .iter()
            .enumerate()
            .map(|(j, x)| {
                let fit: f64 = coefficients.iter().zip(&rows).map(|(c, u)| c * u[j]).sum();
                (x - fit).abs()
            })
            .fold(0.0, f64::max);
        let (pivot, size) = rem
            .iter()
            .enumerate()
            .fold((0, 0.0f64), |(bi, bx), (i, x)| {
                if x.abs() > bx {
                    (i, x.abs())
                } else {
                    (bi, bx)
                }
            });
        if size <= tolerance_used && residual <= tolerance_used {
            dependent.push(Dependency {
                index: k,
                coefficients,
                residual,
            });
        } else {
            let mut expr: Vec<f64> = combo.iter().map(|c| -c).collect();
            expr[k] = 1.0;
            echelon.push((rem, pivot, expr));
        }
    }
    Ok(DependenceReport {
        rank: echelon.len(),
        dependent,
        tolerance_used,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Combination {
    pub coefficients: Vec<f64>,
    /// Euclidean norm of `target - sum(c_i * candidate_i)`.
    pub residual: f64,
}

/// Least-squares coefficients expressing `target` over `candidates`.
/// Fails with `NotInSpan` when the residual exceeds `tol * max(|target|, 1)`.
pub fn express_as_combination(
    target: &OntVector,
    candidates: &[OntVector],
    tol: f64,
) -> Result<Combination> {
    if candidates.is_empty() {
        return Err(Error::TooFewVectors {
            needed: 1,
            found: 0,
        });
    }
    let mut all = Vec::with_capacity(candidates.len() + 1);
    all.push(target.clone());
    all.extend_from_slice(candidates);
    let rows = numeric_rows(&all)?;
    let b = DVector::from_column_slice(&rows[0]);
    let d = b.len();
    let a = DMatrix::from_fn(d, candidates.len(), |i, j| rows[j + 1][i]);
    let svd = a.clone().svd(true, true);
    let cutoff = svd.singular_values.max() * 1e-12 * (d.max(candidates.len()) as f64);
    let x = svd
        .solve(&b, cutoff)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    let residual = (&a * &x - &b).norm();
    if residual > tol * b.norm().max(1.0) {
        return Err(Error::NotInSpan { residual });
    }
    Ok(Combination {
        coefficients: x.iter().copied().collect(),
        residual,
    })
}

/// Upper limit on histogram cells.
pub const MAX_CELLS: u128 = 1 << 22;

/// How one dimension is divided into cells.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Partition {
    /// Equal-width bins; bin `i` is `[edges[i], edges[i+1])`, the last one
    /// closed on the right.
    Bins { dim: String, edges: Vec<f64> },
    /// One cell per categorical or boolean value.
    Values { dim: String, values: Vec<String> },
}

impl Partition {
    fn cells(&self) -> usize {
        match self {
            Partition::Bins { edges, .. } => edges.len() - 1,
            Partition::Values { values, .. } => values.len(),
        }
    }

    /// Cell index and whether the value had to be clamped into range.
    fn locate(&self, v: &Value) -> (usize, bool) {
        match (self, v) {
            (Partition::Bins { edges, .. }, _) => {
                let x = v.as_f64().expect("numeric dimension");
                let bins = edges.len() - 1;
                if x < edges[0] {
                    (0, true)
                } else if x > edges[bins] {
                    (bins - 1, true)
                } else {
                    (edges[1..bins].partition_point(|e| *e <= x), false)
                }
            }
            (Partition::Values { .. }, Value::Category(i)) => (*i, false),
            (Partition::Values { .. }, Value::Bool(b)) => (*b as usize, false),
            _ => unreachable!("partition built from the same schema"),
        }
    }
}

/// Histogram estimate of the probability that a vector exists.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityModel {
    schema: Arc<DomainSchema>,
    partitions: Vec<Partition>,
    counts: Vec<u64>,
    smoothing: f64,
    probabilities: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellProbability {
    pub probability: f64,
    /// Per-dimension cell index.
    pub cell: Vec<usize>,
    /// Some coordinate lay outside the fitted range and was mapped to the
    /// nearest edge cell.
    pub clamped: bool,
}

#[derive(Serialize, Deserialize)]
struct ModelFile {
    schema: serde_json::Value,
    smoothing: f64,
    partitions: Vec<Partition>,
    counts: Vec<u64>,
    probabilities: Vec<f64>,
}

fn partition_for(schema: &DomainSchema, i: usize, set: &ExistenceSet, bins: usize) -> Partition {
    let d = &schema.dims()[i];
    let dim = d.name.clone();
    match &d.kind {
        QualeKind::Categorical(values) => Partition::Values {
            dim,
            values: values.clone(),
        },
        QualeKind::Boolean => Partition::Values {
            dim,
            values: vec!["false".into(), "true".into()],
        },
        QualeKind::Continuous | QualeKind::Integer => {
            let (lo, hi) = set
                .vectors()
                .map(|v| v.coords()[i].as_f64().expect("numeric"))
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| {
                    (l.min(x), h.max(x))
                });
            let edges = if hi > lo {
                let w = (hi - lo) / bins as f64;
                let mut e: Vec<f64> = (0..bins).map(|k| lo + k as f64 * w).collect();
                e.push(hi);
                e
            } else {
                // Zero range: a single cell.
                vec![lo, hi]
            };
            Partition::Bins { dim, edges }
        }
    }
}

impl ProbabilityModel {
    pub fn estimate(set: &ExistenceSet, bins_per_dim: usize, smoothing: f64) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptyExistenceSet);
        }
        if bins_per_dim == 0 {
            return Err(Error::InvalidArgument(
                "bins per dimension must be at least 1".into(),
            ));
        }
        if !(smoothing.is_finite() && smoothing >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "smoothing {smoothing} must be >= 0"
            )));
        }
        let schema = set.schema();
        let partitions: Vec<Partition> = (0..schema.len())
            .map(|i| partition_for(schema, i, set, bins_per_dim))
            .collect();
        let cells = partitions
            .iter()
            .try_fold(1u128, |acc, p| acc.checked_mul(p.cells() as u128))
            .unwrap_or(u128::MAX);
        if cells > MAX_CELLS {
            return Err(Error::TooManyCells(cells));
        }
        let mut model = ProbabilityModel {
            schema: Arc::clone(schema),
            partitions,
            counts: vec![0; cells as usize],
            smoothing,
            probabilities: Vec::new(),
        };
        for v in set.vectors() {
            let (flat, _, _) = model.flat_index(v);
            model.counts[flat] += 1;
        }
        let total = set.len() as f64;
        let denom = total + smoothing * cells as f64;
        model.probabilities = model
            .counts
            .iter()
            .map(|&c| (c as f64 + smoothing) / denom)
            .collect();
        Ok(model)
    }

    pub fn schema(&self) -> &Arc<DomainSchema> {
        &self.schema
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn smoothing(&self) -> f64 {
        self.smoothing
    }

    pub fn cells(&self) -> usize {
        self.counts.len()
    }

    /// Row-major flat index, with the last dimension varying fastest.
    fn flat_index(&self, v: &OntVector) -> (usize, Vec<usize>, bool) {
        let mut flat = 0;
        let mut cell = Vec::with_capacity(self.partitions.len());
        let mut clamped = false;
        for (p, c) in self.partitions.iter().zip(v.coords()) {
            let (i, cl) = p.locate(c);
            flat = flat * p.cells() + i;
            cell.push(i);
            clamped |= cl;
        }
        (flat, cell, clamped)
    }

    pub fn probability_of(&self, v: &OntVector) -> Result<CellProbability> {
        if !v.schema().same_as(&self.schema) {
            return Err(Error::SchemaMismatch);
        }
        let (flat, cell, clamped) = self.flat_index(v);
        Ok(CellProbability {
            probability: self.probabilities[flat],
            cell,
            clamped,
        })
    }

    pub fn to_json(&self) -> String {
        let file = ModelFile {
            schema: serde_json::from_str(&self.schema.to_json()).expect("schema JSON"),
            smoothing: self.smoothing,
            partitions: self.partitions.clone(),
            counts: self.counts.clone(),
            probabilities: self.probabilities.clone(),
        };
        serde_json::to_string(&file).expect("model serializes")
    }

    /// Reloads a model. Stored probabilities are used as-is so that queries
    /// reproduce the original bit for bit.
    pub fn from_json(text: &str) -> Result<Self> {
        let bad = |m: String| Error::Parse {
            line: 1,
            message: m,
        };
        let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let schema = DomainSchema::from_json(&file.schema.to_string())?;
        if file.partitions.len() != schema.len() {
            return Err(bad("one partition per dimension is required".into()));
        }
        for (p, d) in file.partitions.iter().zip(schema.dims()) {
            let ok = match (p, &d.kind) {
                (Partition::Bins { dim, edges }, QualeKind::Continuous | QualeKind::Integer) => {
                    dim == &d.name && edges.len() >= 2 && edges.windows(2).all(|w| w[0] <= w[1])
                }
                (Partition::Values { dim, values }, QualeKind::Categorical(vs)) => {
                    dim == &d.name && values == vs
                }
                (Partition::Values { dim, values }, QualeKind::Boolean) => {
                    dim == &d.name && values.len() == 2
                }
                _ => false,
            };
            if !ok {
                return Err(bad(format!(
                    "partition for `{}` does not match the schema",
                    d.name
                )));
            }
        }
        let cells: usize = file.partitions.iter().map(Partition::cells).product();
        if file.counts.len() != cells || file.probabilities.len() != cells {
            return Err(bad(format!("expected {cells} cells")));
        }
        Ok(ProbabilityModel {
            schema,
            partitions: file.partitions,
            counts: file.counts,
            smoothing: file.smoothing,
            probabilities: file.probabilities,
        })
    }
}

pub fn estimate_probability_model(
    set: &ExistenceSet,
    bins_per_dim: usize,
    smoothing: f64,
) -> Result<ProbabilityModel> {
    ProbabilityModel::estimate(set, bins_per_dim, smoothing)
}

pub fn probability_of(model: &ProbabilityModel, v: &OntVector) -> Result<CellProbability> {
    model.probability_of(v)
}
