//! Similarity metrics, reconstruction paths and navigation.
//!
//! Minkowski distances compare vectors coordinate-wise; categorical and
//! boolean coordinates contribute a 0/1 mismatch indicator. Reconstruction
//! distance instead counts how many single-dimension moves turn one vector
//! into another, whatever their size. Navigation applies moves to an origin
//! and snaps the virtual result to the closest existing member.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::existence::ExistenceSet;
use crate::schema::{format_value, values_eq, DomainSchema, OntVector, QualeKind, RawValue, Value};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinkowskiOrder {
    Finite(f64),
    Infinity,
}

impl MinkowskiOrder {
    pub const MANHATTAN: MinkowskiOrder = MinkowskiOrder::Finite(1.0);
    pub const EUCLIDEAN: MinkowskiOrder = MinkowskiOrder::Finite(2.0);

    /// Orders below 1 are rejected: they violate the triangle inequality.
    pub fn new(r: f64) -> Result<Self> {
        if r == f64::INFINITY {
            Ok(MinkowskiOrder::Infinity)
        } else if r.is_nan() || r < 1.0 {
            Err(Error::InvalidOrder(r))
        } else {
            Ok(MinkowskiOrder::Finite(r))
        }
    }
}

impl FromStr for MinkowskiOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "Inf" | "max" | "∞" => Ok(MinkowskiOrder::Infinity),
            t => {
                let r: f64 = t
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad Minkowski order `{t}`")))?;
                MinkowskiOrder::new(r)
            }
        }
    }
}

impl fmt::Display for MinkowskiOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinkowskiOrder::Finite(r) => write!(f, "{r}"),
            MinkowskiOrder::Infinity => f.write_str("inf"),
        }
    }
}

/// `(sum_i w_i |d_i|^r)^(1/r)` over precomputed absolute differences.
/// The infinite order is the limit of that expression, `max_i |d_i|`, in
/// which positive weights play no part.
pub fn minkowski_from_diffs(diffs: &[f64], order: MinkowskiOrder, weights: Option<&[f64]>) -> f64 {
    let w = |i: usize| weights.map_or(1.0, |w| w[i]);
    match order {
        MinkowskiOrder::Infinity => diffs.iter().copied().fold(0.0, f64::max),
        MinkowskiOrder::Finite(1.0) => diffs.iter().enumerate().map(|(i, d)| w(i) * d).sum(),
        MinkowskiOrder::Finite(2.0) => diffs
            .iter()
            .enumerate()
            .map(|(i, d)| w(i) * d * d)
            .sum::<f64>()
            .sqrt(),
        MinkowskiOrder::Finite(r) => {
            let integral = r.fract() == 0.0 && r <= i32::MAX as f64;
            let sum: f64 = diffs
                .iter()
                .enumerate()
                .map(|(i, d)| {
                    let p = if integral {
                        d.powi(r as i32)
                    } else {
                        d.powf(r)
                    };
                    w(i) * p
                })
                .sum();
            sum.powf(1.0 / r)
        }
    }
}

/// Minkowski distance between two real coordinate slices.
pub fn minkowski_slices(
    a: &[f64],
    b: &[f64],
    order: MinkowskiOrder,
    weights: Option<&[f64]>,
) -> f64 {
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| (x - y).abs()).collect();
    minkowski_from_diffs(&diffs, order, weights)
}

/// Minkowski distance with optional per-dimension weights and min-max scaling.
#[derive(Debug, Clone, PartialEq)]
pub struct Metric {
    pub order: MinkowskiOrder,
    weights: Option<Vec<f64>>,
    /// Per-dimension divisor applied to numeric differences.
    scale: Option<Vec<f64>>,
}

impl Metric {
    pub fn new(order: MinkowskiOrder) -> Self {
        Metric {
            order,
            weights: None,
            scale: None,
        }
    }

    pub fn euclidean() -> Self {
        Self::new(MinkowskiOrder::EUCLIDEAN)
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(Error::InvalidWeights(format!("weight {w} is not positive")));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Divides each numeric difference by the member range of its dimension
    /// in `set`. Dimensions with zero range are left unscaled.
    pub fn with_min_max(mut self, set: &ExistenceSet) -> Self {
        let n = set.schema().len();
        let mut lo = vec![f64::INFINITY; n];
        let mut hi = vec![f64::NEG_INFINITY; n];
        for v in set.vectors() {
            for (i, c) in v.coords().iter().enumerate() {
                if let Some(x) = c.as_f64() {
                    lo[i] = lo[i].min(x);
                    hi[i] = hi[i].max(x);
                }
            }
        }
        self.scale = Some(
            lo.iter()
                .zip(&hi)
                .map(|(l, h)| if h > l { h - l } else { 1.0 })
                .collect(),
        );
        self
    }

    pub fn distance(&self, u: &OntVector, v: &OntVector) -> Result<f64> {
        if !u.schema().same_as(v.schema()) {
            return Err(Error::SchemaMismatch);
        }
        let n = u.schema().len();
        if let Some(w) = &self.weights {
            if w.len() != n {
                return Err(Error::InvalidWeights(format!(
                    "{} weights for {n} dimensions",
                    w.len()
                )));
            }
        }
        let diffs: Vec<f64> = u
            .coords()
            .iter()
            .zip(v.coords())
            .enumerate()
            .map(|(i, (a, b))| {
                let d = coord_diff(a, b);
                match (&self.scale, a) {
                    (Some(s), Value::Real(_) | Value::Int(_)) => d / s[i],
                    _ => d,
                }
            })
            .collect();
        Ok(minkowski_from_diffs(
            &diffs,
            self.order,
            self.weights.as_deref(),
        ))
    }
}

fn coord_diff(a: &Value, b: &Value) -> f64 {
    match (a, b) {
        (Value::Real(x), Value::Real(y)) => (x - y).abs(),
        (Value::Int(x), Value::Int(y)) => (*x as i128 - *y as i128).unsigned_abs() as f64,
        _ => {
            if a == b {
                0.0
            } else {
                1.0
            }
        }
    }
}

pub fn minkowski(
    u: &OntVector,
    v: &OntVector,
    order: MinkowskiOrder,
    weights: Option<&[f64]>,
) -> Result<f64> {
    let mut m = Metric::new(order);
    if let Some(w) = weights {
        m = m.with_weights(w.to_vec())?;
    }
    m.distance(u, v)
}

/// Change along one dimension.
#[derive(Debug, Clone, PartialEq)]
pub enum Delta {
    /// Add a real amount.
    Shift(f64),
    /// Add an integer amount.
    Step(i64),
    /// Replace the coordinate (categorical/boolean substitution).
    Set(Value),
}

/// A scaled basis step, or a substitution on a non-numeric dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Move {
    pub dim: String,
    pub delta: Delta,
}

impl Move {
    pub fn shift(dim: impl Into<String>, amount: f64) -> Self {
        Move {
            dim: dim.into(),
            delta: Delta::Shift(amount),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.delta, Delta::Shift(x) if x == 0.0) || self.delta == Delta::Step(0)
    }

    /// Parses `dim=+0.5`, `dim=-1`, or `dim:=VALUE`.
    pub fn parse(text: &str, schema: &DomainSchema) -> Result<Self> {
        let bad =
            || Error::InvalidArgument(format!("bad move `{text}`; expected dim=+X or dim:=VALUE"));
        let (dim, rest, assign) = if let Some((d, v)) = text.split_once(":=") {
            (d.trim(), v.trim(), true)
        } else if let Some((d, v)) = text.split_once('=') {
            (d.trim(), v.trim(), false)
        } else {
            return Err(bad());
        };
        let d = schema.dim(dim)?;
        let delta = if assign {
            let raw = RawValue::parse_for(d, rest)?;
            let probe = Arc::new(
                DomainSchema::define(schema.name(), vec![Dimension::clone_unbounded(d)])
                    .expect("dimension already validated"),
            );
            Delta::Set(probe.make_vector(&[raw])?.coords()[0])
        } else {
            let x: f64 = rest.parse().map_err(|_| bad())?;
            if !x.is_finite() {
                return Err(bad());
            }
            match d.kind {
                QualeKind::Continuous => Delta::Shift(x),
                QualeKind::Integer if x.fract() == 0.0 && x.abs() < 9.2e18 => Delta::Step(x as i64),
                QualeKind::Integer => return Err(Error::NonIntegralScalarOnIntegerDimension(x)),
                _ => return Err(Error::NonArithmeticDimension(dim.to_string())),
            }
        };
        Ok(Move {
            dim: dim.to_string(),
            delta,
        })
    }

    pub fn describe(&self, schema: &DomainSchema) -> String {
        match &self.delta {
            Delta::Shift(x) if *x >= 0.0 => format!("{}=+{x}", self.dim),
            Delta::Shift(x) => format!("{}={x}", self.dim),
            Delta::Step(i) if *i >= 0 => format!("{}=+{i}", self.dim),
            Delta::Step(i) => format!("{}={i}", self.dim),
            Delta::Set(v) => match schema.dim(&self.dim) {
                Ok(d) => format!("{}:={}", self.dim, format_value(d, v)),
                Err(_) => format!("{}:={v:?}", self.dim),
            },
        }
    }

    /// Signed size of the move; substitutions count as 1.
    pub fn magnitude(&self) -> f64 {
        match self.delta {
            Delta::Shift(x) => x.abs(),
            Delta::Step(i) => (i as f64).abs(),
            Delta::Set(_) => 1.0,
        }
    }
}

use crate::schema::Dimension;

impl Dimension {
    fn clone_unbounded(d: &Dimension) -> Dimension {
        Dimension {
            bounds: None,
            ..d.clone()
        }
    }
}

/// Applies moves in order. Bounds are not enforced on the result.
pub fn apply_moves(origin: &OntVector, moves: &[Move]) -> Result<OntVector> {
    let schema = origin.schema();
    let mut coords = origin.coords().to_vec();
    for m in moves {
        let i = schema
            .index_of(&m.dim)
            .ok_or_else(|| Error::UnknownDimension(m.dim.clone()))?;
        let d = &schema.dims()[i];
        let overflow = || Error::IntegerOverflow(d.name.clone());
        coords[i] = match (&d.kind, coords[i], &m.delta) {
            (QualeKind::Continuous, Value::Real(x), Delta::Shift(s)) => Value::Real(x + s),
            (QualeKind::Continuous, Value::Real(x), Delta::Step(s)) => Value::Real(x + *s as f64),
            (QualeKind::Integer, Value::Int(x), Delta::Step(s)) => {
                Value::Int(x.checked_add(*s).ok_or_else(overflow)?)
            }
            (QualeKind::Integer, Value::Int(x), Delta::Shift(s)) => {
                if s.fract() != 0.0 || s.abs() >= 9.2e18 {
                    return Err(Error::NonIntegralScalarOnIntegerDimension(*s));
                }
                Value::Int(x.checked_add(*s as i64).ok_or_else(overflow)?)
            }
            (QualeKind::Continuous, _, Delta::Set(v)) => match v.as_f64() {
                Some(x) => Value::Real(x),
                None => return Err(kind_error(d, v)),
            },
            (QualeKind::Integer, _, Delta::Set(v)) => match v.as_f64() {
                Some(x) if x.fract() == 0.0 => Value::Int(x as i64),
                _ => return Err(kind_error(d, v)),
            },
            (QualeKind::Categorical(vals), _, Delta::Set(v @ Value::Category(c)))
                if *c < vals.len() =>
            {
                *v
            }
            (QualeKind::Boolean, _, Delta::Set(v @ Value::Bool(_))) => *v,
            (QualeKind::Categorical(_) | QualeKind::Boolean, _, Delta::Set(v)) => {
                return Err(kind_error(d, v))
            }
            _ => return Err(Error::NonArithmeticDimension(d.name.clone())),
        };
    }
    OntVector::from_values(schema, coords)
}

fn kind_error(d: &Dimension, v: &Value) -> Error {
    Error::KindMismatch {
        dim: d.name.clone(),
        expected: d.kind.label().to_string(),
        found: format!("{v:?}"),
    }
}

/// Coefficient `c` with `origin + c == target` in floating point when such
/// a value exists near `target - origin`.
fn exact_shift(origin: f64, target: f64) -> Option<f64> {
    let c = target - origin;
    if origin + c == target {
        return Some(c);
    }
    let (mut up, mut down) = (c, c);
    for _ in 0..4 {
        up = up.next_up();
        down = down.next_down();
        if origin + up == target {
            return Some(up);
        }
        if origin + down == target {
            return Some(down);
        }
    }
    None
}

/// Origin plus one move per differing dimension, in schema order.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionPath {
    pub origin: OntVector,
    pub moves: Vec<Move>,
    pub target: OntVector,
}

impl ReconstructionPath {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Replays the moves on the origin.
    pub fn apply(&self) -> Result<OntVector> {
        apply_moves(&self.origin, &self.moves)
    }

    /// Sum of move magnitudes, substitutions counting 1. An alternative
    /// length measure; reconstruction distance counts moves instead.
    pub fn magnitude(&self) -> f64 {
        self.moves.iter().map(Move::magnitude).sum()
    }
}

pub fn reconstruction_path(
    origin: &OntVector,
    target: &OntVector,
    tol: &Tolerance,
) -> Result<ReconstructionPath> {
    if !origin.schema().same_as(target.schema()) {
        return Err(Error::SchemaMismatch);
    }
    let schema = origin.schema();
    let mut moves = Vec::new();
    for (i, (a, b)) in origin.coords().iter().zip(target.coords()).enumerate() {
        if values_eq(a, b, tol) {
            continue;
        }
        let dim = schema.dims()[i].name.clone();
        let delta = match (a, b) {
            // Some targets (1 -> 0.001) are unreachable by any float shift.
            (Value::Real(x), Value::Real(y)) => match exact_shift(*x, *y) {
                Some(s) => Delta::Shift(s),
                None => Delta::Set(*b),
            },
            (Value::Int(x), Value::Int(y)) => Delta::Step(
                y.checked_sub(*x)
                    .ok_or_else(|| Error::IntegerOverflow(dim.clone()))?,
            ),
            _ => Delta::Set(*b),
        };
        moves.push(Move { dim, delta });
    }
    Ok(ReconstructionPath {
        origin: origin.clone(),
        moves,
        target: target.clone(),
    })
}

/// Number of dimensions on which the vectors differ beyond tolerance.
pub fn reconstruction_distance(
    origin: &OntVector,
    target: &OntVector,
    tol: &Tolerance,
) -> Result<usize> {
    Ok(reconstruction_path(origin, target, tol)?.len())
}

/// Result of a navigation query.
#[derive(Debug, Clone, PartialEq)]
pub struct Navigation {
    /// `origin + moves`, possibly outside the populated region.
    pub virtual_target: OntVector,
    /// Closest existing member.
    pub member: OntVector,
    pub distance: f64,
}

/// Moves from `origin`, then returns the existing member closest (Euclidean)
/// to where the moves land. Ties go to the lexicographically smallest member.
pub fn navigate(set: &ExistenceSet, origin: &OntVector, moves: &[Move]) -> Result<Navigation> {
    if !set.schema().same_as(origin.schema()) {
        return Err(Error::SchemaMismatch);
    }
    if set.is_empty() {
        return Err(Error::EmptyExistenceSet);
    }
    let moves: Vec<Move> = moves.iter().filter(|m| !m.is_zero()).cloned().collect();
    let target = apply_moves(origin, &moves)?;
    let metric = Metric::euclidean();
    let mut best: Option<(f64, &OntVector)> = None;
    for m in set.vectors() {
        let d = metric.distance(&target, m)?;
        let better = match best {
            None => true,
            Some((bd, bm)) => match d.total_cmp(&bd) {
                Ordering::Less => true,
                Ordering::Equal => m.lex_cmp(bm) == Ordering::Less,
                Ordering::Greater => false,
            },
        };
        if better {
            best = Some((d, m));
        }
    }
    let (distance, member) = best.expect("non-empty set");
    Ok(Navigation {
        virtual_target: target,
        member: member.clone(),
        distance,
    })
}

struct Ranked<'a> {
    distance: f64,
    vector: &'a OntVector,
}

impl Ord for Ranked<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.distance
            .total_cmp(&other.distance)
            .then_with(|| self.vector.lex_cmp(other.vector))
    }
}

impl PartialOrd for Ranked<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Ranked<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ranked<'_> {}

/// The `k` members closest to `v`, ascending, ties broken lexicographically.
pub fn nearest(
    set: &ExistenceSet,
    v: &OntVector,
    metric: &Metric,
    k: usize,
) -> Result<Vec<(OntVector, f64)>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if set.is_empty() {
        return Err(Error::EmptyExistenceSet);
    }
    // Max-heap of the best k seen so far.
    let mut heap: BinaryHeap<Ranked<'_>> = BinaryHeap::with_capacity(k + 1);
    for m in set.vectors() {
        let cand = Ranked {
            distance: metric.distance(v, m)?,
            vector: m,
        };
        if heap.len() < k {
            heap.push(cand);
        } else if heap.peek().is_some_and(|worst| cand < *worst) {
            heap.pop();
            heap.push(cand);
        }
    }
    Ok(heap
        .into_sorted_vec()
        .into_iter()
        .map(|r| (r.vector.clone(), r.distance))
        .collect())
}
