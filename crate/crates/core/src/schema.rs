//! Domain schemas, typed coordinates and vector arithmetic.
//!
//! A [`DomainSchema`] is an ordered basis of named quality dimensions. Each
//! dimension carries a quale kind that decides which values its coordinate
//! may take. An [`OntVector`] is one point of the space spanned by a schema.
//!
//! Arithmetic follows the vector-space axioms for numeric dimensions only.
//! Integer dimensions behave as a module over the integers: they can be
//! added and scaled by integral scalars, never by fractions. Declared bounds
//! restrict which vectors can be asserted to exist; they are not enforced on
//! arithmetic results.

use std::cmp::Ordering;
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, PartialEq)]
pub enum QualeKind {
    Continuous,
    Integer,
    /// Finite ordered value list.
    Categorical(Vec<String>),
    Boolean,
}

impl QualeKind {
    pub fn is_numeric(&self) -> bool {
        matches!(self, QualeKind::Continuous | QualeKind::Integer)
    }

    pub fn label(&self) -> &'static str {
        match self {
            QualeKind::Continuous => "continuous",
            QualeKind::Integer => "integer",
            QualeKind::Categorical(_) => "categorical",
            QualeKind::Boolean => "boolean",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dimension {
    pub name: String,
    pub kind: QualeKind,
    pub unit: String,
    pub bounds: Option<(f64, f64)>,
}

impl Dimension {
    pub fn new(name: impl Into<String>, kind: QualeKind) -> Self {
        Dimension {
            name: name.into(),
            kind,
            unit: String::new(),
            bounds: None,
        }
    }

    pub fn continuous(name: impl Into<String>) -> Self {
        Self::new(name, QualeKind::Continuous)
    }

    pub fn integer(name: impl Into<String>) -> Self {
        Self::new(name, QualeKind::Integer)
    }

    pub fn categorical<S: Into<String>>(
        name: impl Into<String>,
        values: impl IntoIterator<Item = S>,
    ) -> Self {
        Self::new(
            name,
            QualeKind::Categorical(values.into_iter().map(Into::into).collect()),
        )
    }

    pub fn boolean(name: impl Into<String>) -> Self {
        Self::new(name, QualeKind::Boolean)
    }

    pub fn with_unit(mut self, unit: impl Into<String>) -> Self {
        self.unit = unit.into();
        self
    }

    pub fn with_bounds(mut self, lo: f64, hi: f64) -> Self {
        self.bounds = Some((lo, hi));
        self
    }

    pub fn is_numeric(&self) -> bool {
        self.kind.is_numeric()
    }

    fn check(&self) -> Result<()> {
        let invalid = |reason: &str| Error::InvalidDimension {
            name: self.name.clone(),
            reason: reason.to_string(),
        };
        if !is_identifier(&self.name) {
            return Err(invalid("name must be a non-empty identifier"));
        }
        if let QualeKind::Categorical(values) = &self.kind {
            if values.is_empty() {
                return Err(invalid("categorical value list is empty"));
            }
            for (i, v) in values.iter().enumerate() {
                if values[..i].contains(v) {
                    return Err(invalid(&format!("duplicate categorical value `{v}`")));
                }
            }
        }
        if let Some((lo, hi)) = self.bounds {
            if !self.is_numeric() {
                return Err(invalid("bounds are only allowed on numeric dimensions"));
            }
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(invalid("bounds must satisfy lower <= upper"));
            }
        }
        Ok(())
    }
}

/// `[A-Za-z_][A-Za-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An ordered basis of quality dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSchema {
    name: String,
    dims: Vec<Dimension>,
}

impl DomainSchema {
    /// Validates and builds a schema. Dimension order is the basis order.
    pub fn define(name: impl Into<String>, dims: Vec<Dimension>) -> Result<Arc<Self>> {
        if dims.is_empty() {
            return Err(Error::EmptySchema);
        }
        for (i, d) in dims.iter().enumerate() {
            if dims[..i].iter().any(|p| p.name == d.name) {
                return Err(Error::DuplicateDimensionName(d.name.clone()));
            }
            d.check()?;
        }
        Ok(Arc::new(DomainSchema {
            name: name.into(),
            dims,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dims(&self) -> &[Dimension] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.dims.iter().position(|d| d.name == name)
    }

    pub fn dim(&self, name: &str) -> Result<&Dimension> {
        self.index_of(name)
            .map(|i| &self.dims[i])
            .ok_or_else(|| Error::UnknownDimension(name.to_string()))
    }

    pub fn is_all_numeric(&self) -> bool {
        self.dims.iter().all(Dimension::is_numeric)
    }

    fn first_non_numeric(&self) -> Option<&Dimension> {
        self.dims.iter().find(|d| !d.is_numeric())
    }

    /// Converts raw values into a validated vector.
    pub fn make_vector(self: &Arc<Self>, raw: &[RawValue]) -> Result<OntVector> {
        if raw.len() != self.dims.len() {
            return Err(Error::ArityMismatch {
                expected: self.dims.len(),
                found: raw.len(),
            });
        }
        let coords = self
            .dims
            .iter()
            .zip(raw)
            .map(|(d, r)| coerce(d, r))
            .collect::<Result<Vec<_>>>()?;
        let v = OntVector {
            schema: Arc::clone(self),
            coords,
        };
        self.check_bounds(&v)?;
        Ok(v)
    }

    /// Parses one textual token per dimension, then builds the vector.
    pub fn parse_vector<S: AsRef<str>>(self: &Arc<Self>, tokens: &[S]) -> Result<OntVector> {
        if tokens.len() != self.dims.len() {
            return Err(Error::ArityMismatch {
                expected: self.dims.len(),
                found: tokens.len(),
            });
        }
        let raw = self
            .dims
            .iter()
            .zip(tokens)
            .map(|(d, t)| RawValue::parse_for(d, t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        self.make_vector(&raw)
    }

    /// Full validation of a vector against this schema, bounds included.
    pub fn validate(&self, v: &OntVector) -> Result<()> {
        if !self.same_as(&v.schema) {
            return Err(Error::SchemaMismatch);
        }
        for (d, c) in self.dims.iter().zip(&v.coords) {
            let ok = matches!(
                (&d.kind, c),
                (QualeKind::Continuous, Value::Real(_))
                    | (QualeKind::Integer, Value::Int(_))
                    | (QualeKind::Boolean, Value::Bool(_))
            ) || matches!((&d.kind, c), (QualeKind::Categorical(vals), Value::Category(i)) if *i < vals.len());
            if !ok {
                return Err(Error::KindMismatch {
                    dim: d.name.clone(),
                    expected: d.kind.label().to_string(),
                    found: format!("{c:?}"),
                });
            }
            if let Value::Real(x) = c {
                if !x.is_finite() {
                    return Err(Error::KindMismatch {
                        dim: d.name.clone(),
                        expected: "finite number".into(),
                        found: x.to_string(),
                    });
                }
            }
        }
        self.check_bounds(v)
    }

    fn check_bounds(&self, v: &OntVector) -> Result<()> {
        for (d, c) in self.dims.iter().zip(&v.coords) {
            if let (Some((lo, hi)), Some(x)) = (d.bounds, c.as_f64()) {
                if x < lo || x > hi {
                    return Err(Error::OutOfBounds {
                        dim: d.name.clone(),
                        value: x,
                        lo,
                        hi,
                    });
                }
            }
        }
        Ok(())
    }

    /// Structural identity: pointer-equal or equal name and dimensions.
    pub fn same_as(&self, other: &DomainSchema) -> bool {
        std::ptr::eq(self, other) || self == other
    }

    /// The zero vector. Requires every dimension to be numeric.
    pub fn zero(self: &Arc<Self>) -> Result<OntVector> {
        if let Some(d) = self.first_non_numeric() {
            return Err(Error::NonArithmeticDimension(d.name.clone()));
        }
        let coords = self
            .dims
            .iter()
            .map(|d| match d.kind {
                QualeKind::Integer => Value::Int(0),
                _ => Value::Real(0.0),
            })
            .collect();
        Ok(OntVector {
            schema: Arc::clone(self),
            coords,
        })
    }

    /// Basis vector for one dimension, scaled by `a`.
    pub fn basis(self: &Arc<Self>, dim: &str, a: f64) -> Result<OntVector> {
        let idx = self
            .index_of(dim)
            .ok_or_else(|| Error::UnknownDimension(dim.to_string()))?;
        let mut v = self.zero()?;
        v.coords[idx] = match self.dims[idx].kind {
            QualeKind::Integer => Value::Int(integral(a)?),
            _ => Value::Real(a),
        };
        Ok(v)
    }

    /// Builds a reusable projection onto a subset of dimensions. The
    /// induced sub-schema keeps the parent's name and dimension order.
    pub fn projection<S: AsRef<str>>(self: &Arc<Self>, dims: &[S]) -> Result<Projection> {
        if dims.is_empty() {
            return Err(Error::EmptyProjection);
        }
        let mut indices = Vec::with_capacity(dims.len());
        for d in dims {
            let i = self
                .index_of(d.as_ref())
                .ok_or_else(|| Error::UnknownDimension(d.as_ref().to_string()))?;
            if !indices.contains(&i) {
                indices.push(i);
            }
        }
        indices.sort_unstable();
        let sub = Arc::new(DomainSchema {
            name: self.name.clone(),
            dims: indices.iter().map(|&i| self.dims[i].clone()).collect(),
        });
        Ok(Projection {
            parent: Arc::clone(self),
            indices,
            schema: sub,
        })
    }

    /// Reads a schema document.
    pub fn from_json(text: &str) -> Result<Arc<Self>> {
        let file: SchemaFile = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        file.into_schema()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SchemaFile::from_schema(self))
            .expect("schema serialization cannot fail")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Arc<Self>> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }

    /// An all-continuous schema from dimension names.
    pub fn continuous<S: AsRef<str>>(name: &str, dims: &[S]) -> Result<Arc<Self>> {
        Self::define(
            name,
            dims.iter()
                .map(|d| Dimension::continuous(d.as_ref()))
                .collect(),
        )
    }
}

fn integral(a: f64) -> Result<i64> {
    if a.fract() != 0.0 || !a.is_finite() || a.abs() >= 9.2e18 {
        return Err(Error::NonIntegralScalarOnIntegerDimension(a));
    }
    Ok(a as i64)
}

/// One coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Value {
    Real(f64),
    Int(i64),
    /// Index into the dimension's categorical value list.
    Category(usize),
    Bool(bool),
}

impl Value {
    /// Numeric reading; `None` for categorical and boolean coordinates.
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Value::Real(x) => Some(x),
            Value::Int(i) => Some(i as f64),
            _ => None,
        }
    }

    /// Total order used for deterministic tie-breaking.
    pub fn total_cmp(&self, other: &Value) -> Ordering {
        match (self, other) {
            (Value::Real(a), Value::Real(b)) => a.total_cmp(b),
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::Category(a), Value::Category(b)) => a.cmp(b),
            (Value::Bool(a), Value::Bool(b)) => a.cmp(b),
            (a, b) => match (a.as_f64(), b.as_f64()) {
                (Some(x), Some(y)) => x.total_cmp(&y),
                _ => a.rank().cmp(&b.rank()),
            },
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Value::Real(_) | Value::Int(_) => 0,
            Value::Category(_) => 1,
            Value::Bool(_) => 2,
        }
    }
}

/// Untyped input value, checked against a dimension by [`DomainSchema::make_vector`].
#[derive(Debug, Clone, PartialEq)]
pub enum RawValue {
    Number(f64),
    Text(String),
    Bool(bool),
}

impl From<f64> for RawValue {
    fn from(x: f64) -> Self {
        RawValue::Number(x)
    }
}

impl From<i32> for RawValue {
    fn from(x: i32) -> Self {
        RawValue::Number(x as f64)
    }
}

impl From<&str> for RawValue {
    fn from(s: &str) -> Self {
        RawValue::Text(s.to_string())
    }
}

impl From<bool> for RawValue {
    fn from(b: bool) -> Self {
        RawValue::Bool(b)
    }
}

impl RawValue {
    /// Interprets a text token the way the given dimension expects it.
    pub fn parse_for(dim: &Dimension, token: &str) -> Result<RawValue> {
        let token = token.trim();
        match &dim.kind {
            QualeKind::Continuous | QualeKind::Integer => token
                .parse::<f64>()
                .map(RawValue::Number)
                .map_err(|_| Error::KindMismatch {
                    dim: dim.name.clone(),
                    expected: dim.kind.label().to_string(),
                    found: format!("`{token}`"),
                }),
            QualeKind::Categorical(_) => Ok(RawValue::Text(token.to_string())),
            QualeKind::Boolean => match token {
                "true" => Ok(RawValue::Bool(true)),
                "false" => Ok(RawValue::Bool(false)),
                _ => Err(Error::KindMismatch {
                    dim: dim.name.clone(),
                    expected: "boolean".into(),
                    found: format!("`{token}`"),
                }),
            },
        }
    }

    fn describe(&self) -> String {
        match self {
            RawValue::Number(x) => x.to_string(),
            RawValue::Text(s) => format!("\"{s}\""),
            RawValue::Bool(b) => b.to_string(),
        }
    }
}

fn coerce(dim: &Dimension, raw: &RawValue) -> Result<Value> {
    let mismatch = || Error::KindMismatch {
        dim: dim.name.clone(),
        expected: dim.kind.label().to_string(),
        found: raw.describe(),
    };
    match (&dim.kind, raw) {
        (QualeKind::Continuous, RawValue::Number(x)) if x.is_finite() => Ok(Value::Real(*x)),
        (QualeKind::Integer, RawValue::Number(x))
            if x.is_finite() && x.fract() == 0.0 && x.abs() < 9.2e18 =>
        {
            Ok(Value::Int(*x as i64))
        }
        (QualeKind::Categorical(values), RawValue::Text(s)) => values
            .iter()
            .position(|v| v == s)
            .map(Value::Category)
            .ok_or_else(|| Error::UnknownCategory {
                dim: dim.name.clone(),
                value: s.clone(),
            }),
        (QualeKind::Boolean, RawValue::Bool(b)) => Ok(Value::Bool(*b)),
        _ => Err(mismatch()),
    }
}

/// One point of a schema's space.
#[derive(Debug, Clone)]
pub struct OntVector {
    schema: Arc<DomainSchema>,
    coords: Vec<Value>,
}

impl OntVector {
    pub fn schema(&self) -> &Arc<DomainSchema> {
        &self.schema
    }

    pub fn coords(&self) -> &[Value] {
        &self.coords
    }

    pub fn get(&self, dim: &str) -> Result<Value> {
        self.schema
            .index_of(dim)
            .map(|i| self.coords[i])
            .ok_or_else(|| Error::UnknownDimension(dim.to_string()))
    }

    /// Coordinates as reals; fails on the first non-numeric dimension.
    pub fn to_f64s(&self) -> Result<Vec<f64>> {
        self.coords
            .iter()
            .zip(self.schema.dims())
            .map(|(c, d)| {
                c.as_f64()
                    .ok_or_else(|| Error::NonNumericDimension(d.name.clone()))
            })
            .collect()
    }

    /// Textual form of each coordinate; categorical values by label.
    pub fn labels(&self) -> Vec<String> {
        self.coords
            .iter()
            .zip(self.schema.dims())
            .map(|(c, d)| format_value(d, c))
            .collect()
    }

    /// Rebuilds a vector from already-typed coordinates, validating kinds
    /// and categorical membership but not bounds.
    pub fn from_values(schema: &Arc<DomainSchema>, coords: Vec<Value>) -> Result<Self> {
        if coords.len() != schema.len() {
            return Err(Error::ArityMismatch {
                expected: schema.len(),
                found: coords.len(),
            });
        }
        let v = OntVector {
            schema: Arc::clone(schema),
            coords,
        };
        match schema.validate(&v) {
            Ok(()) | Err(Error::OutOfBounds { .. }) => Ok(v),
            Err(e) => Err(e),
        }
    }

    fn check_same_schema(&self, other: &OntVector) -> Result<()> {
        if self.schema.same_as(&other.schema) {
            Ok(())
        } else {
            Err(Error::SchemaMismatch)
        }
    }

    fn check_arithmetic(&self) -> Result<()> {
        match self.schema.first_non_numeric() {
            Some(d) => Err(Error::NonArithmeticDimension(d.name.clone())),
            None => Ok(()),
        }
    }

    pub fn add(&self, other: &OntVector) -> Result<OntVector> {
        self.check_same_schema(other)?;
        self.check_arithmetic()?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.schema.dims())
            .map(|((a, b), d)| match (a, b) {
                (Value::Int(x), Value::Int(y)) => x
                    .checked_add(*y)
                    .map(Value::Int)
                    .ok_or_else(|| Error::IntegerOverflow(d.name.clone())),
                (Value::Real(x), Value::Real(y)) => Ok(Value::Real(x + y)),
                _ => Err(Error::SchemaMismatch),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OntVector {
            schema: Arc::clone(&self.schema),
            coords,
        })
    }

    pub fn scale(&self, a: f64) -> Result<OntVector> {
        self.check_arithmetic()?;
        let has_int = self
            .schema
            .dims()
            .iter()
            .any(|d| d.kind == QualeKind::Integer);
        let k = if has_int { Some(integral(a)?) } else { None };
        let coords = self
            .coords
            .iter()
            .zip(self.schema.dims())
            .map(|(c, d)| match *c {
                Value::Int(x) => x
                    .checked_mul(k.expect("integral scalar checked above"))
                    .map(Value::Int)
                    .ok_or_else(|| Error::IntegerOverflow(d.name.clone())),
                Value::Real(x) => Ok(Value::Real(a * x)),
                _ => unreachable!("arithmetic checked above"),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(OntVector {
            schema: Arc::clone(&self.schema),
            coords,
        })
    }

    pub fn neg(&self) -> Result<OntVector> {
        self.scale(-1.0)
    }

    pub fn sub(&self, other: &OntVector) -> Result<OntVector> {
        self.add(&other.neg()?)
    }

    pub fn project<S: AsRef<str>>(&self, dims: &[S]) -> Result<OntVector> {
        self.schema.projection(dims)?.apply(self)
    }

    /// Coordinate-wise equality under `tol`. Vectors over different
    /// schemas are never equal.
    pub fn approx_eq(&self, other: &OntVector, tol: &Tolerance) -> bool {
        self.schema.same_as(&other.schema)
            && self
                .coords
                .iter()
                .zip(&other.coords)
                .all(|(a, b)| values_eq(a, b, tol))
    }

    /// Lexicographic order over coordinates.
    pub fn lex_cmp(&self, other: &OntVector) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.total_cmp(b) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

impl PartialEq for OntVector {
    /// Exact equality; use [`OntVector::approx_eq`] for tolerance equality.
    fn eq(&self, other: &Self) -> bool {
        self.schema.same_as(&other.schema) && self.coords == other.coords
    }
}

impl fmt::Display for OntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.labels().join(","))
    }
}

pub fn values_eq(a: &Value, b: &Value, tol: &Tolerance) -> bool {
    match (a, b) {
        (Value::Real(x), Value::Real(y)) => tol.eq(*x, *y),
        (Value::Int(x), Value::Int(y)) => x == y,
        (Value::Category(x), Value::Category(y)) => x == y,
        (Value::Bool(x), Value::Bool(y)) => x == y,
        _ => false,
    }
}

pub fn format_value(dim: &Dimension, v: &Value) -> String {
    match (v, &dim.kind) {
        (Value::Real(x), _) => x.to_string(),
        (Value::Int(i), _) => i.to_string(),
        (Value::Category(i), QualeKind::Categorical(values)) => {
            values.get(*i).cloned().unwrap_or_else(|| format!("#{i}"))
        }
        (Value::Category(i), _) => format!("#{i}"),
        (Value::Bool(b), _) => b.to_string(),
    }
}

/// Restriction of vectors to a fixed subset of a parent schema's dimensions.
#[derive(Debug, Clone)]
pub struct Projection {
    parent: Arc<DomainSchema>,
    indices: Vec<usize>,
    schema: Arc<DomainSchema>,
}

impl Projection {
    /// The induced sub-schema.
    pub fn schema(&self) -> &Arc<DomainSchema> {
        &self.schema
    }

    pub fn parent(&self) -> &Arc<DomainSchema> {
        &self.parent
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn apply(&self, v: &OntVector) -> Result<OntVector> {
        if !self.parent.same_as(&v.schema) {
            return Err(Error::SchemaMismatch);
        }
        Ok(OntVector {
            schema: Arc::clone(&self.schema),
            coords: self.indices.iter().map(|&i| v.coords[i]).collect(),
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct SchemaFile {
    name: String,
    dims: Vec<DimFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct DimFile {
    name: String,
    kind: String,
    #[serde(default)]
    unit: String,
    #[serde(default)]
    bounds: Option<[f64; 2]>,
    #[serde(default)]
    values: Option<Vec<String>>,
}

impl SchemaFile {
    fn from_schema(s: &DomainSchema) -> Self {
        SchemaFile {
            name: s.name.clone(),
            dims: s
                .dims
                .iter()
                .map(|d| DimFile {
                    name: d.name.clone(),
                    kind: d.kind.label().to_string(),
                    unit: d.unit.clone(),
                    bounds: d.bounds.map(|(lo, hi)| [lo, hi]),
                    values: match &d.kind {
                        QualeKind::Categorical(v) => Some(v.clone()),
                        _ => None,
                    },
                })
                .collect(),
        }
    }

    fn into_schema(self) -> Result<Arc<DomainSchema>> {
        let dims = self
            .dims
            .into_iter()
            .map(|d| {
                let kind = match (d.kind.as_str(), d.values) {
                    ("continuous", None) => QualeKind::Continuous,
                    ("integer", None) => QualeKind::Integer,
                    ("boolean", None) => QualeKind::Boolean,
                    ("categorical", Some(v)) => QualeKind::Categorical(v),
                    ("categorical", None) => {
                        return Err(Error::InvalidDimension {
                            name: d.name,
                            reason: "categorical dimension needs `values`".into(),
                        })
                    }
                    ("continuous" | "integer" | "boolean", Some(_)) => {
                        return Err(Error::InvalidDimension {
                            name: d.name,
                            reason: "`values` is only allowed on categorical dimensions".into(),
                        })
                    }
                    (other, _) => {
                        return Err(Error::InvalidDimension {
                            name: d.name,
                            reason: format!("unknown kind `{other}`"),
                        })
                    }
                };
                Ok(Dimension {
                    name: d.name,
                    kind,
                    unit: d.unit,
                    bounds: d.bounds.map(|[lo, hi]| (lo, hi)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        DomainSchema::define(self.name, dims)
    }
}
