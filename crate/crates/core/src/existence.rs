//! The sparse population of a schema's space.
//!
//! An [`ExistenceSet`] is an immutable snapshot: [`ExistenceSet::insert`]
//! returns a new version and leaves the receiver untouched, so readers can
//! keep querying an old snapshot while a single writer moves on. Members are
//! unique up to coordinate tolerance; inserting a tolerance-duplicate keeps
//! the first member and reports the collision.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;
use std::sync::Arc;

use serde_json::{Map, Value as Json};

use crate::error::{Error, Result};
use crate::schema::{format_value, DomainSchema, OntVector, QualeKind, RawValue, Value};
use crate::tolerance::Tolerance;

/// Column / key holding a member's optional provenance label.
pub const SOURCE_FIELD: &str = "@source";

#[derive(Debug, Clone, PartialEq)]
pub struct Member {
    pub vector: OntVector,
    pub provenance: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Insertion {
    Added,
    /// Collided with the member at this index; the set is unchanged.
    Duplicate(usize),
}

#[derive(Debug, Clone)]
pub struct ExistenceSet {
    schema: Arc<DomainSchema>,
    members: Arc<Vec<Member>>,
    tol: Tolerance,
}

impl ExistenceSet {
    pub fn new(schema: &Arc<DomainSchema>) -> Self {
        Self::with_tolerance(schema, Tolerance::default())
    }

    pub fn with_tolerance(schema: &Arc<DomainSchema>, tol: Tolerance) -> Self {
        ExistenceSet {
            schema: Arc::clone(schema),
            members: Arc::new(Vec::new()),
            tol,
        }
    }

    /// Builds a set from vectors, dropping tolerance-duplicates.
    pub fn from_vectors<I>(schema: &Arc<DomainSchema>, vectors: I, tol: Tolerance) -> Result<Self>
    where
        I: IntoIterator<Item = OntVector>,
    {
        let mut set = Self::with_tolerance(schema, tol);
        for v in vectors {
            set.insert_mut(v, None)?;
        }
        Ok(set)
    }

    pub fn schema(&self) -> &Arc<DomainSchema> {
        &self.schema
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tol
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn vectors(&self) -> impl Iterator<Item = &OntVector> + '_ {
        self.members.iter().map(|m| &m.vector)
    }

    /// Returns the next snapshot with `v` asserted to exist.
    pub fn insert(&self, v: OntVector) -> Result<(ExistenceSet, Insertion)> {
        self.insert_with_source(v, None)
    }

    pub fn insert_with_source(
        &self,
        v: OntVector,
        provenance: Option<String>,
    ) -> Result<(ExistenceSet, Insertion)> {
        let mut next = self.clone();
        let outcome = next.insert_mut(v, provenance)?;
        Ok((next, outcome))
    }

    /// In-place insert for a writer holding the only handle.
    pub fn insert_mut(&mut self, v: OntVector, provenance: Option<String>) -> Result<Insertion> {
        if !self.schema.same_as(v.schema()) {
            return Err(Error::SchemaMismatch);
        }
        self.schema
            .validate(&v)
            .map_err(|e| Error::ValidationFailure {
                record: v.to_string(),
                reason: e.to_string(),
            })?;
        if let Some(i) = self.position(&v) {
            return Ok(Insertion::Duplicate(i));
        }
        Arc::make_mut(&mut self.members).push(Member {
            vector: v,
            provenance,
        });
        Ok(Insertion::Added)
    }

    /// Index of the member tolerance-equal to `v`, if any.
    pub fn position(&self, v: &OntVector) -> Option<usize> {
        self.members
            .iter()
            .position(|m| m.vector.approx_eq(v, &self.tol))
    }

    pub fn exists(&self, v: &OntVector) -> Result<bool> {
        if !self.schema.same_as(v.schema()) {
            return Err(Error::SchemaMismatch);
        }
        Ok(self.position(v).is_some())
    }

    /// A new set holding the members selected by `keep`, same schema and tolerance.
    pub fn filter(&self, mut keep: impl FnMut(&Member) -> Result<bool>) -> Result<Self> {
        let mut members = Vec::new();
        for m in self.members.iter() {
            if keep(m)? {
                members.push(m.clone());
            }
        }
        Ok(ExistenceSet {
            schema: Arc::clone(&self.schema),
            members: Arc::new(members),
            tol: self.tol,
        })
    }

    /// Same members, compared as sets under tolerance.
    pub fn same_members(&self, other: &ExistenceSet) -> bool {
        self.len() == other.len()
            && self
                .members
                .iter()
                .all(|m| other.position(&m.vector).is_some())
    }
}

/// Result of a possibility check.
#[derive(Debug, Clone, PartialEq)]
pub struct Possibility {
    pub possible: bool,
    /// Why the coordinates are impossible.
    pub reason: Option<Error>,
}

impl Possibility {
    pub fn code(&self) -> Option<&'static str> {
        self.reason.as_ref().map(Error::code)
    }
}

/// Whether raw coordinates describe a point the schema admits: right kinds,
/// inside bounds, categorical values from the declared lists.
pub fn possible(schema: &Arc<DomainSchema>, raw: &[RawValue]) -> Possibility {
    match schema.make_vector(raw) {
        Ok(_) => Possibility {
            possible: true,
            reason: None,
        },
        Err(e) => Possibility {
            possible: false,
            reason: Some(e),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DatasetFormat {
    Csv,
    JsonLines,
}

impl DatasetFormat {
    pub fn from_path(path: &Path) -> Result<Self> {
        match path.extension().and_then(|e| e.to_str()) {
            Some("csv") => Ok(DatasetFormat::Csv),
            Some("jsonl" | "ndjson") => Ok(DatasetFormat::JsonLines),
            _ => Err(Error::InvalidArgument(format!(
                "cannot tell dataset format of {} (expected .csv or .jsonl)",
                path.display()
            ))),
        }
    }
}

/// One parsed dataset row, before set semantics are applied.
#[derive(Debug, Clone)]
pub struct Record {
    pub line: usize,
    pub vector: OntVector,
    pub provenance: Option<String>,
}

/// A loaded set plus the rows that collided with earlier ones.
#[derive(Debug, Clone)]
pub struct LoadReport {
    pub set: ExistenceSet,
    /// `(line, index of the member it collided with)`
    pub duplicates: Vec<(usize, usize)>,
}

pub fn load_dataset(
    path: impl AsRef<Path>,
    schema: &Arc<DomainSchema>,
    tol: Tolerance,
) -> Result<LoadReport> {
    let records = read_records(path, schema)?;
    let mut set = ExistenceSet::with_tolerance(schema, tol);
    let mut duplicates = Vec::new();
    for r in records {
        if let Insertion::Duplicate(i) = set.insert_mut(r.vector, r.provenance)? {
            duplicates.push((r.line, i));
        }
    }
    Ok(LoadReport { set, duplicates })
}

/// Reads every row as a vector, keeping duplicates and file order.
pub fn read_records(path: impl AsRef<Path>, schema: &Arc<DomainSchema>) -> Result<Vec<Record>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    match DatasetFormat::from_path(path)? {
        DatasetFormat::Csv => read_csv(file, schema),
        DatasetFormat::JsonLines => read_jsonl(BufReader::new(file), schema),
    }
}

pub fn save_dataset(set: &ExistenceSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let format = DatasetFormat::from_path(path)?;
    let file = File::create(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let mut out = BufWriter::new(file);
    match format {
        DatasetFormat::Csv => write_csv(set, &mut out)?,
        DatasetFormat::JsonLines => write_jsonl(set, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

/// An all-continuous schema whose dimensions are the dataset's columns.
pub fn infer_schema(path: impl AsRef<Path>) -> Result<Arc<DomainSchema>> {
    let path = path.as_ref();
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("dataset")
        .to_string();
    let file = File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let columns: Vec<String> = match DatasetFormat::from_path(path)? {
        DatasetFormat::Csv => {
            let mut rdr = csv::Reader::from_reader(file);
            rdr.headers()
                .map_err(csv_error)?
                .iter()
                .map(|h| h.trim().to_string())
                .collect()
        }
        DatasetFormat::JsonLines => {
            let reader = BufReader::new(file);
            let mut keys = None;
            for (i, line) in reader.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let obj: Map<String, Json> =
                    serde_json::from_str(&line).map_err(|e| Error::Parse {
                        line: i + 1,
                        message: e.to_string(),
                    })?;
                keys = Some(obj.keys().cloned().collect());
                break;
            }
            keys.ok_or(Error::Parse {
                line: 1,
                message: "no records to infer a schema from".into(),
            })?
        }
    };
    let dims: Vec<&str> = columns
        .iter()
        .map(String::as_str)
        .filter(|c| *c != SOURCE_FIELD)
        .collect();
    DomainSchema::continuous(&name, &dims)
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line() as usize);
    Error::Parse {
        line,
        message: e.to_string(),
    }
}

fn read_csv<R: Read>(reader: R, schema: &Arc<DomainSchema>) -> Result<Vec<Record>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(reader);
    let headers: Vec<String> = rdr
        .headers()
        .map_err(csv_error)?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    let n = schema.len();
    let with_source = headers.len() == n + 1 && headers[n] == SOURCE_FIELD;
    let names: Vec<&str> = schema.dims().iter().map(|d| d.name.as_str()).collect();
    if headers[..headers.len().min(n)] != names[..] || !(headers.len() == n || with_source) {
        return Err(Error::Parse {
            line: 1,
            message: format!(
                "header [{}] does not match schema dimensions [{}]",
                headers.join(","),
                names.join(",")
            ),
        });
    }
    let mut out = Vec::new();
    for row in rdr.records() {
        let row = row.map_err(csv_error)?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let raw = schema
            .dims()
            .iter()
            .zip(row.iter())
            .map(|(d, tok)| RawValue::parse_for(d, tok))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?;
        let vector = schema
            .make_vector(&raw)
            .map_err(|e| Error::ValidationFailure {
                record: format!("line {line}: {}", row.iter().collect::<Vec<_>>().join(",")),
                reason: e.to_string(),
            })?;
        let provenance = if with_source {
            Some(row[n].to_string()).filter(|s| !s.is_empty())
        } else {
            None
        };
        out.push(Record {
            line,
            vector,
            provenance,
        });
    }
    Ok(out)
}

fn json_to_raw(j: &Json) -> Option<RawValue> {
    match j {
        Json::Number(n) => n.as_f64().map(RawValue::Number),
        Json::String(s) => Some(RawValue::Text(s.clone())),
        Json::Bool(b) => Some(RawValue::Bool(*b)),
        _ => None,
    }
}

/// Parses one JSON object keyed by dimension name into raw coordinates.
pub fn raw_from_json_object(
    schema: &DomainSchema,
    obj: &Map<String, Json>,
) -> std::result::Result<(Vec<RawValue>, Option<String>), String> {
    for key in obj.keys() {
        if key != SOURCE_FIELD && schema.index_of(key).is_none() {
            return Err(format!("unknown dimension `{key}`"));
        }
    }
    let raw = schema
        .dims()
        .iter()
        .map(|d| {
            let j = obj
                .get(&d.name)
                .ok_or_else(|| format!("missing dimension `{}`", d.name))?;
            json_to_raw(j).ok_or_else(|| format!("unsupported value {j} for `{}`", d.name))
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let source = match obj.get(SOURCE_FIELD) {
        None | Some(Json::Null) => None,
        Some(Json::String(s)) => Some(s.clone()),
        Some(other) => return Err(format!("`{SOURCE_FIELD}` must be a string, got {other}")),
    };
    Ok((raw, source))
}

fn read_jsonl<R: BufRead>(reader: R, schema: &Arc<DomainSchema>) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parse = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        let obj: Map<String, Json> =
            serde_json::from_str(&line).map_err(|e| parse(e.to_string()))?;
        let (raw, provenance) = raw_from_json_object(schema, &obj).map_err(parse)?;
        let vector = schema
            .make_vector(&raw)
            .map_err(|e| Error::ValidationFailure {
                record: format!("line {line_no}: {}", line.trim()),
                reason: e.to_string(),
            })?;
        out.push(Record {
            line: line_no,
            vector,
            provenance,
        });
    }
    Ok(out)
}

fn write_csv<W: Write>(set: &ExistenceSet, out: W) -> Result<()> {
    let with_source = set.members().iter().any(|m| m.provenance.is_some());
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<&str> = set
        .schema()
        .dims()
        .iter()
        .map(|d| d.name.as_str())
        .collect();
    if with_source {
        header.push(SOURCE_FIELD);
    }
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(&header).map_err(io)?;
    for m in set.members() {
        let mut row = m.vector.labels();
        if with_source {
            row.push(m.provenance.clone().unwrap_or_default());
        }
        w.write_record(&row).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// JSON object keyed by dimension name.
pub fn vector_to_json(v: &OntVector) -> Map<String, Json> {
    let mut obj = Map::new();
    for (d, c) in v.schema().dims().iter().zip(v.coords()) {
        let j = match (c, &d.kind) {
            (Value::Real(x), _) => Json::from(*x),
            (Value::Int(i), _) => Json::from(*i),
            (Value::Bool(b), _) => Json::from(*b),
            (Value::Category(_), QualeKind::Categorical(_)) => Json::from(format_value(d, c)),
            (Value::Category(i), _) => Json::from(*i),
        };
        obj.insert(d.name.clone(), j);
    }
    obj
}

fn write_jsonl<W: Write>(set: &ExistenceSet, mut out: W) -> Result<()> {
    for m in set.members() {
        let mut obj = vector_to_json(&m.vector);
        if let Some(p) = &m.provenance {
            obj.insert(SOURCE_FIELD.to_string(), Json::from(p.clone()));
        }
        serde_json::to_writer(&mut out, &obj).map_err(|e| Error::Io(e.to_string()))?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
