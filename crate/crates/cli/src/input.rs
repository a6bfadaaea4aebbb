//! Resolving schemas, datasets, vectors and regions from arguments.

use std::path::Path;
use std::sync::Arc;

use serde_json::{Map, Value as Json};
use vectont::error::Error;
use vectont::existence::{self, raw_from_json_object, ExistenceSet, SOURCE_FIELD};
use vectont::foe::FunctionClass;
use vectont::mereology::ConvexRegion;
use vectont::metrics::{Metric, MinkowskiOrder};
use vectont::schema::{DomainSchema, OntVector};
use vectont::tolerance::Tolerance;

use crate::args::{ClassArgs, Global, VectorArg};
use crate::{CmdResult, Failure};

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn read_text(path: &Path) -> CmdResult<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())).into())
}

pub fn tolerance(g: &Global) -> CmdResult<Tolerance> {
    match g.tolerance {
        None => Ok(Tolerance::default()),
        Some(t) if t.is_finite() && t >= 0.0 => Ok(Tolerance::new(t)),
        Some(t) => Err(usage(format!(
            "tolerance must be a finite number >= 0, got {t}"
        ))),
    }
}

pub fn order(g: &Global) -> CmdResult<MinkowskiOrder> {
    Ok(g.order.parse::<MinkowskiOrder>()?)
}

pub fn metric(g: &Global) -> CmdResult<Metric> {
    let m = Metric::new(order(g)?);
    match &g.weights {
        None => Ok(m),
        Some(text) => {
            let w = text
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| {
                    usage(format!(
                        "--weights expects comma-separated numbers, got `{text}`"
                    ))
                })?;
            Ok(m.with_weights(w)?)
        }
    }
}

/// `--schema` when given, else a schema inferred from `fallback`.
pub fn schema_or_infer(g: &Global, fallback: Option<&Path>) -> CmdResult<Arc<DomainSchema>> {
    if let Some(p) = &g.schema {
        return Ok(DomainSchema::load(p)?);
    }
    match fallback {
        Some(p) if p.extension().is_some_and(|e| e == "json") => infer_from_object_file(p),
        Some(p) => Ok(existence::infer_schema(p)?),
        None => Err(usage("--schema or --data is required")),
    }
}

pub fn schema(g: &Global) -> CmdResult<Arc<DomainSchema>> {
    schema_or_infer(g, g.data.as_deref())
}

pub fn data_path(g: &Global) -> CmdResult<&Path> {
    g.data.as_deref().ok_or_else(|| usage("--data is required"))
}

pub fn dataset(g: &Global, schema: &Arc<DomainSchema>) -> CmdResult<ExistenceSet> {
    Ok(existence::load_dataset(data_path(g)?, schema, tolerance(g)?)?.set)
}

fn read_object(path: &Path) -> CmdResult<Map<String, Json>> {
    serde_json::from_str(&read_text(path)?).map_err(|e| {
        Error::Parse {
            line: e.line(),
            message: format!("{}: {e}", path.display()),
        }
        .into()
    })
}

fn infer_from_object_file(path: &Path) -> CmdResult<Arc<DomainSchema>> {
    let obj = read_object(path)?;
    let dims: Vec<&str> = obj
        .keys()
        .map(String::as_str)
        .filter(|k| *k != SOURCE_FIELD)
        .collect();
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("vector");
    Ok(DomainSchema::continuous(name, &dims)?)
}

pub fn vector_from_file(schema: &Arc<DomainSchema>, path: &Path) -> CmdResult<OntVector> {
    let obj = read_object(path)?;
    let (raw, _) = raw_from_json_object(schema, &obj).map_err(|m| Error::Parse {
        line: 1,
        message: format!("{}: {m}", path.display()),
    })?;
    Ok(schema.make_vector(&raw)?)
}

pub fn vector_from_literal(schema: &Arc<DomainSchema>, text: &str) -> CmdResult<OntVector> {
    let tokens: Vec<&str> = text.split(',').map(str::trim).collect();
    Ok(schema.parse_vector(&tokens)?)
}

/// A `.json` path names a vector file; anything else is a literal.
pub fn vector_spec(schema: &Arc<DomainSchema>, text: &str) -> CmdResult<OntVector> {
    if text.ends_with(".json") {
        vector_from_file(schema, Path::new(text))
    } else {
        vector_from_literal(schema, text)
    }
}

pub fn vector(schema: &Arc<DomainSchema>, arg: &VectorArg) -> CmdResult<OntVector> {
    match (&arg.vector, &arg.vector_file) {
        (Some(_), Some(_)) => Err(usage("give either --vector or --vector-file, not both")),
        (Some(v), None) => vector_from_literal(schema, v),
        (None, Some(p)) => vector_from_file(schema, p),
        (None, None) => Err(usage("--vector or --vector-file is required")),
    }
}

pub fn region(schema: &Arc<DomainSchema>, text: &str) -> CmdResult<ConvexRegion> {
    let literal = if text.trim_start().starts_with('{') {
        text.to_string()
    } else {
        read_text(Path::new(text))?
    };
    Ok(ConvexRegion::from_json(schema, &literal)?)
}

pub fn class(schema: &Arc<DomainSchema>, arg: &ClassArgs) -> CmdResult<Arc<FunctionClass>> {
    let text = match (&arg.class, &arg.class_file) {
        (Some(_), Some(_)) => return Err(usage("give either --class or --class-file, not both")),
        (Some(t), None) => t.clone(),
        (None, Some(p)) => read_text(p)?,
        (None, None) => return Err(usage("--class or --class-file is required")),
    };
    Ok(Arc::new(FunctionClass::parse(text.trim_end(), schema)?))
}

/// Rows of a vectors file with their labels: the `@source` value, or
/// `v1`, `v2`, ... by position.
pub fn labelled_vectors(
    schema: &Arc<DomainSchema>,
    path: &Path,
) -> CmdResult<Vec<(String, OntVector)>> {
    let records = existence::read_records(path, schema)?;
    Ok(records
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            (
                r.provenance.unwrap_or_else(|| format!("v{}", i + 1)),
                r.vector,
            )
        })
        .collect())
}
