use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value as Json};
use vectont::dependence::{self, ProbabilityModel, DEFAULT_DEPENDENCE_TOL};
use vectont::error::Error;
use vectont::existence::{self, vector_to_json, Insertion};
use vectont::foe::{self, ContinuityLabel, FOEInstance};
use vectont::mereology::{self, ConvexRegion};
use vectont::metrics::{self, Delta, Move, ReconstructionPath};
use vectont::schema::{format_value, Dimension, DomainSchema, OntVector, QualeKind};

use crate::args::*;
use crate::input::{self, labelled_vectors, vector_spec};
use crate::{CmdResult, Failure, Outcome};

pub(crate) fn dispatch(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Schema(c) => schema_cmd(g, c),
        Command::Data(c) => data_cmd(g, c),
        Command::Exists(v) => {
            let schema = input::schema(g)?;
            let set = input::dataset(g, &schema)?;
            let found = set.exists(&input::vector(&schema, v)?)?;
            Ok(boolean(found))
        }
        Command::Possible(v) => {
            let schema = input::schema(g)?;
            Ok(match input::vector(&schema, v) {
                Ok(_) => Outcome::new("true", json!({ "possible": true, "reason": null })),
                Err(Failure::Domain(e)) => Outcome::new(
                    format!("false ({}: {e})", e.code()),
                    json!({ "possible": false, "reason": e.code() }),
                ),
                Err(usage) => return Err(usage),
            })
        }
        Command::Foe(c) => foe_cmd(g, c),
        Command::Region(c) => region_cmd(g, c),
        Command::Dist(a) => {
            let schema = input::schema(g)?;
            let mut metric = input::metric(g)?;
            if a.scale {
                metric = metric.with_min_max(&input::dataset(g, &schema)?);
            }
            let d = metric.distance(&vector_spec(&schema, &a.a)?, &vector_spec(&schema, &a.b)?)?;
            Ok(number(d))
        }
        Command::Recon(c) => recon_cmd(g, c),
        Command::Navigate(a) => {
            let schema = input::schema(g)?;
            let set = input::dataset(g, &schema)?;
            let origin = vector_spec(&schema, &a.from)?;
            let moves = a
                .moves
                .iter()
                .map(|m| Move::parse(m, &schema))
                .collect::<Result<Vec<_>, _>>()?;
            let nav = metrics::navigate(&set, &origin, &moves)?;
            Ok(Outcome::new(
                nav.member.to_string(),
                json!({
                    "member": vector_to_json(&nav.member),
                    "target": vector_to_json(&nav.virtual_target),
                    "distance": nav.distance,
                }),
            ))
        }
        Command::Nearest(a) => {
            let schema = input::schema(g)?;
            let set = input::dataset(g, &schema)?;
            let v = input::vector(&schema, &a.vector)?;
            let found = metrics::nearest(&set, &v, &input::metric(g)?, a.k)?;
            let human: Vec<String> = found.iter().map(|(m, d)| format!("{d}\t{m}")).collect();
            let rows: Vec<Json> = found
                .iter()
                .map(|(m, d)| json!({ "member": vector_to_json(m), "distance": d }))
                .collect();
            Ok(Outcome::new(human.join("\n"), Json::Array(rows)))
        }
        Command::Depend(c) => depend_cmd(g, c),
        Command::Prob(c) => prob_cmd(g, c),
    }
}

fn boolean(b: bool) -> Outcome {
    Outcome::new(b.to_string(), Json::Bool(b))
}

fn number(x: f64) -> Outcome {
    Outcome::new(x.to_string(), json!(x))
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn schema_json(schema: &DomainSchema) -> Json {
    serde_json::from_str(&schema.to_json()).expect("schema JSON")
}

/// `name:kind`, `name:kind:LO..HI`, or `name:categorical=a|b|c`.
fn parse_dim_spec(spec: &str) -> CmdResult<Dimension> {
    let bad = || usage(format!("bad dimension spec `{spec}`"));
    let (name, rest) = spec.split_once(':').ok_or_else(bad)?;
    let (kind, bounds) = match rest.split_once(':') {
        Some((k, b)) => (k, Some(b)),
        None => (rest, None),
    };
    let mut dim = match kind {
        "continuous" => Dimension::continuous(name),
        "integer" => Dimension::integer(name),
        "boolean" => Dimension::boolean(name),
        k => match k.strip_prefix("categorical=") {
            Some(values) => Dimension::categorical(name, values.split('|')),
            None => return Err(bad()),
        },
    };
    if let Some(b) = bounds {
        let (lo, hi) = b.split_once("..").ok_or_else(bad)?;
        let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
        dim = dim.with_bounds(lo, hi);
    }
    Ok(dim)
}

fn describe_schema(schema: &DomainSchema) -> String {
    let mut out = format!("{} ({} dims)\n", schema.name(), schema.len());
    for d in schema.dims() {
        out.push_str(&format!("  {}: {}", d.name, d.kind.label()));
        if let QualeKind::Categorical(vs) = &d.kind {
            out.push_str(&format!(" {{{}}}", vs.join(", ")));
        }
        if !d.unit.is_empty() {
            out.push_str(&format!(" [{}]", d.unit));
        }
        if let Some((lo, hi)) = d.bounds {
            out.push_str(&format!(" in [{lo}, {hi}]"));
        }
        out.push('\n');
    }
    out
}

fn schema_cmd(g: &Global, c: &SchemaCmd) -> CmdResult {
    match c {
        SchemaCmd::New { name, dims, out } => {
            let dims = dims
                .iter()
                .map(|s| parse_dim_spec(s))
                .collect::<CmdResult<Vec<_>>>()?;
            let schema = DomainSchema::define(name.as_str(), dims)?;
            if let Some(p) = out {
                schema.save(p)?;
            }
            Ok(Outcome::new(schema.to_json(), schema_json(&schema)))
        }
        SchemaCmd::Show => {
            let schema = input::schema(g)?;
            Ok(Outcome::new(describe_schema(&schema), schema_json(&schema)))
        }
    }
}

fn data_cmd(g: &Global, c: &DataCmd) -> CmdResult {
    let schema = input::schema(g)?;
    let path = input::data_path(g)?;
    let report = existence::load_dataset(path, &schema, input::tolerance(g)?)?;
    match c {
        DataCmd::Load => {
            let dups: Vec<Json> = report
                .duplicates
                .iter()
                .map(|(line, i)| json!({ "line": line, "member": i }))
                .collect();
            let mut human = format!("{} members", report.set.len());
            for (line, i) in &report.duplicates {
                human.push_str(&format!("\nline {line} duplicates member {i}"));
            }
            Ok(Outcome::new(
                human,
                json!({ "members": report.set.len(), "duplicates": dups }),
            ))
        }
        DataCmd::Save { out } => {
            existence::save_dataset(&report.set, out)?;
            Ok(Outcome::new(
                format!("wrote {} members to {}", report.set.len(), out.display()),
                json!({ "members": report.set.len(), "path": out.display().to_string() }),
            ))
        }
        DataCmd::Insert {
            vector,
            source,
            out,
        } => {
            let v = input::vector(&schema, vector)?;
            let mut set = report.set;
            let ins = set.insert_mut(v, source.clone())?;
            existence::save_dataset(&set, out.as_deref().unwrap_or(path))?;
            let (human, dup) = match ins {
                Insertion::Added => (format!("inserted ({} members)", set.len()), Json::Null),
                Insertion::Duplicate(i) => (
                    format!("duplicate of member {i} ({} members)", set.len()),
                    json!(i),
                ),
            };
            Ok(Outcome::new(
                human,
                json!({
                    "inserted": ins == Insertion::Added,
                    "duplicate_of": dup,
                    "members": set.len(),
                }),
            ))
        }
    }
}

fn bound(schema: &Arc<DomainSchema>, b: &BoundArgs) -> CmdResult<FOEInstance> {
    let class = input::class(schema, &b.class)?;
    Ok(FOEInstance::bind_text(&class, &b.bind)?)
}

fn instance_json(inst: &FOEInstance) -> Json {
    let mut bindings = serde_json::Map::new();
    for (p, v) in inst.class().params.iter().zip(inst.bindings()) {
        bindings.insert(p.clone(), json!(v));
    }
    json!({ "class": inst.class().name, "bindings": bindings })
}

fn foe_cmd(g: &Global, c: &FoeCmd) -> CmdResult {
    let schema = input::schema(g)?;
    match c {
        FoeCmd::Parse(a) => {
            let class = input::class(&schema, a)?;
            let dims: Vec<&str> = class
                .referenced_dims()
                .into_iter()
                .map(|i| schema.dims()[i].name.as_str())
                .collect();
            Ok(Outcome::new(
                class.unparse(),
                json!({
                    "name": class.name,
                    "params": class.params,
                    "dims": dims,
                    "canonical": class.unparse(),
                }),
            ))
        }
        FoeCmd::Bind(b) => {
            let inst = bound(&schema, b)?;
            Ok(Outcome::new(inst.to_string(), instance_json(&inst)))
        }
        FoeCmd::Eval { bound: b, vector } => {
            let inst = bound(&schema, b)?;
            let v = input::vector(&schema, vector)?;
            Ok(boolean(inst.evaluate(&v, &input::tolerance(g)?)?))
        }
        FoeCmd::Extension(b) => {
            let inst = bound(&schema, b)?;
            let set = input::dataset(g, &schema)?;
            let ext = inst.extension(&set)?;
            let ratio = match inst.compression_ratio(&set) {
                Ok(r) => json!(r),
                Err(Error::EmptyExtension) => Json::Null,
                Err(e) => return Err(e.into()),
            };
            let lines: Vec<String> = ext.vectors().map(|v| v.to_string()).collect();
            let members: Vec<Json> = ext
                .vectors()
                .map(|v| Json::Object(vector_to_json(v)))
                .collect();
            Ok(Outcome::new(
                lines.join("\n"),
                json!({ "count": ext.len(), "members": members, "compression_ratio": ratio }),
            ))
        }
        FoeCmd::FitConst {
            value,
            axis,
            gap_factor,
        } => {
            let set = input::dataset(g, &schema)?;
            let fits = foe::fit_constant_interval(&set, value, axis, *gap_factor)?;
            let mut lines = Vec::new();
            let mut rows = Vec::new();
            for f in &fits {
                let b = f.bindings();
                let n = f.extension(&set)?.len();
                lines.push(format!("{f}  # {n} members"));
                rows.push(json!({ "lo": b[0], "hi": b[1], "val": b[2], "members": n }));
            }
            Ok(Outcome::new(lines.join("\n"), Json::Array(rows)))
        }
        FoeCmd::Classify {
            bound: b,
            axis,
            gap_factor,
        } => {
            let inst = bound(&schema, b)?;
            let set = input::dataset(g, &schema)?;
            let v = foe::classify_continuity(&set, &inst, axis, *gap_factor)?;
            let label = match v.label {
                ContinuityLabel::Endurant => "endurant",
                ContinuityLabel::Perdurant => "perdurant",
            };
            let human = match &v.witness {
                Some(w) => format!("{label} (gap {} -> {}, length {})", w.from, w.to, w.length),
                None => label.to_string(),
            };
            let witness = v.witness.map_or(
                Json::Null,
                |w| json!({ "from": w.from, "to": w.to, "length": w.length }),
            );
            Ok(Outcome::new(
                human,
                json!({
                    "label": label,
                    "witness": witness,
                    "sampling_interval": v.sampling_interval,
                    "threshold": v.threshold,
                }),
            ))
        }
    }
}

fn region_json(r: &ConvexRegion) -> Json {
    serde_json::from_str(&r.to_json()).expect("region JSON")
}

fn region_cmd(g: &Global, c: &RegionCmd) -> CmdResult {
    let schema = match c {
        RegionCmd::New {
            points: Some(p), ..
        } => input::schema_or_infer(g, Some(p))?,
        _ => input::schema(g)?,
    };
    match c {
        RegionCmd::New { dims, points } => {
            let path = match points {
                Some(p) => p.as_path(),
                None => input::data_path(g)?,
            };
            let pts: Vec<OntVector> = existence::read_records(path, &schema)?
                .into_iter()
                .map(|r| r.vector)
                .collect();
            let r = ConvexRegion::from_points(&pts, dims)?;
            Ok(Outcome::new(r.to_json(), region_json(&r)))
        }
        RegionCmd::Contains { region, vector } => {
            let r = input::region(&schema, region)?;
            Ok(boolean(r.contains_point(&input::vector(&schema, vector)?)?))
        }
        RegionCmd::PartOf { part, whole } => {
            let (p, w) = (
                input::region(&schema, part)?,
                input::region(&schema, whole)?,
            );
            Ok(boolean(p.part_of(&w)?))
        }
        RegionCmd::Overlap { a, b } => {
            let (a, b) = (input::region(&schema, a)?, input::region(&schema, b)?);
            Ok(boolean(a.overlaps(&b)?))
        }
        RegionCmd::Centrality { part, whole } => {
            let (p, w) = (
                input::region(&schema, part)?,
                input::region(&schema, whole)?,
            );
            let c = mereology::centrality(&p, &w, input::order(g)?)?;
            let out = Outcome::new(
                c.distance.to_string(),
                json!({ "distance": c.distance, "part_of": c.part_of }),
            );
            Ok(if c.part_of {
                out
            } else {
                out.warn("the part is not contained in the whole")
            })
        }
        RegionCmd::ConvexIn { subset, dims } => {
            let set = input::dataset(g, &schema)?;
            let sub: Vec<OntVector> = existence::read_records(subset, &schema)?
                .into_iter()
                .map(|r| r.vector)
                .collect();
            let v = mereology::is_convex_in(&set, &sub, dims)?;
            let human = match &v.witness {
                Some(w) => format!("false (witness {w})"),
                None => "true".into(),
            };
            let witness = v
                .witness
                .as_ref()
                .map_or(Json::Null, |w| Json::Object(vector_to_json(w)));
            Ok(Outcome::new(
                human,
                json!({ "convex": v.convex, "witness": witness }),
            ))
        }
    }
}

fn move_json(schema: &DomainSchema, m: &Move) -> Json {
    let (op, value) = match &m.delta {
        Delta::Shift(x) => ("shift", json!(x)),
        Delta::Step(i) => ("step", json!(i)),
        Delta::Set(v) => {
            let d = schema.dim(&m.dim).expect("move on a schema dimension");
            let label = match v {
                vectont::schema::Value::Bool(b) => json!(b),
                vectont::schema::Value::Real(x) => json!(x),
                vectont::schema::Value::Int(i) => json!(i),
                _ => json!(format_value(d, v)),
            };
            ("set", label)
        }
    };
    json!({ "dim": m.dim, "op": op, "value": value })
}

fn recon_cmd(g: &Global, c: &ReconCmd) -> CmdResult {
    let ends = match c {
        ReconCmd::Path(a) | ReconCmd::Dist(a) => a,
    };
    let hint = ends
        .from
        .ends_with(".json")
        .then(|| Path::new(&ends.from))
        .or(g.data.as_deref());
    let schema = input::schema_or_infer(g, hint)?;
    let from = vector_spec(&schema, &ends.from)?;
    let to = vector_spec(&schema, &ends.to)?;
    let tol = input::tolerance(g)?;
    let path: ReconstructionPath = metrics::reconstruction_path(&from, &to, &tol)?;
    match c {
        ReconCmd::Path(_) => {
            let human = if path.is_empty() {
                "no moves".to_string()
            } else {
                path.moves
                    .iter()
                    .map(|m| m.describe(&schema))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            let moves: Vec<Json> = path.moves.iter().map(|m| move_json(&schema, m)).collect();
            Ok(Outcome::new(
                human,
                json!({ "moves": moves, "length": path.len() }),
            ))
        }
        ReconCmd::Dist(_) => Ok(Outcome::new(path.len().to_string(), json!(path.len()))),
    }
}

/// `1*r + 1*g`, skipping zero coefficients.
fn combination_text(terms: &[(&str, f64)]) -> String {
    let mut out = String::new();
    for (label, c) in terms.iter().filter(|(_, c)| *c != 0.0) {
        if out.is_empty() {
            out.push_str(&format!("{c}*{label}"));
        } else if *c < 0.0 {
            out.push_str(&format!(" - {}*{label}", -c));
        } else {
            out.push_str(&format!(" + {c}*{label}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn combination_json(terms: &[(&str, f64)]) -> Json {
    Json::Array(
        terms
            .iter()
            .map(|(l, c)| json!({ "vector": l, "coefficient": c }))
            .collect(),
    )
}

fn depend_cmd(g: &Global, c: &DependCmd) -> CmdResult {
    let tol = g.tolerance.unwrap_or(DEFAULT_DEPENDENCE_TOL);
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(usage(format!(
            "tolerance must be a finite number >= 0, got {tol}"
        )));
    }
    match c {
        DependCmd::Rank { vectors } => {
            let schema = input::schema_or_infer(g, Some(vectors))?;
            let rows = labelled_vectors(&schema, vectors)?;
            let vs: Vec<OntVector> = rows.iter().map(|(_, v)| v.clone()).collect();
            let rep = dependence::detect_linear_dependence(&vs, tol)?;
            let mut human = format!("rank={}", rep.rank);
            let mut deps = Vec::new();
            for d in &rep.dependent {
                let terms: Vec<(&str, f64)> = rows[..d.index]
                    .iter()
                    .map(|(l, _)| l.as_str())
                    .zip(d.coefficients.iter().copied())
                    .collect();
                let label = &rows[d.index].0;
                human.push_str(&format!("; {label} = {}", combination_text(&terms)));
                deps.push(json!({
                    "vector": label,
                    "index": d.index,
                    "combination": combination_json(&terms),
                    "residual": d.residual,
                }));
            }
            Ok(Outcome::new(
                human,
                json!({
                    "rank": rep.rank,
                    "dependent": deps,
                    "tolerance_used": rep.tolerance_used,
                }),
            ))
        }
        DependCmd::Express { vectors, target } => {
            let schema = input::schema_or_infer(g, Some(vectors))?;
            let rows = labelled_vectors(&schema, vectors)?;
            let (label, tv, candidates): (String, OntVector, Vec<&(String, OntVector)>) =
                match rows.iter().position(|(l, _)| l == target) {
                    Some(i) => (
                        target.clone(),
                        rows[i].1.clone(),
                        rows.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != i)
                            .map(|(_, r)| r)
                            .collect(),
                    ),
                    None => (
                        "target".into(),
                        input::vector_from_literal(&schema, target)?,
                        rows.iter().collect(),
                    ),
                };
            let cvs: Vec<OntVector> = candidates.iter().map(|(_, v)| v.clone()).collect();
            let comb = dependence::express_as_combination(&tv, &cvs, tol)?;
            let terms: Vec<(&str, f64)> = candidates
                .iter()
                .map(|(l, _)| l.as_str())
                .zip(comb.coefficients.iter().copied())
                .collect();
            Ok(Outcome::new(
                format!("{label} = {}", combination_text(&terms)),
                json!({
                    "target": label,
                    "combination": combination_json(&terms),
                    "residual": comb.residual,
                }),
            ))
        }
    }
}

fn prob_cmd(g: &Global, c: &ProbCmd) -> CmdResult {
    match c {
        ProbCmd::Fit {
            bins,
            smoothing,
            out,
        } => {
            let schema = input::schema(g)?;
            let set = input::dataset(g, &schema)?;
            let model = ProbabilityModel::estimate(&set, *bins, *smoothing)?;
            let text = model.to_json();
            let summary = json!({
                "cells": model.cells(),
                "members": set.len(),
                "smoothing": model.smoothing(),
            });
            match out {
                Some(p) => {
                    std::fs::write(p, &text)
                        .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                    Ok(Outcome::new(
                        format!(
                            "{} cells from {} members -> {}",
                            model.cells(),
                            set.len(),
                            p.display()
                        ),
                        summary,
                    ))
                }
                None => {
                    let mut j = summary;
                    j["model"] = serde_json::from_str(&text).expect("model JSON");
                    Ok(Outcome::new(text, j))
                }
            }
        }
        ProbCmd::Query { model, vector } => {
            let text = std::fs::read_to_string(model)
                .map_err(|e| Error::Io(format!("{}: {e}", model.display())))?;
            let m = ProbabilityModel::from_json(&text)?;
            if let Some(p) = &g.schema {
                if !DomainSchema::load(p)?.same_as(m.schema()) {
                    return Err(Error::SchemaMismatch.into());
                }
            }
            let v = input::vector(m.schema(), vector)?;
            let p = m.probability_of(&v)?;
            let out = Outcome::new(
                p.probability.to_string(),
                json!({ "probability": p.probability, "cell": p.cell, "clamped": p.clamped }),
            );
            Ok(if p.clamped {
                out.warn("vector lies outside the fitted range; using the nearest edge cell")
            } else {
                out
            })
        }
    }
}
