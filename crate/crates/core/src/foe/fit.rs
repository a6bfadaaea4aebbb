//! Interval-constant fitting and the endurant/perdurant split.
//!
//! Continuity on finite samples is decided by gaps along an axis dimension:
//! a sorted extension is continuous when no consecutive gap exceeds
//! `gap_factor` times the median gap. The median is the lower median of the
//! gaps between distinct (non tolerance-equal) axis values.

use std::cmp::Ordering;
use std::sync::Arc;

use super::{FOEInstance, FunctionClass};
use crate::error::{Error, Result};
use crate::existence::ExistenceSet;
use crate::schema::{DomainSchema, OntVector};
use crate::tolerance::Tolerance;

pub const DEFAULT_GAP_FACTOR: f64 = 1.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContinuityLabel {
    Endurant,
    Perdurant,
}

/// A gap between consecutive axis values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Gap {
    pub from: f64,
    pub to: f64,
    /// `to - from`, or infinity for single-instant extensions.
    pub length: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuityVerdict {
    pub label: ContinuityLabel,
    /// Largest gap, present for perdurants.
    pub witness: Option<Gap>,
    /// Median spacing; `None` when the extension occupies a single instant.
    pub sampling_interval: Option<f64>,
    pub threshold: Option<f64>,
}

fn numeric_index(schema: &DomainSchema, dim: &str) -> Result<usize> {
    let i = schema
        .index_of(dim)
        .ok_or_else(|| Error::UnknownDimension(dim.to_string()))?;
    if !schema.dims()[i].is_numeric() {
        return Err(Error::NonNumericDimension(dim.to_string()));
    }
    Ok(i)
}

fn coord(v: &OntVector, i: usize) -> f64 {
    v.coords()[i].as_f64().expect("numeric dimension")
}

/// Lower median of the positive gaps between sorted axis values.
fn median_gap(sorted: &[f64], tol: &Tolerance) -> Option<f64> {
    let mut gaps: Vec<f64> = sorted
        .windows(2)
        .filter(|w| !tol.eq(w[0], w[1]))
        .map(|w| w[1] - w[0])
        .collect();
    if gaps.is_empty() {
        return None;
    }
    gaps.sort_by(f64::total_cmp);
    Some(gaps[(gaps.len() - 1) / 2])
}

fn fresh_name(schema: &DomainSchema, base: &str) -> String {
    let mut name = base.to_string();
    while schema.index_of(&name).is_some() {
        name.insert(0, '_');
    }
    name
}

/// `class interval_constant(lo, hi, val): (axis >= lo) AND (axis <= hi) AND (value = val)`
pub fn interval_constant_class(
    schema: &Arc<DomainSchema>,
    value_dim: &str,
    axis_dim: &str,
) -> Result<FunctionClass> {
    numeric_index(schema, value_dim)?;
    numeric_index(schema, axis_dim)?;
    let (lo, hi, val) = (
        fresh_name(schema, "lo"),
        fresh_name(schema, "hi"),
        fresh_name(schema, "val"),
    );
    let text = format!(
        "class interval_constant({lo}, {hi}, {val}): \
         ({axis_dim} >= {lo}) AND ({axis_dim} <= {hi}) AND ({value_dim} = {val})"
    );
    FunctionClass::parse(&text, schema)
}

/// Splits the set into maximal runs along `axis_dim` over which `value_dim`
/// stays tolerance-constant and no gap exceeds `gap_factor` times the median
/// gap. Each run becomes one bound interval-constant instance; runs of a
/// single member become singleton intervals.
pub fn fit_constant_interval(
    set: &ExistenceSet,
    value_dim: &str,
    axis_dim: &str,
    gap_factor: f64,
) -> Result<Vec<FOEInstance>> {
    let schema = set.schema();
    let vi = numeric_index(schema, value_dim)?;
    let ai = numeric_index(schema, axis_dim)?;
    if vi == ai {
        return Err(Error::InvalidArgument(
            "value and axis dimensions must differ".into(),
        ));
    }
    if set.is_empty() {
        return Err(Error::EmptyExistenceSet);
    }
    let tol = set.tolerance();
    let class = Arc::new(interval_constant_class(schema, value_dim, axis_dim)?);

    let mut members: Vec<&OntVector> = set.vectors().collect();
    members.sort_by(|a, b| {
        coord(a, ai)
            .total_cmp(&coord(b, ai))
            .then_with(|| coord(a, vi).total_cmp(&coord(b, vi)))
            .then_with(|| a.lex_cmp(b))
    });
    let axis: Vec<f64> = members.iter().map(|m| coord(m, ai)).collect();
    let threshold = median_gap(&axis, &tol).map_or(f64::INFINITY, |m| gap_factor * m);

    let mut out = Vec::new();
    let mut run_start = 0;
    for i in 1..=members.len() {
        let breaks = i == members.len()
            || !tol.eq(coord(members[i], vi), coord(members[run_start], vi))
            || axis[i] - axis[i - 1] > threshold;
        if breaks {
            let bindings = [
                (class.params[0].as_str(), axis[run_start]),
                (class.params[1].as_str(), axis[i - 1]),
                (class.params[2].as_str(), coord(members[run_start], vi)),
            ];
            out.push(FOEInstance::bind(&class, &bindings)?);
            run_start = i;
        }
    }
    Ok(out)
}

/// Endurant when the instance's extension has no gap along `axis_dim`
/// wider than `gap_factor` times its median gap. A single instant cannot
/// endure and is reported as a perdurant with an infinite gap.
pub fn classify_continuity(
    set: &ExistenceSet,
    instance: &FOEInstance,
    axis_dim: &str,
    gap_factor: f64,
) -> Result<ContinuityVerdict> {
    let ai = numeric_index(set.schema(), axis_dim)?;
    let ext = instance.extension(set)?;
    if ext.is_empty() {
        return Err(Error::EmptyExtension);
    }
    let tol = set.tolerance();
    let mut axis: Vec<f64> = ext.vectors().map(|v| coord(v, ai)).collect();
    axis.sort_by(f64::total_cmp);

    let Some(median) = median_gap(&axis, &tol) else {
        let t = axis[0];
        return Ok(ContinuityVerdict {
            label: ContinuityLabel::Perdurant,
            witness: Some(Gap {
                from: t,
                to: t,
                length: f64::INFINITY,
            }),
            sampling_interval: None,
            threshold: None,
        });
    };
    let threshold = gap_factor * median;
    let widest = axis
        .windows(2)
        .map(|w| Gap {
            from: w[0],
            to: w[1],
            length: w[1] - w[0],
        })
        .fold(None::<Gap>, |best, g| match best {
            Some(b) if b.length.total_cmp(&g.length) != Ordering::Less => Some(b),
            _ => Some(g),
        })
        .expect("at least two distinct axis values");
    let (label, witness) = if widest.length > threshold {
        (ContinuityLabel::Perdurant, Some(widest))
    } else {
        (ContinuityLabel::Endurant, None)
    };
    Ok(ContinuityVerdict {
        label,
        witness,
        sampling_interval: Some(median),
        threshold: Some(threshold),
    })
}
