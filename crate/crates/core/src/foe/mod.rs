//! Functions of existence.
//!
//! A [`FunctionClass`] is a parametric predicate family over a schema's
//! numeric dimensions, written in a small expression language (see
//! [`parser`]). Binding every parameter yields a [`FOEInstance`], which maps
//! vectors to true/false. The members of an existence set that satisfy an
//! instance form its extension: one compact description standing in for many
//! existing vectors.

mod fit;
pub mod parser;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Position, Result};
use crate::existence::ExistenceSet;
use crate::schema::{DomainSchema, OntVector};
use crate::tolerance::Tolerance;

pub use fit::{
    classify_continuity, fit_constant_interval, interval_constant_class, ContinuityLabel,
    ContinuityVerdict, Gap, DEFAULT_GAP_FACTOR,
};
pub use parser::{parse_class, unparse_class, unparse_cond};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CmpOp {
    Le,
    Ge,
    Eq,
}

/// Real-valued expression.
#[derive(Debug, Clone, PartialEq)]
pub enum Arith {
    Num(f64),
    /// Numeric schema dimension; `index` is its position in the class schema.
    Dim {
        name: String,
        index: usize,
    },
    /// Parameter slot; `index` is its position in the parameter list.
    Param {
        name: String,
        index: usize,
    },
    Bin {
        op: ArithOp,
        lhs: Box<Arith>,
        rhs: Box<Arith>,
    },
    Pow {
        base: Box<Arith>,
        exp: u32,
    },
}

/// Boolean-valued expression; the root of every class body.
#[derive(Debug, Clone, PartialEq)]
pub enum Cond {
    Cmp { lhs: Arith, op: CmpOp, rhs: Arith },
    Not(Box<Cond>),
    And(Vec<Cond>),
    Or(Vec<Cond>),
}

impl Arith {
    fn eval(&self, dims: &[f64], params: &[f64]) -> f64 {
        match self {
            Arith::Num(x) => *x,
            Arith::Dim { index, .. } => dims[*index],
            Arith::Param { index, .. } => params[*index],
            Arith::Bin { op, lhs, rhs } => {
                let (a, b) = (lhs.eval(dims, params), rhs.eval(dims, params));
                match op {
                    ArithOp::Add => a + b,
                    ArithOp::Sub => a - b,
                    ArithOp::Mul => a * b,
                }
            }
            Arith::Pow { base, exp } => base.eval(dims, params).powi(*exp as i32),
        }
    }

    fn collect_dims(&self, out: &mut Vec<usize>) {
        match self {
            Arith::Dim { index, .. } => {
                if !out.contains(index) {
                    out.push(*index);
                }
            }
            Arith::Bin { lhs, rhs, .. } => {
                lhs.collect_dims(out);
                rhs.collect_dims(out);
            }
            Arith::Pow { base, .. } => base.collect_dims(out),
            Arith::Num(_) | Arith::Param { .. } => {}
        }
    }
}

impl Cond {
    fn eval(&self, dims: &[f64], params: &[f64], tol: &Tolerance) -> bool {
        match self {
            Cond::Cmp { lhs, op, rhs } => {
                let (a, b) = (lhs.eval(dims, params), rhs.eval(dims, params));
                match op {
                    CmpOp::Le => tol.le(a, b),
                    CmpOp::Ge => tol.ge(a, b),
                    CmpOp::Eq => tol.eq(a, b),
                }
            }
            Cond::Not(c) => !c.eval(dims, params, tol),
            Cond::And(cs) => cs.iter().all(|c| c.eval(dims, params, tol)),
            Cond::Or(cs) => cs.iter().any(|c| c.eval(dims, params, tol)),
        }
    }

    fn collect_dims(&self, out: &mut Vec<usize>) {
        match self {
            Cond::Cmp { lhs, rhs, .. } => {
                lhs.collect_dims(out);
                rhs.collect_dims(out);
            }
            Cond::Not(c) => c.collect_dims(out),
            Cond::And(cs) | Cond::Or(cs) => cs.iter().for_each(|c| c.collect_dims(out)),
        }
    }
}

/// A parametric predicate family (a type).
#[derive(Debug, Clone)]
pub struct FunctionClass {
    pub name: String,
    pub params: Vec<String>,
    pub body: Cond,
    param_positions: Vec<Position>,
    schema: Arc<DomainSchema>,
    source: String,
}

impl PartialEq for FunctionClass {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.params == other.params && self.body == other.body
    }
}

impl FunctionClass {
    pub fn parse(text: &str, schema: &Arc<DomainSchema>) -> Result<Self> {
        parse_class(text, schema)
    }

    pub fn schema(&self) -> &Arc<DomainSchema> {
        &self.schema
    }

    /// The text this class was parsed from.
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn unparse(&self) -> String {
        unparse_class(self)
    }

    /// Schema dimensions referenced by the body, by class-schema index.
    pub fn referenced_dims(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.body.collect_dims(&mut out);
        out.sort_unstable();
        out
    }
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.unparse())
    }
}

/// A class with every parameter bound (a concept).
#[derive(Debug, Clone, PartialEq)]
pub struct FOEInstance {
    class: Arc<FunctionClass>,
    bindings: Vec<f64>,
}

impl FOEInstance {
    pub fn class(&self) -> &Arc<FunctionClass> {
        &self.class
    }

    /// Bound values, in parameter order.
    pub fn bindings(&self) -> &[f64] {
        &self.bindings
    }

    pub fn binding(&self, param: &str) -> Option<f64> {
        self.class
            .params
            .iter()
            .position(|p| p == param)
            .map(|i| self.bindings[i])
    }

    /// Binds parameters by name. Every slot must be present, no extras.
    pub fn bind(class: &Arc<FunctionClass>, values: &[(&str, f64)]) -> Result<Self> {
        let mut slots: Vec<Option<f64>> = vec![None; class.params.len()];
        for (name, value) in values {
            let i = class.params.iter().position(|p| p == name).ok_or_else(|| {
                Error::UnknownParameter {
                    name: name.to_string(),
                    pos: None,
                }
            })?;
            if slots[i].is_some() {
                return Err(Error::InvalidArgument(format!(
                    "parameter `{name}` bound twice"
                )));
            }
            slots[i] = Some(*value);
        }
        Self::from_slots(class, slots)
    }

    /// Binds from text: either positional `name(v1, v2, ...)` or named
    /// `p1=v1, p2=v2`. Errors carry positions within `text`.
    pub fn bind_text(class: &Arc<FunctionClass>, text: &str) -> Result<Self> {
        let trimmed = text.trim_end();
        if let Some(open) = trimmed.find('(') {
            if !trimmed.ends_with(')') {
                return Err(Error::Syntax {
                    pos: Position::locate(text, trimmed.len()),
                    message: "expected `)`".into(),
                });
            }
            let head = trimmed[..open].trim();
            if head != class.name {
                let at = text.find(head).unwrap_or(0);
                return Err(Error::Syntax {
                    pos: Position::locate(text, at),
                    message: format!("expected class name `{}`, found `{head}`", class.name),
                });
            }
            let inner_start = open + 1;
            let items = split_items(text, inner_start, trimmed.len() - 1);
            if items.len() != class.params.len() {
                let at = items
                    .get(class.params.len())
                    .map_or(trimmed.len() - 1, |i| i.0);
                return Err(Error::BindingArity {
                    class: class.name.clone(),
                    expected: class.params.len(),
                    found: items.len(),
                    pos: Position::locate(text, at),
                });
            }
            let slots = items
                .iter()
                .map(|&(off, item)| parse_number(text, off, item).map(Some))
                .collect::<Result<Vec<_>>>()?;
            return Self::from_slots(class, slots);
        }
        let mut slots: Vec<Option<f64>> = vec![None; class.params.len()];
        for (off, item) in split_items(text, 0, text.len()) {
            let eq = item.find('=').ok_or_else(|| Error::Syntax {
                pos: Position::locate(text, off),
                message: format!("expected `name=value`, found `{item}`"),
            })?;
            let name = item[..eq].trim();
            let i = class.params.iter().position(|p| p == name).ok_or_else(|| {
                Error::UnknownParameter {
                    name: name.to_string(),
                    pos: Some(Position::locate(text, off)),
                }
            })?;
            if slots[i].is_some() {
                return Err(Error::Syntax {
                    pos: Position::locate(text, off),
                    message: format!("parameter `{name}` bound twice"),
                });
            }
            let value_off = off + eq + 1;
            slots[i] = Some(parse_number(text, value_off, &item[eq + 1..])?);
        }
        Self::from_slots(class, slots)
    }

    fn from_slots(class: &Arc<FunctionClass>, slots: Vec<Option<f64>>) -> Result<Self> {
        let bindings = slots
            .into_iter()
            .enumerate()
            .map(|(i, s)| {
                s.ok_or_else(|| Error::MissingParameter {
                    name: class.params[i].clone(),
                    pos: class.param_positions[i],
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FOEInstance {
            class: Arc::clone(class),
            bindings,
        })
    }

    /// Truth value of the body at `v`. The vector may come from any schema
    /// that supplies every referenced dimension as a numeric coordinate.
    pub fn evaluate(&self, v: &OntVector, tol: &Tolerance) -> Result<bool> {
        let class_schema = &self.class.schema;
        let mut dims = vec![0.0; class_schema.len()];
        if class_schema.same_as(v.schema()) {
            for i in self.class.referenced_dims() {
                dims[i] = v.coords()[i].as_f64().ok_or(Error::SchemaMismatch)?;
            }
        } else {
            for i in self.class.referenced_dims() {
                let name = &class_schema.dims()[i].name;
                dims[i] = v
                    .get(name)
                    .ok()
                    .and_then(|c| c.as_f64())
                    .ok_or(Error::SchemaMismatch)?;
            }
        }
        Ok(self.class.body.eval(&dims, &self.bindings, tol))
    }

    /// Members of `set` satisfying this instance, under the set's tolerance.
    pub fn extension(&self, set: &ExistenceSet) -> Result<ExistenceSet> {
        let tol = set.tolerance();
        set.filter(|m| self.evaluate(&m.vector, &tol))
    }

    /// How many coordinates the concept stands in for, per parameter:
    /// `|extension| * n_dims / n_params`. Infinite for parameterless classes.
    pub fn compression_ratio(&self, set: &ExistenceSet) -> Result<f64> {
        let ext = self.extension(set)?;
        if ext.is_empty() {
            return Err(Error::EmptyExtension);
        }
        let covered = (ext.len() * set.schema().len()) as f64;
        if self.bindings.is_empty() {
            return Ok(f64::INFINITY);
        }
        Ok(covered / self.bindings.len() as f64)
    }
}

impl fmt::Display for FOEInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.bindings.iter().map(|b| b.to_string()).collect();
        write!(f, "{}({})", self.class.name, args.join(", "))
    }
}

/// Splits `text[start..end]` on commas, returning trimmed items with offsets.
fn split_items(text: &str, start: usize, end: usize) -> Vec<(usize, &str)> {
    let body = &text[start..end];
    if body.trim().is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut item_start = 0;
    for (i, c) in body
        .char_indices()
        .chain(std::iter::once((body.len(), ',')))
    {
        if c == ',' {
            let raw = &body[item_start..i];
            let lead = raw.len() - raw.trim_start().len();
            out.push((start + item_start + lead, raw.trim()));
            item_start = i + 1;
        }
    }
    out
}

fn parse_number(text: &str, offset: usize, item: &str) -> Result<f64> {
    let lead = item.len() - item.trim_start().len();
    let token = item.trim();
    match token.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(x),
        _ => Err(Error::Syntax {
            pos: Position::locate(text, offset + lead),
            message: format!("expected a number, found `{token}`"),
        }),
    }
}
