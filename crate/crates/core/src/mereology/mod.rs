//! Part-whole reasoning over convex regions.
//!
//! A region is the convex hull of finitely many generator points in a
//! numeric subspace. Nothing else about the hull is stored: membership,
//! containment and intersection are all answered by the hull-distance LP in
//! [`lp`]. Parthood of different kinds (spatial, functional) is just a choice
//! of subspace.

mod lp;

use std::sync::Arc;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::existence::ExistenceSet;
use crate::metrics::{minkowski_slices, MinkowskiOrder};
use crate::schema::{DomainSchema, OntVector, Projection, RawValue};
use lp::Group;

/// Maximum L1 distance at which a point still counts as inside a hull.
pub const HULL_TOLERANCE: f64 = 1e-7;

/// Above this many dimensions borderline cases are not re-solved exactly.
const EXACT_MAX_DIMS: usize = 3;

#[derive(Debug, Clone)]
pub struct ConvexRegion {
    projection: Projection,
    generators: Vec<Vec<f64>>,
}

#[derive(Serialize, Deserialize)]
struct RegionLiteral {
    dims: Vec<String>,
    generators: Vec<Vec<f64>>,
}

fn numeric_projection<S: AsRef<str>>(schema: &Arc<DomainSchema>, dims: &[S]) -> Result<Projection> {
    let proj = schema.projection(dims)?;
    if let Some(d) = proj.schema().dims().iter().find(|d| !d.is_numeric()) {
        return Err(Error::NonNumericDimension(d.name.clone()));
    }
    Ok(proj)
}

impl ConvexRegion {
    /// Region spanned by the projections of `points` onto `dims`.
    pub fn from_points<S: AsRef<str>>(points: &[OntVector], dims: &[S]) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointList)?;
        let projection = numeric_projection(first.schema(), dims)?;
        let mut generators: Vec<Vec<f64>> = Vec::with_capacity(points.len());
        for p in points {
            let g = projection.apply(p)?.to_f64s()?;
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
        Ok(ConvexRegion {
            projection,
            generators,
        })
    }

    /// Region from explicit generator coordinates, listed in `dims` order.
    pub fn from_generators<S: AsRef<str>>(
        schema: &Arc<DomainSchema>,
        dims: &[S],
        generators: &[Vec<f64>],
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyPointList);
        }
        let projection = numeric_projection(schema, dims)?;
        if projection.indices().len() != dims.len() {
            return Err(Error::InvalidArgument("region dimensions repeat".into()));
        }
        // Position of each sub-schema dimension within the caller's order.
        let sub = projection.schema();
        let order: Vec<usize> = sub
            .dims()
            .iter()
            .map(|d| {
                dims.iter()
                    .position(|n| n.as_ref() == d.name)
                    .expect("projected dim")
            })
            .collect();
        let mut out: Vec<Vec<f64>> = Vec::with_capacity(generators.len());
        for g in generators {
            if g.len() != dims.len() {
                return Err(Error::ArityMismatch {
                    expected: dims.len(),
                    found: g.len(),
                });
            }
            let raw: Vec<RawValue> = order.iter().map(|&i| RawValue::Number(g[i])).collect();
            let v = sub.make_vector(&raw)?.to_f64s()?;
            if !out.contains(&v) {
                out.push(v);
            }
        }
        Ok(ConvexRegion {
            projection,
            generators: out,
        })
    }

    /// Parses `{"dims": [names], "generators": [[coords], ...]}`.
    pub fn from_json(schema: &Arc<DomainSchema>, text: &str) -> Result<Self> {
        let lit: RegionLiteral = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        Self::from_generators(schema, &lit.dims, &lit.generators)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&RegionLiteral {
            dims: self.dims().map(str::to_string).collect(),
            generators: self.generators.clone(),
        })
        .expect("region serializes")
    }

    /// The schema the region's dimensions are drawn from.
    pub fn parent_schema(&self) -> &Arc<DomainSchema> {
        self.projection.parent()
    }

    /// The induced sub-schema over the region's dimensions.
    pub fn sub_schema(&self) -> &Arc<DomainSchema> {
        self.projection.schema()
    }

    /// Dimension names in schema order.
    pub fn dims(&self) -> impl Iterator<Item = &str> + '_ {
        self.sub_schema().dims().iter().map(|d| d.name.as_str())
    }

    /// Generator coordinates in schema order.
    pub fn generators(&self) -> &[Vec<f64>] {
        &self.generators
    }

    pub fn centroid(&self) -> Vec<f64> {
        let n = self.generators.len() as f64;
        let mut c = vec![0.0; self.sub_schema().len()];
        for g in &self.generators {
            for (ci, x) in c.iter_mut().zip(g) {
                *ci += x;
            }
        }
        c.iter_mut().for_each(|x| *x /= n);
        c
    }

    fn project(&self, v: &OntVector) -> Result<Vec<f64>> {
        if v.schema().same_as(self.sub_schema()) {
            v.to_f64s()
        } else {
            self.projection.apply(v)?.to_f64s()
        }
    }

    /// Whether the projection of `v` lies in the hull. `v` may belong to the
    /// parent schema or to the region's sub-schema.
    pub fn contains_point(&self, v: &OntVector) -> Result<bool> {
        let x = self.project(v)?;
        Ok(self.contains_coords(&x))
    }

    /// Membership for raw coordinates in schema order.
    pub fn contains_coords(&self, x: &[f64]) -> bool {
        within(
            &[Group {
                points: &self.generators,
                negate: false,
            }],
            x,
        )
    }

    fn check_dims(&self, other: &ConvexRegion) -> Result<()> {
        if self.sub_schema().same_as(other.sub_schema()) {
            Ok(())
        } else {
            Err(Error::DimensionMismatch)
        }
    }

    /// Every generator of `self` lies in `whole`.
    pub fn part_of(&self, whole: &ConvexRegion) -> Result<bool> {
        self.check_dims(whole)?;
        Ok(self.generators.iter().all(|g| whole.contains_coords(g)))
    }

    /// Whether the hulls share a point, i.e. `0` lies in `self - other`.
    pub fn overlaps(&self, other: &ConvexRegion) -> Result<bool> {
        self.check_dims(other)?;
        let zero = vec![0.0; self.sub_schema().len()];
        Ok(within(
            &[
                Group {
                    points: &self.generators,
                    negate: false,
                },
                Group {
                    points: &other.generators,
                    negate: true,
                },
            ],
            &zero,
        ))
    }
}

/// Floating-point answers further than this factor from the tolerance are
/// trusted; closer ones are re-solved exactly when the dimension allows.
const CONFIDENCE_MARGIN: f64 = 10.0;

fn within(groups: &[Group<'_>], target: &[f64]) -> bool {
    let (inside, objective) =
        lp::hull_distance_within::<f64>(groups, target, HULL_TOLERANCE / CONFIDENCE_MARGIN);
    if inside || objective > HULL_TOLERANCE * CONFIDENCE_MARGIN || target.len() > EXACT_MAX_DIMS {
        return inside || objective <= HULL_TOLERANCE;
    }
    lp::hull_distance_within::<BigRational>(groups, target, HULL_TOLERANCE).0
}

pub fn region_from_points<S: AsRef<str>>(points: &[OntVector], dims: &[S]) -> Result<ConvexRegion> {
    ConvexRegion::from_points(points, dims)
}

pub fn contains_point(region: &ConvexRegion, v: &OntVector) -> Result<bool> {
    region.contains_point(v)
}

pub fn part_of(part: &ConvexRegion, whole: &ConvexRegion) -> Result<bool> {
    part.part_of(whole)
}

pub fn overlap(a: &ConvexRegion, b: &ConvexRegion) -> Result<bool> {
    a.overlaps(b)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Centrality {
    /// Minkowski distance between generator centroids.
    pub distance: f64,
    /// Whether `part` actually lies in `whole`. Centrality is still reported
    /// when it does not.
    pub part_of: bool,
}

pub fn centrality(
    part: &ConvexRegion,
    whole: &ConvexRegion,
    order: MinkowskiOrder,
) -> Result<Centrality> {
    let is_part = part.part_of(whole)?;
    Ok(Centrality {
        distance: minkowski_slices(&part.centroid(), &whole.centroid(), order, None),
        part_of: is_part,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Convexity {
    pub convex: bool,
    /// An existing non-subset member inside the subset's hull.
    pub witness: Option<OntVector>,
}

/// Dataset-relative convexity: no member of `set` outside `subset` has a
/// projection inside the hull of the subset's projections.
pub fn is_convex_in<S: AsRef<str>>(
    set: &ExistenceSet,
    subset: &[OntVector],
    dims: &[S],
) -> Result<Convexity> {
    let mut chosen = vec![false; set.len()];
    for v in subset {
        let i = set
            .position(v)
            .ok_or_else(|| Error::NotAMember(v.to_string()))?;
        chosen[i] = true;
    }
    let region = ConvexRegion::from_points(subset, dims)?;
    for (m, _) in set.vectors().zip(&chosen).filter(|(_, c)| !**c) {
        if region.contains_point(m)? {
            return Ok(Convexity {
                convex: false,
                witness: Some(m.clone()),
            });
        }
    }
    Ok(Convexity {
        convex: true,
        witness: None,
    })
}

/// Two regions are equal when each is part of the other.
pub fn same_extent(a: &ConvexRegion, b: &ConvexRegion) -> Result<bool> {
    Ok(a.part_of(b)? && b.part_of(a)?)
}
