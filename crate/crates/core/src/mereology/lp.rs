//! Hull-distance linear programs.
//!
//! Each problem is a set of point groups `G_1..G_k` with signs, and a target
//! `b`. Variables are convex weights per group plus a pair of slacks per
//! coordinate:
//!
//! ```text
//! minimise  sum_j (s+_j + s-_j)
//! s.t.      sum_g sign_g * sum_i w_gi * G_g[i][j] + s+_j - s-_j = b_j
//!           sum_i w_gi = 1            for every group g
//!           w, s+, s- >= 0
//! ```
//!
//! The optimum is the L1 distance between `b` and the Minkowski sum of the
//! signed hulls, so containment and intersection both reduce to "optimum is
//! within tolerance". A feasible starting basis is always available (first
//! generator of each group plus one slack per row), so no phase one is needed.
//! Pivoting uses Bland's rule and stops early once the objective is within
//! the acceptance threshold.

use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

pub(crate) trait Scalar:
    Clone
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + PartialOrd
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Strictly positive beyond the type's noise floor.
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_pos(&self) -> bool {
        *self > 1e-12
    }
    fn is_neg(&self) -> bool {
        *self < -1e-12
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        BigRational::from_integer(BigInt::from(1))
    }
    fn from_f64(x: f64) -> Self {
        <BigRational as FromPrimitive>::from_f64(x).expect("finite coordinate")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn is_pos(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
}

pub(crate) struct Group<'a> {
    pub points: &'a [Vec<f64>],
    pub negate: bool,
}

/// Returns `(within, objective)` where `within` says whether the L1 distance
/// is at most `threshold`. `objective` is the distance when pivoting ran to
/// optimality, or an upper bound at most `threshold` on early exit.
pub(crate) fn hull_distance_within<T: Scalar>(
    groups: &[Group<'_>],
    target: &[f64],
    threshold: f64,
) -> (bool, f64) {
    let d = target.len();
    let k = groups.len();
    let n_weights: usize = groups.iter().map(|g| g.points.len()).sum();
    let rows = d + k;
    let cols = n_weights + 2 * d;
    let rhs = cols;

    // Dense tableau, one extra column for the right-hand side.
    let mut t: Vec<Vec<T>> = vec![vec![T::zero(); cols + 1]; rows];
    let mut col = 0;
    let mut first_of_group = Vec::with_capacity(k);
    for (g, group) in groups.iter().enumerate() {
        first_of_group.push(col);
        for p in group.points {
            for j in 0..d {
                let x = if group.negate { -p[j] } else { p[j] };
                if x != 0.0 {
                    t[j][col] = T::from_f64(x);
                }
            }
            t[d + g][col] = T::one();
            col += 1;
        }
    }
    for j in 0..d {
        t[j][n_weights + 2 * j] = T::one();
        t[j][n_weights + 2 * j + 1] = T::zero() - T::one();
        t[j][rhs] = T::from_f64(target[j]);
    }
    for g in 0..k {
        t[d + g][rhs] = T::one();
    }

    let mut basis = vec![0usize; rows];
    for g in 0..k {
        pivot(&mut t, d + g, first_of_group[g]);
        basis[d + g] = first_of_group[g];
    }
    for j in 0..d {
        let c = if t[j][rhs].is_neg() {
            n_weights + 2 * j + 1
        } else {
            n_weights + 2 * j
        };
        pivot(&mut t, j, c);
        basis[j] = c;
    }

    let is_slack = |c: usize| c >= n_weights && c < cols;
    let threshold_t = T::from_f64(threshold);

    loop {
        // Current objective and reduced costs: cost_c - sum_r cost_basis[r] * t[r][c].
        let objective = (0..rows)
            .filter(|&r| is_slack(basis[r]))
            .fold(T::zero(), |acc, r| acc + t[r][rhs].clone());
        if objective <= threshold_t {
            return (true, objective.to_f64());
        }
        let entering = (0..cols).find(|&c| {
            if basis.contains(&c) {
                return false;
            }
            let mut reduced = if is_slack(c) { T::one() } else { T::zero() };
            for r in 0..rows {
                if is_slack(basis[r]) {
                    reduced = reduced - t[r][c].clone();
                }
            }
            reduced.is_neg()
        });
        let Some(e) = entering else {
            return (false, objective.to_f64());
        };
        let mut leave: Option<(usize, T)> = None;
        for r in 0..rows {
            if !t[r][e].is_pos() {
                continue;
            }
            let ratio = t[r][rhs].clone() / t[r][e].clone();
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // The objective is bounded below by zero, so a ray cannot decrease it.
        let (r, _) = leave.expect("bounded objective");
        pivot(&mut t, r, e);
        basis[r] = e;
    }
}

fn pivot<T: Scalar>(t: &mut [Vec<T>], row: usize, col: usize) {
    let p = t[row][col].clone();
    if p != T::one() {
        for x in t[row].iter_mut() {
            if *x != T::zero() {
                *x = x.clone() / p.clone();
            }
        }
    }
    let pivot_row = t[row].clone();
    for (r, line) in t.iter_mut().enumerate() {
        if r == row {
            continue;
        }
        let f = line[col].clone();
        if f == T::zero() {
            continue;
        }
        for (x, pv) in line.iter_mut().zip(&pivot_row) {
            if *pv != T::zero() {
                *x = x.clone() - f.clone() * pv.clone();
            }
        }
    }
}
