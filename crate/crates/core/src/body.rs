//! Cobounded complete bodies in the positive orthant and their copolars.
//!
//! A [`CopolarBody`] is stored by its irredundant facet normals, each facet
//! normalized to right-hand side 1:
//!
//! ```text
//! P = { a >= 0 : <a, b_i> >= 1 for every normal b_i }
//! ```
//!
//! Its copolar `P° = { x : <x, y> <= -1 for all y in P }` is the complete set
//! `conv{-b_i} + R^n_-`, stored as a [`DualGenerators`]. The two
//! representations are exchanged by a sign flip, so copolar addition and copolar
//! combinations reduce to pairwise arithmetic on normals.

use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome};
use crate::scalar::{dot, lex_cmp, points_approx_eq, Extended, Scalar};
use crate::vertex::{self, Halfspace, VertexSet};

fn to_f64_vec<T: Scalar>(p: &[T]) -> Vec<f64> {
    p.iter().map(Scalar::as_f64).collect()
}

fn check_dims<T>(dim: usize, points: &[Vec<T>]) -> Result<()> {
    if dim == 0 {
        return Err(Error::DimensionMismatch { expected: 1, found: 0 });
    }
    match points.iter().find(|p| p.len() != dim) {
        Some(p) => Err(Error::DimensionMismatch {
            expected: dim,
            found: p.len(),
        }),
        None => Ok(()),
    }
}

/// `true` when `<a, candidate> >= 1` follows from `<a, other> >= 1` on the
/// orthant for every `other`, i.e. when `min <a, candidate>` over the region
/// cut out by `others` is at least `1 - eps`.
///
/// The minimization is solved through its dual, `max sum(y)` subject to
/// `sum_j y_j other_j <= candidate`, `y >= 0`, whose slack basis is feasible
/// because `candidate >= 0`.
fn is_implied<T: Scalar>(candidate: &[T], others: &[&Vec<T>]) -> bool {
    if others.is_empty() {
        return false;
    }
    // Componentwise domination settles most cases without an LP.
    if others
        .iter()
        .any(|o| o.iter().zip(candidate).all(|(x, y)| x <= y))
    {
        return true;
    }
    let dim = candidate.len();
    let a: Vec<Vec<T>> = (0..dim)
        .map(|k| others.iter().map(|o| o[k].clone()).collect())
        .collect();
    let c = vec![T::one(); others.len()];
    match lp::maximize(&c, &a, candidate) {
        LpOutcome::Optimal(v) => v >= T::one() - T::tolerance(),
        // Unbounded dual: the others alone are infeasible, impossible for nonzero
        // nonnegative normals. Keep the constraint whenever the LP is inconclusive.
        LpOutcome::Unbounded | LpOutcome::IterationLimit => false,
    }
}

/// Sorts, merges near-duplicates and drops implied constraints from a list of
/// nonnegative, nonzero normals of `{a >= 0 : <a, b> >= 1}`.
pub(crate) fn prune_normals<T: Scalar>(mut normals: Vec<Vec<T>>) -> Vec<Vec<T>> {
    normals.sort_by(|a, b| lex_cmp(a, b));
    normals.dedup_by(|a, b| points_approx_eq(a, b));
    let mut keep = vec![true; normals.len()];
    for i in 0..normals.len() {
        let others: Vec<&Vec<T>> = normals
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i && keep[j])
            .map(|(_, n)| n)
            .collect();
        if is_implied(&normals[i], &others) {
            keep[i] = false;
        }
    }
    normals
        .into_iter()
        .zip(keep)
        .filter_map(|(n, k)| k.then_some(n))
        .collect()
}

/// Cobounded complete convex subset of the closed positive orthant.
#[derive(Debug, Clone, PartialEq)]
pub struct CopolarBody<T> {
    dim: usize,
    normals: Vec<Vec<T>>,
    full: bool,
}

impl<T: Scalar> CopolarBody<T> {
    /// Canonical body from raw facet normals: duplicates merged, redundant
    /// normals removed, lexicographic order.
    pub fn new(dim: usize, raw_normals: Vec<Vec<T>>) -> Result<Self> {
        if raw_normals.is_empty() {
            return Err(Error::EmptyInput);
        }
        check_dims(dim, &raw_normals)?;
        if let Some((index, normal)) = raw_normals
            .iter()
            .enumerate()
            .find(|(_, b)| b.iter().any(|x| *x <= T::zero()))
        {
            return Err(Error::NonPositiveNormal {
                index,
                normal: to_f64_vec(normal),
            });
        }
        Ok(Self {
            dim,
            normals: prune_normals(raw_normals),
            full: false,
        })
    }

    /// The whole closed orthant: no constraints, covolume zero.
    pub fn full_orthant(dim: usize) -> Self {
        Self {
            dim,
            normals: Vec::new(),
            full: true,
        }
    }

    /// `{a >= 0 : <a, b> >= 1}`.
    pub fn cosimplex(normal: Vec<T>) -> Result<Self> {
        Self::new(normal.len(), vec![normal])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn normals(&self) -> &[Vec<T>] {
        &self.normals
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    /// Tolerant equality of canonical forms.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.full == other.full
            && self.normals.len() == other.normals.len()
            && self
                .normals
                .iter()
                .zip(&other.normals)
                .all(|(a, b)| points_approx_eq(a, b))
    }

    /// Facet constraints followed by the `n` nonnegativity constraints.
    pub fn halfspaces(&self) -> Vec<Halfspace<T>> {
        self.normals
            .iter()
            .map(|b| Halfspace::new(b.clone(), T::one()))
            .chain((0..self.dim).map(|k| Halfspace::nonnegative(self.dim, k)))
            .collect()
    }

    /// Whether `a` satisfies every constraint (within tolerance).
    pub fn contains(&self, a: &[T]) -> bool {
        self.halfspaces().iter().all(|h| h.contains(a))
    }

    pub fn vertices(&self) -> Result<VertexSet<T>> {
        self.vertices_with(&[])
    }

    /// Vertices of the body intersected with `extra` halfspaces. Constraint
    /// indices in the incidence lists are: normals, then `a_k >= 0`, then `extra`.
    pub fn vertices_with(&self, extra: &[Halfspace<T>]) -> Result<VertexSet<T>> {
        let mut cons = self.halfspaces();
        cons.extend_from_slice(extra);
        vertex::enumerate_vertices(self.dim, &cons, vertex::DEFAULT_SUBSET_BUDGET)
    }

    /// `λP`, whose normals are `b / λ`.
    pub fn scaled(&self, lambda: &T) -> Self {
        Self {
            dim: self.dim,
            normals: self
                .normals
                .iter()
                .map(|b| b.iter().map(|x| x.clone() / lambda.clone()).collect())
                .collect(),
            full: self.full,
        }
    }

    /// Axis intercepts `1 / b_k` of a cosimplex; `None` for other bodies.
    pub fn intercepts(&self) -> Option<Vec<T>> {
        match self.normals.as_slice() {
            [b] => Some(b.iter().map(|x| T::one() / x.clone()).collect()),
            _ => None,
        }
    }

    /// Support function restricted to the closed negative orthant.
    pub fn support_function(&self) -> Result<SupportFunction<T>> {
        Ok(SupportFunction {
            points: self.vertices()?.vertices,
            domain: Orthant::Negative,
        })
    }

    /// `h_P(x) = sup <x, a>` over the body; `+inf` unless `x <= 0`.
    pub fn support_value(&self, x: &[T]) -> Result<Extended<T>> {
        Ok(self.support_function()?.eval(x))
    }

    pub fn copolar(&self) -> Result<DualGenerators<T>> {
        copolar_of_body(self)
    }
}

/// Complete convex subset `conv{p_i} + R^n_-` of the negative orthant, with
/// strictly negative generators.
#[derive(Debug, Clone, PartialEq)]
pub struct DualGenerators<T> {
    dim: usize,
    generators: Vec<Vec<T>>,
}

impl<T: Scalar> DualGenerators<T> {
    /// Canonical form: irredundant generators in lexicographic order.
    pub fn new(dim: usize, raw: Vec<Vec<T>>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::EmptyInput);
        }
        check_dims(dim, &raw)?;
        if let Some((index, g)) = raw
            .iter()
            .enumerate()
            .find(|(_, p)| p.iter().any(|x| *x >= T::zero()))
        {
            return Err(Error::NonNegativeGenerator {
                index,
                generator: to_f64_vec(g),
            });
        }
        Ok(Self::from_pruned_normals(dim, prune_normals(negate_all(&raw))))
    }

    /// Single apex: the translated orthant `p + R^n_-`.
    pub fn orthant(apex: Vec<T>) -> Result<Self> {
        Self::new(apex.len(), vec![apex])
    }

    fn from_pruned_normals(dim: usize, normals: Vec<Vec<T>>) -> Self {
        let mut generators = negate_all(&normals);
        generators.sort_by(|a, b| lex_cmp(a, b));
        Self { dim, generators }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<T>] {
        &self.generators
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.generators.len() == other.generators.len()
            && self
                .generators
                .iter()
                .zip(&other.generators)
                .all(|(a, b)| points_approx_eq(a, b))
    }

    /// Whether `s` lies in `conv{p_i} + R^n_-`, i.e. `<v, s> <= -1` for every
    /// vertex `v` of the copolar.
    pub fn contains(&self, s: &[T]) -> Result<bool> {
        if s.iter().any(|x| *x > T::zero()) {
            return Ok(false);
        }
        let polar = copolar_of_dual(self)?.support_function()?;
        Ok(match polar.eval(s) {
            Extended::Finite(h) => crate::scalar::approx_le(&h, &-T::one()),
            Extended::PosInf => false,
        })
    }

    /// Support function restricted to the closed positive orthant.
    pub fn support_function(&self) -> SupportFunction<T> {
        SupportFunction {
            points: self.generators.clone(),
            domain: Orthant::Positive,
        }
    }

    /// `h_L(x) = max_i <x, p_i>`; `+inf` unless `x >= 0`.
    pub fn support_value(&self, x: &[T]) -> Extended<T> {
        self.support_function().eval(x)
    }

    pub fn copolar(&self) -> Result<CopolarBody<T>> {
        copolar_of_dual(self)
    }
}

fn negate_all<T: Scalar>(points: &[Vec<T>]) -> Vec<Vec<T>> {
    points
        .iter()
        .map(|p| p.iter().map(|x| -x.clone()).collect())
        .collect()
}

/// Closed orthant on which a support function is finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orthant {
    Positive,
    Negative,
}

/// Support function of a complete set, evaluated over its extreme points.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportFunction<T> {
    points: Vec<Vec<T>>,
    domain: Orthant,
}

impl<T: Scalar> SupportFunction<T> {
    pub fn extreme_points(&self) -> &[Vec<T>] {
        &self.points
    }

    pub fn eval(&self, x: &[T]) -> Extended<T> {
        let outside = match self.domain {
            Orthant::Negative => x.iter().any(|v| *v > T::zero()),
            Orthant::Positive => x.iter().any(|v| *v < T::zero()),
        };
        if outside {
            return Extended::PosInf;
        }
        let best = self
            .points
            .iter()
            .map(|p| dot(p, x))
            .reduce(|a, b| if b > a { b } else { a })
            .expect("support function over a non-empty set");
        Extended::Finite(best)
    }
}

impl SupportFunction<f64> {
    /// Fast path for grid evaluation; `+inf` outside the domain.
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.eval(x).to_f64()
    }
}

/// `P° = conv{-b_i} + R^n_-`. The full orthant has an empty copolar.
pub fn copolar_of_body<T: Scalar>(body: &CopolarBody<T>) -> Result<DualGenerators<T>> {
    if body.is_full() {
        return Err(Error::FullOrthant);
    }
    Ok(DualGenerators::from_pruned_normals(body.dim, body.normals.clone()))
}

/// `L° = { a >= 0 : <a, -p_i> >= 1 }`.
pub fn copolar_of_dual<T: Scalar>(dual: &DualGenerators<T>) -> Result<CopolarBody<T>> {
    CopolarBody::new(dual.dim, negate_all(&dual.generators))
}

fn check_same_dim<T: Scalar>(p: &CopolarBody<T>, q: &CopolarBody<T>) -> Result<()> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch {
            expected: p.dim,
            found: q.dim,
        });
    }
    Ok(())
}

fn check_t<T: Scalar>(t: &T) -> Result<()> {
    if *t < T::zero() || *t > T::one() {
        return Err(Error::TOutOfRange(t.as_f64()));
    }
    Ok(())
}

/// Copolar addition `P ⊕ Q = (P° + Q°)°`: the normals are all pairwise sums.
pub fn copolar_sum<T: Scalar>(p: &CopolarBody<T>, q: &CopolarBody<T>) -> Result<CopolarBody<T>> {
    check_same_dim(p, q)?;
    if p.full || q.full {
        return Ok(CopolarBody::full_orthant(p.dim));
    }
    let sums = p
        .normals
        .iter()
        .flat_map(|b| {
            q.normals
                .iter()
                .map(move |c| b.iter().zip(c).map(|(x, y)| x.clone() + y.clone()).collect())
        })
        .collect();
    CopolarBody::new(p.dim, sums)
}

/// `((1-t) P0° + t P1°)°`, normals `(1-t) b_i + t c_j` over all pairs.
/// Returns the exact operand at `t = 0` and `t = 1`.
pub fn copolar_combination<T: Scalar>(
    p0: &CopolarBody<T>,
    p1: &CopolarBody<T>,
    t: &T,
) -> Result<CopolarBody<T>> {
    check_same_dim(p0, p1)?;
    check_t(t)?;
    if t.is_zero() {
        return Ok(p0.clone());
    }
    if t.is_one() {
        return Ok(p1.clone());
    }
    if p0.full || p1.full {
        return Ok(CopolarBody::full_orthant(p0.dim));
    }
    let s = T::one() - t.clone();
    let combos = p0
        .normals
        .iter()
        .flat_map(|b| {
            let s = s.clone();
            p1.normals.iter().map(move |c| {
                b.iter()
                    .zip(c)
                    .map(|(x, y)| s.clone() * x.clone() + t.clone() * y.clone())
                    .collect()
            })
        })
        .collect();
    CopolarBody::new(p0.dim, combos)
}

/// Minkowski combination `(1-t) L0 + t L1` of two dual sets (the logarithmic
/// image of the multiplicative combination of Reinhardt compacts).
pub fn dual_combination<T: Scalar>(
    l0: &DualGenerators<T>,
    l1: &DualGenerators<T>,
    t: &T,
) -> Result<DualGenerators<T>> {
    if l0.dim != l1.dim {
        return Err(Error::DimensionMismatch {
            expected: l0.dim,
            found: l1.dim,
        });
    }
    check_t(t)?;
    if t.is_zero() {
        return Ok(l0.clone());
    }
    if t.is_one() {
        return Ok(l1.clone());
    }
    let s = T::one() - t.clone();
    let combos = l0
        .generators
        .iter()
        .flat_map(|p| {
            let s = s.clone();
            l1.generators.iter().map(move |q| {
                p.iter()
                    .zip(q)
                    .map(|(x, y)| s.clone() * x.clone() + t.clone() * y.clone())
                    .collect()
            })
        })
        .collect();
    DualGenerators::new(l0.dim, combos)
}

/// Ordinary Minkowski combination `(1-t) P0 + t P1`. Both recession cones are
/// the orthant, so the result is the complete hull of pairwise vertex combinations.
pub fn minkowski_combination<T: Scalar>(
    p0: &CopolarBody<T>,
    p1: &CopolarBody<T>,
    t: &T,
) -> Result<CopolarBody<T>> {
    check_same_dim(p0, p1)?;
    check_t(t)?;
    if t.is_zero() {
        return Ok(p0.clone());
    }
    if t.is_one() {
        return Ok(p1.clone());
    }
    if p0.full && p1.full {
        return Ok(CopolarBody::full_orthant(p0.dim));
    }
    let v0 = p0.vertices()?.vertices;
    let v1 = p1.vertices()?.vertices;
    let s = T::one() - t.clone();
    let candidates: Vec<Vec<T>> = v0
        .iter()
        .flat_map(|v| {
            let s = s.clone();
            v1.iter().map(move |w| {
                v.iter()
                    .zip(w)
                    .map(|(x, y)| s.clone() * x.clone() + t.clone() * y.clone())
                    .collect()
            })
        })
        .collect();
    hull_complete_positive(p0.dim, candidates)
}

/// Recession cone used by [`hull_complete`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cone {
    Positive,
    Negative,
}

/// Result of [`hull_complete`], one variant per cone.
#[derive(Debug, Clone, PartialEq)]
pub enum Hull<T> {
    Body(CopolarBody<T>),
    Dual(DualGenerators<T>),
}

/// Irredundant representation of `conv(points) + cone`.
pub fn hull_complete<T: Scalar>(dim: usize, points: Vec<Vec<T>>, cone: Cone) -> Result<Hull<T>> {
    match cone {
        Cone::Positive => hull_complete_positive(dim, points).map(Hull::Body),
        Cone::Negative => hull_complete_negative(dim, points).map(Hull::Dual),
    }
}

fn check_hull_input<T: Scalar>(dim: usize, points: &[Vec<T>], cone: Cone) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    check_dims(dim, points)?;
    for (index, p) in points.iter().enumerate() {
        let wrong_side = match cone {
            Cone::Positive => p.iter().any(|x| *x < T::zero()),
            Cone::Negative => p.iter().any(|x| *x > T::zero()),
        };
        if wrong_side {
            return Err(Error::PointOutsideCone {
                index,
                point: to_f64_vec(p),
                cone: if cone == Cone::Positive { "positive" } else { "negative" },
            });
        }
        if p.iter().all(|x| x.is_zero()) {
            return Err(Error::Infeasible);
        }
    }
    Ok(())
}

/// Irredundant generators of `conv(points) + R^n_-`, zero coordinates allowed.
///
/// A generator `p` is redundant exactly when the facet `<x, -p> >= 1` of the
/// copolar is implied by the others, so pruning the mirrored points as normals
/// yields the extreme points.
fn negative_hull_points<T: Scalar>(points: &[Vec<T>]) -> Vec<Vec<T>> {
    negate_all(&prune_normals(negate_all(points)))
}

/// `conv(points) + R^n_-` for points in the closed negative orthant.
pub fn hull_complete_negative<T: Scalar>(dim: usize, points: Vec<Vec<T>>) -> Result<DualGenerators<T>> {
    check_hull_input(dim, &points, Cone::Negative)?;
    let kept = negative_hull_points(&points);
    if let Some(g) = kept.iter().find(|p| p.iter().any(|x| x.is_zero())) {
        // Such a set is not contained in any s* + R^n_-; its copolar is not cobounded.
        return Err(Error::NotCobounded {
            normal: to_f64_vec(&negate_all(std::slice::from_ref(g))[0]),
        });
    }
    Ok(DualGenerators::from_pruned_normals(dim, negate_all(&kept)))
}

/// `conv(points) + R^n_+` for points in the closed positive orthant, as a
/// facet description normalized to right-hand side 1.
///
/// The points are mirrored into the negative orthant, reduced to extreme points
/// there, and the copolar `{y >= 0 : <y, k> >= 1}` of the mirrored set is
/// vertex-enumerated: its vertices are exactly the facet normals of the hull.
pub fn hull_complete_positive<T: Scalar>(dim: usize, points: Vec<Vec<T>>) -> Result<CopolarBody<T>> {
    check_hull_input(dim, &points, Cone::Positive)?;
    let extreme = negate_all(&negative_hull_points(&negate_all(&points)));
    let dual_side: Vec<Halfspace<T>> = extreme
        .iter()
        .map(|k| Halfspace::new(k.clone(), T::one()))
        .chain((0..dim).map(|k| Halfspace::nonnegative(dim, k)))
        .collect();
    let facets = vertex::enumerate_vertices(dim, &dual_side, vertex::DEFAULT_SUBSET_BUDGET)?.vertices;
    let scale = facets
        .iter()
        .flatten()
        .map(|x| x.abs())
        .fold(T::one(), |m, x| if x > m { x } else { m });
    if let Some(w) = facets
        .iter()
        .find(|w| w.iter().any(|x| x.abs() <= T::tolerance() * scale.clone()))
    {
        return Err(Error::NotCobounded {
            normal: to_f64_vec(w),
        });
    }
    CopolarBody::new(dim, facets)
}
