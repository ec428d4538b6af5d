//! Toric relative extremal functions, their geodesics, capacities and volumes.
//!
//! A complete logarithmically convex Reinhardt compact `K` in the unit polydisk
//! is described by its logarithmic image `L = Log K`, a [`DualGenerators`].
//! Everything on the negative-orthant side is a *convex image*: a function of
//! `s = Log z`.
//!
//! * relative extremal function: `ǔ_K(s) = max{h_{L°}(s), -1}`;
//! * its conjugate on the positive orthant: `max{h_L(a) + 1, 0}`;
//! * geodesic between `ǔ_{K0}` and `ǔ_{K1}`: the conjugate of
//!   `(1-t) max{h_{L0} + 1, 0} + t max{h_{L1} + 1, 0}`;
//! * capacity: `n! · Covol(L°)`.

use super::grid::{GridBox, GridFn};
use super::legendre::legendre_grid;
use crate::body::{copolar_of_dual, dual_combination, hull_complete_negative, CopolarBody, DualGenerators, SupportFunction};
use crate::covolume::covolume;
use crate::error::{Error, Result};
use crate::scalar::{factorial, Scalar};

/// Reinhardt compact `K = closure(Exp L)` given by its logarithmic image.
#[derive(Debug, Clone, PartialEq)]
pub struct ReinhardtSpec {
    log_image: DualGenerators<f64>,
}

impl ReinhardtSpec {
    pub fn new(log_image: DualGenerators<f64>) -> Self {
        Self { log_image }
    }

    /// Polydisk with radii `exp(log_radii[k])`.
    pub fn polydisk(log_radii: Vec<f64>) -> Result<Self> {
        Ok(Self::new(DualGenerators::orthant(log_radii)?))
    }

    pub fn dim(&self) -> usize {
        self.log_image.dim()
    }

    pub fn log_image(&self) -> &DualGenerators<f64> {
        &self.log_image
    }

    /// `L°`, the body whose covolume gives the capacity.
    pub fn polar(&self) -> Result<CopolarBody<f64>> {
        copolar_of_dual(&self.log_image)
    }

    pub fn capacity(&self) -> Result<f64> {
        capacity(&self.log_image)
    }

    /// Largest absolute generator coordinate.
    fn magnitude(&self) -> f64 {
        self.log_image
            .generators()
            .iter()
            .flatten()
            .fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Monge-Ampère capacity `n! · Covol(L°)` of `K = closure(Exp L)`.
pub fn capacity<T: Scalar>(log_image: &DualGenerators<T>) -> Result<T> {
    let polar = copolar_of_dual(log_image)?;
    Ok(factorial::<T>(log_image.dim()) * covolume(&polar)?)
}

/// `K_t` with `Log K_t = (1-t) Log K0 + t Log K1`.
pub fn multiplicative_combination(k0: &ReinhardtSpec, k1: &ReinhardtSpec, t: f64) -> Result<ReinhardtSpec> {
    Ok(ReinhardtSpec::new(dual_combination(&k0.log_image, &k1.log_image, &t)?))
}

/// Grid tolerance `εg = C_L · h`: `h` is the largest axis spacing over `grids`
/// and `C_L = 1 + max |generator coordinate|` over `specs` (copolar normals are
/// the negated generators, so they share the bound).
pub fn grid_tolerance(specs: &[&ReinhardtSpec], grids: &[&GridBox]) -> f64 {
    let lipschitz = 1.0 + specs.iter().map(|k| k.magnitude()).fold(0.0, f64::max);
    let h = grids.iter().map(|g| g.max_spacing()).fold(0.0, f64::max);
    lipschitz * h
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

fn require_negative(grid: &GridBox) -> Result<()> {
    if !grid.in_negative_orthant() {
        return Err(Error::InvalidGrid("box must lie in the closed negative orthant".into()));
    }
    Ok(())
}

fn require_positive(grid: &GridBox) -> Result<()> {
    if !grid.in_positive_orthant() {
        return Err(Error::InvalidGrid("box must lie in the closed positive orthant".into()));
    }
    Ok(())
}

/// `ǔ_K(s) = max{h_{L°}(s), -1}` sampled on a negative-orthant box.
pub fn extremal_convex_image(k: &ReinhardtSpec, grid: &GridBox) -> Result<GridFn> {
    check_dim(k.dim(), grid.dim())?;
    require_negative(grid)?;
    let h = k.polar()?.support_function()?;
    Ok(GridFn::from_fn(grid.clone(), |s| h.eval_f64(s).max(-1.0))?.tagged_convex())
}

/// Conjugate side `max{h_L(a) + 1, 0}` of the extremal image.
fn clamped_support(h: &SupportFunction<f64>, a: &[f64]) -> f64 {
    (h.eval_f64(a) + 1.0).max(0.0)
}

/// Geodesic between the relative extremal functions of two compacts, sampled
/// on a fixed negative-orthant box.
///
/// The endpoint conjugates `max{h_{Lj} + 1, 0}` are evaluated exactly on a
/// positive-orthant grid (the Legendre grid) and interpolated in `t`; a single
/// grid conjugate maps the interpolation back.
#[derive(Debug, Clone)]
pub struct GeodesicSolver {
    k0: ReinhardtSpec,
    k1: ReinhardtSpec,
    grid: GridBox,
    legendre: GridBox,
    conj0: Vec<f64>,
    conj1: Vec<f64>,
}

impl GeodesicSolver {
    /// Uses the default Legendre grid, see [`GeodesicSolver::default_legendre_grid`].
    pub fn new(k0: &ReinhardtSpec, k1: &ReinhardtSpec, grid: &GridBox) -> Result<Self> {
        let legendre = Self::default_legendre_grid(k0, k1, grid)?;
        Self::with_legendre_grid(k0, k1, grid, legendre)
    }

    /// `[0, A]^n` with `A = 2 · max |1 / p_ik|` over all generators, and the
    /// same node counts as `grid`.
    pub fn default_legendre_grid(k0: &ReinhardtSpec, k1: &ReinhardtSpec, grid: &GridBox) -> Result<GridBox> {
        let extent = 2.0
            * k0.log_image
                .generators()
                .iter()
                .chain(k1.log_image.generators())
                .flatten()
                .map(|x| 1.0 / x.abs())
                .fold(0.0, f64::max);
        GridBox::new(vec![0.0; grid.dim()], vec![extent; grid.dim()], grid.counts().to_vec())
    }

    pub fn with_legendre_grid(
        k0: &ReinhardtSpec,
        k1: &ReinhardtSpec,
        grid: &GridBox,
        legendre: GridBox,
    ) -> Result<Self> {
        check_dim(k0.dim(), k1.dim())?;
        check_dim(k0.dim(), grid.dim())?;
        check_dim(k0.dim(), legendre.dim())?;
        require_negative(grid)?;
        require_positive(&legendre)?;
        let h0 = k0.log_image.support_function();
        let h1 = k1.log_image.support_function();
        let conj0 = legendre.nodes().map(|a| clamped_support(&h0, &a)).collect();
        let conj1 = legendre.nodes().map(|a| clamped_support(&h1, &a)).collect();
        Ok(Self {
            k0: k0.clone(),
            k1: k1.clone(),
            grid: grid.clone(),
            legendre,
            conj0,
            conj1,
        })
    }

    pub fn grid(&self) -> &GridBox {
        &self.grid
    }

    pub fn legendre_grid(&self) -> &GridBox {
        &self.legendre
    }

    /// `εg` for this configuration.
    pub fn tolerance(&self) -> f64 {
        grid_tolerance(&[&self.k0, &self.k1], &[&self.grid, &self.legendre])
    }

    /// Convex image `ǔ_t` for `t` in the closed interval; the endpoints give
    /// the discretized extremal images of `K0` and `K1`.
    pub fn at(&self, t: f64) -> Result<GridFn> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::TOutOfRange(t));
        }
        let mixed: Vec<f64> = self
            .conj0
            .iter()
            .zip(&self.conj1)
            .map(|(a, b)| (1.0 - t) * a + t * b)
            .collect();
        let source = GridFn::new(self.legendre.clone(), mixed)?;
        let image = legendre_grid(&source, &self.grid)?;
        // Exact values lie in [-1, 0]; clamp away rounding in the last place.
        let values = image.values().iter().map(|v| v.clamp(-1.0, 0.0)).collect();
        Ok(GridFn::new(self.grid.clone(), values)?.tagged_convex())
    }
}

/// `ǔ_t` of the geodesic between `ω_{K0}` and `ω_{K1}`, for `0 < t < 1`.
pub fn geodesic_convex_image(k0: &ReinhardtSpec, k1: &ReinhardtSpec, t: f64, grid: &GridBox) -> Result<GridFn> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::TOutOfRange(t));
    }
    GeodesicSolver::new(k0, k1, grid)?.at(t)
}

/// Midpoint-quadrature Reinhardt volume with certified bracketing.
#[derive(Debug, Clone, PartialEq)]
pub struct ReinhardtVolume {
    /// Midpoint rule over cells whose centre lies in `L`.
    pub value: f64,
    /// Cells entirely inside `L`, integrand at its cell minimum.
    pub lower: f64,
    /// Cells meeting `L`, integrand at its cell maximum, plus `tail_bound`.
    pub upper: f64,
    /// `(2π)^n · n · S^(n-1) · e^(-2S)`, bounding the mass outside `[-S, 0]^n`.
    pub tail_bound: f64,
}

/// `Vol(K) = (2π)^n ∫_L e^(2 Σ s_k) ds`, truncated to `[-S, 0]^n` with `m` cells per axis.
pub fn reinhardt_volume(k: &ReinhardtSpec, extent: f64, cells: usize) -> Result<ReinhardtVolume> {
    if !extent.is_finite() || extent <= 0.0 || cells == 0 {
        return Err(Error::InvalidGrid("need a positive extent and at least one cell".into()));
    }
    if let Some(g) = k
        .log_image
        .generators()
        .iter()
        .find(|g| g.iter().any(|&x| x < -extent))
    {
        return Err(Error::TruncationTooSmall {
            generator: g.clone(),
            extent,
        });
    }
    let n = k.dim();
    let polar = k.polar()?.support_function()?;
    let inside = |s: &[f64]| polar.eval_f64(s) <= -1.0;
    let h = extent / cells as f64;
    let cell_volume = h.powi(n as i32);
    let total = cells.pow(n as u32);

    let (mut value, mut lower, mut upper) = (0.0, 0.0, 0.0);
    let mut lo = vec![0.0; n];
    let mut hi = vec![0.0; n];
    let mut mid = vec![0.0; n];
    for flat in 0..total {
        let mut rest = flat;
        for k in (0..n).rev() {
            let i = rest % cells;
            rest /= cells;
            lo[k] = -extent + i as f64 * h;
            hi[k] = lo[k] + h;
            mid[k] = lo[k] + 0.5 * h;
        }
        // L is downward closed: the cell meets L iff its lowest corner is in L,
        // and lies inside L iff its highest corner is.
        if !inside(&lo) {
            continue;
        }
        upper += (2.0 * hi.iter().sum::<f64>()).exp() * cell_volume;
        if inside(&mid) {
            value += (2.0 * mid.iter().sum::<f64>()).exp() * cell_volume;
        }
        if inside(&hi) {
            lower += (2.0 * lo.iter().sum::<f64>()).exp() * cell_volume;
        }
    }
    let scale = (2.0 * std::f64::consts::PI).powi(n as i32);
    let tail_bound = scale * n as f64 * extent.powi(n as i32 - 1) * (-2.0 * extent).exp();
    Ok(ReinhardtVolume {
        value: scale * value,
        lower: scale * lower,
        upper: scale * upper + tail_bound,
        tail_bound,
    })
}

/// Distance of a geodesic point from the nearest relative extremal image.
#[derive(Debug, Clone)]
pub struct ExtremalGap {
    pub gap: f64,
    pub tolerance: f64,
    /// Logarithmic image rebuilt from the `-1` sublevel set of `ǔ_t`.
    pub reconstructed: DualGenerators<f64>,
}

/// Measures how far `ǔ_t` is from being a relative extremal image.
///
/// The sublevel set `{ǔ_t <= -1 + εg}` is downward closed, so its maximal
/// nodes are those without a sublevel successor along any axis. These nodes,
/// moved outward by half a cell, generate the rebuilt set `L_t`; the gap is
/// `max |ǔ_t - ǔ_{L_t}|` over the box.
pub fn extremal_gap(k0: &ReinhardtSpec, k1: &ReinhardtSpec, t: f64, grid: &GridBox) -> Result<ExtremalGap> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::TOutOfRange(t));
    }
    let solver = GeodesicSolver::new(k0, k1, grid)?;
    let image = solver.at(t)?;
    let tolerance = solver.tolerance();
    let level = -1.0 + tolerance;
    let n = grid.dim();
    let in_sublevel = |idx: &[usize]| image.value_at(idx) <= level;

    let mut frontier = Vec::new();
    for flat in 0..grid.len() {
        let idx = grid.unravel(flat);
        if !in_sublevel(&idx) {
            continue;
        }
        let maximal = (0..n).all(|k| {
            if idx[k] + 1 == grid.counts()[k] {
                return true;
            }
            let mut next = idx.clone();
            next[k] += 1;
            !in_sublevel(&next)
        });
        if maximal {
            let node = grid.node(flat);
            frontier.push(
                node.iter()
                    .enumerate()
                    .map(|(k, x)| x + 0.5 * grid.spacing(k))
                    .collect::<Vec<f64>>(),
            );
        }
    }
    if frontier.is_empty() {
        return Err(Error::EmptySublevel);
    }
    if frontier.iter().flatten().any(|&x| x >= 0.0) {
        return Err(Error::InvalidGrid("the -1 sublevel reaches the orthant boundary".into()));
    }
    let reconstructed = hull_complete_negative(n, frontier)?;
    let extremal = extremal_convex_image(&ReinhardtSpec::new(reconstructed.clone()), grid)?;
    Ok(ExtremalGap {
        gap: image.sup_distance(&extremal),
        tolerance,
        reconstructed,
    })
}

/// `max |L[max{h_{L°}, -1}] - max{h_L + 1, 0}|` over `target` nodes where the
/// exact side is at most `ceiling`. The left side is a grid conjugate of the
/// extremal image sampled on `source`; the right side is exact.
pub fn legendre_duality_residual(
    log_image: &DualGenerators<f64>,
    source: &GridBox,
    target: &GridBox,
    ceiling: f64,
) -> Result<f64> {
    require_positive(target)?;
    let k = ReinhardtSpec::new(log_image.clone());
    let image = extremal_convex_image(&k, source)?;
    let conj = legendre_grid(&image, target)?;
    let h = log_image.support_function();
    Ok(target
        .nodes()
        .zip(conj.values())
        .map(|(a, v)| (clamped_support(&h, &a), v))
        .filter(|(exact, _)| *exact <= ceiling)
        .map(|(exact, v)| (exact - v).abs())
        .fold(0.0, f64::max))
}
