//! Brute-force vertex enumeration of small H-polyhedra.

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{dot, lex_cmp, points_approx_eq, Scalar};

/// Default cap on the number of `n`-subsets examined.
pub const DEFAULT_SUBSET_BUDGET: u128 = 1_000_000;

/// The halfspace `<normal, a> >= offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct Halfspace<T> {
    pub normal: Vec<T>,
    pub offset: T,
}

impl<T: Scalar> Halfspace<T> {
    pub fn new(normal: Vec<T>, offset: T) -> Self {
        Self { normal, offset }
    }

    /// `a_k >= 0`.
    pub fn nonnegative(dim: usize, axis: usize) -> Self {
        let normal = (0..dim).map(|k| if k == axis { T::one() } else { T::zero() }).collect();
        Self::new(normal, T::zero())
    }

    /// `a_k <= bound`.
    pub fn upper_bound(dim: usize, axis: usize, bound: T) -> Self {
        let normal = (0..dim).map(|k| if k == axis { -T::one() } else { T::zero() }).collect();
        Self::new(normal, -bound)
    }

    /// Signed excess `<normal, a> - offset` together with its tolerance scale.
    fn excess(&self, a: &[T]) -> (T, T) {
        let scale = self
            .normal
            .iter()
            .zip(a)
            .fold(T::one() + self.offset.abs(), |acc, (x, y)| acc + (x.clone() * y.clone()).abs());
        (dot(&self.normal, a) - self.offset.clone(), scale * T::tolerance())
    }

    pub fn contains(&self, a: &[T]) -> bool {
        let (excess, tol) = self.excess(a);
        excess >= -tol
    }

    pub fn is_active(&self, a: &[T]) -> bool {
        let (excess, tol) = self.excess(a);
        excess.abs() <= tol
    }
}

/// Vertices of a polyhedron with, per vertex, the sorted indices of the active constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexSet<T> {
    pub dim: usize,
    pub vertices: Vec<Vec<T>>,
    pub incidence: Vec<Vec<usize>>,
}

impl<T: Scalar> VertexSet<T> {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_active(&self, vertex: usize, constraint: usize) -> bool {
        self.incidence[vertex].binary_search(&constraint).is_ok()
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul((n - i) as u128) / (i as u128 + 1))
}

/// Enumerates every point where `dim` linearly independent constraints are
/// tight and all constraints hold. Output is sorted lexicographically.
/// Rounds coordinates that are zero up to rounding noise to exact zeros, so
/// boundary vertices stay in the closed orthant.
fn snap_zeros<T: Scalar>(x: &mut [T]) {
    let scale = x.iter().map(|v| v.abs()).fold(T::one(), |m, v| if v > m { v } else { m });
    let eps = T::tolerance() * scale;
    for v in x.iter_mut() {
        if v.abs() <= eps {
            *v = T::zero();
        }
    }
}

pub fn enumerate_vertices<T: Scalar>(
    dim: usize,
    constraints: &[Halfspace<T>],
    budget: u128,
) -> Result<VertexSet<T>> {
    let m = constraints.len();
    let subsets = binomial(m, dim);
    if subsets > budget {
        return Err(Error::DimensionOverflow { subsets, cap: budget });
    }
    let mut found: Vec<Vec<T>> = Vec::new();
    if m >= dim {
        let mut idx: Vec<usize> = (0..dim).collect();
        loop {
            let rows: Vec<Vec<T>> = idx.iter().map(|&i| constraints[i].normal.clone()).collect();
            let rhs: Vec<T> = idx.iter().map(|&i| constraints[i].offset.clone()).collect();
            if let Some(mut x) = linalg::solve(&rows, &rhs) {
                snap_zeros(&mut x);
                if constraints.iter().all(|h| h.contains(&x))
                    && !found.iter().any(|v| points_approx_eq(v, &x))
                {
                    found.push(x);
                }
            }
            // next combination
            let mut i = dim;
            while i > 0 && idx[i - 1] == m - dim + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..dim {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    found.sort_by(|a, b| lex_cmp(a, b));
    let incidence = found
        .iter()
        .map(|v| (0..m).filter(|&i| constraints[i].is_active(v)).collect())
        .collect();
    Ok(VertexSet {
        dim,
        vertices: found,
        incidence,
    })
}
