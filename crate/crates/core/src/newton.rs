//! Newton polyhedra of monomial exponent sets, Newton numbers, and indicator
//! functions of cobounded bodies.
//!
//! For exponents `A`, the Newton polyhedron is `Γ = conv(A) + R^n_+` and the
//! Newton number is `n! · Covol(Γ)` (for a generic map with these monomials it
//! is the multiplicity at the origin).
//!
//! The indicator of a body `P` has convex image `h_P` on the negative orthant.
//! For a cosimplex `{<a, b> >= 1}` this is `Φ_b(s) = max_k s_k / b_k`. Copolar
//! combinations of cosimplices combine the normals linearly,
//! `c(t) = (1-t) b0 + t b1`, which is the harmonic rule
//! `1/c_k = (1-t)/β0_k + t/β1_k` when written for the weights `β = 1/b`
//! (the axis intercepts).

use crate::body::{copolar_combination, hull_complete_positive, CopolarBody};
use crate::covolume::covolume;
use crate::error::{Error, Result};
use crate::scalar::{factorial, Extended, Scalar};

/// Non-empty set of distinct, nonzero, nonnegative integer multi-indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSet {
    dim: usize,
    exponents: Vec<Vec<u64>>,
}

impl ExponentSet {
    pub fn new(dim: usize, exponents: Vec<Vec<u64>>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::EmptyInput);
        }
        if let Some(k) = exponents.iter().find(|k| k.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: k.len(),
            });
        }
        if exponents.iter().any(|k| k.iter().all(|&e| e == 0)) {
            return Err(Error::InvalidExponents("the zero multi-index is not allowed".into()));
        }
        let mut sorted = exponents.clone();
        sorted.sort();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidExponents(format!("duplicate multi-index {:?}", w[0])));
        }
        Ok(Self { dim, exponents })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn exponents(&self) -> &[Vec<u64>] {
        &self.exponents
    }

    fn points<T: Scalar>(&self) -> Vec<Vec<T>> {
        self.exponents
            .iter()
            .map(|k| k.iter().map(|&e| T::from_u64(e).expect("exponent fits")).collect())
            .collect()
    }
}

/// Facet description of `conv(A) + R^n_+`. Fails with `NotCobounded` when the
/// complement is unbounded (infinite Newton number).
pub fn newton_polyhedron<T: Scalar>(exponents: &ExponentSet) -> Result<CopolarBody<T>> {
    hull_complete_positive(exponents.dim, exponents.points())
}

/// `n! · Covol(Γ)`, with exactness and near-integer diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonNumber<T> {
    pub value: T,
    /// Computed in exact arithmetic.
    pub exact: bool,
    /// The nearest integer, when the value is within `1e-9` of it.
    pub integer: Option<i64>,
}

pub fn newton_number<T: Scalar>(exponents: &ExponentSet) -> Result<NewtonNumber<T>> {
    let gamma = newton_polyhedron::<T>(exponents)?;
    let value = factorial::<T>(exponents.dim) * covolume(&gamma)?;
    let approx = value.as_f64();
    let rounded = approx.round();
    let integer = ((approx - rounded).abs() <= 1e-9).then_some(rounded as i64);
    Ok(NewtonNumber {
        value,
        exact: T::is_exact(),
        integer,
    })
}

/// Weight vector `b > 0` of the cosimplex indicator `Φ_b(z) = max_k log|z_k| / b_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct IndicatorWeights<T> {
    b: Vec<T>,
}

impl<T: Scalar> IndicatorWeights<T> {
    pub fn new(b: Vec<T>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::EmptyInput);
        }
        if b.iter().any(|x| *x <= T::zero()) {
            return Err(Error::NonPositiveNormal {
                index: 0,
                normal: b.iter().map(Scalar::as_f64).collect(),
            });
        }
        Ok(Self { b })
    }

    pub fn weights(&self) -> &[T] {
        &self.b
    }

    /// `Φ_b` on logarithmic coordinates `s = Log z`.
    pub fn eval(&self, s: &[T]) -> T {
        self.b
            .iter()
            .zip(s)
            .map(|(b, x)| x.clone() / b.clone())
            .reduce(|a, c| if c > a { c } else { a })
            .expect("non-empty weights")
    }

    /// The cosimplex `{a >= 0 : <a, b> >= 1}` whose indicator this is.
    pub fn body(&self) -> Result<CopolarBody<T>> {
        CopolarBody::cosimplex(self.b.clone())
    }

    /// Weights of the copolar combination: linear in `b`.
    pub fn combination(&self, other: &Self, t: &T) -> Self {
        let s = T::one() - t.clone();
        Self {
            b: self
                .b
                .iter()
                .zip(&other.b)
                .map(|(x, y)| s.clone() * x.clone() + t.clone() * y.clone())
                .collect(),
        }
    }
}

/// Convex image of the indicator of `body` at `s <= 0`, i.e. `h_P(s)`.
pub fn indicator_eval<T: Scalar>(body: &CopolarBody<T>, s: &[T]) -> Result<Extended<T>> {
    body.support_value(s)
}

/// Monge-Ampère masses at the origin, as `(n!·Covol(P_t), n!·Covol(P0), n!·Covol(P1))`
/// where `P_t` is the copolar combination.
pub fn indicator_combination_mass<T: Scalar>(
    p0: &CopolarBody<T>,
    p1: &CopolarBody<T>,
    t: &T,
) -> Result<(T, T, T)> {
    let nf = factorial::<T>(p0.dim());
    let pt = copolar_combination(p0, p1, t)?;
    Ok((
        nf.clone() * covolume(&pt)?,
        nf.clone() * covolume(p0)?,
        nf * covolume(p1)?,
    ))
}
