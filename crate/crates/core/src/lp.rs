//! Dense tableau simplex with Bland's anti-cycling rule.
//!
//! Solves `maximize c.y` subject to `A y <= b`, `y >= 0` with `b >= 0`, so the
//! slack basis is feasible from the start and no phase one is needed.

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal(T),
    Unbounded,
    /// Bland's rule terminates in exact arithmetic; rounding can still stall a float run.
    IterationLimit,
}

/// `a` is row-major with one row per constraint.
pub fn maximize<T: Scalar>(c: &[T], a: &[Vec<T>], b: &[T]) -> LpOutcome<T> {
    let rows = a.len();
    let vars = c.len();
    let cols = vars + rows;
    debug_assert!(b.iter().all(|x| *x >= T::zero()));

    let mut tab: Vec<Vec<T>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..rows).map(|j| if i == j { T::one() } else { T::zero() }));
            r.push(b[i].clone());
            r
        })
        .collect();
    let mut reduced: Vec<T> = c.iter().cloned().chain((0..rows).map(|_| T::zero())).collect();
    let mut value = T::zero();
    let mut basis: Vec<usize> = (vars..cols).collect();
    let eps = T::tolerance();

    let limit = 50 * (cols + 1) + 1000;
    for _ in 0..limit {
        let Some(enter) = (0..cols).find(|&j| reduced[j] > eps) else {
            return LpOutcome::Optimal(value);
        };
        let mut leave: Option<(usize, T)> = None;
        for (i, row) in tab.iter().enumerate() {
            if row[enter] <= eps {
                continue;
            }
            let ratio = row[cols].clone() / row[enter].clone();
            leave = match leave {
                None => Some((i, ratio)),
                Some((best, best_ratio)) => {
                    if ratio < best_ratio || (ratio == best_ratio && basis[i] < basis[best]) {
                        Some((i, ratio))
                    } else {
                        Some((best, best_ratio))
                    }
                }
            };
        }
        let Some((pivot_row, _)) = leave else {
            return LpOutcome::Unbounded;
        };

        let pivot = tab[pivot_row][enter].clone();
        for x in tab[pivot_row].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        let pivot_vals = tab[pivot_row].clone();
        for (i, row) in tab.iter_mut().enumerate() {
            if i == pivot_row || row[enter].is_zero() {
                continue;
            }
            let factor = row[enter].clone();
            for (x, p) in row.iter_mut().zip(&pivot_vals) {
                *x = x.clone() - factor.clone() * p.clone();
            }
        }
        let factor = reduced[enter].clone();
        for (r, p) in reduced.iter_mut().zip(&pivot_vals) {
            *r = r.clone() - factor.clone() * p.clone();
        }
        value = value + factor * pivot_vals[cols].clone();
        basis[pivot_row] = enter;
    }
    LpOutcome::IterationLimit
}
