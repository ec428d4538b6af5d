//! Discrete Legendre-Fenchel transform.
//!
//! `g(y) = max_x <x, y> - f(x)` over the source nodes. The multi-dimensional
//! transform factors into one-dimensional transforms along each axis, and each
//! of those runs in linear time: take the lower convex hull of the finite
//! samples, then sweep the sorted targets while the optimal hull vertex only
//! moves right.

use super::grid::{GridBox, GridFn};
use crate::error::{Error, Result};

/// One-dimensional conjugate of samples `(xs[i], fs[i])` (xs increasing,
/// `+inf` entries skipped) at increasing `ys`. Writes `-inf` when every sample is infinite.
pub fn conjugate_1d(xs: &[f64], fs: &[f64], ys: &[f64], out: &mut [f64]) {
    let mut hull: Vec<(f64, f64)> = Vec::with_capacity(xs.len());
    for (&x, &f) in xs.iter().zip(fs) {
        if !f.is_finite() {
            continue;
        }
        while hull.len() >= 2 {
            let (x1, f1) = hull[hull.len() - 2];
            let (x2, f2) = hull[hull.len() - 1];
            // drop the middle point unless it lies strictly below the chord
            if (f2 - f1) * (x - x1) >= (f - f1) * (x2 - x1) {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, f));
    }
    if hull.is_empty() {
        out.iter_mut().for_each(|o| *o = f64::NEG_INFINITY);
        return;
    }
    let mut j = 0;
    for (y, o) in ys.iter().zip(out.iter_mut()) {
        while j + 1 < hull.len() && hull[j + 1].0 * y - hull[j + 1].1 >= hull[j].0 * y - hull[j].1 {
            j += 1;
        }
        *o = hull[j].0 * y - hull[j].1;
    }
}

/// Legendre transform of `f` sampled on `target`. The result is tagged convex.
pub fn legendre_grid(f: &GridFn, target: &GridBox) -> Result<GridFn> {
    let source = f.grid();
    let dim = source.dim();
    if target.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: target.dim(),
        });
    }
    if !f.has_finite() {
        return Err(Error::AllInfinite);
    }

    let mut shape: Vec<usize> = source.counts().to_vec();
    let mut data: Vec<f64> = f.values().to_vec();
    for axis in 0..dim {
        let xs = source.axis_coords(axis);
        let ys = target.axis_coords(axis);
        let inner: usize = shape[axis + 1..].iter().product();
        let outer: usize = shape[..axis].iter().product();
        let (m_in, m_out) = (shape[axis], ys.len());
        let mut next = vec![0.0; outer * m_out * inner];
        let mut line = vec![0.0; m_in];
        let mut result = vec![0.0; m_out];
        let last = axis + 1 == dim;
        for o in 0..outer {
            for i in 0..inner {
                for (k, slot) in line.iter_mut().enumerate() {
                    *slot = data[(o * m_in + k) * inner + i];
                }
                conjugate_1d(&xs, &line, &ys, &mut result);
                for (k, &g) in result.iter().enumerate() {
                    // Between axes the partial conjugate re-enters as `-g`.
                    next[(o * m_out + k) * inner + i] = if last { g } else { -g };
                }
            }
        }
        shape[axis] = m_out;
        data = next;
    }
    Ok(GridFn::new(target.clone(), data)?.tagged_convex())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_1d(xs: &[f64], fs: &[f64], y: f64) -> f64 {
        xs.iter()
            .zip(fs)
            .filter(|(_, f)| f.is_finite())
            .map(|(x, f)| x * y - f)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn linear_time_matches_brute_force_on_nonconvex_data() {
        let xs: Vec<f64> = (0..40).map(|i| -2.0 + 0.1 * i as f64).collect();
        let fs: Vec<f64> = xs
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 7 == 3 { f64::INFINITY } else { (3.0 * x).sin() + 0.3 * x * x })
            .collect();
        let ys: Vec<f64> = (0..57).map(|i| -4.0 + 0.15 * i as f64).collect();
        let mut out = vec![0.0; ys.len()];
        conjugate_1d(&xs, &fs, &ys, &mut out);
        for (y, g) in ys.iter().zip(&out) {
            assert!((g - brute_1d(&xs, &fs, *y)).abs() < 1e-12);
        }
    }

    #[test]
    fn two_dimensional_matches_brute_force() {
        let src = GridBox::new(vec![-1.0, -2.0], vec![1.0, 0.5], vec![9, 13]).unwrap();
        let f = GridFn::from_fn(src.clone(), |x| {
            if x[0] + x[1] > 0.6 {
                f64::INFINITY
            } else {
                (x[0] * x[1]).cos() + x[0].abs()
            }
        })
        .unwrap();
        let tgt = GridBox::new(vec![-3.0, -1.0], vec![2.0, 4.0], vec![11, 7]).unwrap();
        let g = legendre_grid(&f, &tgt).unwrap();
        for (flat, y) in tgt.nodes().enumerate() {
            let brute = src
                .nodes()
                .zip(f.values())
                .filter(|(_, v)| v.is_finite())
                .map(|(x, v)| x[0] * y[0] + x[1] * y[1] - v)
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((g.values()[flat] - brute).abs() < 1e-12);
        }
        assert!(g.is_convex());
    }

    #[test]
    fn half_square_norm_is_self_dual() {
        let m = 129;
        let src = GridBox::cube(2, -2.0, 2.0, m).unwrap();
        let f = GridFn::from_fn(src.clone(), |x| 0.5 * (x[0] * x[0] + x[1] * x[1])).unwrap();
        let tgt = GridBox::cube(2, -1.0, 1.0, 33).unwrap();
        let g = legendre_grid(&f, &tgt).unwrap();
        let h = src.max_spacing();
        for (flat, y) in tgt.nodes().enumerate() {
            let exact = 0.5 * (y[0] * y[0] + y[1] * y[1]);
            assert!((g.values()[flat] - exact).abs() <= h, "{y:?}");
        }
    }

    #[test]
    fn point_indicator_gives_linear_function() {
        let src = GridBox::cube(2, -1.0, 1.0, 21).unwrap();
        let x0 = [0.3, -0.4];
        let f = GridFn::from_fn(src, |x| {
            if (x[0] - x0[0]).abs() < 1e-9 && (x[1] - x0[1]).abs() < 1e-9 {
                0.0
            } else {
                f64::INFINITY
            }
        })
        .unwrap();
        assert_eq!(f.values().iter().filter(|v| v.is_finite()).count(), 1);
        let tgt = GridBox::cube(2, -3.0, 3.0, 7).unwrap();
        let g = legendre_grid(&f, &tgt).unwrap();
        for (flat, y) in tgt.nodes().enumerate() {
            assert!((g.values()[flat] - (x0[0] * y[0] + x0[1] * y[1])).abs() < 1e-12);
        }
    }

    #[test]
    fn all_infinite_is_rejected() {
        let g = GridBox::cube(1, 0.0, 1.0, 3).unwrap();
        let f = GridFn::new(g.clone(), vec![f64::INFINITY; 3]).unwrap();
        assert_eq!(legendre_grid(&f, &g), Err(Error::AllInfinite));
    }
}
