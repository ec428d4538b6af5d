//! Covolume oracles that do not share code with the library's cone decomposition.

use rand::Rng;

/// Covolume of `{a >= 0 : <a, b_i> >= 1 for all i}` in the plane.
///
/// The complement is the region under `g(x) = max_i (1 - b_i1 x) / b_i2`,
/// clipped at zero. `g` is piecewise linear with breakpoints among the pairwise
/// line crossings and the x-intercepts, so the polygon through `(x, g(x))` at
/// those breakpoints is the complement exactly; its area comes from the
/// shoelace formula.
pub fn shoelace_covolume(normals: &[[f64; 2]]) -> f64 {
    let g = |x: f64| {
        normals
            .iter()
            .map(|b| (1.0 - b[0] * x) / b[1])
            .fold(0.0, f64::max)
    };
    let x_max = normals.iter().map(|b| 1.0 / b[0]).fold(0.0, f64::max);
    let mut xs = vec![0.0, x_max];
    for (i, b) in normals.iter().enumerate() {
        xs.push(1.0 / b[0]);
        for c in &normals[i + 1..] {
            // (1 - b0 x) / b1 = (1 - c0 x) / c1
            let denom = b[0] * c[1] - c[0] * b[1];
            if denom != 0.0 {
                let x = (c[1] - b[1]) / denom;
                if x > 0.0 && x < x_max {
                    xs.push(x);
                }
            }
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut polygon = vec![(0.0, 0.0)];
    polygon.extend(xs.iter().map(|&x| (x, g(x))));
    let twice_area: f64 = polygon
        .iter()
        .zip(polygon.iter().cycle().skip(1))
        .map(|(p, q)| p.0 * q.1 - q.0 * p.1)
        .sum();
    0.5 * twice_area.abs()
}

/// Monte Carlo estimate with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

/// Rejection-sampling covolume: uniform points in the bounding box
/// `[0, max_i 1/b_ik]` of the complement, counted when some constraint fails.
pub fn monte_carlo_covolume<R: Rng>(normals: &[Vec<f64>], samples: usize, rng: &mut R) -> Estimate {
    let n = normals[0].len();
    let extent: Vec<f64> = (0..n)
        .map(|k| normals.iter().map(|b| 1.0 / b[k]).fold(0.0, f64::max))
        .collect();
    let box_volume: f64 = extent.iter().product();
    let mut point = vec![0.0; n];
    let mut hits = 0usize;
    for _ in 0..samples {
        for (x, e) in point.iter_mut().zip(&extent) {
            *x = rng.random::<f64>() * e;
        }
        let outside = normals
            .iter()
            .any(|b| b.iter().zip(&point).map(|(u, v)| u * v).sum::<f64>() < 1.0);
        if outside {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    Estimate {
        value: p * box_volume,
        std_error: box_volume * (p * (1.0 - p) / samples as f64).sqrt(),
    }
}
