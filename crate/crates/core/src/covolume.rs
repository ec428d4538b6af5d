//! Covolume `Vol(R^n_+ \ P)` of a cobounded body.
//!
//! The complement is star-shaped from the origin: the ray through a direction
//! `u >= 0` leaves it on a bounded facet `F_i = P ∩ {<a, b_i> = 1}`. Hence
//!
//! ```text
//! Covol(P) = sum_i Vol(conv(0, F_i))
//! ```
//!
//! Each facet is triangulated by pulling from its first vertex (recursively
//! over the face lattice given by vertex incidence), and every resulting cone
//! `conv(0, v_1, ..., v_n)` contributes `|det(v_1, ..., v_n)| / n!`. With exact
//! rationals the whole computation is exact.

use crate::body::CopolarBody;
use crate::error::Result;
use crate::linalg;
use crate::scalar::{factorial, Scalar};
use crate::vertex::VertexSet;

pub fn covolume<T: Scalar>(body: &CopolarBody<T>) -> Result<T> {
    if body.is_full() {
        return Ok(T::zero());
    }
    let vs = body.vertices()?;
    let n = body.dim();
    let constraints = body.normals().len() + n;
    let mut total = T::zero();
    for facet in 0..body.normals().len() {
        let face: Vec<usize> = (0..vs.len()).filter(|&v| vs.is_active(v, facet)).collect();
        if face.is_empty() || face_rank(&vs, &face) + 1 != n {
            continue;
        }
        let mut simplices = Vec::new();
        triangulate(&vs, constraints, &face, n - 1, &mut simplices);
        for simplex in simplices {
            let rows: Vec<Vec<T>> = simplex.iter().map(|&v| vs.vertices[v].clone()).collect();
            total = total + linalg::determinant(&rows).abs();
        }
    }
    Ok(total / factorial::<T>(n))
}

fn face_rank<T: Scalar>(vs: &VertexSet<T>, face: &[usize]) -> usize {
    let pts: Vec<&[T]> = face.iter().map(|&v| vs.vertices[v].as_slice()).collect();
    linalg::affine_rank(&pts)
}

/// Splits the `dim`-dimensional face spanned by `face` into simplices
/// (as vertex index lists of length `dim + 1`).
fn triangulate<T: Scalar>(
    vs: &VertexSet<T>,
    constraints: usize,
    face: &[usize],
    dim: usize,
    out: &mut Vec<Vec<usize>>,
) {
    if dim == 0 {
        out.push(vec![face[0]]);
        return;
    }
    let apex = face[0];
    let mut seen: Vec<Vec<usize>> = Vec::new();
    for c in 0..constraints {
        if vs.is_active(apex, c) {
            continue;
        }
        let sub: Vec<usize> = face.iter().copied().filter(|&v| vs.is_active(v, c)).collect();
        if sub.len() < dim || seen.contains(&sub) || face_rank(vs, &sub) + 1 != dim {
            continue;
        }
        let mut inner = Vec::new();
        triangulate(vs, constraints, &sub, dim - 1, &mut inner);
        out.extend(inner.into_iter().map(|mut s| {
            s.push(apex);
            s
        }));
        seen.push(sub);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn cosimplex_closed_form(b: &[f64]) -> f64 {
        1.0 / (factorial::<f64>(b.len()) * b.iter().product::<f64>())
    }

    #[test]
    fn cosimplex_matches_closed_form() {
        for b in [vec![1.0 / 3.0, 1.0], vec![0.5, 2.0, 0.25], vec![1.0, 2.0, 3.0, 4.0], vec![0.7]] {
            let p = CopolarBody::cosimplex(b.clone()).unwrap();
            let c = covolume(&p).unwrap();
            assert!((c - cosimplex_closed_form(&b)).abs() < 1e-12 * c.max(1.0), "{b:?}: {c}");
        }
    }

    #[test]
    fn cosimplex_pair_values() {
        let mink = crate::body::hull_complete_positive(
            2,
            vec![vec![2.0, 0.0], vec![0.5, 0.5], vec![0.0, 2.0]],
        )
        .unwrap();
        assert!((covolume::<f64>(&mink).unwrap() - 1.0).abs() < 1e-12);
        let cop = CopolarBody::cosimplex(vec![2.0 / 3.0, 2.0 / 3.0]).unwrap();
        assert!((covolume::<f64>(&cop).unwrap() - 9.0 / 8.0).abs() < 1e-12);
        assert_eq!(covolume(&CopolarBody::<f64>::full_orthant(3)).unwrap(), 0.0);
    }

    #[test]
    fn exact_rational_covolume() {
        let p = CopolarBody::cosimplex(vec![ratio(2, 3), ratio(2, 3)]).unwrap();
        assert_eq!(covolume(&p).unwrap(), ratio(9, 8));
        let q = CopolarBody::new(3, vec![
            vec![ratio(1, 1), ratio(1, 2), ratio(1, 3)],
            vec![ratio(1, 3), ratio(1, 2), ratio(1, 1)],
        ])
        .unwrap();
        // Two cosimplices of covolume 1 each; the union is smaller than 2.
        let c = covolume(&q).unwrap();
        assert!(c > ratio(1, 1) && c < ratio(2, 1));
    }

    #[test]
    fn degenerate_vertex_matches_exact_path() {
        // All four normals are tight at (1, 1, 1); the last one is their average.
        let raw = [[6, 3, 3], [3, 6, 3], [3, 3, 6], [4, 4, 4]];
        let float = CopolarBody::new(
            3,
            raw.iter().map(|b| b.iter().map(|&x| x as f64 / 12.0).collect()).collect(),
        )
        .unwrap();
        let exact = CopolarBody::new(
            3,
            raw.iter().map(|b| b.iter().map(|&x| ratio(x, 12)).collect()).collect(),
        )
        .unwrap();
        assert_eq!(float.normals().len(), 3);
        assert_eq!(exact.normals().len(), 3);
        let c = covolume(&float).unwrap();
        let e = covolume(&exact).unwrap().as_f64();
        assert!((c - e).abs() < 1e-12, "{c} vs {e}");
        // Each cosimplex alone has covolume 16/3.
        assert!(c > 16.0 / 3.0 && c < 16.0);
    }
}
