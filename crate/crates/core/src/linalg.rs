//! Small dense Gaussian elimination over a [`Scalar`].

use crate::scalar::Scalar;

fn max_abs<T: Scalar>(rows: &[Vec<T>]) -> T {
    rows.iter()
        .flatten()
        .map(|x| x.abs())
        .fold(T::zero(), |m, x| if x > m { x } else { m })
}

/// Row-reduces `rows` in place, returning the rank. Pivots below
/// `eps * max|entry|` count as zero.
fn eliminate<T: Scalar>(rows: &mut [Vec<T>], cols: usize) -> usize {
    let threshold = T::tolerance() * max_abs(rows);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let (pivot, best) = (rank..rows.len())
            .map(|r| (r, rows[r][col].abs()))
            .fold((rank, T::zero()), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best <= threshold || best.is_zero() {
            continue;
        }
        rows.swap(rank, pivot);
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone() / rows[rank][col].clone();
            for c in col..rows[r].len() {
                let delta = factor.clone() * rows[rank][c].clone();
                rows[r][c] = rows[r][c].clone() - delta;
            }
        }
        rank += 1;
    }
    rank
}

/// Solves the square system `a x = b`; `None` when `a` is (numerically) singular.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = b.len();
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let threshold = T::tolerance() * max_abs(a);
    for col in 0..n {
        let (pivot, best) = (col..n)
            .map(|r| (r, aug[r][col].abs()))
            .fold((col, T::zero()), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best.is_zero() || best <= threshold {
            return None;
        }
        aug.swap(col, pivot);
        for r in col + 1..n {
            if aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone() / aug[col][col].clone();
            for c in col..=n {
                let delta = factor.clone() * aug[col][c].clone();
                aug[r][c] = aug[r][c].clone() - delta;
            }
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = aug[row][n].clone();
        for c in row + 1..n {
            acc = acc - aug[row][c].clone() * x[c].clone();
        }
        x[row] = acc / aug[row][row].clone();
    }
    Some(x)
}

pub fn determinant<T: Scalar>(rows: &[Vec<T>]) -> T {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut det = T::one();
    for col in 0..n {
        let (pivot, best) = (col..n)
            .map(|r| (r, m[r][col].abs()))
            .fold((col, T::zero()), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if best.is_zero() {
            return T::zero();
        }
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det = det * m[col][col].clone();
        for r in col + 1..n {
            let factor = m[r][col].clone() / m[col][col].clone();
            for c in col..n {
                let delta = factor.clone() * m[col][c].clone();
                m[r][c] = m[r][c].clone() - delta;
            }
        }
    }
    det
}

/// Dimension of the affine hull of `points`.
pub fn affine_rank<T: Scalar>(points: &[&[T]]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    if rest.is_empty() {
        return 0;
    }
    let mut diffs: Vec<Vec<T>> = rest
        .iter()
        .map(|p| p.iter().zip(*first).map(|(a, b)| a.clone() - b.clone()).collect())
        .collect();
    eliminate(&mut diffs, first.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use num_rational::BigRational;

    #[test]
    fn solves_and_detects_singular_systems() {
        let a = vec![vec![2.0, 1.0], vec![1.0, 3.0]];
        let x: Vec<f64> = solve(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-12 && (x[1] - 1.4).abs() < 1e-12);
        assert!(solve(&[vec![1.0, 2.0], vec![2.0, 4.0]], &[1.0, 2.0]).is_none());
    }

    #[test]
    fn exact_determinant() {
        let m: Vec<Vec<BigRational>> = vec![
            vec![ratio(3, 2), ratio(0, 1)],
            vec![ratio(1, 2), ratio(1, 2)],
        ];
        assert_eq!(determinant(&m), ratio(3, 4));
    }

    #[test]
    fn affine_rank_of_collinear_points() {
        let pts = [[0.0, 0.0, 1.0], [1.0, 1.0, 1.0], [2.0, 2.0, 1.0]];
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        assert_eq!(affine_rank(&refs), 1);
        let pts = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        let refs: Vec<&[f64]> = pts.iter().map(|p| p.as_slice()).collect();
        assert_eq!(affine_rank(&refs), 2);
    }
}
