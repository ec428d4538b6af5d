use copolar::newton::{indicator_eval, newton_number, newton_polyhedron, ExponentSet};
use copolar::{BigRational, Body, Extended};
use proptest::prelude::*;

fn set(dim: usize, ks: Vec<Vec<u64>>) -> ExponentSet {
    ExponentSet::new(dim, ks).unwrap()
}

fn pure_powers(powers: &[u64]) -> Vec<Vec<u64>> {
    let n = powers.len();
    (0..n)
        .map(|k| (0..n).map(|j| if j == k { powers[k] } else { 0 }).collect())
        .collect()
}

#[test]
fn kushnirenko_examples() {
    let cube = newton_number::<f64>(&set(3, pure_powers(&[3, 3, 3]))).unwrap();
    assert_eq!(cube.integer, Some(27));
    let exact = newton_number::<BigRational>(&set(2, vec![vec![2, 0], vec![0, 3], vec![1, 1]])).unwrap();
    // (1,1) cuts the triangle: two facets through (2,0),(1,1) and (1,1),(0,3)
    assert_eq!(exact.integer, Some(5));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_maps(powers in prop::collection::vec(1u64..6, 2..=3)) {
        let n = newton_number::<f64>(&set(powers.len(), pure_powers(&powers))).unwrap();
        prop_assert_eq!(n.integer, Some(powers.iter().product::<u64>() as i64));
    }

    #[test]
    fn redundant_monomials_change_nothing(powers in prop::collection::vec(1u64..6, 2), shift in prop::collection::vec(0u64..4, 2)) {
        let base = pure_powers(&powers);
        // any point of k + R^n_+ for an exponent k already lies in the polyhedron
        let extra: Vec<u64> = base[0].iter().zip(&shift).map(|(a, b)| a + b).collect();
        prop_assume!(!base.contains(&extra));
        let mut bigger = base.clone();
        bigger.push(extra);
        let (g0, g1) = (
            newton_polyhedron::<f64>(&set(2, base.clone())).unwrap(),
            newton_polyhedron::<f64>(&set(2, bigger.clone())).unwrap(),
        );
        prop_assert!(g0.approx_eq(&g1));
        let (n0, n1) = (
            newton_number::<f64>(&set(2, base)).unwrap(),
            newton_number::<f64>(&set(2, bigger)).unwrap(),
        );
        prop_assert!((n0.value - n1.value).abs() <= 1e-9 * n0.value);
    }

    #[test]
    fn more_monomials_lower_the_number(powers in prop::collection::vec(1u64..7, 2), extra in prop::collection::vec(0u64..7, 2)) {
        let base = pure_powers(&powers);
        prop_assume!(extra.iter().any(|&e| e > 0) && !base.contains(&extra));
        let mut bigger = base.clone();
        bigger.push(extra);
        let n0 = newton_number::<f64>(&set(2, base)).unwrap().value;
        let n1 = newton_number::<f64>(&set(2, bigger)).unwrap().value;
        prop_assert!(n1 <= n0 * (1.0 + 1e-9));
    }

    #[test]
    fn indicator_is_homogeneous(b in prop::collection::vec(0.2f64..5.0, 2), s in prop::collection::vec(-4.0f64..0.0, 2), c in 0.1f64..10.0) {
        let p = Body::cosimplex(b).unwrap();
        let v = indicator_eval(&p, &s).unwrap();
        let scaled: Vec<f64> = s.iter().map(|x| c * x).collect();
        let w = indicator_eval(&p, &scaled).unwrap();
        match (v, w) {
            (Extended::Finite(v), Extended::Finite(w)) => prop_assert!((w - c * v).abs() <= 1e-9 * (1.0 + w.abs())),
            other => prop_assert!(false, "{other:?}"),
        }
    }
}
