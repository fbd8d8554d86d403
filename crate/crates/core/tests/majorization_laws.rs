use outlier_extremes::majorization::*;
use proptest::prelude::*;

fn vector(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..10.0, len)
}

/// `x` moved toward its mean by a chain of T-transforms, so `x >= result`.
fn t_transform(x: &[f64], moves: &[(usize, usize, f64)]) -> Vec<f64> {
    let mut v = x.to_vec();
    for &(i, j, a) in moves {
        let (i, j) = (i % v.len(), j % v.len());
        let (xi, xj) = (v[i], v[j]);
        v[i] = a * xi + (1.0 - a) * xj;
        v[j] = (1.0 - a) * xi + a * xj;
    }
    v
}

fn moves() -> impl Strategy<Value = Vec<(usize, usize, f64)>> {
    prop::collection::vec((0usize..16, 0usize..16, 0.0f64..=1.0), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn majorization_implies_both_weak_orders(x in vector(6), m in moves()) {
        let y = t_transform(&x, &m);
        prop_assert!(majorizes(&x, &y).unwrap());
        prop_assert!(weakly_submajorizes(&x, &y).unwrap());
        prop_assert!(weakly_supermajorizes(&x, &y).unwrap());
    }

    #[test]
    fn all_relations_reflexive(x in vector(7)) {
        prop_assert!(majorizes(&x, &x).unwrap());
        prop_assert!(weakly_submajorizes(&x, &x).unwrap());
        prop_assert!(weakly_supermajorizes(&x, &x).unwrap());
    }

    #[test]
    fn majorization_transitive(x in vector(5), m1 in moves(), m2 in moves()) {
        let y = t_transform(&x, &m1);
        let z = t_transform(&y, &m2);
        prop_assert!(majorizes(&x, &y).unwrap() && majorizes(&y, &z).unwrap());
        prop_assert!(majorizes(&x, &z).unwrap());
    }

    #[test]
    fn weak_orders_transitive(x in vector(4), m1 in moves(), m2 in moves(), d in vector(4)) {
        // Lowering coordinates keeps x on top for the submajorization and
        // raising them keeps it for the supermajorization.
        let y = t_transform(&x, &m1);
        let z = t_transform(&y, &m2);
        let lower: Vec<f64> = z.iter().zip(&d).map(|(a, b)| a - b).collect();
        prop_assert!(weakly_submajorizes(&x, &y).unwrap() && weakly_submajorizes(&y, &lower).unwrap());
        prop_assert!(weakly_submajorizes(&x, &lower).unwrap());
        let higher: Vec<f64> = z.iter().zip(&d).map(|(a, b)| a + b).collect();
        prop_assert!(weakly_supermajorizes(&x, &higher).unwrap());
    }

    #[test]
    fn relations_ignore_permutations(x in vector(6), y in vector(6), seed in any::<u64>()) {
        let mut px = x.clone();
        let mut py = y.clone();
        // A deterministic shuffle driven by the seed.
        let n = px.len();
        for i in (1..n).rev() {
            let j = ((seed >> (i * 5)) as usize) % (i + 1);
            px.swap(i, j);
            py.swap(n - 1 - i, j);
        }
        prop_assert_eq!(majorizes(&x, &y).unwrap(), majorizes(&px, &py).unwrap());
        prop_assert_eq!(weakly_submajorizes(&x, &y).unwrap(), weakly_submajorizes(&px, &py).unwrap());
        prop_assert_eq!(weakly_supermajorizes(&x, &y).unwrap(), weakly_supermajorizes(&px, &py).unwrap());
    }

    #[test]
    fn majorization_is_both_weak_orders_with_equal_sums(x in vector(5), y in vector(5)) {
        let both = weakly_submajorizes(&x, &y).unwrap() && weakly_supermajorizes(&x, &y).unwrap();
        prop_assert_eq!(majorizes(&x, &y).unwrap(), both);
    }

    #[test]
    fn expansion_has_block_multiplicities(a in 0.1f64..10.0, b in 0.1f64..10.0, n1 in 1usize..8, n2 in 1usize..8) {
        let v = expand_outlier_vector(a, b, n1, n2).unwrap();
        prop_assert_eq!(v.len(), n1 + n2);
        prop_assert!(v[..n1].iter().all(|&t| t == a) && v[n1..].iter().all(|&t| t == b));
    }

    #[test]
    fn shift_invariance_of_weak_submajorization(x in vector(5), y in vector(5), c in -5.0f64..5.0) {
        let sx: Vec<f64> = x.iter().map(|t| t + c).collect();
        let sy: Vec<f64> = y.iter().map(|t| t + c).collect();
        prop_assert_eq!(weakly_submajorizes(&x, &y).unwrap(), weakly_submajorizes(&sx, &sy).unwrap());
    }
}
