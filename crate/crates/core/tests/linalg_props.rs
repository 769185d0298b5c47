use fermionic::exec::Strategy as Exec;
use fermionic::ExactMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max, 1..=max)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn square(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-3i64..=3, n), n))
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut total = BigInt::zero();
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != c)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let term = BigInt::from(m[0][c]) * cofactor_det(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn identity_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn rank_equals_transpose_rank(rows in matrix(7)) {
        let m = ExactMatrix::from_i64_rows(&rows).unwrap();
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn rref_is_idempotent(rows in matrix(6)) {
        let m = ExactMatrix::from_i64_rows(&rows).unwrap();
        let order = identity_order(m.cols());
        let once = m.rref(&order).unwrap();
        let twice = once.matrix.rref(&order).unwrap();
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.pivot_columns.len(), m.rank());
    }

    #[test]
    fn rref_respects_column_order(rows in matrix(6)) {
        let m = ExactMatrix::from_i64_rows(&rows).unwrap();
        let order: Vec<usize> = (0..m.cols()).rev().collect();
        let r = m.rref(&order).unwrap();
        // pivots are found scanning the given order
        let pos: Vec<usize> = r.pivot_columns.iter().map(|p| order.iter().position(|c| c == p).unwrap()).collect();
        prop_assert!(pos.windows(2).all(|w| w[0] < w[1]));
        for (k, &p) in r.pivot_columns.iter().enumerate() {
            prop_assert!(r.matrix.get(k, p).is_one());
        }
    }

    #[test]
    fn determinant_matches_cofactors(rows in square(5)) {
        let m = ExactMatrix::from_i64_rows(&rows).unwrap();
        let det = m.determinant().unwrap();
        prop_assert_eq!(det.clone(), BigRational::from_integer(cofactor_det(&rows)));
        prop_assert_eq!(!det.is_zero(), m.rank() == m.rows());
        prop_assert_eq!(m.is_invertible(), !det.is_zero());
    }

    #[test]
    fn determinant_is_multiplicative((a, b) in (1usize..=4).prop_flat_map(|n| (
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), n),
        prop::collection::vec(prop::collection::vec(-3i64..=3, n), n),
    ))) {
        let a = ExactMatrix::from_i64_rows(&a).unwrap();
        let b = ExactMatrix::from_i64_rows(&b).unwrap();
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
    }

    #[test]
    fn csv_round_trip(rows in matrix(5)) {
        let m = ExactMatrix::from_i64_rows(&rows).unwrap();
        prop_assert_eq!(ExactMatrix::from_csv(&m.to_csv()).unwrap(), m);
    }
}

#[test]
fn strategies_agree_on_large_matrices() {
    // a banded 80x80 matrix is above the parallel row-update threshold
    let m = ExactMatrix::from_fn(80, 80, |r, c| {
        let d = r.abs_diff(c);
        BigRational::from_integer(BigInt::from(if d <= 2 {
            (r + 2 * c) as i64 % 5 - 2
        } else {
            0
        }))
    });
    assert_eq!(m.rank_with(Exec::Sequential), m.rank_with(Exec::Parallel));
    let order = identity_order(80);
    assert_eq!(
        m.rref_with(&order, Exec::Sequential).unwrap(),
        m.rref_with(&order, Exec::Parallel).unwrap()
    );
}

#[test]
fn rationals_and_errors() {
    let half = BigRational::new(1.into(), 2.into());
    let m = ExactMatrix::from_fn(2, 2, |r, c| {
        if r == c {
            half.clone()
        } else {
            BigRational::zero()
        }
    });
    assert_eq!(
        m.determinant().unwrap(),
        BigRational::new(1.into(), 4.into())
    );
    assert!(ExactMatrix::zeros(2, 3).determinant().is_err());
    assert!(m.rref(&[0, 0]).is_err());
    assert!(m.checked_mul(&ExactMatrix::zeros(3, 1)).is_err());
    assert_eq!(
        ExactMatrix::zeros(0, 0).determinant().unwrap(),
        BigRational::one()
    );
}
