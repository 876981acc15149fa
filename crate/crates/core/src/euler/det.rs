//! Fraction-free Gaussian elimination over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix by Bareiss elimination.
///
/// Every division is exact, so no rational intermediate ever appears.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    /// Leibniz expansion over all permutations.
    fn leibniz(a: &[Vec<i64>]) -> i128 {
        fn rec(a: &[Vec<i64>], row: usize, used: &mut Vec<bool>, sign: i128, acc: i128, out: &mut i128) {
            let n = a.len();
            if row == n {
                *out += sign * acc;
                return;
            }
            for c in 0..n {
                if used[c] {
                    continue;
                }
                // inversions contributed by placing column c at this row
                let inv = (c + 1..n).filter(|&j| used[j]).count();
                let s = if inv % 2 == 1 { -sign } else { sign };
                used[c] = true;
                rec(a, row + 1, used, s, acc * a[row][c] as i128, out);
                used[c] = false;
            }
        }
        let mut out = 0;
        rec(a, 0, &mut vec![false; a.len()], 1, 1, &mut out);
        out
    }

    #[test]
    fn small_cases() {
        assert_eq!(bareiss_determinant(vec![]), BigInt::one());
        assert_eq!(bareiss_determinant(mat(&[&[7]])), BigInt::from(7));
        assert_eq!(bareiss_determinant(mat(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(bareiss_determinant(mat(&[&[2, -1], &[-1, 2]])), BigInt::from(3));
        assert_eq!(bareiss_determinant(mat(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(
            bareiss_determinant(mat(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]])),
            BigInt::from(-1)
        );
    }

    proptest! {
        #[test]
        fn agrees_with_leibniz(n in 1usize..=5, seed in prop::collection::vec(-6i64..=6, 25)) {
            let a: Vec<Vec<i64>> = (0..n).map(|i| seed[i * n..i * n + n].to_vec()).collect();
            let big = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            prop_assert_eq!(bareiss_determinant(big), BigInt::from(leibniz(&a)));
        }
    }
}
