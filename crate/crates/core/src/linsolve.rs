//! Exact dense linear algebra over integral domains and fields.

use std::ops::Div;

use crate::zsqrt2::Ring;

/// Determinant by fraction-free (Bareiss) elimination. `T` must support
/// exact division: every quotient taken here is known to be exact.
pub fn determinant<T: Ring + Div<Output = T>>(m: &[Vec<T>]) -> T {
    let n = m.len();
    if n == 0 {
        return T::one();
    }
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = num / prev.clone();
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Solves `A x = b` over a field by Gauss-Jordan elimination. Returns `None`
/// when `A` is singular.
pub fn solve<T: Ring + Div<Output = T>>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side length");
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = T::one() / aug[col][col].clone();
        for x in aug[col].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..=n {
                aug[r][c] = aug[r][c].clone() - factor.clone() * aug[col][c].clone();
            }
        }
    }
    Some(aug.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn mat_mul<T: Ring>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch");
            (0..cols)
                .map(|j| {
                    (0..inner).fold(T::zero(), |acc, k| acc + row[k].clone() * b[k][j].clone())
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<T: Ring>(a: &[Vec<T>], v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn int(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn bareiss_small() {
        assert_eq!(determinant(&int(&[&[2, 1], &[1, 3]])), BigInt::from(5));
        assert_eq!(determinant(&int(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            determinant(&int(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])),
            BigInt::from(0)
        );
        assert_eq!(
            determinant(&int(&[&[0, 2, 1], &[3, 0, 1], &[1, 1, 0]])),
            BigInt::from(5)
        );
    }

    #[test]
    fn solve_rational() {
        let q = |x: i64| BigRational::from_integer(x.into());
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![BigRational::new(4.into(), 5.into()), BigRational::new(7.into(), 5.into())]);
        assert_eq!(mat_vec(&a, &x), vec![q(3), q(5)]);
        assert!(solve(&[vec![q(1), q(2)], vec![q(2), q(4)]], &[q(0), q(0)]).is_none());
    }
}
