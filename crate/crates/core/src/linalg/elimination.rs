//! Fraction-free (Bareiss) elimination.
//!
//! Integer matrices go through an `i128` pass with checked arithmetic first
//! and fall back to [`BigInt`] on overflow. Rational matrices are scaled row
//! by row to integers before elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactMatrix, LinalgError, Result};

/// Determinant of a square row-major integer matrix.
pub fn integer_determinant(order: usize, entries: &[BigInt]) -> BigInt {
    debug_assert_eq!(entries.len(), order * order);
    if order == 0 {
        return BigInt::one();
    }
    let small: Option<Vec<i128>> = entries.iter().map(ToPrimitive::to_i128).collect();
    if let Some(mut a) = small {
        if let Some(det) = bareiss_i128(order, &mut a) {
            return BigInt::from(det);
        }
    }
    bareiss_big(order, entries.to_vec())
}

fn bareiss_i128(n: usize, a: &mut [i128]) -> Option<i128> {
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k * n + k] == 0 {
            let pivot = (k + 1..n).find(|&i| a[i * n + k] != 0);
            let Some(p) = pivot else { return Some(0) };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = -sign;
        }
        let akk = a[k * n + k];
        for i in k + 1..n {
            let aik = a[i * n + k];
            for j in k + 1..n {
                let lhs = a[i * n + j].checked_mul(akk)?;
                let rhs = aik.checked_mul(a[k * n + j])?;
                a[i * n + j] = lhs.checked_sub(rhs)? / prev;
            }
        }
        prev = akk;
    }
    a[n * n - 1].checked_mul(sign)
}

fn bareiss_big(n: usize, mut a: Vec<BigInt>) -> BigInt {
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let pivot = (k + 1..n).find(|&i| !a[i * n + k].is_zero());
            let Some(p) = pivot else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, p * n + j);
            }
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                debug_assert!((&num % &prev).is_zero());
                a[i * n + j] = num / &prev;
            }
        }
        prev = a[k * n + k].clone();
    }
    let det = a[n * n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Rows scaled to integers, with the product of the scale factors.
fn integer_rows(m: &ExactMatrix) -> (Vec<BigInt>, BigInt) {
    let mut scale = BigInt::one();
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        let row = m.row(i);
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        out.extend(
            row.iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer()),
        );
        scale *= l;
    }
    (out, scale)
}

pub fn determinant(m: &ExactMatrix) -> Result<BigRational> {
    let n = m.require_square()?;
    let (entries, scale) = integer_rows(m);
    Ok(BigRational::new(integer_determinant(n, &entries), scale))
}

/// Rank over the rationals.
pub fn rank(m: &ExactMatrix) -> usize {
    let (entries, _) = integer_rows(m);
    let (r, c) = (m.rows(), m.cols());
    let small: Option<Vec<i128>> = entries.iter().map(ToPrimitive::to_i128).collect();
    if let Some(mut a) = small {
        if let Some(rk) = rank_i128(r, c, &mut a) {
            return rk;
        }
    }
    rank_big(r, c, entries)
}

fn rank_i128(rows: usize, cols: usize, a: &mut [i128]) -> Option<usize> {
    let mut r = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(r * cols + j, p * cols + j);
            }
        }
        let piv = a[r * cols + c];
        for i in r + 1..rows {
            let aic = a[i * cols + c];
            for j in c + 1..cols {
                let lhs = a[i * cols + j].checked_mul(piv)?;
                let rhs = aic.checked_mul(a[r * cols + j])?;
                a[i * cols + j] = lhs.checked_sub(rhs)? / prev;
            }
            a[i * cols + c] = 0;
        }
        prev = piv;
        r += 1;
    }
    Some(r)
}

fn rank_big(rows: usize, cols: usize, mut a: Vec<BigInt>) -> usize {
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                a.swap(r * cols + j, p * cols + j);
            }
        }
        let piv = a[r * cols + c].clone();
        for i in r + 1..rows {
            for j in c + 1..cols {
                let num = &a[i * cols + j] * &piv - &a[i * cols + c] * &a[r * cols + j];
                a[i * cols + j] = num / &prev;
            }
            a[i * cols + c] = BigInt::zero();
        }
        prev = piv;
        r += 1;
    }
    r
}

/// Gauss-Jordan inverse over the rationals.
pub fn inverse(m: &ExactMatrix) -> Result<ExactMatrix> {
    let n = m.require_square()?;
    let mut a: Vec<Vec<BigRational>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for c in 0..n {
        // smallest nonzero pivot keeps the numbers short
        let p = (c..n)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()))
            .ok_or(LinalgError::Singular)?;
        a.swap(c, p);
        inv.swap(c, p);
        let piv = a[c][c].clone();
        for j in 0..n {
            a[c][j] = &a[c][j] / &piv;
            inv[c][j] = &inv[c][j] / &piv;
        }
        for i in 0..n {
            if i == c || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..n {
                let da = &f * &a[c][j];
                a[i][j] -= da;
                let di = &f * &inv[c][j];
                inv[i][j] -= di;
            }
        }
    }
    Ok(ExactMatrix::from_fn(n, n, |i, j| inv[i][j].clone()))
}
