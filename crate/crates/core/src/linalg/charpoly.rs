//! Characteristic polynomial `det(xI - M)`, monic.
//!
//! The primary route evaluates `det(tI - M)` at `t = 0..=k` with fraction-free
//! elimination and interpolates through Newton forward differences. Debug
//! builds re-derive results up to [`CROSS_CHECK_MAX_ORDER`] with
//! Faddeev-LeVerrier; above that the O(k^4) recurrence dominates test time.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::elimination::integer_determinant;
use super::{ExactMatrix, IntPolynomial, LinalgError, Polynomial, RatPolynomial, Result};

/// Orders at or above this evaluate interpolation points in parallel.
const PARALLEL_ORDER: usize = 16;

/// Largest order re-derived by the debug cross-check.
pub const CROSS_CHECK_MAX_ORDER: usize = 32;

/// Characteristic polynomial of an integer matrix.
pub fn charpoly(m: &ExactMatrix) -> Result<IntPolynomial> {
    let k = m.require_square()?;
    let entries = m.to_integer_rows().ok_or(LinalgError::NotIntegral)?;
    let p = interpolate_integer(k, &entries);
    #[cfg(debug_assertions)]
    if k <= CROSS_CHECK_MAX_ORDER {
        assert_eq!(p, leverrier_integer(k, &entries), "charpoly routes disagree");
    }
    Ok(p)
}

/// Characteristic polynomial of an arbitrary rational matrix.
///
/// With `L` the lcm of the denominators, `det(xI - M) = L^-k det(LxI - LM)`,
/// so coefficient `a_i` is the integer coefficient scaled by `L^(i-k)`.
pub fn charpoly_rational(m: &ExactMatrix) -> Result<RatPolynomial> {
    let k = m.require_square()?;
    let l = m.denominator_lcm();
    if l.is_one() {
        return charpoly(m).map(|p| p.to_rational());
    }
    let scaled = m.scale(&BigRational::from_integer(l.clone()));
    let entries = scaled
        .to_integer_rows()
        .expect("scaling by the denominator lcm clears denominators");
    let p = interpolate_integer(k, &entries);
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| BigRational::new(c.clone(), l.pow((k - i) as u32)))
        .collect();
    let out = Polynomial::new(coeffs);
    #[cfg(debug_assertions)]
    if k <= CROSS_CHECK_MAX_ORDER {
        assert_eq!(out, charpoly_faddeev_leverrier(m)?, "charpoly routes disagree");
    }
    Ok(out)
}

fn shifted_determinant(k: usize, entries: &[BigInt], t: i64) -> BigInt {
    let t = BigInt::from(t);
    let shifted: Vec<BigInt> = entries
        .iter()
        .enumerate()
        .map(|(idx, e)| if idx / k == idx % k { &t - e } else { -e })
        .collect();
    integer_determinant(k, &shifted)
}

fn interpolate_integer(k: usize, entries: &[BigInt]) -> IntPolynomial {
    if k == 0 {
        return IntPolynomial::one();
    }
    let values: Vec<BigInt> = if k >= PARALLEL_ORDER {
        (0..=k as i64)
            .into_par_iter()
            .map(|t| shifted_determinant(k, entries, t))
            .collect()
    } else {
        (0..=k as i64).map(|t| shifted_determinant(k, entries, t)).collect()
    };
    newton_forward(values)
}

/// Monomial coefficients of the degree-`k` integer polynomial taking `values[t]`
/// at `t = 0..=k`.
fn newton_forward(mut values: Vec<BigInt>) -> IntPolynomial {
    let k = values.len() - 1;
    // values[j] becomes the j-th forward difference at 0
    for level in 1..=k {
        for t in (level..=k).rev() {
            let d = &values[t] - &values[t - 1];
            values[t] = d;
        }
    }
    let mut result = IntPolynomial::zero();
    let mut falling = IntPolynomial::one();
    let mut factorial = BigInt::one();
    for (j, delta) in values.into_iter().enumerate() {
        if j > 0 {
            falling = falling.multiply(&IntPolynomial::linear(BigInt::from(-(j as i64 - 1))));
            factorial *= j;
        }
        if delta.is_zero() {
            continue;
        }
        debug_assert!((&delta % &factorial).is_zero());
        let c = delta / &factorial;
        result = result.add(&falling.scale(&c));
    }
    debug_assert!(result.is_monic());
    result
}

/// Faddeev-LeVerrier recurrence: `M_0 = 0`, `M_j = A M_{j-1} + c_{k-j+1} I`,
/// `c_{k-j} = -tr(A M_j) / j`.
pub fn charpoly_faddeev_leverrier(m: &ExactMatrix) -> Result<RatPolynomial> {
    let k = m.require_square()?;
    let mut coeffs = vec![BigRational::zero(); k + 1];
    coeffs[k] = BigRational::one();
    let mut acc = ExactMatrix::zeros(k, k);
    let identity = ExactMatrix::identity(k);
    for j in 1..=k {
        acc = m.mul(&acc)?.add(&identity.scale(&coeffs[k - j + 1]))?;
        let am = m.mul(&acc)?;
        coeffs[k - j] = -am.trace()? / BigRational::from_integer(BigInt::from(j));
    }
    Ok(Polynomial::new(coeffs))
}

/// Faddeev-LeVerrier on an integer matrix. Every trace is divisible by `j`
/// because the coefficients are integers, so no rationals are needed.
pub fn leverrier_integer(k: usize, entries: &[BigInt]) -> IntPolynomial {
    let mut coeffs = vec![BigInt::zero(); k + 1];
    coeffs[k] = BigInt::one();
    let mut acc = vec![BigInt::zero(); k * k];
    let mut prod = vec![BigInt::zero(); k * k];
    for j in 1..=k {
        // acc <- A acc + c_{k-j+1} I
        let c = coeffs[k - j + 1].clone();
        int_mul(k, entries, &acc, &mut prod);
        for i in 0..k {
            prod[i * k + i] += &c;
        }
        std::mem::swap(&mut acc, &mut prod);
        let trace = (0..k).fold(BigInt::zero(), |t, i| {
            t + (0..k).fold(BigInt::zero(), |s, l| s + &entries[i * k + l] * &acc[l * k + i])
        });
        debug_assert!((&trace % j).is_zero());
        coeffs[k - j] = -trace / j;
    }
    Polynomial::new(coeffs)
}

fn int_mul(k: usize, a: &[BigInt], b: &[BigInt], out: &mut [BigInt]) {
    for i in 0..k {
        for j in 0..k {
            let mut s = BigInt::zero();
            for l in 0..k {
                let x = &a[i * k + l];
                if !x.is_zero() {
                    s += x * &b[l * k + j];
                }
            }
            out[i * k + j] = s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn steiner_p3_cubic() {
        let m = ExactMatrix::from_i64_rows(&[[1, 2, 2], [2, 2, 2], [2, 2, 1]]);
        assert_eq!(charpoly(&m).unwrap(), ip(&[-2, -7, -4, 1]));
    }

    #[test]
    fn min4pc_p3_cubic() {
        let m = ExactMatrix::from_i64_rows(&[[0, 2, 1], [2, 0, 1], [1, 1, 0]]);
        assert_eq!(charpoly(&m).unwrap(), ip(&[-4, -6, 0, 1]));
    }

    #[test]
    fn zero_matrix_is_power_of_x() {
        for k in 0..6 {
            assert_eq!(charpoly(&ExactMatrix::zeros(k, k)).unwrap(), IntPolynomial::monomial(k));
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert_eq!(
            charpoly(&ExactMatrix::zeros(2, 3)).unwrap_err(),
            LinalgError::NotSquare { rows: 2, cols: 3 }
        );
        let half = ExactMatrix::from_fn(1, 1, |_, _| BigRational::new(1.into(), 2.into()));
        assert_eq!(charpoly(&half).unwrap_err(), LinalgError::NotIntegral);
        assert_eq!(
            charpoly_rational(&half).unwrap(),
            Polynomial::new(vec![BigRational::new((-1).into(), 2.into()), BigRational::one()])
        );
    }

    #[test]
    fn integer_leverrier_agrees() {
        let m = ExactMatrix::from_i64_fn(6, 6, |i, j| ((i * 7 + j * 3) % 5) as i64 - 2);
        let entries = m.to_integer_rows().unwrap();
        assert_eq!(charpoly(&m).unwrap(), leverrier_integer(6, &entries));
        assert_eq!(
            leverrier_integer(6, &entries).to_rational(),
            charpoly_faddeev_leverrier(&m).unwrap()
        );
    }

    #[test]
    fn rational_route_matches_leverrier() {
        let m = ExactMatrix::from_fn(4, 4, |i, j| {
            BigRational::new(
                BigInt::from(((i * 3 + j * 5) % 7) as i64 - 3),
                BigInt::from(1 + ((i + j) % 3) as i64),
            )
        });
        assert_eq!(charpoly_rational(&m).unwrap(), charpoly_faddeev_leverrier(&m).unwrap());
    }
}
