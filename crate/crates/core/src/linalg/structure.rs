//! Inertia, Schur complements, and equitable-partition quotients.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{charpoly_rational, inverse, Coefficient, ExactMatrix, LinalgError, Polynomial, Result};

/// Counts of positive, negative, and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InertiaTriple {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl InertiaTriple {
    pub fn new(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        InertiaTriple {
            n_plus,
            n_minus,
            n_zero,
        }
    }

    pub fn order(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }

    pub fn negated(&self) -> Self {
        InertiaTriple::new(self.n_minus, self.n_plus, self.n_zero)
    }
}

impl std::ops::Add for InertiaTriple {
    type Output = InertiaTriple;

    fn add(self, rhs: Self) -> Self {
        InertiaTriple::new(
            self.n_plus + rhs.n_plus,
            self.n_minus + rhs.n_minus,
            self.n_zero + rhs.n_zero,
        )
    }
}

impl std::fmt::Display for InertiaTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.n_plus, self.n_minus, self.n_zero)
    }
}

/// Inertia of a symmetric matrix, read off its exact characteristic polynomial.
///
/// The charpoly of a real symmetric matrix is real-rooted, so after removing
/// the factor `x^z` Descartes' rule is exact: sign variations of `p(x)` count
/// positive roots and those of `p(-x)` count negative roots.
pub fn inertia(m: &ExactMatrix) -> Result<InertiaTriple> {
    m.require_square()?;
    if !m.is_symmetric() {
        return Err(LinalgError::NotSymmetric);
    }
    let inertia = inertia_from_charpoly(&charpoly_rational(m)?);
    debug_assert_eq!(inertia.order(), m.rows());
    Ok(inertia)
}

/// Descartes counts on a charpoly already known to come from a symmetric matrix.
pub fn inertia_from_charpoly<T: Coefficient>(p: &Polynomial<T>) -> InertiaTriple {
    let z = p.zero_root_multiplicity();
    let stripped = Polynomial::new(p.coeffs()[z..].to_vec());
    InertiaTriple::new(stripped.sign_variations(), stripped.reflect().sign_variations(), z)
}

/// Sorted complement of `idx` in `0..order`; rejects out-of-range or repeated indices.
pub fn complement(idx: &[usize], order: usize) -> Result<Vec<usize>> {
    let mut seen = vec![false; order];
    for &i in idx {
        if i >= order {
            return Err(LinalgError::IndexOutOfRange { index: i, order });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(LinalgError::NotAPartition(format!("index {i} repeated")));
        }
    }
    Ok((0..order).filter(|&i| !seen[i]).collect())
}

fn split(m: &ExactMatrix, alpha: &[usize]) -> Result<Vec<usize>> {
    let n = m.require_square()?;
    let rest = complement(alpha, n)?;
    if alpha.is_empty() || rest.is_empty() {
        return Err(LinalgError::EmptyComplement);
    }
    Ok(rest)
}

fn invert_block(block: &ExactMatrix) -> Result<ExactMatrix> {
    inverse(block).map_err(|e| match e {
        LinalgError::Singular => LinalgError::SingularBlock,
        other => other,
    })
}

/// `M[ac] - M[ac, a] M[a]^-1 M[a, ac]`, with `a = alpha` and `ac` its complement.
pub fn schur_complement(m: &ExactMatrix, alpha: &[usize]) -> Result<ExactMatrix> {
    let rest = split(m, alpha)?;
    let block_inv = invert_block(&m.principal(alpha)?)?;
    let correction = m
        .submatrix(&rest, alpha)?
        .mul(&block_inv)?
        .mul(&m.submatrix(alpha, &rest)?)?;
    m.principal(&rest)?.sub(&correction)
}

/// Checks `(M^-1[a])^-1 = M[a] - M[a, ac] M[ac]^-1 M[ac, a]` exactly.
pub fn block_inverse_check(m: &ExactMatrix, alpha: &[usize]) -> Result<bool> {
    let rest = split(m, alpha)?;
    let m_inv = inverse(m)?;
    let lhs = invert_block(&m_inv.principal(alpha)?)?;
    let rest_inv = invert_block(&m.principal(&rest)?)?;
    let rhs = m.principal(alpha)?.sub(
        &m.submatrix(alpha, &rest)?
            .mul(&rest_inv)?
            .mul(&m.submatrix(&rest, alpha)?)?,
    )?;
    Ok(lhs == rhs)
}

/// Quotient matrix of block row sums for an equitable partition.
///
/// The quotient need not be symmetric even when `m` is.
pub fn equitable_quotient(m: &ExactMatrix, partition: &[Vec<usize>]) -> Result<ExactMatrix> {
    let n = m.require_square()?;
    let flat: Vec<usize> = partition.iter().flatten().copied().collect();
    if !complement(&flat, n)?.is_empty() {
        return Err(LinalgError::NotAPartition("indices not covered".into()));
    }
    if partition.iter().any(Vec::is_empty) {
        return Err(LinalgError::NotAPartition("empty block".into()));
    }
    let p = partition.len();
    let mut q = ExactMatrix::zeros(p, p);
    for (bi, rows) in partition.iter().enumerate() {
        for (bj, cols) in partition.iter().enumerate() {
            let sums: Vec<BigRational> = rows
                .iter()
                .map(|&r| cols.iter().fold(BigRational::zero(), |acc, &c| acc + m.get(r, c)))
                .collect();
            if sums.windows(2).any(|w| w[0] != w[1]) {
                return Err(LinalgError::NotEquitable {
                    row_block: bi,
                    col_block: bj,
                });
            }
            q.set(bi, bj, sums[0].clone());
        }
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn inertia_of_negative_identity() {
        for k in 1..5 {
            let m = ExactMatrix::identity(k).neg();
            assert_eq!(inertia(&m).unwrap(), InertiaTriple::new(0, k, 0));
        }
    }

    #[test]
    fn inertia_with_zero_eigenvalues() {
        // J_3 has eigenvalues 3, 0, 0
        let j = ExactMatrix::all_ones(3, 3);
        assert_eq!(inertia(&j).unwrap(), InertiaTriple::new(1, 0, 2));
        let ns = ExactMatrix::from_i64_rows(&[[0, 1], [0, 0]]);
        assert_eq!(inertia(&ns).unwrap_err(), LinalgError::NotSymmetric);
    }

    #[test]
    fn schur_of_small_min4pc_block() {
        // K = [[0,2],[2,0]], x_f = (1,1): 0 - x^T K^-1 x = -1
        let m = ExactMatrix::from_i64_rows(&[[0, 2, 1], [2, 0, 1], [1, 1, 0]]);
        let s = schur_complement(&m, &[0, 1]).unwrap();
        assert_eq!(s, ExactMatrix::from_fn(1, 1, |_, _| q(-1, 1)));
    }

    #[test]
    fn schur_of_block_diagonal() {
        let m = ExactMatrix::from_i64_rows(&[[2, 0, 0], [0, 3, 1], [0, 1, 5]]);
        let s = schur_complement(&m, &[0]).unwrap();
        assert_eq!(s, ExactMatrix::from_i64_rows(&[[3, 1], [1, 5]]));
        assert_eq!(
            schur_complement(&ExactMatrix::zeros(2, 2), &[0]).unwrap_err(),
            LinalgError::SingularBlock
        );
        assert_eq!(schur_complement(&m, &[]).unwrap_err(), LinalgError::EmptyComplement);
    }

    #[test]
    fn block_inverse_on_diagonal() {
        let m = ExactMatrix::from_i64_rows(&[[2, 0, 0], [0, -3, 0], [0, 0, 7]]);
        for alpha in [vec![0], vec![1, 2], vec![2, 0]] {
            assert!(block_inverse_check(&m, &alpha).unwrap());
        }
    }

    #[test]
    fn quotient_and_errors() {
        let m = ExactMatrix::from_i64_rows(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]]);
        let qm = equitable_quotient(&m, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(qm, ExactMatrix::from_i64_rows(&[[1, 1], [2, 0]]));
        let singletons: Vec<Vec<usize>> = (0..3).map(|i| vec![i]).collect();
        assert_eq!(equitable_quotient(&m, &singletons).unwrap(), m);
        let skew = ExactMatrix::from_i64_rows(&[[0, 1, 2], [1, 0, 1], [2, 1, 0]]);
        assert_eq!(
            equitable_quotient(&skew, &[vec![0, 1], vec![2]]).unwrap_err(),
            LinalgError::NotEquitable {
                row_block: 0,
                col_block: 1
            }
        );
        assert!(matches!(
            equitable_quotient(&m, &[vec![0], vec![2]]),
            Err(LinalgError::NotAPartition(_))
        ));
    }
}
