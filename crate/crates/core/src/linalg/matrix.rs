use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{LinalgError, Result};

/// Dense row-major matrix of arbitrary-precision rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order, order);
        for i in 0..order {
            m.data[i * order + i] = BigRational::one();
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn all_ones(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![BigRational::one(); rows * cols],
        }
    }

    /// The all-ones column vector.
    pub fn ones_vector(len: usize) -> Self {
        Self::all_ones(len, 1)
    }

    pub fn column(values: Vec<BigRational>) -> Self {
        ExactMatrix {
            rows: values.len(),
            cols: 1,
            data: values,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn from_i64_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        Self::from_fn(rows, cols, |i, j| BigRational::from_integer(f(i, j).into()))
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        assert!(rows.iter().all(|row| row.as_ref().len() == c), "ragged matrix rows");
        Self::from_i64_fn(r, c, |i, j| rows[i].as_ref()[j])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn trace(&self) -> Result<BigRational> {
        let n = self.require_square()?;
        Ok((0..n).fold(BigRational::zero(), |acc, i| acc + self.get(i, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(self.mismatch(other));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    /// Submatrix `M[rows, cols]` in the given index order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Self> {
        for &i in rows {
            self.check_index(i, self.rows)?;
        }
        for &j in cols {
            self.check_index(j, self.cols)?;
        }
        Ok(Self::from_fn(rows.len(), cols.len(), |a, b| {
            self.get(rows[a], cols[b]).clone()
        }))
    }

    /// Principal submatrix `M[idx]`.
    pub fn principal(&self, idx: &[usize]) -> Result<Self> {
        self.submatrix(idx, idx)
    }

    /// `M(idx|idx)`: the matrix with the rows and columns in `idx` deleted.
    pub fn delete(&self, idx: &[usize]) -> Result<Self> {
        let n = self.require_square()?;
        let keep = super::complement(idx, n)?;
        self.principal(&keep)
    }

    /// Integer entries, or `None` if some entry has a denominator.
    pub fn to_integer_rows(&self) -> Option<Vec<BigInt>> {
        self.data
            .iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    }

    /// Entries as `i64`, if all are integers in range.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.data
            .iter()
            .map(|x| if x.is_integer() { x.to_integer().to_i64() } else { None })
            .collect()
    }

    /// Least common multiple of the entry denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn max_abs_integer(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs().ceil().to_integer())
            .max()
            .unwrap_or_default()
    }

    fn check_index(&self, index: usize, order: usize) -> Result<()> {
        if index < order {
            Ok(())
        } else {
            Err(LinalgError::IndexOutOfRange { index, order })
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(self.mismatch(other));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    fn mismatch(&self, other: &Self) -> LinalgError {
        LinalgError::DimensionMismatch {
            left: format!("{}x{}", self.rows, self.cols),
            right: format!("{}x{}", other.rows, other.cols),
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}
