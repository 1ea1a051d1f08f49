//! Independent oracles for the integration and acceptance tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use treespec::linalg::{ExactMatrix, RatPolynomial};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `det(xI - M)` by Laplace expansion along the first row, over polynomial entries.
pub fn cofactor_charpoly(m: &ExactMatrix) -> RatPolynomial {
    let k = m.rows();
    let entries: Vec<Vec<RatPolynomial>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let c = -m.get(i, j).clone();
                    if i == j {
                        RatPolynomial::new(vec![c, BigRational::one()])
                    } else {
                        RatPolynomial::new(vec![c])
                    }
                })
                .collect()
        })
        .collect();
    let cols: Vec<usize> = (0..k).collect();
    expand(&entries, 0, &cols)
}

fn expand(a: &[Vec<RatPolynomial>], row: usize, cols: &[usize]) -> RatPolynomial {
    if cols.is_empty() {
        return RatPolynomial::one();
    }
    let mut total = RatPolynomial::zero();
    for (pos, &c) in cols.iter().enumerate() {
        if a[row][c].is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = a[row][c].multiply(&expand(a, row + 1, &rest));
        total = if pos % 2 == 0 {
            total.add(&term)
        } else {
            total.sub(&term)
        };
    }
    total
}

/// Rational entries `p/q` with `|p| <= 5`, `1 <= q <= 4`.
pub fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    rat(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn random_matrix(rng: &mut ChaCha8Rng, k: usize) -> ExactMatrix {
    ExactMatrix::from_fn(k, k, |_, _| random_rational(rng))
}

pub fn random_symmetric(rng: &mut ChaCha8Rng, k: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = random_rational(rng);
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// Nonempty proper subset of `0..k`, sorted.
pub fn random_subset(rng: &mut ChaCha8Rng, k: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..k).filter(|_| rng.gen_bool(0.5)).collect();
        if !s.is_empty() && s.len() < k {
            return s;
        }
    }
}

/// Textbook Prüfer decoding by repeated linear scan for the smallest leaf.
pub fn naive_prufer_edges(seq: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n + 1];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let last: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    edges.push((last[0], last[1]));
    edges
}
