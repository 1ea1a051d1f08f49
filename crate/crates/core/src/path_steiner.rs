//! The 2-Steiner matrix of the path in its interleaved basis
//! `(e_1, f_1, e_2, ..., f_{n-2}, e_{n-1})`: inverse formula, principal
//! minors, coefficient facts, the `7n/5` peak bound, and the conjecture scan.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fourpc::{path_ordered_basis, steiner_v, FourPcError, PairBasis, SteinerV};
use crate::linalg::{charpoly, determinant, ExactMatrix, IntPolynomial, LinalgError};
use crate::spectra::{analyze, peak_bound, CoefficientReport, PeakFamily};
use crate::tree::{path, Tree, TreeError};

/// Largest `n` the conjecture scan accepts.
pub const SCAN_CAP: usize = 60;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("path instance needs n >= 3, got {0}")]
    SizeTooSmall(usize),
    #[error("scan range {lo}..={hi} must satisfy 6 <= lo <= hi <= {cap}")]
    RangeError { lo: usize, hi: usize, cap: usize },
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    FourPc(#[from] FourPcError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = PathError> = std::result::Result<T, E>;

fn ser_display<T: std::fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone)]
pub struct PathSteinerInstance {
    pub n: usize,
    pub tree: Tree,
    pub basis: PairBasis,
    pub matrix: ExactMatrix,
    pub v: SteinerV,
    pub laplacian: ExactMatrix,
}

/// Position of each basis element on the path as an interval `[a, b]`.
fn interval(k: usize) -> (usize, usize) {
    // e_i sits at 2(i-1) and spans [i, i+1]; f_j sits at 2j-1 and spans [j, j+2]
    let i = k / 2 + 1;
    if k.is_multiple_of(2) {
        (i, i + 1)
    } else {
        (i, i + 2)
    }
}

/// Tridiagonal, diagonal `(1, 2, ..., 2, 1)`, off-diagonal `-1`.
pub fn laplacian_like(order: usize) -> ExactMatrix {
    ExactMatrix::from_i64_fn(order, order, |i, j| {
        if i == j {
            if i == 0 || i + 1 == order {
                1
            } else {
                2
            }
        } else if i.abs_diff(j) == 1 {
            -1
        } else {
            0
        }
    })
}

/// On a path the smallest subtree spanning two intervals runs from the
/// leftmost to the rightmost endpoint, so each entry is `max - min`.
pub fn build_path_instance(n: usize) -> Result<PathSteinerInstance> {
    if n < 3 {
        return Err(PathError::SizeTooSmall(n));
    }
    let tree = path(n)?;
    let basis = path_ordered_basis(&tree)?;
    let order = 2 * n - 3;
    let matrix = ExactMatrix::from_i64_fn(order, order, |r, c| {
        let (a, b) = interval(r);
        let (x, y) = interval(c);
        (b.max(y) - a.min(x)) as i64
    });
    let v = steiner_v(&tree, &basis)?;
    Ok(PathSteinerInstance {
        n,
        tree,
        basis,
        matrix,
        v,
        laplacian: laplacian_like(order),
    })
}

impl PathSteinerInstance {
    pub fn order(&self) -> usize {
        self.matrix.rows()
    }

    /// `-L + v v^t / (n-1)`.
    pub fn inverse_formula(&self) -> ExactMatrix {
        let v = self.v.to_column();
        let outer = v.mul(&v.transpose()).expect("column times row");
        let scale = BigRational::new(BigInt::from(1), BigInt::from(self.n - 1));
        self.laplacian.neg().add(&outer.scale(&scale)).expect("same order")
    }
}

/// True iff `D (-L + v v^t/(n-1)) = I` exactly.
pub fn verify_inverse_formula(inst: &PathSteinerInstance) -> bool {
    inst.matrix
        .mul(&inst.inverse_formula())
        .is_ok_and(|p| p == ExactMatrix::identity(inst.order()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinorEntry {
    pub element: String,
    pub pair: String,
    pub pendant: bool,
    #[serde(serialize_with = "ser_display")]
    pub det: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub expected: BigInt,
    pub ok: bool,
}

/// `det D(a|a)` for every basis element `a`, each from a fresh elimination.
/// Expected `-(n-1)` on the two pendant edges and `-(2n-3)` elsewhere.
pub fn principal_minor_scan(inst: &PathSteinerInstance) -> Result<Vec<MinorEntry>> {
    let names = inst.basis.element_names(&inst.tree);
    let n = inst.n as i64;
    let last = inst.order() - 1;
    (0..inst.order())
        .into_par_iter()
        .map(|k| {
            let det = determinant(&inst.matrix.delete(&[k])?)?;
            let det = det.to_integer();
            let pendant = k == 0 || k == last;
            let expected = BigInt::from(if pendant { -(n - 1) } else { -(2 * n - 3) });
            Ok(MinorEntry {
                element: names[k].clone(),
                pair: inst.basis.pairs()[k].label(),
                pendant,
                ok: det == expected,
                det,
                expected,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PathCoefficientFacts {
    pub n: usize,
    pub charpoly: IntPolynomial,
    #[serde(serialize_with = "ser_display")]
    pub a0: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub a1: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub a_2n_minus_4: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub a_2n_minus_5: BigInt,
    /// Sum of the order `2n-4` principal minors.
    #[serde(serialize_with = "ser_display")]
    pub minor_sum: BigInt,
    pub a0_ok: bool,
    pub a1_ok: bool,
    pub a_2n_minus_4_ok: bool,
    /// `a_1` equals the minor sum with sign `(-1)^(2n-4) = +1`.
    pub a1_is_minor_sum: bool,
    pub report: CoefficientReport,
}

impl PathCoefficientFacts {
    pub fn all_ok(&self) -> bool {
        self.a0_ok && self.a1_ok && self.a_2n_minus_4_ok && self.a1_is_minor_sum && self.report.bound_ok == Some(true)
    }
}

/// Checks `|a_0| = n-1`, `|a_1| = 4n^2-14n+13`, `|a_{2n-4}| = 3n-5` against the
/// exact charpoly, and locates the peak over `0..=2n-4`.
pub fn path_coefficient_facts(inst: &PathSteinerInstance, minors: &[MinorEntry]) -> Result<PathCoefficientFacts> {
    let n = inst.n;
    let m = n as i64;
    let p = charpoly(&inst.matrix)?;
    let mut report = analyze(&p, 0..=2 * n - 4).expect("window within degree");
    report.apply_bound(peak_bound(PeakFamily::Path, n).expect("n >= 3"));
    let a0 = p.coeff(0);
    let a1 = p.coeff(1);
    let top = p.coeff(2 * n - 4);
    let minor_sum: BigInt = minors.iter().map(|e| &e.det).sum();
    Ok(PathCoefficientFacts {
        n,
        a0_ok: a0.abs() == BigInt::from(m - 1),
        a1_ok: a1.abs() == BigInt::from(4 * m * m - 14 * m + 13),
        a_2n_minus_4_ok: top.abs() == BigInt::from(3 * m - 5),
        a1_is_minor_sum: a1 == minor_sum,
        a_2n_minus_5: p.coeff(2 * n - 5),
        a0,
        a1,
        a_2n_minus_4: top,
        minor_sum,
        charpoly: p,
        report,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeakBoundDetail {
    pub n: usize,
    /// `(2n-3)(4n^2-15n+14) / (3(2n-3)(n-2) + 2(n-1))`.
    #[serde(serialize_with = "ser_display")]
    pub f_n: BigRational,
    #[serde(serialize_with = "ser_display")]
    pub seven_n_over_five: BigRational,
    pub bound: usize,
    pub f_below: bool,
}

pub fn path_peak_bound_detail(n: usize) -> Result<PeakBoundDetail> {
    if n < 3 {
        return Err(PathError::SizeTooSmall(n));
    }
    let m = BigInt::from(n);
    let num = (BigInt::from(2) * &m - 3) * (BigInt::from(4) * &m * &m - BigInt::from(15) * &m + 14);
    let den = BigInt::from(3) * (BigInt::from(2) * &m - 3) * (&m - 2) + BigInt::from(2) * (&m - 1);
    let f_n = BigRational::new(num, den);
    let seven = BigRational::new(BigInt::from(7) * &m, BigInt::from(5));
    Ok(PeakBoundDetail {
        n,
        f_below: f_n < seven,
        f_n,
        seven_n_over_five: seven,
        bound: 7 * n / 5,
    })
}

/// `-(1/6)(n-1)(n-2)(2n^2+6n-15)`; always an integer.
pub fn conjectured_a_2n_minus_5(n: usize) -> BigInt {
    let m = BigInt::from(n);
    let num: BigInt = (&m - 1u32) * (&m - 2u32) * (BigInt::from(2) * &m * &m + BigInt::from(6) * &m - 15u32);
    debug_assert!((&num % BigInt::from(6)).is_zero());
    -(num / BigInt::from(6))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub n: usize,
    pub peak_set: Vec<usize>,
    pub peak_matches_n_minus_1: bool,
    #[serde(serialize_with = "ser_display")]
    pub a_2n_minus_5: BigInt,
    #[serde(serialize_with = "ser_display")]
    pub conjectured_value: BigInt,
    pub matches: bool,
}

fn conjecture_row(n: usize) -> Result<ConjectureRow> {
    let inst = build_path_instance(n)?;
    let p = charpoly(&inst.matrix)?;
    let report = analyze(&p, 0..=2 * n - 4).expect("window within degree");
    let a = p.coeff(2 * n - 5);
    let conj = conjectured_a_2n_minus_5(n);
    Ok(ConjectureRow {
        n,
        peak_matches_n_minus_1: report.peak_set == [n - 1],
        peak_set: report.peak_set,
        matches: a == conj,
        a_2n_minus_5: a,
        conjectured_value: conj,
    })
}

/// Evaluates both conjectures for every `n` in range. Reports, never asserts.
pub fn conjecture_scan(lo: usize, hi: usize) -> Result<Vec<ConjectureRow>> {
    if lo < 6 || lo > hi || hi > SCAN_CAP {
        return Err(PathError::RangeError { lo, hi, cap: SCAN_CAP });
    }
    // largest first so the expensive orders start early
    let mut rows: Vec<ConjectureRow> = (lo..=hi)
        .rev()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(conjecture_row)
        .collect::<Result<_>>()?;
    rows.sort_by_key(|r| r.n);
    Ok(rows)
}

pub fn conjectures_csv(rows: &[ConjectureRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "n",
        "peak_index",
        "peak_matches_n_minus_1",
        "a_2n_minus_5",
        "conjectured_value",
        "match",
    ])
    .expect("in-memory write");
    for r in rows {
        let peaks: Vec<String> = r.peak_set.iter().map(ToString::to_string).collect();
        w.write_record([
            r.n.to_string(),
            peaks.join(";"),
            r.peak_matches_n_minus_1.to_string(),
            r.a_2n_minus_5.to_string(),
            r.conjectured_value.to_string(),
            r.matches.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourpc::{restricted_matrix, MatrixKind};
    use crate::linalg::{inertia, InertiaTriple};

    #[test]
    fn small_instances() {
        let i3 = build_path_instance(3).unwrap();
        assert_eq!(
            i3.matrix,
            ExactMatrix::from_i64_rows(&[[1, 2, 2], [2, 2, 2], [2, 2, 1]])
        );
        let i4 = build_path_instance(4).unwrap();
        assert_eq!(
            i4.matrix.row(0).iter().map(|x| x.to_integer()).collect::<Vec<_>>(),
            [1, 2, 2, 3, 3].map(BigInt::from)
        );
        for n in 3..10 {
            assert_eq!(build_path_instance(n).unwrap().order(), 2 * n - 3);
        }
        assert_eq!(build_path_instance(2).unwrap_err(), PathError::SizeTooSmall(2));
    }

    #[test]
    fn interval_route_matches_pair_route() {
        for n in 3..=14 {
            let inst = build_path_instance(n).unwrap();
            let generic = restricted_matrix(&inst.tree, MatrixKind::Steiner2, &inst.basis).unwrap();
            assert_eq!(inst.matrix, generic, "n = {n}");
        }
    }

    #[test]
    fn laplacian_kills_ones() {
        for k in 3..12 {
            let l = laplacian_like(k);
            assert!(l.is_symmetric());
            let ones = ExactMatrix::ones_vector(k);
            assert_eq!(l.mul(&ones).unwrap(), ExactMatrix::zeros(k, 1));
        }
    }

    #[test]
    fn inverse_and_determinant() {
        for n in 3..=12 {
            let inst = build_path_instance(n).unwrap();
            assert!(verify_inverse_formula(&inst), "n = {n}");
            let det = determinant(&inst.matrix).unwrap();
            assert_eq!(det, BigRational::from_integer(BigInt::from(n - 1)));
        }
    }

    #[test]
    fn minors_at_three_and_four() {
        let m3 = principal_minor_scan(&build_path_instance(3).unwrap()).unwrap();
        let dets: Vec<i64> = m3.iter().map(|e| i64::try_from(&e.det).unwrap()).collect();
        assert_eq!(dets, vec![-2, -3, -2]);
        let m4 = principal_minor_scan(&build_path_instance(4).unwrap()).unwrap();
        let dets: Vec<i64> = m4.iter().map(|e| i64::try_from(&e.det).unwrap()).collect();
        assert_eq!(dets, vec![-3, -5, -5, -5, -3]);
        assert_eq!(m4[2].element, "e2");
    }

    #[test]
    fn coefficient_facts_small() {
        for n in 3..=10 {
            let inst = build_path_instance(n).unwrap();
            let minors = principal_minor_scan(&inst).unwrap();
            assert!(minors.iter().all(|e| e.ok));
            let f = path_coefficient_facts(&inst, &minors).unwrap();
            assert!(f.all_ok(), "n = {n}: {f:?}");
            let m = n as i64;
            assert_eq!(f.minor_sum, BigInt::from(-(4 * m * m - 14 * m + 13)));
            // constant term is (-1)^(2n-3) det
            assert_eq!(f.a0, BigInt::from(-(m - 1)));
            assert_eq!(inertia(&inst.matrix).unwrap(), InertiaTriple::new(1, 2 * n - 4, 0));
        }
        let f5 = path_coefficient_facts(&build_path_instance(5).unwrap(), &[]).unwrap();
        assert_eq!(f5.a1.abs(), BigInt::from(43));
    }

    #[test]
    fn bound_detail() {
        let d = path_peak_bound_detail(6).unwrap();
        assert_eq!(d.f_n, BigRational::new(BigInt::from(306), BigInt::from(59)));
        assert!(d.f_below);
        assert_eq!(path_peak_bound_detail(10).unwrap().bound, 14);
        for n in 3..=60 {
            assert!(path_peak_bound_detail(n).unwrap().f_below, "n = {n}");
        }
    }

    #[test]
    fn conjecture_formula_and_scan() {
        assert_eq!(conjectured_a_2n_minus_5(6), BigInt::from(-310));
        let rows = conjecture_scan(6, 9).unwrap();
        assert_eq!(rows.len(), 4);
        for r in &rows {
            assert!(r.peak_matches_n_minus_1 && r.matches, "{r:?}");
        }
        let csv = conjectures_csv(&rows);
        assert!(csv.starts_with(
            "n,peak_index,peak_matches_n_minus_1,a_2n_minus_5,conjectured_value,match\n6,5,true,-310,-310,true\n"
        ));
        assert!(matches!(conjecture_scan(5, 9), Err(PathError::RangeError { .. })));
        assert!(matches!(conjecture_scan(9, 8), Err(PathError::RangeError { .. })));
        assert!(matches!(conjecture_scan(6, 61), Err(PathError::RangeError { .. })));
    }
}
