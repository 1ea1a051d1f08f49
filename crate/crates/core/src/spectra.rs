//! Coefficient sequences of characteristic polynomials: signs, unimodality,
//! log-concavity, peak location, and the closed-form families.

use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::linalg::{InertiaTriple, IntPolynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectraError {
    #[error("sign theorem does not apply: {0}")]
    PreconditionUnmet(String),
    #[error("analysis window is empty")]
    EmptyWindow,
    #[error("window {lo}..={hi} exceeds degree {degree}")]
    WindowOutOfRange { lo: usize, hi: usize, degree: usize },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("{family} bound is only stated for n >= {min}, got {n}")]
    OutOfValidityRange { family: PeakFamily, n: usize, min: usize },
}

pub type Result<T, E = SpectraError> = std::result::Result<T, E>;

fn ser_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

/// Outcome of the coefficient-sign theorem on its window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignCheck {
    pub window: (usize, usize),
    pub holds: bool,
    pub violations: Vec<usize>,
}

/// For inertia `(1, r-1, n-r)` and trace `>= 0`: `a_k < 0` for
/// `n-r <= k <= n-2`, extended to `n-1` when the trace is positive.
pub fn sign_pattern_check(p: &IntPolynomial, inertia: InertiaTriple, trace: &BigRational) -> Result<SignCheck> {
    let n = inertia.order();
    if p.degree() != Some(n) {
        return Err(SpectraError::PreconditionUnmet(format!(
            "degree {:?} does not match inertia order {n}",
            p.degree()
        )));
    }
    if inertia.n_plus != 1 {
        return Err(SpectraError::PreconditionUnmet(format!(
            "need exactly one positive eigenvalue, inertia is {inertia}"
        )));
    }
    if trace.is_negative() {
        return Err(SpectraError::PreconditionUnmet(format!("trace {trace} < 0")));
    }
    let lo = inertia.n_zero;
    let hi = if trace.is_zero() { n - 2 } else { n - 1 };
    let violations: Vec<usize> = (lo..=hi).filter(|&k| !p.coeff(k).is_negative()).collect();
    Ok(SignCheck {
        window: (lo, hi),
        holds: violations.is_empty(),
        violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PeakFamily {
    Min4pc,
    Star,
    Bistar,
    Path,
}

impl fmt::Display for PeakFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PeakFamily::Min4pc => "min4pc",
            PeakFamily::Star => "star",
            PeakFamily::Bistar => "bistar",
            PeakFamily::Path => "path",
        })
    }
}

impl FromStr for PeakFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "min4pc" => Ok(PeakFamily::Min4pc),
            "star" => Ok(PeakFamily::Star),
            "bistar" => Ok(PeakFamily::Bistar),
            "path" => Ok(PeakFamily::Path),
            other => Err(format!("unknown peak family {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum PeakBound {
    Interval { lo: usize, hi: usize },
    Upper { hi: usize },
}

impl PeakBound {
    pub fn contains(&self, k: usize) -> bool {
        match *self {
            PeakBound::Interval { lo, hi } => lo <= k && k <= hi,
            PeakBound::Upper { hi } => k <= hi,
        }
    }
}

impl fmt::Display for PeakBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeakBound::Interval { lo, hi } => write!(f, "[{lo}, {hi}]"),
            PeakBound::Upper { hi } => write!(f, "<= {hi}"),
        }
    }
}

/// Smallest `n` for which each family's bound is asserted.
pub fn validity_min(family: PeakFamily) -> usize {
    match family {
        PeakFamily::Min4pc => 8,
        PeakFamily::Star => 3,
        PeakFamily::Bistar => 6,
        PeakFamily::Path => 3,
    }
}

pub fn peak_bound(family: PeakFamily, n: usize) -> Result<PeakBound> {
    let min = validity_min(family);
    if n < min {
        return Err(SpectraError::OutOfValidityRange { family, n, min });
    }
    Ok(match family {
        PeakFamily::Min4pc => PeakBound::Interval {
            lo: (n - 2) / 3,
            hi: (n + 1).div_ceil(3),
        },
        PeakFamily::Star => PeakBound::Interval {
            lo: (n - 2) / 2,
            hi: n.div_ceil(2),
        },
        PeakFamily::Bistar => PeakBound::Interval {
            lo: (n - 4) / 2,
            hi: (n + 4).div_ceil(2),
        },
        PeakFamily::Path => PeakBound::Upper { hi: 7 * n / 5 },
    })
}

/// Analysis of `|a_k|` over a window of coefficient indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoefficientReport {
    pub poly: IntPolynomial,
    #[serde(serialize_with = "ser_bigints")]
    pub abs_seq: Vec<BigInt>,
    pub window: (usize, usize),
    pub positive: bool,
    pub unimodal: bool,
    /// Index where the sequence starts rising again after a descent.
    pub unimodal_violation: Option<usize>,
    pub log_concave: bool,
    pub log_concave_violations: Vec<usize>,
    pub peak_set: Vec<usize>,
    pub plateau: Option<(usize, usize)>,
    pub sign: Option<SignCheck>,
    pub bound: Option<PeakBound>,
    pub bound_ok: Option<bool>,
}

impl CoefficientReport {
    /// Every argmax index must lie in the bound.
    pub fn apply_bound(&mut self, bound: PeakBound) {
        self.bound = Some(bound);
        self.bound_ok = Some(self.peak_set.iter().all(|&k| bound.contains(k)));
    }

    pub fn with_sign(mut self, sign: SignCheck) -> Self {
        self.sign = Some(sign);
        self
    }

    pub fn peak_label(&self) -> String {
        let parts: Vec<String> = self.peak_set.iter().map(ToString::to_string).collect();
        parts.join(";")
    }
}

/// Unimodal means some `k` in the window with the sequence non-decreasing up
/// to `k` and non-increasing after it. Returns the first index where a rise
/// follows a descent.
pub fn unimodality(seq: &[BigInt]) -> Option<usize> {
    let last = seq.len().saturating_sub(1);
    let mut i = 0;
    while i < last && seq[i + 1] >= seq[i] {
        i += 1;
    }
    while i < last && seq[i + 1] <= seq[i] {
        i += 1;
    }
    (i < last).then_some(i)
}

/// Interior positions `i` with `s_i^2 < s_{i-1} s_{i+1}`.
pub fn log_concavity_violations(seq: &[BigInt]) -> Vec<usize> {
    (1..seq.len().saturating_sub(1))
        .filter(|&i| &seq[i] * &seq[i] < &seq[i - 1] * &seq[i + 1])
        .collect()
}

pub fn analyze(p: &IntPolynomial, window: RangeInclusive<usize>) -> Result<CoefficientReport> {
    let (lo, hi) = (*window.start(), *window.end());
    if window.is_empty() {
        return Err(SpectraError::EmptyWindow);
    }
    let degree = p.degree().unwrap_or(0);
    if hi > degree {
        return Err(SpectraError::WindowOutOfRange { lo, hi, degree });
    }
    let abs_seq: Vec<BigInt> = (0..=degree).map(|k| p.coeff(k).abs()).collect();
    let w = &abs_seq[lo..=hi];
    let max = w.iter().max().expect("nonempty window");
    let peak_set: Vec<usize> = (lo..=hi).filter(|&k| &abs_seq[k] == max).collect();
    let contiguous = peak_set.windows(2).all(|x| x[1] == x[0] + 1);
    let unimodal_violation = unimodality(w).map(|i| i + lo);
    let log_concave_violations: Vec<usize> = log_concavity_violations(w).into_iter().map(|i| i + lo).collect();
    Ok(CoefficientReport {
        poly: p.clone(),
        positive: w.iter().all(|x| x.is_positive()),
        unimodal: unimodal_violation.is_none(),
        unimodal_violation,
        log_concave: log_concave_violations.is_empty(),
        log_concave_violations,
        plateau: contiguous.then(|| (peak_set[0], peak_set[peak_set.len() - 1])),
        peak_set,
        abs_seq,
        window: (lo, hi),
        sign: None,
        bound: None,
        bound_ok: None,
    })
}

/// `0..=order-2`, the window for trace-zero restricted matrices.
pub fn trace_zero_window(order: usize) -> RangeInclusive<usize> {
    0..=order.saturating_sub(2)
}

/// `0..=order-1`; for a Steiner basis of size `2n-p-1` this is `0..=2n-p-2`.
pub fn full_window(order: usize) -> RangeInclusive<usize> {
    0..=order.saturating_sub(1)
}

/// `d_k = -c_k / 2^(n-k-2)` for `0 <= k <= n-2`, from the charpoly `c` of an
/// `n`-vertex tree distance matrix.
pub fn normalized_tree_coeffs(c: &IntPolynomial, n: usize) -> Vec<BigRational> {
    (0..=n.saturating_sub(2))
        .map(|k| {
            let denom = BigInt::one() << (n - k - 2);
            BigRational::new(-c.coeff(k), denom)
        })
        .collect()
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// `(x+2)^(n-3) g(x)` with
/// `g = x^3 - (2n-6)x^2 - (nd^2 - 5d^2 + 2nd - 2d + 5n - 9)x - 2(d-1)^2(n-1)`.
pub fn closed_form_min4pc(n: usize, d: usize) -> Result<IntPolynomial> {
    if n < 3 || d < 2 || d > n - 1 {
        return Err(SpectraError::BadParams(format!(
            "need n >= 3 and 2 <= d <= n-1, got n = {n}, d = {d}"
        )));
    }
    let (n, d) = (int(n as i64), int(d as i64));
    let one = BigInt::one();
    let g = IntPolynomial::new(vec![
        -(int(2) * (&d - &one) * (&d - &one) * (&n - &one)),
        -(&n * &d * &d - int(5) * &d * &d + int(2) * &n * &d - int(2) * &d + int(5) * &n - int(9)),
        -(int(2) * &n - int(6)),
        one,
    ]);
    let k = usize::try_from(&n - 3).expect("n >= 3");
    Ok(g.shift_power(&int(2), k))
}

/// `(x+1)^(n-3) (x^3 - 2(n-1)x^2 - 7(n-2)x - (n-1))`.
pub fn closed_form_star_steiner(n: usize) -> Result<IntPolynomial> {
    if n < 3 {
        return Err(SpectraError::BadParams(format!("need n >= 3, got {n}")));
    }
    let m = n as i64;
    let g = IntPolynomial::from_i64(&[-(m - 1), -7 * (m - 2), -2 * (m - 1), 1]);
    Ok(g.shift_power(&BigInt::one(), n - 3))
}

/// `(x+1)^(n-5) h_which(x)` for the two bi-star bases.
pub fn closed_form_bistar_steiner(n: usize, which: u8) -> Result<IntPolynomial> {
    if n < 6 {
        return Err(SpectraError::BadParams(format!("need n >= 6, got {n}")));
    }
    let m = n as i64;
    let h = match which {
        1 => [
            -(m - 1),
            -(13 * m - 28),
            -5 * (9 * m - 22),
            -18 * (3 * m - 7),
            -3 * (7 * m - 12),
            -2 * (m - 1),
            1,
        ],
        2 => [
            -(m - 1),
            -(15 * m - 34),
            -(53 * m - 133),
            -(62 * m - 141),
            -(21 * m - 22),
            -2 * (m - 1),
            1,
        ],
        _ => return Err(SpectraError::BadParams(format!("basis must be 1 or 2, got {which}"))),
    };
    Ok(IntPolynomial::from_i64(&h).shift_power(&BigInt::one(), n - 5))
}

/// Rows `k, a_k, |a_k|`.
pub fn coefficient_csv(p: &IntPolynomial) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "a_k", "abs_a_k"]).expect("in-memory write");
    for (k, c) in p.coeffs().iter().enumerate() {
        w.write_record([k.to_string(), c.to_string(), c.abs().to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourpc::{min4pc_basis, restricted_matrix, steiner_basis, MatrixKind};
    use crate::linalg::{charpoly, inertia};
    use crate::tree::{bistar, path, star, VertexPair};

    fn ip(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn seq(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn analyze_examples() {
        let r = analyze(&ip(&[-4, -6, 0, 1]), 0..=1).unwrap();
        assert_eq!(r.abs_seq[..2], seq(&[4, 6]));
        assert!(r.unimodal && r.log_concave);
        assert_eq!(r.peak_set, vec![1]);

        let flat = analyze(&ip(&[5, 5, 5, 5, 1]), 0..=3).unwrap();
        assert!(flat.unimodal);
        assert_eq!(flat.plateau, Some((0, 3)));

        assert_eq!(unimodality(&seq(&[1, 3, 2, 4])), Some(2));
        let bumpy = analyze(&ip(&[1, 3, 2, 4, 1]), 0..=3).unwrap();
        assert!(!bumpy.unimodal);
        assert_eq!(bumpy.unimodal_violation, Some(2));
        assert_eq!(bumpy.log_concave_violations, vec![2]);

        #[allow(clippy::reversed_empty_ranges)]
        let empty = 1..=0;
        assert_eq!(analyze(&ip(&[1, 1]), empty).unwrap_err(), SpectraError::EmptyWindow);
        assert!(matches!(
            analyze(&ip(&[1, 1]), 0..=2),
            Err(SpectraError::WindowOutOfRange { .. })
        ));
    }

    #[test]
    fn two_peaks_are_not_a_plateau() {
        let r = analyze(&ip(&[3, 1, 3, 1]), 0..=3).unwrap();
        assert_eq!(r.peak_set, vec![0, 2]);
        assert_eq!(r.plateau, None);
        assert!(!r.unimodal);
    }

    #[test]
    fn sign_checks() {
        let p3 = path(3).unwrap();
        let b = min4pc_basis(&p3, VertexPair::new(1, 3).unwrap()).unwrap();
        let m = restricted_matrix(&p3, MatrixKind::Min4pc, &b).unwrap();
        let p = charpoly(&m).unwrap();
        let s = sign_pattern_check(&p, inertia(&m).unwrap(), &m.trace().unwrap()).unwrap();
        assert_eq!(s.window, (0, 1));
        assert!(s.holds);
        assert!(p.coeff(2).is_zero());

        for n in 3..10 {
            let t = star(n).unwrap();
            let m = restricted_matrix(&t, MatrixKind::Steiner2, &steiner_basis(&t, None).unwrap()).unwrap();
            let p = charpoly(&m).unwrap();
            let s = sign_pattern_check(&p, inertia(&m).unwrap(), &m.trace().unwrap()).unwrap();
            assert_eq!(s.window, (0, n - 1));
            assert!(s.holds);
            assert_eq!(p.coeff(n - 1), BigInt::from(-(n as i64 + 1)));
        }

        let cube = IntPolynomial::monomial(3);
        assert!(matches!(
            sign_pattern_check(&cube, InertiaTriple::new(0, 0, 3), &BigRational::zero()),
            Err(SpectraError::PreconditionUnmet(_))
        ));
        let neg = BigRational::from_integer(BigInt::from(-1));
        assert!(matches!(
            sign_pattern_check(&ip(&[-1, 0, 1]), InertiaTriple::new(1, 1, 0), &neg),
            Err(SpectraError::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn closed_form_anchors() {
        assert_eq!(closed_form_min4pc(3, 2).unwrap(), ip(&[-4, -6, 0, 1]));
        assert_eq!(closed_form_star_steiner(3).unwrap(), ip(&[-2, -7, -4, 1]));
        for n in 3..15usize {
            for d in 2..n {
                let p = closed_form_min4pc(n, d).unwrap();
                assert!(p.coeff(n - 1).is_zero());
                let (m, dd) = (n as i64, d as i64);
                let a0 = BigInt::from(-2 * (dd - 1) * (dd - 1) * (m - 1)) << (n - 3);
                assert_eq!(p.coeff(0), a0);
            }
            let s = closed_form_star_steiner(n).unwrap();
            let m = n as i64;
            assert_eq!(s.coeff(0), BigInt::from(-(m - 1)));
            assert_eq!(s.coeff(1), BigInt::from(-(m * m + 3 * m - 11)));
        }
        for n in 6..15usize {
            let h1 = closed_form_bistar_steiner(n, 1).unwrap();
            assert_eq!(h1.coeff(0), BigInt::from(-(n as i64 - 1)));
            assert_eq!(h1.coeff(n), BigInt::from(-(n as i64 + 3)));
            assert_eq!(h1.degree(), Some(n + 1));
        }
        assert!(closed_form_min4pc(5, 1).is_err());
        assert!(closed_form_min4pc(5, 5).is_err());
        assert!(closed_form_star_steiner(2).is_err());
        assert!(closed_form_bistar_steiner(5, 1).is_err());
        assert!(closed_form_bistar_steiner(7, 3).is_err());
    }

    #[test]
    fn bistar_b2_direct_at_six() {
        let t = bistar(6).unwrap();
        let b2 = steiner_basis(&t, Some(&[(0, 1), (2, 3)])).unwrap();
        let m = restricted_matrix(&t, MatrixKind::Steiner2, &b2).unwrap();
        assert_eq!(charpoly(&m).unwrap(), closed_form_bistar_steiner(6, 2).unwrap());
    }

    #[test]
    fn bound_examples() {
        assert_eq!(
            peak_bound(PeakFamily::Min4pc, 9).unwrap(),
            PeakBound::Interval { lo: 2, hi: 4 }
        );
        assert_eq!(
            peak_bound(PeakFamily::Star, 10).unwrap(),
            PeakBound::Interval { lo: 4, hi: 5 }
        );
        assert_eq!(peak_bound(PeakFamily::Path, 10).unwrap(), PeakBound::Upper { hi: 14 });
        assert_eq!(
            peak_bound(PeakFamily::Min4pc, 7).unwrap_err(),
            SpectraError::OutOfValidityRange {
                family: PeakFamily::Min4pc,
                n: 7,
                min: 8
            }
        );
        let mut r = analyze(&ip(&[1, 2, 3, 3, 1]), 0..=3).unwrap();
        r.apply_bound(PeakBound::Interval { lo: 2, hi: 2 });
        assert_eq!(r.bound_ok, Some(false));
        r.apply_bound(PeakBound::Interval { lo: 2, hi: 3 });
        assert_eq!(r.bound_ok, Some(true));
    }

    #[test]
    fn normalized_coefficients() {
        let d = normalized_tree_coeffs(&ip(&[-1, 0, 1]), 2);
        assert_eq!(d, vec![BigRational::one()]);
        let p3 = crate::tree::path(3).unwrap().distance_matrix();
        let c = charpoly(&p3).unwrap();
        assert_eq!(c, ip(&[-4, -6, 0, 1]));
        let d = normalized_tree_coeffs(&c, 3);
        assert_eq!(
            d,
            vec![
                BigRational::from_integer(BigInt::from(2)),
                BigRational::from_integer(BigInt::from(6))
            ]
        );
    }

    #[test]
    fn csv_rows() {
        let csv = coefficient_csv(&ip(&[-4, -6, 0, 1]));
        assert_eq!(csv, "k,a_k,abs_a_k\n0,-4,4\n1,-6,6\n2,0,0\n3,1,1\n");
    }

    #[test]
    fn report_serializes_strings() {
        let r = analyze(&ip(&[-4, -6, 0, 1]), 0..=1).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["abs_seq"][1], "6");
        assert_eq!(v["poly"][0], "-4");
    }
}
