//! Theorem-suite drivers: per-tree checks, family checks, and sweeps.
//!
//! Every check becomes a [`CheckEntry`]; nothing here panics on a failed
//! claim, so a sweep always runs to completion and reports what it found.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::embed::{
    hypermetric_spot_check, triangle_check, verify_embedding, EmbedError, SpotCheckConfig, SpotCheckMode,
};
use crate::fourpc::{
    min4pc_basis, non_edges, path_ordered_basis, restricted_matrix, steiner_basis, steiner_v, FourPcError, MatrixKind,
    PairBasis, PairMatrix,
};
use crate::linalg::{
    charpoly, determinant, equitable_quotient, inertia_from_charpoly, rank, schur_complement, ExactMatrix,
    IntPolynomial, LinalgError,
};
use crate::path_steiner::{
    build_path_instance, path_coefficient_facts, path_peak_bound_detail, principal_minor_scan, verify_inverse_formula,
    PathError,
};
use crate::report::{aggregate, inputs, CheckEntry, Inputs};
use crate::spectra::{
    analyze, closed_form_bistar_steiner, closed_form_min4pc, closed_form_star_steiner, full_window, peak_bound,
    sign_pattern_check, trace_zero_window, validity_min, CoefficientReport, PeakFamily, SpectraError,
};
use crate::tree::{bistar, path, star, Tree, TreeError, VertexPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    FourPc(#[from] FourPcError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

pub type Result<T, E = SuiteError> = std::result::Result<T, E>;

/// Which Min4PC bases to check on a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FChoice {
    /// The first non-edge in lexicographic order.
    Default,
    Given(VertexPair),
    Every,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpotOptions {
    pub trials: usize,
    pub seed: u64,
    pub entry_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteOptions {
    pub f: FChoice,
    /// Steiner block choices as 0-based edge-index pairs; `None` is the default.
    pub choices: Option<Vec<(usize, usize)>>,
    pub spot: Option<SpotOptions>,
    /// Ranks and full-matrix inertia run only up to this `n`.
    pub full_max_n: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            f: FChoice::Default,
            choices: None,
            spot: None,
            full_max_n: 7,
        }
    }
}

/// `"1-2 2-3 ..."`, the edge list in input order.
pub fn tree_label(t: &Tree) -> String {
    let parts: Vec<String> = t.edges().iter().map(VertexPair::label).collect();
    parts.join(" ")
}

fn tree_inputs(t: &Tree) -> Inputs {
    inputs([("n", t.n().to_string()), ("tree", tree_label(t))])
}

fn coeff_list(p: &IntPolynomial) -> String {
    p.to_decimal_strings().join(",")
}

fn window_label(r: &CoefficientReport) -> String {
    format!("{}..{}", r.window.0, r.window.1)
}

/// Unimodality, log-concavity, and sign entries shared by every restricted matrix.
fn shape_checks(prefix: &str, ins: &Inputs, report: &CoefficientReport) -> Vec<CheckEntry> {
    let mut out = Vec::with_capacity(3);
    let mut ins = ins.clone();
    ins.insert("window".into(), window_label(report));
    if let Some(sign) = &report.sign {
        out.push(CheckEntry::outcome(
            &format!("{prefix}.sign"),
            &ins,
            format!("a_k < 0 for k in {}..{}", sign.window.0, sign.window.1),
            if sign.holds {
                "holds".to_string()
            } else {
                format!("non-negative at {:?}", sign.violations)
            },
            sign.holds,
        ));
    }
    out.push(CheckEntry::outcome(
        &format!("{prefix}.unimodal"),
        &ins,
        "unimodal",
        match report.unimodal_violation {
            None => format!("unimodal, peak {}", report.peak_label()),
            Some(k) => format!("rises again after index {k}"),
        },
        report.unimodal && report.positive,
    ));
    out.push(CheckEntry::outcome(
        &format!("{prefix}.log_concave"),
        &ins,
        "log-concave",
        if report.log_concave {
            "log-concave".to_string()
        } else {
            format!("violated at {:?}", report.log_concave_violations)
        },
        report.log_concave,
    ));
    out
}

fn peak_entry(id: &str, ins: &Inputs, family: PeakFamily, n: usize, report: &mut CoefficientReport) -> CheckEntry {
    let computed = format!("peak {}", report.peak_label());
    match peak_bound(family, n) {
        Ok(bound) => {
            report.apply_bound(bound);
            CheckEntry::outcome(id, ins, bound, computed, report.bound_ok == Some(true))
        }
        Err(_) => CheckEntry::info(
            id,
            ins,
            format!("asserted only for n >= {}", validity_min(family)),
            computed,
        ),
    }
}

/// Runs the coefficient analysis and sign check on a charpoly.
fn analyze_with_sign(
    p: &IntPolynomial,
    window: std::ops::RangeInclusive<usize>,
    trace: &BigRational,
) -> Result<CoefficientReport> {
    let report = analyze(p, window)?;
    let inertia = inertia_from_charpoly(p);
    Ok(match sign_pattern_check(p, inertia, trace) {
        Ok(sign) => report.with_sign(sign),
        Err(_) => report,
    })
}

fn trace_of(m: &ExactMatrix) -> Result<BigRational> {
    Ok(m.trace()?)
}

/// `-(d-1)^2 (n-1) / (2(n-2))`, the Schur complement of the edge block.
pub fn expected_schur(n: usize, d: usize) -> BigRational {
    let (n, d) = (BigInt::from(n), BigInt::from(d));
    let dm1: BigInt = &d - 1;
    let num: BigInt = -(&dm1 * &dm1) * (&n - 1);
    BigRational::new(num, BigInt::from(2) * (&n - 2))
}

/// Checks on `Min4PC[B,B]` for one basis `B = E + {f}`.
pub fn min4pc_checks(t: &Tree, f: VertexPair) -> Result<Vec<CheckEntry>> {
    let n = t.n();
    let basis = min4pc_basis(t, f)?;
    let d = t.pair_distance(f) as usize;
    let mut ins = tree_inputs(t);
    ins.insert("f".into(), f.label());
    ins.insert("d".into(), d.to_string());
    let m = restricted_matrix(t, MatrixKind::Min4pc, &basis)?;
    let p = charpoly(&m)?;
    let mut out = Vec::new();

    out.push(CheckEntry::compare(
        "min4pc.inertia",
        &ins,
        format!("(1, {}, 0)", n - 1),
        inertia_from_charpoly(&p),
    ));
    out.push(CheckEntry::compare(
        "min4pc.charpoly",
        &ins,
        coeff_list(&closed_form_min4pc(n, d)?),
        coeff_list(&p),
    ));

    let edges: Vec<usize> = (0..n - 1).collect();
    let schur = schur_complement(&m, &edges)?;
    out.push(CheckEntry::compare(
        "min4pc.schur",
        &ins,
        expected_schur(n, d),
        schur.get(0, 0),
    ));

    // on-path edges, off-path edges, f
    let on_path: Vec<usize> = t.path_edge_set(f).iter().collect();
    let off_path: Vec<usize> = edges.iter().copied().filter(|e| !on_path.contains(e)).collect();
    let mut partition = vec![on_path];
    let mut expected_row = vec![2 * (d - 1)];
    if !off_path.is_empty() {
        partition.push(off_path);
        expected_row.push(2 * (n - d - 1));
    }
    partition.push(vec![n - 1]);
    expected_row.push(d - 1);
    out.push(quotient_entry(
        "min4pc.quotient",
        &ins,
        &m,
        &p,
        &partition,
        &expected_row,
    ));

    let mut report = analyze_with_sign(&p, trace_zero_window(n), &trace_of(&m)?)?;
    out.extend(shape_checks("min4pc", &ins, &report));
    out.push(peak_entry(
        "min4pc.peak_bound",
        &ins,
        PeakFamily::Min4pc,
        n,
        &mut report,
    ));
    Ok(out)
}

/// First quotient row equals `expected_row`, and the quotient charpoly divides `p`.
fn quotient_entry(
    id: &str,
    ins: &Inputs,
    m: &ExactMatrix,
    p: &IntPolynomial,
    partition: &[Vec<usize>],
    expected_row: &[usize],
) -> CheckEntry {
    let expected = format!(
        "first row {}; divides charpoly",
        expected_row
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    let q = match equitable_quotient(m, partition) {
        Ok(q) => q,
        Err(e) => return CheckEntry::outcome(id, ins, expected, e, false),
    };
    let row: Vec<String> = q.row(0).iter().map(ToString::to_string).collect();
    let row_ok = row
        .iter()
        .eq(expected_row.iter().map(ToString::to_string).collect::<Vec<_>>().iter());
    let divides = charpoly(&q).ok().and_then(|qp| qp.divides(p).ok()).unwrap_or(false);
    CheckEntry::outcome(
        id,
        ins,
        expected,
        format!(
            "first row {}; {}",
            row.join(","),
            if divides { "divides charpoly" } else { "does not divide" }
        ),
        row_ok && divides,
    )
}

fn choices_label(basis: &PairBasis) -> String {
    basis
        .choices()
        .map(|cs| {
            cs.iter()
                .map(|c| format!("{}:{}", c.center, c.f.label()))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .unwrap_or_default()
}

/// Restricted 2-Steiner matrix and its charpoly for a Steiner basis.
pub fn steiner_restricted(
    t: &Tree,
    choices: Option<&[(usize, usize)]>,
) -> Result<(PairBasis, ExactMatrix, IntPolynomial)> {
    let basis = steiner_basis(t, choices)?;
    let m = restricted_matrix(t, MatrixKind::Steiner2, &basis)?;
    let p = charpoly(&m)?;
    Ok((basis, m, p))
}

/// Checks on `D2[B,B]` for a Steiner basis.
pub fn steiner_checks(t: &Tree, choices: Option<&[(usize, usize)]>) -> Result<Vec<CheckEntry>> {
    let n = t.n();
    let leaves = t.leaf_count();
    let (basis, m, p) = steiner_restricted(t, choices)?;
    let mut ins = tree_inputs(t);
    ins.insert("choices".into(), choices_label(&basis));
    let mut out = Vec::new();
    out.push(CheckEntry::compare(
        "steiner.inertia",
        &ins,
        format!("(1, {}, 0)", 2 * n - leaves - 2),
        inertia_from_charpoly(&p),
    ));
    out.push(match steiner_v(t, &basis) {
        Ok(v) => CheckEntry::outcome(
            "steiner.v_vector",
            &ins,
            format!("1'v = 1 and Dv = {}1", n - 1),
            format!(
                "v = ({})",
                v.values.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
            ),
            true,
        ),
        Err(e) => CheckEntry::outcome(
            "steiner.v_vector",
            &ins,
            format!("1'v = 1 and Dv = {}1", n - 1),
            e,
            false,
        ),
    });
    let report = analyze_with_sign(&p, full_window(basis.len()), &trace_of(&m)?)?;
    out.extend(shape_checks("steiner", &ins, &report));
    Ok(out)
}

/// Full-matrix ranks and the single positive eigenvalue of full Min4PC.
pub fn full_matrix_checks(t: &Tree) -> Result<Vec<CheckEntry>> {
    let n = t.n();
    let ins = tree_inputs(t);
    let min = PairMatrix::build(t, MatrixKind::Min4pc)?.to_exact();
    let steiner = PairMatrix::build(t, MatrixKind::Steiner2)?.to_exact();
    let min_p = charpoly(&min)?;
    let full_inertia = inertia_from_charpoly(&min_p);
    Ok(vec![
        CheckEntry::compare("min4pc.rank", &ins, n, rank(&min)),
        CheckEntry::compare("steiner.rank", &ins, 2 * n - t.leaf_count() - 1, rank(&steiner)),
        CheckEntry::outcome(
            "min4pc.full_positive_eigenvalues",
            &ins,
            1,
            full_inertia,
            full_inertia.n_plus == 1,
        ),
    ])
}

/// `l1` embedding, triangle inequality, and optional seeded spot checks.
pub fn embedding_checks(t: &Tree, spot: Option<SpotOptions>) -> Result<Vec<CheckEntry>> {
    let ins = tree_inputs(t);
    let emb = verify_embedding(t);
    let mut out = vec![CheckEntry::outcome(
        "embed.l1",
        &ins,
        "Min4PC(p,q) = |phi_p - phi_q|_1 for all pairs",
        match &emb.first_violation {
            None => format!("{} pair-pairs agree", emb.pairs_checked),
            Some(v) => format!("{v:?}"),
        },
        emb.holds,
    )];
    let table = PairMatrix::build(t, MatrixKind::Min4pc)?;
    let tri = triangle_check(&table)?;
    out.push(CheckEntry::outcome(
        "embed.triangle",
        &ins,
        "triangle inequality",
        match tri.witness {
            None => "holds".to_string(),
            Some(w) => format!("violated at {w:?}"),
        },
        tri.holds,
    ));
    if let Some(s) = spot {
        for (id, mode) in [
            ("embed.hypermetric", SpotCheckMode::Hypermetric),
            ("embed.negative_type", SpotCheckMode::NegativeType),
        ] {
            let config = SpotCheckConfig {
                mode,
                trials: s.trials,
                seed: s.seed,
                entry_bound: s.entry_bound,
            };
            let r = hypermetric_spot_check(&table, config)?;
            let mut ins = ins.clone();
            ins.insert("trials".into(), s.trials.to_string());
            ins.insert("seed".into(), s.seed.to_string());
            ins.insert("bound".into(), s.entry_bound.to_string());
            out.push(CheckEntry::outcome(
                id,
                &ins,
                "form <= 0",
                format!("max {} over {} draws ({} rejected)", r.worst, r.accepted, r.rejected),
                r.holds && r.accepted == s.trials,
            ));
        }
    }
    Ok(out)
}

/// Everything that applies to an arbitrary tree.
pub fn tree_checks(t: &Tree, opts: &SuiteOptions) -> Result<Vec<CheckEntry>> {
    let mut out = Vec::new();
    if t.n() >= 3 {
        let fs = match &opts.f {
            FChoice::Default => non_edges(t).into_iter().take(1).collect(),
            FChoice::Given(f) => vec![*f],
            FChoice::Every => non_edges(t),
        };
        for f in fs {
            out.extend(min4pc_checks(t, f)?);
        }
        out.extend(steiner_checks(t, opts.choices.as_deref())?);
        if t.n() <= opts.full_max_n {
            out.extend(full_matrix_checks(t)?);
        }
    }
    out.extend(embedding_checks(t, opts.spot)?);
    Ok(out)
}

/// Star closed form, peak bound, and the quotient on `{e_1,e_2}`, rest, `{f}`.
pub fn star_checks(n: usize) -> Result<Vec<CheckEntry>> {
    let t = star(n)?;
    let (basis, m, p) = steiner_restricted(&t, None)?;
    let ins = inputs([("n", n.to_string()), ("family", "star".into())]);
    let mut out = vec![CheckEntry::compare(
        "star.charpoly",
        &ins,
        coeff_list(&closed_form_star_steiner(n)?),
        coeff_list(&p),
    )];
    let mut report = analyze_with_sign(&p, full_window(basis.len()), &trace_of(&m)?)?;
    out.push(peak_entry("star.peak_bound", &ins, PeakFamily::Star, n, &mut report));
    let mut partition = vec![vec![0, 1]];
    let mut expected_row = vec![3];
    if n > 3 {
        partition.push((2..n - 1).collect());
        expected_row.push(2 * (n - 3));
    }
    partition.push(vec![n - 1]);
    expected_row.push(2);
    out.push(quotient_entry("star.quotient", &ins, &m, &p, &partition, &expected_row));
    Ok(out)
}

/// Block choices giving the second bistar basis.
pub const BISTAR_B2: [(usize, usize); 2] = [(0, 1), (2, 3)];

/// Both bistar bases: closed forms and peak bounds.
pub fn bistar_checks(n: usize) -> Result<Vec<CheckEntry>> {
    let t = bistar(n)?;
    let mut out = Vec::new();
    for (which, choices) in [(1u8, None), (2u8, Some(&BISTAR_B2[..]))] {
        let (basis, m, p) = steiner_restricted(&t, choices)?;
        let ins = inputs([
            ("n", n.to_string()),
            ("family", "bistar".into()),
            ("basis", format!("B{which}")),
            ("choices", choices_label(&basis)),
        ]);
        out.push(CheckEntry::compare(
            &format!("bistar.b{which}.charpoly"),
            &ins,
            coeff_list(&closed_form_bistar_steiner(n, which)?),
            coeff_list(&p),
        ));
        let mut report = analyze_with_sign(&p, full_window(basis.len()), &trace_of(&m)?)?;
        out.push(peak_entry(
            &format!("bistar.b{which}.peak_bound"),
            &ins,
            PeakFamily::Bistar,
            n,
            &mut report,
        ));
    }
    Ok(out)
}

/// Determinant, inverse formula, principal minors, coefficient facts, peak
/// bound, inertia, and agreement of the two construction routes.
pub fn path_checks(n: usize) -> Result<Vec<CheckEntry>> {
    let inst = build_path_instance(n)?;
    let ins = inputs([("n", n.to_string()), ("family", "path".into())]);
    let mut out = vec![
        CheckEntry::compare("path.det", &ins, n - 1, determinant(&inst.matrix)?),
        CheckEntry::outcome(
            "path.inverse",
            &ins,
            "D(-L + vv'/(n-1)) = I",
            "checked exactly",
            verify_inverse_formula(&inst),
        ),
    ];
    let minors = principal_minor_scan(&inst)?;
    let bad: Vec<String> = minors
        .iter()
        .filter(|e| !e.ok)
        .map(|e| format!("{}={}", e.element, e.det))
        .collect();
    out.push(CheckEntry::outcome(
        "path.minors",
        &ins,
        format!("-{} on pendant edges, -{} elsewhere", n - 1, 2 * n - 3),
        if bad.is_empty() {
            format!("{} minors match", minors.len())
        } else {
            bad.join(" ")
        },
        bad.is_empty(),
    ));
    let facts = path_coefficient_facts(&inst, &minors)?;
    let m = n as i64;
    out.push(CheckEntry::compare("path.a0", &ins, m - 1, facts.a0.magnitude()));
    out.push(CheckEntry::compare(
        "path.a1",
        &ins,
        4 * m * m - 14 * m + 13,
        facts.a1.magnitude(),
    ));
    out.push(CheckEntry::compare(
        "path.a_2n_minus_4",
        &ins,
        3 * m - 5,
        facts.a_2n_minus_4.magnitude(),
    ));
    out.push(CheckEntry::compare(
        "path.a1_minor_sum",
        &ins,
        &facts.minor_sum,
        &facts.a1,
    ));
    let detail = path_peak_bound_detail(n)?;
    out.push(CheckEntry::outcome(
        "path.peak_bound",
        &ins,
        format!("peak <= {}", detail.bound),
        format!("peak {}", facts.report.peak_label()),
        facts.report.bound_ok == Some(true),
    ));
    out.push(CheckEntry::outcome(
        "path.f_below",
        &ins,
        format!("f(n) < {}", detail.seven_n_over_five),
        format!("f(n) = {}", detail.f_n),
        detail.f_below,
    ));
    out.push(CheckEntry::compare(
        "path.inertia",
        &ins,
        format!("(1, {}, 0)", 2 * n - 4),
        inertia_from_charpoly(&facts.charpoly),
    ));
    let t = path(n)?;
    let generic = restricted_matrix(&t, MatrixKind::Steiner2, &path_ordered_basis(&t)?)?;
    out.push(CheckEntry::outcome(
        "path.routes_agree",
        &ins,
        "interval construction equals generic pipeline",
        if generic == inst.matrix { "equal" } else { "differ" },
        generic == inst.matrix,
    ));
    let ones = ExactMatrix::ones_vector(inst.order());
    let l1 = inst.laplacian.mul(&ones)?;
    out.push(CheckEntry::outcome(
        "path.laplacian_kernel",
        &ins,
        "L1 = 0",
        if l1 == ExactMatrix::zeros(inst.order(), 1) {
            "L1 = 0"
        } else {
            "L1 != 0"
        },
        l1 == ExactMatrix::zeros(inst.order(), 1),
    ));
    Ok(out)
}

/// Tree-level checks over many trees, aggregated per `(id, n)`. Trees are
/// processed in parallel; entry order follows the input order.
pub fn sweep(trees: &[Tree], opts: &SuiteOptions) -> Result<Vec<CheckEntry>> {
    let per_tree: Vec<Vec<CheckEntry>> = trees.par_iter().map(|t| tree_checks(t, opts)).collect::<Result<_>>()?;
    Ok(aggregate(per_tree.into_iter().flatten().collect()))
}

/// Wall-clock helper for callers that report timings.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, std::time::Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{enumerate_labeled_trees, random_tree};

    fn all_pass(entries: &[CheckEntry]) {
        for e in entries {
            assert!(!e.failed(), "{e:?}");
        }
    }

    #[test]
    fn schur_formula_at_d2() {
        // d = 2 reduces to -(n-1)/(2(n-2))
        for n in 3..12 {
            assert_eq!(
                expected_schur(n, 2),
                BigRational::new(-BigInt::from(n - 1), BigInt::from(2 * (n - 2)))
            );
        }
        assert_eq!(expected_schur(3, 2), BigRational::from_integer(BigInt::from(-1)));
    }

    #[test]
    fn p3_min4pc_entries() {
        let t = path(3).unwrap();
        let f = VertexPair::new(1, 3).unwrap();
        let e = min4pc_checks(&t, f).unwrap();
        all_pass(&e);
        let cp = e.iter().find(|c| c.id == "min4pc.charpoly").unwrap();
        assert_eq!(cp.computed, "-4,-6,0,1");
        let schur = e.iter().find(|c| c.id == "min4pc.schur").unwrap();
        assert_eq!(schur.computed, "-1");
        // peak bound is computed but not asserted below n = 8
        let peak = e.iter().find(|c| c.id == "min4pc.peak_bound").unwrap();
        assert_eq!(peak.pass, None);
    }

    #[test]
    fn every_f_on_small_trees() {
        let opts = SuiteOptions {
            f: FChoice::Every,
            ..SuiteOptions::default()
        };
        for n in 3..=5 {
            let trees: Vec<Tree> = enumerate_labeled_trees(n).unwrap().collect();
            all_pass(&sweep(&trees, &opts).unwrap());
        }
    }

    #[test]
    fn quotient_handles_spanning_f() {
        // f spans the whole path, so the off-path block is empty
        let t = path(6).unwrap();
        let e = min4pc_checks(&t, VertexPair::new(1, 6).unwrap()).unwrap();
        let q = e.iter().find(|c| c.id == "min4pc.quotient").unwrap();
        assert_eq!(q.pass, Some(true), "{q:?}");
        assert!(q.computed.starts_with("first row 8,4;"));
    }

    #[test]
    fn families_pass() {
        for n in 3..=8 {
            all_pass(&star_checks(n).unwrap());
            all_pass(&path_checks(n).unwrap());
        }
        for n in 6..=8 {
            all_pass(&bistar_checks(n).unwrap());
        }
    }

    #[test]
    fn spot_checks_and_random_tree() {
        let t = random_tree(8, 11).unwrap();
        let opts = SuiteOptions {
            spot: Some(SpotOptions {
                trials: 200,
                seed: 3,
                entry_bound: 3,
            }),
            full_max_n: 8,
            ..SuiteOptions::default()
        };
        let e = tree_checks(&t, &opts).unwrap();
        all_pass(&e);
        assert!(e.iter().any(|c| c.id == "embed.hypermetric"));
        assert!(e.iter().any(|c| c.id == "min4pc.rank"));
        let peak = e.iter().find(|c| c.id == "min4pc.peak_bound").unwrap();
        assert_eq!(peak.pass, Some(true));
    }

    #[test]
    fn bad_quotient_is_reported_not_raised() {
        let t = star(5).unwrap();
        let (_, m, p) = steiner_restricted(&t, None).unwrap();
        let e = quotient_entry("x", &Inputs::new(), &m, &p, &[vec![0], vec![1, 2, 3, 4]], &[1]);
        assert_eq!(e.pass, Some(false));
    }
}
