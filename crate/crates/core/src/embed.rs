//! Path-incidence embedding of vertex pairs into `{0,1}^(n-1)`, and metric
//! checks on pair-indexed tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::fourpc::{min4pc_entry, MatrixKind, PairMatrix};
use crate::tree::{all_pairs, Tree, VertexPair};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("vectors have lengths {0} and {1}")]
    LengthMismatch(usize, usize),
    #[error("table is not a symmetric zero-diagonal table")]
    NotADistanceTable,
    #[error("entry bound must be positive")]
    ZeroBound,
}

pub type Result<T, E = EmbedError> = std::result::Result<T, E>;

/// `phi(p)` for every pair `p`: coordinate `i` is 1 iff `e_{i+1}` lies on the path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub dim: usize,
    pub pairs: Vec<VertexPair>,
    pub vectors: Vec<Vec<u8>>,
}

impl Embedding {
    pub fn vector(&self, p: VertexPair) -> Option<&[u8]> {
        let k = self.pairs.iter().position(|&q| q == p)?;
        Some(&self.vectors[k])
    }

    /// Rows are edges `e_i`, columns are pairs `phi_ij`.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.pairs.iter().map(|p| format!("phi_{}{}", p.lo(), p.hi())));
        w.write_record(&header).expect("in-memory write");
        for e in 0..self.dim {
            let mut rec = vec![format!("e{}", e + 1)];
            rec.extend(self.vectors.iter().map(|v| v[e].to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }
}

pub fn embed(t: &Tree) -> Embedding {
    let dim = t.edge_count();
    let pairs = all_pairs(t.n());
    let vectors = pairs
        .iter()
        .map(|&p| {
            let set = t.path_edge_set(p);
            (0..dim).map(|e| u8::from(set.contains(e))).collect()
        })
        .collect();
    Embedding { dim, pairs, vectors }
}

/// Hamming distance of two 0/1 vectors.
pub fn l1_distance(u: &[u8], v: &[u8]) -> Result<u64> {
    if u.len() != v.len() {
        return Err(EmbedError::LengthMismatch(u.len(), v.len()));
    }
    Ok(u.iter().zip(v).filter(|(a, b)| a != b).count() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingViolation {
    pub p: VertexPair,
    pub q: VertexPair,
    pub min4pc: i64,
    pub l1: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EmbeddingCheck {
    pub holds: bool,
    pub pairs_checked: usize,
    pub first_violation: Option<EmbeddingViolation>,
}

/// `Min4PC(p, q) = |phi(p) - phi(q)|_1` for every two pairs.
pub fn verify_embedding(t: &Tree) -> EmbeddingCheck {
    let emb = embed(t);
    let m = emb.pairs.len();
    let mut checked = 0;
    for a in 0..m {
        for b in 0..m {
            checked += 1;
            let (p, q) = (emb.pairs[a], emb.pairs[b]);
            let l1 = l1_distance(&emb.vectors[a], &emb.vectors[b]).expect("same dimension");
            let min4pc = min4pc_entry(t, p, q);
            if min4pc != l1 as i64 {
                return EmbeddingCheck {
                    holds: false,
                    pairs_checked: checked,
                    first_violation: Some(EmbeddingViolation { p, q, min4pc, l1 }),
                };
            }
        }
    }
    EmbeddingCheck {
        holds: true,
        pairs_checked: checked,
        first_violation: None,
    }
}

/// Square integer table read by the metric checks.
pub trait SymmetricTable {
    fn size(&self) -> usize;
    fn value(&self, a: usize, b: usize) -> i64;

    fn is_distance_table(&self) -> bool {
        let k = self.size();
        (0..k).all(|a| self.value(a, a) == 0 && (0..a).all(|b| self.value(a, b) == self.value(b, a)))
    }
}

impl SymmetricTable for PairMatrix {
    fn size(&self) -> usize {
        self.order()
    }

    fn value(&self, a: usize, b: usize) -> i64 {
        self.entry(a, b)
    }
}

impl SymmetricTable for Vec<Vec<i64>> {
    fn size(&self) -> usize {
        self.len()
    }

    fn value(&self, a: usize, b: usize) -> i64 {
        self[a][b]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TriangleCheck {
    pub holds: bool,
    /// `(a, b, c)` with `M(a,c) > M(a,b) + M(b,c)`.
    pub witness: Option<(usize, usize, usize)>,
}

pub fn triangle_check<T: SymmetricTable + ?Sized>(m: &T) -> Result<TriangleCheck> {
    if !m.is_distance_table() {
        return Err(EmbedError::NotADistanceTable);
    }
    let k = m.size();
    for a in 0..k {
        for c in a + 1..k {
            let direct = m.value(a, c);
            for b in 0..k {
                if direct > m.value(a, b) + m.value(b, c) {
                    return Ok(TriangleCheck {
                        holds: false,
                        witness: Some((a, b, c)),
                    });
                }
            }
        }
    }
    Ok(TriangleCheck {
        holds: true,
        witness: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpotCheckMode {
    /// Integer `x` with `sum x = 1`.
    Hypermetric,
    /// Integer `x` with `sum x = 0`.
    NegativeType,
}

impl SpotCheckMode {
    fn target(self) -> i64 {
        match self {
            SpotCheckMode::Hypermetric => 1,
            SpotCheckMode::NegativeType => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpotCheckConfig {
    pub mode: SpotCheckMode,
    pub trials: usize,
    pub seed: u64,
    pub entry_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpotCheckResult {
    pub config: SpotCheckConfig,
    pub holds: bool,
    /// Largest form value seen over accepted trials.
    pub worst: i128,
    pub worst_x: Vec<i64>,
    pub accepted: usize,
    pub rejected: usize,
}

/// `sum_{a<b} x_a x_b M(a,b)`.
pub fn quadratic_form<T: SymmetricTable + ?Sized>(m: &T, x: &[i64]) -> i128 {
    let mut total = 0i128;
    for a in 0..x.len() {
        if x[a] == 0 {
            continue;
        }
        for b in a + 1..x.len() {
            total += i128::from(x[a]) * i128::from(x[b]) * i128::from(m.value(a, b));
        }
    }
    total
}

/// Draws `x` with entries uniform in `[-bound, bound]` and sets the last one
/// so that the sum hits the mode's target; draws whose last entry falls
/// outside the bound are rejected and counted.
pub fn sample_vector(rng: &mut ChaCha8Rng, len: usize, mode: SpotCheckMode, bound: i64) -> Option<Vec<i64>> {
    let mut x: Vec<i64> = (0..len).map(|_| rng.gen_range(-bound..=bound)).collect();
    let rest: i64 = x[..len - 1].iter().sum();
    let last = mode.target() - rest;
    if last.abs() > bound {
        return None;
    }
    x[len - 1] = last;
    Some(x)
}

/// Seeded random spot check of the hypermetric (or negative-type) inequality.
/// Stops after `trials` accepted draws, or `1000 * trials` attempts.
pub fn hypermetric_spot_check<T: SymmetricTable + ?Sized>(m: &T, config: SpotCheckConfig) -> Result<SpotCheckResult> {
    if !m.is_distance_table() {
        return Err(EmbedError::NotADistanceTable);
    }
    if config.entry_bound <= 0 {
        return Err(EmbedError::ZeroBound);
    }
    let len = m.size();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut result = SpotCheckResult {
        config,
        holds: true,
        worst: i128::MIN,
        worst_x: Vec::new(),
        accepted: 0,
        rejected: 0,
    };
    let max_attempts = config.trials.saturating_mul(1000);
    while result.accepted < config.trials && result.accepted + result.rejected < max_attempts {
        let Some(x) = sample_vector(&mut rng, len, config.mode, config.entry_bound) else {
            result.rejected += 1;
            continue;
        };
        result.accepted += 1;
        let value = quadratic_form(m, &x);
        if value > result.worst {
            result.worst = value;
            result.worst_x = x;
        }
    }
    result.holds = result.worst <= 0;
    Ok(result)
}

/// Full Min4PC matrix; convenience for the spot checks.
pub fn min4pc_table(t: &Tree) -> PairMatrix {
    PairMatrix::build(t, MatrixKind::Min4pc).expect("caller keeps n within the full-matrix cap")
}
