//! Pair-indexed matrices of a tree: Min4PC, Max4PC and the 2-Steiner matrix,
//! their row-space bases, restrictions, and the Steiner v-vector.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::ExactMatrix;
use crate::tree::{all_pairs, pair_position, Tree, TreeError, Vertex, VertexPair};

/// Full pair matrices are only materialized up to this many vertices.
pub const FULL_MATRIX_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FourPcError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("full pair matrix capped at n = {cap}, got {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("{0} is an edge of the tree")]
    FIsAnEdge(VertexPair),
    #[error("{f} has distance {d}, need at least 2")]
    DistanceTooSmall { f: VertexPair, d: u32 },
    #[error("tree on {0} vertices has no non-edge")]
    NoNonEdgeExists(usize),
    #[error("bad choice for block {block}: {reason}")]
    BadChoice { block: usize, reason: String },
    #[error("expected {expected} block choices, got {found}")]
    WrongChoiceCount { expected: usize, found: usize },
    #[error("pair {0} is not in the matrix index")]
    PairNotFound(VertexPair),
    #[error("tree is not the path 1-2-...-n with e_i = {{i, i+1}}")]
    NotCanonicalPath,
    #[error("basis carries no block choices")]
    NotASteinerBasis,
    #[error("v-vector identity failed: {0}")]
    VInvariant(String),
}

pub type Result<T, E = FourPcError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Min4pc,
    Max4pc,
    Steiner2,
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MatrixKind::Min4pc => "min4pc",
            MatrixKind::Max4pc => "max4pc",
            MatrixKind::Steiner2 => "steiner2",
        })
    }
}

impl FromStr for MatrixKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "min4pc" => Ok(MatrixKind::Min4pc),
            "max4pc" => Ok(MatrixKind::Max4pc),
            "steiner2" | "steiner" => Ok(MatrixKind::Steiner2),
            other => Err(format!("unknown matrix kind {other:?}")),
        }
    }
}

/// `(d_il + d_jk, d_ik + d_jl, d_ij + d_kl)`. Repeated vertices are allowed.
pub fn quadruple_sums(t: &Tree, i: Vertex, j: Vertex, k: Vertex, l: Vertex) -> [u32; 3] {
    let d = |a, b| t.distance(a, b);
    [d(i, l) + d(j, k), d(i, k) + d(j, l), d(i, j) + d(k, l)]
}

pub fn min4pc_entry(t: &Tree, p: VertexPair, q: VertexPair) -> i64 {
    let s = quadruple_sums(t, p.lo(), p.hi(), q.lo(), q.hi());
    i64::from(*s.iter().min().expect("three sums"))
}

pub fn max4pc_entry(t: &Tree, p: VertexPair, q: VertexPair) -> i64 {
    let s = quadruple_sums(t, p.lo(), p.hi(), q.lo(), q.hi());
    i64::from(*s.iter().max().expect("three sums"))
}

/// Edge count of the smallest subtree spanning the vertices of `p` and `q`:
/// the union of the paths between every two of them.
pub fn steiner_distance(t: &Tree, p: VertexPair, q: VertexPair) -> i64 {
    let vs = [p.lo(), p.hi(), q.lo(), q.hi()];
    let mut union = t.path_edge_set(p);
    for a in 0..4 {
        for b in a + 1..4 {
            if let Ok(pair) = VertexPair::new(vs[a], vs[b]) {
                union.union_with(&t.path_edge_set(pair));
            }
        }
    }
    union.len() as i64
}

pub fn pair_entry(t: &Tree, kind: MatrixKind, p: VertexPair, q: VertexPair) -> i64 {
    match kind {
        MatrixKind::Min4pc => min4pc_entry(t, p, q),
        MatrixKind::Max4pc => max4pc_entry(t, p, q),
        MatrixKind::Steiner2 => steiner_distance(t, p, q),
    }
}

/// A full `C(n,2) x C(n,2)` matrix over all vertex pairs in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairMatrix {
    kind: MatrixKind,
    n: usize,
    index: Vec<VertexPair>,
    entries: Vec<i64>,
}

impl PairMatrix {
    /// Builds the matrix. For the Steiner kind every entry is also checked
    /// against the average of the Min4PC and Max4PC entries.
    pub fn build(t: &Tree, kind: MatrixKind) -> Result<Self> {
        let n = t.n();
        if n > FULL_MATRIX_CAP {
            return Err(FourPcError::TooLarge {
                n,
                cap: FULL_MATRIX_CAP,
            });
        }
        let index = all_pairs(n);
        let m = index.len();
        let entries: Vec<i64> = (0..m * m)
            .into_par_iter()
            .map(|idx| {
                let (p, q) = (index[idx / m], index[idx % m]);
                let value = pair_entry(t, kind, p, q);
                if kind == MatrixKind::Steiner2 {
                    let twice = min4pc_entry(t, p, q) + max4pc_entry(t, p, q);
                    assert_eq!(2 * value, twice, "Steiner entry at ({p}, {q}) is not the 4PC average");
                }
                value
            })
            .collect();
        Ok(PairMatrix {
            kind,
            n,
            index,
            entries,
        })
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self) -> &[VertexPair] {
        &self.index
    }

    pub fn position(&self, p: VertexPair) -> Option<usize> {
        pair_position(self.n, p)
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.order() + col]
    }

    pub fn get(&self, p: VertexPair, q: VertexPair) -> Option<i64> {
        Some(self.entry(self.position(p)?, self.position(q)?))
    }

    pub fn to_exact(&self) -> ExactMatrix {
        let m = self.order();
        ExactMatrix::from_i64_fn(m, m, |i, j| self.entries[i * m + j])
    }

    pub fn labeled(&self) -> LabeledMatrix {
        LabeledMatrix {
            kind: self.kind,
            labels: self.index.iter().map(VertexPair::label).collect(),
            matrix: self.to_exact(),
        }
    }
}

/// Where a basis came from. Steiner-type bases keep their block choices so
/// the v-vector can be rebuilt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum BasisProvenance {
    Min4pcBasis { f: VertexPair, d: u32 },
    SteinerBasis { choices: Vec<BlockChoice> },
    PathOrderedBasis { choices: Vec<BlockChoice> },
}

/// The line-graph edge picked inside one block: two tree edges (0-based) at `center`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockChoice {
    pub center: Vertex,
    pub block_size: usize,
    pub edges: (usize, usize),
    pub f: VertexPair,
}

/// Ordered pairs indexing the rows and columns of a restricted matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairBasis {
    pairs: Vec<VertexPair>,
    provenance: BasisProvenance,
}

impl PairBasis {
    pub fn pairs(&self) -> &[VertexPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn provenance(&self) -> &BasisProvenance {
        &self.provenance
    }

    pub fn choices(&self) -> Option<&[BlockChoice]> {
        match &self.provenance {
            BasisProvenance::SteinerBasis { choices } | BasisProvenance::PathOrderedBasis { choices } => Some(choices),
            BasisProvenance::Min4pcBasis { .. } => None,
        }
    }

    /// Row labels: `e_i` for tree edges, `f` / `f_j` for the extra pairs.
    pub fn element_names(&self, t: &Tree) -> Vec<String> {
        let mut fs = 0;
        self.pairs
            .iter()
            .map(|&p| match t.edge_index(p) {
                Some(i) => format!("e{}", i + 1),
                None => {
                    fs += 1;
                    match self.provenance {
                        BasisProvenance::Min4pcBasis { .. } => "f".to_string(),
                        _ => format!("f{fs}"),
                    }
                }
            })
            .collect()
    }

    pub fn labels(&self) -> Vec<String> {
        self.pairs.iter().map(VertexPair::label).collect()
    }
}

/// Every non-edge of `t`, i.e. every admissible `f` for [`min4pc_basis`].
pub fn non_edges(t: &Tree) -> Vec<VertexPair> {
    all_pairs(t.n())
        .into_iter()
        .filter(|&p| t.pair_distance(p) >= 2)
        .collect()
}

/// `(e_1, ..., e_{n-1}, f)`.
pub fn min4pc_basis(t: &Tree, f: VertexPair) -> Result<PairBasis> {
    t.check_pair(f)?;
    if t.n() < 3 {
        return Err(FourPcError::NoNonEdgeExists(t.n()));
    }
    if t.is_edge(f) {
        return Err(FourPcError::FIsAnEdge(f));
    }
    let d = t.pair_distance(f);
    if d < 2 {
        return Err(FourPcError::DistanceTooSmall { f, d });
    }
    let mut pairs = t.edges().to_vec();
    pairs.push(f);
    Ok(PairBasis {
        pairs,
        provenance: BasisProvenance::Min4pcBasis { f, d },
    })
}

fn block_choices(t: &Tree, choice: Option<&[(usize, usize)]>) -> Result<Vec<BlockChoice>> {
    let blocks = t.line_graph_blocks()?;
    if let Some(c) = choice {
        if c.len() != blocks.len() {
            return Err(FourPcError::WrongChoiceCount {
                expected: blocks.len(),
                found: c.len(),
            });
        }
    }
    blocks
        .iter()
        .enumerate()
        .map(|(j, block)| {
            let (a, b) = match choice {
                Some(c) => c[j],
                None => (block.edges[0], block.edges[1]),
            };
            let bad = |reason: String| FourPcError::BadChoice { block: j + 1, reason };
            if a == b {
                return Err(bad(format!("edge {} chosen twice", a + 1)));
            }
            for e in [a, b] {
                if !block.edges.contains(&e) {
                    return Err(bad(format!("e{} is not incident to vertex {}", e + 1, block.center)));
                }
            }
            let f = t
                .edge(a)
                .symmetric_difference(&t.edge(b))
                .expect("two distinct edges at one vertex");
            Ok(BlockChoice {
                center: block.center,
                block_size: block.size(),
                edges: (a.min(b), a.max(b)),
                f,
            })
        })
        .collect()
}

/// `(e_1, ..., e_{n-1}, f_1, ..., f_{n-p})`, one `f_j` per line-graph block.
///
/// `choice[j]` names two tree edges (0-based) inside block `j`; blocks are
/// ordered by center vertex. `None` takes the first two edges of each block.
pub fn steiner_basis(t: &Tree, choice: Option<&[(usize, usize)]>) -> Result<PairBasis> {
    let choices = block_choices(t, choice)?;
    let mut pairs = t.edges().to_vec();
    pairs.extend(choices.iter().map(|c| c.f));
    Ok(PairBasis {
        pairs,
        provenance: BasisProvenance::SteinerBasis { choices },
    })
}

/// `(e_1, f_1, e_2, ..., f_{n-2}, e_{n-1})` with `f_j = {j, j+2}`, for the
/// path `1 - 2 - ... - n`.
pub fn path_ordered_basis(t: &Tree) -> Result<PairBasis> {
    let n = t.n();
    if n < 3 {
        return Err(TreeError::SizeTooSmall { n, min: 3 }.into());
    }
    let canonical = (0..n - 1).all(|i| t.edge(i) == VertexPair::new(i + 1, i + 2).expect("distinct"));
    if !canonical {
        return Err(FourPcError::NotCanonicalPath);
    }
    let choices = block_choices(t, None)?;
    let mut pairs = Vec::with_capacity(2 * n - 3);
    for i in 0..n - 1 {
        pairs.push(t.edge(i));
        if let Some(c) = choices.get(i) {
            pairs.push(c.f);
        }
    }
    Ok(PairBasis {
        pairs,
        provenance: BasisProvenance::PathOrderedBasis { choices },
    })
}

/// `M[rows, cols]` in basis order.
pub fn restrict(m: &PairMatrix, rows: &PairBasis, cols: &PairBasis) -> Result<ExactMatrix> {
    let pos = |p: VertexPair| m.position(p).ok_or(FourPcError::PairNotFound(p));
    let r: Vec<usize> = rows.pairs.iter().map(|&p| pos(p)).collect::<Result<_>>()?;
    let c: Vec<usize> = cols.pairs.iter().map(|&p| pos(p)).collect::<Result<_>>()?;
    Ok(ExactMatrix::from_i64_fn(r.len(), c.len(), |i, j| m.entry(r[i], c[j])))
}

/// `M[B, B]` computed entry by entry without the full matrix; works for any `n`.
pub fn restricted_entries(t: &Tree, kind: MatrixKind, basis: &PairBasis) -> Result<Vec<i64>> {
    for &p in &basis.pairs {
        t.check_pair(p).map_err(|_| FourPcError::PairNotFound(p))?;
    }
    let k = basis.len();
    Ok((0..k * k)
        .map(|idx| pair_entry(t, kind, basis.pairs[idx / k], basis.pairs[idx % k]))
        .collect())
}

pub fn restricted_matrix(t: &Tree, kind: MatrixKind, basis: &PairBasis) -> Result<ExactMatrix> {
    let k = basis.len();
    let entries = restricted_entries(t, kind, basis)?;
    Ok(ExactMatrix::from_i64_fn(k, k, |i, j| entries[i * k + j]))
}

/// The v-vector of a Steiner basis: `v_f = |B_j| - 1` on each `f_j`, and
/// `v_e = 1 - sum (|B_j| - 1)` over the blocks whose chosen pair uses `e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SteinerV {
    pub basis: Vec<VertexPair>,
    pub values: Vec<i64>,
}

impl SteinerV {
    pub fn to_column(&self) -> ExactMatrix {
        ExactMatrix::column(
            self.values
                .iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect(),
        )
    }
}

/// Builds `v` and checks `1^t v = 1` and `D2[B,B] v = (n-1) 1`.
pub fn steiner_v(t: &Tree, basis: &PairBasis) -> Result<SteinerV> {
    let choices = basis.choices().ok_or(FourPcError::NotASteinerBasis)?;
    let mut edge_v = vec![1i64; t.edge_count()];
    for c in choices {
        let w = c.block_size as i64 - 1;
        edge_v[c.edges.0] -= w;
        edge_v[c.edges.1] -= w;
    }
    let values: Vec<i64> = basis
        .pairs
        .iter()
        .map(|&p| match t.edge_index(p) {
            Some(e) => edge_v[e],
            None => {
                let c = choices.iter().find(|c| c.f == p).expect("f comes from a choice");
                c.block_size as i64 - 1
            }
        })
        .collect();
    let total: i64 = values.iter().sum();
    if total != 1 {
        return Err(FourPcError::VInvariant(format!("1^t v = {total}")));
    }
    let k = basis.len();
    let m = restricted_entries(t, MatrixKind::Steiner2, basis)?;
    let target = t.n() as i64 - 1;
    for i in 0..k {
        let row: i64 = (0..k).map(|j| m[i * k + j] * values[j]).sum();
        if row != target {
            return Err(FourPcError::VInvariant(format!(
                "row {} of D2[B,B] v is {row}, expected {target}",
                basis.pairs[i]
            )));
        }
    }
    Ok(SteinerV {
        basis: basis.pairs.clone(),
        values,
    })
}

/// An exact matrix with row/column labels, for export.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledMatrix {
    pub kind: MatrixKind,
    pub labels: Vec<String>,
    pub matrix: ExactMatrix,
}

#[derive(Serialize)]
struct LabeledMatrixJson<'a> {
    kind: MatrixKind,
    labels: &'a [String],
    entries: Vec<Vec<String>>,
}

impl LabeledMatrix {
    pub fn restricted(t: &Tree, kind: MatrixKind, basis: &PairBasis) -> Result<Self> {
        Ok(LabeledMatrix {
            kind,
            labels: basis.labels(),
            matrix: restricted_matrix(t, kind, basis)?,
        })
    }

    /// Header row `"", labels...`; each row starts with its label.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.labels.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for (i, label) in self.labels.iter().enumerate() {
            let mut rec = vec![label.clone()];
            rec.extend(self.matrix.row(i).iter().map(ToString::to_string));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn to_json(&self) -> String {
        let doc = LabeledMatrixJson {
            kind: self.kind,
            labels: &self.labels,
            entries: (0..self.matrix.rows())
                .map(|i| self.matrix.row(i).iter().map(ToString::to_string).collect())
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serializable")
    }
}
