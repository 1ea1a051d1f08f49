//! `treespec`: build pair matrices of trees, verify the spectral theorems on
//! them, and scan the path conjectures.
//!
//! Exit status: 0 when every asserted check passes, 1 when one fails, 2 on a
//! usage or I/O error.

mod output;

use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use treespec::embed::{embed, verify_embedding};
use treespec::fourpc::{
    min4pc_basis, non_edges, path_ordered_basis, steiner_basis, LabeledMatrix, MatrixKind, PairBasis, PairMatrix,
};
use treespec::path_steiner::{conjecture_scan, conjectures_csv};
use treespec::report::{CheckEntry, EnvironmentStamp, Inputs, VerificationReport};
use treespec::suite::{
    bistar_checks, path_checks, star_checks, sweep, tree_checks, FChoice, SpotOptions, SuiteOptions,
};
use treespec::tree::{enumerate_labeled_trees, prufer_decode, random_tree, Family as TreeFamily, Tree, VertexPair};

#[derive(Parser, Debug)]
#[command(name = "treespec", version, about = "Exact spectra of tree pair matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a full or basis-restricted pair matrix.
    Matrix(MatrixArgs),
    /// Run the theorem suite and write a report.
    Verify(VerifyArgs),
    /// Evaluate the two path conjectures over a range of n.
    Scan(ScanArgs),
    /// Write the l1 embedding table of a tree.
    Embed(EmbedArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    Path,
    Star,
    Bistar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    fn ext(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BasisName {
    /// All pairs in lexicographic order.
    Full,
    /// `E` plus `f`.
    Min4pc,
    /// `E` plus one pair per line-graph block.
    Steiner,
    /// `e1, f1, e2, ...` on a path.
    PathOrdered,
}

#[derive(Args, Debug, Clone)]
struct TreeSource {
    /// Edge-list file: first line n, then one `i j` line per edge.
    #[arg(long, conflicts_with_all = ["family", "prufer"])]
    file: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<FamilyName>,
    /// Prüfer sequence, e.g. "2 2".
    #[arg(long)]
    prufer: Option<String>,
    /// Vertex count or inclusive range such as 3..12.
    #[arg(long)]
    n: Option<String>,
}

#[derive(Args, Debug, Clone)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Directory for report files; stdout when absent.
    #[arg(long, env = "TREESPEC_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[command(flatten)]
    source: TreeSource,
    /// Seed of a random tree, used when no other source is given.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "min4pc", value_parser = parse_kind)]
    kind: MatrixKind,
    #[arg(long, value_enum, default_value = "full")]
    basis: BasisName,
    /// The extra pair of a Min4PC basis, e.g. "1 4".
    #[arg(long)]
    f: Option<String>,
    /// Steiner block choices as 1-based edge numbers, e.g. "1,2 3,4".
    #[arg(long)]
    choices: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    source: TreeSource,
    /// Every labeled tree on n vertices (n <= 8).
    #[arg(long)]
    exhaustive: bool,
    /// This many seeded random trees per n.
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, conflicts_with = "every_f")]
    f: Option<String>,
    /// Check Min4PC[B,B] for every non-edge f.
    #[arg(long)]
    every_f: bool,
    #[arg(long)]
    choices: Option<String>,
    /// Hypermetric and negative-type spot-check trials per tree; 0 disables.
    #[arg(long, default_value_t = 0)]
    trials: usize,
    /// Entry bound for spot-check vectors.
    #[arg(long, default_value_t = 3)]
    bound: i64,
    /// Largest n for full-matrix rank and inertia checks
    /// (default 8 for single trees, 6 for sweeps).
    #[arg(long)]
    full_max_n: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct ScanArgs {
    /// Inclusive range, 6 <= lo <= hi <= 60.
    #[arg(long, default_value = "6..14")]
    n: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, env = "TREESPEC_OUT")]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EmbedArgs {
    #[command(flatten)]
    source: TreeSource,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long, env = "TREESPEC_OUT")]
    out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<MatrixKind, String> {
    s.parse()
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let parse = |x: &str| {
        x.trim()
            .parse::<usize>()
            .with_context(|| format!("bad vertex count {x:?} in {s:?}"))
    };
    let r = match s.split_once("..") {
        Some((lo, hi)) => parse(lo)?..=parse(hi.trim_start_matches('='))?,
        None => {
            let n = parse(s)?;
            n..=n
        }
    };
    if r.is_empty() {
        bail!("empty range {s:?}");
    }
    Ok(r)
}

fn parse_pair(s: &str) -> Result<VertexPair> {
    let v: Vec<usize> = s
        .split(|c: char| c.is_whitespace() || c == ',' || c == '-')
        .filter(|x| !x.is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad pair {s:?}"))?;
    match v[..] {
        [i, j] => Ok(VertexPair::new(i, j)?),
        _ => bail!("expected two vertex labels, got {s:?}"),
    }
}

/// `"1,2 3,4"` in 1-based edge numbers to 0-based index pairs.
fn parse_choices(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split_whitespace()
        .map(|tok| {
            let (a, b) = tok
                .split_once(',')
                .with_context(|| format!("choice {tok:?} is not of the form a,b"))?;
            let a: usize = a.parse().with_context(|| format!("bad edge number in {tok:?}"))?;
            let b: usize = b.parse().with_context(|| format!("bad edge number in {tok:?}"))?;
            if a == 0 || b == 0 {
                bail!("edge numbers start at 1, got {tok:?}");
            }
            Ok((a - 1, b - 1))
        })
        .collect()
}

fn parse_prufer(s: &str) -> Result<Vec<usize>> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().with_context(|| format!("bad Prüfer label {x:?}")))
        .collect()
}

/// Trees named by a source, each with the inputs needed to rebuild it.
fn single_trees(src: &TreeSource, seed: Option<u64>) -> Result<Vec<(Tree, Inputs)>> {
    let mut ins = Inputs::new();
    if let Some(path) = &src.file {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        ins.insert("file".into(), path.display().to_string());
        return Ok(vec![(Tree::parse_edge_list(&text)?, ins)]);
    }
    if let Some(seq) = &src.prufer {
        let seq = parse_prufer(seq)?;
        ins.insert("prufer".into(), format!("{seq:?}"));
        return Ok(vec![(prufer_decode(&seq, seq.len() + 2)?, ins)]);
    }
    let range = parse_range(src.n.as_deref().context("--n is required with --family or --seed")?)?;
    range
        .map(|n| {
            let family = match (src.family, seed) {
                (Some(FamilyName::Path), _) => TreeFamily::Path(n),
                (Some(FamilyName::Star), _) => TreeFamily::Star(n),
                (Some(FamilyName::Bistar), _) => TreeFamily::Bistar(n),
                (None, Some(seed)) => TreeFamily::Random { n, seed },
                (None, None) => bail!("give --file, --family, --prufer, or --seed"),
            };
            let mut ins = Inputs::new();
            ins.insert("source".into(), format!("{family:?}"));
            Ok((family.generate()?, ins))
        })
        .collect()
}

fn emit(
    out: &Option<PathBuf>,
    command: &str,
    time: &chrono::DateTime<chrono::Utc>,
    ext: &str,
    body: &str,
) -> Result<()> {
    match out {
        Some(dir) => {
            let path = output::write_new(dir, command, time, ext, body)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{body}"),
    }
    Ok(())
}

fn cmd_matrix(a: &MatrixArgs) -> Result<bool> {
    let time = output::run_time()?;
    let trees = single_trees(&a.source, a.seed)?;
    let [(t, _)] = &trees[..] else {
        bail!("matrix needs exactly one tree; give a single --n");
    };
    let basis: Option<PairBasis> = match a.basis {
        BasisName::Full => None,
        BasisName::Min4pc => {
            let f = match &a.f {
                Some(f) => parse_pair(f)?,
                None => *non_edges(t).first().context("tree has no non-edge")?,
            };
            Some(min4pc_basis(t, f)?)
        }
        BasisName::Steiner => {
            let choices = a.choices.as_deref().map(parse_choices).transpose()?;
            Some(steiner_basis(t, choices.as_deref())?)
        }
        BasisName::PathOrdered => Some(path_ordered_basis(t)?),
    };
    let m = match &basis {
        None => PairMatrix::build(t, a.kind)?.labeled(),
        Some(b) => LabeledMatrix::restricted(t, a.kind, b)?,
    };
    let body = match a.common.format {
        Format::Csv | Format::Text => m.to_csv(),
        Format::Json => m.to_json() + "\n",
    };
    emit(&a.common.out, "matrix", &time, a.common.format.ext(), &body)?;
    Ok(true)
}

fn cmd_verify(a: &VerifyArgs) -> Result<bool> {
    let time = output::run_time()?;
    let f = match (&a.f, a.every_f) {
        (Some(f), _) => FChoice::Given(parse_pair(f)?),
        (None, true) => FChoice::Every,
        (None, false) => FChoice::Default,
    };
    let sweeping = a.exhaustive || a.random.is_some();
    let opts = SuiteOptions {
        f,
        choices: a.choices.as_deref().map(parse_choices).transpose()?,
        spot: (a.trials > 0).then_some(SpotOptions {
            trials: a.trials,
            seed: a.seed,
            entry_bound: a.bound,
        }),
        full_max_n: a.full_max_n.unwrap_or(if sweeping { 6 } else { 8 }),
    };

    let mut config: Inputs = BTreeMap::new();
    let mut put = |k: &str, v: String| {
        config.insert(k.to_string(), v);
    };
    if let Some(p) = &a.source.file {
        put("file", p.display().to_string());
    }
    if let Some(fam) = a.source.family {
        put("family", format!("{fam:?}").to_lowercase());
    }
    if let Some(s) = &a.source.prufer {
        put("prufer", s.clone());
    }
    if let Some(n) = &a.source.n {
        put("n", n.clone());
    }
    if a.exhaustive {
        put("exhaustive", "true".into());
    }
    if let Some(k) = a.random {
        put("random", k.to_string());
    }
    put("seed", a.seed.to_string());
    put(
        "f",
        a.f.clone()
            .unwrap_or_else(|| if a.every_f { "every".into() } else { "default".into() }),
    );
    if let Some(c) = &a.choices {
        put("choices", c.clone());
    }
    put("trials", a.trials.to_string());
    put("bound", a.bound.to_string());
    put("full_max_n", opts.full_max_n.to_string());

    let mut checks: Vec<CheckEntry> = Vec::new();
    if sweeping {
        if a.source.file.is_some() || a.source.family.is_some() || a.source.prufer.is_some() {
            bail!("--exhaustive and --random take only --n");
        }
        let range = parse_range(a.source.n.as_deref().context("--n is required")?)?;
        for n in range {
            let mut trees: Vec<Tree> = Vec::new();
            if a.exhaustive {
                trees.extend(enumerate_labeled_trees(n)?);
            }
            if let Some(k) = a.random {
                for i in 0..k as u64 {
                    trees.push(random_tree(n, a.seed.wrapping_add(i))?);
                }
            }
            checks.extend(sweep(&trees, &opts)?);
        }
    } else {
        let seed =
            (a.source.family.is_none() && a.source.file.is_none() && a.source.prufer.is_none()).then_some(a.seed);
        for (t, ins) in single_trees(&a.source, seed)? {
            for mut c in tree_checks(&t, &opts)? {
                c.inputs.extend(ins.clone());
                checks.push(c);
            }
            match a.source.family {
                Some(FamilyName::Star) if t.n() >= 3 => checks.extend(star_checks(t.n())?),
                Some(FamilyName::Bistar) if t.n() >= 6 => checks.extend(bistar_checks(t.n())?),
                Some(FamilyName::Path) if t.n() >= 3 => checks.extend(path_checks(t.n())?),
                _ => {}
            }
        }
    }

    let report = VerificationReport::new("verify", config, EnvironmentStamp::new(output::stamp(&time)), checks);
    let body = match a.common.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    };
    emit(&a.common.out, "verify", &time, a.common.format.ext(), &body)?;
    let s = report.summary;
    eprintln!(
        "{} checks: {} pass, {} fail, {} info",
        s.total, s.passed, s.failed, s.informational
    );
    Ok(report.all_pass())
}

fn cmd_scan(a: &ScanArgs) -> Result<bool> {
    let time = output::run_time()?;
    let range = parse_range(&a.n)?;
    let rows = conjecture_scan(*range.start(), *range.end())?;
    let body = match a.format {
        Format::Json => serde_json::to_string_pretty(&rows)? + "\n",
        Format::Csv | Format::Text => conjectures_csv(&rows),
    };
    emit(&a.out, "scan", &time, a.format.ext(), &body)?;
    let peaks = rows.iter().filter(|r| r.peak_matches_n_minus_1).count();
    let coeffs = rows.iter().filter(|r| r.matches).count();
    eprintln!(
        "{} values of n: peak at n-1 for {peaks}, coefficient formula for {coeffs}",
        rows.len()
    );
    // findings, never failures
    Ok(true)
}

fn cmd_embed(a: &EmbedArgs) -> Result<bool> {
    let time = output::run_time()?;
    let trees = single_trees(&a.source, a.seed)?;
    let [(t, _)] = &trees[..] else {
        bail!("embed needs exactly one tree; give a single --n");
    };
    let e = embed(t);
    let body = match a.format {
        Format::Csv | Format::Text => e.to_csv(),
        Format::Json => {
            let map: BTreeMap<String, Vec<u8>> = e
                .pairs
                .iter()
                .zip(&e.vectors)
                .map(|(p, v)| (format!("phi_{}{}", p.lo(), p.hi()), v.clone()))
                .collect();
            serde_json::to_string_pretty(&map)? + "\n"
        }
    };
    emit(&a.out, "embed", &time, a.format.ext(), &body)?;
    let check = verify_embedding(t);
    if let Some(v) = &check.first_violation {
        eprintln!("embedding fails: {v:?}");
    }
    Ok(check.holds)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Matrix(a) => cmd_matrix(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Scan(a) => cmd_scan(a),
        Command::Embed(a) => cmd_embed(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
