use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::entropy::{Estimator, Target};

#[derive(Debug, Parser)]
#[command(
    name = "rgg1d",
    version,
    about = "Structure, counting, coding and entropy bounds for one-dimensional random geometric graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a graph and print its points, edges, L-vector or clique cover.
    Gen(GenArgs),
    /// Stream every ordered graph on n vertices.
    Enumerate(EnumerateArgs),
    /// Catalan numbers and Narayana / p / q tables.
    Count(CountArgs),
    /// Encode a clique cover (or L-vector) as two bit strings.
    Encode(EncodeArgs),
    /// Decode two bit strings (or an .rgs file) back to a clique cover.
    Decode(DecodeArgs),
    /// Tabulate the law of L_i, of (L_i, L_{i+1}) or of the leftmost shift.
    Pmf(PmfArgs),
    /// Tabulate the per-node entropy bounds h_upper and h_lower.
    Bounds(BoundsArgs),
    /// Monte Carlo entropy estimate.
    Entropy(EntropyArgs),
    /// Monte Carlo connectivity probability in a range regime.
    Connectivity(ConnectivityArgs),
    /// Decide whether an L-vector occurs at a given range.
    Realizable(RealizableArgs),
    /// Run the built-in acceptance checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format; each command has its own default.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Points,
    Edges,
    Ordered,
    Cliques,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Emit::Ordered)]
    pub emit: Emit,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumerateEmit {
    /// Comma-separated L_2..L_n.
    Ordered,
    /// Maximal-clique intervals.
    Cliques,
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub connected_only: bool,
    /// Print only the number of graphs.
    #[arg(long)]
    pub count_only: bool,
    #[arg(long, value_enum, default_value_t = EnumerateEmit::Ordered)]
    pub emit: EnumerateEmit,
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Narayana,
    Pq,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("what").required(true).args(["catalan", "table"]))]
pub struct CountArgs {
    /// Print the n-th Catalan number.
    #[arg(long, value_name = "N")]
    pub catalan: Option<usize>,
    #[arg(long, value_enum, requires = "n")]
    pub table: Option<Table>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Narayana table of connected graphs.
    #[arg(long)]
    pub connected_only: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["input", "l"]))]
pub struct EncodeArgs {
    /// Clique-cover file: the interval count, then one `a b` line per interval.
    pub input: Option<PathBuf>,
    /// Encode this L-vector (comma-separated L_2..L_n) instead of a file.
    #[arg(long, value_name = "L2,...,Ln", allow_hyphen_values = true)]
    pub l: Option<String>,
    /// Write the binary .rgs layout (requires --out).
    #[arg(long, requires = "out")]
    pub binary: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    /// Two-line bit-string file, or an .rgs file with --binary.
    pub input: PathBuf,
    #[arg(long)]
    pub binary: bool,
    /// Print the L-vector instead of the clique cover.
    #[arg(long)]
    pub ordered: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PmfKind {
    #[value(name = "L", alias = "l")]
    L,
    Joint,
    Delta,
}

#[derive(Debug, Args)]
pub struct PmfArgs {
    #[arg(long, value_enum)]
    pub kind: PmfKind,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: f64,
    /// Vertex index (for L and joint).
    #[arg(long)]
    pub i: Option<usize>,
    /// Conditioning count (for delta).
    #[arg(long)]
    pub a: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Values of x = n r_n as start:stop:step.
    #[arg(long, default_value = "0:50:0.5", value_parser = parse_grid)]
    pub grid: Grid,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub r: f64,
    #[arg(long, value_parser = parse_target, default_value = "structure")]
    pub target: Target,
    #[arg(long, value_parser = parse_estimator, default_value = "plug-in")]
    pub estimator: Estimator,
    #[arg(long, default_value_t = 100_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Regime {
    /// r = coef / n
    COverN,
    /// r = coef ln n / n
    Log,
    /// r = coef
    Const,
}

#[derive(Debug, Args)]
pub struct ConnectivityArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub regime: Regime,
    #[arg(long, conflicts_with = "grid")]
    pub coef: Option<f64>,
    /// Sweep the coefficient over start:stop:step.
    #[arg(long, value_parser = parse_grid)]
    pub grid: Option<Grid>,
    #[arg(long, default_value_t = 10_000)]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RealizableArgs {
    /// Comma-separated L_2..L_n.
    #[arg(long, value_name = "L2,...,Ln")]
    pub l: String,
    #[arg(long)]
    pub r: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Run a single criterion.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
    pub criterion: Option<u8>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Evenly spaced values `start, start + step, ...` up to `stop`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, stop, step] = parts.as_slice() else {
        return Err("expected start:stop:step".into());
    };
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad number {t:?}"))
    };
    let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err("grid values must be finite".into());
    }
    if step <= 0.0 {
        return Err("step must be positive".into());
    }
    if stop < start {
        return Err("stop must not be below start".into());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err("grid has more than a million points".into());
    }
    Ok(Grid((0..=count).map(|k| start + k as f64 * step).collect()))
}

fn parse_target(s: &str) -> Result<Target, String> {
    s.parse().map_err(|_| {
        "expected one of structure, ordered-graph, connected-structure, connected-ordered-graph"
            .to_string()
    })
}

fn parse_estimator(s: &str) -> Result<Estimator, String> {
    s.parse()
        .map_err(|_| "expected plug-in or miller-madow".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn grids() {
        assert_eq!(parse_grid("0:1:0.5").unwrap(), Grid(vec![0.0, 0.5, 1.0]));
        assert_eq!(parse_grid("0:1:0.1").unwrap().0.len(), 11);
        assert_eq!(parse_grid("2:2:1").unwrap(), Grid(vec![2.0]));
        assert!(parse_grid("0:1").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("1:0:0.1").is_err());
        assert!(parse_grid("a:1:1").is_err());
    }
}
