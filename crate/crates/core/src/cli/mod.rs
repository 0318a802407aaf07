//! Command-line front end.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 1 on a usage error, 2 on a domain error. Output
//! is assembled in memory and written only on success, so failing commands
//! leave standard output empty; `enumerate` validates its arguments first
//! and then streams.

mod args;

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::{json, Value};

use crate::codec::{encode, StructureCode};
use crate::entropy::{
    bound_curve, delta_pmf, fmt_num, joint_pmf_l, mc_entropy, pmf_l, round_sig, EntropyEstimate,
};
use crate::enumeration::{
    catalan, count_with_k_cliques, enumerate_ordered_graphs, realizable, PqTable, ENUMERATION_MAX_N,
};
use crate::graph::{
    build_labeled_graph, build_ordered_graph, connectivity_probability, sample_points,
    OrderedGraph, RegimeSpec,
};
use crate::structure::{maximal_cliques, og_from_cliques, CliqueCover};
use crate::{selftest, Error};

use args::*;
pub use args::{parse_grid, Cli, Command, Format, Grid};

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(Error::Io(e))
    }
}

type CmdResult<T = ()> = Result<T, Failure>;

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            1
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write) -> CmdResult<i32> {
    let mut code = 0;
    let (bytes, out) = match command {
        Command::Gen(a) => (gen(&a)?, a.output.out),
        Command::Enumerate(a) => {
            enumerate(&a, stdout)?;
            return Ok(0);
        }
        Command::Count(a) => (count(&a)?, a.output.out),
        Command::Encode(a) => (encode_cmd(&a)?, a.output.out),
        Command::Decode(a) => (decode_cmd(&a)?, a.output.out),
        Command::Pmf(a) => (pmf(&a)?, a.output.out),
        Command::Bounds(a) => (bounds(&a)?, a.output.out),
        Command::Entropy(a) => (with_threads(a.threads, || entropy(&a))?, a.output.out),
        Command::Connectivity(a) => (with_threads(a.threads, || connectivity(&a))?, a.output.out),
        Command::Realizable(a) => (realizable_cmd(&a)?, a.output.out),
        Command::Selftest(a) => {
            let (bytes, passed) = with_threads(a.threads, || selftest_cmd(&a))?;
            if !passed {
                code = 2;
            }
            (bytes, a.output.out)
        }
    };
    emit(&bytes, out.as_deref(), stdout)?;
    Ok(code)
}

fn emit(bytes: &[u8], out: Option<&Path>, stdout: &mut dyn Write) -> CmdResult {
    match out {
        Some(path) => fs::write(path, bytes)?,
        None => {
            stdout.write_all(bytes)?;
            stdout.flush()?;
        }
    }
    Ok(())
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> CmdResult<T> + Send,
) -> CmdResult<T> {
    match threads {
        None => f(),
        Some(0) => Err(Failure::Usage("--threads must be at least 1".into())),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| Failure::Usage(format!("cannot start {k} threads: {e}")))?;
            pool.install(f)
        }
    }
}

fn json_text(value: &Value) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("json value serializes");
    s.push('\n');
    s.into_bytes()
}

fn num(x: f64) -> Value {
    json!(round_sig(x))
}

fn reject_format(format: Option<Format>, allowed: &[Format], command: &str) -> CmdResult<Format> {
    let f = format.unwrap_or(allowed[0]);
    if !allowed.contains(&f) {
        return Err(Failure::Usage(
            format!("{command} does not support --format {f:?}").to_lowercase(),
        ));
    }
    Ok(f)
}

fn intervals_json(cover: &CliqueCover) -> Value {
    json!(cover
        .intervals()
        .iter()
        .map(|&(a, b)| [a, b])
        .collect::<Vec<_>>())
}

fn gen(a: &GenArgs) -> CmdResult<Vec<u8>> {
    let default = match a.emit {
        Emit::Points => Format::Csv,
        _ => Format::Text,
    };
    let format = a.output.format.unwrap_or(default);
    let sample = sample_points(a.n, a.r, a.seed)?;
    let og = build_ordered_graph(&sample);
    if format == Format::Json {
        let labeled = build_labeled_graph(&sample);
        let value = json!({
            "n": a.n,
            "r": num(a.r),
            "seed": a.seed,
            "locations": sample.locations().iter().map(|&x| num(x)).collect::<Vec<_>>(),
            "original_order": sample.original_order(),
            "edges": labeled.edges().iter().map(|&(i, j)| [i, j]).collect::<Vec<_>>(),
            "left_counts": og.left_counts(),
            "cliques": intervals_json(&maximal_cliques(&og)),
        });
        return Ok(json_text(&value));
    }
    let text = match (a.emit, format) {
        (Emit::Points, _) => {
            let mut s = String::from("index,label,location\n");
            for (k, (&x, &label)) in sample
                .locations()
                .iter()
                .zip(sample.original_order())
                .enumerate()
            {
                s.push_str(&format!("{},{label},{}\n", k + 1, fmt_num(x)));
            }
            s
        }
        (Emit::Edges, Format::Csv) => {
            let mut s = String::from("i,j\n");
            for (i, j) in build_labeled_graph(&sample).edges() {
                s.push_str(&format!("{i},{j}\n"));
            }
            s
        }
        (Emit::Edges, _) => build_labeled_graph(&sample).to_edge_list(),
        (Emit::Ordered, _) => format!("{og}\n"),
        (Emit::Cliques, _) => maximal_cliques(&og).to_text(),
    };
    Ok(text.into_bytes())
}

fn enumerate(a: &EnumerateArgs, stdout: &mut dyn Write) -> CmdResult {
    if a.n == 0 || a.n > ENUMERATION_MAX_N {
        return Err(Error::SizeLimit {
            what: "n",
            value: a.n,
            max: ENUMERATION_MAX_N,
        }
        .into());
    }
    let graphs = enumerate_ordered_graphs(a.n, a.connected_only)?;
    if a.count_only {
        let bytes = format!("{}\n", graphs.count()).into_bytes();
        return emit(&bytes, a.out.as_deref(), stdout);
    }
    let mut sink: Box<dyn Write + '_> = match &a.out {
        Some(path) => Box::new(BufWriter::new(fs::File::create(path)?)),
        None => Box::new(BufWriter::new(stdout)),
    };
    for og in graphs {
        match a.emit {
            EnumerateEmit::Ordered => writeln!(sink, "{og}")?,
            EnumerateEmit::Cliques => writeln!(sink, "{}", maximal_cliques(&og))?,
        }
    }
    sink.flush()?;
    Ok(())
}

fn count(a: &CountArgs) -> CmdResult<Vec<u8>> {
    if let Some(n) = a.catalan {
        let format = reject_format(
            a.output.format,
            &[Format::Text, Format::Json],
            "count --catalan",
        )?;
        let c = catalan(n);
        return Ok(match format {
            Format::Json => json_text(&json!({ "n": n, "catalan": c.to_string() })),
            _ => format!("{c}\n").into_bytes(),
        });
    }
    reject_format(a.output.format, &[Format::Csv], "count --table")?;
    let n = a.n.expect("clap enforces --n with --table");
    if n == 0 {
        return Err(Error::invalid("n must be at least 1").into());
    }
    let mut s = String::new();
    match a.table.expect("clap enforces --catalan or --table") {
        Table::Narayana => {
            s.push_str("n,k,count\n");
            let max_k = if a.connected_only { (n - 1).max(1) } else { n };
            for k in 1..=max_k {
                s.push_str(&format!(
                    "{n},{k},{}\n",
                    count_with_k_cliques(n, k, a.connected_only)?
                ));
            }
        }
        Table::Pq => {
            if a.connected_only {
                return Err(Failure::Usage(
                    "the p/q table already lists connected counts (q)".into(),
                ));
            }
            s.push_str("m,n,k,p,q\n");
            for (m, k, p, q) in PqTable::recurrence(n).rows() {
                s.push_str(&format!("{m},{n},{k},{p},{q}\n"));
            }
        }
    }
    Ok(s.into_bytes())
}

fn encode_cmd(a: &EncodeArgs) -> CmdResult<Vec<u8>> {
    let og = match (&a.input, &a.l) {
        (_, Some(l)) => l.parse::<OrderedGraph>()?,
        (Some(path), None) => og_from_cliques(&CliqueCover::parse(&fs::read_to_string(path)?)?),
        (None, None) => unreachable!("clap enforces an input"),
    };
    let code = encode(&og);
    if a.binary {
        return Ok(code.to_bytes());
    }
    let format = reject_format(a.output.format, &[Format::Text, Format::Json], "encode")?;
    Ok(match format {
        Format::Json => json_text(&code_json(&code)),
        _ => code.to_text().into_bytes(),
    })
}

fn code_json(code: &StructureCode) -> Value {
    let bits = |v: &[bool]| {
        v.iter()
            .map(|&x| if x { '1' } else { '0' })
            .collect::<String>()
    };
    json!({ "n": code.n(), "a": bits(code.a()), "b": bits(code.b()) })
}

fn decode_cmd(a: &DecodeArgs) -> CmdResult<Vec<u8>> {
    let code = if a.binary {
        StructureCode::from_bytes(&fs::read(&a.input)?).map_err(Error::from)?
    } else {
        StructureCode::parse_text(&fs::read_to_string(&a.input)?).map_err(Error::from)?
    };
    let cover = code.intervals().map_err(Error::from)?;
    let og = og_from_cliques(&cover);
    let format = reject_format(a.output.format, &[Format::Text, Format::Json], "decode")?;
    Ok(match format {
        Format::Json => json_text(&json!({
            "n": og.n(),
            "left_counts": og.left_counts(),
            "cliques": intervals_json(&cover),
        })),
        _ if a.ordered => format!("{og}\n").into_bytes(),
        _ => cover.to_text().into_bytes(),
    })
}

fn pmf(a: &PmfArgs) -> CmdResult<Vec<u8>> {
    let format = reject_format(a.output.format, &[Format::Csv, Format::Json], "pmf")?;
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Failure::Usage(format!("--kind needs --{flag}")))
    };
    let (csv, value) = match a.kind {
        PmfKind::L => {
            let i = need(a.i, "i")?;
            let p = pmf_l(a.n, a.r, i)?;
            let value = json!({
                "kind": "L", "n": a.n, "r": num(a.r), "i": i,
                "support": p.support(),
                "probabilities": p.probabilities().iter().map(|&x| num(x)).collect::<Vec<_>>(),
            });
            (p.to_csv("a"), value)
        }
        PmfKind::Joint => {
            let i = need(a.i, "i")?;
            let j = joint_pmf_l(a.n, a.r, i)?;
            let entries: Vec<Value> = j.entries().map(|(x, y, p)| json!([x, y, num(p)])).collect();
            let value =
                json!({ "kind": "joint", "n": a.n, "r": num(a.r), "i": i, "entries": entries });
            (j.to_csv(), value)
        }
        PmfKind::Delta => {
            let cond = need(a.a, "a")?;
            let p = delta_pmf(a.n, a.r, cond)?;
            let value = json!({
                "kind": "delta", "n": a.n, "r": num(a.r), "a": cond,
                "support": p.support(),
                "probabilities": p.probabilities().iter().map(|&x| num(x)).collect::<Vec<_>>(),
            });
            (p.to_csv("k"), value)
        }
    };
    Ok(match format {
        Format::Json => json_text(&value),
        _ => csv.into_bytes(),
    })
}

fn bounds(a: &BoundsArgs) -> CmdResult<Vec<u8>> {
    let format = reject_format(a.output.format, &[Format::Csv, Format::Json], "bounds")?;
    let curve = bound_curve(&a.grid.0)?;
    Ok(match format {
        Format::Json => {
            let rows: Vec<Value> = (0..curve.x.len())
                .map(|k| json!({ "x": num(curve.x[k]), "h_upper": num(curve.h_upper[k]), "h_lower": num(curve.h_lower[k]) }))
                .collect();
            json_text(&json!(rows))
        }
        _ => curve.to_csv().into_bytes(),
    })
}

fn estimate_json(e: &EntropyEstimate) -> Value {
    let mut value = json!({
        "n": e.n,
        "r": num(e.r),
        "target": e.target.as_str(),
        "estimator": e.estimator.as_str(),
        "samples": e.samples,
        "bits": num(e.bits),
        "std_error": num(e.std_error),
    });
    if let Some(rate) = e.acceptance_rate {
        value["acceptance_rate"] = num(rate);
    }
    value
}

fn entropy(a: &EntropyArgs) -> CmdResult<Vec<u8>> {
    let format = reject_format(a.output.format, &[Format::Json, Format::Csv], "entropy")?;
    let e = mc_entropy(a.n, a.r, a.target, a.samples, a.seed, a.estimator)?;
    Ok(match format {
        Format::Csv => {
            let rate = e.acceptance_rate.map(fmt_num).unwrap_or_default();
            format!(
                "n,r,target,estimator,samples,bits,std_error,acceptance_rate\n{},{},{},{},{},{},{},{rate}\n",
                e.n,
                fmt_num(e.r),
                e.target,
                e.estimator,
                e.samples,
                fmt_num(e.bits),
                fmt_num(e.std_error)
            )
            .into_bytes()
        }
        _ => json_text(&estimate_json(&e)),
    })
}

fn regime_spec(regime: Regime, coef: f64) -> crate::Result<RegimeSpec> {
    match regime {
        Regime::COverN => RegimeSpec::c_over_n(coef),
        Regime::Log => RegimeSpec::log(coef),
        Regime::Const => RegimeSpec::constant(coef),
    }
}

fn connectivity(a: &ConnectivityArgs) -> CmdResult<Vec<u8>> {
    let format = reject_format(
        a.output.format,
        &[Format::Csv, Format::Json],
        "connectivity",
    )?;
    let coefs = match (&a.grid, a.coef) {
        (Some(grid), _) => grid.0.clone(),
        (None, Some(c)) => vec![c],
        (None, None) => return Err(Failure::Usage("connectivity needs --coef or --grid".into())),
    };
    let mut rows = Vec::with_capacity(coefs.len());
    for coef in coefs {
        let r = regime_spec(a.regime, coef)?.range(a.n);
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::invalid(format!(
                "coefficient {coef} gives range r = {r} outside (0, 1] at n = {}",
                a.n
            ))
            .into());
        }
        let est = connectivity_probability(a.n, r, a.samples, a.seed)?;
        rows.push((coef, r, est));
    }
    Ok(match format {
        Format::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|(coef, r, e)| {
                    json!({ "n": a.n, "coef": num(*coef), "r": num(*r), "probability": num(e.probability), "std_error": num(e.std_error), "trials": e.trials })
                })
                .collect();
            json_text(&json!(values))
        }
        _ => {
            let mut s = String::from("n,coef,r,probability,std_error\n");
            for (coef, r, e) in rows {
                s.push_str(&format!(
                    "{},{},{},{},{}\n",
                    a.n,
                    fmt_num(coef),
                    fmt_num(r),
                    fmt_num(e.probability),
                    fmt_num(e.std_error)
                ));
            }
            s.into_bytes()
        }
    })
}

fn realizable_cmd(a: &RealizableArgs) -> CmdResult<Vec<u8>> {
    reject_format(a.output.format, &[Format::Json], "realizable")?;
    let og: OrderedGraph = a.l.parse()?;
    let w = realizable(&og, a.r)?;
    let mut value = json!({ "feasible": w.feasible });
    if let Some(locs) = &w.locations {
        value["locations"] = json!(locs.iter().map(|&x| num(x)).collect::<Vec<_>>());
    }
    if let Some(slack) = w.slack {
        value["slack"] = num(slack);
    }
    Ok(json_text(&value))
}

fn selftest_cmd(a: &SelftestArgs) -> CmdResult<(Vec<u8>, bool)> {
    let format = reject_format(a.output.format, &[Format::Text, Format::Json], "selftest")?;
    let reports = match a.criterion {
        Some(id) => selftest::run_criterion(id).into_iter().collect(),
        None => selftest::run_all(),
    };
    let passed = reports.iter().all(|r| r.passed);
    let bytes = match format {
        Format::Json => json_text(&serde_json::to_value(&reports).expect("reports serialize")),
        _ => reports
            .iter()
            .map(|r| format!("{r}\n"))
            .collect::<String>()
            .into_bytes(),
    };
    Ok((bytes, passed))
}
