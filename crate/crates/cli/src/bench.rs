//! Timing harness for the connected layering solver.

use crate::{read_graph, CliError, DeltaArg, Result};
use clap::Args;
use rdom_core::generate::{generate, Kind};
use rdom_core::lp_domination::{connected_rdom_lp, LpOptions};
use rdom_core::{Graph, RadiusFunction};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Args)]
pub struct BenchArgs {
    /// Graphs in `.gr` format.
    instances: Vec<PathBuf>,
    /// Generated sparse graphs, each given as `n:m:seed`.
    #[arg(long)]
    sparse: Vec<String>,
    /// Uniform radius for every instance.
    #[arg(long, default_value_t = 1)]
    default_r: usize,
    #[arg(long, value_enum, default_value = "skip")]
    delta: DeltaArg,
}

const HEADER: [&str; 9] = [
    "instance",
    "n",
    "m",
    "seconds",
    "size",
    "t_r",
    "delta",
    "delta_final",
    "iterations",
];

#[derive(Serialize)]
struct Row {
    instance: String,
    n: usize,
    m: usize,
    seconds: f64,
    size: usize,
    t_r: usize,
    delta: Option<usize>,
    delta_final: usize,
    iterations: usize,
}

/// Largest iteration count the search may take for a given final δ.
pub fn iteration_bound(delta_final: usize) -> usize {
    2 * (delta_final.max(1).ilog2() as usize + 2)
}

fn parse_sparse(spec: &str) -> Result<(usize, usize, u64)> {
    let bad = || CliError::Input(format!("--sparse expects n:m:seed, got `{spec}`"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [n, m, seed] = parts.as_slice() else {
        return Err(bad());
    };
    Ok((
        n.parse().map_err(|_| bad())?,
        m.parse().map_err(|_| bad())?,
        seed.parse().map_err(|_| bad())?,
    ))
}

fn measure(name: String, g: &Graph, args: &BenchArgs) -> Result<Row> {
    let r = RadiusFunction::uniform(g.n(), args.default_r);
    let opts = LpOptions {
        start: 0,
        delta: args.delta.into(),
    };
    let start = Instant::now();
    let run = connected_rdom_lp(g, &r, &opts)?;
    let seconds = start.elapsed().as_secs_f64();
    Ok(Row {
        instance: name,
        n: g.n(),
        m: g.m(),
        seconds,
        size: run.result.len(),
        t_r: run.t_r_size,
        delta: run.delta,
        delta_final: run.delta_final,
        iterations: run.iterations(),
    })
}

pub fn run(output: Option<&Path>, args: &BenchArgs) -> Result<()> {
    let mut rows = Vec::new();
    for path in &args.instances {
        let g = read_graph(path)?;
        rows.push(measure(path.display().to_string(), &g, args)?);
    }
    for spec in &args.sparse {
        let (n, m, seed) = parse_sparse(spec)?;
        let g = generate(&Kind::Sparse { n, m }, 0..=0, seed)?.graph;
        rows.push(measure(format!("sparse-{n}-{m}-{seed}"), &g, args)?);
    }
    let sink: Box<dyn std::io::Write> = match output {
        Some(p) => Box::new(std::fs::File::create(p).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        })?),
        None => Box::new(std::io::stdout()),
    };
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(sink);
    let csv_err = |e: csv::Error| CliError::Input(format!("writing CSV: {e}"));
    w.write_record(HEADER).map_err(csv_err)?;
    for row in &rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::Input(format!("writing CSV: {e}")))?;
    for row in &rows {
        let bound = iteration_bound(row.delta_final);
        if row.iterations > bound {
            return Err(CliError::Invariant(format!(
                "{}: {} iterations exceed {bound} for final δ {}",
                row.instance, row.iterations, row.delta_final
            )));
        }
    }
    Ok(())
}
