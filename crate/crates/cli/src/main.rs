//! `domtool`: command-line front end for the domination and p-center solvers.
//!
//! Exit codes: 0 success, 1 internal invariant violated, 2 usage error,
//! 3 invalid input, 4 oracle budget exceeded, 5 verification failed.

mod bench;
mod solution;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rdom_core::generate::{generate, Kind};
use rdom_core::layering::{cluster_diameter, cluster_diameter_upper};
use rdom_core::lp_domination::{connected_rdom_lp, rdom_lp, DeltaMode, LpOptions};
use rdom_core::oracles::{exact_pcenter, exact_rdom, Method as OracleMethod, OracleBudget};
use rdom_core::pcenter::{connected_pcenter_lp, pcenter_lp, pcenter_td};
use rdom_core::td::compute_centers;
use rdom_core::td_domination::{connected_rdom_td, rdom_td, Variant};
use rdom_core::{bfs, Graph, LayeringPartition, RadiusFunction, TreeDecomposition};
use serde::Serialize;
use solution::{checksum, Solution};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] rdom_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        use rdom_core::Error as E;
        match self {
            CliError::Core(E::OverBudget { .. } | E::TimeCap { .. }) => 4,
            CliError::Core(E::Invariant(_)) | CliError::Invariant(_) => 1,
            _ => 3,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

#[derive(Parser)]
#[command(name = "domtool", version, about = "Additive approximations for (connected) r-domination and p-center")]
struct Cli {
    /// Print JSON instead of the text format.
    #[arg(long, global = true)]
    json: bool,
    /// Write the result here instead of stdout (a file prefix for `gen`).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the layering partition and print clusters, cluster tree and Δ.
    LpBuild(LpBuildArgs),
    /// (r + φ)-dominating set.
    Rdom(SolveArgs),
    /// Connected (r + φ)-dominating set.
    Crdom(SolveArgs),
    /// (Connected) p-center.
    Pcenter(PcenterArgs),
    /// Exact solution by exhaustive search on small graphs.
    Oracle(OracleArgs),
    /// Generate a seeded instance.
    Gen(GenArgs),
    /// Check a solution file against an instance.
    Verify(VerifyArgs),
    /// Time the connected layering solver and write a CSV report.
    Bench(bench::BenchArgs),
}

#[derive(Args)]
struct GraphArg {
    /// Graph in `.gr` format.
    #[arg(short, long)]
    graph: PathBuf,
}

#[derive(Args)]
struct RadiiArgs {
    /// Radii file (`r <vertex> <value>` lines).
    #[arg(short, long)]
    radii: Option<PathBuf>,
    /// Radius of every vertex missing from the radii file.
    #[arg(long)]
    default_r: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Lp,
    Td,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Heart,
    Diamond,
    /// Heart when 5ρ < 3λ, otherwise diamond.
    Best,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeltaArg {
    Exact,
    Upper,
    Skip,
}

impl From<DeltaArg> for DeltaMode {
    fn from(d: DeltaArg) -> Self {
        match d {
            DeltaArg::Exact => DeltaMode::Exact,
            DeltaArg::Upper => DeltaMode::Upper,
            DeltaArg::Skip => DeltaMode::Skip,
        }
    }
}

#[derive(Args)]
struct SolverOpts {
    #[arg(long, value_enum, default_value = "lp")]
    method: MethodArg,
    /// Tree-decomposition in `.td` format (method td).
    #[arg(long)]
    td: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "best")]
    variant: VariantArg,
    /// BFS start vertex of the layering (1-based).
    #[arg(long, default_value_t = 1)]
    start: usize,
    /// How Δ is obtained for the slack certificate.
    #[arg(long, value_enum, default_value = "exact")]
    delta: DeltaArg,
    /// Compute bag centers when the `.td` file has none.
    #[arg(long)]
    compute_centers: bool,
}

#[derive(Args)]
struct LpBuildArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, default_value_t = 1)]
    start: usize,
    #[arg(long, value_enum, default_value = "exact")]
    delta: DeltaArg,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[command(flatten)]
    radii: RadiiArgs,
    #[command(flatten)]
    opts: SolverOpts,
}

#[derive(Args)]
struct PcenterArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(short)]
    p: usize,
    #[arg(long)]
    connected: bool,
    #[command(flatten)]
    opts: SolverOpts,
}

#[derive(Clone, Copy, ValueEnum)]
enum Problem {
    Rdom,
    Crdom,
    Pcenter,
    Cpcenter,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(value_enum)]
    problem: Problem,
    #[command(flatten)]
    graph: GraphArg,
    #[command(flatten)]
    radii: RadiiArgs,
    #[arg(short)]
    p: Option<usize>,
    /// Use branch and bound instead of subset enumeration.
    #[arg(long)]
    search: bool,
    #[arg(long, default_value_t = 13)]
    max_n: usize,
    #[arg(long)]
    time_cap_ms: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Gnp,
    Sparse,
    Interval,
    Spider,
    Tree,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: KindArg,
    #[arg(short, default_value_t = 10)]
    n: usize,
    /// Edge probability (gnp).
    #[arg(long, default_value_t = 0.3)]
    p_edge: f64,
    /// Edge count (sparse); defaults to 3n.
    #[arg(short)]
    m: Option<usize>,
    #[arg(long, default_value_t = 4)]
    legs: usize,
    #[arg(long, default_value_t = 3)]
    len: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0)]
    r_min: usize,
    /// Also write `<prefix>.r` with radii drawn from `r_min..=r_max`.
    #[arg(long)]
    r_max: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[command(flatten)]
    radii: RadiiArgs,
    #[arg(long)]
    solution: PathBuf,
    /// Allowed slack; defaults to the slack declared in the solution.
    #[arg(long)]
    slack: Option<usize>,
    #[arg(long)]
    connected: bool,
    /// Oracle solution bounding the size.
    #[arg(long)]
    oracle: Option<PathBuf>,
}

pub(crate) fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub(crate) fn read_graph(path: &Path) -> Result<Graph> {
    Ok(Graph::parse_gr(&read(path)?)?)
}

fn read_radii(g: &Graph, args: &RadiiArgs) -> Result<RadiusFunction> {
    let text = match &args.radii {
        Some(p) => read(p)?,
        None if args.default_r.is_some() => String::new(),
        None => return Err(CliError::Input("give --radii or --default-r".into())),
    };
    Ok(RadiusFunction::parse(&text, g.n(), args.default_r)?)
}

fn start_vertex(g: &Graph, start: usize) -> Result<usize> {
    if start == 0 || start > g.n() {
        return Err(rdom_core::Error::VertexOutOfRange { v: start, n: g.n() }.into());
    }
    Ok(start - 1)
}

fn read_td(g: &Graph, opts: &SolverOpts, need_centers: bool) -> Result<TreeDecomposition> {
    let path = opts
        .td
        .as_ref()
        .ok_or_else(|| CliError::Input("method td needs --td".into()))?;
    let mut td = TreeDecomposition::parse(g, &read(path)?)?;
    if need_centers && td.centers().is_none() && opts.compute_centers {
        let (centers, rho) = compute_centers(g, &td);
        log::info!("computed bag centers, breadth {rho}");
        td.set_centers(g, centers)?;
    }
    Ok(td)
}

fn pick_variant(g: &Graph, td: &TreeDecomposition, v: VariantArg) -> Variant {
    match v {
        VariantArg::Heart => Variant::Heart,
        VariantArg::Diamond => Variant::Diamond,
        VariantArg::Best => {
            let rho = td.rho().unwrap_or_else(|| compute_centers(g, td).1);
            if 5 * rho < 3 * td.lambda() {
                Variant::Heart
            } else {
                Variant::Diamond
            }
        }
    }
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Heart => "heart",
        Variant::Diamond => "diamond",
    }
}

fn lp_options(g: &Graph, opts: &SolverOpts) -> Result<LpOptions> {
    Ok(LpOptions {
        start: start_vertex(g, opts.start)?,
        delta: opts.delta.into(),
    })
}

fn emit(cli: &Cli, text: String, json: impl Serialize) -> Result<()> {
    let out = if cli.json {
        serde_json::to_string_pretty(&json).expect("serialisable") + "\n"
    } else {
        text
    };
    match &cli.output {
        Some(path) => write_file(path, &out),
        None => {
            print!("{out}");
            Ok(())
        }
    }
}

fn emit_solution(cli: &Cli, sol: &Solution) -> Result<()> {
    emit(cli, sol.to_text(), sol)
}

#[derive(Serialize)]
struct ClusterJson {
    id: usize,
    layer: usize,
    vertices: Vec<usize>,
}

#[derive(Serialize)]
struct LayeringJson {
    clusters: Vec<ClusterJson>,
    tree: Vec<(usize, usize)>,
    delta: Option<usize>,
}

fn lp_build(cli: &Cli, args: &LpBuildArgs) -> Result<()> {
    let g = read_graph(&args.graph.graph)?;
    let lp = LayeringPartition::build(&g, start_vertex(&g, args.start)?)?;
    let delta = match args.delta {
        DeltaArg::Exact => Some(cluster_diameter(&g, &lp)),
        DeltaArg::Upper => Some(cluster_diameter_upper(&g, &lp)),
        DeltaArg::Skip => None,
    };
    let mut text = lp.dump();
    if let Some(d) = delta {
        text += &format!("D {d}\n");
    }
    let json = LayeringJson {
        clusters: lp
            .clusters()
            .iter()
            .enumerate()
            .map(|(c, members)| ClusterJson {
                id: c + 1,
                layer: lp.cluster_layer(c),
                vertices: members.iter().map(|v| v + 1).collect(),
            })
            .collect(),
        tree: lp.tree().edges().iter().map(|&(p, c)| (p + 1, c + 1)).collect(),
        delta,
    };
    emit(cli, text, json)
}

fn solve(cli: &Cli, args: &SolveArgs, connected: bool) -> Result<()> {
    let g = read_graph(&args.graph.graph)?;
    let r = read_radii(&g, &args.radii)?;
    let opts = &args.opts;
    let sol = match (opts.method, connected) {
        (MethodArg::Lp, false) => {
            let res = rdom_lp(&g, &r, &lp_options(&g, opts)?)?;
            Solution::new("rdom-lp", &g, &res.set, res.slack, None)
        }
        (MethodArg::Lp, true) => {
            let run = connected_rdom_lp(&g, &r, &lp_options(&g, opts)?)?;
            log::info!(
                "|T_r| = {}, Δ = {:?}, final δ = {}, {} iterations",
                run.t_r_size,
                run.delta,
                run.delta_final,
                run.iterations()
            );
            Solution::new("crdom-lp", &g, &run.result.set, run.result.slack, None)
        }
        (MethodArg::Td, false) => {
            let td = read_td(&g, opts, true)?;
            let res = rdom_td(&g, &td, &r)?;
            Solution::new("rdom-td", &g, &res.set, res.slack, None)
        }
        (MethodArg::Td, true) => {
            let td = read_td(&g, opts, false)?;
            let variant = pick_variant(&g, &td, opts.variant);
            let run = connected_rdom_td(&g, &td, &r, variant)?;
            if let Some(rho) = run.rho {
                log::info!("5ρ = {}, 3ρ + λ = {}", 5 * rho, 3 * rho + run.lambda);
            }
            let algo = format!("crdom-td-{}", variant_name(variant));
            Solution::new(&algo, &g, &run.result.set, run.result.slack, None)
        }
    };
    emit_solution(cli, &sol)
}

fn pcenter(cli: &Cli, args: &PcenterArgs) -> Result<()> {
    let g = read_graph(&args.graph.graph)?;
    let opts = &args.opts;
    let (algo, res) = match (opts.method, args.connected) {
        (MethodArg::Lp, false) => ("pcenter-lp".to_string(), pcenter_lp(&g, args.p, &lp_options(&g, opts)?)?),
        (MethodArg::Lp, true) => {
            let run = connected_pcenter_lp(&g, args.p, &lp_options(&g, opts)?)?;
            log::info!("final δ = {}, {} iterations", run.delta_final, run.probes.len());
            ("cpcenter-lp".to_string(), run.result)
        }
        (MethodArg::Td, connected) => {
            let td = read_td(&g, opts, !connected)?;
            let variant = pick_variant(&g, &td, opts.variant);
            let search = pcenter_td(&g, &td, args.p, connected, variant)?;
            let algo = if connected {
                format!("cpcenter-td-{}", variant_name(variant))
            } else {
                "pcenter-td".to_string()
            };
            (algo, search.result)
        }
    };
    emit_solution(cli, &Solution::new(&algo, &g, &res.centers, res.slack, Some(res.ecc)))
}

fn oracle(cli: &Cli, args: &OracleArgs) -> Result<()> {
    let g = read_graph(&args.graph.graph)?;
    let budget = OracleBudget {
        max_vertices: args.max_n,
        time_cap: args.time_cap_ms.map(Duration::from_millis),
        ..OracleBudget::default()
    };
    let method = if args.search {
        OracleMethod::Search
    } else {
        OracleMethod::Enumerate
    };
    let sol = match args.problem {
        Problem::Rdom | Problem::Crdom => {
            let connected = matches!(args.problem, Problem::Crdom);
            let r = read_radii(&g, &args.radii)?;
            let set = exact_rdom(&g, r.as_slice(), connected, method, &budget)?;
            let algo = if connected { "oracle-crdom" } else { "oracle-rdom" };
            Solution::new(algo, &g, &set, Some(0), None)
        }
        Problem::Pcenter | Problem::Cpcenter => {
            let connected = matches!(args.problem, Problem::Cpcenter);
            let p = args.p.ok_or_else(|| CliError::Input("p-center oracles need -p".into()))?;
            let (set, ecc) = exact_pcenter(&g, p, connected, method, &budget)?;
            let algo = if connected { "oracle-cpcenter" } else { "oracle-pcenter" };
            Solution::new(algo, &g, &set, Some(0), Some(ecc))
        }
    };
    emit_solution(cli, &sol)
}

fn gen(cli: &Cli, args: &GenArgs) -> Result<()> {
    let prefix = cli
        .output
        .as_ref()
        .ok_or_else(|| CliError::Input("gen needs -o <prefix>".into()))?;
    let kind = match args.kind {
        KindArg::Gnp => Kind::Gnp { n: args.n, p: args.p_edge },
        KindArg::Sparse => Kind::Sparse {
            n: args.n,
            m: args.m.unwrap_or(3 * args.n),
        },
        KindArg::Interval => Kind::Interval { n: args.n },
        KindArg::Spider => Kind::Spider {
            legs: args.legs,
            len: args.len,
        },
        KindArg::Tree => Kind::Tree { n: args.n },
    };
    let hi = args.r_max.unwrap_or(args.r_min);
    let inst = generate(&kind, args.r_min..=hi, args.seed)?;
    let with_ext = |ext: &str| {
        let mut s = prefix.as_os_str().to_owned();
        s.push(ext);
        PathBuf::from(s)
    };
    let n = inst.graph.n();
    write_file(&with_ext(".gr"), &inst.graph.to_gr())?;
    if let Some(td) = &inst.td {
        write_file(&with_ext(".td"), &td.to_td(n))?;
    }
    if args.r_max.is_some() {
        write_file(&with_ext(".r"), &inst.radii.to_text())?;
    }
    log::info!("wrote instance with n = {n}, m = {}", inst.graph.m());
    Ok(())
}

#[derive(Serialize)]
struct VerifyReport {
    ok: bool,
    size: usize,
    slack: usize,
    failures: Vec<String>,
}

fn verify(cli: &Cli, args: &VerifyArgs) -> Result<bool> {
    let g = read_graph(&args.graph.graph)?;
    let r = read_radii(&g, &args.radii)?;
    let sol = Solution::parse(&read(&args.solution)?).map_err(CliError::Input)?;
    if let Some(v) = sol.vertices.iter().find(|&&v| v > g.n()) {
        return Err(rdom_core::Error::VertexOutOfRange { v: *v, n: g.n() }.into());
    }
    if let Some(c) = &sol.checksum {
        let expected = checksum(&g);
        if *c != expected {
            return Err(CliError::Input(format!(
                "solution checksum {c} does not match the graph ({expected})"
            )));
        }
    }
    let slack = args.slack.or(sol.slack).unwrap_or(0);
    let set = sol.set();
    let mut failures = Vec::new();
    if set.is_empty() {
        failures.push("empty solution".to_string());
    } else {
        let dist = bfs::bfs(&g, &set, None)?;
        // the most violated vertex, smallest id on ties
        let excess = |v: usize| dist.dist(v).unwrap() as i64 - (r.get(v) + slack) as i64;
        let worst = (0..g.n()).max_by_key(|&v| (excess(v), std::cmp::Reverse(v))).unwrap();
        if excess(worst) > 0 {
            let v = worst;
            failures.push(format!(
                "coverage: vertex {} at distance {} > {} + {slack}",
                v + 1,
                dist.dist(v).unwrap(),
                r.get(v)
            ));
        }
    }
    if args.connected && !g.is_connected_subset(&set) {
        failures.push("connectivity: the set induces a disconnected subgraph".to_string());
    }
    if let Some(path) = &args.oracle {
        let bound = Solution::parse(&read(path)?).map_err(CliError::Input)?;
        if sol.size > bound.size {
            failures.push(format!("size: {} > oracle {}", sol.size, bound.size));
        }
    }
    let ok = failures.is_empty();
    let mut text = if ok { "OK\n".to_string() } else { String::new() };
    for f in &failures {
        text += &format!("FAIL {f}\n");
    }
    let report = VerifyReport {
        ok,
        size: sol.size,
        slack,
        failures,
    };
    emit(cli, text, report)?;
    Ok(ok)
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.command {
        Command::LpBuild(a) => lp_build(cli, a)?,
        Command::Rdom(a) => solve(cli, a, false)?,
        Command::Crdom(a) => solve(cli, a, true)?,
        Command::Pcenter(a) => pcenter(cli, a)?,
        Command::Oracle(a) => oracle(cli, a)?,
        Command::Gen(a) => gen(cli, a)?,
        Command::Verify(a) => {
            if !verify(cli, a)? {
                return Ok(ExitCode::from(5));
            }
        }
        Command::Bench(a) => bench::run(cli.output.as_deref(), a)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
