use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use arbtest::decomposition::{assign_edges_rounds, check_decomposition};
use arbtest::harness::generators::{LABEL_MAX_EDGES, LABEL_MAX_VERTICES};
use arbtest::harness::{
    gen_instance, label_instance, run_trials, scaling_sweep, write_csv, Family, InstanceDescriptor, Operation,
    TrialError, TrialReport, TrialSpec,
};
use arbtest::samplers::SamplerConstants;
use arbtest::{
    brute_force_arboricity_small, distance_to_arboricity, exact_arboricity, forest_decomposition, rounds_for,
    Epsilon, GraphError, QueryGraph, TesterConfig, Variant,
};

#[derive(Parser)]
#[command(name = "arbtest", version, about = "Tolerant testing of bounded arboricity")]
struct Cli {
    /// Base seed; trial i uses seed + i.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write per-trial rows to this CSV file.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// Print the summary as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for trial batches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance and write it as an edge list.
    Gen(GenArgs),
    /// Exact arboricity, distance, or brute-force arboricity.
    Oracle(OracleArgs),
    /// Run the full peeling and report the activity trace.
    Assign(AssignArgs),
    /// Run the local activity procedure on one vertex.
    Isactive(IsActiveArgs),
    /// Draw almost-uniform edges.
    SampleEdge(SampleEdgeArgs),
    /// Estimate the number of edges from below.
    EstimateM(EstimateArgs),
    /// Run the tester.
    Test(TestArgs),
    /// Query-count scaling sweep over matching-bipartite instances.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    MatchingBipartite,
    PlantedClique,
    FarBipartite,
    PreferentialAttachment,
    ErdosRenyi,
    Forest,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    #[arg(long)]
    n: usize,
    /// Edge count (m̄ for the matching families, m for far-bipartite).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 1)]
    alpha: usize,
    #[arg(long, default_value = "1/20")]
    eps: Epsilon,
    /// Edge probability for erdos-renyi.
    #[arg(long)]
    p: Option<f64>,
    /// Out-edges per vertex for preferential-attachment.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    clique_size: Option<usize>,
    #[arg(long)]
    max_degree: Option<usize>,
    /// Output edge-list file.
    #[arg(long)]
    out: PathBuf,
    /// Also compute exact-oracle labels.
    #[arg(long)]
    labels: bool,
}

#[derive(Args)]
struct GraphArg {
    /// Edge-list file: header `n m`, then one `u v` pair per line.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
#[group(multiple = false)]
struct OracleMode {
    #[arg(long)]
    distance: bool,
    #[arg(long)]
    arboricity: bool,
    #[arg(long)]
    bruteforce: bool,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, default_value_t = 1)]
    alpha: usize,
    #[command(flatten)]
    mode: OracleMode,
}

#[derive(Args)]
struct AssignArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    alpha: usize,
    #[arg(long, default_value = "1/20")]
    eps: Epsilon,
    #[arg(long, default_value_t = 0.0)]
    gamma: f64,
    /// Rounds; defaults to ⌈log_{6/5}(1/ε)⌉.
    #[arg(long)]
    ell: Option<usize>,
    /// Also build and check the forest decomposition.
    #[arg(long)]
    decompose: bool,
}

#[derive(Args)]
struct IsActiveArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    alpha: usize,
    #[arg(long)]
    vertex: usize,
    #[arg(long)]
    level: usize,
    #[arg(long, default_value_t = 0.25)]
    gamma: f64,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// Write zero wall times so equal seeds give identical CSV.
    #[arg(long)]
    deterministic: bool,
}

#[derive(Args)]
struct SampleEdgeArgs {
    #[command(flatten)]
    graph: GraphArg,
    /// Uniformity slack of the sampler.
    #[arg(long = "eps", alias = "eps-s", default_value_t = 0.1)]
    eps_s: f64,
    #[arg(long, default_value_t = 0.05)]
    delta: f64,
    /// Edge-count hint; defaults to the file's edge count.
    #[arg(long)]
    m_hint: Option<u64>,
    /// Number of sampler calls; the summary is the per-edge frequency table.
    #[arg(long, alias = "draws", default_value_t = 1)]
    trials: usize,
    #[arg(long)]
    deterministic: bool,
}

#[derive(Args)]
struct EstimateArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long)]
    deterministic: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantName {
    Standard,
    KnownM,
    KnownD,
    Bdm,
}

#[derive(Args)]
struct VariantArgs {
    #[arg(long, value_enum, default_value = "standard")]
    variant: VariantName,
    /// Exact edge count for known-m.
    #[arg(long)]
    m: Option<u64>,
    /// Degree bound for known-d and bdm.
    #[arg(long)]
    d: Option<usize>,
}

impl VariantArgs {
    fn resolve(&self) -> Result<Variant, CliError> {
        let need = |what: &str| CliError::Usage(format!("--variant needs --{what}"));
        Ok(match self.variant {
            VariantName::Standard => Variant::Standard,
            VariantName::KnownM => Variant::KnownM(self.m.ok_or_else(|| need("m"))?),
            VariantName::KnownD => Variant::KnownMaxDegree(self.d.ok_or_else(|| need("d"))?),
            VariantName::Bdm => Variant::BoundedDegreeModel(self.d.ok_or_else(|| need("d"))?),
        })
    }
}

#[derive(Args)]
struct TestArgs {
    #[command(flatten)]
    graph: GraphArg,
    #[arg(long)]
    alpha: usize,
    #[arg(long)]
    eps: Epsilon,
    #[command(flatten)]
    variant: VariantArgs,
    /// Override the number of peeling rounds.
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long)]
    deterministic: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, default_value_t = 1)]
    alpha: usize,
    #[arg(long, default_value = "1/20")]
    eps: Epsilon,
    #[arg(long, default_value_t = 10)]
    min_exp: u32,
    #[arg(long, default_value_t = 14)]
    max_exp: u32,
    /// Edges per vertex.
    #[arg(long, default_value_t = 0.25)]
    density: f64,
    #[arg(long, default_value_t = 5)]
    trials: usize,
    /// Use the known-m variant.
    #[arg(long)]
    known_m: bool,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("contract violation: {0}")]
    Contract(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => 1,
            CliError::Contract(_) => 2,
        }
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<TrialError> for CliError {
    fn from(e: TrialError) -> Self {
        if e.is_contract_violation() {
            CliError::Contract(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn load(path: &Path) -> Result<QueryGraph, CliError> {
    QueryGraph::read_edge_list_file(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut out, value).map_err(|e| CliError::Input(e.to_string()))?;
        writeln!(out)?;
    } else {
        writeln!(out, "{}", text())?;
    }
    Ok(())
}

fn check_caps(graph: &QueryGraph) -> Result<(), CliError> {
    if graph.n() > LABEL_MAX_VERTICES || graph.m() > LABEL_MAX_EDGES {
        return Err(CliError::Input(format!(
            "exact oracles are limited to n <= {LABEL_MAX_VERTICES} and m <= {LABEL_MAX_EDGES}"
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Gen(a) => gen(&cli, a),
        Command::Oracle(a) => oracle(&cli, a),
        Command::Assign(a) => assign(&cli, a),
        Command::Isactive(a) => {
            let graph = load(&a.graph.graph)?;
            graph.check_vertex(a.vertex)?;
            if a.level == 0 {
                return Err(CliError::Usage("--level must be at least 1".into()));
            }
            check_probability("gamma", a.gamma)?;
            check_probability("delta", a.delta)?;
            let op = Operation::IsActive {
                vertex: a.vertex,
                alpha: a.alpha,
                gamma: a.gamma,
                delta: a.delta,
                level: a.level,
            };
            trials(&cli, &graph, op, a.trials, a.deterministic)
        }
        Command::SampleEdge(a) => {
            let graph = load(&a.graph.graph)?;
            check_probability("eps", a.eps_s)?;
            check_probability("delta", a.delta)?;
            let op = Operation::SampleEdge {
                eps_s: a.eps_s,
                delta: a.delta,
                m_hint: a.m_hint.unwrap_or(graph.m() as u64),
                constants: SamplerConstants::default(),
            };
            trials(&cli, &graph, op, a.trials, a.deterministic)
        }
        Command::EstimateM(a) => {
            let graph = load(&a.graph.graph)?;
            check_probability("delta", a.delta)?;
            if graph.m() == 0 {
                return Err(CliError::Contract("estimate-m needs at least one edge".into()));
            }
            let op = Operation::EstimateM {
                delta: a.delta,
                constants: SamplerConstants::default(),
            };
            trials(&cli, &graph, op, a.trials, a.deterministic)
        }
        Command::Test(a) => {
            let graph = load(&a.graph.graph)?;
            let mut config = TesterConfig::new(a.alpha, a.eps).with_variant(a.variant.resolve()?);
            config.ell = a.ell;
            config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
            trials(&cli, &graph, Operation::Test(config), a.trials, a.deterministic)
        }
        Command::Bench(a) => bench(&cli, a),
    }
}

fn check_probability(name: &str, x: f64) -> Result<(), CliError> {
    if x > 0.0 && x < 1.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("--{name} must lie in (0, 1), got {x}")))
    }
}

#[derive(Serialize)]
struct TrialSummary<'a> {
    trials: usize,
    verdicts: std::collections::BTreeMap<&'a str, usize>,
    mean_degree_queries: f64,
    mean_neighbor_queries: f64,
    m_bar_min: Option<u64>,
    m_bar_max: Option<u64>,
    m_bar_outside_contract: usize,
}

fn trials(cli: &Cli, graph: &QueryGraph, operation: Operation, count: usize, deterministic: bool) -> Result<(), CliError> {
    if count == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let spec = TrialSpec {
        operation,
        trials: count,
        seed: cli.seed,
        threads: cli.threads,
    };
    let reports = run_trials(graph, &spec)?;
    if let Some(path) = &cli.csv {
        let file = File::create(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        write_csv(&reports, BufWriter::new(file), deterministic)?;
    }
    let summary = summarize(&reports);
    emit(cli.json, &summary, || {
        let mut text = format!(
            "trials {}\nmean degree queries {:.1}\nmean neighbor queries {:.1}",
            summary.trials, summary.mean_degree_queries, summary.mean_neighbor_queries
        );
        for (k, v) in &summary.verdicts {
            text.push_str(&format!("\n{k}\t{v}"));
        }
        if let (Some(lo), Some(hi)) = (summary.m_bar_min, summary.m_bar_max) {
            text.push_str(&format!("\nm_bar range [{lo}, {hi}]"));
        }
        if summary.m_bar_outside_contract > 0 {
            text.push_str(&format!(
                "\nwarning: {} trials had m_bar outside [m/2, m]",
                summary.m_bar_outside_contract
            ));
        }
        text
    })
}

fn summarize(reports: &[TrialReport]) -> TrialSummary<'_> {
    let mut verdicts = std::collections::BTreeMap::new();
    for r in reports {
        *verdicts.entry(r.verdict.as_str()).or_insert(0) += 1;
    }
    let k = reports.len() as f64;
    TrialSummary {
        trials: reports.len(),
        verdicts,
        mean_degree_queries: reports.iter().map(|r| r.degree_queries as f64).sum::<f64>() / k,
        mean_neighbor_queries: reports.iter().map(|r| r.neighbor_queries as f64).sum::<f64>() / k,
        m_bar_min: reports.iter().filter_map(|r| r.m_bar).min(),
        m_bar_max: reports.iter().filter_map(|r| r.m_bar).max(),
        m_bar_outside_contract: reports.iter().filter(|r| r.m_bar_in_contract == Some(false)).count(),
    }
}

fn gen(cli: &Cli, a: &GenArgs) -> Result<(), CliError> {
    let need = |what: &str| CliError::Usage(format!("--family needs --{what}"));
    let family = match a.family {
        FamilyName::MatchingBipartite => Family::MatchingBipartite {
            n: a.n,
            m_bar: a.m.ok_or_else(|| need("m"))?,
            alpha: a.alpha,
        },
        FamilyName::PlantedClique => Family::PlantedClique {
            n: a.n,
            m_bar: a.m.ok_or_else(|| need("m"))?,
            alpha: a.alpha,
            clique_size: a.clique_size,
        },
        FamilyName::FarBipartite => Family::FarBipartite {
            n: a.n,
            m: a.m.ok_or_else(|| need("m"))?,
            alpha: a.alpha,
            eps: a.eps,
        },
        FamilyName::PreferentialAttachment => Family::PreferentialAttachment {
            n: a.n,
            k: a.k.unwrap_or(a.alpha),
        },
        FamilyName::ErdosRenyi => Family::ErdosRenyi {
            n: a.n,
            p: a.p.ok_or_else(|| need("p"))?,
        },
        FamilyName::Forest => Family::Forest {
            n: a.n,
            max_degree: a.max_degree,
        },
    };
    let desc = InstanceDescriptor::new(family, cli.seed);
    let graph = gen_instance(&desc).map_err(|e| CliError::Usage(e.to_string()))?;
    let file = File::create(&a.out).map_err(|e| CliError::Input(format!("{}: {e}", a.out.display())))?;
    let mut w = BufWriter::new(file);
    graph.write_edge_list(&mut w)?;
    w.flush()?;
    let labels = if a.labels {
        label_instance(&graph, &[a.alpha, 3 * a.alpha])
    } else {
        None
    };
    let value = json!({ "descriptor": desc, "n": graph.n(), "m": graph.m(), "labels": labels });
    emit(cli.json, &value, || {
        let mut text = format!("wrote {} (n={}, m={})", a.out.display(), graph.n(), graph.m());
        if let Some(l) = &labels {
            text.push_str(&format!("\narboricity {}", l.arboricity));
            for d in &l.distances {
                text.push_str(&format!(
                    "\ndistance to arboricity {}: {} deletions ({:.4} of m)",
                    d.alpha_target,
                    d.deletions_needed,
                    d.eps_exact()
                ));
            }
        }
        text
    })
}

fn oracle(cli: &Cli, a: &OracleArgs) -> Result<(), CliError> {
    let graph = load(&a.graph.graph)?;
    if a.mode.bruteforce {
        let value = brute_force_arboricity_small(&graph).map_err(|e| CliError::Usage(e.to_string()))?;
        return emit(cli.json, &json!({ "bruteforce_arboricity": value }), || {
            format!("brute-force arboricity {value}")
        });
    }
    check_caps(&graph)?;
    if a.mode.arboricity {
        let value = exact_arboricity(&graph);
        return emit(cli.json, &json!({ "arboricity": value }), || format!("arboricity {value}"));
    }
    if a.alpha == 0 {
        return Err(CliError::Usage("--alpha must be at least 1".into()));
    }
    let d = distance_to_arboricity(&graph, a.alpha);
    emit(cli.json, &d, || {
        format!(
            "alpha {}\nmax forest union {}\ndeletions needed {}\neps exact {:.6}",
            d.alpha_target,
            d.max_forest_union_size,
            d.deletions_needed,
            d.eps_exact()
        )
    })
}

fn assign(cli: &Cli, a: &AssignArgs) -> Result<(), CliError> {
    let graph = load(&a.graph.graph)?;
    if a.alpha == 0 {
        return Err(CliError::Usage("--alpha must be at least 1".into()));
    }
    if a.gamma < 0.0 {
        return Err(CliError::Usage("--gamma must be non-negative".into()));
    }
    let ell = a.ell.unwrap_or_else(|| rounds_for(a.eps.to_f64()));
    let trace = assign_edges_rounds(&graph, a.alpha, ell, a.gamma);
    let check = if a.decompose {
        let dec = forest_decomposition(&graph, &trace, a.alpha).map_err(|e| CliError::Input(e.to_string()))?;
        Some((dec.removed_edges.len(), dec.removal_bound, check_decomposition(&graph, &dec)))
    } else {
        None
    };
    let value = json!({
        "ell": ell,
        "remaining_edges": trace.remaining_edges,
        "active_after_last_round": trace.active_after(ell).len(),
        "decomposition": check.as_ref().map(|(removed, bound, c)| json!({
            "removed": removed, "removal_bound": bound, "valid": c.is_valid(a.alpha), "check": c,
        })),
    });
    emit(cli.json, &value, || {
        let mut text = format!(
            "ell {ell}\nremaining edges per round {:?}\nactive after round {ell}: {}",
            trace.remaining_edges,
            trace.active_after(ell).len()
        );
        if let Some((removed, bound, c)) = &check {
            text.push_str(&format!(
                "\nremoved {removed} (bound {bound}), forests used {}, max out-degree {}, valid {}",
                c.forests_used,
                c.max_out_degree,
                c.is_valid(a.alpha)
            ));
        }
        text
    })
}

fn bench(cli: &Cli, a: &BenchArgs) -> Result<(), CliError> {
    if a.min_exp > a.max_exp || a.max_exp > 20 {
        return Err(CliError::Usage("need min-exp <= max-exp <= 20".into()));
    }
    let mut config = TesterConfig::new(a.alpha, a.eps);
    if a.known_m {
        config.variant = Variant::KnownM(0);
    }
    config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let exponents: Vec<u32> = (a.min_exp..=a.max_exp).collect();
    let report = scaling_sweep(&exponents, a.density, &config, a.trials, cli.seed, cli.threads)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    emit(cli.json, &report, || {
        let mut text = String::from("n\tm\tmean_queries\tratio_to_envelope\tratio_to_density");
        for (i, p) in report.points.iter().enumerate() {
            text.push_str(&format!(
                "\n{}\t{}\t{:.0}\t{:.4e}\t{:.4e}",
                p.n, p.m, p.mean_queries, report.envelope_ratios[i], report.density_ratios[i]
            ));
        }
        text.push_str(&format!(
            "\nfitted c {:.4e} in c*n/sqrt(m)*ln^3(n)\nlog-log slope {:.3}",
            report.fitted_c, report.loglog_slope
        ));
        text
    })
}
