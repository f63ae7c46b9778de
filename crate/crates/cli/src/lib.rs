//! Command-line surface for the graph-experiment library: thin wrappers
//! that parse files, call into `sepgrad-core` with the given parameters
//! and seeds, and render reports (JSON or CSV). Exit taxonomy: 0 on
//! success, 2 on argument or input errors, 3 on honest refusals (size
//! limits, budgets, resampling exhaustion).

pub mod formats;

use std::fmt;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;

use formats::*;
use sepgrad_core::approx::{ptas_independent_set, subgraph_test};
use sepgrad_core::expanders::{expander_separator_experiment, subexponential_reference};
use sepgrad_core::fragility::{
    grid_packing, iterated_vs_packing, layered_removal_sets, split_constants, thickness,
    FractionalPacking, PackingMode, SplitConstants, WitnessClassSpec,
    DEFAULT_ENUMERATION_BUDGET,
};
use sepgrad_core::graph::{strong_product_cube, subdivide_uniform, write_edge_list};
use sepgrad_core::minors::{
    densify_or_clique, expansion_bound_from_witness, iter3_params, nabla_brute, nabla_greedy,
    shallow_clique,
};
use sepgrad_core::separators::{
    exact_min_balanced_separation, heuristic_balanced_separation,
};
use sepgrad_core::treedecomp::{
    build_bounded_reuse_decomposition, treewidth_budget_from_profile, validate_decomposition,
};
use sepgrad_core::Graph;

#[derive(Debug)]
pub enum CliError {
    Core(sepgrad_core::Error),
    Io(std::io::Error),
    Json(serde_json::Error),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
            CliError::Json(e) => write!(f, "json error: {e}"),
            CliError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl From<sepgrad_core::Error> for CliError {
    fn from(e: sepgrad_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

impl CliError {
    /// 2 for argument/input errors, 3 for honest refusals.
    pub fn exit_code(&self) -> i32 {
        use sepgrad_core::Error::*;
        match self {
            CliError::Core(TooLarge(_))
            | CliError::Core(ThicknessTooLarge(_))
            | CliError::Core(BudgetExceeded { .. })
            | CliError::Core(EnumerationBudget { .. })
            | CliError::Core(RejectionBudget(_)) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        use sepgrad_core::Error::*;
        match self {
            CliError::Core(Parse { .. }) => "parse",
            CliError::Core(InvalidArgument(_)) => "invalid_argument",
            CliError::Core(TooLarge(_)) => "too_large",
            CliError::Core(BudgetExceeded { .. }) => "budget_exceeded",
            CliError::Core(EnumerationBudget { .. }) => "enumeration_budget",
            CliError::Core(ThicknessTooLarge(_)) => "thickness_too_large",
            CliError::Core(RejectionBudget(_)) => "rejection_budget",
            CliError::Io(_) => "io",
            CliError::Json(_) => "json",
            CliError::Usage(_) => "usage",
        }
    }
}

fn ratio_arg(s: &str) -> Result<Rational64, String> {
    parse_exact_rational(s)
}

#[derive(Parser, Debug)]
#[command(
    name = "sepgrad",
    version,
    about = "Desk-scale experiments with balanced separators, fractional vertex packings, and shallow minors"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate graphs in edge-list format.
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Compute a balanced separation.
    Separate {
        #[command(subcommand)]
        how: SeparateCmd,
    },
    /// Build and validate a bounded-reuse tree decomposition.
    Decompose(DecomposeArgs),
    /// Construct fractional complementary packings.
    Pack {
        #[command(subcommand)]
        what: PackCmd,
    },
    /// Near-optimal independent set driven by a packing.
    Ptas(PtasArgs),
    /// Subgraph presence test driven by a packing.
    Subgraph(SubgraphArgs),
    /// Minor-density measurement.
    Nabla {
        #[command(subcommand)]
        how: NablaCmd,
    },
    /// One densify-or-clique pass.
    Densify(DensifyArgs),
    /// Shallow clique-minor extraction driver.
    ShallowClique(ShallowArgs),
    /// Formula calculators.
    Params {
        #[command(subcommand)]
        which: ParamsCmd,
    },
    /// Subdivided-expander separator experiment.
    ExpanderVerify(ExpanderArgs),
    /// Sweep minor density over depths against the subexponential curve.
    Profile(ProfileArgs),
}

#[derive(Subcommand, Debug)]
pub enum GenCmd {
    /// Strong product of three n-vertex paths.
    Grid3 {
        #[arg(long)]
        n: usize,
    },
    /// Random simple d-regular graph (pairing model).
    Regular {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Subdivide every edge of a graph the same number of times.
    Subdivide {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        count: usize,
    },
    /// Complete graph on t vertices with every edge subdivided once.
    K1t {
        #[arg(long)]
        t: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum SeparateCmd {
    /// Exact minimum balanced separation (small graphs).
    Exact {
        #[arg(long)]
        input: PathBuf,
        /// Refuse graphs larger than this.
        #[arg(long, default_value_t = 30)]
        limit: usize,
    },
    /// BFS-layer heuristic (any size).
    Heuristic {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Degree bound; defaults to the graph's maximum degree.
    #[arg(long)]
    pub delta: Option<usize>,
    /// Treewidth budget for the bag-size bound.
    #[arg(long, conflicts_with_all = ["sep_c", "sep_psi"])]
    pub tw_budget: Option<usize>,
    /// Alternatively, derive the budget from a separator profile c * n^psi.
    #[arg(long, requires = "sep_psi")]
    pub sep_c: Option<f64>,
    #[arg(long, requires = "sep_c")]
    pub sep_psi: Option<f64>,
}

#[derive(Subcommand, Debug)]
pub enum PackCmd {
    /// Modular packing on the strong product of three n-paths.
    Grid {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = ratio_arg)]
        eps: Rational64,
    },
    /// Residue-class removal sets of a tree decomposition.
    Layered {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        decomposition: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Iterated layered packing with the derived constant profile.
    Iterated {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_parser = ratio_arg)]
        eps: Rational64,
        /// Separator profile coefficient (s(n) <= c * n^delta).
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        iota: f64,
        /// Degree bound; defaults to the graph's maximum degree.
        #[arg(long)]
        max_deg: Option<usize>,
        #[arg(long, value_parser = ["enumerate", "sample"], default_value = "enumerate")]
        mode: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
        support_budget: usize,
    },
}

#[derive(Args, Debug)]
pub struct PtasArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub pack: PathBuf,
    #[arg(long, value_parser = ratio_arg)]
    pub eps: Rational64,
    /// Witness component bound; defaults to the packing's recorded bound.
    #[arg(long)]
    pub bound: Option<usize>,
}

#[derive(Args, Debug)]
pub struct SubgraphArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub pattern: PathBuf,
    #[arg(long)]
    pub pack: PathBuf,
    #[arg(long)]
    pub bound: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum NablaCmd {
    /// Exact maximum k-minor density (at most 10 vertices).
    Brute {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Certified greedy lower bound.
    Greedy {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args, Debug)]
pub struct DensifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub t: usize,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub c: f64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 16)]
    pub retries: usize,
}

#[derive(Args, Debug)]
pub struct ShallowArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub eps: f64,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum ParamsCmd {
    /// Constant chain of the iterated packing construction.
    SplitConstants {
        #[arg(long)]
        c: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        iota: f64,
        #[arg(long)]
        max_deg: usize,
    },
    /// Parameters of the small-graph clique-extraction regime.
    Iter3 {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        delta: f64,
        #[arg(long)]
        mu: f64,
        #[arg(long)]
        b: f64,
    },
    /// Expansion bound f(k) = 2 * g(1/(4k+4), k) from a tabulated g value.
    ExpansionBound {
        #[arg(long)]
        k: usize,
        /// The witness value g(1/(4k+4), k).
        #[arg(long)]
        g_value: f64,
    },
}

#[derive(Args, Debug)]
pub struct ExpanderArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_parser = ["csv", "json"], default_value = "csv")]
    pub format: String,
}

#[derive(Args, Debug)]
pub struct ProfileArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub k_max: usize,
    #[arg(long, default_value_t = 1.0)]
    pub gamma: f64,
}

/// Run one parsed command and return the rendered report.
pub fn execute(command: &Command) -> Result<String, CliError> {
    match command {
        Command::Gen { what } => gen_cmd(what),
        Command::Separate { how } => separate_cmd(how),
        Command::Decompose(args) => decompose_cmd(args),
        Command::Pack { what } => pack_cmd(what),
        Command::Ptas(args) => ptas_cmd(args),
        Command::Subgraph(args) => subgraph_cmd(args),
        Command::Nabla { how } => nabla_cmd(how),
        Command::Densify(args) => densify_cmd(args),
        Command::ShallowClique(args) => shallow_cmd(args),
        Command::Params { which } => params_cmd(which),
        Command::ExpanderVerify(args) => expander_cmd(args),
        Command::Profile(args) => profile_cmd(args),
    }
}

fn gen_cmd(what: &GenCmd) -> Result<String, CliError> {
    let g: Graph = match what {
        GenCmd::Grid3 { n } => strong_product_cube(*n)?,
        GenCmd::Regular { n, d, seed } => sepgrad_core::expanders::random_regular(*n, *d, *seed)?,
        GenCmd::Subdivide { input, count } => {
            let g = read_graph_file(input)?;
            subdivide_uniform(&g, *count)
        }
        GenCmd::K1t { t } => {
            if *t == 0 {
                Graph::empty(0)
            } else {
                subdivide_uniform(&Graph::complete(*t), 1)
            }
        }
    };
    Ok(write_edge_list(&g))
}

fn separate_cmd(how: &SeparateCmd) -> Result<String, CliError> {
    let sep = match how {
        SeparateCmd::Exact { input, limit } => {
            let g = read_graph_file(input)?;
            exact_min_balanced_separation(&g, *limit)?
        }
        SeparateCmd::Heuristic { input } => {
            let g = read_graph_file(input)?;
            heuristic_balanced_separation(&g)
        }
    };
    to_json(&separation_doc(&sep))
}

fn decompose_cmd(args: &DecomposeArgs) -> Result<String, CliError> {
    let g = read_graph_file(&args.input)?;
    let delta = args.delta.unwrap_or_else(|| g.max_degree());
    let tw_budget = match (args.tw_budget, args.sep_c, args.sep_psi) {
        (Some(b), _, _) => b,
        (None, Some(c), Some(psi)) => treewidth_budget_from_profile(c, psi, g.n())?,
        _ => {
            return Err(CliError::Usage(
                "decompose needs --tw-budget or both --sep-c and --sep-psi".into(),
            ))
        }
    };
    let t = build_bounded_reuse_decomposition(&g, delta, tw_budget)?;
    let report = validate_decomposition(&g, &t);
    debug_assert!(report.violations.is_empty());
    to_json(&decomposition_doc(&t))
}

fn pack_cmd(what: &PackCmd) -> Result<String, CliError> {
    match what {
        PackCmd::Grid { n, eps } => {
            let gp = grid_packing(*n, *eps)?;
            let host = strong_product_cube(*n)?;
            let thick = thickness(&host, &gp.packing)?;
            let doc = packing_doc(
                &gp.packing,
                PackingMeta {
                    mode: "grid".into(),
                    eps: Some(rational_to_string(eps)),
                    bound: Some(gp.component_bound),
                    seed: None,
                    thickness: Some(big_rational_to_string(&thick)),
                },
            );
            to_json(&doc)
        }
        PackCmd::Layered {
            input,
            decomposition,
            k,
        } => {
            let g = read_graph_file(input)?;
            let doc: DecompositionDoc =
                serde_json::from_str(&std::fs::read_to_string(decomposition)?)?;
            let t = decomposition_from_doc(&doc);
            let sets = layered_removal_sets(&g, &t, *k)?;
            let pi = FractionalPacking::uniform(sets)?;
            let thick = thickness(&g, &pi)?;
            let doc = packing_doc(
                &pi,
                PackingMeta {
                    mode: "layered".into(),
                    eps: None,
                    bound: None,
                    seed: None,
                    thickness: Some(big_rational_to_string(&thick)),
                },
            );
            to_json(&doc)
        }
        PackCmd::Iterated {
            input,
            eps,
            c,
            delta,
            iota,
            max_deg,
            mode,
            samples,
            seed,
            support_budget,
        } => {
            let g = read_graph_file(input)?;
            let consts: SplitConstants =
                split_constants(*c, *delta, *iota, max_deg.unwrap_or_else(|| g.max_degree()))?;
            let packing_mode = match mode.as_str() {
                "enumerate" => PackingMode::Enumerate {
                    support_budget: *support_budget,
                },
                _ => PackingMode::Sample { count: *samples },
            };
            let out = iterated_vs_packing(&g, *eps, &consts, packing_mode, *seed)?;
            let thick = thickness(&g, &out.packing)?;
            let doc = packing_doc(
                &out.packing,
                PackingMeta {
                    mode: mode.clone(),
                    eps: Some(rational_to_string(eps)),
                    bound: Some(out.achieved_bound),
                    seed: matches!(packing_mode, PackingMode::Sample { .. }).then_some(*seed),
                    thickness: Some(big_rational_to_string(&thick)),
                },
            );
            to_json(&doc)
        }
    }
}

fn load_packing(path: &std::path::Path) -> Result<(FractionalPacking, PackingMeta), CliError> {
    let doc: PackingDoc = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    Ok((packing_from_doc(&doc)?, doc.meta))
}

fn witness_bound(flag: Option<usize>, meta: &PackingMeta) -> Result<usize, CliError> {
    flag.or(meta.bound).ok_or_else(|| {
        CliError::Usage("no --bound given and the packing records none".into())
    })
}

fn ptas_cmd(args: &PtasArgs) -> Result<String, CliError> {
    let g = read_graph_file(&args.input)?;
    let (pi, meta) = load_packing(&args.pack)?;
    let bound = witness_bound(args.bound, &meta)?;
    let w = WitnessClassSpec::new(bound)?;
    let r = ptas_independent_set(&g, args.eps, &pi, w)?;
    to_json(&IndependentSetDoc {
        vertices: r.vertices.iter().collect(),
        size: r.size,
        support_index: r.support_index,
    })
}

fn subgraph_cmd(args: &SubgraphArgs) -> Result<String, CliError> {
    let g = read_graph_file(&args.input)?;
    let h = read_graph_file(&args.pattern)?;
    let (pi, meta) = load_packing(&args.pack)?;
    let bound = witness_bound(args.bound, &meta)?;
    let w = WitnessClassSpec::new(bound)?;
    let found = subgraph_test(&g, &h, &pi, w)?;
    to_json(&serde_json::json!({ "found": found }))
}

fn nabla_cmd(how: &NablaCmd) -> Result<String, CliError> {
    let report = match how {
        NablaCmd::Brute { input, k } => {
            let g = read_graph_file(input)?;
            nabla_brute(&g, *k)?
        }
        NablaCmd::Greedy { input, k } => {
            let g = read_graph_file(input)?;
            nabla_greedy(&g, *k)
        }
    };
    to_json(&density_report_doc(&report))
}

fn densify_cmd(args: &DensifyArgs) -> Result<String, CliError> {
    let g = read_graph_file(&args.input)?;
    let out = densify_or_clique(&g, args.t, args.eps, args.c, args.seed, args.retries)?;
    to_json(&densify_outcome_doc(&out))
}

fn shallow_cmd(args: &ShallowArgs) -> Result<String, CliError> {
    let g = read_graph_file(&args.input)?;
    let report = shallow_clique(&g, args.eps, args.seed)?;
    to_json(&shallow_clique_doc(&report))
}

fn params_cmd(which: &ParamsCmd) -> Result<String, CliError> {
    match which {
        ParamsCmd::SplitConstants {
            c,
            delta,
            iota,
            max_deg,
        } => {
            let sc = split_constants(*c, *delta, *iota, *max_deg)?;
            to_json(&serde_json::json!({
                "c": sc.c,
                "delta": sc.delta,
                "iota": sc.iota,
                "max_deg": sc.max_deg,
                "c1": sc.c1,
                "c2": sc.c2,
                "c2prime": sc.c2prime,
                "c3": sc.c3,
                "c4": sc.c4,
                "c5": sc.c5,
                "b": sc.b,
            }))
        }
        ParamsCmd::Iter3 { k, delta, mu, b } => {
            let p = iter3_params(*k, *delta, *mu, *b)?;
            to_json(&serde_json::json!({ "eps": p.eps, "m": p.m, "t": p.t }))
        }
        ParamsCmd::ExpansionBound { k, g_value } => {
            let f = expansion_bound_from_witness(|_, _| *g_value, *k);
            to_json(&serde_json::json!({
                "k": k,
                "eps": 1.0 / (4.0 * *k as f64 + 4.0),
                "f": f,
            }))
        }
    }
}

fn expander_cmd(args: &ExpanderArgs) -> Result<String, CliError> {
    let report = expander_separator_experiment(args.n, args.m, args.seed)?;
    match args.format.as_str() {
        "json" => to_json(&expander_report_doc(&report)),
        _ => Ok(format!(
            "{}\n{}",
            EXPANDER_CSV_HEADER,
            expander_csv_row(&report)
        )),
    }
}

fn profile_cmd(args: &ProfileArgs) -> Result<String, CliError> {
    let g = read_graph_file(&args.input)?;
    let mut out = String::from(PROFILE_CSV_HEADER);
    for k in 0..=args.k_max {
        let density = if g.n() <= 10 {
            nabla_brute(&g, k)?.density
        } else {
            nabla_greedy(&g, k).density
        };
        out.push_str(&format!(
            "\n{},{:.6},{:.6}",
            k,
            rational_to_f64(&density),
            subexponential_reference(args.gamma, k)
        ));
    }
    Ok(out)
}
