use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use forge_core::cayley::{build_cayley, check_s3, parse_group_spec, realize_full, realize_window, DEFAULT_ELEMENT_CAP};
use forge_core::hypergroup::check_conditions;
use forge_core::walks::{DEFAULT_ENUMERATION_CAP, DEFAULT_PATTERN_CAP};
use forge_core::{
    brute_force_conditional, build_table, classify, commute_check, irreducibility, joint_distance_law,
    jump_distribution, left_nested_product, load_fixture, markov_check, monte_carlo_conditional, norm_bounds,
    paper_regression, search_conjecture, stationary_check, transition_matrix, verify_maincoro, BasePolicy,
    Fixture, ForgeError, JumpPattern, StructureTable, WalkDistribution,
};

/// Hypergroups and pre-hypergroups of pointed graphs.
#[derive(Parser)]
#[command(name = "forge", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized estimators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Directory holding figureN.json overrides.
    #[arg(long, global = true, env = "FORGE_FIXTURES")]
    fixtures: Option<PathBuf>,
    /// Maximum number of group elements in a realized window.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    cap_elements: usize,
    /// Maximum number of tuples for brute-force enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    cap_enumeration: u128,
    /// Maximum number of distance patterns in a joint law.
    #[arg(long, global = true, default_value_t = DEFAULT_PATTERN_CAP)]
    cap_patterns: u128,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Graph-level checks.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Cayley graph realization.
    #[command(subcommand)]
    Cayley(CayleyCmd),
    /// Structure constants and classification.
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// m-fold products by four routes.
    #[command(subcommand)]
    Product(ProductCmd),
    /// Random walks on Cayley graphs.
    #[command(subcommand)]
    Walk(WalkCmd),
    /// Transition matrices.
    #[command(subcommand)]
    Matrix(MatrixCmd),
    /// Exhaustive search over small pointed graphs.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Recompute every published example value.
    PaperRegression,
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Simple, connected, locally finite, condition (iii).
    Check { fixture: String },
}

#[derive(Subcommand)]
enum CayleyCmd {
    /// Build Cay(G, S) and its ball around the identity.
    Realize {
        /// zmod:n1,n2,..., lattice:d, free:n or perm:FILE.
        group: String,
        /// Generators separated by `;`, e.g. "(1,0);(2,0);(0,1)".
        #[arg(long)]
        gens: Option<String>,
        /// Ball radius; the whole group when omitted.
        #[arg(long)]
        radius: Option<usize>,
    },
}

#[derive(Subcommand)]
enum HyperCmd {
    /// The table of p_{i,j}^k.
    Table {
        fixture: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Commutativity, associativity and the verdict.
    Classify {
        fixture: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// (S1), (S2) and distance regularity.
    Conditions { fixture: String },
}

#[derive(Args)]
struct PatternArgs {
    fixture: String,
    /// Jump indices, e.g. 1,2,1.
    #[arg(long)]
    pattern: JumpPattern,
}

#[derive(Subcommand)]
enum ProductCmd {
    /// Left-nested product x_{i1} ∘ ... ∘ x_{im}.
    Pl(PatternArgs),
    /// Jump distribution J(i1, ..., im).
    J(PatternArgs),
    /// Exhaustive enumeration over group elements.
    Brute(PatternArgs),
    /// Monte Carlo estimate over group elements.
    Mc {
        #[command(flatten)]
        args: PatternArgs,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
    },
}

#[derive(Args)]
struct WalkArgs {
    fixture: String,
    /// `uniform` or a JSON file mapping index to probability.
    #[arg(long, default_value = "uniform")]
    alpha: String,
    #[arg(long, default_value_t = 3)]
    depth: usize,
}

#[derive(Subcommand)]
enum WalkCmd {
    /// Exact joint law of (Z_1, ..., Z_depth).
    Joint(WalkArgs),
    /// Whether (Z_n) is Markov or i.i.d. up to the depth.
    Markov(WalkArgs),
}

#[derive(Subcommand)]
enum MatrixCmd {
    /// Upper and lower bounds on ‖P_k‖.
    Norms {
        fixture: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Whether the P_k commute, and agreement with associativity.
    Commute { fixture: String },
    /// The stationary vector of the walk.
    Stationary { fixture: String },
    /// P_{i1} ⋯ P_{im} against the J-weighted combination.
    Maincoro {
        #[command(flatten)]
        args: PatternArgs,
        /// Report even when the hypotheses fail.
        #[arg(long)]
        informational: bool,
    },
    /// Communicating classes of P_k.
    Irreducible {
        fixture: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Bases {
    All,
    Canonical,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Every connected graph up to the vertex count, filtered by (S1), (S2).
    Conjecture {
        #[arg(long, default_value_t = 7)]
        max_vertices: usize,
        #[arg(long, value_enum, default_value_t = Bases::All)]
        bases: Bases,
    },
}

enum Outcome {
    Pass,
    Fail,
}

fn outcome(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

struct Ctx {
    global: Global,
}

impl Ctx {
    fn fixture(&self, spec: &str) -> forge_core::Result<Fixture> {
        load_fixture(spec, self.global.fixtures.as_deref())
    }

    fn table(&self, fixture: &Fixture, bound: Option<usize>) -> forge_core::Result<StructureTable> {
        build_table(fixture.pointed(), bound, fixture.name())
    }

    fn emit<T: Serialize>(&self, value: &T) -> Result<(), String> {
        let value = serde_json::to_value(value).map_err(|e| e.to_string())?;
        let text = match self.global.format {
            Format::Json => serde_json::to_string_pretty(&value).map_err(|e| e.to_string())? + "\n",
            Format::Tsv => {
                let mut lines = Vec::new();
                flatten("", &value, &mut lines);
                lines.join("\n") + "\n"
            }
        };
        match &self.global.out {
            Some(path) => std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

/// One `path<TAB>value` line per scalar leaf.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<String>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push(format!("{prefix}\t{s}")),
        other => out.push(format!("{prefix}\t{other}")),
    }
}

fn run(ctx: &Ctx, command: &Command) -> forge_core::Result<(Value, Outcome)> {
    let g = &ctx.global;
    Ok(match command {
        Command::Graph(GraphCmd::Check { fixture }) => {
            let f = ctx.fixture(fixture)?;
            let report = f.pointed().check_assumptions();
            let ok = report.all_pass();
            (
                json!({
                    "fixture": f.name(),
                    "vertices": f.pointed().vertex_count(),
                    "edges": f.pointed().graph().edge_count(),
                    "truncated": f.pointed().is_truncated(),
                    "exact_radius": f.pointed().exact_radius(),
                    "index_set": f.pointed().index_set(),
                    "assumptions": report,
                }),
                outcome(ok),
            )
        }
        Command::Cayley(CayleyCmd::Realize { group, gens, radius }) => {
            let (kind, standard) = parse_group_spec(group)?;
            let generators = match gens {
                Some(text) => text
                    .split(';')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| kind.parse_element(s))
                    .collect::<forge_core::Result<Vec<_>>>()?,
                None => standard,
            };
            let cg = build_cayley(kind, generators)?;
            let window = match radius {
                Some(r) => realize_window(&cg, *r, g.cap_elements)?,
                None => realize_full(&cg, g.cap_elements)?,
            };
            let s3 = check_s3(&window)?;
            let ok = s3.holds;
            let pg = window.pointed();
            let elements: Vec<Value> = (0..window.element_count())
                .map(|v| json!({ "vertex": v, "element": window.element(v).to_string(), "norm": pg.norm(v) }))
                .collect();
            (
                json!({
                    "group": group,
                    "generators": cg.generators().iter().map(|s| s.to_string()).collect::<Vec<_>>(),
                    "complete": window.is_complete(),
                    "vertices": pg.vertex_count(),
                    "edges": pg.graph().edge_count(),
                    "sphere_sizes": (0..pg.sphere_count()).map(|n| pg.sphere(n).len()).collect::<Vec<_>>(),
                    "s3": s3,
                    "elements": elements,
                    "graph": pg.to_file(),
                }),
                outcome(ok),
            )
        }
        Command::Hyper(HyperCmd::Table { fixture, bound }) => {
            let f = ctx.fixture(fixture)?;
            (serde_json::to_value(ctx.table(&f, *bound)?)?, Outcome::Pass)
        }
        Command::Hyper(HyperCmd::Classify { fixture, bound }) => {
            let f = ctx.fixture(fixture)?;
            (serde_json::to_value(classify(&ctx.table(&f, *bound)?)?)?, Outcome::Pass)
        }
        Command::Hyper(HyperCmd::Conditions { fixture }) => {
            let f = ctx.fixture(fixture)?;
            (serde_json::to_value(check_conditions(f.pointed())?)?, Outcome::Pass)
        }
        Command::Product(cmd) => product(ctx, cmd)?,
        Command::Walk(cmd) => {
            let args = match cmd {
                WalkCmd::Joint(a) | WalkCmd::Markov(a) => a,
            };
            let f = ctx.fixture(&args.fixture)?;
            let window = f.require_cayley()?;
            let alpha = if args.alpha == "uniform" {
                WalkDistribution::uniform(window.pointed())?
            } else {
                let text = std::fs::read_to_string(&args.alpha).map_err(|source| ForgeError::Io {
                    path: args.alpha.clone(),
                    source,
                })?;
                WalkDistribution::from_json(&text, window.pointed())?
            };
            let law = joint_distance_law(window, &alpha, args.depth, g.cap_patterns)?;
            match cmd {
                WalkCmd::Joint(_) => (serde_json::to_value(&law)?, Outcome::Pass),
                WalkCmd::Markov(_) => (serde_json::to_value(markov_check(&law))?, Outcome::Pass),
            }
        }
        Command::Matrix(cmd) => matrix(ctx, cmd)?,
        Command::Search(SearchCmd::Conjecture { max_vertices, bases }) => {
            let policy = match bases {
                Bases::All => BasePolicy::AllBases,
                Bases::Canonical => BasePolicy::CanonicalBase,
            };
            let report = search_conjecture(*max_vertices, policy)?;
            let ok = report.counterexamples.is_empty();
            (serde_json::to_value(report)?, outcome(ok))
        }
        Command::PaperRegression => {
            let report = paper_regression(g.fixtures.as_deref())?;
            let ok = report.all_pass();
            (serde_json::to_value(report)?, outcome(ok))
        }
    })
}

fn product(ctx: &Ctx, cmd: &ProductCmd) -> forge_core::Result<(Value, Outcome)> {
    let g = &ctx.global;
    let (args, route) = match cmd {
        ProductCmd::Pl(a) => (a, "pl"),
        ProductCmd::J(a) => (a, "j"),
        ProductCmd::Brute(a) => (a, "brute"),
        ProductCmd::Mc { args, .. } => (args, "mc"),
    };
    let f = ctx.fixture(&args.fixture)?;
    let result = match cmd {
        ProductCmd::Pl(_) => serde_json::to_value(left_nested_product(&ctx.table(&f, None)?, &args.pattern)?)?,
        ProductCmd::J(_) => serde_json::to_value(jump_distribution(f.pointed(), &args.pattern)?)?,
        ProductCmd::Brute(_) => serde_json::to_value(brute_force_conditional(
            f.require_cayley()?,
            &args.pattern,
            g.cap_enumeration,
        )?)?,
        ProductCmd::Mc { trials, .. } => serde_json::to_value(monte_carlo_conditional(
            f.require_cayley()?,
            &args.pattern,
            *trials,
            g.seed,
        )?)?,
    };
    Ok((
        json!({ "fixture": f.name(), "route": route, "pattern": args.pattern.to_string(), "distribution": result }),
        Outcome::Pass,
    ))
}

fn matrix(ctx: &Ctx, cmd: &MatrixCmd) -> forge_core::Result<(Value, Outcome)> {
    Ok(match cmd {
        MatrixCmd::Norms { fixture, k } => {
            let f = ctx.fixture(fixture)?;
            (serde_json::to_value(norm_bounds(&ctx.table(&f, None)?, *k, &[])?)?, Outcome::Pass)
        }
        MatrixCmd::Commute { fixture } => {
            let f = ctx.fixture(fixture)?;
            let report = commute_check(&ctx.table(&f, None)?)?;
            let ok = report.consistent;
            (serde_json::to_value(report)?, outcome(ok))
        }
        MatrixCmd::Stationary { fixture } => {
            let f = ctx.fixture(fixture)?;
            let window = f.require_cayley()?;
            let report = stationary_check(window, &ctx.table(&f, None)?)?;
            let ok = report.holds();
            (serde_json::to_value(report)?, outcome(ok))
        }
        MatrixCmd::Maincoro { args, informational } => {
            let f = ctx.fixture(&args.fixture)?;
            let report = verify_maincoro(&ctx.table(&f, None)?, f.pointed(), &args.pattern, *informational)?;
            let ok = report.holds;
            (serde_json::to_value(report)?, outcome(ok))
        }
        MatrixCmd::Irreducible { fixture, k } => {
            let f = ctx.fixture(fixture)?;
            let report = irreducibility(&transition_matrix(&ctx.table(&f, None)?, *k)?)?;
            (serde_json::to_value(report)?, Outcome::Pass)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Ctx { global: cli.global };
    match run(&ctx, &cli.command) {
        Ok((value, result)) => {
            if let Err(e) = ctx.emit(&value) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match result {
                Outcome::Pass => ExitCode::SUCCESS,
                Outcome::Fail => ExitCode::from(1),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
