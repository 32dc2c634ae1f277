use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sspkit::families::{
    build_bell_graph, build_comparability_graph, build_complete_graph, build_empty_graph, build_noncrossing_graph,
    build_nonnesting_graph, build_relation_graph, build_rook_graph, root_poset,
};
use sspkit::geometry::{build_skeleton_oracle, enumerate_facets, facet_records};
use sspkit::io::{parse_subset, skeleton_dot, GraphFile, MatroidFile, PolytopeFile, PosetFile, RelationFile, SkeletonFile};
use sspkit::matroids::{basis_polytope, independence_polytope};
use sspkit::skeleton::{birkhoff_restrict, bp_path, build_skeleton_e, ssp_path};
use sspkit::verify::{run_suite, VerifyConfig, SUITES};
use sspkit::{FacetCaps, GroundSet, PolytopeKind, SimpleGraph, ZeroOnePolytope};

#[derive(Parser)]
#[command(name = "sspkit", version, about = "Stable set polytopes: skeletons, diameters, facets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a polytope file from a named family.
    Build(BuildArgs),
    /// Compute the 1-skeleton of a polytope.
    Skeleton(SkeletonArgs),
    /// Report the skeleton diameter against the bound r.
    Diameter(SourceArgs),
    /// Enumerate facets (exact double description).
    Facets(FacetArgs),
    /// Constructive edge walk between two vertices.
    Path(PathArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
    /// Convert a skeleton file to DOT.
    ExportDot(ExportArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Empty,
    Complete,
    Graph,
    Relation,
    Chain,
    Bell,
    Nn,
    Nc,
    Rook,
    Matroid,
    MatroidBases,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Args)]
struct Output {
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    /// Data file for graph, relation, chain and matroid families.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Restrict to maximum stable sets.
    #[arg(long)]
    birkhoff: bool,
    #[command(flatten)]
    out: Output,
}

/// A polytope file, or a parametric family built in memory.
#[derive(Args)]
struct SourceArgs {
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    birkhoff: bool,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct SkeletonArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Use the LP oracle instead of the decomposition criterion.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args)]
struct FacetArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct CapArgs {
    #[arg(long, default_value_t = FacetCaps::default().max_vertices, value_parser = clap::value_parser!(usize))]
    facet_vertex_cap: usize,
    #[arg(long, default_value_t = FacetCaps::default().max_dim)]
    facet_dim_cap: usize,
}

impl CapArgs {
    fn caps(&self) -> Result<FacetCaps> {
        if self.facet_vertex_cap == 0 || self.facet_dim_cap == 0 {
            bail!("facet caps must be positive");
        }
        Ok(FacetCaps {
            max_vertices: self.facet_vertex_cap,
            max_dim: self.facet_dim_cap,
        })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Walk {
    Bp,
    Ssp,
}

#[derive(Args)]
struct PathArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Start vertex as a JSON label list, e.g. '[[1,2]]'.
    #[arg(long)]
    from: String,
    #[arg(long)]
    to: String,
    /// Defaults to bp for Birkhoff polytopes and ssp otherwise.
    #[arg(long, value_enum)]
    method: Option<Walk>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = VerifyConfig::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = VerifyConfig::default().graphs)]
    graphs: usize,
    #[arg(long, default_value_t = VerifyConfig::default().max_n)]
    max_n: usize,
    #[command(flatten)]
    caps: CapArgs,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct ExportArgs {
    /// Skeleton file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = init_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("SSPKIT_THREADS") {
        let n: usize = v.parse().with_context(|| format!("SSPKIT_THREADS={v:?} is not a count"))?;
        if n == 0 {
            bail!("SSPKIT_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    Ok(())
}

/// Returns whether every requested check passed.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Build(a) => {
            let p = build_family(a.family, a.n, a.input.as_deref(), a.birkhoff)?;
            emit(&a.out, &to_json(&PolytopeFile::from_polytope(&p))?, || polytope_text(&p))?;
        }
        Command::Skeleton(a) => {
            let p = load(&a.source)?;
            let s = if a.oracle { build_skeleton_oracle(&p) } else { build_skeleton_e(&p) };
            let file = SkeletonFile::new(&p, &s);
            let out = &a.source.out;
            if out.format == Format::Dot {
                write_out(out.output.as_deref(), &skeleton_dot(&file))?;
            } else {
                emit(out, &to_json(&file)?, || {
                    format!("{} vertices, {} edges ({})\n", s.vertex_count(), s.edge_count(), s.provenance())
                })?;
            }
        }
        Command::Diameter(a) => {
            let p = load(&a)?;
            let s = build_skeleton_e(&p);
            let r = p.max_cardinality();
            let d = s.diameter();
            let holds = d.is_some_and(|d| d <= r);
            let report = json!({
                "vertices": p.vertex_count(),
                "edges": s.edge_count(),
                "diameter": d,
                "r": r,
                "bound_holds": holds,
            });
            emit(&a.out, &to_json(&report)?, || match d {
                Some(d) => format!("diameter {d}, r {r}, bound {}\n", if holds { "holds" } else { "FAILS" }),
                None => format!("skeleton is disconnected, r {r}\n"),
            })?;
            return Ok(holds);
        }
        Command::Facets(a) => {
            let p = load(&a.source)?;
            let facets = enumerate_facets(&p, a.caps.caps()?)?;
            let cliques = p.kind().graph().map(|g| g.enumerate_max_cliques()).unwrap_or_default();
            let (mut nonneg, mut clique, mut other) = (Vec::new(), Vec::new(), Vec::new());
            for f in &facets {
                if f.as_nonnegativity().is_some() {
                    nonneg.push(f.clone());
                } else if f.as_unit_sum().is_some_and(|s| cliques.contains(&s)) {
                    clique.push(f.clone());
                } else {
                    other.push(f.clone());
                }
            }
            let report = json!({
                "facet_count": facets.len(),
                "nonnegativity": facet_records(&nonneg)?,
                "clique": facet_records(&clique)?,
                "other": facet_records(&other)?,
            });
            emit(&a.source.out, &to_json(&report)?, || {
                let mut t = format!(
                    "{} facets: {} nonnegativity, {} clique, {} other\n",
                    facets.len(),
                    nonneg.len(),
                    clique.len(),
                    other.len()
                );
                for f in &other {
                    let _ = writeln!(t, "  {}", inequality_text(p.ground(), f));
                }
                t
            })?;
        }
        Command::Path(a) => {
            let p = load(&a.source)?;
            let from = parse_subset(p.ground(), &a.from)?;
            let to = parse_subset(p.ground(), &a.to)?;
            let method = a.method.unwrap_or(match p.kind() {
                PolytopeKind::Birkhoff { .. } => Walk::Bp,
                _ => Walk::Ssp,
            });
            let path = match method {
                Walk::Bp => bp_path(&p, from, to)?,
                Walk::Ssp => ssp_path(&p, from, to)?,
            };
            let r = p.max_cardinality();
            let steps = path.len() - 1;
            let report = json!({
                "method": format!("{method:?}").to_lowercase(),
                "path": path.iter().map(|&s| p.ground().labels_of(s)).collect::<Vec<_>>(),
                "length": steps,
                "r": r,
                "within_bound": steps <= r,
            });
            emit(&a.source.out, &to_json(&report)?, || {
                let mut t = String::new();
                for &s in &path {
                    let _ = writeln!(t, "{}", p.ground().format_subset(s));
                }
                let _ = writeln!(t, "length {steps}, r {r}");
                t
            })?;
            return Ok(steps <= r);
        }
        Command::Verify(a) => {
            if !SUITES.contains(&a.suite.as_str()) {
                bail!("unknown suite {:?}; expected one of {}", a.suite, SUITES.join(", "));
            }
            let cfg = VerifyConfig {
                seed: a.seed,
                graphs: a.graphs,
                max_n: a.max_n,
                caps: a.caps.caps()?,
            };
            let reports = run_suite(&a.suite, &cfg)?;
            let passed = reports.iter().all(|r| r.passed);
            // Timings vary between runs, so they stay out of the machine-readable report.
            let body: Vec<Value> = reports
                .iter()
                .map(|r| json!({ "suite": r.suite, "seed": r.seed, "passed": r.passed, "checks": r.checks }))
                .collect();
            let doc = json!({ "seed": a.seed, "passed": passed, "suites": body });
            emit(&a.out, &to_json(&doc)?, || {
                let mut t = String::new();
                for r in &reports {
                    let _ = writeln!(t, "[{}] {} (seed {})", if r.passed { "PASS" } else { "FAIL" }, r.suite, r.seed);
                    for c in &r.checks {
                        let _ = writeln!(t, "  {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
                    }
                }
                t
            })?;
            return Ok(passed);
        }
        Command::ExportDot(a) => {
            let file: SkeletonFile = read_json(&a.input)?;
            file.to_skeleton()?;
            write_out(a.output.as_deref(), &skeleton_dot(&file))?;
        }
    }
    Ok(true)
}

fn need_n(n: Option<usize>, family: Family) -> Result<usize> {
    n.ok_or_else(|| anyhow!("family {family:?} needs --n"))
}

fn need_input(input: Option<&Path>, family: Family) -> Result<&Path> {
    input.ok_or_else(|| anyhow!("family {family:?} needs --input"))
}

fn build_family(family: Family, n: Option<usize>, input: Option<&Path>, birkhoff: bool) -> Result<ZeroOnePolytope> {
    let graph: SimpleGraph = match family {
        Family::Empty => build_empty_graph(need_n(n, family)?)?,
        Family::Complete => build_complete_graph(need_n(n, family)?)?,
        Family::Bell => build_bell_graph(need_n(n, family)?)?,
        Family::Nn => build_nonnesting_graph(need_n(n, family)?)?,
        Family::Nc => build_noncrossing_graph(need_n(n, family)?)?,
        Family::Rook => build_rook_graph(need_n(n, family)?)?,
        Family::Graph => read_json::<GraphFile>(need_input(input, family)?)?.to_graph()?,
        Family::Relation => {
            let f: RelationFile = read_json(need_input(input, family)?)?;
            build_relation_graph(GroundSet::new(f.labels)?, &f.pairs)?
        }
        Family::Chain => match input {
            Some(path) => build_comparability_graph(&read_json::<PosetFile>(path)?.to_poset()?),
            None => build_comparability_graph(&root_poset(need_n(n, family)?)?),
        },
        Family::Matroid | Family::MatroidBases => {
            if birkhoff {
                bail!("--birkhoff applies to graph families only");
            }
            let m = read_json::<MatroidFile>(need_input(input, family)?)?.to_matroid()?;
            return Ok(match family {
                Family::Matroid => independence_polytope(&m),
                _ => basis_polytope(&m),
            });
        }
    };
    Ok(if birkhoff {
        birkhoff_restrict(&graph)
    } else {
        ZeroOnePolytope::stable_set(&graph)
    })
}

fn load(src: &SourceArgs) -> Result<ZeroOnePolytope> {
    match (&src.input, src.family) {
        (Some(path), None) => {
            if src.birkhoff {
                bail!("--birkhoff only applies with --family");
            }
            Ok(read_json::<PolytopeFile>(path)?.to_polytope()?)
        }
        (None, Some(family)) => build_family(family, src.n, None, src.birkhoff),
        _ => bail!("give either --input <polytope file> or --family"),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(out: &Output, json_text: &str, text: impl FnOnce() -> String) -> Result<()> {
    match out.format {
        Format::Json => write_out(out.output.as_deref(), json_text),
        Format::Text => write_out(out.output.as_deref(), &text()),
        Format::Dot => bail!("--format dot is only available for skeletons"),
    }
}

fn polytope_text(p: &ZeroOnePolytope) -> String {
    let mut t = format!("{} polytope, {} vertices, r = {}\n", p.kind().tag(), p.vertex_count(), p.max_cardinality());
    for &v in p.vertices() {
        let _ = writeln!(t, "  {}", p.ground().format_subset(v));
    }
    t
}

fn inequality_text(ground: &GroundSet, f: &sspkit::Inequality) -> String {
    match f.to_ints() {
        Some((c, m)) => {
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { format!("x{}", ground.label(i)) } else { format!("{k}*x{}", ground.label(i)) })
                .collect();
            format!("{} <= {m}", terms.join(" + "))
        }
        None => f.to_string(),
    }
}
