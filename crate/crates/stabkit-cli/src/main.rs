//! Command-line front end: ingestion, analysis, verification and reporting
//! for edge-ideal stabilization questions.
//!
//! Exit codes: 0 success, 1 verification/suite failure, 2 parse error,
//! 3 precondition violation, 4 resource limit.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use stabkit::corpus::run_invariant_suites;
use stabkit::ear::{generalized_ear_decomposition, phi_psi};
use stabkit::graph::Graph;
use stabkit::ideal::MonomialIdeal;
use stabkit::stab::{ass_powers, stab_report};
use stabkit::{Error, Limits};

/// Print to stdout, exiting quietly when the downstream pipe closes.
macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if writeln!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        if write!(std::io::stdout(), $($arg)*).is_err() {
            std::process::exit(0);
        }
    }};
}

#[derive(Parser)]
#[command(
    name = "stabkit",
    about = "Associated primes of edge-ideal powers: astab, dstab, ear decompositions, and an exact oracle",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct CommonArgs {
    /// Graph file in edge-list format (one `u v` per line; `vertex u`
    /// declares isolated vertices; `#` comments).
    #[arg(long)]
    input: PathBuf,
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Cap on vertex count for enumeration-backed operations.
    #[arg(long)]
    max_vertices: Option<usize>,
    /// Cap on the ascending subset/vector searches.
    #[arg(long)]
    max_subset_size: Option<usize>,
    /// Worker threads (requires the parallel build).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Full stabilization report: astab, dstab, per-prime entry powers,
    /// the Ass chain, and the upper bounds.
    Analyze(CommonArgs),
    /// Associated primes of I^k by the formula.
    Ass {
        #[command(flatten)]
        common: CommonArgs,
        /// The power k >= 1.
        #[arg(long)]
        k: usize,
    },
    /// The invariants phi (minimum even ears) and psi (bridges).
    Phi(CommonArgs),
    /// A generalized ear decomposition (odd-start on request).
    Decompose {
        #[command(flatten)]
        common: CommonArgs,
        /// Require the first ear to be an odd cycle.
        #[arg(long)]
        odd_start: bool,
    },
    /// Oracle route: irreducible decomposition and associated primes of
    /// I^k computed directly from the monomial ideal.
    Oracle {
        #[command(flatten)]
        common: CommonArgs,
        /// The power k >= 1 (oracle cap: 4).
        #[arg(long)]
        k: usize,
    },
    /// Formula-vs-oracle agreement for k = 1..k_max; exit 1 on mismatch.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Largest power to verify (oracle cap: 4).
        #[arg(long, default_value = "3")]
        k_max: usize,
    },
    /// Run the invariant suites over a small-graph corpus; exit 1 on any
    /// failure.
    Corpus {
        /// Largest vertex count (exhaustive mode caps at 7).
        #[arg(long, default_value = "5")]
        max_vertices: usize,
        /// Sample random graphs instead of the exhaustive corpus.
        #[arg(long)]
        random: bool,
        /// Random graphs per size in random mode.
        #[arg(long, default_value = "20")]
        samples: usize,
        /// Seed for random mode.
        #[arg(long, default_value = "1")]
        seed: u64,
        /// Worker threads (requires the parallel build).
        #[arg(long)]
        jobs: Option<usize>,
        /// Cap on the ascending subset/vector searches.
        #[arg(long)]
        max_subset_size: Option<usize>,
    },
}

fn effective_limits(
    max_vertices: Option<usize>,
    max_subset_size: Option<usize>,
) -> Result<Limits, Error> {
    let mut limits = Limits::default();
    if let Ok(spec) = std::env::var("STABKIT_LIMITS") {
        limits = limits.apply_overrides(&spec)?;
    }
    if let Some(v) = max_vertices {
        limits.max_vertices = v;
    }
    if let Some(s) = max_subset_size {
        limits.max_subset_size = s;
    }
    Ok(limits)
}

fn read_graph(path: &PathBuf) -> Result<Graph, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    Graph::parse(&text)
}

fn install_pool(jobs: Option<usize>) {
    #[cfg(feature = "parallel")]
    if let Some(n) = jobs {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = jobs;
}

fn run() -> Result<i32, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze(common) => {
            install_pool(common.jobs);
            let limits = effective_limits(common.max_vertices, common.max_subset_size)?;
            let g = read_graph(&common.input)?;
            let report = stab_report(&g, &limits)?;
            match common.format {
                Format::Json => outln!("{}", serde_json::to_string_pretty(&report).unwrap()),
                Format::Text => {
                    let mut out = String::new();
                    let _ = writeln!(out, "astab = {}", report.astab);
                    let _ = writeln!(out, "dstab = {}", report.dstab);
                    let _ = writeln!(
                        out,
                        "bounds: dstab <= {} (loose {}), astab <= {}",
                        report.bounds.dstab, report.bounds.dstab_loose, report.bounds.astab
                    );
                    let _ = writeln!(out, "stable associated primes ({}):", report.per_prime.len());
                    for entry in &report.per_prime {
                        let _ = writeln!(out, "  k = {}: {{{}}}", entry.astab, entry.u.join(", "));
                    }
                    out!("{out}");
                }
                Format::Dot => {
                    return Err(Error::Parse("analyze does not support dot output".into()))
                }
            }
            Ok(0)
        }
        Command::Ass { common, k } => {
            install_pool(common.jobs);
            let limits = effective_limits(common.max_vertices, common.max_subset_size)?;
            let g = read_graph(&common.input)?;
            let sets = ass_powers(&g, k, &limits)?;
            let labeled: Vec<Vec<String>> = sets.iter().map(|&u| g.labels_of(u)).collect();
            match common.format {
                Format::Json => outln!("{}", serde_json::to_string_pretty(&labeled).unwrap()),
                Format::Text => {
                    outln!("Ass(I^{k}) has {} primes:", labeled.len());
                    for u in labeled {
                        outln!("  {{{}}}", u.join(", "));
                    }
                }
                Format::Dot => return Err(Error::Parse("ass does not support dot output".into())),
            }
            Ok(0)
        }
        Command::Phi(common) => {
            install_pool(common.jobs);
            let limits = effective_limits(common.max_vertices, common.max_subset_size)?;
            let g = read_graph(&common.input)?;
            let (phi, psi) = phi_psi(&g, &limits)?;
            match common.format {
                Format::Json => outln!("{{\"phi\": {phi}, \"psi\": {psi}}}"),
                Format::Text => outln!("phi = {phi}, psi = {psi}"),
                Format::Dot => return Err(Error::Parse("phi does not support dot output".into())),
            }
            Ok(0)
        }
        Command::Decompose { common, odd_start } => {
            install_pool(common.jobs);
            let g = read_graph(&common.input)?;
            let d = generalized_ear_decomposition(&g, odd_start)?;
            match common.format {
                Format::Json => outln!("{}", serde_json::to_string_pretty(&d).unwrap()),
                Format::Dot => out!("{}", d.to_dot()),
                Format::Text => {
                    for (i, ear) in d.ears.iter().enumerate() {
                        let path: Vec<&str> = ear.path.iter().map(|&v| g.label(v)).collect();
                        outln!(
                            "F{i}: {} [{:?}, {}]",
                            path.join("-"),
                            ear.kind,
                            if ear.is_odd() { "odd" } else { "even" }
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Oracle { common, k } => {
            install_pool(common.jobs);
            let limits = effective_limits(common.max_vertices, common.max_subset_size)?;
            let g = read_graph(&common.input)?;
            oracle_caps(&g, k)?;
            let ideal = MonomialIdeal::edge_ideal(&g).power(k)?;
            let comps = ideal.irreducible_decomposition(&limits)?;
            match common.format {
                Format::Json => {
                    let vectors: Vec<&Vec<u32>> = comps.iter().map(|c| &c.0).collect();
                    outln!("{}", serde_json::to_string_pretty(&vectors).unwrap());
                }
                Format::Text => {
                    outln!("I^{k} has {} minimal generators", ideal.generators().len());
                    if ideal.generators().len() <= 40 {
                        for m in ideal.generators() {
                            outln!("  {}", m.display(&g));
                        }
                    }
                    outln!("{} irreducible components:", comps.len());
                    for c in &comps {
                        outln!("  ({})", component_display(&g, c));
                    }
                }
                Format::Dot => {
                    return Err(Error::Parse("oracle does not support dot output".into()))
                }
            }
            Ok(0)
        }
        Command::Verify { common, k_max } => {
            install_pool(common.jobs);
            let limits = effective_limits(common.max_vertices, common.max_subset_size)?;
            let g = read_graph(&common.input)?;
            oracle_caps(&g, k_max)?;
            let ideal = MonomialIdeal::edge_ideal(&g);
            let mut ok = true;
            outln!("k  formula  oracle  agree");
            for k in 1..=k_max {
                let formula = ass_powers(&g, k, &limits)?;
                let oracle = ideal.power(k)?.associated_primes(&limits)?;
                let agree = formula == oracle;
                outln!(
                    "{k}  {:7}  {:6}  {}",
                    formula.len(),
                    oracle.len(),
                    if agree { "yes" } else { "NO" }
                );
                if !agree {
                    ok = false;
                    let show = |sets: &[stabkit::VertexSet]| {
                        sets.iter()
                            .map(|&u| format!("{{{}}}", g.labels_of(u).join(",")))
                            .collect::<Vec<_>>()
                            .join(" ")
                    };
                    outln!("  formula: {}", show(&formula));
                    outln!("  oracle:  {}", show(&oracle));
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
        Command::Corpus {
            max_vertices,
            random,
            samples,
            seed,
            jobs,
            max_subset_size,
        } => {
            install_pool(jobs);
            let limits = effective_limits(None, max_subset_size)?;
            if !random && max_vertices > 7 {
                return Err(Error::Resource(
                    "exhaustive corpus mode is capped at 7 vertices".into(),
                ));
            }
            if random && !(3..=16).contains(&max_vertices) {
                return Err(Error::Resource(
                    "random corpus mode supports 3 to 16 vertices".into(),
                ));
            }
            let results = run_invariant_suites(max_vertices, !random, samples, seed, &limits);
            let mut ok = true;
            for family in &results {
                let status = if family.passed() { "pass" } else { "FAIL" };
                outln!("{status}  {} ({} graphs)", family.name, family.checked);
                if !family.passed() {
                    ok = false;
                    for failure in family.failures.iter().take(3) {
                        outln!("      {failure}");
                    }
                }
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn component_display(g: &Graph, c: &stabkit::ideal::Monomial) -> String {
    let parts: Vec<String> = c
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                g.label(i).to_string()
            } else {
                format!("{}^{e}", g.label(i))
            }
        })
        .collect();
    parts.join(", ")
}

fn oracle_caps(g: &Graph, k: usize) -> Result<(), Error> {
    if g.len() > 10 {
        return Err(Error::Resource("the oracle is capped at 10 vertices".into()));
    }
    if k > 4 {
        return Err(Error::Resource("the oracle is capped at k = 4".into()));
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
