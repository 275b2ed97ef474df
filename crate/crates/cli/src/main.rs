use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use cocom_cli::{document, render};
use cocom_core::complexes::normal_dim;
use cocom_core::degeneration::{filtered_oracle, limit_complete_complex};
use cocom_core::strata::hasse_dot;
use cocom_core::verify::{
    degeneration_suite_with, exhaustive_field_census, random_rational_suite, SuiteReport,
};
use cocom_core::GradedDims;
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "cocom",
    version,
    about = "Varieties of complexes, strata and limits of families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the rank vectors of a graded space.
    Poset {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<usize>,
        /// Write the Hasse diagram as a DOT digraph.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Limit of a one-parameter family as t -> 0.
    Limit {
        family: PathBuf,
        /// Cross-check with the filtered-complex oracle at truncation N
        /// (a safe N is chosen when omitted).
        #[arg(long, value_name = "N", num_args = 0..=1)]
        oracle: Option<Option<usize>>,
        /// Write the spectral sequence as JSON.
        #[arg(long, value_name = "OUT")]
        json: Option<PathBuf>,
    },
    /// Invariants of a single complex.
    Analyze {
        complex: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Graded dimensions for the census.
        #[arg(long, value_delimiter = ',')]
        dims: Option<Vec<usize>>,
        /// Prime for the census (2, 3, 5 or 7).
        #[arg(long, default_value_t = 2)]
        p: u32,
        /// Largest dimension per degree for the random suites.
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Census,
    Random,
    Degeneration,
}

/// Exit 1: a mathematical check failed. Exit 2: bad input.
enum Failure {
    Math(String),
    Input(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn graded_dims(n: Vec<usize>) -> anyhow::Result<GradedDims> {
    GradedDims::new(n).map_err(|e| anyhow!("--dims: {e}"))
}

fn poset(dims: Vec<usize>, dot: Option<PathBuf>, json: bool) -> Result<(), Failure> {
    let dims = graded_dims(dims)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&render::poset_json(&dims)).unwrap()
        );
    } else {
        print!("{}", render::poset_text(&dims));
    }
    if let Some(path) = dot {
        fs::write(&path, hasse_dot(&dims))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn limit(
    path: PathBuf,
    oracle: Option<Option<usize>>,
    out: Option<PathBuf>,
) -> Result<(), Failure> {
    let doc = read_json(&path)?;
    let pc = document::parse_family(&doc)
        .map_err(|e| anyhow!(e).context(format!("invalid family in {}", path.display())))?;
    let limit = limit_complete_complex(&pc);
    print!("{}", render::limit_text(&limit));
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&render::limit_json(&limit)).unwrap();
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(n) = oracle {
        let n = n.unwrap_or_else(|| pc.suggested_truncation());
        match filtered_oracle(&pc, n) {
            Ok(table) if table.agrees_with(&limit.table) => println!("oracle: agree (N = {n})"),
            Ok(table) => {
                println!("oracle: disagree (N = {n})");
                print!("{}", render::table_text(&table));
                return Err(Failure::Math("oracle disagrees with the limit".into()));
            }
            Err(e) => {
                println!("oracle: {e}");
                return Err(Failure::Math(e.to_string()));
            }
        }
    }
    Ok(())
}

fn analyze(path: PathBuf, json: bool) -> Result<(), Failure> {
    let doc = read_json(&path)?;
    let c = document::parse_complex(&doc)
        .map_err(|e| anyhow!(e).context(format!("invalid complex in {}", path.display())))?;
    let r = c.rank_vector();
    let h = c.cohomology().h;
    let tangent = c.morphism_space().len();
    let orbit = c.nullhomotopic_space().len();
    let stabilizer = c.stabilizer_dim();
    let normal = normal_dim(&h);
    let chart = c.chart_jacobian_rank();
    let group = c.dims().group_dim();
    let homotopy = tangent == orbit + normal;
    let ok = homotopy && orbit + stabilizer == group && chart == orbit + normal;
    if json {
        let v = serde_json::json!({
            "r": r.as_slice(),
            "h": h,
            "tangent": tangent,
            "orbit": orbit,
            "stabilizer": stabilizer,
            "normal": normal,
            "chart_rank": chart,
            "homotopy_identity": homotopy,
            "ok": ok,
        });
        println!("{}", serde_json::to_string_pretty(&v).unwrap());
    } else {
        let hs: Vec<String> = h.iter().map(|x| x.to_string()).collect();
        println!(
            "r={r} h=({}) tangent={tangent} orbit={orbit} normal={normal}: {}",
            hs.join(","),
            if ok { "OK" } else { "FAIL" }
        );
        println!("stabilizer={stabilizer} chart={chart} homotopy identity: {homotopy}");
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Math("identities fail".into()))
    }
}

fn census(dims: &GradedDims, p: u32) -> anyhow::Result<SuiteReport> {
    let rep = match p {
        2 => exhaustive_field_census::<2>(dims),
        3 => exhaustive_field_census::<3>(dims),
        5 => exhaustive_field_census::<5>(dims),
        7 => exhaustive_field_census::<7>(dims),
        _ => bail!("--p must be one of 2, 3, 5, 7"),
    };
    rep.map_err(|e| anyhow!("census: {e}"))
}

#[allow(clippy::too_many_arguments)]
fn verify(
    suite: Suite,
    seed: u64,
    dims: Option<Vec<usize>>,
    p: u32,
    max_dim: usize,
    cases: usize,
    json: bool,
) -> Result<(), Failure> {
    if max_dim == 0 {
        return Err(anyhow!("--max-dim must be positive").into());
    }
    let report = match suite {
        Suite::Census => {
            let dims = dims.ok_or_else(|| anyhow!("--suite census needs --dims"))?;
            census(&graded_dims(dims)?, p)?
        }
        Suite::Random => random_rational_suite(seed, &[max_dim; 3], cases),
        Suite::Degeneration => degeneration_suite_with(seed, cases, &[max_dim; 4], 4),
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        print!("{report}");
    }
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Math(format!("{} failures", report.failures.len())))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Poset { dims, dot, json } => poset(dims, dot, json),
        Command::Limit {
            family,
            oracle,
            json,
        } => limit(family, oracle, json),
        Command::Analyze { complex, json } => analyze(complex, json),
        Command::Verify {
            suite,
            seed,
            dims,
            p,
            max_dim,
            cases,
            json,
        } => verify(suite, seed, dims, p, max_dim, cases, json),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
