//! `clv`: command-line access to the catalog checks, curve enumeration,
//! cokernel computations, the triple classifier and the lemma replay.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use clv_core::classifier::{classify, run_all_lemmas_with, TripleDescriptor};
use clv_core::curve_enum::{
    enumerate_all_degrees, enumerate_curve_classes, enumerate_tuples, enumerate_tuples_cuspidal, enumerate_up_to,
    HirzebruchModel,
};
use clv_core::homology::{coker_theta, coker_xi_r3};
use clv_core::surface_models::{default_catalog, load_catalog, parse_catalog, verify_catalog, Catalog, DEFAULT_CATALOG};
use clv_core::{DivClass, IntLattice};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "clv", version, about = "Exact checks for blow-up compactifications of homology 3-cells")]
struct Cli {
    /// Catalog JSON to use instead of the built-in one.
    #[arg(long, global = true, env = "CLV_CATALOG")]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Surface catalog checks.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Smooth rational curve classes.
    #[command(subcommand)]
    Curves(CurvesCmd),
    /// Raw (n, a; b) solutions of the degree and genus equations.
    Tuples {
        #[arg(long)]
        n: i64,
        /// Arithmetic genus 1 tuples for the cuspidal cubic (needs n = 3).
        #[arg(long)]
        cuspidal: bool,
    },
    /// Cokernel computations.
    #[command(subcommand)]
    Coker(CokerCmd),
    /// Classify a triple descriptor given as JSON (`-` reads stdin).
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Replay every computation with a known outcome.
    #[command(subcommand)]
    Lemmas(LemmasCmd),
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Check every entry; exit status 0 iff all checks pass.
    Verify,
}

#[derive(Subcommand)]
enum CurvesCmd {
    Enumerate {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        degree: Option<i64>,
    },
}

#[derive(Subcommand)]
enum CokerCmd {
    /// Components of F and the (-2)-classes in the Picard lattice, e.g.
    /// `--components "2:H-E1-E6,E6"`.
    Theta {
        #[arg(long)]
        surface: String,
        #[arg(long)]
        components: String,
    },
    /// ξ on R3, e.g. `--decomposition "Sigma,2:f"`.
    Xi {
        #[arg(long)]
        decomposition: String,
    },
}

#[derive(Subcommand)]
enum LemmasCmd {
    RunAll(Format),
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    markdown: bool,
}

fn read_input(path: &PathBuf) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn catalog_text(path: &Option<PathBuf>) -> Result<String> {
    match path {
        Some(p) => read_input(p),
        None => Ok(DEFAULT_CATALOG.to_string()),
    }
}

fn catalog(path: &Option<PathBuf>) -> Result<Catalog> {
    match path {
        Some(_) => Ok(load_catalog(&catalog_text(path)?)?),
        None => Ok(default_catalog()),
    }
}

/// `m:class` items separated by commas; the multiplicity defaults to 1.
fn parse_components(list: &str, lattice: &IntLattice) -> Result<Vec<(DivClass, i64)>> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (m, class) = match item.split_once(':') {
            Some((m, c)) => (m.trim().parse::<i64>().with_context(|| format!("multiplicity in `{item}`"))?, c),
            None => (1, item),
        };
        out.push((lattice.parse_class(class.trim())?, m));
    }
    if out.is_empty() {
        bail!("no components given");
    }
    Ok(out)
}

fn group_json(g: &clv_core::FgAbGroup) -> Value {
    json!({ "group": g.to_string(), "free_rank": g.free_rank, "torsion": g.torsion })
}

fn emit(text: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        // a closed pipe (`clv ... | head`) is not an error
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn print(v: &impl serde::Serialize) -> Result<()> {
    emit(&(serde_json::to_string_pretty(v)? + "\n"))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Catalog(CatalogCmd::Verify) => {
            let cat = parse_catalog(&catalog_text(&cli.catalog)?)?;
            let rep = verify_catalog(&cat);
            print(&rep)?;
            if let Some((sid, entry)) = rep.first_failure() {
                eprintln!("{sid}: {entry}");
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Curves(CurvesCmd::Enumerate { surface, degree }) => {
            let cat = catalog(&cli.catalog)?;
            let sol = match degree {
                Some(n) => enumerate_curve_classes(&cat, &surface, n)?,
                None => match enumerate_all_degrees(&cat, &surface)? {
                    Some(sol) => sol,
                    None => {
                        let mut sol = enumerate_up_to(&cat, &surface, 2)?;
                        sol.flags.push("no degree bound can be derived; only degrees 1 and 2 are listed".into());
                        sol
                    }
                },
            };
            print(&sol)?;
        }
        Command::Tuples { n, cuspidal } => {
            let tuples = if cuspidal {
                if n != 3 {
                    bail!("--cuspidal needs --n 3, got {n}");
                }
                enumerate_tuples_cuspidal()
            } else {
                enumerate_tuples(n, 0)?
            };
            let rows: Vec<Value> =
                tuples.iter().map(|t| json!({ "n": t.n, "a": t.a, "b": t.b, "text": t.to_string() })).collect();
            print(&json!({ "n": n, "cuspidal": cuspidal, "tuples": rows }))?;
        }
        Command::Coker(CokerCmd::Theta { surface, components }) => {
            let cat = catalog(&cli.catalog)?;
            let lat = cat.get(&surface)?.lattice.clone();
            let comps = parse_components(&components, &lat)?;
            let out = coker_theta(&cat, &surface, &comps)?;
            let mut v = group_json(&out.coker);
            v["admissible"] = json!(out.admissible());
            v["residual"] = json!(out.residual);
            print(&v)?;
        }
        Command::Coker(CokerCmd::Xi { decomposition }) => {
            let comps = parse_components(&decomposition, &HirzebruchModel::R34.lattice())?;
            let out = coker_xi_r3(&comps)?;
            let mut v = group_json(&out.coker);
            v["injective"] = json!(out.injective);
            v["admissible"] = json!(out.admissible());
            v["images"] = json!(out.images);
            print(&v)?;
        }
        Command::Classify { input } => {
            let cat = catalog(&cli.catalog)?;
            let d = TripleDescriptor::from_json(&read_input(&input)?)?;
            print(&classify(&cat, &d)?)?;
        }
        Command::Lemmas(LemmasCmd::RunAll(fmt)) => {
            let cat = catalog(&cli.catalog)?;
            let rep = run_all_lemmas_with(&cat);
            if fmt.markdown {
                emit(&rep.to_markdown())?;
            } else {
                emit(&(rep.to_json() + "\n"))?;
            }
            return Ok(ExitCode::from(rep.exit_code() as u8));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            // core errors already embed their source's text; skip repeats
            let mut msg = String::new();
            for cause in e.chain().map(|c| c.to_string()) {
                if !msg.contains(&cause) {
                    if !msg.is_empty() {
                        msg.push_str(": ");
                    }
                    msg.push_str(&cause);
                }
            }
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
