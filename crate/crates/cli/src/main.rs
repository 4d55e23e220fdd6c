//! `latgeo`: check lattice properties, decompose elements, generate
//! closure systems, explore infinite instances, and sweep corpora.
//!
//! Property failures are data and exit 0; only tool faults (parse errors,
//! exceeded bounds, inconsistent oracles) exit nonzero.

use clap::{Parser, Subcommand, ValueEnum};
use latgeo::checks;
use latgeo::closure::ClosureSystem;
use latgeo::explorer::{self, NamedInstance, PropertySpec};
use latgeo::generators::{self, corpus, CorpusItem, CorpusSpec, FinitePoset};
use latgeo::io::{self, ClosureFile, DotOptions, LatticeFile, SemilatticeFile};
use latgeo::lattice::construct;
use latgeo::FiniteLattice;
use serde::Deserialize;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Relative output paths are resolved against this directory when set.
const OUT_DIR_ENV: &str = "LATGEO_OUT_DIR";

#[derive(Parser)]
#[command(name = "latgeo", version, about = "Finite lattices, closure systems, and convex-geometry checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the convex-geometry property report on a lattice or
    /// closure-system file.
    Check {
        /// Lattice file ({elements, covers|leq}) or closure file
        /// ({ground, closed|implications}).
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Also write a Hasse diagram here (join irreducibles marked).
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Print the canonical join decomposition of every element.
    Decompose {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build a closure system or lattice from an input structure.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
    /// Explore a named infinite instance and optionally check a property.
    Explore {
        /// lattice_K | omega_zero_or_finite | chain_dual_times_two_doubled_atom
        #[arg(long)]
        instance: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 4)]
        budget: usize,
        /// cover_singleton | unique_j | lower_semimodular |
        /// strongly_spatial_at:<a>,<b>
        #[arg(long)]
        check: Option<String>,
        /// Write the explored window as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Stream property reports over an enumerated or random corpus.
    Corpus {
        /// all-posets:<n> | all-semilattices:<n> | all-moore:<n> |
        /// random:<count>,<max_size>
        #[arg(long)]
        spec: String,
        /// Seed for random corpora (required there).
        #[arg(long)]
        seed: Option<u64>,
        /// Permit the large ground-4 Moore enumeration.
        #[arg(long, default_value_t = false)]
        allow_large: bool,
    },
}

#[derive(Subcommand)]
enum Generate {
    /// Convex subsets of a poset file ({elements, relation}).
    CoPoset {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Meet-subsemilattices of a semilattice file ({elements, meet_table}).
    SubMeet {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Convex meet-subsemilattices of a semilattice file.
    ConvexSubMeet {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Suborders of a poset file.
    Suborders {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Filter lattice (reverse inclusion) of a lattice file.
    FilterLattice {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// A named lattice: chain:<n>, boolean:<n>, m3, n5, doubled-atom:<n>.
    Lattice {
        name: String,
        #[arg(long)]
        output: PathBuf,
    },
}

/// Poset input: element names plus any relation whose reflexive-transitive
/// closure is a partial order.
#[derive(Deserialize)]
struct PosetFile {
    elements: Vec<String>,
    relation: Vec<(usize, usize)>,
}

fn out_path(p: &Path) -> PathBuf {
    if p.is_absolute() {
        return p.to_path_buf();
    }
    match std::env::var_os(OUT_DIR_ENV) {
        Some(dir) => PathBuf::from(dir).join(p),
        None => p.to_path_buf(),
    }
}

fn load_poset(path: &Path) -> Result<FinitePoset, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: PosetFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    FinitePoset::build(file.elements, &file.relation).map_err(|e| e.to_string())
}

/// A check/decompose input: either a lattice file or a closure file whose
/// closed-set lattice is used.
fn load_any_lattice(path: &Path) -> Result<FiniteLattice, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    if value.get("ground").is_some() {
        let file: ClosureFile = serde_json::from_value(value).map_err(|e| e.to_string())?;
        let cs = file.into_closure().map_err(|e| e.to_string())?;
        let (l, _) = cs.cld_lattice().map_err(|e| e.to_string())?;
        Ok(l)
    } else {
        let file: LatticeFile = serde_json::from_value(value).map_err(|e| e.to_string())?;
        file.into_lattice().map_err(|e| e.to_string())
    }
}

fn cmd_check(input: &Path, format: Format, dot: Option<&Path>) -> Result<(), String> {
    let l = load_any_lattice(input)?;
    let instance = input.file_stem().map(|s| s.to_string_lossy().into_owned());
    let report = checks::scs_geom_report(&l, instance);
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?)
        }
        Format::Text => {
            let names = [
                "aep_of_standard_representation",
                "cover_singleton",
                "sd_join_and_lower_semimodular",
                "extreme_point_join",
                "unique_canonical_decomposition",
                "unique_ji_separator",
                "locally_distributive",
            ];
            for (name, flag) in names.iter().zip(report.flags()) {
                println!("{name}: {flag}");
            }
            println!("atomistic: {}", report.atomistic);
            println!("distributive: {}", report.distributive);
            println!("agreement: {}", report.agreement);
        }
    }
    if let Some(dot) = dot {
        let opts = DotOptions {
            mark_ji: true,
            ..DotOptions::default()
        };
        std::fs::write(out_path(dot), io::lattice_dot(&l, &opts)).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn cmd_decompose(input: &Path, format: Format) -> Result<(), String> {
    let l = load_any_lattice(input)?;
    let mut rows = Vec::new();
    for w in 0..l.len() {
        let parts = checks::canonical_join_decomposition(&l, w)
            .ok()
            .map(|d| d.parts.iter().map(|&(_, k)| l.name(k).to_string()).collect::<Vec<_>>());
        rows.push((l.name(w).to_string(), parts));
    }
    match format {
        Format::Json => {
            let value: Vec<_> = rows
                .iter()
                .map(|(name, parts)| json!({ "element": name, "canonical_joinands": parts }))
                .collect();
            println!("{}", serde_json::to_string_pretty(&value).map_err(|e| e.to_string())?);
        }
        Format::Text => {
            for (name, parts) in rows {
                match parts {
                    Some(parts) => println!("{name} = join({})", parts.join(", ")),
                    None => println!("{name}: none"),
                }
            }
        }
    }
    Ok(())
}

fn save_closure(cs: &ClosureSystem, output: &Path) -> Result<(), String> {
    io::save_closure(&out_path(output), cs).map_err(|e| e.to_string())
}

fn cmd_generate(what: &Generate) -> Result<(), String> {
    match what {
        Generate::CoPoset { input, output } => {
            let p = load_poset(input)?;
            save_closure(&generators::co_poset(&p), output)
        }
        Generate::SubMeet { input, output } => {
            let s = load_semilattice(input)?;
            save_closure(&generators::sub_meet(&s), output)
        }
        Generate::ConvexSubMeet { input, output } => {
            let s = load_semilattice(input)?;
            save_closure(&generators::convex_sub_meet(&s), output)
        }
        Generate::Suborders { input, output } => {
            let p = load_poset(input)?;
            save_closure(&generators::suborders(&p), output)
        }
        Generate::FilterLattice { input, output } => {
            let l = io::load_lattice(input).map_err(|e| e.to_string())?;
            let fl = generators::filter_lattice(&l).map_err(|e| e.to_string())?;
            io::save_lattice(&out_path(output), &fl.lattice).map_err(|e| e.to_string())
        }
        Generate::Lattice { name, output } => {
            let l = named_lattice(name)?;
            io::save_lattice(&out_path(output), &l).map_err(|e| e.to_string())
        }
    }
}

fn load_semilattice(path: &Path) -> Result<generators::MeetSemilattice, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file: SemilatticeFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    file.into_semilattice().map_err(|e| e.to_string())
}

fn named_lattice(name: &str) -> Result<FiniteLattice, String> {
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    let num = |a: Option<&str>| -> Result<usize, String> {
        a.ok_or_else(|| format!("`{head}` needs a size, e.g. `{head}:3`"))?
            .parse()
            .map_err(|e| format!("bad size: {e}"))
    };
    match head {
        "chain" => Ok(construct::chain(num(arg)?)),
        "boolean" => Ok(construct::boolean(num(arg)?)),
        "m3" => Ok(construct::m3()),
        "n5" => Ok(construct::n5()),
        "doubled-atom" => {
            construct::chain_dual_times_two_doubled_atom(num(arg)?).map_err(|e| e.to_string())
        }
        other => Err(format!("unknown lattice `{other}`")),
    }
}

fn cmd_explore(
    instance: &str,
    depth: usize,
    budget: usize,
    check: Option<&str>,
    dot: Option<&Path>,
) -> Result<(), String> {
    let name: NamedInstance = instance.parse().map_err(|e: explorer::ExplorerError| e.to_string())?;
    let spec: Option<PropertySpec> = match check {
        Some(s) => Some(s.parse().map_err(|e: explorer::ExplorerError| e.to_string())?),
        None => None,
    };
    let (graph, verdict) =
        explorer::explore_named(name, depth, budget, spec.as_ref()).map_err(|e| e.to_string())?;
    match verdict {
        Some(v) => println!("{}", serde_json::to_string_pretty(&v).map_err(|e| e.to_string())?),
        None => println!(
            "{}",
            json!({ "window": { "depth": depth, "budget": budget, "elements": graph.nodes.len() } })
        ),
    }
    if let Some(dot) = dot {
        std::fs::write(out_path(dot), io::window_dot(&graph)).map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn cmd_corpus(spec: &str, seed: Option<u64>, allow_large: bool) -> Result<(), String> {
    let parsed = parse_corpus_spec(spec, seed, allow_large)?;
    let items = corpus(&parsed).map_err(|e| e.to_string())?;
    let mut all_agree = true;
    let mut count = 0usize;
    for (i, item) in items.into_iter().enumerate() {
        let (name, lattice) = match item {
            CorpusItem::Poset(p) => {
                let cs = generators::co_poset(&p);
                (format!("co_poset_{i}"), cs.cld_lattice().map_err(|e| e.to_string())?.0)
            }
            CorpusItem::Semilattice(s) => {
                let cs = generators::sub_meet(&s);
                (format!("sub_meet_{i}"), cs.cld_lattice().map_err(|e| e.to_string())?.0)
            }
            CorpusItem::Moore(cs) => {
                (format!("moore_{i}"), cs.cld_lattice().map_err(|e| e.to_string())?.0)
            }
        };
        let report = checks::scs_geom_report(&lattice, Some(name.clone()));
        all_agree &= report.agreement && report.all_seven_equal();
        count += 1;
        println!(
            "{}",
            json!({
                "instance": name,
                "size": lattice.len(),
                "flags": report.flags(),
                "agreement": report.agreement && report.all_seven_equal(),
            })
        );
    }
    println!("{}", json!({ "summary": { "instances": count, "all_agree": all_agree } }));
    Ok(())
}

fn parse_corpus_spec(
    spec: &str,
    seed: Option<u64>,
    allow_large: bool,
) -> Result<CorpusSpec, String> {
    let (head, arg) = spec
        .split_once(':')
        .ok_or_else(|| format!("bad corpus spec `{spec}`"))?;
    let parse = |s: &str| s.parse::<usize>().map_err(|e| format!("bad corpus spec: {e}"));
    match head {
        "all-posets" => Ok(CorpusSpec::AllPosets { max_size: parse(arg)? }),
        "all-semilattices" => Ok(CorpusSpec::AllMeetSemilattices { max_size: parse(arg)? }),
        "all-moore" => Ok(CorpusSpec::AllMoore { ground: parse(arg)?, allow_large }),
        "random" => {
            let (count, max) = arg
                .split_once(',')
                .ok_or_else(|| "random spec is `random:<count>,<max_size>`".to_string())?;
            Ok(CorpusSpec::RandomPosets {
                count: parse(count)?,
                max_size: parse(max)?,
                seed: seed.ok_or_else(|| "random corpora require --seed".to_string())?,
            })
        }
        other => Err(format!("unknown corpus spec `{other}`")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { input, format, dot } => cmd_check(input, *format, dot.as_deref()),
        Command::Decompose { input, format } => cmd_decompose(input, *format),
        Command::Generate { what } => cmd_generate(what),
        Command::Explore { instance, depth, budget, check, dot } => {
            cmd_explore(instance, *depth, *budget, check.as_deref(), dot.as_deref())
        }
        Command::Corpus { spec, seed, allow_large } => cmd_corpus(spec, *seed, *allow_large),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
