//! Command-line front end for the graded-module engine.
//!
//! Exit codes: 0 on success, 1 on assertion or usage failure, 2 when a
//! computation could not be certified at the cutoff in force.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use f2mod::catalog::{builtin_entries_for_ranks, find_entry, Suite};
use f2mod::dickson::{dickson_classes, SubgroupFlag};
use f2mod::error::Error;
use f2mod::f2poly::{cohomology_ring, AlgebraMap};
use f2mod::grmodule::{expand, restrict_scalars, DegreewiseModule, GradedPresentation};
use f2mod::gysin::{gysin_consistency, gysin_split, GysinTriple};
use f2mod::homalg::{
    depth_via_ab, depth_via_dickson, depth_via_ext, koszul_tor, projective_dimension,
};
use f2mod::linalg::BitMatrix;
use f2mod::suites::{run_suite, SuiteConfig};
use f2mod::textio::{emit_presentation, parse_presentation};

#[derive(Parser)]
#[command(
    name = "f2mod",
    about = "exact depth, Tor/Ext and Dickson-invariant computations for graded modules over GF(2) polynomial algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Depth of a presented module, by one or all methods
    Depth(DepthArgs),
    /// Betti table: dimensions of Tor against the residue field
    Betti(BettiArgs),
    /// Dimensions of the graded pieces
    Hilbert(HilbertArgs),
    /// Dickson invariant generators for a rank
    Dickson(DicksonArgs),
    /// Coinvariants/torsion split along a subgroup flag
    Gysin(GysinArgs),
    /// Inspect or export the builtin module catalog
    Catalog(CatalogArgs),
    /// Run a verification suite over the catalog
    Verify(VerifyArgs),
}

#[derive(Args)]
struct DepthArgs {
    /// Presentation file
    module: PathBuf,
    /// ab | ext | dickson | all
    #[arg(long, default_value = "ab")]
    method: String,
    /// hv | dv | dtilde
    #[arg(long, default_value = "hv")]
    ring: String,
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BettiArgs {
    module: PathBuf,
    /// hv | dv | dtilde
    #[arg(long, default_value = "hv")]
    ring: String,
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct HilbertArgs {
    module: PathBuf,
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DicksonArgs {
    #[arg(long)]
    rank: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GysinArgs {
    module: PathBuf,
    /// Invertible change-of-basis matrix as rows of 0/1 digits, e.g. 10,01
    #[arg(long)]
    flag: String,
    #[arg(long, default_value_t = 1)]
    codim: u32,
    /// Catalog-provided module over the subgroup ring to check consistency
    #[arg(long)]
    with: Option<PathBuf>,
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CatalogArgs {
    #[command(subcommand)]
    command: CatalogCommand,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List builtin entries
    List {
        #[arg(long)]
        rank: Option<u32>,
    },
    /// Write the presentation files of one entry
    Emit {
        name: String,
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// ab | methods | euler | thm31 | prop241 | lemma3122 | seqS | prop2311 | lemma2322 | structure | dickson
    #[arg(long)]
    suite: String,
    #[arg(long)]
    rank: Option<u32>,
    /// Seed range `a..b` (inclusive) or comma-separated list
    #[arg(long)]
    seeds: Option<String>,
    #[arg(long)]
    cutoff: Option<u32>,
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_cutoff() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Depth(args) => cmd_depth(args),
        Command::Betti(args) => cmd_betti(args),
        Command::Hilbert(args) => cmd_hilbert(args),
        Command::Dickson(args) => cmd_dickson(args),
        Command::Gysin(args) => cmd_gysin(args),
        Command::Catalog(args) => cmd_catalog(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn load_presentation(path: &Path) -> Result<GradedPresentation, Error> {
    let text = std::fs::read_to_string(path)?;
    parse_presentation(&text)
}

/// Expand and, for the invariant-ring views, restrict scalars.
fn expanded_over_ring(
    pres: &GradedPresentation,
    ring: &str,
    cutoff: Option<u32>,
) -> Result<DegreewiseModule, Error> {
    let n = pres.ring().num_gens() as u32;
    let all_degree_one = (0..pres.ring().num_gens()).all(|j| pres.ring().gen_degree(j) == 1);
    let default_cutoff = match ring {
        "hv" => pres.suggested_cutoff().max(16),
        _ => {
            let invariant_sum: u32 = (1..=n).map(|i| f2mod::dickson::dickson_degree(n, i)).sum();
            invariant_sum + (1 << n) + pres.max_generator_degree() + pres.max_relation_degree() + 4
        }
    };
    let cutoff = cutoff.unwrap_or(default_cutoff);
    let module = expand(pres, cutoff)?;
    match ring {
        "hv" => Ok(module),
        "dv" => {
            if !all_degree_one || n == 0 {
                return Err(Error::Unsupported(
                    "the dv view needs a module over F2[t1..tn]".into(),
                ));
            }
            let sys = dickson_classes(n);
            restrict_scalars(&module, &sys.inclusion())
        }
        "dtilde" => {
            if !all_degree_one || n == 0 {
                return Err(Error::Unsupported(
                    "the dtilde view needs a module over F2[t1..tn]".into(),
                ));
            }
            let flag = SubgroupFlag::standard(n, 1)?;
            let (gens, dt_ring) = f2mod::dickson::dtilde_generators(&flag)?;
            let incl = AlgebraMap::new(&dt_ring, &cohomology_ring(n), gens)?;
            restrict_scalars(&module, &incl)
        }
        other => Err(Error::Unsupported(format!(
            "unknown ring {other:?}; expected hv, dv or dtilde"
        ))),
    }
}

fn cmd_depth(args: DepthArgs) -> Result<ExitCode, Error> {
    let pres = load_presentation(&args.module)?;
    let module = expanded_over_ring(&pres, &args.ring, args.cutoff)?;
    let methods: Vec<&str> = match args.method.as_str() {
        "all" => vec!["ab", "ext", "dickson"],
        m @ ("ab" | "ext" | "dickson") => vec![m],
        other => {
            return Err(Error::Unsupported(format!(
                "unknown method {other:?}; expected ab, ext, dickson or all"
            )))
        }
    };
    for method in methods {
        let report = match method {
            "ab" => depth_via_ab(&module)?,
            "ext" => depth_via_ext(&module)?,
            "dickson" => {
                if args.ring != "hv" {
                    return Err(Error::Unsupported(
                        "the regular-sequence method runs over the hv view".into(),
                    ));
                }
                let n = module.ring().num_gens() as u32;
                depth_via_dickson(&module, &dickson_classes(n))?
            }
            _ => unreachable!(),
        };
        if args.json {
            println!(
                "{}",
                serde_json::json!({
                    "record": "depth",
                    "method": method,
                    "ring": args.ring,
                    "depth": report.depth.to_string(),
                    "projective_dimension": report.projective_dimension.to_string(),
                    "cutoff": module.cutoff(),
                })
            );
        } else {
            println!(
                "depth={} method={} ring={} pd={} cutoff={}",
                report.depth,
                method,
                args.ring,
                report.projective_dimension,
                module.cutoff()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_betti(args: BettiArgs) -> Result<ExitCode, Error> {
    let pres = load_presentation(&args.module)?;
    let module = expanded_over_ring(&pres, &args.ring, args.cutoff)?;
    let table = koszul_tor(&module);
    for (i, d, dim) in table.triples() {
        if args.json {
            println!(
                "{}",
                serde_json::json!({"record": "betti", "i": i, "d": d, "dim": dim})
            );
        } else {
            println!("i={i} d={d} dim={dim}");
        }
    }
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "record": "betti_summary",
                "stable": table.stability_ok(),
                "cutoff": table.cutoff(),
            })
        );
    } else {
        println!("stable={} cutoff={}", table.stability_ok(), table.cutoff());
    }
    if !table.stability_ok() {
        return Err(Error::CutoffInsufficient {
            cutoff: table.cutoff(),
            detail: "Betti rows do not vanish on the top window".into(),
        });
    }
    let _ = projective_dimension(&table)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_hilbert(args: HilbertArgs) -> Result<ExitCode, Error> {
    let pres = load_presentation(&args.module)?;
    let cutoff = args
        .cutoff
        .unwrap_or_else(|| pres.suggested_cutoff().max(16));
    let module = expand(&pres, cutoff)?;
    for d in 0..=module.cutoff() {
        if args.json {
            println!(
                "{}",
                serde_json::json!({"record": "hilbert", "d": d, "dim": module.dim(d)})
            );
        } else {
            println!("d={d} dim={}", module.dim(d));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_dickson(args: DicksonArgs) -> Result<ExitCode, Error> {
    if args.rank == 0 || args.rank > 6 {
        return Err(Error::Unsupported("rank must be between 1 and 6".into()));
    }
    let sys = dickson_classes(args.rank);
    for (i, class) in sys.classes().iter().enumerate() {
        let degree = class.degree().expect("classes are nonzero");
        if args.json {
            println!(
                "{}",
                serde_json::json!({
                    "record": "dickson_class",
                    "index": i + 1,
                    "degree": degree,
                    "polynomial": class.to_string(),
                })
            );
        } else {
            println!("c{} (degree {}) = {}", i + 1, degree, class);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_flag_matrix(text: &str) -> Result<BitMatrix, Error> {
    let rows: Vec<&str> = text.split([',', ';']).collect();
    let n = rows.len();
    let mut mat = BitMatrix::zero(n, n);
    for (i, row) in rows.iter().enumerate() {
        let row = row.trim();
        if row.len() != n {
            return Err(Error::Unsupported(format!(
                "flag matrix row {row:?} does not have {n} entries"
            )));
        }
        for (j, ch) in row.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => mat.set(i, j, true),
                other => {
                    return Err(Error::Unsupported(format!(
                        "flag matrix entries must be 0 or 1, found {other:?}"
                    )))
                }
            }
        }
    }
    Ok(mat)
}

fn cmd_gysin(args: GysinArgs) -> Result<ExitCode, Error> {
    let pres = load_presentation(&args.module)?;
    let n = pres.ring().num_gens() as u32;
    let mat = parse_flag_matrix(&args.flag)?;
    let flag = SubgroupFlag::new(n, mat, args.codim)?;
    if flag.codim() != 1 {
        return Err(Error::Unsupported(
            "the split is computed one corank at a time; pass a corank-one flag".into(),
        ));
    }
    let cutoff = args
        .cutoff
        .unwrap_or_else(|| pres.suggested_cutoff().max(16));
    let module = expand(&pres, cutoff)?;
    let (coinv, torsion) = gysin_split(&module, &flag)?;
    let upto = torsion.cutoff();
    for d in 0..=upto {
        if args.json {
            println!(
                "{}",
                serde_json::json!({
                    "record": "gysin_split",
                    "d": d,
                    "coinvariants": coinv.dim(d),
                    "torsion": torsion.dim(d),
                })
            );
        } else {
            println!(
                "d={d} coinvariants={} torsion={}",
                coinv.dim(d),
                torsion.dim(d)
            );
        }
    }
    if let Some(with) = &args.with {
        let w_pres = load_presentation(with)?;
        let m_w = expand(&w_pres, cutoff)?;
        let triple = GysinTriple::new(module, flag, m_w)?;
        let report = gysin_consistency(&triple);
        if args.json {
            println!(
                "{}",
                serde_json::json!({
                    "record": "gysin_consistency",
                    "ok": report.ok,
                    "first_failure": report.first_failure,
                })
            );
        } else {
            match report.first_failure {
                None => println!("consistency=ok"),
                Some(d) => println!("consistency=fail first_failure={d}"),
            }
        }
        if !report.ok {
            return Ok(ExitCode::from(1));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_catalog(args: CatalogArgs) -> Result<ExitCode, Error> {
    match args.command {
        CatalogCommand::List { rank } => {
            let ranks = match rank {
                Some(n) => vec![n],
                None => vec![2, 3, 4],
            };
            for entry in builtin_entries_for_ranks(&ranks)? {
                let tags: Vec<&str> = entry.tags.iter().map(|t| t.name()).collect();
                println!(
                    "{} rank={} levels={} expected_depths={:?} tags={}",
                    entry.name,
                    entry.rank,
                    entry.levels.len(),
                    entry
                        .expected_depths
                        .iter()
                        .map(|d| d.to_string())
                        .collect::<Vec<_>>(),
                    tags.join(",")
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        CatalogCommand::Emit { name, dir } => {
            let entry = find_entry(&name)?;
            std::fs::create_dir_all(&dir)?;
            for (j, pres) in entry.levels.iter().enumerate() {
                let rank = entry.rank - j as u32;
                let path = dir.join(format!("{}.rank{}.pres", entry.name, rank));
                std::fs::write(&path, emit_presentation(pres))?;
                println!("{}", path.display());
            }
            if let Some(source) = &entry.scalar_source {
                let path = dir.join(format!("{}.source.pres", entry.name));
                std::fs::write(&path, emit_presentation(source))?;
                println!("{}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_seeds(text: &str) -> Result<Vec<u64>, Error> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let lo: u64 = a
            .trim()
            .parse()
            .map_err(|_| Error::Unsupported(format!("bad seed range start {a:?}")))?;
        let hi: u64 = b
            .trim()
            .parse()
            .map_err(|_| Error::Unsupported(format!("bad seed range end {b:?}")))?;
        if hi < lo {
            return Err(Error::Unsupported("empty seed range".into()));
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|_| Error::Unsupported(format!("bad seed {s:?}")))
        })
        .collect()
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let suite = Suite::parse(&args.suite).ok_or_else(|| {
        Error::Unsupported(format!(
            "unknown suite {:?}; expected one of {}",
            args.suite,
            Suite::all()
                .iter()
                .map(|s| s.name())
                .collect::<Vec<_>>()
                .join(", ")
        ))
    })?;
    let mut config = SuiteConfig::default();
    if let Some(rank) = args.rank {
        config.ranks = vec![rank];
    }
    if let Some(seeds) = &args.seeds {
        config.seeds = parse_seeds(seeds)?;
    }
    config.cutoff = args.cutoff;
    let report = run_suite(suite, &config)?;
    for record in &report.records {
        if args.json {
            println!(
                "{}",
                serde_json::json!({
                    "record": "check",
                    "suite": record.suite,
                    "instance": record.instance,
                    "pass": record.pass,
                    "cutoff_insufficient": record.cutoff_insufficient,
                    "detail": record.detail,
                })
            );
        } else {
            let status = if record.pass {
                "PASS"
            } else if record.cutoff_insufficient {
                "CUTOFF"
            } else {
                "FAIL"
            };
            println!("[{status}] {} {}", record.instance, record.detail);
        }
    }
    let passed = report.records.iter().filter(|r| r.pass).count();
    if args.json {
        println!(
            "{}",
            serde_json::json!({
                "record": "summary",
                "suite": report.suite,
                "passed": passed,
                "total": report.records.len(),
                "exit_code": report.exit_code(),
            })
        );
    } else {
        println!(
            "suite={} passed={}/{}",
            report.suite,
            passed,
            report.records.len()
        );
    }
    Ok(ExitCode::from(report.exit_code() as u8))
}
