//! Thin command-line front end over the library. Exit codes: 0 on
//! success (all checks passed), 1 on a reported verification failure,
//! 2 on input or usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use extalg::algebra::Algebra;
use extalg::classify;
use extalg::cohomology::h2;
use extalg::error::Error;
use extalg::extension::{central_extension, joint_radical, ExtensionSpec};
use extalg::format::{parse_algebra, parse_cocycle, render_algebra};
use extalg::symmetry::{automorphisms_with_bound, orbit_partition, GrassmannFilter};

#[derive(Parser)]
#[command(name = "extalg", version, about = "Exact central extensions, cohomology and orbit classification for anticommutative algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    #[value(alias = "Ts")]
    Ts,
    #[value(alias = "Us")]
    Us,
    #[value(alias = "Rs")]
    Rs,
}

impl From<FilterArg> for GrassmannFilter {
    fn from(f: FilterArg) -> GrassmannFilter {
        match f {
            FilterArg::All => GrassmannFilter::All,
            FilterArg::Ts => GrassmannFilter::Ts,
            FilterArg::Us => GrassmannFilter::Us,
            FilterArg::Rs => GrassmannFilter::Rs,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file and print its isomorphism invariants.
    Check { file: PathBuf },
    /// Second cohomology: dimensions and canonical basis classes.
    Cohomology {
        file: PathBuf,
        /// Also require and print the Tortkara-compatible part.
        #[arg(long)]
        tortkara: bool,
    },
    /// Joint radical of one or more cocycles.
    Radical {
        file: PathBuf,
        /// Cocycle expression such as `d34`, `d14+d23`, `2*d24`; repeatable.
        #[arg(long = "cocycle", required = true)]
        cocycles: Vec<String>,
    },
    /// Build the central extension by the given cocycles and print it.
    Extend {
        file: PathBuf,
        #[arg(long = "cocycle", required = true)]
        cocycles: Vec<String>,
    },
    /// Enumerate the automorphism group (finite fields only).
    Aut { file: PathBuf },
    /// Orbits of the automorphism action on s-dimensional subspaces of H².
    Orbits {
        file: PathBuf,
        #[arg(short)]
        s: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
    },
    /// Exhaustive isomorphism search between two algebras over GF(p).
    Iso { file1: PathBuf, file2: PathBuf },
    /// Classify extensions of the 4-dimensional base over GF(p).
    Classify {
        #[arg(long)]
        prime: u64,
        #[arg(short)]
        s: usize,
    },
    /// Verify the catalog: invariants, constructions, non-isomorphism.
    #[command(name = "verify-theorem1")]
    VerifyTheorem1 {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_delimiter = ',')]
        primes: Vec<u64>,
    },
}

fn enum_bound() -> Result<u64, Error> {
    match std::env::var("EXTALG_ENUM_BOUND") {
        Ok(value) => value
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad EXTALG_ENUM_BOUND {value:?}"))),
        Err(_) => Ok(extalg::symmetry::DEFAULT_ENUM_BOUND),
    }
}

fn load(path: &PathBuf) -> Result<Algebra, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
    })?;
    parse_algebra(&text)
}

fn print_json<T: Serialize>(value: &T) {
    let value = serde_json::to_value(value).expect("report types serialize");
    println!("{}", serde_json::to_string_pretty(&value).expect("valid json"));
}

fn run(cli: Cli) -> Result<u8, Error> {
    let fmt = cli.format;
    match cli.command {
        Command::Check { file } => {
            let a = load(&file)?;
            let sig = a.invariant_signature();
            match fmt {
                OutputFormat::Json => print_json(&json!({
                    "name": a.name(),
                    "dim": a.dim(),
                    "field": a.field().to_string(),
                    "nilpotency_index": a.nilpotency_index(),
                    "signature": sig,
                })),
                OutputFormat::Text => {
                    if let Some(name) = a.name() {
                        println!("name: {name}");
                    }
                    println!("dim: {}", a.dim());
                    println!("field: {}", a.field());
                    match a.nilpotency_index() {
                        Some(idx) => println!("nilpotent: yes (index {idx})"),
                        None => println!("nilpotent: no"),
                    }
                    println!("ideal power dims: {:?}", sig.power_dims);
                    println!("annihilator dim: {}", sig.annihilator_dim);
                    println!("square dim: {}", sig.square_dim);
                    println!("tortkara: {}", sig.tortkara);
                }
            }
            Ok(0)
        }
        Command::Cohomology { file, tortkara } => {
            let a = load(&file)?;
            let space = h2(&a);
            if tortkara && space.h2t_dim().is_none() {
                return Err(Error::NotTortkara);
            }
            let basis: Vec<String> = space.h2_basis().iter().map(|f| format!("[{f}]")).collect();
            let h2t_basis: Option<Vec<String>> = space
                .h2t_basis()
                .map(|forms| forms.iter().map(|f| format!("[{f}]")).collect());
            match fmt {
                OutputFormat::Json => print_json(&json!({
                    "z2_dim": space.z2_dim(),
                    "b2_dim": space.b2().dim(),
                    "h2_dim": space.h2_dim(),
                    "h2_basis": basis,
                    "h2t_dim": space.h2t_dim(),
                    "h2t_basis": if tortkara { h2t_basis } else { None },
                })),
                OutputFormat::Text => {
                    println!("dim Z2 = {}", space.z2_dim());
                    println!("dim B2 = {}", space.b2().dim());
                    println!("dim H2 = {}", space.h2_dim());
                    println!("H2 basis: {}", basis.join(", "));
                    if tortkara {
                        println!("dim H2_T = {}", space.h2t_dim().unwrap());
                        println!("H2_T basis: {}", h2t_basis.unwrap().join(", "));
                    }
                }
            }
            Ok(0)
        }
        Command::Radical { file, cocycles } => {
            let a = load(&file)?;
            let forms = cocycles
                .iter()
                .map(|c| parse_cocycle(c, a.dim(), a.field()))
                .collect::<Result<Vec<_>, _>>()?;
            let rad = joint_radical(&a, &forms)?;
            match fmt {
                OutputFormat::Json => print_json(&json!({
                    "dim": rad.dim(),
                    "basis": rad
                        .basis_rows()
                        .iter()
                        .map(|row| row.iter().map(|s| s.to_string()).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                })),
                OutputFormat::Text => {
                    println!("radical dim = {}", rad.dim());
                    println!("radical = {rad}");
                }
            }
            Ok(0)
        }
        Command::Extend { file, cocycles } => {
            let a = load(&file)?;
            let forms = cocycles
                .iter()
                .map(|c| parse_cocycle(c, a.dim(), a.field()))
                .collect::<Result<Vec<_>, _>>()?;
            let ext = central_extension(&ExtensionSpec::new(a, forms)?)?;
            match fmt {
                OutputFormat::Json => print_json(&json!({
                    "dim": ext.dim(),
                    "algebra": render_algebra(&ext),
                })),
                OutputFormat::Text => print!("{}", render_algebra(&ext)),
            }
            Ok(0)
        }
        Command::Aut { file } => {
            let a = load(&file)?;
            let auts = automorphisms_with_bound(&a, enum_bound()?)?;
            match fmt {
                OutputFormat::Json => print_json(&json!({
                    "order": auts.order(),
                    "dim": a.dim(),
                    "field": a.field().to_string(),
                })),
                OutputFormat::Text => println!("|Aut| = {}", auts.order()),
            }
            Ok(0)
        }
        Command::Orbits { file, s, filter } => {
            let a = load(&file)?;
            let space = h2(&a);
            let auts = automorphisms_with_bound(&a, enum_bound()?)?;
            let report = orbit_partition(&space, &auts, s, filter.into())?;
            let orbits: Vec<serde_json::Value> = report
                .orbits
                .iter()
                .map(|o| {
                    let classes: Vec<String> = space
                        .lift_subspace(&o.representative)
                        .iter()
                        .map(|f| format!("[{f}]"))
                        .collect();
                    json!({ "representative": classes, "size": o.size() })
                })
                .collect();
            match fmt {
                OutputFormat::Json => print_json(&json!({
                    "s": s,
                    "filter": report.filter.to_string(),
                    "points": report.points.len(),
                    "orbit_count": report.orbits.len(),
                    "orbits": orbits,
                })),
                OutputFormat::Text => {
                    println!(
                        "{} point(s) in filter {}, {} orbit(s)",
                        report.points.len(),
                        report.filter,
                        report.orbits.len()
                    );
                    for o in &report.orbits {
                        let classes: Vec<String> = space
                            .lift_subspace(&o.representative)
                            .iter()
                            .map(|f| format!("[{f}]"))
                            .collect();
                        println!("  <{}>  size {}", classes.join(", "), o.size());
                    }
                }
            }
            Ok(0)
        }
        Command::Iso { file1, file2 } => {
            let a = load(&file1)?;
            let b = load(&file2)?;
            let found = a.find_isomorphism_with_bound(&b, enum_bound()?)?;
            match fmt {
                OutputFormat::Json => print_json(&json!({
                    "isomorphic": found.is_some(),
                    "matrix": found.as_ref().map(|phi| {
                        (0..phi.rows())
                            .map(|r| {
                                phi.row(r).iter().map(|s| s.to_string()).collect::<Vec<_>>()
                            })
                            .collect::<Vec<_>>()
                    }),
                })),
                OutputFormat::Text => match &found {
                    Some(phi) => {
                        println!("isomorphic; matrix (columns are images of basis vectors):");
                        print!("{phi}");
                    }
                    None => println!("none"),
                },
            }
            Ok(if found.is_some() { 0 } else { 1 })
        }
        Command::Classify { prime, s } => {
            let report = classify::classify_extensions(prime, s, enum_bound()?)?;
            match fmt {
                OutputFormat::Json => print_json(&report),
                OutputFormat::Text => print!("{report}"),
            }
            Ok(if report.consistent { 0 } else { 1 })
        }
        Command::VerifyTheorem1 { max_n, primes } => {
            let report = classify::verify_catalog(max_n, &primes)?;
            match fmt {
                OutputFormat::Json => print_json(&report),
                OutputFormat::Text => print!("{report}"),
            }
            Ok(if report.all_passed { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
