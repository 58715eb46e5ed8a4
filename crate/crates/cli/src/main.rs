use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use primlat::classifier::{describe, LatticeRecord};
use primlat::oracle::{isometry_small, short_vectors, IsometryOutcome, DEFAULT_BUDGET};
use primlat::surface::{derive_invariants, primitive_lattice, Embedding};
use primlat::{Error, GramFile, Lattice, LatticeVector, NamedDecomposition, Parity};

mod tables;

#[derive(Parser)]
#[command(name = "primlat", version, about = "Intersection and primitive lattices of compact complex surfaces")]
struct Cli {
    /// Render discriminant forms with values mod 1 instead of mod 2.
    #[arg(long, global = true)]
    mod_z: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Surface invariants and the primitive lattice of an ample class.
    #[command(subcommand)]
    Surface(SurfaceCmd),
    /// Genus and naming of explicit lattices.
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Reproduce the worked example tables.
    #[command(subcommand)]
    Examples(ExamplesCmd),
    /// Brute-force checks.
    #[command(subcommand)]
    Oracle(OracleCmd),
}

#[derive(Subcommand)]
enum SurfaceCmd {
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    b1: i64,
    #[arg(long, allow_hyphen_values = true)]
    c1sq: i64,
    #[arg(long, allow_hyphen_values = true)]
    c2: i64,
    #[arg(long = "h-sq", allow_hyphen_values = true)]
    h_sq: i64,
    #[arg(long = "h-characteristic", action = clap::ArgAction::Set)]
    h_characteristic: bool,
    #[arg(long, value_enum)]
    parity: ParityArg,
    /// `h` is the canonical class of a minimal surface with ample canonical class.
    #[arg(long)]
    canonically_polarized: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

#[derive(Subcommand)]
enum LatticeCmd {
    Info {
        #[arg(long)]
        gram: PathBuf,
    },
    Complement {
        #[arg(long)]
        gram: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    Standard {
        #[arg(long)]
        expr: String,
    },
}

#[derive(Subcommand)]
enum ExamplesCmd {
    Reproduce {
        #[arg(long, value_enum)]
        table: TableArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Ex1,
    Ex2,
    Table1,
    K3,
    Enriques,
}

#[derive(Subcommand)]
enum OracleCmd {
    Isometry {
        #[arg(long)]
        gram1: PathBuf,
        #[arg(long)]
        gram2: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    Shortvec {
        #[arg(long)]
        gram: PathBuf,
        #[arg(long)]
        bound: i64,
    },
}

enum Failure {
    Lib(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// 2 for invalid input, 3 when a guard refuses or a theorem does not apply,
/// 4 when a bounded search gives up.
fn exit_code(e: &Error) -> u8 {
    use Error::*;
    match e {
        ExoticBallQuotient
        | OddComplementRankGuard
        | ComplementRankGuard { .. }
        | PositiveDefiniteTotal(_)
        | DefiniteInput(..)
        | NonCyclicDiscGroup(_)
        | IndefiniteInput
        | RankTooLarge { .. } => 3,
        SearchBudgetExceeded(_)
        | NotFoundWithinBound { .. }
        | NoAmbientVectorFound { .. }
        | GroupTooLarge(_)
        | SearchInconclusive => 4,
        _ => 2,
    }
}

fn error_name(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

fn read_gram(path: &Path) -> Result<Lattice, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let file: GramFile =
        serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(file.to_lattice()?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("records serialize") + "\n"
}

fn with_mod_z(mut r: LatticeRecord, mod_z: bool) -> LatticeRecord {
    if mod_z {
        r.genus.discriminant_form = r.genus.discriminant_form_mod_z.clone();
    }
    r
}

#[derive(Serialize)]
struct ComplementRecord {
    vector: Vec<i64>,
    norm: String,
    characteristic: bool,
    basis: Vec<Vec<String>>,
    #[serde(flatten)]
    lattice: LatticeRecord,
}

#[derive(Serialize)]
struct IsometryRecord {
    isometric: bool,
    witness: Option<Vec<Vec<String>>>,
}

#[derive(Serialize)]
struct ShortVector {
    vector: Vec<String>,
    norm: String,
}

fn run(cli: Cli) -> Result<String, Failure> {
    let mod_z = cli.mod_z;
    let out = match cli.command {
        Command::Surface(SurfaceCmd::Classify(a)) => {
            let inv = derive_invariants(a.b1, a.c1sq, a.c2)?;
            let emb = Embedding {
                parity: match a.parity {
                    ParityArg::Odd => Parity::Odd,
                    ParityArg::Even => Parity::Even,
                },
                hsq: a.h_sq,
                h_characteristic: a.h_characteristic,
                canonically_polarized: a.canonically_polarized,
            };
            let mut rec = primitive_lattice(&inv, emb)?.record()?;
            if mod_z {
                rec.genus.discriminant_form = rec.genus.discriminant_form_mod_z.clone();
            }
            to_json(&rec)
        }
        Command::Lattice(LatticeCmd::Info { gram }) => {
            let l = read_gram(&gram)?;
            to_json(&with_mod_z(describe(&l)?, mod_z))
        }
        Command::Lattice(LatticeCmd::Complement { gram, vector }) => {
            let l = read_gram(&gram)?;
            let coords = vector
                .split(',')
                .map(|t| t.trim().parse::<i64>())
                .collect::<Result<Vec<i64>, _>>()
                .map_err(|e| Failure::Input(format!("--vector: {e}")))?;
            let v = LatticeVector::from(coords.clone());
            let norm = l.norm(&v)?;
            let characteristic = l.is_characteristic(&v)?;
            let c = l.orthogonal_complement(&v)?;
            to_json(&ComplementRecord {
                vector: coords,
                norm: norm.to_string(),
                characteristic,
                basis: c.basis.iter().map(|b| b.coords().iter().map(|x| x.to_string()).collect()).collect(),
                lattice: with_mod_z(describe(&c.lattice)?, mod_z),
            })
        }
        Command::Lattice(LatticeCmd::Standard { expr }) => {
            let d: NamedDecomposition = expr.parse()?;
            to_json(&with_mod_z(describe(&d.lattice()?)?, mod_z))
        }
        Command::Examples(ExamplesCmd::Reproduce { table }) => {
            match table {
                TableArg::Ex1 => tables::example1(),
                TableArg::Ex2 => tables::example2(),
                TableArg::Table1 => tables::table1()?,
                TableArg::K3 => tables::k3()?,
                TableArg::Enriques => tables::enriques()?,
            }
        }
        Command::Oracle(OracleCmd::Isometry { gram1, gram2, budget }) => {
            let (l1, l2) = (read_gram(&gram1)?, read_gram(&gram2)?);
            let rec = match isometry_small(&l1, &l2, budget)? {
                IsometryOutcome::Isometric(w) => IsometryRecord {
                    isometric: true,
                    witness: Some(w.matrix.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()),
                },
                IsometryOutcome::NoIsometry => IsometryRecord {
                    isometric: false,
                    witness: None,
                },
            };
            to_json(&rec)
        }
        Command::Oracle(OracleCmd::Shortvec { gram, bound }) => {
            let l = read_gram(&gram)?;
            let vs: Vec<ShortVector> = short_vectors(&l, bound)?
                .into_iter()
                .map(|(v, n)| ShortVector {
                    vector: v.coords().iter().map(|x| x.to_string()).collect(),
                    norm: n.to_string(),
                })
                .collect();
            to_json(&vs)
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(text) => {
            // a closed pipe on stdout is not worth reporting
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {}: {e}", error_name(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (u8, String) {
        let cli = match Cli::try_parse_from(std::iter::once("primlat").chain(args.iter().copied())) {
            Ok(c) => c,
            Err(_) => return (2, String::new()),
        };
        match run(cli) {
            Ok(out) => (0, out),
            Err(Failure::Input(m)) => (2, m),
            Err(Failure::Lib(e)) => (exit_code(&e), error_name(&e)),
        }
    }

    fn classify(b1: &str, c1sq: &str, c2: &str, hsq: &str, ch: &str, parity: &str) -> (u8, String) {
        call(&[
            "surface", "classify", "--b1", b1, "--c1sq", c1sq, "--c2", c2, "--h-sq", hsq, "--h-characteristic", ch,
            "--parity", parity,
        ])
    }

    #[test]
    fn golden_tables() {
        let golden = |name: &str| {
            let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"));
            std::fs::read_to_string(p).unwrap()
        };
        for t in ["ex1", "ex2", "table1", "k3", "enriques"] {
            assert_eq!(call(&["examples", "reproduce", "--table", t]), (0, golden(t)), "{t}");
        }
    }

    #[test]
    fn codes() {
        assert_eq!(classify("1", "1", "35", "1", "true", "odd"), (2, "OddB1".into()));
        assert_eq!(classify("0", "1", "10", "1", "true", "odd"), (2, "NoetherNonIntegral".into()));
        assert_eq!(classify("0", "18", "6", "1", "false", "odd"), (3, "ExoticBallQuotient".into()));
        assert_eq!(classify("2", "10", "2", "1", "false", "odd"), (3, "OddComplementRankGuard".into()));
        assert_eq!(classify("0", "9", "3", "1", "true", "odd"), (3, "PositiveDefiniteTotal".into()));
        assert_eq!(classify("0", "1", "11", "2", "true", "odd").0, 2);
        assert_eq!(call(&["lattice", "standard", "--expr", "F4"]).0, 2);
        assert_eq!(call(&["surface", "classify", "--b1", "x"]).0, 2);
        let (code, out) = classify("0", "1", "35", "1", "true", "odd");
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["named"], "U^4 + E8(-1)^3");
    }
}
