use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use m2rank::dsl::{self, DslError};
use m2rank::identities::{self, IdentitySpec};
use m2rank::partitions::{rank_distribution, ResidueTable};
use m2rank::QSeries;

/// Exact q-series lab for M2-rank differences.
#[derive(Parser)]
#[command(name = "m2rank", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Expand an expression through q^order.
    Expand {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 20)]
        order: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Verify a catalogued identity, or an ad hoc one given by both sides.
    Verify {
        #[arg(long, conflicts_with_all = ["lhs", "rhs"], required_unless_present = "lhs")]
        id: Option<String>,
        #[arg(long, requires = "rhs")]
        lhs: Option<String>,
        #[arg(long, requires = "lhs")]
        rhs: Option<String>,
        #[arg(long, default_value_t = 200)]
        order: i64,
        #[arg(long)]
        json: bool,
    },
    /// Verify every catalogued identity.
    VerifyAll {
        #[arg(long, default_value_t = 200)]
        order: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the JSON report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Use this catalog file instead of the built-in one.
        #[arg(long)]
        catalog: Option<PathBuf>,
    },
    /// Rank residue counts N2(s, l, n) from the generating functions.
    Table {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        nmax: u32,
    },
    /// Rank counts by enumerating partitions.
    Bruteforce {
        #[arg(long)]
        nmax: u32,
        /// Reduce ranks mod this modulus.
        #[arg(long)]
        ell: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Coefficients of q^(l n + d) in an expression, as a series in q^n.
    Dissect {
        #[arg(long)]
        expr: String,
        #[arg(long = "mod")]
        modulus: u32,
        #[arg(long)]
        residue: u32,
        #[arg(long, default_value_t = 20)]
        order: i64,
        #[command(flatten)]
        out: Output,
    },
    /// Print the built-in catalog as JSON.
    Catalog,
}

#[derive(clap::Args)]
struct Output {
    /// Print the JSON series encoding.
    #[arg(long, conflicts_with = "bfile")]
    json: bool,
    /// Print `n a(n)` lines.
    #[arg(long)]
    bfile: bool,
}

enum Failure {
    Mismatch,
    Usage(String),
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<m2rank::Error> for Failure {
    fn from(e: m2rank::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse(src: &str) -> Result<dsl::Expr, Failure> {
    dsl::parse(src).map_err(|e| Failure::Usage(dsl::caret_diagnostic(src, &e)))
}

fn eval(src: &str, order: i64) -> Result<QSeries, Failure> {
    dsl::eval(&parse(src)?, order).map_err(|e| Failure::Usage(dsl::caret_diagnostic(src, &e)))
}

fn print_series(s: &QSeries, out: &Output) {
    if out.json {
        println!("{}", serde_json::to_string(s).expect("series serialize"));
    } else if out.bfile {
        for e in s.min_exp()..s.prec() {
            println!("{e} {}", s.coeff(e).expect("inside window"));
        }
    } else {
        for (e, c) in s.terms() {
            println!("{e}\t{c}");
        }
        println!("# O(q^{})", s.prec());
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serialize")
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Expand { expr, order, out } => print_series(&eval(&expr, order)?, &out),
        Cmd::Dissect {
            expr,
            modulus,
            residue,
            order,
            out,
        } => {
            if modulus == 0 || residue >= modulus {
                return Err(Failure::Usage(format!(
                    "need 0 <= residue < mod, got {residue} and {modulus}"
                )));
            }
            let inner = order * modulus as i64 + residue as i64;
            print_series(&eval(&expr, inner)?.dissect(modulus, residue)?, &out);
        }
        Cmd::Verify {
            id,
            lhs,
            rhs,
            order,
            json: as_json,
        } => {
            let report = match (id, lhs, rhs) {
                (Some(id), ..) => identities::verify(&id, order)?,
                (None, Some(lhs), Some(rhs)) => {
                    parse(&lhs)?;
                    parse(&rhs)?;
                    identities::verify_spec(
                        &IdentitySpec::new("ad-hoc", lhs, rhs, order, ""),
                        order,
                    )
                }
                _ => return Err(Failure::Usage("give --id or both --lhs and --rhs".into())),
            };
            if as_json {
                println!("{}", json(&report));
            } else {
                println!(
                    "{}\torder {}\t{}",
                    report.id,
                    report.order,
                    if report.pass { "pass" } else { "FAIL" }
                );
                if let Some(m) = &report.first_mismatch {
                    println!(
                        "first mismatch at q^{}: {} vs {}",
                        m.exponent, m.left, m.right
                    );
                }
                if let Some(e) = &report.error {
                    println!("error: {e}");
                }
            }
            if !report.pass {
                return Err(Failure::Mismatch);
            }
        }
        Cmd::VerifyAll {
            order,
            jobs,
            report,
            catalog,
        } => {
            let specs = match catalog {
                Some(path) => {
                    let text = fs::read_to_string(&path)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    Some(identities::load_catalog(&text)?)
                }
                None => None,
            };
            let suite = identities::verify_all(specs.as_deref(), order, jobs);
            for r in suite.failures() {
                let why = match (&r.first_mismatch, &r.error) {
                    (Some(m), _) => {
                        format!("mismatch at q^{}: {} vs {}", m.exponent, m.left, m.right)
                    }
                    (None, Some(e)) => e.clone(),
                    (None, None) => String::new(),
                };
                println!("FAIL {}\t{why}", r.id);
            }
            println!("{}/{} identities pass", suite.passed, suite.total);
            if let Some(path) = report {
                fs::write(&path, json(&suite) + "\n")
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            if !suite.all_pass() {
                return Err(Failure::Mismatch);
            }
        }
        Cmd::Table { ell, nmax } => {
            if ell < 2 {
                return Err(Failure::Usage("--ell must be at least 2".into()));
            }
            print!(
                "{}",
                identities::analytic_residue_table(ell, nmax)?.to_tsv()
            );
        }
        Cmd::Bruteforce {
            nmax,
            ell,
            json: as_json,
        } => {
            let dist = rank_distribution(nmax);
            match ell {
                Some(l) if l >= 1 => {
                    let table = ResidueTable::from_distribution(&dist, l);
                    if as_json {
                        println!("{}", json(&table));
                    } else {
                        print!("{}", table.to_tsv());
                    }
                }
                Some(_) => return Err(Failure::Usage("--ell must be positive".into())),
                None if as_json => println!("{}", json(&dist)),
                None => {
                    println!("n\tm\tcount");
                    for (n, by_rank) in dist.counts.iter().enumerate() {
                        for (m, c) in by_rank {
                            println!("{n}\t{m}\t{c}");
                        }
                    }
                }
            }
        }
        Cmd::Catalog => println!("{}", json(&identities::builtin_catalog())),
    }
    Ok(())
}
