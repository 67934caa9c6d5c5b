//! `sturmcert`: bounds, certificates, and test-data generation for Siegel
//! modular form expansions.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use sturmcert::arith::rational::floor_to_u64;
use sturmcert::arith::{format_rational, parse_rational, reduce_mod_ideal, CyclotomicRing};
use sturmcert::generators::{self, EvenLattice};
use sturmcert::io::{self, AnyExpansion};
use sturmcert::jacobi::{self, TorsionPoint};
use sturmcert::sturm::{self, OrderResult, Verdict};
use sturmcert::{Certificate, Error, Rational};

#[derive(Parser)]
#[command(name = "sturmcert", version, about = "Sturm bounds and congruence certificates for Siegel modular forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Slope bound, Sturm bound and cutoff for degree g, weight k, prime p.
    Bound {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        weight: u64,
        #[arg(long)]
        prime: u64,
        /// Print only the slope bound.
        #[arg(long)]
        slope_only: bool,
    },
    /// Mod-p diagonal vanishing order of an expansion file.
    Order {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        prime: u64,
    },
    /// Certify or refute F ≡ G (mod p).
    Check {
        #[arg(long)]
        lhs: PathBuf,
        #[arg(long)]
        rhs: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify integrality (or p-integrality with --prime) of all coefficients.
    Integrality {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        prime: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Theta series of an even unimodular lattice.
    Theta {
        /// Catalog name (E8, E8+E8, D16+) or path to a lattice fixture.
        #[arg(long)]
        lattice: String,
        /// Directory searched for fixture files named by --lattice.
        #[arg(long)]
        lattice_dir: Option<PathBuf>,
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        diag_bound: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fourier–Jacobi coefficient of index m.
    Fj {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        index: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Restriction of a Jacobi expansion to the torsion point (α, β).
    Restrict {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "N")]
        n: u64,
        /// Comma-separated coordinates in (1/N)Z.
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Determinant of the degree-1 torsion matrix and its residues.
    DetA {
        #[arg(long = "N")]
        n: u64,
        /// Primes to reduce at; defaults to all primes ≤ 13 other than N.
        #[arg(long, value_delimiter = ',')]
        prime: Vec<u64>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or_default().trim_start_matches("error: ");
            report("InvalidArgument", first);
            return ExitCode::from(2);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            report(e.code(), &e.to_string());
            ExitCode::from(2)
        }
    }
}

fn report(code: &str, message: &str) {
    eprintln!("{}", json!({ "code": code, "message": message }));
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json values serialize"));
}

fn read_siegel(path: &Path) -> Result<sturmcert::SiegelExpansion, Error> {
    io::siegel_from_str(&read(path)?)
}

fn certificate_exit(cert: &Certificate) -> u8 {
    match cert.verdict {
        Verdict::Congruent | Verdict::Integral => 0,
        Verdict::NotCongruent | Verdict::NotIntegral => 1,
        Verdict::Inconclusive => 2,
    }
}

fn order_json(order: OrderResult) -> Value {
    match order {
        OrderResult::NotVanishing => json!({ "order": "not_vanishing" }),
        OrderResult::Exact(l) => json!({ "order": "exact", "value": l }),
        OrderResult::AtLeast(d) => json!({ "order": "at_least", "value": d }),
    }
}

fn parse_coordinates(s: &str) -> Result<Vec<Rational>, Error> {
    s.split(',').map(|x| parse_rational(x.trim())).collect()
}

fn load_lattice(name: &str, dir: Option<&Path>) -> Result<EvenLattice, Error> {
    let mut candidates = Vec::new();
    if let Some(dir) = dir {
        candidates.push(dir.join(name));
        candidates.push(dir.join(format!("{name}.json")));
    }
    candidates.push(PathBuf::from(name));
    match candidates.iter().find(|p| p.is_file()) {
        Some(path) => EvenLattice::load(path),
        None => EvenLattice::catalog(name),
    }
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Bound {
            degree,
            weight,
            prime,
            slope_only,
        } => {
            let slope = sturm::slope_bound(degree, prime)?;
            let mut report = json!({
                "degree": degree,
                "prime": prime,
                "prime_class": slope.prime_class.as_str(),
                "slope": format_rational(&slope.value),
            });
            if !slope_only {
                let bound = sturm::sturm_diagonal_bound(degree, weight, prime)?;
                report["weight"] = json!(weight);
                report["bound"] = json!(format_rational(&bound));
                report["cutoff"] = json!(floor_to_u64(&bound));
            }
            emit_json(&report);
            Ok(0)
        }
        Command::Order { input, prime } => {
            let order = match io::read_expansion(&read(&input)?)? {
                AnyExpansion::Rational(f) => sturm::diagonal_vanishing_order(&f, prime)?,
                AnyExpansion::Cyclotomic(f) => sturm::diagonal_vanishing_order(&f, prime)?,
                AnyExpansion::Jacobi(phi) => jacobi::jacobi_vanishing_order(&phi, prime)?,
            };
            let mut report = order_json(order);
            report["prime"] = json!(prime);
            emit_json(&report);
            Ok(0)
        }
        Command::Check { lhs, rhs, prime, out } => {
            let cert = sturm::check_congruence(&read_siegel(&lhs)?, &read_siegel(&rhs)?, prime)?;
            emit(out.as_deref(), &io::certificate_to_string(&cert))?;
            Ok(certificate_exit(&cert))
        }
        Command::Integrality { input, prime, out } => {
            let cert = sturm::certify_integrality(&read_siegel(&input)?, prime)?;
            emit(out.as_deref(), &io::certificate_to_string(&cert))?;
            Ok(certificate_exit(&cert))
        }
        Command::Theta {
            lattice,
            lattice_dir,
            degree,
            diag_bound,
            out,
        } => {
            let l = load_lattice(&lattice, lattice_dir.as_deref())?;
            let f = generators::theta_series(&l, degree, diag_bound)?;
            emit(out.as_deref(), &io::siegel_to_string(&f))?;
            Ok(0)
        }
        Command::Fj { input, index, out } => {
            let phi = jacobi::fourier_jacobi(&read_siegel(&input)?, index)?;
            emit(out.as_deref(), &io::jacobi_to_string(&phi))?;
            Ok(0)
        }
        Command::Restrict {
            input,
            n,
            alpha,
            beta,
            out,
        } => {
            let phi = io::jacobi_from_str(&read(&input)?)?;
            let pt = TorsionPoint::from_rationals(n, &parse_coordinates(&alpha)?, &parse_coordinates(&beta)?)?;
            let restricted = jacobi::restrict_torsion(&phi, &pt)?;
            emit(out.as_deref(), &io::siegel_to_string(&restricted))?;
            Ok(0)
        }
        Command::DetA { n, prime } => {
            let det = generators::torsion_matrix_det(n)?;
            let primes = if prime.is_empty() {
                [2u64, 3, 5, 7, 11, 13].into_iter().filter(|&p| p != n).collect()
            } else {
                prime
            };
            let residues = primes
                .iter()
                .map(|&p| {
                    let r = reduce_mod_ideal(&det, p)?;
                    Ok(json!({ "prime": p, "nonzero": !r.is_zero(), "residue": r.value }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            emit_json(&json!({
                "N": n,
                "det": io::cyclotomic_to_wire(&det),
                "norm": CyclotomicRing::new(n).norm(&det).to_string(),
                "residues": residues,
            }));
            Ok(0)
        }
    }
}
