//! Command-line front end. JSON output is the stable contract; text output
//! is for reading.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::exact::{is_prime, prime_power};
use crate::int::Integer;
use crate::kengine::{crossed_product, homotopy_orbits, table, Status};
use crate::localize::localization_report;
use crate::repring::{
    cyclotomic, euler_xi, is_xi_zero, xi_class_function, xi_relation_constant, FiniteGroup,
};
use crate::selfcheck;
use crate::Error;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for rejected input.
pub const EXIT_VALIDATION: i32 = 2;
/// Exit status for a violated internal invariant.
pub const EXIT_INVARIANT: i32 = 3;

/// Environment variable capping the worker threads.
pub const THREADS_ENV: &str = "CROSSEDK_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "crossedk",
    version,
    about = "K-theory of crossed products by cyclic p-groups"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The Euler class ξ of C_n in Z[x]/(xⁿ − 1).
    Xi(NArgs),
    /// The constant c with ξ² = c·ξ.
    XiRelation(NArgs),
    /// The cyclotomic polynomial Φ_n and its value at 1.
    Cyclotomic(NArgs),
    /// The ξ class function of a group given by a Cayley table.
    XiCharacter(GroupArgs),
    /// Homotopy orbits of the C_p-action on (KU/ℓ)^⊗p.
    HomotopyOrbits(OrbitArgs),
    /// K-theory of the mod-ℓ crossed product by C_{p^k}.
    CrossedProduct(CrossedArgs),
    /// Stable image of ξ on (Z/ℓ)[x]/(x^{p^k} − 1).
    Localize(CrossedArgs),
    /// Copies of Z/ℓ per prime, by closed formula and by the chain-level pipeline.
    Table(TableArgs),
    /// Run every acceptance check.
    Selfcheck,
}

#[derive(Args, Debug)]
struct NArgs {
    #[arg(long)]
    n: usize,
}

#[derive(Args, Debug)]
struct GroupArgs {
    /// Cayley table file.
    #[arg(long)]
    group: PathBuf,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    ell: Integer,
}

#[derive(Args, Debug)]
struct CrossedArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    k: u32,
    #[arg(long)]
    ell: Integer,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Comma-separated primes.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    primes: Vec<u64>,
    #[arg(long)]
    ell: Integer,
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::CompositionNonzero
        | Error::NonFreeCoinvariants { .. }
        | Error::NonStabilizing(_)
        | Error::Internal(_) => EXIT_INVARIANT,
        _ => EXIT_VALIDATION,
    }
}

/// Sizes the global worker pool from `CROSSEDK_THREADS`, if set.
pub fn init_threads() {
    if let Some(n) = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
    {
        if n > 0 {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&cli) {
        Ok((text, code)) => {
            let _ = writeln!(out, "{text}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit<T: Serialize>(
    json: bool,
    value: &T,
    text: impl FnOnce() -> String,
) -> Result<(String, i32), Error> {
    if json {
        let s = serde_json::to_string(value).map_err(|e| Error::Internal(e.to_string()))?;
        Ok((s, EXIT_OK))
    } else {
        Ok((text(), EXIT_OK))
    }
}

fn require_prime(p: u64) -> Result<(), Error> {
    if !is_prime(&Integer::from(p)) {
        return Err(Error::NotPrime(Integer::from(p)));
    }
    Ok(())
}

fn require_n(n: usize, min: usize) -> Result<(), Error> {
    if n < min {
        return Err(Error::InvalidArgument(format!(
            "--n must be at least {min}"
        )));
    }
    Ok(())
}

fn require_ell(ell: &Integer) -> Result<(), Error> {
    if *ell < Integer::from(2) {
        return Err(Error::InvalidArgument(format!(
            "--ell {ell} must be at least 2"
        )));
    }
    Ok(())
}

fn require_coprime(p: u64, ell: &Integer) -> Result<(), Error> {
    if ell.is_multiple_of(&Integer::from(p)) {
        return Err(Error::PrimeDividesModulus {
            p: Integer::from(p),
            ell: ell.clone(),
        });
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<(String, i32), Error> {
    let json = cli.json;
    match &cli.command {
        Command::Xi(a) => {
            require_n(a.n, 1)?;
            let xi = euler_xi(a.n);
            emit(json, &xi, || format!("xi = {xi}"))
        }
        Command::XiRelation(a) => {
            require_n(a.n, 2)?;
            let c = xi_relation_constant(a.n);
            let literal = prime_power(a.n as u64).map_or(1, |(p, _)| p);
            let agrees = c.as_ref() == Some(&Integer::from(literal));
            let value = json!({
                "n": a.n,
                "c": c,
                "predicted": a.n,
                "literal_constant": literal,
                "agrees_with_literal": agrees,
            });
            emit(json, &value, || {
                let c = c.as_ref().map_or("none".to_string(), Integer::to_string);
                format!(
                    "n = {}: xi^2 = {c} * xi (literal constant {literal}, {})",
                    a.n,
                    if agrees { "agrees" } else { "differs" }
                )
            })
        }
        Command::Cyclotomic(a) => {
            require_n(a.n, 2)?;
            let phi = cyclotomic(a.n);
            let value = phi.eval(&Integer::ONE);
            let v = json!({ "n": a.n, "polynomial": phi, "value_at_one": value });
            emit(json, &v, || value.to_string())
        }
        Command::XiCharacter(a) => {
            if !a.group.is_file() {
                return Err(Error::InvalidArgument(format!(
                    "no such file: {}",
                    a.group.display()
                )));
            }
            let group = FiniteGroup::load(&a.group)?;
            let chi = xi_class_function(&group);
            let zero = is_xi_zero(&group)?;
            let classes: Vec<_> = chi
                .classes
                .iter()
                .zip(&chi.values)
                .map(|(c, v)| {
                    json!({
                        "representative": c[0],
                        "size": c.len(),
                        "element_order": group.element_order(c[0]),
                        "value": v,
                    })
                })
                .collect();
            let v = json!({ "order": group.order(), "classes": classes, "is_xi_zero": zero });
            emit(json, &v, || {
                let mut lines = vec![format!(
                    "{:>14} {:>6} {:>6} {:>8}",
                    "representative", "size", "order", "value"
                )];
                for (c, val) in chi.classes.iter().zip(&chi.values) {
                    lines.push(format!(
                        "{:>14} {:>6} {:>6} {:>8}",
                        c[0],
                        c.len(),
                        group.element_order(c[0]),
                        val
                    ));
                }
                lines.push(format!("is_xi_zero: {zero}"));
                lines.join("\n")
            })
        }
        Command::HomotopyOrbits(a) => {
            require_prime(a.p)?;
            require_ell(&a.ell)?;
            require_coprime(a.p, &a.ell)?;
            let m = homotopy_orbits(a.p, &a.ell)?;
            emit(json, &m, || m.to_string())
        }
        Command::CrossedProduct(a) => {
            require_prime(a.p)?;
            require_ell(&a.ell)?;
            require_coprime(a.p, &a.ell)?;
            let r = crossed_product(a.p, a.k, &a.ell)?;
            emit(json, &r, || {
                let show = |m: &Option<crate::kengine::GradedKUModule>| {
                    m.as_ref()
                        .map_or("not computed".to_string(), ToString::to_string)
                };
                let mut lines = vec![
                    format!(
                        "status: {}",
                        if r.status == Status::Complete {
                            "complete"
                        } else {
                            "partial"
                        }
                    ),
                    format!("total: {}", show(&r.total)),
                    format!("s_xi summand: {}", show(&r.s_xi_summand)),
                    format!("xi-inverted summand: {}", r.xi_inverted_summand),
                ];
                lines.extend(r.note.clone());
                lines.join("\n")
            })
        }
        Command::Localize(a) => {
            require_prime(a.p)?;
            require_ell(&a.ell)?;
            if a.k == 0 {
                return Err(Error::InvalidArgument("--k must be at least 1".into()));
            }
            let r = localization_report(a.p, a.k, &a.ell)?;
            emit(json, &r, || {
                format!(
                    "size: {}\ngroup: {}\nxi invertible: {}\n{}",
                    r.size, r.group, r.xi_invertible, r.paper_exponent_note
                )
            })
        }
        Command::Table(a) => {
            require_ell(&a.ell)?;
            for &p in &a.primes {
                require_prime(p)?;
            }
            let rows = table(&a.primes, &a.ell)?;
            let v = json!({ "ell": a.ell, "rows": rows });
            emit(json, &v, || {
                let mut lines = vec![format!("{:>4} {:>10} {:>8}", "p", "n0+p-1", "n1")];
                for r in &rows {
                    lines.push(format!("{:>4} {:>10} {:>8}", r.p, r.even, r.odd));
                }
                lines.join("\n")
            })
        }
        Command::Selfcheck => {
            let outcomes = selfcheck::run_all();
            let code = if outcomes.iter().all(|o| o.passed) {
                EXIT_OK
            } else {
                EXIT_INVARIANT
            };
            let (text, _) = emit(json, &outcomes, || {
                outcomes
                    .iter()
                    .map(selfcheck::Outcome::line)
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
            Ok((text, code))
        }
    }
}
