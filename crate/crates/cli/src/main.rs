//! Command-line front end: parse group specs, run the library operations,
//! and emit text, JSON, or DOT.
//!
//! Exit codes: 0 on success, 1 for domain outcomes that are answers but
//! negative ones (not isomorphic, spectrum not realizable, expectation or
//! verification mismatch, failed axiom), 2 for usage, parse, and size
//! errors. Data goes to stdout, errors to stderr.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ordlat::arith::Natural;
use ordlat::elattice::{
    build_explicit, check_axioms, descriptor, iso, AxiomReport, CheckOutcome, IsoDecision,
    DEFAULT_ELEMENT_CAP,
};
use ordlat::group::AbelianGroup;
use ordlat::oracle::{enumerate_spectrum_with_cap, DEFAULT_ENUM_CAP};
use ordlat::reconstruct::{reconstruct, ReconstructError, SpectrumCandidate};
use ordlat::spectra::{count_order, spectrum, OrderSpectrum};

#[derive(Parser)]
#[command(
    name = "ordlat",
    version,
    about = "Element-order spectra and order E-lattices of finite abelian groups",
    long_about = "Computes how many elements of each order a finite abelian group has, draws \
                  the order E-lattice, decides E-lattice isomorphism, reconstructs a group \
                  from a spectrum, and cross-checks every formula against brute-force \
                  enumeration.\n\nGroups are written as cyclic factors joined by `x`, `*`, or \
                  `,`: \"Z4 x Z16\", \"12*720\", \"4,16\"."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the full order spectrum of a group
    Spectrum {
        /// Group spec, e.g. "Z4 x Z16"
        group: String,
        /// Emit the spectrum JSON instead of a table
        #[arg(long)]
        json: bool,
    },
    /// Count the elements of one given order
    Count {
        group: String,
        /// Element order (decimal)
        order: String,
        #[arg(long)]
        json: bool,
    },
    /// Emit the order E-lattice descriptor of a group
    Lattice {
        group: String,
        /// Output format
        #[arg(long, value_enum, default_value_t = LatticeFormat::Dot)]
        format: LatticeFormat,
    },
    /// Decide whether two groups have isomorphic order E-lattices
    Iso {
        group: String,
        other: String,
        #[arg(long)]
        json: bool,
    },
    /// Reconstruct a group from a spectrum JSON file
    Reconstruct {
        /// Path to a spectrum JSON file
        file: PathBuf,
        /// Fail (exit 1) unless the result equals this group
        #[arg(long)]
        expect: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Cross-check the counting formulas against brute-force enumeration
    Verify {
        group: String,
        /// Largest group order to enumerate
        #[arg(long, default_value_t = DEFAULT_ENUM_CAP)]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print invariant factors and the primary decomposition
    Canonical {
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Build the explicit E-lattice and verify its axioms
    Axioms {
        group: String,
        /// Largest carrier to materialize
        #[arg(long, default_value_t = DEFAULT_ELEMENT_CAP)]
        cap: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeFormat {
    Dot,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

/// `Err` is the usage/parse/size class (exit 2); `Ok` carries the domain
/// exit code.
fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Spectrum { group, json } => {
            let g = parse_group(&group)?;
            let s = spectrum(&g).map_err(|e| e.to_string())?;
            if json {
                println!("{}", s.to_json());
            } else {
                print!("{}", render_spectrum(&g, &s));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Count { group, order, json } => {
            let g = parse_group(&group)?;
            let d = parse_natural(&order)?;
            let count = count_order(&g, &d).map_err(|e| e.to_string())?;
            if json {
                let value = json!({
                    "group": g.spec_string(),
                    "order": d.to_string(),
                    "count": count.to_string(),
                });
                println!("{value}");
            } else {
                println!("{count}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Lattice { group, format } => {
            let g = parse_group(&group)?;
            let d = descriptor(&g).map_err(|e| e.to_string())?;
            match format {
                LatticeFormat::Dot => print!("{}", d.to_dot()),
                LatticeFormat::Json => println!("{}", d.to_json()),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Iso { group, other, json } => {
            let g = parse_group(&group)?;
            let h = parse_group(&other)?;
            match iso(&g, &h) {
                IsoDecision::Isomorphic { witness } => {
                    if json {
                        let pairs: Vec<[String; 2]> = witness
                            .iter()
                            .map(|(p, q)| [p.to_string(), q.to_string()])
                            .collect();
                        println!("{}", json!({ "isomorphic": true, "witness": pairs }));
                    } else {
                        println!("isomorphic");
                        for (p, q) in &witness {
                            println!("  {p} -> {q}");
                        }
                    }
                    Ok(ExitCode::SUCCESS)
                }
                IsoDecision::NotIsomorphic => {
                    if json {
                        println!("{}", json!({ "isomorphic": false }));
                    } else {
                        println!("not_isomorphic");
                    }
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Reconstruct { file, expect, json } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let candidate = SpectrumCandidate::from_json(&text).map_err(|e| e.to_string())?;
            let expected = expect.as_deref().map(parse_group).transpose()?;
            match reconstruct(&candidate) {
                Ok(g) => {
                    let matches = expected.as_ref().map(|e| *e == g);
                    if json {
                        println!(
                            "{}",
                            json!({
                                "realizable": true,
                                "group": g.spec_string(),
                                "expected": expected.as_ref().map(AbelianGroup::spec_string),
                                "matches": matches,
                            })
                        );
                    } else {
                        match (&expected, matches) {
                            (Some(e), Some(false)) => {
                                println!("reconstructed {g}; expected {e}");
                            }
                            _ => println!("{g}"),
                        }
                    }
                    Ok(if matches == Some(false) {
                        ExitCode::from(1)
                    } else {
                        ExitCode::SUCCESS
                    })
                }
                Err(ReconstructError::NotRealizable(reason)) => {
                    if json {
                        println!(
                            "{}",
                            json!({ "realizable": false, "reason": reason.to_string() })
                        );
                    } else {
                        println!("not_realizable: {reason}");
                    }
                    Ok(ExitCode::from(1))
                }
                Err(ReconstructError::Spectra(e)) => Err(e.to_string()),
            }
        }
        Command::Verify { group, cap, json } => {
            let g = parse_group(&group)?;
            let formula = spectrum(&g).map_err(|e| e.to_string())?;
            let tallied = enumerate_spectrum_with_cap(&g.invariant_factors(), cap)
                .map_err(|e| e.to_string())?;
            let agree = formula.same_entries(&tallied);
            if json {
                let entries: Vec<_> = formula
                    .entries()
                    .keys()
                    .chain(tallied.entries().keys())
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .map(|order| {
                        json!({
                            "order": order.to_string(),
                            "formula": formula.count(order).to_string(),
                            "oracle": tallied.count(order).to_string(),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({ "group": g.spec_string(), "agree": agree, "entries": entries })
                );
            } else {
                print!("{}", render_verification(&g, &formula, &tallied));
            }
            Ok(if agree {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Canonical { group, json } => {
            let g = parse_group(&group)?;
            if json {
                let components: Vec<_> = g
                    .components()
                    .iter()
                    .map(|c| {
                        json!({
                            "prime": c.prime().to_string(),
                            "partition": c.partition(),
                        })
                    })
                    .collect();
                let factors: Vec<String> =
                    g.invariant_factors().iter().map(Natural::to_string).collect();
                println!(
                    "{}",
                    json!({
                        "group": g.spec_string(),
                        "order": g.order().to_string(),
                        "exponent": g.exponent().to_string(),
                        "invariant_factors": factors,
                        "components": components,
                    })
                );
            } else {
                print!("{}", render_canonical(&g));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Axioms { group, cap, json } => {
            let g = parse_group(&group)?;
            let e = build_explicit(&g, cap).map_err(|e| e.to_string())?;
            let report = check_axioms(&e).map_err(|e| e.to_string())?;
            if json {
                let checks: Vec<_> = report
                    .checks
                    .iter()
                    .map(|c| {
                        let (status, detail) = match &c.outcome {
                            CheckOutcome::Passed => ("passed", None),
                            CheckOutcome::Failed { witness } => ("failed", Some(witness.clone())),
                            CheckOutcome::Skipped { reason } => ("skipped", Some(reason.clone())),
                        };
                        json!({ "name": c.name, "status": status, "detail": detail })
                    })
                    .collect();
                println!(
                    "{}",
                    json!({
                        "group": g.spec_string(),
                        "carrier": report.carrier_len,
                        "all_passed": report.all_passed(),
                        "checks": checks,
                    })
                );
            } else {
                print!("{}", render_axioms(&g, &report));
            }
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

fn parse_group(spec: &str) -> Result<AbelianGroup, String> {
    spec.parse()
        .map_err(|e| format!("invalid group spec {spec:?}: {e}"))
}

fn parse_natural(text: &str) -> Result<Natural, String> {
    Natural::from_str(text).map_err(|_| format!("{text:?} is not a decimal natural number"))
}

fn render_spectrum(g: &AbelianGroup, s: &OrderSpectrum) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group:    {g}");
    let _ = writeln!(out, "order:    {}", g.order());
    let _ = writeln!(out, "exponent: {}", s.exponent());
    let _ = writeln!(out);
    let ow = s
        .entries()
        .keys()
        .map(|o| o.to_string().len())
        .max()
        .unwrap_or(1)
        .max("order".len());
    let cw = s
        .entries()
        .values()
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1)
        .max("count".len());
    let _ = writeln!(out, "{:>ow$}  {:>cw$}", "order", "count");
    for (order, count) in s.entries() {
        let order = order.to_string();
        let count = count.to_string();
        let _ = writeln!(out, "{order:>ow$}  {count:>cw$}");
    }
    out
}

fn render_verification(
    g: &AbelianGroup,
    formula: &OrderSpectrum,
    tallied: &OrderSpectrum,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group: {g} (order {})", g.order());
    let orders: std::collections::BTreeSet<&Natural> = formula
        .entries()
        .keys()
        .chain(tallied.entries().keys())
        .collect();
    let mut mismatches = 0usize;
    let _ = writeln!(out, "{:>8}  {:>12}  {:>12}", "order", "formula", "oracle");
    for order in &orders {
        let f = formula.count(order).to_string();
        let t = tallied.count(order).to_string();
        let marker = if f == t {
            ""
        } else {
            mismatches += 1;
            "  MISMATCH"
        };
        let order = order.to_string();
        let _ = writeln!(out, "{order:>8}  {f:>12}  {t:>12}{marker}");
    }
    if mismatches == 0 {
        let _ = writeln!(
            out,
            "agreement: formula matches enumeration at all {} orders",
            orders.len()
        );
    } else {
        let _ = writeln!(
            out,
            "disagreement: {mismatches} of {} orders differ",
            orders.len()
        );
    }
    out
}

fn render_canonical(g: &AbelianGroup) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group:             {g}");
    let _ = writeln!(out, "order:             {}", g.order());
    let _ = writeln!(out, "exponent:          {}", g.exponent());
    let factors: Vec<String> = g.invariant_factors().iter().map(Natural::to_string).collect();
    let _ = writeln!(
        out,
        "invariant factors: {}",
        if factors.is_empty() {
            "(none)".to_owned()
        } else {
            factors.join(", ")
        }
    );
    let parts: Vec<String> = g.components().iter().map(|c| c.to_string()).collect();
    let _ = writeln!(
        out,
        "primary parts:     {}",
        if parts.is_empty() {
            "(none)".to_owned()
        } else {
            parts.join("; ")
        }
    );
    out
}

fn render_axioms(g: &AbelianGroup, report: &AxiomReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "group: {g} (carrier {})", report.carrier_len);
    for check in &report.checks {
        match &check.outcome {
            CheckOutcome::Passed => {
                let _ = writeln!(out, "pass  {}", check.name);
            }
            CheckOutcome::Failed { witness } => {
                let _ = writeln!(out, "FAIL  {}", check.name);
                let _ = writeln!(out, "      witness: {witness}");
            }
            CheckOutcome::Skipped { reason } => {
                let _ = writeln!(out, "skip  {} ({reason})", check.name);
            }
        }
    }
    if report.all_passed() {
        let _ = writeln!(out, "all checks passed");
    } else {
        let _ = writeln!(out, "axiom violations found");
    }
    out
}
