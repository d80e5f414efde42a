use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cyclic_arcs::bch::{self, CensusRow, CENSUS_CSV_HEADER};
use cyclic_arcs::exponent::{self, ExponentSet, DESCENT_CLASS_CSV_HEADER};
use cyclic_arcs::gf::{FieldSpec, Fq2Elem, Tower};
use cyclic_arcs::{proj3, selfcheck, Error};
use serde_json::json;

/// Verification engine for cyclic (q+1)-arcs in PG(3, 2^m) and the BCH
/// family C(q, q+1, 3, h).
#[derive(Parser, Debug)]
#[command(name = "cyclic-arcs", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimum distance and closed-form tests for every h.
    Census {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=6))]
        m: u32,
        /// Largest dependency weight searched.
        #[arg(long, default_value_t = 5)]
        cap: u32,
    },
    /// Descent classes {e, m-e} with gcd(e, m) = 1.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=12))]
        m: u32,
    },
    /// Whether the monomial model M_a is an arc, cross-checked against the
    /// Frobenius-exponent test.
    VerifyArc {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=7))]
        m: u32,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
    },
    /// Affine equivalence of {0,1,a,a+1} and {0,1,b,b+1} modulo 2^m + 1.
    Equivalence {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=12))]
        m: u32,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
    },
    /// The projectivity carrying A_e onto M_{2^e}.
    Witness {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=12))]
        m: u32,
        #[arg(long)]
        e: u32,
    },
    /// Every invariant suite for one m.
    Selfcheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(3..=6))]
        m: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Whether every verified property held.
type Outcome = Result<bool, Error>;

fn hex(x: Fq2Elem, m: u32) -> String {
    format!("{:x}", x.packed(m))
}

fn header(out: &mut impl Write, format: Format, spec: &FieldSpec) -> io::Result<()> {
    if format == Format::Csv {
        writeln!(out, "# field {spec}")?;
    }
    Ok(())
}

fn io_err(e: io::Error) -> Error {
    Error::InvalidShape(format!("output error: {e}"))
}

fn census(out: &mut impl Write, format: Format, m: u32, cap: u32) -> Outcome {
    let k = Tower::with_degree(m)?;
    let beta = k.find_beta();
    header(out, format, k.spec()).map_err(io_err)?;
    let mut write_err = None;
    let rows: Vec<CensusRow> = if format == Format::Csv {
        writeln!(out, "{CENSUS_CSV_HEADER}").map_err(io_err)?;
        bch::census_streaming(&k, &beta, cap, |row| {
            if write_err.is_none() {
                write_err = writeln!(out, "{}", row.to_csv())
                    .and_then(|_| out.flush())
                    .err();
            }
        })?
    } else {
        bch::census(&k, &beta, cap)?
    };
    if let Some(e) = write_err {
        return Err(io_err(e));
    }
    let summary = bch::summarize(m, &rows);
    match format {
        Format::Csv => writeln!(
            out,
            "# summary {}",
            serde_json::to_string(&summary).expect("plain struct")
        ),
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "field": k.spec().to_string(), "rows": rows, "summary": summary })
        ),
    }
    .map_err(io_err)?;
    Ok(summary.all_agree)
}

fn classify(out: &mut impl Write, format: Format, m: u32) -> Outcome {
    let spec = FieldSpec::new(m)?;
    let classes = exponent::descent_classes(m);
    let phi_m = exponent::euler_phi(u64::from(m));
    let ok = classes.len() as u64 * 2 == phi_m;
    match format {
        Format::Csv => {
            header(out, format, &spec).map_err(io_err)?;
            writeln!(out, "{DESCENT_CLASS_CSV_HEADER}").map_err(io_err)?;
            for c in &classes {
                writeln!(out, "{}", c.csv_row(m)).map_err(io_err)?;
            }
            writeln!(out, "# summary {}", json!({ "count": classes.len(), "phi_m": phi_m }))
        }
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "field": spec.to_string(), "classes": classes, "count": classes.len(), "phi_m": phi_m })
        ),
    }
    .map_err(io_err)?;
    Ok(ok)
}

fn verify_arc(out: &mut impl Write, format: Format, m: u32, a: i64) -> Outcome {
    let k = Tower::with_degree(m)?;
    let beta = k.find_beta();
    let a = exponent::reduce(a, k.n());
    let model = proj3::monomial_model(&k, &beta, a)?;
    let arc = proj3::is_arc(&k, model.points()).is_arc;
    let frob = exponent::is_frobenius_exponent(i64::from(a), m);
    // a ≡ ±1 gives a repeated coordinate, never an arc
    let consistent = arc == frob.is_some();
    let frob_text = frob.map_or_else(|| "none".to_string(), |f| f.to_string());
    header(out, format, k.spec()).map_err(io_err)?;
    match format {
        Format::Csv => writeln!(
            out,
            "arc={arc}, frobenius_exponent={frob_text}, consistent={consistent}"
        ),
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "field": k.spec().to_string(), "a": a, "arc": arc,
                    "frobenius_exponent": frob.map(|f| f.to_string()), "consistent": consistent })
        ),
    }
    .map_err(io_err)?;
    Ok(consistent)
}

fn equivalence(out: &mut impl Write, format: Format, m: u32, a: i64, b: i64) -> Outcome {
    let spec = FieldSpec::new(m)?;
    let n = spec.n();
    let ea = ExponentSet::four_point(n, a)?;
    let eb = ExponentSet::four_point(n, b)?;
    let witness = exponent::affine_equivalent(&ea, &eb)?;
    let sound = witness.is_none_or(|w| eb.affine_image(w) == ea);
    // the four-point classification only applies to units a, b ≢ 0, ±1
    let classified = exponent::four_point_classify(n, a, b).ok();
    let consistent = sound && (witness.is_none() || classified != Some(false));
    header(out, format, &spec).map_err(io_err)?;
    match format {
        Format::Csv => {
            let w = witness.map_or_else(|| "none".to_string(), |w| w.to_string());
            let c = classified.map_or_else(|| "-".to_string(), |c| c.to_string());
            writeln!(out, "{w}").map_err(io_err)?;
            writeln!(out, "# four_point_classify={c} consistent={consistent}")
        }
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "field": spec.to_string(), "e": ea, "f": eb, "witness": witness,
                    "four_point_classify": classified, "consistent": consistent })
        ),
    }
    .map_err(io_err)?;
    Ok(consistent)
}

fn witness(out: &mut impl Write, format: Format, m: u32, e: u32) -> Outcome {
    let k = Tower::with_degree(m)?;
    let w = proj3::descent_witness(&k, e)?;
    let holds = w.holds();
    header(out, format, k.spec()).map_err(io_err)?;
    let scalar = w.conjugation_scalar.map(|s| hex(s, m));
    match format {
        Format::Csv => writeln!(
            out,
            "e={e}, sigma={}, gamma={}, beta={}, image_matches={}, conjugation_scalar={}, holds={holds}",
            w.sigma,
            hex(w.singer.gamma, m),
            hex(w.singer.beta, m),
            w.image_matches,
            scalar.as_deref().unwrap_or("none"),
        ),
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "field": k.spec().to_string(), "e": e, "sigma": w.sigma,
                    "gamma": hex(w.singer.gamma, m), "beta": hex(w.singer.beta, m),
                    "image_matches": w.image_matches, "conjugation_scalar": scalar, "holds": holds })
        ),
    }
    .map_err(io_err)?;
    Ok(holds)
}

fn run_selfcheck(out: &mut impl Write, format: Format, m: u32, seed: u64) -> Outcome {
    let spec = FieldSpec::new(m)?;
    let report = selfcheck::run(m, seed)?;
    header(out, format, &spec).map_err(io_err)?;
    match format {
        Format::Csv => {
            for c in &report.checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                let detail = if c.detail.is_empty() {
                    String::new()
                } else {
                    format!(": {}", c.detail)
                };
                writeln!(out, "{status} {} [{} cases]{detail}", c.name, c.cases).map_err(io_err)?;
            }
            writeln!(
                out,
                "# summary {}",
                json!({ "checks": report.checks.len(), "failures": report.failures(),
                        "uncovered": report.uncovered })
            )
        }
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "field": spec.to_string(), "report": report })
        ),
    }
    .map_err(io_err)?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let format = cli.format;
    let outcome = match cli.command {
        Command::Census { m, cap } => census(&mut out, format, m, cap),
        Command::Classify { m } => classify(&mut out, format, m),
        Command::VerifyArc { m, a } => verify_arc(&mut out, format, m, a),
        Command::Equivalence { m, a, b } => equivalence(&mut out, format, m, a, b),
        Command::Witness { m, e } => witness(&mut out, format, m, e),
        Command::Selfcheck { m, seed } => run_selfcheck(&mut out, format, m, seed),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
