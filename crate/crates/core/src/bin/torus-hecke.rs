use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use torus_hecke::field::FieldDescriptor;
use torus_hecke::hecke::{compute_tp, scan_t1, spanning_set, Level, DEFAULT_BUDGET};
use torus_hecke::ray_class::{ClassGroup, RESIDUE_CAP};
use torus_hecke::verifier::{self, FieldSource, SweepConfig, CSV_HEADER};
use torus_hecke::Error;

#[derive(Parser)]
#[command(name = "torus-hecke", version, about = "Derived Hecke operators on arithmetic tori")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Field data.
    Field {
        #[command(subcommand)]
        action: FieldAction,
    },
    /// Invariants and report for one field, modulus and prime.
    Invariants(Single),
    /// Sweep fields, moduli and primes, checking every identity.
    Verify(Sweep),
    /// Primes of T1 with their functionals.
    ScanPrimes(Single),
    /// A spanning set for Hom(O^×, F_p).
    SpanningSet(Single),
}

#[derive(Subcommand)]
enum FieldAction {
    Info(FieldArgs),
}

#[derive(Args, Clone)]
struct FieldArgs {
    /// Squarefree d > 1, builds Q(sqrt(d)).
    #[arg(long, conflicts_with = "descriptor")]
    d: Option<u64>,
    /// JSON field descriptor.
    #[arg(long)]
    descriptor: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Single {
    #[command(flatten)]
    field: FieldArgs,
    /// Pick the first ideal of this norm as the modulus.
    #[arg(long, conflicts_with = "modulus")]
    modulus_norm: Option<u64>,
    /// Use the principal ideal (m) as the modulus.
    #[arg(long)]
    modulus: Option<u64>,
    #[arg(long, default_value_t = 5)]
    prime: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, default_value_t = RESIDUE_CAP)]
    cap_residue: u64,
}

#[derive(Args)]
struct Sweep {
    /// Comma-separated squarefree values.
    #[arg(long, value_delimiter = ',')]
    d: Vec<u64>,
    #[arg(long, value_delimiter = ',')]
    descriptor: Vec<PathBuf>,
    /// All moduli of norm up to this bound.
    #[arg(long, default_value_t = 20)]
    modulus_norm: u64,
    #[arg(long, value_delimiter = ',', default_values_t = [3u64, 5, 7])]
    prime: Vec<u64>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[arg(long, default_value_t = RESIDUE_CAP)]
    cap_residue: u64,
    /// Skip moduli whose norm shares a factor with p.
    #[arg(long)]
    coprime_only: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

fn load(args: &FieldArgs) -> Result<FieldDescriptor, Error> {
    match (&args.d, &args.descriptor) {
        (Some(d), _) => FieldSource::Native(*d).load(),
        (None, Some(p)) => FieldSource::Descriptor(p.clone()).load(),
        (None, None) => Err(Error::InvalidInput("one of --d or --descriptor is required".into())),
    }
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::InvalidInput(e.to_string())),
                _ => Ok(()),
            }
        }
    }
}

fn level(args: &Single) -> Result<Level, Error> {
    let field = load(&args.field)?;
    let classes = ClassGroup::compute(&field)?;
    let modulus = match (args.modulus, args.modulus_norm) {
        (Some(m), _) => field.ideal_from_int(&BigInt::from(m)),
        (None, Some(n)) => verifier::modulus_of_norm(&field, n)?,
        (None, None) => field.unit_ideal(),
    };
    Level::new(&field, &classes, &modulus, args.cap_residue)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json")
}

fn field_info(args: &FieldArgs) -> Result<u8, Error> {
    let f = load(args)?;
    let units: Vec<Vec<String>> = f
        .fundamental_units()
        .iter()
        .map(|u| u.coords().iter().map(|c| c.to_string()).collect())
        .collect();
    let v = json!({
        "label": f.label(),
        "min_poly": f.min_poly_i64(),
        "signature": f.signature(),
        "discriminant": f.discriminant().to_string(),
        "unit_rank": f.unit_rank(),
        "torsion_order": f.torsion_order(),
        "fundamental_units": units,
        "fundamental_unit_norms": f.fundamental_units().iter().map(|u| f.norm(u).to_string()).collect::<Vec<_>>(),
        "class_number": f.class_number(),
        "warnings": f.warnings(),
    });
    let text = match args.format {
        Format::Json => pretty(&v),
        Format::Csv => format!(
            "label,degree,discriminant,unit_rank,class_number\n\"{}\",{},{},{},{}",
            f.label(),
            f.degree(),
            f.discriminant(),
            f.unit_rank(),
            f.class_number()
        ),
    };
    emit(&text, &args.out)?;
    Ok(0)
}

fn invariants(args: &Single) -> Result<u8, Error> {
    let l = level(args)?;
    let ev = verifier::run_invariants(&l, args.prime, args.budget)?;
    let fails = verifier::check(&ev);
    for f in &fails {
        eprintln!("check failed: {f}");
    }
    if ev.shortfall {
        eprintln!(
            "budget shortfall: t_p = {} < r_p - delta_p = {}",
            ev.report.t_p,
            ev.record.expected_tp()
        );
    }
    let r = &ev.report;
    let text = match args.field.format {
        Format::Json => serde_json::to_string_pretty(r).expect("json"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER.split(',')).expect("write");
            w.serialize((
                &r.field,
                r.modulus_norm,
                r.p,
                r.r,
                r.r_p,
                r.delta_p,
                r.t_p,
                r.h_plus,
                r.index,
                r.hypothesis_a,
                r.psi_isomorphism,
                r.eigensystems.matched_both_degrees,
            ))
            .expect("write");
            String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
        }
    };
    emit(text.trim_end(), &args.field.out)?;
    Ok(if !fails.is_empty() {
        1
    } else if ev.shortfall {
        2
    } else {
        0
    })
}

fn verify(args: &Sweep) -> Result<u8, Error> {
    let mut fields: Vec<FieldSource> = args.d.iter().map(|&d| FieldSource::Native(d)).collect();
    fields.extend(args.descriptor.iter().cloned().map(FieldSource::Descriptor));
    let cfg = SweepConfig {
        fields,
        modulus_norm_bound: args.modulus_norm,
        primes: args.prime.clone(),
        budget: args.budget,
        cap_residue: args.cap_residue,
        coprime_only: args.coprime_only,
    };
    let outcome = verifier::run_verify(&cfg)?;
    for e in &outcome.entries {
        for m in &e.messages {
            eprintln!("{} N={} p={}: {m}", e.field, e.modulus_norm, e.p);
        }
    }
    let text = match args.format {
        Format::Json => outcome.to_json(),
        Format::Csv => outcome.to_csv(),
    };
    emit(text.trim_end(), &args.out)?;
    Ok(outcome.exit_code as u8)
}

fn scan_primes(args: &Single) -> Result<u8, Error> {
    let l = level(args)?;
    let p = args.prime;
    let rows: Vec<Value> = scan_t1(&l, p, args.budget)?
        .iter()
        .map(|f| {
            let v = f.prime();
            json!({
                "ell": v.ell(),
                "norm": v.norm(),
                "g_poly": v.g_poly().coeffs(),
                "generator": f.generator().coords(),
                "values": f.values(),
            })
        })
        .collect();
    let tp = compute_tp(&l, p, args.budget)?;
    let v = json!({
        "field": l.field().label(),
        "modulus_norm": l.modulus_norm(),
        "p": p,
        "primes": rows,
        "rank": tp.t_p,
        "expected": tp.expected,
    });
    emit(&pretty(&v), &args.field.out)?;
    Ok(if tp.shortfall { 2 } else { 0 })
}

fn spanning(args: &Single) -> Result<u8, Error> {
    let field = load(&args.field)?;
    let p = args.prime;
    let s = spanning_set(&field, p, args.budget)?;
    let v = json!({
        "field": field.label(),
        "p": p,
        "primes": s.primes.iter().map(|v| json!({"ell": v.ell(), "g_poly": v.g_poly().coeffs(), "norm": v.norm()})).collect::<Vec<_>>(),
        "matrix": s.matrix,
        "invertible": s.is_invertible(p),
    });
    emit(&pretty(&v), &args.field.out)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Field {
            action: FieldAction::Info(a),
        } => field_info(a),
        Command::Invariants(a) => invariants(a),
        Command::Verify(a) => verify(a),
        Command::ScanPrimes(a) => scan_primes(a),
        Command::SpanningSet(a) => spanning(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let capacity = matches!(
                e,
                Error::CapExceeded { .. } | Error::BudgetShortfall { .. } | Error::Inconclusive(_)
            );
            ExitCode::from(if capacity { 2 } else { 1 })
        }
    }
}
