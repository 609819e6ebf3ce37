//! Command-line front end: fall-degree reports, descent transforms, the
//! zero-dimensional solver, bound evaluation, verification suites and the
//! multi-HFE lab. Reports are JSON on stdout; exit codes are 0 = pass,
//! 2 = falsification found, 3 = infeasible/cap, 64 = usage error.

use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use falldeg::caps::Caps;
use falldeg::constructible::{fall_report, last_fall_degree};
use falldeg::descent::{tau, DescentMap, DescentModel};
use falldeg::error::Error;
use falldeg::hfe;
use falldeg::solver::{solve_zero_dim, SolveOpts};
use falldeg::sysfile::{DescentMeta, SystemFile};
use falldeg::verify;

#[derive(Parser)]
#[command(name = "falldeg", version, about = "Degree-fall analysis of polynomial systems over small finite fields", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fall report and last fall degree of the system in FILE
    Falldeg {
        file: String,
        /// Highest space degree scanned when not running the exact oracle
        #[arg(long, default_value_t = 8)]
        horizon: u32,
        /// Compute the exact last fall degree via the ideal oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Rewrite the system in FILE over the subfield of order q
    Descend {
        file: String,
        #[arg(long)]
        q: u64,
        /// classic (one polynomial per coordinate) or bar (digit model)
        #[arg(long, default_value = "classic")]
        model: String,
        /// polynomial (tower coordinate basis) or normal
        #[arg(long, default_value = "polynomial")]
        basis: String,
        /// Append the subfield field equations to the output
        #[arg(long)]
        field_eqs: bool,
    },
    /// Solve the zero-dimensional system in FILE over its coefficient field
    Solve {
        file: String,
        #[arg(long)]
        dbound: Option<u32>,
        #[arg(long)]
        ebound: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the radicality precheck
        #[arg(long)]
        assume_radical: bool,
    },
    /// Evaluate the degree-growth function tau(r, c, t)
    Tau { r: u64, c: u64, t: u64 },
    /// Run a verification suite on seeded random instances
    Verify(VerifyArgs),
    /// Multi-HFE laboratory
    Hfe {
        #[command(subcommand)]
        command: HfeCommand,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// descent-bound | univariate-bound | model-relation | gcd-certificate | bar-inclusion
    target: String,
    /// Subfield orders, e.g. 2 or 2,3
    #[arg(long, default_value = "2")]
    q: String,
    /// Extension degrees, e.g. 2,3 or 2..6
    #[arg(long, default_value = "2,3")]
    n: String,
    /// Variable counts before descent
    #[arg(long, default_value = "1")]
    m: String,
    /// Generator degrees (univariate-bound) or exhaustive cap (bar-inclusion)
    #[arg(long, default_value = "1,2,3")]
    d: String,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 6)]
    max_deg: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum HfeCommand {
    /// Generate a scrambled public system with a planted plaintext
    Gen {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Secret-system degree cap
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the public system file here (stdout JSON carries metadata)
        #[arg(long)]
        out: Option<String>,
    },
    /// Attack a public system file produced by `hfe gen`
    Attack {
        file: String,
        /// Degree-escalation cap (default: theorem-derived bound)
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Grid sweep: generate, attack, and tabulate observed degrees vs bounds
    Sweep {
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long, default_value = "2,3,4")]
        n: String,
        #[arg(long, default_value = "1")]
        m: String,
        #[arg(long, default_value = "3")]
        degree: String,
        #[arg(long, default_value_t = 3)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the table as CSV to this path
        #[arg(long)]
        csv: Option<String>,
    },
}

/// Accepts "3", "2,3,4" and inclusive ranges "2..6".
fn parse_list<T>(s: &str) -> Result<Vec<T>, String>
where
    T: std::str::FromStr + TryFrom<u64>,
{
    if let Some((a, b)) = s.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| format!("bad range start `{}`", a))?;
        let b: u64 = b.trim().parse().map_err(|_| format!("bad range end `{}`", b))?;
        if a > b {
            return Err(format!("empty range `{}`", s));
        }
        return (a..=b)
            .map(|v| T::try_from(v).map_err(|_| format!("value {} out of range", v)))
            .collect();
    }
    s.split(',')
        .map(|part| part.trim().parse::<T>().map_err(|_| format!("bad value `{}`", part)))
        .collect()
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::CapExceeded(_)
        | Error::OracleInfeasible(_)
        | Error::ParameterCapExceeded(_)
        | Error::DegreeTooLarge
        | Error::TrialCapExceeded
        | Error::FieldTooSmall(_)
        | Error::NoUnivariateFound { .. } => 3,
        Error::BoundExceeded { .. } | Error::NotRadical => 2,
        _ => 64,
    }
}

fn fail(e: Error) -> ExitCode {
    let payload = json!({"error": e.to_string()});
    println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    ExitCode::from(exit_for(&e))
}

fn load(file: &str) -> Result<SystemFile, Error> {
    let text = fs::read_to_string(file)
        .map_err(|e| Error::InvalidParameters(format!("cannot read {}: {}", file, e)))?;
    SystemFile::parse(&text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's help/version paths are not usage errors
            if e.use_stderr() {
                eprintln!("{}", e);
                return ExitCode::from(64);
            }
            print!("{}", e);
            return ExitCode::SUCCESS;
        }
    };
    let caps = Caps::from_env();
    match run(cli, &caps) {
        Ok(code) => code,
        Err(e) => fail(e),
    }
}

fn run(cli: Cli, caps: &Caps) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Falldeg { file, horizon, oracle } => {
            let sf = load(&file)?;
            if oracle {
                let last = last_fall_degree(&sf.polys, &sf.ring, caps)?;
                let report = fall_report(&sf.polys, &sf.ring, last.max(1), caps)?;
                let payload = json!({
                    "mode": "oracle-exact",
                    "last_fall_degree": last,
                    "first_fall_degree": report.first_fall,
                    "report": report,
                });
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                let report = fall_report(&sf.polys, &sf.ring, horizon, caps)?;
                let payload = json!({
                    "mode": "horizon-bounded",
                    "horizon": horizon,
                    "last_fall_seen": report.last_fall,
                    "first_fall_seen": report.first_fall,
                    "report": report,
                });
                println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Descend { file, q, model, basis, field_eqs } => {
            let sf = load(&file)?;
            let ext = sf.ring.field().clone();
            let m = sf.ring.nvars();
            let map = match basis.as_str() {
                "polynomial" => DescentMap::new(&ext, q, m)?,
                "normal" => DescentMap::normal(&ext, q, m)?,
                other => {
                    return Err(Error::InvalidParameters(format!(
                        "basis must be polynomial or normal, got `{}`",
                        other
                    )))
                }
            };
            let out = match model.as_str() {
                "classic" => map.descend_classic(&sf.polys, field_eqs)?,
                "bar" => map.descend_bar(&sf.polys, field_eqs)?,
                other => {
                    return Err(Error::InvalidParameters(format!(
                        "model must be classic or bar, got `{}`",
                        other
                    )))
                }
            };
            let meta = DescentMeta {
                q,
                n: map.n(),
                m,
                model: match out.model {
                    DescentModel::Classic => "classic".into(),
                    DescentModel::Bar => "bar".into(),
                },
                basis: map.basis().to_vec(),
            };
            let outfile =
                SystemFile::new(out.ring.clone(), out.all_polys(), Some(meta), field_eqs);
            print!("{}", outfile.write());
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { file, dbound, ebound, seed, assume_radical } => {
            let sf = load(&file)?;
            let opts = SolveOpts { dbound, ebound, seed, assume_radical, ..Default::default() };
            let (sol, trace) = solve_zero_dim(&sf.polys, &sf.ring, &opts, caps)?;
            let payload = json!({
                "solutions": sol.points,
                "solution_field_order": sol.field.order(),
                "trace": trace,
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Command::Tau { r, c, t } => {
            let value = tau(r, c, t)?;
            println!("{}", json!({"r": r, "c": c, "t": t, "tau": value}));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let usage = |msg: String| Error::InvalidParameters(msg);
            let q: Vec<u64> = parse_list(&args.q).map_err(usage)?;
            let n: Vec<usize> = parse_list(&args.n).map_err(usage)?;
            let m: Vec<usize> = parse_list(&args.m).map_err(usage)?;
            let d: Vec<u64> = parse_list(&args.d).map_err(usage)?;
            let report = match args.target.as_str() {
                "descent-bound" => {
                    verify::verify_descent_bound(&q, &n, &m, args.trials, args.seed, caps)?
                }
                "univariate-bound" => {
                    let d_list: Vec<u32> = d.iter().map(|&d| d as u32).collect();
                    verify::verify_univariate_bound(
                        q[0], &d_list, &n, args.trials, args.seed, caps,
                    )?
                }
                "model-relation" => verify::verify_model_relation(args.trials, args.seed, caps)?,
                "gcd-certificate" => verify::verify_gcd_certificate(
                    &q, &n, args.trials, args.max_deg, args.seed, caps,
                )?,
                "bar-inclusion" => verify::verify_bar_inclusion(
                    d.iter().copied().max().unwrap_or(6) as u32,
                    args.trials,
                    args.seed,
                    caps,
                )?,
                other => {
                    return Err(Error::InvalidParameters(format!(
                        "unknown verify target `{}`",
                        other
                    )))
                }
            };
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
        Command::Hfe { command } => run_hfe(command, caps),
    }
}

fn run_hfe(command: HfeCommand, caps: &Caps) -> Result<ExitCode, Error> {
    match command {
        HfeCommand::Gen { q, n, m, degree, seed, out } => {
            let inst = hfe::gen_instance(q, n, m, degree, seed)?;
            let meta = DescentMeta {
                q,
                n,
                m,
                model: "classic".into(),
                basis: inst.map.basis().to_vec(),
            };
            let file = SystemFile::new(
                inst.public.ring.clone(),
                inst.public.all_polys(),
                Some(meta),
                true,
            );
            let text = file.write();
            if let Some(path) = &out {
                fs::write(path, &text)
                    .map_err(|e| Error::InvalidParameters(format!("cannot write {}: {}", path, e)))?;
            }
            let payload = json!({
                "params": inst.params,
                "plaintext": inst.plaintext,
                "public_polys": inst.public.polys.len(),
                "field_equations": inst.public.field_eqs.len(),
                "system_file": if out.is_some() { serde_json::Value::Null } else { json!(text) },
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        HfeCommand::Attack { file, bound, seed } => {
            let sf = load(&file)?;
            let meta = sf.descent.clone().ok_or_else(|| {
                Error::InvalidParameters("attack needs a file with descent metadata".into())
            })?;
            let ext = ext_field(meta.q, meta.n)?;
            let map = DescentMap::with_basis(&ext, meta.q, meta.m, meta.basis.clone())?;
            // polynomials are stored flat; split the trailing mn field equations
            let mn = meta.m * meta.n;
            if !sf.field_equations || sf.polys.len() < mn {
                return Err(Error::NotApplicable(
                    "attack requires attached field equations".into(),
                ));
            }
            let split = sf.polys.len() - mn;
            let public = falldeg::descent::DescentSystem {
                model: DescentModel::Classic,
                ring: sf.ring.clone(),
                polys: sf.polys[..split].to_vec(),
                field_eqs: sf.polys[split..].to_vec(),
                provenance: Vec::new(),
            };
            let (sol, record) = hfe::attack(&public, &map, bound, seed, caps)?;
            let payload = json!({
                "record": record,
                "solutions": sol.points,
            });
            println!("{}", serde_json::to_string_pretty(&payload).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        HfeCommand::Sweep { q, n, m, degree, seeds, seed, csv } => {
            let usage = |msg: String| Error::InvalidParameters(msg);
            let config = hfe::SweepConfig {
                q: parse_list(&q).map_err(usage)?,
                n: parse_list(&n).map_err(usage)?,
                m: parse_list(&m).map_err(usage)?,
                d: parse_list::<u64>(&degree)
                    .map_err(usage)?
                    .iter()
                    .map(|&d| d as u32)
                    .collect(),
                seeds_per_cell: seeds,
                oracle_max_vars: 6,
            };
            let report = hfe::sweep(&config, seed, caps);
            if let Some(path) = &csv {
                fs::write(path, report.to_csv())
                    .map_err(|e| Error::InvalidParameters(format!("cannot write {}: {}", path, e)))?;
            }
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(if report.bound_satisfied() { ExitCode::SUCCESS } else { ExitCode::from(2) })
        }
    }
}

fn ext_field(q: u64, n: usize) -> Result<falldeg::field::FieldCtx, Error> {
    let (p, a) = match q {
        4 => (2u64, 2usize),
        8 => (2, 3),
        9 => (3, 2),
        q => (q, 1),
    };
    if a == 1 {
        falldeg::field::FieldCtx::tower(p, &[n])
    } else {
        falldeg::field::FieldCtx::tower(p, &[a, n])
    }
}
