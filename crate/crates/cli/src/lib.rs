//! Command-line front end. `dispatch` parses arguments, runs one
//! subcommand and returns the process exit code: 0 on success, 1 when a
//! check fails, 2 on bad input.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use log::{info, LevelFilter};
use mixed_ehrhart::ehrhart::{ehrhart, hstar, mixed_volume_table, multivariate_ehrhart};
use mixed_ehrhart::enumerate::count_points;
use mixed_ehrhart::io::{
    bigint_to_json, count_to_json, dilation_report_to_json, integers_to_json, multivariate_to_json,
    parse_collection, parse_rational, polynomial_to_json, rational_to_json, rationals_to_json,
    root_report_to_json,
};
use mixed_ehrhart::lattice::LatticePolytope;
use mixed_ehrhart::mixed::{
    conjectured_bound_violations, dmv_with_ledger, me_from_multivariate, me_second, me_top,
    mixed_ehrhart, mixed_hstar, PolytopeCollection,
};
use mixed_ehrhart::poly::{rat_to_int, UnivariatePolynomial};
use mixed_ehrhart::roots::{find_min_r, is_log_concave, is_real_rooted, is_unimodal, scan_dilates};
use mixed_ehrhart::suite::{run_paper_suite, run_property_suite, VerificationLedger};
use mixed_ehrhart::Error;
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "mixed-ehrhart",
    version,
    about = "Lattice-point counts, Ehrhart and mixed Ehrhart polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON collection file, or "-" for standard input.
    #[arg(long, global = true)]
    input: Option<String>,

    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Include per-subset ledgers in the output.
    #[arg(long, global = true)]
    trace: bool,

    /// Worker threads for subsum counts and scans.
    #[arg(long, global = true, value_name = "N")]
    parallel: Option<usize>,

    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lattice points and interior lattice points of each polytope.
    Count,
    /// Ehrhart polynomial of each polytope.
    Ehrhart,
    /// Multivariate Ehrhart polynomial of the collection.
    #[command(name = "ehrhart-multi", alias = "mehrhart-multi")]
    EhrhartMulti,
    /// h*-vector of each polytope.
    Hstar,
    /// Normalized mixed volumes of the collection.
    Mixedvol,
    /// Discrete mixed volume of the collection.
    Dmv,
    /// Mixed Ehrhart polynomial of the collection.
    MixedEhrhart,
    /// Mixed h*-vector of the collection.
    MixedHstar,
    /// Cross-checks the mixed Ehrhart coefficients by independent routes.
    MeCheck,
    /// Real roots of the mixed h*-polynomial, or of `--coeffs`.
    Roots {
        /// Comma-separated rational coefficients, lowest degree first.
        #[arg(long, allow_hyphen_values = true)]
        coeffs: Option<String>,
    },
    /// Diagnostics of h*(r𝒫) for r = 1..=rmax, one JSON line per r.
    Scan {
        #[arg(long, default_value_t = 10)]
        rmax: u64,
    },
    /// Smallest r after which every diagnostic holds up to rmax.
    FindR {
        #[arg(long, default_value_t = 10)]
        rmax: u64,
    },
    /// Reproduces the published example values.
    VerifyPaper {
        #[arg(long)]
        json: bool,
    },
    /// Runs the randomized identity suite.
    VerifyProps {
        #[arg(long, default_value_t = 50)]
        cases: usize,
        #[arg(long)]
        json: bool,
    },
}

/// What went wrong, and which exit code it maps to.
#[derive(Debug)]
enum Failure {
    Input(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::HeldOutMismatch { .. }
            | Error::Inconsistent(_)
            | Error::DegenerateNodes
            | Error::NoSamples
            | Error::InsufficientValues { .. }
            | Error::NotEhrhart => Failure::Check(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn json(v: Value) -> Self {
        Self {
            text: format!("{v}\n"),
            passed: true,
        }
    }
}

/// Reads `MIXED_EHRHART_LOG` (`quiet`, `info` or `trace`); anything else
/// leaves warnings on.
pub fn init_logging() {
    let level = match std::env::var("MIXED_EHRHART_LOG").as_deref() {
        Ok("quiet") => LevelFilter::Off,
        Ok("info") => LevelFilter::Info,
        Ok("trace") => LevelFilter::Trace,
        _ => LevelFilter::Warn,
    };
    let _ = env_logger::Builder::new().filter_level(level).try_init();
}

/// Runs with the process's standard streams.
pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run(
        args,
        &mut std::io::stdin(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}

pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = read_input(&cli, stdin).and_then(|text| {
        let text = text.as_deref();
        match cli.parallel {
            Some(0) => Err(Failure::Input(
                "--parallel: need at least one thread".into(),
            )),
            Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(|| execute(&cli, text)),
                Err(e) => Err(Failure::Input(format!("--parallel: {e}"))),
            },
            None => execute(&cli, text),
        }
    });
    match result {
        Ok(out) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &out.text)
                    .map_err(|e| format!("--output {}: {e}", path.display())),
                None => stdout
                    .write_all(out.text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_INPUT;
            }
            if out.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            }
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(stderr, "check failed: {msg}");
            EXIT_CHECK_FAILED
        }
    }
}

fn read_input(cli: &Cli, stdin: &mut dyn Read) -> Result<Option<String>, Failure> {
    match cli.input.as_deref() {
        None => Ok(None),
        Some("-") => {
            let mut text = String::new();
            stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("--input -: {e}")))?;
            Ok(Some(text))
        }
        Some(path) => std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| Failure::Input(format!("--input {path}: {e}"))),
    }
}

fn read_polytopes(text: Option<&str>) -> Result<Vec<LatticePolytope>, Failure> {
    let text =
        text.ok_or_else(|| Failure::Input("--input: required for this subcommand".into()))?;
    let spec = parse_collection(text)?;
    info!("read {} polytope(s)", spec.polytopes.len());
    Ok(spec.polytopes)
}

fn read_collection(text: Option<&str>) -> Result<PolytopeCollection, Failure> {
    Ok(PolytopeCollection::new(read_polytopes(text)?)?)
}

/// One object for a single polytope, an array otherwise.
fn per_polytope<F>(ps: &[LatticePolytope], f: F) -> Result<Value, Failure>
where
    F: Fn(&LatticePolytope) -> Result<Value, Failure>,
{
    let mut out = ps.iter().map(f).collect::<Result<Vec<_>, _>>()?;
    Ok(if out.len() == 1 {
        out.remove(0)
    } else {
        Value::Array(out)
    })
}

fn ledger_outcome(ledger: &VerificationLedger, as_json: bool) -> Outcome {
    let text = if as_json {
        format!("{}\n", ledger.to_json())
    } else {
        format!("{ledger}\n")
    };
    Outcome {
        text,
        passed: ledger.passed(),
    }
}

fn parse_coeffs(s: &str) -> Result<UnivariatePolynomial, Failure> {
    let coeffs = s
        .split(',')
        .map(|c| parse_rational(c).map_err(|e| Failure::Input(format!("--coeffs: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(UnivariatePolynomial::from_coeffs(coeffs))
}

fn execute(cli: &Cli, input: Option<&str>) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Count => {
            let ps = read_polytopes(input)?;
            Ok(Outcome::json(per_polytope(&ps, |p| {
                Ok(count_to_json(&count_points(p)))
            })?))
        }
        Command::Ehrhart => {
            let ps = read_polytopes(input)?;
            Ok(Outcome::json(per_polytope(&ps, |p| {
                let e = ehrhart(p)?;
                Ok(json!({
                    "polynomial": polynomial_to_json(&e.polynomial),
                    "dimension": e.dimension,
                    "volume": rational_to_json(&e.polynomial.leading_coefficient()),
                }))
            })?))
        }
        Command::EhrhartMulti => {
            let ps = read_polytopes(input)?;
            let e = multivariate_ehrhart(&ps)?;
            Ok(Outcome::json(
                json!({ "arity": e.arity(), "terms": multivariate_to_json(&e) }),
            ))
        }
        Command::Hstar => {
            let ps = read_polytopes(input)?;
            Ok(Outcome::json(per_polytope(&ps, |p| {
                Ok(json!({ "hstar": integers_to_json(&hstar(p)?.entries) }))
            })?))
        }
        Command::Mixedvol => {
            let ps = read_polytopes(input)?;
            let t = mixed_volume_table(&ps)?;
            let rows: Vec<Value> = t
                .entries
                .iter()
                .map(|(alpha, mv)| json!({ "alpha": alpha, "value": rational_to_json(mv) }))
                .collect();
            Ok(Outcome::json(
                json!({ "dimension": t.dimension, "mixed_volumes": rows }),
            ))
        }
        Command::Dmv => {
            let c = read_collection(input)?;
            let r = dmv_with_ledger(&c);
            let mut out = json!({ "dmv": bigint_to_json(&r.value) });
            if cli.trace {
                out["ledger"] = r
                    .ledger
                    .iter()
                    .map(|t| json!({ "subset": t.subset, "sign": t.sign, "count": t.count }))
                    .collect();
            }
            Ok(Outcome::json(out))
        }
        Command::MixedEhrhart => {
            let c = read_collection(input)?;
            let r = mixed_ehrhart(&c)?;
            let mut out = json!({
                "polynomial": rationals_to_json(&r.coefficients),
                "dmv": bigint_to_json(&r.dmv),
                "dimension": r.dimension,
            });
            if cli.trace {
                out["ledger"] = r
                    .ledger
                    .iter()
                    .map(|t| {
                        json!({
                            "subset": t.subset,
                            "sign": t.sign,
                            "ehrhart": polynomial_to_json(&t.ehrhart.polynomial),
                        })
                    })
                    .collect();
            }
            Ok(Outcome::json(out))
        }
        Command::MixedHstar => {
            let c = read_collection(input)?;
            let h = mixed_hstar(&c)?;
            Ok(Outcome::json(json!({
                "hstar": integers_to_json(&h.entries),
                "bound_violations": conjectured_bound_violations(&h, c.len()),
            })))
        }
        Command::MeCheck => me_check(&read_collection(input)?),
        Command::Roots { coeffs } => {
            let p = match coeffs {
                Some(s) => parse_coeffs(s)?,
                None => mixed_hstar(&read_collection(input)?)?.as_polynomial(),
            };
            let rep = is_real_rooted(&p)?;
            let mut out = root_report_to_json(&rep);
            out["coefficients"] = polynomial_to_json(&p);
            let ints: Option<Vec<_>> = p.coeffs().iter().map(rat_to_int).collect();
            if let Some(ints) = ints {
                out["log_concave"] = json!(is_log_concave(&ints));
                out["unimodal"] = json!(is_unimodal(&ints));
            }
            Ok(Outcome::json(out))
        }
        Command::Scan { rmax } => {
            let c = read_collection(input)?;
            let mut text = String::new();
            for rep in scan_dilates(&c, *rmax)? {
                text.push_str(&dilation_report_to_json(&rep).to_string());
                text.push('\n');
            }
            Ok(Outcome { text, passed: true })
        }
        Command::FindR { rmax } => {
            let c = read_collection(input)?;
            let r = find_min_r(&c, *rmax)?;
            Ok(Outcome::json(json!({ "min_r": r, "rmax": rmax })))
        }
        Command::VerifyPaper { json } => Ok(ledger_outcome(&run_paper_suite(), *json)),
        Command::VerifyProps { cases, json } => {
            if *cases == 0 {
                return Err(Failure::Input("--cases: need at least one case".into()));
            }
            Ok(ledger_outcome(&run_property_suite(cli.seed, *cases), *json))
        }
    }
}

/// Inclusion–exclusion against the multivariate route, the vanishing of
/// low coefficients, and the two leading-coefficient formulas where they
/// apply.
fn me_check(c: &PolytopeCollection) -> Result<Outcome, Failure> {
    let ie = mixed_ehrhart(c)?.coefficients;
    let mv = me_from_multivariate(c)?;
    let agree = ie == mv;
    let vanishing = ie.iter().take(c.len()).all(|x| *x == Default::default());
    let d = c.sum_dim();
    let mut passed = agree && vanishing;
    let top = if c.is_sum_full_dimensional() {
        let v = me_top(c)?;
        let ok = v == ie[d];
        passed &= ok;
        json!({ "value": rational_to_json(&v), "agree": ok })
    } else {
        Value::Null
    };
    let second = if c.all_full_dimensional() && d >= 1 {
        let v = me_second(c)?;
        let ok = v == ie[d - 1];
        passed &= ok;
        json!({ "value": rational_to_json(&v), "agree": ok })
    } else {
        Value::Null
    };
    Ok(Outcome {
        text: format!(
            "{}\n",
            json!({
                "inclusion_exclusion": rationals_to_json(&ie),
                "multivariate": rationals_to_json(&mv),
                "agree": agree,
                "vanishing_below_k": vanishing,
                "me_top": top,
                "me_second": second,
                "pass": passed,
            })
        ),
        passed,
    })
}
