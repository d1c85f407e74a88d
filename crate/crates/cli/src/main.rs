//! `automorph`: series dumps, verification suites, trajectory integration and
//! the cubic inverse of the `k = 3/2` map.
//!
//! Exit codes: 0 pass, 1 fail, 2 usage, 3 numerical abort.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use automorph_core::config::RunConfig;
use automorph_core::dynamics::{integrate, jet_extend, residual_first_order, Path, State, SystemSpec};
use automorph_core::hypergeometric::{coeffs_2f1, modulus_data};
use automorph_core::modular::{eisenstein, theta};
use automorph_core::series::{parse_rational, Exponent, PuiseuxSeries};
use automorph_core::suites::run_suite;
use automorph_core::theorem2::{cubic_roots, inverse_map32, ZConvention};
use automorph_core::Error;
use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

/// Relative `--out` paths are resolved against this directory when set.
const OUT_DIR_VAR: &str = "AUTOMORPH_OUT_DIR";

#[derive(Parser)]
#[command(name = "automorph", version, about = "Verify solution automorphisms of Ramanujan-type systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Dump an exact expansion.
    Series {
        /// E2, E4, E6, theta2, theta3, theta4, kappa2 or 2F1:a,b,c
        #[arg(long)]
        object: String,
        /// Truncation order (exclusive); may be fractional, e.g. 9/4.
        #[arg(long, default_value = "10")]
        order: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification suite and print its JSON report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        tol: Option<f64>,
        /// `theorem` (full square root) or `proof` (half square root).
        #[arg(long)]
        z_convention: Option<String>,
        /// JSON file with run-configuration overrides.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate a system along a straight segment.
    Integrate {
        /// ramanujan, genchazy:k, dh, dh32 or schwarz:a,b,c
        #[arg(long)]
        system: String,
        /// Three complex numbers separated by semicolons, e.g. "0.5;0.25;0.125".
        #[arg(long, allow_hyphen_values = true)]
        init: String,
        /// Start and end of the segment separated by a semicolon, e.g. "0;0.2+0.1i".
        #[arg(long, default_value = "0;0.2", allow_hyphen_values = true)]
        path: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Preimages of a `k = 3` triple under the `k = 3/2` map, one per cubic root.
    Invert32 {
        #[arg(long, allow_hyphen_values = true)]
        p0: String,
        #[arg(long, allow_hyphen_values = true)]
        q0: String,
        #[arg(long, allow_hyphen_values = true)]
        r0: String,
        #[arg(long)]
        root: Option<usize>,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
}

/// What went wrong, mapped onto the exit-code contract.
enum Failure {
    Usage(String),
    Numerical(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unknown { .. } | Error::Parse(_) | Error::Dimension { .. } | Error::RootIndex(_) => {
                Failure::Usage(e.to_string())
            }
            Error::StepUnderflow { .. } | Error::NonFinite { .. } | Error::DegenerateSchwarz { .. } => {
                Failure::Numerical(e.to_string())
            }
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Series {
            object,
            order,
            format,
            out,
        } => cmd_series(&object, &order, format, out),
        Command::Verify {
            suite,
            order,
            samples,
            seed,
            tol,
            z_convention,
            config,
            out,
        } => build_config(order, samples, seed, tol, z_convention, config).and_then(|cfg| cmd_verify(&suite, &cfg, out)),
        Command::Integrate {
            system,
            init,
            path,
            tol,
            samples,
            out,
        } => cmd_integrate(&system, &init, &path, tol, samples, out),
        Command::Invert32 { p0, q0, r0, root, tol } => cmd_invert32(&p0, &q0, &r0, root, tol),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Numerical(m)) => {
            eprintln!("numerical abort: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn out_path(p: PathBuf) -> PathBuf {
    match std::env::var_os(OUT_DIR_VAR) {
        Some(dir) if p.is_relative() => PathBuf::from(dir).join(p),
        _ => p,
    }
}

fn emit(text: &str, out: Option<PathBuf>) -> Result<(), Failure> {
    match out {
        Some(p) => {
            let p = out_path(p);
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|e| Failure::Other(format!("{}: {e}", dir.display())))?;
            }
            fs::write(&p, text).map_err(|e| Failure::Other(format!("{}: {e}", p.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Other(format!("stdout: {e}"))),
                _ => Ok(()),
            }
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json values always serialise")
}

fn series_object(object: &str, order: Exponent) -> Result<PuiseuxSeries, Failure> {
    let unknown = || Failure::Usage(format!("unknown object: {object}"));
    if let Some(args) = object.strip_prefix("2F1:") {
        let parts: Vec<&str> = args.split(',').collect();
        let [a, b, c] = parts.as_slice() else {
            return Err(Failure::Usage(format!("2F1 needs three parameters a,b,c: {object}")));
        };
        let (a, b, c) = (parse_rational(a)?, parse_rational(b)?, parse_rational(c)?);
        let len = order.quarters().max(0).div_euclid(4) as usize + 1;
        return Ok(coeffs_2f1(&a, &b, &c, len)?.series(order));
    }
    Ok(match object {
        "E2" => eisenstein(order).p,
        "E4" => eisenstein(order).q,
        "E6" => eisenstein(order).r,
        "theta2" => theta(order).a,
        "theta3" => theta(order).b,
        "theta4" => theta(order).c,
        "kappa2" => modulus_data(order).kappa_sq,
        _ => return Err(unknown()),
    })
}

fn cmd_series(object: &str, order: &str, format: Format, out: Option<PathBuf>) -> Result<bool, Failure> {
    let order = Exponent::parse(order)?;
    let s = series_object(object, order)?;
    let text = match format {
        Format::Json => pretty(&json!({ "object": object, "series": s.to_json() })),
        Format::Csv => s.to_csv().trim_end().to_string(),
    };
    emit(&text, out)?;
    Ok(true)
}

fn build_config(
    order: Option<String>,
    samples: Option<usize>,
    seed: Option<u64>,
    tol: Option<f64>,
    z_convention: Option<String>,
    config: Option<PathBuf>,
) -> Result<RunConfig, Failure> {
    let mut cfg = match config {
        Some(p) => {
            let text = fs::read_to_string(&p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            RunConfig::from_json(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(o) = order {
        cfg.order = Some(Exponent::parse(&o)?);
    }
    if samples.is_some() {
        cfg.samples = samples;
    }
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(t) = tol {
        cfg.tol = t;
    }
    if let Some(z) = z_convention {
        cfg.z_convention = Some(ZConvention::parse(&z)?);
    }
    Ok(cfg)
}

fn cmd_verify(suite: &str, cfg: &RunConfig, out: Option<PathBuf>) -> Result<bool, Failure> {
    let rep = run_suite(suite, cfg)?;
    let text = pretty(&rep.to_json());
    if out.is_some() {
        emit(&text, out)?;
        print!("{rep}");
    } else {
        emit(&text, None)?;
        eprint!("{rep}");
    }
    Ok(rep.passed())
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    s.trim()
        .replace(' ', "")
        .parse::<Complex64>()
        .map_err(|_| Failure::Usage(format!("not a complex number: {s:?}")))
}

fn parse_list(s: &str) -> Result<Vec<Complex64>, Failure> {
    s.split(';').map(parse_complex).collect()
}

fn cmd_integrate(
    system: &str,
    init: &str,
    path: &str,
    tol: f64,
    samples: usize,
    out: Option<PathBuf>,
) -> Result<bool, Failure> {
    let sys: SystemSpec = system.parse()?;
    let y = parse_list(init)?;
    let y0: State = y.as_slice().try_into().map_err(|_| {
        Failure::from(Error::Dimension {
            expected: sys.dimension(),
            got: y.len(),
        })
    })?;
    let ends = parse_list(path)?;
    let [start, end] = ends.as_slice() else {
        return Err(Failure::Usage(format!("path needs two points: {path:?}")));
    };
    match integrate(&sys, y0, Path::new(*start, *end), tol, samples) {
        Ok(tr) => {
            let mut v = tr.to_json();
            v["status"] = json!("complete");
            emit(&pretty(&v), out)?;
            Ok(true)
        }
        Err(Error::StepUnderflow { last_x, partial }) => {
            let mut v = partial.to_json();
            v["status"] = json!("aborted");
            v["last_x"] = json!(last_x);
            v["error"] = json!(format!("step-size underflow near x = {last_x}"));
            emit(&pretty(&v), out)?;
            Err(Failure::Numerical(format!("step-size underflow near x = {last_x}")))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_invert32(p0: &str, q0: &str, r0: &str, root: Option<usize>, tol: f64) -> Result<bool, Failure> {
    let x0 = [parse_complex(p0)?, parse_complex(q0)?, parse_complex(r0)?];
    let roots = cubic_roots(x0[1], x0[2]);
    let jets = jet_extend::<5>(&SystemSpec::nde2(), &x0);
    let indices: Vec<usize> = match root {
        Some(k) if k > 2 => return Err(Error::RootIndex(k).into()),
        Some(k) => vec![k],
        None => (0..3).collect(),
    };
    let mut all_ok = true;
    let mut preimages = Vec::new();
    for k in indices {
        let entry = match inverse_map32(&jets[0], &jets[1], &jets[2], k) {
            Ok(t) => {
                let residual = residual_first_order(&SystemSpec::nde1(), &[t.p, t.q, t.r]);
                let ok = residual <= tol;
                all_ok &= ok;
                let value = [t.p.taylor()[0], t.q.taylor()[0], t.r.taylor()[0]];
                json!({ "root": k, "z": roots.roots[k], "preimage": value, "residual": residual, "certified": ok })
            }
            Err(e) => json!({ "root": k, "z": roots.roots[k], "error": e.to_string() }),
        };
        preimages.push(entry);
    }
    let v = json!({
        "input": x0,
        "cubic": roots,
        "cubic_relative_residual": roots.max_relative_residual(),
        "tolerance": tol,
        "preimages": preimages,
    });
    emit(&pretty(&v), None)?;
    Ok(all_ok)
}
