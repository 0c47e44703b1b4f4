use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use algroot::bench::{generate, run_benchmark, write_csv, BenchSpec, Family};
use algroot::bounds::{direct_bounds, indirect_bounds, instance_bounds, multi_ext_bounds, InstanceParams};
use algroot::error::Error;
use algroot::extfield::AlgPoly;
use algroot::indirect::indirect_isolate;
use algroot::instance::Instance;
use algroot::solve::{refine_root, solve, Method, SolveOptions};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "algroot", version, about = "Real root isolation over a real algebraic extension")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Indirect,
    Sturm,
    Bitstream,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Random,
    Laguerre,
    Wilkinson,
    Mignotte,
}

impl FamilyArg {
    fn family(self) -> Family {
        match self {
            FamilyArg::Random => Family::Random,
            FamilyArg::Laguerre => Family::Laguerre,
            FamilyArg::Wilkinson => Family::Wilkinson,
            FamilyArg::Mignotte => Family::Mignotte,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Isolate the real roots of an instance.
    Solve {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        method: MethodArg,
        /// Include the indirect solver's intermediate polynomials.
        #[arg(long)]
        trace: bool,
        /// Refine every interval to width at most 2^-L.
        #[arg(long, value_name = "L")]
        refine: Option<u32>,
        /// Seconds per solver run.
        #[arg(long)]
        timeout: Option<f64>,
    },
    /// Time the solvers on a generated family and write a CSV table.
    Bench {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Extension degrees, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        m: Vec<usize>,
        /// Degrees in y, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        bits: u32,
        #[arg(long, default_value_t = 10)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Seconds per solver run.
        #[arg(long)]
        timeout: Option<f64>,
        #[arg(long, value_enum, value_delimiter = ',')]
        methods: Vec<MethodArg>,
        /// Leave timing columns empty so the table is reproducible.
        #[arg(long)]
        no_times: bool,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print separation and size bounds as JSON.
    Bounds {
        /// m,n,tau,sigma[,ell]
        #[arg(long, value_delimiter = ',', conflicts_with = "input", required_unless_present = "input")]
        params: Vec<u64>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Write an instance of one of the benchmark families.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        bits: u32,
        /// Defaults to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Lib(Error),
    Disagreement(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<(), Failure>;

fn methods(arg: MethodArg) -> Vec<Method> {
    match arg {
        MethodArg::Indirect => vec![Method::Indirect],
        MethodArg::Sturm => vec![Method::Sturm],
        MethodArg::Bitstream => vec![Method::Bitstream],
        MethodArg::All => Method::ALL.to_vec(),
    }
}

fn seconds(t: Option<f64>) -> Result<Option<Duration>, Error> {
    t.map(|s| Duration::try_from_secs_f64(s).map_err(|e| Error::InvalidParams(format!("timeout: {e}"))))
        .transpose()
}

fn load(path: &PathBuf) -> Result<AlgPoly, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Instance::from_json(&text)?.to_alg_poly()
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io(e.to_string())),
            _ => Ok(()),
        },
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn run_solve(input: PathBuf, method: MethodArg, trace: bool, refine: Option<u32>, timeout: Option<f64>) -> Outcome {
    let b = load(&input)?;
    let limit = seconds(timeout)?;
    let mut out = Vec::new();
    let mut counts = Vec::new();
    for m in methods(method) {
        let opts = match limit {
            Some(t) => SolveOptions::default().with_timeout(t),
            None => SolveOptions::default(),
        };
        let (mut res, tr) = if m == Method::Indirect && trace {
            let (r, t) = indirect_isolate(&b, &opts)?;
            (r, Some(t))
        } else {
            (solve(&b, m, &opts)?, None)
        };
        if let Some(l) = refine {
            for r in res.roots.iter_mut() {
                *r = refine_root(&b, r, l);
            }
        }
        counts.push((m.name(), res.roots.len()));
        let mut v = json!({ "method": m.name(), "result": to_value(&res) });
        if let Some(t) = tr {
            v["trace"] = to_value(&t);
        }
        out.push(v);
    }
    let doc = if out.len() == 1 { out.pop().unwrap() } else { Value::Array(out) };
    emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")), &None)?;
    if counts.iter().any(|c| c.1 != counts[0].1) {
        let detail: Vec<String> = counts.iter().map(|(m, c)| format!("{m}={c}")).collect();
        return Err(Failure::Disagreement(detail.join(" ")));
    }
    Ok(())
}

fn run_bounds(params: Vec<u64>, input: Option<PathBuf>) -> Outcome {
    let doc = match input {
        Some(p) => to_value(&instance_bounds(&load(&p)?)?),
        None => {
            let [m, n, tau, sigma, ref rest @ ..] = params[..] else {
                return Err(Error::InvalidParams("expected m,n,tau,sigma[,ell]".into()).into());
            };
            let ell = match rest {
                [] => 1,
                [e] => *e,
                _ => return Err(Error::InvalidParams("expected m,n,tau,sigma[,ell]".into()).into()),
            };
            let p = InstanceParams::new(m, n, tau, sigma)?.with_ell(ell)?;
            if ell == 1 {
                json!({
                    "params": to_value(&p),
                    "indirect": to_value(&indirect_bounds(&p)?),
                    "direct": to_value(&direct_bounds(&p)?),
                })
            } else {
                json!({ "params": to_value(&p), "multi_extension": to_value(&multi_ext_bounds(&p)?) })
            }
        }
    };
    emit(&format!("{}\n", serde_json::to_string_pretty(&doc).expect("json")), &None)?;
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    match cli.cmd {
        Cmd::Solve { input, method, trace, refine, timeout } => run_solve(input, method, trace, refine, timeout),
        Cmd::Bench { family, m, n, bits, reps, seed, timeout, methods: ms, no_times, out } => {
            let mut chosen: Vec<Method> = ms.into_iter().flat_map(methods).collect();
            chosen.dedup();
            let spec = BenchSpec {
                family: family.family(),
                ms: m,
                ns: n,
                coeff_bits: bits,
                seed,
                repetitions: reps,
                methods: if chosen.is_empty() { Method::ALL.to_vec() } else { chosen },
                timeout: seconds(timeout)?,
                record_times: !no_times,
            };
            let rows = run_benchmark(&spec)?;
            let mut buf = Vec::new();
            write_csv(&rows, &mut buf)?;
            emit(&String::from_utf8(buf).expect("utf8"), &out)?;
            let bad: Vec<String> =
                rows.iter().filter(|r| !r.agree).map(|r| format!("m={} n={} {}", r.m, r.n, r.method)).collect();
            if !bad.is_empty() {
                return Err(Failure::Disagreement(bad.join(", ")));
            }
            Ok(())
        }
        Cmd::Bounds { params, input } => run_bounds(params, input),
        Cmd::Gen { family, m, n, seed, bits, out } => {
            let b = generate(family.family(), m, n, bits, seed)?;
            emit(&format!("{}\n", Instance::of_alg_poly(&b).to_json()), &out)?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Disagreement(d)) => {
            eprintln!("error: root counts disagree: {d}");
            ExitCode::from(1)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Timeout => 3,
                _ => 2,
            })
        }
    }
}
