use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use turan_bessel::bessel::{bessel_j, bessel_j_prime, bessel_y, bessel_y_prime, jtilde, normalized_j, CLI_MAX_ARG};
use turan_bessel::grid::{Grid, Range};
use turan_bessel::neumann::{
    builtin_thetas, domain_interval, g_direct, g_integral, parse_theta_params, rho_estimate, NeumannInstance,
    QuadConfig,
};
use turan_bessel::report::{fmt_f64, from_json, plot_data, to_json, CsvReport};
use turan_bessel::turan::{
    check_inequality, check_inequality_lenient, conjecture_explore, identity_residual, natural_order_suite,
    IdentityId, InequalityId, InequalityReport,
};
use turan_bessel::yturan::{find_x_nu, y_bound_suite, XNuRecord};
use turan_bessel::zeros::{zero, ZeroKind};
use turan_bessel::{Error, Eval, Order, Precision};

const IDENTITY_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(name = "turan-bessel", version, about = "Bessel functions of real order and Turán-type inequality checks")]
struct Cli {
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// write to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// absolute error target
    #[arg(long, global = true, default_value_t = 1e-10)]
    precision: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
enum Func {
    #[value(name = "J")]
    J,
    #[value(name = "Y")]
    Y,
    #[value(name = "Jp")]
    Jp,
    #[value(name = "Yp")]
    Yp,
    #[value(name = "NJ")]
    Nj,
    #[value(name = "Jt")]
    Jt,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    J,
    Y,
    Jp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// natural-number orders of the coefficient inequalities
    Natural,
    /// second-kind inequalities on both domains
    Y,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a function on a grid of orders and arguments
    Eval {
        #[arg(long = "fn", value_enum)]
        func: Func,
        #[arg(long)]
        nu: Range,
        #[arg(long)]
        x: Range,
        /// derivative index for NJ and Jt
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// Tabulate the first zeros of J, Y or J′
    Zeros {
        #[arg(long, value_enum, default_value = "j")]
        kind: Kind,
        #[arg(long)]
        nu: f64,
        #[arg(long, default_value_t = 5)]
        n: u32,
    },
    /// Certify an inequality or check an identity over a grid
    Verify {
        #[arg(long, conflicts_with_all = ["identity", "suite"])]
        ineq: Option<InequalityId>,
        #[arg(long, conflicts_with = "suite")]
        identity: Option<IdentityId>,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        #[arg(long)]
        nu: Option<Range>,
        #[arg(long)]
        x: Option<Range>,
        /// skip orders outside the hypotheses instead of failing
        #[arg(long)]
        lenient: bool,
    },
    /// Locate the critical points of Φ_ν
    Conjecture {
        #[arg(long)]
        nu: f64,
        #[arg(long, default_value_t = 4)]
        n: u32,
    },
    /// Find the sign change x_ν of the second-kind Turán expression
    Xnu {
        #[arg(long)]
        nu: Range,
    },
    /// Compare direct summation and the integral representation
    Neumann {
        #[arg(long, required_unless_present = "list")]
        theta: Option<String>,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, required_unless_present = "list")]
        x: Option<Range>,
        #[arg(long, default_value_t = 60.0)]
        u_max: f64,
        #[arg(long, default_value_t = 16)]
        u_nodes: usize,
        #[arg(long, default_value_t = 16)]
        v_nodes: usize,
        #[arg(long, default_value_t = 1e-3)]
        du_step: f64,
        /// list the built-in weights
        #[arg(long)]
        list: bool,
    },
    /// Re-emit a saved inequality report
    Report {
        #[arg(long)]
        input: PathBuf,
        /// emit x, margin columns for plotting
        #[arg(long)]
        plot_data: bool,
    },
}

enum Status {
    Ok,
    Violations,
}

fn check_x(r: &Range) -> anyhow::Result<()> {
    if r.lo.abs().max(r.hi.abs()) > CLI_MAX_ARG {
        bail!(Error::Domain(format!("|x| is capped at {CLI_MAX_ARG}, got {}", r.lo.abs().max(r.hi.abs()))));
    }
    Ok(())
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct EvalRow {
    #[serde(rename = "fn")]
    func: Func,
    nu: f64,
    x: f64,
    k: u32,
    #[serde(flatten)]
    eval: Eval,
}

fn eval_one(func: Func, nu: Order, k: u32, x: f64, p: &Precision) -> turan_bessel::Result<Eval> {
    match func {
        Func::J => bessel_j(nu, x, p),
        Func::Y => bessel_y(nu, x, p),
        Func::Jp => bessel_j_prime(nu, x, p),
        Func::Yp => bessel_y_prime(nu, x, p),
        Func::Nj => normalized_j(nu, k, x, p),
        Func::Jt => jtilde(nu, k, x, p),
    }
}

fn run_eval(func: Func, nu: Range, x: Range, k: u32, p: &Precision, fmt: Format) -> anyhow::Result<String> {
    check_x(&x)?;
    let mut rows = Vec::new();
    for n in nu.nodes() {
        for xv in x.nodes() {
            let eval = eval_one(func, Order::new(n)?, k, xv, p)?;
            rows.push(EvalRow { func, nu: n, x: xv, k, eval });
        }
    }
    Ok(match fmt {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("fn,nu,x,k,value,abs_err,method\n");
            for r in &rows {
                let name = serde_json::to_value(r.func)?.as_str().unwrap_or_default().to_string();
                s += &format!(
                    "{name},{},{},{},{},{},{:?}\n",
                    fmt_f64(r.nu),
                    fmt_f64(r.x),
                    r.k,
                    fmt_f64(r.eval.value),
                    fmt_f64(r.eval.abs_err),
                    r.eval.method
                );
            }
            s
        }
    })
}

#[derive(Serialize)]
struct ZeroRow {
    n: u32,
    x: f64,
    residual: f64,
}

fn run_zeros(kind: Kind, nu: f64, n: u32, p: &Precision, fmt: Format) -> anyhow::Result<String> {
    let k = match kind {
        Kind::J => ZeroKind::JZero,
        Kind::Y => ZeroKind::YZero,
        Kind::Jp => ZeroKind::JPrimeZero,
    };
    let o = Order::new(nu)?;
    let rows: Vec<ZeroRow> = (1..=n)
        .map(|i| zero(k, o, i, p).map(|z| ZeroRow { n: i, x: z.x, residual: z.residual }))
        .collect::<turan_bessel::Result<_>>()?;
    Ok(match fmt {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("n,x,residual\n");
            for r in &rows {
                s += &format!("{},{},{}\n", r.n, fmt_f64(r.x), fmt_f64(r.residual));
            }
            s
        }
    })
}

fn summary(r: &InequalityReport) {
    eprintln!(
        "{}: {} nodes, {} skipped, {} violations, min margin {}, {}",
        r.ineq,
        r.points.len(),
        r.skipped(),
        r.violations.len(),
        r.min_margin.map_or("-".into(), fmt_f64),
        if r.certified { "certified" } else { "NOT certified" }
    );
}

fn suite_csv(reports: &[InequalityReport]) -> String {
    let mut s = String::from("ineq,nodes,skipped,violations,min_margin,certified\n");
    for r in reports {
        s += &format!(
            "{},{},{},{},{},{}\n",
            r.ineq,
            r.points.len(),
            r.skipped(),
            r.violations.len(),
            r.min_margin.map(fmt_f64).unwrap_or_default(),
            r.certified as u8
        );
    }
    s
}

#[derive(Serialize)]
struct IdentityRow {
    nu: f64,
    x: f64,
    residual: Option<f64>,
    error: Option<String>,
}

#[derive(Serialize)]
struct IdentityReport {
    identity: String,
    tolerance: f64,
    max_residual: Option<f64>,
    passed: bool,
    points: Vec<IdentityRow>,
}

fn run_identity(id: IdentityId, grid: &Grid, p: &Precision) -> IdentityReport {
    let mut points = Vec::new();
    let mut passed = true;
    let mut max: Option<f64> = None;
    for (nu, x) in grid.points() {
        let r = Order::new(nu).and_then(|o| identity_residual(id, o, x, p));
        let row = match r {
            Ok(v) => {
                passed &= v <= IDENTITY_TOL;
                max = Some(max.map_or(v, |m| m.max(v)));
                IdentityRow { nu, x, residual: Some(v), error: None }
            }
            Err(e) => {
                // outside the validity domain the node is skipped
                passed &= matches!(e, Error::Domain(_));
                IdentityRow { nu, x, residual: None, error: Some(e.to_string()) }
            }
        };
        points.push(row);
    }
    IdentityReport { identity: id.to_string(), tolerance: IDENTITY_TOL, max_residual: max, passed, points }
}

fn run_verify(
    ineq: Option<InequalityId>,
    identity: Option<IdentityId>,
    suite: Option<Suite>,
    grid: Option<Grid>,
    lenient: bool,
    p: &Precision,
    fmt: Format,
) -> anyhow::Result<(String, Status)> {
    let status = |ok: bool| if ok { Status::Ok } else { Status::Violations };
    if let Some(s) = suite {
        let reports = match s {
            Suite::Natural => natural_order_suite(p)?,
            Suite::Y => {
                let g = grid.unwrap_or(Grid::new(Range::new(1.5, 5.0, 8)?, Range::new(0.0, 20.0, 201)?));
                y_bound_suite(&g, p)?
            }
        };
        reports.iter().for_each(summary);
        let ok = reports.iter().all(|r| r.violations.is_empty());
        let text = match fmt {
            Format::Json => to_json(&reports)?,
            Format::Csv => suite_csv(&reports),
        };
        return Ok((text, status(ok)));
    }
    let Some(grid) = grid else { bail!(Error::Domain("--nu and --x are required".into())) };
    check_x(&grid.x)?;
    if let Some(id) = identity {
        let r = run_identity(id, &grid, p);
        eprintln!("{}: max residual {}", r.identity, r.max_residual.map_or("-".into(), fmt_f64));
        let text = match fmt {
            Format::Json => to_json(&r)?,
            Format::Csv => {
                let mut s = String::from("nu,x,residual,skipped_flag\n");
                for q in &r.points {
                    s += &format!(
                        "{},{},{},{}\n",
                        fmt_f64(q.nu),
                        fmt_f64(q.x),
                        q.residual.map(fmt_f64).unwrap_or_default(),
                        q.residual.is_none() as u8
                    );
                }
                s
            }
        };
        return Ok((text, status(r.passed)));
    }
    let Some(id) = ineq else { bail!(Error::Domain("one of --ineq, --identity or --suite is required".into())) };
    let r = if lenient { check_inequality_lenient(id, &grid, p)? } else { check_inequality(id, &grid, p)? };
    summary(&r);
    let text = match fmt {
        Format::Json => to_json(&r)?,
        Format::Csv => r.to_csv(),
    };
    Ok((text, status(r.violations.is_empty())))
}

fn run_xnu(nu: Range, p: &Precision, fmt: Format) -> anyhow::Result<String> {
    let recs: Vec<XNuRecord> =
        nu.nodes().into_iter().map(|n| find_x_nu(Order::new(n)?, p)).collect::<turan_bessel::Result<_>>()?;
    Ok(match (fmt, recs.as_slice()) {
        (Format::Json, [one]) => to_json(one)?,
        (Format::Json, _) => to_json(&recs)?,
        (Format::Csv, _) => {
            let mut s = String::from("nu,x_nu,residual,bound_ok\n");
            for r in &recs {
                s += r.to_csv().lines().nth(1).unwrap_or_default();
                s.push('\n');
            }
            s
        }
    })
}

#[derive(Serialize)]
struct NeumannRow {
    theta: String,
    mu: f64,
    nu: f64,
    a: f64,
    b: f64,
    x: f64,
    rho: f64,
    rho_unreliable: bool,
    domain_hi: f64,
    admissible: bool,
    direct: Eval,
    integral: Eval,
    difference: f64,
    agree: bool,
}

#[allow(clippy::too_many_arguments)]
fn run_neumann(
    theta: &str,
    params: &str,
    x: Range,
    quad: QuadConfig,
    p: &Precision,
    fmt: Format,
) -> anyhow::Result<(String, Status)> {
    check_x(&x)?;
    let inst = turan_bessel::neumann::builtin(theta, &parse_theta_params(params)?)?;
    let NeumannInstance { theta: t, mu, nu, a, b } = &inst;
    let rho = rho_estimate(t, *a, *b, 200)?;
    let dom = domain_interval(*a, *b, rho.rho)?;
    let mut rows = Vec::new();
    for xv in x.nodes() {
        let (m, n) = (Order::new(*mu)?, Order::new(*nu)?);
        let direct = g_direct(m, n, *a, *b, t, xv, p)?;
        let integral = g_integral(m, n, *a, *b, t, xv, &quad, p)?;
        let difference = (direct.value - integral.value).abs();
        let agree = difference <= 1e-5f64.max(10.0 * (direct.abs_err + integral.abs_err));
        rows.push(NeumannRow {
            theta: inst.to_string(),
            mu: *mu,
            nu: *nu,
            a: *a,
            b: *b,
            x: xv,
            rho: rho.rho,
            rho_unreliable: rho.unreliable,
            domain_hi: dom.hi,
            admissible: t.admissible,
            direct,
            integral,
            difference,
            agree,
        });
    }
    let ok = rows.iter().all(|r| r.agree);
    let text = match fmt {
        Format::Json => to_json(&rows)?,
        Format::Csv => {
            let mut s = String::from("theta,x,direct,direct_err,integral,integral_err,difference,agree\n");
            for r in &rows {
                s += &format!(
                    "{},{},{},{},{},{},{},{}\n",
                    r.theta,
                    fmt_f64(r.x),
                    fmt_f64(r.direct.value),
                    fmt_f64(r.direct.abs_err),
                    fmt_f64(r.integral.value),
                    fmt_f64(r.integral.abs_err),
                    fmt_f64(r.difference),
                    r.agree as u8
                );
            }
            s
        }
    };
    Ok((text, if ok { Status::Ok } else { Status::Violations }))
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(v) = std::env::var("TURAN_BESSEL_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).with_context(|| {
        format!("TURAN_BESSEL_THREADS must be a positive integer, got {v:?}")
    })?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    configure_threads()?;
    let p = Precision::with_target(cli.precision)?;
    let fmt = |default| cli.format.unwrap_or(default);
    let (text, status) = match cli.command {
        Command::Eval { func, nu, x, k } => (run_eval(func, nu, x, k, &p, fmt(Format::Csv))?, Status::Ok),
        Command::Zeros { kind, nu, n } => (run_zeros(kind, nu, n, &p, fmt(Format::Csv))?, Status::Ok),
        Command::Verify { ineq, identity, suite, nu, x, lenient } => {
            let grid = match (nu, x) {
                (Some(nu), Some(x)) => Some(Grid::new(nu, x)),
                (None, None) => None,
                _ => bail!(Error::Domain("--nu and --x go together".into())),
            };
            run_verify(ineq, identity, suite, grid, lenient, &p, fmt(Format::Csv))?
        }
        Command::Conjecture { nu, n } => {
            let r = conjecture_explore(Order::new(nu)?, n, &p)?;
            let text = match fmt(Format::Json) {
                Format::Json => to_json(&r)?,
                Format::Csv => r.to_csv(),
            };
            (text, Status::Ok)
        }
        Command::Xnu { nu } => (run_xnu(nu, &p, fmt(Format::Json))?, Status::Ok),
        Command::Neumann { list: true, .. } => (to_json(&builtin_thetas())?, Status::Ok),
        Command::Neumann { theta, params, x, u_max, u_nodes, v_nodes, du_step, .. } => {
            let quad = QuadConfig::new(u_max, u_nodes, v_nodes, du_step, cli.precision)?;
            let (Some(theta), Some(x)) = (theta, x) else { bail!(Error::Domain("--theta and --x are required".into())) };
            run_neumann(&theta, &params, x, quad, &p, fmt(Format::Json))?
        }
        Command::Report { input, plot_data: plot } => {
            let text = std::fs::read_to_string(&input).with_context(|| format!("reading {}", input.display()))?;
            let r: InequalityReport = from_json(&text)?;
            summary(&r);
            let out = if plot {
                plot_data(&r)
            } else {
                match fmt(Format::Csv) {
                    Format::Json => to_json(&r)?,
                    Format::Csv => r.to_csv(),
                }
            };
            let st = if r.violations.is_empty() { Status::Ok } else { Status::Violations };
            (out, st)
        }
    };
    emit(&cli.out, &text)?;
    Ok(status)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Violations) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
