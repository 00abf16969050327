//! `qrm` — evaluate quantum Rabi model kernels, propagators, partition
//! and zeta functions, spectral determinants, Rabi–Bernoulli polynomials
//! and G-functions over parameter grids, and run the verification suite.

mod config;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use config::RunConfig;
use num_complex::Complex64;
use output::{Row, Table};
use qrm::heat_propagator::{EvolveKind, ParityKernelEvaluator, RabiKernelEvaluator, SampledState, UniformGrid};
use qrm::numerics::SeriesValue;
use qrm::params::{ModelParams, Parity, TimePoint};
use qrm::partition_zeta::rb::RBTag;
use qrm::partition_zeta::zeta::SpectrumKind;
use qrm::QrmError;
use serde_json::json;

#[derive(Parser)]
#[command(name = "qrm", version, about = "Quantum Rabi model closed-form evaluator")]
struct Cli {
    /// TOML run configuration; flags override file values
    #[arg(long, global = true)]
    config: Option<String>,
    /// coupling strength g
    #[arg(long, global = true)]
    g: Option<f64>,
    /// half level splitting Δ
    #[arg(long, global = true)]
    delta: Option<f64>,
    /// series/quadrature tolerance
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// truncated-Fock oracle dimension
    #[arg(long, global = true)]
    oracle_m: Option<usize>,
    /// output format
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// output path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Plus,
    Minus,
    Full,
}

impl ParityArg {
    fn parity(self) -> Option<Parity> {
        match self {
            ParityArg::Plus => Some(Parity::Plus),
            ParityArg::Minus => Some(Parity::Minus),
            ParityArg::Full => None,
        }
    }

    fn spectrum_kind(self) -> SpectrumKind {
        match self {
            ParityArg::Plus => SpectrumKind::Parity(Parity::Plus),
            ParityArg::Minus => SpectrumKind::Parity(Parity::Minus),
            ParityArg::Full => SpectrumKind::Full,
        }
    }
}

/// "lo:hi:count" inclusive grid, or a single value.
#[derive(Clone, Debug)]
struct GridSpec {
    lo: f64,
    hi: f64,
    count: usize,
}

impl GridSpec {
    fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => {
                let v: f64 = v.parse().map_err(|e| format!("bad grid value '{s}': {e}"))?;
                Ok(Self { lo: v, hi: v, count: 1 })
            }
            [lo, hi, n] => {
                let lo: f64 = lo.parse().map_err(|e| format!("bad grid '{s}': {e}"))?;
                let hi: f64 = hi.parse().map_err(|e| format!("bad grid '{s}': {e}"))?;
                let count: usize = n.parse().map_err(|e| format!("bad grid '{s}': {e}"))?;
                if count == 0 || (count == 1 && lo != hi) || hi < lo {
                    return Err(format!("bad grid '{s}'"));
                }
                Ok(Self { lo, hi, count })
            }
            _ => Err(format!("grid spec '{s}' is not 'value' or 'lo:hi:count'")),
        }
    }

    fn values(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.lo];
        }
        let h = (self.hi - self.lo) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.lo + i as f64 * h).collect()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Heat kernel K(x,y,t) of e^{-tH} (full 2×2 or one parity)
    Kernel(PointArgs),
    /// Propagator U(x,y,t) of e^{-itH} (full 2×2 or one parity)
    Propagator(PointArgs),
    /// Evolve a Gaussian wavepacket by quadrature against the propagator
    Evolve(EvolveArgs),
    /// Partition function Z(β) or Z_±(β)
    Partition(BetaArgs),
    /// Spectral zeta ζ(s;τ) by Mellin transform or Hankel contour
    Zeta(ZetaArgs),
    /// Zeta-regularized spectral determinant at the zeta parameter τ
    Det(DetArgs),
    /// Exact Rabi–Bernoulli polynomial (RB)_k
    Rb(RbArgs),
    /// Braak G-functions: regular, complete, constraint, exceptional, residue
    Gfunc(GfuncArgs),
    /// Eigenvalues from the zeros of the completed G-function
    Eigs(EigsArgs),
    /// Run the verification suite (acceptance criteria) and print PASS/FAIL
    Verify(VerifyArgs),
}

#[derive(Args)]
struct PointArgs {
    /// time t (kernel: real heat time; propagator: real time ∉ πZ), or grid lo:hi:n
    #[arg(long, default_value = "1.0", allow_hyphen_values = true)]
    t: String,
    /// left position, or grid lo:hi:n
    #[arg(long, default_value = "0.0", allow_hyphen_values = true)]
    x: String,
    /// right position, or grid lo:hi:n
    #[arg(long, default_value = "0.0", allow_hyphen_values = true)]
    y: String,
    #[arg(long, value_enum, default_value = "full")]
    parity: ParityArg,
}

#[derive(Args)]
struct EvolveArgs {
    #[arg(long, default_value_t = 0.5)]
    t: f64,
    /// wavepacket center
    #[arg(long, default_value_t = 0.5)]
    x0: f64,
    /// wavepacket momentum
    #[arg(long, default_value_t = 0.0)]
    p0: f64,
    /// grid half-width L
    #[arg(long, default_value_t = 10.0)]
    grid_l: f64,
    /// grid points n
    #[arg(long, default_value_t = 401)]
    grid_n: usize,
    #[arg(long, value_enum, default_value = "plus")]
    parity: ParityArg,
}

#[derive(Args)]
struct BetaArgs {
    /// inverse temperature β > 0, or grid lo:hi:n
    #[arg(long, default_value = "1.0", allow_hyphen_values = true)]
    beta: String,
    #[arg(long, value_enum, default_value = "full")]
    parity: ParityArg,
}

#[derive(Args)]
struct ZetaArgs {
    /// argument s (real), or grid lo:hi:n
    #[arg(long, default_value = "2.0", allow_hyphen_values = true)]
    s: String,
    /// shift τ > Δ + g²
    #[arg(long, default_value_t = 2.5)]
    tau: f64,
    #[arg(long, value_enum, default_value = "full")]
    parity: ParityArg,
    /// evaluation route
    #[arg(long, value_enum, default_value = "contour")]
    method: ZetaMethod,
}

#[derive(Clone, Copy, ValueEnum)]
enum ZetaMethod {
    Mellin,
    Contour,
}

#[derive(Args)]
struct DetArgs {
    /// zeta parameter τ (det vanishes at τ = -λ_j), or grid lo:hi:n
    #[arg(long, default_value = "1.0", allow_hyphen_values = true)]
    tau: String,
    #[arg(long, value_enum, default_value = "plus")]
    parity: ParityArg,
}

#[derive(Args)]
struct RbArgs {
    /// polynomial index k ≤ 10
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, value_enum, default_value = "full")]
    parity: ParityArg,
}

#[derive(Args)]
struct GfuncArgs {
    /// spectral parameter x = λ + g², or grid lo:hi:n
    #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
    x: String,
    #[arg(long, value_enum, default_value = "plus")]
    parity: ParityArg,
    /// which G-object to evaluate
    #[arg(long, value_enum, default_value = "complete")]
    mode: GfuncMode,
    /// level N for constraint/exceptional/residue modes
    #[arg(long, default_value_t = 0)]
    n: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum GfuncMode {
    /// G_±(x), poles at nonnegative integers
    Regular,
    /// entire 𝒢_± = G_±/Γ(-x)
    Complete,
    /// Juddian constraint K_N(N)
    Constraint,
    /// exceptional G^{(N)}_±
    Exceptional,
    /// residue of G_± at x = N
    Residue,
}

#[derive(Args)]
struct EigsArgs {
    /// scan window in x = λ + g², as lo:hi
    #[arg(long, default_value = "-1.0:6.0", allow_hyphen_values = true)]
    window: String,
    #[arg(long, default_value_t = 0.02)]
    step: f64,
    #[arg(long, value_enum, default_value = "plus")]
    parity: ParityArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// "all" or a criterion id 1..=11
    #[arg(long, default_value = "all")]
    suite: String,
}

fn main() {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    match run(&cli) {
        Ok(Outcome::Table(table, cfg)) => {
            emit(&table, &cfg, started.elapsed().as_millis());
        }
        Ok(Outcome::Verify(reports)) => {
            let mut all_pass = true;
            for r in &reports {
                println!("{}", r.line());
                all_pass &= r.passed;
            }
            if !all_pass {
                eprintln!("error=verification kind=acceptance detail=\"one or more criteria failed\"");
                std::process::exit(4);
            }
        }
        Err(e) => {
            let (code, kind) = match &e {
                CliError::Usage(_) => (2, "invalid-argument"),
                CliError::Qrm(QrmError::InvalidArgument(_)) => (2, "invalid-argument"),
                CliError::Qrm(QrmError::Domain(_)) | CliError::Qrm(QrmError::IllConditioned(_)) => {
                    (3, "domain")
                }
                CliError::Qrm(QrmError::Convergence(_)) | CliError::Qrm(QrmError::Truncation(_)) => {
                    (4, "convergence")
                }
            };
            eprintln!("error={kind} detail=\"{e}\"");
            std::process::exit(code);
        }
    }
}

enum Outcome {
    Table(Table, RunConfig),
    Verify(Vec<qrm::verify::CriterionReport>),
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Qrm(QrmError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Qrm(e) => write!(f, "{e}"),
        }
    }
}

impl From<QrmError> for CliError {
    fn from(e: QrmError) -> Self {
        CliError::Qrm(e)
    }
}

fn usage<T>(msg: String) -> Result<T, CliError> {
    Err(CliError::Usage(msg))
}

fn merged_config(cli: &Cli) -> Result<RunConfig, CliError> {
    let mut cfg = RunConfig::load(cli.config.as_deref()).map_err(CliError::Usage)?;
    if let Some(g) = cli.g {
        cfg.model.g = g;
    }
    if let Some(d) = cli.delta {
        cfg.model.delta = d;
    }
    if let Some(tol) = cli.tol {
        cfg.numerics.tol = tol;
    }
    if let Some(m) = cli.oracle_m {
        cfg.numerics.oracle_m = m;
    }
    if let Some(fm) = cli.format {
        cfg.output.format = match fm {
            Format::Csv => "csv".into(),
            Format::Json => "json".into(),
        };
    }
    if let Some(out) = &cli.out {
        cfg.output.path = out.clone();
    }
    Ok(cfg)
}

fn params_json(p: &ModelParams) -> serde_json::Value {
    json!({"g": p.g, "delta": p.delta})
}

fn numerics_json(cfg: &RunConfig) -> serde_json::Value {
    serde_json::to_value(&cfg.numerics).unwrap_or(json!({}))
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = merged_config(cli)?;
    let p = cfg.params().map_err(CliError::Qrm)?;
    let tol = cfg.numerics.tol;
    let scheme = cfg.scheme().map_err(CliError::Usage)?;
    let table = match &cli.command {
        Command::Verify(args) => {
            let reports = if args.suite == "all" {
                qrm::verify::run_all().map_err(CliError::Qrm)?
            } else {
                let id: usize = args
                    .suite
                    .parse()
                    .map_err(|_| CliError::Usage(format!("bad suite '{}'", args.suite)))?;
                vec![qrm::verify::run_one(id).map_err(CliError::Qrm)?]
            };
            return Ok(Outcome::Verify(reports));
        }
        Command::Kernel(args) => {
            kernel_table(args, &p, tol, &scheme, &cfg, false)?
        }
        Command::Propagator(args) => {
            kernel_table(args, &p, tol, &scheme, &cfg, true)?
        }
        Command::Evolve(args) => {
            let grid = UniformGrid::new(args.grid_l, args.grid_n).map_err(CliError::Qrm)?;
            let (kind, initial) = match args.parity.parity() {
                Some(parity) => (
                    EvolveKind::Parity(parity),
                    SampledState::gaussian(grid, args.x0, args.p0),
                ),
                None => (
                    EvolveKind::Full,
                    SampledState::gaussian_spin_up(grid, args.x0, args.p0),
                ),
            };
            let out = qrm::heat_propagator::evolve_state(
                &initial, args.t, &p, tol, &scheme, kind, None,
            )?;
            let norm_drift = (out.norm() - initial.norm()).abs();
            let xs = grid.xs();
            let rows = xs
                .iter()
                .enumerate()
                .map(|(i, &x)| {
                    let mut outputs = Vec::new();
                    for (ci, comp) in out.components.iter().enumerate() {
                        outputs.push((format!("psi{ci}_re"), json!(comp[i].re)));
                        outputs.push((format!("psi{ci}_im"), json!(comp[i].im)));
                    }
                    Row {
                        inputs: vec![("x", x)],
                        outputs,
                        errors: vec![("norm_drift".into(), norm_drift)],
                    }
                })
                .collect();
            Table {
                command: "evolve".into(),
                params: params_json(&p),
                numerics: numerics_json(&cfg),
                rows,
            }
        }
        Command::Partition(args) => {
            let betas = GridSpec::parse(&args.beta).map_err(CliError::Usage)?.values();
            let ev = qrm::partition_zeta::OmegaEvaluator::new(&p, &scheme)?;
            let mut rows = Vec::new();
            for beta in betas {
                if beta <= 0.0 {
                    return usage(format!("β must be positive, got {beta}"));
                }
                let w = TimePoint::omega(Complex64::new(beta, 0.0))?;
                let om: SeriesValue = ev.omega_value(&w, tol)?;
                let z = match args.parity.parity() {
                    None => ev.z_full(&w, tol)?.re,
                    Some(parity) => ev.z_parity(&w, parity, tol)?.re,
                };
                rows.push(Row {
                    inputs: vec![("beta", beta)],
                    outputs: vec![("z".into(), json!(z))],
                    errors: vec![(
                        "z".into(),
                        om.tail_estimate / (1.0 - (-beta).exp()).abs(),
                    )],
                });
            }
            Table {
                command: "partition".into(),
                params: params_json(&p),
                numerics: numerics_json(&cfg),
                rows,
            }
        }
        Command::Zeta(args) => {
            let kind = args.parity.spectrum_kind();
            let ev = qrm::partition_zeta::ZetaEvaluator::new(
                kind,
                args.tau,
                &p,
                &cfg.contour(),
                tol,
                &scheme,
            )?;
            let mut rows = Vec::new();
            for s in GridSpec::parse(&args.s).map_err(CliError::Usage)?.values() {
                let sc = Complex64::new(s, 0.0);
                let v = match args.method {
                    ZetaMethod::Mellin => ev.mellin(sc)?,
                    ZetaMethod::Contour => ev.contour(sc)?,
                };
                let (re, im) = output::complex_cell(v);
                rows.push(Row {
                    inputs: vec![("s", s), ("tau", args.tau)],
                    outputs: vec![("zeta_re".into(), re), ("zeta_im".into(), im)],
                    errors: vec![("zeta".into(), tol * v.norm().max(1.0))],
                });
            }
            Table {
                command: "zeta".into(),
                params: params_json(&p),
                numerics: numerics_json(&cfg),
                rows,
            }
        }
        Command::Det(args) => {
            let kind = args.parity.spectrum_kind();
            let taus = GridSpec::parse(&args.tau).map_err(CliError::Usage)?.values();
            let tau_lo = taus.iter().cloned().fold(f64::INFINITY, f64::min);
            let mut rows = Vec::new();
            match kind {
                SpectrumKind::Full => {
                    let dp = qrm::partition_zeta::DeterminantEvaluator::new(
                        SpectrumKind::Parity(Parity::Plus),
                        tau_lo,
                        &p,
                        tol,
                    )?;
                    let dm = qrm::partition_zeta::DeterminantEvaluator::new(
                        SpectrumKind::Parity(Parity::Minus),
                        tau_lo,
                        &p,
                        tol,
                    )?;
                    for tau in taus {
                        let v = dp.eval(tau)? * dm.eval(tau)?;
                        rows.push(det_row(tau, v, tol));
                    }
                }
                _ => {
                    let ev = qrm::partition_zeta::DeterminantEvaluator::new(kind, tau_lo, &p, tol)?;
                    for tau in taus {
                        let v = ev.eval(tau)?;
                        rows.push(det_row(tau, v, tol));
                    }
                }
            }
            Table {
                command: "det".into(),
                params: params_json(&p),
                numerics: numerics_json(&cfg),
                rows,
            }
        }
        Command::Rb(args) => {
            let tag = match args.parity {
                ParityArg::Full => RBTag::Full,
                ParityArg::Plus => RBTag::Plus,
                ParityArg::Minus => RBTag::Minus,
            };
            let rb = qrm::partition_zeta::rb_polynomial(args.k, tag)?;
            // exact rationals serialized as "p/q" strings
            let terms: Vec<serde_json::Value> = rb
                .poly
                .terms()
                .map(|(e, c)| {
                    json!({
                        "tau_pow": e[0],
                        "g2_pow": e[1],
                        "d_pow": e[2],
                        "coeff": c.to_string(),
                    })
                })
                .collect();
            let rows = vec![Row {
                inputs: vec![("k", args.k as f64)],
                outputs: vec![
                    ("ring".into(), json!(match tag {
                        RBTag::Full => "Q[tau,g2,Delta2]",
                        _ => "Q[tau,g2,Delta]",
                    })),
                    ("polynomial".into(), json!(rb.poly.to_string())),
                    ("terms".into(), json!(terms)),
                ],
                errors: vec![("polynomial".into(), 0.0)],
            }];
            Table {
                command: "rb".into(),
                params: params_json(&p),
                numerics: numerics_json(&cfg),
                rows,
            }
        }
        Command::Gfunc(args) => {
            let parity = args
                .parity
                .parity()
                .ok_or_else(|| CliError::Usage("gfunc needs --parity plus|minus".into()))?;
            let mut rows = Vec::new();
            match args.mode {
                GfuncMode::Constraint => {
                    let v = qrm::gfunction::constraint_k(args.n, &p)?;
                    rows.push(Row {
                        inputs: vec![("n", args.n as f64)],
                        outputs: vec![("constraint_k".into(), json!(v))],
                        errors: vec![("constraint_k".into(), 0.0)],
                    });
                }
                GfuncMode::Exceptional => {
                    let v = qrm::gfunction::g_exceptional(args.n, parity, &p, tol)?;
                    rows.push(Row {
                        inputs: vec![("n", args.n as f64)],
                        outputs: vec![("g_exceptional".into(), json!(v))],
                        errors: vec![("g_exceptional".into(), tol * v.abs().max(1.0))],
                    });
                }
                GfuncMode::Residue => {
                    let v = qrm::gfunction::residue_at(args.n, parity, &p)?;
                    rows.push(Row {
                        inputs: vec![("n", args.n as f64)],
                        outputs: vec![("residue".into(), json!(v))],
                        errors: vec![("residue".into(), tol * v.abs().max(1.0))],
                    });
                }
                GfuncMode::Regular | GfuncMode::Complete => {
                    for x in GridSpec::parse(&args.x).map_err(CliError::Usage)?.values() {
                        let v = match args.mode {
                            GfuncMode::Regular => qrm::gfunction::g_function(x, parity, &p, tol)?,
                            _ => qrm::gfunction::complete_g(x, parity, &p, tol)?,
                        };
                        rows.push(Row {
                            inputs: vec![("x", x)],
                            outputs: vec![("value".into(), json!(v))],
                            errors: vec![("value".into(), tol * v.abs().max(1.0))],
                        });
                    }
                }
            }
            Table {
                command: "gfunc".into(),
                params: params_json(&p),
                numerics: numerics_json(&cfg),
                rows,
            }
        }
        Command::Eigs(args) => {
            let parts: Vec<&str> = args.window.split(':').collect();
            if parts.len() != 2 {
                return usage(format!("window '{}' is not lo:hi", args.window));
            }
            let lo: f64 = parts[0].parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            let hi: f64 = parts[1].parse().map_err(|e| CliError::Usage(format!("{e}")))?;
            let parity = args
                .parity
                .parity()
                .ok_or_else(|| CliError::Usage("eigs needs --parity plus|minus".into()))?;
            let recs = qrm::gfunction::find_eigenvalues(parity, (lo, hi), args.step, tol, &p)?;
            let rows = recs
                .iter()
                .map(|r| Row {
                    inputs: vec![("x", r.x)],
                    outputs: vec![
                        ("lambda".into(), json!(r.lambda)),
                        ("classification".into(), json!(r.classification.to_string())),
                    ],
                    errors: vec![("lambda".into(), r.residual)],
                })
                .collect();
            Table {
                command: "eigs".into(),
                params: params_json(&p),
                numerics: numerics_json(&cfg),
                rows,
            }
        }
    };
    Ok(Outcome::Table(table, cfg))
}

fn det_row(tau: f64, v: f64, tol: f64) -> Row {
    Row {
        inputs: vec![("tau", tau)],
        outputs: vec![("det".into(), json!(v))],
        errors: vec![("det".into(), tol * v.abs().max(1.0))],
    }
}

fn kernel_table(
    args: &PointArgs,
    p: &ModelParams,
    tol: f64,
    scheme: &qrm::numerics::QuadratureScheme,
    cfg: &RunConfig,
    rotated: bool,
) -> Result<Table, CliError> {
    let ts = GridSpec::parse(&args.t).map_err(CliError::Usage)?.values();
    let xs = GridSpec::parse(&args.x).map_err(CliError::Usage)?.values();
    let ys = GridSpec::parse(&args.y).map_err(CliError::Usage)?.values();
    let extent = xs
        .iter()
        .chain(&ys)
        .fold(0.0f64, |a, &b| a.max(b.abs()))
        + 1.0;
    let mut rows = Vec::new();
    for &t in &ts {
        let tp = if rotated {
            TimePoint::propagator(t)?
        } else {
            TimePoint::heat(Complex64::new(t, 0.0))?
        };
        match args.parity.parity() {
            None => {
                let ev = if rotated {
                    RabiKernelEvaluator::propagator(&tp, p, tol, scheme, extent)?
                } else {
                    RabiKernelEvaluator::heat(&tp, p, tol, scheme, extent)?
                };
                for &x in &xs {
                    for &y in &ys {
                        let k = ev.evaluate(x, y)?;
                        let names = ["k_uu", "k_ud", "k_du", "k_dd"];
                        let mut outputs = Vec::new();
                        let mut errors = Vec::new();
                        for i in 0..2 {
                            for j in 0..2 {
                                let v = k.entry(i, j);
                                outputs.push((format!("{}_re", names[2 * i + j]), json!(v.re)));
                                outputs.push((format!("{}_im", names[2 * i + j]), json!(v.im)));
                                errors.push((
                                    names[2 * i + j].to_string(),
                                    k.tail_estimate[i][j],
                                ));
                            }
                        }
                        rows.push(Row {
                            inputs: vec![("t", t), ("x", x), ("y", y)],
                            outputs,
                            errors,
                        });
                    }
                }
            }
            Some(parity) => {
                let ev = if rotated {
                    ParityKernelEvaluator::propagator(&tp, parity, p, tol, scheme, extent)?
                } else {
                    ParityKernelEvaluator::heat(&tp, parity, p, tol, scheme, extent)?
                };
                for &x in &xs {
                    for &y in &ys {
                        let v = ev.evaluate(x, y)?;
                        rows.push(Row {
                            inputs: vec![("t", t), ("x", x), ("y", y)],
                            outputs: vec![
                                ("k_re".into(), json!(v.re)),
                                ("k_im".into(), json!(v.im)),
                            ],
                            errors: vec![("k".into(), tol * v.norm().max(1.0))],
                        });
                    }
                }
            }
        }
    }
    Ok(Table {
        command: if rotated { "propagator".into() } else { "kernel".into() },
        params: params_json(p),
        numerics: numerics_json(cfg),
        rows,
    })
}

fn emit(table: &Table, cfg: &RunConfig, runtime_ms: u128) {
    let text = match cfg.output.format.as_str() {
        "csv" => table.to_csv(cfg.output.precision),
        _ => serde_json::to_string_pretty(&table.to_json(runtime_ms)).expect("json") + "\n",
    };
    if cfg.output.path.is_empty() {
        print!("{text}");
    } else if let Err(e) = std::fs::write(&cfg.output.path, &text) {
        eprintln!("error=io detail=\"cannot write {}: {e}\"", cfg.output.path);
        std::process::exit(2);
    }
}
