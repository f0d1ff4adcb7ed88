mod commands;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{Map, Value};

use commands::*;
use output::{num, Document, Format};
use soliton_shoot::ode_core::IntegratorConfig;
use soliton_shoot::singular_shooting::ShootConfig;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_NUMERICAL: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Shooting solver for cohomogeneity-one gradient Ricci solitons on S⁴ and
/// curvature checks for pancake initial metrics.
#[derive(Debug, Parser)]
#[command(name = "solshoot", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol_rel: f64,
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol_abs: f64,
    /// Series handoff distance from the singular orbits.
    #[arg(long, global = true, default_value_t = 1e-4)]
    t_eps: f64,
    /// Output file. Sweeps default to `<command>.<format>` in the working directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    /// Allow parameters outside the soliton region.
    #[arg(long, global = true)]
    exploratory: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shoot from the S¹ orbit to ξ = 0.
    ShootS1(ShootS1Args),
    /// Shoot from the S² orbit to ξ = 0.
    ShootS2(ShootS2Args),
    /// Difference of the two meet points.
    Mismatch(MismatchArgs),
    /// Newton iteration on the mismatch.
    Root(RootArgs),
    /// Meet points along the S¹-side curve.
    Curve(CurveArgs),
    /// Meet points over the S²-side surface.
    Surface(SurfaceArgs),
    /// Grid scan for approximate zeros of the mismatch.
    Scan(ScanArgs),
    /// Signs of the curvature eigenvalues along solutions.
    VerifyMaxprinciple(MaxPrincipleArgs),
    /// The δ₃ integral against its closed form.
    VerifyDelta3(Delta3Args),
    /// Bounds on the Bryant unstable curve.
    VerifyBryant(BryantArgs),
    /// Small-time bounds near the S¹ orbit.
    VerifySmalltime(SmallTimeArgs),
    /// Scaled variables at ξ = 0 for large δ₁.
    TracePancakeLimit(TraceArgs),
    /// Rescaled large-δ₁ shot against the δ₁ = 1 trajectory.
    CompareBryant(CompareArgs),
    /// Warping functions of the pancake metric.
    PancakeBuild(PancakeArgs),
    /// Curvature eigenvalues of the pancake metric.
    PancakeCurvature(PancakeArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::ShootS1(_) => "shoot-s1",
            Command::ShootS2(_) => "shoot-s2",
            Command::Mismatch(_) => "mismatch",
            Command::Root(_) => "root",
            Command::Curve(_) => "curve",
            Command::Surface(_) => "surface",
            Command::Scan(_) => "scan",
            Command::VerifyMaxprinciple(_) => "verify-maxprinciple",
            Command::VerifyDelta3(_) => "verify-delta3",
            Command::VerifyBryant(_) => "verify-bryant",
            Command::VerifySmalltime(_) => "verify-smalltime",
            Command::TracePancakeLimit(_) => "trace-pancake-limit",
            Command::CompareBryant(_) => "compare-bryant",
            Command::PancakeBuild(_) => "pancake-build",
            Command::PancakeCurvature(_) => "pancake-curvature",
        }
    }

    fn is_sweep(&self) -> bool {
        matches!(
            self,
            Command::Curve(_) | Command::Surface(_) | Command::Scan(_) | Command::PancakeBuild(_) | Command::PancakeCurvature(_)
        )
    }

    fn parameters(&self) -> Value {
        fn ser<T: Serialize>(a: &T) -> Value {
            serde_json::to_value(a).unwrap_or(Value::Null)
        }
        match self {
            Command::ShootS1(a) => ser(a),
            Command::ShootS2(a) => ser(a),
            Command::Mismatch(a) => ser(a),
            Command::Root(a) => ser(a),
            Command::Curve(a) => ser(a),
            Command::Surface(a) => ser(a),
            Command::Scan(a) => ser(a),
            Command::VerifyMaxprinciple(a) => ser(a),
            Command::VerifyDelta3(a) => ser(a),
            Command::VerifyBryant(a) => ser(a),
            Command::VerifySmalltime(a) => ser(a),
            Command::TracePancakeLimit(a) => ser(a),
            Command::CompareBryant(a) => ser(a),
            Command::PancakeBuild(a) | Command::PancakeCurvature(a) => ser(a),
        }
    }

    fn run(&self, cfg: &ShootConfig) -> Outcome {
        match self {
            Command::ShootS1(a) => shoot_s1(a, cfg),
            Command::ShootS2(a) => shoot_s2(a, cfg),
            Command::Mismatch(a) => mismatch(a, cfg),
            Command::Root(a) => root(a, cfg),
            Command::Curve(a) => curve(a, cfg),
            Command::Surface(a) => surface(a, cfg),
            Command::Scan(a) => scan(a, cfg),
            Command::VerifyMaxprinciple(a) => verify_maxprinciple(a, cfg),
            Command::VerifyDelta3(a) => verify_delta3(a, cfg),
            Command::VerifyBryant(a) => verify_bryant(a, cfg),
            Command::VerifySmalltime(a) => verify_smalltime(a, cfg),
            Command::TracePancakeLimit(a) => trace_pancake_limit(a, cfg),
            Command::CompareBryant(a) => compare_bryant(a, cfg),
            Command::PancakeBuild(a) => pancake_build(a, cfg),
            Command::PancakeCurvature(a) => pancake_curvature(a, cfg),
        }
    }
}

fn meta(cli: &Cli) -> Map<String, Value> {
    let g = &cli.global;
    let mut config = Map::new();
    config.insert("tol_rel".into(), num(g.tol_rel));
    config.insert("tol_abs".into(), num(g.tol_abs));
    config.insert("t_eps".into(), num(g.t_eps));
    config.insert("exploratory".into(), g.exploratory.into());
    config.insert("workers".into(), g.workers.into());
    let mut m = Map::new();
    m.insert("tool".into(), "solshoot".into());
    m.insert("version".into(), env!("CARGO_PKG_VERSION").into());
    m.insert("command".into(), cli.command.name().into());
    m.insert("random_free".into(), true.into());
    m.insert("parameters".into(), cli.command.parameters());
    m.insert("config".into(), Value::Object(config));
    m
}

fn shoot_config(g: &Global) -> ShootConfig {
    ShootConfig {
        integrator: IntegratorConfig { rtol: g.tol_rel, atol: g.tol_abs, ..Default::default() },
        t_eps: g.t_eps,
        exploratory: g.exploratory,
        ..Default::default()
    }
}

fn emit(doc: &Document, format: Format, out: Option<&Path>) -> Result<(), ExitCode> {
    doc.write(format, out).map_err(|e| {
        eprintln!("solshoot: cannot write output: {e}");
        ExitCode::from(EXIT_NUMERICAL)
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let g = &cli.global;
    if g.workers > 0 {
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(g.workers).build_global();
    }
    let default_out = cli.command.is_sweep().then(|| PathBuf::from(format!("{}.{}", cli.command.name(), g.format.extension())));
    let out = g.out.clone().or(default_out);

    let mut doc = match cli.command.run(&shoot_config(g)) {
        Ok(doc) => doc,
        Err(Failure::Usage(msg)) => {
            eprintln!("solshoot: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
        Err(Failure::Numerical { kind, message }) => {
            eprintln!("solshoot: {message}");
            let mut doc = Document { meta: meta(&cli), ..Default::default() };
            doc.records.push(output::record([("error", kind.into()), ("message", message.into())]));
            return emit(&doc, g.format, out.as_deref()).err().unwrap_or(ExitCode::from(EXIT_NUMERICAL));
        }
    };
    doc.meta = meta(&cli);
    if let Err(code) = emit(&doc, g.format, out.as_deref()) {
        return code;
    }
    if doc.all_checks_pass() {
        ExitCode::SUCCESS
    } else {
        for c in doc.checks.iter().filter(|c| !c.pass) {
            eprintln!("solshoot: check failed: {} = {:e} (want {} {:e})", c.name, c.value, c.relation, c.threshold);
        }
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}
