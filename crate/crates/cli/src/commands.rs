use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use soliton_shoot::bryant_reference::{self as bryant, BryantError};
use soliton_shoot::estimate_verifier::{self as ev, MonitorError, Segment};
use soliton_shoot::ode_core::IntegrationError;
use soliton_shoot::pancake_builder::{self as pancake, BlendParams, PancakeError};
use soliton_shoot::singular_shooting::{self as shooting, RootError, S1ShootParam, S2ShootParam, ShootConfig, ShootError, Shot, SweepError};

use crate::output::{num, record, Check, Document, Record};

/// Why a command did not produce a report.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical { kind: &'static str, message: String },
}

impl From<ShootError> for Failure {
    fn from(e: ShootError) -> Self {
        match e {
            ShootError::Inadmissible { .. } | ShootError::EpsilonTooLarge(_) => Failure::Usage(e.to_string()),
            ShootError::Integration(IntegrationError::Config(_)) => Failure::Usage(e.to_string()),
            ShootError::EventNotReached { .. } => Failure::Numerical { kind: "event_not_reached", message: e.to_string() },
            ShootError::NonPrincipal { .. } => Failure::Numerical { kind: "non_principal", message: e.to_string() },
            ShootError::Integration(_) => Failure::Numerical { kind: "integration", message: e.to_string() },
        }
    }
}

impl From<RootError> for Failure {
    fn from(e: RootError) -> Self {
        match e {
            RootError::ShootFailure { source, .. } => source.into(),
            RootError::SingularJacobian { .. } => Failure::Numerical { kind: "singular_jacobian", message: e.to_string() },
            RootError::MaxIterations { .. } => Failure::Numerical { kind: "no_convergence", message: e.to_string() },
        }
    }
}

impl From<SweepError> for Failure {
    fn from(e: SweepError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<IntegrationError> for Failure {
    fn from(e: IntegrationError) -> Self {
        match e {
            IntegrationError::Config(_) => Failure::Usage(e.to_string()),
            other => Failure::Numerical { kind: "integration", message: other.to_string() },
        }
    }
}

impl From<BryantError> for Failure {
    fn from(e: BryantError) -> Self {
        match e {
            BryantError::InvalidLaunch(_) => Failure::Usage(e.to_string()),
            BryantError::Integration(inner) => inner.into(),
            other => Failure::Numerical { kind: "bryant", message: other.to_string() },
        }
    }
}

impl From<MonitorError> for Failure {
    fn from(e: MonitorError) -> Self {
        match e {
            MonitorError::OutOfRange { .. } | MonitorError::WrongSide => Failure::Usage(e.to_string()),
            MonitorError::Shoot(inner) => inner.into(),
            MonitorError::Integration(inner) => inner.into(),
            MonitorError::Bryant(inner) => inner.into(),
            MonitorError::EventNotReached { .. } => {
                Failure::Numerical { kind: "event_not_reached", message: e.to_string() }
            }
            MonitorError::ExtrapolationUnstable { .. } => {
                Failure::Numerical { kind: "extrapolation_unstable", message: e.to_string() }
            }
        }
    }
}

impl From<PancakeError> for Failure {
    fn from(e: PancakeError) -> Self {
        Failure::Usage(e.to_string())
    }
}

pub type Outcome = Result<Document, Failure>;

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',').map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}"))).collect()
}

pub fn parse_triple(s: &str) -> Result<[f64; 3], String> {
    let v = parse_list(s)?;
    <[f64; 3]>::try_from(v.as_slice()).map_err(|_| format!("expected three comma-separated numbers, got {s:?}"))
}

pub fn parse_pair(s: &str) -> Result<(f64, f64), String> {
    match parse_list(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(format!("expected two comma-separated numbers, got {s:?}")),
    }
}

fn state_row(t: f64, s: &soliton_shoot::soliton_models::SolitonState, k: [f64; 4]) -> Record {
    record([
        ("t", num(t)),
        ("xi", num(s.xi)),
        ("l1", num(s.l1)),
        ("l2", num(s.l2)),
        ("r", num(s.r)),
        ("k_t1", num(k[0])),
        ("k_s", num(k[1])),
        ("k_m", num(k[2])),
        ("k_t2", num(k[3])),
    ])
}

fn shot_document(shot: &Shot, trajectory: bool) -> Document {
    let mut doc = Document::default();
    let m = shot.meet();
    for (k, v) in [("event_t", shot.event_time), ("handoff", shot.handoff), ("l1", m.l1), ("l2", m.l2), ("r", m.r)] {
        doc.summary.insert(k.into(), num(v));
    }
    if trajectory {
        for (t, s) in shot.samples_to_event() {
            doc.records.push(state_row(t, &s, shot.path.curvature_at(t).to_array()));
        }
    } else {
        doc.records.push(record([
            ("event_t", num(shot.event_time)),
            ("l1", num(m.l1)),
            ("l2", num(m.l2)),
            ("r", num(m.r)),
        ]));
    }
    doc
}

#[derive(Debug, Args, Serialize)]
pub struct ShootS1Args {
    #[arg(long, allow_negative_numbers = true)]
    pub delta1: f64,
    /// Emit every step point up to the event instead of the meet point only.
    #[arg(long)]
    pub trajectory: bool,
}

pub fn shoot_s1(a: &ShootS1Args, cfg: &ShootConfig) -> Outcome {
    let (_, shot) = shooting::shoot_curve_point(&S1ShootParam::new(a.delta1), cfg)?;
    Ok(shot_document(&shot, a.trajectory))
}

#[derive(Debug, Args, Serialize)]
pub struct ShootS2Args {
    #[arg(long, allow_negative_numbers = true)]
    pub delta2: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub delta3: f64,
    #[arg(long)]
    pub trajectory: bool,
}

pub fn shoot_s2(a: &ShootS2Args, cfg: &ShootConfig) -> Outcome {
    let (_, shot) = shooting::shoot_surface_point(&S2ShootParam::new(a.delta2, a.delta3), cfg)?;
    Ok(shot_document(&shot, a.trajectory))
}

#[derive(Debug, Args, Serialize)]
pub struct MismatchArgs {
    /// `δ₁,δ₂,δ₃`
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub delta: [f64; 3],
}

pub fn mismatch(a: &MismatchArgs, cfg: &ShootConfig) -> Outcome {
    let [d1, d2, d3] = a.delta;
    let f = shooting::mismatch(d1, d2, d3, cfg)?;
    let mut doc = Document::default();
    doc.records.push(record([
        ("dl1", num(f.dl1)),
        ("dl2", num(f.dl2)),
        ("dr", num(f.dr)),
        ("norm_inf", num(f.norm_inf())),
    ]));
    Ok(doc)
}

#[derive(Debug, Args, Serialize)]
pub struct RootArgs {
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true, default_value = "0.05,-0.8,0.6")]
    pub guess: [f64; 3],
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 25)]
    pub max_iter: usize,
}

pub fn root(a: &RootArgs, cfg: &ShootConfig) -> Outcome {
    let opts = shooting::NewtonOptions { tol: a.tol, max_iterations: a.max_iter, ..Default::default() };
    let rep = shooting::find_root(a.guess, cfg, &opts)?;
    let mut doc = Document::default();
    doc.summary.insert("history".into(), rep.history.iter().map(|&h| num(h)).collect());
    doc.records.push(record([
        ("delta1", num(rep.root[0])),
        ("delta2", num(rep.root[1])),
        ("delta3", num(rep.root[2])),
        ("residual", num(rep.residual)),
        ("iterations", rep.iterations.into()),
    ]));
    Ok(doc)
}

fn status_cells(status: &shooting::SampleStatus) -> (Value, Value) {
    match status {
        shooting::SampleStatus::Ok => ("ok".into(), "".into()),
        shooting::SampleStatus::Failed(why) => ("failed".into(), why.clone().into()),
    }
}

fn meet_cells(rec: &mut Record, meet: Option<shooting::MeetPoint>, kmin: Option<[f64; 4]>) {
    let m = meet.map(|m| m.to_array()).unwrap_or([f64::NAN; 3]);
    let k = kmin.unwrap_or([f64::NAN; 4]);
    for (name, v) in ["l1", "l2", "r"].iter().zip(m) {
        rec.insert(name.to_string(), num(v));
    }
    for (name, v) in ["min_k_t1", "min_k_s", "min_k_m", "min_k_t2"].iter().zip(k) {
        rec.insert(name.to_string(), num(v));
    }
}

#[derive(Debug, Args, Serialize)]
pub struct CurveArgs {
    #[arg(long, default_value_t = 1e-3)]
    pub d1_lo: f64,
    #[arg(long, default_value_t = 10.0)]
    pub d1_hi: f64,
    #[arg(long, default_value_t = 50)]
    pub n: usize,
}

pub fn curve(a: &CurveArgs, cfg: &ShootConfig) -> Outcome {
    let samples = shooting::sample_curve((a.d1_lo, a.d1_hi), a.n, cfg)?;
    let mut doc = Document::default();
    for s in samples {
        let (status, reason) = status_cells(&s.status);
        let mut rec = record([("delta1", num(s.delta1)), ("status", status)]);
        meet_cells(&mut rec, s.meet, s.curvature_min);
        rec.insert("reason".into(), reason);
        doc.records.push(rec);
    }
    Ok(doc)
}

#[derive(Debug, Args, Serialize)]
pub struct SurfaceArgs {
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "-1,0")]
    pub d2: (f64, f64),
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "0.1,2")]
    pub d3: (f64, f64),
    #[arg(long, default_value_t = 21)]
    pub n2: usize,
    #[arg(long, default_value_t = 20)]
    pub n3: usize,
}

pub fn surface(a: &SurfaceArgs, cfg: &ShootConfig) -> Outcome {
    let samples = shooting::sample_surface(a.d2, a.d3, a.n2, a.n3, cfg)?;
    let mut doc = Document::default();
    for s in samples {
        let (status, reason) = status_cells(&s.status);
        let mut rec = record([("delta2", num(s.delta2)), ("delta3", num(s.delta3)), ("status", status)]);
        meet_cells(&mut rec, s.meet, s.curvature_min);
        rec.insert("reason".into(), reason);
        doc.records.push(rec);
    }
    Ok(doc)
}

#[derive(Debug, Args, Serialize)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 20)]
    pub resolution: usize,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "0,10")]
    pub d1: (f64, f64),
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "-1,0")]
    pub d2: (f64, f64),
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true, default_value = "0,40")]
    pub d3: (f64, f64),
    /// Sub-grid points per cell and axis.
    #[arg(long, default_value_t = shooting::DEFAULT_SUBDIVISIONS)]
    pub subdivisions: usize,
}

pub fn scan(a: &ScanArgs, cfg: &ShootConfig) -> Outcome {
    let scan_box = shooting::ScanBox { d1: a.d1, d2: a.d2, d3: a.d3 };
    let rep = shooting::scan_domain_with(&scan_box, a.resolution, a.subdivisions, cfg)?;
    let mut doc = Document::default();
    let certified = rep.minima.iter().filter(|m| m.below_bound()).count();
    doc.summary.insert("evaluated".into(), rep.evaluated.into());
    doc.summary.insert("failed".into(), rep.failed.into());
    doc.summary.insert("minima".into(), rep.minima.len().into());
    doc.checks.push(Check::equal("minima below grid bound", certified as f64, 1.0));
    for m in &rep.minima {
        let root = m.root.unwrap_or([f64::NAN; 3]);
        doc.records.push(record([
            ("i", m.index[0].into()),
            ("j", m.index[1].into()),
            ("k", m.index[2].into()),
            ("delta1", num(m.best[0])),
            ("delta2", num(m.best[1])),
            ("delta3", num(m.best[2])),
            ("residual", num(m.residual)),
            ("bound", num(m.bound)),
            ("below_bound", m.below_bound().into()),
            ("root_delta1", num(root[0])),
            ("root_delta2", num(root[1])),
            ("root_delta3", num(root[2])),
        ]));
    }
    Ok(doc)
}

#[derive(Debug, Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    /// Round sphere, both sides.
    Round,
    /// Gaussian cylinder from the S² orbit up to ξ = 10.
    Gaussian,
    /// Both sides at `--delta`.
    Custom,
}

#[derive(Debug, Args, Serialize)]
pub struct MaxPrincipleArgs {
    #[arg(long, value_enum, default_value_t = Case::Round)]
    pub case: Case,
    #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
    pub delta: Option<[f64; 3]>,
    #[arg(long, default_value_t = 1e-8)]
    pub eps: f64,
}

pub fn verify_maxprinciple(a: &MaxPrincipleArgs, cfg: &ShootConfig) -> Outcome {
    let shots: Vec<Shot> = match a.case {
        Case::Gaussian => vec![shooting::shoot_s2_to_xi(&S2ShootParam::new(-1.0, 1.0), 10.0, cfg)?],
        Case::Round | Case::Custom => {
            let d = match (a.case, a.delta) {
                (Case::Custom, Some(d)) => d,
                (Case::Custom, None) => return Err(Failure::Usage("--case custom needs --delta".into())),
                _ => [1.0 / 18.0, -7.0 / 9.0, 1.0 / 3.0f64.sqrt()],
            };
            vec![
                shooting::shoot_curve_point(&S1ShootParam::new(d[0]), cfg)?.1,
                shooting::shoot_surface_point(&S2ShootParam::new(d[1], d[2]), cfg)?.1,
            ]
        }
    };
    let segs: Vec<Segment> = shots.iter().map(Segment::of_shot).collect();
    let mp = ev::max_principle_report(&segs);
    let signs = ev::sign_profile(&segs);
    let mut doc = Document::default();
    doc.checks.push(Check::at_least("min k_t1", mp.k_t1.value, -a.eps));
    doc.checks.push(Check::at_least("min k_s", mp.k_s.value, -a.eps));
    for e in &signs.eigenvalues {
        doc.records.push(record([
            ("eigenvalue", e.name.clone().into()),
            ("min", num(e.min.value)),
            ("min_at", num(e.min.at)),
            ("max", num(e.max.value)),
            ("max_at", num(e.max.at)),
            ("identically_zero", e.identically_zero.into()),
            ("sign_changes", e.sign_changes.len().into()),
        ]));
    }
    Ok(doc)
}

#[derive(Debug, Args, Serialize)]
pub struct Delta3Args {}

pub fn verify_delta3(_: &Delta3Args, _: &ShootConfig) -> Outcome {
    let d = ev::delta3_integral_check();
    let mut doc = Document::default();
    doc.checks.push(Check::above("closed form", d.closed_form, 1.0));
    doc.checks.push(Check::below("|quadrature - closed form|", (d.quadrature - d.closed_form).abs(), 1e-10));
    doc.checks.push(Check::at_least("first term", d.first_term, 1.89));
    doc.records.push(record([
        ("closed_form", num(d.closed_form)),
        ("quadrature", num(d.quadrature)),
        ("quadrature_error", num(d.quadrature_error)),
        ("first_term", num(d.first_term)),
    ]));
    Ok(doc)
}

fn margin_rows(doc: &mut Document, margins: &[bryant::Margin], tol: f64) {
    for m in margins {
        doc.checks.push(Check::at_least(&m.name, m.min, -tol));
        doc.records.push(record([
            ("bound", m.name.clone().into()),
            ("range_lo", num(m.range.0)),
            ("range_hi", num(m.range.1)),
            ("min_margin", num(m.min)),
            ("at", num(m.at)),
        ]));
    }
}

#[derive(Debug, Args, Serialize)]
pub struct BryantArgs {
    /// Launch offset from the critical point (1, ½).
    #[arg(long, default_value_t = bryant::DEFAULT_LAUNCH)]
    pub launch: f64,
}

pub fn verify_bryant(a: &BryantArgs, cfg: &ShootConfig) -> Outcome {
    let curve = bryant::bryant_unstable_curve(a.launch, &cfg.integrator)?;
    let rep = bryant::verify_f_bounds(&curve);
    let (residual, at) = curve
        .max_invariant_residual(0.1, 0.99, 890)
        .ok_or(Failure::Numerical { kind: "bryant", message: "curve does not cover [0.1, 0.99]".into() })?;
    let mut doc = Document::default();
    margin_rows(&mut doc, &rep.margins, 1e-6);
    doc.checks.push(Check::above("f(0.3)", rep.f_at_0_3, 0.21));
    doc.checks.push(Check::below("invariant residual on [0.1, 0.99]", residual, 1e-6));
    doc.summary.insert("f_at_0_3".into(), num(rep.f_at_0_3));
    doc.summary.insert("max_invariant_residual".into(), num(residual));
    doc.summary.insert("max_invariant_residual_at".into(), num(at));
    Ok(doc)
}

#[derive(Debug, Args, Serialize)]
pub struct SmallTimeArgs {}

pub fn verify_smalltime(_: &SmallTimeArgs, cfg: &ShootConfig) -> Outcome {
    let rep = bryant::bryant_smalltime(cfg.t_eps, &cfg.integrator)?;
    let mut doc = Document::default();
    margin_rows(&mut doc, &rep.margins, 1e-6);
    doc.summary.insert("z_end".into(), num(rep.z_end));
    doc.summary.insert("x_end".into(), num(rep.x_end));
    Ok(doc)
}

#[derive(Debug, Args, Serialize)]
pub struct TraceArgs {
    /// Comma-separated values of δ₁.
    #[arg(long, value_delimiter = ',', default_value = "100,1000,10000")]
    pub delta1: Vec<f64>,
}

pub fn trace_pancake_limit(a: &TraceArgs, cfg: &ShootConfig) -> Outcome {
    let mut doc = Document::default();
    let mut reps = Vec::new();
    for &d1 in &a.delta1 {
        let r = ev::large_delta1_trace(d1, cfg)?;
        doc.checks.push(Check::at_least(&format!("x_min at delta1 = {d1}"), r.x_min, -1e-8));
        doc.checks.push(Check::at_least(&format!("E_min at delta1 = {d1}"), r.e_min, -1e-6));
        doc.records.push(record([
            ("delta1", num(d1)),
            ("event_t", num(r.event_t)),
            ("w", num(r.at_event.w)),
            ("x", num(r.at_event.x)),
            ("y", num(r.at_event.y)),
            ("z", num(r.at_event.z)),
            ("d_plus_one", num(r.d_plus_one)),
            ("r_dev", num(r.r_dev)),
            ("l2_dev", num(r.l2_dev)),
            ("x_min", num(r.x_min)),
            ("e_min", num(r.e_min)),
            ("critical_line_distance", num(r.critical_line_distance)),
        ]));
        reps.push(r);
    }
    reps.sort_by(|a, b| a.delta1.total_cmp(&b.delta1));
    if reps.len() > 1 {
        let worst = |f: &dyn Fn(&ev::PancakeTraceReport) -> f64| {
            reps.windows(2).map(|w| f(&w[1]) / f(&w[0])).fold(0.0, f64::max)
        };
        doc.checks.push(Check::below("|D+1| ratio between successive delta1", worst(&|r| r.d_plus_one.abs()), 1.0));
        doc.checks.push(Check::below("|R-1|+|L2| ratio between successive delta1", worst(&|r| r.r_dev + r.l2_dev), 1.0));
    }
    doc.summary.insert("rigor_delta".into(), num(reps[0].rigor_delta));
    doc.summary.insert("rigor_delta1_exponent".into(), num(reps[0].rigor_delta1_exponent));
    Ok(doc)
}

#[derive(Debug, Args, Serialize)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 1e4)]
    pub delta1: f64,
    /// Emit the deviation profile instead of the summary row.
    #[arg(long)]
    pub profile: bool,
}

pub fn compare_bryant(a: &CompareArgs, cfg: &ShootConfig) -> Outcome {
    let c = ev::rescaled_bryant_compare(a.delta1, cfg)?;
    let mut doc = Document::default();
    doc.checks.push(Check::below("C_obs", c.c_obs, 1e6));
    if a.profile {
        for &(tau, dev) in &c.profile {
            doc.records.push(record([("tau", num(tau)), ("deviation", num(dev)), ("scaled", num(dev / (c.p * c.p * tau)))]));
        }
    } else {
        doc.records.push(record([
            ("delta1", num(c.delta1)),
            ("p", num(c.p)),
            ("sup_deviation", num(c.sup_deviation)),
            ("c_obs", num(c.c_obs)),
        ]));
    }
    Ok(doc)
}

#[derive(Debug, Args, Serialize)]
pub struct PancakeArgs {
    /// Comma-separated neck lengths.
    #[arg(long, value_delimiter = ',', default_value = "10,20,40")]
    pub length: Vec<f64>,
    #[arg(long, default_value_t = 10_000)]
    pub grid: usize,
    #[arg(long, default_value_t = 1.0)]
    pub blend_center: f64,
    #[arg(long, default_value_t = 0.5)]
    pub blend_half_width: f64,
}

impl PancakeArgs {
    fn blend(&self) -> BlendParams {
        BlendParams { center: self.blend_center, half_width: self.blend_half_width }
    }
}

pub fn pancake_build(a: &PancakeArgs, _: &ShootConfig) -> Outcome {
    let mut doc = Document::default();
    for &l in &a.length {
        let p = pancake::build_profile(l, a.blend(), a.grid)?;
        let res = p.orbit_residuals();
        doc.checks.push(Check::below(&format!("orbit residual at L = {l}"), res.max(), 1e-8));
        for i in 0..p.r.len() {
            doc.records.push(record([
                ("L", num(l)),
                ("r", num(p.r[i])),
                ("f1", num(p.f1[i])),
                ("f2", num(p.f2[i])),
                ("df1", num(p.df1[i])),
                ("df2", num(p.df2[i])),
                ("d2f1", num(p.d2f1[i])),
                ("d2f2", num(p.d2f2[i])),
            ]));
        }
    }
    Ok(doc)
}

pub fn pancake_curvature(a: &PancakeArgs, _: &ShootConfig) -> Outcome {
    let mut doc = Document::default();
    let mut c = 0.0f64;
    for &l in &a.length {
        let p = pancake::build_profile(l, a.blend(), a.grid)?;
        let rep = pancake::profile_report(&p)?;
        let k = pancake::profile_curvature(&p)?;
        c = c.max(k.scalar_constant());
        doc.checks.push(Check::at_least(&format!("min eigenvalue at L = {l}"), rep.min_eigenvalue, -1e-9));
        doc.checks.push(Check::below(&format!("orbit residual at L = {l}"), p.orbit_residuals().max(), 1e-8));
        let key = format!("L={l}");
        let summary = [
            ("volume", rep.volume),
            ("idealized_volume", rep.idealized_volume),
            ("neck_volume", rep.neck_volume),
            ("diameter_lo", rep.diameter.0),
            ("diameter_hi", rep.diameter.1),
            ("min_eigenvalue", rep.min_eigenvalue),
            ("scalar_min", rep.scalar_range.0),
            ("scalar_max", rep.scalar_range.1),
        ];
        doc.summary.insert(key, Value::Object(summary.iter().map(|(k, v)| (k.to_string(), num(*v))).collect()));
        for s in &k.samples {
            let e = s.eigenvalues;
            let j = p.jet(s.r);
            doc.records.push(record([
                ("L", num(l)),
                ("r", num(s.r)),
                ("f1", num(j.f1[0])),
                ("f2", num(j.f2[0])),
                ("k_t1", num(e.k_t1)),
                ("k_s", num(e.k_s)),
                ("k_m", num(e.k_m)),
                ("k_t2", num(e.k_t2)),
                ("scalar", num(s.scalar)),
            ]));
        }
    }
    doc.summary.insert("C".into(), num(c));
    Ok(doc)
}
