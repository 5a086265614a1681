use std::path::{Path, PathBuf};

use holofol::expr::{parse_field, parse_form, parse_poly, parse_univariate, print_ratfunc};
use holofol::first_integral::{first_integral_xy, verify_first_integral};
use holofol::foliation::{differential_rat, times_chain, times_form, Coords, VectorField2};
use holofol::normal_forms::NormalFormError;
use holofol::normal_forms::{build_h, build_p, build_p_poly, build_y, read_pullback_shape, special_values, Gate};
use holofol::tracer::{
    elapsed_time_via_tau, escape_profile, sample_base_points, trace_many, write_csv, CompiledField, ComplexPoint,
    TraceResult, TraceStatus, TracerConfig,
};
use holofol::{FirstIntegralForm, SaitoSuzukiParams, Verdict};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::args::{Command, FieldArgs, ParamArgs, PullbackArgs, PushforwardArgs, SpecialArgs, TraceArgs, VerifyArgs};
use crate::config::{self, JobConfig};
use crate::error::CliError;
use crate::json;
use crate::plot::render_svg;

pub const DEFAULT_SEED: u64 = 20_240_117;

/// What a command produced: the main artifact, extra files and the exit
/// status implied by its verdicts.
#[derive(Debug, Default)]
pub struct Outcome {
    pub body: String,
    pub files: Vec<(PathBuf, String)>,
    pub code: i32,
}

impl Outcome {
    fn json(doc: serde_json::Map<String, Value>, code: i32) -> Self {
        Self {
            body: json::to_text(doc),
            files: Vec::new(),
            code,
        }
    }
}

pub struct Job<'a> {
    pub config: &'a JobConfig,
    pub output: Option<&'a Path>,
    pub command_line: String,
}

pub fn run(command: &Command, job: &Job) -> Result<Outcome, CliError> {
    match command {
        Command::NormalForm(a) => normal_form(a, job),
        Command::Pullback(a) => pullback(a, job),
        Command::Pushforward(a) => pushforward(a, job),
        Command::TimesForm(a) => times(a, job),
        Command::FirstIntegral(a) => first_integral(a, job),
        Command::Verify(a) => verify(a, job),
        Command::SpecialValues(a) => special(a, job),
        Command::Trace(a) => trace(a, job, false),
        Command::Plot(a) => trace(a, job, true),
    }
}

fn params(a: &ParamArgs, cfg: &JobConfig) -> Result<SaitoSuzukiParams, CliError> {
    let m =
        a.m.or(cfg.params.m)
            .ok_or_else(|| CliError::Usage("missing -m".into()))?;
    let n =
        a.n.or(cfg.params.n)
            .ok_or_else(|| CliError::Usage("missing -n".into()))?;
    let l = a.l.or(cfg.params.l).unwrap_or(0);
    let p_text =
        a.p.clone()
            .or_else(|| cfg.params.p.clone())
            .unwrap_or_else(|| "0".into());
    let p = parse_univariate(&p_text)?;
    SaitoSuzukiParams::new(m, n, l, p).map_err(|e| CliError::Usage(e.to_string()))
}

fn has_params(a: &ParamArgs, cfg: &JobConfig) -> bool {
    a.m.is_some() || a.n.is_some() || cfg.params.m.is_some() || cfg.params.n.is_some()
}

fn text<'a>(flag: &'a Option<String>, fallback: &'a Option<String>, what: &str) -> Result<&'a str, CliError> {
    flag.as_deref()
        .or(fallback.as_deref())
        .ok_or_else(|| CliError::Usage(format!("missing {what}")))
}

fn field_xy(flag: &Option<String>, cfg: &JobConfig) -> Result<VectorField2, CliError> {
    Ok(parse_field(
        text(flag, &cfg.input.field, "-X <field>")?,
        Some(Coords::XY),
    )?)
}

fn read_first_integral_file(path: &Path) -> Result<FirstIntegralForm, CliError> {
    let raw =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let doc: Value =
        serde_json::from_str(&raw).map_err(|e| CliError::Usage(format!("invalid JSON in {}: {e}", path.display())))?;
    json::read_first_integral(&doc)
}

fn normal_form(a: &ParamArgs, job: &Job) -> Result<Outcome, CliError> {
    let prm = params(a, job.config)?;
    let p = build_p(&prm)?;
    let y = build_y(&prm)?;
    let tangent = differential_rat(&p, Coords::XY).contract(&y)?.is_zero();
    let h = if prm.covering_ready() {
        let h = build_h(&prm)?;
        json!({
            "x": print_ratfunc(h.x_component(), Coords::UV),
            "y": print_ratfunc(h.y_component(), Coords::UV),
        })
    } else {
        Value::Null
    };
    let mut doc = json::document("normal-form");
    doc.insert("params".into(), json::params(&prm));
    doc.insert("P".into(), print_ratfunc(&p, Coords::XY).into());
    doc.insert("Y".into(), y.to_string().into());
    doc.insert("H".into(), h);
    doc.insert("tangent".into(), tangent.into());
    Ok(Outcome::json(doc, if tangent { 0 } else { 3 }))
}

fn pullback(a: &PullbackArgs, job: &Job) -> Result<Outcome, CliError> {
    let prm = params(&a.params, job.config)?;
    let h = build_h(&prm)?;
    let mut doc = json::document("pullback");
    doc.insert("params".into(), json::params(&prm));
    let form_text = a
        .form
        .as_ref()
        .or(job.config.input.form.as_ref())
        .filter(|_| a.field.is_none());
    if let Some(form_text) = form_text {
        let form = parse_form(form_text, Some(Coords::XY))?;
        doc.insert("kind".into(), "form".into());
        doc.insert("input".into(), form.to_string().into());
        doc.insert("pulled_back".into(), h.pullback_form(&form)?.to_string().into());
        doc.insert("shape".into(), Value::Null);
        return Ok(Outcome::json(doc, 0));
    }
    let field = field_xy(&a.field, job.config)?;
    let w = h.pullback_field(&field)?;
    doc.insert("kind".into(), "field".into());
    doc.insert("input".into(), field.to_string().into());
    doc.insert("pulled_back".into(), w.to_string().into());
    match read_pullback_shape(&w) {
        Ok(s) => {
            doc.insert("shape".into(), json::shape(&s));
        }
        Err(e) => {
            doc.insert("shape".into(), Value::Null);
            doc.insert("shape_error".into(), e.to_string().into());
        }
    }
    Ok(Outcome::json(doc, 0))
}

fn pushforward(a: &PushforwardArgs, job: &Job) -> Result<Outcome, CliError> {
    let prm = params(&a.params, job.config)?;
    let h = build_h(&prm)?;
    let w = parse_field(
        text(&a.field, &job.config.input.covering_field, "-W <field>")?,
        Some(Coords::UV),
    )?;
    let x = h.pushforward_field(&w)?;
    let mut doc = json::document("pushforward");
    doc.insert("params".into(), json::params(&prm));
    doc.insert("input".into(), w.to_string().into());
    doc.insert("pushed_forward".into(), x.to_string().into());
    Ok(Outcome::json(doc, 0))
}

fn times(a: &FieldArgs, job: &Job) -> Result<Outcome, CliError> {
    let prm = params(&a.params, job.config)?;
    let field = field_xy(&a.field, job.config)?;
    let data = times_form(&field, &prm)?;
    let mut code = 0;
    let chain = if prm.covering_ready() {
        let c = times_chain(&field, &prm, &data)?;
        if !c.all_hold() {
            code = 3;
        }
        json!({
            "rho": c.rho.to_string(),
            "pulled_back": c.pulled_back.to_string(),
            "shape": json::shape(&c.shape),
            "matches_unit_form": c.matches_unit_form,
            "matches_reduced_form": c.matches_reduced_form,
            "contraction_is_one": c.contraction_is_one,
            "k_identity": c.k_identity,
            "all_hold": c.all_hold(),
        })
    } else {
        Value::Null
    };
    let mut doc = json::document("times-form");
    doc.insert("params".into(), json::params(&prm));
    doc.insert("field".into(), field.to_string().into());
    doc.insert("eta".into(), data.eta.to_string().into());
    doc.insert("eta_of_x".into(), data.eta_of_x.to_string().into());
    doc.insert("alpha".into(), data.alpha.into());
    doc.insert("beta".into(), data.beta.into());
    doc.insert("unit_const".into(), data.unit_const.to_string().into());
    doc.insert("tau".into(), data.tau.to_string().into());
    doc.insert("chain".into(), chain);
    Ok(Outcome::json(doc, code))
}

fn gate_report(failed: Option<Gate>) -> Value {
    let mut seen_failure = false;
    let entries = Gate::ORDER
        .iter()
        .map(|g| {
            let status = if seen_failure {
                "not_checked"
            } else if Some(*g) == failed {
                seen_failure = true;
                "fail"
            } else {
                "pass"
            };
            json!({ "gate": g.code(), "failure_condition": g.to_string(), "status": status })
        })
        .collect();
    Value::Array(entries)
}

fn first_integral(a: &FieldArgs, job: &Job) -> Result<Outcome, CliError> {
    let prm = params(&a.params, job.config)?;
    let field = field_xy(&a.field, job.config)?;
    let h = build_h(&prm)?;
    let w = h.pullback_field(&field)?;
    let shape = read_pullback_shape(&w)?;
    let mut doc = json::document("first-integral");
    doc.insert("params".into(), json::params(&prm));
    doc.insert("field".into(), field.to_string().into());
    doc.insert("pulled_back".into(), w.to_string().into());
    doc.insert("shape".into(), json::shape(&shape));
    match first_integral_xy(&prm, &shape) {
        Ok(g) => {
            let verdict = verify_first_integral(&g, &field);
            let code = if verdict == Verdict::ExactZero { 0 } else { 3 };
            doc.insert("gates".into(), gate_report(None));
            doc.insert("status".into(), "ok".into());
            doc.insert("first_integral".into(), json::first_integral(&g)?);
            doc.insert("verdict".into(), json::verdict_name(&verdict).into());
            Ok(Outcome::json(doc, code))
        }
        Err(e) => {
            let gate = match &e {
                holofol::first_integral::FirstIntegralError::GateFailure(g) => Some(*g),
                holofol::first_integral::FirstIntegralError::NormalForm(NormalFormError::GateFailure(g)) => Some(*g),
                _ => None,
            };
            let Some(gate) = gate else {
                return Err(e.into());
            };
            doc.insert("gates".into(), gate_report(Some(gate)));
            doc.insert("status".into(), "gate_failure".into());
            doc.insert("first_integral".into(), Value::Null);
            doc.insert("verdict".into(), Value::Null);
            Ok(Outcome::json(doc, 2))
        }
    }
}

fn verify(a: &VerifyArgs, job: &Job) -> Result<Outcome, CliError> {
    let path = a
        .first_integral
        .as_ref()
        .or(job.config.input.first_integral.as_ref())
        .ok_or_else(|| CliError::Usage("missing -G <file>".into()))?;
    let g = read_first_integral_file(path)?;
    let field = field_xy(&a.field, job.config)?;
    let verdict = verify_first_integral(&g, &field);
    let mut doc = json::document("verify");
    doc.insert("field".into(), field.to_string().into());
    doc.insert("first_integral".into(), json::first_integral(&g)?);
    doc.insert("verdict".into(), json::verdict_name(&verdict).into());
    doc.insert("residual".into(), json::verdict_residual(&verdict));
    let code = if verdict == Verdict::ExactZero { 0 } else { 3 };
    Ok(Outcome::json(doc, code))
}

fn special(a: &SpecialArgs, job: &Job) -> Result<Outcome, CliError> {
    let cfg = job.config;
    let p = match a.polynomial.as_ref().or(cfg.input.polynomial.as_ref()) {
        Some(t) => parse_poly(t, Some(Coords::XY))?.0,
        None => build_p_poly(&params(&a.params, cfg)?)?,
    };
    if p.as_constant().is_some() {
        return Err(CliError::Usage("the polynomial must be nonconstant".into()));
    }
    let field = match a.field.as_ref().or(cfg.input.field.as_ref()) {
        Some(t) => Some(parse_field(t, Some(Coords::XY))?),
        None => None,
    };
    let r = special_values(&p, field.as_ref());
    let components: Vec<Value> = r
        .invariant_fiber_components
        .iter()
        .map(|(f, t)| json!({ "component": f.to_string(), "value": t.to_string() }))
        .collect();
    let mut doc = json::document("special-values");
    doc.insert("polynomial".into(), p.to_string().into());
    doc.insert("field".into(), field.map_or(Value::Null, |f| f.to_string().into()));
    doc.insert("critical_values".into(), json::values(&r.critical_values));
    doc.insert("residual_values".into(), r.residual_values.display_with("t").into());
    doc.insert(
        "unresolved_critical_curves".into(),
        json::polys(&r.unresolved_critical_curves),
    );
    doc.insert(
        "unresolved_x_eliminant".into(),
        r.unresolved_x_eliminant.display_with("x").into(),
    );
    doc.insert("invariant_fiber_components".into(), Value::Array(components));
    doc.insert("tangency_curves".into(), json::polys(&r.tangency_curves));
    doc.insert("tangent_to_fibers".into(), r.tangent_to_fibers.into());
    doc.insert("special_values".into(), json::values(&r.special_values()));
    Ok(Outcome::json(doc, 0))
}

/// `"re,im"` or `"re"`.
pub fn parse_complex(s: &str, what: &str) -> Result<Complex64, CliError> {
    let bad = || CliError::Usage(format!("{what}: expected \"re,im\", got {s:?}"));
    let num = |t: &str| t.trim().parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(bad);
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(num(re)?, num(im)?)),
        None => Ok(Complex64::new(num(s)?, 0.0)),
    }
}

fn status_name(s: TraceStatus) -> &'static str {
    match s {
        TraceStatus::Completed => "completed",
        TraceStatus::Escaped => "escaped",
        TraceStatus::Singular => "singular",
        TraceStatus::StepUnderflow => "step_underflow",
        TraceStatus::StepLimit => "step_limit",
    }
}

fn seed(flag: Option<u64>, cfg: &JobConfig) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    if let Ok(env) = std::env::var("HOLOFOL_SEED") {
        return env
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("HOLOFOL_SEED must be an unsigned integer, got {env:?}")));
    }
    Ok(cfg.tracer.seed.unwrap_or(DEFAULT_SEED))
}

fn trace(a: &TraceArgs, job: &Job, plot: bool) -> Result<Outcome, CliError> {
    let cfg = job.config;
    let t = &cfg.tracer;
    let field = field_xy(&a.field, cfg)?;
    let tol = a.tol.or(t.tol).unwrap_or(1e-10);
    config::check_tol(tol)?;
    let escape_radius = a.escape_radius.or(t.escape_radius).unwrap_or(1e8);
    config::check_escape_radius(escape_radius)?;
    let t_end = a.t_end.or(t.t_end).unwrap_or(1.0);
    config::check_t_end(t_end)?;
    let max_steps = a.max_steps.or(t.max_steps).unwrap_or(1_000_000);
    if max_steps == 0 {
        return Err(CliError::Usage("max steps must be positive".into()));
    }
    let direction = match a.direction.as_ref().or(t.direction.as_ref()) {
        Some(s) => parse_complex(s, "direction")?,
        None => Complex64::new(1.0, 0.0),
    };
    if direction.norm() == 0.0 {
        return Err(CliError::Usage("the time direction must be nonzero".into()));
    }
    let direction = direction / direction.norm();

    let x0 = a.x0.as_ref().or(t.x0.as_ref());
    let y0 = a.y0.as_ref().or(t.y0.as_ref());
    let (bases, used_seed) = match (x0, y0) {
        (Some(x), Some(y)) => (
            vec![ComplexPoint::new(parse_complex(x, "x0")?, parse_complex(y, "y0")?)],
            None,
        ),
        (None, None) => {
            let count = a.count.or(t.count).unwrap_or(1);
            config::check_count(count)?;
            let s = seed(a.seed, cfg)?;
            (sample_base_points(s, count, 0.25, 1.0), Some(s))
        }
        _ => return Err(CliError::Usage("give both --x0 and --y0, or neither".into())),
    };

    let g_path = a.first_integral.as_ref().or(cfg.input.first_integral.as_ref());
    let g = g_path.map(|p| read_first_integral_file(p)).transpose()?;
    let prm = if has_params(&a.params, cfg) {
        Some(params(&a.params, cfg)?)
    } else {
        None
    };
    let tf = match &prm {
        Some(prm) if field.is_polynomial() => times_form(&field, prm).ok(),
        _ => None,
    };

    let tracer_cfg = TracerConfig {
        tol,
        escape_radius,
        max_steps,
        ..TracerConfig::default()
    };
    let compiled = CompiledField::new(&field);
    let traces = trace_many(&compiled, &bases, direction, t_end, &tracer_cfg, g.as_ref())
        .into_iter()
        .collect::<Result<Vec<TraceResult>, _>>()?;

    let summaries: Vec<Value> = traces
        .iter()
        .map(|tr| {
            let elapsed = tf
                .as_ref()
                .filter(|_| tr.samples.len() > 1)
                .and_then(|tf| elapsed_time_via_tau(tf, tr).ok());
            let profile = escape_profile(tr, prm.as_ref().map(|p| p.fiber_factor()).as_ref());
            json!({
                "base": json::point(tr.samples[0].z),
                "status": status_name(tr.status),
                "steps": tr.stats.steps,
                "rejected": tr.stats.rejected,
                "samples": tr.samples.len(),
                "final_time": json::complex(tr.final_time()),
                "endpoint": json::point(tr.endpoint()),
                "max_drift": tr.stats.max_drift,
                "elapsed_time_via_tau": elapsed.map(json::complex),
                "escape": {
                    "min_abs_x": profile.min_abs_x,
                    "min_curve_distance": profile.min_curve_distance,
                    "final_curve_distance": profile.final_curve_distance,
                    "growth_exponent": profile.growth_exponent,
                    "approaching_curve": profile.approaching_curve,
                },
            })
        })
        .collect();
    let failed = traces
        .iter()
        .any(|tr| !matches!(tr.status, TraceStatus::Completed | TraceStatus::Escaped));
    let code = if failed { 4 } else { 0 };

    let mut out = Outcome {
        code,
        ..Outcome::default()
    };
    if plot {
        out.body = render_svg(&traces, &job.command_line);
    } else if traces.len() == 1 {
        out.body = csv_text(&traces[0])?;
    } else {
        let dir = job
            .output
            .ok_or_else(|| CliError::Usage("several traces need -o <directory>".into()))?;
        for (i, tr) in traces.iter().enumerate() {
            out.files.push((dir.join(format!("trace_{i:04}.csv")), csv_text(tr)?));
        }
    }
    if let Some(path) = a.summary.as_ref().or(cfg.output.summary.as_ref()) {
        let mut doc = json::document(if plot { "plot" } else { "trace" });
        doc.insert("field".into(), field.to_string().into());
        doc.insert("direction".into(), json::complex(direction));
        doc.insert("t_end".into(), t_end.into());
        doc.insert("tol".into(), tol.into());
        doc.insert("escape_radius".into(), escape_radius.into());
        doc.insert("seed".into(), used_seed.map_or(Value::Null, Value::from));
        doc.insert(
            "first_integral".into(),
            g.as_ref().map(json::first_integral).transpose()?.unwrap_or(Value::Null),
        );
        doc.insert("traces".into(), Value::Array(summaries));
        out.files.push((path.clone(), json::to_text(doc)));
    }
    Ok(out)
}

fn csv_text(tr: &TraceResult) -> Result<String, CliError> {
    let mut buf = Vec::new();
    write_csv(tr, &mut buf)?;
    String::from_utf8(buf).map_err(|e| CliError::Numerical(e.to_string()))
}
