//! JSON renderings of library objects. Keys are fixed snake_case strings.

use holofol::expr::{parse_poly, parse_ratfunc};
use holofol::foliation::Coords;
use holofol::normal_forms::SaitoSuzukiParams;
use holofol::tracer::ComplexPoint;
use holofol::{BiPoly, FirstIntegralForm, GaussianRational, PulledBackRiccati, UniPoly, Verdict};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::error::CliError;

pub fn params(p: &SaitoSuzukiParams) -> Value {
    json!({ "m": p.m, "n": p.n, "l": p.l, "p": p.p.display_with("x") })
}

pub fn shape(s: &PulledBackRiccati) -> Value {
    json!({ "k": s.k, "a": s.a.display_with("v"), "c": s.c.to_string(), "big_n": s.big_n })
}

/// `[re, im]`, or null when either part is not finite.
pub fn complex(z: Complex64) -> Value {
    if z.is_finite() {
        json!([z.re, z.im])
    } else {
        Value::Null
    }
}

pub fn point(z: ComplexPoint) -> Value {
    json!({ "x": complex(z.x), "y": complex(z.y) })
}

pub fn values(v: &[GaussianRational]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(c.to_string())).collect())
}

pub fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::ExactZero => "exact_zero",
        Verdict::Nonzero(_) => "nonzero",
        Verdict::Undefined => "undefined",
    }
}

pub fn verdict_residual(v: &Verdict) -> Value {
    match v {
        Verdict::Nonzero(r) => Value::String(r.display_with("x", "y")),
        _ => Value::Null,
    }
}

/// `G^{nq} = x^q · exp(−nq·σ(P)) · P^(−p)`, with every ingredient spelled out.
pub fn first_integral(g: &FirstIntegralForm) -> Result<Value, CliError> {
    let int = |b: &num_bigint::BigInt| {
        b.to_i64()
            .ok_or_else(|| CliError::Numerical(format!("exponent {b} does not fit in 64 bits")))
    };
    let (q, p) = (int(&g.q)?, int(&g.p)?);
    let nq = q * g.n as i64;
    let sigma_text = g.sigma.display_with("P");
    let expression = format!("x^{q}*exp(-{nq}*({sigma_text}))*P^({})", -p);
    Ok(json!({
        "q": q,
        "p": p,
        "n": g.n,
        "power": nq,
        "sigma": g.sigma.display_with("z"),
        "sigma_coeffs": values(g.sigma.coeffs()),
        "fiber": g.fiber.display_with("x", "y"),
        "expression": expression,
    }))
}

/// Reads the object produced by [`first_integral`], either bare or under a
/// `first_integral` key.
pub fn read_first_integral(doc: &Value) -> Result<FirstIntegralForm, CliError> {
    let obj = doc.get("first_integral").filter(|v| v.is_object()).unwrap_or(doc);
    let obj = obj
        .as_object()
        .ok_or_else(|| CliError::Usage("first integral document must be a JSON object".into()))?;
    let get = |k: &str| {
        obj.get(k)
            .ok_or_else(|| CliError::Usage(format!("first integral is missing `{k}`")))
    };
    let int = |k: &str| {
        get(k)?
            .as_i64()
            .ok_or_else(|| CliError::Usage(format!("`{k}` must be an integer")))
    };
    let q = int("q")?;
    let p = int("p")?;
    let n = u32::try_from(int("n")?).map_err(|_| CliError::Usage("`n` must be a positive integer".into()))?;
    let fiber_text = get("fiber")?
        .as_str()
        .ok_or_else(|| CliError::Usage("`fiber` must be a string".into()))?;
    let (fiber, _) = parse_poly(fiber_text, Some(Coords::XY))?;
    let coeffs = get("sigma_coeffs")?
        .as_array()
        .ok_or_else(|| CliError::Usage("`sigma_coeffs` must be an array".into()))?
        .iter()
        .map(constant)
        .collect::<Result<Vec<_>, _>>()?;
    FirstIntegralForm::new(q.into(), p.into(), n, UniPoly::new(coeffs), fiber)
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn constant(v: &Value) -> Result<GaussianRational, CliError> {
    let text = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(CliError::Usage(format!("expected an exact constant, got {v}"))),
    };
    let (f, _) = parse_ratfunc(&text, Some(Coords::XY))?;
    f.as_constant()
        .ok_or_else(|| CliError::Usage(format!("`{text}` is not a constant")))
}

pub fn polys(v: &[BiPoly]) -> Value {
    Value::Array(v.iter().map(|p| Value::String(p.display_with("x", "y"))).collect())
}

/// A JSON object with `command` first.
pub fn document(command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), Value::String(command.into()));
    m
}

pub fn to_text(doc: Map<String, Value>) -> String {
    let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
    s.push('\n');
    s
}
