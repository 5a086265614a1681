//! TOML job files. Every key is optional; command-line flags take precedence.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::CliError;

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub command: Option<String>,
    #[serde(default)]
    pub params: ParamsConfig,
    #[serde(default)]
    pub input: InputConfig,
    #[serde(default)]
    pub tracer: TracerSection,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub m: Option<i64>,
    pub n: Option<u32>,
    pub l: Option<u32>,
    pub p: Option<String>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputConfig {
    /// A vector field in the `(x, y)` chart.
    pub field: Option<String>,
    /// A vector field in the `(u, v)` chart.
    pub covering_field: Option<String>,
    pub form: Option<String>,
    pub polynomial: Option<String>,
    /// Path to a JSON document holding a first integral.
    pub first_integral: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TracerSection {
    pub tol: Option<f64>,
    pub escape_radius: Option<f64>,
    pub max_steps: Option<usize>,
    pub t_end: Option<f64>,
    pub direction: Option<String>,
    pub x0: Option<String>,
    pub y0: Option<String>,
    pub count: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    pub path: Option<PathBuf>,
    pub summary: Option<PathBuf>,
}

pub const TOL_RANGE: (f64, f64) = (1e-14, 1e-3);
pub const MAX_COUNT: usize = 10_000;

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let cfg: JobConfig =
            toml::from_str(&text).map_err(|e| CliError::Usage(format!("invalid config {}: {e}", path.display())))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let t = &self.tracer;
        if let Some(tol) = t.tol {
            check_tol(tol)?;
        }
        if let Some(r) = t.escape_radius {
            check_escape_radius(r)?;
        }
        if let Some(t_end) = t.t_end {
            check_t_end(t_end)?;
        }
        if let Some(c) = t.count {
            check_count(c)?;
        }
        if t.max_steps == Some(0) {
            return Err(CliError::Usage("max_steps must be positive".into()));
        }
        Ok(())
    }
}

pub fn check_tol(tol: f64) -> Result<(), CliError> {
    if (TOL_RANGE.0..=TOL_RANGE.1).contains(&tol) {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "tolerance {tol} outside [{:e}, {:e}]",
            TOL_RANGE.0, TOL_RANGE.1
        )))
    }
}

pub fn check_escape_radius(r: f64) -> Result<(), CliError> {
    if r > 0.0 && r.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "escape radius {r} must be positive and finite"
        )))
    }
}

pub fn check_t_end(t: f64) -> Result<(), CliError> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(CliError::Usage(format!("T = {t} must be finite and nonnegative")))
    }
}

pub fn check_count(c: usize) -> Result<(), CliError> {
    if (1..=MAX_COUNT).contains(&c) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("count {c} outside [1, {MAX_COUNT}]")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_job() {
        let cfg: JobConfig = toml::from_str(
            r#"
            command = "trace"
            [params]
            m = 1
            n = 1
            [input]
            field = "x d/dx - y d/dy"
            [tracer]
            tol = 1e-9
            t_end = 2.0
            x0 = "1,0"
            [output]
            path = "out.csv"
            "#,
        )
        .unwrap();
        cfg.validate().unwrap();
        assert_eq!(cfg.command.as_deref(), Some("trace"));
        assert_eq!(cfg.params.m, Some(1));
        assert_eq!(cfg.tracer.tol, Some(1e-9));
    }

    #[test]
    fn rejects_bad_values() {
        let bad = |s: &str| {
            toml::from_str::<JobConfig>(s)
                .map_err(|e| e.to_string())
                .and_then(|c| c.validate().map_err(|e| e.to_string()))
        };
        assert!(bad("[tracer]\ntol = 1e-2").is_err());
        assert!(bad("[tracer]\ntol = 1e-16").is_err());
        assert!(bad("[tracer]\nescape_radius = -1.0").is_err());
        assert!(bad("[tracer]\nt_end = -1.0").is_err());
        assert!(bad("[tracer]\ncount = 0").is_err());
        assert!(bad("colour = 1").is_err());
        assert!(bad("[tracer]\ntol = 1e-8").is_ok());
    }
}
