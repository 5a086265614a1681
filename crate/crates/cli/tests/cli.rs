use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const CATALOG: &str = "x*(1+x*y) d/dx + y*(1-x*y) d/dy";

fn holofol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holofol"))
        .args(args)
        .env_remove("HOLOFOL_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn assert_schema_valid(doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/holofol-output.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator
        .iter_errors(doc)
        .map(|e| format!("{e} at {}", e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "schema violations: {errors:#?}\n{doc:#}");
}

fn write_catalog_integral(dir: &Path) -> std::path::PathBuf {
    let g = dir.join("g.json");
    let out = holofol(&[
        "first-integral",
        "-m",
        "1",
        "-n",
        "1",
        "-X",
        CATALOG,
        "-o",
        g.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    g
}

#[test]
fn normal_form_example() {
    let out = holofol(&["normal-form", "-m", "1", "-n", "1", "-l", "1", "-p", "1"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["P"], "x^2*y + x");
    assert_eq!(doc["Y"], "x^2 d/dx - (2*x*y+1) d/dy");
    assert_eq!(doc["H"]["x"], "u");
    assert_eq!(doc["tangent"], true);
    assert_schema_valid(&doc);
}

#[test]
fn normal_form_negative_m_has_no_covering() {
    let out = holofol(&["normal-form", "-m", "-2", "-n", "3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert!(doc["H"].is_null());
    assert_eq!(doc["tangent"], true);
    assert_schema_valid(&doc);
}

#[test]
fn catalog_first_integral_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_catalog_integral(dir.path());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&g).unwrap()).unwrap();
    assert_schema_valid(&doc);
    assert_eq!(doc["status"], "ok");
    assert_eq!(doc["verdict"], "exact_zero");
    let fi = &doc["first_integral"];
    assert_eq!(
        (fi["q"].as_i64(), fi["p"].as_i64(), fi["n"].as_i64()),
        (Some(2), Some(1), Some(1))
    );
    assert_eq!(fi["fiber"], "x*y");
    assert_eq!(fi["sigma"], "1/2*z");

    let out = holofol(&["verify", "-G", g.to_str().unwrap(), "-X", CATALOG]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], "exact_zero");
    assert!(doc["residual"].is_null());
    assert_schema_valid(&doc);
}

#[test]
fn verify_hand_written_integral() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    std::fs::write(
        &g,
        r#"{"q": 2, "p": 1, "n": 1, "fiber": "x*y", "sigma_coeffs": ["0", "1/2"]}"#,
    )
    .unwrap();
    let out = holofol(&["verify", "-G", g.to_str().unwrap(), "-X", CATALOG]);
    assert_eq!(code(&out), 0);

    // dropping the exponential factor breaks invariance
    std::fs::write(&g, r#"{"q": 2, "p": 1, "n": 1, "fiber": "x*y", "sigma_coeffs": []}"#).unwrap();
    let out = holofol(&["verify", "-G", g.to_str().unwrap(), "-X", CATALOG]);
    assert_eq!(code(&out), 3);
    let doc = stdout_json(&out);
    assert_eq!(doc["verdict"], "nonzero");
    assert!(doc["residual"].is_string());
    assert_schema_valid(&doc);
}

#[test]
fn gate_failures_exit_two() {
    // pushforward of u d/du + v^2 d/dv: N = 2
    let out = holofol(&["first-integral", "-m", "1", "-n", "1", "-X", "x d/dx + (x*y^2-y) d/dy"]);
    assert_eq!(code(&out), 2);
    let doc = stdout_json(&out);
    assert_schema_valid(&doc);
    assert_eq!(doc["status"], "gate_failure");
    let failed: Vec<&str> = doc["gates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|g| g["status"] == "fail")
        .map(|g| g["gate"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["N_equals_1"]);

    // pushforward of (1+i) u d/du + v d/dv: lambda_1 = 1 + i
    let out = holofol(&["first-integral", "-m", "1", "-n", "1", "-X", "(1+i)*x d/dx - i*y d/dy"]);
    assert_eq!(code(&out), 2);
    let doc = stdout_json(&out);
    let failed: Vec<&str> = doc["gates"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|g| g["status"] == "fail")
        .map(|g| g["gate"].as_str().unwrap())
        .collect();
    assert_eq!(failed, ["lambda1_rational"]);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&holofol(&["normal-form", "-m", "1"])), 1);
    assert_eq!(code(&holofol(&["bogus"])), 1);
    assert_eq!(code(&holofol(&[])), 1);
    let out = holofol(&["first-integral", "-m", "1", "-n", "1", "-X", "x^(1/2) d/dx"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("1:3"));
    assert_eq!(code(&holofol(&["normal-form", "-m", "2", "-n", "4"])), 1);
    assert_eq!(
        code(&holofol(&[
            "trace", "-X", "d/dx", "--x0", "0", "--y0", "0", "--tol", "0.1"
        ])),
        1
    );
    assert_eq!(code(&holofol(&["--help"])), 0);
    assert_eq!(code(&holofol(&["--version"])), 0);
}

#[test]
fn non_invariant_pushforward_exits_three() {
    let out = holofol(&["pushforward", "-m", "1", "-n", "2", "-W", "u d/du + u*v d/dv"]);
    assert_eq!(code(&out), 3);
    let out = holofol(&["pushforward", "-m", "1", "-n", "1", "-W", "u d/du"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["pushed_forward"], "x d/dx - y d/dy");
    assert_schema_valid(&doc);
}

#[test]
fn pullback_of_field_and_form() {
    let out = holofol(&["pullback", "-m", "1", "-n", "1", "-X", CATALOG]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_schema_valid(&doc);
    assert_eq!(doc["shape"]["big_n"], 1);
    assert_eq!(doc["shape"]["k"], 0);

    let out = holofol(&["pullback", "-m", "1", "-n", "1", "--form", "y dx + x dy"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_schema_valid(&doc);
    assert_eq!(doc["kind"], "form");
    assert_eq!(doc["pulled_back"], "dv");
}

#[test]
fn times_form_catalog() {
    let out = holofol(&["times-form", "-m", "1", "-n", "1", "-X", CATALOG]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_schema_valid(&doc);
    assert_eq!((doc["alpha"].as_u64(), doc["beta"].as_u64()), (Some(1), Some(1)));
    assert_eq!(doc["chain"]["all_hold"], true);
    assert_eq!(doc["chain"]["rho"], "(1/2/v) dv");
}

#[test]
fn special_values_of_saito_polynomial() {
    let out = holofol(&["special-values", "-P", "4*((x*y+1)^2+y)*(x*(x*y+1)+1)^2+1"]);
    assert_eq!(code(&out), 0);
    let doc = stdout_json(&out);
    assert_schema_valid(&doc);
    for v in doc["critical_values"].as_array().unwrap() {
        assert!(v == "0" || v == "1", "unexpected critical value {v}");
    }
    assert_eq!(doc["residual_values"], "1");
}

#[test]
fn trace_with_zero_time_has_one_row() {
    let out = holofol(&["trace", "-X", CATALOG, "--x0", "0.5,0.1", "--y0", "0.3", "-T", "0"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "t_re,t_im,x_re,x_im,y_re,y_im,G_re,G_im");
    assert!(lines[1].starts_with("0.0000000000000000e0,0.0000000000000000e0,5.0000000000000000e-1,"));
}

#[test]
fn trace_conserves_catalog_integral() {
    let dir = tempfile::tempdir().unwrap();
    let g = write_catalog_integral(dir.path());
    let csv = dir.path().join("t.csv");
    let summary = dir.path().join("s.json");
    let out = holofol(&[
        "trace",
        "-m",
        "1",
        "-n",
        "1",
        "-X",
        CATALOG,
        "-G",
        g.to_str().unwrap(),
        "--x0",
        "0.6,0.2",
        "--y0",
        "0.4,-0.1",
        "--direction",
        "1,1",
        "-T",
        "1",
        "--tol",
        "1e-10",
        "-o",
        csv.to_str().unwrap(),
        "--summary",
        summary.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_schema_valid(&doc);
    let tr = &doc["traces"][0];
    assert_eq!(tr["status"], "completed");
    assert!(tr["max_drift"].as_f64().unwrap() < 1e-7);
    let elapsed = tr["elapsed_time_via_tau"].as_array().unwrap();
    let (re, im) = (elapsed[0].as_f64().unwrap(), elapsed[1].as_f64().unwrap());
    let s = std::f64::consts::FRAC_1_SQRT_2;
    assert!((re - s).hypot(im - s) < 1e-5, "elapsed {re} + {im}i");
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert!(rows.lines().skip(1).all(|l| !l.ends_with("NaN,NaN")));
    assert_eq!(rows.lines().count(), tr["samples"].as_u64().unwrap() as usize + 1);
}

#[test]
fn step_limit_is_a_numerical_failure() {
    let out = holofol(&[
        "trace",
        "-X",
        "x d/dx - y d/dy",
        "--x0",
        "1",
        "--y0",
        "1",
        "--max-steps",
        "1",
    ]);
    assert_eq!(code(&out), 4);
}

#[test]
fn seeded_random_traces_are_reproducible() {
    let run = |dir: &Path| {
        let out = Command::new(env!("CARGO_BIN_EXE_holofol"))
            .args(["trace", "-X", CATALOG, "--count", "3", "-T", "0.5", "-o"])
            .arg(dir)
            .arg("--summary")
            .arg(dir.join("summary.json"))
            .env("HOLOFOL_SEED", "7")
            .output()
            .unwrap();
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        (0..3)
            .map(|i| std::fs::read_to_string(dir.join(format!("trace_{i:04}.csv"))).unwrap())
            .collect::<Vec<_>>()
    };
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(run(a.path()), run(b.path()));
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(a.path().join("summary.json")).unwrap()).unwrap();
    assert_schema_valid(&doc);
    assert_eq!(doc["seed"], 7);
    assert_eq!(doc["traces"].as_array().unwrap().len(), 3);
}

#[test]
fn plot_embeds_command_line() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("p.svg");
    let out = holofol(&[
        "plot",
        "-X",
        CATALOG,
        "--x0",
        "0.5",
        "--y0",
        "0.5",
        "-o",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    let meta = text
        .split("<metadata>")
        .nth(1)
        .unwrap()
        .split("</metadata>")
        .next()
        .unwrap();
    assert!(meta.contains("plot -X 'x*(1+x*y) d/dx + y*(1-x*y) d/dy' --x0 0.5"));
    assert_eq!(text.matches("<polyline").count(), 3);
    for label in ["|x|", "Re x", "Im y"] {
        assert!(text.contains(label));
    }
}

#[test]
fn job_file_drives_a_command() {
    let dir = tempfile::tempdir().unwrap();
    let job = dir.path().join("job.toml");
    std::fs::write(
        &job,
        "command = \"normal-form\"\n[params]\nm = 1\nn = 1\nl = 1\np = \"1\"\n",
    )
    .unwrap();
    let out = holofol(&["--config", job.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["P"], "x^2*y + x");

    // flags override the file
    let out = holofol(&["--config", job.to_str().unwrap(), "normal-form", "-l", "0", "-p", "0"]);
    assert_eq!(stdout_json(&out)["P"], "x*y");

    assert_eq!(code(&holofol(&["--config", job.to_str().unwrap(), "trace"])), 1);

    std::fs::write(&job, "[tracer]\ntol = 0.5\n").unwrap();
    assert_eq!(
        code(&holofol(&[
            "--config",
            job.to_str().unwrap(),
            "normal-form",
            "-m",
            "1",
            "-n",
            "1"
        ])),
        1
    );
}
