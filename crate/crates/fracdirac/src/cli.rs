//! Command-line surface: pointwise kernel evaluation, solution-field dumps,
//! and the verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid arguments or
//! domain errors. The environment variable `FRACDIRAC_THREADS` caps internal
//! parallelism. Output is a pure function of the flags.

use crate::error::Error;
use crate::kernel::{
    kernel_auto, kernel_mellin_barnes, kernel_quadrature, kernel_wright, ContourSpec, KernelEval,
    KernelMethod, KernelQuery,
};
use crate::output::{field_to_csv, field_to_json, fmt_f64, KernelRecord, KERNEL_CSV_HEADER};
use crate::solution::{
    airy_reference_check, solution_field_spectral, solution_field_theorem1,
    solution_spectral_data, validate_params, validate_params_relaxed,
};
use crate::spectral::GridSpec;
use crate::verify::{
    crosscheck_methods, delta_ic_check, pde_residual, semigroup_check, spectral_ode_residual,
    CrosscheckSpec,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "fracdirac",
    about = "Fundamental solutions of space-fractional Dirac equations of Levy-Feller type",
    version,
    after_help = "Exit codes: 0 ok, 1 verification failure, 2 invalid arguments.\n\
                  FRACDIRAC_THREADS caps internal parallelism.\n\
                  CSV floats carry 17 significant digits; JSON floats are exact round-trip."
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Levy kernel K_{alpha,n}(r, tau) and print CSV rows
    /// (columns: r, re_k, im_k, method, est_error, plus the echoed query).
    Kernel(KernelArgs),
    /// Assemble the solution field on a periodic grid and dump it to a file.
    Solution(SolutionArgs),
    /// Run a verification suite and print a JSON pass/fail report.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct KernelArgs {
    /// Fractional order (>= 2 unless --relax-alpha)
    #[arg(long)]
    alpha: f64,
    /// Spatial dimension (>= 1)
    #[arg(long)]
    n: u32,
    /// Radii |x| to evaluate, comma separated
    #[arg(long, value_delimiter = ',', required = true)]
    r: Vec<f64>,
    /// Re(tau) (> 0 for the quadrature path)
    #[arg(long = "tau-re")]
    tau_re: f64,
    /// Im(tau)
    #[arg(long = "tau-im", default_value_t = 0.0)]
    tau_im: f64,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    /// Relative tolerance target
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Allow 1 < alpha < 2 (the m = 0 window of the parameter gate)
    #[arg(long = "relax-alpha", default_value_t = false)]
    relax_alpha: bool,
    /// Write CSV here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Wright,
    Quadrature,
    Mellin,
    Auto,
}

#[derive(Args)]
struct SolutionArgs {
    #[arg(long)]
    alpha: f64,
    #[arg(long)]
    theta: f64,
    /// Field dimension (1..=3)
    #[arg(long)]
    n: u32,
    /// Evolution time (>= 0; the theorem1 path needs t > 0)
    #[arg(long)]
    t: f64,
    /// Points per axis (even)
    #[arg(long = "grid-N")]
    grid_n: usize,
    /// Half-width L of the domain [-L, L)^n
    #[arg(long = "grid-L")]
    grid_l: f64,
    /// Assembly route
    #[arg(long, value_enum, default_value_t = PathArg::Spectral)]
    path: PathArg,
    /// Dump the physical field or the spectral data
    #[arg(long, value_enum, default_value_t = SpaceArg::Physical)]
    space: SpaceArg,
    /// Output file; extension selects the format (.csv or .json)
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PathArg {
    Spectral,
    Theorem1,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpaceArg {
    Physical,
    Spectral,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    /// Override every tolerance in the selected suite
    #[arg(long)]
    tol: Option<f64>,
    /// Write the JSON report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Debug)]
enum SuiteArg {
    Residual,
    Semigroup,
    Crosscheck,
    Airy,
    All,
}

/// Parse the process arguments and run; returns the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Kernel(args) => cmd_kernel(&args),
        Command::Solution(args) => cmd_solution(&args),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn fail_args(e: &Error) -> i32 {
    eprintln!("error: {e}");
    2
}

// ---------------------------------------------------------------------------
// kernel
// ---------------------------------------------------------------------------

fn cmd_kernel(args: &KernelArgs) -> i32 {
    // parameter gate: the admissible window needs m >= 1 unless relaxed
    let gate = if args.relax_alpha {
        validate_params_relaxed(args.alpha, 0.0)
    } else {
        validate_params(args.alpha, 0.0)
    };
    if let Err(e) = gate {
        return fail_args(&e);
    }
    let tau = Complex64::new(args.tau_re, args.tau_im);
    let mut lines = vec![KERNEL_CSV_HEADER.to_string()];
    for &r in &args.r {
        let query = match KernelQuery::new(args.alpha, args.n, r, tau) {
            Ok(q) => q,
            Err(e) => return fail_args(&e),
        };
        let evaluated: Result<(KernelEval, KernelMethod), Error> = match args.method {
            MethodArg::Wright => kernel_wright(&query, args.tol),
            MethodArg::Quadrature => {
                kernel_quadrature(&query, args.tol).map(|e| (e, KernelMethod::Quadrature))
            }
            MethodArg::Mellin => {
                kernel_mellin_barnes(&query, &ContourSpec::auto(&query, args.tol))
                    .map(|e| (e, KernelMethod::MellinBarnes))
            }
            MethodArg::Auto => kernel_auto(&query, args.tol),
        };
        let (eval, method) = match evaluated {
            Ok(v) => v,
            Err(e) => return fail_args(&e),
        };
        let record = KernelRecord {
            r,
            re_k: eval.value.re,
            im_k: eval.value.im,
            method: method.as_str(),
            est_error: eval.abs_err,
            alpha: args.alpha,
            n: args.n,
            tau_re: args.tau_re,
            tau_im: args.tau_im,
        };
        lines.push(record.csv_row());
    }
    let body = lines.join("\n") + "\n";
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                return fail_args(&Error::Io(e.to_string()));
            }
        }
        None => print!("{body}"),
    }
    0
}

// ---------------------------------------------------------------------------
// solution
// ---------------------------------------------------------------------------

fn cmd_solution(args: &SolutionArgs) -> i32 {
    let setup = match validate_params(args.alpha, args.theta) {
        Ok(s) => s,
        Err(e) => return fail_args(&e),
    };
    let grid = match GridSpec::new(args.n, args.grid_n, args.grid_l) {
        Ok(g) => g,
        Err(e) => return fail_args(&e),
    };
    let field = match (args.path, args.space) {
        (PathArg::Spectral, SpaceArg::Physical) => solution_field_spectral(&setup, &grid, args.t),
        (PathArg::Spectral, SpaceArg::Spectral) => solution_spectral_data(&setup, &grid, args.t),
        (PathArg::Theorem1, SpaceArg::Physical) => solution_field_theorem1(&setup, &grid, args.t),
        (PathArg::Theorem1, SpaceArg::Spectral) => solution_field_theorem1(&setup, &grid, args.t)
            .and_then(|f| crate::spectral::fft_forward(&f)),
    };
    let field = match field {
        Ok(f) => f,
        Err(e) => return fail_args(&e),
    };
    let inputs = json!({
        "alpha": args.alpha,
        "theta": args.theta,
        "n": args.n,
        "t": args.t,
        "path": match args.path { PathArg::Spectral => "spectral", PathArg::Theorem1 => "theorem1" },
        "space": match args.space { SpaceArg::Physical => "physical", SpaceArg::Spectral => "spectral" },
    });
    let is_json = args.out.extension().map(|e| e == "json").unwrap_or(false);
    let body = if is_json {
        match field_to_json(&field, inputs) {
            Ok(b) => b,
            Err(e) => return fail_args(&e),
        }
    } else {
        let comment = format!(
            "alpha={} theta={} n={} t={} path={} space={} grid_N={} grid_L={}",
            args.alpha,
            args.theta,
            args.n,
            args.t,
            inputs["path"].as_str().unwrap(),
            inputs["space"].as_str().unwrap(),
            args.grid_n,
            args.grid_l
        );
        field_to_csv(&field, &comment)
    };
    if let Err(e) = std::fs::write(&args.out, body) {
        return fail_args(&Error::Io(e.to_string()));
    }
    0
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
struct Check {
    name: String,
    observed: f64,
    tolerance: f64,
    passed: bool,
    metrics: serde_json::Value,
}

fn check(name: &str, observed: f64, default_tol: f64, tol_override: Option<f64>, metrics: serde_json::Value) -> Check {
    let tolerance = tol_override.unwrap_or(default_tol);
    Check { name: name.to_string(), observed, tolerance, passed: observed <= tolerance, metrics }
}

fn residual_suite(tol: Option<f64>) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    let grid = GridSpec::new(1, 48, 20.0)?;

    let s = validate_params(2.0, 0.0)?;
    let report = pde_residual(&s, &grid, 1.0, 1e-4)?;
    checks.push(check(
        "pde_residual_alpha2_theta0",
        report.relative(),
        1e-6,
        tol,
        serde_json::to_value(&report).unwrap(),
    ));
    let halved = pde_residual(&s, &grid, 1.0, 5e-5)?;
    let ratio = report.residual_l2 / halved.residual_l2;
    checks.push(check(
        "pde_residual_dt_halving_ratio_near_4",
        (ratio - 4.0).abs(),
        0.5,
        tol,
        json!({ "ratio": ratio }),
    ));

    let s = validate_params(3.0, 1.0)?;
    let report = pde_residual(&s, &grid, 1.0, 1e-4)?;
    checks.push(check(
        "pde_residual_alpha3_theta1",
        report.relative(),
        1e-5,
        tol,
        serde_json::to_value(&report).unwrap(),
    ));

    let grid = GridSpec::new(1, 128, 16.0)?;
    for (alpha, theta) in [(2.0, 0.0), (2.5, 0.5), (3.0, 1.0), (5.0, 1.0)] {
        let s = validate_params(alpha, theta)?;
        let report = spectral_ode_residual(&s, &grid, 1.0)?;
        checks.push(check(
            &format!("spectral_ode_residual_alpha{alpha}_theta{theta}"),
            report.relative().max(report.residual_linf_scaled),
            1e-12,
            tol,
            serde_json::to_value(&report).unwrap(),
        ));
    }
    Ok(checks)
}

fn semigroup_suite(tol: Option<f64>) -> Result<Vec<Check>, Error> {
    let mut checks = Vec::new();
    let grid = GridSpec::new(1, 128, 12.0)?;
    for (alpha, theta) in [(2.5, 0.5), (3.0, 1.0)] {
        let s = validate_params(alpha, theta)?;
        let delta = delta_ic_check(&s, &grid)?;
        checks.push(check(
            &format!("delta_initial_condition_alpha{alpha}"),
            delta.max_abs_dev,
            0.0,
            tol,
            serde_json::to_value(&delta).unwrap(),
        ));
        let semi = semigroup_check(&s, &grid, 0.5, 0.5)?;
        checks.push(check(
            &format!("semigroup_half_plus_half_alpha{alpha}"),
            semi.max_abs_dev,
            1e-12,
            tol,
            serde_json::to_value(&semi).unwrap(),
        ));
    }
    Ok(checks)
}

fn crosscheck_suite(tol: Option<f64>) -> Result<Vec<Check>, Error> {
    let spec = CrosscheckSpec::default();
    let rows = crosscheck_methods(&spec)?;
    let worst_wq = rows.iter().map(|r| r.rel_wq).fold(0.0, f64::max);
    let worst_wm = rows.iter().map(|r| r.rel_wm).fold(0.0, f64::max);
    Ok(vec![
        check(
            "kernel_three_way_wright_vs_quadrature",
            worst_wq,
            1e-6,
            tol,
            json!({ "rows": rows.len() }),
        ),
        check(
            "kernel_three_way_wright_vs_mellin",
            worst_wm,
            1e-6,
            tol,
            serde_json::to_value(&rows).unwrap(),
        ),
    ])
}

fn airy_suite(tol: Option<f64>) -> Result<Vec<Check>, Error> {
    let grid = GridSpec::new(1, 96, 5.0)?;
    let mut checks = Vec::new();
    for m in [1u32, 2] {
        let report = airy_reference_check(m, &grid, 1.0, 1)?;
        checks.push(check(
            &format!("airy_oracle_m{m}"),
            report.max_abs_dev,
            1e-5,
            tol,
            serde_json::to_value(&report).unwrap(),
        ));
    }
    Ok(checks)
}

fn cmd_verify(args: &VerifyArgs) -> i32 {
    let result: Result<Vec<Check>, Error> = (|| {
        let mut checks = Vec::new();
        match args.suite {
            SuiteArg::Residual => checks.extend(residual_suite(args.tol)?),
            SuiteArg::Semigroup => checks.extend(semigroup_suite(args.tol)?),
            SuiteArg::Crosscheck => checks.extend(crosscheck_suite(args.tol)?),
            SuiteArg::Airy => checks.extend(airy_suite(args.tol)?),
            SuiteArg::All => {
                checks.extend(residual_suite(args.tol)?);
                checks.extend(semigroup_suite(args.tol)?);
                checks.extend(crosscheck_suite(args.tol)?);
                checks.extend(airy_suite(args.tol)?);
            }
        }
        Ok(checks)
    })();
    let checks = match result {
        Ok(c) => c,
        Err(e) => return fail_args(&e),
    };
    let passed = checks.iter().all(|c| c.passed);
    let report = json!({
        "suite": format!("{:?}", args.suite).to_lowercase(),
        "passed": passed,
        "checks": checks,
    });
    let body = serde_json::to_string_pretty(&report).unwrap();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                return fail_args(&Error::Io(e.to_string()));
            }
        }
        None => {
            let mut stdout = std::io::stdout();
            let _ = writeln!(stdout, "{body}");
        }
    }
    if passed {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn kernel_gate_rejects_substable_alpha_by_default() {
        let args = KernelArgs {
            alpha: 1.5,
            n: 1,
            r: vec![1.0],
            tau_re: 1.0,
            tau_im: 0.0,
            method: MethodArg::Auto,
            tol: 1e-9,
            relax_alpha: false,
            out: None,
        };
        assert_eq!(cmd_kernel(&args), 2);
    }

    #[test]
    fn kernel_relaxed_gate_accepts_substable_alpha() {
        let dir = std::env::temp_dir().join("fracdirac_cli_test_kernel.csv");
        let args = KernelArgs {
            alpha: 1.5,
            n: 1,
            r: vec![0.5],
            tau_re: 1.0,
            tau_im: 0.0,
            method: MethodArg::Auto,
            tol: 1e-8,
            relax_alpha: true,
            out: Some(dir.clone()),
        };
        assert_eq!(cmd_kernel(&args), 0);
        let body = std::fs::read_to_string(&dir).unwrap();
        assert!(body.starts_with(KERNEL_CSV_HEADER));
        let _ = std::fs::remove_file(&dir);
    }

    #[test]
    fn kernel_heat_value_row() {
        let path = std::env::temp_dir().join("fracdirac_cli_heat.csv");
        let args = KernelArgs {
            alpha: 2.0,
            n: 1,
            r: vec![0.0],
            tau_re: 1.0,
            tau_im: 0.0,
            method: MethodArg::Auto,
            tol: 1e-9,
            relax_alpha: false,
            out: Some(path.clone()),
        };
        assert_eq!(cmd_kernel(&args), 0);
        let body = std::fs::read_to_string(&path).unwrap();
        let row = body.lines().nth(1).unwrap();
        let re_k: f64 = row.split(',').nth(1).unwrap().parse().unwrap();
        assert!((re_k - 0.282_094_791_773_878_14).abs() < 1e-10);
        assert!(row.contains("wright"));
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn solution_window_violation_exits_2() {
        let args = SolutionArgs {
            alpha: 2.0,
            theta: 0.1,
            n: 1,
            t: 1.0,
            grid_n: 32,
            grid_l: 8.0,
            path: PathArg::Spectral,
            space: SpaceArg::Physical,
            out: std::env::temp_dir().join("fracdirac_never_written.csv"),
        };
        assert_eq!(cmd_solution(&args), 2);
    }

    #[test]
    fn solution_spectral_dump_at_t0_is_one() {
        let path = std::env::temp_dir().join("fracdirac_cli_t0.csv");
        let args = SolutionArgs {
            alpha: 3.0,
            theta: 1.0,
            n: 1,
            t: 0.0,
            grid_n: 16,
            grid_l: 4.0,
            path: PathArg::Spectral,
            space: SpaceArg::Spectral,
            out: path.clone(),
        };
        assert_eq!(cmd_solution(&args), 0);
        let body = std::fs::read_to_string(&path).unwrap();
        for line in body.lines().skip(2) {
            let mut cells = line.split(',');
            let re_s: f64 = cells.nth(1).unwrap().parse().unwrap();
            assert_eq!(re_s, 1.0);
        }
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn solution_theta0_dump_has_zero_imaginary_columns() {
        let path = std::env::temp_dir().join("fracdirac_cli_theta0.json");
        let args = SolutionArgs {
            alpha: 2.5,
            theta: 0.0,
            n: 1,
            t: 1.0,
            grid_n: 64,
            grid_l: 10.0,
            path: PathArg::Spectral,
            space: SpaceArg::Physical,
            out: path.clone(),
        };
        assert_eq!(cmd_solution(&args), 0);
        let doc: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        for v in doc["values"].as_array().unwrap() {
            for (_, coeff) in v["coeffs"].as_object().unwrap() {
                assert!(coeff[1].as_f64().unwrap().abs() < 1e-10);
            }
        }
        let _ = std::fs::remove_file(&path);
    }

    #[test]
    fn verify_residual_suite_passes_and_tight_tol_fails() {
        let ok = cmd_verify(&VerifyArgs { suite: SuiteArg::Residual, tol: None, out: Some(std::env::temp_dir().join("fracdirac_verify_ok.json")) });
        assert_eq!(ok, 0);
        let tight = cmd_verify(&VerifyArgs {
            suite: SuiteArg::Residual,
            tol: Some(1e-15),
            out: Some(std::env::temp_dir().join("fracdirac_verify_tight.json")),
        });
        assert_eq!(tight, 1);
    }
}
