//! Command-line driver: run verification suites and simulations, parse
//! user potentials, emit reports and data files.
//!
//! Exit codes: 0 pass, 1 verification/simulation failure, 2 usage or
//! domain error.

use clap::{Args, Parser, Subcommand};
use qgeo::connection::run_suite_with_options;
use qgeo::flow::{
    anti_heisenberg_evolve, check_dexpdt, damped_identity_residual, hydrogen_delta_l,
    hydrogen_energy, nonstandard_flow_evolve, onshell_u, packet_evolve, radial_shoot, sho_evolve,
    summarize, AntiHeisConfig, Grid, HydrogenConfig, HydrogenError, PacketConfig, ShoConfig,
    WaveFunction,
};
use qgeo::ncalg::{parse_expression, AlgebraSpec, Bindings};
use qgeo::phase::{
    check_geometry, geodesic_integrate, hamilton_integrate, max_deviation, semiclassical_compare,
    PhaseSpec, Poly,
};
use qgeo::report::Report;
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "qgeo", about = "Quantum geodesic verification suites and flows")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a symbolic verification suite.
    Verify(VerifyArgs),
    /// Run a numeric flow scenario (sho, anti-heisenberg, nonstandard, packet).
    Simulate(SimulateArgs),
    /// Hydrogen-like spectrum: closed form vs Numerov shooting.
    Spectrum(SpectrumArgs),
    /// Classical extended-phase-space checks and integrators.
    Phase(PhaseArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite id: prop4.1, prop4.2, prop4.3, cor4.4, prop5.1, thm5.2,
    /// appendixA, prop5.3, lemma5.4
    #[arg(long)]
    suite: String,
    /// Spatial dimension (1..3) for nonrelativistic suites, total
    /// spacetime dimension (2 or 4) for relativistic ones.
    #[arg(long)]
    dim: u8,
    /// Concrete potential expression or "generic".
    #[arg(long, default_value = "generic")]
    potential: String,
    /// Gauge field: "generic" or "zero".
    #[arg(long, default_value = "generic")]
    gauge: String,
    /// Time-independent gauge fields (Lemma 5.4 mode).
    #[arg(long = "static", default_value_t = false)]
    static_gauge: bool,
    /// Seed echoed into the config (reserved for randomized checks).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    /// Scenario: sho | anti-heisenberg | nonstandard | packet
    scenario: String,
    #[arg(long, default_value_t = 1.0)]
    nu: f64,
    #[arg(long, default_value_t = 0.0)]
    kappa: f64,
    #[arg(long, default_value_t = 1.1)]
    u: f64,
    #[arg(long, default_value_t = 0.5)]
    beta: f64,
    /// Grid points (power of two).
    #[arg(long, default_value_t = 1024)]
    grid: usize,
    /// Grid half-width.
    #[arg(long = "L", default_value_t = 10.0)]
    half_width: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    #[arg(long, default_value_t = 10000)]
    steps: usize,
    #[arg(long = "s-max", default_value_t = 5.0)]
    s_max: f64,
    /// Oscillator levels for the nonstandard flow.
    #[arg(long, default_value_t = 12)]
    levels: usize,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Spectrum family (only "hydrogen").
    family: String,
    #[arg(long = "Z", default_value_t = 1.0)]
    z: f64,
    #[arg(long, default_value_t = 1)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Energy parameter in units of m c^2 (ignored with --onshell).
    #[arg(long, default_value_t = 1.0)]
    u: f64,
    /// Use the on-shell energy u_{n,l}.
    #[arg(long, default_value_t = false)]
    onshell: bool,
    #[arg(long, default_value_t = 7.2973525693e-3)]
    alpha: f64,
    #[arg(long, default_value_t = 24000)]
    mesh: usize,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PhaseArgs {
    /// Degrees of freedom.
    #[arg(long, default_value_t = 1)]
    n: u8,
    /// Potential V(x) for h = p^2/2m + V, or "sho".
    #[arg(long, default_value = "sho")]
    potential: String,
    #[arg(long = "t-max", default_value_t = 10.0)]
    t_max: f64,
    #[arg(long, default_value_t = 1e-3)]
    dt: f64,
    /// Initial phase-space point, comma separated (defaults to
    /// (1, 0, ...)).
    #[arg(long)]
    x0: Option<String>,
    /// Also run the semiclassical comparison against the quantum calculus.
    #[arg(long, default_value_t = true)]
    semiclassical: bool,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Phase(a) => cmd_phase(a),
    };
    match code {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

/// Write-then-rename so failures never leave partial files.
fn write_atomic(path: &Path, contents: &str) -> Result<(), String> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, contents).map_err(|e| e.to_string())?;
    std::fs::rename(&tmp, path).map_err(|e| e.to_string())
}

fn emit(out: Option<&PathBuf>, value: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    match out {
        Some(path) => write_atomic(path, &text),
        None => {
            println!("{}", text);
            Ok(())
        }
    }
}

/// Deterministic results plus a separate timing field.
fn report_json(config: Value, report: &Report) -> Value {
    let results: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "identity_id": e.identity_id,
                "calculus": e.calculus,
                "dimension": e.dimension,
                "status": if e.status == qgeo::report::Status::Pass { "pass" } else { "fail" },
                "residual_terms": e.residual_terms,
            })
        })
        .collect();
    let timing: serde_json::Map<String, Value> = report
        .entries
        .iter()
        .filter_map(|e| e.elapsed_ms.map(|ms| (e.identity_id.clone(), json!(ms))))
        .collect();
    json!({
        "config": config,
        "results": results,
        "timing": { "elapsed_ms": timing },
    })
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode, String> {
    let bindings = parse_bindings(&a)?;
    let report = run_suite_with_options(&a.suite, a.dim, bindings.as_ref(), a.static_gauge)
        .map_err(|e| e.to_string())?;
    let config = json!({
        "command": "verify",
        "suite": a.suite,
        "dim": a.dim,
        "potential": a.potential,
        "gauge": a.gauge,
        "static": a.static_gauge,
        "seed": a.seed,
    });
    emit(a.out.as_ref(), &report_json(config, &report))?;
    Ok(exit_when(report.all_pass()))
}

fn parse_bindings(a: &VerifyArgs) -> Result<Option<Bindings>, String> {
    let mut bindings: Option<Bindings> = None;
    if a.potential != "generic" {
        if !(1..=3).contains(&a.dim) {
            return Err("--potential expressions apply to nonrelativistic suites".into());
        }
        let spec = AlgebraSpec::nonrel(a.dim);
        let v = parse_expression(&a.potential, spec).map_err(|e| e.to_string())?;
        bindings = Some(Bindings::potential(v).map_err(|e| e.to_string())?);
    }
    if a.gauge == "zero" {
        let spatial = match a.dim {
            2 => 1,
            4 => 3,
            _ => return Err("--gauge zero applies to relativistic suites (dim 2 or 4)".into()),
        };
        let spec = if a.static_gauge {
            AlgebraSpec::relativistic_static(spatial)
        } else {
            AlgebraSpec::relativistic(spatial)
        };
        bindings = Some(Bindings::zero_gauge(spec));
    } else if a.gauge != "generic" {
        return Err(format!("unknown --gauge '{}'", a.gauge));
    }
    Ok(bindings)
}

fn cmd_simulate(a: SimulateArgs) -> Result<ExitCode, String> {
    match a.scenario.as_str() {
        "sho" => {
            let grid = Grid::new(a.half_width, a.grid);
            let cfg = ShoConfig {
                nu: a.nu,
                mass: 1.0,
                hbar: 1.0,
                dt: a.dt,
                steps: a.steps,
            };
            // Displaced coherent state.
            let sigma = (cfg.hbar / (2.0 * cfg.mass * cfg.nu)).sqrt();
            let psi0 = WaveFunction::gaussian(&grid, 1.0, 0.0, sigma, cfg.hbar);
            let result = sho_evolve(&cfg, &grid, &psi0);
            let norms = result.series.channel("norm").unwrap();
            let drift = norms
                .iter()
                .map(|v| (v - norms[0]).abs())
                .fold(0.0, f64::max);
            let residual = check_dexpdt(&result.series, cfg.mass, cfg.nu);
            let tol = a.tolerance.unwrap_or(1e-10);
            let summary = json!({
                "config": {
                    "command": "simulate", "scenario": "sho", "nu": a.nu,
                    "grid": a.grid, "L": a.half_width, "dt": a.dt, "steps": a.steps,
                    "seed": a.seed,
                },
                "observables": summarize(&result.series),
                "norm_drift": drift,
                "dexpdt_residual": residual,
                "warnings": result.warnings,
            });
            write_series_and_summary(&a.out, &result.series, &summary)?;
            Ok(exit_when(drift <= tol))
        }
        "anti-heisenberg" => {
            let cfg = AntiHeisConfig {
                chi0: 1.0,
                psi0: 0.0,
                nu: a.nu,
                mass: 1.0,
                kappa: a.kappa,
                dt: a.dt,
                steps: a.steps,
            };
            let series = anti_heisenberg_evolve(&cfg);
            let residual = damped_identity_residual(&series, cfg.nu, cfg.kappa);
            let tol = a.tolerance.unwrap_or(1e-8);
            let summary = json!({
                "config": {
                    "command": "simulate", "scenario": "anti-heisenberg",
                    "nu": a.nu, "kappa": a.kappa, "dt": a.dt, "steps": a.steps,
                    "seed": a.seed,
                },
                "observables": summarize(&series),
                "damped_identity_residual": residual,
            });
            write_series_and_summary(&a.out, &series, &summary)?;
            Ok(exit_when(residual <= tol))
        }
        "nonstandard" => {
            if a.levels < 8 {
                return Err("nonstandard flow needs at least 8 levels".into());
            }
            let k = a.levels;
            let mut a0 = vec![vec![num_complex::Complex64::new(0.0, 0.0); k]; k];
            for (i, row) in a0.iter_mut().enumerate().take(k - 2) {
                row[i] = num_complex::Complex64::new(1.0, 0.0);
            }
            let result = nonstandard_flow_evolve(&a0, a.nu, a.dt, a.steps);
            let t = result.elapsed;
            let mut worst = 0.0f64;
            for (n, phase) in result.phases.iter().enumerate().take(k - 2) {
                let expect = -(n as f64 + 0.5) * a.nu * t;
                worst = worst.max((phase - expect).abs() / expect.abs().max(1e-300));
            }
            let tol = a.tolerance.unwrap_or(1e-6);
            let summary = json!({
                "config": {
                    "command": "simulate", "scenario": "nonstandard",
                    "nu": a.nu, "dt": a.dt, "steps": a.steps, "levels": a.levels,
                    "seed": a.seed,
                },
                "phases": result.phases,
                "magnitudes": result.magnitudes,
                "phase_rate_rel_error": worst,
                "truncation_warning": result.truncation_warning,
            });
            emit(a.out.as_ref(), &summary)?;
            Ok(exit_when(worst <= tol))
        }
        "packet" => {
            let cfg = PacketConfig {
                u: a.u,
                beta: a.beta,
                s_max: a.s_max,
                ..PacketConfig::default()
            };
            let result = packet_evolve(&cfg);
            let tol = a.tolerance.unwrap_or(1e-8);
            let summary = json!({
                "config": {
                    "command": "simulate", "scenario": "packet",
                    "u": a.u, "beta": a.beta, "s_max": a.s_max, "seed": a.seed,
                },
                "observables": {
                    "x": result.x_fit,
                    "t": result.t_fit,
                },
                "p_expect": result.p_expect,
                "velocity": result.velocity,
                "triangle_residual": result.triangle_residual,
                "warnings": result.warnings,
            });
            write_series_and_summary(&a.out, &result.series, &summary)?;
            let ok = result.x_fit.max_residual <= tol && result.t_fit.max_residual <= tol;
            Ok(exit_when(ok))
        }
        other => Err(format!(
            "unknown scenario '{}'; expected sho, anti-heisenberg, nonstandard or packet",
            other
        )),
    }
}

fn write_series_and_summary(
    out: &Option<PathBuf>,
    series: &qgeo::flow::TimeSeries,
    summary: &Value,
) -> Result<(), String> {
    match out {
        Some(path) => {
            let mut csv = Vec::new();
            series.write_csv(&mut csv).map_err(|e| e.to_string())?;
            let csv_path = path.with_extension("csv");
            write_atomic(&csv_path, &String::from_utf8(csv).unwrap())?;
            emit(Some(path), summary)
        }
        None => emit(None, summary),
    }
}

fn exit_when(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_spectrum(a: SpectrumArgs) -> Result<ExitCode, String> {
    if a.family != "hydrogen" {
        return Err(format!("unknown spectrum family '{}'", a.family));
    }
    let domain = |e: HydrogenError| e.to_string();
    let delta = hydrogen_delta_l(a.z, a.l, a.alpha).map_err(domain)?;
    let u = if a.onshell {
        onshell_u(a.z, a.n, a.l, a.alpha).map_err(domain)?
    } else {
        a.u
    };
    let closed = hydrogen_energy(a.z, a.n, a.l, u, a.alpha).map_err(domain)?;
    let cfg = HydrogenConfig {
        z: a.z,
        n: a.n,
        l: a.l,
        u,
        alpha: a.alpha,
    };
    let shot = radial_shoot(&cfg, a.mesh).map_err(domain)?;
    let rel = (shot.eigenvalue - closed).abs() / closed;
    let tol = a.tolerance.unwrap_or(1e-6);
    let summary = json!({
        "config": {
            "command": "spectrum", "family": "hydrogen",
            "Z": a.z, "n": a.n, "l": a.l, "u": u, "onshell": a.onshell,
            "alpha": a.alpha, "mesh": a.mesh,
        },
        "delta_l": delta,
        "closed_form_eigenvalue": closed,
        "shooting_eigenvalue": shot.eigenvalue,
        "relative_difference": rel,
        "nodes": shot.nodes,
    });
    emit(a.out.as_ref(), &summary)?;
    Ok(exit_when(rel <= tol))
}

fn cmd_phase(a: PhaseArgs) -> Result<ExitCode, String> {
    let n = a.n as usize;
    let (spec, potential_label) = if a.potential == "sho" {
        (PhaseSpec::sho(n), "sho".to_string())
    } else {
        // Parse V(x) over the nonrelativistic algebra, then transplant to
        // a commutative polynomial in the 2n phase-space variables.
        let aspec = AlgebraSpec::nonrel(a.n);
        let v = parse_expression(&a.potential, aspec).map_err(|e| e.to_string())?;
        let vars = 2 * n;
        let inv_2m = qgeo::scalar::Coefficient::from_ratio(1, 2)
            * qgeo::scalar::Coefficient::symbol_pow(qgeo::scalar::Symbol::Mass, -1);
        let mut h = Poly::zero(vars);
        for i in 0..n {
            let p = Poly::var(vars, i + n);
            h = h + (&p * &p).scale(&inv_2m);
        }
        for (key, c) in v.terms() {
            if !key.momenta.is_empty() || key.has_generic_atoms() {
                return Err("phase potential must be a polynomial in the coordinates".into());
            }
            let mut expo = vec![0u32; vars];
            for (atom, pow) in &key.position {
                if let qgeo::ncalg::PositionAtom::Coordinate(idx) = atom {
                    expo[(*idx - 1) as usize] += pow;
                }
            }
            h.add_term(expo, c.clone());
        }
        (PhaseSpec::canonical(n, h), a.potential.clone())
    };

    let report = check_geometry(&spec);
    let bind = qgeo::ncalg::NumericBindings::default();
    let mut x0 = vec![0.0; 2 * n];
    x0[0] = 1.0;
    if let Some(s) = &a.x0 {
        let vals: Result<Vec<f64>, _> = s.split(',').map(|t| t.trim().parse::<f64>()).collect();
        let vals = vals.map_err(|e| format!("bad --x0: {}", e))?;
        if vals.len() != 2 * n {
            return Err(format!("--x0 needs {} components", 2 * n));
        }
        x0 = vals;
    }
    let geo = geodesic_integrate(&spec, &bind, &x0, a.t_max, a.dt).map_err(|e| e.to_string())?;
    let ham = hamilton_integrate(&spec, &bind, &x0, a.t_max, a.dt).map_err(|e| e.to_string())?;
    let deviation = max_deviation(&geo, &ham);
    let tol = a.tolerance.unwrap_or(1e-8);

    let semiclassical = if a.semiclassical && a.potential == "sho" {
        let aspec = AlgebraSpec::nonrel(a.n);
        let mut v = qgeo::ncalg::AlgebraElement::zero(aspec);
        for i in 1..=a.n {
            let x = qgeo::ncalg::AlgebraElement::coordinate(aspec, i);
            v = v + (&x * &x);
        }
        let v = v.scale(
            &(qgeo::scalar::Coefficient::from_ratio(1, 2)
                * qgeo::scalar::Coefficient::symbol(qgeo::scalar::Symbol::Mass)
                * qgeo::scalar::Coefficient::symbol_pow(qgeo::scalar::Symbol::Nu, 2)),
        );
        let out = semiclassical_compare(a.n, &v).map_err(|e| e.to_string())?;
        Some(out)
    } else {
        None
    };

    let geometry_pass = report.all_pass();
    let semi_pass = semiclassical
        .as_ref()
        .map(|o| o.report.all_pass())
        .unwrap_or(true);

    let config = json!({
        "command": "phase", "n": a.n, "potential": potential_label,
        "t_max": a.t_max, "dt": a.dt, "x0": x0,
    });
    let mut doc = report_json(config, &report);
    doc["trajectory_deviation"] = json!(deviation);
    if let Some(o) = &semiclassical {
        let semi = report_json(json!({}), &o.report);
        doc["semiclassical"] = json!({
            "results": semi["results"],
            "sign_convention": format!("{:?}", o.sign),
        });
    }
    if let Some(path) = &a.out {
        // Trajectory CSV: t, then both integrators side by side.
        let mut csv = String::new();
        csv.push('t');
        for i in 1..=2 * n {
            csv.push_str(&format!(",geo_x{}", i));
        }
        for i in 1..=2 * n {
            csv.push_str(&format!(",ham_x{}", i));
        }
        csv.push('\n');
        for (j, t) in geo.times.iter().enumerate() {
            csv.push_str(&format!("{:.16e}", t));
            for v in &geo.states[j] {
                csv.push_str(&format!(",{:.16e}", v));
            }
            for v in &ham.states[j] {
                csv.push_str(&format!(",{:.16e}", v));
            }
            csv.push('\n');
        }
        write_atomic(&path.with_extension("csv"), &csv)?;
    }
    emit(a.out.as_ref(), &doc)?;
    Ok(exit_when(geometry_pass && semi_pass && deviation <= tol))
}
