//! Acceptance suite: every release criterion at its stated tolerance,
//! one pass/fail line per criterion (run with --nocapture to see them).

use qgeo::calculus::CalculusSpec;
use qgeo::connection::{mutation_battery, run_suite};
use qgeo::flow::{
    check_dexpdt, hydrogen_delta_l, hydrogen_energy, onshell_u, packet_evolve, radial_shoot,
    sho_evolve, Grid, HydrogenConfig, HydrogenError, PacketConfig, ShoConfig, WaveFunction,
};
use qgeo::ncalg::{AlgebraElement, AlgebraSpec, Bindings, GridRepresentation, NumericBindings};
use qgeo::oracle::{homomorphism_battery, report_matrix_residual};
use qgeo::phase::{
    check_geometry, geodesic_integrate, hamilton_integrate, max_deviation, semiclassical_compare,
    PhaseSpec, Poly,
};
use qgeo::scalar::{Coefficient, Symbol};
use std::time::Instant;

const ALPHA: f64 = 7.2973525693e-3;

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "[{}] {}: {}",
        if pass { "PASS" } else { "FAIL" },
        criterion,
        detail
    );
    assert!(pass, "{}: {}", criterion, detail);
}

fn sho_potential(spec: AlgebraSpec) -> AlgebraElement {
    let mut v = AlgebraElement::zero(spec);
    for i in spec.spatial_indices() {
        let x = AlgebraElement::coordinate(spec, i);
        v = v + (&x * &x);
    }
    v.scale(
        &(Coefficient::from_ratio(1, 2)
            * Coefficient::symbol(Symbol::Mass)
            * Coefficient::symbol_pow(Symbol::Nu, 2)),
    )
}

/// Criterion 1: every identity of the nonrelativistic suites reduces to
/// the canonical zero for generic V at n = 1, 2, 3.
#[test]
fn criterion_1_symbolic_nonrelativistic_suite() {
    let t0 = Instant::now();
    let mut total = 0;
    for suite in ["prop4.1", "prop4.2", "prop4.3", "cor4.4"] {
        for dim in 1..=3u8 {
            let report = run_suite(suite, dim, None).expect("suite runs");
            total += report.entries.len();
            for f in report.failures() {
                verdict(
                    "criterion 1",
                    false,
                    &format!("{} dim {}: {} failed", suite, dim, f.identity_id),
                );
            }
        }
    }
    verdict(
        "criterion 1",
        true,
        &format!(
            "all {} nonrelativistic identities are canonical zeros at n = 1..3 ({:.2?})",
            total,
            t0.elapsed()
        ),
    );
}

/// Criterion 2: the relativistic suite at 1+3 with generic A_a.
#[test]
fn criterion_2_symbolic_relativistic_suite() {
    let t0 = Instant::now();
    let mut total = 0;
    for suite in ["prop5.1", "thm5.2", "appendixA", "prop5.3", "lemma5.4"] {
        let report = run_suite(suite, 4, None).expect("suite runs");
        total += report.entries.len();
        for f in report.failures() {
            verdict(
                "criterion 2",
                false,
                &format!("{}: {} failed", suite, f.identity_id),
            );
        }
    }
    verdict(
        "criterion 2",
        true,
        &format!(
            "all {} relativistic identities are canonical zeros at 1+3 ({:.2?})",
            total,
            t0.elapsed()
        ),
    );
}

/// Criterion 3: sign flips of single built-in table entries are caught by
/// at least one suite, over at least 10 programmatic mutations.
#[test]
fn criterion_3_mutation_sensitivity() {
    let battery = mutation_battery(2, 4);
    let undetected: Vec<&String> = battery
        .iter()
        .filter(|(_, detected)| !detected)
        .map(|(name, _)| name)
        .collect();
    let pass = battery.len() >= 10 && undetected.is_empty();
    verdict(
        "criterion 3",
        pass,
        &format!(
            "{} mutations, {} undetected {:?}",
            battery.len(),
            undetected.len(),
            undetected
        ),
    );
}

/// Criterion 4: numeric oracle at grid size 256: every symbolic zero of
/// criterion 1, after SHO substitution and slot-wise matrix
/// representation, has residual <= 1e-8; additionally the representation
/// homomorphism M(a)M(b) = M(ab) holds on a battery of engine products.
#[test]
fn criterion_4_matrix_oracle() {
    let spec = AlgebraSpec::nonrel(1);
    let bindings = Bindings::potential(sho_potential(spec)).unwrap();
    let rep = GridRepresentation::new(256, 10.0, NumericBindings::default());
    let mut worst: f64 = 0.0;
    for suite in ["prop4.1", "prop4.2", "prop4.3", "cor4.4"] {
        let report = run_suite(suite, 1, None).expect("suite runs");
        worst = worst.max(
            report_matrix_residual(&report.identities, &bindings, &rep).expect("representable"),
        );
    }
    let x = AlgebraElement::coordinate(spec, 1);
    let p = AlgebraElement::momentum(spec, 1);
    let h_concrete = {
        let h = qgeo::connection::build_hamiltonian(&CalculusSpec::nonrel(1));
        h.substitute(&bindings).unwrap()
    };
    let elements = vec![
        x.clone(),
        p.clone(),
        &x * &x,
        &p * &p,
        &x * &p,
        &(&x * &p) * &p + x.scale(&Coefficient::from_int(3)),
        h_concrete,
    ];
    let homo = homomorphism_battery(&elements, &rep).expect("representable");
    let pass = worst <= 1e-8 && homo <= 1e-8;
    verdict(
        "criterion 4",
        pass,
        &format!(
            "identity residual {:.3e}, homomorphism residual {:.3e} (tolerance 1e-8)",
            worst, homo
        ),
    );
}

/// Criterion 5: SHO flow at dt = 1e-3, N = 1024, L = 10: norm drift
/// < 1e-10 over 10^4 steps; the d<p^2>/dt identity residual < 1e-3; the
/// residual decreases >= 4x when dt halves.
#[test]
fn criterion_5_sho_flow() {
    let grid = Grid::new(10.0, 1024);
    let run = |dt: f64, steps: usize| {
        let cfg = ShoConfig {
            nu: 1.0,
            mass: 1.0,
            hbar: 1.0,
            dt,
            steps,
        };
        let sigma = (0.5f64).sqrt();
        let psi0 = WaveFunction::gaussian(&grid, 1.0, 0.0, sigma, 1.0);
        let r = sho_evolve(&cfg, &grid, &psi0);
        let norms = r.series.channel("norm").unwrap();
        let drift = norms
            .iter()
            .map(|v| (v - norms[0]).abs())
            .fold(0.0, f64::max);
        (check_dexpdt(&r.series, 1.0, 1.0), drift)
    };
    let (residual, drift) = run(1e-3, 10_000);
    // halving into the stated dt: residual(2 dt) / residual(dt) >= 4
    let (residual_double, _) = run(2e-3, 5_000);
    let ratio = residual_double / residual;
    let pass = drift < 1e-10 && residual < 1e-3 && ratio >= 4.0;
    verdict(
        "criterion 5",
        pass,
        &format!(
            "norm drift {:.3e} (< 1e-10), residual {:.3e} (< 1e-3), halving ratio {:.5} (>= 4)",
            drift, residual, ratio
        ),
    );
}

/// Criterion 6: the relativistic packet at u = 1.1, m = c = hbar = 1.
#[test]
fn criterion_6_relativistic_packet() {
    let t0 = Instant::now();
    let r = packet_evolve(&PacketConfig::default());
    let p_ok = (r.p_expect - 0.458258).abs() <= 1e-6;
    let t_ok = (r.t_fit.slope - 1.100000).abs() <= 1e-6 && r.t_fit.intercept.abs() <= 1e-8;
    let v_ok = (r.velocity - 0.416598).abs() <= 1e-6;
    let affine_ok = r.x_fit.max_residual < 1e-8;
    let pass = p_ok && t_ok && v_ok && affine_ok && t0.elapsed().as_secs() < 10;
    verdict(
        "criterion 6",
        pass,
        &format!(
            "<p> = {:.9}, <t>/s = {:.9}, v = {:.9}, nonlinearity {:.3e} ({:.2?})",
            r.p_expect,
            r.t_fit.slope,
            r.velocity,
            r.x_fit.max_residual,
            t0.elapsed()
        ),
    );
}

/// Criterion 7: hydrogen-like spectrum: shooting vs Eq. closed form.
#[test]
fn criterion_7_hydrogen_spectrum() {
    let pairs = [(1u32, 0u32), (2, 0), (2, 1)];
    let mut detail = String::new();
    // Z = 1: relative error < 1e-7.
    for (n, l) in pairs {
        let cfg = HydrogenConfig {
            z: 1.0,
            n,
            l,
            u: 1.0,
            alpha: ALPHA,
        };
        let shot = radial_shoot(&cfg, 24_000).expect("bracket");
        let exact = hydrogen_energy(1.0, n, l, 1.0, ALPHA).unwrap();
        let rel = (shot.eigenvalue - exact).abs() / exact;
        detail.push_str(&format!("Z=1 ({},{}) rel {:.2e}; ", n, l, rel));
        verdict(
            "criterion 7",
            rel < 1e-7,
            &format!("Z=1 ({},{}): relative error {:.3e} (< 1e-7)", n, l, rel),
        );
    }
    // Z = 50: relative error < 1e-6.
    for (n, l) in pairs {
        let cfg = HydrogenConfig {
            z: 50.0,
            n,
            l,
            u: 1.0,
            alpha: ALPHA,
        };
        let shot = radial_shoot(&cfg, 24_000).expect("bracket");
        let exact = hydrogen_energy(50.0, n, l, 1.0, ALPHA).unwrap();
        let rel = (shot.eigenvalue - exact).abs() / exact;
        detail.push_str(&format!("Z=50 ({},{}) rel {:.2e}; ", n, l, rel));
        verdict(
            "criterion 7",
            rel < 1e-6,
            &format!("Z=50 ({},{}): relative error {:.3e} (< 1e-6)", n, l, rel),
        );
    }
    // On-shell: E = m c^2 / 2 at u = u_{n,l} to 1e-9.
    for (n, l) in pairs {
        let u = onshell_u(1.0, n, l, ALPHA).unwrap();
        let e = hydrogen_energy(1.0, n, l, u, ALPHA).unwrap();
        verdict(
            "criterion 7",
            (e - 0.5).abs() < 1e-9,
            &format!("on-shell ({},{}): E = {:.12} (= 1/2 to 1e-9)", n, l, e),
        );
    }
    // Supercritical Z rejected.
    let rejected = matches!(
        hydrogen_delta_l(100.0, 0, ALPHA),
        Err(HydrogenError::Supercritical)
    ) && matches!(
        radial_shoot(
            &HydrogenConfig {
                z: 100.0,
                n: 1,
                l: 0,
                u: 1.0,
                alpha: ALPHA
            },
            4000
        ),
        Err(HydrogenError::Supercritical)
    );
    verdict(
        "criterion 7",
        rejected,
        &format!("supercritical Z rejected; {}", detail),
    );
}

/// Criterion 8: phase module: exact polynomial identities for SHO and a
/// random quartic h at n = 2; SHO trajectory deviation < 1e-8;
/// semiclassical comparison passes for n <= 3.
#[test]
fn criterion_8_phase_module() {
    // SHO, n = 2.
    let sho = PhaseSpec::sho(2);
    let r1 = check_geometry(&sho);
    verdict(
        "criterion 8",
        r1.all_pass(),
        "extended-geometry identities are exact zeros for the SHO at n = 2",
    );
    // Random quartic h at n = 2 (fixed coefficients, full mixing).
    let vars = 4;
    let x1 = Poly::var(vars, 0);
    let x2 = Poly::var(vars, 1);
    let p1 = Poly::var(vars, 2);
    let p2 = Poly::var(vars, 3);
    let h = (&p1 * &p1).scale(&Coefficient::from_ratio(3, 7))
        + (&p2 * &(&p2 * &p2)).scale(&Coefficient::from_ratio(-2, 5))
        + (&(&x1 * &x1) * &(&x2 * &p1)).scale(&Coefficient::from_ratio(5, 3))
        + x1.pow(4).scale(&Coefficient::from_ratio(1, 4))
        + (&x2 * &p2).scale(&Coefficient::from_int(2))
        + (&(&x1 * &p1) * &(&x2 * &p2)).scale(&Coefficient::from_ratio(-7, 11));
    let quartic = PhaseSpec::canonical(2, h);
    let r2 = check_geometry(&quartic);
    verdict(
        "criterion 8",
        r2.all_pass(),
        "extended-geometry identities are exact zeros for a quartic h at n = 2",
    );
    // SHO trajectories: dt = 1e-3, t_max = 10, deviation < 1e-8.
    let bind = NumericBindings::default();
    let spec1 = PhaseSpec::sho(1);
    let geo = geodesic_integrate(&spec1, &bind, &[1.0, 0.0], 10.0, 1e-3).unwrap();
    let ham = hamilton_integrate(&spec1, &bind, &[1.0, 0.0], 10.0, 1e-3).unwrap();
    let dev = max_deviation(&geo, &ham);
    verdict(
        "criterion 8",
        dev < 1e-8,
        &format!("autoparallel vs Hamilton deviation {:.3e} (< 1e-8)", dev),
    );
    // Semiclassical comparison for n <= 3.
    for n in 1..=3u8 {
        let spec = AlgebraSpec::nonrel(n);
        let out = semiclassical_compare(n, &sho_potential(spec)).unwrap();
        verdict(
            "criterion 8",
            out.report.all_pass(),
            &format!("semiclassical comparison passes at n = {}", n),
        );
    }
    verdict("criterion 8", true, "phase module complete");
}
