//! Numeric flow tests: split-step Schroedinger evolution against Ehrenfest
//! oracles, expectation-identity residual scaling, packet expectations
//! against high-precision closed forms, and the shooting solver's
//! convergence order.

use qgeo::flow::{
    check_dexpdt, hydrogen_delta_l, hydrogen_energy, packet_evolve, radial_shoot, sho_evolve,
    Grid, HydrogenConfig, PacketConfig, ShoConfig, WaveFunction,
};

const ALPHA: f64 = 7.2973525693e-3;

fn coherent(grid: &Grid, nu: f64, x0: f64) -> WaveFunction {
    let sigma = (1.0 / (2.0 * nu)).sqrt();
    WaveFunction::gaussian(grid, x0, 0.0, sigma, 1.0)
}

#[test]
fn ground_state_energy_is_half_hbar_nu() {
    let grid = Grid::new(10.0, 512);
    let cfg = ShoConfig {
        nu: 1.0,
        mass: 1.0,
        hbar: 1.0,
        dt: 1e-3,
        steps: 500,
    };
    let psi0 = coherent(&grid, cfg.nu, 0.0);
    let r = sho_evolve(&cfg, &grid, &psi0);
    let p2 = r.series.channel("p2").unwrap();
    let x = r.series.channel("x").unwrap();
    // <h> = <p^2>/2m + (1/2) m nu^2 <x^2>; for the ground state
    // <p^2> = hbar m nu / 2 and <x> stays 0.
    for (i, v) in p2.iter().enumerate() {
        assert!((v - 0.5).abs() < 1e-6, "step {}: <p^2> = {}", i, v);
        assert!(x[i].abs() < 1e-9);
    }
}

#[test]
fn displaced_gaussian_follows_ehrenfest_oracle() {
    let grid = Grid::new(12.0, 1024);
    let cfg = ShoConfig {
        nu: 1.3,
        mass: 1.0,
        hbar: 1.0,
        dt: 1e-3,
        steps: 4000,
    };
    let psi0 = coherent(&grid, cfg.nu, 1.0);
    let r = sho_evolve(&cfg, &grid, &psi0);
    let xs = r.series.channel("x").unwrap();
    let ps = r.series.channel("p").unwrap();

    // Independent oracle: RK4 on the Ehrenfest system
    // d<x>/dt = <p>/m, d<p>/dt = -m nu^2 <x>.
    let mut ex = 1.0;
    let mut ep = 0.0;
    let f = |x: f64, p: f64| (p / cfg.mass, -cfg.mass * cfg.nu * cfg.nu * x);
    for i in 0..=cfg.steps {
        assert!((xs[i] - ex).abs() < 1e-6, "t = {}: {} vs {}", i, xs[i], ex);
        assert!((ps[i] - ep).abs() < 1e-6);
        let h = cfg.dt;
        let (k1x, k1p) = f(ex, ep);
        let (k2x, k2p) = f(ex + 0.5 * h * k1x, ep + 0.5 * h * k1p);
        let (k3x, k3p) = f(ex + 0.5 * h * k2x, ep + 0.5 * h * k2p);
        let (k4x, k4p) = f(ex + h * k3x, ep + h * k3p);
        ex += h * (k1x + 2.0 * k2x + 2.0 * k3x + k4x) / 6.0;
        ep += h * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0;
    }
}

#[test]
fn free_packet_conserves_momentum() {
    let grid = Grid::new(20.0, 1024);
    let cfg = ShoConfig {
        nu: 0.0,
        mass: 1.0,
        hbar: 1.0,
        dt: 1e-3,
        steps: 2000,
    };
    let psi0 = WaveFunction::gaussian(&grid, -3.0, 1.5, 1.0, 1.0);
    let r = sho_evolve(&cfg, &grid, &psi0);
    let ps = r.series.channel("p").unwrap();
    for v in ps {
        assert!((v - ps[0]).abs() < 1e-10);
    }
}

#[test]
fn dexpdt_residual_scales_as_dt_squared() {
    let grid = Grid::new(10.0, 512);
    let run = |dt: f64| {
        let cfg = ShoConfig {
            nu: 1.0,
            mass: 1.0,
            hbar: 1.0,
            dt,
            steps: (1.0 / dt) as usize,
        };
        let psi0 = coherent(&grid, cfg.nu, 1.0);
        let r = sho_evolve(&cfg, &grid, &psi0);
        check_dexpdt(&r.series, cfg.mass, cfg.nu)
    };
    let r1 = run(4e-3);
    let r2 = run(2e-3);
    let ratio = r1 / r2;
    assert!(
        ratio > 3.5 && ratio < 4.5,
        "expected ~4x per halving, got {} ({} -> {})",
        ratio,
        r1,
        r2
    );
}

#[test]
fn stationary_state_identity_is_flat() {
    let grid = Grid::new(10.0, 512);
    let cfg = ShoConfig {
        nu: 1.0,
        mass: 1.0,
        hbar: 1.0,
        dt: 1e-3,
        steps: 300,
    };
    let psi0 = coherent(&grid, cfg.nu, 0.0);
    let r = sho_evolve(&cfg, &grid, &psi0);
    let p2 = r.series.channel("p2").unwrap();
    let spread = p2.iter().map(|v| (v - p2[0]).abs()).fold(0.0, f64::max);
    assert!(spread < 1e-7, "eigenstate <p^2> moved by {}", spread);
}

#[test]
fn packet_expectations_freeze() {
    // u = 1.1, m = c = hbar = 1:
    // <p>   = sqrt(0.21)           = 0.45825756949558400...
    // <t>/s = 1.1
    // v     = sqrt(1 - (1/1.1)^2)  = 0.41659779045053091...
    let r = packet_evolve(&PacketConfig::default());
    assert!((r.p_expect - 0.458_257_569_495_584_0).abs() < 1e-12);
    assert!((r.t_fit.slope - 1.1).abs() < 1e-12);
    assert!((r.velocity - 0.416_597_790_450_530_91).abs() < 1e-12);
    assert!(r.x_fit.intercept.abs() < 1e-14);
    assert!(r.x_fit.max_residual < 1e-10);
    assert!(r.triangle_residual < 1e-12);
}

#[test]
fn delta_l_frozen_oracle_value() {
    // High-precision evaluation of l + 1/2 - sqrt((l+1/2)^2 - Z^2 alpha^2)
    // at Z = 1, l = 0: 5.325419052947826e-5.
    let d = hydrogen_delta_l(1.0, 0, ALPHA).unwrap();
    assert!((d - 5.325_419_052_947_826e-5).abs() < 1e-18);
}

#[test]
fn shooting_converges_at_fourth_order() {
    let cfg = HydrogenConfig {
        z: 1.0,
        n: 1,
        l: 0,
        u: 1.0,
        alpha: ALPHA,
    };
    let exact = hydrogen_energy(1.0, 1, 0, 1.0, ALPHA).unwrap();
    let errs: Vec<f64> = [300usize, 600, 1200]
        .iter()
        .map(|&mesh| (radial_shoot(&cfg, mesh).unwrap().eigenvalue - exact).abs())
        .collect();
    for w in errs.windows(2) {
        let order = (w[0] / w[1]).log2();
        assert!(order >= 3.5, "observed order {} ({:?})", order, errs);
    }
}

#[test]
fn shooting_eigenfunction_has_laguerre_shape() {
    // (2,0) at Z = 1: w(r) ~ r^{l'+1} e^{-kr} L^{1+2l'}_1(2kr) with one
    // node; compare the peak-normalized numeric eigenfunction pointwise.
    let cfg = HydrogenConfig {
        z: 1.0,
        n: 2,
        l: 0,
        u: 1.0,
        alpha: ALPHA,
    };
    let shot = radial_shoot(&cfg, 8000).unwrap();
    assert_eq!(shot.nodes, 1);
    let delta = hydrogen_delta_l(1.0, 0, ALPHA).unwrap();
    let lp = -delta;
    let k = ALPHA / (2.0 - delta);
    // L^{1+2l'}_1(x) = 2 + 2l' - x
    let model = |r: f64| r.powf(lp + 1.0) * (-k * r).exp() * (2.0 + 2.0 * lp - 2.0 * k * r);
    let peak_model = shot
        .radial
        .iter()
        .map(|&(r, _)| model(r).abs())
        .fold(0.0, f64::max);
    for &(r, w) in shot
        .radial
        .iter()
        .filter(|&&(r, _)| r > 1.0 && r < 1500.0)
    {
        let expect = model(r) / peak_model;
        assert!(
            (w - expect).abs() < 1e-5,
            "r = {}: {} vs {}",
            r,
            w,
            expect
        );
    }
}

#[test]
fn packet_samples_move_right() {
    let cfg = PacketConfig::default();
    let xs: Vec<f64> = (-40..=120).map(|i| i as f64 * 0.25).collect();
    let at = |s: f64| {
        let v = qgeo::flow::packet_samples(&cfg, s, &xs);
        let peak = v
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
            .unwrap()
            .0;
        xs[peak]
    };
    let x0 = at(0.0);
    let x5 = at(5.0);
    // group velocity <p>/m ~ 0.458: the peak should advance by ~2.3
    assert!(x5 > x0 + 1.5, "peak moved {} -> {}", x0, x5);
}
