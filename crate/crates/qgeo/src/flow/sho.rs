//! Split-step Fourier (Strang) evolution of the harmonic-oscillator
//! Schroedinger flow, with the expectation channels that feed the
//! d/dt <p^2> identity check.

use super::grid::{Grid, WaveFunction};
use super::series::TimeSeries;
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

#[derive(Clone, Copy, Debug)]
pub struct ShoConfig {
    pub nu: f64,
    pub mass: f64,
    pub hbar: f64,
    pub dt: f64,
    pub steps: usize,
}

pub struct ShoResult {
    pub series: TimeSeries,
    pub warnings: Vec<String>,
    pub final_state: WaveFunction,
}

struct SpectralWorkspace {
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    n: usize,
}

impl SpectralWorkspace {
    fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        SpectralWorkspace {
            fft: planner.plan_fft_forward(n),
            ifft: planner.plan_fft_inverse(n),
            n,
        }
    }

    fn to_momentum(&self, v: &mut [Complex64]) {
        self.fft.process(v);
    }

    fn to_position(&self, v: &mut [Complex64]) {
        self.ifft.process(v);
        let scale = 1.0 / self.n as f64;
        for z in v.iter_mut() {
            *z *= scale;
        }
    }

    /// p^k psi via the spectral derivative.
    fn apply_p(&self, v: &[Complex64], ks: &[f64], hbar: f64, power: u32) -> Vec<Complex64> {
        let mut work = v.to_vec();
        self.to_momentum(&mut work);
        for (z, &k) in work.iter_mut().zip(ks) {
            *z *= Complex64::new(hbar * k, 0.0).powu(power);
        }
        self.to_position(&mut work);
        work
    }
}

/// Evolve under h = p^2/2m + (1/2) m nu^2 x^2 and record <x>, <p>, <p^2>,
/// <xp+px> and the norm at every step (including t = 0).
pub fn sho_evolve(cfg: &ShoConfig, grid: &Grid, psi0: &WaveFunction) -> ShoResult {
    let n = grid.n;
    let dx = grid.spacing();
    let xs = grid.xs();
    let ks = grid.wavenumbers();
    let ws = SpectralWorkspace::new(n);
    let mut warnings = Vec::new();

    let max_kinetic_phase = ks
        .iter()
        .map(|&k| cfg.hbar * k * k / (2.0 * cfg.mass))
        .fold(0.0, f64::max);
    if cfg.dt * max_kinetic_phase > std::f64::consts::PI {
        warnings.push(format!(
            "kinetic phase per step {:.3} exceeds pi; decrease dt or the grid resolution",
            cfg.dt * max_kinetic_phase
        ));
    }

    // Strang factors.
    let half_v: Vec<Complex64> = xs
        .iter()
        .map(|&x| {
            let v = 0.5 * cfg.mass * cfg.nu * cfg.nu * x * x;
            Complex64::new(0.0, -v * cfg.dt / (2.0 * cfg.hbar)).exp()
        })
        .collect();
    let kinetic: Vec<Complex64> = ks
        .iter()
        .map(|&k| {
            let t = cfg.hbar * k * k / (2.0 * cfg.mass);
            Complex64::new(0.0, -t * cfg.dt).exp()
        })
        .collect();

    let mut psi = psi0.values.clone();
    let mut series = TimeSeries::new("t");
    let mut ch_x = Vec::with_capacity(cfg.steps + 1);
    let mut ch_p = Vec::with_capacity(cfg.steps + 1);
    let mut ch_pp = Vec::with_capacity(cfg.steps + 1);
    let mut ch_xppx = Vec::with_capacity(cfg.steps + 1);
    let mut ch_norm = Vec::with_capacity(cfg.steps + 1);

    let record = |t: f64,
                      psi: &[Complex64],
                      series: &mut TimeSeries,
                      ch_x: &mut Vec<f64>,
                      ch_p: &mut Vec<f64>,
                      ch_pp: &mut Vec<f64>,
                      ch_xppx: &mut Vec<f64>,
                      ch_norm: &mut Vec<f64>| {
        let p_psi = ws.apply_p(psi, &ks, cfg.hbar, 1);
        let pp_psi = ws.apply_p(psi, &ks, cfg.hbar, 2);
        let mut ex = 0.0;
        let mut ep = Complex64::new(0.0, 0.0);
        let mut epp = Complex64::new(0.0, 0.0);
        let mut exppx = Complex64::new(0.0, 0.0);
        let mut nn = 0.0;
        for i in 0..n {
            let c = psi[i].conj();
            ex += xs[i] * psi[i].norm_sqr();
            ep += c * p_psi[i];
            epp += c * pp_psi[i];
            exppx += c * Complex64::new(xs[i], 0.0) * p_psi[i];
            nn += psi[i].norm_sqr();
        }
        series.params.push(t);
        ch_x.push(ex * dx);
        ch_p.push(ep.re * dx);
        ch_pp.push(epp.re * dx);
        // <xp + px> = 2 Re <psi| x (p psi)>
        ch_xppx.push(2.0 * exppx.re * dx);
        ch_norm.push((nn * dx).sqrt());
    };

    record(
        0.0, &psi, &mut series, &mut ch_x, &mut ch_p, &mut ch_pp, &mut ch_xppx, &mut ch_norm,
    );
    for step in 1..=cfg.steps {
        for (z, f) in psi.iter_mut().zip(&half_v) {
            *z *= f;
        }
        ws.to_momentum(&mut psi);
        for (z, f) in psi.iter_mut().zip(&kinetic) {
            *z *= f;
        }
        ws.to_position(&mut psi);
        for (z, f) in psi.iter_mut().zip(&half_v) {
            *z *= f;
        }
        record(
            step as f64 * cfg.dt,
            &psi,
            &mut series,
            &mut ch_x,
            &mut ch_p,
            &mut ch_pp,
            &mut ch_xppx,
            &mut ch_norm,
        );
    }

    series.channels = vec![
        ("x".to_string(), ch_x),
        ("p".to_string(), ch_p),
        ("p2".to_string(), ch_pp),
        ("xp_px".to_string(), ch_xppx),
        ("norm".to_string(), ch_norm),
    ];
    ShoResult {
        series,
        warnings,
        final_state: WaveFunction { values: psi },
    }
}

/// Max relative residual of d<p^2>/dt = -m nu^2 <xp + px> along the
/// series. The derivative is the 4th-order central difference, so the
/// reported residual isolates the splitting error of the evolution rather
/// than the bias of the derivative estimator.
pub fn check_dexpdt(series: &TimeSeries, mass: f64, nu: f64) -> f64 {
    let pp = series.channel("p2").expect("p2 channel");
    let xppx = series.channel("xp_px").expect("xp_px channel");
    let t = &series.params;
    let dt = t[1] - t[0];
    let mut scale: f64 = 0.0;
    for v in xppx {
        scale = scale.max((mass * nu * nu * v).abs());
    }
    let scale = scale.max(f64::MIN_POSITIVE.sqrt());
    let mut worst: f64 = 0.0;
    for i in 2..t.len().saturating_sub(2) {
        let lhs =
            (-pp[i + 2] + 8.0 * pp[i + 1] - 8.0 * pp[i - 1] + pp[i - 2]) / (12.0 * dt);
        let rhs = -mass * nu * nu * xppx[i];
        worst = worst.max((lhs - rhs).abs() / scale);
    }
    worst
}
