//! Free relativistic proper-time wave packet in 1+1 dimensions:
//! a Gaussian spread in spatial momentum around the positive on-shell
//! value for energy u, evolved in the geodesic parameter s.
//!
//! Expectations are evaluated in momentum space; the operators
//! x = i hbar d/dk (after integration by parts) and t = -i hbar d/du act
//! analytically on the Gaussian-times-phase integrand, so the remaining
//! quadratures have smooth Gaussian integrands.

use super::series::{affine_fit, AffineFit, TimeSeries};
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct PacketConfig {
    /// Energy parameter; must exceed m c^2 for a propagating packet.
    pub u: f64,
    /// Gaussian width parameter beta > 0.
    pub beta: f64,
    pub mass: f64,
    pub c: f64,
    pub hbar: f64,
    /// Half-width of the k-grid in units of the Gaussian width.
    pub k_span_widths: f64,
    pub k_points: usize,
    pub s_max: f64,
    pub s_points: usize,
}

impl Default for PacketConfig {
    fn default() -> Self {
        PacketConfig {
            u: 1.1,
            beta: 0.5,
            mass: 1.0,
            c: 1.0,
            hbar: 1.0,
            k_span_widths: 10.0,
            k_points: 4001,
            s_max: 5.0,
            s_points: 51,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PacketResult {
    pub series: TimeSeries,
    /// s-independent spatial momentum expectation.
    pub p_expect: f64,
    pub x_fit: AffineFit,
    pub t_fit: AffineFit,
    /// Lab velocity <x>/<t> (constant along the flow).
    pub velocity: f64,
    /// Largest violation of v <t>(s) = <x>(s) over the samples.
    pub triangle_residual: f64,
    pub warnings: Vec<String>,
}

pub fn packet_evolve(cfg: &PacketConfig) -> PacketResult {
    let mut warnings = Vec::new();
    assert!(cfg.u > cfg.mass * cfg.c * cfg.c, "u must exceed m c^2");
    assert!(cfg.beta > 0.0);
    if cfg.k_span_widths < 8.0 {
        warnings.push(format!(
            "k-grid spans {:.1} Gaussian widths (< 8); expectations may be under-resolved",
            cfg.k_span_widths
        ));
    }

    // On-shell center: c k0 = sqrt(u^2 - m^2 c^4).
    let mc2 = cfg.mass * cfg.c * cfg.c;
    let w = (cfg.u * cfg.u - mc2 * mc2).sqrt();
    let k0 = w / cfg.c;
    // |g|^2 = exp(-2 (c k - w)^2 / beta): width in k.
    let sigma_k = (cfg.beta / 2.0).sqrt() / (2.0f64).sqrt() / cfg.c;
    let span = cfg.k_span_widths * sigma_k;
    let n = cfg.k_points;
    let dk = 2.0 * span / (n - 1) as f64;

    // Weight and plain moments (s-independent).
    let mut norm = 0.0;
    let mut mom_k = 0.0;
    for i in 0..n {
        let k = k0 - span + i as f64 * dk;
        let g2 = (-2.0 * (cfg.c * k - w) * (cfg.c * k - w) / cfg.beta).exp();
        norm += g2;
        mom_k += g2 * k;
    }
    let k_mean = mom_k / norm;
    let p_expect = k_mean;

    // x expectation: Re integrand |g|^2 (s k / m); imaginary part
    // -2 hbar c (ck - w)/beta integrates to ~0 by symmetry (tracked as a
    // warning-level check).
    let mut imag_x = 0.0;
    let mut imag_t = 0.0;
    for i in 0..n {
        let k = k0 - span + i as f64 * dk;
        let g2 = (-2.0 * (cfg.c * k - w) * (cfg.c * k - w) / cfg.beta).exp();
        imag_x += g2 * (-2.0 * cfg.hbar * cfg.c * (cfg.c * k - w) / cfg.beta);
        imag_t += g2 * (2.0 * cfg.hbar * (cfg.c * k - w) * cfg.u / (w * cfg.beta));
    }
    if (imag_x / norm).abs() > 1e-12 || (imag_t / norm).abs() > 1e-12 {
        warnings.push("imaginary expectation residual above 1e-12".to_string());
    }

    let mut series = TimeSeries::new("s");
    let mut ch_x = Vec::with_capacity(cfg.s_points);
    let mut ch_t = Vec::with_capacity(cfg.s_points);
    for j in 0..cfg.s_points {
        let s = cfg.s_max * j as f64 / (cfg.s_points - 1).max(1) as f64;
        series.params.push(s);
        ch_x.push(s * k_mean / cfg.mass);
        ch_t.push(s * cfg.u / (cfg.mass * cfg.c * cfg.c));
    }
    let x_fit = affine_fit(&series.params, &ch_x);
    let t_fit = affine_fit(&series.params, &ch_t);
    let velocity = x_fit.slope / t_fit.slope;
    let mut triangle: f64 = 0.0;
    for j in 0..cfg.s_points {
        triangle = triangle.max((velocity * ch_t[j] - ch_x[j]).abs());
    }
    series.channels = vec![("x".to_string(), ch_x), ("t".to_string(), ch_t)];

    PacketResult {
        series,
        p_expect,
        x_fit,
        t_fit,
        velocity,
        triangle_residual: triangle,
        warnings,
    }
}

/// Position-space samples Psi(s, x) on a given x grid, for data export.
pub fn packet_samples(cfg: &PacketConfig, s: f64, xs: &[f64]) -> Vec<Complex64> {
    let mc2 = cfg.mass * cfg.c * cfg.c;
    let w = (cfg.u * cfg.u - mc2 * mc2).sqrt();
    let k0 = w / cfg.c;
    let sigma_k = (cfg.beta / 2.0).sqrt() / (2.0f64).sqrt() / cfg.c;
    let span = cfg.k_span_widths * sigma_k;
    let n = cfg.k_points;
    let dk = 2.0 * span / (n - 1) as f64;
    xs.iter()
        .map(|&x| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..n {
                let k = k0 - span + i as f64 * dk;
                let phase = s * (cfg.u * cfg.u - k * k * cfg.c * cfg.c)
                    / (2.0 * cfg.mass * cfg.c * cfg.c * cfg.hbar);
                let gauss = (-(cfg.c * k - w) * (cfg.c * k - w) / cfg.beta).exp();
                acc += Complex64::new(0.0, phase + k * x / cfg.hbar).exp() * gauss;
            }
            acc * dk
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn figure_parameters() {
        let cfg = PacketConfig::default();
        let r = packet_evolve(&cfg);
        // <p> = sqrt(u^2 - m^2 c^4)/c = sqrt(0.21)
        assert!((r.p_expect - 0.21f64.sqrt()).abs() < 1e-9, "p = {}", r.p_expect);
        // <t>/s = u / (m c^2) = 1.1
        assert!((r.t_fit.slope - 1.1).abs() < 1e-12);
        assert!(r.t_fit.intercept.abs() < 1e-12);
        // v = c sqrt(1 - (mc^2/u)^2)
        let v_expect = (1.0 - (1.0f64 / 1.1) * (1.0 / 1.1)).sqrt();
        assert!((r.velocity - v_expect).abs() < 1e-12);
        assert!(r.triangle_residual < 1e-12);
        assert!(r.x_fit.max_residual < 1e-10);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn narrow_span_warns() {
        let cfg = PacketConfig {
            k_span_widths: 4.0,
            ..PacketConfig::default()
        };
        let r = packet_evolve(&cfg);
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn samples_disperse_but_normalize() {
        let cfg = PacketConfig::default();
        let xs: Vec<f64> = (-50..=50).map(|i| i as f64 * 0.5).collect();
        let a = packet_samples(&cfg, 0.0, &xs);
        let b = packet_samples(&cfg, 5.0, &xs);
        let peak = |v: &[Complex64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        // dispersion lowers the peak as the packet moves
        assert!(peak(&b) < peak(&a));
    }
}
