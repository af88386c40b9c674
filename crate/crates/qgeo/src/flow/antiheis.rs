//! Anti-Heisenberg flow restricted to the linear span a_t = chi(t) x
//! + psi(t) p, with an optional constant damping kappa:
//! chi' = m nu^2 psi - kappa chi,  psi' = -chi/m - kappa psi.

use super::series::TimeSeries;

#[derive(Clone, Copy, Debug)]
pub struct AntiHeisConfig {
    pub chi0: f64,
    pub psi0: f64,
    pub nu: f64,
    pub mass: f64,
    pub kappa: f64,
    pub dt: f64,
    pub steps: usize,
}

fn rhs(cfg: &AntiHeisConfig, chi: f64, psi: f64) -> (f64, f64) {
    (
        cfg.mass * cfg.nu * cfg.nu * psi - cfg.kappa * chi,
        -chi / cfg.mass - cfg.kappa * psi,
    )
}

/// RK4 integration; records chi, psi and the kappa = 0 quadratic invariant
/// chi^2/(2m) + m nu^2 psi^2 / 2.
pub fn anti_heisenberg_evolve(cfg: &AntiHeisConfig) -> TimeSeries {
    let mut chi = cfg.chi0;
    let mut psi = cfg.psi0;
    let mut series = TimeSeries::new("t");
    let mut ch_chi = Vec::with_capacity(cfg.steps + 1);
    let mut ch_psi = Vec::with_capacity(cfg.steps + 1);
    let mut ch_inv = Vec::with_capacity(cfg.steps + 1);

    let invariant = |chi: f64, psi: f64| {
        chi * chi / (2.0 * cfg.mass) + cfg.mass * cfg.nu * cfg.nu * psi * psi / 2.0
    };

    for step in 0..=cfg.steps {
        series.params.push(step as f64 * cfg.dt);
        ch_chi.push(chi);
        ch_psi.push(psi);
        ch_inv.push(invariant(chi, psi));
        if step == cfg.steps {
            break;
        }
        let h = cfg.dt;
        let (k1c, k1p) = rhs(cfg, chi, psi);
        let (k2c, k2p) = rhs(cfg, chi + 0.5 * h * k1c, psi + 0.5 * h * k1p);
        let (k3c, k3p) = rhs(cfg, chi + 0.5 * h * k2c, psi + 0.5 * h * k2p);
        let (k4c, k4p) = rhs(cfg, chi + h * k3c, psi + h * k3p);
        chi += h * (k1c + 2.0 * k2c + 2.0 * k3c + k4c) / 6.0;
        psi += h * (k1p + 2.0 * k2p + 2.0 * k3p + k4p) / 6.0;
    }

    series.channels = vec![
        ("chi".to_string(), ch_chi),
        ("psi".to_string(), ch_psi),
        ("invariant".to_string(), ch_inv),
    ];
    series
}

/// Residual of the damped-oscillator identity
/// chi'' = -(kappa^2 + nu^2) chi - 2 kappa chi'
/// along the numeric trajectory, using 4th-order central differences.
pub fn damped_identity_residual(series: &TimeSeries, nu: f64, kappa: f64) -> f64 {
    let chi = series.channel("chi").expect("chi channel");
    let t = &series.params;
    if t.len() < 5 {
        return f64::NAN;
    }
    let dt = t[1] - t[0];
    let mut scale: f64 = 0.0;
    for v in chi {
        scale = scale.max(v.abs());
    }
    let scale = scale.max(f64::MIN_POSITIVE.sqrt()) * (kappa * kappa + nu * nu).max(1.0);
    let mut worst: f64 = 0.0;
    for i in 2..t.len() - 2 {
        let d1 = (-chi[i + 2] + 8.0 * chi[i + 1] - 8.0 * chi[i - 1] + chi[i - 2]) / (12.0 * dt);
        let d2 = (-chi[i + 2] + 16.0 * chi[i + 1] - 30.0 * chi[i] + 16.0 * chi[i - 1]
            - chi[i - 2])
            / (12.0 * dt * dt);
        let rhs = -(kappa * kappa + nu * nu) * chi[i] - 2.0 * kappa * d1;
        worst = worst.max((d2 - rhs).abs() / scale);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undamped_matches_closed_form() {
        let cfg = AntiHeisConfig {
            chi0: 1.5,
            psi0: 0.25,
            nu: 1.3,
            mass: 2.0,
            kappa: 0.0,
            dt: 1e-3,
            steps: 4000,
        };
        let series = anti_heisenberg_evolve(&cfg);
        let chi = series.channel("chi").unwrap();
        for (i, &t) in series.params.iter().enumerate() {
            let expect = cfg.chi0 * (cfg.nu * t).cos()
                + cfg.psi0 * cfg.mass * cfg.nu * (cfg.nu * t).sin();
            assert!((chi[i] - expect).abs() < 1e-8, "t={} drift", t);
        }
    }

    #[test]
    fn zero_start_stays_zero() {
        let cfg = AntiHeisConfig {
            chi0: 0.0,
            psi0: 0.0,
            nu: 1.0,
            mass: 1.0,
            kappa: 0.7,
            dt: 1e-2,
            steps: 100,
        };
        let series = anti_heisenberg_evolve(&cfg);
        assert!(series.channel("chi").unwrap().iter().all(|v| *v == 0.0));
        assert!(series.channel("psi").unwrap().iter().all(|v| *v == 0.0));
    }

    #[test]
    fn damped_identity_holds() {
        let cfg = AntiHeisConfig {
            chi0: 1.0,
            psi0: 0.0,
            nu: 1.0,
            mass: 1.0,
            kappa: 0.3,
            dt: 1e-3,
            steps: 5000,
        };
        let series = anti_heisenberg_evolve(&cfg);
        let res = damped_identity_residual(&series, cfg.nu, cfg.kappa);
        assert!(res < 1e-8, "residual {}", res);
    }

    #[test]
    fn undamped_invariant_conserved() {
        let cfg = AntiHeisConfig {
            chi0: 1.0,
            psi0: 0.5,
            nu: 2.0,
            mass: 1.5,
            kappa: 0.0,
            dt: 1e-4,
            steps: 20000,
        };
        let series = anti_heisenberg_evolve(&cfg);
        let inv = series.channel("invariant").unwrap();
        let drift = inv
            .iter()
            .map(|v| (v - inv[0]).abs())
            .fold(0.0, f64::max);
        assert!(drift < 1e-10 * inv[0].abs().max(1.0), "drift {}", drift);
    }
}
