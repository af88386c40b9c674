//! Autoparallel and Hamiltonian integration on extended phase space, for
//! cross-checking that the extended connection reproduces the
//! Hamilton-Jacobi flow.

use super::geometry::{extended_connection, hamiltonian_vector_field, PhaseSpec};
use crate::ncalg::NumericBindings;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum IntegrateError {
    #[error("trajectory blow-up at t = {0}: component magnitude exceeded 1e12")]
    BlowUp(f64),
}

/// Sampled trajectory: time axis plus phase-space coordinates per sample.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

fn check_finite(state: &[f64], t: f64) -> Result<(), IntegrateError> {
    if state.iter().any(|v| !v.is_finite() || v.abs() > 1e12) {
        return Err(IntegrateError::BlowUp(t));
    }
    Ok(())
}

/// RK4 on Hamilton's equations x' = Xbar(x).
pub fn hamilton_integrate(
    spec: &PhaseSpec,
    bind: &NumericBindings,
    x0: &[f64],
    t_max: f64,
    dt: f64,
) -> Result<Trajectory, IntegrateError> {
    assert!(dt > 0.0);
    let m = spec.dims();
    assert_eq!(x0.len(), m);
    let x = hamiltonian_vector_field(spec);
    let f = |state: &[f64]| -> Vec<f64> {
        (0..m).map(|mu| x.get(&[mu + 1]).eval(state, bind)).collect()
    };
    let steps = (t_max / dt).round() as usize;
    let mut state = x0.to_vec();
    let mut traj = Trajectory {
        times: Vec::with_capacity(steps + 1),
        states: Vec::with_capacity(steps + 1),
    };
    for step in 0..=steps {
        let t = step as f64 * dt;
        check_finite(&state, t)?;
        traj.times.push(t);
        traj.states.push(state.clone());
        if step == steps {
            break;
        }
        let k1 = f(&state);
        let s2: Vec<f64> = state.iter().zip(&k1).map(|(s, k)| s + 0.5 * dt * k).collect();
        let k2 = f(&s2);
        let s3: Vec<f64> = state.iter().zip(&k2).map(|(s, k)| s + 0.5 * dt * k).collect();
        let k3 = f(&s3);
        let s4: Vec<f64> = state.iter().zip(&k3).map(|(s, k)| s + dt * k).collect();
        let k4 = f(&s4);
        for i in 0..m {
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    Ok(traj)
}

/// RK4 on the extended autoparallel equation
/// gamma''^mu = -Gamma^mu_{ab} gamma'^a gamma'^b with initial extended
/// velocity (1, Xbar(x0)). The time leg stays affine; the returned states
/// are the phase-space coordinates.
pub fn geodesic_integrate(
    spec: &PhaseSpec,
    bind: &NumericBindings,
    x0: &[f64],
    t_max: f64,
    dt: f64,
) -> Result<Trajectory, IntegrateError> {
    assert!(dt > 0.0);
    let m = spec.dims();
    assert_eq!(x0.len(), m);
    let gamma = extended_connection(spec);
    let x = hamiltonian_vector_field(spec);

    // State layout: [x^1..x^2n, v^1..v^2n]; v^0 = 1 is constant since
    // Gamma^0_{ab} = 0 and Gamma^mu_{0 a} = 0 except the nu-0 slot.
    let f = |state: &[f64]| -> Vec<f64> {
        let (pos, vel) = state.split_at(m);
        let mut out = vec![0.0; 2 * m];
        out[..m].copy_from_slice(vel);
        for mu in 0..m {
            let mut acc = 0.0;
            // -Gamma^mu_{nu 0} v^nu v^0, v^0 = 1
            for nu in 0..m {
                let g = gamma.get(&[mu + 1, nu + 1, 0]);
                if !g.is_zero() {
                    acc -= g.eval(pos, bind) * vel[nu];
                }
            }
            out[m + mu] = acc;
        }
        out
    };

    let steps = (t_max / dt).round() as usize;
    let mut state = vec![0.0; 2 * m];
    state[..m].copy_from_slice(x0);
    for mu in 0..m {
        state[m + mu] = x.get(&[mu + 1]).eval(x0, bind);
    }
    let mut traj = Trajectory {
        times: Vec::with_capacity(steps + 1),
        states: Vec::with_capacity(steps + 1),
    };
    for step in 0..=steps {
        let t = step as f64 * dt;
        check_finite(&state, t)?;
        traj.times.push(t);
        traj.states.push(state[..m].to_vec());
        if step == steps {
            break;
        }
        let k1 = f(&state);
        let s2: Vec<f64> = state.iter().zip(&k1).map(|(s, k)| s + 0.5 * dt * k).collect();
        let k2 = f(&s2);
        let s3: Vec<f64> = state.iter().zip(&k2).map(|(s, k)| s + 0.5 * dt * k).collect();
        let k3 = f(&s3);
        let s4: Vec<f64> = state.iter().zip(&k3).map(|(s, k)| s + dt * k).collect();
        let k4 = f(&s4);
        for i in 0..2 * m {
            state[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    Ok(traj)
}

/// Largest pointwise deviation between the two trajectories.
pub fn max_deviation(a: &Trajectory, b: &Trajectory) -> f64 {
    assert_eq!(a.times.len(), b.times.len());
    let mut worst: f64 = 0.0;
    for (sa, sb) in a.states.iter().zip(&b.states) {
        for (va, vb) in sa.iter().zip(sb) {
            worst = worst.max((va - vb).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sho_trajectories_agree_and_match_closed_form() {
        let spec = PhaseSpec::sho(1);
        let bind = NumericBindings::default();
        let x0 = [1.0, 0.0];
        let geo = geodesic_integrate(&spec, &bind, &x0, 10.0, 1e-3).unwrap();
        let ham = hamilton_integrate(&spec, &bind, &x0, 10.0, 1e-3).unwrap();
        assert!(max_deviation(&geo, &ham) < 1e-8);
        // closed form: x = cos t, p = -sin t (m = nu = 1)
        for (i, &t) in geo.times.iter().enumerate() {
            assert!((geo.states[i][0] - t.cos()).abs() < 1e-8);
            assert!((geo.states[i][1] + t.sin()).abs() < 1e-8);
        }
    }

    #[test]
    fn free_particle_straight_line() {
        let vars = 2;
        let p = super::super::poly::Poly::var(vars, 1);
        let h = (&p * &p).scale(&crate::scalar::Coefficient::from_ratio(1, 2));
        let spec = PhaseSpec::canonical(1, h);
        let bind = NumericBindings::default();
        let x0 = [0.5, 2.0];
        let geo = geodesic_integrate(&spec, &bind, &x0, 3.0, 1e-3).unwrap();
        let last = geo.states.last().unwrap();
        assert!((last[0] - (0.5 + 2.0 * 3.0)).abs() < 1e-10);
        assert!((last[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn quartic_cross_check() {
        // h = p^2/2 + x^4/4
        let vars = 2;
        let x = super::super::poly::Poly::var(vars, 0);
        let p = super::super::poly::Poly::var(vars, 1);
        let h = (&p * &p).scale(&crate::scalar::Coefficient::from_ratio(1, 2))
            + x.pow(4).scale(&crate::scalar::Coefficient::from_ratio(1, 4));
        let spec = PhaseSpec::canonical(1, h);
        let bind = NumericBindings::default();
        let x0 = [1.0, 0.3];
        let geo = geodesic_integrate(&spec, &bind, &x0, 5.0, 5e-4).unwrap();
        let ham = hamilton_integrate(&spec, &bind, &x0, 5.0, 5e-4).unwrap();
        assert!(max_deviation(&geo, &ham) < 1e-7);
    }

    #[test]
    fn blow_up_detected() {
        // h = -x^2 p^2 style runaway: use h = x^2 p^2 which escapes in
        // finite time for suitable signs.
        let vars = 2;
        let x = super::super::poly::Poly::var(vars, 0);
        let p = super::super::poly::Poly::var(vars, 1);
        let h = &(&x * &x) * &(&p * &p);
        let spec = PhaseSpec::canonical(1, h);
        let bind = NumericBindings::default();
        let r = hamilton_integrate(&spec, &bind, &[3.0, 3.0], 50.0, 1e-2);
        assert!(matches!(r, Err(IntegrateError::BlowUp(_))));
    }
}
