//! Hydrogen-like spectrum of the proper-time geodesic flow at fixed
//! energy u: closed forms for the quantum defect, eigenvalues and on-shell
//! energies, plus an independent Numerov shooting solver for the radial
//! equation. Natural units hbar = c = m = 1 throughout the numerics.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum HydrogenError {
    #[error("supercritical charge: need Z alpha < l + 1/2 (Z < 1/(2 alpha) for s states)")]
    Supercritical,
    #[error("quantum numbers must satisfy 0 <= l < n")]
    BadQuantumNumbers,
    #[error("no eigenvalue with {expected} nodes found in the scan window")]
    BracketNotFound { expected: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct HydrogenConfig {
    pub z: f64,
    pub n: u32,
    pub l: u32,
    /// Energy parameter u in units of m c^2; use `onshell_u` for on-shell.
    pub u: f64,
    pub alpha: f64,
}

/// delta_l = l + 1/2 - sqrt((l + 1/2)^2 - Z^2 alpha^2).
pub fn hydrogen_delta_l(z: f64, l: u32, alpha: f64) -> Result<f64, HydrogenError> {
    let half = l as f64 + 0.5;
    let za = z * alpha;
    let disc = half * half - za * za;
    if disc < 0.0 {
        return Err(HydrogenError::Supercritical);
    }
    // rationalized form: avoids the cancellation in half - sqrt(disc)
    Ok(za * za / (half + disc.sqrt()))
}

/// Eigenvalue of the radial flow:
/// E_{n,l} = (u^2/2)(1 + (Z alpha/(n - delta_l))^2).
pub fn hydrogen_energy(z: f64, n: u32, l: u32, u: f64, alpha: f64) -> Result<f64, HydrogenError> {
    if l >= n {
        return Err(HydrogenError::BadQuantumNumbers);
    }
    let delta = hydrogen_delta_l(z, l, alpha)?;
    let ratio = z * alpha / (n as f64 - delta);
    Ok(u * u / 2.0 * (1.0 + ratio * ratio))
}

/// On-shell energy parameter:
/// u_{n,l} = 1/sqrt(1 + (Z alpha/(n - delta_l))^2).
pub fn onshell_u(z: f64, n: u32, l: u32, alpha: f64) -> Result<f64, HydrogenError> {
    if l >= n {
        return Err(HydrogenError::BadQuantumNumbers);
    }
    let delta = hydrogen_delta_l(z, l, alpha)?;
    let ratio = z * alpha / (n as f64 - delta);
    Ok(1.0 / (1.0 + ratio * ratio).sqrt())
}

/// Effective u = m c^2 potential with the constant -m c^2/2 discarded:
/// V(r) = -Z alpha / r - Z^2 alpha^2 / (2 r^2).
pub fn effective_potential(r: f64, z: f64, alpha: f64) -> f64 {
    assert!(r > 0.0);
    -z * alpha / r - z * z * alpha * alpha / (2.0 * r * r)
}

/// Radius where the two terms of the effective potential are equal, in
/// Bohr-radius units: r_crit = (1/2) a_0 alpha^2 for Z = 1 (scales with Z).
pub fn r_crit(alpha: f64) -> f64 {
    0.5 * alpha * alpha
}

#[derive(Clone, Debug)]
pub struct ShootResult {
    pub eigenvalue: f64,
    pub nodes: usize,
    /// (r, w = r R) samples of the converged eigenfunction, peak-normalized.
    pub radial: Vec<(f64, f64)>,
}

/// Log-mesh geometry shared by the shooting passes.
struct RadialMesh {
    rs: Vec<f64>,
    h: f64,
}

fn build_mesh(cfg: &HydrogenConfig, mesh: usize) -> RadialMesh {
    let za = cfg.z * cfg.alpha;
    let nn = cfg.n as f64;
    let r_scale = 1.0 / (cfg.u * za);
    let r_min = 1e-7 * r_scale;
    let r_max = 45.0 * nn * r_scale;
    let y_min = r_min.ln();
    let y_max = r_max.ln();
    let h = (y_max - y_min) / (mesh - 1) as f64;
    let rs: Vec<f64> = (0..mesh).map(|i| (y_min + i as f64 * h).exp()).collect();
    RadialMesh { rs, h }
}

/// Match at the outer classical turning point of the trial energy: it lies
/// beyond every node of the eigenfunction, so the matching defect never
/// degenerates on a node.
fn match_index(mesh: &RadialMesh, e: f64, u: f64, za: f64, lp_lp1: f64) -> usize {
    let k2 = (2.0 * e - u * u).max(1e-300);
    let disc = (u * za) * (u * za) - k2 * (lp_lp1 + 0.25);
    let r_turn = if disc > 0.0 {
        (u * za + disc.sqrt()) / k2
    } else {
        u * za / k2
    };
    let y_min = mesh.rs[0].ln();
    let idx = ((r_turn.ln() - y_min) / mesh.h).round() as isize;
    (idx.max(4) as usize).min(mesh.rs.len() - 5)
}

/// F(y) of the log-mesh equation v'' = F v, where v = w / sqrt(r),
/// r = e^y and w = r R. The radial equation w'' = f(r) w has
/// f = l'(l'+1)/r^2 - 2 u Z alpha / r + (2E - u^2), so
/// F = r^2 f + 1/4.
fn f_log(e: f64, r: f64, u: f64, za: f64, lp_lp1: f64) -> f64 {
    lp_lp1 - 2.0 * u * za * r + (2.0 * e - u * u) * r * r + 0.25
}

/// Numerov matching defect at the match index plus the outward node count.
/// Zero exactly at eigenvalues of the discretized problem.
fn numerov_defect(
    cfg: &HydrogenConfig,
    mesh: &RadialMesh,
    e: f64,
    lp: f64,
    lp_lp1: f64,
) -> (f64, usize) {
    let za = cfg.z * cfg.alpha;
    let u = cfg.u;
    let rs = &mesh.rs;
    let h = mesh.h;
    let m_idx = match_index(mesh, e, u, za, lp_lp1);
    let n_pts = rs.len();

    // Outward sweep from the r^{l'+1/2} series: iteration i computes
    // v[i+1], ending with v_curr = v[m_idx].
    let c1 = -u * za / (lp + 1.0);
    let mut v_prev = rs[0].powf(lp + 0.5) * (1.0 + c1 * rs[0]);
    let mut v_curr = rs[1].powf(lp + 0.5) * (1.0 + c1 * rs[1]);
    let mut nodes = 0usize;
    let mut out_m1 = 0.0;
    for i in 1..m_idx {
        let fm = f_log(e, rs[i - 1], u, za, lp_lp1);
        let f0 = f_log(e, rs[i], u, za, lp_lp1);
        let fp = f_log(e, rs[i + 1], u, za, lp_lp1);
        let next = ((2.0 + 10.0 * h * h * f0 / 12.0) * v_curr
            - (1.0 - h * h * fm / 12.0) * v_prev)
            / (1.0 - h * h * fp / 12.0);
        if next * v_curr < 0.0 {
            nodes += 1;
        }
        out_m1 = v_curr;
        v_prev = v_curr;
        v_curr = next;
        if v_curr.abs() > 1e250 {
            let s = v_curr.abs();
            v_prev /= s;
            v_curr /= s;
            out_m1 /= s;
        }
    }
    let out_m = v_curr;

    // Inward sweep from the Coulomb tail r^{eta - 1/2} e^{-k r}:
    // iteration i computes w[i-1], ending with w_curr = w[m_idx].
    let k = (2.0 * e - u * u).max(1e-300).sqrt();
    let eta = u * za / k;
    let asym = |r: f64| (eta - 0.5) * r.ln() - k * r;
    let base = asym(rs[n_pts - 1]);
    let mut w_next = 1.0f64;
    let mut w_curr = (asym(rs[n_pts - 2]) - base).exp();
    let mut in_mp1 = 0.0;
    for i in (m_idx + 1..=n_pts - 2).rev() {
        let fp = f_log(e, rs[i + 1], u, za, lp_lp1);
        let f0 = f_log(e, rs[i], u, za, lp_lp1);
        let fm = f_log(e, rs[i - 1], u, za, lp_lp1);
        let prev = ((2.0 + 10.0 * h * h * f0 / 12.0) * w_curr
            - (1.0 - h * h * fp / 12.0) * w_next)
            / (1.0 - h * h * fm / 12.0);
        in_mp1 = w_curr;
        w_next = w_curr;
        w_curr = prev;
        if w_curr.abs() > 1e250 {
            let s = w_curr.abs();
            w_curr /= s;
            w_next /= s;
            in_mp1 /= s;
        }
    }
    let in_m = w_curr;

    // Glue with equal value at the match point; the Numerov three-term
    // relation there vanishes exactly on eigenvalues.
    if in_m == 0.0 || out_m == 0.0 {
        return (f64::NAN, nodes);
    }
    let scale = out_m / in_m;
    let t = |r: f64| h * h * f_log(e, r, u, za, lp_lp1) / 12.0;
    let d = (1.0 - t(rs[m_idx + 1])) * in_mp1 * scale + (1.0 - t(rs[m_idx - 1])) * out_m1
        - (2.0 + 10.0 * t(rs[m_idx])) * out_m;
    let norm = out_m.abs() + out_m1.abs() + (in_mp1 * scale).abs();
    (d / norm.max(1e-300), nodes)
}

fn eigenfunction(
    cfg: &HydrogenConfig,
    mesh: &RadialMesh,
    e: f64,
    lp: f64,
    lp_lp1: f64,
) -> Vec<(f64, f64)> {
    let za = cfg.z * cfg.alpha;
    let u = cfg.u;
    let rs = &mesh.rs;
    let h = mesh.h;
    let m_idx = match_index(mesh, e, u, za, lp_lp1);
    let n_pts = rs.len();
    let f_at = |r: f64| f_log(e, r, u, za, lp_lp1);

    let c1 = -u * za / (lp + 1.0);
    let mut v = vec![0.0; n_pts];
    v[0] = rs[0].powf(lp + 0.5) * (1.0 + c1 * rs[0]);
    v[1] = rs[1].powf(lp + 0.5) * (1.0 + c1 * rs[1]);
    for i in 1..=m_idx {
        v[i + 1] = ((2.0 + 10.0 * h * h * f_at(rs[i]) / 12.0) * v[i]
            - (1.0 - h * h * f_at(rs[i - 1]) / 12.0) * v[i - 1])
            / (1.0 - h * h * f_at(rs[i + 1]) / 12.0);
    }
    let k = (2.0 * e - u * u).max(1e-300).sqrt();
    let eta = u * za / k;
    let asym = |r: f64| (eta - 0.5) * r.ln() - k * r;
    let base = asym(rs[n_pts - 1]);
    let mut w = vec![0.0; n_pts];
    w[n_pts - 1] = 1.0;
    w[n_pts - 2] = (asym(rs[n_pts - 2]) - base).exp();
    for i in (m_idx..=n_pts - 2).rev() {
        w[i - 1] = ((2.0 + 10.0 * h * h * f_at(rs[i]) / 12.0) * w[i]
            - (1.0 - h * h * f_at(rs[i + 1]) / 12.0) * w[i + 1])
            / (1.0 - h * h * f_at(rs[i - 1]) / 12.0);
    }
    let scale = v[m_idx] / w[m_idx];
    let mut out = Vec::with_capacity(n_pts);
    let mut peak: f64 = 0.0;
    for i in 0..n_pts {
        let vi = if i <= m_idx { v[i] } else { w[i] * scale };
        let wi = rs[i].sqrt() * vi; // back to w(r) = sqrt(r) v
        peak = peak.max(wi.abs());
        out.push((rs[i], wi));
    }
    for p in out.iter_mut() {
        p.1 /= peak;
    }
    out
}

/// Nodes of the peak-normalized eigenfunction, ignoring the numerically
/// dead tails.
fn count_nodes(radial: &[(f64, f64)]) -> usize {
    let mut n = 0;
    let mut last = 0.0f64;
    for &(_, w) in radial {
        if w.abs() < 1e-9 {
            continue;
        }
        if last != 0.0 && w.signum() != last.signum() {
            n += 1;
        }
        last = w;
    }
    n
}

/// Numerov shooting for the radial equation on a logarithmic mesh,
/// bisecting the matching defect on the energy and selecting the state by
/// node count (independent of the closed-form spectrum).
pub fn radial_shoot(cfg: &HydrogenConfig, mesh_points: usize) -> Result<ShootResult, HydrogenError> {
    if cfg.l >= cfg.n {
        return Err(HydrogenError::BadQuantumNumbers);
    }
    let za = cfg.z * cfg.alpha;
    let half = cfg.l as f64 + 0.5;
    if za >= half {
        return Err(HydrogenError::Supercritical);
    }
    let lp_lp1 = cfg.l as f64 * (cfg.l as f64 + 1.0) - za * za;
    let lp = -0.5 + (0.25 + lp_lp1).sqrt();
    let u = cfg.u;
    let nn = cfg.n as f64;
    let mesh = build_mesh(cfg, mesh_points);

    // Scan window: binding between the (n+2)-scale and the
    // closed-form-free upper bound (Z alpha / (l + 1/2))^2.
    let e_floor = u * u / 2.0;
    let bind_min = e_floor * (za / (nn + 2.0)) * (za / (nn + 2.0));
    let bind_max = e_floor * (za / half) * (za / half);
    let expected_nodes = (cfg.n - cfg.l - 1) as usize;

    let scan = 600;
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=scan {
        let e = e_floor + bind_min + (bind_max * 1.2 - bind_min) * i as f64 / scan as f64;
        let (d, _) = numerov_defect(cfg, &mesh, e, lp, lp_lp1);
        if let Some((e0, d0)) = prev {
            if d0.signum() != d.signum() && d0.is_finite() && d.is_finite() {
                let (mut a, mut b, mut da) = (e0, e, d0);
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    let (dm, _) = numerov_defect(cfg, &mesh, mid, lp, lp_lp1);
                    if dm.signum() == da.signum() {
                        a = mid;
                        da = dm;
                    } else {
                        b = mid;
                    }
                    if (b - a) <= 1e-16 * b.abs() {
                        break;
                    }
                }
                let e_star = 0.5 * (a + b);
                // Poles of the matching function also flip sign; a true
                // eigenvalue drives the defect itself to zero.
                let (d_star, _) = numerov_defect(cfg, &mesh, e_star, lp, lp_lp1);
                if d_star.abs() < 1e-6 {
                    let radial = eigenfunction(cfg, &mesh, e_star, lp, lp_lp1);
                    let nodes = count_nodes(&radial);
                    if nodes == expected_nodes {
                        return Ok(ShootResult {
                            eigenvalue: e_star,
                            nodes,
                            radial,
                        });
                    }
                }
            }
        }
        prev = Some((e, d));
    }
    Err(HydrogenError::BracketNotFound {
        expected: expected_nodes,
    })
}

/// Diagnostic scan of the matching defect.
pub fn defect_scan(cfg: &HydrogenConfig, mesh_points: usize, samples: usize) -> Vec<(f64, f64)> {
    let za = cfg.z * cfg.alpha;
    let lp_lp1 = cfg.l as f64 * (cfg.l as f64 + 1.0) - za * za;
    let lp = -0.5 + (0.25f64 + lp_lp1).sqrt();
    let half = cfg.l as f64 + 0.5;
    let nn = cfg.n as f64;
    let e_floor = cfg.u * cfg.u / 2.0;
    let bind_min = e_floor * (za / (nn + 2.0)) * (za / (nn + 2.0));
    let bind_max = e_floor * (za / half) * (za / half);
    let mesh = build_mesh(cfg, mesh_points);
    (0..=samples)
        .map(|i| {
            let e = e_floor + bind_min + (bind_max * 1.2 - bind_min) * i as f64 / samples as f64;
            let (d, _) = numerov_defect(cfg, &mesh, e, lp, lp_lp1);
            (e, d)
        })
        .collect()
}
