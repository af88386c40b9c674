//! Extended-phase-space geometry in constant-omega coordinates with flat
//! base connection: induced metric, extended connection, torsion, and the
//! symbolic identity suite.

use super::poly::Poly;
use crate::report::{Report, ReportEntry, Status};
use crate::scalar::{Coefficient, Symbol};

/// Classical data: n degrees of freedom, a constant invertible
/// antisymmetric 2n x 2n symplectic matrix, a polynomial Hamiltonian over
/// the 2n phase-space coordinates, and a constant Poisson extension tau.
#[derive(Clone, Debug)]
pub struct PhaseSpec {
    pub n: usize,
    /// omega_{mu nu}, lower indices.
    pub omega: Vec<Vec<Coefficient>>,
    /// omega^{mu nu}, the inverse matrix.
    pub omega_inv: Vec<Vec<Coefficient>>,
    pub h: Poly,
    pub tau: Vec<Coefficient>,
}

impl PhaseSpec {
    /// Canonical block form: omega_{i, j+n} = -delta_ij (so that
    /// -omega/2 = dx^i ^ dp_i) and its inverse omega^{i, j+n} = +delta_ij.
    pub fn canonical(n: usize, h: Poly) -> Self {
        assert_eq!(h.vars, 2 * n);
        let m = 2 * n;
        let mut omega = vec![vec![Coefficient::zero(); m]; m];
        let mut omega_inv = vec![vec![Coefficient::zero(); m]; m];
        for i in 0..n {
            omega[i][i + n] = -Coefficient::one();
            omega[i + n][i] = Coefficient::one();
            omega_inv[i][i + n] = Coefficient::one();
            omega_inv[i + n][i] = -Coefficient::one();
        }
        PhaseSpec {
            n,
            omega,
            omega_inv,
            h,
            tau: vec![Coefficient::zero(); m],
        }
    }

    /// SHO Hamiltonian p^2/2m + (1/2) m nu^2 x^2 over n degrees of freedom.
    pub fn sho(n: usize) -> Self {
        let vars = 2 * n;
        let inv_2m =
            Coefficient::from_ratio(1, 2) * Coefficient::symbol_pow(Symbol::Mass, -1);
        let half_m_nu2 = Coefficient::from_ratio(1, 2)
            * Coefficient::symbol(Symbol::Mass)
            * Coefficient::symbol_pow(Symbol::Nu, 2);
        let mut h = Poly::zero(vars);
        for i in 0..n {
            let x = Poly::var(vars, i);
            let p = Poly::var(vars, i + n);
            h = h + (&p * &p).scale(&inv_2m) + (&x * &x).scale(&half_m_nu2);
        }
        PhaseSpec::canonical(n, h)
    }

    pub fn with_tau(mut self, tau: Vec<Coefficient>) -> Self {
        assert_eq!(tau.len(), 2 * self.n);
        self.tau = tau;
        self
    }

    pub fn dims(&self) -> usize {
        2 * self.n
    }
}

/// Component table over extended indices 0 (time) and 1..=2n (phase
/// space); entries are polynomials in the phase-space coordinates.
#[derive(Clone, Debug)]
pub struct ClassicalTensor {
    pub arity: usize,
    pub dim: usize,
    components: Vec<Poly>,
}

impl ClassicalTensor {
    pub fn zeros(spec: &PhaseSpec, arity: usize) -> Self {
        let dim = spec.dims() + 1;
        ClassicalTensor {
            arity,
            dim,
            components: vec![Poly::zero(spec.dims()); dim.pow(arity as u32)],
        }
    }

    fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.arity);
        let mut o = 0;
        for &i in idx {
            assert!(i < self.dim);
            o = o * self.dim + i;
        }
        o
    }

    pub fn get(&self, idx: &[usize]) -> &Poly {
        &self.components[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], p: Poly) {
        let o = self.offset(idx);
        self.components[o] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|p| p.is_zero())
    }

    pub fn residual_terms(&self) -> usize {
        self.components.iter().map(|p| p.terms().count()).sum()
    }
}

/// Extended Hamiltonian vector field X = d_t + Xbar,
/// Xbar^mu = omega^{mu nu} h_{,nu}: component 0 is the constant 1.
pub fn hamiltonian_vector_field(spec: &PhaseSpec) -> ClassicalTensor {
    let m = spec.dims();
    let mut x = ClassicalTensor::zeros(spec, 1);
    x.set(&[0], Poly::constant(m, Coefficient::one()));
    for mu in 0..m {
        let mut acc = Poly::zero(m);
        for nu in 0..m {
            if spec.omega_inv[mu][nu].is_zero() {
                continue;
            }
            acc = acc + spec.h.partial(nu).scale(&spec.omega_inv[mu][nu]);
        }
        x.set(&[mu + 1], acc);
    }
    x
}

/// Induced (possibly degenerate) metric
/// g^{mu nu} = omega^{mu gamma} omega^{nu rho} h_{,rho gamma}
/// (flat base connection).
pub fn induced_metric(spec: &PhaseSpec) -> ClassicalTensor {
    let m = spec.dims();
    let mut g = ClassicalTensor::zeros(spec, 2);
    for mu in 0..m {
        for nu in 0..m {
            let mut acc = Poly::zero(m);
            for gamma in 0..m {
                for rho in 0..m {
                    let c = spec.omega_inv[mu][gamma].clone()
                        * spec.omega_inv[nu][rho].clone();
                    if c.is_zero() {
                        continue;
                    }
                    acc = acc + spec.h.partial(rho).partial(gamma).scale(&c);
                }
            }
            g.set(&[mu + 1, nu + 1], acc);
        }
    }
    g
}

/// Extended Christoffel symbols: Gamma^mu_{alpha 0} = g^{mu beta}
/// omega_{beta alpha}, Gamma^mu_{0 alpha} = 0, all else zero (flat base).
pub fn extended_connection(spec: &PhaseSpec) -> ClassicalTensor {
    let m = spec.dims();
    let g = induced_metric(spec);
    let mut gamma = ClassicalTensor::zeros(spec, 3);
    for mu in 0..m {
        for alpha in 0..m {
            let mut acc = Poly::zero(m);
            for beta in 0..m {
                if spec.omega[beta][alpha].is_zero() {
                    continue;
                }
                acc = acc + g.get(&[mu + 1, beta + 1]).scale(&spec.omega[beta][alpha]);
            }
            gamma.set(&[mu + 1, alpha + 1, 0], acc);
        }
    }
    gamma
}

/// Torsion components T^mu_{nu 0} = -T^mu_{0 nu} = g^{mu beta}
/// omega_{beta nu}.
pub fn torsion_classical(spec: &PhaseSpec) -> ClassicalTensor {
    let m = spec.dims();
    let gamma = extended_connection(spec);
    let mut t = ClassicalTensor::zeros(spec, 3);
    for mu in 0..m {
        for nu in 0..m {
            let v = gamma.get(&[mu + 1, nu + 1, 0]).clone();
            t.set(&[mu + 1, nu + 1, 0], v.clone());
            t.set(&[mu + 1, 0, nu + 1], -v);
        }
    }
    t
}

/// The symmetric-extension variant Gamma^mu_{alpha 0} = Gamma^mu_{0 alpha}
/// = (1/2) g omega, which is torsion free but not omega-tilde compatible.
pub fn symmetric_extension(spec: &PhaseSpec) -> ClassicalTensor {
    let m = spec.dims();
    let g = induced_metric(spec);
    let mut gamma = ClassicalTensor::zeros(spec, 3);
    let half = Coefficient::from_ratio(1, 2);
    for mu in 0..m {
        for alpha in 0..m {
            let mut acc = Poly::zero(m);
            for beta in 0..m {
                if spec.omega[beta][alpha].is_zero() {
                    continue;
                }
                acc = acc + g.get(&[mu + 1, beta + 1]).scale(&spec.omega[beta][alpha]);
            }
            let acc = acc.scale(&half);
            gamma.set(&[mu + 1, alpha + 1, 0], acc.clone());
            gamma.set(&[mu + 1, 0, alpha + 1], acc);
        }
    }
    gamma
}

/// Extended 2-form omega-tilde = omega - 2 dh ^ dt as an antisymmetric
/// component matrix (omega = omega_{mu nu} dx^mu ^ dx^nu convention).
fn omega_tilde(spec: &PhaseSpec) -> ClassicalTensor {
    let m = spec.dims();
    let mut w = ClassicalTensor::zeros(spec, 2);
    for mu in 0..m {
        for nu in 0..m {
            w.set(
                &[mu + 1, nu + 1],
                Poly::constant(m, spec.omega[mu][nu].clone()),
            );
        }
        w.set(&[mu + 1, 0], -spec.h.partial(mu));
        w.set(&[0, mu + 1], spec.h.partial(mu));
    }
    w
}

/// G = omega_{mu nu} eta^mu (x) eta^nu with eta^mu = dx^mu - Xbar^mu dt:
/// G_{mu nu} = omega_{mu nu}, G_{0 mu} = -G_{mu 0} = h_{,mu}, G_{00} = 0.
fn metric_g(spec: &PhaseSpec) -> ClassicalTensor {
    let m = spec.dims();
    let mut g = ClassicalTensor::zeros(spec, 2);
    for mu in 0..m {
        for nu in 0..m {
            g.set(
                &[mu + 1, nu + 1],
                Poly::constant(m, spec.omega[mu][nu].clone()),
            );
        }
        g.set(&[0, mu + 1], spec.h.partial(mu));
        g.set(&[mu + 1, 0], -spec.h.partial(mu));
    }
    g
}

/// Covariant derivative of a (0,2) tensor with the extended connection:
/// nabla_a T_{bc} = d_a T_{bc} - Gamma^d_{ab} T_{dc} - Gamma^d_{ac} T_{bd}
/// (time derivatives vanish; Gamma^0_{..} = 0).
fn covariant_02(
    spec: &PhaseSpec,
    gamma: &ClassicalTensor,
    t: &ClassicalTensor,
) -> ClassicalTensor {
    let m = spec.dims();
    let dim = m + 1;
    let mut out = ClassicalTensor::zeros(spec, 3);
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                // partial derivative of the component (zero for a = 0).
                let mut acc = if a == 0 {
                    Poly::zero(m)
                } else {
                    t.get(&[b, c]).partial(a - 1)
                };
                for d in 1..dim {
                    let g1 = gamma.get(&[d, a, b]);
                    if !g1.is_zero() {
                        acc = acc - &(g1.clone()) * t.get(&[d, c]);
                    }
                    let g2 = gamma.get(&[d, a, c]);
                    if !g2.is_zero() {
                        acc = acc - &(g2.clone()) * t.get(&[b, d]);
                    }
                }
                out.set(&[a, b, c], acc);
            }
        }
    }
    out
}

/// Riemann components from the Christoffel formula (flat base, constant
/// omega): R^a_{bcd} = Gamma^a_{db,c} - Gamma^a_{cb,d}
/// + Gamma^a_{cs} Gamma^s_{db} - Gamma^a_{ds} Gamma^s_{cb}.
fn curvature_classical(spec: &PhaseSpec, gamma: &ClassicalTensor) -> ClassicalTensor {
    let m = spec.dims();
    let dim = m + 1;
    let mut out = ClassicalTensor::zeros(spec, 4);
    for a in 0..dim {
        for b in 0..dim {
            for c in 0..dim {
                for d in 0..dim {
                    let mut acc = Poly::zero(m);
                    if c > 0 {
                        acc = acc + gamma.get(&[a, d, b]).partial(c - 1);
                    }
                    if d > 0 {
                        acc = acc - gamma.get(&[a, c, b]).partial(d - 1);
                    }
                    for s in 0..dim {
                        let g1 = gamma.get(&[a, c, s]);
                        let g2 = gamma.get(&[s, d, b]);
                        if !g1.is_zero() && !g2.is_zero() {
                            acc = acc + &(g1.clone()) * g2;
                        }
                        let g3 = gamma.get(&[a, d, s]);
                        let g4 = gamma.get(&[s, c, b]);
                        if !g3.is_zero() && !g4.is_zero() {
                            acc = acc - &(g3.clone()) * g4;
                        }
                    }
                    out.set(&[a, b, c, d], acc);
                }
            }
        }
    }
    out
}

fn entry(id: &str, spec: &PhaseSpec, ok: bool, residual: usize) -> ReportEntry {
    ReportEntry {
        identity_id: id.to_string(),
        calculus: "phase".to_string(),
        dimension: spec.n as u8,
        status: if ok { Status::Pass } else { Status::Fail },
        residual_terms: residual,
        elapsed_ms: None,
    }
}

/// All the extended-geometry identities as exact polynomial zeros:
/// autoparallel X, covariantly constant omega-tilde and G, i_X
/// omega-tilde = 0, eta^mu (X) = 0, vanishing curvature, and Poisson
/// compatibility of tau.
pub fn check_geometry(spec: &PhaseSpec) -> Report {
    let m = spec.dims();
    let gamma = extended_connection(spec);
    let x = hamiltonian_vector_field(spec);
    let mut entries = Vec::new();

    // nabla_X X = 0: Xbar^nu d_nu Xbar^mu + Gamma^mu_{nu 0} Xbar^nu = 0.
    {
        let mut worst = Poly::zero(m);
        let mut ok = true;
        for mu in 0..m {
            let mut acc = Poly::zero(m);
            for nu in 0..m {
                acc = acc + &x.get(&[nu + 1]).clone() * &x.get(&[mu + 1]).partial(nu);
                acc = acc + &gamma.get(&[mu + 1, nu + 1, 0]).clone() * x.get(&[nu + 1]);
            }
            if !acc.is_zero() {
                ok = false;
                worst = acc;
            }
        }
        entries.push(entry("phase/autoparallel-X", spec, ok, worst.terms().count()));
    }

    // eta^mu(X) = 0 (classical shadow of X(omega_i) = X(eta^i) = 0):
    // build the 1-form table eta^mu_a (delta on phase indices, -Xbar^mu on
    // the time leg) and contract with X^a.
    {
        let mut eta = ClassicalTensor::zeros(spec, 2);
        for mu in 0..m {
            eta.set(&[mu + 1, mu + 1], Poly::constant(m, Coefficient::one()));
            eta.set(&[mu + 1, 0], -x.get(&[mu + 1]).clone());
        }
        let mut ok = true;
        let mut residual = 0;
        for mu in 0..m {
            let mut acc = Poly::zero(m);
            for a in 0..=m {
                let e = eta.get(&[mu + 1, a]);
                let xa = x.get(&[a]);
                if !e.is_zero() && !xa.is_zero() {
                    acc = acc + &(e.clone()) * xa;
                }
            }
            if !acc.is_zero() {
                ok = false;
                residual += acc.terms().count();
            }
        }
        entries.push(entry("phase/eta-annihilates-X", spec, ok, residual));
    }

    // nabla omega-tilde = 0.
    let wt = omega_tilde(spec);
    let nabla_wt = covariant_02(spec, &gamma, &wt);
    entries.push(entry(
        "phase/parallel-omegatilde",
        spec,
        nabla_wt.is_zero(),
        nabla_wt.residual_terms(),
    ));

    // i_X omega-tilde = 0: X^a wtilde_{ab} = 0 for all b.
    {
        let dim = m + 1;
        let mut ok = true;
        let mut residual = 0;
        for b in 0..dim {
            let mut acc = Poly::zero(m);
            for a in 0..dim {
                let xa = x.get(&[a]);
                let w = wt.get(&[a, b]);
                if !xa.is_zero() && !w.is_zero() {
                    acc = acc + &(xa.clone()) * w;
                }
            }
            if !acc.is_zero() {
                ok = false;
                residual += acc.terms().count();
            }
        }
        entries.push(entry("phase/kernel-omegatilde", spec, ok, residual));
    }

    // nabla G = 0.
    let g = metric_g(spec);
    let nabla_g = covariant_02(spec, &gamma, &g);
    entries.push(entry(
        "phase/parallel-G",
        spec,
        nabla_g.is_zero(),
        nabla_g.residual_terms(),
    ));

    // Flat curvature.
    let r = curvature_classical(spec, &gamma);
    entries.push(entry("phase/flat", spec, r.is_zero(), r.residual_terms()));

    // Symmetric-extension variant has zero torsion.
    {
        let sym = symmetric_extension(spec);
        let dim = m + 1;
        let mut ok = true;
        let mut residual = 0;
        for a in 1..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let t = sym.get(&[a, b, c]).clone() - sym.get(&[a, c, b]).clone();
                    if !t.is_zero() {
                        ok = false;
                        residual += t.terms().count();
                    }
                }
            }
        }
        entries.push(entry("phase/symmetric-torsion-free", spec, ok, residual));
    }

    // Poisson compatibility: nabla-bar tau = 0 (constant tau, flat base)
    // and T^mu_{nu 0} tau^nu = 0.
    {
        let t = torsion_classical(spec);
        let mut ok = true;
        let mut residual = 0;
        for mu in 0..m {
            let mut acc = Poly::zero(m);
            for nu in 0..m {
                if spec.tau[nu].is_zero() {
                    continue;
                }
                acc = acc + t.get(&[mu + 1, nu + 1, 0]).scale(&spec.tau[nu]);
            }
            if !acc.is_zero() {
                ok = false;
                residual += acc.terms().count();
            }
        }
        entries.push(entry("phase/poisson-tau", spec, ok, residual));
    }

    Report {
        entries,
        identities: vec![],
    }
}
