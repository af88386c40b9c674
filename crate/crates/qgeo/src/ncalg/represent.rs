//! Finite-grid Schroedinger representation: x acts by multiplication,
//! p by -i hbar times the spectral (Fourier) derivative. Serves as an
//! independent numeric oracle for symbolic identities: a symbolic zero
//! must act as (numerically) zero on smooth interior-supported states.

use super::element::{AlgebraElement, NcalgError, PositionAtom};
use crate::scalar::Symbol;
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

/// Numeric values for the unit symbols.
#[derive(Clone, Copy, Debug)]
pub struct NumericBindings {
    pub hbar: f64,
    pub mass: f64,
    pub charge: f64,
    pub light_speed: f64,
    pub nu: f64,
    pub u: f64,
    pub beta: f64,
    pub alpha: f64,
    pub kappa: f64,
}

impl Default for NumericBindings {
    fn default() -> Self {
        NumericBindings {
            hbar: 1.0,
            mass: 1.0,
            charge: 1.0,
            light_speed: 1.0,
            nu: 1.0,
            u: 1.0,
            beta: 1.0,
            alpha: 1.0,
            kappa: 1.0,
        }
    }
}

impl NumericBindings {
    pub fn get(&self, s: Symbol) -> f64 {
        match s {
            Symbol::Hbar => self.hbar,
            Symbol::Mass => self.mass,
            Symbol::Charge => self.charge,
            Symbol::LightSpeed => self.light_speed,
            Symbol::Nu => self.nu,
            Symbol::U => self.u,
            Symbol::Beta => self.beta,
            Symbol::Alpha => self.alpha,
            Symbol::Kappa => self.kappa,
        }
    }
}

/// Dense complex matrix, row-major.
#[derive(Clone, Debug)]
pub struct CMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        let n = values.len();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = values[i];
        }
        m
    }

    pub fn matmul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, rhs: &CMatrix, s: Complex64) {
        assert_eq!(self.n, rhs.n);
        for (a, b) in self.data.iter_mut().zip(rhs.data.iter()) {
            *a += s * b;
        }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        assert_eq!(v.len(), n);
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..n {
                acc += self.data[i * n + j] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                let d = self.data[i * n + j] - self.data[j * n + i].conj();
                if d.norm() > tol {
                    return false;
                }
            }
        }
        true
    }
}

/// Grid representation of the n=1 nonrelativistic algebra after concrete
/// substitution.
pub struct GridRepresentation {
    pub n: usize,
    pub half_width: f64,
    pub xs: Vec<f64>,
    bind: NumericBindings,
    p_matrix: CMatrix,
}

impl GridRepresentation {
    pub fn new(n: usize, half_width: f64, bind: NumericBindings) -> Self {
        assert!(n >= 16 && n.is_power_of_two(), "grid size: power of two >= 16");
        let dx = 2.0 * half_width / n as f64;
        let xs: Vec<f64> = (0..n).map(|i| -half_width + i as f64 * dx).collect();

        // Spectral derivative matrix: columns are FFT-differentiated deltas.
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        let ifft = planner.plan_fft_inverse(n);
        let ks = wavenumbers(n, half_width);
        let mut p_matrix = CMatrix::zeros(n);
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..n {
            for v in col.iter_mut() {
                *v = Complex64::new(0.0, 0.0);
            }
            col[j] = Complex64::new(1.0, 0.0);
            fft.process(&mut col);
            for (i, v) in col.iter_mut().enumerate() {
                // p = -i hbar d/dx -> hbar k in Fourier space
                *v *= Complex64::new(bind.hbar * ks[i], 0.0) / n as f64;
            }
            ifft.process(&mut col);
            for i in 0..n {
                p_matrix.data[i * n + j] = col[i];
            }
        }

        GridRepresentation {
            n,
            half_width,
            xs,
            bind,
            p_matrix,
        }
    }

    /// Matrix of a concrete (substituted) n=1 nonrelativistic element.
    pub fn represent(&self, e: &AlgebraElement) -> Result<CMatrix, NcalgError> {
        if e.spec().is_relativistic() {
            return Err(NcalgError::WrongAlgebra("nonrelativistic"));
        }
        if e.has_generic_atoms() {
            return Err(NcalgError::GenericAtoms);
        }
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for (key, coeff) in e.terms() {
            // Position part: pointwise values.
            let mut values = vec![Complex64::new(1.0, 0.0); n];
            for (atom, pow) in &key.position {
                match atom {
                    PositionAtom::Coordinate(_) => {
                        for (i, v) in values.iter_mut().enumerate() {
                            *v *= Complex64::new(self.xs[i], 0.0).powu(*pow);
                        }
                    }
                    _ => return Err(NcalgError::GenericAtoms),
                }
            }
            // Momentum part.
            let mut m = CMatrix::diagonal(&values);
            for _ in &key.momenta {
                m = m.matmul(&self.p_matrix);
            }
            let scale = coeff.eval(&|s| self.bind.get(s));
            out.add_scaled(&m, scale);
        }
        Ok(out)
    }

    /// Battery of normalized Gaussian test states supported away from the
    /// periodic boundary: tails must stay below machine noise at the wrap
    /// point or spectral derivatives of the sawtooth x leak back in.
    pub fn test_states(&self) -> Vec<Vec<Complex64>> {
        let mut states = Vec::new();
        let l = self.half_width;
        for &x0 in &[-0.15 * l, 0.0, 0.15 * l] {
            for &p0 in &[-2.0, 0.0, 2.0] {
                for &sigma in &[0.04 * l, 0.05 * l, 0.06 * l] {
                    let mut v: Vec<Complex64> = self
                        .xs
                        .iter()
                        .map(|&x| {
                            let g = (-(x - x0) * (x - x0) / (4.0 * sigma * sigma)).exp();
                            let phase = Complex64::new(0.0, p0 * x / self.bind.hbar).exp();
                            g * phase
                        })
                        .collect();
                    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    for z in v.iter_mut() {
                        *z /= norm;
                    }
                    states.push(v);
                }
            }
        }
        states
    }
}

fn wavenumbers(n: usize, half_width: f64) -> Vec<f64> {
    let dk = PI / half_width;
    (0..n)
        .map(|i| {
            let k = if i <= n / 2 { i as f64 } else { i as f64 - n as f64 };
            k * dk
        })
        .collect()
}

/// Oracle seminorm of an operator: largest residual over the smooth
/// interior test battery (spectral operators are only faithful away from
/// the periodic boundary, so plain entrywise norms would see wrap-around
/// artifacts of the sawtooth x).
pub fn oracle_norm(rep: &GridRepresentation, m: &CMatrix) -> f64 {
    let mut worst: f64 = 0.0;
    for state in rep.test_states() {
        let out = m.apply(&state);
        let r: f64 = out.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        worst = worst.max(r);
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::AlgebraSpec;
    use crate::scalar::Coefficient;

    #[test]
    fn defining_relation_on_grid() {
        // [x, p] - i hbar with the commutator taken as a numeric matrix
        // product, not through the symbolic engine.
        let spec = AlgebraSpec::nonrel(1);
        let rep = GridRepresentation::new(128, 10.0, NumericBindings::default());
        let mx = rep
            .represent(&AlgebraElement::coordinate(spec, 1))
            .unwrap();
        let mp = rep.represent(&AlgebraElement::momentum(spec, 1)).unwrap();
        let mut comm = mx.matmul(&mp);
        comm.add_scaled(&mp.matmul(&mx), Complex64::new(-1.0, 0.0));
        let ih = rep
            .represent(&AlgebraElement::from_coefficient(spec, Coefficient::i_hbar()))
            .unwrap();
        comm.add_scaled(&ih, Complex64::new(-1.0, 0.0));
        assert!(oracle_norm(&rep, &comm) < 1e-10);
    }

    #[test]
    fn x_is_hermitian() {
        let spec = AlgebraSpec::nonrel(1);
        let rep = GridRepresentation::new(64, 8.0, NumericBindings::default());
        let x = AlgebraElement::coordinate(spec, 1);
        let m = rep.represent(&x).unwrap();
        assert!(m.is_hermitian(1e-12));
    }

    #[test]
    fn generic_atoms_rejected() {
        let spec = AlgebraSpec::nonrel(1);
        let rep = GridRepresentation::new(64, 8.0, NumericBindings::default());
        let v = AlgebraElement::potential_deriv(spec, vec![]);
        assert!(matches!(rep.represent(&v), Err(NcalgError::GenericAtoms)));
    }
}
