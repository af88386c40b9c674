//! Periodic spatial grid and wave functions for the 1D Schroedinger flows.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Uniform periodic grid on [-L, L).
#[derive(Clone, Debug)]
pub struct Grid {
    pub half_width: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(half_width: f64, n: usize) -> Self {
        assert!(n >= 16 && n.is_power_of_two(), "grid: power of two >= 16");
        assert!(half_width > 0.0);
        Grid { half_width, n }
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / self.n as f64
    }

    pub fn xs(&self) -> Vec<f64> {
        let dx = self.spacing();
        (0..self.n).map(|i| -self.half_width + i as f64 * dx).collect()
    }

    /// FFT wavenumber layout (DC first, negative half at the back).
    pub fn wavenumbers(&self) -> Vec<f64> {
        let dk = PI / self.half_width;
        (0..self.n)
            .map(|i| {
                let k = if i <= self.n / 2 {
                    i as f64
                } else {
                    i as f64 - self.n as f64
                };
                k * dk
            })
            .collect()
    }
}

/// Complex samples on a grid; norm convention sum |psi|^2 dx.
#[derive(Clone, Debug)]
pub struct WaveFunction {
    pub values: Vec<Complex64>,
}

impl WaveFunction {
    pub fn gaussian(grid: &Grid, x0: f64, p0: f64, sigma: f64, hbar: f64) -> Self {
        let mut values: Vec<Complex64> = grid
            .xs()
            .iter()
            .map(|&x| {
                let env = (-(x - x0) * (x - x0) / (4.0 * sigma * sigma)).exp();
                env * Complex64::new(0.0, p0 * x / hbar).exp()
            })
            .collect();
        let dx = grid.spacing();
        let norm = (values.iter().map(|z| z.norm_sqr()).sum::<f64>() * dx).sqrt();
        for v in values.iter_mut() {
            *v /= norm;
        }
        WaveFunction { values }
    }

    pub fn norm(&self, grid: &Grid) -> f64 {
        (self.values.iter().map(|z| z.norm_sqr()).sum::<f64>() * grid.spacing()).sqrt()
    }
}
