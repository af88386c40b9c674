//! Sampled observables of a numeric flow.

use serde::Serialize;
use std::collections::BTreeMap;
use std::io::Write;

/// Monotone parameter axis plus named real-valued channels.
#[derive(Clone, Debug, Default)]
pub struct TimeSeries {
    pub param_name: String,
    pub params: Vec<f64>,
    pub channels: Vec<(String, Vec<f64>)>,
}

impl TimeSeries {
    pub fn new(param_name: &str) -> Self {
        TimeSeries {
            param_name: param_name.to_string(),
            params: Vec::new(),
            channels: Vec::new(),
        }
    }

    pub fn channel(&self, name: &str) -> Option<&[f64]> {
        self.channels
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.as_slice())
    }

    /// CSV with a header row and 17-significant-digit floats.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "{}", self.param_name)?;
        for (name, _) in &self.channels {
            write!(w, ",{}", name)?;
        }
        writeln!(w)?;
        for (i, p) in self.params.iter().enumerate() {
            write!(w, "{:.16e}", p)?;
            for (_, values) in &self.channels {
                write!(w, ",{:.16e}", values[i])?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

/// Least-squares affine fit of a channel against the parameter axis.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AffineFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_residual: f64,
}

pub fn affine_fit(params: &[f64], values: &[f64]) -> AffineFit {
    assert_eq!(params.len(), values.len());
    let n = params.len() as f64;
    let sx: f64 = params.iter().sum();
    let sy: f64 = values.iter().sum();
    let sxx: f64 = params.iter().map(|x| x * x).sum();
    let sxy: f64 = params.iter().zip(values).map(|(x, y)| x * y).sum();
    let det = n * sxx - sx * sx;
    let (slope, intercept) = if det.abs() < f64::EPSILON {
        (0.0, sy / n)
    } else {
        ((n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det)
    };
    let max_residual = params
        .iter()
        .zip(values)
        .map(|(x, y)| (y - (slope * x + intercept)).abs())
        .fold(0.0, f64::max);
    AffineFit {
        slope,
        intercept,
        max_residual,
    }
}

/// Per-channel affine summaries in the JSON layout
/// {config, observables: {name: {slope, intercept, max_residual}}}.
pub fn summarize(series: &TimeSeries) -> BTreeMap<String, AffineFit> {
    series
        .channels
        .iter()
        .map(|(name, values)| (name.clone(), affine_fit(&series.params, values)))
        .collect()
}
