//! Identity bookkeeping shared by the calculus and connection suites.
//!
//! A suite produces named identities, each an equality of two canonical
//! tensors. "pass" means the residual lhs - rhs is the canonical zero.

use crate::calculus::{CalculusSpec, TensorElement};
use serde::{Deserialize, Serialize};
use std::time::Instant;

/// One checked identity, kept with both sides so that numeric oracles can
/// re-evaluate them independently of the symbolic engine.
#[derive(Clone, Debug)]
pub struct Identity {
    pub id: String,
    pub lhs: TensorElement,
    pub rhs: TensorElement,
}

impl Identity {
    pub fn new(id: impl Into<String>, lhs: TensorElement, rhs: TensorElement) -> Self {
        Identity {
            id: id.into(),
            lhs,
            rhs,
        }
    }

    pub fn vanishing(id: impl Into<String>, lhs: TensorElement) -> Self {
        Identity::new(id, lhs, TensorElement::zero())
    }

    pub fn residual(&self) -> TensorElement {
        self.lhs.clone() - self.rhs.clone()
    }

    pub fn passes(&self) -> bool {
        self.residual().is_zero()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportEntry {
    pub identity_id: String,
    pub calculus: String,
    pub dimension: u8,
    pub status: Status,
    pub residual_terms: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Evaluated suite: entries in deterministic identity order, identities
/// retained for downstream oracles.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub entries: Vec<ReportEntry>,
    pub identities: Vec<Identity>,
}

impl Report {
    pub fn from_identities(spec: &CalculusSpec, identities: Vec<Identity>) -> Self {
        let mut entries = Vec::with_capacity(identities.len());
        for id in &identities {
            let t0 = Instant::now();
            let residual = id.residual();
            let elapsed = t0.elapsed().as_secs_f64() * 1e3;
            entries.push(ReportEntry {
                identity_id: id.id.clone(),
                calculus: spec.calculus_label().to_string(),
                dimension: spec.dimension(),
                status: if residual.is_zero() {
                    Status::Pass
                } else {
                    Status::Fail
                },
                residual_terms: residual.residual_terms(),
                elapsed_ms: Some(elapsed),
            });
        }
        Report {
            entries,
            identities,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.status == Status::Pass)
    }

    pub fn failures(&self) -> Vec<&ReportEntry> {
        self.entries
            .iter()
            .filter(|e| e.status == Status::Fail)
            .collect()
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.entries.extend(other.entries);
        self.identities.extend(other.identities);
        self
    }
}
