//! Named verification suites: the paper-facing ledger ids used by the CLI.

use super::checks::{
    check_sigma_bimodule, check_vector_field_bimodule, curvature, descent_check,
    geodesic_velocity_check, invariant_structure_check, omega_tilde_check, torsion,
};
use super::structures::{
    derive_sigma, heisenberg_connection, heisenberg_metric, heisenberg_vector_field,
    kg_connection, kg_sigma_expected, kg_vector_field, sigma_expected, Mutation,
};
use crate::calculus::{
    central_closed_check, check_first_order_consistency, check_quotient_consistency,
    CalculusSpec, FormGenerator, TensorElement,
};
use crate::ncalg::{AlgebraElement, Bindings};
use crate::report::{Identity, Report};
use crate::scalar::{Coefficient, Symbol};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum SuiteError {
    #[error("unknown suite '{0}'; expected one of {1}")]
    UnknownSuite(String, String),
    #[error("suite '{0}' does not run at dimension {1}")]
    BadDimension(String, u8),
    #[error("substitution failed: {0}")]
    Subst(#[from] crate::ncalg::SubstError),
}

pub fn suite_ids() -> &'static [&'static str] {
    &[
        "prop4.1", "prop4.2", "prop4.3", "cor4.4", "prop5.1", "thm5.2", "appendixA", "prop5.3",
        "lemma5.4",
    ]
}

pub fn available_suites() -> String {
    suite_ids().join(", ")
}

fn nonrel_dim(id: &str, dim: u8) -> Result<CalculusSpec, SuiteError> {
    if (1..=3).contains(&dim) {
        Ok(CalculusSpec::nonrel(dim))
    } else {
        Err(SuiteError::BadDimension(id.to_string(), dim))
    }
}

fn rel_spec(spatial: u8, static_gauge: bool) -> CalculusSpec {
    if static_gauge {
        CalculusSpec {
            algebra: crate::ncalg::AlgebraSpec::relativistic_static(spatial),
            variant: crate::calculus::CalculusVariant::Rel,
            flipped: Default::default(),
        }
    } else {
        CalculusSpec::relativistic(spatial)
    }
}

fn rel_spatial(id: &str, dim: u8) -> Result<u8, SuiteError> {
    match dim {
        2 => Ok(1),
        4 => Ok(3),
        _ => Err(SuiteError::BadDimension(id.to_string(), dim)),
    }
}

/// Apply concrete bindings to every identity of a report.
fn substitute_report(report: Report, bindings: Option<&Bindings>, spec: &CalculusSpec) -> Result<Report, SuiteError> {
    match bindings {
        None => Ok(report),
        Some(b) => {
            let mut identities = Vec::with_capacity(report.identities.len());
            for id in report.identities {
                identities.push(Identity::new(
                    id.id,
                    id.lhs.substitute(b)?,
                    id.rhs.substitute(b)?,
                ));
            }
            Ok(Report::from_identities(spec, identities))
        }
    }
}

/// Run one named suite. `dim` is the spatial dimension for the
/// nonrelativistic suites and the total spacetime dimension (2 or 4) for
/// the relativistic ones. Bindings, when given, substitute a concrete
/// potential or gauge field into every identity before evaluation.
pub fn run_suite(
    id: &str,
    dim: u8,
    bindings: Option<&Bindings>,
) -> Result<Report, SuiteError> {
    run_suite_full(id, dim, bindings, None, false)
}

/// `run_suite` with static (time-independent) gauge fields in the
/// relativistic suites.
pub fn run_suite_with_options(
    id: &str,
    dim: u8,
    bindings: Option<&Bindings>,
    static_gauge: bool,
) -> Result<Report, SuiteError> {
    run_suite_full(id, dim, bindings, None, static_gauge)
}

/// Same as `run_suite` with an optional deliberate sign flip injected into
/// the built-in tables (mutation testing).
pub fn run_suite_mutated(
    id: &str,
    dim: u8,
    bindings: Option<&Bindings>,
    mutation: Option<Mutation>,
) -> Result<Report, SuiteError> {
    run_suite_full(id, dim, bindings, mutation, false)
}

fn run_suite_full(
    id: &str,
    dim: u8,
    bindings: Option<&Bindings>,
    mutation: Option<Mutation>,
    static_gauge: bool,
) -> Result<Report, SuiteError> {
    let report = match id {
        "prop4.1" => {
            let spec = nonrel_dim(id, dim)?;
            let x = heisenberg_vector_field(&spec, mutation);
            check_first_order_consistency(&spec)
                .merge(check_vector_field_bimodule(&x, &spec))
        }
        "prop4.2" => {
            let spec = nonrel_dim(id, dim)?;
            let nabla = heisenberg_connection(&spec, mutation);
            let x = heisenberg_vector_field(&spec, mutation);
            let sigma = derive_sigma(&nabla, &spec).expect("derivable");
            let expected = sigma_expected(&spec);
            let mut identities = Vec::new();
            for (pair, entry) in &sigma.table {
                identities.push(Identity::new(
                    format!("sigmatable/{},{}", pair.0.label(), pair.1.label()),
                    entry.clone(),
                    expected.entry(pair.0, pair.1).clone(),
                ));
            }
            Report::from_identities(&spec, identities)
                .merge(check_sigma_bimodule(&sigma, &spec))
                .merge(geodesic_velocity_check(&x, &nabla, &spec))
        }
        "prop4.3" => {
            let spec = nonrel_dim(id, dim)?;
            let nabla = heisenberg_connection(&spec, mutation);
            let x = heisenberg_vector_field(&spec, mutation);
            let metric = heisenberg_metric(&spec, mutation);
            invariant_structure_check(&x, &nabla, &metric, &spec)
        }
        "cor4.4" => {
            let spec = nonrel_dim(id, dim)?;
            let s = spec.algebra;
            let nabla = heisenberg_connection(&spec, mutation);
            let metric = heisenberg_metric(&spec, mutation);
            let inv_m = Coefficient::symbol_pow(Symbol::Mass, -1);
            let mut identities = Vec::new();
            // Torsion values of Cor 4.4.
            for (gen, t) in torsion(&nabla, &spec) {
                let expected = match gen {
                    FormGenerator::ThetaPrime => TensorElement::zero(),
                    FormGenerator::Dx(i) => {
                        let mut e = TensorElement::generator(s, FormGenerator::Dp(i))
                            .wedge_product(
                                &TensorElement::generator(s, FormGenerator::ThetaPrime),
                                &spec,
                            );
                        e = e.scale(&-inv_m.clone());
                        e
                    }
                    FormGenerator::Dp(i) => {
                        let mut e = TensorElement::zero();
                        for j in s.indices() {
                            e = e + TensorElement::from_parts(
                                AlgebraElement::potential_deriv(s, vec![j, i]),
                                &[FormGenerator::Dx(j)],
                            )
                            .wedge_product(
                                &TensorElement::generator(s, FormGenerator::ThetaPrime),
                                &spec,
                            );
                        }
                        e
                    }
                };
                identities.push(Identity::new(
                    format!("torsion/T({})", gen.label()),
                    t,
                    expected,
                ));
            }
            for (gen, r) in curvature(&nabla, &spec) {
                identities.push(Identity::vanishing(format!("flat/R({})", gen.label()), r));
            }
            Report::from_identities(&spec, identities)
                .merge(omega_tilde_check(&nabla, &metric, &spec))
        }
        "prop5.1" => {
            let spatial = rel_spatial(id, dim)?;
            let spec = rel_spec(spatial, static_gauge);
            let x = kg_vector_field(&spec, mutation);
            check_first_order_consistency(&spec)
                .merge(check_vector_field_bimodule(&x, &spec))
        }
        "thm5.2" => {
            let spatial = rel_spatial(id, dim)?;
            let spec = rel_spec(spatial, static_gauge);
            let nabla = kg_connection(&spec, mutation);
            let x = kg_vector_field(&spec, mutation);
            let sigma = derive_sigma(&nabla, &spec).expect("derivable");
            let expected = kg_sigma_expected(&spec);
            let mut identities = Vec::new();
            for (pair, entry) in &sigma.table {
                identities.push(Identity::new(
                    format!("sigmatable/{},{}", pair.0.label(), pair.1.label()),
                    entry.clone(),
                    expected.entry(pair.0, pair.1).clone(),
                ));
            }
            Report::from_identities(&spec, identities)
                .merge(geodesic_velocity_check(&x, &nabla, &spec))
        }
        "appendixA" => {
            let spatial = rel_spatial(id, dim)?;
            let spec = rel_spec(spatial, static_gauge);
            let nabla = kg_connection(&spec, mutation);
            let sigma = derive_sigma(&nabla, &spec).expect("derivable");
            check_sigma_bimodule(&sigma, &spec)
        }
        "prop5.3" => {
            let spatial = rel_spatial(id, dim)?;
            let spec = CalculusSpec::reduced(spatial, static_gauge);
            check_quotient_consistency(&spec).merge(descent_check(&spec))
        }
        "lemma5.4" => {
            let spatial = rel_spatial(id, dim)?;
            let spec = CalculusSpec::reduced(spatial, true);
            let s = spec.algebra;
            // u = -p_0 - q A_0
            let u = -(AlgebraElement::momentum(s, 0)
                + AlgebraElement::gauge_deriv(s, 0, vec![])
                    .scale(&Coefficient::symbol(Symbol::Charge)));
            central_closed_check(&u, &spec)
        }
        other => {
            return Err(SuiteError::UnknownSuite(
                other.to_string(),
                available_suites(),
            ))
        }
    };
    let spec_for_subst = match id {
        "prop4.1" | "prop4.2" | "prop4.3" | "cor4.4" => nonrel_dim(id, dim)?,
        "prop5.3" => CalculusSpec::reduced(rel_spatial(id, dim)?, static_gauge),
        "lemma5.4" => CalculusSpec::reduced(rel_spatial(id, dim)?, true),
        _ => rel_spec(rel_spatial(id, dim)?, static_gauge),
    };
    substitute_report(report, bindings, &spec_for_subst)
}

/// The built-in mutation battery for the sensitivity criterion: each entry
/// is applied to every suite of its calculus; a mutation counts as
/// detected when at least one suite reports a failure.
pub fn mutation_battery(dim_nonrel: u8, dim_rel: u8) -> Vec<(String, bool)> {
    let nonrel_suites = ["prop4.1", "prop4.2", "prop4.3", "cor4.4"];
    let rel_suites = ["prop5.1", "thm5.2", "appendixA"];
    let mut results = Vec::new();

    let nonrel_mutations = vec![
        Mutation::NablaEntry(FormGenerator::Dx(1)),
        Mutation::NablaEntry(FormGenerator::Dp(1)),
        Mutation::XEntry(FormGenerator::Dx(1)),
        Mutation::XEntry(FormGenerator::Dp(1)),
        Mutation::Metric(super::structures::MetricPiece::DpDx),
        Mutation::Metric(super::structures::MetricPiece::DxDp),
        Mutation::Metric(super::structures::MetricPiece::ThetaDh),
        Mutation::Metric(super::structures::MetricPiece::DhTheta),
        Mutation::Metric(super::structures::MetricPiece::ThetaTheta),
    ];
    for m in nonrel_mutations {
        let detected = nonrel_suites.iter().any(|s| {
            !run_suite_mutated(s, dim_nonrel, None, Some(m))
                .expect("suite runs")
                .all_pass()
        });
        results.push((format!("nonrel/{:?}", m), detected));
    }

    let rel_mutations = vec![
        Mutation::NablaEntry(FormGenerator::Dx(1)),
        Mutation::NablaEntry(FormGenerator::Dp(0)),
        Mutation::XEntry(FormGenerator::Dx(0)),
        Mutation::XEntry(FormGenerator::Dp(1)),
        Mutation::Nc,
        Mutation::XiC,
        Mutation::EtaC,
    ];
    for m in rel_mutations {
        let detected = rel_suites.iter().any(|s| {
            !run_suite_mutated(s, dim_rel, None, Some(m))
                .expect("suite runs")
                .all_pass()
        });
        results.push((format!("rel/{:?}", m), detected));
    }

    results
}
