//! Approximate integration and the rank-guarded iteration for Fano period
//! integrals.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::RationalFunction;
use crate::annihilator::approx_ann;
use crate::error::{Error, Result};
use crate::fano::{coned_triangulation, embedded_table, find_polytope, integrand, FanoTableEntry, LatticePolytope};
use crate::groebner::{GeneratorSet, SetKind};
use crate::integration::{integrate, Integration, IntegrationBranch, StageTimings};
use crate::invariants::{holonomic_rank, is_holonomic};
use crate::stienstra::rank_lower_bound;
use crate::weyl::WeylOperator;

/// Version of the JSON report layout.
pub const REPORT_VERSION: u32 = 1;

pub const DEFAULT_MAX_ORDER: u32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Converged,
    CapReached,
    OutputOne,
    NotHolonomic,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Converged => "converged",
            Status::CapReached => "cap_reached",
            Status::OutputOne => "output_one",
            Status::NotHolonomic => "not_holonomic",
        }
    }
}

/// Result of one approximate integration step.
#[derive(Clone, Debug)]
pub struct ApproxIntegration {
    pub ann: GeneratorSet<WeylOperator>,
    pub holonomic: bool,
    /// `None` when the annihilator was not holonomic along the weight.
    pub integration: Option<Integration>,
    /// The subideal `J'` of the integration ideal; `⟨0⟩` on failure.
    pub ideal: GeneratorSet<WeylOperator>,
    pub ann_seconds: f64,
}

/// `Ann^(m)(φ)` integrated along the leading positive entries of `w`, or
/// `⟨0⟩` when the approximate annihilator is not holonomic.
pub fn approx_integration(phi: &RationalFunction, m: u32, w: &[i64]) -> Result<ApproxIntegration> {
    let start = Instant::now();
    let ann = approx_ann(phi, m)?;
    let ann_seconds = start.elapsed().as_secs_f64();
    let zero = GeneratorSet::new(SetKind::LeftIdeal, Vec::new());
    if ann.is_empty() || !is_holonomic(&ann.elements)? {
        return Ok(ApproxIntegration { ann, holonomic: false, integration: None, ideal: zero, ann_seconds });
    }
    match integrate(&ann.elements, w) {
        Ok(it) => {
            let ideal = it.ideal.clone();
            Ok(ApproxIntegration { ann, holonomic: true, integration: Some(it), ideal, ann_seconds })
        }
        Err(Error::NotHolonomic) => {
            Ok(ApproxIntegration { ann, holonomic: true, integration: None, ideal: zero, ann_seconds })
        }
        Err(e) => Err(e),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ReportTimings {
    pub ann: f64,
    pub gb_w: f64,
    pub base: f64,
    pub gb_final: f64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermJson {
    pub coefficient: String,
    pub x: Vec<u16>,
    pub d: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub version: u32,
    pub dim: usize,
    pub index: usize,
    pub variables: Vec<String>,
    pub order_used: u32,
    /// `None` for infinite rank or when nothing was integrated.
    pub rank: Option<u64>,
    pub lower_bound: u64,
    pub status: Status,
    pub generators: Vec<String>,
    pub terms: Vec<Vec<TermJson>>,
    pub timings: ReportTimings,
}

impl PipelineReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The JSON with all timings zeroed, for reproducibility comparisons.
    pub fn to_json_without_timings(&self) -> String {
        let mut r = self.clone();
        r.timings = ReportTimings::default();
        r.to_json()
    }
}

pub fn operator_terms(p: &WeylOperator) -> Vec<TermJson> {
    p.terms().map(|(u, v, c)| TermJson { coefficient: c.to_string(), x: u.to_vec(), d: v.to_vec() }).collect()
}

pub fn fano_period_system(dim: usize, index: usize, max_order: u32) -> Result<PipelineReport> {
    fano_period_system_in(embedded_table(), dim, index, max_order)
}

pub fn fano_period_system_in(
    table: &[FanoTableEntry],
    dim: usize,
    index: usize,
    max_order: u32,
) -> Result<PipelineReport> {
    let p = find_polytope(table, dim, index)?;
    period_system(&p, dim, index, max_order)
}

/// Raises the approximation order until the holonomic rank of the
/// integration ideal reaches the lower bound, or the cap is hit.
pub fn period_system(p: &LatticePolytope, dim: usize, index: usize, max_order: u32) -> Result<PipelineReport> {
    if max_order == 0 {
        return Err(Error::Invalid("max order must be at least 1".into()));
    }
    let bound = rank_lower_bound(&p.a_matrix(), &coned_triangulation(p)?)?.r;
    let phi = integrand(p)?;
    let d = p.dim();
    let l = p.npoints();
    let mut w = vec![1; d];
    w.extend(vec![0; l]);
    let variables: Vec<String> = (1..=l).map(|i| format!("x{i}")).collect();
    let mut report = PipelineReport {
        version: REPORT_VERSION,
        dim,
        index,
        variables: variables.clone(),
        order_used: 0,
        rank: None,
        lower_bound: bound,
        status: Status::CapReached,
        generators: Vec::new(),
        terms: Vec::new(),
        timings: ReportTimings::default(),
    };
    for i in 1..=max_order {
        let step = approx_integration(&phi, i, &w)?;
        let t = step.integration.as_ref().map(|it| it.timings).unwrap_or(StageTimings::default());
        report.order_used = i;
        report.timings = ReportTimings { ann: step.ann_seconds, gb_w: t.gb_w, base: t.base, gb_final: t.gb_final };
        report.generators = step.ideal.iter().map(|g| g.display(&variables).to_string()).collect();
        report.terms = step.ideal.iter().map(operator_terms).collect();
        let Some(it) = step.integration else {
            report.rank = None;
            report.status = Status::NotHolonomic;
            continue;
        };
        if it.branch == IntegrationBranch::OutputOne {
            report.rank = Some(0);
            report.status = Status::OutputOne;
            continue;
        }
        report.rank = holonomic_rank(&step.ideal.elements)?;
        if report.rank == Some(bound) {
            report.status = Status::Converged;
            return Ok(report);
        }
        report.status = Status::CapReached;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{names, parse_rational_function};

    #[test]
    fn degenerate_arity() {
        let phi = parse_rational_function("1/x", &names("x")).unwrap();
        let r = approx_integration(&phi, 1, &[1]).unwrap();
        assert!(r.holonomic);
        // D' = K and the integral module is one-dimensional (the residue): J' = <0>
        let it = r.integration.unwrap();
        assert_eq!(it.branch, IntegrationBranch::Eliminated);
        assert!(r.ideal.is_empty());
    }

    #[test]
    fn not_holonomic_gives_zero() {
        // order 0 has no generators at all
        let phi = parse_rational_function("1/(x+y)", &names("x,y")).unwrap();
        let r = approx_integration(&phi, 0, &[1, 0]).unwrap();
        assert!(!r.holonomic);
        assert!(r.ideal.is_empty());
    }

    #[test]
    fn triangle_converges() {
        let r = fano_period_system(2, 0, 3).unwrap();
        assert_eq!(r.status, Status::Converged);
        assert_eq!(r.order_used, 1);
        assert_eq!(r.rank, Some(2));
        assert_eq!(r.generators.len(), 11);
        assert!(fano_period_system(2, 9, 3).is_err());
        assert!(fano_period_system(2, 0, 0).is_err());
    }
}
