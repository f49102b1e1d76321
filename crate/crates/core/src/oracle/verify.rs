//! Closed form versus independent oracle, packaged as [`ComparisonReport`]s.

use serde_json::json;

use super::montecarlo::{mc_counts, SamplingRoute};
use super::quadrature::{antidiagonal_quadrature, p_function_quadrature, QuadratureConfig};
use super::report::{ComparisonReport, ErrorUnit, ReportMetadata};
use crate::counting::{distribution, Efficiency, Method};
use crate::error::{Error, Result};
use crate::states::StateModel;

/// Minimum expected bin occupancy for the normal approximation used by
/// [`verify_monte_carlo`]; sparser bins are not scored.
pub const MC_MIN_EXPECTED: f64 = 25.0;

fn closed(state: &StateModel, xi: Efficiency, mmax: usize) -> Result<Vec<f64>> {
    Ok(distribution(state, xi, mmax, &Method::Closed)?.probs)
}

fn meta(check: &str, state: &StateModel, xi: f64, candidate: &str) -> ReportMetadata {
    ReportMetadata::new(check, "closed", candidate)
        .param("state", serde_json::to_value(state).unwrap())
        .param("xi", xi)
}

pub fn verify_bernoulli(
    state: &StateModel,
    xi: Efficiency,
    mmax: usize,
    tail_tol: f64,
    tolerance: f64,
) -> Result<ComparisonReport> {
    let reference = closed(state, xi, mmax)?;
    let candidate = distribution(state, xi, mmax, &Method::Bernoulli { tail_tol })?.probs;
    Ok(ComparisonReport::absolute(
        meta("closed-vs-bernoulli", state, xi.get(), "bernoulli")
            .param("mmax", mmax)
            .param("tail_tol", tail_tol),
        reference,
        candidate,
        tolerance,
    ))
}

pub fn verify_p_quadrature(
    state: &StateModel,
    xi: Efficiency,
    mmax: usize,
    cfg: &QuadratureConfig,
    tolerance: f64,
) -> Result<ComparisonReport> {
    let reference = closed(state, xi, mmax)?;
    let candidate = (0..=mmax)
        .map(|m| p_function_quadrature(state, xi, m, cfg).map(|e| e.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonReport::absolute(
        meta("closed-vs-p-quadrature", state, xi.get(), "p-quadrature")
            .param("mmax", mmax)
            .param("quadrature", serde_json::to_value(cfg).unwrap()),
        reference,
        candidate,
        tolerance,
    ))
}

/// `p(0..=mmax)` analytically continued to `xi` (any `xi > 0`).
pub fn continued_reference(state: &StateModel, xi: f64, mmax: usize) -> Result<Vec<f64>> {
    let cont = Efficiency::continued(xi)?;
    match state {
        StateModel::FockMixture { probs } => {
            // finite support: the thinning sum is a polynomial in xi
            Ok((0..=mmax)
                .map(|m| {
                    let mut binom = 1.0;
                    let mut sum = 0.0;
                    for (n, p) in probs.iter().enumerate().skip(m) {
                        if n > m {
                            binom *= n as f64 / (n - m) as f64;
                        }
                        sum += p * binom * xi.powi(m as i32) * (1.0 - xi).powi((n - m) as i32);
                    }
                    sum
                })
                .collect())
        }
        _ => closed(state, cont, mmax),
    }
}

pub fn verify_antidiagonal(
    state: &StateModel,
    xi: f64,
    mmax: usize,
    cfg: &QuadratureConfig,
    tolerance: f64,
) -> Result<ComparisonReport> {
    let reference = continued_reference(state, xi, mmax)?;
    let candidate = (0..=mmax)
        .map(|m| antidiagonal_quadrature(state, xi, m, cfg).map(|e| e.value))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComparisonReport::absolute(
        meta("continued-closed-vs-antidiagonal", state, xi, "antidiagonal")
            .param("mmax", mmax)
            .param("quadrature", serde_json::to_value(cfg).unwrap()),
        reference,
        candidate,
        tolerance,
    ))
}

/// Monte Carlo histogram against the closed form, scored per bin in
/// standard deviations `sqrt(p(1-p)/N)`. Bins expecting fewer than
/// [`MC_MIN_EXPECTED`] events score zero and are listed in `skipped_bins`.
pub fn verify_monte_carlo(
    state: &StateModel,
    xi: Efficiency,
    mmax: usize,
    samples: u64,
    seed: u64,
    route: SamplingRoute,
    sigmas: f64,
) -> Result<ComparisonReport> {
    let reference = match state {
        StateModel::FockMixture { .. } => distribution(state, xi, mmax, &Method::Bernoulli { tail_tol: 1e-15 })?.probs,
        _ => closed(state, xi, mmax)?,
    };
    let candidate = mc_counts(state, xi, samples, seed, mmax, route)?.probs;
    let n = samples as f64;
    let mut skipped = Vec::new();
    let scores = reference
        .iter()
        .zip(&candidate)
        .enumerate()
        .map(|(m, (p, q))| {
            if p * n < MC_MIN_EXPECTED || (1.0 - p) * n < MC_MIN_EXPECTED {
                skipped.push(m);
                0.0
            } else {
                (p - q).abs() / (p * (1.0 - p) / n).sqrt()
            }
        })
        .collect();
    let route_name = match route {
        SamplingRoute::Fock => "fock",
        SamplingRoute::PFunction => "p-function",
    };
    let metadata = meta("closed-vs-monte-carlo", state, xi.get(), "monte-carlo")
        .unit(ErrorUnit::Sigma)
        .seed(seed)
        .param("mmax", mmax)
        .param("samples", samples)
        .param("route", route_name)
        .param("skipped_bins", json!(skipped));
    Ok(ComparisonReport::new(metadata, reference, candidate, scores, sigmas))
}

/// Which oracle a closed form is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Oracle {
    Bernoulli,
    PQuadrature,
    Antidiagonal,
    MonteCarlo,
}

impl Oracle {
    pub fn supports(self, state: &StateModel) -> Result<()> {
        let reason = match (self, state) {
            (Oracle::PQuadrature, StateModel::Thermal { nbar } | StateModel::DisplacedThermal { nbar, .. })
                if *nbar > 0.0 =>
            {
                return Ok(())
            }
            (Oracle::PQuadrature, _) => "needs a regular Gaussian P-function (thermal or displaced thermal, nbar > 0)",
            (Oracle::Bernoulli, StateModel::FockMixture { .. }) => "no closed form to compare for a Fock mixture",
            _ => return Ok(()),
        };
        Err(Error::Capability {
            method: match self {
                Oracle::Bernoulli => "bernoulli",
                Oracle::PQuadrature => "p-quadrature",
                Oracle::Antidiagonal => "antidiagonal",
                Oracle::MonteCarlo => "monte-carlo",
            },
            state: state.name(),
            reason,
        })
    }
}
