//! Photoelectron counting distributions.
//!
//! [`bernoulli_transform`] thins any photon-number distribution by the
//! detector efficiency and is the reference every closed form is held to.
//! The closed forms cover coherent, chaotic, squeezed-vacuum and displaced
//! chaotic light.
//!
//! Efficiencies above one and negative mean photon numbers have no physical
//! meaning. They are still useful because several formulas are checked by
//! analytic continuation, so they are only reachable through
//! [`Efficiency::continued`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_binomial;
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::oracle::{self, QuadratureConfig, SamplingRoute};
use crate::special_fn::{PolyOrder, ScaledLaguerre, ScaledLegendreRatio, MAX_DEGREE};
use crate::states::{FockDistribution, StateModel};

/// Products are formed directly unless they would underflow or run too long.
const DIRECT_PRODUCT_MAX: usize = 1000;
const DIRECT_MIN_LOG: f64 = -690.0;

/// Detector quantum efficiency.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Efficiency {
    xi: f64,
    continued: bool,
}

impl Efficiency {
    /// A physical efficiency, `0 < xi <= 1`.
    pub fn new(xi: f64) -> Result<Self> {
        if !(xi > 0.0 && xi <= 1.0) {
            return Err(Error::invalid("xi", xi, "0 < xi <= 1"));
        }
        Ok(Efficiency { xi, continued: false })
    }

    /// Any finite positive `xi`, tagged as an analytic continuation.
    ///
    /// Closed forms evaluated with a continued efficiency also accept
    /// negative mean photon numbers where noted.
    pub fn continued(xi: f64) -> Result<Self> {
        if !(xi.is_finite() && xi > 0.0) {
            return Err(Error::invalid("xi", xi, "finite and xi > 0"));
        }
        Ok(Efficiency { xi, continued: true })
    }

    pub fn get(self) -> f64 {
        self.xi
    }

    pub fn is_continued(self) -> bool {
        self.continued
    }

    fn require_physical(self, what: &'static str) -> Result<()> {
        if self.xi > 1.0 {
            return Err(Error::Capability {
                method: what,
                state: "any",
                reason: "requires a physical efficiency 0 < xi <= 1",
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    Closed,
    Bernoulli,
    PQuadrature,
    Antidiagonal,
    MonteCarlo,
}

impl MethodKind {
    pub fn name(self) -> &'static str {
        match self {
            MethodKind::Closed => "closed",
            MethodKind::Bernoulli => "bernoulli",
            MethodKind::PQuadrature => "p-quadrature",
            MethodKind::Antidiagonal => "antidiagonal",
            MethodKind::MonteCarlo => "monte-carlo",
        }
    }
}

/// How [`distribution`] should evaluate `p(m)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Method {
    Closed,
    Bernoulli {
        tail_tol: f64,
    },
    PQuadrature(QuadratureConfig),
    Antidiagonal(QuadratureConfig),
    MonteCarlo {
        samples: u64,
        seed: u64,
        route: SamplingRoute,
    },
}

impl Method {
    pub fn kind(&self) -> MethodKind {
        match self {
            Method::Closed => MethodKind::Closed,
            Method::Bernoulli { .. } => MethodKind::Bernoulli,
            Method::PQuadrature(_) => MethodKind::PQuadrature,
            Method::Antidiagonal(_) => MethodKind::Antidiagonal,
            Method::MonteCarlo { .. } => MethodKind::MonteCarlo,
        }
    }
}

/// `p(0..=mmax)` with provenance.
///
/// For physical efficiencies the entries are probabilities, and
/// `1 - sum(probs)` is at most `trunc_err` (up to rounding). Continued
/// evaluations are analytic continuations and may leave `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountDistribution {
    pub probs: Vec<f64>,
    pub mmax: usize,
    pub method: MethodKind,
    pub trunc_err: f64,
}

impl CountDistribution {
    pub(crate) fn new(probs: Vec<f64>, method: MethodKind, trunc_err: f64) -> Self {
        let mmax = probs.len() - 1;
        CountDistribution {
            probs,
            mmax,
            method,
            trunc_err,
        }
    }

    fn from_closed(probs: Vec<f64>) -> Self {
        let total: f64 = probs.iter().sum();
        CountDistribution::new(probs, MethodKind::Closed, (1.0 - total).abs())
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(m, p)| m as f64 * p).sum()
    }
}

fn check_mmax(mmax: usize) -> Result<()> {
    PolyOrder::new(mmax).map(|_| ())
}

/// Binomial thinning of a photon-number distribution:
/// `p(m) = sum_{n>=m} P_n C(n,m) xi^m (1-xi)^(n-m)`.
pub fn bernoulli_transform(fock: &FockDistribution, xi: Efficiency, mmax: usize) -> Result<CountDistribution> {
    check_mmax(mmax)?;
    xi.require_physical("bernoulli")?;
    let mass: f64 = fock.probs.iter().sum();
    if mass > 1.0 + 1e-9 || 1.0 - mass > fock.tail_bound + 1e-9 {
        return Err(Error::invalid(
            "fock",
            mass,
            format!("total mass within [1 - {:e}, 1]", fock.tail_bound),
        ));
    }

    let x = xi.get();
    let mut probs = vec![0.0; mmax + 1];
    if x == 1.0 {
        for (p, q) in probs.iter_mut().zip(&fock.probs) {
            *p = *q;
        }
    } else {
        let ln_x = x.ln();
        let ln_q = (-x).ln_1p();
        let odds = x / (1.0 - x);
        for (n, &pn) in fock.probs.iter().enumerate() {
            if pn == 0.0 {
                continue;
            }
            let top = n.min(mmax);
            let ln_b0 = n as f64 * ln_q;
            if ln_b0 > -600.0 {
                // b(m+1) = b(m) (n-m)/(m+1) * xi/(1-xi)
                let mut b = ln_b0.exp();
                for (m, p) in probs.iter_mut().enumerate().take(top + 1) {
                    *p += pn * b;
                    b *= (n - m) as f64 / (m + 1) as f64 * odds;
                }
            } else {
                for (m, p) in probs.iter_mut().enumerate().take(top + 1) {
                    let ln_b = ln_binomial(n as u64, m as u64) + m as f64 * ln_x + (n - m) as f64 * ln_q;
                    *p += pn * ln_b.exp();
                }
            }
        }
    }
    let total: f64 = probs.iter().sum();
    let beyond = (mass - total).max(0.0);
    Ok(CountDistribution::new(
        probs,
        MethodKind::Bernoulli,
        fock.tail_bound + beyond,
    ))
}

fn poisson_pmf(mu: f64, m: usize) -> f64 {
    if mu == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    let log = m as f64 * mu.ln() - mu - ln_gamma(m as f64 + 1.0);
    if log > DIRECT_MIN_LOG && mu < -DIRECT_MIN_LOG && m <= DIRECT_PRODUCT_MAX {
        let mut v = (-mu).exp();
        for k in 1..=m {
            v *= mu / k as f64;
        }
        v
    } else {
        log.exp()
    }
}

/// Coherent light: Poisson with mean `xi |alpha|^2`.
pub fn coherent_closed(alpha: Complex64, xi: Efficiency, m: usize) -> Result<f64> {
    PolyOrder::new(m)?;
    Ok(poisson_pmf(xi.get() * alpha.norm_sqr(), m))
}

/// Chaotic light: `(xi nbar)^m / (1 + xi nbar)^(m+1)`.
pub fn thermal_closed(nbar: f64, xi: Efficiency, m: usize) -> Result<f64> {
    PolyOrder::new(m)?;
    if !(nbar.is_finite() && nbar >= 0.0) {
        return Err(Error::invalid("nbar", nbar, "nbar >= 0"));
    }
    let mean = xi.get() * nbar;
    if mean == 0.0 {
        return Ok(if m == 0 { 1.0 } else { 0.0 });
    }
    let ratio = mean / (1.0 + mean);
    Ok(if m as f64 * ratio.ln() > DIRECT_MIN_LOG {
        ratio.powi(m as i32) / (1.0 + mean)
    } else {
        (m as f64 * mean.ln() - (m as f64 + 1.0) * mean.ln_1p()).exp()
    })
}

/// Chaotic light parameterised by `f = hbar omega / kT`:
/// `(e^f - 1) xi^m / (e^f + xi - 1)^(m+1)`.
pub fn thermal_closed_f_form(f: f64, xi: Efficiency, m: usize) -> Result<f64> {
    PolyOrder::new(m)?;
    if !(f > 0.0) {
        return Err(Error::invalid("f", f, "f > 0"));
    }
    let x = xi.get();
    let em1 = f.exp_m1();
    let denom = em1 + x;
    let ratio = x / denom;
    Ok(if m as f64 * ratio.ln() > DIRECT_MIN_LOG {
        em1 * ratio.powi(m as i32) / denom
    } else {
        (em1.ln() + m as f64 * x.ln() - (m as f64 + 1.0) * denom.ln()).exp()
    })
}

/// `f = ln(1 + 1/nbar)` for a chaotic state of mean photon number `nbar`.
pub fn thermal_f_from_nbar(nbar: f64) -> f64 {
    (1.0 / nbar).ln_1p()
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::invalid("lambda", lambda, "lambda >= 0"));
    }
    Ok(())
}

/// Branch parameter `G = (xi - 1) tanh(lambda)` of the squeezed closed form.
pub fn squeezed_branch(lambda: f64, xi: Efficiency) -> f64 {
    (xi.get() - 1.0) * lambda.tanh()
}

fn squeezed_sequence(lambda: f64, xi: Efficiency, mmax: usize) -> Result<Vec<f64>> {
    check_lambda(lambda)?;
    check_mmax(mmax)?;
    let t = lambda.tanh();
    let sech = 1.0 / lambda.cosh();
    if xi.get() == 1.0 {
        // G = 0: sech * t^m * (m-1)!!/m!! for even m, zero for odd m
        let mut out = vec![0.0; mmax + 1];
        let mut even = sech;
        for m in (0..=mmax).step_by(2) {
            out[m] = even;
            let k = (m / 2) as f64;
            even *= t * t * (2.0 * k + 1.0) / (2.0 * k + 2.0);
        }
        return Ok(out);
    }
    let g = squeezed_branch(lambda, xi);
    if g.abs() >= 1.0 {
        return Err(Error::Divergence {
            xi: xi.get(),
            bound: format!("|(xi - 1) tanh(lambda)| < 1, i.e. xi < 1 + coth({lambda})"),
        });
    }
    let pre = sech / (1.0 - g * g).sqrt();
    let c = xi.get() * t;
    Ok(ScaledLegendreRatio::new(g, c)?
        .take(mmax + 1)
        .map(|q| pre * q)
        .collect())
}

/// Squeezed vacuum:
/// `xi^m sech(l) tanh(l)^m (1-G^2)^(-1/2) Q_m(G)` with `G = (xi-1) tanh(l)`,
/// where `Q_m` is [`crate::special_fn::legendre_ratio`].
pub fn squeezed_closed(lambda: f64, xi: Efficiency, m: usize) -> Result<f64> {
    Ok(squeezed_sequence(lambda, xi, m)?[m])
}

struct DisplacedParams {
    scale: f64,
    c: f64,
    cx: f64,
}

fn displaced_params(alpha: Complex64, nbar: f64, xi: Efficiency) -> Result<DisplacedParams> {
    if !nbar.is_finite() {
        return Err(Error::invalid("nbar", nbar, "finite"));
    }
    if nbar < 0.0 && !xi.is_continued() {
        return Err(Error::invalid(
            "nbar",
            nbar,
            "nbar >= 0 (negative values need a continued efficiency)",
        ));
    }
    if nbar == 0.0 {
        return Err(Error::UseCoherentForm);
    }
    let x = xi.get();
    let d = 1.0 + nbar * x;
    if d == 0.0 {
        return Err(Error::Pole { nbar, xi: x });
    }
    let a2 = alpha.norm_sqr();
    Ok(DisplacedParams {
        scale: (-x * a2 / d).exp() / d,
        c: nbar * x / d,
        // c * x_L with x_L = -|alpha|^2 / (nbar (nbar xi + 1))
        cx: -x * a2 / (d * d),
    })
}

/// Displaced chaotic light:
/// `(nbar xi)^m / (nbar xi + 1)^(m+1) exp(-xi|a|^2/(1+nbar xi)) L_m(-|a|^2/(nbar(nbar xi+1)))`.
///
/// `nbar = 0` is rejected with [`Error::UseCoherentForm`]. Negative `nbar`
/// (including the Wigner-function point `nbar = -1/2`, `xi = 1`) requires a
/// continued efficiency.
pub fn displaced_thermal_closed(alpha: Complex64, nbar: f64, xi: Efficiency, m: usize) -> Result<f64> {
    PolyOrder::new(m)?;
    let p = displaced_params(alpha, nbar, xi)?;
    Ok(p.scale * ScaledLaguerre::new(p.c, p.cx).nth(m).unwrap())
}

fn closed_sequence(state: &StateModel, xi: Efficiency, mmax: usize) -> Result<Vec<f64>> {
    check_mmax(mmax)?;
    match state {
        StateModel::Coherent { alpha } => (0..=mmax).map(|m| coherent_closed(*alpha, xi, m)).collect(),
        StateModel::Thermal { nbar } => (0..=mmax).map(|m| thermal_closed(*nbar, xi, m)).collect(),
        StateModel::SqueezedVacuum { lambda } => squeezed_sequence(*lambda, xi, mmax),
        StateModel::DisplacedThermal { alpha, nbar } => {
            if *nbar == 0.0 {
                return (0..=mmax).map(|m| coherent_closed(*alpha, xi, m)).collect();
            }
            let p = displaced_params(*alpha, *nbar, xi)?;
            Ok(ScaledLaguerre::new(p.c, p.cx)
                .take(mmax + 1)
                .map(|r| p.scale * r)
                .collect())
        }
        StateModel::FockMixture { .. } => Err(Error::Capability {
            method: "closed",
            state: "fock",
            reason: "no closed form exists; use the bernoulli method",
        }),
    }
}

/// Evaluate `p(0..=mmax)` for `state` with the requested method.
pub fn distribution(state: &StateModel, xi: Efficiency, mmax: usize, method: &Method) -> Result<CountDistribution> {
    state.validate()?;
    check_mmax(mmax)?;
    match method {
        Method::Closed => Ok(CountDistribution::from_closed(closed_sequence(state, xi, mmax)?)),
        Method::Bernoulli { tail_tol } => {
            let fock = state.fock_distribution(*tail_tol)?;
            bernoulli_transform(&fock, xi, mmax)
        }
        Method::PQuadrature(cfg) => {
            xi.require_physical("p-quadrature")?;
            let mut probs = Vec::with_capacity(mmax + 1);
            let mut residual = 0.0;
            for m in 0..=mmax {
                let est = oracle::p_function_quadrature(state, xi, m, cfg)?;
                residual += est.residual;
                probs.push(est.value);
            }
            let total: f64 = probs.iter().sum();
            Ok(CountDistribution::new(
                probs,
                MethodKind::PQuadrature,
                (1.0 - total).abs() + residual,
            ))
        }
        Method::Antidiagonal(cfg) => {
            let mut probs = Vec::with_capacity(mmax + 1);
            let mut residual = 0.0;
            for m in 0..=mmax {
                let est = oracle::antidiagonal_quadrature(state, xi.get(), m, cfg)?;
                residual += est.residual;
                probs.push(est.value);
            }
            let total: f64 = probs.iter().sum();
            Ok(CountDistribution::new(
                probs,
                MethodKind::Antidiagonal,
                (1.0 - total).abs() + residual,
            ))
        }
        Method::MonteCarlo { samples, seed, route } => oracle::mc_counts(state, xi, *samples, *seed, mmax, *route),
    }
}

/// Count index up to which a distribution carries all but `tail_tol` of its
/// mass, taken from the photon-number cutoff.
pub fn mmax_for(state: &StateModel, tail_tol: f64) -> Result<usize> {
    Ok(state.fock_distribution(tail_tol)?.cutoff.min(MAX_DEGREE))
}
