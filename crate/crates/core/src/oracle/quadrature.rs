//! Tensor-product polar quadrature on the complex plane.
//!
//! `∫ d²z/π f(z)` is written as `∫_0^∞ du ⟨f⟩_θ` with `u = |z - z0|²`.
//! Gauss-Legendre handles `u` on `[0, cutoff]` and the periodic trapezoid
//! rule handles `θ`. The cutoff is where a caller-supplied bound on
//! `ln |f|` drops below `ln(abs_tol * 1e-3)` for good.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::counting::Efficiency;
use crate::error::{Error, Result};
use crate::special_fn::{laguerre, PolyOrder};
use crate::states::StateModel;

/// Node counts, radial extent and target accuracy for planar quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    pub radial_nodes: usize,
    /// Trapezoid nodes in angle; must be even.
    pub angular_nodes: usize,
    /// Largest radius `|z - z0|` ever integrated to.
    pub radial_cutoff: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            radial_nodes: 256,
            angular_nodes: 128,
            radial_cutoff: 40.0,
            abs_tol: 1e-7,
        }
    }
}

impl QuadratureConfig {
    pub fn with_tol(abs_tol: f64) -> Self {
        QuadratureConfig {
            abs_tol,
            ..Default::default()
        }
    }

    /// Same cutoff and tolerance with twice the nodes in both directions.
    pub fn doubled(&self) -> Self {
        QuadratureConfig {
            radial_nodes: 2 * self.radial_nodes,
            angular_nodes: 2 * self.angular_nodes,
            ..*self
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.radial_nodes < 8 {
            return Err(Error::invalid("radial_nodes", self.radial_nodes as f64, ">= 8"));
        }
        if self.angular_nodes < 8 || !self.angular_nodes.is_multiple_of(2) {
            return Err(Error::invalid(
                "angular_nodes",
                self.angular_nodes as f64,
                ">= 8 and even",
            ));
        }
        if !(self.radial_cutoff > 0.0 && self.radial_cutoff.is_finite()) {
            return Err(Error::invalid("radial_cutoff", self.radial_cutoff, "> 0"));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::invalid("abs_tol", self.abs_tol, "> 0"));
        }
        Ok(())
    }

    fn log_threshold(&self) -> f64 {
        (self.abs_tol * 1e-3).ln()
    }
}

/// A quadrature value with an estimate of the mass lost beyond the cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureEstimate {
    pub value: f64,
    /// Imaginary part of the raw integral; zero up to rounding for
    /// real-valued quantities.
    pub imag: f64,
    pub residual: f64,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 0 { 0.0 } else { p0 };
            dp = nf * (x * pn - pn1) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Radial cutoff where `log_env` has dropped below `log_thresh` and is
/// decreasing, capped at `u_max`. Returns `(cutoff, tail estimate)`.
pub(crate) fn envelope_cutoff<F: Fn(f64) -> f64>(log_env: F, log_thresh: f64, u_max: f64) -> (f64, f64) {
    let tail = |u: f64| {
        let h = 1e-3 * u.max(1e-12);
        let slope = (log_env(u + h) - log_env(u)) / h;
        if slope < 0.0 {
            log_env(u).exp() / -slope
        } else {
            f64::INFINITY
        }
    };
    let mut u = 1e-10;
    while u < u_max {
        let here = log_env(u);
        if here < log_thresh && log_env(1.25 * u) < here {
            return (u, tail(u));
        }
        u *= 1.02;
    }
    (u_max, tail(u_max))
}

/// `∫_0^{u_c} du g(u)` by Gauss-Legendre.
pub(crate) fn integrate_line<G: Fn(f64) -> f64>(g: G, u_c: f64, nodes: usize) -> f64 {
    let (x, w) = gauss_legendre(nodes);
    let half = 0.5 * u_c;
    x.iter().zip(&w).map(|(xi, wi)| wi * g(half * (xi + 1.0))).sum::<f64>() * half
}

/// `∫ d²z/π f(u, z)` over `|z - center|² <= u_c`, with `u = |z - center|²`.
pub(crate) fn integrate_plane<F>(f: F, center: Complex64, u_c: f64, cfg: &QuadratureConfig) -> Complex64
where
    F: Fn(f64, Complex64) -> Complex64,
{
    let (x, w) = gauss_legendre(cfg.radial_nodes);
    let half = 0.5 * u_c;
    let dirs: Vec<Complex64> = (0..cfg.angular_nodes)
        .map(|j| Complex64::from_polar(1.0, std::f64::consts::TAU * j as f64 / cfg.angular_nodes as f64))
        .collect();
    let mut total = Complex64::new(0.0, 0.0);
    for (xi, wi) in x.iter().zip(&w) {
        let u = half * (xi + 1.0);
        let r = u.sqrt();
        let ring: Complex64 = dirs.iter().map(|d| f(u, center + r * d)).sum();
        total += *wi * ring / cfg.angular_nodes as f64;
    }
    total * half
}

/// P-representation of the state when it is a regular Gaussian:
/// `(center, nbar)` with `P(a) = exp(-|a - center|^2 / nbar) / (pi nbar)`.
fn gaussian_p(state: &StateModel) -> Result<(Complex64, f64)> {
    let capability = |reason| Error::Capability {
        method: "p-quadrature",
        state: state.name(),
        reason,
    };
    match state {
        StateModel::Thermal { nbar } if *nbar > 0.0 => Ok((Complex64::new(0.0, 0.0), *nbar)),
        StateModel::DisplacedThermal { alpha, nbar } if *nbar > 0.0 => Ok((*alpha, *nbar)),
        StateModel::Thermal { .. } | StateModel::DisplacedThermal { .. } => {
            Err(capability("P-function is a delta at nbar = 0"))
        }
        _ => Err(capability("P-function is not a regular Gaussian")),
    }
}

fn poisson(mu: f64, m: usize) -> f64 {
    if mu == 0.0 {
        return if m == 0 { 1.0 } else { 0.0 };
    }
    let mut v = (-mu).exp();
    for k in 1..=m {
        v *= mu / k as f64;
    }
    v
}

/// `p(m) = ∫ d²a P(a) (xi|a|²)^m e^{-xi|a|²} / m!` for states with a Gaussian
/// P-function, integrated in polar coordinates about the Gaussian's centre.
pub fn p_function_quadrature(
    state: &StateModel,
    xi: Efficiency,
    m: usize,
    cfg: &QuadratureConfig,
) -> Result<QuadratureEstimate> {
    state.validate()?;
    cfg.validate()?;
    PolyOrder::new(m)?;
    if xi.get() > 1.0 {
        return Err(Error::invalid("xi", xi.get(), "0 < xi <= 1"));
    }
    let (center, nbar) = gaussian_p(state)?;
    let x = xi.get();
    // P(a) d²a = (1/nbar) e^{-s/nbar} ds dθ/2π with s = |a - center|², and
    // the Poisson factor never exceeds one.
    let log_env = |s: f64| -nbar.ln() - s / nbar;
    let (s_c, residual) = envelope_cutoff(log_env, cfg.log_threshold(), cfg.radial_cutoff.powi(2));
    let v = integrate_plane(
        |s, a| Complex64::from((-s / nbar).exp() / nbar * poisson(x * a.norm_sqr(), m)),
        center,
        s_c,
        cfg,
    );
    Ok(QuadratureEstimate {
        value: v.re,
        imag: v.im,
        residual,
    })
}

/// Open interval of efficiencies where the antidiagonal-kernel integral
/// converges absolutely for `state`.
pub fn antidiagonal_region(state: &StateModel) -> (f64, f64) {
    match state {
        StateModel::SqueezedVacuum { lambda } if *lambda > 0.0 => (1.0, 1.0 + 1.0 / lambda.tanh()),
        _ => (1.0, f64::INFINITY),
    }
}

/// `p(m) = xi^m/(xi-1)^{m+1} ∫ d²β/π <-β|ρ|β> e^{(xi-2)/(xi-1)|β|²} L_m(|β|²/(xi-1))`.
///
/// The integral only converges for `xi > 1` (and, for squeezed vacuum,
/// `xi < 1 + coth(lambda)`); the result there is the analytic continuation
/// of the counting distribution in `xi`.
pub fn antidiagonal_quadrature(
    state: &StateModel,
    xi: f64,
    m: usize,
    cfg: &QuadratureConfig,
) -> Result<QuadratureEstimate> {
    state.validate()?;
    cfg.validate()?;
    PolyOrder::new(m)?;
    let (lo, hi) = antidiagonal_region(state);
    if !(xi > lo && xi < hi) {
        let bound = if hi.is_finite() {
            format!("{lo} < xi < {hi} (1 + coth(lambda))")
        } else {
            format!("xi > {lo}")
        };
        return Err(Error::Divergence { xi, bound });
    }
    let d = xi - 1.0;
    let ln_pre = m as f64 * xi.ln() - (m as f64 + 1.0) * d.ln();
    let a = (xi - 2.0) / d;
    let h = 1.0 / d;
    let log_env = |u: f64| {
        // |L_m(x)| <= L_m(-x) for x >= 0
        ln_pre + state.antidiagonal_log_bound(u) + a * u + laguerre(m, -h * u).unwrap().ln()
    };
    let (u_c, residual) = envelope_cutoff(log_env, cfg.log_threshold(), cfg.radial_cutoff.powi(2));
    let pre = ln_pre.exp();
    let v = integrate_plane(
        |u, beta| state.antidiagonal_element(beta) * (a * u).exp() * laguerre(m, h * u).unwrap(),
        Complex64::new(0.0, 0.0),
        u_c,
        cfg,
    ) * pre;
    Ok(QuadratureEstimate {
        value: v.re,
        imag: v.im,
        residual,
    })
}
