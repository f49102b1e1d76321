//! Numeric checks of the Gaussian and Laguerre integral identities used to
//! derive the closed forms. Each evaluates the left side by quadrature and
//! the right side by formula.
//!
//! The randomized suite draws parameters from fixed boxes that sit strictly
//! inside each identity's convergence domain:
//!
//! | identity           | box |
//! |--------------------|----------|
//! | gaussian-linear    | ε ∈ [-2.5, -0.5], B ∈ [-1, 1]², C = -B* |
//! | gaussian-moments   | n, m ∈ 0..=4, ε ∈ [-2, -0.6], B ∈ [-0.8, 0.8]², C = -B* |
//! | gaussian-quadratic | ζ ∈ [-2, -0.7], f, g ∈ [-0.3|ζ|, 0.3|ζ|], ξ ∈ [-0.8, 0.8]², η = -ξ* |
//! | laguerre-radial    | m ∈ 0..=10, g ∈ [0.5, 3] |
//! | laguerre-kernel    | m ∈ 0..=6, ξ ∈ [1.3, 3], α ∈ [-1, 1]² |
//! | laguerre-vacuum    | m = 0..=10 (deterministic) |

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use statrs::function::gamma::ln_gamma;

use super::quadrature::{envelope_cutoff, integrate_line, integrate_plane, QuadratureConfig};
use super::report::{ComparisonReport, ReportMetadata};
use crate::error::{Error, Result};
use crate::special_fn::{laguerre, PolyOrder};

/// Default number of randomized draws per identity.
pub const DEFAULT_DRAWS: usize = 20;

/// Identity names accepted by [`run_identity`] and the `identities` command.
pub const IDENTITY_NAMES: [&str; 6] = [
    "gaussian-linear",
    "gaussian-moments",
    "gaussian-quadratic",
    "laguerre-radial",
    "laguerre-kernel",
    "laguerre-vacuum",
];

/// Both sides of one identity instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentitySides {
    pub quadrature: Complex64,
    pub formula: Complex64,
}

impl IdentitySides {
    pub fn abs_err(&self) -> f64 {
        (self.quadrature - self.formula).norm()
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn check_eps(epsilon: f64) -> Result<()> {
    if !(epsilon < 0.0) {
        return Err(Error::invalid("epsilon", epsilon, "Re(epsilon) < 0"));
    }
    Ok(())
}

fn ln_fact(n: usize) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// `∫ d²z/π z^n z*^m exp(ε|z|² + Bz + Cz*)` against
/// `e^{-BC/ε} Σ_l n! m! B^{m-l} C^{n-l} / (l! (n-l)! (m-l)! (-ε)^{n+m-l+1})`.
pub fn gaussian_moments_sides(
    n: usize,
    m: usize,
    epsilon: f64,
    b: Complex64,
    cc: Complex64,
    cfg: &QuadratureConfig,
) -> Result<IdentitySides> {
    check_eps(epsilon)?;
    cfg.validate()?;
    let k = (n + m) as f64 / 2.0;
    let lin = b.norm() + cc.norm();
    let log_env = |u: f64| k * u.ln() + epsilon * u + lin * u.sqrt();
    let (u_c, _) = envelope_cutoff(log_env, (cfg.abs_tol * 1e-3).ln(), cfg.radial_cutoff.powi(2));
    let quadrature = integrate_plane(
        |_, z| z.powi(n as i32) * z.conj().powi(m as i32) * (epsilon * z.norm_sqr() + b * z + cc * z.conj()).exp(),
        c(0.0, 0.0),
        u_c,
        cfg,
    );
    let mut sum = c(0.0, 0.0);
    for l in 0..=n.min(m) {
        let coeff = (ln_fact(n) + ln_fact(m) - ln_fact(l) - ln_fact(n - l) - ln_fact(m - l)).exp();
        sum += coeff * b.powi((m - l) as i32) * cc.powi((n - l) as i32) / (-epsilon).powi((n + m - l + 1) as i32);
    }
    let formula = (-b * cc / epsilon).exp() * sum;
    Ok(IdentitySides { quadrature, formula })
}

/// `∫ d²z/π exp(ε|z|² + Bz + Cz*) = -e^{-BC/ε}/ε`.
pub fn gaussian_linear_sides(
    epsilon: f64,
    b: Complex64,
    cc: Complex64,
    cfg: &QuadratureConfig,
) -> Result<IdentitySides> {
    let mut sides = gaussian_moments_sides(0, 0, epsilon, b, cc, cfg)?;
    sides.formula = -(-b * cc / epsilon).exp() / epsilon;
    Ok(sides)
}

/// `∫ d²z/π exp(ζ|z|² + ξz + ηz* + fz² + gz*²)
///   = (ζ² - 4fg)^{-1/2} exp[(-ζξη + ξ²g + η²f)/(ζ² - 4fg)]`.
pub fn gaussian_quadratic_sides(
    zeta: f64,
    xi_c: Complex64,
    eta_c: Complex64,
    f: f64,
    g: f64,
    cfg: &QuadratureConfig,
) -> Result<IdentitySides> {
    cfg.validate()?;
    let det = zeta * zeta - 4.0 * f * g;
    let stated =
        (zeta + f + g < 0.0 && det / (zeta + f + g) < 0.0) || (zeta - f - g < 0.0 && det / (zeta - f - g) < 0.0);
    if !stated {
        return Err(Error::Divergence {
            xi: zeta,
            bound: "Re(zeta+f+g) < 0 and Re((zeta^2-4fg)/(zeta+f+g)) < 0, or the same with -f-g".into(),
        });
    }
    // polar quadrature needs the Gaussian to decay in every direction
    let decay = zeta + (f + g).abs();
    if decay >= 0.0 {
        return Err(Error::Divergence {
            xi: zeta,
            bound: "zeta + |f + g| < 0 for absolute convergence".into(),
        });
    }
    let lin = xi_c.norm() + eta_c.norm();
    let log_env = |u: f64| decay * u + lin * u.sqrt();
    let (u_c, _) = envelope_cutoff(log_env, (cfg.abs_tol * 1e-3).ln(), cfg.radial_cutoff.powi(2));
    let quadrature = integrate_plane(
        |u, z| {
            let zc = z.conj();
            (zeta * u + xi_c * z + eta_c * zc + f * z * z + g * zc * zc).exp()
        },
        c(0.0, 0.0),
        u_c,
        cfg,
    );
    let detc = c(det, 0.0);
    let formula = ((-zeta * xi_c * eta_c + xi_c * xi_c * g + eta_c * eta_c * f) / detc).exp() / detc.sqrt();
    Ok(IdentitySides { quadrature, formula })
}

/// `∫_0^∞ dr L_m(r) e^{-gr} = (g-1)^m / g^{m+1}`.
pub fn laguerre_radial_sides(m: usize, g: f64, cfg: &QuadratureConfig) -> Result<IdentitySides> {
    PolyOrder::new(m)?;
    cfg.validate()?;
    if !(g > 0.0) {
        return Err(Error::invalid("g", g, "g > 0"));
    }
    let log_env = |r: f64| -g * r + laguerre(m, -r).unwrap().ln();
    let (r_c, _) = envelope_cutoff(log_env, (cfg.abs_tol * 1e-3).ln(), cfg.radial_cutoff.powi(2));
    let quadrature = integrate_line(|r| laguerre(m, r).unwrap() * (-g * r).exp(), r_c, cfg.radial_nodes);
    let formula = (g - 1.0).powi(m as i32) / g.powi(m as i32 + 1);
    Ok(IdentitySides {
        quadrature: c(quadrature, 0.0),
        formula: c(formula, 0.0),
    })
}

/// `∫ d²β/π L_m(|β|²/(ξ-1)) e^{-|β|²/(ξ-1) + βα* - αβ*}
///   = (ξ-1)^{m+1} |α|^{2m} e^{(1-ξ)|α|²} / m!`, quadrature only for `ξ > 1`.
pub fn laguerre_kernel_sides(m: usize, xi: f64, alpha: Complex64, cfg: &QuadratureConfig) -> Result<IdentitySides> {
    PolyOrder::new(m)?;
    cfg.validate()?;
    if !(xi > 1.0) {
        return Err(Error::invalid(
            "xi",
            xi,
            "xi > 1 (for xi <= 1 the identity holds only by analytic continuation)",
        ));
    }
    let h = 1.0 / (xi - 1.0);
    let log_env = |u: f64| -h * u + laguerre(m, -h * u).unwrap().ln();
    let (u_c, _) = envelope_cutoff(log_env, (cfg.abs_tol * 1e-3).ln(), cfg.radial_cutoff.powi(2));
    let quadrature = integrate_plane(
        |u, beta| laguerre(m, h * u).unwrap() * (-h * u + beta * alpha.conj() - alpha * beta.conj()).exp(),
        c(0.0, 0.0),
        u_c,
        cfg,
    );
    let a2 = alpha.norm_sqr();
    let formula = if a2 == 0.0 {
        if m == 0 {
            xi - 1.0
        } else {
            0.0
        }
    } else {
        ((m as f64 + 1.0) * (xi - 1.0).ln() + m as f64 * a2.ln() + (1.0 - xi) * a2 - ln_fact(m)).exp()
    };
    Ok(IdentitySides {
        quadrature,
        formula: c(formula, 0.0),
    })
}

/// `∫ d²β/π e^{-|β|²} L_m(|β|²)`, which equals `δ_{m0}`.
pub fn laguerre_vacuum_sides(m: usize, cfg: &QuadratureConfig) -> Result<IdentitySides> {
    let mut sides = laguerre_radial_sides(m, 1.0, cfg)?;
    sides.formula = c(if m == 0 { 1.0 } else { 0.0 }, 0.0);
    Ok(sides)
}

fn single(check: &str, params: Value, sides: IdentitySides, tolerance: f64) -> ComparisonReport {
    let mut meta = ReportMetadata::new(check, "formula", "quadrature");
    if let Value::Object(map) = params {
        for (k, v) in map {
            meta = meta.param(&k, v);
        }
    }
    let meta = meta
        .param("formula_im", sides.formula.im)
        .param("quadrature_im", sides.quadrature.im);
    ComparisonReport::new(
        meta,
        vec![sides.formula.re],
        vec![sides.quadrature.re],
        vec![sides.abs_err()],
        tolerance,
    )
}

pub fn identity_gaussian_linear(
    epsilon: f64,
    b: Complex64,
    cc: Complex64,
    cfg: &QuadratureConfig,
) -> Result<ComparisonReport> {
    let sides = gaussian_linear_sides(epsilon, b, cc, cfg)?;
    Ok(single(
        "gaussian-linear",
        json!({"epsilon": epsilon, "b": [b.re, b.im], "c": [cc.re, cc.im]}),
        sides,
        cfg.abs_tol,
    ))
}

pub fn identity_gaussian_moments(
    n: usize,
    m: usize,
    epsilon: f64,
    b: Complex64,
    cc: Complex64,
    cfg: &QuadratureConfig,
) -> Result<ComparisonReport> {
    let sides = gaussian_moments_sides(n, m, epsilon, b, cc, cfg)?;
    Ok(single(
        "gaussian-moments",
        json!({"n": n, "m": m, "epsilon": epsilon, "b": [b.re, b.im], "c": [cc.re, cc.im]}),
        sides,
        cfg.abs_tol,
    ))
}

pub fn identity_gaussian_quadratic(
    zeta: f64,
    xi_c: Complex64,
    eta_c: Complex64,
    f: f64,
    g: f64,
    cfg: &QuadratureConfig,
) -> Result<ComparisonReport> {
    let sides = gaussian_quadratic_sides(zeta, xi_c, eta_c, f, g, cfg)?;
    Ok(single(
        "gaussian-quadratic",
        json!({"zeta": zeta, "xi": [xi_c.re, xi_c.im], "eta": [eta_c.re, eta_c.im], "f": f, "g": g}),
        sides,
        cfg.abs_tol,
    ))
}

pub fn identity_laguerre_radial(m: usize, g: f64, cfg: &QuadratureConfig) -> Result<ComparisonReport> {
    let sides = laguerre_radial_sides(m, g, cfg)?;
    Ok(single("laguerre-radial", json!({"m": m, "g": g}), sides, cfg.abs_tol))
}

pub fn identity_laguerre_kernel(
    m: usize,
    xi: f64,
    alpha: Complex64,
    cfg: &QuadratureConfig,
) -> Result<ComparisonReport> {
    let sides = laguerre_kernel_sides(m, xi, alpha, cfg)?;
    Ok(single(
        "laguerre-kernel",
        json!({"m": m, "xi": xi, "alpha": [alpha.re, alpha.im]}),
        sides,
        cfg.abs_tol,
    ))
}

/// The compared value is `δ_{m0}`; the literal displayed right-hand side
/// (`1` for every `m`) is kept in the metadata as `display_rhs`.
pub fn identity_laguerre_vacuum(m: usize, cfg: &QuadratureConfig) -> Result<ComparisonReport> {
    let sides = laguerre_vacuum_sides(m, cfg)?;
    Ok(single(
        "laguerre-vacuum",
        json!({"m": m, "display_rhs": 1.0, "resolved_rhs": "delta(m,0), consistent with laguerre-radial at g = 1"}),
        sides,
        cfg.abs_tol,
    ))
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

fn cbox(rng: &mut ChaCha8Rng, half: f64) -> Complex64 {
    c(uniform(rng, -half, half), uniform(rng, -half, half))
}

/// Draw one in-domain instance of `name` and evaluate both sides.
fn draw(name: &str, rng: &mut ChaCha8Rng, index: usize, cfg: &QuadratureConfig) -> Result<(Value, IdentitySides)> {
    Ok(match name {
        "gaussian-linear" => {
            let eps = uniform(rng, -2.5, -0.5);
            let b = cbox(rng, 1.0);
            let cc = -b.conj();
            (
                json!({"epsilon": eps, "b": [b.re, b.im]}),
                gaussian_linear_sides(eps, b, cc, cfg)?,
            )
        }
        "gaussian-moments" => {
            let n = rng.random_range(0..=4usize);
            let m = rng.random_range(0..=4usize);
            let eps = uniform(rng, -2.0, -0.6);
            let b = cbox(rng, 0.8);
            (
                json!({"n": n, "m": m, "epsilon": eps, "b": [b.re, b.im]}),
                gaussian_moments_sides(n, m, eps, b, -b.conj(), cfg)?,
            )
        }
        "gaussian-quadratic" => {
            let zeta = uniform(rng, -2.0, -0.7);
            let f = uniform(rng, -0.3, 0.3) * zeta.abs();
            let g = uniform(rng, -0.3, 0.3) * zeta.abs();
            let x = cbox(rng, 0.8);
            (
                json!({"zeta": zeta, "f": f, "g": g, "xi": [x.re, x.im]}),
                gaussian_quadratic_sides(zeta, x, -x.conj(), f, g, cfg)?,
            )
        }
        "laguerre-radial" => {
            let m = rng.random_range(0..=10usize);
            let g = uniform(rng, 0.5, 3.0);
            (json!({"m": m, "g": g}), laguerre_radial_sides(m, g, cfg)?)
        }
        "laguerre-kernel" => {
            let m = rng.random_range(0..=6usize);
            let xi = uniform(rng, 1.3, 3.0);
            let a = cbox(rng, 1.0);
            (
                json!({"m": m, "xi": xi, "alpha": [a.re, a.im]}),
                laguerre_kernel_sides(m, xi, a, cfg)?,
            )
        }
        "laguerre-vacuum" => {
            let m = index % 11;
            (json!({"m": m}), laguerre_vacuum_sides(m, cfg)?)
        }
        other => {
            return Err(Error::invalid(
                "identity",
                f64::NAN,
                format!("one of {} (got `{other}`)", IDENTITY_NAMES.join(", ")),
            ))
        }
    })
}

/// `draws` randomized instances of one identity, aggregated into a report
/// whose entries are the individual draws.
pub fn run_identity(name: &str, seed: u64, draws: usize, cfg: &QuadratureConfig) -> Result<ComparisonReport> {
    let stream = IDENTITY_NAMES.iter().position(|n| *n == name).ok_or_else(|| {
        Error::invalid(
            "identity",
            f64::NAN,
            format!("one of {} (got `{name}`)", IDENTITY_NAMES.join(", ")),
        )
    })?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    let mut params = Vec::with_capacity(draws);
    let mut reference = Vec::with_capacity(draws);
    let mut candidate = Vec::with_capacity(draws);
    let mut errs = Vec::with_capacity(draws);
    for i in 0..draws {
        let (p, sides) = draw(name, &mut rng, i, cfg)?;
        params.push(p);
        reference.push(sides.formula.re);
        candidate.push(sides.quadrature.re);
        errs.push(sides.abs_err());
    }
    let mut meta = ReportMetadata::new(name, "formula", "quadrature")
        .seed(seed)
        .param("draws", Value::Array(params));
    if name == "laguerre-vacuum" {
        meta = meta.param("display_rhs", 1.0);
    }
    Ok(ComparisonReport::new(meta, reference, candidate, errs, cfg.abs_tol))
}

/// Every identity with `draws` randomized instances each.
pub fn run_identity_suite(seed: u64, draws: usize, cfg: &QuadratureConfig) -> Result<Vec<ComparisonReport>> {
    IDENTITY_NAMES
        .iter()
        .map(|name| run_identity(name, seed, draws, cfg))
        .collect()
}
