//! Single-mode light-field states, their photon-number distributions and
//! antidiagonal coherent-state matrix elements `<-beta| rho |beta>`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};
use crate::special_fn::{ScaledLaguerre, MAX_DEGREE};

/// Allowed deviation of a user-supplied Fock mixture from unit trace.
pub const FOCK_NORM_TOL: f64 = 1e-12;

/// A light-field state. Construct through the checked constructors; every
/// operation re-validates, so hand-built values with bad parameters are
/// rejected rather than silently evaluated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum StateModel {
    Coherent { alpha: Complex64 },
    Thermal { nbar: f64 },
    SqueezedVacuum { lambda: f64 },
    DisplacedThermal { alpha: Complex64, nbar: f64 },
    FockMixture { probs: Vec<f64> },
}

/// Truncated photon-number distribution `P_n = <n| rho |n>`, `n = 0..=cutoff`.
///
/// The neglected mass beyond `cutoff` is at most `tail_bound`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FockDistribution {
    pub probs: Vec<f64>,
    pub cutoff: usize,
    pub tail_bound: f64,
}

impl FockDistribution {
    pub fn mass(&self) -> f64 {
        self.probs.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum()
    }
}

fn check_finite(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(name, v, "finite"))
    }
}

fn check_nbar(nbar: f64) -> Result<()> {
    check_finite("nbar", nbar)?;
    if nbar < 0.0 {
        return Err(Error::invalid("nbar", nbar, "nbar >= 0"));
    }
    Ok(())
}

fn check_alpha(alpha: Complex64) -> Result<()> {
    if alpha.re.is_finite() && alpha.im.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("alpha", alpha.norm(), "finite"))
    }
}

impl StateModel {
    pub fn coherent(alpha: impl Into<Complex64>) -> Result<Self> {
        let s = StateModel::Coherent { alpha: alpha.into() };
        s.validate()?;
        Ok(s)
    }

    pub fn thermal(nbar: f64) -> Result<Self> {
        let s = StateModel::Thermal { nbar };
        s.validate()?;
        Ok(s)
    }

    pub fn squeezed_vacuum(lambda: f64) -> Result<Self> {
        let s = StateModel::SqueezedVacuum { lambda };
        s.validate()?;
        Ok(s)
    }

    pub fn displaced_thermal(alpha: impl Into<Complex64>, nbar: f64) -> Result<Self> {
        let s = StateModel::DisplacedThermal {
            alpha: alpha.into(),
            nbar,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn fock_mixture(probs: Vec<f64>) -> Result<Self> {
        let s = StateModel::FockMixture { probs };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            StateModel::Coherent { alpha } => check_alpha(*alpha),
            StateModel::Thermal { nbar } => check_nbar(*nbar),
            StateModel::SqueezedVacuum { lambda } => {
                check_finite("lambda", *lambda)?;
                if *lambda < 0.0 {
                    return Err(Error::invalid("lambda", *lambda, "lambda >= 0"));
                }
                Ok(())
            }
            StateModel::DisplacedThermal { alpha, nbar } => {
                check_alpha(*alpha)?;
                check_nbar(*nbar)
            }
            StateModel::FockMixture { probs } => {
                if probs.is_empty() {
                    return Err(Error::invalid("probs", 0.0, "at least one entry"));
                }
                if probs.len() > MAX_DEGREE + 1 {
                    return Err(Error::DegreeLimit {
                        degree: probs.len() - 1,
                        limit: MAX_DEGREE,
                    });
                }
                if let Some(&p) = probs.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
                    return Err(Error::invalid("probs", p, "every entry finite and >= 0"));
                }
                let total: f64 = probs.iter().sum();
                if (total - 1.0).abs() > FOCK_NORM_TOL {
                    return Err(Error::invalid(
                        "probs",
                        total,
                        format!("entries sum to 1 within {FOCK_NORM_TOL:e}"),
                    ));
                }
                Ok(())
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            StateModel::Coherent { .. } => "coherent",
            StateModel::Thermal { .. } => "thermal",
            StateModel::SqueezedVacuum { .. } => "squeezed",
            StateModel::DisplacedThermal { .. } => "displaced-thermal",
            StateModel::FockMixture { .. } => "fock",
        }
    }

    /// Exact mean photon number.
    pub fn mean_photon(&self) -> f64 {
        match self {
            StateModel::Coherent { alpha } => alpha.norm_sqr(),
            StateModel::Thermal { nbar } => *nbar,
            StateModel::SqueezedVacuum { lambda } => lambda.sinh().powi(2),
            StateModel::DisplacedThermal { alpha, nbar } => nbar + alpha.norm_sqr(),
            StateModel::FockMixture { probs } => probs.iter().enumerate().map(|(n, p)| n as f64 * p).sum(),
        }
    }

    pub fn fock_distribution(&self, tail_tol: f64) -> Result<FockDistribution> {
        fock_distribution(self, tail_tol)
    }

    pub fn antidiagonal_element(&self, beta: Complex64) -> Complex64 {
        antidiagonal_element(self, beta)
    }

    /// Upper bound on `ln |<-beta| rho |beta>|` over all `beta` with `|beta|^2 = u`.
    pub(crate) fn antidiagonal_log_bound(&self, u: f64) -> f64 {
        match self {
            StateModel::Coherent { alpha } => -alpha.norm_sqr() - u,
            StateModel::Thermal { nbar } => {
                let e_f = nbar / (1.0 + nbar);
                -(1.0 + nbar).ln() - (1.0 + e_f) * u
            }
            StateModel::SqueezedVacuum { lambda } => -lambda.cosh().ln() - u + lambda.tanh() * u,
            StateModel::DisplacedThermal { alpha, nbar } => {
                -(1.0 + nbar).ln() - 2.0 * u - (alpha.norm_sqr() - u) / (nbar + 1.0)
            }
            StateModel::FockMixture { probs } => {
                // ln sum_n P_n u^n / n!, shifted by the largest term
                let logs: Vec<f64> = probs
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| **p > 0.0)
                    .map(|(n, p)| {
                        let n = n as f64;
                        let pow = if n == 0.0 { 0.0 } else { n * u.ln() };
                        p.ln() + pow - ln_gamma(n + 1.0)
                    })
                    .collect();
                let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let sum: f64 = logs.iter().map(|l| (l - top).exp()).sum();
                -u + top + sum.ln()
            }
        }
    }
}

/// Accumulate terms until `tail(probs)` certifies the neglected mass is at
/// most `tol`.
fn accumulate<I, T>(terms: I, tol: f64, tail: T) -> Result<FockDistribution>
where
    I: IntoIterator<Item = f64>,
    T: Fn(&[f64]) -> Option<f64>,
{
    let mut probs = Vec::new();
    let mut last = f64::INFINITY;
    for p in terms.into_iter().take(MAX_DEGREE + 1) {
        probs.push(p);
        if let Some(bound) = tail(&probs) {
            last = bound;
            if bound <= tol {
                let cutoff = probs.len() - 1;
                return Ok(FockDistribution {
                    probs,
                    cutoff,
                    tail_bound: bound,
                });
            }
        }
    }
    Err(Error::Truncation {
        requested: tol,
        achieved: last,
        cutoff: MAX_DEGREE,
    })
}

/// Tail bound for sequences whose successive ratio `P_{n+1}/P_n` is
/// non-increasing: everything past the last term is dominated by a geometric
/// series with the last observed ratio.
fn decreasing_ratio_tail(probs: &[f64]) -> Option<f64> {
    let n = probs.len();
    if n < 2 {
        return None;
    }
    let (prev, last) = (probs[n - 2], probs[n - 1]);
    if last == 0.0 {
        return Some(0.0);
    }
    let r = last / prev;
    (r < 1.0).then(|| last * r / (1.0 - r))
}

/// Photon-number distribution with neglected mass at most `tail_tol`.
pub fn fock_distribution(state: &StateModel, tail_tol: f64) -> Result<FockDistribution> {
    state.validate()?;
    if !(tail_tol > 0.0 && tail_tol < 1.0) {
        return Err(Error::invalid("tail_tol", tail_tol, "0 < tail_tol < 1"));
    }
    match state {
        StateModel::Coherent { alpha } => {
            let mu = alpha.norm_sqr();
            if mu == 0.0 {
                return Ok(FockDistribution {
                    probs: vec![1.0],
                    cutoff: 0,
                    tail_bound: 0.0,
                });
            }
            let ln_mu = mu.ln();
            let terms = (0..).map(move |n: usize| {
                let n = n as f64;
                (n * ln_mu - mu - ln_gamma(n + 1.0)).exp()
            });
            // Poisson ratios mu/(n+1) decrease monotonically.
            accumulate(terms, tail_tol, decreasing_ratio_tail)
        }
        StateModel::Thermal { nbar } => {
            let r = nbar / (1.0 + nbar);
            let norm = 1.0 / (1.0 + nbar);
            let terms = (0..).map(move |n: i32| norm * r.powi(n));
            accumulate(terms, tail_tol, |p| Some(r.powi(p.len() as i32)))
        }
        StateModel::SqueezedVacuum { lambda } => {
            let t2 = lambda.tanh().powi(2);
            let sech = 1.0 / lambda.cosh();
            // P_{2k} = sech * (2k-1)!!/(2k)!! * t^{2k}; P_{2k+2}/P_{2k} < t^2
            let mut even = sech;
            let terms = (0..).map(move |n: usize| {
                if n % 2 == 1 {
                    return 0.0;
                }
                let out = even;
                let k = (n / 2) as f64;
                even *= t2 * (2.0 * k + 1.0) / (2.0 * k + 2.0);
                out
            });
            accumulate(terms, tail_tol, |p| {
                let n = p.len() - 1;
                (n % 2 == 0).then(|| p[n] * t2 / (1.0 - t2))
            })
        }
        StateModel::DisplacedThermal { alpha, nbar } => {
            if *nbar == 0.0 {
                return fock_distribution(&StateModel::Coherent { alpha: *alpha }, tail_tol);
            }
            // unit-efficiency specialisation of the displaced chaotic counting law
            let a2 = alpha.norm_sqr();
            let k = (-a2 / (1.0 + nbar)).exp() / (1.0 + nbar);
            let c = nbar / (1.0 + nbar);
            let cx = -a2 / ((1.0 + nbar) * (1.0 + nbar));
            let terms = ScaledLaguerre::new(c, cx).map(move |r| k * r);
            accumulate(terms, tail_tol, decreasing_ratio_tail)
        }
        StateModel::FockMixture { probs } => {
            let total: f64 = probs.iter().sum();
            Ok(FockDistribution {
                probs: probs.clone(),
                cutoff: probs.len() - 1,
                tail_bound: (1.0 - total).max(0.0),
            })
        }
    }
}

/// Analytic antidiagonal element `<-beta| rho |beta>`, coherent-state
/// overlaps included. Each variant comes from evaluating the normal-ordered
/// form of `rho` between `<-beta|` and `|beta>`.
pub fn antidiagonal_element(state: &StateModel, beta: Complex64) -> Complex64 {
    let u = beta.norm_sqr();
    match state {
        StateModel::Coherent { alpha } => {
            let a = *alpha;
            (-a.norm_sqr() - u + a.conj() * beta - a * beta.conj()).exp()
        }
        StateModel::Thermal { nbar } => {
            let e_f = nbar / (1.0 + nbar);
            Complex64::from((-(1.0 + e_f) * u).exp() / (1.0 + nbar))
        }
        StateModel::SqueezedVacuum { lambda } => {
            let t = lambda.tanh();
            let quad = 0.5 * t * (beta * beta + beta.conj() * beta.conj());
            (quad - u).exp() / lambda.cosh()
        }
        StateModel::DisplacedThermal { alpha, nbar } => {
            let a = *alpha;
            let k = -(a - beta) * (a.conj() + beta.conj()) / (nbar + 1.0);
            (k - 2.0 * u).exp() / (nbar + 1.0)
        }
        StateModel::FockMixture { probs } => {
            // finite support, so the Fock series is exact
            let mut term = (-u).exp();
            let mut sum = 0.0;
            for (n, p) in probs.iter().enumerate() {
                if n > 0 {
                    term *= -u / n as f64;
                }
                sum += p * term;
            }
            Complex64::from(sum)
        }
    }
}

/// `<n|gamma>` for `n = 0..=nmax`.
fn coherent_amplitudes(gamma: Complex64, nmax: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(nmax + 1);
    let mut a = Complex64::from((-0.5 * gamma.norm_sqr()).exp());
    for n in 0..=nmax {
        out.push(a);
        a *= gamma / ((n + 1) as f64).sqrt();
    }
    out
}

fn dot_bra(bra_state: Complex64, amps: &[Complex64]) -> Complex64 {
    // sum_n <bra_state|n> amps[n]
    coherent_amplitudes(bra_state, amps.len() - 1)
        .iter()
        .zip(amps)
        .map(|(b, a)| b.conj() * a)
        .sum()
}

fn diagonal_sum(bra: Complex64, ket: Complex64, diag: &[f64]) -> Complex64 {
    let nmax = diag.len() - 1;
    let bras = coherent_amplitudes(bra, nmax);
    let kets = coherent_amplitudes(ket, nmax);
    diag.iter()
        .zip(bras.iter().zip(&kets))
        .map(|(p, (b, k))| *p * b.conj() * k)
        .sum()
}

/// Brute-force `<-beta| rho |beta>` from truncated Fock matrix elements.
pub fn antidiagonal_series(state: &StateModel, beta: Complex64, nmax: usize) -> Result<Complex64> {
    state.validate()?;
    if nmax > MAX_DEGREE {
        return Err(Error::DegreeLimit {
            degree: nmax,
            limit: MAX_DEGREE,
        });
    }
    let value = match state {
        StateModel::Coherent { alpha } => {
            let psi = coherent_amplitudes(*alpha, nmax);
            let left = dot_bra(-beta, &psi);
            let right = dot_bra(beta, &psi).conj();
            left * right
        }
        StateModel::SqueezedVacuum { lambda } => {
            // psi_{2k} = sech^{1/2} * (t/2)^k sqrt((2k)!) / k!
            let t = lambda.tanh();
            let mut psi = vec![Complex64::from(0.0); nmax + 1];
            let mut amp = lambda.cosh().powf(-0.5);
            for k in 0..=nmax / 2 {
                psi[2 * k] = Complex64::from(amp);
                let kf = k as f64;
                amp *= 0.5 * t * ((2.0 * kf + 1.0) * (2.0 * kf + 2.0)).sqrt() / (kf + 1.0);
            }
            dot_bra(-beta, &psi) * dot_bra(beta, &psi).conj()
        }
        StateModel::Thermal { nbar } => {
            let r = nbar / (1.0 + nbar);
            let diag: Vec<f64> = (0..=nmax).map(|n| r.powi(n as i32) / (1.0 + nbar)).collect();
            diagonal_sum(-beta, beta, &diag)
        }
        StateModel::DisplacedThermal { alpha, nbar } => {
            // D(a)^dag |b> = exp((a* b - a b*)/2) |b - a>, so the element
            // reduces to a thermal diagonal sum between displaced states.
            let a = *alpha;
            let r = nbar / (1.0 + nbar);
            let diag: Vec<f64> = (0..=nmax).map(|n| r.powi(n as i32) / (1.0 + nbar)).collect();
            let phase = (a.conj() * beta - a * beta.conj()).exp();
            phase * diagonal_sum(-(a + beta), beta - a, &diag)
        }
        StateModel::FockMixture { probs } => {
            let mut diag = probs.clone();
            diag.resize(nmax.max(probs.len() - 1) + 1, 0.0);
            diagonal_sum(-beta, beta, &diag)
        }
    };
    Ok(value)
}

/// `|series - analytic|` for the antidiagonal element.
pub fn antidiagonal_series_check(state: &StateModel, beta: Complex64, nmax: usize) -> Result<f64> {
    let series = antidiagonal_series(state, beta, nmax)?;
    Ok((series - antidiagonal_element(state, beta)).norm())
}

/// Series length that comfortably converges for a given `|beta|`.
pub fn series_nmax_for(state: &StateModel, beta: Complex64) -> usize {
    let extra = match state {
        StateModel::Coherent { alpha } | StateModel::DisplacedThermal { alpha, .. } => 4.0 * alpha.norm_sqr(),
        StateModel::Thermal { nbar } => 40.0 * nbar,
        _ => 0.0,
    };
    (4.0 * beta.norm_sqr() + 40.0 + extra).ceil() as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn grid() -> Vec<StateModel> {
        let mut v = Vec::new();
        for &a2 in &[0.0, 1.0, 4.0, 9.0] {
            let alpha = c((a2 / 2.0f64).sqrt(), -(a2 / 2.0f64).sqrt());
            v.push(StateModel::coherent(alpha).unwrap());
            for &nbar in &[0.3, 1.0, 5.0] {
                v.push(StateModel::displaced_thermal(alpha, nbar).unwrap());
            }
        }
        for &nbar in &[0.0, 0.2, 1.0, 5.0] {
            v.push(StateModel::thermal(nbar).unwrap());
        }
        for &lambda in &[0.0, 0.3, 0.8, 1.5] {
            v.push(StateModel::squeezed_vacuum(lambda).unwrap());
        }
        v.push(StateModel::fock_mixture(vec![0.1, 0.2, 0.0, 0.4, 0.3]).unwrap());
        v
    }

    #[test]
    fn fock_examples() {
        let vac = StateModel::coherent(c(0.0, 0.0)).unwrap();
        let f = vac.fock_distribution(1e-12).unwrap();
        assert_eq!(f.probs[0], 1.0);
        assert!(f.probs[1..].iter().all(|p| *p == 0.0));

        let th = StateModel::thermal(1.0).unwrap().fock_distribution(1e-12).unwrap();
        for (n, p) in th.probs.iter().enumerate() {
            assert!((p - 0.5f64.powi(n as i32 + 1)).abs() < 1e-16);
        }

        let sq = StateModel::squeezed_vacuum(0.5)
            .unwrap()
            .fock_distribution(1e-12)
            .unwrap();
        let (sech, t) = (1.0 / 0.5f64.cosh(), 0.5f64.tanh());
        assert!((sq.probs[0] - 0.886818883970074).abs() < 1e-12);
        assert_eq!(sq.probs[1], 0.0);
        assert!((sq.probs[2] - sech * t * t / 2.0).abs() < 1e-15);
        assert!((sq.probs[2] - 0.0946910915602).abs() < 1e-12);
    }

    #[test]
    fn squeezed_matches_factorial_form() {
        // (2k)! / (4^k (k!)^2) via ln_gamma as an independent route
        let lambda = 1.1f64;
        let f = StateModel::squeezed_vacuum(lambda)
            .unwrap()
            .fock_distribution(1e-14)
            .unwrap();
        for k in 0..30usize {
            let kf = k as f64;
            let ln = ln_gamma(2.0 * kf + 1.0) - kf * 4f64.ln() - 2.0 * ln_gamma(kf + 1.0);
            let expect = ln.exp() * lambda.tanh().powi(2 * k as i32) / lambda.cosh();
            assert!((f.probs[2 * k] - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn normalized_within_tail() {
        for s in grid() {
            for &tol in &[1e-6, 1e-10, 1e-14] {
                let f = s.fock_distribution(tol).unwrap();
                assert!(f.tail_bound <= tol);
                assert!(f.probs.iter().all(|p| (0.0..=1.0).contains(p)));
                let mass = f.mass();
                assert!(mass <= 1.0 + 1e-13, "{s:?} mass {mass}");
                assert!(
                    1.0 - mass <= f.tail_bound + 1e-13,
                    "{s:?} mass {mass} tail {}",
                    f.tail_bound
                );
                assert_eq!(f.cutoff + 1, f.probs.len());
            }
        }
    }

    #[test]
    fn squeezed_odd_terms_vanish() {
        for &lambda in &[0.1, 0.7, 1.5] {
            let f = StateModel::squeezed_vacuum(lambda)
                .unwrap()
                .fock_distribution(1e-14)
                .unwrap();
            assert!(f.probs.iter().skip(1).step_by(2).all(|p| *p == 0.0));
        }
    }

    #[test]
    fn means_match_fock_moments() {
        assert_eq!(StateModel::coherent(c(1.0, 0.0)).unwrap().mean_photon(), 1.0);
        let sq = StateModel::squeezed_vacuum(0.5).unwrap();
        assert!((sq.mean_photon() - 0.2715403174076219).abs() < 1e-15);
        let dt = StateModel::displaced_thermal(c(1.0, 1.0), 0.5).unwrap();
        assert!((dt.mean_photon() - 2.5).abs() < 1e-15);
        for s in grid() {
            let f = s.fock_distribution(1e-15).unwrap();
            let err = (f.mean() - s.mean_photon()).abs();
            assert!(err < 1e-10, "{s:?}: {err}");
        }
    }

    #[test]
    fn antidiagonal_examples() {
        for &nbar in &[0.0, 0.5, 2.0] {
            let th = StateModel::thermal(nbar).unwrap();
            let v = th.antidiagonal_element(c(0.0, 0.0));
            assert!((v.re - 1.0 / (1.0 + nbar)).abs() < 1e-15 && v.im == 0.0);
        }
        let beta = c(0.6, -0.3);
        let u = beta.norm_sqr();
        let vac = StateModel::coherent(c(0.0, 0.0)).unwrap().antidiagonal_element(beta);
        assert!((vac - c((-u).exp(), 0.0)).norm() < 1e-15);
        let sq0 = StateModel::squeezed_vacuum(0.0).unwrap().antidiagonal_element(beta);
        assert!((sq0 - vac).norm() < 1e-15);
    }

    #[test]
    fn antidiagonal_series_examples() {
        let coh = StateModel::coherent(c(1.0, 0.0)).unwrap();
        assert!(antidiagonal_series_check(&coh, c(0.5, 0.0), 80).unwrap() < 1e-10);
        let sq = StateModel::squeezed_vacuum(0.8).unwrap();
        assert!(antidiagonal_series_check(&sq, c(0.0, 0.7), 120).unwrap() < 1e-10);
        let th = StateModel::thermal(1.0).unwrap();
        assert!(antidiagonal_series_check(&th, c(1.0, 0.0), 100).unwrap() < 1e-10);
        assert!(antidiagonal_series_check(&th, c(1.0, 0.0), MAX_DEGREE + 1).is_err());
    }

    #[test]
    fn antidiagonal_agrees_with_series_on_grid() {
        let betas = [
            c(0.0, 0.0),
            c(0.3, 0.1),
            c(-1.0, 0.5),
            c(0.2, -1.4),
            c(1.9, 0.0),
            c(-1.2, -1.5),
        ];
        for s in grid() {
            for &beta in &betas {
                let nmax = series_nmax_for(&s, beta);
                let res = antidiagonal_series_check(&s, beta, nmax).unwrap();
                assert!(res < 1e-9, "{s:?} beta={beta}: {res}");
                assert!(s.antidiagonal_element(beta).norm() <= 1.0 + 1e-15);
            }
        }
    }

    #[test]
    fn log_bound_dominates() {
        for s in grid() {
            for &r in &[0.0, 0.5, 1.3, 2.0, 3.5] {
                let bound = s.antidiagonal_log_bound(r * r);
                for j in 0..32 {
                    let th = j as f64 * std::f64::consts::TAU / 32.0;
                    let beta = Complex64::from_polar(r, th);
                    let v = s.antidiagonal_element(beta).norm();
                    assert!(v.ln() <= bound + 1e-12, "{s:?} r={r} th={th}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(StateModel::thermal(-0.1).is_err());
        assert!(StateModel::thermal(f64::NAN).is_err());
        assert!(StateModel::squeezed_vacuum(-1.0).is_err());
        assert!(StateModel::displaced_thermal(c(1.0, 0.0), -0.5).is_err());
        assert!(StateModel::fock_mixture(vec![0.5, 0.4]).is_err());
        assert!(StateModel::fock_mixture(vec![1.2, -0.2]).is_err());
        assert!(StateModel::fock_mixture(vec![]).is_err());
        let th = StateModel::thermal(1.0).unwrap();
        assert!(th.fock_distribution(0.0).is_err());
        assert!(th.fock_distribution(1.0).is_err());
        let err = StateModel::thermal(-2.0).unwrap_err().to_string();
        assert!(err.contains("nbar") && err.contains(">= 0"), "{err}");
    }

    #[test]
    fn truncation_error_when_unreachable() {
        let s = StateModel::thermal(5000.0).unwrap();
        assert!(matches!(s.fock_distribution(1e-12), Err(Error::Truncation { .. })));
    }

    #[test]
    fn displaced_thermal_ratio_is_monotone() {
        // the tail bound relies on non-increasing P_{n+1}/P_n
        for &(a2, nbar) in &[(0.5f64, 0.1), (4.0, 1.0), (9.0, 0.3), (2.0, 3.0)] {
            let s = StateModel::displaced_thermal(c(a2.sqrt(), 0.0), nbar).unwrap();
            let f = s.fock_distribution(1e-15).unwrap();
            let ratios: Vec<f64> = f.probs.windows(2).map(|w| w[1] / w[0]).collect();
            assert!(ratios.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12)));
        }
    }

    #[test]
    fn serde_shape() {
        let s = StateModel::displaced_thermal(c(1.0, 0.5), 0.5).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"kind":"displaced-thermal","alpha":[1.0,0.5],"nbar":0.5}"#);
        let back: StateModel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
