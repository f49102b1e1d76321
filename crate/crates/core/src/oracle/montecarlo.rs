//! Seeded Monte Carlo photocount histograms.
//!
//! Samples are split into fixed-size chunks. Chunk `k` draws from ChaCha8
//! stream `k` of the user seed, and the chunk histograms are summed, so the
//! result depends only on `(seed, samples)`. Thread count and scheduling do
//! not affect it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution, Poisson, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::counting::{CountDistribution, Efficiency, MethodKind};
use crate::error::{Error, Result};
use crate::special_fn::PolyOrder;
use crate::states::StateModel;

/// Samples per independently seeded chunk.
pub const CHUNK: u64 = 1 << 16;

/// Tail tolerance of the photon-number vector sampled by [`SamplingRoute::Fock`].
const FOCK_SAMPLING_TAIL: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplingRoute {
    /// Draw `n` from the photon-number distribution, then `m ~ Binomial(n, xi)`.
    Fock,
    /// Draw a coherent amplitude from the Gaussian P-function, then
    /// `m ~ Poisson(xi |a|^2)`. Coherent, thermal and displaced thermal only.
    PFunction,
}

enum Sampler {
    Fock { cdf: Vec<f64> },
    Gaussian { alpha: (f64, f64), sigma: f64 },
}

impl Sampler {
    fn photons_or_intensity<R: Rng>(&self, rng: &mut R) -> Draw {
        match self {
            Sampler::Fock { cdf } => {
                let total = *cdf.last().unwrap();
                let u: f64 = rng.random::<f64>() * total;
                let n = cdf.partition_point(|c| *c <= u).min(cdf.len() - 1);
                Draw::Photons(n as u64)
            }
            Sampler::Gaussian { alpha, sigma } => {
                let x: f64 = rng.sample(StandardNormal);
                let y: f64 = rng.sample(StandardNormal);
                let re = alpha.0 + sigma * x;
                let im = alpha.1 + sigma * y;
                Draw::Intensity(re * re + im * im)
            }
        }
    }
}

enum Draw {
    Photons(u64),
    Intensity(f64),
}

fn sampler_for(state: &StateModel, route: SamplingRoute) -> Result<Sampler> {
    match route {
        SamplingRoute::Fock => {
            let fock = state.fock_distribution(FOCK_SAMPLING_TAIL)?;
            let cdf = fock
                .probs
                .iter()
                .scan(0.0, |acc, p| {
                    *acc += p;
                    Some(*acc)
                })
                .collect();
            Ok(Sampler::Fock { cdf })
        }
        SamplingRoute::PFunction => {
            let (alpha, nbar) = match state {
                StateModel::Coherent { alpha } => (*alpha, 0.0),
                StateModel::Thermal { nbar } => (Default::default(), *nbar),
                StateModel::DisplacedThermal { alpha, nbar } => (*alpha, *nbar),
                _ => {
                    return Err(Error::Capability {
                        method: "monte-carlo (p-function route)",
                        state: state.name(),
                        reason: "P-function is not a regular (positive) function",
                    })
                }
            };
            Ok(Sampler::Gaussian {
                alpha: (alpha.re, alpha.im),
                sigma: (nbar / 2.0).sqrt(),
            })
        }
    }
}

fn run_chunk(sampler: &Sampler, xi: f64, seed: u64, chunk: u64, len: u64, mmax: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    // last slot counts overflow past mmax
    let mut hist = vec![0u64; mmax + 2];
    for _ in 0..len {
        let m = match sampler.photons_or_intensity(&mut rng) {
            Draw::Photons(0) => 0,
            Draw::Photons(n) if xi == 1.0 => n,
            Draw::Photons(n) => Binomial::new(n, xi).unwrap().sample(&mut rng),
            Draw::Intensity(a2) => {
                let mu = xi * a2;
                if mu > 0.0 {
                    Poisson::new(mu).unwrap().sample(&mut rng) as u64
                } else {
                    0
                }
            }
        };
        hist[(m as usize).min(mmax + 1)] += 1;
    }
    hist
}

/// Empirical photocount histogram `p(0..=mmax)` from `samples` draws.
///
/// `trunc_err` is the fraction of samples whose count exceeded `mmax`.
pub fn mc_counts(
    state: &StateModel,
    xi: Efficiency,
    samples: u64,
    seed: u64,
    mmax: usize,
    route: SamplingRoute,
) -> Result<CountDistribution> {
    state.validate()?;
    PolyOrder::new(mmax)?;
    if samples == 0 {
        return Err(Error::invalid("samples", 0.0, "samples >= 1"));
    }
    if xi.get() > 1.0 {
        return Err(Error::invalid("xi", xi.get(), "0 < xi <= 1"));
    }
    let sampler = sampler_for(state, route)?;
    let chunks = samples.div_ceil(CHUNK);
    let hist = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let len = CHUNK.min(samples - k * CHUNK);
            run_chunk(&sampler, xi.get(), seed, k, len, mmax)
        })
        .reduce(
            || vec![0u64; mmax + 2],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let n = samples as f64;
    let probs = hist[..=mmax].iter().map(|c| *c as f64 / n).collect();
    Ok(CountDistribution::new(
        probs,
        MethodKind::MonteCarlo,
        hist[mmax + 1] as f64 / n,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn eff(x: f64) -> Efficiency {
        Efficiency::new(x).unwrap()
    }

    #[test]
    fn vacuum_counts_nothing() {
        let vac = StateModel::coherent(Complex64::new(0.0, 0.0)).unwrap();
        for route in [SamplingRoute::Fock, SamplingRoute::PFunction] {
            let d = mc_counts(&vac, eff(0.5), 1000, 3, 4, route).unwrap();
            assert_eq!(d.probs, vec![1.0, 0.0, 0.0, 0.0, 0.0]);
            assert_eq!(d.trunc_err, 0.0);
        }
    }

    #[test]
    fn thermal_zero_count_probability() {
        let n = 1_000_000u64;
        let th = StateModel::thermal(1.0).unwrap();
        for route in [SamplingRoute::Fock, SamplingRoute::PFunction] {
            let d = mc_counts(&th, eff(0.5), n, 11, 20, route).unwrap();
            let p = 2.0 / 3.0;
            let sigma = (p * (1.0 - p) / n as f64).sqrt();
            assert!((d.probs[0] - p).abs() < 4.0 * sigma, "{route:?}: {}", d.probs[0]);
        }
    }

    #[test]
    fn reproducible_and_seed_sensitive() {
        let dt = StateModel::displaced_thermal(Complex64::new(1.0, 0.3), 0.5).unwrap();
        let a = mc_counts(&dt, eff(0.8), 200_000, 7, 15, SamplingRoute::PFunction).unwrap();
        let b = mc_counts(&dt, eff(0.8), 200_000, 7, 15, SamplingRoute::PFunction).unwrap();
        let c = mc_counts(&dt, eff(0.8), 200_000, 8, 15, SamplingRoute::PFunction).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let d = single
            .install(|| mc_counts(&dt, eff(0.8), 200_000, 7, 15, SamplingRoute::PFunction))
            .unwrap();
        assert_eq!(a, d);
    }

    #[test]
    fn overflow_is_reported() {
        let coh = StateModel::coherent(Complex64::new(3.0, 0.0)).unwrap();
        let d = mc_counts(&coh, eff(1.0), 10_000, 1, 2, SamplingRoute::Fock).unwrap();
        assert!(d.trunc_err > 0.9);
        assert!((d.total() + d.trunc_err - 1.0).abs() < 1e-12);
    }

    #[test]
    fn capability_and_argument_errors() {
        let sq = StateModel::squeezed_vacuum(0.5).unwrap();
        assert!(matches!(
            mc_counts(&sq, eff(0.5), 10, 1, 3, SamplingRoute::PFunction),
            Err(Error::Capability { .. })
        ));
        assert!(mc_counts(&sq, eff(0.5), 10, 1, 3, SamplingRoute::Fock).is_ok());
        assert!(mc_counts(&sq, eff(0.5), 0, 1, 3, SamplingRoute::Fock).is_err());
        let cont = Efficiency::continued(1.5).unwrap();
        assert!(mc_counts(&sq, cont, 10, 1, 3, SamplingRoute::Fock).is_err());
    }
}
