//! Laguerre and Legendre polynomials by upward three-term recurrence.
//!
//! Explicit power sums overflow their factorials near degree 170, so every
//! evaluator here walks the recurrence instead. The "scaled" iterators fold a
//! geometric factor `c^k` into each step so that products such as
//! `c^m L_m(x)` stay representable when `c^m` alone would underflow and
//! `L_m(x)` alone would overflow.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest polynomial degree (and photocount index) accepted anywhere.
pub const MAX_DEGREE: usize = 10_000;

/// A polynomial degree, which doubles as the photoelectron count `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct PolyOrder(usize);

impl PolyOrder {
    pub fn new(m: usize) -> Result<Self> {
        if m > MAX_DEGREE {
            return Err(Error::DegreeLimit {
                degree: m,
                limit: MAX_DEGREE,
            });
        }
        Ok(PolyOrder(m))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for PolyOrder {
    type Error = Error;

    fn try_from(m: usize) -> Result<Self> {
        PolyOrder::new(m)
    }
}

impl From<PolyOrder> for usize {
    fn from(m: PolyOrder) -> usize {
        m.0
    }
}

/// Iterator over `c^k L_k(x)` for `k = 0, 1, 2, ...`.
///
/// Constructed from `c` and the product `cx = c * x` rather than `x` itself,
/// so the limit `c -> 0` with `c * x` finite is representable.
#[derive(Debug, Clone)]
pub struct ScaledLaguerre {
    c: f64,
    cx: f64,
    k: usize,
    prev: f64,
    cur: f64,
}

impl ScaledLaguerre {
    pub fn new(c: f64, cx: f64) -> Self {
        ScaledLaguerre {
            c,
            cx,
            k: 0,
            prev: 0.0,
            cur: 1.0,
        }
    }
}

impl Iterator for ScaledLaguerre {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let k = self.k as f64;
        // (k+1) R_{k+1} = ((2k+1) c - c x) R_k - k c^2 R_{k-1}
        let next = (((2.0 * k + 1.0) * self.c - self.cx) * self.cur - k * self.c * self.c * self.prev) / (k + 1.0);
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        Some(out)
    }
}

/// Iterator over `c^k Q_k(g)`, where `Q_k(g) = (g^2-1)^(-k/2) P_k(g / sqrt(g^2-1))`.
///
/// The transformed recurrence keeps everything real for `|g| < 1`.
#[derive(Debug, Clone)]
pub struct ScaledLegendreRatio {
    c: f64,
    g: f64,
    denom: f64,
    k: usize,
    prev: f64,
    cur: f64,
}

impl ScaledLegendreRatio {
    pub fn new(g: f64, c: f64) -> Result<Self> {
        let denom = g * g - 1.0;
        if denom == 0.0 || !g.is_finite() {
            return Err(Error::SingularParameter {
                name: "g",
                value: g,
                reason: "|g| = 1 makes (g^2 - 1)^(-m/2) singular",
            });
        }
        Ok(ScaledLegendreRatio {
            c,
            g,
            denom,
            k: 0,
            prev: 0.0,
            cur: 1.0,
        })
    }
}

impl Iterator for ScaledLegendreRatio {
    type Item = f64;

    fn next(&mut self) -> Option<f64> {
        let out = self.cur;
        let k = self.k as f64;
        let next = self.c * ((2.0 * k + 1.0) * self.g * self.cur - k * self.c * self.prev) / ((k + 1.0) * self.denom);
        self.prev = self.cur;
        self.cur = next;
        self.k += 1;
        Some(out)
    }
}

fn nth_checked<I: Iterator<Item = f64>>(mut it: I, m: usize) -> Result<f64> {
    PolyOrder::new(m)?;
    Ok(it.nth(m).expect("recurrence iterators are infinite"))
}

/// Laguerre polynomial `L_m(x)`; any finite `x`, including negative.
pub fn laguerre(m: usize, x: f64) -> Result<f64> {
    nth_checked(ScaledLaguerre::new(1.0, x), m)
}

/// `c^m L_m(x)` given `c` and `cx = c * x`.
pub fn laguerre_scaled(m: usize, c: f64, cx: f64) -> Result<f64> {
    nth_checked(ScaledLaguerre::new(c, cx), m)
}

/// Legendre polynomial `P_m(z)` of complex argument.
pub fn legendre_complex(m: usize, z: Complex64) -> Result<Complex64> {
    PolyOrder::new(m)?;
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    for k in 0..m {
        let k = k as f64;
        let next = ((2.0 * k + 1.0) * z * cur - k * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Real Legendre kernel `Q_m(g) = (g^2-1)^(-m/2) P_m(g / sqrt(g^2-1))`.
///
/// Real-valued for real `g` with `|g| < 1`; singular at `|g| = 1`.
pub fn legendre_ratio(m: usize, g: f64) -> Result<f64> {
    nth_checked(ScaledLegendreRatio::new(g, 1.0)?, m)
}

/// `|sum_{n<=nmax} L_n(x) t^n - exp(-x t / (1-t)) / (1-t)|`.
pub fn laguerre_genfun_check(x: f64, t: f64, nmax: usize) -> Result<f64> {
    PolyOrder::new(nmax)?;
    if t.abs() >= 1.0 {
        return Err(Error::invalid("t", t, "|t| < 1"));
    }
    let mut power = 1.0;
    let mut sum = 0.0;
    for l in ScaledLaguerre::new(1.0, x).take(nmax + 1) {
        sum += l * power;
        power *= t;
    }
    let closed = (-x * t / (1.0 - t)).exp() / (1.0 - t);
    Ok((sum - closed).abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Independent route for `Q_m(g)`: complex `P_m` at an imaginary
    /// argument with explicit principal square roots.
    fn legendre_ratio_via_complex(m: usize, g: f64) -> Complex64 {
        let s = c(g * g - 1.0, 0.0).sqrt();
        let z = c(g, 0.0) / s;
        legendre_complex(m, z).unwrap() * s.powi(-(m as i32))
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(0, 7.3).unwrap(), 1.0);
        assert_eq!(laguerre(1, 2.0).unwrap(), -1.0);
        assert!((laguerre(2, 1.0).unwrap() + 0.5).abs() < 1e-15);
    }

    #[test]
    fn laguerre_matches_explicit_sum() {
        // L_m(x) = sum_l (-1)^l C(m,l) x^l / l!, fine for small m
        for m in 0..15usize {
            for &x in &[-3.0f64, -0.5, 0.0, 0.7, 2.5, 6.0] {
                let mut sum = 0.0;
                let mut scale = 0.0f64;
                let mut binom = 1.0;
                let mut fact = 1.0;
                for l in 0..=m {
                    if l > 0 {
                        binom *= (m - l + 1) as f64 / l as f64;
                        fact *= l as f64;
                    }
                    let term = (-1f64).powi(l as i32) * binom * x.powi(l as i32) / fact;
                    sum += term;
                    scale = scale.max(term.abs());
                }
                // the alternating sum itself cancels down from `scale`
                let rec = laguerre(m, x).unwrap();
                assert!((rec - sum).abs() < 1e-13 * scale.max(1.0), "m={m} x={x}");
            }
        }
    }

    #[test]
    fn scaled_laguerre_is_power_times_laguerre() {
        let (x, cc) = (-3.0, 0.4);
        for m in 0..40 {
            let a = laguerre_scaled(m, cc, cc * x).unwrap();
            let b = cc.powi(m as i32) * laguerre(m, x).unwrap();
            assert!((a - b).abs() <= 1e-13 * b.abs().max(1e-300), "m={m}");
        }
    }

    #[test]
    fn laguerre_at_zero_is_one() {
        let v: Vec<f64> = ScaledLaguerre::new(1.0, 0.0).take(201).collect();
        for (m, l) in v.iter().enumerate() {
            assert!((l - 1.0).abs() < 1e-12, "m={m}");
        }
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_complex(0, c(3.0, -2.0)).unwrap(), c(1.0, 0.0));
        assert_eq!(legendre_complex(1, c(0.3, 0.4)).unwrap(), c(0.3, 0.4));
        assert!((legendre_complex(2, c(0.5, 0.0)).unwrap() - c(-0.125, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn legendre_endpoints() {
        for m in 0..=200 {
            let one = legendre_complex(m, c(1.0, 0.0)).unwrap();
            let minus = legendre_complex(m, c(-1.0, 0.0)).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            assert!((one - c(1.0, 0.0)).norm() < 1e-12);
            assert!((minus - c(sign, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn legendre_ratio_examples() {
        assert_eq!(legendre_ratio(0, 0.4).unwrap(), 1.0);
        assert!((legendre_ratio(2, 0.0).unwrap() - 0.5).abs() < 1e-15);
        assert!(matches!(legendre_ratio(3, 1.0), Err(Error::SingularParameter { .. })));
        assert!(legendre_ratio(3, -1.0).is_err());
    }

    #[test]
    fn legendre_ratio_matches_complex_route() {
        for &g in &[-0.95, -0.6, -0.2, 0.0, 0.3, 0.77] {
            for m in 0..30 {
                let real = legendre_ratio(m, g).unwrap();
                let cplx = legendre_ratio_via_complex(m, g);
                let scale = real.abs().max(1.0);
                assert!((cplx.re - real).abs() < 1e-12 * scale, "g={g} m={m}");
                assert!(cplx.im.abs() < 1e-12 * scale, "g={g} m={m}");
            }
        }
    }

    #[test]
    fn degree_ceiling() {
        assert!(laguerre(MAX_DEGREE, 0.5).is_ok());
        assert_eq!(
            laguerre(MAX_DEGREE + 1, 0.5),
            Err(Error::DegreeLimit {
                degree: MAX_DEGREE + 1,
                limit: MAX_DEGREE
            })
        );
        assert!(legendre_complex(MAX_DEGREE + 1, c(0.0, 0.0)).is_err());
        assert!(legendre_ratio(MAX_DEGREE + 1, 0.1).is_err());
        assert!(PolyOrder::try_from(10_001usize).is_err());
    }

    #[test]
    fn laguerre_generating_function() {
        assert!(laguerre_genfun_check(0.0, 0.5, 50).unwrap() < 1e-12);
        assert!(laguerre_genfun_check(1.0, 0.3, 60).unwrap() < 1e-10);
        assert!(laguerre_genfun_check(2.0, -0.4, 60).unwrap() < 1e-10);
        assert!(laguerre_genfun_check(1.0, 1.0, 10).is_err());
    }

    proptest! {
        #[test]
        fn legendre_parity(re in -2.0f64..2.0, im in -2.0f64..2.0, m in 0usize..=50) {
            let z = c(re, im);
            let a = legendre_complex(m, -z).unwrap();
            let b = legendre_complex(m, z).unwrap() * if m % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((a - b).norm() <= 1e-12 * b.norm().max(1e-300));
        }

        #[test]
        fn legendre_generating_function(x in -0.9f64..0.9, t in -0.5f64..0.5) {
            let mut sum = 0.0;
            let mut power = 1.0;
            for n in 0..=80 {
                sum += legendre_complex(n, c(x, 0.0)).unwrap().re * power;
                power *= t;
            }
            let closed = (1.0 - 2.0 * x * t + t * t).powf(-0.5);
            prop_assert!((sum - closed).abs() < 1e-10);
        }

        #[test]
        fn legendre_ratio_finite(g in -0.99f64..0.99, m in 0usize..=100) {
            let q = legendre_ratio(m, g).unwrap();
            prop_assert!(q.is_finite());
        }
    }
}
