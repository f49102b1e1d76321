//! Acceptance criteria, one test per criterion. Each prints a single
//! `PASS`/`FAIL` line (visible with `--nocapture`) before asserting.

use std::time::{Duration, Instant};

use photocount::counting::{
    coherent_closed, displaced_thermal_closed, distribution, mmax_for, squeezed_closed, thermal_closed,
    thermal_closed_f_form, thermal_f_from_nbar, Method,
};
use photocount::oracle::identities::{laguerre_radial_sides, laguerre_vacuum_sides, IDENTITY_NAMES};
use photocount::oracle::verify::{continued_reference, verify_monte_carlo};
use photocount::oracle::{antidiagonal_quadrature, p_function_quadrature, run_identity_suite, SamplingRoute};
use photocount::{Complex64, Efficiency, QuadratureConfig, StateModel};

fn eff(x: f64) -> Efficiency {
    Efficiency::new(x).unwrap()
}

fn real(a2: f64) -> Complex64 {
    Complex64::new(a2.sqrt(), 0.0)
}

fn finish(id: u32, title: &str, worst: String, ok: bool, elapsed: Duration, limit: Duration) {
    let in_time = elapsed <= limit;
    let passed = ok && in_time;
    println!(
        "criterion {id} [{}] {title}: {worst}; {:.2}s (limit {}s)",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "criterion {id} failed: {worst}");
    assert!(in_time, "criterion {id} over time: {elapsed:?} > {limit:?}");
}

/// Thinning sum written out with its own binomial recurrence.
fn thin(fock: &[f64], xi: f64, m: usize) -> f64 {
    let mut term = xi.powi(m as i32);
    let mut sum = 0.0;
    for (n, p) in fock.iter().enumerate().skip(m) {
        if n > m {
            term *= n as f64 / (n - m) as f64 * (1.0 - xi);
        }
        sum += p * term;
    }
    sum
}

#[test]
fn criterion_1_poisson_recovery() {
    let t = Instant::now();
    let mut worst = 0.0f64;
    for &a2 in &[0.5, 1.0, 4.0] {
        let state = StateModel::coherent(real(a2)).unwrap();
        for &x in &[0.2, 0.5, 1.0] {
            let bern = distribution(&state, eff(x), 30, &Method::Bernoulli { tail_tol: 1e-16 }).unwrap();
            for m in 0..=30 {
                let c = coherent_closed(real(a2), eff(x), m).unwrap();
                worst = worst.max((c - bern.probs[m]).abs());
            }
        }
    }
    finish(
        1,
        "coherent closed form vs Bernoulli transform",
        format!("max |err| {worst:.2e} (tol 1e-10)"),
        worst <= 1e-10,
        t.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_2_chaotic_light() {
    let t = Instant::now();
    let (mut abs_worst, mut rel_worst) = (0.0f64, 0.0f64);
    let nbars = [1e-6f64, 1e-4, 1e-2, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0];
    for &nbar in &nbars {
        let fock: Vec<f64> = (0..2000)
            .map(|n| (n as f64 * (nbar / (1.0 + nbar)).ln()).exp() / (1.0 + nbar))
            .collect();
        let f = thermal_f_from_nbar(nbar);
        for &x in &[0.2, 0.5, 0.8, 1.0] {
            for m in 0..=30 {
                let c = thermal_closed(nbar, eff(x), m).unwrap();
                abs_worst = abs_worst.max((c - thin(&fock, x, m)).abs());
                let g = thermal_closed_f_form(f, eff(x), m).unwrap();
                if c > 0.0 {
                    rel_worst = rel_worst.max((c - g).abs() / c);
                }
            }
        }
    }
    finish(
        2,
        "thermal closed form vs Fock sum and f-parameterisation",
        format!("max |err| {abs_worst:.2e} (tol 1e-10), max rel {rel_worst:.2e} (tol 1e-12)"),
        abs_worst <= 1e-10 && rel_worst <= 1e-12,
        t.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_3_squeezed_vacuum() {
    let t = Instant::now();
    let mut worst = 0.0f64;
    let mut negative = 0;
    let mut odd_at_one = 0.0f64;
    for &lambda in &[0.2f64, 0.5, 0.8, 1.2] {
        // P_{2k} = sech λ (2k)! tanh^{2k} λ / (4^k k!²)
        let tanh = lambda.tanh();
        let mut fock = vec![0.0; 4000];
        let mut p = 1.0 / lambda.cosh();
        for k in 0..2000 {
            fock[2 * k] = p;
            let k = k as f64;
            p *= (2.0 * k + 1.0) * (2.0 * k + 2.0) / (4.0 * (k + 1.0) * (k + 1.0)) * tanh * tanh;
        }
        for &x in &[0.2, 0.5, 0.8, 1.0] {
            for m in 0..=20 {
                let c = squeezed_closed(lambda, eff(x), m).unwrap();
                worst = worst.max((c - thin(&fock, x, m)).abs());
                if c < 0.0 {
                    negative += 1;
                }
                if x == 1.0 && m % 2 == 1 {
                    odd_at_one = odd_at_one.max(c.abs());
                }
            }
        }
    }
    finish(
        3,
        "squeezed closed form vs Fock Bernoulli sum",
        format!("max |err| {worst:.2e} (tol 1e-10), {negative} negative, odd m at xi=1 max {odd_at_one:.1e}"),
        worst <= 1e-10 && negative == 0 && odd_at_one == 0.0,
        t.elapsed(),
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_4_displaced_chaotic_light() {
    let t = Instant::now();
    let cfg = QuadratureConfig::default();
    let mut quad_worst = 0.0f64;
    let mut sigma_worst = 0.0f64;
    let mut ok = true;
    for &(a2, nbar) in &[(1.0, 0.5), (2.0, 1.0)] {
        let state = StateModel::displaced_thermal(real(a2), nbar).unwrap();
        for &x in &[0.5, 0.8] {
            for m in 0..=15 {
                let c = displaced_thermal_closed(real(a2), nbar, eff(x), m).unwrap();
                let q = p_function_quadrature(&state, eff(x), m, &cfg).unwrap().value;
                quad_worst = quad_worst.max((c - q).abs());
            }
            for route in [SamplingRoute::PFunction, SamplingRoute::Fock] {
                let r = verify_monte_carlo(&state, eff(x), 20, 1_000_000, 2024, route, 4.0).unwrap();
                sigma_worst = sigma_worst.max(r.max_abs_err);
                ok &= r.passed;
            }
        }
    }
    finish(
        4,
        "displaced thermal closed form vs P-quadrature and Monte Carlo",
        format!("quadrature max |err| {quad_worst:.2e} (tol 1e-7), MC worst bin {sigma_worst:.2} sigma (tol 4)"),
        ok && quad_worst <= 1e-7,
        t.elapsed(),
        Duration::from_secs(60),
    );
}

/// `L_m(x)` for integer `x` as the exact rational `sum_l (-1)^l C(m,l) x^l m!/l! / m!`.
fn laguerre_at_integer(m: usize, x: i128) -> f64 {
    let fact = |k: usize| (1..=k as i128).product::<i128>();
    let mut num = 0i128;
    for l in 0..=m {
        let binom = fact(m) / (fact(l) * fact(m - l));
        let sign = if l % 2 == 0 { 1 } else { -1 };
        num += sign * binom * x.pow(l as u32) * (fact(m) / fact(l));
    }
    num as f64 / fact(m) as f64
}

#[test]
fn criterion_5_wigner_cross_check() {
    let t = Instant::now();
    let one = Efficiency::continued(1.0).unwrap();
    let mut worst = 0.0f64;
    for &a2 in &[0.25f64, 1.0] {
        for m in 0..=10 {
            let c = displaced_thermal_closed(real(a2), -0.5, one, m).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let w = 2.0 * sign * (-2.0 * a2).exp() * laguerre_at_integer(m, (4.0 * a2) as i128);
            worst = worst.max((c - w).abs() / w.abs());
        }
    }
    finish(
        5,
        "displaced thermal at xi=1, nbar=-1/2 vs number-state Wigner function",
        format!("max rel err {worst:.2e} (tol 1e-12)"),
        worst <= 1e-12,
        t.elapsed(),
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_6_antidiagonal_kernel_formula() {
    let t = Instant::now();
    let cfg = QuadratureConfig::default();
    let fine = cfg.doubled();
    let cases = [
        (StateModel::coherent(real(1.0)).unwrap(), 2.0),
        (StateModel::thermal(1.0).unwrap(), 1.5),
        (StateModel::squeezed_vacuum(0.5).unwrap(), 1.2),
    ];
    let (mut worst, mut drift) = (0.0f64, 0.0f64);
    for (state, x) in &cases {
        let reference = continued_reference(state, *x, 8).unwrap();
        for (m, r) in reference.iter().enumerate() {
            let q = antidiagonal_quadrature(state, *x, m, &cfg).unwrap().value;
            let q2 = antidiagonal_quadrature(state, *x, m, &fine).unwrap().value;
            worst = worst.max((q - r).abs());
            drift = drift.max((q - q2).abs());
        }
    }
    finish(
        6,
        "antidiagonal-kernel quadrature vs continued closed forms",
        format!("max |err| {worst:.2e} (tol 1e-6), node doubling {drift:.2e} (tol 1e-7)"),
        worst <= 1e-6 && drift < 1e-7,
        t.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_7_integral_identities() {
    let t = Instant::now();
    let cfg = QuadratureConfig::default();
    let reports = run_identity_suite(7, 20, &cfg).unwrap();
    let mut ok = reports.len() == IDENTITY_NAMES.len();
    let mut worst = 0.0f64;
    for r in &reports {
        ok &= r.per_m_abs_err.len() >= 20 && r.max_abs_err <= 1e-6;
        worst = worst.max(r.max_abs_err);
    }
    // δ_{m0} agrees with the radial identity at g = 1
    for m in 0..=10 {
        let vacuum = laguerre_vacuum_sides(m, &cfg).unwrap();
        let radial = laguerre_radial_sides(m, 1.0, &cfg).unwrap();
        ok &= vacuum.formula == radial.formula;
    }
    finish(
        7,
        "integral identities, 20 seeded draws each",
        format!("max |err| {worst:.2e} over {} identities (tol 1e-6)", reports.len()),
        ok,
        t.elapsed(),
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_8_global_properties() {
    let t = Instant::now();
    let mut states = Vec::new();
    for &a2 in &[0.0f64, 0.5, 2.0, 9.0] {
        states.push(StateModel::coherent(Complex64::from_polar(a2.sqrt(), 0.7)).unwrap());
    }
    for &nbar in &[0.1, 1.0, 5.0] {
        states.push(StateModel::thermal(nbar).unwrap());
    }
    for &lambda in &[0.1, 0.8, 1.5] {
        states.push(StateModel::squeezed_vacuum(lambda).unwrap());
    }
    for &(a2, nbar) in &[(0.5f64, 0.2), (4.0, 1.0), (9.0, 5.0)] {
        states.push(StateModel::displaced_thermal(Complex64::from_polar(a2.sqrt(), -1.1), nbar).unwrap());
    }
    states.push(StateModel::fock_mixture(vec![0.1, 0.2, 0.0, 0.4, 0.3]).unwrap());

    let (mut norm_excess, mut mean_worst) = (0.0f64, 0.0f64);
    for state in &states {
        let tail = 1e-14;
        let fock = state.fock_distribution(tail).unwrap();
        let mmax = mmax_for(state, tail).unwrap();
        for &x in &[0.3, 0.7, 1.0] {
            let method = match state {
                StateModel::FockMixture { .. } => Method::Bernoulli { tail_tol: tail },
                _ => Method::Closed,
            };
            let d = distribution(state, eff(x), mmax, &method).unwrap();
            let declared = fock.tail_bound + 1e-12;
            norm_excess = norm_excess.max((1.0 - d.total()).abs() - declared);
            mean_worst = mean_worst.max((d.mean() - x * state.mean_photon()).abs());
        }
    }
    finish(
        8,
        "normalisation and mean counts on the standard grid",
        format!("normalisation excess over declared {norm_excess:.2e} (<= 0), mean |err| {mean_worst:.2e} (tol 1e-8)"),
        norm_excess <= 0.0 && mean_worst <= 1e-8,
        t.elapsed(),
        Duration::from_secs(5),
    );
}
