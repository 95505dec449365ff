//! Evaluations of ζ(z): Dirichlet partial sums, the alternating (eta)
//! regularization with Borwein/Cohen–Villegas–Zagier acceleration,
//! counterterm-subtracted partial sums, and truncated Euler products.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::primes::PrimeTable;
use crate::special::{ln_1p, neg_log1m};
use crate::sum::ComplexKahanSum;
use crate::{ComplexValue, Error, Result};

/// Maximum number of accelerated eta terms.
pub const ETA_MAX_TERMS: usize = 2000;

/// Exclusion radius around the zeros 1 + 2πik/ln 2 of 1 − 2^{1−z}.
pub const PREFACTOR_ZERO_RADIUS: f64 = 1e-6;

/// Tolerance used when ζ feeds logarithms inside prime-zeta computations.
pub(crate) const INTERNAL_TOL: f64 = 1e-14;

/// Above this real part the Euler–Maclaurin route is used for ζ(s) − 1.
pub(crate) const EM_ROUTE_MIN_RE: f64 = 1.5;

pub(crate) fn check_finite(z: ComplexValue) -> Result<()> {
    if z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("non-finite argument {z}")))
    }
}

/// k^{−z} = exp(−z ln k).
#[inline]
pub(crate) fn pow_neg(ln_k: f64, z: Complex64) -> Complex64 {
    (-z * ln_k).exp()
}

/// ζ_n(z) = Σ_{k=1}^{n} k^{−z}, summed in ascending order.
pub fn zeta_dirichlet(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    check_finite(z)?;
    if n == 0 {
        return Err(Error::Domain(
            "partial sum length must be at least 1".into(),
        ));
    }
    Ok((1..=n)
        .map(|k| pow_neg((k as f64).ln(), z))
        .collect::<ComplexKahanSum>()
        .value())
}

/// ζ_n(z) − n^{1−z}/(1−z).
pub fn zeta_counterterm(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    check_finite(z)?;
    if z == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    let partial = zeta_dirichlet(z, n)?;
    let one_minus = Complex64::new(1.0, 0.0) - z;
    let counter = (one_minus * (n as f64).ln()).exp() / one_minus;
    Ok(partial - counter)
}

/// Truncated Euler product ∏_{p ≤ limit} (1 − p^{−z})^{−1}, for Re z > 1.
pub fn euler_product_zeta(z: ComplexValue, table: &PrimeTable) -> Result<ComplexValue> {
    check_finite(z)?;
    if z.re <= 1.0 {
        return Err(Error::Domain(format!(
            "Euler product needs Re z > 1, got {z}"
        )));
    }
    let log = table
        .primes()
        .iter()
        .map(|&p| neg_log1m(pow_neg((p as f64).ln(), z)))
        .collect::<ComplexKahanSum>()
        .value();
    Ok(log.exp())
}

/// Distance from `z` to the nearest zero of 1 − 2^{1−z}.
fn prefactor_zero_distance(z: Complex64) -> f64 {
    let spacing = 2.0 * PI / LN_2;
    let k = (z.im / spacing).round();
    (z - Complex64::new(1.0, k * spacing)).norm()
}

/// Regularized ζ(z) = (1 − 2^{1−z})^{−1} Σ (−1)^{n−1} n^{−z} for Re z > 0.
///
/// The alternating sum is accelerated with Chebyshev-weighted partial sums
/// (Borwein's variant of Cohen–Rodriguez Villegas–Zagier). The weights are
/// normalized in log space so any term count up to [`ETA_MAX_TERMS`] is
/// representable. The term count is raised until two estimates agree to
/// within `tol`.
pub fn zeta_eta(z: ComplexValue, tol: f64) -> Result<ComplexValue> {
    check_finite(z)?;
    if !(tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if z.re <= 0.0 {
        return Err(Error::Domain(format!(
            "eta regularization needs Re z > 0, got {z}"
        )));
    }
    if prefactor_zero_distance(z) < PREFACTOR_ZERO_RADIUS {
        return Err(Error::Singularity(format!(
            "{z} lies within {PREFACTOR_ZERO_RADIUS:e} of a zero of 1 - 2^(1-z)"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let prefactor = one - (Complex64::new(LN_2, 0.0) * (one - z)).exp();
    let eta_tol = tol * prefactor.norm();

    // Error bound ~ 3 (1 + 2|t|) e^{π|t|/2} / (3 + √8)^n, up to 1/|Γ(z)|.
    let t = z.im.abs();
    let rate = (3.0 + 8f64.sqrt()).ln();
    let needed = ((3.0 / eta_tol).ln() + 0.5 * PI * t + (1.0 + 2.0 * t).ln()) / rate;
    let mut n = (needed.ceil().max(8.0) as usize).min(ETA_MAX_TERMS);
    const STEP: usize = 8;
    loop {
        let coarse = eta_accelerated(z, n);
        let fine = eta_accelerated(z, n + STEP);
        if (fine - coarse).norm() <= eta_tol {
            return Ok(fine / prefactor);
        }
        if n + STEP >= ETA_MAX_TERMS {
            return Err(Error::Convergence(format!(
                "eta series at {z} did not reach tolerance {tol:e} within {ETA_MAX_TERMS} terms"
            )));
        }
        n = (2 * n).min(ETA_MAX_TERMS - STEP);
    }
}

/// Σ_{k<n} (−1)^k (d_n − d_k)/d_n (k+1)^{−z} with
/// d_k = Σ_{i≤k} n (n+i−1)! 4^i / ((n−i)! (2i)!).
fn eta_accelerated(z: Complex64, n: usize) -> Complex64 {
    let nf = n as f64;
    let mut log_terms = Vec::with_capacity(n + 1);
    let mut lt = 0.0f64;
    log_terms.push(lt);
    for i in 0..n {
        let fi = i as f64;
        lt += ((nf + fi) * (nf - fi) * 4.0 / ((2.0 * fi + 1.0) * (2.0 * fi + 2.0))).ln();
        log_terms.push(lt);
    }
    let max = log_terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = log_terms.iter().map(|&l| (l - max).exp()).collect();
    let total: f64 = weights.iter().sum();

    // tail[k] = (d_n − d_k)/d_n = Σ_{i>k} w_i / Σ w_i, accumulated from the top.
    let mut tails = vec![0.0; n];
    let mut acc = 0.0;
    for k in (0..n).rev() {
        acc += weights[k + 1];
        tails[k] = acc / total;
    }
    let mut sum = ComplexKahanSum::new();
    for (k, &w) in tails.iter().enumerate() {
        let term = pow_neg(((k + 1) as f64).ln(), z) * w;
        sum.add(if k % 2 == 0 { term } else { -term });
    }
    sum.value()
}

const BERNOULLI_2J: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

/// ζ(s) − 1 by a Dirichlet head plus Euler–Maclaurin tail (direct sum for
/// large Re s, where 2^{−s} dominates).
pub(crate) fn zeta_minus_one_em(s: Complex64) -> Result<Complex64> {
    check_finite(s)?;
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    if s.re >= 30.0 {
        let lead = 2f64.powf(-s.re);
        let mut sum = ComplexKahanSum::new();
        let mut k = 2u64;
        loop {
            let mag = (k as f64).powf(-s.re);
            if mag <= lead * 1e-18 || mag == 0.0 {
                break;
            }
            sum.add(pow_neg((k as f64).ln(), s));
            k += 1;
        }
        return Ok(sum.value());
    }
    let big_n = (2.0 * s.norm()).ceil().max(20.0) as u64;
    let mut head = ComplexKahanSum::new();
    for k in 2..big_n {
        head.add(pow_neg((k as f64).ln(), s));
    }
    let nf = big_n as f64;
    let ln_n = nf.ln();
    let one = Complex64::new(1.0, 0.0);
    let n_pow = pow_neg(ln_n, s); // N^{−s}
    head.add(n_pow * nf / (s - one));
    head.add(n_pow * 0.5);

    // Σ_j B_{2j}/(2j)! s(s+1)…(s+2j−2) N^{−s−2j+1}
    let mut poch = s;
    let mut npow = n_pow / nf;
    let mut fact = 2.0;
    let mut prev = f64::INFINITY;
    for (j, &b) in BERNOULLI_2J.iter().enumerate() {
        let term = poch * npow * (b / fact);
        let mag = term.norm();
        if mag > prev {
            break;
        }
        head.add(term);
        if mag <= 1e-18 * n_pow.norm() {
            break;
        }
        prev = mag;
        let m = 2.0 * (j as f64 + 1.0);
        poch = poch * (s + (m - 1.0)) * (s + m);
        npow /= nf * nf;
        fact *= (m + 1.0) * (m + 2.0);
    }
    Ok(head.value())
}

/// Which evaluator produced a ζ value inside the composite routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ZetaRoute {
    Eta,
    EulerMaclaurin,
}

pub(crate) fn zeta_route(s: Complex64) -> ZetaRoute {
    if s.re > EM_ROUTE_MIN_RE {
        ZetaRoute::EulerMaclaurin
    } else {
        ZetaRoute::Eta
    }
}

/// ζ(s) for Re s > 0: Euler–Maclaurin above Re s = 1.5, the eta series below.
pub fn zeta_auto(s: Complex64, tol: f64) -> Result<Complex64> {
    match zeta_route(s) {
        ZetaRoute::EulerMaclaurin => Ok(Complex64::new(1.0, 0.0) + zeta_minus_one_em(s)?),
        ZetaRoute::Eta => zeta_eta(s, tol),
    }
}

/// Principal log ζ(s), the branch continuous from Re s → ∞ when Re s > 1.
///
/// On the real axis a non-positive ζ(s) has no real logarithm and is an error.
pub(crate) fn log_zeta(s: Complex64, tol: f64) -> Result<Complex64> {
    match zeta_route(s) {
        ZetaRoute::EulerMaclaurin => Ok(ln_1p(zeta_minus_one_em(s)?)),
        ZetaRoute::Eta => {
            let z = zeta_eta(s, tol)?;
            if s.im == 0.0 && z.re <= 0.0 {
                return Err(Error::Numeric(format!(
                    "ζ({s}) = {z} has no real logarithm"
                )));
            }
            Ok(z.ln())
        }
    }
}
