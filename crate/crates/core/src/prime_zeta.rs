//! The prime zeta function P(z) = Σ_p p^{−z} by four routes, the residual
//! R(z) = Σ_{k≥2} P(kz)/k, and numerical checks of the identities tying them
//! to log ζ.
//!
//! Routes:
//! - direct prime sums over a [`PrimeTable`];
//! - Möbius inversion, P(z) = Σ_n μ(n)/n · log ζ(nz);
//! - inclusion–exclusion over products of distinct primes,
//!   log ζ(z) − Σ_i log ζ(p_i z)/p_i + Σ_{i<j} log ζ(p_i p_j z)/(p_i p_j) − …;
//! - counterterm regularization in the critical strip,
//!   P̂_n(z) = P_n(z) − ∫_2^n dt/(t ln t)^z, where P_n sums the first n primes.
//!
//! The counterterm integral starts at 2 because (ln t)^{−z} is singular at
//! t = 1; the difference is a z-dependent constant.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde::Serialize;

use crate::par;
use crate::primes::{self, PrimeTable};
use crate::special::{expint_e1, integrate};
use crate::sum::{ComplexKahanSum, KahanSum};
use crate::trace::SeriesTrace;
use crate::zeta::{check_finite, log_zeta, pow_neg, zeta_minus_one_em, INTERNAL_TOL};
use crate::{ComplexValue, Error, Result};

/// Euler–Mascheroni constant, for reporting and validation only.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Möbius depth used wherever P is needed as an ingredient.
pub const DEFAULT_MOBIUS_DEPTH: u64 = 40;

/// Absolute tolerance of the counterterm quadrature.
pub const COUNTERTERM_QUAD_TOL: f64 = 1e-9;

/// Cap on enumerated prime products in [`inclusion_exclusion_p`].
pub const MAX_INCLUSION_EXCLUSION_TERMS: usize = 10_000_000;

/// P_n(z) over every prime in `table`, ascending.
pub fn prime_zeta_direct(z: ComplexValue, table: &PrimeTable) -> Result<ComplexValue> {
    check_finite(z)?;
    if table.is_empty() {
        return Err(Error::Domain("empty prime table".into()));
    }
    Ok(prime_power_sum(z, table.primes()))
}

fn prime_power_sum(z: Complex64, primes: &[u64]) -> Complex64 {
    primes
        .iter()
        .map(|&p| pow_neg((p as f64).ln(), z))
        .collect::<ComplexKahanSum>()
        .value()
}

/// Integral estimate of Σ_{p>x} p^{−z}: ∫_x^∞ dt/(t^z ln t) = E1((z − 1) ln x).
pub fn prime_tail_estimate(z: ComplexValue, x: u64) -> Result<ComplexValue> {
    check_finite(z)?;
    if z.re <= 1.0 || x < 2 {
        return Err(Error::Domain(format!(
            "tail estimate needs Re z > 1 and x >= 2, got z = {z}, x = {x}"
        )));
    }
    expint_e1((z - 1.0) * (x as f64).ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MobiusEstimate {
    pub value: ComplexValue,
    /// |μ(n)/n · log ζ(nz)| for the last n ≤ depth with μ(n) ≠ 0.
    pub last_term: f64,
}

/// P(z) ≈ Σ_{n ≤ depth} μ(n)/n · log ζ(nz), for Re z > 1/2.
pub fn prime_zeta_mobius(z: ComplexValue, depth: u64, tol: f64) -> Result<MobiusEstimate> {
    check_finite(z)?;
    if z.re <= 0.5 {
        return Err(Error::Domain(format!(
            "Möbius inversion needs Re z > 1/2, got {z}"
        )));
    }
    if depth == 0 {
        return Err(Error::Domain("Möbius depth must be at least 1".into()));
    }
    if z == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    let mut sum = ComplexKahanSum::new();
    let mut last_term = 0.0;
    for n in 1..=depth {
        let mu = primes::mobius(n)?;
        if mu == 0 {
            continue;
        }
        let term = log_zeta(z * n as f64, tol)? * (mu as f64 / n as f64);
        last_term = term.norm();
        sum.add(term);
    }
    Ok(MobiusEstimate {
        value: sum.value(),
        last_term,
    })
}

/// R(z) ≈ Σ_{k=2}^{kmax} P(kz)/k with each P from Möbius inversion.
pub fn residual_r(z: ComplexValue, kmax: u64) -> Result<ComplexValue> {
    check_finite(z)?;
    if z.re <= 0.5 {
        return Err(Error::Domain(format!("R(z) needs Re z > 1/2, got {z}")));
    }
    if kmax < 2 {
        return Err(Error::Domain(format!(
            "kmax must be at least 2, got {kmax}"
        )));
    }
    let mut sum = ComplexKahanSum::new();
    for k in 2..=kmax {
        let p = prime_zeta_mobius(z * k as f64, DEFAULT_MOBIUS_DEPTH, INTERNAL_TOL)?;
        sum.add(p.value / k as f64);
    }
    Ok(sum.value())
}

/// Smallest kmax whose omitted R terms are below 2^{−60}.
fn residual_kmax(z: Complex64) -> u64 {
    ((60.0 / z.re).ceil() as u64 + 1).max(2)
}

/// |log ζ(z) − P(z) − R(z)| for Re z > 1.
pub fn log_zeta_split_check(z: ComplexValue) -> Result<f64> {
    check_finite(z)?;
    if z.re <= 1.0 {
        return Err(Error::Domain(format!(
            "log-split check needs Re z > 1, got {z}"
        )));
    }
    let log = log_zeta(z, INTERNAL_TOL)?;
    let p = prime_zeta_mobius(z, DEFAULT_MOBIUS_DEPTH, INTERNAL_TOL)?.value;
    let r = residual_r(z, residual_kmax(z))?;
    Ok((log - p - r).norm())
}

/// Σ_{k=2}^{kmax} (ζ(k) − 1)/k, which tends to 1 − γ.
pub fn euler_gamma_identity(kmax: u64) -> Result<f64> {
    if kmax < 2 {
        return Err(Error::Domain(format!(
            "kmax must be at least 2, got {kmax}"
        )));
    }
    let mut sum = KahanSum::new();
    for k in 2..=kmax {
        let zm1 = zeta_minus_one_em(Complex64::new(k as f64, 0.0))?;
        sum.add(zm1.re / k as f64);
    }
    Ok(sum.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArtinHasse {
    /// exp(P(z)) from the prime sum plus its integral tail.
    pub lhs: ComplexValue,
    /// ∏_{n ≤ depth} ζ(nz)^{μ(n)/n}.
    pub rhs: ComplexValue,
    pub defect: f64,
}

/// Compares exp(P(z)) with ∏_{n ≤ depth} ζ(nz)^{μ(n)/n} for Re z > 1.
pub fn artin_hasse_check(z: ComplexValue, depth: u64, table: &PrimeTable) -> Result<ArtinHasse> {
    check_finite(z)?;
    if z.re <= 1.0 {
        return Err(Error::Domain(format!(
            "Artin–Hasse check needs Re z > 1, got {z}"
        )));
    }
    let direct = prime_zeta_direct(z, table)? + prime_tail_estimate(z, table.limit())?;
    let lhs = direct.exp();
    let rhs = prime_zeta_mobius(z, depth, INTERNAL_TOL)?.value.exp();
    Ok(ArtinHasse {
        lhs,
        rhs,
        defect: (lhs - rhs).norm(),
    })
}

/// Exact coefficient of P(mz) once every log ζ(qz)/q term of the
/// inclusion–exclusion expansion is itself expanded as Σ_k P(kqz)/k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionCoefficient {
    pub m: u64,
    pub value: BigRational,
}

/// c_m = (1/m) Σ_{q | m squarefree} (−1)^{ω(q)}, in exact rational arithmetic.
pub fn expansion_coefficient(m: u64) -> Result<ExpansionCoefficient> {
    let signed: i64 = primes::squarefree_divisor_signs(m)?
        .iter()
        .map(|&(_, s)| s as i64)
        .sum();
    Ok(ExpansionCoefficient {
        m,
        value: BigRational::new(BigInt::from(signed), BigInt::from(m)),
    })
}

/// Products of at most `depth` distinct primes from `primes`, with sign
/// (−1)^{#factors}, in lexicographic order of the prime index tuples.
fn signed_prime_products(primes: &[u64], depth: usize) -> Result<Vec<(u64, i8)>> {
    fn extend(
        primes: &[u64],
        start: usize,
        q: u64,
        sign: i8,
        left: usize,
        out: &mut Vec<(u64, i8)>,
    ) -> Result<()> {
        if left == 0 {
            return Ok(());
        }
        for (i, &p) in primes.iter().enumerate().skip(start) {
            let next = q.checked_mul(p).ok_or(Error::Overflow("prime product"))?;
            if out.len() >= MAX_INCLUSION_EXCLUSION_TERMS {
                return Err(Error::Resource(format!(
                    "more than {MAX_INCLUSION_EXCLUSION_TERMS} prime products"
                )));
            }
            out.push((next, -sign));
            extend(primes, i + 1, next, -sign, left - 1, out)?;
        }
        Ok(())
    }
    let mut out = vec![(1, 1)];
    extend(primes, 0, 1, 1, depth, &mut out)?;
    Ok(out)
}

/// Truncated inclusion–exclusion expansion of P(z): the sum over squarefree
/// q built from at most `depth` primes ≤ `prime_bound` of
/// (−1)^{ω(q)}/q · log ζ(qz).
pub fn inclusion_exclusion_p(
    z: ComplexValue,
    prime_bound: u64,
    depth: u64,
) -> Result<ComplexValue> {
    check_finite(z)?;
    if z.re <= 0.5 {
        return Err(Error::Domain(format!(
            "inclusion–exclusion needs Re z > 1/2, got {z}"
        )));
    }
    if z == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    let primes = if prime_bound >= 2 {
        primes::sieve(prime_bound)?.primes().to_vec()
    } else {
        Vec::new()
    };
    let products = signed_prime_products(&primes, depth as usize)?;
    let terms = par::try_map_ordered(&products, |&(q, sign)| -> Result<Complex64> {
        Ok(log_zeta(z * q as f64, INTERNAL_TOL)? * (sign as f64 / q as f64))
    })?;
    Ok(terms.into_iter().collect::<ComplexKahanSum>().value())
}

fn check_strip(z: Complex64) -> Result<()> {
    check_finite(z)?;
    if !(z.re > 0.5 && z.re < 1.0) {
        return Err(Error::Domain(format!(
            "counterterm regularization needs 1/2 < Re z < 1, got {z}"
        )));
    }
    Ok(())
}

/// ∫_2^n dt/(t ln t)^z, integrated in u = ln t.
pub fn counterterm_integral(z: ComplexValue, n: u64) -> Result<ComplexValue> {
    check_finite(z)?;
    if n < 2 {
        return Err(Error::Domain(format!(
            "counterterm upper limit must be at least 2, got {n}"
        )));
    }
    let one_minus = Complex64::new(1.0, 0.0) - z;
    integrate(
        |u| (one_minus * u - z * u.ln()).exp(),
        std::f64::consts::LN_2,
        (n as f64).ln(),
        COUNTERTERM_QUAD_TOL,
    )
}

/// P̂_n(z) = P_n(z) − ∫_2^n dt/(t ln t)^z with P_n over the first `n` primes.
pub fn prime_zeta_regularized_first(
    z: ComplexValue,
    n: usize,
    table: &PrimeTable,
) -> Result<ComplexValue> {
    check_strip(z)?;
    if n < 2 {
        return Err(Error::Domain(format!("need at least 2 primes, got {n}")));
    }
    let partial = prime_power_sum(z, table.first(n)?);
    Ok(partial - counterterm_integral(z, n as u64)?)
}

/// P̂_n(z) with n = every prime in `table`; requires `table.limit() >= 10`.
pub fn prime_zeta_regularized(z: ComplexValue, table: &PrimeTable) -> Result<ComplexValue> {
    if table.limit() < 10 {
        return Err(Error::Domain(format!(
            "table limit must be at least 10, got {}",
            table.limit()
        )));
    }
    prime_zeta_regularized_first(z, table.len(), table)
}

/// log(1/(1 − z)), the asymptotic reference reported next to P̂ and dipole traces.
pub fn phat_reference(z: ComplexValue) -> Result<ComplexValue> {
    if z == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole);
    }
    Ok(-(Complex64::new(1.0, 0.0) - z).ln())
}

fn check_increasing(counts: &[u64]) -> Result<()> {
    if counts.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain(
            "checkpoints must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// P̂_n(z) at each prime count in `counts`, each paired with log(1/(1 − z)).
pub fn phat_scan(z: ComplexValue, counts: &[u64]) -> Result<SeriesTrace> {
    check_strip(z)?;
    check_increasing(counts)?;
    let mut trace = SeriesTrace::new("phat");
    let Some(&max) = counts.last() else {
        return Ok(trace);
    };
    if counts[0] < 2 {
        return Err(Error::Domain(
            "need at least 2 primes per checkpoint".into(),
        ));
    }
    let table = primes::sieve_first(max)?;
    let primes = table.first(max as usize)?;
    let reference = phat_reference(z)?;
    let integrals = par::try_map_ordered(counts, |&n| counterterm_integral(z, n))?;

    let mut partial = ComplexKahanSum::new();
    let mut next = 0usize;
    for (i, &p) in primes.iter().enumerate() {
        partial.add(pow_neg((p as f64).ln(), z));
        if (i + 1) as u64 == counts[next] {
            trace.push(
                counts[next],
                partial.value() - integrals[next],
                Some(reference),
            )?;
            next += 1;
        }
    }
    Ok(trace)
}
