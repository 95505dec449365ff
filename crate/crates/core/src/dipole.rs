//! The dipole cancellation construction for partial prime sums
//! P_k(z) = Σ_{j ≤ k} p_j^{−z}.
//!
//! Consecutive partial sums are paired by weights α_k through
//! (1 − α_k) P_k + α_{k+1} P_{k+1} = 0. That fixes α_{k+1} from α_k but not
//! α_1, which is a free seed here. Summing the relation over k telescopes to
//! α_1 P_1 = Σ_{k<n} P_k + α_n P_n. The closed form α_k = −P_k p_{k+1}^z is
//! evaluated separately and its residuals against the pairing relation are
//! recorded; it does not satisfy the relation exactly.

use num_complex::Complex64;
use serde::Serialize;

use crate::fit::least_squares;
use crate::prime_zeta::phat_reference;
use crate::primes::PrimeTable;
use crate::sum::{ComplexKahanSum, KahanSum};
use crate::trace::SeriesTrace;
use crate::zeta::{check_finite, pow_neg};
use crate::{ComplexValue, Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DipoleSequence {
    pub z: ComplexValue,
    /// (k, α_k) for contiguous k starting at 1.
    pub alphas: Vec<(u64, ComplexValue)>,
    /// (k, (1 − α_k) P_k + α_{k+1} P_{k+1}); `residuals[i]` pairs `alphas[i]` with its successor.
    pub residuals: Vec<(u64, ComplexValue)>,
}

/// P_1(z), …, P_n(z) over the first `n` primes.
pub fn partial_prime_sums(
    z: ComplexValue,
    n: usize,
    table: &PrimeTable,
) -> Result<Vec<ComplexValue>> {
    check_finite(z)?;
    let primes = table.first(n)?;
    let mut acc = ComplexKahanSum::new();
    Ok(primes
        .iter()
        .map(|&p| {
            acc.add(pow_neg((p as f64).ln(), z));
            acc.value()
        })
        .collect())
}

fn residual(
    alpha_k: Complex64,
    p_k: Complex64,
    alpha_next: Complex64,
    p_next: Complex64,
) -> Complex64 {
    (Complex64::new(1.0, 0.0) - alpha_k) * p_k + alpha_next * p_next
}

/// The closed-form seed −P_1(z)·p_2^z, used as the default α_1.
pub fn default_seed(z: ComplexValue, table: &PrimeTable) -> Result<ComplexValue> {
    let sums = partial_prime_sums(z, 1, table)?;
    Ok(-sums[0] * (z * (table.nth_prime(2)? as f64).ln()).exp())
}

/// Solves α_{k+1} = −(1 − α_k) P_k / P_{k+1} for k = 1..n−1 from `alpha1`.
pub fn solve_alpha_recurrence(
    z: ComplexValue,
    n: usize,
    alpha1: ComplexValue,
    table: &PrimeTable,
) -> Result<DipoleSequence> {
    if n < 2 {
        return Err(Error::Domain(format!(
            "recurrence length must be at least 2, got {n}"
        )));
    }
    check_finite(alpha1)?;
    let sums = partial_prime_sums(z, n, table)?;
    let mut alphas = Vec::with_capacity(n);
    let mut residuals = Vec::with_capacity(n - 1);
    let mut alpha = alpha1;
    alphas.push((1, alpha));
    for k in 1..n {
        let (p_k, p_next) = (sums[k - 1], sums[k]);
        if p_next.norm() == 0.0 {
            return Err(Error::Numeric(format!("P_{}({z}) vanishes", k + 1)));
        }
        let next = -(Complex64::new(1.0, 0.0) - alpha) * p_k / p_next;
        residuals.push((k as u64, residual(alpha, p_k, next, p_next)));
        alphas.push((k as u64 + 1, next));
        alpha = next;
    }
    Ok(DipoleSequence {
        z,
        alphas,
        residuals,
    })
}

/// α_k = −P_k(z)·p_{k+1}^z for k = 1..n, with residuals against the pairing relation.
pub fn closed_form_alpha(z: ComplexValue, n: usize, table: &PrimeTable) -> Result<DipoleSequence> {
    if n < 1 {
        return Err(Error::Domain("closed form needs n >= 1".into()));
    }
    let sums = partial_prime_sums(z, n + 1, table)?;
    let primes = table.first(n + 2)?;
    let alpha_at = |k: usize| -sums[k - 1] * (z * (primes[k] as f64).ln()).exp();
    let all: Vec<Complex64> = (1..=n + 1).map(alpha_at).collect();
    let alphas = (1..=n).map(|k| (k as u64, all[k - 1])).collect();
    let residuals = (1..=n)
        .map(|k| (k as u64, residual(all[k - 1], sums[k - 1], all[k], sums[k])))
        .collect();
    Ok(DipoleSequence {
        z,
        alphas,
        residuals,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Telescoping {
    /// |α_1 P_1 − (Σ_{k<n} P_k + α_n P_n)|
    pub defect: f64,
    /// |α_1 P_1| + Σ_{k<n} |P_k| + |α_n P_n|
    pub scale: f64,
}

impl Telescoping {
    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.defect
        } else {
            self.defect / self.scale
        }
    }
}

/// Checks the telescoped form α_1 P_1 = Σ_{k<n} P_k + α_n P_n on `seq`.
pub fn telescoping_check(seq: &DipoleSequence, table: &PrimeTable) -> Result<Telescoping> {
    let (Some(&(1, alpha1)), Some(&(n, alpha_n))) = (seq.alphas.first(), seq.alphas.last()) else {
        return Err(Error::Domain("sequence must start at k = 1".into()));
    };
    let sums = partial_prime_sums(seq.z, n as usize, table)?;
    let head = &sums[..n as usize - 1];
    let lhs = alpha1 * sums[0];
    let tail = alpha_n * sums[n as usize - 1];
    let rhs = head.iter().copied().collect::<ComplexKahanSum>().value() + tail;
    let scale =
        lhs.norm() + head.iter().map(|p| p.norm()).collect::<KahanSum>().value() + tail.norm();
    Ok(Telescoping {
        defect: (lhs - rhs).norm(),
        scale,
    })
}

/// 2^z · (Σ_{k=1}^{n−1} P_k(z) − P_n(z)² · p_{n+1}^z).
pub fn dipole_regularized_p(z: ComplexValue, n: usize, table: &PrimeTable) -> Result<ComplexValue> {
    let trace = dipole_scan(z, &[n as u64], table)?;
    Ok(trace.checkpoints()[0].value)
}

/// Evaluates the dipole-regularized P at each `n` in `limits`, with
/// log(1/(1 − z)) as the reference when z ≠ 1.
pub fn dipole_scan(z: ComplexValue, limits: &[u64], table: &PrimeTable) -> Result<SeriesTrace> {
    check_finite(z)?;
    if limits.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("limits must be strictly increasing".into()));
    }
    let mut trace = SeriesTrace::new("dipole");
    let Some(&max) = limits.last() else {
        return Ok(trace);
    };
    if limits[0] < 2 {
        return Err(Error::Domain("dipole limit must be at least 2".into()));
    }
    let max = max as usize;
    let primes = table.first(max + 1)?;
    let sums = partial_prime_sums(z, max, table)?;
    let reference = phat_reference(z).ok();
    let scale = (z * std::f64::consts::LN_2).exp();

    let mut head = ComplexKahanSum::new();
    let mut next = 0usize;
    for n in 2..=max {
        head.add(sums[n - 2]);
        if n as u64 == limits[next] {
            let p_n = sums[n - 1];
            let weight = (z * (primes[n] as f64).ln()).exp();
            trace.push(
                n as u64,
                scale * (head.value() - p_n * p_n * weight),
                reference,
            )?;
            next += 1;
        }
    }
    Ok(trace)
}

/// Slope of ln|value| against ln n over the trace, the growth exponent of a
/// scan. `None` with fewer than two usable checkpoints.
pub fn growth_exponent(trace: &SeriesTrace) -> Option<f64> {
    let (xs, ys): (Vec<f64>, Vec<f64>) = trace
        .checkpoints()
        .iter()
        .filter(|c| c.value.norm() > 0.0)
        .map(|c| ((c.n as f64).ln(), c.value.norm().ln()))
        .unzip();
    least_squares(&xs, &ys).ok().map(|f| f.slope)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn recurrence_two_terms() {
        let t = sieve(100).unwrap();
        let seq = solve_alpha_recurrence(c(2.0), 2, c(0.0), &t).unwrap();
        assert!((seq.alphas[1].1.re + 9.0 / 13.0).abs() < 1e-15);
        let seq = solve_alpha_recurrence(c(2.0), 2, c(1.0), &t).unwrap();
        assert_eq!(seq.alphas[1].1, c(0.0));
    }

    #[test]
    fn recurrence_residuals_are_rounding_noise() {
        let t = sieve(100).unwrap();
        let seq = solve_alpha_recurrence(c(2.0), 5, c(0.0), &t).unwrap();
        assert_eq!(seq.alphas.len(), 5);
        assert_eq!(seq.residuals.len(), 4);
        assert!(seq.residuals.iter().all(|(_, r)| r.norm() < 1e-14));
        assert!(solve_alpha_recurrence(c(2.0), 1, c(0.0), &t).is_err());
    }

    #[test]
    fn telescoping_defects() {
        let t = sieve(1000).unwrap();
        let seq =
            solve_alpha_recurrence(c(2.0), 10, default_seed(c(2.0), &t).unwrap(), &t).unwrap();
        assert!(telescoping_check(&seq, &t).unwrap().defect < 1e-12);
        let seq =
            solve_alpha_recurrence(c(0.75), 50, default_seed(c(0.75), &t).unwrap(), &t).unwrap();
        assert!(telescoping_check(&seq, &t).unwrap().defect < 1e-10);
        let closed = closed_form_alpha(c(2.0), 10, &t).unwrap();
        assert!(telescoping_check(&closed, &t).unwrap().defect > 1e-6);
    }

    #[test]
    fn closed_form_values() {
        let t = sieve(100).unwrap();
        let seq = closed_form_alpha(c(2.0), 3, &t).unwrap();
        assert!((seq.alphas[0].1.re + 9.0 / 4.0).abs() < 1e-15);
        let r1 = 13.0 / 16.0 - 4225.0 / 1296.0;
        assert!((seq.residuals[0].1.re - r1).abs() < 1e-14);
        let seq0 = closed_form_alpha(c(0.0), 6, &t).unwrap();
        for (k, a) in &seq0.alphas {
            assert!((a.re + *k as f64).abs() < 1e-15);
        }
        assert_eq!(default_seed(c(2.0), &t).unwrap(), seq.alphas[0].1);
    }

    #[test]
    fn regularized_small_cases() {
        let t = sieve(100).unwrap();
        // P_1 = 1/4, P_2 = 13/36, p_3^2 = 25.
        let v = dipole_regularized_p(c(2.0), 2, &t).unwrap();
        assert!((v.re - 4.0 * (0.25 - 4225.0 / 1296.0)).abs() < 1e-14);
        // z = 0: P_k = k and p^0 = 1.
        assert_eq!(dipole_regularized_p(c(0.0), 2, &t).unwrap(), c(-3.0));
    }

    #[test]
    fn scan_shapes_and_consistency() {
        let t = sieve(10_000).unwrap();
        let tr = dipole_scan(c(0.75), &[10, 100, 1000], &t).unwrap();
        assert_eq!(tr.len(), 3);
        assert_eq!(
            tr.checkpoints()[2].value,
            dipole_regularized_p(c(0.75), 1000, &t).unwrap()
        );
        assert!((tr.checkpoints()[0].reference.unwrap().re - 4f64.ln()).abs() < 1e-15);
        assert_eq!(dipole_scan(c(2.0), &[5], &t).unwrap().len(), 1);
        assert!(dipole_scan(c(2.0), &[], &t).unwrap().is_empty());
        assert!(dipole_scan(c(2.0), &[5, 5], &t).is_err());
        assert!(growth_exponent(&tr).unwrap() > 0.0);
    }
}
