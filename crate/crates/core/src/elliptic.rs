//! Elliptic curves over Q in long Weierstrass form
//! y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6: local point counts N_p and
//! traces a_p, partial BSD products ∏_{p<x} N_p/p with a log–log rank fit,
//! naive-height rational point counts, and truncated L-function Euler
//! products.
//!
//! Point counts are projective (the point at infinity included) unless
//! [`PointConvention::Affine`] is requested. Bad primes enter the BSD product
//! with their naive count and no local correction.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;
use num_integer::{Integer, Roots};
use serde::{Deserialize, Serialize};

use crate::fit::least_squares;
use crate::par;
use crate::primes::{factorize, PrimeTable};
use crate::special::neg_log1m;
use crate::sum::{ComplexKahanSum, KahanSum};
use crate::trace::SeriesTrace;
use crate::zeta::{check_finite, pow_neg};
use crate::{ComplexValue, Error, Result};

/// Largest prime accepted by [`count_points_mod_p`].
pub const MAX_POINT_COUNT_PRIME: u64 = 1_000_000;

/// Largest height bound accepted by [`count_rational_points`].
pub const MAX_HEIGHT_BOUND: u64 = 10_000;

/// Checkpoints per decade in BSD traces, starting at x = 10.
pub const DEFAULT_CHECKPOINTS_PER_DECADE: u32 = 4;

const FIXTURES: &str = include_str!("../fixtures/curves.txt");

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EllipticCurve {
    label: String,
    /// [a1, a2, a3, a4, a6]
    coeffs: [i64; 5],
    reference_rank: Option<u32>,
    discriminant: i128,
}

impl EllipticCurve {
    /// Builds a curve, rejecting singular coefficient sets.
    pub fn new(
        label: impl Into<String>,
        coeffs: [i64; 5],
        reference_rank: Option<u32>,
    ) -> Result<Self> {
        let label = label.into();
        let discriminant = discriminant_of(coeffs)?;
        if discriminant == 0 {
            return Err(Error::SingularCurve(label));
        }
        Ok(Self {
            label,
            coeffs,
            reference_rank,
            discriminant,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coeffs(&self) -> [i64; 5] {
        self.coeffs
    }

    /// Rank recorded with the curve data; never computed here.
    pub fn reference_rank(&self) -> Option<u32> {
        self.reference_rank
    }

    pub fn discriminant(&self) -> i128 {
        self.discriminant
    }

    /// (b2, b4, b6)
    fn b_invariants(&self) -> (i128, i128, i128) {
        let [a1, a2, a3, a4, a6] = self.coeffs.map(i128::from);
        (a1 * a1 + 4 * a2, 2 * a4 + a1 * a3, a3 * a3 + 4 * a6)
    }

    pub fn is_good_prime(&self, p: u64) -> bool {
        self.discriminant % p as i128 != 0
    }
}

impl fmt::Display for EllipticCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a1, a2, a3, a4, a6] = self.coeffs;
        write!(f, "{} [{a1},{a2},{a3},{a4},{a6}]", self.label)
    }
}

/// Δ from the b-invariants, in checked 128-bit arithmetic.
pub fn discriminant_of(coeffs: [i64; 5]) -> Result<i128> {
    const OP: &str = "discriminant";
    let [a1, a2, a3, a4, a6] = coeffs.map(i128::from);
    let ck = |v: Option<i128>| v.ok_or(Error::Overflow(OP));
    let b2 = ck(ck(a1.checked_mul(a1))?.checked_add(ck(a2.checked_mul(4))?))?;
    let b4 = ck(ck(a4.checked_mul(2))?.checked_add(ck(a1.checked_mul(a3))?))?;
    let b6 = ck(ck(a3.checked_mul(a3))?.checked_add(ck(a6.checked_mul(4))?))?;
    let b8 = ck(ck(b2.checked_mul(b6))?.checked_sub(ck(b4.checked_mul(b4))?))? / 4;
    let t1 = ck(ck(b2.checked_mul(b2))?.checked_mul(b8))?;
    let t2 = ck(ck(ck(b4.checked_mul(b4))?.checked_mul(b4))?.checked_mul(8))?;
    let t3 = ck(ck(b6.checked_mul(b6))?.checked_mul(27))?;
    let t4 = ck(ck(ck(b2.checked_mul(b4))?.checked_mul(b6))?.checked_mul(9))?;
    ck(ck(ck((-t1).checked_sub(t2))?.checked_sub(t3))?.checked_add(t4))
}

pub fn discriminant(curve: &EllipticCurve) -> i128 {
    curve.discriminant
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalCurveData {
    pub p: u64,
    /// Projective point count over F_p.
    #[serde(rename = "Np")]
    pub n_p: u64,
    #[serde(rename = "ap")]
    pub a_p: i64,
    pub good: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PointConvention {
    #[default]
    Projective,
    /// Drops the point at infinity.
    Affine,
}

impl PointConvention {
    pub fn count(self, data: &LocalCurveData) -> u64 {
        match self {
            PointConvention::Projective => data.n_p,
            PointConvention::Affine => data.n_p - 1,
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && matches!(factorize(p).as_deref(), Ok([(_, 1)]))
}

fn local_data(curve: &EllipticCurve, p: u64, n_p: u64) -> LocalCurveData {
    LocalCurveData {
        p,
        n_p,
        a_p: p as i64 + 1 - n_p as i64,
        good: curve.is_good_prime(p),
    }
}

/// N_p by testing every (x, y) ∈ F_p². O(p²); a reference for small p.
pub fn count_points_enumeration(curve: &EllipticCurve, p: u64) -> Result<LocalCurveData> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let m = p as i128;
    let [a1, a2, a3, a4, a6] = curve.coeffs.map(|a| (a as i128).rem_euclid(m));
    let mut affine = 0u64;
    for x in 0..m {
        let rhs = (((x + a2) * x % m + a4) * x % m + a6) % m;
        for y in 0..m {
            let lhs = (y * y + a1 * x % m * y + a3 * y) % m;
            if lhs == rhs {
                affine += 1;
            }
        }
    }
    Ok(local_data(curve, p, affine + 1))
}

/// N_p over F_p.
///
/// For odd p, completing the square turns the curve into
/// (2y + a1x + a3)² = 4x³ + b2x² + 2b4x + b6 =: D(x), so each x contributes
/// 1 + χ(D(x)) points, χ the quadratic character. D is stepped by finite
/// differences and χ read from a table of squares: O(p) time and memory.
/// p = 2 is enumerated directly.
pub fn count_points_mod_p(curve: &EllipticCurve, p: u64) -> Result<LocalCurveData> {
    if p > MAX_POINT_COUNT_PRIME {
        return Err(Error::Resource(format!(
            "p = {p} exceeds point-count bound {MAX_POINT_COUNT_PRIME}"
        )));
    }
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    if p == 2 {
        return count_points_enumeration(curve, p);
    }
    Ok(local_data(curve, p, count_points_odd(curve, p)))
}

fn count_points_odd(curve: &EllipticCurve, p: u64) -> u64 {
    let m = p as i128;
    let (b2, b4, b6) = curve.b_invariants();
    let red = |v: i128| v.rem_euclid(m) as u64;

    let mut is_square = vec![false; p as usize];
    let mut sq = 0u64;
    for y in 0..=(p / 2) {
        is_square[sq as usize] = true;
        // (y + 1)² = y² + 2y + 1
        sq = (sq + 2 * y + 1) % p;
    }

    let add = |a: u64, b: u64| {
        let s = a + b;
        if s >= p {
            s - p
        } else {
            s
        }
    };
    let mut d = red(b6);
    let mut d1 = red(4 + b2 + 2 * b4);
    let mut d2 = red(24 + 2 * b2);
    let d3 = red(24);
    let mut affine = 0u64;
    for _ in 0..p {
        affine += if d == 0 {
            1
        } else if is_square[d as usize] {
            2
        } else {
            0
        };
        d = add(d, d1);
        d1 = add(d1, d2);
        d2 = add(d2, d3);
    }
    affine + 1
}

/// Local data for every prime in `primes`, computed in parallel, in input order.
pub fn local_data_for(curve: &EllipticCurve, primes: &[u64]) -> Result<Vec<LocalCurveData>> {
    par::try_map_ordered(primes, |&p| count_points_mod_p(curve, p))
}

/// Good primes in `data` that violate a_p² ≤ 4p.
pub fn hasse_violations(data: &[LocalCurveData]) -> Vec<LocalCurveData> {
    data.iter()
        .filter(|d| d.good && (d.a_p as i128).pow(2) > 4 * d.p as i128)
        .copied()
        .collect()
}

/// Checkpoints 10^{j/per_decade} for j ≥ per_decade, below `x`, then `x` itself.
pub fn bsd_checkpoints(x: u64, per_decade: u32) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    let per_decade = per_decade.max(1);
    let mut j = per_decade;
    loop {
        let c = 10f64.powf(j as f64 / per_decade as f64).round() as u64;
        if c >= x {
            break;
        }
        if out.last() != Some(&c) {
            out.push(c);
        }
        j += 1;
    }
    if x >= 3 {
        out.push(x);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BsdProduct {
    /// Σ_{p<x} log(N_p/p)
    pub log_product: f64,
    pub trace: SeriesTrace,
}

/// log ∏_{p<x} N_p/p with a checkpoint trace from [`bsd_checkpoints`].
pub fn bsd_product(
    curve: &EllipticCurve,
    x: u64,
    table: &PrimeTable,
    convention: PointConvention,
) -> Result<BsdProduct> {
    bsd_product_with_grid(curve, x, table, convention, DEFAULT_CHECKPOINTS_PER_DECADE)
}

pub fn bsd_product_with_grid(
    curve: &EllipticCurve,
    x: u64,
    table: &PrimeTable,
    convention: PointConvention,
    per_decade: u32,
) -> Result<BsdProduct> {
    if table.limit() + 1 < x {
        return Err(Error::Range(format!(
            "prime table limit {} below x = {x}",
            table.limit()
        )));
    }
    let primes = table.primes_below(x);
    let data = local_data_for(curve, primes)?;
    let checkpoints = bsd_checkpoints(x, per_decade);

    let mut trace = SeriesTrace::new(format!("bsd:{}", curve.label));
    let mut sum = KahanSum::new();
    let mut next = 0usize;
    let mut record = |upto: u64, sum: &KahanSum, next: &mut usize| -> Result<()> {
        while *next < checkpoints.len() && checkpoints[*next] <= upto {
            trace.push(checkpoints[*next], Complex64::new(sum.value(), 0.0), None)?;
            *next += 1;
        }
        Ok(())
    };
    for d in &data {
        // Checkpoints at or below p cover primes strictly less than them.
        record(d.p, &sum, &mut next)?;
        let count = convention.count(d);
        if count == 0 {
            return Err(Error::Numeric(format!(
                "zero point count at p = {} for {}",
                d.p, curve.label
            )));
        }
        sum.add((count as f64 / d.p as f64).ln());
    }
    record(u64::MAX, &sum, &mut next)?;
    Ok(BsdProduct {
        log_product: sum.value(),
        trace,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BsdFit {
    /// Fitted exponent r in log ∏ N_p/p ≈ r·log log x + log C′.
    pub r_hat: f64,
    pub log_c: f64,
    pub residual_rms: f64,
    pub x_checkpoints: Vec<u64>,
}

/// Least-squares fit of the trace values against log log x.
pub fn fit_rank(trace: &SeriesTrace) -> Result<BsdFit> {
    let cps = trace.checkpoints();
    if cps.len() < 3 {
        return Err(Error::Domain(format!(
            "rank fit needs at least 3 checkpoints, got {}",
            cps.len()
        )));
    }
    if let Some(c) = cps.iter().find(|c| c.n < 10) {
        return Err(Error::Domain(format!(
            "rank fit needs checkpoints x >= 10, got {}",
            c.n
        )));
    }
    let xs: Vec<f64> = cps.iter().map(|c| (c.n as f64).ln().ln()).collect();
    let ys: Vec<f64> = cps.iter().map(|c| c.value.re).collect();
    let line = least_squares(&xs, &ys)?;
    Ok(BsdFit {
        r_hat: line.slope,
        log_c: line.intercept,
        residual_rms: line.residual_rms,
        x_checkpoints: cps.iter().map(|c| c.n).collect(),
    })
}

/// Whether n·b is a perfect square, i.e. n/b³ is a rational square.
fn is_square_i128(v: i128) -> bool {
    v >= 0 && {
        let r = v.sqrt();
        r * r == v
    }
}

/// Affine rational points with x = a/b in lowest terms, |a| ≤ `height`,
/// 1 ≤ b ≤ `height`.
///
/// For each x the quadratic y² + (a1x + a3)y − f(x) = 0 has discriminant
/// D(x) = 4x³ + b2x² + 2b4x + b6 = num/b³; it has two rational roots when
/// num·b is a nonzero square and one when it is zero.
pub fn count_rational_points(curve: &EllipticCurve, height: u64) -> Result<u64> {
    if height == 0 {
        return Err(Error::Domain("height bound must be at least 1".into()));
    }
    if height > MAX_HEIGHT_BOUND {
        return Err(Error::Resource(format!(
            "height bound {height} exceeds {MAX_HEIGHT_BOUND}"
        )));
    }
    let (b2, b4, b6) = curve.b_invariants();
    let h = height as i128;
    let per_denominator = par::map_range(1, height + 1, |b| {
        let b = b as i128;
        let (bb, bbb) = (b * b, b * b * b);
        let mut count = 0u64;
        for a in -h..=h {
            if a.gcd(&b) != 1 {
                continue;
            }
            let num = 4 * a * a * a + b2 * a * a * b + 2 * b4 * a * bb + b6 * bbb;
            let v = num * b;
            if v == 0 {
                count += 1;
            } else if is_square_i128(v) {
                count += 2;
            }
        }
        count
    });
    Ok(per_denominator.into_iter().sum())
}

/// ∏_{p<x, p∤Δ} (1 − a_p p^{−z} + p^{1−2z})^{−1} for Re z > 3/2.
pub fn l_euler_product(
    curve: &EllipticCurve,
    z: ComplexValue,
    x: u64,
    table: &PrimeTable,
) -> Result<ComplexValue> {
    check_finite(z)?;
    if z.re <= 1.5 {
        return Err(Error::Domain(format!(
            "L-function Euler product needs Re z > 3/2, got {z}"
        )));
    }
    if table.limit() + 1 < x {
        return Err(Error::Range(format!(
            "prime table limit {} below x = {x}",
            table.limit()
        )));
    }
    let good: Vec<u64> = table
        .primes_below(x)
        .iter()
        .copied()
        .filter(|&p| curve.is_good_prime(p))
        .collect();
    let data = local_data_for(curve, &good)?;
    let mut log = ComplexKahanSum::new();
    for d in &data {
        let ln_p = (d.p as f64).ln();
        let w = pow_neg(ln_p, z) * d.a_p as f64 - pow_neg(ln_p, 2.0 * z - 1.0);
        if (Complex64::new(1.0, 0.0) - w).norm() == 0.0 {
            return Err(Error::Numeric(format!(
                "local factor vanishes at p = {}",
                d.p
            )));
        }
        log.add(neg_log1m(w));
    }
    Ok(log.value().exp())
}

/// Parses a curve catalog: `label a1 a2 a3 a4 a6 [reference_rank]` per line,
/// `#` to end of line is a comment.
pub fn parse_curve_catalog(text: &str) -> Result<Vec<EllipticCurve>> {
    let mut curves = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if !(6..=7).contains(&fields.len()) {
            return Err(Error::Parse {
                line: line_no,
                msg: format!(
                    "expected `label a1 a2 a3 a4 a6 [rank]`, found {} fields",
                    fields.len()
                ),
            });
        }
        let mut coeffs = [0i64; 5];
        for (slot, tok) in coeffs.iter_mut().zip(&fields[1..6]) {
            *slot = tok.parse().map_err(|e| Error::Parse {
                line: line_no,
                msg: format!("bad coefficient `{tok}`: {e}"),
            })?;
        }
        let rank = fields
            .get(6)
            .map(|tok| {
                tok.parse::<u32>().map_err(|e| Error::Parse {
                    line: line_no,
                    msg: format!("bad rank `{tok}`: {e}"),
                })
            })
            .transpose()?;
        let curve = EllipticCurve::new(fields[0], coeffs, rank).map_err(|e| match e {
            Error::Overflow(_) => Error::Parse {
                line: line_no,
                msg: e.to_string(),
            },
            other => other,
        })?;
        curves.push(curve);
    }
    Ok(curves)
}

pub fn load_curve_catalog(path: impl AsRef<Path>) -> Result<Vec<EllipticCurve>> {
    parse_curve_catalog(&std::fs::read_to_string(path)?)
}

/// The four bundled test curves, of reference ranks 0 through 3.
pub fn fixtures() -> Vec<EllipticCurve> {
    parse_curve_catalog(FIXTURES).expect("bundled fixtures parse")
}

/// The bundled catalog text, in catalog file format.
pub fn fixtures_text() -> &'static str {
    FIXTURES
}

/// Writes local data as CSV with header `p,Np,ap,good`.
pub fn write_local_data<W: Write>(data: &[LocalCurveData], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for d in data {
        w.serialize(d)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_local_data<R: Read>(input: R) -> Result<Vec<LocalCurveData>> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for row in r.deserialize() {
        let d: LocalCurveData = row?;
        if d.a_p != d.p as i64 + 1 - d.n_p as i64 {
            return Err(Error::Parse {
                line: out.len() + 2,
                msg: format!("N_p and a_p inconsistent at p = {}", d.p),
            });
        }
        out.push(d);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primes::sieve;

    fn curve(coeffs: [i64; 5]) -> EllipticCurve {
        EllipticCurve::new("t", coeffs, None).unwrap()
    }

    #[test]
    fn discriminants() {
        assert_eq!(curve([0, 0, 0, -1, 0]).discriminant(), 64);
        assert_eq!(curve([0, 0, 1, -1, 0]).discriminant(), 37);
        assert_eq!(curve([0, 1, 1, -2, 0]).discriminant(), 389);
        assert_eq!(curve([0, 0, 1, -7, 6]).discriminant(), 5077);
        assert!(
            matches!(EllipticCurve::new("cusp", [0; 5], None), Err(Error::SingularCurve(l)) if l == "cusp")
        );
        assert!(matches!(
            discriminant_of([0, 0, 0, i64::MAX, i64::MAX]),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn point_counts_small_primes() {
        let e = curve([0, 0, 0, -1, 0]);
        let d = count_points_mod_p(&e, 5).unwrap();
        assert_eq!((d.n_p, d.a_p, d.good), (8, -2, true));
        // Over F_2: x ∈ {0, 1} both give y = 0.
        let d = count_points_mod_p(&e, 2).unwrap();
        assert_eq!((d.n_p, d.good), (3, false));
        let e37 = curve([0, 0, 1, -1, 0]);
        let d = count_points_mod_p(&e37, 2).unwrap();
        // y² + y = x³ − x has no affine points over F_2 (y² + y = 0 = x³ − x gives 4).
        assert_eq!((d.n_p, d.good), (5, true));
        assert!(matches!(count_points_mod_p(&e, 9), Err(Error::Domain(_))));
        assert!(matches!(
            count_points_mod_p(&e, 1_000_003),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn character_sum_matches_enumeration() {
        let t = sieve(100).unwrap();
        for e in fixtures() {
            for &p in t.primes() {
                assert_eq!(
                    count_points_mod_p(&e, p).unwrap(),
                    count_points_enumeration(&e, p).unwrap(),
                    "{e} p={p}"
                );
            }
        }
    }

    #[test]
    fn checkpoint_grid() {
        assert_eq!(bsd_checkpoints(1000, 1), vec![10, 100, 1000]);
        assert_eq!(bsd_checkpoints(1000, 2), vec![10, 32, 100, 316, 1000]);
        assert_eq!(bsd_checkpoints(150, 1), vec![10, 100, 150]);
        assert_eq!(bsd_checkpoints(2, 4), Vec::<u64>::new());
    }

    #[test]
    fn bsd_small_product() {
        let e = curve([0, 0, 0, -1, 0]);
        let t = sieve(100).unwrap();
        let expect: f64 = [2u64, 3, 5, 7]
            .iter()
            .map(|&p| (count_points_enumeration(&e, p).unwrap().n_p as f64 / p as f64).ln())
            .sum();
        let got = bsd_product(&e, 10, &t, PointConvention::Projective).unwrap();
        assert!((got.log_product - expect).abs() < 1e-15);
        assert_eq!(got.trace.last().unwrap().n, 10);
        let empty = bsd_product(&e, 2, &t, PointConvention::Projective).unwrap();
        assert_eq!(empty.log_product, 0.0);
    }

    #[test]
    fn bsd_trace_values_are_prefix_sums() {
        let e = curve([0, 0, 1, -1, 0]);
        let t = sieve(1000).unwrap();
        let full = bsd_product_with_grid(&e, 1000, &t, PointConvention::Projective, 1).unwrap();
        let at100 = bsd_product_with_grid(&e, 100, &t, PointConvention::Projective, 1).unwrap();
        let cp = full.trace.checkpoints();
        assert_eq!(
            cp.iter().map(|c| c.n).collect::<Vec<_>>(),
            vec![10, 100, 1000]
        );
        assert_eq!(cp[1].value.re, at100.log_product);
        assert_eq!(cp[2].value.re, full.log_product);
    }

    #[test]
    fn affine_convention_shifts_counts() {
        let e = curve([0, 0, 1, -1, 0]);
        let t = sieve(100).unwrap();
        let proj = bsd_product(&e, 100, &t, PointConvention::Projective)
            .unwrap()
            .log_product;
        let aff = bsd_product(&e, 100, &t, PointConvention::Affine)
            .unwrap()
            .log_product;
        assert!(aff < proj);
    }

    #[test]
    fn rank_fit_on_synthetic_lines() {
        let mut tr = SeriesTrace::new("syn");
        for x in [100u64, 1000, 10_000, 100_000] {
            let v = 2.0 * (x as f64).ln().ln() + 0.5;
            tr.push(x, Complex64::new(v, 0.0), None).unwrap();
        }
        let f = fit_rank(&tr).unwrap();
        assert!((f.r_hat - 2.0).abs() < 1e-9);
        assert!((f.log_c - 0.5).abs() < 1e-9);
        let mut flat = SeriesTrace::new("flat");
        for x in [100u64, 1000, 10_000] {
            flat.push(x, Complex64::new(1.25, 0.0), None).unwrap();
        }
        assert!(fit_rank(&flat).unwrap().r_hat.abs() < 1e-12);
        let mut short = SeriesTrace::new("short");
        short.push(100, Complex64::new(0.0, 0.0), None).unwrap();
        assert!(matches!(fit_rank(&short), Err(Error::Domain(_))));
    }

    #[test]
    fn rational_points_small_heights() {
        let e = curve([0, 0, 0, -1, 0]);
        assert_eq!(count_rational_points(&e, 10).unwrap(), 3);
        let e37 = curve([0, 0, 1, -1, 0]);
        // Exhaustive search over x = a/b and y = c/d, checked exactly:
        // c²b³ + a3·c·d·b³ = (a³ − a·b²)·d² for y² + y = x³ − x.
        let mut brute = 0;
        for b in 1i64..=2 {
            for a in -2i64..=2 {
                if a.gcd(&b) != 1 {
                    continue;
                }
                for d in 1i64..=8 {
                    for c in -100i64..=100 {
                        if c.gcd(&d) != 1 {
                            continue;
                        }
                        let (b3, d2) = (b * b * b, d * d);
                        if c * c * b3 + c * d * b3 == (a * a * a - a * b * b) * d2 {
                            brute += 1;
                        }
                    }
                }
            }
        }
        // x ∈ {−1, 0, 1, 2}, two points each.
        assert_eq!(brute, 8);
        assert_eq!(count_rational_points(&e37, 2).unwrap(), 8);
        assert!(matches!(
            count_rational_points(&e, 0),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            count_rational_points(&e, 10_001),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn l_product_small_cases() {
        let e = curve([0, 0, 1, -1, 0]);
        let t = sieve(10_000).unwrap();
        let z = Complex64::new(2.0, 0.0);
        let expect: f64 = [2u64, 3, 5, 7]
            .iter()
            .map(|&p| {
                let ap = count_points_enumeration(&e, p).unwrap().a_p as f64;
                let pf = p as f64;
                1.0 / (1.0 - ap / (pf * pf) + pf / pf.powi(4))
            })
            .product();
        assert!((l_euler_product(&e, z, 10, &t).unwrap().re - expect).abs() < 1e-14);
        assert_eq!(
            l_euler_product(&e, z, 2, &t).unwrap(),
            Complex64::new(1.0, 0.0)
        );
        let d =
            l_euler_product(&e, z, 1000, &t).unwrap() - l_euler_product(&e, z, 10_000, &t).unwrap();
        assert!(d.norm() < 1e-3);
        assert!(matches!(
            l_euler_product(&e, Complex64::new(1.5, 0.0), 10, &t),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn catalog_parsing() {
        let text = "# header\n\n37a1 0 0 1 -1 0 1  # rank one\nplain 0 0 0 -1 0\n";
        let curves = parse_curve_catalog(text).unwrap();
        assert_eq!(curves.len(), 2);
        assert_eq!(curves[0].discriminant(), 37);
        assert_eq!(curves[0].reference_rank(), Some(1));
        assert_eq!(curves[1].reference_rank(), None);
        assert!(
            matches!(parse_curve_catalog("bad 0 0 0 0 0"), Err(Error::SingularCurve(l)) if l == "bad")
        );
        assert!(matches!(
            parse_curve_catalog("ok 0 0 0 -1 0\nx 1 2"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_curve_catalog("x 0 0 q -1 0"),
            Err(Error::Parse { line: 1, .. })
        ));
        let f = fixtures();
        assert_eq!(
            f.iter()
                .map(|c| c.reference_rank().unwrap())
                .collect::<Vec<_>>(),
            vec![0, 1, 2, 3]
        );
    }

    #[test]
    fn local_data_csv() {
        let e = curve([0, 0, 1, -1, 0]);
        let data = local_data_for(&e, &[2, 3, 5, 37]).unwrap();
        let mut buf = Vec::new();
        write_local_data(&data, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("p,Np,ap,good\n2,5,-2,true\n"));
        assert!(text.contains("\n37,"));
        assert!(text.trim_end().ends_with("false"));
        assert_eq!(read_local_data(buf.as_slice()).unwrap(), data);
        assert!(read_local_data("p,Np,ap,good\n5,8,0,true\n".as_bytes()).is_err());
    }
}
