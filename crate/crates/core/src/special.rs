//! Elementary complex helpers: accurate logarithms near 1, the exponential
//! integral E1, and an adaptive Gauss–Kronrod rule.

use num_complex::Complex64;

use crate::{Error, Result};

/// −ln(1 − w), accurate for small |w|.
pub fn neg_log1m(w: Complex64) -> Complex64 {
    if w.norm() < 1e-2 {
        // w + w²/2 + w³/3 + ...
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = w;
        for k in 1..=40 {
            let term = pow / k as f64;
            sum += term;
            if term.norm() <= 1e-18 * sum.norm() {
                break;
            }
            pow *= w;
        }
        sum
    } else {
        -(Complex64::new(1.0, 0.0) - w).ln()
    }
}

/// ln(1 + w), accurate for small |w|.
pub fn ln_1p(w: Complex64) -> Complex64 {
    -neg_log1m(-w)
}

/// Exponential integral E1(w) = ∫_1^∞ e^{−wt}/t dt for Re w > 0.
pub fn expint_e1(w: Complex64) -> Result<Complex64> {
    if !(w.re > 0.0) || !w.is_finite() {
        return Err(Error::Domain(format!("E1 requires Re w > 0, got {w}")));
    }
    const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
    if w.norm() < 1.0 {
        // −γ − ln w − Σ (−w)^k / (k·k!)
        let mut sum = Complex64::new(0.0, 0.0);
        let mut pow = Complex64::new(1.0, 0.0);
        for k in 1..=60 {
            pow *= -w / k as f64;
            let term = pow / k as f64;
            sum += term;
            if term.norm() < 1e-17 {
                break;
            }
        }
        return Ok(-EULER_GAMMA - w.ln() - sum);
    }
    // Continued fraction, modified Lentz.
    let tiny = 1e-300;
    let one = Complex64::new(1.0, 0.0);
    let mut b = w + one;
    let mut c = Complex64::new(1.0 / tiny, 0.0);
    let mut d = one / b;
    let mut h = d;
    for i in 1..=10_000 {
        let an = -((i * i) as f64);
        b += 2.0;
        d = one / (d * an + b);
        c = b + an / c;
        let del = c * d;
        h *= del;
        if (del - one).norm() < 1e-16 {
            return Ok(h * (-w).exp());
        }
    }
    Err(Error::Convergence(format!(
        "E1 continued fraction at w = {w}"
    )))
}

const GK_NODES: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const GK_WEIGHTS: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
// Gauss weights for the odd-indexed Kronrod nodes.
const G_WEIGHTS: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(mid);
    let mut kronrod = fc * GK_WEIGHTS[7];
    let mut gauss = fc * G_WEIGHTS[3];
    for i in 0..7 {
        let dx = half * GK_NODES[i];
        let pair = f(mid - dx) + f(mid + dx);
        kronrod += pair * GK_WEIGHTS[i];
        if i % 2 == 1 {
            gauss += pair * G_WEIGHTS[i / 2];
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).norm())
}

/// Globally adaptive 7/15-point Gauss–Kronrod quadrature of a complex-valued
/// integrand on `[a, b]` to absolute error `tol`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    const MAX_INTERVALS: usize = 2000;
    if a == b {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (v, e) = gk15(&f, a, b);
    let mut intervals = vec![(a, b, v, e)];
    loop {
        let total_err: f64 = intervals.iter().map(|iv| iv.3).sum();
        if total_err <= tol {
            let value = intervals
                .iter()
                .map(|iv| iv.2)
                .collect::<crate::sum::ComplexKahanSum>()
                .value();
            if !value.is_finite() {
                return Err(Error::Numeric("non-finite quadrature result".into()));
            }
            return Ok(value);
        }
        if intervals.len() >= MAX_INTERVALS {
            return Err(Error::Numeric(format!(
                "quadrature did not reach tolerance {tol:e} (error estimate {total_err:e})"
            )));
        }
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .unwrap();
        let (lo, hi, _, _) = intervals.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        intervals.push((lo, mid, v1, e1));
        intervals.push((mid, hi, v2, e2));
    }
}
