use crate::sum::KahanSum;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub residual_rms: f64,
}

/// Ordinary least squares y ≈ slope·x + intercept.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<LineFit> {
    if xs.len() != ys.len() {
        return Err(Error::Domain("abscissa and ordinate lengths differ".into()));
    }
    if xs.len() < 2 {
        return Err(Error::Domain(format!(
            "need at least 2 points, got {}",
            xs.len()
        )));
    }
    let n = xs.len() as f64;
    let mean_x = xs.iter().copied().collect::<KahanSum>().value() / n;
    let mean_y = ys.iter().copied().collect::<KahanSum>().value() / n;
    let sxx = xs
        .iter()
        .map(|x| (x - mean_x).powi(2))
        .collect::<KahanSum>()
        .value();
    let sxy = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .collect::<KahanSum>()
        .value();
    if !(sxx > f64::EPSILON * mean_x.abs().max(1.0)) {
        return Err(Error::Numeric("degenerate abscissae".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - slope * x - intercept).powi(2))
        .collect::<KahanSum>()
        .value();
    Ok(LineFit {
        slope,
        intercept,
        residual_rms: (ss / n).sqrt(),
    })
}
