//! Power-law exponent estimates for series such as `dK` against `n`.

use crate::error::{Error, Result};

pub const MIN_POINTS: usize = 4;

/// Least-squares slope of `log|value|` against `log n`.
///
/// Signs are ignored, so a negative series fits like its magnitude; a zero
/// or non-finite value is rejected.
pub fn growth_fit(series: &[(f64, f64)]) -> Result<f64> {
    if series.len() < MIN_POINTS {
        return Err(Error::Parameter(format!(
            "growth fit needs at least {MIN_POINTS} points, got {}",
            series.len()
        )));
    }
    let mut pts = Vec::with_capacity(series.len());
    for &(n, v) in series {
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::Parameter(format!("order must be positive, got {n}")));
        }
        if !(v.abs() > 0.0 && v.is_finite()) {
            return Err(Error::Parameter(format!(
                "magnitude must be positive, got {v} at n = {n}"
            )));
        }
        pts.push((n.ln(), v.abs().ln()));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::Parameter(
            "growth fit needs at least two distinct orders".into(),
        ));
    }
    Ok(sxy / sxx)
}
