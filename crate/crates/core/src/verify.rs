//! Independent numerical oracles: finite differences on the parameterized
//! Laplacian, and Kemeny's constant from mean first passage times.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, VertexPair};
use crate::linalg::{eig_sym, inverse, Matrix};
use crate::spectral::{self, parameterized_laplacian, Spectrum, ZERO_TOLERANCE};

pub const DEFAULT_STEP: f64 = 1e-6;
/// Number of times the step is halved when eigenvalue matching is ambiguous.
pub const MAX_STEP_HALVINGS: usize = 3;
/// Spread of the per-start-vertex MFPT sums tolerated before failing.
pub const MFPT_SPREAD_TOLERANCE: f64 = 1e-9;

/// Which difference quotient was used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stencil {
    /// `(f(h) - f(-h)) / 2h`
    Central,
    /// `(-3 f(0) + 4 f(h) - f(2h)) / 2h`, used when `t = -h` would make a
    /// weight negative (non-edges, or edges lighter than `h`).
    Forward,
}

fn choose_stencil(g: &Graph, ec: &EdgeSet, h: f64) -> Stencil {
    match parameterized_laplacian(g, ec, -h) {
        Ok(_) => Stencil::Central,
        Err(_) => Stencil::Forward,
    }
}

fn sorted_eigenvalues(g: &Graph, ec: &EdgeSet, t: f64) -> Result<Vec<f64>> {
    Ok(eig_sym(&parameterized_laplacian(g, ec, t)?)?.values)
}

/// Mean of the perturbed eigenvalues occupying the group's sorted slots,
/// provided each of them is nearer to this group than to any other.
fn group_mean_at(
    g: &Graph,
    ec: &EdgeSet,
    s: &Spectrum,
    group: usize,
    t: f64,
) -> Result<Option<f64>> {
    let values = sorted_eigenvalues(g, ec, t)?;
    let grp = &s.groups[group];
    let slots = grp.first_index..grp.first_index + grp.multiplicity();
    for &v in &values[slots.clone()] {
        let own = (v - grp.value).abs();
        let other = s
            .groups
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != group)
            .map(|(_, o)| (v - o.value).abs())
            .fold(f64::INFINITY, f64::min);
        if own + 1e-12 >= other {
            return Ok(None);
        }
    }
    Ok(Some(
        values[slots].iter().sum::<f64>() / grp.multiplicity() as f64,
    ))
}

fn difference(
    stencil: Stencil,
    h: f64,
    f: impl Fn(f64) -> Result<Option<f64>>,
    f0: f64,
) -> Result<Option<f64>> {
    let q = match stencil {
        Stencil::Central => match (f(h)?, f(-h)?) {
            (Some(a), Some(b)) => (a - b) / (2.0 * h),
            _ => return Ok(None),
        },
        Stencil::Forward => match (f(h)?, f(2.0 * h)?) {
            (Some(a), Some(b)) => (-3.0 * f0 + 4.0 * a - b) / (2.0 * h),
            _ => return Ok(None),
        },
    };
    Ok(Some(q))
}

/// Numerical derivative of the mean of eigenvalue group `group` along `ec`.
pub fn fd_eigen_derivative(g: &Graph, ec: &EdgeSet, group: usize, h: f64) -> Result<f64> {
    let s = Spectrum::of(g)?;
    fd_eigen_derivative_with(g, &s, ec, group, h)
}

pub fn fd_eigen_derivative_with(
    g: &Graph,
    s: &Spectrum,
    ec: &EdgeSet,
    group: usize,
    h: f64,
) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Parameter(format!("step size {h} must be positive")));
    }
    if group >= s.groups.len() {
        return Err(Error::Parameter(format!("no eigenvalue group {group}")));
    }
    let mut step = h;
    for _ in 0..=MAX_STEP_HALVINGS {
        let stencil = choose_stencil(g, ec, step);
        let f = |t: f64| group_mean_at(g, ec, s, group, t);
        if let Some(q) = difference(stencil, step, f, s.groups[group].value)? {
            return Ok(q);
        }
        step /= 2.0;
    }
    Err(Error::Oracle(format!(
        "eigenvalue group {group} could not be matched after {MAX_STEP_HALVINGS} step halvings"
    )))
}

fn kemeny_at(g: &Graph, ec: &EdgeSet, t: f64) -> Result<f64> {
    let values = sorted_eigenvalues(g, ec, t)?;
    let zeros = values.iter().filter(|&&v| v < ZERO_TOLERANCE).count();
    if zeros != 1 {
        return Err(Error::Disconnected { components: zeros });
    }
    Ok(values[1..].iter().map(|v| 1.0 / v).sum())
}

/// Numerical derivative of Kemeny's constant along `ec`.
pub fn fd_kemeny_derivative(g: &Graph, ec: &EdgeSet, h: f64) -> Result<f64> {
    if !(h > 0.0) {
        return Err(Error::Parameter(format!("step size {h} must be positive")));
    }
    let stencil = choose_stencil(g, ec, h);
    let f0 = kemeny_at(g, ec, 0.0)?;
    let f = |t: f64| kemeny_at(g, ec, t).map(Some);
    Ok(difference(stencil, h, f, f0)?.expect("kemeny values are always matched"))
}

/// Analytic and numerical derivatives side by side for one pair set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FdReport {
    pub pairs: Vec<VertexPair>,
    pub h: f64,
    pub stencil: Stencil,
    pub eigenvalues: Vec<f64>,
    pub analytic: Vec<f64>,
    pub numeric: Vec<f64>,
    pub analytic_dk: f64,
    pub numeric_dk: f64,
}

/// `|analytic - numeric| <= max(1e-5, 1e-4 |analytic|)`.
pub fn oracle_agrees(analytic: f64, numeric: f64) -> bool {
    (analytic - numeric).abs() <= f64::max(1e-5, 1e-4 * analytic.abs())
}

impl FdReport {
    pub fn agrees(&self) -> bool {
        self.analytic
            .iter()
            .zip(&self.numeric)
            .all(|(a, n)| oracle_agrees(*a, *n))
            && oracle_agrees(self.analytic_dk, self.numeric_dk)
    }

    /// Largest absolute analytic/numeric gap across all groups and `dK`.
    pub fn max_gap(&self) -> f64 {
        self.analytic
            .iter()
            .zip(&self.numeric)
            .map(|(a, n)| (a - n).abs())
            .fold((self.analytic_dk - self.numeric_dk).abs(), f64::max)
    }
}

pub fn fd_report(g: &Graph, ec: &EdgeSet, h: f64) -> Result<FdReport> {
    spectral::require_connected(g)?;
    let s = Spectrum::of(g)?;
    fd_report_with(g, &s, ec, h)
}

pub fn fd_report_with(g: &Graph, s: &Spectrum, ec: &EdgeSet, h: f64) -> Result<FdReport> {
    let mut analytic = Vec::with_capacity(s.groups.len());
    let mut numeric = Vec::with_capacity(s.groups.len());
    for (i, grp) in s.groups.iter().enumerate() {
        analytic.push(spectral::eigenvalue_edge_derivative(g, grp, ec)?);
        numeric.push(fd_eigen_derivative_with(g, s, ec, i, h)?);
    }
    Ok(FdReport {
        pairs: ec.iter().map(|(p, _)| *p).collect(),
        h,
        stencil: choose_stencil(g, ec, h),
        eigenvalues: s.values(),
        analytic,
        numeric,
        analytic_dk: spectral::kemeny_edge_derivative_with(g, s, ec)?,
        numeric_dk: fd_kemeny_derivative(g, ec, h)?,
    })
}

/// Mean first passage times `m[x][y]` of the simple random walk, with
/// `m[x][x] = 0`, from the fundamental matrix `Z = (I - T + 1wᵀ)⁻¹`.
pub fn mean_first_passage_times(g: &Graph) -> Result<Matrix> {
    spectral::require_connected(g)?;
    let n = g.n();
    let d = g.degrees();
    let total: f64 = d.iter().sum();
    let w: Vec<f64> = d.iter().map(|x| x / total).collect();
    let m = Matrix::from_fn(n, |x, y| {
        let eye = if x == y { 1.0 } else { 0.0 };
        eye - g.weight(x, y) / d[x] + w[y]
    });
    let z = inverse(&m)?;
    Ok(Matrix::from_fn(n, |x, y| (z[(y, y)] - z[(x, y)]) / w[y]))
}

/// `Σ_y m[x][y] w_y` for every start vertex `x`.
pub fn kemeny_per_start(g: &Graph) -> Result<Vec<f64>> {
    let m = mean_first_passage_times(g)?;
    let d = g.degrees();
    let total: f64 = d.iter().sum();
    Ok((0..g.n())
        .map(|x| (0..g.n()).map(|y| m[(x, y)] * d[y] / total).sum())
        .collect())
}

/// Kemeny's constant from mean first passage times, checking that the value
/// does not depend on the start vertex.
pub fn kemeny_via_mfpt(g: &Graph) -> Result<f64> {
    let per_start = kemeny_per_start(g)?;
    let lo = per_start.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = per_start.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo > MFPT_SPREAD_TOLERANCE {
        return Err(Error::Oracle(format!(
            "Kemeny sums depend on the start vertex (spread {:e})",
            hi - lo
        )));
    }
    Ok(per_start[0])
}

/// `K(g + pair) - K(g)` for a non-edge `pair` added at weight 1.
pub fn delta_kemeny(g: &Graph, pair: VertexPair) -> Result<f64> {
    g.check_vertex(pair.x)?;
    g.check_vertex(pair.y)?;
    if g.weight(pair.x, pair.y) != 0.0 {
        return Err(Error::Parameter(format!("{pair} is already an edge")));
    }
    let before = spectral::kemeny(g)?;
    let after = spectral::kemeny(&g.with_weight(pair, 1.0))?;
    Ok(after - before)
}
