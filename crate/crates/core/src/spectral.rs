//! Normalized Laplacian spectra and their edge derivatives.
//!
//! For an eigenvalue `λ` of multiplicity `k` with orthonormal eigenbasis
//! `v_1..v_k`, the derivative with respect to a set of pairs `E_C`, each pair
//! `{x,y}` perturbed at rate `c_xy`, is
//!
//! ```text
//! dλ = (1/k) Σ_i Σ_{xy ∈ E_C} c_xy [ (1-λ)(v_ix²/d_x + v_iy²/d_y) - 2 v_ix v_iy / √(d_x d_y) ]
//! ```
//!
//! The average over the eigenbasis makes the value independent of which
//! orthonormal basis the eigensolver returned. Non-edges use the same formula
//! (they are pairs of weight 0).
//!
//! Kemeny's constant is `K = Σ_{λ≠0} 1/λ` over the spectrum with multiplicity,
//! and its derivative is `dK = Σ_{λ≠0} -(k/λ²) dλ` summed over groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, VertexPair};
use crate::linalg::{eig_sym, EigenDecomposition, SymMatrix};

/// Adjacent eigenvalues closer than this belong to one group.
pub const GROUPING_TOLERANCE: f64 = 1e-8;
/// Groups with value below this are the zero eigenvalue.
pub const ZERO_TOLERANCE: f64 = 1e-8;

fn laplacian_from_weights(n: usize, weights: &[f64]) -> Result<SymMatrix> {
    let degrees: Vec<f64> = (0..n)
        .map(|i| weights[i * n..(i + 1) * n].iter().sum())
        .collect();
    if let Some(vertex) = degrees.iter().position(|&d| d <= 0.0) {
        return Err(Error::Degenerate { vertex });
    }
    let inv_sqrt: Vec<f64> = degrees.iter().map(|d| 1.0 / d.sqrt()).collect();
    Ok(SymMatrix::from_upper(n, |i, j| {
        if i == j {
            1.0
        } else {
            -weights[i * n + j] * inv_sqrt[i] * inv_sqrt[j]
        }
    }))
}

fn dense_weights(g: &Graph) -> Vec<f64> {
    let n = g.n();
    (0..n * n).map(|k| g.weight(k / n, k % n)).collect()
}

/// `I - D^{-1/2} A D^{-1/2}`.
pub fn normalized_laplacian(g: &Graph) -> Result<SymMatrix> {
    laplacian_from_weights(g.n(), &dense_weights(g))
}

/// Normalized Laplacian after adding `t * c_xy` to the weight of every pair
/// `{x,y}` of `ec` (with multiplier `c_xy`).
pub fn parameterized_laplacian(g: &Graph, ec: &EdgeSet, t: f64) -> Result<SymMatrix> {
    let n = g.n();
    let mut w = dense_weights(g);
    for (p, c) in ec.iter() {
        g.check_vertex(p.x)?;
        g.check_vertex(p.y)?;
        let value = w[p.x * n + p.y] + t * c;
        if value < 0.0 {
            return Err(Error::Parameter(format!(
                "weight of {p} would become {value} at t = {t}"
            )));
        }
        w[p.x * n + p.y] = value;
        w[p.y * n + p.x] = value;
    }
    laplacian_from_weights(n, &w)
}

/// One distinct eigenvalue with an orthonormal basis of its eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenGroup {
    pub value: f64,
    pub basis: Vec<Vec<f64>>,
    /// Position of the first member in the ascending eigenvalue list.
    pub first_index: usize,
}

impl EigenGroup {
    pub fn multiplicity(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub n: usize,
    pub groups: Vec<EigenGroup>,
}

/// Merges neighbours of the ascending eigenvalue list whose gap is at most
/// [`GROUPING_TOLERANCE`]; each group's value is the mean of its members.
pub fn group_spectrum(d: &EigenDecomposition) -> Spectrum {
    let n = d.values.len();
    let mut groups: Vec<EigenGroup> = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && d.values[end] - d.values[end - 1] <= GROUPING_TOLERANCE {
            end += 1;
        }
        let members = &d.values[start..end];
        groups.push(EigenGroup {
            value: members.iter().sum::<f64>() / members.len() as f64,
            basis: (start..end).map(|k| d.vector(k)).collect(),
            first_index: start,
        });
        start = end;
    }
    Spectrum { n, groups }
}

impl Spectrum {
    /// Grouped spectrum of the normalized Laplacian of `g`.
    pub fn of(g: &Graph) -> Result<Self> {
        Ok(group_spectrum(&eig_sym(&normalized_laplacian(g)?)?))
    }

    pub fn values(&self) -> Vec<f64> {
        self.groups.iter().map(|g| g.value).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.multiplicity()).collect()
    }

    /// Index of the group holding eigenvalue 0; it must be simple.
    pub fn zero_group(&self) -> Result<usize> {
        let zeros: Vec<usize> = (0..self.groups.len())
            .filter(|&i| self.groups[i].value < ZERO_TOLERANCE)
            .collect();
        match zeros.as_slice() {
            [i] if self.groups[*i].multiplicity() == 1 => Ok(*i),
            [i] => Err(Error::Disconnected {
                components: self.groups[*i].multiplicity(),
            }),
            [] => Err(Error::Oracle("spectrum has no zero eigenvalue".into())),
            _ => Err(Error::Oracle(
                "more than one group below the zero tolerance".into(),
            )),
        }
    }

    /// Groups other than the zero group.
    pub fn nonzero_groups(&self) -> Result<impl Iterator<Item = (usize, &EigenGroup)>> {
        let z = self.zero_group()?;
        Ok(self.groups.iter().enumerate().filter(move |(i, _)| *i != z))
    }

    /// Index of the group whose value is within `tol` of `value`.
    pub fn find(&self, value: f64, tol: f64) -> Option<usize> {
        self.groups
            .iter()
            .position(|g| (g.value - value).abs() <= tol)
    }
}

fn pair_term(one_minus_lambda: f64, ux: f64, uy: f64) -> f64 {
    one_minus_lambda * (ux * ux + uy * uy) - 2.0 * ux * uy
}

/// Averaged eigenvalue derivative of `group` along `ec`, using each pair's
/// multiplier as the perturbation rate.
pub fn eigenvalue_edge_derivative(g: &Graph, group: &EigenGroup, ec: &EdgeSet) -> Result<f64> {
    let d = g.degrees();
    let mut total = 0.0;
    for (p, c) in ec.iter() {
        g.check_vertex(p.x)?;
        g.check_vertex(p.y)?;
        let (sx, sy) = (d[p.x].sqrt(), d[p.y].sqrt());
        let s: f64 = group
            .basis
            .iter()
            .map(|v| pair_term(1.0 - group.value, v[p.x] / sx, v[p.y] / sy))
            .sum();
        total += c * s;
    }
    Ok(total / group.multiplicity() as f64)
}

/// Derivative under the weight-proportional parameterization, where each pair
/// `{x,y}` of `ec` moves as `w_xy (1 + t)`. Every pair must be an edge.
pub fn eigenvalue_edge_derivative_weighted(
    g: &Graph,
    group: &EigenGroup,
    ec: &EdgeSet,
) -> Result<f64> {
    eigenvalue_edge_derivative(g, group, &weight_scaled(g, ec)?)
}

/// `ec` with each multiplier scaled by the pair's current weight.
pub fn weight_scaled(g: &Graph, ec: &EdgeSet) -> Result<EdgeSet> {
    let mut out = EdgeSet::new();
    for (p, c) in ec.iter() {
        g.check_vertex(p.x)?;
        g.check_vertex(p.y)?;
        let w = g.weight(p.x, p.y);
        if w <= 0.0 {
            return Err(Error::Parameter(format!(
                "pair {p} has weight 0 and cannot be scaled proportionally"
            )));
        }
        out.push(*p, c * w)?;
    }
    Ok(out)
}

pub fn kemeny_from_spectrum(s: &Spectrum) -> Result<f64> {
    Ok(s.nonzero_groups()?
        .map(|(_, g)| g.multiplicity() as f64 / g.value)
        .sum())
}

pub fn kemeny(g: &Graph) -> Result<f64> {
    require_connected(g)?;
    kemeny_from_spectrum(&Spectrum::of(g)?)
}

/// `dK` along `ec` given a precomputed spectrum of `g`.
pub fn kemeny_edge_derivative_with(g: &Graph, s: &Spectrum, ec: &EdgeSet) -> Result<f64> {
    let mut total = 0.0;
    for (_, group) in s.nonzero_groups()? {
        let dl = eigenvalue_edge_derivative(g, group, ec)?;
        total -= group.multiplicity() as f64 * dl / (group.value * group.value);
    }
    Ok(total)
}

pub fn kemeny_edge_derivative(g: &Graph, ec: &EdgeSet) -> Result<f64> {
    require_connected(g)?;
    kemeny_edge_derivative_with(g, &Spectrum::of(g)?, ec)
}

/// Range `[K + Σ_{λ≠0} -2/λ², K]` that every single-pair `dK` falls in.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KemenyBounds {
    pub lower: f64,
    pub upper: f64,
}

pub fn kemeny_bounds(s: &Spectrum) -> Result<KemenyBounds> {
    let k = kemeny_from_spectrum(s)?;
    let sq: f64 = s
        .nonzero_groups()?
        .map(|(_, g)| -2.0 * g.multiplicity() as f64 / (g.value * g.value))
        .sum();
    Ok(KemenyBounds {
        lower: sq + k,
        upper: k,
    })
}

pub(crate) fn require_connected(g: &Graph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Disconnected {
            components: g.component_count(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivativeRow {
    pub pair: VertexPair,
    /// One entry per eigenvalue group, ascending by eigenvalue.
    pub d_lambda: Vec<f64>,
    pub d_kemeny: f64,
}

/// Every pair's eigenvalue and Kemeny derivatives for one graph.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DerivativeTable {
    pub n: usize,
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub kemeny: f64,
    pub kemeny_bounds: KemenyBounds,
    pub zero_group: usize,
    pub rows: Vec<DerivativeRow>,
}

impl DerivativeTable {
    pub fn row(&self, x: usize, y: usize) -> Option<&DerivativeRow> {
        let key = if x < y { (x, y) } else { (y, x) };
        self.rows.iter().find(|r| r.pair.key() == key)
    }

    pub fn edge_rows(&self) -> impl Iterator<Item = &DerivativeRow> {
        self.rows.iter().filter(|r| r.pair.is_edge())
    }

    pub fn non_edge_rows(&self) -> impl Iterator<Item = &DerivativeRow> {
        self.rows.iter().filter(|r| !r.pair.is_edge())
    }

    pub fn group_near(&self, value: f64, tol: f64) -> Option<usize> {
        self.eigenvalues
            .iter()
            .position(|&l| (l - value).abs() <= tol)
    }
}

/// Derivatives for all pairs of a connected graph, rows in lexicographic
/// pair order.
pub fn derivative_table(g: &Graph) -> Result<DerivativeTable> {
    require_connected(g)?;
    let s = Spectrum::of(g)?;
    derivative_table_with(g, &s)
}

pub fn derivative_table_with(g: &Graph, s: &Spectrum) -> Result<DerivativeTable> {
    let zero = s.zero_group()?;
    let d = g.degrees();
    let inv_sqrt: Vec<f64> = d.iter().map(|x| 1.0 / x.sqrt()).collect();
    // eigenvectors scaled by D^{-1/2}, per group
    let scaled: Vec<Vec<Vec<f64>>> = s
        .groups
        .iter()
        .map(|grp| {
            grp.basis
                .iter()
                .map(|v| v.iter().zip(&inv_sqrt).map(|(a, b)| a * b).collect())
                .collect()
        })
        .collect();

    let rows = g
        .all_pairs()
        .into_iter()
        .map(|pair| {
            let d_lambda: Vec<f64> = s
                .groups
                .iter()
                .zip(&scaled)
                .map(|(grp, us)| {
                    let sum: f64 = us
                        .iter()
                        .map(|u| pair_term(1.0 - grp.value, u[pair.x], u[pair.y]))
                        .sum();
                    sum / us.len() as f64
                })
                .collect();
            let d_kemeny = s
                .groups
                .iter()
                .zip(&d_lambda)
                .enumerate()
                .filter(|(i, _)| *i != zero)
                .map(|(_, (grp, dl))| -(grp.multiplicity() as f64) * dl / (grp.value * grp.value))
                .sum();
            DerivativeRow {
                pair,
                d_lambda,
                d_kemeny,
            }
        })
        .collect();

    Ok(DerivativeTable {
        n: g.n(),
        eigenvalues: s.values(),
        multiplicities: s.multiplicities(),
        kemeny: kemeny_from_spectrum(s)?,
        kemeny_bounds: kemeny_bounds(s)?,
        zero_group: zero,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::PairKind;
    use proptest::prelude::*;

    const SQRT5: f64 = 2.23606797749979;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn laplacian_entries() {
        let k2 = normalized_laplacian(&families::complete(2).unwrap()).unwrap();
        assert_eq!(k2.as_matrix().row(0), &[1.0, -1.0]);
        assert_eq!(k2.as_matrix().row(1), &[-1.0, 1.0]);

        let p3 = normalized_laplacian(&families::path(3).unwrap()).unwrap();
        let h = -1.0 / 2f64.sqrt();
        assert!(close(p3[(0, 1)], h, 1e-15) && close(p3[(1, 2)], h, 1e-15));
        assert_eq!(p3[(0, 2)], 0.0);
        assert!((0..3).all(|i| p3[(i, i)] == 1.0));

        let paw = normalized_laplacian(&families::paw()).unwrap();
        assert!(close(paw[(0, 2)], -1.0 / 6f64.sqrt(), 1e-15));
    }

    #[test]
    fn isolated_vertex_is_degenerate() {
        let mut g = crate::graph::Graph::empty(3);
        g.add_edge(0, 1, 1.0).unwrap();
        assert!(matches!(
            normalized_laplacian(&g),
            Err(Error::Degenerate { vertex: 2 })
        ));
    }

    #[test]
    fn paw_parameterized_matches_closed_form() {
        let g = families::paw();
        let ec = EdgeSet::single(g.pair(2, 3).unwrap());
        for t in [0.0, 0.3, 1.0, 2.5] {
            let l = parameterized_laplacian(&g, &ec, t).unwrap();
            let expect_34 = -(1.0 + t) / ((1.0 + t) * (3.0 + t)).sqrt();
            let expect_13 = -1.0 / (2.0 * (3.0 + t)).sqrt();
            assert!(close(l[(2, 3)], expect_34, 1e-15), "t={t}");
            assert!(close(l[(0, 2)], expect_13, 1e-15), "t={t}");
            assert!(close(l[(1, 2)], expect_13, 1e-15), "t={t}");
            assert!(close(l[(0, 1)], -0.5, 1e-15));
        }
    }

    #[test]
    fn parameterized_edge_cases() {
        let g = families::cricket();
        let base = normalized_laplacian(&g).unwrap();
        assert_eq!(
            parameterized_laplacian(&g, &EdgeSet::new(), 3.7).unwrap(),
            base
        );
        assert_eq!(
            parameterized_laplacian(&g, &EdgeSet::all_edges(&g), 0.0).unwrap(),
            base
        );

        let k3 = families::complete(3).unwrap();
        let a = parameterized_laplacian(&k3, &EdgeSet::all_edges(&k3), 1.0).unwrap();
        let b = normalized_laplacian(&k3).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(close(a[(i, j)], b[(i, j)], 1e-15));
            }
        }

        let p3 = families::path(3).unwrap();
        let bridge = EdgeSet::single(p3.pair(0, 1).unwrap());
        assert!(matches!(
            parameterized_laplacian(&p3, &bridge, -1.0),
            Err(Error::Degenerate { vertex: 0 })
        ));
        let non_edge = EdgeSet::single(p3.pair(0, 2).unwrap());
        assert!(matches!(
            parameterized_laplacian(&p3, &non_edge, -0.5),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn grouping() {
        let c4 = Spectrum::of(&families::cycle(4).unwrap()).unwrap();
        assert_eq!(c4.multiplicities(), vec![1, 2, 1]);
        let v = c4.values();
        assert!(close(v[0], 0.0, 1e-12) && close(v[1], 1.0, 1e-12) && close(v[2], 2.0, 1e-12));

        let cricket = Spectrum::of(&families::cricket()).unwrap();
        assert_eq!(cricket.multiplicities(), vec![1; 5]);
        let expect = [0.0, (5.0 - SQRT5) / 4.0, 1.0, 1.5, (5.0 + SQRT5) / 4.0];
        for (a, b) in cricket.values().iter().zip(expect) {
            assert!(close(*a, b, 1e-9), "{a} vs {b}");
        }

        let k3 = Spectrum::of(&families::complete(3).unwrap()).unwrap();
        assert_eq!(k3.multiplicities(), vec![1, 2]);
        assert!(close(k3.values()[1], 1.5, 1e-12));
    }

    #[test]
    fn cricket_reference_entries() {
        let g = families::cricket();
        let s = Spectrum::of(&g).unwrap();
        let i15 = s.find(1.5, 1e-9).unwrap();
        let i1 = s.find(1.0, 1e-9).unwrap();
        let ihi = s.find((5.0 + SQRT5) / 4.0, 1e-9).unwrap();
        let d = |grp: usize, x, y| {
            eigenvalue_edge_derivative(&g, &s.groups[grp], &EdgeSet::single(g.pair(x, y).unwrap()))
                .unwrap()
        };
        assert!(close(d(i15, 0, 1), 0.25, 1e-12));
        assert!(close(d(i1, 3, 4), 1.0, 1e-12));
        assert!(close(d(ihi, 2, 3), 0.06, 0.005));
        for (x, y) in [(0, 1), (0, 3), (3, 4), (1, 2)] {
            assert!(close(d(0, x, y), 0.0, 1e-12));
        }
    }

    #[test]
    fn out_of_range_pair_rejected() {
        let g = families::path(3).unwrap();
        let s = Spectrum::of(&g).unwrap();
        let mut ec = EdgeSet::new();
        ec.push(
            VertexPair {
                x: 0,
                y: 5,
                kind: PairKind::NonEdge,
            },
            1.0,
        )
        .unwrap();
        assert!(matches!(
            eigenvalue_edge_derivative(&g, &s.groups[1], &ec),
            Err(Error::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn weighted_reduces_to_unweighted() {
        let g = families::cricket();
        let s = Spectrum::of(&g).unwrap();
        for p in g.edges() {
            let ec = EdgeSet::single(p);
            for grp in &s.groups {
                let a = eigenvalue_edge_derivative(&g, grp, &ec).unwrap();
                let b = eigenvalue_edge_derivative_weighted(&g, grp, &ec).unwrap();
                assert_eq!(a, b);
            }
        }
        let non_edge = EdgeSet::single(g.pair(3, 4).unwrap());
        assert!(matches!(
            eigenvalue_edge_derivative_weighted(&g, &s.groups[0], &non_edge),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn weighted_all_edges_keep_zero_and_two_fixed() {
        let mut g = families::path(4).unwrap();
        g.set_weight(0, 1, 2.0);
        g.set_weight(2, 3, 0.5);
        let s = Spectrum::of(&g).unwrap();
        let all = EdgeSet::all_edges(&g);
        let first = s.groups.first().unwrap();
        let last = s.groups.last().unwrap();
        assert!(close(last.value, 2.0, 1e-12));
        assert!(close(
            eigenvalue_edge_derivative_weighted(&g, first, &all).unwrap(),
            0.0,
            1e-12
        ));
        assert!(close(
            eigenvalue_edge_derivative_weighted(&g, last, &all).unwrap(),
            0.0,
            1e-12
        ));
    }

    #[test]
    fn kemeny_small_graphs() {
        let k = |g: &Graph| kemeny(g).unwrap();
        assert!(close(k(&families::complete(2).unwrap()), 0.5, 1e-12));
        assert!(close(k(&families::path(3).unwrap()), 1.5, 1e-12));
        let expect = 1.0 + 2.0 / 3.0 + 4.0 / (5.0 + SQRT5) + 4.0 / (5.0 - SQRT5);
        assert!(close(k(&families::cricket()), expect, 1e-9));
        assert!(close(expect, 11.0 / 3.0, 1e-12));
    }

    #[test]
    fn kemeny_rejects_disconnected() {
        let mut g = crate::graph::Graph::empty(4);
        g.add_edge(0, 1, 1.0).unwrap();
        g.add_edge(2, 3, 1.0).unwrap();
        assert!(matches!(
            kemeny(&g),
            Err(Error::Disconnected { components: 2 })
        ));
        let s = Spectrum::of(&g).unwrap();
        assert!(matches!(
            kemeny_from_spectrum(&s),
            Err(Error::Disconnected { components: 2 })
        ));
        assert!(matches!(
            derivative_table(&g),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn kemeny_derivative_reference_values() {
        let lol = families::lollipop(3, 2).unwrap();
        let far = EdgeSet::single(families::lollipop_far_edge(3, 2).unwrap());
        assert!(close(
            kemeny_edge_derivative(&lol, &far).unwrap(),
            1.06,
            0.005
        ));

        let p5 = families::path(5).unwrap();
        let close_it = EdgeSet::single(p5.pair(0, 4).unwrap());
        assert!(close(
            kemeny_edge_derivative(&p5, &close_it).unwrap(),
            -9.4,
            0.05
        ));

        let p15 = families::path(15).unwrap();
        let e = EdgeSet::single(p15.pair(0, 7).unwrap());
        assert!(close(
            kemeny_edge_derivative(&p15, &e).unwrap(),
            -139.4,
            0.05
        ));

        for n in 3..9 {
            let c = families::cycle(n).unwrap();
            for p in c.edges() {
                assert!(close(
                    kemeny_edge_derivative(&c, &EdgeSet::single(p)).unwrap(),
                    0.0,
                    1e-9
                ));
            }
        }
    }

    #[test]
    fn derivative_table_shapes() {
        let t = derivative_table(&families::cricket()).unwrap();
        assert_eq!(t.rows.len(), 10);
        assert!(t.rows.iter().all(|r| r.d_lambda.len() == 5));

        let k4 = derivative_table(&families::complete(4).unwrap()).unwrap();
        for r in k4.edge_rows() {
            assert!(r.d_lambda.iter().all(|v| v.abs() < 1e-12));
        }

        let p2 = derivative_table(&families::path(2).unwrap()).unwrap();
        assert_eq!(p2.rows.len(), 1);
        assert!(p2.rows[0].d_lambda.iter().all(|v| v.abs() < 1e-12));
        assert!(p2.rows[0].d_kemeny.abs() < 1e-12);
    }

    #[test]
    fn table_agrees_with_single_pair_route() {
        let g = families::lollipop(4, 3).unwrap();
        let t = derivative_table(&g).unwrap();
        let s = Spectrum::of(&g).unwrap();
        for r in &t.rows {
            let ec = EdgeSet::single(r.pair);
            for (i, grp) in s.groups.iter().enumerate() {
                let v = eigenvalue_edge_derivative(&g, grp, &ec).unwrap();
                assert!(close(v, r.d_lambda[i], 1e-13));
            }
            assert!(close(
                kemeny_edge_derivative(&g, &ec).unwrap(),
                r.d_kemeny,
                1e-12
            ));
        }
    }

    #[test]
    fn derivative_is_linear_in_pairs() {
        let g = families::cricket();
        let s = Spectrum::of(&g).unwrap();
        let a = g.pair(0, 1).unwrap();
        let b = g.pair(3, 4).unwrap();
        let both = EdgeSet::from_pairs([a, b]).unwrap();
        for grp in &s.groups {
            let sum = eigenvalue_edge_derivative(&g, grp, &EdgeSet::single(a)).unwrap()
                + eigenvalue_edge_derivative(&g, grp, &EdgeSet::single(b)).unwrap();
            assert!(close(
                eigenvalue_edge_derivative(&g, grp, &both).unwrap(),
                sum,
                1e-14
            ));
        }
    }

    fn orthogonal(k: usize, raw: &[f64]) -> Option<Vec<Vec<f64>>> {
        let mut cols: Vec<Vec<f64>> = Vec::new();
        for j in 0..k {
            let mut c: Vec<f64> = (0..k).map(|i| raw[i * k + j]).collect();
            for q in &cols {
                let d: f64 = c.iter().zip(q).map(|(a, b)| a * b).sum();
                c.iter_mut().zip(q).for_each(|(a, b)| *a -= d * b);
            }
            let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm < 1e-3 {
                return None;
            }
            c.iter_mut().for_each(|x| *x /= norm);
            cols.push(c);
        }
        Some(cols)
    }

    proptest! {
        #[test]
        fn basis_invariance(graph_idx in 0usize..4, raw in proptest::collection::vec(-1.0f64..1.0, 64)) {
            let g = [
                families::cycle(6).unwrap(),
                families::complete(5).unwrap(),
                families::complete_bipartite(3, 3).unwrap(),
                families::barbell(4, 1).unwrap(),
            ][graph_idx].clone();
            let s = Spectrum::of(&g).unwrap();
            for grp in s.groups.iter().filter(|grp| grp.multiplicity() > 1) {
                let k = grp.multiplicity();
                let Some(q) = orthogonal(k, &raw[..k * k]) else { continue };
                let rotated = EigenGroup {
                    basis: (0..k)
                        .map(|j| {
                            (0..g.n())
                                .map(|row| (0..k).map(|i| grp.basis[i][row] * q[j][i]).sum())
                                .collect()
                        })
                        .collect(),
                    ..grp.clone()
                };
                for p in g.all_pairs() {
                    let ec = EdgeSet::single(p);
                    let a = eigenvalue_edge_derivative(&g, grp, &ec).unwrap();
                    let b = eigenvalue_edge_derivative(&g, &rotated, &ec).unwrap();
                    prop_assert!((a - b).abs() <= 1e-9, "{} {} vs {}", p, a, b);
                }
            }
        }
    }
}
