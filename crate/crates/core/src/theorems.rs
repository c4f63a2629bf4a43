//! Identities and inequalities that every derivative table must satisfy.
//!
//! [`check_table`] returns the list of violated checks; an empty list means
//! the table is consistent. Checks that only hold for unweighted graphs
//! (eigenvalue bounds, Kemeny bounds, twin formulas) are skipped otherwise.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::Result;
use crate::graph::{Graph, TwinKind, VertexPair};
use crate::spectral::{self, DerivativeTable};
use crate::verify;

/// Slack for eigenvalue-derivative identities.
pub const LAMBDA_TOL: f64 = 1e-9;
/// Slack for Kemeny-derivative identities and the MFPT comparison.
pub const KEMENY_TOL: f64 = 1e-8;
/// Matching tolerance when locating a predicted eigenvalue in a table.
const LOCATE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Check {
    /// `dλ = 0` for `λ = 0`.
    LambdaZero,
    /// `Σ_groups k·dλ = 0` for each pair.
    RowSum,
    /// `Σ_edges w·dλ = 0` for each group.
    EdgeColumnSum,
    /// `-λ ≤ dλ ≤ 2 - λ`.
    EigenvalueBounds,
    /// `K + Σ -2k/λ² ≤ dK ≤ K`.
    KemenyBounds,
    /// `Σ_edges w·dK = 0`.
    KemenyEdgeSum,
    /// Spectral Kemeny equals the MFPT value.
    SpectralVsMfpt,
    /// `d(2-λ) = -dλ` on edges of bipartite graphs.
    BipartiteSymmetry,
    /// `λ = 2` derivative: 0 across parts, `-2/W` within a part.
    BipartiteLambdaTwo,
    ConnectedTwins,
    IsolatedTwins,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub check: Check,
    pub pair: Option<VertexPair>,
    pub eigenvalue: Option<f64>,
    pub value: f64,
    pub expected: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.check)?;
        if let Some(p) = self.pair {
            write!(f, " pair {p}")?;
        }
        if let Some(l) = self.eigenvalue {
            write!(f, " λ={l:.6}")?;
        }
        write!(f, ": value {:e}, expected {}", self.value, self.expected)
    }
}

struct Collector(Vec<Violation>);

impl Collector {
    fn push(
        &mut self,
        check: Check,
        pair: Option<VertexPair>,
        eigenvalue: Option<f64>,
        value: f64,
        expected: String,
    ) {
        self.0.push(Violation {
            check,
            pair,
            eigenvalue,
            value,
            expected,
        });
    }

    fn zero(
        &mut self,
        check: Check,
        pair: Option<VertexPair>,
        eigenvalue: Option<f64>,
        value: f64,
        tol: f64,
    ) {
        if !(value.abs() <= tol) {
            self.push(check, pair, eigenvalue, value, format!("0 ± {tol:e}"));
        }
    }

    fn equal(
        &mut self,
        check: Check,
        pair: Option<VertexPair>,
        eigenvalue: Option<f64>,
        value: f64,
        target: f64,
    ) {
        if !((value - target).abs() <= LAMBDA_TOL) {
            self.push(
                check,
                pair,
                eigenvalue,
                value,
                format!("{target} ± {LAMBDA_TOL:e}"),
            );
        }
    }

    fn at_most(
        &mut self,
        check: Check,
        pair: Option<VertexPair>,
        eigenvalue: Option<f64>,
        value: f64,
        limit: f64,
        tol: f64,
    ) {
        if !(value <= limit + tol) {
            self.push(
                check,
                pair,
                eigenvalue,
                value,
                format!("≤ {limit} + {tol:e}"),
            );
        }
    }
}

/// Runs every table-level check against `table`, which must have been
/// computed from `g`.
pub fn check_table(g: &Graph, table: &DerivativeTable) -> Vec<Violation> {
    let mut c = Collector(Vec::new());
    let unweighted = g.is_unweighted();
    let values = &table.eigenvalues;
    let mult = &table.multiplicities;

    for r in &table.rows {
        let p = Some(r.pair);
        c.zero(
            Check::LambdaZero,
            p,
            Some(values[table.zero_group]),
            r.d_lambda[table.zero_group],
            LAMBDA_TOL,
        );
        let row_sum: f64 = r
            .d_lambda
            .iter()
            .zip(mult)
            .map(|(d, &k)| k as f64 * d)
            .sum();
        c.zero(Check::RowSum, p, None, row_sum, LAMBDA_TOL);
        if unweighted {
            for (i, &dl) in r.d_lambda.iter().enumerate() {
                let l = values[i];
                if !(dl >= -l - LAMBDA_TOL && dl <= 2.0 - l + LAMBDA_TOL) {
                    c.push(
                        Check::EigenvalueBounds,
                        p,
                        Some(l),
                        dl,
                        format!("in [{}, {}]", -l, 2.0 - l),
                    );
                }
            }
            let b = table.kemeny_bounds;
            if !(r.d_kemeny >= b.lower - KEMENY_TOL && r.d_kemeny <= b.upper + KEMENY_TOL) {
                c.push(
                    Check::KemenyBounds,
                    p,
                    None,
                    r.d_kemeny,
                    format!("in [{}, {}]", b.lower, b.upper),
                );
            }
        }
    }

    for (i, &l) in values.iter().enumerate() {
        let s: f64 = table
            .edge_rows()
            .map(|r| g.weight(r.pair.x, r.pair.y) * r.d_lambda[i])
            .sum();
        c.zero(Check::EdgeColumnSum, None, Some(l), s, LAMBDA_TOL);
    }
    let dk_sum: f64 = table
        .edge_rows()
        .map(|r| g.weight(r.pair.x, r.pair.y) * r.d_kemeny)
        .sum();
    c.zero(Check::KemenyEdgeSum, None, None, dk_sum, KEMENY_TOL);

    if let Some(side) = g.bipartition() {
        check_bipartite(&mut c, g, table, &side);
    }
    if unweighted {
        check_twins(&mut c, g, table);
    }
    c.0
}

fn check_bipartite(c: &mut Collector, g: &Graph, table: &DerivativeTable, side: &[bool]) {
    let values = &table.eigenvalues;
    for (i, &l) in values.iter().enumerate() {
        let Some(j) = table.group_near(2.0 - l, LOCATE_TOL) else {
            c.push(
                Check::BipartiteSymmetry,
                None,
                Some(l),
                l,
                format!("{} in spectrum", 2.0 - l),
            );
            continue;
        };
        for r in table.edge_rows() {
            let s = r.d_lambda[i] + r.d_lambda[j];
            c.zero(
                Check::BipartiteSymmetry,
                Some(r.pair),
                Some(l),
                s,
                LAMBDA_TOL,
            );
        }
    }
    let Some(top) = table.group_near(2.0, LOCATE_TOL) else {
        return;
    };
    let total_weight: f64 = table
        .edge_rows()
        .map(|r| g.weight(r.pair.x, r.pair.y))
        .sum();
    for r in &table.rows {
        let dl = r.d_lambda[top];
        if side[r.pair.x] != side[r.pair.y] {
            c.zero(
                Check::BipartiteLambdaTwo,
                Some(r.pair),
                Some(2.0),
                dl,
                LAMBDA_TOL,
            );
        } else {
            c.equal(
                Check::BipartiteLambdaTwo,
                Some(r.pair),
                Some(2.0),
                dl,
                -2.0 / total_weight,
            );
        }
    }
}

fn check_twins(c: &mut Collector, g: &Graph, table: &DerivativeTable) {
    for t in g.find_twins() {
        let d = t.degree as f64;
        let (check, special, bound_k1) = match t.kind {
            TwinKind::Connected => (Check::ConnectedTwins, (d + 1.0) / d, (d - 1.0) / (d * d)),
            TwinKind::Isolated => (Check::IsolatedTwins, 1.0, 1.0 / d),
        };
        let Some(row) = table.row(t.pair.x, t.pair.y) else {
            continue;
        };
        let p = Some(t.pair);
        let Some(gi) = table.group_near(special, LOCATE_TOL) else {
            c.push(
                check,
                p,
                Some(special),
                f64::NAN,
                format!("eigenvalue {special} present"),
            );
            continue;
        };
        let k = table.multiplicities[gi] as f64;
        let dl = row.d_lambda[gi];
        if k == 1.0 {
            c.equal(check, p, Some(special), dl, bound_k1);
        } else {
            c.at_most(check, p, Some(special), dl, bound_k1 / k, LAMBDA_TOL);
        }
        for (i, &other) in row.d_lambda.iter().enumerate() {
            if i != gi {
                c.at_most(check, p, Some(table.eigenvalues[i]), other, 0.0, LAMBDA_TOL);
            }
        }
    }
}

/// Compares the spectral Kemeny constant in `table` with the MFPT oracle.
pub fn check_mfpt(g: &Graph, table: &DerivativeTable) -> Result<Vec<Violation>> {
    let mfpt = verify::kemeny_via_mfpt(g)?;
    let mut c = Collector(Vec::new());
    if !((mfpt - table.kemeny).abs() <= KEMENY_TOL) {
        c.push(
            Check::SpectralVsMfpt,
            None,
            None,
            table.kemeny,
            format!("{mfpt} ± {KEMENY_TOL:e}"),
        );
    }
    Ok(c.0)
}

/// Computes the table for `g` and runs every check including the MFPT one.
pub fn check_graph(g: &Graph) -> Result<(DerivativeTable, Vec<Violation>)> {
    let table = spectral::derivative_table(g)?;
    let mut v = check_table(g, &table);
    v.extend(check_mfpt(g, &table)?);
    Ok((table, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn families_are_clean() {
        for g in [
            families::cricket(),
            families::paw(),
            families::path(7).unwrap(),
            families::cycle(8).unwrap(),
            families::complete(6).unwrap(),
            families::complete_bipartite(2, 5).unwrap(),
            families::lollipop(4, 4).unwrap(),
            families::barbell(4, 2).unwrap(),
            families::almost_barbell(5, 3).unwrap(),
        ] {
            let (_, v) = check_graph(&g).unwrap();
            assert!(v.is_empty(), "{v:?}");
        }
    }

    #[test]
    fn weighted_graph_sum_rules() {
        let mut g = families::cycle(5).unwrap();
        g.set_weight(0, 1, 3.0);
        g.set_weight(2, 3, 0.25);
        let (_, v) = check_graph(&g).unwrap();
        assert!(v.is_empty(), "{v:?}");
    }

    #[test]
    fn tampered_table_is_caught() {
        let g = families::cricket();
        let mut t = spectral::derivative_table(&g).unwrap();
        t.rows[0].d_lambda[3] += 1e-3;
        let checks: Vec<Check> = check_table(&g, &t).iter().map(|v| v.check).collect();
        assert!(checks.contains(&Check::RowSum));
        assert!(checks.contains(&Check::EdgeColumnSum));
        assert!(checks.contains(&Check::ConnectedTwins));
    }

    #[test]
    fn bipartite_same_part_value() {
        let g = families::complete_bipartite(3, 3).unwrap();
        let t = spectral::derivative_table(&g).unwrap();
        let top = t.group_near(2.0, 1e-9).unwrap();
        let r = t.row(0, 1).unwrap();
        assert!((r.d_lambda[top] + 2.0 / 9.0).abs() < 1e-12);
        assert!(check_table(&g, &t).is_empty());
    }
}
