//! Full derivative scan of one graph with the finite-difference oracle run
//! on every pair.

use serde::Serialize;

use crate::error::Result;
use crate::graph::{EdgeSet, Graph, VertexPair};
use crate::spectral::{derivative_table_with, require_connected, DerivativeTable, Spectrum};
use crate::theorems::{check_mfpt, check_table, Violation};
use crate::verify::{fd_report_with, FdReport};

/// Oracle outcome for one pair.
#[derive(Debug, Clone, Serialize)]
pub struct PairCheck {
    pub pair: VertexPair,
    pub max_gap: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub table: DerivativeTable,
    pub oracle: Vec<PairCheck>,
    pub violations: Vec<Violation>,
}

impl ScanReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty() && self.oracle.iter().all(|c| c.agrees)
    }
}

pub fn scan_graph(g: &Graph, h: f64) -> Result<ScanReport> {
    require_connected(g)?;
    let s = Spectrum::of(g)?;
    let table = derivative_table_with(g, &s)?;
    let mut violations = check_table(g, &table);
    violations.extend(check_mfpt(g, &table)?);
    let oracle = table
        .rows
        .iter()
        .map(|r| {
            let rep: FdReport = fd_report_with(g, &s, &EdgeSet::single(r.pair), h)?;
            Ok(PairCheck {
                pair: r.pair,
                max_gap: rep.max_gap(),
                agrees: rep.agrees(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanReport {
        table,
        oracle,
        violations,
    })
}
