//! Generators for the named graph families.
//!
//! Numbering conventions (0-based):
//!
//! * `paw`: triangle on `{0,1,2}`, pendant edge `{2,3}`.
//! * `cricket`: triangle on `{0,1,2}`, pendants `{2,3}` and `{2,4}`. Vertex
//!   `i` here is `v_{i+1}` in the usual 1-based drawing, so the hub is vertex 2.
//! * `lollipop(r, s)`: clique on `0..r`, bridge `{0, r}`, path `r, r+1, .., r+s-1`.
//!   The far edge is `{n-2, n-1}` whenever `s >= 2`.
//! * `barbell(r, p)`: cliques on `0..r` and `r+p..2r+p`, joined through the
//!   path `r-1, r, .., r+p-1, r+p`.
//! * `almost_barbell(r, p)`: `barbell(r, p)` minus the clique edge `{0, 1}`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexPair};

fn need(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Parameter(msg.into()))
    }
}

fn add_clique(g: &mut Graph, vertices: std::ops::Range<usize>) {
    for x in vertices.clone() {
        for y in x + 1..vertices.end {
            g.set_weight(x, y, 1.0);
        }
    }
}

fn add_path(g: &mut Graph, vertices: &[usize]) {
    for w in vertices.windows(2) {
        g.set_weight(w[0], w[1], 1.0);
    }
}

pub fn path(n: usize) -> Result<Graph> {
    need(n >= 2, "path needs at least 2 vertices")?;
    let mut g = Graph::empty(n);
    add_path(&mut g, &(0..n).collect::<Vec<_>>());
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph> {
    need(n >= 3, "cycle needs at least 3 vertices")?;
    let mut g = path(n)?;
    g.set_weight(0, n - 1, 1.0);
    Ok(g)
}

pub fn complete(n: usize) -> Result<Graph> {
    need(n >= 2, "complete graph needs at least 2 vertices")?;
    let mut g = Graph::empty(n);
    add_clique(&mut g, 0..n);
    Ok(g)
}

/// Parts are `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    need(
        m >= 1 && n >= 1,
        "both parts of a complete bipartite graph must be non-empty",
    )?;
    let mut g = Graph::empty(m + n);
    for x in 0..m {
        for y in m..m + n {
            g.set_weight(x, y, 1.0);
        }
    }
    Ok(g)
}

pub fn paw() -> Graph {
    Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).expect("static edge list")
}

pub fn cricket() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (2, 3), (2, 4)]).expect("static edge list")
}

pub fn lollipop(r: usize, s: usize) -> Result<Graph> {
    need(r >= 3, "lollipop clique needs at least 3 vertices")?;
    need(s >= 1, "lollipop path needs at least 1 vertex")?;
    let n = r + s;
    let mut g = Graph::empty(n);
    add_clique(&mut g, 0..r);
    let mut chain = vec![0];
    chain.extend(r..n);
    add_path(&mut g, &chain);
    Ok(g)
}

/// The path edge farthest from the clique; the bridge when `s == 1`.
pub fn lollipop_far_edge(r: usize, s: usize) -> Result<VertexPair> {
    let g = lollipop(r, s)?;
    let n = r + s;
    if s == 1 {
        g.pair(0, r)
    } else {
        g.pair(n - 2, n - 1)
    }
}

pub fn barbell(r: usize, p: usize) -> Result<Graph> {
    need(r >= 2, "barbell cliques need at least 2 vertices")?;
    let n = 2 * r + p;
    let mut g = Graph::empty(n);
    add_clique(&mut g, 0..r);
    add_clique(&mut g, r + p..n);
    let chain: Vec<usize> = (r - 1..=r + p).collect();
    add_path(&mut g, &chain);
    Ok(g)
}

pub fn almost_barbell(r: usize, p: usize) -> Result<Graph> {
    need(r >= 3, "almost-barbell cliques need at least 3 vertices")?;
    let mut g = barbell(r, p)?;
    g.set_weight(0, 1, 0.0);
    Ok(g)
}

/// The clique edge removed by [`almost_barbell`], as a non-edge of that graph.
pub fn almost_barbell_missing_edge(r: usize, p: usize) -> Result<VertexPair> {
    almost_barbell(r, p)?.pair(0, 1)
}

/// A named generator with its parameters, parsed from `name` or `name:a,b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Paw,
    Cricket,
    Lollipop(usize, usize),
    Barbell(usize, usize),
    AlmostBarbell(usize, usize),
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::Path(n) => path(n),
            Family::Cycle(n) => cycle(n),
            Family::Complete(n) => complete(n),
            Family::CompleteBipartite(m, n) => complete_bipartite(m, n),
            Family::Paw => Ok(paw()),
            Family::Cricket => Ok(cricket()),
            Family::Lollipop(r, s) => lollipop(r, s),
            Family::Barbell(r, p) => barbell(r, p),
            Family::AlmostBarbell(r, p) => almost_barbell(r, p),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::CompleteBipartite(m, n) => write!(f, "bipartite:{m},{n}"),
            Family::Paw => write!(f, "paw"),
            Family::Cricket => write!(f, "cricket"),
            Family::Lollipop(r, s) => write!(f, "lollipop:{r},{s}"),
            Family::Barbell(r, p) => write!(f, "barbell:{r},{p}"),
            Family::AlmostBarbell(r, p) => write!(f, "almost-barbell:{r},{p}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, args) = match s.split_once(':') {
            Some((name, args)) => (name, args),
            None => (s, ""),
        };
        let params: Vec<usize> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| {
                    a.trim().parse().map_err(|_| {
                        Error::Parameter(format!("bad family parameter {a:?} in {s:?}"))
                    })
                })
                .collect::<Result<_>>()?
        };
        let arity = |k: usize| -> Result<()> {
            need(
                params.len() == k,
                format!(
                    "family {name:?} takes {k} parameter(s), got {}",
                    params.len()
                ),
            )
        };
        let fam = match name {
            "path" => {
                arity(1)?;
                Family::Path(params[0])
            }
            "cycle" => {
                arity(1)?;
                Family::Cycle(params[0])
            }
            "complete" => {
                arity(1)?;
                Family::Complete(params[0])
            }
            "bipartite" | "complete-bipartite" => {
                arity(2)?;
                Family::CompleteBipartite(params[0], params[1])
            }
            "paw" => {
                arity(0)?;
                Family::Paw
            }
            "cricket" => {
                arity(0)?;
                Family::Cricket
            }
            "lollipop" => {
                arity(2)?;
                Family::Lollipop(params[0], params[1])
            }
            "barbell" => {
                arity(2)?;
                Family::Barbell(params[0], params[1])
            }
            "almost-barbell" => {
                arity(2)?;
                Family::AlmostBarbell(params[0], params[1])
            }
            other => return Err(Error::Parameter(format!("unknown family {other:?}"))),
        };
        Ok(fam)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_counts() {
        for n in 2..10 {
            assert_eq!(path(n).unwrap().edge_count(), n - 1);
        }
        for n in 3..10 {
            assert_eq!(cycle(n).unwrap().edge_count(), n);
        }
        for r in 3..7 {
            for s in 1..6 {
                assert_eq!(lollipop(r, s).unwrap().edge_count(), r * (r - 1) / 2 + s);
            }
        }
        assert_eq!(complete_bipartite(3, 4).unwrap().edge_count(), 12);
        assert_eq!(barbell(4, 2).unwrap().edge_count(), 6 + 6 + 3);
        assert_eq!(almost_barbell(5, 3).unwrap().edge_count(), 10 + 9 + 4);
    }

    #[test]
    fn small_lollipop_layout() {
        let g = lollipop(3, 2).unwrap();
        let edges: Vec<_> = g.edges().iter().map(|p| p.key()).collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (0, 3), (1, 2), (3, 4)]);
        assert_eq!(lollipop_far_edge(3, 2).unwrap().key(), (3, 4));
        assert_eq!(lollipop_far_edge(4, 1).unwrap().key(), (0, 4));
    }

    #[test]
    fn closing_the_path_gives_the_cycle() {
        let p = path(5).unwrap();
        let closed = p.with_weight(p.pair(0, 4).unwrap(), 1.0);
        assert_eq!(closed, cycle(5).unwrap());
    }

    #[test]
    fn all_families_connected() {
        for fam in [
            Family::Path(4),
            Family::Cycle(6),
            Family::Complete(5),
            Family::CompleteBipartite(2, 3),
            Family::Paw,
            Family::Cricket,
            Family::Lollipop(4, 3),
            Family::Barbell(4, 0),
            Family::Barbell(5, 3),
            Family::AlmostBarbell(5, 3),
        ] {
            assert!(fam.build().unwrap().is_connected(), "{fam}");
        }
    }

    #[test]
    fn parse_and_display() {
        for s in [
            "path:5",
            "bipartite:3,3",
            "cricket",
            "lollipop:3,2",
            "almost-barbell:5,3",
        ] {
            let fam: Family = s.parse().unwrap();
            assert_eq!(fam.to_string(), s);
        }
        assert!("lollipop:2,3".parse::<Family>().unwrap().build().is_err());
        assert!("lollipop:3".parse::<Family>().is_err());
        assert!("star:4".parse::<Family>().is_err());
        assert!("path:x".parse::<Family>().is_err());
    }

    #[test]
    fn almost_barbell_missing_edge_is_a_non_edge() {
        let pair = almost_barbell_missing_edge(5, 3).unwrap();
        assert!(!pair.is_edge());
        assert!(barbell(5, 3).unwrap().weight(pair.x, pair.y) > 0.0);
    }
}
