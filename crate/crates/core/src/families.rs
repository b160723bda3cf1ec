//! Standard graph families with canonical labelling.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{AnyGraph, Digraph, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Complete,
    Cycle,
    Empty,
    Path,
    /// Transitive tournament `T_n`: arc `(i, j)` iff `i < j`.
    Tournament,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::Complete,
        Family::Cycle,
        Family::Empty,
        Family::Path,
        Family::Tournament,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Complete => "complete",
            Family::Cycle => "cycle",
            Family::Empty => "empty",
            Family::Path => "path",
            Family::Tournament => "tournament",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family {s:?}")))
    }
}

pub fn generate(family: Family, n: usize) -> Result<AnyGraph> {
    Ok(match family {
        Family::Complete => complete(n)?.into(),
        Family::Cycle => cycle(n)?.into(),
        Family::Empty => empty(n)?.into(),
        Family::Path => path(n)?.into(),
        Family::Tournament => transitive_tournament(n)?.into(),
    })
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::domain(format!("{what} needs at least one vertex")));
    }
    Ok(())
}

pub fn complete(n: usize) -> Result<Graph> {
    positive(n, "complete graph")?;
    Graph::from_fn(n, |_, _| true)
}

pub fn empty(n: usize) -> Result<Graph> {
    positive(n, "empty graph")?;
    Graph::empty(n)
}

pub fn path(n: usize) -> Result<Graph> {
    positive(n, "path")?;
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// Cycle `C_n` with edges `i ~ i+1 (mod n)`; needs `n >= 3`.
pub fn cycle(n: usize) -> Result<Graph> {
    positive(n, "cycle")?;
    if n < 3 {
        return Err(Error::domain(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn transitive_tournament(n: usize) -> Result<Digraph> {
    positive(n, "tournament")?;
    Digraph::from_fn(n, |i, j| i < j)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_has_one_edge() {
        let k2 = complete(2).unwrap();
        assert_eq!(k2.edge_count(), 1);
    }

    #[test]
    fn tournament_three() {
        let t = transitive_tournament(3).unwrap();
        assert_eq!(t.arcs().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn c5_is_two_regular() {
        let c = cycle(5).unwrap();
        assert_eq!(c.edge_count(), 5);
        assert!((0..5).all(|v| c.degree(v) == 2));
    }

    #[test]
    fn zero_vertices_rejected() {
        for f in Family::ALL {
            assert!(generate(f, 0).is_err(), "{f}");
        }
        assert!(cycle(2).is_err());
    }

    #[test]
    fn names_round_trip() {
        for f in Family::ALL {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("petersen".parse::<Family>().is_err());
    }
}
