//! Exact chromatic number by DSATUR branch and bound.
//!
//! A maximum clique gives the lower bound and is precoloured to break colour
//! symmetry; a greedy DSATUR colouring gives the starting upper bound.

use serde::{Deserialize, Serialize};

use crate::clique::{clique_number, SearchOptions};
use crate::error::Result;
use crate::graph::Graph;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChromaticResult {
    /// Proven lower bound.
    pub lower: usize,
    /// Colours used by `coloring`.
    pub upper: usize,
    /// A proper colouring with `upper` colours.
    pub coloring: Vec<usize>,
    pub exhausted: bool,
    pub nodes: u64,
}

impl ChromaticResult {
    /// `Some(χ)` when the bounds meet.
    pub fn exact(&self) -> Option<usize> {
        (self.lower == self.upper).then_some(self.upper)
    }
}

const NONE: usize = usize::MAX;

struct Dsatur<'a> {
    g: &'a Graph,
    colour: Vec<usize>,
    /// `forbid[v][c]`: neighbours of `v` currently coloured `c`.
    forbid: Vec<Vec<u32>>,
    sat: Vec<usize>,
    coloured: usize,
}

impl<'a> Dsatur<'a> {
    fn new(g: &'a Graph, max_colours: usize) -> Self {
        let n = g.order();
        Dsatur {
            g,
            colour: vec![NONE; n],
            forbid: vec![vec![0; max_colours + 1]; n],
            sat: vec![0; n],
            coloured: 0,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colour[v] = c;
        self.coloured += 1;
        for &w in self.g.neighbors(v) {
            if self.forbid[w][c] == 0 {
                self.sat[w] += 1;
            }
            self.forbid[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = std::mem::replace(&mut self.colour[v], NONE);
        self.coloured -= 1;
        for &w in self.g.neighbors(v) {
            self.forbid[w][c] -= 1;
            if self.forbid[w][c] == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    /// Uncoloured vertex of maximum saturation, then degree, then lowest index.
    fn pick(&self) -> usize {
        (0..self.g.order())
            .filter(|&v| self.colour[v] == NONE)
            .max_by_key(|&v| (self.sat[v], self.g.degree(v), std::cmp::Reverse(v)))
            .expect("uncoloured vertex")
    }
}

fn greedy(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut d = Dsatur::new(g, n);
    while d.coloured < n {
        let v = d.pick();
        let c = (0..n).find(|&c| d.forbid[v][c] == 0).expect("free colour");
        d.assign(v, c);
    }
    d.colour
}

struct Search<'a> {
    d: Dsatur<'a>,
    lower: usize,
    best: Vec<usize>,
    upper: usize,
    nodes: u64,
    limit: u64,
    aborted: bool,
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.aborted || self.upper == self.lower
    }

    fn expand(&mut self, used: usize) {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.aborted = true;
            return;
        }
        if self.d.coloured == self.d.g.order() {
            self.upper = used;
            self.best = self.d.colour.clone();
            return;
        }
        let v = self.d.pick();
        for c in 0..used {
            if self.d.forbid[v][c] == 0 {
                self.d.assign(v, c);
                self.expand(used);
                self.d.unassign(v);
                if self.done() {
                    return;
                }
            }
        }
        if used + 1 < self.upper {
            self.d.assign(v, used);
            self.expand(used + 1);
            self.d.unassign(v);
        }
    }
}

pub fn chromatic_number(g: &Graph, opts: SearchOptions) -> Result<ChromaticResult> {
    let n = g.order();
    if n == 0 {
        return Ok(ChromaticResult {
            lower: 0,
            upper: 0,
            coloring: vec![],
            exhausted: true,
            nodes: 0,
        });
    }
    let clique = clique_number(g, opts)?;
    let start = greedy(g);
    let upper = start.iter().max().map_or(0, |&c| c + 1);
    let mut search = Search {
        d: Dsatur::new(g, upper),
        lower: clique.size,
        best: start,
        upper,
        nodes: clique.nodes,
        limit: opts.node_limit,
        aborted: false,
    };
    if search.lower < search.upper {
        for (c, &v) in clique.witness.iter().enumerate() {
            search.d.assign(v, c);
        }
        search.expand(clique.size);
    }
    let exhausted = !search.aborted;
    // A finished search proves the incumbent optimal.
    let lower = if exhausted { search.upper } else { search.lower };
    assert!(g.is_proper_coloring(&search.best));
    Ok(ChromaticResult {
        lower,
        upper: search.upper,
        coloring: search.best,
        exhausted,
        nodes: search.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, empty, path};

    fn chi(g: &Graph) -> usize {
        chromatic_number(g, SearchOptions::default())
            .unwrap()
            .exact()
            .unwrap()
    }

    #[test]
    fn standard_values() {
        assert_eq!(chi(&cycle(5).unwrap()), 3);
        assert_eq!(chi(&cycle(6).unwrap()), 2);
        assert_eq!(chi(&complete(5).unwrap()), 5);
        assert_eq!(chi(&empty(3).unwrap()), 1);
        assert_eq!(chi(&path(4).unwrap()), 2);
    }

    #[test]
    fn grotzsch_graph_needs_four() {
        let m = crate::mycielski::mycielskian(&cycle(5).unwrap(), 2).unwrap();
        assert_eq!(chi(&m), 4);
    }

    #[test]
    fn budget_gives_interval() {
        let m = crate::mycielski::mycielskian(&cycle(5).unwrap(), 2).unwrap();
        let r = chromatic_number(&m, SearchOptions::with_limit(1)).unwrap();
        assert!(!r.exhausted);
        assert!(r.lower <= 4 && 4 <= r.upper);
        assert!(m.is_proper_coloring(&r.coloring));
    }
}
