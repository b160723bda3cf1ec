//! Graph products, OR-powers and the complete join.
//!
//! Product vertices are paired row-major: `(f, g) ↦ f·|V(G)| + g`. Iterating
//! this for powers gives the flat index `Σ cᵢ·n^(t−1−i)` of a coordinate
//! sequence `c`, which [`PowerLayout`] converts in both directions.

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::{check_order, Digraph, Graph};

/// A vertex of a `t`-th power, as its coordinate sequence.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PowerVertex {
    pub coords: Vec<usize>,
}

impl PowerVertex {
    pub fn new(coords: Vec<usize>) -> Self {
        PowerVertex { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Flat/structured index conversion for the `exponent`-th power of a graph
/// on `base` vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerLayout {
    pub base: usize,
    pub exponent: usize,
}

impl PowerLayout {
    pub fn new(base: usize, exponent: usize) -> Self {
        PowerLayout { base, exponent }
    }

    /// Number of vertices, or `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        self.base.checked_pow(self.exponent as u32)
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.exponent);
        coords.iter().fold(0, |acc, &c| {
            debug_assert!(c < self.base);
            acc * self.base + c
        })
    }

    pub fn decode(&self, mut index: usize) -> PowerVertex {
        let mut coords = vec![0; self.exponent];
        for c in coords.iter_mut().rev() {
            *c = index % self.base;
            index /= self.base;
        }
        PowerVertex { coords }
    }
}

fn product_order(a: usize, b: usize) -> Result<usize> {
    check_order(a as u128 * b as u128)
}

fn power_order(n: usize, t: usize) -> Result<usize> {
    if t == 0 {
        return Err(Error::domain("power exponent must be at least 1"));
    }
    let size = (n as u128).checked_pow(t as u32).unwrap_or(u128::MAX);
    check_order(size)
}

/// OR-product: `(f,g) ~ (f',g')` iff `f ~ f'` in `F` or `g ~ g'` in `G`.
pub fn or_product(f: &Graph, g: &Graph) -> Result<Graph> {
    let (nf, ng) = (f.order(), g.order());
    let n = product_order(nf, ng)?;
    let mut rows = Vec::with_capacity(n);
    for a in 0..nf {
        for b in 0..ng {
            let mut row = BitSet::new(n);
            for a2 in 0..nf {
                if f.adjacent(a, a2) {
                    for b2 in 0..ng {
                        row.insert(a2 * ng + b2);
                    }
                } else {
                    for &b2 in g.neighbors(b) {
                        row.insert(a2 * ng + b2);
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(Graph::from_rows(n, rows))
}

pub fn or_power(g: &Graph, t: usize) -> Result<Graph> {
    power_order(g.order(), t)?;
    let mut acc = g.clone();
    for _ in 1..t {
        acc = or_product(&acc, g)?;
    }
    Ok(acc)
}

/// Digraph OR-product: arc `((f,g),(f',g'))` iff `(f,f')` or `(g,g')` is an arc.
pub fn or_product_digraph(f: &Digraph, g: &Digraph) -> Result<Digraph> {
    let (nf, ng) = (f.order(), g.order());
    let n = product_order(nf, ng)?;
    let mut rows = Vec::with_capacity(n);
    for a in 0..nf {
        for b in 0..ng {
            let mut row = BitSet::new(n);
            for a2 in 0..nf {
                if f.has_arc(a, a2) {
                    for b2 in 0..ng {
                        row.insert(a2 * ng + b2);
                    }
                } else {
                    for &b2 in g.out_neighbors(b) {
                        row.insert(a2 * ng + b2);
                    }
                }
            }
            rows.push(row);
        }
    }
    Ok(Digraph::from_out_rows(n, rows))
}

pub fn or_power_digraph(d: &Digraph, t: usize) -> Result<Digraph> {
    power_order(d.order(), t)?;
    let mut acc = d.clone();
    for _ in 1..t {
        acc = or_product_digraph(&acc, d)?;
    }
    Ok(acc)
}

/// Adjacency in the OR-power of `g` between coordinate sequences, without
/// materialising the power.
pub fn power_adjacent(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).any(|(&x, &y)| g.adjacent(x, y))
}

/// Arc test in the OR-power of `d` between coordinate sequences.
pub fn power_arc(d: &Digraph, a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).any(|(&x, &y)| d.has_arc(x, y))
}

/// Categorical product: adjacent iff adjacent in both coordinates.
pub fn categorical_product(f: &Graph, g: &Graph) -> Result<Graph> {
    let ng = g.order();
    let n = product_order(f.order(), ng)?;
    Graph::from_fn(n, |x, y| {
        f.adjacent(x / ng, y / ng) && g.adjacent(x % ng, y % ng)
    })
}

/// Complete join: disjoint union plus every edge between the two sides.
/// Vertices of `h` are shifted by `|V(g)|`.
pub fn complete_join(g: &Graph, h: &Graph) -> Result<Graph> {
    let ng = g.order();
    let n = check_order(ng as u128 + h.order() as u128)?;
    Graph::from_fn(n, |x, y| match (x < ng, y < ng) {
        (true, true) => g.adjacent(x, y),
        (false, false) => h.adjacent(x - ng, y - ng),
        _ => true,
    })
}
