//! Finite-power lower bounds on the OR- and Sperner capacities:
//! `ω(G^k)^{1/k} ≤ C_OR(G)` and `ω_tr(D^k)^{1/k} ≤ C_Sp(D)`.

use serde::{Deserialize, Serialize};

use crate::clique::{clique_number, transitive_clique_number, CliqueResult, SearchOptions};
use crate::error::{Error, Result};
use crate::graph::AnyGraph;
use crate::products::{or_power, or_power_digraph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityBound {
    pub k: usize,
    /// Best clique found in the `k`-th power (transitive for digraphs).
    pub clique: usize,
    /// `clique^{1/k}`.
    pub bound: f64,
    /// True when `clique` is the exact clique number of the power.
    pub exhausted: bool,
    /// Witness as flat indices of the power.
    pub witness: Vec<usize>,
}

pub fn capacity_lower_bound(g: &AnyGraph, k: usize, opts: SearchOptions) -> Result<CapacityBound> {
    if k == 0 {
        return Err(Error::domain("power exponent must be at least 1"));
    }
    let res: CliqueResult = match g {
        AnyGraph::Undirected(g) => clique_number(&or_power(g, k)?, opts)?,
        AnyGraph::Directed(d) => transitive_clique_number(&or_power_digraph(d, k)?, opts)?,
    };
    Ok(CapacityBound {
        k,
        clique: res.size,
        bound: (res.size as f64).powf(1.0 / k as f64),
        exhausted: res.exhausted,
        witness: res.witness,
    })
}
