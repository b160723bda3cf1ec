//! Explicit cliques in powers of Mycielskians.
//!
//! Coordinates are flat indices into `M(K_n)` (or `M(T_n)`): `(v, h) ↦ h·n + v`,
//! apex `↦ 2n`. Every construction checks all pairs before it returns.
//!
//! For `x ∈ {0..n−1}^n` with `Σx ≡ j (mod n)`, the lifted vertex keeps
//! `(x_i, 0)` everywhere except position `j`, which becomes `(x_j, 1)`. Two
//! sequences in the same class differ in at least two positions, so one
//! of them is a level-0 pair of distinct vertices; sequences in different
//! classes meet a `(level 0, level 1)` pair at one of the two lifted
//! positions, unless they agree there, in which case they differ elsewhere.

use serde::{Deserialize, Serialize};

use crate::clique::{clique_number, SearchOptions};
use crate::error::{Error, Result};
use crate::families::{complete, transitive_tournament};
use crate::graph::{check_order, Digraph, Graph};
use crate::mycielski::{
    mycielski_power_embedding, mycielskian, mycielskian_digraph, MycielskiLayout, VertexLabel,
};
use crate::products::{or_power, power_adjacent, power_arc, PowerLayout};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftedCliqueSet {
    pub n: usize,
    /// `"complete"` for `M(K_n)`, `"tournament"` for `M(T_n)`.
    pub base: String,
    /// Coordinate lists, flat indices into the Mycielskian. For the
    /// transitive construction this is the topological order.
    pub vertices: Vec<Vec<usize>>,
    /// Digit-sum residue `j` of each non-apex vertex (`None` for the apex).
    pub residue_classes: Vec<Option<usize>>,
    /// Whether the all-apex sequence is included.
    pub extended: bool,
    /// `|vertices|^{1/n}`.
    pub bound: f64,
    pub verified: bool,
}

impl LiftedCliqueSet {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    pub fn apex(&self) -> usize {
        2 * self.n
    }
}

fn check_n(n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::domain(format!("construction needs n >= 2, got {n}")));
    }
    let size = (n as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    check_order(size.saturating_add(1))?;
    Ok(size as usize)
}

/// Base sequences in lexicographic order with their residue classes.
fn base_sequences(n: usize, count: usize) -> Vec<(Vec<usize>, usize)> {
    let layout = PowerLayout::new(n, n);
    (0..count)
        .map(|i| {
            let x = layout.decode(i).coords;
            let j = x.iter().sum::<usize>() % n;
            (x, j)
        })
        .collect()
}

fn lift(x: &[usize], j: usize) -> Vec<usize> {
    let n = x.len();
    x.iter()
        .enumerate()
        .map(|(i, &v)| if i == j { n + v } else { v })
        .collect()
}

fn bound(size: usize, n: usize) -> f64 {
    (size as f64).powf(1.0 / n as f64)
}

fn verify_clique(mg: &Graph, vertices: &[Vec<usize>]) -> bool {
    vertices.iter().enumerate().all(|(a, x)| {
        vertices[a + 1..]
            .iter()
            .all(|y| x != y && power_adjacent(mg, x, y))
    })
}

fn verify_transitive(md: &Digraph, order: &[Vec<usize>]) -> bool {
    order.iter().enumerate().all(|(a, x)| {
        order[a + 1..]
            .iter()
            .all(|y| x != y && power_arc(md, x, y))
    })
}

fn build(n: usize, extend: bool) -> Result<LiftedCliqueSet> {
    let count = check_n(n)?;
    let mut vertices = Vec::with_capacity(count + 1);
    let mut residue_classes = Vec::with_capacity(count + 1);
    for (x, j) in base_sequences(n, count) {
        vertices.push(lift(&x, j));
        residue_classes.push(Some(j));
    }
    if extend {
        vertices.push(vec![2 * n; n]);
        residue_classes.push(None);
    }
    let mg = mycielskian(&complete(n)?, 2)?;
    let verified = verify_clique(&mg, &vertices);
    if !verified {
        return Err(Error::Certificate(format!(
            "lifted set for n = {n} is not a clique"
        )));
    }
    Ok(LiftedCliqueSet {
        n,
        base: "complete".into(),
        bound: bound(vertices.len(), n),
        vertices,
        residue_classes,
        extended: extend,
        verified,
    })
}

/// The `n^n`-clique in `[M(K_n) ∖ z]^n`.
pub fn lifted_clique(n: usize) -> Result<LiftedCliqueSet> {
    build(n, false)
}

/// [`lifted_clique`] plus the all-apex sequence: an `(n^n + 1)`-clique in
/// `[M(K_n)]^n`, so `C_OR(M(K_n)) ≥ (n^n+1)^{1/n} > n`.
pub fn extended_clique(n: usize) -> Result<LiftedCliqueSet> {
    build(n, true)
}

/// Order `vertices` so every earlier element sends an arc to every later
/// one: by digit sum, then lexicographically, falling back to a greedy
/// source-first order when that fails.
fn transitive_order(
    md: &Digraph,
    mut items: Vec<(Vec<usize>, Vec<usize>, usize)>,
) -> Option<Vec<(Vec<usize>, Vec<usize>, usize)>> {
    items.sort_by(|a, b| {
        let (sa, sb) = (a.1.iter().sum::<usize>(), b.1.iter().sum::<usize>());
        sa.cmp(&sb).then_with(|| a.1.cmp(&b.1))
    });
    let lifted: Vec<Vec<usize>> = items.iter().map(|it| it.0.clone()).collect();
    if verify_transitive(md, &lifted) {
        return Some(items);
    }
    let mut ordered = Vec::with_capacity(items.len());
    while !items.is_empty() {
        let k = (0..items.len()).find(|&k| {
            items
                .iter()
                .enumerate()
                .all(|(l, other)| l == k || power_arc(md, &items[k].0, &other.0))
        })?;
        ordered.push(items.remove(k));
    }
    Some(ordered)
}

/// The lifted set over `M(T_n)` in transitive order, with the all-apex
/// sequence first when `extend` is set.
pub fn lifted_transitive_clique(n: usize, extend: bool) -> Result<LiftedCliqueSet> {
    let count = check_n(n)?;
    let md = mycielskian_digraph(&transitive_tournament(n)?, 2)?;
    let items: Vec<_> = base_sequences(n, count)
        .into_iter()
        .map(|(x, j)| (lift(&x, j), x, j))
        .collect();
    let ordered = transitive_order(&md, items).ok_or_else(|| {
        Error::Certificate(format!("no transitive order found for n = {n}"))
    })?;
    let mut vertices = Vec::with_capacity(count + 1);
    let mut residue_classes = Vec::with_capacity(count + 1);
    if extend {
        vertices.push(vec![2 * n; n]);
        residue_classes.push(None);
    }
    for (v, _, j) in ordered {
        vertices.push(v);
        residue_classes.push(Some(j));
    }
    let verified = verify_transitive(&md, &vertices);
    if !verified {
        return Err(Error::Certificate(format!(
            "ordered set for n = {n} is not a transitive clique"
        )));
    }
    Ok(LiftedCliqueSet {
        n,
        base: "tournament".into(),
        bound: bound(vertices.len(), n),
        vertices,
        residue_classes,
        extended: extend,
        verified,
    })
}

/// Exhaustive search for an `n^t`-clique in `[M_r(K_n) ∖ z]^t` all of whose
/// vertices have a coordinate at level `r−1`. `Ok(true)` means none exists.
/// A search that runs out of budget returns [`Error::Inconclusive`].
pub fn no_lifted_clique_check(n: usize, r: usize, t: usize, opts: SearchOptions) -> Result<bool> {
    if n < 3 || r < 3 {
        return Err(Error::domain(format!(
            "check needs n >= 3 and r >= 3, got n = {n}, r = {r}"
        )));
    }
    if t == 0 {
        return Err(Error::domain("power exponent must be at least 1"));
    }
    let inner = MycielskiLayout::new(n, r);
    let base = inner.order() - 1;
    let total = (base as u128).checked_pow(t as u32).unwrap_or(u128::MAX);
    let total = check_order(total)?;
    let target = n.pow(t as u32);
    let mg = mycielskian(&complete(n)?, r)?;
    let layout = PowerLayout::new(base, t);
    let candidates: Vec<Vec<usize>> = (0..total)
        .map(|i| layout.decode(i).coords)
        .filter(|c| {
            c.iter()
                .any(|&v| matches!(inner.label(v), VertexLabel::Base { level, .. } if level == r - 1))
        })
        .collect();
    if candidates.len() < target {
        return Ok(true);
    }
    let sub = Graph::from_fn(candidates.len(), |a, b| {
        power_adjacent(&mg, &candidates[a], &candidates[b])
    })?;
    let res = clique_number(&sub, opts)?;
    if res.size >= target {
        return Ok(false);
    }
    if !res.exhausted {
        return Err(Error::Inconclusive(format!(
            "search stopped after {} nodes with best clique {}",
            res.nodes, res.size
        )));
    }
    Ok(true)
}

/// A clique in `[M(G)]^{kN}` obtained by pushing the extended clique of
/// `[M(K_N)]^N` through `K_N → G^k` and `M(G^k) → [M(G)]^k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainedClique {
    pub k: usize,
    /// `N = ω(G^k)`.
    pub n: usize,
    /// Clique of `G^k` used for `K_N → G^k`, as flat power indices.
    pub base_clique: Vec<usize>,
    /// Coordinate lists of length `kN`, flat indices into `M(G)`.
    pub vertices: Vec<Vec<usize>>,
    /// `(N^N + 1)^{1/(kN)}`.
    pub bound: f64,
    pub verified: bool,
}

pub fn chained_clique(g: &Graph, k: usize, opts: SearchOptions) -> Result<ChainedClique> {
    let gk = or_power(g, k)?;
    let omega = clique_number(&gk, opts)?;
    if !omega.exhausted {
        return Err(Error::Inconclusive(format!(
            "clique search in the {k}-th power did not finish"
        )));
    }
    let big_n = omega.size;
    if big_n < 2 {
        return Err(Error::domain("chaining needs an edge in the base graph"));
    }
    let ext = extended_clique(big_n)?;
    let knn = MycielskiLayout::new(big_n, 2);
    let gk_layout = MycielskiLayout::new(gk.order(), 2);
    let embedding = mycielski_power_embedding(g.order(), k)?;
    let map = |c: usize| -> usize {
        match knn.label(c) {
            VertexLabel::Apex => gk_layout.apex(),
            VertexLabel::Base { vertex, level } => gk_layout.index(VertexLabel::Base {
                vertex: omega.witness[vertex],
                level,
            }),
        }
    };
    let vertices: Vec<Vec<usize>> = ext
        .vertices
        .iter()
        .map(|x| {
            x.iter()
                .flat_map(|&c| embedding.images[map(c)].iter().copied())
                .collect()
        })
        .collect();
    let mg = mycielskian(g, 2)?;
    let verified = verify_clique(&mg, &vertices);
    if !verified {
        return Err(Error::Certificate("chained set is not a clique".into()));
    }
    Ok(ChainedClique {
        k,
        n: big_n,
        base_clique: omega.witness,
        bound: bound(vertices.len(), k * big_n),
        vertices,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n2_matches_hand_enumeration() {
        let c = lifted_clique(2).unwrap();
        // (0,1)(0,0), (0,0)(1,1), (1,0)(0,1), (1,1)(1,0)
        assert_eq!(c.vertices, vec![vec![2, 0], vec![0, 3], vec![1, 2], vec![3, 1]]);
        assert_eq!(c.residue_classes, vec![Some(0), Some(1), Some(1), Some(0)]);
    }

    #[test]
    fn extended_bound_exceeds_n() {
        for n in 2..=4 {
            let c = extended_clique(n).unwrap();
            assert_eq!(c.size(), n.pow(n as u32) + 1);
            assert!(c.verified && c.bound > n as f64);
        }
    }

    #[test]
    fn small_n_rejected() {
        assert!(lifted_clique(1).unwrap_err().is_domain());
        assert!(no_lifted_clique_check(2, 2, 2, SearchOptions::default())
            .unwrap_err()
            .is_domain());
    }

    #[test]
    fn transitive_apex_first() {
        let c = lifted_transitive_clique(2, true).unwrap();
        assert_eq!(c.vertices[0], vec![4, 4]);
        assert_eq!(c.size(), 5);
    }
}
