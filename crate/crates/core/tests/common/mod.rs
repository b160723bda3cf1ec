//! Independent oracles and property checks shared by the integration tests.
//!
//! The oracles here deliberately avoid the library's search code: plain
//! Bron–Kerbosch for cliques, naive backtracking for colourings, nalgebra for
//! eigenvalues.
#![allow(dead_code)]

use myctheta::chromatic::chromatic_number;
use myctheta::clique::{clique_number, SearchOptions};
use myctheta::formula::lpu_formula_rational;
use myctheta::fractional::fractional_chromatic;
use myctheta::linalg::Matrix;
use myctheta::mycielski::{embed_mycielski_power, mycielskian};
use myctheta::products::{complete_join, or_product, or_power};
use myctheta::theta::{theta_bar, ThetaOptions};
use myctheta::Graph;
use proptest::prelude::*;

/// Random graph on `1..=max_n` vertices, edge pattern uniform.
pub fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if it.next().unwrap() {
                        edges.push((i, j));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Random graph with a random spanning subgraph of it.
pub fn arb_graph_and_subgraph(max_n: usize) -> impl Strategy<Value = (Graph, Graph)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let m = g.edge_count();
        proptest::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let kept: Vec<_> = g
                .edges()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(e, _)| e)
                .collect();
            let h = Graph::from_edges(g.order(), kept).unwrap();
            (g.clone(), h)
        })
    })
}

pub fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.order();
    (0..n).map(|i| (0..n).map(|j| g.adjacent(i, j)).collect()).collect()
}

/// Clique number by Bron–Kerbosch without pivoting.
pub fn oracle_clique(g: &Graph) -> usize {
    fn bk(adj: &[Vec<bool>], r: usize, p: Vec<usize>, best: &mut usize) {
        if p.is_empty() {
            *best = (*best).max(r);
            return;
        }
        if r + p.len() <= *best {
            return;
        }
        for (k, &v) in p.iter().enumerate() {
            let next: Vec<usize> = p[k + 1..].iter().copied().filter(|&w| adj[v][w]).collect();
            bk(adj, r + 1, next, best);
        }
    }
    let adj = adjacency(g);
    let mut best = 0;
    bk(&adj, 0, (0..g.order()).collect(), &mut best);
    best
}

/// Smallest `k` admitting a proper `k`-colouring, by plain backtracking.
pub fn oracle_chromatic(g: &Graph) -> usize {
    fn colourable(adj: &[Vec<bool>], colours: &mut Vec<usize>, k: usize) -> bool {
        let v = colours.len();
        if v == adj.len() {
            return true;
        }
        // Symmetry breaking: vertex v may use at most one new colour.
        let used = colours.iter().copied().max().map_or(0, |c| c + 1);
        for c in 0..k.min(used + 1) {
            if (0..v).all(|u| !adj[v][u] || colours[u] != c) {
                colours.push(c);
                if colourable(adj, colours, k) {
                    return true;
                }
                colours.pop();
            }
        }
        false
    }
    let adj = adjacency(g);
    (0..=g.order())
        .find(|&k| colourable(&adj, &mut Vec::new(), k))
        .unwrap()
}

pub fn nalgebra_eigenvalues(m: &Matrix) -> Vec<f64> {
    let n = m.dim();
    let a = nalgebra::DMatrix::from_fn(n, n, |i, j| m[(i, j)]);
    let mut v: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn theta(g: &Graph) -> f64 {
    theta_bar(g, ThetaOptions::with_tol(1e-8)).unwrap().value
}

// Properties. Each returns `Err(message)` on violation so it can be used from
// both proptest and the acceptance harness.

pub fn prop_clique_preserved(g: &Graph) -> Result<(), String> {
    if g.is_edgeless() {
        return Ok(());
    }
    let mg = mycielskian(g, 2).unwrap();
    let (a, b) = (
        clique_number(g, SearchOptions::default()).unwrap().size,
        clique_number(&mg, SearchOptions::default()).unwrap().size,
    );
    if a != b || a != oracle_clique(g) {
        return Err(format!("ω(G) = {a}, ω(M(G)) = {b}, oracle {}", oracle_clique(g)));
    }
    Ok(())
}

pub fn prop_chromatic_increments(g: &Graph) -> Result<(), String> {
    let mg = mycielskian(g, 2).unwrap();
    let a = chromatic_number(g, SearchOptions::default()).unwrap().exact();
    let b = chromatic_number(&mg, SearchOptions::default()).unwrap().exact();
    let oracle = oracle_chromatic(g);
    if a != Some(oracle) || b != Some(oracle + 1) {
        return Err(format!("χ(G) = {a:?}, χ(M(G)) = {b:?}, oracle χ(G) = {oracle}"));
    }
    Ok(())
}

pub fn prop_fractional_formula(g: &Graph) -> Result<(), String> {
    let mg = mycielskian(g, 2).unwrap();
    let a = fractional_chromatic(g).unwrap().value;
    let b = fractional_chromatic(&mg).unwrap().value;
    let expected = lpu_formula_rational(&a).unwrap();
    if b != expected {
        return Err(format!("χ_f(G) = {a}, χ_f(M(G)) = {b}, expected {expected}"));
    }
    Ok(())
}

pub fn prop_theta_monotone(g: &Graph, h: &Graph) -> Result<(), String> {
    let (tg, th) = (theta(g), theta(h));
    if th > tg + 1e-5 {
        return Err(format!("ϑ̄(H) = {th} > ϑ̄(G) = {tg}"));
    }
    Ok(())
}

pub fn prop_embedding(g: &Graph, t: usize) -> Result<(), String> {
    let e = embed_mycielski_power(g, t).unwrap();
    let source = mycielskian(&or_power(g, t).unwrap(), 2).unwrap();
    let mg = mycielskian(g, 2).unwrap();
    if !e.is_injective() || !e.is_induced_isomorphism(&source, &mg) {
        return Err(format!("embedding fails for t = {t}"));
    }
    Ok(())
}

/// OR-multiplicativity, join additivity and normalization for ϑ̄.
pub fn prop_spectrum_axioms(f: &Graph, g: &Graph) -> Result<(), String> {
    let (tf, tg) = (theta(f), theta(g));
    let prod = theta(&or_product(f, g).unwrap());
    let join = theta(&complete_join(f, g).unwrap());
    if (prod - tf * tg).abs() > 1e-3 {
        return Err(format!("ϑ̄(F∗G) = {prod} vs {}", tf * tg));
    }
    if (join - (tf + tg)).abs() > 1e-3 {
        return Err(format!("ϑ̄(F⊕G) = {join} vs {}", tf + tg));
    }
    let k1 = theta(&Graph::empty(1).unwrap());
    if (k1 - 1.0).abs() > 1e-3 {
        return Err(format!("ϑ̄(K_1) = {k1}"));
    }
    Ok(())
}
