//! Exact clique search: ω, ω_s and ω_tr.
//!
//! The undirected solver is a bitset branch and bound in the style of
//! Tomita's MCQ: vertices are renumbered by degeneracy (densest core first),
//! each node greedily colours its candidate set and branches on candidates in
//! decreasing colour, pruning when `|R| + colour` cannot beat the incumbent.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::Result;
use crate::graph::{Digraph, Graph};

/// Node budget and parallelism shared by the exact searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes before giving up.
    pub node_limit: u64,
    /// Worker threads for root-level branch splitting.
    pub threads: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_limit: 200_000_000,
            threads: 1,
        }
    }
}

impl SearchOptions {
    pub fn with_limit(node_limit: u64) -> Self {
        SearchOptions {
            node_limit,
            ..Self::default()
        }
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueResult {
    pub size: usize,
    /// Sorted for undirected cliques; in transitive order for ω_tr.
    pub witness: Vec<usize>,
    /// True iff the search ran to completion, so `size` is optimal.
    pub exhausted: bool,
    pub nodes: u64,
}

/// Smallest-last ordering, returned densest core first. Ties go to the lower
/// vertex index.
pub fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .expect("vertex left");
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order.reverse();
    order
}

/// Greedy sequential colouring of `p` in index order. Returns vertices with
/// their colour, colours non-decreasing.
fn colour_sort(adj: &[BitSet], p: &BitSet) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(p.count());
    let mut uncoloured = p.clone();
    let mut colour = 0;
    while !uncoloured.is_empty() {
        colour += 1;
        let mut q = uncoloured.clone();
        while let Some(v) = q.first() {
            q.remove(v);
            q.difference_with(&adj[v]);
            uncoloured.remove(v);
            out.push((v, colour));
        }
    }
    out
}

struct Shared<'a> {
    adj: &'a [BitSet],
    best: AtomicUsize,
    nodes: AtomicU64,
    limit: u64,
    aborted: AtomicBool,
}

struct Local {
    best: Vec<usize>,
    current: Vec<usize>,
}

impl Shared<'_> {
    fn tick(&self) -> bool {
        if self.nodes.fetch_add(1, Ordering::Relaxed) >= self.limit {
            self.aborted.store(true, Ordering::Relaxed);
        }
        !self.aborted.load(Ordering::Relaxed)
    }

    fn need(&self, local: &Local) -> usize {
        (local.best.len() + 1).max(self.best.load(Ordering::Relaxed))
    }

    fn record(&self, local: &mut Local) {
        if local.current.len() > local.best.len() {
            local.best = local.current.clone();
            self.best.fetch_max(local.best.len(), Ordering::Relaxed);
        }
    }

    fn expand(&self, local: &mut Local, p: BitSet) {
        if !self.tick() {
            return;
        }
        let coloured = colour_sort(self.adj, &p);
        let mut p = p;
        for &(v, colour) in coloured.iter().rev() {
            if local.current.len() + colour < self.need(local) {
                return;
            }
            local.current.push(v);
            let next = p.intersection(&self.adj[v]);
            if next.is_empty() {
                self.record(local);
            } else {
                self.expand(local, next);
            }
            local.current.pop();
            p.remove(v);
            if self.aborted.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}

/// Maximum clique of `g`.
pub fn clique_number(g: &Graph, opts: SearchOptions) -> Result<CliqueResult> {
    let n = g.order();
    if n == 0 {
        return Ok(CliqueResult {
            size: 0,
            witness: vec![],
            exhausted: true,
            nodes: 0,
        });
    }
    let order = degeneracy_order(g);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let adj: Vec<BitSet> = order
        .iter()
        .map(|&v| {
            let mut row = BitSet::new(n);
            for &w in g.neighbors(v) {
                row.insert(pos[w]);
            }
            row
        })
        .collect();
    let shared = Shared {
        adj: &adj,
        best: AtomicUsize::new(0),
        nodes: AtomicU64::new(0),
        limit: opts.node_limit,
        aborted: AtomicBool::new(false),
    };

    // Root branches in sequential processing order: branch k takes vertex
    // v_k with the candidates not yet branched on.
    let root = colour_sort(&adj, &BitSet::full(n));
    let mut remaining = BitSet::full(n);
    let mut branches = Vec::with_capacity(n);
    for &(v, colour) in root.iter().rev() {
        branches.push((v, colour, remaining.intersection(&adj[v])));
        remaining.remove(v);
    }

    let run_branch = |k: usize, local: &mut Local| {
        let (v, colour, ref cand) = branches[k];
        if colour < shared.need(local) || !shared.tick() {
            return;
        }
        local.current.push(v);
        if cand.is_empty() {
            shared.record(local);
        } else {
            shared.expand(local, cand.clone());
        }
        local.current.pop();
    };

    let threads = opts.threads.max(1).min(branches.len().max(1));
    let results: Vec<Option<Vec<usize>>> = if threads == 1 {
        let mut local = Local {
            best: vec![],
            current: vec![],
        };
        let mut out = vec![None; branches.len()];
        for k in 0..branches.len() {
            let before = local.best.len();
            run_branch(k, &mut local);
            if local.best.len() > before {
                out[k] = Some(local.best.clone());
            }
            if shared.aborted.load(Ordering::Relaxed) {
                break;
            }
        }
        out
    } else {
        let next = AtomicUsize::new(0);
        let slots: Vec<Mutex<Option<Vec<usize>>>> =
            (0..branches.len()).map(|_| Mutex::new(None)).collect();
        std::thread::scope(|s| {
            for _ in 0..threads {
                s.spawn(|| loop {
                    let k = next.fetch_add(1, Ordering::Relaxed);
                    if k >= branches.len() || shared.aborted.load(Ordering::Relaxed) {
                        break;
                    }
                    let mut local = Local {
                        best: vec![],
                        current: vec![],
                    };
                    run_branch(k, &mut local);
                    if !local.best.is_empty() {
                        *slots[k].lock().expect("poisoned") = Some(local.best);
                    }
                });
            }
        });
        slots
            .into_iter()
            .map(|m| m.into_inner().expect("poisoned"))
            .collect()
    };

    // Largest size wins; among equals the earliest branch, which is the
    // witness the sequential search would report.
    let mut best: Vec<usize> = vec![];
    for w in results.into_iter().flatten() {
        if w.len() > best.len() {
            best = w;
        }
    }
    let mut witness: Vec<usize> = best.iter().map(|&i| order[i]).collect();
    witness.sort_unstable();
    assert!(g.is_clique(&witness), "clique search produced an invalid witness");
    Ok(CliqueResult {
        size: witness.len(),
        witness,
        exhausted: !shared.aborted.load(Ordering::Relaxed),
        nodes: shared.nodes.load(Ordering::Relaxed),
    })
}

/// Symmetric clique number: cliques of the graph of antiparallel pairs.
pub fn symmetric_clique_number(d: &Digraph, opts: SearchOptions) -> Result<CliqueResult> {
    clique_number(&d.symmetric_part(), opts)
}

struct TransitiveSearch<'a> {
    d: &'a Digraph,
    und: Vec<BitSet>,
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    limit: u64,
    aborted: bool,
}

impl TransitiveSearch<'_> {
    /// `cand` holds the vertices receiving arcs from every vertex of the
    /// current chain; any of them may come next.
    fn expand(&mut self, cand: &BitSet) {
        self.nodes += 1;
        if self.nodes > self.limit {
            self.aborted = true;
            return;
        }
        // Unlike the undirected search, a vertex stays a candidate after its
        // branch (chains placing it later than the next element differ), so
        // only the colour count of the whole candidate set bounds every branch.
        let colours = colour_sort(&self.und, cand).last().map_or(0, |&(_, c)| c);
        if self.current.len() + colours <= self.best.len() {
            return;
        }
        for v in cand.iter() {
            self.current.push(v);
            let next = cand.intersection(self.d.out_row(v));
            if next.is_empty() {
                if self.current.len() > self.best.len() {
                    self.best = self.current.clone();
                }
            } else {
                self.expand(&next);
            }
            self.current.pop();
            if self.aborted || self.current.len() + colours <= self.best.len() {
                return;
            }
        }
    }
}

/// Transitive clique number: the longest sequence with an arc from each
/// element to every later one. The witness is returned in that order.
pub fn transitive_clique_number(d: &Digraph, opts: SearchOptions) -> Result<CliqueResult> {
    let n = d.order();
    let und = d.underlying();
    let mut search = TransitiveSearch {
        d,
        und: (0..n).map(|v| und.row(v).clone()).collect(),
        best: vec![],
        current: vec![],
        nodes: 0,
        limit: opts.node_limit,
        aborted: false,
    };
    if n > 0 {
        search.expand(&BitSet::full(n));
    }
    assert!(
        d.is_transitive_clique(&search.best),
        "transitive clique search produced an invalid witness"
    );
    Ok(CliqueResult {
        size: search.best.len(),
        witness: search.best,
        exhausted: !search.aborted,
        nodes: search.nodes,
    })
}
