//! Mycielski constructions.
//!
//! `M_r(G)` has vertices `V(G) × {0..r−1}` plus an apex. Level 0 carries a
//! copy of `G`; consecutive levels are joined along the edges of `G`; the apex
//! is joined to the top level `r−1`. `r = 2` is the classical Mycielskian.
//!
//! Flat indices: `(v, level) ↦ level·n + v`, apex `↦ r·n`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{check_order, Digraph, Graph};
use crate::products::{power_adjacent, power_arc, PowerLayout};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VertexLabel {
    Base { vertex: usize, level: usize },
    Apex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MycielskiLayout {
    pub base: usize,
    pub levels: usize,
}

impl MycielskiLayout {
    pub fn new(base: usize, levels: usize) -> Self {
        MycielskiLayout { base, levels }
    }

    pub fn order(&self) -> usize {
        self.base * self.levels + 1
    }

    pub fn apex(&self) -> usize {
        self.base * self.levels
    }

    pub fn index(&self, label: VertexLabel) -> usize {
        match label {
            VertexLabel::Base { vertex, level } => {
                debug_assert!(vertex < self.base && level < self.levels);
                level * self.base + vertex
            }
            VertexLabel::Apex => self.apex(),
        }
    }

    pub fn label(&self, index: usize) -> VertexLabel {
        debug_assert!(index < self.order());
        if index == self.apex() {
            VertexLabel::Apex
        } else {
            VertexLabel::Base {
                vertex: index % self.base,
                level: index / self.base,
            }
        }
    }
}

fn layout_for(n: usize, r: usize) -> Result<MycielskiLayout> {
    if r == 0 {
        return Err(Error::domain("Mycielskian needs at least one level"));
    }
    check_order(n as u128 * r as u128 + 1)?;
    Ok(MycielskiLayout::new(n, r))
}

/// Generalized Mycielskian `M_r(G)`.
pub fn mycielskian(g: &Graph, r: usize) -> Result<Graph> {
    let layout = layout_for(g.order(), r)?;
    let idx = |vertex, level| layout.index(VertexLabel::Base { vertex, level });
    let mut edges = Vec::new();
    for (v, w) in g.edges() {
        edges.push((idx(v, 0), idx(w, 0)));
        for level in 0..r - 1 {
            edges.push((idx(v, level), idx(w, level + 1)));
            edges.push((idx(w, level), idx(v, level + 1)));
        }
    }
    for v in 0..g.order() {
        edges.push((layout.apex(), idx(v, r - 1)));
    }
    Graph::from_edges(layout.order(), edges)
}

/// Digraph Mycielskian: inter-level arcs inherit the orientation of `D`, and
/// the apex sends arcs to every top-level vertex.
pub fn mycielskian_digraph(d: &Digraph, r: usize) -> Result<Digraph> {
    let layout = layout_for(d.order(), r)?;
    let idx = |vertex, level| layout.index(VertexLabel::Base { vertex, level });
    let mut arcs = Vec::new();
    for (v, w) in d.arcs() {
        arcs.push((idx(v, 0), idx(w, 0)));
        for level in 0..r - 1 {
            arcs.push((idx(v, level), idx(w, level + 1)));
            arcs.push((idx(v, level + 1), idx(w, level)));
        }
    }
    for v in 0..d.order() {
        arcs.push((layout.apex(), idx(v, r - 1)));
    }
    Digraph::from_arcs(layout.order(), arcs)
}

/// The vertex map `M(G^t) → [M(G)]^t`: `(v₁…v_t, h) ↦ (v₁,h)…(v_t,h)` and
/// apex to the all-apex sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MycielskiPowerEmbedding {
    /// Layout of `M(G^t)`.
    pub source: MycielskiLayout,
    /// Layout of `[M(G)]^t`.
    pub target: PowerLayout,
    /// Image of each vertex of `M(G^t)`, as coordinates in `M(G)`.
    pub images: Vec<Vec<usize>>,
}

impl MycielskiPowerEmbedding {
    pub fn flat_images(&self) -> Vec<usize> {
        self.images.iter().map(|c| self.target.encode(c)).collect()
    }

    pub fn is_injective(&self) -> bool {
        let mut flat = self.flat_images();
        flat.sort_unstable();
        flat.windows(2).all(|w| w[0] != w[1])
    }

    /// Edges of `M(G^t)` correspond exactly to adjacent image pairs in
    /// `[M(G)]^t`. `source` is `M(G^t)`, `mg` is `M(G)`.
    pub fn is_induced_isomorphism(&self, source: &Graph, mg: &Graph) -> bool {
        let n = source.order();
        n == self.images.len()
            && (0..n).all(|x| {
                (x + 1..n).all(|y| {
                    source.adjacent(x, y) == power_adjacent(mg, &self.images[x], &self.images[y])
                })
            })
    }

    /// Digraph version of [`Self::is_induced_isomorphism`].
    pub fn is_induced_isomorphism_digraph(&self, source: &Digraph, md: &Digraph) -> bool {
        let n = source.order();
        n == self.images.len()
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    x == y
                        || source.has_arc(x, y)
                            == power_arc(md, &self.images[x], &self.images[y])
                })
            })
    }
}

/// Embedding of `M(G^t)` into `[M(G)]^t` for a base graph on `base_order`
/// vertices. The map depends only on `|V(G)|` and `t`, so it serves graphs and
/// digraphs alike.
pub fn mycielski_power_embedding(base_order: usize, t: usize) -> Result<MycielskiPowerEmbedding> {
    if t == 0 {
        return Err(Error::domain("power exponent must be at least 1"));
    }
    let power = PowerLayout::new(base_order, t);
    let power_order = power
        .order()
        .ok_or_else(|| Error::domain("power order overflows"))?;
    let source = layout_for(power_order, 2)?;
    let inner = MycielskiLayout::new(base_order, 2);
    let target = PowerLayout::new(inner.order(), t);
    let images = (0..source.order())
        .map(|x| match source.label(x) {
            VertexLabel::Apex => vec![inner.apex(); t],
            VertexLabel::Base { vertex, level } => power
                .decode(vertex)
                .coords
                .into_iter()
                .map(|v| inner.index(VertexLabel::Base { vertex: v, level }))
                .collect(),
        })
        .collect();
    Ok(MycielskiPowerEmbedding {
        source,
        target,
        images,
    })
}

pub fn embed_mycielski_power(g: &Graph, t: usize) -> Result<MycielskiPowerEmbedding> {
    mycielski_power_embedding(g.order(), t)
}
