//! Exact fractional chromatic number.
//!
//! `χ_f(G)` is solved through its dual, the maximum fractional clique
//! `max Σ y_v  s.t.  Σ_{v∈I} y_v ≤ 1` over maximal independent sets `I`.
//! The simplex multipliers of those rows are an optimal fractional colouring.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{solve_packing, Rational};

/// Largest graph accepted by [`fractional_chromatic`].
pub const MAX_FRACTIONAL_VERTICES: usize = 30;

/// Hard cap on the number of maximal independent sets enumerated.
pub const MAX_INDEPENDENT_SETS: usize = 1_000_000;

/// All maximal independent sets, each sorted, found as maximal cliques of the
/// complement by Bron–Kerbosch with Tomita pivoting.
pub fn maximal_independent_sets(g: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.order();
    let comp = g.complement();
    let rows: Vec<BitSet> = (0..n).map(|v| comp.row(v).clone()).collect();
    let mut out = Vec::new();
    let mut r = Vec::new();
    bron_kerbosch(&rows, &mut r, BitSet::full(n), BitSet::new(n), &mut out, cap)?;
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort();
    Ok(out)
}

fn bron_kerbosch(
    adj: &[BitSet],
    r: &mut Vec<usize>,
    mut p: BitSet,
    mut x: BitSet,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if p.is_empty() {
        if x.is_empty() {
            if out.len() >= cap {
                return Err(Error::TooLarge {
                    what: "maximal independent set family",
                    size: out.len() as u128 + 1,
                    limit: cap as u128,
                });
            }
            out.push(r.clone());
        }
        return Ok(());
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| (p.intersection_count(&adj[u]), std::cmp::Reverse(u)))
        .expect("non-empty");
    let mut branch = p.clone();
    branch.difference_with(&adj[pivot]);
    for v in branch.iter() {
        r.push(v);
        bron_kerbosch(adj, r, p.intersection(&adj[v]), x.intersection(&adj[v]), out, cap)?;
        r.pop();
        p.remove(v);
        x.insert(v);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FractionalChromatic {
    pub value: Rational,
    /// Optimal fractional colouring: independent sets with positive weight.
    pub colouring: Vec<(Vec<usize>, Rational)>,
    /// Optimal fractional clique, one weight per vertex.
    pub clique: Vec<Rational>,
    pub independent_sets: usize,
}

impl FractionalChromatic {
    /// Checks both LP certificates exactly: the colouring covers every vertex
    /// with total weight ≥ 1, the clique puts weight ≤ 1 on every maximal
    /// independent set in `sets`, and the two objective values agree.
    pub fn verify(&self, g: &Graph, sets: &[Vec<usize>]) -> bool {
        let n = g.order();
        let mut cover = vec![Rational::zero(); n];
        let mut total = Rational::zero();
        for (set, w) in &self.colouring {
            if w.is_negative() || !g.is_independent(set) {
                return false;
            }
            for &v in set {
                cover[v] += w;
            }
            total += w;
        }
        let one = Rational::one();
        let clique_total: Rational = self.clique.iter().sum();
        cover.iter().all(|c| *c >= one)
            && self.clique.iter().all(|y| !y.is_negative())
            && sets
                .iter()
                .all(|s| s.iter().map(|&v| &self.clique[v]).sum::<Rational>() <= one)
            && total == self.value
            && clique_total == self.value
    }
}

pub fn fractional_chromatic(g: &Graph) -> Result<FractionalChromatic> {
    let n = g.order();
    if n > MAX_FRACTIONAL_VERTICES {
        return Err(Error::TooLarge {
            what: "graph for fractional chromatic number",
            size: n as u128,
            limit: MAX_FRACTIONAL_VERTICES as u128,
        });
    }
    if n == 0 {
        return Ok(FractionalChromatic {
            value: Rational::zero(),
            colouring: vec![],
            clique: vec![],
            independent_sets: 0,
        });
    }
    let sets = maximal_independent_sets(g, MAX_INDEPENDENT_SETS)?;
    let one = Rational::one();
    let zero = Rational::zero();
    let a: Vec<Vec<Rational>> = sets
        .iter()
        .map(|s| {
            let mut row = vec![zero.clone(); n];
            for &v in s {
                row[v] = one.clone();
            }
            row
        })
        .collect();
    let b = vec![one.clone(); sets.len()];
    let c = vec![one.clone(); n];
    let sol = solve_packing(&a, &b, &c)?;
    let colouring = sets
        .iter()
        .zip(sol.dual)
        .filter(|(_, w)| !w.is_zero())
        .map(|(s, w)| (s.clone(), w))
        .collect();
    let out = FractionalChromatic {
        value: sol.value,
        colouring,
        clique: sol.primal,
        independent_sets: sets.len(),
    };
    assert!(out.verify(g, &sets), "fractional chromatic certificates disagree");
    Ok(out)
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, empty};

    #[test]
    fn cycle_sets() {
        let sets = maximal_independent_sets(&cycle(5).unwrap(), 100).unwrap();
        assert_eq!(sets.len(), 5);
        assert!(sets.iter().all(|s| s.len() == 2));
    }

    #[test]
    fn set_cap_enforced() {
        assert!(maximal_independent_sets(&cycle(5).unwrap(), 3).is_err());
    }

    #[test]
    fn known_values() {
        assert_eq!(fractional_chromatic(&complete(4).unwrap()).unwrap().value, rational(4, 1));
        assert_eq!(fractional_chromatic(&cycle(5).unwrap()).unwrap().value, rational(5, 2));
        assert_eq!(fractional_chromatic(&cycle(7).unwrap()).unwrap().value, rational(7, 3));
        assert_eq!(fractional_chromatic(&empty(3).unwrap()).unwrap().value, rational(1, 1));
    }

    #[test]
    fn size_guard() {
        assert!(matches!(
            fractional_chromatic(&empty(31).unwrap()),
            Err(Error::TooLarge { .. })
        ));
    }
}
