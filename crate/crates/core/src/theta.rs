//! The complementary Lovász theta number `ϑ̄(G) = ϑ(Ḡ)`.
//!
//! Primal program:
//!
//! ```text
//! maximize ⟨J, X⟩  s.t.  tr X = 1,  X_ij = 0 for every non-edge ij of G,  X ⪰ 0
//! ```
//!
//! solved by the alternating-direction augmented Lagrangian method of Wen,
//! Goldfarb and Yin on the dual: each iteration updates the dual multipliers
//! in closed form (the constraint operator has orthogonal rows), projects onto
//! the PSD cone through a dense eigendecomposition and takes a multiplier step.
//!
//! At the optimum the dual slack is `S = ϑI − J − Y` with `Y` supported on
//! non-edges, so `S/(ϑ−1)` is the Gram matrix of a strict vector colouring.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{dot, eigh, norm, Matrix};

/// Each iteration costs a dense eigendecomposition, so larger inputs are
/// refused up front.
pub const MAX_THETA_VERTICES: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaOptions {
    /// Stopping tolerance on the relative primal residual, dual residual and
    /// duality gap.
    pub tol: f64,
    pub max_iterations: usize,
    /// Initial augmented Lagrangian penalty, adapted during the run.
    pub penalty: f64,
}

impl Default for ThetaOptions {
    fn default() -> Self {
        ThetaOptions {
            tol: 1e-7,
            max_iterations: 200_000,
            penalty: 1.0,
        }
    }
}

impl ThetaOptions {
    pub fn with_tol(tol: f64) -> Self {
        ThetaOptions {
            tol,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ThetaSolution {
    pub value: f64,
    /// Primal matrix `X`.
    pub primal: Matrix,
    /// Dual slack `S = ϑI − J − Y`.
    pub dual_slack: Matrix,
    /// Dual objective, an upper bound on ϑ̄ up to the dual residual.
    pub dual_value: f64,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub gap: f64,
    pub iterations: usize,
    /// Largest of the three stopping measures.
    pub tolerance_achieved: f64,
}

struct Constraints {
    n: usize,
    /// Non-edges `i < j` of G.
    pairs: Vec<(usize, usize)>,
}

impl Constraints {
    /// `A(X)`: trace, then `√2·X_ij` per non-edge (unit-norm rows).
    fn apply(&self, x: &Matrix) -> Vec<f64> {
        let mut out = Vec::with_capacity(1 + self.pairs.len());
        out.push(x.trace());
        let s = std::f64::consts::SQRT_2;
        out.extend(
            self.pairs
                .iter()
                .map(|&(i, j)| 0.5 * s * (x[(i, j)] + x[(j, i)])),
        );
        out
    }

    /// `A*(y)`.
    fn adjoint(&self, y: &[f64]) -> Matrix {
        let mut m = Matrix::zeros(self.n);
        for i in 0..self.n {
            m[(i, i)] = y[0];
        }
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            m[(i, j)] = h * y[k + 1];
            m[(j, i)] = h * y[k + 1];
        }
        m
    }

    /// Diagonal of `AA*`.
    fn gram_diag(&self, k: usize) -> f64 {
        if k == 0 {
            self.n as f64
        } else {
            1.0
        }
    }
}

const BALANCE: f64 = 3.0;
const BALANCE_STREAK: i32 = 2;
const MIN_PENALTY: f64 = 1e-4;
const MAX_PENALTY: f64 = 1e4;

fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.dim();
    Matrix::from_fn(n, |i, j| a[(i, j)] - b[(i, j)])
}

/// Solve for `ϑ̄(G)`. Edgeless graphs return exactly 1 without iterating.
pub fn theta_bar(g: &Graph, opts: ThetaOptions) -> Result<ThetaSolution> {
    let n = g.order();
    if n == 0 {
        return Err(Error::domain("theta needs at least one vertex"));
    }
    if n > MAX_THETA_VERTICES {
        return Err(Error::TooLarge {
            what: "graph for the theta solver",
            size: n as u128,
            limit: MAX_THETA_VERTICES as u128,
        });
    }
    if !(1e-10..=1e-3).contains(&opts.tol) {
        return Err(Error::domain(format!(
            "tolerance {} outside [1e-10, 1e-3]",
            opts.tol
        )));
    }
    if g.is_edgeless() {
        let mut x = Matrix::zeros(n);
        x[(0, 0)] = 1.0;
        // ϑ = 1 with Y = −(J − I) on every pair leaves a zero slack.
        let s = Matrix::zeros(n);
        return Ok(ThetaSolution {
            value: 1.0,
            primal: x,
            dual_slack: s,
            dual_value: 1.0,
            primal_residual: 0.0,
            dual_residual: 0.0,
            gap: 0.0,
            iterations: 0,
            tolerance_achieved: 0.0,
        });
    }

    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !g.adjacent(i, j))
        .collect();
    let cons = Constraints { n, pairs };
    let m = 1 + cons.pairs.len();
    let mut b = vec![0.0; m];
    b[0] = 1.0;
    let c = Matrix::from_fn(n, |_, _| -1.0);
    let c_norm = c.frobenius();
    let mut mu = opts.penalty;
    // Consecutive checks with one residual dominating the other.
    let mut streak: i32 = 0;

    let mut x = Matrix::identity(n);
    x.scale(1.0 / n as f64);
    let mut s = Matrix::zeros(n);
    let mut y = vec![0.0; m];
    let mut best = (f64::INFINITY, 0.0, 0.0, 0.0);

    for it in 1..=opts.max_iterations {
        // y = −(AA*)⁻¹ (μ(A(X) − b) + A(S − C))
        let ax = cons.apply(&x);
        let asc = cons.apply(&sub(&s, &c));
        for k in 0..m {
            y[k] = -(mu * (ax[k] - b[k]) + asc[k]) / cons.gram_diag(k);
        }
        // V = C − A*(y) − μX;  S = V₊;  X = (S − V)/μ
        let aty = cons.adjoint(&y);
        let v = Matrix::from_fn(n, |i, j| c[(i, j)] - aty[(i, j)] - mu * x[(i, j)]);
        let eig = eigh(&v);
        s = eig.reconstruct(|l| l.max(0.0));
        x = eig.reconstruct(|l| (-l).max(0.0) / mu);

        if it % 10 != 0 && it != opts.max_iterations {
            continue;
        }
        let ax = cons.apply(&x);
        let pres = norm(&ax.iter().zip(&b).map(|(a, b)| a - b).collect::<Vec<_>>())
            / (1.0 + norm(&b));
        let aty = cons.adjoint(&y);
        let dres = sub(&Matrix::from_fn(n, |i, j| aty[(i, j)] + s[(i, j)]), &c).frobenius()
            / (1.0 + c_norm);
        let pobj = -dot(c.as_slice(), x.as_slice());
        let dobj = -dot(&b, &y);
        let gap = (pobj - dobj).abs() / (1.0 + pobj.abs() + dobj.abs());
        let worst = pres.max(dres).max(gap);
        if worst < best.0 {
            best = (worst, pobj, pres, dres);
        }
        if worst < opts.tol {
            return Ok(ThetaSolution {
                value: pobj,
                primal: x,
                dual_slack: s,
                dual_value: dobj,
                primal_residual: pres,
                dual_residual: dres,
                gap,
                iterations: it,
                tolerance_achieved: worst,
            });
        }
        // Residual balancing: a larger penalty pushes harder on primal
        // feasibility, a smaller one on dual feasibility.
        streak = if pres > BALANCE * dres {
            streak.max(0) + 1
        } else if dres > BALANCE * pres {
            streak.min(0) - 1
        } else {
            0
        };
        if streak >= BALANCE_STREAK && mu < MAX_PENALTY {
            mu *= 2.0;
            streak = 0;
        } else if streak <= -BALANCE_STREAK && mu > MIN_PENALTY {
            mu /= 2.0;
            streak = 0;
        }
    }
    Err(Error::NotConverged {
        iterations: opts.max_iterations,
        best_value: best.1,
        primal_residual: best.2,
        dual_residual: best.3,
    })
}

/// Unit vectors in `R^d` with value `t`: a strict vector `t`-colouring when
/// every edge has inner product `−1/(t−1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VectorColoring {
    pub t: f64,
    pub dim: usize,
    pub vectors: Vec<Vec<f64>>,
}

impl VectorColoring {
    pub fn new(t: f64, vectors: Vec<Vec<f64>>) -> Result<Self> {
        let dim = vectors.first().map_or(0, Vec::len);
        if vectors.iter().any(|v| v.len() != dim) {
            return Err(Error::domain("vectors must share one dimension"));
        }
        Ok(VectorColoring { t, dim, vectors })
    }

    /// Largest deviation of a vector norm from 1.
    pub fn norm_error(&self) -> f64 {
        self.vectors
            .iter()
            .map(|v| (norm(v) - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Largest deviation of an edge inner product from `−1/(t−1)`; zero for
    /// edgeless graphs, where no target exists.
    pub fn edge_error(&self, g: &Graph) -> f64 {
        if g.is_edgeless() {
            return 0.0;
        }
        let target = -1.0 / (self.t - 1.0);
        g.edges()
            .map(|(i, j)| (dot(&self.vectors[i], &self.vectors[j]) - target).abs())
            .fold(0.0, f64::max)
    }

    pub fn is_valid(&self, g: &Graph, tol: f64) -> bool {
        self.vectors.len() == g.order() && self.norm_error() <= tol && self.edge_error(g) <= tol
    }
}

/// Factor the Gram matrix `S/(ϑ−1)` of the dual slack into unit vectors.
pub fn extract_vector_coloring(sol: &ThetaSolution, g: &Graph) -> Result<VectorColoring> {
    let n = g.order();
    if sol.tolerance_achieved > 1e-6 {
        return Err(Error::domain(format!(
            "solution tolerance {:.1e} too loose to extract a colouring",
            sol.tolerance_achieved
        )));
    }
    if g.is_edgeless() {
        return VectorColoring::new(1.0, vec![vec![1.0]; n]);
    }
    let t = sol.value;
    let mut gram = sol.dual_slack.clone();
    gram.scale(1.0 / (t - 1.0));
    let eig = eigh(&gram);
    if eig.min() < -1e-4 {
        return Err(Error::domain(format!(
            "Gram matrix too far from PSD (λ_min = {:.3e})",
            eig.min()
        )));
    }
    let scale = eig.max().max(1.0);
    let keep: Vec<usize> = (0..n).filter(|&k| eig.values[k] > 1e-12 * scale).collect();
    let mut vectors: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            keep.iter()
                .rev()
                .map(|&k| eig.vectors[(i, k)] * eig.values[k].sqrt())
                .collect()
        })
        .collect();
    for v in &mut vectors {
        let len = norm(v);
        if len <= 1e-12 {
            return Err(Error::domain("zero vector in factored Gram matrix"));
        }
        v.iter_mut().for_each(|x| *x /= len);
    }
    VectorColoring::new(t, vectors)
}

/// `1 + λ_max(T)/|λ_min(T)|` for a nonzero symmetric `T` with zero diagonal
/// supported on `E(G)`.
pub fn spectral_ratio(t: &Matrix, g: &Graph) -> Result<f64> {
    check_edge_support(t, g)?;
    let eig = eigh(t);
    let lmin = eig.min();
    if lmin >= 0.0 {
        return Err(Error::domain("edge matrix has no negative eigenvalue"));
    }
    Ok(1.0 + eig.max() / lmin.abs())
}

pub fn check_edge_support(t: &Matrix, g: &Graph) -> Result<()> {
    let n = g.order();
    if t.dim() != n {
        return Err(Error::domain(format!(
            "matrix is {}x{}, graph has {n} vertices",
            t.dim(),
            t.dim()
        )));
    }
    let scale = t.max_abs();
    if scale == 0.0 {
        return Err(Error::domain("edge matrix is zero"));
    }
    let eps = 1e-12 * scale;
    if t.asymmetry() > eps {
        return Err(Error::domain("edge matrix is not symmetric"));
    }
    for i in 0..n {
        for j in 0..n {
            if (i == j || !g.adjacent(i, j)) && t[(i, j)].abs() > eps {
                return Err(Error::domain(format!(
                    "entry ({i},{j}) lies off the edge set"
                )));
            }
        }
    }
    Ok(())
}

/// Edge-supported matrix whose spectral ratio reaches `ϑ̄(G)` up to
/// `100·tol`.
///
/// The main candidate rescales the primal optimum: with `D = diag(X)`,
/// `T = D^{-1/2}(X − D)D^{-1/2}` has `λ_min ≥ −1` because `I + T ⪰ 0`, and
/// `λ_max ≥ ϑ − 1` from the Rayleigh quotient at `D^{1/2}𝟙`. The dual slack
/// and the adjacency matrix are tried as well; the best ratio wins.
pub fn optimal_edge_matrix(g: &Graph, sol: &ThetaSolution, tol: f64) -> Result<Matrix> {
    let n = g.order();
    if g.is_edgeless() {
        return Err(Error::domain("edgeless graph has no nonzero edge matrix"));
    }
    let restrict = |m: &Matrix| {
        Matrix::from_fn(n, |i, j| {
            if i != j && g.adjacent(i, j) {
                0.5 * (m[(i, j)] + m[(j, i)])
            } else {
                0.0
            }
        })
    };
    let x = &sol.primal;
    let dmax = (0..n).map(|i| x[(i, i)]).fold(0.0, f64::max);
    let scaled = Matrix::from_fn(n, |i, j| {
        let (di, dj) = (x[(i, i)], x[(j, j)]);
        if di <= 1e-9 * dmax || dj <= 1e-9 * dmax {
            0.0
        } else {
            x[(i, j)] / (di * dj).sqrt()
        }
    });
    let mut slack = restrict(&sol.dual_slack);
    slack.scale(-1.0);
    let adjacency = Matrix::from_row_major(n, g.adjacency_dense())?;
    let mut best: Option<(f64, Matrix)> = None;
    for cand in [restrict(&scaled), slack, adjacency] {
        if let Ok(r) = spectral_ratio(&cand, g) {
            if best.as_ref().is_none_or(|(b, _)| r > *b) {
                best = Some((r, cand));
            }
        }
    }
    match best {
        Some((r, m)) if r >= sol.value - 100.0 * tol => Ok(m),
        Some((r, _)) => Err(Error::domain(format!(
            "best edge matrix reaches ratio {r:.9}, below {:.9}; supply T manually",
            sol.value - 100.0 * tol
        ))),
        None => Err(Error::domain("no feasible edge matrix found; supply T manually")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, cycle, empty};

    #[test]
    fn edgeless_short_circuit() {
        let s = theta_bar(&empty(4).unwrap(), ThetaOptions::default()).unwrap();
        assert_eq!(s.value, 1.0);
        assert_eq!(s.iterations, 0);
    }

    #[test]
    fn small_values() {
        let o = ThetaOptions::default();
        let k3 = theta_bar(&complete(3).unwrap(), o).unwrap();
        assert!((k3.value - 3.0).abs() < 1e-5);
        let c5 = theta_bar(&cycle(5).unwrap(), o).unwrap();
        assert!((c5.value - 5f64.sqrt()).abs() < 1e-5, "{}", c5.value);
    }

    #[test]
    fn tolerance_range_checked() {
        let g = complete(2).unwrap();
        assert!(theta_bar(&g, ThetaOptions::with_tol(1e-2)).is_err());
        assert!(theta_bar(&g, ThetaOptions::with_tol(1e-12)).is_err());
    }

    #[test]
    fn ratio_rejects_bad_support() {
        let g = crate::families::path(3).unwrap();
        let bad = Matrix::from_fn(3, |i, j| if i != j { 1.0 } else { 0.0 });
        assert!(spectral_ratio(&bad, &g).is_err());
        assert!(spectral_ratio(&Matrix::zeros(3), &g).is_err());
    }
}
