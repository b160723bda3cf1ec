//! Certificates for both directions of `ϑ̄(M(G)) = m(ϑ̄(G))`.
//!
//! Upper bound: a strict vector `t`-colouring `(v_i)` of `G` lifts to an
//! `m`-colouring of `M(G)` in one more dimension:
//! `(i,0) ↦ (αv_i, x)`, `(i,1) ↦ (βv_i, −y)`, apex `↦ e = (0,…,0,1)`.
//!
//! Lower bound: from an edge matrix `T` of `G` with ratio `t`, the matrix
//!
//! ```text
//!       ⎡ δ/|λ_n|·T   T/|λ_n|      0         ⎤
//! T̂ =  ⎢ T/|λ_n|     0            (t−1)√η·v₁ ⎥
//!       ⎣ 0           (t−1)√η·v₁ᵀ  0         ⎦
//! ```
//!
//! is supported on `E(M(G))` and has ratio `1 + λ_max/|λ_min| = m`. Its
//! spectrum splits into a 3×3 block for `λ₁` and a 2×2 block for every other
//! eigenvalue of `T`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{solve_cubic_trig, CubicRoots};
use crate::graph::Graph;
use crate::linalg::{dot, eigenvalues, eigh, Matrix};
use crate::mycielski::{mycielskian, MycielskiLayout, VertexLabel};
use crate::theta::{check_edge_support, VectorColoring};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftParameters {
    pub t: f64,
    pub m: f64,
    pub v: f64,
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl LiftParameters {
    /// Residuals of
    /// `α²+x²=1, β²+y²=1, α²/(t−1) − x² = 1/(m−1), αβ/(t−1) + xy = 1/(m−1), y = 1/(m−1)`.
    pub fn system_residuals(&self) -> [f64; 5] {
        let Self {
            t,
            m,
            x,
            y,
            alpha,
            beta,
            ..
        } = *self;
        let target = 1.0 / (m - 1.0);
        [
            alpha * alpha + x * x - 1.0,
            beta * beta + y * y - 1.0,
            alpha * alpha / (t - 1.0) - x * x - target,
            alpha * beta / (t - 1.0) + x * y - target,
            y - target,
        ]
    }

    pub fn max_residual(&self) -> f64 {
        self.system_residuals()
            .iter()
            .fold(0.0, |a, r| a.max(r.abs()))
    }
}

pub fn lift_parameters(t: f64, m: f64) -> Result<LiftParameters> {
    if !(t > 1.0) || !(m > t) || m > t + 1.0 + 1e-12 {
        return Err(Error::domain(format!(
            "need 1 < t < m <= t + 1, got t = {t}, m = {m}"
        )));
    }
    let v = t - 1.0;
    let w = 1.0 / (m - 1.0);
    let slack = 1.0 - v * w;
    if slack < 0.0 {
        return Err(Error::domain(format!("1 - vw = {slack} is negative")));
    }
    let x = (slack / (v + 1.0)).sqrt();
    Ok(LiftParameters {
        t,
        m,
        v,
        w,
        x,
        y: w,
        alpha: (1.0 - x * x).sqrt(),
        beta: (1.0 - w * w).sqrt(),
    })
}

/// Largest violation of each of the four lift conditions.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftConditions {
    /// `|v_i*| = |u_i*| = 1` (and `|e| = 1`).
    pub unit_norms: f64,
    /// `⟨v_i*, v_j*⟩ = −1/(m−1)` on edges `ij`.
    pub base_edges: f64,
    /// `⟨v_i*, u_j*⟩ = −1/(m−1)` on edges `ij`.
    pub cross_edges: f64,
    /// `⟨u_i*, e⟩ = −1/(m−1)`.
    pub apex_edges: f64,
}

impl LiftConditions {
    pub fn max(&self) -> f64 {
        self.unit_norms
            .max(self.base_edges)
            .max(self.cross_edges)
            .max(self.apex_edges)
    }
}

/// Lift a strict vector colouring of `g` to one of `M(g)` with value `m`.
pub fn lift_coloring(
    coloring: &VectorColoring,
    g: &Graph,
    m: f64,
) -> Result<(VectorColoring, LiftParameters)> {
    if coloring.vectors.len() != g.order() || !coloring.is_valid(g, 1e-6) {
        return Err(Error::domain(format!(
            "input colouring invalid (norm error {:.2e}, edge error {:.2e})",
            coloring.norm_error(),
            if coloring.vectors.len() == g.order() {
                coloring.edge_error(g)
            } else {
                f64::NAN
            }
        )));
    }
    let p = lift_parameters(coloring.t, m)?;
    let n = g.order();
    let d = coloring.dim;
    let layout = MycielskiLayout::new(n, 2);
    let mut vectors = vec![Vec::new(); layout.order()];
    for (i, vi) in coloring.vectors.iter().enumerate() {
        let mut low: Vec<f64> = vi.iter().map(|c| p.alpha * c).collect();
        low.push(p.x);
        let mut high: Vec<f64> = vi.iter().map(|c| p.beta * c).collect();
        high.push(-p.y);
        vectors[layout.index(VertexLabel::Base { vertex: i, level: 0 })] = low;
        vectors[layout.index(VertexLabel::Base { vertex: i, level: 1 })] = high;
    }
    let mut e = vec![0.0; d + 1];
    e[d] = 1.0;
    vectors[layout.apex()] = e;
    Ok((VectorColoring::new(m, vectors)?, p))
}

/// Evaluate the four lift conditions on a colouring of `M(g)` laid out as
/// [`lift_coloring`] produces it.
pub fn lift_conditions(lifted: &VectorColoring, g: &Graph) -> LiftConditions {
    let n = g.order();
    let layout = MycielskiLayout::new(n, 2);
    let target = -1.0 / (lifted.t - 1.0);
    let vec_of = |v, level| &lifted.vectors[layout.index(VertexLabel::Base { vertex: v, level })];
    let e = &lifted.vectors[layout.apex()];
    let dev = |a: &[f64], b: &[f64]| (dot(a, b) - target).abs();
    let mut c = LiftConditions {
        unit_norms: lifted.norm_error(),
        base_edges: 0.0,
        cross_edges: 0.0,
        apex_edges: 0.0,
    };
    for (i, j) in g.edges() {
        c.base_edges = c.base_edges.max(dev(vec_of(i, 0), vec_of(j, 0)));
        c.cross_edges = c
            .cross_edges
            .max(dev(vec_of(i, 0), vec_of(j, 1)))
            .max(dev(vec_of(j, 0), vec_of(i, 1)));
    }
    for i in 0..n {
        c.apex_edges = c.apex_edges.max(dev(vec_of(i, 1), e));
    }
    c
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpectralCertificate {
    pub t: f64,
    pub m: f64,
    pub t_matrix: Matrix,
    pub t_hat: Matrix,
    /// Eigenvalues of `T`, descending: `λ₁ ≥ … ≥ λ_n`.
    pub lambdas: Vec<f64>,
    /// Unit eigenvector for `λ₁`, first nonzero entry positive.
    pub v1: Vec<f64>,
    /// Multiplicity of `λ₁` in `T` (diagnostic only).
    pub lambda1_multiplicity: usize,
    pub gamma: f64,
    pub delta: f64,
    pub eta: f64,
    pub expected_max: f64,
    pub expected_min: f64,
    /// Spectrum of `T̂`, ascending.
    pub spectrum: Vec<f64>,
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub ratio: f64,
}

/// `γ̂ = −(m−1)²(t−m+1)² / (2(t−1)t(m−2)(t−m))`.
pub fn gamma_hat(t: f64, m: f64) -> f64 {
    -(m - 1.0).powi(2) * (t - m + 1.0).powi(2) / (2.0 * (t - 1.0) * t * (m - 2.0) * (t - m))
}

/// `(γ, δ, η)` for a given `(t, m)`.
pub fn certificate_parameters(t: f64, m: f64) -> Result<(f64, f64, f64)> {
    if m == 2.0 || t == m || t == 1.0 || t == 0.0 {
        return Err(Error::domain(format!("degenerate parameters t = {t}, m = {m}")));
    }
    let gh = gamma_hat(t, m);
    if !(gh > 0.0) {
        return Err(Error::Certificate(format!("γ̂ = {gh} is not positive")));
    }
    let gamma = gh.sqrt();
    let s = gamma * (t - 1.0) / (m - 1.0);
    let delta = s - 1.0 / s;
    if !(delta > 0.0) {
        return Err(Error::Certificate(format!("δ = {delta} is not positive")));
    }
    let g3 = gamma.powi(3);
    let eta = (gamma * gamma * delta + g3 / (m - 1.0) - g3) / (delta * (m - 1.0));
    if !(eta > 0.0) {
        return Err(Error::Certificate(format!("η = {eta} is not positive")));
    }
    Ok((gamma, delta, eta))
}

/// Tolerance on `|spectral_ratio(T) − t|`.
const RATIO_SLACK: f64 = 1e-4;
/// Tolerance on the extreme eigenvalues of `T̂`.
const EIGEN_SLACK: f64 = 1e-7;

pub fn build_spectral_certificate(
    g: &Graph,
    t_matrix: &Matrix,
    t: f64,
    m: f64,
) -> Result<SpectralCertificate> {
    check_edge_support(t_matrix, g)?;
    let n = g.order();
    let eig = eigh(t_matrix);
    let lambdas: Vec<f64> = eig.values.iter().rev().copied().collect();
    let (l1, ln) = (lambdas[0], lambdas[n - 1]);
    if ln >= 0.0 {
        return Err(Error::domain("edge matrix has no negative eigenvalue"));
    }
    let ratio_t = 1.0 + l1 / ln.abs();
    if (ratio_t - t).abs() > RATIO_SLACK {
        return Err(Error::domain(format!(
            "edge matrix ratio {ratio_t} differs from t = {t}"
        )));
    }
    if !(m > t) {
        return Err(Error::domain(format!("need m > t, got t = {t}, m = {m}")));
    }
    let (gamma, delta, eta) = certificate_parameters(t, m)?;

    let mut v1 = eig.vector(n - 1);
    if let Some(&first) = v1.iter().find(|x| x.abs() > 1e-12) {
        if first < 0.0 {
            v1.iter_mut().for_each(|x| *x = -*x);
        }
    }
    let scale = l1.abs().max(ln.abs());
    let lambda1_multiplicity = lambdas
        .iter()
        .take_while(|&&l| (l1 - l).abs() <= 1e-9 * scale)
        .count();

    let layout = MycielskiLayout::new(n, 2);
    let size = layout.order();
    let apex = layout.apex();
    let abs_n = ln.abs();
    let spoke = (t - 1.0) * eta.sqrt();
    let mut t_hat = Matrix::zeros(size);
    for i in 0..n {
        for j in 0..n {
            let tij = t_matrix[(i, j)];
            t_hat[(i, j)] = delta / abs_n * tij;
            t_hat[(i, n + j)] = tij / abs_n;
            t_hat[(n + i, j)] = tij / abs_n;
        }
        t_hat[(n + i, apex)] = spoke * v1[i];
        t_hat[(apex, n + i)] = spoke * v1[i];
    }
    let mg = mycielskian(g, 2)?;
    check_edge_support(&t_hat, &mg)?;

    let spectrum = eigenvalues(&t_hat);
    let lambda_min = spectrum[0];
    let lambda_max = spectrum[size - 1];
    let expected_max = gamma * (t - 1.0);
    let expected_min = -gamma * (t - 1.0) / (m - 1.0);
    let cert = SpectralCertificate {
        t,
        m,
        t_matrix: t_matrix.clone(),
        t_hat,
        lambdas,
        v1,
        lambda1_multiplicity,
        gamma,
        delta,
        eta,
        expected_max,
        expected_min,
        ratio: 1.0 + lambda_max / lambda_min.abs(),
        spectrum,
        lambda_max,
        lambda_min,
    };
    if (lambda_max - expected_max).abs() > EIGEN_SLACK
        || (lambda_min - expected_min).abs() > EIGEN_SLACK
    {
        return Err(Error::Certificate(format!(
            "extreme eigenvalues ({lambda_min}, {lambda_max}) differ from expected ({expected_min}, {expected_max})"
        )));
    }
    Ok(cert)
}

impl SpectralCertificate {
    /// The blocks `T_1` (3×3) and `T_i` (2×2, `i ≥ 2`) of the spectral split.
    pub fn blocks(&self) -> Vec<Matrix> {
        let abs_n = self.lambdas.last().map_or(1.0, |l| l.abs());
        let spoke = (self.t - 1.0) * self.eta.sqrt();
        self.lambdas
            .iter()
            .enumerate()
            .map(|(i, &l)| {
                let s = l / abs_n;
                if i == 0 {
                    Matrix::from_rows(&[
                        vec![s * self.delta, s, 0.0],
                        vec![s, 0.0, spoke],
                        vec![0.0, spoke, 0.0],
                    ])
                    .expect("square")
                } else {
                    Matrix::from_rows(&[vec![s * self.delta, s], vec![s, 0.0]]).expect("square")
                }
            })
            .collect()
    }

    /// Roots of `μ³ − δμ² − (η+1)μ + ηδ` (the spectrum of `T_1*`), descending.
    pub fn t1_star_roots(&self) -> Result<CubicRoots> {
        let mut r = solve_cubic_trig(1.0, -self.delta, -(self.eta + 1.0), self.eta * self.delta)?;
        r.roots.sort_by(|a, b| b.total_cmp(a));
        Ok(r)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockSpectrumCheck {
    pub ok: bool,
    pub max_error: f64,
    /// First mismatching pair `(Sp(T̂), ⋃ Sp(T_i))` when `ok` is false.
    pub offending: Option<(f64, f64)>,
}

/// Sorted comparison of `Sp(T̂)` with the union of the block spectra.
pub fn verify_block_spectrum(cert: &SpectralCertificate) -> BlockSpectrumCheck {
    let mut union: Vec<f64> = cert.blocks().iter().flat_map(eigenvalues).collect();
    union.sort_by(f64::total_cmp);
    let mut max_error: f64 = 0.0;
    let mut offending = None;
    if union.len() != cert.spectrum.len() {
        return BlockSpectrumCheck {
            ok: false,
            max_error: f64::INFINITY,
            offending: None,
        };
    }
    for (&a, &b) in cert.spectrum.iter().zip(&union) {
        let err = (a - b).abs();
        if err > 1e-7 && offending.is_none() {
            offending = Some((a, b));
        }
        max_error = max_error.max(err);
    }
    BlockSpectrumCheck {
        ok: offending.is_none(),
        max_error,
        offending,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub eta_positive: bool,
    /// `(m−1)²/(t−1) ≤ γ²`.
    pub gamma_bound: bool,
    pub delta_positive: bool,
    /// Coefficients of `aγ̂² + bγ̂ + c` in `v = t−1`, `w = 1/(m−1)`.
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub discriminant: f64,
    /// `|b² − 4ac| ≤ 1e−8·b²`.
    pub discriminant_zero: bool,
    /// `|γ̂ + b/(2a)| ≤ 1e−8`.
    pub gamma_hat_matches: bool,
    pub passed: bool,
}

/// `(a, b, c)` with `v = t−1`, `w = 1/(m−1)`.
pub fn gamma_quadratic(t: f64, m: f64) -> (f64, f64, f64) {
    let v = t - 1.0;
    let w = 1.0 / (m - 1.0);
    let p = |i: i32, j: i32| v.powi(i) * w.powi(j);
    let a = -p(4, 5) + p(4, 4) - p(3, 5) + 2.0 * p(3, 4) - p(3, 3) + p(2, 4) - p(2, 3);
    let b = p(3, 3) + 2.0 * p(2, 3) - 2.0 * p(2, 2) + p(1, 3) - 2.0 * p(1, 2) + p(1, 1);
    let c = -p(1, 1) - w + 1.0;
    (a, b, c)
}

pub fn check_certificate_inequalities(
    t: f64,
    m: f64,
    gamma: f64,
    delta: f64,
    eta: f64,
) -> InequalityCheck {
    let (a, b, c) = gamma_quadratic(t, m);
    let discriminant = b * b - 4.0 * a * c;
    let eta_positive = eta > 0.0;
    let gamma_bound = (m - 1.0).powi(2) / (t - 1.0) <= gamma * gamma * (1.0 + 1e-12);
    let delta_positive = delta > 0.0;
    let discriminant_zero = discriminant.abs() <= 1e-8 * b * b;
    let gamma_hat_matches = (gamma * gamma + b / (2.0 * a)).abs() <= 1e-8;
    InequalityCheck {
        eta_positive,
        gamma_bound,
        delta_positive,
        a,
        b,
        c,
        discriminant,
        discriminant_zero,
        gamma_hat_matches,
        passed: eta_positive
            && gamma_bound
            && delta_positive
            && discriminant_zero
            && gamma_hat_matches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_parameters() {
        let (g, d, e) = certificate_parameters(2.0, 5f64.sqrt()).unwrap();
        assert!((g - 2.0).abs() < 1e-12);
        assert!((d - 1.0).abs() < 1e-12);
        assert!((e - 2.0).abs() < 1e-12);
    }

    #[test]
    fn k2_lift_values() {
        let p = lift_parameters(2.0, 5f64.sqrt()).unwrap();
        assert!((p.w - 0.809017).abs() < 1e-6);
        assert!((p.x - 0.309017).abs() < 1e-6);
        assert!((p.alpha - 0.951057).abs() < 1e-6);
        assert!((p.beta - 0.587785).abs() < 1e-6);
        assert!(p.max_residual() < 1e-12);
    }

    #[test]
    fn lift_rejects_bad_range() {
        assert!(lift_parameters(2.0, 1.9).is_err());
        assert!(lift_parameters(2.0, 3.5).is_err());
    }
}
