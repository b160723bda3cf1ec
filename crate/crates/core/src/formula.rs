//! Closed form for `ϑ̄(M(G))` in terms of `t = ϑ̄(G)`.
//!
//! `m(t)` is the largest root of
//! `t̂³ + (t−3)t̂² + (3−2t−t²)t̂ + (−t³+5t²−3t−1) = 0`, obtained from the
//! trigonometric formula for cubics with three real roots (branch `k = 0`):
//!
//! ```text
//! m(t) = (4/3)·t·cos((1/3)·arccos(1 − 27/(4t) + 27/(4t²))) − t/3 + 1
//! ```

use std::f64::consts::PI;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::Rational;

/// Slack allowed when an arccos argument leaves `[−1, 1]` by rounding.
const ACOS_SLACK: f64 = 1e-12;

fn clamped_acos(x: f64) -> Result<f64> {
    if x.abs() > 1.0 + ACOS_SLACK || x.is_nan() {
        return Err(Error::domain(format!("arccos argument {x} outside [-1, 1]")));
    }
    Ok(x.clamp(-1.0, 1.0).acos())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubicRoots {
    /// `x_k` for `k = 0, 1, 2`.
    pub roots: [f64; 3],
    pub p: f64,
    pub q: f64,
}

/// Roots of `ax³ + bx² + cx + d` when all three are real:
/// `x_k = 2√(−p/3)·cos(arccos((3q/2p)√(−3/p))/3 − 2πk/3) − b/(3a)`.
pub fn solve_cubic_trig(a: f64, b: f64, c: f64, d: f64) -> Result<CubicRoots> {
    if a == 0.0 {
        return Err(Error::domain("leading coefficient is zero"));
    }
    let p = (3.0 * a * c - b * b) / (3.0 * a * a);
    let q = (2.0 * b * b * b - 9.0 * a * b * c + 27.0 * a * a * d) / (27.0 * a * a * a);
    if p >= 0.0 {
        return Err(Error::domain(format!(
            "p = {p} is not negative; the cubic does not have three distinct real roots"
        )));
    }
    let phi = clamped_acos((3.0 * q / (2.0 * p)) * (-3.0 / p).sqrt())?;
    let amp = 2.0 * (-p / 3.0).sqrt();
    let shift = b / (3.0 * a);
    let root = |k: f64| amp * (phi / 3.0 - 2.0 * PI * k / 3.0).cos() - shift;
    Ok(CubicRoots {
        roots: [root(0.0), root(1.0), root(2.0)],
        p,
        q,
    })
}

/// `|ax³+bx²+cx+d| / max(|a|,|b|,|c|,|d|)`.
pub fn relative_residual(a: f64, b: f64, c: f64, d: f64, x: f64) -> f64 {
    let scale = a.abs().max(b.abs()).max(c.abs()).max(d.abs());
    (((a * x + b) * x + c) * x + d).abs() / scale
}

/// Coefficients `(a, b, c, d)` of the cubic satisfied by `m(t)`.
pub fn mycielski_cubic(t: f64) -> [f64; 4] {
    [
        1.0,
        t - 3.0,
        3.0 - 2.0 * t - t * t,
        -t * t * t + 5.0 * t * t - 3.0 * t - 1.0,
    ]
}

/// Left side of the cubic at `t̂ = m`.
pub fn cubic_residual(t: f64, m: f64) -> f64 {
    let [a, b, c, d] = mycielski_cubic(t);
    ((a * m + b) * m + c) * m + d
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FormulaResult {
    pub t: f64,
    pub m: f64,
    pub cubic_residual: f64,
    /// Branches `k = 1, 2`, discarded because both are at most 1.
    pub discarded: [f64; 2],
}

/// Branch `k` of the trigonometric expression for the roots.
pub fn formula_branch(t: f64, k: u32) -> Result<f64> {
    let arg = 1.0 - 27.0 / (4.0 * t) + 27.0 / (4.0 * t * t);
    let phi = clamped_acos(arg)?;
    Ok(4.0 / 3.0 * t * (phi / 3.0 - 2.0 * PI * k as f64 / 3.0).cos() - t / 3.0 + 1.0)
}

/// `ϑ̄(M(G))` from `t = ϑ̄(G)`, for `t ≥ 2`. Edgeless `G` (`t = 1`) is not
/// covered: there `M(G)` is a star plus isolated vertices and the answer is 2.
pub fn mycielski_theta_formula(t: f64) -> Result<FormulaResult> {
    if !(t >= 2.0) || !t.is_finite() {
        return Err(Error::domain(format!(
            "formula requires t >= 2, got {t}"
        )));
    }
    let m = formula_branch(t, 0)?;
    Ok(FormulaResult {
        t,
        m,
        cubic_residual: cubic_residual(t, m),
        discarded: [formula_branch(t, 1)?, formula_branch(t, 2)?],
    })
}

/// `ϑ̄(M(G))` from a numerically computed `t = ϑ̄(G)`: values within `slack`
/// of 1 give 2, values in `[2 − slack, 2)` are read as 2, anything else below
/// 2 is rejected.
pub fn mycielski_theta(t: f64, slack: f64) -> Result<f64> {
    if (t - 1.0).abs() <= slack {
        Ok(2.0)
    } else if t >= 2.0 - slack {
        mycielski_theta_formula(t.max(2.0)).map(|r| r.m)
    } else {
        Err(Error::domain(format!(
            "no closed form for t = {t} in (1, 2)"
        )))
    }
}

/// Both discarded branches are at most 1 (within 1e−12).
pub fn verify_root_selection(t: f64) -> Result<bool> {
    let r = mycielski_theta_formula(t)?;
    Ok(r.discarded.iter().all(|&x| x <= 1.0 + 1e-12))
}

/// `x + 1/x`, the fractional chromatic number of `M(G)` from that of `G`.
pub fn lpu_formula(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("argument must be positive, got {x}")));
    }
    Ok(x + 1.0 / x)
}

pub fn lpu_formula_rational(x: &Rational) -> Result<Rational> {
    if !x.is_positive() {
        return Err(Error::domain(format!("argument must be positive, got {x}")));
    }
    Ok(x + Rational::one() / x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_two_gives_sqrt5() {
        let r = mycielski_theta_formula(2.0).unwrap();
        assert!((r.m - 5f64.sqrt()).abs() < 1e-12);
        let mut d = r.discarded;
        d.sort_by(f64::total_cmp);
        assert!((d[0] + 5f64.sqrt()).abs() < 1e-12);
        assert!((d[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn below_two_rejected() {
        assert!(mycielski_theta_formula(1.5).is_err());
        assert!(mycielski_theta_formula(f64::NAN).is_err());
        assert_eq!(mycielski_theta(1.0, 0.0).unwrap(), 2.0);
        assert!((mycielski_theta(2.0 - 1e-9, 1e-6).unwrap() - 5f64.sqrt()).abs() < 1e-12);
        assert!(mycielski_theta(1.5, 1e-6).is_err());
    }

    #[test]
    fn odd_cubic() {
        let r = solve_cubic_trig(1.0, 0.0, -3.0, 0.0).unwrap();
        let s3 = 3f64.sqrt();
        assert!((r.roots[0] - s3).abs() < 1e-12);
        assert!(r.roots[1].abs() < 1e-12);
        assert!((r.roots[2] + s3).abs() < 1e-12);
    }

    #[test]
    fn complex_regime_rejected() {
        assert!(solve_cubic_trig(0.0, 1.0, 1.0, 1.0).is_err());
        assert!(solve_cubic_trig(1.0, 0.0, 1.0, 0.0).is_err());
        // p < 0 but one real root
        assert!(solve_cubic_trig(1.0, 0.0, -3.0, 5.0).is_err());
    }

    #[test]
    fn lpu() {
        use crate::fractional::rational;
        assert_eq!(lpu_formula_rational(&rational(5, 2)).unwrap(), rational(29, 10));
        assert_eq!(lpu_formula(1.0).unwrap(), 2.0);
        assert!(lpu_formula(0.0).is_err());
        assert!(lpu_formula_rational(&rational(-1, 2)).is_err());
    }
}
