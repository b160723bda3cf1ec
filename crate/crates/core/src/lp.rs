//! Exact simplex for packing programs
//! `max cᵀy  s.t.  Ay ≤ b, y ≥ 0` with `b ≥ 0`, in rational arithmetic.
//!
//! The slack basis is feasible at the origin, so no phase one is needed.
//! Entering and leaving variables follow Bland's rule, which rules out
//! cycling. The tableau is kept in condensed (Tucker) form: one row per
//! basic variable, one column per nonbasic variable.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `"p/q"` in lowest terms, denominator always written.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PackingSolution {
    pub value: Rational,
    /// Optimal `y`.
    pub primal: Vec<Rational>,
    /// Optimal multipliers `x ≥ 0` of the rows: `Aᵀx ≥ c`, `bᵀx = value`.
    pub dual: Vec<Rational>,
    pub pivots: usize,
}

/// Solve the packing program. `a` is given row by row.
pub fn solve_packing(
    a: &[Vec<Rational>],
    b: &[Rational],
    c: &[Rational],
) -> Result<PackingSolution> {
    let m = a.len();
    let n = c.len();
    if b.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(Error::domain("inconsistent LP dimensions"));
    }
    if b.iter().any(Signed::is_negative) {
        return Err(Error::domain("packing right-hand side must be non-negative"));
    }
    // Variable ids: 0..n structural, n..n+m slacks.
    let mut t: Vec<Vec<Rational>> = a.to_vec();
    let mut rhs: Vec<Rational> = b.to_vec();
    let mut obj: Vec<Rational> = c.to_vec();
    let mut z = Rational::zero();
    let mut col_var: Vec<usize> = (0..n).collect();
    let mut row_var: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0;

    loop {
        let entering = (0..n)
            .filter(|&j| obj[j].is_positive())
            .min_by_key(|&j| col_var[j]);
        let Some(j) = entering else { break };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][j].is_positive() {
                let ratio = &rhs[i] / &t[i][j];
                let better = match &leave {
                    None => true,
                    Some((k, r)) => ratio < *r || (ratio == *r && row_var[i] < row_var[*k]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((i, _)) = leave else {
            return Err(Error::domain("LP is unbounded"));
        };
        pivot(&mut t, &mut rhs, &mut obj, &mut z, i, j);
        std::mem::swap(&mut row_var[i], &mut col_var[j]);
        pivots += 1;
    }

    let mut primal = vec![Rational::zero(); n];
    let mut dual = vec![Rational::zero(); m];
    for (i, &v) in row_var.iter().enumerate() {
        if v < n {
            primal[v] = rhs[i].clone();
        }
    }
    for (j, &v) in col_var.iter().enumerate() {
        if v >= n {
            dual[v - n] = -obj[j].clone();
        }
    }
    Ok(PackingSolution {
        value: z,
        primal,
        dual,
        pivots,
    })
}

fn pivot(
    t: &mut [Vec<Rational>],
    rhs: &mut [Rational],
    obj: &mut [Rational],
    z: &mut Rational,
    i: usize,
    j: usize,
) {
    let p = t[i][j].clone();
    let inv = Rational::one() / &p;
    let n = obj.len();
    for k in 0..n {
        if k != j && !t[i][k].is_zero() {
            t[i][k] = &t[i][k] * &inv;
        }
    }
    rhs[i] = &rhs[i] * &inv;
    t[i][j] = inv.clone();
    let pivot_row = t[i].clone();
    let pivot_rhs = rhs[i].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r == i || row[j].is_zero() {
            continue;
        }
        let f = row[j].clone();
        for k in 0..n {
            if k != j && !pivot_row[k].is_zero() {
                row[k] = &row[k] - &f * &pivot_row[k];
            }
        }
        rhs[r] = &rhs[r] - &f * &pivot_rhs;
        row[j] = -(&f * &inv);
    }
    let f = obj[j].clone();
    if !f.is_zero() {
        for k in 0..n {
            if k != j && !pivot_row[k].is_zero() {
                obj[k] = &obj[k] - &f * &pivot_row[k];
            }
        }
        *z += &f * &pivot_rhs;
        obj[j] = -(&f * &inv);
    }
}
