//! One record with every bound the library can compute for a graph.
//!
//! A failing sub-computation (size guard, exhausted budget, solver trouble)
//! leaves its field empty and its message in `errors`; the rest of the report
//! is still filled in. For digraphs, `clique_number` is the transitive clique
//! number and the upper bounds (`ϑ̄`, `χ_f`, `χ`) are computed on the
//! underlying graph, which bounds the Sperner capacity from above.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::capacity::capacity_lower_bound;
use crate::chromatic::chromatic_number;
use crate::clique::{clique_number, symmetric_clique_number, transitive_clique_number, SearchOptions};
use crate::constructions::{extended_clique, lifted_transitive_clique};
use crate::error::Result;
use crate::formula::mycielski_theta;
use crate::fractional::fractional_chromatic;
use crate::graph::{check_order, AnyGraph, Graph};
use crate::lp::format_rational;
use crate::theta::{theta_bar, ThetaOptions};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReportOptions {
    /// Largest power for the `ω(G^k)^{1/k}` lower bounds.
    pub max_power: usize,
    pub theta: ThetaOptions,
    pub search: SearchOptions,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            max_power: 2,
            theta: ThetaOptions::default(),
            search: SearchOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CliqueField {
    pub value: usize,
    pub exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    pub k: usize,
    pub clique: usize,
    pub bound: f64,
    pub exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaField {
    pub value: f64,
    pub dual_value: f64,
    pub tolerance: f64,
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChromaticField {
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionSummary {
    /// `"extended_clique"` or `"lifted_transitive_clique"`.
    pub kind: String,
    pub n: usize,
    /// Power in which the clique lives.
    pub exponent: usize,
    pub size: usize,
    pub bound: f64,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityReport {
    pub source: String,
    pub vertices: usize,
    pub edges: usize,
    pub directed: bool,
    pub clique_number: Option<CliqueField>,
    /// Digraphs only: largest set with arcs both ways between every pair.
    pub symmetric_clique_number: Option<CliqueField>,
    pub lower_bounds: Vec<LowerBound>,
    pub theta_bar: Option<ThetaField>,
    /// `m(ϑ̄)`, the value of `ϑ̄` on the Mycielskian.
    pub mycielski_theta_bar: Option<f64>,
    /// Exact, as `"p/q"`.
    pub fractional_chromatic: Option<String>,
    pub chromatic: Option<ChromaticField>,
    pub constructions: Vec<ConstructionSummary>,
    pub errors: BTreeMap<String, String>,
}

/// `mycielski:complete:N` and `mycielski:tournament:N` (with `r = 2`) have an
/// explicit lifted clique.
fn construction_for(source: &str) -> Option<(&str, usize)> {
    let parts: Vec<&str> = source.trim().split(':').collect();
    match parts.as_slice() {
        ["mycielski", base @ ("complete" | "tournament"), n]
        | ["mycielski", base @ ("complete" | "tournament"), n, "r=2"] => {
            Some((base, n.parse().ok()?))
        }
        _ => None,
    }
}

fn record<T>(errors: &mut BTreeMap<String, String>, key: &str, r: Result<T>) -> Option<T> {
    r.map_err(|e| errors.insert(key.to_string(), e.to_string())).ok()
}

pub fn capacity_report(g: &AnyGraph, source: &str, opts: ReportOptions) -> CapacityReport {
    let mut errors = BTreeMap::new();
    let (clique, symmetric, upper_graph): (_, _, Graph) = match g {
        AnyGraph::Undirected(g) => (clique_number(g, opts.search), None, g.clone()),
        AnyGraph::Directed(d) => (
            transitive_clique_number(d, opts.search),
            Some(symmetric_clique_number(d, opts.search)),
            d.underlying(),
        ),
    };
    let to_field = |r: crate::clique::CliqueResult| CliqueField {
        value: r.size,
        exhausted: r.exhausted,
    };
    let clique_number = record(&mut errors, "clique_number", clique.map(to_field));
    let symmetric_clique_number =
        symmetric.and_then(|s| record(&mut errors, "symmetric_clique_number", s.map(to_field)));

    let mut lower_bounds = Vec::new();
    for k in 1..=opts.max_power {
        let size = (g.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        let r = check_order(size).and_then(|_| capacity_lower_bound(g, k, opts.search));
        match record(&mut errors, &format!("lower_bound_k{k}"), r) {
            Some(b) => lower_bounds.push(LowerBound {
                k,
                clique: b.clique,
                bound: b.bound,
                exhausted: b.exhausted,
            }),
            None => break,
        }
    }

    let theta = record(&mut errors, "theta_bar", theta_bar(&upper_graph, opts.theta));
    let mycielski_theta_bar = theta.as_ref().and_then(|t| {
        record(
            &mut errors,
            "mycielski_theta_bar",
            mycielski_theta(t.value, 1e3 * opts.theta.tol),
        )
    });
    let theta_bar = theta.map(|t| ThetaField {
        value: t.value,
        dual_value: t.dual_value,
        tolerance: t.tolerance_achieved,
        iterations: t.iterations,
    });

    let fractional_chromatic = record(
        &mut errors,
        "fractional_chromatic",
        fractional_chromatic(&upper_graph).map(|f| format_rational(&f.value)),
    );
    let chromatic = record(
        &mut errors,
        "chromatic",
        chromatic_number(&upper_graph, opts.search).map(|c| ChromaticField {
            lower: c.lower,
            upper: c.upper,
            exact: c.exact(),
        }),
    );

    let mut constructions = Vec::new();
    if let Some((base, n)) = construction_for(source) {
        let built = if base == "complete" {
            extended_clique(n).map(|c| ("extended_clique", c))
        } else {
            lifted_transitive_clique(n, true).map(|c| ("lifted_transitive_clique", c))
        };
        if let Some((kind, c)) = record(&mut errors, "constructions", built) {
            constructions.push(ConstructionSummary {
                kind: kind.into(),
                n,
                exponent: n,
                size: c.size(),
                bound: c.bound,
                verified: c.verified,
            });
        }
    }

    CapacityReport {
        source: source.to_string(),
        vertices: g.order(),
        edges: g.size(),
        directed: g.is_directed(),
        clique_number,
        symmetric_clique_number,
        lower_bounds,
        theta_bar,
        mycielski_theta_bar,
        fractional_chromatic,
        chromatic,
        constructions,
        errors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::parse_spec;

    fn report(spec: &str) -> CapacityReport {
        capacity_report(&parse_spec(spec).unwrap(), spec, ReportOptions::default())
    }

    #[test]
    fn pentagon() {
        let r = report("cycle:5");
        assert_eq!(r.clique_number.unwrap().value, 2);
        assert!((r.lower_bounds[1].bound - 5f64.sqrt()).abs() < 1e-12);
        assert!((r.theta_bar.unwrap().value - 5f64.sqrt()).abs() < 1e-4);
        assert_eq!(r.fractional_chromatic.as_deref(), Some("5/2"));
        assert_eq!(r.chromatic.unwrap().exact, Some(3));
        assert!(r.errors.is_empty());
    }

    #[test]
    fn single_vertex() {
        let r = report("complete:1");
        assert_eq!(r.clique_number.unwrap().value, 1);
        assert!(r.lower_bounds.iter().all(|b| b.bound == 1.0));
        assert_eq!(r.theta_bar.unwrap().value, 1.0);
        assert_eq!(r.fractional_chromatic.as_deref(), Some("1/1"));
        assert_eq!(r.chromatic.unwrap().exact, Some(1));
    }

    #[test]
    fn mycielskian_of_triangle() {
        let r = report("mycielski:complete:3");
        assert_eq!(r.clique_number.unwrap().value, 3);
        let c = &r.constructions[0];
        assert_eq!(c.size, 28);
        assert!((c.bound - 28f64.cbrt()).abs() < 1e-12);
        let target = 4.0 * (2.0 * std::f64::consts::PI / 9.0).cos();
        assert!((r.theta_bar.unwrap().value - target).abs() < 1e-4);
    }

    #[test]
    fn failures_are_per_field() {
        // 31 vertices: over the fractional limit, everything else fits.
        let r = report("cycle:31");
        assert!(r.fractional_chromatic.is_none());
        assert!(r.errors.contains_key("fractional_chromatic"));
        assert_eq!(r.chromatic.unwrap().exact, Some(3));
    }

    #[test]
    fn construction_detection() {
        assert_eq!(construction_for("mycielski:complete:3"), Some(("complete", 3)));
        assert_eq!(construction_for("mycielski:tournament:2:r=2"), Some(("tournament", 2)));
        assert_eq!(construction_for("mycielski:complete:3:r=3"), None);
        assert_eq!(construction_for("cycle:5"), None);
    }
}
