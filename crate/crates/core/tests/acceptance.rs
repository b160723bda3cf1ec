//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every criterion runs even when an earlier one fails.

mod common;

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use myctheta::certificates::{
    build_spectral_certificate, certificate_parameters, check_certificate_inequalities,
    lift_coloring, lift_conditions, verify_block_spectrum,
};
use myctheta::chromatic::chromatic_number;
use myctheta::clique::{clique_number, SearchOptions};
use myctheta::constructions::{extended_clique, lifted_transitive_clique, no_lifted_clique_check};
use myctheta::families::{complete, cycle, transitive_tournament};
use myctheta::formula::{cubic_residual, mycielski_cubic, mycielski_theta, mycielski_theta_formula};
use myctheta::mycielski::{mycielskian, mycielskian_digraph};
use myctheta::products::{or_power, or_power_digraph, PowerLayout};
use myctheta::theta::{
    extract_vector_coloring, optimal_edge_matrix, spectral_ratio, theta_bar, ThetaOptions,
};
use myctheta::Graph;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(elapsed: Duration, limit_secs: f64, what: &str) -> Result<(), String> {
    check(
        elapsed.as_secs_f64() < limit_secs,
        format!("{what} took {elapsed:.2?}, limit {limit_secs} s"),
    )
}

fn sdp(g: &Graph, tol: f64) -> f64 {
    theta_bar(g, ThetaOptions::with_tol(tol)).unwrap().value
}

fn c1() -> Outcome {
    let start = Instant::now();
    let t = sdp(&cycle(5).unwrap(), 1e-7);
    let elapsed = start.elapsed();
    let err = (t - 5f64.sqrt()).abs();
    check(err <= 1e-4, format!("ϑ̄(C5) = {t}, error {err:.2e}"))?;
    within(elapsed, 5.0, "SDP")?;
    Ok(format!("ϑ̄(C5) = {t:.10}, error {err:.1e}, {elapsed:.2?}"))
}

fn c2() -> Outcome {
    let r = mycielski_theta_formula(2.0).unwrap();
    let s5 = 5f64.sqrt();
    check((r.m - s5).abs() <= 1e-12, format!("m(2) = {}", r.m))?;
    let res = cubic_residual(2.0, s5).abs();
    check(res < 1e-12, format!("residual {res:.2e}"))?;
    // Synthetic division of the t = 2 cubic by (x − 1) must leave x² − 5.
    let [a, b, c, d] = mycielski_cubic(2.0);
    let q0 = a;
    let q1 = b + q0;
    let q2 = c + q1;
    let rem = d + q2;
    check(
        (q0, q1, q2, rem) == (1.0, 0.0, -5.0, 0.0),
        format!("division gave {q0}x² + {q1}x + {q2}, remainder {rem}"),
    )?;
    Ok(format!("m(2) = {:.15}, residual {res:.1e}, cubic = (x−1)(x²−5)", r.m))
}

fn c3() -> Outcome {
    let m = mycielski_theta_formula(3.0).unwrap().m;
    let expected = 4.0 * (2.0 * PI / 9.0).cos();
    let err = (m - expected).abs();
    check(err <= 1e-12, format!("m(3) = {m}, 4cos(2π/9) = {expected}"))?;
    Ok(format!("m(3) = {m:.15}, error {err:.1e}"))
}

fn c4() -> Outcome {
    let start = Instant::now();
    let graphs = [
        ("K2", complete(2).unwrap()),
        ("K3", complete(3).unwrap()),
        ("K4", complete(4).unwrap()),
        ("C5", cycle(5).unwrap()),
        ("C7", cycle(7).unwrap()),
    ];
    let mut worst: f64 = 0.0;
    for (name, g) in &graphs {
        let t = sdp(g, 1e-8);
        let mt = sdp(&mycielskian(g, 2).unwrap(), 1e-8);
        let m = mycielski_theta(t, 1e-5).map_err(|e| format!("{name}: {e}"))?;
        let err = (mt - m).abs();
        check(err <= 1e-3, format!("{name}: SDP {mt}, formula {m}"))?;
        worst = worst.max(err);
    }
    let elapsed = start.elapsed();
    within(elapsed, 60.0, "five graph pairs")?;
    Ok(format!("max |SDP − formula| = {worst:.1e} over K2,K3,K4,C5,C7, {elapsed:.2?}"))
}

/// Flat indices of a construction inside the explicitly built power.
fn flat(n_inner: usize, exponent: usize, vertices: &[Vec<usize>]) -> Vec<usize> {
    let layout = PowerLayout::new(n_inner, exponent);
    vertices.iter().map(|v| layout.encode(v)).collect()
}

fn c5() -> Outcome {
    let start = Instant::now();
    let c = extended_clique(2).unwrap();
    let power = or_power(&mycielskian(&complete(2).unwrap(), 2).unwrap(), 2).unwrap();
    let ids = flat(5, 2, &c.vertices);
    check(c.size() == 5 && power.is_clique(&ids), "construction is not a 5-clique")?;
    let omega = clique_number(&power, SearchOptions::default()).unwrap();
    let elapsed = start.elapsed();
    check(omega.exhausted && omega.size == 5, format!("ω = {}", omega.size))?;
    check(oracle_clique(&power) == 5, "oracle disagrees")?;
    within(elapsed, 1.0, "construction and search")?;
    Ok(format!("5-clique verified, exact ω([M(K2)]²) = 5, {elapsed:.2?}"))
}

fn c6() -> Outcome {
    let start = Instant::now();
    let c = extended_clique(3).unwrap();
    let power = or_power(&mycielskian(&complete(3).unwrap(), 2).unwrap(), 3).unwrap();
    let ids = flat(7, 3, &c.vertices);
    let elapsed = start.elapsed();
    check(power.order() == 343, format!("power has {} vertices", power.order()))?;
    check(c.size() == 28 && power.is_clique(&ids), "construction is not a 28-clique")?;
    check(c.bound > 3.0 && (c.bound - 28f64.cbrt()).abs() < 1e-12, format!("bound {}", c.bound))?;
    within(elapsed, 5.0, "construction and check")?;
    Ok(format!("28-clique in 343 vertices, bound {:.6} > 3, {elapsed:.2?}", c.bound))
}

fn c7() -> Outcome {
    let c = lifted_transitive_clique(2, true).unwrap();
    let md = mycielskian_digraph(&transitive_tournament(2).unwrap(), 2).unwrap();
    let power = or_power_digraph(&md, 2).unwrap();
    let ids = flat(5, 2, &c.vertices);
    check(c.size() == 5 && power.is_transitive_clique(&ids), "not a transitive 5-clique")?;
    check((c.bound - 5f64.sqrt()).abs() < 1e-12, format!("bound {}", c.bound))?;
    // No three vertices cyclically ordered: every ordered pair i < j is an arc.
    for i in 0..ids.len() {
        for j in i + 1..ids.len() {
            check(power.has_arc(ids[i], ids[j]), format!("missing arc {i} → {j}"))?;
        }
    }
    Ok(format!("transitive 5-clique verified, bound {:.10}", c.bound))
}

fn c8() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        let g = complete(n).unwrap();
        let sol = theta_bar(&g, ThetaOptions::with_tol(1e-9)).unwrap();
        let tm = optimal_edge_matrix(&g, &sol, 1e-9).unwrap();
        let t = spectral_ratio(&tm, &g).unwrap();
        let m = mycielski_theta_formula(t.max(2.0)).unwrap().m;
        let cert = build_spectral_certificate(&g, &tm, t, m).map_err(|e| format!("K{n}: {e}"))?;
        // Extreme eigenvalues of T̂ from an independent solver.
        let oracle = nalgebra_eigenvalues(&cert.t_hat);
        let ratio = 1.0 + oracle[oracle.len() - 1] / oracle[0].abs();
        let err = (ratio - m).abs();
        check(err <= 1e-6, format!("K{n}: ratio {ratio}, m {m}"))?;
        worst = worst.max(err).max((cert.ratio - m).abs());
        let blocks = verify_block_spectrum(&cert);
        check(blocks.ok, format!("K{n}: block spectrum {blocks:?}"))?;
        let iq = check_certificate_inequalities(t, m, cert.gamma, cert.delta, cert.eta);
        check(iq.passed, format!("K{n}: inequalities {iq:?}"))?;
        check(
            iq.discriminant.abs() <= 1e-8 * iq.b * iq.b,
            format!("K{n}: discriminant {}", iq.discriminant),
        )?;
    }
    let (gamma, delta, eta) = certificate_parameters(2.0, 5f64.sqrt()).unwrap();
    for (name, got, want) in [("γ", gamma, 2.0), ("δ", delta, 1.0), ("η", eta, 2.0)] {
        check((got - want).abs() <= 1e-9, format!("K2: {name} = {got}"))?;
    }
    Ok(format!("K2..K5 certified, max ratio error {worst:.1e}; K2 (γ,δ,η) = (2,1,2)"))
}

fn c9() -> Outcome {
    let k2 = complete(2).unwrap();
    let sol = theta_bar(&k2, ThetaOptions::with_tol(1e-9)).unwrap();
    let coloring = extract_vector_coloring(&sol, &k2).unwrap();
    let m = mycielski_theta(coloring.t, 1e-6).unwrap();
    let (lifted, _) = lift_coloring(&coloring, &k2, m).map_err(|e| e.to_string())?;
    let cond = lift_conditions(&lifted, &k2);
    check(cond.max() <= 1e-8, format!("conditions {cond:?}"))?;
    let c5 = mycielskian(&k2, 2).unwrap();
    check(lifted.is_valid(&c5, 1e-8), "lifted colouring invalid on M(K2)")?;
    let t_c5 = sdp(&cycle(5).unwrap(), 1e-8);
    let err = (lifted.t - t_c5).abs();
    check(err <= 1e-4, format!("value {} vs ϑ̄(C5) {t_c5}", lifted.t))?;
    Ok(format!("max condition violation {:.1e}, |m − ϑ̄(C5)| = {err:.1e}", cond.max()))
}

fn c10() -> Outcome {
    fn run<S: proptest::strategy::Strategy>(
        name: &str,
        strategy: S,
        cases: u32,
        prop: impl Fn(&S::Value) -> Result<(), String>,
    ) -> Result<(), String> {
        let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
        let mut runner = TestRunner::new_with_rng(Config { cases, failure_persistence: None, ..Config::default() }, rng);
        runner
            .run(&strategy, |v| {
                prop(&v).map_err(proptest::test_runner::TestCaseError::fail)
            })
            .map_err(|e| format!("{name}: {e}"))
    }
    run("ω(M(G)) = ω(G)", arb_graph(10), 100, prop_clique_preserved)?;
    run("χ(M(G)) = χ(G) + 1", arb_graph(8), 100, prop_chromatic_increments)?;
    run("χ_f(M(G)) = χ_f + 1/χ_f", arb_graph(10), 100, prop_fractional_formula)?;
    run("ϑ̄ monotone", arb_graph_and_subgraph(10), 100, |(g, h)| {
        prop_theta_monotone(g, h)
    })?;
    run("embedding", (arb_graph(4), 1usize..=2), 100, |(g, t)| {
        prop_embedding(g, *t)
    })?;
    let corpus = [
        Graph::empty(1).unwrap(),
        complete(2).unwrap(),
        complete(3).unwrap(),
        cycle(5).unwrap(),
        Graph::empty(2).unwrap(),
    ];
    for f in &corpus {
        for g in &corpus {
            prop_spectrum_axioms(f, g)?;
        }
    }
    Ok("6 suites, 100 random instances each (axioms on a 25-pair corpus)".into())
}

fn c11() -> Outcome {
    let start = Instant::now();
    for (n, r) in [(3, 3), (3, 4)] {
        let ok = no_lifted_clique_check(n, r, 1, SearchOptions::default())
            .map_err(|e| format!("({n},{r},1): {e}"))?;
        check(ok, format!("({n},{r},1) found a clique"))?;
    }
    let elapsed = start.elapsed();
    within(elapsed, 1.0, "both checks")?;
    Ok(format!("(3,3,1) and (3,4,1) confirmed, {elapsed:.2?}"))
}

fn c12() -> Outcome {
    let start = Instant::now();
    let g = or_power(&cycle(5).unwrap(), 2).unwrap();
    let res = chromatic_number(&g, SearchOptions::default()).unwrap();
    let elapsed = start.elapsed();
    check(g.is_proper_coloring(&res.coloring), "colouring is not proper")?;
    let used = res.coloring.iter().max().map_or(0, |c| c + 1);
    check(used <= 8 && res.upper <= 8, format!("{used} colours"))?;
    within(elapsed, 30.0, "exact colouring")?;
    let exact = match res.exact() {
        Some(chi) => format!("exact χ = {chi}"),
        None => format!("χ ∈ [{}, {}]", res.lower, res.upper),
    };
    Ok(format!("proper {used}-colouring of [C5]², {exact}, {elapsed:.2?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("ϑ̄(C5) by SDP", c1),
        ("closed form at t = 2", c2),
        ("closed form at t = 3", c3),
        ("formula vs SDP", c4),
        ("extended clique n = 2", c5),
        ("extended clique n = 3", c6),
        ("transitive clique n = 2", c7),
        ("spectral certificates K2..K5", c8),
        ("lifted colouring K2 → C5", c9),
        ("property suites", c10),
        ("no lifted clique", c11),
        ("χ([C5]²) ≤ 8", c12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
