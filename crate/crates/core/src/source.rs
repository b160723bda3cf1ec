//! Graph specifications and the edge-list text format.
//!
//! Specifications compose left to right, innermost last:
//!
//! ```text
//! spec := complete:N | cycle:N | empty:N | path:N | tournament:N
//!       | mycielski:spec[:r=R]
//!       | power:spec:t=T
//!       | complement:spec
//! ```
//!
//! so `mycielski:power:cycle:5:t=2:r=3` is `M_3(C5²)`.
//!
//! Edge lists start with `n m` or `n m directed`, followed by `m` lines
//! `u v` with 0-based endpoints. Blank lines and `#` comments are skipped.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::families::{generate, Family};
use crate::graph::{AnyGraph, Digraph, Graph};
use crate::mycielski::{mycielskian, mycielskian_digraph};
use crate::products::{or_power, or_power_digraph};

fn parse_num(tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("expected {what}, found {tok:?}")))
}

fn keyed(tok: Option<&&str>, key: &str) -> Option<Result<usize>> {
    let tok = tok?;
    let value = tok.strip_prefix(key)?.strip_prefix('=')?;
    Some(parse_num(value, key))
}

fn parse_tokens<'a>(tokens: &'a [&'a str]) -> Result<(AnyGraph, &'a [&'a str])> {
    let (head, rest) = tokens
        .split_first()
        .ok_or_else(|| Error::Parse("unexpected end of specification".into()))?;
    match *head {
        "mycielski" => {
            let (inner, rest) = parse_tokens(rest)?;
            let (r, rest) = match keyed(rest.first(), "r") {
                Some(r) => (r?, &rest[1..]),
                None => (2, rest),
            };
            let g = match inner {
                AnyGraph::Undirected(g) => mycielskian(&g, r)?.into(),
                AnyGraph::Directed(d) => mycielskian_digraph(&d, r)?.into(),
            };
            Ok((g, rest))
        }
        "power" => {
            let (inner, rest) = parse_tokens(rest)?;
            let t = keyed(rest.first(), "t")
                .ok_or_else(|| Error::Parse("power needs a t=T parameter".into()))??;
            let g = match inner {
                AnyGraph::Undirected(g) => or_power(&g, t)?.into(),
                AnyGraph::Directed(d) => or_power_digraph(&d, t)?.into(),
            };
            Ok((g, &rest[1..]))
        }
        "complement" => {
            let (inner, rest) = parse_tokens(rest)?;
            match inner {
                AnyGraph::Undirected(g) => Ok((g.complement().into(), rest)),
                AnyGraph::Directed(_) => {
                    Err(Error::domain("complement is defined for graphs only"))
                }
            }
        }
        name => {
            let family: Family = name.parse()?;
            let n = rest
                .first()
                .ok_or_else(|| Error::Parse(format!("{name} needs a vertex count")))?;
            Ok((generate(family, parse_num(n, "vertex count")?)?, &rest[1..]))
        }
    }
}

/// Build the graph named by a specification string.
pub fn parse_spec(spec: &str) -> Result<AnyGraph> {
    let tokens: Vec<&str> = spec.trim().split(':').collect();
    let (g, rest) = parse_tokens(&tokens)?;
    if !rest.is_empty() {
        return Err(Error::Parse(format!(
            "trailing tokens in specification: {}",
            rest.join(":")
        )));
    }
    Ok(g)
}

pub fn read_edge_list(text: &str) -> Result<AnyGraph> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge list".into()))?
        .split_whitespace()
        .collect();
    let (n, m, directed) = match header.as_slice() {
        [n, m] => (parse_num(n, "vertex count")?, parse_num(m, "edge count")?, false),
        [n, m, "directed"] => (parse_num(n, "vertex count")?, parse_num(m, "edge count")?, true),
        _ => {
            return Err(Error::Parse(format!(
                "header must be \"n m [directed]\", found {:?}",
                header.join(" ")
            )))
        }
    };
    let mut pairs = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let (Some(u), Some(v), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::Parse(format!("malformed edge line {line:?}")));
        };
        pairs.push((parse_num(u, "vertex")?, parse_num(v, "vertex")?));
    }
    if pairs.len() != m {
        return Err(Error::Parse(format!(
            "header announces {m} edges, found {}",
            pairs.len()
        )));
    }
    Ok(if directed {
        Digraph::from_arcs(n, pairs)?.into()
    } else {
        Graph::from_edges(n, pairs)?.into()
    })
}

pub fn write_edge_list(g: &AnyGraph) -> String {
    let mut out = String::new();
    match g {
        AnyGraph::Undirected(g) => {
            let _ = writeln!(out, "{} {}", g.order(), g.edge_count());
            for (u, v) in g.edges() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
        AnyGraph::Directed(d) => {
            let _ = writeln!(out, "{} {} directed", d.order(), d.arc_count());
            for (u, v) in d.arcs() {
                let _ = writeln!(out, "{u} {v}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn undirected(spec: &str) -> Graph {
        match parse_spec(spec).unwrap() {
            AnyGraph::Undirected(g) => g,
            AnyGraph::Directed(_) => panic!("expected a graph"),
        }
    }

    #[test]
    fn nested_specs() {
        assert_eq!(undirected("cycle:5").edge_count(), 5);
        assert_eq!(undirected("mycielski:complete:2").order(), 5);
        assert_eq!(undirected("mycielski:complete:2:r=3").order(), 7);
        assert_eq!(undirected("power:cycle:5:t=2").order(), 25);
        assert_eq!(undirected("mycielski:power:complete:2:t=2").order(), 9);
        assert_eq!(undirected("complement:cycle:5").edge_count(), 5);
        assert!(parse_spec("mycielski:tournament:2").unwrap().is_directed());
    }

    #[test]
    fn bad_specs() {
        for s in ["", "cycle", "cycle:x", "cycle:5:7", "power:cycle:5", "nope:3"] {
            assert!(parse_spec(s).is_err(), "{s}");
        }
        assert!(parse_spec("complement:tournament:3").unwrap_err().is_domain());
    }

    #[test]
    fn edge_list_round_trip() {
        for spec in ["mycielski:cycle:5", "mycielski:tournament:3"] {
            let g = parse_spec(spec).unwrap();
            let text = write_edge_list(&g);
            assert_eq!(read_edge_list(&text).unwrap(), g);
        }
    }

    #[test]
    fn edge_list_errors() {
        assert!(read_edge_list("").is_err());
        assert!(read_edge_list("3 1\n0 1 2\n").is_err());
        assert!(read_edge_list("3 2\n0 1\n").is_err());
        assert!(read_edge_list("3 1 undirected\n0 1\n").is_err());
        assert!(read_edge_list("3 1\n0 3\n").is_err());
        let g = read_edge_list("# triangle\n3 3\n0 1\n1 2\n\n2 0 # closing edge\n").unwrap();
        assert_eq!(g.size(), 3);
    }
}
