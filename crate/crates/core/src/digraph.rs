//! Simple digraphs, the edge-list text format, and per-vertex degree
//! statistics.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scc;

/// A simple digraph on vertices `0..n`: no loops, no parallel arcs.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    // Sorted out-neighbour lists.
    out: Vec<Vec<usize>>,
    m: usize,
}

impl Digraph {
    /// Builds a digraph from arcs `(tail, head)`. Duplicate arcs collapse.
    pub fn new<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        let mut set = BTreeSet::new();
        for (tail, head) in arcs {
            if tail >= n || head >= n {
                return Err(Error::VertexOutOfRange { tail, head, n });
            }
            if tail == head {
                return Err(Error::LoopArc(tail));
            }
            set.insert((tail, head));
        }
        let mut out = vec![Vec::new(); n];
        for &(u, v) in &set {
            out[u].push(v);
        }
        let g = Digraph { n, out, m: set.len() };
        debug_assert_eq!(g.out_degrees().iter().sum::<usize>(), g.m);
        Ok(g)
    }

    /// The directed cycle `0 → 1 → … → n−1 → 0`.
    pub fn directed_cycle(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameters(format!(
                "a directed cycle needs n >= 2, got {n}"
            )));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// The complete digraph: every ordered pair of distinct vertices.
    pub fn complete(n: usize) -> Result<Self> {
        Self::new(
            n,
            (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Arcs in lexicographic order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, heads)| heads.iter().map(move |&v| (u, v)))
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.out
            .get(tail)
            .is_some_and(|heads| heads.binary_search(&head).is_ok())
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        self.out.iter().map(Vec::len).collect()
    }

    /// Δ⁺, the maximum outdegree.
    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Every vertex has the same outdegree.
    pub fn is_out_regular(&self) -> bool {
        let d = self.out_degree(0);
        self.out.iter().all(|heads| heads.len() == d)
    }

    pub fn is_strongly_connected(&self) -> bool {
        scc::is_strongly_connected(self)
    }

    pub(crate) fn require_strongly_connected(&self) -> Result<()> {
        if self.is_strongly_connected() {
            Ok(())
        } else {
            Err(Error::NotStronglyConnected)
        }
    }

    /// T_i⁺, the sum of the outdegrees of the out-neighbours of `v`.
    pub fn two_out_degree(&self, v: usize) -> usize {
        self.out[v].iter().map(|&w| self.out[w].len()).sum()
    }

    /// Per-vertex outdegree, 2-outdegree and average 2-outdegree.
    ///
    /// Fails on the first vertex with outdegree zero, which cannot occur in a
    /// strongly connected digraph on two or more vertices.
    pub fn vertex_stats(&self) -> Result<Vec<VertexStats>> {
        (0..self.n)
            .map(|v| {
                let d = self.out_degree(v);
                if d == 0 {
                    return Err(Error::ZeroOutDegree(v));
                }
                let t = self.two_out_degree(v);
                Ok(VertexStats {
                    vertex: v,
                    out_degree: d,
                    two_out_degree: t,
                    avg_two_out_degree: Ratio::new(t as u64, d as u64),
                })
            })
            .collect()
    }

    /// Serializes to the edge-list format accepted by [`parse_edge_list`].
    /// The `n` header is always written so isolated trailing vertices survive.
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (u, v) in self.arcs() {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }
}

/// Degree statistics of one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexStats {
    pub vertex: usize,
    pub out_degree: usize,
    pub two_out_degree: usize,
    /// `two_out_degree / out_degree`, kept exact.
    #[serde(serialize_with = "ser_ratio")]
    pub avg_two_out_degree: Ratio<u64>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

/// Free-function form of [`Digraph::vertex_stats`].
pub fn vertex_stats(g: &Digraph) -> Result<Vec<VertexStats>> {
    g.vertex_stats()
}

/// Free-function form of [`Digraph::max_out_degree`].
pub fn max_out_degree(g: &Digraph) -> usize {
    g.max_out_degree()
}

/// Free-function form of [`Digraph::is_strongly_connected`].
pub fn is_strongly_connected(g: &Digraph) -> bool {
    g.is_strongly_connected()
}

/// Parses the edge-list text format.
///
/// One arc per line as `tail head` with 0-based indices. An optional first
/// content line `n <count>` fixes the vertex count; otherwise it is one more
/// than the largest index seen. `#` starts a comment and blank lines are
/// skipped. Repeated arcs collapse into one.
pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let mut declared_n: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();
    let mut seen_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line,
                message: format!("expected two tokens, found {}", tokens.len()),
            });
        }
        if tokens[0] == "n" {
            if seen_content {
                return Err(Error::Parse {
                    line,
                    message: "header 'n <count>' must come before any arc".into(),
                });
            }
            let count = parse_index(tokens[1], line)?;
            if count == 0 {
                return Err(Error::Parse {
                    line,
                    message: "vertex count must be positive".into(),
                });
            }
            declared_n = Some((count, line));
            seen_content = true;
            continue;
        }
        seen_content = true;
        let tail = parse_index(tokens[0], line)?;
        let head = parse_index(tokens[1], line)?;
        if tail == head {
            return Err(Error::Loop { line, vertex: tail });
        }
        if let Some((n, _)) = declared_n {
            if tail >= n || head >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("arc {tail} {head} exceeds declared n = {n}"),
                });
            }
        }
        arcs.push((tail, head));
    }

    if !seen_content {
        return Err(Error::EmptyInput);
    }
    let n = match declared_n {
        Some((n, _)) => n,
        None => arcs.iter().map(|&(u, v)| u.max(v)).max().map_or(0, |x| x + 1),
    };
    Digraph::new(n, arcs)
}

fn parse_index(token: &str, line: usize) -> Result<usize> {
    token.parse::<usize>().map_err(|_| Error::Parse {
        line,
        message: format!("'{token}' is not a nonnegative integer"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d1() -> Digraph {
        Digraph::new(3, [(0, 1), (0, 2), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn parses_triangle() {
        let g = parse_edge_list("0 1\n1 2\n2 0").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert!(g.has_arc(2, 0));
        assert!(g.is_strongly_connected());
    }

    #[test]
    fn duplicates_collapse() {
        let g = parse_edge_list("0 1\n0 1\n1 0").unwrap();
        assert_eq!((g.n(), g.m()), (2, 2));
    }

    #[test]
    fn loop_rejected_with_line_number() {
        assert_eq!(
            parse_edge_list("0 0"),
            Err(Error::Loop { line: 1, vertex: 0 })
        );
        assert_eq!(
            parse_edge_list("# c\n0 1\n\n2 2\n"),
            Err(Error::Loop { line: 4, vertex: 2 })
        );
    }

    #[test]
    fn bad_tokens_rejected() {
        let err = parse_edge_list("0 1\n1 x\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, ref message } if message.contains("'x'")));
        assert!(matches!(parse_edge_list("0 -1"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1 2"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(parse_edge_list(""), Err(Error::EmptyInput));
        assert_eq!(parse_edge_list("# only\n\n  \n"), Err(Error::EmptyInput));
    }

    #[test]
    fn header_fixes_n() {
        let g = parse_edge_list("n 5 # five\n0 1\n1 0\n").unwrap();
        assert_eq!(g.n(), 5);
        assert!(!g.is_strongly_connected());
        assert!(parse_edge_list("n 2\n0 2\n").is_err());
        assert!(parse_edge_list("0 1\nn 3\n").is_err());
        assert_eq!(parse_edge_list("n 1\n").unwrap().m(), 0);
    }

    #[test]
    fn edge_list_round_trip() {
        let g = d1();
        assert_eq!(parse_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn d1_vertex_stats() {
        let stats = d1().vertex_stats().unwrap();
        let triples: Vec<_> = stats
            .iter()
            .map(|s| (s.out_degree, s.two_out_degree, s.avg_two_out_degree))
            .collect();
        assert_eq!(
            triples,
            vec![
                (2, 2, Ratio::from_integer(1)),
                (1, 1, Ratio::from_integer(1)),
                (1, 2, Ratio::from_integer(2)),
            ]
        );
    }

    #[test]
    fn regular_vertex_stats() {
        for s in Digraph::directed_cycle(3).unwrap().vertex_stats().unwrap() {
            assert_eq!((s.out_degree, s.two_out_degree), (1, 1));
        }
        for s in Digraph::complete(3).unwrap().vertex_stats().unwrap() {
            assert_eq!((s.out_degree, s.two_out_degree), (2, 4));
            assert_eq!(s.avg_two_out_degree, Ratio::from_integer(2));
        }
    }

    #[test]
    fn zero_outdegree_names_vertex() {
        let path = Digraph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.vertex_stats(), Err(Error::ZeroOutDegree(2)));
    }

    #[test]
    fn max_out_degree_examples() {
        assert_eq!(Digraph::directed_cycle(3).unwrap().max_out_degree(), 1);
        assert_eq!(d1().max_out_degree(), 2);
        for n in 2..7 {
            assert_eq!(Digraph::complete(n).unwrap().max_out_degree(), n - 1);
        }
    }

    #[test]
    fn constructor_rejects_bad_arcs() {
        assert_eq!(Digraph::new(2, [(1, 1)]), Err(Error::LoopArc(1)));
        assert!(matches!(
            Digraph::new(2, [(0, 2)]),
            Err(Error::VertexOutOfRange { .. })
        ));
        assert_eq!(Digraph::new(0, []), Err(Error::NoVertices));
    }
}
