use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::SubspaceAssignment;
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::graphs::Graph;
use crate::linalg::{Subspace, Vector};

/// A partition of every edge set `E_v` into `k` (possibly empty) parts.
///
/// `parts[v][i]` is the part of the `i`-th edge in `graph.incident_edges(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    graph: Graph,
    k: usize,
    parts: Vec<Vec<usize>>,
}

impl EdgePartition {
    pub fn new(graph: Graph, k: usize, parts: Vec<Vec<usize>>) -> Result<Self> {
        if k == 0 {
            return Err(Error::invalid("k must be positive"));
        }
        if parts.len() != graph.n() {
            return Err(Error::invalid(format!(
                "{} part lists for {} vertices",
                parts.len(),
                graph.n()
            )));
        }
        for (v, p) in parts.iter().enumerate() {
            if p.len() != graph.degree(v) {
                return Err(Error::invalid(format!(
                    "vertex {v}: {} parts for degree {}",
                    p.len(),
                    graph.degree(v)
                )));
            }
            if let Some(bad) = p.iter().find(|&&i| i >= k) {
                return Err(Error::invalid(format!(
                    "vertex {v}: part {bad} out of range for k = {k}"
                )));
            }
        }
        Ok(EdgePartition { graph, k, parts })
    }

    /// Every edge in part `part` at both endpoints.
    pub fn uniform(graph: Graph, k: usize, part: usize) -> Result<Self> {
        let parts = (0..graph.n()).map(|v| vec![part; graph.degree(v)]).collect();
        Self::new(graph, k, parts)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Part of edge `e` at its endpoint `v`.
    pub fn part_of(&self, v: usize, e: usize) -> usize {
        let i = self
            .graph
            .incident_edges(v)
            .iter()
            .position(|&x| x == e)
            .expect("edge incident to v");
        self.parts[v][i]
    }

    /// Edge indices of `E_v^{(i)}`.
    pub fn edges_in_part(&self, v: usize, i: usize) -> Vec<usize> {
        self.graph
            .incident_edges(v)
            .iter()
            .zip(&self.parts[v])
            .filter(|(_, &p)| p == i)
            .map(|(&e, _)| e)
            .collect()
    }

    /// Whether the labeling hits some edge in the chosen part at both ends.
    pub fn is_hit_by(&self, g: &PartLabeling) -> bool {
        self.graph
            .edges()
            .iter()
            .enumerate()
            .any(|(e, &(u, v))| self.part_of(u, e) == g.0[u] && self.part_of(v, e) == g.0[v])
    }
}

/// A function `g: V -> [k]`, 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartLabeling(pub Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionVerdict {
    /// Every labeling hits an edge: the graph is k-partitioned by this partition.
    CertifiedYes,
    /// A labeling that hits no edge.
    Refuted(PartLabeling),
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// Exact; refuses when `k^|V|` exceeds `budget`.
    Exhaustive {
        budget: u64,
    },
    Randomized {
        seed: u64,
        trials: u64,
    },
}

impl CheckMode {
    pub const DEFAULT_BUDGET: u64 = 10_000_000;

    pub fn exhaustive() -> Self {
        CheckMode::Exhaustive {
            budget: Self::DEFAULT_BUDGET,
        }
    }
}

pub fn check_k_partitioned(p: &EdgePartition, mode: CheckMode) -> Result<PartitionVerdict> {
    let n = p.graph.n();
    match mode {
        CheckMode::Exhaustive { budget } => {
            let within = (p.k as u128).checked_pow(n as u32).is_some_and(|c| c <= budget as u128);
            if !within {
                return Err(Error::BudgetExceeded(format!("{}^{n} labelings", p.k)));
            }
            // per vertex, the (earlier neighbour, edge) pairs to test on assignment
            let back: Vec<Vec<(usize, usize)>> = (0..n)
                .map(|v| {
                    p.graph
                        .incident_edges(v)
                        .iter()
                        .map(|&e| {
                            let (a, b) = p.graph.edges()[e];
                            (if a == v { b } else { a }, e)
                        })
                        .filter(|&(w, _)| w < v)
                        .collect()
                })
                .collect();
            let mut g = vec![0usize; n];
            Ok(match avoid(p, &back, &mut g, 0) {
                true => PartitionVerdict::Refuted(PartLabeling(g)),
                false => PartitionVerdict::CertifiedYes,
            })
        }
        CheckMode::Randomized { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..trials {
                let g = PartLabeling((0..n).map(|_| rng.gen_range(0..p.k)).collect());
                if !p.is_hit_by(&g) {
                    return Ok(PartitionVerdict::Refuted(g));
                }
            }
            Ok(PartitionVerdict::Inconclusive)
        }
    }
}

// Depth-first search for a labeling of vertices v.. that hits no edge.
fn avoid(p: &EdgePartition, back: &[Vec<(usize, usize)>], g: &mut [usize], v: usize) -> bool {
    if v == g.len() {
        return true;
    }
    for i in 0..p.k {
        g[v] = i;
        let hit = back[v]
            .iter()
            .any(|&(w, e)| p.part_of(v, e) == i && p.part_of(w, e) == g[w]);
        if !hit && avoid(p, back, g, v + 1) {
            return true;
        }
    }
    false
}

/// Each `(v, e)` pair gets an independent uniform part.
pub fn random_edge_partition(g: &Graph, k: usize, seed: u64) -> Result<EdgePartition> {
    if k == 0 {
        return Err(Error::invalid("k must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parts = (0..g.n())
        .map(|v| (0..g.degree(v)).map(|_| rng.gen_range(0..k)).collect())
        .collect();
    EdgePartition::new(g.clone(), k, parts)
}

/// Indicator vectors of the parts in `F^{|E| + k|V|}`, each with its own
/// extra coordinate `|E| + v k + i` so every subspace has dimension `k`.
pub fn partition_assignment(p: &EdgePartition, field: FieldSpec) -> SubspaceAssignment {
    let m = p.graph.num_edges();
    let k = p.k;
    let t = m + k * p.graph.n();
    let subspaces = (0..p.graph.n())
        .map(|v| {
            let rows: Vec<Vector> = (0..k)
                .map(|i| {
                    let mut x = vec![0i64; t];
                    for e in p.edges_in_part(v, i) {
                        x[e] = 1;
                    }
                    x[m + v * k + i] = 1;
                    Vector::from_i64s(field, &x)
                })
                .collect();
            Subspace::span(field, t, &rows).expect("consistent rows")
        })
        .collect();
    SubspaceAssignment::new(p.graph.clone(), field, t, subspaces).expect("consistent assignment")
}

/// `partition <n> <k>` then one `p <v> <edge>:<part> ...` line per vertex.
pub fn write_edge_partition(p: &EdgePartition) -> String {
    let mut s = format!("partition {} {}\n", p.graph.n(), p.k);
    for v in 0..p.graph.n() {
        write!(s, "p {v}").unwrap();
        for (e, part) in p.graph.incident_edges(v).iter().zip(&p.parts[v]) {
            write!(s, " {e}:{part}").unwrap();
        }
        s.push('\n');
    }
    s
}

pub fn parse_edge_partition(graph: &Graph, text: &str) -> Result<EdgePartition> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, head) = lines.next().ok_or_else(|| Error::parse(0, "empty partition file"))?;
    let toks: Vec<&str> = head.split_whitespace().collect();
    let (n, k) = match toks.as_slice() {
        ["partition", n, k] => (
            n.parse::<usize>().map_err(|_| Error::parse(hl, "bad vertex count"))?,
            k.parse::<usize>().map_err(|_| Error::parse(hl, "bad part count"))?,
        ),
        _ => return Err(Error::parse(hl, "expected `partition <n> <k>`")),
    };
    if n != graph.n() {
        return Err(Error::parse(
            hl,
            format!("partition has {n} vertices, graph has {}", graph.n()),
        ));
    }
    let mut parts: Vec<Option<Vec<usize>>> = vec![None; n];
    for (ln, line) in lines {
        let mut toks = line.split_whitespace();
        if toks.next() != Some("p") {
            return Err(Error::parse(ln, "expected `p <v> ...`"));
        }
        let v: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .filter(|&v| v < n)
            .ok_or_else(|| Error::parse(ln, "bad vertex"))?;
        let inc = graph.incident_edges(v);
        let mut row = vec![usize::MAX; inc.len()];
        for tok in toks {
            let (e, part) = tok
                .split_once(':')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| Error::parse(ln, format!("bad entry `{tok}`")))?;
            let i = inc
                .iter()
                .position(|&x| x == e)
                .ok_or_else(|| Error::parse(ln, format!("edge {e} is not incident to vertex {v}")))?;
            row[i] = part;
        }
        if row.contains(&usize::MAX) {
            return Err(Error::parse(
                ln,
                format!("vertex {v}: not every incident edge has a part"),
            ));
        }
        if parts[v].replace(row).is_some() {
            return Err(Error::parse(ln, format!("vertex {v} listed twice")));
        }
    }
    let parts = parts
        .into_iter()
        .enumerate()
        .map(|(v, p)| p.ok_or_else(|| Error::parse(0, format!("vertex {v} missing"))))
        .collect::<Result<Vec<_>>>()?;
    EdgePartition::new(graph.clone(), k, parts).map_err(|e| Error::parse(0, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{find_choice, SearchOptions};

    #[test]
    fn triangle_one_part_is_partitioned_and_unchoosable() {
        let p = EdgePartition::uniform(Graph::cycle(3).unwrap(), 1, 0).unwrap();
        assert_eq!(
            check_k_partitioned(&p, CheckMode::exhaustive()).unwrap(),
            PartitionVerdict::CertifiedYes
        );
        let a = partition_assignment(&p, FieldSpec::prime(2).unwrap());
        assert_eq!(a.dims(), vec![1, 1, 1]);
        assert!(find_choice(&a, &SearchOptions::default()).unwrap().is_no_choice());
    }

    #[test]
    fn single_edge_is_one_partitioned() {
        let p = EdgePartition::uniform(Graph::path(1).unwrap(), 1, 0).unwrap();
        assert_eq!(
            check_k_partitioned(&p, CheckMode::exhaustive()).unwrap(),
            PartitionVerdict::CertifiedYes
        );
        let a = partition_assignment(&p, FieldSpec::prime(2).unwrap());
        assert!(find_choice(&a, &SearchOptions::default()).unwrap().is_no_choice());
    }

    #[test]
    fn ambient_of_k4() {
        let p = random_edge_partition(&Graph::complete(4).unwrap(), 2, 1).unwrap();
        assert_eq!(partition_assignment(&p, FieldSpec::prime(3).unwrap()).ambient(), 14);
    }

    #[test]
    fn split_path_is_refuted() {
        // middle vertex puts its two edges in different parts
        let g = Graph::path(2).unwrap();
        let p = EdgePartition::new(g, 2, vec![vec![0], vec![0, 1], vec![0]]).unwrap();
        match check_k_partitioned(&p, CheckMode::exhaustive()).unwrap() {
            PartitionVerdict::Refuted(g) => assert!(!p.is_hit_by(&g)),
            v => panic!("unexpected {v:?}"),
        }
    }

    #[test]
    fn exhaustive_budget() {
        let p = random_edge_partition(&Graph::complete(30).unwrap(), 3, 0).unwrap();
        assert!(matches!(
            check_k_partitioned(&p, CheckMode::exhaustive()),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn partition_text_round_trip() {
        let g = Graph::complete(5).unwrap();
        let p = random_edge_partition(&g, 3, 9).unwrap();
        assert_eq!(parse_edge_partition(&g, &write_edge_partition(&p)).unwrap(), p);
        assert_eq!(random_edge_partition(&g, 3, 9).unwrap(), p);
    }
}
