use std::collections::VecDeque;

use num_rational::Ratio;

use super::Graph;

/// Two-colouring of a graph, or an odd closed walk proving none exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    Sides { side: Vec<u8> },
    OddCycle(Vec<usize>),
}

impl Bipartition {
    pub fn is_bipartite(&self) -> bool {
        matches!(self, Bipartition::Sides { .. })
    }

    pub fn side(&self, v: usize) -> Option<u8> {
        match self {
            Bipartition::Sides { side } => Some(side[v]),
            Bipartition::OddCycle(_) => None,
        }
    }

    /// Vertices on side 0 and side 1.
    pub fn parts(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let Bipartition::Sides { side } = self else {
            return None;
        };
        let a = (0..side.len()).filter(|&v| side[v] == 0).collect();
        let b = (0..side.len()).filter(|&v| side[v] == 1).collect();
        Some((a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub bipartition: Bipartition,
    pub is_acyclic: bool,
    pub degeneracy: usize,
    /// `2|E| / |V|` as an exact ratio (zero for the empty vertex set).
    pub average_degree: Ratio<usize>,
    pub components: usize,
}

impl Graph {
    pub fn structure(&self) -> StructureReport {
        StructureReport {
            bipartition: self.bipartition(),
            is_acyclic: self.is_acyclic(),
            degeneracy: self.degeneracy(),
            average_degree: if self.n() == 0 {
                Ratio::from_integer(0)
            } else {
                Ratio::new(2 * self.num_edges(), self.n())
            },
            components: self.components().1,
        }
    }

    /// BFS two-colouring. On failure the certificate is a cycle of odd
    /// length listed as consecutive adjacent vertices.
    pub fn bipartition(&self) -> Bipartition {
        let n = self.n();
        let mut side = vec![u8::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for s in 0..n {
            if side[s] != u8::MAX {
                continue;
            }
            side[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if side[w] == u8::MAX {
                        side[w] = 1 - side[u];
                        parent[w] = u;
                        queue.push_back(w);
                    } else if side[w] == side[u] {
                        return Bipartition::OddCycle(odd_cycle(&parent, u, w));
                    }
                }
            }
        }
        Bipartition::Sides { side }
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_bipartite()
    }

    /// Component id per vertex and the number of components.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.n();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = count;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in self.neighbors(u) {
                    if comp[w] == usize::MAX {
                        comp[w] = count;
                        stack.push(w);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_acyclic(&self) -> bool {
        self.num_edges() + self.components().1 == self.n()
    }

    /// Largest minimum degree over all subgraphs, by repeated min-degree removal.
    pub fn degeneracy(&self) -> usize {
        let n = self.n();
        let mut deg: Vec<usize> = (0..n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; n];
        let mut best = 0;
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| deg[v])
                .expect("vertex left");
            best = best.max(deg[v]);
            removed[v] = true;
            for &w in self.neighbors(v) {
                if !removed[w] {
                    deg[w] -= 1;
                }
            }
        }
        best
    }
}

fn odd_cycle(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let path_to_root = |mut x: usize| {
        let mut p = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            p.push(x);
        }
        p
    };
    let pu = path_to_root(u);
    let pw = path_to_root(w);
    // strip the common tail above the lowest common ancestor
    let mut i = pu.len();
    let mut j = pw.len();
    while i > 1 && j > 1 && pu[i - 2] == pw[j - 2] {
        i -= 1;
        j -= 1;
    }
    let mut cycle: Vec<usize> = pu[..i].to_vec();
    cycle.extend(pw[..j - 1].iter().rev());
    cycle
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_reports() {
        let r = Graph::cycle(4).unwrap().structure();
        assert!(r.bipartition.is_bipartite());
        assert!(!r.is_acyclic);
        assert_eq!(r.degeneracy, 2);
        assert_eq!(r.average_degree, Ratio::from_integer(2));

        let g = Graph::cycle(5).unwrap();
        let Bipartition::OddCycle(c) = g.bipartition() else {
            panic!("C5 is not bipartite");
        };
        assert_eq!(c.len() % 2, 1);
        for i in 0..c.len() {
            assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
        }

        let p = Graph::path(4).unwrap().structure();
        assert!(p.is_acyclic);
        assert_eq!(p.degeneracy, 1);
    }

    #[test]
    fn odd_cycle_inside_larger_graph() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 2)]).unwrap();
        let Bipartition::OddCycle(c) = g.bipartition() else {
            panic!("contains C5");
        };
        assert_eq!(c.len(), 5);
        for i in 0..c.len() {
            assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
        }
    }
}
