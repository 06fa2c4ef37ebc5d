use super::partition::EdgePartition;
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::graphs::Graph;
use crate::linalg::{Subspace, Vector};

/// PG(2, q) for prime `q`: points are the projective points of `F^3`, the
/// line with index `a` is `{x : <a, x> = 0}` for the `a`-th point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivePlane {
    pub q: u64,
    pub points: Vec<Vector>,
    pub lines: Vec<Vec<usize>>,
}

impl ProjectivePlane {
    pub fn new(q: u64) -> Result<Self> {
        let field = FieldSpec::prime(q)?;
        let points = Subspace::full(field, 3).projective_points()?;
        let lines = points
            .iter()
            .map(|a| (0..points.len()).filter(|&x| a.is_orthogonal(&points[x])).collect())
            .collect();
        Ok(ProjectivePlane { q, points, lines })
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Index of the line through two distinct points.
    pub fn line_through(&self, x: usize, y: usize) -> usize {
        self.lines
            .iter()
            .position(|l| l.contains(&x) && l.contains(&y))
            .expect("two points span a line")
    }

    pub fn lines_through(&self, x: usize) -> Vec<usize> {
        (0..self.lines.len()).filter(|&l| self.lines[l].contains(&x)).collect()
    }
}

/// Pigeonhole certificate: a labeling picks one line per vertex, only
/// `lines_used` lines are available and there are more vertices than that,
/// so two vertices pick the same line and the edge between them is hit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveCertificate {
    pub q: u64,
    pub lines_used: usize,
    pub vertices: usize,
    /// Plane point of each graph vertex.
    pub point_of: Vec<usize>,
}

impl ProjectiveCertificate {
    pub fn certifies(&self) -> bool {
        self.lines_used < self.vertices
    }
}

/// The complete `(q+1)`-partite graph with parts of size `q`, realized on the
/// points off a fixed point `p` of the lines through `p`, with `E_v` split by
/// the line through both endpoints. The last `removed` vertices (at most
/// `q - 1`) are dropped.
pub fn projective_plane_partition(q: u64, removed: usize) -> Result<(Graph, EdgePartition, ProjectiveCertificate)> {
    let plane = ProjectivePlane::new(q)?;
    let qs = q as usize;
    if removed >= qs.max(1) {
        return Err(Error::invalid(format!("at most {} vertices may be removed", qs - 1)));
    }
    let p = 0;
    let through_p = plane.lines_through(p);
    let mut point_of = Vec::new();
    let mut class = Vec::new();
    for (i, &l) in through_p.iter().enumerate() {
        for &x in &plane.lines[l] {
            if x != p {
                point_of.push(x);
                class.push(i);
            }
        }
    }
    point_of.truncate(point_of.len() - removed);
    let n = point_of.len();
    let mut g = Graph::empty(n);
    let mut edge_line = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if class[u] != class[v] {
                g.add_edge(u, v)?;
                edge_line.push(plane.line_through(point_of[u], point_of[v]));
            }
        }
    }
    // part of an edge at v: rank of its line among v's lines avoiding p
    let parts = (0..n)
        .map(|v| {
            let own: Vec<usize> = plane
                .lines_through(point_of[v])
                .into_iter()
                .filter(|l| !plane.lines[*l].contains(&p))
                .collect();
            g.incident_edges(v)
                .iter()
                .map(|&e| own.iter().position(|&l| l == edge_line[e]).expect("edge line avoids p"))
                .collect()
        })
        .collect();
    let partition = EdgePartition::new(g.clone(), qs, parts)?;
    let mut used = edge_line.clone();
    used.sort_unstable();
    used.dedup();
    let cert = ProjectiveCertificate {
        q,
        lines_used: used.len(),
        vertices: n,
        point_of,
    };
    Ok((g, partition, cert))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plane_axioms() {
        for q in [2, 3, 5] {
            let pl = ProjectivePlane::new(q).unwrap();
            let n = (q * q + q + 1) as usize;
            assert_eq!(pl.num_points(), n);
            assert_eq!(pl.lines.len(), n);
            for a in 0..n {
                assert_eq!(pl.lines[a].len(), q as usize + 1);
                assert_eq!(pl.lines_through(a).len(), q as usize + 1);
                for b in a + 1..n {
                    let common = pl.lines[a].iter().filter(|x| pl.lines[b].contains(x)).count();
                    assert_eq!(common, 1);
                    let both = pl.lines.iter().filter(|l| l.contains(&a) && l.contains(&b)).count();
                    assert_eq!(both, 1);
                }
            }
        }
    }

    #[test]
    fn fano_graph_shape() {
        let (g, p, cert) = projective_plane_partition(2, 0).unwrap();
        assert_eq!((g.n(), g.num_edges()), (6, 12));
        assert_eq!(p.k(), 2);
        assert_eq!(cert.lines_used, 4);
        assert!(cert.certifies());
    }

    #[test]
    fn removal_and_certificate_q5() {
        let (g, _, cert) = projective_plane_partition(5, 0).unwrap();
        assert_eq!(g.n(), 30);
        assert_eq!(cert.lines_used, 25);
        assert!(cert.certifies());
        let (g, _, cert) = projective_plane_partition(5, 4).unwrap();
        assert_eq!(g.n(), 26);
        assert!(cert.certifies());
        assert!(projective_plane_partition(5, 5).is_err());
        assert!(matches!(projective_plane_partition(4, 0), Err(Error::NotPrime(4))));
    }
}
