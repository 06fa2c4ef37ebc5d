use crate::engine::SubspaceAssignment;
use crate::error::{Error, Result};
use crate::graphs::{DimensionMap, Graph};
use crate::linalg::{Subspace, Vector};

fn sides(g: &Graph) -> Result<Vec<u8>> {
    let b = g.bipartition();
    (0..g.n()).map(|v| b.side(v).ok_or(Error::NotBipartite)).collect()
}

/// `copies` disjoint copies of `g` plus `v1`, `v2`; `v_l` is joined to the
/// side-`l` vertices accepted by `keep`.
fn copies_with_hubs(g: &Graph, copies: usize, keep: impl Fn(usize) -> bool) -> Result<Graph> {
    let side = sides(g)?;
    let n = g.n();
    let mut out = Graph::empty(0);
    for _ in 0..copies {
        out = out.disjoint_union(g);
    }
    let v1 = out.add_vertex(Some("v1".into()));
    let v2 = out.add_vertex(Some("v2".into()));
    for c in 0..copies {
        for u in (0..n).filter(|&u| keep(u)) {
            let hub = if side[u] == 0 { v1 } else { v2 };
            out.add_edge(hub, c * n + u)?;
        }
    }
    Ok(out)
}

/// Bipartite `G'` that is `k`-vector choosable iff `G` is `f`-vector
/// choosable. For `k = 3`: nine copies of `G` and two hubs joined to the
/// `f = 2` vertices of their side; each further step to `k` takes `k^2`
/// copies of the previous graph with hubs joined to whole sides.
pub fn amplify_to_k(g: &Graph, f: &DimensionMap, k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::invalid(format!("k = {k} < 3")));
    }
    if f.len() != g.n() || f.values().iter().any(|&d| d != 2 && d != 3) {
        return Err(Error::invalid("f must map every vertex to 2 or 3"));
    }
    let mut cur = copies_with_hubs(g, 9, |u| f.get(u) == 2)?;
    for kk in 4..=k {
        cur = copies_with_hubs(&cur, kk * kk, |_| true)?;
    }
    Ok(cur)
}

/// The `k = 3` lift of an `f`-assignment in `F^t` to a 3-assignment of
/// `amplify_to_k(G, f, 3)` in `F^{t+3}`: three zeros in front, `e_i` added
/// to the `f = 2` vertices next to `v1` and `e_j` to those next to `v2` in
/// copy `(i, j)`, and `span(e1, e2, e3)` on both hubs.
pub fn amplify_assignment_k3(a: &SubspaceAssignment) -> Result<SubspaceAssignment> {
    let g = a.graph();
    let side = sides(g)?;
    let dims = a.dims();
    if dims.iter().any(|&d| d != 2 && d != 3) {
        return Err(Error::precondition("assignment dimensions must be 2 or 3"));
    }
    let f = DimensionMap::new(dims.clone())?;
    let big = amplify_to_k(g, &f, 3)?;
    let (field, t) = (a.field(), a.ambient() + 3);
    let mut subs = Vec::with_capacity(big.n());
    for i in 0..3 {
        for j in 0..3 {
            for u in 0..g.n() {
                let mut rows: Vec<Vector> = a.subspace(u).basis().iter().map(|r| r.pad(3, 0)).collect();
                if dims[u] == 2 {
                    rows.push(Vector::unit(field, t, if side[u] == 0 { i } else { j }));
                }
                subs.push(Subspace::span(field, t, &rows)?);
            }
        }
    }
    let hub = Subspace::coordinate(field, t, &[0, 1, 2]);
    subs.push(hub.clone());
    subs.push(hub);
    SubspaceAssignment::new(big, field, t, subs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let g = Graph::cycle(4).unwrap();
        let f = DimensionMap::constant(4, 2);
        let g3 = amplify_to_k(&g, &f, 3).unwrap();
        assert_eq!(g3.n(), 38);
        assert!(g3.is_bipartite());
        assert_eq!(amplify_to_k(&g, &f, 4).unwrap().n(), 610);
        assert_eq!(
            amplify_to_k(&Graph::cycle(3).unwrap(), &DimensionMap::constant(3, 2), 3),
            Err(Error::NotBipartite)
        );
    }
}
