use crate::constructions::{claim4_base, Partial};
use crate::engine::SubspaceAssignment;
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::graphs::{DimensionMap, Graph};
use crate::linalg::{Subspace, Vector};

/// One branch of an ∃-graph. Each cycle is `[L, T, B, R]` with edges
/// `L-T`, `L-B`, `T-R`, `B-R`; `L` is the entry vertex and `R` the far one.
/// `outs[i]` hangs off `cycles[i + 1]`'s `R`, and `separators[i]` joins
/// that `R` to the next cycle's `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    pub cycles: Vec<[usize; 4]>,
    pub outs: Vec<usize>,
    pub separators: Vec<usize>,
}

impl Branch {
    pub(crate) fn shifted(&self, off: usize) -> Branch {
        Branch {
            cycles: self.cycles.iter().map(|c| c.map(|v| v + off)).collect(),
            outs: self.outs.iter().map(|v| v + off).collect(),
            separators: self.separators.iter().map(|v| v + off).collect(),
        }
    }

    /// Vertices in order of increasing distance from `in`.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (c, cyc) in self.cycles.iter().enumerate() {
            out.extend_from_slice(cyc);
            if c >= 1 {
                out.push(self.outs[c - 1]);
                if let Some(&s) = self.separators.get(c - 1) {
                    out.push(s);
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> Vec<usize> {
        self.bfs_order()
    }
}

/// The ∃-graph `H(n1, n2)` with its dimension map: `in` has `f = 2`, the
/// entry and far vertex of every 4-cycle 3, everything else 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistsGraph {
    pub graph: Graph,
    pub f: DimensionMap,
    pub in_vertex: usize,
    pub top: Branch,
    pub bottom: Branch,
}

impl ExistsGraph {
    pub fn top_outs(&self) -> &[usize] {
        &self.top.outs
    }

    pub fn bottom_outs(&self) -> &[usize] {
        &self.bottom.outs
    }

    pub fn branch(&self, top: bool) -> &Branch {
        if top {
            &self.top
        } else {
            &self.bottom
        }
    }
}

fn add_branch(g: &mut Graph, f: &mut Vec<usize>, in_v: usize, outs: usize, name: &str) -> Branch {
    let node = |g: &mut Graph, f: &mut Vec<usize>, label: String, d: usize| {
        f.push(d);
        g.add_vertex(Some(label))
    };
    let num_cycles = outs + 1;
    let mut br = Branch {
        cycles: Vec::new(),
        outs: Vec::new(),
        separators: Vec::new(),
    };
    let mut prev = in_v;
    for c in 0..num_cycles {
        let l = node(g, f, format!("{name}.L{c}"), 3);
        let t = node(g, f, format!("{name}.T{c}"), 2);
        let b = node(g, f, format!("{name}.B{c}"), 2);
        let r = node(g, f, format!("{name}.R{c}"), 3);
        for (u, v) in [(prev, l), (l, t), (l, b), (t, r), (b, r)] {
            g.add_edge(u, v).expect("fresh vertices");
        }
        br.cycles.push([l, t, b, r]);
        prev = r;
        if c >= 1 {
            let o = node(g, f, format!("{name}.out{c}"), 2);
            g.add_edge(r, o).expect("fresh vertex");
            br.outs.push(o);
            if c + 1 < num_cycles {
                let s = node(g, f, format!("{name}.S{c}"), 2);
                g.add_edge(r, s).expect("fresh vertex");
                br.separators.push(s);
                prev = s;
            }
        }
    }
    br
}

/// `H(n1, n2)`: vertex 0 is `in`, then the top branch, then the bottom one.
/// A branch with `n_b` outs has `n_b + 1` four-cycles.
pub fn build_exists_graph(n1: usize, n2: usize) -> ExistsGraph {
    let mut g = Graph::empty(0);
    let mut f = Vec::new();
    let in_vertex = g.add_vertex(Some("in".into()));
    f.push(2);
    let top = add_branch(&mut g, &mut f, in_vertex, n1, "top");
    let bottom = add_branch(&mut g, &mut f, in_vertex, n2, "bottom");
    ExistsGraph {
        graph: g,
        f: DimensionMap::new(f).expect("dimensions"),
        in_vertex,
        top,
        bottom,
    }
}

/// Nonzero `x_in ∈ W_in`, `x_B ∈ W_B` that together cut `W_A` by at most one
/// dimension.
pub fn claim3_choice(w_in: &Subspace, w_a: &Subspace, w_b: &Subspace) -> Result<(Vector, Vector)> {
    if (w_in.dim(), w_a.dim(), w_b.dim()) != (2, 3, 2) {
        return Err(Error::precondition(format!(
            "expected dimensions (2, 3, 2), got ({}, {}, {})",
            w_in.dim(),
            w_a.dim(),
            w_b.dim()
        )));
    }
    if w_in.ambient() != w_a.ambient() || w_b.ambient() != w_a.ambient() {
        return Err(Error::AmbientMismatch(w_in.ambient(), w_b.ambient()));
    }
    if let Some(x) = w_in.intersect(w_b)?.first_vector() {
        return Ok((x.clone(), x));
    }
    let x = w_in
        .sum(w_b)?
        .intersect(&w_a.orthogonal_complement())?
        .first_vector()
        .ok_or_else(|| Error::internal("(W_in + W_B) ∩ W_A^⊥ is zero"))?;
    let (x1, x2) = crate::constructions::decompose(&x, w_in, w_b)
        .ok_or_else(|| Error::internal("decomposition outside the sum"))?;
    let any = |s: &Subspace| s.first_vector().expect("dimension 2");
    Ok(match (x1.is_zero(), x2.is_zero()) {
        (false, false) => (x1, x2),
        (true, _) => (any(w_in), x2),
        (_, true) => (x1, any(w_b)),
    })
}

/// Four-cycle data in `F^7` forcing vertex 0 onto `e_x`, `x ∈ {6, 7}`
/// (1-based coordinate). Vertex 0 has dimension 3, the rest 2.
pub fn claim4_assignment(field: FieldSpec, x: usize) -> Result<SubspaceAssignment> {
    if x != 6 && x != 7 {
        return Err(Error::invalid(format!("x must be e6 or e7, got e{x}")));
    }
    claim4_base(field, x - 1)
}

/// Forcing assignment on `H` in `F^t`: every valid choice sends all outs of
/// some branch to multiples of `e_j` (`j` 1-based, `8 <= j <= t`).
pub fn gadget_forcing_assignment(h: &ExistsGraph, field: FieldSpec, t: usize, j: usize) -> Result<SubspaceAssignment> {
    let subs = forcing_subspaces(h.in_vertex, [&h.top, &h.bottom], field, t, j)?;
    let mut all = vec![Subspace::zero(field, t); h.graph.n()];
    for (v, s) in subs {
        all[v] = s;
    }
    SubspaceAssignment::new(h.graph.clone(), field, t, all)
}

/// Subspaces of the forcing assignment for one gadget's vertices.
pub(crate) fn forcing_subspaces(
    in_vertex: usize,
    branches: [&Branch; 2],
    field: FieldSpec,
    t: usize,
    j: usize,
) -> Result<Vec<(usize, Subspace)>> {
    if t < 8 {
        return Err(Error::precondition(format!("ambient {t} < 8")));
    }
    if j < 8 || j > t {
        return Err(Error::precondition(format!("j = {j} outside 8..={t}")));
    }
    let unit = |i: usize| Vector::unit(field, t, i - 1);
    let pad = |s: &Subspace, extra: Option<usize>| -> Result<Subspace> {
        let mut rows: Vec<Vector> = s.basis().iter().map(|r| r.pad(0, t - 7)).collect();
        if let Some(i) = extra {
            rows.push(unit(i));
        }
        Subspace::span(field, t, &rows)
    };
    let first = claim4_assignment(field, 6)?;
    let later = claim4_assignment(field, 7)?;
    let e67 = Subspace::span(field, t, &[unit(6), unit(7)])?;
    let out_space = Subspace::span(field, t, &[unit(7), unit(j)])?;
    let mut out = vec![(in_vertex, e67.clone())];
    for (branch, entry_extra) in [(branches[0], 6), (branches[1], 7)] {
        for (c, &[l, tv, b, r]) in branch.cycles.iter().enumerate() {
            let (base, extra) = if c == 0 { (&first, entry_extra) } else { (&later, 6) };
            out.push((r, pad(base.subspace(0), None)?));
            out.push((tv, pad(base.subspace(1), None)?));
            out.push((l, pad(base.subspace(2), Some(extra))?));
            out.push((b, pad(base.subspace(3), None)?));
        }
        out.extend(branch.outs.iter().map(|&o| (o, out_space.clone())));
        out.extend(branch.separators.iter().map(|&s| (s, e67.clone())));
    }
    Ok(out)
}

/// Extends a partial choice to a whole branch outward from `in` (every
/// vertex loses at most one dimension per chosen earlier neighbour).
pub(crate) fn extend_outward(part: &mut Partial, br: &Branch) -> Result<()> {
    for v in br.bfs_order() {
        if !part.is_set(v) {
            part.pick(v)?;
        }
    }
    Ok(())
}

/// Completes a branch whose outs, `in` and `T0` are already chosen, walking
/// back from the last cycle towards `in`.
pub(crate) fn complete_backward(part: &mut Partial, br: &Branch) -> Result<()> {
    for c in (1..br.cycles.len()).rev() {
        let [l, t, b, r] = br.cycles[c];
        for v in [r, t, b, l] {
            part.pick(v)?;
        }
        if c >= 2 {
            part.pick(br.separators[c - 2])?;
        }
    }
    let [l, _, b, r] = br.cycles[0];
    for v in [r, b, l] {
        part.pick(v)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(build_exists_graph(1, 1).graph.n(), 19);
        assert_eq!(build_exists_graph(0, 0).graph.n(), 9);
        for n1 in 0..=4 {
            for n2 in 0..=4 {
                let h = build_exists_graph(n1, n2);
                let side = |nb: usize| if nb == 0 { 4 } else { 4 * (nb + 1) + nb + (nb - 1) };
                assert_eq!(h.graph.n(), 1 + side(n1) + side(n2));
                assert_eq!(h.graph.degree(h.in_vertex), 2);
                assert_eq!(h.f.len(), h.graph.n());
                assert_eq!((h.top_outs().len(), h.bottom_outs().len()), (n1, n2));
            }
        }
    }

    #[test]
    fn claim3_shared_vector() {
        let f = FieldSpec::prime(3).unwrap();
        let w = Subspace::coordinate(f, 5, &[0, 1]);
        let a = Subspace::coordinate(f, 5, &[2, 3, 4]);
        let (x, y) = claim3_choice(&w, &a, &w).unwrap();
        assert_eq!(x, y);
        assert_eq!(x, Vector::unit(f, 5, 0));
    }

    #[test]
    fn forcing_dims_and_bounds() {
        let f = FieldSpec::prime(3).unwrap();
        let h = build_exists_graph(2, 1);
        let a = gadget_forcing_assignment(&h, f, 9, 9).unwrap();
        assert!(a.matches(&h.f));
        assert!(matches!(
            gadget_forcing_assignment(&h, f, 7, 8),
            Err(Error::PreconditionViolated(_))
        ));
        assert!(matches!(
            gadget_forcing_assignment(&h, f, 9, 7),
            Err(Error::PreconditionViolated(_))
        ));
    }
}
