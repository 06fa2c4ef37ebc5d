use super::cnf::Cnf;
use super::gadget::{build_exists_graph, claim3_choice, complete_backward, extend_outward, forcing_subspaces, Branch};
use crate::constructions::Partial;
use crate::engine::{Choice, SubspaceAssignment};
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::graphs::{DimensionMap, Graph};
use crate::linalg::{Subspace, Vector};

/// The ∃-graph of one variable inside `G_φ`; top outs carry the label `x_j`,
/// bottom outs `~x_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VariableGadget {
    pub in_vertex: usize,
    pub top: Branch,
    pub bottom: Branch,
}

/// `G_φ` with its dimension map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionOutput {
    pub cnf: Cnf,
    pub graph: Graph,
    pub f: DimensionMap,
    pub gadgets: Vec<VariableGadget>,
    pub clause_vertices: Vec<usize>,
}

/// One ∃-graph per variable sized by its literal counts, one clause vertex
/// (`f = 3`) per clause, and each literal occurrence wired to the next unused
/// out vertex of its label, clauses taken left to right.
pub fn build_reduction(cnf: &Cnf) -> ReductionOutput {
    let mut graph = Graph::empty(0);
    let mut f = Vec::new();
    let mut gadgets = Vec::new();
    for v in 0..cnf.num_vars() {
        let (n1, n2) = cnf.occurrences(v);
        let h = build_exists_graph(n1, n2);
        let off = graph.n();
        graph = graph.disjoint_union(&h.graph);
        f.extend_from_slice(h.f.values());
        let name = format!("x{}", v + 1);
        for u in off..graph.n() {
            let inner = graph.label(u).unwrap_or_default().to_string();
            graph.set_label(u, format!("{name}.{inner}"));
        }
        let g = VariableGadget {
            in_vertex: h.in_vertex + off,
            top: h.top.shifted(off),
            bottom: h.bottom.shifted(off),
        };
        for &o in &g.top.outs {
            graph.set_label(o, name.clone());
        }
        for &o in &g.bottom.outs {
            graph.set_label(o, format!("~{name}"));
        }
        gadgets.push(g);
    }
    let mut next_out = vec![(0usize, 0usize); cnf.num_vars()];
    let mut clause_vertices = Vec::new();
    for (i, clause) in cnf.clauses().iter().enumerate() {
        let c = graph.add_vertex(Some(format!("C{}", i + 1)));
        f.push(3);
        for l in clause {
            let g = &gadgets[l.var];
            let slot = &mut next_out[l.var];
            let o = if l.positive {
                slot.0 += 1;
                g.top.outs[slot.0 - 1]
            } else {
                slot.1 += 1;
                g.bottom.outs[slot.1 - 1]
            };
            graph.add_edge(c, o).expect("each out is wired once");
        }
        clause_vertices.push(c);
    }
    ReductionOutput {
        cnf: cnf.clone(),
        graph,
        f: DimensionMap::new(f).expect("dimensions"),
        gadgets,
        clause_vertices,
    }
}

impl VariableGadget {
    /// `(designated, opposite)`: the branch of the true literal first.
    fn sides(&self, value: bool) -> (&Branch, &Branch) {
        if value {
            (&self.top, &self.bottom)
        } else {
            (&self.bottom, &self.top)
        }
    }
}

impl ReductionOutput {
    pub fn ambient(&self) -> usize {
        self.cnf.num_vars() + 7
    }
}

/// Forcing assignments on every gadget in `F^{n+7}` (variable `x_j` uses
/// `e_{j+7}`), clause vertices on the span of their variables' coordinates.
/// When `φ` is unsatisfiable no valid choice exists.
pub fn reduction_unsat_assignment(r: &ReductionOutput, field: FieldSpec) -> Result<SubspaceAssignment> {
    let t = r.ambient();
    let mut subs = vec![Subspace::zero(field, t); r.graph.n()];
    for (v, g) in r.gadgets.iter().enumerate() {
        for (u, s) in forcing_subspaces(g.in_vertex, [&g.top, &g.bottom], field, t, v + 8)? {
            subs[u] = s;
        }
    }
    for (c, clause) in r.clause_vertices.iter().zip(r.cnf.clauses()) {
        let rows: Vec<Vector> = clause.iter().map(|l| Vector::unit(field, t, l.var + 7)).collect();
        subs[*c] = Subspace::span(field, t, &rows)?;
    }
    SubspaceAssignment::new(r.graph.clone(), field, t, subs)
}

/// A valid choice on any `f`-assignment of `G_φ`, built from a satisfying
/// truth assignment: `in` vectors compatible with the true literal's branch,
/// the other branches grown outward, then clauses, the remaining outs, and
/// finally the true branches walked back towards `in`.
pub fn sat_choice_strategy(r: &ReductionOutput, a: &SubspaceAssignment, truth: &[bool]) -> Result<Choice> {
    if truth.len() != r.cnf.num_vars() {
        return Err(Error::invalid(format!(
            "{} truth values for {} variables",
            truth.len(),
            r.cnf.num_vars()
        )));
    }
    if let Some(i) = r.cnf.first_unsatisfied(truth) {
        return Err(Error::NotSatisfying(i + 1));
    }
    if a.graph() != &r.graph {
        return Err(Error::precondition("assignment is not on G_φ"));
    }
    if !a.matches(&r.f) {
        return Err(Error::precondition("assignment dimensions differ from f"));
    }
    let mut part = Partial::new(a);
    for (g, &val) in r.gadgets.iter().zip(truth) {
        let (keep, other) = g.sides(val);
        let [l0, t0, _, _] = keep.cycles[0];
        let (x_in, x_b) = claim3_choice(a.subspace(g.in_vertex), a.subspace(l0), a.subspace(t0))?;
        part.set(g.in_vertex, x_in)?;
        part.set(t0, x_b)?;
        extend_outward(&mut part, other)?;
    }
    for &c in &r.clause_vertices {
        part.pick(c)?;
    }
    for (g, &val) in r.gadgets.iter().zip(truth) {
        let (keep, _) = g.sides(val);
        for &o in &keep.outs {
            part.pick(o)?;
        }
        complete_backward(&mut part, keep)?;
    }
    part.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::is_valid_choice;
    use crate::hardness::cnf::parse_dimacs;

    #[test]
    fn sizes() {
        let one = parse_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap();
        let r = build_reduction(&one);
        assert_eq!(r.graph.n(), 43);
        assert!(r.graph.is_bipartite());
        assert_eq!(r.graph.degree(r.clause_vertices[0]), 3);
        let r8 = build_reduction(&Cnf::all_patterns());
        assert_eq!(r8.graph.n(), 173);
        assert_eq!(r8.ambient(), 10);
        assert_eq!(r8.graph.find_label("C8"), Some(172));
    }

    #[test]
    fn sat_strategy_on_forcing_assignment() {
        let one = parse_dimacs("p cnf 3 1\n1 2 3 0\n").unwrap();
        let r = build_reduction(&one);
        for p in [2, 3] {
            let a = reduction_unsat_assignment(&r, FieldSpec::prime(p).unwrap()).unwrap();
            let c = sat_choice_strategy(&r, &a, &[true, false, true]).unwrap();
            assert!(is_valid_choice(&a, &c));
        }
        let a = reduction_unsat_assignment(&r, FieldSpec::prime(3).unwrap()).unwrap();
        assert_eq!(
            sat_choice_strategy(&r, &a, &[false, false, false]),
            Err(Error::NotSatisfying(1))
        );
    }
}
