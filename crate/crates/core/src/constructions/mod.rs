//! Explicit subspace assignments without valid choices, and the constructive
//! choice procedures that go with the matching upper bounds.

mod bipartite;
mod complete;
mod cycles;
mod k2;
mod partition;
mod projective;

pub use bipartite::{
    adversarial_assignment, ball_bound, bipartite_choice, bipartite_sides, greedy_asymmetric_choice, lower_as_bound,
    Adversarial, VectorFamily,
};
pub use complete::{choice_3sub, complete_graph_choice};
pub(crate) use cycles::claim4_base;
pub use cycles::{cycle_bad_assignment, even_block_certificate};
pub use k2::{haynes_bases, k2_choice, k2n_choice_odd, HaynesBases, OddOutcome};
pub use partition::{
    check_k_partitioned, parse_edge_partition, partition_assignment, random_edge_partition, write_edge_partition,
    CheckMode, EdgePartition, PartLabeling, PartitionVerdict,
};
pub use projective::{projective_plane_partition, ProjectiveCertificate, ProjectivePlane};

use crate::engine::{Choice, SubspaceAssignment};
use crate::error::{Error, Result};
use crate::linalg::{Subspace, Vector};

/// Greedy bookkeeping shared by the constructive procedures: the current
/// partial choice and, per vertex, the part of `W_v` orthogonal to every
/// chosen neighbour.
pub(crate) struct Partial<'a> {
    a: &'a SubspaceAssignment,
    chosen: Vec<Option<Vector>>,
}

impl<'a> Partial<'a> {
    pub(crate) fn new(a: &'a SubspaceAssignment) -> Self {
        Partial {
            a,
            chosen: vec![None; a.graph().n()],
        }
    }

    pub(crate) fn is_set(&self, v: usize) -> bool {
        self.chosen[v].is_some()
    }

    /// `U'_v`: vectors of `W_v` orthogonal to the chosen neighbours.
    pub(crate) fn avail(&self, v: usize) -> Subspace {
        let xs: Vec<Vector> = self
            .a
            .graph()
            .neighbors(v)
            .iter()
            .filter_map(|&w| self.chosen[w].clone())
            .collect();
        self.a.subspace(v).restrict_orthogonal(&xs).expect("same ambient")
    }

    /// Sets `x_v` after checking it is available.
    pub(crate) fn set(&mut self, v: usize, x: Vector) -> Result<()> {
        if x.is_zero() || !self.avail(v).contains(&x) {
            return Err(Error::internal(format!("vector for vertex {v} is not available")));
        }
        self.chosen[v] = Some(x);
        Ok(())
    }

    /// Picks the first available vector for `v`.
    pub(crate) fn pick(&mut self, v: usize) -> Result<Vector> {
        let x = self
            .avail(v)
            .first_vector()
            .ok_or_else(|| Error::internal(format!("no vector left for vertex {v}")))?;
        self.chosen[v] = Some(x.clone());
        Ok(x)
    }

    pub(crate) fn finish(self) -> Result<Choice> {
        let mut out = Vec::with_capacity(self.chosen.len());
        for (v, x) in self.chosen.into_iter().enumerate() {
            out.push(x.ok_or_else(|| Error::internal(format!("vertex {v} left without a vector")))?);
        }
        Ok(Choice::new(out))
    }
}

/// The first nonzero vector of the subspace, as an error if there is none.
pub(crate) fn first_nonzero(s: &Subspace, what: &str) -> Result<Vector> {
    s.first_vector()
        .ok_or_else(|| Error::internal(format!("{what} is the zero subspace")))
}

/// Splits `x ∈ U1 + U2` as `x1 + x2` with `x1 ∈ U1`, `x2 ∈ U2`.
pub(crate) fn decompose(x: &Vector, u1: &Subspace, u2: &Subspace) -> Option<(Vector, Vector)> {
    let field = x.field();
    let cols: Vec<Vector> = u1.basis().iter().chain(u2.basis()).cloned().collect();
    if cols.is_empty() {
        return x.is_zero().then(|| (x.clone(), x.clone()));
    }
    let m = crate::linalg::Matrix::from_columns(field, x.len(), &cols).ok()?;
    let c = m.solve(x)?;
    let d1 = u1.dim();
    let zero = Vector::zero(field, x.len());
    let x1 = if d1 == 0 {
        zero.clone()
    } else {
        crate::linalg::linear_combination(&c.entries()[..d1], u1.basis())
    };
    let x2 = if u2.dim() == 0 {
        zero
    } else {
        crate::linalg::linear_combination(&c.entries()[d1..], u2.basis())
    };
    Some((x1, x2))
}
