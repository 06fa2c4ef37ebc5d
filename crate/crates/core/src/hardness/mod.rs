//! 3SAT to `f`-vector choosability: the ∃-gadget, its forcing assignment,
//! the reduction `φ ↦ G_φ`, and the lift from `{2, 3}`-valued `f` to a
//! constant `k`.

mod amplify;
mod cnf;
mod gadget;
mod reduction;

pub use amplify::{amplify_assignment_k3, amplify_to_k};
pub use cnf::{parse_dimacs, Cnf, Literal};
pub use gadget::{
    build_exists_graph, claim3_choice, claim4_assignment, gadget_forcing_assignment, Branch, ExistsGraph,
};
pub use reduction::{
    build_reduction, reduction_unsat_assignment, sat_choice_strategy, ReductionOutput, VariableGadget,
};
