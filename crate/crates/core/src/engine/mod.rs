//! Deciding and certifying orthogonal choices for a fixed subspace assignment.

mod assignment;
mod certificate;
mod cycle;
mod poly;
mod search;

pub use assignment::{is_valid_choice, verify_choice, Choice, SubspaceAssignment, Violation};
pub use cycle::{
    complete_cycle_from, cycle_obstruction, cycle_order, decide_cycle_over_reals, CycleObstruction, RealCycleDecision,
};
pub use poly::Poly;
pub use search::{find_choice, for_each_choice, SearchCertificate, SearchOptions, Verdict};
