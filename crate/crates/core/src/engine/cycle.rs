use num_rational::BigRational;
use num_traits::Zero;

use super::poly::Poly;
use super::{is_valid_choice, Choice, SubspaceAssignment};
use crate::error::{Error, Result};
use crate::fields::FieldSpec;
use crate::graphs::Graph;
use crate::linalg::Vector;

/// Vertices of a connected 2-regular graph in cyclic order, starting at 0 and
/// continuing to its smaller neighbour.
pub fn cycle_order(g: &Graph) -> Result<Vec<usize>> {
    let n = g.n();
    if n < 3 || (0..n).any(|v| g.degree(v) != 2) {
        return Err(Error::precondition("graph is not a cycle"));
    }
    let mut order = vec![0];
    let mut prev = 0;
    let mut cur = *g.neighbors(0).iter().min().expect("degree 2");
    while cur != 0 {
        order.push(cur);
        let next = *g.neighbors(cur).iter().find(|&&w| w != prev).expect("degree 2");
        prev = cur;
        cur = next;
    }
    if order.len() != n {
        return Err(Error::precondition("graph is not a single cycle"));
    }
    Ok(order)
}

/// Result of symbolic propagation around a cycle of planes over the rationals.
///
/// `x_1(z) = u1 + z u2` (RREF basis of the first plane) is pushed around the
/// cycle; each step takes the line of the next plane orthogonal to the
/// previous vector, with polynomial coefficients made coprime. At roots of a
/// removed common factor the previous vector is orthogonal to the whole next
/// plane, which always leaves room to close the cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleObstruction {
    /// `P(z) = <x_l(z), x_1(z)>`.
    pub polynomial: Poly,
    /// Removed common factors, with the cycle position where they arose.
    pub branch_polys: Vec<(usize, Poly)>,
    pub has_real_root: bool,
    pub has_rational_root: bool,
    /// Whether starting from `x_1 = u2` closes the cycle.
    pub infinity_closes: bool,
}

impl CycleObstruction {
    /// Whether some valid choice exists over the reals.
    pub fn real_choice_exists(&self) -> bool {
        self.polynomial.is_zero()
            || self.has_real_root
            || self.infinity_closes
            || self.branch_polys.iter().any(|(_, g)| g.has_real_root())
    }
}

type PolyVec = Vec<Poly>;

fn pdot(x: &PolyVec, v: &Vector) -> Poly {
    let mut acc = Poly::zero();
    for (p, c) in x.iter().zip(v.entries()) {
        if !c.is_zero() && !p.is_zero() {
            acc = acc.add(&p.scale(&c.to_rational()));
        }
    }
    acc
}

fn pdot2(x: &PolyVec, y: &PolyVec) -> Poly {
    x.iter().zip(y).fold(Poly::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
}

fn combine(ca: &Poly, a: &Vector, cb: &Poly, b: &Vector) -> PolyVec {
    a.entries()
        .iter()
        .zip(b.entries())
        .map(|(ai, bi)| ca.scale(&ai.to_rational()).add(&cb.scale(&bi.to_rational())))
        .collect()
}

fn check_planes(a: &SubspaceAssignment) -> Result<Vec<usize>> {
    if a.field().is_finite() {
        return Err(Error::precondition(
            "cycle obstruction works over the rationals; use the search engine",
        ));
    }
    let order = cycle_order(a.graph())?;
    if let Some(v) = (0..a.graph().n()).find(|&v| a.subspace(v).dim() != 2) {
        return Err(Error::precondition(format!(
            "subspace of vertex {v} is not 2-dimensional"
        )));
    }
    Ok(order)
}

pub fn cycle_obstruction(a: &SubspaceAssignment) -> Result<CycleObstruction> {
    let order = check_planes(a)?;
    let w0 = a.subspace(order[0]).basis();
    let x1 = combine(
        &Poly::constant(BigRational::from_integer(1.into())),
        &w0[0],
        &Poly::z(),
        &w0[1],
    );
    let mut x = x1.clone();
    let mut branch_polys = Vec::new();
    for (step, &v) in order.iter().enumerate().skip(1) {
        let basis = a.subspace(v).basis();
        let ca = pdot(&x, &basis[0]);
        let cb = pdot(&x, &basis[1]);
        if ca.is_zero() && cb.is_zero() {
            return Err(Error::DegenerateStep { step });
        }
        let g = ca.gcd(&cb);
        let (ca, cb) = (ca.div_rem(&g).0, cb.div_rem(&g).0);
        if g.degree().unwrap_or(0) > 0 {
            branch_polys.push((step, g));
        }
        x = combine(&cb, &basis[0], &ca.neg(), &basis[1]);
    }
    let polynomial = pdot2(&x, &x1);
    let infinity_closes = complete_cycle_from(a, &order, &w0[1]).is_some();
    Ok(CycleObstruction {
        has_real_root: polynomial.has_real_root(),
        has_rational_root: polynomial.has_rational_root(),
        polynomial,
        branch_polys,
        infinity_closes,
    })
}

/// Completes a cycle choice from a fixed first vector, or `None` if the
/// vector does not extend. Works over any field.
pub fn complete_cycle_from(a: &SubspaceAssignment, order: &[usize], x1: &Vector) -> Option<Choice> {
    let l = order.len();
    let w = |i: usize| a.subspace(order[i]);
    if x1.is_zero() || !w(0).contains(x1) {
        return None;
    }
    let mut xs: Vec<Option<Vector>> = vec![None; l];
    xs[0] = Some(x1.clone());
    let mut i = 1;
    while i < l {
        let prev = xs[i - 1].clone().expect("set");
        let mut s = w(i).restrict_orthogonal(&[prev]).ok()?;
        if i == l - 1 {
            s = s.restrict_orthogonal(std::slice::from_ref(x1)).ok()?;
            xs[i] = Some(s.first_vector()?);
            break;
        }
        if s.dim() == w(i).dim() && !w(i).is_zero() {
            // previous vector is orthogonal to all of W_i: close backwards
            let mut next = x1.clone();
            for j in (i..l).rev() {
                let t = w(j).restrict_orthogonal(&[next]).ok()?;
                let y = t.first_vector()?;
                next = y.clone();
                xs[j] = Some(y);
            }
            break;
        }
        xs[i] = Some(s.first_vector()?);
        i += 1;
    }
    let mut vectors = vec![x1.clone(); l];
    for (k, &v) in order.iter().enumerate() {
        vectors[v] = xs[k].clone()?;
    }
    let c = Choice::new(vectors);
    is_valid_choice(a, &c).then_some(c)
}

/// Real-field decision for a cycle of planes over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealCycleDecision {
    pub real_choice_exists: bool,
    /// `None` when propagation hit an identically degenerate step.
    pub obstruction: Option<CycleObstruction>,
    pub degenerate_step: Option<usize>,
    /// A valid choice with rational entries, when one was found.
    pub rational_witness: Option<Choice>,
}

pub fn decide_cycle_over_reals(a: &SubspaceAssignment) -> Result<RealCycleDecision> {
    let order = check_planes(a)?;
    let w0 = a.subspace(order[0]).basis().to_vec();
    let field = FieldSpec::rationals();
    let start = |z: &BigRational| -> Vector { w0[0].axpy(&field.from_rational(z).expect("rational"), &w0[1]) };
    match cycle_obstruction(a) {
        Err(Error::DegenerateStep { step }) => {
            let witness = complete_cycle_from(a, &order, &w0[0]);
            Ok(RealCycleDecision {
                real_choice_exists: true,
                obstruction: None,
                degenerate_step: Some(step),
                rational_witness: witness,
            })
        }
        Err(e) => Err(e),
        Ok(ob) => {
            let mut candidates: Vec<BigRational> = ob.polynomial.rational_roots();
            if ob.polynomial.is_zero() {
                candidates.push(BigRational::zero());
            }
            for (_, g) in &ob.branch_polys {
                candidates.extend(g.rational_roots());
            }
            let mut witness = candidates
                .iter()
                .find_map(|z| complete_cycle_from(a, &order, &start(z)));
            if witness.is_none() && ob.infinity_closes {
                witness = complete_cycle_from(a, &order, &w0[1]);
            }
            Ok(RealCycleDecision {
                real_choice_exists: ob.real_choice_exists(),
                obstruction: Some(ob),
                degenerate_step: None,
                rational_witness: witness,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Subspace;

    fn rational_plane(t: usize, rows: &[&[i64]]) -> Subspace {
        let q = FieldSpec::rationals();
        let vs: Vec<Vector> = rows.iter().map(|r| Vector::from_i64s(q, r)).collect();
        Subspace::span(q, t, &vs).unwrap()
    }

    fn cycle_assignment(t: usize, planes: &[&[&[i64]]]) -> SubspaceAssignment {
        let g = Graph::cycle(planes.len()).unwrap();
        let subs = planes.iter().map(|rows| rational_plane(t, rows)).collect();
        SubspaceAssignment::new(g, FieldSpec::rationals(), t, subs).unwrap()
    }

    #[test]
    fn triangle_in_rational_plane() {
        let plane: &[&[i64]] = &[&[1, 0], &[0, 1]];
        let a = cycle_assignment(2, &[plane; 3]);
        let ob = cycle_obstruction(&a).unwrap();
        // proportional to z^2 + 1
        assert_eq!(ob.polynomial.monic(), Poly::from_i64s(&[1, 0, 1]));
        assert!(!ob.real_choice_exists());
    }

    #[test]
    fn square_in_rational_plane_is_choosable() {
        let plane: &[&[i64]] = &[&[1, 0], &[0, 1]];
        let a = cycle_assignment(2, &[plane; 4]);
        let d = decide_cycle_over_reals(&a).unwrap();
        assert!(d.real_choice_exists);
        assert!(is_valid_choice(&a, d.rational_witness.as_ref().unwrap()));
    }

    #[test]
    fn orthogonal_planes_are_degenerate() {
        let a = cycle_assignment(
            4,
            &[
                &[&[1, 0, 0, 0], &[0, 1, 0, 0]],
                &[&[0, 0, 1, 0], &[0, 0, 0, 1]],
                &[&[1, 0, 1, 0], &[0, 1, 0, 1]],
            ],
        );
        assert_eq!(cycle_obstruction(&a), Err(Error::DegenerateStep { step: 1 }));
        let d = decide_cycle_over_reals(&a).unwrap();
        assert!(d.real_choice_exists);
        assert!(is_valid_choice(&a, d.rational_witness.as_ref().unwrap()));
    }

    #[test]
    fn cycle_order_walks_the_cycle() {
        let g = Graph::from_edges(4, &[(0, 2), (2, 1), (1, 3), (3, 0)]).unwrap();
        assert_eq!(cycle_order(&g).unwrap(), vec![0, 2, 1, 3]);
        assert!(cycle_order(&Graph::path(3).unwrap()).is_err());
    }
}
