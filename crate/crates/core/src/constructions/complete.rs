use super::{decompose, first_nonzero, Partial};
use crate::engine::{Choice, SubspaceAssignment};
use crate::error::{Error, Result};
use crate::linalg::{find_isotropic_combination, linear_combination, Subspace, Vector};

/// Orthogonal nonzero `x1 ∈ U1`, `x2 ∈ U2` whose joint constraint removes at
/// most one dimension from `U3`.
///
/// Needs a finite prime field, `dim U1, dim U2 >= 2` and
/// `dim U1 + dim U2 - dim U3 >= 5` (`>= 4` over GF(2)).
pub fn choice_3sub(u1: &Subspace, u2: &Subspace, u3: &Subspace) -> Result<(Vector, Vector)> {
    let field = u1.field();
    let p = field
        .modulus()
        .ok_or_else(|| Error::precondition("choice_3sub needs a finite field"))?;
    if u2.field() != field || u3.field() != field {
        return Err(Error::precondition("subspaces over different fields"));
    }
    if u2.ambient() != u1.ambient() || u3.ambient() != u1.ambient() {
        return Err(Error::AmbientMismatch(u1.ambient(), u3.ambient()));
    }
    let (d1, d2, d3) = (u1.dim(), u2.dim(), u3.dim());
    let need = if p == 2 { 4 } else { 5 };
    if d1 < 2 || d2 < 2 || d1 + d2 < d3 + need {
        return Err(Error::precondition(format!(
            "dimensions ({d1}, {d2}, {d3}) below the required bound"
        )));
    }
    let ok = |x1: &Vector, x2: &Vector| -> bool {
        !x1.is_zero()
            && !x2.is_zero()
            && x1.is_orthogonal(x2)
            && u3
                .restrict_orthogonal(&[x1.clone(), x2.clone()])
                .map(|s| s.dim() + 1 >= d3)
                .unwrap_or(false)
    };

    let common = u1.intersect(u2)?;
    if common.dim() >= 3 {
        let b = &common.basis()[..3];
        let c = find_isotropic_combination(
            &[b[0].clone(), b[1].clone(), b[2].clone()],
            &[b[0].clone(), b[1].clone(), b[2].clone()],
        )?;
        let x = linear_combination(&c, b);
        return Ok((x.clone(), x));
    }
    let u3p = u3.orthogonal_complement();
    if let Some(x1) = u1.intersect(&u3p)?.first_vector() {
        let x2 = first_nonzero(&u2.restrict_orthogonal(std::slice::from_ref(&x1))?, "U2 ∩ x1^⊥")?;
        return Ok((x1, x2));
    }
    if let Some(x2) = u2.intersect(&u3p)?.first_vector() {
        let x1 = first_nonzero(&u1.restrict_orthogonal(std::slice::from_ref(&x2))?, "U1 ∩ x2^⊥")?;
        return Ok((x1, x2));
    }
    let s = u1.sum(u2)?.intersect(&u3p)?;
    if s.dim() >= 3 {
        let mut w = Vec::new();
        let mut z = Vec::new();
        for x in &s.basis()[..3] {
            let (a, b) = decompose(x, u1, u2).ok_or_else(|| Error::internal("sum decomposition failed"))?;
            w.push(a);
            z.push(b);
        }
        let c = find_isotropic_combination(
            &[w[0].clone(), w[1].clone(), w[2].clone()],
            &[z[0].clone(), z[1].clone(), z[2].clone()],
        )?;
        let (x1, x2) = (linear_combination(&c, &w), linear_combination(&c, &z));
        if ok(&x1, &x2) {
            return Ok((x1, x2));
        }
    }
    // the weakened GF(2) bound is not covered by the case split above
    for x1 in u1.projective_points()? {
        for x2 in u2.restrict_orthogonal(std::slice::from_ref(&x1))?.projective_points()? {
            if ok(&x1, &x2) {
                return Ok((x1, x2));
            }
        }
    }
    Err(Error::internal("no pair found for choice_3sub"))
}

/// Valid choice for an `(n-k)`-assignment on `K_n`, `n = k^2 + 2k + 3`.
///
/// Vertices `0..k` form `A = (v_1, ..., v_k)`, the next `k^2 + k` form `B`
/// split into consecutive blocks `B_i` of size `2(k - i + 1)` whose
/// consecutive pairs are handled by [`choice_3sub`] against `v_i`, and the
/// last three form `C`.
pub fn complete_graph_choice(a: &SubspaceAssignment, k: usize) -> Result<Choice> {
    let n = a.graph().n();
    if k == 0 || n != k * k + 2 * k + 3 {
        return Err(Error::precondition(format!(
            "K_n procedure needs n = k^2 + 2k + 3, got n = {n}, k = {k}"
        )));
    }
    if a.graph().num_edges() != n * (n - 1) / 2 {
        return Err(Error::precondition("graph is not complete"));
    }
    if let Some(v) = (0..n).find(|&v| a.subspace(v).dim() != n - k) {
        return Err(Error::precondition(format!(
            "vertex {v} has dimension {}, expected {}",
            a.subspace(v).dim(),
            n - k
        )));
    }
    if !a.field().is_finite() {
        return Err(Error::precondition("K_n procedure needs a finite field"));
    }
    let mut part = Partial::new(a);
    let mut next = k;
    let mut used = 0usize;
    for i in 1..=k {
        let vi = i - 1;
        let pairs = k - i + 1;
        for j in 1..=pairs {
            let (x, y) = (next, next + 1);
            next += 2;
            let mut target = part.avail(vi);
            let expected = (n - k) - used - (j - 1);
            if target.dim() > expected {
                // only the lower bound matters; shrink to the tracked dimension
                target = Subspace::span(a.field(), a.ambient(), &target.basis()[..expected])?;
            }
            let (ux, uy) = choice_3sub(&part.avail(x), &part.avail(y), &target)?;
            part.set(x, ux)?;
            part.set(y, uy)?;
        }
        used += 2 * pairs;
    }
    for c in next..n {
        part.pick(c)?;
    }
    for vi in (0..k).rev() {
        part.pick(vi)?;
    }
    part.finish()
}
