use crate::engine::{cycle_obstruction, CycleObstruction, SubspaceAssignment};
use crate::error::{Error, Result};
use crate::fields::{find_special_alpha, AlphaMode, FieldSpec, Scalar};
use crate::graphs::Graph;
use crate::linalg::{Subspace, Vector};

fn plane(field: FieldSpec, t: usize, a: Vector, b: Vector) -> Subspace {
    Subspace::span(field, t, &[a, b]).expect("two vectors in F^t")
}

/// 2-subspace assignment on `C_l` (vertices in cycle order) admitting no
/// valid choice.
///
/// Odd `l`: the triangle data `span(e1, e2)`, `span(e1, e2 + e3)`,
/// `span(e1 + alpha e3, e2)` with `z^2 - alpha z + 1` root-free (over the
/// rationals every vertex gets `Q^2`). Even `l`: the square data in `F^4`
/// (`alpha` a non-square), or in `F^5` in characteristic 2. Longer cycles
/// insert copies of `span(e1, e2)` between the first two subspaces.
pub fn cycle_bad_assignment(l: usize, field: FieldSpec) -> Result<SubspaceAssignment> {
    if l < 3 {
        return Err(Error::invalid(format!("cycle length {l} < 3")));
    }
    let base: Vec<Subspace> = if l % 2 == 1 {
        if field.is_finite() {
            triangle(field)?
        } else {
            vec![Subspace::full(field, 2); 3]
        }
    } else {
        square(field)?
    };
    let t = base[0].ambient();
    let base_len = base.len();
    let mut subs = vec![base[0].clone()];
    subs.extend(std::iter::repeat_n(base[0].clone(), l - base_len));
    subs.extend(base[1..].iter().cloned());
    SubspaceAssignment::new(Graph::cycle(l)?, field, t, subs)
}

fn e(field: FieldSpec, t: usize, coeffs: &[(usize, Scalar)]) -> Vector {
    let mut x = Vector::zero(field, t);
    for (i, c) in coeffs {
        x = x.axpy(c, &Vector::unit(field, t, *i));
    }
    x
}

fn triangle(field: FieldSpec) -> Result<Vec<Subspace>> {
    let alpha = find_special_alpha(field, AlphaMode::QuadraticNoRoot)?;
    let one = field.one();
    let t = 3;
    Ok(vec![
        plane(
            field,
            t,
            e(field, t, &[(0, one.clone())]),
            e(field, t, &[(1, one.clone())]),
        ),
        plane(
            field,
            t,
            e(field, t, &[(0, one.clone())]),
            e(field, t, &[(1, one.clone()), (2, one.clone())]),
        ),
        plane(
            field,
            t,
            e(field, t, &[(0, one.clone()), (2, alpha)]),
            e(field, t, &[(1, one)]),
        ),
    ])
}

fn square(field: FieldSpec) -> Result<Vec<Subspace>> {
    let one = field.one();
    let u1 = |t| {
        plane(
            field,
            t,
            e(field, t, &[(0, one.clone())]),
            e(field, t, &[(1, one.clone())]),
        )
    };
    if field.characteristic() == 2 {
        let alpha = find_special_alpha(field, AlphaMode::ArtinSchreier)?;
        let t = 5;
        Ok(vec![
            u1(t),
            u1(t),
            plane(
                field,
                t,
                e(field, t, &[(0, one.clone()), (3, one.clone())]),
                e(field, t, &[(1, one.clone()), (2, one.clone()), (4, one.clone())]),
            ),
            plane(
                field,
                t,
                e(field, t, &[(0, one.clone()), (2, one.clone())]),
                e(field, t, &[(1, one.clone()), (3, alpha), (4, one.clone())]),
            ),
        ])
    } else {
        let alpha = find_special_alpha(field, AlphaMode::Nonsquare)?;
        let t = 4;
        Ok(vec![
            u1(t),
            u1(t),
            plane(
                field,
                t,
                e(field, t, &[(0, one.clone()), (3, one.clone())]),
                e(field, t, &[(1, one.clone()), (2, one.clone())]),
            ),
            plane(
                field,
                t,
                e(field, t, &[(0, one.clone()), (2, alpha)]),
                e(field, t, &[(1, one.clone()), (3, one.clone())]),
            ),
        ])
    }
}

/// The bad square data padded to `F^7` with `x` added to the first subspace:
/// every valid choice puts a multiple of `x` on vertex 0. `x` must be `e6` or
/// `e7` (0-based index 5 or 6).
pub fn claim4_base(field: FieldSpec, x_index: usize) -> Result<SubspaceAssignment> {
    if x_index != 5 && x_index != 6 {
        return Err(Error::invalid("x must be e6 or e7"));
    }
    let sq = square(field)?;
    let t0 = sq[0].ambient();
    let pad = |s: &Subspace, extra: Option<usize>| -> Subspace {
        let mut rows: Vec<Vector> = s.basis().iter().map(|r| r.pad(0, 7 - t0)).collect();
        if let Some(i) = extra {
            rows.push(Vector::unit(field, 7, i));
        }
        Subspace::span(field, 7, &rows).expect("rows in F^7")
    };
    let subs = vec![
        pad(&sq[0], Some(x_index)),
        pad(&sq[1], None),
        pad(&sq[2], None),
        pad(&sq[3], None),
    ];
    SubspaceAssignment::new(Graph::cycle(4)?, field, 7, subs)
}

/// Rational certificate for the even block construction: its restriction to
/// any block is the bad square, refuted here by the real-root test.
pub fn even_block_certificate() -> Result<CycleObstruction> {
    let ob = cycle_obstruction(&cycle_bad_assignment(4, FieldSpec::rationals())?)?;
    if ob.real_choice_exists() {
        return Err(Error::internal("square data admits a real choice"));
    }
    Ok(ob)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{find_choice, SearchOptions};

    #[test]
    fn small_cycles_have_no_choice() {
        for p in [2, 3] {
            let f = FieldSpec::prime(p).unwrap();
            for l in 3..=6 {
                let a = cycle_bad_assignment(l, f).unwrap();
                assert_eq!(a.dims(), vec![2; l]);
                assert!(
                    find_choice(&a, &SearchOptions::default()).unwrap().is_no_choice(),
                    "l={l} p={p}"
                );
            }
        }
    }

    #[test]
    fn rational_square_polynomial() {
        let a = cycle_bad_assignment(4, FieldSpec::rationals()).unwrap();
        let ob = cycle_obstruction(&a).unwrap();
        assert_eq!(ob.polynomial.monic(), crate::engine::Poly::from_i64s(&[1, 0, 1]));
        assert!(!ob.real_choice_exists());
        assert!(even_block_certificate().is_ok());
    }

    #[test]
    fn claim4_dims() {
        let a = claim4_base(FieldSpec::prime(3).unwrap(), 5).unwrap();
        assert_eq!(a.dims(), vec![3, 2, 2, 2]);
        assert!(claim4_base(FieldSpec::prime(3).unwrap(), 2).is_err());
    }
}
