use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bipartite::bipartite_sides;
use super::{first_nonzero, Partial};
use crate::engine::{Choice, Poly, SubspaceAssignment};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace, Vector};

fn check_k2(a: &SubspaceAssignment) -> Result<(usize, usize)> {
    let (l, m) = bipartite_sides(a.graph())?;
    if l != 2 {
        return Err(Error::precondition("expected K_{2,m} with the two left vertices first"));
    }
    let n = a.subspace(0).dim();
    if a.subspace(1).dim() != 2 || (2..2 + m).any(|v| a.subspace(v).dim() != 2) {
        return Err(Error::precondition("vertex 1 and every right vertex need dimension 2"));
    }
    Ok((n, m))
}

/// `K_{2,m}`, `m <= n - 1`, vertex 0 of dimension `n`, all others 2: an
/// arbitrary vector on vertex 1, right vectors orthogonal to it, then vertex 0.
pub fn k2_choice(a: &SubspaceAssignment) -> Result<Choice> {
    let (n, m) = check_k2(a)?;
    if m + 1 > n {
        return Err(Error::precondition(format!(
            "m = {m} must be at most n - 1 = {}",
            n.saturating_sub(1)
        )));
    }
    let mut part = Partial::new(a);
    part.pick(1)?;
    for v in 2..2 + m {
        part.pick(v)?;
    }
    part.pick(0)?;
    part.finish()
}

/// Bases of two planes over the rationals with `<u_i, u_j> != 0` and
/// `<v_i, v_j> != 0` exactly when `i = j`, and `<u_i, v_j> = 0` exactly when
/// `i = j`; normalized so `<u1, v2> = <u2, v1> = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HaynesBases {
    pub u: [Vector; 2],
    pub v: [Vector; 2],
}

fn q(x: &crate::fields::Scalar) -> BigRational {
    x.to_rational()
}

// orthogonal basis (a, b) of a rational plane
fn orthogonal_pair(u: &Subspace) -> (Vector, Vector) {
    let a = u.basis()[0].clone();
    let b0 = &u.basis()[1];
    let c = b0.dot(&a).checked_div(&a.dot(&a)).expect("positive norm");
    (a.clone(), b0.axpy(&(-&c), &a))
}

// the line of V orthogonal to x
fn perp_in(v: &Subspace, x: &Vector) -> Vector {
    let (c, d) = (&v.basis()[0], &v.basis()[1]);
    c.scale(&x.dot(d)).sub(&d.scale(&x.dot(c)))
}

fn pairing_nonsingular(u: &Subspace, v: &Subspace) -> bool {
    let g: Vec<Vec<_>> = u
        .basis()
        .iter()
        .map(|x| v.basis().iter().map(|y| x.dot(y)).collect())
        .collect();
    !(&(&g[0][0] * &g[1][1]) - &(&g[0][1] * &g[1][0])).is_zero()
}

fn check_planes(u: &Subspace, v: &Subspace) -> Result<()> {
    if u.field().is_finite() || v.field().is_finite() {
        return Err(Error::precondition("biorthogonal bases are built over the rationals"));
    }
    if u.dim() != 2 || v.dim() != 2 {
        return Err(Error::precondition("both subspaces must be planes"));
    }
    if u.ambient() != v.ambient() {
        return Err(Error::AmbientMismatch(u.ambient(), v.ambient()));
    }
    if !pairing_nonsingular(u, v) {
        return Err(Error::NotApplicable(
            "some nonzero vector of U is orthogonal to V".into(),
        ));
    }
    Ok(())
}

/// Rotates the orthogonal basis `u1 = a + s b`, `u2 = -s|b|^2 a + |a|^2 b`
/// until the matching `v`-basis is orthogonal too; `<v1, v2>` is a quadratic
/// in `s` and only rational roots are usable.
pub fn haynes_bases(u: &Subspace, v: &Subspace) -> Result<HaynesBases> {
    check_planes(u, v)?;
    let field = u.field();
    let (a, b) = orthogonal_pair(u);
    let (na, nb) = (a.dot(&a), b.dot(&b));
    let (c, d) = (&v.basis()[0], &v.basis()[1]);
    // v1(s) = <u1,d> c - <u1,c> d and v2(s) likewise, both linear in s
    let lin = |x0: &Vector, x1: &Vector| -> [Vector; 2] { [perp_in(v, x0), perp_in(v, x1)] };
    let v1 = lin(&a, &b);
    let v2 = lin(&b.scale(&na), &a.scale(&(-&nb)));
    let _ = (c, d);
    let h = Poly::new(vec![
        q(&v1[0].dot(&v2[0])),
        q(&v1[0].dot(&v2[1])) + q(&v1[1].dot(&v2[0])),
        q(&v1[1].dot(&v2[1])),
    ]);
    let s: Option<Option<BigRational>> = if h.is_zero() {
        Some(Some(BigRational::zero()))
    } else if let Some(r) = h.rational_roots().first() {
        Some(Some(r.clone()))
    } else if h.degree() < Some(2) {
        // root at infinity: u1 = b
        Some(None)
    } else {
        None
    };
    let (u1, u2) = match s {
        None => {
            return Err(Error::NotApplicable(
                "the orthogonal pattern needs an irrational rotation".into(),
            ))
        }
        Some(None) => (b.clone(), a.scale(&(-&nb))),
        Some(Some(s)) => {
            let s = field.from_rational(&s)?;
            (a.axpy(&s, &b), b.scale(&na).axpy(&(-&(&s * &nb)), &a))
        }
    };
    let (w1, w2) = (perp_in(v, &u1), perp_in(v, &u2));
    let w1 = w1.scale(&u2.dot(&w1).inv());
    let w2 = w2.scale(&u1.dot(&w2).inv());
    Ok(HaynesBases {
        u: [u1, u2],
        v: [w1, w2],
    })
}

/// Outcome for odd `n`: either a full choice or a certified real root that
/// is not rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OddOutcome {
    Choice(Choice),
    ExistenceOnly { polynomial: Poly, real_roots: usize },
}

/// `K_{2,n}` over the rationals with vertex 0 of dimension `n` and all other
/// subspaces planes.
pub fn k2n_choice_odd(a: &SubspaceAssignment) -> Result<OddOutcome> {
    if a.field().is_finite() {
        return Err(Error::precondition("k2n_choice_odd works over the rationals"));
    }
    let (n, m) = check_k2(a)?;
    if n != m || n % 2 == 0 {
        return Err(Error::precondition(format!("need odd n = m, got n = {n}, m = {m}")));
    }
    let field = a.field();
    let t = a.ambient();
    let plane = a.subspace(1);
    let right = |j: usize| a.subspace(2 + j);

    // a vector of the plane orthogonal to a whole right subspace
    for jp in 0..n {
        if let Some(x1) = plane.intersect(&right(jp).orthogonal_complement())?.first_vector() {
            let mut part = Partial::new(a);
            part.set(1, x1)?;
            for j in (0..n).filter(|&j| j != jp) {
                part.pick(2 + j)?;
            }
            part.pick(0)?;
            part.pick(2 + jp)?;
            return Ok(OddOutcome::Choice(part.finish()?));
        }
    }

    let (u1, u2) = orthogonal_pair(plane);
    let mut m1 = Vec::with_capacity(n);
    let mut m2 = Vec::with_capacity(n);
    for j in 0..n {
        let v1 = perp_in(right(j), &u1);
        let v2 = perp_in(right(j), &u2);
        m1.push(v1.scale(&u2.dot(&v1).inv()));
        m2.push(v2.scale(&u1.dot(&v2).inv()));
    }
    let ub = Matrix::from_columns(field, t, a.subspace(0).basis())?;
    let m1p = Matrix::from_rows(field, t, &m1)?.mul(&ub)?;
    let m2p = Matrix::from_rows(field, t, &m2)?.mul(&ub)?;
    let assemble = |x1: Vector, ys: Vec<Vector>, gamma: &Vector| -> Result<OddOutcome> {
        let x2 = ub.mul_vec(gamma)?;
        let mut out = vec![x2, x1];
        out.extend(ys);
        Ok(OddOutcome::Choice(Choice::new(out)))
    };
    if m1p.det()?.is_zero() {
        let gamma = first_nonzero(&Subspace::span(field, n, &m1p.nullspace())?, "kernel of M1'")?;
        return assemble(u1, m1, &gamma);
    }
    // det(alpha I + N) with N = M2' M1'^{-1}, by interpolation at 0..=n
    let nm = m2p.mul(&m1p.inverse()?)?;
    let id = Matrix::identity(field, n);
    let xs: Vec<BigRational> = (0..=n as i64).map(|i| BigRational::from_integer(i.into())).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| Ok(q(&id.scale(&field.from_rational(x)?).add(&nm).det()?)))
        .collect::<Result<_>>()?;
    let poly = interpolate(&xs, &ys);
    let Some(alpha) = poly.rational_roots().first().cloned() else {
        return Ok(OddOutcome::ExistenceOnly {
            real_roots: poly.count_real_roots(),
            polynomial: poly,
        });
    };
    let al = field.from_rational(&alpha)?;
    let x1 = u1.scale(&al).sub(&u2);
    let ys: Vec<Vector> = m1.iter().zip(&m2).map(|(v1, v2)| v1.scale(&al).add(v2)).collect();
    let gamma = first_nonzero(
        &Subspace::span(field, n, &m1p.scale(&al).add(&m2p).nullspace())?,
        "kernel",
    )?;
    assemble(x1, ys, &gamma)
}

fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> Poly {
    let mut acc = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::constant(BigRational::one());
        let mut denom = BigRational::one();
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&Poly::new(vec![-xj, BigRational::one()]));
                denom *= xi - xj;
            }
        }
        acc = acc.add(&basis.scale(&(yi / denom)));
    }
    acc
}
