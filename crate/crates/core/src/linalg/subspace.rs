use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};
use crate::linalg::{linear_combination, Matrix, Vector};

/// A linear subspace of `F^t`, stored by its reduced row-echelon basis.
///
/// The RREF basis is unique, so two subspaces are equal exactly when their
/// representations are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| Vector::unit(field, ambient, i)).collect();
        Subspace { field, ambient, basis }
    }

    /// Canonical span of `vectors` in `F^ambient`.
    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vector]) -> Result<Self> {
        for v in vectors {
            if v.field() != field {
                return Err(Error::FieldMismatch(field.to_string(), v.field().to_string()));
            }
            if v.len() != ambient {
                return Err(Error::AmbientMismatch(ambient, v.len()));
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(field, ambient));
        }
        let mut m = Matrix::from_rows(field, ambient, vectors)?;
        let rank = m.rref_in_place().len();
        let basis = (0..rank).map(|i| m.row(i)).collect();
        Ok(Subspace { field, ambient, basis })
    }

    /// Span of standard basis vectors at the given 0-based positions.
    pub fn coordinate(field: FieldSpec, ambient: usize, coords: &[usize]) -> Self {
        let vs: Vec<Vector> = coords.iter().map(|&i| Vector::unit(field, ambient, i)).collect();
        Self::span(field, ambient, &vs).expect("valid coordinates")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        self.basis
            .iter()
            .map(|r| r.entries().iter().position(|s| !s.is_zero()).expect("nonzero row"))
            .collect()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Residue of `v` after elimination against the basis; zero iff `v` is a member.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut r = v.clone();
        for (row, pc) in self.basis.iter().zip(self.pivots()) {
            let c = r.get(pc).clone();
            if !c.is_zero() {
                r = r.sub(&row.scale(&c));
            }
        }
        r
    }

    pub fn contains(&self, v: &Vector) -> bool {
        v.field() == self.field && v.len() == self.ambient && self.reduce(v).is_zero()
    }

    /// Coefficients of `v` in the RREF basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &Vector) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots().iter().map(|&pc| v.get(pc).clone()).collect())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, &vs)
    }

    pub fn add_vectors(&self, vectors: &[Vector]) -> Result<Subspace> {
        let mut vs = self.basis.clone();
        vs.extend(vectors.iter().cloned());
        Subspace::span(self.field, self.ambient, &vs)
    }

    /// Intersection via the Zassenhaus construction: rows `(u | u)` and
    /// `(v | 0)`; rows with vanishing left half span `U ∩ V` on the right.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let t = self.ambient;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, t));
        }
        let zero = Vector::zero(self.field, t);
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            rows.push(concat(u, u));
        }
        for v in &other.basis {
            rows.push(concat(v, &zero));
        }
        let mut m = Matrix::from_rows(self.field, 2 * t, &rows)?;
        let pivots = m.rref_in_place();
        let mut out = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            if pc >= t {
                let row = m.row(r);
                out.push(Vector::from_entries_unchecked(self.field, row.entries()[t..].to_vec()));
            }
        }
        Subspace::span(self.field, t, &out)
    }

    /// `{ v : <v, u> = 0 for all u }`; always of dimension `t - dim`.
    pub fn orthogonal_complement(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.field, self.ambient);
        }
        let m = Matrix::from_rows(self.field, self.ambient, &self.basis).expect("valid basis");
        Subspace::span(self.field, self.ambient, &m.nullspace()).expect("valid kernel")
    }

    /// `self ∩ x^⊥` for each of the given vectors.
    pub fn restrict_orthogonal(&self, xs: &[Vector]) -> Result<Subspace> {
        if xs.is_empty() {
            return Ok(self.clone());
        }
        let perp = Subspace::span(self.field, self.ambient, xs)?.orthogonal_complement();
        self.intersect(&perp)
    }

    /// The first canonical nonzero vector: the leading basis row.
    pub fn first_vector(&self) -> Option<Vector> {
        self.basis.first().cloned()
    }

    /// Canonical representatives of the projective points, `(p^d - 1)/(p - 1)`
    /// of them. See [`projective_coefficients`] for the ordering.
    pub fn projective_points(&self) -> Result<Vec<Vector>> {
        if !self.field.is_finite() {
            return Err(Error::InfiniteField);
        }
        if self.is_zero() {
            return Ok(Vec::new());
        }
        Ok(projective_coefficients(self.field, self.dim())?
            .iter()
            .map(|c| linear_combination(c, &self.basis))
            .collect())
    }

    /// Uniformly random `d`-dimensional subspace over GF(p); over the
    /// rationals the rows have entries in `-3..=3`.
    pub fn random(field: FieldSpec, ambient: usize, d: usize, seed: u64) -> Result<Subspace> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::random_with(field, ambient, d, &mut rng)
    }

    pub fn random_with<R: Rng>(field: FieldSpec, ambient: usize, d: usize, rng: &mut R) -> Result<Subspace> {
        if d > ambient {
            return Err(Error::invalid(format!("dimension {d} exceeds ambient {ambient}")));
        }
        let mut current = Subspace::zero(field, ambient);
        while current.dim() < d {
            let v = random_vector(field, ambient, rng);
            if !current.contains(&v) {
                current = current.add_vectors(&[v])?;
            }
        }
        Ok(current)
    }

    pub fn parse_rows(field: FieldSpec, ambient: usize, lines: &[&str]) -> Result<Subspace> {
        let rows = lines
            .iter()
            .map(|l| Vector::parse_row(field, l, ambient))
            .collect::<Result<Vec<_>>>()?;
        Subspace::span(field, ambient, &rows)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.basis {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

fn concat(a: &Vector, b: &Vector) -> Vector {
    let mut e = a.entries().to_vec();
    e.extend(b.entries().iter().cloned());
    Vector::from_entries_unchecked(a.field(), e)
}

pub fn random_vector<R: Rng>(field: FieldSpec, len: usize, rng: &mut R) -> Vector {
    let entries = (0..len)
        .map(|_| match field.modulus() {
            Some(p) => field.from_i64(rng.gen_range(0..p as i64)),
            None => field.from_i64(rng.gen_range(-3..=3)),
        })
        .collect();
    Vector::from_entries_unchecked(field, entries)
}

/// Coefficient tuples of the projective points of `F^d`.
///
/// Tuples are listed by increasing value of `sum_i c_i p^i` (the first
/// coordinate is the least significant digit), keeping only those whose first
/// nonzero coordinate is one.
pub fn projective_coefficients(field: FieldSpec, d: usize) -> Result<Vec<Vec<Scalar>>> {
    let p = field.modulus().ok_or(Error::InfiniteField)? as u64;
    let total = (p as u128)
        .checked_pow(d as u32)
        .filter(|&n| n <= 1 << 26)
        .ok_or_else(|| Error::BudgetExceeded(format!("{p}^{d} projective candidates")))? as u64;
    let mut out = Vec::with_capacity(((total - 1) / (p - 1)) as usize);
    let mut digits = vec![0u64; d];
    for _ in 1..total {
        // increment little-endian counter
        for dgt in digits.iter_mut() {
            *dgt += 1;
            if *dgt < p {
                break;
            }
            *dgt = 0;
        }
        if digits.iter().find(|&&x| x != 0) == Some(&1) {
            out.push(digits.iter().map(|&x| field.from_i64(x as i64)).collect());
        }
    }
    Ok(out)
}

/// First `alpha` (in [`projective_coefficients`] order) with
/// `<sum alpha_i w_i, sum alpha_i z_i> = 0`. Such an `alpha` always exists
/// over a finite field since the form is a quadratic in three variables.
pub fn find_isotropic_combination(w: &[Vector; 3], z: &[Vector; 3]) -> Result<[Scalar; 3]> {
    let field = w[0].field();
    for v in w.iter().chain(z.iter()) {
        w[0].check_compatible(v)?;
    }
    if !field.is_finite() {
        return Err(Error::InfiniteField);
    }
    // Gram entries g[i][j] = <w_i, z_j>
    let g: Vec<Vec<Scalar>> = (0..3).map(|i| (0..3).map(|j| w[i].dot(&z[j])).collect()).collect();
    for c in projective_coefficients(field, 3)? {
        let mut acc = field.zero();
        for i in 0..3 {
            for j in 0..3 {
                if !c[i].is_zero() && !c[j].is_zero() {
                    acc = &acc + &(&(&c[i] * &c[j]) * &g[i][j]);
                }
            }
        }
        if acc.is_zero() {
            return Ok([c[0].clone(), c[1].clone(), c[2].clone()]);
        }
    }
    Err(Error::internal(
        "no isotropic combination found; Chevalley guarantees one",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    fn v(f: FieldSpec, e: &[i64]) -> Vector {
        Vector::from_i64s(f, e)
    }

    #[test]
    fn span_examples() {
        let f = gf(2);
        let s = Subspace::span(f, 2, &[v(f, &[1, 1]), v(f, &[0, 1])]).unwrap();
        assert_eq!(s.basis(), &[v(f, &[1, 0]), v(f, &[0, 1])]);
        let q = FieldSpec::rationals();
        let s = Subspace::span(q, 2, &[v(q, &[2, 4])]).unwrap();
        assert_eq!(s.basis(), &[v(q, &[1, 2])]);
        let z = Subspace::span(q, 3, &[]).unwrap();
        assert_eq!((z.dim(), z.ambient()), (0, 3));
    }

    #[test]
    fn sum_examples() {
        let q = FieldSpec::rationals();
        let e1 = Subspace::coordinate(q, 3, &[0]);
        let e2 = Subspace::coordinate(q, 3, &[1]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::coordinate(q, 3, &[0, 1]));
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        let f = gf(2);
        let a = Subspace::span(f, 2, &[v(f, &[1, 0])]).unwrap();
        let b = Subspace::span(f, 2, &[v(f, &[1, 1])]).unwrap();
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(f, 2));
        assert!(matches!(
            a.sum(&Subspace::zero(f, 3)),
            Err(Error::AmbientMismatch(2, 3))
        ));
    }

    #[test]
    fn intersect_examples() {
        let q = FieldSpec::rationals();
        let a = Subspace::coordinate(q, 3, &[0, 1]);
        let b = Subspace::coordinate(q, 3, &[1, 2]);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::coordinate(q, 3, &[1]));
        assert_eq!(a.intersect(&a).unwrap(), a);
        let e1 = Subspace::coordinate(q, 3, &[0]);
        let e2 = Subspace::coordinate(q, 3, &[1]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
    }

    #[test]
    fn complement_examples() {
        let f = gf(3);
        assert_eq!(
            Subspace::coordinate(f, 3, &[0]).orthogonal_complement(),
            Subspace::coordinate(f, 3, &[1, 2])
        );
        let f2 = gf(2);
        let diag = Subspace::span(f2, 2, &[v(f2, &[1, 1])]).unwrap();
        assert_eq!(diag.orthogonal_complement(), diag);
        assert!(Subspace::full(f, 4).orthogonal_complement().is_zero());
    }

    #[test]
    fn projective_point_counts() {
        let f = gf(2);
        assert_eq!(Subspace::full(f, 2).projective_points().unwrap().len(), 3);
        assert_eq!(Subspace::full(f, 3).projective_points().unwrap().len(), 7);
        let f5 = gf(5);
        let line = Subspace::span(f5, 3, &[v(f5, &[0, 2, 1])]).unwrap();
        let pts = line.projective_points().unwrap();
        assert_eq!(pts.len(), 1);
        assert!(line.contains(&pts[0]));
        assert_eq!(
            Subspace::full(FieldSpec::rationals(), 2).projective_points(),
            Err(Error::InfiniteField)
        );
    }

    #[test]
    fn isotropic_examples() {
        let f = gf(2);
        let e = |i| Vector::unit(f, 3, i);
        let es = [e(0), e(1), e(2)];
        let a = find_isotropic_combination(&es, &es).unwrap();
        assert_eq!(a, [f.one(), f.one(), f.zero()]);

        let f3 = gf(3);
        let e = |i| Vector::unit(f3, 3, i);
        let w = [e(0), e(1), e(2)];
        let z = [e(1), e(0), e(2)];
        let a = find_isotropic_combination(&w, &z).unwrap();
        let form = &(&f3.from_i64(2) * &(&a[0] * &a[1])) + &(&a[2] * &a[2]);
        assert!(form.is_zero());
        assert!(a.iter().any(|s| !s.is_zero()));

        let zero = Vector::zero(f3, 3);
        let w = [zero.clone(), e(1), e(2)];
        let z = [zero, e(1), e(2)];
        assert_eq!(
            find_isotropic_combination(&w, &z).unwrap(),
            [f3.one(), f3.zero(), f3.zero()]
        );
    }

    #[test]
    fn random_subspace_dims() {
        let f = gf(2);
        assert!(Subspace::random(f, 4, 0, 1).unwrap().is_zero());
        assert_eq!(Subspace::random(gf(3), 3, 3, 9).unwrap(), Subspace::full(gf(3), 3));
        let s = Subspace::random(f, 8, 2, 7).unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s, Subspace::random(f, 8, 2, 7).unwrap());
    }

    #[test]
    fn coordinates_reconstruct() {
        let f = gf(5);
        let s = Subspace::random(f, 6, 3, 3).unwrap();
        let x = s.basis()[0].axpy(&f.from_i64(3), &s.basis()[2]);
        let c = s.coordinates(&x).unwrap();
        assert_eq!(linear_combination(&c, s.basis()), x);
    }
}
