use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{FieldSpec, Scalar};

/// A vector in `F^t` under the standard form `<x, y> = sum x_i y_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Vector {
    pub fn new(field: FieldSpec, entries: Vec<Scalar>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("vector must have length at least 1"));
        }
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch(field.to_string(), bad.field().to_string()));
        }
        Ok(Vector { field, entries })
    }

    pub(crate) fn from_entries_unchecked(field: FieldSpec, entries: Vec<Scalar>) -> Self {
        debug_assert!(entries.iter().all(|s| s.field() == field));
        Vector { field, entries }
    }

    pub fn from_i64s(field: FieldSpec, values: &[i64]) -> Self {
        assert!(!values.is_empty());
        Vector {
            field,
            entries: values.iter().map(|&v| field.from_i64(v)).collect(),
        }
    }

    pub fn zero(field: FieldSpec, len: usize) -> Self {
        assert!(len >= 1);
        Vector {
            field,
            entries: vec![field.zero(); len],
        }
    }

    /// The standard basis vector with a one at 0-based position `i`.
    pub fn unit(field: FieldSpec, len: usize, i: usize) -> Self {
        let mut v = Self::zero(field, len);
        v.entries[i] = field.one();
        v
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &Scalar {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn check_compatible(&self, other: &Vector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        if self.len() != other.len() {
            return Err(Error::AmbientMismatch(self.len(), other.len()));
        }
        Ok(())
    }

    pub fn checked_dot(&self, other: &Vector) -> Result<Scalar> {
        self.check_compatible(other)?;
        Ok(self.dot(other))
    }

    /// Panics when the vectors are incompatible.
    pub fn dot(&self, other: &Vector) -> Scalar {
        assert_eq!(self.len(), other.len(), "dot of vectors with different lengths");
        let mut acc = self.field.zero();
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }

    pub fn is_orthogonal(&self, other: &Vector) -> bool {
        self.dot(other).is_zero()
    }

    pub fn add(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len());
        Vector {
            field: self.field,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        assert_eq!(self.len(), other.len());
        Vector {
            field: self.field,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector {
            field: self.field,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &Scalar, other: &Vector) -> Vector {
        self.add(&other.scale(c))
    }

    /// Rescaled so the first nonzero entry is one. The zero vector is returned unchanged.
    pub fn normalized(&self) -> Vector {
        match self.entries.iter().find(|s| !s.is_zero()) {
            Some(lead) => self.scale(&lead.inv()),
            None => self.clone(),
        }
    }

    /// Whether `self` and `other` are nonzero multiples of each other.
    pub fn is_proportional(&self, other: &Vector) -> bool {
        !self.is_zero() && !other.is_zero() && self.normalized() == other.normalized()
    }

    /// `e_block ⊗ self` inside `F^{blocks * len}`: copy of `self` in block `block`.
    pub fn embed_block(&self, blocks: usize, block: usize) -> Vector {
        let n = self.len();
        let mut entries = vec![self.field.zero(); blocks * n];
        entries[block * n..(block + 1) * n].clone_from_slice(&self.entries);
        Vector {
            field: self.field,
            entries,
        }
    }

    /// Pads with `front` zeros before and `back` zeros after.
    pub fn pad(&self, front: usize, back: usize) -> Vector {
        let mut entries = vec![self.field.zero(); front];
        entries.extend(self.entries.iter().cloned());
        entries.extend(std::iter::repeat_n(self.field.zero(), back));
        Vector {
            field: self.field,
            entries,
        }
    }

    /// Parses one whitespace-separated row of exactly `len` scalars.
    pub fn parse_row(field: FieldSpec, line: &str, len: usize) -> Result<Vector> {
        let entries = line
            .split_whitespace()
            .map(|tok| field.parse_scalar(tok))
            .collect::<Result<Vec<_>>>()?;
        if entries.len() != len {
            return Err(Error::parse(
                0,
                format!("row has {} entries, expected {len}", entries.len()),
            ));
        }
        Vector::new(field, entries)
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// `sum_i coeffs[i] * vectors[i]`; `vectors` must be nonempty.
pub fn linear_combination(coeffs: &[Scalar], vectors: &[Vector]) -> Vector {
    assert_eq!(coeffs.len(), vectors.len());
    let mut acc = Vector::zero(vectors[0].field(), vectors[0].len());
    for (c, v) in coeffs.iter().zip(vectors) {
        if !c.is_zero() {
            acc = acc.axpy(c, v);
        }
    }
    acc
}
