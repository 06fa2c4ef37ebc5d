//! Exact scalar arithmetic over prime fields GF(p) and the rationals.
//!
//! A [`Scalar`] always carries its field, so mixing elements of different
//! fields is detected. The checked operations return [`Error::FieldMismatch`]
//! or [`Error::DivisionByZero`]; the operator impls (`+`, `-`, `*`) panic on a
//! mismatch and are meant for code that has already validated its inputs.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest supported prime modulus.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Prime(u32),
    Rationals,
}

/// A field: GF(p) for a prime `p <= 2^31`, or the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec(Kind);

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec(Kind::Prime(p as u32)))
    }

    pub fn rationals() -> Self {
        FieldSpec(Kind::Rationals)
    }

    /// The modulus for a prime field, `None` for the rationals.
    pub fn modulus(&self) -> Option<u32> {
        match self.0 {
            Kind::Prime(p) => Some(p),
            Kind::Rationals => None,
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.modulus().unwrap_or(0)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.0, Kind::Prime(_))
    }

    /// Number of elements, or `None` if infinite.
    pub fn order(&self) -> Option<u64> {
        self.modulus().map(u64::from)
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.0 {
            Kind::Prime(p) => Scalar(Repr::Residue {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            }),
            Kind::Rationals => Scalar(Repr::Rational(BigRational::from_integer(BigInt::from(n)))),
        }
    }

    /// The element `num / den`. Over GF(p) this is `num * den^{-1}`.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Embeds a rational; over GF(p) the denominator must be invertible.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        match self.0 {
            Kind::Rationals => Ok(Scalar(Repr::Rational(q.clone()))),
            Kind::Prime(p) => {
                let pm = BigInt::from(p);
                let n = q.numer().mod_floor(&pm);
                let d = q.denom().mod_floor(&pm);
                let n = u32::try_from(&n).expect("residue fits");
                let d = u32::try_from(&d).expect("residue fits");
                Scalar(Repr::Residue { value: n, modulus: p })
                    .checked_div(&Scalar(Repr::Residue { value: d, modulus: p }))
            }
        }
    }

    /// All elements `0, 1, ..., p-1` in ascending residue order.
    pub fn elements(&self) -> Result<Vec<Scalar>> {
        match self.0 {
            Kind::Prime(p) => Ok((0..p)
                .map(|value| Scalar(Repr::Residue { value, modulus: p }))
                .collect()),
            Kind::Rationals => Err(Error::InfiniteField),
        }
    }

    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let bad = || Error::parse(0, format!("bad scalar {s:?} for field {self}"));
        match self.0 {
            Kind::Prime(_) => {
                let n: i64 = s.trim().parse().map_err(|_| bad())?;
                Ok(self.from_i64(n))
            }
            Kind::Rationals => {
                let s = s.trim();
                let q = match s.split_once('/') {
                    Some((n, d)) => {
                        let n: BigInt = n.parse().map_err(|_| bad())?;
                        let d: BigInt = d.parse().map_err(|_| bad())?;
                        if d.is_zero() {
                            return Err(bad());
                        }
                        BigRational::new(n, d)
                    }
                    None => BigRational::from_integer(s.parse().map_err(|_| bad())?),
                };
                Ok(Scalar(Repr::Rational(q)))
            }
        }
    }

    fn check(&self, a: &Scalar) -> Result<()> {
        if a.field() == *self {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.to_string(), a.field().to_string()))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Kind::Prime(p) => write!(f, "{p}"),
            Kind::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" | "q" | "QQ" => Ok(FieldSpec::rationals()),
            t => {
                let p: u64 = t
                    .strip_prefix("GF(")
                    .and_then(|r| r.strip_suffix(')'))
                    .unwrap_or(t)
                    .parse()
                    .map_err(|_| Error::invalid(format!("unknown field {s:?}")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Residue { value: u32, modulus: u32 },
    Rational(BigRational),
}

/// A field element in canonical form: a residue in `[0, p)` or a reduced
/// fraction with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

fn mod_inverse(a: u32, p: u32) -> u32 {
    // Extended Euclid; `a` is nonzero mod `p`.
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Residue { modulus, .. } => FieldSpec(Kind::Prime(*modulus)),
            Repr::Rational(_) => FieldSpec::rationals(),
        }
    }

    pub fn residue(&self) -> Option<u32> {
        match &self.0 {
            Repr::Residue { value, .. } => Some(*value),
            Repr::Rational(_) => None,
        }
    }

    /// The value as a rational (residues map to their representative in `[0, p)`).
    pub fn to_rational(&self) -> BigRational {
        match &self.0 {
            Repr::Residue { value, .. } => BigRational::from_integer(BigInt::from(*value)),
            Repr::Rational(q) => q.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Residue { value, .. } => *value == 0,
            Repr::Rational(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Residue { value, .. } => *value == 1,
            Repr::Rational(q) => q.is_one(),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        self.field().check(other)
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                let s = (*a as u64 + *b as u64) % *modulus as u64;
                Scalar(Repr::Residue {
                    value: s as u32,
                    modulus: *modulus,
                })
            }
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a + b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_neg(&self) -> Scalar {
        match &self.0 {
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            }),
            Repr::Rational(q) => Scalar(Repr::Rational(-q)),
        }
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        self.checked_add(&other.checked_neg())
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => {
                let s = (*a as u64 * *b as u64) % *modulus as u64;
                Scalar(Repr::Residue {
                    value: s as u32,
                    modulus: *modulus,
                })
            }
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a * b)),
            _ => unreachable!(),
        })
    }

    pub fn checked_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: mod_inverse(*value, *modulus),
                modulus: *modulus,
            }),
            Repr::Rational(q) => Scalar(Repr::Rational(q.recip())),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        self.checked_mul(&other.checked_inv()?)
    }

    /// Infallible inverse for callers that know the element is nonzero.
    pub fn inv(&self) -> Scalar {
        self.checked_inv().expect("inverse of zero")
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Residue { value, .. } => write!(f, "{value}"),
            Repr::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Repr::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("field mismatch in +")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("field mismatch in -")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("field mismatch in *")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.checked_neg()
    }
}

/// Which defining property [`find_special_alpha`] searches for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaMode {
    /// A non-square element (characteristic other than 2).
    Nonsquare,
    /// `alpha` such that `z^2 - alpha z + 1` has no root.
    QuadraticNoRoot,
    /// Nonzero `alpha` outside the image of `z -> z^2 + z` (characteristic 2).
    ArtinSchreier,
}

/// Returns the least residue with the requested property over GF(p), or the
/// fixed witness over the rationals (`-1` for non-squares, `0` for the
/// root-free quadratic `z^2 + 1`).
pub fn find_special_alpha(field: FieldSpec, mode: AlphaMode) -> Result<Scalar> {
    let Some(p) = field.modulus() else {
        return match mode {
            AlphaMode::Nonsquare => Ok(field.from_i64(-1)),
            AlphaMode::QuadraticNoRoot => Ok(field.zero()),
            AlphaMode::ArtinSchreier => Err(Error::precondition("artin-schreier witness needs characteristic 2")),
        };
    };
    let elems = field.elements()?;
    let found = match mode {
        AlphaMode::Nonsquare => {
            if p == 2 {
                return Err(Error::precondition("every element of GF(2) is a square"));
            }
            let squares: Vec<Scalar> = elems.iter().map(|z| z * z).collect();
            elems.iter().find(|a| !squares.contains(a)).cloned()
        }
        AlphaMode::QuadraticNoRoot => elems
            .iter()
            .find(|a| {
                elems.iter().all(|z| {
                    let v = &(&(z * z) - &(*a * z)) + &field.one();
                    !v.is_zero()
                })
            })
            .cloned(),
        AlphaMode::ArtinSchreier => {
            if p != 2 {
                return Err(Error::precondition("artin-schreier witness needs characteristic 2"));
            }
            let image: Vec<Scalar> = elems.iter().map(|z| &(z * z) + z).collect();
            elems.iter().find(|a| !a.is_zero() && !image.contains(a)).cloned()
        }
    };
    found.ok_or_else(|| Error::NoSuchElement(format!("{mode:?} over GF({p})")))
}

/// True if the rational is the square of a rational.
pub fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    is_sq(q.numer()) && is_sq(q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn inverse_in_gf5() {
        let f = gf(5);
        // enumerate x with 2x = 1
        let oracle = (0..5).find(|x| (2 * x) % 5 == 1).unwrap();
        assert_eq!(f.from_i64(2).checked_inv().unwrap(), f.from_i64(oracle));
        assert_eq!(oracle, 3);
    }

    #[test]
    fn rational_addition() {
        let q = FieldSpec::rationals();
        let a = q.from_ratio(1, 2).unwrap();
        let b = q.from_ratio(1, 3).unwrap();
        assert_eq!((&a + &b).to_string(), "5/6");
    }

    #[test]
    fn negation_in_char_two() {
        let f = gf(2);
        assert_eq!(-&f.one(), f.one());
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let f = gf(7);
        assert_eq!(f.one().checked_div(&f.zero()), Err(Error::DivisionByZero));
        assert_eq!(FieldSpec::rationals().zero().checked_inv(), Err(Error::DivisionByZero));
        assert!(matches!(
            gf(3).one().checked_add(&gf(5).one()),
            Err(Error::FieldMismatch(..))
        ));
        assert!(matches!(
            gf(3).one().checked_mul(&FieldSpec::rationals().one()),
            Err(Error::FieldMismatch(..))
        ));
    }

    #[test]
    fn primality_checked() {
        assert_eq!(FieldSpec::prime(9), Err(Error::NotPrime(9)));
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert!(FieldSpec::prime(2_147_483_647).is_ok());
        assert!(FieldSpec::prime((1 << 31) + 11).is_err());
    }

    #[test]
    fn enumeration() {
        let ints = |p| -> Vec<u32> { gf(p).elements().unwrap().iter().map(|s| s.residue().unwrap()).collect() };
        assert_eq!(ints(2), vec![0, 1]);
        assert_eq!(ints(3), vec![0, 1, 2]);
        assert_eq!(FieldSpec::rationals().elements(), Err(Error::InfiniteField));
    }

    #[test]
    fn inverse_exhaustive_small_primes() {
        for p in [2, 3, 5, 7] {
            let f = gf(p);
            for a in f.elements().unwrap().into_iter().skip(1) {
                assert!((&a * &a.inv()).is_one());
            }
        }
    }

    #[test]
    fn special_alphas() {
        assert_eq!(
            find_special_alpha(gf(5), AlphaMode::Nonsquare).unwrap(),
            gf(5).from_i64(2)
        );
        assert_eq!(
            find_special_alpha(gf(3), AlphaMode::QuadraticNoRoot).unwrap(),
            gf(3).zero()
        );
        assert_eq!(
            find_special_alpha(gf(2), AlphaMode::ArtinSchreier).unwrap(),
            gf(2).one()
        );
        let q = FieldSpec::rationals();
        assert_eq!(find_special_alpha(q, AlphaMode::Nonsquare).unwrap(), q.from_i64(-1));
        // z^2 + z + 1 is irreducible over GF(2)
        assert_eq!(
            find_special_alpha(gf(2), AlphaMode::QuadraticNoRoot).unwrap(),
            gf(2).one()
        );
        assert!(find_special_alpha(gf(2), AlphaMode::Nonsquare).is_err());
        assert!(find_special_alpha(gf(3), AlphaMode::ArtinSchreier).is_err());
    }

    #[test]
    fn quadratic_no_root_is_root_free() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let f = gf(p);
            let a = find_special_alpha(f, AlphaMode::QuadraticNoRoot).unwrap();
            for z in f.elements().unwrap() {
                let v = &(&(&z * &z) - &(&a * &z)) + &f.one();
                assert!(!v.is_zero(), "root {z} for alpha {a} in GF({p})");
            }
        }
        // over Q the discriminant alpha^2 - 4 must not be a rational square
        let q = FieldSpec::rationals();
        let a = find_special_alpha(q, AlphaMode::QuadraticNoRoot).unwrap().to_rational();
        let disc = &a * &a - BigRational::from_integer(4.into());
        assert!(!is_rational_square(&disc));
    }

    #[test]
    fn text_round_trip() {
        let q = FieldSpec::rationals();
        for s in ["0", "-3", "5/6", "-7/4", "12"] {
            assert_eq!(q.parse_scalar(s).unwrap().to_string(), s);
        }
        assert_eq!(q.parse_scalar("4/6").unwrap().to_string(), "2/3");
        assert_eq!(gf(5).parse_scalar("-1").unwrap().to_string(), "4");
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), q);
        assert_eq!("GF(7)".parse::<FieldSpec>().unwrap(), gf(7));
    }
}
