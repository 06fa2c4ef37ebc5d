use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Univariate polynomial over the rationals, coefficients lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `z`.
    pub fn z() -> Self {
        Poly::from_i64s(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let get = |p: &Poly, i: usize| p.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
        Poly::new((0..n).map(|i| get(self, i) + get(o, i)).collect())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().expect("nonempty") * &lead_inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor (zero only if both are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Integer coefficients with gcd one and positive leading coefficient.
    pub fn primitive(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().expect("nonzero").is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.iter().map(|c| c / &g * &sign).collect()
    }

    /// Number of distinct real roots, by a Sturm sequence of the square-free part.
    pub fn count_real_roots(&self) -> usize {
        if self.degree().unwrap_or(0) == 0 {
            return 0;
        }
        let seq = self.square_free().sturm_sequence();
        let changes = |signs: Vec<i8>| {
            let s: Vec<i8> = signs.into_iter().filter(|&x| x != 0).collect();
            s.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let at_pos_inf: Vec<i8> = seq.iter().map(|p| sign(&p.leading())).collect();
        let at_neg_inf: Vec<i8> = seq
            .iter()
            .map(|p| {
                let s = sign(&p.leading());
                if p.degree().unwrap_or(0) % 2 == 1 {
                    -s
                } else {
                    s
                }
            })
            .collect();
        changes(at_neg_inf) - changes(at_pos_inf)
    }

    fn square_free(&self) -> Poly {
        self.div_rem(&self.gcd(&self.derivative())).0
    }

    fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        while !seq.last().expect("nonempty").is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1.neg();
            seq.push(r);
        }
        seq.pop();
        seq
    }

    pub fn has_real_root(&self) -> bool {
        self.count_real_roots() > 0
    }

    /// All distinct rational roots in increasing order (rational root test on
    /// the primitive form). The zero polynomial is reported as rootless.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        let mut ints = self.primitive();
        if ints.is_empty() {
            return Vec::new();
        }
        let mut roots = Vec::new();
        let lead_zero = ints.iter().take_while(|c| c.is_zero()).count();
        if lead_zero > 0 {
            roots.push(BigRational::zero());
            ints.drain(..lead_zero);
        }
        if ints.len() > 1 {
            let reduced = Poly::new(ints.iter().map(|c| BigRational::from_integer(c.clone())).collect());
            for r in reduced.square_free().isolate_rational_roots() {
                if !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
        roots.sort();
        roots
    }

    pub fn has_rational_root(&self) -> bool {
        !self.rational_roots().is_empty()
    }
}

impl Poly {
    // Roots d/e of a square-free polynomial have e | a_n, so two candidates
    // are at least 1/a_n^2 apart; isolate each real root in an interval that
    // narrow and test the simplest rational inside it.
    fn isolate_rational_roots(&self) -> Vec<BigRational> {
        let seq = self.sturm_sequence();
        let ints = self.primitive();
        let an = BigRational::from_integer(ints.last().expect("nonzero").abs());
        let width = (&an * &an).recip();
        let bound = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(|c| (c / self.leading()).abs())
            .fold(BigRational::zero(), |m, c| if c > m { c } else { m })
            + q(1);
        let changes = |x: &BigRational| {
            let s: Vec<i8> = seq.iter().map(|p| sign(&p.eval(x))).filter(|&v| v != 0).collect();
            s.windows(2).filter(|w| w[0] != w[1]).count()
        };
        let mut out = Vec::new();
        let (lo0, hi0) = (-bound.clone(), bound);
        let mut stack = vec![(changes(&lo0), changes(&hi0), lo0, hi0)];
        while let Some((clo, chi, lo, hi)) = stack.pop() {
            let count = clo - chi;
            if count == 0 {
                continue;
            }
            if count == 1 {
                if let Some(r) = self.refine_rational(lo, hi, &width) {
                    out.push(r);
                }
                continue;
            }
            // split at a point that is not itself a root
            let mut k = 2i64;
            let mid = loop {
                let m = &lo + (&hi - &lo) / q(k);
                if !self.eval(&m).is_zero() {
                    break m;
                }
                out.push(m);
                k += 1;
            };
            let cmid = changes(&mid);
            stack.push((clo, cmid, lo, mid.clone()));
            stack.push((cmid, chi, mid, hi));
        }
        out
    }
}

impl Poly {
    // single simple root in (lo, hi), neither endpoint a root: bisect on the
    // sign of the polynomial, testing the simplest rational at each step
    fn refine_rational(&self, mut lo: BigRational, mut hi: BigRational, width: &BigRational) -> Option<BigRational> {
        let lo_sign = sign(&self.eval(&lo));
        loop {
            let r = simplest_between(&lo, &hi);
            if self.eval(&r).is_zero() {
                return Some(r);
            }
            if &(&hi - &lo) < width {
                return None;
            }
            let mid = (&lo + &hi) / q(2);
            match sign(&self.eval(&mid)) {
                0 => return Some(mid),
                s if s == lo_sign => lo = mid,
                _ => hi = mid,
            }
        }
    }
}

fn sign(c: &BigRational) -> i8 {
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// Rational with the smallest denominator in the open interval `(a, b)`.
fn simplest_between(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_negative() && b.is_positive() {
        return BigRational::zero();
    }
    if !b.is_positive() {
        return -simplest_between(&-b, &-a);
    }
    let fl = a.floor();
    let next = &fl + q(1);
    if &next < b {
        return next;
    }
    if &fl == a {
        let inv = (b - &fl).recip();
        return fl + (inv.floor() + q(1)).recip();
    }
    fl.clone() + simplest_between(&(b - &fl).recip(), &(a - &fl).recip()).recip()
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("z")?,
                _ => write!(f, "z^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let p = Poly::from_i64s(&[-1, 0, 1]);
        let (qt, r) = p.div_rem(&Poly::from_i64s(&[-1, 1]));
        assert_eq!(qt, Poly::from_i64s(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(p.to_string(), "z^2 - 1");
        assert_eq!(Poly::from_i64s(&[-1, 0, -1]).to_string(), "-z^2 - 1");
    }

    #[test]
    fn sturm_counts() {
        assert_eq!(Poly::from_i64s(&[1, 0, 1]).count_real_roots(), 0);
        assert_eq!(Poly::from_i64s(&[-2, 0, 1]).count_real_roots(), 2);
        // (z - 1)^2 (z + 2): two distinct roots
        let p = Poly::from_i64s(&[-1, 1])
            .mul(&Poly::from_i64s(&[-1, 1]))
            .mul(&Poly::from_i64s(&[2, 1]));
        assert_eq!(p.count_real_roots(), 2);
        assert_eq!(Poly::from_i64s(&[5]).count_real_roots(), 0);
    }

    #[test]
    fn rational_root_test() {
        // 6z^2 - 5z + 1 = (2z - 1)(3z - 1)
        let roots = Poly::from_i64s(&[1, -5, 6]).rational_roots();
        assert_eq!(
            roots,
            vec![
                BigRational::new(1.into(), 3.into()),
                BigRational::new(1.into(), 2.into())
            ]
        );
        assert!(Poly::from_i64s(&[-2, 0, 1]).rational_roots().is_empty());
        assert_eq!(Poly::from_i64s(&[0, 0, 1]).rational_roots(), vec![BigRational::zero()]);
    }
}
