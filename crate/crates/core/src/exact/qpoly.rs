use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{fmt_rational, is_negative, Rational};

/// Dense univariate polynomial in `q` over the rationals.
///
/// `coeffs[d]` is the coefficient of `q^d`. The highest stored coefficient is
/// never zero; the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: Rational, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        QPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, with `None` standing for the `-infinity` degree of zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplication by `q^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rational::zero(); shift];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn eval(&self, q0: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * q0 + c)
    }

    /// Euclidean division over `Q`. Returns `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &QPoly) -> Option<(QPoly, QPoly)> {
        let dd = divisor.degree()?;
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((QPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] * &lc_inv;
            let off = i - dd;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[off + j] = &rem[off + j] - &c * d;
            }
            quot[off] = c;
        }
        rem.truncate(dd);
        Some((QPoly::from_coeffs(quot), QPoly::from_coeffs(rem)))
    }

    /// Exact quotient, `None` if `divisor` is zero or does not divide `self`.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<QPoly> {
        let (quot, rem) = self.div_rem(divisor)?;
        rem.is_zero().then_some(quot)
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    ///
    /// Runs the primitive polynomial remainder sequence on integer primitive
    /// parts, so coefficients stay bounded by the content of the inputs.
    pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.is_constant() || b.is_constant() {
            return QPoly::one();
        }
        let mut x = primitive_part(a);
        let mut y = primitive_part(b);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            if y.len() == 1 {
                return QPoly::one();
            }
            let r = pseudo_rem(&x, &y);
            x = y;
            y = if r.is_empty() { r } else { primitive_of_ints(r) };
        }
        QPoly::from_coeffs(x.into_iter().map(Rational::from_integer).collect()).monic()
    }

    /// Number of times `(q - 1)` divides `self`; zero for the zero polynomial.
    pub fn multiplicity_at_one(&self) -> usize {
        let mut p = self.clone();
        let mut m = 0;
        let root = QPoly::from_ints(&[-1, 1]);
        while !p.is_zero() && p.eval(&Rational::one()).is_zero() {
            p = p.div_exact(&root).expect("q = 1 is a root");
            m += 1;
        }
        m
    }
}

fn primitive_part(p: &QPoly) -> Vec<BigInt> {
    let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = p.coeffs.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    primitive_of_ints(ints)
}

fn primitive_of_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let content = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return Vec::new();
    }
    let content = if v.last().is_some_and(|c| c.is_negative()) { -content } else { content };
    if !content.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &content;
        }
    }
    v
}

/// Pseudo-remainder of `a` by `b` over the integers; `b` nonzero.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    while r.len() > db {
        let lr = r.last().unwrap().clone();
        let off = r.len() - 1 - db;
        for c in r.iter_mut() {
            *c = &*c * lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[off + j] = &r[off + j] - &lr * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    r
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = &*c + s;
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(QPoly, Add::add, Sub::sub, Mul::mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

/// Ascending terms, e.g. `1 - 2*q + 1/3*q^2`; unit coefficients are omitted on
/// non-constant terms.
impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = is_negative(c);
            let mag = c.abs();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let var = match d {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{d}"),
            };
            if d == 0 {
                f.write_str(&fmt_rational(&mag))?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&mag), var)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(QPoly::zero().degree(), None);
        assert_eq!(QPoly::from_ints(&[0, 0]).degree(), None);
        assert_eq!(QPoly::from_ints(&[1, 2, 0]).degree(), Some(1));
    }

    #[test]
    fn gcd_of_q_integers() {
        // gcd(1 - q^2, 1 - q) = q - 1 (monic)
        let a = QPoly::from_ints(&[1, 0, -1]);
        let b = QPoly::from_ints(&[1, -1]);
        assert_eq!(QPoly::gcd(&a, &b), QPoly::from_ints(&[-1, 1]));
        // [4]_q and [6]_q share 1 + q
        let q4 = QPoly::from_ints(&[1, 1, 1, 1]);
        let q6 = QPoly::from_ints(&[1, 1, 1, 1, 1, 1]);
        assert_eq!(QPoly::gcd(&q4, &q6), QPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn gcd_with_fractional_coefficients() {
        let a = &QPoly::from_coeffs(vec![rational(1, 2), rational(1, 3)]) * &QPoly::from_ints(&[2, 0, 5]);
        let b = &QPoly::from_coeffs(vec![rational(3, 7), rational(2, 7)]) * &QPoly::from_ints(&[1, 1]);
        // both share 1/2 + 1/3 q, monic associate q + 3/2
        assert_eq!(QPoly::gcd(&a, &b), QPoly::from_coeffs(vec![rational(3, 2), rational(1, 1)]));
    }

    #[test]
    fn division_with_remainder() {
        let a = QPoly::from_ints(&[1, 0, 0, 1]);
        let b = QPoly::from_ints(&[1, 1]);
        let (quot, rem) = a.div_rem(&b).unwrap();
        assert_eq!(quot, QPoly::from_ints(&[1, -1, 1]));
        assert!(rem.is_zero());
        assert!(a.div_rem(&QPoly::zero()).is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(QPoly::from_ints(&[1, -2, 1]).to_string(), "1 - 2*q + q^2");
        assert_eq!(QPoly::from_ints(&[0, -1]).to_string(), "-q");
        assert_eq!(QPoly::from_coeffs(vec![rational(-1, 2), rational(3, 4)]).to_string(), "-1/2 + 3/4*q");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn multiplicity_at_one_counts_factors() {
        let p = &QPoly::from_ints(&[1, -1]).pow(3) * &QPoly::from_ints(&[1, 1]);
        assert_eq!(p.multiplicity_at_one(), 3);
        assert_eq!(QPoly::from_ints(&[2]).multiplicity_at_one(), 0);
    }
}
