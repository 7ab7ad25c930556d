use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use super::qpoly::forward_owned;
use super::{QPoly, Rational};
use crate::{Error, Result};

/// Element of `Q(q)` in canonical form: coprime numerator and denominator with
/// a monic denominator. Zero is `0/1`. Equality is structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: QPoly,
    den: QPoly,
}

impl QRat {
    pub fn zero() -> Self {
        QRat { num: QPoly::zero(), den: QPoly::one() }
    }

    pub fn one() -> Self {
        QRat { num: QPoly::one(), den: QPoly::one() }
    }

    pub fn q() -> Self {
        QPoly::q().into()
    }

    pub fn from_int(c: i64) -> Self {
        QPoly::from_int(c).into()
    }

    pub fn from_rational(c: Rational) -> Self {
        QPoly::constant(c).into()
    }

    /// `num / den` reduced to canonical form.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: QPoly, den: QPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = QPoly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
            }
        };
        Self::from_coprime(num, den)
    }

    /// Canonical form of `num / den` when the two are already coprime.
    fn from_coprime(num: QPoly, den: QPoly) -> Self {
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            QRat { num, den }
        } else {
            let inv = lc.recip();
            QRat { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational number when it does not depend on `q`.
    pub fn to_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0) / self.den.coeff(0))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &QRat) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.recip()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        QRat { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Integer powers, negative exponents allowed for nonzero values.
    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs()).map_err(|_| Error::Domain("exponent too large".into()))?;
        Ok(QRat { num: base.num.pow(e), den: base.den.pow(e) })
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        let mono = QPoly::monomial(Rational::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            mono.into()
        } else {
            QRat { num: QPoly::one(), den: mono }
        }
    }

    /// Exact value at `q = q0`. Fails when the reduced denominator vanishes.
    pub fn eval(&self, q0: &Rational) -> Result<Rational> {
        let d = self.den.eval(q0);
        if d.is_zero() {
            return Err(Error::Pole { at: super::fmt_rational(q0), denominator: self.den.to_string() });
        }
        Ok(self.num.eval(q0) / d)
    }

    /// Value of the `q -> 1` limit.
    ///
    /// Common `(q - 1)` factors are cancelled first; a denominator that still
    /// vanishes at `q = 1` is a genuine pole.
    pub fn limit_q_to_one(&self) -> Result<Rational> {
        let root = QPoly::from_ints(&[-1, 1]);
        let common = self.num.multiplicity_at_one().min(self.den.multiplicity_at_one());
        let divisor = root.pow(common as u32);
        let num = self.num.div_exact(&divisor).expect("common factor");
        let den = self.den.div_exact(&divisor).expect("common factor");
        let one = Rational::one();
        let d = den.eval(&one);
        if d.is_zero() {
            return Err(Error::Pole { at: "1".into(), denominator: self.den.to_string() });
        }
        Ok(num.eval(&one) / d)
    }

    /// `(<num>)/(<den>)` regardless of the denominator.
    pub fn to_canonical_string(&self) -> String {
        format!("({})/({})", self.num, self.den)
    }
}

impl From<QPoly> for QRat {
    fn from(p: QPoly) -> Self {
        QRat { num: p, den: QPoly::one() }
    }
}

impl Default for QRat {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QRat::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            // gcd(a + p*b, b) = gcd(a, b) = 1
            return QRat { num: &self.num + &(&rhs.num * &self.den), den: self.den.clone() };
        }
        if self.den.is_one() {
            return QRat { num: &rhs.num + &(&self.num * &rhs.den), den: rhs.den.clone() };
        }
        QRat::normalized(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        if self.is_zero() || rhs.is_zero() {
            return QRat::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QRat { num: &self.num * &rhs.num, den: QPoly::one() };
        }
        // cross-cancel before multiplying
        let g1 = QPoly::gcd(&self.num, &rhs.den);
        let g2 = QPoly::gcd(&rhs.num, &self.den);
        let div = |p: &QPoly, g: &QPoly| if g.is_one() { p.clone() } else { p.div_exact(g).expect("gcd divides") };
        let num = &div(&self.num, &g1) * &div(&rhs.num, &g2);
        let den = &div(&self.den, &g2) * &div(&rhs.den, &g1);
        QRat::from_coprime(num, den)
    }
}

/// Panics on division by zero; use [`QRat::checked_div`] for the fallible form.
impl Div for &QRat {
    type Output = QRat;
    fn div(self, rhs: &QRat) -> QRat {
        self.checked_div(rhs).expect("division by zero in Q(q)")
    }
}

forward_owned!(QRat, Add::add, Sub::sub, Mul::mul, Div::div);

impl std::iter::Sum for QRat {
    fn sum<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::zero(), |acc, x| &acc + &x)
    }
}

impl std::iter::Product for QRat {
    fn product<I: Iterator<Item = QRat>>(iter: I) -> QRat {
        iter.fold(QRat::one(), |acc, x| &acc * &x)
    }
}

/// Compact form: just the numerator for polynomials, `(num)/(den)` otherwise.
impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

impl FromStr for QRat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_qrat(s)
    }
}

impl FromStr for QPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse::parse_qpoly(s)
    }
}
