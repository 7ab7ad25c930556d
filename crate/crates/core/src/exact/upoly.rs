use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::qpoly::forward_owned;
use super::{QPoly, QRat};

/// Polynomial in the symbol `U = [x]_q` with coefficients in `Q(q)`.
///
/// Trailing zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<QRat>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(QRat::one())
    }

    /// The symbol `U` itself.
    pub fn u() -> Self {
        Self::monomial(QRat::one(), 1)
    }

    /// `1 - U`, which is `[1 - x]_{1/q}`.
    pub fn one_minus_u() -> Self {
        Self::from_coeffs(vec![QRat::one(), QRat::from_int(-1)])
    }

    pub fn constant(c: QRat) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: QRat, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![QRat::zero(); degree + 1];
        coeffs[degree] = c;
        UPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<QRat>) -> Self {
        while coeffs.last().is_some_and(QRat::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[QRat] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> QRat {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &QRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Value at `U = u0` (Horner).
    pub fn substitute(&self, u0: &QRat) -> QRat {
        self.coeffs.iter().rev().fold(QRat::zero(), |acc, c| &(&acc * u0) + c)
    }

    /// Value at `U = [m]_q`, i.e. at the integer point `x = m`.
    pub fn at_integer(&self, m: u32) -> QRat {
        let qm = QPoly::from_coeffs(vec![num_traits::One::one(); m as usize]);
        self.substitute(&qm.into())
    }

    /// Composition `self(inner(U))`.
    pub fn compose(&self, inner: &UPoly) -> UPoly {
        self.coeffs.iter().rev().fold(UPoly::zero(), |acc, c| &(&acc * inner) + &UPoly::constant(c.clone()))
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c = &*c + s;
        }
        UPoly::from_coeffs(coeffs)
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        -&self
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut coeffs = vec![QRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        UPoly::from_coeffs(coeffs)
    }
}

forward_owned!(UPoly, Add::add, Sub::sub, Mul::mul);

impl std::iter::Sum for UPoly {
    fn sum<I: Iterator<Item = UPoly>>(iter: I) -> UPoly {
        iter.fold(UPoly::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let var = match d {
                0 => String::new(),
                1 => "U".to_string(),
                _ => format!("U^{d}"),
            };
            match (d, c.is_one()) {
                (0, _) => write!(f, "{c}")?,
                (_, true) => f.write_str(&var)?,
                _ => write!(f, "[{c}]*{var}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_at_small_points() {
        let sq = UPoly::one_minus_u().pow(2);
        assert_eq!(sq.at_integer(0), QRat::one());
        assert_eq!(UPoly::u().pow(2).at_integer(1), QRat::one());
    }

    #[test]
    fn distributivity() {
        let u = UPoly::u();
        let prod = &u * &(&u - &UPoly::one());
        assert_eq!(prod, UPoly::from_coeffs(vec![QRat::zero(), QRat::from_int(-1), QRat::one()]));
    }

    #[test]
    fn composition_with_reflection_is_involutive() {
        let p = UPoly::from_coeffs(vec![QRat::from_int(3), QRat::q(), QRat::from_int(-2)]);
        let r = UPoly::one_minus_u();
        assert_eq!(p.compose(&r).compose(&r), p);
    }

    #[test]
    fn display() {
        let p = UPoly::from_coeffs(vec![QRat::zero(), QRat::from_int(-1), QRat::one()]);
        assert_eq!(p.to_string(), "[-1]*U + U^2");
    }
}
