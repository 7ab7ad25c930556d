//! Truncated p-adic numbers and Riemann-sum probes of the q-integral.

mod probe;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

pub use probe::{convergence_probe, rational_valuation, riemann_sum, riemann_sum_exact, ProbeRow, SHADOW_LIMIT};

use crate::exact::Rational;
use crate::{Error, Result};

/// A p-adic valuation, possibly only bounded from below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    /// The value is exactly zero.
    Infinite,
    /// The value vanishes to the known precision.
    AtLeast(i64),
    Exactly(i64),
}

impl Valuation {
    /// True when the valuation is provably at least `n`.
    pub fn at_least(self, n: i64) -> bool {
        match self {
            Valuation::Infinite => true,
            Valuation::AtLeast(a) | Valuation::Exactly(a) => a >= n,
        }
    }

    /// The guaranteed lower bound; `None` for an exact zero.
    pub fn lower_bound(self) -> Option<i64> {
        match self {
            Valuation::Infinite => None,
            Valuation::AtLeast(a) | Valuation::Exactly(a) => Some(a),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Infinite => f.write_str("inf"),
            Valuation::AtLeast(a) => write!(f, ">={a}"),
            Valuation::Exactly(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Zero,
    /// Zero modulo `p^abs`, nothing more known.
    Vanishing {
        abs: i64,
    },
    /// `p^valuation * unit`, with `unit` known modulo `p^precision`.
    Unit {
        valuation: i64,
        unit: BigUint,
        precision: u32,
    },
}

/// `p^v * u` known modulo `p^{v+K}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PAdic {
    prime: u64,
    repr: Repr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

fn pow(p: u64, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(p), e as usize)
}

/// Splits `p^v` off a nonzero integer.
fn split_valuation(p: u64, x: &BigInt) -> (i64, BigInt) {
    let pb = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (quot, rem) = x.div_rem(&pb);
        if !rem.is_zero() {
            return (v, x);
        }
        x = quot;
        v += 1;
    }
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> BigUint {
    let (a, m) = (BigInt::from(a.clone()), BigInt::from(m.clone()));
    let egcd = a.extended_gcd(&m);
    debug_assert!(egcd.gcd.is_one());
    egcd.x.mod_floor(&m).to_biguint().expect("reduced")
}

fn reduce(x: &BigInt, m: &BigUint) -> BigUint {
    x.mod_floor(&BigInt::from(m.clone())).to_biguint().expect("reduced")
}

impl PAdic {
    pub fn zero(prime: u64) -> Self {
        PAdic { prime, repr: Repr::Zero }
    }

    /// The integer `value` known modulo `p^abs_precision`.
    pub fn from_residue(prime: u64, value: &BigInt, abs_precision: i64) -> Self {
        if abs_precision <= 0 {
            return PAdic { prime, repr: Repr::Vanishing { abs: abs_precision } };
        }
        let modulus = pow(prime, abs_precision as u32);
        let r = reduce(value, &modulus);
        if r.is_zero() {
            return PAdic { prime, repr: Repr::Vanishing { abs: abs_precision } };
        }
        let (v, u) = split_valuation(prime, &BigInt::from(r));
        let precision = (abs_precision - v) as u32;
        let unit = reduce(&u, &pow(prime, precision));
        PAdic { prime, repr: Repr::Unit { valuation: v, unit, precision } }
    }

    /// A rational number with `precision` known unit digits.
    pub fn from_rational(prime: u64, r: &Rational, precision: u32) -> Result<Self> {
        if r.is_zero() {
            return Ok(Self::zero(prime));
        }
        if precision == 0 {
            return Err(Error::PrecisionExhausted);
        }
        let (vn, un) = split_valuation(prime, r.numer());
        let (vd, ud) = split_valuation(prime, r.denom());
        let modulus = pow(prime, precision);
        let unit = (reduce(&un, &modulus) * mod_inverse(&reduce(&ud, &modulus), &modulus)) % &modulus;
        Ok(PAdic { prime, repr: Repr::Unit { valuation: vn - vd, unit, precision } })
    }

    pub fn from_integer(prime: u64, n: i64, precision: u32) -> Result<Self> {
        Self::from_rational(prime, &Rational::from_integer(n.into()), precision)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn valuation(&self) -> Valuation {
        match &self.repr {
            Repr::Zero => Valuation::Infinite,
            Repr::Vanishing { abs } => Valuation::AtLeast(*abs),
            Repr::Unit { valuation, .. } => Valuation::Exactly(*valuation),
        }
    }

    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Unit { unit, .. } => Some(unit),
            _ => None,
        }
    }

    /// Number of known unit digits.
    pub fn precision(&self) -> Option<u32> {
        match &self.repr {
            Repr::Unit { precision, .. } => Some(*precision),
            _ => None,
        }
    }

    /// The value is known modulo `p^a`; `None` for an exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Vanishing { abs } => Some(*abs),
            Repr::Unit { valuation, precision, .. } => Some(valuation + *precision as i64),
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.repr == Repr::Zero
    }

    /// Whether `r` reduces to this value at the known precision.
    pub fn agrees_with(&self, r: &Rational) -> bool {
        let Some(abs) = self.absolute_precision() else {
            return r.is_zero();
        };
        let precision = (abs + 64).max(1) as u32;
        match PAdic::from_rational(self.prime, r, precision).and_then(|other| self.sub(&other)) {
            Ok(diff) => diff.valuation().at_least(abs),
            Err(_) => false,
        }
    }

    fn check_prime(&self, other: &PAdic) -> Result<()> {
        if self.prime != other.prime {
            return Err(Error::PrimeMismatch(self.prime, other.prime));
        }
        Ok(())
    }

    fn neg(&self) -> PAdic {
        match &self.repr {
            Repr::Unit { valuation, unit, precision } => {
                let m = pow(self.prime, *precision);
                let unit = (&m - unit) % &m;
                PAdic { prime: self.prime, repr: Repr::Unit { valuation: *valuation, unit, precision: *precision } }
            }
            _ => self.clone(),
        }
    }

    pub fn add(&self, other: &PAdic) -> Result<PAdic> {
        self.check_prime(other)?;
        let p = self.prime;
        let abs = match (self.absolute_precision(), other.absolute_precision()) {
            (None, None) => return Ok(PAdic::zero(p)),
            (None, Some(_)) => return Ok(other.clone()),
            (Some(_), None) => return Ok(self.clone()),
            (Some(a), Some(b)) => a.min(b),
        };
        let terms: Vec<(i64, &BigUint)> = [self, other]
            .into_iter()
            .filter_map(|x| match &x.repr {
                Repr::Unit { valuation, unit, .. } => Some((*valuation, unit)),
                _ => None,
            })
            .collect();
        let Some(base) = terms.iter().map(|t| t.0).min() else {
            return Ok(PAdic { prime: p, repr: Repr::Vanishing { abs } });
        };
        if base >= abs {
            return Ok(PAdic { prime: p, repr: Repr::Vanishing { abs } });
        }
        let sum: BigUint = terms.iter().map(|(v, u)| pow(p, (v - base) as u32) * *u).sum();
        let shifted = PAdic::from_residue(p, &BigInt::from(sum), abs - base);
        Ok(shifted.shift(base))
    }

    fn shift(mut self, by: i64) -> PAdic {
        match &mut self.repr {
            Repr::Zero => {}
            Repr::Vanishing { abs } => *abs += by,
            Repr::Unit { valuation, .. } => *valuation += by,
        }
        self
    }

    pub fn sub(&self, other: &PAdic) -> Result<PAdic> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PAdic) -> Result<PAdic> {
        self.check_prime(other)?;
        let p = self.prime;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => Repr::Zero,
            (Repr::Vanishing { abs: a }, Repr::Vanishing { abs: b }) => Repr::Vanishing { abs: a + b },
            (Repr::Vanishing { abs }, Repr::Unit { valuation, .. })
            | (Repr::Unit { valuation, .. }, Repr::Vanishing { abs }) => Repr::Vanishing { abs: abs + valuation },
            (
                Repr::Unit { valuation: va, unit: ua, precision: ka },
                Repr::Unit { valuation: vb, unit: ub, precision: kb },
            ) => {
                let precision = (*ka).min(*kb);
                Repr::Unit { valuation: va + vb, unit: (ua * ub) % pow(p, precision), precision }
            }
        };
        Ok(PAdic { prime: p, repr })
    }

    pub fn div(&self, other: &PAdic) -> Result<PAdic> {
        self.check_prime(other)?;
        let p = self.prime;
        let (vb, ub, kb) = match &other.repr {
            Repr::Zero => return Err(Error::DivisionByZero),
            Repr::Vanishing { .. } => return Err(Error::PrecisionExhausted),
            Repr::Unit { valuation, unit, precision } => (*valuation, unit, *precision),
        };
        let repr = match &self.repr {
            Repr::Zero => Repr::Zero,
            Repr::Vanishing { abs } => Repr::Vanishing { abs: abs - vb },
            Repr::Unit { valuation, unit, precision } => {
                let precision = (*precision).min(kb);
                let m = pow(p, precision);
                Repr::Unit { valuation: valuation - vb, unit: (unit * mod_inverse(&(ub % &m), &m)) % &m, precision }
            }
        };
        Ok(PAdic { prime: p, repr })
    }

    pub fn arith(&self, other: &PAdic, op: ArithOp) -> Result<PAdic> {
        match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
            ArithOp::Div => self.div(other),
        }
    }
}

impl fmt::Display for PAdic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        match &self.repr {
            Repr::Zero => f.write_str("0"),
            Repr::Vanishing { abs } => write!(f, "O({p}^{abs})"),
            Repr::Unit { valuation, unit, precision } => {
                write!(f, "{unit}*{p}^{valuation} + O({p}^{})", valuation + *precision as i64)
            }
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// An odd prime `p` and an integer `q` with `q = 1 (mod p)`, so `|1 - q|_p < 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeed {
    prime: u64,
    q: BigInt,
}

impl QSeed {
    pub fn new(prime: u64, q: i64) -> Result<Self> {
        if prime < 3 || !is_prime(prime) {
            return Err(Error::InvalidSeed(format!("p = {prime} is not an odd prime")));
        }
        if q == 1 {
            return Err(Error::InvalidSeed("q = 1 is excluded; q-integers degenerate there".into()));
        }
        if (q - 1).rem_euclid(prime as i64) != 0 {
            return Err(Error::InvalidSeed(format!("q = {q} is not congruent to 1 mod {prime}")));
        }
        Ok(QSeed { prime, q: q.into() })
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn q_rational(&self) -> Rational {
        Rational::from_integer(self.q.clone())
    }
}

impl Default for QSeed {
    fn default() -> Self {
        QSeed::new(3, 4).expect("valid seed")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    fn int(p: u64, n: i64) -> PAdic {
        PAdic::from_integer(p, n, 8).unwrap()
    }

    #[test]
    fn sum_gains_valuation() {
        let s = int(3, 3).add(&int(3, 6)).unwrap();
        assert!(s.valuation().at_least(2));
        assert!(s.agrees_with(&rational(9, 1)));
    }

    #[test]
    fn modular_inverse() {
        let one = PAdic::from_integer(3, 1, 5).unwrap();
        let two = PAdic::from_integer(3, 2, 5).unwrap();
        let u = one.div(&two).unwrap();
        assert_eq!(u.valuation(), Valuation::Exactly(0));
        assert_eq!((u.unit().unwrap() * 2u32) % 243u32, BigUint::one());
    }

    #[test]
    fn cancellation_leaves_bounded_zero() {
        let a = PAdic::from_integer(3, 5, 4).unwrap();
        let d = a.sub(&a).unwrap();
        assert_eq!(d.valuation(), Valuation::AtLeast(4));
        assert_eq!(d.div(&a).unwrap().valuation(), Valuation::AtLeast(4));
        assert_eq!(a.div(&d), Err(Error::PrecisionExhausted));
        assert_eq!(a.div(&PAdic::zero(3)), Err(Error::DivisionByZero));
    }

    #[test]
    fn rational_round_trip() {
        let r = rational(-21, 5);
        let x = PAdic::from_rational(3, &r, 6).unwrap();
        assert_eq!(x.valuation(), Valuation::Exactly(1));
        assert_eq!(x.absolute_precision(), Some(7));
        assert!(x.agrees_with(&r));
        assert!(!x.agrees_with(&rational(-21, 4)));
        assert_eq!(PAdic::from_rational(3, &r, 0), Err(Error::PrecisionExhausted));
    }

    #[test]
    fn primes_must_match() {
        assert_eq!(int(3, 1).add(&int(5, 1)), Err(Error::PrimeMismatch(3, 5)));
    }

    #[test]
    fn seeds() {
        assert!(QSeed::new(3, 4).is_ok());
        assert!(QSeed::new(5, -4).is_ok());
        assert!(matches!(QSeed::new(2, 5), Err(Error::InvalidSeed(_))));
        assert!(matches!(QSeed::new(9, 10), Err(Error::InvalidSeed(_))));
        assert!(matches!(QSeed::new(3, 5), Err(Error::InvalidSeed(_))));
        assert!(matches!(QSeed::new(3, 1), Err(Error::InvalidSeed(_))));
    }

    #[test]
    fn display() {
        assert_eq!(PAdic::from_integer(3, 18, 2).unwrap().to_string(), "2*3^2 + O(3^4)");
        assert_eq!(PAdic::zero(3).to_string(), "0");
        assert_eq!(Valuation::AtLeast(12).to_string(), ">=12");
    }
}
