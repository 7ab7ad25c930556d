//! Kim's q-Bernstein basis.
//!
//! Since `[x]_q + [1 - x]_{1/q} = 1`, the basis element
//! `B_{k,n}(x, q) = C(n,k) [x]_q^k [1-x]_{1/q}^{n-k}` is the classical
//! Bernstein polynomial `C(n,k) U^k (1-U)^{n-k}` in the symbol `U = [x]_q`.
//! All symbolic work below happens in `U`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binomial, QRat, Rational, UPoly};
use crate::{Error, Result};

/// One basis element `B_{k,n}` together with its expansion in `U`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinBasisElement {
    pub k: u32,
    pub n: u32,
    pub poly: UPoly,
}

impl BernsteinBasisElement {
    pub fn new(k: u32, n: u32) -> Result<Self> {
        Ok(BernsteinBasisElement { k, n, poly: bernstein_poly(k, n)? })
    }
}

fn check_index(k: u32, n: u32) -> Result<()> {
    if k > n {
        return Err(Error::IndexOutOfRange(format!("Bernstein index k={k} exceeds degree n={n}")));
    }
    Ok(())
}

fn int(c: BigInt) -> QRat {
    QRat::from_rational(Rational::from_integer(c))
}

/// `C(n,k) U^k (1-U)^{n-k}` in product form.
pub fn bernstein_poly(k: u32, n: u32) -> Result<UPoly> {
    check_index(k, n)?;
    let head = UPoly::monomial(int(binomial(n as i64, k as i64)), k as usize);
    Ok(&head * &UPoly::one_minus_u().pow(n - k))
}

/// `sum_{l=k}^n C(n,l) C(l,k) (-1)^{l-k} U^l`, the power-basis expansion.
pub fn bernstein_poly_expanded(k: u32, n: u32) -> Result<UPoly> {
    check_index(k, n)?;
    Ok((k..=n)
        .map(|l| {
            let mut c = binomial(n as i64, l as i64) * binomial(l as i64, k as i64);
            if (l - k) % 2 == 1 {
                c = -c;
            }
            UPoly::monomial(int(c), l as usize)
        })
        .sum())
}

/// Lower-triangular matrix whose column `j` holds the power-basis
/// coefficients of `B_{j,n}`: `b_{ij} = C(n,i) C(i,j) (-1)^{i-j}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConversionMatrix {
    n: u32,
    entries: Vec<Vec<Rational>>,
}

impl ConversionMatrix {
    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries.iter().enumerate().all(|(i, row)| row.iter().skip(i + 1).all(Zero::is_zero))
    }

    /// Power-basis coefficients `M * C` of the combination `sum_j C_j B_{j,n}`.
    pub fn from_bernstein(&self, bernstein: &[QRat]) -> Result<Vec<QRat>> {
        self.check_len(bernstein.len())?;
        Ok(self.entries.iter().map(|row| row.iter().zip(bernstein).map(|(m, c)| c.scale(m)).sum()).collect())
    }

    /// Solves `M * C = power` by forward substitution.
    pub fn to_bernstein(&self, power: &[QRat]) -> Result<Vec<QRat>> {
        self.check_len(power.len())?;
        let mut out: Vec<QRat> = Vec::with_capacity(power.len());
        for (i, row) in self.entries.iter().enumerate() {
            let known: QRat = row.iter().zip(&out).map(|(m, c)| c.scale(m)).sum();
            let diag = row[i].recip();
            out.push((&power[i] - &known).scale(&diag));
        }
        Ok(out)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        let needed = self.n as usize + 1;
        if len != needed {
            return Err(Error::SequenceTooShort { needed, got: len });
        }
        Ok(())
    }
}

pub fn basis_matrix(n: u32) -> ConversionMatrix {
    let entries = (0..=n as i64)
        .map(|i| {
            (0..=n as i64)
                .map(|j| {
                    let mut c = binomial(n as i64, i) * binomial(i, j);
                    if (i - j).rem_euclid(2) == 1 {
                        c = -c;
                    }
                    Rational::from_integer(c)
                })
                .collect()
        })
        .collect();
    ConversionMatrix { n, entries }
}

/// Coefficients in the degree-`n` q-Bernstein basis of the polynomial
/// `sum_i power[i] U^i`.
pub fn to_bernstein_coeffs(power: &[QRat], n: u32) -> Result<Vec<QRat>> {
    basis_matrix(n).to_bernstein(power)
}

pub fn from_bernstein_coeffs(bernstein: &[QRat], n: u32) -> Result<Vec<QRat>> {
    basis_matrix(n).from_bernstein(bernstein)
}

/// `sum_{k=i}^n (C(k,i) / C(n,i)) B_{k,n}`; equal to `U^i`. `i = 0` is
/// accepted and gives `1`.
pub fn weighted_sum(i: u32, n: u32) -> Result<UPoly> {
    if i > n {
        return Err(Error::IndexOutOfRange(format!("weighted sum index i={i} exceeds degree n={n}")));
    }
    let norm = Rational::from_integer(binomial(n as i64, i as i64));
    let mut acc = UPoly::zero();
    for k in i..=n {
        let w = Rational::from_integer(binomial(k as i64, i as i64)) / &norm;
        acc = &acc + &bernstein_poly(k, n)?.scale(&QRat::from_rational(w));
    }
    Ok(acc)
}

/// How the operator is evaluated.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorMode {
    /// Exact over the rationals. Needs `q^x` rational: either `x` is `0` or
    /// `1`, or the caller supplies the value of `U = [x]_q` directly.
    Exact { u: Option<Rational> },
    /// binary64 with `[x]_q = (1 - q^x)/(1 - q)`; compare with a `1e-12` tolerance.
    Real,
}

#[derive(Clone, Debug, PartialEq)]
pub enum OperatorValue {
    Exact(Rational),
    Real(f64),
}

impl OperatorValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            OperatorValue::Exact(r) => crate::exact::to_f64(r),
            OperatorValue::Real(v) => *v,
        }
    }
}

/// Kim's q-Bernstein operator `sum_k f(k/n) C(n,k) [x]_q^k [1-x]_{1/q}^{n-k}`
/// given the samples `f(0/n), ..., f(n/n)`.
pub fn operator_eval(samples: &[Rational], x: &Rational, q: &Rational, mode: &OperatorMode) -> Result<OperatorValue> {
    if samples.is_empty() {
        return Err(Error::SequenceTooShort { needed: 1, got: 0 });
    }
    if x < &Rational::zero() || x > &Rational::one() {
        return Err(Error::Domain(format!("x = {x} lies outside [0, 1]")));
    }
    if q <= &Rational::zero() || q >= &Rational::one() {
        return Err(Error::Domain(format!("q = {q} lies outside (0, 1)")));
    }
    let n = (samples.len() - 1) as u32;
    match mode {
        OperatorMode::Exact { u } => {
            let u = match u {
                Some(u) => u.clone(),
                None if x.is_zero() || x.is_one() => x.clone(),
                None => {
                    return Err(Error::Domain(format!(
                        "q^x is not rational at x = {x}; pass the value of [x]_q explicitly"
                    )))
                }
            };
            let u = QRat::from_rational(u);
            let mut acc = Rational::zero();
            for (k, f) in samples.iter().enumerate() {
                let b = bernstein_poly(k as u32, n)?.substitute(&u);
                acc += f * b.to_constant().expect("U is a rational number");
            }
            Ok(OperatorValue::Exact(acc))
        }
        OperatorMode::Real => {
            let (x, q) = (crate::exact::to_f64(x), crate::exact::to_f64(q));
            let xq = (1.0 - q.powf(x)) / (1.0 - q);
            let p = 1.0 / q;
            let yq = (1.0 - p.powf(1.0 - x)) / (1.0 - p);
            let mut acc = 0.0;
            for (k, f) in samples.iter().enumerate() {
                let c = crate::exact::to_f64(&Rational::from_integer(binomial(n as i64, k as i64)));
                acc += crate::exact::to_f64(f) * c * xq.powi(k as i32) * yq.powi((n as usize - k) as i32);
            }
            Ok(OperatorValue::Real(acc))
        }
    }
}
