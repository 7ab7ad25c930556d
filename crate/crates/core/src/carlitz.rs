//! Carlitz q-Bernoulli numbers as moments of the p-adic q-integral.
//!
//! The q-integral of `q^{lx}` is `(l+1)/[l+1]_q`. Expanding
//! `[x]_q^n = (1-q)^{-n} (1 - q^x)^n` binomially turns every moment into a
//! finite sum of those base values.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, Mutex};

use crate::exact::{binomial, integer, QPoly, QRat, Rational, UPoly};
use crate::qcalc::{q_binom_x, q_integer};
use crate::{Error, Result};

/// `I_q(q^{lx}) = (l+1)/[l+1]_q`.
pub fn q_exp_integral(l: u32) -> QRat {
    QRat::new(QPoly::constant(integer(l as i64 + 1)), q_integer(l + 1)).expect("[l+1]_q is nonzero")
}

/// `prod_{j=i+1}^{i+k} j/[j]_q`, the k-fold integral of `q^{sum (k-l+i) x_l}`.
fn order_moment(i: u32, k: u32) -> QRat {
    (i..i + k).map(q_exp_integral).product()
}

fn one_minus_q_inv_pow(n: u32) -> QRat {
    QRat::from(QPoly::from_ints(&[1, -1])).powi(-(n as i64)).expect("1 - q is nonzero")
}

fn signed_binomial(n: u32, i: u32) -> Rational {
    let c = Rational::from_integer(binomial(n as i64, i as i64));
    if i % 2 == 1 {
        -c
    } else {
        c
    }
}

/// Which of the three Bernoulli families a value belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BetaFamily {
    /// Carlitz's `beta_{n,q}`.
    Plain { n: u32 },
    /// `beta^{(k)}_{n,q}(x)`, `k >= 1`.
    Order { n: u32, k: u32, x: u32 },
    /// `beta^{(-order)}_{index,q}(x)`.
    InverseOrder { index: u32, order: u32, x: u32 },
}

impl BetaFamily {
    pub fn value(self) -> Result<QRat> {
        match self {
            BetaFamily::Plain { n } => Ok(beta(n)),
            BetaFamily::Order { n, k, x } => beta_order(n, k, x),
            BetaFamily::InverseOrder { index, order, x } => Ok(beta_inverse_at(index, order, x)),
        }
    }
}

impl fmt::Display for BetaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BetaFamily::Plain { n } => write!(f, "beta_{n}"),
            BetaFamily::Order { n, k, x: 0 } => write!(f, "beta^({k})_{n}"),
            BetaFamily::Order { n, k, x } => write!(f, "beta^({k})_{n}({x})"),
            BetaFamily::InverseOrder { index, order, x: 0 } => write!(f, "beta^(-{order})_{index}"),
            BetaFamily::InverseOrder { index, order, x } => write!(f, "beta^(-{order})_{index}({x})"),
        }
    }
}

static MEMO: LazyLock<Mutex<HashMap<BetaFamily, QRat>>> = LazyLock::new(Default::default);

fn memoized(key: BetaFamily, compute: impl FnOnce() -> QRat) -> QRat {
    if let Some(hit) = MEMO.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let value = compute();
    MEMO.lock().unwrap().insert(key, value.clone());
    value
}

/// Carlitz's q-Bernoulli number
/// `beta_{n,q} = (1-q)^{-n} sum_l C(n,l) (-1)^l (l+1)/[l+1]_q`.
pub fn beta(n: u32) -> QRat {
    memoized(BetaFamily::Plain { n }, || {
        let sum: QRat = (0..=n).map(|l| q_exp_integral(l).scale(&signed_binomial(n, l))).sum();
        &sum * &one_minus_q_inv_pow(n)
    })
}

/// The q-integral of a polynomial in `U = [x]_q`: `U^m` goes to `beta_m`.
pub fn integrate_upoly(f: &UPoly) -> QRat {
    f.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(m, c)| c * &beta(m as u32)).sum()
}

/// `I_q(binom(x, n)_q)`.
pub fn integral_qbinom(n: u32) -> QRat {
    integrate_upoly(&q_binom_x(n))
}

/// `beta^{(k)}_{n,q}(x) = (1-q)^{-n} sum_i C(n,i) (-1)^i q^{ix} prod_{j=i+1}^{i+k} j/[j]_q`.
///
/// No renormalization: `beta^{(k)}_{0,q} = prod_{j=1}^k j/[j]_q`.
pub fn beta_order(n: u32, k: u32, x: u32) -> Result<QRat> {
    if k == 0 {
        return Err(Error::Domain("the order k of beta^(k) must be at least 1".into()));
    }
    Ok(memoized(BetaFamily::Order { n, k, x }, || {
        let sum: QRat = (0..=n)
            .map(|i| &order_moment(i, k).scale(&signed_binomial(n, i)) * &QRat::q_pow(i as i64 * x as i64))
            .sum();
        &sum * &one_minus_q_inv_pow(n)
    }))
}

/// Inverse q-Bernoulli number `beta^{(-order)}_{index,q}`.
pub fn beta_inverse(index: u32, order: u32) -> QRat {
    beta_inverse_at(index, order, 0)
}

/// `beta^{(-order)}_{index,q}(x)`: the order moments appear in the denominator.
pub fn beta_inverse_at(index: u32, order: u32, x: u32) -> QRat {
    memoized(BetaFamily::InverseOrder { index, order, x }, || {
        let sum: QRat = (0..=index)
            .map(|j| {
                let recip = order_moment(j, order).recip().expect("moments are nonzero");
                &recip.scale(&signed_binomial(index, j)) * &QRat::q_pow(j as i64 * x as i64)
            })
            .sum();
        &sum * &one_minus_q_inv_pow(index)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bernstein::bernstein_poly;
    use crate::exact::rational;
    use crate::qcalc::q_factorial;

    fn qr(s: &str) -> QRat {
        s.parse().unwrap()
    }

    fn classical_bernoulli(n: usize) -> Vec<Rational> {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut b: Vec<Rational> = vec![integer(1)];
        for m in 1..=n {
            let s: Rational = (0..m).map(|j| Rational::from_integer(binomial(m as i64 + 1, j as i64)) * &b[j]).sum();
            b.push(-s / integer(m as i64 + 1));
        }
        b
    }

    #[test]
    fn base_moments() {
        assert_eq!(q_exp_integral(0), QRat::one());
        assert_eq!(q_exp_integral(1), qr("(2)/(1 + q)"));
        assert_eq!(q_exp_integral(3), qr("(4)/(1 + q + q^2 + q^3)"));
    }

    #[test]
    fn first_numbers() {
        assert_eq!(beta(0), QRat::one());
        assert_eq!(beta(1), qr("(-1)/(1 + q)"));
        assert_eq!(beta(2), qr("(q)/(1 + 2*q + 2*q^2 + q^3)"));
        assert_eq!(beta(3), qr("(q - q^2)/(1 + 2*q + 3*q^2 + 3*q^3 + 2*q^4 + q^5)"));
        assert_eq!(beta(2).eval(&integer(4)).unwrap(), rational(4, 105));
    }

    #[test]
    fn classical_limit() {
        let b = classical_bernoulli(12);
        for (n, bn) in b.iter().enumerate() {
            assert_eq!(&beta(n as u32).limit_q_to_one().unwrap(), bn, "n={n}");
        }
        assert_eq!(b[1], rational(-1, 2));
    }

    #[test]
    fn integrals_of_polynomials() {
        assert_eq!(integrate_upoly(&UPoly::one()), QRat::one());
        let u = UPoly::u();
        let f = &u * &(&u - &UPoly::one());
        assert_eq!(integrate_upoly(&f), QRat::new(q_integer(2), q_integer(3)).unwrap());
        assert_eq!(integral_qbinom(0), QRat::one());
        assert_eq!(integral_qbinom(1), beta(1));
        assert_eq!(integral_qbinom(2), QRat::new(QPoly::one(), &QPoly::q() * &q_integer(3)).unwrap());
    }

    #[test]
    fn integral_of_bernstein_matches_beta_sum() {
        for n in 0..=6u32 {
            for k in 0..=n {
                let lhs = integrate_upoly(&bernstein_poly(k, n).unwrap());
                let rhs: QRat = (0..=n - k)
                    .map(|l| {
                        let c = signed_binomial(n - k, l) * Rational::from_integer(binomial(n as i64, k as i64));
                        beta(l + k).scale(&c)
                    })
                    .sum();
                assert_eq!(lhs, rhs, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn order_family() {
        assert_eq!(beta_order(1, 1, 0).unwrap(), beta(1));
        for n in 0..=5 {
            assert_eq!(beta_order(n, 1, 0).unwrap(), beta(n));
        }
        assert_eq!(beta_order(0, 3, 2).unwrap(), order_moment(0, 3));
        assert_eq!(beta_order(1, 0, 0), Err(Error::Domain("the order k of beta^(k) must be at least 1".into())));
        // beta^(2)_1 = (1-q)^{-1} (2/[2] - 6/([2][3]))
        let direct = &(&q_exp_integral(1) - &(&q_exp_integral(1) * &q_exp_integral(2))) * &one_minus_q_inv_pow(1);
        assert_eq!(beta_order(1, 2, 0).unwrap(), direct);
    }

    #[test]
    fn inverse_family() {
        for order in 0..=5u32 {
            let expected =
                QRat::new(q_factorial(order), QPoly::constant(crate::exact::factorial(order as u64).into())).unwrap();
            assert_eq!(beta_inverse(0, order), expected);
        }
        assert_eq!(beta_inverse(0, 2), qr("1/2 + 1/2*q"));
        assert_eq!(beta_inverse(1, 1), QRat::from_rational(rational(1, 2)));
        assert_eq!(beta_inverse(3, 0), QRat::zero());
    }
}
