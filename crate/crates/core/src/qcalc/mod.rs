//! q-combinatorial primitives.
//!
//! Everything here is exact. Polynomial identities in `[x]_q` are expressed
//! in the symbol `U = [x]_q`; the bridge to the shifted q-integers is
//! `[x - j]_q = ([x]_q - [j]_q) / q^j`.

mod stirling;

use std::collections::HashMap;
use std::sync::{LazyLock, Mutex};

use num_traits::One;

pub use stirling::{
    newton_connection, stirling, ArgumentRule, InterpretationBinding, StirlingReading, StirlingVariant,
};

use crate::exact::{binomial, integer, QPoly, QRat, Rational, UPoly};
use crate::{Error, Result};

/// `[n]_q = 1 + q + ... + q^{n-1}`; `[0]_q = 0`.
pub fn q_integer(n: u32) -> QPoly {
    QPoly::from_coeffs(vec![Rational::one(); n as usize])
}

/// `[m]_q` for any integer `m`, using `[-m]_q = -q^{-m} [m]_q`.
pub fn q_integer_signed(m: i64) -> QRat {
    if m >= 0 {
        q_integer(m as u32).into()
    } else {
        -(&QRat::q_pow(m) * &QRat::from(q_integer(m.unsigned_abs() as u32)))
    }
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: u32) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, j| &acc * &q_integer(j))
}

static QBINOMIAL: LazyLock<Mutex<HashMap<(u32, u32), QPoly>>> = LazyLock::new(Default::default);

/// Gaussian binomial coefficient, zero unless `0 <= k <= n`.
///
/// Built by the product `prod_{j=1..k} [n-k+j]_q / [j]_q`, where every
/// partial product is itself a Gaussian binomial and so each division is exact.
pub fn q_binomial(n: u32, k: i64) -> QPoly {
    if k < 0 || k > n as i64 {
        return QPoly::zero();
    }
    let k = (k as u32).min(n - k as u32);
    if let Some(hit) = QBINOMIAL.lock().unwrap().get(&(n, k)) {
        return hit.clone();
    }
    let mut acc = QPoly::one();
    for j in 1..=k {
        acc = (&acc * &q_integer(n - k + j)).div_exact(&q_integer(j)).expect("Gaussian binomials are polynomials");
    }
    QBINOMIAL.lock().unwrap().insert((n, k), acc.clone());
    acc
}

/// `prod_{j=0}^{k-1} (U - [j]_q)`, which equals `q^{C(k,2)} [x]_{k,q}`.
pub fn u_falling(k: u32) -> UPoly {
    (0..k).fold(UPoly::one(), |acc, j| {
        let factor = UPoly::from_coeffs(vec![-QRat::from(q_integer(j)), QRat::one()]);
        &acc * &factor
    })
}

/// The q-factorial of `x` of order `k`, `[x]_q [x-1]_q ... [x-k+1]_q`, as a
/// polynomial in `U`.
pub fn x_falling(k: u32) -> UPoly {
    u_falling(k).scale(&q_pow_binom2(k as i64).recip().expect("nonzero"))
}

/// `[x]_{k,q}` at an integer point `x`, computed from shifted q-integers.
pub fn x_falling_at(x: i64, k: u32) -> QRat {
    (0..k as i64).map(|j| q_integer_signed(x - j)).product()
}

/// Symbolic `binom(x, k)_q = q^{-C(k,2)} u_falling(k) / [k]_q!`.
pub fn q_binom_x(k: u32) -> UPoly {
    let scale = QRat::new(QPoly::one(), &q_factorial(k) * q_pow_binom2(k as i64).numer()).expect("nonzero");
    u_falling(k).scale(&scale)
}

/// `q^{C(n,2)}` as a polynomial.
pub fn q_pow_binom2(n: i64) -> QRat {
    QRat::q_pow(i64::try_from(binomial(n, 2)).expect("small"))
}

/// `Delta_q^n f(0) = sum_k binom(n,k)_q (-1)^k q^{C(k,2)} f(n-k)`.
pub fn q_difference(f: &[QRat], n: u32) -> Result<QRat> {
    let needed = n as usize + 1;
    if f.len() < needed {
        return Err(Error::SequenceTooShort { needed, got: f.len() });
    }
    Ok((0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let c = QRat::from(q_binomial(n, k as i64)).scale(&integer(sign));
            &(&c * &q_pow_binom2(k as i64)) * &f[(n - k) as usize]
        })
        .sum())
}

/// `Delta_q^n f(0)` by applying the factors `E - q^{i-1} I`, `i = 1..n`, one
/// at a time.
pub fn q_difference_iterated(f: &[QRat], n: u32) -> Result<QRat> {
    let needed = n as usize + 1;
    if f.len() < needed {
        return Err(Error::SequenceTooShort { needed, got: f.len() });
    }
    let mut seq: Vec<QRat> = f[..needed].to_vec();
    for i in 1..=n {
        let w = QRat::q_pow(i as i64 - 1);
        seq = seq.windows(2).map(|pair| &pair[1] - &(&w * &pair[0])).collect();
    }
    Ok(seq.swap_remove(0))
}

/// `q^{nx} = sum_m C(n,m) (q-1)^m [x]_q^m` as a polynomial in `U`.
pub fn q_exp_expand(n: u32) -> UPoly {
    let q_minus_one = QRat::from(QPoly::from_ints(&[-1, 1]));
    UPoly::from_coeffs(
        (0..=n)
            .map(|m| {
                q_minus_one
                    .powi(m as i64)
                    .expect("nonnegative")
                    .scale(&Rational::from_integer(binomial(n as i64, m as i64)))
            })
            .collect(),
    )
}
