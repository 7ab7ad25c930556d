use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{PAdic, QSeed, Valuation};
use crate::carlitz::beta;
use crate::exact::Rational;
use crate::{Error, Result};

/// Largest `p^N` for which the exact rational Riemann sum is also computed.
pub const SHADOW_LIMIT: u64 = 6561;

const TERM_LIMIT: u64 = 1 << 22;

fn level_size(p: u64, level: u32) -> Result<u64> {
    match p.checked_pow(level) {
        Some(m) if m <= TERM_LIMIT => Ok(m),
        _ => Err(Error::RangeTooLarge { requested: level as usize, limit: TERM_LIMIT.ilog(p) as usize }),
    }
}

/// `(1/[p^N]_q) sum_{x < p^N} [x]_q^n q^x`, with numerator and denominator
/// accumulated as integers modulo `p^{K+N}`.
pub fn riemann_sum(moment: u32, seed: &QSeed, level: u32, precision: u32) -> Result<PAdic> {
    if level == 0 {
        return Err(Error::Domain("the level N must be at least 1".into()));
    }
    if precision == 0 {
        return Err(Error::PrecisionExhausted);
    }
    let p = seed.prime();
    let size = level_size(p, level)?;
    let abs = (precision + level) as i64;
    let modulus = num_traits::pow(BigInt::from(p), abs as usize);
    let q = seed.q() % &modulus;
    let (mut qx, mut ux, mut num) = (BigInt::one(), BigInt::zero(), BigInt::zero());
    for _ in 0..size {
        num = (num + ux.modpow(&moment.into(), &modulus) * &qx) % &modulus;
        ux = (BigInt::one() + &q * &ux) % &modulus;
        qx = (&qx * &q) % &modulus;
    }
    let num = PAdic::from_residue(p, &num, abs);
    let den = PAdic::from_residue(p, &ux, abs);
    num.div(&den)
}

/// The same Riemann sum as an exact rational number.
pub fn riemann_sum_exact(moment: u32, seed: &QSeed, level: u32) -> Result<Rational> {
    let size = level_size(seed.prime(), level)?;
    let q = seed.q();
    let (mut qx, mut ux, mut num) = (BigInt::one(), BigInt::zero(), BigInt::zero());
    for _ in 0..size {
        num += num_traits::pow(ux.clone(), moment as usize) * &qx;
        ux = BigInt::one() + q * &ux;
        qx *= q;
    }
    Ok(Rational::new(num, ux))
}

/// `v_p(r)`, infinite for zero.
pub fn rational_valuation(p: u64, r: &Rational) -> Valuation {
    if r.is_zero() {
        return Valuation::Infinite;
    }
    let count = |x: &BigInt| {
        let (pb, mut x, mut v) = (BigInt::from(p), x.clone(), 0i64);
        while (&x % &pb).is_zero() {
            x /= &pb;
            v += 1;
        }
        v
    };
    Valuation::Exactly(count(r.numer()) - count(r.denom()))
}

/// One level of a convergence probe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeRow {
    pub level: u32,
    /// `v_p(S_N - beta_n(q))` from truncated p-adic arithmetic.
    pub valuation: Valuation,
    /// The same valuation from exact rationals, when `p^N <= SHADOW_LIMIT`.
    pub shadow: Option<Valuation>,
}

/// `v_p(S_N - beta_n(q))` for `N = 1..=levels`, ordered by `N`.
pub fn convergence_probe(moment: u32, seed: &QSeed, levels: u32, precision: u32) -> Result<Vec<ProbeRow>> {
    let target = beta(moment).eval(&seed.q_rational())?;
    let p = seed.prime();
    (1..=levels)
        .into_par_iter()
        .map(|level| {
            let sum = riemann_sum(moment, seed, level, precision)?;
            let reference = PAdic::from_rational(p, &target, precision + level)?;
            let valuation = sum.sub(&reference)?.valuation();
            let shadow = if p.pow(level) <= SHADOW_LIMIT {
                Some(rational_valuation(p, &(riemann_sum_exact(moment, seed, level)? - &target)))
            } else {
                None
            };
            Ok(ProbeRow { level, valuation, shadow })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn zeroth_moment_is_one() {
        let seed = QSeed::default();
        for level in 1..=4 {
            assert_eq!(riemann_sum_exact(0, &seed, level).unwrap(), rational(1, 1));
            assert!(riemann_sum(0, &seed, level, 12).unwrap().agrees_with(&rational(1, 1)));
        }
    }

    #[test]
    fn first_level_first_moment() {
        let seed = QSeed::default();
        assert_eq!(riemann_sum_exact(1, &seed, 1).unwrap(), rational(4, 1));
        let s = riemann_sum(1, &seed, 1, 12).unwrap();
        assert!(s.agrees_with(&rational(4, 1)));
        assert_eq!(rational_valuation(3, &(rational(4, 1) - rational(-1, 5))), Valuation::Exactly(1));
    }

    #[test]
    fn padic_matches_shadow() {
        let seed = QSeed::default();
        for moment in 0..=4 {
            for level in 1..=4 {
                let exact = riemann_sum_exact(moment, &seed, level).unwrap();
                assert!(riemann_sum(moment, &seed, level, 12).unwrap().agrees_with(&exact));
            }
        }
    }

    #[test]
    fn probe_rows() {
        let seed = QSeed::default();
        let rows = convergence_probe(2, &seed, 5, 12).unwrap();
        let got: Vec<Valuation> = rows.iter().map(|r| r.valuation).collect();
        let want: Vec<Valuation> = [1, 3, 4, 5, 6].into_iter().map(Valuation::Exactly).collect();
        assert_eq!(got, want);
        assert!(rows.iter().all(|r| r.shadow == Some(r.valuation)));
        let zero = convergence_probe(0, &seed, 3, 12).unwrap();
        assert!(zero.iter().all(|r| r.shadow == Some(Valuation::Infinite) && r.valuation.at_least(12)));
    }

    #[test]
    fn level_guard() {
        let seed = QSeed::default();
        assert!(matches!(riemann_sum(1, &seed, 30, 12), Err(Error::RangeTooLarge { .. })));
        assert!(matches!(riemann_sum(1, &seed, 0, 12), Err(Error::Domain(_))));
    }
}
