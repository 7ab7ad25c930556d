//! q-Stirling numbers.
//!
//! The literature carries several incompatible definitions (different signs,
//! argument orders and index shifts). Each one gets its own
//! [`StirlingVariant`]; which of them a given identity actually needs is left
//! to the audit engine, which sweeps [`InterpretationBinding`]s.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, Mutex};

use super::{q_binomial, q_factorial, q_integer, q_pow_binom2, u_falling};
use crate::exact::{binomial, integer, QPoly, QRat, Rational, UPoly};

/// One concrete q-Stirling evaluator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StirlingVariant {
    /// `e_k([1]_q, ..., [n]_q)`: coefficients of `prod_{j=1}^n (1 + [j]_q z)`.
    S1Elementary,
    /// Coefficient of `U^k` in `prod_{j=0}^{n-1} (U - [j]_q)`.
    S1Signed,
    /// `q^{-C(k,2)} / [k]_q! * sum_j (-1)^j q^{C(j,2)} binom(k,j)_q [k-j]_q^n`.
    S2Explicit,
    /// Degree-`k` coefficient of the power series `prod_{j=1}^n 1/(1 + [j]_q z)`.
    S2Series,
    /// `(1-q)^{-k} sum_j (-1)^{k-j} C(k+n, k-j) binom(j+n, j)_q`.
    S2Alternating,
}

impl StirlingVariant {
    pub const ALL: [StirlingVariant; 5] = [
        StirlingVariant::S1Elementary,
        StirlingVariant::S1Signed,
        StirlingVariant::S2Explicit,
        StirlingVariant::S2Series,
        StirlingVariant::S2Alternating,
    ];

    pub const FIRST_KIND: [StirlingVariant; 2] = [StirlingVariant::S1Signed, StirlingVariant::S1Elementary];

    pub const SECOND_KIND: [StirlingVariant; 3] =
        [StirlingVariant::S2Explicit, StirlingVariant::S2Series, StirlingVariant::S2Alternating];

    /// Stable tag used in reports and on the command line.
    pub fn tag(self) -> &'static str {
        match self {
            StirlingVariant::S1Elementary => "S1_ELEM",
            StirlingVariant::S1Signed => "S1_SIGNED",
            StirlingVariant::S2Explicit => "S2_EXPLICIT",
            StirlingVariant::S2Series => "S2_SERIES",
            StirlingVariant::S2Alternating => "S2_EQ16",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.tag().eq_ignore_ascii_case(tag))
    }

    pub fn is_first_kind(self) -> bool {
        matches!(self, StirlingVariant::S1Elementary | StirlingVariant::S1Signed)
    }
}

impl fmt::Display for StirlingVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

type Key = (StirlingVariant, i64, i64);

static MEMO: LazyLock<Mutex<HashMap<Key, QRat>>> = LazyLock::new(Default::default);

/// Evaluates a q-Stirling variant at `(n, k)`.
///
/// Total on all integers: negative `k` gives zero; for the first-kind
/// variants a negative `n` is the empty product (value `[k == 0]`); for the
/// second-kind variants a negative `n` gives zero.
pub fn stirling(variant: StirlingVariant, n: i64, k: i64) -> QRat {
    if k < 0 {
        return QRat::zero();
    }
    if n < 0 {
        return if variant.is_first_kind() && k == 0 { QRat::one() } else { QRat::zero() };
    }
    if let Some(hit) = MEMO.lock().unwrap().get(&(variant, n, k)) {
        return hit.clone();
    }
    let (n32, k32) = (n as u32, k as u32);
    let value = match variant {
        StirlingVariant::S1Elementary => {
            elementary_row(n32).get(k as usize).cloned().map(QRat::from).unwrap_or_default()
        }
        StirlingVariant::S1Signed => u_falling(n32).coeff(k as usize),
        StirlingVariant::S2Explicit => explicit_second_kind(n32, k32),
        StirlingVariant::S2Series => series_second_kind(n32, k32).into(),
        StirlingVariant::S2Alternating => alternating_second_kind(n32, k32),
    };
    MEMO.lock().unwrap().insert((variant, n, k), value.clone());
    value
}

/// Elementary symmetric polynomials of `[1]_q, ..., [n]_q`, indexed by degree.
fn elementary_row(n: u32) -> Vec<QPoly> {
    let mut row = vec![QPoly::one()];
    for j in 1..=n {
        let qj = q_integer(j);
        let mut next = row.clone();
        next.push(QPoly::zero());
        for m in 1..next.len() {
            next[m] = &next[m] + &(&qj * &row[m - 1]);
        }
        row = next;
    }
    row
}

fn explicit_second_kind(n: u32, k: u32) -> QRat {
    let sum: QPoly = (0..=k).fold(QPoly::zero(), |acc, j| {
        let base = q_integer(k - j).pow(n);
        let term = &(&q_binomial(k, j as i64) * &base) * &q_pow_binom2(j as i64).numer().clone();
        if j % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        }
    });
    let scale = QRat::new(QPoly::one(), &q_factorial(k) * q_pow_binom2(k as i64).numer()).expect("nonzero");
    &QRat::from(sum) * &scale
}

/// `[z^k] prod_{j=1}^n sum_{m>=0} (-[j]_q z)^m`, truncated at degree `k`.
fn series_second_kind(n: u32, k: u32) -> QPoly {
    let k = k as usize;
    let mut series = vec![QPoly::zero(); k + 1];
    series[0] = QPoly::one();
    for j in 1..=n {
        let neg_qj = -&q_integer(j);
        // multiplying by 1/(1 + [j] z) is the recurrence s'_m = s_m - [j] s'_{m-1}
        for m in 1..=k {
            let prev = &neg_qj * &series[m - 1];
            series[m] = &series[m] + &prev;
        }
    }
    series.swap_remove(k)
}

fn alternating_second_kind(n: u32, k: u32) -> QRat {
    let sum: QPoly = (0..=k).fold(QPoly::zero(), |acc, j| {
        let c = binomial((k + n) as i64, (k - j) as i64);
        let sign = if (k - j).is_multiple_of(2) { 1 } else { -1 };
        let coeff = Rational::from_integer(c) * integer(sign);
        &acc + &q_binomial(j + n, j as i64).scale(&coeff)
    });
    let one_minus_q = QPoly::from_ints(&[1, -1]);
    QRat::new(sum, one_minus_q.pow(k)).expect("nonzero")
}

/// Connection coefficients `T(i, k)` with `U^i = sum_k T(i,k) u_falling(k)`,
/// found by back-substitution in the falling basis. Used as a brute-force
/// oracle for the second-kind families.
pub fn newton_connection(i: u32) -> Vec<QRat> {
    let mut residual = UPoly::monomial(QRat::one(), i as usize);
    let mut out = vec![QRat::zero(); i as usize + 1];
    for k in (0..=i).rev() {
        let c = residual.coeff(k as usize);
        if !c.is_zero() {
            residual = &residual - &u_falling(k).scale(&c);
        }
        out[k as usize] = c;
    }
    debug_assert!(residual.is_zero());
    out
}

/// How the arguments `(a, b)` of a printed `S(a, b)` feed a variant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArgumentRule {
    /// `S(a, b)`.
    Direct,
    /// `S(b, a)`.
    Swapped,
    /// `S(a + b, a)`.
    OrderFirst,
}

impl ArgumentRule {
    pub fn tag(self) -> &'static str {
        match self {
            ArgumentRule::Direct => "direct",
            ArgumentRule::Swapped => "swapped",
            ArgumentRule::OrderFirst => "order-first",
        }
    }
}

/// A variant together with an argument rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StirlingReading {
    pub variant: StirlingVariant,
    pub rule: ArgumentRule,
}

impl StirlingReading {
    pub fn direct(variant: StirlingVariant) -> Self {
        StirlingReading { variant, rule: ArgumentRule::Direct }
    }

    pub fn eval(&self, a: i64, b: i64) -> QRat {
        match self.rule {
            ArgumentRule::Direct => stirling(self.variant, a, b),
            ArgumentRule::Swapped => stirling(self.variant, b, a),
            ArgumentRule::OrderFirst => {
                if b < 0 {
                    QRat::zero()
                } else {
                    stirling(self.variant, a + b, a)
                }
            }
        }
    }
}

impl fmt::Display for StirlingReading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.rule.tag(), self.variant.tag())
    }
}

/// Reading of the ambiguous first- and second-kind symbols of a printed
/// identity. `None` means the identity does not use that symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct InterpretationBinding {
    pub s1: Option<StirlingReading>,
    pub s2: Option<StirlingReading>,
}

impl InterpretationBinding {
    pub const NONE: InterpretationBinding = InterpretationBinding { s1: None, s2: None };

    /// Value of the printed `S_1(a, b)`. Panics if the binding has no first-kind reading.
    pub fn s1(&self, a: i64, b: i64) -> QRat {
        self.s1.expect("binding without a first-kind reading").eval(a, b)
    }

    /// Value of the printed `S_2(a, b)`. Panics if the binding has no second-kind reading.
    pub fn s2(&self, a: i64, b: i64) -> QRat {
        self.s2.expect("binding without a second-kind reading").eval(a, b)
    }

    /// The seven second-kind readings: direct and swapped for each of the
    /// three variants, plus order-first on the explicit formula.
    pub fn second_kind_candidates() -> Vec<InterpretationBinding> {
        let mut out = Vec::new();
        for rule in [ArgumentRule::Direct, ArgumentRule::Swapped] {
            for variant in StirlingVariant::SECOND_KIND {
                out.push(InterpretationBinding { s1: None, s2: Some(StirlingReading { variant, rule }) });
            }
        }
        out.push(InterpretationBinding {
            s1: None,
            s2: Some(StirlingReading { variant: StirlingVariant::S2Explicit, rule: ArgumentRule::OrderFirst }),
        });
        out
    }

    pub fn first_kind_candidates() -> Vec<InterpretationBinding> {
        StirlingVariant::FIRST_KIND
            .into_iter()
            .map(|v| InterpretationBinding { s1: Some(StirlingReading::direct(v)), s2: None })
            .collect()
    }

    pub fn paired_candidates() -> Vec<InterpretationBinding> {
        let mut out = Vec::new();
        for s1 in Self::first_kind_candidates() {
            for s2 in Self::second_kind_candidates() {
                out.push(InterpretationBinding { s1: s1.s1, s2: s2.s2 });
            }
        }
        out
    }
}

impl fmt::Display for InterpretationBinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.s1, self.s2) {
            (None, None) => f.write_str("n/a"),
            (Some(a), None) => write!(f, "S1={a}"),
            (None, Some(b)) => write!(f, "S2={b}"),
            (Some(a), Some(b)) => write!(f, "S1={a};S2={b}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use StirlingVariant::*;

    #[test]
    fn signed_first_kind_row() {
        let row: Vec<QRat> = (0..=2).map(|k| stirling(S1Signed, 2, k)).collect();
        assert_eq!(row, vec![QRat::zero(), QRat::from_int(-1), QRat::one()]);
    }

    #[test]
    fn elementary_first_kind() {
        assert_eq!(stirling(S1Elementary, 2, 1), QPoly::from_ints(&[2, 1]).into());
        assert_eq!(stirling(S1Elementary, 2, 3), QRat::zero());
        assert_eq!(stirling(S1Elementary, -1, 0), QRat::one());
    }

    #[test]
    fn second_kind_small_values() {
        assert_eq!(stirling(S2Explicit, 2, 1), QRat::one());
        assert_eq!(stirling(S2Explicit, 2, 2), QRat::one());
        assert_eq!(stirling(S2Explicit, 0, 0), QRat::one());
        assert_eq!(stirling(S2Alternating, 1, 1), QRat::from_int(-1));
        assert_eq!(stirling(S2Series, 1, 1), QRat::from_int(-1));
    }

    #[test]
    fn connection_coefficients() {
        assert_eq!(newton_connection(0), vec![QRat::one()]);
        assert_eq!(newton_connection(1), vec![QRat::zero(), QRat::one()]);
        let t2 = newton_connection(2);
        assert_eq!((t2[1].clone(), t2[2].clone()), (QRat::one(), QRat::one()));
    }

    #[test]
    fn explicit_formula_is_the_connection_family() {
        for i in 0..=8u32 {
            let t = newton_connection(i);
            for k in 0..=i {
                assert_eq!(stirling(S2Explicit, i as i64, k as i64), t[k as usize], "i={i} k={k}");
            }
        }
    }

    #[test]
    fn series_agrees_with_alternating_sum() {
        for n in 0..=6 {
            for k in 0..=6 {
                assert_eq!(stirling(S2Series, n, k), stirling(S2Alternating, n, k), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn alternating_sum_is_signed_shifted_explicit_formula() {
        for n in 0..=6i64 {
            for k in 0..=6i64 {
                let mut bridged = stirling(S2Explicit, n + k, n);
                if k % 2 == 1 {
                    bridged = -bridged;
                }
                assert_eq!(stirling(S2Alternating, n, k), bridged, "n={n} k={k}");
            }
        }
    }

    #[test]
    fn signed_and_elementary_first_kind_relation() {
        // S1_SIGNED(n,k) = (-1)^{n-k} S1_ELEM(n-1, n-k)
        for n in 1..=7i64 {
            for k in 0..=n {
                let mut e = stirling(S1Elementary, n - 1, n - k);
                if (n - k) % 2 == 1 {
                    e = -e;
                }
                assert_eq!(stirling(S1Signed, n, k), e);
            }
        }
    }

    #[test]
    fn readings_and_labels() {
        let b = InterpretationBinding::second_kind_candidates();
        assert_eq!(b.len(), 7);
        assert_eq!(b[6].to_string(), "S2=order-first:S2_EXPLICIT");
        assert_eq!(b[6].s2(1, 1), stirling(S2Explicit, 2, 1));
        assert_eq!(InterpretationBinding::paired_candidates().len(), 14);
        assert_eq!(InterpretationBinding::NONE.to_string(), "n/a");
        assert_eq!(StirlingVariant::from_tag("s2_eq16"), Some(S2Alternating));
    }
}
