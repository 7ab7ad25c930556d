//! Every identity the audit knows, with its printed form, registered
//! corrections, parameter grid and the Stirling readings to sweep.

use std::fmt;
use std::ops::{Index, RangeInclusive};
use std::sync::LazyLock;

use num_traits::One;

use crate::bernstein::{bernstein_poly, weighted_sum};
use crate::carlitz::{beta, beta_inverse, beta_order, integral_qbinom, integrate_upoly, q_exp_integral};
use crate::exact::{binomial, factorial, integer, QPoly, QRat, Rational, UPoly};
use crate::qcalc::{
    q_binom_x, q_binomial, q_difference, q_difference_iterated, q_exp_expand, q_factorial, q_integer_signed, stirling,
    u_falling, x_falling, x_falling_at, InterpretationBinding, StirlingVariant,
};

/// Either side of a checked equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(QRat),
    Poly(UPoly),
}

impl From<QRat> for Value {
    fn from(v: QRat) -> Self {
        Value::Scalar(v)
    }
}

impl From<UPoly> for Value {
    fn from(v: UPoly) -> Self {
        Value::Poly(v)
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(v) => write!(f, "{v}"),
            Value::Poly(v) => write!(f, "{v}"),
        }
    }
}

/// One parameter tuple, in the identity's declared parameter order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    names: &'static [&'static str],
    values: Vec<i64>,
}

impl Params {
    pub fn iter(&self) -> impl Iterator<Item = (&'static str, i64)> + '_ {
        self.names.iter().copied().zip(self.values.iter().copied())
    }
}

impl Index<&str> for Params {
    type Output = i64;

    fn index(&self, name: &str) -> &i64 {
        let pos = self.names.iter().position(|n| *n == name).unwrap_or_else(|| panic!("no parameter `{name}`"));
        &self.values[pos]
    }
}

/// Which Stirling readings an identity is evaluated under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sweep {
    None,
    FirstKind,
    SecondKind,
    Paired,
}

impl Sweep {
    pub fn bindings(self) -> Vec<InterpretationBinding> {
        match self {
            Sweep::None => vec![InterpretationBinding::NONE],
            Sweep::FirstKind => InterpretationBinding::first_kind_candidates(),
            Sweep::SecondKind => InterpretationBinding::second_kind_candidates(),
            Sweep::Paired => InterpretationBinding::paired_candidates(),
        }
    }
}

type Check = Box<dyn Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> + Send + Sync>;
type Grid = Box<dyn Fn(i64) -> Vec<Vec<i64>> + Send + Sync>;

/// The printed form of an identity, or a registered correction of it.
pub struct Form {
    /// `None` for the printed form.
    pub correction: Option<&'static str>,
    check: Check,
}

impl Form {
    fn printed(check: impl Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> + Send + Sync + 'static) -> Self {
        Form { correction: None, check: Box::new(check) }
    }

    fn corrected(
        tag: &'static str,
        check: impl Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> + Send + Sync + 'static,
    ) -> Self {
        Form { correction: Some(tag), check: Box::new(check) }
    }

    /// The `(lhs, rhs)` pairs that must agree at one parameter tuple.
    pub fn evaluate(&self, binding: &InterpretationBinding, params: &Params) -> Vec<(Value, Value)> {
        (self.check)(binding, params)
    }
}

pub struct IdentitySpec {
    pub id: &'static str,
    pub summary: &'static str,
    pub params: &'static [&'static str],
    pub sweep: Sweep,
    pub forms: Vec<Form>,
    grid: Grid,
}

impl IdentitySpec {
    /// Parameter tuples in lexicographic order for the range bound `n_max`.
    pub fn grid(&self, n_max: i64) -> Vec<Params> {
        (self.grid)(n_max).into_iter().map(|values| Params { names: self.params, values }).collect()
    }
}

pub fn registry() -> &'static [IdentitySpec] {
    &REGISTRY
}

pub fn lookup(id: &str) -> Option<&'static IdentitySpec> {
    REGISTRY.iter().find(|s| s.id.eq_ignore_ascii_case(id))
}

fn one(outer: RangeInclusive<i64>) -> Vec<Vec<i64>> {
    outer.map(|a| vec![a]).collect()
}

fn two(outer: RangeInclusive<i64>, inner: impl Fn(i64) -> RangeInclusive<i64>) -> Vec<Vec<i64>> {
    outer.flat_map(|a| inner(a).map(move |b| vec![a, b])).collect()
}

fn qpow(e: i64) -> QRat {
    QRat::q_pow(e)
}

fn c2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn qint(n: i64) -> QRat {
    q_integer_signed(n)
}

fn qfact(n: i64) -> QRat {
    q_factorial(n as u32).into()
}

fn qbin(n: i64, k: i64) -> QRat {
    if n < 0 {
        return QRat::zero();
    }
    q_binomial(n as u32, k).into()
}

fn binom(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

fn fact(n: i64) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

fn sign(e: i64) -> Rational {
    if e.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn qm1(e: i64) -> QRat {
    QRat::from(QPoly::from_ints(&[-1, 1])).powi(e).expect("q - 1 is nonzero")
}

fn upow(m: i64) -> UPoly {
    UPoly::monomial(QRat::one(), m as usize)
}

fn ratio(a: &QRat, b: &QRat) -> QRat {
    a.checked_div(b).expect("nonzero divisor")
}

fn pair(a: impl Into<Value>, b: impl Into<Value>) -> (Value, Value) {
    (a.into(), b.into())
}

fn ws(i: i64, n: i64) -> UPoly {
    weighted_sum(i as u32, n as u32).expect("i <= n")
}

fn weighted_sum_beta_side(i: i64, n: i64) -> QRat {
    (i..=n)
        .flat_map(|k| (0..=n - k).map(move |l| (k, l)))
        .map(|(k, l)| {
            let c = binom(k, i) / binom(n, i) * binom(n - k, l) * binom(n, k) * sign(l);
            beta((l + k) as u32).scale(&c)
        })
        .sum()
}

/// `sum_k q^{C(k,2)} [k]! S2(k, i-k) (-1)^k / [k+1] * q^{e(k)}`.
fn integrated_newton_side(b: &InterpretationBinding, i: i64, exponent: fn(i64) -> i64) -> QRat {
    (0..=i)
        .map(|k| {
            let head = &(&qpow(c2(k)) * &qfact(k)) * &b.s2(k, i - k);
            let tail = ratio(&qpow(exponent(k)), &qint(k + 1)).scale(&sign(k));
            &head * &tail
        })
        .sum()
}

/// `lead * sum_k [k]! S2(k, i-k) (-1)^k / [k+1]`.
fn stripped_newton_side(b: &InterpretationBinding, i: i64, lead: QRat) -> QRat {
    let sum: QRat = (0..=i).map(|k| ratio(&(&qfact(k) * &b.s2(k, i - k)), &qint(k + 1)).scale(&sign(k))).sum();
    &lead * &sum
}

fn eq12(b2: fn(i64, i64) -> i64) -> impl Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> {
    move |_, p| {
        let (n, k) = (p["n"], p["k"]);
        let lhs = qbin(n + 1, k);
        let first = &qbin(n, k - 1) + &(&qpow(k) * &qbin(n, k));
        let second = &(&qpow(b2(n, k)) * &qbin(n, k - 1)) + &qbin(n, k);
        vec![pair(lhs.clone(), first), pair(lhs, second)]
    }
}

fn eq13(exponent: fn(i64) -> i64) -> impl Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> {
    move |_, p| {
        let n = p["n"];
        let rhs = ratio(&qpow(exponent(n)), &qint(n + 1)).scale(&sign(n));
        vec![pair(integral_qbinom(n as u32), rhs)]
    }
}

fn thm2(exponent: fn(i64) -> i64) -> impl Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> {
    move |b, p| {
        let (n, i) = (p["n"], p["i"]);
        vec![pair(weighted_sum_beta_side(i, n), integrated_newton_side(b, i, exponent))]
    }
}

fn eq15(lead: fn() -> QRat) -> impl Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> {
    move |b, p| {
        let i = p["i"];
        let lhs = integrate_upoly(&upow(i));
        let first: QRat =
            (0..=i).map(|k| &(&(&qpow(c2(k)) * &qfact(k)) * &b.s2(k, i - k)) * &integral_qbinom(k as u32)).sum();
        vec![pair(lhs.clone(), first), pair(lhs, stripped_newton_side(b, i, lead()))]
    }
}

fn cor3(lead: fn() -> QRat) -> impl Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> {
    move |b, p| {
        let i = p["i"];
        vec![pair(beta(i as u32), stripped_newton_side(b, i, lead()))]
    }
}

fn eq19(
    first_kind: fn(&InterpretationBinding, i64, i64) -> QRat,
) -> impl Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> {
    move |b, p| {
        let n = p["n"];
        let lhs = q_binom_x(n as u32).scale(&(&qpow(c2(n)) * &qfact(n)));
        let mid = x_falling(n as u32).scale(&qpow(c2(n)));
        let rhs: UPoly = (0..=n).map(|k| UPoly::monomial(first_kind(b, n, k), k as usize)).sum();
        vec![pair(lhs.clone(), mid), pair(lhs, rhs)]
    }
}

/// `sum_j (-1)^j C(k+n, top(k,n,j)) binom(j+n, n)_q`.
fn eq22_sum(n: i64, k: i64, top: fn(i64, i64, i64) -> i64) -> QRat {
    (0..=k).map(|j| qbin(j + n, n).scale(&(binom(k + n, top(k, n, j)) * sign(j)))).sum()
}

fn eq22(top: fn(i64, i64, i64) -> i64) -> impl Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> {
    move |_, p| {
        // n is the order, k the index
        let (n, k) = (p["n"], p["k"]);
        let lhs = beta_inverse(k as u32, n as u32);
        let scale = qm1(-k).scale(&sign(k));
        let line1: QRat = (0..=k)
            .map(|j| {
                let qs: QRat = (j + 1..=j + n).map(qint).product();
                let ints: Rational = (j + 1..=j + n).map(integer).product();
                qs.scale(&(binom(k, j) * sign(j) / ints))
            })
            .sum();
        let line1 = &line1 * &scale;
        let fact_ratio = qfact(n).scale(&fact(n).recip());
        let line2: QRat = (0..=k)
            .map(|j| {
                let c = binom(k + n, top(k, n, j)) / binom(k + n, n) * sign(j);
                &qbin(j + n, n).scale(&c) * &fact_ratio
            })
            .sum();
        let line2 = &line2 * &scale;
        let line3 = &(&fact_ratio.scale(&binom(k + n, n).recip()) * &scale) * &eq22_sum(n, k, top);
        vec![pair(lhs.clone(), line1), pair(lhs.clone(), line2), pair(lhs, line3)]
    }
}

fn eq23(flip: bool) -> impl Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> {
    move |b, p| {
        let (n, k) = (p["n"], p["k"]);
        let mut c = fact(n) * binom(k + n, n);
        if flip {
            c *= sign(k);
        }
        let lhs = ratio(&beta_inverse(k as u32, n as u32).scale(&c), &qfact(n));
        vec![pair(lhs, b.s2(n, k))]
    }
}

fn thm7(flip: bool) -> impl Fn(&InterpretationBinding, &Params) -> Vec<(Value, Value)> {
    move |_, p| {
        let (n, i) = (p["n"], p["i"]);
        let rhs: UPoly = (0..=i)
            .map(|k| {
                let mut c = fact(k) * binom(i, k);
                if flip {
                    c *= sign(i - k);
                }
                let coeff = (&qpow(c2(k)) * &beta_inverse((i - k) as u32, k as u32)).scale(&c);
                q_binom_x(k as u32).scale(&coeff)
            })
            .sum();
        vec![pair(ws(i, n), rhs)]
    }
}

static REGISTRY: LazyLock<Vec<IdentitySpec>> = LazyLock::new(|| {
    vec![
        IdentitySpec {
            id: "EQ7",
            summary: "q-difference operator product equals its binomial expansion, on f = [x]^m",
            params: &["n", "m"],
            sweep: Sweep::None,
            grid: Box::new(|m| two(0..=m, |_| 0..=m)),
            forms: vec![Form::printed(|_, p| {
                let (n, m) = (p["n"], p["m"]);
                let f: Vec<QRat> = (0..=n).map(|x| qint(x).powi(m).expect("m >= 0")).collect();
                vec![pair(q_difference_iterated(&f, n as u32).unwrap(), q_difference(&f, n as u32).unwrap())]
            })],
        },
        IdentitySpec {
            id: "NEWTON",
            summary: "q-Newton series reproduces [x]^m",
            params: &["m"],
            sweep: Sweep::None,
            grid: Box::new(|m| one(0..=m)),
            forms: vec![Form::printed(|_, p| {
                let m = p["m"];
                let f: Vec<QRat> = (0..=m).map(|x| qint(x).powi(m).expect("m >= 0")).collect();
                let series: UPoly =
                    (0..=m).map(|n| q_binom_x(n as u32).scale(&q_difference(&f, n as u32).unwrap())).sum();
                vec![pair(upow(m), series)]
            })],
        },
        IdentitySpec {
            id: "S2DELTA",
            summary: "second-kind numbers as normalized q-differences of [x]^n at 0",
            params: &["n", "k"],
            sweep: Sweep::SecondKind,
            grid: Box::new(|m| two(0..=m, |n| 0..=n)),
            forms: vec![Form::printed(|b, p| {
                let (n, k) = (p["n"], p["k"]);
                let norm = &qpow(-c2(k)) * &qfact(k).recip().unwrap();
                let explicit: QRat = (0..=k)
                    .map(|j| &(&qpow(c2(j)) * &qbin(k, j)) * &qint(k - j).powi(n).unwrap())
                    .enumerate()
                    .map(|(j, t)| t.scale(&sign(j as i64)))
                    .sum();
                let explicit = &norm * &explicit;
                let f: Vec<QRat> = (0..=k).map(|x| qint(x).powi(n).unwrap()).collect();
                let delta = &norm * &q_difference(&f, k as u32).unwrap();
                vec![pair(b.s2(n, k), explicit.clone()), pair(explicit, delta)]
            })],
        },
        IdentitySpec {
            id: "EQ10",
            summary: "q-integral of a Bernstein basis element, termwise in powers of [x]",
            params: &["n", "k"],
            sweep: Sweep::None,
            grid: Box::new(|m| two(0..=m, |n| 0..=n)),
            forms: vec![Form::printed(|_, p| {
                let (n, k) = (p["n"], p["k"]);
                let lhs = integrate_upoly(&bernstein_poly(k as u32, n as u32).unwrap());
                let rhs: QRat = (0..=n - k)
                    .map(|l| integrate_upoly(&upow(l + k)).scale(&(binom(n - k, l) * binom(n, k) * sign(l))))
                    .sum();
                vec![pair(lhs, rhs)]
            })],
        },
        IdentitySpec {
            id: "PROP1",
            summary: "q-integral of a Bernstein basis element as a beta sum",
            params: &["n", "k"],
            sweep: Sweep::None,
            grid: Box::new(|m| two(0..=m, |n| 0..=n)),
            forms: vec![Form::printed(|_, p| {
                let (n, k) = (p["n"], p["k"]);
                let lhs = integrate_upoly(&bernstein_poly(k as u32, n as u32).unwrap());
                let rhs: QRat =
                    (0..=n - k).map(|l| beta((l + k) as u32).scale(&(binom(n - k, l) * binom(n, k) * sign(l)))).sum();
                vec![pair(lhs, rhs)]
            })],
        },
        IdentitySpec {
            id: "EQ11",
            summary: "weighted Bernstein sum in the q-binomial basis",
            params: &["n", "i"],
            sweep: Sweep::SecondKind,
            grid: Box::new(|m| two(1..=m, |n| 1..=n)),
            forms: vec![Form::printed(|b, p| {
                let (n, i) = (p["n"], p["i"]);
                let rhs: UPoly =
                    (0..=i).map(|k| q_binom_x(k as u32).scale(&(&(&qpow(c2(k)) * &qfact(k)) * &b.s2(k, i - k)))).sum();
                vec![pair(ws(i, n), rhs)]
            })],
        },
        IdentitySpec {
            id: "EQ12",
            summary: "Pascal recurrences for Gaussian binomials",
            params: &["n", "k"],
            sweep: Sweep::None,
            grid: Box::new(|m| two(0..=m, |n| 0..=n + 1)),
            forms: vec![
                Form::printed(eq12(|n, k| n - k)),
                Form::corrected("second recurrence exponent n+1-k", eq12(|n, k| n + 1 - k)),
            ],
        },
        IdentitySpec {
            id: "EQ13",
            summary: "q-integral of binom(x,n)_q",
            params: &["n"],
            sweep: Sweep::None,
            grid: Box::new(|m| one(0..=m)),
            forms: vec![
                Form::printed(eq13(|n| n + 1 - c2(n + 1))),
                Form::corrected("exponent n-binom(n+1,2)", eq13(|n| n - c2(n + 1))),
            ],
        },
        IdentitySpec {
            id: "THM2",
            summary: "integrated weighted Bernstein sum against the integrated q-binomial expansion",
            params: &["n", "i"],
            sweep: Sweep::SecondKind,
            grid: Box::new(|m| two(1..=m, |n| 1..=n)),
            forms: vec![
                Form::printed(thm2(|k| k + 1 - c2(k + 1))),
                Form::corrected("exponent k-binom(k+1,2)", thm2(|k| k - c2(k + 1))),
            ],
        },
        IdentitySpec {
            id: "EQ14",
            summary: "weighted Bernstein sum equals [x]^i",
            params: &["n", "i"],
            sweep: Sweep::None,
            grid: Box::new(|m| two(1..=m, |n| 1..=n)),
            forms: vec![Form::printed(|_, p| vec![pair(ws(p["i"], p["n"]), upow(p["i"]))])],
        },
        IdentitySpec {
            id: "EQ15",
            summary: "q-integral of [x]^i through the q-binomial expansion",
            params: &["i"],
            sweep: Sweep::SecondKind,
            grid: Box::new(|m| one(1..=m)),
            forms: vec![Form::printed(eq15(QRat::q)), Form::corrected("leading factor q removed", eq15(QRat::one))],
        },
        IdentitySpec {
            id: "COR3",
            summary: "beta_i as a second-kind sum",
            params: &["i"],
            sweep: Sweep::SecondKind,
            grid: Box::new(|m| one(1..=m)),
            forms: vec![Form::printed(cor3(QRat::q)), Form::corrected("leading factor q removed", cor3(QRat::one))],
        },
        IdentitySpec {
            id: "EQ16~EQ9",
            summary: "series coefficients of prod 1/(1+[j]z) against the alternating closed form",
            params: &["n", "k"],
            sweep: Sweep::None,
            grid: Box::new(|m| two(0..=m, |_| 0..=m)),
            forms: vec![Form::printed(|_, p| {
                let (n, k) = (p["n"], p["k"]);
                vec![pair(stirling(StirlingVariant::S2Series, n, k), stirling(StirlingVariant::S2Alternating, n, k))]
            })],
        },
        IdentitySpec {
            id: "EQ16B",
            summary: "Gaussian binomial from second-kind numbers",
            params: &["n", "k"],
            sweep: Sweep::SecondKind,
            grid: Box::new(|m| two(0..=m, |n| 0..=n)),
            forms: vec![Form::printed(|b, p| {
                let (n, k) = (p["n"], p["k"]);
                let rhs: QRat = (0..=n).map(|j| (&qm1(j - k) * &b.s2(k, j - k)).scale(&binom(n, j))).sum();
                vec![pair(qbin(n, k), rhs)]
            })],
        },
        IdentitySpec {
            id: "EQ17",
            summary: "q^{nx} in the falling q-factorial basis and regrouped in powers of [x]",
            params: &["n", "x"],
            sweep: Sweep::FirstKind,
            grid: Box::new(|m| two(0..=m, |_| 0..=m)),
            forms: vec![Form::printed(|b, p| {
                let (n, x) = (p["n"], p["x"]);
                let lhs = qpow(n * x);
                let first: QRat =
                    (0..=n).map(|k| &(&(&qm1(k) * &qpow(c2(k))) * &qbin(n, k)) * &x_falling_at(x, k as u32)).sum();
                let second: QRat = (0..=n)
                    .map(|m| {
                        let c: QRat = (m..=n).map(|k| &(&qm1(k) * &qbin(n, k)) * &b.s1(k, m)).sum();
                        &c * &qint(x).powi(m).unwrap()
                    })
                    .sum();
                vec![pair(lhs.clone(), first), pair(lhs, second)]
            })],
        },
        IdentitySpec {
            id: "EQ18",
            summary: "q^{nx} as a binomial sum in (q-1)[x]",
            params: &["n", "x"],
            sweep: Sweep::None,
            grid: Box::new(|m| two(0..=m, |_| 0..=m)),
            forms: vec![Form::printed(|_, p| {
                let (n, x) = (p["n"], p["x"]);
                vec![pair(qpow(n * x), q_exp_expand(n as u32).at_integer(x as u32))]
            })],
        },
        IdentitySpec {
            id: "EQ17~EQ18",
            summary: "ordinary binomial from Gaussian binomials and first-kind numbers",
            params: &["n", "m"],
            sweep: Sweep::FirstKind,
            grid: Box::new(|m| two(0..=m, |n| 0..=n)),
            forms: vec![Form::printed(|b, p| {
                let (n, m) = (p["n"], p["m"]);
                let rhs: QRat = (m..=n).map(|k| &(&qm1(k - m) * &qbin(n, k)) * &b.s1(k, m)).sum();
                vec![pair(QRat::from_rational(binom(n, m)), rhs)]
            })],
        },
        IdentitySpec {
            id: "PROP4",
            summary: "Bernstein basis element rebuilt from Gaussian binomials and first-kind numbers",
            params: &["n", "k"],
            sweep: Sweep::FirstKind,
            grid: Box::new(|m| two(0..=m, |n| 0..=n)),
            forms: vec![Form::printed(|b, p| {
                let (n, k) = (p["n"], p["k"]);
                let shape = &upow(k) * &UPoly::one_minus_u().pow((n - k) as u32);
                let lhs = bernstein_poly(k as u32, n as u32).unwrap();
                let mid = shape.scale(&QRat::from_rational(binom(n, k)));
                let c: QRat = (k..=n).map(|m| &(&qm1(m - k) * &qbin(n, m)) * &b.s1(m, k)).sum();
                vec![pair(lhs.clone(), mid), pair(lhs, shape.scale(&c))]
            })],
        },
        IdentitySpec {
            id: "EQ19~EQ8",
            summary: "falling q-factorial expanded with first-kind numbers",
            params: &["n"],
            sweep: Sweep::FirstKind,
            grid: Box::new(|m| one(0..=m)),
            forms: vec![
                Form::printed(eq19(|b, n, k| b.s1(n, k))),
                Form::corrected(
                    "S1(n,k) read as (-1)^(n-k) S1(n-1,n-k)",
                    eq19(|b, n, k| b.s1(n - 1, n - k).scale(&sign(n - k))),
                ),
            ],
        },
        IdentitySpec {
            id: "THM5",
            summary: "weighted Bernstein sum through first- and second-kind numbers",
            params: &["n", "i"],
            sweep: Sweep::Paired,
            grid: Box::new(|m| two(1..=m, |n| 1..=n)),
            forms: vec![Form::printed(|b, p| {
                let (n, i) = (p["n"], p["i"]);
                let rhs: UPoly = (0..=i)
                    .flat_map(|k| (0..=k).map(move |l| (k, l)))
                    .map(|(k, l)| UPoly::monomial(&b.s1(k, l) * &b.s2(k, i - k), l as usize))
                    .sum();
                vec![pair(ws(i, n), rhs)]
            })],
        },
        IdentitySpec {
            id: "COR6",
            summary: "beta_i from lower betas through first- and second-kind numbers",
            params: &["i"],
            sweep: Sweep::Paired,
            grid: Box::new(|m| one(0..=m)),
            forms: vec![Form::printed(|b, p| {
                let i = p["i"];
                let rhs: QRat = (0..=i)
                    .flat_map(|k| (0..=k).map(move |l| (k, l)))
                    .map(|(k, l)| &(&b.s1(k, l) * &b.s2(k, i - k)) * &beta(l as u32))
                    .sum();
                vec![pair(beta(i as u32), rhs)]
            })],
        },
        IdentitySpec {
            id: "EQ20",
            summary: "order-k q-Bernoulli polynomials: k-fold integral against the closed form",
            params: &["n", "k", "x"],
            sweep: Sweep::None,
            grid: Box::new(|m| {
                (0..=m).flat_map(|n| (1..=m).flat_map(move |k| (0..=2).map(move |x| vec![n, k, x]))).collect()
            }),
            forms: vec![Form::printed(|_, p| {
                let (n, k, x) = (p["n"], p["k"], p["x"]);
                let sum: QRat = (0..=n)
                    .map(|i| {
                        let fold: QRat = (1..=k).map(|l| q_exp_integral((k - l + i) as u32)).product();
                        &fold.scale(&(binom(n, i) * sign(i))) * &qpow(i * x)
                    })
                    .sum();
                let lhs = &sum * &qm1(-n).scale(&sign(n));
                vec![pair(lhs, beta_order(n as u32, k as u32, x as u32).unwrap())]
            })],
        },
        IdentitySpec {
            id: "EQ22",
            summary: "inverse q-Bernoulli numbers: three closed forms (n is the order, k the index)",
            params: &["n", "k"],
            sweep: Sweep::None,
            grid: Box::new(|m| two(0..=m, |_| 0..=m)),
            forms: vec![
                Form::printed(eq22(|_, n, j| n - j)),
                Form::corrected("binom(k+n,k-j) in place of binom(k+n,n-j)", eq22(|k, _, j| k - j)),
            ],
        },
        IdentitySpec {
            id: "EQ23",
            summary: "inverse q-Bernoulli numbers against second-kind numbers (n is the order, k the index)",
            params: &["n", "k"],
            sweep: Sweep::SecondKind,
            grid: Box::new(|m| two(0..=m, |_| 0..=m)),
            forms: vec![Form::printed(eq23(false)), Form::corrected("sign (-1)^k on the left side", eq23(true))],
        },
        IdentitySpec {
            id: "THM7",
            summary: "weighted Bernstein sum through inverse q-Bernoulli numbers",
            params: &["n", "i"],
            sweep: Sweep::None,
            grid: Box::new(|m| two(0..=m, |n| 0..=n)),
            forms: vec![Form::printed(thm7(false)), Form::corrected("sign (-1)^(i-k) in each term", thm7(true))],
        },
        IdentitySpec {
            id: "FINAL",
            summary: "weighted Bernstein sum through first-kind numbers and inverse q-Bernoulli numbers",
            params: &["n", "i"],
            sweep: Sweep::FirstKind,
            grid: Box::new(|m| two(0..=m, |n| 0..=n)),
            forms: vec![Form::printed(|b, p| {
                let (n, i) = (p["n"], p["i"]);
                let expand = |k: i64| -> UPoly {
                    (0..=k).map(|j| UPoly::monomial(b.s1(k - 1, j).scale(&sign(j)), (k - j) as usize)).sum()
                };
                let inv_fact = qfact(i).recip().unwrap();
                let lemma_lhs = q_binom_x(i as u32).scale(&qpow(c2(i)));
                let lemma_mid = u_falling(i as u32).scale(&inv_fact);
                let lemma_rhs = expand(i).scale(&inv_fact);
                let rhs: UPoly = (0..=i)
                    .map(|k| {
                        let c = fact(k) * binom(i, k);
                        let coeff = ratio(&beta_inverse((i - k) as u32, k as u32).scale(&c), &qfact(k));
                        expand(k).scale(&coeff)
                    })
                    .sum();
                vec![pair(lemma_lhs, lemma_mid.clone()), pair(lemma_mid, lemma_rhs), pair(ws(i, n), rhs)]
            })],
        },
    ]
});
