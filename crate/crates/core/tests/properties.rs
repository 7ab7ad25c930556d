use num_traits::Zero;
use proptest::prelude::*;

use qkernel::bernstein::{from_bernstein_coeffs, to_bernstein_coeffs};
use qkernel::carlitz::integrate_upoly;
use qkernel::exact::rational;
use qkernel::padic::{rational_valuation, PAdic, Valuation};
use qkernel::qcalc::{q_difference, q_difference_iterated};
use qkernel::{QPoly, QRat, Rational, UPoly};

fn qpoly() -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-4i64..=4, 0..4).prop_map(|c| QPoly::from_ints(&c))
}

fn nonzero_qpoly() -> impl Strategy<Value = QPoly> {
    qpoly().prop_filter("nonzero", |p| !p.is_zero())
}

fn qrat() -> impl Strategy<Value = QRat> {
    (qpoly(), nonzero_qpoly()).prop_map(|(n, d)| QRat::new(n, d).unwrap())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=40).prop_map(|(n, d)| rational(n, d))
}

fn upoly(max_len: usize) -> impl Strategy<Value = UPoly> {
    prop::collection::vec(qrat(), 0..max_len).prop_map(UPoly::from_coeffs)
}

/// `1 - U` with the symbol read as the original variable.
fn reflect(f: &UPoly) -> UPoly {
    f.compose(&UPoly::one_minus_u())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_form_ignores_common_factors(n in qpoly(), d in nonzero_qpoly(), c in nonzero_qpoly()) {
        let plain = QRat::new(n.clone(), d.clone()).unwrap();
        let padded = QRat::new(&n * &c, &d * &c).unwrap();
        prop_assert_eq!(&plain, &padded);
        prop_assert_eq!(plain.to_canonical_string(), padded.to_canonical_string());
        if !plain.is_zero() {
            prop_assert!(plain.denom().is_monic());
        }
    }

    #[test]
    fn display_round_trips(r in qrat()) {
        prop_assert_eq!(r.to_string().parse::<QRat>().unwrap(), r.clone());
        prop_assert_eq!(r.to_canonical_string().parse::<QRat>().unwrap(), r);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in qrat(), b in qrat(), q0 in small_rational()) {
        let (Ok(ea), Ok(eb)) = (a.eval(&q0), b.eval(&q0)) else { return Ok(()) };
        prop_assert_eq!((&a + &b).eval(&q0).unwrap(), &ea + &eb);
        prop_assert_eq!((&a * &b).eval(&q0).unwrap(), &ea * &eb);
    }

    #[test]
    fn field_laws(a in qrat(), b in qrat(), c in qrat()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a - &a, QRat::zero());
        if !b.is_zero() {
            prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a);
        }
    }

    #[test]
    fn bernstein_round_trip(f in upoly(6), extra in 0u32..3) {
        let n = f.degree().unwrap_or(0) as u32 + extra;
        let power: Vec<QRat> = (0..=n as usize).map(|d| f.coeff(d)).collect();
        let c = to_bernstein_coeffs(&power, n).unwrap();
        prop_assert_eq!(from_bernstein_coeffs(&c, n).unwrap(), power);
    }

    #[test]
    fn bernstein_reflection_reverses_coefficients(f in upoly(5)) {
        let n = f.degree().unwrap_or(0) as u32;
        let coeffs = |g: &UPoly| -> Vec<QRat> {
            let power: Vec<QRat> = (0..=n as usize).map(|d| g.coeff(d)).collect();
            to_bernstein_coeffs(&power, n).unwrap()
        };
        let mut reversed = coeffs(&f);
        reversed.reverse();
        prop_assert_eq!(coeffs(&reflect(&f)), reversed);
    }

    #[test]
    fn integral_is_linear(f in upoly(5), g in upoly(5), a in qrat()) {
        let combined = &f.scale(&a) + &g;
        prop_assert_eq!(integrate_upoly(&combined), &(&a * &integrate_upoly(&f)) + &integrate_upoly(&g));
    }

    #[test]
    fn q_difference_forms_agree(f in prop::collection::vec(qrat(), 1..6)) {
        let n = f.len() as u32 - 1;
        prop_assert_eq!(q_difference(&f, n).unwrap(), q_difference_iterated(&f, n).unwrap());
    }

    #[test]
    fn padic_arithmetic_matches_rationals(a in small_rational(), b in small_rational(), p in prop::sample::select(vec![3u64, 5, 7])) {
        let k = 10;
        let (pa, pb) = (PAdic::from_rational(p, &a, k).unwrap(), PAdic::from_rational(p, &b, k).unwrap());
        prop_assert!(pa.add(&pb).unwrap().agrees_with(&(&a + &b)));
        prop_assert!(pa.sub(&pb).unwrap().agrees_with(&(&a - &b)));
        prop_assert!(pa.mul(&pb).unwrap().agrees_with(&(&a * &b)));
        prop_assert_eq!(pa.add(&pb).unwrap(), pb.add(&pa).unwrap());
        if !b.is_zero() {
            prop_assert!(pa.div(&pb).unwrap().agrees_with(&(&a / &b)));
        }
    }

    #[test]
    fn valuation_is_additive(a in small_rational(), b in small_rational()) {
        prop_assume!(!a.is_zero() && !b.is_zero());
        let p = 3;
        let (pa, pb) = (PAdic::from_rational(p, &a, 8).unwrap(), PAdic::from_rational(p, &b, 8).unwrap());
        let (Valuation::Exactly(va), Valuation::Exactly(vb)) = (pa.valuation(), pb.valuation()) else {
            return Err(TestCaseError::fail("nonzero rationals have exact valuations"));
        };
        prop_assert_eq!(pa.mul(&pb).unwrap().valuation(), Valuation::Exactly(va + vb));
        prop_assert_eq!(rational_valuation(p, &(&a * &b)), Valuation::Exactly(va + vb));
    }
}

/// `[x]_q + [1-x]_{1/q} = 1` with both sides written in `t = q^x`.
#[test]
fn kim_factors_sum_to_one() {
    let inv = QRat::new(QPoly::one(), QPoly::from_ints(&[1, -1])).unwrap();
    let x = UPoly::from_coeffs(vec![inv.clone(), -&inv]);
    let y = UPoly::from_coeffs(vec![&QRat::q() * &(-&inv), inv]);
    assert_eq!(&x + &y, UPoly::one());
}
