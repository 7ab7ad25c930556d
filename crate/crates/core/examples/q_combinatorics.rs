//! Gaussian binomials, q-differences and the Newton expansion of a polynomial
//! in `U = [x]_q`.

use qkernel::qcalc::{q_binom_x, q_binomial, q_difference};
use qkernel::{QRat, UPoly};

fn main() -> qkernel::Result<()> {
    for n in 0..=4u32 {
        let row: Vec<String> = (0..=n as i64).map(|k| q_binomial(n, k).to_string()).collect();
        println!("n={n}: {}", row.join(" | "));
    }

    let f = &UPoly::u().pow(3) + &UPoly::constant(QRat::q());
    let samples: Vec<QRat> = (0..=3).map(|m| f.at_integer(m)).collect();
    let mut newton = UPoly::zero();
    for n in 0..=3 {
        let d = q_difference(&samples, n)?;
        println!("Delta_q^{n} f(0) = {d}");
        newton = &newton + &q_binom_x(n).scale(&d);
    }
    println!("f      = {f}");
    println!("series = {newton}");
    assert_eq!(newton, f);
    Ok(())
}
