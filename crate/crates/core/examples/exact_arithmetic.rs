//! Rational functions in q: canonical forms, evaluation and the q -> 1 limit.

use qkernel::exact::rational;
use qkernel::qcalc::{q_factorial, q_integer};
use qkernel::{QPoly, QRat};

fn main() -> qkernel::Result<()> {
    let num = &QPoly::from_ints(&[1, 0, -1]) * &QPoly::from_ints(&[2, 1]);
    let den = &QPoly::from_ints(&[1, -1]) * &QPoly::from_ints(&[0, 0, 3]);
    let r = QRat::new(num, den)?;
    println!("reduced:    {r}");
    println!("canonical:  {}", r.to_canonical_string());
    println!("at q = 1/2: {}", r.eval(&rational(1, 2))?);
    println!("q -> 1:     {}", r.limit_q_to_one()?);

    let ratio = QRat::new(q_factorial(5), QPoly::from_ints(&[1, 1]))?;
    println!("[5]!/[2] = {ratio}");

    let back: QRat = r.to_canonical_string().parse()?;
    assert_eq!(back, r);

    // [n]_q / n tends to 1 at q = 1
    for n in 1..=4 {
        let x = QRat::new(q_integer(n), QPoly::from_int(n as i64))?;
        println!("[{n}]_q/{n} -> {}", x.limit_q_to_one()?);
    }
    Ok(())
}
