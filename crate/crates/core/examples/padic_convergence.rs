//! Riemann sums of the p-adic q-integral converging to `beta_n(q)` at
//! `p = 3`, `q = 4`.

use qkernel::carlitz::beta;
use qkernel::exact::rational;
use qkernel::padic::{convergence_probe, riemann_sum, PAdic, QSeed};

fn main() -> qkernel::Result<()> {
    let seed = QSeed::new(3, 4)?;
    for moment in 0..=3 {
        let rows = convergence_probe(moment, &seed, 5, 12)?;
        let cols: Vec<String> = rows.iter().map(|r| r.valuation.to_string()).collect();
        println!("n={moment}  beta={}  v_3(S_N - beta): {}", beta(moment).eval(&rational(4, 1))?, cols.join(" "));
    }

    let s = riemann_sum(2, &seed, 3, 8)?;
    println!("S_3 for n=2: {s}");

    let a = PAdic::from_rational(5, &rational(7, 10), 6)?;
    let b = PAdic::from_rational(5, &rational(3, 25), 6)?;
    println!("7/10 * 3/25 in Q_5: {}", a.mul(&b)?);
    Ok(())
}
