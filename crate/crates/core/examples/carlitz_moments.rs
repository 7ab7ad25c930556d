//! Carlitz q-Bernoulli numbers, their classical limits and the higher-order
//! and inverse families.

use qkernel::carlitz::{beta, beta_inverse, beta_order, integral_qbinom};
use qkernel::exact::integer;

fn main() -> qkernel::Result<()> {
    for n in 0..=6 {
        let b = beta(n);
        println!("beta_{n} = {b}");
        println!("    q->1: {}   q=4: {}", b.limit_q_to_one()?, b.eval(&integer(4))?);
    }

    println!("beta^(2)_2 = {}", beta_order(2, 2, 0)?);
    println!("beta^(-1)_1 = {}", beta_inverse(1, 1));
    for n in 0..=3 {
        println!("I(binom(x,{n})_q) = {}", integral_qbinom(n));
    }
    Ok(())
}
