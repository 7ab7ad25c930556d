//! Kim's q-Bernstein basis in the symbol `U = [x]_q`: conversion matrices,
//! change of basis and the operator on sampled values.

use qkernel::bernstein::{
    basis_matrix, bernstein_poly, operator_eval, to_bernstein_coeffs, weighted_sum, OperatorMode, OperatorValue,
};
use qkernel::cli::Table;
use qkernel::exact::{fmt_rational, rational};
use qkernel::{QRat, UPoly};

fn main() -> qkernel::Result<()> {
    for n in [2, 3] {
        let m = basis_matrix(n);
        let rows = m.rows().iter().map(|r| r.iter().map(fmt_rational).collect()).collect();
        print!("{}", Table::matrix(rows).to_latex());
    }

    let f = UPoly::from_coeffs(vec![QRat::one(), QRat::q(), QRat::from_int(-2)]);
    let power: Vec<QRat> = f.coeffs().to_vec();
    let c = to_bernstein_coeffs(&power, 2)?;
    println!("{f} in the degree-2 basis: {}", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
    let rebuilt: UPoly = c
        .iter()
        .enumerate()
        .map(|(k, ck)| bernstein_poly(k as u32, 2).map(|b| b.scale(ck)))
        .sum::<qkernel::Result<_>>()?;
    assert_eq!(rebuilt, f);

    assert_eq!(weighted_sum(2, 5)?, UPoly::u().pow(2));

    let samples = [rational(0, 1), rational(1, 4), rational(1, 1)];
    let q = rational(1, 3);
    let u = rational(3, 5);
    if let OperatorValue::Exact(v) = operator_eval(&samples, &rational(1, 2), &q, &OperatorMode::Exact { u: Some(u) })?
    {
        println!("operator at [x]_q = 3/5: {}", fmt_rational(&v));
    }
    let real = operator_eval(&samples, &rational(1, 2), &q, &OperatorMode::Real)?;
    println!("operator at x = 1/2: {:.12}", real.as_f64());
    Ok(())
}
