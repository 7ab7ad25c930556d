//! The q-Stirling families side by side, and the readings swept by the audit.

use qkernel::qcalc::{newton_connection, stirling, InterpretationBinding, StirlingVariant};

fn main() {
    for variant in StirlingVariant::ALL {
        println!("{}", variant.tag());
        for n in 0..=3i64 {
            let row: Vec<String> = (0..=n).map(|k| stirling(variant, n, k).to_string()).collect();
            println!("  n={n}: {}", row.join(" | "));
        }
    }

    // U^3 in the falling basis prod (U - [j]_q)
    let t = newton_connection(3);
    for (k, c) in t.iter().enumerate() {
        assert_eq!(c, &stirling(StirlingVariant::S2Explicit, 3, k as i64));
    }

    println!("second-kind readings:");
    for b in InterpretationBinding::second_kind_candidates() {
        println!("  {b:<32} S2(2,1) = {}", b.s2(2, 1));
    }
    println!("paired readings: {}", InterpretationBinding::paired_candidates().len());
}
