//! Audits a few identities under every Stirling reading and prints the report.
//!
//! `cargo run --example identity_audit -- EQ13 THM7` picks the identities.

use qkernel::audit::{run_audit, AuditConfig};
use qkernel::cli::Table;

fn main() -> qkernel::Result<()> {
    let mut identities: Vec<String> = std::env::args().skip(1).collect();
    if identities.is_empty() {
        identities = vec!["EQ13".into(), "EQ23".into(), "FINAL".into()];
    }
    let report = run_audit(&AuditConfig { identities, ..Default::default() })?;
    let mut t = Table::new(&["id", "binding", "status", "counterexample", "note"]);
    for v in &report.verdicts {
        let ce = v.counterexample.as_ref().map_or(String::new(), |c| {
            let at: Vec<String> = c.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            format!("{}: {} vs {}", at.join(" "), c.lhs, c.rhs)
        });
        t.push(vec![v.id.clone(), v.binding.clone(), v.status.to_string(), ce, v.note.clone()]);
    }
    print!("{}", t.to_text());
    let s = &report.summary;
    println!("holds {}  fails {}  holds under correction {}", s.holds, s.fails, s.holds_under_correction);
    Ok(())
}
