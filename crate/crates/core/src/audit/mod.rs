//! Identity audit: evaluates every registered identity under every
//! Stirling reading and reports which forms hold.

mod registry;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use registry::{lookup, registry, Form, IdentitySpec, Params, Sweep, Value};

use crate::qcalc::InterpretationBinding;
use crate::{Error, Result};

pub const DEFAULT_N_MAX: u32 = 6;
pub const DEFAULT_RANGE_LIMIT: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Holds,
    Fails,
    HoldsUnderCorrection,
}

impl Status {
    pub fn tag(self) -> &'static str {
        match self {
            Status::Holds => "HOLDS",
            Status::Fails => "FAILS",
            Status::HoldsUnderCorrection => "HOLDS_UNDER_CORRECTION",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: BTreeMap<String, i64>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub binding: String,
    pub status: Status,
    pub counterexample: Option<Counterexample>,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditConfig {
    /// Identity ids to run; empty means all.
    pub identities: Vec<String>,
    pub n_max: u32,
    pub range_limit: u32,
    /// Binding labels to keep; empty means all.
    pub bindings: Vec<String>,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            identities: Vec::new(),
            n_max: DEFAULT_N_MAX,
            range_limit: DEFAULT_RANGE_LIMIT,
            bindings: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    pub holds_under_correction: usize,
    pub total: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub version: String,
    pub config: AuditConfig,
    pub verdicts: Vec<Verdict>,
    pub summary: Summary,
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("audit report: {e}")))
    }

    /// Verdicts present in one report but not the other, as `(ours, theirs)`.
    pub fn drift<'a>(&'a self, other: &'a AuditReport) -> Vec<(Option<&'a Verdict>, Option<&'a Verdict>)> {
        let key = |v: &Verdict| (v.id.clone(), v.binding.clone(), v.note.clone());
        let ours: BTreeMap<_, _> = self.verdicts.iter().map(|v| (key(v), v)).collect();
        let theirs: BTreeMap<_, _> = other.verdicts.iter().map(|v| (key(v), v)).collect();
        let mut keys: Vec<_> = ours.keys().chain(theirs.keys()).cloned().collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .filter_map(|k| {
                let (a, b) = (ours.get(&k).copied(), theirs.get(&k).copied());
                (a != b).then_some((a, b))
            })
            .collect()
    }
}

/// The identity specs selected by `config`, validated.
fn select(config: &AuditConfig) -> Result<Vec<&'static IdentitySpec>> {
    if config.n_max > config.range_limit {
        return Err(Error::RangeTooLarge { requested: config.n_max as usize, limit: config.range_limit as usize });
    }
    if config.identities.is_empty() {
        return Ok(registry().iter().collect());
    }
    let mut specs = config
        .identities
        .iter()
        .map(|id| lookup(id).ok_or_else(|| Error::UnknownIdentity(id.clone())))
        .collect::<Result<Vec<_>>>()?;
    specs.sort_by_key(|s| s.id);
    specs.dedup_by_key(|s| s.id);
    Ok(specs)
}

fn binding_selected(config: &AuditConfig, binding: &InterpretationBinding) -> bool {
    config.bindings.is_empty() || config.bindings.iter().any(|b| *b == binding.to_string())
}

/// Scans the grid in order and stops at the first failing tuple.
pub fn first_failure(
    spec: &IdentitySpec,
    form: &Form,
    binding: &InterpretationBinding,
    n_max: u32,
) -> Option<Counterexample> {
    spec.grid(n_max as i64).into_iter().find_map(|params| {
        form.evaluate(binding, &params).into_iter().find(|(l, r)| l != r).map(|(lhs, rhs)| Counterexample {
            params: params.iter().map(|(k, v)| (k.to_string(), v)).collect(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        })
    })
}

fn judge(spec: &IdentitySpec, form: &Form, binding: &InterpretationBinding, n_max: u32) -> Verdict {
    let counterexample = first_failure(spec, form, binding, n_max);
    let status = match (&counterexample, form.correction) {
        (Some(_), _) => Status::Fails,
        (None, None) => Status::Holds,
        (None, Some(_)) => Status::HoldsUnderCorrection,
    };
    let note = match form.correction {
        None => "printed".to_string(),
        Some(tag) if counterexample.is_none() => format!("{}: {tag} passes", spec.id),
        Some(tag) => format!("{}: {tag} fails", spec.id),
    };
    Verdict { id: spec.id.to_string(), binding: binding.to_string(), status, counterexample, note }
}

/// Runs the audit. Jobs run in parallel on the current rayon pool; the
/// report is ordered by id, binding and then form, independent of scheduling.
pub fn run_audit(config: &AuditConfig) -> Result<AuditReport> {
    let specs = select(config)?;
    let mut jobs = Vec::new();
    for spec in specs {
        for binding in spec.sweep.bindings().into_iter().filter(|b| binding_selected(config, b)) {
            for (index, form) in spec.forms.iter().enumerate() {
                jobs.push((spec, binding, index, form));
            }
        }
    }
    let mut judged: Vec<(usize, Verdict)> = jobs
        .into_par_iter()
        .map(|(spec, binding, index, form)| (index, judge(spec, form, &binding, config.n_max)))
        .collect();
    judged.sort_by(|(ia, a), (ib, b)| (&a.id, &a.binding, ia).cmp(&(&b.id, &b.binding, ib)));
    let verdicts: Vec<Verdict> = judged.into_iter().map(|(_, v)| v).collect();
    let count = |s: Status| verdicts.iter().filter(|v| v.status == s).count();
    let summary = Summary {
        holds: count(Status::Holds),
        fails: count(Status::Fails),
        holds_under_correction: count(Status::HoldsUnderCorrection),
        total: verdicts.len(),
    };
    Ok(AuditReport { version: env!("CARGO_PKG_VERSION").to_string(), config: config.clone(), verdicts, summary })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHECKLIST: [&str; 26] = [
        "EQ7",
        "NEWTON",
        "S2DELTA",
        "EQ10",
        "PROP1",
        "EQ11",
        "EQ12",
        "EQ13",
        "THM2",
        "EQ14",
        "EQ15",
        "COR3",
        "EQ16~EQ9",
        "EQ16B",
        "EQ17",
        "EQ18",
        "EQ17~EQ18",
        "PROP4",
        "EQ19~EQ8",
        "THM5",
        "COR6",
        "EQ20",
        "EQ22",
        "EQ23",
        "THM7",
        "FINAL",
    ];

    fn only(id: &str, n_max: u32) -> AuditReport {
        run_audit(&AuditConfig { identities: vec![id.into()], n_max, ..Default::default() }).unwrap()
    }

    #[test]
    fn registry_matches_checklist() {
        let mut ids: Vec<&str> = registry().iter().map(|s| s.id).collect();
        let mut want = CHECKLIST.to_vec();
        ids.sort();
        want.sort();
        assert_eq!(ids, want);
    }

    #[test]
    fn bernstein_weighted_sum_holds() {
        let r = only("EQ14", 6);
        assert_eq!(r.verdicts.len(), 1);
        assert_eq!(r.verdicts[0].status, Status::Holds);
        assert_eq!(r.verdicts[0].binding, "n/a");
    }

    #[test]
    fn integral_of_q_binomial() {
        let r = only("EQ13", 8);
        let printed = &r.verdicts[0];
        assert_eq!(printed.status, Status::Fails);
        let ce = printed.counterexample.as_ref().unwrap();
        assert_eq!((ce.params["n"], ce.lhs.as_str(), ce.rhs.as_str()), (0, "1", "q"));
        assert_eq!(r.verdicts[1].status, Status::HoldsUnderCorrection);
        assert_eq!(r.verdicts[1].note, "EQ13: exponent n-binom(n+1,2) passes");
    }

    #[test]
    fn counterexample_is_lexicographically_first() {
        for spec in registry().iter().filter(|s| ["EQ12", "EQ23", "EQ22", "THM2"].contains(&s.id)) {
            for binding in spec.sweep.bindings() {
                for form in &spec.forms {
                    let Some(ce) = first_failure(spec, form, &binding, 4) else { continue };
                    let failing: Vec<Vec<i64>> = spec
                        .grid(4)
                        .into_iter()
                        .filter(|p| form.evaluate(&binding, p).iter().any(|(l, r)| l != r))
                        .map(|p| p.iter().map(|(_, v)| v).collect())
                        .collect();
                    let min = failing.iter().min().unwrap();
                    let got: Vec<i64> = spec.params.iter().map(|n| ce.params[*n]).collect();
                    assert_eq!(&got, min, "{} {binding}", spec.id);
                }
            }
        }
    }

    #[test]
    fn guards() {
        let too_big = AuditConfig { n_max: 11, ..Default::default() };
        assert_eq!(run_audit(&too_big), Err(Error::RangeTooLarge { requested: 11, limit: 10 }));
        let unknown = AuditConfig { identities: vec!["EQ99".into()], ..Default::default() };
        assert_eq!(run_audit(&unknown), Err(Error::UnknownIdentity("EQ99".into())));
    }

    #[test]
    fn binding_filter() {
        let config = AuditConfig {
            identities: vec!["EQ11".into()],
            bindings: vec!["S2=order-first:S2_EXPLICIT".into()],
            ..Default::default()
        };
        let r = run_audit(&config).unwrap();
        assert_eq!(r.verdicts.len(), 1);
        assert_eq!(r.verdicts[0].status, Status::Holds);
    }
}
