//! Independent exact verification of a [`PdsSet`].
//!
//! The difference counter works directly from the group-ring definition;
//! the character spectrum works through additive characters. Neither
//! depends on how the set was constructed.

pub mod chars;
pub mod diff;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::construction::{scaled_indicator, PdsSet, SetLabel};
use crate::cycint::CycInt;
use crate::error::{Error, Result};
use crate::gf_tower::{FieldElem, FieldSpec, FieldTable};
use crate::group::{Group, GroupKind};
use crate::params::ParamSet;

pub use chars::{char_spectrum, character_values, CharSpectrum, Method};
pub use diff::{difference_count, difference_counts, DifferenceCount};

pub(crate) const WITNESS_CAP: usize = 10;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub identity_excluded: bool,
    pub symmetric: bool,
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        self.identity_excluded && self.symmetric
    }
}

/// e ∉ D and D = -D.
pub fn regularity(t: &FieldTable, set: &PdsSet) -> Result<Regularity> {
    let group = Group::new(t, set.group())?;
    let symmetric = set
        .indices()
        .iter()
        .all(|&i| set.contains(group.index_unchecked(group.neg(group.elem(i as usize)))));
    Ok(Regularity {
        identity_excluded: !set.contains(0),
        symmetric,
    })
}

pub fn is_regular(t: &FieldTable, set: &PdsSet) -> Result<bool> {
    Ok(regularity(t, set)?.is_regular())
}

/// Whether (x, y) ↦ (cx, cy) maps D onto itself.
pub fn scalar_invariance(t: &FieldTable, set: &PdsSet, c: FieldElem) -> Result<bool> {
    if c.is_zero() {
        return Err(Error::ZeroArgument("scalar"));
    }
    if !t.is_in_subfield(c, t.qm())? {
        return Err(Error::NotInSubfield(t.qm()));
    }
    Ok(scaled_indicator(t, set, c)? == set.indicator())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Parseval {
    pub pass: bool,
    pub total: String,
    pub expected: u64,
}

/// Σ_χ |χ(D)|^2 = v·|D|, evaluated exactly.
pub fn parseval_check(values: &[CycInt], size: u64) -> Parseval {
    let p = values.first().map_or(2, |z| z.p());
    let total = values
        .iter()
        .fold(CycInt::zero(p), |acc, z| acc.add(&z.norm_sq()));
    let expected = values.len() as u64 * size;
    Parseval {
        pass: total.as_integer() == Some(expected as i64),
        total: total.to_string(),
        expected,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceResult {
    pub scalar: String,
    pub dlog: u32,
    pub invariant: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckLevel {
    Counts,
    Chars,
    #[default]
    All,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    pub level: CheckLevel,
    pub method: Method,
    /// include wall-clock timings in the report (breaks byte-identity)
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Criterion {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseTiming {
    pub phase: String,
    pub millis: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub field: FieldSpec,
    pub group: GroupKind,
    pub label: SetLabel,
    pub params: ParamSet,
    pub size: u64,
    pub level: CheckLevel,
    pub regularity: Regularity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference_count: Option<DifferenceCount>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub char_spectrum: Option<CharSpectrum>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parseval: Option<Parseval>,
    pub invariance: Vec<InvarianceResult>,
    pub criteria: Vec<Criterion>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<PhaseTiming>>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "field     {}", self.field);
        let _ = writeln!(s, "group     {:?}", self.group);
        let _ = writeln!(s, "set       {:?}", self.label);
        let _ = writeln!(s, "claimed   {} (|D| = {})", self.params, self.size);
        let _ = writeln!(
            s,
            "regular   identity excluded: {}, D = -D: {}",
            self.regularity.identity_excluded, self.regularity.symmetric
        );
        if let Some(dc) = &self.difference_count {
            let _ = writeln!(s, "counts    in D: {:?}  outside: {:?}", dc.in_set, dc.outside);
            for w in &dc.witnesses {
                let _ = writeln!(
                    s,
                    "  witness index {} (in D: {}) count {} expected {}",
                    w.index, w.in_set, w.count, w.expected
                );
            }
        }
        if let Some(cs) = &self.char_spectrum {
            let spec: Vec<String> = cs
                .nonprincipal
                .iter()
                .map(|e| format!("{}^{}", e.value, e.multiplicity))
                .collect();
            let _ = writeln!(s, "spectrum  principal {}; {}", cs.principal, spec.join(", "));
            for w in &cs.witnesses {
                let _ = writeln!(s, "  witness character {} value {}", w.label, w.value);
            }
        }
        if let Some(pv) = &self.parseval {
            let _ = writeln!(s, "parseval  {} (expected {})", pv.total, pv.expected);
        }
        for inv in &self.invariance {
            let _ = writeln!(s, "scalar    {} invariant: {}", inv.scalar, inv.invariant);
        }
        for note in &self.notes {
            let _ = writeln!(s, "note      {note}");
        }
        for c in &self.criteria {
            let _ = writeln!(s, "[{}] {}", if c.pass { "pass" } else { "FAIL" }, c.name);
        }
        if let Some(ts) = &self.timings {
            for t in ts {
                let _ = writeln!(s, "time      {} {:.1} ms", t.phase, t.millis);
            }
        }
        let _ = writeln!(s, "verdict   {}", self.verdict);
        s
    }
}

/// Scalars tried for the invariance report: F_q^*, then ω when it acts.
fn invariance_scalars(t: &FieldTable, group: &Group<'_>) -> Vec<(String, FieldElem)> {
    let fq = t.subfield(t.q()).expect("q is a subfield order");
    let mut out: Vec<(String, FieldElem)> = fq
        .elements()
        .filter(|c| !c.is_zero())
        .filter(|&c| group.admits_scalar(c))
        .map(|c| (format!("a^{}", c.dlog().unwrap()), c))
        .collect();
    let omega = t.omega();
    if group.admits_scalar(omega) {
        out.push(("omega".to_string(), omega));
    }
    out
}

pub fn verify(t: &FieldTable, set: &PdsSet, opts: VerifyOptions) -> Result<VerifyReport> {
    let group = Group::new(t, set.group())?;
    let mut timings = Vec::new();
    let mut clock = Instant::now();
    let mut lap = |phase: &str, clock: &mut Instant| {
        timings.push(PhaseTiming {
            phase: phase.to_string(),
            millis: clock.elapsed().as_secs_f64() * 1e3,
        });
        *clock = Instant::now();
    };

    let size = set.len() as u64;
    let params = *set.claimed();
    let regularity = regularity(t, set)?;
    lap("regularity", &mut clock);

    let mut criteria = vec![
        Criterion {
            name: "size equals claimed k".into(),
            pass: size == params.k,
        },
        Criterion {
            name: "identity excluded".into(),
            pass: regularity.identity_excluded,
        },
    ];

    let want_counts = matches!(opts.level, CheckLevel::Counts | CheckLevel::All);
    let want_chars = matches!(opts.level, CheckLevel::Chars | CheckLevel::All);

    let difference_count = if want_counts {
        let dc = diff::difference_count(t, set)?;
        lap("difference_count", &mut clock);
        criteria.push(Criterion {
            name: "difference counts".into(),
            pass: dc.pass,
        });
        Some(dc)
    } else {
        None
    };

    let (char_spectrum, parseval) = if want_chars {
        let values = chars::character_values(t, set, opts.method)?;
        let cs = chars::char_spectrum_from_values(set, &values, opts.method);
        lap("char_spectrum", &mut clock);
        let pv = parseval_check(&values, size);
        lap("parseval", &mut clock);
        criteria.push(Criterion {
            name: "character spectrum".into(),
            pass: cs.pass,
        });
        criteria.push(Criterion {
            name: "parseval".into(),
            pass: pv.pass,
        });
        (Some(cs), Some(pv))
    } else {
        (None, None)
    };

    let mut invariance = Vec::new();
    if opts.level == CheckLevel::All {
        for (name, c) in invariance_scalars(t, &group) {
            invariance.push(InvarianceResult {
                scalar: name,
                dlog: c.dlog().unwrap(),
                invariant: scaled_indicator(t, set, c)? == set.indicator(),
            });
        }
        lap("invariance", &mut clock);
    }

    let mut notes = Vec::new();
    if !regularity.is_regular() {
        notes.push("set is not regular; counts and characters are not claimed equivalent".into());
    }
    let verdict = if criteria.iter().all(|c| c.pass) { "PDS" } else { "not PDS" };
    Ok(VerifyReport {
        schema: REPORT_SCHEMA,
        field: t.spec().clone(),
        group: set.group(),
        label: set.label().clone(),
        params,
        size,
        level: opts.level,
        regularity,
        difference_count,
        char_spectrum,
        parseval,
        invariance,
        criteria,
        verdict: verdict.to_string(),
        notes,
        timings: opts.timings.then_some(timings),
    })
}
