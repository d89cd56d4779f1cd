use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::WITNESS_CAP;
use crate::construction::PdsSet;
use crate::error::Result;
use crate::gf_tower::FieldTable;
use crate::group::{Group, GroupElem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiffWitness {
    pub index: u64,
    pub in_set: bool,
    pub count: u64,
    pub expected: u64,
}

/// Outcome of counting every difference d1 - d2 with d1, d2 in D.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferenceCount {
    pub pass: bool,
    /// ordered pairs with d1 = d2, i.e. |D|
    pub identity_count: u64,
    /// count value -> number of nonidentity elements of D with that count
    pub in_set: BTreeMap<u64, u64>,
    /// count value -> number of elements of G \ (D ∪ {0}) with that count
    pub outside: BTreeMap<u64, u64>,
    /// Σ over g ≠ 0, always |D|^2 - |D|
    pub nonidentity_total: u64,
    pub witnesses: Vec<DiffWitness>,
}

/// Number of ordered pairs (d1, d2) ∈ D × D with d1 - d2 = g, for every g,
/// indexed canonically.
pub fn difference_counts(t: &FieldTable, set: &PdsSet) -> Result<Vec<u32>> {
    let group = Group::new(t, set.group())?;
    let v = set.order() as usize;
    let members: Vec<GroupElem> = set.indices().iter().map(|&i| group.elem(i as usize)).collect();
    let chunk = (members.len() / (rayon::current_num_threads() * 4)).max(16);
    let counts = members
        .par_chunks(chunk)
        .map(|outer| {
            let mut acc = vec![0u32; v];
            for &d1 in outer {
                for &d2 in &members {
                    acc[group.index_unchecked(group.sub(d1, d2))] += 1;
                }
            }
            acc
        })
        .reduce(
            || vec![0u32; v],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(counts)
}

pub fn difference_count(t: &FieldTable, set: &PdsSet) -> Result<DifferenceCount> {
    let counts = difference_counts(t, set)?;
    let claimed = set.claimed();
    let mut report = DifferenceCount {
        pass: true,
        identity_count: counts[0] as u64,
        in_set: BTreeMap::new(),
        outside: BTreeMap::new(),
        nonidentity_total: 0,
        witnesses: Vec::new(),
    };
    if report.identity_count != claimed.k {
        report.pass = false;
        report.witnesses.push(DiffWitness {
            index: 0,
            in_set: false,
            count: report.identity_count,
            expected: claimed.k,
        });
    }
    for (g, &c) in counts.iter().enumerate().skip(1) {
        let c = c as u64;
        report.nonidentity_total += c;
        let in_set = set.contains(g);
        let expected = if in_set { claimed.lambda } else { claimed.mu };
        *if in_set { &mut report.in_set } else { &mut report.outside }
            .entry(c)
            .or_default() += 1;
        if c != expected {
            report.pass = false;
            if report.witnesses.len() < WITNESS_CAP {
                report.witnesses.push(DiffWitness {
                    index: g as u64,
                    in_set,
                    count: c,
                    expected,
                });
            }
        }
    }
    Ok(report)
}
