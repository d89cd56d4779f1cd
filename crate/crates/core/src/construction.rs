//! Partial difference sets: the Denniston-parameter family in
//! F_{q^m} × F_{q^{2m}}, plus Paley and elliptic-quadric sets used to
//! calibrate the verifiers.

use serde::{Deserialize, Serialize};

use crate::cyclotomy::{class_modulus, subspace_index_set, SubspaceR};
use crate::error::{Error, Result};
use crate::gf_tower::{FieldElem, FieldTable};
use crate::group::{Group, GroupElem, GroupKind};
use crate::params::ParamSet;
use crate::quad_form::zero_set;

/// Largest group order materialized as a dense indicator.
pub const DENSE_CAP: u128 = 1 << 28;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SetLabel {
    /// The Denniston-parameter set, with R given by basis discrete logs.
    Denniston { r: u32, basis: Vec<u64> },
    /// Nonzero squares of F_q.
    Paley,
    /// Nonzero zeros of the elliptic form on F_{q^{2m}}.
    Quadric,
    Custom,
}

/// A subset D of a group, stored as a dense indicator over canonical
/// indices, together with the parameters it is claimed to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdsSet {
    group: GroupKind,
    indicator: Vec<bool>,
    claimed: ParamSet,
    label: SetLabel,
}

impl PdsSet {
    /// The identity (index 0) must be excluded and `indicator` must cover
    /// the whole group. The size is deliberately not tied to `claimed.k`
    /// so that perturbed sets can be represented and rejected by the
    /// verifiers.
    pub fn new(
        t: &FieldTable,
        group: GroupKind,
        indicator: Vec<bool>,
        claimed: ParamSet,
        label: SetLabel,
    ) -> Result<Self> {
        let v = Group::new(t, group)?.order();
        if indicator.len() as u64 != v {
            return Err(Error::MalformedSet(format!(
                "indicator has length {}, group has order {v}",
                indicator.len()
            )));
        }
        if indicator[0] {
            return Err(Error::MalformedSet("set contains the identity".into()));
        }
        if claimed.v != v {
            return Err(Error::MalformedSet(format!(
                "claimed v = {} but the group has order {v}",
                claimed.v
            )));
        }
        Ok(PdsSet {
            group,
            indicator,
            claimed,
            label,
        })
    }

    pub fn from_indices(
        t: &FieldTable,
        group: GroupKind,
        indices: &[u64],
        claimed: ParamSet,
        label: SetLabel,
    ) -> Result<Self> {
        let v = Group::new(t, group)?.order();
        let mut indicator = vec![false; v as usize];
        for &i in indices {
            if i >= v {
                return Err(Error::MalformedSet(format!("index {i} out of range for order {v}")));
            }
            if indicator[i as usize] {
                return Err(Error::MalformedSet(format!("index {i} listed twice")));
            }
            indicator[i as usize] = true;
        }
        Self::new(t, group, indicator, claimed, label)
    }

    pub fn group(&self) -> GroupKind {
        self.group
    }

    pub fn claimed(&self) -> &ParamSet {
        &self.claimed
    }

    pub fn label(&self) -> &SetLabel {
        &self.label
    }

    pub fn indicator(&self) -> &[bool] {
        &self.indicator
    }

    pub fn order(&self) -> u64 {
        self.indicator.len() as u64
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indicator[index]
    }

    pub fn len(&self) -> usize {
        self.indicator.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Sorted member indices.
    pub fn indices(&self) -> Vec<u64> {
        self.indicator
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i as u64)
            .collect()
    }

    /// Same set with membership of `index` flipped; the claim is kept.
    pub fn toggled(&self, index: usize) -> Result<Self> {
        if index == 0 || index >= self.indicator.len() {
            return Err(Error::MalformedSet(format!("cannot toggle index {index}")));
        }
        let mut out = self.clone();
        out.indicator[index] = !out.indicator[index];
        out.label = SetLabel::Custom;
        Ok(out)
    }
}

fn check_qmr(q: u64, m: u32, r: u32) -> Result<()> {
    let prime_power = q >= 2 && {
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut x = q;
        while x.is_multiple_of(p) {
            x /= p;
        }
        x == 1
    };
    if !prime_power {
        return Err(Error::Parameters(format!("q = {q} is not a prime power")));
    }
    if m < 2 {
        return Err(Error::Parameters(format!("m = {m} must be at least 2")));
    }
    if r < 1 || r >= m {
        return Err(Error::DimensionOutOfRange { r, m });
    }
    Ok(())
}

/// n = q^(m+r) - q^m + q^r, the size of the associated Denniston arc.
fn arc_size(q: u64, m: u32, r: u32) -> u64 {
    q.pow(m + r) - q.pow(m) + q.pow(r)
}

/// (q^3m, n(q^m - 1), q^m - q^r + n(q^r - 2), n(q^r - 1)) with
/// n = q^(m+r) - q^m + q^r.
pub fn expected_params(q: u64, m: u32, r: u32) -> Result<ParamSet> {
    check_qmr(q, m, r)?;
    let n = arc_size(q, m, r);
    let (qm, qr) = (q.pow(m), q.pow(r));
    let v = q.pow(3 * m);
    let k = n * (qm - 1);
    // q^r - 2 is negative only for q = 2, r = 1
    let lambda = (qm as i64 - qr as i64 + n as i64 * (qr as i64 - 2)) as u64;
    let mu = n * (qr - 1);
    ParamSet::new(v, k, lambda, mu)
}

/// Parameters of the strongly regular Cayley graph Cay(G, D): the same
/// (v, k, λ, μ), with adjacency spectrum k^1, θ₊^f, θ₋^g.
///
/// The range checked is 1 <= r < m.
pub fn srg_params(q: u64, m: u32, r: u32) -> Result<ParamSet> {
    expected_params(q, m, r)
}

/// (q^m - q^r, q^m - q^r - q^(m+r)), the two nonprincipal character values.
pub fn expected_char_values(q: u64, m: u32, r: u32) -> Result<(i64, i64)> {
    check_qmr(q, m, r)?;
    let a = q.pow(m) as i64 - q.pow(r) as i64;
    Ok((a, a - q.pow(m + r) as i64))
}

/// D = ∪_{i<N} (C_i^{(N,q^m)} × ∪_{t∈T} C_{i+t}^{(N,q^{2m})}) ∪ (F_{q^m}^* × {0}).
pub fn build_denniston(t: &FieldTable, r: &SubspaceR) -> Result<PdsSet> {
    let (q, m) = (t.q(), t.spec().m);
    let dim = r.dim();
    let claimed = expected_params(q, m, dim)?;
    let v = t.qm() as u128 * t.order() as u128;
    if v > DENSE_CAP {
        return Err(Error::GroupTooLarge(v));
    }
    let group = Group::new(t, GroupKind::Product)?;
    let n = class_modulus(t);
    let tset = subspace_index_set(t, r);
    let xs = group.x_component().expect("product group");
    let ys = group.y_component();
    let x_per_class = (t.qm() - 1) / n;
    let y_per_class = (t.group_order() as u64) / n;

    let mut indicator = vec![false; v as usize];
    let yo = t.order() as usize;
    for i in 0..n {
        let y_indices: Vec<usize> = tset
            .members
            .iter()
            .flat_map(|&e| {
                let class = (i + e) % n;
                (0..y_per_class).map(move |j| class + n * j)
            })
            .map(|dl| ys.index_of_exponent(dl as u32) as usize)
            .collect();
        for j in 0..x_per_class {
            let ix = xs.index_of_exponent((i + n * j) as u32) as usize;
            for &iy in &y_indices {
                indicator[ix * yo + iy] = true;
            }
        }
    }
    for j in 0..(t.qm() - 1) {
        let ix = xs.index_of_exponent(j as u32) as usize;
        indicator[ix * yo] = true;
    }
    let label = SetLabel::Denniston {
        r: dim,
        basis: r.basis_dlogs(),
    };
    PdsSet::new(t, GroupKind::Product, indicator, claimed, label)
}

/// Membership of (x, y) in D computed straight from the definition, one
/// element at a time.
pub fn denniston_contains(t: &FieldTable, tset: &crate::cyclotomy::IndexSet, g: GroupElem) -> bool {
    let n = class_modulus(t);
    let qm_sub = t.subfield_qm();
    match (qm_sub.exponent(g.x), g.y.dlog()) {
        (None, _) => false,
        (Some(_), None) => true,
        (Some(ex), Some(ey)) => {
            let i = ex as u64 % n;
            let class = ey as u64 % n;
            tset.members.iter().any(|&e| (i + e) % n == class)
        }
    }
}

/// Nonzero squares of F_q for q ≡ 1 (mod 4), claimed to be a
/// (q, (q-1)/2, (q-5)/4, (q-1)/4)-PDS in (F_q, +).
pub fn paley_pds(t: &FieldTable) -> Result<PdsSet> {
    let q = t.q();
    if q % 4 != 1 {
        return Err(Error::Parameters(format!("Paley sets need q ≡ 1 mod 4, got q = {q}")));
    }
    let kind = GroupKind::Field { order: q };
    let group = Group::new(t, kind)?;
    let sub = group.y_component();
    let claimed = ParamSet::new(q, (q - 1) / 2, (q - 5) / 4, (q - 1) / 4)?;
    let mut indicator = vec![false; q as usize];
    for j in (0..q - 1).step_by(2) {
        indicator[sub.index(sub.from_exponent(j))? as usize] = true;
    }
    PdsSet::new(t, kind, indicator, claimed, SetLabel::Paley)
}

/// The elliptic quadric zero set as a regular
/// (q^2m, (q^m+1)(q^(m-1)-1), q^(2m-2) - q^(m-1)(q-1) - 2, q^(2m-2) - q^(m-1))-PDS.
pub fn quadric_pds(t: &FieldTable) -> Result<PdsSet> {
    let (q, m) = (t.q(), t.spec().m);
    let v = q.pow(2 * m);
    let k = (q.pow(m) + 1) * (q.pow(m - 1) - 1);
    let mu = q.pow(2 * m - 2) - q.pow(m - 1);
    let lambda = (q.pow(2 * m - 2) as i64 - (q.pow(m - 1) * (q - 1)) as i64 - 2) as u64;
    let claimed = ParamSet::new(v, k, lambda, mu)?;
    let kind = GroupKind::Field { order: v };
    let top = t.top();
    let mut indicator = vec![false; v as usize];
    for x in zero_set(t)?.elements {
        indicator[top.index(x)? as usize] = true;
    }
    PdsSet::new(t, kind, indicator, claimed, SetLabel::Quadric)
}

/// Parameters of Ω = F_q^*·O for a projective (n, mdim, h1, h2) set O in
/// PG(mdim-1, q): (q^mdim, (q-1)n, λ, μ) with
/// μ = (q-1)n + (qh1-n)(qh2-n) and λ = μ + q(h1+h2) - 2n.
pub fn projective_set_params(n: u64, h1: u64, h2: u64, q: u64, mdim: u32) -> Result<ParamSet> {
    if n < 1 || h1 >= h2 || q < 2 || mdim < 2 {
        return Err(Error::Parameters(format!(
            "projective set needs n >= 1 and h1 < h2 (got n={n} h1={h1} h2={h2})"
        )));
    }
    let (n, h1, h2, qi) = (n as i64, h1 as i64, h2 as i64, q as i64);
    let mu = (qi - 1) * n + (qi * h1 - n) * (qi * h2 - n);
    let lambda = mu + qi * (h1 + h2) - 2 * n;
    if mu < 0 || lambda < 0 {
        return Err(Error::Parameters("projective set parameters give negative λ or μ".into()));
    }
    ParamSet::new(q.pow(mdim), ((qi - 1) * n) as u64, lambda as u64, mu as u64)
}

/// Elements c·g for every g in D.
pub fn scaled_indicator(t: &FieldTable, set: &PdsSet, c: FieldElem) -> Result<Vec<bool>> {
    let group = Group::new(t, set.group())?;
    if c.is_zero() {
        return Err(Error::ZeroArgument("scalar"));
    }
    if !group.admits_scalar(c) {
        return Err(Error::Parameters("scalar does not act on the group".into()));
    }
    let mut out = vec![false; set.indicator.len()];
    for idx in set.indices() {
        let g = group.scale(c, group.elem(idx as usize));
        out[group.index_unchecked(g)] = true;
    }
    Ok(out)
}
