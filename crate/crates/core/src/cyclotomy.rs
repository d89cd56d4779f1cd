//! Cyclotomic classes of index N = (q^m - 1)/(q - 1) in F_{q^m} and
//! F_{q^{2m}}, the trace-zero index set I, and the subspace index set T.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf_tower::{FieldElem, FieldTable};

/// N = (q^m - 1)/(q - 1).
pub fn class_modulus(t: &FieldTable) -> u64 {
    (t.qm() - 1) / (t.q() - 1)
}

/// The class C_i^{(N, ambient)} with ambient a subfield order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycIndex {
    pub modulus: u64,
    pub i: u64,
    pub ambient: u64,
}

impl CycIndex {
    pub fn new(t: &FieldTable, i: u64, ambient: u64) -> Self {
        CycIndex {
            modulus: class_modulus(t),
            i,
            ambient,
        }
    }
}

/// {α_K^(i + N·j) : 0 <= j < (ambient - 1)/N} where α_K generates the
/// multiplicative group of the ambient subfield (ω for F_{q^m}).
pub fn class_members(t: &FieldTable, c: CycIndex) -> Result<Vec<FieldElem>> {
    let sub = t.subfield(c.ambient)?;
    let group = c.ambient - 1;
    if c.modulus == 0 || !group.is_multiple_of(c.modulus) || c.i >= c.modulus {
        return Err(Error::Parameters(format!(
            "invalid cyclotomic class C_{}^({}, {})",
            c.i, c.modulus, c.ambient
        )));
    }
    Ok((0..group / c.modulus)
        .map(|j| sub.from_exponent(c.i + c.modulus * j))
        .collect())
}

/// Sorted, distinct residues modulo `modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet {
    pub modulus: u64,
    pub members: Vec<u64>,
}

impl IndexSet {
    pub fn new(modulus: u64, mut members: Vec<u64>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.last().is_some_and(|&x| x >= modulus) {
            return Err(Error::Parameters(format!("index out of range mod {modulus}")));
        }
        Ok(IndexSet { modulus, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, residue: u64) -> bool {
        self.members.binary_search(&(residue % self.modulus)).is_ok()
    }

    /// Dense membership mask of length `modulus`.
    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.modulus as usize];
        for &i in &self.members {
            mask[i as usize] = true;
        }
        mask
    }
}

/// I = {i < N : Tr_{q^m/q}(ω^i) = 0}.
pub fn trace_zero_index_set(t: &FieldTable) -> IndexSet {
    let n = class_modulus(t);
    let (q, qm) = (t.q(), t.qm());
    let omega = t.omega();
    let members = (0..n)
        .filter(|&i| {
            t.rel_trace(t.pow(omega, i), qm, q)
                .expect("powers of omega lie in F_{q^m}")
                .is_zero()
        })
        .collect();
    IndexSet { modulus: n, members }
}

/// An F_q-subspace R of F_{q^m}, given by a basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceR {
    basis: Vec<FieldElem>,
}

impl SubspaceR {
    /// Checks that every vector lies in F_{q^m} and that they are
    /// F_q-linearly independent.
    pub fn new(t: &FieldTable, basis: Vec<FieldElem>) -> Result<Self> {
        let qm = t.qm();
        for &b in &basis {
            if !t.is_in_subfield(b, qm)? {
                return Err(Error::NotInSubfield(qm));
            }
        }
        if !fq_independent(t, &basis) {
            return Err(Error::DependentBasis);
        }
        Ok(SubspaceR { basis })
    }

    /// Basis given by discrete logs to base α.
    pub fn from_dlogs(t: &FieldTable, dlogs: &[u64]) -> Result<Self> {
        Self::new(t, dlogs.iter().map(|&e| t.alpha_pow(e)).collect())
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    pub fn basis_dlogs(&self) -> Vec<u64> {
        self.basis
            .iter()
            .map(|b| b.dlog().expect("basis vectors are nonzero") as u64)
            .collect()
    }

    /// All q^r elements of R.
    pub fn span(&self, t: &FieldTable) -> Vec<FieldElem> {
        let scalars: Vec<FieldElem> = t
            .subfield(t.q())
            .expect("q is a subfield order")
            .elements()
            .collect();
        let mut span = vec![FieldElem::ZERO];
        for &b in &self.basis {
            span = span
                .iter()
                .flat_map(|&x| scalars.iter().map(move |&c| (x, c)))
                .map(|(x, c)| t.add(x, t.mul(c, b)))
                .collect();
        }
        span
    }
}

/// F_q-independence via the F_p-rank of {b·β : b in basis, β in an
/// F_p-basis of F_q}.
fn fq_independent(t: &FieldTable, basis: &[FieldElem]) -> bool {
    let fq = t.subfield(t.q()).expect("q is a subfield order");
    let vectors: Vec<Vec<u32>> = basis
        .iter()
        .flat_map(|&b| fq.basis().iter().map(move |&beta| (b, beta)))
        .map(|(b, beta)| t.coords(t.mul(b, beta)))
        .collect();
    fp_rank(vectors, t.p()) == basis.len() * fq.degree() as usize
}

fn fp_rank(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = (1..p).find(|x| rows[rank][col] * x % p == 1).unwrap();
        let pivot_row: Vec<u32> = rows[rank].iter().map(|x| x * inv % p).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f != 0 {
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

fn check_dim(t: &FieldTable, r: u32) -> Result<()> {
    let m = t.spec().m;
    if r < 1 || r >= m {
        return Err(Error::DimensionOutOfRange { r, m });
    }
    Ok(())
}

fn extend_greedily(
    t: &FieldTable,
    r: u32,
    mut candidates: impl Iterator<Item = FieldElem>,
) -> Result<SubspaceR> {
    let mut basis = Vec::with_capacity(r as usize);
    while basis.len() < r as usize {
        let c = candidates.next().ok_or(Error::DependentBasis)?;
        basis.push(c);
        if c.is_zero() || !fq_independent(t, &basis) {
            basis.pop();
        }
    }
    SubspaceR::new(t, basis)
}

/// R spanned by 1, ω, …, ω^(r-1), skipping any power that would make the
/// set dependent.
pub fn default_subspace(t: &FieldTable, r: u32) -> Result<SubspaceR> {
    check_dim(t, r)?;
    let omega = t.omega();
    let bound = t.qm() - 1;
    extend_greedily(t, r, (0..bound).map(|k| t.pow(omega, k)))
}

/// R spanned by seeded uniformly random elements of F_{q^m}^*.
pub fn random_subspace(t: &FieldTable, r: u32, seed: u64) -> Result<SubspaceR> {
    check_dim(t, r)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let omega = t.omega();
    let bound = t.qm() - 1;
    extend_greedily(
        t,
        r,
        std::iter::repeat_with(move || rng.gen_range(0..bound)).map(|k| t.pow(omega, k)),
    )
}

/// T = {t < N : ω^t ∈ R}.
pub fn subspace_index_set(t: &FieldTable, r: &SubspaceR) -> IndexSet {
    let n = class_modulus(t);
    let sub = t.subfield_qm();
    let mut members: Vec<u64> = r
        .span(t)
        .into_iter()
        .filter_map(|x| sub.exponent(x))
        .map(u64::from)
        .filter(|&e| e < n)
        .collect();
    members.sort_unstable();
    members.dedup();
    IndexSet { modulus: n, members }
}

/// |{α^(t+u) : t ∈ T} ∩ ∪_{i∈I} C_i^{(N, q^{2m})}|.
pub fn intersection_profile(t: &FieldTable, tset: &IndexSet, iset: &IndexSet, u: u64) -> Result<u64> {
    let group = t.group_order() as u64;
    if u >= group {
        return Err(Error::Parameters(format!("shift u = {u} must be below {group}")));
    }
    Ok(tset
        .members
        .iter()
        .filter(|&&e| {
            let x = t.alpha_pow(e + u);
            iset.contains(x.dlog().expect("powers of alpha are nonzero") as u64)
        })
        .count() as u64)
}

/// The profile for every shift u in [0, q^{2m} - 1).
pub fn intersection_profile_all(t: &FieldTable, tset: &IndexSet, iset: &IndexSet) -> Vec<u64> {
    let mask = iset.mask();
    let n = iset.modulus;
    (0..t.group_order() as u64)
        .map(|u| {
            tset.members
                .iter()
                .filter(|&&e| mask[((e + u) % n) as usize])
                .count() as u64
        })
        .collect()
}
