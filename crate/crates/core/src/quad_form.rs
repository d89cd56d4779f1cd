//! The quadratic form Q(x) = Tr_{q^m/q}(x^(q^m+1)) on F_{q^{2m}} viewed as a
//! 2m-dimensional space over F_q, and its zero set.

use rayon::prelude::*;
use serde::Serialize;

use crate::cycint::CycInt;
use crate::cyclotomy::{class_modulus, IndexSet};
use crate::error::{Error, Result};
use crate::gf_tower::{FieldElem, FieldTable};
use crate::verify::chars::field_character_sum;

const WITNESS_CAP: usize = 10;

pub fn eval_q(t: &FieldTable, x: FieldElem) -> FieldElem {
    let norm = t.pow(x, t.qm() + 1);
    t.rel_trace(norm, t.qm(), t.q())
        .expect("x^(q^m+1) lies in F_{q^m}")
}

/// B(u, v) = Q(u + v) - Q(u) - Q(v).
pub fn eval_b(t: &FieldTable, u: FieldElem, v: FieldElem) -> FieldElem {
    let uv = eval_q(t, t.add(u, v));
    t.sub(t.sub(uv, eval_q(t, u)), eval_q(t, v))
}

/// Radical check: the only w with Q(w) = 0 and B(w, ·) = 0 is w = 0.
///
/// B(w, ·) is tested on an F_p-basis of F_{q^{2m}}; the bilinearity this
/// relies on is checked exhaustively in the tests.
pub fn is_nonsingular(t: &FieldTable) -> bool {
    let basis = t.top().basis().to_vec();
    (0..t.group_order() as u64).into_par_iter().all(|j| {
        let w = t.alpha_pow(j);
        !(eval_q(t, w).is_zero() && basis.iter().all(|&v| eval_b(t, w, v).is_zero()))
    })
}

/// X = {x ≠ 0 : Q(x) = 0} together with its type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadricSet {
    /// sorted by discrete log
    pub elements: Vec<FieldElem>,
    /// +1 hyperbolic, -1 elliptic
    pub epsilon: i8,
}

#[derive(Serialize)]
struct QuadricExport {
    dlogs: Vec<u32>,
    epsilon: i8,
}

impl QuadricSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn to_json(&self) -> String {
        let export = QuadricExport {
            dlogs: self.elements.iter().filter_map(|x| x.dlog()).collect(),
            epsilon: self.epsilon,
        };
        serde_json::to_string(&export).expect("plain data serializes")
    }
}

/// (q^m - ε)(q^(m-1) + ε).
pub fn quadric_size(q: u64, m: u32, epsilon: i8) -> u64 {
    let qm = q.pow(m) as i64;
    let qm1 = q.pow(m - 1) as i64;
    let e = epsilon as i64;
    ((qm - e) * (qm1 + e)) as u64
}

pub fn zero_set(t: &FieldTable) -> Result<QuadricSet> {
    let elements: Vec<FieldElem> = (0..t.group_order() as u64)
        .into_par_iter()
        .map(|j| t.alpha_pow(j))
        .filter(|&x| eval_q(t, x).is_zero())
        .collect();
    let (q, m) = (t.q(), t.spec().m);
    let n = elements.len() as u64;
    let epsilon = if n == quadric_size(q, m, 1) {
        1
    } else if n == quadric_size(q, m, -1) {
        -1
    } else {
        return Err(Error::Inconsistent(format!(
            "zero set has {n} elements, matching neither quadric type"
        )));
    };
    Ok(QuadricSet { elements, epsilon })
}

/// Outcome of comparing X with ∪_{i∈I} C_i^{(N, q^{2m})}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicCheck {
    pub holds: bool,
    pub zero_set_size: u64,
    pub union_size: u64,
    /// in X but not in the union (capped)
    pub only_in_zero_set: Vec<u32>,
    /// in the union but not in X (capped)
    pub only_in_union: Vec<u32>,
}

pub fn verify_cyclotomic_description(t: &FieldTable, iset: &IndexSet) -> Result<CyclotomicCheck> {
    let n = class_modulus(t);
    if iset.modulus != n {
        return Err(Error::Parameters(format!(
            "index set modulus {} is not N = {n}",
            iset.modulus
        )));
    }
    let x = zero_set(t)?;
    let group = t.group_order() as u64;
    let mut in_x = vec![false; group as usize];
    for e in &x.elements {
        in_x[e.dlog().unwrap() as usize] = true;
    }
    let mask = iset.mask();
    let mut check = CyclotomicCheck {
        holds: true,
        zero_set_size: x.len() as u64,
        union_size: iset.len() as u64 * (group / n),
        only_in_zero_set: Vec::new(),
        only_in_union: Vec::new(),
    };
    for j in 0..group {
        let in_union = mask[(j % n) as usize];
        match (in_x[j as usize], in_union) {
            (true, false) => {
                check.holds = false;
                if check.only_in_zero_set.len() < WITNESS_CAP {
                    check.only_in_zero_set.push(j as u32);
                }
            }
            (false, true) => {
                check.holds = false;
                if check.only_in_union.len() < WITNESS_CAP {
                    check.only_in_union.push(j as u32);
                }
            }
            _ => {}
        }
    }
    Ok(check)
}

/// φ_b(X) = Σ_{x∈X} ξ_p^(Tr_{q^{2m}/p}(bx)) for b ≠ 0.
pub fn zero_set_char_value(t: &FieldTable, x: &QuadricSet, b: FieldElem) -> Result<CycInt> {
    if b.is_zero() {
        return Err(Error::ZeroArgument("character index b"));
    }
    Ok(field_character_sum(t, &x.elements, b))
}

/// The two-case value of φ_b(X) for the elliptic form: q^(m-1) - 1 - q^m
/// when Q(b) = 0, q^(m-1) - 1 otherwise.
pub fn expected_zero_set_char_value(t: &FieldTable, b: FieldElem) -> i64 {
    let qm1 = t.q().pow(t.spec().m - 1) as i64;
    if eval_q(t, b).is_zero() {
        qm1 - 1 - t.qm() as i64
    } else {
        qm1 - 1
    }
}
