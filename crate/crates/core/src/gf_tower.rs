//! Exact arithmetic in the tower F_p ⊂ F_q ⊂ F_{q^m} ⊂ F_{q^{2m}}.
//!
//! Everything happens inside the top field F_{q^{2m}}, represented by
//! discrete logarithms to a fixed primitive root α of the modulus. Addition
//! goes through a Zech table. Subfields are never separate structures: an
//! element of the subfield of order p^c is a power of α^((p^d-1)/(p^c-1)).

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly;

/// Default cap on p^d, the number of multiplicative table entries.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 24;

/// Parameters of a tower and the degree-d modulus defining the top field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub s: u32,
    pub m: u32,
    pub d: u32,
    /// Monic modulus over F_p, constant term first (length d + 1).
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.s)
    }

    pub fn qm(&self) -> u64 {
        self.q().pow(self.m)
    }

    pub fn q2m(&self) -> u64 {
        self.qm() * self.qm()
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p={} s={} m={} (q={}, |F|={}) modulus=[",
            self.p,
            self.s,
            self.m,
            self.q(),
            self.q2m()
        )?;
        for (i, c) in self.modulus.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A field element by discrete log, with a sentinel for zero.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(u32::MAX);
    pub const ONE: FieldElem = FieldElem(0);

    pub fn is_zero(self) -> bool {
        self == Self::ZERO
    }

    /// Discrete log to base α, `None` for zero.
    pub fn dlog(self) -> Option<u32> {
        if self.is_zero() {
            None
        } else {
            Some(self.0)
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.dlog() {
            None => write!(f, "0"),
            Some(j) => write!(f, "a^{j}"),
        }
    }
}

/// The additive group of one subfield, with an echelonized F_p-basis and a
/// dense canonical indexing onto [0, order).
#[derive(Debug)]
pub struct Subfield {
    order: u32,
    degree: u32,
    step: u32,
    basis: Vec<FieldElem>,
    pivots: Vec<usize>,
    /// canonical index of α^(step·j), by j
    index_of: Vec<u32>,
    /// element at each canonical index
    elem_of: Vec<FieldElem>,
}

impl Subfield {
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Degree over F_p.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The subfield's nonzero elements are α^(step·j), 0 <= j < order - 1.
    pub fn step(&self) -> u32 {
        self.step
    }

    /// Echelonized F_p-basis; digit i of a canonical index is the
    /// coordinate along `basis()[i]`.
    pub fn basis(&self) -> &[FieldElem] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn contains(&self, a: FieldElem) -> bool {
        match a.dlog() {
            None => true,
            Some(j) => j % self.step == 0,
        }
    }

    /// Exponent j with a = α^(step·j); `None` for zero or non-members.
    pub fn exponent(&self, a: FieldElem) -> Option<u32> {
        let j = a.dlog()?;
        (j % self.step == 0).then_some(j / self.step)
    }

    pub fn from_exponent(&self, j: u64) -> FieldElem {
        FieldElem(((j % (self.order as u64 - 1)) * self.step as u64) as u32)
    }

    pub fn index(&self, a: FieldElem) -> Result<u32> {
        match a.dlog() {
            None => Ok(0),
            Some(j) if j % self.step == 0 => Ok(self.index_of[(j / self.step) as usize]),
            Some(_) => Err(Error::NotInSubfield(self.order as u64)),
        }
    }

    /// Index of a member without the membership check.
    #[inline]
    pub(crate) fn index_unchecked(&self, a: FieldElem) -> u32 {
        if a.is_zero() {
            0
        } else {
            self.index_of[(a.0 / self.step) as usize]
        }
    }

    #[inline]
    pub fn elem(&self, index: u32) -> FieldElem {
        self.elem_of[index as usize]
    }

    /// Index of α^(step·j), by j.
    #[inline]
    pub(crate) fn index_of_exponent(&self, j: u32) -> u32 {
        self.index_of[j as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        self.elem_of.iter().copied()
    }
}

/// Discrete-log and Zech tables for F_{p^d}, d = 2ms.
pub struct FieldTable {
    spec: FieldSpec,
    order: u32,
    group: u32,
    /// dlog(1 + α^j), `u32::MAX` when 1 + α^j = 0
    zech: Vec<u32>,
    /// packed F_p coordinates of α^j (digit i = coefficient of x^i)
    exp: Vec<u32>,
    /// inverse of `exp`; entry 0 is the zero sentinel
    log: Vec<u32>,
    subfields: Vec<OnceLock<Subfield>>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTable").field("spec", &self.spec).finish()
    }
}

fn check_tower(p: u32, s: u32, m: u32, cap: u64) -> Result<u32> {
    if !poly::is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if s < 1 {
        return Err(Error::InvalidTower(format!("s = {s} must be at least 1")));
    }
    if m < 2 {
        return Err(Error::InvalidTower(format!("m = {m} must be at least 2")));
    }
    let d = 2u64 * m as u64 * s as u64;
    let order = (p as u128).checked_pow(d as u32).unwrap_or(u128::MAX);
    if order > cap as u128 || order > u32::MAX as u128 {
        return Err(Error::SizeCapExceeded { order, cap });
    }
    Ok(d as u32)
}

/// Smallest primitive monic polynomial of degree `d` over F_p, comparing
/// coefficient tuples from x^(d-1) down to the constant term.
pub fn smallest_primitive_polynomial(p: u32, d: u32) -> Vec<u32> {
    let pp = p as u64;
    let group = pp.pow(d) - 1;
    (0..pp.pow(d))
        .map(|n| poly::monic_from_index(n, pp, d as usize))
        .find(|f| f[0] != 0 && poly::is_irreducible(f, pp) && poly::order_of_root(f, pp) == group)
        .map(|f| f.into_iter().map(|c| c as u32).collect())
        .expect("primitive polynomials exist in every degree")
}

impl FieldTable {
    /// Tower with the default modulus and size cap.
    pub fn build(p: u32, s: u32, m: u32) -> Result<Self> {
        Self::new(p, s, m, None, DEFAULT_SIZE_CAP)
    }

    pub fn with_modulus(p: u32, s: u32, m: u32, modulus: &[u32]) -> Result<Self> {
        Self::new(p, s, m, Some(modulus), DEFAULT_SIZE_CAP)
    }

    pub fn from_spec(spec: &FieldSpec, size_cap: u64) -> Result<Self> {
        let table = Self::new(spec.p, spec.s, spec.m, Some(&spec.modulus), size_cap)?;
        if table.spec.d != spec.d {
            return Err(Error::InvalidTower(format!(
                "d = {} does not equal 2ms = {}",
                spec.d, table.spec.d
            )));
        }
        Ok(table)
    }

    pub fn new(p: u32, s: u32, m: u32, modulus: Option<&[u32]>, size_cap: u64) -> Result<Self> {
        let d = check_tower(p, s, m, size_cap)?;
        let modulus = match modulus {
            Some(f) => {
                validate_modulus(f, p, d)?;
                f.to_vec()
            }
            None => smallest_primitive_polynomial(p, d),
        };
        let spec = FieldSpec { p, s, m, d, modulus };
        Ok(Self::from_primitive(spec))
    }

    fn from_primitive(spec: FieldSpec) -> Self {
        let p = spec.p;
        let d = spec.d as usize;
        let order = p.pow(spec.d);
        let group = order - 1;

        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![u32::MAX; order as usize];
        let mut digits = vec![0u32; d];
        digits[0] = 1;
        let powers: Vec<u32> = (0..d as u32).map(|i| p.pow(i)).collect();
        for j in 0..group {
            let packed: u32 = digits.iter().zip(&powers).map(|(c, w)| c * w).sum();
            debug_assert_eq!(log[packed as usize], u32::MAX, "modulus is not primitive");
            exp.push(packed);
            log[packed as usize] = j;
            // multiply by x modulo the monic modulus
            let top = digits[d - 1];
            for i in (1..d).rev() {
                digits[i] = (digits[i - 1] + (p - top * spec.modulus[i] % p)) % p;
            }
            digits[0] = (p - top * spec.modulus[0] % p) % p;
        }

        let zech = exp
            .iter()
            .map(|&packed| {
                let bumped = if packed % p == p - 1 { packed - (p - 1) } else { packed + 1 };
                log[bumped as usize]
            })
            .collect();

        let subfields = (0..=spec.d).map(|_| OnceLock::new()).collect();
        FieldTable {
            spec,
            order,
            group,
            zech,
            exp,
            log,
            subfields,
        }
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn q(&self) -> u64 {
        self.spec.q()
    }

    pub fn qm(&self) -> u64 {
        self.spec.qm()
    }

    /// Order of the top field, p^d = q^{2m}.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// p^d - 1.
    pub fn group_order(&self) -> u32 {
        self.group
    }

    pub fn alpha_pow(&self, j: u64) -> FieldElem {
        FieldElem((j % self.group as u64) as u32)
    }

    /// ω = α^(q^m + 1), a primitive element of F_{q^m}.
    pub fn omega(&self) -> FieldElem {
        self.alpha_pow(self.qm() + 1)
    }

    /// Element of the prime field with integer value `c mod p`.
    pub fn from_int(&self, c: u64) -> FieldElem {
        self.from_packed((c % self.spec.p as u64) as u32)
    }

    /// Integer value of a prime-field element.
    pub fn prime_value(&self, a: FieldElem) -> Option<u32> {
        match a.dlog() {
            None => Some(0),
            Some(j) => {
                let packed = self.exp[j as usize];
                (packed < self.spec.p).then_some(packed)
            }
        }
    }

    pub fn coords(&self, a: FieldElem) -> Vec<u32> {
        let mut packed = self.packed(a);
        let p = self.spec.p;
        (0..self.spec.d)
            .map(|_| {
                let c = packed % p;
                packed /= p;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> FieldElem {
        let p = self.spec.p;
        let packed = coords.iter().rev().fold(0u32, |acc, &c| acc * p + c % p);
        self.from_packed(packed)
    }

    /// Coordinates packed as a base-p integer, constant term least significant.
    pub fn packed(&self, a: FieldElem) -> u32 {
        match a.dlog() {
            None => 0,
            Some(j) => self.exp[j as usize],
        }
    }

    pub fn from_packed(&self, packed: u32) -> FieldElem {
        FieldElem(self.log[packed as usize])
    }

    /// dlog(1 + α^j), the raw Zech logarithm.
    pub fn zech(&self, j: u32) -> FieldElem {
        FieldElem(self.zech[(j % self.group) as usize])
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        // α^a + α^b = α^a (1 + α^(b-a))
        let diff = if b.0 >= a.0 { b.0 - a.0 } else { b.0 + self.group - a.0 };
        let z = self.zech[diff as usize];
        if z == u32::MAX {
            FieldElem::ZERO
        } else {
            FieldElem(((a.0 as u64 + z as u64) % self.group as u64) as u32)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        if a.is_zero() || self.spec.p == 2 {
            return a;
        }
        FieldElem(((a.0 as u64 + (self.group / 2) as u64) % self.group as u64) as u32)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.is_zero() || b.is_zero() {
            return FieldElem::ZERO;
        }
        FieldElem(((a.0 as u64 + b.0 as u64) % self.group as u64) as u32)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        match a.dlog() {
            None => Err(Error::InverseOfZero),
            Some(0) => Ok(a),
            Some(j) => Ok(FieldElem(self.group - j)),
        }
    }

    /// a^e, with 0^0 = 1.
    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        match a.dlog() {
            None if e == 0 => FieldElem::ONE,
            None => FieldElem::ZERO,
            Some(j) => {
                FieldElem(((j as u128 * e as u128) % self.group as u128) as u32)
            }
        }
    }

    /// a^(p^k).
    pub fn frobenius(&self, a: FieldElem, k: u32) -> FieldElem {
        let Some(j) = a.dlog() else {
            return a;
        };
        let g = self.group as u64;
        let mut scale = 1u64;
        for _ in 0..(k % self.spec.d) {
            scale = scale * self.spec.p as u64 % g;
        }
        FieldElem((j as u64 * scale % g) as u32)
    }

    /// Degree c with p^c = `order`, if that is a subfield order.
    pub fn subfield_degree(&self, order: u64) -> Result<u32> {
        let p = self.spec.p as u64;
        let mut c = 0u32;
        let mut acc = 1u64;
        while acc < order {
            acc = acc.saturating_mul(p);
            c += 1;
        }
        if acc != order || c == 0 || !self.spec.d.is_multiple_of(c) {
            return Err(Error::NotASubfieldOrder(order));
        }
        Ok(c)
    }

    pub fn is_in_subfield(&self, a: FieldElem, order: u64) -> Result<bool> {
        let c = self.subfield_degree(order)?;
        Ok(match a.dlog() {
            None => true,
            Some(j) => j % (self.group / (self.spec.p.pow(c) - 1)) == 0,
        })
    }

    /// Relative trace from the subfield of order `from` down to order `to`.
    pub fn rel_trace(&self, a: FieldElem, from: u64, to: u64) -> Result<FieldElem> {
        let c_from = self.subfield_degree(from)?;
        let c_to = self.subfield_degree(to)?;
        if c_from % c_to != 0 {
            return Err(Error::IncompatibleOrders { from, to });
        }
        if !self.is_in_subfield(a, from)? {
            return Err(Error::NotInSubfield(from));
        }
        Ok(self.trace_unchecked(a, c_from, c_to))
    }

    pub(crate) fn trace_unchecked(&self, a: FieldElem, c_from: u32, c_to: u32) -> FieldElem {
        (0..c_from / c_to).fold(FieldElem::ZERO, |acc, i| {
            self.add(acc, self.frobenius(a, c_to * i))
        })
    }

    /// The subfield of order `order`, built on first use.
    pub fn subfield(&self, order: u64) -> Result<&Subfield> {
        let c = self.subfield_degree(order)?;
        Ok(self.subfields[c as usize].get_or_init(|| self.build_subfield(c)))
    }

    /// The subfield F_{q^m}.
    pub fn subfield_qm(&self) -> &Subfield {
        self.subfield(self.qm()).expect("q^m is always a subfield order")
    }

    /// The whole field F_{q^{2m}} viewed as a subfield of itself.
    pub fn top(&self) -> &Subfield {
        self.subfield(self.order as u64).expect("the top field is a subfield")
    }

    pub fn canonical_index(&self, a: FieldElem, order: u64) -> Result<u32> {
        self.subfield(order)?.index(a)
    }

    /// Absolute trace Tr_{p^c/p} of every element of a subfield, indexed
    /// by subfield exponent j (element α^(step·j)).
    pub fn absolute_trace_table(&self, sub: &Subfield) -> Vec<u32> {
        (0..sub.order - 1)
            .map(|j| {
                let t = self.trace_unchecked(sub.from_exponent(j as u64), sub.degree, 1);
                self.prime_value(t).expect("absolute trace lies in F_p")
            })
            .collect()
    }

    fn build_subfield(&self, c: u32) -> Subfield {
        let p = self.spec.p;
        let d = self.spec.d as usize;
        let sub_order = p.pow(c);
        let step = self.group / (sub_order - 1);

        // Gaussian elimination over F_p on coords of 1, g, g^2, ... with g = α^step
        let mut rows: Vec<(usize, Vec<u32>)> = Vec::new();
        let mut k = 0u64;
        while rows.len() < c as usize {
            let mut v = self.coords(self.alpha_pow(k * step as u64));
            k += 1;
            for (pc, row) in &rows {
                let f = v[*pc];
                if f != 0 {
                    for (x, r) in v.iter_mut().zip(row) {
                        *x = (*x + (p - f) * r) % p;
                    }
                }
            }
            let Some(pivot) = v.iter().position(|&x| x != 0) else {
                continue;
            };
            let inv = mod_inv(v[pivot], p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            for (_, row) in rows.iter_mut() {
                let f = row[pivot];
                if f != 0 {
                    for (r, x) in row.iter_mut().zip(&v) {
                        *r = (*r + (p - f) * x) % p;
                    }
                }
            }
            rows.push((pivot, v));
            rows.sort_by_key(|(pc, _)| *pc);
        }
        debug_assert!(rows.iter().all(|(_, r)| r.len() == d));

        let pivots: Vec<usize> = rows.iter().map(|(pc, _)| *pc).collect();
        let basis = rows.iter().map(|(_, r)| self.from_coords(r)).collect();

        let mut index_of = Vec::with_capacity(sub_order as usize - 1);
        let mut elem_of = vec![FieldElem::ZERO; sub_order as usize];
        for j in 0..(sub_order - 1) {
            let a = FieldElem(j * step);
            let mut packed = self.exp[a.0 as usize];
            let mut digits = vec![0u32; d];
            for x in digits.iter_mut() {
                *x = packed % p;
                packed /= p;
            }
            let idx = pivots.iter().rev().fold(0u32, |acc, &pc| acc * p + digits[pc]);
            index_of.push(idx);
            elem_of[idx as usize] = a;
        }

        Subfield {
            order: sub_order,
            degree: c,
            step,
            basis,
            pivots,
            index_of,
            elem_of,
        }
    }
}

fn mod_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|x| a * x % p == 1).expect("nonzero residues are invertible mod a prime")
}

fn validate_modulus(f: &[u32], p: u32, d: u32) -> Result<()> {
    if f.len() != d as usize + 1 || f[d as usize] != 1 {
        return Err(Error::ModulusShape {
            expected: d as usize,
            got: f.len(),
        });
    }
    if let Some(&c) = f.iter().find(|&&c| c >= p) {
        return Err(Error::ModulusCoefficient(c));
    }
    let wide: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    if !poly::is_irreducible(&wide, p as u64) {
        return Err(Error::ModulusNotIrreducible);
    }
    let order = poly::order_of_root(&wide, p as u64);
    if order != (p as u64).pow(d) - 1 {
        return Err(Error::ModulusNotPrimitive { order });
    }
    Ok(())
}
