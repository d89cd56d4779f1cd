//! Exact elements of Z[ξ_p] for a primitive p-th root of unity ξ_p.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Σ coeffs[j]·ξ^j, kept in canonical form with `coeffs[p-1] == 0`.
///
/// Since 1 + ξ + … + ξ^(p-1) = 0, the canonical form is unique, so derived
/// equality and ordering are equality and a total order on Z[ξ_p].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycInt {
    coeffs: Vec<i64>,
}

impl CycInt {
    pub fn zero(p: u32) -> Self {
        CycInt {
            coeffs: vec![0; p as usize],
        }
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = n;
        z
    }

    /// ξ^k.
    pub fn root_power(p: u32, k: u64) -> Self {
        let mut counts = vec![0i64; p as usize];
        counts[(k % p as u64) as usize] = 1;
        Self::from_coeffs(counts)
    }

    /// Σ counts[j]·ξ^j for arbitrary coefficients.
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        assert!(!coeffs.is_empty());
        let top = *coeffs.last().unwrap();
        if top != 0 {
            for c in coeffs.iter_mut() {
                *c -= top;
            }
        }
        CycInt { coeffs }
    }

    pub fn p(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// The value as a rational integer, if it is one.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p(), other.p());
        Self::from_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p(), other.p());
        Self::from_coeffs(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, n: i64) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * n).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.p(), other.p());
        let p = self.coeffs.len();
        let mut out = vec![0i64; p];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[(i + j) % p] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    /// Complex conjugate, ξ ↦ ξ^(-1).
    pub fn conj(&self) -> Self {
        let p = self.coeffs.len();
        Self::from_coeffs((0..p).map(|j| self.coeffs[(p - j) % p]).collect())
    }

    /// |z|^2 = z · conj(z), which always lies in Z[ξ_p] ∩ R.
    pub fn norm_sq(&self) -> Self {
        self.mul(&self.conj())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            } else if c < 0 {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match j {
                0 => write!(f, "{a}")?,
                _ if a == 1 => write!(f, "z^{j}")?,
                _ => write!(f, "{a}z^{j}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        // 1 + ξ + ξ^2 = 0 for p = 3
        assert!(CycInt::from_coeffs(vec![1, 1, 1]).is_zero());
        assert_eq!(CycInt::from_coeffs(vec![5, 2, 2]).as_integer(), Some(3));
        // p = 2: ξ = -1
        assert_eq!(CycInt::root_power(2, 1).as_integer(), Some(-1));
        assert_eq!(CycInt::from_coeffs(vec![3, 7]).as_integer(), Some(-4));
        assert_eq!(CycInt::root_power(5, 2).as_integer(), None);
    }

    #[test]
    fn gauss_period_squares() {
        // η = ξ + ξ^4 for p = 5 satisfies η^2 + η - 1 = 0
        let eta = CycInt::from_coeffs(vec![0, 1, 0, 0, 1]);
        let lhs = eta.mul(&eta).add(&eta).sub(&CycInt::from_int(5, 1));
        assert!(lhs.is_zero());
        assert_eq!(eta.conj(), eta);
    }

    #[test]
    fn display() {
        assert_eq!(CycInt::from_int(3, -6).to_string(), "-6");
        // ξ + ξ^4 = -1 - ξ^2 - ξ^3 in canonical form
        assert_eq!(CycInt::from_coeffs(vec![0, 1, 0, 0, 1]).to_string(), "-1 - z^2 - z^3");
        assert_eq!(CycInt::root_power(3, 1).to_string(), "z^1");
    }

    fn cyc(p: u32) -> impl Strategy<Value = CycInt> {
        prop::collection::vec(-20i64..20, p as usize).prop_map(CycInt::from_coeffs)
    }

    proptest! {
        #[test]
        fn ring_laws(a in cyc(5), b in cyc(5), c in cyc(5)) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.add(&b).sub(&b), a.clone());
            prop_assert_eq!(a.mul(&b).conj(), a.conj().mul(&b.conj()));
            prop_assert_eq!(a.norm_sq().conj(), a.norm_sq());
        }

        #[test]
        fn integers_embed(x in -1000i64..1000, y in -1000i64..1000, p in prop::sample::select(vec![2u32, 3, 5, 7])) {
            let (a, b) = (CycInt::from_int(p, x), CycInt::from_int(p, y));
            prop_assert_eq!(a.mul(&b).as_integer(), Some(x * y));
            prop_assert_eq!(a.add(&b).as_integer(), Some(x + y));
        }
    }
}
