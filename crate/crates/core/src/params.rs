//! PDS parameters (v, k, λ, μ) with the derived restricted eigenvalues and
//! their multiplicities.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cycint::CycInt;
use crate::error::{Error, Result};

/// The two nonprincipal character values of a regular PDS, which are the
/// roots of z^2 - (λ-μ)z - (k-μ).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Eigenvalues {
    Integral { pos: i64, neg: i64 },
    /// ((λ-μ) ± √disc)/2 with disc not a perfect square; happens only for
    /// conference-type parameters such as Paley sets of prime order.
    Conjugate { trace: i64, disc: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSet {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
    pub eigenvalues: Eigenvalues,
    /// multiplicity of the larger eigenvalue
    pub f: u64,
    /// multiplicity of the smaller eigenvalue
    pub g: u64,
}

/// Just (v, k, λ, μ), as stored in exported sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claimed {
    pub v: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

fn isqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

impl ParamSet {
    /// Validates k^2 = μv + (λ-μ)k + (k-μ) and derives eigenvalues and
    /// multiplicities from 1 + f + g = v and k + fθ₊ + gθ₋ = 0.
    pub fn new(v: u64, k: u64, lambda: u64, mu: u64) -> Result<Self> {
        let (vi, ki, li, mi) = (v as i128, k as i128, lambda as i128, mu as i128);
        if k == 0 || k >= v {
            return Err(Error::Parameters(format!("need 0 < k < v, got v={v} k={k}")));
        }
        if ki * ki != mi * vi + (li - mi) * ki + (ki - mi) {
            return Err(Error::Parameters(format!(
                "({v}, {k}, {lambda}, {mu}) violates k^2 = mu*v + (lambda-mu)*k + (k-mu)"
            )));
        }
        let trace = lambda as i64 - mu as i64;
        let disc = trace * trace + 4 * (k as i64 - mu as i64);
        if disc <= 0 {
            return Err(Error::Parameters(format!(
                "({v}, {k}, {lambda}, {mu}) has a degenerate eigenvalue discriminant {disc}"
            )));
        }
        let (eigenvalues, f, g) = match isqrt(disc) {
            Some(root) => {
                if (trace + root) % 2 != 0 {
                    return Err(Error::Parameters(format!(
                        "({v}, {k}, {lambda}, {mu}) has half-integral eigenvalues"
                    )));
                }
                let pos = (trace + root) / 2;
                let neg = (trace - root) / 2;
                // f(θ₊ - θ₋) = -k - (v-1)θ₋
                let num = -(k as i64) - (v as i64 - 1) * neg;
                if num % root != 0 || num < 0 {
                    return Err(Error::Parameters(format!(
                        "({v}, {k}, {lambda}, {mu}) has non-integral multiplicities"
                    )));
                }
                let f = (num / root) as u64;
                (Eigenvalues::Integral { pos, neg }, f, v - 1 - f)
            }
            None => {
                // irrational conjugates must share a multiplicity, and their
                // sum λ-μ then forces k = -(v-1)(λ-μ)/2
                if !(v - 1).is_multiple_of(2) || 2 * k as i64 != -((v as i64 - 1) * trace) {
                    return Err(Error::Parameters(format!(
                        "({v}, {k}, {lambda}, {mu}) has irrational eigenvalues with unequal multiplicities"
                    )));
                }
                let f = (v - 1) / 2;
                (Eigenvalues::Conjugate { trace, disc }, f, f)
            }
        };
        Ok(ParamSet {
            v,
            k,
            lambda,
            mu,
            eigenvalues,
            f,
            g,
        })
    }

    pub fn from_claimed(c: Claimed) -> Result<Self> {
        Self::new(c.v, c.k, c.lambda, c.mu)
    }

    pub fn claimed(&self) -> Claimed {
        Claimed {
            v: self.v,
            k: self.k,
            lambda: self.lambda,
            mu: self.mu,
        }
    }

    /// (θ₊, θ₋) when both are rational integers.
    pub fn integral_eigenvalues(&self) -> Option<(i64, i64)> {
        match self.eigenvalues {
            Eigenvalues::Integral { pos, neg } => Some((pos, neg)),
            Eigenvalues::Conjugate { .. } => None,
        }
    }

    /// Whether z is a root of z^2 - (λ-μ)z - (k-μ), exactly in Z[ξ_p].
    pub fn is_eigenvalue(&self, z: &CycInt) -> bool {
        let p = z.p();
        let trace = self.lambda as i64 - self.mu as i64;
        z.mul(z)
            .sub(&z.scale(trace))
            .sub(&CycInt::from_int(p, self.k as i64 - self.mu as i64))
            .is_zero()
    }

    /// The Latin-square-type comparison: returns (n, r, ε) when
    /// (v, k, λ, μ) = (n², r(n-ε), εn + r² - 3εr, r² - εr) for ε = ±1.
    pub fn latin_square_type(&self) -> Option<(u64, u64, i8)> {
        let n = isqrt(self.v as i64)?;
        for eps in [1i64, -1] {
            let denom = n - eps;
            if denom <= 0 || self.k as i64 % denom != 0 {
                continue;
            }
            let r = self.k as i64 / denom;
            if eps * n + r * r - 3 * eps * r == self.lambda as i64 && r * r - eps * r == self.mu as i64 {
                return Some((n as u64, r as u64, eps as i8));
            }
        }
        None
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.v, self.k, self.lambda, self.mu)
    }
}
