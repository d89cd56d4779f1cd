//! Dense polynomials over a prime field, just enough to select and validate
//! the defining modulus of a field table.
//!
//! Coefficients are stored constant term first. All routines assume the
//! leading coefficient of a modulus is 1.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Remainder of `a` modulo the monic polynomial `f`.
fn rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let d = f.len() - 1;
    trim(&mut a);
    while a.len() > d {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - d;
        for (i, &c) in f.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - lead * c % p) % p;
        }
        trim(&mut a);
    }
    a
}

fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(prod, f, p)
}

fn pow_mod(base: &[u64], mut e: u128, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = rem(base.to_vec(), f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(&result, &b, f, p);
        }
        b = mul_mod(&b, &b, f, p);
        e >>= 1;
    }
    result
}

fn gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // make b monic so `rem` applies
        let inv = inv_mod(*b.last().unwrap(), p);
        for c in b.iter_mut() {
            *c = *c * inv % p;
        }
        let r = rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test: `f` of degree d is irreducible iff
/// gcd(x^(p^i) - x, f) = 1 for every 1 <= i <= d/2.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if f[0] == 0 {
        return d == 1;
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = pow_mod(&h, p as u128, f, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = gcd(f.to_vec(), diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Multiplicative order of x in F_p[x]/(f), assuming `f` is irreducible of
/// degree d. Computed from the factorization of p^d - 1.
pub(crate) fn order_of_root(f: &[u64], p: u64) -> u64 {
    let d = (f.len() - 1) as u32;
    let group = p.pow(d) - 1;
    let x = vec![0u64, 1];
    let mut order = group;
    for l in prime_factors(group) {
        while order.is_multiple_of(l) && pow_mod(&x, (order / l) as u128, f, p) == vec![1] {
            order /= l;
        }
    }
    order
}

/// Decode `n` as the coefficient vector of a monic degree-d polynomial: the
/// base-p digits of `n` are c_0, ..., c_{d-1}, constant term least significant.
pub(crate) fn monic_from_index(n: u64, p: u64, d: usize) -> Vec<u64> {
    let mut coeffs = Vec::with_capacity(d + 1);
    let mut rest = n;
    for _ in 0..d {
        coeffs.push(rest % p);
        rest /= p;
    }
    coeffs.push(1);
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(prime_factors(728), vec![2, 7, 13]);
        assert_eq!(prime_factors(15), vec![3, 5]);
    }

    #[test]
    fn irreducibility_over_f2() {
        // x^4 + x + 1, x^4 + x^3 + x^2 + x + 1 irreducible; x^4 + x^2 + 1 = (x^2+x+1)^2
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(!is_irreducible(&[0, 1, 0, 0, 1], 2));
    }

    #[test]
    fn root_orders() {
        assert_eq!(order_of_root(&[1, 1, 0, 0, 1], 2), 15);
        assert_eq!(order_of_root(&[1, 1, 1, 1, 1], 2), 5);
        // x^2 + 1 over F_3: x^2 = -1, order 4 of 8
        assert_eq!(order_of_root(&[1, 0, 1], 3), 4);
    }

    #[test]
    fn decode_index() {
        assert_eq!(monic_from_index(3, 2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(monic_from_index(5, 3, 2), vec![2, 1, 1]);
    }
}
