//! Elementary number theory on machine integers.

use super::FieldError;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Number of divisors of `n`.
pub fn tau(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(_, e)| e as u64 + 1)
        .product()
}

pub fn pow_mod(base: u64, mut exp: u128, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = base as u128 % m;
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Multiplicative order of `q` modulo `n`: least `t >= 1` with `q^t = 1 (mod n)`.
///
/// For `n = 1` every residue is the identity and the order is 1.
pub fn mul_order(q: u64, n: u64) -> Result<u64, FieldError> {
    if n == 0 {
        return Err(FieldError::NotCoprime { q, n });
    }
    if n == 1 {
        return Ok(1);
    }
    if gcd(q % n, n) != 1 {
        return Err(FieldError::NotCoprime { q, n });
    }
    let mut t = euler_phi(n);
    for r in prime_divisors(t) {
        while t.is_multiple_of(r) && pow_mod(q, (t / r) as u128, n) == 1 {
            t /= r;
        }
    }
    Ok(t)
}

/// A generating set of the unit group of `Z/n`, chosen greedily from 2 upwards.
pub fn unit_group_generators(n: u64) -> Vec<u64> {
    if n <= 2 {
        return Vec::new();
    }
    let mut seen = vec![false; n as usize];
    seen[1] = true;
    let mut members = vec![1u64];
    let mut gens = Vec::new();
    for u in 2..n {
        if gcd(u, n) != 1 || seen[u as usize] {
            continue;
        }
        gens.push(u);
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in &gens {
                let y = x * g % n;
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
    }
    gens
}
