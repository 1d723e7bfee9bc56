//! Integer helpers with the zero conventions used throughout the crate:
//! `0` divides only `0`, `gcd(0, b) = b`, `lcm(0, b) = 0`, and congruence
//! modulo `0` is equality.

use std::cmp::Ordering;
use std::fmt;

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
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// `a | b`, where zero divides only zero.
pub fn divides(a: u64, b: u64) -> bool {
    if a == 0 {
        b == 0
    } else {
        b % a == 0
    }
}

/// `x ≡ y (mod modulus)` for signed residues; modulus 0 means equality.
pub fn congruent(x: i64, y: i64, modulus: u64) -> bool {
    if modulus == 0 {
        x == y
    } else {
        (x - y).rem_euclid(modulus as i64) == 0
    }
}

/// Extended Euclid on signed integers: returns `(g, s, t)` with `s*a + t*b = g >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `m` when it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i64, m as i64);
    if g != 1 {
        return None;
    }
    Some(s.rem_euclid(m as i64) as u64)
}

/// Prime factorisation as `(p, e)` pairs in increasing order of `p`. Empty for 0 and 1.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_dividing(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

/// Positive divisors of `n > 0` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n > 0, "divisors of 0 are unbounded");
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// `1` together with every prime power dividing `n > 0`, increasing.
pub fn prime_power_divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            out.push(pk);
        }
    }
    out.sort_unstable();
    out
}

pub fn is_squarefree(n: u64) -> bool {
    n != 0 && factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn is_prime_power(n: u64) -> bool {
    factorize(n).len() == 1
}

/// p-adic valuation with `ord_p(0) = ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }
}

impl PartialEq<u32> for Valuation {
    fn eq(&self, other: &u32) -> bool {
        *self == Valuation::Finite(*other)
    }
}

impl PartialOrd<u32> for Valuation {
    fn partial_cmp(&self, other: &u32) -> Option<Ordering> {
        self.partial_cmp(&Valuation::Finite(*other))
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

pub fn ord_p(p: u64, mut n: u64) -> Valuation {
    if n == 0 {
        return Valuation::Infinite;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Valuation::Finite(v)
}

pub fn pow_u64(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("integer overflow in power")
}

/// The `p`-part of `n > 0`.
pub fn p_part(p: u64, n: u64) -> u64 {
    match ord_p(p, n) {
        Valuation::Finite(v) => pow_u64(p, v),
        Valuation::Infinite => 0,
    }
}
