//! The lattice of class-two varieties `(m, n)`: groups with `x^m = e` and
//! `[x, y]^n = e`, where `n | m / gcd(2, m)`.

use crate::arith::{divides, divisors, gcd, lcm, ord_p, primes_dividing, Valuation};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::verdict::{Verdict, Witness};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variety {
    m: u64,
    n: u64,
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

/// The largest admissible commutator exponent for a given `m`.
fn n_bound(m: u64) -> u64 {
    if m == 0 {
        0
    } else {
        m / gcd(2, m)
    }
}

impl Variety {
    pub fn new(m: u64, n: u64) -> Result<Variety> {
        let bound = n_bound(m);
        if !divides(n, bound) {
            return Err(Error::Variety { m, n, reason: format!("{n} does not divide m/gcd(2,m) = {bound}") });
        }
        Ok(Variety { m, n })
    }

    /// All class-two groups.
    pub fn top() -> Variety {
        Variety { m: 0, n: 0 }
    }

    /// The trivial variety.
    pub fn bottom() -> Variety {
        Variety { m: 1, n: 1 }
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn meet(&self, other: &Variety) -> Variety {
        Variety { m: gcd(self.m, other.m), n: gcd(self.n, other.n) }
    }

    pub fn join(&self, other: &Variety) -> Variety {
        Variety { m: lcm(self.m, other.m), n: lcm(self.n, other.n) }
    }

    /// `self ⊆ other`.
    pub fn is_subvariety_of(&self, other: &Variety) -> bool {
        divides(self.m, other.m) && divides(self.n, other.n)
    }

    /// Membership, with a violating element on failure.
    pub fn contains(&self, g: &Group) -> Verdict {
        let gens = g.generators();
        for &x in gens {
            let o = g.element_order(x);
            if !divides(o, self.m) {
                return Verdict::no(
                    Witness::new("exponent").with("element", g.format(x)).with("order", o.to_string()),
                );
            }
        }
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                let c = g.comm(a, b);
                let o = g.element_order(c);
                if !divides(o, self.n) {
                    return Verdict::no(
                        Witness::new("commutator exponent").with("element", g.format(c)).with("order", o.to_string()),
                    );
                }
            }
        }
        // generators fine; a product of two generators may still have order 2L
        if !divides(g.exponent(), self.m) {
            for (i, &a) in gens.iter().enumerate() {
                for &b in &gens[i + 1..] {
                    let ab = g.mul(a, b);
                    let o = g.element_order(ab);
                    if !divides(o, self.m) {
                        return Verdict::no(
                            Witness::new("exponent").with("element", g.format(ab)).with("order", o.to_string()),
                        );
                    }
                }
            }
            unreachable!("exponent exceeds m but no generator product witnesses it");
        }
        Verdict::yes()
    }

    pub fn contains_group(&self, g: &Group) -> bool {
        divides(g.exponent(), self.m) && divides(g.derived_exponent(), self.n)
    }

    /// `β = lcm(m/n, n)` (`0` when `m = n = 0`) and `ζ = lcm(m/q, n)`.
    pub fn exponent_constants(&self, q: u64) -> Result<(u64, u64)> {
        if q == 0 || !divides(q, self.n) {
            return Err(Error::Precondition(format!("q = {q} must be a positive divisor of n = {}", self.n)));
        }
        Ok((self.beta(), lcm(self.m / q, self.n)))
    }

    pub fn beta(&self) -> u64 {
        if self.n == 0 {
            0
        } else {
            lcm(self.m / self.n, self.n)
        }
    }

    pub fn zeta(&self, q: u64) -> u64 {
        lcm(self.m / q, self.n)
    }

    /// Valid varieties `(m, n)` with `m` and `n` drawn from the divisors of
    /// `bound` together with `0`.
    pub fn sublattice(bound: u64) -> Vec<Variety> {
        let mut vals = divisors(bound);
        vals.push(0);
        let mut out = Vec::new();
        for &m in &vals {
            for &n in &vals {
                if let Ok(v) = Variety::new(m, n) {
                    out.push(v);
                }
            }
        }
        out
    }
}

/// `(exp G, exp G')`.
pub fn minimal_variety(g: &Group) -> Variety {
    Variety::new(g.exponent(), g.derived_exponent()).expect("a class-two group determines a valid variety")
}

/// Primes to examine for a per-prime condition on the given parameters: the
/// primes dividing nonzero parameters, plus one prime dividing none of them
/// (all such primes behave alike).
fn relevant_primes(params: &[u64]) -> Vec<u64> {
    let mut ps: Vec<u64> = Vec::new();
    let mut prod: u64 = 1;
    for &x in params {
        if x != 0 {
            for p in primes_dividing(x) {
                if !ps.contains(&p) {
                    ps.push(p);
                }
            }
            prod = lcm(prod, x);
        }
    }
    let generic = (2..).find(|&p| crate::arith::is_prime(p) && prod % p != 0).unwrap();
    ps.push(generic);
    ps.sort_unstable();
    ps
}

fn check_inclusion(v: &Variety, w: &Variety) -> Result<()> {
    if v.is_subvariety_of(w) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{v} is not contained in {w}")))
    }
}

/// Whether every strong base in `v` stays a strong base in the larger `w`.
pub fn strong_base_transfer(v: &Variety, w: &Variety) -> Result<bool> {
    check_inclusion(v, w)?;
    Ok(relevant_primes(&[v.m, v.n, w.m, w.n]).into_iter().all(|p| {
        let (n, m, n2, m2) = (ord_p(p, v.n), ord_p(p, v.m), ord_p(p, w.n), ord_p(p, w.m));
        (n == 0u32 && n2 == 0u32) || n == m || (n == n2 && m == m2)
    }))
}

/// Whether every special base in `v` stays a special base in the larger `w`.
pub fn special_base_transfer(v: &Variety, w: &Variety) -> Result<bool> {
    check_inclusion(v, w)?;
    Ok(relevant_primes(&[v.m, v.n, w.m, w.n]).into_iter().all(|p| {
        let (n, m, n2, m2) = (ord_p(p, v.n), ord_p(p, v.m), ord_p(p, w.n), ord_p(p, w.m));
        let le1 = |x: Valuation| x <= 1u32;
        (le1(n) && le1(n2)) || (n == m && m == n2) || (n == n2 && m == m2)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(m: u64, n: u64) -> Variety {
        Variety::new(m, n).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Variety::new(4, 2).is_ok());
        assert!(Variety::new(4, 4).is_err());
        assert!(Variety::new(0, 0).is_ok());
        assert!(Variety::new(0, 7).is_ok());
        assert!(Variety::new(6, 3).is_ok());
        assert!(Variety::new(3, 0).is_err());
    }

    #[test]
    fn lattice_examples() {
        assert_eq!(v(8, 2).meet(&v(12, 2)), v(4, 2));
        assert_eq!(v(4, 2).join(&v(3, 3)), v(12, 6));
        assert_eq!(v(8, 4).meet(&Variety::top()), v(8, 4));
        assert_eq!(v(8, 4).meet(&v(12, 6)), v(4, 2));
        assert_eq!(v(0, 4).meet(&v(4, 2)), v(4, 2));
    }

    #[test]
    fn constants() {
        assert_eq!(v(8, 4).exponent_constants(2).unwrap(), (4, 4));
        assert_eq!(Variety::top().beta(), 0);
        assert_eq!(v(0, 6).exponent_constants(3).unwrap().1, 0);
        assert!(v(8, 4).exponent_constants(3).is_err());
    }

    #[test]
    fn transfer_examples() {
        assert!(!strong_base_transfer(&v(32, 2), &v(64, 2)).unwrap());
        assert!(strong_base_transfer(&v(8, 4), &v(8, 4)).unwrap());
        assert!(strong_base_transfer(&v(27, 27), &v(0, 27)).unwrap());
        assert!(strong_base_transfer(&v(8, 4), &v(4, 2)).is_err());
        assert!(!special_base_transfer(&v(3, 3), &v(9, 9)).unwrap());
        assert!(special_base_transfer(&v(0, 2), &v(0, 6)).unwrap());
        assert!(strong_base_transfer(&v(0, 0), &v(0, 0)).unwrap());
    }

    fn small_variety() -> impl Strategy<Value = Variety> {
        let vals = vec![0u64, 1, 2, 3, 4, 6, 8, 12, 16, 24, 36, 48];
        (prop::sample::select(vals.clone()), prop::sample::select(vals))
            .prop_filter_map("valid", |(m, n)| Variety::new(m, n).ok())
    }

    proptest! {
        #[test]
        fn lattice_laws(a in small_variety(), b in small_variety(), c in small_variety()) {
            prop_assert_eq!(a.meet(&b), b.meet(&a));
            prop_assert_eq!(a.join(&b), b.join(&a));
            prop_assert_eq!(a.meet(&b).meet(&c), a.meet(&b.meet(&c)));
            prop_assert_eq!(a.join(&b).join(&c), a.join(&b.join(&c)));
            prop_assert_eq!(a.meet(&a), a);
            prop_assert_eq!(a.join(&a), a);
            prop_assert_eq!(a.meet(&a.join(&b)), a);
            prop_assert_eq!(a.join(&a.meet(&b)), a);
            prop_assert!(Variety::new(a.join(&b).m(), a.join(&b).n()).is_ok());
            prop_assert!(Variety::new(a.meet(&b).m(), a.meet(&b).n()).is_ok());
        }

        #[test]
        fn meet_is_greatest_lower_bound(a in small_variety(), b in small_variety(), c in small_variety()) {
            let m = a.meet(&b);
            prop_assert!(m.is_subvariety_of(&a) && m.is_subvariety_of(&b));
            if c.is_subvariety_of(&a) && c.is_subvariety_of(&b) {
                prop_assert!(c.is_subvariety_of(&m));
            }
        }
    }

    /// Reflexivity and transitivity of both transfer predicates on the divisor
    /// lattice of 2^6 * 3^3.
    #[test]
    fn transfer_reflexive_and_transitive() {
        let all: Vec<Variety> = Variety::sublattice(64 * 27);
        // thin the lattice to keep the cubic loop short
        let sample: Vec<Variety> = all.iter().copied().step_by(3).collect();
        for a in &sample {
            assert!(strong_base_transfer(a, a).unwrap());
            assert!(special_base_transfer(a, a).unwrap());
        }
        for a in &sample {
            for b in sample.iter().filter(|b| a.is_subvariety_of(b)) {
                for c in sample.iter().filter(|c| b.is_subvariety_of(c)) {
                    if strong_base_transfer(a, b).unwrap() && strong_base_transfer(b, c).unwrap() {
                        assert!(strong_base_transfer(a, c).unwrap(), "{a} {b} {c}");
                    }
                    if special_base_transfer(a, b).unwrap() && special_base_transfer(b, c).unwrap() {
                        assert!(special_base_transfer(a, c).unwrap(), "{a} {b} {c}");
                    }
                }
            }
        }
    }
}
