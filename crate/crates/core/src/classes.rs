//! Arithmetic in `Q = G/GⁿG′` on dense class indices, with a fixed
//! representative in `G` for every class. Every criterion that only depends on
//! classes modulo `GⁿG′` runs here instead of on `G`.

use crate::abelian::{invariant_factors, AbelianQuotient, FinAb};
use crate::arith::{divisors, prime_power_divisors};
use crate::budget;
use crate::error::Result;
use crate::group::{Elem, Group};
use crate::subgroup::{derived_subgroup, power_derived, Subgroup};

pub(crate) struct Classes {
    quotient: AbelianQuotient,
    reps: Vec<Elem>,
}

impl Classes {
    pub(crate) fn new(g: &Group, n: u64) -> Result<Classes> {
        let kernel = power_derived(g, n)?;
        let quotient = invariant_factors(g, &kernel)?;
        let ab = quotient.finab().clone();
        budget::ensure(ab.order())?;
        let reps = (0..ab.order()).map(|i| quotient.lift(&ab.coords(i))).collect();
        Ok(Classes { quotient, reps })
    }

    pub(crate) fn finab(&self) -> &FinAb {
        self.quotient.finab()
    }

    pub(crate) fn size(&self) -> u64 {
        self.finab().order()
    }

    pub(crate) fn exponent(&self) -> u64 {
        self.finab().exponent()
    }

    pub(crate) fn rep(&self, c: u64) -> Elem {
        self.reps[c as usize]
    }

    pub(crate) fn class_of(&self, x: Elem) -> u64 {
        self.quotient.project_index(x)
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        add_index(self.finab().factors(), a, b)
    }

    pub(crate) fn scale_table(&self, q: u64) -> Vec<u64> {
        self.finab().scale_table(q)
    }

    /// Membership bitmap of the subgroup generated by `gens`.
    pub(crate) fn span(&self, gens: &[u64]) -> Vec<bool> {
        let mut inside = vec![false; self.size() as usize];
        inside[0] = true;
        let mut members = vec![0u64];
        for &g in gens {
            if inside[g as usize] {
                continue;
            }
            let mut i = 0;
            while i < members.len() {
                let y = self.add(members[i], g);
                if !inside[y as usize] {
                    inside[y as usize] = true;
                    members.push(y);
                }
                i += 1;
            }
        }
        inside
    }

    /// A generating set of the subgroup with the given membership bitmap.
    pub(crate) fn generators_of(&self, members: &[bool]) -> Vec<u64> {
        let mut gens = Vec::new();
        let mut inside = vec![false; members.len()];
        inside[0] = true;
        for c in 0..members.len() {
            if members[c] && !inside[c] {
                gens.push(c as u64);
                inside = self.span(&gens);
            }
        }
        gens
    }
}

/// The `q` to examine for conditions quantified over `q | n`. For `n > 0`
/// these are the prime-power divisors (with 1) or all divisors; for `n = 0`
/// Mixed-radix sum of two indices of a finite abelian group.
fn add_index(factors: &[u64], mut a: u64, mut b: u64) -> u64 {
    let (mut out, mut place) = (0, 1);
    for &d in factors.iter().rev() {
        out += ((a % d + b % d) % d) * place;
        place *= d;
        a /= d;
        b /= d;
    }
    out
}

/// The commutator pairing `Q × Q → G′`, `(h, x) ↦ [rep h, rep x]`, with
/// values as indices of `G′` in invariant-factor coordinates. It is
/// well defined and bilinear because `G′` is central of exponent dividing `n`.
pub(crate) struct CommForm {
    derived: FinAb,
    /// `basis[i][j]`: index of `[e_i, e_j]` for the unit classes `e_i`.
    basis: Vec<Vec<u64>>,
}

impl CommForm {
    pub(crate) fn new(g: &Group, cl: &Classes) -> Result<CommForm> {
        let dsub = derived_subgroup(g)?;
        let dg = dsub.to_group("D");
        let dq = invariant_factors(&dg, &Subgroup::trivial(&dg))?;
        let ab = cl.finab();
        let units: Vec<Elem> = (0..ab.rank())
            .map(|i| {
                let mut c = ab.zero();
                c[i] = 1;
                cl.rep(ab.index(&c))
            })
            .collect();
        let basis = units
            .iter()
            .map(|&a| {
                units
                    .iter()
                    .map(|&b| dq.project_index(dg.local_of(g.comm(a, b)).expect("commutator lies in G'")))
                    .collect()
            })
            .collect();
        Ok(CommForm { derived: dq.finab().clone(), basis })
    }

    /// `[·, x]` as one value per unit class.
    pub(crate) fn row(&self, cl: &Classes, x: u64) -> Vec<u64> {
        let xc = cl.finab().coords(x);
        self.basis
            .iter()
            .map(|r| r.iter().zip(&xc).fold(0, |acc, (&c, &k)| self.add(acc, self.scale(c, k))))
            .collect()
    }

    /// `[h, x]` from the row of `x`.
    pub(crate) fn eval(&self, cl: &Classes, row: &[u64], mut h: u64) -> u64 {
        let factors = cl.finab().factors();
        let mut acc = 0;
        for (i, &d) in factors.iter().enumerate().rev() {
            let k = h % d;
            h /= d;
            if k != 0 {
                acc = self.add(acc, self.scale(row[i], k));
            }
        }
        acc
    }

    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        add_index(self.derived.factors(), a, b)
    }

    fn scale(&self, mut a: u64, k: u64) -> u64 {
        let (mut out, mut place) = (0, 1);
        for &d in self.derived.factors().iter().rev() {
            out += ((a % d) * (k % d) % d) * place;
            place *= d;
            a /= d;
        }
        out
    }
}

/// every condition depends on `q` only modulo the exponent `e` of the groups
/// involved, so `1..=e` covers all cases.
pub(crate) fn q_values(n: u64, e: u64, prime_powers_only: bool) -> Vec<u64> {
    if n == 0 {
        (1..=e.max(1)).collect()
    } else if prime_powers_only {
        prime_power_divisors(n)
    } else {
        divisors(n)
    }
}

/// Small bitsets over residues `0..modulus`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Mask(Vec<u64>);

impl Mask {
    pub(crate) fn new(modulus: u64) -> Mask {
        Mask(vec![0; (modulus as usize).div_ceil(64).max(1)])
    }

    pub(crate) fn set(&mut self, i: u64) {
        self.0[(i / 64) as usize] |= 1 << (i % 64);
    }

    pub(crate) fn get(&self, i: u64) -> bool {
        self.0[(i / 64) as usize] & (1 << (i % 64)) != 0
    }

    pub(crate) fn or(&mut self, other: &Mask) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub(crate) fn meets(&self, other: &Mask) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    /// The residues shifted up by one modulo `modulus`.
    pub(crate) fn shifted(&self, modulus: u64) -> Mask {
        let mut out = Mask::new(modulus);
        for i in 0..modulus {
            if self.get(i) {
                out.set((i + 1) % modulus);
            }
        }
        out
    }
}
