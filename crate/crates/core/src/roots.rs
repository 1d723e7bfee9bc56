//! Whether elements can acquire `q`-th roots modulo commutators in some
//! overgroup inside a variety.

use crate::arith::{divides, lcm};
use crate::classes::{Classes, Mask};
use crate::coproduct::require_member;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::variety::Variety;
use crate::verdict::{Verdict, Witness};
use std::collections::HashMap;

/// Outcome of a root-adjunction query. When `exact_roots` is set and the
/// verdict is positive, the overgroup can be chosen with genuine `q`-th roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootVerdict {
    pub verdict: Verdict,
    pub exact_roots: bool,
}

fn check_q(q: u64, v: &Variety) -> Result<()> {
    if q == 0 || !divides(q, v.n()) {
        return Err(Error::Precondition(format!("q = {q} must be a positive divisor of n = {}", v.n())));
    }
    Ok(())
}

/// The modulus coupling the exponents `β` and `γ`: `n/q`, or for `n = 0` the
/// exponent of `Q`, which is all a finite group can see.
pub(crate) fn coupling_modulus(cl: &Classes, n: u64, q: u64) -> u64 {
    if n == 0 {
        cl.exponent()
    } else {
        n / q
    }
}

/// For classes `x`, `y`: which targets `t ∈ qQ` are `αx + βy`, and with
/// which residues. For the slot of `t`, `first[slot·M + r]` holds `α + 1`
/// for some `α` with `αx + βy = t`, `β ≡ r`, and `second[slot·M + r]` holds
/// `δ + 1` for some `δ` with `r·x + δy = t` (`r` read as `γ`). Zero means no
/// solution. Only targets in `⟨x, y⟩` get a slot.
pub(crate) struct PairTable {
    pub modulus: u64,
    slots: HashMap<u64, usize>,
    targets: Vec<u64>,
    first: Vec<u32>,
    second: Vec<u32>,
}

impl PairTable {
    pub(crate) fn new(cl: &Classes, x: u64, y: u64, in_qq: &[bool], modulus: u64) -> PairTable {
        let bound = lcm(cl.exponent(), modulus);
        let m = modulus as usize;
        let mut table = PairTable { modulus, slots: HashMap::new(), targets: Vec::new(), first: Vec::new(), second: Vec::new() };
        let mut ax = 0u64;
        for a in 0..bound {
            let mut t = ax;
            for b in 0..bound {
                if in_qq[t as usize] {
                    let slot = table.slot(t);
                    let i1 = slot * m + (b % modulus) as usize;
                    if table.first[i1] == 0 {
                        table.first[i1] = a as u32 + 1;
                    }
                    let i2 = slot * m + (a % modulus) as usize;
                    if table.second[i2] == 0 {
                        table.second[i2] = b as u32 + 1;
                    }
                }
                t = cl.add(t, y);
            }
            ax = cl.add(ax, x);
        }
        table
    }

    fn slot(&mut self, t: u64) -> usize {
        let m = self.modulus as usize;
        let next = self.targets.len();
        let slot = *self.slots.entry(t).or_insert(next);
        if slot == next {
            self.targets.push(t);
            self.first.resize((next + 1) * m, 0);
            self.second.resize((next + 1) * m, 0);
        }
        slot
    }

    /// Targets with at least one solution, in discovery order.
    pub(crate) fn targets(&self) -> &[u64] {
        &self.targets
    }

    pub(crate) fn first_at(&self, t: u64, r: usize) -> u32 {
        self.slots.get(&t).map_or(0, |&s| self.first[s * self.modulus as usize + r])
    }

    pub(crate) fn second_at(&self, t: u64, r: usize) -> u32 {
        self.slots.get(&t).map_or(0, |&s| self.second[s * self.modulus as usize + r])
    }

    pub(crate) fn first_mask(&self, t: u64) -> Mask {
        self.mask(&self.first, t)
    }

    pub(crate) fn second_mask(&self, t: u64) -> Mask {
        self.mask(&self.second, t)
    }

    fn mask(&self, table: &[u32], t: u64) -> Mask {
        let m = self.modulus as usize;
        let mut mask = Mask::new(self.modulus);
        if let Some(&s) = self.slots.get(&t) {
            for r in 0..m {
                if table[s * m + r] != 0 {
                    mask.set(r as u64);
                }
            }
        }
        mask
    }
}

/// Single root: `x^ζ = e` and `[g, x] = e` whenever `g^q ≡ x^α (mod GⁿG′)`.
pub fn can_adjoin_root(g: &Group, x: Elem, q: u64, v: &Variety) -> Result<RootVerdict> {
    check_q(q, v)?;
    require_member(v, g)?;
    let exact_roots = divides(q * v.n(), v.m());
    let zeta = v.zeta(q);
    if g.pow(x, zeta as i64) != 0 {
        let w = Witness::new("i").with("x", g.format(x)).with("zeta", zeta.to_string());
        return Ok(RootVerdict { verdict: Verdict::no(w), exact_roots });
    }
    let cl = Classes::new(g, v.n())?;
    let xc = cl.class_of(x);
    let powers = cl.scale_table(q);
    // α for each class in ⟨x̄⟩
    let mut alpha = vec![u64::MAX; cl.size() as usize];
    let mut t = 0;
    for a in 0..cl.exponent().max(1) {
        if alpha[t as usize] == u64::MAX {
            alpha[t as usize] = a;
        }
        t = cl.add(t, xc);
    }
    for h in 0..cl.size() {
        let a = alpha[powers[h as usize] as usize];
        if a != u64::MAX {
            let r = cl.rep(h);
            if !g.commutes(r, x) {
                let w = Witness::new("ii")
                    .with("g", g.format(r))
                    .with("alpha", a.to_string())
                    .with("commutator", g.format(g.comm(r, x)));
                return Ok(RootVerdict { verdict: Verdict::no(w), exact_roots });
            }
        }
    }
    Ok(RootVerdict { verdict: Verdict::yes(), exact_roots })
}

/// Two simultaneous roots modulo commutators.
pub fn can_adjoin_two_roots(g: &Group, x: Elem, y: Elem, q: u64, v: &Variety) -> Result<RootVerdict> {
    check_q(q, v)?;
    require_member(v, g)?;
    let exact_roots = divides(q * v.n(), v.m());
    let zeta = v.zeta(q);
    for (label, z) in [("x", x), ("y", y)] {
        if g.pow(z, zeta as i64) != 0 {
            let w = Witness::new("i").with(label, g.format(z)).with("zeta", zeta.to_string());
            return Ok(RootVerdict { verdict: Verdict::no(w), exact_roots });
        }
    }
    let cl = Classes::new(g, v.n())?;
    let powers = cl.scale_table(q);
    let mut in_qq = vec![false; cl.size() as usize];
    for &p in &powers {
        in_qq[p as usize] = true;
    }
    let modulus = coupling_modulus(&cl, v.n(), q);
    let table = PairTable::new(&cl, cl.class_of(x), cl.class_of(y), &in_qq, modulus);
    let m = modulus as usize;
    for h1 in 0..cl.size() {
        let t1 = powers[h1 as usize];
        let g1 = cl.rep(h1);
        let c1 = g.comm(g1, x);
        for h2 in 0..cl.size() {
            let t2 = powers[h2 as usize];
            let g2 = cl.rep(h2);
            let prod = g.mul(c1, g.comm(g2, y));
            if prod == 0 {
                continue;
            }
            // β ≡ γ (mod n/q) with both congruences solvable
            for r in 0..m {
                let a = table.first_at(t1, r);
                let d = table.second_at(t2, r);
                if a != 0 && d != 0 {
                    let w = Witness::new("ii")
                        .with("g1", g.format(g1))
                        .with("g2", g.format(g2))
                        .with("alpha", (a - 1).to_string())
                        .with("beta", r.to_string())
                        .with("gamma", r.to_string())
                        .with("delta", (d - 1).to_string());
                    return Ok(RootVerdict { verdict: Verdict::no(w), exact_roots });
                }
            }
        }
    }
    Ok(RootVerdict { verdict: Verdict::yes(), exact_roots })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::PcBuilder;
    use crate::subgroup::Subgroup;

    fn guiding_b() -> (Group, Elem, Elem) {
        let mut b = PcBuilder::new();
        let x = b.generator("x", 4);
        let y = b.generator("y", 4);
        let c = b.generator("c", 4);
        b.comm(y, x, vec![(c, 1)]);
        let m = Group::from_pc("M", b.build().unwrap()).unwrap();
        let x2 = m.word(&[(0, 2)]).unwrap();
        let yy = m.word(&[(1, 1)]).unwrap();
        let sub = Subgroup::generate(&m, &[x2, yy]).unwrap();
        let bg = sub.to_group("B");
        (bg.clone(), bg.local_of(x2).unwrap(), bg.local_of(yy).unwrap())
    }

    #[test]
    fn square_root_of_noncentral_square() {
        let (b, x2, y) = guiding_b();
        let v = Variety::new(4, 2).unwrap();
        let r = can_adjoin_root(&b, x2, 2, &v).unwrap();
        assert!(!r.verdict.value);
        let w = r.verdict.witness.unwrap();
        assert_eq!(w.clause, "ii");
        assert_eq!(w.get("g"), Some(b.format(y).as_str()));
    }

    #[test]
    fn elements_already_powers_take_roots() {
        let (b, _, _) = guiding_b();
        let v = Variety::new(8, 4).unwrap();
        let r = can_adjoin_root(&b, 0, 2, &v).unwrap();
        assert!(r.verdict.value);
        assert!(r.exact_roots);
        // commutators are central of order dividing 4
        let c = b.comm(b.generators()[0], b.generators()[1]);
        assert!(can_adjoin_root(&b, c, 2, &v).unwrap().verdict.value);
    }

    #[test]
    fn two_roots_reduce_to_one() {
        let (b, x2, _) = guiding_b();
        let v = Variety::new(4, 2).unwrap();
        for x in 0..b.order() {
            let one = can_adjoin_root(&b, x, 2, &v).unwrap().verdict.value;
            let two = can_adjoin_two_roots(&b, x, 0, 2, &v).unwrap().verdict.value;
            assert_eq!(one, two, "x = {}", b.format(x));
        }
        assert!(!can_adjoin_two_roots(&b, x2, 0, 2, &v).unwrap().verdict.value);
    }

    #[test]
    fn q_must_divide_n() {
        let (b, x2, _) = guiding_b();
        let v = Variety::new(4, 2).unwrap();
        assert!(can_adjoin_root(&b, x2, 3, &v).is_err());
    }
}
