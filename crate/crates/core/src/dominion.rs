//! Dominions of subgroups in a variety.

use crate::classes::{q_values, Classes};
use crate::coproduct::require_member;
use crate::error::Result;
use crate::group::Elem;
use crate::subgroup::{power_derived, Subgroup};
use crate::variety::Variety;

/// `⟨H, [a, b]^q : q | n, a^q, b^q ∈ H·GⁿG′⟩`.
///
/// For each `q` the admissible `a` form the preimage of
/// `S̄ = {c ∈ G/GⁿG′ : qc ∈ H̄}`, and `(a, b) ↦ [a, b]^q` is bilinear and
/// constant on classes, so lifts of generators of `S̄` suffice.
pub fn dominion(h: &Subgroup, v: &Variety) -> Result<Subgroup> {
    let g = h.group();
    require_member(v, g)?;
    let cl = Classes::new(g, v.n())?;
    let h_bar = cl.span(&h.generators().iter().map(|&x| cl.class_of(x)).collect::<Vec<_>>());
    let mut gens: Vec<Elem> = h.generators().to_vec();
    for q in q_values(v.n(), g.exponent(), true) {
        let powers = cl.scale_table(q);
        let admissible: Vec<bool> = powers.iter().map(|&p| h_bar[p as usize]).collect();
        let lifts: Vec<Elem> = cl.generators_of(&admissible).into_iter().map(|c| cl.rep(c)).collect();
        for (i, &a) in lifts.iter().enumerate() {
            for &b in &lifts[i + 1..] {
                gens.push(g.pow(g.comm(a, b), q as i64));
            }
        }
    }
    Subgroup::generate(g, &gens)
}

/// The same subgroup by direct enumeration of all `a, b ∈ G` and all `q | n`.
pub fn dominion_brute_force(h: &Subgroup, v: &Variety) -> Result<Subgroup> {
    let g = h.group();
    require_member(v, g)?;
    let hn = h.join(&power_derived(g, v.n())?)?;
    let mut gens: Vec<Elem> = h.generators().to_vec();
    for q in q_values(v.n(), g.exponent(), false) {
        let adm: Vec<Elem> = g.elements()?.filter(|&a| hn.contains(g.pow(a, q as i64))).collect();
        for &a in &adm {
            for &b in &adm {
                gens.push(g.pow(g.comm(a, b), q as i64));
            }
        }
    }
    Subgroup::generate(g, &gens)
}

/// Whether `H` is its own dominion.
pub fn is_closed(h: &Subgroup, v: &Variety) -> Result<bool> {
    Ok(dominion(h, v)?.order() == h.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;
    use crate::pc::PcBuilder;
    use crate::subgroup::derived_subgroup;

    /// ⟨r, s | r⁸ = s⁸ = [r,s]⁴ = e⟩, order 256.
    fn k1() -> Group {
        let mut b = PcBuilder::new();
        let r = b.generator("r", 8);
        let s = b.generator("s", 8);
        let c = b.generator("c", 4);
        b.comm(s, r, vec![(c, 1)]);
        Group::from_pc("K1", b.build().unwrap()).unwrap()
    }

    #[test]
    fn squares_generate_a_non_closed_subgroup() {
        let k = k1();
        let r2 = k.word(&[(0, 2)]).unwrap();
        let s2 = k.word(&[(1, 2)]).unwrap();
        let h = Subgroup::generate(&k, &[r2, s2]).unwrap();
        let v = Variety::new(8, 4).unwrap();
        let d = dominion(&h, &v).unwrap();
        let rs2 = k.pow(k.comm(k.word(&[(0, 1)]).unwrap(), k.word(&[(1, 1)]).unwrap()), 2);
        assert!(!h.contains(rs2));
        assert!(d.contains(rs2));
        assert_eq!(d, dominion_brute_force(&h, &v).unwrap());
    }

    #[test]
    fn normal_subgroups_are_closed() {
        let k = k1();
        let v = Variety::new(8, 4).unwrap();
        let d = derived_subgroup(&k).unwrap();
        assert!(is_closed(&d, &v).unwrap());
        let whole = Subgroup::whole(&k).unwrap();
        assert!(is_closed(&whole, &v).unwrap());
    }
}
