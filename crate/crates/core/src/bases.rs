//! Amalgamation bases: strong (equivalently weak) bases and special bases,
//! by the general criteria and by closed forms for abelian groups.

use crate::abelian::invariant_factors;
use crate::arith::{factorize, ord_p, Valuation};
use crate::classes::{q_values, Classes, CommForm, Mask};
use crate::coproduct::require_member;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::par;
use crate::roots::{coupling_modulus, PairTable};
use crate::subgroup::Subgroup;
use crate::variety::Variety;
use crate::verdict::{Verdict, Witness};
use std::collections::HashSet;

fn q_mask(cl: &Classes, q: u64) -> (Vec<u64>, Vec<bool>) {
    let powers = cl.scale_table(q);
    let mut in_qq = vec![false; cl.size() as usize];
    for &p in &powers {
        in_qq[p as usize] = true;
    }
    (powers, in_qq)
}

/// Strong base test: `Ω^β(Z(G)) = GⁿG′`, and every `g ∉ G^qG′` with
/// `g^ζ = e` fails to commute with some `h` having `h^q ≡ g^c (mod GⁿG′)`.
pub fn is_strong_base(g: &Group, v: &Variety) -> Result<Verdict> {
    require_member(v, g)?;
    let cl = Classes::new(g, v.n())?;
    let beta = v.beta() as i64;
    let gens = g.generators();
    // centrality and β-torsion are constant on classes of GⁿG′
    let bad = par::find_first(cl.size() as usize, |c| {
        if c == 0 {
            return None;
        }
        let z = cl.rep(c as u64);
        (gens.iter().all(|&s| g.commutes(z, s)) && g.pow(z, beta) == 0).then_some(z)
    });
    if let Some(z) = bad {
        let w = Witness::new("a").with("element", g.format(z)).with("beta", beta.to_string());
        return Ok(Verdict::no(w));
    }
    for q in q_values(v.n(), g.exponent(), true) {
        let zeta = v.zeta(q) as i64;
        let (powers, in_qq) = q_mask(&cl, q);
        let size = cl.size();
        let bad = par::find_first(size as usize, |c| {
            let c = c as u64;
            if in_qq[c as usize] {
                return None;
            }
            let x = cl.rep(c);
            if g.pow(x, zeta) != 0 {
                return None;
            }
            let cyclic = cl.span(&[c]);
            let blocked = (0..size).any(|h| cyclic[powers[h as usize] as usize] && !g.commutes(cl.rep(h), x));
            (!blocked).then_some(x)
        });
        if let Some(x) = bad {
            let w = Witness::new("b").with("element", g.format(x)).with("q", q.to_string());
            return Ok(Verdict::no(w));
        }
    }
    Ok(Verdict::yes())
}

/// Special base (absolutely closed) test over pairs of classes.
pub fn is_special_base(g: &Group, v: &Variety) -> Result<Verdict> {
    require_member(v, g)?;
    let cl = Classes::new(g, v.n())?;
    let form = CommForm::new(g, &cl)?;
    for q in q_values(v.n(), g.exponent(), true) {
        // q = 1 and q = n satisfy (c) trivially
        if q == 1 || q == v.n() {
            continue;
        }
        let zeta = v.zeta(q) as i64;
        let (powers, in_qq) = q_mask(&cl, q);
        let mut preimages: Vec<Vec<u64>> = vec![Vec::new(); cl.size() as usize];
        for (h, &t) in powers.iter().enumerate() {
            preimages[t as usize].push(h as u64);
        }
        let cands: Vec<u64> =
            (0..cl.size()).filter(|&c| !in_qq[c as usize] && g.pow(cl.rep(c), zeta) == 0).collect();
        let modulus = coupling_modulus(&cl, v.n(), q);
        let pairs: Vec<(u64, u64)> =
            cands.iter().enumerate().flat_map(|(i, &x)| cands[i..].iter().map(move |&y| (x, y))).collect();
        let bad = par::find_first(pairs.len(), |k| {
            let (x, y) = pairs[k];
            if pair_is_closed(&cl, &form, x, y, &preimages, &in_qq, modulus) {
                None
            } else {
                Some((x, y))
            }
        });
        if let Some((x, y)) = bad {
            let w = Witness::new("abc")
                .with("x", g.format(cl.rep(x)))
                .with("y", g.format(cl.rep(y)))
                .with("q", q.to_string());
            return Ok(Verdict::no(w));
        }
    }
    Ok(Verdict::yes())
}

/// Whether (b) or (c) holds for the classes `x`, `y`. `preimages[t]` lists
/// the classes `h` with `q·h = t`.
fn pair_is_closed(
    cl: &Classes,
    form: &CommForm,
    x: u64,
    y: u64,
    preimages: &[Vec<u64>],
    in_qq: &[bool],
    modulus: u64,
) -> bool {
    let table = PairTable::new(cl, x, y, in_qq, modulus);
    let mut u1 = Mask::new(modulus);
    let mut u2 = Mask::new(modulus);
    for &t in table.targets() {
        u1.or(&table.first_mask(t));
        u2.or(&table.second_mask(t));
    }
    // (c): γ ≡ β + 1
    if u1.shifted(modulus).meets(&u2) {
        return true;
    }
    // (b): β ≡ γ and [g1, x][g2, y] ≠ e
    let (row_x, row_y) = (form.row(cl, x), form.row(cl, y));
    let mut left: HashSet<(Mask, u64)> = HashSet::new();
    let mut right: HashSet<(Mask, u64)> = HashSet::new();
    for &t in table.targets() {
        let m1 = table.first_mask(t);
        let m2 = table.second_mask(t);
        for &h in &preimages[t as usize] {
            if !m1.is_empty() {
                left.insert((m1.clone(), form.eval(cl, &row_x, h)));
            }
            if !m2.is_empty() {
                right.insert((m2.clone(), form.eval(cl, &row_y, h)));
            }
        }
    }
    left.iter().any(|(m1, c1)| right.iter().any(|(m2, c2)| m1.meets(m2) && form.add(*c1, *c2) != 0))
}

/// Per-prime data of an abelian group: `(p, [exponents of the p-power invariant factors])`.
fn primary_exponents(g: &Group) -> Result<Vec<(u64, Vec<u32>)>> {
    if !g.is_abelian() {
        return Err(Error::Precondition(format!("{} is not abelian", g.name())));
    }
    let fa = invariant_factors(g, &Subgroup::trivial(g))?;
    let mut out: Vec<(u64, Vec<u32>)> = Vec::new();
    for &d in fa.finab().factors() {
        for (p, e) in factorize(d) {
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some((_, v)) => v.push(e),
                None => out.push((p, vec![e])),
            }
        }
    }
    Ok(out)
}

/// Closed-form strong-base test for abelian groups.
pub fn abelian_strong_base(g: &Group, v: &Variety) -> Result<bool> {
    require_member(v, g)?;
    let parts = primary_exponents(g)?;
    if v.m() == 0 {
        // n-divisible; for n = 0 only the trivial group
        return Ok(parts.iter().all(|&(p, _)| v.n() != 0 && v.n() % p != 0));
    }
    Ok(parts.iter().all(|(p, exps)| {
        let a = finite(ord_p(*p, v.n()));
        let top = finite(ord_p(*p, v.m()));
        let b = top - a;
        a == 0 || (b >= a && exps.iter().all(|&e| e == top))
    }))
}

/// Closed-form special-base test for abelian groups.
pub fn abelian_special_base(g: &Group, v: &Variety) -> Result<bool> {
    require_member(v, g)?;
    let parts = primary_exponents(g)?;
    if v.m() == 0 {
        return Ok(parts.iter().all(|(p, exps)| ord_p(*p, v.n()) <= 1u32 || exps.len() <= 1));
    }
    Ok(parts.iter().all(|(p, exps)| {
        let a = finite(ord_p(*p, v.n()));
        let top = finite(ord_p(*p, v.m()));
        let b = top - a;
        if a <= 1 {
            true
        } else if b + 1 >= a {
            exps.iter().filter(|&&e| e != top).count() <= 1
        } else {
            exps.len() <= 1
        }
    }))
}

fn finite(v: Valuation) -> u32 {
    v.finite().expect("valuation of a nonzero parameter")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::PcBuilder;

    fn abelian(orders: &[u32]) -> Group {
        let mut b = PcBuilder::new();
        for (i, &o) in orders.iter().enumerate() {
            b.generator(&format!("z{i}"), o);
        }
        Group::from_pc("Ab", b.build().unwrap()).unwrap()
    }

    fn v(m: u64, n: u64) -> Variety {
        Variety::new(m, n).unwrap()
    }

    #[test]
    fn abelian_strong_examples() {
        let g44 = abelian(&[4, 4]);
        assert!(is_strong_base(&g44, &v(4, 2)).unwrap().value);
        assert!(abelian_strong_base(&g44, &v(4, 2)).unwrap());
        let g24 = abelian(&[2, 4]);
        assert!(!is_strong_base(&g24, &v(4, 2)).unwrap().value);
        assert!(!abelian_strong_base(&g24, &v(4, 2)).unwrap());
        let g88 = abelian(&[8, 8]);
        assert!(is_strong_base(&g88, &v(8, 2)).unwrap().value);
        assert!(!is_strong_base(&g88, &v(32, 2)).unwrap().value);
        let z2 = abelian(&[2]);
        assert!(abelian_strong_base(&z2, &v(0, 3)).unwrap());
        assert!(is_strong_base(&z2, &v(0, 3)).unwrap().value);
        assert!(is_strong_base(&Group::trivial(), &v(0, 0)).unwrap().value);
    }

    #[test]
    fn abelian_special_examples() {
        let g28 = abelian(&[2, 8]);
        assert!(is_special_base(&g28, &v(8, 4)).unwrap().value);
        assert!(abelian_special_base(&g28, &v(8, 4)).unwrap());
        let g44 = abelian(&[4, 4]);
        assert!(!is_special_base(&g44, &v(8, 4)).unwrap().value);
        assert!(!abelian_special_base(&g44, &v(8, 4)).unwrap());
        assert!(is_special_base(&abelian(&[8]), &v(16, 8)).unwrap().value);
    }

    #[test]
    fn nonabelian_input_rejected() {
        let mut b = PcBuilder::new();
        let x = b.generator("x", 2);
        let y = b.generator("y", 2);
        let c = b.generator("c", 2);
        b.comm(y, x, vec![(c, 1)]);
        let d8 = Group::from_pc("D8", b.build().unwrap()).unwrap();
        assert!(abelian_strong_base(&d8, &v(4, 2)).is_err());
    }
}
