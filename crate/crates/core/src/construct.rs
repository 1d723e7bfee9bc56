//! Groups with a prescribed `GⁿG′`, and overgroups realizing a central
//! element as a commutator.

use crate::abelian::{invariant_factors, FinAb};
use crate::arith::{factorize, ord_p, pow_u64};
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::hom::Hom;
use crate::pc::PcBuilder;
use crate::subgroup::{center, central_product, power_derived, Subgroup};
use crate::variety::Variety;

/// Appends `⟨u, v | u^k = v^k = [u, v]^k = e⟩` (order `k³`).
fn push_two_generator(b: &mut PcBuilder, k: u32, tag: usize) {
    let u = b.generator(&format!("u{tag}"), k);
    let v = b.generator(&format!("v{tag}"), k);
    let c = b.generator(&format!("c{tag}"), k);
    b.comm(v, u, vec![(c, 1)]);
}

/// Appends the split metacyclic group `⟨u, v | u^{p^{a+i}} = v^{p^a} = e, [u, v] = u^{p^i}⟩`.
fn push_metacyclic(b: &mut PcBuilder, p: u32, a: u32, i: u32, tag: usize) {
    let v = b.generator(&format!("v{tag}"), p.pow(a));
    let u = b.generator(&format!("u{tag}"), p.pow(i));
    let w = b.generator(&format!("w{tag}"), p.pow(a));
    b.power(u, vec![(w, 1)]);
    b.comm(u, v, vec![(w, 1)]);
}

fn to_u32(x: u64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::Input(format!("cyclic order {x} is too large")))
}

/// A group `G ∈ v` with `Z(G) = GⁿG′ ≅ target` when `m > 0`, or with
/// `GⁿG′ ≅ target` when `m = 0`. Both properties are re-verified.
pub fn construct_with_center(target: &FinAb, v: &Variety) -> Result<Group> {
    let mut b = PcBuilder::new();
    let mut tag = 0;
    for &k in target.factors() {
        for (p, i) in factorize(k) {
            tag += 1;
            let pk = to_u32(pow_u64(p, i))?;
            if v.m() > 0 {
                let a = ord_p(p, v.n()).finite().expect("n > 0 when m > 0");
                let top = ord_p(p, v.m()).finite().expect("m > 0");
                let extra = top - a;
                if i <= a {
                    if p == 2 && extra == 0 {
                        return Err(Error::Precondition(format!(
                            "a summand of order {pk} at p = 2 needs ord_2(m) > ord_2(n)"
                        )));
                    }
                    push_two_generator(&mut b, pk, tag);
                } else {
                    if extra < i {
                        return Err(Error::Precondition(format!(
                            "a summand of order {pk} needs ord_{p}(m) - ord_{p}(n) >= {i}"
                        )));
                    }
                    push_metacyclic(&mut b, p as u32, a, i, tag);
                }
            } else if v.n() == 0 {
                push_two_generator(&mut b, pk, tag);
            } else {
                // a central n-th root of the summand's generator
                let root = pk as u64 * v.n();
                b.generator(&format!("z{tag}"), to_u32(root)?);
            }
        }
    }
    let g = Group::from_pc("C", b.build()?)?;
    if !v.contains_group(&g) {
        return Err(Error::Inconsistent(format!("constructed group is not in {v}")));
    }
    let verbal = power_derived(&g, v.n())?;
    if v.m() > 0 && center(&g)? != verbal {
        return Err(Error::Inconsistent("constructed center differs from G^nG'".into()));
    }
    let got = invariant_factors(&verbal.to_group("V"), &Subgroup::trivial(&verbal.to_group("V")))?;
    if got.finab().factors() != FinAb::from_cyclic_orders(target.factors()).factors() {
        return Err(Error::Inconsistent("constructed G^nG' has the wrong invariant factors".into()));
    }
    Ok(g)
}

/// An overgroup `K ⊇ G` of `v` with `r1, r2` centralizing `G` and `[r1, r2] = x`.
#[derive(Clone, Debug)]
pub struct CommutatorRealization {
    pub group: Group,
    pub inclusion: Hom,
    pub r1: Elem,
    pub r2: Elem,
}

/// Identifies `x` with the commutator of `⟨r1, r2 | r1^q = r2^q = [r1, r2]^q = e⟩`, `q = |x|`.
pub fn adjoin_commutator_realization(g: &Group, x: Elem, v: &Variety) -> Result<CommutatorRealization> {
    if !g.generators().iter().all(|&s| g.commutes(x, s)) {
        return Err(Error::Precondition(format!("{} is not central", g.format(x))));
    }
    if v.n() == 0 {
        return Err(Error::Precondition("n must be positive".into()));
    }
    if g.pow(x, v.n() as i64) != 0 {
        return Err(Error::Precondition(format!("{} does not have exponent dividing {}", g.format(x), v.n())));
    }
    let q = to_u32(g.element_order(x))?;
    if q == 1 {
        return Ok(CommutatorRealization { group: g.clone(), inclusion: Hom::identity(g), r1: 0, r2: 0 });
    }
    let mut b = PcBuilder::new();
    let r1 = b.generator("r1", q);
    let r2 = b.generator("r2", q);
    let c = b.generator("c", q);
    b.comm(r1, r2, vec![(c, 1)]);
    let h = Group::from_pc("H", b.build()?)?;
    let cyc = Subgroup::generate(g, &[x])?;
    let (d, into_g) = cyc.embedded("D")?;
    let comm = h.comm(h.word(&[(0, 1)])?, h.word(&[(1, 1)])?);
    let into_h = Hom::from_images(&d, &h, &vec![comm; d.generators().len()])?;
    let cp = central_product(&into_g, &into_h)?;
    let (r1, r2) = (cp.from_b.apply(h.word(&[(0, 1)])?), cp.from_b.apply(h.word(&[(1, 1)])?));
    let k = cp.group;
    if k.comm(r1, r2) != cp.from_a.apply(x) || !cp.from_a.is_injective() {
        return Err(Error::Inconsistent("commutator realization failed".into()));
    }
    if !v.contains_group(&k) {
        return Err(Error::Inconsistent(format!("realizing overgroup is not in {v}")));
    }
    Ok(CommutatorRealization { group: k, inclusion: cp.from_a, r1, r2 })
}
