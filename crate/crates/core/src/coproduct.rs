//! Finite coproducts in a class-two variety and the amalgamated coproducts
//! used as ground truth for embeddability and dominions.
//!
//! An element of `G ∐ K` is a triple `(g, k, t)` with `t` in the cartesian
//! `T = (G/GⁿG′) ⊗ (K/KⁿK′)`, standing for `g·k·t`. Moving `k₁` past `g₂`
//! produces `[k₁, g₂] = [g₂, k₁]⁻¹`, hence
//! `(g₁,k₁,t₁)(g₂,k₂,t₂) = (g₁g₂, k₁k₂, t₁ + t₂ − ḡ₂⊗k̄₁)`.

use crate::abelian::{invariant_factors, tensor_product, AbelianQuotient, Tensor};
use crate::amalgam::Amalgam;
use crate::budget;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::hom::Hom;
use crate::subgroup::{normal_closure, power_derived, quotient, Subgroup};
use crate::variety::Variety;
use std::sync::Arc;

#[derive(Clone)]
pub(crate) struct Triples(Arc<TriplesData>);

struct TriplesData {
    left: Group,
    right: Group,
    left_q: AbelianQuotient,
    right_q: AbelianQuotient,
    tensor: Tensor,
    /// Cell orders of the cartesian, most significant first.
    radix: Vec<u64>,
    t_order: u64,
    /// `Q_G` index of every element of `G`, likewise for `K`.
    proj_left: Vec<u32>,
    proj_right: Vec<u32>,
    /// Cartesian index of `ḡ ⊗ k̄`, indexed `ḡ * |Q_K| + k̄`.
    cross: Vec<u32>,
    qk_order: u64,
}

impl Triples {
    fn split(&self, x: Elem) -> (Elem, Elem, u64) {
        let d = &self.0;
        let t = x % d.t_order;
        let gk = x / d.t_order;
        (gk / d.right.order(), gk % d.right.order(), t)
    }

    fn join(&self, g: Elem, k: Elem, t: u64) -> Elem {
        let d = &self.0;
        (g * d.right.order() + k) * d.t_order + t
    }

    fn t_add(&self, a: u64, b: u64) -> u64 {
        self.t_combine(a, b, false)
    }

    fn t_sub(&self, a: u64, b: u64) -> u64 {
        self.t_combine(a, b, true)
    }

    fn t_combine(&self, mut a: u64, mut b: u64, subtract: bool) -> u64 {
        let mut out = 0;
        let mut place = 1;
        for &r in self.0.radix.iter().rev() {
            let (x, y) = (a % r, b % r);
            a /= r;
            b /= r;
            let z = if subtract { (x + r - y) % r } else { (x + y) % r };
            out += z * place;
            place *= r;
        }
        out
    }

    fn t_neg(&self, a: u64) -> u64 {
        self.t_sub(0, a)
    }

    fn cross(&self, g: Elem, k: Elem) -> u64 {
        let d = &self.0;
        let i = d.proj_left[g as usize] as u64 * d.qk_order + d.proj_right[k as usize] as u64;
        d.cross[i as usize] as u64
    }

    pub(crate) fn order(&self) -> u64 {
        let d = &self.0;
        d.left.order() * d.right.order() * d.t_order
    }

    pub(crate) fn mul(&self, a: Elem, b: Elem) -> Elem {
        let (g1, k1, t1) = self.split(a);
        let (g2, k2, t2) = self.split(b);
        let d = &self.0;
        let t = self.t_sub(self.t_add(t1, t2), self.cross(g2, k1));
        self.join(d.left.mul(g1, g2), d.right.mul(k1, k2), t)
    }

    pub(crate) fn inv(&self, a: Elem) -> Elem {
        let (g, k, t) = self.split(a);
        let d = &self.0;
        let t = self.t_sub(self.t_neg(t), self.cross(g, k));
        self.join(d.left.inv(g), d.right.inv(k), t)
    }

    pub(crate) fn format(&self, a: Elem) -> String {
        let (g, k, t) = self.split(a);
        let d = &self.0;
        let mut parts = Vec::new();
        if g != 0 {
            parts.push(d.left.format(g));
        }
        if k != 0 {
            parts.push(d.right.format(k));
        }
        let coords = d.tensor.coords(t);
        for (&(i, j, _), &c) in d.tensor.cells().iter().zip(&coords) {
            if c != 0 {
                let u = d.left.format(d.left_q.lifts()[i]);
                let w = d.right.format(d.right_q.lifts()[j]);
                parts.push(if c == 1 { format!("[{u},{w}]") } else { format!("[{u},{w}]^{c}") });
            }
        }
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join("*")
        }
    }
}

/// `G ∐ K` in a variety, with its canonical injections.
#[derive(Clone)]
pub struct Coproduct {
    group: Group,
    variety: Variety,
    data: Triples,
    inj_left: Hom,
    inj_right: Hom,
}

impl std::fmt::Debug for Coproduct {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Coproduct({}, order {})", self.group.name(), self.group.order())
    }
}

fn check_class_two(g: &Group) -> Result<()> {
    let gens = g.generators();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = g.comm(a, b);
            if gens.iter().any(|&s| !g.commutes(c, s)) {
                return Err(Error::Precondition(format!("{} is not of class two", g.name())));
            }
        }
    }
    Ok(())
}

pub(crate) fn require_member(v: &Variety, g: &Group) -> Result<()> {
    check_class_two(g)?;
    if v.contains_group(g) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("{} does not lie in {v}", g.name())))
    }
}

/// The coproduct of `G` and `K` in `v`.
pub fn coproduct_mn(g: &Group, k: &Group, v: &Variety) -> Result<Coproduct> {
    require_member(v, g)?;
    require_member(v, k)?;
    let left_q = invariant_factors(g, &power_derived(g, v.n())?)?;
    let right_q = invariant_factors(k, &power_derived(k, v.n())?)?;
    let tensor = tensor_product(left_q.finab(), right_q.finab());
    let t_order = tensor.order();
    let order = g.order().saturating_mul(k.order()).saturating_mul(t_order);
    budget::ensure(order)?;
    let proj_left: Vec<u32> = (0..g.order()).map(|x| left_q.project_index(x) as u32).collect();
    let proj_right: Vec<u32> = (0..k.order()).map(|x| right_q.project_index(x) as u32).collect();
    let (qa, qb) = (left_q.finab().clone(), right_q.finab().clone());
    let mut cross = Vec::with_capacity((qa.order() * qb.order()) as usize);
    for i in 0..qa.order() {
        let ci = qa.coords(i);
        for j in 0..qb.order() {
            cross.push(tensor.index(&tensor.bilinear(&ci, &qb.coords(j))) as u32);
        }
    }
    let radix = tensor.cells().iter().map(|c| c.2).collect();
    let data = Triples(Arc::new(TriplesData {
        left: g.clone(),
        right: k.clone(),
        left_q,
        right_q,
        tensor,
        radix,
        t_order,
        proj_left,
        proj_right,
        cross,
        qk_order: qb.order(),
    }));
    let mut gens: Vec<Elem> = g.generators().iter().map(|&x| data.join(x, 0, 0)).collect();
    gens.extend(k.generators().iter().map(|&y| data.join(0, y, 0)));
    let name = format!("{} * {}", g.name(), k.name());
    let group = Group::new_coproduct(name, data.clone(), gens);
    check_associativity(&group)?;
    let inj_left = Hom::from_table(g, &group, (0..g.order()).map(|x| data.join(x, 0, 0)).collect())?;
    let inj_right = Hom::from_table(k, &group, (0..k.order()).map(|y| data.join(0, y, 0)).collect())?;
    let cp = Coproduct { group, variety: *v, data, inj_left, inj_right };
    if !v.contains_group(&cp.group) {
        return Err(Error::Inconsistent("coproduct leaves the variety".into()));
    }
    Ok(cp)
}

/// Associativity on generator triples and on a sample of element triples.
fn check_associativity(g: &Group) -> Result<()> {
    use rand::{Rng, SeedableRng};
    let gens = g.generators();
    let mut triples: Vec<(Elem, Elem, Elem)> = Vec::new();
    for &a in gens {
        for &b in gens {
            for &c in gens {
                triples.push((a, b, c));
            }
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
    for _ in 0..2000 {
        let n = g.order();
        triples.push((rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    for (a, b, c) in triples {
        if g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)) {
            return Err(Error::Inconsistent("coproduct multiplication is not associative".into()));
        }
    }
    Ok(())
}

impl Coproduct {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn left(&self) -> &Group {
        &self.data.0.left
    }

    pub fn right(&self) -> &Group {
        &self.data.0.right
    }

    pub fn inj_left(&self) -> &Hom {
        &self.inj_left
    }

    pub fn inj_right(&self) -> &Hom {
        &self.inj_right
    }

    /// The cartesian as a tensor product of the two abelian quotients.
    pub fn cartesian(&self) -> &Tensor {
        &self.data.0.tensor
    }

    /// `(g, k, t)` with `t` the cartesian index.
    pub fn decompose(&self, x: Elem) -> (Elem, Elem, u64) {
        self.data.split(x)
    }

    pub fn compose(&self, g: Elem, k: Elem, t: u64) -> Elem {
        self.data.join(g, k, t)
    }

    /// The unique map `φ` with `φ∘ι_G = f` and `φ∘ι_K = h`.
    pub fn factor_through(&self, f: &Hom, h: &Hom) -> Result<Hom> {
        let d = &self.data.0;
        let target = f.codomain();
        if !f.domain().same(&d.left) || !h.domain().same(&d.right) || !h.codomain().same(target) {
            return Err(Error::Input("maps must start at the two factors and share a codomain".into()));
        }
        require_member(&self.variety, target)?;
        budget::ensure(self.group.order())?;
        // [f(u_i), h(w_j)] for each cartesian cell
        let cell_comms: Vec<Elem> = d
            .tensor
            .cells()
            .iter()
            .map(|&(i, j, _)| target.comm(f.apply(d.left_q.lifts()[i]), h.apply(d.right_q.lifts()[j])))
            .collect();
        let t_images: Vec<Elem> = (0..d.t_order)
            .map(|t| {
                let c = d.tensor.coords(t);
                c.iter().zip(&cell_comms).fold(0, |acc, (&e, &z)| target.mul(acc, target.pow(z, e as i64)))
            })
            .collect();
        let mut table = Vec::with_capacity(self.group.order() as usize);
        for g in 0..d.left.order() {
            let fg = f.apply(g);
            for k in 0..d.right.order() {
                let fgk = target.mul(fg, h.apply(k));
                for &tt in &t_images {
                    table.push(target.mul(fgk, tt));
                }
            }
        }
        Hom::from_table(&self.group, target, table)
    }
}

/// `A ∐_D B`: the coproduct modulo the normal closure of `ι_A(d) ι_B(d)⁻¹`.
#[derive(Clone, Debug)]
pub struct AmalgamatedCoproduct {
    base: Coproduct,
    relators: Subgroup,
    group: Group,
    projection: Hom,
    from_a: Hom,
    from_b: Hom,
    core_order: u64,
}

impl AmalgamatedCoproduct {
    pub fn new(am: &Amalgam, v: &Variety) -> Result<AmalgamatedCoproduct> {
        let base = coproduct_mn(am.a(), am.b(), v)?;
        let cp = base.group().clone();
        let rel: Vec<Elem> = am
            .d()
            .generators()
            .iter()
            .map(|&x| {
                let ia = base.inj_left.apply(am.phi_a().apply(x));
                let ib = base.inj_right.apply(am.phi_b().apply(x));
                cp.mul(ia, cp.inv(ib))
            })
            .collect();
        let relators = normal_closure(&cp, &rel)?;
        let (group, projection) = quotient(&cp, &relators)?;
        let from_a = base.inj_left.then(&projection)?;
        let from_b = base.inj_right.then(&projection)?;
        Ok(AmalgamatedCoproduct { base, relators, group, projection, from_a, from_b, core_order: am.d().order() })
    }

    pub fn base(&self) -> &Coproduct {
        &self.base
    }

    pub fn relators(&self) -> &Subgroup {
        &self.relators
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn projection(&self) -> &Hom {
        &self.projection
    }

    pub fn from_a(&self) -> &Hom {
        &self.from_a
    }

    pub fn from_b(&self) -> &Hom {
        &self.from_b
    }

    /// Both canonical maps injective.
    pub fn is_weak(&self) -> bool {
        self.from_a.is_injective() && self.from_b.is_injective()
    }

    /// Additionally the two images meet exactly in the image of the core.
    pub fn is_strong(&self) -> bool {
        if !self.is_weak() {
            return false;
        }
        let mut in_b = vec![false; self.group.order() as usize];
        for &y in self.from_b.table() {
            in_b[y as usize] = true;
        }
        let common = self.from_a.table().iter().filter(|&&y| in_b[y as usize]).count() as u64;
        common == self.core_order
    }

    /// Elements of the first factor whose image lies in the image of the second.
    pub fn pulled_back_intersection(&self) -> Vec<Elem> {
        let mut in_b = vec![false; self.group.order() as usize];
        for &y in self.from_b.table() {
            in_b[y as usize] = true;
        }
        (0..self.from_a.domain().order()).filter(|&x| in_b[self.from_a.apply(x) as usize]).collect()
    }
}

pub fn oracle_weak(am: &Amalgam, v: &Variety) -> Result<bool> {
    Ok(AmalgamatedCoproduct::new(am, v)?.is_weak())
}

pub fn oracle_strong(am: &Amalgam, v: &Variety) -> Result<bool> {
    Ok(AmalgamatedCoproduct::new(am, v)?.is_strong())
}

/// The dominion of `H` in `G` read off `G ∐_H G`.
pub fn oracle_dominion(h: &Subgroup, v: &Variety) -> Result<Subgroup> {
    let am = Amalgam::special("dom", h)?;
    let ac = AmalgamatedCoproduct::new(&am, v)?;
    Subgroup::generate(h.group(), &ac.pulled_back_intersection())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::PcBuilder;
    use crate::subgroup::power_derived;

    fn cyclic(n: u32) -> Group {
        let mut b = PcBuilder::new();
        b.generator("z", n);
        Group::from_pc(&format!("Z{n}"), b.build().unwrap()).unwrap()
    }

    fn v(m: u64, n: u64) -> Variety {
        Variety::new(m, n).unwrap()
    }

    #[test]
    fn cyclic_coproduct_order() {
        let z4 = cyclic(4);
        let cp = coproduct_mn(&z4, &z4, &v(4, 2)).unwrap();
        assert_eq!(cp.group().order(), 32);
        assert_eq!(cp.cartesian().order(), 2);
        let trivial = Group::trivial();
        let cp = coproduct_mn(&z4, &trivial, &v(4, 2)).unwrap();
        assert_eq!(cp.group().order(), 4);
    }

    #[test]
    fn injections_commute_up_to_cartesian() {
        let z4 = cyclic(4);
        let cp = coproduct_mn(&z4, &z4, &v(8, 4)).unwrap();
        let g = cp.group();
        let a = cp.inj_left().apply(1);
        let b = cp.inj_right().apply(1);
        let c = g.comm(a, b);
        assert_eq!(cp.decompose(c).0, 0);
        assert_eq!(cp.decompose(c).1, 0);
        assert_eq!(g.element_order(c), 4);
        assert!(g.generators().iter().all(|&s| g.commutes(c, s)));
    }

    /// `g ∈ GⁿG′` exactly when `g` commutes with a new generator of order `m`.
    #[test]
    fn central_in_every_overgroup() {
        let z8 = cyclic(8);
        let vv = v(8, 4);
        let cp = coproduct_mn(&z8, &z8, &vv).unwrap();
        let pd = power_derived(&z8, 4).unwrap();
        let c = cp.inj_right().apply(1);
        for x in 0..8 {
            let gx = cp.inj_left().apply(x);
            assert_eq!(cp.group().commutes(gx, c), pd.contains(x), "x = {x}");
        }
    }

    #[test]
    fn factoring_identity_and_projection() {
        let z4 = cyclic(4);
        let cp = coproduct_mn(&z4, &z4, &v(4, 2)).unwrap();
        let id = cp.factor_through(cp.inj_left(), cp.inj_right()).unwrap();
        assert!(id.same_map(&Hom::identity(cp.group())));
        let kill = cp.factor_through(&Hom::identity(&z4), &Hom::trivial(&z4, &z4)).unwrap();
        for x in 0..cp.group().order() {
            let (g, _, _) = cp.decompose(x);
            assert_eq!(kill.apply(x), g);
        }
    }
}
