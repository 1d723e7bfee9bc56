//! Enumerated subgroups and the constructions built from them.

use crate::arith::{factorize, lcm};
use crate::budget;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::hom::Hom;
use crate::par;
use std::collections::HashSet;
use std::sync::Arc;

/// A subgroup of `group`, fully enumerated as a sorted element list.
#[derive(Clone)]
pub struct Subgroup {
    group: Group,
    gens: Vec<Elem>,
    elems: Arc<Vec<Elem>>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {} in {})", self.order(), self.group.name())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.group.same(&other.group) && self.elems == other.elems
    }
}

enum Seen {
    Bits(Vec<u64>),
    Hash(HashSet<Elem>),
}

impl Seen {
    fn new(order: u64) -> Seen {
        if order <= 1 << 26 {
            Seen::Bits(vec![0; (order as usize).div_ceil(64)])
        } else {
            Seen::Hash(HashSet::new())
        }
    }

    fn insert(&mut self, x: Elem) -> bool {
        match self {
            Seen::Bits(b) => {
                let (w, m) = ((x / 64) as usize, 1u64 << (x % 64));
                let fresh = b[w] & m == 0;
                b[w] |= m;
                fresh
            }
            Seen::Hash(h) => h.insert(x),
        }
    }
}

/// Closure of `elems` (already a subgroup closed under `gens`) after adding `extra`.
fn extend_closure(g: &Group, elems: &mut Vec<Elem>, seen: &mut Seen, gens: &[Elem], extra: Elem) -> Result<()> {
    let mut queue: Vec<Elem> = Vec::new();
    for &x in elems.iter() {
        let y = g.mul(x, extra);
        if seen.insert(y) {
            queue.push(y);
        }
    }
    let mut all_gens = gens.to_vec();
    all_gens.push(extra);
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        i += 1;
        for &s in &all_gens {
            let y = g.mul(x, s);
            if seen.insert(y) {
                queue.push(y);
                budget::ensure((elems.len() + queue.len()) as u64)?;
            }
        }
    }
    elems.extend(queue);
    Ok(())
}

impl Subgroup {
    /// Smallest subgroup containing `gens`.
    pub fn generate(g: &Group, gens: &[Elem]) -> Result<Subgroup> {
        let mut elems = vec![0];
        let mut seen = Seen::new(g.order());
        seen.insert(0);
        let mut used: Vec<Elem> = Vec::new();
        for &s in gens {
            if s >= g.order() {
                return Err(Error::Input(format!("element {s} outside group")));
            }
            if s == 0 || used.contains(&s) {
                continue;
            }
            // skip generators already inside
            if elems.len() > 1 && contains_unsorted(&elems, s, &seen) {
                continue;
            }
            extend_closure(g, &mut elems, &mut seen, &used, s)?;
            used.push(s);
        }
        elems.sort_unstable();
        Ok(Subgroup { group: g.clone(), gens: used, elems: Arc::new(elems) })
    }

    pub fn whole(g: &Group) -> Result<Subgroup> {
        budget::ensure(g.order())?;
        Ok(Subgroup { group: g.clone(), gens: g.generators().to_vec(), elems: Arc::new((0..g.order()).collect()) })
    }

    pub fn trivial(g: &Group) -> Subgroup {
        Subgroup { group: g.clone(), gens: Vec::new(), elems: Arc::new(vec![0]) }
    }

    /// From a sorted list already known to be a subgroup.
    pub(crate) fn from_sorted(g: &Group, elems: Vec<Elem>, gens: Vec<Elem>) -> Subgroup {
        Subgroup { group: g.clone(), gens, elems: Arc::new(elems) }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn order(&self) -> u64 {
        self.elems.len() as u64
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.group.order()
    }

    pub fn is_normal(&self) -> bool {
        self.gens.iter().all(|&s| self.group.generators().iter().all(|&a| self.contains(self.group.conj(s, a))))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.group;
        self.gens.iter().enumerate().all(|(i, &a)| self.gens[i + 1..].iter().all(|&b| g.commutes(a, b)))
    }

    pub fn is_central(&self) -> bool {
        let g = &self.group;
        self.gens.iter().all(|&a| g.generators().iter().all(|&b| g.commutes(a, b)))
    }

    /// Subgroup generated by both.
    pub fn join(&self, other: &Subgroup) -> Result<Subgroup> {
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&other.gens);
        Subgroup::generate(&self.group, &gens)
    }

    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        let elems: Vec<Elem> = self.elems.iter().copied().filter(|&x| other.contains(x)).collect();
        let gens = small_generating_set(&self.group, &elems)?;
        Ok(Subgroup::from_sorted(&self.group, elems, gens))
    }

    /// Adds one element and closes.
    pub fn with(&self, x: Elem) -> Result<Subgroup> {
        let mut gens = self.gens.clone();
        gens.push(x);
        Subgroup::generate(&self.group, &gens)
    }

    /// The subgroup as a group in its own right; elements format as in the parent.
    pub fn to_group(&self, name: &str) -> Group {
        Group::new_sub(name.to_string(), &self.group, self.elems.to_vec(), &self.gens)
    }

    /// `to_group` together with the inclusion homomorphism.
    pub fn embedded(&self, name: &str) -> Result<(Group, Hom)> {
        let h = self.to_group(name);
        let table = self.elems.to_vec();
        let inc = Hom::from_table(&h, &self.group, table)?;
        Ok((h, inc))
    }

    /// Elements of order dividing `beta`; `beta = 0` gives the whole subgroup.
    pub fn omega(&self, beta: u64) -> Result<Subgroup> {
        if !self.is_abelian() {
            return Err(Error::Precondition("omega needs an abelian subgroup".into()));
        }
        if beta == 0 {
            return Ok(self.clone());
        }
        let g = &self.group;
        let elems: Vec<Elem> = self.elems.iter().copied().filter(|&x| g.pow(x, beta as i64) == 0).collect();
        let gens = small_generating_set(g, &elems)?;
        Ok(Subgroup::from_sorted(g, elems, gens))
    }
}

fn contains_unsorted(_elems: &[Elem], x: Elem, seen: &Seen) -> bool {
    match seen {
        Seen::Bits(b) => b[(x / 64) as usize] & (1 << (x % 64)) != 0,
        Seen::Hash(h) => h.contains(&x),
    }
}

/// Greedy generating set for a sorted subgroup element list.
fn small_generating_set(g: &Group, elems: &[Elem]) -> Result<Vec<Elem>> {
    let mut gens: Vec<Elem> = Vec::new();
    let mut cur = Subgroup::trivial(g);
    // try elements of large order first to keep the set short
    let mut cands: Vec<(u64, Elem)> = elems.iter().map(|&x| (g.element_order(x), x)).collect();
    cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (_, x) in cands {
        if cur.order() as usize == elems.len() {
            break;
        }
        if !cur.contains(x) {
            gens.push(x);
            cur = Subgroup::generate(g, &gens)?;
        }
    }
    Ok(gens)
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(g: &Group, gens: &[Elem]) -> Result<Subgroup> {
    let mut cur = Subgroup::generate(g, gens)?;
    loop {
        let mut added = false;
        let snapshot = cur.gens.clone();
        for &s in &snapshot {
            for &a in g.generators() {
                let c = g.conj(s, a);
                if !cur.contains(c) {
                    cur = cur.with(c)?;
                    added = true;
                }
            }
        }
        if !added {
            return Ok(cur);
        }
    }
}

/// The verbal subgroups `G^n`, `G'` and `G^n G'`.
#[derive(Clone, Debug)]
pub struct Verbal {
    pub power: Subgroup,
    pub derived: Subgroup,
    pub power_derived: Subgroup,
}

/// In class two, `G^n` is generated by the `n`-th powers of generators and the
/// `n(n-1)/2`-th powers of generator commutators; `G^0 = {e}`.
pub fn verbal_subgroups(g: &Group, n: u64) -> Result<Verbal> {
    let gens = g.generators();
    let mut comms = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            comms.push(g.comm(a, b));
        }
    }
    let derived = Subgroup::generate(g, &comms)?;
    let power = if n == 0 {
        Subgroup::trivial(g)
    } else {
        let half = (n as u128 * (n as u128 - 1) / 2) as i64;
        let mut pg: Vec<Elem> = gens.iter().map(|&a| g.pow(a, n as i64)).collect();
        pg.extend(comms.iter().map(|&c| g.pow(c, half)));
        Subgroup::generate(g, &pg)?
    };
    let power_derived = power.join(&derived)?;
    Ok(Verbal { power, derived, power_derived })
}

/// `G^n G'` only.
pub fn power_derived(g: &Group, n: u64) -> Result<Subgroup> {
    let gens = g.generators();
    let mut pg: Vec<Elem> = Vec::new();
    if n > 0 {
        pg.extend(gens.iter().map(|&a| g.pow(a, n as i64)));
    }
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            pg.push(g.comm(a, b));
        }
    }
    Subgroup::generate(g, &pg)
}

pub fn derived_subgroup(g: &Group) -> Result<Subgroup> {
    power_derived(g, 0)
}

/// `Z(G)`, elementwise.
pub fn center(g: &Group) -> Result<Subgroup> {
    budget::ensure(g.order())?;
    let gens = g.generators().to_vec();
    let elems: Vec<Elem> = par::filter(g.order() as usize, |x| gens.iter().all(|&s| g.commutes(x as Elem, s)))
        .into_iter()
        .map(|x| x as Elem)
        .collect();
    let sg = small_generating_set(g, &elems)?;
    Ok(Subgroup::from_sorted(g, elems, sg))
}

/// `C_G(S)`.
pub fn centralizer(g: &Group, s: &Subgroup) -> Result<Subgroup> {
    budget::ensure(g.order())?;
    let sg = s.generators().to_vec();
    let elems: Vec<Elem> = par::filter(g.order() as usize, |x| sg.iter().all(|&t| g.commutes(x as Elem, t)))
        .into_iter()
        .map(|x| x as Elem)
        .collect();
    let gens = small_generating_set(g, &elems)?;
    Ok(Subgroup::from_sorted(g, elems, gens))
}

/// `G/N` with lexicographically least coset representatives, and the projection.
pub fn quotient(g: &Group, n: &Subgroup) -> Result<(Group, Hom)> {
    if !n.group().same(g) {
        return Err(Error::Input("subgroup of a different group".into()));
    }
    if !n.is_normal() {
        return Err(Error::Precondition("subgroup is not normal".into()));
    }
    budget::ensure(g.order())?;
    let mut coset = vec![u32::MAX; g.order() as usize];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset[x as usize] == u32::MAX {
            let id = reps.len() as u32;
            reps.push(x);
            for &m in n.elements() {
                coset[g.mul(x, m) as usize] = id;
            }
        }
    }
    let name = format!("{}/N", g.name());
    let q = Group::new_quot(name, g, reps, coset.clone());
    let proj = Hom::from_table(g, &q, coset.into_iter().map(|c| c as Elem).collect())?;
    Ok((q, proj))
}

/// Central product `(A x B) / {(φ_A(d), φ_B(d)^-1)}` with its two canonical maps.
#[derive(Clone, Debug)]
pub struct CentralProduct {
    pub group: Group,
    pub from_a: Hom,
    pub from_b: Hom,
}

pub fn central_product(phi_a: &Hom, phi_b: &Hom) -> Result<CentralProduct> {
    let d = phi_a.domain();
    if !d.same(phi_b.domain()) {
        return Err(Error::Input("maps must share their domain".into()));
    }
    let (a, b) = (phi_a.codomain(), phi_b.codomain());
    let ia = phi_a.image()?;
    let ib = phi_b.image()?;
    if !ia.is_central() {
        return Err(Error::Precondition("identified subgroup is not central in the first group".into()));
    }
    if !ib.is_central() {
        return Err(Error::Precondition("identified subgroup is not central in the second group".into()));
    }
    let ab = Group::direct_product(a, b)?;
    let kb = b.order();
    let rel: Vec<Elem> = d.generators().iter().map(|&x| phi_a.apply(x) * kb + b.inv(phi_b.apply(x))).collect();
    let n = Subgroup::generate(&ab, &rel)?;
    let (q, proj) = quotient(&ab, &n)?;
    let from_a = Hom::from_table(a, &q, (0..a.order()).map(|x| proj.apply(x * kb)).collect())?;
    let from_b = Hom::from_table(b, &q, (0..kb).map(|y| proj.apply(y)).collect())?;
    Ok(CentralProduct { group: q, from_a, from_b })
}

/// Primary components `G_p` with their inclusions; the reassembly map
/// `∏ G_p → G` is verified to be an isomorphism.
pub fn primary_decomposition(g: &Group) -> Result<Vec<(u64, Group, Hom)>> {
    let primes: Vec<u64> = factorize(g.order()).into_iter().map(|(p, _)| p).collect();
    if primes.len() <= 1 {
        let p = primes.first().copied().unwrap_or(1);
        if p == 1 {
            return Ok(Vec::new());
        }
        let id = Hom::identity(g);
        return Ok(vec![(p, g.clone(), id)]);
    }
    let order = g.order();
    let mut parts = Vec::new();
    for &p in &primes {
        let pp = crate::arith::p_part(p, order);
        let cof = order / pp;
        // the p-part of each generator is a power of it
        let gens: Vec<Elem> = g.generators().iter().map(|&x| g.pow(x, cof as i64)).collect();
        let sub = Subgroup::generate(g, &gens)?;
        if sub.order() != pp {
            return Err(Error::Precondition(format!("{p}-part has order {} not {pp}", sub.order())));
        }
        let (gp, inc) = sub.embedded(&format!("{}_{p}", g.name()))?;
        parts.push((p, gp, inc));
    }
    // reassembly check
    let mut prod = parts[0].1.clone();
    let mut images: Vec<Elem> = parts[0].1.generators().iter().map(|&x| parts[0].2.apply(x)).collect();
    for (_, gp, inc) in &parts[1..] {
        prod = Group::direct_product(&prod, gp)?;
        images.extend(gp.generators().iter().map(|&x| inc.apply(x)));
    }
    let re = Hom::from_images(&prod, g, &images)?;
    if !re.is_injective() || prod.order() != g.order() {
        return Err(Error::Precondition("primary parts do not reassemble".into()));
    }
    Ok(parts)
}

/// Exponent of a subgroup (lcm of element orders).
pub fn subgroup_exponent(s: &Subgroup) -> u64 {
    s.elements().iter().fold(1, |acc, &x| lcm(acc, s.group().element_order(x)))
}
