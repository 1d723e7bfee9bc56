//! The finite-group handle shared by every module.
//!
//! Elements are dense indices `0..order` with `0` the identity. A group is
//! either given by a polycyclic presentation or derived from other groups
//! (subgroup, quotient, direct product, class-two coproduct); derived groups
//! compute in their parents.

use crate::arith::{lcm, ord_p};
use crate::budget;
use crate::coproduct::Triples;
use crate::error::{Error, Result};
use crate::pc::{Exps, PcPresentation};
use std::fmt;
use std::sync::Arc;

pub type Elem = u64;

/// Groups at most this large get a precomputed multiplication table.
const TABLE_MAX: u64 = 256;

/// Exhaustive consistency checks apply up to this order.
const EXHAUSTIVE_CONSISTENCY: u64 = 4096;
const RANDOM_CONSISTENCY_SAMPLES: usize = 10_000;

#[derive(Clone)]
pub struct Group(Arc<GroupData>);

struct GroupData {
    name: String,
    order: u64,
    gens: Vec<Elem>,
    kind: Kind,
    table: Option<Tables>,
}

struct Tables {
    mul: Vec<u16>,
    inv: Vec<u16>,
}

pub(crate) enum Kind {
    Pc(PcPresentation),
    Sub { parent: Group, elems: Vec<Elem> },
    Quot { parent: Group, reps: Vec<Elem>, coset: Vec<u32> },
    Direct { left: Group, right: Group },
    Coproduct(Box<Triples>),
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.0.name, self.0.order)
    }
}

impl Group {
    fn assemble(name: String, order: u64, gens: Vec<Elem>, kind: Kind) -> Group {
        let mut gens_clean: Vec<Elem> = Vec::new();
        for g in gens {
            if g != 0 && !gens_clean.contains(&g) {
                gens_clean.push(g);
            }
        }
        let mut data = GroupData { name, order, gens: gens_clean, kind, table: None };
        let wants_table = matches!(data.kind, Kind::Pc(_) | Kind::Quot { .. } | Kind::Coproduct(_));
        if wants_table && order <= TABLE_MAX {
            let n = order as usize;
            let mut mul = vec![0u16; n * n];
            let mut inv = vec![0u16; n];
            for a in 0..n {
                for b in 0..n {
                    let c = data.mul_raw(a as Elem, b as Elem);
                    mul[a * n + b] = c as u16;
                    if c == 0 {
                        inv[a] = b as u16;
                    }
                }
            }
            data.table = Some(Tables { mul, inv });
        }
        Group(Arc::new(data))
    }

    /// A group from a polycyclic presentation, after checking that commutator
    /// tails are central and that collection is consistent.
    pub fn from_pc(name: &str, pres: PcPresentation) -> Result<Group> {
        pres.check_central_tails()?;
        pres.check_consistency(EXHAUSTIVE_CONSISTENCY, RANDOM_CONSISTENCY_SAMPLES)?;
        let gens = (0..pres.len()).map(|i| pres.encode(&pres.generator(i))).collect();
        let order = pres.order();
        Ok(Group::assemble(name.to_string(), order, gens, Kind::Pc(pres)))
    }

    pub fn trivial() -> Group {
        let pres = crate::pc::PcBuilder::new().build().expect("empty presentation");
        Group::from_pc("1", pres).expect("trivial group")
    }

    /// Subgroup given by its sorted parent elements and parent generators.
    pub(crate) fn new_sub(name: String, parent: &Group, elems: Vec<Elem>, parent_gens: &[Elem]) -> Group {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]) && elems.first() == Some(&0));
        let gens = parent_gens
            .iter()
            .map(|g| elems.binary_search(g).expect("generator inside subgroup") as Elem)
            .collect();
        let order = elems.len() as u64;
        Group::assemble(name, order, gens, Kind::Sub { parent: parent.clone(), elems })
    }

    pub(crate) fn new_quot(name: String, parent: &Group, reps: Vec<Elem>, coset: Vec<u32>) -> Group {
        let gens = parent.generators().iter().map(|&g| coset[g as usize] as Elem).collect();
        let order = reps.len() as u64;
        Group::assemble(name, order, gens, Kind::Quot { parent: parent.clone(), reps, coset })
    }

    pub(crate) fn new_coproduct(name: String, data: Triples, gens: Vec<Elem>) -> Group {
        let order = data.order();
        Group::assemble(name, order, gens, Kind::Coproduct(Box::new(data)))
    }

    /// External direct product; elements are indexed `a * |right| + b`.
    pub fn direct_product(left: &Group, right: &Group) -> Result<Group> {
        let order = left
            .order()
            .checked_mul(right.order())
            .ok_or_else(|| Error::Input("direct product order overflows".into()))?;
        let kr = right.order();
        let mut gens: Vec<Elem> = left.generators().iter().map(|&g| g * kr).collect();
        gens.extend(right.generators().iter().copied());
        let name = format!("{} x {}", left.name(), right.name());
        Ok(Group::assemble(name, order, gens, Kind::Direct { left: left.clone(), right: right.clone() }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    /// A copy of this handle under another display name (shares all data).
    pub fn renamed(&self, name: &str) -> Group {
        let gens = self.0.gens.clone();
        let kind = match &self.0.kind {
            Kind::Pc(p) => Kind::Pc(p.clone()),
            Kind::Sub { parent, elems } => Kind::Sub { parent: parent.clone(), elems: elems.clone() },
            Kind::Quot { parent, reps, coset } => {
                Kind::Quot { parent: parent.clone(), reps: reps.clone(), coset: coset.clone() }
            }
            Kind::Direct { left, right } => Kind::Direct { left: left.clone(), right: right.clone() },
            Kind::Coproduct(t) => Kind::Coproduct(t.clone()),
        };
        Group::assemble(name.to_string(), self.0.order, gens, kind)
    }

    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn generators(&self) -> &[Elem] {
        &self.0.gens
    }

    pub fn identity(&self) -> Elem {
        0
    }

    /// Whether both handles refer to the same group object.
    pub fn same(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn pc(&self) -> Option<&PcPresentation> {
        match &self.0.kind {
            Kind::Pc(p) => Some(p),
            _ => None,
        }
    }

    /// Normal-form exponent vector for groups given by a presentation.
    pub fn exps(&self, a: Elem) -> Option<Exps> {
        self.pc().map(|p| p.decode(a))
    }

    /// Element with the given exponent vector (presentation groups only).
    pub fn from_exps(&self, e: &[u32]) -> Result<Elem> {
        let p = self.pc().ok_or_else(|| Error::Input("group has no presentation".into()))?;
        if e.len() != p.len() || e.iter().zip(p.rel_orders()).any(|(&x, &r)| x >= r) {
            return Err(Error::Input("exponent vector out of range".into()));
        }
        let mut v = p.identity();
        v[..e.len()].copy_from_slice(e);
        Ok(p.encode(&v))
    }

    /// Collects a word `[(generator, exponent)]` over the group's generators.
    pub fn word(&self, w: &[(usize, i64)]) -> Result<Elem> {
        if let Some(p) = self.pc() {
            return Ok(p.encode(&p.collect(w)?));
        }
        let mut acc = 0;
        for &(g, t) in w {
            let x = *self
                .generators()
                .get(g)
                .ok_or_else(|| Error::Input(format!("generator index {g} out of range")))?;
            acc = self.mul(acc, self.pow(x, t));
        }
        Ok(acc)
    }

    /// Subgroup elements in parent coordinates, for subgroups.
    pub fn sub_parent(&self) -> Option<(&Group, &[Elem])> {
        match &self.0.kind {
            Kind::Sub { parent, elems } => Some((parent, elems)),
            _ => None,
        }
    }

    /// Local index of a parent element, for subgroups.
    pub fn local_of(&self, parent_elem: Elem) -> Option<Elem> {
        match &self.0.kind {
            Kind::Sub { elems, .. } => elems.binary_search(&parent_elem).ok().map(|i| i as Elem),
            _ => None,
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if let Some(t) = &self.0.table {
            return t.mul[(a * self.0.order + b) as usize] as Elem;
        }
        self.0.mul_raw(a, b)
    }

    pub fn inv(&self, a: Elem) -> Elem {
        if let Some(t) = &self.0.table {
            return t.inv[a as usize] as Elem;
        }
        self.0.inv_raw(a)
    }

    pub fn pow(&self, a: Elem, t: i64) -> Elem {
        let (mut base, mut k) = if t < 0 { (self.inv(a), t.unsigned_abs()) } else { (a, t as u64) };
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(base, base);
            }
        }
        acc
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn comm(&self, a: Elem, b: Elem) -> Elem {
        let ba = self.mul(b, a);
        let ab = self.mul(a, b);
        self.mul(self.inv(ba), ab)
    }

    /// `b^-1 a b`.
    pub fn conj(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(b), a), b)
    }

    pub fn element_order(&self, a: Elem) -> u64 {
        let mut x = a;
        let mut t = 1;
        while x != 0 {
            x = self.mul(x, a);
            t += 1;
        }
        t
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.generators();
        g.iter().enumerate().all(|(i, &a)| g[i + 1..].iter().all(|&b| self.commutes(a, b)))
    }

    /// Exponent of the group. For class two, `exp(G) | e` exactly when every
    /// generator has order dividing `e` and `exp(G')` divides `e(e-1)/2`;
    /// this pins the exponent to `L` or `2L` with `L` the lcm of generator orders.
    pub fn exponent(&self) -> u64 {
        let l = self.generators().iter().fold(1, |acc, &g| lcm(acc, self.element_order(g)));
        let d = self.derived_exponent();
        if l % 2 == 1 || ord_p(2, d) < ord_p(2, l) {
            l
        } else {
            2 * l
        }
    }

    /// Exponent of the derived subgroup: lcm of orders of generator commutators.
    pub fn derived_exponent(&self) -> u64 {
        let g = self.generators();
        let mut e = 1;
        for (i, &a) in g.iter().enumerate() {
            for &b in &g[i + 1..] {
                e = lcm(e, self.element_order(self.comm(a, b)));
            }
        }
        e
    }

    /// All elements, subject to the element budget.
    pub fn elements(&self) -> Result<std::ops::Range<Elem>> {
        budget::ensure(self.order())?;
        Ok(0..self.order())
    }

    /// Human-readable form of an element.
    pub fn format(&self, a: Elem) -> String {
        match &self.0.kind {
            Kind::Pc(p) => p.format(&p.decode(a)),
            Kind::Sub { parent, elems } => parent.format(elems[a as usize]),
            Kind::Quot { parent, reps, .. } => parent.format(reps[a as usize]),
            Kind::Direct { left, right } => {
                let kr = right.order();
                format!("({}, {})", left.format(a / kr), right.format(a % kr))
            }
            Kind::Coproduct(t) => t.format(a),
        }
    }

    /// Full multiplication table, for brute-force checks on small groups.
    pub fn cayley_table(&self) -> Result<Vec<Vec<Elem>>> {
        budget::ensure(self.order().saturating_mul(self.order()))?;
        let n = self.order();
        Ok((0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect())
    }
}

impl GroupData {
    fn mul_raw(&self, a: Elem, b: Elem) -> Elem {
        match &self.kind {
            Kind::Pc(p) => p.encode(&p.mul(&p.decode(a), &p.decode(b))),
            Kind::Sub { parent, elems } => {
                let c = parent.mul(elems[a as usize], elems[b as usize]);
                elems.binary_search(&c).expect("subgroup closed under products") as Elem
            }
            Kind::Quot { parent, reps, coset } => {
                coset[parent.mul(reps[a as usize], reps[b as usize]) as usize] as Elem
            }
            Kind::Direct { left, right } => {
                let kr = right.order();
                left.mul(a / kr, b / kr) * kr + right.mul(a % kr, b % kr)
            }
            Kind::Coproduct(t) => t.mul(a, b),
        }
    }

    fn inv_raw(&self, a: Elem) -> Elem {
        match &self.kind {
            Kind::Pc(p) => p.encode(&p.inverse(&p.decode(a))),
            Kind::Sub { parent, elems } => {
                let c = parent.inv(elems[a as usize]);
                elems.binary_search(&c).expect("subgroup closed under inverses") as Elem
            }
            Kind::Quot { parent, reps, coset } => coset[parent.inv(reps[a as usize]) as usize] as Elem,
            Kind::Direct { left, right } => {
                let kr = right.order();
                left.inv(a / kr) * kr + right.inv(a % kr)
            }
            Kind::Coproduct(t) => t.inv(a),
        }
    }
}
