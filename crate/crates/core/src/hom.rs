//! Homomorphisms stored as full image tables, verified on construction.

use crate::budget;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::subgroup::Subgroup;
use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

#[derive(Clone)]
pub struct Hom {
    dom: Group,
    cod: Group,
    table: Arc<Vec<Elem>>,
}

impl std::fmt::Debug for Hom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hom({} -> {})", self.dom.name(), self.cod.name())
    }
}

impl Hom {
    /// The homomorphism sending the domain's generators to `images`. Every edge
    /// of the Cayley graph is checked, so a relation that fails in the codomain
    /// is reported as an error.
    pub fn from_images(dom: &Group, cod: &Group, images: &[Elem]) -> Result<Hom> {
        let gens = dom.generators();
        if images.len() != gens.len() {
            return Err(Error::Input(format!("{} images for {} generators", images.len(), gens.len())));
        }
        budget::ensure(dom.order())?;
        let mut table = vec![u64::MAX; dom.order() as usize];
        table[0] = 0;
        let mut queue = VecDeque::from([0u64]);
        while let Some(x) = queue.pop_front() {
            let fx = table[x as usize];
            for (&s, &t) in gens.iter().zip(images) {
                let y = dom.mul(x, s);
                let fy = cod.mul(fx, t);
                let slot = &mut table[y as usize];
                if *slot == u64::MAX {
                    *slot = fy;
                    queue.push_back(y);
                } else if *slot != fy {
                    return Err(Error::Precondition(format!(
                        "generator images do not define a homomorphism {} -> {}",
                        dom.name(),
                        cod.name()
                    )));
                }
            }
        }
        Ok(Hom { dom: dom.clone(), cod: cod.clone(), table: Arc::new(table) })
    }

    /// From a full table; checked on every `(element, generator)` pair.
    pub fn from_table(dom: &Group, cod: &Group, table: Vec<Elem>) -> Result<Hom> {
        if table.len() as u64 != dom.order() || table.first() != Some(&0) {
            return Err(Error::Input("table does not fit the domain".into()));
        }
        for x in 0..dom.order() {
            for &s in dom.generators() {
                if table[dom.mul(x, s) as usize] != cod.mul(table[x as usize], table[s as usize]) {
                    return Err(Error::Precondition("table is not a homomorphism".into()));
                }
            }
        }
        Ok(Hom { dom: dom.clone(), cod: cod.clone(), table: Arc::new(table) })
    }

    pub fn identity(g: &Group) -> Hom {
        Hom { dom: g.clone(), cod: g.clone(), table: Arc::new((0..g.order()).collect()) }
    }

    pub fn trivial(dom: &Group, cod: &Group) -> Hom {
        Hom { dom: dom.clone(), cod: cod.clone(), table: Arc::new(vec![0; dom.order() as usize]) }
    }

    pub fn domain(&self) -> &Group {
        &self.dom
    }

    pub fn codomain(&self) -> &Group {
        &self.cod
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x as usize]
    }

    pub fn images(&self) -> Vec<Elem> {
        self.dom.generators().iter().map(|&g| self.apply(g)).collect()
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn kernel(&self) -> Result<Subgroup> {
        let elems: Vec<Elem> = (0..self.dom.order()).filter(|&x| self.apply(x) == 0).collect();
        Subgroup::generate(&self.dom, &elems)
    }

    pub fn is_injective(&self) -> bool {
        self.table.iter().skip(1).all(|&y| y != 0)
    }

    pub fn image(&self) -> Result<Subgroup> {
        Subgroup::generate(&self.cod, &self.images())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Hom) -> Result<Hom> {
        if !self.cod.same(&other.dom) {
            return Err(Error::Input("maps do not compose".into()));
        }
        let table = self.table.iter().map(|&y| other.apply(y)).collect();
        Ok(Hom { dom: self.dom.clone(), cod: other.cod.clone(), table: Arc::new(table) })
    }

    /// Codomain element to domain element, for injective maps.
    pub fn inverse_map(&self) -> HashMap<Elem, Elem> {
        self.table.iter().enumerate().map(|(x, &y)| (y, x as Elem)).collect()
    }

    /// Agreement on every element.
    pub fn same_map(&self, other: &Hom) -> bool {
        self.table == other.table
    }
}

/// Extends `phi: U → B` to `A → B` given a cyclic decomposition of `A/U`
/// (`basis[i] = (a_i, n_i)` with `n_i` the order of `a_i U`) and images `b_i`.
/// Checks the three compatibility conditions and names the first that fails:
/// (a) `φ([g, a_i]) = [φ(g), b_i]` on `U`, (b) `φ([a_i, a_j]) = [b_i, b_j]`,
/// (c) `φ(a_i^{n_i}) = b_i^{n_i}`.
pub fn extend_homomorphism(u_sub: &Subgroup, phi: &Hom, basis: &[(Elem, u64)], images: &[Elem]) -> Result<Hom> {
    let a = u_sub.group();
    let u = phi.domain();
    let b = phi.codomain();
    let local = |x: Elem| -> Result<Elem> {
        u.local_of(x).ok_or_else(|| Error::Input("element expected in the subgroup".into()))
    };
    if u.sub_parent().map(|(p, e)| !p.same(a) || e != u_sub.elements()).unwrap_or(true) {
        return Err(Error::Input("map must be defined on the given subgroup".into()));
    }
    if basis.len() != images.len() {
        return Err(Error::Input("one image per coset generator".into()));
    }
    let derived = crate::subgroup::derived_subgroup(a)?;
    if !derived.is_subgroup_of(u_sub) {
        return Err(Error::Precondition("subgroup must contain the derived subgroup".into()));
    }
    let index: u64 = basis.iter().map(|&(_, n)| n).product();
    if index * u_sub.order() != a.order() {
        return Err(Error::Precondition("coset orders do not multiply to the index".into()));
    }
    let fail = |c: &str, detail: String| Err(Error::Condition { condition: c.into(), detail });
    for (i, (&(ai, ni), &bi)) in basis.iter().zip(images).enumerate() {
        for &g in u_sub.elements() {
            let lhs = phi.apply(local(a.comm(g, ai))?);
            let rhs = b.comm(phi.apply(local(g)?), bi);
            if lhs != rhs {
                return fail("a", format!("g = {}, i = {i}", a.format(g)));
            }
        }
        for (j, (&(aj, _), &bj)) in basis.iter().zip(images).enumerate().skip(i + 1) {
            if phi.apply(local(a.comm(ai, aj))?) != b.comm(bi, bj) {
                return fail("b", format!("i = {i}, j = {j}"));
            }
        }
        let p = a.pow(ai, ni as i64);
        if !u_sub.contains(p) {
            return Err(Error::Precondition(format!("a_{i}^{ni} is not in the subgroup")));
        }
        if phi.apply(local(p)?) != b.pow(bi, ni as i64) {
            return fail("c", format!("i = {i}"));
        }
    }
    // Φ(a_1^{e_1} ⋯ a_r^{e_r} u) = b_1^{e_1} ⋯ b_r^{e_r} φ(u)
    let mut table = vec![u64::MAX; a.order() as usize];
    let mut exps = vec![0u64; basis.len()];
    loop {
        let mut pa = 0;
        let mut pb = 0;
        for (k, &e) in exps.iter().enumerate() {
            pa = a.mul(pa, a.pow(basis[k].0, e as i64));
            pb = b.mul(pb, b.pow(images[k], e as i64));
        }
        for &x in u_sub.elements() {
            let y = a.mul(pa, x);
            if table[y as usize] != u64::MAX {
                return Err(Error::Precondition("coset generators are not independent".into()));
            }
            table[y as usize] = b.mul(pb, phi.apply(local(x)?));
        }
        let mut k = 0;
        loop {
            if k == exps.len() {
                let ext = Hom::from_table(a, b, table)?;
                return Ok(ext);
            }
            exps[k] += 1;
            if exps[k] < basis[k].1 {
                break;
            }
            exps[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::PcBuilder;

    fn cyclic(n: u32) -> Group {
        let mut b = PcBuilder::new();
        b.generator("z", n);
        Group::from_pc("Z", b.build().unwrap()).unwrap()
    }

    #[test]
    fn images_must_respect_relations() {
        let z4 = cyclic(4);
        let z8 = cyclic(8);
        assert!(Hom::from_images(&z4, &z8, &[2]).is_ok());
        assert!(Hom::from_images(&z4, &z8, &[1]).is_err());
        let h = Hom::from_images(&z4, &z8, &[2]).unwrap();
        assert!(h.is_injective());
        assert_eq!(h.image().unwrap().order(), 4);
        assert_eq!(h.kernel().unwrap().order(), 1);
    }

    #[test]
    fn extension_of_trivial_decomposition() {
        let z4 = cyclic(4);
        let whole = Subgroup::whole(&z4).unwrap();
        let (u, inc) = whole.embedded("U").unwrap();
        let _ = u;
        let ext = extend_homomorphism(&whole, &inc, &[], &[]).unwrap();
        assert_eq!(ext.table(), inc.table());
    }

    #[test]
    fn extension_of_cyclic_index_two() {
        // A = Z/4, U = <2>, phi: U -> Z/8 sends 2 to 4; extend with a_1 = 1, b_1 = 2
        let z4 = cyclic(4);
        let z8 = cyclic(8);
        let u_sub = Subgroup::generate(&z4, &[2]).unwrap();
        let (u, _) = u_sub.embedded("U").unwrap();
        let phi = Hom::from_images(&u, &z8, &[4]).unwrap();
        let ext = extend_homomorphism(&u_sub, &phi, &[(1, 2)], &[2]).unwrap();
        assert!(ext.is_injective());
        // b_1 = 1 violates (c): 1^2 = 2 but φ(2) = 4
        let err = extend_homomorphism(&u_sub, &phi, &[(1, 2)], &[1]).unwrap_err();
        assert!(matches!(err, Error::Condition { ref condition, .. } if condition == "c"));
    }
}
