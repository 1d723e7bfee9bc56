//! Amalgams `(A, B; D)` and the embeddability criteria.

use crate::arith::{divisors, lcm};
use crate::classes::{q_values, Classes};
use crate::coproduct::require_member;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::hom::Hom;
use crate::par;
use crate::subgroup::{center, power_derived, verbal_subgroups, Subgroup};
use crate::variety::{minimal_variety, Variety};
use crate::verdict::{Verdict, Witness};
use std::collections::HashSet;
use std::sync::Arc;

const NONE: Elem = Elem::MAX;

/// Two groups sharing a core `D` through injective maps `φ_A`, `φ_B`.
#[derive(Clone)]
pub struct Amalgam {
    name: String,
    a: Group,
    b: Group,
    d: Group,
    phi_a: Hom,
    phi_b: Hom,
    /// `φ_B φ_A⁻¹` on the core of `A` (`NONE` elsewhere), and back.
    a_to_b: Arc<Vec<Elem>>,
    b_to_a: Arc<Vec<Elem>>,
}

impl std::fmt::Debug for Amalgam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Amalgam({}: |A|={}, |B|={}, |D|={})", self.name, self.a.order(), self.b.order(), self.d.order())
    }
}

impl Amalgam {
    pub fn new(name: &str, phi_a: Hom, phi_b: Hom) -> Result<Amalgam> {
        if !phi_a.domain().same(phi_b.domain()) {
            return Err(Error::Input("both embeddings must start at the core".into()));
        }
        if !phi_a.is_injective() {
            return Err(Error::Precondition("the map into the first group is not injective".into()));
        }
        if !phi_b.is_injective() {
            return Err(Error::Precondition("the map into the second group is not injective".into()));
        }
        let (a, b) = (phi_a.codomain().clone(), phi_b.codomain().clone());
        let mut a_to_b = vec![NONE; a.order() as usize];
        let mut b_to_a = vec![NONE; b.order() as usize];
        for x in 0..phi_a.domain().order() {
            a_to_b[phi_a.apply(x) as usize] = phi_b.apply(x);
            b_to_a[phi_b.apply(x) as usize] = phi_a.apply(x);
        }
        Ok(Amalgam {
            name: name.to_string(),
            d: phi_a.domain().clone(),
            a,
            b,
            phi_a,
            phi_b,
            a_to_b: Arc::new(a_to_b),
            b_to_a: Arc::new(b_to_a),
        })
    }

    /// `(A, B; A ∩ B)` for two subgroups of one ambient group.
    pub fn from_subgroups(name: &str, a: &Subgroup, b: &Subgroup) -> Result<Amalgam> {
        if !a.group().same(b.group()) {
            return Err(Error::Input("subgroups of different groups".into()));
        }
        let d = a.intersect(b)?;
        let ga = a.to_group("A");
        let gb = b.to_group("B");
        let gd = d.to_group("D");
        let into = |target: &Group| -> Result<Hom> {
            let table = d.elements().iter().map(|&x| target.local_of(x).expect("core inside both")).collect();
            Hom::from_table(&gd, target, table)
        };
        Amalgam::new(name, into(&ga)?, into(&gb)?)
    }

    /// The special amalgam `(G, G; H)`.
    pub fn special(name: &str, h: &Subgroup) -> Result<Amalgam> {
        let (gh, inc) = h.embedded("H")?;
        let _ = gh;
        Amalgam::new(name, inc.clone(), inc)
    }

    /// `(B, A; D)`.
    pub fn swapped(&self) -> Amalgam {
        Amalgam {
            name: self.name.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
            d: self.d.clone(),
            phi_a: self.phi_b.clone(),
            phi_b: self.phi_a.clone(),
            a_to_b: self.b_to_a.clone(),
            b_to_a: self.a_to_b.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn a(&self) -> &Group {
        &self.a
    }

    pub fn b(&self) -> &Group {
        &self.b
    }

    pub fn d(&self) -> &Group {
        &self.d
    }

    pub fn phi_a(&self) -> &Hom {
        &self.phi_a
    }

    pub fn phi_b(&self) -> &Hom {
        &self.phi_b
    }

    /// Whether both sides are literally the same group over one core map.
    pub fn is_special(&self) -> bool {
        self.a.same(&self.b) && self.phi_a.same_map(&self.phi_b)
    }

    /// The partner in `B` of a core element of `A`.
    pub fn a_to_b(&self, x: Elem) -> Option<Elem> {
        Some(self.a_to_b[x as usize]).filter(|&y| y != NONE)
    }

    pub fn b_to_a(&self, y: Elem) -> Option<Elem> {
        Some(self.b_to_a[y as usize]).filter(|&x| x != NONE)
    }

    pub fn core_in_a(&self) -> Result<Subgroup> {
        self.phi_a.image()
    }

    pub fn core_in_b(&self) -> Result<Subgroup> {
        self.phi_b.image()
    }
}

/// Which `q | n` to range over in the product condition of weak embeddability.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QMode {
    AllDivisors,
    PrimePowers,
}

/// Structural hypothesis for the special-case strong criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreShape {
    /// `B = ⟨D, Z(B)⟩`.
    Cocentral,
    /// `D ⊆ Z(B)`.
    CentralCore,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    Weak,
    Strong,
}

/// Classes of `A/AⁿA′` and `B/BⁿB′`, with for every class `t` of the core's
/// image a core element lying in it.
struct Sides {
    ca: Classes,
    cb: Classes,
    core_rep_a: Vec<Option<Elem>>,
    core_rep_b: Vec<Option<Elem>>,
}

impl Sides {
    fn new(am: &Amalgam, n: u64) -> Result<Sides> {
        let ca = Classes::new(am.a(), n)?;
        let cb = Classes::new(am.b(), n)?;
        let mut core_rep_a = vec![None; ca.size() as usize];
        let mut core_rep_b = vec![None; cb.size() as usize];
        for d in 0..am.d().order() {
            let ta = ca.class_of(am.phi_a().apply(d)) as usize;
            core_rep_a[ta].get_or_insert(d);
            let tb = cb.class_of(am.phi_b().apply(d)) as usize;
            core_rep_b[tb].get_or_insert(d);
        }
        Ok(Sides { ca, cb, core_rep_a, core_rep_b })
    }

    /// Classes `ā` with `q·ā` in the core's image, each with a core element
    /// `d` such that `φ(d) ≡ a^q`.
    fn admissible(cl: &Classes, core_rep: &[Option<Elem>], q: u64) -> Vec<(u64, Elem)> {
        let powers = cl.scale_table(q);
        (0..cl.size()).filter_map(|c| core_rep[powers[c as usize] as usize].map(|d| (c, d))).collect()
    }
}

/// `A^nA′ ∩ D ⊆ Z(B)` and `B^nB′ ∩ D ⊆ Z(A)`.
fn central_condition(am: &Amalgam, n: u64, clause: &str) -> Result<Option<Witness>> {
    let pa = power_derived(am.a(), n)?;
    let pb = power_derived(am.b(), n)?;
    for d in 0..am.d().order() {
        let (xa, xb) = (am.phi_a().apply(d), am.phi_b().apply(d));
        if pa.contains(xa) {
            if let Some(&b) = am.b().generators().iter().find(|&&b| !am.b().commutes(xb, b)) {
                let w = Witness::new(clause).with("element", am.a().format(xa)).with("b", am.b().format(b));
                return Ok(Some(w));
            }
        }
        if pb.contains(xb) {
            if let Some(&a) = am.a().generators().iter().find(|&&a| !am.a().commutes(xa, a)) {
                let w = Witness::new(clause).with("element", am.b().format(xb)).with("a", am.a().format(a));
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

fn require_members(am: &Amalgam, v: &Variety) -> Result<()> {
    require_member(v, am.a())?;
    require_member(v, am.b())
}

fn common_exponent(am: &Amalgam) -> u64 {
    lcm(am.a().exponent(), am.b().exponent())
}

/// Strong embeddability in `v`.
pub fn check_strong(am: &Amalgam, v: &Variety) -> Result<Verdict> {
    require_members(am, v)?;
    if let Some(w) = central_condition(am, v.n(), "a")? {
        return Ok(Verdict::no(w));
    }
    let sides = Sides::new(am, v.n())?;
    let (a, b) = (am.a(), am.b());
    for q in q_values(v.n(), common_exponent(am), true) {
        let adm_a = Sides::admissible(&sides.ca, &sides.core_rep_a, q);
        let adm_b = Sides::admissible(&sides.cb, &sides.core_rep_b, q);
        // once (a) holds, both sides are constant on classes and on the choice of core element
        let bad = par::find_first(adm_a.len() * adm_b.len(), |k| {
            let (ca, d1) = adm_a[k / adm_b.len()];
            let (cb, d2) = adm_b[k % adm_b.len()];
            let (x, y) = (sides.ca.rep(ca), sides.cb.rep(cb));
            let in_a = a.comm(x, am.phi_a().apply(d2));
            let in_b = b.comm(am.phi_b().apply(d1), y);
            (am.a_to_b(in_a) != Some(in_b)).then_some((x, d1, y, d2))
        });
        if let Some((x, d1, y, d2)) = bad {
            let xq = a.pow(x, q as i64);
            let yq = b.pow(y, q as i64);
            let w = Witness::new("b")
                .with("q", q.to_string())
                .with("a", a.format(x))
                .with("a'", a.format(a.mul(a.inv(xq), am.phi_a().apply(d1))))
                .with("b", b.format(y))
                .with("b'", b.format(b.mul(b.inv(yq), am.phi_b().apply(d2))));
            return Ok(Verdict::no(w));
        }
    }
    Ok(Verdict::yes())
}

/// Weak embeddability in `v`, with the product condition over all `q | n`.
pub fn check_weak(am: &Amalgam, v: &Variety) -> Result<Verdict> {
    check_weak_with(am, v, QMode::AllDivisors)
}

/// Weak embeddability. The product condition is decided on the subgroup of
/// `Z(A) × Z(B)` generated by the pairs `([a, b^q b′], [a^q a′, b])`.
pub fn check_weak_with(am: &Amalgam, v: &Variety, mode: QMode) -> Result<Verdict> {
    require_members(am, v)?;
    if let Some(w) = central_condition(am, v.n(), "1")? {
        return Ok(Verdict::no(w));
    }
    let sides = Sides::new(am, v.n())?;
    let (a, b) = (am.a(), am.b());
    let mut pairs: HashSet<(Elem, Elem)> = HashSet::new();
    for q in q_values(v.n(), common_exponent(am), mode == QMode::PrimePowers) {
        let adm_a = Sides::admissible(&sides.ca, &sides.core_rep_a, q);
        let adm_b = Sides::admissible(&sides.cb, &sides.core_rep_b, q);
        for &(ca, d1) in &adm_a {
            let x = sides.ca.rep(ca);
            for &(cb, d2) in &adm_b {
                let y = sides.cb.rep(cb);
                pairs.insert((a.comm(x, am.phi_a().apply(d2)), b.comm(am.phi_b().apply(d1), y)));
            }
        }
    }
    let ab = Group::direct_product(a, b)?;
    let kb = b.order();
    let mut gens: Vec<Elem> = pairs.into_iter().map(|(x, y)| x * kb + y).collect();
    gens.sort_unstable();
    let w = Subgroup::generate(&ab, &gens)?;
    for &u in w.elements() {
        let (ua, ub) = (u / kb, u % kb);
        let fa = am.a_to_b(ua);
        let fb = am.b_to_a(ub);
        if (fa.is_some() || fb.is_some()) && fa != Some(ub) {
            let wit = Witness::new("2").with("product in A", a.format(ua)).with("product in B", b.format(ub));
            return Ok(Verdict::no(wit));
        }
    }
    Ok(Verdict::yes())
}

/// Strong embeddability through the criteria for a cocentral or central core
/// in one factor. The amalgam is swapped if only `A` has the required shape.
pub fn check_strong_special_case(am: &Amalgam, v: &Variety, shape: CoreShape) -> Result<Verdict> {
    require_members(am, v)?;
    let fits = |x: &Amalgam| -> Result<bool> {
        let core = x.core_in_b()?;
        Ok(match shape {
            CoreShape::CentralCore => core.is_central(),
            CoreShape::Cocentral => core.join(&center(x.b())?)?.is_whole(),
        })
    };
    let am = if fits(am)? {
        am.clone()
    } else if fits(&am.swapped())? {
        am.swapped()
    } else {
        return Err(Error::Precondition(format!("the core has the {shape:?} shape in neither factor")));
    };
    let (a, b) = (am.a(), am.b());
    let n = v.n();
    // (1)
    let big = match shape {
        CoreShape::Cocentral => verbal_subgroups(b, n)?.power,
        CoreShape::CentralCore => power_derived(b, n)?,
    };
    for d in 0..am.d().order() {
        if big.contains(am.phi_b().apply(d)) {
            let xa = am.phi_a().apply(d);
            if let Some(&g) = a.generators().iter().find(|&&g| !a.commutes(xa, g)) {
                let w = Witness::new("1").with("element", a.format(xa)).with("a", a.format(g));
                return Ok(Verdict::no(w));
            }
        }
    }
    // (2)
    let ca = Classes::new(a, n)?;
    let mut core_rep = vec![None; ca.size() as usize];
    for d in 0..am.d().order() {
        core_rep[ca.class_of(am.phi_a().apply(d)) as usize].get_or_insert(d);
    }
    let qs = match n {
        0 => (1..=common_exponent(&am)).collect(),
        _ => divisors(n),
    };
    for q in qs {
        // core elements of the form b^q b′ allowed by the proposition
        let reachable = match shape {
            CoreShape::Cocentral => {
                let z = center(b)?;
                let mut gens: Vec<Elem> = z.generators().iter().map(|&x| b.pow(x, q as i64)).collect();
                gens.extend_from_slice(verbal_subgroups(b, n)?.power.generators());
                Subgroup::generate(b, &gens)?
            }
            CoreShape::CentralCore => power_derived(b, q)?.join(&power_derived(b, n)?)?,
        };
        let targets: Vec<Elem> = (0..am.d().order()).filter(|&d| reachable.contains(am.phi_b().apply(d))).collect();
        let targets = Subgroup::generate(am.d(), &targets)?;
        for (c, _) in Sides::admissible(&ca, &core_rep, q) {
            let x = ca.rep(c);
            for &d in targets.generators() {
                if !a.commutes(x, am.phi_a().apply(d)) {
                    let w = Witness::new("2")
                        .with("q", q.to_string())
                        .with("a", a.format(x))
                        .with("core element", a.format(am.phi_a().apply(d)));
                    return Ok(Verdict::no(w));
                }
            }
        }
    }
    Ok(Verdict::yes())
}

/// The least variety in which the amalgam embeds, or `None` if there is none.
///
/// The criteria only see `n` through `gcd(n, E)` with `E = lcm(exp A, exp B)`,
/// and do not depend on `m` beyond membership, so the meet is found on the
/// varieties with parameters dividing `E` (or zero) and its `m` is then
/// lowered to the least value admissible for its `n`.
pub fn embeddability_filter_generator(am: &Amalgam, kind: Embedding) -> Result<Option<Variety>> {
    let floor = minimal_variety(am.a()).join(&minimal_variety(am.b()));
    let e = common_exponent(am);
    let mut members: Vec<Variety> = Vec::new();
    for v in Variety::sublattice(e) {
        if !floor.is_subvariety_of(&v) {
            continue;
        }
        let ok = match kind {
            Embedding::Weak => check_weak(am, &v)?.value,
            Embedding::Strong => check_strong(am, &v)?.value,
        };
        if ok {
            members.push(v);
        }
    }
    let Some(first) = members.first().copied() else {
        return Ok(None);
    };
    let meet = members.iter().fold(first, |acc, v| acc.meet(v));
    if !members.contains(&meet) {
        return Err(Error::Inconsistent(format!("embeddability varieties are not closed under meets at {meet}")));
    }
    if meet.n() == 0 {
        return Ok(Some(meet));
    }
    // m = 2·n·m_floor is always admissible, so the search terminates
    let least = (1..=2 * meet.n())
        .find_map(|k| Variety::new(k * floor.m(), meet.n()).ok())
        .expect("an admissible exponent exists");
    let holds = match kind {
        Embedding::Weak => check_weak(am, &least)?.value,
        Embedding::Strong => check_strong(am, &least)?.value,
    };
    if !holds {
        return Err(Error::Inconsistent(format!("embeddability at {meet} does not carry over to {least}")));
    }
    Ok(Some(least))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pc::PcBuilder;

    fn guiding() -> Amalgam {
        let mut b = PcBuilder::new();
        let x = b.generator("x", 4);
        let y = b.generator("y", 4);
        let c = b.generator("c", 4);
        b.comm(y, x, vec![(c, 1)]);
        let m = Group::from_pc("M", b.build().unwrap()).unwrap();
        let gx = m.word(&[(0, 1)]).unwrap();
        let x2 = m.word(&[(0, 2)]).unwrap();
        let gy = m.word(&[(1, 1)]).unwrap();
        let a = Subgroup::generate(&m, &[gx]).unwrap();
        let bb = Subgroup::generate(&m, &[x2, gy]).unwrap();
        Amalgam::from_subgroups("guiding", &a, &bb).unwrap()
    }

    fn cyclic(name: &str, k: u32) -> Group {
        let mut b = PcBuilder::new();
        b.generator("z", k);
        Group::from_pc(name, b.build().unwrap()).unwrap()
    }

    fn dihedral() -> Group {
        let mut b = PcBuilder::new();
        let x = b.generator("x", 2);
        let y = b.generator("y", 2);
        let c = b.generator("c", 2);
        b.comm(y, x, vec![(c, 1)]);
        Group::from_pc("D8", b.build().unwrap()).unwrap()
    }

    #[test]
    fn cocentral_core_meeting_squares_off_centre() {
        // D = <b^2> in B = Z/4 goes to the noncentral x of D8; with n = 2, B^n ∩ D = D
        let (a, b, d) = (dihedral(), cyclic("B", 4), cyclic("D", 2));
        let into_a = Hom::from_images(&d, &a, &[a.word(&[(0, 1)]).unwrap()]).unwrap();
        let into_b = Hom::from_images(&d, &b, &[b.word(&[(0, 2)]).unwrap()]).unwrap();
        let am = Amalgam::new("offcentre", into_a, into_b).unwrap();
        let v = Variety::new(4, 2).unwrap();
        let verdict = check_strong_special_case(&am, &v, CoreShape::Cocentral).unwrap();
        assert!(!verdict.value);
        assert_eq!(verdict.clause(), Some("1"));
        assert!(!check_strong(&am, &v).unwrap().value);
    }

    #[test]
    fn core_equal_to_centre() {
        // D = Z(D8) = <c> amalgamated with Z/2
        let (a, b, d) = (dihedral(), cyclic("B", 2), cyclic("D", 2));
        let into_a = Hom::from_images(&d, &a, &[a.word(&[(2, 1)]).unwrap()]).unwrap();
        let into_b = Hom::from_images(&d, &b, &[b.word(&[(0, 1)]).unwrap()]).unwrap();
        let am = Amalgam::new("centre", into_a, into_b).unwrap();
        let v = Variety::new(4, 2).unwrap();
        for shape in [CoreShape::Cocentral, CoreShape::CentralCore] {
            assert!(check_strong_special_case(&am, &v, shape).unwrap().value);
        }
        assert!(check_strong(&am, &v).unwrap().value);
    }

    #[test]
    fn special_case_needs_its_shape() {
        // D = <x> is neither central nor cocentral in D8 on either side
        let a = dihedral();
        let h = Subgroup::generate(&a, &[a.word(&[(0, 1)]).unwrap()]).unwrap();
        let am = Amalgam::special("plain", &h).unwrap();
        let v = Variety::new(4, 2).unwrap();
        assert!(matches!(check_strong_special_case(&am, &v, CoreShape::CentralCore), Err(Error::Precondition(_))));
    }

    #[test]
    fn guiding_orders() {
        let am = guiding();
        assert_eq!((am.a().order(), am.b().order(), am.d().order()), (4, 16, 2));
    }

    #[test]
    fn guiding_verdicts() {
        let am = guiding();
        let v42 = Variety::new(4, 2).unwrap();
        let v84 = Variety::new(8, 4).unwrap();
        let weak = check_weak(&am, &v42).unwrap();
        assert!(!weak.value);
        assert_eq!(weak.witness.as_ref().unwrap().get("element"), Some("x^2"));
        assert!(check_strong(&am, &v84).unwrap().value);
        assert!(check_weak(&am, &v84).unwrap().value);
        assert!(!check_strong(&am, &v42).unwrap().value);
    }

    #[test]
    fn guiding_filter() {
        let am = guiding();
        let v84 = Variety::new(8, 4).unwrap();
        for kind in [Embedding::Strong, Embedding::Weak] {
            assert_eq!(embeddability_filter_generator(&am, kind).unwrap(), Some(v84));
        }
    }

    #[test]
    fn filter_of_trivial_and_impossible_amalgams() {
        let a = dihedral();
        let whole = Amalgam::special("whole", &Subgroup::whole(&a).unwrap()).unwrap();
        let floor = minimal_variety(&a);
        assert_eq!(embeddability_filter_generator(&whole, Embedding::Strong).unwrap(), Some(floor));
        // a commutator of A identified with a noncentral element of B
        let d = cyclic("D", 2);
        let into_a = Hom::from_images(&d, &a, &[a.word(&[(2, 1)]).unwrap()]).unwrap();
        let into_b = Hom::from_images(&d, &a, &[a.word(&[(0, 1)]).unwrap()]).unwrap();
        let am = Amalgam::new("nowhere", into_a, into_b).unwrap();
        assert_eq!(embeddability_filter_generator(&am, Embedding::Weak).unwrap(), None);
    }

    #[test]
    fn swap_preserves_verdicts() {
        let am = guiding();
        for v in [Variety::new(4, 2).unwrap(), Variety::new(8, 4).unwrap()] {
            assert_eq!(check_strong(&am, &v).unwrap().value, check_strong(&am.swapped(), &v).unwrap().value);
            assert_eq!(check_weak(&am, &v).unwrap().value, check_weak(&am.swapped(), &v).unwrap().value);
        }
    }
}
