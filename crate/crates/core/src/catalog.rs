//! Named example groups and amalgams, each carrying the verdicts it is known
//! to produce as machine-checkable claims.

use crate::amalgam::{check_strong, check_weak, Amalgam};
use crate::arith::pow_u64;
use crate::bases::{is_special_base, is_strong_base};
use crate::budget;
use crate::dominion::dominion;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::pc::PcBuilder;
use crate::subgroup::Subgroup;
use crate::variety::Variety;
use std::fmt;

pub const NAMES: &[&str] = &[
    "guidingex",
    "bsmall",
    "bbig",
    "firstentryall",
    "notanideal",
    "advanceinboth",
    "bbigspecial",
    "advancesecondsp",
    "bsmallspecial",
    "newprimesquare",
    "oldprime",
    "cycliccentre",
];

/// Family parameters. Families use `p`, `a`, `b`; `newprimesquare` and
/// `oldprime` use `p` and `n`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Params {
    pub p: u64,
    pub a: u32,
    pub b: u32,
    pub n: u64,
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={}, a={}, b={}, n={}", self.p, self.a, self.b, self.n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Claim {
    StrongBase(Variety, bool),
    SpecialBase(Variety, bool),
    WeakEmbedding(Variety, bool),
    StrongEmbedding(Variety, bool),
    /// The overgroup element lies in the dominion of the subgroup but not in the subgroup.
    DominionGrows(Variety, Elem),
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::StrongBase(v, e) => write!(f, "strong base in {v}: {e}"),
            Claim::SpecialBase(v, e) => write!(f, "special base in {v}: {e}"),
            Claim::WeakEmbedding(v, e) => write!(f, "weakly embeddable in {v}: {e}"),
            Claim::StrongEmbedding(v, e) => write!(f, "strongly embeddable in {v}: {e}"),
            Claim::DominionGrows(v, x) => write!(f, "dominion in {v} contains element {x} outside the subgroup"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub params: Params,
    pub group: Option<Group>,
    pub amalgam: Option<Amalgam>,
    /// An overgroup together with the subgroup whose dominion is claimed to grow.
    pub overgroup: Option<(Group, Subgroup)>,
    pub claims: Vec<Claim>,
}

impl Entry {
    fn new(name: &str, params: Params) -> Entry {
        Entry { name: name.into(), params, group: None, amalgam: None, overgroup: None, claims: Vec::new() }
    }

    /// Adds a base claim only when the variety is valid.
    fn base(&mut self, special: bool, m: u64, n: u64, expected: bool) {
        if let Ok(v) = Variety::new(m, n) {
            self.claims.push(if special { Claim::SpecialBase(v, expected) } else { Claim::StrongBase(v, expected) });
        }
    }

    /// Evaluates one claim; `Ok(true)` when the checker agrees.
    pub fn check(&self, claim: &Claim) -> Result<bool> {
        let group = || self.group.as_ref().ok_or_else(|| Error::Input(format!("{} has no group", self.name)));
        let amalgam = || self.amalgam.as_ref().ok_or_else(|| Error::Input(format!("{} has no amalgam", self.name)));
        Ok(match claim {
            Claim::StrongBase(v, e) => is_strong_base(group()?, v)?.value == *e,
            Claim::SpecialBase(v, e) => is_special_base(group()?, v)?.value == *e,
            Claim::WeakEmbedding(v, e) => check_weak(amalgam()?, v)?.value == *e,
            Claim::StrongEmbedding(v, e) => check_strong(amalgam()?, v)?.value == *e,
            Claim::DominionGrows(v, x) => {
                let (_, h) = self.overgroup.as_ref().ok_or_else(|| Error::Input("no overgroup".into()))?;
                !h.contains(*x) && dominion(h, v)?.contains(*x)
            }
        })
    }
}

/// The parameters used for each family at `p = 2` and `p = 3`: the smallest
/// instances whose claimed varieties are all valid.
pub fn default_params(name: &str, p: u64) -> Result<Params> {
    let (a, b, n) = match (name, p) {
        ("guidingex" | "cycliccentre", 2) => (0, 0, 0),
        ("bsmall", 2) => (1, 2, 0),
        ("bsmall", 3) => (1, 1, 0),
        ("bbig", _) => (1, 3, 0),
        ("firstentryall", _) => (1, 1, 0),
        ("notanideal", _) => (0, 0, 0),
        ("advanceinboth", 2) => (2, 1, 0),
        ("advanceinboth", 3) => (2, 0, 0),
        ("bbigspecial", _) => (2, 1, 0),
        ("advancesecondsp", 2) => (2, 2, 0),
        ("advancesecondsp", 3) => (2, 1, 0),
        ("bsmallspecial", _) => (2, 2, 0),
        ("newprimesquare", 2) => (0, 0, 3),
        ("newprimesquare", 3) => (0, 0, 2),
        ("oldprime", 2) => (0, 0, 4),
        ("oldprime", 3) => (0, 0, 9),
        _ => return Err(Error::Input(format!("no default parameters for {name} at p = {p}"))),
    };
    Ok(Params { p, a, b, n })
}

fn pp(p: u64, e: u32) -> Result<u32> {
    u32::try_from(pow_u64(p, e)).map_err(|_| Error::Input("parameters too large".into()))
}

fn need(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Input(format!("parameters out of range: {what}")))
    }
}

/// Builds a presentation after checking its order against the element budget.
fn build(name: &str, b: &PcBuilder, order: u64) -> Result<Group> {
    budget::ensure(order)?;
    Group::from_pc(name, b.build()?)
}

/// `⟨x, y | x^ox = y^oy = [y, x]^oc = e⟩` in class two, dropping trivial factors.
fn two_generator(name: &str, ox: u32, oy: u32, oc: u32) -> Result<Group> {
    let mut b = PcBuilder::new();
    let x = b.generator("x", ox);
    let y = b.generator("y", oy);
    if oc > 1 {
        let c = b.generator("c", oc);
        b.comm(y, x, vec![(c, 1)]);
    }
    build(name, &b, ox as u64 * oy as u64 * oc as u64)
}

fn abelian(name: &str, orders: &[u32]) -> Result<Group> {
    let mut b = PcBuilder::new();
    for (i, &o) in orders.iter().enumerate() {
        b.generator(&format!("z{}", i + 1), o);
    }
    build(name, &b, orders.iter().map(|&o| o as u64).product())
}

/// The named entry.
pub fn catalog(name: &str, params: Params) -> Result<Entry> {
    let Params { p, a, b, n } = params;
    let mut e = Entry::new(name, params);
    if name != "guidingex" && name != "cycliccentre" {
        need(crate::arith::is_prime(p), "p must be prime")?;
    }
    match name {
        "guidingex" => {
            let mut pb = PcBuilder::new();
            let x = pb.generator("x", 4);
            let y = pb.generator("y", 4);
            let c = pb.generator("c", 4);
            pb.comm(y, x, vec![(c, 1)]);
            let m = build("M", &pb, 64)?;
            let gx = m.word(&[(x, 1)])?;
            let gx2 = m.word(&[(x, 2)])?;
            let gy = m.word(&[(y, 1)])?;
            let sa = Subgroup::generate(&m, &[gx])?;
            let sb = Subgroup::generate(&m, &[gx2, gy])?;
            e.amalgam = Some(Amalgam::from_subgroups("guidingex", &sa, &sb)?);
            e.group = Some(m);
            let (v42, v84) = (Variety::new(4, 2)?, Variety::new(8, 4)?);
            e.claims = vec![
                Claim::WeakEmbedding(v42, false),
                Claim::StrongEmbedding(v42, false),
                Claim::WeakEmbedding(v84, true),
                Claim::StrongEmbedding(v84, true),
            ];
        }
        "bsmall" => {
            need(a > 0 && b > 0, "a, b > 0")?;
            let top = pp(p, a + b)?;
            e.group = Some(two_generator("G", top, top, pp(p, a)?)?);
            let m = top as u64;
            e.base(false, m, pp(p, a)? as u64, true);
            if b <= a + 1 {
                e.base(false, m, pp(p, a + 1)? as u64, false);
            }
        }
        "bbig" => {
            need(a > 0 && b > a + 1, "a > 0, b > a + 1")?;
            let top = pp(p, a + b)?;
            e.group = Some(two_generator("G", top, pp(p, a + b - 1)?, pp(p, a)?)?);
            e.base(false, top as u64, pp(p, a)? as u64, true);
            e.base(false, top as u64, pp(p, a + 1)? as u64, false);
        }
        "firstentryall" => {
            need(a > 0 && b > 0, "a, b > 0")?;
            let top = pp(p, a + b)?;
            let mut pb = PcBuilder::new();
            let x = pb.generator("x", top);
            let y = pb.generator("y", top);
            let z = pb.generator("z", pp(p, b)?);
            let c = pb.generator("c", pp(p, a)?);
            pb.power(z, vec![(c, 1)]);
            pb.comm(y, x, vec![(c, 1)]);
            let order = top as u64 * top as u64 * pp(p, b)? as u64 * pp(p, a)? as u64;
            e.group = Some(build("G", &pb, order)?);
            e.base(false, top as u64, pp(p, a)? as u64, true);
            e.base(false, pp(p, a + b + 1)? as u64, pp(p, a)? as u64, false);
        }
        "notanideal" => {
            let k = pp(p, 3)?;
            e.group = Some(abelian("G", &[k, k])?);
            e.base(false, pp(p, 5)? as u64, 1, true);
            e.base(false, k as u64, p, true);
            e.base(false, pp(p, 5)? as u64, p, false);
        }
        "advanceinboth" => {
            need(a > 0 && (p != 2 || b > 0), "a > 0, and b > 0 when p = 2")?;
            let top = pp(p, a + b)?;
            e.group = Some(two_generator("G", top, top, pp(p, a - 1)?)?);
            e.base(true, top as u64, pp(p, a)? as u64, true);
            let (m1, n1) = (pp(p, a + b + 1)?, pp(p, a + 1)?);
            e.base(true, m1 as u64, n1 as u64, false);
            // the overgroup in which the dominion of G grows
            let k1 = two_generator("K1", m1, m1, n1)?;
            let (r, s) = (k1.word(&[(0, 1)])?, k1.word(&[(1, 1)])?);
            let sub = Subgroup::generate(&k1, &[k1.pow(r, p as i64), k1.pow(s, p as i64)])?;
            let target = k1.pow(k1.comm(r, s), p as i64);
            e.claims.push(Claim::DominionGrows(Variety::new(m1 as u64, n1 as u64)?, target));
            e.overgroup = Some((k1, sub));
        }
        "bbigspecial" => {
            need(a > 1 && b + 1 >= a, "a > 1, b >= a - 1")?;
            let top = pp(p, a + b)?;
            e.group = Some(abelian("G", &[top, top])?);
            e.base(true, top as u64, pp(p, a)? as u64, true);
            e.base(true, pp(p, a + b + 1)? as u64, pp(p, a)? as u64, false);
        }
        "advancesecondsp" => {
            need(a > 1 && b >= 1, "a > 1, b >= 1")?;
            let (lo, top, na) = (pp(p, a + b - 1)?, pp(p, a + b)?, pp(p, a)?);
            let mut pb = PcBuilder::new();
            let x = pb.generator("x", lo);
            let y = pb.generator("y", top);
            let z = pb.generator("z", lo);
            let c1 = pb.generator("c1", na);
            let c2 = pb.generator("c2", na);
            pb.comm(y, x, vec![(c1, 1)]);
            pb.comm(y, z, vec![(c2, 1)]);
            let order = lo as u64 * top as u64 * lo as u64 * na as u64 * na as u64;
            e.group = Some(build("G", &pb, order)?);
            e.base(true, top as u64, na as u64, true);
            e.base(true, top as u64, pp(p, a + 1)? as u64, false);
        }
        "bsmallspecial" => {
            need(a > 1 && b > 1, "a, b > 1")?;
            let (top, pb_, na) = (pp(p, a + b)?, pp(p, b)?, pp(p, a)?);
            let mut pb = PcBuilder::new();
            let x = pb.generator("x", top);
            let y = pb.generator("y", top);
            let z = pb.generator("z", top);
            let r = pb.generator("r", pb_);
            let s = pb.generator("s", pb_);
            let c1 = pb.generator("c1", na);
            let c2 = pb.generator("c2", na);
            pb.comm(y, x, vec![(c1, 1)]);
            pb.comm(y, z, vec![(c2, 1)]);
            pb.power(r, vec![(c1, 1)]);
            pb.power(s, vec![(c2, 1)]);
            let order = (top as u64).pow(3) * (pb_ as u64 * na as u64).pow(2);
            e.group = Some(build("G", &pb, order)?);
            e.base(true, top as u64, na as u64, true);
            e.base(true, pp(p, a + b + 1)? as u64, na as u64, false);
        }
        "newprimesquare" => {
            need(n > 0 && n % p != 0, "n > 0 prime to p")?;
            e.group = Some(abelian("G", &[p as u32, p as u32])?);
            e.base(true, 0, n, true);
            e.base(true, 0, p * p * n, false);
        }
        "oldprime" => {
            need(n > 0 && n % p == 0, "p divides n")?;
            let a = crate::arith::ord_p(p, n).finite().expect("n > 0");
            let k = pp(p, a)?;
            e.group = Some(two_generator("G", k, k, pp(p, a - 1)?)?);
            e.base(true, 0, n, true);
            e.base(true, 0, p * n, false);
        }
        "cycliccentre" => {
            let mut pb = PcBuilder::new();
            let x = pb.generator("x", 4);
            let y = pb.generator("y", 2);
            let z = pb.generator("z", 2);
            let c1 = pb.generator("c1", 2);
            let c2 = pb.generator("c2", 2);
            pb.comm(y, x, vec![(c1, 1)]);
            pb.comm(z, x, vec![(c2, 1)]);
            e.group = Some(build("G", &pb, 64)?);
            e.base(true, 4, 2, true);
            e.base(true, 8, 4, false);
            // F = ⟨a, b, c⟩ of exponent four with commutators of order four
            let mut fb = PcBuilder::new();
            let ga = fb.generator("a", 4);
            let gb = fb.generator("b", 4);
            let gc = fb.generator("c", 4);
            let cab = fb.generator("[b,a]", 4);
            let cac = fb.generator("[c,a]", 4);
            let cbc = fb.generator("[c,b]", 4);
            fb.comm(gb, ga, vec![(cab, 1)]);
            fb.comm(gc, ga, vec![(cac, 1)]);
            fb.comm(gc, gb, vec![(cbc, 1)]);
            let f = build("F", &fb, 4096)?;
            let (fa, fbe, fc) = (f.word(&[(ga, 1)])?, f.word(&[(gb, 2)])?, f.word(&[(gc, 2)])?);
            let sub = Subgroup::generate(&f, &[fa, fbe, fc])?;
            let target = f.pow(f.comm(f.word(&[(gb, 1)])?, f.word(&[(gc, 1)])?), 2);
            e.claims.push(Claim::DominionGrows(Variety::new(8, 4)?, target));
            e.overgroup = Some((f, sub));
        }
        _ => return Err(Error::Input(format!("unknown catalog entry {name}"))),
    }
    Ok(e)
}
