//! Polycyclic presentations of class-two groups and the collector.
//!
//! Generators `x_0, …, x_{k-1}` carry relative orders `r_i`, power relations
//! `x_i^{r_i} = w_i` with `w_i` a word in later generators, and commutator
//! relations `[x_j, x_i] = c_{ji}` (`j > i`) with `c_{ji}` central and a word
//! in generators after `x_i`. Normal forms are exponent vectors `0 <= e_i < r_i`.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};

/// Upper bound on the length of a polycyclic generating sequence.
pub const MAX_GENS: usize = 24;

pub type Exps = [u32; MAX_GENS];

/// A word as a list of `(generator, exponent)` factors; exponents may be negative.
pub type Word = Vec<(usize, i64)>;

#[derive(Clone, Debug)]
pub struct PcPresentation {
    names: Vec<String>,
    rel_orders: Vec<u32>,
    power_tails: Vec<Exps>,
    // comm_tails[j][i] for j > i holds [x_j, x_i] when nontrivial.
    comm_tails: Vec<Vec<Option<Exps>>>,
    order: u64,
    // radix[i] = product of rel_orders after i
    radix: Vec<u64>,
}

/// Incremental description of a presentation; relations default to trivial.
#[derive(Clone, Debug, Default)]
pub struct PcBuilder {
    names: Vec<String>,
    orders: Vec<u32>,
    powers: Vec<Word>,
    comms: Vec<(usize, usize, Word)>,
}

impl PcBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a generator with the given relative order and returns its index.
    pub fn generator(&mut self, name: &str, rel_order: u32) -> usize {
        self.names.push(name.to_string());
        self.orders.push(rel_order);
        self.powers.push(Vec::new());
        self.names.len() - 1
    }

    pub fn power(&mut self, i: usize, word: Word) -> &mut Self {
        self.powers[i] = word;
        self
    }

    /// Sets `[x_j, x_i] = word`; the pair may be given in either order.
    pub fn comm(&mut self, j: usize, i: usize, word: Word) -> &mut Self {
        if j > i {
            self.comms.push((j, i, word));
        } else {
            let inv = word.iter().rev().map(|&(g, e)| (g, -e)).collect();
            self.comms.push((i, j, inv));
        }
        self
    }

    pub fn build(&self) -> Result<PcPresentation> {
        PcPresentation::from_builder(self)
    }
}

impl PcPresentation {
    fn from_builder(b: &PcBuilder) -> Result<Self> {
        let k = b.names.len();
        if k > MAX_GENS {
            return Err(Error::Input(format!("at most {MAX_GENS} generators supported, got {k}")));
        }
        if let Some(i) = b.orders.iter().position(|&r| r < 2) {
            return Err(Error::Input(format!(
                "generator {} needs relative order at least 2",
                b.names[i]
            )));
        }
        let mut radix = vec![1u64; k];
        let mut order: u64 = 1;
        for i in (0..k).rev() {
            radix[i] = order;
            order = order
                .checked_mul(b.orders[i] as u64)
                .ok_or_else(|| Error::Input("group order overflows u64".into()))?;
        }
        let mut pres = PcPresentation {
            names: b.names.clone(),
            rel_orders: b.orders.clone(),
            power_tails: vec![[0; MAX_GENS]; k],
            comm_tails: (0..k).map(|j| vec![None; j]).collect(),
            order,
            radix,
        };
        let mut comm_words: Vec<Vec<Option<&Word>>> = (0..k).map(|j| vec![None; j]).collect();
        for (j, i, w) in &b.comms {
            if *j >= k || *i >= k || i == j {
                return Err(Error::Input(format!("bad commutator pair ({j},{i})")));
            }
            comm_words[*j][*i] = Some(w);
        }
        // Fill relations from the last generator backwards, so every tail word
        // is collected in a suffix whose relations are already known.
        for i in (0..k).rev() {
            let check = |w: &Word, what: &str| -> Result<()> {
                for &(g, _) in w {
                    if g >= k {
                        return Err(Error::Input(format!("{what}: generator index {g} out of range")));
                    }
                    if g <= i {
                        return Err(Error::Input(format!(
                            "{what}: word may only involve generators after {}",
                            b.names[i]
                        )));
                    }
                }
                Ok(())
            };
            check(&b.powers[i], &format!("power relation of {}", b.names[i]))?;
            pres.power_tails[i] = pres.collect(&b.powers[i])?;
            for j in i + 1..k {
                if let Some(w) = comm_words[j][i] {
                    check(w, &format!("commutator [{}, {}]", b.names[j], b.names[i]))?;
                    let e = pres.collect(w)?;
                    if e.iter().any(|&x| x != 0) {
                        pres.comm_tails[j][i] = Some(e);
                    }
                }
            }
        }
        Ok(pres)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rel_orders(&self) -> &[u32] {
        &self.rel_orders
    }

    pub fn power_tail(&self, i: usize) -> &Exps {
        &self.power_tails[i]
    }

    /// `[x_j, x_i]` for `j > i`, if nontrivial.
    pub fn comm_tail(&self, j: usize, i: usize) -> Option<&Exps> {
        self.comm_tails[j][i].as_ref()
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn identity(&self) -> Exps {
        [0; MAX_GENS]
    }

    pub fn generator(&self, i: usize) -> Exps {
        let mut e = self.identity();
        e[i] = 1;
        e
    }

    /// Mixed-radix index; the first generator is most significant.
    pub fn encode(&self, e: &Exps) -> u64 {
        (0..self.len()).map(|i| e[i] as u64 * self.radix[i]).sum()
    }

    pub fn decode(&self, mut idx: u64) -> Exps {
        let mut e = self.identity();
        for i in 0..self.len() {
            e[i] = (idx / self.radix[i]) as u32;
            idx %= self.radix[i];
        }
        e
    }

    /// Normal form of a word.
    pub fn collect(&self, word: &[(usize, i64)]) -> Result<Exps> {
        let mut v = self.identity();
        for &(g, t) in word {
            if g >= self.len() {
                return Err(Error::Input(format!("generator index {g} out of range")));
            }
            if t >= 0 {
                self.mul_gen_pow(&mut v, g, t as u64);
            } else {
                let inv = self.inverse(&self.generator(g));
                v = self.mul(&v, &self.pow(&inv, t.unsigned_abs()));
            }
        }
        Ok(v)
    }

    /// `v := v * x_j^t` for `t >= 0`.
    fn mul_gen_pow(&self, v: &mut Exps, j: usize, t: u64) {
        if t == 0 {
            return;
        }
        let k = self.len();
        // Moving x_j^t left past the suffix S picks up the central factor [S, x_j]^t.
        let mut correction: Option<Exps> = None;
        for l in j + 1..k {
            if v[l] != 0 {
                if let Some(c) = &self.comm_tails[l][j] {
                    let p = self.pow(c, v[l] as u64 * t);
                    correction = Some(match correction {
                        None => p,
                        Some(acc) => self.mul(&acc, &p),
                    });
                }
            }
        }
        let r = self.rel_orders[j] as u64;
        let s = v[j] as u64 + t;
        v[j] = (s % r) as u32;
        let carry = s / r;
        if carry == 0 && correction.is_none() {
            return;
        }
        let mut suffix = self.identity();
        suffix[j + 1..k].copy_from_slice(&v[j + 1..k]);
        let mut acc = if carry > 0 {
            let p = self.pow(&self.power_tails[j], carry);
            self.mul(&p, &suffix)
        } else {
            suffix
        };
        if let Some(c) = correction {
            acc = self.mul(&acc, &c);
        }
        v[j + 1..k].copy_from_slice(&acc[j + 1..k]);
    }

    pub fn mul(&self, a: &Exps, b: &Exps) -> Exps {
        let mut r = *a;
        for i in 0..self.len() {
            if b[i] != 0 {
                self.mul_gen_pow(&mut r, i, b[i] as u64);
            }
        }
        r
    }

    pub fn inverse(&self, a: &Exps) -> Exps {
        let mut r = *a;
        let mut out = self.identity();
        for i in 0..self.len() {
            if r[i] != 0 {
                let t = self.rel_orders[i] - r[i];
                out[i] = t;
                self.mul_gen_pow(&mut r, i, t as u64);
            }
        }
        out
    }

    pub fn pow(&self, a: &Exps, mut t: u64) -> Exps {
        let mut base = *a;
        let mut acc = self.identity();
        while t > 0 {
            if t & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            t >>= 1;
            if t > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn comm(&self, a: &Exps, b: &Exps) -> Exps {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inverse(&ba), &ab)
    }

    /// Renders a normal form as a word such as `x^2*y*c^3`.
    pub fn format(&self, e: &Exps) -> String {
        let parts: Vec<String> = (0..self.len())
            .filter(|&i| e[i] != 0)
            .map(|i| {
                if e[i] == 1 {
                    self.names[i].clone()
                } else {
                    format!("{}^{}", self.names[i], e[i])
                }
            })
            .collect();
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join("*")
        }
    }

    /// Every commutator tail commutes with every generator.
    pub fn check_central_tails(&self) -> Result<()> {
        let k = self.len();
        for j in 0..k {
            for i in 0..j {
                if let Some(c) = &self.comm_tails[j][i] {
                    for a in 0..k {
                        let g = self.generator(a);
                        if self.mul(&g, c) != self.mul(c, &g) {
                            return Err(Error::Inconsistent(format!(
                                "commutator [{}, {}] = {} does not commute with {} (class exceeds 2)",
                                self.names[j],
                                self.names[i],
                                self.format(c),
                                self.names[a]
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Associativity of the collector: all `(x, g, h)` with `x` any element and
    /// `g, h` generators when the order is at most `exhaustive_bound`, otherwise
    /// `samples` random triples of arbitrary elements. Generator triples and the
    /// power overlaps are always checked.
    pub fn check_consistency(&self, exhaustive_bound: u64, samples: usize) -> Result<()> {
        let k = self.len();
        let fail = |a: &Exps, b: &Exps, c: &Exps| {
            Err(Error::Inconsistent(format!(
                "collection is not associative on ({}, {}, {})",
                self.format(a),
                self.format(b),
                self.format(c)
            )))
        };
        let assoc = |a: &Exps, b: &Exps, c: &Exps| {
            self.mul(&self.mul(a, b), c) == self.mul(a, &self.mul(b, c))
        };
        for a in 0..k {
            let ga = self.generator(a);
            let pa = self.pow(&ga, self.rel_orders[a] as u64 - 1);
            for b in 0..k {
                let gb = self.generator(b);
                if !assoc(&pa, &ga, &gb) {
                    return fail(&pa, &ga, &gb);
                }
                if !assoc(&ga, &gb, &pa) {
                    return fail(&ga, &gb, &pa);
                }
                for c in 0..k {
                    let gc = self.generator(c);
                    if !assoc(&ga, &gb, &gc) {
                        return fail(&ga, &gb, &gc);
                    }
                }
            }
        }
        if self.order <= exhaustive_bound {
            for x in 0..self.order {
                let ex = self.decode(x);
                for a in 0..k {
                    let ga = self.generator(a);
                    for b in 0..k {
                        let gb = self.generator(b);
                        if !assoc(&ex, &ga, &gb) {
                            return fail(&ex, &ga, &gb);
                        }
                    }
                }
            }
        } else {
            let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
            for _ in 0..samples {
                let a = self.decode(rng.gen_range(0..self.order));
                let b = self.decode(rng.gen_range(0..self.order));
                let c = self.decode(rng.gen_range(0..self.order));
                if !assoc(&a, &b, &c) {
                    return fail(&a, &b, &c);
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_heisenberg() -> PcPresentation {
        // u, v of order 2 with [v,u] = c of order 2
        let mut b = PcBuilder::new();
        let u = b.generator("u", 2);
        let v = b.generator("v", 2);
        let c = b.generator("c", 2);
        b.comm(v, u, vec![(c, 1)]);
        b.build().unwrap()
    }

    #[test]
    fn swap_rule() {
        let p = small_heisenberg();
        let vu = p.collect(&[(1, 1), (0, 1)]).unwrap();
        assert_eq!(&vu[..3], &[1, 1, 1]);
        assert_eq!(p.collect(&[]).unwrap(), p.identity());
    }

    #[test]
    fn encode_roundtrip() {
        let p = small_heisenberg();
        for i in 0..p.order() {
            assert_eq!(p.encode(&p.decode(i)), i);
        }
    }

    #[test]
    fn negative_exponents() {
        let p = small_heisenberg();
        let w = p.collect(&[(0, 1), (1, 1), (0, -1), (1, -1)]).unwrap();
        // u v u^-1 v^-1 = [u^-1, v^-1] = [u, v] = c for involutions
        assert_eq!(p.format(&w), "c");
    }

    #[test]
    fn rejects_bad_tail_position() {
        let mut b = PcBuilder::new();
        let x = b.generator("x", 2);
        let y = b.generator("y", 2);
        b.power(y, vec![(x, 1)]);
        assert!(b.build().is_err());
    }

    #[test]
    fn detects_noncentral_tail() {
        // [y,x] = y is not central in a class-2 sense
        let mut b = PcBuilder::new();
        let x = b.generator("x", 2);
        let y = b.generator("y", 3);
        let z = b.generator("z", 3);
        b.comm(y, x, vec![(z, 1)]);
        b.comm(z, x, vec![(z, 1)]);
        let p = b.build().unwrap();
        assert!(p.check_central_tails().is_err() || p.check_consistency(4096, 100).is_err());
    }

    #[test]
    fn detects_inconsistent_power() {
        // x^2 = y with y central of order 2 but also [y,x]: fine; make x^2 = y while y has order 3
        let mut b = PcBuilder::new();
        let x = b.generator("x", 2);
        let y = b.generator("y", 3);
        b.power(x, vec![(y, 1)]);
        b.comm(y, x, vec![(y, 1)]);
        let p = b.build().unwrap();
        assert!(p.check_central_tails().is_err() || p.check_consistency(4096, 100).is_err());
    }
}
