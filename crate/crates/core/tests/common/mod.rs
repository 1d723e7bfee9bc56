//! Shared corpus of small class-two groups, amalgams and subgroup pairs.
#![allow(dead_code)]

use nil2::pc::Word;
use nil2::{Amalgam, Elem, Group, PcBuilder, Subgroup};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const SEED: u64 = 0x6e69_6c32;

/// A presentation from generator orders, power tails and commutator tails.
pub fn pc(name: &str, gens: &[(&str, u32)], powers: &[(usize, Word)], comms: &[(usize, usize, Word)]) -> Group {
    let mut b = PcBuilder::new();
    for &(g, o) in gens {
        b.generator(g, o);
    }
    for (i, w) in powers {
        b.power(*i, w.clone());
    }
    for (j, i, w) in comms {
        b.comm(*j, *i, w.clone());
    }
    Group::from_pc(name, b.build().expect("presentation builds")).expect("consistent presentation")
}

pub fn abelian(orders: &[u32]) -> Group {
    let gens: Vec<(String, u32)> = orders.iter().enumerate().map(|(i, &o)| (format!("z{}", i + 1), o)).collect();
    let refs: Vec<(&str, u32)> = gens.iter().map(|(s, o)| (s.as_str(), *o)).collect();
    let name = format!("Ab{orders:?}");
    pc(&name, &refs, &[], &[])
}

/// Nonabelian class-two groups of order at most 64.
pub fn nonabelian() -> Vec<Group> {
    vec![
        pc("D8", &[("x", 2), ("y", 2), ("c", 2)], &[], &[(1, 0, vec![(2, 1)])]),
        pc("Q8", &[("x", 2), ("y", 2), ("c", 2)], &[(0, vec![(2, 1)]), (1, vec![(2, 1)])], &[(1, 0, vec![(2, 1)])]),
        pc("Heis3", &[("x", 3), ("y", 3), ("c", 3)], &[], &[(1, 0, vec![(2, 1)])]),
        // ⟨u, v | u^9 = v^3 = e, [u, v] = u^3⟩
        pc("M27", &[("v", 3), ("u", 3), ("w", 3)], &[(1, vec![(2, 1)])], &[(1, 0, vec![(2, 1)])]),
        // ⟨u, v | u^8 = v^2 = e, [u, v] = u^4⟩
        pc("M16", &[("v", 2), ("u", 4), ("w", 2)], &[(1, vec![(2, 1)])], &[(1, 0, vec![(2, 1)])]),
        // ⟨u, v | u^4 = v^4 = e, [u, v] = u^2⟩
        pc("Z4sdZ4", &[("v", 4), ("u", 2), ("w", 2)], &[(1, vec![(2, 1)])], &[(1, 0, vec![(2, 1)])]),
        pc("D8xZ2", &[("x", 2), ("y", 2), ("c", 2), ("z", 2)], &[], &[(1, 0, vec![(2, 1)])]),
        pc("Pauli", &[("x", 2), ("y", 2), ("z", 2), ("c", 2)], &[(2, vec![(3, 1)])], &[(1, 0, vec![(3, 1)])]),
        pc("F42", &[("x", 4), ("y", 4), ("c", 2)], &[], &[(1, 0, vec![(2, 1)])]),
        pc(
            "Heis2x3",
            &[("x", 2), ("y", 2), ("z", 2), ("c1", 2), ("c2", 2), ("c3", 2)],
            &[],
            &[(1, 0, vec![(3, 1)]), (2, 0, vec![(4, 1)]), (2, 1, vec![(5, 1)])],
        ),
        pc("M", &[("x", 4), ("y", 4), ("c", 4)], &[], &[(1, 0, vec![(2, 1)])]),
        pc(
            "S6",
            &[("x", 4), ("y", 2), ("z", 2), ("c1", 2), ("c2", 2)],
            &[],
            &[(1, 0, vec![(3, 1)]), (2, 0, vec![(4, 1)])],
        ),
        pc("D8xZ3", &[("x", 2), ("y", 2), ("c", 2), ("t", 3)], &[], &[(1, 0, vec![(2, 1)])]),
        pc(
            "Q8xZ3",
            &[("x", 2), ("y", 2), ("c", 2), ("t", 3)],
            &[(0, vec![(2, 1)]), (1, vec![(2, 1)])],
            &[(1, 0, vec![(2, 1)])],
        ),
        pc("Heis3xZ2", &[("x", 3), ("y", 3), ("c", 3), ("t", 2)], &[], &[(1, 0, vec![(2, 1)])]),
    ]
}

/// Invariant-factor lists `d_1 | d_2 | …` of every abelian group of order at most `max`.
pub fn abelian_types(max: u64) -> Vec<Vec<u32>> {
    fn extend(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, max: u64) {
        out.push(cur.clone());
        let prod: u64 = cur.iter().map(|&d| d as u64).product();
        let step = cur.last().copied().unwrap_or(1);
        let mut d = if step == 1 { 2 } else { step };
        while prod * d as u64 <= max {
            cur.push(d);
            extend(out, cur, max);
            cur.pop();
            d += step;
        }
    }
    let mut out = Vec::new();
    extend(&mut out, &mut Vec::new(), max);
    out
}

pub fn abelian_groups(max: u64) -> Vec<Group> {
    abelian_types(max).iter().map(|t| abelian(t)).collect()
}

/// Every corpus group: the nonabelian list and the abelian groups of order at most 64.
pub fn all_groups() -> Vec<Group> {
    let mut v = nonabelian();
    v.extend(abelian_groups(64));
    v
}

/// A uniformly random element.
pub fn random_elem(g: &Group, rng: &mut StdRng) -> Elem {
    rng.gen_range(0..g.order())
}

/// A subgroup generated by `k` random elements.
pub fn random_subgroup(g: &Group, k: usize, rng: &mut StdRng) -> Subgroup {
    let gens: Vec<Elem> = (0..k).map(|_| random_elem(g, rng)).collect();
    Subgroup::generate(g, &gens).expect("subgroup")
}

/// Amalgams over subgroups of the corpus hosts: six random pairs per host `(A, B; A ∩ B)`,
/// special amalgams `(G, G; H)` and the guiding example.
pub fn amalgams() -> Vec<Amalgam> {
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for host in nonabelian().into_iter().filter(|g| g.order() <= 32) {
        for i in 0..6 {
            let a = random_subgroup(&host, 2, &mut rng);
            let b = random_subgroup(&host, 2, &mut rng);
            let name = format!("{}#{i}", host.name());
            out.push(Amalgam::from_subgroups(&name, &a, &b).expect("amalgam"));
        }
        let h = random_subgroup(&host, 1, &mut rng);
        out.push(Amalgam::special(&format!("{}#special", host.name()), &h).expect("special amalgam"));
    }
    let m = nonabelian().into_iter().find(|g| g.name() == "M").unwrap();
    let x = m.word(&[(0, 1)]).unwrap();
    let x2 = m.word(&[(0, 2)]).unwrap();
    let y = m.word(&[(1, 1)]).unwrap();
    let a = Subgroup::generate(&m, &[x]).unwrap();
    let b = Subgroup::generate(&m, &[x2, y]).unwrap();
    out.push(Amalgam::from_subgroups("guidingex", &a, &b).unwrap());
    out
}

/// Subgroup pairs `(G, H)` for dominion checks: every cyclic subgroup
/// generated by a generator of `G`, plus random two-generator subgroups.
pub fn dominion_pairs() -> Vec<Subgroup> {
    let mut rng = StdRng::seed_from_u64(SEED ^ 1);
    let mut out = Vec::new();
    for g in nonabelian() {
        for &s in g.generators() {
            out.push(Subgroup::generate(&g, &[s]).unwrap());
        }
        for _ in 0..2 {
            out.push(random_subgroup(&g, 2, &mut rng));
        }
    }
    out
}
