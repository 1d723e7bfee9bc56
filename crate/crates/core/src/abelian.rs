//! Finite abelian groups in invariant-factor coordinates: Smith normal form,
//! abelian quotients `G/N`, tensor products and linear power congruences.

use crate::arith::{ext_gcd, gcd};
use crate::budget;
use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use crate::subgroup::Subgroup;
use std::collections::VecDeque;

pub type Matrix = Vec<Vec<i64>>;

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal with a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    /// Inverse of `v`.
    pub v_inv: Matrix,
}

impl SmithForm {
    /// Nonzero diagonal entries in order.
    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.d.len().min(self.d.first().map_or(0, |r| r.len())))
            .map(|i| self.d[i][i])
            .filter(|&x| x != 0)
            .collect()
    }
}

pub fn identity_matrix(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![0i64; m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l] != 0 {
                for j in 0..m {
                    out[i][j] += a[i][l] * b[l][j];
                }
            }
        }
    }
    out
}

/// Smith normal form with smallest-pivot elimination. The result is verified
/// (`u * m * v = d`, `v * v_inv = 1`) before returning.
pub fn smith_normal_form(m: &Matrix) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a = m.clone();
    let mut u = identity_matrix(rows);
    let mut v = identity_matrix(cols);
    let mut vi = identity_matrix(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        vi.swap(t, pj);
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    row_axpy(&mut a, i, t, -q);
                    row_axpy(&mut u, i, t, -q);
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    col_axpy(&mut a, j, t, -q);
                    col_axpy(&mut v, j, t, -q);
                    row_axpy(&mut vi, t, j, q);
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                // a smaller remainder exists in row or column t; move it to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    a.swap(t, best.0);
                    u.swap(t, best.0);
                } else if best.1 != t {
                    swap_cols(&mut a, t, best.1);
                    swap_cols(&mut v, t, best.1);
                    vi.swap(t, best.1);
                }
                continue;
            }
            // divisibility: fold in any row whose entry the pivot does not divide
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    row_axpy(&mut a, t, i, 1);
                    row_axpy(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let sf = SmithForm { u, d: a, v, v_inv: vi };
    debug_assert_eq!(mat_mul(&mat_mul(&sf.u, m), &sf.v), sf.d);
    assert_eq!(mat_mul(&sf.v, &sf.v_inv), identity_matrix(cols), "column transform not inverted");
    sf
}

fn swap_cols(a: &mut Matrix, i: usize, j: usize) {
    if i != j {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
    }
}

/// `row[dst] += c * row[src]`
fn row_axpy(a: &mut Matrix, dst: usize, src: usize, c: i64) {
    let (s, d) = if src < dst {
        let (lo, hi) = a.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        *x += c * y;
    }
}

/// `col[dst] += c * col[src]`
fn col_axpy(a: &mut Matrix, dst: usize, src: usize, c: i64) {
    for row in a.iter_mut() {
        row[dst] += c * row[src];
    }
}

/// Sublattice of `Z^s` kept in row-echelon form as rows are added.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn new(dim: usize) -> Self {
        Lattice { dim, rows: Vec::new() }
    }

    fn pivot(row: &[i64]) -> Option<usize> {
        row.iter().position(|&x| x != 0)
    }

    pub fn insert(&mut self, mut v: Vec<i64>) {
        debug_assert_eq!(v.len(), self.dim);
        let mut idx = 0;
        while let Some(p) = Self::pivot(&v) {
            while idx < self.rows.len() && Self::pivot(&self.rows[idx]).unwrap() < p {
                idx += 1;
            }
            if idx < self.rows.len() && Self::pivot(&self.rows[idx]) == Some(p) {
                let r = &self.rows[idx];
                let (g, s, t) = ext_gcd(r[p], v[p]);
                let (a, b) = (r[p] / g, v[p] / g);
                let new_row: Vec<i64> = r.iter().zip(&v).map(|(x, y)| s * x + t * y).collect();
                let rest: Vec<i64> = r.iter().zip(&v).map(|(x, y)| a * y - b * x).collect();
                self.rows[idx] = new_row;
                v = rest;
                self.reduce_row(idx);
                idx += 1;
            } else {
                self.rows.insert(idx, v);
                self.reduce_row(idx);
                return;
            }
        }
    }

    /// Keeps entries bounded by reducing row `i` against later pivots and
    /// earlier rows against row `i`.
    fn reduce_row(&mut self, i: usize) {
        let pi = Self::pivot(&self.rows[i]).unwrap();
        if self.rows[i][pi] < 0 {
            for x in self.rows[i].iter_mut() {
                *x = -*x;
            }
        }
        for j in i + 1..self.rows.len() {
            let pj = Self::pivot(&self.rows[j]).unwrap();
            let q = self.rows[i][pj].div_euclid(self.rows[j][pj]);
            if q != 0 {
                let rj = self.rows[j].clone();
                for (x, y) in self.rows[i].iter_mut().zip(rj) {
                    *x -= q * y;
                }
            }
        }
        let ri = self.rows[i].clone();
        for j in 0..i {
            let q = self.rows[j][pi].div_euclid(ri[pi]);
            if q != 0 {
                for (x, y) in self.rows[j].iter_mut().zip(&ri) {
                    *x -= q * y;
                }
            }
        }
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }
}

/// Finite abelian group `⊕ Z/d_i` with `d_1 | d_2 | …`, all `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAb {
    factors: Vec<u64>,
}

impl FinAb {
    /// From invariant factors; entries equal to 1 are dropped.
    pub fn new(factors: Vec<u64>) -> Result<FinAb> {
        let f: Vec<u64> = factors.into_iter().filter(|&d| d != 1).collect();
        if f.iter().any(|&d| d == 0) {
            return Err(Error::Input("infinite cyclic factor".into()));
        }
        if f.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::Input(format!("{f:?} is not a divisibility chain")));
        }
        Ok(FinAb { factors: f })
    }

    /// From arbitrary cyclic orders, normalised to invariant factors.
    pub fn from_cyclic_orders(orders: &[u64]) -> FinAb {
        let n = orders.len();
        let mut m = vec![vec![0i64; n]; n];
        for (i, &d) in orders.iter().enumerate() {
            m[i][i] = d as i64;
        }
        let sf = smith_normal_form(&m);
        FinAb::new(sf.diagonal().into_iter().map(|x| x as u64).collect()).expect("chain")
    }

    pub fn trivial() -> FinAb {
        FinAb { factors: Vec::new() }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn index(&self, c: &[u64]) -> u64 {
        c.iter().zip(&self.factors).fold(0, |acc, (&x, &d)| acc * d + x)
    }

    pub fn coords(&self, mut idx: u64) -> Vec<u64> {
        let mut c = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            c[i] = idx % self.factors[i];
            idx /= self.factors[i];
        }
        c
    }

    pub fn reduce(&self, c: &[i64]) -> Vec<u64> {
        c.iter().zip(&self.factors).map(|(&x, &d)| x.rem_euclid(d as i64) as u64).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.factors).map(|((&x, &y), &d)| (x + y) % d).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.factors).map(|(&x, &d)| (d - x) % d).collect()
    }

    pub fn scale(&self, a: &[u64], q: u64) -> Vec<u64> {
        a.iter().zip(&self.factors).map(|(&x, &d)| ((x as u128 * q as u128) % d as u128) as u64).collect()
    }

    /// Order of an element.
    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.factors)
            .fold(1, |acc, (&x, &d)| crate::arith::lcm(acc, d / gcd(x, d)))
    }

    /// Index of `q * a` for every element index `a`.
    pub fn scale_table(&self, q: u64) -> Vec<u64> {
        (0..self.order()).map(|i| self.index(&self.scale(&self.coords(i), q))).collect()
    }
}

/// `G/N` for normal `N` with abelian quotient, in invariant-factor coordinates.
#[derive(Clone, Debug)]
pub struct AbelianQuotient {
    group: Group,
    ab: FinAb,
    /// Coordinates of each group generator.
    gen_coords: Vec<Vec<u64>>,
    /// Coordinates of each presentation generator (presentation groups only).
    pc_coords: Option<Vec<Vec<u64>>>,
    /// Quotient index per element (derived groups only).
    table: Option<Vec<u32>>,
    /// Element of `G` mapping to each basis vector.
    lifts: Vec<Elem>,
}

impl AbelianQuotient {
    pub fn finab(&self) -> &FinAb {
        &self.ab
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn gen_coords(&self) -> &[Vec<u64>] {
        &self.gen_coords
    }

    pub fn lifts(&self) -> &[Elem] {
        &self.lifts
    }

    pub fn project(&self, g: Elem) -> Vec<u64> {
        if let Some(t) = &self.table {
            return self.ab.coords(t[g as usize] as u64);
        }
        let pc = self.pc_coords.as_ref().expect("presentation coordinates");
        let e = self.group.exps(g).expect("presentation group");
        let mut acc = vec![0u64; self.ab.rank()];
        for (i, c) in pc.iter().enumerate() {
            if e[i] != 0 {
                acc = self.ab.add(&acc, &self.ab.scale(c, e[i] as u64));
            }
        }
        acc
    }

    pub fn project_index(&self, g: Elem) -> u64 {
        if let Some(t) = &self.table {
            return t[g as usize] as u64;
        }
        self.ab.index(&self.project(g))
    }

    /// A representative of the class with the given coordinates.
    pub fn lift(&self, c: &[u64]) -> Elem {
        c.iter().zip(&self.lifts).fold(0, |acc, (&x, &l)| self.group.mul(acc, self.group.pow(l, x as i64)))
    }
}

/// Invariant factors of `G/N`. Verifies that `N` is normal with abelian quotient.
pub fn invariant_factors(g: &Group, n: &Subgroup) -> Result<AbelianQuotient> {
    let gens = g.generators().to_vec();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            if !n.contains(g.comm(a, b)) {
                return Err(Error::Precondition(format!(
                    "quotient is not abelian: [{}, {}] lies outside the subgroup",
                    g.format(a),
                    g.format(b)
                )));
            }
        }
    }
    for &s in n.generators() {
        for &a in &gens {
            if !n.contains(g.conj(s, a)) {
                return Err(Error::Precondition("subgroup is not normal".into()));
            }
        }
    }
    if let Some(p) = g.pc() {
        let k = p.len();
        let mut lat = Lattice::new(k);
        let vec_of = |e: &crate::pc::Exps| -> Vec<i64> { (0..k).map(|i| e[i] as i64).collect() };
        for i in 0..k {
            let mut row: Vec<i64> = vec_of(p.power_tail(i)).iter().map(|x| -x).collect();
            row[i] += p.rel_orders()[i] as i64;
            lat.insert(row);
            for j in i + 1..k {
                if let Some(c) = p.comm_tail(j, i) {
                    lat.insert(vec_of(c));
                }
            }
        }
        for &s in n.generators() {
            lat.insert(vec_of(&p.decode(s)));
        }
        let (ab, basis_cols, lift_words) = finish(lat, k);
        let pc_coords: Vec<Vec<u64>> = (0..k).map(|i| ab.reduce(&basis_cols[i])).collect();
        let lifts = lift_words.iter().map(|w| g.word(w).expect("lift word")).collect();
        // presentation generators are the group generators, in order
        let gen_coords = pc_coords.clone();
        return Ok(AbelianQuotient { group: g.clone(), ab, gen_coords, pc_coords: Some(pc_coords), table: None, lifts });
    }
    // Derived groups: spanning tree over the Cayley graph gives words for all
    // elements; non-tree edges and the generators of N give the relations.
    let order = g.order();
    budget::ensure(order)?;
    let s = gens.len();
    let mut vecs: Vec<Option<Vec<i64>>> = vec![None; order as usize];
    vecs[0] = Some(vec![0; s]);
    let mut lat = Lattice::new(s);
    let mut queue = VecDeque::from([0u64]);
    while let Some(x) = queue.pop_front() {
        let vx = vecs[x as usize].clone().unwrap();
        for (i, &gi) in gens.iter().enumerate() {
            let y = g.mul(x, gi);
            let mut vy = vx.clone();
            vy[i] += 1;
            match &vecs[y as usize] {
                None => {
                    vecs[y as usize] = Some(vy);
                    queue.push_back(y);
                }
                Some(old) => {
                    let rel: Vec<i64> = vy.iter().zip(old).map(|(a, b)| a - b).collect();
                    if rel.iter().any(|&r| r != 0) {
                        lat.insert(rel);
                    }
                }
            }
        }
    }
    for &m in n.generators() {
        lat.insert(vecs[m as usize].clone().unwrap());
    }
    let (ab, basis_cols, lift_words) = finish(lat, s);
    let gen_coords: Vec<Vec<u64>> = (0..s).map(|i| ab.reduce(&basis_cols[i])).collect();
    let table: Vec<u32> = vecs
        .iter()
        .map(|v| {
            let v = v.as_ref().unwrap();
            let mut acc = ab.zero();
            for (i, &e) in v.iter().enumerate() {
                if e != 0 {
                    acc = ab.add(&acc, &ab.scale(&gen_coords[i], e as u64));
                }
            }
            ab.index(&acc) as u32
        })
        .collect();
    let lifts = lift_words.iter().map(|w| g.word(w).expect("lift word")).collect();
    Ok(AbelianQuotient { group: g.clone(), ab, gen_coords, pc_coords: None, table: Some(table), lifts })
}

type Finished = (FinAb, Vec<Vec<i64>>, Vec<Vec<(usize, i64)>>);

/// SNF of the relation lattice: the quotient, the coordinate row of each
/// generator (before reduction), and words lifting the basis vectors.
fn finish(lat: Lattice, dim: usize) -> Finished {
    let rows = lat.rows().to_vec();
    if rows.len() < dim {
        panic!("relation lattice is not of full rank; quotient would be infinite");
    }
    let sf = smith_normal_form(&rows);
    let diag: Vec<i64> = (0..dim).map(|i| sf.d[i][i]).collect();
    let keep: Vec<usize> = (0..dim).filter(|&i| diag[i] != 1).collect();
    let ab = FinAb::new(keep.iter().map(|&i| diag[i] as u64).collect()).expect("chain");
    // generator i has coordinates row i of V restricted to kept columns
    let basis_cols: Vec<Vec<i64>> = (0..dim).map(|i| keep.iter().map(|&j| sf.v[i][j]).collect()).collect();
    let lift_words = keep
        .iter()
        .map(|&j| (0..dim).filter(|&i| sf.v_inv[j][i] != 0).map(|i| (i, sf.v_inv[j][i])).collect())
        .collect();
    (ab, basis_cols, lift_words)
}

/// `A ⊗ B = ⊕ Z/gcd(a_i, b_j)` with the bilinear map on coordinates.
#[derive(Clone, Debug)]
pub struct Tensor {
    left: FinAb,
    right: FinAb,
    /// `(i, j, gcd(a_i, b_j))` for every cell with nontrivial gcd.
    cells: Vec<(usize, usize, u64)>,
    ab: FinAb,
}

pub fn tensor_product(a: &FinAb, b: &FinAb) -> Tensor {
    let mut cells = Vec::new();
    for (i, &x) in a.factors().iter().enumerate() {
        for (j, &y) in b.factors().iter().enumerate() {
            let g = gcd(x, y);
            if g > 1 {
                cells.push((i, j, g));
            }
        }
    }
    let ab = FinAb { factors: cells.iter().map(|c| c.2).collect() };
    Tensor { left: a.clone(), right: b.clone(), cells, ab }
}

impl Tensor {
    /// The tensor group with one coordinate per cell (not normalised to a chain).
    pub fn cell_group(&self) -> &FinAb {
        &self.ab
    }

    pub fn cells(&self) -> &[(usize, usize, u64)] {
        &self.cells
    }

    pub fn left(&self) -> &FinAb {
        &self.left
    }

    pub fn right(&self) -> &FinAb {
        &self.right
    }

    pub fn order(&self) -> u64 {
        self.cells.iter().map(|c| c.2).product()
    }

    /// Invariant factors of the tensor product.
    pub fn invariant_factors(&self) -> FinAb {
        FinAb::from_cyclic_orders(&self.cells.iter().map(|c| c.2).collect::<Vec<_>>())
    }

    pub fn bilinear(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.cells.iter().map(|&(i, j, g)| ((x[i] % g) * (y[j] % g)) % g).collect()
    }

    /// Cell coordinates are cyclic of the cell orders; index arithmetic helpers.
    pub fn index(&self, t: &[u64]) -> u64 {
        t.iter().zip(&self.cells).fold(0, |acc, (&x, c)| acc * c.2 + x)
    }

    pub fn coords(&self, mut idx: u64) -> Vec<u64> {
        let mut c = vec![0; self.cells.len()];
        for i in (0..self.cells.len()).rev() {
            c[i] = idx % self.cells[i].2;
            idx /= self.cells[i].2;
        }
        c
    }
}

/// All `h` with `q * h = target` in `Q`, per coordinate.
pub fn solve_power_congruence(q_group: &FinAb, q: u64, target: &[u64]) -> Vec<Vec<u64>> {
    let mut per_coord: Vec<Vec<u64>> = Vec::new();
    for (&d, &t) in q_group.factors().iter().zip(target) {
        let g = gcd(q % d, d);
        let g = if g == 0 { d } else { g };
        if t % g != 0 {
            return Vec::new();
        }
        let step = d / g;
        let qg = (q / gcd(q, d)) % step.max(1);
        let base = if step == 1 {
            0
        } else {
            let inv = crate::arith::mod_inverse(qg, step).expect("coprime after division");
            ((t / g) % step) * inv % step
        };
        per_coord.push((0..g).map(|k| base + k * step).collect());
    }
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for opts in per_coord {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                opts.iter().map(move |&h| {
                    let mut p = prefix.clone();
                    p.push(h);
                    p
                })
            })
            .collect();
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det2(m: &Matrix) -> i64 {
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    #[test]
    fn smith_examples() {
        let sf = smith_normal_form(&vec![vec![2, 4], vec![6, 8]]);
        assert_eq!(sf.d, vec![vec![2, 0], vec![0, 4]]);
        assert_eq!(mat_mul(&mat_mul(&sf.u, &vec![vec![2, 4], vec![6, 8]]), &sf.v), sf.d);
        assert_eq!(det2(&sf.u).abs(), 1);
        assert_eq!(det2(&sf.v).abs(), 1);
        let id = identity_matrix(3);
        assert_eq!(smith_normal_form(&id).d, id);
        let z = vec![vec![0; 3]; 2];
        assert_eq!(smith_normal_form(&z).d, z);
    }

    #[test]
    fn tensor_examples() {
        let t = tensor_product(&FinAb::new(vec![4]).unwrap(), &FinAb::new(vec![6]).unwrap());
        assert_eq!(t.invariant_factors().factors(), &[2]);
        let k = FinAb::new(vec![2, 2]).unwrap();
        let t = tensor_product(&k, &k);
        assert_eq!(t.invariant_factors().factors(), &[2, 2, 2, 2]);
        assert_eq!(t.order(), 16);
        let t = tensor_product(&k, &FinAb::trivial());
        assert_eq!(t.order(), 1);
    }

    #[test]
    fn congruence_examples() {
        let q4 = FinAb::new(vec![4]).unwrap();
        assert_eq!(solve_power_congruence(&q4, 2, &[2]), vec![vec![1], vec![3]]);
        let q24 = FinAb::new(vec![2, 4]).unwrap();
        assert!(solve_power_congruence(&q24, 2, &[1, 0]).is_empty());
        assert!(solve_power_congruence(&q24, 2, &[0, 0]).contains(&vec![0, 0]));
    }

    /// Brute-force closure of all bilinear images in the cell group.
    fn brute_tensor_order(a: &FinAb, b: &FinAb) -> u64 {
        let t = tensor_product(a, b);
        let cg = t.cell_group().clone();
        let mut seen = std::collections::HashSet::new();
        seen.insert(cg.index(&cg.zero()));
        let mut frontier = vec![cg.zero()];
        let gens: Vec<Vec<u64>> = (0..a.order())
            .flat_map(|x| (0..b.order()).map(move |y| (x, y)))
            .map(|(x, y)| t.bilinear(&a.coords(x), &b.coords(y)))
            .collect();
        while let Some(v) = frontier.pop() {
            for g in &gens {
                let w = cg.add(&v, g);
                if seen.insert(cg.index(&w)) {
                    frontier.push(w);
                }
            }
        }
        seen.len() as u64
    }

    fn chain() -> impl Strategy<Value = FinAb> {
        prop::collection::vec(1u64..5, 0..3).prop_map(|mults| {
            let mut f = Vec::new();
            let mut cur = 1u64;
            for m in mults {
                cur *= m + 1;
                if cur > 16 {
                    break;
                }
                f.push(cur);
            }
            FinAb::new(f).unwrap()
        })
    }

    proptest! {
        #[test]
        fn smith_postcondition(m in prop::collection::vec(prop::collection::vec(-20i64..20, 3), 1..5)) {
            let sf = smith_normal_form(&m);
            prop_assert_eq!(mat_mul(&mat_mul(&sf.u, &m), &sf.v), sf.d.clone());
            let diag = sf.diagonal();
            for w in diag.windows(2) {
                prop_assert!(w[1] % w[0] == 0);
            }
            for (i, row) in sf.d.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if i != j { prop_assert_eq!(x, 0); }
                }
            }
        }

        #[test]
        fn tensor_order_matches_closure(a in chain(), b in chain()) {
            prop_assume!(a.order() <= 64 && b.order() <= 64);
            prop_assert_eq!(tensor_product(&a, &b).order(), brute_tensor_order(&a, &b));
        }

        #[test]
        fn tensor_is_bilinear(a in chain(), b in chain(), x1 in 0u64..1000, x2 in 0u64..1000, y in 0u64..1000) {
            let t = tensor_product(&a, &b);
            let cg = t.cell_group();
            let (x1, x2, y) = (a.coords(x1 % a.order()), a.coords(x2 % a.order()), b.coords(y % b.order()));
            let lhs = t.bilinear(&a.add(&x1, &x2), &y);
            let rhs = cg.add(&t.bilinear(&x1, &y), &t.bilinear(&x2, &y));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn congruence_solutions_exact(a in chain(), q in 1u64..10, t in 0u64..1000) {
            let target = a.coords(t % a.order());
            let got = solve_power_congruence(&a, q, &target);
            let brute: Vec<Vec<u64>> = (0..a.order())
                .map(|h| a.coords(h))
                .filter(|h| a.scale(h, q) == target)
                .collect();
            let mut brute = brute;
            brute.sort();
            prop_assert_eq!(got, brute);
        }

        #[test]
        fn coords_roundtrip(a in chain(), i in 0u64..10_000) {
            let i = i % a.order();
            prop_assert_eq!(a.index(&a.coords(i)), i);
        }
    }
}
