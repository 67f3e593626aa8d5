//! Finite groups as multiplication tables, with closure from permutation
//! generators, subgroup/quotient machinery and abelianization.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Order cap for the exhaustive associativity check; larger tables are
/// verified on sampled triples.
const EXHAUSTIVE_ASSOC_CAP: usize = 256;
const SAMPLED_ASSOC_TRIPLES: usize = 20_000;

/// Default cap when closing permutation generators into a table.
pub const DEFAULT_ORDER_CAP: usize = 256;
/// Cap for quotient groups produced as brute-force targets.
pub const ORACLE_ORDER_CAP: usize = 20_000;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinGroup {
    order: usize,
    mult: Vec<usize>, // row-major order×order
    inv: Vec<usize>,
    id: usize,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FinGroup {
    pub fn from_table(mult_rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = mult_rows.len();
        if n == 0 {
            return Err(Error::BadGroupTable("empty table".into()));
        }
        if mult_rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadGroupTable("table is not square".into()));
        }
        let mult: Vec<usize> = mult_rows.into_iter().flatten().collect();
        if mult.iter().any(|&x| x >= n) {
            return Err(Error::BadGroupTable("entry out of range".into()));
        }

        let id = (0..n)
            .find(|&e| (0..n).all(|g| mult[e * n + g] == g && mult[g * n + e] == g))
            .ok_or_else(|| Error::BadGroupTable("no identity element".into()))?;

        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            inv[g] = (0..n)
                .find(|&h| mult[g * n + h] == id && mult[h * n + g] == id)
                .ok_or_else(|| Error::BadGroupTable(format!("element {g} has no inverse")))?;
        }

        let assoc_ok = if n <= EXHAUSTIVE_ASSOC_CAP {
            let mut ok = true;
            'outer: for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if mult[mult[a * n + b] * n + c] != mult[a * n + mult[b * n + c]] {
                            ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            ok
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            (0..SAMPLED_ASSOC_TRIPLES).all(|_| {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let c = rng.gen_range(0..n);
                mult[mult[a * n + b] * n + c] == mult[a * n + mult[b * n + c]]
            })
        };
        if !assoc_ok {
            return Err(Error::BadGroupTable("multiplication is not associative".into()));
        }

        let mut g = FinGroup { order: n, mult, inv, id, generators: Vec::new(), labels };
        g.generators = g.minimal_generators();
        Ok(g)
    }

    /// Close permutation generators (images of 0..degree) into a table.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>], cap: usize) -> Result<Self> {
        for p in gens {
            if p.len() != degree {
                return Err(Error::BadGroupTable("permutation degree mismatch".into()));
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || seen[x] {
                    return Err(Error::BadGroupTable("not a permutation".into()));
                }
                seen[x] = true;
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems: Vec<Vec<usize>> = vec![id.clone()];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        index.insert(id, 0);
        let mut frontier = 0;
        while frontier < elems.len() {
            let cur = elems[frontier].clone();
            for p in gens {
                let next: Vec<usize> = (0..degree).map(|i| p[cur[i]]).collect();
                if !index.contains_key(&next) {
                    if elems.len() >= cap {
                        return Err(Error::ResourceExceeded(format!(
                            "permutation closure exceeds cap {cap}"
                        )));
                    }
                    index.insert(next.clone(), elems.len());
                    elems.push(next);
                }
            }
            frontier += 1;
        }
        let n = elems.len();
        let mut mult = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod: Vec<usize> = (0..degree).map(|i| elems[a][elems[b][i]]).collect();
                mult[a * n + b] = *index
                    .get(&prod)
                    .ok_or_else(|| Error::BadGroupTable("closure is not closed".into()))?;
            }
        }
        FinGroup::from_table(
            (0..n).map(|i| mult[i * n..(i + 1) * n].to_vec()).collect(),
            None,
        )
    }

    pub fn trivial() -> Self {
        FinGroup::from_table(vec![vec![0]], Some(vec!["e".into()])).expect("trivial table")
    }

    pub fn cyclic(n: usize) -> Self {
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FinGroup::from_table(table, None).expect("cyclic table")
    }

    /// Upper unitriangular 3×3 matrices over Z_2; order 8, center of order 2.
    pub fn heisenberg_mod2() -> Self {
        // element (a, b, c) ↔ index a + 2b + 4c
        let idx = |a: usize, b: usize, c: usize| a + 2 * b + 4 * c;
        let mut table = vec![vec![0usize; 8]; 8];
        for a1 in 0..2 {
            for b1 in 0..2 {
                for c1 in 0..2 {
                    for a2 in 0..2 {
                        for b2 in 0..2 {
                            for c2 in 0..2 {
                                let a = (a1 + a2) % 2;
                                let b = (b1 + b2) % 2;
                                let c = (c1 + c2 + a1 * b2) % 2;
                                table[idx(a1, b1, c1)][idx(a2, b2, c2)] = idx(a, b, c);
                            }
                        }
                    }
                }
            }
        }
        let labels = (0..8).map(|i| format!("({},{},{})", i % 2, (i / 2) % 2, i / 4)).collect();
        FinGroup::from_table(table, Some(labels)).expect("heisenberg table")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => format!("g{g}"),
        }
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let mut base = if k < 0 { self.inv(g) } else { g };
        let mut e = k.unsigned_abs();
        let mut acc = self.id;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.id {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_central(&self, g: usize) -> bool {
        (0..self.order).all(|h| self.mul(g, h) == self.mul(h, g))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order).filter(|&g| self.is_central(g)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.order
    }

    /// Closure of a subset into a subgroup; returns sorted element indices.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Vec<usize> {
        let mut in_set = vec![false; self.order];
        in_set[self.id] = true;
        let mut stack: Vec<usize> = vec![self.id];
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                stack.push(s);
            }
        }
        let mut frontier = 0;
        while frontier < stack.len() {
            let g = stack[frontier];
            frontier += 1;
            for &s in seed {
                for next in [self.mul(g, s), self.mul(g, self.inv(s))] {
                    if !in_set[next] {
                        in_set[next] = true;
                        stack.push(next);
                    }
                }
            }
        }
        let mut out: Vec<usize> =
            (0..self.order).filter(|&g| in_set[g]).collect();
        out.sort_unstable();
        out
    }

    /// The subgroup generated by all commutators.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        let mut comms = Vec::new();
        for a in 0..self.order {
            for b in 0..self.order {
                let c = self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)));
                comms.push(c);
            }
        }
        comms.sort_unstable();
        comms.dedup();
        self.subgroup_closure(&comms)
    }

    pub fn is_normal(&self, subgroup: &[usize]) -> bool {
        let in_sub: Vec<bool> = {
            let mut v = vec![false; self.order];
            for &h in subgroup {
                v[h] = true;
            }
            v
        };
        subgroup.iter().all(|&h| {
            (0..self.order).all(|g| in_sub[self.mul(self.mul(g, h), self.inv(g))])
        })
    }

    /// Quotient by a normal subgroup; returns the quotient and the class map.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FinGroup, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::GroupInvariant("quotient by a non-normal subgroup".into()));
        }
        let mut class = vec![usize::MAX; self.order];
        let mut reps: Vec<usize> = Vec::new();
        for g in 0..self.order {
            if class[g] != usize::MAX {
                continue;
            }
            let c = reps.len();
            for &h in normal {
                class[self.mul(g, h)] = c;
            }
            reps.push(g);
        }
        let m = reps.len();
        let table = (0..m)
            .map(|a| (0..m).map(|b| class[self.mul(reps[a], reps[b])]).collect())
            .collect();
        let q = FinGroup::from_table(table, None)?;
        Ok((q, class))
    }

    /// Quotient by the commutator subgroup.
    pub fn abelianization(&self) -> Result<FinGroup> {
        let comm = self.commutator_subgroup();
        Ok(self.quotient(&comm)?.0)
    }

    /// Relabel a subgroup as a standalone group together with the embedding.
    pub fn subgroup_group(&self, subgroup: &[usize]) -> Result<(FinGroup, Vec<usize>)> {
        let mut pos = vec![usize::MAX; self.order];
        for (i, &g) in subgroup.iter().enumerate() {
            pos[g] = i;
        }
        let m = subgroup.len();
        let mut table = vec![vec![0usize; m]; m];
        for a in 0..m {
            for b in 0..m {
                let prod = self.mul(subgroup[a], subgroup[b]);
                if pos[prod] == usize::MAX {
                    return Err(Error::GroupInvariant("subset is not closed".into()));
                }
                table[a][b] = pos[prod];
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| subgroup.iter().map(|&g| l[g].clone()).collect());
        Ok((FinGroup::from_table(table, labels)?, subgroup.to_vec()))
    }

    fn minimal_generators(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = Vec::new();
        let mut reached = vec![false; self.order];
        reached[self.id] = true;
        for g in 0..self.order {
            if reached[g] {
                continue;
            }
            gens.push(g);
            for h in self.subgroup_closure(&gens) {
                reached[h] = true;
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group_basics() {
        let g = FinGroup::cyclic(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.id(), 0);
        assert_eq!(g.mul(4, 5), 3);
        assert_eq!(g.inv(2), 4);
        assert_eq!(g.element_order(2), 3);
        assert!(g.is_abelian());
    }

    #[test]
    fn heisenberg_mod2_structure() {
        let h = FinGroup::heisenberg_mod2();
        assert_eq!(h.order(), 8);
        let comm = h.commutator_subgroup();
        assert_eq!(comm.len(), 2);
        let ab = h.abelianization().unwrap();
        assert_eq!(ab.order(), 4);
        assert!(ab.is_abelian());
        assert!((0..4).all(|g| ab.element_order(g) <= 2), "abelianization is Z2 x Z2");
        // the central element (0,0,1) sits inside the commutator subgroup
        assert!(comm.contains(&4));
        assert_eq!(h.center(), vec![0, 4]);
    }

    #[test]
    fn abelian_group_has_trivial_commutator() {
        let g = FinGroup::cyclic(5);
        assert_eq!(g.commutator_subgroup(), vec![0]);
    }

    #[test]
    fn permutation_closure_of_s3() {
        let g = FinGroup::from_permutations(
            3,
            &[vec![1, 0, 2], vec![1, 2, 0]],
            DEFAULT_ORDER_CAP,
        )
        .unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.commutator_subgroup().len(), 3);
    }

    #[test]
    fn bad_tables_are_rejected() {
        // latin square that is not associative (order 5 loop)
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FinGroup::from_table(t, None), Err(Error::BadGroupTable(_))));
    }
}
