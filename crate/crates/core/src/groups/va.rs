//! Finitely generated virtually abelian groups presented as extension data:
//! a lattice Z^r, a finite point group D, an action D → GL(r,Z) and a
//! translation cocycle D×D → Z^r. Elements are pairs (v, d) multiplying as
//! (v1, d1)(v2, d2) = (v1 + ρ(d1)v2 + δ(d1, d2), d1·d2).

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{IntMatrix, Lattice};
use crate::groups::fin::{FinGroup, ORACLE_ORDER_CAP};

#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub vec: Vec<BigInt>,
    pub pt: usize,
}

impl GroupElement {
    pub fn lattice(v: Vec<BigInt>) -> Self {
        GroupElement { vec: v, pt: 0 }
    }

    pub fn lattice_i64(v: &[i64]) -> Self {
        GroupElement { vec: v.iter().map(|&x| BigInt::from(x)).collect(), pt: 0 }
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, p{})", self.vec, self.pt)
    }
}

/// First violated defining identity, with witnesses.
#[derive(Clone, Debug)]
pub enum GroupViolation {
    ActionNotUnimodular { d: usize },
    ActionIdentityWrong,
    ActionNotHomomorphism { d1: usize, d2: usize },
    CocycleNotNormalized { d: usize },
    CocycleIdentityFails { d1: usize, d2: usize, d3: usize },
}

impl fmt::Display for GroupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupViolation::ActionNotUnimodular { d } => {
                write!(f, "action matrix of point element {d} is not in GL(r,Z)")
            }
            GroupViolation::ActionIdentityWrong => write!(f, "action of the identity is not I"),
            GroupViolation::ActionNotHomomorphism { d1, d2 } => {
                write!(f, "action is not a homomorphism at ({d1}, {d2})")
            }
            GroupViolation::CocycleNotNormalized { d } => {
                write!(f, "translation cocycle is not normalized at {d}")
            }
            GroupViolation::CocycleIdentityFails { d1, d2, d3 } => {
                write!(f, "translation cocycle identity fails at ({d1}, {d2}, {d3})")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct VAGroup {
    rank: usize,
    point_group: FinGroup,
    action: Vec<IntMatrix>,
    trans_cocycle: Vec<Vec<BigInt>>, // δ[d1·|D| + d2] flattened to length |D|²·r
}

impl fmt::Debug for VAGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VAGroup(rank {}, |D| = {})", self.rank, self.point_group.order())
    }
}

impl VAGroup {
    /// Degenerate inputs with δ(e,e) ≠ 0 are normalized by translating the
    /// section, which leaves the extension class unchanged.
    pub fn new(
        rank: usize,
        point_group: FinGroup,
        action: Vec<IntMatrix>,
        trans_cocycle: Vec<Vec<Vec<BigInt>>>,
    ) -> Result<Self> {
        let n = point_group.order();
        if action.len() != n {
            return Err(Error::DimensionMismatch("one action matrix per point element".into()));
        }
        if trans_cocycle.len() != n || trans_cocycle.iter().any(|row| row.len() != n) {
            return Err(Error::DimensionMismatch("translation cocycle table shape".into()));
        }
        let mut delta = Vec::with_capacity(n * n);
        for row in &trans_cocycle {
            for v in row {
                if v.len() != rank {
                    return Err(Error::DimensionMismatch("translation vector length".into()));
                }
                delta.push(v.clone());
            }
        }
        let id = point_group.id();
        let shift = delta[id * n + id].clone();
        if shift.iter().any(|x| !x.is_zero()) {
            for d1 in 0..n {
                let corr = action[d1].mul_vec(&shift)?;
                for d2 in 0..n {
                    for k in 0..rank {
                        delta[d1 * n + d2][k] -= &corr[k];
                    }
                }
            }
        }
        let g = VAGroup { rank, point_group, action, trans_cocycle: flatten(delta) };
        Ok(g)
    }

    pub fn free_abelian(rank: usize) -> Self {
        VAGroup {
            rank,
            point_group: FinGroup::trivial(),
            action: vec![IntMatrix::identity(rank)],
            trans_cocycle: vec![BigInt::zero(); rank],
        }
    }

    /// Semidirect product Z^r ⋊ D with the given action and trivial δ.
    pub fn semidirect(rank: usize, point_group: FinGroup, action: Vec<IntMatrix>) -> Result<Self> {
        let n = point_group.order();
        let zero = vec![vec![vec![BigInt::zero(); rank]; n]; n];
        VAGroup::new(rank, point_group, action, zero)
    }

    /// Z² ⋊ Z₂ where the generator acts by −I.
    pub fn z2_by_inversion() -> Self {
        let d = FinGroup::cyclic(2);
        let action = vec![IntMatrix::identity(2), IntMatrix::from_i64(&[&[-1, 0], &[0, -1]])];
        VAGroup::semidirect(2, d, action).expect("inversion data is consistent")
    }

    /// Z² ⋊ Z₄ where the generator acts by a quarter rotation.
    pub fn z2_by_rotation4() -> Self {
        let d = FinGroup::cyclic(4);
        let r = IntMatrix::from_i64(&[&[0, -1], &[1, 0]]);
        let mut action = vec![IntMatrix::identity(2)];
        let mut cur = r.clone();
        for _ in 0..3 {
            action.push(cur.clone());
            cur = cur.mul(&r).expect("square matrices");
        }
        VAGroup::semidirect(2, d, action).expect("rotation data is consistent")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Hirsch length: the rank of the finite-index free abelian subgroup.
    pub fn hirsch_length(&self) -> usize {
        self.rank
    }

    pub fn point_group(&self) -> &FinGroup {
        &self.point_group
    }

    pub fn action(&self, d: usize) -> &IntMatrix {
        &self.action[d]
    }

    pub fn delta(&self, d1: usize, d2: usize) -> &[BigInt] {
        let n = self.point_group.order();
        let base = (d1 * n + d2) * self.rank;
        &self.trans_cocycle[base..base + self.rank]
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { vec: vec![BigInt::zero(); self.rank], pt: self.point_group.id() }
    }

    pub fn basis_element(&self, i: usize) -> GroupElement {
        let mut v = vec![BigInt::zero(); self.rank];
        v[i] = BigInt::from(1);
        GroupElement { vec: v, pt: self.point_group.id() }
    }

    pub fn point_element(&self, d: usize) -> GroupElement {
        GroupElement { vec: vec![BigInt::zero(); self.rank], pt: d }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        if a.vec.len() != self.rank || b.vec.len() != self.rank {
            return Err(Error::DimensionMismatch("element rank".into()));
        }
        let rotated = self.action[a.pt].mul_vec(&b.vec)?;
        let delta = self.delta(a.pt, b.pt);
        let vec = (0..self.rank).map(|i| &a.vec[i] + &rotated[i] + &delta[i]).collect();
        Ok(GroupElement { vec, pt: self.point_group.mul(a.pt, b.pt) })
    }

    pub fn invert(&self, a: &GroupElement) -> Result<GroupElement> {
        if a.vec.len() != self.rank {
            return Err(Error::DimensionMismatch("element rank".into()));
        }
        let pt_inv = self.point_group.inv(a.pt);
        let delta = self.delta(a.pt, pt_inv);
        let shifted: Vec<BigInt> = (0..self.rank).map(|i| &a.vec[i] + &delta[i]).collect();
        let back = self.action[pt_inv].mul_vec(&shifted)?;
        Ok(GroupElement { vec: back.into_iter().map(|x| -x).collect(), pt: pt_inv })
    }

    pub fn conjugate(&self, g: &GroupElement, x: &GroupElement) -> Result<GroupElement> {
        let gx = self.multiply(g, x)?;
        self.multiply(&gx, &self.invert(g)?)
    }

    pub fn power(&self, g: &GroupElement, k: i64) -> Result<GroupElement> {
        let mut base = if k < 0 { self.invert(g)? } else { g.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.multiply(&acc, &base)?;
            }
            base = self.multiply(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Order of an element, or None if no power up to `cap` is the identity.
    pub fn element_order(&self, g: &GroupElement, cap: usize) -> Result<Option<usize>> {
        let id = self.identity();
        let mut x = g.clone();
        for k in 1..=cap {
            if x == id {
                return Ok(Some(k));
            }
            x = self.multiply(&x, g)?;
        }
        Ok(None)
    }

    pub fn is_central(&self, a: &GroupElement) -> Result<bool> {
        for i in 0..self.rank {
            let e = self.basis_element(i);
            if self.multiply(a, &e)? != self.multiply(&e, a)? {
                return Ok(false);
            }
        }
        for d in 0..self.point_group.order() {
            let e = self.point_element(d);
            if self.multiply(a, &e)? != self.multiply(&e, a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exhaustive invariant check; reports the first violation found.
    pub fn validate(&self) -> Result<std::result::Result<(), GroupViolation>> {
        let n = self.point_group.order();
        let id = self.point_group.id();
        if !self.action[id].is_identity() {
            return Ok(Err(GroupViolation::ActionIdentityWrong));
        }
        for d in 0..n {
            if !self.action[d].is_unimodular() {
                return Ok(Err(GroupViolation::ActionNotUnimodular { d }));
            }
        }
        for d1 in 0..n {
            for d2 in 0..n {
                let lhs = self.action[d1].mul(&self.action[d2])?;
                if lhs != self.action[self.point_group.mul(d1, d2)] {
                    return Ok(Err(GroupViolation::ActionNotHomomorphism { d1, d2 }));
                }
            }
        }
        for d in 0..n {
            if self.delta(id, d).iter().any(|x| !x.is_zero())
                || self.delta(d, id).iter().any(|x| !x.is_zero())
            {
                return Ok(Err(GroupViolation::CocycleNotNormalized { d }));
            }
        }
        // twisted cocycle identity ρ(d1)δ(d2,d3) − δ(d1d2,d3) + δ(d1,d2d3) − δ(d1,d2) = 0;
        // exhaustive up to |D| = 256, sampled triples above
        let mut check_triple = |d1: usize, d2: usize, d3: usize| -> Result<bool> {
            let d12 = self.point_group.mul(d1, d2);
            let rotated = self.action[d1].mul_vec(self.delta(d2, d3))?;
            let a = self.delta(d12, d3);
            let b = self.delta(d1, self.point_group.mul(d2, d3));
            let c = self.delta(d1, d2);
            Ok((0..self.rank).all(|k| &rotated[k] - &a[k] + &b[k] - &c[k] == BigInt::zero()))
        };
        if n <= 256 {
            for d1 in 0..n {
                for d2 in 0..n {
                    for d3 in 0..n {
                        if !check_triple(d1, d2, d3)? {
                            return Ok(Err(GroupViolation::CocycleIdentityFails { d1, d2, d3 }));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..20_000 {
                let d1 = rng.gen_range(0..n);
                let d2 = rng.gen_range(0..n);
                let d3 = rng.gen_range(0..n);
                if !check_triple(d1, d2, d3)? {
                    return Ok(Err(GroupViolation::CocycleIdentityFails { d1, d2, d3 }));
                }
            }
        }
        Ok(Ok(()))
    }

    /// Point elements acting trivially on the lattice, the preimage group L,
    /// and the index [G : L].
    pub fn centralizer_of_lattice(&self) -> Result<CentralizerData> {
        let k_indices: Vec<usize> = (0..self.point_group.order())
            .filter(|&d| self.action[d].is_identity())
            .collect();
        let closed = self.point_group.subgroup_closure(&k_indices);
        if closed != k_indices {
            return Err(Error::Internal("kernel of the action must be a subgroup".into()));
        }
        let (k_group, embed) = self.point_group.subgroup_group(&k_indices)?;
        let m = k_indices.len();
        let action = vec![IntMatrix::identity(self.rank); m];
        let delta = (0..m)
            .map(|a| (0..m).map(|b| self.delta(embed[a], embed[b]).to_vec()).collect())
            .collect();
        let sub = VAGroup::new(self.rank, k_group, action, delta)?;
        let big_k = self.point_group.order() / m;
        Ok(CentralizerData { k_indices: k_indices.clone(), sub, big_k })
    }

    /// Finite quotient G / mZ^r of order m^r·|D|.
    pub fn finite_quotient(&self, m: u64) -> Result<FiniteQuotient> {
        if m == 0 {
            return Err(Error::DimensionMismatch("modulus must be positive".into()));
        }
        let lat = Lattice::scaled(self.rank, &BigInt::from(m));
        let all: Vec<usize> = (0..self.point_group.order()).collect();
        self.quotient_by_lattice(&lat, &all)
    }

    /// Quotient of the subgroup with point parts in `point_subset` by a
    /// full-rank, action-invariant sublattice.
    pub fn quotient_by_lattice(
        &self,
        sublattice: &Lattice,
        point_subset: &[usize],
    ) -> Result<FiniteQuotient> {
        if sublattice.ambient_rank() != self.rank || sublattice.rank() != self.rank {
            return Err(Error::DimensionMismatch("need a full-rank sublattice".into()));
        }
        for &d in point_subset {
            for i in 0..self.rank {
                let row = sublattice.basis().row(i).to_vec();
                let image = self.action[d].mul_vec(&row)?;
                if !sublattice.contains(&image) {
                    return Err(Error::GroupInvariant(
                        "sublattice is not invariant under the point action".into(),
                    ));
                }
            }
        }
        let covol = sublattice.covolume()?;
        let covol_u: u64 = u64::try_from(&covol)
            .map_err(|_| Error::ResourceExceeded("quotient covolume exceeds u64".into()))?;
        let order = (covol_u as usize)
            .checked_mul(point_subset.len())
            .filter(|&o| o <= ORACLE_ORDER_CAP)
            .ok_or_else(|| {
                Error::ResourceExceeded(format!(
                    "quotient order {}·{} exceeds cap {}",
                    covol_u,
                    point_subset.len(),
                    ORACLE_ORDER_CAP
                ))
            })?;

        // residue strides along the HNF diagonal
        let diag: Vec<u64> = (0..self.rank)
            .map(|i| u64::try_from(&sublattice.basis()[(i, i)]).expect("positive diagonal"))
            .collect();
        let mut strides = vec![1u64; self.rank];
        for i in 1..self.rank {
            strides[i] = strides[i - 1] * diag[i - 1];
        }
        let mut pt_pos = vec![usize::MAX; self.point_group.order()];
        for (i, &d) in point_subset.iter().enumerate() {
            pt_pos[d] = i;
        }

        let mut reps = Vec::with_capacity(order);
        for pos in 0..point_subset.len() {
            for v_code in 0..covol_u {
                let vec: Vec<BigInt> = (0..self.rank)
                    .map(|i| BigInt::from((v_code / strides[i]) % diag[i]))
                    .collect();
                reps.push(GroupElement { vec, pt: point_subset[pos] });
            }
        }

        let quot = FiniteQuotientData {
            parent_rank: self.rank,
            sublattice: sublattice.clone(),
            covolume: covol_u,
            strides,
            diag,
            pt_pos,
            reps,
        };

        let mut table = vec![vec![0usize; order]; order];
        for a in 0..order {
            for b in 0..order {
                let prod = self.multiply(&quot.reps[a], &quot.reps[b])?;
                table[a][b] = quot.index_of(&prod)?;
            }
        }
        let labels = quot
            .reps
            .iter()
            .map(|g| format!("({:?},{})", g.vec.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","), self.point_group.label(g.pt)))
            .collect();
        let group = FinGroup::from_table(table, Some(labels))?;
        Ok(FiniteQuotient { group, data: quot })
    }
}

fn flatten(delta: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    delta.into_iter().flatten().collect()
}

pub struct CentralizerData {
    /// Point elements of D acting trivially on the lattice.
    pub k_indices: Vec<usize>,
    /// The centralizer L as a group in its own right (trivial action).
    pub sub: VAGroup,
    /// The index [G : L] = [D : K].
    pub big_k: usize,
}

struct FiniteQuotientData {
    parent_rank: usize,
    sublattice: Lattice,
    covolume: u64,
    strides: Vec<u64>,
    diag: Vec<u64>,
    pt_pos: Vec<usize>,
    reps: Vec<GroupElement>,
}

pub struct FiniteQuotient {
    pub group: FinGroup,
    data: FiniteQuotientData,
}

impl FiniteQuotient {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Class index of a parent-group element.
    pub fn index_of(&self, g: &GroupElement) -> Result<usize> {
        self.data.index_of(g)
    }

    /// Canonical representative of a class.
    pub fn rep(&self, idx: usize) -> &GroupElement {
        &self.data.reps[idx]
    }

    pub fn reps(&self) -> &[GroupElement] {
        &self.data.reps
    }

    /// Indices of classes with trivial point part, in enumeration order.
    pub fn lattice_classes(&self) -> Vec<usize> {
        self.data
            .reps
            .iter()
            .enumerate()
            .filter(|(_, g)| self.data.pt_pos[g.pt] == 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn sublattice(&self) -> &Lattice {
        &self.data.sublattice
    }
}

impl FiniteQuotientData {
    fn index_of(&self, g: &GroupElement) -> Result<usize> {
        if g.vec.len() != self.parent_rank {
            return Err(Error::DimensionMismatch("element rank".into()));
        }
        let pos = self.pt_pos[g.pt];
        if pos == usize::MAX {
            return Err(Error::GroupInvariant("point part outside the subgroup".into()));
        }
        let reduced = self.sublattice.reduce_mod(&g.vec)?;
        let mut code = 0u64;
        for i in 0..self.parent_rank {
            let c = u64::try_from(&reduced[i]).map_err(|_| Error::Internal("negative residue".into()))?;
            debug_assert!(c < self.diag[i]);
            code += c * self.strides[i];
        }
        Ok(pos * self.covolume as usize + code as usize)
    }
}

/// Deterministic pseudo-random elements for law checks in tests.
pub fn random_element(g: &VAGroup, rng: &mut ChaCha8Rng, span: i64) -> GroupElement {
    let vec = (0..g.rank()).map(|_| BigInt::from(rng.gen_range(-span..=span))).collect();
    let pt = rng.gen_range(0..g.point_group().order());
    GroupElement { vec, pt }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn semidirect_validates() {
        let g = VAGroup::z2_by_inversion();
        assert!(g.validate().unwrap().is_ok());
        assert_eq!(g.hirsch_length(), 2);
    }

    #[test]
    fn trivial_point_group_validates() {
        let g = VAGroup::free_abelian(1);
        assert!(g.validate().unwrap().is_ok());
        assert_eq!(g.hirsch_length(), 1);
    }

    #[test]
    fn bad_translation_cocycle_is_reported() {
        let d = FinGroup::cyclic(2);
        let action = vec![IntMatrix::identity(2), IntMatrix::from_i64(&[&[-1, 0], &[0, -1]])];
        let mut delta = vec![vec![vec![BigInt::zero(); 2]; 2]; 2];
        delta[1][1] = vec![BigInt::from(1), BigInt::zero()];
        let g = VAGroup::new(2, d, action, delta).unwrap();
        match g.validate().unwrap() {
            Err(GroupViolation::CocycleIdentityFails { d1: 1, d2: 1, d3: 1 }) => {}
            other => panic!("expected a cocycle violation at (1,1,1), got {:?}", other),
        }
    }

    #[test]
    fn multiplication_in_inversion_group() {
        let g = VAGroup::z2_by_inversion();
        let a = GroupElement { vec: vec![BigInt::from(1), BigInt::zero()], pt: 1 };
        let sq = g.multiply(&a, &a).unwrap();
        assert_eq!(sq, g.identity());

        let x = GroupElement::lattice_i64(&[2, 3]);
        let y = GroupElement::lattice_i64(&[1, 1]);
        assert_eq!(g.multiply(&x, &y).unwrap(), GroupElement::lattice_i64(&[3, 4]));
    }

    #[test]
    fn group_laws_on_random_elements() {
        let g = VAGroup::z2_by_rotation4();
        let mut rng = seeded_rng(7);
        for _ in 0..200 {
            let a = random_element(&g, &mut rng, 4);
            let b = random_element(&g, &mut rng, 4);
            let c = random_element(&g, &mut rng, 4);
            let ab_c = g.multiply(&g.multiply(&a, &b).unwrap(), &c).unwrap();
            let a_bc = g.multiply(&a, &g.multiply(&b, &c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            assert_eq!(g.multiply(&a, &g.invert(&a).unwrap()).unwrap(), g.identity());
            assert_eq!(g.multiply(&g.invert(&a).unwrap(), &a).unwrap(), g.identity());
        }
    }

    #[test]
    fn centralizer_of_inversion_group_is_the_lattice() {
        let g = VAGroup::z2_by_inversion();
        let c = g.centralizer_of_lattice().unwrap();
        assert_eq!(c.k_indices, vec![0]);
        assert_eq!(c.big_k, 2);
        assert_eq!(c.sub.point_group().order(), 1);
    }

    #[test]
    fn centralizer_of_trivial_action_is_everything() {
        let d = FinGroup::cyclic(3);
        let g = VAGroup::semidirect(2, d, vec![IntMatrix::identity(2); 3]).unwrap();
        let c = g.centralizer_of_lattice().unwrap();
        assert_eq!(c.k_indices.len(), 3);
        assert_eq!(c.big_k, 1);
    }

    #[test]
    fn centralizer_fixes_small_lattice_vectors() {
        let g = VAGroup::z2_by_rotation4();
        let c = g.centralizer_of_lattice().unwrap();
        for &d in &c.k_indices {
            let lift = g.point_element(d);
            for x in -3i64..=3 {
                for y in -3i64..=3 {
                    let v = GroupElement::lattice_i64(&[x, y]);
                    assert_eq!(g.conjugate(&lift, &v).unwrap(), v);
                }
            }
        }
    }

    #[test]
    fn finite_quotient_orders_and_homomorphism() {
        let g = VAGroup::z2_by_inversion();
        let q = g.finite_quotient(3).unwrap();
        assert_eq!(q.order(), 18);

        let mut rng = seeded_rng(11);
        for _ in 0..200 {
            let a = random_element(&g, &mut rng, 6);
            let b = random_element(&g, &mut rng, 6);
            let ab = g.multiply(&a, &b).unwrap();
            assert_eq!(
                q.group.mul(q.index_of(&a).unwrap(), q.index_of(&b).unwrap()),
                q.index_of(&ab).unwrap()
            );
        }

        let free1 = VAGroup::free_abelian(1);
        assert_eq!(free1.finite_quotient(1).unwrap().order(), 1);

        let free2 = VAGroup::free_abelian(2);
        let q2 = free2.finite_quotient(2).unwrap();
        assert_eq!(q2.order(), 4);
        assert!(q2.group.is_abelian());
    }

    #[test]
    fn finite_quotient_resource_bound() {
        let g = VAGroup::free_abelian(2);
        assert!(matches!(g.finite_quotient(1000), Err(Error::ResourceExceeded(_))));
    }

    #[test]
    fn commutator_of_mod3_inversion_quotient() {
        let g = VAGroup::z2_by_inversion();
        let q = g.finite_quotient(3).unwrap();
        let comm = q.group.commutator_subgroup();
        assert_eq!(comm.len(), 9);
        assert_eq!(q.group.abelianization().unwrap().order(), 2);
    }

    #[test]
    fn element_order_detection() {
        let g = VAGroup::z2_by_inversion();
        let s = g.point_element(1);
        assert_eq!(g.element_order(&s, 8).unwrap(), Some(2));
        let t = GroupElement::lattice_i64(&[1, 0]);
        assert_eq!(g.element_order(&t, 8).unwrap(), None);
        assert_eq!(g.element_order(&g.identity(), 8).unwrap(), Some(1));
    }
}
