//! Re-presents the central extension of Z_n by a virtually abelian group G
//! (classified by an n-torsion cocycle) as extension data again: the new
//! lattice is spanned by lifts of the scaled basis s·e_i, and the finite
//! point group collects the central fibre, the lattice residues and D.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::cocycles::CocycleSpec;
use crate::error::{Error, Result};
use crate::groups::fin::{FinGroup, ORACLE_ORDER_CAP};
use crate::groups::va::{GroupElement, VAGroup};

/// Element of the abstract extension: a central coordinate mod n and a
/// base-group element.
#[derive(Clone, PartialEq, Eq, Debug)]
struct ExtElem {
    c: u64,
    g: GroupElement,
}

/// Exact arithmetic in the extension defined by the scaled cocycle
/// n·σ: G×G → Z_n.
struct ExtOps<'a> {
    group: &'a VAGroup,
    sigma: &'a CocycleSpec,
    n: u64,
}

impl<'a> ExtOps<'a> {
    fn phase(&self, a: &GroupElement, b: &GroupElement) -> Result<u64> {
        if self.n == 1 {
            return Ok(0);
        }
        let v = self.sigma.eval(self.group, a, b)?;
        let scaled = v.turns() * crate::exact::Rational::from_integer(BigInt::from(self.n));
        if !v.is_root_of_unity() || !scaled.is_integer() {
            return Err(Error::ValueNotTorsionOfOrderN { at: format!("{a:?},{b:?}"), n: self.n });
        }
        let z = scaled.to_integer().mod_floor(&BigInt::from(self.n));
        Ok(u64::try_from(&z).expect("residue fits u64"))
    }

    fn id(&self) -> ExtElem {
        ExtElem { c: 0, g: self.group.identity() }
    }

    fn mul(&self, a: &ExtElem, b: &ExtElem) -> Result<ExtElem> {
        let n = self.n.max(1);
        let c = (a.c + b.c + self.phase(&a.g, &b.g)?) % n;
        Ok(ExtElem { c, g: self.group.multiply(&a.g, &b.g)? })
    }

    fn inv(&self, a: &ExtElem) -> Result<ExtElem> {
        let g_inv = self.group.invert(&a.g)?;
        let n = self.n.max(1);
        let c = (2 * n - a.c % n - self.phase(&a.g, &g_inv)? % n) % n;
        Ok(ExtElem { c, g: g_inv })
    }

    fn conj(&self, by: &ExtElem, x: &ExtElem) -> Result<ExtElem> {
        let t = self.mul(by, x)?;
        self.mul(&t, &self.inv(by)?)
    }

    fn lattice_lift(&self, v: Vec<BigInt>) -> ExtElem {
        ExtElem { c: 0, g: GroupElement { vec: v, pt: self.group.point_group().id() } }
    }

    fn scaled_basis_lift(&self, s: u64, i: usize) -> ExtElem {
        let mut v = vec![BigInt::zero(); self.group.rank()];
        v[i] = BigInt::from(s);
        self.lattice_lift(v)
    }

    /// H(x) = h_1^{x_1}···h_r^{x_r} where h_i lifts s·e_i.
    fn h_power(&self, s: u64, x: &[BigInt]) -> Result<ExtElem> {
        let mut acc = self.id();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let p = self.ext_pow(&self.scaled_basis_lift(s, i), xi)?;
            acc = self.mul(&acc, &p)?;
        }
        Ok(acc)
    }

    fn ext_pow(&self, g: &ExtElem, k: &BigInt) -> Result<ExtElem> {
        let mut base = if k.is_negative() { self.inv(g)? } else { g.clone() };
        let mut e = k.abs();
        let one = BigInt::from(1);
        let mut acc = self.id();
        while e > BigInt::zero() {
            if (&e & &one) == one {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }
}

/// Presentation of the extension as a `VAGroup`, plus the connecting maps.
pub struct ExtensionResult {
    pub extended: VAGroup,
    /// Generator of the central fibre, as an element of `extended`.
    pub central_gen: GroupElement,
    pub order_n: u64,
    /// The new lattice basis lifts s·e_i in the base group.
    pub scale_s: u64,
    /// Per point class: (central coordinate, lattice residue in [0,s)^r, D index).
    reps: Vec<(u64, Vec<BigInt>, usize)>,
    central_classes: Vec<usize>,
}

impl ExtensionResult {
    /// Surjective projection onto the base group; kernel is ⟨central_gen⟩.
    pub fn project(&self, g: &GroupElement) -> Result<GroupElement> {
        let (_, res, d) = self
            .reps
            .get(g.pt)
            .ok_or_else(|| Error::DimensionMismatch("point index out of range".into()))?;
        let s = BigInt::from(self.scale_s);
        let vec = (0..g.vec.len()).map(|i| &g.vec[i] * &s + &res[i]).collect();
        Ok(GroupElement { vec, pt: *d })
    }

    /// The injection Z_n → extended group, k ↦ central_gen^k.
    pub fn embed_centre(&self, k: u64) -> GroupElement {
        let n = self.order_n.max(1);
        GroupElement {
            vec: vec![BigInt::zero(); self.extended.rank()],
            pt: self.central_classes[(k % n) as usize],
        }
    }
}

/// Build the extension classified by a cocycle with values of order
/// dividing n. The lattice scale s is the smallest ladder candidate for
/// which the lifted scaled basis commutes and conjugation by every lattice
/// and point lift maps it into itself with zero central correction.
pub fn central_extension(g: &VAGroup, sigma: &CocycleSpec, n: u64) -> Result<ExtensionResult> {
    if n == 0 {
        return Err(Error::DimensionMismatch("fibre order must be positive".into()));
    }
    sigma.values_torsion_divide(n)?;
    let ops = ExtOps { group: g, sigma, n };
    let r = g.rank();
    let d_order = g.point_group().order();

    let moduli_lcm = sigma
        .inflation_parts()
        .iter()
        .map(|p| p.modulus())
        .try_fold(1u64, |acc, m| crate::exact::lcm_u64(acc, m))?;
    let mut ladder = vec![
        1,
        n,
        n.saturating_mul(n),
        crate::exact::lcm_u64(n, moduli_lcm)?,
        crate::exact::lcm_u64(n.saturating_mul(n), moduli_lcm)?,
    ];
    ladder.sort_unstable();
    ladder.dedup();
    ladder.retain(|&s| {
        (s as u128).checked_pow(r as u32).map_or(false, |sr| {
            sr.saturating_mul(n as u128).saturating_mul(d_order as u128)
                <= ORACLE_ORDER_CAP as u128
        })
    });
    if ladder.is_empty() {
        return Err(Error::ResourceExceeded("every admissible scale exceeds the order cap".into()));
    }

    let mut chosen = None;
    for &s in &ladder {
        if scale_admissible(&ops, s)? {
            chosen = Some(s);
            break;
        }
    }
    let Some(s) = chosen else {
        return Err(Error::ExtensionScale(ladder));
    };

    build_extension(g, ops, n, s)
}

fn scale_admissible(ops: &ExtOps, s: u64) -> Result<bool> {
    let r = ops.group.rank();
    let lifts: Vec<ExtElem> = (0..r).map(|i| ops.scaled_basis_lift(s, i)).collect();
    // (a) lifted scaled basis commutes
    for i in 0..r {
        for j in i + 1..r {
            if ops.mul(&lifts[i], &lifts[j])? != ops.mul(&lifts[j], &lifts[i])? {
                return Ok(false);
            }
        }
    }
    // (b) conjugation by basis lattice lifts fixes each h_i exactly;
    // conjugation by any lattice lift is a composition of these
    for k in 0..r {
        let mut v = vec![BigInt::zero(); r];
        v[k] = BigInt::from(1);
        let by = ops.lattice_lift(v);
        for h in &lifts {
            if ops.conj(&by, h)? != *h {
                return Ok(false);
            }
        }
    }
    // (c) conjugation by point lifts lands on the expected lattice word
    // with zero central correction
    for d in 0..ops.group.point_group().order() {
        let by = ExtElem { c: 0, g: ops.group.point_element(d) };
        for (i, h) in lifts.iter().enumerate() {
            let conj = ops.conj(&by, h)?;
            let mut e = vec![BigInt::zero(); r];
            e[i] = BigInt::from(1);
            let target = ops.h_power(s, &ops.group.action(d).mul_vec(&e)?)?;
            if conj != target {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn build_extension(
    g: &VAGroup,
    ops: ExtOps,
    n: u64,
    s: u64,
) -> Result<ExtensionResult> {
    let r = g.rank();
    let d_order = g.point_group().order();
    let s_r = (s as usize).pow(r as u32);
    let order = (n as usize) * s_r * d_order;

    // class representatives in a fixed enumeration
    let mut reps = Vec::with_capacity(order);
    for c in 0..n {
        let mut counter = vec![0u64; r];
        loop {
            for d in 0..d_order {
                reps.push((c, counter.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>(), d));
            }
            let mut pos = 0;
            while pos < r {
                counter[pos] += 1;
                if counter[pos] < s {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
            if pos == r {
                break;
            }
        }
    }
    debug_assert_eq!(reps.len(), order);
    let class_index = |c: u64, res: &[BigInt], d: usize| -> usize {
        let mut code = 0usize;
        let mut stride = 1usize;
        for i in 0..r {
            let x = u64::try_from(&res[i]).expect("residue in range");
            code += (x as usize) * stride;
            stride *= s as usize;
        }
        ((c as usize) * s_r + code) * d_order + d
    };

    // reduce an extension element to (class index, lattice word)
    let s_big = BigInt::from(s);
    let reduce = |e: &ExtElem| -> Result<(usize, Vec<BigInt>)> {
        let mut q = Vec::with_capacity(r);
        let mut rem = Vec::with_capacity(r);
        for i in 0..r {
            let (qi, ri) = e.g.vec[i].div_mod_floor(&s_big);
            q.push(qi);
            rem.push(ri);
        }
        let hq = ops.h_power(s, &q)?;
        let rep_g = GroupElement { vec: rem.clone(), pt: e.g.pt };
        let n_eff = n.max(1);
        let corr = (hq.c + ops.phase(&hq.g, &rep_g)?) % n_eff;
        let c = (e.c + n_eff - corr) % n_eff;
        Ok((class_index(c, &rem, e.g.pt), q))
    };

    // point-group table and translation cocycle from representative products
    let mut table = vec![vec![0usize; order]; order];
    let mut delta = vec![vec![vec![BigInt::zero(); r]; order]; order];
    for a in 0..order {
        let ea = ExtElem {
            c: reps[a].0,
            g: GroupElement { vec: reps[a].1.clone(), pt: reps[a].2 },
        };
        for b in 0..order {
            let eb = ExtElem {
                c: reps[b].0,
                g: GroupElement { vec: reps[b].1.clone(), pt: reps[b].2 },
            };
            let prod = ops.mul(&ea, &eb)?;
            let (idx, q) = reduce(&prod)?;
            table[a][b] = idx;
            delta[a][b] = q;
        }
    }
    let labels = reps
        .iter()
        .map(|(c, res, d)| {
            format!(
                "{}|{}|{}",
                c,
                res.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","),
                g.point_group().label(*d)
            )
        })
        .collect();
    let point_group = FinGroup::from_table(table, Some(labels))?;
    let action = reps.iter().map(|(_, _, d)| g.action(*d).clone()).collect();
    let extended = VAGroup::new(r, point_group, action, delta)?;
    if let Err(v) = extended.validate()? {
        return Err(Error::Internal(format!("extension data is inconsistent: {v}")));
    }

    let base_id = g.point_group().id();
    let central_classes: Vec<usize> = (0..n.max(1))
        .map(|c| class_index(c, &vec![BigInt::zero(); r], base_id))
        .collect();
    let central_gen = GroupElement {
        vec: vec![BigInt::zero(); r],
        pt: central_classes[if n > 1 { 1 } else { 0 }],
    };

    Ok(ExtensionResult {
        extended,
        central_gen,
        order_n: n,
        scale_s: s,
        reps,
        central_classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycles::{CocycleSpec, PointTable};
    use crate::exact::{rat, CircleValue};
    use crate::groups::va::{random_element, seeded_rng};

    fn heisenberg_half() -> (VAGroup, CocycleSpec) {
        (VAGroup::free_abelian(2), CocycleSpec::rotation(rat(1, 2)))
    }

    #[test]
    fn half_rotation_extension_is_heisenberg_like() {
        let (g, sigma) = heisenberg_half();
        let ext = central_extension(&g, &sigma, 2).unwrap();
        assert_eq!(ext.scale_s, 2);
        assert_eq!(ext.order_n, 2);
        assert_eq!(ext.extended.point_group().order(), 2 * 4);
        assert_eq!(ext.extended.hirsch_length(), 2);

        // the basis lifts do not commute: their commutator is the central
        // generator of order 2
        let ops = ExtOps { group: &g, sigma: &sigma, n: 2 };
        let e1 = ops.lattice_lift(vec![BigInt::from(1), BigInt::zero()]);
        let e2 = ops.lattice_lift(vec![BigInt::zero(), BigInt::from(1)]);
        let lhs = ops.mul(&e1, &e2).unwrap();
        let rhs = ops.mul(&e2, &e1).unwrap();
        assert_eq!(lhs.g, rhs.g);
        assert_eq!((lhs.c + 1) % 2, rhs.c, "commutator picks up the central generator");

        // the point group is the mod-2 Heisenberg group
        let d = ext.extended.point_group();
        assert_eq!(d.order(), 8);
        assert_eq!(d.commutator_subgroup().len(), 2);
        assert_eq!(d.abelianization().unwrap().order(), 4);
    }

    #[test]
    fn zero_cocycle_gives_direct_sum() {
        let g = VAGroup::z2_by_inversion();
        let sigma = CocycleSpec::zero(2);
        let ext = central_extension(&g, &sigma, 3).unwrap();
        assert_eq!(ext.scale_s, 1);
        assert_eq!(ext.extended.point_group().order(), 3 * 2);
        // Z_3 × Z_2 point group is abelian here
        assert!(ext.extended.point_group().is_abelian());
    }

    #[test]
    fn inflated_point_table_extension() {
        let g = VAGroup::z2_by_inversion();
        let mut t = PointTable::zero(2);
        t.set(1, 1, CircleValue::from_turns(rat(1, 2)));
        let sigma = CocycleSpec::finite_table(&g, t).unwrap();
        let ext = central_extension(&g, &sigma, 2).unwrap();
        assert_eq!(ext.scale_s, 1);
        assert_eq!(ext.extended.point_group().order(), 4);
        // the extension of Z₂ by the nontrivial table is Z₄
        let lifted = ext.extended.point_group();
        assert!(lifted.is_abelian());
        assert!((0..4).any(|x| lifted.element_order(x) == 4));
    }

    #[test]
    fn projection_is_a_homomorphism_with_central_kernel() {
        let (g, sigma) = heisenberg_half();
        let ext = central_extension(&g, &sigma, 2).unwrap();
        let mut rng = seeded_rng(17);
        for _ in 0..200 {
            let a = random_element(&ext.extended, &mut rng, 4);
            let b = random_element(&ext.extended, &mut rng, 4);
            let ab = ext.extended.multiply(&a, &b).unwrap();
            assert_eq!(
                ext.project(&ab).unwrap(),
                g.multiply(&ext.project(&a).unwrap(), &ext.project(&b).unwrap()).unwrap()
            );
        }

        // kernel of the projection is exactly the cyclic central subgroup
        let a = ext.central_gen.clone();
        assert!(ext.extended.is_central(&a).unwrap());
        assert_eq!(ext.extended.element_order(&a, 8).unwrap(), Some(2));
        assert_eq!(ext.project(&a).unwrap(), g.identity());
        let sq = ext.extended.multiply(&a, &a).unwrap();
        assert_eq!(sq, ext.extended.identity());
        assert_eq!(ext.embed_centre(1), a);
        assert_eq!(ext.embed_centre(0), ext.extended.identity());

        // kernel check: classes projecting to small identity-lattice elements
        let order = ext.extended.point_group().order();
        let zero = vec![BigInt::zero(); 2];
        let kernel: Vec<usize> = (0..order)
            .filter(|&pt| {
                let e = GroupElement { vec: zero.clone(), pt };
                ext.project(&e).map(|p| p == g.identity()).unwrap_or(false)
            })
            .collect();
        assert_eq!(kernel.len(), 2);
    }

    #[test]
    fn torsion_precondition_is_enforced() {
        let g = VAGroup::free_abelian(2);
        let sigma = CocycleSpec::rotation(rat(1, 3));
        assert!(matches!(
            central_extension(&g, &sigma, 2),
            Err(Error::ValueNotTorsionOfOrderN { .. })
        ));
    }
}
