//! Sublattices of Z^r with Hermite normal form as the canonical
//! representative, so lattice equality is basis equality.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::matrix::{hermite_normal_form, integer_kernel, AlphaMat, IntMatrix};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Lattice {
    ambient_rank: usize,
    basis: IntMatrix, // HNF rows, no zero rows
}

/// Index of a sublattice in an overlattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum LatticeIndex {
    Finite(BigInt),
    Infinite,
}

impl Lattice {
    pub fn from_rows(ambient_rank: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        if rows.iter().any(|r| r.len() != ambient_rank) {
            return Err(Error::DimensionMismatch("lattice generator length".into()));
        }
        let m = if rows.is_empty() {
            IntMatrix::zero(0, ambient_rank)
        } else {
            IntMatrix::from_rows(rows)?
        };
        Ok(Lattice { ambient_rank, basis: hermite_normal_form(&m) })
    }

    pub fn full(ambient_rank: usize) -> Self {
        Lattice { ambient_rank, basis: IntMatrix::identity(ambient_rank) }
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Lattice { ambient_rank, basis: IntMatrix::zero(0, ambient_rank) }
    }

    /// The scaled lattice mZ^r.
    pub fn scaled(ambient_rank: usize, m: &BigInt) -> Self {
        let rows = (0..ambient_rank)
            .map(|i| {
                (0..ambient_rank)
                    .map(|j| if i == j { m.clone() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        Lattice::from_rows(ambient_rank, rows).expect("scaled basis is rectangular")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn basis_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rank()).map(|i| self.basis.row(i).to_vec()).collect()
    }

    /// Coordinates of `v` in the HNF basis, when `v` is a member.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        if v.len() != self.ambient_rank {
            return None;
        }
        let mut x = v.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for i in 0..self.rank() {
            let pivot_col = (0..self.ambient_rank).find(|&j| !self.basis[(i, j)].is_zero())?;
            let (q, r) = x[pivot_col].div_rem(&self.basis[(i, pivot_col)]);
            if !r.is_zero() {
                return None;
            }
            for j in 0..self.ambient_rank {
                let t = &q * &self.basis[(i, j)];
                x[j] -= t;
            }
            coords.push(q);
        }
        if x.iter().all(BigInt::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_lattice(&self, inner: &Lattice) -> bool {
        inner.ambient_rank == self.ambient_rank
            && (0..inner.rank()).all(|i| self.contains(inner.basis.row(i)))
    }

    /// For a full-rank lattice, the canonical residue of `v` modulo the
    /// lattice: every coordinate lands in [0, pivot_i).
    pub fn reduce_mod(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if self.rank() != self.ambient_rank {
            return Err(Error::DimensionMismatch("residues need a full-rank lattice".into()));
        }
        let mut x = v.to_vec();
        for i in 0..self.rank() {
            let q = x[i].div_floor(&self.basis[(i, i)]);
            if q.is_zero() {
                continue;
            }
            for j in 0..self.ambient_rank {
                let t = &q * &self.basis[(i, j)];
                x[j] -= t;
            }
        }
        Ok(x)
    }

    /// Number of residue classes of a full-rank lattice.
    pub fn covolume(&self) -> Result<BigInt> {
        if self.rank() != self.ambient_rank {
            return Err(Error::DimensionMismatch("covolume of a rank-deficient lattice".into()));
        }
        Ok((0..self.rank()).map(|i| self.basis[(i, i)].clone()).product())
    }

    /// Intersection with another lattice of the same ambient rank.
    pub fn intersect(&self, other: &Lattice) -> Result<Lattice> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch("lattice intersection".into()));
        }
        // x in both spans: x = a·B1 = b·B2; kernel of [B1ᵀ | -B2ᵀ] gives (a, b)
        let k1 = self.rank();
        let k2 = other.rank();
        let mut m = IntMatrix::zero(self.ambient_rank, k1 + k2);
        for j in 0..k1 {
            for i in 0..self.ambient_rank {
                m[(i, j)] = self.basis[(j, i)].clone();
            }
        }
        for j in 0..k2 {
            for i in 0..self.ambient_rank {
                m[(i, k1 + j)] = -other.basis[(j, i)].clone();
            }
        }
        let ker = integer_kernel(&m);
        let rows = (0..ker.nrows())
            .map(|i| {
                let a = &ker.row(i)[..k1];
                (0..self.ambient_rank)
                    .map(|c| (0..k1).map(|j| &a[j] * &self.basis[(j, c)]).sum())
                    .collect()
            })
            .collect();
        Lattice::from_rows(self.ambient_rank, rows)
    }
}

/// Index |outer/inner| for inner ⊆ outer; infinite on rank drop.
pub fn lattice_index(outer: &Lattice, inner: &Lattice) -> Result<LatticeIndex> {
    if !outer.contains_lattice(inner) {
        return Err(Error::NotASublattice);
    }
    if inner.rank() < outer.rank() {
        return Ok(LatticeIndex::Infinite);
    }
    // express the inner basis in outer coordinates; the index is |det|
    let coords: Vec<Vec<BigInt>> = (0..inner.rank())
        .map(|i| outer.coordinates(inner.basis().row(i)).expect("containment checked"))
        .collect();
    let t = IntMatrix::from_rows(coords)?;
    Ok(LatticeIndex::Finite(t.det()?.abs()))
}

/// The lattice {x ∈ Z^r : for every column j, Σ_i x_i·M[i][j] has zero
/// α-coefficient and integral rational part}.
pub fn lattice_kernel_mod_z(m: &AlphaMat) -> Result<Lattice> {
    let r = m.nrows();
    let c = m.ncols();
    if c == 0 {
        return Ok(Lattice::full(r));
    }

    // α-part: exact vanishing of a rational linear system
    let mut alpha_cleared = IntMatrix::zero(c, r);
    for j in 0..c {
        let denoms: BigInt = (0..r).map(|i| m.get(i, j).alpha.denom().clone()).fold(
            BigInt::one(),
            |acc, d| {
                let g = acc.gcd(&d);
                acc / g * d
            },
        );
        for i in 0..r {
            let a = &m.get(i, j).alpha;
            alpha_cleared[(j, i)] = a.numer() * (&denoms / a.denom());
        }
    }
    let alpha_kernel = integer_kernel(&alpha_cleared); // rows: basis k_1..k_t of {x : αᵀx = 0}
    let t = alpha_kernel.nrows();
    if t == 0 {
        return Ok(Lattice::zero(r));
    }

    // rational part: congruences modulo the common denominator q
    let q: BigInt = (0..r)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).rat.denom().clone())
        .fold(BigInt::one(), |acc, d| {
            let g = acc.gcd(&d);
            acc / g * d
        });
    let mut b_scaled = IntMatrix::zero(r, c);
    for i in 0..r {
        for j in 0..c {
            let e = &m.get(i, j).rat;
            b_scaled[(i, j)] = e.numer() * (&q / e.denom());
        }
    }
    // substitute x = zᵀ·K and solve z·(K·B) ≡ 0 (mod q)
    let cmat = alpha_kernel.mul(&b_scaled)?; // t×c
    let mut sys = IntMatrix::zero(c, t + c);
    for j in 0..c {
        for i in 0..t {
            sys[(j, i)] = cmat[(i, j)].clone();
        }
        sys[(j, t + j)] = q.clone();
    }
    let ker = integer_kernel(&sys);
    let rows = (0..ker.nrows())
        .map(|i| {
            let z = &ker.row(i)[..t];
            (0..r)
                .map(|col| (0..t).map(|k| &z[k] * &alpha_kernel[(k, col)]).sum())
                .collect()
        })
        .collect();
    Lattice::from_rows(r, rows)
}

/// Brute-force reference for `lattice_kernel_mod_z` over a coordinate box.
pub fn kernel_condition_holds(m: &AlphaMat, x: &[BigInt]) -> bool {
    (0..m.ncols()).all(|j| {
        let mut acc = crate::exact::scalar::AlphaRat::zero();
        for i in 0..m.nrows() {
            acc += &m.get(i, j).scale_int(&x[i]);
        }
        acc.is_integral()
    })
}

/// Exact rational vector seen as a one-column pairing matrix.
pub fn rational_col(coords: &[BigRational]) -> AlphaMat {
    let mut m = AlphaMat::zero(coords.len(), 1);
    for (i, c) in coords.iter().enumerate() {
        m.set(i, 0, crate::exact::scalar::AlphaRat::from_rat(c.clone()));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{rat, AlphaRat};

    fn alpha_mat(entries: &[&[(i64, i64, i64, i64)]]) -> AlphaMat {
        let rows = entries.len();
        let cols = entries[0].len();
        let data = entries
            .iter()
            .flat_map(|row| {
                row.iter().map(|&(rn, rd, an, ad)| AlphaRat::new(rat(rn, rd), rat(an, ad)))
            })
            .collect();
        AlphaMat::from_entries(rows, cols, data).unwrap()
    }

    #[test]
    fn kernel_of_half_rotation_pairing() {
        let m = alpha_mat(&[
            &[(0, 1, 0, 1), (-1, 2, 0, 1)],
            &[(1, 2, 0, 1), (0, 1, 0, 1)],
        ]);
        let k = lattice_kernel_mod_z(&m).unwrap();
        assert_eq!(k, Lattice::from_rows(2, vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(2)],
        ]).unwrap());
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        let m = AlphaMat::zero(3, 3);
        assert_eq!(lattice_kernel_mod_z(&m).unwrap(), Lattice::full(3));
    }

    #[test]
    fn kernel_of_irrational_rotation_is_zero() {
        let m = alpha_mat(&[
            &[(0, 1, 0, 1), (0, 1, -1, 1)],
            &[(0, 1, 1, 1), (0, 1, 0, 1)],
        ]);
        assert_eq!(lattice_kernel_mod_z(&m).unwrap(), Lattice::zero(2));
    }

    #[test]
    fn kernel_brute_force_cross_check() {
        let cases = vec![
            alpha_mat(&[
                &[(0, 1, 0, 1), (-1, 2, 0, 1)],
                &[(1, 2, 0, 1), (0, 1, 0, 1)],
            ]),
            alpha_mat(&[
                &[(0, 1, 0, 1), (-1, 3, 0, 1), (0, 1, 0, 1)],
                &[(1, 3, 0, 1), (0, 1, 0, 1), (1, 2, 0, 1)],
                &[(0, 1, 0, 1), (-1, 2, 0, 1), (0, 1, 0, 1)],
            ]),
            alpha_mat(&[
                &[(0, 1, 0, 1), (0, 1, -1, 2)],
                &[(0, 1, 1, 2), (1, 3, 0, 1)],
            ]),
        ];
        for m in cases {
            let r = m.nrows();
            let k = lattice_kernel_mod_z(&m).unwrap();
            for i in 0..k.rank() {
                assert!(kernel_condition_holds(&m, k.basis().row(i)));
            }
            // every box point satisfying the condition must be a member
            let mut x = vec![-3i64; r];
            loop {
                let v: Vec<BigInt> = x.iter().map(|&a| BigInt::from(a)).collect();
                if kernel_condition_holds(&m, &v) {
                    assert!(k.contains(&v), "missing member {:?}", v);
                } else {
                    assert!(!k.contains(&v), "spurious member {:?}", v);
                }
                let mut pos = 0;
                loop {
                    if pos == r {
                        break;
                    }
                    x[pos] += 1;
                    if x[pos] <= 3 {
                        break;
                    }
                    x[pos] = -3;
                    pos += 1;
                }
                if pos == r {
                    break;
                }
            }
        }
    }

    #[test]
    fn index_examples() {
        let z2 = Lattice::full(2);
        let three_z2 = Lattice::scaled(2, &BigInt::from(3));
        assert_eq!(lattice_index(&z2, &three_z2).unwrap(), LatticeIndex::Finite(BigInt::from(9)));
        assert_eq!(lattice_index(&z2, &z2).unwrap(), LatticeIndex::Finite(BigInt::one()));

        let line = Lattice::from_rows(2, vec![vec![BigInt::from(2), BigInt::zero()]]).unwrap();
        assert_eq!(lattice_index(&z2, &line).unwrap(), LatticeIndex::Infinite);
        assert!(matches!(lattice_index(&line, &z2), Err(Error::NotASublattice)));
    }

    #[test]
    fn residues_of_full_rank_lattice() {
        let l = Lattice::scaled(2, &BigInt::from(3));
        assert_eq!(l.covolume().unwrap(), BigInt::from(9));
        let v = vec![BigInt::from(7), BigInt::from(-4)];
        let r = l.reduce_mod(&v).unwrap();
        assert_eq!(r, vec![BigInt::from(1), BigInt::from(2)]);
    }
}
