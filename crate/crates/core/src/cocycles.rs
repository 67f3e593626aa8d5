//! Finitely specified 2-cocycles with circle values: evaluation, the cocycle
//! identity, the pairing matrix on the lattice, and the rationality /
//! type-I / torsion classification.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    rat_int, solve_diophantine, AlphaMat, AlphaRat, CircleValue, IntMatrix, Rational,
};
use crate::groups::{FinGroup, FiniteQuotient, GroupElement, VAGroup};

/// Circle-valued table over a finite group, `values[a·order + b]`.
#[derive(Clone)]
pub struct PointTable {
    order: usize,
    values: Vec<CircleValue>,
}

impl PointTable {
    pub fn new(order: usize, values: Vec<CircleValue>) -> Result<Self> {
        if values.len() != order * order {
            return Err(Error::DimensionMismatch("table size".into()));
        }
        Ok(PointTable { order, values })
    }

    pub fn zero(order: usize) -> Self {
        PointTable { order, values: vec![CircleValue::zero(); order * order] }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, a: usize, b: usize) -> &CircleValue {
        &self.values[a * self.order + b]
    }

    pub fn set(&mut self, a: usize, b: usize, v: CircleValue) {
        self.values[a * self.order + b] = v;
    }

    pub fn values(&self) -> &[CircleValue] {
        &self.values
    }

    fn is_normalized(&self, id: usize) -> bool {
        (0..self.order).all(|g| self.get(id, g).is_zero() && self.get(g, id).is_zero())
    }
}

/// Cocycle pulled back from a finite quotient G/mZ^r.
#[derive(Clone)]
pub struct InflationSpec {
    modulus: u64,
    quotient: FiniteQuotient,
    table: PointTable,
}

impl InflationSpec {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn quotient(&self) -> &FiniteQuotient {
        &self.quotient
    }

    pub fn table(&self) -> &PointTable {
        &self.table
    }
}

#[derive(Clone)]
pub enum CocycleSpec {
    /// value(g, h) = ⟨B·vec(g), vec(h)⟩ turns, using only lattice parts.
    Bilinear(AlphaMat),
    /// value depends only on the point-group parts.
    FiniteTable(PointTable),
    /// value factors through the finite quotient G/mZ^r.
    Inflation(InflationSpec),
    Sum(Vec<CocycleSpec>),
}

impl fmt::Debug for CocycleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleSpec::Bilinear(b) => write!(f, "Bilinear({}x{})", b.nrows(), b.ncols()),
            CocycleSpec::FiniteTable(t) => write!(f, "FiniteTable(|D|={})", t.order()),
            CocycleSpec::Inflation(i) => write!(f, "Inflation(m={})", i.modulus),
            CocycleSpec::Sum(parts) => write!(f, "Sum({:?})", parts),
        }
    }
}

impl CocycleSpec {
    pub fn zero(rank: usize) -> Self {
        CocycleSpec::Bilinear(AlphaMat::zero(rank, rank))
    }

    pub fn bilinear(g: &VAGroup, b: AlphaMat) -> Result<Self> {
        if b.nrows() != g.rank() || b.ncols() != g.rank() {
            return Err(Error::DimensionMismatch("bilinear matrix must be rank x rank".into()));
        }
        Ok(CocycleSpec::Bilinear(b))
    }

    /// The standard rotation cocycle on Z²: value = θ·x₂·y₁ turns.
    pub fn rotation(theta: Rational) -> Self {
        let mut b = AlphaMat::zero(2, 2);
        b.set(1, 0, AlphaRat::from_rat(theta));
        CocycleSpec::Bilinear(b)
    }

    pub fn finite_table(g: &VAGroup, table: PointTable) -> Result<Self> {
        if table.order() != g.point_group().order() {
            return Err(Error::DimensionMismatch("table order must match |D|".into()));
        }
        if !table.is_normalized(g.point_group().id()) {
            return Err(Error::GroupInvariant("point table is not normalized".into()));
        }
        Ok(CocycleSpec::FiniteTable(table))
    }

    pub fn inflation(g: &VAGroup, modulus: u64, table: PointTable) -> Result<Self> {
        let quotient = g.finite_quotient(modulus)?;
        if table.order() != quotient.order() {
            return Err(Error::DimensionMismatch("table order must match |G/mZ^r|".into()));
        }
        if !table.is_normalized(quotient.group.id()) {
            return Err(Error::GroupInvariant("inflation table is not normalized".into()));
        }
        Ok(CocycleSpec::Inflation(InflationSpec { modulus, quotient, table }))
    }

    pub fn sum(parts: Vec<CocycleSpec>) -> Self {
        CocycleSpec::Sum(parts)
    }

    pub fn eval(&self, g: &VAGroup, a: &GroupElement, b: &GroupElement) -> Result<CircleValue> {
        match self {
            CocycleSpec::Bilinear(m) => {
                let v = m.pair(&a.vec, &b.vec)?;
                Ok(CircleValue::from_alpha_rat(&v))
            }
            CocycleSpec::FiniteTable(t) => Ok(t.get(a.pt, b.pt).clone()),
            CocycleSpec::Inflation(spec) => {
                let ai = spec.quotient.index_of(a)?;
                let bi = spec.quotient.index_of(b)?;
                Ok(spec.table.get(ai, bi).clone())
            }
            CocycleSpec::Sum(parts) => {
                let mut acc = CircleValue::zero();
                for p in parts {
                    acc = acc.add(&p.eval(g, a, b)?);
                }
                Ok(acc)
            }
        }
    }

    /// All bilinear parts, inner sums flattened.
    pub fn bilinear_parts(&self) -> Vec<&AlphaMat> {
        match self {
            CocycleSpec::Bilinear(b) => vec![b],
            CocycleSpec::Sum(parts) => parts.iter().flat_map(|p| p.bilinear_parts()).collect(),
            _ => Vec::new(),
        }
    }

    pub fn finite_table_parts(&self) -> Vec<&PointTable> {
        match self {
            CocycleSpec::FiniteTable(t) => vec![t],
            CocycleSpec::Sum(parts) => parts.iter().flat_map(|p| p.finite_table_parts()).collect(),
            _ => Vec::new(),
        }
    }

    pub fn inflation_parts(&self) -> Vec<&InflationSpec> {
        match self {
            CocycleSpec::Inflation(i) => vec![i],
            CocycleSpec::Sum(parts) => parts.iter().flat_map(|p| p.inflation_parts()).collect(),
            _ => Vec::new(),
        }
    }

    /// Check that every evaluated value is a root of unity of order dividing n.
    pub fn values_torsion_divide(&self, n: u64) -> Result<()> {
        let n_big = BigInt::from(n);
        for b in self.bilinear_parts() {
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    let e = b.get(i, j);
                    if !e.alpha.is_zero() || !(&e.rat * &n_big).is_integer() {
                        return Err(Error::ValueNotTorsionOfOrderN {
                            at: format!("bilinear entry ({i},{j})"),
                            n,
                        });
                    }
                }
            }
        }
        let check_table = |t: &PointTable, what: &str| -> Result<()> {
            for a in 0..t.order() {
                for c in 0..t.order() {
                    let v = t.get(a, c);
                    if !v.scale_int(n as i64).is_zero() {
                        return Err(Error::ValueNotTorsionOfOrderN {
                            at: format!("{what} entry ({a},{c})"),
                            n,
                        });
                    }
                }
            }
            Ok(())
        };
        for t in self.finite_table_parts() {
            check_table(t, "finite table")?;
        }
        for i in self.inflation_parts() {
            check_table(&i.table, "inflation table")?;
        }
        Ok(())
    }
}

/// First triple violating the cocycle identity.
#[derive(Clone, Debug)]
pub struct CocycleViolation {
    pub g: GroupElement,
    pub h: GroupElement,
    pub k: GroupElement,
    pub residual: CircleValue,
}

/// ∂σ(g,h,k) = σ(g,h) − σ(g,hk) + σ(gh,k) − σ(h,k).
pub fn coboundary_residual(
    sigma: &CocycleSpec,
    g: &VAGroup,
    a: &GroupElement,
    b: &GroupElement,
    c: &GroupElement,
) -> Result<CircleValue> {
    let ab = g.multiply(a, b)?;
    let bc = g.multiply(b, c)?;
    let t1 = sigma.eval(g, a, b)?;
    let t2 = sigma.eval(g, a, &bc)?;
    let t3 = sigma.eval(g, &ab, c)?;
    let t4 = sigma.eval(g, b, c)?;
    Ok(t1.sub(&t2).add(&t3).sub(&t4))
}

/// Decide ∂σ = 0: bilinear parts by an exact invariance reduction, finite
/// parts exhaustively over their index sets.
pub fn check_cocycle_identity(
    sigma: &CocycleSpec,
    g: &VAGroup,
) -> Result<std::result::Result<(), CocycleViolation>> {
    match sigma {
        CocycleSpec::Bilinear(b) => {
            // bilinearity kills the identity on the lattice; what remains is
            // invariance of B under the point action, entrywise mod 1
            let r = g.rank();
            for d in 0..g.point_group().order() {
                let rho = g.action(d);
                for i in 0..r {
                    for j in 0..r {
                        // (B·ρ(d) − B)_{ij} and (ρ(d)ᵀ·B − B)_{ij}
                        let mut right = AlphaRat::zero();
                        let mut left = AlphaRat::zero();
                        for k in 0..r {
                            right += &b.get(i, k).scale_int(&rho[(k, j)]);
                            left += &b.get(k, j).scale_int(&rho[(k, i)]);
                        }
                        let right = right - b.get(i, j).clone();
                        let left = left - b.get(i, j).clone();
                        if !right.is_integral() {
                            // ∂σ((e_i,1),(0,d),(e_j,1)) ≠ 0 up to sign
                            let v = CocycleViolation {
                                g: g.basis_element(i),
                                h: g.point_element(d),
                                k: g.basis_element(j),
                                residual: CircleValue::from_alpha_rat(&right),
                            };
                            return Ok(Err(v));
                        }
                        if !left.is_integral() {
                            let v = CocycleViolation {
                                g: g.point_element(d),
                                h: g.basis_element(i),
                                k: g.basis_element(j),
                                residual: CircleValue::from_alpha_rat(&left),
                            };
                            return Ok(Err(v));
                        }
                    }
                }
            }
            Ok(Ok(()))
        }
        CocycleSpec::FiniteTable(t) => {
            let d = g.point_group();
            for a in 0..t.order() {
                for b2 in 0..t.order() {
                    for c in 0..t.order() {
                        let res = t
                            .get(a, b2)
                            .sub(t.get(a, d.mul(b2, c)))
                            .add(t.get(d.mul(a, b2), c))
                            .sub(t.get(b2, c));
                        if !res.is_zero() {
                            return Ok(Err(CocycleViolation {
                                g: g.point_element(a),
                                h: g.point_element(b2),
                                k: g.point_element(c),
                                residual: res,
                            }));
                        }
                    }
                }
            }
            Ok(Ok(()))
        }
        CocycleSpec::Inflation(spec) => {
            let q = &spec.quotient;
            let n = q.order();
            if n.pow(3) > 30_000_000 {
                return Err(Error::ResourceExceeded(format!(
                    "exhaustive identity check over {n}^3 triples"
                )));
            }
            for a in 0..n {
                for b2 in 0..n {
                    for c in 0..n {
                        let t = &spec.table;
                        let res = t
                            .get(a, b2)
                            .sub(t.get(a, q.group.mul(b2, c)))
                            .add(t.get(q.group.mul(a, b2), c))
                            .sub(t.get(b2, c));
                        if !res.is_zero() {
                            return Ok(Err(CocycleViolation {
                                g: q.rep(a).clone(),
                                h: q.rep(b2).clone(),
                                k: q.rep(c).clone(),
                                residual: res,
                            }));
                        }
                    }
                }
            }
            Ok(Ok(()))
        }
        CocycleSpec::Sum(parts) => {
            for p in parts {
                if let Err(v) = check_cocycle_identity(p, g)? {
                    return Ok(Err(v));
                }
            }
            Ok(Ok(()))
        }
    }
}

/// Pairing matrix on the lattice: entry (i,j) = σ(e_i,e_j) − σ(e_j,e_i).
pub fn kronecker_matrix(sigma: &CocycleSpec, g: &VAGroup) -> Result<Vec<Vec<CircleValue>>> {
    let r = g.rank();
    let basis: Vec<GroupElement> = (0..r).map(|i| g.basis_element(i)).collect();
    let mut out = vec![vec![CircleValue::zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            let fwd = sigma.eval(g, &basis[i], &basis[j])?;
            let bwd = sigma.eval(g, &basis[j], &basis[i])?;
            out[i][j] = fwd.sub(&bwd);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderBound {
    Finite(u64),
    Infinite,
}

impl OrderBound {
    pub fn finite(&self) -> Option<u64> {
        match self {
            OrderBound::Finite(n) => Some(*n),
            OrderBound::Infinite => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub is_rational: bool,
    pub kronecker: Vec<Vec<CircleValue>>,
    pub class_torsion_order: OrderBound,
    pub value_order_n: OrderBound,
    pub type_one_witness_m: Option<u64>,
    pub witness_index: Option<BigInt>,
}

/// Full classification of a cocycle class on G.
pub fn classify(sigma: &CocycleSpec, g: &VAGroup) -> Result<ClassificationReport> {
    let kron = kronecker_matrix(sigma, g)?;
    let finite_values: Vec<&CircleValue> = sigma
        .finite_table_parts()
        .iter()
        .flat_map(|t| t.values().iter())
        .chain(sigma.inflation_parts().iter().flat_map(|i| i.table.values().iter()))
        .collect();

    let is_rational = kron
        .iter()
        .flatten()
        .all(CircleValue::is_root_of_unity)
        && finite_values.iter().all(|v| v.is_root_of_unity());

    // lcm of the orders of the values of the stored representative,
    // scanned over basis pairs and finite tables
    let value_order_n = {
        let mut n: u64 = 1;
        let mut infinite = false;
        let r = g.rank();
        'scan: for i in 0..r {
            for j in 0..r {
                let v = sigma.eval(g, &g.basis_element(i), &g.basis_element(j))?;
                match v.torsion_order() {
                    Ok(o) => n = crate::exact::lcm_u64(n, o)?,
                    Err(Error::NotTorsion) => {
                        infinite = true;
                        break 'scan;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        if !infinite {
            for v in &finite_values {
                match v.torsion_order() {
                    Ok(o) => n = crate::exact::lcm_u64(n, o)?,
                    Err(Error::NotTorsion) => {
                        infinite = true;
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        if infinite {
            OrderBound::Infinite
        } else {
            OrderBound::Finite(n)
        }
    };

    let class_torsion_order = if !is_rational {
        OrderBound::Infinite
    } else {
        let mut order: u64 = 1;
        for row in &kron {
            for v in row {
                order = crate::exact::lcm_u64(order, v.torsion_order()?)?;
            }
        }
        for t in sigma.finite_table_parts() {
            order = crate::exact::lcm_u64(order, table_class_order(t, g.point_group())?)?;
        }
        for i in sigma.inflation_parts() {
            order = crate::exact::lcm_u64(order, table_class_order(&i.table, &i.quotient.group)?)?;
        }
        OrderBound::Finite(order)
    };

    let (type_one_witness_m, witness_index) = if !is_rational {
        (None, None)
    } else {
        let m = witness_scale(sigma, g)?;
        let idx = BigInt::from(m).pow(g.rank() as u32);
        (Some(m), Some(idx))
    };

    Ok(ClassificationReport {
        is_rational,
        kronecker: kron,
        class_torsion_order,
        value_order_n,
        type_one_witness_m,
        witness_index,
    })
}

/// Least m ≥ 1 such that the representative restricted to mZ^r is the zero
/// cocycle pointwise (bilinear parts become integral, inflation parts vanish
/// on the image of the sublattice).
fn witness_scale(sigma: &CocycleSpec, g: &VAGroup) -> Result<u64> {
    let mut bound: u64 = 1;
    for b in sigma.bilinear_parts() {
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                let e = b.get(i, j);
                if !e.alpha.is_zero() {
                    return Err(Error::Internal(
                        "witness search on a representative with irrational values".into(),
                    ));
                }
                let den = u64::try_from(e.rat.denom())
                    .map_err(|_| Error::ResourceExceeded("denominator exceeds u64".into()))?;
                bound = crate::exact::lcm_u64(bound, den)?;
            }
        }
    }
    for i in sigma.inflation_parts() {
        bound = crate::exact::lcm_u64(bound, i.modulus)?;
    }
    for m in 1..=bound {
        if restricted_rep_is_zero(sigma, g, m)? {
            return Ok(m);
        }
    }
    Ok(bound)
}

fn restricted_rep_is_zero(sigma: &CocycleSpec, g: &VAGroup, m: u64) -> Result<bool> {
    let m_big = BigInt::from(m);
    let m_sq = &m_big * &m_big;
    for b in sigma.bilinear_parts() {
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                if !b.get(i, j).scale_int(&m_sq).is_integral() {
                    return Ok(false);
                }
            }
        }
    }
    for spec in sigma.inflation_parts() {
        let q = spec.modulus as i64;
        let r = g.rank();
        // lattice classes of mZ^r inside G/m_q Z^r
        let mut vals = Vec::new();
        let mut counter = vec![0i64; r];
        loop {
            let v: Vec<BigInt> = counter.iter().map(|&c| BigInt::from(c * m as i64)).collect();
            vals.push(GroupElement { vec: v, pt: g.point_group().id() });
            let mut pos = 0;
            loop {
                if pos == r {
                    break;
                }
                counter[pos] += 1;
                if counter[pos] < q {
                    break;
                }
                counter[pos] = 0;
                pos += 1;
            }
            if pos == r {
                break;
            }
        }
        for a in &vals {
            for b in &vals {
                let ai = spec.quotient.index_of(a)?;
                let bi = spec.quotient.index_of(b)?;
                if !spec.table.get(ai, bi).is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Order of the class of `t` in the second cohomology of the finite group:
/// the least divisor k of |Q| such that k·t is a coboundary.
fn table_class_order(t: &PointTable, q: &FinGroup) -> Result<u64> {
    let n = q.order();
    if n > 24 {
        return Err(Error::ResourceExceeded(
            "finite-part class order is only computed for |Q| <= 24".into(),
        ));
    }
    let order_u = n as u64;
    let mut divisors: Vec<u64> = (1..=order_u).filter(|k| order_u % k == 0).collect();
    divisors.sort_unstable();
    for k in divisors {
        if scaled_table_is_coboundary(t, q, k)? {
            return Ok(k);
        }
    }
    Err(Error::Internal("class order must divide the group order".into()))
}

fn scaled_table_is_coboundary(t: &PointTable, q: &FinGroup, k: u64) -> Result<bool> {
    let n = q.order();
    // common denominator of the scaled values
    let mut den = BigInt::one();
    for v in t.values() {
        if !v.is_root_of_unity() {
            return Ok(false);
        }
        let scaled = v.scale_int(k as i64);
        let d = scaled.turns().denom().clone();
        let g = den.gcd(&d);
        den = den / g * d;
    }
    let modulus = den * BigInt::from(n); // γ values live in (1/(den·|Q|))Z/Z
    // unknowns: γ(g) for g ≠ id (mod `modulus`), plus one slack per equation
    let free: Vec<usize> = (0..n).filter(|&g| g != q.id()).collect();
    let col_of = |g: usize| free.iter().position(|&x| x == g);
    let rows = n * n;
    let cols = free.len() + rows;
    let mut m = IntMatrix::zero(rows, cols);
    let mut b = Vec::with_capacity(rows);
    for a in 0..n {
        for c in 0..n {
            let row = a * n + c;
            // γ(a) − γ(ac) + γ(c) ≡ modulus·(k·t)(a,c)
            if let Some(j) = col_of(a) {
                m[(row, j)] += BigInt::one();
            }
            if let Some(j) = col_of(q.mul(a, c)) {
                m[(row, j)] -= BigInt::one();
            }
            if let Some(j) = col_of(c) {
                m[(row, j)] += BigInt::one();
            }
            m[(row, free.len() + row)] = modulus.clone();
            let target = t.get(a, c).scale_int(k as i64);
            let scaled = target.turns() * Rational::from_integer(modulus.clone());
            debug_assert!(scaled.is_integer());
            b.push(scaled.to_integer());
        }
    }
    Ok(solve_diophantine(&m, &b)?.is_some())
}

/// Restriction to the sublattice mZ^r, re-coordinatized over Z^r.
pub fn restrict(sigma: &CocycleSpec, g: &VAGroup, m: u64) -> Result<CocycleSpec> {
    if m == 0 {
        return Err(Error::DimensionMismatch("restriction scale must be positive".into()));
    }
    let r = g.rank();
    let target = VAGroup::free_abelian(r);
    let m_big = BigInt::from(m);
    let m_sq = &m_big * &m_big;
    match sigma {
        CocycleSpec::Bilinear(b) => Ok(CocycleSpec::Bilinear(b.scale_int(&m_sq))),
        CocycleSpec::FiniteTable(_) => Ok(CocycleSpec::zero(r)),
        CocycleSpec::Inflation(spec) => {
            let g_modulus = spec.modulus;
            let new_modulus = g_modulus / m.gcd(&g_modulus);
            let new_q = target.finite_quotient(new_modulus)?;
            let id_pt = g.point_group().id();
            let mut table = PointTable::zero(new_q.order());
            for a in 0..new_q.order() {
                for b in 0..new_q.order() {
                    let va: Vec<BigInt> = new_q.rep(a).vec.iter().map(|x| x * &m_big).collect();
                    let vb: Vec<BigInt> = new_q.rep(b).vec.iter().map(|x| x * &m_big).collect();
                    let ai = spec.quotient.index_of(&GroupElement { vec: va, pt: id_pt })?;
                    let bi = spec.quotient.index_of(&GroupElement { vec: vb, pt: id_pt })?;
                    table.set(a, b, spec.table.get(ai, bi).clone());
                }
            }
            CocycleSpec::inflation(&target, new_modulus, table)
        }
        CocycleSpec::Sum(parts) => {
            let mapped: Result<Vec<CocycleSpec>> =
                parts.iter().map(|p| restrict(p, g, m)).collect();
            Ok(CocycleSpec::Sum(mapped?))
        }
    }
}

/// Pullback along the identity.
pub fn pullback_identity(sigma: &CocycleSpec) -> CocycleSpec {
    sigma.clone()
}

/// Pullback along the inclusion mZ^r → Z^r; coincides with `restrict`.
pub fn pullback_lattice_inclusion(
    sigma: &CocycleSpec,
    g: &VAGroup,
    m: u64,
) -> Result<CocycleSpec> {
    restrict(sigma, g, m)
}

/// Pullback of a point-group table along the projection G → D.
pub fn pullback_point_projection(table: &PointTable, g: &VAGroup) -> Result<CocycleSpec> {
    CocycleSpec::finite_table(g, table.clone())
}

/// Scaled basis pair helper for tests: σ evaluated at (m·e_i, m·e_j).
pub fn eval_on_scaled_basis(
    sigma: &CocycleSpec,
    g: &VAGroup,
    m: u64,
    i: usize,
    j: usize,
) -> Result<CircleValue> {
    let mut a = vec![BigInt::zero(); g.rank()];
    a[i] = BigInt::from(m);
    let mut b = vec![BigInt::zero(); g.rank()];
    b[j] = BigInt::from(m);
    sigma.eval(g, &GroupElement::lattice(a), &GroupElement::lattice(b))
}
