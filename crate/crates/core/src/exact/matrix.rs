//! Arbitrary-precision integer matrices, Smith and Hermite normal forms.
//!
//! Naive pivoting with smallest-pivot selection; intermediate blow-up is
//! absorbed by `BigInt`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::scalar::AlphaRat;

/// Dense row-major matrix over Z.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        IntMatrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
        .expect("rectangular literal")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += prod;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix * vector".into()));
        }
        Ok((0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.data.clone();
        let idx = |i: usize, j: usize| i * n + j;
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[idx(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&i| !a[idx(i, k)].is_zero());
                match swap {
                    Some(i) => {
                        for j in 0..n {
                            a.swap(idx(k, j), idx(i, j));
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[idx(i, j)] * &a[idx(k, k)] - &a[idx(i, k)] * &a[idx(k, j)];
                    a[idx(i, j)] = &num / &prev;
                }
                a[idx(i, k)] = BigInt::zero();
            }
            prev = a[idx(k, k)].clone();
        }
        Ok(sign * a[idx(n - 1, n - 1)].clone())
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.det().map(|d| d.abs().is_one()).unwrap_or(false)
    }

    /// Inverse of a unimodular matrix, computed over Z via the adjugate.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        let d = self.det()?;
        if !d.abs().is_one() {
            return Err(Error::GroupInvariant("matrix is not unimodular".into()));
        }
        let n = self.rows;
        let mut inv = IntMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                let minor = self.minor(j, i)?;
                let mut c = minor.det()?;
                if (i + j) % 2 == 1 {
                    c = -c;
                }
                inv[(i, j)] = &c * &d; // divide by det = multiply, since det = ±1
            }
        }
        Ok(inv)
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Result<IntMatrix> {
        let rows = (0..self.rows)
            .filter(|&i| i != skip_row)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| j != skip_col)
                    .map(|j| self[(i, j)].clone())
                    .collect()
            })
            .collect();
        IntMatrix::from_rows(rows)
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form: `u * m * v = s` with `u`, `v` unimodular and `s`
/// diagonal with each entry dividing the next.
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    pub fn rank(&self) -> usize {
        (0..self.s.nrows().min(self.s.ncols()))
            .take_while(|&i| !self.s[(i, i)].is_zero())
            .count()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.nrows());
    let mut v = IntMatrix::identity(m.ncols());
    let n = m.nrows().min(m.ncols());

    for k in 0..n {
        if !move_pivot(&mut s, &mut u, &mut v, k) {
            break;
        }
        loop {
            clear_cross(&mut s, &mut u, &mut v, k);
            // Pivot must divide the rest of the block for the chain d_i | d_{i+1}.
            if let Some(i) = non_divisible_row(&s, k) {
                add_row(&mut s, &mut u, k, i);
                continue;
            }
            break;
        }
        if s[(k, k)].is_negative() {
            negate_row(&mut s, &mut u, k);
        }
    }
    Snf { s, u, v }
}

fn move_pivot(s: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, k: usize) -> bool {
    let mut best: Option<(usize, usize)> = None;
    for i in k..s.nrows() {
        for j in k..s.ncols() {
            if s[(i, j)].is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some(b) => s[(i, j)].abs() < s[b].abs(),
            };
            if better {
                best = Some((i, j));
            }
        }
    }
    let Some((pi, pj)) = best else { return false };
    if pi != k {
        swap_rows(s, u, k, pi);
    }
    if pj != k {
        swap_cols(s, v, k, pj);
    }
    true
}

fn clear_cross(s: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, k: usize) {
    loop {
        let mut done = true;
        for i in k + 1..s.nrows() {
            if s[(i, k)].is_zero() {
                continue;
            }
            let q = div_round(&s[(i, k)], &s[(k, k)]);
            row_sub(s, u, i, k, &q);
            if !s[(i, k)].is_zero() {
                swap_rows(s, u, k, i);
                done = false;
            }
        }
        for j in k + 1..s.ncols() {
            if s[(k, j)].is_zero() {
                continue;
            }
            let q = div_round(&s[(k, j)], &s[(k, k)]);
            col_sub(s, v, j, k, &q);
            if !s[(k, j)].is_zero() {
                swap_cols(s, v, k, j);
                done = false;
            }
        }
        if done {
            break;
        }
    }
}

fn non_divisible_row(s: &IntMatrix, k: usize) -> Option<usize> {
    let p = &s[(k, k)];
    for i in k + 1..s.nrows() {
        for j in k + 1..s.ncols() {
            if !s[(i, j)].is_multiple_of(p) {
                return Some(i);
            }
        }
    }
    None
}

/// Rounded division keeps remainders in [-|b|/2, |b|/2], bounding growth.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) ^ (b.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

fn swap_rows(s: &mut IntMatrix, u: &mut IntMatrix, a: usize, b: usize) {
    for j in 0..s.ncols() {
        let tmp = s[(a, j)].clone();
        s[(a, j)] = s[(b, j)].clone();
        s[(b, j)] = tmp;
    }
    for j in 0..u.ncols() {
        let tmp = u[(a, j)].clone();
        u[(a, j)] = u[(b, j)].clone();
        u[(b, j)] = tmp;
    }
}

fn swap_cols(s: &mut IntMatrix, v: &mut IntMatrix, a: usize, b: usize) {
    for i in 0..s.nrows() {
        let tmp = s[(i, a)].clone();
        s[(i, a)] = s[(i, b)].clone();
        s[(i, b)] = tmp;
    }
    for i in 0..v.nrows() {
        let tmp = v[(i, a)].clone();
        v[(i, a)] = v[(i, b)].clone();
        v[(i, b)] = tmp;
    }
}

fn row_sub(s: &mut IntMatrix, u: &mut IntMatrix, i: usize, k: usize, q: &BigInt) {
    for j in 0..s.ncols() {
        let t = q * &s[(k, j)];
        s[(i, j)] -= t;
    }
    for j in 0..u.ncols() {
        let t = q * &u[(k, j)];
        u[(i, j)] -= t;
    }
}

fn col_sub(s: &mut IntMatrix, v: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for i in 0..s.nrows() {
        let t = q * &s[(i, k)];
        s[(i, j)] -= t;
    }
    for i in 0..v.nrows() {
        let t = q * &v[(i, k)];
        v[(i, j)] -= t;
    }
}

fn add_row(s: &mut IntMatrix, u: &mut IntMatrix, k: usize, i: usize) {
    for j in 0..s.ncols() {
        let t = s[(i, j)].clone();
        s[(k, j)] += t;
    }
    for j in 0..u.ncols() {
        let t = u[(i, j)].clone();
        u[(k, j)] += t;
    }
}

fn negate_row(s: &mut IntMatrix, u: &mut IntMatrix, k: usize) {
    for j in 0..s.ncols() {
        let t = -s[(k, j)].clone();
        s[(k, j)] = t;
    }
    for j in 0..u.ncols() {
        let t = -u[(k, j)].clone();
        u[(k, j)] = t;
    }
}

/// Row-style Hermite normal form: echelon rows with positive pivots,
/// entries above each pivot reduced into [0, pivot), zero rows dropped.
/// The result spans the same row lattice as the input.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = (0..m.nrows()).map(|i| m.row(i).to_vec()).collect();
    let cols = m.ncols();
    let mut pivot_row = 0;

    for c in 0..cols {
        // gcd-reduce all rows below pivot_row in column c down to one row
        loop {
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(pivot_row) {
                if row[c].is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some(b) => row[c].abs() < rows[b][c].abs(),
                };
                if better {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(pivot_row, b);
            let mut more = false;
            for i in pivot_row + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = div_round(&rows[i][c], &rows[pivot_row][c]);
                for j in 0..cols {
                    let t = &q * &rows[pivot_row][j];
                    rows[i][j] -= t;
                }
                if !rows[i][c].is_zero() {
                    more = true;
                }
            }
            if !more {
                break;
            }
        }
        if rows.get(pivot_row).map_or(false, |r| !r[c].is_zero()) {
            if rows[pivot_row][c].is_negative() {
                for j in 0..cols {
                    let t = -rows[pivot_row][j].clone();
                    rows[pivot_row][j] = t;
                }
            }
            // reduce entries above the pivot into [0, pivot)
            for i in 0..pivot_row {
                let q = rows[i][c].div_floor(&rows[pivot_row][c]);
                if q.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let t = &q * &rows[pivot_row][j];
                    rows[i][j] -= t;
                }
            }
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    IntMatrix::from_rows(rows).expect("hnf rows are rectangular")
}

/// Basis (as rows) of the right kernel {x : m·x = 0} over Z.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let rank = snf.rank();
    let n = m.ncols();
    let rows = (rank..n)
        .map(|j| (0..n).map(|i| snf.v[(i, j)].clone()).collect())
        .collect();
    IntMatrix::from_rows(rows).expect("kernel rows are rectangular")
}

/// One solution x of m·x = b over Z, or None when the system is unsolvable.
pub fn solve_diophantine(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.nrows() {
        return Err(Error::DimensionMismatch("right-hand side length".into()));
    }
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b)?;
    let rank = snf.rank();
    let n = m.ncols();
    let mut y = vec![BigInt::zero(); n];
    for i in 0..m.nrows() {
        if i < rank {
            let d = &snf.s[(i, i)];
            if !ub[i].is_multiple_of(d) {
                return Ok(None);
            }
            y[i] = &ub[i] / d;
        } else if !ub[i].is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(snf.v.mul_vec(&y)?))
}

/// Dense matrix over Q + Q·α; used for pairing matrices Θ and bilinear parts.
#[derive(Clone, PartialEq, Eq)]
pub struct AlphaMat {
    rows: usize,
    cols: usize,
    data: Vec<AlphaRat>,
}

impl AlphaMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        AlphaMat { rows, cols, data: vec![AlphaRat::zero(); rows * cols] }
    }

    pub fn from_entries(rows: usize, cols: usize, data: Vec<AlphaRat>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch("alpha matrix entries".into()));
        }
        Ok(AlphaMat { rows, cols, data })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &AlphaRat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: AlphaRat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn scale_int(&self, k: &BigInt) -> AlphaMat {
        AlphaMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e.scale_int(k)).collect(),
        }
    }

    /// ⟨M x, y⟩ for integer vectors x, y.
    pub fn pair(&self, x: &[BigInt], y: &[BigInt]) -> Result<AlphaRat> {
        if x.len() != self.cols || y.len() != self.rows {
            return Err(Error::DimensionMismatch("bilinear pairing".into()));
        }
        let mut acc = AlphaRat::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if x[j].is_zero() || y[i].is_zero() {
                    continue;
                }
                let term = self.get(i, j).scale_int(&(&x[j] * &y[i]));
                acc += &term;
            }
        }
        Ok(acc)
    }
}

impl fmt::Debug for AlphaMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                write!(f, "{:?}, ", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.s, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        let prod = snf.u.mul(&m).unwrap().mul(&snf.v).unwrap();
        assert_eq!(prod, snf.s);
        assert!(snf.u.is_unimodular());
        assert!(snf.v.is_unimodular());
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let snf = smith_normal_form(&id);
        assert_eq!(snf.s, id);
        assert_eq!(snf.u, IntMatrix::identity(3));
        assert_eq!(snf.v, IntMatrix::identity(3));

        let z = IntMatrix::from_i64(&[&[0]]);
        assert_eq!(smith_normal_form(&z).s, z);
    }

    #[test]
    fn hnf_examples() {
        let m = IntMatrix::from_i64(&[&[2, 1], &[0, 1]]);
        assert_eq!(hermite_normal_form(&m), IntMatrix::from_i64(&[&[2, 0], &[0, 1]]));

        let id = IntMatrix::identity(4);
        assert_eq!(hermite_normal_form(&id), id);

        let g = IntMatrix::from_i64(&[&[4], &[6]]);
        assert_eq!(hermite_normal_form(&g), IntMatrix::from_i64(&[&[2]]));
    }

    fn in_row_span(h: &IntMatrix, v: &[BigInt]) -> bool {
        // h is in HNF: greedy echelon division
        let mut x: Vec<BigInt> = v.to_vec();
        for i in 0..h.nrows() {
            let pivot_col = (0..h.ncols()).find(|&j| !h[(i, j)].is_zero()).unwrap();
            let (q, r) = x[pivot_col].div_rem(&h[(i, pivot_col)]);
            if !r.is_zero() {
                return false;
            }
            for j in 0..h.ncols() {
                let t = &q * &h[(i, j)];
                x[j] -= t;
            }
        }
        x.iter().all(BigInt::is_zero)
    }

    fn arb_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-5i64..=5, r * c).prop_map(move |vals| {
                IntMatrix::from_rows(
                    vals.chunks(c).map(|ch| ch.iter().map(|&x| BigInt::from(x)).collect()).collect(),
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn snf_random(m in arb_matrix()) {
            let snf = smith_normal_form(&m);
            prop_assert_eq!(snf.u.mul(&m).unwrap().mul(&snf.v).unwrap(), snf.s.clone());
            prop_assert!(snf.u.is_unimodular());
            prop_assert!(snf.v.is_unimodular());
            let n = snf.s.nrows().min(snf.s.ncols());
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        prop_assert!(snf.s[(i, j)].is_zero());
                    }
                }
            }
            for i in 0..n.saturating_sub(1) {
                let a = &snf.s[(i, i)];
                let b = &snf.s[(i + 1, i + 1)];
                if !a.is_zero() {
                    prop_assert!(b.is_multiple_of(a));
                } else {
                    prop_assert!(b.is_zero());
                }
            }
        }

        #[test]
        fn hnf_idempotent_and_span_preserving(m in arb_matrix()) {
            let h = hermite_normal_form(&m);
            prop_assert_eq!(hermite_normal_form(&h), h.clone());
            for i in 0..m.nrows() {
                prop_assert!(in_row_span(&h, m.row(i)));
            }
            // span(h) adds nothing to span(m): stacking h under m leaves the HNF fixed
            let mut stacked: Vec<Vec<BigInt>> =
                (0..m.nrows()).map(|i| m.row(i).to_vec()).collect();
            stacked.extend((0..h.nrows()).map(|i| h.row(i).to_vec()));
            let hs = hermite_normal_form(&IntMatrix::from_rows(stacked).unwrap());
            prop_assert_eq!(hs, h);
        }

        #[test]
        fn kernel_annihilates(m in arb_matrix()) {
            let k = integer_kernel(&m);
            for i in 0..k.nrows() {
                let prod = m.mul_vec(k.row(i)).unwrap();
                prop_assert!(prod.iter().all(BigInt::is_zero));
            }
        }
    }
}
