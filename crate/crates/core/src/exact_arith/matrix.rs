use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Sparse matrix over Q, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, Rational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BTreeMap::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged rows".into()));
            }
            for (j, x) in row.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let c = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, Rational::from_integer(BigInt::from(x)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(&j).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        assert!(i < self.rows && j < self.cols, "index out of range");
        if x.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Rational) {
        let cur = self.get(i, j);
        self.set(i, j, cur + x);
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.data[i].iter().map(|(j, x)| (*j, x))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                }
            }
            acc.retain(|_, x| !x.is_zero());
            out.data[i] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let mut out = self.clone();
        for (i, row) in other.data.iter().enumerate() {
            for (j, x) in row {
                out.add_to(i, *j, x);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        if c.is_zero() {
            return out;
        }
        for (i, row) in self.data.iter().enumerate() {
            out.data[i] = row.iter().map(|(j, x)| (*j, x * c)).collect();
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hcat row counts".into()));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.data[i] = self.data[i].clone();
            for (j, x) in &other.data[i] {
                out.data[i].insert(self.cols + j, x.clone());
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                out.data[*j].insert(i, x.clone());
            }
        }
        out
    }

    /// Rank over Q by sparse fraction-free row elimination.
    ///
    /// Each row is scaled to a primitive integer vector; eliminating a pivot
    /// multiplies by the pivot entry instead of dividing, followed by removal
    /// of the row content so entries stay small.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<(usize, BigInt)>> =
            self.data.iter().filter(|r| !r.is_empty()).map(primitive_row).collect();
        let mut pivots: BTreeMap<usize, Vec<(usize, BigInt)>> = BTreeMap::new();
        while let Some(mut row) = rows.pop() {
            loop {
                let Some(&(lead, _)) = row.first() else { break };
                match pivots.get(&lead) {
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                    Some(p) => {
                        row = eliminate(&row, p);
                    }
                }
            }
        }
        pivots.len()
    }

    /// A basis of the kernel (right null space), as columns of the result.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rref, pivots) = self.rref();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                let x = rref[r].get(&free).cloned().unwrap_or_else(Rational::zero);
                v[pc] = -x;
            }
            basis.push(v);
        }
        basis
    }

    /// Reduced row echelon form rows (nonzero only) and their pivot columns.
    fn rref(&self) -> (Vec<BTreeMap<usize, Rational>>, Vec<usize>) {
        let mut rows: Vec<BTreeMap<usize, Rational>> =
            self.data.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut out: Vec<BTreeMap<usize, Rational>> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..self.cols {
            let Some(pos) = rows.iter().position(|r| r.contains_key(&col)) else { continue };
            let mut prow = rows.swap_remove(pos);
            let inv = prow[&col].recip();
            for x in prow.values_mut() {
                *x *= &inv;
            }
            for r in rows.iter_mut().chain(out.iter_mut()) {
                if let Some(f) = r.get(&col).cloned() {
                    for (j, x) in &prow {
                        let e = r.entry(*j).or_insert_with(Rational::zero);
                        *e -= &f * x;
                    }
                    r.retain(|_, x| !x.is_zero());
                }
            }
            rows.retain(|r| !r.is_empty());
            out.push(prow);
            pivots.push(col);
        }
        (out, pivots)
    }

    /// Applies the matrix to a dense column vector.
    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        self.data
            .iter()
            .map(|row| row.iter().fold(Rational::zero(), |acc, (j, x)| acc + x * &v[*j]))
            .collect()
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }
}

fn primitive_row(row: &BTreeMap<usize, Rational>) -> Vec<(usize, BigInt)> {
    let lcm = row.values().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<(usize, BigInt)> =
        row.iter().map(|(j, x)| (*j, (x * Rational::from_integer(lcm.clone())).to_integer())).collect();
    make_primitive(ints)
}

fn make_primitive(mut row: Vec<(usize, BigInt)>) -> Vec<(usize, BigInt)> {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, x)| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x /= &g;
        }
    }
    if row.first().is_some_and(|(_, x)| x.is_negative()) {
        for (_, x) in row.iter_mut() {
            *x = -&*x;
        }
    }
    row
}

/// `p_lead * row - row_lead * pivot`, made primitive. Both rows share a leading column.
fn eliminate(row: &[(usize, BigInt)], pivot: &[(usize, BigInt)]) -> Vec<(usize, BigInt)> {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|x| x.0);
        let cj = pivot.get(j).map(|x| x.0);
        let (col, val) = match (ci, cj) {
            (Some(c1), Some(c2)) if c1 == c2 => {
                let v = a * &row[i].1 - b * &pivot[j].1;
                i += 1;
                j += 1;
                (c1, v)
            }
            (Some(c1), Some(c2)) if c1 < c2 => {
                let v = a * &row[i].1;
                i += 1;
                (c1, v)
            }
            (Some(c1), None) => {
                let v = a * &row[i].1;
                i += 1;
                (c1, v)
            }
            (_, Some(c2)) => {
                let v = -(b * &pivot[j].1);
                j += 1;
                (c2, v)
            }
            (None, None) => unreachable!(),
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    make_primitive(out)
}

/// Homology dimension at the middle of `prev --d_in--> mid --d_out--> next`.
///
/// `d_in` is `dim mid × dim prev` and `d_out` is `dim next × dim mid`.
pub fn homology_ranks(d_in: &RationalMatrix, d_out: &RationalMatrix) -> Result<usize> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::DimensionMismatch(format!(
            "d_in has {} rows but d_out has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let comp = d_out.mul(d_in)?;
    if !comp.is_zero() {
        return Err(Error::NotAComplex(format!("{} nonzero entries in d_out*d_in", comp.nnz())));
    }
    let mid = d_in.rows();
    Ok(mid - d_out.rank() - d_in.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_arith::rat;

    #[test]
    fn point_complex() {
        let d_in = RationalMatrix::zeros(1, 0);
        let d_out = RationalMatrix::zeros(0, 1);
        assert_eq!(homology_ranks(&d_in, &d_out).unwrap(), 1);
    }

    #[test]
    fn acyclic() {
        let d_in = RationalMatrix::zeros(1, 0);
        let d_out = RationalMatrix::identity(1);
        assert_eq!(homology_ranks(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn zero_differential_two_terms() {
        // Q --0--> Q: homology 1 at each end
        let d = RationalMatrix::zeros(1, 1);
        let h0 = homology_ranks(&RationalMatrix::zeros(1, 0), &d).unwrap();
        let h1 = homology_ranks(&d, &RationalMatrix::zeros(0, 1)).unwrap();
        assert_eq!((h0, h1), (1, 1));
    }

    #[test]
    fn not_a_complex() {
        let id = RationalMatrix::identity(2);
        assert!(matches!(homology_ranks(&id, &id), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn rank_and_kernel() {
        let m = RationalMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).iter().all(Zero::is_zero));
        let half = RationalMatrix::from_dense(vec![vec![rat(1) / rat(2), rat(1)], vec![rat(1), rat(2)]]).unwrap();
        assert_eq!(half.rank(), 1);
    }
}
