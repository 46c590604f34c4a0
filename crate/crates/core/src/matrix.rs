//! Dense matrices over exact rationals.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Row-major `rows × cols` matrix. Zero-sized shapes are allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
pub struct Echelon {
    pub matrix: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Self::from_fn(rows, cols, |r, c| rat(entries[r * cols + c]))
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Rows `rows` and columns `cols` of `self`.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }

    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, row);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space, one vector per free column, in echelon-canonical form.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let Echelon { matrix, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -matrix.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Cokernel of `self`: returns `π` with `π · self = 0`, full row rank and
    /// `rows(self) − rank(self)` rows. `π` is the reduced echelon basis of the
    /// left null space, so the result is canonical.
    pub fn cokernel(&self) -> Cokernel {
        let left = self.transpose().kernel_basis();
        let raw = RationalMatrix::from_fn(left.len(), self.rows, |r, c| left[r][c].clone());
        let Echelon { matrix, pivots } = raw.echelon();
        let projection = matrix.submatrix(
            &(0..pivots.len()).collect::<Vec<_>>(),
            &(0..self.rows).collect::<Vec<_>>(),
        );
        Cokernel { projection, pivots }
    }

    /// Some `L` with `L · self = I`, if `self` has full column rank.
    pub fn left_inverse(&self) -> Option<RationalMatrix> {
        // Row-reduce [selfᵀ | I]; a right inverse of selfᵀ transposes to a left inverse.
        let t = self.transpose();
        let n = t.rows;
        let aug = RationalMatrix::from_fn(n, t.cols + n, |r, c| {
            if c < t.cols {
                t.get(r, c).clone()
            } else if c - t.cols == r {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let Echelon { matrix, pivots } = aug.echelon();
        if pivots.len() < n || pivots.iter().any(|&p| p >= t.cols) {
            return None;
        }
        // selfᵀ · X = I with X[pivot_col_r] = (row r of E restricted to the identity part).
        let mut x = RationalMatrix::zeros(t.cols, n);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..n {
                x.set(p, c, matrix.get(r, t.cols + c).clone());
            }
        }
        Some(x.transpose())
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        self.left_inverse()
    }

    /// Block-diagonal / general block placement helper: copies `block` into `self` at `(r0, c0)`.
    pub fn place(&mut self, r0: usize, c0: usize, block: &RationalMatrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }
}

pub struct Cokernel {
    pub projection: RationalMatrix,
    /// Pivot columns of `projection`; the unit vectors at these positions form a section.
    pub pivots: Vec<usize>,
}

impl Cokernel {
    pub fn dimension(&self) -> usize {
        self.projection.rows()
    }

    /// `σ` with `π · σ = I`.
    pub fn section(&self) -> RationalMatrix {
        let mut s = RationalMatrix::zeros(self.projection.cols(), self.pivots.len());
        for (j, &p) in self.pivots.iter().enumerate() {
            s.set(p, j, Rational::one());
        }
        s
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c) + a * b;
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "; ")?;
            for (i, v) in self.row(r).iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
        }
        write!(f, "]")
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<[String; 2]> = self
            .data
            .iter()
            .map(|v| [v.numer().to_string(), v.denom().to_string()])
            .collect();
        let mut s = serializer.serialize_struct("RationalMatrix", 3)?;
        s.serialize_field("rows", &self.rows)?;
        s.serialize_field("cols", &self.cols)?;
        s.serialize_field("entries", &entries)?;
        s.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> RationalMatrix {
        RationalMatrix::from_i64(rows, cols, e)
    }

    #[test]
    fn kernel_examples() {
        let k = m(1, 2, &[1, 1]).kernel_basis();
        assert_eq!(k, vec![vec![rat(-1), rat(1)]]);
        assert!(RationalMatrix::identity(2).kernel_basis().is_empty());
        assert_eq!(RationalMatrix::zeros(2, 3).kernel_basis().len(), 3);
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(RationalMatrix::identity(2).cokernel().dimension(), 0);
        let c = RationalMatrix::zeros(2, 2).cokernel();
        assert_eq!(c.dimension(), 2);
        assert_eq!(c.projection.rank(), 2);
        let c = m(2, 1, &[1, 0]).cokernel();
        assert_eq!(c.dimension(), 1);
        assert_eq!(c.projection, m(1, 2, &[0, 1]));
    }

    #[test]
    fn zero_sized_shapes() {
        let z = RationalMatrix::zeros(0, 3);
        assert_eq!(z.kernel_basis().len(), 3);
        assert_eq!(z.cokernel().dimension(), 0);
        let z = RationalMatrix::zeros(3, 0);
        assert!(z.kernel_basis().is_empty());
        assert_eq!(z.cokernel().dimension(), 3);
        assert_eq!(
            (&RationalMatrix::zeros(2, 0) * &RationalMatrix::zeros(0, 4)),
            RationalMatrix::zeros(2, 4)
        );
    }

    #[test]
    fn inverse_and_left_inverse() {
        let a = m(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(&inv * &a, RationalMatrix::identity(2));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
        let tall = m(3, 2, &[1, 0, 2, 1, 0, 3]);
        let l = tall.left_inverse().unwrap();
        assert_eq!(&l * &tall, RationalMatrix::identity(2));
        assert!(m(1, 2, &[1, 1]).left_inverse().is_none());
    }

    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (0usize..5, 0usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |e| RationalMatrix::from_i64(r, c, &e))
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(a in small_matrix()) {
            let k = a.kernel_basis();
            prop_assert_eq!(a.rank() + k.len(), a.cols());
            for v in &k {
                prop_assert!(a.mul_vec(v).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn cokernel_contract(a in small_matrix()) {
            let c = a.cokernel();
            prop_assert_eq!(c.dimension(), a.rows() - a.rank());
            prop_assert_eq!(c.projection.rank(), c.dimension());
            prop_assert!((&c.projection * &a).is_zero());
            prop_assert_eq!(&c.projection * &c.section(), RationalMatrix::identity(c.dimension()));
        }
    }
}
