//! Dense matrices and exact linear algebra over fields.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Column permutation: column `c` of the result is column `perm[c]`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, perm[c])].clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.data[r * self.cols + c].to_string())
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Minimal field interface for elimination.
pub trait FieldElem: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// Panics on a zero divisor; callers only divide by pivots.
    fn div(&self, o: &Self) -> Self;
}

impl FieldElem for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl FieldElem for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        Scalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Scalar::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Scalar::mul(self, o)
    }
    fn div(&self, o: &Self) -> Self {
        Scalar::div(self, o).expect("pivot is non-zero")
    }
}

impl<T: FieldElem> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if !a.is_zero() {
                    acc = acc.add(&a.mul(&other[(k, c)]));
                }
            }
            acc
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = T::one().div(&m[(row, col)]);
            for c in col..m.cols {
                m[(row, c)] = m[(row, c)].mul(&inv);
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = m[(r, c)].sub(&factor.mul(&m[(row, c)]));
                    m[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{ v : self * v = 0 }`, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = T::zero().sub(&r[(i, f)]);
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Matrix::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                T::one()
            } else {
                T::zero()
            }
        });
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| red[(r, c + n)].clone()))
    }
}

/// Canonical basis (RREF rows) of the span of `vectors`.
pub fn span_basis<T: FieldElem>(vectors: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_fn(vectors.len(), dim, |r, c| vectors[r][c].clone());
    let (red, pivots) = m.rref();
    (0..pivots.len()).map(|r| red.row(r).to_vec()).collect()
}

/// Basis of the intersection of two subspaces given by bases.
pub fn intersect<T: FieldElem>(a: &[Vec<T>], b: &[Vec<T>], dim: usize) -> Vec<Vec<T>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // x in span(a) ∩ span(b)  <=>  sum u_i a_i = sum v_j b_j
    let k = a.len() + b.len();
    let m = Matrix::from_fn(dim, k, |r, c| {
        if c < a.len() {
            a[c][r].clone()
        } else {
            T::zero().sub(&b[c - a.len()][r])
        }
    });
    let vecs: Vec<Vec<T>> = m
        .nullspace()
        .into_iter()
        .map(|coef| {
            (0..dim)
                .map(|r| {
                    let mut acc = T::zero();
                    for (i, ai) in a.iter().enumerate() {
                        if !coef[i].is_zero() {
                            acc = acc.add(&coef[i].mul(&ai[r]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    span_basis(&vecs, dim)
}

/// Characteristic polynomial `det(x I - A)` by reduction to upper Hessenberg
/// form; coefficients listed from the constant term upwards.
pub fn charpoly(a: &Matrix<BigRational>) -> Vec<BigRational> {
    assert!(a.is_square());
    let n = a.rows();
    let mut h = a.clone();
    for col in 0..n.saturating_sub(2) {
        let Some(p) = (col + 1..n).find(|&r| !Zero::is_zero(&h[(r, col)])) else {
            continue;
        };
        if p != col + 1 {
            h.swap_rows(p, col + 1);
            for r in 0..n {
                h.data.swap(r * n + p, r * n + col + 1);
            }
        }
        let pivot = h[(col + 1, col)].clone();
        for r in col + 2..n {
            if Zero::is_zero(&h[(r, col)]) {
                continue;
            }
            let factor = &h[(r, col)] / &pivot;
            for c in 0..n {
                let v = &h[(r, c)] - &factor * &h[(col + 1, c)];
                h[(r, c)] = v;
            }
            // similarity: add factor * column r to column col+1
            for rr in 0..n {
                let v = &h[(rr, col + 1)] + &factor * &h[(rr, r)];
                h[(rr, col + 1)] = v;
            }
        }
    }
    // p_k(x) = (x - h_kk) p_{k-1} - sum_{i<k} h_ik * prod_{j=i+1..k} h_{j,j-1} p_{i-1}
    let mut polys: Vec<Vec<BigRational>> = vec![vec![<BigRational as One>::one()]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![<BigRational as Zero>::zero(); k + 2];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * &h[(k, k)];
        }
        let mut prod = <BigRational as One>::one();
        for i in (0..k).rev() {
            prod *= &h[(i + 1, i)];
            if Zero::is_zero(&prod) {
                break;
            }
            let coef = &h[(i, k)] * &prod;
            if Zero::is_zero(&coef) {
                continue;
            }
            for (d, c) in polys[i].iter().enumerate() {
                next[d] -= &coef * c;
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Integer roots of a polynomial with rational coefficients (constant term
/// first), restricted to `|x| <= bound`.
pub fn integer_roots(poly: &[BigRational], bound: &BigInt) -> Vec<BigInt> {
    let mut roots = Vec::new();
    let mut x = -bound.clone();
    while &x <= bound {
        let xr = BigRational::from_integer(x.clone());
        let mut acc = <BigRational as Zero>::zero();
        for c in poly.iter().rev() {
            acc = acc * &xr + c;
        }
        if Zero::is_zero(&acc) {
            roots.push(x.clone());
        }
        x += 1;
    }
    roots
}

/// Maximum absolute row sum; bounds the modulus of every eigenvalue.
pub fn infinity_norm(a: &Matrix<BigRational>) -> BigRational {
    (0..a.rows())
        .map(|r| {
            a.row(r)
                .iter()
                .fold(<BigRational as Zero>::zero(), |acc, v| acc + v.abs())
        })
        .max()
        .unwrap_or_else(<BigRational as Zero>::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_nullspace() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        let v = Matrix::from_fn(3, 1, |r, _| ns[0][r].clone());
        assert!(m.mul(&v).data.iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_round_trip() {
        let m = qm(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn charpoly_matches_direct_expansion() {
        // [[2,1,0],[1,3,1],[0,1,4]]: x^3 - 9x^2 + 24x - 18
        let m = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(charpoly(&m), vec![q(-18), q(24), q(-9), q(1)]);
        // needs a row swap during the Hessenberg reduction
        let m = qm(&[&[1, 2, 3], &[0, 4, 5], &[6, 0, 7]]);
        // det(xI - A) = x^3 - 12x^2 + 21x - 16
        assert_eq!(charpoly(&m), vec![q(-16), q(21), q(-12), q(1)]);
    }

    #[test]
    fn integer_roots_in_bound() {
        // (x-2)(x+3)(2x-1)
        let p = vec![q(6), q(-13), q(1), q(2)];
        let roots = integer_roots(&p, &BigInt::from(5));
        assert_eq!(roots, vec![BigInt::from(-3), BigInt::from(2)]);
    }

    #[test]
    fn subspace_intersection() {
        let a = vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]];
        let b = vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]];
        assert_eq!(intersect(&a, &b, 3), vec![vec![q(0), q(1), q(0)]]);
    }
}
