//! Exact determinants over commutative rings with exact division.
//!
//! Three independent routes: Laplace (cofactor) expansion, Bareiss
//! fraction-free elimination and Dodgson condensation. They share nothing
//! but the ring operations, so agreement between them is a meaningful check.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::diffring::DiffPoly;
use crate::error::{AlgebraError, Result};
use crate::linalg::Matrix;
use crate::matring::RPoly;
use crate::scalar::Scalar;
use crate::tpoly::TPoly;
use crate::zpoly::ZPoly;

const SPARSE_COST: usize = 400;

pub trait DetRing: Clone + PartialEq + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, d: &Self) -> Option<Self>;
    /// Rough size used to prefer small pivots.
    fn weight(&self) -> usize {
        1
    }
    /// Cost of one term product, in dense integer coefficient products.
    const UNIT_COST: usize = 1;
}

impl DetRing for Scalar {
    const UNIT_COST: usize = SPARSE_COST;
    fn zero_like(&self) -> Self {
        Scalar::zero()
    }
    fn one_like(&self) -> Self {
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
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.div(d).ok()
    }
    fn weight(&self) -> usize {
        self.numerator().len() + self.denominator().len()
    }
}

impl DetRing for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
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
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        (!Zero::is_zero(d)).then(|| self / d)
    }
}

impl DetRing for TPoly {
    const UNIT_COST: usize = SPARSE_COST;
    fn zero_like(&self) -> Self {
        TPoly::zero()
    }
    fn one_like(&self) -> Self {
        TPoly::one()
    }
    fn is_zero(&self) -> bool {
        TPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        TPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        TPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        TPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        TPoly::neg(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        TPoly::exact_div(self, d)
    }
    fn weight(&self) -> usize {
        self.len()
    }
}

impl DetRing for ZPoly {
    fn zero_like(&self) -> Self {
        ZPoly::zero()
    }
    fn one_like(&self) -> Self {
        ZPoly::one()
    }
    fn is_zero(&self) -> bool {
        ZPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        ZPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        ZPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        ZPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        ZPoly::neg(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        ZPoly::exact_div(self, d)
    }
    fn weight(&self) -> usize {
        self.coefficients().len()
    }
}

impl DetRing for DiffPoly {
    const UNIT_COST: usize = SPARSE_COST;
    fn zero_like(&self) -> Self {
        DiffPoly::zero()
    }
    fn one_like(&self) -> Self {
        DiffPoly::one()
    }
    fn is_zero(&self) -> bool {
        DiffPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        DiffPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        DiffPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        DiffPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        DiffPoly::neg(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        self.exact_divide(d).ok().flatten()
    }
    fn weight(&self) -> usize {
        self.len()
    }
}

impl DetRing for RPoly {
    const UNIT_COST: usize = SPARSE_COST;
    fn zero_like(&self) -> Self {
        RPoly::zero(self.n())
    }
    fn one_like(&self) -> Self {
        RPoly::one(self.n())
    }
    fn is_zero(&self) -> bool {
        RPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        RPoly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RPoly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RPoly::mul(self, o)
    }
    fn neg(&self) -> Self {
        RPoly::neg(self)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        RPoly::exact_div(self, d)
    }
    fn weight(&self) -> usize {
        self.terms().map(|(_, c)| c.len()).sum()
    }
}

fn check_square<T: Clone>(m: &Matrix<T>) -> Result<usize> {
    if !m.is_square() {
        return Err(AlgebraError::DimensionMismatch {
            expected: m.rows(),
            found: m.cols(),
        });
    }
    Ok(m.rows())
}

/// Laplace expansion along rows, bottom-up, memoizing the non-zero minors
/// of the trailing rows by column subset. Exponential in the dimension;
/// zero entries and vanishing minors are pruned.
pub fn cofactor_det<T: DetRing>(m: &Matrix<T>) -> Result<T> {
    cofactor_det_bounded(m, usize::MAX)
}

/// [`cofactor_det`] that gives up with [`AlgebraError::Unsupported`] once
/// the work spent, counted as products of entry and minor weights, exceeds
/// `budget`.
pub fn cofactor_det_bounded<T: DetRing>(m: &Matrix<T>, budget: usize) -> Result<T> {
    let n = check_square(m)?;
    if n == 0 {
        return Err(AlgebraError::Precondition("empty matrix".into()));
    }
    if n > 63 {
        return Err(AlgebraError::Unsupported(format!(
            "cofactor expansion of a {n}x{n} matrix"
        )));
    }
    let zero = m[(0, 0)].zero_like();
    let mut work = 0usize;
    let mut layer: HashMap<u64, T> = HashMap::new();
    for c in 0..n {
        let v = &m[(n - 1, c)];
        if !v.is_zero() {
            layer.insert(1u64 << c, v.clone());
        }
    }
    for row in (0..n - 1).rev() {
        let mut next: HashMap<u64, T> = HashMap::new();
        for (&set, minor) in &layer {
            for c in 0..n {
                let bit = 1u64 << c;
                if set & bit != 0 {
                    continue;
                }
                let a = &m[(row, c)];
                if a.is_zero() {
                    continue;
                }
                work = work.saturating_add(
                    T::UNIT_COST
                        .saturating_mul(a.weight())
                        .saturating_mul(minor.weight()),
                );
                if work > budget {
                    return Err(AlgebraError::Unsupported(format!(
                        "cofactor expansion of a {n}x{n} matrix exceeded its work budget \
                         of {budget} after {} of {n} rows ({} minors held)",
                        n - 1 - row,
                        layer.len()
                    )));
                }
                let before = (set & (bit - 1)).count_ones();
                let prod = a.mul(minor);
                let entry = next.entry(set | bit).or_insert_with(|| zero.clone());
                *entry = if before.is_multiple_of(2) {
                    entry.add(&prod)
                } else {
                    entry.sub(&prod)
                };
            }
        }
        next.retain(|_, v| !v.is_zero());
        layer = next;
        if layer.is_empty() {
            return Ok(zero);
        }
    }
    Ok(layer.remove(&((1u64 << n) - 1)).unwrap_or(zero))
}

/// Bareiss fraction-free elimination; every division is exact.
pub fn bareiss_det<T: DetRing>(m: &Matrix<T>) -> Result<T> {
    let n = check_square(m)?;
    if n == 0 {
        return Err(AlgebraError::Precondition("empty matrix".into()));
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = a[(0, 0)].one_like();
    for k in 0..n - 1 {
        let pivot_row = (k..n)
            .filter(|&r| !a[(r, k)].is_zero())
            .min_by_key(|&r| a[(r, k)].weight());
        let Some(p) = pivot_row else {
            return Ok(a[(0, 0)].zero_like());
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        let pivot = a[(k, k)].clone();
        for i in k + 1..n {
            let aik = a[(i, k)].clone();
            for j in k + 1..n {
                let num = a[(i, j)].mul(&pivot).sub(&aik.mul(&a[(k, j)]));
                let v = if num.is_zero() {
                    num
                } else {
                    num.exact_div(&prev).ok_or_else(|| {
                        AlgebraError::MethodDisagreement(
                            "Bareiss step produced an inexact division".into(),
                        )
                    })?
                };
                a[(i, j)] = v;
            }
            a[(i, k)] = aik.zero_like();
        }
        prev = pivot;
    }
    let d = a[(n - 1, n - 1)].clone();
    Ok(if negate { d.neg() } else { d })
}

/// Outcome of Dodgson condensation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condensed<T> {
    pub value: T,
    /// A zero interior pivot forced the cofactor fallback.
    pub fell_back: bool,
}

/// Dodgson condensation: repeated 2x2 connected minors divided by the
/// interior of the matrix two steps back. Falls back to cofactor expansion
/// when an interior pivot vanishes.
pub fn dodgson_det<T: DetRing>(m: &Matrix<T>) -> Result<Condensed<T>> {
    let n = check_square(m)?;
    if n == 0 {
        return Err(AlgebraError::Precondition("empty matrix".into()));
    }
    let one = m[(0, 0)].one_like();
    let mut older: Matrix<T> = Matrix::from_fn(n + 1, n + 1, |_, _| one.clone());
    let mut cur = m.clone();
    for size in (1..n).rev() {
        let mut next = Matrix::from_fn(size, size, |_, _| one.clone());
        for i in 0..size {
            for j in 0..size {
                let num = cur[(i, j)]
                    .mul(&cur[(i + 1, j + 1)])
                    .sub(&cur[(i, j + 1)].mul(&cur[(i + 1, j)]));
                let den = &older[(i + 1, j + 1)];
                if den.is_zero() {
                    return Ok(Condensed {
                        value: cofactor_det(m)?,
                        fell_back: true,
                    });
                }
                next[(i, j)] = num.exact_div(den).ok_or_else(|| {
                    AlgebraError::MethodDisagreement("condensation division is inexact".into())
                })?;
            }
        }
        older = cur;
        cur = next;
    }
    Ok(Condensed {
        value: cur[(0, 0)].clone(),
        fell_back: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|&v| BigRational::from_integer(v.into()))
                        .collect()
                })
                .collect(),
        )
    }

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn small_integer_determinants() {
        let m = qm(&[&[2, -1, 0], &[1, 3, 4], &[0, 5, -2]]);
        // 2(3*-2 - 20) + 1(1*-2 - 0) = -52 - 2 = -54
        assert_eq!(cofactor_det(&m).unwrap(), q(-54));
        assert_eq!(bareiss_det(&m).unwrap(), q(-54));
        assert_eq!(dodgson_det(&m).unwrap().value, q(-54));
    }

    #[test]
    fn zero_pivots_are_handled() {
        // interior entry m[1][1] = 0 forces the condensation fallback
        let m = qm(&[&[1, 2, 3], &[4, 0, 6], &[7, 8, 9]]);
        let expected = q(60);
        assert_eq!(cofactor_det(&m).unwrap(), expected);
        assert_eq!(bareiss_det(&m).unwrap(), expected);
        let c = dodgson_det(&m).unwrap();
        assert!(c.fell_back);
        assert_eq!(c.value, expected);
        let swap = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(bareiss_det(&swap).unwrap(), q(-1));
    }

    #[test]
    fn singular_matrices_vanish() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6], &[1, 1, 1]]);
        assert!(cofactor_det(&m).unwrap() == q(0));
        assert!(bareiss_det(&m).unwrap() == q(0));
        assert!(dodgson_det(&m).unwrap().value == q(0));
    }

    #[test]
    fn non_square_is_rejected() {
        let m = Matrix::from_fn(2, 3, |_, _| q(1));
        assert!(cofactor_det(&m).is_err());
        assert!(bareiss_det(&m).is_err());
    }
}
