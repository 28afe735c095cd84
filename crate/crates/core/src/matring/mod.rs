//! The ring `R = F{Y_ij}[X_ij]` and its Y-free subring `F[X_ij]`.

mod derivation;
mod division;

pub use derivation::{
    coeff_in_derivative, derivation_from_basis, specialize, DerivationKind, DerivationSpec,
};
pub use division::{divide_reduce, leading_power_product};

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::diffring::{DiffMonomial, DiffPoly};
use crate::error::{AlgebraError, Result};
use crate::scalar::Scalar;
use crate::tpoly::{TMonomial, TPoly};

/// Exponent vector over `X_11, X_12, ..., X_nn` (row-major).
///
/// Ordered by degrevlex with `X_11 > X_12 > ... > X_nn`: total degree first,
/// then the monomial whose rightmost differing exponent is larger is the
/// smaller one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XMonomial {
    n: usize,
    exps: Vec<u32>,
}

impl XMonomial {
    pub fn one(n: usize) -> Self {
        XMonomial {
            n,
            exps: vec![0; n * n],
        }
    }

    pub fn new(n: usize, exps: Vec<u32>) -> Result<Self> {
        if exps.len() != n * n {
            return Err(AlgebraError::DimensionMismatch {
                expected: n * n,
                found: exps.len(),
            });
        }
        Ok(XMonomial { n, exps })
    }

    /// `X_ij`, 1-based.
    pub fn var(n: usize, i: usize, j: usize) -> Self {
        let mut m = XMonomial::one(n);
        m.exps[(i - 1) * n + (j - 1)] = 1;
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `X_ij`, 1-based.
    pub fn exp(&self, i: usize, j: usize) -> u32 {
        self.exps[(i - 1) * self.n + (j - 1)]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        XMonomial {
            n: self.n,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        XMonomial {
            n: self.n,
            exps: self.exps.iter().map(|a| a * e).collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        Some(XMonomial {
            n: self.n,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Every power product of total degree `e`, ascending in the term order.
    pub fn all_of_degree(n: usize, e: u32) -> Vec<XMonomial> {
        fn fill(exps: &mut Vec<u32>, slot: usize, left: u32, out: &mut Vec<Vec<u32>>) {
            if slot + 1 == exps.len() {
                exps[slot] = left;
                out.push(exps.clone());
                return;
            }
            for v in 0..=left {
                exps[slot] = v;
                fill(exps, slot + 1, left - v, out);
            }
        }
        let mut raw = Vec::new();
        if n > 0 {
            fill(&mut vec![0; n * n], 0, e, &mut raw);
        }
        let mut out: Vec<XMonomial> = raw.into_iter().map(|exps| XMonomial { n, exps }).collect();
        out.sort();
        out
    }

    /// Adds `delta` to the exponent of `X_ij`; `None` if it would go negative.
    pub(crate) fn shifted(&self, i: usize, j: usize, delta: i32) -> Option<Self> {
        let idx = (i - 1) * self.n + (j - 1);
        let v = self.exps[idx] as i64 + delta as i64;
        if v < 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[idx] = v as u32;
        Some(m)
    }
}

impl Ord for XMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for XMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The term order comparison, rejecting monomials of different dimension.
pub fn xorder_compare(a: &XMonomial, b: &XMonomial) -> Result<Ordering> {
    if a.n != b.n {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    Ok(a.cmp(b))
}

impl fmt::Display for XMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        for i in 1..=self.n {
            for j in 1..=self.n {
                match self.exp(i, j) {
                    0 => {}
                    1 => parts.push(format!("X[{},{}]", i, j)),
                    e => parts.push(format!("X[{},{}]^{}", i, j, e)),
                }
            }
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse element of `R`: X-monomials with `F{Y}` coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RPoly {
    n: usize,
    terms: BTreeMap<XMonomial, DiffPoly>,
}

impl RPoly {
    pub fn zero(n: usize) -> Self {
        RPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        RPoly::constant(n, DiffPoly::one())
    }

    pub fn constant(n: usize, c: DiffPoly) -> Self {
        RPoly::term(XMonomial::one(n), c)
    }

    pub fn scalar(n: usize, c: Scalar) -> Self {
        RPoly::constant(n, DiffPoly::constant(c))
    }

    /// `X_ij`, 1-based.
    pub fn x(n: usize, i: usize, j: usize) -> Self {
        RPoly::term(XMonomial::var(n, i, j), DiffPoly::one())
    }

    pub fn term(m: XMonomial, c: DiffPoly) -> Self {
        let n = m.n;
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        RPoly { n, terms }
    }

    pub fn from_terms(n: usize, it: impl IntoIterator<Item = (XMonomial, DiffPoly)>) -> Self {
        let mut p = RPoly::zero(n);
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending term order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&XMonomial, &DiffPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &XMonomial) -> DiffPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// No `Y` occurs: the element lies in `F[X]`.
    pub fn is_y_free(&self) -> bool {
        self.terms.values().all(DiffPoly::is_constant)
    }

    /// The element lies in `F{Y}` (X-degree zero).
    pub fn as_diffpoly(&self) -> Option<DiffPoly> {
        match self.terms.len() {
            0 => Some(DiffPoly::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        self.as_diffpoly().and_then(|d| d.as_scalar())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(XMonomial::degree).max().unwrap_or(0)
    }

    /// `Some(d)` when every term has X-degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(XMonomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub(crate) fn add_term(&mut self, m: XMonomial, c: DiffPoly) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.n, self.n);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_dim(&self, other: &Self) {
        assert_eq!(self.n, other.n, "RPoly dimension mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_dim(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_dim(other);
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        RPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &DiffPoly) -> Self {
        if c.is_zero() {
            return RPoly::zero(self.n);
        }
        let mut r = RPoly::zero(self.n);
        for (m, a) in &self.terms {
            r.add_term(m.clone(), a.mul(c));
        }
        r
    }

    pub fn scale_scalar(&self, c: &Scalar) -> Self {
        self.scale(&DiffPoly::constant(c.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_dim(other);
        if self.is_zero() || other.is_zero() {
            return RPoly::zero(self.n);
        }
        let mut r = RPoly::zero(self.n);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        r
    }

    pub fn mul_monomial(&self, m: &XMonomial, c: &DiffPoly) -> Self {
        let mut r = RPoly::zero(self.n);
        for (a, b) in &self.terms {
            r.add_term(a.mul(m), b.mul(c));
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = RPoly::one(self.n);
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Exact quotient in `R` viewed as a polynomial ring in all of the
    /// `X` and `Y` variables, under the product order (X degrevlex, then the
    /// `F{Y}` term order). `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &RPoly) -> Option<RPoly> {
        self.check_dim(d);
        let (dx, dcoef) = d.terms.iter().next_back()?;
        if let Some(c) = d.as_scalar() {
            let inv = c.recip().ok()?;
            return Some(self.scale_scalar(&inv));
        }
        let (dy, dc) = dcoef.leading_term()?;
        let dc_inv = dc.recip().ok()?;
        let mut rem = self.clone();
        let mut quot = RPoly::zero(self.n);
        while let Some((rx, rcoef)) = rem.terms.iter().next_back() {
            let (ry, rc) = rcoef
                .leading_term()
                .expect("stored coefficients are non-zero");
            let qx = rx.checked_div(dx)?;
            let qy: DiffMonomial = ry.checked_div(dy)?;
            let qc = DiffPoly::term(qy, rc.mul(&dc_inv));
            rem = rem.sub(&d.mul_monomial(&qx, &qc));
            quot.add_term(qx, qc);
        }
        Some(quot)
    }
}

impl fmt::Debug for RPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RPoly {
    /// Descending term order: `(c1)*X^a + (c2)*X^b + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("{}", c)
                } else if c.as_scalar().is_some_and(|s| s.is_one()) {
                    m.to_string()
                } else {
                    format!("[{}]*{}", c, m)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl RPoly {
    /// The isomorphism `Q[t_1..t_m][X] -> Q[t_1..t_m, X_11..X_nn]`, with the
    /// X's numbered after the generators. `None` when a coefficient involves
    /// `Y` or is not a polynomial in the `t`'s.
    pub fn to_flat(&self, m: usize) -> Option<TPoly> {
        let mut terms = Vec::new();
        for (xm, c) in &self.terms {
            let s = c.as_scalar()?;
            if !s.is_polynomial() {
                return None;
            }
            for (tm, q) in s.numerator().terms() {
                if tm.exponents().len() > m {
                    return None;
                }
                let mut exps = tm.exponents().to_vec();
                exps.resize(m, 0);
                exps.extend_from_slice(xm.exponents());
                terms.push((TMonomial::new(exps), q.clone()));
            }
        }
        Some(TPoly::from_terms(terms))
    }

    /// Inverse of [`to_flat`](Self::to_flat).
    pub fn from_flat(n: usize, m: usize, p: &TPoly) -> RPoly {
        let mut out = RPoly::zero(n);
        for (mono, q) in p.terms() {
            let mut exps = mono.exponents().to_vec();
            exps.resize(m + n * n, 0);
            let x = XMonomial {
                n,
                exps: exps[m..].to_vec(),
            };
            let t = TPoly::monomial(TMonomial::new(exps[..m].to_vec()), q.clone());
            out.add_term(x, DiffPoly::constant(Scalar::from_poly(t)));
        }
        out
    }
}

/// Determinant of the `n x n` matrix of indeterminates, by permutation
/// expansion.
pub fn det_x(n: usize) -> RPoly {
    assert!(n >= 1, "det_x needs n >= 1");
    let mut r = RPoly::zero(n);
    let mut perm: Vec<usize> = (0..n).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut m = XMonomial::one(n);
        for (i, &j) in p.iter().enumerate() {
            m.exps[i * n + j] += 1;
        }
        let sign = permutation_sign(p);
        r.add_term(m, DiffPoly::constant(Scalar::from_int(sign)));
    });
    r
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// `+1` for even permutations, `-1` for odd.
pub fn permutation_sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut sign = 1;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(n: usize, e: &[u32]) -> XMonomial {
        XMonomial::new(n, e.to_vec()).unwrap()
    }

    #[test]
    fn term_order_examples() {
        let x11x22 = mono(2, &[1, 0, 0, 1]);
        let x12x21 = mono(2, &[0, 1, 1, 0]);
        assert_eq!(xorder_compare(&x11x22, &x12x21), Ok(Ordering::Less));
        let x11 = mono(2, &[1, 0, 0, 0]);
        assert_eq!(xorder_compare(&x11, &x11x22), Ok(Ordering::Less));
        assert_eq!(xorder_compare(&x11, &x11), Ok(Ordering::Equal));
        assert!(xorder_compare(&x11, &XMonomial::one(3)).is_err());
    }

    #[test]
    fn variables_descend_in_index_order() {
        let vars: Vec<XMonomial> = (1..=2)
            .flat_map(|i| (1..=2).map(move |j| XMonomial::var(2, i, j)))
            .collect();
        for w in vars.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn small_determinants() {
        assert_eq!(det_x(1), RPoly::x(1, 1, 1));
        let d2 = RPoly::x(2, 1, 1)
            .mul(&RPoly::x(2, 2, 2))
            .sub(&RPoly::x(2, 1, 2).mul(&RPoly::x(2, 2, 1)));
        assert_eq!(det_x(2), d2);
    }

    #[test]
    fn determinant_3x3_matches_cofactor_oracle() {
        let x = |i, j| RPoly::x(3, i, j);
        let minor = |a: (usize, usize), b: (usize, usize), c: (usize, usize), d: (usize, usize)| {
            x(a.0, a.1)
                .mul(&x(d.0, d.1))
                .sub(&x(b.0, b.1).mul(&x(c.0, c.1)))
        };
        let expected = x(1, 1)
            .mul(&minor((2, 2), (2, 3), (3, 2), (3, 3)))
            .sub(&x(1, 2).mul(&minor((2, 1), (2, 3), (3, 1), (3, 3))))
            .add(&x(1, 3).mul(&minor((2, 1), (2, 2), (3, 1), (3, 2))));
        assert_eq!(det_x(3), expected);
        assert_eq!(det_x(3).len(), 6);
    }

    #[test]
    fn exact_division_in_mixed_ring() {
        let y = RPoly::constant(2, DiffPoly::y(1, 1).add(&DiffPoly::y(2, 2)));
        let d = det_x(2);
        let p = y.mul(&d).mul(&d);
        assert_eq!(p.exact_div(&d), Some(y.mul(&d)));
        assert_eq!(p.exact_div(&y), Some(d.mul(&d)));
        assert_eq!(RPoly::x(2, 1, 1).exact_div(&d), None);
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
        assert_eq!(permutation_sign(&[3, 2, 1, 0]), 1);
    }
}
