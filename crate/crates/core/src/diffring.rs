//! The differential polynomial ring `F{Y_ij}`.
//!
//! Indeterminates are `Y_{ij,k}`, the k-th derivative of `Y_ij`, created on
//! demand; the derivation shifts `Y_{ij,k}` to `Y_{ij,k+1}` and extends to
//! coefficients through the base field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::scalar::{FieldConfig, Scalar};

/// `Y_{ij,k}` with 1-based `i`, `j`. Ordered lexicographically on `(i, j, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiffVar {
    pub i: u16,
    pub j: u16,
    pub k: u32,
}

impl DiffVar {
    pub fn new(i: usize, j: usize, k: usize) -> Self {
        DiffVar {
            i: i as u16,
            j: j as u16,
            k: k as u32,
        }
    }

    pub fn shifted(self) -> Self {
        DiffVar {
            k: self.k + 1,
            ..self
        }
    }
}

impl fmt::Display for DiffVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 0 {
            write!(f, "Y[{},{}]", self.i, self.j)
        } else {
            write!(f, "Y[{},{};{}]", self.i, self.j, self.k)
        }
    }
}

/// A power product of [`DiffVar`]s, sorted ascending by variable.
///
/// Ordered by total degree, then lexicographically with larger variables
/// more significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct DiffMonomial(Vec<(DiffVar, u32)>);

impl DiffMonomial {
    pub fn one() -> Self {
        DiffMonomial(Vec::new())
    }

    pub fn var(v: DiffVar) -> Self {
        DiffMonomial(vec![(v, 1)])
    }

    pub fn from_powers(it: impl IntoIterator<Item = (DiffVar, u32)>) -> Self {
        let mut m = DiffMonomial::one();
        for (v, e) in it {
            m = m.mul(&DiffMonomial(vec![(v, e)]));
        }
        m.0.retain(|&(_, e)| e > 0);
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn powers(&self) -> &[(DiffVar, u32)] {
        &self.0
    }

    pub fn max_var(&self) -> Option<DiffVar> {
        self.0.last().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(va, ea)), Some(&&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((va, ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(&&x), None) => {
                    out.push(x);
                    a.next();
                }
                (None, Some(&&x)) => {
                    out.push(x);
                    b.next();
                }
                (None, None) => break,
            }
        }
        DiffMonomial(out)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        let mut out = self.0.clone();
        for &(v, e) in &other.0 {
            let pos = out.binary_search_by(|&(w, _)| w.cmp(&v)).ok()?;
            if out[pos].1 < e {
                return None;
            }
            out[pos].1 -= e;
        }
        out.retain(|&(_, e)| e > 0);
        Some(DiffMonomial(out))
    }

    /// Product rule: `sum e * m / v * shift(v)` over the factors `v^e`.
    fn derive(&self) -> Vec<(DiffMonomial, u32)> {
        let mut out = Vec::with_capacity(self.0.len());
        for (idx, &(v, e)) in self.0.iter().enumerate() {
            let mut rest = self.0.clone();
            if e == 1 {
                rest.remove(idx);
            } else {
                rest[idx].1 -= 1;
            }
            let m = DiffMonomial(rest).mul(&DiffMonomial::var(v.shifted()));
            out.push((m, e));
        }
        out
    }
}

impl Ord for DiffMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        return va.cmp(&vb);
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for DiffMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DiffMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    v.to_string()
                } else {
                    format!("{}^{}", v, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse element of `F{Y_ij}`; no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DiffPoly {
    terms: BTreeMap<DiffMonomial, Scalar>,
}

impl DiffPoly {
    pub fn zero() -> Self {
        DiffPoly::default()
    }

    pub fn one() -> Self {
        DiffPoly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        DiffPoly::term(DiffMonomial::one(), c)
    }

    pub fn var(v: DiffVar) -> Self {
        DiffPoly::term(DiffMonomial::var(v), Scalar::one())
    }

    /// `Y_ij` (order zero), 1-based indices.
    pub fn y(i: usize, j: usize) -> Self {
        DiffPoly::var(DiffVar::new(i, j, 0))
    }

    pub fn term(m: DiffMonomial, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (DiffMonomial, Scalar)>) -> Self {
        let mut p = DiffPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no `Y` occurs (the element lies in `F`).
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(DiffMonomial::is_one)
    }

    pub fn as_scalar(&self) -> Option<Scalar> {
        if self.is_zero() {
            Some(Scalar::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&DiffMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(DiffMonomial::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<(&DiffMonomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub(crate) fn add_term(&mut self, m: DiffMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (mut big, small) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Self {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.mul(c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return DiffPoly::zero();
        }
        if let Some(c) = self.as_scalar() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_scalar() {
            return self.scale(&c);
        }
        let mut r = DiffPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        r
    }

    fn mul_term(&self, m: &DiffMonomial, c: &Scalar) -> Self {
        DiffPoly {
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.mul(m), b.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = DiffPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// The derivation: Leibniz over the base-field derivative of each
    /// coefficient and the shift `Y_{ij,k} -> Y_{ij,k+1}`.
    pub fn derive(&self, cfg: &FieldConfig) -> Self {
        let mut r = DiffPoly::zero();
        for (m, c) in &self.terms {
            let dc = c.derive(cfg);
            if !dc.is_zero() {
                r.add_term(m.clone(), dc);
            }
            for (dm, e) in m.derive() {
                r.add_term(dm, c.scale_int(i64::from(e)));
            }
        }
        r
    }

    /// `Some(q)` with `self = q * d` when `d` divides `self`, else `None`.
    pub fn exact_divide(&self, d: &DiffPoly) -> Result<Option<DiffPoly>> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if let Some(c) = d.as_scalar() {
            return Ok(Some(self.scale(&c.recip()?)));
        }
        let (dm, dc) = d.leading_term().expect("non-zero divisor");
        let dc_inv = dc.recip()?;
        let mut rem = self.clone();
        let mut quot = DiffPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let Some(qm) = rm.checked_div(dm) else {
                return Ok(None);
            };
            let qc = rc.mul(&dc_inv);
            rem = rem.sub(&d.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// The largest variable occurring, under the lexicographic order on
    /// `(i, j, k)`.
    pub fn leader(&self) -> Result<DiffVar> {
        self.terms
            .keys()
            .filter_map(DiffMonomial::max_var)
            .max()
            .ok_or(AlgebraError::ConstantHasNoLeader)
    }

    /// All variables that occur, ascending.
    pub fn variables(&self) -> Vec<DiffVar> {
        let mut vs: Vec<DiffVar> = self
            .terms
            .keys()
            .flat_map(|m| m.0.iter().map(|&(v, _)| v))
            .collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Substitute every variable by a base-field value.
    pub fn evaluate(&self, mut value: impl FnMut(DiffVar) -> Scalar) -> Scalar {
        let mut cache: BTreeMap<DiffVar, Scalar> = BTreeMap::new();
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in &m.0 {
                let val = cache.entry(v).or_insert_with(|| value(v));
                term = term.mul(&val.pow(e));
            }
            acc = acc.add(&term);
        }
        acc
    }
}

impl DiffPoly {
    /// Replace every variable by a differential polynomial.
    pub fn substitute(&self, mut image: impl FnMut(DiffVar) -> DiffPoly) -> DiffPoly {
        let mut cache: BTreeMap<DiffVar, DiffPoly> = BTreeMap::new();
        let mut acc = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut term = DiffPoly::constant(c.clone());
            for &(v, e) in &m.0 {
                let val = cache.entry(v).or_insert_with(|| image(v));
                term = term.mul(&val.pow(e));
            }
            acc.add_assign(&term);
        }
        acc
    }
}

impl From<Scalar> for DiffPoly {
    fn from(c: Scalar) -> Self {
        DiffPoly::constant(c)
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for DiffPoly {
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
                    format!("({})", c)
                } else if c.is_one() {
                    m.to_string()
                } else {
                    format!("({})*{}", c, m)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(i: usize, j: usize, k: usize) -> DiffPoly {
        DiffPoly::var(DiffVar::new(i, j, k))
    }

    fn c(n: i64) -> DiffPoly {
        DiffPoly::constant(Scalar::from_int(n))
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(
            y(1, 1, 0).mul(&y(1, 1, 0)),
            DiffPoly::term(
                DiffMonomial::from_powers([(DiffVar::new(1, 1, 0), 2)]),
                Scalar::one()
            )
        );
        let p = y(1, 1, 0).add(&c(1)).mul(&y(1, 1, 0).sub(&c(1)));
        assert_eq!(p, y(1, 1, 0).pow(2).sub(&c(1)));
        let mixed = y(1, 2, 0).mul(&y(2, 1, 1));
        assert_eq!(mixed.len(), 1);
        assert_eq!(
            mixed.variables(),
            vec![DiffVar::new(1, 2, 0), DiffVar::new(2, 1, 1)]
        );
    }

    #[test]
    fn derivative_shifts_order() {
        let cfg = FieldConfig::rational();
        assert_eq!(y(1, 1, 0).derive(&cfg), y(1, 1, 1));
        assert_eq!(
            y(1, 1, 0).pow(2).derive(&cfg),
            y(1, 1, 0).mul(&y(1, 1, 1)).mul(&c(2))
        );
    }

    #[test]
    fn derivative_uses_field_derivation() {
        let cfg = FieldConfig::with_unit_derivatives(1);
        let t1 = DiffPoly::constant(Scalar::generator(0));
        let p = t1.mul(&y(1, 2, 0));
        assert_eq!(p.derive(&cfg), y(1, 2, 0).add(&t1.mul(&y(1, 2, 1))));
    }

    #[test]
    fn exact_division_examples() {
        let p = y(1, 1, 0).pow(2).sub(&c(1));
        let d = y(1, 1, 0).sub(&c(1));
        assert_eq!(p.exact_divide(&d).unwrap(), Some(y(1, 1, 0).add(&c(1))));
        assert_eq!(y(1, 1, 0).exact_divide(&y(1, 2, 0)).unwrap(), None);
        let p = y(1, 1, 0).mul(&y(1, 1, 1)).mul(&c(2));
        assert_eq!(
            p.exact_divide(&y(1, 1, 0)).unwrap(),
            Some(y(1, 1, 1).mul(&c(2)))
        );
        assert_eq!(
            p.exact_divide(&DiffPoly::zero()),
            Err(AlgebraError::DivisionByZero)
        );
    }

    #[test]
    fn leader_examples() {
        assert_eq!(
            y(1, 1, 0).add(&y(1, 2, 0)).leader(),
            Ok(DiffVar::new(1, 2, 0))
        );
        assert_eq!(
            y(2, 2, 0).add(&y(1, 1, 5)).leader(),
            Ok(DiffVar::new(2, 2, 0))
        );
        assert_eq!(
            y(1, 1, 0).add(&y(1, 1, 1)).leader(),
            Ok(DiffVar::new(1, 1, 1))
        );
        assert_eq!(c(3).leader(), Err(AlgebraError::ConstantHasNoLeader));
    }

    #[test]
    fn monomial_order_is_graded() {
        let a = DiffMonomial::from_powers([(DiffVar::new(1, 1, 0), 2)]);
        let b = DiffMonomial::var(DiffVar::new(2, 2, 3));
        assert!(a > b);
        let c1 =
            DiffMonomial::from_powers([(DiffVar::new(1, 1, 0), 1), (DiffVar::new(2, 1, 0), 1)]);
        let c2 = DiffMonomial::from_powers([(DiffVar::new(1, 2, 0), 2)]);
        assert!(c1 > c2);
    }
}
