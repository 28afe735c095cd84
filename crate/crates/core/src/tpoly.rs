//! Sparse multivariate polynomials over Q in the base-field generators
//! `t1..tm`, with exact division and a recursive primitive-PRS gcd.
//!
//! Terms are kept in a `BTreeMap` keyed by [`TMonomial`], whose ordering is
//! degrevlex with `t1 > t2 > ... > tm`; the last entry is the leading term.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector in the generators, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TMonomial(Vec<u32>);

impl TMonomial {
    pub fn one() -> Self {
        TMonomial(Vec::new())
    }

    pub fn new(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        TMonomial(exps)
    }

    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        TMonomial(e)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.0.len().max(other.0.len());
        let e = (0..len)
            .map(|i| self.exponent(i) + other.exponent(i))
            .collect();
        TMonomial(e)
    }

    pub fn checked_div(&self, other: &Self) -> Option<Self> {
        if other.0.len() > self.0.len() {
            return None;
        }
        let mut e = self.0.clone();
        for (i, &b) in other.0.iter().enumerate() {
            if e[i] < b {
                return None;
            }
            e[i] -= b;
        }
        Some(TMonomial::new(e))
    }

    fn with_exponent(&self, i: usize, value: u32) -> Self {
        let mut e = self.0.clone();
        if e.len() <= i {
            e.resize(i + 1, 0);
        }
        e[i] = value;
        TMonomial::new(e)
    }
}

impl Ord for TMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let len = self.0.len().max(other.0.len());
        for i in (0..len).rev() {
            let (a, b) = (self.exponent(i), other.exponent(i));
            if a != b {
                // reverse lex: the larger trailing exponent is the smaller monomial
                return b.cmp(&a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for TMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    terms: BTreeMap<TMonomial, BigRational>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly::default()
    }

    pub fn one() -> Self {
        TPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(TMonomial::one(), c);
        }
        TPoly { terms }
    }

    /// The generator `t_{i+1}` (zero-based index).
    pub fn var(i: usize) -> Self {
        TPoly::monomial(TMonomial::var(i), BigRational::one())
    }

    pub fn monomial(m: TMonomial, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        TPoly { terms }
    }

    pub fn from_terms(it: impl IntoIterator<Item = (TMonomial, BigRational)>) -> Self {
        let mut p = TPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1 && self.terms.contains_key(&TMonomial::one()))
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&TMonomial::one())
                .is_some_and(|c| c.is_one())
    }

    /// Value of a constant polynomial; `None` if any generator occurs.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&TMonomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(&TMonomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading_term()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(TMonomial::degree).max().unwrap_or(0)
    }

    /// Number of generator slots in use (one past the largest index present).
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|m| m.0.len()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: TMonomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c.clone());
        }
        r
    }

    pub fn neg(&self) -> Self {
        TPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return TPoly::zero();
        }
        TPoly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return TPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return other.scale(&c);
        }
        if let Some(c) = other.as_constant() {
            return self.scale(&c);
        }
        let mut r = TPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = TPoly::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Quotient `self / d` when `d` divides `self` exactly.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = d.leading_term().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = TPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.checked_div(&dm)?;
            let qc = -(rc / &dc);
            for (m, c) in &d.terms {
                rem.add_term(m.mul(&qm), c * &qc);
            }
            quot.add_term(qm, -qc);
        }
        Some(quot)
    }

    /// Scaled so the leading coefficient (degrevlex) is 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => TPoly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn partial(&self, var: usize) -> Self {
        let mut r = TPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                r.add_term(
                    m.with_exponent(var, e - 1),
                    c * BigRational::from_integer(BigInt::from(e)),
                );
            }
        }
        r
    }

    /// Evaluate at rational points for generators `0..values.len()`.
    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term *= num_traits::pow(values[i].clone(), e as usize);
                }
            }
            acc += term;
        }
        acc
    }

    /// View as a univariate polynomial in `var`, coefficients free of `var`.
    fn to_univariate(&self, var: usize) -> Vec<TPoly> {
        let deg = self.degree_in(var) as usize;
        let mut coeffs = vec![TPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            coeffs[e].add_term(m.with_exponent(var, 0), c.clone());
        }
        coeffs
    }

    fn from_univariate(coeffs: &[TPoly], var: usize) -> Self {
        let mut r = TPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                r.add_term(m.with_exponent(var, e as u32), a.clone());
            }
        }
        r
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return TPoly::one();
        }
        if self == other {
            return self.monic();
        }
        let nv = self.nvars().max(other.nvars());
        let var = (0..nv)
            .rev()
            .find(|&v| self.degree_in(v) > 0 || other.degree_in(v) > 0)
            .expect("non-constant polynomials mention a generator");
        if self.degree_in(var) == 0 {
            return self.gcd(&content(&other.to_univariate(var)));
        }
        if other.degree_in(var) == 0 {
            return other.gcd(&content(&self.to_univariate(var)));
        }
        let ua = self.to_univariate(var);
        let ub = other.to_univariate(var);
        let ca = content(&ua);
        let cb = content(&ub);
        let c = ca.gcd(&cb);
        let mut a = primitive_part(&ua, &ca);
        let mut b = primitive_part(&ub, &cb);
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            let r = pseudo_remainder(&a, &b);
            if r.is_empty() {
                break;
            }
            if r.len() == 1 {
                // constant remainder in `var`: primitive parts are coprime
                return c.monic();
            }
            let rc = content(&r);
            a = b;
            b = primitive_part(&r, &rc);
        }
        TPoly::from_univariate(&b, var).mul(&c).monic()
    }
}

fn trim(mut v: Vec<TPoly>) -> Vec<TPoly> {
    while v.last().is_some_and(TPoly::is_zero) {
        v.pop();
    }
    v
}

fn content(coeffs: &[TPoly]) -> TPoly {
    let mut g = TPoly::zero();
    for c in coeffs.iter().filter(|c| !c.is_zero()) {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive_part(coeffs: &[TPoly], cont: &TPoly) -> Vec<TPoly> {
    trim(
        coeffs
            .iter()
            .map(|c| {
                c.exact_div(cont)
                    .expect("content divides every coefficient")
            })
            .collect(),
    )
}

/// `lc(b)^(deg a - deg b + 1) * a mod b` over the coefficient ring.
fn pseudo_remainder(a: &[TPoly], b: &[TPoly]) -> Vec<TPoly> {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lb = &b[db];
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        r = trim(r);
    }
    r
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for TPoly {
    /// Descending term order, e.g. `t1^2 - 3/2*t1*t2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("t{}", i + 1)),
                    _ => factors.push(format!("t{}^{}", i + 1, e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn t(i: usize) -> TPoly {
        TPoly::var(i)
    }

    fn c(n: i64) -> TPoly {
        TPoly::constant(q(n))
    }

    #[test]
    fn degrevlex_prefers_lower_trailing_exponents() {
        let t1t1 = TMonomial::new(vec![2, 0]);
        let t1t2 = TMonomial::new(vec![1, 1]);
        let t2t2 = TMonomial::new(vec![0, 2]);
        assert!(t1t1 > t1t2);
        assert!(t1t2 > t2t2);
        assert!(TMonomial::var(0) > TMonomial::var(1));
        assert!(TMonomial::var(1) < t2t2);
    }

    #[test]
    fn exact_division_and_failure() {
        let p = t(0).mul(&t(0)).sub(&c(1));
        let d = t(0).sub(&c(1));
        assert_eq!(p.exact_div(&d), Some(t(0).add(&c(1))));
        assert_eq!(t(0).exact_div(&t(1)), None);
    }

    #[test]
    fn univariate_gcd() {
        let a = t(0).sub(&c(1)).mul(&t(0).add(&c(2)));
        let b = t(0).sub(&c(1)).mul(&t(0).sub(&c(3)));
        assert_eq!(a.gcd(&b), t(0).sub(&c(1)));
    }

    #[test]
    fn multivariate_gcd() {
        let g = t(0).mul(&t(1)).add(&t(2)).add(&c(1));
        let a = g.mul(&t(0).add(&t(1)));
        let b = g.mul(&t(2).sub(&t(0).mul(&t(0))));
        assert_eq!(a.gcd(&b), g.monic());
        let h = t(1).sub(&c(2));
        assert_eq!(h.mul(&t(0)).gcd(&h.mul(&t(0).add(&c(5)))), h);
    }

    #[test]
    fn gcd_with_unit_content() {
        let a = t(0).mul(&t(1));
        let b = t(1).mul(&c(3));
        assert_eq!(a.gcd(&b), t(1));
    }

    #[test]
    fn display_is_descending() {
        let p = t(0).mul(&t(0)).sub(&t(1).scale(&q(3))).add(&c(1));
        assert_eq!(p.to_string(), "t1^2 - 3*t2 + 1");
    }
}
