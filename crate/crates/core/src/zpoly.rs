//! Dense univariate polynomials over Z in `t1`, the fast ring for
//! determinants of wronskians over `Q[t1]`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::tpoly::{TMonomial, TPoly};

/// Coefficients from degree 0 up; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ZPoly(Vec<BigInt>);

impl ZPoly {
    pub fn zero() -> Self {
        ZPoly(Vec::new())
    }

    pub fn one() -> Self {
        ZPoly(vec![BigInt::one()])
    }

    pub fn from_coefficients(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ZPoly(c)
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, o: &Self) -> Self {
        let (long, short) = if self.0.len() >= o.0.len() {
            (self, o)
        } else {
            (o, self)
        };
        let mut c = long.0.clone();
        for (a, b) in c.iter_mut().zip(&short.0) {
            *a += b;
        }
        ZPoly::from_coefficients(c)
    }

    pub fn neg(&self) -> Self {
        ZPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut c = self.0.clone();
        if c.len() < o.0.len() {
            c.resize(o.0.len(), BigInt::zero());
        }
        for (a, b) in c.iter_mut().zip(&o.0) {
            *a -= b;
        }
        ZPoly::from_coefficients(c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        ZPoly::from_coefficients(c)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        ZPoly::from_coefficients(self.0.iter().map(|c| c * k).collect())
    }

    /// `self / d` when the quotient has integer coefficients and no
    /// remainder.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let dl = d.0.last()?;
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if self.0.len() < d.0.len() {
            return None;
        }
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let lead = &r[i + dd];
            if lead.is_zero() {
                continue;
            }
            let (qi, rem) = lead.div_rem(dl);
            if !rem.is_zero() {
                return None;
            }
            for (j, b) in d.0.iter().enumerate() {
                r[i + j] -= &qi * b;
            }
            q[i] = qi;
        }
        r.iter()
            .all(Zero::is_zero)
            .then(|| ZPoly::from_coefficients(q))
    }

    /// Integer polynomials in at most `t1`.
    pub fn from_tpoly(p: &TPoly) -> Option<Self> {
        let mut c: Vec<BigInt> = Vec::new();
        for (m, coef) in p.terms() {
            if m.exponents().len() > 1 || !coef.is_integer() {
                return None;
            }
            let e = m.exponent(0) as usize;
            if c.len() <= e {
                c.resize(e + 1, BigInt::zero());
            }
            c[e] = coef.to_integer();
        }
        Some(ZPoly::from_coefficients(c))
    }

    pub fn to_tpoly(&self) -> TPoly {
        TPoly::from_terms(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| {
                    (
                        TMonomial::new(vec![e as u32]),
                        BigRational::from_integer(c.clone()),
                    )
                }),
        )
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "t1")?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
