//! Elements of the base differential field `F = Q(t1..tm)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{AlgebraError, Result};
use crate::tpoly::TPoly;

/// A reduced quotient of polynomials in the generators.
///
/// Invariants: the denominator is non-zero, coprime to the numerator and
/// monic under degrevlex. Zero is stored as `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: TPoly,
    den: TPoly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: TPoly::zero(),
            den: TPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Scalar {
            num: TPoly::constant(c),
            den: TPoly::one(),
        }
    }

    /// The generator `t_{i+1}` (zero-based index).
    pub fn generator(i: usize) -> Self {
        Scalar::from_poly(TPoly::var(i))
    }

    pub fn from_poly(p: TPoly) -> Self {
        Scalar {
            num: p,
            den: TPoly::one(),
        }
    }

    /// Builds `num / den` in canonical form.
    pub fn new(num: TPoly, den: TPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Scalar::normalize(num, den))
    }

    fn normalize(num: TPoly, den: TPoly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(d) = den.as_constant() {
            return Scalar {
                num: num.scale(&d.recip()),
                den: TPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numerator(&self) -> &TPoly {
        &self.num
    }

    pub fn denominator(&self) -> &TPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// `Some(c)` when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            let num = self.num.add(&other.num);
            if self.den.is_one() {
                return Scalar {
                    num,
                    den: TPoly::one(),
                };
            }
            return Scalar::normalize(num, self.den.clone());
        }
        Scalar::normalize(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                num: self.num.mul(&other.num),
                den: TPoly::one(),
            };
        }
        // cross-cancel keeps intermediate sizes down
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).expect("gcd divides");
        let d2 = other.den.exact_div(&g1).expect("gcd divides");
        let n2 = other.num.exact_div(&g2).expect("gcd divides");
        let d1 = self.den.exact_div(&g2).expect("gcd divides");
        Scalar::normalize(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.mul(&Scalar::from_int(k))
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Scalar::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, e: u32) -> Self {
        Scalar {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// The derivative under the configured generator derivatives, via the
    /// quotient rule `(n'd - nd')/d^2`.
    pub fn derive(&self, cfg: &FieldConfig) -> Self {
        if self.is_zero() {
            return Scalar::zero();
        }
        let dn = derive_poly(&self.num, cfg);
        if self.den.is_one() {
            return dn;
        }
        let dd = derive_poly(&self.den, cfg);
        let n = Scalar::from_poly(self.num.clone());
        let d = Scalar::from_poly(self.den.clone());
        dn.mul(&d)
            .sub(&n.mul(&dd))
            .div(&d.mul(&d))
            .expect("denominator is non-zero")
    }

    /// k-th derivative.
    pub fn derive_n(&self, k: usize, cfg: &FieldConfig) -> Self {
        let mut r = self.clone();
        for _ in 0..k {
            r = r.derive(cfg);
        }
        r
    }

    /// Evaluate at rational points for the generators; `None` at a pole.
    pub fn eval(&self, values: &[BigRational]) -> Option<BigRational> {
        let d = self.den.eval(values);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(values) / d)
        }
    }
}

fn derive_poly(p: &TPoly, cfg: &FieldConfig) -> Scalar {
    let mut acc = Scalar::zero();
    for (i, dt) in cfg.generator_derivatives.iter().enumerate() {
        if dt.is_zero() || p.degree_in(i) == 0 {
            continue;
        }
        acc = acc.add(&Scalar::from_poly(p.partial(i)).mul(dt));
    }
    acc
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Scalar {
    /// `num` alone for polynomials, `(num)/(den)` otherwise; rationals print
    /// as `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &TPoly| {
            let simple = p.len() == 1
                && p.terms()
                    .all(|(m, c)| c.is_one() || (m.is_one() && c.is_integer()));
            if simple {
                p.to_string()
            } else {
                format!("({})", p)
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

/// The base field `Q(t1..tm)` with its derivation on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldConfig {
    generator_derivatives: Vec<Scalar>,
}

impl FieldConfig {
    /// `F = Q` with the zero derivation.
    pub fn rational() -> Self {
        FieldConfig {
            generator_derivatives: Vec::new(),
        }
    }

    pub fn new(generator_derivatives: Vec<Scalar>) -> Result<Self> {
        let m = generator_derivatives.len();
        for d in &generator_derivatives {
            let used = d.numerator().nvars().max(d.denominator().nvars());
            if used > m {
                return Err(AlgebraError::Precondition(format!(
                    "generator derivative {} mentions t{} but m = {}",
                    d, used, m
                )));
            }
        }
        Ok(FieldConfig {
            generator_derivatives,
        })
    }

    /// `m` generators each with `D(t_i) = 1`.
    pub fn with_unit_derivatives(m: usize) -> Self {
        FieldConfig {
            generator_derivatives: vec![Scalar::one(); m],
        }
    }

    pub fn m(&self) -> usize {
        self.generator_derivatives.len()
    }

    pub fn generator_derivatives(&self) -> &[Scalar] {
        &self.generator_derivatives
    }
}

impl Default for FieldConfig {
    fn default() -> Self {
        FieldConfig::rational()
    }
}
